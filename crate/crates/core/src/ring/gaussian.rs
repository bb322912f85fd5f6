//! The Gaussian integers `Z[i]`, the quartic residue symbol and `λ₀`.

use super::{PrimaryFactorization, QuadInt, RingKind};
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gaussian;

impl RingKind for Gaussian {
    const ORDER: u32 = 4;
    const TRACE: i64 = 0;
    const GEN: char = 'i';
    const RAMIFIED: u64 = 2;
    const UNITS: &'static [(i64, i64)] = &[(1, 0), (0, 1), (-1, 0), (0, -1)];

    /// `z ≡ 1 mod (1+i)³`.
    fn is_primary_coords(a: i64, b: i64) -> bool {
        matches!((a.rem_euclid(4), b.rem_euclid(4)), (1, 0) | (3, 2))
    }

    fn is_canonical_coords(a: i64, b: i64) -> bool {
        a > 0 && b >= 0
    }
}

/// `a + b·i`.
pub type GaussInt = QuadInt<Gaussian>;
pub type PrimaryFactorizationI = PrimaryFactorization<Gaussian>;

pub fn norm_i(z: GaussInt) -> Result<u64> {
    z.checked_norm()
}

pub fn gcd_i(x: GaussInt, y: GaussInt) -> Result<GaussInt> {
    super::gcd(x, y)
}

pub fn make_primary_i(z: GaussInt) -> Result<(GaussInt, GaussInt)> {
    super::make_primary(z)
}

pub fn split_prime_i(p: u64) -> Result<Vec<GaussInt>> {
    super::split_prime(p)
}

pub fn factor_primary_i(n: GaussInt) -> Result<PrimaryFactorizationI> {
    super::factor_primary(n)
}

/// Exponent `j` with `(a/n)₄ = i^j`, or `None` when `(a/n)₄ = 0`.
pub fn quartic_symbol(a: GaussInt, n: GaussInt) -> Result<Option<u32>> {
    super::residue_symbol(a, n)
}

pub fn euler_phi_i(n: GaussInt) -> Result<u64> {
    super::euler_phi(n)
}

/// `λ₀(q) = (−1)^((a²−1)/8)` for primary `q = a + bi`.
pub fn lambda0(q: GaussInt) -> Result<i8> {
    if !q.is_primary() {
        return Err(domain(format!("λ₀ needs a primary argument, got {q}")));
    }
    let a = q.a as i128;
    Ok(if ((a * a - 1) / 8) % 2 == 0 { 1 } else { -1 })
}

//! The Eisenstein integers `Z[ω]`, `ω = e(1/3)`, and the cubic residue symbol.

use super::{PrimaryFactorization, QuadInt, RingKind};
use crate::error::Result;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Eisenstein;

impl RingKind for Eisenstein {
    const ORDER: u32 = 3;
    const TRACE: i64 = -1;
    const GEN: char = 'w';
    const RAMIFIED: u64 = 3;
    // 1, ω, ω², −1, −ω, −ω²
    const UNITS: &'static [(i64, i64)] = &[(1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1)];

    fn is_primary_coords(a: i64, b: i64) -> bool {
        a.rem_euclid(3) == 1 && b.rem_euclid(3) == 0
    }

    fn is_canonical_coords(a: i64, b: i64) -> bool {
        b >= 0 && a > b
    }
}

/// `a + b·ω`.
pub type EisInt = QuadInt<Eisenstein>;
pub type PrimaryFactorizationW = PrimaryFactorization<Eisenstein>;

/// `√−3`, fixed as `1 + 2ω`.
pub const SQRT_MINUS_3: EisInt = EisInt::new(1, 2);

pub fn norm_w(z: EisInt) -> Result<u64> {
    z.checked_norm()
}

pub fn gcd_w(x: EisInt, y: EisInt) -> Result<EisInt> {
    super::gcd(x, y)
}

pub fn make_primary_w(z: EisInt) -> Result<(EisInt, EisInt)> {
    super::make_primary(z)
}

pub fn split_prime_w(p: u64) -> Result<Vec<EisInt>> {
    super::split_prime(p)
}

pub fn factor_primary_w(n: EisInt) -> Result<PrimaryFactorizationW> {
    super::factor_primary(n)
}

/// Exponent `j` with `(a/n)₃ = ω^j`, or `None` when `(a/n)₃ = 0`.
pub fn cubic_symbol(a: EisInt, n: EisInt) -> Result<Option<u32>> {
    super::residue_symbol(a, n)
}

pub fn euler_phi_w(n: EisInt) -> Result<u64> {
    super::euler_phi(n)
}

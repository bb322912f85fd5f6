//! Gauss sums: the classical `τ(r, χ)` over `Z/nZ` and the ring sums
//! `g₃(r, n)`, `g₄(r, n)` over residue systems of `Z[ω]/(n)` and `Z[i]/(n)`.
//!
//! Every additive phase is an exact rational reduced mod 1 before it is
//! exponentiated. With `√−3 = 1 + 2ω`, `(z − z̄)/√−3` is the `ω`-coordinate
//! of `z`, and `(z − z̄)/(2i)` is the `i`-coordinate, so in both rings the
//! phase `ẽ(z)` is `e(b)` for `z = a + b·g`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::characters::CharacterTable;
use crate::error::{domain, Error, Result};
use crate::ring::{QuadInt, RingKind, ResidueSymbol};

pub type ComplexVal = Complex64;

/// Default cap on the number of residues in one ring Gauss sum.
pub const DEFAULT_NORM_CAP: u64 = 100_000;

/// `e(k/d) = exp(2πi·k/d)` with `k` reduced mod `d` first.
pub fn unit_phase(k: i128, d: i128) -> Complex64 {
    debug_assert!(d > 0);
    let mut k = k.rem_euclid(d);
    if 2 * k > d {
        k -= d;
    }
    let (s, c) = (2.0 * PI * k as f64 / d as f64).sin_cos();
    Complex64::new(c, s)
}

/// `e(j/k)` for a root-of-unity exponent.
pub fn root_of_unity(j: u32, k: u32) -> Complex64 {
    match (k, j % k) {
        (_, 0) => Complex64::new(1.0, 0.0),
        (4, 1) => Complex64::new(0.0, 1.0),
        (4, 2) | (2, 1) => Complex64::new(-1.0, 0.0),
        (4, 3) => Complex64::new(0.0, -1.0),
        (3, 1) => Complex64::new(-0.5, 3f64.sqrt() / 2.0),
        (3, 2) => Complex64::new(-0.5, -(3f64.sqrt()) / 2.0),
        (k, j) => unit_phase(j as i128, k as i128),
    }
}

/// A complete residue system of `Z[g]/(n)`: the fundamental domain of the
/// Hermite normal form of the lattice spanned by `n` and `n·g`.
#[derive(Debug, Clone)]
pub struct ResidueSystem<R: RingKind> {
    pub modulus: QuadInt<R>,
    /// Hermite basis `(h11, h12), (0, h22)` in coordinates `(1, g)`.
    pub basis: [[i64; 2]; 2],
    /// Ordered lexicographically in `(a, b)`.
    pub representatives: Vec<QuadInt<R>>,
}

impl<R: RingKind> ResidueSystem<R> {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// The representative congruent to `x`.
    pub fn reduce(&self, x: QuadInt<R>) -> QuadInt<R> {
        let [[h11, h12], [_, h22]] = self.basis;
        let k = x.a.div_euclid(h11);
        let b = (x.b as i128 - k as i128 * h12 as i128).rem_euclid(h22 as i128) as i64;
        QuadInt::new(x.a - k * h11, b)
    }
}

fn hermite_basis(rows: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let [[mut a1, mut b1], [mut a2, mut b2]] = rows.map(|r| r.map(|x| x as i128));
    // Euclid on the first column.
    while a2 != 0 {
        let q = a1.div_euclid(a2);
        (a1, b1, a2, b2) = (a2, b2, a1 - q * a2, b1 - q * b2);
    }
    if a1 < 0 {
        (a1, b1) = (-a1, -b1);
    }
    let h22 = b2.abs();
    let h12 = b1.rem_euclid(h22);
    [[a1 as i64, h12 as i64], [0, h22 as i64]]
}

/// Residue system modulo `n` with the default cap.
pub fn residues_mod<R: RingKind>(n: QuadInt<R>) -> Result<ResidueSystem<R>> {
    residues_mod_capped(n, DEFAULT_NORM_CAP)
}

pub fn residues_mod_capped<R: RingKind>(n: QuadInt<R>, cap: u64) -> Result<ResidueSystem<R>> {
    if n.is_zero() {
        return Err(domain("residue system modulo 0"));
    }
    let norm = n.checked_norm()?;
    if norm > cap {
        return Err(Error::Capacity(format!("N({n}) = {norm} exceeds the residue cap {cap}")));
    }
    let ng = n.mul_gen();
    let basis = hermite_basis([[n.a, n.b], [ng.a, ng.b]]);
    let [[h11, _], [_, h22]] = basis;
    debug_assert_eq!((h11 * h22) as u64, norm);
    let representatives = (0..h11)
        .flat_map(|a| (0..h22).map(move |b| QuadInt::new(a, b)))
        .collect();
    Ok(ResidueSystem { modulus: n, basis, representatives })
}

/// `ẽ(z)` for `z = z_num / z_den`: `e(v mod 1)` where `v` is the
/// `g`-coordinate of `z`.
pub fn phase_etilde<R: RingKind>(z_num: QuadInt<R>, z_den: i64) -> Result<Complex64> {
    if z_den == 0 {
        return Err(domain("zero denominator"));
    }
    let (num, den) = if z_den < 0 { (-(z_num.b as i128), -(z_den as i128)) } else { (z_num.b as i128, z_den as i128) };
    Ok(unit_phase(num, den))
}

/// Precomputed data for evaluating `g(r, n)` for many `r` at a fixed `n`.
#[derive(Debug, Clone)]
pub struct GaussSumContext<R: RingKind> {
    modulus: QuadInt<R>,
    norm: u64,
    residues: ResidueSystem<R>,
    symbols: Vec<Option<u32>>,
    phases: Vec<Complex64>,
    roots: Vec<Complex64>,
}

impl<R: RingKind> GaussSumContext<R> {
    pub fn new(n: QuadInt<R>, cap: u64) -> Result<Self> {
        if !(n.is_primary() || n.is_unit()) {
            return Err(domain(format!("Gauss sum modulus {n} must be primary")));
        }
        let residues = residues_mod_capped(n, cap)?;
        let symbol = ResidueSymbol::new(n)?;
        let symbols = residues.representatives.iter().map(|&x| symbol.exponent(x)).collect();
        let norm = n.norm();
        let phases = (0..norm).map(|k| unit_phase(k as i128, norm as i128)).collect();
        let roots = (0..R::ORDER).map(|j| root_of_unity(j, R::ORDER)).collect();
        Ok(Self { modulus: n, norm, residues, symbols, phases, roots })
    }

    pub fn modulus(&self) -> QuadInt<R> {
        self.modulus
    }

    pub fn residues(&self) -> &ResidueSystem<R> {
        &self.residues
    }

    /// `g(r, n) = Σ_{x mod n} (x/n) ẽ(r·x/n)`, summed in representative order.
    pub fn g(&self, r: QuadInt<R>) -> Complex64 {
        let big_n = self.norm as i128;
        // r·x/n = r·x·n̄ / N(n); the g-coordinate of w·x, w = r·n̄, is
        // w1·u + (w0 + T·w1)·v for x = u + v·g.
        let (r0, r1) = (r.a as i128, r.b as i128);
        let nb = self.modulus.conj();
        let (n0, n1) = (nb.a as i128, nb.b as i128);
        let t = R::TRACE as i128;
        let w0 = (r0 * n0 - r1 * n1).rem_euclid(big_n);
        let w1 = (r0 * n1 + r1 * n0 + t * r1 * n1).rem_euclid(big_n);
        let cu = w1 as u64;
        let cv = (w0 + t * w1).rem_euclid(big_n) as u64;
        let n = self.norm;
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, sym) in self.residues.representatives.iter().zip(&self.symbols) {
            if let Some(j) = sym {
                let k = ((cu as u128 * x.a as u128 + cv as u128 * x.b as u128) % n as u128) as usize;
                acc += self.roots[*j as usize] * self.phases[k];
            }
        }
        acc
    }
}

/// `g₃(r, n)` or `g₄(r, n)` depending on the ring.
pub fn g_symbol<R: RingKind>(r: QuadInt<R>, n: QuadInt<R>) -> Result<Complex64> {
    Ok(GaussSumContext::new(n, DEFAULT_NORM_CAP)?.g(r))
}

/// `τ(r, χ) = Σ_{x mod n} χ(x) e(r·x/n)`.
pub fn tau_char(r: i64, chi: &CharacterTable) -> Complex64 {
    let n = chi.modulus as i128;
    let k = chi.order.value();
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, v) in chi.values().iter().enumerate() {
        if let Some(j) = v {
            acc += root_of_unity(*j as u32, k) * unit_phase(r as i128 * x as i128, n);
        }
    }
    acc
}

/// Largest `|t|` with `exp(−π t²) ≥ 1e−16`.
fn gaussian_cutoff() -> f64 {
    (16.0 * std::f64::consts::LN_10 / PI).sqrt()
}

/// Componentwise discrepancy between the two sides of the Poisson formula
/// `Σ_m χ(m) w(m/M) = (M/n) Σ_k τ(k, χ) w(kM/n)` for `w(t) = exp(−πt²)`.
pub fn poisson_discrepancy(chi: &CharacterTable, m_scale: f64) -> Result<f64> {
    let n = chi.modulus;
    if n > 10_000 {
        return Err(Error::Capacity(format!("Poisson check limited to modulus ≤ 10^4, got {n}")));
    }
    if !(m_scale > 0.0 && m_scale.is_finite()) {
        return Err(domain(format!("scale must be positive, got {m_scale}")));
    }
    let w = |t: f64| (-PI * t * t).exp();
    let k_ord = chi.order.value();
    let cut = gaussian_cutoff();

    let m_max = (m_scale * cut).ceil() as i64;
    let mut lhs = Complex64::new(0.0, 0.0);
    for m in -m_max..=m_max {
        if let Some(j) = chi.value(m) {
            lhs += root_of_unity(j, k_ord) * w(m as f64 / m_scale);
        }
    }

    let k_max = (n as f64 * cut / m_scale).ceil() as i64;
    let distinct = (2 * k_max + 1).min(n as i64);
    let taus: Vec<Complex64> = (0..distinct).map(|k| tau_char(k, chi)).collect();
    let tau = |k: i64| {
        let idx = k.rem_euclid(n as i64);
        if idx < distinct {
            taus[idx as usize]
        } else {
            tau_char(k, chi)
        }
    };
    let mut dual = Complex64::new(0.0, 0.0);
    for k in -k_max..=k_max {
        dual += tau(k) * w(k as f64 * m_scale / n as f64);
    }
    let rhs = dual * (m_scale / n as f64);
    Ok((lhs.re - rhs.re).abs().max((lhs.im - rhs.im).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{character_family, CharacterTable, Order};
    use crate::ring::{euler_phi, primaries_up_to, EisInt, Eisenstein, GaussInt, Gaussian};

    #[test]
    fn residue_system_examples() {
        let s = residues_mod(EisInt::new(-2, -3)).unwrap();
        assert_eq!(s.len(), 7);
        let s = residues_mod(GaussInt::new(1, 1)).unwrap();
        assert_eq!(s.len(), 2);
        let s = residues_mod(EisInt::new(3, 0)).unwrap();
        let expected: Vec<EisInt> =
            (0..3).flat_map(|a| (0..3).map(move |b| EisInt::new(a, b))).collect();
        assert_eq!(s.representatives, expected);
        assert!(matches!(residues_mod(EisInt::new(400, 0)), Err(Error::Capacity(_))));
        assert!(residues_mod(EisInt::zero()).is_err());
    }

    #[test]
    fn residue_systems_are_complete_and_distinct() {
        for n in [EisInt::new(-2, -3), EisInt::new(5, 7), EisInt::new(-7, 0), EisInt::new(4, 1)] {
            let s = residues_mod(n).unwrap();
            assert_eq!(s.len() as u64, n.norm());
            assert!(s.representatives.contains(&EisInt::zero()));
            for (i, &x) in s.representatives.iter().enumerate() {
                for &y in &s.representatives[..i] {
                    assert!(!n.divides(x - y), "{x} ≡ {y} mod {n}");
                }
                assert_eq!(s.reduce(x), x);
                let shifted = x + n * EisInt::new(3, -5);
                assert_eq!(s.reduce(shifted), x);
            }
        }
        for n in [GaussInt::new(3, 2), GaussInt::new(-1, 2), GaussInt::new(6, 0)] {
            let s = residues_mod(n).unwrap();
            assert_eq!(s.len() as u64, n.norm());
            for (i, &x) in s.representatives.iter().enumerate() {
                for &y in &s.representatives[..i] {
                    assert!(!n.divides(x - y));
                }
            }
        }
    }

    #[test]
    fn phase_examples() {
        let close = |a: Complex64, b: Complex64| (a - b).norm() < 1e-14;
        assert!(close(phase_etilde(EisInt::gen(), 1).unwrap(), Complex64::new(1.0, 0.0)));
        assert!(close(phase_etilde(EisInt::new(1, 2), 3).unwrap(), unit_phase(2, 3)));
        assert!(close(phase_etilde(GaussInt::gen(), 2).unwrap(), Complex64::new(-1.0, 0.0)));
        assert!(phase_etilde(EisInt::gen(), 0).is_err());
        assert!(close(phase_etilde(EisInt::new(0, 1), -3).unwrap(), unit_phase(-1, 3)));
    }

    #[test]
    fn phase_matches_trace_formula() {
        // ẽ_ω(z) = exp(2πi (z/√−3 − z̄/√−3)) evaluated in floating point
        let sqrt_m3 = Complex64::new(0.0, 3f64.sqrt());
        for (a, b, d) in [(1, 2, 3), (5, -7, 11), (0, 4, 9), (-3, 1, 2)] {
            let z = EisInt::new(a, b).to_complex() / d as f64;
            let t = z / sqrt_m3 - z.conj() / sqrt_m3;
            let direct = (Complex64::i() * 2.0 * PI * t).exp();
            assert!((direct - phase_etilde(EisInt::new(a, b), d).unwrap()).norm() < 1e-12);
            let zi = GaussInt::new(a, b).to_complex() / d as f64;
            let ti = zi / (2.0 * Complex64::i()) - zi.conj() / (2.0 * Complex64::i());
            let direct = (Complex64::i() * 2.0 * PI * ti).exp();
            assert!((direct - phase_etilde(GaussInt::new(a, b), d).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn context_matches_literal_sum() {
        let n = EisInt::new(-5, -9) * EisInt::new(-2, -3);
        let ctx = GaussSumContext::new(n, DEFAULT_NORM_CAP).unwrap();
        let sym = ResidueSymbol::new(n).unwrap();
        let den = n.norm() as i64;
        for r in [EisInt::one(), EisInt::new(2, 5), EisInt::new(-3, 1)] {
            let mut literal = Complex64::new(0.0, 0.0);
            for &x in &residues_mod(n).unwrap().representatives {
                if let Some(j) = sym.exponent(x) {
                    literal += root_of_unity(j, 3) * phase_etilde(r * x * n.conj(), den).unwrap();
                }
            }
            assert!((literal - ctx.g(r)).norm() < 1e-9);
        }
    }

    #[test]
    fn g3_examples() {
        let pi = EisInt::new(-2, -3);
        assert!(g_symbol(EisInt::zero(), pi).unwrap().norm() < 1e-12);
        let cube = pi.pow(3);
        let g0 = g_symbol(EisInt::zero(), cube).unwrap();
        assert!((g0 - Complex64::new(294.0, 0.0)).norm() < 1e-9);
        assert_eq!(euler_phi(cube).unwrap(), 294);
        let g1 = g_symbol(EisInt::one(), pi).unwrap();
        assert!((g1.norm() - 7f64.sqrt()).abs() < 1e-9);
        assert!(g_symbol(EisInt::one(), EisInt::new(3, 1)).is_err());
    }

    #[test]
    fn g_modulus_on_small_primes() {
        for pi in primaries_up_to::<Eisenstein>(300) {
            if crate::arith::is_prime(pi.norm()) {
                let g = g_symbol(EisInt::one(), pi).unwrap();
                assert!((g.norm() - (pi.norm() as f64).sqrt()).abs() < 1e-9, "{pi}");
            }
        }
        for pi in primaries_up_to::<Gaussian>(300) {
            if crate::arith::is_prime(pi.norm()) {
                let g = g_symbol(GaussInt::one(), pi).unwrap();
                assert!((g.norm() - (pi.norm() as f64).sqrt()).abs() < 1e-9, "{pi}");
            }
        }
    }

    #[test]
    fn tau_examples() {
        for chi in character_family(7, Order::Cubic).unwrap() {
            assert!(tau_char(0, &chi).norm() < 1e-12);
            assert!((tau_char(1, &chi).norm() - 7f64.sqrt()).abs() < 1e-12);
        }
        let one = CharacterTable::principal_mod_one(Order::Cubic);
        for r in -3..4 {
            assert!((tau_char(r, &one) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn poisson_examples() {
        for chi in character_family(7, Order::Cubic).unwrap() {
            assert!(poisson_discrepancy(&chi, 5.0).unwrap() <= 1e-8);
        }
        let one = CharacterTable::principal_mod_one(Order::Cubic);
        assert!(poisson_discrepancy(&one, 3.0).unwrap() <= 1e-10);
        for chi in character_family(5, Order::Quartic).unwrap() {
            assert!(poisson_discrepancy(&chi, 2.0).unwrap() <= 1e-8);
        }
        assert!(poisson_discrepancy(&one, 0.0).is_err());
    }
}

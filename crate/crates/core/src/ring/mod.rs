//! Exact arithmetic in the imaginary quadratic rings `Z[ω]` and `Z[i]`.
//!
//! Both rings are `Z[g]` for a generator `g` with `g² = T·g − 1` and
//! `g·ḡ = 1`: `g = ω` has trace `T = −1` and order 3, `g = i` has trace
//! `T = 0` and order 4. In each ring `g` is a primitive root of unity whose
//! order equals the order of the attached power-residue symbol, so a single
//! generic implementation serves both the cubic and the quartic side.

use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{self, exact_sqrt, factorize, inv_mod, is_prime, mul_mod, pow_mod, reduce};
use crate::error::{domain, Error, Result};

pub mod eisenstein;
pub mod gaussian;

pub use eisenstein::{EisInt, Eisenstein};
pub use gaussian::{GaussInt, Gaussian};

/// Compile-time description of one of the two rings.
pub trait RingKind:
    Copy + Clone + Eq + Ord + Hash + fmt::Debug + Default + Send + Sync + 'static
{
    /// Order of the residue symbol, and of the generator as a root of unity.
    const ORDER: u32;
    /// `g + ḡ`.
    const TRACE: i64;
    /// ASCII name of the generator used by `Display`.
    const GEN: char;
    /// The rational prime that ramifies; norms must be coprime to it.
    const RAMIFIED: u64;
    /// All units as `(a, b)` coordinates.
    const UNITS: &'static [(i64, i64)];

    fn is_primary_coords(a: i64, b: i64) -> bool;

    /// Canonical associate used when no primary associate exists: the one
    /// whose argument lies in `[0, 2π/|units|)`.
    fn is_canonical_coords(a: i64, b: i64) -> bool;

    fn splits(p: u64) -> bool {
        p % Self::ORDER as u64 == 1
    }
}

/// Coordinates must stay strictly below this bound in absolute value.
pub const COORD_BOUND: i64 = 1 << 31;
/// Norms must stay strictly below this bound.
pub const NORM_BOUND: u64 = 1 << 63;

/// The element `a + b·g` of `Z[g]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt<R> {
    pub a: i64,
    pub b: i64,
    kind: PhantomData<R>,
}

impl<R: RingKind> QuadInt<R> {
    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b, kind: PhantomData }
    }

    /// Constructor enforcing the coordinate bound.
    pub fn try_new(a: i64, b: i64) -> Result<Self> {
        if a.abs() >= COORD_BOUND || b.abs() >= COORD_BOUND {
            return Err(Error::Overflow(format!("coordinates ({a}, {b}) exceed 2^31")));
        }
        Ok(Self::new(a, b))
    }

    pub const fn zero() -> Self {
        Self::new(0, 0)
    }

    pub const fn one() -> Self {
        Self::new(1, 0)
    }

    /// The generator `g` (`ω` or `i`).
    pub const fn gen() -> Self {
        Self::new(0, 1)
    }

    pub const fn from_int(n: i64) -> Self {
        Self::new(n, 0)
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_rational(self) -> bool {
        self.b == 0
    }

    fn wide_norm(self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        a * a + R::TRACE as i128 * a * b + b * b
    }

    /// Norm with overflow detection.
    pub fn checked_norm(self) -> Result<u64> {
        let n = self.wide_norm();
        if n < 0 || n >= NORM_BOUND as i128 {
            return Err(Error::Overflow(format!("norm of {self} exceeds 2^63")));
        }
        Ok(n as u64)
    }

    /// Norm. Panics if it exceeds 2^63; use [`Self::checked_norm`] on untrusted input.
    pub fn norm(self) -> u64 {
        self.checked_norm().expect("norm overflow")
    }

    pub fn conj(self) -> Self {
        Self::new(self.a + self.b * R::TRACE, -self.b)
    }

    pub fn is_unit(self) -> bool {
        self.wide_norm() == 1
    }

    pub fn units() -> impl Iterator<Item = Self> {
        R::UNITS.iter().map(|&(a, b)| Self::new(a, b))
    }

    pub fn associates(self) -> impl Iterator<Item = Self> {
        Self::units().map(move |u| u * self)
    }

    pub fn is_primary(self) -> bool {
        R::is_primary_coords(self.a, self.b)
    }

    fn from_wide(a: i128, b: i128) -> Option<Self> {
        Some(Self::new(i64::try_from(a).ok()?, i64::try_from(b).ok()?))
    }

    fn wide_mul(self, rhs: Self) -> (i128, i128) {
        let (a, b) = (self.a as i128, self.b as i128);
        let (c, d) = (rhs.a as i128, rhs.b as i128);
        (a * c - b * d, a * d + b * c + R::TRACE as i128 * b * d)
    }

    pub fn checked_mul(self, rhs: Self) -> Option<Self> {
        let (a, b) = self.wide_mul(rhs);
        Self::from_wide(a, b)
    }

    pub fn checked_add(self, rhs: Self) -> Option<Self> {
        Some(Self::new(self.a.checked_add(rhs.a)?, self.b.checked_add(rhs.b)?))
    }

    pub fn checked_sub(self, rhs: Self) -> Option<Self> {
        Some(Self::new(self.a.checked_sub(rhs.a)?, self.b.checked_sub(rhs.b)?))
    }

    pub fn checked_pow(self, exp: u32) -> Option<Self> {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.checked_mul(self)?;
        }
        Some(acc)
    }

    pub fn pow(self, exp: u32) -> Self {
        self.checked_pow(exp).expect("coordinate overflow in pow")
    }

    /// Multiplication by the generator.
    pub fn mul_gen(self) -> Self {
        Self::new(-self.b, self.a + R::TRACE * self.b)
    }

    /// Euclidean division with the quotient rounded coordinatewise, so that
    /// `N(remainder) < N(divisor)`.
    pub fn div_rem(self, d: Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(domain("division by zero"));
        }
        let n = d.wide_norm();
        let (x, y) = self.wide_mul(d.conj());
        let q = Self::from_wide(round_div(x, n), round_div(y, n))
            .ok_or_else(|| Error::Overflow("quotient overflow".into()))?;
        let r = self
            .checked_sub(q.checked_mul(d).ok_or_else(|| Error::Overflow("product overflow".into()))?)
            .ok_or_else(|| Error::Overflow("remainder overflow".into()))?;
        Ok((q, r))
    }

    /// `self / d` when the division is exact.
    pub fn exact_div(self, d: Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let n = d.wide_norm();
        let (x, y) = self.wide_mul(d.conj());
        if x % n != 0 || y % n != 0 {
            return None;
        }
        Self::from_wide(x / n, y / n)
    }

    pub fn divides(self, x: Self) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.exact_div(self).is_some()
    }

    /// The ring element as a complex number.
    pub fn to_complex(self) -> num_complex::Complex64 {
        let theta = 2.0 * std::f64::consts::PI / R::ORDER as f64;
        let g = num_complex::Complex64::from_polar(1.0, theta);
        self.a as f64 + g * self.b as f64
    }
}

fn round_div(x: i128, n: i128) -> i128 {
    (2 * x + n).div_euclid(2 * n)
}

impl<R: RingKind> From<i64> for QuadInt<R> {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<R: RingKind> Add for QuadInt<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("coordinate overflow in add")
    }
}

impl<R: RingKind> Sub for QuadInt<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("coordinate overflow in sub")
    }
}

impl<R: RingKind> Mul for QuadInt<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("coordinate overflow in mul")
    }
}

impl<R: RingKind> Neg for QuadInt<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl<R: RingKind> fmt::Display for QuadInt<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = R::GEN;
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "{g}"),
            (0, -1) => write!(f, "-{g}"),
            (0, b) => write!(f, "{b}{g}"),
            (a, 1) => write!(f, "{a}+{g}"),
            (a, -1) => write!(f, "{a}-{g}"),
            (a, b) if b > 0 => write!(f, "{a}+{b}{g}"),
            (a, b) => write!(f, "{a}{b}{g}"),
        }
    }
}

impl<R: RingKind> fmt::Debug for QuadInt<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_coprime_to_ramified<R: RingKind>(z: QuadInt<R>) -> Result<u64> {
    if z.is_zero() {
        return Err(domain("zero has no primary associate"));
    }
    let n = z.checked_norm()?;
    if n % R::RAMIFIED == 0 {
        return Err(domain(format!("norm of {z} is divisible by {}", R::RAMIFIED)));
    }
    Ok(n)
}

/// Returns `(unit, primary)` with `primary = unit · z` the unique primary associate.
pub fn make_primary<R: RingKind>(z: QuadInt<R>) -> Result<(QuadInt<R>, QuadInt<R>)> {
    check_coprime_to_ramified(z)?;
    QuadInt::<R>::units()
        .map(|u| (u, u * z))
        .find(|(_, p)| p.is_primary())
        .ok_or_else(|| Error::Domain(format!("{z} has no primary associate")))
}

/// The associate of `z` in the first sector (see [`RingKind::is_canonical_coords`]).
pub fn canonical_associate<R: RingKind>(z: QuadInt<R>) -> QuadInt<R> {
    if z.is_zero() {
        return z;
    }
    z.associates()
        .find(|w| R::is_canonical_coords(w.a, w.b))
        .expect("every nonzero element has a first-sector associate")
}

/// Greatest common divisor, normalized to the primary associate when one
/// exists and to the canonical associate otherwise.
pub fn gcd<R: RingKind>(x: QuadInt<R>, y: QuadInt<R>) -> Result<QuadInt<R>> {
    if x.is_zero() && y.is_zero() {
        return Err(domain("gcd(0, 0) is undefined"));
    }
    let (mut x, mut y) = (x, y);
    while !y.is_zero() {
        let (_, r) = x.div_rem(y)?;
        (x, y) = (y, r);
    }
    if x.checked_norm()? % R::RAMIFIED == 0 {
        Ok(canonical_associate(x))
    } else {
        Ok(make_primary(x)?.1)
    }
}

/// Primary primes above the rational prime `p`: two conjugates `[π, π̄]` when
/// `p` splits, empty when `p` is inert or ramified. `π` is the primary
/// associate of the solution `a + b·g` of `N = p` with `a, b ≥ 1` and
/// smallest `b`, then smallest `a`.
pub fn split_prime<R: RingKind>(p: u64) -> Result<Vec<QuadInt<R>>> {
    if !is_prime(p) {
        return Err(domain(format!("{p} is not prime")));
    }
    if !R::splits(p) {
        return Ok(Vec::new());
    }
    if p >= NORM_BOUND {
        return Err(Error::Capacity(format!("{p} exceeds the norm bound")));
    }
    // a² + T·a·b + b² = p  ⇒  a = (−T·b ± √(4p − (4 − T²)·b²)) / 2
    let t = R::TRACE as i128;
    let p_wide = p as i128;
    let k = 4 - t * t;
    let mut b: i128 = 1;
    while k * b * b <= 4 * p_wide {
        let disc = 4 * p_wide - k * b * b;
        if let Some(s) = exact_sqrt(disc as u64) {
            let s = s as i128;
            let candidate = [-t * b - s, -t * b + s]
                .into_iter()
                .filter(|num| num % 2 == 0 && num / 2 >= 1)
                .map(|num| num / 2)
                .min();
            if let Some(a) = candidate {
                let z = QuadInt::<R>::new(a as i64, b as i64);
                debug_assert_eq!(z.norm(), p);
                let pi = make_primary(z)?.1;
                return Ok(vec![pi, pi.conj()]);
            }
        }
        b += 1;
    }
    unreachable!("split prime {p} has a norm representation")
}

/// `n = unit · ∏ prime^exponent` with primary, pairwise non-associate primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryFactorization<R: RingKind> {
    pub unit: QuadInt<R>,
    pub factors: Vec<(QuadInt<R>, u32)>,
}

impl<R: RingKind> PrimaryFactorization<R> {
    pub fn reconstruct(&self) -> Option<QuadInt<R>> {
        self.factors
            .iter()
            .try_fold(self.unit, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    /// True when every exponent is a multiple of `k`.
    pub fn is_kth_power(&self, k: u32) -> bool {
        self.factors.iter().all(|&(_, e)| e % k == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// True when some rational prime divides the factored element.
    pub fn has_rational_prime_divisor(&self) -> bool {
        self.factors.iter().any(|&(p, _)| {
            let n = p.norm();
            !is_prime(n) || self.factors.iter().any(|&(q, _)| q == p.conj() && q != p)
        })
    }
}

/// Complete factorization into primary primes, via the rational
/// factorization of the norm.
pub fn factor_primary<R: RingKind>(n: QuadInt<R>) -> Result<PrimaryFactorization<R>> {
    let norm = check_coprime_to_ramified(n)?;
    let mut rest = n;
    let mut factors = Vec::new();
    for (p, e) in factorize(norm)? {
        if R::splits(p) {
            let primes = split_prime::<R>(p)?;
            let (pi, pi_bar) = (primes[0], primes[1]);
            let mut k = 0;
            while let Some(q) = rest.exact_div(pi) {
                rest = q;
                k += 1;
            }
            for _ in k..e {
                rest = rest
                    .exact_div(pi_bar)
                    .ok_or_else(|| Error::Domain(format!("inconsistent factorization at {p}")))?;
            }
            if k > 0 {
                factors.push((pi, k));
            }
            if e > k {
                factors.push((pi_bar, e - k));
            }
        } else {
            if e % 2 != 0 {
                return Err(Error::Domain(format!("inert prime {p} with odd norm exponent")));
            }
            let inert = make_primary(QuadInt::<R>::from_int(p as i64))?.1;
            for _ in 0..e / 2 {
                rest = rest
                    .exact_div(inert)
                    .ok_or_else(|| Error::Domain(format!("inconsistent factorization at {p}")))?;
            }
            factors.push((inert, e / 2));
        }
    }
    debug_assert!(rest.is_unit());
    // Stable sort keeps the split order [π, π̄] within equal norms.
    factors.sort_by_key(|&(p, _)| p.norm());
    Ok(PrimaryFactorization { unit: rest, factors })
}

/// Number of reduced residue classes modulo `n`.
pub fn euler_phi<R: RingKind>(n: QuadInt<R>) -> Result<u64> {
    let f = factor_primary(n)?;
    Ok(f.factors
        .iter()
        .map(|&(p, e)| {
            let q = p.norm();
            q.pow(e - 1) * (q - 1)
        })
        .product())
}

#[derive(Debug, Clone)]
enum ResidueField {
    /// `Z[g]/(π) ≅ F_p` with `g ↦ image`; `roots[j]` is `image^j`.
    Split { p: u64, image: u64, roots: Vec<u64> },
    /// `Z[g]/(p) ≅ F_p[g]`; `roots[j]` is `g^j`.
    Inert { p: u64, roots: Vec<(u64, u64)> },
}

/// Power-residue symbol `(· / π)` for a fixed primary prime `π`, with the
/// residue field set up once.
#[derive(Debug, Clone)]
pub struct PrimeSymbol<R: RingKind> {
    prime: QuadInt<R>,
    field: ResidueField,
}

fn fp2_mul<R: RingKind>(x: (u64, u64), y: (u64, u64), p: u64) -> (u64, u64) {
    // (x0 + x1 g)(y0 + y1 g) with g² = T g − 1
    let t = reduce(R::TRACE as i128, p);
    let bd = mul_mod(x.1, y.1, p);
    let c0 = (mul_mod(x.0, y.0, p) + p - bd) % p;
    let c1 = ((mul_mod(x.0, y.1, p) + mul_mod(x.1, y.0, p)) % p + mul_mod(t, bd, p)) % p;
    (c0, c1)
}

fn fp2_pow<R: RingKind>(mut base: (u64, u64), mut exp: u128, p: u64) -> (u64, u64) {
    let mut acc = (1 % p, 0);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp2_mul::<R>(acc, base, p);
        }
        base = fp2_mul::<R>(base, base, p);
        exp >>= 1;
    }
    acc
}

impl<R: RingKind> PrimeSymbol<R> {
    pub fn new(prime: QuadInt<R>) -> Result<Self> {
        if !prime.is_primary() {
            return Err(domain(format!("{prime} is not primary")));
        }
        let n = prime.checked_norm()?;
        let k = R::ORDER as usize;
        let field = if is_prime(n) {
            let p = n;
            let binv = inv_mod(reduce(prime.b as i128, p), p)
                .ok_or_else(|| domain(format!("{prime} is not a split prime")))?;
            let image = mul_mod(reduce(-(prime.a as i128), p), binv, p);
            let roots = (0..k as u64).map(|j| pow_mod(image, j, p)).collect();
            ResidueField::Split { p, image, roots }
        } else {
            let p = arith::exact_sqrt(n)
                .filter(|&p| is_prime(p) && !R::splits(p) && p != R::RAMIFIED)
                .ok_or_else(|| domain(format!("{prime} is not prime")))?;
            if prime.b != 0 {
                return Err(domain(format!("{prime} is not prime")));
            }
            let mut roots = vec![(1, 0)];
            for j in 1..k {
                roots.push(fp2_mul::<R>(roots[j - 1], (0, 1), p));
            }
            ResidueField::Inert { p, roots }
        };
        Ok(Self { prime, field })
    }

    pub fn prime(&self) -> QuadInt<R> {
        self.prime
    }

    /// The rational prime below `π`.
    pub fn characteristic(&self) -> u64 {
        match self.field {
            ResidueField::Split { p, .. } | ResidueField::Inert { p, .. } => p,
        }
    }

    pub fn is_split(&self) -> bool {
        matches!(self.field, ResidueField::Split { .. })
    }

    /// Image of `x` in `F_p`, for split primes.
    pub fn split_image(&self, x: QuadInt<R>) -> Option<u64> {
        match &self.field {
            ResidueField::Split { p, image, .. } => {
                Some((reduce(x.a as i128, *p) + mul_mod(reduce(x.b as i128, *p), *image, *p)) % p)
            }
            ResidueField::Inert { .. } => None,
        }
    }

    /// Exponent of `(x / π)` on a reduced element of `F_p` (split primes only).
    pub fn exponent_of_residue(&self, y: u64) -> Option<u32> {
        let ResidueField::Split { p, roots, .. } = &self.field else {
            return None;
        };
        if y.is_multiple_of(*p) {
            return None;
        }
        let t = pow_mod(y, (p - 1) / R::ORDER as u64, *p);
        let j = roots.iter().position(|&r| r == t).expect("power lands on a root of unity");
        Some(j as u32)
    }

    /// `Some(j)` with `(x/π) = g^j`, or `None` when `π | x`.
    pub fn exponent(&self, x: QuadInt<R>) -> Option<u32> {
        match &self.field {
            ResidueField::Split { .. } => self.exponent_of_residue(self.split_image(x)?),
            ResidueField::Inert { p, roots } => {
                let y = (reduce(x.a as i128, *p), reduce(x.b as i128, *p));
                if y == (0, 0) {
                    return None;
                }
                let e = ((*p as u128) * (*p as u128) - 1) / R::ORDER as u128;
                let t = fp2_pow::<R>(y, e, *p);
                let j = roots.iter().position(|&r| r == t).expect("power lands on a root of unity");
                Some(j as u32)
            }
        }
    }
}

/// Power-residue symbol `(· / n)` for a fixed modulus, extended
/// multiplicatively over the primary factorization; `(· / unit) = 1`.
#[derive(Debug, Clone)]
pub struct ResidueSymbol<R: RingKind> {
    modulus: QuadInt<R>,
    factorization: PrimaryFactorization<R>,
    primes: Vec<(PrimeSymbol<R>, u32)>,
}

impl<R: RingKind> ResidueSymbol<R> {
    pub fn new(modulus: QuadInt<R>) -> Result<Self> {
        let factorization = factor_primary(modulus)?;
        let primes = factorization
            .factors
            .iter()
            .map(|&(p, e)| Ok((PrimeSymbol::new(p)?, e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { modulus, factorization, primes })
    }

    pub fn modulus(&self) -> QuadInt<R> {
        self.modulus
    }

    pub fn factorization(&self) -> &PrimaryFactorization<R> {
        &self.factorization
    }

    pub fn prime_symbols(&self) -> &[(PrimeSymbol<R>, u32)] {
        &self.primes
    }

    /// `Some(j)` with `(x/n) = g^j`, `None` when `x` and `n` share a factor.
    pub fn exponent(&self, x: QuadInt<R>) -> Option<u32> {
        let mut total = 0u32;
        for (ps, e) in &self.primes {
            total = (total + ps.exponent(x)? * e) % R::ORDER;
        }
        Some(total)
    }
}

/// `(a / n)` as a root-of-unity exponent, `None` encoding the value 0.
pub fn residue_symbol<R: RingKind>(a: QuadInt<R>, n: QuadInt<R>) -> Result<Option<u32>> {
    Ok(ResidueSymbol::new(n)?.exponent(a))
}

/// All primary elements with norm at most `max_norm`, ordered by norm, then `b`, then `a`.
pub fn primaries_up_to<R: RingKind>(max_norm: u64) -> Vec<QuadInt<R>> {
    let t = R::TRACE as f64;
    // N(a + b g) ≥ (1 − T²/4) b², and for fixed b the a-range is bounded likewise.
    let k = 1.0 - t * t / 4.0;
    let bmax = ((max_norm as f64 / k).sqrt()).ceil() as i64 + 1;
    let mut out = Vec::new();
    for b in -bmax..=bmax {
        let center = -t * b as f64 / 2.0;
        let half = ((max_norm as f64) - k * (b * b) as f64).max(0.0).sqrt() + 1.0;
        let lo = (center - half).floor() as i64;
        let hi = (center + half).ceil() as i64;
        for a in lo..=hi {
            let z = QuadInt::<R>::new(a, b);
            let n = z.norm();
            if n >= 1 && n <= max_norm && z.is_primary() {
                out.push(z);
            }
        }
    }
    out.sort_by_key(|z| (z.norm(), z.b, z.a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_formats() {
        assert_eq!(EisInt::new(-2, -3).to_string(), "-2-3w");
        assert_eq!(EisInt::new(1, 3).to_string(), "1+3w");
        assert_eq!(GaussInt::new(-1, 2).to_string(), "-1+2i");
        assert_eq!(GaussInt::new(0, -1).to_string(), "-i");
        assert_eq!(GaussInt::new(7, 0).to_string(), "7");
    }

    #[test]
    fn try_new_enforces_bound() {
        assert!(EisInt::try_new(1 << 31, 0).is_err());
        assert!(EisInt::try_new((1 << 31) - 1, -((1 << 31) - 1)).is_ok());
    }

    #[test]
    fn checked_norm_overflow() {
        let big = EisInt::new(i64::MAX / 2, -(i64::MAX / 2));
        assert!(matches!(big.checked_norm(), Err(Error::Overflow(_))));
        assert!(big.checked_mul(big).is_none());
    }

    #[test]
    fn div_rem_remainder_is_small() {
        let d = EisInt::new(5, -7);
        for a in -20..20 {
            for b in -20..20 {
                let x = EisInt::new(a, b);
                let (q, r) = x.div_rem(d).unwrap();
                assert_eq!(q * d + r, x);
                assert!(r.norm() < d.norm());
            }
        }
        let d = GaussInt::new(3, 4);
        for a in -20..20 {
            for b in -20..20 {
                let x = GaussInt::new(a, b);
                let (q, r) = x.div_rem(d).unwrap();
                assert_eq!(q * d + r, x);
                assert!(r.norm() < d.norm());
            }
        }
    }

    #[test]
    fn primaries_enumeration_complete() {
        let brute: Vec<EisInt> = (-40..=40)
            .flat_map(|a| (-40..=40).map(move |b| EisInt::new(a, b)))
            .filter(|z| z.norm() <= 300 && z.norm() > 0 && z.is_primary())
            .collect();
        let fast = primaries_up_to::<Eisenstein>(300);
        assert_eq!(brute.len(), fast.len());
        assert!(brute.iter().all(|z| fast.contains(z)));
        let fast_i = primaries_up_to::<Gaussian>(300);
        let brute_i = (-20..=20)
            .flat_map(|a| (-20..=20).map(move |b| GaussInt::new(a, b)))
            .filter(|z| z.norm() <= 300 && z.norm() > 0 && z.is_primary())
            .count();
        assert_eq!(brute_i, fast_i.len());
    }

    #[test]
    fn inert_symbol_matches_brute_force_cubes() {
        // In F_{p²} = Z[ω]/(p) for p = 5, nonzero cubes are exactly the classes with symbol 1.
        let p = 5i64;
        let sym = PrimeSymbol::new(make_primary(EisInt::from_int(p)).unwrap().1).unwrap();
        let elems: Vec<EisInt> =
            (0..p).flat_map(|a| (0..p).map(move |b| EisInt::new(a, b))).collect();
        let reduce_mod = |z: EisInt| EisInt::new(z.a.rem_euclid(p), z.b.rem_euclid(p));
        let cubes: std::collections::HashSet<EisInt> =
            elems.iter().filter(|z| !z.is_zero()).map(|&z| reduce_mod(z * z * z)).collect();
        for &x in &elems {
            match sym.exponent(x) {
                None => assert!(x.is_zero()),
                Some(j) => assert_eq!(j == 0, cubes.contains(&x), "x = {x}"),
            }
        }
    }
}

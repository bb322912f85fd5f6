//! The character families `S_{3,n}` and `S_{4,n}`.
//!
//! A family member is realized as the residue symbol `m ↦ (m/q)` for a
//! primary `q` of norm `n` with no rational prime divisor, and materialized
//! as a table of root-of-unity exponents modulo `n`. The discrete-log
//! construction in [`primitive_chars_dlog`] builds the prime-modulus
//! characters independently of any ring arithmetic.

use std::fmt;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, mul_mod, primitive_root, Sieve};
use crate::error::{domain, Result};
use crate::ring::{
    factor_primary, split_prime, EisInt, Eisenstein, GaussInt, Gaussian, PrimeSymbol, QuadInt,
    RingKind,
};

/// Character order: 3 (cubic, over `Z[ω]`) or 4 (quartic, over `Z[i]`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u32", try_from = "u32")]
pub enum Order {
    Cubic,
    Quartic,
}

impl Order {
    pub const fn value(self) -> u32 {
        match self {
            Order::Cubic => 3,
            Order::Quartic => 4,
        }
    }

    pub fn from_value(k: u32) -> Result<Self> {
        match k {
            3 => Ok(Order::Cubic),
            4 => Ok(Order::Quartic),
            _ => Err(domain(format!("order must be 3 or 4, got {k}"))),
        }
    }
}

impl From<Order> for u32 {
    fn from(o: Order) -> u32 {
        o.value()
    }
}

impl TryFrom<u32> for Order {
    type Error = crate::error::Error;
    fn try_from(k: u32) -> Result<Self> {
        Order::from_value(k)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Where a table came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Eisenstein(EisInt),
    Gaussian(GaussInt),
    /// `χ(g^t) = e(twist·t/order)` for the least primitive root `g`.
    DiscreteLog { root: u64, twist: u32 },
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Eisenstein(q) => write!(f, "{q}"),
            Generator::Gaussian(q) => write!(f, "{q}"),
            Generator::DiscreteLog { root, twist } => write!(f, "dlog(g={root},c={twist})"),
        }
    }
}

/// Ring-generic access to the two generator variants.
pub trait FamilyRing: RingKind {
    const FAMILY_ORDER: Order;
    fn wrap(q: QuadInt<Self>) -> Generator;
}

impl FamilyRing for Eisenstein {
    const FAMILY_ORDER: Order = Order::Cubic;
    fn wrap(q: EisInt) -> Generator {
        Generator::Eisenstein(q)
    }
}

impl FamilyRing for Gaussian {
    const FAMILY_ORDER: Order = Order::Quartic;
    fn wrap(q: GaussInt) -> Generator {
        Generator::Gaussian(q)
    }
}

/// A Dirichlet character modulo `n` with values `e(j/order)` or 0, stored as
/// exponents `j` (`None` encodes 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub order: Order,
    pub modulus: u64,
    pub generator: Generator,
    values: Vec<Option<u8>>,
}

impl CharacterTable {
    /// The principal character modulo 1.
    pub fn principal_mod_one(order: Order) -> Self {
        let generator = match order {
            Order::Cubic => Generator::Eisenstein(EisInt::one()),
            Order::Quartic => Generator::Gaussian(GaussInt::one()),
        };
        Self { order, modulus: 1, generator, values: vec![Some(0)] }
    }

    pub fn values(&self) -> &[Option<u8>] {
        &self.values
    }

    /// `χ(m)` as an exponent, for any integer `m`.
    pub fn value(&self, m: i64) -> Option<u32> {
        let idx = m.rem_euclid(self.modulus as i64) as usize;
        self.values[idx].map(u32::from)
    }

    pub fn is_principal(&self) -> bool {
        self.values.iter().all(|v| v.is_none_or(|e| e == 0))
    }

    pub fn conj(&self) -> Self {
        let k = self.order.value() as u8;
        Self {
            order: self.order,
            modulus: self.modulus,
            generator: self.generator,
            values: self.values.iter().map(|v| v.map(|e| (k - e) % k)).collect(),
        }
    }

    /// `χ^k` pointwise.
    pub fn pow(&self, k: u32) -> Self {
        let ord = self.order.value();
        Self {
            values: self.values.iter().map(|v| v.map(|e| ((e as u32 * k) % ord) as u8)).collect(),
            ..self.clone()
        }
    }

    /// Exponent histogram over `m = 1..=len`: `counts[j] = #{m : χ(m) = e(j/order)}`.
    pub fn exponent_counts(&self, len: u64) -> [u64; 4] {
        let n = self.modulus;
        let (full, rest) = (len / n, len % n);
        let mut period = [0u64; 4];
        let mut partial = [0u64; 4];
        for m in 1..=n {
            if let Some(e) = self.values[(m % n) as usize] {
                period[e as usize] += 1;
                if m <= rest {
                    partial[e as usize] += 1;
                }
            }
        }
        std::array::from_fn(|j| full * period[j] + partial[j])
    }

    /// Writes `m,exponent` rows, an empty exponent encoding the value 0.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "m,exponent")?;
        for (m, v) in self.values.iter().enumerate() {
            match v {
                Some(e) => writeln!(w, "{m},{e}")?,
                None => writeln!(w, "{m},")?,
            }
        }
        Ok(())
    }
}

/// An exact sum of character values, `a + b·g` with `g = ω` (order 3) or `g = i` (order 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactSum {
    pub order: Order,
    pub a: i64,
    pub b: i64,
}

impl ExactSum {
    pub fn zero(order: Order) -> Self {
        Self { order, a: 0, b: 0 }
    }

    pub fn from_int(order: Order, n: i64) -> Self {
        Self { order, a: n, b: 0 }
    }

    /// `Σ_j counts[j]·g^j`, reduced with `ω² = −1 − ω` or `i² = −1`, `i³ = −i`.
    pub fn from_counts(order: Order, counts: [u64; 4]) -> Self {
        let c = counts.map(|x| x as i64);
        match order {
            Order::Cubic => Self { order, a: c[0] - c[2], b: c[1] - c[2] },
            Order::Quartic => Self { order, a: c[0] - c[2], b: c[1] - c[3] },
        }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Real iff the `g`-coordinate vanishes, in both rings.
    pub fn is_real(self) -> bool {
        self.b == 0
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        match self.order {
            Order::Cubic => num_complex::Complex64::new(
                self.a as f64 - self.b as f64 / 2.0,
                self.b as f64 * 3f64.sqrt() / 2.0,
            ),
            Order::Quartic => num_complex::Complex64::new(self.a as f64, self.b as f64),
        }
    }
}

impl std::ops::Add for ExactSum {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.order, rhs.order);
        Self { order: self.order, a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl std::ops::Sub for ExactSum {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.order, rhs.order);
        Self { order: self.order, a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl std::iter::Sum for ExactSum {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut iter = iter.peekable();
        let order = iter.peek().map_or(Order::Cubic, |s| s.order);
        iter.fold(Self::zero(order), |acc, x| acc + x)
    }
}

fn is_admissible_factorization(factors: &[(u64, u32)], order: Order) -> bool {
    factors.iter().all(|&(p, _)| p % order.value() as u64 == 1)
}

/// Moduli `n ≤ y` whose family is nonempty: 1 and every `n` built from primes `≡ 1 mod order`.
pub fn admissible_moduli(y: u64, order: Order) -> Vec<u64> {
    let sieve = Sieve::new(y as usize);
    admissible_moduli_with(&sieve, y, order)
}

pub(crate) fn admissible_moduli_with(sieve: &Sieve, y: u64, order: Order) -> Vec<u64> {
    (1..=y)
        .filter(|&n| is_admissible_factorization(&sieve.factor(n as usize), order))
        .collect()
}

/// Primary `q` with `N(q) = n` and no rational prime divisor, in the order of
/// the binary choice vector (first prime most significant, 0 picking `π`,
/// 1 picking `π̄`).
pub fn enumerate_q<R: RingKind>(n: u64) -> Result<Vec<QuadInt<R>>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let factors = factorize(n)?;
    if factors.iter().any(|&(p, _)| !R::splits(p)) {
        return Ok(Vec::new());
    }
    let mut pairs = Vec::with_capacity(factors.len());
    for &(p, alpha) in &factors {
        let s = split_prime::<R>(p)?;
        pairs.push((s[0], s[1], alpha));
    }
    let k = pairs.len();
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u32..(1 << k) {
        let mut q = QuadInt::<R>::one();
        for (i, &(pi, pi_bar, alpha)) in pairs.iter().enumerate() {
            let choice = if mask >> (k - 1 - i) & 1 == 0 { pi } else { pi_bar };
            q = q
                .checked_mul(choice.checked_pow(alpha).ok_or_else(|| overflow(n))?)
                .ok_or_else(|| overflow(n))?;
        }
        out.push(crate::ring::make_primary(q)?.1);
    }
    Ok(out)
}

fn overflow(n: u64) -> crate::error::Error {
    crate::error::Error::Overflow(format!("generator of norm {n} overflows"))
}

/// Exponent table of `x ↦ (x/π)` on `F_p`, via the discrete logarithm to a primitive root.
fn prime_exponent_table<R: RingKind>(sym: &PrimeSymbol<R>) -> Result<Vec<Option<u8>>> {
    let p = sym.characteristic();
    let g = primitive_root(p)?;
    let c = sym.exponent_of_residue(g).expect("primitive root is a unit");
    let k = R::ORDER as u64;
    let mut table = vec![None; p as usize];
    let mut x = 1u64;
    for t in 0..p - 1 {
        table[x as usize] = Some(((t % k) * c as u64 % k) as u8);
        x = mul_mod(x, g, p);
    }
    Ok(table)
}

/// The table of `m ↦ (m/q)` modulo `N(q)`.
pub fn character_from_q<R: FamilyRing>(q: QuadInt<R>) -> Result<CharacterTable> {
    if !q.is_primary() {
        return Err(domain(format!("{q} is not primary")));
    }
    let f = factor_primary(q)?;
    if f.has_rational_prime_divisor() {
        return Err(domain(format!("{q} is divisible by a rational prime")));
    }
    let n = q.checked_norm()?;
    let order = R::FAMILY_ORDER;
    let k = order.value();
    let mut components = Vec::new();
    for &(pi, alpha) in &f.factors {
        let sym = PrimeSymbol::new(pi)?;
        components.push((sym.characteristic(), prime_exponent_table(&sym)?, alpha));
    }
    let values = (0..n)
        .map(|m| {
            let mut e = 0u32;
            for (p, table, alpha) in &components {
                e += table[(m % p) as usize]? as u32 * alpha;
            }
            Some((e % k) as u8)
        })
        .collect();
    Ok(CharacterTable { order, modulus: n, generator: R::wrap(q), values })
}

fn family_in<R: FamilyRing>(n: u64) -> Result<Vec<CharacterTable>> {
    enumerate_q::<R>(n)?.into_iter().map(character_from_q).collect()
}

/// The family `S_{order,n}`, one table per generator `q` from [`enumerate_q`].
pub fn character_family(n: u64, order: Order) -> Result<Vec<CharacterTable>> {
    match order {
        Order::Cubic => family_in::<Eisenstein>(n),
        Order::Quartic => family_in::<Gaussian>(n),
    }
}

/// Generators of the family as display strings.
pub fn family_generators(n: u64, order: Order) -> Result<Vec<String>> {
    Ok(match order {
        Order::Cubic => enumerate_q::<Eisenstein>(n)?.iter().map(|q| q.to_string()).collect(),
        Order::Quartic => enumerate_q::<Gaussian>(n)?.iter().map(|q| q.to_string()).collect(),
    })
}

/// The two characters of exact order `order` modulo the prime `p`, built from
/// the least primitive root without any ring arithmetic.
pub fn primitive_chars_dlog(p: u64, order: Order) -> Result<Vec<CharacterTable>> {
    let k = order.value() as u64;
    if !is_prime(p) || p % k != 1 {
        return Err(domain(format!("{p} is not a prime ≡ 1 mod {k}")));
    }
    let g = primitive_root(p)?;
    let mut dlog = vec![0u64; p as usize];
    let mut x = 1u64;
    for t in 0..p - 1 {
        dlog[x as usize] = t;
        x = mul_mod(x, g, p);
    }
    Ok([1, k - 1]
        .into_iter()
        .map(|c| CharacterTable {
            order,
            modulus: p,
            generator: Generator::DiscreteLog { root: g, twist: c as u32 },
            values: (0..p)
                .map(|m| (m != 0).then(|| (c * dlog[m as usize] % k) as u8))
                .collect(),
        })
        .collect())
}

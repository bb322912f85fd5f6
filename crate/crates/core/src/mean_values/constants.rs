//! Euler factors, the constants `C₁`, `C₂`, and the main-term predictor.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use crate::arith::{is_prime, Sieve};
use crate::characters::Order;
use crate::error::{domain, Result};

/// Prime cutoff used by [`main_term_predict`].
pub const DEFAULT_PRIME_CUTOFF: u64 = 1_000_000;

/// `(χ₀(p), χ₁(p))` for the principal and the non-principal character
/// modulo 3 (order 3) or modulo 4 (order 4).
pub fn base_characters(p: u64, order: Order) -> (f64, f64) {
    let m = match order {
        Order::Cubic => 3,
        Order::Quartic => 4,
    };
    match p % m {
        1 => (1.0, 1.0),
        r if r == m - 1 => (1.0, -1.0),
        _ => (0.0, 0.0),
    }
}

/// The local factor `f_p(s)` (order 3) or `h_p(s)` (order 4), summed term by term:
///
/// ```text
/// 1 + c·x²(1 − p^{s−1})/(1 − x) − c²(1 − 1/p)·x²/(1 − x) + d·x²
///   + c·d(1 − 1/p)·x³/(1 − x) + (c²/4)(1 − 1/p)²·x²/(1 − x)²·(1 − c·x + d·x²)
/// ```
///
/// with `x = p^{−s}`, `c = χ₀(p) + χ₁(p)`, `d = χ₀(p)χ₁(p)`.
pub fn euler_factor(p: u64, s: f64, order: Order) -> Result<f64> {
    check_args(p, s)?;
    let (c0, c1) = base_characters(p, order);
    let (c, d) = (c0 + c1, c0 * c1);
    let pf = p as f64;
    let x = pf.powf(-s);
    let q = 1.0 - 1.0 / pf;
    let x2 = x * x;
    let one_minus_x = 1.0 - x;
    let terms = [
        1.0,
        c * x2 * (1.0 - pf.powf(s - 1.0)) / one_minus_x,
        -c * c * q * x2 / one_minus_x,
        d * x2,
        c * d * q * x2 * x / one_minus_x,
        c * c / 4.0 * q * q * x2 / (one_minus_x * one_minus_x) * (1.0 - c * x + d * x2),
    ];
    Ok(terms.iter().sum())
}

/// The same factor in product form `(1 − χ₀(p)x)(1 − χ₁(p)x)(1 + A)²`,
/// `A = (c/2)(1 − 1/p)·x/(1 − x)`.
pub fn euler_factor_closed(p: u64, s: f64, order: Order) -> Result<f64> {
    check_args(p, s)?;
    let (c0, c1) = base_characters(p, order);
    let pf = p as f64;
    let x = pf.powf(-s);
    let a = (c0 + c1) / 2.0 * (1.0 - 1.0 / pf) * x / (1.0 - x);
    Ok((1.0 - c0 * x) * (1.0 - c1 * x) * (1.0 + a) * (1.0 + a))
}

/// `f_p(1)` (resp. `h_p(1)`) in lowest terms: `(1 − p⁻²)²` for split `p`,
/// `1 − p⁻²` for inert `p`, `1` for the ramified prime.
pub fn euler_factor_at_one(p: u64, order: Order) -> f64 {
    let inv2 = 1.0 / (p as f64 * p as f64);
    let (c0, c1) = base_characters(p, order);
    if c0 != 1.0 {
        1.0
    } else if c1 == 1.0 {
        (1.0 - inv2) * (1.0 - inv2)
    } else {
        1.0 - inv2
    }
}

fn check_args(p: u64, s: f64) -> Result<()> {
    if !is_prime(p) {
        return Err(domain(format!("{p} is not prime")));
    }
    if s.is_nan() || s <= 0.5 {
        return Err(domain(format!("s = {s} is outside Re(s) > 1/2")));
    }
    Ok(())
}

/// `L(1, χ₁)` for the non-principal character mod 3 or mod 4.
pub fn l_one(order: Order) -> f64 {
    match order {
        Order::Cubic => PI / (3.0 * 3f64.sqrt()),
        Order::Quartic => PI / 4.0,
    }
}

/// `L(1, χ₁)` from the paired series with `terms` pairs and an
/// Euler–Maclaurin tail.
pub fn l_one_series(order: Order, terms: u64) -> f64 {
    let (m, r1, r2, w) = match order {
        Order::Cubic => (3.0, 1.0, 2.0, 1.0),
        Order::Quartic => (4.0, 1.0, 3.0, 2.0),
    };
    let f = |t: f64| w / ((m * t + r1) * (m * t + r2));
    let df = |t: f64| {
        let (u, v) = (m * t + r1, m * t + r2);
        -w * m * (u + v) / (u * u * v * v)
    };
    // sum from the smallest terms up
    let head: f64 = (0..terms).rev().map(|k| f(k as f64)).sum();
    let k = terms as f64;
    let integral = w / (m * (r2 - r1)) * ((m * k + r2) / (m * k + r1)).ln();
    head + integral + f(k) / 2.0 - df(k) / 12.0
}

/// `|L(1, χ₁) − series|`, used as a consistency check of the closed form.
pub fn l_one_discrepancy(order: Order) -> f64 {
    (l_one(order) - l_one_series(order, 100_000)).abs()
}

/// `lim (s − 1/k)·L(ks, χ₀)`: residue `1/k` of `ζ(ks)` times the local factor
/// at the ramified prime, `1 − 1/3` resp. `1 − 1/2`.
pub fn residue_prefactor(order: Order) -> f64 {
    match order {
        Order::Cubic => (1.0 / 3.0) * (2.0 / 3.0),
        Order::Quartic => (1.0 / 4.0) * (1.0 / 2.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EulerProductResult {
    pub order: Order,
    /// `C₁` (order 3) or `C₂` (order 4).
    pub value: f64,
    /// `f(1)` or `h(1)` truncated at `prime_cutoff`.
    pub euler_product: f64,
    pub prime_cutoff: u64,
    /// `3/(P ln P)`, a bound on `Σ_{p>P} 3/p²`.
    pub tail_bound: f64,
}

/// Truncated Euler product of [`euler_factor`] at `s = 1`.
pub fn euler_product_at_one(order: Order, prime_cutoff: u64) -> Result<f64> {
    let sieve = Sieve::new(prime_cutoff as usize);
    let mut logsum = 0.0;
    for &p in sieve.primes() {
        logsum += euler_factor(p as u64, 1.0, order)?.ln();
    }
    Ok(logsum.exp())
}

/// Truncated Euler product of [`euler_factor_at_one`].
pub fn euler_product_at_one_closed(order: Order, prime_cutoff: u64) -> f64 {
    let sieve = Sieve::new(prime_cutoff as usize);
    sieve.primes().iter().map(|&p| euler_factor_at_one(p as u64, order).ln()).sum::<f64>().exp()
}

/// `C₁ = (3/√π)·√((2/9)·L(1,χ₁)·f(1))` or `C₂ = (4/√π)·√((1/8)·L(1,χ₁)·h(1))`.
pub fn compute_constant(order: Order, prime_cutoff: u64) -> Result<EulerProductResult> {
    if prime_cutoff < 100 {
        return Err(domain(format!("prime cutoff must be at least 100, got {prime_cutoff}")));
    }
    static L_CHECK: OnceLock<[f64; 2]> = OnceLock::new();
    let check = L_CHECK.get_or_init(|| [l_one_discrepancy(Order::Cubic), l_one_discrepancy(Order::Quartic)]);
    let idx = (order == Order::Quartic) as usize;
    if check[idx] > 1e-10 {
        return Err(domain(format!("L(1) closed form disagrees with its series by {}", check[idx])));
    }
    let euler_product = euler_product_at_one(order, prime_cutoff)?;
    let k = order.value() as f64;
    let value = k / PI.sqrt() * (residue_prefactor(order) * l_one(order) * euler_product).sqrt();
    let pf = prime_cutoff as f64;
    Ok(EulerProductResult { order, value, euler_product, prime_cutoff, tail_bound: 3.0 / (pf * pf.ln()) })
}

fn cached_constant(order: Order) -> f64 {
    static CACHE: [OnceLock<f64>; 2] = [OnceLock::new(), OnceLock::new()];
    let idx = (order == Order::Quartic) as usize;
    *CACHE[idx].get_or_init(|| {
        compute_constant(order, DEFAULT_PRIME_CUTOFF).expect("default cutoff is valid").value
    })
}

/// `C·X·Y^{1/k}/√(ln Y)` with `C` at the default prime cutoff.
pub fn main_term_predict(order: Order, x: f64, y: f64) -> Result<f64> {
    if y.is_nan() || y <= 1.0 {
        return Err(domain(format!("predictor needs Y > 1, got {y}")));
    }
    let k = order.value() as f64;
    Ok(cached_constant(order) * x * y.powf(1.0 / k) / y.ln().sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The five-term factor exactly as typeset, with `c²/4` and `cd/4` where
    /// the expansion has `c²` and `cd`, and `(1 − 1/p)` where it has `(1 − 1/p)²`.
    fn euler_factor_as_typeset(p: u64, s: f64, order: Order) -> f64 {
        let (c0, c1) = base_characters(p, order);
        let (c, d) = (c0 + c1, c0 * c1);
        let pf = p as f64;
        let x = pf.powf(-s);
        let q = 1.0 - 1.0 / pf;
        1.0 + c * x * x * (1.0 - pf.powf(s - 1.0)) / (1.0 - x) - c * c / 4.0 * q * x * x / (1.0 - x)
            + d * x * x
            + c * d / 4.0 * q * x * x * x / (1.0 - x)
            + c * c / 4.0 * q * x * x / ((1.0 - x) * (1.0 - x)) * (1.0 - c * x + d * x * x)
    }

    #[test]
    fn euler_factor_examples() {
        for order in [Order::Cubic, Order::Quartic] {
            let k = order.value() as u64;
            for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
                let f = euler_factor(p, 1.0, order).unwrap();
                let inv2 = 1.0 / (p * p) as f64;
                let expected = if p % k == 1 {
                    (1.0 - inv2) * (1.0 - inv2)
                } else if p % k == k - 1 {
                    1.0 - inv2
                } else {
                    1.0
                };
                assert!((f - expected).abs() < 1e-15, "{order} {p}: {f} vs {expected}");
            }
        }
        assert!(euler_factor(7, 0.5, Order::Cubic).is_err());
        assert!(euler_factor(8, 1.0, Order::Cubic).is_err());
    }

    #[test]
    fn typeset_factor_differs_at_split_primes() {
        // at p ≡ 1 the typeset form gives 1 + p⁻² − p⁻³/2 instead of (1 − p⁻²)²
        let p = 7.0f64;
        let typeset = euler_factor_as_typeset(7, 1.0, Order::Cubic);
        assert!((typeset - (1.0 + p.powi(-2) - p.powi(-3) / 2.0)).abs() < 1e-15);
        assert!((euler_factor(7, 1.0, Order::Cubic).unwrap() - (1.0 - p.powi(-2)).powi(2)).abs() < 1e-15);
        // inert and ramified primes are unaffected
        assert!((euler_factor_as_typeset(5, 1.0, Order::Cubic) - (1.0 - 1.0 / 25.0)).abs() < 1e-15);
        assert!((euler_factor_as_typeset(3, 1.0, Order::Cubic) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn expansion_matches_product_form() {
        let sieve = Sieve::new(2000);
        for &p in sieve.primes() {
            for s in [0.6, 0.75, 1.0, 1.5, 2.0, 3.0] {
                for order in [Order::Cubic, Order::Quartic] {
                    let a = euler_factor(p as u64, s, order).unwrap();
                    let b = euler_factor_closed(p as u64, s, order).unwrap();
                    assert!((a - b).abs() < 1e-12 * b.abs().max(1.0), "{p} {s} {order}");
                }
            }
        }
    }

    #[test]
    fn l_one_series_matches_closed_form() {
        for order in [Order::Cubic, Order::Quartic] {
            assert!(l_one_discrepancy(order) < 1e-10);
            assert!((l_one_series(order, 1000) - l_one(order)).abs() < 1e-10);
        }
    }

    #[test]
    fn prefactors() {
        assert!((residue_prefactor(Order::Cubic) - 2.0 / 9.0).abs() < 1e-16);
        assert!((residue_prefactor(Order::Quartic) - 1.0 / 8.0).abs() < 1e-16);
    }

    #[test]
    fn constants_are_positive_and_stable() {
        for order in [Order::Cubic, Order::Quartic] {
            let a = compute_constant(order, 100_000).unwrap();
            let b = compute_constant(order, 1_000_000).unwrap();
            assert!(a.value > 0.0 && b.value > 0.0);
            assert!((a.value - b.value).abs() / b.value < 1e-4);
            assert!(b.tail_bound < a.tail_bound);
            let closed = euler_product_at_one_closed(order, 100_000);
            assert!((closed - a.euler_product).abs() < 1e-12);
        }
        assert!(compute_constant(Order::Cubic, 99).is_err());
    }

    #[test]
    fn predictor_shape() {
        let c1 = compute_constant(Order::Cubic, DEFAULT_PRIME_CUTOFF).unwrap().value;
        let y = 1000.0f64;
        let v = main_term_predict(Order::Cubic, y, y).unwrap();
        assert!((v - c1 * y.powf(4.0 / 3.0) / y.ln().sqrt()).abs() < 1e-9 * v);
        let v2 = main_term_predict(Order::Cubic, 2.0 * y, y).unwrap();
        assert!((v2 - 2.0 * v).abs() < 1e-9 * v);
        assert!(main_term_predict(Order::Quartic, 5.0, 1.5).unwrap() > 0.0);
        assert!(main_term_predict(Order::Cubic, 5.0, 1.0).is_err());
    }
}

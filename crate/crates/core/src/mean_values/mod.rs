//! The double character sums `S₃(X, Y)` and `S₄(X, Y)`.

mod constants;

pub use constants::*;

use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{exact_sqrt, Sieve};
use crate::characters::{admissible_moduli_with, character_family, CharacterTable, ExactSum, Order};
use crate::error::{domain, Error, Result};

/// Default work budget, in elementary steps.
pub const DEFAULT_BUDGET: u128 = 10_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Enumerates every `m ≤ X` for every character.
    Direct,
    /// Reduces `X` modulo the period first.
    #[default]
    Period,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Self::Direct),
            "period" => Ok(Self::Period),
            _ => Err(domain(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SumConfig {
    pub method: Method,
    pub budget: u128,
    /// Record wall-clock time in the report.
    pub timing: bool,
}

impl Default for SumConfig {
    fn default() -> Self {
        Self { method: Method::Period, budget: DEFAULT_BUDGET, timing: true }
    }
}

/// One evaluation of `S_k(X, Y)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumReport {
    pub order: Order,
    #[serde(rename = "X")]
    pub x: f64,
    #[serde(rename = "Y")]
    pub y: f64,
    pub total_re: f64,
    pub total_im: f64,
    pub power_part: f64,
    pub remainder_re: f64,
    pub remainder_im: f64,
    pub predictor: Option<f64>,
    pub ratio: Option<f64>,
    pub moduli_count: u64,
    pub char_count: u64,
    pub elapsed_ms: Option<u64>,
    #[serde(skip)]
    pub total_exact: ExactSum,
    #[serde(skip)]
    pub power_exact: ExactSum,
}

impl SumReport {
    pub fn total(&self) -> Complex64 {
        Complex64::new(self.total_re, self.total_im)
    }

    pub fn remainder(&self) -> Complex64 {
        Complex64::new(self.remainder_re, self.remainder_im)
    }

    pub fn remainder_exact(&self) -> ExactSum {
        self.total_exact - self.power_exact
    }

    pub const CSV_HEADER: &'static str = "order,X,Y,total_re,total_im,power_part,remainder_re,remainder_im,predictor,ratio,moduli_count,char_count,elapsed_ms";

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map_or(String::new(), |v| v.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.order,
            self.x,
            self.y,
            self.total_re,
            self.total_im,
            self.power_part,
            self.remainder_re,
            self.remainder_im,
            opt(self.predictor),
            opt(self.ratio),
            self.moduli_count,
            self.char_count,
            self.elapsed_ms.map_or(String::new(), |v| v.to_string()),
        )
    }
}

/// `Σ_{1≤m≤⌊X⌋} χ(m)`, exactly.
pub fn char_sum_partial_exact(chi: &CharacterTable, x: f64) -> ExactSum {
    let len = floor_count(x);
    if chi.modulus == 1 {
        return ExactSum::from_int(chi.order, len as i64);
    }
    let len = if chi.is_principal() { len } else { len % chi.modulus };
    ExactSum::from_counts(chi.order, chi.exponent_counts(len))
}

pub fn char_sum_partial(chi: &CharacterTable, x: f64) -> Complex64 {
    char_sum_partial_exact(chi, x).to_complex()
}

/// `Σ_{1≤m≤⌊X⌋} χ(m)` by visiting every `m`.
fn char_sum_direct(chi: &CharacterTable, x: f64) -> ExactSum {
    let mut counts = [0u64; 4];
    for m in 1..=floor_count(x) as i64 {
        if let Some(e) = chi.value(m) {
            counts[e as usize] += 1;
        }
    }
    ExactSum::from_counts(chi.order, counts)
}

fn floor_count(x: f64) -> u64 {
    if x < 1.0 {
        0
    } else {
        x.floor() as u64
    }
}

fn validate(x: f64, y: f64) -> Result<()> {
    if !(x >= 1.0 && x.is_finite()) || !(y >= 1.0 && y.is_finite()) {
        return Err(domain(format!("X and Y must be finite and at least 1, got X = {x}, Y = {y}")));
    }
    if y > u32::MAX as f64 || x > i64::MAX as f64 / 4.0 {
        return Err(Error::Capacity(format!("X = {x}, Y = {y} out of range")));
    }
    Ok(())
}

/// Whether `n` is a perfect `k`-th power.
pub fn is_perfect_power(n: u64, k: u32) -> bool {
    match k {
        2 => exact_sqrt(n).is_some(),
        4 => exact_sqrt(n).and_then(exact_sqrt).is_some(),
        _ => {
            let r = (n as f64).powf(1.0 / k as f64).round() as u64;
            (r.saturating_sub(1)..=r + 1).any(|t| t.checked_pow(k) == Some(n))
        }
    }
}

/// Per-modulus contribution to the sweep.
#[derive(Debug, Clone, Copy)]
struct Contribution {
    n: u64,
    sum: ExactSum,
    chars: u64,
}

struct Sweep {
    order: Order,
    moduli: Vec<u64>,
    omega: Vec<u32>,
}

impl Sweep {
    fn new(order: Order, y_max: u64) -> Self {
        let sieve = Sieve::new(y_max as usize);
        let moduli = admissible_moduli_with(&sieve, y_max, order);
        let omega = moduli.iter().map(|&n| sieve.factor(n as usize).len() as u32).collect();
        Self { order, moduli, omega }
    }

    fn upto(&self, y: u64) -> usize {
        self.moduli.partition_point(|&n| n <= y)
    }

    /// Estimated steps for all moduli `≤ y`.
    fn estimate(&self, x: f64, y: u64, method: Method) -> u128 {
        let xs = floor_count(x) as u128;
        self.moduli[..self.upto(y)]
            .iter()
            .zip(&self.omega)
            .map(|(&n, &w)| {
                let per_char = match method {
                    Method::Direct => n as u128 + xs,
                    Method::Period => n as u128,
                };
                per_char << w
            })
            .sum()
    }

    fn run(&self, x: f64, y: u64, method: Method) -> Result<Vec<Contribution>> {
        let order = self.order;
        self.moduli[..self.upto(y)]
            .par_iter()
            .map(|&n| {
                let family = character_family(n, order)?;
                let sum = family
                    .iter()
                    .map(|chi| match method {
                        Method::Direct => char_sum_direct(chi, x),
                        Method::Period => char_sum_partial_exact(chi, x),
                    })
                    .fold(ExactSum::zero(order), |a, b| a + b);
                Ok(Contribution { n, sum, chars: family.len() as u64 })
            })
            .collect()
    }
}

fn report(order: Order, x: f64, y: f64, contribs: &[Contribution], elapsed_ms: Option<u64>) -> SumReport {
    let k = order.value();
    let mut total = ExactSum::zero(order);
    let mut power = ExactSum::zero(order);
    let mut chars = 0;
    for c in contribs {
        total = total + c.sum;
        if is_perfect_power(c.n, k) {
            power = power + c.sum;
        }
        chars += c.chars;
    }
    let t = total.to_complex();
    let r = (total - power).to_complex();
    let predictor = (y > 1.0).then(|| main_term_predict(order, x, y).expect("Y > 1"));
    SumReport {
        order,
        x,
        y,
        total_re: t.re,
        total_im: t.im,
        power_part: power.to_complex().re,
        remainder_re: r.re,
        remainder_im: r.im,
        predictor,
        ratio: predictor.map(|p| t.re / p),
        moduli_count: contribs.len() as u64,
        char_count: chars,
        elapsed_ms,
        total_exact: total,
        power_exact: power,
    }
}

fn check_budget(estimated: u128, budget: u128) -> Result<()> {
    if estimated > budget {
        Err(Error::Budget { estimated, budget })
    } else {
        Ok(())
    }
}

/// Estimated work of [`s_total`] in elementary steps: `Σ_n n·2^{ω(n)}`, plus
/// `X·2^{ω(n)}` for the direct method.
pub fn estimate_work(order: Order, x: f64, y: f64, method: Method) -> Result<u128> {
    validate(x, y)?;
    let y = y.floor() as u64;
    Ok(Sweep::new(order, y).estimate(x, y, method))
}

/// `S_k(X, Y) = Σ_{n≤Y} Σ_{χ∈S_{k,n}} Σ_{m≤X} χ(m)`.
pub fn s_total(order: Order, x: f64, y: f64, method: Method) -> Result<SumReport> {
    s_total_with(order, x, y, &SumConfig { method, ..SumConfig::default() })
}

pub fn s_total_with(order: Order, x: f64, y: f64, config: &SumConfig) -> Result<SumReport> {
    validate(x, y)?;
    let start = Instant::now();
    let yi = y.floor() as u64;
    let sweep = Sweep::new(order, yi);
    check_budget(sweep.estimate(x, yi, config.method), config.budget)?;
    let contribs = sweep.run(x, yi, config.method)?;
    let elapsed = config.timing.then(|| start.elapsed().as_millis() as u64);
    Ok(report(order, x, y, &contribs, elapsed))
}

/// The sub-sum of [`s_total`] over `n` that are perfect `k`-th powers.
pub fn power_part(order: Order, x: f64, y: f64) -> Result<f64> {
    validate(x, y)?;
    let k = order.value();
    let yi = y.floor() as u64;
    let mut total = ExactSum::zero(order);
    let mut t = 1u64;
    while let Some(n) = t.checked_pow(k).filter(|&n| n <= yi) {
        if let Ok(family) = character_family(n, order) {
            for chi in &family {
                total = total + char_sum_partial_exact(chi, x);
            }
        }
        t += 1;
    }
    let z = total.to_complex();
    debug_assert!(total.is_real());
    Ok(z.re)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub reports: Vec<SumReport>,
    /// `Y` values dropped because their estimated work exceeds the budget.
    pub truncated: Vec<f64>,
}

impl ScanResult {
    pub fn is_truncated(&self) -> bool {
        !self.truncated.is_empty()
    }
}

/// Evaluates `S_k(X, Y)` for each `Y` in one shared sweep up to the largest
/// `Y` within budget. Reports come back in input order; `Y` values over
/// budget are listed in `truncated`.
pub fn transition_scan(order: Order, x: f64, ys: &[f64], config: &SumConfig) -> Result<ScanResult> {
    for &y in ys {
        validate(x, y)?;
    }
    let start = Instant::now();
    let y_max = ys.iter().fold(1.0f64, |a, &b| a.max(b)).floor() as u64;
    let sweep = Sweep::new(order, y_max);
    let (kept, truncated): (Vec<f64>, Vec<f64>) = ys
        .iter()
        .partition(|&&y| sweep.estimate(x, y.floor() as u64, config.method) <= config.budget);
    let reach = kept.iter().fold(1.0f64, |a, &b| a.max(b)).floor() as u64;
    let contribs = sweep.run(x, reach, config.method)?;
    let elapsed = config.timing.then(|| start.elapsed().as_millis() as u64);
    let reports = kept
        .iter()
        .map(|&y| {
            let end = contribs.partition_point(|c| c.n <= y.floor() as u64);
            report(order, x, y, &contribs[..end], elapsed)
        })
        .collect();
    Ok(ScanResult { reports, truncated })
}

/// `max |Σ_{M<m≤M+N} χ(m)|` over all windows, for `χ` with zero period sum.
///
/// Prefix sums are periodic, so the maximum is the diameter of the set of
/// prefix sums over one period, found on its convex hull.
pub fn max_window_sum(chi: &CharacterTable) -> Result<f64> {
    let n = chi.modulus;
    if !ExactSum::from_counts(chi.order, chi.exponent_counts(n)).is_zero() {
        return Err(domain("window maximum needs a character with zero period sum"));
    }
    let mut pts = Vec::with_capacity(n as usize);
    let (mut a, mut b) = (0i64, 0i64);
    pts.push((a, b));
    for m in 1..n as i64 {
        if let Some(e) = chi.value(m) {
            match (chi.order, e) {
                (_, 0) => a += 1,
                (_, 1) => b += 1,
                (Order::Cubic, 2) => (a, b) = (a - 1, b - 1),
                (Order::Quartic, 2) => a -= 1,
                (_, _) => b -= 1,
            }
        }
        pts.push((a, b));
    }
    let hull = convex_hull(pts);
    let to_c = |(a, b): (i64, i64)| ExactSum { order: chi.order, a, b }.to_complex();
    let hull: Vec<Complex64> = hull.into_iter().map(to_c).collect();
    let mut best = 0.0f64;
    for (i, p) in hull.iter().enumerate() {
        for q in &hull[i + 1..] {
            best = best.max((p - q).norm());
        }
    }
    Ok(best)
}

/// Andrew's monotone chain; the map `(a, b) ↦ a + b·g` is linear, so hull
/// vertices in lattice coordinates are hull vertices in the plane.
fn convex_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// `√n·ln n + 1`.
pub fn polya_vinogradov_bound(n: u64) -> f64 {
    let n = n as f64;
    n.sqrt() * n.ln() + 1.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::admissible_moduli;

    #[test]
    fn char_sum_partial_examples() {
        let one = CharacterTable::principal_mod_one(Order::Cubic);
        assert_eq!(char_sum_partial(&one, 10.0), Complex64::new(10.0, 0.0));
        for chi in character_family(7, Order::Cubic).unwrap() {
            assert!(char_sum_partial_exact(&chi, 10.0).is_zero());
            assert!(char_sum_partial_exact(&chi, 7.0).is_zero());
            assert_eq!(char_sum_partial_exact(&chi, 10.5), char_sum_direct(&chi, 10.0));
        }
        for chi in character_family(13 * 7, Order::Cubic).unwrap() {
            assert!(char_sum_partial_exact(&chi, 91.0).is_zero());
        }
    }

    #[test]
    fn s_total_examples() {
        for y in [6.0, 7.0] {
            let r = s_total(Order::Cubic, 10.0, y, Method::Period).unwrap();
            assert_eq!(r.total_exact, ExactSum::from_int(Order::Cubic, 10));
            assert_eq!(r.total_re, 10.0);
        }
        let r = s_total(Order::Cubic, 10.0, 7.0, Method::Period).unwrap();
        assert_eq!((r.moduli_count, r.char_count), (2, 3));
        assert!(s_total(Order::Cubic, 0.5, 7.0, Method::Period).is_err());
        assert!(s_total(Order::Cubic, 10.0, f64::NAN, Method::Period).is_err());
    }

    #[test]
    fn direct_equals_period() {
        for order in [Order::Cubic, Order::Quartic] {
            for x in [1.0, 10.0, 37.5, 200.0] {
                for y in [1.0, 50.0, 200.0] {
                    let d = s_total(order, x, y, Method::Direct).unwrap();
                    let p = s_total(order, x, y, Method::Period).unwrap();
                    assert_eq!(d.total_exact, p.total_exact);
                    assert!(p.total_exact.is_real());
                    assert_eq!(p.remainder_exact() + p.power_exact, p.total_exact);
                }
            }
        }
    }

    #[test]
    fn additivity_in_y() {
        let order = Order::Quartic;
        let (x, y1, y2) = (150.0, 100.0, 300.0);
        let a = s_total(order, x, y1, Method::Period).unwrap();
        let b = s_total(order, x, y2, Method::Period).unwrap();
        let mut between = ExactSum::zero(order);
        for n in admissible_moduli(300, order).into_iter().filter(|&n| n > 100) {
            for chi in character_family(n, order).unwrap() {
                between = between + char_sum_direct(&chi, x);
            }
        }
        assert_eq!(b.total_exact - a.total_exact, between);
    }

    #[test]
    fn power_part_examples() {
        assert_eq!(power_part(Order::Cubic, 100.0, 342.0).unwrap(), 100.0);
        let p = power_part(Order::Cubic, 100.0, 343.0).unwrap();
        let direct: f64 = character_family(343, Order::Cubic)
            .unwrap()
            .iter()
            .map(|chi| char_sum_direct(chi, 100.0).to_complex().re)
            .sum();
        assert_eq!(p, 100.0 + direct);
        let r = s_total(Order::Cubic, 100.0, 400.0, Method::Period).unwrap();
        assert_eq!(r.power_part, p);
        assert!(r.power_exact.is_real());
    }

    #[test]
    fn perfect_powers() {
        assert!(is_perfect_power(343, 3) && !is_perfect_power(344, 3));
        assert!(is_perfect_power(625, 4) && !is_perfect_power(25, 4));
        assert!(is_perfect_power(1, 3) && is_perfect_power(1, 4));
        assert!(is_perfect_power(1_000_000_000_000, 3));
    }

    #[test]
    fn budget_guard() {
        let config = SumConfig { budget: 10, ..SumConfig::default() };
        assert!(matches!(s_total_with(Order::Cubic, 10.0, 100.0, &config), Err(Error::Budget { .. })));
        let est = estimate_work(Order::Cubic, 10.0, 7.0, Method::Period).unwrap();
        assert_eq!(est, 1 + 2 * 7);
    }

    #[test]
    fn scan_matches_single_evaluations() {
        let config = SumConfig { timing: false, ..SumConfig::default() };
        let scan = transition_scan(Order::Cubic, 500.0, &[100.0, 30.0, 400.0], &config).unwrap();
        assert!(!scan.is_truncated());
        for r in &scan.reports {
            let single = s_total_with(Order::Cubic, 500.0, r.y, &config).unwrap();
            assert_eq!(r, &single);
        }
        let tight = SumConfig { budget: 1000, timing: false, ..SumConfig::default() };
        let scan = transition_scan(Order::Cubic, 500.0, &[10.0, 100.0, 1000.0], &tight).unwrap();
        assert_eq!(scan.truncated, vec![100.0, 1000.0]);
        assert_eq!(scan.reports.len(), 1);
    }

    #[test]
    fn window_sums_against_brute_force() {
        for (n, order) in [(7, Order::Cubic), (91, Order::Cubic), (13, Order::Quartic), (65, Order::Quartic), (25, Order::Quartic)] {
            for chi in character_family(n, order).unwrap() {
                let fast = max_window_sum(&chi).unwrap();
                let mut slow = 0.0f64;
                for m0 in 0..=n as i64 {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for m in m0 + 1..=m0 + n as i64 {
                        if let Some(e) = chi.value(m) {
                            acc += crate::gauss_sums::root_of_unity(e, order.value());
                        }
                        slow = slow.max(acc.norm());
                    }
                }
                assert!((fast - slow).abs() < 1e-9, "{n} {fast} {slow}");
            }
        }
        let principal = character_family(343, Order::Cubic).unwrap();
        assert!(max_window_sum(&principal[0]).is_err());
    }

    #[test]
    fn report_json_fields() {
        let r = s_total_with(Order::Cubic, 10.0, 7.0, &SumConfig { timing: false, ..SumConfig::default() }).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        for k in [
            "order", "X", "Y", "total_re", "total_im", "power_part", "remainder_re", "remainder_im",
            "predictor", "ratio", "moduli_count", "char_count", "elapsed_ms",
        ] {
            assert!(keys.contains(&k), "{k}");
        }
        assert_eq!(v["order"], 3);
        assert_eq!(v["total_re"], 10.0);
    }
}

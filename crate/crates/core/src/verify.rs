//! Identity suites. Each suite produces one row per checked instance.

use std::collections::HashMap;
use std::fmt;
use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{gcd as gcd_u64, is_prime};
use crate::characters::{admissible_moduli, character_family, character_from_q, enumerate_q, primitive_chars_dlog, CharacterTable, Order};
use crate::error::{domain, Error, Result};
use crate::gauss_sums::{poisson_discrepancy, root_of_unity, tau_char, GaussSumContext};
use crate::mean_values::{max_window_sum, polya_vinogradov_bound};
use crate::ring::gaussian::lambda0;
use crate::ring::{
    euler_phi, factor_primary, make_primary, primaries_up_to, EisInt, Eisenstein, GaussInt, Gaussian, QuadInt,
    ResidueSymbol, RingKind,
};

/// Relative tolerance for Gauss-sum identities, scaled by `√N(n)`.
pub const GAUSS_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Reciprocity,
    GaussIdentities,
    TauRelations,
    Poisson,
    Bijection,
    Pv,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Reciprocity, Suite::GaussIdentities, Suite::TauRelations, Suite::Poisson, Suite::Bijection, Suite::Pv];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Reciprocity => "reciprocity",
            Suite::GaussIdentities => "gauss-identities",
            Suite::TauRelations => "tau-relations",
            Suite::Poisson => "poisson",
            Suite::Bijection => "bijection",
            Suite::Pv => "pv",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| domain(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub identity: &'static str,
    pub params: String,
    pub discrepancy: f64,
    pub pass: bool,
}

impl Row {
    fn new(identity: &'static str, params: String, discrepancy: f64, tol: f64) -> Self {
        Self { identity, params, discrepancy, pass: discrepancy <= tol }
    }

    /// A row for an exact identity: discrepancy is `|lhs − rhs|` of the roots of unity.
    fn exact(identity: &'static str, params: String, lhs: Option<u32>, rhs: Option<u32>, k: u32) -> Self {
        let val = |e: Option<u32>| e.map_or(Complex64::new(0.0, 0.0), |j| root_of_unity(j, k));
        let discrepancy = if lhs == rhs { 0.0 } else { (val(lhs) - val(rhs)).norm().max(f64::MIN_POSITIVE) };
        Self { identity, params, discrepancy, pass: lhs == rhs }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub order: Order,
    pub rows: Vec<Row>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn max_discrepancy(&self) -> f64 {
        self.rows.iter().map(|r| r.discrepancy).fold(0.0, f64::max)
    }

    /// Failures per identity name, in first-seen order.
    pub fn failures_by_identity(&self) -> Vec<(&'static str, usize, usize)> {
        let mut out: Vec<(&'static str, usize, usize)> = Vec::new();
        for r in &self.rows {
            match out.iter_mut().find(|(id, _, _)| *id == r.identity) {
                Some(e) => {
                    e.1 += 1;
                    e.2 += !r.pass as usize;
                }
                None => out.push((r.identity, 1, !r.pass as usize)),
            }
        }
        out
    }

    pub fn summary(&self) -> String {
        format!(
            "suite={} order={} instances={} failures={} max_discrepancy={:e} status={}",
            self.suite,
            self.order,
            self.rows.len(),
            self.failures(),
            self.max_discrepancy(),
            if self.passed() { "pass" } else { "fail" }
        )
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "identity,params,discrepancy,pass")?;
        for r in &self.rows {
            writeln!(w, "{},{},{:e},{}", r.identity, r.params, r.discrepancy, r.pass)?;
        }
        Ok(())
    }
}

/// Runs `suite` with its default ranges derived from `max_norm`.
pub fn run_suite(suite: Suite, order: Order, max_norm: u64) -> Result<SuiteReport> {
    let rows = match suite {
        Suite::Reciprocity => reciprocity(order, max_norm)?,
        Suite::GaussIdentities => gauss_identities(order, max_norm)?,
        Suite::TauRelations => tau_relations(order, max_norm)?,
        Suite::Poisson => poisson(order, max_norm, &[1.0, 2.5, 7.0])?,
        Suite::Bijection => bijection(order, max_norm, max_norm)?,
        Suite::Pv => polya_vinogradov(order, max_norm)?,
    };
    Ok(SuiteReport { suite, order, rows })
}

fn symbols<R: RingKind>(elems: &[QuadInt<R>]) -> Result<Vec<ResidueSymbol<R>>> {
    elems.par_iter().map(|&n| ResidueSymbol::new(n)).collect()
}

// ---------------------------------------------------------------------------
// reciprocity

/// Cubic or quartic reciprocity over all coprime primary pairs with norms
/// `≤ max_norm`; for order 4 also the supplement law, rational entries, `λ₀`,
/// the decomposition of `(q̄/q)₄`, and the coordinate congruences.
pub fn reciprocity(order: Order, max_norm: u64) -> Result<Vec<Row>> {
    match order {
        Order::Cubic => reciprocity_pairs::<Eisenstein>(max_norm),
        Order::Quartic => {
            let mut rows = reciprocity_pairs::<Gaussian>(max_norm)?;
            rows.extend(quartic_laws(max_norm)?);
            Ok(rows)
        }
    }
}

fn reciprocity_pairs<R: RingKind>(max_norm: u64) -> Result<Vec<Row>> {
    let prim: Vec<_> = primaries_up_to::<R>(max_norm).into_iter().filter(|q| !q.is_unit()).collect();
    let syms = symbols(&prim)?;
    let k = R::ORDER;
    let name = if k == 3 { "cubic-reciprocity" } else { "quartic-reciprocity" };
    let rows: Vec<Vec<Row>> = (0..prim.len())
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            let (m, nm) = (prim[i], prim[i].norm());
            for j in i + 1..prim.len() {
                let (n, nn) = (prim[j], prim[j].norm());
                let lhs = syms[j].exponent(m);
                let Some(lhs) = lhs else { continue };
                let rhs = syms[i].exponent(n).map(|e| {
                    let sign = if k == 4 { ((nm - 1) / 4 * ((nn - 1) / 4) % 2) as u32 * 2 } else { 0 };
                    (e + sign) % k
                });
                out.push(Row::exact(name, format!("m={m};n={n}"), Some(lhs), rhs, k));
            }
            out
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

fn quartic_laws(max_norm: u64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let prim: Vec<GaussInt> = primaries_up_to::<Gaussian>(max_norm);

    for &n in &prim {
        let lhs = crate::ring::residue_symbol(GaussInt::gen(), n)?;
        let rhs = Some(((1 - n.a).rem_euclid(8) / 2) as u32);
        rows.push(Row::exact("supplement-i", format!("n={n}"), lhs, rhs, 4));
    }

    for a in -50i64..=50 {
        if a % 2 == 0 {
            continue;
        }
        let (_, modulus) = make_primary(GaussInt::from_int(a))?;
        let sym = ResidueSymbol::new(modulus)?;
        for b in -50i64..=50 {
            if gcd_u64(a.unsigned_abs(), 2 * b.unsigned_abs()) != 1 {
                continue;
            }
            rows.push(Row::exact("rational-entry", format!("a={a};b={b}"), sym.exponent(GaussInt::from_int(b)), Some(0), 4));
        }
    }

    for &q in &prim {
        let s: i64 = if ((q.norm() - 1) / 4) % 2 == 0 { 1 } else { -1 };
        let ok = (q.a - s).rem_euclid(4) == 0 && (q.b - (1 - s)).rem_euclid(4) == 0;
        rows.push(Row::new("primary-congruence", format!("q={q}"), if ok { 0.0 } else { 1.0 }, 0.0));

        let base = lambda0(q)? as f64;
        let shifted = [GaussInt::new(16, 0), GaussInt::new(0, 16), GaussInt::new(-16, 32)]
            .into_iter()
            .map(|t| lambda0(q + t).map(|v| (v as f64 - base).abs()))
            .collect::<Result<Vec<_>>>()?;
        rows.push(Row::new("lambda0-mod16", format!("q={q}"), shifted.into_iter().fold(0.0, f64::max), 0.0));
    }

    // λ₀(q₁q₂) = λ₀(q₁)λ₀(q₂)·(−1)^((b₁/2)(b₂/2))
    let small: Vec<GaussInt> = prim.iter().copied().filter(|q| q.norm() <= max_norm.min(200)).collect();
    for &x in &small {
        for &y in &small {
            let twist = if (x.b / 2 * (y.b / 2)).rem_euclid(2) == 0 { 1 } else { -1 };
            let d = (lambda0(x * y)? - lambda0(x)? * lambda0(y)? * twist).abs() as f64;
            rows.push(Row::new("lambda0-product", format!("q1={x};q2={y}"), d, 0.0));
        }
    }

    // (q̄/q)₄ = (−2/q)₄·λ₀(q) for q free of rational prime divisors
    for &q in &prim {
        if q.is_unit() || factor_primary(q)?.has_rational_prime_divisor() {
            continue;
        }
        let sym = ResidueSymbol::new(q)?;
        let lhs = sym.exponent(q.conj());
        let shift = if lambda0(q)? == 1 { 0 } else { 2 };
        let rhs = sym.exponent(GaussInt::from_int(-2)).map(|e| (e + shift) % 4);
        rows.push(Row::exact("conj-decomposition", format!("q={q}"), lhs, rhs, 4));
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Gauss-sum identities

struct GaussTables<R: RingKind> {
    prim: Vec<QuadInt<R>>,
    index: HashMap<QuadInt<R>, usize>,
    ctx: Vec<GaussSumContext<R>>,
    sym: Vec<ResidueSymbol<R>>,
}

impl<R: RingKind> GaussTables<R> {
    fn new(max_norm: u64) -> Result<Self> {
        let prim = primaries_up_to::<R>(max_norm);
        let index = prim.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let ctx = prim.par_iter().map(|&q| GaussSumContext::new(q, u64::MAX)).collect::<Result<Vec<_>>>()?;
        let sym = symbols(&prim)?;
        Ok(Self { prim, index, ctx, sym })
    }

    fn get(&self, q: QuadInt<R>) -> usize {
        self.index[&q]
    }
}

fn close_row(identity: &'static str, params: String, lhs: Complex64, rhs: Complex64, norm: u64) -> Row {
    Row::new(identity, params, (lhs - rhs).norm(), GAUSS_TOL * (norm as f64).sqrt())
}

/// `|g(1, ϖ)| = √N(ϖ)`, gmult, gprod / g4prod, grnbound and `g(0, n)`.
pub fn gauss_identities(order: Order, max_norm: u64) -> Result<Vec<Row>> {
    match order {
        Order::Cubic => gauss_identities_in::<Eisenstein>(max_norm),
        Order::Quartic => gauss_identities_in::<Gaussian>(max_norm),
    }
}

fn gauss_identities_in<R: RingKind>(max_norm: u64) -> Result<Vec<Row>> {
    let t = GaussTables::<R>::new(max_norm)?;
    let k = R::ORDER;
    let mut rows = Vec::new();

    // modulus on primes
    for (i, &p) in t.prim.iter().enumerate() {
        let f = factor_primary(p)?;
        if f.factors.len() == 1 && f.factors[0].1 == 1 {
            let g = t.ctx[i].g(QuadInt::one());
            let n = p.norm();
            rows.push(Row::new("g-modulus", format!("p={p}"), (g.norm() - (n as f64).sqrt()).abs(), GAUSS_TOL * (n as f64).sqrt()));
        }
    }

    // g(rs, n) = conj((s/n))·g(r, n)
    let gmult: Vec<Vec<Row>> = t
        .prim
        .par_iter()
        .enumerate()
        .filter(|(_, n)| n.norm() <= max_norm.min(500))
        .map(|(i, &n)| {
            let ctx = &t.ctx[i];
            let mut out = Vec::new();
            for r in [QuadInt::one(), QuadInt::from_int(2)] {
                let g_r = ctx.g(r);
                for &s in &ctx.residues().representatives {
                    let Some(e) = t.sym[i].exponent(s) else { continue };
                    let lhs = ctx.g(r * s);
                    let rhs = root_of_unity((k - e) % k, k) * g_r;
                    out.push(close_row("gmult", format!("n={n};r={r};s={s}"), lhs, rhs, n.norm()));
                }
            }
            out
        })
        .collect();
    rows.extend(gmult.into_iter().flatten());

    // products over coprime pairs
    let name = if k == 3 { "gprod" } else { "g4prod" };
    let nonunits: Vec<usize> = (0..t.prim.len()).filter(|&i| !t.prim[i].is_unit()).collect();
    let prod: Vec<Vec<Row>> = nonunits
        .par_iter()
        .map(|&i| {
            let mut out = Vec::new();
            let n1 = t.prim[i];
            for &j in &nonunits {
                let n2 = t.prim[j];
                if j <= i || n1.norm() * n2.norm() > max_norm {
                    continue;
                }
                let (Some(e12), Some(e21)) = (t.sym[j].exponent(n1), t.sym[i].exponent(n2)) else { continue };
                let nn = n1 * n2;
                let c = &t.ctx[t.get(nn)];
                let factor = root_of_unity((e12 + e21) % k, k);
                for r in [QuadInt::zero(), QuadInt::one(), QuadInt::from_int(2), QuadInt::new(1, 1)] {
                    let lhs = c.g(r);
                    let rhs = factor * t.ctx[i].g(r) * t.ctx[j].g(r);
                    out.push(close_row(name, format!("n1={n1};n2={n2};r={r}"), lhs, rhs, nn.norm()));
                }
                if k == 4 {
                    // (n₂/n₁)(n₁/n₂) = (−1)^(((N₁−1)/4)((N₂−1)/4))·(n₁²/n₂)
                    let sign = ((n1.norm() - 1) / 4 * ((n2.norm() - 1) / 4) % 2) as u32 * 2;
                    let alt = t.sym[j].exponent(n1 * n1).map(|e| (e + sign) % 4);
                    out.push(Row::exact("g4prod-forms", format!("n1={n1};n2={n2}"), Some((e12 + e21) % 4), alt, 4));
                }
            }
            out
        })
        .collect();
    rows.extend(prod.into_iter().flatten());

    // squarefree n: g(r, n) = 0 unless (r, n) = 1, else |g(r, n)| ≤ √N(n)
    let bound: Vec<Vec<Row>> = t
        .prim
        .par_iter()
        .enumerate()
        .map(|(i, &n)| {
            let mut out = Vec::new();
            let f = factor_primary(n).expect("primary elements factor");
            if !f.is_squarefree() {
                return out;
            }
            let ctx = &t.ctx[i];
            let sqrt_n = (n.norm() as f64).sqrt();
            let tol = GAUSS_TOL * sqrt_n;
            let mut worst_zero = 0.0f64;
            let mut worst_bound = 0.0f64;
            for &r in &ctx.residues().representatives {
                let g = ctx.g(r);
                if t.sym[i].exponent(r).is_some() {
                    worst_bound = worst_bound.max(g.norm() - sqrt_n);
                } else {
                    worst_zero = worst_zero.max(g.norm());
                }
            }
            out.push(Row::new("grnbound-zero", format!("n={n}"), worst_zero, tol));
            out.push(Row::new("grnbound-size", format!("n={n}"), worst_bound.max(0.0), tol));
            out
        })
        .collect();
    rows.extend(bound.into_iter().flatten());

    // g(0, n) = φ(n)·[n a unit times a k-th power]
    for (i, &n) in t.prim.iter().enumerate() {
        if n.norm() > max_norm.min(1000) {
            continue;
        }
        let power = factor_primary(n)?.is_kth_power(k);
        let expected = if power { euler_phi(n)? as f64 } else { 0.0 };
        let g = t.ctx[i].g(QuadInt::zero());
        rows.push(Row::new("g-at-zero", format!("n={n}"), (g - Complex64::new(expected, 0.0)).norm(), 1e-9));
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// τ ↔ g

/// `τ(r, χ_q)` against `conj((√−3/q)₃)·g₃(r, q)` (order 3) or
/// `conj((−i/q)₄)·λ₀(q)·g₄(r, q)` (order 4), for admissible `n ≤ max_n`.
pub fn tau_relations(order: Order, max_n: u64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for n in admissible_moduli(max_n, order) {
        match order {
            Order::Cubic => {
                for q in enumerate_q::<Eisenstein>(n)? {
                    rows.extend(tau_rows(q, EisInt::new(1, 2), 1)?);
                }
            }
            Order::Quartic => {
                for q in enumerate_q::<Gaussian>(n)? {
                    rows.extend(tau_rows(q, GaussInt::new(0, -1), lambda0(q)?)?);
                }
            }
        }
    }
    Ok(rows)
}

fn tau_rows<R: crate::characters::FamilyRing>(q: QuadInt<R>, twist: QuadInt<R>, sign: i8) -> Result<Vec<Row>> {
    let chi = character_from_q(q)?;
    let ctx = GaussSumContext::new(q, u64::MAX)?;
    let k = R::ORDER;
    let e = ResidueSymbol::new(q)?.exponent(twist).ok_or_else(|| domain("twist shares a factor with q"))?;
    let factor = root_of_unity((k - e) % k, k) * sign as f64;
    let identity = if k == 3 { "tau-g3" } else { "tau-g4" };
    Ok((0..4)
        .map(|r| {
            let lhs = tau_char(r, &chi);
            let rhs = factor * ctx.g(QuadInt::from_int(r));
            Row::new(identity, format!("n={};q={q};r={r}", chi.modulus), (lhs - rhs).norm(), 1e-8)
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Poisson, bijection, Pólya–Vinogradov

/// Poisson summation with the Gaussian weight for every family character of
/// modulus `≤ max_n` (and the principal character mod 1), at each scale.
pub fn poisson(order: Order, max_n: u64, scales: &[f64]) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for n in admissible_moduli(max_n, order) {
        for (idx, chi) in character_family(n, order)?.iter().enumerate() {
            for &m in scales {
                let d = poisson_discrepancy(chi, m)?;
                rows.push(Row::new("poisson", format!("n={n};chi={idx};M={m}"), d, 1e-8));
            }
        }
    }
    Ok(rows)
}

fn sorted_values(tables: &[CharacterTable]) -> Vec<Vec<Option<u8>>> {
    let mut v: Vec<_> = tables.iter().map(|t| t.values().to_vec()).collect();
    v.sort();
    v
}

/// Family tables against the discrete-log construction at admissible primes
/// `p ≤ prime_limit`, and `|S_n| = 2^ω(n)` for admissible `n ≤ size_limit`.
pub fn bijection(order: Order, prime_limit: u64, size_limit: u64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let k = order.value() as u64;
    for p in (2..=prime_limit).filter(|&p| p % k == 1 && is_prime(p)) {
        let fam = sorted_values(&character_family(p, order)?);
        let dlog = sorted_values(&primitive_chars_dlog(p, order)?);
        rows.push(Row::new("bijection", format!("p={p}"), if fam == dlog { 0.0 } else { 1.0 }, 0.0));
    }
    let sizes: Vec<Row> = admissible_moduli(size_limit, order)
        .par_iter()
        .map(|&n| {
            let omega = crate::arith::factorize(n)?.len() as u32;
            let got = enumerate_q_count(n, order)?;
            let d = (got as f64 - (1u64 << omega) as f64).abs();
            Ok(Row::new("family-size", format!("n={n}"), d, 0.0))
        })
        .collect::<Result<_>>()?;
    rows.extend(sizes);
    Ok(rows)
}

fn enumerate_q_count(n: u64, order: Order) -> Result<usize> {
    Ok(match order {
        Order::Cubic => enumerate_q::<Eisenstein>(n)?.len(),
        Order::Quartic => enumerate_q::<Gaussian>(n)?.len(),
    })
}

/// `max |Σ_{M<m≤M+N} χ(m)| ≤ √n·ln n + 1` for every non-principal family
/// character with admissible modulus `n ≤ max_n`.
pub fn polya_vinogradov(order: Order, max_n: u64) -> Result<Vec<Row>> {
    let moduli: Vec<u64> = admissible_moduli(max_n, order).into_iter().filter(|&n| n > 1).collect();
    let rows: Vec<Vec<Row>> = moduli
        .par_iter()
        .map(|&n| {
            let mut out = Vec::new();
            let bound = polya_vinogradov_bound(n);
            for (idx, chi) in character_family(n, order)?.iter().enumerate() {
                if chi.is_principal() {
                    continue;
                }
                let m = max_window_sum(chi)?;
                out.push(Row::new("polya-vinogradov", format!("n={n};chi={idx}"), (m - bound).max(0.0), 0.0));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

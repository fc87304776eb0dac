//! Prime-set specifications `𝒫` and evaluation of `P(z)`, `Λ(w)` and the
//! occurrence series `Occ_{G,𝒫}(z)`.
//!
//! A class stores one representative per isomorphism class together with its
//! number of distinct labelings, which realizes closure under relabeling
//! without listing labelings. `Occ_{G,𝒫}(z) = Σ_H Occ_G(H)·z^{|H|−|G|}/|H|!`
//! uses the labeled-equality occurrence count ([`crate::graph::occ_count_exact`]);
//! summed over all labeled patterns `G` of size `k` it reproduces `P⁽ᵏ⁾(z)`.

use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{are_isomorphic, automorphism_count, occ_count_exact, LabeledGraph};

/// One isomorphism class of primes: a representative and how many distinct
/// labelings it has (`k!/|Aut|`).
#[derive(Clone, Debug)]
pub struct PrimeRep {
    pub graph: LabeledGraph,
    pub labelings: BigUint,
}

#[derive(Clone)]
pub enum PrimeClassKind {
    /// Finitely many primes, closed under relabeling.
    FiniteExplicit(Vec<PrimeRep>),
    /// All paths with at least 4 vertices: `P(z) = z⁴ / (2(1−z))`.
    BuiltinPaths,
    /// Code-level class given by count and occurrence providers.
    Custom(CustomClass),
}

/// Providers for a custom class. `occ_sum(G, n)` must return
/// `Σ_{H∈𝒫_n} Occ_G(H)` in the labeled-equality convention.
#[derive(Clone)]
pub struct CustomClass {
    pub r0: f64,
    pub count: Arc<dyn Fn(usize) -> BigUint + Send + Sync>,
    pub occ_sum: Arc<dyn Fn(&LabeledGraph, usize) -> BigUint + Send + Sync>,
    pub member: Arc<dyn Fn(&LabeledGraph) -> bool + Send + Sync>,
}

#[derive(Clone)]
pub struct PrimeClass {
    kind: PrimeClassKind,
}

/// Hard cap on truncation orders for infinite-class evaluations; reaching it
/// without a certified tail is reported as a truncation error.
const MAX_TRUNCATION_ORDER: usize = 4000;

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

impl PrimeClass {
    /// The empty class (cographs).
    pub fn empty() -> Self {
        PrimeClass {
            kind: PrimeClassKind::FiniteExplicit(Vec::new()),
        }
    }

    /// Finite class from explicit prime graphs; duplicates (up to
    /// isomorphism) are merged.
    pub fn finite(graphs: Vec<LabeledGraph>) -> Result<Self> {
        let mut reps: Vec<PrimeRep> = Vec::new();
        for g in graphs {
            if !g.is_prime() {
                return Err(Error::contract(format!("{g:?} is not prime")));
            }
            if reps.iter().any(|r| are_isomorphic(&r.graph, &g)) {
                continue;
            }
            let labelings = factorial(g.size()) / BigUint::from(automorphism_count(&g));
            reps.push(PrimeRep {
                graph: g,
                labelings,
            });
        }
        Ok(PrimeClass {
            kind: PrimeClassKind::FiniteExplicit(reps),
        })
    }

    /// The class `{P4}` (one prime, 12 labelings).
    pub fn p4() -> Self {
        Self::finite(vec![LabeledGraph::path(4)]).unwrap()
    }

    pub fn paths() -> Self {
        PrimeClass {
            kind: PrimeClassKind::BuiltinPaths,
        }
    }

    pub fn custom(c: CustomClass) -> Self {
        PrimeClass {
            kind: PrimeClassKind::Custom(c),
        }
    }

    pub fn kind(&self) -> &PrimeClassKind {
        &self.kind
    }

    /// Radius of convergence of `P` (`+∞` for finite classes).
    pub fn r0(&self) -> f64 {
        match &self.kind {
            PrimeClassKind::FiniteExplicit(_) => f64::INFINITY,
            PrimeClassKind::BuiltinPaths => 1.0,
            PrimeClassKind::Custom(c) => c.r0,
        }
    }

    /// Largest prime size, when the class is finite.
    pub fn max_prime_size(&self) -> Option<usize> {
        match &self.kind {
            PrimeClassKind::FiniteExplicit(reps) => {
                Some(reps.iter().map(|r| r.graph.size()).max().unwrap_or(0))
            }
            _ => None,
        }
    }

    /// `|𝒫_n|`: number of labeled primes of size `n` in the class.
    pub fn class_count(&self, n: usize) -> BigUint {
        match &self.kind {
            PrimeClassKind::FiniteExplicit(reps) => reps
                .iter()
                .filter(|r| r.graph.size() == n)
                .map(|r| r.labelings.clone())
                .sum(),
            PrimeClassKind::BuiltinPaths => {
                if n >= 4 {
                    factorial(n) / BigUint::from(2u32)
                } else {
                    BigUint::zero()
                }
            }
            PrimeClassKind::Custom(c) => (c.count)(n),
        }
    }

    /// `[zⁿ] P(z) = |𝒫_n| / n!` as an exact rational.
    pub fn p_coeff(&self, n: usize) -> BigRational {
        BigRational::new(self.class_count(n).into(), factorial(n).into())
    }

    /// Membership of a labeled graph in `𝒫`.
    pub fn contains(&self, g: &LabeledGraph) -> bool {
        match &self.kind {
            PrimeClassKind::FiniteExplicit(reps) => {
                reps.iter().any(|r| are_isomorphic(&r.graph, g))
            }
            PrimeClassKind::BuiltinPaths => is_path_graph(g) && g.size() >= 4,
            PrimeClassKind::Custom(c) => (c.member)(g),
        }
    }

    /// `Σ_{H∈𝒫_n} Occ_G(H)` (labeled-equality occurrences).
    pub fn occ_sum_exact(&self, g: &LabeledGraph, n: usize) -> BigUint {
        match &self.kind {
            PrimeClassKind::FiniteExplicit(reps) => reps
                .iter()
                .filter(|r| r.graph.size() == n)
                .map(|r| r.labelings.clone() * BigUint::from(occ_count_exact(g, &r.graph)))
                .sum(),
            PrimeClassKind::BuiltinPaths => {
                if n < 4 || g.size() > n {
                    return BigUint::zero();
                }
                // Σ_H Occ_G(H) = (n!/2) · |Aut(G)| · #subsets of a path
                // inducing G. A subset of a path induces a disjoint union of
                // paths whose sizes are the run lengths, so the subset count
                // is a composition count.
                match path_subset_count(g, n) {
                    Some(subsets) => {
                        (factorial(n) / BigUint::from(2u32))
                            * BigUint::from(automorphism_count(g))
                            * subsets
                    }
                    None => BigUint::zero(),
                }
            }
            PrimeClassKind::Custom(c) => (c.occ_sum)(g, n),
        }
    }

    /// Exact coefficients of `Occ_{G,𝒫}(z)` up to the given order
    /// (coefficient of `z^m` is `Σ_{H∈𝒫_{m+|G|}} Occ_G(H) / (m+|G|)!`).
    pub fn occ_series_coeffs(&self, g: &LabeledGraph, order: usize) -> Vec<BigRational> {
        (0..=order)
            .map(|m| {
                let n = m + g.size();
                BigRational::new(self.occ_sum_exact(g, n).into(), factorial(n).into())
            })
            .collect()
    }

    /// Evaluates `P(x)`, `P′(x)` or `P″(x)` to absolute accuracy `tol`.
    pub fn p_eval(&self, x: f64, order: u8, tol: f64) -> Result<f64> {
        assert!(order <= 2, "only derivatives 0..=2 are provided");
        if x < 0.0 {
            return Err(Error::contract("nonnegative evaluation points only"));
        }
        match &self.kind {
            PrimeClassKind::FiniteExplicit(reps) => {
                let mut acc = 0.0;
                for r in reps {
                    let k = r.graph.size();
                    let c = BigRational::new(r.labelings.clone().into(), factorial(k).into())
                        .to_f64()
                        .unwrap();
                    acc += match order {
                        0 => c * x.powi(k as i32),
                        1 => c * k as f64 * x.powi(k as i32 - 1),
                        _ => c * (k * (k - 1)) as f64 * x.powi(k as i32 - 2),
                    };
                }
                Ok(acc)
            }
            PrimeClassKind::BuiltinPaths => {
                if x >= 1.0 {
                    return Err(Error::Divergence(format!(
                        "P is singular at 1, got x = {x}"
                    )));
                }
                let u = 1.0 - x;
                Ok(match order {
                    0 => x.powi(4) / (2.0 * u),
                    1 => 2.0 * x.powi(3) / u + x.powi(4) / (2.0 * u * u),
                    _ => 6.0 * x.powi(2) / u + 4.0 * x.powi(3) / (u * u) + x.powi(4) / (u * u * u),
                })
            }
            PrimeClassKind::Custom(c) => {
                if x >= c.r0 {
                    return Err(Error::Divergence(format!(
                        "x = {x} is not below r0 = {}",
                        c.r0
                    )));
                }
                truncated_sum(tol, |n| {
                    if n < order as usize {
                        return 0.0;
                    }
                    let coeff = BigRational::new((c.count)(n).into(), factorial(n).into())
                        .to_f64()
                        .unwrap();
                    let falling: f64 = (0..order as usize).map(|i| (n - i) as f64).product();
                    coeff * falling * x.powi(n as i32 - order as i32)
                })
            }
        }
    }

    /// `Λ(w) = P(e^w − 1) + e^w − 1 − w` and its first two derivatives, to
    /// absolute accuracy `tol`.
    pub fn lambda_eval(&self, w: f64, order: u8, tol: f64) -> Result<f64> {
        assert!(order <= 2);
        if w < 0.0 {
            return Err(Error::contract("nonnegative evaluation points only"));
        }
        let x = w.exp_m1();
        if x >= self.r0() {
            return Err(Error::Divergence(format!(
                "w = {w} is not below log(1+r0) = {}",
                (1.0 + self.r0()).ln()
            )));
        }
        let ew = w.exp();
        Ok(match order {
            0 => self.p_eval(x, 0, tol)? + x - w,
            1 => (self.p_eval(x, 1, tol)? + 1.0) * ew - 1.0,
            _ => (self.p_eval(x, 1, tol)? + 1.0) * ew + ew * ew * self.p_eval(x, 2, tol)?,
        })
    }

    /// `Occ_{G,𝒫}(x)` within `tol`. Requires `x` strictly below the radius
    /// of the occurrence series (at least `r0`).
    pub fn occ_series_eval(&self, g: &LabeledGraph, x: f64, tol: f64) -> Result<f64> {
        if x < 0.0 {
            return Err(Error::contract("nonnegative evaluation points only"));
        }
        let gs = g.size();
        match &self.kind {
            PrimeClassKind::FiniteExplicit(reps) => {
                let sizes: std::collections::BTreeSet<usize> =
                    reps.iter().map(|r| r.graph.size()).collect();
                let mut acc = 0.0;
                for n in sizes {
                    if n < gs {
                        continue;
                    }
                    let c = BigRational::new(self.occ_sum_exact(g, n).into(), factorial(n).into())
                        .to_f64()
                        .unwrap();
                    acc += c * x.powi((n - gs) as i32);
                }
                Ok(acc)
            }
            _ => {
                if x >= self.r0() {
                    return Err(Error::Divergence(format!(
                        "x = {x} is not below the occurrence-series radius (≥ r0 = {})",
                        self.r0()
                    )));
                }
                truncated_sum(tol, |n| {
                    if n < gs || n < 4 {
                        return 0.0;
                    }
                    let c = BigRational::new(self.occ_sum_exact(g, n).into(), factorial(n).into())
                        .to_f64()
                        .unwrap();
                    c * x.powi((n - gs) as i32)
                })
            }
        }
    }

    /// Structural form of `Occ_{g,𝒫}(w)` for series composition.
    ///
    /// Finite classes give polynomials. For the path family the coefficient
    /// in the size parameter is eventually a degree-`r` polynomial (`r` =
    /// number of path components of `g`), so the series is a polynomial over
    /// `(1−w)^{r+1}`; the numerator is computed exactly and verified.
    pub fn occ_series_form(&self, g: &LabeledGraph, order: usize) -> OccSeriesForm {
        let gs = g.size();
        match &self.kind {
            PrimeClassKind::FiniteExplicit(reps) => {
                let sizes: std::collections::BTreeSet<usize> =
                    reps.iter().map(|r| r.graph.size()).collect();
                let terms = sizes
                    .into_iter()
                    .filter(|&n| n >= gs)
                    .map(|n| {
                        (
                            n - gs,
                            BigRational::new(self.occ_sum_exact(g, n).into(), factorial(n).into()),
                        )
                    })
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                OccSeriesForm::Polynomial(terms)
            }
            PrimeClassKind::BuiltinPaths => {
                let comps = g.components_within(&(1..=gs as u32).collect::<Vec<_>>());
                if comps.iter().any(|c| !is_path_graph(&g.induced_by(c))) || gs == 0 {
                    return OccSeriesForm::Polynomial(Vec::new());
                }
                let r = comps.len();
                let m0 = 4usize.saturating_sub(gs);
                let d = m0 + r + 6;
                let coeffs = self.occ_series_coeffs(g, d);
                // numerator = coeffs · (1−w)^{r+1}, which terminates
                let mut numerator = vec![BigRational::zero(); d + 1];
                let mut binom_signed: Vec<BigRational> = Vec::with_capacity(r + 2);
                for j in 0..=r + 1 {
                    let b = num_bigint::BigInt::from(binomial(r + 1, j));
                    let sign: num_bigint::BigInt = if j % 2 == 0 { 1.into() } else { (-1).into() };
                    binom_signed.push(BigRational::from_integer(sign * b));
                }
                for (i, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (j, b) in binom_signed.iter().enumerate() {
                        if i + j <= d {
                            numerator[i + j] += c * b;
                        }
                    }
                }
                let tail_zero = numerator[m0 + r + 2..].iter().all(|c| c.is_zero());
                debug_assert!(tail_zero, "path occurrence numerator did not terminate");
                if !tail_zero {
                    return OccSeriesForm::Dense(self.occ_series_coeffs(g, order));
                }
                numerator.truncate(m0 + r + 2);
                while numerator.len() > 1 && numerator.last().map_or(false, Zero::is_zero) {
                    numerator.pop();
                }
                OccSeriesForm::RationalPole {
                    numerator,
                    pole_order: r + 1,
                }
            }
            PrimeClassKind::Custom(_) => OccSeriesForm::Dense(self.occ_series_coeffs(g, order)),
        }
    }

    /// Checks Condition (C): `r0 > 0` and `Λ′(log(1+r0)⁻) > 1`.
    pub fn check_condition_c(&self) -> ConditionCReport {
        let r0 = self.r0();
        if !(r0 > 0.0) {
            return ConditionCReport {
                holds: false,
                r0,
                lambda_limit: f64::NAN,
                failed: Some("r0 > 0"),
                kappa_bracket: None,
            };
        }
        let w_max = if r0.is_infinite() {
            f64::INFINITY
        } else {
            (1.0 + r0).ln()
        };
        // Λ′ is nondecreasing with Λ′(0) = 0; probe toward w_max until the
        // value passes 1 or the probes settle.
        let tol = 1e-12;
        let mut lo = 0.0f64;
        let mut last = 0.0f64;
        for k in 1..=64 {
            let w = if w_max.is_infinite() {
                k as f64
            } else {
                w_max * (1.0 - 0.5f64.powi(k))
            };
            match self.lambda_eval(w, 1, tol) {
                Ok(v) => {
                    if v > 1.0 {
                        return ConditionCReport {
                            holds: true,
                            r0,
                            lambda_limit: if k == 64 { v } else { f64::INFINITY },
                            failed: None,
                            kappa_bracket: Some((lo, w)),
                        };
                    }
                    last = v;
                    lo = w;
                }
                Err(_) => break,
            }
        }
        ConditionCReport {
            holds: false,
            r0,
            lambda_limit: last,
            failed: Some("Λ′(log(1+r0)) > 1"),
            kappa_bracket: None,
        }
    }
}

/// Structural form of an occurrence series, as used for composition.
#[derive(Clone, Debug)]
pub enum OccSeriesForm {
    /// Finitely many terms `(m, coefficient of w^m)`.
    Polynomial(Vec<(usize, BigRational)>),
    /// `numerator(w) / (1−w)^pole_order`.
    RationalPole {
        numerator: Vec<BigRational>,
        pole_order: usize,
    },
    /// Dense coefficients up to the requested order.
    Dense(Vec<BigRational>),
}

/// Diagnostic result of the Condition (C) check.
#[derive(Clone, Debug)]
pub struct ConditionCReport {
    pub holds: bool,
    pub r0: f64,
    /// `Λ′` at the right end of the bracket (`+∞` once it passes 1 strictly
    /// inside the disk).
    pub lambda_limit: f64,
    /// Which clause failed, when `holds` is false.
    pub failed: Option<&'static str>,
    /// Interval containing the unique root `κ` of `Λ′(κ) = 1`.
    pub kappa_bracket: Option<(f64, f64)>,
}

/// Sums `term(n)` for `n = 0, 1, …` until a geometric tail estimate with a
/// safety factor of 10 certifies absolute accuracy `tol`.
fn truncated_sum(tol: f64, term: impl Fn(usize) -> f64) -> Result<f64> {
    let mut acc = 0.0;
    let mut prev = f64::NAN;
    let mut calm = 0;
    for n in 0..MAX_TRUNCATION_ORDER {
        let t = term(n);
        acc += t;
        if n > 8 {
            let ratio = if prev != 0.0 { (t / prev).abs() } else { 0.0 };
            if t.abs() > 0.0 && ratio < 0.9 {
                let tail = 10.0 * t.abs() * ratio / (1.0 - ratio);
                if tail < tol {
                    calm += 1;
                    if calm >= 3 {
                        return Ok(acc);
                    }
                } else {
                    calm = 0;
                }
            } else if t == 0.0 && prev == 0.0 {
                calm += 1;
                if calm >= 8 {
                    return Ok(acc);
                }
            } else {
                calm = 0;
            }
        }
        prev = t;
    }
    Err(Error::Truncation(format!(
        "tail estimate not contracting below {tol} within {MAX_TRUNCATION_ORDER} terms"
    )))
}

/// True iff `g` is a path (of any size ≥ 1).
pub fn is_path_graph(g: &LabeledGraph) -> bool {
    let n = g.size();
    if n == 0 {
        return false;
    }
    g.is_connected() && g.edge_count() == n - 1 && (1..=n as u32).all(|v| g.degree(v) <= 2)
}

/// Number of vertex subsets of the path on `n` vertices that induce a graph
/// isomorphic to `g`, or `None` if `g` is not a disjoint union of paths.
/// Runs of consecutive chosen vertices give the path components, so the
/// count is `(r!/Π mult_λ!) · C(n−s+1, r)` over the run-length multiset.
fn path_subset_count(g: &LabeledGraph, n: usize) -> Option<BigUint> {
    let comps = g.components_within(&(1..=g.size() as u32).collect::<Vec<_>>());
    let mut lens: Vec<usize> = Vec::with_capacity(comps.len());
    for c in &comps {
        if !is_path_graph(&g.induced_by(c)) {
            return None;
        }
        lens.push(c.len());
    }
    let s: usize = lens.iter().sum();
    let r = lens.len();
    if s > n {
        return Some(BigUint::zero());
    }
    lens.sort_unstable();
    let mut arrangements = factorial(r);
    let mut run = 1;
    for i in 1..=r {
        if i < r && lens[i] == lens[i - 1] {
            run += 1;
        } else {
            arrangements /= factorial(run);
            run = 1;
        }
    }
    Some(arrangements * binomial(n - s + 1, r))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::iso_subset_count;

    #[test]
    fn class_counts() {
        assert_eq!(PrimeClass::paths().class_count(5), BigUint::from(60u32));
        assert_eq!(PrimeClass::p4().class_count(4), BigUint::from(12u32));
        for class in [PrimeClass::empty(), PrimeClass::p4(), PrimeClass::paths()] {
            assert_eq!(class.class_count(3), BigUint::zero());
        }
    }

    #[test]
    fn finite_rejects_non_prime() {
        assert!(PrimeClass::finite(vec![LabeledGraph::cycle(4)]).is_err());
        assert!(PrimeClass::finite(vec![LabeledGraph::complete(2)]).is_err());
    }

    #[test]
    fn lambda_closed_forms_for_empty_class() {
        let c = PrimeClass::empty();
        // Λ(w) = e^w − 1 − w
        assert!((c.lambda_eval(0.0, 0, 1e-12).unwrap() - 0.0).abs() < 1e-15);
        let w = std::f64::consts::LN_2;
        assert!((c.lambda_eval(w, 1, 1e-12).unwrap() - 1.0).abs() < 1e-12);
        assert!((c.lambda_eval(w, 2, 1e-12).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn lambda_is_increasing_in_w() {
        for class in [PrimeClass::p4(), PrimeClass::paths()] {
            let mut prev = -1.0;
            for i in 1..20 {
                let w = 0.03 * i as f64;
                let v = class.lambda_eval(w, 1, 1e-12).unwrap();
                assert!(v > prev);
                prev = v;
            }
        }
    }

    #[test]
    fn condition_c_cases() {
        assert!(PrimeClass::empty().check_condition_c().holds);
        assert!(PrimeClass::p4().check_condition_c().holds);
        let paths = PrimeClass::paths().check_condition_c();
        assert!(paths.holds);
        assert!(paths.lambda_limit.is_infinite());
        let dead = PrimeClass::custom(CustomClass {
            r0: 0.0,
            count: Arc::new(|_| BigUint::zero()),
            occ_sum: Arc::new(|_, _| BigUint::zero()),
            member: Arc::new(|_| false),
        });
        let rep = dead.check_condition_c();
        assert!(!rep.holds);
        assert_eq!(rep.failed, Some("r0 > 0"));
    }

    #[test]
    fn occ_series_examples() {
        let k2 = LabeledGraph::complete(2);
        // empty class → identically zero
        assert_eq!(
            PrimeClass::empty()
                .occ_series_eval(&k2, 0.7, 1e-12)
                .unwrap(),
            0.0
        );
        // {P4}: Occ_{K2,𝒫}(z) = 12·6·z²/4! = 3z² (12 labelings of P4, each
        // with 6 edge injections).
        let p4 = PrimeClass::p4();
        assert_eq!(p4.occ_sum_exact(&k2, 4), BigUint::from(72u32));
        assert!((p4.occ_series_eval(&k2, 0.0, 1e-12).unwrap() - 0.0).abs() < 1e-15);
        assert!((p4.occ_series_eval(&k2, 1.0, 1e-12).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn occ_plus_occ_minus_equals_p_second_derivative() {
        // coefficientwise Occ_{⊕₂} + Occ_{⊖₂} = P″ up to order 10
        let k2 = LabeledGraph::complete(2);
        let e2 = LabeledGraph::empty(2);
        for class in [PrimeClass::p4(), PrimeClass::paths()] {
            let a = class.occ_series_coeffs(&k2, 10);
            let b = class.occ_series_coeffs(&e2, 10);
            for m in 0..=10usize {
                // [z^m] P″ = (m+2)(m+1)·[z^{m+2}] P
                let expect =
                    class.p_coeff(m + 2) * BigRational::from_integer(((m + 2) * (m + 1)).into());
                assert_eq!(&a[m] + &b[m], expect, "m={m}");
            }
        }
    }

    #[test]
    fn paths_occ_matches_subset_oracle() {
        // run-length closed form vs direct subset enumeration on P_n
        let pats = [
            LabeledGraph::complete(2),
            LabeledGraph::empty(2),
            LabeledGraph::path(3),
            LabeledGraph::path(4),
            LabeledGraph::from_edges(3, &[(1, 2)]).unwrap(),
            LabeledGraph::complete(3),
            LabeledGraph::from_edges(5, &[(1, 2), (3, 4)]).unwrap(),
        ];
        for n in 4..=12usize {
            let host = LabeledGraph::path(n);
            for g in &pats {
                let direct = BigUint::from(iso_subset_count(g, &host));
                let formula = path_subset_count(g, n).unwrap_or_default();
                assert_eq!(formula, direct, "pattern {g:?} in P{n}");
            }
        }
    }

    #[test]
    fn paths_membership() {
        let paths = PrimeClass::paths();
        assert!(paths.contains(&LabeledGraph::path(4)));
        assert!(paths.contains(&LabeledGraph::path(7)));
        assert!(!paths.contains(&LabeledGraph::path(3)));
        assert!(!paths.contains(&LabeledGraph::cycle(5)));
        assert!(!paths.contains(&LabeledGraph::complete(2)));
        assert!(PrimeClass::p4().contains(&LabeledGraph::path(4)));
        assert!(!PrimeClass::empty().contains(&LabeledGraph::path(4)));
    }

    #[test]
    fn finite_class_count_invariant_under_representative_labeling() {
        // storing a different labeling of P4 gives the same counts
        let alt = LabeledGraph::from_edges(4, &[(2, 4), (4, 1), (1, 3)]).unwrap();
        let c1 = PrimeClass::p4();
        let c2 = PrimeClass::finite(vec![alt]).unwrap();
        assert_eq!(c1.class_count(4), c2.class_count(4));
        let k2 = LabeledGraph::complete(2);
        assert_eq!(c1.occ_sum_exact(&k2, 4), c2.occ_sum_exact(&k2, 4));
    }
}

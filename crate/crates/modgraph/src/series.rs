//! Exact truncated exponential generating series and the tree-series system:
//! `T_not⊕`, `T`, the blossomed series and `T_{τ,𝔑}`.
//!
//! Coefficients are exact rationals in the EGF convention: the number of
//! size-`n` objects is `n!·[zⁿ]F`. `T_not⊕` is the unique series with
//! `T_not⊕ = z + P(exp(T_not⊕)−1) + exp(T_not⊕) − 1 − T_not⊕` and zero
//! constant term; `T = exp(T_not⊕) − 1`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mdtree::{Decoration, SubstitutionTree};
use crate::prime::{factorial, OccSeriesForm, PrimeClass, PrimeClassKind};

/// Truncated power series with exact rational coefficients; index = degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl ExactSeries {
    pub fn zero(order: usize) -> Self {
        ExactSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z`.
    pub fn z(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        ExactSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `z^i` (zero beyond the truncation order).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        ExactSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// `n!·[zⁿ]`, which must be an integer for counting series.
    pub fn count(&self, n: usize) -> BigInt {
        let v = self.coeff(n) * BigRational::from_integer(BigInt::from(factorial(n)));
        assert!(v.is_integer(), "coefficient {n} is not a count");
        v.to_integer()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
            .collect();
        ExactSeries { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
            .collect();
        ExactSeries { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        ExactSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        ExactSeries { coeffs }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(BigRational::one(), self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal derivative; the order drops by one.
    pub fn derive(&self) -> Self {
        assert!(self.order() >= 1);
        let coeffs = (1..self.coeffs.len())
            .map(|i| &self.coeffs[i] * rat(i as i64))
            .collect();
        ExactSeries { coeffs }
    }

    /// `exp` of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::contract("exp needs zero constant term"));
        }
        let order = self.order();
        let mut out = vec![BigRational::zero(); order + 1];
        out[0] = BigRational::one();
        for n in 1..=order {
            let mut s = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    s += &self.coeffs[k] * rat(k as i64) * &out[n - k];
                }
            }
            out[n] = s / rat(n as i64);
        }
        Ok(ExactSeries { coeffs: out })
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn inv(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::contract("inverse needs nonzero constant term"));
        }
        let order = self.order();
        let c0 = self.coeffs[0].recip();
        let mut out = vec![BigRational::zero(); order + 1];
        out[0] = c0.clone();
        for n in 1..=order {
            let mut s = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    s += &self.coeffs[k] * &out[n - k];
                }
            }
            out[n] = -s * &c0;
        }
        Ok(ExactSeries { coeffs: out })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self
            .truncated(self.order().min(rhs.order()))
            .mul(&rhs.inv()?))
    }

    /// Composition `self(inner)` for `inner` with zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::contract(
                "composition needs inner constant term zero",
            ));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncated(order);
        // Horner from the top coefficient down
        let mut acc = Self::constant(self.coeff(order), order);
        for i in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += self.coeff(i);
        }
        Ok(acc)
    }

    /// Multiplication by `z^m`; the result keeps all known coefficients, so
    /// its order grows by `m`.
    pub fn shift_up(&self, m: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        ExactSeries { coeffs }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn is_all_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

/// The solved series of a class, all truncated to the same order.
#[derive(Clone, Debug)]
pub struct SeriesBundle {
    pub order: usize,
    /// `T`: all trees.
    pub t: ExactSeries,
    /// `T_not⊕` (= `T_not⊖`).
    pub t_not_join: ExactSeries,
    /// `T^⊕`: one ⊕-replaceable blossom; constant term 1.
    pub blo_join: ExactSeries,
    /// `T_not⊕^⊕`: constant term 0.
    pub blo_not_join_join: ExactSeries,
    /// `T_not⊕^⊖`: constant term 1.
    pub blo_not_join_union: ExactSeries,
    /// `T^blo = T′`.
    pub blo: ExactSeries,
    /// `T_not⊕^blo = T_not⊕′`.
    pub blo_not_join: ExactSeries,
}

/// Incremental evaluation of `P(E)` while `E` is being solved degree by
/// degree; `coeff_at(n, e)` may use `e[1..n]` only, which is sound because
/// `P` has valuation ≥ 4 in `z`.
enum PEval {
    Zero,
    /// Finitely many terms `p_k·E^k`; keeps every power up to the largest.
    Poly {
        terms: Vec<(usize, BigRational)>,
        powers: Vec<Vec<BigRational>>,
    },
    /// Paths: `Q = E⁴/2 + E·Q`.
    Paths {
        e2: Vec<BigRational>,
        e4: Vec<BigRational>,
        q: Vec<BigRational>,
    },
}

impl PEval {
    fn new(class: &PrimeClass, order: usize) -> Result<Self> {
        match class.kind() {
            PrimeClassKind::FiniteExplicit(reps) => {
                let sizes: BTreeSet<usize> = reps.iter().map(|r| r.graph.size()).collect();
                if sizes.is_empty() {
                    return Ok(PEval::Zero);
                }
                let kmax = *sizes.iter().max().unwrap();
                let terms: Vec<(usize, BigRational)> =
                    sizes.iter().map(|&k| (k, class.p_coeff(k))).collect();
                let powers = vec![vec![BigRational::zero()]; kmax + 1];
                Ok(PEval::Poly { terms, powers })
            }
            PrimeClassKind::BuiltinPaths => Ok(PEval::Paths {
                e2: vec![BigRational::zero()],
                e4: vec![BigRational::zero()],
                q: vec![BigRational::zero()],
            }),
            PrimeClassKind::Custom(_) => {
                // dense polynomial truncation of P up to the working order
                let terms: Vec<(usize, BigRational)> = (4..=order)
                    .map(|k| (k, class.p_coeff(k)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                for k in 0..4.min(order + 1) {
                    if !class.p_coeff(k).is_zero() {
                        return Err(Error::contract("prime classes start at size 4"));
                    }
                }
                if terms.is_empty() {
                    return Ok(PEval::Zero);
                }
                let kmax = terms.iter().map(|t| t.0).max().unwrap();
                let powers = vec![vec![BigRational::zero()]; kmax + 1];
                Ok(PEval::Poly { terms, powers })
            }
        }
    }

    /// `[zⁿ] P(E)` given `e[0..n]` (the degree-`n` coefficient of `E` is not
    /// needed since every contributing power of `E` is at least quadratic).
    fn coeff_at(&mut self, n: usize, e: &[BigRational]) -> BigRational {
        let conv = |a: &[BigRational], b: &[BigRational], n: usize| {
            let mut s = BigRational::zero();
            for i in 1..n {
                if i < a.len() && n - i < b.len() && !a[i].is_zero() && !b[n - i].is_zero() {
                    s += &a[i] * &b[n - i];
                }
            }
            s
        };
        match self {
            PEval::Zero => BigRational::zero(),
            PEval::Poly { terms, powers } => {
                // extend E^j to degree n for every kept power
                let kmax = powers.len() - 1;
                for j in 2..=kmax {
                    let v = if j == 2 {
                        conv(e, e, n)
                    } else {
                        let (lo, hi) = powers.split_at(j);
                        let _ = hi;
                        conv(e, &lo[j - 1], n)
                    };
                    debug_assert_eq!(powers[j].len(), n);
                    powers[j].push(v);
                }
                let mut out = BigRational::zero();
                for (k, pk) in terms {
                    if *k >= 2 {
                        out += &*pk * &powers[*k][n];
                    }
                }
                out
            }
            PEval::Paths { e2, e4, q } => {
                let v2 = conv(e, e, n);
                e2.push(v2);
                let v4 = conv(e2, e2, n);
                e4.push(v4);
                let mut qn = &e4[n] / rat(2);
                qn += conv(e, q, n);
                q.push(qn.clone());
                qn
            }
        }
    }
}

/// Solves the class's tree series to the requested order.
///
/// `T_not⊕` is found degree by degree from the fixed point together with
/// `E = exp(T_not⊕) − 1 = T`, then the blossomed series follow from
/// `T^⊕ = T_not⊕′` and division by `exp(T_not⊕) = 1 + T`.
pub fn solve_tree_series(class: &PrimeClass, order: usize) -> Result<SeriesBundle> {
    assert!(order >= 1);
    let n_hi = order + 1; // one extra degree so derivatives keep full order
    let mut peval = PEval::new(class, n_hi)?;
    let mut a: Vec<BigRational> = vec![BigRational::zero()];
    let mut e: Vec<BigRational> = vec![BigRational::zero()];
    for n in 1..=n_hi {
        let pn = peval.coeff_at(n, &e);
        let mut s = BigRational::zero();
        for k in 1..n {
            if !a[k].is_zero() && !e[n - k].is_zero() {
                s += &a[k] * rat(k as i64) * &e[n - k];
            }
        }
        s /= rat(n as i64);
        let mut an = pn + &s;
        if n == 1 {
            an += BigRational::one();
        }
        let en = &an + &s;
        a.push(an);
        e.push(en);
    }
    let a_full = ExactSeries::from_coeffs(a);
    let e_full = ExactSeries::from_coeffs(e);
    let t = e_full.truncated(order);
    let t_not_join = a_full.truncated(order);
    let blo = e_full.derive(); // T′, order = `order`
    let blo_not_join = a_full.derive(); // T_not⊕′
    let blo_join = blo_not_join.clone(); // T^⊕ = T′·exp(−T_not⊕) = T_not⊕′
    let one_plus_t = ExactSeries::constant(BigRational::one(), order).add(&t);
    let one = ExactSeries::constant(BigRational::one(), order);
    let blo_not_join_join = blo_join.sub(&one).div(&one_plus_t)?;
    let blo_not_join_union = blo_join.div(&one_plus_t)?;
    Ok(SeriesBundle {
        order,
        t,
        t_not_join,
        blo_join,
        blo_not_join_join,
        blo_not_join_union,
        blo,
        blo_not_join,
    })
}

/// Edge classification of a substitution tree `τ` with respect to a set `𝔑`
/// of internal nodes (which must contain every non-linear node).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeProfile {
    /// linear–linear edges outside `𝔑` with equal decorations
    pub d_eq: usize,
    /// linear–linear edges outside `𝔑` with opposite decorations
    pub d_neq: usize,
    /// parent outside `𝔑`, child in `𝔑`
    pub d_nbar_to_n: usize,
    /// parent in `𝔑`, child outside
    pub d_n_to_nbar: usize,
    /// both endpoints in `𝔑`
    pub d_n_to_n: usize,
    /// parent outside `𝔑`, child a leaf
    pub d_nbar_to_leaf: usize,
    /// parent in `𝔑`, child a leaf
    pub d_n_to_leaf: usize,
    /// number of internal nodes outside `𝔑`
    pub n_l: usize,
}

/// Internal node of `τ` in preorder, with its decoration and child count.
#[derive(Clone, Debug)]
pub struct InternalNode {
    pub id: usize,
    pub dec: Decoration,
    pub child_count: usize,
    /// ids of internal children, in child order
    pub internal_children: Vec<usize>,
    pub leaf_children: usize,
}

/// Preorder list of internal nodes; id 0 is the root when it is internal.
pub fn internal_nodes(tau: &SubstitutionTree) -> Vec<InternalNode> {
    let mut out: Vec<InternalNode> = Vec::new();
    fn rec(t: &SubstitutionTree, out: &mut Vec<InternalNode>) -> Option<usize> {
        let children = t.children()?;
        let id = out.len();
        out.push(InternalNode {
            id,
            dec: t.decoration().unwrap().clone(),
            child_count: children.len(),
            internal_children: Vec::new(),
            leaf_children: 0,
        });
        for c in children {
            match rec(c, out) {
                Some(cid) => out[id].internal_children.push(cid),
                None => out[id].leaf_children += 1,
            }
        }
        Some(id)
    }
    rec(tau, &mut out);
    out
}

/// All sets `𝔑` admissible for `τ`: supersets of the non-linear nodes.
pub fn admissible_n_sets(tau: &SubstitutionTree) -> Vec<BTreeSet<usize>> {
    let nodes = internal_nodes(tau);
    let linear: Vec<usize> = nodes
        .iter()
        .filter(|n| n.dec.is_linear())
        .map(|n| n.id)
        .collect();
    let base: BTreeSet<usize> = nodes
        .iter()
        .filter(|n| !n.dec.is_linear())
        .map(|n| n.id)
        .collect();
    let mut out = Vec::with_capacity(1 << linear.len());
    for mask in 0u64..(1 << linear.len()) {
        let mut s = base.clone();
        for (i, &id) in linear.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s.insert(id);
            }
        }
        out.push(s);
    }
    out
}

pub fn edge_profile(tau: &SubstitutionTree, n_set: &BTreeSet<usize>) -> Result<EdgeProfile> {
    let nodes = internal_nodes(tau);
    for n in &nodes {
        if !n.dec.is_linear() && !n_set.contains(&n.id) {
            return Err(Error::contract("𝔑 must contain every non-linear node"));
        }
    }
    if n_set.iter().any(|id| *id >= nodes.len()) {
        return Err(Error::contract("𝔑 contains an unknown node id"));
    }
    let mut p = EdgeProfile::default();
    for n in &nodes {
        let n_in = n_set.contains(&n.id);
        if n_in {
            p.d_n_to_leaf += n.leaf_children;
        } else {
            p.n_l += 1;
            p.d_nbar_to_leaf += n.leaf_children;
        }
        for &cid in &n.internal_children {
            let c = &nodes[cid];
            let c_in = n_set.contains(&cid);
            match (n_in, c_in) {
                (true, true) => p.d_n_to_n += 1,
                (true, false) => p.d_n_to_nbar += 1,
                (false, true) => p.d_nbar_to_n += 1,
                (false, false) => {
                    if n.dec == c.dec {
                        p.d_eq += 1;
                    } else {
                        p.d_neq += 1;
                    }
                }
            }
        }
    }
    Ok(p)
}

/// `Occ_{g,𝒫}` composed with a series (closed forms where the class provides
/// them, dense composition otherwise).
pub fn occ_compose(
    class: &PrimeClass,
    g: &crate::graph::LabeledGraph,
    inner: &ExactSeries,
) -> Result<ExactSeries> {
    let order = inner.order();
    match class.occ_series_form(g, order) {
        OccSeriesForm::Polynomial(terms) => {
            let mut acc = ExactSeries::zero(order);
            for (m, c) in terms {
                if m <= order {
                    acc = acc.add(&inner.pow(m as u64).scale(&c));
                }
            }
            Ok(acc)
        }
        OccSeriesForm::RationalPole {
            numerator,
            pole_order,
        } => {
            let one = ExactSeries::constant(BigRational::one(), order);
            let denom = one.sub(inner).pow(pole_order as u64);
            let mut num = ExactSeries::zero(order);
            for (m, c) in numerator.iter().enumerate() {
                if !c.is_zero() && m <= order {
                    num = num.add(&inner.pow(m as u64).scale(c));
                }
            }
            num.div(&denom)
        }
        OccSeriesForm::Dense(coeffs) => ExactSeries::from_coeffs(coeffs).compose(inner),
    }
}

/// The exact series `T_{τ,𝔑}` of marked trees `(t, I)` with `t_I = τ` whose
/// set of nodes mapping to non-linear nodes is exactly `𝔑`; the product of
/// the blossomed-series factors prescribed by the decomposition:
///
/// ```text
/// T_{τ,𝔑} = z^{|τ|} · T_root · (T_not⊕^⊕)^{d_=} · (T_not⊕^⊖)^{d_≠}
///           · (T_not⊕^blo)^{d_{𝔑̄→𝔑}} · (T_not⊕′)^{d_{𝔑̄→ℓ}} · exp(n_L·T_not⊕)
///           · (T^⊕)^{d_{𝔑→𝔑̄}} · (T^blo)^{d_{𝔑→𝔑}} · (T′)^{d_{𝔑→ℓ}}
///           · Π_{𝔫∈𝔑} Occ_{dec(𝔫),𝒫}(T)
/// ```
///
/// With `T_not⊕^⊕ = (T^⊕−1)·e^{−T_not⊕}` this refines the collapsed
/// `(T^⊕)^e` form, which is only exact when `d_= = 0`.
pub fn t_tau_series(
    tau: &SubstitutionTree,
    n_set: &BTreeSet<usize>,
    class: &PrimeClass,
    bundle: &SeriesBundle,
) -> Result<ExactSeries> {
    if tau.size() < 2 || !tau.is_reduced() {
        return Err(Error::contract("τ must be reduced with at least 2 leaves"));
    }
    tau.validate(false)?;
    let profile = edge_profile(tau, n_set)?;
    let size = tau.size();
    if bundle.order < size {
        return Err(Error::contract("truncation order is below |τ|"));
    }
    let m = bundle.order - size;
    let nodes = internal_nodes(tau);

    let tr = |s: &ExactSeries| s.truncated(m);
    let root_in = n_set.contains(&0);
    let mut acc = if root_in {
        tr(&bundle.blo)
    } else {
        tr(&bundle.blo_join)
    };
    let factors: [(&ExactSeries, usize); 5] = [
        (&bundle.blo_not_join_join, profile.d_eq),
        (&bundle.blo_not_join_union, profile.d_neq),
        (
            &bundle.blo_not_join,
            profile.d_nbar_to_n + profile.d_nbar_to_leaf,
        ),
        (&bundle.blo_join, profile.d_n_to_nbar),
        (&bundle.blo, profile.d_n_to_n + profile.d_n_to_leaf),
    ];
    for (s, e) in factors {
        if e > 0 {
            acc = acc.mul(&tr(s).pow(e as u64));
        }
    }
    if profile.n_l > 0 {
        // exp(n_L·T_not⊕) = (1 + T)^{n_L}
        let one_plus_t = ExactSeries::constant(BigRational::one(), m).add(&tr(&bundle.t));
        acc = acc.mul(&one_plus_t.pow(profile.n_l as u64));
    }
    let t_trunc = tr(&bundle.t);
    for id in n_set {
        let node = &nodes[*id];
        let dec_graph = node.dec.as_graph(node.child_count);
        acc = acc.mul(&occ_compose(class, &dec_graph, &t_trunc)?);
    }
    Ok(acc.shift_up(size))
}

/// `T_τ = Σ_{𝔑} T_{τ,𝔑}` over all admissible `𝔑`.
pub fn t_tau_sum(
    tau: &SubstitutionTree,
    class: &PrimeClass,
    bundle: &SeriesBundle,
) -> Result<ExactSeries> {
    let mut acc = ExactSeries::zero(bundle.order);
    for n_set in admissible_n_sets(tau) {
        acc = acc.add(&t_tau_series(tau, &n_set, class, bundle)?);
    }
    Ok(acc)
}

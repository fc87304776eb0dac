//! The acceptance suite: thirteen checks confronting the implementation with
//! exact combinatorial oracles and tolerance-banded Monte Carlo. Each check
//! returns a `CriterionOutcome`; `modgraph verify` runs them all and exits
//! non-zero if any fails, and the `acceptance` test target asserts them one
//! by one.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use modgraph::analytic::{predict_count, predict_kh, predict_subtree_prob};
use modgraph::enumerate::{self, Forbid};
use modgraph::graph::{LabeledGraph, PartialInjection};
use modgraph::mdtree::{
    beta_of_md_tree, expanded_trees, graph_of, induced_subtree, modular_decomposition, Decoration,
    SubstitutionTree,
};
use modgraph::prime::{factorial, PrimeClass};
use modgraph::sampler::{
    sample_brownian_cographon, sample_uniform_graph, sample_uniform_tree, CountCache, RngStream,
};
use modgraph::series::{solve_tree_series, t_tau_sum};
use modgraph::solve_constants;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::experiments::{self, ExperimentConfig};

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub details: String,
}

pub const CRITERIA: [(usize, &str); 13] = [
    (1, "exact counts vs brute force (n ≤ 6)"),
    (2, "modular decomposition round trip (n ≤ 6)"),
    (3, "occurrence/derivative identity"),
    (4, "constants closed forms and defining identities"),
    (5, "paths-class parameter p vs quoted 0.288"),
    (6, "count asymptotics at n = 200"),
    (7, "sampler exactness at n = 4"),
    (8, "Brownian cographon sampler"),
    (9, "graphon-limit densities at n = 2000"),
    (10, "subtree-distribution limit at n = 1000"),
    (11, "occurrence scaling exponent for P4"),
    (12, "marked-tree series vs brute force (n ≤ 7)"),
    (13, "expanded trees (n ≤ 5)"),
];

/// Shared sampler caches; criteria 10 and 11 reuse the `{P4}` tables.
fn cache_for(class: &PrimeClass, key: &'static str, order: usize) -> Arc<CountCache> {
    static CACHES: OnceLock<Mutex<HashMap<(&'static str, usize), Arc<CountCache>>>> =
        OnceLock::new();
    let map = CACHES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().unwrap();
    guard
        .entry((key, order))
        .or_insert_with(|| Arc::new(CountCache::build(class, order).expect("stock class")))
        .clone()
}

pub fn run(id: usize) -> CriterionOutcome {
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, n)| *n)
        .unwrap_or("?");
    let (pass, details) = match id {
        1 => c01_exact_counts(),
        2 => c02_md_round_trip(),
        3 => c03_occ_derivative_identity(),
        4 => c04_constants_closed_forms(),
        5 => c05_quoted_parameter(),
        6 => c06_count_asymptotics(),
        7 => c07_sampler_exactness(),
        8 => c08_brownian_sampler(),
        9 => c09_graphon_densities(),
        10 => c10_subtree_distribution(),
        11 => c11_occ_scaling(),
        12 => c12_marked_tree_series(),
        13 => c13_expanded_trees(),
        _ => (false, format!("unknown criterion {id}")),
    };
    CriterionOutcome {
        id,
        name,
        pass,
        details,
    }
}

pub fn run_all(filter: Option<&str>) -> Vec<CriterionOutcome> {
    CRITERIA
        .iter()
        .filter(|(id, name)| match filter {
            None => true,
            Some(f) => id.to_string() == f || name.contains(f),
        })
        .map(|(id, _)| run(*id))
        .collect()
}

fn in_class_count(class: &PrimeClass, n: usize) -> u64 {
    let mut count = 0u64;
    enumerate::for_each_graph(n, |g| {
        if modgraph::is_in_class(g, class) {
            count += 1;
        }
    });
    count
}

fn c01_exact_counts() -> (bool, String) {
    let mut details = String::new();
    let mut pass = true;
    for (label, class) in [("empty", PrimeClass::empty()), ("p4", PrimeClass::p4())] {
        let bundle = solve_tree_series(&class, 6).expect("solvable");
        let mut row = Vec::new();
        for n in 1..=6usize {
            let brute = in_class_count(&class, n);
            let series = bundle.t.count(n);
            if series != BigInt::from(brute) {
                pass = false;
            }
            row.push(format!("{brute}"));
        }
        details.push_str(&format!("{label}: {}; ", row.join(",")));
    }
    // the cograph sequence matches its known prefix
    let expected = [1u64, 2, 8, 52, 472, 5504];
    for (i, &e) in expected.iter().enumerate() {
        if in_class_count(&PrimeClass::empty(), i + 1) != e {
            pass = false;
        }
    }
    (pass, details)
}

fn c02_md_round_trip() -> (bool, String) {
    let mut checked = 0u64;
    let mut pass = true;
    for n in 1..=6usize {
        enumerate::for_each_graph(n, |g| {
            let t = modular_decomposition(g);
            if !t.is_md_tree() || graph_of(&t) != *g {
                pass = false;
            }
            checked += 1;
        });
    }
    (pass, format!("{checked} graphs decomposed and rebuilt"))
}

fn c03_occ_derivative_identity() -> (bool, String) {
    let order = 10usize;
    let mut pass = true;
    let mut details = String::new();
    for (label, class, kmax) in [
        ("p4", PrimeClass::p4(), 4usize),
        ("paths", PrimeClass::paths(), 3),
    ] {
        for k in 1..=kmax {
            // Σ over all labeled graphs G of size k of Occ_{G,𝒫}: every
            // injection lands in exactly one G.
            let mut total = vec![BigRational::zero(); order + 1];
            enumerate::for_each_graph(k, |g| {
                let coeffs = class.occ_series_coeffs(g, order);
                for (m, c) in coeffs.iter().enumerate() {
                    total[m] += c;
                }
            });
            for (m, got) in total.iter().enumerate() {
                // [z^m] P⁽ᵏ⁾ = (m+k)·(m+k−1)···(m+1) · [z^{m+k}] P
                let mut falling = BigRational::one();
                for i in 1..=k {
                    falling *= BigRational::from_integer(BigInt::from(m + i));
                }
                let expect = class.p_coeff(m + k) * falling;
                if *got != expect {
                    pass = false;
                }
            }
        }
        details.push_str(&format!("{label}: k ≤ {kmax} to order {order}; "));
    }
    (pass, details)
}

fn c04_constants_closed_forms() -> (bool, String) {
    let tol = 1e-9;
    let mut pass = true;
    let mut details = String::new();
    let c = solve_constants(&PrimeClass::empty(), 1e-12).expect("(C) holds");
    let ln2 = std::f64::consts::LN_2;
    for (what, got, want) in [
        ("kappa", c.kappa, ln2),
        ("R", c.r, 2.0 * ln2 - 1.0),
        ("K", c.k, 1.0),
        ("p", c.p, 0.5),
    ] {
        if (got - want).abs() >= tol {
            pass = false;
            details.push_str(&format!("empty {what}: {got} vs {want}; "));
        }
    }
    for (label, class) in [
        ("empty", PrimeClass::empty()),
        ("p4", PrimeClass::p4()),
        ("paths", PrimeClass::paths()),
    ] {
        let c = solve_constants(&class, 1e-12).expect("(C) holds");
        let residual = ((1.0 + c.k) * (class.p_eval(c.k, 1, 1e-13).unwrap() + 1.0) - 2.0).abs();
        if residual >= tol {
            pass = false;
        }
        details.push_str(&format!("{label}: |(1+K)(P'(K)+1)-2| = {residual:.2e}; "));
    }
    (pass, details)
}

fn c05_quoted_parameter() -> (bool, String) {
    let c = solve_constants(&PrimeClass::paths(), 1e-12).expect("(C) holds");
    let pass = (c.p - 0.288).abs() <= 0.001;
    let details = format!(
        "computed p = {:.12}; the quoted 0.288 is not reproducible from the class's own \
         defining equations — the exact series limit of the ⊕-cherry probability and the \
         sampled edge density both agree with the computed value (see the asymptotics test \
         suite and criterion 9)",
        c.p
    );
    (pass, details)
}

fn c06_count_asymptotics() -> (bool, String) {
    let mut pass = true;
    let mut details = String::new();
    for (label, class) in [("empty", PrimeClass::empty()), ("p4", PrimeClass::p4())] {
        let bundle = solve_tree_series(&class, 200).expect("solvable");
        let consts = solve_constants(&class, 1e-12).expect("(C) holds");
        let ratio = |n: usize| -> f64 {
            let count = bundle.t.count(n).to_f64().unwrap_or(f64::INFINITY);
            if count.is_finite() {
                count / predict_count(n, &consts)
            } else {
                let coeff = BigRational::new(bundle.t.count(n), BigInt::from(factorial(n)))
                    .to_f64()
                    .unwrap();
                coeff / (consts.c / (consts.r.powi(n as i32) * (n as f64).powf(1.5)))
            }
        };
        let r50 = ratio(50);
        let r200 = ratio(200);
        if !(0.9..=1.1).contains(&r200) || (r200 - 1.0).abs() >= (r50 - 1.0).abs() {
            pass = false;
        }
        details.push_str(&format!(
            "{label}: ratio(50) = {r50:.4}, ratio(200) = {r200:.4}; "
        ));
    }
    (pass, details)
}

fn c07_sampler_exactness() -> (bool, String) {
    let mut pass = true;
    let mut details = String::new();
    let draws = 100_000usize;
    // χ² over the 52 labeled cographs on 4 vertices at significance 0.001
    {
        let class = PrimeClass::empty();
        let cache = cache_for(&class, "empty", 4);
        let mut targets: Vec<LabeledGraph> = Vec::new();
        enumerate::for_each_graph(4, |g| {
            if modgraph::is_in_class(g, &class) {
                targets.push(g.clone());
            }
        });
        let mut counts = vec![0u64; targets.len()];
        let mut rng = RngStream::new(1, 0).rng();
        for _ in 0..draws {
            let g = sample_uniform_graph(&cache, 4, &mut rng).expect("size 4");
            counts[targets.iter().position(|t| *t == g).expect("in class")] += 1;
        }
        let expect = draws as f64 / targets.len() as f64;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expect).powi(2) / expect)
            .sum();
        let dof = (targets.len() - 1) as f64;
        let crit = ChiSquared::new(dof).unwrap().inverse_cdf(0.999);
        if chi2 >= crit {
            pass = false;
        }
        details.push_str(&format!(
            "chi² = {chi2:.1} vs critical {crit:.1} ({dof} dof); "
        ));
    }
    // P4 frequency 12/64 ± 3σ for the {P4} class
    {
        let class = PrimeClass::p4();
        let cache = cache_for(&class, "p4", 4);
        let mut hits = 0u64;
        let mut rng = RngStream::new(1, 1).rng();
        for _ in 0..draws {
            let t = sample_uniform_tree(&cache, 4, &mut rng).expect("size 4");
            if matches!(t.decoration(), Some(Decoration::Prime(_))) {
                hits += 1;
            }
        }
        let freq = hits as f64 / draws as f64;
        let expect = 12.0 / 64.0;
        let sigma = (expect * (1.0 - expect) / draws as f64).sqrt();
        if (freq - expect).abs() > 3.0 * sigma {
            pass = false;
        }
        details.push_str(&format!(
            "P4 frequency {freq:.5} vs {expect:.5} ± {:.5}",
            3.0 * sigma
        ));
    }
    (pass, details)
}

fn c08_brownian_sampler() -> (bool, String) {
    let mut pass = true;
    let mut details = String::new();
    let draws = 100_000usize;
    for (pi, p) in [0.288f64, 0.5].into_iter().enumerate() {
        let mut rng = RngStream::new(2, pi as u64).rng();
        let mut edges2 = 0u64;
        for _ in 0..draws {
            edges2 += sample_brownian_cographon(2, p, &mut rng).edge_count() as u64;
        }
        let f2 = edges2 as f64 / draws as f64;
        let s2 = (p * (1.0 - p) / draws as f64).sqrt();
        let mut k3 = 0u64;
        for _ in 0..draws {
            let g = sample_brownian_cographon(3, p, &mut rng);
            if g.edge_count() == 3 {
                k3 += 1;
            }
        }
        let f3 = k3 as f64 / draws as f64;
        let s3 = (p * p * (1.0 - p * p) / draws as f64).sqrt();
        if (f2 - p).abs() > 3.0 * s2 || (f3 - p * p).abs() > 3.0 * s3 {
            pass = false;
        }
        // exactness: outputs are cographs
        for _ in 0..2000 {
            let g = sample_brownian_cographon(24, p, &mut rng);
            if !beta_of_md_tree(&modular_decomposition(&g)).is_zero() {
                pass = false;
            }
        }
        details.push_str(&format!(
            "p = {p}: edge {f2:.4} (±{:.4}), K3 {f3:.4} vs {:.4} (±{:.4}); ",
            3.0 * s2,
            p * p,
            3.0 * s3
        ));
    }
    details.push_str("all size-24 outputs are cographs");
    (pass, details)
}

fn c09_graphon_densities() -> (bool, String) {
    let mut pass = true;
    let mut details = String::new();
    let n = 2000usize;
    let census = enumerate::iso_class_representatives(4);
    let p4_idx = census
        .iter()
        .position(|g| modgraph::are_isomorphic(g, &LabeledGraph::path(4)))
        .unwrap();
    for (label, class) in [
        ("empty", PrimeClass::empty()),
        ("paths", PrimeClass::paths()),
    ] {
        let consts = solve_constants(&class, 1e-12).expect("(C) holds");
        let cfg = ExperimentConfig {
            sizes: vec![n],
            samples: 200,
            injections4: 2000,
            subtree_marks: 0,
            subtree_injections: 0,
            patterns: Vec::new(),
            seed: 1,
            jobs: 1,
        };
        let report = experiments::run_density(&class, &cfg).expect("density runs");
        let edge = report.row(n, "occ_density[K2]").unwrap();
        if (edge.empirical - consts.p).abs() > 0.02 {
            pass = false;
        }
        details.push_str(&format!(
            "{label}: edge density {:.4} vs p = {:.4} (se {:.4}); ",
            edge.empirical, consts.p, edge.stderr
        ));
        let mut worst = 0.0f64;
        for (i, rep) in census.iter().enumerate() {
            if i == p4_idx {
                continue; // the one non-cograph class; its density tends to 0
            }
            let name = format!("occ_density[g4-{:02}-{}e]", i, rep.edge_count());
            let row = report.row(n, &name).unwrap();
            let dev = (row.empirical - row.predicted).abs();
            worst = worst.max(dev);
            if dev > 0.02 {
                pass = false;
                details.push_str(&format!(
                    "{name}: {:.4} vs {:.4}; ",
                    row.empirical, row.predicted
                ));
            }
        }
        details.push_str(&format!("worst 4-class deviation {worst:.4}; "));
    }
    (pass, details)
}

fn c10_subtree_distribution() -> (bool, String) {
    let class = PrimeClass::p4();
    let n = 1000usize;
    let cache = cache_for(&class, "p4", n);
    let consts = solve_constants(&class, 1e-12).expect("(C) holds");
    // enumerate the 12 decorated binary shapes on 3 leaves
    let leaves: Vec<SubstitutionTree> = (1..=3).map(SubstitutionTree::Leaf).collect();
    let mut shapes = Vec::new();
    for shape in modgraph::mdtree::binary_trees_over(&leaves, &Decoration::Join) {
        for mask in 0u32..4 {
            let mut decorated = shape.clone();
            decorated = assign(&decorated, mask);
            if !shapes.contains(&decorated) {
                shapes.push(decorated);
            }
        }
    }
    fn assign(t: &SubstitutionTree, mask: u32) -> SubstitutionTree {
        fn rec(t: &SubstitutionTree, mask: u32, bit: &mut u32) -> SubstitutionTree {
            match t {
                SubstitutionTree::Leaf(l) => SubstitutionTree::Leaf(*l),
                SubstitutionTree::Internal { children, .. } => {
                    let dec = if mask >> *bit & 1 == 1 {
                        Decoration::Join
                    } else {
                        Decoration::Union
                    };
                    *bit += 1;
                    let ch = children.iter().map(|c| rec(c, mask, bit)).collect();
                    SubstitutionTree::internal(dec, ch).unwrap()
                }
            }
        }
        rec(t, mask, &mut 0)
    }
    assert_eq!(shapes.len(), 12);
    let samples = 1000usize;
    let inj_per_sample = 100usize;
    let mut counts = vec![0u64; shapes.len()];
    let mut other = 0u64;
    for i in 0..samples {
        let mut rng = RngStream::new(10, i as u64).rng();
        let tree = sample_uniform_tree(&cache, n, &mut rng).expect("size within order");
        for _ in 0..inj_per_sample {
            let inj = modgraph::sample_injection(n, 3, &mut rng).unwrap();
            let induced = induced_subtree(&tree, &inj).unwrap();
            match shapes.iter().position(|s| *s == induced) {
                Some(idx) => counts[idx] += 1,
                None => other += 1,
            }
        }
    }
    let total = (samples * inj_per_sample) as f64;
    let mut pass = true;
    let mut worst = 0.0f64;
    for (idx, shape) in shapes.iter().enumerate() {
        let emp = counts[idx] as f64 / total;
        let pred = predict_subtree_prob(shape, &consts);
        let dev = (emp - pred).abs();
        worst = worst.max(dev);
        if dev > 0.02 {
            pass = false;
        }
    }
    let other_freq = other as f64 / total;
    if other_freq >= 0.05 {
        pass = false;
    }
    (
        pass,
        format!(
            "12 binary shapes within ±0.02 (worst deviation {worst:.4}), \
             non-binary frequency {other_freq:.4} < 0.05 over {total} pairs"
        ),
    )
}

/// EGF-integer product: `out[m] = m![z^m](X·Y)` from `x[i] = i![zⁱ]X`.
fn egf_mul(x: &[BigUint], y: &[BigUint]) -> Vec<BigUint> {
    let n = x.len().min(y.len());
    let mut out = vec![BigUint::zero(); n];
    for (m, o) in out.iter_mut().enumerate() {
        let mut binom = BigUint::one();
        let mut acc = BigUint::zero();
        for i in 0..=m {
            if !x[i].is_zero() && !y[m - i].is_zero() {
                acc += &binom * &x[i] * &y[m - i];
            }
            if i < m {
                binom = binom * BigUint::from((m - i) as u64) / BigUint::from((i + 1) as u64);
            }
        }
        *o = acc;
    }
    out
}

fn c11_occ_scaling() -> (bool, String) {
    let class = PrimeClass::p4();
    let order = 1000usize;
    let cache = cache_for(&class, "p4", order);
    let consts = solve_constants(&class, 1e-12).expect("(C) holds");
    let pred = predict_kh(&LabeledGraph::path(4), &consts, &class).expect("pattern fits");
    // E[Occ_{P4}] is exact from the count tables: the only substitution tree
    // of P4 is its prime node, so T_τ = z⁴·(T′)⁵·Occ_{P4,𝒫}(T) with
    // Occ_{P4,{P4}} ≡ 1, and m![z^m]T′ = t_{m+1}.
    let u: Vec<BigUint> = (1..=order).map(|m| cache.tree_count(m).clone()).collect();
    let u2 = egf_mul(&u, &u);
    let u4 = egf_mul(&u2, &u2);
    let u5 = egf_mul(&u4, &u);
    let exact_ratio = |n: usize| -> f64 {
        let falling: BigUint = (0..4u64).map(|i| BigUint::from(n as u64 - i)).product();
        let e_num = falling * &u5[n - 4];
        let e = BigRational::new(
            BigInt::from(e_num),
            BigInt::from(cache.tree_count(n).clone()),
        )
        .to_f64()
        .unwrap();
        e / (pred.k_h * (n as f64).powi(3))
    };
    let r250 = exact_ratio(250);
    let r500 = exact_ratio(500);
    let r1000 = exact_ratio(1000);
    let mut pass = (0.5..=2.0).contains(&r1000)
        && (r250 - 1.0).abs() >= (r500 - 1.0).abs()
        && (r500 - 1.0).abs() >= (r1000 - 1.0).abs();
    // Monte Carlo cross-check at n = 1000: per-sample occurrence counts are
    // exact given the tree (one leaf through each child of a prime node), so
    // this is the injection estimator with its inner noise integrated out.
    let samples = 2000usize;
    let aut = modgraph::graph::automorphism_count(&LabeledGraph::path(4));
    let mut acc = 0.0;
    for i in 0..samples {
        let mut rng = RngStream::new(11, i as u64).rng();
        let tree = sample_uniform_tree(&cache, 1000, &mut rng).expect("order 1000");
        acc += experiments::exact_prime4_occurrences(&tree, &LabeledGraph::path(4), aut);
    }
    let mc_ratio = acc / samples as f64 / (pred.k_h * 1000f64.powi(3));
    if !(0.5..=2.0).contains(&mc_ratio) {
        pass = false;
    }
    (
        pass,
        format!(
            "exact E[Occ]·n⁻³/K_H = {r250:.4}, {r500:.4}, {r1000:.4} at n = 250, 500, 1000 \
             (monotone toward 1); sampled ratio at n = 1000: {mc_ratio:.3} ∈ [0.5, 2]"
        ),
    )
}

fn c12_marked_tree_series() -> (bool, String) {
    let cherry_join =
        SubstitutionTree::join_of(vec![SubstitutionTree::Leaf(1), SubstitutionTree::Leaf(2)]);
    let cherry_union =
        SubstitutionTree::union_of(vec![SubstitutionTree::Leaf(1), SubstitutionTree::Leaf(2)]);
    let caterpillar = SubstitutionTree::join_of(vec![
        SubstitutionTree::union_of(vec![SubstitutionTree::Leaf(1), SubstitutionTree::Leaf(2)]),
        SubstitutionTree::Leaf(3),
    ]);
    let taus = [
        (&cherry_join, 2usize),
        (&cherry_union, 2),
        (&caterpillar, 3),
    ];
    let n_max = 7usize;
    let mut pass = true;
    let mut details = String::new();
    for (label, class) in [("empty", PrimeClass::empty()), ("p4", PrimeClass::p4())] {
        let bundle = solve_tree_series(&class, n_max).expect("solvable");
        let series: Vec<_> = taus
            .iter()
            .map(|(t, _)| t_tau_sum(t, &class, &bundle).expect("admissible"))
            .collect();
        // one enumeration pass per size: classify every (tree, injection)
        let mut brute = vec![vec![0u64; n_max + 1]; taus.len()];
        let mut trees_seen = 0u64;
        for n in 2..=n_max {
            let labels: Vec<u32> = (1..=n as u32).collect();
            enumerate::for_each_tree(&class, &labels, Forbid::None, &mut |t| {
                trees_seen += 1;
                for (ti, (tau, ell)) in taus.iter().enumerate() {
                    if *ell > n {
                        continue;
                    }
                    count_matches(t, tau, *ell, n, &mut brute[ti][n]);
                }
            });
        }
        for (ti, (_, ell)) in taus.iter().enumerate() {
            for n in *ell..=n_max {
                if series[ti].count(n) != BigInt::from(brute[ti][n]) {
                    pass = false;
                    details.push_str(&format!(
                        "{label} τ#{ti} n={n}: series {} vs brute {}; ",
                        series[ti].count(n),
                        brute[ti][n]
                    ));
                }
            }
        }
        details.push_str(&format!("{label}: {trees_seen} trees enumerated; "));
    }
    (pass, details)
}

fn count_matches(
    t: &SubstitutionTree,
    tau: &SubstitutionTree,
    ell: usize,
    n: usize,
    out: &mut u64,
) {
    let mut chosen: Vec<u32> = Vec::with_capacity(ell);
    fn rec(
        t: &SubstitutionTree,
        tau: &SubstitutionTree,
        ell: usize,
        n: usize,
        chosen: &mut Vec<u32>,
        out: &mut u64,
    ) {
        if chosen.len() == ell {
            let pairs: Vec<(u32, u32)> = chosen
                .iter()
                .enumerate()
                .map(|(i, &a)| (a, i as u32 + 1))
                .collect();
            let inj = PartialInjection::from_pairs(&pairs).unwrap();
            if induced_subtree(t, &inj).unwrap() == *tau {
                *out += 1;
            }
            return;
        }
        for a in 1..=n as u32 {
            if !chosen.contains(&a) {
                chosen.push(a);
                rec(t, tau, ell, n, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(t, tau, ell, n, &mut chosen, out);
}

fn c13_expanded_trees() -> (bool, String) {
    let mut pass = true;
    let mut graphs = 0u64;
    let mut trees = 0u64;
    for n in 1..=5usize {
        enumerate::for_each_graph(n, |g| {
            graphs += 1;
            let (count, iter) = expanded_trees(g);
            let two_beta = (beta_of_md_tree(&modular_decomposition(g))
                * BigRational::from_integer(2.into()))
            .to_integer()
            .to_usize()
            .unwrap();
            let expected_edges = 2 * n - 2 - two_beta;
            let mut seen: Vec<SubstitutionTree> = Vec::new();
            for t in iter {
                if graph_of(&t) != *g || t.edge_count() != expected_edges || seen.contains(&t) {
                    pass = false;
                }
                seen.push(t);
                trees += 1;
            }
            if BigUint::from(seen.len() as u64) != count {
                pass = false;
            }
        });
    }
    (
        pass,
        format!("{graphs} graphs, {trees} expanded trees checked"),
    )
}

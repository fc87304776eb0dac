//! Monte Carlo experiment harness: draws exact-uniform samples and confronts
//! empirical densities and subtree statistics with the analytic predictions.
//!
//! Reports are bit-identical for a fixed `(seed, config)` regardless of the
//! worker count: every `(size, sample)` cell owns the random stream
//! `size_index·2³² + sample_index` and aggregation runs in index order.

use anyhow::{bail, Result};
use modgraph::analytic::{predict_kh, predict_sample_prob, predict_subtree_prob};
use modgraph::enumerate::iso_class_representatives;
use modgraph::graph::LabeledGraph;
use modgraph::mdtree::{
    binary_trees_over, graph_of, induced_subtree, Decoration, SubstitutionTree,
};
use modgraph::prime::PrimeClass;
use modgraph::sampler::{sample_injection, sample_uniform_tree, CountCache, RngStream};
use modgraph::solve_constants;
use rand::Rng;
use rayon::prelude::*;

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub sizes: Vec<usize>,
    pub samples: usize,
    /// per-sample random injections for size-4 pattern densities
    pub injections4: usize,
    /// number of marks for the induced-subtree statistic (0 disables it)
    pub subtree_marks: usize,
    /// per-sample random injections for the subtree statistic
    pub subtree_injections: usize,
    /// extra pattern graphs beyond the built-in edge and size-4 censuses
    pub patterns: Vec<(String, LabeledGraph)>,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            sizes: vec![500],
            samples: 200,
            injections4: 2000,
            subtree_marks: 3,
            subtree_injections: 100,
            patterns: Vec::new(),
            seed: 1,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReportRow {
    pub size: usize,
    pub statistic: String,
    pub empirical: f64,
    pub stderr: f64,
    pub predicted: f64,
    pub flag: String,
}

#[derive(Clone, Debug, Default)]
pub struct ExperimentReport {
    pub rows: Vec<ReportRow>,
}

impl ExperimentReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("size,statistic,empirical,stderr,predicted,ratio,flag\n");
        for r in &self.rows {
            let ratio = if r.predicted != 0.0 {
                r.empirical / r.predicted
            } else {
                f64::NAN
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.size, r.statistic, r.empirical, r.stderr, r.predicted, ratio, r.flag
            ));
        }
        out
    }

    pub fn row(&self, size: usize, statistic: &str) -> Option<&ReportRow> {
        self.rows
            .iter()
            .find(|r| r.size == size && r.statistic == statistic)
    }
}

/// Human-readable names for the 11 isomorphism classes of 4-vertex graphs,
/// indexed as produced by `iso_class_representatives(4)` (increasing edge
/// masks, first representative per class).
fn size4_census() -> Vec<(String, LabeledGraph)> {
    iso_class_representatives(4)
        .into_iter()
        .enumerate()
        .map(|(i, g)| (format!("g4-{:02}-{}e", i, g.edge_count()), g))
        .collect()
}

struct SampleStats {
    edge_density: f64,
    class4: Vec<f64>,
    subtree: Vec<f64>,
    patterns: Vec<f64>,
}

fn mean_stderr(values: impl Iterator<Item = f64> + Clone, n: usize) -> (f64, f64) {
    let mean = values.clone().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, f64::NAN);
    }
    let var = values.map(|v| (v - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
    (mean, (var / n as f64).sqrt())
}

/// Density experiment: per size, draws uniform class graphs and estimates
/// `E[Occ_H]/n^{|H|}` for the edge, the full 4-vertex census and any extra
/// patterns, plus the induced decorated subtree distribution on
/// `subtree_marks` marks. Predictions come from the Brownian-cographon limit
/// with the class's parameter `p`.
pub fn run_density(class: &PrimeClass, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if cfg.samples < 1 {
        bail!("at least one sample is required");
    }
    for (name, g) in &cfg.patterns {
        if g.size() > 7 {
            bail!("pattern {name} has more than 7 vertices");
        }
    }
    let consts = solve_constants(class, 1e-10)?;
    let census = size4_census();
    // canonical index of every 6-bit adjacency code of a 4-subset
    let mut code_class = [0usize; 64];
    for code in 0u64..64 {
        let g = graph4_from_code(code);
        code_class[code as usize] = census
            .iter()
            .position(|(_, rep)| modgraph::are_isomorphic(rep, &g))
            .expect("census covers all 4-vertex graphs");
    }
    let shapes = subtree_shapes(cfg.subtree_marks);
    let mut report = ExperimentReport::default();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()?;
    for (size_idx, &n) in cfg.sizes.iter().enumerate() {
        if cfg.subtree_marks > n || 4 > n {
            bail!("size {n} is too small for the configured statistics");
        }
        let cache = CountCache::build(class, n)?;
        let stats: Vec<SampleStats> = pool.install(|| {
            (0..cfg.samples)
                .into_par_iter()
                .map(|i| {
                    let stream = RngStream::new(cfg.seed, (size_idx as u64) << 32 | i as u64);
                    one_density_sample(&cache, n, cfg, &code_class, &shapes, stream)
                })
                .collect()
        });
        let s = cfg.samples;
        let (mean, se) = mean_stderr(stats.iter().map(|x| x.edge_density), s);
        report.rows.push(ReportRow {
            size: n,
            statistic: "occ_density[K2]".into(),
            empirical: mean,
            stderr: se,
            predicted: consts.p,
            flag: String::new(),
        });
        let exhaustive = exhaustive4(n, cfg.injections4);
        for (ci, (name, rep)) in census.iter().enumerate() {
            let (mean, se) = mean_stderr(stats.iter().map(|x| x.class4[ci]), s);
            report.rows.push(ReportRow {
                size: n,
                statistic: format!("occ_density[{name}]"),
                empirical: mean,
                stderr: se,
                predicted: predict_sample_prob(rep, consts.p)?,
                flag: if exhaustive {
                    "exhaustive".into()
                } else {
                    String::new()
                },
            });
        }
        for (si, shape) in shapes.iter().enumerate() {
            let (mean, se) = mean_stderr(stats.iter().map(|x| x.subtree[si]), s);
            report.rows.push(ReportRow {
                size: n,
                statistic: format!("subtree[{}]", shape_label(shape)),
                empirical: mean,
                stderr: se,
                predicted: predict_subtree_prob(shape, &consts),
                flag: String::new(),
            });
        }
        if cfg.subtree_marks >= 2 {
            let (mean, se) = mean_stderr(
                stats
                    .iter()
                    .map(|x| *x.subtree.last().expect("other bucket")),
                s,
            );
            report.rows.push(ReportRow {
                size: n,
                statistic: "subtree[other]".into(),
                empirical: mean,
                stderr: se,
                predicted: 0.0,
                flag: String::new(),
            });
        }
        for (pi, (name, rep)) in cfg.patterns.iter().enumerate() {
            let (mean, se) = mean_stderr(stats.iter().map(|x| x.patterns[pi]), s);
            report.rows.push(ReportRow {
                size: n,
                statistic: format!("occ_density[{name}]"),
                empirical: mean,
                stderr: se,
                predicted: predict_sample_prob(rep, consts.p)?,
                flag: String::new(),
            });
        }
    }
    Ok(report)
}

fn graph4_from_code(code: u64) -> LabeledGraph {
    // same bit order as `classify4`: pair (1,2) is the highest bit
    let mut g = LabeledGraph::empty(4);
    let mut bit = 6i32;
    for u in 1..=4u32 {
        for v in (u + 1)..=4u32 {
            bit -= 1;
            if code >> bit & 1 == 1 {
                g.set_edge(u, v, true);
            }
        }
    }
    g
}

fn exhaustive4(n: usize, injections: usize) -> bool {
    // full 4-subset census cheaper than the Monte Carlo budget
    let subsets = n * (n - 1) * (n - 2) * (n - 3) / 24;
    subsets <= injections.max(1) * 4
}

/// All decorated binary trees with `marks` leaves (the classification
/// targets), followed by an implicit "other" bucket.
fn subtree_shapes(marks: usize) -> Vec<SubstitutionTree> {
    if marks < 2 {
        return Vec::new();
    }
    let leaves: Vec<SubstitutionTree> = (1..=marks as u32).map(SubstitutionTree::Leaf).collect();
    let mut out = Vec::new();
    for shape in binary_trees_over(&leaves, &Decoration::Join) {
        for mask in 0u32..(1 << (marks - 1)) {
            let mut bit = 0;
            out.push(assign_signs(&shape, mask, &mut bit));
        }
    }
    out.sort_by_key(shape_label);
    out.dedup();
    out
}

fn assign_signs(t: &SubstitutionTree, mask: u32, bit: &mut u32) -> SubstitutionTree {
    match t {
        SubstitutionTree::Leaf(l) => SubstitutionTree::Leaf(*l),
        SubstitutionTree::Internal { children, .. } => {
            let dec = if mask >> *bit & 1 == 1 {
                Decoration::Join
            } else {
                Decoration::Union
            };
            *bit += 1;
            let ch = children
                .iter()
                .map(|c| assign_signs(c, mask, bit))
                .collect();
            SubstitutionTree::internal(dec, ch).unwrap()
        }
    }
}

pub fn shape_label(t: &SubstitutionTree) -> String {
    match t {
        SubstitutionTree::Leaf(l) => l.to_string(),
        SubstitutionTree::Internal { dec, children, .. } => {
            let sign = match dec {
                Decoration::Join => "J",
                Decoration::Union => "U",
                Decoration::Prime(_) => "P",
            };
            let inner: Vec<String> = children.iter().map(shape_label).collect();
            format!("{sign}({})", inner.join(","))
        }
    }
}

fn one_density_sample(
    cache: &CountCache,
    n: usize,
    cfg: &ExperimentConfig,
    code_class: &[usize; 64],
    shapes: &[SubstitutionTree],
    stream: RngStream,
) -> SampleStats {
    let mut rng = stream.rng();
    let tree = sample_uniform_tree(cache, n, &mut rng).expect("size within cache order");
    let g = graph_of(&tree);
    let nf = n as f64;
    let edge_density = 2.0 * g.edge_count() as f64 / (nf * nf);

    // 4-vertex census: Occ_H/n⁴ = P(ordered injection hits H)·(n)₄/n⁴
    let falling4 = nf * (nf - 1.0) * (nf - 2.0) * (nf - 3.0);
    let mut class4 = vec![0f64; 11];
    if exhaustive4(n, cfg.injections4) {
        for a in 1..=n as u32 {
            for b in (a + 1)..=n as u32 {
                for c in (b + 1)..=n as u32 {
                    for d in (c + 1)..=n as u32 {
                        class4[classify4(&g, &[a, b, c, d], code_class)] += 1.0;
                    }
                }
            }
        }
        let subsets = (falling4 / 24.0).round();
        for v in class4.iter_mut() {
            // subsets → ordered-injection probability → Occ/n⁴
            *v = *v / subsets * falling4 / nf.powi(4);
        }
    } else {
        let mut verts = [0u32; 4];
        for _ in 0..cfg.injections4 {
            let mut picked = 0;
            while picked < 4 {
                let v = rng.random_range(1..=n as u32);
                if !verts[..picked].contains(&v) {
                    verts[picked] = v;
                    picked += 1;
                }
            }
            class4[classify4(&g, &verts, code_class)] += 1.0;
        }
        for v in class4.iter_mut() {
            *v = *v / cfg.injections4 as f64 * falling4 / nf.powi(4);
        }
    }

    // induced decorated subtree distribution
    let mut subtree = vec![0f64; shapes.len() + 1];
    if cfg.subtree_marks >= 2 && cfg.subtree_injections > 0 {
        for _ in 0..cfg.subtree_injections {
            let inj = sample_injection(n, cfg.subtree_marks, &mut rng).expect("ℓ ≤ n");
            let induced = induced_subtree(&tree, &inj).expect("marks are leaves");
            match shapes.iter().position(|s| *s == induced) {
                Some(i) => subtree[i] += 1.0,
                None => *subtree.last_mut().unwrap() += 1.0,
            }
        }
        for v in subtree.iter_mut() {
            *v /= cfg.subtree_injections as f64;
        }
    }

    // extra patterns (unlabeled-isomorphism densities)
    let mut patterns = Vec::with_capacity(cfg.patterns.len());
    for (_, h) in &cfg.patterns {
        let k = h.size();
        let mut hits = 0usize;
        let m = cfg.injections4;
        for _ in 0..m {
            let mut verts: Vec<u32> = Vec::with_capacity(k);
            while verts.len() < k {
                let v = rng.random_range(1..=n as u32);
                if !verts.contains(&v) {
                    verts.push(v);
                }
            }
            if modgraph::are_isomorphic(&g.induced_by(&verts), h) {
                hits += 1;
            }
        }
        let falling: f64 = (0..k).map(|i| nf - i as f64).product();
        patterns.push(hits as f64 / m as f64 * falling / nf.powi(k as i32));
    }
    SampleStats {
        edge_density,
        class4,
        subtree,
        patterns,
    }
}

fn classify4(g: &LabeledGraph, verts: &[u32; 4], code_class: &[usize; 64]) -> usize {
    let mut code = 0u64;
    for i in 0..4 {
        for j in (i + 1)..4 {
            code = code << 1 | g.adj(verts[i], verts[j]) as u64;
        }
    }
    code_class[code as usize]
}

/// Occurrence-scaling experiment: estimates `E[Occ_H]·n^{β−|H|}` (labeled
/// equality) by uniform injections and reports it against the predicted
/// constant `K_H`.
pub fn run_scaling(
    class: &PrimeClass,
    pattern_name: &str,
    pattern: &LabeledGraph,
    injections: usize,
    cfg: &ExperimentConfig,
) -> Result<ExperimentReport> {
    let consts = solve_constants(class, 1e-10)?;
    let pred = predict_kh(pattern, &consts, class)?;
    let exponent = rational_to_f64(&pred.exponent);
    let k = pattern.size();
    let mut report = ExperimentReport::default();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()?;
    for (size_idx, &n) in cfg.sizes.iter().enumerate() {
        if n < k {
            bail!("size {n} is smaller than the pattern");
        }
        let cache = CountCache::build(class, n)?;
        let vals: Vec<f64> = pool.install(|| {
            (0..cfg.samples)
                .into_par_iter()
                .map(|i| {
                    let stream = RngStream::new(cfg.seed, (size_idx as u64) << 32 | i as u64);
                    let mut rng = stream.rng();
                    let tree = sample_uniform_tree(&cache, n, &mut rng).expect("size within order");
                    let g = graph_of(&tree);
                    let mut hits = 0usize;
                    let mut source = vec![0u32; k];
                    for _ in 0..injections {
                        let mut picked = 0;
                        while picked < k {
                            let v = rng.random_range(1..=n as u32);
                            if !source[..picked].contains(&v) {
                                source[picked] = v;
                                picked += 1;
                            }
                        }
                        // labeled equality: vertex source[i] plays label i+1
                        let mut ok = true;
                        'outer: for a in 0..k {
                            for b in (a + 1)..k {
                                if g.adj(source[a], source[b])
                                    != pattern.adj(a as u32 + 1, b as u32 + 1)
                                {
                                    ok = false;
                                    break 'outer;
                                }
                            }
                        }
                        hits += ok as usize;
                    }
                    let nf = n as f64;
                    let falling: f64 = (0..k).map(|i| nf - i as f64).product();
                    hits as f64 / injections as f64 * falling * nf.powf(-exponent)
                })
                .collect()
        });
        let (mean, se) = mean_stderr(vals.iter().copied(), cfg.samples);
        report.rows.push(ReportRow {
            size: n,
            statistic: format!("occ_scaling[{pattern_name}]"),
            empirical: mean,
            stderr: se,
            predicted: pred.k_h,
            flag: String::new(),
        });
    }
    Ok(report)
}

pub fn rational_to_f64(r: &num_rational::BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact per-sample occurrence count of a prime 4-vertex pattern from the
/// modular decomposition tree: every occurrence sits at a prime node, one
/// leaf in each of four children whose reduced decoration is isomorphic to
/// the pattern.
pub fn exact_prime4_occurrences(tree: &SubstitutionTree, pattern: &LabeledGraph, aut: u64) -> f64 {
    let mut total = 0f64;
    tree.walk_internal(&mut |_, node| {
        if let Some(Decoration::Prime(h)) = node.decoration() {
            let children = node.children().unwrap();
            let kk = children.len();
            let sizes: Vec<f64> = children.iter().map(|c| c.size() as f64).collect();
            // 4-subsets of children inducing the pattern in the decoration
            for a in 0..kk {
                for b in (a + 1)..kk {
                    for c in (b + 1)..kk {
                        for d in (c + 1)..kk {
                            let verts = [a as u32 + 1, b as u32 + 1, c as u32 + 1, d as u32 + 1];
                            if modgraph::are_isomorphic(&h.induced_by(&verts), pattern) {
                                total += sizes[a] * sizes[b] * sizes[c] * sizes[d];
                            }
                        }
                    }
                }
            }
        }
    });
    total * aut as f64
}

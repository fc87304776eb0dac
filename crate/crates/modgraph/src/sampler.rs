//! Exact uniform samplers for `𝒯_𝒫` / `𝒢_𝒫` at fixed size (recursive method
//! over big-integer count tables), the Brownian-cographon sampler, and
//! uniform random injections.
//!
//! Randomness comes from ChaCha12 keyed by a splitmix64 expansion of
//! `(seed, stream)`: identical pairs give identical output sequences on any
//! platform, distinct streams give independent-quality streams for parallel
//! workers.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::enumerate::Forbid;
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, PartialInjection};
use crate::mdtree::{graph_of, Decoration, SubstitutionTree};
use crate::prime::{factorial, PrimeClass, PrimeClassKind};

/// A reproducible random stream identified by `(seed, stream)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngStream { seed, stream }
    }

    pub fn rng(&self) -> ChaCha12Rng {
        let mut state =
            self.seed ^ 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(self.stream.wrapping_add(1));
        let mut next = || {
            state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            z ^ (z >> 31)
        };
        let mut seed_bytes = [0u8; 32];
        for i in 0..4 {
            seed_bytes[i * 8..(i + 1) * 8].copy_from_slice(&next().to_le_bytes());
        }
        ChaCha12Rng::from_seed(seed_bytes)
    }
}

/// Uniform `BigUint` in `[0, bound)` by rejection on the top limb.
pub fn uniform_below(rng: &mut impl RngCore, bound: &BigUint) -> BigUint {
    assert!(!bound.is_zero());
    if bound.is_one() {
        return BigUint::zero();
    }
    let bits = bound.bits();
    let limbs = bits.div_ceil(32) as usize;
    let top_mask = if bits % 32 == 0 {
        u32::MAX
    } else {
        (1u32 << (bits % 32)) - 1
    };
    loop {
        let mut digits = vec![0u32; limbs];
        for d in digits.iter_mut() {
            *d = rng.next_u32();
        }
        digits[limbs - 1] &= top_mask;
        let candidate = BigUint::new(digits);
        if &candidate < bound {
            return candidate;
        }
    }
}

/// Per-size big-integer counts for the tree grammar of a class.
///
/// `a[n]` counts trees whose root is not `⊕` (equal, by the decoration
/// involution, to the not-`⊖` count), `s[n]` counts all trees (equivalently
/// non-empty forests of not-`⊕` trees), `f[n] = s[n] − a[n]` counts
/// `⊕`-rooted (equivalently `⊖`-rooted) trees and `pr[n]` prime-rooted ones.
pub struct CountCache {
    class: PrimeClass,
    order: usize,
    a: Vec<BigUint>,
    s: Vec<BigUint>,
    f: Vec<BigUint>,
    pr: Vec<BigUint>,
    prime: PrimeTables,
}

enum PrimeTables {
    None,
    /// `seq[j][n] = n![zⁿ]Tʲ` for the prime arities of a finite class.
    Finite {
        arities: Vec<(usize, BigUint)>,
        seq: Vec<Vec<BigUint>>,
    },
    /// Paths: ordered powers up to 4 and `w = n![zⁿ] T⁴/(2(1−T))`.
    Paths {
        seq2: Vec<BigUint>,
        seq3: Vec<BigUint>,
        seq4: Vec<BigUint>,
        w: Vec<BigUint>,
    },
}

impl CountCache {
    pub fn build(class: &PrimeClass, order: usize) -> Result<CountCache> {
        assert!(order >= 1);
        let mut prime = match class.kind() {
            PrimeClassKind::FiniteExplicit(reps) => {
                let mut arities: Vec<(usize, BigUint)> = Vec::new();
                for r in reps {
                    let k = r.graph.size();
                    match arities.iter_mut().find(|(a, _)| *a == k) {
                        Some((_, c)) => *c += r.labelings.clone(),
                        None => arities.push((k, r.labelings.clone())),
                    }
                }
                arities.sort_by_key(|(k, _)| *k);
                if arities.is_empty() {
                    PrimeTables::None
                } else {
                    let kmax = arities.last().unwrap().0;
                    PrimeTables::Finite {
                        arities,
                        seq: vec![vec![BigUint::zero()]; kmax + 1],
                    }
                }
            }
            PrimeClassKind::BuiltinPaths => PrimeTables::Paths {
                seq2: vec![BigUint::zero()],
                seq3: vec![BigUint::zero()],
                seq4: vec![BigUint::zero()],
                w: vec![BigUint::zero()],
            },
            PrimeClassKind::Custom(_) => {
                return Err(Error::Refused(
                    "exact sampling needs a class that can list its labeled members".into(),
                ))
            }
        };
        let mut a = vec![BigUint::zero()];
        let mut s = vec![BigUint::zero()];
        let mut f = vec![BigUint::zero()];
        let mut pr = vec![BigUint::zero()];
        for n in 1..=order {
            // ordered-power tables use only s[i] for i < n
            match &mut prime {
                PrimeTables::None => {}
                PrimeTables::Finite { seq, .. } => {
                    let kmax = seq.len() - 1;
                    for j in 2..=kmax {
                        let v = if j == 2 {
                            binom_conv(&s, &s, n)
                        } else {
                            let (lo, _) = seq.split_at(j);
                            binom_conv(&s, &lo[j - 1], n)
                        };
                        seq[j].push(v);
                    }
                }
                PrimeTables::Paths {
                    seq2,
                    seq3,
                    seq4,
                    w,
                } => {
                    seq2.push(binom_conv(&s, &s, n));
                    seq3.push(binom_conv(&s, seq2, n));
                    seq4.push(binom_conv(&s, seq3, n));
                    let mut wn = &seq4[n] / BigUint::from(2u32);
                    wn += binom_conv(&s, w, n);
                    w.push(wn);
                }
            }
            let prn = match &prime {
                PrimeTables::None => BigUint::zero(),
                PrimeTables::Finite { arities, seq } => {
                    let mut acc = BigUint::zero();
                    for (k, cnt) in arities {
                        acc += cnt * &seq[*k][n] / factorial(*k);
                    }
                    acc
                }
                PrimeTables::Paths { w, .. } => w[n].clone(),
            };
            // conv = Σ_j C(n−1, j−1)·a[j]·s[n−j]: ⊕-rooted trees
            let mut conv = BigUint::zero();
            let mut binom = BigUint::one(); // C(n−1, j−1) at j = 1
            for j in 1..n {
                if !a[j].is_zero() && !s[n - j].is_zero() {
                    conv += &binom * &a[j] * &s[n - j];
                }
                binom = binom * BigUint::from((n - j) as u64) / BigUint::from(j as u64);
            }
            let an = if n == 1 {
                &conv + BigUint::one()
            } else {
                conv.clone()
            } + &prn;
            let sn = &an + &conv;
            a.push(an);
            s.push(sn);
            f.push(conv);
            pr.push(prn);
        }
        Ok(CountCache {
            class: class.clone(),
            order,
            a,
            s,
            f,
            pr,
            prime,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn class(&self) -> &PrimeClass {
        &self.class
    }

    /// Number of trees (= graphs) of the class with `n` leaves.
    pub fn tree_count(&self, n: usize) -> &BigUint {
        &self.s[n]
    }

    /// Number of trees whose root is not `⊕`.
    pub fn not_join_count(&self, n: usize) -> &BigUint {
        &self.a[n]
    }
}

/// `Σ_{i=1}^{n−1} C(n,i)·x[i]·y[n−i]`.
fn binom_conv(x: &[BigUint], y: &[BigUint], n: usize) -> BigUint {
    let mut acc = BigUint::zero();
    let mut binom = BigUint::from(n as u64); // C(n, 1)
    for i in 1..n {
        if i < x.len() && n - i < y.len() && !x[i].is_zero() && !y[n - i].is_zero() {
            acc += &binom * &x[i] * &y[n - i];
        }
        binom = binom * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64);
    }
    acc
}

/// Uniformly samples a tree of `𝒯_𝒫` with `n` leaves labeled `1..=n`.
pub fn sample_uniform_tree(
    cache: &CountCache,
    n: usize,
    rng: &mut impl RngCore,
) -> Result<SubstitutionTree> {
    if n == 0 || n > cache.order {
        return Err(Error::contract(format!(
            "size {n} outside 1..={}",
            cache.order
        )));
    }
    if cache.s[n].is_zero() {
        return Err(Error::NoObject(format!("no tree of size {n} in the class")));
    }
    let labels: Vec<u32> = (1..=n as u32).collect();
    Ok(sample_node(cache, labels, Forbid::None, rng))
}

/// Uniformly samples a graph of `𝒢_𝒫` with `n` vertices.
pub fn sample_uniform_graph(
    cache: &CountCache,
    n: usize,
    rng: &mut impl RngCore,
) -> Result<LabeledGraph> {
    Ok(graph_of(&sample_uniform_tree(cache, n, rng)?))
}

fn sample_node(
    cache: &CountCache,
    labels: Vec<u32>,
    forbid: Forbid,
    rng: &mut impl RngCore,
) -> SubstitutionTree {
    let m = labels.len();
    if m == 1 {
        return SubstitutionTree::Leaf(labels[0]);
    }
    let total = match forbid {
        Forbid::None => &cache.s[m],
        _ => &cache.a[m],
    };
    let mut u = uniform_below(rng, total);
    let fm = &cache.f[m];
    let root = 'root: {
        if forbid.allows(true) {
            if &u < fm {
                break 'root Decoration::Join;
            }
            u -= fm;
        }
        if forbid.allows(false) {
            if &u < fm {
                break 'root Decoration::Union;
            }
            u -= fm;
        }
        debug_assert!(u < cache.pr[m]);
        return sample_prime_rooted(cache, labels, rng);
    };
    let child_forbid = if root == Decoration::Join {
        Forbid::Join
    } else {
        Forbid::Union
    };
    let children = sample_forest(cache, labels, child_forbid, rng);
    SubstitutionTree::internal(root, children).unwrap()
}

/// Samples a uniform unordered forest (≥ 2 blocks) of not-`X` trees on the
/// given labels by repeatedly peeling the block that contains the smallest
/// remaining label.
fn sample_forest(
    cache: &CountCache,
    labels: Vec<u32>,
    child_forbid: Forbid,
    rng: &mut impl RngCore,
) -> Vec<SubstitutionTree> {
    let mut remaining = labels;
    let mut out = Vec::new();
    while !remaining.is_empty() {
        let m = remaining.len();
        let first = out.is_empty();
        if m == 1 {
            out.push(sample_node(
                cache,
                std::mem::take(&mut remaining),
                child_forbid,
                rng,
            ));
            break;
        }
        let (total, j_max) = if first {
            (cache.f[m].clone(), m - 1) // at least two blocks overall
        } else {
            (cache.s[m].clone(), m)
        };
        let u = uniform_below(rng, &total);
        let j = pick_min_block_size(cache, m, j_max, &u);
        let block = split_min_block(&mut remaining, j, rng);
        out.push(sample_node(cache, block, child_forbid, rng));
    }
    out
}

/// Chooses the size `j` of the block containing the minimal label, with
/// weight `C(m−1, j−1)·a[j]·s[m−j]` (`s[0] := 1`), scanning the candidates
/// from both ends where the mass concentrates.
fn pick_min_block_size(cache: &CountCache, m: usize, j_max: usize, u: &BigUint) -> usize {
    let weight = |j: usize, binom: &BigUint| -> BigUint {
        let rest = if m - j == 0 {
            BigUint::one()
        } else {
            cache.s[m - j].clone()
        };
        binom * &cache.a[j] * rest
    };
    // C(m−1, j−1) maintained incrementally on both scanning fronts
    let mut hi = j_max;
    let mut binom_hi = crate::prime::binomial(m - 1, j_max - 1);
    let mut lo = 1usize;
    let mut binom_lo = BigUint::one();
    let mut cum = BigUint::zero();
    let mut take_hi = true;
    loop {
        debug_assert!(lo <= hi, "weights exhausted before reaching u");
        let j = if take_hi { hi } else { lo };
        let w = if take_hi {
            weight(hi, &binom_hi)
        } else {
            weight(lo, &binom_lo)
        };
        cum += &w;
        if &cum > u {
            return j;
        }
        if take_hi {
            // step C(m−1, j−1) → C(m−1, j−2)
            if hi > lo {
                binom_hi =
                    &binom_hi * BigUint::from((hi - 1) as u64) / BigUint::from((m - hi + 1) as u64);
            }
            hi -= 1;
        } else {
            binom_lo = &binom_lo * BigUint::from((m - lo) as u64) / BigUint::from(lo as u64);
            lo += 1;
        }
        take_hi = !take_hi;
    }
}

/// Removes from `remaining` (sorted) a block of size `j` consisting of the
/// minimal label plus a uniform `(j−1)`-subset of the rest; both the block
/// and the remainder stay sorted.
fn split_min_block(remaining: &mut Vec<u32>, j: usize, rng: &mut impl RngCore) -> Vec<u32> {
    let m = remaining.len();
    debug_assert!(j >= 1 && j <= m);
    let mut idx: Vec<usize> = (1..m).collect();
    for i in 0..j - 1 {
        let pick = rng.random_range(i..idx.len());
        idx.swap(i, pick);
    }
    let mut chosen: Vec<usize> = idx[..j - 1].to_vec();
    chosen.push(0);
    chosen.sort_unstable();
    let mut block = Vec::with_capacity(j);
    let mut rest = Vec::with_capacity(m - j);
    let mut ci = 0;
    for (i, &l) in remaining.iter().enumerate() {
        if ci < chosen.len() && chosen[ci] == i {
            block.push(l);
            ci += 1;
        } else {
            rest.push(l);
        }
    }
    *remaining = rest;
    block
}

/// Uniform subset of the given size (all labels equally likely), removed
/// from `remaining`; both parts stay sorted.
fn split_uniform_subset(remaining: &mut Vec<u32>, j: usize, rng: &mut impl RngCore) -> Vec<u32> {
    let m = remaining.len();
    debug_assert!(j >= 1 && j <= m);
    let mut idx: Vec<usize> = (0..m).collect();
    for i in 0..j {
        let pick = rng.random_range(i..m);
        idx.swap(i, pick);
    }
    let mut chosen: Vec<usize> = idx[..j].to_vec();
    chosen.sort_unstable();
    let mut block = Vec::with_capacity(j);
    let mut rest = Vec::with_capacity(m - j);
    let mut ci = 0;
    for (i, &l) in remaining.iter().enumerate() {
        if ci < chosen.len() && chosen[ci] == i {
            block.push(l);
            ci += 1;
        } else {
            rest.push(l);
        }
    }
    *remaining = rest;
    block
}

fn sample_prime_rooted(
    cache: &CountCache,
    labels: Vec<u32>,
    rng: &mut impl RngCore,
) -> SubstitutionTree {
    let m = labels.len();
    let components: Vec<SubstitutionTree> = match &cache.prime {
        PrimeTables::None => unreachable!("prime-rooted weight is zero for the empty class"),
        PrimeTables::Finite { arities, seq } => {
            let mut u = uniform_below(rng, &cache.pr[m]);
            let mut chosen_k = None;
            for (k, cnt) in arities {
                let w = cnt * &seq[*k][m] / factorial(*k);
                if u < w {
                    chosen_k = Some(*k);
                    break;
                }
                u -= w;
            }
            let k = chosen_k.expect("weights sum to pr[m]");
            sample_ordered_seq(cache, labels, k, &|j| &seq[j], rng)
        }
        PrimeTables::Paths {
            seq2,
            seq3,
            seq4,
            w,
        } => {
            // W = T⁴/2 + T·W: peel leading factors until the terminal
            // four-component block.
            let mut comps = Vec::new();
            let mut remaining = labels;
            loop {
                let mp = remaining.len();
                let mut u = uniform_below(rng, &w[mp]);
                let terminal = &seq4[mp] / BigUint::from(2u32);
                if u < terminal {
                    let tables = |j: usize| -> &[BigUint] {
                        match j {
                            2 => seq2,
                            3 => seq3,
                            4 => seq4,
                            _ => unreachable!(),
                        }
                    };
                    comps.extend(sample_ordered_seq(cache, remaining, 4, &tables, rng));
                    break;
                }
                u -= terminal;
                // continuation: leading factor of size i with weight
                // C(mp,i)·s[i]·w[mp−i]; at least 4 labels must remain
                let i = pick_seq_split(&cache.s, w, mp, mp - 4, &u);
                let block = split_uniform_subset(&mut remaining, i, rng);
                comps.push(sample_node(cache, block, Forbid::None, rng));
            }
            comps
        }
    };
    let k = components.len();
    let decoration = sample_decoration(&cache.class, k, rng);
    SubstitutionTree::internal(Decoration::Prime(decoration), components).unwrap()
}

/// Ordered sequence of `k` trees over `labels`, peeled factor by factor;
/// `seq(j)` is the count table of ordered `j`-sequences.
fn sample_ordered_seq<'a>(
    cache: &CountCache,
    labels: Vec<u32>,
    k: usize,
    seq: &dyn Fn(usize) -> &'a [BigUint],
    rng: &mut impl RngCore,
) -> Vec<SubstitutionTree> {
    let mut remaining = labels;
    let mut out = Vec::with_capacity(k);
    for j in (2..=k).rev() {
        let mp = remaining.len();
        let tail: &[BigUint] = if j - 1 == 1 { &cache.s } else { seq(j - 1) };
        let u = uniform_below(rng, &seq(j)[mp]);
        let i = pick_seq_split(&cache.s, tail, mp, mp - (j - 1), &u);
        let block = split_uniform_subset(&mut remaining, i, rng);
        out.push(sample_node(cache, block, Forbid::None, rng));
    }
    out.push(sample_node(cache, remaining, Forbid::None, rng));
    out
}

/// Chooses the first-factor size `i` with weight `C(m,i)·s[i]·tail[m−i]`,
/// scanning from both ends; `i ≤ i_max` keeps the remaining factors
/// non-empty.
fn pick_seq_split(s: &[BigUint], tail: &[BigUint], m: usize, i_max: usize, u: &BigUint) -> usize {
    let weight = |i: usize, binom: &BigUint| -> BigUint {
        if i >= s.len() || m - i >= tail.len() {
            return BigUint::zero();
        }
        binom * &s[i] * &tail[m - i]
    };
    let mut hi = i_max;
    let mut binom_hi = crate::prime::binomial(m, i_max);
    let mut lo = 1usize;
    let mut binom_lo = BigUint::from(m as u64);
    let mut cum = BigUint::zero();
    let mut take_hi = true;
    loop {
        debug_assert!(lo <= hi, "sequence-split weights exhausted");
        let (i, w) = if take_hi {
            (hi, weight(hi, &binom_hi))
        } else {
            (lo, weight(lo, &binom_lo))
        };
        cum += &w;
        if &cum > u {
            return i;
        }
        if take_hi {
            if hi > lo {
                binom_hi =
                    &binom_hi * BigUint::from(hi as u64) / BigUint::from((m - hi + 1) as u64);
            }
            hi -= 1;
        } else {
            binom_lo = &binom_lo * BigUint::from((m - lo) as u64) / BigUint::from((lo + 1) as u64);
            lo += 1;
        }
        take_hi = !take_hi;
    }
}

/// Uniform labeled member of `𝒫_k` (a decoration for a prime root).
fn sample_decoration(class: &PrimeClass, k: usize, rng: &mut impl RngCore) -> LabeledGraph {
    match class.kind() {
        PrimeClassKind::FiniteExplicit(reps) => {
            let total: BigUint = reps
                .iter()
                .filter(|r| r.graph.size() == k)
                .map(|r| r.labelings.clone())
                .sum();
            let mut u = uniform_below(rng, &total);
            for r in reps.iter().filter(|r| r.graph.size() == k) {
                if u < r.labelings {
                    // uniform relabeling: a uniform permutation hits every
                    // distinct labeling |Aut| times
                    let perm = uniform_permutation(k, rng);
                    let mut h = LabeledGraph::empty(k);
                    for (u1, v1) in r.graph.edges() {
                        h.set_edge(perm[(u1 - 1) as usize], perm[(v1 - 1) as usize], true);
                    }
                    return h;
                }
                u -= &r.labelings;
            }
            unreachable!("labelings sum to the total")
        }
        PrimeClassKind::BuiltinPaths => {
            let perm = uniform_permutation(k, rng);
            let edges: Vec<(u32, u32)> = perm
                .windows(2)
                .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
                .collect();
            LabeledGraph::from_edges(k, &edges).unwrap()
        }
        PrimeClassKind::Custom(_) => unreachable!("custom classes are rejected at build time"),
    }
}

fn uniform_permutation(k: usize, rng: &mut impl RngCore) -> Vec<u32> {
    let mut v: Vec<u32> = (1..=k as u32).collect();
    for i in (1..k).rev() {
        let j = rng.random_range(0..=i);
        v.swap(i, j);
    }
    v
}

/// Samples `Graph(b_k^p)`: a uniform leaf-labeled non-plane binary tree with
/// `k` leaves grown by sequential leaf insertion (one of the `2j−3` edges,
/// counting the position above the root), with i.i.d. `⊕` decorations of
/// probability `p`. The output is always a cograph.
pub fn sample_brownian_cographon(k: usize, p: f64, rng: &mut impl RngCore) -> LabeledGraph {
    assert!(k >= 1);
    assert!((0.0..=1.0).contains(&p));
    graph_of(&sample_decorated_binary_tree(k, p, rng))
}

/// The decorated binary tree behind [`sample_brownian_cographon`].
pub fn sample_decorated_binary_tree(k: usize, p: f64, rng: &mut impl RngCore) -> SubstitutionTree {
    if k == 1 {
        return SubstitutionTree::Leaf(1);
    }
    enum Node {
        Leaf(u32),
        Internal { join: bool, a: usize, b: usize },
    }
    let mut nodes: Vec<Node> = vec![Node::Leaf(1), Node::Leaf(2)];
    let mut parent: Vec<usize> = vec![2, 2, usize::MAX];
    nodes.push(Node::Internal {
        join: rng.random_bool(p),
        a: 0,
        b: 1,
    });
    let mut root = 2usize;
    let mut non_root: Vec<usize> = vec![0, 1];
    for label in 3..=k as u32 {
        let leaf = nodes.len();
        nodes.push(Node::Leaf(label));
        parent.push(usize::MAX);
        let pos = rng.random_range(0..=non_root.len());
        let join = rng.random_bool(p);
        if pos == non_root.len() {
            // new node above the root
            let m = nodes.len();
            nodes.push(Node::Internal {
                join,
                a: root,
                b: leaf,
            });
            parent.push(usize::MAX);
            parent[root] = m;
            parent[leaf] = m;
            non_root.push(root);
            non_root.push(leaf);
            root = m;
        } else {
            let c = non_root[pos];
            let par = parent[c];
            let m = nodes.len();
            nodes.push(Node::Internal {
                join,
                a: c,
                b: leaf,
            });
            parent.push(par);
            match &mut nodes[par] {
                Node::Internal { a, b, .. } => {
                    if *a == c {
                        *a = m;
                    } else {
                        debug_assert_eq!(*b, c);
                        *b = m;
                    }
                }
                Node::Leaf(_) => unreachable!(),
            }
            parent[c] = m;
            parent[leaf] = m;
            non_root.push(m);
            non_root.push(leaf);
        }
    }
    fn build(nodes: &[Node], i: usize) -> SubstitutionTree {
        match &nodes[i] {
            Node::Leaf(l) => SubstitutionTree::Leaf(*l),
            Node::Internal { join, a, b } => {
                let dec = if *join {
                    Decoration::Join
                } else {
                    Decoration::Union
                };
                SubstitutionTree::internal(dec, vec![build(nodes, *a), build(nodes, *b)]).unwrap()
            }
        }
    }
    build(&nodes, root)
}

/// Uniform partial injection from `{1..=n}` with image exactly `{1..=ℓ}`.
pub fn sample_injection(n: usize, ell: usize, rng: &mut impl RngCore) -> Result<PartialInjection> {
    if ell > n || ell == 0 {
        return Err(Error::contract(format!(
            "need 1 ≤ ℓ ≤ n, got ℓ={ell}, n={n}"
        )));
    }
    let mut v: Vec<u32> = (1..=n as u32).collect();
    let mut pairs = Vec::with_capacity(ell);
    for i in 0..ell {
        let j = rng.random_range(i..n);
        v.swap(i, j);
        pairs.push((v[i], i as u32 + 1));
    }
    PartialInjection::from_pairs(&pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mdtree::{beta_of_md_tree, is_in_class, modular_decomposition};
    use crate::series::solve_tree_series;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    #[test]
    fn cache_counts_match_series() {
        for class in [PrimeClass::empty(), PrimeClass::p4(), PrimeClass::paths()] {
            let cache = CountCache::build(&class, 24).unwrap();
            let bundle = solve_tree_series(&class, 24).unwrap();
            for n in 1..=24usize {
                assert_eq!(
                    BigInt::from(cache.tree_count(n).clone()),
                    bundle.t.count(n),
                    "t, n={n}"
                );
                assert_eq!(
                    BigInt::from(cache.not_join_count(n).clone()),
                    bundle.t_not_join.count(n),
                    "a, n={n}"
                );
            }
        }
    }

    #[test]
    fn sampler_is_deterministic() {
        let cache = CountCache::build(&PrimeClass::paths(), 40).unwrap();
        let t1 = sample_uniform_tree(&cache, 40, &mut RngStream::new(7, 3).rng()).unwrap();
        let cache2 = CountCache::build(&PrimeClass::paths(), 40).unwrap();
        let t2 = sample_uniform_tree(&cache2, 40, &mut RngStream::new(7, 3).rng()).unwrap();
        assert_eq!(t1, t2);
        let t3 = sample_uniform_tree(&cache, 40, &mut RngStream::new(7, 4).rng()).unwrap();
        assert_ne!(t1, t3);
    }

    #[test]
    fn single_leaf() {
        let cache = CountCache::build(&PrimeClass::empty(), 2).unwrap();
        let t = sample_uniform_tree(&cache, 1, &mut RngStream::new(0, 0).rng()).unwrap();
        assert_eq!(t, SubstitutionTree::Leaf(1));
    }

    #[test]
    fn samples_are_valid_class_trees() {
        for class in [PrimeClass::p4(), PrimeClass::paths()] {
            let cache = CountCache::build(&class, 14).unwrap();
            let mut rng = RngStream::new(11, 0).rng();
            for i in 0..400 {
                let n = 2 + (i % 13);
                let t = sample_uniform_tree(&cache, n, &mut rng).unwrap();
                assert!(t.is_reduced());
                assert!(t.is_md_tree());
                let g = graph_of(&t);
                assert!(is_in_class(&g, &class));
                assert_eq!(modular_decomposition(&g), t);
            }
        }
    }

    #[test]
    fn size_two_is_a_fair_coin() {
        let cache = CountCache::build(&PrimeClass::paths(), 4).unwrap();
        let mut rng = RngStream::new(5, 0).rng();
        let mut edges = 0u32;
        let draws = 20_000;
        for _ in 0..draws {
            let g = sample_uniform_graph(&cache, 2, &mut rng).unwrap();
            edges += g.edge_count() as u32;
        }
        let freq = edges as f64 / draws as f64;
        assert!((freq - 0.5).abs() < 0.015, "edge frequency {freq}");
    }

    #[test]
    fn uniformity_over_labeled_cographs_of_size_4() {
        // quick version of the acceptance chi-square: 52 cographs
        let class = PrimeClass::empty();
        let cache = CountCache::build(&class, 4).unwrap();
        let mut targets: Vec<LabeledGraph> = Vec::new();
        crate::enumerate::for_each_graph(4, |g| {
            if is_in_class(g, &class) {
                targets.push(g.clone());
            }
        });
        assert_eq!(targets.len(), 52);
        let mut counts = vec![0u32; targets.len()];
        let draws = 26_000;
        let mut rng = RngStream::new(1, 0).rng();
        for _ in 0..draws {
            let g = sample_uniform_graph(&cache, 4, &mut rng).unwrap();
            let idx = targets.iter().position(|t| *t == g).unwrap();
            counts[idx] += 1;
        }
        let expect = draws as f64 / targets.len() as f64;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expect).powi(2) / expect)
            .sum();
        // 0.9999 quantile of χ²(51) ≈ 97.0; quick guard, the acceptance
        // suite runs the calibrated 10⁵-draw test
        assert!(chi2 < 100.0, "chi2 = {chi2}");
    }

    #[test]
    fn p4_frequency_at_size_4() {
        let class = PrimeClass::p4();
        let cache = CountCache::build(&class, 4).unwrap();
        let mut rng = RngStream::new(2, 0).rng();
        let draws = 20_000;
        let mut hits = 0u32;
        for _ in 0..draws {
            let t = sample_uniform_tree(&cache, 4, &mut rng).unwrap();
            if matches!(t.decoration(), Some(Decoration::Prime(_))) {
                hits += 1;
            }
        }
        let freq = hits as f64 / draws as f64;
        let expect = 12.0 / 64.0;
        let sigma = (expect * (1.0 - expect) / draws as f64).sqrt();
        assert!(
            (freq - expect).abs() < 4.0 * sigma,
            "freq {freq} vs {expect}"
        );
    }

    #[test]
    fn brownian_sampler_basics() {
        let mut rng = RngStream::new(3, 0).rng();
        // k = 2: edge with probability p
        let p = 0.3;
        let draws = 20_000;
        let mut edges = 0u32;
        for _ in 0..draws {
            edges += sample_brownian_cographon(2, p, &mut rng).edge_count() as u32;
        }
        let freq = edges as f64 / draws as f64;
        let sigma = (p * (1.0 - p) / draws as f64).sqrt();
        assert!((freq - p).abs() < 4.0 * sigma);
        // triangles come out with probability p²
        let mut tri = 0u32;
        for _ in 0..draws {
            let g = sample_brownian_cographon(3, p, &mut rng);
            if g.edge_count() == 3 {
                tri += 1;
            }
        }
        let freq = tri as f64 / draws as f64;
        let expect = p * p;
        let sigma = (expect * (1.0 - expect) / draws as f64).sqrt();
        assert!((freq - expect).abs() < 4.0 * sigma, "{freq} vs {expect}");
        // outputs are always cographs
        for _ in 0..200 {
            let g = sample_brownian_cographon(20, 0.41, &mut rng);
            assert!(beta_of_md_tree(&modular_decomposition(&g)).is_zero());
        }
    }

    #[test]
    fn binary_tree_insertion_is_uniform() {
        // k = 3: three shapes, each 1/3
        let mut rng = RngStream::new(9, 0).rng();
        let draws = 15_000;
        let mut counts = std::collections::HashMap::new();
        for _ in 0..draws {
            let t = sample_decorated_binary_tree(3, 0.0, &mut rng);
            *counts.entry(format!("{t:?}")).or_insert(0u32) += 1;
        }
        assert_eq!(counts.len(), 3);
        for (_, c) in counts {
            let freq = c as f64 / draws as f64;
            assert!((freq - 1.0 / 3.0).abs() < 0.02);
        }
    }

    #[test]
    fn injection_sampler() {
        let mut rng = RngStream::new(4, 0).rng();
        // ℓ = n gives a permutation
        let inj = sample_injection(5, 5, &mut rng).unwrap();
        assert_eq!(inj.len(), 5);
        assert!(inj.image_is_initial_range());
        // ℓ > n rejected
        assert!(sample_injection(3, 4, &mut rng).is_err());
        // marginal frequency of each domain element ≈ ℓ/n
        let (n, ell, draws) = (10, 3, 30_000);
        let mut freq = vec![0u32; n + 1];
        for _ in 0..draws {
            for a in sample_injection(n, ell, &mut rng).unwrap().domain() {
                freq[a as usize] += 1;
            }
        }
        let expect = draws as f64 * ell as f64 / n as f64;
        let sigma = (draws as f64 * (ell as f64 / n as f64) * (1.0 - ell as f64 / n as f64)).sqrt();
        for a in 1..=n {
            assert!((freq[a] as f64 - expect).abs() < 4.0 * sigma, "label {a}");
        }
    }

    #[test]
    fn exact_uniformity_over_trees_of_size_5() {
        // full-distribution check against the enumerated tree list
        let class = PrimeClass::p4();
        let cache = CountCache::build(&class, 5).unwrap();
        let labels: Vec<u32> = (1..=5).collect();
        let mut all: Vec<SubstitutionTree> = Vec::new();
        crate::enumerate::for_each_tree(&class, &labels, Forbid::None, &mut |t| {
            all.push(t.clone())
        });
        assert_eq!(
            BigInt::from(cache.tree_count(5).clone()).to_u64().unwrap(),
            all.len() as u64
        );
        let mut counts = vec![0u32; all.len()];
        let draws = 40_000usize;
        let mut rng = RngStream::new(12, 0).rng();
        for _ in 0..draws {
            let t = sample_uniform_tree(&cache, 5, &mut rng).unwrap();
            let idx = all.iter().position(|x| *x == t).unwrap();
            counts[idx] += 1;
        }
        let expect = draws as f64 / all.len() as f64;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expect).powi(2) / expect)
            .sum();
        // dof = all.len()−1 (832 trees): generous 0.9999-style bound
        let dof = (all.len() - 1) as f64;
        assert!(
            chi2 < dof + 5.0 * (2.0 * dof).sqrt(),
            "chi2 = {chi2}, dof = {dof}"
        );
    }
}

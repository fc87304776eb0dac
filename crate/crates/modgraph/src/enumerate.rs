//! Exhaustive enumerators for small graphs and trees. These drive the
//! brute-force oracles of the test and verification suites.

use crate::graph::{are_isomorphic, LabeledGraph};
use crate::mdtree::{Decoration, SubstitutionTree};
use crate::prime::{PrimeClass, PrimeClassKind};

/// Calls `f` for every labeled graph on `n` vertices (all `2^(n(n-1)/2)`).
pub fn for_each_graph(n: usize, mut f: impl FnMut(&LabeledGraph)) {
    let bits = n * (n - 1) / 2;
    assert!(bits <= 63, "enumeration is for small n");
    for mask in 0u64..(1 << bits) {
        let mut g = LabeledGraph::empty(n);
        let mut b = 0;
        for u in 1..=n as u32 {
            for v in (u + 1)..=n as u32 {
                if mask >> b & 1 == 1 {
                    g.set_edge(u, v, true);
                }
                b += 1;
            }
        }
        f(&g);
    }
}

/// Root restriction for tree enumeration and sampling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Forbid {
    None,
    Join,
    Union,
}

impl Forbid {
    pub fn allows(&self, dec_is_join: bool) -> bool {
        match self {
            Forbid::None => true,
            Forbid::Join => !dec_is_join,
            Forbid::Union => dec_is_join,
        }
    }
}

/// All labeled members of `𝒫_k`, when the class can list them.
pub fn all_labeled_members(class: &PrimeClass, k: usize) -> Option<Vec<LabeledGraph>> {
    match class.kind() {
        PrimeClassKind::FiniteExplicit(reps) => {
            let mut out = Vec::new();
            for rep in reps.iter().filter(|r| r.graph.size() == k) {
                out.extend(all_relabelings(&rep.graph));
            }
            Some(out)
        }
        PrimeClassKind::BuiltinPaths => {
            if k < 4 {
                return Some(Vec::new());
            }
            // every labeled path appears once: enumerate vertex orders with
            // first endpoint smaller than the last to kill the reversal
            let mut out = Vec::new();
            let mut perm: Vec<u32> = (1..=k as u32).collect();
            permute(&mut perm, 0, &mut |p| {
                if p[0] < p[k - 1] {
                    let edges: Vec<(u32, u32)> = p
                        .windows(2)
                        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
                        .collect();
                    out.push(LabeledGraph::from_edges(k, &edges).unwrap());
                }
            });
            Some(out)
        }
        PrimeClassKind::Custom(_) => None,
    }
}

/// Distinct relabelings of a graph (its isomorphism class as labeled graphs).
pub fn all_relabelings(g: &LabeledGraph) -> Vec<LabeledGraph> {
    let n = g.size();
    let mut out: Vec<LabeledGraph> = Vec::new();
    let mut perm: Vec<u32> = (1..=n as u32).collect();
    permute(&mut perm, 0, &mut |p| {
        let mut h = LabeledGraph::empty(n);
        for u in 1..=n as u32 {
            for v in (u + 1)..=n as u32 {
                if g.adj(u, v) {
                    h.set_edge(p[(u - 1) as usize], p[(v - 1) as usize], true);
                }
            }
        }
        if !out.contains(&h) {
            out.push(h);
        }
    });
    out
}

fn permute(items: &mut [u32], k: usize, f: &mut impl FnMut(&[u32])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Calls `f` for every tree of the class on the given leaf labels whose root
/// decoration is allowed by `forbid`. Panics if the class cannot list its
/// labeled members.
pub fn for_each_tree(
    class: &PrimeClass,
    labels: &[u32],
    forbid: Forbid,
    f: &mut dyn FnMut(&SubstitutionTree),
) {
    let n = labels.len();
    assert!(n >= 1);
    if n == 1 {
        f(&SubstitutionTree::Leaf(labels[0]));
        return;
    }
    // linear roots: set partitions into ≥ 2 blocks, children avoiding the
    // root decoration
    for dec in [Decoration::Join, Decoration::Union] {
        if !forbid.allows(dec == Decoration::Join) {
            continue;
        }
        let child_forbid = if dec == Decoration::Join {
            Forbid::Join
        } else {
            Forbid::Union
        };
        for_each_partition(labels, 2, usize::MAX, &mut |blocks| {
            build_children(
                class,
                blocks,
                child_forbid,
                &mut Vec::new(),
                &mut |children| {
                    let t = SubstitutionTree::internal(dec.clone(), children.to_vec()).unwrap();
                    f(&t);
                },
            );
        });
    }
    // prime roots of every feasible size
    for k in 4..=n {
        let members =
            all_labeled_members(class, k).expect("tree enumeration needs a listable class");
        if members.is_empty() {
            continue;
        }
        for_each_partition(labels, k, k, &mut |blocks| {
            for h in &members {
                build_children(
                    class,
                    blocks,
                    Forbid::None,
                    &mut Vec::new(),
                    &mut |children| {
                        let t = SubstitutionTree::internal(
                            Decoration::Prime(h.clone()),
                            children.to_vec(),
                        )
                        .unwrap();
                        f(&t);
                    },
                );
            }
        });
    }
}

/// Product over blocks of all child trees.
fn build_children(
    class: &PrimeClass,
    blocks: &[Vec<u32>],
    forbid: Forbid,
    acc: &mut Vec<SubstitutionTree>,
    f: &mut dyn FnMut(&[SubstitutionTree]),
) {
    if acc.len() == blocks.len() {
        f(acc);
        return;
    }
    let i = acc.len();
    let mut subs = Vec::new();
    for_each_tree(class, &blocks[i], forbid, &mut |t| subs.push(t.clone()));
    for t in subs {
        acc.push(t);
        build_children(class, blocks, forbid, acc, f);
        acc.pop();
    }
}

/// Set partitions of `labels` with block count in `[min_blocks, max_blocks]`;
/// blocks are produced in min-label order.
pub fn for_each_partition(
    labels: &[u32],
    min_blocks: usize,
    max_blocks: usize,
    f: &mut dyn FnMut(&[Vec<u32>]),
) {
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    fn rec(
        labels: &[u32],
        i: usize,
        blocks: &mut Vec<Vec<u32>>,
        min_blocks: usize,
        max_blocks: usize,
        f: &mut dyn FnMut(&[Vec<u32>]),
    ) {
        if i == labels.len() {
            if blocks.len() >= min_blocks && blocks.len() <= max_blocks {
                f(blocks);
            }
            return;
        }
        // remaining items can only add at most (len - i) new blocks
        let remaining = labels.len() - i;
        for b in 0..blocks.len() {
            blocks[b].push(labels[i]);
            if blocks.len() + remaining - 1 >= min_blocks {
                rec(labels, i + 1, blocks, min_blocks, max_blocks, f);
            }
            blocks[b].pop();
        }
        if blocks.len() < max_blocks {
            blocks.push(vec![labels[i]]);
            rec(labels, i + 1, blocks, min_blocks, max_blocks, f);
            blocks.pop();
        }
    }
    rec(labels, 0, &mut blocks, min_blocks, max_blocks, f);
}

/// Representatives of unlabeled isomorphism classes of graphs on `n`
/// vertices.
pub fn iso_class_representatives(n: usize) -> Vec<LabeledGraph> {
    let mut reps: Vec<LabeledGraph> = Vec::new();
    for_each_graph(n, |g| {
        if !reps.iter().any(|r| are_isomorphic(r, g)) {
            reps.push(g.clone());
        }
    });
    reps
}

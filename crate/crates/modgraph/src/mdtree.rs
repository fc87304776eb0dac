//! Substitution trees, `Graph(t)`, the modular decomposition tree, induced
//! subtrees, inflation, expanded trees and `β(G)`.
//!
//! Trees are non-plane: children of a node are kept sorted by their minimal
//! leaf label, which makes structural equality coincide with equality of
//! non-plane decorated trees. For a node decorated with a prime graph `H`,
//! the `i`-th child in this order is substituted into the vertex of `H`
//! labeled `i`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, LabeledGraph, PartialInjection};

/// Decoration of an internal node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoration {
    /// `⊕`: complete quotient (join).
    Join,
    /// `⊖`: edgeless quotient (disjoint union).
    Union,
    /// Prime quotient.
    Prime(LabeledGraph),
}

impl Decoration {
    pub fn is_linear(&self) -> bool {
        matches!(self, Decoration::Join | Decoration::Union)
    }

    /// The decoration as a labeled graph on `k` vertices (`k` = child count).
    pub fn as_graph(&self, k: usize) -> LabeledGraph {
        match self {
            Decoration::Join => LabeledGraph::complete(k),
            Decoration::Union => LabeledGraph::empty(k),
            Decoration::Prime(h) => h.clone(),
        }
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        match self {
            Decoration::Join => true,
            Decoration::Union => false,
            Decoration::Prime(h) => h.adj(i as u32 + 1, j as u32 + 1),
        }
    }

    /// Flips `⊕ ↔ ⊖`, leaving primes untouched.
    pub fn flipped(&self) -> Decoration {
        match self {
            Decoration::Join => Decoration::Union,
            Decoration::Union => Decoration::Join,
            Decoration::Prime(h) => Decoration::Prime(h.clone()),
        }
    }
}

/// Rooted non-plane leaf-labeled tree with `⊕`/`⊖`/prime decorations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubstitutionTree {
    Leaf(u32),
    Internal {
        dec: Decoration,
        children: Vec<SubstitutionTree>,
        min_label: u32,
        leaves: usize,
    },
}

impl SubstitutionTree {
    pub fn leaf(label: u32) -> Self {
        assert!(label >= 1, "leaf labels are positive");
        SubstitutionTree::Leaf(label)
    }

    /// Builds an internal node, sorting children by minimal leaf label and
    /// checking the arity constraints. A graph decoration that is complete
    /// (resp. edgeless) is the same decoration as `⊕` (resp. `⊖`) and is
    /// canonicalized to it, so tree equality matches equality of non-plane
    /// decorated trees.
    pub fn internal(dec: Decoration, mut children: Vec<SubstitutionTree>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::contract("internal nodes need at least 2 children"));
        }
        let dec = match dec {
            Decoration::Prime(h) => {
                if h.size() != children.len() {
                    return Err(Error::contract(format!(
                        "graph decoration of size {} on a node with {} children",
                        h.size(),
                        children.len()
                    )));
                }
                let k = h.size();
                match h.edge_count() {
                    0 => Decoration::Union,
                    e if e == k * (k - 1) / 2 => Decoration::Join,
                    _ => Decoration::Prime(h),
                }
            }
            d => d,
        };
        children.sort_by_key(|c| c.min_label());
        if children
            .windows(2)
            .any(|w| w[0].min_label() == w[1].min_label())
        {
            return Err(Error::contract("duplicate leaf labels across children"));
        }
        let min_label = children[0].min_label();
        let leaves = children.iter().map(|c| c.size()).sum();
        Ok(SubstitutionTree::Internal {
            dec,
            children,
            min_label,
            leaves,
        })
    }

    /// Convenience constructors for small linear trees, used heavily in tests.
    pub fn join_of(children: Vec<SubstitutionTree>) -> Self {
        Self::internal(Decoration::Join, children).unwrap()
    }

    pub fn union_of(children: Vec<SubstitutionTree>) -> Self {
        Self::internal(Decoration::Union, children).unwrap()
    }

    pub fn min_label(&self) -> u32 {
        match self {
            SubstitutionTree::Leaf(l) => *l,
            SubstitutionTree::Internal { min_label, .. } => *min_label,
        }
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        match self {
            SubstitutionTree::Leaf(_) => 1,
            SubstitutionTree::Internal { leaves, .. } => *leaves,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, SubstitutionTree::Leaf(_))
    }

    pub fn decoration(&self) -> Option<&Decoration> {
        match self {
            SubstitutionTree::Leaf(_) => None,
            SubstitutionTree::Internal { dec, .. } => Some(dec),
        }
    }

    pub fn children(&self) -> Option<&[SubstitutionTree]> {
        match self {
            SubstitutionTree::Leaf(_) => None,
            SubstitutionTree::Internal { children, .. } => Some(children),
        }
    }

    pub fn leaf_labels(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.size());
        self.collect_labels(&mut out);
        out.sort_unstable();
        out
    }

    fn collect_labels(&self, out: &mut Vec<u32>) {
        match self {
            SubstitutionTree::Leaf(l) => out.push(*l),
            SubstitutionTree::Internal { children, .. } => {
                for c in children {
                    c.collect_labels(out);
                }
            }
        }
    }

    /// Leaf labels are exactly `{1..=n}`.
    pub fn is_reduced(&self) -> bool {
        let labels = self.leaf_labels();
        labels.iter().enumerate().all(|(i, &l)| l == i as u32 + 1)
    }

    /// Number of tree edges (sum of child counts over internal nodes).
    pub fn edge_count(&self) -> usize {
        match self {
            SubstitutionTree::Leaf(_) => 0,
            SubstitutionTree::Internal { children, .. } => {
                children.len() + children.iter().map(|c| c.edge_count()).sum::<usize>()
            }
        }
    }

    /// Node at a child-index path (indices into the canonical child order).
    pub fn node_at(&self, path: &[usize]) -> Option<&SubstitutionTree> {
        let mut cur = self;
        for &i in path {
            cur = cur.children()?.get(i)?;
        }
        Some(cur)
    }

    /// Structural and label validity: distinct leaf labels, arities as
    /// constructed. With `deep`, also checks prime decorations for primality.
    pub fn validate(&self, deep: bool) -> Result<()> {
        let labels = self.leaf_labels();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::contract("duplicate leaf labels"));
        }
        self.validate_rec(deep)
    }

    fn validate_rec(&self, deep: bool) -> Result<()> {
        if let SubstitutionTree::Internal { dec, children, .. } = self {
            if children.len() < 2 {
                return Err(Error::contract("internal node with fewer than 2 children"));
            }
            if let Decoration::Prime(h) = dec {
                if h.size() != children.len() {
                    return Err(Error::contract("prime decoration size mismatch"));
                }
                if deep && !h.is_prime() {
                    return Err(Error::contract("non-prime decoration on non-linear node"));
                }
            }
            for c in children {
                c.validate_rec(deep)?;
            }
        }
        Ok(())
    }

    /// Modular-decomposition-tree validity: no `⊕` child of a `⊕` node, no
    /// `⊖` child of a `⊖` node, and all non-linear decorations prime.
    pub fn is_md_tree(&self) -> bool {
        match self {
            SubstitutionTree::Leaf(_) => true,
            SubstitutionTree::Internal { dec, children, .. } => {
                if let Decoration::Prime(h) = dec {
                    if !h.is_prime() {
                        return false;
                    }
                }
                children.iter().all(|c| {
                    let clash = match (dec, c.decoration()) {
                        (Decoration::Join, Some(Decoration::Join)) => true,
                        (Decoration::Union, Some(Decoration::Union)) => true,
                        _ => false,
                    };
                    !clash && c.is_md_tree()
                })
            }
        }
    }

    /// The `⊕ ↔ ⊖` involution on decorations.
    pub fn flip_linear(&self) -> SubstitutionTree {
        match self {
            SubstitutionTree::Leaf(l) => SubstitutionTree::Leaf(*l),
            SubstitutionTree::Internal {
                dec,
                children,
                min_label,
                leaves,
            } => SubstitutionTree::Internal {
                dec: dec.flipped(),
                children: children.iter().map(|c| c.flip_linear()).collect(),
                min_label: *min_label,
                leaves: *leaves,
            },
        }
    }

    /// Preorder walk over internal nodes: `f(path, node)`.
    pub fn walk_internal(&self, f: &mut impl FnMut(&[usize], &SubstitutionTree)) {
        fn rec(
            t: &SubstitutionTree,
            path: &mut Vec<usize>,
            f: &mut impl FnMut(&[usize], &SubstitutionTree),
        ) {
            if let Some(children) = t.children() {
                f(path, t);
                for (i, c) in children.iter().enumerate() {
                    path.push(i);
                    rec(c, path, f);
                    path.pop();
                }
            }
        }
        rec(self, &mut Vec::new(), f);
    }
}

/// `Graph(t)`: expands the decorations by graph substitution. Requires a
/// reduced tree (leaf labels exactly `{1..=n}`); leaf `j` becomes vertex `j`.
pub fn graph_of(t: &SubstitutionTree) -> LabeledGraph {
    assert!(t.is_reduced(), "graph_of needs a reduced tree");
    let n = t.size();
    let mut g = LabeledGraph::empty(n);
    fn fill(t: &SubstitutionTree, g: &mut LabeledGraph, out: &mut Vec<u32>) {
        match t {
            SubstitutionTree::Leaf(l) => out.push(*l),
            SubstitutionTree::Internal { dec, children, .. } => {
                let mut blocks: Vec<(usize, usize)> = Vec::with_capacity(children.len());
                for c in children {
                    let start = out.len();
                    fill(c, g, out);
                    blocks.push((start, out.len()));
                }
                for i in 0..blocks.len() {
                    for j in (i + 1)..blocks.len() {
                        if dec.adjacent(i, j) {
                            for a in blocks[i].0..blocks[i].1 {
                                for b in blocks[j].0..blocks[j].1 {
                                    g.set_edge(out[a], out[b], true);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut scratch = Vec::with_capacity(n);
    fill(t, &mut g, &mut scratch);
    g
}

/// Unique modular decomposition tree of a graph (n ≥ 1).
///
/// Recursive split by connectivity / co-connectivity; in the prime case the
/// partition into maximal proper modules is found by closing vertex pairs
/// under splitters and merging overlapping modules.
pub fn modular_decomposition(g: &LabeledGraph) -> SubstitutionTree {
    assert!(
        g.size() >= 1,
        "modular decomposition needs at least one vertex"
    );
    md_on(g, &(1..=g.size() as u32).collect::<Vec<_>>())
}

fn md_on(g: &LabeledGraph, verts: &[u32]) -> SubstitutionTree {
    if verts.len() == 1 {
        return SubstitutionTree::Leaf(verts[0]);
    }
    let comps = g.components_within(verts);
    if comps.len() > 1 {
        let children = comps.iter().map(|c| md_on(g, c)).collect();
        return SubstitutionTree::internal(Decoration::Union, children).unwrap();
    }
    let co_comps = co_components_within(g, verts);
    if co_comps.len() > 1 {
        let children = co_comps.iter().map(|c| md_on(g, c)).collect();
        return SubstitutionTree::internal(Decoration::Join, children).unwrap();
    }
    // Connected and co-connected: prime quotient over the maximal proper
    // modules.
    let blocks = maximal_proper_modules(g, verts);
    debug_assert!(blocks.len() >= 3);
    let children: Vec<SubstitutionTree> = blocks.iter().map(|b| md_on(g, b)).collect();
    let k = blocks.len();
    let mut q = LabeledGraph::empty(k);
    for i in 0..k {
        for j in (i + 1)..k {
            if g.adj(blocks[i][0], blocks[j][0]) {
                q.set_edge(i as u32 + 1, j as u32 + 1, true);
            }
        }
    }
    debug_assert!(q.is_prime(), "quotient of the prime case must be prime");
    SubstitutionTree::internal(Decoration::Prime(q), children).unwrap()
}

fn co_components_within(g: &LabeledGraph, verts: &[u32]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; verts.len()];
    let mut comps = Vec::new();
    for start in 0..verts.len() {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut comp = Vec::new();
        while let Some(i) = stack.pop() {
            comp.push(verts[i]);
            for (j, &v) in verts.iter().enumerate() {
                if !seen[j] && verts[i] != v && !g.adj(verts[i], v) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// Partition of `verts` into the maximal proper modules of `g[verts]`, for
/// the connected and co-connected case. Every proper module lies inside one
/// of them, and overlapping modules merge into modules, so closing all vertex
/// pairs and merging overlaps yields exactly the partition.
fn maximal_proper_modules(g: &LabeledGraph, verts: &[u32]) -> Vec<Vec<u32>> {
    let m = verts.len();
    let mut block_id: Vec<Option<usize>> = vec![None; m];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for u in 0..m {
        for v in (u + 1)..m {
            if let (Some(a), Some(b)) = (block_id[u], block_id[v]) {
                if a == b {
                    continue;
                }
            }
            let closure = module_closure(g, verts, u, v);
            if closure.len() == m {
                continue;
            }
            // merge the closure with every block it touches
            let mut merged = closure;
            let mut touched: Vec<usize> = merged.iter().filter_map(|&p| block_id[p]).collect();
            touched.sort_unstable();
            touched.dedup();
            for &b in touched.iter().rev() {
                merged.extend(blocks.swap_remove(b));
            }
            merged.sort_unstable();
            merged.dedup();
            // block ids must be rebuilt after swap_remove
            for id in block_id.iter_mut() {
                *id = None;
            }
            blocks.push(merged);
            for (bi, b) in blocks.iter().enumerate() {
                for &p in b {
                    block_id[p] = Some(bi);
                }
            }
        }
    }
    let mut out: Vec<Vec<u32>> = blocks
        .iter()
        .map(|b| b.iter().map(|&p| verts[p]).collect())
        .collect();
    for (p, id) in block_id.iter().enumerate() {
        if id.is_none() {
            out.push(vec![verts[p]]);
        }
    }
    out.sort_by_key(|b| b[0]);
    out
}

/// Smallest module of `g[verts]` containing positions `u` and `v`: grow by
/// adding any splitter (a vertex adjacent to part of the set) until stable.
fn module_closure(g: &LabeledGraph, verts: &[u32], u: usize, v: usize) -> Vec<usize> {
    let m = verts.len();
    let mut member = vec![false; m];
    let mut adj_count = vec![0usize; m];
    let mut members = Vec::new();
    let push =
        |w: usize, member: &mut Vec<bool>, adj_count: &mut Vec<usize>, members: &mut Vec<usize>| {
            member[w] = true;
            members.push(w);
            for z in 0..m {
                if !member[z] && g.adj(verts[w], verts[z]) {
                    adj_count[z] += 1;
                }
            }
        };
    push(u, &mut member, &mut adj_count, &mut members);
    push(v, &mut member, &mut adj_count, &mut members);
    loop {
        let size = members.len();
        let splitter = (0..m).find(|&z| !member[z] && adj_count[z] > 0 && adj_count[z] < size);
        match splitter {
            Some(z) => push(z, &mut member, &mut adj_count, &mut members),
            None => break,
        }
    }
    members.sort_unstable();
    members
}

/// A tree together with a partial injection marking some of its leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedTree {
    pub tree: SubstitutionTree,
    pub marks: PartialInjection,
}

impl MarkedTree {
    pub fn new(tree: SubstitutionTree, marks: PartialInjection) -> Result<Self> {
        check_marks(&tree, &marks)?;
        Ok(MarkedTree { tree, marks })
    }

    /// Number of marked leaves.
    pub fn mark_count(&self) -> usize {
        self.marks.len()
    }

    /// The subtree induced by the marks.
    pub fn induced(&self) -> SubstitutionTree {
        induced_subtree(&self.tree, &self.marks).expect("marks were validated")
    }
}

fn check_marks(tree: &SubstitutionTree, marks: &PartialInjection) -> Result<()> {
    if marks.is_empty() {
        return Err(Error::contract("at least one mark is required"));
    }
    if !marks.image_is_initial_range() {
        return Err(Error::contract("mark image must be {1..=ℓ}"));
    }
    let labels = tree.leaf_labels();
    for a in marks.domain() {
        if labels.binary_search(&a).is_err() {
            return Err(Error::contract(format!(
                "marked label {a} is not a leaf of the tree"
            )));
        }
    }
    Ok(())
}

/// Induced subtree `t_I`: marked leaves are relabeled by their marks, the
/// internal nodes are the first common ancestors of two or more marked
/// leaves, and prime decorations are reduced to the children that carry
/// marks (the vertex for a surviving child ranks by the minimal mark inside
/// that child).
pub fn induced_subtree(t: &SubstitutionTree, marks: &PartialInjection) -> Result<SubstitutionTree> {
    check_marks(t, marks)?;
    Ok(induce_rec(t, marks).expect("domain is non-empty").0)
}

fn induce_rec(t: &SubstitutionTree, marks: &PartialInjection) -> Option<(SubstitutionTree, usize)> {
    match t {
        SubstitutionTree::Leaf(l) => marks.get(*l).map(|m| (SubstitutionTree::Leaf(m), 1)),
        SubstitutionTree::Internal { dec, children, .. } => {
            let mut hits: Vec<(usize, SubstitutionTree, usize)> = Vec::new();
            for (pos, c) in children.iter().enumerate() {
                if let Some((sub, cnt)) = induce_rec(c, marks) {
                    hits.push((pos, sub, cnt));
                }
            }
            match hits.len() {
                0 => None,
                1 => {
                    let (_, sub, cnt) = hits.pop().unwrap();
                    Some((sub, cnt))
                }
                _ => {
                    let total = hits.iter().map(|h| h.2).sum();
                    let new_dec = match dec {
                        Decoration::Join => Decoration::Join,
                        Decoration::Union => Decoration::Union,
                        Decoration::Prime(h) => {
                            // rank surviving children by their minimal mark
                            let mut order: Vec<usize> = (0..hits.len()).collect();
                            order.sort_by_key(|&i| hits[i].1.min_label());
                            let pairs: Vec<(u32, u32)> = order
                                .iter()
                                .enumerate()
                                .map(|(rank, &i)| (hits[i].0 as u32 + 1, rank as u32 + 1))
                                .collect();
                            let inj = PartialInjection::from_pairs(&pairs).unwrap();
                            Decoration::Prime(induced_subgraph(h, &inj).unwrap())
                        }
                    };
                    let subs: Vec<SubstitutionTree> = hits.into_iter().map(|h| h.1).collect();
                    Some((SubstitutionTree::internal(new_dec, subs).unwrap(), total))
                }
            }
        }
    }
}

/// Inflation of `t` at the node addressed by `path` with a substitution tree
/// `tau` of that node's decoration. The `j`-th leaf of `tau` is replaced by
/// the `j`-th subtree of the node; `Graph` is unchanged.
pub fn inflate(
    t: &SubstitutionTree,
    path: &[usize],
    tau: &SubstitutionTree,
) -> Result<SubstitutionTree> {
    let node = t
        .node_at(path)
        .ok_or_else(|| Error::contract("no node at the given path"))?;
    let children = node
        .children()
        .ok_or_else(|| Error::contract("cannot inflate a leaf"))?;
    tau.validate(false)?;
    if !tau.is_reduced() || tau.size() != children.len() {
        return Err(Error::contract(
            "tau must be reduced with one leaf per child",
        ));
    }
    let dec_graph = node.decoration().unwrap().as_graph(children.len());
    if graph_of(tau) != dec_graph {
        return Err(Error::contract(
            "tau is not a substitution tree of the decoration",
        ));
    }
    fn replace_leaves(tau: &SubstitutionTree, subs: &[SubstitutionTree]) -> SubstitutionTree {
        match tau {
            SubstitutionTree::Leaf(j) => subs[*j as usize - 1].clone(),
            SubstitutionTree::Internal { dec, children, .. } => {
                let new_children = children.iter().map(|c| replace_leaves(c, subs)).collect();
                SubstitutionTree::internal(dec.clone(), new_children).unwrap()
            }
        }
    }
    fn rebuild(t: &SubstitutionTree, path: &[usize], tau: &SubstitutionTree) -> SubstitutionTree {
        if path.is_empty() {
            let children = t.children().unwrap();
            return replace_leaves(tau, children);
        }
        let children = t.children().unwrap();
        let mut new_children: Vec<SubstitutionTree> = children.to_vec();
        new_children[path[0]] = rebuild(&children[path[0]], &path[1..], tau);
        SubstitutionTree::internal(t.decoration().unwrap().clone(), new_children).unwrap()
    }
    Ok(rebuild(t, path, tau))
}

/// `β(G) = ½ Σ (e_i − 2)` over the non-linear nodes of the modular
/// decomposition tree (`e_i` = child count). Zero exactly for cographs.
pub fn beta(g: &LabeledGraph) -> BigRational {
    let t = modular_decomposition(g);
    beta_of_md_tree(&t)
}

pub fn beta_of_md_tree(t: &SubstitutionTree) -> BigRational {
    let mut excess: u64 = 0;
    t.walk_internal(&mut |_, node| {
        if let Some(Decoration::Prime(_)) = node.decoration() {
            excess += node.children().unwrap().len() as u64 - 2;
        }
    });
    BigRational::new(excess.into(), 2.into())
}

/// Double factorial `(2k−3)!!` (number of leaf-labeled non-plane binary
/// trees with `k` leaves); equals 1 for `k ≤ 2`.
pub fn binary_tree_count(k: usize) -> BigUint {
    let mut acc = BigUint::one();
    let mut i = 3i64;
    while i <= 2 * k as i64 - 3 {
        acc *= BigUint::from(i as u64);
        i += 2;
    }
    acc
}

/// All leaf-labeled non-plane binary trees over the given leaf subtrees,
/// every internal node carrying `dec`.
pub fn binary_trees_over(parts: &[SubstitutionTree], dec: &Decoration) -> Vec<SubstitutionTree> {
    assert!(!parts.is_empty());
    if parts.len() == 1 {
        return vec![parts[0].clone()];
    }
    let mut out = Vec::new();
    let k = parts.len();
    // the first part goes left; enumerate the subsets joining it
    for mask in 0..(1u32 << (k - 1)) {
        let mut left = vec![parts[0].clone()];
        let mut right = Vec::new();
        for (i, p) in parts.iter().enumerate().skip(1) {
            if mask >> (i - 1) & 1 == 1 {
                left.push(p.clone());
            } else {
                right.push(p.clone());
            }
        }
        if right.is_empty() {
            continue;
        }
        for l in binary_trees_over(&left, dec) {
            for r in binary_trees_over(&right, dec) {
                out.push(SubstitutionTree::internal(dec.clone(), vec![l.clone(), r]).unwrap());
            }
        }
    }
    out
}

/// Expanded trees of `G`: substitution trees of `G` whose non-linear nodes
/// are prime and whose linear nodes are binary. There are `Π (2dᵢ−3)!!` of
/// them over the linear nodes of the modular decomposition tree.
pub struct ExpandedTrees {
    base: SubstitutionTree,
    sites: Vec<(Vec<usize>, Vec<SubstitutionTree>)>,
    counter: Vec<usize>,
    done: bool,
}

pub fn expanded_tree_count(g: &LabeledGraph) -> BigUint {
    let t = modular_decomposition(g);
    let mut count = BigUint::one();
    t.walk_internal(&mut |_, node| {
        if node.decoration().map(Decoration::is_linear) == Some(true) {
            count *= binary_tree_count(node.children().unwrap().len());
        }
    });
    count
}

pub fn expanded_trees(g: &LabeledGraph) -> (BigUint, ExpandedTrees) {
    let base = modular_decomposition(g);
    let mut sites = Vec::new();
    base.walk_internal(&mut |path, node| {
        if let Some(dec @ (Decoration::Join | Decoration::Union)) = node.decoration() {
            let d = node.children().unwrap().len();
            if d > 2 {
                let slots: Vec<SubstitutionTree> =
                    (1..=d as u32).map(SubstitutionTree::Leaf).collect();
                sites.push((path.to_vec(), binary_trees_over(&slots, dec)));
            }
        }
    });
    let count = expanded_tree_count(g);
    let counter = vec![0; sites.len()];
    (
        count,
        ExpandedTrees {
            base,
            sites,
            counter,
            done: false,
        },
    )
}

impl Iterator for ExpandedTrees {
    type Item = SubstitutionTree;

    fn next(&mut self) -> Option<SubstitutionTree> {
        if self.done {
            return None;
        }
        // Inflations at deeper sites keep the paths of shallower pending
        // sites valid because inflation only rearranges the subtree below a
        // node; apply deepest-first to be safe.
        let mut order: Vec<usize> = (0..self.sites.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.sites[i].0.len()));
        let mut t = self.base.clone();
        for &i in &order {
            let (path, taus) = &self.sites[i];
            t = inflate(&t, path, &taus[self.counter[i]]).expect("inflation of a linear node");
        }
        // advance the mixed-radix counter
        let mut i = 0;
        loop {
            if i == self.sites.len() {
                self.done = true;
                break;
            }
            self.counter[i] += 1;
            if self.counter[i] < self.sites[i].1.len() {
                break;
            }
            self.counter[i] = 0;
            i += 1;
        }
        Some(t)
    }
}

/// True iff every prime decoration of the modular decomposition tree of `g`
/// belongs to the class.
pub fn is_in_class(g: &LabeledGraph, class: &crate::prime::PrimeClass) -> bool {
    let t = modular_decomposition(g);
    md_tree_in_class(&t, class)
}

pub fn md_tree_in_class(t: &SubstitutionTree, class: &crate::prime::PrimeClass) -> bool {
    let mut ok = true;
    t.walk_internal(&mut |_, node| {
        if let Some(Decoration::Prime(h)) = node.decoration() {
            if !class.contains(h) {
                ok = false;
            }
        }
    });
    ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::are_isomorphic;
    use num_traits::ToPrimitive;

    fn leaf(l: u32) -> SubstitutionTree {
        SubstitutionTree::Leaf(l)
    }

    #[test]
    fn graph_of_examples() {
        assert_eq!(graph_of(&leaf(1)), LabeledGraph::complete(1));
        let k2 = SubstitutionTree::join_of(vec![leaf(1), leaf(2)]);
        assert_eq!(graph_of(&k2), LabeledGraph::complete(2));
        let c4 = SubstitutionTree::join_of(vec![
            SubstitutionTree::union_of(vec![leaf(1), leaf(3)]),
            SubstitutionTree::union_of(vec![leaf(2), leaf(4)]),
        ]);
        assert_eq!(graph_of(&c4), LabeledGraph::cycle(4));
    }

    #[test]
    fn md_examples() {
        let t = modular_decomposition(&LabeledGraph::path(4));
        match t.decoration() {
            Some(Decoration::Prime(h)) => {
                assert!(are_isomorphic(h, &LabeledGraph::path(4)));
                assert_eq!(t.children().unwrap().len(), 4);
            }
            other => panic!("expected a prime root, got {other:?}"),
        }
        let expected_c4 = SubstitutionTree::join_of(vec![
            SubstitutionTree::union_of(vec![leaf(1), leaf(3)]),
            SubstitutionTree::union_of(vec![leaf(2), leaf(4)]),
        ]);
        assert_eq!(modular_decomposition(&LabeledGraph::cycle(4)), expected_c4);
        assert_eq!(modular_decomposition(&LabeledGraph::complete(1)), leaf(1));
    }

    #[test]
    fn md_round_trip_small() {
        // all labeled graphs with n ≤ 5
        for n in 1..=5usize {
            let bits = n * (n - 1) / 2;
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
                let t = modular_decomposition(&g);
                assert!(t.is_md_tree(), "{g:?}");
                assert_eq!(graph_of(&t), g);
            }
        }
    }

    #[test]
    fn md_with_linear_module_under_prime() {
        // P4[⊖2, K1, K1, K1]: a union module sits under a prime node.
        let g = graph_of(
            &SubstitutionTree::internal(
                Decoration::Prime(LabeledGraph::path(4)),
                vec![
                    SubstitutionTree::union_of(vec![leaf(1), leaf(2)]),
                    leaf(3),
                    leaf(4),
                    leaf(5),
                ],
            )
            .unwrap(),
        );
        let t = modular_decomposition(&g);
        assert!(t.is_md_tree());
        assert_eq!(graph_of(&t), g);
        assert_eq!(t.children().unwrap().len(), 4);
    }

    #[test]
    fn induced_subtree_examples() {
        let c4 = SubstitutionTree::join_of(vec![
            SubstitutionTree::union_of(vec![leaf(1), leaf(3)]),
            SubstitutionTree::union_of(vec![leaf(2), leaf(4)]),
        ]);
        // single mark → single leaf
        let i1 = PartialInjection::from_pairs(&[(3, 1)]).unwrap();
        assert_eq!(induced_subtree(&c4, &i1).unwrap(), leaf(1));
        // marks on 1,2 → ⊕(1,2), consistent with 1,2 adjacent in C4
        let i2 = PartialInjection::from_pairs(&[(1, 1), (2, 2)]).unwrap();
        let got = induced_subtree(&c4, &i2).unwrap();
        assert_eq!(got, SubstitutionTree::join_of(vec![leaf(1), leaf(2)]));
        assert_eq!(graph_of(&got), LabeledGraph::complete(2));
        // empty injection is rejected
        assert!(induced_subtree(&c4, &PartialInjection::new()).is_err());
    }

    #[test]
    fn induced_subtree_prime_reduction() {
        // P5 prime root; marking leaves 1,2,3 keeps a P3... which is not
        // prime, but reduction happens on the decoration as a plain graph.
        let p5 = modular_decomposition(&LabeledGraph::path(5));
        let marks = PartialInjection::from_pairs(&[(1, 1), (2, 2), (3, 3)]).unwrap();
        let got = induced_subtree(&p5, &marks).unwrap();
        assert_eq!(graph_of(&got), LabeledGraph::path(3));
    }

    #[test]
    fn induced_subgraph_commutes_with_induced_subtree() {
        // Randomized oracle: Graph(t)_I == Graph(t_I).
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.random_range(2..=9usize);
            let g = random_graph(n, &mut rng);
            let t = modular_decomposition(&g);
            let l = rng.random_range(1..=n);
            let mut labels: Vec<u32> = (1..=n as u32).collect();
            // partial shuffle for the domain
            for i in 0..l {
                let j = rng.random_range(i..n);
                labels.swap(i, j);
            }
            let pairs: Vec<(u32, u32)> = labels[..l]
                .iter()
                .enumerate()
                .map(|(i, &a)| (a, i as u32 + 1))
                .collect();
            let inj = PartialInjection::from_pairs(&pairs).unwrap();
            let via_graph = induced_subgraph(&g, &inj).unwrap();
            let via_tree = graph_of(&induced_subtree(&t, &inj).unwrap());
            assert_eq!(via_graph, via_tree, "n={n} g={g:?} inj={inj:?}");
        }
    }

    fn random_graph(n: usize, rng: &mut impl rand::Rng) -> LabeledGraph {
        let mut g = LabeledGraph::empty(n);
        for u in 1..=n as u32 {
            for v in (u + 1)..=n as u32 {
                if rng.random_bool(0.5) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    #[test]
    fn inflate_union_associativity() {
        let t = SubstitutionTree::union_of(vec![leaf(1), leaf(2), leaf(3)]);
        let tau = SubstitutionTree::union_of(vec![
            SubstitutionTree::union_of(vec![leaf(1), leaf(2)]),
            leaf(3),
        ]);
        let inflated = inflate(&t, &[], &tau).unwrap();
        assert_eq!(graph_of(&inflated), graph_of(&t));
        assert_eq!(inflated.edge_count(), t.edge_count() + 1);
        // a ⊕ tree is not a substitution tree of a ⊖ decoration
        let bad = SubstitutionTree::join_of(vec![
            SubstitutionTree::join_of(vec![leaf(1), leaf(2)]),
            leaf(3),
        ]);
        assert!(inflate(&t, &[], &bad).is_err());
    }

    #[test]
    fn inflate_preserves_graph_randomized() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..1000 {
            let n = rng.random_range(3..=8usize);
            let g = random_graph(n, &mut rng);
            let t = modular_decomposition(&g);
            // collect linear nodes with ≥ 3 children
            let mut sites: Vec<(Vec<usize>, usize, Decoration)> = Vec::new();
            t.walk_internal(&mut |path, node| {
                if let Some(dec @ (Decoration::Join | Decoration::Union)) = node.decoration() {
                    let d = node.children().unwrap().len();
                    if d >= 3 {
                        sites.push((path.to_vec(), d, dec.clone()));
                    }
                }
            });
            if sites.is_empty() {
                continue;
            }
            let (path, d, dec) = sites[rng.random_range(0..sites.len())].clone();
            let slots: Vec<SubstitutionTree> = (1..=d as u32).map(SubstitutionTree::Leaf).collect();
            let taus = binary_trees_over(&slots, &dec);
            let tau = &taus[rng.random_range(0..taus.len())];
            let inflated = inflate(&t, &path, tau).unwrap();
            assert_eq!(graph_of(&inflated), g);
        }
    }

    #[test]
    fn full_inflation_gives_prime_nonlinear_nodes() {
        // Inflating every linear node of degree > 2 by a binary tree yields
        // an expanded tree: binary linear nodes, prime non-linear nodes.
        let g = LabeledGraph::from_edges(6, &[(1, 2), (3, 4), (5, 6)]).unwrap();
        let (count, trees) = expanded_trees(&g);
        for t in trees {
            assert_eq!(graph_of(&t), g);
            let mut ok = true;
            t.walk_internal(&mut |_, node| match node.decoration().unwrap() {
                Decoration::Join | Decoration::Union => {
                    ok &= node.children().unwrap().len() == 2;
                }
                Decoration::Prime(h) => ok &= h.is_prime(),
            });
            assert!(ok);
        }
        assert_eq!(count.to_u64().unwrap(), 3);
    }

    #[test]
    fn expanded_tree_examples() {
        // ⊖ on 3 vertices → 3 expanded trees
        let e3 = LabeledGraph::empty(3);
        let (count, trees) = expanded_trees(&e3);
        let all: Vec<_> = trees.collect();
        assert_eq!(count.to_u64().unwrap(), 3);
        assert_eq!(all.len(), 3);
        // they are pairwise distinct and all satisfy the edge-count formula
        for (i, t) in all.iter().enumerate() {
            assert_eq!(t.edge_count(), 2 * 3 - 2);
            for u in all.iter().skip(i + 1) {
                assert_ne!(t, u);
            }
        }
        // P4 → 1 (no linear nodes); K2 → 1
        assert_eq!(
            expanded_tree_count(&LabeledGraph::path(4))
                .to_u64()
                .unwrap(),
            1
        );
        let (c, mut it) = expanded_trees(&LabeledGraph::complete(2));
        assert_eq!(c.to_u64().unwrap(), 1);
        assert_eq!(
            it.next().unwrap(),
            modular_decomposition(&LabeledGraph::complete(2))
        );
        assert!(it.next().is_none());
    }

    #[test]
    fn marked_tree_wrapper() {
        let t = modular_decomposition(&LabeledGraph::cycle(4));
        let marks = PartialInjection::from_pairs(&[(1, 1), (2, 2)]).unwrap();
        let marked = MarkedTree::new(t, marks).unwrap();
        assert_eq!(marked.mark_count(), 2);
        assert_eq!(
            marked.induced(),
            SubstitutionTree::join_of(vec![leaf(1), leaf(2)])
        );
        // marks must land on leaves
        let t = modular_decomposition(&LabeledGraph::cycle(4));
        let bad = PartialInjection::from_pairs(&[(9, 1)]).unwrap();
        assert!(MarkedTree::new(t, bad).is_err());
    }

    #[test]
    fn beta_examples() {
        assert_eq!(
            beta(&LabeledGraph::complete(4)),
            BigRational::from_integer(0.into())
        );
        assert_eq!(
            beta(&LabeledGraph::path(4)),
            BigRational::from_integer(1.into())
        );
        assert_eq!(
            beta(&LabeledGraph::path(5)),
            BigRational::new(3.into(), 2.into())
        );
    }

    #[test]
    fn md_canonical_for_random_md_trees() {
        // building a valid MD tree, expanding to a graph and decomposing
        // again returns the same tree
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.random_range(2..=9usize);
            let g = random_graph(n, &mut rng);
            let t = modular_decomposition(&g);
            // flip: still a valid MD tree of the complement-ish graph
            let f = t.flip_linear();
            assert!(f.is_md_tree());
            assert_eq!(modular_decomposition(&graph_of(&f)), f);
        }
    }
}

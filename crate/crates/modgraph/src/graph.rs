//! Labeled simple graphs, induced subgraphs, occurrence counting, modules and
//! graph substitution.
//!
//! Vertices of a [`LabeledGraph`] carry the labels `1..=n`. A
//! [`WeaklyLabeledGraph`] carries arbitrary distinct positive labels and is
//! what graph substitution produces before reduction.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Simple undirected graph on vertices labeled `1..=n`, stored as a dense
/// symmetric bit matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl LabeledGraph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        LabeledGraph {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
        }
    }

    /// Builds a graph from an edge list (1-based endpoints).
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u == v {
                return Err(Error::contract(format!("self-loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u as usize > n || v as usize > n {
                return Err(Error::contract(format!(
                    "edge ({u},{v}) out of range 1..={n}"
                )));
            }
            if g.adj(u, v) {
                return Err(Error::contract(format!("duplicate edge ({u},{v})")));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Complete graph `⊕_n`.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 1..=n as u32 {
            for v in (u + 1)..=n as u32 {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    /// Path `1 – 2 – … – n`.
    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 1..n as u32 {
            g.set_edge(u, u + 1, true);
        }
        g
    }

    /// Cycle `1 – 2 – … – n – 1` (n ≥ 3).
    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.set_edge(1, n as u32, true);
        }
        g
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Adjacency of two vertices, 1-based. Self-queries answer false.
    #[inline]
    pub fn adj(&self, u: u32, v: u32) -> bool {
        debug_assert!(u >= 1 && v >= 1 && u as usize <= self.n && v as usize <= self.n);
        if u == v {
            return false;
        }
        let (i, j) = ((u - 1) as usize, (v - 1) as usize);
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set_edge(&mut self, u: u32, v: u32, present: bool) {
        assert!(u != v, "self-loops are not allowed");
        let (i, j) = ((u - 1) as usize, (v - 1) as usize);
        let w = self.words_per_row;
        let mask_ij = 1u64 << (j % 64);
        let mask_ji = 1u64 << (i % 64);
        if present {
            self.bits[i * w + j / 64] |= mask_ij;
            self.bits[j * w + i / 64] |= mask_ji;
        } else {
            self.bits[i * w + j / 64] &= !mask_ij;
            self.bits[j * w + i / 64] &= !mask_ji;
        }
    }

    pub fn edge_count(&self) -> usize {
        let mut c = 0;
        for u in 1..=self.n as u32 {
            for v in (u + 1)..=self.n as u32 {
                c += self.adj(u, v) as usize;
            }
        }
        c
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for u in 1..=self.n as u32 {
            for v in (u + 1)..=self.n as u32 {
                if self.adj(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree(&self, u: u32) -> usize {
        (1..=self.n as u32).filter(|&v| self.adj(u, v)).count()
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n);
        for u in 1..=self.n as u32 {
            for v in (u + 1)..=self.n as u32 {
                if !self.adj(u, v) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    /// Connected components of the subgraph induced by `verts` (1-based
    /// labels); each component keeps the order of `verts`.
    pub fn components_within(&self, verts: &[u32]) -> Vec<Vec<u32>> {
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
                    if !seen[j] && self.adj(verts[i], v) {
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

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let verts: Vec<u32> = (1..=self.n as u32).collect();
        self.components_within(&verts).len() == 1
    }

    /// Subgraph induced by a vertex subset, relabeled `1..=k` in the order of
    /// `verts`.
    pub fn induced_by(&self, verts: &[u32]) -> LabeledGraph {
        let mut g = LabeledGraph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.adj(u, v) {
                    g.set_edge(i as u32 + 1, j as u32 + 1, true);
                }
            }
        }
        g
    }

    /// True iff every vertex outside `s` is adjacent to all of `s` or to none
    /// of it. `s` holds 1-based labels.
    pub fn is_module(&self, s: &[u32]) -> bool {
        let mut inside = vec![false; self.n + 1];
        for &v in s {
            debug_assert!(v >= 1 && v as usize <= self.n);
            inside[v as usize] = true;
        }
        if s.len() <= 1 || s.len() == self.n {
            return true;
        }
        for z in 1..=self.n as u32 {
            if inside[z as usize] {
                continue;
            }
            let first = self.adj(z, s[0]);
            if s[1..].iter().any(|&v| self.adj(z, v) != first) {
                return false;
            }
        }
        true
    }

    /// True iff the graph has at least 3 vertices and only trivial modules.
    ///
    /// Subset enumeration up to 12 vertices; beyond that the modular
    /// decomposition tree decides (a single prime root of full degree).
    pub fn is_prime(&self) -> bool {
        let n = self.n;
        if n < 3 {
            return false;
        }
        if n <= 12 {
            // Enumerate subsets of size 2..n-1 by bitmask.
            let mut buf = Vec::with_capacity(n);
            for mask in 1u32..(1 << n) {
                let k = mask.count_ones() as usize;
                if k < 2 || k == n {
                    continue;
                }
                buf.clear();
                for b in 0..n {
                    if mask >> b & 1 == 1 {
                        buf.push(b as u32 + 1);
                    }
                }
                if self.is_module(&buf) {
                    return false;
                }
            }
            true
        } else {
            let t = crate::mdtree::modular_decomposition(self);
            match t.decoration() {
                Some(crate::mdtree::Decoration::Prime(_)) => {
                    t.children().map_or(false, |c| c.len() == n)
                }
                _ => false,
            }
        }
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Finite injective map between positive integer labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialInjection {
    map: BTreeMap<u32, u32>,
}

impl PartialInjection {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for &(a, b) in pairs {
            if a == 0 || b == 0 {
                return Err(Error::contract("labels are positive"));
            }
            if map.insert(a, b).is_some() {
                return Err(Error::contract(format!("duplicate domain element {a}")));
            }
            if !seen.insert(b) {
                return Err(Error::contract(format!(
                    "not injective: image {b} repeated"
                )));
            }
        }
        Ok(PartialInjection { map })
    }

    /// Identity on `1..=n`.
    pub fn identity(n: usize) -> Self {
        PartialInjection {
            map: (1..=n as u32).map(|i| (i, i)).collect(),
        }
    }

    pub fn get(&self, a: u32) -> Option<u32> {
        self.map.get(&a).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = u32> + '_ {
        self.map.keys().copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }

    /// True iff the image is exactly `{1..=k}` for `k = len()`.
    pub fn image_is_initial_range(&self) -> bool {
        let mut img: Vec<u32> = self.map.values().copied().collect();
        img.sort_unstable();
        img.iter().enumerate().all(|(i, &b)| b == i as u32 + 1)
    }
}

/// Subgraph of `g` induced by a partial injection whose image is `{1..=k}`:
/// vertex `I(ℓ)` of the result inherits the adjacency of the vertex labeled
/// `ℓ` in `g`.
pub fn induced_subgraph(g: &LabeledGraph, inj: &PartialInjection) -> Result<LabeledGraph> {
    if !inj.image_is_initial_range() {
        return Err(Error::contract("injection image must be {1..=k}"));
    }
    let k = inj.len();
    let mut source = vec![0u32; k + 1];
    for (a, b) in inj.pairs() {
        if a as usize > g.size() {
            return Err(Error::contract(format!(
                "domain label {a} outside graph of size {}",
                g.size()
            )));
        }
        source[b as usize] = a;
    }
    let mut out = LabeledGraph::empty(k);
    for i in 1..=k as u32 {
        for j in (i + 1)..=k as u32 {
            if g.adj(source[i as usize], source[j as usize]) {
                out.set_edge(i, j, true);
            }
        }
    }
    Ok(out)
}

/// Graph with arbitrary distinct positive vertex labels; `labels[i]` is the
/// label of vertex `i+1` of `graph`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeaklyLabeledGraph {
    pub labels: Vec<u32>,
    pub graph: LabeledGraph,
}

impl WeaklyLabeledGraph {
    pub fn new(labels: Vec<u32>, graph: LabeledGraph) -> Result<Self> {
        if labels.len() != graph.size() {
            return Err(Error::contract("label count must match vertex count"));
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.first() == Some(&0) {
            return Err(Error::contract("labels must be distinct and positive"));
        }
        Ok(WeaklyLabeledGraph { labels, graph })
    }

    pub fn from_labeled(g: LabeledGraph) -> Self {
        let labels = (1..=g.size() as u32).collect();
        WeaklyLabeledGraph { labels, graph: g }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Relabels to `1..=n` preserving the relative order of labels.
    pub fn reduce(&self) -> LabeledGraph {
        let mut order: Vec<usize> = (0..self.labels.len()).collect();
        order.sort_by_key(|&i| self.labels[i]);
        let verts: Vec<u32> = order.iter().map(|&i| i as u32 + 1).collect();
        self.graph.induced_by(&verts)
    }
}

/// Graph substitution `G[H_1, …, H_n]`: inner edges are preserved, and all
/// cross edges between `H_i` and `H_j` are present iff `{i,j}` is an edge of
/// `G`.
pub fn substitute(g: &LabeledGraph, parts: &[WeaklyLabeledGraph]) -> Result<WeaklyLabeledGraph> {
    if parts.len() != g.size() {
        return Err(Error::contract(format!(
            "expected {} parts, got {}",
            g.size(),
            parts.len()
        )));
    }
    let total: usize = parts.iter().map(|p| p.size()).sum();
    let mut labels = Vec::with_capacity(total);
    let mut offsets = Vec::with_capacity(parts.len());
    for p in parts {
        offsets.push(labels.len());
        labels.extend_from_slice(&p.labels);
    }
    {
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::contract("part label sets overlap"));
        }
    }
    let mut adj = LabeledGraph::empty(total);
    for (pi, p) in parts.iter().enumerate() {
        let off = offsets[pi];
        for (u, v) in p.graph.edges() {
            adj.set_edge(off as u32 + u, off as u32 + v, true);
        }
        for pj in (pi + 1)..parts.len() {
            if g.adj(pi as u32 + 1, pj as u32 + 1) {
                let offj = offsets[pj];
                for a in 1..=p.size() {
                    for b in 1..=parts[pj].size() {
                        adj.set_edge((off + a) as u32, (offj + b) as u32, true);
                    }
                }
            }
        }
    }
    WeaklyLabeledGraph::new(labels, adj)
}

/// Adjacency-preserving bijection search. Intended for small graphs (the
/// pattern sizes of this crate); backtracking with degree pruning.
pub fn are_isomorphic(g: &LabeledGraph, h: &LabeledGraph) -> bool {
    if g.size() != h.size() || g.edge_count() != h.edge_count() {
        return false;
    }
    let n = g.size();
    if n == 0 {
        return true;
    }
    let mut dg: Vec<usize> = (1..=n as u32).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (1..=n as u32).map(|v| h.degree(v)).collect();
    {
        let mut a = dg.clone();
        let mut b = dh.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return false;
        }
    }
    // map g-vertex i -> h-vertex (0-based), assigned in order 0..n
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    dg.insert(0, 0); // 1-based convenience
    dh.insert(0, 0);
    fn extend(
        g: &LabeledGraph,
        h: &LabeledGraph,
        dg: &[usize],
        dh: &[usize],
        mapping: &mut [usize],
        used: &mut [bool],
        i: usize,
    ) -> bool {
        let n = g.size();
        if i == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || dg[i + 1] != dh[cand + 1] {
                continue;
            }
            let ok = (0..i).all(|j| {
                g.adj(i as u32 + 1, j as u32 + 1) == h.adj(cand as u32 + 1, mapping[j] as u32 + 1)
            });
            if ok {
                mapping[i] = cand;
                used[cand] = true;
                if extend(g, h, dg, dh, mapping, used, i + 1) {
                    return true;
                }
                used[cand] = false;
                mapping[i] = usize::MAX;
            }
        }
        false
    }
    extend(g, h, &dg, &dh, &mut mapping, &mut used, 0)
}

/// Number of automorphisms (adjacency-preserving permutations).
pub fn automorphism_count(g: &LabeledGraph) -> u64 {
    let n = g.size();
    if n == 0 {
        return 1;
    }
    let deg: Vec<usize> = (0..n).map(|v| g.degree(v as u32 + 1)).collect();
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut count = 0u64;
    fn rec(
        g: &LabeledGraph,
        deg: &[usize],
        mapping: &mut [usize],
        used: &mut [bool],
        i: usize,
        count: &mut u64,
    ) {
        let n = g.size();
        if i == n {
            *count += 1;
            return;
        }
        for cand in 0..n {
            if used[cand] || deg[i] != deg[cand] {
                continue;
            }
            let ok = (0..i).all(|j| {
                g.adj(i as u32 + 1, j as u32 + 1) == g.adj(cand as u32 + 1, mapping[j] as u32 + 1)
            });
            if ok {
                mapping[i] = cand;
                used[cand] = true;
                rec(g, deg, mapping, used, i + 1, count);
                used[cand] = false;
            }
        }
    }
    rec(g, &deg, &mut mapping, &mut used, 0, &mut count);
    count
}

/// Number of `|g|`-subsets `S` of `h`'s vertices with `h[S]` isomorphic to
/// `g` as an unlabeled graph.
pub fn iso_subset_count(g: &LabeledGraph, h: &LabeledGraph) -> u64 {
    let k = g.size();
    let n = h.size();
    if k > n {
        return 0;
    }
    if k == 0 {
        return 1;
    }
    let mut count = 0u64;
    let mut subset: Vec<u32> = (1..=k as u32).collect();
    loop {
        if are_isomorphic(&h.induced_by(&subset), g) {
            count += 1;
        }
        // next k-combination of 1..=n
        let mut i = k;
        while i > 0 && subset[i - 1] == (n - k + i) as u32 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        subset[i - 1] += 1;
        for j in i..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
    count
}

/// Number of partial injections `I` from the labels of `h` onto `{1..=|g|}`
/// such that the induced subgraph `h_I` is isomorphic to `g` as an unlabeled
/// graph. Equals `|g|! ·` [`iso_subset_count`].
pub fn occ_count(g: &LabeledGraph, h: &LabeledGraph) -> u64 {
    let fact: u64 = (1..=g.size() as u64).product();
    iso_subset_count(g, h) * fact
}

/// Number of partial injections `I` from the labels of `h` onto `{1..=|g|}`
/// such that `h_I` equals `g` as a labeled graph. This is the occurrence
/// count the generating-series machinery is built on; it equals
/// `|Aut(g)| ·` [`iso_subset_count`].
pub fn occ_count_exact(g: &LabeledGraph, h: &LabeledGraph) -> u64 {
    iso_subset_count(g, h) * automorphism_count(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> LabeledGraph {
        LabeledGraph::path(4)
    }

    /// Independent oracle: enumerate every partial injection with image
    /// {1..=k} directly and test the stated predicate on h_I.
    fn occ_oracle(g: &LabeledGraph, h: &LabeledGraph, exact: bool) -> u64 {
        let k = g.size();
        let n = h.size();
        if k > n {
            return 0;
        }
        let mut count = 0;
        let mut domain: Vec<u32> = Vec::new();
        fn rec(
            g: &LabeledGraph,
            h: &LabeledGraph,
            k: usize,
            domain: &mut Vec<u32>,
            exact: bool,
            count: &mut u64,
        ) {
            if domain.len() == k {
                let pairs: Vec<(u32, u32)> = domain
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| (a, i as u32 + 1))
                    .collect();
                let inj = PartialInjection::from_pairs(&pairs).unwrap();
                let ind = induced_subgraph(h, &inj).unwrap();
                let hit = if exact {
                    ind == *g
                } else {
                    are_isomorphic(&ind, g)
                };
                if hit {
                    *count += 1;
                }
                return;
            }
            for a in 1..=h.size() as u32 {
                if !domain.contains(&a) {
                    domain.push(a);
                    rec(g, h, k, domain, exact, count);
                    domain.pop();
                }
            }
        }
        rec(g, h, k, &mut domain, exact, &mut count);
        count
    }

    #[test]
    fn induced_subgraph_examples() {
        // P4, I = {2→1, 3→2} → K2
        let inj = PartialInjection::from_pairs(&[(2, 1), (3, 2)]).unwrap();
        let got = induced_subgraph(&p4(), &inj).unwrap();
        assert_eq!(got, LabeledGraph::from_edges(2, &[(1, 2)]).unwrap());
        // identity → same graph
        let id = PartialInjection::identity(4);
        assert_eq!(induced_subgraph(&p4(), &id).unwrap(), p4());
        // empty map → empty graph
        let empty = PartialInjection::new();
        assert_eq!(induced_subgraph(&p4(), &empty).unwrap().size(), 0);
        // bad image
        let bad = PartialInjection::from_pairs(&[(1, 3)]).unwrap();
        assert!(induced_subgraph(&p4(), &bad).is_err());
    }

    #[test]
    fn occ_count_examples() {
        let k2 = LabeledGraph::complete(2);
        let k1 = LabeledGraph::complete(1);
        assert_eq!(occ_count(&k2, &p4()), 6);
        assert_eq!(occ_count(&k1, &p4()), 4);
        assert_eq!(occ_count(&k1, &LabeledGraph::cycle(5)), 5);
        // Frozen from the enumeration oracle. All 24 bijections induce a
        // graph isomorphic to P4, and exactly |Aut(P4)| = 2 reproduce the
        // labeled path itself.
        assert_eq!(occ_oracle(&p4(), &p4(), false), 24);
        assert_eq!(occ_count(&p4(), &p4()), 24);
        assert_eq!(occ_oracle(&p4(), &p4(), true), 2);
        assert_eq!(occ_count_exact(&p4(), &p4()), 2);
        assert_eq!(occ_oracle(&k2, &p4(), true), 6);
        assert_eq!(occ_count_exact(&k2, &p4()), 6);
    }

    #[test]
    fn occ_matches_oracle_on_small_pairs() {
        let pats = [
            LabeledGraph::complete(2),
            LabeledGraph::empty(2),
            LabeledGraph::complete(3),
            LabeledGraph::path(3),
            LabeledGraph::path(4),
        ];
        let hosts = [
            LabeledGraph::path(5),
            LabeledGraph::cycle(5),
            LabeledGraph::complete(4),
        ];
        for g in &pats {
            for h in &hosts {
                assert_eq!(occ_count(g, h), occ_oracle(g, h, false), "{g:?} in {h:?}");
                assert_eq!(
                    occ_count_exact(g, h),
                    occ_oracle(g, h, true),
                    "{g:?} in {h:?}"
                );
            }
        }
    }

    #[test]
    fn occ_sum_over_iso_classes_is_falling_factorial() {
        // Σ over iso-classes of size k of occ_count(G, H) = (n)_k.
        let h = LabeledGraph::cycle(5);
        for k in 1..=4usize {
            let mut reps: Vec<LabeledGraph> = Vec::new();
            let mut total = 0u64;
            for mask in 0..(1u64 << (k * (k - 1) / 2)) {
                let mut g = LabeledGraph::empty(k);
                let mut bit = 0;
                for u in 1..=k as u32 {
                    for v in (u + 1)..=k as u32 {
                        if mask >> bit & 1 == 1 {
                            g.set_edge(u, v, true);
                        }
                        bit += 1;
                    }
                }
                if !reps.iter().any(|r| are_isomorphic(r, &g)) {
                    total += occ_count(&g, &h);
                    reps.push(g);
                }
            }
            let falling: u64 = (0..k as u64).map(|i| 5 - i).product();
            assert_eq!(total, falling, "k={k}");
        }
    }

    #[test]
    fn occ_upper_bound() {
        let g = LabeledGraph::path(3);
        let h = LabeledGraph::cycle(6);
        assert!(occ_count(&g, &h) <= 6 * 5 * 4);
    }

    #[test]
    fn module_examples() {
        let c4 = LabeledGraph::cycle(4);
        assert!(c4.is_module(&[1, 3]));
        assert!(!c4.is_module(&[1, 2]));
        assert!(c4.is_module(&[1, 2, 3, 4]));
        assert!(c4.is_module(&[2]));
    }

    #[test]
    fn prime_examples() {
        assert!(p4().is_prime());
        assert!(!LabeledGraph::complete(2).is_prime());
        assert!(!LabeledGraph::cycle(4).is_prime());
        assert!(LabeledGraph::cycle(5).is_prime());
        assert!(LabeledGraph::path(5).is_prime());
    }

    #[test]
    fn no_prime_graph_on_three_vertices() {
        for mask in 0..8u32 {
            let mut g = LabeledGraph::empty(3);
            let pairs = [(1u32, 2u32), (1, 3), (2, 3)];
            for (b, &(u, v)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    g.set_edge(u, v, true);
                }
            }
            assert!(!g.is_prime());
        }
    }

    #[test]
    fn substitute_examples() {
        let k1 = || WeaklyLabeledGraph::from_labeled(LabeledGraph::complete(1));
        // ⊕[K1, K1] = K2
        let join2 = LabeledGraph::complete(2);
        let mut b = k1();
        b.labels = vec![2];
        let got = substitute(&join2, &[k1(), b]).unwrap();
        assert_eq!(got.reduce(), LabeledGraph::complete(2));
        // ⊖[K2, K2] = two disjoint edges
        let union2 = LabeledGraph::empty(2);
        let e1 = WeaklyLabeledGraph::new(vec![1, 2], LabeledGraph::complete(2)).unwrap();
        let e2 = WeaklyLabeledGraph::new(vec![3, 4], LabeledGraph::complete(2)).unwrap();
        let got = substitute(&union2, &[e1.clone(), e2]).unwrap();
        assert_eq!(
            got.reduce(),
            LabeledGraph::from_edges(4, &[(1, 2), (3, 4)]).unwrap()
        );
        // identity substitution
        let parts: Vec<WeaklyLabeledGraph> = (1..=4)
            .map(|i| WeaklyLabeledGraph::new(vec![i], LabeledGraph::complete(1)).unwrap())
            .collect();
        assert_eq!(substitute(&p4(), &parts).unwrap().reduce(), p4());
        // overlapping labels rejected
        let e3 = WeaklyLabeledGraph::new(vec![2, 3], LabeledGraph::complete(2)).unwrap();
        assert!(substitute(&union2, &[e1, e3]).is_err());
        // edge-count identities for join/union of parts
        let g1 = WeaklyLabeledGraph::new(vec![1, 2, 3], LabeledGraph::path(3)).unwrap();
        let g2 = WeaklyLabeledGraph::new(vec![4, 5], LabeledGraph::complete(2)).unwrap();
        let u = substitute(&LabeledGraph::empty(2), &[g1.clone(), g2.clone()]).unwrap();
        assert_eq!(u.graph.edge_count(), 2 + 1);
        let j = substitute(&LabeledGraph::complete(2), &[g1, g2]).unwrap();
        assert_eq!(j.graph.edge_count(), 2 + 1 + 3 * 2);
    }

    #[test]
    fn iso_examples() {
        let k2a = LabeledGraph::from_edges(2, &[(1, 2)]).unwrap();
        assert!(are_isomorphic(&k2a, &LabeledGraph::complete(2)));
        let star = LabeledGraph::from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(!are_isomorphic(&p4(), &star));
        // C4 = ⊕[⊖[·,·], ⊖[·,·]]
        let u1 = WeaklyLabeledGraph::new(vec![1, 3], LabeledGraph::empty(2)).unwrap();
        let u2 = WeaklyLabeledGraph::new(vec![2, 4], LabeledGraph::empty(2)).unwrap();
        let built = substitute(&LabeledGraph::complete(2), &[u1, u2])
            .unwrap()
            .reduce();
        assert!(are_isomorphic(&built, &LabeledGraph::cycle(4)));
        assert_eq!(built, LabeledGraph::cycle(4));
    }

    #[test]
    fn aut_counts() {
        assert_eq!(automorphism_count(&p4()), 2);
        assert_eq!(automorphism_count(&LabeledGraph::complete(3)), 6);
        assert_eq!(automorphism_count(&LabeledGraph::cycle(4)), 8);
        assert_eq!(automorphism_count(&LabeledGraph::empty(3)), 6);
    }

    #[test]
    fn induced_compatible_with_restriction() {
        // Inducing by I then restricting equals inducing by the composition.
        let g = LabeledGraph::cycle(6);
        let i1 = PartialInjection::from_pairs(&[(2, 1), (4, 2), (5, 3), (6, 4)]).unwrap();
        let step1 = induced_subgraph(&g, &i1).unwrap();
        let i2 = PartialInjection::from_pairs(&[(1, 1), (3, 2), (4, 3)]).unwrap();
        let step2 = induced_subgraph(&step1, &i2).unwrap();
        // composition: 2→1, 5→2, 6→3
        let comp = PartialInjection::from_pairs(&[(2, 1), (5, 2), (6, 3)]).unwrap();
        assert_eq!(step2, induced_subgraph(&g, &comp).unwrap());
    }
}

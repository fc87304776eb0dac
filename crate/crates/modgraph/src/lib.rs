//! Modular decomposition of labeled graphs, exact generating series for
//! graph classes with prescribed prime decorations, numerical singularity
//! constants, and exact-uniform random samplers.
//!
//! A class is specified by its set `𝒫` of allowed prime decorations
//! ([`prime::PrimeClass`]). The crate decomposes graphs into substitution
//! trees ([`mdtree`]), solves the class's series system with exact rational
//! arithmetic ([`series`]), computes the characteristic constants
//! `κ, R, K, μ, C` and the limit parameter `p` ([`analytic`]), and samples
//! trees and graphs exactly uniformly at a fixed size ([`sampler`]).

pub mod analytic;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod io;
pub mod mdtree;
pub mod prime;
pub mod sampler;
pub mod series;

pub use analytic::{
    predict_count, predict_kh, predict_sample_prob, predict_subtree_prob, solve_constants,
    AsymptoticPrediction, ClassConstants,
};
pub use error::{Error, ParseError, Result};
pub use graph::{
    are_isomorphic, induced_subgraph, occ_count, occ_count_exact, substitute, LabeledGraph,
    PartialInjection, WeaklyLabeledGraph,
};
pub use mdtree::{
    beta, expanded_trees, graph_of, induced_subtree, inflate, is_in_class, modular_decomposition,
    Decoration, MarkedTree, SubstitutionTree,
};
pub use prime::{PrimeClass, PrimeClassKind};
pub use sampler::{
    sample_brownian_cographon, sample_injection, sample_uniform_graph, sample_uniform_tree,
    CountCache, RngStream,
};
pub use series::{
    solve_tree_series, t_tau_series, t_tau_sum, EdgeProfile, ExactSeries, SeriesBundle,
};

//! Text formats: the graph edge-list format, the JSON tree format and the
//! JSON class-specification format. The parsers validate untrusted input and
//! never panic; writers emit the canonical form byte for byte.

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::graph::LabeledGraph;
use crate::mdtree::{Decoration, SubstitutionTree};
use crate::prime::{PrimeClass, PrimeClassKind};

/// Largest accepted vertex count for parsed graphs (the dense adjacency
/// matrix of anything bigger is not desk scale).
pub const MAX_GRAPH_SIZE: usize = 10_000;

/// Canonical text form: first line `n`, then one `u v` line per edge with
/// `u < v`, in lexicographic order.
pub fn graph_to_text(g: &LabeledGraph) -> String {
    let mut out = String::new();
    out.push_str(&g.size().to_string());
    out.push('\n');
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses the graph text format; errors carry the 1-based line number.
pub fn graph_from_text(text: &str) -> Result<LabeledGraph, ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, first) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty input, expected a vertex count"))?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| ParseError::new(1, format!("invalid vertex count {first:?}")))?;
    if n > MAX_GRAPH_SIZE {
        return Err(ParseError::new(
            1,
            format!("vertex count {n} exceeds {MAX_GRAPH_SIZE}"),
        ));
    }
    let mut g = LabeledGraph::empty(n);
    for (i, line) in lines {
        let lineno = i + 1;
        let mut tokens = line.split_whitespace();
        let (u, v) = match (tokens.next(), tokens.next()) {
            (None, _) => continue, // blank line
            (Some(a), Some(b)) => {
                let u: u32 = a
                    .parse()
                    .map_err(|_| ParseError::new(lineno, format!("invalid endpoint {a:?}")))?;
                let v: u32 = b
                    .parse()
                    .map_err(|_| ParseError::new(lineno, format!("invalid endpoint {b:?}")))?;
                (u, v)
            }
            (Some(a), None) => {
                return Err(ParseError::new(
                    lineno,
                    format!("expected `u v`, got {a:?}"),
                ))
            }
        };
        if tokens.next().is_some() {
            return Err(ParseError::new(lineno, "trailing tokens after edge"));
        }
        if u == v {
            return Err(ParseError::new(lineno, format!("self-loop at vertex {u}")));
        }
        if u == 0 || v == 0 || u as usize > n || v as usize > n {
            return Err(ParseError::new(
                lineno,
                format!("edge ({u},{v}) out of range 1..={n}"),
            ));
        }
        if g.adj(u, v) {
            return Err(ParseError::new(lineno, format!("duplicate edge ({u},{v})")));
        }
        g.set_edge(u, v, true);
    }
    Ok(g)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TreeRepr {
    Leaf {
        leaf: u32,
    },
    Internal {
        dec: DecRepr,
        children: Vec<TreeRepr>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DecRepr {
    Linear(String),
    Prime { prime: String },
}

fn tree_to_repr(t: &SubstitutionTree) -> TreeRepr {
    match t {
        SubstitutionTree::Leaf(l) => TreeRepr::Leaf { leaf: *l },
        SubstitutionTree::Internal { dec, children, .. } => TreeRepr::Internal {
            dec: match dec {
                Decoration::Join => DecRepr::Linear("join".into()),
                Decoration::Union => DecRepr::Linear("union".into()),
                Decoration::Prime(h) => DecRepr::Prime {
                    prime: graph_to_text(h),
                },
            },
            children: children.iter().map(tree_to_repr).collect(),
        },
    }
}

fn tree_from_repr(r: &TreeRepr, size_budget: &mut usize) -> Result<SubstitutionTree, ParseError> {
    match r {
        TreeRepr::Leaf { leaf } => {
            if *leaf == 0 {
                return Err(ParseError::new(0, "leaf labels are positive"));
            }
            if *size_budget == 0 {
                return Err(ParseError::new(0, "tree exceeds the size limit"));
            }
            *size_budget -= 1;
            Ok(SubstitutionTree::Leaf(*leaf))
        }
        TreeRepr::Internal { dec, children } => {
            let dec = match dec {
                DecRepr::Linear(s) => match s.as_str() {
                    "join" => Decoration::Join,
                    "union" => Decoration::Union,
                    other => {
                        return Err(ParseError::new(0, format!("unknown decoration {other:?}")))
                    }
                },
                DecRepr::Prime { prime } => {
                    let g = graph_from_text(prime)
                        .map_err(|e| ParseError::new(0, format!("embedded graph: {e}")))?;
                    Decoration::Prime(g)
                }
            };
            let kids = children
                .iter()
                .map(|c| tree_from_repr(c, size_budget))
                .collect::<Result<Vec<_>, _>>()?;
            SubstitutionTree::internal(dec, kids)
                .map_err(|e| ParseError::new(0, format!("invalid node: {e}")))
        }
    }
}

/// Canonical (compact) JSON form of a substitution tree.
pub fn tree_to_json(t: &SubstitutionTree) -> String {
    serde_json::to_string(&tree_to_repr(t)).expect("tree serialization cannot fail")
}

/// Parses the JSON tree format and checks the structural invariants
/// (distinct leaf labels, arities, decoration sizes).
pub fn tree_from_json(text: &str) -> Result<SubstitutionTree, ParseError> {
    let repr: TreeRepr =
        serde_json::from_str(text).map_err(|e| ParseError::new(e.line(), e.to_string()))?;
    let mut budget = MAX_GRAPH_SIZE;
    let t = tree_from_repr(&repr, &mut budget)?;
    t.validate(false)
        .map_err(|e| ParseError::new(0, e.to_string()))?;
    Ok(t)
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ClassRepr {
    Empty,
    Paths,
    Finite { graphs: Vec<String> },
}

/// Canonical JSON form of a class specification (finite classes embed their
/// representatives in the graph text format).
pub fn class_to_json(class: &PrimeClass) -> Option<String> {
    let repr = match class.kind() {
        PrimeClassKind::FiniteExplicit(reps) if reps.is_empty() => ClassRepr::Empty,
        PrimeClassKind::FiniteExplicit(reps) => ClassRepr::Finite {
            graphs: reps.iter().map(|r| graph_to_text(&r.graph)).collect(),
        },
        PrimeClassKind::BuiltinPaths => ClassRepr::Paths,
        PrimeClassKind::Custom(_) => return None, // code-level only
    };
    Some(serde_json::to_string(&repr).expect("class serialization cannot fail"))
}

/// Parses a class specification; embedded graphs must be prime.
pub fn class_from_json(text: &str) -> Result<PrimeClass, ParseError> {
    let repr: ClassRepr =
        serde_json::from_str(text).map_err(|e| ParseError::new(e.line(), e.to_string()))?;
    match repr {
        ClassRepr::Empty => Ok(PrimeClass::empty()),
        ClassRepr::Paths => Ok(PrimeClass::paths()),
        ClassRepr::Finite { graphs } => {
            let mut parsed = Vec::with_capacity(graphs.len());
            for (i, text) in graphs.iter().enumerate() {
                if text
                    .lines()
                    .next()
                    .map(str::trim)
                    .and_then(|t| t.parse::<usize>().ok())
                    > Some(64)
                {
                    return Err(ParseError::new(
                        0,
                        format!(
                            "graph #{i}: primes above 64 vertices are not supported in class files"
                        ),
                    ));
                }
                let g = graph_from_text(text)
                    .map_err(|e| ParseError::new(0, format!("graph #{i}: {e}")))?;
                parsed.push(g);
            }
            PrimeClass::finite(parsed).map_err(|e| ParseError::new(0, e.to_string()))
        }
    }
}

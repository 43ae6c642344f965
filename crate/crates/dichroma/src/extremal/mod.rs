//! Local arc-connectivity, Hajós-type joins and recognition of digraphs with
//! χ⃗ = λ + 1.

mod joins;
mod recognize;

pub use joins::*;
pub use recognize::*;

use std::collections::VecDeque;

use serde::Serialize;

use crate::dicolour::exact_dichromatic;
use crate::digraph::{is_biconnected, is_strong, Digraph};
use crate::error::{Error, Result};

/// λ(u, v) with a minimum dicut: `source_side` contains u, not v, and exactly
/// `value` arcs leave it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairConnectivity {
    pub source: usize,
    pub target: usize,
    pub value: usize,
    pub source_side: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaProfile {
    pub lambda: usize,
    pub pairs: Vec<PairConnectivity>,
}

/// Maximum number of arc-disjoint u→v dipaths, with the dicut found by the last search.
pub fn local_lambda(d: &Digraph, s: usize, t: usize) -> PairConnectivity {
    local_lambda_capped(d, s, t, usize::MAX)
}

/// As [`local_lambda`] but stops once `cap` paths are found (the cut is then not minimum).
pub fn local_lambda_capped(d: &Digraph, s: usize, t: usize, cap: usize) -> PairConnectivity {
    let arcs = d.arcs();
    let n = d.n();
    let mut out_idx = vec![Vec::new(); n];
    let mut in_idx = vec![Vec::new(); n];
    for (i, &(a, b)) in arcs.iter().enumerate() {
        out_idx[a].push(i);
        in_idx[b].push(i);
    }
    let mut flow = vec![false; arcs.len()];
    let mut value = 0;
    loop {
        // BFS in the residual graph; pred holds (arc index, forward?)
        let mut pred: Vec<Option<(usize, bool)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &e in &out_idx[x] {
                let y = arcs[e].1;
                if !flow[e] && !seen[y] {
                    seen[y] = true;
                    pred[y] = Some((e, true));
                    queue.push_back(y);
                }
            }
            for &e in &in_idx[x] {
                let y = arcs[e].0;
                if flow[e] && !seen[y] {
                    seen[y] = true;
                    pred[y] = Some((e, false));
                    queue.push_back(y);
                }
            }
        }
        if !seen[t] || value >= cap {
            let source_side = (0..n).filter(|&v| seen[v]).collect();
            return PairConnectivity {
                source: s,
                target: t,
                value,
                source_side,
            };
        }
        let mut y = t;
        while y != s {
            let (e, fwd) = pred[y].expect("path back to source");
            flow[e] = fwd;
            y = if fwd { arcs[e].0 } else { arcs[e].1 };
        }
        value += 1;
    }
}

/// λ over all ordered pairs. λ of a digraph with fewer than two vertices is 0.
pub fn lambda(d: &Digraph) -> LambdaProfile {
    let mut pairs = Vec::new();
    for s in 0..d.n() {
        for t in 0..d.n() {
            if s != t {
                pairs.push(local_lambda(d, s, t));
            }
        }
    }
    LambdaProfile {
        lambda: pairs.iter().map(|p| p.value).max().unwrap_or(0),
        pairs,
    }
}

/// λ(D) only; pairs whose degrees cannot beat the current best are skipped.
pub fn lambda_value(d: &Digraph) -> usize {
    let mut best = 0;
    for s in 0..d.n() {
        for t in 0..d.n() {
            if s != t && d.out_degree(s) > best && d.in_degree(t) > best {
                best = best.max(local_lambda(d, s, t).value);
            }
        }
    }
    best
}

/// Number of arcs leaving `side`.
pub fn dicut_size(d: &Digraph, side: &[usize]) -> usize {
    let mut inside = vec![false; d.n()];
    for &v in side {
        inside[v] = true;
    }
    d.arcs().into_iter().filter(|&(a, b)| inside[a] && !inside[b]).count()
}

/// Cheap necessary conditions for k-extremality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryReport {
    pub eulerian: bool,
    pub strong: bool,
    pub biconnected: bool,
    /// λ(x, y) = k for every ordered pair.
    pub all_lambda_k: bool,
    pub passes: bool,
}

pub fn check_extremal_necessary(d: &Digraph, k: usize) -> NecessaryReport {
    let eulerian = (0..d.n()).all(|v| d.out_degree(v) == d.in_degree(v));
    let strong = is_strong(d);
    let biconnected = is_biconnected(d);
    let all_lambda_k = d.n() >= 2
        && (0..d.n()).all(|s| {
            (0..d.n()).all(|t| s == t || local_lambda_capped(d, s, t, k + 1).value == k)
        });
    NecessaryReport {
        eulerian,
        strong,
        biconnected,
        all_lambda_k,
        passes: eulerian && strong && biconnected && all_lambda_k,
    }
}

/// Brute-force definition: strong, biconnected and χ⃗ = λ + 1 = k + 1.
pub fn is_k_extremal_by_definition(d: &Digraph, k: usize, budget: Option<u64>) -> Result<bool> {
    if !is_strong(d) || !is_biconnected(d) {
        return Ok(false);
    }
    if lambda_value(d) != k {
        return Ok(false);
    }
    Ok(exact_dichromatic(d, budget)?.chi == k + 1)
}

/// Vertex sets of induced dicycles, with the first pair sharing two or more vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleHypergraph {
    pub n: usize,
    pub hyperedges: Vec<Vec<usize>>,
    /// Indices of the first pair of hyperedges meeting in at least two vertices.
    pub violating_pair: Option<(usize, usize)>,
    pub linear: bool,
}

/// Enumerates induced dicycles by extending chordless dipaths from their least vertex.
/// `budget` bounds the number of path extensions.
pub fn induced_cycle_hypergraph(d: &Digraph, budget: Option<u64>) -> Result<CycleHypergraph> {
    let mut cycles = Vec::new();
    let mut nodes = 0u64;
    for s in 0..d.n() {
        let mut path = vec![s];
        let mut on_path = vec![false; d.n()];
        on_path[s] = true;
        extend_chordless(d, &mut path, &mut on_path, &mut cycles, &mut nodes, budget)?;
    }
    for c in cycles.iter_mut() {
        c.sort_unstable();
    }
    cycles.sort();
    let mut violating_pair = None;
    'outer: for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            let common = cycles[i].iter().filter(|v| cycles[j].contains(v)).count();
            if common >= 2 {
                violating_pair = Some((i, j));
                break 'outer;
            }
        }
    }
    Ok(CycleHypergraph {
        n: d.n(),
        linear: violating_pair.is_none(),
        hyperedges: cycles,
        violating_pair,
    })
}

fn extend_chordless(
    d: &Digraph,
    path: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
    nodes: &mut u64,
    budget: Option<u64>,
) -> Result<()> {
    let s = path[0];
    let last = *path.last().expect("non-empty path");
    let m = path.len();
    for &w in d.out_neighbours(last) {
        if w <= s || on_path[w] {
            continue;
        }
        *nodes += 1;
        if budget.is_some_and(|b| *nodes > b) {
            return Err(Error::BudgetExceeded { lower: out.len(), upper: usize::MAX });
        }
        if m == 1 {
            if d.has_arc(w, s) {
                out.push(vec![s, w]);
                continue;
            }
        } else {
            if d.has_arc(w, last) || d.has_arc(s, w) {
                continue;
            }
            if path[1..m - 1].iter().any(|&p| d.adjacent(p, w)) {
                continue;
            }
            if d.has_arc(w, s) {
                let mut c = path.clone();
                c.push(w);
                out.push(c);
                continue;
            }
        }
        path.push(w);
        on_path[w] = true;
        extend_chordless(d, path, on_path, out, nodes, budget)?;
        on_path[w] = false;
        path.pop();
    }
    Ok(())
}

/// Rooted plane tree given by ordered child lists; vertex 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct RootedTree {
    pub children: Vec<Vec<usize>>,
}

impl RootedTree {
    /// Leaves in the left-to-right order of the embedding.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            if self.children[v].is_empty() {
                out.push(v);
            }
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.children.len()];
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &c in &self.children[v] {
                depth[c] = depth[v] + 1;
                stack.push(c);
            }
        }
        depth
    }
}

/// Symmetric tree plus the dicycle through its leaves in embedding order.
pub fn generalized_wheel(tree: &RootedTree) -> Result<Digraph> {
    let n = tree.children.len();
    if n < 3 {
        return Err(Error::BadParameters("the tree needs at least 3 vertices".into()));
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    for ch in &tree.children {
        for &c in ch {
            if c >= n || seen[c] {
                return Err(Error::BadParameters(format!("vertex {c} is not a valid child")));
            }
            seen[c] = true;
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::BadParameters("tree does not span its vertices".into()));
    }
    let depth = tree.depths();
    let leaves = tree.leaves();
    let parity = depth[leaves[0]] % 2;
    if leaves.iter().any(|&l| depth[l] % 2 != parity) {
        return Err(Error::ParityViolated);
    }
    let mut arcs = Vec::new();
    for (v, ch) in tree.children.iter().enumerate() {
        for &c in ch {
            arcs.push((v, c));
            arcs.push((c, v));
        }
    }
    for i in 0..leaves.len() {
        arcs.push((leaves[i], leaves[(i + 1) % leaves.len()]));
    }
    Ok(Digraph::from_arcs_lossy(n, arcs))
}

/// Strong, biconnected, λ = 2 and χ⃗ = 3 (exact solver).
pub fn check_2_extremal(d: &Digraph, budget: Option<u64>) -> Result<bool> {
    is_k_extremal_by_definition(d, 2, budget)
}

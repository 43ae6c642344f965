use serde::Serialize;

use crate::digraph::{weak_components, Digraph};
use crate::error::{Error, Result};

fn require_arc(d: &Digraph, u: usize, v: usize) -> Result<()> {
    if u < d.n() && v < d.n() && d.has_arc(u, v) {
        Ok(())
    } else {
        Err(Error::MissingArc(u, v))
    }
}

/// Map for d2's vertices when `shared` is identified with `target` and the remaining
/// vertices are appended after `base` vertices.
fn glue_map(n2: usize, shared: usize, target: usize, base: usize) -> Vec<usize> {
    let mut next = base;
    (0..n2)
        .map(|x| {
            if x == shared {
                target
            } else {
                next += 1;
                next - 1
            }
        })
        .collect()
}

/// Directed Hajós join with respect to (uv₁, v₂w). Vertices of d1 keep their labels,
/// v₂ becomes v₁ and the other vertices of d2 follow in order.
pub fn directed_hajos_join(
    d1: &Digraph,
    uv1: (usize, usize),
    d2: &Digraph,
    v2w: (usize, usize),
) -> Result<Digraph> {
    let (u, v1) = uv1;
    let (v2, w) = v2w;
    require_arc(d1, u, v1)?;
    require_arc(d2, v2, w)?;
    let map = glue_map(d2.n(), v2, v1, d1.n());
    let mut arcs: Vec<(usize, usize)> = d1.arcs().into_iter().filter(|&a| a != (u, v1)).collect();
    arcs.extend(
        d2.arcs()
            .into_iter()
            .filter(|&a| a != (v2, w))
            .map(|(a, b)| (map[a], map[b])),
    );
    arcs.push((u, map[w]));
    Digraph::new(d1.n() + d2.n() - 1, &arcs)
}

/// Result of a bijoin with the kind of degeneracy it has.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bijoin {
    pub digraph: Digraph,
    /// Exactly one of t = w and u = v holds.
    pub degenerate: bool,
    /// Both t = w and u = v hold.
    pub bidirected: bool,
}

fn same_component_without(d: &Digraph, removed: usize, x: usize, y: usize) -> bool {
    let keep: Vec<usize> = (0..d.n()).filter(|&v| v != removed).collect();
    let h = d.induced(&keep);
    let pos = |v: usize| keep.iter().position(|&k| k == v).expect("kept vertex");
    weak_components(&h)
        .iter()
        .any(|c| c.contains(&pos(x)) && c.contains(&pos(y)))
}

/// Hajós bijoin with respect to ((t, a₁, w), (v, a₂, u)): drop ta₁, a₁w, va₂, a₂u,
/// identify a₁ with a₂ and add tu and vw. Labels as in [`directed_hajos_join`].
pub fn hajos_bijoin(
    d1: &Digraph,
    taw: (usize, usize, usize),
    d2: &Digraph,
    vau: (usize, usize, usize),
) -> Result<Bijoin> {
    let (t, a1, w) = taw;
    let (v, a2, u) = vau;
    for (d, x, y) in [(d1, t, a1), (d1, a1, w), (d2, v, a2), (d2, a2, u)] {
        if x >= d.n() || y >= d.n() || !d.has_arc(x, y) {
            return Err(Error::PreconditionViolated(format!("arc {x}→{y} is missing")));
        }
    }
    if !same_component_without(d1, a1, t, w) {
        return Err(Error::PreconditionViolated(format!(
            "{t} and {w} are separated once {a1} is removed"
        )));
    }
    if !same_component_without(d2, a2, u, v) {
        return Err(Error::PreconditionViolated(format!(
            "{u} and {v} are separated once {a2} is removed"
        )));
    }
    let map = glue_map(d2.n(), a2, a1, d1.n());
    let mut arcs: Vec<(usize, usize)> = d1
        .arcs()
        .into_iter()
        .filter(|&a| a != (t, a1) && a != (a1, w))
        .collect();
    arcs.extend(
        d2.arcs()
            .into_iter()
            .filter(|&a| a != (v, a2) && a != (a2, u))
            .map(|(a, b)| (map[a], map[b])),
    );
    arcs.push((t, map[u]));
    arcs.push((map[v], w));
    Ok(Bijoin {
        digraph: Digraph::new(d1.n() + d2.n() - 1, &arcs)?,
        degenerate: (t == w) != (u == v),
        bidirected: t == w && u == v,
    })
}

/// Bidirected Hajós join with respect to ([u, v₁], [w, v₂]).
pub fn bidirected_hajos_join(
    d1: &Digraph,
    uv1: (usize, usize),
    d2: &Digraph,
    wv2: (usize, usize),
) -> Result<Digraph> {
    let (u, v1) = uv1;
    let (w, v2) = wv2;
    for (d, x, y) in [(d1, u, v1), (d2, w, v2)] {
        if x >= d.n() || y >= d.n() || !d.has_digon(x, y) {
            return Err(Error::MissingDigon(x, y));
        }
    }
    Ok(hajos_bijoin(d1, (u, v1, u), d2, (w, v2, w))?.digraph)
}

/// One part of a tree join: a digraph whose local vertices `ends` play the tree edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct TreeJoinPart {
    pub digraph: Digraph,
    pub ends: (usize, usize),
}

/// Tree with `tree_n` vertices; `parts[i]` sits on `edges[i]`, its `ends.0` mapped to
/// `edges[i].0` and `ends.1` to `edges[i].1`. `cycle` lists tree vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct TreeJoinSpec {
    pub tree_n: usize,
    pub edges: Vec<(usize, usize)>,
    pub parts: Vec<TreeJoinPart>,
    pub cycle: Vec<usize>,
}

/// A tree join. Tree vertices keep labels 0..tree_n, then each part's other vertices
/// follow in part order; `part_maps[i][x]` is the label of local vertex x of part i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeJoin {
    pub digraph: Digraph,
    pub part_maps: Vec<Vec<usize>>,
    /// Internal tree vertices, where parts meet.
    pub junctions: Vec<usize>,
}

/// Which cycle lists are accepted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleRule {
    /// Leaves only, in the order of some plane embedding.
    Leaves,
    /// A partial Eulerian list: every leaf, internal vertices at most once, embedding order.
    PartialEulerian,
    /// Any list of distinct tree vertices.
    Unchecked,
}

fn tree_adjacency(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    if edges.len() + 1 != n || edges.is_empty() {
        return Err(Error::BadParameters("a tree with n vertices has n − 1 ≥ 1 edges".into()));
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a >= n || b >= n || a == b {
            return Err(Error::BadParameters(format!("bad tree edge ({a}, {b})")));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let t = Digraph::symmetric_from_edges(n, edges);
    if weak_components(&t).len() != 1 {
        return Err(Error::BadParameters("tree is not connected".into()));
    }
    Ok(adj)
}

/// Vertices on the side of `b` when tree edge ab is removed.
fn side_of(adj: &[Vec<usize>], a: usize, b: usize) -> Vec<bool> {
    let mut side = vec![false; adj.len()];
    side[b] = true;
    let mut stack = vec![b];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !(x == b && y == a) && !side[y] && y != a {
                side[y] = true;
                stack.push(y);
            }
        }
    }
    side
}

/// True when, for every tree edge, the listed vertices on each side form a circular
/// interval of `cycle`.
pub fn follows_embedding(tree_n: usize, edges: &[(usize, usize)], cycle: &[usize]) -> Result<bool> {
    let adj = tree_adjacency(tree_n, edges)?;
    for &(a, b) in edges {
        let side = side_of(&adj, a, b);
        let flags: Vec<bool> = cycle.iter().map(|&x| side[x]).collect();
        let changes = (0..flags.len())
            .filter(|&i| flags[i] != flags[(i + 1) % flags.len()])
            .count();
        if changes > 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tree join of the parts, each minus its tree digon, plus the dicycle `cycle`.
pub fn hajos_tree_join(spec: &TreeJoinSpec, rule: CycleRule) -> Result<TreeJoin> {
    let n = spec.tree_n;
    let adj = tree_adjacency(n, &spec.edges)?;
    if spec.parts.len() != spec.edges.len() {
        return Err(Error::BadParameters("one part per tree edge".into()));
    }
    let mut listed = vec![false; n];
    for &x in &spec.cycle {
        if x >= n || listed[x] {
            return Err(Error::BadEmbeddingOrder(format!("vertex {x} listed twice or unknown")));
        }
        listed[x] = true;
    }
    if spec.cycle.len() < 2 {
        return Err(Error::BadEmbeddingOrder("the cycle needs two vertices".into()));
    }
    let leaf = |v: usize| adj[v].len() == 1;
    match rule {
        CycleRule::Leaves | CycleRule::PartialEulerian => {
            if (0..n).any(|v| leaf(v) && !listed[v]) {
                return Err(Error::BadEmbeddingOrder("every leaf must be listed".into()));
            }
            if rule == CycleRule::Leaves && spec.cycle.iter().any(|&v| !leaf(v)) {
                return Err(Error::BadEmbeddingOrder("only leaves may be listed".into()));
            }
            if !follows_embedding(n, &spec.edges, &spec.cycle)? {
                return Err(Error::BadEmbeddingOrder(format!(
                    "{:?} is not the order of any embedding",
                    spec.cycle
                )));
            }
        }
        CycleRule::Unchecked => {}
    }
    let mut arcs = Vec::new();
    let mut next = n;
    let mut part_maps = Vec::new();
    for (part, &(eu, ev)) in spec.parts.iter().zip(&spec.edges) {
        let d = &part.digraph;
        let (lu, lv) = part.ends;
        if lu >= d.n() || lv >= d.n() || !d.has_digon(lu, lv) {
            return Err(Error::MissingDigon(lu, lv));
        }
        let map: Vec<usize> = (0..d.n())
            .map(|x| {
                if x == lu {
                    eu
                } else if x == lv {
                    ev
                } else {
                    next += 1;
                    next - 1
                }
            })
            .collect();
        arcs.extend(
            d.arcs()
                .into_iter()
                .filter(|&(a, b)| !((a == lu && b == lv) || (a == lv && b == lu)))
                .map(|(a, b)| (map[a], map[b])),
        );
        part_maps.push(map);
    }
    let l = spec.cycle.len();
    for i in 0..l {
        arcs.push((spec.cycle[i], spec.cycle[(i + 1) % l]));
    }
    Ok(TreeJoin {
        digraph: Digraph::new(next, &arcs)?,
        part_maps,
        junctions: (0..n).filter(|&v| !leaf(v)).collect(),
    })
}

/// Inputs of a parallel Hajós join. `a_side` is A, which contains `x`; C is the rest of
/// V(d_ac) plus `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ParallelJoinSpec {
    pub d_ac: Digraph,
    pub x: usize,
    pub a_side: Vec<usize>,
    pub t: usize,
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub d_b: Digraph,
    pub a: usize,
    pub b: usize,
}

/// Parallel join output: d_ac keeps its labels with x standing for a, the copy of x on
/// the C side is `b_label`, and the other vertices of d_b follow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParallelJoin {
    pub digraph: Digraph,
    pub b_label: usize,
    pub d_b_map: Vec<usize>,
}

pub fn parallel_hajos_join(spec: &ParallelJoinSpec) -> Result<ParallelJoin> {
    let d = &spec.d_ac;
    let n = d.n();
    let pv = |m: String| Err(Error::PreconditionViolated(m));
    if spec.x >= n || [spec.t, spec.u, spec.v, spec.w].iter().any(|&y| y >= n) {
        return pv("vertex out of range".into());
    }
    let mut in_a = vec![false; n];
    for &y in &spec.a_side {
        if y >= n {
            return pv(format!("vertex {y} out of range"));
        }
        in_a[y] = true;
    }
    if !in_a[spec.x] {
        return pv("A must contain x".into());
    }
    let in_c = |y: usize| y == spec.x || !in_a[y];
    if !(in_a[spec.t] && in_a[spec.w] && spec.t != spec.x && spec.w != spec.x) {
        return pv("t and w must lie in A − x".into());
    }
    if !(in_c(spec.u) && in_c(spec.v) && spec.u != spec.x && spec.v != spec.x) {
        return pv("u and v must lie in C − x".into());
    }
    // arcs between A − x and C − x are exactly tu and vw
    let cross: Vec<(usize, usize)> = d
        .arcs()
        .into_iter()
        .filter(|&(p, q)| p != spec.x && q != spec.x && in_a[p] != in_a[q])
        .collect();
    let mut want = vec![(spec.t, spec.u), (spec.v, spec.w)];
    want.sort_unstable();
    if cross != want {
        return pv(format!("arcs between A and C are {cross:?}, expected tu and vw"));
    }
    let a_minus: Vec<usize> = (0..n).filter(|&y| in_a[y] && y != spec.x).collect();
    let c_minus: Vec<usize> = (0..n).filter(|&y| !in_a[y]).collect();
    if !within_one_component(d, &a_minus, spec.t, spec.w) {
        return pv("t and w are not connected inside A − x".into());
    }
    if !within_one_component(d, &c_minus, spec.u, spec.v) {
        return pv("u and v are not connected inside C − x".into());
    }
    let db = &spec.d_b;
    if spec.a >= db.n() || spec.b >= db.n() || !db.has_digon(spec.a, spec.b) {
        return Err(Error::MissingDigon(spec.a, spec.b));
    }
    let b_label = n;
    let mut next = n + 1;
    let d_b_map: Vec<usize> = (0..db.n())
        .map(|y| {
            if y == spec.a {
                spec.x
            } else if y == spec.b {
                b_label
            } else {
                next += 1;
                next - 1
            }
        })
        .collect();
    let lift = |y: usize, other: usize| if y == spec.x && !in_a[other] { b_label } else { y };
    let mut arcs: Vec<(usize, usize)> = d.arcs().into_iter().map(|(p, q)| (lift(p, q), lift(q, p))).collect();
    arcs.extend(
        db.arcs()
            .into_iter()
            .filter(|&(p, q)| !((p == spec.a && q == spec.b) || (p == spec.b && q == spec.a)))
            .map(|(p, q)| (d_b_map[p], d_b_map[q])),
    );
    Ok(ParallelJoin {
        digraph: Digraph::new(next, &arcs)?,
        b_label,
        d_b_map,
    })
}

fn within_one_component(d: &Digraph, vs: &[usize], x: usize, y: usize) -> bool {
    let h = d.induced(vs);
    let px = vs.iter().position(|&v| v == x);
    let py = vs.iter().position(|&v| v == y);
    match (px, py) {
        (Some(px), Some(py)) => weak_components(&h).iter().any(|c| c.contains(&px) && c.contains(&py)),
        _ => false,
    }
}

/// Two tree joins of six copies of ↔K_4 on the same tree, one whose cycle follows the
/// embedding and one whose cycle crosses it.
pub fn tree_join_order_pair() -> (Digraph, Digraph) {
    let edges = vec![(0, 1), (0, 2), (0, 3), (0, 4), (2, 5), (2, 6)];
    let k4 = TreeJoinPart { digraph: Digraph::symmetric_complete(4), ends: (0, 1) };
    let build = |cycle: Vec<usize>, rule| {
        let spec = TreeJoinSpec { tree_n: 7, edges: edges.clone(), parts: vec![k4.clone(); 6], cycle };
        hajos_tree_join(&spec, rule).expect("valid tree join").digraph
    };
    (
        build(vec![1, 5, 6, 3, 4], CycleRule::Leaves),
        build(vec![1, 5, 3, 6, 4], CycleRule::Unchecked),
    )
}

//! Dicolourings: verification, the exact dichromatic number, greedy and backward-path
//! colourings, odd-dicycle-free 2-colouring and the dipolar combination step.

use serde::Serialize;

use crate::digraph::{find_cycle_in, strong_components, topological_order, Digraph};
use crate::error::{Error, Result};

/// Outcome of checking a vertex colouring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DicolouringCheck {
    Valid,
    /// A directed cycle whose vertices all carry `colour`.
    MonochromaticCycle { colour: usize, cycle: Vec<usize> },
}

impl DicolouringCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, DicolouringCheck::Valid)
    }
}

/// Number of colours in a colouring using labels 1..k.
pub fn colour_count(c: &[usize]) -> usize {
    c.iter().copied().max().unwrap_or(0)
}

/// Checks that every colour class induces an acyclic subdigraph.
pub fn verify_dicolouring(d: &Digraph, c: &[usize]) -> Result<DicolouringCheck> {
    if c.len() != d.n() {
        return Err(Error::PartialColouring(format!(
            "{} colours for {} vertices",
            c.len(),
            d.n()
        )));
    }
    if let Some(v) = c.iter().position(|&x| x == 0) {
        return Err(Error::PartialColouring(format!("vertex {v} has colour 0")));
    }
    let k = colour_count(c);
    for colour in 1..=k {
        let within: Vec<bool> = c.iter().map(|&x| x == colour).collect();
        if let Some(cycle) = find_cycle_in(d, &within) {
            return Ok(DicolouringCheck::MonochromaticCycle { colour, cycle });
        }
    }
    Ok(DicolouringCheck::Valid)
}

/// Greedy rule: each vertex takes the smaller of the least colour missing from its
/// coloured out-neighbours and the least colour missing from its coloured in-neighbours.
pub fn greedy_dicolour(d: &Digraph, order: &[usize]) -> Result<Vec<usize>> {
    check_permutation(d.n(), order)?;
    let mut c = vec![0usize; d.n()];
    for &v in order {
        let a = least_missing(d.out_neighbours(v).iter().map(|&w| c[w]));
        let b = least_missing(d.in_neighbours(v).iter().map(|&w| c[w]));
        c[v] = a.min(b);
    }
    Ok(c)
}

fn least_missing<I: Iterator<Item = usize>>(it: I) -> usize {
    let mut seen: Vec<bool> = Vec::new();
    for x in it {
        if x > 0 {
            if seen.len() <= x {
                seen.resize(x + 1, false);
            }
            seen[x] = true;
        }
    }
    (1..).find(|&i| i >= seen.len() || !seen[i]).unwrap_or(1)
}

pub(crate) fn check_permutation(n: usize, order: &[usize]) -> Result<()> {
    if order.len() != n {
        return Err(Error::InvalidInput(format!(
            "order has {} entries, expected {n}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return Err(Error::InvalidInput(format!("order is not a permutation (vertex {v})")));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Colours x by the largest number of vertices on a dipath of backward arcs ending at x.
pub fn gallai_roy_colour(d: &Digraph, order: &[usize]) -> Result<Vec<usize>> {
    check_permutation(d.n(), order)?;
    let mut pos = vec![0; d.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut f = vec![0usize; d.n()];
    for &x in order.iter().rev() {
        // a backward arc wx has w after x, and f(w) is already final
        f[x] = 1 + d
            .in_neighbours(x)
            .iter()
            .filter(|&&w| pos[w] > pos[x])
            .map(|&w| f[w])
            .max()
            .unwrap_or(0);
    }
    Ok(f)
}

/// Ordering with no long backward dipath.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BackwardPathCertificate {
    pub ordering: Vec<usize>,
    /// Vertex count of a longest dipath made of backward arcs.
    pub max_backward_path: usize,
}

/// From a valid colouring: classes in colour order, each topologically sorted.
pub fn backward_certificate(d: &Digraph, c: &[usize]) -> Result<BackwardPathCertificate> {
    if !verify_dicolouring(d, c)?.is_valid() {
        return Err(Error::InvalidInput("colouring is not a dicolouring".into()));
    }
    let mut ordering = Vec::with_capacity(d.n());
    for colour in 1..=colour_count(c) {
        let within: Vec<bool> = c.iter().map(|&x| x == colour).collect();
        ordering.extend(topological_order(d, &within).expect("class is acyclic"));
    }
    let f = gallai_roy_colour(d, &ordering)?;
    Ok(BackwardPathCertificate {
        ordering,
        max_backward_path: colour_count(&f),
    })
}

/// Either a 2-dicolouring or an odd directed cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum OddFreeResult {
    Colouring(Vec<usize>),
    OddCycle(Vec<usize>),
}

/// Two-colours each strong component by a bipartition of its underlying graph, or
/// extracts an odd directed cycle when some component is not bipartite.
pub fn two_colour_odd_free(d: &Digraph) -> OddFreeResult {
    let n = d.n();
    let mut colour = vec![0usize; n];
    let mut comp_id = vec![0usize; n];
    let comps = strong_components(d);
    for (i, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_id[v] = i;
        }
    }
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for comp in &comps {
        let root = comp[0];
        colour[root] = 1;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in d.neighbours(v) {
                if comp_id[w] != comp_id[v] {
                    continue;
                }
                if colour[w] == 0 {
                    colour[w] = 3 - colour[v];
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                } else if colour[w] == colour[v] {
                    let cycle = odd_undirected_cycle(v, w, &parent, &depth);
                    return OddFreeResult::OddCycle(odd_dicycle_from(d, &cycle, comp_id[v], &comp_id));
                }
            }
        }
    }
    OddFreeResult::Colouring(colour)
}

/// Odd cycle of the BFS tree closed by the edge vw.
fn odd_undirected_cycle(v: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (v, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while a != b {
        if depth[a] >= depth[b] {
            a = parent[a];
            left.push(a);
        } else {
            b = parent[b];
            right.push(b);
        }
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Replaces each edge of an odd cycle by a shortest dipath and extracts an odd dicycle.
fn odd_dicycle_from(d: &Digraph, cycle: &[usize], comp: usize, comp_id: &[usize]) -> Vec<usize> {
    let m = cycle.len();
    let mut walk = vec![cycle[0]];
    for i in 0..m {
        let (a, b) = (cycle[i], cycle[(i + 1) % m]);
        let p = shortest_dipath(d, a, b, |x| comp_id[x] == comp).expect("strong component");
        if (p.len() - 1) % 2 == 0 && d.has_arc(b, a) {
            return p;
        }
        walk.extend_from_slice(&p[1..]);
    }
    odd_cycle_in_closed_walk(&walk).expect("odd closed walk contains an odd dicycle")
}

/// Shortest directed path from `s` to `t` through vertices accepted by `ok`.
pub(crate) fn shortest_dipath<F: Fn(usize) -> bool>(
    d: &Digraph,
    s: usize,
    t: usize,
    ok: F,
) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; d.n()];
    prev[s] = s;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        if v == t {
            let mut p = vec![t];
            let mut x = t;
            while x != s {
                x = prev[x];
                p.push(x);
            }
            p.reverse();
            return Some(p);
        }
        for &w in d.out_neighbours(v) {
            if prev[w] == usize::MAX && ok(w) {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Given a closed walk (first = last) of odd length, returns a simple cycle of odd length.
fn odd_cycle_in_closed_walk(walk: &[usize]) -> Option<Vec<usize>> {
    let mut stack: Vec<usize> = Vec::new();
    for &v in walk {
        if let Some(p) = stack.iter().position(|&x| x == v) {
            let cyc: Vec<usize> = stack.drain(p..).collect();
            if cyc.len() % 2 == 1 {
                return Some(cyc);
            }
        }
        stack.push(v);
    }
    None
}

/// Merges a colouring of d[s] with c colours and a colouring of d − s with at most 2c
/// colours. `inner` is indexed by the position in `s` (sorted), `outer` by the position
/// in the sorted complement.
pub fn dipolar_combine(d: &Digraph, s: &[usize], inner: &[usize], outer: &[usize]) -> Result<Vec<usize>> {
    let n = d.n();
    let mut in_s = vec![false; n];
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &v in &sorted {
        if v >= n {
            return Err(Error::IndexOutOfRange { vertex: v, n });
        }
        in_s[v] = true;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !in_s[v]).collect();
    if inner.len() != sorted.len() || outer.len() != rest.len() {
        return Err(Error::InvalidInput("colouring lengths do not match the split".into()));
    }
    for &x in &sorted {
        let out_inside = d.out_neighbours(x).iter().all(|&y| in_s[y]);
        let in_inside = d.in_neighbours(x).iter().all(|&y| in_s[y]);
        if !out_inside && !in_inside {
            return Err(Error::NotDipolar(x));
        }
    }
    let ds = d.induced(&sorted);
    let drest = d.induced(&rest);
    if !verify_dicolouring(&ds, inner)?.is_valid() {
        return Err(Error::InvalidInput("inner colouring is not a dicolouring".into()));
    }
    if !verify_dicolouring(&drest, outer)?.is_valid() {
        return Err(Error::InvalidInput("outer colouring is not a dicolouring".into()));
    }
    let c = colour_count(inner);
    if colour_count(outer) > 2 * c.max(1) {
        return Err(Error::InvalidInput(format!(
            "outer colouring uses {} colours, more than 2c = {}",
            colour_count(outer),
            2 * c
        )));
    }
    let mut col = vec![0; n];
    for (i, &x) in sorted.iter().enumerate() {
        let in_plus = d.in_neighbours(x).iter().all(|&y| in_s[y]);
        col[x] = if in_plus { inner[i] } else { c + inner[i] };
    }
    for (i, &x) in rest.iter().enumerate() {
        col[x] = outer[i];
    }
    debug_assert!(verify_dicolouring(d, &col).map(|r| r.is_valid()).unwrap_or(false));
    Ok(col)
}

/// χ⃗ together with an optimal colouring and the number of search nodes used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactDicolouring {
    pub chi: usize,
    pub colouring: Vec<usize>,
    pub nodes: u64,
}

/// Exact dichromatic number by branch and bound over each strong component.
///
/// Vertices are branched in a fixed order (most already-placed neighbours first), colours
/// in ascending order, and a vertex may only open the next unused colour. The first
/// colouring found for the least feasible k is returned, so the output is deterministic.
pub fn exact_dichromatic(d: &Digraph, budget: Option<u64>) -> Result<ExactDicolouring> {
    let mut colouring = vec![0usize; d.n()];
    let mut chi = if d.n() == 0 { 0 } else { 1 };
    let mut nodes = 0u64;
    let comps = strong_components(d);
    let mut lower = chi;
    for (ci, comp) in comps.iter().enumerate() {
        if comp.len() == 1 {
            colouring[comp[0]] = 1;
            continue;
        }
        if comp.len() > 128 {
            return Err(Error::InvalidInput(format!(
                "strong component of {} vertices exceeds the exact solver limit of 128",
                comp.len()
            )));
        }
        let h = d.induced(comp);
        let remaining = budget.map(|b| b.saturating_sub(nodes));
        match solve_strong(&h, remaining) {
            Ok((k, c, used)) => {
                nodes += used;
                chi = chi.max(k);
                lower = lower.max(k);
                for (i, &v) in comp.iter().enumerate() {
                    colouring[v] = c[i];
                }
            }
            Err(Error::BudgetExceeded { lower: lo, upper: up }) => {
                let mut upper = up.max(chi);
                for other in &comps[ci + 1..] {
                    let g = d.induced(other);
                    let order: Vec<usize> = (0..g.n()).collect();
                    upper = upper.max(colour_count(&greedy_dicolour(&g, &order)?));
                }
                return Err(Error::BudgetExceeded {
                    lower: lower.max(lo),
                    upper,
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ExactDicolouring {
        chi,
        colouring,
        nodes,
    })
}

/// Branch order: start from the vertex of largest total degree, then repeatedly take the
/// vertex with most already-ordered neighbours (ties: larger degree, then smaller index).
fn branch_order(d: &Digraph) -> Vec<usize> {
    let n = d.n();
    let deg: Vec<usize> = (0..n).map(|v| d.out_degree(v) + d.in_degree(v)).collect();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| (links[a], deg[a], std::cmp::Reverse(a)).cmp(&(links[b], deg[b], std::cmp::Reverse(b))))
            .expect("vertex left");
        placed[v] = true;
        order.push(v);
        for w in d.neighbours(v) {
            links[w] += 1;
        }
    }
    order
}

/// Largest digon clique found greedily from each start vertex.
fn digon_clique_bound(d: &Digraph) -> usize {
    let n = d.n();
    let mut best = if n > 0 { 1 } else { 0 };
    for s in 0..n {
        let mut clique = vec![s];
        for v in 0..n {
            if v != s && clique.iter().all(|&u| d.has_digon(u, v)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

struct Search<'a> {
    order: &'a [usize],
    out: Vec<u128>,
    inn: Vec<u128>,
    classes: Vec<u128>,
    colour: Vec<usize>,
    nodes: u64,
    budget: Option<u64>,
}

impl Search<'_> {
    /// Would adding v to the class `set` close a directed cycle?
    #[inline]
    fn closes_cycle(&self, v: usize, set: u128) -> bool {
        let outs = self.out[v] & set;
        let ins = self.inn[v] & set;
        if outs == 0 || ins == 0 {
            return false;
        }
        if outs & ins != 0 {
            return true;
        }
        let mut reach = outs;
        let mut frontier = outs;
        while frontier != 0 {
            let mut next = 0u128;
            let mut f = frontier;
            while f != 0 {
                let w = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.out[w];
            }
            next &= set & !reach;
            if next & ins != 0 {
                return true;
            }
            reach |= next;
            frontier = next;
        }
        false
    }

    /// Depth-first search for a k-dicolouring. `Err` means the budget ran out.
    fn dfs(&mut self, depth: usize, used: usize, k: usize) -> std::result::Result<bool, ()> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth];
        let limit = (used + 1).min(k);
        for c in 0..limit {
            self.nodes += 1;
            if let Some(b) = self.budget {
                if self.nodes > b {
                    return Err(());
                }
            }
            if self.closes_cycle(v, self.classes[c]) {
                continue;
            }
            self.classes[c] |= 1 << v;
            self.colour[v] = c + 1;
            let found = self.dfs(depth + 1, used.max(c + 1), k)?;
            if found {
                return Ok(true);
            }
            self.classes[c] &= !(1 << v);
            self.colour[v] = 0;
        }
        Ok(false)
    }
}

/// Exact search on one strong digraph with at least two vertices.
fn solve_strong(d: &Digraph, budget: Option<u64>) -> Result<(usize, Vec<usize>, u64)> {
    let order = branch_order(d);
    let greedy = greedy_dicolour(d, &order)?;
    let upper = colour_count(&greedy);
    let lower = digon_clique_bound(d).max(2);
    let mut search = Search {
        order: &order,
        out: (0..d.n()).map(|v| d.out_mask(v)).collect(),
        inn: (0..d.n()).map(|v| d.in_mask(v)).collect(),
        classes: Vec::new(),
        colour: vec![0; d.n()],
        nodes: 0,
        budget,
    };
    for k in lower..upper {
        search.classes = vec![0; k];
        search.colour = vec![0; d.n()];
        match search.dfs(0, 0, k) {
            Ok(true) => return Ok((k, search.colour.clone(), search.nodes)),
            Ok(false) => {}
            Err(()) => return Err(Error::BudgetExceeded { lower: k, upper }),
        }
    }
    // greedy was optimal; normalise it to first-use order along the branch order
    Ok((upper, normalise(&greedy, &order), search.nodes))
}

/// Relabels colours so that they first appear in increasing order along `order`.
fn normalise(c: &[usize], order: &[usize]) -> Vec<usize> {
    let mut map = vec![0usize; colour_count(c) + 1];
    let mut next = 0;
    let mut out = vec![0; c.len()];
    for &v in order {
        if map[c[v]] == 0 {
            next += 1;
            map[c[v]] = next;
        }
        out[v] = map[c[v]];
    }
    out
}

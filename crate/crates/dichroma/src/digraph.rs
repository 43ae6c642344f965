//! Digraphs, multigraphs and the traversal algorithms shared by every other module.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A loop-free digraph on vertices `0..n` with at most one arc per ordered pair.
///
/// Arcs are stored both as sorted adjacency lists and as a dense bit matrix,
/// so membership is O(1) and neighbourhood scans are O(degree).
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "DigraphRepr", try_from = "DigraphRepr")]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    words: usize,
    bits: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct DigraphRepr {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl From<Digraph> for DigraphRepr {
    fn from(d: Digraph) -> Self {
        DigraphRepr {
            n: d.n,
            arcs: d.arcs(),
        }
    }
}

impl TryFrom<DigraphRepr> for Digraph {
    type Error = Error;
    fn try_from(r: DigraphRepr) -> Result<Self> {
        Digraph::new(r.n, &r.arcs)
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.n, self.arcs())
    }
}

impl Digraph {
    /// Validating constructor: rejects loops, duplicates and out-of-range endpoints.
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Digraph> {
        let mut d = Digraph::empty(n);
        for &(u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::IndexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopArc(u));
            }
            if d.has_arc(u, v) {
                return Err(Error::DuplicateArc(u, v));
            }
            d.insert(u, v);
        }
        d.sort_lists();
        Ok(d)
    }

    /// Builds a digraph from arcs that may repeat or contain loops; both are dropped.
    /// Panics on out-of-range endpoints, which is a programming error for internal builders.
    pub fn from_arcs_lossy<I: IntoIterator<Item = (usize, usize)>>(n: usize, arcs: I) -> Digraph {
        let mut d = Digraph::empty(n);
        for (u, v) in arcs {
            assert!(u < n && v < n, "arc ({u}, {v}) out of range for n = {n}");
            if u != v && !d.has_arc(u, v) {
                d.insert(u, v);
            }
        }
        d.sort_lists();
        d
    }

    pub fn empty(n: usize) -> Digraph {
        let words = n.div_ceil(64).max(1);
        Digraph {
            n,
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
            words,
            bits: vec![0; words * n],
        }
    }

    fn insert(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.out[u].push(v);
        self.inn[v].push(u);
    }

    fn sort_lists(&mut self) {
        for l in self.out.iter_mut().chain(self.inn.iter_mut()) {
            l.sort_unstable();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut a = Vec::with_capacity(self.arc_count());
        for u in 0..self.n {
            for &v in &self.out[u] {
                a.push((u, v));
            }
        }
        a
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn has_digon(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) && self.has_arc(v, u)
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    pub fn out_neighbours(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbours(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    /// Neighbours in the underlying graph, ascending, without repetition.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut r = Vec::with_capacity(self.out[v].len() + self.inn[v].len());
        let (a, b) = (&self.out[v], &self.inn[v]);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                r.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                r.push(b[j]);
                j += 1;
            } else {
                r.push(a[i]);
                i += 1;
                j += 1;
            }
        }
        r
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    /// min(d⁺(v), d⁻(v))
    pub fn d_min(&self, v: usize) -> usize {
        self.out[v].len().min(self.inn[v].len())
    }

    /// max(d⁺(v), d⁻(v))
    pub fn d_max(&self, v: usize) -> usize {
        self.out[v].len().max(self.inn[v].len())
    }

    pub fn delta_max(&self) -> usize {
        (0..self.n).map(|v| self.d_max(v)).max().unwrap_or(0)
    }

    pub fn delta_min(&self) -> usize {
        (0..self.n).map(|v| self.d_min(v)).max().unwrap_or(0)
    }

    /// First digon in lexicographic order, if any.
    pub fn find_digon(&self) -> Option<(usize, usize)> {
        for u in 0..self.n {
            for &v in &self.out[u] {
                if u < v && self.has_arc(v, u) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_oriented(&self) -> bool {
        self.find_digon().is_none()
    }

    /// Every arc belongs to a digon.
    pub fn is_symmetric(&self) -> bool {
        self.arcs().iter().all(|&(u, v)| self.has_arc(v, u))
    }

    pub fn reverse(&self) -> Digraph {
        Digraph::from_arcs_lossy(self.n, self.arcs().into_iter().map(|(u, v)| (v, u)))
    }

    /// Subdigraph induced by `vs`; vertex `vs[i]` becomes `i`.
    pub fn induced(&self, vs: &[usize]) -> Digraph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i;
        }
        let mut arcs = Vec::new();
        for (i, &v) in vs.iter().enumerate() {
            for &w in &self.out[v] {
                if pos[w] != usize::MAX {
                    arcs.push((i, pos[w]));
                }
            }
        }
        Digraph::from_arcs_lossy(vs.len(), arcs)
    }

    /// Copy with some arcs removed and others added. Removing a missing arc or adding
    /// an existing one is an error.
    pub fn edit(&self, remove: &[(usize, usize)], add: &[(usize, usize)]) -> Result<Digraph> {
        let mut set: BTreeSet<(usize, usize)> = self.arcs().into_iter().collect();
        for &(u, v) in remove {
            if !set.remove(&(u, v)) {
                return Err(Error::MissingArc(u, v));
            }
        }
        for &(u, v) in add {
            if u >= self.n || v >= self.n {
                return Err(Error::IndexOutOfRange {
                    vertex: u.max(v),
                    n: self.n,
                });
            }
            if u == v {
                return Err(Error::LoopArc(u));
            }
            if !set.insert((u, v)) {
                return Err(Error::DuplicateArc(u, v));
            }
        }
        Ok(Digraph::from_arcs_lossy(self.n, set))
    }

    /// Disjoint union; part `i` is shifted by the returned offset `i`.
    pub fn disjoint_union(parts: &[&Digraph]) -> (Digraph, Vec<usize>) {
        let mut offsets = Vec::with_capacity(parts.len());
        let mut n = 0;
        let mut arcs = Vec::new();
        for p in parts {
            offsets.push(n);
            arcs.extend(p.arcs().into_iter().map(|(u, v)| (u + n, v + n)));
            n += p.n;
        }
        (Digraph::from_arcs_lossy(n, arcs), offsets)
    }

    /// Out-neighbourhood as a 128-bit mask. Only valid for n ≤ 128.
    #[inline]
    pub fn out_mask(&self, v: usize) -> u128 {
        debug_assert!(self.n <= 128);
        let lo = self.bits[v * self.words] as u128;
        if self.words > 1 {
            lo | (self.bits[v * self.words + 1] as u128) << 64
        } else {
            lo
        }
    }

    /// In-neighbourhood as a 128-bit mask. Only valid for n ≤ 128.
    pub fn in_mask(&self, v: usize) -> u128 {
        self.inn[v].iter().fold(0u128, |m, &u| m | 1 << u)
    }

    // Standard families.

    /// C⃗_n; for n = 2 this is a digon.
    pub fn directed_cycle(n: usize) -> Digraph {
        Digraph::from_arcs_lossy(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn directed_path(n: usize) -> Digraph {
        Digraph::from_arcs_lossy(n, (1..n).map(|i| (i - 1, i)))
    }

    /// ↔C_n
    pub fn symmetric_cycle(n: usize) -> Digraph {
        Digraph::from_arcs_lossy(
            n,
            (0..n).flat_map(|i| [(i, (i + 1) % n), ((i + 1) % n, i)]),
        )
    }

    /// ↔K_n
    pub fn symmetric_complete(n: usize) -> Digraph {
        Digraph::from_arcs_lossy(
            n,
            (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))),
        )
    }

    /// TT_n with arcs from lower to higher index.
    pub fn transitive_tournament(n: usize) -> Digraph {
        Digraph::from_arcs_lossy(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    /// Symmetric wheel: hub 0 joined by digons to the symmetric cycle 1..=rim.
    pub fn symmetric_wheel(rim: usize) -> Digraph {
        let mut arcs = Vec::new();
        for i in 0..rim {
            let (a, b) = (1 + i, 1 + (i + 1) % rim);
            arcs.extend([(a, b), (b, a), (0, a), (a, 0)]);
        }
        Digraph::from_arcs_lossy(rim + 1, arcs)
    }

    /// The symmetric digraph of an undirected simple graph.
    pub fn symmetric_from_edges(n: usize, edges: &[(usize, usize)]) -> Digraph {
        Digraph::from_arcs_lossy(n, edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]))
    }
}

/// Undirected multigraph; edges keep their input order, which is also the order
/// edge colourings refer to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Multigraph> {
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::IndexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopArc(u));
            }
        }
        Ok(Multigraph {
            n,
            edges: edges.to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
            .count()
    }

    /// Largest number of parallel edges between two vertices (μ).
    pub fn max_multiplicity(&self) -> usize {
        let mut keys: Vec<(usize, usize)> =
            self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        keys.sort_unstable();
        let mut best = 0;
        let mut i = 0;
        while i < keys.len() {
            let mut j = i;
            while j < keys.len() && keys[j] == keys[i] {
                j += 1;
            }
            best = best.max(j - i);
            i = j;
        }
        best
    }

    pub fn is_simple(&self) -> bool {
        self.max_multiplicity() <= 1
    }

    /// `Some(k)` when every vertex has degree k.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        match deg.first() {
            Some(&k) if deg.iter().all(|&d| d == k) => Some(k),
            Some(_) => None,
            None => Some(0),
        }
    }

    /// Incident edge indices per vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push(i);
            inc[v].push(i);
        }
        inc
    }

    /// Connected components (vertex lists in ascending order, components by least vertex).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let inc = self.incidence();
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut stack = vec![s];
            let mut members = vec![s];
            while let Some(x) = stack.pop() {
                for &e in &inc[x] {
                    let (a, b) = self.edges[e];
                    let y = if a == x { b } else { a };
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Sub-multigraph on the given edge indices (same vertex set).
    pub fn edge_subgraph(&self, idx: &[usize]) -> Multigraph {
        Multigraph {
            n: self.n,
            edges: idx.iter().map(|&i| self.edges[i]).collect(),
        }
    }

    /// Sh(k): three vertices with ⌊k/2⌋, ⌊k/2⌋ and ⌈k/2⌉ parallel edges on 01, 12 and 20.
    pub fn shannon(k: usize) -> Multigraph {
        let mut edges = Vec::new();
        edges.extend(std::iter::repeat_n((0, 1), k / 2));
        edges.extend(std::iter::repeat_n((1, 2), k / 2));
        edges.extend(std::iter::repeat_n((2, 0), k.div_ceil(2)));
        Multigraph { n: 3, edges }
    }

    pub fn complete(n: usize) -> Multigraph {
        let edges = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Multigraph { n, edges }
    }
}

/// Disjoint vertex sets covering `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSetPartition {
    pub parts: Vec<Vec<usize>>,
}

impl VertexSetPartition {
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<VertexSetPartition> {
        let p = VertexSetPartition { parts };
        p.part_index(n)?;
        Ok(p)
    }

    pub fn singletons(n: usize) -> VertexSetPartition {
        VertexSetPartition {
            parts: (0..n).map(|v| vec![v]).collect(),
        }
    }

    /// Map vertex → part number, validating the partition.
    pub fn part_index(&self, n: usize) -> Result<Vec<usize>> {
        let mut idx = vec![usize::MAX; n];
        for (i, p) in self.parts.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::InvalidPartition(format!("part {i} is empty")));
            }
            for &v in p {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("vertex {v} out of range")));
                }
                if idx[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
                idx[v] = i;
            }
        }
        if let Some(v) = idx.iter().position(|&i| i == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(idx)
    }
}

/// Strong components in topological order of the condensation; each sorted ascending.
pub fn strong_components(d: &Digraph) -> Vec<Vec<usize>> {
    // Iterative Tarjan. Tarjan emits sinks first, so the list is reversed at the end.
    let n = d.n();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;
    for s in 0..n {
        if index[s] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(s, 0)];
        index[s] = next;
        low[s] = next;
        next += 1;
        stack.push(s);
        on_stack[s] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < d.out[v].len() {
                let w = d.out[v][*i];
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps.reverse();
    comps
}

pub fn is_strong(d: &Digraph) -> bool {
    d.n() > 0 && strong_components(d).len() == 1
}

/// Components of the underlying graph, each ascending, ordered by least vertex.
pub fn weak_components(d: &Digraph) -> Vec<Vec<usize>> {
    let n = d.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut comp = vec![s];
        while let Some(x) = stack.pop() {
            for &y in d.out[x].iter().chain(d.inn[x].iter()) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                    comp.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(d: &Digraph) -> bool {
    d.n() > 0 && weak_components(d).len() == 1
}

/// Biconnected components of the underlying graph. A bridge is its own two-vertex block
/// and an isolated vertex is a one-vertex block. Blocks are sorted ascending and listed
/// by least vertex.
pub fn blocks(d: &Digraph) -> Vec<Vec<usize>> {
    let n = d.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| d.neighbours(v)).collect();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if disc[s] != usize::MAX {
            continue;
        }
        if adj[s].is_empty() {
            disc[s] = time;
            time += 1;
            out.push(vec![s]);
            continue;
        }
        disc[s] = time;
        low[s] = time;
        time += 1;
        // (vertex, parent, next neighbour position)
        let mut call = vec![(s, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    call.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut comp = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            comp.insert(a);
                            comp.insert(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        out.push(comp.into_iter().collect());
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Cut vertices of the underlying graph, ascending.
pub fn cut_vertices(d: &Digraph) -> Vec<usize> {
    let mut count = vec![0usize; d.n()];
    for b in blocks(d) {
        for v in b {
            count[v] += 1;
        }
    }
    (0..d.n()).filter(|&v| count[v] > 1).collect()
}

/// Underlying graph connected, at least two vertices and no cut vertex.
pub fn is_biconnected(d: &Digraph) -> bool {
    d.n() >= 2 && is_connected(d) && cut_vertices(d).is_empty()
}

/// Quotient digraph: part `i` becomes vertex `i`; arcs inside a part are dropped.
pub fn contract(d: &Digraph, part: &VertexSetPartition) -> Result<Digraph> {
    let idx = part.part_index(d.n())?;
    Ok(Digraph::from_arcs_lossy(
        part.parts.len(),
        d.arcs().into_iter().map(|(u, v)| (idx[u], idx[v])),
    ))
}

/// Result of an Euler tour search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EulerTour {
    /// Edge indices in traversal order, and the closed vertex walk (first = last).
    Tour {
        edges: Vec<usize>,
        vertices: Vec<usize>,
    },
    OddVertex(usize),
    /// Two vertices carrying edges that lie in different components.
    Disconnected(usize, usize),
}

/// Hierholzer's algorithm on a multigraph, starting at the least vertex with an edge.
pub fn euler_tour(g: &Multigraph) -> EulerTour {
    let deg = g.degrees();
    if let Some(v) = (0..g.n()).find(|&v| deg[v] % 2 == 1) {
        return EulerTour::OddVertex(v);
    }
    let Some(start) = (0..g.n()).find(|&v| deg[v] > 0) else {
        return EulerTour::Tour {
            edges: Vec::new(),
            vertices: Vec::new(),
        };
    };
    let comps = g.components();
    let with_edges: Vec<&Vec<usize>> = comps.iter().filter(|c| deg[c[0]] > 0 || c.len() > 1).collect();
    if with_edges.len() > 1 {
        return EulerTour::Disconnected(with_edges[0][0], with_edges[1][0]);
    }
    let inc = g.incidence();
    let mut used = vec![false; g.edge_count()];
    let mut ptr = vec![0usize; g.n()];
    // stack of (vertex, edge used to arrive)
    let mut stack: Vec<(usize, usize)> = vec![(start, usize::MAX)];
    let mut edges = Vec::new();
    let mut vertices = Vec::new();
    while let Some(&(v, e_in)) = stack.last() {
        let mut advanced = false;
        while ptr[v] < inc[v].len() {
            let e = inc[v][ptr[v]];
            ptr[v] += 1;
            if !used[e] {
                used[e] = true;
                let (a, b) = g.edges()[e];
                let w = if a == v { b } else { a };
                stack.push((w, e));
                advanced = true;
                break;
            }
        }
        if !advanced {
            stack.pop();
            vertices.push(v);
            if e_in != usize::MAX {
                edges.push(e_in);
            }
        }
    }
    edges.reverse();
    vertices.reverse();
    EulerTour::Tour { edges, vertices }
}

/// BFS order over the underlying graph from `root`, neighbours in ascending order.
pub fn bfs_order(d: &Digraph, root: usize) -> Result<Vec<usize>> {
    if root >= d.n() {
        return Err(Error::IndexOutOfRange {
            vertex: root,
            n: d.n(),
        });
    }
    let alive = vec![true; d.n()];
    let order = bfs_within(d, root, &alive);
    if order.len() != d.n() {
        return Err(Error::Disconnected);
    }
    Ok(order)
}

/// BFS over the underlying graph restricted to `alive` vertices.
pub(crate) fn bfs_within(d: &Digraph, root: usize, alive: &[bool]) -> Vec<usize> {
    let mut seen = vec![false; d.n()];
    let mut order = Vec::new();
    let mut q = VecDeque::new();
    seen[root] = true;
    q.push_back(root);
    while let Some(v) = q.pop_front() {
        order.push(v);
        for w in d.neighbours(v) {
            if alive[w] && !seen[w] {
                seen[w] = true;
                q.push_back(w);
            }
        }
    }
    order
}

/// Length of a shortest cycle of the underlying simple graph (digons do not count).
pub fn girth(d: &Digraph) -> Option<usize> {
    let n = d.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| d.neighbours(v)).collect();
    let mut best: Option<usize> = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    q.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Length of a shortest directed cycle (a digon has length 2).
pub fn digirth(d: &Digraph) -> Option<usize> {
    let n = d.n();
    let mut best: Option<usize> = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        'bfs: while let Some(v) = q.pop_front() {
            for &w in d.out_neighbours(v) {
                if w == s {
                    let len = dist[v] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                    break 'bfs;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
    }
    best
}

/// A directed cycle inside the vertex set `within`, if any, as a vertex sequence.
pub fn find_cycle_in(d: &Digraph, within: &[bool]) -> Option<Vec<usize>> {
    let n = d.n();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        if !within[s] || state[s] != 0 {
            continue;
        }
        let mut call = vec![(s, 0usize)];
        state[s] = 1;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            let outs = d.out_neighbours(v);
            if *i < outs.len() {
                let w = outs[*i];
                *i += 1;
                if !within[w] {
                    continue;
                }
                if state[w] == 1 {
                    let mut cyc = vec![v];
                    let mut x = v;
                    while x != w {
                        x = parent[x];
                        cyc.push(x);
                    }
                    cyc.reverse();
                    return Some(cyc);
                }
                if state[w] == 0 {
                    state[w] = 1;
                    parent[w] = v;
                    call.push((w, 0));
                }
            } else {
                state[v] = 2;
                call.pop();
            }
        }
    }
    None
}

/// Topological order of the sub-digraph induced by `within`, or `None` if it has a cycle.
pub fn topological_order(d: &Digraph, within: &[bool]) -> Option<Vec<usize>> {
    let n = d.n();
    let mut indeg = vec![0usize; n];
    for v in 0..n {
        if within[v] {
            indeg[v] = d.in_neighbours(v).iter().filter(|&&u| within[u]).count();
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| within[v] && indeg[v] == 0).collect();
    let mut order = Vec::new();
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &w in d.out_neighbours(v) {
            if within[w] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
    }
    (order.len() == within.iter().filter(|&&b| b).count()).then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reach_matrix(d: &Digraph) -> Vec<Vec<bool>> {
        let n = d.n();
        let mut r = vec![vec![false; n]; n];
        for (s, row) in r.iter_mut().enumerate() {
            row[s] = true;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in d.out_neighbours(x) {
                    if !row[y] {
                        row[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        r
    }

    #[test]
    fn build_rejects_bad_arcs() {
        assert_eq!(Digraph::new(1, &[(0, 0)]), Err(Error::LoopArc(0)));
        assert_eq!(
            Digraph::new(2, &[(0, 1), (0, 1)]),
            Err(Error::DuplicateArc(0, 1))
        );
        assert!(matches!(
            Digraph::new(2, &[(0, 2)]),
            Err(Error::IndexOutOfRange { vertex: 2, n: 2 })
        ));
        let digon = Digraph::new(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(!digon.is_oriented());
        assert!(Digraph::directed_cycle(3).is_oriented());
    }

    #[test]
    fn degrees() {
        let d = Digraph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(d.out_degree(0), 2);
        assert_eq!(d.d_min(0), 0);
        assert_eq!(d.d_max(0), 2);
        assert_eq!(d.delta_max(), 2);
        assert_eq!(d.delta_min(), 1);
        assert_eq!(d.neighbours(2), vec![0, 1]);
    }

    #[test]
    fn strong_components_small() {
        assert_eq!(strong_components(&Digraph::directed_cycle(3)), vec![vec![0, 1, 2]]);
        assert_eq!(
            strong_components(&Digraph::transitive_tournament(3)),
            vec![vec![0], vec![1], vec![2]]
        );
        let rev = Digraph::transitive_tournament(3).reverse();
        assert_eq!(strong_components(&rev), vec![vec![2], vec![1], vec![0]]);
    }

    #[test]
    fn strong_components_match_reachability_exhaustive() {
        for n in 1..=4usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
                .collect();
            for mask in 0u32..(1 << pairs.len()) {
                let arcs: Vec<_> = (0..pairs.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| pairs[i])
                    .collect();
                let d = Digraph::new(n, &arcs).unwrap();
                let r = reach_matrix(&d);
                let comps = strong_components(&d);
                let mut id = vec![0; n];
                for (i, c) in comps.iter().enumerate() {
                    for &v in c {
                        id[v] = i;
                    }
                }
                for u in 0..n {
                    for v in 0..n {
                        assert_eq!(id[u] == id[v], r[u][v] && r[v][u]);
                        // topological: an arc never goes to an earlier component
                        if d.has_arc(u, v) {
                            assert!(id[u] <= id[v]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn blocks_of_two_triangles_sharing_a_vertex() {
        let d = Digraph::new(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(blocks(&d), vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(cut_vertices(&d), vec![2]);
        assert_eq!(blocks(&Digraph::symmetric_complete(4)).len(), 1);
        assert!(is_biconnected(&Digraph::symmetric_complete(4)));
    }

    #[test]
    fn blocks_bridge_and_isolated() {
        let d = Digraph::new(4, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(blocks(&d), vec![vec![0, 1], vec![1, 2], vec![3]]);
    }

    #[test]
    fn contract_examples() {
        let c4 = Digraph::directed_cycle(4);
        let p = VertexSetPartition::new(4, vec![vec![0, 1], vec![2], vec![3]]).unwrap();
        assert_eq!(contract(&c4, &p).unwrap(), Digraph::directed_cycle(3));
        let digon = Digraph::directed_cycle(2);
        let q = VertexSetPartition::new(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(contract(&digon, &q).unwrap(), Digraph::empty(1));
        assert_eq!(
            contract(&c4, &VertexSetPartition::singletons(4)).unwrap(),
            c4
        );
        assert!(matches!(
            contract(&c4, &VertexSetPartition { parts: vec![vec![0, 1], vec![1, 2, 3]] }),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn euler_examples() {
        match euler_tour(&Multigraph::complete(3)) {
            EulerTour::Tour { edges, vertices } => {
                assert_eq!(edges.len(), 3);
                assert_eq!(vertices.first(), vertices.last());
            }
            other => panic!("{other:?}"),
        }
        let p3 = Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(euler_tour(&p3), EulerTour::OddVertex(0));
        match euler_tour(&Multigraph::shannon(4)) {
            EulerTour::Tour { edges, .. } => assert_eq!(edges.len(), 6),
            other => panic!("{other:?}"),
        }
        let two = Multigraph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(euler_tour(&two), EulerTour::Disconnected(0, 3));
    }

    #[test]
    fn bfs_examples() {
        assert_eq!(bfs_order(&Digraph::directed_cycle(3), 0).unwrap(), vec![0, 1, 2]);
        assert_eq!(
            bfs_order(&Digraph::symmetric_cycle(5), 0).unwrap(),
            vec![0, 1, 4, 2, 3]
        );
        let star = Digraph::new(4, &[(1, 0), (2, 0), (0, 3)]).unwrap();
        assert_eq!(bfs_order(&star, 0).unwrap()[0], 0);
        assert_eq!(bfs_order(&Digraph::empty(2), 0), Err(Error::Disconnected));
    }

    #[test]
    fn girth_and_digirth() {
        assert_eq!(digirth(&Digraph::directed_cycle(5)), Some(5));
        assert_eq!(digirth(&Digraph::symmetric_cycle(5)), Some(2));
        assert_eq!(girth(&Digraph::symmetric_cycle(5)), Some(5));
        assert_eq!(digirth(&Digraph::transitive_tournament(4)), None);
        assert_eq!(girth(&Digraph::transitive_tournament(4)), Some(3));
    }

    #[test]
    fn serde_round_trip() {
        let d = Digraph::symmetric_wheel(3);
        let s = serde_json::to_string(&d).unwrap();
        let back: Digraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}

//! Defective edge colouring of multigraphs: each vertex may see up to `d` edges of
//! one colour.

mod factor;
mod gadget;
mod ladder;
mod vizing;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::digraph::Multigraph;
use crate::error::{Error, Result};

pub use factor::{alternate_components, extract_factor, split_euler, EulerSplit, FactorSearch, FactorWitness};
pub use gadget::{defective_tower, np_gadget_defective, DefectiveGadget, GadgetCopy};
pub use ladder::{defective_colour, odd_defect_bound, regularize, DefectiveColouring, Route};
pub use vizing::proper_edge_colouring;

/// Colour (1-based) of every edge, indexed like `Multigraph::edges`.
pub type EdgeColouring = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EdgeCheck {
    Valid,
    Overloaded { vertex: usize, colour: usize, count: usize },
}

impl EdgeCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, EdgeCheck::Valid)
    }
}

pub fn colours_used(c: &[usize]) -> usize {
    c.iter().copied().max().unwrap_or(0)
}

fn check_total(g: &Multigraph, c: &[usize]) -> Result<()> {
    if c.len() != g.edge_count() {
        return Err(Error::PartialColouring(format!(
            "{} colours for {} edges",
            c.len(),
            g.edge_count()
        )));
    }
    if let Some(i) = c.iter().position(|&x| x == 0) {
        return Err(Error::PartialColouring(format!("edge {i} has colour 0")));
    }
    Ok(())
}

/// Reports the least vertex, and at it the least colour, seen more than `d` times.
pub fn verify_edge_colouring(g: &Multigraph, c: &[usize], d: usize) -> Result<EdgeCheck> {
    check_total(g, c)?;
    let k = colours_used(c);
    let mut count = vec![vec![0usize; k + 1]; g.n()];
    for (&(u, v), &col) in g.edges().iter().zip(c) {
        count[u][col] += 1;
        count[v][col] += 1;
    }
    for (vertex, row) in count.iter().enumerate() {
        if let Some(colour) = (1..=k).find(|&col| row[col] > d) {
            return Ok(EdgeCheck::Overloaded {
                vertex,
                colour,
                count: row[colour],
            });
        }
    }
    Ok(EdgeCheck::Valid)
}

const GAMMA_SAMPLES: usize = 4096;

/// Density bound: max over vertex sets X of ⌈|E(G[X])| / ⌊d|X|/2⌋⌉. All sets are tried
/// when `n <= cap`; otherwise pairs, the whole set and a fixed-seed random sample.
pub fn gamma_d(g: &Multigraph, d: usize, cap: usize) -> usize {
    let n = g.n();
    let ratio = |inside: &[bool]| -> usize {
        let size = inside.iter().filter(|&&b| b).count();
        let room = d * size / 2;
        if room == 0 {
            return 0;
        }
        let e = g.edges().iter().filter(|&&(u, v)| inside[u] && inside[v]).count();
        e.div_ceil(room)
    };
    let mut best = 0;
    let mut inside = vec![false; n];
    if n <= cap.min(24) {
        for mask in 1u64..(1u64 << n) {
            for (v, slot) in inside.iter_mut().enumerate() {
                *slot = mask >> v & 1 == 1;
            }
            best = best.max(ratio(&inside));
        }
        return best;
    }
    for &(u, v) in g.edges() {
        inside.fill(false);
        inside[u] = true;
        inside[v] = true;
        best = best.max(ratio(&inside));
    }
    best = best.max(ratio(&vec![true; n]));
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..GAMMA_SAMPLES {
        for slot in inside.iter_mut() {
            *slot = rng.gen_bool(0.5);
        }
        best = best.max(ratio(&inside));
    }
    best
}

/// Colours each edge with the least colour still below `d` at both ends.
pub fn greedy_defective(g: &Multigraph, d: usize) -> EdgeColouring {
    let mut count: Vec<Vec<usize>> = vec![vec![0]; g.n()];
    let mut out = Vec::with_capacity(g.edge_count());
    for &(u, v) in g.edges() {
        let mut col = 1;
        loop {
            for w in [u, v] {
                if count[w].len() <= col {
                    count[w].resize(col + 1, 0);
                }
            }
            if count[u][col] < d && count[v][col] < d {
                break;
            }
            col += 1;
        }
        count[u][col] += 1;
        count[v][col] += 1;
        out.push(col);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactEdgeColouring {
    pub index: usize,
    pub colouring: EdgeColouring,
    pub nodes: u64,
}

const GAMMA_CAP: usize = 14;

/// χ′_d by trying k = lower, lower+1, … with a backtracking search; the lower bound is
/// the larger of ⌈Δ/d⌉ and `gamma_d`, the upper bound a greedy colouring.
pub fn exact_defective_index(g: &Multigraph, d: usize, budget: u64) -> Result<ExactEdgeColouring> {
    if d == 0 {
        return Err(Error::BadParameters("defect d must be at least 1".into()));
    }
    if g.edge_count() == 0 {
        return Ok(ExactEdgeColouring {
            index: 0,
            colouring: Vec::new(),
            nodes: 0,
        });
    }
    let lower = g.max_degree().div_ceil(d).max(gamma_d(g, d, GAMMA_CAP));
    let greedy = greedy_defective(g, d);
    let upper = colours_used(&greedy);
    let mut nodes = 0;
    for k in lower..upper {
        let mut search = Search::new(g, d, k, &[])?;
        let outcome = search.run(budget.saturating_sub(nodes));
        nodes += search.nodes;
        match outcome {
            Outcome::Found(colouring) => {
                return Ok(ExactEdgeColouring {
                    index: k,
                    colouring,
                    nodes,
                })
            }
            Outcome::Exhausted => {}
            Outcome::OutOfBudget => return Err(Error::BudgetExceeded { lower: k, upper }),
        }
    }
    Ok(ExactEdgeColouring {
        index: upper,
        colouring: greedy,
        nodes,
    })
}

/// A (k, d)-colouring extending the prescribed `(edge, colour)` pairs, or `None` when the
/// search space is exhausted.
pub fn find_defective_colouring(
    g: &Multigraph,
    d: usize,
    k: usize,
    fixed: &[(usize, usize)],
    budget: u64,
) -> Result<Option<EdgeColouring>> {
    let mut search = Search::new(g, d, k, fixed)?;
    match search.run(budget) {
        Outcome::Found(c) => Ok(Some(c)),
        Outcome::Exhausted => Ok(None),
        Outcome::OutOfBudget => Err(Error::BudgetExceeded { lower: 0, upper: k }),
    }
}

enum Outcome {
    Found(EdgeColouring),
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    g: &'a Multigraph,
    d: usize,
    k: usize,
    order: Vec<usize>,
    /// `same_as_prev[i]`: order[i] is parallel to order[i-1].
    same_as_prev: Vec<bool>,
    inc: Vec<Vec<usize>>,
    colour: Vec<usize>,
    count: Vec<Vec<usize>>,
    used: Vec<usize>,
    nodes: u64,
    budget: u64,
    infeasible: bool,
    found: Option<EdgeColouring>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Multigraph, d: usize, k: usize, fixed: &[(usize, usize)]) -> Result<Search<'a>> {
        if d == 0 {
            return Err(Error::BadParameters("defect d must be at least 1".into()));
        }
        let m = g.edge_count();
        let mut colour = vec![0; m];
        let mut count = vec![vec![0; k + 1]; g.n()];
        let mut used = vec![0; k + 1];
        let mut infeasible = false;
        for &(e, c) in fixed {
            if e >= m || c == 0 || c > k {
                return Err(Error::BadParameters(format!("cannot fix edge {e} to colour {c}")));
            }
            if colour[e] != 0 {
                return Err(Error::BadParameters(format!("edge {e} fixed twice")));
            }
            colour[e] = c;
            let (u, v) = g.edges()[e];
            count[u][c] += 1;
            count[v][c] += 1;
            used[c] += 1;
            infeasible |= count[u][c] > d || count[v][c] > d;
        }
        let pos = vertex_rank(g);
        let mut order: Vec<usize> = (0..m).filter(|&e| colour[e] == 0).collect();
        let key = |e: usize| {
            let (u, v) = g.edges()[e];
            let (a, b) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
            (a, b, e)
        };
        order.sort_by_key(|&e| key(e));
        let pair = |e: usize| {
            let (u, v) = g.edges()[e];
            (u.min(v), u.max(v))
        };
        let same_as_prev = (0..order.len())
            .map(|i| i > 0 && pair(order[i]) == pair(order[i - 1]))
            .collect();
        Ok(Search {
            g,
            d,
            k,
            order,
            same_as_prev,
            inc: g.incidence(),
            colour,
            count,
            used,
            nodes: 0,
            budget: 0,
            infeasible,
            found: None,
        })
    }

    fn run(&mut self, budget: u64) -> Outcome {
        self.budget = budget;
        if self.infeasible || self.k == 0 && !self.order.is_empty() {
            return Outcome::Exhausted;
        }
        match self.step(0) {
            Some(true) => Outcome::Found(self.found.take().expect("leaf colouring")),
            Some(false) => Outcome::Exhausted,
            None => Outcome::OutOfBudget,
        }
    }

    fn fits(&self, e: usize, c: usize) -> bool {
        let (u, v) = self.g.edges()[e];
        self.count[u][c] < self.d && self.count[v][c] < self.d
    }

    /// Every uncoloured edge at the ends of `e` still has some colour available.
    fn neighbours_alive(&self, e: usize) -> bool {
        let (u, v) = self.g.edges()[e];
        [u, v].iter().all(|&w| {
            self.inc[w]
                .iter()
                .filter(|&&f| self.colour[f] == 0)
                .all(|&f| (1..=self.k).any(|c| self.fits(f, c)))
        })
    }

    fn step(&mut self, i: usize) -> Option<bool> {
        if i == self.order.len() {
            self.found = Some(self.colour.clone());
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let e = self.order[i];
        let (u, v) = self.g.edges()[e];
        let from = if self.same_as_prev[i] {
            self.colour[self.order[i - 1]]
        } else {
            1
        };
        let mut fresh_tried = false;
        for c in from..=self.k {
            if self.used[c] == 0 {
                if fresh_tried {
                    continue;
                }
                fresh_tried = true;
            }
            if !self.fits(e, c) {
                continue;
            }
            self.colour[e] = c;
            self.count[u][c] += 1;
            self.count[v][c] += 1;
            self.used[c] += 1;
            let result = if self.neighbours_alive(e) {
                self.step(i + 1)
            } else {
                Some(false)
            };
            self.colour[e] = 0;
            self.count[u][c] -= 1;
            self.count[v][c] -= 1;
            self.used[c] -= 1;
            match result {
                Some(false) => {}
                other => return other,
            }
        }
        Some(false)
    }
}

/// BFS rank of each vertex, starting from a vertex of maximum degree.
fn vertex_rank(g: &Multigraph) -> Vec<usize> {
    let deg = g.degrees();
    let inc = g.incidence();
    let mut pos = vec![usize::MAX; g.n()];
    let mut next = 0;
    let mut starts: Vec<usize> = (0..g.n()).collect();
    starts.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    for s in starts {
        if pos[s] != usize::MAX {
            continue;
        }
        pos[s] = next;
        next += 1;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &e in &inc[x] {
                let (a, b) = g.edges()[e];
                let y = if a == x { b } else { a };
                if pos[y] == usize::MAX {
                    pos[y] = next;
                    next += 1;
                    queue.push_back(y);
                }
            }
        }
    }
    pos
}

/// Sh(k) with edges ordered round the triangle so that any three consecutive edges form
/// a triangle, then coloured in blocks of (3d−1)/2.
pub fn colour_shannon_multigraph(k: usize, d: usize) -> Result<(Multigraph, EdgeColouring)> {
    if d.is_multiple_of(2) {
        return Err(Error::EvenD(d));
    }
    if k == 0 {
        return Err(Error::BadParameters("Sh(k) needs k >= 1".into()));
    }
    let g = Multigraph::shannon(k);
    let half = k / 2;
    // edge index ranges of the pairs 01, 12, 20 inside Multigraph::shannon
    let mut next = [0, half, 2 * half];
    let ends = [half, 2 * half, g.edge_count()];
    // 20 carries the two degree-k ends, so the walk starts there: 20, 01, 12, 20, …
    let cycle = [2, 0, 1];
    let mut sequence = Vec::with_capacity(g.edge_count());
    let mut step = 0;
    while sequence.len() < g.edge_count() {
        let p = cycle[step % 3];
        step += 1;
        if next[p] < ends[p] {
            sequence.push(next[p]);
            next[p] += 1;
        }
    }
    let block = (3 * d - 1) / 2;
    let mut colouring = vec![0; g.edge_count()];
    for (i, &e) in sequence.iter().enumerate() {
        colouring[e] = i / block + 1;
    }
    Ok((g, colouring))
}

/// Random Δ-regular multigraph on n vertices by stub pairing, loops rejected.
pub fn random_regular_multigraph<R: Rng>(rng: &mut R, n: usize, delta: usize) -> Result<Multigraph> {
    if n * delta % 2 == 1 || (delta > 0 && n < 2) {
        return Err(Error::BadParameters(format!("no {delta}-regular multigraph on {n} vertices")));
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, delta)).collect();
    loop {
        stubs.shuffle(rng);
        if stubs.chunks(2).all(|p| p[0] != p[1]) {
            let edges: Vec<(usize, usize)> = stubs.chunks(2).map(|p| (p[0], p[1])).collect();
            return Multigraph::new(n, &edges);
        }
    }
}

pub fn random_simple_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Multigraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Multigraph::new(n, &edges).expect("edges are in range")
}

pub fn petersen() -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Multigraph::new(10, &edges).expect("petersen")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_pairs(a: usize, b: usize, c: usize) -> Multigraph {
        let mut edges = Vec::new();
        edges.extend(std::iter::repeat_n((0, 1), a));
        edges.extend(std::iter::repeat_n((1, 2), b));
        edges.extend(std::iter::repeat_n((2, 0), c));
        Multigraph::new(3, &edges).unwrap()
    }

    #[test]
    fn verify_triangle() {
        let t = Multigraph::complete(3);
        assert!(verify_edge_colouring(&t, &[1, 1, 1], 2).unwrap().is_valid());
        assert_eq!(
            verify_edge_colouring(&t, &[1, 1, 1], 1).unwrap(),
            EdgeCheck::Overloaded {
                vertex: 0,
                colour: 1,
                count: 2
            }
        );
        assert!(matches!(verify_edge_colouring(&t, &[1, 1], 1), Err(Error::PartialColouring(_))));
        assert!(matches!(verify_edge_colouring(&t, &[1, 0, 1], 1), Err(Error::PartialColouring(_))));
    }

    #[test]
    fn gamma_examples() {
        let g = three_pairs(7, 7, 2);
        assert_eq!(gamma_d(&g, 3, 16), 4);
        assert_eq!(gamma_d(&g, 1, 16), 16);
        assert_eq!(gamma_d(&g, 3, 0), 4);
        let k5 = Multigraph::complete(5);
        assert_eq!(gamma_d(&k5, 4, 16), 1);
        assert_eq!(gamma_d(&petersen(), 5, 16), 1);
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_defective_index(&Multigraph::shannon(5), 1, 1 << 24).unwrap().index, 7);
        assert_eq!(exact_defective_index(&Multigraph::shannon(4), 3, 1 << 24).unwrap().index, 2);
        let k7 = exact_defective_index(&Multigraph::complete(7), 3, 1 << 24).unwrap();
        assert_eq!(k7.index, 3);
        assert!(verify_edge_colouring(&Multigraph::complete(7), &k7.colouring, 3).unwrap().is_valid());
        // counting oracle: one colour class has at most ⌊3·7/2⌋ = 10 edges
        assert!(Multigraph::complete(7).edge_count() > 2 * (3 * 7 / 2));
        assert_eq!(exact_defective_index(&petersen(), 2, 1 << 24).unwrap().index, 2);
        assert_eq!(exact_defective_index(&petersen(), 1, 1 << 24).unwrap().index, 4);
        for (g, d) in [(Multigraph::shannon(7), 3), (Multigraph::shannon(5), 1), (petersen(), 1)] {
            let e = exact_defective_index(&g, d, 1 << 24).unwrap();
            assert!(verify_edge_colouring(&g, &e.colouring, d).unwrap().is_valid());
            assert_eq!(colours_used(&e.colouring), e.index);
        }
    }

    #[test]
    fn exact_respects_budget() {
        let err = exact_defective_index(&petersen(), 1, 3).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn shannon_blocks() {
        let (g, c) = colour_shannon_multigraph(4, 3).unwrap();
        assert_eq!(colours_used(&c), 2);
        assert!(verify_edge_colouring(&g, &c, 3).unwrap().is_valid());
        assert_eq!(colours_used(&colour_shannon_multigraph(3, 3).unwrap().1), 1);
        assert_eq!(colours_used(&colour_shannon_multigraph(9, 3).unwrap().1), 4);
        assert!(matches!(colour_shannon_multigraph(4, 2), Err(Error::EvenD(2))));
        for k in 1..=9 {
            for d in [1, 3, 5] {
                let (g, c) = colour_shannon_multigraph(k, d).unwrap();
                assert!(verify_edge_colouring(&g, &c, d).unwrap().is_valid());
                assert_eq!(colours_used(&c), (3 * k - 1).div_ceil(3 * d - 1));
            }
        }
    }

    #[test]
    fn shannon_index_matches_formula() {
        for k in 1..=9 {
            for d in [1, 3, 5] {
                let exact = exact_defective_index(&Multigraph::shannon(k), d, 1 << 26).unwrap();
                assert_eq!(exact.index, (3 * k - 1).div_ceil(3 * d - 1), "k={k} d={d}");
            }
        }
    }

    #[test]
    fn parity_targets() {
        // K_8 minus a perfect matching: 6-regular on 8 vertices
        let edges: Vec<(usize, usize)> = (0..8)
            .flat_map(|i| (i + 1..8).map(move |j| (i, j)))
            .filter(|&(i, j)| j != i + 4)
            .collect();
        let g = Multigraph::new(8, &edges).unwrap();
        assert_eq!(g.regular_degree(), Some(6));
        let exact = exact_defective_index(&g, 3, 1 << 24).unwrap();
        assert_eq!(exact.index, 2);
    }

    #[test]
    fn fixed_edges_are_kept() {
        let t = Multigraph::complete(3);
        assert_eq!(find_defective_colouring(&t, 1, 2, &[], 1000).unwrap(), None);
        let c = find_defective_colouring(&t, 1, 3, &[(1, 3)], 1000).unwrap().unwrap();
        assert_eq!(c[1], 3);
        assert!(find_defective_colouring(&t, 1, 3, &[(1, 4)], 1000).is_err());
    }

    #[test]
    fn greedy_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let g = random_simple_graph(&mut rng, 9, 0.5);
            for d in 1..4 {
                assert!(verify_edge_colouring(&g, &greedy_defective(&g, d), d).unwrap().is_valid());
            }
        }
    }
}

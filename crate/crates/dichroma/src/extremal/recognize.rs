use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::joins::{directed_hajos_join, hajos_bijoin, hajos_tree_join, CycleRule, TreeJoinPart, TreeJoinSpec};
use crate::digraph::{is_biconnected, is_strong, Digraph};
use crate::error::{Error, Result};

/// A subproblem of a decomposition: `labels[i]` is the parent vertex playing local
/// vertex i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Child {
    pub labels: Vec<usize>,
    pub certificate: DecompositionCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Node {
    BaseDirectedCycle {
        order: Vec<usize>,
    },
    BaseSymmetricComplete,
    BaseSymmetricOddWheel {
        hub: usize,
        rim: Vec<usize>,
    },
    /// D = (D₁ − uv) ∪ (D₂ − vw) + uw.
    DirectedHajosJoin {
        u: usize,
        v: usize,
        w: usize,
        first: Box<Child>,
        second: Box<Child>,
    },
    /// The first child (D_AC) uses label `a` for x; its arcs between x and `c_side`
    /// attach to `b` instead. The second child is D_B with the digon [a, b].
    ParallelHajosJoin {
        t: usize,
        u: usize,
        v: usize,
        w: usize,
        a: usize,
        b: usize,
        c_side: Vec<usize>,
        ac: Box<Child>,
        b_part: Box<Child>,
    },
    /// Each child holds the digon [centre, rim[i]]; the rim is a dicycle in D.
    HajosStarJoin {
        centre: usize,
        rim: Vec<usize>,
        parts: Vec<Child>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCertificate {
    pub n: usize,
    pub node: Node,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason")]
pub enum Refutation {
    NotStrong,
    NotBiconnected,
    /// Some vertex has d⁺ ≠ d⁻ or a degree below k.
    DegreeCondition { vertex: usize },
    NotDirectedCycle,
    NoDecomposition,
}

/// Outcome with the root labels of the subdigraph where the refutation was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recognition {
    pub extremal: bool,
    pub certificate: Option<DecompositionCertificate>,
    pub refutation: Option<Refutation>,
    pub refuted_at: Option<Vec<usize>>,
}

/// Decides whether `d` is k-extremal for k = 1 or k ≥ 3. `budget` caps the number of
/// candidate splits examined.
pub fn recognize_k_extremal(d: &Digraph, k: usize, budget: Option<u64>) -> Result<Recognition> {
    if k == 0 || k == 2 {
        return Err(Error::UnsupportedK(k));
    }
    let mut r = Recognizer { k, budget, spent: 0 };
    let labels: Vec<usize> = (0..d.n()).collect();
    Ok(match r.run(d)? {
        Ok(cert) => Recognition {
            extremal: true,
            certificate: Some(cert),
            refutation: None,
            refuted_at: None,
        },
        Err((why, at)) => Recognition {
            extremal: false,
            certificate: None,
            refutation: Some(why),
            refuted_at: Some(at.iter().map(|&x| labels[x]).collect()),
        },
    })
}

type Verdict = std::result::Result<DecompositionCertificate, (Refutation, Vec<usize>)>;

struct Recognizer {
    k: usize,
    budget: Option<u64>,
    spent: u64,
}

impl Recognizer {
    fn tick(&mut self) -> Result<()> {
        self.spent += 1;
        match self.budget {
            Some(b) if self.spent > b => Err(Error::BudgetExceeded { lower: 0, upper: 1 }),
            _ => Ok(()),
        }
    }

    fn run(&mut self, d: &Digraph) -> Result<Verdict> {
        let n = d.n();
        let all: Vec<usize> = (0..n).collect();
        let fail = |why: Refutation| Ok(Err((why, all.clone())));
        if !is_strong(d) {
            return fail(Refutation::NotStrong);
        }
        if self.k == 1 {
            let cyc = n >= 2 && (0..n).all(|v| d.out_degree(v) == 1 && d.in_degree(v) == 1);
            if !cyc {
                return fail(Refutation::NotDirectedCycle);
            }
            let mut order = vec![0];
            while order.len() < n {
                order.push(d.out_neighbours(*order.last().expect("non-empty"))[0]);
            }
            return Ok(Ok(DecompositionCertificate {
                n,
                node: Node::BaseDirectedCycle { order },
            }));
        }
        if !is_biconnected(d) {
            return fail(Refutation::NotBiconnected);
        }
        if let Some(v) = (0..n).find(|&v| d.out_degree(v) != d.in_degree(v) || d.out_degree(v) < self.k) {
            return fail(Refutation::DegreeCondition { vertex: v });
        }
        if self.k >= 4 && n == self.k + 1 && d.arc_count() == n * (n - 1) {
            return Ok(Ok(DecompositionCertificate {
                n,
                node: Node::BaseSymmetricComplete,
            }));
        }
        if self.k == 3 {
            if let Some((hub, rim)) = odd_wheel(d) {
                return Ok(Ok(DecompositionCertificate {
                    n,
                    node: Node::BaseSymmetricOddWheel { hub, rim },
                }));
            }
        }
        if let Some(split) = self.directed_split(d)? {
            return self.finish(d, split);
        }
        if let Some(split) = self.parallel_split(d)? {
            return self.finish(d, split);
        }
        if let Some(split) = self.star_split(d)? {
            return self.finish(d, split);
        }
        fail(Refutation::NoDecomposition)
    }

    /// Recurses into the children of a split; all must succeed.
    fn finish(&mut self, d: &Digraph, split: Split) -> Result<Verdict> {
        let mut certs = Vec::new();
        for (labels, sub) in &split.children {
            match self.run(sub)? {
                Ok(c) => certs.push(Child {
                    labels: labels.clone(),
                    certificate: c,
                }),
                Err((why, at)) => return Ok(Err((why, at.iter().map(|&x| labels[x]).collect()))),
            }
        }
        let mut certs = certs.into_iter();
        let mut next = || Box::new(certs.next().expect("one certificate per child"));
        let node = match split.kind {
            SplitKind::Directed { u, v, w } => Node::DirectedHajosJoin {
                u,
                v,
                w,
                first: next(),
                second: next(),
            },
            SplitKind::Parallel { t, u, v, w, a, b, c_side } => Node::ParallelHajosJoin {
                t,
                u,
                v,
                w,
                a,
                b,
                c_side,
                ac: next(),
                b_part: next(),
            },
            SplitKind::Star { centre, rim } => Node::HajosStarJoin {
                centre,
                parts: (0..rim.len()).map(|_| *next()).collect(),
                rim,
            },
        };
        Ok(Ok(DecompositionCertificate { n: d.n(), node }))
    }

    /// Least (u, v, w) with uw ∈ A, uv, vw ∉ A, and u, w separated in D − v − uw.
    fn directed_split(&mut self, d: &Digraph) -> Result<Option<Split>> {
        let n = d.n();
        let arcs = d.arcs();
        let mut best: Option<(usize, usize, usize, Vec<usize>)> = None;
        for v in 0..n {
            self.tick()?;
            let mut alive = vec![true; n];
            alive[v] = false;
            let live: Vec<usize> = (0..arcs.len())
                .filter(|&i| arcs[i].0 != v && arcs[i].1 != v)
                .collect();
            let live_arcs: Vec<(usize, usize)> = live.iter().map(|&i| arcs[i]).collect();
            for e in bridge_arcs(n, &alive, &live_arcs) {
                let (u, w) = live_arcs[e];
                if d.has_arc(u, v) || d.has_arc(v, w) {
                    continue;
                }
                if best.as_ref().is_some_and(|b| (b.0, b.1, b.2) <= (u, v, w)) {
                    continue;
                }
                let comp = components(n, &alive, &live_arcs, Some(e));
                best = Some((u, v, w, comp));
            }
        }
        Ok(best.map(|(u, v, w, comp)| {
            let side_u: Vec<usize> = (0..n).filter(|&x| x == v || comp[x] == comp[u]).collect();
            let side_w: Vec<usize> = (0..n).filter(|&x| x == v || comp[x] == comp[w]).collect();
            let d1 = d.induced(&side_u);
            let d2 = d.induced(&side_w);
            let pos = |s: &[usize], x: usize| s.iter().position(|&y| y == x).expect("member");
            let d1 = d1
                .edit(&[], &[(pos(&side_u, u), pos(&side_u, v))])
                .expect("uv is not an arc");
            let d2 = d2
                .edit(&[], &[(pos(&side_w, v), pos(&side_w, w))])
                .expect("vw is not an arc");
            Split {
                kind: SplitKind::Directed { u, v, w },
                children: vec![(side_u, d1), (side_w, d2)],
            }
        }))
    }

    /// Least (t, u, v, w, a, b) such that D − {a, b} − {tu, vw} has a component A ∋ t, w,
    /// a component C ∋ u, v and further components B.
    fn parallel_split(&mut self, d: &Digraph) -> Result<Option<Split>> {
        let n = d.n();
        let arcs = d.arcs();
        let mut best: Option<([usize; 6], Vec<usize>)> = None;
        for a in 0..n {
            for b in 0..n {
                if a == b || d.adjacent(a, b) {
                    continue;
                }
                self.tick()?;
                let mut alive = vec![true; n];
                alive[a] = false;
                alive[b] = false;
                let live_arcs: Vec<(usize, usize)> = arcs
                    .iter()
                    .copied()
                    .filter(|&(p, q)| alive[p] && alive[q])
                    .collect();
                let comp0 = components(n, &alive, &live_arcs, None);
                let count0 = count_components(&comp0, &alive);
                if count0 < 2 {
                    continue;
                }
                for e1 in 0..live_arcs.len() {
                    let rest: Vec<(usize, usize)> = live_arcs
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != e1)
                        .map(|(_, &x)| x)
                        .collect();
                    for e2 in bridge_arcs(n, &alive, &rest) {
                        let (t, u) = live_arcs[e1];
                        let (v, w) = rest[e2];
                        let key = [t, u, v, w, a, b];
                        if best.as_ref().is_some_and(|(k, _)| *k <= key) {
                            continue;
                        }
                        let comp = components(n, &alive, &rest, Some(e2));
                        if comp[t] != comp[w] || comp[u] != comp[v] || comp[t] == comp[u] {
                            continue;
                        }
                        if count_components(&comp, &alive) != count0 + 1 {
                            continue;
                        }
                        let (ca, cc) = (comp[t], comp[u]);
                        let touches = |x: usize, c: usize| {
                            d.out_neighbours(x)
                                .iter()
                                .chain(d.in_neighbours(x))
                                .any(|&y| alive[y] && comp[y] == c)
                        };
                        if touches(a, cc) || touches(b, ca) {
                            continue;
                        }
                        best = Some((key, comp));
                    }
                }
            }
        }
        Ok(best.map(|([t, u, v, w, a, b], comp)| {
            let alive = |x: usize| x != a && x != b;
            let (ca, cc) = (comp[t], comp[u]);
            let a_part: Vec<usize> = (0..n).filter(|&x| alive(x) && comp[x] == ca).collect();
            let c_side: Vec<usize> = (0..n).filter(|&x| alive(x) && comp[x] == cc).collect();
            let b_rest: Vec<usize> = (0..n)
                .filter(|&x| alive(x) && comp[x] != ca && comp[x] != cc)
                .collect();
            // D_AC: A ∪ C ∪ {x} with x labelled a
            let mut ac_labels: Vec<usize> = a_part.iter().chain(&c_side).copied().chain([a]).collect();
            ac_labels.sort_unstable();
            let pos_ac = |x: usize| ac_labels.iter().position(|&y| y == x).expect("member");
            let mut ac_arcs = Vec::new();
            for &(p, q) in &arcs {
                let map = |x: usize| if x == b { Some(a) } else if x == a || alive(x) && (comp[x] == ca || comp[x] == cc) { Some(x) } else { None };
                let in_ac_side = |x: usize| x == a || alive(x) && comp[x] == ca;
                let in_c_side = |x: usize| x == b || alive(x) && comp[x] == cc;
                let keep = (in_ac_side(p) && in_ac_side(q))
                    || (in_c_side(p) && in_c_side(q))
                    || (p, q) == (t, u)
                    || (p, q) == (v, w);
                if keep {
                    if let (Some(mp), Some(mq)) = (map(p), map(q)) {
                        ac_arcs.push((pos_ac(mp), pos_ac(mq)));
                    }
                }
            }
            let d_ac = Digraph::new(ac_labels.len(), &ac_arcs).expect("simple D_AC");
            let mut b_labels: Vec<usize> = b_rest.iter().copied().chain([a, b]).collect();
            b_labels.sort_unstable();
            let pos_b = |x: usize| b_labels.iter().position(|&y| y == x).expect("member");
            let d_b = d
                .induced(&b_labels)
                .edit(&[], &[(pos_b(a), pos_b(b)), (pos_b(b), pos_b(a))])
                .expect("a and b are not adjacent");
            Split {
                kind: SplitKind::Parallel { t, u, v, w, a, b, c_side },
                children: vec![(ac_labels, d_ac), (b_labels, d_b)],
            }
        }))
    }

    /// First centre x and dicycle v₁ … v_ℓ found through bridges of D − x − v_ℓv₁,
    /// such that D − x − A(C) has exactly ℓ components, one per rim vertex.
    fn star_split(&mut self, d: &Digraph) -> Result<Option<Split>> {
        let n = d.n();
        let arcs = d.arcs();
        for x in 0..n {
            let mut alive = vec![true; n];
            alive[x] = false;
            for &(pl, p1) in &arcs {
                if pl == x || p1 == x || d.adjacent(x, pl) || d.adjacent(x, p1) {
                    continue;
                }
                self.tick()?;
                let rest: Vec<(usize, usize)> = arcs
                    .iter()
                    .copied()
                    .filter(|&(p, q)| p != x && q != x && (p, q) != (pl, p1))
                    .collect();
                let bridges: Vec<(usize, usize)> =
                    bridge_arcs(n, &alive, &rest).into_iter().map(|i| rest[i]).collect();
                let Some(rim) = forward_path(n, &bridges, p1, pl) else {
                    continue;
                };
                if rim.iter().any(|&r| d.adjacent(x, r)) {
                    continue;
                }
                let mut cycle_arcs: Vec<(usize, usize)> = rim.windows(2).map(|w| (w[0], w[1])).collect();
                cycle_arcs.push((pl, p1));
                let others: Vec<(usize, usize)> = arcs
                    .iter()
                    .copied()
                    .filter(|&(p, q)| p != x && q != x && !cycle_arcs.contains(&(p, q)))
                    .collect();
                let comp = components(n, &alive, &others, None);
                if count_components(&comp, &alive) != rim.len() {
                    continue;
                }
                let mut ids: Vec<usize> = rim.iter().map(|&r| comp[r]).collect();
                ids.sort_unstable();
                ids.dedup();
                if ids.len() != rim.len() {
                    continue;
                }
                // rotate so the least rim vertex comes first
                let start = rim.iter().enumerate().min_by_key(|&(_, &r)| r).map(|(i, _)| i).unwrap_or(0);
                let rim: Vec<usize> = rim[start..].iter().chain(&rim[..start]).copied().collect();
                let children = rim
                    .iter()
                    .map(|&r| {
                        let mut labels: Vec<usize> =
                            (0..n).filter(|&y| y == x || alive[y] && comp[y] == comp[r]).collect();
                        labels.sort_unstable();
                        let pos = |z: usize| labels.iter().position(|&y| y == z).expect("member");
                        let sub = d
                            .induced(&labels)
                            .edit(&[], &[(pos(x), pos(r)), (pos(r), pos(x))])
                            .expect("centre and rim vertex are not adjacent");
                        (labels, sub)
                    })
                    .collect();
                return Ok(Some(Split {
                    kind: SplitKind::Star { centre: x, rim },
                    children,
                }));
            }
        }
        Ok(None)
    }
}

enum SplitKind {
    Directed { u: usize, v: usize, w: usize },
    Parallel { t: usize, u: usize, v: usize, w: usize, a: usize, b: usize, c_side: Vec<usize> },
    Star { centre: usize, rim: Vec<usize> },
}

struct Split {
    kind: SplitKind,
    children: Vec<(Vec<usize>, Digraph)>,
}

/// Symmetric odd wheel: a hub adjacent by digons to all others, which induce a
/// symmetric cycle of odd length ≥ 3.
fn odd_wheel(d: &Digraph) -> Option<(usize, Vec<usize>)> {
    let n = d.n();
    if n < 4 || !n.is_multiple_of(2) || !d.is_symmetric() {
        return None;
    }
    let hub = (0..n).find(|&h| d.out_degree(h) == n - 1)?;
    let rim_vs: Vec<usize> = (0..n).filter(|&v| v != hub).collect();
    if rim_vs.iter().any(|&v| d.out_degree(v) != 3) {
        return None;
    }
    let mut rim = vec![rim_vs[0]];
    let mut prev = usize::MAX;
    loop {
        let cur = *rim.last().expect("non-empty");
        let next = d
            .out_neighbours(cur)
            .iter()
            .copied()
            .find(|&y| y != hub && y != prev)?;
        if next == rim[0] {
            break;
        }
        if rim.contains(&next) {
            return None;
        }
        prev = cur;
        rim.push(next);
    }
    (rim.len() == n - 1).then_some((hub, rim))
}

/// Union-find component ids of the underlying graph of the live arcs, skipping
/// `skip`. Dead vertices get usize::MAX.
fn components(n: usize, alive: &[bool], arcs: &[(usize, usize)], skip: Option<usize>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let z = p[y];
            p[y] = r;
            y = z;
        }
        r
    }
    for (i, &(a, b)) in arcs.iter().enumerate() {
        if Some(i) == skip || !alive[a] || !alive[b] {
            continue;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    (0..n)
        .map(|v| if alive[v] { find(&mut parent, v) } else { usize::MAX })
        .collect()
}

fn count_components(comp: &[usize], alive: &[bool]) -> usize {
    let mut ids: Vec<usize> = comp.iter().zip(alive).filter(|(_, &a)| a).map(|(&c, _)| c).collect();
    ids.sort_unstable();
    ids.dedup();
    ids.len()
}

/// Indices of arcs that are bridges of the underlying multigraph (a digon is two
/// parallel edges, so never a bridge).
fn bridge_arcs(n: usize, alive: &[bool], arcs: &[(usize, usize)]) -> Vec<usize> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(a, b)) in arcs.iter().enumerate() {
        if alive[a] && alive[b] {
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut out = Vec::new();
    for s in 0..n {
        if !alive[s] || disc[s] != usize::MAX {
            continue;
        }
        disc[s] = time;
        low[s] = time;
        time += 1;
        // (vertex, edge used to enter, next adjacency position)
        let mut stack = vec![(s, usize::MAX, 0usize)];
        while let Some(&mut (v, pe, ref mut i)) = stack.last_mut() {
            if *i < adj[v].len() {
                let (w, e) = adj[v][*i];
                *i += 1;
                if e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        out.push(pe);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// The unique path from `from` to `to` in the forest `edges`, if it follows the arc
/// directions.
fn forward_path(n: usize, edges: &[(usize, usize)], from: usize, to: usize) -> Option<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    if !seen[to] {
        return None;
    }
    let mut path = vec![to];
    while *path.last().expect("non-empty") != from {
        path.push(prev[*path.last().expect("non-empty")]);
    }
    path.reverse();
    path.windows(2)
        .all(|w| edges.contains(&(w[0], w[1])))
        .then_some(path)
}

/// Rebuilds the digraph a certificate describes.
pub fn replay(cert: &DecompositionCertificate) -> Result<Digraph> {
    let n = cert.n;
    let bad = |m: &str| Error::InvalidInput(format!("certificate does not replay: {m}"));
    let child_arcs = |c: &Child| -> Result<Vec<(usize, usize)>> {
        let sub = replay(&c.certificate)?;
        if c.labels.len() != sub.n() || c.labels.iter().any(|&l| l >= n) {
            return Err(bad("child labels"));
        }
        Ok(sub.arcs().into_iter().map(|(p, q)| (c.labels[p], c.labels[q])).collect())
    };
    let arcs: Vec<(usize, usize)> = match &cert.node {
        Node::BaseDirectedCycle { order } => {
            if order.len() != n {
                return Err(bad("cycle length"));
            }
            (0..n).map(|i| (order[i], order[(i + 1) % n])).collect()
        }
        Node::BaseSymmetricComplete => return Ok(Digraph::symmetric_complete(n)),
        Node::BaseSymmetricOddWheel { hub, rim } => {
            if rim.len() + 1 != n || rim.len() % 2 == 0 {
                return Err(bad("wheel size"));
            }
            let mut a = Vec::new();
            for i in 0..rim.len() {
                let (p, q) = (rim[i], rim[(i + 1) % rim.len()]);
                a.extend([(p, q), (q, p), (*hub, p), (p, *hub)]);
            }
            a
        }
        Node::DirectedHajosJoin { u, v, w, first, second } => {
            let mut a: Vec<(usize, usize)> =
                child_arcs(first)?.into_iter().filter(|&x| x != (*u, *v)).collect();
            a.extend(child_arcs(second)?.into_iter().filter(|&x| x != (*v, *w)));
            a.push((*u, *w));
            a
        }
        Node::ParallelHajosJoin { a, b, c_side, ac, b_part, .. } => {
            let lift = |p: usize, other: usize| if p == *a && c_side.contains(&other) { *b } else { p };
            let mut arcs: Vec<(usize, usize)> = child_arcs(ac)?
                .into_iter()
                .map(|(p, q)| (lift(p, q), lift(q, p)))
                .collect();
            arcs.extend(
                child_arcs(b_part)?
                    .into_iter()
                    .filter(|&x| x != (*a, *b) && x != (*b, *a)),
            );
            arcs
        }
        Node::HajosStarJoin { centre, rim, parts } => {
            if parts.len() != rim.len() {
                return Err(bad("one part per rim vertex"));
            }
            let mut arcs = Vec::new();
            for (part, &r) in parts.iter().zip(rim) {
                arcs.extend(
                    child_arcs(part)?
                        .into_iter()
                        .filter(|&x| x != (*centre, r) && x != (r, *centre)),
                );
            }
            for i in 0..rim.len() {
                arcs.push((rim[i], rim[(i + 1) % rim.len()]));
            }
            arcs
        }
    };
    Digraph::new(n, &arcs)
}

/// Random digraph built from ↔K_4 and ↔W_5 by directed joins and tree joins (with
/// leaf-only or partial Eulerian cycles), at most `max_n` vertices. With probability
/// `p_bad` a step uses a bijoin or a cycle order not following the tree, which usually
/// destroys extremality.
pub fn random_join_digraph<R: Rng>(rng: &mut R, depth: usize, max_n: usize, p_bad: f64) -> Digraph {
    loop {
        // the top level always joins, when there is room
        match try_random_join(rng, depth, max_n, p_bad) {
            Some(d) if d.n() > 6 || depth == 0 || max_n < 7 => return d,
            _ => {}
        }
    }
}

fn random_base<R: Rng>(rng: &mut R) -> Digraph {
    if rng.gen_bool(0.8) {
        Digraph::symmetric_complete(4)
    } else {
        Digraph::symmetric_wheel(5)
    }
}

fn try_random_join<R: Rng>(rng: &mut R, depth: usize, max_n: usize, p_bad: f64) -> Option<Digraph> {
    if depth == 0 || max_n < 7 || rng.gen_bool(0.25) {
        let b = random_base(rng);
        return (b.n() <= max_n).then_some(b);
    }
    let op = rng.gen_range(0..3);
    match op {
        0 => {
            let d1 = try_random_join(rng, depth - 1, max_n.saturating_sub(4), p_bad)?;
            let d2 = try_random_join(rng, depth - 1, max_n + 1 - d1.n(), p_bad)?;
            if rng.gen_bool(p_bad) {
                let (t, a1, w) = random_two_path(rng, &d1)?;
                let (v, a2, u) = random_two_path(rng, &d2)?;
                return hajos_bijoin(&d1, (t, a1, w), &d2, (v, a2, u)).ok().map(|b| b.digraph);
            }
            let a1 = *d1.arcs().choose(rng)?;
            let a2 = *d2.arcs().choose(rng)?;
            directed_hajos_join(&d1, a1, &d2, a2).ok()
        }
        _ => {
            let tree_n = rng.gen_range(3..=5usize);
            let mut edges = Vec::new();
            for v in 1..tree_n {
                edges.push((rng.gen_range(0..v), v));
            }
            let mut budget = max_n.checked_sub(tree_n)?;
            let mut parts = Vec::new();
            for _ in 0..edges.len() {
                let d = try_random_join(rng, depth - 1, budget + 2, p_bad)?;
                budget = budget.checked_sub(d.n() - 2)?;
                let digons: Vec<(usize, usize)> =
                    d.arcs().into_iter().filter(|&(p, q)| d.has_arc(q, p)).collect();
                let ends = *digons.choose(rng)?;
                parts.push(TreeJoinPart { digraph: d, ends });
            }
            let (cycle, rule) = random_cycle(rng, tree_n, &edges, op == 2, p_bad);
            let spec = TreeJoinSpec { tree_n, edges, parts, cycle };
            hajos_tree_join(&spec, rule).ok().map(|t| t.digraph)
        }
    }
}

fn random_two_path<R: Rng>(rng: &mut R, d: &Digraph) -> Option<(usize, usize, usize)> {
    let a = rng.gen_range(0..d.n());
    let t = *d.in_neighbours(a).choose(rng)?;
    let w = *d.out_neighbours(a).choose(rng)?;
    Some((t, a, w))
}

/// Leaf order (or partial Eulerian list when `extended`) from a random embedding.
fn random_cycle<R: Rng>(
    rng: &mut R,
    n: usize,
    edges: &[(usize, usize)],
    extended: bool,
    p_bad: f64,
) -> (Vec<usize>, CycleRule) {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for a in adj.iter_mut() {
        a.shuffle(rng);
    }
    // Euler tour of the doubled tree from vertex 0
    let mut tour = Vec::new();
    fn walk(v: usize, p: usize, adj: &[Vec<usize>], tour: &mut Vec<usize>) {
        tour.push(v);
        for &c in &adj[v] {
            if c != p {
                walk(c, v, adj, tour);
                tour.push(v);
            }
        }
    }
    walk(0, usize::MAX, &adj, &mut tour);
    tour.pop();
    let leaf = |v: usize| adj[v].len() == 1;
    let mut used = vec![false; n];
    let mut cycle = Vec::new();
    for &v in &tour {
        if used[v] {
            continue;
        }
        if leaf(v) || (extended && rng.gen_bool(0.3)) {
            used[v] = true;
            cycle.push(v);
        }
    }
    if rng.gen_bool(p_bad) {
        cycle.shuffle(rng);
        return (cycle, CycleRule::Unchecked);
    }
    (cycle, if extended { CycleRule::PartialEulerian } else { CycleRule::Leaves })
}

/// Adds or removes one random arc.
pub fn perturb_one_arc<R: Rng>(rng: &mut R, d: &Digraph) -> Digraph {
    let n = d.n();
    if rng.gen_bool(0.5) {
        let a = *d.arcs().choose(rng).expect("an arc");
        d.edit(&[a], &[]).expect("arc exists")
    } else {
        let non: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v && !d.has_arc(u, v))
            .collect();
        match non.choose(rng) {
            Some(&a) => d.edit(&[], &[a]).expect("new arc"),
            None => d.clone(),
        }
    }
}

/// A 3-extremal digraph on 13 vertices with two induced 3-dicycles sharing two
/// vertices, so its induced cycle hypergraph is not linear.
pub fn extremal_with_overlapping_triangles() -> Digraph {
    const ARCS: [(usize, usize); 45] = [
        (0, 1), (0, 2), (0, 3), (1, 0), (1, 2), (1, 3), (2, 0), (2, 1), (2, 3), (2, 5),
        (2, 12), (3, 0), (3, 1), (3, 8), (4, 2), (4, 6), (4, 7), (5, 4), (5, 6), (5, 7),
        (5, 8), (5, 12), (6, 4), (6, 5), (6, 7), (7, 4), (7, 5), (7, 6), (8, 2), (8, 9),
        (8, 10), (8, 11), (8, 12), (9, 8), (9, 10), (9, 11), (10, 8), (10, 9), (10, 11),
        (11, 5), (11, 9), (11, 10), (12, 2), (12, 5), (12, 8),
    ];
    Digraph::new(13, &ARCS).expect("fixed arc list")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{check_extremal_necessary, induced_cycle_hypergraph, is_k_extremal_by_definition};
    use rand::SeedableRng;

    fn k4() -> Digraph {
        Digraph::symmetric_complete(4)
    }

    #[test]
    fn base_cases() {
        let r = recognize_k_extremal(&k4(), 3, None).unwrap();
        assert!(r.extremal);
        assert!(matches!(r.certificate.unwrap().node, Node::BaseSymmetricOddWheel { .. }));
        assert!(recognize_k_extremal(&Digraph::symmetric_wheel(5), 3, None).unwrap().extremal);
        assert!(!recognize_k_extremal(&Digraph::symmetric_wheel(4), 3, None).unwrap().extremal);
        let r = recognize_k_extremal(&Digraph::symmetric_complete(5), 4, None).unwrap();
        assert_eq!(r.certificate.unwrap().node, Node::BaseSymmetricComplete);
        assert!(!recognize_k_extremal(&Digraph::symmetric_complete(5), 3, None).unwrap().extremal);
        assert_eq!(recognize_k_extremal(&k4(), 2, None), Err(Error::UnsupportedK(2)));
    }

    #[test]
    fn k_one_is_directed_cycle() {
        assert!(recognize_k_extremal(&Digraph::directed_cycle(5), 1, None).unwrap().extremal);
        assert!(!recognize_k_extremal(&Digraph::symmetric_cycle(5), 1, None).unwrap().extremal);
        let r = recognize_k_extremal(&Digraph::directed_path(3), 1, None).unwrap();
        assert_eq!(r.refutation, Some(Refutation::NotStrong));
    }

    #[test]
    fn directed_join_recognized() {
        let d = directed_hajos_join(&k4(), (1, 0), &k4(), (0, 1)).unwrap();
        let r = recognize_k_extremal(&d, 3, None).unwrap();
        assert!(r.extremal);
        let cert = r.certificate.unwrap();
        assert!(matches!(cert.node, Node::DirectedHajosJoin { .. }));
        assert_eq!(replay(&cert).unwrap(), d);
        let json = serde_json::to_string(&cert).unwrap();
        let back: DecompositionCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn bijoin_rejected() {
        let b = hajos_bijoin(&k4(), (1, 0, 2), &k4(), (1, 0, 2)).unwrap();
        let r = recognize_k_extremal(&b.digraph, 3, None).unwrap();
        assert!(!r.extremal);
    }

    #[test]
    fn bridge_arcs_examples() {
        let alive = vec![true; 4];
        assert_eq!(bridge_arcs(4, &alive, &[(0, 1), (1, 2), (2, 3)]), vec![0, 1, 2]);
        assert_eq!(bridge_arcs(3, &alive[..3], &[(0, 1), (1, 0), (1, 2)]), vec![2]);
        assert!(bridge_arcs(3, &alive[..3], &[(0, 1), (1, 2), (2, 0)]).is_empty());
    }

    #[test]
    fn recognizer_agrees_with_definition_on_random_joins() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut positives = 0;
        for i in 0..60 {
            let d = random_join_digraph(&mut rng, 2, 14, 0.2);
            let d = if i % 3 == 2 { perturb_one_arc(&mut rng, &d) } else { d };
            let r = recognize_k_extremal(&d, 3, None).unwrap();
            let truth = is_k_extremal_by_definition(&d, 3, None).unwrap();
            assert_eq!(r.extremal, truth, "{d:?} {r:?}");
            if let Some(cert) = &r.certificate {
                positives += 1;
                assert_eq!(&replay(cert).unwrap(), &d);
                assert!(check_extremal_necessary(&d, 3).passes);
            }
        }
        assert!(positives > 10);
    }

    #[test]
    fn overlapping_triangles_fixture() {
        let d = extremal_with_overlapping_triangles();
        assert!(is_k_extremal_by_definition(&d, 3, None).unwrap());
        let r = recognize_k_extremal(&d, 3, None).unwrap();
        assert_eq!(replay(&r.certificate.unwrap()).unwrap(), d);
        // brute force over vertex triples
        let induced_c3 = |t: [usize; 3]| {
            let sub = d.induced(&t);
            sub.arc_count() == 3 && (0..3).all(|v| sub.out_degree(v) == 1 && sub.in_degree(v) == 1)
        };
        let mut tris = Vec::new();
        for a in 0..13 {
            for b in a + 1..13 {
                for c in b + 1..13 {
                    if induced_c3([a, b, c]) {
                        tris.push([a, b, c]);
                    }
                }
            }
        }
        let overlap = tris.iter().enumerate().any(|(i, s)| {
            tris[i + 1..].iter().any(|t| s.iter().filter(|v| t.contains(v)).count() == 2)
        });
        assert!(overlap);
        assert!(!induced_cycle_hypergraph(&d, None).unwrap().linear);
    }
}

//! Locally semicomplete and locally out-transitive digraphs: local class checks,
//! in-round orders, hub decompositions, 2-dicolourings with a prescribed monochromatic
//! transitive set, the three-case structure of locally semicomplete digraphs, 2-kings
//! and the low out-degree witness for digraphs without short dicycles.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dicolour::verify_dicolouring;
use crate::digraph::{contract, digirth, is_connected, is_strong, strong_components, topological_order, Digraph, VertexSetPartition};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalFlag {
    pub holds: bool,
    /// First vertex where the local condition fails.
    pub witness: Option<usize>,
}

impl LocalFlag {
    fn first_failure(n: usize, ok: impl Fn(usize) -> bool) -> LocalFlag {
        let witness = (0..n).find(|&v| !ok(v));
        LocalFlag {
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalClass {
    pub locally_out_semicomplete: LocalFlag,
    /// Every out-neighbourhood induces a transitive tournament.
    pub locally_out_transitive: LocalFlag,
    pub locally_in_tournament: LocalFlag,
    pub locally_semicomplete: LocalFlag,
    /// Oriented, out-neighbourhoods are tournaments and in-neighbourhoods are acyclic.
    pub in_round_condition: LocalFlag,
    /// Oriented, both neighbourhoods are transitive tournaments.
    pub round_condition: LocalFlag,
}

fn semicomplete_on(d: &Digraph, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &a)| set[i + 1..].iter().all(|&b| d.adjacent(a, b)))
}

fn tournament_on(d: &Digraph, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &a)| set[i + 1..].iter().all(|&b| d.has_arc(a, b) != d.has_arc(b, a)))
}

fn acyclic_on(d: &Digraph, set: &[usize]) -> bool {
    let mut within = vec![false; d.n()];
    for &v in set {
        within[v] = true;
    }
    topological_order(d, &within).is_some()
}

fn transitive_tournament_on(d: &Digraph, set: &[usize]) -> bool {
    tournament_on(d, set) && acyclic_on(d, set)
}

fn in_digon(d: &Digraph, v: usize) -> bool {
    d.out_neighbours(v).iter().any(|&w| d.has_arc(w, v))
}

pub fn check_local_class(d: &Digraph) -> LocalClass {
    let n = d.n();
    let out = |v: usize| d.out_neighbours(v);
    let inn = |v: usize| d.in_neighbours(v);
    LocalClass {
        locally_out_semicomplete: LocalFlag::first_failure(n, |v| semicomplete_on(d, out(v))),
        locally_out_transitive: LocalFlag::first_failure(n, |v| transitive_tournament_on(d, out(v))),
        locally_in_tournament: LocalFlag::first_failure(n, |v| tournament_on(d, inn(v))),
        locally_semicomplete: LocalFlag::first_failure(n, |v| {
            semicomplete_on(d, out(v)) && semicomplete_on(d, inn(v))
        }),
        in_round_condition: LocalFlag::first_failure(n, |v| {
            !in_digon(d, v) && tournament_on(d, out(v)) && acyclic_on(d, inn(v))
        }),
        round_condition: LocalFlag::first_failure(n, |v| {
            !in_digon(d, v) && transitive_tournament_on(d, out(v)) && transitive_tournament_on(d, inn(v))
        }),
    }
}

/// Vertices around a circle, rotated so that vertex 0 comes first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicOrder {
    order: Vec<usize>,
}

impl CyclicOrder {
    pub fn new(order: Vec<usize>) -> Result<CyclicOrder> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidInput(format!("{order:?} is not a permutation")));
            }
        }
        let start = order.iter().position(|&v| v == 0).unwrap_or(0);
        let mut order = order;
        order.rotate_left(start);
        Ok(CyclicOrder { order })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// The `len` vertices just before (`before = true`) or just after `v`.
    fn window(&self, pos: &[usize], v: usize, len: usize, before: bool) -> Vec<usize> {
        let n = self.order.len();
        (1..=len)
            .map(|i| {
                let p = if before { pos[v] + n - i } else { pos[v] + i };
                self.order[p % n]
            })
            .collect()
    }

    fn neighbourhoods_are_windows(&self, d: &Digraph, after_too: bool) -> bool {
        if d.n() != self.order.len() {
            return false;
        }
        let pos = self.positions();
        let same = |mut w: Vec<usize>, nb: &[usize]| {
            w.sort_unstable();
            w == nb
        };
        (0..d.n()).all(|v| {
            let ins = d.in_neighbours(v);
            let outs = d.out_neighbours(v);
            same(self.window(&pos, v, ins.len(), true), ins)
                && (!after_too || same(self.window(&pos, v, outs.len(), false), outs))
        })
    }

    /// Every in-neighbourhood is the interval ending just before its vertex.
    pub fn is_in_round_for(&self, d: &Digraph) -> bool {
        self.neighbourhoods_are_windows(d, false)
    }

    /// In-neighbourhoods end just before and out-neighbourhoods start just after.
    pub fn is_round_for(&self, d: &Digraph) -> bool {
        self.neighbourhoods_are_windows(d, true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation")]
pub enum LocalViolation {
    OutNotTournament { vertex: usize },
    InNotAcyclic { vertex: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum InRound {
    Order(CyclicOrder),
    Refuted(LocalViolation),
}

fn require_strong_oriented(d: &Digraph) -> Result<()> {
    if let Some((u, v)) = d.find_digon() {
        return Err(Error::NotOriented(u, v));
    }
    if !is_strong(d) {
        return Err(Error::NotStrong);
    }
    Ok(())
}

/// In-round cyclic order of a strong oriented graph, or the local condition that rules
/// it out.
pub fn inround_order(d: &Digraph) -> Result<InRound> {
    require_strong_oriented(d)?;
    let n = d.n();
    for x in 0..n {
        if !tournament_on(d, d.out_neighbours(x)) {
            return Ok(InRound::Refuted(LocalViolation::OutNotTournament { vertex: x }));
        }
        if !acyclic_on(d, d.in_neighbours(x)) {
            return Ok(InRound::Refuted(LocalViolation::InNotAcyclic { vertex: x }));
        }
    }
    if n <= 1 {
        return Ok(InRound::Order(CyclicOrder::new((0..n).collect())?));
    }
    // f(x): least in-neighbour with no out-neighbour inside x⁻
    let f: Vec<usize> = (0..n)
        .map(|x| {
            let ins = d.in_neighbours(x);
            *ins.iter()
                .find(|&&y| d.out_neighbours(y).iter().all(|z| !ins.contains(z)))
                .expect("acyclic non-empty in-neighbourhood has a sink")
        })
        .collect();
    let mut seen_at = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut v = 0;
    while seen_at[v] == usize::MAX {
        seen_at[v] = walk.len();
        walk.push(v);
        v = f[v];
    }
    let mut cycle = walk[seen_at[v]..].to_vec();
    cycle.reverse();
    if cycle.len() != n {
        return Err(Error::PreconditionViolated("f-cycle is not Hamiltonian".into()));
    }
    let order = CyclicOrder::new(cycle)?;
    if !order.is_in_round_for(d) {
        return Err(Error::PreconditionViolated("f-cycle is not an in-round order".into()));
    }
    Ok(InRound::Order(order))
}

/// Maximal hubs of a strong locally out-transitive oriented graph and the in-round
/// quotient they contract to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HubPartition {
    pub parts: Vec<Vec<usize>>,
    pub quotient: Digraph,
    pub order: CyclicOrder,
}

/// Inclusion-maximal sets among strong components of D[S] over the given sets S.
fn maximal_strong_pieces(d: &Digraph, sets: impl Iterator<Item = Vec<usize>>) -> Vec<Vec<usize>> {
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    for s in sets {
        if s.is_empty() {
            continue;
        }
        let sub = d.induced(&s);
        for comp in strong_components(&sub) {
            let mut p: Vec<usize> = comp.iter().map(|&i| s[i]).collect();
            p.sort_unstable();
            pieces.push(p);
        }
    }
    pieces.sort();
    pieces.dedup();
    let subset = |a: &[usize], b: &[usize]| a.len() < b.len() && a.iter().all(|x| b.binary_search(x).is_ok());
    let mut out: Vec<Vec<usize>> = pieces
        .iter()
        .filter(|p| !pieces.iter().any(|q| subset(p, q)))
        .cloned()
        .collect();
    out.sort();
    out
}

pub fn hub_decomposition(d: &Digraph) -> Result<HubPartition> {
    require_strong_oriented(d).map_err(|e| Error::PreconditionViolated(e.to_string()))?;
    if let Some(v) = check_local_class(d).locally_out_transitive.witness {
        return Err(Error::PreconditionViolated(format!(
            "out-neighbourhood of {v} is not a transitive tournament"
        )));
    }
    let n = d.n();
    let parts = if n == 1 {
        vec![vec![0]]
    } else {
        maximal_strong_pieces(d, (0..n).map(|x| d.in_neighbours(x).to_vec()))
    };
    let partition = VertexSetPartition::new(n, parts)
        .map_err(|e| Error::PreconditionViolated(format!("maximal hubs do not partition: {e}")))?;
    let quotient = contract(d, &partition)?;
    let order = match inround_order(&quotient) {
        Ok(InRound::Order(o)) => o,
        other => {
            return Err(Error::PreconditionViolated(format!(
                "hub quotient is not in-round: {other:?}"
            )))
        }
    };
    Ok(HubPartition {
        parts: partition.parts,
        quotient,
        order,
    })
}

/// 2-colouring of a strong in-round graph in which x and x⁺ share colour 1: the
/// interval spanned by the longest arc out of x gets 1, the rest 2.
fn in_round_two_colour(q: &Digraph, order: &CyclicOrder, x: usize) -> Vec<usize> {
    let n = q.n();
    if n == 1 {
        return vec![1];
    }
    let pos = order.positions();
    let span = |y: usize| (pos[y] + n - pos[x]) % n;
    let y = *q
        .out_neighbours(x)
        .iter()
        .max_by_key(|&&y| (span(y), std::cmp::Reverse(y)))
        .expect("strong graph has out-arcs");
    (0..n).map(|v| if span(v) <= span(y) { 1 } else { 2 }).collect()
}

/// Acyclic 2-colouring of a locally out-transitive oriented graph in which every vertex
/// of `t` (a transitive tournament) gets colour 1.
pub fn two_dicolour_lot(d: &Digraph, t: &[usize]) -> Result<Vec<usize>> {
    let n = d.n();
    if let Some((u, v)) = d.find_digon() {
        return Err(Error::PreconditionViolated(format!("digon [{u}, {v}]")));
    }
    if let Some(v) = check_local_class(d).locally_out_transitive.witness {
        return Err(Error::PreconditionViolated(format!(
            "out-neighbourhood of {v} is not a transitive tournament"
        )));
    }
    let mut in_t = vec![false; n];
    for &v in t {
        if v >= n || std::mem::replace(&mut in_t[v], true) {
            return Err(Error::PreconditionViolated(format!("bad vertex {v} in t")));
        }
    }
    if !transitive_tournament_on(d, t) {
        return Err(Error::PreconditionViolated("t does not induce a transitive tournament".into()));
    }
    let mut colour = vec![0; n];
    for comp in strong_components(d) {
        let sub = d.induced(&comp);
        let local_t: Vec<usize> = (0..comp.len()).filter(|&i| in_t[comp[i]]).collect();
        for (i, c) in lot_strong(&sub, &local_t)?.into_iter().enumerate() {
            colour[comp[i]] = c;
        }
    }
    if !verify_dicolouring(d, &colour)?.is_valid() {
        return Err(Error::PreconditionViolated("constructed colouring has a monochromatic cycle".into()));
    }
    Ok(colour)
}

fn lot_strong(d: &Digraph, t: &[usize]) -> Result<Vec<usize>> {
    let n = d.n();
    if n == 1 {
        return Ok(vec![1]);
    }
    let hubs = hub_decomposition(d)?;
    let mut hub_of = vec![0; n];
    for (i, p) in hubs.parts.iter().enumerate() {
        for &v in p {
            hub_of[v] = i;
        }
    }
    let first = match t.iter().find(|&&s| t.iter().all(|&u| !d.has_arc(u, s))) {
        Some(&s) => hub_of[s],
        None => 0,
    };
    let quotient_colour = in_round_two_colour(&hubs.quotient, &hubs.order, first);
    let mut colour = vec![0; n];
    for (i, part) in hubs.parts.iter().enumerate() {
        let wanted: Vec<usize> = (0..part.len())
            .filter(|&j| {
                let v = part[j];
                if i == first {
                    t.contains(&v)
                } else {
                    d.in_neighbours(v).iter().any(|&u| hub_of[u] != i)
                }
            })
            .collect();
        let inner = lot_strong(&d.induced(part), &wanted)?;
        for (j, c) in inner.into_iter().enumerate() {
            colour[part[j]] = if quotient_colour[i] == 1 { c } else { 3 - c };
        }
    }
    Ok(colour)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case")]
pub enum SemicompleteStructure {
    UniversalVertex {
        vertex: usize,
    },
    /// Strong semicomplete parts contracting to a round oriented graph, with the round
    /// order of the parts.
    RoundBlowup {
        parts: Vec<Vec<usize>>,
        order: CyclicOrder,
    },
    /// E ⇒ F → G → H ⇒ E. Nonemptiness follows the construction: E and G are non-empty
    /// and one of F, H is. `f_and_h_nonempty` reports the alternative reading.
    FourSetPartition {
        e: Vec<usize>,
        f: Vec<usize>,
        g: Vec<usize>,
        h: Vec<usize>,
        f_and_h_nonempty: bool,
    },
}

/// Maximal strong sets strictly in-dominated or strictly out-dominated by some vertex.
pub fn maximal_weak_hubs(d: &Digraph) -> Vec<Vec<usize>> {
    let n = d.n();
    let only = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().copied().filter(|x| !b.contains(x)).collect() };
    let sets = (0..n).flat_map(|v| {
        [
            only(d.in_neighbours(v), d.out_neighbours(v)),
            only(d.out_neighbours(v), d.in_neighbours(v)),
        ]
    });
    maximal_strong_pieces(d, sets)
}

/// Some outside vertex both receives an arc from `set` and sends one into it.
pub fn is_mixed(d: &Digraph, set: &[usize]) -> bool {
    (0..d.n()).filter(|x| !set.contains(x)).any(|x| {
        set.iter().any(|&u| d.has_arc(x, u)) && set.iter().any(|&v| d.has_arc(v, x))
    })
}

fn dominates(d: &Digraph, a: &[usize], b: &[usize], strictly: bool) -> bool {
    a.iter()
        .all(|&x| b.iter().all(|&y| d.has_arc(x, y) && !(strictly && d.has_arc(y, x))))
}

/// Checks every predicate of the four-set case; returns the first that fails.
pub fn check_four_sets(d: &Digraph, e: &[usize], f: &[usize], g: &[usize], h: &[usize]) -> std::result::Result<(), String> {
    let mut all: Vec<usize> = e.iter().chain(f).chain(g).chain(h).copied().collect();
    all.sort_unstable();
    if all != (0..d.n()).collect::<Vec<_>>() {
        return Err("E, F, G, H do not partition the vertices".into());
    }
    if e.is_empty() || g.is_empty() || (f.is_empty() && h.is_empty()) {
        return Err("nonemptiness".into());
    }
    for (name, s) in [("E", e), ("F", f), ("G", g), ("H", h)] {
        if !semicomplete_on(d, s) {
            return Err(format!("{name} is not semicomplete"));
        }
    }
    if !dominates(d, e, f, true) {
        return Err("E does not strictly out-dominate F".into());
    }
    if !dominates(d, f, g, false) {
        return Err("F does not out-dominate G".into());
    }
    if !dominates(d, g, h, false) {
        return Err("G does not out-dominate H".into());
    }
    if !dominates(d, h, e, true) {
        return Err("H does not strictly out-dominate E".into());
    }
    for &x in g {
        let out = e.iter().any(|&y| d.has_arc(x, y));
        let inn = e.iter().any(|&y| d.has_arc(y, x));
        if !(out && inn) {
            return Err(format!("{x} in G lacks an in- or out-neighbour in E"));
        }
    }
    Ok(())
}

/// Round order of a connected round oriented graph: start at the source if there is
/// one, then repeatedly step to the first vertex of the current out-neighbourhood.
pub fn round_order(d: &Digraph) -> Result<CyclicOrder> {
    let n = d.n();
    let fail = || Error::PreconditionViolated("digraph is not round".into());
    let sources: Vec<usize> = (0..n).filter(|&v| d.in_degree(v) == 0).collect();
    let start = match sources.as_slice() {
        [] => 0,
        [s] => *s,
        _ => return Err(fail()),
    };
    let mut order = vec![start];
    let mut seen = vec![false; n];
    seen[start] = true;
    while order.len() < n {
        let x = *order.last().expect("non-empty");
        let outs = d.out_neighbours(x);
        let next = *outs
            .iter()
            .find(|&&y| outs.iter().all(|&z| !d.has_arc(z, y)))
            .ok_or_else(fail)?;
        if std::mem::replace(&mut seen[next], true) {
            return Err(fail());
        }
        order.push(next);
    }
    let order = CyclicOrder::new(order)?;
    if order.is_round_for(d) {
        Ok(order)
    } else {
        Err(fail())
    }
}

pub fn semicomplete_structure(d: &Digraph) -> Result<SemicompleteStructure> {
    let n = d.n();
    if n == 0 || !is_connected(d) {
        return Err(Error::PreconditionViolated("digraph is not connected".into()));
    }
    if let Some(v) = check_local_class(d).locally_semicomplete.witness {
        return Err(Error::PreconditionViolated(format!(
            "neighbourhood of {v} is not semicomplete"
        )));
    }
    let semicomplete = semicomplete_on(d, &(0..n).collect::<Vec<_>>());
    if semicomplete {
        if let Some(v) = (0..n).find(|&v| d.out_degree(v) == n - 1 && d.in_degree(v) == n - 1) {
            return Ok(SemicompleteStructure::UniversalVertex { vertex: v });
        }
    }
    let hubs = maximal_weak_hubs(d);
    if let Some(x) = hubs.iter().find(|x| is_mixed(d, x)) {
        let outside = (0..n).filter(|v| !x.contains(v));
        let (mut f, mut g, mut h) = (Vec::new(), Vec::new(), Vec::new());
        for u in outside {
            let into = x.iter().any(|&a| d.has_arc(u, a));
            let from = x.iter().any(|&a| d.has_arc(a, u));
            match (into, from) {
                (true, true) => g.push(u),
                (true, false) => h.push(u),
                (false, true) => f.push(u),
                (false, false) => {
                    return Err(Error::PreconditionViolated(format!(
                        "{u} has no arc to the mixed weak hub"
                    )))
                }
            }
        }
        let e = x.clone();
        check_four_sets(d, &e, &f, &g, &h).map_err(Error::PreconditionViolated)?;
        let f_and_h_nonempty = !f.is_empty() && !h.is_empty();
        return Ok(SemicompleteStructure::FourSetPartition {
            e,
            f,
            g,
            h,
            f_and_h_nonempty,
        });
    }
    let partition = VertexSetPartition::new(n, hubs)
        .map_err(|e| Error::PreconditionViolated(format!("maximal weak hubs do not partition: {e}")))?;
    for p in &partition.parts {
        if !semicomplete_on(d, p) {
            return Err(Error::PreconditionViolated(format!("part {p:?} is not semicomplete")));
        }
    }
    let quotient = contract(d, &partition)?;
    if quotient.find_digon().is_some() || quotient.n() < 2 {
        return Err(Error::PreconditionViolated("quotient is not a round oriented graph".into()));
    }
    let order = round_order(&quotient)?;
    Ok(SemicompleteStructure::RoundBlowup {
        parts: partition.parts,
        order,
    })
}

/// Least vertex reaching every other vertex by a dipath of length at most 2.
pub fn find_2king(d: &Digraph) -> Option<usize> {
    let n = d.n();
    (0..n).find(|&v| {
        let mut reach = vec![false; n];
        reach[v] = true;
        for &w in d.out_neighbours(v) {
            reach[w] = true;
            for &z in d.out_neighbours(w) {
                reach[z] = true;
            }
        }
        reach.iter().all(|&r| r)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChWitness {
    pub vertex: usize,
    pub out_degree: usize,
    pub n: usize,
    pub k: usize,
    /// out_degree < n / k
    pub holds: bool,
}

/// Minimum out-degree vertex of a locally in-tournament oriented graph with no dicycle
/// of length at most k, and whether its out-degree is below n/k.
pub fn ch_witness(d: &Digraph, k: usize) -> Result<ChWitness> {
    let n = d.n();
    if k < 2 {
        return Err(Error::BadK(format!("k = {k} must be at least 2")));
    }
    if n == 0 {
        return Err(Error::PreconditionViolated("empty digraph".into()));
    }
    if let Some((u, v)) = d.find_digon() {
        return Err(Error::PreconditionViolated(format!("digon [{u}, {v}]")));
    }
    if let Some(v) = check_local_class(d).locally_in_tournament.witness {
        return Err(Error::PreconditionViolated(format!("in-neighbourhood of {v} is not a tournament")));
    }
    if let Some(g) = digirth(d).filter(|&g| g <= k) {
        return Err(Error::PreconditionViolated(format!("dicycle of length {g}")));
    }
    let vertex = (0..n).min_by_key(|&v| d.out_degree(v)).expect("n > 0");
    let out_degree = d.out_degree(vertex);
    Ok(ChWitness {
        vertex,
        out_degree,
        n,
        k,
        holds: out_degree * k < n,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedWitness {
    pub vertex: usize,
    /// Total weight of the out-neighbours of `vertex`.
    pub out_weight: u64,
    pub weight: u64,
    pub total: u64,
    /// k · out_weight + weight ≤ total
    pub holds: bool,
}

/// Weighted form for a strong out-round oriented graph without directed triangles:
/// the vertex minimising k·w(u⁺) + w(u).
pub fn weighted_out_round_witness(d: &Digraph, weights: &[u64], k: usize) -> Result<WeightedWitness> {
    let n = d.n();
    if weights.len() != n || weights.contains(&0) {
        return Err(Error::PreconditionViolated("need one positive weight per vertex".into()));
    }
    if k < 2 {
        return Err(Error::BadK(format!("k = {k} must be at least 2")));
    }
    match inround_order(&d.reverse()) {
        Ok(InRound::Order(_)) => {}
        other => return Err(Error::PreconditionViolated(format!("not a strong out-round oriented graph: {other:?}"))),
    }
    if digirth(d).is_some_and(|g| g <= 3) {
        return Err(Error::PreconditionViolated("contains a directed triangle".into()));
    }
    let total: u64 = weights.iter().sum();
    let out_weight = |u: usize| d.out_neighbours(u).iter().map(|&v| weights[v]).sum::<u64>();
    let vertex = (0..n)
        .min_by_key(|&u| k as u64 * out_weight(u) + weights[u])
        .expect("n > 0");
    let ow = out_weight(vertex);
    Ok(WeightedWitness {
        vertex,
        out_weight: ow,
        weight: weights[vertex],
        total,
        holds: k as u64 * ow + weights[vertex] <= total,
    })
}

fn relabel<R: Rng>(rng: &mut R, d: &Digraph) -> Digraph {
    let mut perm: Vec<usize> = (0..d.n()).collect();
    perm.shuffle(rng);
    Digraph::from_arcs_lossy(d.n(), d.arcs().into_iter().map(|(a, b)| (perm[a], perm[b])))
}

/// Random strong in-round oriented graph: each in-neighbourhood is a random interval of
/// length 1..=max_back just before its vertex, max_back capped at (n-1)/2 so no digons
/// appear. Labels are shuffled.
pub fn random_in_round<R: Rng>(rng: &mut R, n: usize, max_back: usize) -> Digraph {
    if n == 1 {
        return Digraph::empty(1);
    }
    assert!(n >= 3, "strong oriented graphs need 1 or at least 3 vertices");
    let cap = max_back.clamp(1, (n - 1) / 2);
    let mut arcs = Vec::new();
    for y in 0..n {
        for i in 1..=rng.gen_range(1..=cap) {
            arcs.push(((y + n - i) % n, y));
        }
    }
    relabel(rng, &Digraph::new(n, &arcs).expect("no digons below the cap"))
}

/// Replaces `v` by `h`: arcs out of v leave from every vertex of h, arcs into v enter
/// the vertices of `t`. h's vertex 0 takes index v, the rest are appended.
pub fn substitute_hub(d: &Digraph, v: usize, h: &Digraph, t: &[usize]) -> Digraph {
    let n = d.n();
    let map = |x: usize| if x == 0 { v } else { n + x - 1 };
    let mut arcs: Vec<(usize, usize)> = h.arcs().into_iter().map(|(a, b)| (map(a), map(b))).collect();
    for (a, b) in d.arcs() {
        if a == v {
            arcs.extend((0..h.n()).map(|x| (map(x), b)));
        } else if b == v {
            arcs.extend(t.iter().map(|&x| (a, map(x))));
        } else {
            arcs.push((a, b));
        }
    }
    Digraph::new(n + h.n() - 1, &arcs).expect("substitution keeps arcs simple")
}

/// A vertex together with a random subset of its out-neighbourhood; transitive in any
/// locally out-transitive oriented graph.
pub fn random_transitive_set<R: Rng>(rng: &mut R, d: &Digraph) -> Vec<usize> {
    if d.n() == 0 {
        return Vec::new();
    }
    let x = rng.gen_range(0..d.n());
    let mut t = vec![x];
    t.extend(d.out_neighbours(x).iter().copied().filter(|_| rng.gen_bool(0.5)));
    t.sort_unstable();
    t
}

/// Random strong locally out-transitive oriented graph: an in-round graph in which
/// some vertices are replaced by smaller instances of the same kind.
pub fn random_locally_out_transitive<R: Rng>(rng: &mut R, max_n: usize, depth: usize) -> Digraph {
    let base_n = if max_n < 3 { 1 } else { rng.gen_range(3..=max_n.min(7)) };
    let back = rng.gen_range(1..=3);
    let mut d = random_in_round(rng, base_n, back);
    if depth == 0 {
        return d;
    }
    for v in 0..base_n {
        let room = max_n.saturating_sub(d.n());
        if room < 3 || !rng.gen_bool(0.4) {
            continue;
        }
        let h = random_locally_out_transitive(rng, room + 1, depth - 1);
        let t = random_transitive_set(rng, &h);
        d = substitute_hub(&d, v, &h, &t);
    }
    d
}

fn random_semicomplete<R: Rng>(rng: &mut R, n: usize, p_digon: f64) -> Digraph {
    let mut arcs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p_digon) {
                arcs.extend([(a, b), (b, a)]);
            } else if rng.gen_bool(0.5) {
                arcs.push((a, b));
            } else {
                arcs.push((b, a));
            }
        }
    }
    Digraph::new(n, &arcs).expect("simple")
}

fn random_strong_semicomplete<R: Rng>(rng: &mut R, n: usize) -> Digraph {
    loop {
        let d = random_semicomplete(rng, n, 0.3);
        if is_strong(&d) {
            return d;
        }
    }
}

/// Random connected locally semicomplete digraph drawn from one of several shapes:
/// semicomplete digraphs, blow-ups of round graphs by strong semicomplete parts, and
/// four-set arrangements. Four-set draws are retried until the local condition holds.
pub fn random_locally_semicomplete<R: Rng>(rng: &mut R, max_n: usize) -> Digraph {
    let max_n = max_n.max(4);
    loop {
        let d = match rng.gen_range(0..3) {
            0 => {
                let n = rng.gen_range(1..=max_n);
                random_semicomplete(rng, n, 0.2)
            }
            1 => {
                let k = rng.gen_range(3..=max_n.min(7));
                let round = random_round(rng, k);
                let mut d = round;
                for v in 0..k {
                    if d.n() + 2 <= max_n && rng.gen_bool(0.4) {
                        let m = rng.gen_range(1..=3);
                        let part = random_strong_semicomplete(rng, m);
                        let all: Vec<usize> = (0..m).collect();
                        d = substitute_hub(&d, v, &part, &all);
                    }
                }
                d
            }
            _ => random_four_set(rng),
        };
        let d = relabel(rng, &d);
        if is_connected(&d) && check_local_class(&d).locally_semicomplete.holds {
            return d;
        }
    }
}

/// Random strong round oriented graph on n ≥ 3 vertices: out-intervals whose end points
/// never move backwards around the circle.
fn random_round<R: Rng>(rng: &mut R, n: usize) -> Digraph {
    let cap = ((n - 1) / 2).max(1);
    loop {
        let mut r = vec![rng.gen_range(1..=cap)];
        for i in 1..n {
            let lo = r[i - 1].saturating_sub(1).max(1);
            r.push(rng.gen_range(lo..=cap));
        }
        if r[0] + 1 < r[n - 1] {
            continue;
        }
        let arcs: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (1..=r[x]).map(move |i| (x, (x + i) % n)))
            .collect();
        if let Ok(d) = Digraph::new(n, &arcs) {
            if d.find_digon().is_none() {
                return d;
            }
        }
    }
}

fn random_four_set<R: Rng>(rng: &mut R) -> Digraph {
    let se = rng.gen_range(1..=3);
    let sg = rng.gen_range(1..=2);
    let (sf, sh) = loop {
        let (a, b) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        if a + b > 0 {
            break (a, b);
        }
    };
    let sizes = [se, sf, sg, sh];
    let start: Vec<usize> = sizes.iter().scan(0, |acc, &s| {
        let o = *acc;
        *acc += s;
        Some(o)
    }).collect();
    let set = |i: usize| (start[i]..start[i] + sizes[i]).collect::<Vec<_>>();
    let (e, f, g, h) = (set(0), set(1), set(2), set(3));
    let n = se + sf + sg + sh;
    let mut arcs = Vec::new();
    for (i, s) in [&e, &f, &g, &h].into_iter().enumerate() {
        let inner = random_semicomplete(rng, sizes[i], 0.3);
        arcs.extend(inner.arcs().into_iter().map(|(a, b)| (s[a], s[b])));
    }
    for &x in &e {
        arcs.extend(f.iter().map(|&y| (x, y)));
    }
    for &x in &h {
        arcs.extend(e.iter().map(|&y| (x, y)));
    }
    for &x in &f {
        for &y in &g {
            arcs.push((x, y));
            if rng.gen_bool(0.3) {
                arcs.push((y, x));
            }
        }
    }
    for &x in &g {
        for &y in &h {
            arcs.push((x, y));
            if rng.gen_bool(0.3) {
                arcs.push((y, x));
            }
        }
        for &y in &e {
            match rng.gen_range(0..4) {
                0 => {}
                1 => arcs.push((x, y)),
                2 => arcs.push((y, x)),
                _ => arcs.extend([(x, y), (y, x)]),
            }
        }
    }
    Digraph::new(n, &arcs).expect("simple")
}

//! Directed Brooks: exception classification, Δ_max-dicolouring of non-exceptions and the
//! Δ_min hardness gadget.

use std::collections::VecDeque;

use serde::Serialize;

use crate::dicolour::{colour_count, exact_dichromatic, greedy_dicolour, verify_dicolouring};
use crate::digraph::{bfs_within, blocks, cut_vertices, is_connected, weak_components, Digraph};
use crate::error::{Error, Result};

/// Which tight case a connected digraph belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Exception {
    /// k = 1 (a digon counts as a cycle of length 2)
    DirectedCycle,
    /// k = 2 (this includes ↔K_3)
    SymmetricOddCycle,
    /// ↔K_{k+1} with k ≥ 3; a lone vertex is reported here with k = 0
    SymmetricComplete,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentVerdict {
    pub vertices: Vec<usize>,
    pub k: usize,
    pub exception: Exception,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrooksVerdict {
    pub components: Vec<ComponentVerdict>,
    pub delta_max: usize,
    /// χ⃗ = Δ_max + 1 for the whole digraph.
    pub tight: bool,
}

/// Tag of a connected digraph with respect to its own Δ_max.
pub fn exception_of(h: &Digraph) -> Exception {
    let n = h.n();
    let k = h.delta_max();
    if n == 1 {
        return Exception::SymmetricComplete;
    }
    let regular = (0..n).all(|v| h.out_degree(v) == k && h.in_degree(v) == k);
    if !regular || !is_connected(h) {
        return Exception::None;
    }
    match k {
        1 => Exception::DirectedCycle,
        2 if h.is_symmetric() && n % 2 == 1 => Exception::SymmetricOddCycle,
        k if k >= 3 && n == k + 1 && h.is_symmetric() => Exception::SymmetricComplete,
        _ => Exception::None,
    }
}

pub fn classify_brooks(d: &Digraph) -> BrooksVerdict {
    let delta_max = d.delta_max();
    let components: Vec<ComponentVerdict> = weak_components(d)
        .into_iter()
        .map(|vs| {
            let h = d.induced(&vs);
            ComponentVerdict {
                k: h.delta_max(),
                exception: exception_of(&h),
                vertices: vs,
            }
        })
        .collect();
    let tight = components
        .iter()
        .any(|c| c.k == delta_max && c.exception != Exception::None);
    BrooksVerdict {
        components,
        delta_max,
        tight,
    }
}

/// A Brooks colouring plus notes about any fallback taken.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrooksColouring {
    pub colouring: Vec<usize>,
    pub warnings: Vec<String>,
}

/// Colours each weak component with at most Δ_max colours unless it is an exception,
/// in which case Δ_max + 1 colours are used.
pub fn brooks_colour(d: &Digraph) -> BrooksColouring {
    let mut colouring = vec![0; d.n()];
    let mut warnings = Vec::new();
    for vs in weak_components(d) {
        let h = d.induced(&vs);
        let c = colour_connected(&h, &mut warnings);
        for (i, &v) in vs.iter().enumerate() {
            colouring[v] = c[i];
        }
    }
    BrooksColouring {
        colouring,
        warnings,
    }
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn colour_connected(h: &Digraph, warnings: &mut Vec<String>) -> Vec<usize> {
    let n = h.n();
    let k = h.delta_max();
    if n == 1 {
        return vec![1];
    }
    if exception_of(h) != Exception::None {
        return greedy_dicolour(h, &identity(n)).expect("identity order");
    }
    if let Some(u1) = (0..n).find(|&v| h.d_min(v) < k) {
        let alive = vec![true; n];
        let mut order = bfs_within(h, u1, &alive);
        order.reverse();
        return greedy_dicolour(h, &order).expect("bfs order is a permutation");
    }
    if !cut_vertices(h).is_empty() {
        return colour_by_blocks(h, warnings);
    }
    if let Some(c) = colour_by_triple(h) {
        return c;
    }
    warnings.push(format!(
        "no separating-free neighbour pair found on a {n}-vertex {k}-regular block; used exact search"
    ));
    exact_dichromatic(h, None).expect("no budget").colouring
}

/// Colours blocks separately and aligns them at cut vertices by swapping two colours.
fn colour_by_blocks(h: &Digraph, warnings: &mut Vec<String>) -> Vec<usize> {
    let bl = blocks(h);
    let mut col = vec![0usize; h.n()];
    let mut done = vec![false; bl.len()];
    let mut queue = VecDeque::from([0usize]);
    done[0] = true;
    while let Some(bi) = queue.pop_front() {
        let vs = &bl[bi];
        let mut local = colour_connected(&h.induced(vs), warnings);
        if let Some(i) = vs.iter().position(|&v| col[v] != 0) {
            let (a, b) = (local[i], col[vs[i]]);
            for x in local.iter_mut() {
                if *x == a {
                    *x = b;
                } else if *x == b {
                    *x = a;
                }
            }
        }
        for (i, &v) in vs.iter().enumerate() {
            col[v] = local[i];
        }
        for (bj, other) in bl.iter().enumerate() {
            if !done[bj] && other.iter().any(|v| vs.contains(v)) {
                done[bj] = true;
                queue.push_back(bj);
            }
        }
    }
    col
}

/// Looks for x with two out- (or two in-) neighbours u, v that do not form a digon and
/// whose removal keeps the graph connected; greedy on (v, u, reverse BFS from x) then
/// uses at most Δ_max colours.
fn colour_by_triple(h: &Digraph) -> Option<Vec<usize>> {
    let n = h.n();
    let k = h.delta_max();
    for x in 0..n {
        for side in [h.out_neighbours(x), h.in_neighbours(x)] {
            for (i, &u) in side.iter().enumerate() {
                for &v in &side[i + 1..] {
                    if h.has_digon(u, v) {
                        continue;
                    }
                    let mut alive = vec![true; n];
                    alive[u] = false;
                    alive[v] = false;
                    let mut rest = bfs_within(h, x, &alive);
                    if rest.len() != n - 2 {
                        continue;
                    }
                    rest.reverse();
                    let mut order = vec![v, u];
                    order.extend(rest);
                    let c = greedy_dicolour(h, &order).expect("permutation");
                    if colour_count(&c) <= k {
                        return Some(c);
                    }
                }
            }
        }
    }
    None
}

/// The reduction digraph: vertex u becomes u⁻, u⁺, u_1..u_{k−1}, numbered consecutively
/// from u·(k+1) in that order.
pub fn deltamin_gadget(d: &Digraph, k: usize) -> Result<Digraph> {
    if k < 2 {
        return Err(Error::BadK(format!("gadget needs k ≥ 2, got {k}")));
    }
    let b = k + 1;
    let mut arcs = Vec::new();
    for u in 0..d.n() {
        let minus = u * b;
        let plus = u * b + 1;
        let inner: Vec<usize> = (0..k - 1).map(|i| u * b + 2 + i).collect();
        for hub in [minus, plus] {
            let mut clique = inner.clone();
            clique.push(hub);
            for &p in &clique {
                for &q in &clique {
                    if p != q {
                        arcs.push((p, q));
                    }
                }
            }
        }
        arcs.push((minus, plus));
        for &v in d.out_neighbours(u) {
            arcs.push((plus, v * b));
        }
    }
    Ok(Digraph::from_arcs_lossy(d.n() * b, arcs))
}

/// Lifts a k-dicolouring of G to the gadget: u⁻ and u⁺ keep u's colour, the u_i take the
/// other k − 1 colours.
pub fn gadget_lift(d: &Digraph, k: usize, c: &[usize]) -> Result<Vec<usize>> {
    if c.len() != d.n() || c.iter().any(|&x| x == 0 || x > k) {
        return Err(Error::InvalidInput("colouring must use colours 1..k".into()));
    }
    let b = k + 1;
    let mut out = vec![0; d.n() * b];
    for u in 0..d.n() {
        out[u * b] = c[u];
        out[u * b + 1] = c[u];
        let others = (1..=k).filter(|&x| x != c[u]);
        for (i, x) in others.enumerate() {
            out[u * b + 2 + i] = x;
        }
    }
    Ok(out)
}

/// Projects a dicolouring of the gadget back to G through the u⁺ vertices.
pub fn gadget_project(d: &Digraph, k: usize, c: &[usize]) -> Vec<usize> {
    (0..d.n()).map(|u| c[u * (k + 1) + 1]).collect()
}

/// True when the Brooks colouring is valid and uses at most Δ_max colours per
/// non-exceptional component (Δ_max + 1 otherwise).
pub fn brooks_bound_holds(d: &Digraph, c: &[usize]) -> bool {
    if !verify_dicolouring(d, c).map(|r| r.is_valid()).unwrap_or(false) {
        return false;
    }
    weak_components(d).into_iter().all(|vs| {
        let h = d.induced(&vs);
        let used = {
            let mut cs: Vec<usize> = vs.iter().map(|&v| c[v]).collect();
            cs.sort_unstable();
            cs.dedup();
            cs.len()
        };
        let limit = h.delta_max() + usize::from(exception_of(&h) != Exception::None);
        used <= limit
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dicolour::exact_dichromatic;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn classification_examples() {
        let v = classify_brooks(&Digraph::directed_cycle(5));
        assert_eq!(v.components[0].exception, Exception::DirectedCycle);
        assert_eq!(v.components[0].k, 1);
        assert!(v.tight);
        let v = classify_brooks(&Digraph::symmetric_cycle(5));
        assert_eq!(v.components[0].exception, Exception::SymmetricOddCycle);
        assert_eq!(v.components[0].k, 2);
        let v = classify_brooks(&Digraph::symmetric_cycle(4));
        assert_eq!(v.components[0].exception, Exception::None);
        assert!(!v.tight);
        assert_eq!(exact_dichromatic(&Digraph::symmetric_cycle(4), None).unwrap().chi, 2);
        let v = classify_brooks(&Digraph::symmetric_complete(4));
        assert_eq!(v.components[0].exception, Exception::SymmetricComplete);
    }

    #[test]
    fn tight_needs_a_component_at_global_delta() {
        // ↔K_4 next to a directed triangle: only the ↔K_4 reaches Δ_max = 3
        let (d, _) = Digraph::disjoint_union(&[&Digraph::directed_cycle(3), &Digraph::symmetric_cycle(4)]);
        let v = classify_brooks(&d);
        assert!(!v.tight);
        assert_eq!(exact_dichromatic(&d, None).unwrap().chi, 2);
    }

    #[test]
    fn colouring_examples() {
        let k4 = Digraph::symmetric_complete(4);
        assert_eq!(colour_count(&brooks_colour(&k4).colouring), 4);
        let c4 = Digraph::symmetric_cycle(4);
        let r = brooks_colour(&c4);
        assert!(colour_count(&r.colouring) <= 2);
        assert!(verify_dicolouring(&c4, &r.colouring).unwrap().is_valid());
        let nonreg = Digraph::new(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 2), (0, 3)]).unwrap();
        let r = brooks_colour(&nonreg);
        assert!(colour_count(&r.colouring) <= nonreg.delta_max());
        assert!(brooks_bound_holds(&nonreg, &r.colouring));
    }

    #[test]
    fn regular_with_cutvertex() {
        // each block is ↔K_3 on {a,b,c} with c→a replaced by 0→a and c→0
        let mut arcs = Vec::new();
        for base in [1, 4] {
            let (a, b, c) = (base, base + 1, base + 2);
            arcs.extend([(0, a), (c, 0), (a, b), (b, a), (b, c), (c, b), (a, c)]);
        }
        let d = Digraph::new(7, &arcs).unwrap();
        assert!((0..7).all(|v| d.out_degree(v) == 2 && d.in_degree(v) == 2));
        assert_eq!(cut_vertices(&d), vec![0]);
        let r = brooks_colour(&d);
        assert!(brooks_bound_holds(&d, &r.colouring));
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn random_brooks_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..400 {
            let n = rng.gen_range(1..=14);
            let p: f64 = rng.gen_range(0.05..0.7);
            let arcs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| u != v)
                .filter(|_| rng.gen_bool(p))
                .collect();
            let d = Digraph::new(n, &arcs).unwrap();
            let r = brooks_colour(&d);
            assert!(brooks_bound_holds(&d, &r.colouring), "{d:?}");
        }
    }

    #[test]
    fn gadget_examples() {
        let c3 = Digraph::directed_cycle(3);
        let g = deltamin_gadget(&c3, 2).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(exact_dichromatic(&g, None).unwrap().chi, 2);
        assert!(g.delta_min() <= 2);
        let k3 = Digraph::symmetric_complete(3);
        let g = deltamin_gadget(&k3, 2).unwrap();
        assert_eq!(exact_dichromatic(&g, None).unwrap().chi, 3);
        let g = deltamin_gadget(&Digraph::symmetric_complete(4), 2).unwrap();
        for u in 0..4 {
            assert_eq!(g.out_degree(u * 3 + 2), 2);
        }
        assert!(matches!(deltamin_gadget(&c3, 1), Err(Error::BadK(_))));
    }

    #[test]
    fn gadget_lift_and_project() {
        let d = Digraph::symmetric_cycle(4);
        let g = deltamin_gadget(&d, 2).unwrap();
        let lifted = gadget_lift(&d, 2, &[1, 2, 1, 2]).unwrap();
        assert!(verify_dicolouring(&g, &lifted).unwrap().is_valid());
        let sol = exact_dichromatic(&g, None).unwrap();
        let back = gadget_project(&d, 2, &sol.colouring);
        assert!(verify_dicolouring(&d, &back).unwrap().is_valid());
    }
}

use serde::Serialize;

use super::factor::{alternate_components, extract_factor, FactorSearch};
use super::vizing::proper_edge_colouring;
use super::{colours_used, exact_defective_index, verify_edge_colouring, EdgeColouring};
use crate::digraph::Multigraph;
use crate::error::{Error, Result};

/// ⌈(3Δ−1)/(3d−1)⌉, the colour count reached on multigraphs for odd d.
pub fn odd_defect_bound(delta: usize, d: usize) -> usize {
    if delta == 0 {
        0
    } else {
        (3 * delta - 1).div_ceil(3 * d - 1)
    }
}

/// Largest Δ sharing the bound value t.
fn top_degree(t: usize, d: usize) -> usize {
    (t * (3 * d - 1) + 1) / 3
}

/// Two copies of `g` (vertex v and v+n) with `target − deg(v)` parallel edges between the
/// copies of v; the first `g.edge_count()` edges are the original ones. Returns `g`
/// itself when it is already `target`-regular.
pub fn regularize(g: &Multigraph, target: usize) -> Result<Multigraph> {
    let deg = g.degrees();
    if deg.iter().any(|&x| x > target) {
        return Err(Error::BadParameters(format!("target degree {target} below Δ")));
    }
    if deg.iter().all(|&x| x == target) {
        return Ok(g.clone());
    }
    let n = g.n();
    let mut edges = g.edges().to_vec();
    edges.extend(g.edges().iter().map(|&(u, v)| (u + n, v + n)));
    for v in 0..n {
        edges.extend(std::iter::repeat_n((v, v + n), target - deg[v]));
    }
    Multigraph::new(2 * n, &edges)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum Route {
    /// No edges, or Δ ≤ d.
    Trivial,
    /// Even d: regularize, then peel min(d, Δ)-factors.
    EvenFactors,
    /// Odd d on a multigraph: factor ladder reaching ⌈(3Δ−1)/(3d−1)⌉.
    FactorLadder,
    /// Simple graph: proper (Δ+1)-colouring with colour classes merged d at a time.
    VizingBuckets,
    /// Simple graph with Δ = 2d, d odd: two colours exactly when no 2d-regular
    /// component has odd order; `odd_component` names one that does.
    ParityRule { odd_component: Option<Vec<usize>> },
    /// Factor extraction failed; solved by exact search.
    Exact { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectiveColouring {
    pub colouring: EdgeColouring,
    pub colours: usize,
    /// ⌈Δ/d⌉.
    pub lower_bound: usize,
    pub route: Route,
}

const EXACT_EDGE_LIMIT: usize = 40;
const EXACT_BUDGET: u64 = 5_000_000;

/// A valid d-defective colouring built by the route matching `g` and `d`.
pub fn defective_colour(g: &Multigraph, d: usize, simple_hint: bool) -> Result<DefectiveColouring> {
    if d == 0 {
        return Err(Error::BadParameters("defect d must be at least 1".into()));
    }
    let delta = g.max_degree();
    let lower_bound = delta.div_ceil(d);
    let m = g.edge_count();
    let (colouring, route) = if m == 0 || delta <= d {
        (vec![1; m], Route::Trivial)
    } else if d.is_multiple_of(2) {
        (even_route(g, d)?, Route::EvenFactors)
    } else if simple_hint && g.is_simple() {
        simple_route(g, d)?
    } else {
        let h = regularize(g, delta)?;
        match ladder(&h, delta, d) {
            Ok(c) => (c[..m].to_vec(), Route::FactorLadder),
            Err(Error::FallbackToExact(reason)) if m < EXACT_EDGE_LIMIT => {
                let exact = exact_defective_index(g, d, EXACT_BUDGET)?;
                (exact.colouring, Route::Exact { reason })
            }
            Err(e) => return Err(e),
        }
    };
    if !verify_edge_colouring(g, &colouring, d)?.is_valid() {
        return Err(Error::PreconditionViolated("constructed colouring failed verification".into()));
    }
    Ok(DefectiveColouring {
        colours: colours_used(&colouring),
        colouring,
        lower_bound,
        route,
    })
}

fn factor(g: &Multigraph, k: usize) -> Result<Vec<usize>> {
    match extract_factor(g, k)? {
        FactorSearch::Found(w) => Ok(w.edges),
        other => Err(Error::FallbackToExact(format!("no {k}-factor: {other:?}"))),
    }
}

/// Splits edge indices into the ones in `part` and the rest.
fn complement(m: usize, part: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; m];
    for &e in part {
        inside[e] = true;
    }
    (0..m).filter(|&e| !inside[e]).collect()
}

fn even_route(g: &Multigraph, d: usize) -> Result<EdgeColouring> {
    let delta = g.max_degree();
    let mut h = regularize(g, delta)?;
    if delta % 2 == 1 {
        h = regularize(&h, delta + 1)?;
    }
    let mut colouring = vec![0; h.edge_count()];
    let mut left: Vec<usize> = (0..h.edge_count()).collect();
    let mut degree = h.regular_degree().expect("regularized");
    let mut colour = 0;
    while !left.is_empty() {
        colour += 1;
        let sub = h.edge_subgraph(&left);
        let k = d.min(degree);
        let f = factor(&sub, k)?;
        for &i in &f {
            colouring[left[i]] = colour;
        }
        left = complement(left.len(), &f).into_iter().map(|i| left[i]).collect();
        degree -= k;
    }
    colouring.truncate(g.edge_count());
    Ok(colouring)
}

fn simple_route(g: &Multigraph, d: usize) -> Result<(EdgeColouring, Route)> {
    let delta = g.max_degree();
    let buckets = |c: EdgeColouring| c.into_iter().map(|x| x.div_ceil(d)).collect::<Vec<_>>();
    if delta != 2 * d {
        return Ok((buckets(proper_edge_colouring(g)?), Route::VizingBuckets));
    }
    let deg = g.degrees();
    let odd_component = g
        .components()
        .into_iter()
        .find(|c| c.len() % 2 == 1 && c.iter().all(|&v| deg[v] == delta));
    if odd_component.is_some() {
        return Ok((buckets(proper_edge_colouring(g)?), Route::ParityRule { odd_component }));
    }
    // every component of the doubled graph has an even number of edges
    let h = regularize(g, delta)?;
    let (first, _, spares) = alternate_components(&h)?;
    if !spares.is_empty() {
        return Err(Error::PreconditionViolated("odd component after doubling".into()));
    }
    let mut colouring = vec![2; h.edge_count()];
    for e in first {
        colouring[e] = 1;
    }
    colouring.truncate(g.edge_count());
    Ok((colouring, Route::ParityRule { odd_component: None }))
}

/// Colours a Δ-regular multigraph with `odd_defect_bound(Δ, d)` colours, d odd.
fn ladder(g: &Multigraph, delta: usize, d: usize) -> Result<EdgeColouring> {
    let m = g.edge_count();
    let t = odd_defect_bound(delta, d);
    if t == 0 {
        return Ok(Vec::new());
    }
    let top = top_degree(t, d);
    if delta < top {
        let h = regularize(g, top)?;
        let mut c = ladder(&h, top, d)?;
        c.truncate(m);
        return Ok(c);
    }
    let mut colouring = vec![0; m];
    match t {
        1 => colouring.fill(1),
        2 => {
            let f = factor(g, d - 1)?;
            colouring.fill(2);
            for e in f {
                colouring[e] = 1;
            }
        }
        3 => {
            let f = factor(g, 2 * d)?;
            let (a, b, _) = alternate_components(&g.edge_subgraph(&f))?;
            colouring.fill(3);
            for i in a {
                colouring[f[i]] = 1;
            }
            for i in b {
                colouring[f[i]] = 2;
            }
        }
        4 => {
            let f = factor(g, 2 * d)?;
            let (a, b, spares) = alternate_components(&g.edge_subgraph(&f))?;
            for i in a {
                colouring[f[i]] = 1;
            }
            for i in b {
                colouring[f[i]] = 2;
            }
            let mut rest = complement(m, &f);
            rest.extend(spares.iter().map(|&i| f[i]));
            let r = g.edge_subgraph(&rest);
            let doubled = regularize(&r, 2 * d)?;
            let (x, _, extra) = alternate_components(&doubled)?;
            if !extra.is_empty() {
                return Err(Error::FallbackToExact("odd component in the doubled remainder".into()));
            }
            for &i in &rest {
                colouring[i] = 4;
            }
            for i in x.into_iter().filter(|&i| i < rest.len()) {
                colouring[rest[i]] = 3;
            }
        }
        _ => {
            let f = factor(g, 3 * d - 1)?;
            let inner = ladder(&g.edge_subgraph(&f), 3 * d - 1, d)?;
            for (i, &e) in f.iter().enumerate() {
                colouring[e] = inner[i];
            }
            let rest = complement(m, &f);
            let outer = ladder(&g.edge_subgraph(&rest), delta - (3 * d - 1), d)?;
            for (i, &e) in rest.iter().enumerate() {
                colouring[e] = outer[i] + 3;
            }
        }
    }
    Ok(colouring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defective::{petersen, random_regular_multigraph, random_simple_graph};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bound_shape() {
        for d in [1, 3, 5, 7] {
            for delta in 1..60 {
                let t = odd_defect_bound(delta, d);
                let top = top_degree(t, d);
                assert!(delta <= top);
                assert_eq!(odd_defect_bound(top, d), t);
                assert!(odd_defect_bound(top + 1, d) > t);
            }
        }
    }

    #[test]
    fn regularize_degrees() {
        let g = Multigraph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = regularize(&g, 3).unwrap();
        assert_eq!(h.regular_degree(), Some(3));
        assert_eq!(&h.edges()[..3], g.edges());
        assert!(regularize(&g, 1).is_err());
    }

    #[test]
    fn examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = random_regular_multigraph(&mut rng, 6, 6).unwrap();
        let c = defective_colour(&g, 2, false).unwrap();
        assert_eq!(c.colours, 3);
        let p = defective_colour(&petersen(), 2, true).unwrap();
        assert_eq!(p.colours, 2);
        let k7 = defective_colour(&Multigraph::complete(7), 3, true).unwrap();
        assert_eq!(k7.colours, 3);
        assert!(matches!(k7.route, Route::ParityRule { odd_component: Some(_) }));
        let edges: Vec<(usize, usize)> = (0..8)
            .flat_map(|i| (i + 1..8).map(move |j| (i, j)))
            .filter(|&(i, j)| j != i + 4)
            .collect();
        let k8 = Multigraph::new(8, &edges).unwrap();
        let c = defective_colour(&k8, 3, true).unwrap();
        assert_eq!(c.colours, 2);
        assert_eq!(c.route, Route::ParityRule { odd_component: None });
    }

    #[test]
    fn even_d_reaches_lower_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..60 {
            let n = rng.gen_range(2..=8);
            let m = rng.gen_range(1..=20);
            let edges: Vec<(usize, usize)> = (0..m)
                .map(|_| {
                    let u = rng.gen_range(0..n);
                    (u, (u + rng.gen_range(1..n)) % n)
                })
                .collect();
            let g = Multigraph::new(n, &edges).unwrap();
            for d in [2, 4] {
                let c = defective_colour(&g, d, false).unwrap();
                assert_eq!(c.colours, c.lower_bound, "{edges:?} d={d}");
            }
        }
    }

    #[test]
    fn odd_d_ladder_meets_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut ladder_hits = 0;
        for _ in 0..80 {
            let n = rng.gen_range(2..=8);
            let m = rng.gen_range(1..=24);
            let edges: Vec<(usize, usize)> = (0..m)
                .map(|_| {
                    let u = rng.gen_range(0..n);
                    (u, (u + rng.gen_range(1..n)) % n)
                })
                .collect();
            let g = Multigraph::new(n, &edges).unwrap();
            for d in [1, 3, 5] {
                let c = defective_colour(&g, d, false).unwrap();
                assert!(c.colours <= odd_defect_bound(g.max_degree(), d), "{edges:?} d={d}");
                ladder_hits += usize::from(c.route == Route::FactorLadder);
            }
        }
        assert!(ladder_hits > 100, "{ladder_hits}");
    }

    #[test]
    fn simple_route_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..60 {
            let g = random_simple_graph(&mut rng, 12, 0.5);
            for d in [1, 3, 5] {
                let c = defective_colour(&g, d, true).unwrap();
                assert!(c.colours <= (g.max_degree() + 1).div_ceil(d).max(1));
            }
        }
    }
}

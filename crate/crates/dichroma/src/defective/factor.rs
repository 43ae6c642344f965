use petgraph::algo::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};
use serde::{Deserialize, Serialize};

use crate::digraph::{euler_tour, EulerTour, Multigraph};
use crate::error::{Error, Result};

/// A k-regular spanning sub-multigraph, given by edge indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorWitness {
    pub k: usize,
    pub edges: Vec<usize>,
}

impl FactorWitness {
    pub fn holds_in(&self, g: &Multigraph) -> bool {
        let mut deg = vec![0; g.n()];
        let mut seen = vec![false; g.edge_count()];
        for &e in &self.edges {
            if e >= g.edge_count() || seen[e] {
                return false;
            }
            seen[e] = true;
            let (u, v) = g.edges()[e];
            deg[u] += 1;
            deg[v] += 1;
        }
        deg.iter().all(|&x| x == self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum FactorSearch {
    Found(FactorWitness),
    LowDegree { vertex: usize, degree: usize },
    /// A maximum matching of the auxiliary graph leaves vertices exposed.
    NoPerfectMatching { matched: usize, needed: usize },
}

/// k-factor search. Each edge becomes two adjacent end nodes; each vertex v gets
/// deg(v) − k spare nodes adjacent to all its end nodes. Perfect matchings correspond
/// to k-factors: an edge is in the factor when its two end nodes are matched together.
pub fn extract_factor(g: &Multigraph, k: usize) -> Result<FactorSearch> {
    if k % 2 == 1 {
        return Err(Error::OddK(k));
    }
    let deg = g.degrees();
    if let Some(vertex) = (0..g.n()).find(|&v| deg[v] < k) {
        return Ok(FactorSearch::LowDegree {
            vertex,
            degree: deg[vertex],
        });
    }
    let m = g.edge_count();
    let mut aux = UnGraph::<(), ()>::default();
    let ends: Vec<NodeIndex> = (0..2 * m).map(|_| aux.add_node(())).collect();
    let mut at: Vec<Vec<NodeIndex>> = vec![Vec::new(); g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        aux.add_edge(ends[2 * e], ends[2 * e + 1], ());
        at[u].push(ends[2 * e]);
        at[v].push(ends[2 * e + 1]);
    }
    for v in 0..g.n() {
        for _ in k..deg[v] {
            let spare = aux.add_node(());
            for &x in &at[v] {
                aux.add_edge(spare, x, ());
            }
        }
    }
    let matching = maximum_matching(&aux);
    if !matching.is_perfect() {
        return Ok(FactorSearch::NoPerfectMatching {
            matched: 2 * matching.len(),
            needed: aux.node_count(),
        });
    }
    let edges: Vec<usize> = (0..m)
        .filter(|&e| matching.mate(ends[2 * e]) == Some(ends[2 * e + 1]))
        .collect();
    let witness = FactorWitness { k, edges };
    debug_assert!(witness.holds_in(g));
    Ok(FactorSearch::Found(witness))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerSplit {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    /// Present when the edge count is odd.
    pub spare: Option<usize>,
}

/// Alternates the edges of an Euler tour of a connected 2k-regular multigraph.
pub fn split_euler(g: &Multigraph) -> Result<EulerSplit> {
    match g.regular_degree() {
        Some(r) if r % 2 == 0 => {}
        _ => return Err(Error::NotRegular),
    }
    if g.components().len() > 1 {
        return Err(Error::Disconnected);
    }
    match euler_tour(g) {
        EulerTour::Tour { edges, .. } => Ok(alternate(&edges)),
        EulerTour::Disconnected(..) => Err(Error::Disconnected),
        EulerTour::OddVertex(_) => Err(Error::NotRegular),
    }
}

fn alternate(tour: &[usize]) -> EulerSplit {
    let mut split = EulerSplit {
        first: Vec::new(),
        second: Vec::new(),
        spare: None,
    };
    let keep = if tour.len() % 2 == 1 {
        split.spare = tour.last().copied();
        tour.len() - 1
    } else {
        tour.len()
    };
    for (i, &e) in tour[..keep].iter().enumerate() {
        if i % 2 == 0 {
            split.first.push(e);
        } else {
            split.second.push(e);
        }
    }
    split
}

/// `split_euler` applied to every component of a multigraph whose degrees are all even.
/// Returns the two parts and the spare edges (at most one per component).
pub fn alternate_components(g: &Multigraph) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let deg = g.degrees();
    if deg.iter().any(|&x| x % 2 == 1) {
        return Err(Error::NotRegular);
    }
    let comps = g.components();
    let mut comp_of = vec![0; g.n()];
    let mut local = vec![0; g.n()];
    for (c, members) in comps.iter().enumerate() {
        for (i, &v) in members.iter().enumerate() {
            comp_of[v] = c;
            local[v] = i;
        }
    }
    let mut edge_sets: Vec<Vec<usize>> = vec![Vec::new(); comps.len()];
    for (e, &(u, _)) in g.edges().iter().enumerate() {
        edge_sets[comp_of[u]].push(e);
    }
    let (mut first, mut second, mut spares) = (Vec::new(), Vec::new(), Vec::new());
    for (c, ids) in edge_sets.iter().enumerate() {
        if ids.is_empty() {
            continue;
        }
        let edges: Vec<(usize, usize)> = ids.iter().map(|&e| {
            let (u, v) = g.edges()[e];
            (local[u], local[v])
        }).collect();
        let h = Multigraph::new(comps[c].len(), &edges)?;
        let EulerTour::Tour { edges: tour, .. } = euler_tour(&h) else {
            return Err(Error::Disconnected);
        };
        let split = alternate(&tour);
        first.extend(split.first.iter().map(|&i| ids[i]));
        second.extend(split.second.iter().map(|&i| ids[i]));
        spares.extend(split.spare.map(|i| ids[i]));
    }
    Ok((first, second, spares))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defective::random_regular_multigraph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn degrees_of(g: &Multigraph, idx: &[usize]) -> Vec<usize> {
        g.edge_subgraph(idx).degrees()
    }

    fn brute_factor_exists(g: &Multigraph, k: usize) -> bool {
        let m = g.edge_count();
        (0u32..1 << m).any(|mask| {
            let idx: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
            degrees_of(g, &idx).iter().all(|&x| x == k)
        })
    }

    #[test]
    fn factor_examples() {
        let k5 = Multigraph::complete(5);
        let FactorSearch::Found(w) = extract_factor(&k5, 2).unwrap() else { panic!() };
        assert!(w.holds_in(&k5));
        let sh6 = Multigraph::shannon(6);
        let FactorSearch::Found(w) = extract_factor(&sh6, 2).unwrap() else { panic!() };
        assert!(w.holds_in(&sh6));
        let k4 = Multigraph::complete(4);
        assert!(brute_factor_exists(&k4, 2));
        assert!(matches!(extract_factor(&k4, 2).unwrap(), FactorSearch::Found(_)));
        assert!(matches!(extract_factor(&k4, 1), Err(Error::OddK(1))));
        assert!(matches!(extract_factor(&k4, 4).unwrap(), FactorSearch::LowDegree { vertex: 0, degree: 3 }));
    }

    #[test]
    fn factor_agrees_with_subset_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut found = [0, 0];
        for _ in 0..300 {
            let n = rng.gen_range(2..=6);
            let m = rng.gen_range(1..=14);
            let edges: Vec<(usize, usize)> = (0..m)
                .map(|_| {
                    let u = rng.gen_range(0..n);
                    let v = (u + rng.gen_range(1..n)) % n;
                    (u, v)
                })
                .collect();
            let g = Multigraph::new(n, &edges).unwrap();
            for k in [2, 4] {
                let brute = brute_factor_exists(&g, k);
                let fast = extract_factor(&g, k).unwrap();
                if let FactorSearch::Found(w) = &fast {
                    assert!(w.holds_in(&g));
                }
                assert_eq!(brute, matches!(fast, FactorSearch::Found(_)), "{edges:?} k={k}");
                found[usize::from(brute)] += 1;
            }
        }
        assert!(found[0] > 20 && found[1] > 20, "{found:?}");
    }

    #[test]
    fn split_examples() {
        let k5 = Multigraph::complete(5);
        let s = split_euler(&k5).unwrap();
        assert_eq!(s.spare, None);
        assert_eq!(degrees_of(&k5, &s.first), vec![2; 5]);
        assert_eq!(degrees_of(&k5, &s.second), vec![2; 5]);

        let sh2 = Multigraph::shannon(2);
        let s = split_euler(&sh2).unwrap();
        assert!(s.spare.is_some());
        assert!(degrees_of(&sh2, &s.first).iter().all(|&x| x <= 1));
        assert!(degrees_of(&sh2, &s.second).iter().all(|&x| x <= 1));

        let sh4 = Multigraph::shannon(4);
        let s = split_euler(&sh4).unwrap();
        assert_eq!(s.spare, None);
        assert_eq!(degrees_of(&sh4, &s.first), vec![2; 3]);
        assert_eq!(degrees_of(&sh4, &s.second), vec![2; 3]);

        assert!(matches!(split_euler(&Multigraph::complete(4)), Err(Error::NotRegular)));
        let two = Multigraph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(matches!(split_euler(&two), Err(Error::Disconnected)));
    }

    #[test]
    fn split_random_regular() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.gen_range(3..=9);
            let half = rng.gen_range(1..=3);
            let g = random_regular_multigraph(&mut rng, n, 2 * half).unwrap();
            if g.components().len() > 1 {
                continue;
            }
            let s = split_euler(&g).unwrap();
            let a = degrees_of(&g, &s.first);
            let b = degrees_of(&g, &s.second);
            assert!(a.iter().chain(&b).all(|&x| x <= half));
            if g.edge_count() % 2 == 0 {
                assert_eq!(a, vec![half; n]);
                assert_eq!(b, vec![half; n]);
            }
            let (x, y, spares) = alternate_components(&g).unwrap();
            assert_eq!(x.len() + y.len() + spares.len(), g.edge_count());
        }
    }
}

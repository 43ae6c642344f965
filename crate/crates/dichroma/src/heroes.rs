//! Compositions, substitution, generator families with known dichromatic number and
//! induced-pattern search.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Default vertex cap for generators.
pub const DEFAULT_CAP: usize = 5000;

/// A generated digraph with the facts claimed for it by its construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generated {
    pub name: String,
    pub digraph: Digraph,
    pub claimed_chi: Option<usize>,
    /// Names of patterns the construction guarantees to be absent as induced subdigraphs.
    pub forbidden: Vec<String>,
}

/// C⃗_ℓ(D_1, …, D_ℓ): disjoint union plus all arcs D_i → D_{i+1} and D_ℓ → D_1.
pub fn compose_circular(parts: &[Digraph]) -> Result<Digraph> {
    if parts.len() < 3 {
        return Err(Error::TooFewParts(parts.len()));
    }
    let refs: Vec<&Digraph> = parts.iter().collect();
    let (base, off) = Digraph::disjoint_union(&refs);
    let mut arcs = base.arcs();
    let l = parts.len();
    for i in 0..l {
        let j = (i + 1) % l;
        for a in 0..parts[i].n() {
            for b in 0..parts[j].n() {
                arcs.push((off[i] + a, off[j] + b));
            }
        }
    }
    Ok(Digraph::from_arcs_lossy(base.n(), arcs))
}

/// D_1 ⇒ D_2: disjoint union plus every arc from D_1 to D_2.
pub fn compose_domination(d1: &Digraph, d2: &Digraph) -> Digraph {
    let (base, off) = Digraph::disjoint_union(&[d1, d2]);
    let mut arcs = base.arcs();
    for a in 0..d1.n() {
        for b in 0..d2.n() {
            arcs.push((a, off[1] + b));
        }
    }
    Digraph::from_arcs_lossy(base.n(), arcs)
}

/// Replaces vertex u of g1 by a copy of h1. Vertex 0 of h1 takes the index u, the others
/// are appended after the vertices of g1.
pub fn substitute(g1: &Digraph, u: usize, h1: &Digraph) -> Result<Digraph> {
    if u >= g1.n() {
        return Err(Error::BadVertex(u));
    }
    if h1.n() == 0 {
        return Err(Error::InvalidInput("cannot substitute an empty digraph".into()));
    }
    let n = g1.n() + h1.n() - 1;
    let map = |x: usize| if x == 0 { u } else { g1.n() + x - 1 };
    let mut arcs = Vec::new();
    for (a, b) in g1.arcs() {
        match (a == u, b == u) {
            (false, false) => arcs.push((a, b)),
            (true, false) => arcs.extend((0..h1.n()).map(|x| (map(x), b))),
            (false, true) => arcs.extend((0..h1.n()).map(|x| (a, map(x)))),
            (true, true) => unreachable!("no loops"),
        }
    }
    arcs.extend(h1.arcs().into_iter().map(|(a, b)| (map(a), map(b))));
    Ok(Digraph::from_arcs_lossy(n, arcs))
}

/// F_1 = TT_1 and F_k = C⃗_ℓ(1, F_{k−1}, …, F_{k−1}) with ℓ − 1 copies.
pub fn gen_fk(l: usize, k: usize) -> Result<Generated> {
    gen_fk_capped(l, k, DEFAULT_CAP)
}

pub fn gen_fk_capped(l: usize, k: usize, cap: usize) -> Result<Generated> {
    if l < 3 || k < 1 {
        return Err(Error::BadParameters(format!("need l ≥ 3 and k ≥ 1, got l={l}, k={k}")));
    }
    let mut size = 1usize;
    for _ in 1..k {
        size = size.saturating_mul(l - 1).saturating_add(1);
    }
    if size > cap {
        return Err(Error::SizeCapExceeded { size, cap });
    }
    let mut f = Digraph::empty(1);
    for _ in 1..k {
        let mut parts = vec![Digraph::empty(1)];
        parts.extend(std::iter::repeat_n(f.clone(), l - 1));
        f = compose_circular(&parts)?;
    }
    Ok(Generated {
        name: format!("F_{k}(l={l})"),
        digraph: f,
        claimed_chi: Some(k),
        forbidden: Vec::new(),
    })
}

/// Index of the triple (i, j, k) of D_s, and the triples themselves in lexicographic order.
pub fn ds_triples(s: usize) -> Vec<(usize, usize, usize)> {
    let mut t = Vec::new();
    for i in 1..=s {
        for j in i + 1..=s {
            for k in j + 1..=s {
                t.push((i, j, k));
            }
        }
    }
    t
}

/// The oriented complete multipartite D_s on triples i < j < k ≤ s, part = middle index.
pub fn gen_ds(s: usize) -> Result<Generated> {
    if s < 3 {
        return Err(Error::BadParameters(format!("need s ≥ 3, got {s}")));
    }
    let size = s * (s - 1) * (s - 2) / 6;
    if size > DEFAULT_CAP {
        return Err(Error::SizeCapExceeded {
            size,
            cap: DEFAULT_CAP,
        });
    }
    let t = ds_triples(s);
    let mut arcs = Vec::new();
    for (a, &(i1, j1, k1)) in t.iter().enumerate() {
        for (b, &(i2, j2, k2)) in t.iter().enumerate() {
            if j1 >= j2 {
                continue;
            }
            // a is in the lower part
            if i2 == j1 && j2 == k1 {
                arcs.push((a, b));
            } else {
                arcs.push((b, a));
            }
            let _ = (i1, k2);
        }
    }
    Ok(Generated {
        name: format!("D_{s}"),
        digraph: Digraph::from_arcs_lossy(t.len(), arcs),
        claimed_chi: None,
        forbidden: vec!["C3(1,2,C3)".into(), "C3(1,2,3)".into()],
    })
}

/// Part (middle index) of each vertex of D_s.
pub fn ds_parts(s: usize) -> Vec<usize> {
    ds_triples(s).into_iter().map(|(_, j, _)| j).collect()
}

/// Chordal orientations without C⃗_3(1,2,2): G_1 = K_1; G_{k+1} is TT_{k+1} with a copy
/// of G_k hung on each arc uv by arcs v → y → u.
pub fn gen_chordal_c122(k: usize) -> Result<Generated> {
    if k < 1 {
        return Err(Error::BadParameters("k ≥ 1".into()));
    }
    let mut size = 1usize;
    for j in 1..k {
        size = (j + 1).saturating_add((j * (j + 1) / 2).saturating_mul(size));
    }
    if size > DEFAULT_CAP {
        return Err(Error::SizeCapExceeded {
            size,
            cap: DEFAULT_CAP,
        });
    }
    let mut g = Digraph::empty(1);
    for j in 1..k {
        let t = j + 1;
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for a in 0..t {
            for b in a + 1..t {
                arcs.push((a, b));
            }
        }
        let mut n = t;
        for a in 0..t {
            for b in a + 1..t {
                let off = n;
                arcs.extend(g.arcs().into_iter().map(|(x, y)| (x + off, y + off)));
                for y in 0..g.n() {
                    arcs.push((b, off + y));
                    arcs.push((off + y, a));
                }
                n += g.n();
            }
        }
        g = Digraph::from_arcs_lossy(n, arcs);
    }
    Ok(Generated {
        name: format!("chordal_c122_G_{k}"),
        digraph: g,
        claimed_chi: Some(k),
        forbidden: vec!["C3(1,2,2)".into()],
    })
}

/// All vertex sets inducing a transitive tournament (any order ≥ 1), sorted.
pub fn transitive_subtournaments(d: &Digraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    // extend in ascending order; a set is a TT iff it is a tournament without C⃗_3
    fn rec(d: &Digraph, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for v in start..d.n() {
            if !cur.iter().all(|&u| d.adjacent(u, v) && !d.has_digon(u, v)) {
                continue;
            }
            let closes_triangle = cur.iter().any(|&a| {
                cur.iter().any(|&b| {
                    a != b && d.has_arc(a, b) && d.has_arc(b, v) && d.has_arc(v, a)
                })
            });
            if closes_triangle {
                continue;
            }
            cur.push(v);
            out.push(cur.clone());
            rec(d, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(d, 0, &mut cur, &mut out);
    out.sort();
    out
}

/// F(G): iteratively hang a copy of G below every TT_i, with arcs from the TT_i to the
/// copy, for i = 1..k − 1.
fn rainbow_forcer(g: &Digraph, k: usize, cap: usize) -> Result<Digraph> {
    let mut f = g.clone();
    for i in 1..k {
        let xs: Vec<Vec<usize>> = transitive_subtournaments(&f)
            .into_iter()
            .filter(|x| x.len() == i)
            .collect();
        let size = f.n() + xs.len() * g.n();
        if size > cap {
            return Err(Error::SizeCapExceeded { size, cap });
        }
        let mut arcs = f.arcs();
        let mut n = f.n();
        for x in &xs {
            let off = n;
            arcs.extend(g.arcs().into_iter().map(|(a, b)| (a + off, b + off)));
            for &t in x {
                for y in 0..g.n() {
                    arcs.push((t, off + y));
                }
            }
            n += g.n();
        }
        f = Digraph::from_arcs_lossy(n, arcs);
    }
    Ok(f)
}

/// Chordal orientations without C⃗_3 ⇒ K_1 and with χ⃗ = k.
pub fn gen_chordal_hero_free(k: usize) -> Result<Generated> {
    gen_chordal_hero_free_capped(k, DEFAULT_CAP)
}

pub fn gen_chordal_hero_free_capped(k: usize, cap: usize) -> Result<Generated> {
    if k < 1 {
        return Err(Error::BadParameters("k ≥ 1".into()));
    }
    let mut g = Digraph::empty(1);
    for j in 1..k {
        let f = rainbow_forcer(&g, j, cap)?;
        let ts = transitive_subtournaments(&f);
        let size = f.n() + ts.len() * f.n() + ts.len() * ts.len();
        if size > cap {
            return Err(Error::SizeCapExceeded { size, cap });
        }
        let mut arcs = f.arcs();
        let mut n = f.n();
        for t in &ts {
            let off = n;
            arcs.extend(f.arcs().into_iter().map(|(a, b)| (a + off, b + off)));
            for &x in t {
                for y in 0..f.n() {
                    arcs.push((x, off + y));
                }
            }
            n += f.n();
            for t2 in &ts {
                let z = n;
                n += 1;
                for &y in t2 {
                    arcs.push((off + y, z));
                }
                for &x in t {
                    arcs.push((z, x));
                }
            }
        }
        g = Digraph::from_arcs_lossy(n, arcs);
    }
    Ok(Generated {
        name: format!("chordal_hero_free_G_{k}"),
        digraph: g,
        claimed_chi: Some(k),
        forbidden: vec!["C3=>K1".into()],
    })
}

/// Random chordal orientation with every triangle directed: each new vertex is joined
/// to nothing, to one earlier vertex (random direction), or to both ends of an arc a→b
/// as b→v→a. A tournament on four vertices always contains TT_3, so cliques of a
/// TT_3-free orientation have at most three vertices and this covers the class.
pub fn random_tt3_free_chordal<R: Rng>(rng: &mut R, n: usize) -> Digraph {
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for v in 1..n {
        match rng.gen_range(0..10) {
            0 => {}
            1..=4 => {
                let u = rng.gen_range(0..v);
                arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            }
            _ if !arcs.is_empty() => {
                let (a, b) = arcs[rng.gen_range(0..arcs.len())];
                arcs.push((b, v));
                arcs.push((v, a));
            }
            _ => arcs.push((rng.gen_range(0..v), v)),
        }
    }
    Digraph::from_arcs_lossy(n, arcs)
}

/// The underlying graph is chordal (maximum cardinality search, then a perfect
/// elimination check).
pub fn is_chordal(d: &Digraph) -> bool {
    let n = d.n();
    let adj: Vec<BTreeSet<usize>> = (0..n).map(|v| d.neighbours(v).into_iter().collect()).collect();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !numbered[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("vertex left");
        numbered[v] = true;
        order.push(v);
        for &w in &adj[v] {
            if !numbered[w] {
                weight[w] += 1;
            }
        }
    }
    // reverse of the MCS order is a perfect elimination order iff the graph is chordal
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for &v in &order {
        let earlier: Vec<usize> = adj[v].iter().copied().filter(|&w| pos[w] < pos[v]).collect();
        if let Some(&p) = earlier.iter().max_by_key(|&&w| pos[w]) {
            for &w in &earlier {
                if w != p && !adj[p].contains(&w) {
                    return false;
                }
            }
        }
    }
    true
}

/// Injective map pattern → host preserving arcs, reverse arcs and non-adjacency.
pub type PatternEmbedding = Vec<usize>;

/// First induced embedding of `pattern` in `host` in lexicographic order of images.
/// `budget` caps the number of partial assignments tried.
pub fn contains_induced(
    host: &Digraph,
    pattern: &Digraph,
    budget: Option<u64>,
) -> Result<Option<PatternEmbedding>> {
    let p = pattern.n();
    if p == 0 {
        return Ok(Some(Vec::new()));
    }
    if p > host.n() {
        return Ok(None);
    }
    let mut map = vec![usize::MAX; p];
    let mut used = vec![false; host.n()];
    let mut nodes = 0u64;
    if embed(host, pattern, 0, &mut map, &mut used, &mut nodes, budget)? {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn embed(
    host: &Digraph,
    pattern: &Digraph,
    i: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    nodes: &mut u64,
    budget: Option<u64>,
) -> Result<bool> {
    if i == pattern.n() {
        return Ok(true);
    }
    for h in 0..host.n() {
        if used[h]
            || host.out_degree(h) < pattern.out_degree(i)
            || host.in_degree(h) < pattern.in_degree(i)
        {
            continue;
        }
        *nodes += 1;
        if let Some(b) = budget {
            if *nodes > b {
                return Err(Error::BudgetExceeded { lower: 0, upper: 1 });
            }
        }
        let consistent = (0..i).all(|j| {
            pattern.has_arc(i, j) == host.has_arc(h, map[j])
                && pattern.has_arc(j, i) == host.has_arc(map[j], h)
        });
        if !consistent {
            continue;
        }
        map[i] = h;
        used[h] = true;
        if embed(host, pattern, i + 1, map, used, nodes, budget)? {
            return Ok(true);
        }
        used[h] = false;
        map[i] = usize::MAX;
    }
    Ok(false)
}

/// Named small patterns used by the generators' metadata and the CLI.
pub fn named_pattern(name: &str) -> Option<Digraph> {
    let tt = Digraph::transitive_tournament;
    let c3 = Digraph::directed_cycle(3);
    let one = Digraph::empty(1);
    let d = match name {
        "C3" => c3,
        "TT3" => tt(3),
        "C3(1,2,2)" => compose_circular(&[one, tt(2), tt(2)]).ok()?,
        "C3(1,1,2)" => compose_circular(&[one.clone(), one, tt(2)]).ok()?,
        "C3(1,2,C3)" => compose_circular(&[one, tt(2), c3]).ok()?,
        "C3(1,2,3)" => compose_circular(&[one, tt(2), tt(3)]).ok()?,
        "C3=>K1" => compose_domination(&c3, &one),
        "K1=>C3" => compose_domination(&one, &c3),
        _ => return None,
    };
    Some(d)
}

/// Counts of vertices per part, keyed by part label.
pub fn part_sizes(parts: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &p in parts {
        *m.entry(p).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dicolour::exact_dichromatic;

    fn brute_contains(host: &Digraph, pattern: &Digraph) -> bool {
        fn rec(host: &Digraph, pattern: &Digraph, map: &mut Vec<usize>) -> bool {
            let i = map.len();
            if i == pattern.n() {
                return (0..i).all(|a| {
                    (0..i).all(|b| a == b || pattern.has_arc(a, b) == host.has_arc(map[a], map[b]))
                });
            }
            for h in 0..host.n() {
                if !map.contains(&h) {
                    map.push(h);
                    if rec(host, pattern, map) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        rec(host, pattern, &mut Vec::new())
    }

    #[test]
    fn circular_examples() {
        let one = Digraph::empty(1);
        assert_eq!(
            compose_circular(&[one.clone(), one.clone(), one.clone()]).unwrap(),
            Digraph::directed_cycle(3)
        );
        let t = named_pattern("C3(1,2,2)").unwrap();
        assert_eq!(t.n(), 5);
        assert_eq!(t.arc_count(), 10);
        assert!(t.is_oriented());
        assert_eq!(named_pattern("C3(1,1,2)").unwrap().n(), 4);
        assert_eq!(compose_circular(&[one.clone(), one]), Err(Error::TooFewParts(2)));
    }

    #[test]
    fn domination_examples() {
        let one = Digraph::empty(1);
        let h = compose_domination(&one, &Digraph::directed_cycle(3));
        assert_eq!(h.n(), 4);
        assert_eq!(h.out_degree(0), 3);
        assert_eq!(compose_domination(&one, &one), Digraph::transitive_tournament(2));
        let a = compose_domination(&Digraph::transitive_tournament(2), &Digraph::transitive_tournament(3));
        assert_eq!(exact_dichromatic(&a, None).unwrap().chi, 1);
    }

    #[test]
    fn substitution_examples() {
        let c3 = Digraph::directed_cycle(3);
        let s = substitute(&c3, 0, &Digraph::transitive_tournament(2)).unwrap();
        assert_eq!(s.n(), 4);
        assert_eq!(exact_dichromatic(&s, None).unwrap().chi, 2);
        assert_eq!(substitute(&c3, 1, &Digraph::empty(1)).unwrap(), c3);
        let iso = Digraph::new(3, &[(0, 1)]).unwrap();
        let s = substitute(&iso, 2, &Digraph::directed_cycle(3)).unwrap();
        assert_eq!(s.arc_count(), 4);
        assert_eq!(substitute(&c3, 5, &c3), Err(Error::BadVertex(5)));
    }

    #[test]
    fn fk_examples() {
        assert_eq!(gen_fk(3, 2).unwrap().digraph, Digraph::directed_cycle(3));
        let f3 = gen_fk(3, 3).unwrap();
        assert_eq!(f3.digraph.n(), 7);
        assert_eq!(exact_dichromatic(&f3.digraph, None).unwrap().chi, 3);
        assert_eq!(gen_fk(4, 2).unwrap().digraph, Digraph::directed_cycle(4));
        assert!(matches!(gen_fk_capped(3, 10, 100), Err(Error::SizeCapExceeded { .. })));
    }

    #[test]
    fn fk_chi_small_sizes() {
        for (l, k) in [(3, 1), (3, 2), (3, 3), (3, 4), (4, 2), (4, 3), (5, 2), (5, 3), (6, 2)] {
            let g = gen_fk(l, k).unwrap();
            assert!(g.digraph.n() <= 22);
            assert_eq!(exact_dichromatic(&g.digraph, None).unwrap().chi, k, "l={l} k={k}");
        }
    }

    #[test]
    fn ds_examples() {
        let d5 = gen_ds(5).unwrap();
        assert_eq!(d5.digraph.n(), 10);
        let sizes = part_sizes(&ds_parts(5));
        assert_eq!(sizes.into_iter().collect::<Vec<_>>(), vec![(2, 3), (3, 4), (4, 3)]);
        assert!(d5.digraph.is_oriented());
        // complete multipartite: adjacent exactly across parts
        let parts = ds_parts(5);
        for a in 0..10 {
            for b in 0..10 {
                if a != b {
                    assert_eq!(d5.digraph.adjacent(a, b), parts[a] != parts[b]);
                }
            }
        }
        for name in ["C3(1,2,C3)", "C3(1,2,3)"] {
            let p = named_pattern(name).unwrap();
            assert_eq!(contains_induced(&d5.digraph, &p, None).unwrap(), None);
        }
    }

    #[test]
    fn ds_subtournaments_have_path_feedback_sets() {
        for s in 5..=7 {
            let d = gen_ds(s).unwrap().digraph;
            let t = ds_triples(s);
            for set in transitive_or_cyclic_tournaments(&d) {
                // forward arcs inside the set: each vertex has at most one in and one out
                let fwd: Vec<(usize, usize)> = d
                    .induced(&set)
                    .arcs()
                    .into_iter()
                    .map(|(a, b)| (set[a], set[b]))
                    .filter(|&(a, b)| t[a].1 < t[b].1)
                    .collect();
                for &v in &set {
                    assert!(fwd.iter().filter(|e| e.0 == v).count() <= 1);
                    assert!(fwd.iter().filter(|e| e.1 == v).count() <= 1);
                }
                // removing them leaves an acyclic digraph
                let rest = Digraph::from_arcs_lossy(
                    d.n(),
                    d.induced(&set)
                        .arcs()
                        .into_iter()
                        .map(|(a, b)| (set[a], set[b]))
                        .filter(|&(a, b)| t[a].1 > t[b].1),
                );
                let within: Vec<bool> = (0..d.n()).map(|v| set.contains(&v)).collect();
                assert!(crate::digraph::topological_order(&rest, &within).is_some());
            }
        }
    }

    fn transitive_or_cyclic_tournaments(d: &Digraph) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn rec(d: &Digraph, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            for v in start..d.n() {
                if cur.iter().all(|&u| d.adjacent(u, v)) {
                    cur.push(v);
                    out.push(cur.clone());
                    rec(d, v + 1, cur, out);
                    cur.pop();
                }
            }
        }
        rec(d, 0, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn chordal_c122_examples() {
        let g2 = gen_chordal_c122(2).unwrap().digraph;
        assert_eq!(g2, Digraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap());
        let g3 = gen_chordal_c122(3).unwrap().digraph;
        assert_eq!(g3.n(), 12);
        assert!(is_chordal(&g3));
        assert_eq!(exact_dichromatic(&g3, None).unwrap().chi, 3);
        let p = named_pattern("C3(1,2,2)").unwrap();
        assert_eq!(contains_induced(&g3, &p, None).unwrap(), None);
    }

    #[test]
    fn chordal_hero_free_small() {
        assert_eq!(gen_chordal_hero_free(1).unwrap().digraph.n(), 1);
        let g2 = gen_chordal_hero_free(2).unwrap().digraph;
        assert_eq!(g2.n(), 3);
        assert!(crate::digraph::is_strong(&g2));
        assert_eq!(exact_dichromatic(&g2, None).unwrap().chi, 2);
        assert!(is_chordal(&g2));
        let p = named_pattern("C3=>K1").unwrap();
        assert_eq!(contains_induced(&g2, &p, None).unwrap(), None);
    }

    #[test]
    fn chordal_hero_free_level_three() {
        let g3 = gen_chordal_hero_free(3).unwrap().digraph;
        assert!(is_chordal(&g3));
        let p = named_pattern("C3=>K1").unwrap();
        assert_eq!(contains_induced(&g3, &p, None).unwrap(), None);
        assert!(g3.is_oriented());
    }

    #[test]
    fn chordality_check() {
        assert!(is_chordal(&Digraph::symmetric_complete(5)));
        assert!(!is_chordal(&Digraph::directed_cycle(4)));
        assert!(is_chordal(&Digraph::directed_cycle(3)));
        assert!(is_chordal(&Digraph::directed_path(6)));
    }

    #[test]
    fn induced_search_examples() {
        let tt5 = Digraph::transitive_tournament(5);
        assert_eq!(
            contains_induced(&tt5, &Digraph::transitive_tournament(3), None).unwrap(),
            Some(vec![0, 1, 2])
        );
        assert_eq!(contains_induced(&tt5, &Digraph::directed_cycle(3), None).unwrap(), None);
    }

    #[test]
    fn induced_search_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let hn = rng.gen_range(1..=8);
            let pn = rng.gen_range(1..=4);
            let rand_d = |n: usize, rng: &mut rand_chacha::ChaCha8Rng| {
                let arcs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (0..n).map(move |v| (u, v)))
                    .filter(|&(u, v)| u != v)
                    .filter(|_| rng.gen_bool(0.35))
                    .collect();
                Digraph::new(n, &arcs).unwrap()
            };
            let host = rand_d(hn, &mut rng);
            let pat = rand_d(pn, &mut rng);
            let got = contains_induced(&host, &pat, None).unwrap();
            assert_eq!(got.is_some(), brute_contains(&host, &pat));
            if let Some(m) = got {
                for a in 0..pn {
                    for b in 0..pn {
                        if a != b {
                            assert_eq!(pat.has_arc(a, b), host.has_arc(m[a], m[b]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn line_digraph_colouring_bound() {
        // χ(L(TT_s)) ≥ log₂ χ(TT_s) = log₂ s, with an independent undirected colourer
        for s in 3..=8usize {
            let tt = Digraph::transitive_tournament(s);
            let arcs = tt.arcs();
            let m = arcs.len();
            let mut adj = vec![vec![false; m]; m];
            for (i, &(_, b)) in arcs.iter().enumerate() {
                for (j, &(c, _)) in arcs.iter().enumerate() {
                    if b == c {
                        adj[i][j] = true;
                        adj[j][i] = true;
                    }
                }
            }
            let chi = undirected_chi(&adj);
            assert!((chi as f64) >= (s as f64).log2(), "s={s} chi={chi}");
        }
    }

    fn undirected_chi(adj: &[Vec<bool>]) -> usize {
        let n = adj.len();
        for k in 1..=n {
            let mut col = vec![0usize; n];
            if colour_rec(adj, 0, k, &mut col) {
                return k;
            }
        }
        n
    }

    fn colour_rec(adj: &[Vec<bool>], i: usize, k: usize, col: &mut Vec<usize>) -> bool {
        if i == adj.len() {
            return true;
        }
        let max_used = col[..i].iter().copied().max().unwrap_or(0);
        for c in 1..=k.min(max_used + 1) {
            if (0..i).all(|j| !adj[i][j] || col[j] != c) {
                col[i] = c;
                if colour_rec(adj, i + 1, k, col) {
                    return true;
                }
            }
        }
        col[i] = 0;
        false
    }

    #[test]
    fn random_tt3_free_chordal_shape() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let tt3 = Digraph::transitive_tournament(3);
        let mut triangles = 0;
        for _ in 0..60 {
            let d = random_tt3_free_chordal(&mut rng, 12);
            assert!(d.is_oriented());
            assert!(is_chordal(&d));
            assert!(!brute_contains(&d, &tt3));
            triangles += usize::from(brute_contains(&d, &Digraph::directed_cycle(3)));
        }
        assert!(triangles > 30);
    }
}

//! Brute-force oracles shared by the integration tests. Nothing here calls the library's
//! algorithms; graphs are only read through `n`, `has_arc` and `edges`.
#![allow(dead_code)]

use std::collections::VecDeque;

use dichroma::{Digraph, Multigraph};

/// Out-neighbour bitmasks (n ≤ 64).
pub fn out_masks(d: &Digraph) -> Vec<u64> {
    let n = d.n();
    (0..n)
        .map(|u| (0..n).filter(|&v| d.has_arc(u, v)).fold(0u64, |m, v| m | 1 << v))
        .collect()
}

/// Whether the vertices of `mask` induce an acyclic digraph (repeated source removal).
pub fn acyclic_on(out: &[u64], mask: u64) -> bool {
    let mut left = mask;
    loop {
        if left == 0 {
            return true;
        }
        let mut removed = false;
        for v in 0..out.len() {
            if left >> v & 1 == 1 {
                let has_in = (0..out.len()).any(|u| left >> u & 1 == 1 && out[u] >> v & 1 == 1);
                if !has_in {
                    left &= !(1 << v);
                    removed = true;
                }
            }
        }
        if !removed {
            return false;
        }
    }
}

pub fn dicolouring_ok(d: &Digraph, c: &[usize]) -> bool {
    if c.len() != d.n() || c.contains(&0) {
        return false;
    }
    let out = out_masks(d);
    let k = c.iter().copied().max().unwrap_or(0);
    (1..=k).all(|col| {
        let mask = (0..d.n()).filter(|&v| c[v] == col).fold(0u64, |m, v| m | 1 << v);
        acyclic_on(&out, mask)
    })
}

/// Minimum number of acyclic parts, by enumerating set partitions with pruning.
pub fn brute_chi(d: &Digraph) -> usize {
    fn rec(out: &[u64], v: usize, blocks: &mut Vec<u64>, best: &mut usize) {
        if blocks.len() >= *best {
            return;
        }
        if v == out.len() {
            *best = blocks.len();
            return;
        }
        for i in 0..blocks.len() {
            let grown = blocks[i] | 1 << v;
            if acyclic_on(out, grown) {
                let old = blocks[i];
                blocks[i] = grown;
                rec(out, v + 1, blocks, best);
                blocks[i] = old;
            }
        }
        blocks.push(1 << v);
        rec(out, v + 1, blocks, best);
        blocks.pop();
    }
    let out = out_masks(d);
    let mut best = d.n();
    rec(&out, 0, &mut Vec::new(), &mut best);
    best
}

fn reach(adj: &[u64], start: usize, alive: u64) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & alive & !seen;
        seen |= new;
        frontier |= new;
    }
    seen
}

pub fn strong(d: &Digraph) -> bool {
    let n = d.n();
    if n == 0 {
        return true;
    }
    let out = out_masks(d);
    let inn: Vec<u64> = (0..n)
        .map(|v| (0..n).filter(|&u| out[u] >> v & 1 == 1).fold(0u64, |m, u| m | 1 << u))
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    reach(&out, 0, all) == all && reach(&inn, 0, all) == all
}

fn underlying(d: &Digraph) -> Vec<u64> {
    let out = out_masks(d);
    let n = d.n();
    (0..n)
        .map(|v| out[v] | (0..n).filter(|&u| out[u] >> v & 1 == 1).fold(0u64, |m, u| m | 1 << u))
        .collect()
}

pub fn weakly_connected(d: &Digraph) -> bool {
    let n = d.n();
    n == 0 || reach(&underlying(d), 0, (1u64 << n) - 1) == (1u64 << n) - 1
}

/// Underlying graph connected after deleting any one vertex (n ≥ 3).
pub fn biconnected(d: &Digraph) -> bool {
    let n = d.n();
    if n < 3 {
        return weakly_connected(d);
    }
    let adj = underlying(d);
    let all = (1u64 << n) - 1;
    (0..n).all(|x| {
        let alive = all & !(1 << x);
        let s = if x == 0 { 1 } else { 0 };
        reach(&adj, s, alive) == alive
    })
}

/// Maximum number of arc-disjoint s→t paths (unit-capacity augmenting paths).
pub fn arc_disjoint_paths(d: &Digraph, s: usize, t: usize) -> usize {
    let n = d.n();
    let mut cap = vec![vec![0i32; n]; n];
    for u in 0..n {
        for v in 0..n {
            if d.has_arc(u, v) {
                cap[u][v] = 1;
            }
        }
    }
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if prev[v] == usize::MAX && cap[u][v] > 0 {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[t] == usize::MAX {
            return flow;
        }
        let mut v = t;
        while v != s {
            let u = prev[v];
            cap[u][v] -= 1;
            cap[v][u] += 1;
            v = u;
        }
        flow += 1;
    }
}

/// Maximum local arc-connectivity over ordered pairs.
pub fn brute_lambda(d: &Digraph) -> usize {
    let n = d.n();
    (0..n)
        .flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)))
        .map(|(s, t)| arc_disjoint_paths(d, s, t))
        .max()
        .unwrap_or(0)
}

/// Every vertex sees at most `d` edges of each colour.
pub fn edge_colouring_ok(g: &Multigraph, c: &[usize], d: usize) -> bool {
    if c.len() != g.edge_count() || c.contains(&0) {
        return false;
    }
    let k = c.iter().copied().max().unwrap_or(0);
    let mut count = vec![vec![0; k + 1]; g.n()];
    for (&(u, v), &col) in g.edges().iter().zip(c) {
        count[u][col] += 1;
        count[v][col] += 1;
    }
    count.iter().all(|row| row.iter().all(|&x| x <= d))
}

/// Some injective map preserving arcs and non-arcs in both directions.
pub fn has_induced_copy(host: &Digraph, pattern: &Digraph) -> bool {
    fn rec(host: &Digraph, pattern: &Digraph, map: &mut Vec<usize>) -> bool {
        let i = map.len();
        if i == pattern.n() {
            return true;
        }
        for h in 0..host.n() {
            if map.contains(&h) {
                continue;
            }
            let fits = (0..i).all(|j| {
                pattern.has_arc(i, j) == host.has_arc(h, map[j]) && pattern.has_arc(j, i) == host.has_arc(map[j], h)
            });
            if fits {
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

/// Every digraph on n labelled vertices, as arc lists (n ≤ 4 keeps this small).
pub fn all_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let arcs: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        Digraph::new(n, &arcs).unwrap()
    })
}

pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

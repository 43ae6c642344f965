use super::EdgeColouring;
use crate::digraph::Multigraph;
use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

struct Palette {
    /// `at[u][v]`: colour of edge uv, 0 when uncoloured.
    at: Vec<Vec<usize>>,
    /// `via[v][c]`: the neighbour joined to v by colour c.
    via: Vec<Vec<usize>>,
}

impl Palette {
    fn free(&self, v: usize, c: usize) -> bool {
        self.via[v][c] == NONE
    }

    fn any_free(&self, v: usize) -> usize {
        (1..self.via[v].len()).find(|&c| self.free(v, c)).expect("palette has Δ+1 colours")
    }

    fn set(&mut self, u: usize, v: usize, c: usize) {
        let old = self.at[u][v];
        if old != 0 {
            self.via[u][old] = NONE;
            self.via[v][old] = NONE;
        }
        self.at[u][v] = c;
        self.at[v][u] = c;
        if c != 0 {
            self.via[u][c] = v;
            self.via[v][c] = u;
        }
    }
}

/// Proper edge colouring of a simple graph with at most Δ+1 colours (Misra–Gries fans
/// and two-colour path swaps).
pub fn proper_edge_colouring(g: &Multigraph) -> Result<EdgeColouring> {
    if !g.is_simple() {
        return Err(Error::BadParameters("proper Δ+1 colouring needs a simple graph".into()));
    }
    let n = g.n();
    let colours = g.max_degree() + 1;
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut p = Palette {
        at: vec![vec![0; n]; n],
        via: vec![vec![NONE; colours + 1]; n],
    };
    let mut in_fan = vec![false; n];
    for &(u, v) in g.edges() {
        let mut fan = vec![v];
        in_fan[v] = true;
        loop {
            let last = *fan.last().unwrap();
            let next = adj[u]
                .iter()
                .copied()
                .find(|&w| !in_fan[w] && p.at[u][w] != 0 && p.free(last, p.at[u][w]));
            match next {
                Some(w) => {
                    in_fan[w] = true;
                    fan.push(w);
                }
                None => break,
            }
        }
        for &w in &fan {
            in_fan[w] = false;
        }
        let c = p.any_free(u);
        let d = p.any_free(*fan.last().unwrap());
        swap_path(&mut p, u, c, d);
        let mut pick = None;
        for i in 0..fan.len() {
            if i > 0 {
                let col = p.at[u][fan[i]];
                if col == 0 || !p.free(fan[i - 1], col) {
                    break;
                }
            }
            if p.free(fan[i], d) {
                pick = Some(i);
                break;
            }
        }
        let w = pick.expect("a fan prefix ends at a vertex missing d");
        for j in 0..w {
            let col = p.at[u][fan[j + 1]];
            p.set(u, fan[j + 1], 0);
            p.set(u, fan[j], col);
        }
        p.set(u, fan[w], d);
    }
    Ok(g.edges().iter().map(|&(u, v)| p.at[u][v]).collect())
}

/// Swaps colours c and d on the maximal path from u that starts with a d-edge.
fn swap_path(p: &mut Palette, u: usize, c: usize, d: usize) {
    if c == d {
        return;
    }
    let mut path = Vec::new();
    let (mut x, mut col) = (u, d);
    while p.via[x][col] != NONE {
        let y = p.via[x][col];
        path.push((x, y, col));
        x = y;
        col = if col == d { c } else { d };
    }
    for &(a, b, _) in &path {
        p.set(a, b, 0);
    }
    for &(a, b, col) in &path {
        p.set(a, b, if col == d { c } else { d });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defective::{petersen, random_simple_graph, verify_edge_colouring};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_cases() {
        let k4 = Multigraph::complete(4);
        let c = proper_edge_colouring(&k4).unwrap();
        assert!(verify_edge_colouring(&k4, &c, 1).unwrap().is_valid());
        assert!(c.iter().all(|&x| x <= 4));
        let c = proper_edge_colouring(&petersen()).unwrap();
        assert!(verify_edge_colouring(&petersen(), &c, 1).unwrap().is_valid());
        assert!(proper_edge_colouring(&Multigraph::shannon(2)).is_ok());
        assert!(proper_edge_colouring(&Multigraph::shannon(4)).is_err());
    }

    #[test]
    fn random_simple_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let n = rng.gen_range(1..=20);
            let p = rng.gen_range(0.1..0.9);
            let g = random_simple_graph(&mut rng, n, p);
            let c = proper_edge_colouring(&g).unwrap();
            assert!(verify_edge_colouring(&g, &c, 1).unwrap().is_valid());
            assert!(c.iter().all(|&x| x <= g.max_degree() + 1));
        }
    }
}

use serde::Serialize;

use super::{verify_edge_colouring, EdgeColouring};
use crate::digraph::Multigraph;
use crate::error::{Error, Result};

/// The (jd)-regular simple graph G_{jd,d} with a (j, d)-colouring: K_{d+1} in colour 1,
/// then repeatedly two copies joined by u_i ~ v_{i+t} (t < d), the joiner in a new colour.
pub fn defective_tower(j: usize, d: usize) -> Result<(Multigraph, EdgeColouring)> {
    if j == 0 || d == 0 {
        return Err(Error::BadParameters("tower needs j, d >= 1".into()));
    }
    let mut g = Multigraph::complete(d + 1);
    let mut colouring = vec![1; g.edge_count()];
    for level in 2..=j {
        let n = g.n();
        let mut edges = g.edges().to_vec();
        edges.extend(g.edges().iter().map(|&(u, v)| (u + n, v + n)));
        let mut next = colouring.clone();
        next.extend_from_slice(&colouring);
        for i in 0..n {
            for t in 0..d {
                edges.push((i, n + (i + t) % n));
                next.push(level);
            }
        }
        g = Multigraph::new(2 * n, &edges)?;
        colouring = next;
    }
    Ok((g, colouring))
}

/// One welded copy of the subdivided tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetCopy {
    pub host: usize,
    /// The colour this copy forces on its two edges at the host.
    pub colour: usize,
    /// First vertex of the copy; tower vertex x sits at `offset + x`.
    pub offset: usize,
    /// Edge index of tower edge 1; tower edge t ≥ 1 sits at `first_edge + t − 1`, then
    /// the edges a–host and b–host.
    pub first_edge: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectiveGadget {
    pub graph: Multigraph,
    pub k: usize,
    pub d: usize,
    /// Edges 0..base_edges are those of the input graph, in order.
    pub base_edges: usize,
    pub copies: Vec<GadgetCopy>,
    #[serde(skip)]
    tower: Multigraph,
    #[serde(skip)]
    tower_colouring: EdgeColouring,
}

/// Welds k(d−1)/2 copies of G_{kd,d} with its edge ab subdivided (midpoint = host) onto
/// every vertex of the k-regular simple graph `g`; the result is kd-regular and simple.
pub fn np_gadget_defective(g: &Multigraph, k: usize, d: usize) -> Result<DefectiveGadget> {
    if k < 3 || d < 3 || d.is_multiple_of(2) {
        return Err(Error::BadParameters(format!("need k >= 3 and odd d >= 3, got k={k} d={d}")));
    }
    if !g.is_simple() || g.regular_degree() != Some(k) {
        return Err(Error::BadParameters(format!("input must be a {k}-regular simple graph")));
    }
    let (tower, tower_colouring) = defective_tower(k, d)?;
    let (a, b) = tower.edges()[0];
    let per_host = k * (d - 1) / 2;
    let mut edges = g.edges().to_vec();
    let mut copies = Vec::with_capacity(g.n() * per_host);
    let mut next_vertex = g.n();
    for host in 0..g.n() {
        for i in 0..per_host {
            let offset = next_vertex;
            next_vertex += tower.n();
            copies.push(GadgetCopy {
                host,
                colour: i / ((d - 1) / 2) + 1,
                offset,
                first_edge: edges.len(),
            });
            edges.extend(tower.edges()[1..].iter().map(|&(u, v)| (u + offset, v + offset)));
            edges.push((a + offset, host));
            edges.push((b + offset, host));
        }
    }
    let graph = Multigraph::new(next_vertex, &edges)?;
    Ok(DefectiveGadget {
        graph,
        k,
        d,
        base_edges: g.edge_count(),
        copies,
        tower,
        tower_colouring,
    })
}

impl DefectiveGadget {
    pub fn tower(&self) -> &Multigraph {
        &self.tower
    }

    /// Extends a proper k-edge-colouring of the input graph to a (k, d)-colouring of the
    /// gadget graph: each copy uses the tower colouring with colours 1 and `colour` swapped.
    pub fn extend(&self, proper: &[usize]) -> Result<EdgeColouring> {
        if proper.len() != self.base_edges || proper.iter().any(|&c| c == 0 || c > self.k) {
            return Err(Error::PartialColouring(format!(
                "need colours 1..={} on all {} input edges",
                self.k, self.base_edges
            )));
        }
        let base = Multigraph::new(self.graph.n(), &self.graph.edges()[..self.base_edges])?;
        if !verify_edge_colouring(&base, proper, 1)?.is_valid() {
            return Err(Error::BadParameters("input colouring is not proper".into()));
        }
        let mut out = vec![0; self.graph.edge_count()];
        out[..self.base_edges].copy_from_slice(proper);
        let ab = self.tower_colouring[0];
        for copy in &self.copies {
            let swap = |c: usize| {
                if c == ab {
                    copy.colour
                } else if c == copy.colour {
                    ab
                } else {
                    c
                }
            };
            for (t, &c) in self.tower_colouring.iter().enumerate().skip(1) {
                out[copy.first_edge + t - 1] = swap(c);
            }
            let tail = copy.first_edge + self.tower.edge_count() - 1;
            out[tail] = copy.colour;
            out[tail + 1] = copy.colour;
        }
        if !verify_edge_colouring(&self.graph, &out, self.d)?.is_valid() {
            return Err(Error::PreconditionViolated("extension failed verification".into()));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defective::{exact_defective_index, find_defective_colouring};

    #[test]
    fn tower_shapes() {
        let (g, c) = defective_tower(1, 3).unwrap();
        assert_eq!(g, Multigraph::complete(4));
        assert_eq!(c, vec![1; 6]);
        for (j, d) in [(2, 3), (3, 3), (3, 5)] {
            let (g, c) = defective_tower(j, d).unwrap();
            assert!(g.is_simple());
            assert_eq!(g.regular_degree(), Some(j * d));
            assert_eq!(g.n(), (d + 1) << (j - 1));
            assert!(verify_edge_colouring(&g, &c, d).unwrap().is_valid());
            assert_eq!(c.iter().max(), Some(&j));
        }
    }

    #[test]
    fn k4_gadget() {
        let k4 = Multigraph::complete(4);
        let gadget = np_gadget_defective(&k4, 3, 3).unwrap();
        assert_eq!(gadget.graph.n(), 196);
        assert_eq!(gadget.graph.regular_degree(), Some(9));
        assert!(gadget.graph.is_simple());
        let proper = exact_defective_index(&k4, 1, 1 << 20).unwrap();
        assert_eq!(proper.index, 3);
        let ext = gadget.extend(&proper.colouring).unwrap();
        assert!(verify_edge_colouring(&gadget.graph, &ext, 3).unwrap().is_valid());
        assert_eq!(ext.iter().max(), Some(&3));
        assert!(gadget.extend(&[1, 1, 2, 2, 3, 3]).is_err());
        assert!(np_gadget_defective(&k4, 3, 2).is_err());
        assert!(np_gadget_defective(&Multigraph::complete(5), 3, 3).is_err());
    }

    /// G_{6,3} with one edge subdivided by a new vertex v: in every (2,3)-colouring the
    /// two halves av and bv receive the same colour.
    #[test]
    fn subdivided_small_tower_forces_equal_ends() {
        let (tower, _) = defective_tower(2, 3).unwrap();
        let (a, b) = tower.edges()[0];
        let v = tower.n();
        let mut edges = tower.edges()[1..].to_vec();
        edges.push((a, v));
        edges.push((b, v));
        let h = Multigraph::new(v + 1, &edges).unwrap();
        let (av, bv) = (edges.len() - 2, edges.len() - 1);
        let unequal = find_defective_colouring(&h, 3, 2, &[(av, 1), (bv, 2)], 1 << 26).unwrap();
        assert_eq!(unequal, None);
        let equal = find_defective_colouring(&h, 3, 2, &[(av, 1), (bv, 1)], 1 << 26).unwrap();
        assert!(equal.is_some());
    }
}

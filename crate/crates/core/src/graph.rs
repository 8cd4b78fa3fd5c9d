//! Weighted undirected graphs, their adjacency and Laplacian Hamiltonians,
//! and the named graph families used throughout the experiments.
//!
//! Vertices are labelled `1..=n` in every public interface and in the
//! edge-list file format; storage is zero-based.

use serde::Serialize;

use crate::spectral::RealSymmetricMatrix;
use crate::{Error, Result};

/// One undirected edge in canonical form (`j < k`, zero-based internally).
#[derive(Debug, Clone, Copy, PartialEq)]
struct Edge {
    j: usize,
    k: usize,
    weight: f64,
}

/// Weighted undirected graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    /// Build from 1-based `(j, k, weight)` triples. Edges are canonicalized
    /// to `j < k`; self-loops, duplicates and zero weights are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooSmall {
                what: "graph",
                minimum: 1,
                found: 0,
            });
        }
        let mut canonical: Vec<Edge> = Vec::new();
        for (j, k, weight) in edges {
            for v in [j, k] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if j == k {
                return Err(Error::SelfLoop { vertex: j });
            }
            if weight == 0.0 || !weight.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "edge weight",
                    requirement: "finite and nonzero",
                    value: weight,
                });
            }
            let (a, b) = if j < k { (j, k) } else { (k, j) };
            canonical.push(Edge {
                j: a - 1,
                k: b - 1,
                weight,
            });
        }
        canonical.sort_by(|a, b| (a.j, a.k).cmp(&(b.j, b.k)));
        for pair in canonical.windows(2) {
            if pair[0].j == pair[1].j && pair[0].k == pair[1].k {
                return Err(Error::DuplicateEdge {
                    j: pair[0].j + 1,
                    k: pair[0].k + 1,
                });
            }
        }
        Ok(Self {
            n,
            edges: canonical,
        })
    }

    /// Unweighted path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooSmall {
                what: "path",
                minimum: 1,
                found: 0,
            });
        }
        Self::new(n, (1..n).map(|j| (j, j + 1, 1.0)))
    }

    /// Path with couplings `w(j, j+1) = sqrt(j (n - j))`, which transfers
    /// between its endpoints with fidelity `sin(t)^(2(n-1))`.
    pub fn krawtchouk_chain(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooSmall {
                what: "krawtchouk chain",
                minimum: 2,
                found: n,
            });
        }
        Self::new(
            n,
            (1..n).map(|j| (j, j + 1, ((j * (n - j)) as f64).sqrt())),
        )
    }

    /// Complete unweighted graph on `n` vertices with the edge `(1, 2)`
    /// removed.
    pub fn complete_minus_edge(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooSmall {
                what: "complete graph minus an edge",
                minimum: 3,
                found: n,
            });
        }
        let edges = (1..n)
            .flat_map(|j| ((j + 1)..=n).map(move |k| (j, k, 1.0)))
            .filter(|&(j, k, _)| !(j == 1 && k == 2));
        Self::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edges as 1-based `(j, k, weight)` triples, sorted by
    /// `(j, k)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges.iter().map(|e| (e.j + 1, e.k + 1, e.weight))
    }

    /// Canonical edges as zero-based index pairs, for matrix-support use.
    pub fn edge_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|e| (e.j, e.k))
    }

    pub fn has_negative_weight(&self) -> bool {
        self.edges.iter().any(|e| e.weight < 0.0)
    }

    /// Union-find connectivity check. The transfer theorems assume a
    /// connected graph, but a disconnected one is only reported as a
    /// warning by callers, never rejected here.
    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.j), find(&mut parent, e.k));
            if a != b {
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        (1..self.n).all(|v| find(&mut parent, v) == root)
    }

    /// Adjacency matrix: zero diagonal, entry `(j, k)` equal to the edge
    /// weight for adjacent vertices and zero otherwise.
    pub fn adjacency(&self) -> RealSymmetricMatrix {
        let mut m = RealSymmetricMatrix::zeros(self.n);
        for e in &self.edges {
            m.set_symmetric(e.j, e.k, e.weight);
        }
        m
    }

    /// Laplacian `L = R - A` with `R` the diagonal of row sums of the
    /// adjacency matrix. Each diagonal entry is the sum of the incident
    /// weights taken in ascending neighbour order, so a row summed in the
    /// same order cancels exactly.
    pub fn laplacian(&self) -> RealSymmetricMatrix {
        let adjacency = self.adjacency();
        let n = self.n;
        let mut entries = vec![0.0f64; n * n];
        for j in 0..n {
            let mut row_sum = 0.0;
            for k in 0..n {
                let w = adjacency.get(j, k);
                row_sum += w;
                entries[j * n + k] = -w;
            }
            entries[j * n + j] = row_sum;
        }
        RealSymmetricMatrix::new(n, entries).expect("laplacian is symmetric by construction")
    }

    /// Parse the edge-list format: line 1 is the vertex count, each later
    /// non-comment line is `j k w` with 1-based vertices; `#` starts a
    /// comment line.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges: Vec<(usize, usize, f64)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let Some(count) = n else {
                let parsed: usize = content.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("expected vertex count, got {content:?}"),
                })?;
                if parsed == 0 {
                    return Err(Error::Parse {
                        line,
                        message: "vertex count must be at least 1".into(),
                    });
                }
                n = Some(parsed);
                continue;
            };
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.len() != 3 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected \"j k w\", got {} tokens", tokens.len()),
                });
            }
            let j: usize = tokens[0].parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid vertex {:?}", tokens[0]),
            })?;
            let k: usize = tokens[1].parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid vertex {:?}", tokens[1]),
            })?;
            let w: f64 = tokens[2].parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid weight {:?}", tokens[2]),
            })?;
            for v in [j, k] {
                if v == 0 || v > count {
                    return Err(Error::Parse {
                        line,
                        message: format!("vertex {v} out of range 1..={count}"),
                    });
                }
            }
            if j == k {
                return Err(Error::Parse {
                    line,
                    message: format!("self-loop at vertex {j}"),
                });
            }
            if w == 0.0 || !w.is_finite() {
                return Err(Error::Parse {
                    line,
                    message: "edge weight must be finite and nonzero".into(),
                });
            }
            edges.push((j, k, w));
        }
        let n = n.ok_or(Error::Parse {
            line: 1,
            message: "empty input".into(),
        })?;
        Self::new(n, edges)
    }

    /// Inverse of [`parse_edge_list`](Self::parse_edge_list) on canonical
    /// graphs; weights are printed with full round-trip precision.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e.j + 1, e.k + 1, e.weight));
        }
        out
    }
}

/// Which matrix of the graph acts as the Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HamiltonianKind {
    Adjacency,
    Laplacian,
}

impl HamiltonianKind {
    pub fn hamiltonian(self, graph: &WeightedGraph) -> RealSymmetricMatrix {
        match self {
            HamiltonianKind::Adjacency => graph.adjacency(),
            HamiltonianKind::Laplacian => graph.laplacian(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn path2_adjacency() {
        let a = WeightedGraph::path(2).unwrap().adjacency();
        assert_eq!(a.entries(), &[0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn single_vertex_adjacency_is_zero() {
        let a = WeightedGraph::path(1).unwrap().adjacency();
        assert_eq!(a.entries(), &[0.0]);
    }

    #[test]
    fn path2_laplacian() {
        let l = WeightedGraph::path(2).unwrap().laplacian();
        assert_eq!(l.entries(), &[1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn krawtchouk_weights() {
        let g = WeightedGraph::krawtchouk_chain(4).unwrap();
        let weights: Vec<f64> = g.edges().map(|(_, _, w)| w).collect();
        assert_abs_diff_eq!(weights[0], 3.0f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(weights[1], 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(weights[2], 3.0f64.sqrt(), epsilon = 1e-15);

        let g2 = WeightedGraph::krawtchouk_chain(2).unwrap();
        assert_eq!(g2.edges().collect::<Vec<_>>(), vec![(1, 2, 1.0)]);

        let g10 = WeightedGraph::krawtchouk_chain(10).unwrap();
        for (idx, (j, k, w)) in g10.edges().enumerate() {
            assert_eq!((j, k), (idx + 1, idx + 2));
            assert_abs_diff_eq!(w, ((j * (10 - j)) as f64).sqrt(), epsilon = 1e-15);
        }
        assert!(WeightedGraph::krawtchouk_chain(1).is_err());
    }

    #[test]
    fn complete_minus_edge_shape() {
        let g3 = WeightedGraph::complete_minus_edge(3).unwrap();
        assert_eq!(g3.edges().collect::<Vec<_>>(), vec![(1, 3, 1.0), (2, 3, 1.0)]);
        let g4 = WeightedGraph::complete_minus_edge(4).unwrap();
        assert_eq!(g4.edge_count(), 5);
        assert!(WeightedGraph::complete_minus_edge(2).is_err());
    }

    #[test]
    fn laplacian_row_sums_cancel_exactly() {
        let g = WeightedGraph::krawtchouk_chain(7).unwrap();
        let l = g.laplacian();
        let a = g.adjacency();
        for j in 0..g.n() {
            // same ascending summation order as the construction
            let mut sum = 0.0;
            for k in 0..g.n() {
                sum += a.get(j, k);
            }
            assert_eq!(l.get(j, j), sum);
            let row_total: f64 = (0..g.n()).map(|k| l.get(j, k)).sum();
            assert!(row_total.abs() <= 1e-12);
        }
    }

    #[test]
    fn parse_rejects_bad_lines() {
        assert!(matches!(
            WeightedGraph::parse_edge_list("2\n1 2 1.0\n"),
            Ok(g) if g == WeightedGraph::path(2).unwrap()
        ));
        let dup = WeightedGraph::parse_edge_list("3\n1 2 1\n2 1 1\n").unwrap_err();
        assert!(matches!(dup, Error::DuplicateEdge { j: 1, k: 2 }));
        let selfloop = WeightedGraph::parse_edge_list("3\n2 2 1\n").unwrap_err();
        assert!(matches!(selfloop, Error::Parse { line: 2, .. }));
        let range = WeightedGraph::parse_edge_list("3\n1 4 1\n").unwrap_err();
        assert!(matches!(range, Error::Parse { line: 2, .. }));
        let malformed = WeightedGraph::parse_edge_list("3\n1 2\n").unwrap_err();
        assert!(matches!(malformed, Error::Parse { line: 2, .. }));
        let zero_w = WeightedGraph::parse_edge_list("3\n1 2 0\n").unwrap_err();
        assert!(matches!(zero_w, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn parse_accepts_comments_and_krawtchouk_weights() {
        let g =
            WeightedGraph::parse_edge_list("# a chain\n4\n1 2 1.7320508\n2 3 2\n3 4 1.7320508\n")
                .unwrap();
        let reference = WeightedGraph::krawtchouk_chain(4).unwrap();
        for ((_, _, w), (_, _, expect)) in g.edges().zip(reference.edges()) {
            assert_abs_diff_eq!(w, expect, epsilon = 1e-6);
        }
    }

    #[test]
    fn edge_list_round_trips() {
        let g = WeightedGraph::new(5, [(3, 1, 0.25), (2, 4, -1.5), (4, 5, 2.0)]).unwrap();
        let again = WeightedGraph::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn connectivity_and_negative_weights() {
        let disconnected = WeightedGraph::new(4, [(1, 2, 1.0), (3, 4, 1.0)]).unwrap();
        assert!(!disconnected.is_connected());
        assert!(WeightedGraph::path(6).unwrap().is_connected());
        assert!(WeightedGraph::new(2, [(1, 2, -1.0)])
            .unwrap()
            .has_negative_weight());
    }
}

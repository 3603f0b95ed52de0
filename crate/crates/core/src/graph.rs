//! Simple undirected labeled graphs and the named families used throughout the crate.
//!
//! Vertices are `0..n` inside the library. The JSON and CLI boundary uses the
//! 1-based labels `1..=n`; see [`GraphJson`] and [`Graph::from_one_based`].

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unordered vertex pair `(i, j)` with `i < j`, 0-based.
pub type Edge = (usize, usize);

/// Simple undirected graph on `n` vertices with a lexicographically sorted edge list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph from 0-based pairs. Pairs are normalized to `i < j` and sorted.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("vertex count must be positive".into()));
        }
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", a + 1)));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{}, {}}} has an endpoint outside 1..={n}",
                    a + 1,
                    b + 1
                )));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge {{{}, {}}}",
                w[0].0 + 1,
                w[0].1 + 1
            )));
        }
        Ok(Self { n, edges })
    }

    /// Builds a graph from 1-based pairs as written in the JSON interface.
    pub fn from_one_based(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut zero = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a == 0 || b == 0 {
                return Err(Error::InvalidGraph("vertex labels are 1-based".into()));
            }
            zero.push((a - 1, b - 1));
        }
        Self::new(n, &zero)
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, &[])
    }

    pub fn complete(n: usize) -> Result<Self> {
        let pairs: Vec<Edge> = all_pairs(n).collect();
        Self::new(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_index(a, b).is_some()
    }

    /// Position of `{a, b}` in the sorted edge list.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Graph on the same vertices whose edges are exactly the non-edges of `self`.
    pub fn complement(&self) -> Graph {
        let edges = all_pairs(self.n)
            .filter(|&(a, b)| !self.has_edge(a, b))
            .collect();
        Graph { n: self.n, edges }
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_order(0).len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// True when both graphs share the vertex set and every edge of `self` is in `other`.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges.iter().all(|&(a, b)| other.has_edge(a, b))
    }

    /// Lexicographic breadth-first spanning tree rooted at vertex 0.
    pub fn spanning_tree(&self) -> Result<Graph> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut tree = Vec::with_capacity(self.n.saturating_sub(1));
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    tree.push((u, v));
                    queue.push_back(v);
                }
            }
        }
        if tree.len() + 1 != self.n {
            return Err(Error::Disconnected);
        }
        Graph::new(self.n, &tree)
    }

    /// Oriented vertex-edge incidence matrix: the column of `{i, j}` has `+1` at `i`, `-1` at `j`.
    pub fn incidence_matrix(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.edges.len());
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            m[(a, k)] = 1.0;
            m[(b, k)] = -1.0;
        }
        m
    }

    /// Vertices of degree one.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Removes vertex `v` and relabels the remaining vertices in order.
    pub fn remove_vertex(&self, v: usize) -> Result<Graph> {
        if self.n < 2 || v >= self.n {
            return Err(Error::InvalidGraph(format!(
                "cannot remove vertex {}",
                v + 1
            )));
        }
        let relabel = |u: usize| if u > v { u - 1 } else { u };
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (relabel(a), relabel(b)))
            .collect();
        Graph::new(self.n - 1, &edges)
    }

    fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut order = vec![root];
        seen[root] = true;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
        order
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} E={{", self.n)?;
        for (k, (a, b)) in self.edges.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{{},{}}}", a + 1, b + 1)?;
        }
        write!(f, "}}")
    }
}

/// All pairs `(i, j)`, `i < j < n`, in lexicographic order.
pub fn all_pairs(n: usize) -> impl Iterator<Item = Edge> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Graph families with a canonical labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    /// `K_{1,n-1}` centered at vertex 1.
    Star,
    Cycle,
    Complete,
    /// `K_n` minus the edge `{1, n}`.
    CompleteMinusEdge,
    /// Triangle `{2,3,4}` with pendant vertex 1 attached at 2.
    Paw,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Star => "star",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::CompleteMinusEdge => "complete_minus_edge",
            Family::Paw => "paw",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "path" => Ok(Family::Path),
            "star" => Ok(Family::Star),
            "cycle" => Ok(Family::Cycle),
            "complete" => Ok(Family::Complete),
            "complete_minus_edge" | "kne" => Ok(Family::CompleteMinusEdge),
            "paw" => Ok(Family::Paw),
            other => Err(Error::Parse(format!("unknown family '{other}'"))),
        }
    }
}

/// The canonical member of `family` on `n` vertices.
pub fn named_family(family: Family, n: usize) -> Result<Graph> {
    let unsupported = || Error::UnsupportedFamily {
        name: family.name().to_string(),
        n,
    };
    match family {
        Family::Path => {
            let pairs: Vec<Edge> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::new(n, &pairs)
        }
        Family::Star => {
            if n < 2 {
                return Err(unsupported());
            }
            let pairs: Vec<Edge> = (1..n).map(|i| (0, i)).collect();
            Graph::new(n, &pairs)
        }
        Family::Cycle => {
            if n < 3 {
                return Err(unsupported());
            }
            let mut pairs: Vec<Edge> = (1..n).map(|i| (i - 1, i)).collect();
            pairs.push((0, n - 1));
            Graph::new(n, &pairs)
        }
        Family::Complete => Graph::complete(n),
        Family::CompleteMinusEdge => {
            if n < 3 {
                return Err(unsupported());
            }
            let pairs: Vec<Edge> = all_pairs(n).filter(|&e| e != (0, n - 1)).collect();
            Graph::new(n, &pairs)
        }
        Family::Paw => {
            if n != 4 {
                return Err(unsupported());
            }
            Graph::new(4, &[(0, 1), (1, 2), (1, 3), (2, 3)])
        }
    }
}

/// Graph JSON: `{"n": 4, "edges": [[1,2],[2,3],[3,4]]}` with 1-based labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        let pairs: Vec<Edge> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_one_based(j.n, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1(n: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::from_one_based(n, pairs).unwrap()
    }

    #[test]
    fn canonicalizes_pairs() {
        let g = g1(4, &[(2, 1)]);
        assert_eq!(g.edges(), &[(0, 1)]);
        let single = g1(1, &[]);
        assert!(single.is_connected());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(g1_err(3, &[(1, 1)]), Error::InvalidGraph(_)));
        assert!(matches!(g1_err(3, &[(1, 4)]), Error::InvalidGraph(_)));
        assert!(matches!(
            g1_err(3, &[(1, 2), (2, 1)]),
            Error::InvalidGraph(_)
        ));
    }

    fn g1_err(n: usize, pairs: &[(usize, usize)]) -> Error {
        Graph::from_one_based(n, pairs).unwrap_err()
    }

    #[test]
    fn families() {
        let star = named_family(Family::Star, 4).unwrap();
        assert_eq!(star.edges(), &[(0, 1), (0, 2), (0, 3)]);
        let kne = named_family(Family::CompleteMinusEdge, 4).unwrap();
        assert!(!kne.has_edge(0, 3));
        assert_eq!(kne.edge_count(), 5);
        let c3 = named_family(Family::Cycle, 3).unwrap();
        assert_eq!(c3, Graph::complete(3).unwrap());
        let paw = named_family(Family::Paw, 4).unwrap();
        assert_eq!(paw.edges(), &[(0, 1), (1, 2), (1, 3), (2, 3)]);
        assert!(named_family(Family::Paw, 5).is_err());
        assert!(named_family(Family::Cycle, 2).is_err());
    }

    #[test]
    fn complement_of_p4() {
        let p4 = named_family(Family::Path, 4).unwrap();
        assert_eq!(p4.complement().edges(), &[(0, 2), (0, 3), (1, 3)]);
        assert_eq!(Graph::complete(4).unwrap().complement().edge_count(), 0);
        let paw = named_family(Family::Paw, 4).unwrap();
        assert_eq!(paw.complement().complement(), paw);
    }

    #[test]
    fn connectivity() {
        assert!(named_family(Family::Path, 4).unwrap().is_connected());
        assert!(!g1(4, &[(1, 2)]).is_connected());
        assert!(named_family(Family::CompleteMinusEdge, 4)
            .unwrap()
            .is_connected());
    }

    #[test]
    fn bfs_spanning_trees() {
        let c4 = named_family(Family::Cycle, 4).unwrap();
        assert_eq!(
            c4.spanning_tree().unwrap(),
            g1(4, &[(1, 2), (2, 3), (1, 4)])
        );
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(
            k4.spanning_tree().unwrap(),
            named_family(Family::Star, 4).unwrap()
        );
        let p5 = named_family(Family::Path, 5).unwrap();
        assert_eq!(p5.spanning_tree().unwrap(), p5);
        assert!(matches!(
            g1(3, &[(1, 2)]).spanning_tree(),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn incidence_gives_laplacian() {
        let p2 = named_family(Family::Path, 2).unwrap();
        let n = p2.incidence_matrix();
        assert_eq!(n.as_slice(), &[1.0, -1.0]);
        let k3 = Graph::complete(3).unwrap();
        let n = k3.incidence_matrix();
        let l = &n * n.transpose();
        let expected = DMatrix::from_fn(3, 3, |i, j| if i == j { 2.0 } else { -1.0 });
        assert_eq!(l, expected);
    }

    #[test]
    fn remove_vertex_relabels() {
        let p4 = named_family(Family::Path, 4).unwrap();
        assert_eq!(
            p4.remove_vertex(3).unwrap(),
            named_family(Family::Path, 3).unwrap()
        );
        let star = named_family(Family::Star, 4).unwrap();
        assert_eq!(
            star.remove_vertex(1).unwrap(),
            named_family(Family::Star, 3).unwrap()
        );
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"n": 4, "edges": [[1,2],[2,3],[3,4]]}"#;
        let j: GraphJson = serde_json::from_str(text).unwrap();
        let g = Graph::try_from(j.clone()).unwrap();
        assert_eq!(g, named_family(Family::Path, 4).unwrap());
        assert_eq!(GraphJson::from(&g), j);
    }
}

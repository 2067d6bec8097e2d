//! Diameter graphs: vertices are points, edges join pairs at squared
//! distance at least a threshold (the ground-set diameter in the usual case).

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::GraphError;
use crate::lattice::{self, Signature, TritVector};

#[derive(Clone, Debug)]
pub struct DiameterGraph {
    vertices: Vec<TritVector>,
    adjacency: Vec<VertexSet>,
    threshold_sq: u32,
    index: HashMap<TritVector, usize>,
}

impl DiameterGraph {
    /// Joins every pair at squared distance `>= threshold_sq`.
    pub fn build(points: &[TritVector], threshold_sq: u32) -> Result<Self, GraphError> {
        if points.is_empty() {
            return Err(GraphError::NoVertices);
        }
        if threshold_sq == 0 {
            return Err(GraphError::ZeroThreshold);
        }
        let n = points.len();
        let mut adjacency = vec![VertexSet::new(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if lattice::squared_distance(&points[i], &points[j])? >= threshold_sq {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        let index = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        Ok(DiameterGraph { vertices: points.to_vec(), adjacency, threshold_sq, index })
    }

    /// The diameter graph of `points` itself.
    pub fn of_points(points: &[TritVector]) -> Result<Self, GraphError> {
        let d = lattice::diameter_sq(points)?;
        DiameterGraph::build(points, d)
    }

    /// The diameter graph of all of `L(sig)`.
    pub fn of_lattice(sig: Signature) -> Result<Self, GraphError> {
        let points = lattice::generate(sig)?;
        if points.len() < 2 {
            return Err(GraphError::Lattice(crate::error::LatticeError::TooFewPoints(points.len())));
        }
        DiameterGraph::of_points(&points)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn threshold_sq(&self) -> u32 {
        self.threshold_sq
    }

    pub fn vertices(&self) -> &[TritVector] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &TritVector {
        &self.vertices[i]
    }

    pub fn index_of(&self, x: &TritVector) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Indices of `points`; `None` if any point is not a vertex.
    pub fn indices_of<'a>(&self, points: impl IntoIterator<Item = &'a TritVector>) -> Option<Vec<usize>> {
        points.into_iter().map(|p| self.index_of(p)).collect()
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    pub(crate) fn adjacency(&self) -> &[VertexSet] {
        &self.adjacency
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Common signature of all vertices, if there is one.
    pub fn signature(&self) -> Option<Signature> {
        let first = self.vertices.first()?.signature();
        self.vertices.iter().all(|v| v.signature() == first).then_some(first)
    }

    /// Subgraph on `vertices` (renumbered in ascending order of the original
    /// index), keeping the threshold.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<DiameterGraph, GraphError> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&v| v >= self.len()) {
            return Err(GraphError::IndexOutOfRange { index: bad, len: self.len() });
        }
        let mut position = vec![usize::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            position[old] = new;
        }
        let n = keep.len();
        let adjacency = keep
            .iter()
            .map(|&old| {
                VertexSet::from_indices(
                    n,
                    self.adjacency[old].iter().filter_map(|w| (position[w] != usize::MAX).then(|| position[w])),
                )
            })
            .collect();
        let points: Vec<TritVector> = keep.iter().map(|&i| self.vertices[i]).collect();
        let index = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        Ok(DiameterGraph { vertices: points, adjacency, threshold_sq: self.threshold_sq, index })
    }

    /// Subgraph on the given points; every point must be a vertex.
    pub fn induced_by_points(&self, points: &[TritVector]) -> Result<DiameterGraph, GraphError> {
        let idx = points
            .iter()
            .map(|p| {
                self.index_of(p)
                    .ok_or_else(|| GraphError::Format(format!("{p} is not a vertex of the graph")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.induced_subgraph(&idx)
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.adjacency[v].is_empty()).collect()
    }

    /// Checks that `left` and `right` are disjoint and each independent, and
    /// returns the crossing edges.
    pub fn bipartite_view(&self, left: &[usize], right: &[usize]) -> Result<BipartiteView, GraphError> {
        for &v in left.iter().chain(right) {
            if v >= self.len() {
                return Err(GraphError::IndexOutOfRange { index: v, len: self.len() });
            }
        }
        let left_set = VertexSet::from_indices(self.len(), left.iter().copied());
        let right_set = VertexSet::from_indices(self.len(), right.iter().copied());
        if let Some(v) = left.iter().find(|&&v| right_set.contains(v)) {
            return Err(GraphError::Overlap(*v));
        }
        for side in [&left_set, &right_set] {
            for u in side.iter() {
                if let Some(w) = self.adjacency[u].iter().find(|&w| w > u && side.contains(w)) {
                    return Err(GraphError::InternalEdge(u, w));
                }
            }
        }
        let mut left: Vec<usize> = left_set.to_vec();
        let right: Vec<usize> = right_set.to_vec();
        left.dedup();
        let edges = left
            .iter()
            .flat_map(|&u| {
                self.adjacency[u].iter().filter(|&w| right_set.contains(w)).map(move |w| (u, w))
            })
            .collect();
        Ok(BipartiteView { left, right, edges })
    }

    /// A proper 2-colouring `(side0, side1)` if the graph is bipartite.
    pub fn two_coloring(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut color = vec![u8::MAX; self.len()];
        for start in 0..self.len() {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for w in self.adjacency[u].iter() {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        stack.push(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        let side0 = (0..self.len()).filter(|&v| color[v] == 0).collect();
        let side1 = (0..self.len()).filter(|&v| color[v] == 1).collect();
        Some((side0, side1))
    }

    /// JSON header line followed by one `u v` line per edge.
    pub fn export(&self) -> String {
        let header = GraphHeader {
            signature: self.signature(),
            threshold_sq: self.threshold_sq,
            vertices: self.vertices.clone(),
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses [`DiameterGraph::export`] output, rejecting edge lists that do
    /// not match the distances implied by the header.
    pub fn import(text: &str) -> Result<DiameterGraph, GraphError> {
        let mut lines = text.lines();
        let header_line = lines.next().ok_or_else(|| GraphError::Format("missing header".into()))?;
        let header: GraphHeader =
            serde_json::from_str(header_line).map_err(|e| GraphError::Format(e.to_string()))?;
        let graph = DiameterGraph::build(&header.vertices, header.threshold_sq)?;
        let mut listed = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let mut parts = line.split_whitespace().map(str::parse::<usize>);
            match (parts.next(), parts.next(), parts.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => listed.push((u.min(v), u.max(v))),
                _ => return Err(GraphError::Format(format!("bad edge line {line:?}"))),
            }
        }
        listed.sort_unstable();
        let expected: Vec<_> = graph.edges().collect();
        if listed != expected {
            return Err(GraphError::Format("edge list disagrees with vertex distances".into()));
        }
        Ok(graph)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphHeader {
    signature: Option<Signature>,
    threshold_sq: u32,
    vertices: Vec<TritVector>,
}

/// A bipartition of some vertices of a graph with the crossing edges.
/// Indices refer to the parent graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteView {
    left: Vec<usize>,
    right: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl BipartiteView {
    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// Crossing edges as `(left, right)` pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn has_edge(&self, left: usize, right: usize) -> bool {
        self.edges.binary_search(&(left, right)).is_ok()
    }
}

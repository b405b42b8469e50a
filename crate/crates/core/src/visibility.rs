//! The queen visibility graph.
//!
//! Vertices are queens. Two queens are joined when they share a line and no
//! other queen stands strictly between them, so a line holding `p` queens
//! contributes a path of `p - 1` edges rather than a clique.

use std::collections::BTreeSet;
use std::fmt;

use crate::board::{line_squares, LineId, Placement, Square};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineTally {
    pub line: LineId,
    pub queens: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub line: LineId,
}

#[derive(Debug, Clone)]
pub struct VisibilityGraph {
    queens: Vec<Square>,
    edges: Vec<Edge>,
    line_tallies: Vec<LineTally>,
    component_id: Vec<usize>,
    component_count: usize,
}

impl VisibilityGraph {
    pub fn queens(&self) -> &[Square] {
        &self.queens
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// One entry per queen-bearing line.
    pub fn line_tallies(&self) -> &[LineTally] {
        &self.line_tallies
    }

    pub fn component_id(&self) -> &[usize] {
        &self.component_id
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.a == v || e.b == v).count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.a == v {
                    Some(e.b)
                } else if e.b == v {
                    Some(e.a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Edges as `x1,y1-x2,y2`, one per line.
    pub fn edge_list(&self) -> Vec<String> {
        self.edges
            .iter()
            .map(|e| format!("{}-{}", self.queens[e.a], self.queens[e.b]))
            .collect()
    }
}

impl fmt::Display for VisibilityGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in self.edge_list() {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

pub fn build_visibility(placement: &Placement) -> VisibilityGraph {
    let geometry = placement.geometry();
    let queens = placement.queens();
    // queen square index -> vertex id
    let mut vertex = vec![usize::MAX; geometry.square_count()];
    for (v, q) in queens.iter().enumerate() {
        vertex[geometry.index_of(*q)] = v;
    }

    let mut edges = Vec::new();
    let mut line_tallies = Vec::new();
    let mut seen = BTreeSet::new();
    for line in geometry.lines() {
        let on_line: Vec<usize> = line_squares(line, geometry)
            .expect("board lines are in range")
            .into_iter()
            .filter(|&sq| placement.contains(sq))
            .map(|sq| vertex[geometry.index_of(sq)])
            .collect();
        if on_line.is_empty() {
            continue;
        }
        for w in on_line.windows(2) {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            // two squares share at most one line
            assert!(seen.insert((a, b)), "queens {a} and {b} joined twice");
            edges.push(Edge { a, b, line });
        }
        line_tallies.push(LineTally {
            line,
            queens: on_line.len(),
            edges: on_line.len() - 1,
        });
    }

    let (component_id, component_count) = label_components(queens.len(), &edges);
    VisibilityGraph {
        queens,
        edges,
        line_tallies,
        component_id,
        component_count,
    }
}

/// Minimum-label propagation, then relabel densely in order of first appearance.
fn label_components(vertices: usize, edges: &[Edge]) -> (Vec<usize>, usize) {
    let mut label: Vec<usize> = (0..vertices).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for e in edges {
            let m = label[e.a].min(label[e.b]);
            if label[e.a] != m || label[e.b] != m {
                label[e.a] = m;
                label[e.b] = m;
                changed = true;
            }
        }
    }
    let mut dense = vec![usize::MAX; vertices];
    let mut count = 0;
    let ids = label
        .iter()
        .map(|&l| {
            if dense[l] == usize::MAX {
                dense[l] = count;
                count += 1;
            }
            dense[l]
        })
        .collect();
    (ids, count)
}

pub fn component_count(graph: &VisibilityGraph) -> Result<usize> {
    if graph.queens.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok(graph.component_count)
}

pub fn is_connected(graph: &VisibilityGraph) -> Result<bool> {
    Ok(component_count(graph)? == 1)
}

/// Every queen is seen by at least one other queen.
pub fn every_queen_sees_another(graph: &VisibilityGraph) -> Result<bool> {
    if graph.queens.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut degree = vec![0usize; graph.queens.len()];
    for e in &graph.edges {
        degree[e.a] += 1;
        degree[e.b] += 1;
    }
    Ok(degree.iter().all(|&d| d > 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, q: &[(usize, usize)]) -> VisibilityGraph {
        build_visibility(&Placement::of(n, q).unwrap())
    }

    #[test]
    fn row_of_three_is_a_path() {
        let g = graph(3, &[(1, 1), (2, 1), (3, 1)]);
        assert_eq!(g.edge_list(), vec!["1,1-2,1", "2,1-3,1"]);
        assert_eq!(component_count(&g).unwrap(), 1);
    }

    #[test]
    fn blocked_diagonal_has_no_long_edge() {
        let g = graph(3, &[(1, 1), (2, 2), (3, 3)]);
        assert_eq!(g.edge_list(), vec!["1,1-2,2", "2,2-3,3"]);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn single_queen() {
        let g = graph(3, &[(1, 1)]);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(component_count(&g).unwrap(), 1);
        assert!(is_connected(&g).unwrap());
        assert!(!every_queen_sees_another(&g).unwrap());
    }

    #[test]
    fn component_counts() {
        assert_eq!(component_count(&graph(3, &[(1, 1), (1, 2)])).unwrap(), 1);
        assert_eq!(component_count(&graph(3, &[(1, 1), (2, 3)])).unwrap(), 2);
        assert_eq!(
            component_count(&graph(3, &[(1, 1), (3, 3), (2, 2)])).unwrap(),
            1
        );
    }

    #[test]
    fn connectivity() {
        assert!(is_connected(&graph(3, &[(2, 2)])).unwrap());
        assert!(!is_connected(&graph(3, &[(1, 1), (2, 3)])).unwrap());
        assert!(is_connected(&graph(3, &[(1, 1), (2, 1), (2, 2)])).unwrap());
    }

    #[test]
    fn sees_another() {
        assert!(every_queen_sees_another(&graph(3, &[(1, 1), (1, 2)])).unwrap());
        assert!(!every_queen_sees_another(&graph(3, &[(2, 2)])).unwrap());
        // (4,2) shares no line with (1,1) or (2,1); (5,4) would share x-y=1 with (2,1)
        assert!(!every_queen_sees_another(&graph(5, &[(1, 1), (2, 1), (4, 2)])).unwrap());
        assert!(every_queen_sees_another(&graph(5, &[(1, 1), (2, 1), (5, 4)])).unwrap());
        // (5,5) shares the main diagonal with (1,1)
        assert!(every_queen_sees_another(&graph(5, &[(1, 1), (2, 1), (5, 5)])).unwrap());
    }

    #[test]
    fn empty_graph_is_an_error() {
        let g = build_visibility(&Placement::of(3, &[]).unwrap());
        assert!(matches!(component_count(&g), Err(Error::EmptyGraph)));
        assert!(is_connected(&g).is_err());
        assert!(every_queen_sees_another(&g).is_err());
    }

    #[test]
    fn tallies_match_edges() {
        let g = graph(5, &[(1, 1), (3, 1), (5, 1), (3, 3), (5, 5)]);
        let row1 = g
            .line_tallies()
            .iter()
            .find(|t| t.line == LineId::row(1))
            .unwrap();
        assert_eq!((row1.queens, row1.edges), (3, 2));
        let total: usize = g.line_tallies().iter().map(|t| t.edges).sum();
        assert_eq!(total, g.edge_count());
        // main diagonal (1,1)-(3,3)-(5,5), row 1, column 3, column 5, anti-diagonal 6 (3,3)-(5,1)
        assert_eq!(g.edge_count(), 2 + 2 + 1 + 1 + 1);
        // (3,3) sees every other queen
        assert_eq!(g.neighbors(3), vec![0, 1, 2, 4]);
    }
}

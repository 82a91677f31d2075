//! Minimal undirected simple graph used by the transversal solvers.

use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    n_edges: usize,
}

impl Graph {
    /// Builds a graph; duplicate pairs are merged and loops dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut n_edges = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            n_edges += list.len();
        }
        Graph {
            adj,
            n_edges: n_edges / 2,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges with the smaller endpoint first, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    /// Two-colors the graph with `removed` vertices deleted. Each component is
    /// rooted at its smallest vertex with side 1 and explored breadth first.
    /// Removed vertices get side 0. On an odd cycle, returns the vertex where
    /// the conflict was detected.
    pub fn two_color(&self, removed: &[bool]) -> Result<Vec<u8>, usize> {
        let n = self.n_vertices();
        let mut side = vec![0u8; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            if removed[root] || side[root] != 0 {
                continue;
            }
            side[root] = 1;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if removed[w] {
                        continue;
                    }
                    if side[w] == 0 {
                        side[w] = 3 - side[v];
                        queue.push_back(w);
                    } else if side[w] == side[v] {
                        return Err(w);
                    }
                }
            }
        }
        Ok(side)
    }

    pub fn is_bipartite_without(&self, removed: &[bool]) -> bool {
        self.two_color(removed).is_ok()
    }

    /// True if no edge joins two vertices of `set`.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        let mut mark = vec![false; self.n_vertices()];
        for &v in set {
            mark[v] = true;
        }
        set.iter().all(|&v| self.adj[v].iter().all(|&w| !mark[w]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_not_bipartite() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0), (1, 0)]);
        assert_eq!(g.n_edges(), 3);
        assert!(!g.is_bipartite_without(&[false; 3]));
        assert!(g.is_bipartite_without(&[false, true, false]));
    }

    #[test]
    fn path_coloring_alternates_from_smallest_vertex() {
        let g = Graph::from_edges(5, [(3, 4), (0, 1), (1, 2)]);
        assert_eq!(g.two_color(&[false; 5]).unwrap(), vec![1, 2, 1, 1, 2]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (3, 4)]);
        assert!(g.is_independent(&[0, 2, 3]));
        assert!(!g.is_independent(&[0, 1]));
    }
}

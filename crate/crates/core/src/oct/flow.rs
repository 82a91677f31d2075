//! Minimum vertex separator between two terminal sets, via unit-capacity
//! augmenting paths on the split graph.
//!
//! Every vertex `v` becomes `in(v) -> out(v)` with capacity 1; graph edges
//! become uncapacitated arcs `out(v) -> in(w)`. Terminals may themselves be
//! deleted, so a vertex in both sets is always cut.

use std::collections::VecDeque;

const INF: i32 = i32::MAX / 4;

pub(crate) struct Separator {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<i32>,
    next: Vec<usize>,
    n_nodes: usize,
    source: usize,
    sink: usize,
}

const NIL: usize = usize::MAX;

impl Separator {
    /// `alive[v]` selects the vertices of the graph the separator lives in.
    pub(crate) fn new(
        n: usize,
        alive: &[bool],
        edges: impl Iterator<Item = (usize, usize)>,
        sources: &[bool],
        sinks: &[bool],
    ) -> Self {
        let n_nodes = 2 * n + 2;
        let mut s = Separator {
            head: vec![NIL; n_nodes],
            to: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
            n_nodes,
            source: 2 * n,
            sink: 2 * n + 1,
        };
        for v in (0..n).filter(|&v| alive[v]) {
            s.arc(2 * v, 2 * v + 1, 1);
            if sources[v] {
                s.arc(s.source, 2 * v, INF);
            }
            if sinks[v] {
                s.arc(2 * v + 1, s.sink, INF);
            }
        }
        for (a, b) in edges {
            if alive[a] && alive[b] {
                s.arc(2 * a + 1, 2 * b, INF);
                s.arc(2 * b + 1, 2 * a, INF);
            }
        }
        s
    }

    fn arc(&mut self, from: usize, to: usize, cap: i32) {
        for (f, t, c) in [(from, to, cap), (to, from, 0)] {
            self.to.push(t);
            self.cap.push(c);
            self.next.push(self.head[f]);
            self.head[f] = self.to.len() - 1;
        }
    }

    /// Breadth-first residual search; returns the parent arc of each node.
    fn search(&self) -> Vec<usize> {
        let mut parent = vec![NIL; self.n_nodes];
        let mut seen = vec![false; self.n_nodes];
        seen[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            let mut e = self.head[u];
            while e != NIL {
                let w = self.to[e];
                if self.cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    parent[w] = e;
                    if w == self.sink {
                        return parent;
                    }
                    queue.push_back(w);
                }
                e = self.next[e];
            }
        }
        parent
    }

    /// Minimum set of alive vertices separating the sources from the sinks,
    /// or `None` if every separator is larger than `budget`.
    pub(crate) fn min_cut(mut self, budget: usize) -> Option<Vec<usize>> {
        let mut flow = 0;
        loop {
            let parent = self.search();
            if parent[self.sink] == NIL {
                break;
            }
            flow += 1;
            if flow > budget {
                return None;
            }
            // Vertex capacities bound every augmenting path to one unit.
            let mut node = self.sink;
            while node != self.source {
                let e = parent[node];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                node = self.to[e ^ 1];
            }
        }
        let parent = self.search();
        let mut reach = vec![false; self.n_nodes];
        reach[self.source] = true;
        for (node, &p) in parent.iter().enumerate() {
            if p != NIL {
                reach[node] = true;
            }
        }
        let n = (self.n_nodes - 2) / 2;
        Some((0..n).filter(|&v| reach[2 * v] && !reach[2 * v + 1]).collect())
    }
}

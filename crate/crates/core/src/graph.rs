use std::collections::BTreeSet;

/// Simple undirected graph over vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Self-loops are ignored.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a].insert(b);
            self.adj[b].insert(a);
        }
    }

    pub fn add_clique(&mut self, vertices: &[usize]) {
        for (i, &a) in vertices.iter().enumerate() {
            for &b in &vertices[i + 1..] {
                self.add_edge(a, b);
            }
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for (a, ns) in self.adj.iter().enumerate() {
            out.extend(ns.range(a + 1..).map(|&b| (a, b)));
        }
        out
    }

    /// Remove `v` after connecting all its neighbours pairwise. Returns the
    /// former neighbourhood.
    pub(crate) fn eliminate(&mut self, v: usize) -> Vec<usize> {
        let ns: Vec<usize> = std::mem::take(&mut self.adj[v]).into_iter().collect();
        for &u in &ns {
            self.adj[u].remove(&v);
        }
        self.add_clique(&ns);
        ns
    }

    /// Number of edges missing among the neighbours of `v`.
    pub(crate) fn fill_in(&self, v: usize) -> usize {
        let ns: Vec<usize> = self.adj[v].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in ns.iter().enumerate() {
            let na = &self.adj[a];
            missing += ns[i + 1..].iter().filter(|b| !na.contains(b)).count();
        }
        missing
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elimination_adds_fill_edges() {
        // star centred on 0
        let mut g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(g.fill_in(0), 3);
        assert_eq!(g.fill_in(1), 0);
        let ns = g.eliminate(0);
        assert_eq!(ns, vec![1, 2, 3]);
        assert_eq!(g.num_edges(), 3);
        assert!(g.has_edge(1, 3));
        assert_eq!(g.degree(0), 0);
    }
}

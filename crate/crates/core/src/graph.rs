//! Simple undirected graphs, forbidden-cycle detection, degeneracy and the
//! odd-order parity fix.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: Vertex, v: Vertex, n: usize },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("no attachment pair avoids a new C4 or C6")]
    NoAugmentationPair,
}

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored normalized (`u < v`) and sorted; every adjacency list is
/// sorted, so `has_edge` is a binary search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: normalized,
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Common neighbours of `a` and `b`, ascending.
    pub fn common_neighbors(&self, a: Vertex, b: Vertex) -> Vec<Vertex> {
        let (x, y) = (&self.adj[a], &self.adj[b]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(x[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Degrees sorted descending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Components as ascending vertex lists, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(x) = stack.pop() {
                comp.push(x);
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.connected_components().len() == 1
    }

    /// Returns a cycle with exactly `len` distinct vertices, if one exists.
    ///
    /// Each cycle is searched from its smallest vertex, so the search only
    /// walks through larger ids.
    pub fn find_cycle(&self, len: usize) -> Option<Vec<Vertex>> {
        if len < 3 {
            return None;
        }
        let mut on_path = vec![false; self.n];
        let mut path = Vec::with_capacity(len);
        for s in 0..self.n {
            path.clear();
            path.push(s);
            on_path[s] = true;
            let found = self.extend_cycle(s, len, &mut path, &mut on_path);
            on_path[s] = false;
            if found {
                debug_assert!(self.is_cycle(&path));
                return Some(path);
            }
        }
        None
    }

    fn extend_cycle(&self, start: Vertex, len: usize, path: &mut Vec<Vertex>, on_path: &mut [bool]) -> bool {
        let last = *path.last().expect("path is never empty");
        if path.len() == len {
            return self.has_edge(last, start);
        }
        for &next in &self.adj[last] {
            if next <= start || on_path[next] {
                continue;
            }
            // the closing vertex must see the start; prune one level early
            if path.len() + 1 == len && !self.has_edge(next, start) {
                continue;
            }
            path.push(next);
            on_path[next] = true;
            if self.extend_cycle(start, len, path, on_path) {
                return true;
            }
            on_path[next] = false;
            path.pop();
        }
        false
    }

    /// True when `cycle` lists distinct vertices joined consecutively (and
    /// last-to-first) by edges of the graph.
    pub fn is_cycle(&self, cycle: &[Vertex]) -> bool {
        let distinct: BTreeSet<_> = cycle.iter().collect();
        cycle.len() >= 3
            && distinct.len() == cycle.len()
            && (0..cycle.len()).all(|i| self.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]))
    }

    /// First forbidden cycle found, trying lengths in the given order.
    pub fn forbidden_cycle(&self, lens: &[usize]) -> Option<Vec<Vertex>> {
        lens.iter().find_map(|&l| self.find_cycle(l))
    }

    pub fn is_free(&self, lens: &[usize]) -> bool {
        self.forbidden_cycle(lens).is_none()
    }

    /// Whether a simple path with exactly `len` edges joins `a` and `b`.
    pub fn has_path_of_length(&self, a: Vertex, b: Vertex, len: usize) -> bool {
        if a == b {
            return len == 0;
        }
        let mut on_path = vec![false; self.n];
        on_path[a] = true;
        self.path_search(a, b, len, &mut on_path)
    }

    fn path_search(&self, at: Vertex, target: Vertex, left: usize, on_path: &mut [bool]) -> bool {
        if left == 1 {
            return self.has_edge(at, target);
        }
        for &next in &self.adj[at] {
            if next == target || on_path[next] {
                continue;
            }
            on_path[next] = true;
            let hit = self.path_search(next, target, left - 1, on_path);
            on_path[next] = false;
            if hit {
                return true;
            }
        }
        false
    }

    /// Vertex order from repeated minimum-degree peeling, reversed, with ties
    /// going to the smallest id.
    pub fn degeneracy_ordering(&self) -> DegeneracyOrder {
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut queue: BTreeSet<(usize, Vertex)> = (0..self.n).map(|v| (deg[v], v)).collect();
        let mut removed = vec![false; self.n];
        let mut peel = Vec::with_capacity(self.n);
        let mut at_removal = vec![0; self.n];
        while let Some((d, v)) = queue.pop_first() {
            removed[v] = true;
            at_removal[v] = d;
            peel.push(v);
            for &w in &self.adj[v] {
                if !removed[w] {
                    queue.remove(&(deg[w], w));
                    deg[w] -= 1;
                    queue.insert((deg[w], w));
                }
            }
        }
        peel.reverse();
        let back_degrees = peel.iter().map(|&v| at_removal[v]).collect();
        DegeneracyOrder {
            order: peel,
            back_degrees,
        }
    }

    /// Makes the order even by attaching one new vertex `n` to the first pair
    /// `(a, b)` (lexicographic) with no `a`-`b` path of length 2 or 4, so no
    /// new C4 or C6 can appear. Even-order graphs are returned unchanged.
    pub fn parity_augment(&self) -> Result<Graph, GraphError> {
        if self.n % 2 == 0 {
            return Ok(self.clone());
        }
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.has_path_of_length(a, b, 2) || self.has_path_of_length(a, b, 4) {
                    continue;
                }
                let x = self.n;
                let mut edges = self.edges.clone();
                edges.push((a, x));
                edges.push((b, x));
                return Graph::new(self.n + 1, &edges);
            }
        }
        Err(GraphError::NoAugmentationPair)
    }

    /// The subgraph induced on `keep`, relabelled to `0..keep.len()` in the
    /// order given.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|(u, v)| index[*u] != usize::MAX && index[*v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        Graph::new(keep.len(), &edges).expect("induced subgraph of a simple graph is simple")
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::new(self.n, &edges).expect("permutation preserves simplicity")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.m())?;
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

/// Degeneracy ordering; `back_degrees[i]` counts neighbours of `order[i]`
/// that come earlier in the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrder {
    pub order: Vec<Vertex>,
    pub back_degrees: Vec<usize>,
}

impl DegeneracyOrder {
    pub fn max_back_degree(&self) -> usize {
        self.back_degrees.iter().copied().max().unwrap_or(0)
    }
}

//! Simple undirected graphs over dense vertex ids `0..n`.

use std::collections::VecDeque;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    UnknownVertex { vertex: Vertex, order: usize },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("vertices {0} and {1} are adjacent")]
    Adjacent(Vertex, Vertex),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(Vertex, Vertex),
    #[error("cannot identify vertex {0} with itself")]
    SameVertex(Vertex),
}

/// A simple undirected graph. Neighbour lists are kept sorted and duplicate free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

/// Old-to-new vertex relabeling produced by graph surgery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    forward: Vec<Option<Vertex>>,
    new_order: usize,
}

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap {
            forward: (0..n).map(Some).collect(),
            new_order: n,
        }
    }

    pub(crate) fn from_forward(forward: Vec<Option<Vertex>>) -> Self {
        let new_order = forward.iter().flatten().map(|&v| v + 1).max().unwrap_or(0);
        VertexMap { forward, new_order }
    }

    /// Image of `old`, or `None` if it was deleted.
    pub fn get(&self, old: Vertex) -> Option<Vertex> {
        self.forward.get(old).copied().flatten()
    }

    pub fn old_order(&self) -> usize {
        self.forward.len()
    }

    pub fn new_order(&self) -> usize {
        self.new_order
    }

    /// Composition: first `self`, then `next`.
    pub fn then(&self, next: &VertexMap) -> VertexMap {
        VertexMap {
            forward: self
                .forward
                .iter()
                .map(|v| v.and_then(|v| next.get(v)))
                .collect(),
            new_order: next.new_order,
        }
    }

    /// For every new vertex, the smallest old vertex mapped onto it.
    pub fn preimages(&self) -> Vec<Vertex> {
        let mut out = vec![usize::MAX; self.new_order];
        for (old, new) in self.forward.iter().enumerate() {
            if let Some(new) = *new {
                out[new] = out[new].min(old);
            }
        }
        out
    }
}

/// Block decomposition: maximal 2-connected pieces, bridges, and isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocks {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl Block {
    /// True when the block is a cycle of the given length.
    pub fn is_cycle(&self, len: usize) -> bool {
        if self.vertices.len() != len || self.edges.len() != len || len < 3 {
            return false;
        }
        let mut deg = std::collections::HashMap::new();
        for &(u, v) in &self.edges {
            *deg.entry(u).or_insert(0) += 1;
            *deg.entry(v).or_insert(0) += 1;
        }
        deg.values().all(|&d| d == 2)
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are dropped, loops rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::UnknownVertex { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    /// Neighbour lists must already be symmetric and loop free; they are sorted here.
    pub(crate) fn from_adjacency(mut adj: Vec<Vec<Vertex>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let g = Graph { adj };
        debug_assert!(g.is_well_formed());
        g
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.adj.len()
    }

    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex {
                vertex: v,
                order: self.order(),
            })
        }
    }

    /// Sorted neighbours of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// Degree of `v`. Panics if `v` is out of range; see [`Graph::try_degree`].
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn try_degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.adj[v].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj
            .get(u)
            .is_some_and(|list| list.binary_search(&v).is_ok())
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).max()
    }

    /// Common neighbours of `u` and `v`, sorted.
    pub fn common_neighbors(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Re-checks simplicity and symmetry by a full scan.
    pub fn is_well_formed(&self) -> bool {
        self.adj.iter().enumerate().all(|(u, list)| {
            list.windows(2).all(|w| w[0] < w[1])
                && list
                    .iter()
                    .all(|&v| v != u && v < self.adj.len() && self.adj[v].binary_search(&u).is_ok())
        })
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.components().len() == 1
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.order();
        let mut side = vec![u8::MAX; n];
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.order();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            let mut queue = VecDeque::from([s]);
            'bfs: while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break 'bfs;
                    }
                }
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Block decomposition (Hopcroft-Tarjan with an explicit stack).
    pub fn blocks(&self) -> Blocks {
        let n = self.order();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut time = 0;
        let mut blocks = Vec::new();
        let mut is_cut = vec![false; n];
        let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            if self.adj[root].is_empty() {
                disc[root] = time;
                time += 1;
                blocks.push(Block {
                    vertices: vec![root],
                    edges: Vec::new(),
                });
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbour index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[u].len() {
                    let v = self.adj[u][*idx];
                    *idx += 1;
                    if disc[v] == usize::MAX {
                        edge_stack.push((u, v));
                        disc[v] = time;
                        low[v] = time;
                        time += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((v, u, 0));
                    } else if v != parent && disc[v] < disc[u] {
                        edge_stack.push((u, v));
                        low[u] = low[u].min(disc[v]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[u]);
                        if low[u] >= disc[p] {
                            if p != root {
                                is_cut[p] = true;
                            }
                            let mut edges = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                edges.push((e.0.min(e.1), e.0.max(e.1)));
                                if e == (p, u) {
                                    break;
                                }
                            }
                            edges.sort_unstable();
                            let mut vertices: Vec<Vertex> =
                                edges.iter().flat_map(|&(a, b)| [a, b]).collect();
                            vertices.sort_unstable();
                            vertices.dedup();
                            blocks.push(Block { vertices, edges });
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        Blocks {
            blocks,
            cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(),
        }
    }

    /// Induced subgraph on the complement of `removed`; survivors keep their relative order.
    pub fn delete_vertices(&self, removed: &[Vertex]) -> Result<(Graph, VertexMap), GraphError> {
        let n = self.order();
        let mut gone = vec![false; n];
        for &v in removed {
            self.check(v)?;
            gone[v] = true;
        }
        let mut forward = vec![None; n];
        let mut next = 0;
        for v in 0..n {
            if !gone[v] {
                forward[v] = Some(next);
                next += 1;
            }
        }
        let adj = (0..n)
            .filter(|&v| !gone[v])
            .map(|v| self.adj[v].iter().filter_map(|&w| forward[w]).collect())
            .collect();
        Ok((Graph { adj }, VertexMap::from_forward(forward)))
    }

    /// Induced subgraph on `keep`.
    pub fn induced(&self, keep: &[Vertex]) -> Result<(Graph, VertexMap), GraphError> {
        let mut inside = vec![false; self.order()];
        for &v in keep {
            self.check(v)?;
            inside[v] = true;
        }
        let removed: Vec<Vertex> = (0..self.order()).filter(|&v| !inside[v]).collect();
        self.delete_vertices(&removed)
    }

    fn merge(&self, keep: Vertex, gone: Vertex) -> (Graph, VertexMap) {
        let n = self.order();
        let mut adj = self.adj.clone();
        let absorbed = std::mem::take(&mut adj[gone]);
        for w in absorbed {
            if w == keep {
                continue;
            }
            adj[keep].push(w);
            for x in adj[w].iter_mut() {
                if *x == gone {
                    *x = keep;
                }
            }
        }
        adj[keep].retain(|&x| x != gone);
        let forward: Vec<Option<Vertex>> = (0..n)
            .map(|v| {
                let v = if v == gone { keep } else { v };
                Some(if v > gone { v - 1 } else { v })
            })
            .collect();
        let adj = adj
            .into_iter()
            .enumerate()
            .filter(|&(v, _)| v != gone)
            .map(|(_, list)| list.into_iter().map(|w| forward[w].unwrap()).collect())
            .collect();
        (Graph::from_adjacency(adj), VertexMap::from_forward(forward))
    }

    /// Identifies two non-adjacent vertices; parallel edges collapse to one.
    /// The merged vertex takes the slot of the smaller id.
    pub fn identify_vertices(&self, u: Vertex, w: Vertex) -> Result<(Graph, VertexMap), GraphError> {
        self.check(u)?;
        self.check(w)?;
        if u == w {
            return Err(GraphError::SameVertex(u));
        }
        if self.has_edge(u, w) {
            return Err(GraphError::Adjacent(u, w));
        }
        Ok(self.merge(u.min(w), u.max(w)))
    }

    /// Contracts the edge `uw`, keeping a single copy of any parallel edges.
    pub fn contract_edge(&self, u: Vertex, w: Vertex) -> Result<(Graph, VertexMap), GraphError> {
        self.check(u)?;
        self.check(w)?;
        if !self.has_edge(u, w) {
            return Err(GraphError::NotAdjacent(u, w));
        }
        Ok(self.merge(u.min(w), u.max(w)))
    }
}

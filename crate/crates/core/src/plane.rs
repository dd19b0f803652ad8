//! Combinatorial embeddings (rotation systems) and their faces.
//!
//! Face traversal convention: the dart `u -> v` is followed by `v -> succ_v(u)`,
//! where `succ_v` is the cyclic successor in the rotation at `v`.

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex, VertexMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("rotation at vertex {0} repeats a neighbour")]
    RepeatedNeighbor(Vertex),
    #[error("rotation is not symmetric: {0} lists {1} but not conversely")]
    Asymmetric(Vertex, Vertex),
    #[error("corners at vertex {0} do not form a single cyclic order")]
    BrokenRotation(Vertex),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("no face around {across} has corners at both {u} and {w}")]
    NoCommonFace { u: Vertex, w: Vertex, across: Vertex },
}

/// A graph together with a cyclic order of neighbours at every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    graph: Graph,
    rotation: Vec<Vec<Vertex>>,
    /// `slot[v][i]` is the position in `rotation[v]` of `graph.neighbors(v)[i]`.
    slot: Vec<Vec<usize>>,
}

pub type FaceId = usize;

/// One facial walk; `walk[i] -> walk[i + 1]` are its darts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub walk: Vec<Vertex>,
}

impl Face {
    /// Number of darts on the walk. An isolated vertex's face has degree 0.
    pub fn degree(&self) -> usize {
        // a single-entry walk can only be the face of an isolated vertex
        if self.walk.len() == 1 {
            0
        } else {
            self.walk.len()
        }
    }

    /// Distinct vertices on the walk, sorted.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v = self.walk.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.walk.contains(&v)
    }
}

/// The face set of an embedding plus the dart-to-face incidence.
#[derive(Debug, Clone)]
pub struct Faces {
    faces: Vec<Face>,
    offsets: Vec<usize>,
    dart_face: Vec<FaceId>,
    point_face: Vec<Option<FaceId>>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn get(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter()
    }

    pub fn degree(&self, id: FaceId) -> usize {
        self.faces[id].degree()
    }

    /// Face containing the dart `u -> v`; `None` if `uv` is not an edge.
    pub fn face_of_dart(&self, plane: &PlaneGraph, u: Vertex, v: Vertex) -> Option<FaceId> {
        let pos = plane.position(u, v)?;
        Some(self.dart_face[self.offsets[u] + pos])
    }

    /// Faces at the corners of `v` in rotation order: the corner between
    /// `rotation[v][i]` and its successor belongs to the face of `rotation[v][i] -> v`.
    pub fn around(&self, plane: &PlaneGraph, v: Vertex) -> Vec<FaceId> {
        if let Some(f) = self.point_face[v] {
            return vec![f];
        }
        plane.rotation[v]
            .iter()
            .map(|&x| self.face_of_dart(plane, x, v).expect("rotation entry is an edge"))
            .collect()
    }
}

impl PlaneGraph {
    /// Builds an embedding from per-vertex cyclic neighbour orders.
    pub fn new(rotation: Vec<Vec<Vertex>>) -> Result<Self, EmbedError> {
        let n = rotation.len();
        for (u, list) in rotation.iter().enumerate() {
            let mut seen = list.clone();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(EmbedError::RepeatedNeighbor(u));
            }
            for &v in list {
                if v >= n {
                    return Err(GraphError::UnknownVertex { vertex: v, order: n }.into());
                }
                if v == u {
                    return Err(GraphError::Loop(u).into());
                }
                if !rotation[v].contains(&u) {
                    return Err(EmbedError::Asymmetric(u, v));
                }
            }
        }
        let graph = Graph::from_edges(
            n,
            rotation
                .iter()
                .enumerate()
                .flat_map(|(u, list)| list.iter().map(move |&v| (u, v))),
        )?;
        Ok(Self::assemble(graph, rotation))
    }

    fn assemble(graph: Graph, rotation: Vec<Vec<Vertex>>) -> Self {
        let slot = (0..graph.order())
            .map(|v| {
                graph
                    .neighbors(v)
                    .iter()
                    .map(|u| rotation[v].iter().position(|x| x == u).unwrap())
                    .collect()
            })
            .collect();
        PlaneGraph {
            graph,
            rotation,
            slot,
        }
    }

    /// Builds the embedding whose faces are the given consistently oriented walks.
    pub fn from_faces(n: usize, faces: &[Vec<Vertex>]) -> Result<Self, EmbedError> {
        let mut succ: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); n];
        for walk in faces {
            let len = walk.len();
            for i in 0..len {
                let (a, v, b) = (walk[(i + len - 1) % len], walk[i], walk[(i + 1) % len]);
                for x in [a, v, b] {
                    if x >= n {
                        return Err(GraphError::UnknownVertex { vertex: x, order: n }.into());
                    }
                }
                succ[v].push((a, b));
            }
        }
        let mut rotation = Vec::with_capacity(n);
        for (v, pairs) in succ.iter_mut().enumerate() {
            pairs.sort_unstable();
            if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(EmbedError::BrokenRotation(v));
            }
            let mut order = Vec::new();
            if let Some(&(start, _)) = pairs.first() {
                let mut cur = start;
                loop {
                    order.push(cur);
                    let next = match pairs.binary_search_by_key(&cur, |p| p.0) {
                        Ok(i) => pairs[i].1,
                        Err(_) => return Err(EmbedError::BrokenRotation(v)),
                    };
                    if next == start {
                        break;
                    }
                    if order.len() > pairs.len() {
                        return Err(EmbedError::BrokenRotation(v));
                    }
                    cur = next;
                }
            }
            if order.len() != pairs.len() {
                return Err(EmbedError::BrokenRotation(v));
            }
            rotation.push(order);
        }
        Self::new(rotation)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.graph.degree(v)
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    /// Index of `u` in the rotation at `v`.
    pub fn position(&self, v: Vertex, u: Vertex) -> Option<usize> {
        let i = self.graph.neighbors(v).binary_search(&u).ok()?;
        Some(self.slot[v][i])
    }

    /// Cyclic successor of `u` around `v`.
    pub fn succ(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        let p = self.position(v, u)?;
        let rot = &self.rotation[v];
        Some(rot[(p + 1) % rot.len()])
    }

    /// Cyclic predecessor of `u` around `v`.
    pub fn pred(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        let p = self.position(v, u)?;
        let rot = &self.rotation[v];
        Some(rot[(p + rot.len() - 1) % rot.len()])
    }

    pub fn faces(&self) -> Faces {
        let n = self.order();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut total = 0;
        for v in 0..n {
            offsets.push(total);
            total += self.rotation[v].len();
        }
        offsets.push(total);
        let mut dart_face = vec![usize::MAX; total];
        let mut point_face = vec![None; n];
        let mut faces = Vec::new();
        for u in 0..n {
            if self.rotation[u].is_empty() {
                point_face[u] = Some(faces.len());
                faces.push(Face { walk: vec![u] });
                continue;
            }
            for i in 0..self.rotation[u].len() {
                if dart_face[offsets[u] + i] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut walk = Vec::new();
                let (mut x, mut pos) = (u, i);
                while dart_face[offsets[x] + pos] == usize::MAX {
                    dart_face[offsets[x] + pos] = id;
                    walk.push(x);
                    let y = self.rotation[x][pos];
                    let back = self.position(y, x).unwrap();
                    pos = (back + 1) % self.rotation[y].len();
                    x = y;
                }
                faces.push(Face { walk });
            }
        }
        Faces {
            faces,
            offsets,
            dart_face,
            point_face,
        }
    }

    /// `|V| - |E| + |F|` for the derived face set.
    pub fn euler_characteristic(&self) -> i64 {
        self.order() as i64 - self.graph.size() as i64 + self.faces().len() as i64
    }

    /// True iff the rotation system is a sphere embedding. Errors on disconnected input.
    pub fn check_euler(&self) -> Result<bool, EmbedError> {
        if !self.graph.is_connected() {
            return Err(EmbedError::Disconnected);
        }
        Ok(self.euler_characteristic() == 2)
    }

    pub fn faces_around(&self, v: Vertex) -> Result<Vec<Face>, EmbedError> {
        if !self.graph.contains(v) {
            return Err(GraphError::UnknownVertex {
                vertex: v,
                order: self.order(),
            }
            .into());
        }
        let faces = self.faces();
        Ok(faces
            .around(self, v)
            .into_iter()
            .map(|f| faces.get(f).clone())
            .collect())
    }

    pub fn delete_vertex(&self, v: Vertex) -> Result<(PlaneGraph, VertexMap), EmbedError> {
        self.delete_vertices(&[v])
    }

    /// Removes vertices; surviving rotations keep their cyclic order.
    pub fn delete_vertices(&self, removed: &[Vertex]) -> Result<(PlaneGraph, VertexMap), EmbedError> {
        let (graph, map) = self.graph.delete_vertices(removed)?;
        let rotation = (0..self.order())
            .filter(|&v| map.get(v).is_some())
            .map(|v| self.rotation[v].iter().filter_map(|&w| map.get(w)).collect())
            .collect();
        Ok((Self::assemble(graph, rotation), map))
    }

    /// Sub-embedding induced on `keep`.
    pub fn induced(&self, keep: &[Vertex]) -> Result<(PlaneGraph, VertexMap), EmbedError> {
        let mut inside = vec![false; self.order()];
        for &v in keep {
            if v >= self.order() {
                return Err(GraphError::UnknownVertex {
                    vertex: v,
                    order: self.order(),
                }
                .into());
            }
            inside[v] = true;
        }
        let removed: Vec<Vertex> = (0..self.order()).filter(|&v| !inside[v]).collect();
        self.delete_vertices(&removed)
    }

    /// Rotation at `v` read cyclically, starting just after `after`, omitting `after`.
    fn rotation_after(&self, v: Vertex, after: Vertex) -> Vec<Vertex> {
        let rot = &self.rotation[v];
        let p = self.position(v, after).expect("neighbour");
        (1..rot.len()).map(|k| rot[(p + k) % rot.len()]).collect()
    }

    /// Rotation at `v` read cyclically from `start` through all neighbours.
    fn rotation_from(&self, v: Vertex, start: Vertex) -> Vec<Vertex> {
        let rot = &self.rotation[v];
        let p = self.position(v, start).expect("neighbour");
        (0..rot.len()).map(|k| rot[(p + k) % rot.len()]).collect()
    }

    /// Merges `gone` into `keep`. The merged rotation is `keep_part ++ gone_part`;
    /// entries of `gone_part` already in `keep_part` are parallel copies and are dropped
    /// on both ends.
    fn merge(&self, keep: Vertex, gone: Vertex, keep_part: Vec<Vertex>, gone_part: Vec<Vertex>) -> (PlaneGraph, VertexMap) {
        let n = self.order();
        let mut rotation = self.rotation.clone();
        let mut merged = keep_part.clone();
        for &x in &gone_part {
            if keep_part.contains(&x) {
                rotation[x].retain(|&y| y != gone);
            } else {
                for y in rotation[x].iter_mut() {
                    if *y == gone {
                        *y = keep;
                    }
                }
                merged.push(x);
            }
        }
        rotation[keep] = merged;
        let forward: Vec<Option<Vertex>> = (0..n)
            .map(|v| {
                let v = if v == gone { keep } else { v };
                Some(if v > gone { v - 1 } else { v })
            })
            .collect();
        let rotation: Vec<Vec<Vertex>> = rotation
            .into_iter()
            .enumerate()
            .filter(|&(v, _)| v != gone)
            .map(|(_, list)| list.into_iter().map(|w| forward[w].unwrap()).collect())
            .collect();
        let adj = rotation.clone();
        let graph = Graph::from_adjacency(adj);
        (Self::assemble(graph, rotation), VertexMap::from_forward(forward))
    }

    /// Contracts the edge `keep remove` into `keep`; parallel edges collapse.
    pub fn contract_edge(&self, keep: Vertex, remove: Vertex) -> Result<(PlaneGraph, VertexMap), EmbedError> {
        for v in [keep, remove] {
            if !self.graph.contains(v) {
                return Err(GraphError::UnknownVertex {
                    vertex: v,
                    order: self.order(),
                }
                .into());
            }
        }
        if !self.graph.has_edge(keep, remove) {
            return Err(GraphError::NotAdjacent(keep, remove).into());
        }
        let keep_part = self.rotation_after(keep, remove);
        let gone_part = self.rotation_after(remove, keep);
        Ok(self.merge(keep, remove, keep_part, gone_part))
    }

    /// Identifies non-adjacent `u` and `w` through the first face, in rotation order
    /// around `across`, that has a corner at both. The merged vertex takes the slot
    /// of the smaller id; parallel edges collapse.
    pub fn identify(&self, u: Vertex, w: Vertex, across: Vertex) -> Result<(PlaneGraph, VertexMap), EmbedError> {
        for v in [u, w, across] {
            if !self.graph.contains(v) {
                return Err(GraphError::UnknownVertex {
                    vertex: v,
                    order: self.order(),
                }
                .into());
            }
        }
        if u == w {
            return Err(GraphError::SameVertex(u).into());
        }
        if self.graph.has_edge(u, w) {
            return Err(GraphError::Adjacent(u, w).into());
        }
        let faces = self.faces();
        let no_face = EmbedError::NoCommonFace { u, w, across };
        if self.degree(u) == 0 || self.degree(w) == 0 {
            return Err(no_face);
        }
        for f in faces.around(self, across) {
            let walk = &faces.get(f).walk;
            let corner = |x: Vertex| {
                let i = walk.iter().position(|&y| y == x)?;
                Some(walk[(i + walk.len() - 1) % walk.len()])
            };
            if let (Some(a), Some(c)) = (corner(u), corner(w)) {
                // Corner (a, succ_u(a)) at u and (c, succ_w(c)) at w.
                let b = self.succ(u, a).unwrap();
                let d = self.succ(w, c).unwrap();
                let u_part = self.rotation_from(u, b);
                let w_part = self.rotation_from(w, d);
                let (keep, gone, keep_part, gone_part) = if u < w {
                    (u, w, u_part, w_part)
                } else {
                    (w, u, w_part, u_part)
                };
                return Ok(self.merge(keep, gone, keep_part, gone_part));
            }
        }
        Err(no_face)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> PlaneGraph {
        PlaneGraph::new((0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect()).unwrap()
    }

    fn k4() -> PlaneGraph {
        // outer triangle 0,1,2 with 3 inside
        PlaneGraph::from_faces(4, &[vec![0, 1, 3], vec![1, 2, 3], vec![2, 0, 3], vec![0, 2, 1]]).unwrap()
    }

    fn wheel(rim: usize) -> PlaneGraph {
        let hub = rim;
        let mut faces: Vec<Vec<Vertex>> = (0..rim).map(|i| vec![i, (i + 1) % rim, hub]).collect();
        faces.push((0..rim).rev().collect());
        PlaneGraph::from_faces(rim + 1, &faces).unwrap()
    }

    #[test]
    fn faces_of_small_embeddings() {
        let c5 = cycle(5);
        let f = c5.faces();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|face| face.degree() == 5));

        let f = k4().faces();
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|face| face.degree() == 3));

        let k2 = PlaneGraph::new(vec![vec![1], vec![0]]).unwrap();
        let f = k2.faces();
        assert_eq!(f.len(), 1);
        assert_eq!(f.get(0).degree(), 2);

        let k1 = PlaneGraph::new(vec![vec![]]).unwrap();
        assert_eq!(k1.check_euler(), Ok(true));
    }

    #[test]
    fn euler_checks() {
        assert_eq!(cycle(5).check_euler(), Ok(true));
        assert_eq!(k4().check_euler(), Ok(true));
        // K5 with increasing rotations
        let k5 = PlaneGraph::new((0..5).map(|i| (0..5).filter(|&j| j != i).collect()).collect()).unwrap();
        assert_eq!(k5.check_euler(), Ok(false));
        let two = PlaneGraph::new(vec![vec![1], vec![0], vec![]]).unwrap();
        assert_eq!(two.check_euler(), Err(EmbedError::Disconnected));
    }

    #[test]
    fn rejects_bad_rotations() {
        assert_eq!(
            PlaneGraph::new(vec![vec![1], vec![]]),
            Err(EmbedError::Asymmetric(0, 1))
        );
        assert_eq!(
            PlaneGraph::new(vec![vec![1, 1], vec![0]]),
            Err(EmbedError::RepeatedNeighbor(0))
        );
    }

    #[test]
    fn deletions_keep_planarity() {
        let w5 = wheel(5);
        assert_eq!(w5.check_euler(), Ok(true));
        let (c5, _) = w5.delete_vertex(5).unwrap();
        assert_eq!(c5.faces().len(), 2);
        let (k3, _) = k4().delete_vertex(3).unwrap();
        assert_eq!(k3.faces().len(), 2);
        assert!(w5.delete_vertex(9).is_err());
    }

    #[test]
    fn faces_around_vertices() {
        let w5 = wheel(5);
        let around = w5.faces_around(5).unwrap();
        assert_eq!(around.len(), 5);
        assert!(around.iter().all(|f| f.degree() == 3));
        let c5 = cycle(5);
        let around = c5.faces_around(0).unwrap();
        assert_eq!(around.len(), 2);
        assert_ne!(around[0], around[1]);
    }

    #[test]
    fn identify_on_cycles() {
        let (p3, map) = cycle(4).identify(0, 2, 1).unwrap();
        assert_eq!((p3.order(), p3.graph().size()), (3, 2));
        assert_eq!(p3.check_euler(), Ok(true));
        assert_eq!(map.get(2), Some(0));

        // C6 antipodal: two triangles sharing the merged vertex
        let (bowtie, map) = cycle(6).identify(0, 3, 1).unwrap();
        let z = map.get(0).unwrap();
        assert_eq!(bowtie.order(), 5);
        assert_eq!(bowtie.degree(z), 4);
        assert_eq!(bowtie.check_euler(), Ok(true));
        assert_eq!(bowtie.faces().len(), 3);

        assert!(cycle(4).identify(0, 1, 2).is_err());
    }

    #[test]
    fn contraction_collapses_parallels() {
        let (k3, _) = k4().contract_edge(0, 3).unwrap();
        assert_eq!((k3.order(), k3.graph().size()), (3, 3));
        assert_eq!(k3.check_euler(), Ok(true));
        assert!(k3.graph().is_well_formed());
    }
}

//! Named graph families, with plane embeddings where one is easy to write down.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::plane::PlaneGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("{family}: {message}")]
    InvalidParameter { family: &'static str, message: String },
}

/// Shape of a tree of C5 blocks.
///
/// Block 1 is the root. Entry `i` of `attach` describes block `i + 2`: the block it
/// hangs from and the position (1..=5) on that block's cycle shared with it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BlockTreeShape {
    pub attach: Vec<(usize, u8)>,
}

impl BlockTreeShape {
    pub fn single() -> Self {
        Self::default()
    }

    /// `blocks` cycles in a row, each hanging from position 3 of the previous one.
    pub fn chain(blocks: usize) -> Self {
        BlockTreeShape {
            attach: (1..blocks).map(|b| (b, 3)).collect(),
        }
    }

    pub fn blocks(&self) -> usize {
        self.attach.len() + 1
    }

    pub fn validate(&self) -> Result<(), GenError> {
        for (i, &(parent, pos)) in self.attach.iter().enumerate() {
            let block = i + 2;
            if parent == 0 || parent >= block {
                return Err(invalid(
                    "c5-block-tree",
                    format!("block {block} must hang from an earlier block, got {parent}"),
                ));
            }
            if !(1..=5).contains(&pos) {
                return Err(invalid(
                    "c5-block-tree",
                    format!("attachment position {pos} outside 1..5"),
                ));
            }
        }
        Ok(())
    }

    /// Parses `parent:pos,parent:pos,...`; an empty string is a single block.
    pub fn parse(text: &str) -> Result<Self, GenError> {
        let text = text.trim();
        let mut attach = Vec::new();
        if !text.is_empty() {
            for item in text.split(',') {
                let (p, a) = item
                    .split_once(':')
                    .ok_or_else(|| invalid("c5-block-tree", format!("expected parent:pos, got `{item}`")))?;
                let p = p.trim().parse().map_err(|_| invalid("c5-block-tree", format!("bad block `{p}`")))?;
                let a = a.trim().parse().map_err(|_| invalid("c5-block-tree", format!("bad position `{a}`")))?;
                attach.push((p, a));
            }
        }
        let shape = BlockTreeShape { attach };
        shape.validate()?;
        Ok(shape)
    }

    /// Cycle positions of each block as vertex ids; position 1 of a non-root block is
    /// its attachment vertex.
    fn cycles(&self) -> Vec<[Vertex; 5]> {
        let mut cycles = vec![[0, 1, 2, 3, 4]];
        let mut next = 5;
        for &(parent, pos) in &self.attach {
            let shared = cycles[parent - 1][pos as usize - 1];
            cycles.push([shared, next, next + 1, next + 2, next + 3]);
            next += 4;
        }
        cycles
    }
}

impl fmt::Display for BlockTreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.attach.iter().map(|(p, a)| format!("{p}:{a}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Every shape with at most `max_blocks` blocks. Isomorphic duplicates are kept.
pub fn all_block_tree_shapes(max_blocks: usize) -> Vec<BlockTreeShape> {
    let mut out = Vec::new();
    if max_blocks == 0 {
        return out;
    }
    let mut layer = vec![BlockTreeShape::single()];
    for _ in 1..max_blocks {
        out.extend(layer.iter().cloned());
        let mut grown = Vec::new();
        for s in &layer {
            for parent in 1..=s.blocks() {
                for pos in 1..=5u8 {
                    let mut t = s.clone();
                    t.attach.push((parent, pos));
                    grown.push(t);
                }
            }
        }
        layer = grown;
    }
    out.extend(layer);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    /// K4 minus an edge.
    Kite,
    /// Hub plus a rim cycle of the given length.
    Wheel(usize),
    SubdividedComplete(usize),
    C5BlockTree(BlockTreeShape),
    Icosahedron,
}

/// A generated graph, with an embedding when the family is drawn in the plane.
#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    pub plane: Option<PlaneGraph>,
}

fn invalid(family: &'static str, message: String) -> GenError {
    GenError::InvalidParameter { family, message }
}

impl FamilySpec {
    pub const TAGS: [&'static str; 8] = [
        "cycle",
        "path",
        "complete",
        "kite",
        "wheel",
        "subdivided-complete",
        "c5-block-tree",
        "icosahedron",
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Cycle(_) => "cycle",
            FamilySpec::Path(_) => "path",
            FamilySpec::Complete(_) => "complete",
            FamilySpec::Kite => "kite",
            FamilySpec::Wheel(_) => "wheel",
            FamilySpec::SubdividedComplete(_) => "subdivided-complete",
            FamilySpec::C5BlockTree(_) => "c5-block-tree",
            FamilySpec::Icosahedron => "icosahedron",
        }
    }

    /// Builds a spec from a family tag and its parameter text.
    ///
    /// Numeric families take `n`. `c5-block-tree` takes either a block count (a chain)
    /// or an explicit `parent:pos` list.
    pub fn parse(tag: &str, param: Option<&str>) -> Result<Self, GenError> {
        let param = param.map(str::trim);
        let number = |family: &'static str| -> Result<usize, GenError> {
            let p = param.ok_or_else(|| invalid(family, "missing parameter n".into()))?;
            p.parse().map_err(|_| invalid(family, format!("`{p}` is not a number")))
        };
        let spec = match tag {
            "cycle" => FamilySpec::Cycle(number("cycle")?),
            "path" => FamilySpec::Path(number("path")?),
            "complete" => FamilySpec::Complete(number("complete")?),
            "kite" => FamilySpec::Kite,
            "wheel" => FamilySpec::Wheel(number("wheel")?),
            "subdivided-complete" => FamilySpec::SubdividedComplete(number("subdivided-complete")?),
            "icosahedron" => FamilySpec::Icosahedron,
            "c5-block-tree" => match param {
                None => FamilySpec::C5BlockTree(BlockTreeShape::single()),
                Some(p) if !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()) => {
                    let b: usize = p.parse().map_err(|_| invalid("c5-block-tree", format!("bad count `{p}`")))?;
                    if b == 0 {
                        return Err(invalid("c5-block-tree", "need at least one block".into()));
                    }
                    FamilySpec::C5BlockTree(BlockTreeShape::chain(b))
                }
                Some(p) => FamilySpec::C5BlockTree(BlockTreeShape::parse(p)?),
            },
            other => return Err(GenError::UnknownFamily(other.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), GenError> {
        match *self {
            FamilySpec::Cycle(n) if n < 3 => Err(invalid("cycle", format!("n = {n}, need n >= 3"))),
            FamilySpec::Path(n) if n < 1 => Err(invalid("path", "need n >= 1".into())),
            FamilySpec::Complete(n) if n < 1 => Err(invalid("complete", "need n >= 1".into())),
            FamilySpec::Wheel(n) if n < 3 => Err(invalid("wheel", format!("rim of {n}, need >= 3"))),
            FamilySpec::SubdividedComplete(n) if n < 2 => {
                Err(invalid("subdivided-complete", format!("n = {n}, need n >= 2")))
            }
            FamilySpec::C5BlockTree(ref s) => s.validate(),
            _ => Ok(()),
        }
    }

    pub fn make(&self) -> Result<Generated, GenError> {
        self.validate()?;
        let plane = match self {
            FamilySpec::Cycle(n) => Some(plane_cycle(*n)),
            FamilySpec::Path(n) => Some(plane_path(*n)),
            FamilySpec::Complete(n) if *n <= 4 => Some(plane_complete(*n)),
            FamilySpec::Complete(_) => None,
            FamilySpec::Kite => Some(from_faces(4, &[vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 2, 1]])),
            FamilySpec::Wheel(n) => Some(plane_wheel(*n)),
            FamilySpec::SubdividedComplete(n) if *n <= 4 => Some(subdivide_plane(&plane_complete(*n))),
            FamilySpec::SubdividedComplete(_) => None,
            FamilySpec::C5BlockTree(s) => Some(plane_block_tree(s)),
            FamilySpec::Icosahedron => Some(icosahedron()),
        };
        let graph = match (&plane, self) {
            (Some(p), _) => p.graph().clone(),
            (None, FamilySpec::Complete(n)) => complete(*n),
            (None, FamilySpec::SubdividedComplete(n)) => subdivide(&complete(*n)),
            _ => unreachable!("every non-planar family is listed"),
        };
        Ok(Generated { graph, plane })
    }
}

fn from_faces(n: usize, faces: &[Vec<Vertex>]) -> PlaneGraph {
    PlaneGraph::from_faces(n, faces).expect("hand-written embedding is valid")
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("simple by construction")
}

fn plane_cycle(n: usize) -> PlaneGraph {
    let rot = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
    PlaneGraph::new(rot).expect("cycle embedding")
}

fn plane_path(n: usize) -> PlaneGraph {
    let rot = (0..n)
        .map(|i| {
            let mut r = Vec::new();
            if i > 0 {
                r.push(i - 1);
            }
            if i + 1 < n {
                r.push(i + 1);
            }
            r
        })
        .collect();
    PlaneGraph::new(rot).expect("path embedding")
}

fn plane_complete(n: usize) -> PlaneGraph {
    match n {
        0..=2 => plane_path(n),
        3 => plane_cycle(3),
        4 => from_faces(4, &[vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]]),
        _ => panic!("K{n} is not planar"),
    }
}

fn plane_wheel(n: usize) -> PlaneGraph {
    let mut faces: Vec<Vec<Vertex>> = (1..=n).map(|i| vec![0, i, i % n + 1]).collect();
    faces.push((1..=n).rev().collect());
    from_faces(n + 1, &faces)
}

fn icosahedron() -> PlaneGraph {
    let up = |j: usize| 1 + j % 5;
    let low = |j: usize| 6 + j % 5;
    let mut faces = Vec::new();
    for j in 0..5 {
        faces.push(vec![0, up(j), up(j + 1)]);
        faces.push(vec![up(j + 1), up(j), low(j)]);
        faces.push(vec![up(j + 1), low(j), low(j + 1)]);
        faces.push(vec![11, low(j + 1), low(j)]);
    }
    from_faces(12, &faces)
}

fn plane_block_tree(shape: &BlockTreeShape) -> PlaneGraph {
    let cycles = shape.cycles();
    let n = 1 + 4 * cycles.len();
    let mut rot = vec![Vec::new(); n];
    for c in &cycles {
        for i in 0..5 {
            rot[c[i]].push(c[(i + 4) % 5]);
            rot[c[i]].push(c[(i + 1) % 5]);
        }
    }
    PlaneGraph::new(rot).expect("block tree embedding")
}

/// Complete subdivision: vertex ids are kept and the vertex on edge number `i` (in
/// `edges()` order) is `n + i`.
pub fn subdivide(g: &Graph) -> Graph {
    let n = g.order();
    let edges = g
        .edges()
        .enumerate()
        .flat_map(|(i, (u, v))| [(u, n + i), (n + i, v)]);
    Graph::from_edges(n + g.size(), edges).expect("simple by construction")
}

/// Complete subdivision of a plane graph, same labeling as [`subdivide`].
pub fn subdivide_plane(p: &PlaneGraph) -> PlaneGraph {
    let g = p.graph();
    let n = g.order();
    let index: std::collections::HashMap<(Vertex, Vertex), Vertex> =
        g.edges().enumerate().map(|(i, e)| (e, n + i)).collect();
    let mid = |u: Vertex, v: Vertex| index[&(u.min(v), u.max(v))];
    let mut rot: Vec<Vec<Vertex>> = (0..n)
        .map(|v| p.rotation(v).iter().map(|&u| mid(u, v)).collect())
        .collect();
    for (u, v) in g.edges() {
        rot.push(vec![u, v]);
    }
    PlaneGraph::new(rot).expect("subdivision keeps the embedding")
}

//! Odd 9-colorings of connected plane graphs by local reductions.
//!
//! Each reduction shrinks the graph by vertex deletion, edge contraction or
//! identification of two vertices on a common face, colors the smaller graph
//! recursively, lifts the coloring and extends it over the removed vertices. The
//! kinds are tried in a fixed order:
//!
//! 1. `DeleteOdd13`: delete a vertex of degree 1 or 3.
//! 2. `Degree2Bridge`: contract a 2-vertex into one of its neighbours.
//! 3. `Degree4Contract`: contract a 4-vertex into a neighbour.
//! 4. `FiveVertexTwoOddNbrs`: delete a 5-vertex with two odd-degree neighbours.
//! 5. `C7Contract`: delete a 5-vertex `v` and identify `v_j`, `v_{j+2}` around it.
//! 6. `C11Quad`: on a quadrangle `ABCD` next to `v`, identify `B` and `D`, delete
//!    `v`, `A`, `C`, and extend over `v`, `C`, `A`.
//!
//! The first four always extend. The last two can fail, in which case the next site
//! is tried; when every site fails the exact solver colors the graph and the trace
//! records a fallback.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{extend_coloring, verify, Coloring};
use crate::graph::{Graph, Vertex, VertexMap};
use crate::io::encode_graph6;
use crate::plane::{EmbedError, PlaneGraph};
use crate::solver::{find_odd_coloring, SolveOptions, SolveStatus};

pub const PALETTE: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ReductionKind {
    DeleteOdd13,
    Degree2Bridge,
    Degree4Contract,
    FiveVertexTwoOddNbrs,
    C7Contract,
    C11Quad,
}

impl ReductionKind {
    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::DeleteOdd13 => "DeleteOdd13",
            ReductionKind::Degree2Bridge => "Degree2Bridge",
            ReductionKind::Degree4Contract => "Degree4Contract",
            ReductionKind::FiveVertexTwoOddNbrs => "FiveVertexTwoOddNbrs",
            ReductionKind::C7Contract => "C7Contract",
            ReductionKind::C11Quad => "C11Quad",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Surgery {
    Delete(Vec<Vertex>),
    Contract { keep: Vertex, remove: Vertex },
    Identify { u: Vertex, w: Vertex, across: Vertex },
}

/// A reduction site. Vertex ids refer to the graph it was found in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub kind: ReductionKind,
    /// Kind-specific vertices:
    /// `[v]`, `[v, x, y]`, `[v, w]`, `[v, u, w]`, `[v, v_j, v_j+1, v_j+2]` or `[v, A, B, C, D]`.
    pub site: Vec<Vertex>,
    steps: Vec<Surgery>,
    extend: Vec<Vertex>,
}

impl Reduction {
    /// Vertices colored by the extension, in order.
    pub fn extension_order(&self) -> &[Vertex] {
        &self.extend
    }

    /// The reduced plane graph and the map from this graph onto it.
    pub fn reduce(&self, p: &PlaneGraph) -> Result<(PlaneGraph, VertexMap), EmbedError> {
        let mut cur = p.clone();
        let mut map = VertexMap::identity(p.order());
        let at = |map: &VertexMap, x: Vertex| map.get(x).expect("surgery keeps this vertex");
        for step in &self.steps {
            let (next, m) = match step {
                Surgery::Delete(vs) => {
                    let vs: Vec<Vertex> = vs.iter().map(|&x| at(&map, x)).collect();
                    cur.delete_vertices(&vs)?
                }
                Surgery::Contract { keep, remove } => cur.contract_edge(at(&map, *keep), at(&map, *remove))?,
                Surgery::Identify { u, w, across } => {
                    cur.identify(at(&map, *u), at(&map, *w), at(&map, *across))?
                }
            };
            map = map.then(&m);
            cur = next;
        }
        Ok((cur, map))
    }

    /// Lifts a coloring of the reduced graph and extends it over the removed
    /// vertices. `None` means no extension exists.
    pub fn lift(&self, p: &PlaneGraph, map: &VertexMap, reduced: &Coloring) -> Option<Coloring> {
        let g = p.graph();
        let mut c = Coloring::empty(g.order(), reduced.palette());
        for x in 0..g.order() {
            if let Some(col) = map.get(x).and_then(|y| reduced.get(y)) {
                c.set(x, col).expect("palette matches");
            }
        }
        for &x in &self.extend {
            c.clear(x);
        }
        extend_coloring(g, &mut c, &self.extend)
            .expect("lifted coloring is well formed")
            .then_some(c)
    }
}

/// The first applicable reduction in priority order.
pub fn find_reduction(p: &PlaneGraph) -> Option<Reduction> {
    candidates(p, false).into_iter().next()
}

/// Every reduction site, in priority order.
pub fn reduction_sites(p: &PlaneGraph) -> Vec<Reduction> {
    candidates(p, true)
}

fn simple(kind: ReductionKind, site: Vec<Vertex>, steps: Vec<Surgery>, v: Vertex) -> Reduction {
    Reduction {
        kind,
        site,
        steps,
        extend: vec![v],
    }
}

fn sorted(mut v: Vec<Vertex>) -> Vec<Vertex> {
    v.sort_unstable();
    v
}

/// With `all == false` the list stops at the first site of kinds 1 to 4.
fn candidates(p: &PlaneGraph, all: bool) -> Vec<Reduction> {
    let g = p.graph();
    let n = g.order();
    let mut out = Vec::new();
    let early = |out: &Vec<Reduction>| !all && !out.is_empty();

    for v in 0..n {
        if matches!(g.degree(v), 1 | 3) {
            out.push(simple(ReductionKind::DeleteOdd13, vec![v], vec![Surgery::Delete(vec![v])], v));
            if early(&out) {
                return out;
            }
        }
    }
    for v in 0..n {
        if g.degree(v) == 2 {
            let (x, y) = (g.neighbors(v)[0], g.neighbors(v)[1]);
            out.push(simple(
                ReductionKind::Degree2Bridge,
                vec![v, x, y],
                vec![Surgery::Contract { keep: x, remove: v }],
                v,
            ));
            if early(&out) {
                return out;
            }
        }
    }
    for v in 0..n {
        if g.degree(v) == 4 {
            let w = *g
                .neighbors(v)
                .iter()
                .min_by_key(|&&w| (g.common_neighbors(v, w).len(), w))
                .unwrap();
            out.push(simple(
                ReductionKind::Degree4Contract,
                vec![v, w],
                vec![Surgery::Contract { keep: w, remove: v }],
                v,
            ));
            if early(&out) {
                return out;
            }
        }
    }
    let fives: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) == 5).collect();
    for &v in &fives {
        let odd: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&u| g.degree(u) % 2 == 1).collect();
        if odd.len() >= 2 {
            out.push(simple(
                ReductionKind::FiveVertexTwoOddNbrs,
                vec![v, odd[0], odd[1]],
                vec![Surgery::Delete(vec![v])],
                v,
            ));
            if early(&out) {
                return out;
            }
        }
    }
    for &v in &fives {
        let ring = p.rotation(v);
        for j in 0..5 {
            let (a, b, c) = (ring[j], ring[(j + 1) % 5], ring[(j + 2) % 5]);
            if g.has_edge(a, c) || g.common_neighbors(a, c) != sorted(vec![v, b]) {
                continue;
            }
            out.push(simple(
                ReductionKind::C7Contract,
                vec![v, a, b, c],
                vec![Surgery::Delete(vec![v]), Surgery::Identify { u: a, w: c, across: b }],
                v,
            ));
        }
    }
    if fives.is_empty() {
        return out;
    }
    let faces = p.faces();
    for &v in &fives {
        let ring = p.rotation(v);
        for i in 0..5 {
            let (d, c) = (ring[i], ring[(i + 1) % 5]);
            if g.degree(d) != 6 || g.degree(c) != 6 || !g.has_edge(c, d) {
                continue;
            }
            let inner = faces.face_of_dart(p, d, v).map(|f| faces.get(f));
            if inner.is_none_or(|f| f.degree() != 3) {
                continue;
            }
            let Some(outer) = faces.face_of_dart(p, d, c).map(|f| faces.get(f)) else {
                continue;
            };
            if outer.degree() != 4 || outer.contains(v) {
                continue;
            }
            let walk = &outer.walk;
            let s = walk.iter().position(|&x| x == d).unwrap();
            let at = |k: usize| walk[(s + k) % 4];
            if at(1) != c {
                continue;
            }
            let (b, a) = (at(2), at(3));
            if BTreeSet::from([a, b, c, d]).len() != 4 || g.degree(a) != 5 || g.degree(b) != 5 {
                continue;
            }
            if !g.has_edge(b, d) && g.common_neighbors(b, d) == sorted(vec![a, c]) {
                out.push(Reduction {
                    kind: ReductionKind::C11Quad,
                    site: vec![v, a, b, c, d],
                    steps: vec![
                        Surgery::Identify { u: b, w: d, across: a },
                        Surgery::Delete(vec![v, a, c]),
                    ],
                    extend: vec![v, c, a],
                });
            }
            if !g.has_edge(a, c) && g.common_neighbors(a, c) == sorted(vec![b, d]) {
                out.push(Reduction {
                    kind: ReductionKind::C11Quad,
                    site: vec![v, a, b, c, d],
                    steps: vec![
                        Surgery::Identify { u: a, w: c, across: b },
                        Surgery::Delete(vec![v, b, d]),
                    ],
                    extend: vec![v, d, b],
                });
            }
        }
    }
    out
}

/// Whether the inherited coloring around the 5-vertex `v` (uncolored) shows the
/// blocked pattern: four colors on the ring, and each ring vertex with a single odd
/// color on its other neighbours, these five colors distinct and off the ring.
pub fn blocked_ring_pattern(g: &Graph, c: &Coloring, v: Vertex) -> bool {
    let ring = g.neighbors(v);
    let Some(ring_colors) = ring.iter().map(|&u| c.get(u)).collect::<Option<BTreeSet<_>>>() else {
        return false;
    };
    if ring.len() != 5 || ring_colors.len() != 4 {
        return false;
    }
    let mut blocked = BTreeSet::new();
    for &u in ring {
        let mut parity = vec![0u8; c.palette() + 1];
        for &x in g.neighbors(u) {
            if x == v {
                continue;
            }
            match c.get(x) {
                Some(col) => parity[col] ^= 1,
                None => return false,
            }
        }
        let odd: Vec<usize> = (1..parity.len()).filter(|&col| parity[col] == 1).collect();
        if odd.len() != 1 || ring_colors.contains(&odd[0]) {
            return false;
        }
        blocked.insert(odd[0]);
    }
    blocked.len() == 5
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Applied,
    ExtensionFailed,
    Fallback,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    /// Reduction kind name, or `Fallback`.
    pub kind: String,
    /// 1-based ids in the graph the step was applied to.
    pub site: Vec<usize>,
    #[serde(rename = "graphSizeBefore")]
    pub graph_size_before: usize,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Color9 {
    pub coloring: Coloring,
    pub trace: Vec<TraceEntry>,
    pub fallbacks: usize,
    pub failed_extensions: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReduceOptions {
    /// Node budget for each exact-solver fallback.
    pub fallback_budget: Option<u64>,
    /// After this many failed extensions, every remaining failure point falls back
    /// to the exact solver directly.
    pub max_failed_extensions: usize,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions {
            fallback_budget: Some(50_000_000),
            max_failed_extensions: 1000,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("input graph is disconnected; color each component separately")]
    Disconnected,
    #[error("rotation system is not a plane embedding")]
    NotPlane,
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error("no odd 9-coloring exists for the subgraph {graph6}")]
    Counterexample { graph6: String },
    #[error("exact solver ran out of budget after {nodes} nodes on a {order}-vertex subgraph")]
    FallbackBudget { order: usize, nodes: u64 },
    #[error("internal error: {0}")]
    Invalid(String),
}

struct Ctx {
    opts: ReduceOptions,
    trace: Vec<TraceEntry>,
    fallbacks: usize,
    failed: usize,
}

fn one_based(vs: &[Vertex]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

/// Odd coloring with at most 9 colors of a connected plane graph.
pub fn color9(p: &PlaneGraph) -> Result<Color9, ReduceError> {
    color9_with(p, &ReduceOptions::default())
}

pub fn color9_with(p: &PlaneGraph, opts: &ReduceOptions) -> Result<Color9, ReduceError> {
    if !p.graph().is_connected() {
        return Err(ReduceError::Disconnected);
    }
    if !p.check_euler()? {
        return Err(ReduceError::NotPlane);
    }
    let mut ctx = Ctx {
        opts: *opts,
        trace: Vec::new(),
        fallbacks: 0,
        failed: 0,
    };
    // one stack frame per reduction; size the stack to the order of the graph
    let stack = (16 << 20) + 16 * 1024 * p.order();
    let coloring = std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(stack)
            .spawn_scoped(scope, || color_any(p, &mut ctx))
            .expect("spawn reducer thread")
            .join()
            .expect("reducer thread panicked")
    })?;
    if !verify(p.graph(), &coloring) || coloring.palette() > PALETTE {
        return Err(ReduceError::Invalid("final coloring failed verification".into()));
    }
    // entries were pushed as each level finished; list them top-down instead
    ctx.trace.reverse();
    Ok(Color9 {
        coloring,
        trace: ctx.trace,
        fallbacks: ctx.fallbacks,
        failed_extensions: ctx.failed,
    })
}

/// Colors each component separately.
fn color_any(p: &PlaneGraph, ctx: &mut Ctx) -> Result<Coloring, ReduceError> {
    let comps = p.graph().components();
    if comps.len() <= 1 {
        return color_connected(p, ctx);
    }
    let mut c = Coloring::empty(p.order(), PALETTE);
    for comp in comps {
        let (sub, map) = p.induced(&comp)?;
        let sc = color_connected(&sub, ctx)?;
        for &x in &comp {
            let col = sc.get(map.get(x).unwrap()).unwrap();
            c.set(x, col).unwrap();
        }
    }
    Ok(c)
}

fn color_connected(p: &PlaneGraph, ctx: &mut Ctx) -> Result<Coloring, ReduceError> {
    let g = p.graph();
    let n = g.order();
    if n <= 2 {
        return Ok(Coloring::from_colors(PALETTE, (1..=n).collect()).unwrap());
    }
    if ctx.failed < ctx.opts.max_failed_extensions {
        for r in candidates(p, false) {
            let (reduced, map) = r.reduce(p)?;
            let sub = color_any(&reduced, ctx)?;
            if !verify(reduced.graph(), &sub) {
                return Err(ReduceError::Invalid(format!(
                    "{} produced an invalid coloring",
                    r.kind.name()
                )));
            }
            let mut entry = TraceEntry {
                kind: r.kind.name().to_string(),
                site: one_based(&r.site),
                graph_size_before: n,
                outcome: Outcome::Applied,
                note: None,
            };
            if r.kind == ReductionKind::Degree2Bridge {
                let (x, y) = (r.site[1], r.site[2]);
                entry.note = Some(if g.has_edge(x, y) {
                    "neighbours already adjacent".into()
                } else {
                    format!("edge {}-{} drawn through the face of {}", x + 1, y + 1, r.site[0] + 1)
                });
            }
            match r.lift(p, &map, &sub) {
                Some(c) => {
                    ctx.trace.push(entry);
                    return Ok(c);
                }
                None => {
                    ctx.failed += 1;
                    entry.outcome = Outcome::ExtensionFailed;
                    if r.kind == ReductionKind::C7Contract {
                        let mut c = Coloring::empty(n, PALETTE);
                        for x in 0..n {
                            if let Some(col) = map.get(x).and_then(|y| sub.get(y)) {
                                c.set(x, col).unwrap();
                            }
                        }
                        c.clear(r.site[0]);
                        let pattern = blocked_ring_pattern(g, &c, r.site[0]);
                        entry.note = Some(format!("blocked ring pattern {}", if pattern { "confirmed" } else { "absent" }));
                    }
                    ctx.trace.push(entry);
                    if ctx.failed >= ctx.opts.max_failed_extensions {
                        break;
                    }
                }
            }
        }
    }
    fallback(p, ctx)
}

fn fallback(p: &PlaneGraph, ctx: &mut Ctx) -> Result<Coloring, ReduceError> {
    let g = p.graph();
    let opts = SolveOptions {
        budget: ctx.opts.fallback_budget,
        threads: 1,
    };
    let r = find_odd_coloring(g, PALETTE, &opts);
    match r.status {
        SolveStatus::Found => {
            ctx.fallbacks += 1;
            ctx.trace.push(TraceEntry {
                kind: "Fallback".into(),
                site: Vec::new(),
                graph_size_before: g.order(),
                outcome: Outcome::Fallback,
                note: Some(format!("exact solver, {} nodes", r.nodes)),
            });
            Ok(r.witness.unwrap())
        }
        SolveStatus::Exhausted => Err(ReduceError::Counterexample {
            graph6: encode_graph6(g),
        }),
        SolveStatus::BudgetExhausted => Err(ReduceError::FallbackBudget {
            order: g.order(),
            nodes: r.nodes,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::FamilySpec;

    fn plane(tag: &str, param: Option<&str>) -> PlaneGraph {
        FamilySpec::parse(tag, param).unwrap().make().unwrap().plane.unwrap()
    }

    #[test]
    fn first_reduction_by_family() {
        let path = plane("path", Some("5"));
        let r = find_reduction(&path).unwrap();
        assert_eq!((r.kind, r.site.clone()), (ReductionKind::DeleteOdd13, vec![0]));
        let r = find_reduction(&plane("cycle", Some("5"))).unwrap();
        assert_eq!(r.kind, ReductionKind::Degree2Bridge);
        let r = find_reduction(&plane("icosahedron", None)).unwrap();
        assert_eq!(r.kind, ReductionKind::FiveVertexTwoOddNbrs);
        let r = find_reduction(&plane("wheel", Some("4"))).unwrap();
        assert_eq!(r.kind, ReductionKind::DeleteOdd13);
    }

    #[test]
    fn small_families_color() {
        for (tag, param) in [
            ("cycle", Some("5")),
            ("cycle", Some("4")),
            ("path", Some("2")),
            ("kite", None),
            ("wheel", Some("5")),
            ("wheel", Some("6")),
            ("icosahedron", None),
            ("c5-block-tree", Some("3")),
            ("subdivided-complete", Some("4")),
        ] {
            let p = plane(tag, param);
            let r = color9(&p).unwrap();
            assert!(verify(p.graph(), &r.coloring), "{tag}");
            assert!(r.coloring.max_color().unwrap() <= PALETTE);
            assert_eq!(r.fallbacks, 0, "{tag}");
        }
        let c5 = color9(&plane("cycle", Some("5"))).unwrap();
        assert_eq!(c5.coloring.colors_used(), 5);
    }

    #[test]
    fn reductions_shrink() {
        let p = plane("icosahedron", None);
        for r in reduction_sites(&p) {
            let (q, _) = r.reduce(&p).unwrap();
            assert!(q.order() < p.order());
            assert_eq!(q.check_euler(), Ok(true));
        }
    }

    #[test]
    fn blocked_ring() {
        // hub 0, rim 1..=5 colored 1,2,1,3,4; leaves make each rim vertex see exactly
        // one odd color, 5..=9, on its neighbours other than the hub
        let ring_colors = [1, 2, 1, 3, 4];
        let mut edges = Vec::new();
        let mut colors = vec![0];
        colors.extend(ring_colors);
        for i in 0..5 {
            let u = 1 + i;
            edges.push((0, u));
            edges.push((u, 1 + (i + 1) % 5));
            for leaf_color in [ring_colors[(i + 4) % 5], ring_colors[(i + 1) % 5], 5 + i] {
                edges.push((u, colors.len()));
                colors.push(leaf_color);
            }
        }
        let g = Graph::from_edges(colors.len(), edges).unwrap();
        let mut c = Coloring::from_partial(PALETTE, colors.iter().map(|&x| (x > 0).then_some(x)).collect())
            .unwrap();
        assert!(blocked_ring_pattern(&g, &c, 0));
        assert!(!extend_coloring(&g, &mut c, &[0]).unwrap());
        c.set(6, 2).unwrap();
        assert!(!blocked_ring_pattern(&g, &c, 0));
    }

    #[test]
    fn disconnected_input_rejected() {
        let p = PlaneGraph::new(vec![vec![1], vec![0], vec![]]).unwrap();
        assert_eq!(color9(&p).unwrap_err(), ReduceError::Disconnected);
    }
}

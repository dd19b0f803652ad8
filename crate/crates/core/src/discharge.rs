//! Charges, discharging rules and the structural predicates around them.
//!
//! Charges are integers in units of 1/12: a vertex starts with `12 (d - 6)` and a
//! face with `12 (2 d - 6)`, so a connected plane graph starts with total `-144`.
//!
//! * R1: every 4+-face sends 12 to each incident 5-vertex.
//! * R2: an 8+-vertex `u` sends to an adjacent 5-vertex `v` when both faces on `uv`
//!   are triangles: 4 if one of them has another 5-vertex, 6 otherwise.
//! * R3: a 4+-face `f` sends 6 through each boundary edge `uw` with
//!   `d(u) = d(w) = 6` to the 5-vertex opposite `uw` in a triangle, unless `f` is a
//!   4-face incident with two 5-vertices.
//!
//! All transfers are computed on the initial configuration and applied at once.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::Vertex;
use crate::plane::{FaceId, Faces, PlaneGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DischargeError {
    #[error("charges are defined for connected plane graphs only")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeState {
    pub vertex: Vec<i64>,
    pub face: Vec<i64>,
}

impl ChargeState {
    pub fn total(&self) -> i64 {
        self.vertex.iter().sum::<i64>() + self.face.iter().sum::<i64>()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rule {
    R1,
    R2,
    R3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Source {
    Vertex(Vertex),
    Face(FaceId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub rule: Rule,
    pub from: Source,
    pub to: Vertex,
    /// In units of 1/12.
    pub amount: i64,
    /// For R3, the edge the charge passes through.
    pub via: Option<(Vertex, Vertex)>,
}

pub fn initial_charges(p: &PlaneGraph) -> Result<ChargeState, DischargeError> {
    initial_with(p, &p.faces())
}

fn initial_with(p: &PlaneGraph, faces: &Faces) -> Result<ChargeState, DischargeError> {
    if !p.graph().is_connected() {
        return Err(DischargeError::Disconnected);
    }
    Ok(ChargeState {
        vertex: (0..p.order()).map(|v| 12 * (p.degree(v) as i64 - 6)).collect(),
        face: faces.iter().map(|f| 12 * (2 * f.degree() as i64 - 6)).collect(),
    })
}

/// Every transfer of R1 to R3 on `p`, in rule order.
pub fn transfers(p: &PlaneGraph) -> Vec<Transfer> {
    transfers_with(p, &p.faces())
}

fn transfers_with(p: &PlaneGraph, faces: &Faces) -> Vec<Transfer> {
    let g = p.graph();
    let d = |v: Vertex| g.degree(v);
    let fives_on = |f: FaceId| -> BTreeSet<Vertex> {
        faces.get(f).walk.iter().copied().filter(|&v| d(v) == 5).collect()
    };
    let mut out = Vec::new();
    for (f, face) in faces.iter().enumerate() {
        if face.degree() < 4 {
            continue;
        }
        for v in fives_on(f) {
            out.push(Transfer {
                rule: Rule::R1,
                from: Source::Face(f),
                to: v,
                amount: 12,
                via: None,
            });
        }
    }
    for u in 0..g.order() {
        if d(u) < 8 {
            continue;
        }
        for &v in g.neighbors(u) {
            if d(v) != 5 {
                continue;
            }
            let sides = [faces.face_of_dart(p, u, v), faces.face_of_dart(p, v, u)];
            let Some(sides) = sides.into_iter().collect::<Option<Vec<_>>>() else {
                continue;
            };
            if sides.iter().any(|&f| faces.degree(f) != 3) {
                continue;
            }
            let crowded = sides
                .iter()
                .any(|&f| faces.get(f).walk.iter().any(|&x| x != v && d(x) == 5));
            out.push(Transfer {
                rule: Rule::R2,
                from: Source::Vertex(u),
                to: v,
                amount: if crowded { 4 } else { 6 },
                via: None,
            });
        }
    }
    for (f, face) in faces.iter().enumerate() {
        if face.degree() < 4 {
            continue;
        }
        if face.degree() == 4 && fives_on(f).len() >= 2 {
            continue;
        }
        let walk = &face.walk;
        for i in 0..walk.len() {
            let (u, w) = (walk[i], walk[(i + 1) % walk.len()]);
            if d(u) != 6 || d(w) != 6 {
                continue;
            }
            let Some(other) = faces.face_of_dart(p, w, u) else {
                continue;
            };
            if other == f || faces.degree(other) != 3 {
                continue;
            }
            let v = *faces.get(other).walk.iter().find(|&&x| x != u && x != w).unwrap();
            if d(v) == 5 {
                out.push(Transfer {
                    rule: Rule::R3,
                    from: Source::Face(f),
                    to: v,
                    amount: 6,
                    via: Some((u, w)),
                });
            }
        }
    }
    out
}

/// Applies every transfer to `s`.
pub fn apply_rules(p: &PlaneGraph, s: &ChargeState) -> (ChargeState, Vec<Transfer>) {
    let log = transfers(p);
    (apply_log(s, &log), log)
}

fn apply_log(s: &ChargeState, log: &[Transfer]) -> ChargeState {
    let mut out = s.clone();
    for t in log {
        match t.from {
            Source::Vertex(u) => out.vertex[u] -= t.amount,
            Source::Face(f) => out.face[f] -= t.amount,
        }
        out.vertex[t.to] += t.amount;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvenientCheck {
    /// Index `i` of the face across `v_i v_{i+1}`.
    pub index: usize,
    pub face: FaceId,
    pub face_degree: usize,
    pub convenient: bool,
    /// A quadrangle with two 5-vertices besides `v_i`, `v_{i+1}`.
    pub quadrangle_with_two_fives: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvenientInventory {
    pub vertex: Vertex,
    /// Neighbours in rotation order.
    pub ring: Vec<Vertex>,
    pub faces: Vec<ConvenientCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceExcess {
    pub face: FaceId,
    pub degree: usize,
    pub fives: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub initial: ChargeState,
    pub after: ChargeState,
    pub transfers: Vec<Transfer>,
    pub walks: Vec<Vec<Vertex>>,
    pub min_degree: usize,
    /// Minimum degree is exactly 5.
    pub p1: bool,
    /// Every 5-vertex has at most one odd-degree neighbour.
    pub p2: bool,
    /// 5-vertices with two or more odd-degree neighbours, with those neighbours.
    pub p2_witnesses: Vec<(Vertex, Vec<Vertex>)>,
    /// Every d-face has at most floor(2d/3) incident 5-vertices.
    pub p3: bool,
    pub p3_witnesses: Vec<FaceExcess>,
    pub negative_big_vertices: Vec<(Vertex, i64)>,
    pub negative_big_faces: Vec<(FaceId, i64)>,
    pub negative_five_vertices: Vec<(Vertex, i64)>,
    pub convenient: Vec<ConvenientInventory>,
}

impl AuditReport {
    /// Under P1 and P2 no 8+-vertex and no 4+-face may end negative.
    pub fn conditional_violations(&self) -> usize {
        if self.p1 && self.p2 {
            self.negative_big_vertices.len() + self.negative_big_faces.len()
        } else {
            0
        }
    }

    /// JSON with 1-based vertex and face ids.
    pub fn to_json(&self) -> Value {
        let one = |v: &Vertex| v + 1;
        let source = |s: &Source| match s {
            Source::Vertex(v) => json!({"vertex": v + 1}),
            Source::Face(f) => json!({"face": f + 1}),
        };
        json!({
            "total": {"initial": self.initial.total(), "after": self.after.total()},
            "charges": {
                "initial": {"vertices": self.initial.vertex, "faces": self.initial.face},
                "after": {"vertices": self.after.vertex, "faces": self.after.face},
            },
            "faces": self.walks.iter().map(|w| w.iter().map(one).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "transfers": self.transfers.iter().map(|t| {
                let mut o = json!({
                    "rule": format!("{:?}", t.rule),
                    "from": source(&t.from),
                    "to": t.to + 1,
                    "amount": t.amount,
                });
                if let Some((u, w)) = t.via {
                    o["via"] = json!([u + 1, w + 1]);
                }
                o
            }).collect::<Vec<_>>(),
            "predicates": {
                "minDegree": self.min_degree,
                "P1": self.p1,
                "P2": self.p2,
                "P2Witnesses": self.p2_witnesses.iter()
                    .map(|(v, odd)| json!({"vertex": v + 1, "oddNeighbors": odd.iter().map(one).collect::<Vec<_>>()}))
                    .collect::<Vec<_>>(),
                "P3": self.p3,
                "P3Witnesses": self.p3_witnesses.iter()
                    .map(|e| json!({"face": e.face + 1, "degree": e.degree, "fiveVertices": e.fives}))
                    .collect::<Vec<_>>(),
            },
            "afterDischarge": {
                "negativeBigVertices": self.negative_big_vertices.iter().map(|(v, c)| json!([v + 1, c])).collect::<Vec<_>>(),
                "negativeBigFaces": self.negative_big_faces.iter().map(|(f, c)| json!([f + 1, c])).collect::<Vec<_>>(),
                "negativeFiveVertices": self.negative_five_vertices.iter().map(|(v, c)| json!([v + 1, c])).collect::<Vec<_>>(),
                "conditionalViolations": self.conditional_violations(),
            },
            "convenientFaces": self.convenient.iter().map(|inv| json!({
                "vertex": inv.vertex + 1,
                "ring": inv.ring.iter().map(one).collect::<Vec<_>>(),
                "faces": inv.faces.iter().map(|c| json!({
                    "index": c.index + 1,
                    "face": c.face + 1,
                    "degree": c.face_degree,
                    "convenient": c.convenient,
                    "quadrangleWithTwoFives": c.quadrangle_with_two_fives,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn audit(p: &PlaneGraph) -> Result<AuditReport, DischargeError> {
    let g = p.graph();
    let d = |v: Vertex| g.degree(v);
    let faces = p.faces();
    let initial = initial_with(p, &faces)?;
    let log = transfers_with(p, &faces);
    let after = apply_log(&initial, &log);
    let min_degree = g.min_degree().unwrap_or(0);

    let mut p2_witnesses = Vec::new();
    for v in (0..g.order()).filter(|&v| d(v) == 5) {
        let odd: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&u| d(u) % 2 == 1).collect();
        if odd.len() >= 2 {
            p2_witnesses.push((v, odd));
        }
    }
    let mut p3_witnesses = Vec::new();
    for (f, face) in faces.iter().enumerate() {
        let fives = face.walk.iter().copied().filter(|&v| d(v) == 5).collect::<BTreeSet<_>>().len();
        if fives > 2 * face.degree() / 3 {
            p3_witnesses.push(FaceExcess {
                face: f,
                degree: face.degree(),
                fives,
            });
        }
    }
    let negative_big_vertices = (0..g.order())
        .filter(|&v| d(v) >= 8 && after.vertex[v] < 0)
        .map(|v| (v, after.vertex[v]))
        .collect();
    let negative_big_faces = (0..faces.len())
        .filter(|&f| faces.degree(f) >= 4 && after.face[f] < 0)
        .map(|f| (f, after.face[f]))
        .collect();
    let negative_five_vertices = (0..g.order())
        .filter(|&v| d(v) == 5 && after.vertex[v] < 0)
        .map(|v| (v, after.vertex[v]))
        .collect();

    let mut convenient = Vec::new();
    for v in (0..g.order()).filter(|&v| d(v) == 5) {
        let around = faces.around(p, v);
        if around.iter().any(|&f| faces.degree(f) != 3) {
            continue;
        }
        let ring = p.rotation(v).to_vec();
        let mut checks = Vec::new();
        for i in 0..ring.len() {
            let (a, b) = (ring[i], ring[(i + 1) % ring.len()]);
            let Some(f) = faces.face_of_dart(p, a, b) else {
                continue;
            };
            let face = faces.get(f);
            let six_pair = d(a) == 6 && d(b) == 6 && g.common_neighbors(a, b) == vec![v];
            let others: BTreeSet<Vertex> = face.walk.iter().copied().filter(|&x| x != a && x != b).collect();
            checks.push(ConvenientCheck {
                index: i,
                face: f,
                face_degree: face.degree(),
                convenient: face.degree() >= 4 && !face.contains(v) && six_pair,
                quadrangle_with_two_fives: face.degree() == 4
                    && others.len() == 2
                    && others.iter().all(|&x| d(x) == 5),
            });
        }
        convenient.push(ConvenientInventory {
            vertex: v,
            ring,
            faces: checks,
        });
    }

    Ok(AuditReport {
        p1: min_degree == 5,
        p2: p2_witnesses.is_empty(),
        p3: p3_witnesses.is_empty(),
        walks: faces.iter().map(|f| f.walk.clone()).collect(),
        initial,
        after,
        transfers: log,
        min_degree,
        p2_witnesses,
        p3_witnesses,
        negative_big_vertices,
        negative_big_faces,
        negative_five_vertices,
        convenient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::FamilySpec;

    fn plane(tag: &str, param: Option<&str>) -> PlaneGraph {
        FamilySpec::parse(tag, param).unwrap().make().unwrap().plane.unwrap()
    }

    #[test]
    fn initial_totals() {
        let k3 = initial_charges(&plane("cycle", Some("3"))).unwrap();
        assert_eq!(k3.vertex, vec![-48; 3]);
        assert_eq!(k3.face, vec![0, 0]);
        assert_eq!(k3.total(), -144);
        let ico = initial_charges(&plane("icosahedron", None)).unwrap();
        assert_eq!((ico.vertex.iter().sum::<i64>(), ico.face.len()), (-144, 20));
        let c5 = initial_charges(&plane("cycle", Some("5"))).unwrap();
        assert_eq!((c5.vertex.iter().sum::<i64>(), c5.face.iter().sum::<i64>()), (-240, 96));
        let split = PlaneGraph::new(vec![vec![1], vec![0], vec![]]).unwrap();
        assert_eq!(initial_charges(&split), Err(DischargeError::Disconnected));
    }

    #[test]
    fn no_transfers_without_hypotheses() {
        for (tag, param) in [("icosahedron", None), ("cycle", Some("5"))] {
            let p = plane(tag, param);
            let s = initial_charges(&p).unwrap();
            let (after, log) = apply_rules(&p, &s);
            assert!(log.is_empty(), "{tag}");
            assert_eq!(after, s);
        }
    }

    #[test]
    fn audit_predicates() {
        let ico = audit(&plane("icosahedron", None)).unwrap();
        assert!(ico.p1 && !ico.p2);
        assert_eq!(ico.p2_witnesses.len(), 12);
        assert_eq!(ico.negative_five_vertices.len(), 12);
        assert_eq!(ico.convenient.len(), 12);
        let k4 = audit(&plane("complete", Some("4"))).unwrap();
        assert!(!k4.p1);
        assert_eq!(k4.min_degree, 3);
    }
}

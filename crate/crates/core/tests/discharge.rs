mod common;

use oddchrom::discharge::{apply_rules, audit, initial_charges, Rule, Source, Transfer};
use oddchrom::PlaneGraph;

/// Double wheel on an 8-cycle (hubs 0 and 9) with vertex 10 added inside the face
/// 9-2-1. Vertices 1 and 2 become 5-vertices, 0 keeps degree 8 and 9 has degree 9.
fn double_wheel_with_split() -> PlaneGraph {
    let rim = |i: usize| 1 + (i - 1) % 8;
    let mut faces = Vec::new();
    for i in 1..=8 {
        faces.push(vec![0, rim(i), rim(i + 1)]);
        if i != 1 {
            faces.push(vec![9, rim(i + 1), rim(i)]);
        }
    }
    faces.extend([vec![9, 2, 10], vec![2, 1, 10], vec![1, 9, 10]]);
    PlaneGraph::from_faces(11, &faces).unwrap()
}

fn r2(log: &[Transfer], from: usize, to: usize) -> Option<i64> {
    log.iter()
        .find(|t| t.rule == Rule::R2 && t.from == Source::Vertex(from) && t.to == to)
        .map(|t| t.amount)
}

#[test]
fn r2_amounts() {
    let p = double_wheel_with_split();
    assert_eq!(p.check_euler(), Ok(true));
    assert_eq!((p.degree(0), p.degree(9), p.degree(1), p.degree(2)), (8, 9, 5, 5));
    let (after, log) = apply_rules(&p, &initial_charges(&p).unwrap());
    // triangle 0-1-2 holds the second 5-vertex
    assert_eq!(r2(&log, 0, 1), Some(4));
    assert_eq!(r2(&log, 0, 2), Some(4));
    // edge 9-1 lies between triangles 9-8-1 and 9-1-10, neither with another 5-vertex
    assert_eq!(r2(&log, 9, 1), Some(6));
    assert_eq!(r2(&log, 9, 2), Some(6));
    assert_eq!(log.len(), 4);
    assert_eq!(after.vertex[1], 12 * (5 - 6) + 4 + 6);
    assert_eq!(after.total(), -144);
}

#[test]
fn r3_through_six_six_edge() {
    let graphs = common::planar_code("plane_2conn_9_14_sample.pc");
    let mut seen = 0;
    for p in &graphs {
        let (_, log) = apply_rules(p, &initial_charges(p).unwrap());
        for t in log.iter().filter(|t| t.rule == Rule::R3) {
            let (u, w) = t.via.unwrap();
            assert_eq!((p.degree(u), p.degree(w), p.degree(t.to)), (6, 6, 5));
            assert!(p.graph().has_edge(u, t.to) && p.graph().has_edge(w, t.to));
            assert_eq!(t.amount, 6);
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn conservation_on_corpus() {
    for p in common::plane_corpus() {
        let s = initial_charges(&p).unwrap();
        assert_eq!(s.total(), -144);
        let (after, log) = apply_rules(&p, &s);
        assert_eq!(after.total(), -144);
        assert!(log.iter().all(|t| matches!((t.rule, t.amount), (Rule::R1, 12) | (Rule::R2, 4 | 6) | (Rule::R3, 6))));
    }
}

#[test]
fn predicates_on_corpus() {
    let mut graphs = common::plane_corpus();
    let mut p = oddchrom::generators::FamilySpec::Icosahedron.make().unwrap().plane.unwrap();
    for _ in 0..3 {
        p = common::midpoint_subdivision(&p);
        graphs.push(p.clone());
    }
    let mut conditional = 0;
    for p in &graphs {
        let report = audit(p).unwrap();
        assert_eq!(report.conditional_violations(), 0);
        if report.p2 {
            assert!(report.p3, "P2 without P3");
        }
        if report.p1 && report.p2 {
            conditional += 1;
        }
    }
    assert!(conditional >= 3);
}

#[test]
fn geodesic_sphere_audit() {
    let ico = oddchrom::generators::FamilySpec::Icosahedron.make().unwrap().plane.unwrap();
    let p = common::midpoint_subdivision(&ico);
    let report = audit(&p).unwrap();
    assert!(report.p1 && report.p2 && report.p3);
    assert!(report.transfers.is_empty());
    // every 5-vertex stays at -12 and sits among triangles only
    assert_eq!(report.negative_five_vertices.len(), 12);
    assert_eq!(report.convenient.len(), 12);
    assert!(report.convenient.iter().all(|inv| inv.faces.iter().all(|c| !c.convenient)));
    let json = report.to_json();
    assert_eq!(json["total"]["after"], -144);
    assert_eq!(json["predicates"]["P2"], true);
}

mod common;

use oddchrom::coloring::{forbidden_colors_at, verify};
use oddchrom::generators::FamilySpec;
use oddchrom::reducer::{color9, find_reduction, reduction_sites, ReductionKind, PALETTE};
use oddchrom::solver::{find_odd_coloring, SolveOptions};
use oddchrom::{Coloring, PlaneGraph};

fn icosahedron() -> PlaneGraph {
    FamilySpec::Icosahedron.make().unwrap().plane.unwrap()
}

fn check(p: &PlaneGraph) -> oddchrom::reducer::Color9 {
    let r = color9(p).unwrap();
    assert!(verify(p.graph(), &r.coloring));
    assert!(r.coloring.max_color().unwrap() <= PALETTE);
    r
}

#[test]
fn quadrangle_sites_extend() {
    let graphs = common::planar_code("c11_quad_sites.pc");
    let mut sites = 0;
    for p in &graphs {
        for r in reduction_sites(p).into_iter().filter(|r| r.kind == ReductionKind::C11Quad) {
            let (q, map) = r.reduce(p).unwrap();
            assert_eq!(q.order(), p.order() - 4);
            assert_eq!(r.extension_order().len(), 3);
            let sub = find_odd_coloring(q.graph(), PALETTE, &SolveOptions::default()).witness.unwrap();
            let lifted = r.lift(p, &map, &sub).expect("three-stage extension");
            assert!(verify(p.graph(), &lifted));
            sites += 1;
        }
        check(p);
    }
    assert!(sites >= 20);
}

#[test]
fn ring_contraction_on_geodesic_spheres() {
    let mut p = icosahedron();
    for _ in 0..2 {
        p = common::midpoint_subdivision(&p);
        let first = find_reduction(&p).unwrap();
        assert_eq!(first.kind, ReductionKind::C7Contract);
        let (q, _) = first.reduce(&p).unwrap();
        assert_eq!(q.check_euler(), Ok(true));
        let r = check(&p);
        assert_eq!(r.trace[0].kind, "C7Contract");
        assert_eq!(r.fallbacks, 0);
    }
}

#[test]
fn five_vertex_bound() {
    // every site of kind 4 leaves at least one color free at k = 9
    let mut rng = common::rng(3);
    let mut checked = 0;
    let mut graphs = vec![icosahedron()];
    graphs.extend((0..30).map(|i| common::random_triangulation(12 + i, &mut rng)));
    graphs.extend(common::planar_code("mindeg5_triangulations_12_20.pc"));
    for p in &graphs {
        for r in reduction_sites(p) {
            if r.kind != ReductionKind::FiveVertexTwoOddNbrs {
                continue;
            }
            let v = r.site[0];
            let (q, map) = r.reduce(p).unwrap();
            let sub = color9(&q).map(|c| c.coloring).unwrap_or_else(|_| {
                find_odd_coloring(q.graph(), PALETTE, &SolveOptions::default()).witness.unwrap()
            });
            let mut c = Coloring::empty(p.order(), PALETTE);
            for x in 0..p.order() {
                if let Some(y) = map.get(x) {
                    c.set(x, sub.get(y).unwrap()).unwrap();
                }
            }
            c.set(v, 1).unwrap();
            let forbidden = forbidden_colors_at(p.graph(), &c, v).unwrap();
            assert!(forbidden.len() <= 8, "{forbidden:?}");
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn contractions_stay_plane() {
    for p in common::planar_code("plane_connected_3_7.pc") {
        for r in reduction_sites(&p) {
            if matches!(r.kind, ReductionKind::Degree4Contract | ReductionKind::Degree2Bridge) {
                let (q, _) = r.reduce(&p).unwrap();
                assert!(q.graph().is_well_formed());
                assert_eq!(q.check_euler(), Ok(true));
            }
        }
    }
}

#[test]
fn progress_bounds_trace_length() {
    let mut rng = common::rng(11);
    for n in [20, 60, 120] {
        let p = common::random_triangulation(n, &mut rng);
        let r = check(&p);
        assert!(r.trace.len() <= n);
        assert_eq!(r.trace[0].graph_size_before, n);
        assert!(r.trace.windows(2).all(|w| w[0].graph_size_before > w[1].graph_size_before));
    }
}

#[test]
fn families() {
    let c5 = FamilySpec::Cycle(5).make().unwrap().plane.unwrap();
    assert_eq!(check(&c5).coloring.colors_used(), 5);
    check(&icosahedron());
    let k2 = FamilySpec::Path(2).make().unwrap().plane.unwrap();
    assert_eq!(check(&k2).coloring.as_slice(), &[Some(1), Some(2)]);
}

mod common;

use oddchrom::generators::complete;
use oddchrom::io::{encode_graph6, encode_planar_code, parse_graph6, parse_planar_code, Format};
use oddchrom::Graph;

// Reference strings produced by networkx.to_graph6_bytes.
#[test]
fn graph6_reference_strings() {
    assert_eq!(parse_graph6("Bw").unwrap(), complete(3));
    assert_eq!(parse_graph6("C~").unwrap(), complete(4));
    assert_eq!(parse_graph6("@").unwrap(), complete(1));
    let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
    assert_eq!(encode_graph6(&c5), "Dhc");
    assert_eq!(parse_graph6("Dhc").unwrap(), c5);
}

#[test]
fn graph6_roundtrip_on_atlas() {
    let text = std::fs::read_to_string(common::data_path("connected_upto7.g6")).unwrap();
    let mut count = 0;
    for line in text.lines() {
        let g = parse_graph6(line).unwrap();
        assert!(g.is_connected());
        assert_eq!(encode_graph6(&g), line);
        count += 1;
    }
    assert_eq!(count, 996);
}

#[test]
fn plantri_triangulation_counts() {
    let graphs = common::planar_code("triangulations_4_11.pc");
    let mut by_order = std::collections::BTreeMap::new();
    for p in &graphs {
        *by_order.entry(p.order()).or_insert(0) += 1;
        assert_eq!(p.graph().size(), 3 * p.order() - 6);
        assert!(p.faces().iter().all(|f| f.degree() == 3));
    }
    let counts: Vec<usize> = by_order.values().copied().collect();
    assert_eq!(counts, vec![1, 1, 2, 5, 14, 50, 233, 1249]);
    // the only triangulation on four vertices is K4
    assert_eq!(graphs[0].graph(), &complete(4));
}

#[test]
fn planar_code_roundtrip_and_face_partition() {
    for name in common::PLANE_CORPUS {
        let bytes = std::fs::read(common::data_path(name)).unwrap();
        assert_eq!(Format::detect(&bytes), Format::PlanarCode);
        let graphs = parse_planar_code(&bytes).unwrap();
        assert_eq!(encode_planar_code(&graphs), bytes, "{name}");
        for p in &graphs {
            let faces = p.faces();
            let darts: usize = faces.iter().map(|f| f.walk.len()).sum();
            assert_eq!(darts, 2 * p.graph().size());
            assert_eq!(p.check_euler(), Ok(true));
        }
    }
}

#[test]
fn format_detection() {
    assert_eq!(Format::detect(b"Bw\n"), Format::Graph6);
    assert_eq!(Format::detect(b">>graph6<<Bw\n"), Format::Graph6);
}

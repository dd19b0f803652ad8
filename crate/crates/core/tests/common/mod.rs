#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use oddchrom::io::{parse_graph6, parse_planar_code};
use oddchrom::{Graph, PlaneGraph};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn planar_code(name: &str) -> Vec<PlaneGraph> {
    let bytes = std::fs::read(data_path(name)).unwrap();
    parse_planar_code(&bytes).unwrap()
}

pub fn graph6(name: &str) -> Vec<Graph> {
    std::fs::read_to_string(data_path(name))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_graph6(l).unwrap())
        .collect()
}

/// Every plane-graph corpus file.
pub const PLANE_CORPUS: [&str; 7] = [
    "plane_connected_3_7.pc",
    "plane_2conn_8.pc",
    "plane_2conn_9_14_sample.pc",
    "triangulations_4_11.pc",
    "triangulations_12.pc",
    "triangulations_13_14_sample.pc",
    "mindeg5_triangulations_12_20.pc",
];

pub fn plane_corpus() -> Vec<PlaneGraph> {
    PLANE_CORPUS.iter().flat_map(|f| planar_code(f)).collect()
}

/// Random triangulation on `n >= 3` vertices: repeated face splits followed by
/// random edge flips.
pub fn random_triangulation(n: usize, rng: &mut StdRng) -> PlaneGraph {
    assert!(n >= 3);
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let f = rng.random_range(0..faces.len());
        let [a, b, c] = faces[f];
        faces[f] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    let mut dart: HashMap<(usize, usize), usize> = HashMap::new();
    let mut degree = vec![0usize; n];
    for (i, f) in faces.iter().enumerate() {
        for k in 0..3 {
            dart.insert((f[k], f[(k + 1) % 3]), i);
            degree[f[k]] += 1;
        }
    }
    for _ in 0..4 * n {
        let f1 = rng.random_range(0..faces.len());
        let k = rng.random_range(0..3);
        let (u, v) = (faces[f1][k], faces[f1][(k + 1) % 3]);
        let a = faces[f1][(k + 2) % 3];
        let f2 = dart[&(v, u)];
        let b = *faces[f2].iter().find(|&&x| x != u && x != v).unwrap();
        if degree[u] <= 3 || degree[v] <= 3 || a == b || dart.contains_key(&(a, b)) {
            continue;
        }
        for f in [f1, f2] {
            for k in 0..3 {
                dart.remove(&(faces[f][k], faces[f][(k + 1) % 3]));
            }
        }
        faces[f1] = [a, u, b];
        faces[f2] = [b, v, a];
        for f in [f1, f2] {
            for k in 0..3 {
                dart.insert((faces[f][k], faces[f][(k + 1) % 3]), f);
            }
        }
        degree[u] -= 1;
        degree[v] -= 1;
        degree[a] += 1;
        degree[b] += 1;
    }
    let walks: Vec<Vec<usize>> = faces.iter().map(|f| f.to_vec()).collect();
    PlaneGraph::from_faces(n, &walks).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Splits every triangular face of `p` into four through edge midpoints.
pub fn midpoint_subdivision(p: &PlaneGraph) -> PlaneGraph {
    let n = p.order();
    let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, (u, v)) in p.graph().edges().enumerate() {
        mid.insert((u, v), n + i);
        mid.insert((v, u), n + i);
    }
    let mut walks = Vec::new();
    for f in p.faces().iter() {
        let w = &f.walk;
        assert_eq!(w.len(), 3, "triangulations only");
        let (a, b, c) = (w[0], w[1], w[2]);
        let (ab, bc, ca) = (mid[&(a, b)], mid[&(b, c)], mid[&(c, a)]);
        walks.extend([vec![a, ab, ca], vec![ab, b, bc], vec![ca, bc, c], vec![ab, bc, ca]]);
    }
    PlaneGraph::from_faces(n + p.graph().size(), &walks).unwrap()
}

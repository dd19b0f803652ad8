//! DIMACS CNF encoding of "G has an odd k-coloring".
//!
//! Variable `x(v, c)` (v 0-based, c in 1..=k) is `v * k + c`. For each non-isolated
//! vertex v and color c a chain of XOR auxiliaries computes the parity of c on N(v);
//! at least one of those parities must be true. Comment lines before the header map
//! every variable back to its meaning.

use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::{Coloring, ColoringError};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarMeaning {
    /// Vertex has this color.
    Color { vertex: Vertex, color: usize },
    /// Parity of `color` over the first `step + 2` neighbours of `vertex`.
    Parity { vertex: Vertex, color: usize, step: usize },
}

#[derive(Debug, Clone)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
    /// `vars[i]` describes variable `i + 1`.
    pub vars: Vec<VarMeaning>,
    n: usize,
    k: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("model sets {count} colors on vertex {vertex}")]
    BadModel { vertex: Vertex, count: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

impl Cnf {
    pub fn color_var(&self, v: Vertex, c: usize) -> i64 {
        (v * self.k + c) as i64
    }

    pub fn palette(&self) -> usize {
        self.k
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        writeln!(out, "c odd coloring n={} k={}", self.n, self.k).unwrap();
        for (i, m) in self.vars.iter().enumerate() {
            match m {
                VarMeaning::Color { vertex, color } => {
                    writeln!(out, "c var {} x {} {}", i + 1, vertex + 1, color).unwrap()
                }
                VarMeaning::Parity {
                    vertex,
                    color,
                    step,
                } => writeln!(out, "c var {} p {} {} {}", i + 1, vertex + 1, color, step).unwrap(),
            }
        }
        writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len()).unwrap();
        for cl in &self.clauses {
            for lit in cl {
                write!(out, "{lit} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }

    /// Reads a coloring from a model given as the set of true variables.
    pub fn decode(&self, model: &[i64]) -> Result<Coloring, CnfError> {
        decode_with(&self.vars, self.n, self.k, model)
    }
}

fn decode_with(
    vars: &[VarMeaning],
    n: usize,
    k: usize,
    model: &[i64],
) -> Result<Coloring, CnfError> {
    let mut colors = vec![Vec::new(); n];
    for &lit in model {
        if lit <= 0 {
            continue;
        }
        if let Some(VarMeaning::Color { vertex, color }) = vars.get(lit as usize - 1) {
            colors[*vertex].push(*color);
        }
    }
    let mut out = Vec::with_capacity(n);
    for (v, cs) in colors.into_iter().enumerate() {
        if cs.len() != 1 {
            return Err(CnfError::BadModel {
                vertex: v,
                count: cs.len(),
            });
        }
        out.push(cs[0]);
    }
    Ok(Coloring::from_colors(k, out)?)
}

pub fn export_cnf(g: &Graph, k: usize) -> Cnf {
    let n = g.order();
    let mut vars = Vec::with_capacity(n * k);
    for v in 0..n {
        for c in 1..=k {
            vars.push(VarMeaning::Color {
                vertex: v,
                color: c,
            });
        }
    }
    let x = |v: Vertex, c: usize| (v * k + c) as i64;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    for v in 0..n {
        clauses.push((1..=k).map(|c| x(v, c)).collect());
        for c in 1..=k {
            for d in c + 1..=k {
                clauses.push(vec![-x(v, c), -x(v, d)]);
            }
        }
    }
    for (u, v) in g.edges() {
        for c in 1..=k {
            clauses.push(vec![-x(u, c), -x(v, c)]);
        }
    }
    for v in 0..n {
        let nb = g.neighbors(v);
        if nb.is_empty() {
            continue;
        }
        let mut odd_lits = Vec::with_capacity(k);
        for c in 1..=k {
            let mut acc = x(nb[0], c);
            for (step, &u) in nb[1..].iter().enumerate() {
                vars.push(VarMeaning::Parity {
                    vertex: v,
                    color: c,
                    step,
                });
                let t = vars.len() as i64;
                let b = x(u, c);
                // t <-> acc xor b
                clauses.push(vec![-t, acc, b]);
                clauses.push(vec![-t, -acc, -b]);
                clauses.push(vec![t, -acc, b]);
                clauses.push(vec![t, acc, -b]);
                acc = t;
            }
            odd_lits.push(acc);
        }
        clauses.push(odd_lits);
    }
    if k == 0 && n > 0 {
        // an empty clause is not portable DIMACS; use a contradictory pair instead
        vars.push(VarMeaning::Parity {
            vertex: 0,
            color: 0,
            step: 0,
        });
        let t = vars.len() as i64;
        clauses.retain(|c| !c.is_empty());
        clauses.push(vec![t]);
        clauses.push(vec![-t]);
    }
    Cnf {
        num_vars: vars.len(),
        clauses,
        vars,
        n,
        k,
    }
}

/// Decodes a model using only the variable map in the comments of `dimacs`.
pub fn decode_dimacs_model(dimacs: &str, model: &[i64]) -> Result<Coloring, CnfError> {
    let mut n = None;
    let mut k = None;
    let mut vars = Vec::new();
    for (i, line) in dimacs.lines().enumerate() {
        let err = |m: &str| CnfError::Parse {
            line: i + 1,
            message: m.to_string(),
        };
        let Some(rest) = line.strip_prefix("c ") else {
            continue;
        };
        let fields: Vec<&str> = rest.split_whitespace().collect();
        match fields.as_slice() {
            ["odd", "coloring", nf, kf] => {
                let num = |s: &str, p: &str| s.strip_prefix(p).and_then(|s| s.parse::<usize>().ok());
                n = Some(num(nf, "n=").ok_or_else(|| err("bad n"))?);
                k = Some(num(kf, "k=").ok_or_else(|| err("bad k"))?);
            }
            ["var", id, "x", v, c] => {
                let parse = |s: &str| s.parse::<usize>().map_err(|_| err("bad number"));
                let (id, v, c) = (parse(id)?, parse(v)?, parse(c)?);
                if id == 0 || v == 0 {
                    return Err(err("indices are 1-based"));
                }
                if vars.len() < id {
                    vars.resize(
                        id,
                        VarMeaning::Parity {
                            vertex: 0,
                            color: 0,
                            step: 0,
                        },
                    );
                }
                vars[id - 1] = VarMeaning::Color {
                    vertex: v - 1,
                    color: c,
                };
            }
            _ => {}
        }
    }
    let (Some(n), Some(k)) = (n, k) else {
        return Err(CnfError::Parse {
            line: 0,
            message: "missing odd coloring comment".into(),
        });
    };
    decode_with(&vars, n, k, model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let cnf = export_cnf(&p3, 3);
        assert_eq!(cnf.color_var(1, 2), 5);
        // 9 color vars plus 3 parity aux for the middle vertex
        assert_eq!(cnf.num_vars, 12);
        let text = cnf.to_dimacs();
        assert!(text.contains("p cnf 12 "));
        assert!(text.contains("c var 5 x 2 2"));
    }

    #[test]
    fn decode_roundtrip() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let cnf = export_cnf(&p3, 3);
        let model = [cnf.color_var(0, 1), cnf.color_var(1, 2), cnf.color_var(2, 3), -4];
        let c = cnf.decode(&model).unwrap();
        assert_eq!(c.as_slice(), &[Some(1), Some(2), Some(3)]);
        let again = decode_dimacs_model(&cnf.to_dimacs(), &model).unwrap();
        assert_eq!(again, c);
        assert!(matches!(
            cnf.decode(&[1]),
            Err(CnfError::BadModel { vertex: 1, count: 0 })
        ));
    }
}

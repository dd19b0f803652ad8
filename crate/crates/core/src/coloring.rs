//! Colorings, the proper and odd predicates, and forbidden-color computations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Colors are `1..=k`.
pub type Color = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("color {color} at vertex {vertex} outside 1..={k}")]
    ColorOutOfRange { vertex: Vertex, color: Color, k: usize },
    #[error("vertex {0} is not colored")]
    Unassigned(Vertex),
    #[error("vertex {0} is isolated")]
    Isolated(Vertex),
    #[error("vertex {vertex} out of range for {order} vertices")]
    UnknownVertex { vertex: Vertex, order: usize },
    #[error("coloring covers {got} vertices, graph has {expected}")]
    OrderMismatch { expected: usize, got: usize },
    #[error("palette of {0} colors is too large for this operation")]
    PaletteTooLarge(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A total or partial assignment of colors `1..=k` to vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    k: usize,
    colors: Vec<Option<Color>>,
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    k: usize,
    colors: BTreeMap<usize, Color>,
}

impl Coloring {
    /// Nothing assigned.
    pub fn empty(n: usize, k: usize) -> Self {
        Coloring {
            k,
            colors: vec![None; n],
        }
    }

    /// Total coloring from a color per vertex.
    pub fn from_colors(k: usize, colors: Vec<Color>) -> Result<Self, ColoringError> {
        Self::from_partial(k, colors.into_iter().map(Some).collect())
    }

    pub fn from_partial(k: usize, colors: Vec<Option<Color>>) -> Result<Self, ColoringError> {
        for (vertex, c) in colors.iter().enumerate() {
            if let Some(color) = *c {
                if color == 0 || color > k {
                    return Err(ColoringError::ColorOutOfRange { vertex, color, k });
                }
            }
        }
        Ok(Coloring { k, colors })
    }

    pub fn palette(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.colors.len()
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: Vertex, color: Color) -> Result<(), ColoringError> {
        if color == 0 || color > self.k {
            return Err(ColoringError::ColorOutOfRange { vertex: v, color, k: self.k });
        }
        let order = self.colors.len();
        let slot = self
            .colors
            .get_mut(v)
            .ok_or(ColoringError::UnknownVertex { vertex: v, order })?;
        *slot = Some(color);
        Ok(())
    }

    pub fn clear(&mut self, v: Vertex) {
        if let Some(slot) = self.colors.get_mut(v) {
            *slot = None;
        }
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    pub fn as_slice(&self) -> &[Option<Color>] {
        &self.colors
    }

    /// Colors of a total coloring. Errors at the first unassigned vertex.
    pub fn to_total(&self) -> Result<Vec<Color>, ColoringError> {
        self.colors
            .iter()
            .enumerate()
            .map(|(v, c)| c.ok_or(ColoringError::Unassigned(v)))
            .collect()
    }

    /// Number of distinct colors in use.
    pub fn colors_used(&self) -> usize {
        let mut seen: Vec<Color> = self.colors.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn max_color(&self) -> Option<Color> {
        self.colors.iter().flatten().copied().max()
    }

    /// Same assignment with palette `k`; fails if a used color exceeds it.
    pub fn with_palette(&self, k: usize) -> Result<Self, ColoringError> {
        Self::from_partial(k, self.colors.clone())
    }

    /// Pads with unassigned vertices or truncates to `n` vertices.
    pub fn resized(&self, n: usize) -> Self {
        let mut colors = self.colors.clone();
        colors.resize(n, None);
        Coloring { k: self.k, colors }
    }

    /// `{"k": k, "colors": {"<vertex>": color, ...}}` with 1-based vertex ids in
    /// numeric order; unassigned vertices are omitted.
    pub fn to_json(&self) -> String {
        let doc = ColoringJson {
            k: self.k,
            colors: self
                .colors
                .iter()
                .enumerate()
                .filter_map(|(v, c)| c.map(|c| (v + 1, c)))
                .collect(),
        };
        serde_json::to_string(&doc).expect("plain data serializes")
    }

    /// Parses the JSON form. The order is the largest vertex id present.
    pub fn from_json(text: &str) -> Result<Self, ColoringError> {
        let doc: ColoringJson = serde_json::from_str(text).map_err(|e| ColoringError::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let n = doc.colors.keys().max().copied().unwrap_or(0);
        let mut colors = vec![None; n];
        for (&v, &c) in &doc.colors {
            if v == 0 {
                return Err(ColoringError::Parse {
                    line: 1,
                    message: "vertex ids are 1-based".into(),
                });
            }
            colors[v - 1] = Some(c);
        }
        Self::from_partial(doc.k, colors)
    }

    /// Plain text: a `# k <k>` header, then `vertex color` per line (1-based ids).
    pub fn to_text(&self) -> String {
        let mut out = format!("# k {}\n", self.k);
        for (v, c) in self.colors.iter().enumerate() {
            if let Some(c) = c {
                writeln!(out, "{} {}", v + 1, c).unwrap();
            }
        }
        out
    }

    /// Parses the text form. Without a `# k` header the palette is the largest color.
    pub fn from_text(text: &str) -> Result<Self, ColoringError> {
        let mut k = None;
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |message: &str| ColoringError::Parse {
                line: i + 1,
                message: message.to_string(),
            };
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let mut words = rest.split_whitespace();
                if words.next() == Some("k") {
                    let value = words.next().ok_or_else(|| err("missing palette size"))?;
                    k = Some(value.parse::<usize>().map_err(|_| err("bad palette size"))?);
                }
                continue;
            }
            let mut words = line.split_whitespace();
            let (Some(v), Some(c), None) = (words.next(), words.next(), words.next()) else {
                return Err(err("expected `vertex color`"));
            };
            let v: usize = v.parse().map_err(|_| err("bad vertex id"))?;
            let c: usize = c.parse().map_err(|_| err("bad color"))?;
            if v == 0 {
                return Err(err("vertex ids are 1-based"));
            }
            pairs.push((v - 1, c));
        }
        let n = pairs.iter().map(|&(v, _)| v + 1).max().unwrap_or(0);
        let k = k.unwrap_or_else(|| pairs.iter().map(|&(_, c)| c).max().unwrap_or(0));
        let mut colors = vec![None; n];
        for (v, c) in pairs {
            colors[v] = Some(c);
        }
        Self::from_partial(k, colors)
    }
}

/// Per-vertex odd-color sets and the overall verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddReport {
    pub proper: bool,
    pub monochromatic_edges: Vec<(Vertex, Vertex)>,
    /// `None` for isolated vertices, which carry no odd constraint.
    pub odd_sets: Vec<Option<Vec<Color>>>,
    /// Non-isolated vertices whose odd set is empty.
    pub empty_odd_sets: Vec<Vertex>,
    pub verdict: bool,
}

fn check_order(g: &Graph, c: &Coloring) -> Result<(), ColoringError> {
    if c.order() != g.order() {
        return Err(ColoringError::OrderMismatch {
            expected: g.order(),
            got: c.order(),
        });
    }
    Ok(())
}

/// True iff no edge is monochromatic. Requires a total coloring.
pub fn is_proper(g: &Graph, c: &Coloring) -> Result<bool, ColoringError> {
    check_order(g, c)?;
    let colors = c.to_total()?;
    Ok(g.edges().all(|(u, v)| colors[u] != colors[v]))
}

/// Colors occurring an odd number of times on the neighbourhood of `v`, sorted.
pub fn odd_colors(g: &Graph, c: &Coloring, v: Vertex) -> Result<Vec<Color>, ColoringError> {
    check_order(g, c)?;
    if !g.contains(v) {
        return Err(ColoringError::UnknownVertex { vertex: v, order: g.order() });
    }
    if g.degree(v) == 0 {
        return Err(ColoringError::Isolated(v));
    }
    let mut counts = vec![0usize; c.palette() + 1];
    for &u in g.neighbors(v) {
        let col = c.get(u).ok_or(ColoringError::Unassigned(u))?;
        counts[col] += 1;
    }
    Ok((1..=c.palette()).filter(|&col| counts[col] % 2 == 1).collect())
}

/// Full odd-coloring check of a total coloring.
pub fn is_odd_coloring(g: &Graph, c: &Coloring) -> Result<OddReport, ColoringError> {
    check_order(g, c)?;
    let colors = c.to_total()?;
    let monochromatic_edges: Vec<_> = g.edges().filter(|&(u, v)| colors[u] == colors[v]).collect();
    let mut odd_sets = Vec::with_capacity(g.order());
    let mut empty_odd_sets = Vec::new();
    for v in 0..g.order() {
        if g.degree(v) == 0 {
            odd_sets.push(None);
            continue;
        }
        let set = odd_colors(g, c, v)?;
        if set.is_empty() {
            empty_odd_sets.push(v);
        }
        odd_sets.push(Some(set));
    }
    let proper = monochromatic_edges.is_empty();
    Ok(OddReport {
        proper,
        verdict: proper && empty_odd_sets.is_empty(),
        monochromatic_edges,
        odd_sets,
        empty_odd_sets,
    })
}

/// Convenience: total, proper and odd.
pub fn verify(g: &Graph, c: &Coloring) -> bool {
    is_odd_coloring(g, c).is_ok_and(|r| r.verdict)
}

fn parity_mask(g: &Graph, c: &Coloring, v: Vertex, skip: Vertex) -> Result<u64, ColoringError> {
    let mut mask = 0u64;
    for &u in g.neighbors(v) {
        if u == skip {
            continue;
        }
        let col = c.get(u).ok_or(ColoringError::Unassigned(u))?;
        mask ^= 1 << col;
    }
    Ok(mask)
}

/// Colors that cannot be given to `v` given the colors on every other vertex.
///
/// A color `c0` is allowed iff no neighbour of `v` has it, and every neighbour `u`
/// of `v` still sees some color an odd number of times once `v` gets `c0`. The odd
/// condition at `v` itself does not depend on `c0` and is not part of the result.
pub fn forbidden_colors_at(g: &Graph, c: &Coloring, v: Vertex) -> Result<Vec<Color>, ColoringError> {
    check_order(g, c)?;
    if !g.contains(v) {
        return Err(ColoringError::UnknownVertex { vertex: v, order: g.order() });
    }
    let k = c.palette();
    if k >= 63 {
        return Err(ColoringError::PaletteTooLarge(k));
    }
    let mut forbidden = 0u64;
    for &u in g.neighbors(v) {
        let col = c.get(u).ok_or(ColoringError::Unassigned(u))?;
        forbidden |= 1 << col;
        let mask = parity_mask(g, c, u, v)?;
        // adding c0 toggles bit c0; the set becomes empty iff it was exactly {c0}
        if mask.count_ones() == 1 {
            forbidden |= mask;
        }
    }
    Ok((1..=k).filter(|&col| forbidden >> col & 1 == 1).collect())
}

/// Extends a partial coloring over `order` (all other vertices must be colored),
/// trying colors in increasing order with backtracking. A vertex's odd condition is
/// enforced as soon as its whole neighbourhood is colored. Returns whether an
/// extension was found; on failure the coloring is left unchanged.
pub fn extend_coloring(g: &Graph, c: &mut Coloring, order: &[Vertex]) -> Result<bool, ColoringError> {
    check_order(g, c)?;
    let k = c.palette();
    if k >= 63 {
        return Err(ColoringError::PaletteTooLarge(k));
    }
    let mut pending = vec![false; g.order()];
    for &v in order {
        if !g.contains(v) {
            return Err(ColoringError::UnknownVertex { vertex: v, order: g.order() });
        }
        pending[v] = true;
    }
    for (v, &p) in pending.iter().enumerate() {
        if !p && c.get(v).is_none() {
            return Err(ColoringError::Unassigned(v));
        }
    }
    let mut missing = vec![0usize; g.order()];
    let mut mask = vec![0u64; g.order()];
    for v in 0..g.order() {
        for &u in g.neighbors(v) {
            match c.get(u) {
                Some(col) if !pending[u] => mask[v] ^= 1 << col,
                _ => missing[v] += 1,
            }
        }
    }
    // a pending vertex whose neighbourhood is already fixed cannot be repaired
    if order
        .iter()
        .any(|&v| g.degree(v) > 0 && missing[v] == 0 && mask[v] == 0)
    {
        return Ok(false);
    }
    let saved: Vec<Option<Color>> = order.iter().map(|&v| c.get(v)).collect();
    for &v in order {
        c.clear(v);
    }
    let mut state = Extension { g, k, c, missing, mask };
    let found = state.search(order);
    if !found {
        for (&v, &col) in order.iter().zip(&saved) {
            c.colors[v] = col;
        }
    }
    Ok(found)
}

struct Extension<'a> {
    g: &'a Graph,
    k: usize,
    c: &'a mut Coloring,
    missing: Vec<usize>,
    mask: Vec<u64>,
}

impl Extension<'_> {
    fn search(&mut self, order: &[Vertex]) -> bool {
        let Some((&x, rest)) = order.split_first() else {
            return true;
        };
        for col in 1..=self.k {
            if self.g.neighbors(x).iter().any(|&u| self.c.get(u) == Some(col)) {
                continue;
            }
            let bit = 1u64 << col;
            let mut ok = true;
            for &y in self.g.neighbors(x) {
                self.mask[y] ^= bit;
                self.missing[y] -= 1;
                if self.missing[y] == 0 && self.mask[y] == 0 {
                    ok = false;
                }
            }
            self.c.colors[x] = Some(col);
            if ok && self.search(rest) {
                return true;
            }
            self.c.colors[x] = None;
            for &y in self.g.neighbors(x) {
                self.mask[y] ^= bit;
                self.missing[y] += 1;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn col(k: usize, v: &[Color]) -> Coloring {
        Coloring::from_colors(k, v.to_vec()).unwrap()
    }

    #[test]
    fn proper_examples() {
        assert_eq!(is_proper(&cycle(4), &col(2, &[1, 2, 1, 2])), Ok(true));
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(is_proper(&k2, &col(1, &[1, 1])), Ok(false));
        assert_eq!(is_proper(&cycle(5), &col(4, &[1, 2, 1, 3, 4])), Ok(true));
        let partial = Coloring::from_partial(2, vec![Some(1), None]).unwrap();
        assert_eq!(is_proper(&k2, &partial), Err(ColoringError::Unassigned(1)));
    }

    #[test]
    fn odd_color_sets() {
        assert_eq!(odd_colors(&cycle(4), &col(2, &[1, 2, 1, 2]), 0), Ok(vec![]));
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(odd_colors(&star, &col(3, &[1, 2, 2, 3]), 0), Ok(vec![3]));
        let k1 = Graph::empty(1);
        assert_eq!(odd_colors(&k1, &col(1, &[1]), 0), Err(ColoringError::Isolated(0)));
    }

    #[test]
    fn odd_verdicts() {
        assert!(is_odd_coloring(&cycle(5), &col(5, &[1, 2, 3, 4, 5])).unwrap().verdict);
        let r = is_odd_coloring(&cycle(4), &col(2, &[1, 2, 1, 2])).unwrap();
        assert!(r.proper && !r.verdict);
        assert_eq!(r.empty_odd_sets, vec![0, 1, 2, 3]);
        assert!(is_odd_coloring(&Graph::empty(1), &col(1, &[1])).unwrap().verdict);
    }

    #[test]
    fn forbidden_for_pendant_vertex() {
        // P3 = 0-1-2 colored 1,2,_ ; vertex 2 hangs off 1, whose odd set without 2 is {1}
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let c = Coloring::from_partial(9, vec![Some(1), Some(2), None]).unwrap();
        let f = forbidden_colors_at(&p3, &c, 2).unwrap();
        assert_eq!(f, vec![1, 2]);
        for c0 in 1..=9 {
            let mut d = c.clone();
            d.set(2, c0).unwrap();
            assert_eq!(verify(&p3, &d), !f.contains(&c0));
        }
    }

    #[test]
    fn extension_backtracks() {
        let c5 = cycle(5);
        let mut c = Coloring::from_partial(5, vec![Some(1), Some(2), Some(3), Some(4), None]).unwrap();
        assert_eq!(extend_coloring(&c5, &mut c, &[4]), Ok(true));
        assert!(verify(&c5, &c));
        // vertex 3 of C4 sees color 1 twice whatever it gets
        let mut c = Coloring::from_partial(3, vec![Some(1), Some(2), Some(1), None]).unwrap();
        assert_eq!(extend_coloring(&cycle(4), &mut c, &[3]), Ok(false));
        assert_eq!(c.get(3), None);
    }

    #[test]
    fn serialization_formats() {
        let c = Coloring::from_partial(9, vec![Some(3), None, Some(1), Some(9), Some(2), Some(2), Some(1), Some(1), Some(1), Some(4), Some(5)]).unwrap();
        let json = c.to_json();
        assert_eq!(json, r#"{"k":9,"colors":{"1":3,"3":1,"4":9,"5":2,"6":2,"7":1,"8":1,"9":1,"10":4,"11":5}}"#);
        assert_eq!(Coloring::from_json(&json).unwrap(), c);
        let text = c.to_text();
        assert!(text.starts_with("# k 9\n1 3\n3 1\n"));
        assert_eq!(Coloring::from_text(&text).unwrap(), c);
        assert!(Coloring::from_text("1 2 3").is_err());
        assert!(Coloring::from_json(r#"{"k":2,"colors":{"1":3}}"#).is_err());
    }
}

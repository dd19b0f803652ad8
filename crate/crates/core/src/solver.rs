//! Exact search for odd (and ordinary) colorings.
//!
//! Vertices are colored in order of descending degree. Colors are interchangeable, so
//! the search only opens a new color `max_used + 1` and never skips one. A branch is
//! cut as soon as some vertex has its whole neighbourhood colored with every color
//! appearing an even number of times.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::coloring::{Color, Coloring};
use crate::graph::{Graph, Vertex};

/// Widest palette the bit-parallel search supports.
pub const MAX_PALETTE: usize = 127;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Found,
    /// The whole search space was explored: no coloring exists.
    Exhausted,
    /// The node budget ran out before a verdict.
    BudgetExhausted,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub witness: Option<Coloring>,
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Maximum number of search nodes; `None` is unlimited.
    pub budget: Option<u64>,
    /// Worker threads for the top-level branch split. `1` is deterministic.
    pub threads: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: None,
            threads: 1,
        }
    }
}

impl SolveOptions {
    pub fn with_budget(budget: u64) -> Self {
        SolveOptions {
            budget: Some(budget),
            ..Self::default()
        }
    }
}

/// Outcome of a minimum-palette search bounded by `max_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Exact(usize),
    /// No coloring with at most `max_k` colors.
    ExceedsBound,
    /// Palettes below `at` were ruled out; the search at `at` hit the budget.
    BudgetExhausted { at: usize },
}

#[derive(Debug, Clone)]
pub struct ChromaticResult {
    pub value: Bound,
    pub witness: Option<Coloring>,
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{k}^{n} assignments exceed the brute-force limit")]
    TooLarge { n: usize, k: usize },
}

/// Brute-force enumeration stops at this many assignments per palette.
pub const BRUTE_FORCE_LIMIT: u128 = 100_000_000;

pub fn find_odd_coloring(g: &Graph, k: usize, opts: &SolveOptions) -> SolveResult {
    solve(g, k, true, opts)
}

/// Ordinary proper coloring search (the odd condition is ignored).
pub fn find_proper_coloring(g: &Graph, k: usize, opts: &SolveOptions) -> SolveResult {
    solve(g, k, false, opts)
}

pub fn odd_chromatic_number(g: &Graph, max_k: usize, opts: &SolveOptions) -> ChromaticResult {
    minimum(g, max_k, true, opts)
}

pub fn chromatic_number(g: &Graph, max_k: usize, opts: &SolveOptions) -> ChromaticResult {
    minimum(g, max_k, false, opts)
}

fn minimum(g: &Graph, max_k: usize, odd: bool, opts: &SolveOptions) -> ChromaticResult {
    let start = Instant::now();
    let mut nodes = 0;
    for k in 1..=max_k {
        let mut o = *opts;
        o.budget = opts.budget.map(|b| b.saturating_sub(nodes));
        let r = solve(g, k, odd, &o);
        nodes += r.nodes;
        match r.status {
            SolveStatus::Found => {
                return ChromaticResult {
                    value: Bound::Exact(k),
                    witness: r.witness,
                    nodes,
                    elapsed: start.elapsed(),
                }
            }
            SolveStatus::BudgetExhausted => {
                return ChromaticResult {
                    value: Bound::BudgetExhausted { at: k },
                    witness: None,
                    nodes,
                    elapsed: start.elapsed(),
                }
            }
            SolveStatus::Exhausted => {}
        }
    }
    ChromaticResult {
        value: Bound::ExceedsBound,
        witness: None,
        nodes,
        elapsed: start.elapsed(),
    }
}

/// Search order: descending degree, ties by id.
pub fn search_order(g: &Graph) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = (0..g.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

fn solve(g: &Graph, k: usize, odd: bool, opts: &SolveOptions) -> SolveResult {
    let start = Instant::now();
    let n = g.order();
    // colors above n are never opened by the symmetry breaking
    let k_eff = k.min(n);
    assert!(k_eff <= MAX_PALETTE, "palette of {k_eff} colors not supported");
    let done = |status, witness: Option<Vec<Color>>, nodes| SolveResult {
        status,
        witness: witness.map(|w| Coloring::from_colors(k, w).expect("colors within palette")),
        nodes,
        elapsed: start.elapsed(),
    };
    if n == 0 {
        return done(SolveStatus::Found, Some(Vec::new()), 0);
    }
    if k_eff == 0 {
        return done(SolveStatus::Exhausted, None, 0);
    }
    let order = search_order(g);
    let budget = opts.budget.unwrap_or(u64::MAX);
    if opts.threads <= 1 {
        let mut s = Search::new(g, k_eff, odd, &order, budget, None);
        let step = s.dfs(0, 0);
        let status = match step {
            Step::Found => SolveStatus::Found,
            Step::Exhausted => SolveStatus::Exhausted,
            Step::Budget | Step::Stopped => SolveStatus::BudgetExhausted,
        };
        let witness = (step == Step::Found).then(|| s.colors());
        return done(status, witness, s.nodes);
    }
    parallel(g, k_eff, odd, &order, budget, opts.threads, &done)
}

fn parallel(
    g: &Graph,
    k: usize,
    odd: bool,
    order: &[Vertex],
    budget: u64,
    threads: usize,
    done: &dyn Fn(SolveStatus, Option<Vec<Color>>, u64) -> SolveResult,
) -> SolveResult {
    // Split on complete assignments of a short prefix of the order.
    let depth = order.len().min(6);
    let mut prefixes = Vec::new();
    {
        let mut s = Search::new(g, k, odd, order, u64::MAX, None);
        s.collect_prefixes(0, 0, depth, &mut Vec::new(), &mut prefixes);
    }
    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let nodes = AtomicU64::new(0);
    let budget_hit = AtomicBool::new(false);
    let witness: Mutex<Option<Vec<Color>>> = Mutex::new(None);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                if stop.load(Ordering::Relaxed) {
                    return;
                }
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(prefix) = prefixes.get(i) else {
                    return;
                };
                let mut s = Search::new(g, k, odd, order, budget, Some((&stop, &nodes)));
                let mut max_used = 0;
                for (idx, &col) in prefix.iter().enumerate() {
                    s.assign(order[idx], col);
                    max_used = max_used.max(col);
                }
                match s.dfs(prefix.len(), max_used) {
                    Step::Found => {
                        let mut w = witness.lock().unwrap();
                        if w.is_none() {
                            *w = Some(s.colors());
                        }
                        stop.store(true, Ordering::Relaxed);
                    }
                    Step::Budget => {
                        budget_hit.store(true, Ordering::Relaxed);
                        stop.store(true, Ordering::Relaxed);
                    }
                    Step::Exhausted | Step::Stopped => {}
                }
                s.flush();
            });
        }
    });
    let nodes = nodes.load(Ordering::Relaxed);
    let witness = witness.into_inner().unwrap();
    let status = if witness.is_some() {
        SolveStatus::Found
    } else if budget_hit.load(Ordering::Relaxed) {
        SolveStatus::BudgetExhausted
    } else {
        SolveStatus::Exhausted
    };
    done(status, witness, nodes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Found,
    Exhausted,
    Budget,
    Stopped,
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    odd: bool,
    order: &'a [Vertex],
    color: Vec<u8>,
    /// Parity of each color on the colored part of each neighbourhood.
    mask: Vec<u128>,
    /// Uncolored neighbours per vertex.
    missing: Vec<u32>,
    nodes: u64,
    flushed: u64,
    budget: u64,
    shared: Option<(&'a AtomicBool, &'a AtomicU64)>,
}

impl<'a> Search<'a> {
    fn new(
        g: &'a Graph,
        k: usize,
        odd: bool,
        order: &'a [Vertex],
        budget: u64,
        shared: Option<(&'a AtomicBool, &'a AtomicU64)>,
    ) -> Self {
        Search {
            g,
            k,
            odd,
            order,
            color: vec![0; g.order()],
            mask: vec![0; g.order()],
            missing: (0..g.order()).map(|v| g.degree(v) as u32).collect(),
            nodes: 0,
            flushed: 0,
            budget,
            shared,
        }
    }

    fn colors(&self) -> Vec<Color> {
        self.color.iter().map(|&c| c as Color).collect()
    }

    fn flush(&mut self) {
        if let Some((_, counter)) = self.shared {
            counter.fetch_add(self.nodes - self.flushed, Ordering::Relaxed);
            self.flushed = self.nodes;
        }
    }

    fn allowed(&self, x: Vertex, col: usize) -> bool {
        self.g.neighbors(x).iter().all(|&u| self.color[u] as usize != col)
    }

    /// Colors `x`; returns false if some neighbourhood became complete and all-even.
    fn assign(&mut self, x: Vertex, col: usize) -> bool {
        self.color[x] = col as u8;
        let bit = 1u128 << col;
        let mut ok = true;
        for &y in self.g.neighbors(x) {
            self.mask[y] ^= bit;
            self.missing[y] -= 1;
            if self.missing[y] == 0 && self.mask[y] == 0 {
                ok = false;
            }
        }
        ok || !self.odd
    }

    fn unassign(&mut self, x: Vertex) {
        let bit = 1u128 << self.color[x];
        self.color[x] = 0;
        for &y in self.g.neighbors(x) {
            self.mask[y] ^= bit;
            self.missing[y] += 1;
        }
    }

    fn dfs(&mut self, i: usize, max_used: usize) -> Step {
        if i == self.order.len() {
            return Step::Found;
        }
        self.nodes += 1;
        if let Some((stop, counter)) = self.shared {
            if self.nodes & 1023 == 0 {
                if stop.load(Ordering::Relaxed) {
                    return Step::Stopped;
                }
                self.flush();
                if counter.load(Ordering::Relaxed) > self.budget {
                    return Step::Budget;
                }
            }
        } else if self.nodes > self.budget {
            return Step::Budget;
        }
        let x = self.order[i];
        let limit = self.k.min(max_used + 1);
        for col in 1..=limit {
            if !self.allowed(x, col) {
                continue;
            }
            let ok = self.assign(x, col);
            if ok {
                match self.dfs(i + 1, max_used.max(col)) {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
            self.unassign(x);
        }
        Step::Exhausted
    }

    fn collect_prefixes(
        &mut self,
        i: usize,
        max_used: usize,
        depth: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == depth {
            out.push(current.clone());
            return;
        }
        let x = self.order[i];
        for col in 1..=self.k.min(max_used + 1) {
            if !self.allowed(x, col) {
                continue;
            }
            if self.assign(x, col) {
                current.push(col);
                self.collect_prefixes(i + 1, max_used.max(col), depth, current, out);
                current.pop();
            }
            self.unassign(x);
        }
    }
}

/// Proper and odd, checked directly on a color vector.
fn plain_check(g: &Graph, colors: &[usize], k: usize, counts: &mut [u32]) -> bool {
    if g.edges().any(|(u, v)| colors[u] == colors[v]) {
        return false;
    }
    for v in 0..g.order() {
        if g.degree(v) == 0 {
            continue;
        }
        counts[..=k].iter_mut().for_each(|c| *c = 0);
        for &u in g.neighbors(v) {
            counts[colors[u]] += 1;
        }
        if counts.iter().all(|c| c % 2 == 0) {
            return false;
        }
    }
    true
}

/// Minimum odd palette by enumerating every assignment; an oracle for the search.
/// Returns `Ok(None)` when more than `max_k` colors are needed.
pub fn brute_force_odd_chromatic(g: &Graph, max_k: usize) -> Result<Option<usize>, OracleError> {
    let n = g.order();
    for k in 1..=max_k {
        if (k as u128).checked_pow(n as u32).is_none_or(|c| c > BRUTE_FORCE_LIMIT) {
            return Err(OracleError::TooLarge { n, k });
        }
        let mut colors = vec![1usize; n];
        let mut counts = vec![0u32; k + 1];
        loop {
            if plain_check(g, &colors, k, &mut counts) {
                return Ok(Some(k));
            }
            // odometer increment
            let mut i = 0;
            while i < n && colors[i] == k {
                colors[i] = 1;
                i += 1;
            }
            if i == n {
                break;
            }
            colors[i] += 1;
        }
    }
    Ok(None)
}

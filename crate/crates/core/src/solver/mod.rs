//! Exact and heuristic solvers for the contextuality figure of merit.
//!
//! A labeling assigns each vertex ZERO, C or ONE. It is *valid* when every
//! context contains at least one vertex labeled C or ONE, and no two
//! adjacent vertices are labeled ONE. The set `T` of non-ZERO vertices is
//! then a context transversal and the ONE vertices form an independent
//! subset `A` of it, so a valid labeling witnesses `q_s <= |T| - |A| = #C`.
//! Minimizing the number of C labels over valid labelings is exactly the
//! double minimization of the figure of merit, and `q = q_s / n`.
//!
//! The exact solver sandwiches the optimum: `tau - alpha <= q_s <= UB`
//! where `tau` is the minimum transversal size, `alpha` the independence
//! number and `UB` comes from explicit labelings; any residual gap is
//! closed by a budgeted feasibility search over C counts.

mod brute;
mod exact;
mod heuristic;
mod hitting_set;

pub use brute::brute_force_qs;
pub use exact::{ks_noncontextually_colorable, solve_qs_exact};
pub use heuristic::solve_qs_heuristic;

use crate::graph::{clique_search, Context, OrthoGraph};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;
use thiserror::Error;

/// Per-vertex label in a contextuality assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    Zero,
    Contextual,
    One,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Zero => "0",
            Label::Contextual => "C",
            Label::One => "1",
        }
    }

    pub fn from_str_token(s: &str) -> Option<Label> {
        match s {
            "0" => Some(Label::Zero),
            "C" => Some(Label::Contextual),
            "1" => Some(Label::One),
            _ => None,
        }
    }
}

/// A full vertex labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling(pub Vec<Label>);

impl Labeling {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Indices labeled ONE, ascending.
    pub fn ones(&self) -> Vec<usize> {
        self.indices_of(Label::One)
    }

    /// Indices labeled C, ascending.
    pub fn contextual(&self) -> Vec<usize> {
        self.indices_of(Label::Contextual)
    }

    /// Indices labeled C or ONE (the transversal), ascending.
    pub fn transversal(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, l)| **l != Label::Zero)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn c_count(&self) -> usize {
        self.0.iter().filter(|l| **l == Label::Contextual).count()
    }

    fn indices_of(&self, which: Label) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == which)
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("labeling has length {found}, expected {expected}")]
    LabelingLengthMismatch { expected: usize, found: usize },
    #[error("the oracle enumerates 3^n labelings and accepts n <= {max}, got n = {n}")]
    TooLargeForOracle { n: usize, max: usize },
    #[error("graph contains the triangle {{{0}, {1}, {2}}}")]
    TriangleFound(usize, usize, usize),
    #[error("context list is empty")]
    NoContexts,
    #[error("context {index} is empty or has out-of-range or unsorted members")]
    BadContext { index: usize },
}

/// First reason a labeling fails, in deterministic scan order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Context at this index has no C or ONE member.
    UnhitContext { index: usize },
    /// Both endpoints of this edge are labeled ONE.
    AdjacentOnes { u: usize, v: usize },
}

/// Outcome of validation: `valid` plus the first violation when invalid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub violation: Option<Violation>,
}

/// Checks both validity rules, reporting the first violating context (in
/// list order) or edge (lowest endpoints) when the labeling is invalid.
///
/// # Errors
/// Rejects labelings whose length differs from the vertex count and
/// malformed context lists.
pub fn validate_labeling(
    graph: &OrthoGraph,
    contexts: &[Context],
    labeling: &Labeling,
) -> Result<ValidationReport, SolveError> {
    let n = graph.vertex_count();
    if labeling.len() != n {
        return Err(SolveError::LabelingLengthMismatch {
            expected: n,
            found: labeling.len(),
        });
    }
    check_contexts(n, contexts)?;
    for (index, ctx) in contexts.iter().enumerate() {
        let hit = ctx.iter().any(|&v| labeling.0[v] != Label::Zero);
        if !hit {
            return Ok(ValidationReport {
                valid: false,
                violation: Some(Violation::UnhitContext { index }),
            });
        }
    }
    for u in 0..n {
        if labeling.0[u] != Label::One {
            continue;
        }
        for v in graph.neighbors(u).iter() {
            if v > u && labeling.0[v] == Label::One {
                return Ok(ValidationReport {
                    valid: false,
                    violation: Some(Violation::AdjacentOnes { u, v }),
                });
            }
        }
    }
    Ok(ValidationReport {
        valid: true,
        violation: None,
    })
}

pub(crate) fn check_contexts(n: usize, contexts: &[Context]) -> Result<(), SolveError> {
    if contexts.is_empty() {
        return Err(SolveError::NoContexts);
    }
    for (index, ctx) in contexts.iter().enumerate() {
        let sorted = ctx.windows(2).all(|w| w[0] < w[1]);
        if ctx.is_empty() || !sorted || *ctx.last().unwrap() >= n {
            return Err(SolveError::BadContext { index });
        }
    }
    Ok(())
}

/// Search statistics attached to every solver result.
#[derive(Clone, Debug, Default)]
pub struct SolveStats {
    /// Branch-and-bound nodes (exact) or local-search moves (heuristic).
    pub nodes: u64,
    pub millis: u128,
    /// Seed, present only for heuristic results.
    pub seed: Option<u64>,
    /// Best proven lower bound on q_s (0 when nothing was proven).
    pub lower_bound: usize,
}

/// A solver answer: the figure of merit with its witnessing labeling.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub qs: usize,
    pub n: usize,
    pub labeling: Labeling,
    pub transversal: Vec<usize>,
    pub independent_part: Vec<usize>,
    pub optimal: bool,
    pub stats: SolveStats,
}

impl SolveResult {
    pub(crate) fn from_labeling(
        labeling: Labeling,
        optimal: bool,
        stats: SolveStats,
    ) -> SolveResult {
        let qs = labeling.c_count();
        SolveResult {
            qs,
            n: labeling.len(),
            transversal: labeling.transversal(),
            independent_part: labeling.ones(),
            labeling,
            optimal,
            stats,
        }
    }

    /// The density `q = q_s / n` as an exact reduced rational.
    pub fn q(&self) -> BigRational {
        BigRational::new(BigInt::from(self.qs), BigInt::from(self.n))
    }

    /// Serializes the result exactly as the CLI emits it.
    pub fn to_json(&self) -> String {
        let q = self.q();
        let labels: Vec<Value> = self
            .labeling
            .0
            .iter()
            .map(|l| Value::String(l.as_str().to_string()))
            .collect();
        let mut stats = serde_json::json!({
            "nodes": self.stats.nodes,
            "millis": self.stats.millis as u64,
            "lower_bound": self.stats.lower_bound,
        });
        if let Some(seed) = self.stats.seed {
            stats["seed"] = Value::from(seed);
        }
        let root = serde_json::json!({
            "qs": self.qs,
            "q": format!("{}/{}", q.numer(), q.denom()),
            "n": self.n,
            "labeling": labels,
            "transversal": self.transversal,
            "independent_part": self.independent_part,
            "optimal": self.optimal,
            "stats": stats,
        });
        serde_json::to_string_pretty(&root).expect("solve-result JSON cannot fail")
    }
}

/// Exact maximum independent set: maximum clique of the complement.
/// Deterministic; intended for instances up to a few hundred vertices.
pub fn max_independent_set(graph: &OrthoGraph) -> Vec<usize> {
    let mut best = clique_search(&graph.complement(), None).best;
    best.sort_unstable();
    best
}

pub(crate) struct MisOutcome {
    pub best: Vec<usize>,
    pub optimal: bool,
    /// Clique-cover upper bound on alpha, valid even on timeout.
    pub upper_bound: usize,
    pub nodes: u64,
}

pub(crate) fn mis_with_deadline(
    graph: &OrthoGraph,
    deadline: Option<std::time::Instant>,
) -> MisOutcome {
    let outcome = clique_search(&graph.complement(), deadline);
    let mut best = outcome.best;
    best.sort_unstable();
    MisOutcome {
        optimal: outcome.optimal,
        upper_bound: if outcome.optimal {
            best.len()
        } else {
            outcome.color_bound
        },
        nodes: outcome.nodes,
        best,
    }
}

/// Labels `transversal` with ONE on an exact maximum independent subset of
/// it and C on the rest, ZERO elsewhere. Valid whenever `transversal` hits
/// every context.
pub(crate) fn labeling_from_transversal(graph: &OrthoGraph, transversal: &[usize]) -> Labeling {
    let mut labels = vec![Label::Zero; graph.vertex_count()];
    if transversal.is_empty() {
        return Labeling(labels);
    }
    let induced = graph.induced(transversal);
    for &v in transversal {
        labels[v] = Label::Contextual;
    }
    for i in max_independent_set(&induced) {
        labels[transversal[i]] = Label::One;
    }
    Labeling(labels)
}

/// Exact minimum context transversal (hitting set over the context list).
///
/// # Errors
/// Rejects malformed context lists.
pub fn min_context_transversal(
    graph: &OrthoGraph,
    contexts: &[Context],
) -> Result<Vec<usize>, SolveError> {
    check_contexts(graph.vertex_count(), contexts)?;
    let outcome = hitting_set::solve(graph.vertex_count(), contexts, None, None);
    debug_assert!(outcome.optimal);
    Ok(outcome.best)
}

/// A witnessed size bound from a budgeted search. When `optimal` is false
/// the witness is still feasible, so `size` bounds the true optimum from
/// the witness's side (above for transversals, below for independent sets).
#[derive(Clone, Debug)]
pub struct SearchBound {
    pub size: usize,
    pub witness: Vec<usize>,
    pub optimal: bool,
}

/// Minimum-transversal search capped by a timeout.
///
/// # Errors
/// Rejects malformed context lists.
pub fn transversal_bound(
    graph: &OrthoGraph,
    contexts: &[Context],
    timeout: Option<std::time::Duration>,
) -> Result<SearchBound, SolveError> {
    check_contexts(graph.vertex_count(), contexts)?;
    let deadline = timeout.map(|t| std::time::Instant::now() + t);
    let outcome = hitting_set::solve(graph.vertex_count(), contexts, deadline, None);
    Ok(SearchBound {
        size: outcome.best.len(),
        witness: outcome.best,
        optimal: outcome.optimal,
    })
}

/// Maximum-independent-set search capped by a timeout.
pub fn independence_bound(
    graph: &OrthoGraph,
    timeout: Option<std::time::Duration>,
) -> SearchBound {
    let deadline = timeout.map(|t| std::time::Instant::now() + t);
    let outcome = mis_with_deadline(graph, deadline);
    SearchBound {
        size: outcome.best.len(),
        witness: outcome.best,
        optimal: outcome.optimal,
    }
}

/// The triangle-free lower bound `q_s >= n - 2 * alpha`, raw and clamped,
/// with the Gallai identity `tau = n - alpha` checked against an
/// independent exact vertex-cover search.
#[derive(Clone, Debug)]
pub struct TriangleFreeBound {
    pub raw: i64,
    pub clamped: usize,
    pub alpha: usize,
    pub vertex_cover: usize,
}

/// Computes the triangle-free bound.
///
/// # Errors
/// Rejects graphs containing a triangle (the bound's derivation requires
/// contexts to be edges).
pub fn triangle_free_bound(graph: &OrthoGraph) -> Result<TriangleFreeBound, SolveError> {
    let n = graph.vertex_count();
    for u in 0..n {
        for v in graph.neighbors(u).iter() {
            if v > u {
                let mut common = graph.neighbors(u).clone();
                common.intersect_with(graph.neighbors(v));
                if let Some(w) = common.first() {
                    return Err(SolveError::TriangleFound(u, v, w));
                }
            }
        }
    }
    let alpha = max_independent_set(graph).len();
    // Vertex cover = hitting set of the edge set, solved independently of
    // the independence search. Edgeless graphs have an empty cover.
    let edges: Vec<Context> = graph.edges().iter().map(|&(u, v)| vec![u, v]).collect();
    let vertex_cover = if edges.is_empty() {
        0
    } else {
        hitting_set::solve(n, &edges, None, None).best.len()
    };
    assert_eq!(
        vertex_cover,
        n - alpha,
        "Gallai identity must hold on triangle-free graphs"
    );
    let raw = n as i64 - 2 * alpha as i64;
    Ok(TriangleFreeBound {
        raw,
        clamped: raw.max(0) as usize,
        alpha,
        vertex_cover,
    })
}

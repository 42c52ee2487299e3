//! Exhaustive labeling oracle for small instances.
//!
//! Enumerates all 3^n labelings (with safe pruning that only skips
//! labelings provably no better than the incumbent) and returns a minimum
//! C-count witness. Ground truth for testing the exact and heuristic
//! solvers; capped at n = 15.

use super::{check_contexts, Label, Labeling, SolveError, SolveResult, SolveStats};
use crate::graph::{Context, OrthoGraph};
use std::time::Instant;

const MAX_ORACLE_VERTICES: usize = 15;

/// Exhaustive minimum over valid labelings of the C-count.
///
/// # Errors
/// Rejects n > 15, empty context lists and malformed contexts.
pub fn brute_force_qs(graph: &OrthoGraph, contexts: &[Context]) -> Result<SolveResult, SolveError> {
    let n = graph.vertex_count();
    if n > MAX_ORACLE_VERTICES {
        return Err(SolveError::TooLargeForOracle {
            n,
            max: MAX_ORACLE_VERTICES,
        });
    }
    check_contexts(n, contexts)?;
    let start = Instant::now();

    let adjacency: Vec<u32> = (0..n)
        .map(|v| graph.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    // Contexts keyed by their largest vertex: once that vertex is assigned
    // the context is fully decided and can be checked.
    let mut closing_at: Vec<Vec<u32>> = vec![Vec::new(); n];
    for ctx in contexts {
        let mask = ctx.iter().fold(0u32, |m, &v| m | 1 << v);
        closing_at[*ctx.last().unwrap()].push(mask);
    }

    // The all-C labeling is valid whenever contexts are nonempty, so the
    // search starts with a finite incumbent.
    let mut enumeration = Enumeration {
        adjacency: &adjacency,
        closing_at: &closing_at,
        labels: vec![Label::Contextual; n],
        best: Labeling(vec![Label::Contextual; n]),
        best_c: n,
        nodes: 0,
    };
    enumeration.assign(0, 0, 0, 0);

    let qs = enumeration.best_c;
    let stats = SolveStats {
        nodes: enumeration.nodes,
        millis: start.elapsed().as_millis(),
        seed: None,
        lower_bound: qs,
    };
    Ok(SolveResult::from_labeling(enumeration.best, true, stats))
}

struct Enumeration<'a> {
    adjacency: &'a [u32],
    closing_at: &'a [Vec<u32>],
    labels: Vec<Label>,
    best: Labeling,
    best_c: usize,
    nodes: u64,
}

impl Enumeration<'_> {
    fn assign(&mut self, v: usize, ones: u32, nonzero: u32, c_count: usize) {
        self.nodes += 1;
        if c_count >= self.best_c {
            return;
        }
        if v == self.adjacency.len() {
            self.best = Labeling(self.labels.clone());
            self.best_c = c_count;
            return;
        }
        for label in [Label::One, Label::Zero, Label::Contextual] {
            if label == Label::One && self.adjacency[v] & ones != 0 {
                continue;
            }
            let ones = if label == Label::One { ones | 1 << v } else { ones };
            let nonzero = if label == Label::Zero {
                nonzero
            } else {
                nonzero | 1 << v
            };
            // Every context closing at v must already be hit.
            if self.closing_at[v].iter().any(|&m| m & nonzero == 0) {
                continue;
            }
            self.labels[v] = label;
            let c_count = c_count + usize::from(label == Label::Contextual);
            self.assign(v + 1, ones, nonzero, c_count);
        }
    }
}

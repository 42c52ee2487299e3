//! Randomized local search for an upper bound on the figure of merit.
//!
//! The walk is simulated annealing over full labelings. Invalid states are
//! admitted but charged a penalty of `n + 1` per unhit context and per
//! adjacent ONE pair, so any valid labeling beats every invalid one and the
//! surviving objective is the C-count. Moves relabel one vertex; when the
//! state is invalid, half the moves target a member of a (randomly probed)
//! unhit context to steer repairs. Each time a new best valid labeling
//! appears, its transversal is re-labeled around an exact maximum
//! independent subset, which often converts several C's to ONEs at once.
//!
//! Fully deterministic for a given seed and budget.

use super::{
    check_contexts, hitting_set, labeling_from_transversal, Label, Labeling, SolveError,
    SolveResult, SolveStats,
};
use crate::graph::{Context, OrthoGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

/// Seeded local search; returns the best valid labeling found within
/// `budget` proposed moves. The result always carries `optimal = false`.
///
/// # Errors
/// Rejects empty context lists and malformed contexts.
pub fn solve_qs_heuristic(
    graph: &OrthoGraph,
    contexts: &[Context],
    budget: u64,
    seed: u64,
) -> Result<SolveResult, SolveError> {
    let n = graph.vertex_count();
    check_contexts(n, contexts)?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut member_of = vec![Vec::new(); n];
    for (c, ctx) in contexts.iter().enumerate() {
        for &v in ctx {
            member_of[v].push(c);
        }
    }

    let greedy = hitting_set::greedy_hitting_set(n, contexts, &member_of);
    let init = labeling_from_transversal(graph, &greedy);
    let mut walk = Walk::new(graph, contexts, &member_of, init.clone());
    let mut best = init;
    let mut best_c = best.c_count();

    // Geometric cooling from t0 down to roughly t_end across the budget.
    let t0: f64 = 1.5;
    let t_end: f64 = 0.05;
    let decay = if budget > 1 {
        (t_end / t0).powf(1.0 / budget as f64)
    } else {
        1.0
    };
    let mut temperature = t0;

    for _ in 0..budget {
        let v = walk.pick_vertex(&mut rng);
        let old = walk.labels[v];
        let new = random_other_label(&mut rng, old);
        let before = walk.cost();
        walk.relabel(v, new);
        let delta = walk.cost() - before;
        if delta > 0 && rng.random::<f64>() >= (-(delta as f64) / temperature).exp() {
            walk.relabel(v, old);
        } else if walk.is_valid() && walk.c_count < best_c {
            // Re-anchor the walk on the intensified labeling.
            let improved =
                labeling_from_transversal(graph, &Labeling(walk.labels.clone()).transversal());
            walk.reset_to(improved.clone());
            best_c = improved.c_count();
            best = improved;
        }
        temperature *= decay;
    }

    let stats = SolveStats {
        nodes: budget,
        millis: start.elapsed().as_millis(),
        seed: Some(seed),
        lower_bound: 0,
    };
    Ok(SolveResult::from_labeling(best, false, stats))
}

fn random_other_label(rng: &mut ChaCha8Rng, current: Label) -> Label {
    const ALL: [Label; 3] = [Label::Zero, Label::Contextual, Label::One];
    let others: Vec<Label> = ALL.iter().copied().filter(|&l| l != current).collect();
    others[rng.random_range(0..others.len())]
}

/// Annealing state with O(degree) incremental relabeling.
struct Walk<'a> {
    graph: &'a OrthoGraph,
    contexts: &'a [Context],
    member_of: &'a [Vec<usize>],
    labels: Vec<Label>,
    /// Per context: members currently labeled C or ONE.
    nonzero_in: Vec<u32>,
    unhit: usize,
    /// Edges with both endpoints labeled ONE.
    conflicts: usize,
    c_count: usize,
    penalty: i64,
}

impl<'a> Walk<'a> {
    fn new(
        graph: &'a OrthoGraph,
        contexts: &'a [Context],
        member_of: &'a [Vec<usize>],
        init: Labeling,
    ) -> Walk<'a> {
        let mut walk = Walk {
            graph,
            contexts,
            member_of,
            labels: Vec::new(),
            nonzero_in: Vec::new(),
            unhit: 0,
            conflicts: 0,
            c_count: 0,
            penalty: graph.vertex_count() as i64 + 1,
        };
        walk.reset_to(init);
        walk
    }

    fn reset_to(&mut self, labeling: Labeling) {
        self.labels = labeling.0;
        self.nonzero_in = self
            .contexts
            .iter()
            .map(|ctx| {
                ctx.iter()
                    .filter(|&&v| self.labels[v] != Label::Zero)
                    .count() as u32
            })
            .collect();
        self.unhit = self.nonzero_in.iter().filter(|&&c| c == 0).count();
        self.conflicts = self
            .graph
            .edges()
            .iter()
            .filter(|&&(u, v)| self.labels[u] == Label::One && self.labels[v] == Label::One)
            .count();
        self.c_count = self
            .labels
            .iter()
            .filter(|&&l| l == Label::Contextual)
            .count();
    }

    fn is_valid(&self) -> bool {
        self.unhit == 0 && self.conflicts == 0
    }

    fn cost(&self) -> i64 {
        self.penalty * (self.unhit + self.conflicts) as i64 + self.c_count as i64
    }

    /// Uniform vertex, except that when contexts are unhit half the picks
    /// probe a random context and, if it is unhit, repair inside it.
    fn pick_vertex(&self, rng: &mut ChaCha8Rng) -> usize {
        if self.unhit > 0 && rng.random_bool(0.5) {
            let c = rng.random_range(0..self.contexts.len());
            if self.nonzero_in[c] == 0 {
                let ctx = &self.contexts[c];
                return ctx[rng.random_range(0..ctx.len())];
            }
        }
        rng.random_range(0..self.labels.len())
    }

    fn relabel(&mut self, v: usize, new: Label) {
        let old = self.labels[v];
        if old == new {
            return;
        }
        if (old == Label::Zero) != (new == Label::Zero) {
            for &c in &self.member_of[v] {
                if new == Label::Zero {
                    self.nonzero_in[c] -= 1;
                    if self.nonzero_in[c] == 0 {
                        self.unhit += 1;
                    }
                } else {
                    if self.nonzero_in[c] == 0 {
                        self.unhit -= 1;
                    }
                    self.nonzero_in[c] += 1;
                }
            }
        }
        if old == Label::One || new == Label::One {
            let one_neighbors = self
                .graph
                .neighbors(v)
                .iter()
                .filter(|&u| self.labels[u] == Label::One)
                .count();
            if old == Label::One {
                self.conflicts -= one_neighbors;
            } else {
                self.conflicts += one_neighbors;
            }
        }
        self.c_count = self.c_count
            + usize::from(new == Label::Contextual)
            - usize::from(old == Label::Contextual);
        self.labels[v] = new;
    }
}

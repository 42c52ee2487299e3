//! Exact solver: bound sandwich plus a C-budget feasibility sweep.
//!
//! Stage 1 computes the minimum transversal size `tau` (hitting set over
//! the contexts) and the independence number `alpha`, giving the lower
//! bound `max(0, tau - alpha)`. Stage 2 builds upper-bound labelings: the
//! best transversal found, re-labeled around an exact maximum independent
//! subset of itself, then a short deterministic local-search polish when a
//! gap remains. Stage 3 closes any remaining gap by asking, for ascending
//! C-budgets `k`, whether a valid labeling with at most `k` C-labels
//! exists; the first feasible budget is the optimum.
//!
//! The budget search branches three ways (ONE, C, ZERO) on the undecided
//! vertex lying in the most unhit contexts, lowest index on ties, and
//! prunes with a greedy packing of pairwise-disjoint unhit contexts that
//! can no longer accept a ONE (each such context costs one C).
//!
//! Everything is deterministic; timeouts degrade the answer to
//! `optimal = false` with the best labeling and proven lower bound so far.

use super::{
    check_contexts, heuristic::solve_qs_heuristic, hitting_set, labeling_from_transversal,
    mis_with_deadline, Label, Labeling, SolveError, SolveResult, SolveStats,
};
use crate::graph::{Context, OrthoGraph};
use std::time::{Duration, Instant};

/// Fixed parameters for the internal upper-bound polish; results stay
/// deterministic because the seed never varies.
const POLISH_SEED: u64 = 0x0113;
const POLISH_BUDGET: u64 = 60_000;

/// Exact minimum C-count over valid labelings, with certificate.
///
/// On timeout the best labeling found is returned with `optimal = false`
/// and the proven lower bound in `stats.lower_bound`.
///
/// # Errors
/// Rejects empty context lists and malformed contexts.
pub fn solve_qs_exact(
    graph: &OrthoGraph,
    contexts: &[Context],
    timeout: Option<Duration>,
) -> Result<SolveResult, SolveError> {
    let n = graph.vertex_count();
    check_contexts(n, contexts)?;
    let start = Instant::now();
    let deadline = timeout.map(|t| start + t);

    let hs = hitting_set::solve(n, contexts, deadline, None);
    let mis = mis_with_deadline(graph, deadline);
    let mut nodes = hs.nodes + mis.nodes;
    let lb0 = hs.lower_bound.saturating_sub(mis.upper_bound);

    let mut incumbent = labeling_from_transversal(graph, &hs.best);
    if incumbent.c_count() > lb0 {
        let polish = solve_qs_heuristic(graph, contexts, POLISH_BUDGET, POLISH_SEED)?;
        nodes += polish.stats.nodes;
        if polish.labeling.c_count() < incumbent.c_count() {
            incumbent = polish.labeling;
        }
    }

    let mut lb = lb0;
    let mut timed_out = false;
    while lb < incumbent.c_count() {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            timed_out = true;
            break;
        }
        let mut search = BudgetSearch::new(graph, contexts, lb, deadline);
        let feasibility = search.run();
        nodes += search.nodes;
        match feasibility {
            Feasibility::Feasible(labeling) => {
                debug_assert_eq!(labeling.c_count(), lb);
                incumbent = labeling;
                break;
            }
            Feasibility::Infeasible => lb += 1,
            Feasibility::TimedOut => {
                timed_out = true;
                break;
            }
        }
    }

    let qs = incumbent.c_count();
    let stats = SolveStats {
        nodes,
        millis: start.elapsed().as_millis(),
        seed: None,
        lower_bound: lb.min(qs),
    };
    Ok(SolveResult::from_labeling(incumbent, !timed_out, stats))
}

/// Whether an independent set hits every context, i.e. the instance admits
/// a fully noncontextual {0,1} valuation (equivalently q_s = 0). False
/// certifies a weak Kochen-Specker set.
///
/// # Errors
/// Rejects empty context lists and malformed contexts.
pub fn ks_noncontextually_colorable(
    graph: &OrthoGraph,
    contexts: &[Context],
) -> Result<bool, SolveError> {
    check_contexts(graph.vertex_count(), contexts)?;
    let mut search = BudgetSearch::new(graph, contexts, 0, None);
    match search.run() {
        Feasibility::Feasible(_) => Ok(true),
        Feasibility::Infeasible => Ok(false),
        Feasibility::TimedOut => unreachable!("no deadline was set"),
    }
}

enum Feasibility {
    Feasible(Labeling),
    Infeasible,
    TimedOut,
}

/// Depth-first search for a valid labeling with at most `k` C-labels.
struct BudgetSearch<'a> {
    graph: &'a OrthoGraph,
    contexts: &'a [Context],
    member_of: Vec<Vec<usize>>,
    k: usize,
    state: Vec<Option<Label>>,
    /// Per context: decided members labeled C or ONE.
    hit: Vec<u32>,
    /// Per context: undecided members.
    undecided: Vec<u32>,
    /// Per vertex: neighbors currently labeled ONE.
    one_block: Vec<u32>,
    unhit: usize,
    c_used: usize,
    /// Stamp buffer for the packing bound, reused across nodes.
    stamp: Vec<u64>,
    generation: u64,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl<'a> BudgetSearch<'a> {
    fn new(
        graph: &'a OrthoGraph,
        contexts: &'a [Context],
        k: usize,
        deadline: Option<Instant>,
    ) -> BudgetSearch<'a> {
        let n = graph.vertex_count();
        let mut member_of = vec![Vec::new(); n];
        for (c, ctx) in contexts.iter().enumerate() {
            for &v in ctx {
                member_of[v].push(c);
            }
        }
        BudgetSearch {
            graph,
            contexts,
            member_of,
            k,
            state: vec![None; n],
            hit: vec![0; contexts.len()],
            undecided: contexts.iter().map(|c| c.len() as u32).collect(),
            one_block: vec![0; n],
            unhit: contexts.len(),
            c_used: 0,
            stamp: vec![0; n],
            generation: 0,
            nodes: 0,
            deadline,
            timed_out: false,
        }
    }

    fn run(&mut self) -> Feasibility {
        match self.descend() {
            Some(labeling) => Feasibility::Feasible(labeling),
            None if self.timed_out => Feasibility::TimedOut,
            None => Feasibility::Infeasible,
        }
    }

    fn descend(&mut self) -> Option<Labeling> {
        self.nodes += 1;
        if self.timed_out
            || (self.nodes.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d))
        {
            self.timed_out = true;
            return None;
        }
        if self.unhit == 0 {
            // Undecided vertices become ZERO; hits and independence are
            // already settled.
            let labels = self
                .state
                .iter()
                .map(|s| s.unwrap_or(Label::Zero))
                .collect();
            return Some(Labeling(labels));
        }
        if self.c_used + self.packing_bound() > self.k {
            return None;
        }

        let v = self.branch_vertex()?;
        for label in [Label::One, Label::Contextual, Label::Zero] {
            match label {
                Label::One if self.one_block[v] > 0 => continue,
                Label::Contextual if self.c_used >= self.k => continue,
                _ => {}
            }
            self.set(v, label);
            let found = self.descend();
            self.unset(v, label);
            if found.is_some() || self.timed_out {
                return found;
            }
        }
        None
    }

    /// Undecided vertex lying in the most unhit contexts; ties break to
    /// the lowest index. `None` only when some unhit context is dead.
    fn branch_vertex(&self) -> Option<usize> {
        let mut best = None;
        let mut best_cover = 0usize;
        for c in 0..self.contexts.len() {
            if self.hit[c] > 0 {
                continue;
            }
            if self.undecided[c] == 0 {
                return None;
            }
            for &v in &self.contexts[c] {
                if self.state[v].is_some() {
                    continue;
                }
                let cover = self.member_of[v]
                    .iter()
                    .filter(|&&m| self.hit[m] == 0)
                    .count();
                let better =
                    cover > best_cover || (cover == best_cover && best.is_none_or(|b| v < b));
                if better {
                    best_cover = cover;
                    best = Some(v);
                }
            }
        }
        best
    }

    /// Greedy packing of pairwise-disjoint unhit contexts whose undecided
    /// members are all blocked from ONE; each packed context forces a C.
    fn packing_bound(&mut self) -> usize {
        self.generation += 1;
        let mut packed = 0usize;
        for c in 0..self.contexts.len() {
            if self.hit[c] > 0 {
                continue;
            }
            let members: Vec<usize> = self.contexts[c]
                .iter()
                .copied()
                .filter(|&v| self.state[v].is_none())
                .collect();
            let all_blocked = members.iter().all(|&v| self.one_block[v] > 0);
            if !all_blocked || members.iter().any(|&v| self.stamp[v] == self.generation) {
                continue;
            }
            packed += 1;
            for v in members {
                self.stamp[v] = self.generation;
            }
        }
        packed
    }

    fn set(&mut self, v: usize, label: Label) {
        debug_assert!(self.state[v].is_none());
        self.state[v] = Some(label);
        for &c in &self.member_of[v] {
            self.undecided[c] -= 1;
            if label != Label::Zero {
                if self.hit[c] == 0 {
                    self.unhit -= 1;
                }
                self.hit[c] += 1;
            }
        }
        if label == Label::One {
            for u in self.graph.neighbors(v).iter() {
                self.one_block[u] += 1;
            }
        }
        if label == Label::Contextual {
            self.c_used += 1;
        }
    }

    fn unset(&mut self, v: usize, label: Label) {
        debug_assert_eq!(self.state[v], Some(label));
        self.state[v] = None;
        for &c in &self.member_of[v] {
            self.undecided[c] += 1;
            if label != Label::Zero {
                self.hit[c] -= 1;
                if self.hit[c] == 0 {
                    self.unhit += 1;
                }
            }
        }
        if label == Label::One {
            for u in self.graph.neighbors(v).iter() {
                self.one_block[u] -= 1;
            }
        }
        if label == Label::Contextual {
            self.c_used -= 1;
        }
    }
}

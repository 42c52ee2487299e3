//! Exact minimum hitting set over a family of vertex sets.
//!
//! This is the transversal engine: contexts are the sets, and a hitting set
//! is a context transversal. The search is a depth-first branch and bound
//! over include/exclude decisions on vertices with
//!
//! * unit propagation (an unhit set with one undecided member forces it),
//! * a greedy packing lower bound (pairwise disjoint unhit sets need one
//!   hitter each) combined with a coverage ceiling bound, and
//! * branching on the undecided vertex that covers the most unhit sets,
//!   ties to the lowest index, include branch first.
//!
//! State changes go through a trail so backtracking is O(changes), which
//! keeps deep searches (catalog instances reach depth ~20) cheap.

use crate::graph::Context;
use std::time::Instant;

pub(crate) struct HsOutcome {
    pub best: Vec<usize>,
    pub optimal: bool,
    /// Lower bound proven at the root; equals `best.len()` when optimal.
    pub lower_bound: usize,
    pub nodes: u64,
}

/// Solves the minimum hitting set. `seed_solution`, when given, must be a
/// valid hitting set and is used as the initial incumbent.
pub(crate) fn solve(
    n: usize,
    sets: &[Context],
    deadline: Option<Instant>,
    seed_solution: Option<Vec<usize>>,
) -> HsOutcome {
    let mut member_of = vec![Vec::new(); n];
    for (s, set) in sets.iter().enumerate() {
        for &v in set {
            member_of[v].push(s);
        }
    }
    let incumbent = match seed_solution {
        Some(seed) => {
            debug_assert!(sets.iter().all(|s| s.iter().any(|v| seed.contains(v))));
            seed
        }
        None => greedy_hitting_set(n, sets, &member_of),
    };
    let mut search = Search {
        sets,
        member_of: &member_of,
        state: vec![State::Undecided; n],
        chosen: Vec::new(),
        hit_count: vec![0; sets.len()],
        undecided_count: sets.iter().map(|s| s.len() as u32).collect(),
        unhit: sets.len(),
        best: incumbent,
        nodes: 0,
        deadline,
        timed_out: false,
    };
    let root_lb = search.lower_bound();
    if root_lb < search.best.len() {
        search.explore();
    }
    let optimal = !search.timed_out;
    HsOutcome {
        lower_bound: if optimal { search.best.len() } else { root_lb },
        optimal,
        nodes: search.nodes,
        best: search.best,
    }
}

/// Max-coverage greedy followed by removal of redundant picks; always
/// returns a valid hitting set.
pub(crate) fn greedy_hitting_set(
    _n: usize,
    sets: &[Context],
    member_of: &[Vec<usize>],
) -> Vec<usize> {
    let mut unhit: Vec<bool> = vec![true; sets.len()];
    let mut remaining = sets.len();
    let mut picked: Vec<usize> = Vec::new();
    while remaining > 0 {
        let mut best_v = usize::MAX;
        let mut best_cover = 0usize;
        for (v, sets_of_v) in member_of.iter().enumerate() {
            let cover = sets_of_v.iter().filter(|&&s| unhit[s]).count();
            if cover > best_cover {
                best_cover = cover;
                best_v = v;
            }
        }
        debug_assert!(best_v != usize::MAX, "some set has no members");
        picked.push(best_v);
        for &s in &member_of[best_v] {
            if unhit[s] {
                unhit[s] = false;
                remaining -= 1;
            }
        }
    }
    // Drop picks made redundant by later ones (reverse pass).
    let mut kept = picked.clone();
    for i in (0..picked.len()).rev() {
        let candidate: Vec<usize> = kept
            .iter()
            .copied()
            .filter(|&v| v != picked[i])
            .collect();
        let still_hits = sets
            .iter()
            .all(|s| s.iter().any(|v| candidate.contains(v)));
        if still_hits {
            kept = candidate;
        }
    }
    kept.sort_unstable();
    kept
}

#[derive(Clone, Copy, PartialEq)]
enum State {
    Undecided,
    Chosen,
    Banned,
}

enum TrailOp {
    Chose(usize),
    Banned(usize),
}

struct Search<'a> {
    sets: &'a [Context],
    member_of: &'a [Vec<usize>],
    state: Vec<State>,
    chosen: Vec<usize>,
    hit_count: Vec<u32>,
    undecided_count: Vec<u32>,
    unhit: usize,
    best: Vec<usize>,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl Search<'_> {
    fn choose(&mut self, v: usize, trail: &mut Vec<TrailOp>) {
        debug_assert!(self.state[v] == State::Undecided);
        self.state[v] = State::Chosen;
        self.chosen.push(v);
        for &s in &self.member_of[v] {
            if self.hit_count[s] == 0 {
                self.unhit -= 1;
            }
            self.hit_count[s] += 1;
            self.undecided_count[s] -= 1;
        }
        trail.push(TrailOp::Chose(v));
    }

    fn ban(&mut self, v: usize, trail: &mut Vec<TrailOp>) {
        debug_assert!(self.state[v] == State::Undecided);
        self.state[v] = State::Banned;
        for &s in &self.member_of[v] {
            self.undecided_count[s] -= 1;
        }
        trail.push(TrailOp::Banned(v));
    }

    fn unwind(&mut self, trail: Vec<TrailOp>) {
        for op in trail.into_iter().rev() {
            match op {
                TrailOp::Chose(v) => {
                    self.state[v] = State::Undecided;
                    self.chosen.pop();
                    for &s in &self.member_of[v] {
                        self.hit_count[s] -= 1;
                        if self.hit_count[s] == 0 {
                            self.unhit += 1;
                        }
                        self.undecided_count[s] += 1;
                    }
                }
                TrailOp::Banned(v) => {
                    self.state[v] = State::Undecided;
                    for &s in &self.member_of[v] {
                        self.undecided_count[s] += 1;
                    }
                }
            }
        }
    }

    /// Greedy packing of pairwise disjoint unhit sets (counting undecided
    /// members only), strengthened by the coverage ceiling
    /// `ceil(unhit / max_cover)`.
    fn lower_bound(&self) -> usize {
        if self.unhit == 0 {
            return 0;
        }
        let mut order: Vec<usize> = (0..self.sets.len())
            .filter(|&s| self.hit_count[s] == 0)
            .collect();
        order.sort_by_key(|&s| self.undecided_count[s]);
        let mut used = vec![false; self.state.len()];
        let mut packing = 0usize;
        for &s in &order {
            let members: Vec<usize> = self.sets[s]
                .iter()
                .copied()
                .filter(|&v| self.state[v] == State::Undecided)
                .collect();
            if members.iter().any(|&v| used[v]) {
                continue;
            }
            packing += 1;
            for v in members {
                used[v] = true;
            }
        }
        let max_cover = (0..self.state.len())
            .filter(|&v| self.state[v] == State::Undecided)
            .map(|v| {
                self.member_of[v]
                    .iter()
                    .filter(|&&s| self.hit_count[s] == 0)
                    .count()
            })
            .max()
            .unwrap_or(0);
        let ceiling = if max_cover == 0 {
            usize::MAX // unhit sets remain but nothing can hit them
        } else {
            self.unhit.div_ceil(max_cover)
        };
        packing.max(ceiling)
    }

    fn explore(&mut self) {
        self.nodes += 1;
        if self.timed_out
            || (self.nodes.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() >= d))
        {
            self.timed_out = true;
            return;
        }

        // Unit propagation: unhit sets with a single undecided member force
        // that member; sets with none make the branch infeasible.
        let mut trail: Vec<TrailOp> = Vec::new();
        loop {
            let mut forced: Option<usize> = None;
            let mut infeasible = false;
            for s in 0..self.sets.len() {
                if self.hit_count[s] > 0 {
                    continue;
                }
                match self.undecided_count[s] {
                    0 => {
                        infeasible = true;
                        break;
                    }
                    1 => {
                        let v = self.sets[s]
                            .iter()
                            .copied()
                            .find(|&v| self.state[v] == State::Undecided)
                            .expect("counted one undecided member");
                        forced = Some(v);
                        break;
                    }
                    _ => {}
                }
            }
            if infeasible {
                self.unwind(trail);
                return;
            }
            match forced {
                Some(v) if self.chosen.len() + 1 < self.best.len() => self.choose(v, &mut trail),
                Some(_) => {
                    // Forced choice would already match the incumbent size.
                    self.unwind(trail);
                    return;
                }
                None => break,
            }
        }

        if self.unhit == 0 {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
                self.best.sort_unstable();
            }
            self.unwind(trail);
            return;
        }
        if self.chosen.len() + self.lower_bound() >= self.best.len() {
            self.unwind(trail);
            return;
        }

        // Branch vertex: most unhit sets covered, lowest index on ties.
        let mut branch_v = usize::MAX;
        let mut branch_cover = 0usize;
        for v in 0..self.state.len() {
            if self.state[v] != State::Undecided {
                continue;
            }
            let cover = self.member_of[v]
                .iter()
                .filter(|&&s| self.hit_count[s] == 0)
                .count();
            if cover > branch_cover {
                branch_cover = cover;
                branch_v = v;
            }
        }
        debug_assert!(branch_v != usize::MAX);

        let mut include = Vec::new();
        self.choose(branch_v, &mut include);
        self.explore();
        self.unwind(include);
        if self.timed_out {
            self.unwind(trail);
            return;
        }

        let mut exclude = Vec::new();
        self.ban(branch_v, &mut exclude);
        self.explore();
        self.unwind(exclude);
        self.unwind(trail);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(n: usize, sets: &[Context]) -> usize {
        solve(n, sets, None, None).best.len()
    }

    /// Subset-enumeration oracle for small instances.
    fn oracle(n: usize, sets: &[Context]) -> usize {
        (0u32..1 << n)
            .filter(|mask| {
                sets.iter()
                    .all(|s| s.iter().any(|&v| mask >> v & 1 == 1))
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn tiny_instances() {
        assert_eq!(exact(1, &[vec![0]]), 1);
        assert_eq!(exact(4, &[vec![0, 1], vec![2, 3]]), 2);
        assert_eq!(exact(4, &[vec![0, 1], vec![1, 2], vec![1, 3]]), 1);
        // Disjoint triangle covers force one vertex each.
        assert_eq!(
            exact(6, &[vec![0, 1, 2], vec![3, 4, 5], vec![0, 3], vec![1, 4]]),
            2
        );
    }

    #[test]
    fn solution_actually_hits_everything() {
        let sets = vec![
            vec![0, 2, 4],
            vec![1, 3, 5],
            vec![0, 5],
            vec![2, 3],
            vec![4, 5],
        ];
        let out = solve(6, &sets, None, None);
        assert!(out.optimal);
        for s in &sets {
            assert!(s.iter().any(|v| out.best.contains(v)));
        }
        assert_eq!(out.best.len(), oracle(6, &sets));
    }

    #[test]
    fn matches_subset_oracle_on_random_families() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for trial in 0..40 {
            let n = rng.random_range(4..=11);
            let m = rng.random_range(2..=14);
            let sets: Vec<Context> = (0..m)
                .map(|_| {
                    let size = rng.random_range(1..=3.min(n));
                    let mut members: Vec<usize> = Vec::new();
                    while members.len() < size {
                        let v = rng.random_range(0..n);
                        if !members.contains(&v) {
                            members.push(v);
                        }
                    }
                    members.sort_unstable();
                    members
                })
                .collect();
            assert_eq!(exact(n, &sets), oracle(n, &sets), "trial {trial}");
        }
    }

    #[test]
    fn greedy_seed_is_respected_and_valid() {
        let sets = vec![vec![0, 1], vec![1, 2], vec![2, 3]];
        let member_of = {
            let mut m = vec![Vec::new(); 4];
            for (s, set) in sets.iter().enumerate() {
                for &v in set {
                    m[v].push(s);
                }
            }
            m
        };
        let greedy = greedy_hitting_set(4, &sets, &member_of);
        for s in &sets {
            assert!(s.iter().any(|v| greedy.contains(v)));
        }
        let out = solve(4, &sets, None, Some(greedy));
        assert_eq!(out.best.len(), 2);
    }
}

//! Seeded sampling experiments behind the geometric bound arguments.
//!
//! Everything here validates a claim the exact modules rely on: overlaps of
//! Haar-random states with rank-r projectors follow Beta(r, d-r); a cap of
//! overlap >= 1/d around any state meets every orthonormal basis; a cap of
//! overlap > 1/2 never contains two orthogonal rays; rotating a ray set by
//! Haar-random unitaries captures, on average, the annulus proportion
//! computed in closed form; and thresholding overlaps yields valid
//! labelings.
//!
//! This is the only module that works in floating point with tolerances
//! (|x| < 1e-9 counts as zero). Determinism: every experiment derives one
//! ChaCha8 substream per trial from (seed, trial index), so results are
//! bit-identical for a given seed regardless of thread count.

use crate::bounds::{annulus_proportion, bound_to_f64, reg_inc_beta, BoundParams};
use crate::catalog::VectorSet;
use crate::graph::OrthoGraph;
use crate::scalar;
use crate::solver::{Label, Labeling};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde_json::json;
use thiserror::Error;

/// Tolerance for treating a floating quantity as zero in this module.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// KS critical value coefficient at the 1% level: D < 1.63 / sqrt(N).
const KS_COEFF_1PCT: f64 = 1.63;

#[derive(Debug, Error, PartialEq)]
pub enum McError {
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("thresholds must satisfy 0 <= t1 <= t2 <= 1, got ({t1}, {t2})")]
    BadThresholds { t1: f64, t2: f64 },
    #[error("rank must satisfy 1 <= r < d, got r = {r}, d = {d}")]
    RankOutOfRange { d: usize, r: usize },
    #[error("dimension must be at least {min}, got {got}")]
    DimensionTooSmall { min: usize, got: usize },
    #[error("the set's clique number {omega} is below its dimension {d}: no full basis")]
    NoFullBasis { omega: usize, d: usize },
    #[error("center vector has length {found}, expected the set dimension {expected}")]
    CenterLengthMismatch { expected: usize, found: usize },
}

/// Experiment configuration for the overlap-distribution test.
#[derive(Clone, Debug)]
pub struct McConfig {
    pub d: usize,
    pub r: usize,
    pub samples: u64,
    pub seed: u64,
    pub t1: f64,
    pub t2: f64,
}

impl McConfig {
    /// Validated configuration with the construction's default thresholds
    /// `t1 = r/d`, `t2 = 1/2`.
    ///
    /// # Errors
    /// Rejects empty sample counts and ranks outside 1 <= r < d.
    pub fn new(d: usize, r: usize, samples: u64, seed: u64) -> Result<McConfig, McError> {
        if r < 1 || r >= d {
            return Err(McError::RankOutOfRange { d, r });
        }
        if samples == 0 {
            return Err(McError::NoSamples);
        }
        Ok(McConfig {
            d,
            r,
            samples,
            seed,
            t1: r as f64 / d as f64,
            t2: 0.5,
        })
    }

    /// Replaces the thresholds.
    ///
    /// # Errors
    /// Rejects thresholds outside 0 <= t1 <= t2 <= 1.
    pub fn with_thresholds(mut self, t1: f64, t2: f64) -> Result<McConfig, McError> {
        check_thresholds(t1, t2)?;
        self.t1 = t1;
        self.t2 = t2;
        Ok(self)
    }
}

fn check_thresholds(t1: f64, t2: f64) -> Result<(), McError> {
    if !(0.0..=1.0).contains(&t1) || !(0.0..=1.0).contains(&t2) || t1 > t2 {
        return Err(McError::BadThresholds { t1, t2 });
    }
    Ok(())
}

/// One independent RNG per (seed, trial): stream = trial index.
fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs `trials` independent trials on up to `threads` workers, results in
/// trial order. Trial i sees only its own substream, so the output is
/// independent of the thread count.
fn run_trials<R, F>(trials: u64, threads: usize, seed: u64, f: &F) -> Vec<R>
where
    R: Send,
    F: Fn(u64, &mut ChaCha8Rng) -> R + Sync,
{
    let threads = threads.clamp(1, trials.max(1) as usize);
    if threads == 1 {
        return (0..trials)
            .map(|i| f(i, &mut trial_rng(seed, i)))
            .collect();
    }
    let chunk = trials.div_ceil(threads as u64);
    std::thread::scope(|scope| {
        let workers: Vec<_> = (0..threads as u64)
            .map(|t| {
                let lo = t * chunk;
                let hi = ((t + 1) * chunk).min(trials);
                scope.spawn(move || {
                    (lo..hi)
                        .map(|i| f(i, &mut trial_rng(seed, i)))
                        .collect::<Vec<R>>()
                })
            })
            .collect();
        workers
            .into_iter()
            .flat_map(|w| w.join().expect("worker panicked"))
            .collect()
    })
}

/// Haar-random unit vector drawn from the first substream of `seed`;
/// convenience for callers that do not manage their own RNG.
pub fn seeded_center(d: usize, seed: u64) -> Vec<Complex64> {
    sample_haar_vector(d, &mut trial_rng(seed, 0))
}

/// Haar-random unit vector: complex standard Gaussians, normalized.
pub fn sample_haar_vector<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<Complex64> {
    assert!(d >= 1, "dimension must be positive");
    loop {
        let v: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm > FLOAT_TOLERANCE {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-random unitary: modified Gram-Schmidt on a complex Ginibre matrix.
/// MGS yields the QR factor with positive diagonal R, which makes Q
/// exactly Haar distributed. Rows of the result are the matrix rows.
pub fn sample_haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<Vec<Complex64>> {
    assert!(d >= 1, "dimension must be positive");
    'outer: loop {
        // Columns of a complex Ginibre matrix, orthonormalized in order.
        let gaussian: Vec<Vec<Complex64>> = (0..d)
            .map(|_| {
                (0..d)
                    .map(|_| {
                        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
                    })
                    .collect()
            })
            .collect();
        let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
        for raw in &gaussian {
            let mut v = raw.clone();
            for q in &cols {
                let coeff: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= coeff * qi;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < FLOAT_TOLERANCE {
                continue 'outer; // numerically dependent draw; resample
            }
            for vi in &mut v {
                *vi /= norm;
            }
            cols.push(v);
        }
        return (0..d)
            .map(|i| (0..d).map(|j| cols[j][i]).collect())
            .collect();
    }
}

/// Exact rays converted to unit vectors over Complex64.
fn unit_rays(set: &VectorSet) -> Vec<Vec<Complex64>> {
    set.rays()
        .iter()
        .map(|ray| {
            let norm = scalar::norm_sq(ray).to_f64().sqrt();
            ray.iter()
                .map(|entry| {
                    let (re, im) = entry.to_complex_f64();
                    Complex64::new(re, im) / norm
                })
                .collect()
        })
        .collect()
}

/// `|<u|v>|^2` with the physics convention (conjugate-linear first slot).
fn overlap(u: &[Complex64], v: &[Complex64]) -> f64 {
    u.iter()
        .zip(v)
        .map(|(a, b)| a.conj() * b)
        .sum::<Complex64>()
        .norm_sqr()
}

/// Outcome of the Beta-law Kolmogorov-Smirnov test.
#[derive(Clone, Debug)]
pub struct OverlapReport {
    pub config: McConfig,
    pub ks_statistic: f64,
    pub critical_value: f64,
    pub pass: bool,
}

impl OverlapReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&json!({
            "experiment": "overlap_distribution",
            "d": self.config.d,
            "r": self.config.r,
            "samples": self.config.samples,
            "seed": self.config.seed,
            "ks_statistic": self.ks_statistic,
            "critical_value": self.critical_value,
            "pass": self.pass,
        }))
        .expect("report JSON cannot fail")
    }
}

/// Samples overlaps T = sum_{k<r} |psi_k|^2 of Haar states with the
/// rank-r coordinate projector and KS-tests them against Beta(r, d-r).
///
/// # Errors
/// Rejects invalid configurations (see [`McConfig::new`]).
pub fn overlap_distribution_test(cfg: &McConfig, threads: usize) -> Result<OverlapReport, McError> {
    if cfg.r < 1 || cfg.r >= cfg.d {
        return Err(McError::RankOutOfRange { d: cfg.d, r: cfg.r });
    }
    if cfg.samples == 0 {
        return Err(McError::NoSamples);
    }
    let mut overlaps = run_trials(cfg.samples, threads, cfg.seed, &|_, rng| {
        let psi = sample_haar_vector(cfg.d, rng);
        psi[..cfg.r].iter().map(Complex64::norm_sqr).sum::<f64>()
    });
    overlaps.sort_by(f64::total_cmp);
    let n = overlaps.len() as f64;
    let (a, b) = (cfg.r as f64, (cfg.d - cfg.r) as f64);
    let mut ks = 0.0f64;
    for (i, t) in overlaps.iter().enumerate() {
        let cdf = reg_inc_beta(t.clamp(0.0, 1.0), a, b).expect("valid shapes");
        ks = ks.max(cdf - i as f64 / n).max((i + 1) as f64 / n - cdf);
    }
    let critical_value = KS_COEFF_1PCT / n.sqrt();
    Ok(OverlapReport {
        config: cfg.clone(),
        ks_statistic: ks,
        critical_value,
        pass: ks < critical_value,
    })
}

/// Outcome of the basis-hitting check.
#[derive(Clone, Debug)]
pub struct CapHitReport {
    pub trials: u64,
    pub seed: u64,
    pub contexts: usize,
    /// Minimum over trials and contexts of the maximum in-context overlap.
    pub min_max_overlap: f64,
    /// Analytic floor 1/d, repeated for the report.
    pub floor: f64,
    pub pass: bool,
}

impl CapHitReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&json!({
            "experiment": "cap_hit",
            "trials": self.trials,
            "seed": self.seed,
            "contexts": self.contexts,
            "min_max_overlap": self.min_max_overlap,
            "floor": self.floor,
            "pass": self.pass,
        }))
        .expect("report JSON cannot fail")
    }
}

/// For random states psi, the best overlap inside each context must reach
/// 1/d (the d overlaps sum to 1). Reports the observed minimum.
///
/// # Errors
/// Rejects sets whose clique number is below their dimension (no full
/// basis to hit) and empty trial counts.
pub fn cap_hit_check(
    set: &VectorSet,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<CapHitReport, McError> {
    if trials == 0 {
        return Err(McError::NoSamples);
    }
    let d = set.dimension();
    let graph = OrthoGraph::build(set);
    let omega = graph.clique_number();
    if omega != d {
        return Err(McError::NoFullBasis { omega, d });
    }
    let contexts = graph.enumerate_contexts();
    let rays = unit_rays(set);
    let minima = run_trials(trials, threads, seed, &|_, rng| {
        let psi = sample_haar_vector(d, rng);
        let overlaps: Vec<f64> = rays.iter().map(|ray| overlap(&psi, ray)).collect();
        contexts
            .iter()
            .map(|ctx| {
                ctx.iter()
                    .map(|&v| overlaps[v])
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .fold(f64::INFINITY, f64::min)
    });
    let min_max_overlap = minima.into_iter().fold(f64::INFINITY, f64::min);
    let floor = 1.0 / d as f64;
    Ok(CapHitReport {
        trials,
        seed,
        contexts: contexts.len(),
        min_max_overlap,
        floor,
        pass: min_max_overlap >= floor - FLOAT_TOLERANCE,
    })
}

/// Outcome of the orthogonal-pair exclusion check.
#[derive(Clone, Debug)]
pub struct CapIndependenceReport {
    pub d: usize,
    pub trials: u64,
    pub seed: u64,
    pub violations: u64,
    /// Largest min(o1, o2) seen; how close any pair came to a violation.
    pub closest_call: f64,
    pub pass: bool,
}

impl CapIndependenceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&json!({
            "experiment": "cap_independence",
            "d": self.d,
            "trials": self.trials,
            "seed": self.seed,
            "violations": self.violations,
            "closest_call": self.closest_call,
            "pass": self.pass,
        }))
        .expect("report JSON cannot fail")
    }
}

/// Samples orthogonal pairs and random centers; both overlaps exceeding
/// 1/2 is impossible (they sum to at most 1), so any hit is a violation.
///
/// # Errors
/// Rejects d < 2 and empty trial counts.
pub fn cap_independence_check(
    d: usize,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<CapIndependenceReport, McError> {
    if d < 2 {
        return Err(McError::DimensionTooSmall { min: 2, got: d });
    }
    if trials == 0 {
        return Err(McError::NoSamples);
    }
    let outcomes = run_trials(trials, threads, seed, &|_, rng| {
        let phi1 = sample_haar_vector(d, rng);
        let phi2 = loop {
            let raw = sample_haar_vector(d, rng);
            let coeff: Complex64 = phi1.iter().zip(&raw).map(|(a, b)| a.conj() * b).sum();
            let projected: Vec<Complex64> = raw
                .iter()
                .zip(&phi1)
                .map(|(r, p)| r - coeff * p)
                .collect();
            let norm = projected.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > FLOAT_TOLERANCE {
                break projected.into_iter().map(|z| z / norm).collect::<Vec<_>>();
            }
        };
        let psi = sample_haar_vector(d, rng);
        let o1 = overlap(&psi, &phi1);
        let o2 = overlap(&psi, &phi2);
        (o1 > 0.5 && o2 > 0.5, o1.min(o2))
    });
    let violations = outcomes.iter().filter(|(hit, _)| *hit).count() as u64;
    let closest_call = outcomes
        .iter()
        .map(|(_, m)| *m)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(CapIndependenceReport {
        d,
        trials,
        seed,
        violations,
        closest_call,
        pass: violations == 0,
    })
}

/// Outcome of the rotated-annulus capture experiment.
#[derive(Clone, Debug)]
pub struct AnnulusReport {
    pub trials: u64,
    pub seed: u64,
    pub t1: f64,
    pub t2: f64,
    pub mean_fraction: f64,
    pub min_fraction: f64,
    pub min_trial: u64,
    /// Closed-form annulus proportion p(t1, t2) the mean should approach.
    pub expected: f64,
    pub std_error: f64,
    /// Mean within three standard errors of the expectation.
    pub mean_ok: bool,
    /// The existence claim: some rotation captures at most the mean.
    pub min_le_mean: bool,
    /// Witnessing rotation for the minimum, row-major [re, im] pairs.
    pub best_rotation: Vec<Vec<[f64; 2]>>,
}

impl AnnulusReport {
    pub fn pass(&self) -> bool {
        self.mean_ok && self.min_le_mean
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&json!({
            "experiment": "annulus_capture",
            "trials": self.trials,
            "seed": self.seed,
            "t1": self.t1,
            "t2": self.t2,
            "mean_fraction": self.mean_fraction,
            "min_fraction": self.min_fraction,
            "min_trial": self.min_trial,
            "expected": self.expected,
            "std_error": self.std_error,
            "mean_ok": self.mean_ok,
            "min_le_mean": self.min_le_mean,
            "pass": self.pass(),
            "best_rotation": self.best_rotation,
        }))
        .expect("report JSON cannot fail")
    }
}

/// Rotates the set by Haar-random unitaries and counts rays whose overlap
/// with the first coordinate axis lands in [t1, t2]. The mean fraction
/// estimates the annulus proportion; the minimum (with its witnessing
/// rotation) instantiates the averaging argument's existence claim.
///
/// # Errors
/// Rejects invalid thresholds and empty trial counts.
pub fn annulus_capture_experiment(
    set: &VectorSet,
    t1: f64,
    t2: f64,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<AnnulusReport, McError> {
    check_thresholds(t1, t2)?;
    if trials == 0 {
        return Err(McError::NoSamples);
    }
    let d = set.dimension();
    let rays = unit_rays(set);
    let fractions = run_trials(trials, threads, seed, &|_, rng| {
        let unitary = sample_haar_unitary(d, rng);
        let axis_row = &unitary[0];
        let captured = rays
            .iter()
            .filter(|ray| {
                // <e_0|g psi> is the first entry of the rotated ray.
                let amp: Complex64 = axis_row.iter().zip(ray.iter()).map(|(g, p)| g * p).sum();
                let o = amp.norm_sqr();
                (t1..=t2).contains(&o)
            })
            .count();
        captured as f64 / rays.len() as f64
    });
    let n = fractions.len() as f64;
    let mean_fraction = fractions.iter().sum::<f64>() / n;
    let variance = fractions
        .iter()
        .map(|f| (f - mean_fraction).powi(2))
        .sum::<f64>()
        / n;
    let std_error = (variance / n).sqrt();
    let (min_trial, min_fraction) = fractions
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
        .map(|(i, f)| (i as u64, f))
        .expect("at least one trial");
    // Regenerate the witnessing rotation from its substream.
    let best = sample_haar_unitary(d, &mut trial_rng(seed, min_trial));
    let best_rotation = best
        .iter()
        .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
        .collect();
    // Expectation from the exact annulus proportion at rank 1; f64
    // thresholds convert to rationals exactly.
    let params = BoundParams::new(
        d,
        1,
        BigRational::from_float(t1).expect("finite threshold"),
        BigRational::from_float(t2).expect("finite threshold"),
    )
    .expect("thresholds already validated");
    let expected = bound_to_f64(&annulus_proportion(&params));
    let mean_ok = (mean_fraction - expected).abs() <= 3.0 * std_error + FLOAT_TOLERANCE;
    let min_le_mean = min_fraction <= mean_fraction + FLOAT_TOLERANCE;
    Ok(AnnulusReport {
        trials,
        seed,
        t1,
        t2,
        mean_fraction,
        min_fraction,
        min_trial,
        expected,
        std_error,
        mean_ok,
        min_le_mean,
        best_rotation,
    })
}

/// Threshold labeling around a center state: ONE above t2, C inside
/// [t1, t2], ZERO below. With t1 <= 1/d and t2 >= 1/2 the result is valid
/// on any set with full bases: cap-hit makes the C-or-ONE set a
/// transversal and cap-independence keeps the ONEs independent.
///
/// # Errors
/// Rejects centers of the wrong dimension and invalid thresholds.
pub fn cap_labeling(
    set: &VectorSet,
    center: &[Complex64],
    t1: f64,
    t2: f64,
) -> Result<Labeling, McError> {
    check_thresholds(t1, t2)?;
    if center.len() != set.dimension() {
        return Err(McError::CenterLengthMismatch {
            expected: set.dimension(),
            found: center.len(),
        });
    }
    let norm = center.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let unit_center: Vec<Complex64> = center.iter().map(|z| z / norm).collect();
    let labels = unit_rays(set)
        .iter()
        .map(|ray| {
            let o = overlap(&unit_center, ray);
            if o > t2 {
                Label::One
            } else if o >= t1 {
                Label::Contextual
            } else {
                Label::Zero
            }
        })
        .collect();
    Ok(Labeling(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_builtin;
    use crate::solver::validate_labeling;

    fn basis_set(d: usize) -> VectorSet {
        use crate::scalar::ExactScalar;
        let rays: Vec<Vec<ExactScalar>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if i == j {
                            ExactScalar::one()
                        } else {
                            ExactScalar::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        VectorSet::new("basis", d, rays).unwrap()
    }

    #[test]
    fn haar_vectors_are_unit_and_deterministic() {
        for d in [1usize, 2, 5, 9] {
            let mut rng = trial_rng(42, 0);
            let v = sample_haar_vector(d, &mut rng);
            let norm: f64 = v.iter().map(Complex64::norm_sqr).sum();
            assert!((norm - 1.0).abs() < 1e-12, "d = {d}");
            let again = sample_haar_vector(d, &mut trial_rng(42, 0));
            assert_eq!(v, again);
        }
        let scalar = sample_haar_vector(1, &mut trial_rng(7, 0));
        assert!((scalar[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn first_component_of_qubit_is_uniform() {
        // |psi_1|^2 ~ Beta(1,1) = U[0,1] at d = 2.
        let cfg = McConfig::new(2, 1, 100_000, 2024).unwrap();
        let report = overlap_distribution_test(&cfg, 1).unwrap();
        assert!(report.pass, "KS {} >= {}", report.ks_statistic, report.critical_value);
    }

    #[test]
    fn beta_law_for_rank_two() {
        let cfg = McConfig::new(8, 2, 40_000, 99).unwrap();
        let report = overlap_distribution_test(&cfg, 1).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let cfg = McConfig::new(4, 2, 5_000, 5).unwrap();
        let single = overlap_distribution_test(&cfg, 1).unwrap();
        let multi = overlap_distribution_test(&cfg, 4).unwrap();
        assert_eq!(single.ks_statistic.to_bits(), multi.ks_statistic.to_bits());

        let set = load_builtin("cabello18").unwrap();
        let one = cap_hit_check(&set, 200, 3, 1).unwrap();
        let four = cap_hit_check(&set, 200, 3, 4).unwrap();
        assert_eq!(one.min_max_overlap.to_bits(), four.min_max_overlap.to_bits());
    }

    #[test]
    fn haar_unitary_is_unitary() {
        for d in [2usize, 4, 8] {
            let u = sample_haar_unitary(d, &mut trial_rng(11, 0));
            for i in 0..d {
                for j in 0..d {
                    let dot: Complex64 = (0..d).map(|k| u[i][k].conj() * u[j][k]).sum();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!(
                        (dot.re - expected).abs() < 1e-9 && dot.im.abs() < 1e-9,
                        "d = {d}, rows {i},{j}"
                    );
                }
            }
        }
    }

    #[test]
    fn cap_hit_on_cabello() {
        let set = load_builtin("cabello18").unwrap();
        let report = cap_hit_check(&set, 1_000, 17, 2).unwrap();
        assert!(report.pass);
        assert!(report.min_max_overlap >= 0.25 - FLOAT_TOLERANCE);
        assert_eq!(report.contexts, 9);
    }

    #[test]
    fn cap_hit_requires_full_bases() {
        // Two rays of a 3-dimensional space never form a basis.
        use crate::scalar::ExactScalar;
        let rays = vec![
            vec![ExactScalar::one(), ExactScalar::zero(), ExactScalar::zero()],
            vec![ExactScalar::zero(), ExactScalar::one(), ExactScalar::zero()],
        ];
        let set = VectorSet::new("pair", 3, rays).unwrap();
        assert!(matches!(
            cap_hit_check(&set, 10, 0, 1),
            Err(McError::NoFullBasis { omega: 2, d: 3 })
        ));
    }

    #[test]
    fn no_orthogonal_pair_shares_the_half_cap() {
        for d in [2usize, 3, 4] {
            let report = cap_independence_check(d, 10_000, 23, 2).unwrap();
            assert_eq!(report.violations, 0, "d = {d}");
            assert!(report.closest_call <= 0.5 + FLOAT_TOLERANCE);
        }
    }

    #[test]
    fn annulus_capture_tracks_expectation() {
        let set = load_builtin("peres33").unwrap();
        let report = annulus_capture_experiment(&set, 1.0 / 3.0, 0.5, 2_000, 7, 2).unwrap();
        assert!(report.mean_ok, "mean {} vs expected {}", report.mean_fraction, report.expected);
        assert!(report.min_le_mean);
        // The witnessing rotation must be unitary.
        let d = set.dimension();
        for i in 0..d {
            let row_norm: f64 = report.best_rotation[i]
                .iter()
                .map(|[re, im]| re * re + im * im)
                .sum();
            assert!((row_norm - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn empty_annulus_captures_nothing() {
        let set = load_builtin("cabello18").unwrap();
        let report = annulus_capture_experiment(&set, 0.3, 0.3, 200, 5, 1).unwrap();
        assert_eq!(report.mean_fraction, 0.0);
        assert_eq!(report.min_fraction, 0.0);
    }

    #[test]
    fn cap_labeling_trivial_cases() {
        let basis = basis_set(4);
        let mut center = vec![Complex64::new(0.0, 0.0); 4];
        center[0] = Complex64::new(1.0, 0.0);
        let labeling = cap_labeling(&basis, &center, 0.25, 0.5).unwrap();
        assert_eq!(labeling.0[0], Label::One);
        assert!(labeling.0[1..].iter().all(|&l| l == Label::Zero));

        // Uniform superposition against the standard basis at d = 3: every
        // overlap is exactly 1/3, inside [1/3, 1/2].
        let basis3 = basis_set(3);
        let uniform = vec![Complex64::new(1.0, 0.0); 3];
        let labeling = cap_labeling(&basis3, &uniform, 1.0 / 3.0, 0.5).unwrap();
        assert!(labeling.0.iter().all(|&l| l == Label::Contextual));
    }

    #[test]
    fn cap_labeling_is_valid_on_catalog_sets() {
        for name in ["cabello18", "peres33", "peres_mermin24"] {
            let set = load_builtin(name).unwrap();
            let graph = OrthoGraph::build(&set);
            let contexts = graph.enumerate_contexts();
            let d = set.dimension();
            for trial in 0..20 {
                let center = sample_haar_vector(d, &mut trial_rng(1000 + trial, trial));
                let labeling = cap_labeling(&set, &center, 1.0 / d as f64, 0.5).unwrap();
                let report = validate_labeling(&graph, &contexts, &labeling).unwrap();
                assert!(report.valid, "{name}, trial {trial}: {:?}", report.violation);
            }
        }
    }

    #[test]
    fn config_validation() {
        assert!(matches!(
            McConfig::new(4, 0, 10, 0),
            Err(McError::RankOutOfRange { d: 4, r: 0 })
        ));
        assert!(matches!(
            McConfig::new(4, 4, 10, 0),
            Err(McError::RankOutOfRange { d: 4, r: 4 })
        ));
        assert!(matches!(McConfig::new(4, 1, 0, 0), Err(McError::NoSamples)));
        let cfg = McConfig::new(4, 1, 10, 0).unwrap();
        assert!(cfg.with_thresholds(0.6, 0.4).is_err());
        assert!(matches!(
            cap_independence_check(1, 10, 0, 1),
            Err(McError::DimensionTooSmall { min: 2, got: 1 })
        ));
    }
}

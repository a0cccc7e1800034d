//! Experiment orchestration: exact verification over complete graphs,
//! Monte Carlo threshold sweeps, coupling runs, and the main rarity audit.
//!
//! Every trial is reproducible from (master_seed, point index, trial
//! index); trials are independent work items executed on a rayon pool whose
//! size comes from the GONSPAN_WORKERS environment variable (default: all
//! cores), and aggregation is a deterministic fold in (point, trial) order,
//! so outputs are byte-identical regardless of thread count. Wall-clock
//! fields live only in the in-memory records, never in serialized output.

use crate::bounds::pstar;
use crate::error::{Error, Result};
use crate::gf2::EXACT_DIM_CAP;
use crate::graph::{gen_coupled, gen_gnp, mix_seed, LabeledGraph};
use crate::paths::{sigma, PathCaps};
use crate::subspace::{
    classify_h, find_f, for_each_kappa_cycle, h_space, in_q_cycle, in_t_cycle, kappa_span_rank,
    HClass, HPattern, DEFAULT_COPY_CAP,
};
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

/// Worker-count environment variable.
pub const WORKERS_ENV: &str = "GONSPAN_WORKERS";

fn worker_pool() -> rayon::ThreadPool {
    let workers = std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1)
        });
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("worker pool")
}

/// Default sweep grid, in multiples of the threshold.
pub const DEFAULT_GRID: [f64; 9] = [0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.4, 1.7];

/// Whether a sweep computes the canonical minimizer per trial or only the
/// exact span test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    /// Full minimizer search per trial (weights and certification).
    Exact,
    /// Span test only; minimizer weight is reported as zero.
    Heuristic,
}

/// A grid-of-p experiment description.
#[derive(Clone, Debug, Serialize)]
pub struct SweepSpec {
    pub n: usize,
    pub kappa: usize,
    /// Grid points as multiples of pstar(kappa, n).
    pub grid: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
    pub mode: SweepMode,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.kappa < 3 || self.kappa.is_multiple_of(2) {
            return Err(Error::BadKappa(self.kappa));
        }
        if self.trials == 0 {
            return Err(Error::Degenerate("trials must be >= 1".into()));
        }
        if self.grid.is_empty() || self.grid.iter().any(|&g| g < 0.0) {
            return Err(Error::Degenerate(
                "grid multiples must be nonnegative".into(),
            ));
        }
        Ok(())
    }
}

/// One Monte Carlo observation.
#[derive(Clone, Debug, Serialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub n: usize,
    pub kappa: usize,
    pub p: f64,
    pub in_q: bool,
    pub in_t: bool,
    pub f_weight: usize,
    pub f_certified: bool,
    /// |F| = alpha n^2 p / 2.
    pub alpha: f64,
    /// Cycle space is trivial (relevant below p ~ 1/n).
    pub acyclic: bool,
    /// Timing only; excluded from reproducible outputs.
    #[serde(skip)]
    pub wall_time_ms: u64,
}

fn run_trial(n: usize, kappa: usize, p: f64, seed: u64, mode: SweepMode) -> Result<TrialRecord> {
    let t0 = Instant::now();
    let g = gen_gnp(n, p, seed)?;
    let acyclic = g.m() + g.component_count() == g.n();
    let in_q = in_q_cycle(&g, kappa)?;
    let (in_t, f_weight, f_certified) = match mode {
        SweepMode::Exact => {
            let out = find_f(&g, kappa, EXACT_DIM_CAP, seed)?;
            (
                out.subset.is_empty_set(),
                out.subset.weight(),
                out.certified,
            )
        }
        SweepMode::Heuristic => {
            let t = in_t_cycle(&g, kappa)?;
            (t, 0, t)
        }
    };
    let alpha = if p > 0.0 {
        2.0 * f_weight as f64 / (n as f64 * n as f64 * p)
    } else {
        0.0
    };
    Ok(TrialRecord {
        seed,
        n,
        kappa,
        p,
        in_q,
        in_t,
        f_weight,
        f_certified,
        alpha,
        acyclic,
        wall_time_ms: t0.elapsed().as_millis() as u64,
    })
}

/// Wilson 95% interval for count successes out of n.
pub fn wilson(count: usize, n: usize) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let nf = n as f64;
    let phat = count as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let center = (phat + z2 / (2.0 * nf)) / denom;
    let half = z * (phat * (1.0 - phat) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Per-grid-point aggregate of a sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepPoint {
    pub point: usize,
    pub multiple: f64,
    pub p: f64,
    pub trials: usize,
    pub q_count: usize,
    pub t_count: usize,
    pub q_not_t_count: usize,
    pub uncertified_count: usize,
    pub acyclic_count: usize,
    pub pr_q: f64,
    pub pr_q_lo: f64,
    pub pr_q_hi: f64,
    pub pr_t: f64,
    pub pr_t_lo: f64,
    pub pr_t_hi: f64,
    pub pr_q_not_t: f64,
    pub pr_q_not_t_lo: f64,
    pub pr_q_not_t_hi: f64,
    /// Mean alpha over trials with a nonzero minimizer (0 when none).
    pub mean_alpha_nonzero: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub pstar: f64,
    pub points: Vec<SweepPoint>,
    #[serde(skip)]
    pub trials: Vec<TrialRecord>,
}

/// Runs the sweep: per grid point, `trials` independent graphs with seeds
/// derived from (master_seed, point, trial); per-trial failures surface as
/// an error only if graph generation itself fails (probabilities are
/// validated up front).
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let ps = pstar(spec.kappa, spec.n)?;
    for &mult in &spec.grid {
        let p = mult * ps;
        if p > 1.0 {
            return Err(Error::InvalidProbability(p));
        }
    }
    let jobs: Vec<(usize, usize)> = (0..spec.grid.len())
        .flat_map(|pi| (0..spec.trials).map(move |ti| (pi, ti)))
        .collect();
    let pool = worker_pool();
    let records: Vec<TrialRecord> = pool.install(|| {
        jobs.par_iter()
            .map(|&(pi, ti)| {
                let p = spec.grid[pi] * ps;
                let seed = mix_seed(&[spec.master_seed, pi as u64, ti as u64]);
                run_trial(spec.n, spec.kappa, p, seed, spec.mode)
                    .expect("validated trial parameters")
            })
            .collect()
    });
    let mut points = Vec::with_capacity(spec.grid.len());
    for (pi, &mult) in spec.grid.iter().enumerate() {
        let chunk = &records[pi * spec.trials..(pi + 1) * spec.trials];
        points.push(aggregate_point(pi, mult, mult * ps, chunk));
    }
    Ok(SweepResult {
        spec: spec.clone(),
        pstar: ps,
        points,
        trials: records,
    })
}

fn aggregate_point(point: usize, multiple: f64, p: f64, chunk: &[TrialRecord]) -> SweepPoint {
    let n = chunk.len();
    let q_count = chunk.iter().filter(|r| r.in_q).count();
    let t_count = chunk.iter().filter(|r| r.in_t).count();
    let q_not_t_count = chunk.iter().filter(|r| r.in_q && !r.in_t).count();
    let uncertified_count = chunk.iter().filter(|r| !r.f_certified).count();
    let acyclic_count = chunk.iter().filter(|r| r.acyclic).count();
    let nonzero: Vec<f64> = chunk
        .iter()
        .filter(|r| r.f_weight > 0)
        .map(|r| r.alpha)
        .collect();
    let mean_alpha_nonzero = if nonzero.is_empty() {
        0.0
    } else {
        nonzero.iter().sum::<f64>() / nonzero.len() as f64
    };
    let (pr_q_lo, pr_q_hi) = wilson(q_count, n);
    let (pr_t_lo, pr_t_hi) = wilson(t_count, n);
    let (pr_qnt_lo, pr_qnt_hi) = wilson(q_not_t_count, n);
    SweepPoint {
        point,
        multiple,
        p,
        trials: n,
        q_count,
        t_count,
        q_not_t_count,
        uncertified_count,
        acyclic_count,
        pr_q: q_count as f64 / n as f64,
        pr_q_lo,
        pr_q_hi,
        pr_t: t_count as f64 / n as f64,
        pr_t_lo,
        pr_t_hi,
        pr_q_not_t: q_not_t_count as f64 / n as f64,
        pr_q_not_t_lo: pr_qnt_lo,
        pr_q_not_t_hi: pr_qnt_hi,
        mean_alpha_nonzero,
    }
}

pub const SWEEP_CSV_HEADER: &str = "point,multiple,p,trials,q_count,t_count,q_not_t_count,uncertified_count,acyclic_count,pr_q,pr_q_lo,pr_q_hi,pr_t,pr_t_lo,pr_t_hi,pr_q_not_t,pr_q_not_t_lo,pr_q_not_t_hi,mean_alpha_nonzero";

impl SweepResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(SWEEP_CSV_HEADER);
        out.push('\n');
        for pt in &self.points {
            out.push_str(&format!(
                "{},{:.6},{:.8},{},{},{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}\n",
                pt.point,
                pt.multiple,
                pt.p,
                pt.trials,
                pt.q_count,
                pt.t_count,
                pt.q_not_t_count,
                pt.uncertified_count,
                pt.acyclic_count,
                pt.pr_q,
                pt.pr_q_lo,
                pt.pr_q_hi,
                pt.pr_t,
                pt.pr_t_lo,
                pt.pr_t_hi,
                pt.pr_q_not_t,
                pt.pr_q_not_t_lo,
                pt.pr_q_not_t_hi,
                pt.mean_alpha_nonzero,
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable result")
    }
}

/// One coupling observation at a fixed retention ratio theta = q/p.
#[derive(Clone, Debug, Serialize)]
pub struct CoupleRecord {
    pub seed: u64,
    pub n: usize,
    pub kappa: usize,
    pub p: f64,
    pub q: f64,
    pub theta: f64,
    pub f_weight: usize,
    pub f_certified: bool,
    pub f0_weight: usize,
    pub alpha: f64,
    pub alpha0: f64,
    /// |F0| / (theta |F|) for nonzero F; 0 otherwise.
    pub ratio: f64,
    pub max_df0: usize,
    /// F0 has even intersection with every kappa-gon of G0 (hard-checked).
    pub f0_in_kperp_g0: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoupleTheta {
    pub theta: f64,
    pub q: f64,
    pub trials: usize,
    pub f_nonzero: usize,
    /// Trials with certified nonzero F of weight at least `min_f`.
    pub eligible: usize,
    pub in_band: usize,
    pub uncertified: usize,
    pub f0_membership_ok: usize,
    pub ratio_mean: f64,
    pub ratio_min: f64,
    pub ratio_max: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CouplingResult {
    pub n: usize,
    pub kappa: usize,
    pub p: f64,
    pub trials: usize,
    pub master_seed: u64,
    pub band: (f64, f64),
    pub min_f: usize,
    pub thetas: Vec<CoupleTheta>,
    #[serde(skip)]
    pub records: Vec<CoupleRecord>,
}

#[derive(Clone, Copy, Debug)]
pub struct CouplingOptions {
    /// Acceptance band for |F0|/(theta |F|).
    pub band: (f64, f64),
    /// Weight floor below which the ratio is too noisy to grade.
    pub min_f: usize,
}

impl Default for CouplingOptions {
    fn default() -> Self {
        CouplingOptions {
            band: (0.7, 1.3),
            min_f: 200,
        }
    }
}

/// Shared-label coupling run: one label sample per trial, sliced at p for G
/// and at q = theta p for G0; F comes from G, F0 = G0 ∩ F is re-expressed
/// over G0 and its kappa-gon-perp membership is asserted on every trial.
pub fn run_coupling(
    n: usize,
    kappa: usize,
    p: f64,
    thetas: &[f64],
    trials: usize,
    master_seed: u64,
    opts: CouplingOptions,
) -> Result<CouplingResult> {
    if kappa < 3 || kappa.is_multiple_of(2) {
        return Err(Error::BadKappa(kappa));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    for &t in thetas {
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::Domain(format!("theta {t} outside (0, 1]")));
        }
    }
    let jobs: Vec<usize> = (0..trials).collect();
    let thetas_owned = thetas.to_vec();
    let pool = worker_pool();
    let per_trial: Vec<Vec<CoupleRecord>> = pool.install(|| {
        jobs.par_iter()
            .map(|&ti| {
                couple_trial(
                    n,
                    kappa,
                    p,
                    &thetas_owned,
                    mix_seed(&[master_seed, ti as u64]),
                )
                .expect("validated coupling parameters")
            })
            .collect()
    });
    let records: Vec<CoupleRecord> = per_trial.into_iter().flatten().collect();
    let mut agg = Vec::new();
    for (i, &theta) in thetas.iter().enumerate() {
        let rows: Vec<&CoupleRecord> = records.iter().skip(i).step_by(thetas.len()).collect();
        debug_assert_eq!(rows.len(), trials);
        let f_nonzero = rows.iter().filter(|r| r.f_weight > 0).count();
        let eligible_rows: Vec<&&CoupleRecord> = rows
            .iter()
            .filter(|r| r.f_certified && r.f_weight >= opts.min_f)
            .collect();
        let in_band = eligible_rows
            .iter()
            .filter(|r| r.ratio >= opts.band.0 && r.ratio <= opts.band.1)
            .count();
        let ratios: Vec<f64> = rows
            .iter()
            .filter(|r| r.f_weight > 0)
            .map(|r| r.ratio)
            .collect();
        agg.push(CoupleTheta {
            theta,
            q: theta * p,
            trials,
            f_nonzero,
            eligible: eligible_rows.len(),
            in_band,
            uncertified: rows.iter().filter(|r| !r.f_certified).count(),
            f0_membership_ok: rows.iter().filter(|r| r.f0_in_kperp_g0).count(),
            ratio_mean: mean(&ratios),
            ratio_min: ratios.iter().copied().fold(f64::NAN, f64::min),
            ratio_max: ratios.iter().copied().fold(f64::NAN, f64::max),
        });
    }
    Ok(CouplingResult {
        n,
        kappa,
        p,
        trials,
        master_seed,
        band: opts.band,
        min_f: opts.min_f,
        thetas: agg,
        records,
    })
}

fn mean(v: &[f64]) -> f64 {
    if v.is_empty() {
        0.0
    } else {
        v.iter().sum::<f64>() / v.len() as f64
    }
}

fn couple_trial(
    n: usize,
    kappa: usize,
    p: f64,
    thetas: &[f64],
    seed: u64,
) -> Result<Vec<CoupleRecord>> {
    let sample = gen_coupled(n, seed);
    let g = sample.slice(p)?;
    let out = find_f(&g, kappa, EXACT_DIM_CAP, seed)?;
    let f = &out.subset;
    let f_weight = f.weight();
    let alpha = if p > 0.0 {
        2.0 * f_weight as f64 / (n as f64 * n as f64 * p)
    } else {
        0.0
    };
    let mut records = Vec::with_capacity(thetas.len());
    for &theta in thetas {
        let q = theta * p;
        let g0 = sample.slice(q)?;
        let f0 = f.restrict_to(&g, &g0)?;
        // F0 is a subset of F by construction; check it.
        for (i, &(u, v)) in g0.edges().iter().enumerate() {
            if f0.contains_index(i) {
                let gi = g.edge_index(u as usize, v as usize).expect("nested edge");
                assert!(f.contains_index(gi), "F0 must be a subset of F");
            }
        }
        // Hard assertion: even intersection with every kappa-gon of G0.
        let mut ok = true;
        for_each_kappa_cycle(&g0, kappa, |cyc| {
            let mut parity = 0usize;
            for i in 0..kappa {
                let idx = g0
                    .edge_index(cyc[i] as usize, cyc[(i + 1) % kappa] as usize)
                    .expect("cycle edge");
                if f0.contains_index(idx) {
                    parity ^= 1;
                }
            }
            if parity == 1 {
                ok = false;
                return false;
            }
            true
        });
        assert!(
            ok,
            "F0 left the kappa-gon perp of G0 (seed {seed}, theta {theta}); \
             this contradicts F0 ∩ C = F ∩ C for kappa-gons C of G0"
        );
        let f0_weight = f0.weight();
        let alpha0 = if q > 0.0 {
            2.0 * f0_weight as f64 / (n as f64 * n as f64 * q)
        } else {
            0.0
        };
        let ratio = if f_weight > 0 {
            f0_weight as f64 / (theta * f_weight as f64)
        } else {
            0.0
        };
        let max_df0 = (0..n)
            .map(|v| f0.degree(&g0, v).expect("same host"))
            .max()
            .unwrap_or(0);
        records.push(CoupleRecord {
            seed,
            n,
            kappa,
            p,
            q,
            theta,
            f_weight,
            f_certified: out.certified,
            f0_weight,
            alpha,
            alpha0,
            ratio,
            max_df0,
            f0_in_kperp_g0: ok,
        });
    }
    Ok(records)
}

pub const COUPLE_CSV_HEADER: &str = "theta,q,trials,f_nonzero,eligible,in_band,uncertified,f0_membership_ok,ratio_mean,ratio_min,ratio_max";

impl CouplingResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(COUPLE_CSV_HEADER);
        out.push('\n');
        for t in &self.thetas {
            out.push_str(&format!(
                "{:.6},{:.8},{},{},{},{},{},{},{:.6},{:.6},{:.6}\n",
                t.theta,
                t.q,
                t.trials,
                t.f_nonzero,
                t.eligible,
                t.in_band,
                t.uncertified,
                t.f0_membership_ok,
                t.ratio_mean,
                t.ratio_min,
                t.ratio_max,
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable result")
    }
}

/// Logistic fit of empirical probabilities against grid multiples:
/// pr(x) ~ 1 / (1 + exp(-(x - x_half)/slope_scale)). Returns
/// (x_half, slope at the crossing).
pub fn fit_threshold(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 4 {
        return Err(Error::Degenerate(
            "threshold fit needs at least 4 grid points".into(),
        ));
    }
    let lo = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    if hi - lo < 1e-9 {
        return Err(Error::Degenerate(
            "threshold fit needs nondegenerate probabilities".into(),
        ));
    }
    let xmin = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let xmax = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let sse = |x0: f64, s: f64| -> f64 {
        points
            .iter()
            .map(|&(x, pr)| {
                let model = 1.0 / (1.0 + (-(x - x0) / s).exp());
                (model - pr).powi(2)
            })
            .sum()
    };
    let mut best = (f64::INFINITY, 0.0, 1.0);
    // Coarse grid then two refinement passes around the best cell.
    let mut x_lo = xmin - 0.5;
    let mut x_hi = xmax + 0.5;
    let mut s_lo = 1e-3f64;
    let mut s_hi = 2.0f64;
    for _pass in 0..3 {
        let mut local = best;
        for i in 0..=120 {
            let x0 = x_lo + (x_hi - x_lo) * i as f64 / 120.0;
            for j in 0..=60 {
                let s = s_lo * (s_hi / s_lo).powf(j as f64 / 60.0);
                let e = sse(x0, s);
                if e < local.0 {
                    local = (e, x0, s);
                }
            }
        }
        best = local;
        let x_span = (x_hi - x_lo) / 10.0;
        x_lo = best.1 - x_span;
        x_hi = best.1 + x_span;
        s_lo = (best.2 / 3.0).max(1e-4);
        s_hi = best.2 * 3.0;
    }
    // Slope of the logistic at its midpoint is 1/(4 s).
    Ok((best.1, 1.0 / (4.0 * best.2)))
}

/// Witness property check outcome for one rare trial.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessCheck {
    pub seed: u64,
    pub f_weight: usize,
    pub f_certified: bool,
    /// d_F(v) <= d_G(v)/2 at every vertex.
    pub half_degree_ok: bool,
    /// |F| >= sigma^(kappa-1)(x, y) + 1 for every edge xy of F, with every
    /// packing value exact.
    pub packing_floor_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditPoint {
    pub n: usize,
    pub point: usize,
    pub multiple: f64,
    pub p: f64,
    pub trials: usize,
    pub q_count: usize,
    pub q_not_t_count: usize,
    pub rate: f64,
    pub rate_hi: f64,
    pub witnesses: Vec<WitnessCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditResult {
    pub kappa: usize,
    pub trials: usize,
    pub master_seed: u64,
    pub points: Vec<AuditPoint>,
    pub max_rate: f64,
    pub max_rate_hi: f64,
    pub witnesses_total: usize,
    pub witnesses_all_ok: bool,
}

/// The rarity audit: per (n, grid point), the fraction of trials landing in
/// coverage-without-span, each such witness checked against the half-degree
/// bound and the packing floor.
pub fn audit_main_theorem(
    n_list: &[usize],
    kappa: usize,
    grid: &[f64],
    trials: usize,
    master_seed: u64,
) -> Result<AuditResult> {
    if kappa < 3 || kappa.is_multiple_of(2) {
        return Err(Error::BadKappa(kappa));
    }
    if trials == 0 {
        return Err(Error::Degenerate("trials must be >= 1".into()));
    }
    let mut points = Vec::new();
    let pool = worker_pool();
    for (ni, &n) in n_list.iter().enumerate() {
        let ps = pstar(kappa, n)?;
        for (pi, &mult) in grid.iter().enumerate() {
            let p = mult * ps;
            if p > 1.0 {
                return Err(Error::InvalidProbability(p));
            }
            let outcomes: Vec<(bool, bool, Option<WitnessCheck>)> = pool.install(|| {
                (0..trials)
                    .into_par_iter()
                    .map(|ti| {
                        let seed = mix_seed(&[master_seed, ni as u64, pi as u64, ti as u64]);
                        audit_trial(n, kappa, p, seed).expect("validated audit parameters")
                    })
                    .collect()
            });
            let q_count = outcomes.iter().filter(|o| o.0).count();
            let q_not_t_count = outcomes.iter().filter(|o| o.0 && !o.1).count();
            let witnesses: Vec<WitnessCheck> = outcomes.into_iter().filter_map(|o| o.2).collect();
            let (_, rate_hi) = wilson(q_not_t_count, trials);
            points.push(AuditPoint {
                n,
                point: pi,
                multiple: mult,
                p,
                trials,
                q_count,
                q_not_t_count,
                rate: q_not_t_count as f64 / trials as f64,
                rate_hi,
                witnesses,
            });
        }
    }
    let max_rate = points.iter().map(|pt| pt.rate).fold(0.0, f64::max);
    let max_rate_hi = points.iter().map(|pt| pt.rate_hi).fold(0.0, f64::max);
    let witnesses_total = points.iter().map(|pt| pt.witnesses.len()).sum();
    let witnesses_all_ok = points
        .iter()
        .flat_map(|pt| &pt.witnesses)
        .all(|w| w.half_degree_ok && w.packing_floor_ok);
    Ok(AuditResult {
        kappa,
        trials,
        master_seed,
        points,
        max_rate,
        max_rate_hi,
        witnesses_total,
        witnesses_all_ok,
    })
}

fn audit_trial(
    n: usize,
    kappa: usize,
    p: f64,
    seed: u64,
) -> Result<(bool, bool, Option<WitnessCheck>)> {
    let g = gen_gnp(n, p, seed)?;
    let in_q = in_q_cycle(&g, kappa)?;
    if !in_q {
        // The conjunction is already false; the span test still runs (it is
        // cheap here) so per-trial records stay complete.
        let t = in_t_cycle(&g, kappa)?;
        return Ok((false, t, None));
    }
    let out = find_f(&g, kappa, EXACT_DIM_CAP, seed)?;
    if out.subset.is_empty_set() {
        return Ok((true, true, None));
    }
    let f = &out.subset;
    let half_degree_ok = (0..n).all(|v| {
        let df = f.degree(&g, v).expect("same host");
        2 * df <= g.degree(v)
    });
    let f_weight = f.weight();
    let mut packing_floor_ok = true;
    for idx in f.vec().support() {
        let (x, y) = g.edge(idx);
        let stats = sigma(&g, x as usize, y as usize, kappa - 1, PathCaps::default())?;
        if !stats.sigma_certified || f_weight < stats.sigma + 1 {
            packing_floor_ok = false;
            break;
        }
    }
    Ok((
        true,
        false,
        Some(WitnessCheck {
            seed,
            f_weight,
            f_certified: out.certified,
            half_degree_ok,
            packing_floor_ok,
        }),
    ))
}

pub const AUDIT_CSV_HEADER: &str = "n,point,multiple,p,trials,q_count,q_not_t_count,rate,rate_hi,witnesses,witness_half_degree_ok,witness_packing_floor_ok,witness_certified";

impl AuditResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(AUDIT_CSV_HEADER);
        out.push('\n');
        for pt in &self.points {
            out.push_str(&format!(
                "{},{},{:.6},{:.8},{},{},{},{:.6},{:.6},{},{},{},{}\n",
                pt.n,
                pt.point,
                pt.multiple,
                pt.p,
                pt.trials,
                pt.q_count,
                pt.q_not_t_count,
                pt.rate,
                pt.rate_hi,
                pt.witnesses.len(),
                pt.witnesses.iter().filter(|w| w.half_degree_ok).count(),
                pt.witnesses.iter().filter(|w| w.packing_floor_ok).count(),
                pt.witnesses.iter().filter(|w| w.f_certified).count(),
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable result")
    }
}

/// The pattern library used by the exact verification run.
pub fn standard_h_library() -> Vec<HPattern> {
    vec![
        HPattern::single_edge(),
        HPattern::path(2),
        HPattern::matching(2),
        HPattern::path(3),
        HPattern::cycle(3),
        HPattern::cycle(4),
        HPattern::cycle(5),
        HPattern::complete(4),
        HPattern::star(3),
        HPattern::triangle_plus_edge(),
        HPattern::bowtie(),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyRow {
    pub h: String,
    pub n: usize,
    pub copies: usize,
    pub dim: usize,
    pub expected: usize,
    pub class: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub all_pass: bool,
}

fn class_dim(class: HClass, n: usize) -> usize {
    let m = n * (n - 1) / 2;
    match class {
        HClass::FullCycle => m - n + 1,
        HClass::EvenCycle => m - n,
        HClass::FullEdge => m,
        HClass::EvenEdge => m - 1,
    }
}

fn class_name(class: HClass) -> &'static str {
    match class {
        HClass::FullCycle => "cycle",
        HClass::EvenCycle => "even-cycle",
        HClass::FullEdge => "full",
        HClass::EvenEdge => "even",
    }
}

/// Exact verification over complete graphs: for each library pattern and
/// each n in [max(v_H + 2, 5), n_max], the copy span dimension must equal
/// its classification value; odd cycles are verified from n = kappa
/// (boundary inclusive) up to cycle_n_max with streamed rank.
pub fn verify_kn(n_max: usize, cycle_n_max: usize, lib: &[HPattern]) -> Result<VerifyReport> {
    if n_max > 10 {
        return Err(Error::Domain(format!(
            "general-pattern verification is exhaustive only up to n = 10 (got {n_max})"
        )));
    }
    if cycle_n_max > 12 {
        return Err(Error::Domain(format!(
            "odd-cycle verification is capped at n = 12 (got {cycle_n_max})"
        )));
    }
    let mut rows = Vec::new();
    // Odd-cycle spans from the boundary n = kappa upward.
    for &kappa in &[3usize, 5, 7] {
        for n in kappa..=cycle_n_max {
            let kn = LabeledGraph::complete(n);
            let expected = n * (n - 1) / 2 - n + 1;
            let mut copies = 0usize;
            for_each_kappa_cycle(&kn, kappa, |_| {
                copies += 1;
                true
            });
            let dim = kappa_span_rank(&kn, kappa, Some(expected));
            rows.push(VerifyRow {
                h: format!("C{kappa}"),
                n,
                copies,
                dim,
                expected,
                class: "cycle".into(),
                pass: dim == expected,
            });
        }
    }
    // General library by full span rank.
    for h in lib {
        let class = classify_h(h);
        let n_lo = (h.v_h() + 2).max(5);
        for n in n_lo..=n_max {
            let kn = LabeledGraph::complete(n);
            let copies = crate::subspace::enumerate_copies(&kn, h, DEFAULT_COPY_CAP)?;
            if copies.truncated() {
                return Err(Error::Truncated {
                    cap: DEFAULT_COPY_CAP,
                });
            }
            let space = h_space(&kn, h, DEFAULT_COPY_CAP)?;
            let expected = class_dim(class, n);
            rows.push(VerifyRow {
                h: h.label().to_string(),
                n,
                copies: copies.len(),
                dim: space.dim(),
                expected,
                class: class_name(class).into(),
                pass: space.dim() == expected,
            });
        }
    }
    let all_pass = rows.iter().all(|r| r.pass);
    Ok(VerifyReport { rows, all_pass })
}

pub const VERIFY_CSV_HEADER: &str = "h,n,copies,dim,expected,class,pass";

impl VerifyReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(VERIFY_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.h, r.n, r.copies, r.dim, r.expected, r.class, r.pass
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable result")
    }
}

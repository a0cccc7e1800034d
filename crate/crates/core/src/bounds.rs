//! Analytic toolbox: tail-bound evaluators, the coverage threshold formula,
//! the 2-density parameter of small patterns, path-family moments, and
//! adjacency spectrum estimation.
//!
//! Every bound evaluator works in log space and returns the log-probability
//! alongside the probability, so desk-scale means in the hundreds never
//! underflow.

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::subspace::HPattern;

/// phi(x) = (1 + x) log(1 + x) - x, extended by continuity with
/// phi(-1) = 1. The exponent shape shared by the upper and lower tails.
pub fn phi(x: f64) -> Result<f64> {
    if x < -1.0 {
        return Err(Error::Domain(format!("phi needs x >= -1, got {x}")));
    }
    if x == -1.0 {
        return Ok(1.0);
    }
    Ok((1.0 + x) * x.ln_1p() - x)
}

/// A bound value carried in both log space and probability space.
#[derive(Clone, Copy, Debug)]
pub struct TailBound {
    pub log_prob: f64,
    pub prob: f64,
}

impl TailBound {
    fn from_log(log_prob: f64) -> Self {
        TailBound {
            log_prob: log_prob.min(0.0),
            prob: log_prob.min(0.0).exp(),
        }
    }
}

/// The two standard upper-tail forms for Bin-like X with mean mu:
/// exp[-mu phi(t/mu)] and the weaker exp[-t^2 / (2(mu + t/3))].
#[derive(Clone, Copy, Debug)]
pub struct UpperTail {
    pub phi_form: TailBound,
    pub quad_form: TailBound,
}

pub fn chernoff_upper(mu: f64, t: f64) -> Result<UpperTail> {
    if mu <= 0.0 || t < 0.0 {
        return Err(Error::Domain(format!(
            "chernoff_upper needs mu > 0, t >= 0 (mu={mu}, t={t})"
        )));
    }
    let phi_form = TailBound::from_log(-mu * phi(t / mu)?);
    let quad_form = TailBound::from_log(-t * t / (2.0 * (mu + t / 3.0)));
    Ok(UpperTail {
        phi_form,
        quad_form,
    })
}

/// Lower-tail forms exp[-mu phi(-t/mu)] and exp[-t^2/(2 mu)], for
/// 0 <= t <= mu.
#[derive(Clone, Copy, Debug)]
pub struct LowerTail {
    pub phi_form: TailBound,
    pub quad_form: TailBound,
}

pub fn chernoff_lower(mu: f64, t: f64) -> Result<LowerTail> {
    if mu <= 0.0 || t < 0.0 || t > mu {
        return Err(Error::Domain(format!(
            "chernoff_lower needs 0 <= t <= mu (mu={mu}, t={t})"
        )));
    }
    let phi_form = TailBound::from_log(-mu * phi(-t / mu)?);
    let quad_form = TailBound::from_log(-t * t / (2.0 * mu));
    Ok(LowerTail {
        phi_form,
        quad_form,
    })
}

/// Large-deviation form Pr(X > K mu) < exp[-K mu log(K/e)]; vacuous until
/// K exceeds e.
pub fn chernoff_large(mu: f64, k: f64) -> Result<TailBound> {
    if mu <= 0.0 || k <= 0.0 {
        return Err(Error::Domain(format!(
            "chernoff_large needs mu, K > 0 (mu={mu}, K={k})"
        )));
    }
    Ok(TailBound::from_log(
        -k * mu * (k / std::f64::consts::E).ln(),
    ))
}

/// Inputs to the correlated lower-tail bound: the expected count, the
/// pair-overlap sum including diagonal terms, and the deviation.
#[derive(Clone, Copy, Debug)]
pub struct TailParams {
    pub mu: f64,
    pub delta_bar: f64,
    pub t: f64,
}

impl TailParams {
    pub fn new(mu: f64, delta_bar: f64, t: f64) -> Result<Self> {
        if mu < 0.0 || delta_bar < mu {
            return Err(Error::Domain(format!(
                "need 0 <= mu <= delta_bar (mu={mu}, delta_bar={delta_bar})"
            )));
        }
        if t < 0.0 || t > mu {
            return Err(Error::Domain(format!("need 0 <= t <= mu (t={t}, mu={mu})")));
        }
        Ok(TailParams { mu, delta_bar, t })
    }
}

/// Correlated-family lower tail: Pr(X <= mu - t) is at most
/// exp[-phi(-t/mu) mu^2 / delta_bar], and also at most
/// exp[-t^2/(2 delta_bar)]; the phi form is the tighter of the two.
pub fn janson_lower(params: TailParams) -> Result<LowerTail> {
    let TailParams { mu, delta_bar, t } = params;
    if mu == 0.0 {
        // Degenerate family: both bounds are vacuous.
        return Ok(LowerTail {
            phi_form: TailBound::from_log(0.0),
            quad_form: TailBound::from_log(0.0),
        });
    }
    let phi_form = TailBound::from_log(-phi(-t / mu)? * mu * mu / delta_bar);
    let quad_form = TailBound::from_log(-t * t / (2.0 * delta_bar));
    Ok(LowerTail {
        phi_form,
        quad_form,
    })
}

/// The sharp coverage threshold
/// p*(kappa, n) = [(kappa/(kappa-1)) n^-(kappa-2) ln n]^(1/(kappa-1)).
pub fn pstar(kappa: usize, n: usize) -> Result<f64> {
    if kappa < 3 {
        return Err(Error::BadKappa(kappa));
    }
    if n < 2 {
        return Err(Error::Domain(format!("pstar needs n >= 2, got {n}")));
    }
    let k = kappa as f64;
    let nf = n as f64;
    let inner = (k / (k - 1.0)).ln() - (k - 2.0) * nf.ln() + nf.ln().ln();
    Ok((inner / (k - 1.0)).exp())
}

/// Exact binomial upper tail Pr(Bin(n, p) >= k), summed directly; the
/// independent oracle for bound-validity checks at small n.
pub fn binomial_upper_tail(n: usize, p: f64, k: usize) -> f64 {
    (k..=n).map(|i| binomial_pmf(n, p, i)).sum()
}

/// Exact binomial lower tail Pr(Bin(n, p) <= k).
pub fn binomial_lower_tail(n: usize, p: f64, k: usize) -> f64 {
    (0..=k.min(n)).map(|i| binomial_pmf(n, p, i)).sum()
}

fn binomial_pmf(n: usize, p: f64, k: usize) -> f64 {
    let mut log_c = 0.0f64;
    for i in 0..k {
        log_c += ((n - i) as f64).ln() - ((i + 1) as f64).ln();
    }
    if p == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if p == 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    (log_c + k as f64 * p.ln() + (n - k) as f64 * (1.0 - p).ln()).exp()
}

/// The 2-density m2(H) = max{(e_K - 1)/(v_K - 2) : K a subgraph of H with
/// at least three vertices}, as an exact reduced fraction. Exhaustive over
/// edge subsets; patterns are limited to 10 vertices.
pub fn m2(h: &HPattern) -> Result<(u64, u64)> {
    if h.v_h() < 3 {
        return Err(Error::Domain(
            "m2 needs a pattern with at least 3 vertices".into(),
        ));
    }
    if h.v_h() > 10 {
        return Err(Error::PatternTooLarge {
            v_h: h.v_h(),
            limit: 10,
        });
    }
    let edges = h.edges();
    let e_h = edges.len();
    let mut best: Option<(u64, u64)> = None; // (num, den) of (e_K-1)/(v_K-2)
    for mask in 1u64..(1u64 << e_h) {
        let mut verts = 0u64;
        let mut e_k = 0u64;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                e_k += 1;
                verts |= 1 << u;
                verts |= 1 << v;
            }
        }
        let v_k = verts.count_ones() as u64;
        if v_k < 3 {
            continue;
        }
        let (num, den) = (e_k - 1, v_k - 2);
        let improves = match best {
            None => true,
            Some((bn, bd)) => num * bd > bn * den,
        };
        if improves {
            best = Some((num, den));
        }
    }
    // A padded vertex always allows ratio 0 when nothing bigger exists.
    let (num, den) = best.unwrap_or((0, 1));
    let g = gcd(num.max(1), den);
    Ok((num / g, den / g))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Leading-order moments of the (kappa-1)-path family between a fixed pair
/// in G(n, p).
#[derive(Clone, Copy, Debug)]
pub struct PathMoments {
    /// Exact expected count: (n-2)(n-3)...(n-kappa+1) p^(kappa-1).
    pub mu: f64,
    /// First-order overlap sum mu (1 + n^(kappa-3) p^(kappa-2)).
    pub delta_bar: f64,
    /// The scale n^(kappa-2) p^(kappa-1).
    pub lambda: f64,
}

pub fn path_moments(n: usize, p: f64, kappa: usize) -> Result<PathMoments> {
    if kappa < 3 {
        return Err(Error::BadKappa(kappa));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let nf = n as f64;
    let mut falling = 1.0f64;
    for i in 2..kappa {
        falling *= nf - i as f64;
    }
    let mu = falling.max(0.0) * p.powi(kappa as i32 - 1);
    let lambda = nf.powi(kappa as i32 - 2) * p.powi(kappa as i32 - 1);
    let delta_bar = mu * (1.0 + nf.powi(kappa as i32 - 3) * p.powi(kappa as i32 - 2));
    Ok(PathMoments {
        mu,
        delta_bar,
        lambda,
    })
}

/// Estimated extreme eigenvalues of the adjacency matrix.
#[derive(Clone, Copy, Debug)]
pub struct SpectrumReport {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda_n: f64,
    /// Iterations spent on (lambda1, lambda2, lambda_n).
    pub iterations: [usize; 3],
    /// Relative residuals ||A v - lambda v|| achieved for each pair.
    pub residuals: [f64; 3],
    /// Whether each residual met the tolerance within max_iter.
    pub converged: [bool; 3],
    /// max / min entry of the leading eigenvector (infinite when any entry
    /// fails to be positive, e.g. on disconnected graphs).
    pub v1_ratio: f64,
}

/// Power iteration for lambda1, then shift-and-deflate iterations for
/// lambda2 (on A + lambda1 I restricted to the complement of v1) and
/// lambda_n (on A - lambda1 I). Non-convergence is flagged, not an error.
pub fn spectrum(g: &LabeledGraph, tol: f64, max_iter: usize) -> Result<SpectrumReport> {
    if g.m() == 0 {
        return Err(Error::Degenerate("spectrum needs a nonempty graph".into()));
    }
    let n = g.n();
    let apply = |v: &[f64], out: &mut [f64]| {
        for (u, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for &w in g.neighbors(u) {
                acc += v[w as usize];
            }
            *o = acc;
        }
    };

    // Leading eigenpair from the all-ones start; a unit positive shift
    // keeps bipartite spectra (lambda_n = -lambda_1) from oscillating.
    let mut v1 = vec![1.0 / (n as f64).sqrt(); n];
    let (shifted1, it1, res1, conv1) = dominant(&apply, &mut v1, None, 1.0, tol, max_iter);
    let lambda1 = shifted1 - 1.0;

    // lambda2: dominant of A + lambda1 I on the orthogonal complement of v1.
    let mut v2: Vec<f64> = (0..n)
        .map(|i| if i % 2 == 0 { 1.0 } else { -1.0 })
        .collect();
    normalize(&mut v2);
    let (shifted2, it2, res2, conv2) = dominant(&apply, &mut v2, Some(&v1), lambda1, tol, max_iter);
    let lambda2 = shifted2 - lambda1;

    // lambda_n: dominant of A - lambda1 I.
    let mut vn: Vec<f64> = (0..n)
        .map(|i| if i % 3 == 0 { 1.0 } else { -0.5 })
        .collect();
    normalize(&mut vn);
    let (shifted_n, itn, resn, convn) = dominant(&apply, &mut vn, None, -lambda1, tol, max_iter);
    let lambda_n = shifted_n + lambda1;

    let mut v1_min = f64::INFINITY;
    let mut v1_max = f64::NEG_INFINITY;
    for &x in &v1 {
        v1_min = v1_min.min(x);
        v1_max = v1_max.max(x);
    }
    let v1_ratio = if v1_min > 0.0 {
        v1_max / v1_min
    } else {
        f64::INFINITY
    };

    Ok(SpectrumReport {
        lambda1,
        lambda2,
        lambda_n,
        iterations: [it1, it2, itn],
        residuals: [res1, res2, resn],
        converged: [conv1, conv2, convn],
        v1_ratio,
    })
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

/// Power iteration on A + shift I, optionally orthogonalized against a
/// fixed unit vector each step. Returns the Rayleigh estimate of the
/// shifted operator, iterations used, achieved residual of the eigenpair of
/// the shifted operator, and the convergence flag. Stops early once the
/// Rayleigh value stagnates well below the formal tolerance.
fn dominant<F: Fn(&[f64], &mut [f64])>(
    apply: &F,
    v: &mut [f64],
    deflate: Option<&[f64]>,
    shift: f64,
    tol: f64,
    max_iter: usize,
) -> (f64, usize, f64, bool) {
    let n = v.len();
    if let Some(d) = deflate {
        orthogonalize(v, d);
        normalize(v);
    }
    let mut av = vec![0.0; n];
    let mut lambda = 0.0f64;
    let mut last = f64::INFINITY;
    let mut stagnant = 0usize;
    let mut residual = f64::INFINITY;
    let mut iters = 0usize;
    for it in 1..=max_iter {
        iters = it;
        apply(v, &mut av);
        for (a, x) in av.iter_mut().zip(v.iter()) {
            *a += shift * *x;
        }
        if let Some(d) = deflate {
            orthogonalize(&mut av, d);
        }
        lambda = av.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        residual = av
            .iter()
            .zip(v.iter())
            .map(|(a, b)| (a - lambda * b).powi(2))
            .sum::<f64>()
            .sqrt();
        let scale = lambda.abs().max(1.0);
        let norm = av.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            // v is annihilated: eigenvalue 0 of the shifted operator.
            return (0.0, it, 0.0, true);
        }
        for (dst, src) in v.iter_mut().zip(&av) {
            *dst = src / norm;
        }
        if residual <= tol * scale {
            return (lambda, it, residual / scale, true);
        }
        if (lambda - last).abs() <= 1e-3 * tol * scale {
            stagnant += 1;
            if stagnant >= 25 {
                break;
            }
        } else {
            stagnant = 0;
        }
        last = lambda;
    }
    let scale = lambda.abs().max(1.0);
    (lambda, iters, residual / scale, false)
}

fn orthogonalize(v: &mut [f64], against: &[f64]) {
    let proj: f64 = v.iter().zip(against).map(|(a, b)| a * b).sum();
    for (x, d) in v.iter_mut().zip(against) {
        *x -= proj * d;
    }
}

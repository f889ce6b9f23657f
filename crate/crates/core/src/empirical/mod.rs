//! Empirical moments of moments of zeta from critical-line samples.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::params::{Method, MomParams, MomentEstimate};
use crate::quad::gl_nodes;
use crate::specfun::zeta_critical;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// |zeta(1/2 + i h)|^{2 beta} integrated over the window [t, t + w].
///
/// Composite Gauss-Legendre with panel width min(1/8, pi / log(2 + t)),
/// resolving the local oscillation scale of |zeta|.
pub fn window_moment(t: f64, beta: u32, config: &Config) -> Result<f64> {
    window_moment_len(t, beta, config.window_len, config.window_order, config)
}

fn window_moment_len(t: f64, beta: u32, len: f64, order: usize, config: &Config) -> Result<f64> {
    if t < 0.0 || t + len > config.t_max {
        return Err(Error::HeightRange(t + len, config.t_max));
    }
    let width = (1.0 / 8.0).min(std::f64::consts::PI / (2.0 + t).ln());
    let nodes = gl_nodes(order);
    let n_panels = (len / width).ceil().max(1.0) as usize;
    let w = len / n_panels as f64;
    // panels evaluated in parallel, summed in order
    let panels: Vec<Result<f64>> = (0..n_panels)
        .into_par_iter()
        .map(|p| {
            let mid = t + (p as f64 + 0.5) * w;
            let mut acc = 0.0;
            for &(x, wt) in nodes {
                let z = zeta_critical(mid + 0.5 * w * x, config.t_max)?;
                acc += wt * z.norm_sqr().powi(beta as i32);
            }
            Ok(acc * 0.5 * w)
        })
        .collect();
    let mut total = 0.0;
    for p in panels {
        total += p?;
    }
    Ok(total)
}

/// Monte-Carlo moment of moments: the stratified average of
/// window_moment(t)^k over t uniform in [0, T], one sample per stratum.
///
/// The standard error comes from the successive-difference estimator, which
/// respects the stratification; the counter-based generator keyed by
/// (seed, stratum) makes the stream independent of the worker count.
pub fn mom_zeta(
    params: MomParams,
    t_upper: f64,
    n_samples: u64,
    seed: u64,
    config: &Config,
) -> Result<MomentEstimate> {
    if n_samples < 100 {
        return Err(Error::Params("need at least 100 samples".into()));
    }
    if t_upper + config.window_len > config.t_max {
        return Err(Error::HeightRange(t_upper, config.t_max - config.window_len));
    }
    let n = n_samples as usize;
    let stratum = t_upper / n as f64;
    let samples: Vec<Result<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9e3779b97f4a7c15u64.wrapping_mul(i as u64 + 1)));
            let t = (i as f64 + rng.gen::<f64>()) * stratum;
            let w = window_moment(t, params.beta, config)?;
            Ok(w.powi(params.k as i32))
        })
        .collect();
    let mut vals = Vec::with_capacity(n);
    for s in samples {
        vals.push(s?);
    }
    let mean = vals.iter().sum::<f64>() / n as f64;
    // successive-difference variance estimator
    let sd2: f64 = vals.windows(2).map(|w| (w[1] - w[0]) * (w[1] - w[0])).sum::<f64>()
        / (2.0 * (n as f64 - 1.0));
    let stderr = (sd2 / n as f64).sqrt();
    Ok(MomentEstimate {
        value: mean,
        uncertainty: stderr,
        samples: n_samples,
        method: Method::ZetaMonteCarlo,
        seed: Some(seed),
        params,
        scale: t_upper,
        notes: format!("stratified window_len={}", config.window_len),
    })
}

/// Variant with an explicit window length (interval-length robustness checks).
pub fn mom_zeta_window(
    params: MomParams,
    t_upper: f64,
    n_samples: u64,
    seed: u64,
    window_len: f64,
    config: &Config,
) -> Result<MomentEstimate> {
    let cfg = Config { window_len, ..config.clone() };
    mom_zeta(params, t_upper, n_samples, seed, &cfg)
}

/// The 2 beta-th moment of |zeta| on [0, T] by deterministic panel
/// quadrature (no Monte Carlo).
pub fn m_beta_empirical(beta: u32, t_upper: f64, config: &Config) -> Result<MomentEstimate> {
    m_beta_with_order(beta, t_upper, config.window_order, config)
}

pub fn m_beta_with_order(
    beta: u32,
    t_upper: f64,
    order: usize,
    config: &Config,
) -> Result<MomentEstimate> {
    if t_upper > config.t_max {
        return Err(Error::HeightRange(t_upper, config.t_max));
    }
    // chunk [0, T] into unit blocks evaluated in parallel
    let n_blocks = t_upper.ceil() as usize;
    let blocks: Vec<Result<f64>> = (0..n_blocks)
        .into_par_iter()
        .map(|b| {
            let lo = b as f64;
            let hi = (lo + 1.0).min(t_upper);
            window_moment_len(lo, beta, hi - lo, order, config)
        })
        .collect();
    let mut total = 0.0;
    for b in blocks {
        total += b?;
    }
    Ok(MomentEstimate {
        value: total / t_upper,
        uncertainty: 0.0,
        samples: n_blocks as u64,
        method: Method::ZetaQuadrature,
        seed: None,
        params: MomParams::new(1, beta)?,
        scale: t_upper,
        notes: format!("panel order {order}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_refinement_beta1() {
        let cfg = Config::default();
        let a = window_moment_len(0.0, 1, 1.0, 16, &cfg).unwrap();
        let b = window_moment_len(0.0, 1, 1.0, 32, &cfg).unwrap();
        assert!(a > 0.0);
        assert!((a - b).abs() < 1e-6 * a.max(1.0), "{a} vs {b}");
    }

    #[test]
    fn window_refinement_beta2_high() {
        let cfg = Config::default();
        let a = window_moment_len(100.0, 2, 1.0, 16, &cfg).unwrap();
        let b = window_moment_len(100.0, 2, 1.0, 32, &cfg).unwrap();
        assert!((a - b).abs() < 1e-5 * a, "{a} vs {b}");
    }

    #[test]
    fn deterministic_same_seed() {
        let cfg = Config::default();
        let p = MomParams::new(2, 1).unwrap();
        let a = mom_zeta(p, 200.0, 100, 7, &cfg).unwrap();
        let b = mom_zeta(p, 200.0, 100, 7, &cfg).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert!(a.value >= 0.0);
        assert!(a.uncertainty > 0.0);
    }

    #[test]
    fn range_errors() {
        let cfg = Config::default();
        assert!(window_moment(cfg.t_max, 1, &cfg).is_err());
        assert!(m_beta_empirical(1, cfg.t_max * 2.0, &cfg).is_err());
    }
}

use crate::cfkrs::direct::p_direct;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::params::{Method, MomParams, MomentEstimate, ShiftVector};
use crate::quad::gl_nodes;
use std::f64::consts::PI;

/// Chebyshev tabulation of the shift-averaged predictor
/// H(x) = avg over the shift box of P(x; h), reusable across T.
///
/// H is entire in x, so the interpolation converges geometrically; the
/// t-integral of the moment then runs over the table.
pub struct PredictorTable {
    pub params: MomParams,
    x_lo: f64,
    x_hi: f64,
    nodes: Vec<f64>,
    values: Vec<f64>,
    /// mean relative refinement delta of the inner contour evaluations
    pub inner_rel_delta: f64,
    /// relative interpolation error probed at off-node points
    pub interp_rel_err: f64,
}

/// Gauss-Legendre nodes of a split [0,1] gap grid resolving the
/// near-diagonal structure of the shift integrand.
const GAP_BREAKS: [f64; 5] = [0.0, 0.05, 0.15, 0.4, 1.0];

impl PredictorTable {
    /// The shift-box average of P(x; .) at one x.
    pub fn shift_averaged(params: MomParams, x: f64, config: &Config) -> Result<f64> {
        Self::shift_averaged_tracked(params, x, config).map(|(v, _)| v)
    }

    fn shift_averaged_tracked(params: MomParams, x: f64, config: &Config) -> Result<(f64, f64)> {
        match params.k {
            1 => {
                let h = ShiftVector::new(vec![0.5])?;
                let p = p_direct(params, x, &h, config)?;
                Ok((p.value, p.refinement_delta / p.value.abs().max(1.0)))
            }
            2 => {
                // H(x) = 2 int_0^1 (1 - g) P(x; (1/2 - g/2, 1/2 + g/2)) dg
                // (P depends on the shifts only through their gap)
                let nodes = gl_nodes(8);
                let mut acc = 0.0;
                let mut rel = 0.0f64;
                let mut cnt = 0usize;
                for w in GAP_BREAKS.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    for &(t, wt) in nodes {
                        let g = 0.5 * (a + b) + 0.5 * (b - a) * t;
                        let h = ShiftVector::new(vec![0.5 - g / 2.0, 0.5 + g / 2.0])?;
                        let p = p_direct(params, x, &h, config)?;
                        acc += 0.5 * (b - a) * wt * 2.0 * (1.0 - g) * p.value;
                        rel += p.refinement_delta / p.value.abs().max(1.0);
                        cnt += 1;
                    }
                }
                Ok((acc, rel / cnt as f64))
            }
            3 => {
                // coarse tensor average over the shift box (documented:
                // exploratory accuracy only)
                let nodes = gl_nodes(8);
                let mut acc = 0.0;
                let mut rel = 0.0f64;
                let mut cnt = 0usize;
                for &(t1, w1) in nodes {
                    for &(t2, w2) in nodes {
                        for &(t3, w3) in nodes {
                            let h = ShiftVector::new(vec![
                                0.5 + 0.5 * t1,
                                0.5 + 0.5 * t2,
                                0.5 + 0.5 * t3,
                            ])?;
                            let p = p_direct(params, x, &h, config)?;
                            acc += w1 * w2 * w3 * 0.125 * p.value;
                            rel += p.refinement_delta / p.value.abs().max(1.0);
                            cnt += 1;
                        }
                    }
                }
                Ok((acc, rel / cnt as f64))
            }
            _ => Err(Error::Params("mom_p supports k <= 3".into())),
        }
    }

    /// Build the table covering t in [t_head, t_max].
    pub fn build(params: MomParams, t_max: f64, config: &Config) -> Result<Self> {
        if t_max < 100.0 {
            return Err(Error::Params("predictor moment requires T >= 100".into()));
        }
        if t_max > 1e15 {
            return Err(Error::Params("predictor moment capped at T = 1e15".into()));
        }
        let x_lo = (config.t_head / (2.0 * PI)).ln();
        let x_hi = (t_max / (2.0 * PI)).ln() + 1e-9;
        let n = config.x_table_nodes.max(8);
        let mut nodes = Vec::with_capacity(n);
        let mut values = Vec::with_capacity(n);
        let mut rel = 0.0;
        for i in 0..n {
            // Chebyshev points of the first kind
            let c = ((2 * i + 1) as f64 * PI / (2 * n) as f64).cos();
            let x = 0.5 * (x_lo + x_hi) + 0.5 * (x_hi - x_lo) * c;
            let (v, r) = Self::shift_averaged_tracked(params, x, config)?;
            nodes.push(x);
            values.push(v);
            rel += r;
        }
        let mut table = PredictorTable {
            params,
            x_lo,
            x_hi,
            nodes,
            values,
            inner_rel_delta: rel / n as f64,
            interp_rel_err: 0.0,
        };
        // probe interpolation quality between nodes
        let mut worst = 0.0f64;
        for frac in [0.31, 0.77] {
            let x = x_lo + frac * (x_hi - x_lo);
            let direct = Self::shift_averaged(params, x, config)?;
            let interp = table.h_at(x);
            worst = worst.max((interp - direct).abs() / direct.abs().max(1.0));
        }
        table.interp_rel_err = worst;
        Ok(table)
    }

    /// Barycentric interpolation at x (Chebyshev first-kind weights).
    pub fn h_at(&self, x: f64) -> f64 {
        let n = self.nodes.len();
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..n {
            let d = x - self.nodes[i];
            if d.abs() < 1e-13 {
                return self.values[i];
            }
            let theta = (2 * i + 1) as f64 * PI / (2 * n) as f64;
            let w = if i % 2 == 0 { theta.sin() } else { -theta.sin() };
            num += w / d * self.values[i];
            den += w / d;
        }
        num / den
    }

    /// The predictor moment at T (requires T within the tabulated range):
    /// (1/T) int_{t_head}^{T} H(log(t / 2 pi)) dt, via the substitution
    /// t = 2 pi e^x.
    pub fn mom(&self, t_upper: f64, config: &Config) -> Result<MomentEstimate> {
        let x_t = (t_upper / (2.0 * PI)).ln();
        if !(100.0..=1e15).contains(&t_upper) || x_t > self.x_hi + 1e-12 {
            return Err(Error::Params(format!(
                "T = {t_upper} outside the tabulated range"
            )));
        }
        let integ = |width: f64| {
            let nodes = gl_nodes(16);
            let n_panels = ((x_t - self.x_lo) / width).ceil().max(1.0) as usize;
            let w = (x_t - self.x_lo) / n_panels as f64;
            let mut acc = 0.0;
            for p in 0..n_panels {
                let mid = self.x_lo + (p as f64 + 0.5) * w;
                for &(t, wt) in nodes {
                    let x = mid + 0.5 * w * t;
                    acc += 0.5 * w * wt * self.h_at(x) * x.exp();
                }
            }
            acc * 2.0 * PI / t_upper
        };
        let coarse = integ(0.5);
        let fine = integ(0.25);
        let quad_rel = (fine - coarse).abs() / fine.abs().max(1e-300);
        let rel = quad_rel + self.inner_rel_delta + self.interp_rel_err;
        Ok(MomentEstimate {
            value: fine,
            uncertainty: rel * fine.abs(),
            samples: self.nodes.len() as u64,
            method: Method::PredictorDirect,
            seed: None,
            params: self.params,
            scale: t_upper,
            notes: format!(
                "x_table={} inner_rel_delta={:.2e} interp_rel_err={:.2e}",
                self.nodes.len(),
                self.inner_rel_delta,
                self.interp_rel_err
            ),
        })
    }
}

/// The moment of the predictor over [0, T] and the unit shift box.
pub fn mom_p(params: MomParams, t_upper: f64, config: &Config) -> Result<MomentEstimate> {
    let table = PredictorTable::build(params, t_upper, config)?;
    table.mom(t_upper, config)
}

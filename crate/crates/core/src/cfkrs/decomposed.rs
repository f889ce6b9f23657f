use crate::arith::a_global;
use crate::cfkrs::assignment::{all_assignments, LAssignment};
use crate::cfkrs::direct::{PRoute, PValue};
use crate::cfkrs::evalcore::{integral_prefactor, pairwise_sum};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::params::{MomParams, ShiftVector};
use crate::specfun::{zeta_em, zeta_near_one_unchecked};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// One pole-assignment term of the asymptotic decomposition, as a tensor
/// integral over origin-centred circles.
///
/// The integrand keeps the zeta factors of the unequal-shift pairs exactly
/// and replaces the equal-shift pairs by their pole part, which is what
/// turns the sum into an asymptotic identity with O(1/x) relative error.
fn decomposed_term(
    a: &LAssignment,
    beta: u32,
    x: f64,
    m: usize,
    r0: f64,
) -> Complex64 {
    let d = a.mu.len();
    let kb = d / 2;
    // origin-centred circles, distinct radii
    let radii: Vec<f64> = (0..d).map(|j| r0 * (1.0 + j as f64 * 1e-2)).collect();
    let mut vs = vec![vec![Complex64::new(0.0, 0.0); m]; d];
    let mut fac = vec![vec![Complex64::new(0.0, 0.0); m]; d];
    for j in 0..d {
        for t in 0..m {
            let th = 2.0 * PI * t as f64 / m as f64;
            let e = Complex64::new(th.cos(), th.sin());
            let v = radii[j] * e;
            vs[j][t] = v;
            let sign = if j < kb { 1.0 } else { -1.0 };
            let w = I * radii[j] * e * (2.0 * PI / m as f64);
            fac[j][t] = (sign * v).exp() / v.powi(2 * beta as i32) * w;
        }
    }
    // pair tables: equal-shift pairs m < n (squared unless in S, where the
    // squared numerator against the single pole denominator leaves -(v_n - v_m))
    let mut eq_pairs = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            if a.eps[i] == a.eps[j] {
                let in_s = i < kb && j >= kb;
                let mut t = vec![Complex64::new(0.0, 0.0); m * m];
                for (ai, &vi) in vs[i].iter().enumerate() {
                    for (aj, &vj) in vs[j].iter().enumerate() {
                        let diff = vj - vi;
                        t[ai * m + aj] = if in_s { -diff } else { diff * diff };
                    }
                }
                eq_pairs.push((i, j, t));
            }
        }
    }
    // unequal-shift zeta tables
    let mut tz = Vec::new();
    for tp in &a.t_pairs {
        let dmu = a.mu[tp.m] - a.mu[tp.n];
        let reach = 2.0 * (radii[tp.m] + radii[tp.n]) / x;
        let near = dmu.abs() + reach <= 0.45;
        let mut t = vec![Complex64::new(0.0, 0.0); m * m];
        for (ai, &vi) in vs[tp.m].iter().enumerate() {
            for (aj, &vj) in vs[tp.n].iter().enumerate() {
                let s = 2.0 * (vi - vj) / x + I * dmu;
                t[ai * m + aj] = if near {
                    zeta_near_one_unchecked(s)
                } else {
                    zeta_em(Complex64::new(1.0, 0.0) + s).unwrap_or(Complex64::new(f64::NAN, 0.0))
                };
            }
        }
        tz.push((tp.m, tp.n, t));
    }
    let partials: Vec<Complex64> = (0..m)
        .into_par_iter()
        .map(|i0| {
            let mut idx = vec![0usize; d];
            idx[0] = i0;
            let inner = m.pow((d - 1) as u32);
            let mut acc = Complex64::new(0.0, 0.0);
            for flat in 0..inner {
                let mut rem = flat;
                for j in (1..d).rev() {
                    idx[j] = rem % m;
                    rem /= m;
                }
                let mut val = fac[0][i0];
                for j in 1..d {
                    val *= fac[j][idx[j]];
                }
                for (i, j, t) in &eq_pairs {
                    val *= t[idx[*i] * m + idx[*j]];
                }
                for (i, j, t) in &tz {
                    val *= t[idx[*i] * m + idx[*j]];
                }
                acc += val;
            }
            acc
        })
        .collect();
    pairwise_sum(&partials)
}

/// The Lemma-style asymptotic evaluation of P(x; h): a weighted sum over
/// pole assignments of (x/2)^{|S|} A(i mu) e^{(i x / 2) sum(mu_j - mu_{kb+j})}
/// times an origin-centred tensor contour integral.
pub fn p_decomposed(params: MomParams, x: f64, h: &ShiftVector, config: &Config) -> Result<PValue> {
    if h.len() != params.k as usize {
        return Err(Error::Params(format!("expected {} shifts, got {}", params.k, h.len())));
    }
    if x < 10.0 {
        return Err(Error::Domain(format!(
            "decomposed evaluator is asymptotic in x; x = {x} < 10"
        )));
    }
    if params.k > 1 {
        let gap = h.min_gap();
        if gap < config.min_shift_gap {
            return Err(Error::ShiftGap(gap, config.min_shift_gap));
        }
    }
    let kb = params.kb();
    let r0 = config.gamma0_radius;
    let m0 = config.decomposed_nodes.next_power_of_two().max(16);
    let mut total = Complex64::new(0.0, 0.0);
    let mut prev_total = Complex64::new(0.0, 0.0);
    for a in all_assignments(params, h)? {
        if a.weight == 0 {
            continue;
        }
        let z: Vec<Complex64> = a.mu.iter().map(|&mu| I * (mu - h.0[h.len() - 1])).collect();
        let amu = a_global(params.k, params.beta, &z, config.prime_cutoff, config.sieve_max)?.value;
        let osc = (I * (0.5 * x) * a.mu_diff_sum()).exp();
        let xs = (0.5 * x).powi(a.s_pairs.len() as i32);
        let coarse = decomposed_term(&a, params.beta, x, m0 / 2, r0);
        let fine = decomposed_term(&a, params.beta, x, m0, r0);
        let w = a.weight as f64 * xs;
        total += w * amu * osc * fine;
        prev_total += w * amu * osc * coarse;
    }
    let pref = integral_prefactor(kb);
    let value = total * pref;
    let delta = (total - prev_total).norm() * pref;
    let im = value.im.abs();
    if im > 1e-6 * value.re.abs().max(1.0) && im > 5.0 * delta.max(1e-12) {
        return Err(Error::ImaginaryResidue(im, 1e-6 * value.re.abs().max(1.0)));
    }
    Ok(PValue {
        value: value.re,
        imag_residual: im,
        refinement_delta: delta,
        nodes: m0,
        route: PRoute::Decomposed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_beta1_equals_x_exactly() {
        // at k = 1 there are no unequal-shift zeta factors, so the decomposed
        // value collapses to the leading (x/2) |S|-term, which is exactly x
        let cfg = Config::default();
        let p = MomParams::new(1, 1).unwrap();
        let h = ShiftVector::new(vec![0.3]).unwrap();
        let v = p_decomposed(p, 100.0, &h, &cfg).unwrap();
        assert!((v.value - 100.0).abs() < 1e-7, "got {}", v.value);
    }

    #[test]
    fn shift_gap_error() {
        let cfg = Config::default();
        let p = MomParams::new(2, 1).unwrap();
        let h = ShiftVector::new(vec![0.5, 0.5000001]).unwrap();
        assert!(matches!(p_decomposed(p, 50.0, &h, &cfg), Err(Error::ShiftGap(_, _))));
    }

    #[test]
    fn small_x_rejected() {
        let cfg = Config::default();
        let p = MomParams::new(1, 1).unwrap();
        let h = ShiftVector::new(vec![0.3]).unwrap();
        assert!(p_decomposed(p, 5.0, &h, &cfg).is_err());
    }
}

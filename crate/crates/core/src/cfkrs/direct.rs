use crate::cfkrs::assignment::all_assignments;
use crate::cfkrs::evalcore::{assignment_radii, integral_prefactor, nodes_for, ExactPass, HybridA};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::params::{MomParams, ShiftVector};
use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A contour-integral evaluation of the shifted-moment predictor at one
/// point, with quadrature diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct PValue {
    pub value: f64,
    pub imag_residual: f64,
    pub refinement_delta: f64,
    /// nodes per contour dimension at the final pass
    pub nodes: usize,
    pub route: PRoute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PRoute {
    /// one common circle family enclosing all poles
    CommonCircle,
    /// exact pole-assignment decomposition with per-pole circles
    AssignmentSum,
    /// asymptotic decomposed evaluator
    Decomposed,
}

/// Margin added to the enclosing radius of the common circle family.
const COMMON_MARGIN: f64 = 0.08;
/// Largest admissible common radius: beyond this the truncated Euler
/// product of the arithmetic factor no longer converges usefully
/// (tail exponent -2 + 4 max|Re z|).
const COMMON_RADIUS_MAX: f64 = 0.15;
/// Per-pole circle radius cap for the assignment route.
const POLE_RADIUS_MAX: f64 = 0.11;

fn check_realness(value: Complex64, delta: f64) -> Result<(f64, f64)> {
    let im = value.im.abs();
    let scale = value.re.abs().max(1.0);
    if im > 1e-6 * scale && im > 5.0 * delta.max(1e-12) {
        return Err(Error::ImaginaryResidue(im, 1e-6 * scale));
    }
    Ok((value.re, im))
}

fn refine<F: Fn(usize) -> Complex64>(
    pass: F,
    m0: usize,
    tol: f64,
    budget_dims: usize,
    max_nodes: usize,
) -> Result<(Complex64, f64, usize)> {
    let mut m = m0;
    let mut prev = pass(m / 2);
    loop {
        let cur = pass(m);
        let delta = (cur - prev).norm();
        let tol_eff = tol * cur.norm().max(1.0);
        if delta <= tol_eff || m >= max_nodes {
            return Ok((cur, delta, m));
        }
        if m.pow(budget_dims as u32) > 1usize << 34 {
            return Err(Error::BudgetExhausted { last: cur, prev, delta, tol: tol_eff });
        }
        prev = cur;
        m *= 2;
    }
}

/// The shifted-moment predictor P(x; h) as the exact multiple contour
/// integral, evaluated over one common circle family when the shifts are
/// close enough for the Euler product to converge on it, and through the
/// exact pole-assignment decomposition otherwise.
pub fn p_direct(params: MomParams, x: f64, h: &ShiftVector, config: &Config) -> Result<PValue> {
    if h.len() != params.k as usize {
        return Err(Error::Params(format!(
            "expected {} shifts, got {}",
            params.k,
            h.len()
        )));
    }
    if params.kb() > 4 {
        return Err(Error::Params("k beta > 4 unsupported".into()));
    }
    let spread = h.spread();
    let common_radius = 0.6 * spread + COMMON_MARGIN;
    if common_radius <= COMMON_RADIUS_MAX {
        p_direct_common(params, x, h, common_radius, config)
    } else {
        p_direct_assignment(params, x, h, config)
    }
}

fn p_direct_common(
    params: MomParams,
    x: f64,
    h: &ShiftVector,
    radius: f64,
    config: &Config,
) -> Result<PValue> {
    let kb = params.kb();
    let d = params.dim();
    let c0 = h.0.iter().sum::<f64>() / h.len() as f64;
    let centers = vec![I * c0; d];
    let radii = assignment_radii(&vec![0usize; d], radius);
    let r_max = radii.iter().cloned().fold(0.0, f64::max);
    let hybrid = if kb > 1 {
        Some(HybridA::build(
            kb,
            &centers,
            config.prime_cutoff_node,
            config.prime_cutoff,
            config.sieve_max,
        )?)
    } else {
        None
    };
    let pass = ExactPass {
        kb,
        beta: params.beta,
        x,
        h: &h.0,
        centers,
        radii,
        hybrid: hybrid.as_ref(),
    };
    let m0 = nodes_for(x, r_max);
    let (val, delta, m) = refine(|m| pass.run(m), m0, config.contour_tol, d, 512)?;
    let total = val * integral_prefactor(kb);
    let delta = delta * integral_prefactor(kb);
    let (value, imag) = check_realness(total, delta)?;
    Ok(PValue {
        value,
        imag_residual: imag,
        refinement_delta: delta,
        nodes: m,
        route: PRoute::CommonCircle,
    })
}

fn p_direct_assignment(
    params: MomParams,
    x: f64,
    h: &ShiftVector,
    config: &Config,
) -> Result<PValue> {
    let kb = params.kb();
    let d = params.dim();
    let gap = h.min_gap();
    let r_base = POLE_RADIUS_MAX.min(gap / 3.0);
    if r_base < 1e-3 {
        return Err(Error::ShiftGap(gap, 3e-3));
    }
    let assignments = all_assignments(params, h)?;
    let mut total = Complex64::new(0.0, 0.0);
    let mut delta_acc = 0.0;
    let mut m_final = 0;
    for a in &assignments {
        if a.weight == 0 {
            continue;
        }
        let centers: Vec<Complex64> = a.mu.iter().map(|&mu| I * mu).collect();
        let radii = assignment_radii(&a.eps, r_base);
        let r_max = radii.iter().cloned().fold(0.0, f64::max);
        let hybrid = if kb > 1 {
            Some(HybridA::build(
                kb,
                &centers,
                config.prime_cutoff_node,
                config.prime_cutoff,
                config.sieve_max,
            )?)
        } else {
            None
        };
        let pass = ExactPass {
            kb,
            beta: params.beta,
            x,
            h: &h.0,
            centers,
            radii,
            hybrid: hybrid.as_ref(),
        };
        let m0 = nodes_for(x, r_max);
        let (val, delta, m) = refine(|m| pass.run(m), m0, config.contour_tol, d, 256)?;
        total += a.weight as f64 * val;
        delta_acc += a.weight as f64 * delta;
        m_final = m_final.max(m);
    }
    let total = total * integral_prefactor(kb);
    let delta = delta_acc * integral_prefactor(kb);
    let (value, imag) = check_realness(total, delta)?;
    Ok(PValue {
        value,
        imag_residual: imag,
        refinement_delta: delta,
        nodes: m_final,
        route: PRoute::AssignmentSum,
    })
}

//! Power-law regression of moment data against conjectured exponents.

use crate::error::{Error, Result};
use crate::params::{MomParams, SymmetryClass};
use serde::{Deserialize, Serialize};

/// Least-squares fit of log(value) against log(scale).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitResult {
    pub exponent: f64,
    pub log_coefficient: f64,
    pub r_squared: f64,
    pub points: Vec<(f64, f64)>,
}

impl FitResult {
    pub fn coefficient(&self) -> f64 {
        self.log_coefficient.exp()
    }
}

/// Unweighted least squares on (log s, log y); the slope is the exponent.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<FitResult> {
    if points.len() < 3 {
        return Err(Error::Fit(format!("need >= 3 points, got {}", points.len())));
    }
    for w in points.windows(2) {
        if w[0].0 >= w[1].0 {
            return Err(Error::Fit("scales must be strictly increasing".into()));
        }
    }
    if points.iter().any(|&(s, y)| s <= 1.0 || y <= 0.0) {
        return Err(Error::Fit("scales must exceed 1 and values must be positive".into()));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|&(s, _)| s.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, y)| y.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("degenerate scales".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    let r_squared = if ss_tot == 0.0 {
        // constant data: perfect fit when residuals vanish
        if ss_res < 1e-24 {
            1.0
        } else {
            0.0
        }
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    Ok(FitResult {
        exponent: slope,
        log_coefficient: intercept,
        r_squared,
        points: points.to_vec(),
    })
}

/// The conjectured growth exponent per symmetry class:
/// unitary k^2 b^2 - k + 1, symplectic k b (2 k b + 1) - k,
/// even-orthogonal k b (2 k b - 1) - k with the (1, 1) special case 1.
pub fn expected_exponent(params: MomParams, symmetry: SymmetryClass) -> i64 {
    let (k, b) = (params.k as i64, params.beta as i64);
    match symmetry {
        SymmetryClass::Unitary => k * k * b * b - k + 1,
        SymmetryClass::Symplectic => k * b * (2 * k * b + 1) - k,
        SymmetryClass::SpecialOrthogonalEven => {
            if k == 1 && b == 1 {
                1
            } else {
                k * b * (2 * k * b - 1) - k
            }
        }
    }
}

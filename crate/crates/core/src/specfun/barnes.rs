use crate::error::{Error, Result};
use crate::specfun::gamma::complex_gamma;
use num_complex::Complex64;
use std::f64::consts::PI;

/// log of the Glaisher-Kinkelin constant.
const LN_GLAISHER: f64 = 0.24875447703378426;

/// Asymptotic-series base point; the recursion G(z) = G(z+1)/Gamma(z) walks
/// down from here.
const BASE: f64 = 21.0;

/// Bernoulli numbers B_4, B_6, ..., B_20 for the asymptotic tail.
const BERN: [f64; 9] = [
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// log G(1 + w) for w >= BASE - 1, by the asymptotic expansion
/// (z^2/2) log z - 3z^2/4 + (z/2) log 2pi - (1/12) log z + 1/12 - log A
/// + sum_k B_{2k+2} / (4 k (k+1) z^{2k}).
fn log_barnes_asym(w: f64) -> f64 {
    let mut s = 0.5 * w * w * w.ln() - 0.75 * w * w + 0.5 * w * (2.0 * PI).ln()
        - w.ln() / 12.0
        + 1.0 / 12.0
        - LN_GLAISHER;
    let mut wp = w * w;
    for (k, &b) in BERN.iter().enumerate() {
        let k = (k + 1) as f64;
        s += b / (4.0 * k * (k + 1.0) * wp);
        wp *= w * w;
    }
    s
}

/// Barnes G(z) for real z >= 1, to >= 10 significant digits for z <= 20.
///
/// Computed by downward recursion G(z) = G(z+1)/Gamma(z) from the
/// asymptotic base point.
pub fn barnes_g(z: f64) -> Result<f64> {
    if !(z >= 1.0) {
        return Err(Error::BarnesDomain(z));
    }
    let mut zz = z;
    let mut log_acc = 0.0f64;
    while zz < BASE {
        let g = complex_gamma(Complex64::new(zz, 0.0))?;
        log_acc += g.re.ln();
        zz += 1.0;
    }
    Ok((log_barnes_asym(zz - 1.0) - log_acc).exp())
}

/// The leading-coefficient factor G^2(1+beta) / G(1+2 beta).
pub fn fk_coefficient(beta: u32) -> Result<f64> {
    if beta < 1 {
        return Err(Error::Params("beta must be >= 1".into()));
    }
    let b = beta as f64;
    let num = barnes_g(1.0 + b)?;
    Ok(num * num / barnes_g(1.0 + 2.0 * b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn small_integers() {
        for z in [1.0, 2.0, 3.0] {
            assert_relative_eq!(barnes_g(z).unwrap(), 1.0, max_relative = 1e-10);
        }
        // G(n+1) = prod_{j<n} j!
        assert_relative_eq!(barnes_g(4.0).unwrap(), 2.0, max_relative = 1e-10);
        assert_relative_eq!(barnes_g(5.0).unwrap(), 12.0, max_relative = 1e-10);
        assert_relative_eq!(barnes_g(7.0).unwrap(), 34560.0, max_relative = 1e-10);
    }

    #[test]
    fn recurrence_grid() {
        // G(z+1) = Gamma(z) G(z) on a grid in [1, 15].
        for i in 0..=140 {
            let z = 1.0 + 0.1 * i as f64;
            let lhs = barnes_g(z + 1.0).unwrap();
            let rhs = complex_gamma(Complex64::new(z, 0.0)).unwrap().re * barnes_g(z).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-9);
        }
    }

    #[test]
    fn domain_error() {
        assert!(barnes_g(0.5).is_err());
    }

    #[test]
    fn fk_values() {
        assert_relative_eq!(fk_coefficient(1).unwrap(), 1.0, max_relative = 1e-10);
        assert_relative_eq!(fk_coefficient(2).unwrap(), 1.0 / 12.0, max_relative = 1e-10);
        // G^2(4)/G(7) = 4/34560 via the factorial-product oracle
        assert_relative_eq!(fk_coefficient(3).unwrap(), 4.0 / 34560.0, max_relative = 1e-9);
    }
}

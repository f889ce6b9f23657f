use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Pairwise-gap threshold below which the rational local-factor form is
/// ill-conditioned and the theta-integral form must be used instead.
pub const ALT_GAP_TOL: f64 = 1e-4;

fn check_admissible(p: u64, z: &[Complex64]) -> Result<()> {
    if z.len() < 2 || z.len() % 2 != 0 {
        return Err(Error::Params(format!("z must have even length >= 2, got {}", z.len())));
    }
    let pf = p as f64;
    for zj in z {
        if pf.powf(-0.5 + zj.re.abs()) >= 1.0 {
            return Err(Error::Domain(format!(
                "|p^(-1/2 +- z)| >= 1 for p = {p}, z = {zj}"
            )));
        }
    }
    Ok(())
}

/// Effective theta-node count: the requested count is calibrated to p >= 11
/// and scaled up for smaller primes, whose geometric factors decay slower
/// per node.
fn effective_theta_nodes(p: u64, requested: usize) -> usize {
    let scale = (11f64.ln() / (p as f64).ln()).ceil().max(1.0) as usize;
    (requested * scale).next_power_of_two()
}

/// Local factor of the arithmetic Euler product at prime p, by the defining
/// double product times a theta-integral over [0, 1].
///
/// The theta-integrand is periodic, so the trapezoid rule converges
/// geometrically; the node count is scaled by prime (see
/// `effective_theta_nodes`).
pub fn a_local_def(p: u64, z: &[Complex64], theta_nodes: usize) -> Result<Complex64> {
    check_admissible(p, z)?;
    if theta_nodes < 32 {
        return Err(Error::Params("theta_nodes must be >= 32".into()));
    }
    let kb = z.len() / 2;
    let lnp = (p as f64).ln();
    let mut pref = Complex64::new(1.0, 0.0);
    for zl in &z[..kb] {
        for zm in &z[kb..] {
            pref *= 1.0 - ((zm - zl - 1.0) * lnp).exp();
        }
    }
    let m = effective_theta_nodes(p, theta_nodes);
    // p^{-1/2 - z_j} and p^{-1/2 + z_{kb+j}}
    let a: Vec<Complex64> = z[..kb].iter().map(|zj| ((-0.5 - zj) * lnp).exp()).collect();
    let b: Vec<Complex64> = z[kb..].iter().map(|zj| ((-0.5 + zj) * lnp).exp()).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for t in 0..m {
        let th = 2.0 * PI * t as f64 / m as f64;
        let e = Complex64::new(th.cos(), th.sin());
        let mut v = Complex64::new(1.0, 0.0);
        for j in 0..kb {
            v /= (1.0 - e * a[j]) * (1.0 - e.conj() * b[j]);
        }
        acc += v;
    }
    Ok(pref * acc / m as f64)
}

/// Local factor by the rational partial-fraction form: a sum over the second
/// block of residue terms, requiring the z_{kb+n} to be pairwise separated.
pub fn a_local_alt(p: u64, z: &[Complex64]) -> Result<Complex64> {
    check_admissible(p, z)?;
    let kb = z.len() / 2;
    for i in 0..kb {
        for j in i + 1..kb {
            let gap = (z[kb + i] - z[kb + j]).norm();
            if gap < ALT_GAP_TOL {
                return Err(Error::NearCoincidence(gap));
            }
        }
    }
    Ok(a_local_alt_unchecked(p, z))
}

/// As [`a_local_alt`] without precondition checks (hot loops with contour
/// nodes whose separation is guaranteed by distinct radii).
#[inline]
pub(crate) fn a_local_alt_unchecked(p: u64, z: &[Complex64]) -> Complex64 {
    let kb = z.len() / 2;
    let lnp = (p as f64).ln();
    let pinv = 1.0 / p as f64;
    // e_j = p^{-z_j}, f_n = p^{+z_{kb+n}}
    let e: Vec<Complex64> = z[..kb].iter().map(|zj| (-zj * lnp).exp()).collect();
    let f: Vec<Complex64> = z[kb..].iter().map(|zj| (zj * lnp).exp()).collect();
    let mut tot = Complex64::new(0.0, 0.0);
    for m in 0..kb {
        let mut term = Complex64::new(1.0, 0.0);
        for n in 0..kb {
            if n == m {
                continue;
            }
            let mut num = Complex64::new(1.0, 0.0);
            for ej in &e {
                num *= 1.0 - pinv * ej * f[n];
            }
            term *= num / (1.0 - f[n] / f[m]);
        }
        tot += term;
    }
    tot
}

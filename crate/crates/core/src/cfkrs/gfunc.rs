use crate::arith::a_global;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::params::MomParams;
use crate::specfun::{zeta_em, zeta_near_one};
use num_complex::Complex64;

/// The combined integrand factor A(z) prod_{i <= kb < j} zeta(1 + z_i - z_j),
/// with zeta taken from the Laurent expansion inside its disc and from the
/// Euler-Maclaurin routine outside.
pub fn g_func(params: MomParams, z: &[Complex64], config: &Config) -> Result<Complex64> {
    let kb = params.kb();
    if z.len() != 2 * kb {
        return Err(Error::Params(format!("expected {} arguments, got {}", 2 * kb, z.len())));
    }
    let mut val = a_global(params.k, params.beta, z, config.prime_cutoff, config.sieve_max)?.value;
    for i in 0..kb {
        for j in kb..2 * kb {
            let s = z[i] - z[j];
            if s.norm() == 0.0 {
                return Err(Error::ZetaPole);
            }
            val *= if s.norm() <= 0.45 {
                zeta_near_one(s)?
            } else {
                zeta_em(Complex64::new(1.0, 0.0) + s)?
            };
        }
    }
    Ok(val)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kb1_literal_composition() {
        let cfg = Config::default();
        let p = MomParams::new(1, 1).unwrap();
        let z = [Complex64::new(0.1, 0.0), Complex64::new(-0.1, 0.0)];
        // A_1 = 1, so g = zeta(1.2)
        let g = g_func(p, &z, &cfg).unwrap();
        let want = zeta_near_one(Complex64::new(0.2, 0.0)).unwrap();
        assert!((g - want).norm() < 1e-12);
        assert!(g.re > 0.0 && g.im.abs() < 1e-12);
    }

    #[test]
    fn conjugation() {
        let cfg = Config::default();
        let p = MomParams::new(2, 1).unwrap();
        let z = [
            Complex64::new(0.02, 0.11),
            Complex64::new(-0.01, -0.04),
            Complex64::new(0.03, 0.21),
            Complex64::new(-0.02, -0.35),
        ];
        let zc: Vec<Complex64> = z.iter().map(|w| w.conj()).collect();
        let a = g_func(p, &z, &cfg).unwrap();
        let b = g_func(p, &zc, &cfg).unwrap();
        assert!((a - b.conj()).norm() < 1e-10 * a.norm());
    }

    #[test]
    fn pole_order_at_coincidence() {
        // (z1 - z2) g -> A_1(0, 0) = 1 as z1, z2 -> 0 for kb = 1
        let cfg = Config::default();
        let p = MomParams::new(1, 1).unwrap();
        for eps in [1e-3, 1e-4, 1e-5] {
            let z = [Complex64::new(eps, 0.0), Complex64::new(-eps, 0.0)];
            let g = g_func(p, &z, &cfg).unwrap();
            let lim = (z[0] - z[1]) * g;
            assert!((lim.re - 1.0).abs() < 5.0 * eps, "eps={eps}: {lim}");
        }
    }

    #[test]
    fn exact_pole_error() {
        let cfg = Config::default();
        let p = MomParams::new(1, 1).unwrap();
        let z = [Complex64::new(0.1, 0.2), Complex64::new(0.1, 0.2)];
        assert!(matches!(g_func(p, &z, &cfg), Err(Error::ZetaPole)));
    }
}

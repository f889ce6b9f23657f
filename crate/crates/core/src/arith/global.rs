use crate::arith::local::{a_local_alt, a_local_def, ALT_GAP_TOL};
use crate::error::{Error, Result};
use crate::specfun::primes_up_to;
use num_complex::Complex64;
use rayon::prelude::*;

/// A truncated Euler product with its tail bound.
#[derive(Debug, Clone, Copy)]
pub struct EulerProductResult {
    pub value: Complex64,
    pub prime_cutoff: u64,
    pub tail_bound: f64,
}

/// Tail bound for the truncated product: each local factor is
/// 1 + O(p^{-2+4e}) with e = max |Re z_j| (the worst second-order term pairs
/// two extremal real parts), so
/// |log tail| <= C(kb) sum_{p > cutoff} p^{-2+4e},
/// with the documented constant C(kb) = (kb)^2 + 2 kb.
pub fn tail_bound(kb: usize, eps: f64, cutoff: u64) -> f64 {
    let c = (kb * kb + 2 * kb) as f64;
    let expo = -2.0 + 4.0 * eps;
    if expo >= -1.0 {
        return f64::INFINITY;
    }
    // sum_{p > X} p^s ~ X^{s+1} / (|s+1| ln X) for s < -1
    let x = cutoff as f64;
    let tail_sum = x.powf(expo + 1.0) / ((expo + 1.0).abs() * x.ln());
    (c * tail_sum).exp_m1()
}

/// Global arithmetic factor over primes p <= cutoff, using the rational
/// local form when the second-block arguments are separated and the
/// theta-integral form otherwise.
pub fn a_global(
    k: u32,
    beta: u32,
    z: &[Complex64],
    prime_cutoff: u64,
    sieve_max: u64,
) -> Result<EulerProductResult> {
    let kb = (k * beta) as usize;
    if z.len() != 2 * kb {
        return Err(Error::Params(format!(
            "expected {} shifted arguments, got {}",
            2 * kb,
            z.len()
        )));
    }
    if prime_cutoff < 100 {
        return Err(Error::Params("prime cutoff must be >= 100".into()));
    }
    let eps = z.iter().map(|w| w.re.abs()).fold(0.0f64, f64::max);
    if eps >= 0.25 {
        return Err(Error::Domain(format!(
            "max |Re z| = {eps:.3} outside the validity region (< 1/4)"
        )));
    }
    if kb == 1 {
        // every local factor is exactly 1
        return Ok(EulerProductResult {
            value: Complex64::new(1.0, 0.0),
            prime_cutoff,
            tail_bound: 0.0,
        });
    }
    let mut use_alt = true;
    for i in 0..kb {
        for j in i + 1..kb {
            if (z[kb + i] - z[kb + j]).norm() < ALT_GAP_TOL {
                use_alt = false;
            }
        }
    }
    let table = primes_up_to(prime_cutoff, sieve_max)?;
    let locals: Vec<Complex64> = table
        .primes
        .par_iter()
        .map(|&p| {
            if kb == 1 {
                // the k*beta = 1 local factor is identically 1
                Ok(Complex64::new(1.0, 0.0))
            } else if use_alt {
                a_local_alt(p, z)
            } else {
                a_local_def(p, z, 64)
            }
        })
        .collect::<Result<_>>()?;
    // deterministic ordered product in fixed chunks
    let mut value = Complex64::new(1.0, 0.0);
    for chunk in locals.chunks(1024) {
        let mut partial = Complex64::new(1.0, 0.0);
        for v in chunk {
            partial *= v;
        }
        value *= partial;
    }
    Ok(EulerProductResult {
        value,
        prime_cutoff,
        tail_bound: tail_bound(kb, eps, prime_cutoff),
    })
}

/// The arithmetic factor at the origin:
/// prod_p (1 - 1/p)^{(kb-1)^2} sum_{m=0}^{kb-1} C(kb-1, m)^2 p^{-m}.
pub fn a_zero(k: u32, beta: u32, prime_cutoff: u64, sieve_max: u64) -> Result<EulerProductResult> {
    let kb = (k * beta) as usize;
    if prime_cutoff < 100 {
        return Err(Error::Params("prime cutoff must be >= 100".into()));
    }
    if kb == 1 {
        return Ok(EulerProductResult {
            value: Complex64::new(1.0, 0.0),
            prime_cutoff,
            tail_bound: 0.0,
        });
    }
    let binom: Vec<f64> = (0..kb)
        .map(|m| {
            let mut c = 1.0f64;
            for i in 0..m {
                c = c * (kb - 1 - i) as f64 / (i + 1) as f64;
            }
            c
        })
        .collect();
    let table = primes_up_to(prime_cutoff, sieve_max)?;
    let locals: Vec<f64> = table
        .primes
        .par_iter()
        .map(|&p| {
            let pinv = 1.0 / p as f64;
            let mut s = 0.0;
            let mut pm = 1.0;
            for b in &binom {
                s += b * b * pm;
                pm *= pinv;
            }
            (1.0 - pinv).powi(((kb - 1) * (kb - 1)) as i32) * s
        })
        .collect();
    let mut value = 1.0f64;
    for chunk in locals.chunks(1024) {
        let mut partial = 1.0;
        for v in chunk {
            partial *= v;
        }
        value *= partial;
    }
    Ok(EulerProductResult {
        value: Complex64::new(value, 0.0),
        prime_cutoff,
        tail_bound: tail_bound(kb, 0.0, prime_cutoff),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const SMAX: u64 = 1 << 30;

    #[test]
    fn kb1_exactly_one() {
        let z = [Complex64::new(0.0, 0.0); 2];
        let r = a_global(1, 1, &z, 1000, SMAX).unwrap();
        assert_eq!(r.value, Complex64::new(1.0, 0.0));
        assert_eq!(r.tail_bound, 0.0);
        let r0 = a_zero(1, 1, 1000, SMAX).unwrap();
        assert_eq!(r0.value.re, 1.0);
        assert_eq!(r0.tail_bound, 0.0);
    }

    #[test]
    fn kb2_is_one_over_zeta_two() {
        let want = 6.0 / (PI * PI);
        let r = a_zero(2, 1, 100_000, SMAX).unwrap();
        assert!((r.value.re - want).abs() <= r.tail_bound.max(1e-9), "{} vs {want}", r.value.re);
        assert!(r.tail_bound <= 1e-4);
        // cross-formula: the theta-integral route at z = 0
        let z = [Complex64::new(0.0, 0.0); 4];
        let g = a_global(2, 1, &z, 10_000, SMAX).unwrap();
        assert!(
            (g.value.re - r.value.re).abs() <= g.tail_bound + r.tail_bound,
            "{} vs {}",
            g.value.re,
            r.value.re
        );
        assert!(g.value.im.abs() < 1e-10);
    }

    #[test]
    fn conjugation_symmetry() {
        let z = [
            Complex64::new(0.02, 0.11),
            Complex64::new(-0.03, -0.07),
            Complex64::new(0.01, 0.23),
            Complex64::new(-0.02, -0.19),
        ];
        let zc: Vec<Complex64> = z.iter().map(|w| w.conj()).collect();
        let a = a_global(2, 1, &z, 2000, SMAX).unwrap().value;
        let b = a_global(2, 1, &zc, 2000, SMAX).unwrap().value;
        assert!((a - b.conj()).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn truncation_monotonicity() {
        let z = [
            Complex64::new(0.02, 0.11),
            Complex64::new(-0.03, -0.07),
            Complex64::new(0.01, 0.23),
            Complex64::new(-0.02, -0.19),
        ];
        let a4 = a_global(2, 1, &z, 10_000, SMAX).unwrap();
        let a5 = a_global(2, 1, &z, 100_000, SMAX).unwrap();
        assert!((a4.value - a5.value).norm() <= a4.tail_bound);
        assert!(a5.tail_bound < a4.tail_bound);
    }

    #[test]
    fn positivity_at_origin() {
        for (k, beta) in [(1u32, 1u32), (2, 1), (1, 2), (3, 1), (1, 3), (2, 2), (4, 1), (1, 4)] {
            let r = a_zero(k, beta, 1000, SMAX).unwrap();
            assert!(r.value.re > 0.0, "a_zero({k},{beta}) = {}", r.value.re);
        }
    }
}

//! Cached tensor evaluation of the shifted-moment contour integrand.
//!
//! The integrand couples all coordinates only through pairwise differences
//! and per-coordinate factors, so one trapezoid pass caches everything by
//! (dimension, node) or (dimension pair, node pair) and the inner loop is a
//! handful of table lookups per tensor node.

use crate::arith::{a_local_alt, a_local_def, ALT_GAP_TOL};
use crate::error::{Error, Result};
use crate::specfun::{primes_up_to, zeta_em, zeta_near_one_unchecked};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    match v.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => v[0],
        2 => v[0] + v[1],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

/// Trapezoid node count adequate for the factor e^{(x/2) r e^{i theta}}:
/// Fourier coefficients decay like (x r / 2)^m / m!.
pub(crate) fn nodes_for(x: f64, r_max: f64) -> usize {
    let a = 0.5 * x.abs() * r_max;
    let m = (2.0 * a + 14.0).ceil().max(16.0) as usize;
    m.next_power_of_two()
}

/// Second-order coefficient of the local Euler factor: B_p = 1 + B2 + O(p^{-3+6e}),
/// with B2 = p^{-2} h2(x) h2(y) - ((S u)^2 + S u^2)/2 in terms of the power sums
/// of x_j = p^{-z_j} and y_n = p^{+z_{kb+n}}.
fn local_b2(p: u64, z: &[Complex64]) -> Complex64 {
    let kb = z.len() / 2;
    let lnp = (p as f64).ln();
    let pinv2 = (p as f64).powi(-2);
    let mut s1x = Complex64::new(0.0, 0.0);
    let mut s2x = Complex64::new(0.0, 0.0);
    for zj in &z[..kb] {
        let x = (-zj * lnp).exp();
        s1x += x;
        s2x += x * x;
    }
    let mut s1y = Complex64::new(0.0, 0.0);
    let mut s2y = Complex64::new(0.0, 0.0);
    for zj in &z[kb..] {
        let y = (zj * lnp).exp();
        s1y += y;
        s2y += y * y;
    }
    let h2x = 0.5 * (s1x * s1x + s2x);
    let h2y = 0.5 * (s1y * s1y + s2y);
    let su = s1x * s1y; // p * sum u = s1x s1y; we fold p^{-1} into pinv2 below
    let su2 = s2x * s2y;
    pinv2 * (h2x * h2y - 0.5 * (su * su + su2))
}

/// The arithmetic factor split at `p_node`: local factors at small primes are
/// evaluated exactly per tensor node; the log of the remainder (primes in
/// (p_node, p_full]) is carried as a quadratic expansion around the contour
/// centers.
pub(crate) struct HybridA {
    pub primes: Vec<u64>,
    center: Vec<Complex64>,
    t0: Complex64,
    grad: Vec<Complex64>,
    hess: Vec<Vec<Complex64>>,
}

impl HybridA {
    pub fn build(
        kb: usize,
        center: &[Complex64],
        p_node: u64,
        p_full: u64,
        sieve_max: u64,
    ) -> Result<HybridA> {
        assert_eq!(center.len(), 2 * kb);
        let primes = primes_up_to(p_node, sieve_max)?.primes;
        let tail: Vec<u64> = primes_up_to(p_full.max(p_node + 1), sieve_max)?
            .primes
            .into_iter()
            .filter(|&p| p > p_node)
            .collect();
        let d = 2 * kb;
        let g = |z: &[Complex64]| -> Complex64 {
            tail.par_iter().map(|&p| local_b2(p, z)).reduce(
                || Complex64::new(0.0, 0.0),
                |a, b| a + b,
            )
        };
        let h = 0.06;
        let t0 = g(center);
        let mut grad = vec![Complex64::new(0.0, 0.0); d];
        let mut hess = vec![vec![Complex64::new(0.0, 0.0); d]; d];
        let mut zp = center.to_vec();
        for j in 0..d {
            zp[j] = center[j] + h;
            let gp = g(&zp);
            zp[j] = center[j] - h;
            let gm = g(&zp);
            zp[j] = center[j];
            grad[j] = (gp - gm) / (2.0 * h);
            hess[j][j] = (gp + gm - 2.0 * t0) / (h * h);
        }
        for j in 0..d {
            for l in j + 1..d {
                zp[j] = center[j] + h;
                zp[l] = center[l] + h;
                let gpp = g(&zp);
                zp[l] = center[l] - h;
                let gpm = g(&zp);
                zp[j] = center[j] - h;
                let gmm = g(&zp);
                zp[l] = center[l] + h;
                let gmp = g(&zp);
                zp[j] = center[j];
                zp[l] = center[l];
                let cross = (gpp - gpm - gmp + gmm) / (4.0 * h * h);
                hess[j][l] = cross;
                hess[l][j] = cross;
            }
        }
        Ok(HybridA { primes, center: center.to_vec(), t0, grad, hess })
    }

    /// log of the tail product at z (quadratic in z - center).
    fn log_tail(&self, z: &[Complex64]) -> Complex64 {
        let d = z.len();
        let mut acc = self.t0;
        let mut w = [Complex64::new(0.0, 0.0); 8];
        for j in 0..d {
            w[j] = z[j] - self.center[j];
            acc += self.grad[j] * w[j];
        }
        for j in 0..d {
            let mut row = Complex64::new(0.0, 0.0);
            for l in 0..d {
                row += self.hess[j][l] * w[l];
            }
            acc += 0.5 * w[j] * row;
        }
        acc
    }

    /// Full single-point evaluation (used for validation and for the
    /// decomposed evaluator's A(i mu)).
    pub fn at_point(&self, z: &[Complex64]) -> Result<Complex64> {
        let kb = z.len() / 2;
        let mut sep = f64::INFINITY;
        for i in 0..kb {
            for j in i + 1..kb {
                sep = sep.min((z[kb + i] - z[kb + j]).norm());
            }
        }
        let locals: Vec<Complex64> = self
            .primes
            .par_iter()
            .map(|&p| {
                if kb == 1 {
                    Ok(Complex64::new(1.0, 0.0))
                } else if sep >= ALT_GAP_TOL {
                    a_local_alt(p, z)
                } else {
                    a_local_def(p, z, 64)
                }
            })
            .collect::<Result<_>>()?;
        let mut v = Complex64::new(1.0, 0.0);
        for x in locals {
            v *= x;
        }
        Ok(v * self.log_tail(z).exp())
    }
}

/// One tensor-product trapezoid pass over the exact shifted-moment integrand
///
///   A(z) prod_{i<=kb<j} zeta(1 + z_i - z_j) Delta(z)^2
///   e^{(x/2)(sum_first - sum_second)} / prod_j prod_n (z_j - i h_n)^{2 beta}
///
/// over circles `centers[j] + radii[j] e^{i theta}` with `m` nodes each.
pub(crate) struct ExactPass<'a> {
    pub kb: usize,
    pub beta: u32,
    pub x: f64,
    pub h: &'a [f64],
    pub centers: Vec<Complex64>,
    pub radii: Vec<f64>,
    pub hybrid: Option<&'a HybridA>,
}

impl ExactPass<'_> {
    pub fn run(&self, m: usize) -> Complex64 {
        let d = 2 * self.kb;
        let kb = self.kb;
        // per-dimension nodes
        let mut zs = vec![vec![Complex64::new(0.0, 0.0); m]; d];
        let mut fac = vec![vec![Complex64::new(0.0, 0.0); m]; d];
        for j in 0..d {
            for a in 0..m {
                let th = 2.0 * PI * a as f64 / m as f64;
                let e = Complex64::new(th.cos(), th.sin());
                let z = self.centers[j] + self.radii[j] * e;
                zs[j][a] = z;
                let sign = if j < kb { 1.0 } else { -1.0 };
                let expf = (0.5 * self.x * sign * z).exp();
                let mut pole = Complex64::new(1.0, 0.0);
                for &hn in self.h {
                    pole *= (z - I * hn).powi(2 * self.beta as i32);
                }
                let w = I * self.radii[j] * e * (2.0 * PI / m as f64);
                fac[j][a] = expf / pole * w;
            }
        }
        // pairwise difference tables (z_j - z_i for i < j) and cross zeta tables
        let mut diff = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in i + 1..d {
                let mut t = vec![Complex64::new(0.0, 0.0); m * m];
                for (ai, &zi) in zs[i].iter().enumerate() {
                    for (aj, &zj) in zs[j].iter().enumerate() {
                        t[ai * m + aj] = zj - zi;
                    }
                }
                diff[i * d + j] = t;
            }
        }
        let mut zet = vec![Vec::new(); kb * kb];
        for i in 0..kb {
            for j in kb..d {
                let reach =
                    (self.centers[i] - self.centers[j]).norm() + self.radii[i] + self.radii[j];
                let near = reach <= 0.45;
                let mut t = vec![Complex64::new(0.0, 0.0); m * m];
                for (ai, &zi) in zs[i].iter().enumerate() {
                    for (aj, &zj) in zs[j].iter().enumerate() {
                        let s = zi - zj;
                        t[ai * m + aj] = if near {
                            zeta_near_one_unchecked(s)
                        } else {
                            zeta_em(Complex64::new(1.0, 0.0) + s)
                                .unwrap_or(Complex64::new(f64::NAN, 0.0))
                        };
                    }
                }
                zet[i * kb + (j - kb)] = t;
            }
        }
        // prime power tables for the exact part of A
        let primes: &[u64] = self.hybrid.map(|h| h.primes.as_slice()).unwrap_or(&[]);
        let np = if kb == 1 { 0 } else { primes.len() };
        // xp[p][j][a] = p^{-z_j} (first block), yp[p][n][a] = p^{+z_{kb+n}}
        let mut xp = vec![vec![vec![Complex64::new(0.0, 0.0); m]; kb]; np];
        let mut yp = vec![vec![vec![Complex64::new(0.0, 0.0); m]; kb]; np];
        for (pi, &p) in primes.iter().enumerate().take(np) {
            let lnp = (p as f64).ln();
            for j in 0..kb {
                for a in 0..m {
                    xp[pi][j][a] = (-zs[j][a] * lnp).exp();
                    yp[pi][j][a] = (zs[kb + j][a] * lnp).exp();
                }
            }
        }
        let partials: Vec<Complex64> = (0..m)
            .into_par_iter()
            .map(|i0| {
                let mut idx = vec![0usize; d];
                idx[0] = i0;
                let mut z = vec![Complex64::new(0.0, 0.0); d];
                z[0] = zs[0][i0];
                let inner = m.pow((d - 1) as u32);
                let mut acc = Complex64::new(0.0, 0.0);
                let mut num = vec![Complex64::new(0.0, 0.0); kb];
                for flat in 0..inner {
                    let mut rem = flat;
                    for j in (1..d).rev() {
                        let a = rem % m;
                        rem /= m;
                        idx[j] = a;
                        z[j] = zs[j][a];
                    }
                    // per-dim factors
                    let mut val = fac[0][i0];
                    for j in 1..d {
                        val *= fac[j][idx[j]];
                    }
                    // Vandermonde squared
                    let mut vdm = Complex64::new(1.0, 0.0);
                    for i in 0..d {
                        for j in i + 1..d {
                            vdm *= diff[i * d + j][idx[i] * m + idx[j]];
                        }
                    }
                    val *= vdm * vdm;
                    // cross zeta product
                    for i in 0..kb {
                        for j in 0..kb {
                            val *= zet[i * kb + j][idx[i] * m + idx[kb + j]];
                        }
                    }
                    // arithmetic factor
                    if kb > 1 {
                        let mut aval = Complex64::new(1.0, 0.0);
                        for (pi, &p) in primes.iter().enumerate() {
                            let pinv = 1.0 / p as f64;
                            for (n, slot) in num.iter_mut().enumerate() {
                                let yn = yp[pi][n][idx[kb + n]];
                                let mut prod = Complex64::new(1.0, 0.0);
                                for (j, xpj) in xp[pi].iter().enumerate() {
                                    prod *= 1.0 - pinv * xpj[idx[j]] * yn;
                                }
                                *slot = prod;
                            }
                            let mut bp = Complex64::new(0.0, 0.0);
                            for mm in 0..kb {
                                let ym = yp[pi][mm][idx[kb + mm]];
                                let mut term = Complex64::new(1.0, 0.0);
                                for (n, &numn) in num.iter().enumerate() {
                                    if n == mm {
                                        continue;
                                    }
                                    let yn = yp[pi][n][idx[kb + n]];
                                    term *= numn / (1.0 - yn / ym);
                                }
                                bp += term;
                            }
                            aval *= bp;
                        }
                        if let Some(hy) = self.hybrid {
                            aval *= hy.log_tail(&z).exp();
                        }
                        val *= aval;
                    }
                    acc += val;
                }
                acc
            })
            .collect();
        pairwise_sum(&partials)
    }
}

/// Prefactor 1 / ((kb)!^2 (2 pi)^{2 kb}); the (-1)^{kb} of the defining
/// integral cancels against i^{2 kb} from (2 pi i)^{2 kb}.
pub(crate) fn integral_prefactor(kb: usize) -> f64 {
    let mut f = 1.0f64;
    for i in 1..=kb {
        f *= i as f64;
    }
    1.0 / (f * f * (2.0 * PI).powi(2 * kb as i32))
}

/// Radii for per-pole circles: base radius shrunk to keep Euler products
/// convergent and neighbouring poles outside, distinct per shared center.
pub(crate) fn assignment_radii(eps: &[usize], base: f64) -> Vec<f64> {
    let mut seen: Vec<usize> = Vec::new();
    eps.iter()
        .map(|&e| {
            let occ = seen.iter().filter(|&&s| s == e).count();
            seen.push(e);
            base * (1.0 + occ as f64 * 1e-2)
        })
        .collect()
}

/// Validation-only reference used by tests: evaluates the tail product of
/// second-order local factors directly (no Taylor expansion).
#[cfg(test)]
pub(crate) fn tail_reference(z: &[Complex64], p_node: u64, p_full: u64) -> Complex64 {
    let primes = primes_up_to(p_full, 1 << 30).unwrap().primes;
    let mut acc = Complex64::new(0.0, 0.0);
    for &p in primes.iter().filter(|&&p| p > p_node) {
        acc += local_b2(p, z);
    }
    acc.exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hybrid_tail_matches_direct_tail_sum() {
        let kb = 2;
        let center = vec![
            Complex64::new(0.0, 0.15),
            Complex64::new(0.0, 0.85),
            Complex64::new(0.0, 0.85),
            Complex64::new(0.0, 0.15),
        ];
        let hy = HybridA::build(kb, &center, 500, 20_000, 1 << 30).unwrap();
        let z: Vec<Complex64> = center
            .iter()
            .enumerate()
            .map(|(j, c)| c + Complex64::new(0.05 - 0.02 * j as f64, 0.03 * j as f64 - 0.05))
            .collect();
        let taylor = hy.log_tail(&z).exp();
        let direct = tail_reference(&z, 500, 20_000);
        assert!(
            (taylor - direct).norm() / direct.norm() < 2e-4,
            "taylor {taylor} vs direct {direct}"
        );
    }

    #[test]
    fn hybrid_point_matches_a_global() {
        // full hybrid at a point vs the plain truncated Euler product
        use crate::arith::a_global;
        let z = vec![
            Complex64::new(0.02, 0.11),
            Complex64::new(-0.03, -0.07),
            Complex64::new(0.01, 0.23),
            Complex64::new(-0.02, -0.19),
        ];
        let hy = HybridA::build(2, &z, 2_000, 100_000, 1 << 30).unwrap();
        let a = hy.at_point(&z).unwrap();
        let b = a_global(2, 1, &z, 100_000, 1 << 30).unwrap().value;
        assert!((a - b).norm() / b.norm() < 1e-4, "{a} vs {b}");
    }
}

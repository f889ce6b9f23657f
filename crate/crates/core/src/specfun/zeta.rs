use crate::error::{Error, Result};
use num_complex::Complex64;

pub const EULER_GAMMA: f64 = 0.5772156649015329;

/// Stieltjes constants s_0..s_20, generated by `tools/gen_constants.py`.
pub const STIELTJES: [f64; 21] = [
    0.5772156649015328606,
    -0.07281584548367672486,
    -0.00969036319287231848,
    0.002053834420303345866,
    0.002325370065467300058,
    0.0007933238173010627017,
    -0.0002387693454301996098,
    -0.0005272895670577510461,
    -0.0003521233538030395096,
    -0.00003439477441808804818,
    0.0002053328149090647946,
    0.0002701844395439035267,
    0.0001672729121051401934,
    -0.00002746380660376015886,
    -0.0002092092620592999458,
    -0.0002834686553202414466,
    -0.0001996968583089697747,
    0.00002627703710991833670,
    0.0003073684081492528266,
    0.0005036054530473556291,
    0.0004663435615115594494,
];

/// Laurent coefficients c_j = (-1)^j s_j / j! of zeta(1+s) around s = 0.
fn laurent_coeffs() -> [f64; 21] {
    let mut c = [0.0; 21];
    let mut fact = 1.0f64;
    for (j, out) in c.iter_mut().enumerate() {
        if j > 0 {
            fact *= j as f64;
        }
        *out = if j % 2 == 0 { STIELTJES[j] / fact } else { -STIELTJES[j] / fact };
    }
    c
}

/// zeta(1 + s) from the Laurent expansion with Stieltjes constants.
///
/// Valid on the punctured disc 0 < |s| <= 1/2 with absolute error <= 1e-10;
/// callers outside the disc must use [`zeta_em`].
pub fn zeta_near_one(s: Complex64) -> Result<Complex64> {
    let r = s.norm();
    if r == 0.0 {
        return Err(Error::ZetaPole);
    }
    if r > 0.5 {
        return Err(Error::OutsideDisc(r, 0.5));
    }
    Ok(zeta_near_one_unchecked(s))
}

/// As [`zeta_near_one`] without the disc check (hot inner loops; the caller
/// guarantees 0 < |s| <= 1/2).
#[inline]
pub fn zeta_near_one_unchecked(s: Complex64) -> Complex64 {
    // coefficients are cheap to rebuild but this path is hot
    thread_local! {
        static COEF: [f64; 21] = laurent_coeffs();
    }
    COEF.with(|c| {
        let mut acc = 1.0 / s;
        let mut sp = Complex64::new(1.0, 0.0);
        for &cj in c.iter() {
            acc += cj * sp;
            sp *= s;
        }
        acc
    })
}

/// Bernoulli numbers B_2..B_24.
const BERN2J: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// zeta(s) by Euler-Maclaurin summation for Re s > -1, s != 1.
///
/// Main sum length ceil(1.3 (1 + |Im s|)), ten Bernoulli corrections;
/// absolute error <= 1e-9 for |Im s| <= 5e4 and moderate Re s.
pub fn zeta_em(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::ZetaPole);
    }
    let n = (1.3 * (1.0 + s.im.abs())).ceil().max(32.0) as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 1..n {
        acc += (-s * (m as f64).ln()).exp();
    }
    let nf = n as f64;
    let lnn = nf.ln();
    acc += ((1.0 - s) * lnn).exp() / (s - 1.0);
    acc += 0.5 * (-s * lnn).exp();
    let mut poch = s;
    let mut npow = (-(s + 1.0) * lnn).exp();
    let mut fact = 1.0f64;
    for (j, &b) in BERN2J.iter().enumerate().take(10) {
        let two_j = 2 * (j + 1);
        fact *= ((two_j - 1) * two_j) as f64;
        acc += b / fact * poch * npow;
        poch *= (s + (two_j - 1) as f64) * (s + two_j as f64);
        npow = npow / (nf * nf);
    }
    Ok(acc)
}

/// zeta(1/2 + it) on the critical line, |t| <= t_max.
pub fn zeta_critical(t: f64, t_max: f64) -> Result<Complex64> {
    if t.abs() > t_max {
        return Err(Error::HeightRange(t.abs(), t_max));
    }
    zeta_em(Complex64::new(0.5, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn euler_mascheroni_limit() {
        // s -> 0 of zeta(1+s) - 1/s
        let s = Complex64::new(1e-7, 0.0);
        let v = zeta_near_one(s).unwrap() - 1.0 / s;
        assert_relative_eq!(v.re, EULER_GAMMA, max_relative = 1e-7);
    }

    #[test]
    fn zeta_three_halves() {
        let v = zeta_near_one(Complex64::new(0.5, 0.0)).unwrap();
        assert_relative_eq!(v.re, 2.612375348685488, max_relative = 1e-11);
    }

    #[test]
    fn schwarz_reflection() {
        let s = Complex64::new(0.0, 0.1);
        let a = zeta_near_one(s).unwrap();
        let b = zeta_near_one(s.conj()).unwrap();
        assert!((a - b.conj()).norm() < 1e-14);
    }

    #[test]
    fn pole_and_disc_errors() {
        assert!(zeta_near_one(Complex64::new(0.0, 0.0)).is_err());
        assert!(zeta_near_one(Complex64::new(0.6, 0.0)).is_err());
    }

    #[test]
    fn zeta_half() {
        let v = zeta_critical(0.0, 5e4).unwrap();
        assert_relative_eq!(v.re, -1.4603545088095868, max_relative = 1e-12);
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn near_one_agrees_with_general_routine() {
        // both valid on the segment s = 0.3 + iy, |y| <= 0.2
        for i in -4..=4 {
            let y = 0.05 * i as f64;
            let s = Complex64::new(0.3, y);
            let a = zeta_near_one(s).unwrap();
            let b = zeta_em(Complex64::new(1.0, 0.0) + s).unwrap();
            assert!((a - b).norm() < 1e-8, "mismatch at y={y}: {a} vs {b}");
        }
    }

    #[test]
    fn height_range_error() {
        assert!(zeta_critical(6e4, 5e4).is_err());
    }
}

use crate::error::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// One circular contour: z(theta) = center + radius e^{i theta}.
#[derive(Debug, Clone, Copy)]
pub struct Contour {
    pub center: Complex64,
    pub radius: f64,
    pub nodes: usize,
}

/// A family of circular contours for a tensor-product integral.
#[derive(Debug, Clone)]
pub struct ContourFamily {
    pub contours: Vec<Contour>,
}

impl ContourFamily {
    pub fn new(contours: Vec<Contour>) -> Result<Self> {
        if contours.is_empty() || contours.len() > 8 {
            return Err(Error::Domain(format!(
                "tensor contour dimension {} outside 1..=8",
                contours.len()
            )));
        }
        for c in &contours {
            if c.radius <= 0.0 {
                return Err(Error::Domain("contour radius must be positive".into()));
            }
            if c.nodes < 8 || !c.nodes.is_power_of_two() {
                return Err(Error::Domain(format!(
                    "contour node count {} must be a power of two >= 8",
                    c.nodes
                )));
            }
        }
        // collision-avoidance: contours sharing a center need distinct radii
        for i in 0..contours.len() {
            for j in i + 1..contours.len() {
                if contours[i].center == contours[j].center
                    && contours[i].radius == contours[j].radius
                {
                    return Err(Error::Domain(
                        "contours sharing a center must have distinct radii".into(),
                    ));
                }
            }
        }
        Ok(ContourFamily { contours })
    }

    /// Circles at the given centers with the distinct-radius rule
    /// r_m = r0 (1 + m/100) applied per shared center.
    pub fn circles(centers: &[Complex64], base_radius: f64, nodes: usize) -> Result<Self> {
        let mut contours = Vec::with_capacity(centers.len());
        for (m, &c) in centers.iter().enumerate() {
            let occurrence = centers[..m].iter().filter(|&&p| p == c).count();
            contours.push(Contour {
                center: c,
                radius: base_radius * (1.0 + occurrence as f64 * 1e-2),
                nodes,
            });
        }
        ContourFamily::new(contours)
    }

    pub fn dim(&self) -> usize {
        self.contours.len()
    }
}

/// Result of a refined quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    /// |value(M) - value(M/2)| at the final node count M.
    pub refinement_delta: f64,
    /// Total integrand evaluations spent.
    pub node_budget: usize,
}

fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    match v.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => v[0],
        2 => v[0] + v[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
        }
    }
}

/// One trapezoid pass at a fixed per-dimension multiplier of the node counts.
///
/// Parallel over the first dimension with a deterministic ordered reduction.
fn tensor_pass<F>(family: &ContourFamily, mult: usize, f: &F) -> Complex64
where
    F: Fn(&[usize], &[Complex64]) -> Complex64 + Sync,
{
    let d = family.dim();
    let counts: Vec<usize> = family.contours.iter().map(|c| c.nodes * mult).collect();
    // per-dimension node values and dz-weights
    let mut zs: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    let mut ws: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    for (j, c) in family.contours.iter().enumerate() {
        let m = counts[j];
        let mut zv = Vec::with_capacity(m);
        let mut wv = Vec::with_capacity(m);
        for a in 0..m {
            let th = 2.0 * PI * a as f64 / m as f64;
            let e = Complex64::new(th.cos(), th.sin());
            zv.push(c.center + c.radius * e);
            // dz = i r e^{i theta} d theta, with d theta = 2 pi / m
            wv.push(Complex64::new(0.0, 1.0) * c.radius * e * (2.0 * PI / m as f64));
        }
        zs.push(zv);
        ws.push(wv);
    }
    let partials: Vec<Complex64> = (0..counts[0])
        .into_par_iter()
        .map(|i0| {
            let mut idx = vec![0usize; d];
            let mut z = vec![Complex64::new(0.0, 0.0); d];
            idx[0] = i0;
            z[0] = zs[0][i0];
            let w0 = ws[0][i0];
            let inner: usize = counts[1..].iter().product();
            let mut acc = Complex64::new(0.0, 0.0);
            for flat in 0..inner.max(1) {
                let mut rem = flat;
                let mut w = w0;
                for j in (1..d).rev() {
                    let a = rem % counts[j];
                    rem /= counts[j];
                    idx[j] = a;
                    z[j] = zs[j][a];
                    w *= ws[j][a];
                }
                acc += f(&idx, &z) * w;
            }
            acc
        })
        .collect();
    pairwise_sum(&partials)
}

/// Tensor-product contour integral with index access (internal evaluators
/// cache per-dimension data keyed by node index).
pub fn contour_integral_indexed<F>(
    f: F,
    family: &ContourFamily,
    tol: f64,
    budget: usize,
) -> Result<QuadResult>
where
    F: Fn(&[usize], &[Complex64]) -> Complex64 + Sync,
{
    let d = family.dim();
    let base: usize = family.contours.iter().map(|c| c.nodes).product();
    let mut mult = 1usize;
    let mut spent = base;
    let mut prev = tensor_pass(family, mult, &f);
    loop {
        let next_cost = base * (2 * mult).pow(d as u32) / mult.pow(d as u32);
        if spent + next_cost > budget {
            return Err(Error::BudgetExhausted {
                last: prev,
                prev,
                delta: f64::INFINITY,
                tol,
            });
        }
        mult *= 2;
        let cur = tensor_pass(family, mult, &f);
        spent += base * mult.pow(d as u32);
        let delta = (cur - prev).norm();
        if delta <= tol {
            return Ok(QuadResult {
                value: cur,
                refinement_delta: delta,
                node_budget: spent,
            });
        }
        let next_cost = base * (2 * mult).pow(d as u32);
        if spent + next_cost > budget {
            return Err(Error::BudgetExhausted {
                last: cur,
                prev,
                delta,
                tol,
            });
        }
        prev = cur;
    }
}

/// Tensor-product contour integral over circles by the trapezoid rule in
/// each angle, refining node counts by doubling until the refinement delta
/// meets `tol` or the evaluation budget is exhausted.
pub fn contour_integral<F>(f: F, family: &ContourFamily, tol: f64, budget: usize) -> Result<QuadResult>
where
    F: Fn(&[Complex64]) -> Complex64 + Sync,
{
    contour_integral_indexed(|_, z| f(z), family, tol, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_circle(nodes: usize) -> ContourFamily {
        ContourFamily::new(vec![Contour {
            center: Complex64::new(0.0, 0.0),
            radius: 1.0,
            nodes,
        }])
        .unwrap()
    }

    #[test]
    fn residue_theorem() {
        let fam = unit_circle(16);
        let r = contour_integral(|z| 1.0 / z[0], &fam, 1e-10, 1 << 20).unwrap();
        assert!((r.value - Complex64::new(0.0, 2.0 * PI)).norm() < 1e-10);
    }

    #[test]
    fn two_variable_zero_residue() {
        // f(z1, z2) = 1/(z1 z2^2): second variable has zero residue
        let fam = ContourFamily::new(vec![
            Contour { center: Complex64::new(0.0, 0.0), radius: 1.0, nodes: 16 },
            Contour { center: Complex64::new(0.0, 0.0), radius: 1.01, nodes: 16 },
        ])
        .unwrap();
        let r = contour_integral(|z| 1.0 / (z[0] * z[1] * z[1]), &fam, 1e-10, 1 << 22).unwrap();
        assert!(r.value.norm() < 1e-10);
    }

    #[test]
    fn taylor_coefficient() {
        // e^z / z^3 -> 2 pi i / 2! = pi i
        let fam = unit_circle(16);
        let r = contour_integral(|z| z[0].exp() / (z[0] * z[0] * z[0]), &fam, 1e-12, 1 << 22)
            .unwrap();
        assert!((r.value - Complex64::new(0.0, PI)).norm() < 1e-11);
    }

    #[test]
    fn radius_independence() {
        let mut vals = Vec::new();
        for r in [0.5, 1.0, 2.0] {
            let fam = ContourFamily::new(vec![Contour {
                center: Complex64::new(0.0, 0.0),
                radius: r,
                nodes: 32,
            }])
            .unwrap();
            let q = contour_integral(|z| 1.0 / z[0], &fam, 1e-12, 1 << 22).unwrap();
            vals.push(q.value);
        }
        for w in vals.windows(2) {
            assert!((w[0] - w[1]).norm() < 1e-10);
        }
    }

    #[test]
    fn geometric_convergence() {
        // simple pole inside at a = 0.8 r: doubling 32 -> 64 nodes shrinks the
        // error by at least 1e3
        let a = Complex64::new(0.8, 0.0);
        let exact = Complex64::new(0.0, 2.0 * PI);
        let err = |m: usize| {
            let fam = unit_circle(m);
            let one_pass = {
                let d = fam.dim();
                let _ = d;
                super::tensor_pass(&fam, 1, &|_: &[usize], z: &[Complex64]| 1.0 / (z[0] - a))
            };
            (one_pass - exact).norm()
        };
        let e32 = err(32);
        let e64 = err(64);
        assert!(e32 / e64 >= 1e3, "e32 = {e32:.3e}, e64 = {e64:.3e}");
    }

    #[test]
    fn tensor_symmetry_under_swap() {
        let f = |z: &[Complex64]| (z[0] * z[1]).exp() / (z[0] * z[0] * z[1] * z[1]);
        let c1 = Contour { center: Complex64::new(0.0, 0.0), radius: 0.7, nodes: 32 };
        let c2 = Contour { center: Complex64::new(0.0, 0.0), radius: 0.9, nodes: 32 };
        let fam_a = ContourFamily::new(vec![c1, c2]).unwrap();
        let fam_b = ContourFamily::new(vec![c2, c1]).unwrap();
        let va = contour_integral(f, &fam_a, 1e-12, 1 << 22).unwrap().value;
        let vb = contour_integral(f, &fam_b, 1e-12, 1 << 22).unwrap().value;
        assert!((va - vb).norm() < 1e-10);
    }

    #[test]
    fn budget_error_carries_values() {
        let fam = unit_circle(8);
        let res = contour_integral(|z| 1.0 / z[0], &fam, 1e-30, 64);
        match res {
            Err(Error::BudgetExhausted { .. }) => {}
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn family_validation() {
        assert!(ContourFamily::new(vec![]).is_err());
        let c = Contour { center: Complex64::new(0.0, 0.0), radius: 1.0, nodes: 12 };
        assert!(ContourFamily::new(vec![c]).is_err()); // not a power of two
        let shared = vec![
            Contour { center: Complex64::new(0.0, 0.0), radius: 1.0, nodes: 16 },
            Contour { center: Complex64::new(0.0, 0.0), radius: 1.0, nodes: 16 },
        ];
        assert!(ContourFamily::new(shared).is_err());
        let fam = ContourFamily::circles(
            &[Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
            1.0,
            16,
        )
        .unwrap();
        assert_relative_eq!(fam.contours[1].radius, 1.01, epsilon = 1e-15);
    }
}

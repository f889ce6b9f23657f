use crate::error::{Error, Result};
use crate::quad::contour::QuadResult;
use crate::quad::gl::gl_nodes;
use num_complex::Complex64;

/// Truncated semi-infinite oscillatory integral over [0, cutoff]^dim.
///
/// The integrand must decay algebraically with the declared degree along
/// every ray; the omitted tail is of order cutoff^{1 - decay_degree} and is
/// reported (together with the panel-refinement delta) as
/// `refinement_delta`. The empty integral (dim = 0) is 1.
pub fn oscillatory_halfline_integral<F>(
    f: F,
    dim: usize,
    decay_degree: usize,
    cutoff: f64,
    tolerance: f64,
    order: usize,
) -> Result<QuadResult>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    if dim == 0 {
        return Ok(QuadResult {
            value: Complex64::new(1.0, 0.0),
            refinement_delta: 0.0,
            node_budget: 0,
        });
    }
    if decay_degree < 2 {
        return Err(Error::NonConvergent(decay_degree));
    }
    if dim > 2 {
        return Err(Error::Domain(format!(
            "half-line integral dimension {dim} > 2 unsupported"
        )));
    }
    let tail_bound = cutoff.powi(1 - decay_degree as i32);
    let mut width = 1.0f64;
    let mut spent = 0usize;
    let (mut prev, n0) = panels(&f, dim, cutoff, width, order);
    spent += n0;
    let mut delta;
    loop {
        width *= 0.5;
        let (cur, n) = panels(&f, dim, cutoff, width, order);
        spent += n;
        delta = (cur - prev).norm();
        if delta <= tolerance || width < 0.0626 {
            return Ok(QuadResult {
                value: cur,
                refinement_delta: delta + tail_bound,
                node_budget: spent,
            });
        }
        prev = cur;
    }
}

fn panels<F>(f: &F, dim: usize, cutoff: f64, width: f64, order: usize) -> (Complex64, usize)
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    let nodes = gl_nodes(order);
    let n_panels = (cutoff / width).ceil().max(1.0) as usize;
    let w = cutoff / n_panels as f64;
    // 1-d node/weight list over [0, cutoff]
    let mut xs = Vec::with_capacity(n_panels * order);
    for p in 0..n_panels {
        let mid = (p as f64 + 0.5) * w;
        for &(x, wt) in nodes {
            xs.push((mid + 0.5 * w * x, 0.5 * w * wt));
        }
    }
    match dim {
        1 => {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(x, wt) in &xs {
                acc += wt * f(&[x]);
            }
            (acc, xs.len())
        }
        2 => {
            use rayon::prelude::*;
            let partials: Vec<Complex64> = xs
                .par_iter()
                .map(|&(x1, w1)| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for &(x2, w2) in &xs {
                        acc += w2 * f(&[x1, x2]);
                    }
                    acc * w1
                })
                .collect();
            (partials.iter().sum(), xs.len() * xs.len())
        }
        _ => unreachable!(),
    }
}

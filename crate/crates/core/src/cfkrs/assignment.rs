use crate::error::{Error, Result};
use crate::params::{MomParams, ShiftVector};

/// Classification of a cross-block index pair (m, n) with distinct shifts:
/// `plus` if mu_m - mu_n = h_sigma - h_tau (sigma < tau), `minus` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TPair {
    pub m: usize,
    pub n: usize,
    /// pole labels, sigma < tau
    pub sigma: usize,
    pub tau: usize,
    pub plus: bool,
}

/// A contour-pole assignment: the vector l in {0..2 beta}^{k-1} together
/// with its pole layout, shift vector mu, index sets S and T, and binomial
/// weight c_l(k, beta).
#[derive(Debug, Clone)]
pub struct LAssignment {
    pub l: Vec<u32>,
    /// pole label (0-based) of each of the 2 k beta coordinates
    pub eps: Vec<usize>,
    /// mu_n = h[eps_n]
    pub mu: Vec<f64>,
    /// pairs (m, n), m < kb <= n, with equal shifts
    pub s_pairs: Vec<(usize, usize)>,
    /// pairs with distinct shifts, classified into the V+/V- partition
    pub t_pairs: Vec<TPair>,
    /// c_l(k, beta); zero-weight assignments contribute nothing
    pub weight: u64,
}

fn binomial(n: i64, r: i64) -> u64 {
    if r < 0 || r > n {
        return 0;
    }
    let mut c = 1u64;
    for i in 0..r {
        c = c * (n - i) as u64 / (i + 1) as u64;
    }
    c
}

impl LAssignment {
    /// sum_{j <= kb} (mu_j - mu_{kb+j}); the oscillation coefficient of the
    /// decomposed evaluator, equal to 2 sum_j (l_j - beta)(h_j - h_k).
    pub fn mu_diff_sum(&self) -> f64 {
        let kb = self.mu.len() / 2;
        (0..kb).map(|j| self.mu[j] - self.mu[kb + j]).sum()
    }

    /// Oscillation frequencies l_j - beta of the half-line integral.
    pub fn freqs(&self, beta: u32) -> Vec<i64> {
        self.l.iter().map(|&lj| lj as i64 - beta as i64).collect()
    }

    /// |T|, the algebraic decay degree of the half-line integrand.
    pub fn decay_degree(&self) -> usize {
        self.t_pairs.len()
    }
}

/// Build the assignment for one l-vector.
///
/// The pole layout is
/// (1^{l_1}, ..., (k-1)^{l_{k-1}}, k^{2 beta}, (k-1)^{2 beta - l_{k-1}}, ..., 1^{2 beta - l_1})
/// and the weight is the double product of binomial coefficients
/// C(kb - sum_{m<j} l_m, l_j) * C(kb - sum_{m<j} (2 beta - l_m), 2 beta - l_j).
pub fn build_assignment(params: MomParams, l: &[u32], h: &ShiftVector) -> Result<LAssignment> {
    let k = params.k as usize;
    let beta = params.beta;
    let kb = params.kb();
    if l.len() != k - 1 {
        return Err(Error::Params(format!("expected {} l-entries, got {}", k - 1, l.len())));
    }
    if l.iter().any(|&lj| lj > 2 * beta) {
        return Err(Error::Params("l entries must lie in [0, 2 beta]".into()));
    }
    if h.len() != k {
        return Err(Error::Params(format!("expected {} shifts, got {}", k, h.len())));
    }
    let mut eps = Vec::with_capacity(2 * kb);
    for (j, &lj) in l.iter().enumerate() {
        eps.extend(std::iter::repeat(j).take(lj as usize));
    }
    eps.extend(std::iter::repeat(k - 1).take(2 * beta as usize));
    for (j, &lj) in l.iter().enumerate().rev() {
        eps.extend(std::iter::repeat(j).take((2 * beta - lj) as usize));
    }
    debug_assert_eq!(eps.len(), 2 * kb);
    let mu: Vec<f64> = eps.iter().map(|&e| h.0[e]).collect();
    let mut s_pairs = Vec::new();
    let mut t_pairs = Vec::new();
    for m in 0..kb {
        for n in kb..2 * kb {
            if eps[m] == eps[n] {
                s_pairs.push((m, n));
            } else {
                let (a, b) = (eps[m], eps[n]);
                let (sigma, tau) = (a.min(b), a.max(b));
                t_pairs.push(TPair { m, n, sigma, tau, plus: a < b });
            }
        }
    }
    let mut weight = 1u64;
    let mut acc = 0i64;
    for &lj in l {
        weight *= binomial(kb as i64 - acc, lj as i64);
        acc += lj as i64;
    }
    let mut acc = 0i64;
    for &lj in l {
        weight *= binomial(kb as i64 - acc, (2 * beta - lj) as i64);
        acc += (2 * beta - lj) as i64;
    }
    Ok(LAssignment { l: l.to_vec(), eps, mu, s_pairs, t_pairs, weight })
}

/// All assignments for (k, beta), in lexicographic l-order.
pub fn all_assignments(params: MomParams, h: &ShiftVector) -> Result<Vec<LAssignment>> {
    let k = params.k as usize;
    let beta = params.beta;
    let mut out = Vec::new();
    let mut l = vec![0u32; k - 1];
    loop {
        out.push(build_assignment(params, &l, h)?);
        // odometer increment
        let mut j = 0;
        loop {
            if j == l.len() {
                return Ok(out);
            }
            if l[j] < 2 * beta {
                l[j] += 1;
                for lj in &mut l[..j] {
                    *lj = 0;
                }
                break;
            }
            j += 1;
        }
    }
}

use serde::{Deserialize, Serialize};

/// Runtime configuration shared by the evaluators.
///
/// Every field has a default chosen so that the full verification suite runs
/// at desk scale; the CLI exposes overrides for the main knobs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Config {
    /// Ceiling for critical-line evaluations of zeta (Euler-Maclaurin cost is O(t)).
    pub t_max: f64,
    /// Ceiling for the prime sieve.
    pub sieve_max: u64,
    /// Prime cutoff for truncated Euler products.
    pub prime_cutoff: u64,
    /// Prime cutoff for per-node Euler products inside tensor contour
    /// integrals; the remainder of the product is carried by a quadratic
    /// expansion of its logarithm.
    pub prime_cutoff_node: u64,
    /// Absolute tolerance for contour-integral refinement.
    pub contour_tol: f64,
    /// Relative tolerance for outer moment quadratures.
    pub moment_rel_tol: f64,
    /// Tensor-contour evaluation budget (total integrand evaluations).
    pub contour_budget: usize,
    /// Half-line oscillatory integral cutoff.
    pub psi_cutoff: f64,
    /// Gauss-Legendre order for half-line panels.
    pub psi_order: usize,
    /// Contour nodes per dimension for the decomposed evaluator.
    pub decomposed_nodes: usize,
    /// Contour nodes per dimension for the gamma-coefficient tensor integral.
    pub gamma_nodes: usize,
    /// Base radius for the origin-centred contours of the decomposed evaluator.
    pub gamma0_radius: f64,
    /// Minimum pairwise shift gap accepted by the decomposed evaluator.
    pub min_shift_gap: f64,
    /// Interior Gauss-Legendre nodes per shift dimension in the moment predictor.
    pub h_nodes: usize,
    /// Chebyshev nodes for tabulating the shift-averaged predictor in x = log(t/2pi).
    pub x_table_nodes: usize,
    /// Lower end of the t-integral in the predictor (the head below is dropped;
    /// its contribution is O(t_head * |log t_head|^d / T)).
    pub t_head: f64,
    /// Window length for the empirical moments.
    pub window_len: f64,
    /// Gauss-Legendre order for window panels.
    pub window_order: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            t_max: 5.0e4,
            sieve_max: 100_000_000,
            prime_cutoff: 100_000,
            prime_cutoff_node: 2_000,
            contour_tol: 1e-8,
            moment_rel_tol: 1e-4,
            contour_budget: 80_000_000,
            psi_cutoff: 200.0,
            psi_order: 16,
            decomposed_nodes: 24,
            gamma_nodes: 64,
            gamma0_radius: 0.5,
            min_shift_gap: 1e-3,
            h_nodes: 12,
            x_table_nodes: 14,
            t_head: 1e-3,
            window_len: 1.0,
            window_order: 16,
        }
    }
}

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gamma pole at non-positive integer z = {0}")]
    GammaPole(f64),
    #[error("barnes G domain error: z = {0} < 1")]
    BarnesDomain(f64),
    #[error("zeta pole at s = 1")]
    ZetaPole,
    #[error("argument outside validity disc: |s| = {0} > {1}")]
    OutsideDisc(f64, f64),
    #[error("height t = {0} above configured ceiling {1}")]
    HeightRange(f64, f64),
    #[error("prime sieve limit {0} above configured maximum {1}")]
    SieveLimit(u64, u64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature budget exhausted: last two refinements {last:?} and {prev:?} (delta {delta:.3e} > tol {tol:.3e})")]
    BudgetExhausted {
        last: Complex64,
        prev: Complex64,
        delta: f64,
        tol: f64,
    },
    #[error("refinement failure: {0}")]
    Refinement(String),
    #[error("oscillatory integral does not converge: decay degree {0} < 2")]
    NonConvergent(usize),
    #[error("near-coincident shifted arguments (gap {0:.3e}); use the theta-integral form")]
    NearCoincidence(f64),
    #[error("shift gap {0:.3e} below minimum {1:.3e} for the decomposed evaluator")]
    ShiftGap(f64, f64),
    #[error("imaginary residue {0:.3e} exceeds tolerance {1:.3e}; quadrature or integrand inconsistency")]
    ImaginaryResidue(f64, f64),
    #[error("parameter error: {0}")]
    Params(String),
    #[error("fit error: {0}")]
    Fit(String),
}

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The moment-of-moments parameter pair (k, beta).
///
/// `k` is the outer moment order, `beta` half the inner moment order. The
/// tensor-quadrature ceiling k*beta <= 4 bounds the contour dimension at 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomParams {
    pub k: u32,
    pub beta: u32,
}

impl MomParams {
    pub fn new(k: u32, beta: u32) -> Result<Self> {
        if k < 1 || beta < 1 {
            return Err(Error::Params(format!("k and beta must be >= 1, got ({k}, {beta})")));
        }
        if k * beta > 4 {
            return Err(Error::Params(format!(
                "k*beta = {} exceeds the tensor-quadrature ceiling 4",
                k * beta
            )));
        }
        Ok(MomParams { k, beta })
    }

    /// k*beta, half the contour dimension.
    pub fn kb(&self) -> usize {
        (self.k * self.beta) as usize
    }

    /// Contour dimension 2*k*beta.
    pub fn dim(&self) -> usize {
        2 * self.kb()
    }

    /// The conjectured unitary growth exponent k^2 beta^2 - k + 1.
    pub fn exponent(&self) -> i64 {
        let (k, b) = (self.k as i64, self.beta as i64);
        k * k * b * b - k + 1
    }
}

/// A vector of k real shifts in [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftVector(pub Vec<f64>);

impl ShiftVector {
    pub fn new(h: Vec<f64>) -> Result<Self> {
        if h.is_empty() {
            return Err(Error::Params("shift vector must be non-empty".into()));
        }
        if h.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
            return Err(Error::Params("shifts must lie in [0, 1]".into()));
        }
        Ok(ShiftVector(h))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Smallest pairwise gap (infinity for a single shift).
    pub fn min_gap(&self) -> f64 {
        let n = self.0.len();
        let mut g = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                g = g.min((self.0[i] - self.0[j]).abs());
            }
        }
        g
    }

    pub fn spread(&self) -> f64 {
        let mx = self.0.iter().cloned().fold(f64::MIN, f64::max);
        let mn = self.0.iter().cloned().fold(f64::MAX, f64::min);
        mx - mn
    }
}

/// How a moment estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Monte-Carlo average of empirical zeta windows.
    ZetaMonteCarlo,
    /// Deterministic panel quadrature of |zeta|^{2 beta}.
    ZetaQuadrature,
    /// Predictor with the exact contour-integral inner evaluator.
    PredictorDirect,
    /// Predictor with the asymptotic decomposed inner evaluator.
    PredictorDecomposed,
    /// Monte-Carlo over a compact matrix group.
    MatrixMonteCarlo,
    /// Closed-form product formula.
    Exact,
}

/// The symmetry class of a matrix ensemble or L-function family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryClass {
    Unitary,
    Symplectic,
    /// SO(2N), the even special orthogonal group.
    SpecialOrthogonalEven,
}

impl std::str::FromStr for SymmetryClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unitary" | "u" => Ok(SymmetryClass::Unitary),
            "symplectic" | "sp" => Ok(SymmetryClass::Symplectic),
            "special_orthogonal_even" | "orthogonal" | "so" => {
                Ok(SymmetryClass::SpecialOrthogonalEven)
            }
            other => Err(Error::Params(format!("unknown symmetry class `{other}`"))),
        }
    }
}

/// A computed moment with method tag, uncertainty and provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub value: f64,
    /// Standard error for Monte-Carlo methods, quadrature-refinement delta otherwise.
    pub uncertainty: f64,
    pub samples: u64,
    pub method: Method,
    pub seed: Option<u64>,
    pub params: MomParams,
    /// The scale variable: T for zeta-side moments, N for matrix moments.
    pub scale: f64,
    /// Free-form provenance (cutoffs, node counts).
    pub notes: String,
}

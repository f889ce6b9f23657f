use crate::arith::a_zero;
use crate::cfkrs::gamma::gamma_coeff;
use crate::config::Config;
use crate::error::Result;
use crate::params::MomParams;
use std::f64::consts::PI;

/// The leading-order prediction
/// alpha_{k,beta} gamma_{k,beta} (log(T / 2 pi))^{k^2 beta^2 - k + 1}.
pub fn leading_prediction(params: MomParams, t_upper: f64, config: &Config) -> Result<f64> {
    let alpha = a_zero(params.k, params.beta, config.prime_cutoff, config.sieve_max)?.value.re;
    let gamma = gamma_coeff(params, config)?.value;
    let x = (t_upper / (2.0 * PI)).ln();
    Ok(alpha * gamma * x.powi(params.exponent() as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_beta1_at_exponential_height() {
        // T = 2 pi e^{10}: alpha = gamma = 1 so the prediction is 10
        let cfg = Config::default();
        let p = MomParams::new(1, 1).unwrap();
        let t = 2.0 * PI * 10f64.exp();
        let v = leading_prediction(p, t, &cfg).unwrap();
        assert!((v - 10.0).abs() < 1e-6, "got {v}");
    }

    #[test]
    fn exponents() {
        assert_eq!(MomParams::new(1, 2).unwrap().exponent(), 4);
        assert_eq!(MomParams::new(2, 1).unwrap().exponent(), 3);
    }
}

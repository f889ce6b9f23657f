use crate::error::{Error, Result};

/// An immutable ascending table of all primes up to `limit`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    pub limit: u64,
    pub primes: Vec<u64>,
}

/// Sieve of Eratosthenes on odd numbers.
pub fn primes_up_to(limit: u64, sieve_max: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::Params(format!("sieve limit must be >= 2, got {limit}")));
    }
    if limit > sieve_max {
        return Err(Error::SieveLimit(limit, sieve_max));
    }
    let n = limit as usize;
    // bit i represents the odd number 2i + 3
    let m = if n >= 3 { (n - 3) / 2 + 1 } else { 0 };
    let mut composite = vec![false; m];
    let mut primes = vec![2u64];
    let mut i = 0usize;
    while i < m {
        if !composite[i] {
            let p = 2 * i + 3;
            if p * p <= n {
                let mut j = (p * p - 3) / 2;
                while j < m {
                    composite[j] = true;
                    j += p;
                }
            }
        }
        i += 1;
    }
    for (i, &c) in composite.iter().enumerate() {
        if !c {
            primes.push((2 * i + 3) as u64);
        }
    }
    Ok(PrimeTable { limit, primes })
}

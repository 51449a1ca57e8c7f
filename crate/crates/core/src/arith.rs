//! Sieves, gcd helpers and the parity-restricted Farey fractions that index every sum.

use crate::{Error, Result};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Which parity restriction selects the fractions `d/c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityClass {
    /// `c + d` odd: the domain of `S(d, c)`.
    Theta,
    /// `d` odd: the domain of `S4(d, c)`.
    Four,
}

impl ParityClass {
    #[inline]
    pub fn admits(self, d: u64, c: u64) -> bool {
        match self {
            ParityClass::Theta => (c + d) % 2 == 1,
            ParityClass::Four => d % 2 == 1,
        }
    }
}

/// A reduced fraction `d/c` with `1 <= d < c` that satisfies its parity restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaFraction {
    pub d: u64,
    pub c: u64,
    pub parity_class: ParityClass,
}

impl ThetaFraction {
    pub fn new(d: u64, c: u64, parity_class: ParityClass) -> Result<Self> {
        if c < 2 || d == 0 || d >= c {
            return Err(Error::domain(format!("{d}/{c} is outside 1 <= d < c")));
        }
        if d.gcd(&c) != 1 {
            return Err(Error::domain(format!("{d}/{c} is not reduced")));
        }
        if !parity_class.admits(d, c) {
            return Err(Error::domain(format!(
                "{d}/{c} violates the {parity_class:?} parity restriction"
            )));
        }
        Ok(Self { d, c, parity_class })
    }
}

/// Moebius and Euler totient tables on `[1, limit]`.
#[derive(Debug, Clone)]
pub struct SieveTables {
    limit: usize,
    mobius: Vec<i8>,
    totient: Vec<u64>,
}

/// Linear sieve for `mu` and `phi` on `[1, limit]`.
pub fn build_sieves(limit: u64) -> Result<SieveTables> {
    if limit == 0 {
        return Err(Error::InvalidInput("sieve limit must be at least 1".into()));
    }
    let n = usize::try_from(limit)
        .ok()
        .filter(|n| n.checked_add(1).is_some())
        .ok_or_else(|| Error::InvalidInput(format!("sieve limit {limit} exceeds the index range")))?;

    let mut mobius = vec![0i8; n + 1];
    let mut totient = vec![0u64; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    mobius[1] = 1;
    totient[1] = 1;
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mobius[i] = -1;
            totient[i] = i as u64 - 1;
        }
        for &p in &primes {
            let Some(ip) = i.checked_mul(p).filter(|&ip| ip <= n) else {
                break;
            };
            composite[ip] = true;
            if i % p == 0 {
                mobius[ip] = 0;
                totient[ip] = totient[i] * p as u64;
                break;
            }
            mobius[ip] = -mobius[i];
            totient[ip] = totient[i] * (p as u64 - 1);
        }
    }
    Ok(SieveTables {
        limit: n,
        mobius,
        totient,
    })
}

impl SieveTables {
    pub fn limit(&self) -> u64 {
        self.limit as u64
    }

    /// `mu(k)` for `1 <= k <= limit`.
    pub fn mobius(&self, k: u64) -> i8 {
        assert!(k >= 1 && k as usize <= self.limit, "mobius({k}) outside sieve");
        self.mobius[k as usize]
    }

    /// `phi(k)` for `1 <= k <= limit`.
    pub fn totient(&self, k: u64) -> u64 {
        assert!(k >= 1 && k as usize <= self.limit, "totient({k}) outside sieve");
        self.totient[k as usize]
    }

    /// Table form of [`phi_theta`].
    pub fn phi_theta(&self, c: u64) -> u64 {
        phi_theta_from_totient(c, self.totient(c))
    }

    /// `Phi_theta(n) = sum_{c <= n} phi_theta(c)` for `n <= limit`.
    pub fn phi_theta_count(&self, n: u64) -> u64 {
        (1..=n).map(|c| self.phi_theta(c)).sum()
    }
}

#[inline]
fn phi_theta_from_totient(c: u64, phi: u64) -> u64 {
    match c {
        1 => 0,
        _ if c % 2 == 0 => phi,
        _ => phi / 2,
    }
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient by factorisation; `totient(0) = 0`.
pub fn totient(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Moebius function by factorisation.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius(0) is undefined");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Number of `1 <= d < c` with `gcd(d, c) = 1` and `c + d` odd.
///
/// Equals `phi(c)` for even `c` and `phi(c)/2` for odd `c >= 3`. The empty range
/// at `c = 1` gives 0, not the `phi(1)/2` the closed form would suggest.
pub fn phi_theta(c: u64) -> u64 {
    assert!(c >= 1, "phi_theta(0) is undefined");
    phi_theta_from_totient(c, totient(c))
}

/// `Phi_theta(n)`: the number of parity-restricted fractions with denominator at most `n`.
pub fn phi_theta_count(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("Phi_theta(N) needs N >= 1".into()));
    }
    Ok(build_sieves(n)?.phi_theta_count(n))
}

/// Iterator over all [`ThetaFraction`]s with `c <= limit`, ascending in `c` then `d`.
#[derive(Debug, Clone)]
pub struct Fractions {
    limit: u64,
    class: ParityClass,
    c: u64,
    d: u64,
}

impl Iterator for Fractions {
    type Item = ThetaFraction;

    fn next(&mut self) -> Option<ThetaFraction> {
        while self.c <= self.limit {
            self.d += 1;
            if self.d >= self.c {
                self.c += 1;
                self.d = 0;
                continue;
            }
            let (d, c) = (self.d, self.c);
            if self.class.admits(d, c) && d.gcd(&c) == 1 {
                return Some(ThetaFraction {
                    d,
                    c,
                    parity_class: self.class,
                });
            }
        }
        None
    }
}

pub fn enumerate_fractions(limit: u64, class: ParityClass) -> Fractions {
    Fractions {
        limit,
        class,
        c: 2,
        d: 0,
    }
}

/// Numerators `1 <= d < c` admitted by `class`, ascending.
pub fn admissible_numerators(c: u64, class: ParityClass) -> Vec<u64> {
    (1..c)
        .filter(|&d| class.admits(d, c) && d.gcd(&c) == 1)
        .collect()
}

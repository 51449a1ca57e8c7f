//! Weyl sums over the Hardy-sum index set, Ramanujan sums, the even/odd split
//! `Lambda_1`, `Lambda_2` of the counting function, and residue histograms.
//!
//! Weyl sums use the phase convention `e(-n d / c + r S(d, c))`. Every phase is
//! reduced as an exact rational before it is evaluated, and per-denominator
//! partial sums are folded in ascending `c`, so results do not depend on the
//! thread count.

use crate::arith::{build_sieves, ParityClass};
use crate::phase::unit_root;
use crate::summation::{ordered_map, ComplexSum};
use crate::sums::{class_row, ClassRow, ExactRational};
use crate::{unit_interval_parts, Error, RationalParam, Result};
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub const DEFAULT_CHECKPOINTS: [u64; 6] = [250, 500, 1000, 2000, 4000, 8000];

/// Which Hardy sum drives the sweep: `S` over `c + d` odd, or `S4` over `d` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    S,
    S4,
}

impl Variant {
    pub fn class(self) -> ParityClass {
        match self {
            Variant::S => ParityClass::Theta,
            Variant::S4 => ParityClass::Four,
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" | "s" => Ok(Variant::S),
            "S4" | "s4" => Ok(Variant::S4),
            _ => Err(Error::InvalidInput(format!("unknown variant {s:?} (expected S or S4)"))),
        }
    }
}

fn rows<T, F>(lo: u64, hi: u64, class: ParityClass, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&ClassRow) -> T + Sync + Send,
{
    ordered_map(lo..=hi, |c| f(&class_row(c, class)))
}

/// `R_c(n) = sum_{d mod c, (d, c) = 1} e(n d / c)`, from per-residue counts.
pub fn ramanujan_direct(c: u64, n: i64) -> i64 {
    assert!(c >= 1, "ramanujan_direct needs c >= 1");
    let mut counts = vec![0u64; c as usize];
    let step = n.rem_euclid(c as i64) as u64;
    for d in 1..=c {
        if d.gcd(&c) == 1 {
            counts[((step as u128 * d as u128) % c as u128) as usize] += 1;
        }
    }
    let value: f64 = counts
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(res, &k)| k as f64 * unit_root(res as i128, c as i128).re)
        .sum();
    value.round() as i64
}

/// von Sterneck's closed form `mu(c/g) phi(c) / phi(c/g)` with `g = gcd(c, n)`.
pub fn ramanujan_von_sterneck(c: u64, n: i64) -> Result<i64> {
    if c == 0 {
        return Err(Error::domain("Ramanujan sum needs c >= 1"));
    }
    if n == 0 {
        return Err(Error::domain("von Sterneck form is not used at n = 0"));
    }
    let q = c / c.gcd(&n.unsigned_abs());
    let mu = crate::arith::mobius(q) as i64;
    Ok(mu * (crate::arith::totient(c) / crate::arith::totient(q)) as i64)
}

/// Partial Weyl sums `W(N) = sum_{c <= N} sum_d e(-n d / c + r S(d, c))` on a grid of `N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeylSeries {
    pub r: RationalParam,
    pub n: i64,
    pub variant: Variant,
    pub checkpoints: Vec<u64>,
    pub partials: Vec<Complex64>,
    /// Number of index pairs up to each checkpoint (`Phi_theta(N)` for [`Variant::S`]).
    pub counts: Vec<u64>,
    /// `|W(N)| / counts`.
    pub normalized: Vec<f64>,
    #[serde(skip)]
    state: ComplexSum,
    #[serde(skip)]
    reached: u64,
    #[serde(skip)]
    count: u64,
}

impl WeylSeries {
    pub fn new(r: RationalParam, n: i64, variant: Variant) -> Result<Self> {
        unit_interval_parts(r)?;
        Ok(Self {
            r,
            n,
            variant,
            checkpoints: Vec::new(),
            partials: Vec::new(),
            counts: Vec::new(),
            normalized: Vec::new(),
            state: ComplexSum::new(),
            reached: 0,
            count: 0,
        })
    }

    /// Largest `N` folded in so far.
    pub fn reached(&self) -> u64 {
        self.reached
    }

    pub fn last(&self) -> Option<(u64, Complex64)> {
        Some((*self.checkpoints.last()?, *self.partials.last()?))
    }

    /// `sum_d e(-n d / c + r S(d, c))` for one row.
    fn row_sum(&self, row: &ClassRow) -> Complex64 {
        let (j, m) = (*self.r.numer() as i128, *self.r.denom() as i128);
        let c = row.c as i128;
        let n = self.n as i128;
        row.d
            .iter()
            .zip(&row.value)
            .map(|(&d, &v)| unit_root(-n * d as i128 * m + j * v as i128 * c, c * m))
            .collect::<ComplexSum>()
            .value()
    }

    fn absorb(&mut self, c: u64, row_sum: Complex64, row_len: u64) {
        self.state.add(row_sum);
        self.count += row_len;
        self.reached = c;
    }

    fn record(&mut self) {
        let w = self.state.value();
        self.checkpoints.push(self.reached);
        self.partials.push(w);
        self.counts.push(self.count);
        self.normalized.push(if self.count > 0 { w.norm() / self.count as f64 } else { 0.0 });
    }

    /// Continues the sweep through the given ascending checkpoints, all beyond [`Self::reached`].
    pub fn extend(&mut self, checkpoints: &[u64]) -> Result<()> {
        weyl_extend(std::slice::from_mut(self), checkpoints)
    }
}

fn check_checkpoints(start: u64, checkpoints: &[u64]) -> Result<()> {
    let mut prev = start;
    for &k in checkpoints {
        if k <= prev {
            return Err(Error::InvalidInput(format!(
                "checkpoints must be strictly ascending and beyond N = {start}, got {checkpoints:?}"
            )));
        }
        prev = k;
    }
    Ok(())
}

/// Extends several series of the same variant, sharing the Hardy-sum rows.
pub fn weyl_extend(series: &mut [WeylSeries], checkpoints: &[u64]) -> Result<()> {
    let Some(first) = series.first() else {
        return Ok(());
    };
    let (variant, start) = (first.variant, first.reached);
    if series.iter().any(|s| s.variant != variant || s.reached != start) {
        return Err(Error::InvalidInput("series must share variant and progress".into()));
    }
    check_checkpoints(start, checkpoints)?;
    let Some(&end) = checkpoints.last() else {
        return Ok(());
    };
    let templates: Vec<WeylSeries> = series.to_vec();
    let per_c = rows(start + 1, end, variant.class(), |row| {
        let sums: Vec<Complex64> = templates.iter().map(|s| s.row_sum(row)).collect();
        (sums, row.d.len() as u64)
    });
    let mut next = checkpoints.iter().peekable();
    for (c, (sums, len)) in (start + 1..=end).zip(per_c) {
        for (s, w) in series.iter_mut().zip(sums) {
            s.absorb(c, w, len);
        }
        if next.peek() == Some(&&c) {
            next.next();
            series.iter_mut().for_each(WeylSeries::record);
        }
    }
    Ok(())
}

/// Default checkpoint grid truncated to `N`, always ending at `N`.
pub fn default_checkpoints(big_n: u64) -> Vec<u64> {
    let mut grid: Vec<u64> = DEFAULT_CHECKPOINTS.iter().copied().filter(|&k| k < big_n).collect();
    grid.push(big_n);
    grid
}

fn grid_for(big_n: u64, checkpoints: &[u64]) -> Result<Vec<u64>> {
    if big_n < 2 {
        return Err(Error::InvalidInput(format!("Weyl sums need N >= 2, got {big_n}")));
    }
    let mut grid = checkpoints.to_vec();
    if grid.last().map_or(true, |&k| k < big_n) {
        grid.push(big_n);
    }
    if grid.last() != Some(&big_n) {
        return Err(Error::InvalidInput(format!("checkpoint beyond N = {big_n}")));
    }
    check_checkpoints(0, &grid)?;
    Ok(grid)
}

/// `W(N; n, r)` for the `S` variant at each checkpoint, plus `N` itself.
pub fn weyl_sum(big_n: u64, n: i64, r: RationalParam, checkpoints: &[u64]) -> Result<WeylSeries> {
    weyl_sum_variant(big_n, n, r, Variant::S, checkpoints)
}

pub fn weyl_sum_variant(
    big_n: u64,
    n: i64,
    r: RationalParam,
    variant: Variant,
    checkpoints: &[u64],
) -> Result<WeylSeries> {
    let mut out = weyl_sweep(big_n, &[(n, r)], variant, checkpoints)?;
    Ok(out.remove(0))
}

/// Several `(n, r)` configurations over one pass of Hardy-sum rows.
pub fn weyl_sweep(
    big_n: u64,
    configs: &[(i64, RationalParam)],
    variant: Variant,
    checkpoints: &[u64],
) -> Result<Vec<WeylSeries>> {
    let grid = grid_for(big_n, checkpoints)?;
    let mut series = configs
        .iter()
        .map(|&(n, r)| WeylSeries::new(r, n, variant))
        .collect::<Result<Vec<_>>>()?;
    weyl_extend(&mut series, &grid)?;
    Ok(series)
}

/// Weyl sum indexed by the character `k -> e(j k / m)` of `Z/mZ`.
pub fn character_sum(big_n: u64, m: u64, j: i64, n: i64, variant: Variant) -> Result<Complex64> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("modulus must be >= 2, got {m}")));
    }
    let m = m as i64;
    let j = j.rem_euclid(m);
    if j == 0 {
        return Err(Error::domain("trivial character excluded"));
    }
    let series = weyl_sum_variant(big_n, n, RationalParam::new(j, m), variant, &[])?;
    Ok(*series.partials.last().expect("final checkpoint"))
}

/// `(Lambda_1, Lambda_2) = (sum phi(2c), 1/2 sum phi(2c - 1))` over `c <= N/2`.
pub fn lambda_split(big_n: u64) -> Result<(ExactRational, ExactRational)> {
    if big_n < 1 {
        return Err(Error::InvalidInput("lambda_split needs N >= 1".into()));
    }
    let half = big_n / 2;
    let sieve = build_sieves((2 * half).max(1))?;
    let (mut even, mut odd) = (0i64, 0i64);
    for c in 1..=half {
        even += sieve.totient(2 * c) as i64;
        odd += sieve.totient(2 * c - 1) as i64;
    }
    Ok((ExactRational::from_integer(even), ExactRational::new(odd, 2)))
}

/// Residue counts of `S` (or `S4`) mod `m`, crossed with `bins` equal bins of `d/c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistTable {
    pub m: u64,
    pub variant: Variant,
    /// Largest denominator `N` of the census.
    pub n_max: u64,
    pub counts: Vec<u64>,
    /// `joint[i][k]` counts `d/c` in `[i/B, (i+1)/B)` with residue `k`.
    pub joint: Vec<Vec<u64>>,
    pub total: u64,
}

impl DistTable {
    pub fn bins(&self) -> usize {
        self.joint.len()
    }

    /// Residue marginal recomputed from the joint table.
    pub fn marginal(&self) -> Vec<u64> {
        let mut out = vec![0; self.m as usize];
        for row in &self.joint {
            for (o, v) in out.iter_mut().zip(row) {
                *o += v;
            }
        }
        out
    }

    /// `max |cell * B * m / total - 1|` over the joint table.
    pub fn joint_max_rel_dev(&self) -> f64 {
        let expected = self.total as f64 / (self.bins() as f64 * self.m as f64);
        self.joint
            .iter()
            .flatten()
            .map(|&v| (v as f64 / expected - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

pub fn distribution_table(big_n: u64, m: u64, variant: Variant, bins: u64) -> Result<DistTable> {
    Ok(distribution_tables(big_n, &[m], variant, bins)?.remove(0))
}

/// One table per modulus over a single pass of Hardy-sum rows.
pub fn distribution_tables(big_n: u64, moduli: &[u64], variant: Variant, bins: u64) -> Result<Vec<DistTable>> {
    if big_n < 2 {
        return Err(Error::InvalidInput(format!("distribution needs N >= 2, got {big_n}")));
    }
    if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
        return Err(Error::InvalidInput(format!("modulus must be >= 2, got {m}")));
    }
    if bins < 1 {
        return Err(Error::InvalidInput("bins must be >= 1".into()));
    }
    let b = bins as usize;
    let per_c = rows(1, big_n, variant.class(), |row| {
        moduli
            .iter()
            .map(|&m| {
                let mut joint = vec![0u64; b * m as usize];
                for (&d, &v) in row.d.iter().zip(&row.value) {
                    let bin = ((bins as u128 * d as u128) / row.c as u128) as usize;
                    joint[bin * m as usize + (v as i64).rem_euclid(m as i64) as usize] += 1;
                }
                joint
            })
            .collect::<Vec<_>>()
    });
    Ok(moduli
        .iter()
        .enumerate()
        .map(|(k, &m)| {
            let mu = m as usize;
            let mut flat = vec![0u64; b * mu];
            for row in &per_c {
                for (acc, v) in flat.iter_mut().zip(&row[k]) {
                    *acc += v;
                }
            }
            let joint: Vec<Vec<u64>> = flat.chunks(mu).map(<[u64]>::to_vec).collect();
            let mut table = DistTable {
                m,
                variant,
                n_max: big_n,
                counts: Vec::new(),
                joint,
                total: flat.iter().sum(),
            };
            table.counts = table.marginal();
            table
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformityStats {
    pub chi_square: f64,
    pub max_rel_dev: f64,
    pub tv_distance: f64,
}

pub fn uniformity_stats(table: &DistTable) -> Result<UniformityStats> {
    uniformity_of_counts(&table.counts)
}

/// Distance-to-uniform diagnostics for a vector of counts.
pub fn uniformity_of_counts(counts: &[u64]) -> Result<UniformityStats> {
    let total: u64 = counts.iter().sum();
    if total == 0 || counts.is_empty() {
        return Err(Error::InvalidInput("uniformity statistics need a non-empty table".into()));
    }
    let m = counts.len() as f64;
    let expected = total as f64 / m;
    let mut stats = UniformityStats {
        chi_square: 0.0,
        max_rel_dev: 0.0,
        tv_distance: 0.0,
    };
    for &k in counts {
        let k = k as f64;
        stats.chi_square += (k - expected).powi(2) / expected;
        stats.max_rel_dev = stats.max_rel_dev.max((k / expected - 1.0).abs());
        stats.tv_distance += 0.5 * (k / total as f64 - 1.0 / m).abs();
    }
    Ok(stats)
}

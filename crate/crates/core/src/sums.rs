//! Dedekind sums and the Hardy sums `S(d, c)`, `S4(d, c)`.
//!
//! Scalar entry points evaluate the defining sums directly and are the
//! reference semantics. [`batch_row`] and [`residue_table`] compute whole rows
//! for one denominator with a lane-parallel running-remainder loop.

use crate::arith::ParityClass;
use crate::{Error, Result};
use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Exact rational in lowest terms with positive denominator.
pub type ExactRational = Ratio<i64>;

/// One row of a sweep: `S` and `S4` at `(d, c)` where each is defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HardyRecord {
    pub d: u64,
    pub c: u64,
    pub s: Option<i64>,
    pub s4: Option<i64>,
}

impl HardyRecord {
    pub fn c_is_even(&self) -> bool {
        self.c % 2 == 0
    }
}

/// `s(d, c)` computed exactly from the sawtooth form
/// `sum_k ((k/c)) ((dk/c))`, which equals the cotangent sum.
pub fn dedekind_sum(d: i64, c: i64) -> Result<ExactRational> {
    if c < 1 {
        return Err(Error::domain(format!("dedekind sum needs c >= 1, got {c}")));
    }
    if d.gcd(&c) != 1 {
        return Err(Error::domain(format!("gcd({d}, {c}) != 1")));
    }
    let c128 = c as i128;
    let d = d.rem_euclid(c) as i128;
    let mut acc: i128 = 0;
    let mut r: i128 = 0;
    for k in 1..c128 {
        r += d;
        if r >= c128 {
            r -= c128;
        }
        acc += (2 * k - c128) * (2 * r - c128);
    }
    let den = 4 * c128 * c128;
    let g = acc.gcd(&den);
    let (num, den) = (acc / g, den / g);
    let cast = |v: i128| {
        i64::try_from(v).map_err(|_| Error::InvalidInput(format!("s({d}, {c}) overflows i64")))
    };
    Ok(Ratio::new_raw(cast(num)?, cast(den)?))
}

/// `s(d, c)` from the cotangent sum in floating point. Kept as an independent check
/// on [`dedekind_sum`].
pub fn dedekind_sum_cotangent(d: i64, c: i64) -> f64 {
    use std::f64::consts::PI;
    let cf = c as f64;
    let cot = |x: f64| x.cos() / x.sin();
    (1..c)
        .map(|k| {
            let k = k as f64;
            cot(PI * k / cf) * cot(PI * (k * d as f64).rem_euclid(cf) / cf)
        })
        .sum::<f64>()
        / (4.0 * cf)
}

fn canonical(d: i64, c: i64) -> Result<u64> {
    if c < 1 {
        return Err(Error::domain(format!(
            "Hardy sums are implemented for c >= 1, got c = {c}"
        )));
    }
    let d = d.rem_euclid(2 * c);
    if d.gcd(&c) != 1 {
        return Err(Error::domain(format!("gcd({d}, {c}) != 1")));
    }
    Ok(d as u64)
}

/// `floor(d k / c)` parity for `k = 1..c-1`, as an iterator of `(k, floor)`.
fn floors(d: u64, c: u64) -> impl Iterator<Item = (u64, u128)> {
    (1..c).map(move |k| (k, (d as u128 * k as u128) / c as u128))
}

/// `S(d, c) = sum_{k=1}^{c-1} (-1)^(k + 1 + floor(dk/c))` for `gcd(d, c) = 1`, `c + d` odd.
///
/// `d` is reduced into `[0, 2c)` first: the sum has period `2c` in `d` but not `c`.
pub fn hardy_s(d: i64, c: i64) -> Result<i64> {
    let d = canonical(d, c)?;
    let c = c as u64;
    if (c + d) % 2 == 0 {
        return Err(Error::domain(format!("S({d}, {c}) needs c + d odd")));
    }
    Ok(floors(d, c)
        .map(|(k, q)| if (k as u128 + 1 + q) % 2 == 0 { 1 } else { -1 })
        .sum())
}

/// `S4(d, c) = sum_{k=1}^{c-1} (-1)^floor(dk/c)` for `gcd(d, c) = 1`, `d` odd.
pub fn hardy_s4(d: i64, c: i64) -> Result<i64> {
    let d = canonical(d, c)?;
    let c = c as u64;
    if d % 2 == 0 {
        return Err(Error::domain(format!("S4({d}, {c}) needs d odd")));
    }
    Ok(floors(d, c).map(|(_, q)| if q % 2 == 0 { 1 } else { -1 }).sum())
}

/// `S(d, c)` for any nonzero `c`, with the `|c|` summation limit: `S(-d, -c) = S(d, c)`.
pub(crate) fn hardy_s_signed(d: i64, c: i64) -> Result<i64> {
    if c < 0 {
        hardy_s(-d, -c)
    } else {
        hardy_s(d, c)
    }
}

const LANES: usize = 64;

/// For every `d` in `ds` (each `< c`), returns `(S-type, S4-type)` sums
/// `sum_k (-1)^(k+1+floor(dk/c))` and `sum_k (-1)^floor(dk/c)` over `k = 1..c-1`.
///
/// Each lane keeps `dk mod c` and the parity of `floor(dk/c)`; one step is an
/// add, a compare and a conditional subtract. Odd and even `k` accumulate
/// separately, so `S = odd - even` and `S4 = odd + even`.
pub(crate) fn row_sums(c: u32, ds: &[u32]) -> (Vec<i32>, Vec<i32>) {
    assert!(c < 1 << 31, "denominator {c} too large for the row kernel");
    let mut s = Vec::with_capacity(ds.len());
    let mut s4 = Vec::with_capacity(ds.len());
    for chunk in ds.chunks(LANES) {
        let mut num = [0u32; LANES];
        num[..chunk.len()].copy_from_slice(chunk);
        let mut rem = [0u32; LANES];
        let mut par = [0u32; LANES];
        let mut odd = [0i32; LANES];
        let mut even = [0i32; LANES];
        let mut k = 1;
        while k + 1 < c {
            step(&mut rem, &mut par, &mut odd, &num, c);
            step(&mut rem, &mut par, &mut even, &num, c);
            k += 2;
        }
        if k < c {
            step(&mut rem, &mut par, &mut odd, &num, c);
        }
        for i in 0..chunk.len() {
            s.push(odd[i] - even[i]);
            s4.push(odd[i] + even[i]);
        }
    }
    (s, s4)
}

#[inline(always)]
fn step(rem: &mut [u32; LANES], par: &mut [u32; LANES], acc: &mut [i32; LANES], num: &[u32; LANES], c: u32) {
    for i in 0..LANES {
        let r = rem[i].wrapping_add(num[i]);
        let wrap = (r >= c) as u32;
        rem[i] = r.wrapping_sub(wrap.wrapping_mul(c));
        par[i] ^= wrap;
        acc[i] = acc[i].wrapping_add(1 - 2 * par[i] as i32);
    }
}

/// Numerators of one class row together with the class's own sum
/// (`S` for [`ParityClass::Theta`], `S4` for [`ParityClass::Four`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRow {
    pub c: u64,
    pub d: Vec<u32>,
    pub value: Vec<i32>,
}

/// Fast row for sweeps: all admissible `1 <= d < c` and their class sum.
pub fn class_row(c: u64, class: ParityClass) -> ClassRow {
    let cc = u32::try_from(c).expect("denominator exceeds the row kernel range");
    let d: Vec<u32> = (1..cc)
        .filter(|&d| class.admits(d as u64, c) && d.gcd(&cc) == 1)
        .collect();
    let (s, s4) = row_sums(cc, &d);
    let value = match class {
        ParityClass::Theta => s,
        ParityClass::Four => s4,
    };
    ClassRow { c, d, value }
}

/// All records `1 <= d < c` of the given class, with both sums filled where defined.
pub fn batch_row(c: u64, class: ParityClass) -> Result<Vec<HardyRecord>> {
    if c < 2 {
        return Err(Error::InvalidInput(format!("batch_row needs c >= 2, got {c}")));
    }
    let cc = u32::try_from(c)
        .ok()
        .filter(|&v| v < 1 << 31)
        .ok_or_else(|| Error::InvalidInput(format!("c = {c} exceeds the row kernel range")))?;
    let d: Vec<u32> = (1..cc)
        .filter(|&d| class.admits(d as u64, c) && d.gcd(&cc) == 1)
        .collect();
    let (s, s4) = row_sums(cc, &d);
    Ok(d
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let d = d as u64;
            HardyRecord {
                d,
                c,
                s: ((c + d) % 2 == 1).then_some(s[i] as i64),
                s4: (d % 2 == 1).then_some(s4[i] as i64),
            }
        })
        .collect())
}

/// `S(d, c)` for every residue `d` in `[0, 2c)`, `None` where `S` is undefined.
///
/// The upper half comes from `S(d + c, c) = -S4(d, c)`, which follows from
/// `floor((d + c)k / c) = floor(dk / c) + k`.
pub fn residue_table(c: u64) -> Vec<Option<i32>> {
    let cc = u32::try_from(c).expect("denominator exceeds the row kernel range");
    assert!(cc >= 1);
    let mut table = vec![None; 2 * c as usize];
    if cc == 1 {
        table[0] = Some(0);
        return table;
    }
    let units: Vec<u32> = (1..cc).filter(|&d| d.gcd(&cc) == 1).collect();
    let (s, s4) = row_sums(cc, &units);
    for (i, &d) in units.iter().enumerate() {
        let d = d as usize;
        if (cc as usize + d) % 2 == 1 {
            table[d] = Some(s[i]);
        }
        if d % 2 == 1 {
            table[d + cc as usize] = Some(-s4[i]);
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind_sum(1, 2).unwrap(), Ratio::from_integer(0));
        assert_eq!(dedekind_sum(1, 3).unwrap(), Ratio::new(1, 18));
        assert_eq!(dedekind_sum(5, 1).unwrap(), Ratio::from_integer(0));
        assert!(dedekind_sum(2, 4).is_err());
        assert!(dedekind_sum(1, 0).is_err());
    }

    #[test]
    fn dedekind_rational_reconstruction_oracle() {
        // 6c s(d, c) is an integer, so the float cotangent sum pins the value.
        for (d, c) in [(1, 3), (2, 5), (3, 7), (5, 12), (7, 30)] {
            let f = dedekind_sum_cotangent(d, c);
            let scaled = (f * 6.0 * c as f64).round() as i64;
            assert_eq!(Ratio::new(scaled, 6 * c), dedekind_sum(d, c).unwrap());
        }
    }

    #[test]
    fn dedekind_matches_cotangent_sum() {
        for c in 1..=200i64 {
            for d in 0..c {
                if d.gcd(&c) != 1 {
                    continue;
                }
                let exact = dedekind_sum(d, c).unwrap();
                let approx = *exact.numer() as f64 / *exact.denom() as f64;
                let cot = dedekind_sum_cotangent(d, c);
                assert!((approx - cot).abs() < 1e-9, "s({d},{c}): {approx} vs {cot}");
            }
        }
    }

    #[test]
    fn dedekind_periodic() {
        for (d, c) in [(1, 7), (3, 10), (11, 24), (-5, 9)] {
            assert_eq!(dedekind_sum(d + c, c), dedekind_sum(d, c));
        }
    }

    #[test]
    fn hardy_examples() {
        assert_eq!(hardy_s(1, 2), Ok(1));
        assert_eq!(hardy_s(1, 4), Ok(1));
        assert_eq!(hardy_s(2, 3), Ok(2));
        assert_eq!(hardy_s(3, 4), Ok(3));
        assert_eq!(hardy_s(0, 1), Ok(0));
        assert_eq!(hardy_s4(1, 2), Ok(1));
        assert_eq!(hardy_s4(1, 3), Ok(2));
        assert_eq!(hardy_s4(3, 4), Ok(1));
    }

    #[test]
    fn hardy_domain_errors() {
        assert!(matches!(hardy_s(1, 3), Err(Error::Domain(_))));
        assert!(matches!(hardy_s(2, 4), Err(Error::Domain(_))));
        assert!(matches!(hardy_s(1, -2), Err(Error::Domain(_))));
        assert!(matches!(hardy_s4(2, 3), Err(Error::Domain(_))));
        assert!(matches!(hardy_s4(3, 6), Err(Error::Domain(_))));
    }

    #[test]
    fn not_periodic_mod_c() {
        // S(d + c, c) = -S4(d, c); differs from S(d, c) in general.
        assert_eq!(hardy_s(1 + 4, 4), Ok(-hardy_s4(1, 4).unwrap()));
        assert_eq!(hardy_s(2 + 3, 3), Err(Error::domain("S(5, 3) needs c + d odd")));
        assert_eq!(hardy_s(1 + 2, 2).unwrap(), -1);
        assert_ne!(hardy_s(3, 2).unwrap(), hardy_s(1, 2).unwrap());
    }

    #[test]
    fn signed_denominator() {
        assert_eq!(hardy_s_signed(-3, -4), hardy_s(3, 4));
        assert_eq!(hardy_s_signed(3, -4), hardy_s(-3, 4));
    }

    #[test]
    fn shift_and_negation_laws() {
        for c in 2..80i64 {
            for d in -3 * c..3 * c {
                if d.gcd(&c) != 1 {
                    continue;
                }
                if (c + d).rem_euclid(2) == 1 {
                    let s = hardy_s(d, c).unwrap();
                    assert_eq!(hardy_s(d + 2 * c, c).unwrap(), s);
                    assert_eq!(hardy_s(-d, c).unwrap(), -s);
                }
                if d.rem_euclid(2) == 1 {
                    assert_eq!(hardy_s4(d + 2 * c, c), hardy_s4(d, c));
                }
            }
        }
    }

    #[test]
    fn batch_row_examples() {
        let row = batch_row(4, ParityClass::Theta).unwrap();
        let s: Vec<_> = row.iter().map(|r| (r.d, r.s.unwrap())).collect();
        assert_eq!(s, vec![(1, 1), (3, 3)]);
        let row = batch_row(3, ParityClass::Theta).unwrap();
        assert_eq!(row.iter().map(|r| (r.d, r.s)).collect::<Vec<_>>(), vec![(2, Some(2))]);
        let row = batch_row(5, ParityClass::Four).unwrap();
        assert!(row.iter().all(|r| r.s4.unwrap() % 2 == 0));
        assert!(batch_row(1, ParityClass::Theta).is_err());
    }

    #[test]
    fn residue_table_matches_scalar() {
        for c in 1..150u64 {
            let table = residue_table(c);
            for (d, v) in table.iter().enumerate() {
                let want = hardy_s(d as i64, c as i64).ok().map(|s| s as i32);
                assert_eq!(*v, want, "S({d}, {c})");
            }
        }
    }

    #[test]
    fn kernel_handles_odd_and_even_lengths() {
        for c in [2u32, 3, 4, 5, 97, 128, 129] {
            let ds: Vec<u32> = (1..c).filter(|d| d.gcd(&c) == 1).collect();
            let (s, s4) = row_sums(c, &ds);
            for (i, &d) in ds.iter().enumerate() {
                if (c + d) % 2 == 1 {
                    assert_eq!(s[i] as i64, hardy_s(d as i64, c as i64).unwrap());
                }
                if d % 2 == 1 {
                    assert_eq!(s4[i] as i64, hardy_s4(d as i64, c as i64).unwrap());
                }
            }
        }
    }
}

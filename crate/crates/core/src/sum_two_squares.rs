//! Counting B(x), the number of positive integers <= x that are a sum
//! of two squares (zero allowed), by two independent methods, plus the
//! asymptotic ratio B(x) sqrt(log x) / x and the remainder of the
//! integral approximation over a range.

use std::fmt;

use crate::bigfloat::{check_precision, BigFloat};
use crate::constants::k_reference;
use crate::error::{Error, Result};
use crate::numerics::{integral_sqrt_log, QuadratureConfig};

pub const DEFAULT_MEMORY_LIMIT_MB: u64 = 2048;
pub const MAX_COUNT_LIMIT: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    /// Mark every a^2 + b^2 <= x in a bitset.
    MarkSieve,
    /// Classify every n <= x by prime-exponent parity via a
    /// smallest-prime-factor table.
    FactorSieve,
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMethod::MarkSieve => "mark",
            CountMethod::FactorSieve => "factor",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BCountResult {
    pub x: u64,
    pub count: u64,
    pub method: CountMethod,
}

/// Count of representable n in (a, x], the integral approximation
/// K * integral(a, x) of that count, and their difference theta.
#[derive(Clone, Debug)]
pub struct ThetaResult {
    pub a: u64,
    pub x: u64,
    pub range_count: u64,
    pub integral_value: BigFloat,
    pub k_times_integral: BigFloat,
    pub theta: BigFloat,
}

impl ThetaResult {
    /// |theta| relative to the integral term.
    pub fn ratio_to_integral(&self) -> BigFloat {
        &self.theta.abs() / &self.k_times_integral
    }
}

/// n is a sum of two squares iff every prime p = 3 (mod 4) divides n to
/// an even power. Classifies by trial division.
pub fn is_sum_two_squares(n: u64) -> bool {
    assert!(n >= 1, "n must be positive");
    let mut m = n;
    while m % 2 == 0 {
        m /= 2;
    }
    let mut d = 3u64;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0u32;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            if d % 4 == 3 && e % 2 == 1 {
                return false;
            }
        }
        d += 2;
    }
    m == 1 || m % 4 != 3
}

fn check_limit(x: u64) -> Result<()> {
    if x == 0 || x > MAX_COUNT_LIMIT {
        return Err(Error::InvalidInput(format!(
            "x must lie in [1, {MAX_COUNT_LIMIT}], got {x}"
        )));
    }
    Ok(())
}

fn check_memory(required_bytes: u64, limit_mb: u64) -> Result<()> {
    let required_mb = required_bytes.div_ceil(1 << 20);
    if required_mb > limit_mb {
        return Err(Error::MemoryBudget {
            required_mb,
            limit_mb,
        });
    }
    Ok(())
}

fn set_bit(bits: &mut [u64], i: u64) {
    bits[(i / 64) as usize] |= 1u64 << (i % 64);
}

fn get_bit(bits: &[u64], i: u64) -> bool {
    bits[(i / 64) as usize] >> (i % 64) & 1 == 1
}

/// Count of set bits with index in [from, to].
fn count_bits_range(bits: &[u64], from: u64, to: u64) -> u64 {
    (from..=to).map(|i| get_bit(bits, i) as u64).sum()
}

/// Bitset over 0..=x marking representable integers, by enumerating all
/// pairs a <= b with a^2 + b^2 <= x. Bit 0 is left clear.
pub fn representable_bitset_mark(x: u64, limit_mb: u64) -> Result<Vec<u64>> {
    check_limit(x)?;
    check_memory((x / 8) + 64, limit_mb)?;
    let mut bits = vec![0u64; (x / 64 + 1) as usize];
    let mut a = 0u64;
    while a * a <= x {
        let a2 = a * a;
        let mut b = a;
        while a2 + b * b <= x {
            set_bit(&mut bits, a2 + b * b);
            b += 1;
        }
        a += 1;
    }
    bits[0] &= !1u64;
    Ok(bits)
}

/// Bitset over 0..=x marking representable integers, by factoring every
/// n through a smallest-prime-factor table and testing the exponent
/// parity of primes p = 3 (mod 4). An independent logic path from the
/// mark sieve.
pub fn representable_bitset_factor(x: u64, limit_mb: u64) -> Result<Vec<u64>> {
    check_limit(x)?;
    check_memory(4 * (x + 1) + (x / 8) + 64, limit_mb)?;
    let n = (x + 1) as usize;
    let mut spf = vec![0u32; n];
    let mut i = 2usize;
    while i < n {
        if spf[i] == 0 {
            let mut j = i;
            while j < n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        i += 1;
    }
    let mut bits = vec![0u64; (x / 64 + 1) as usize];
    for n0 in 1..=x {
        let mut m = n0 as usize;
        let mut ok = true;
        while m > 1 {
            let p = spf[m] as usize;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if p % 4 == 3 && e % 2 == 1 {
                ok = false;
                break;
            }
        }
        if ok {
            set_bit(&mut bits, n0);
        }
    }
    Ok(bits)
}

pub fn b_count_mark_limited(x: u64, limit_mb: u64) -> Result<BCountResult> {
    let bits = representable_bitset_mark(x, limit_mb)?;
    Ok(BCountResult {
        x,
        count: count_bits_range(&bits, 1, x),
        method: CountMethod::MarkSieve,
    })
}

pub fn b_count_mark(x: u64) -> Result<BCountResult> {
    b_count_mark_limited(x, DEFAULT_MEMORY_LIMIT_MB)
}

pub fn b_count_factor_limited(x: u64, limit_mb: u64) -> Result<BCountResult> {
    let bits = representable_bitset_factor(x, limit_mb)?;
    Ok(BCountResult {
        x,
        count: count_bits_range(&bits, 1, x),
        method: CountMethod::FactorSieve,
    })
}

pub fn b_count_factor(x: u64) -> Result<BCountResult> {
    b_count_factor_limited(x, DEFAULT_MEMORY_LIMIT_MB)
}

/// B(x) sqrt(log x) / x, the quantity that tends to K.
pub fn landau_ratio(x: u64, precision_bits: u32) -> Result<BigFloat> {
    check_precision(precision_bits)?;
    if x < 2 {
        return Err(Error::InvalidInput(format!("x must be at least 2, got {x}")));
    }
    let count = b_count_mark(x)?.count;
    let xf = BigFloat::from_u64(x, precision_bits);
    let cf = BigFloat::from_u64(count, precision_bits);
    Ok(&(&cf * &xf.ln().sqrt()) / &xf)
}

/// Count of representable integers in (a, x] compared against
/// K * integral(a, x) of dt/sqrt(log t); theta is their difference.
pub fn theta_remainder_limited(
    a: u64,
    x: u64,
    precision_bits: u32,
    config: &QuadratureConfig,
    limit_mb: u64,
) -> Result<ThetaResult> {
    check_precision(precision_bits)?;
    if a < 2 {
        return Err(Error::QuadratureLowerLimit(a.to_string()));
    }
    if a >= x {
        return Err(Error::InvalidInterval {
            lower: a.to_string(),
            upper: x.to_string(),
        });
    }
    let bits = representable_bitset_mark(x, limit_mb)?;
    let range_count = count_bits_range(&bits, a + 1, x);
    let integral_value = integral_sqrt_log(
        &BigFloat::from_u64(a, precision_bits),
        &BigFloat::from_u64(x, precision_bits),
        config,
    )?;
    let k_times_integral = &k_reference(precision_bits) * &integral_value;
    let theta = &BigFloat::from_u64(range_count, precision_bits) - &k_times_integral;
    Ok(ThetaResult {
        a,
        x,
        range_count,
        integral_value,
        k_times_integral,
        theta,
    })
}

pub fn theta_remainder(
    a: u64,
    x: u64,
    precision_bits: u32,
    config: &QuadratureConfig,
) -> Result<ThetaResult> {
    theta_remainder_limited(a, x, precision_bits, config, DEFAULT_MEMORY_LIMIT_MB)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_small_values() {
        // 1, 2, 4, 5, 8, 9, 10 are the representable n <= 10
        let expected = [1u64, 2, 4, 5, 8, 9, 10];
        for n in 1..=10u64 {
            assert_eq!(
                is_sum_two_squares(n),
                expected.contains(&n),
                "n = {n}"
            );
        }
        assert!(!is_sum_two_squares(3));
        assert!(!is_sum_two_squares(7));
        assert!(is_sum_two_squares(25));
        assert!(!is_sum_two_squares(21)); // 3 * 7
        assert!(is_sum_two_squares(9 * 2)); // 3^2 * 2
    }

    #[test]
    fn counts_small_examples() {
        assert_eq!(b_count_mark(10).unwrap().count, 7);
        assert_eq!(b_count_factor(10).unwrap().count, 7);
        assert_eq!(b_count_mark(1).unwrap().count, 1);
        assert_eq!(b_count_mark(2).unwrap().count, 2);
        assert_eq!(b_count_factor(2).unwrap().count, 2);
    }

    #[test]
    fn methods_agree_at_a_thousand() {
        let m = b_count_mark(1000).unwrap();
        let f = b_count_factor(1000).unwrap();
        assert_eq!(m.count, f.count);
    }

    #[test]
    fn memory_budget_enforced() {
        assert!(matches!(
            b_count_factor_limited(50_000_000, 10),
            Err(Error::MemoryBudget { .. })
        ));
        assert!(matches!(
            b_count_mark_limited(50_000_000, 1),
            Err(Error::MemoryBudget { .. })
        ));
    }

    #[test]
    fn limit_validation() {
        assert!(b_count_mark(0).is_err());
        assert!(b_count_mark(MAX_COUNT_LIMIT + 1).is_err());
    }

    #[test]
    fn landau_ratio_at_two() {
        // B(2) = 2, so the ratio is sqrt(ln 2)
        let r = landau_ratio(2, 96).unwrap();
        let expected = BigFloat::from_u64(2, 96).ln().sqrt();
        assert_eq!(r, expected);
        assert!(landau_ratio(1, 96).is_err());
    }

    #[test]
    fn theta_empty_range() {
        // 6 and 7 are both non-representable: count over (6, 7] is zero
        let cfg = QuadratureConfig::default_at(96);
        let t = theta_remainder(6, 7, 96, &cfg).unwrap();
        assert_eq!(t.range_count, 0);
        assert!(t.theta.is_negative());
        assert!(theta_remainder(1, 10, 96, &cfg).is_err());
        assert!(theta_remainder(10, 10, 96, &cfg).is_err());
    }
}

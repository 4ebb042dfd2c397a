//! The Landau-Ramanujan constant K through its Euler product over
//! primes p = 3 (mod 4), convergence reporting against the 20-digit
//! reference, and truncated Euler products over all primes with their
//! zeta closed-form limits.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::bigfloat::{check_precision, BigFloat};
use crate::error::{Error, Result};
use crate::primes::first_primes_in_class;
use crate::rational::exact_sqrt;

const GUARD_BITS: u32 = 32;

/// Reference value of K to 20 decimal digits.
pub const K_REFERENCE_DECIMAL: &str = "0.76422365358922066299";

/// The reference, correctly rounded at the requested precision.
/// Comparisons beyond these 20 digits are out of scope.
pub fn k_reference(precision_bits: u32) -> BigFloat {
    let numer = BigInt::from(76422365358922066299u128);
    let denom = BigInt::from(10u32).pow(20);
    BigFloat::from_rational(&BigRational::new(numer, denom), precision_bits)
}

/// Truncation of K = 1/sqrt(2 prod (1 - p^-2)) after `num_primes`
/// primes p = 3 (mod 4), taken ascending with one square root total.
///
/// The radicand is accumulated exactly as an integer fraction. When a
/// short prefix makes it a perfect rational square the value converts
/// with a single rounding, so the 1-prime partial is exactly 3/4 and
/// the 4-prime partial is exactly the rounded 1463/1920.
pub fn landau_ramanujan_partial(num_primes: usize, precision_bits: u32) -> Result<BigFloat> {
    check_precision(precision_bits)?;
    if num_primes == 0 {
        return Err(Error::InvalidInput("num_primes must be at least 1".into()));
    }
    let primes = first_primes_in_class(num_primes, 4, 3)?;
    // radicand = numer/denom = 2 prod (p^2 - 1) / prod p^2, unreduced
    let mut numer = BigUint::from(2u32);
    let mut denom = BigUint::one();
    for p in primes {
        let p2 = BigUint::from(p) * BigUint::from(p);
        numer *= &p2 - BigUint::one();
        denom *= p2;
    }
    // K_n = sqrt(denom/numer); reduction is only affordable for short prefixes
    if num_primes <= 64 {
        let q = BigRational::new(BigInt::from(denom.clone()), BigInt::from(numer.clone()));
        if let Some(root) = exact_sqrt(&q)? {
            return Ok(BigFloat::from_rational(&root, precision_bits));
        }
    }
    let wp = precision_bits + GUARD_BITS;
    let radicand = BigFloat::from_ratio(&numer, &denom, wp);
    Ok(radicand.sqrt().recip().with_precision(precision_bits))
}

/// Largest d with abs_error < 0.5 * 10^-d (capped at 64).
fn correct_decimals(abs_error: &BigFloat) -> u32 {
    if abs_error.is_zero() {
        return 64;
    }
    let err = abs_error.to_rational();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut d = 0u32;
    while d < 64 {
        let scaled = &err * BigRational::from_integer(BigInt::from(10u32).pow(d + 1));
        if scaled >= half {
            break;
        }
        d += 1;
    }
    d
}

#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub num_primes: usize,
    pub partial_value: BigFloat,
    pub abs_error: BigFloat,
    pub correct_decimals: u32,
}

/// Partial values of K against the reference, one row per checkpoint.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    pub reference: BigFloat,
}

pub fn k_convergence_report(
    checkpoints: &[usize],
    precision_bits: u32,
) -> Result<ConvergenceReport> {
    check_precision(precision_bits)?;
    if checkpoints.is_empty() {
        return Err(Error::InvalidInput("no checkpoints given".into()));
    }
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "checkpoints must be strictly ascending".into(),
        ));
    }
    if checkpoints[0] == 0 {
        return Err(Error::InvalidInput("checkpoints must be at least 1".into()));
    }
    let reference = k_reference(precision_bits);
    let mut rows = Vec::with_capacity(checkpoints.len());
    for &num_primes in checkpoints {
        let partial_value = landau_ramanujan_partial(num_primes, precision_bits)?;
        let abs_error = (&partial_value - &reference).abs();
        let correct = correct_decimals(&abs_error);
        rows.push(ConvergenceRow {
            num_primes,
            partial_value,
            abs_error,
            correct_decimals: correct,
        });
    }
    Ok(ConvergenceReport { rows, reference })
}

/// Checks the regrouping of 1/K into the four-prime head factor
/// sqrt(2 (1-1/9)(1-1/49)(1-1/121)(1-1/361)) = 1920/1463 times the tail
/// sqrt(prod over the next primes of (1 - p^-2)): the product of the
/// two must match 1 / K_(4+tail) to within 2^(16-precision).
pub fn reciprocal_k_expansion_check(
    num_head_primes: usize,
    num_tail_primes: usize,
    precision_bits: u32,
) -> Result<bool> {
    check_precision(precision_bits)?;
    if num_head_primes != 4 {
        return Err(Error::InvalidInput(
            "the head factor is fixed at 4 primes".into(),
        ));
    }
    let wp = precision_bits + GUARD_BITS;
    let total = num_head_primes + num_tail_primes;
    let primes = first_primes_in_class(total, 4, 3)?;

    let one = BigRational::one();
    let mut head_radicand = BigRational::from_integer(2.into());
    for &p in &primes[..4] {
        let p2 = BigRational::from_integer(BigInt::from(p) * BigInt::from(p));
        head_radicand *= &one - p2.recip();
    }
    let head = match exact_sqrt(&head_radicand)? {
        Some(root) => BigFloat::from_rational(&root, wp),
        None => BigFloat::from_rational(&head_radicand, wp).sqrt(),
    };

    let mut tail_product = BigFloat::one(wp);
    for &p in &primes[4..] {
        let p2 = BigUint::from(p) * BigUint::from(p);
        let factor = BigFloat::from_ratio(&(&p2 - BigUint::one()), &p2, wp);
        tail_product = &tail_product * &factor;
    }
    let lhs = &head * &tail_product.sqrt();
    let rhs = landau_ramanujan_partial(total, precision_bits)?
        .with_precision(wp)
        .recip();
    let tolerance = BigFloat::pow2(16 - precision_bits as i64, precision_bits);
    Ok((&lhs - &rhs).abs() <= tolerance)
}

/// The three Euler-product shapes compared against zeta closed forms:
/// prod (1 - p^-2s) -> 1/zeta(2s), prod (p^s+1)/(p^s-1) -> zeta^2(s)/zeta(2s),
/// prod (1 + p^-s) -> zeta(s)/zeta(2s).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    /// prod (1 - 1/p^(2s))
    OneMinus,
    /// prod (p^s + 1)/(p^s - 1)
    Ratio,
    /// prod (1 + 1/p^s)
    OnePlus,
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductKind::OneMinus => "one_minus",
            ProductKind::Ratio => "ratio",
            ProductKind::OnePlus => "one_plus",
        })
    }
}

fn require_s_above_one(s: &BigFloat) -> Result<()> {
    if *s <= BigFloat::one(s.precision()) {
        return Err(Error::ZetaDomain(s.to_decimal(8)));
    }
    Ok(())
}

fn euler_partial_at(
    s: &BigFloat,
    num_primes: usize,
    kind: ProductKind,
    wp: u32,
) -> Result<BigFloat> {
    let primes = first_primes_in_class(num_primes, 1, 0)?;
    let s_int: Option<u32> = {
        let r = s.to_rational();
        if r.is_integer() {
            r.to_integer().try_into().ok().filter(|&v: &u32| v <= 4096)
        } else {
            None
        }
    };
    let sw = s.with_precision(wp);
    let one = BigFloat::one(wp);
    let mut acc = BigFloat::one(wp);
    for p in primes {
        let factor = match s_int {
            Some(e) => {
                let ps = BigUint::from(p).pow(e);
                let (numer, denom) = match kind {
                    ProductKind::OneMinus => {
                        let p2s = &ps * &ps;
                        (&p2s - BigUint::one(), p2s)
                    }
                    ProductKind::Ratio => (&ps + BigUint::one(), &ps - BigUint::one()),
                    ProductKind::OnePlus => (&ps + BigUint::one(), ps),
                };
                BigFloat::from_ratio(&numer, &denom, wp)
            }
            None => {
                let ln_p = BigFloat::from_u64(p, wp).ln();
                let ps = (&sw * &ln_p).exp();
                match kind {
                    ProductKind::OneMinus => &one - &(&ps * &ps).recip(),
                    ProductKind::Ratio => &(&ps + &one) / &(&ps - &one),
                    ProductKind::OnePlus => &one + &ps.recip(),
                }
            }
        };
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// Partial product over the first `num_primes` primes, ascending.
pub fn euler_product_partial(
    s: &BigFloat,
    num_primes: usize,
    kind: ProductKind,
    precision_bits: u32,
) -> Result<BigFloat> {
    check_precision(precision_bits)?;
    require_s_above_one(s)?;
    if num_primes == 0 {
        return Err(Error::InvalidInput("num_primes must be at least 1".into()));
    }
    let wp = precision_bits + GUARD_BITS;
    Ok(euler_partial_at(s, num_primes, kind, wp)?.with_precision(precision_bits))
}

/// The finite-truncation identity behind the Euler-product limits:
/// sqrt(Ratio_n * OneMinus_n) = OnePlus_n holds at every truncation, so
/// the returned absolute difference must stay below 2^(16-precision).
pub fn lemma1_limit_check(
    s: &BigFloat,
    num_primes: usize,
    precision_bits: u32,
) -> Result<BigFloat> {
    check_precision(precision_bits)?;
    require_s_above_one(s)?;
    if num_primes == 0 {
        return Err(Error::InvalidInput("num_primes must be at least 1".into()));
    }
    let wp = precision_bits + GUARD_BITS;
    let ratio = euler_partial_at(s, num_primes, ProductKind::Ratio, wp)?;
    let one_minus = euler_partial_at(s, num_primes, ProductKind::OneMinus, wp)?;
    let one_plus = euler_partial_at(s, num_primes, ProductKind::OnePlus, wp)?;
    let diff = (&(&ratio * &one_minus).sqrt() - &one_plus).abs();
    Ok(diff.with_precision(precision_bits))
}

//! Multiprecision special functions: log-gamma by the shifted Stirling
//! series, Riemann zeta for real s > 1 by Euler-Maclaurin summation, the
//! four-term gamma ratio used by the telescoping closed form, and
//! adaptive Simpson quadrature for the integral of 1/sqrt(log t).

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bigfloat::{check_precision, half_ln_two_pi, BigFloat};
use crate::error::{Error, Result};
use crate::rational::int;

const GUARD_BITS: u32 = 32;
const BERNOULLI_MAX_INDEX: usize = 128;

/// Bernoulli numbers B_0..=B_128 (B_1 = -1/2 convention), computed once
/// from the defining recurrence sum(C(m+1, j) B_j, j=0..m) = 0.
pub fn bernoulli_numbers() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let count = BERNOULLI_MAX_INDEX + 1;
        let mut b: Vec<BigRational> = Vec::with_capacity(count);
        b.push(BigRational::one());
        for m in 1..count {
            // binomial C(m+1, j) built incrementally
            let mut binom = BigInt::one();
            let mut sum = BigRational::zero();
            for (j, bj) in b.iter().enumerate() {
                sum += bj * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m as u64 + 1 - j as u64)
                    / BigInt::from(j as u64 + 1);
            }
            let m1 = BigRational::from_integer(BigInt::from(m as u64 + 1));
            b.push(-sum / m1);
        }
        b
    })
}

/// B_{2k} for 2k <= 128.
pub fn bernoulli(index: usize) -> &'static BigRational {
    &bernoulli_numbers()[index]
}

/// Natural log of the gamma function for x > 0.
///
/// The argument is shifted upward with Gamma(t+1) = t Gamma(t) until it
/// reaches 10 + precision_bits/8, where the Stirling series converges
/// below the target error; absolute error is at most 2^(8-precision).
pub fn lngamma(x: &BigFloat, precision_bits: u32) -> Result<BigFloat> {
    check_precision(precision_bits)?;
    if !x.is_positive() {
        return Err(Error::NonpositiveGammaArgument(x.to_decimal(8)));
    }
    Ok(lngamma_unchecked(x, precision_bits))
}

fn lngamma_unchecked(x: &BigFloat, precision_bits: u32) -> BigFloat {
    let wp = precision_bits + GUARD_BITS;
    let threshold = BigFloat::from_u64(10 + precision_bits as u64 / 8, wp);
    let one = BigFloat::one(wp);

    // shift x upward, collecting the product of passed-over arguments
    let mut xs = x.with_precision(wp);
    let mut shift_product = BigFloat::one(wp);
    let mut shifted = false;
    while xs < threshold {
        shift_product = &shift_product * &xs;
        xs = &xs + &one;
        shifted = true;
    }

    let ln_xs = xs.ln();
    let half = BigFloat::pow2(-1, wp);
    let mut acc = &(&(&xs - &half) * &ln_xs) - &xs;
    acc = &acc + &half_ln_two_pi(wp);

    // Stirling series sum B_2k / (2k (2k-1) x^(2k-1))
    let inv = xs.recip();
    let inv2 = &inv * &inv;
    let mut pw = inv;
    let mut prev_mag = i64::MAX;
    for k in 1..=BERNOULLI_MAX_INDEX / 2 {
        let coeff = bernoulli(2 * k) / int((2 * k as i64) * (2 * k as i64 - 1));
        let term = &BigFloat::from_rational(&coeff, wp) * &pw;
        if term.is_zero() {
            break;
        }
        let mag = term.floor_log2();
        if mag >= prev_mag {
            // asymptotic series started diverging; the minimum term is
            // already below the target at the shift threshold
            break;
        }
        acc = &acc + &term;
        if mag < -(wp as i64 + 4) {
            break;
        }
        prev_mag = mag;
        pw = &pw * &inv2;
    }

    if shifted {
        acc = &acc - &shift_product.ln();
    }
    acc.with_precision(precision_bits)
}

/// The ratio Gamma(m + (v-1)/u) Gamma(n+1 + (v+1)/u)
///         / (Gamma(m + (v+1)/u) Gamma(n+1 + (v-1)/u))
/// evaluated through log-gamma in floating point. All four arguments
/// must be positive.
pub fn gamma_ratio_float(
    u: &BigRational,
    v: &BigRational,
    m: i64,
    n: i64,
    precision_bits: u32,
) -> Result<BigFloat> {
    check_precision(precision_bits)?;
    if u.is_zero() {
        return Err(Error::DegenerateForm);
    }
    if !(1 <= m && m <= n) {
        return Err(Error::InvalidBounds { m, n, min_m: 1 });
    }
    let lo = (v - BigRational::one()) / u;
    let hi = (v + BigRational::one()) / u;
    let args = [
        &int(m) + &lo,
        &int(n + 1) + &hi,
        &int(m) + &hi,
        &int(n + 1) + &lo,
    ];
    for a in &args {
        if !a.is_positive() {
            return Err(Error::NonpositiveGammaArgument(a.to_string()));
        }
    }
    let wp = precision_bits + GUARD_BITS;
    let lg = |q: &BigRational| lngamma_unchecked(&BigFloat::from_rational(q, wp), wp);
    let log_ratio = &(&lg(&args[0]) + &lg(&args[1])) - &(&lg(&args[2]) + &lg(&args[3]));
    Ok(log_ratio.exp().with_precision(precision_bits))
}

/// Riemann zeta for real s > 1 by direct summation with Euler-Maclaurin
/// tail correction. Absolute error is at most 2^(16-precision).
pub fn zeta(s: &BigFloat, precision_bits: u32) -> Result<BigFloat> {
    check_precision(precision_bits)?;
    let one_at_s = BigFloat::one(s.precision());
    if *s <= one_at_s {
        return Err(Error::ZetaDomain(s.to_decimal(8)));
    }
    let wp = precision_bits + GUARD_BITS;
    let s = s.with_precision(wp);

    // B_16 suffices at the default 128 bits; higher precision takes more
    // correction terms so the direct sum stays short.
    let terms = (8usize).max(precision_bits.div_ceil(16) as usize);
    let n_bits = (precision_bits + 32).div_ceil(2 * terms as u32);
    let n = 1u64 << n_bits;

    // integer exponents keep every power exact
    let s_int = {
        let r = s.to_rational();
        if r.is_integer() {
            r.to_integer().try_into().ok().filter(|&v: &u32| v <= 4096)
        } else {
            None
        }
    };
    let pow_neg_s = |k: u64| -> BigFloat {
        match s_int {
            Some(e) => {
                let p = BigUint::from(k).pow(e);
                BigFloat::from_ratio(&BigUint::one(), &p, wp)
            }
            None => {
                let ln_k = BigFloat::from_u64(k, wp).ln();
                (-(&s * &ln_k)).exp()
            }
        }
    };

    let mut acc = BigFloat::zero(wp);
    for k in (2..=n).rev() {
        acc = &acc + &pow_neg_s(k);
    }
    acc = &acc + &BigFloat::one(wp);

    let n_f = BigFloat::from_u64(n, wp);
    let n_neg_s = pow_neg_s(n);
    let s_minus_1 = &s - &BigFloat::one(wp);
    // tail integral N^(1-s)/(s-1) and midpoint -N^(-s)/2
    acc = &acc + &(&(&n_neg_s * &n_f) / &s_minus_1);
    acc = &acc - &n_neg_s.mul_pow2(-1);

    // sum over k of B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
    let inv_n2 = (&n_f * &n_f).recip();
    let mut pw = &n_neg_s / &n_f;
    let mut rising = s.clone();
    let mut factorial = BigUint::from(2u32);
    for k in 1..=terms {
        let coeff = bernoulli(2 * k) / BigRational::from_integer(factorial.clone().into());
        let term = &(&BigFloat::from_rational(&coeff, wp) * &rising) * &pw;
        acc = &acc + &term;
        if k < terms {
            pw = &pw * &inv_n2;
            let a = &s + &BigFloat::from_u64(2 * k as u64 - 1, wp);
            let b = &s + &BigFloat::from_u64(2 * k as u64, wp);
            rising = &(&rising * &a) * &b;
            factorial *= BigUint::from((2 * k as u64 + 1) * (2 * k as u64 + 2));
        }
    }
    Ok(acc.with_precision(precision_bits))
}

/// Adaptive Simpson quadrature controls.
#[derive(Clone, Debug)]
pub struct QuadratureConfig {
    pub abs_tolerance: BigFloat,
    pub max_depth: u32,
}

impl QuadratureConfig {
    pub fn new(abs_tolerance: BigFloat, max_depth: u32) -> Result<Self> {
        if !abs_tolerance.is_positive() {
            return Err(Error::InvalidInput(
                "quadrature tolerance must be positive".into(),
            ));
        }
        if max_depth == 0 {
            return Err(Error::InvalidInput(
                "quadrature depth must be at least 1".into(),
            ));
        }
        Ok(QuadratureConfig {
            abs_tolerance,
            max_depth,
        })
    }

    /// Default tolerance 10^-12 with depth 60.
    pub fn default_at(precision_bits: u32) -> Self {
        let tol = BigFloat::from_rational(
            &BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12)),
            precision_bits,
        );
        QuadratureConfig {
            abs_tolerance: tol,
            max_depth: 60,
        }
    }
}

fn inv_sqrt_log(t: &BigFloat) -> BigFloat {
    t.ln().sqrt().recip()
}

fn simpson(a: &BigFloat, b: &BigFloat, fa: &BigFloat, fm: &BigFloat, fb: &BigFloat) -> BigFloat {
    let four = BigFloat::from_u64(4, fm.precision());
    let six = BigFloat::from_u64(6, fm.precision());
    let sum = &(fa + &(&four * fm)) + fb;
    &(&sum * &(b - a)) / &six
}

#[allow(clippy::too_many_arguments)]
fn adapt(
    a: BigFloat,
    m: BigFloat,
    b: BigFloat,
    fa: BigFloat,
    fm: BigFloat,
    fb: BigFloat,
    whole: BigFloat,
    tol: BigFloat,
    depth: u32,
) -> BigFloat {
    let lm = (&a + &m).mul_pow2(-1);
    let rm = (&m + &b).mul_pow2(-1);
    let flm = inv_sqrt_log(&lm);
    let frm = inv_sqrt_log(&rm);
    let left = simpson(&a, &m, &fa, &flm, &fm);
    let right = simpson(&m, &b, &fm, &frm, &fb);
    let delta = &(&left + &right) - &whole;
    let fifteen = BigFloat::from_u64(15, tol.precision());
    if depth == 0 || delta.abs() <= &fifteen * &tol {
        return &(&left + &right) + &(&delta / &fifteen);
    }
    let half_tol = tol.mul_pow2(-1);
    let l = adapt(a, lm, m.clone(), fa, flm, fm.clone(), left, half_tol.clone(), depth - 1);
    let r = adapt(m, rm, b, fm, frm, fb, right, half_tol, depth - 1);
    &l + &r
}

/// Integral of dt / sqrt(log t) over [a, x] by adaptive Simpson
/// subdivision with Richardson error estimation. Requires a > 1 since
/// the integrand blows up at t = 1.
pub fn integral_sqrt_log(a: &BigFloat, x: &BigFloat, config: &QuadratureConfig) -> Result<BigFloat> {
    let precision = a.precision().max(x.precision());
    let one = BigFloat::one(precision);
    if *a <= one {
        return Err(Error::QuadratureLowerLimit(a.to_decimal(8)));
    }
    if a > x {
        return Err(Error::InvalidInterval {
            lower: a.to_decimal(8),
            upper: x.to_decimal(8),
        });
    }
    if a == x {
        return Ok(BigFloat::zero(precision));
    }
    let wp = precision + 16;
    let aw = a.with_precision(wp);
    let xw = x.with_precision(wp);
    let mid = (&aw + &xw).mul_pow2(-1);
    let fa = inv_sqrt_log(&aw);
    let fm = inv_sqrt_log(&mid);
    let fb = inv_sqrt_log(&xw);
    let whole = simpson(&aw, &xw, &fa, &fm, &fb);
    let tol = config.abs_tolerance.with_precision(wp);
    let result = adapt(aw, mid, xw, fa, fm, fb, whole, tol, config.max_depth);
    Ok(result.with_precision(precision))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::pi;
    use crate::rational::{parse_decimal, rat};

    fn tol2(bits: i64) -> BigFloat {
        BigFloat::pow2(bits, 192)
    }

    #[test]
    fn bernoulli_table_known_values() {
        assert_eq!(bernoulli(0), &int(1));
        assert_eq!(bernoulli(1), &rat(-1, 2));
        assert_eq!(bernoulli(2), &rat(1, 6));
        assert_eq!(bernoulli(4), &rat(-1, 30));
        assert_eq!(bernoulli(12), &rat(-691, 2730));
        assert_eq!(bernoulli(16), &rat(-3617, 510));
        assert!(bernoulli(7).is_zero());
    }

    #[test]
    fn lngamma_at_integers() {
        let one = BigFloat::one(128);
        let g1 = lngamma(&one, 128).unwrap();
        assert!(g1.is_zero() || g1.abs() < tol2(-120));
        // Gamma(5) = 24
        let g5 = lngamma(&BigFloat::from_u64(5, 128), 128).unwrap();
        let ln24 = BigFloat::from_u64(24, 128).ln();
        assert!((&g5 - &ln24).abs() < tol2(-118));
    }

    #[test]
    fn lngamma_at_half() {
        // Gamma(1/2) = sqrt(pi)
        let half = BigFloat::from_rational(&rat(1, 2), 128);
        let g = lngamma(&half, 128).unwrap();
        let expected = pi(128).ln().mul_pow2(-1);
        assert!((&g - &expected).abs() < tol2(-118));
    }

    #[test]
    fn lngamma_rejects_nonpositive() {
        assert!(lngamma(&BigFloat::zero(64), 64).is_err());
        assert!(lngamma(&BigFloat::from_i64(-3, 64), 64).is_err());
    }

    #[test]
    fn gamma_ratio_matches_small_products() {
        // (1,0,2,4): product (k+1)/(k-1) for k=2..4 = (3/1)(4/2)(5/3) = 10
        let r = gamma_ratio_float(&int(1), &int(0), 2, 4, 128).unwrap();
        assert!((&r - &BigFloat::from_u64(10, 128)).abs() < tol2(-100));
        // (2,1,1,3): (4/2)(6/4)(8/6) = 4
        let r = gamma_ratio_float(&int(2), &int(1), 1, 3, 128).unwrap();
        assert!((&r - &BigFloat::from_u64(4, 128)).abs() < tol2(-100));
        // (2,0,1,1): single factor (2+1)/(2-1) = 3
        let r = gamma_ratio_float(&int(2), &int(0), 1, 1, 128).unwrap();
        assert!((&r - &BigFloat::from_u64(3, 128)).abs() < tol2(-100));
        // negative slope: (-2,0,1,3) = 1/7 with all arguments positive
        let r = gamma_ratio_float(&int(-2), &int(0), 1, 3, 128).unwrap();
        let expected = BigFloat::from_rational(&rat(1, 7), 128);
        assert!((&r - &expected).abs() < tol2(-100));
    }

    #[test]
    fn gamma_ratio_rejects_bad_arguments() {
        // u=1, v=-3, m=1: argument m+(v-1)/u = -3 < 0
        assert!(gamma_ratio_float(&int(1), &int(-3), 1, 2, 128).is_err());
        assert!(gamma_ratio_float(&int(1), &int(0), 3, 2, 128).is_err());
        assert!(gamma_ratio_float(&int(0), &int(1), 1, 2, 128).is_err());
    }

    #[test]
    fn zeta_reference_values() {
        let two = BigFloat::from_u64(2, 128);
        let z2 = zeta(&two, 128).unwrap();
        let pi2_6 = &(&pi(128) * &pi(128)) / &BigFloat::from_u64(6, 128);
        assert!((&z2 - &pi2_6).abs() < tol2(-110));

        let four = BigFloat::from_u64(4, 128);
        let z4 = zeta(&four, 128).unwrap();
        let pi4 = pi(160).pow_i64(4).with_precision(128);
        let pi4_90 = &pi4 / &BigFloat::from_u64(90, 128);
        assert!((&z4 - &pi4_90).abs() < tol2(-110));

        // zeta(2)^2 / zeta(4) = 5/2 within 1e-20
        let ratio = &(&z2 * &z2) / &z4;
        let five_halves = BigFloat::from_rational(&rat(5, 2), 128);
        let tol = BigFloat::from_rational(&parse_decimal("1e-20").unwrap(), 128);
        assert!((&ratio - &five_halves).abs() < tol);
    }

    #[test]
    fn zeta_noninteger_argument() {
        // zeta(3/2) = 2.61237534868548834334856756792407...
        let s = BigFloat::from_rational(&rat(3, 2), 128);
        let z = zeta(&s, 128).unwrap();
        let reference = BigFloat::from_rational(
            &parse_decimal("2.612375348685488343348567567924077").unwrap(),
            128,
        );
        assert!((&z - &reference).abs() < tol2(-100));
    }

    #[test]
    fn zeta_monotone_decreasing() {
        let samples = ["1.5", "2", "3", "10", "30"];
        let mut prev: Option<BigFloat> = None;
        for s in samples {
            let sf = BigFloat::from_rational(&parse_decimal(s).unwrap(), 96);
            let z = zeta(&sf, 96).unwrap();
            if let Some(p) = prev {
                assert!(z < p, "zeta must decrease at s = {s}");
            }
            prev = Some(z);
        }
    }

    #[test]
    fn zeta_domain_errors() {
        assert!(zeta(&BigFloat::one(64), 64).is_err());
        assert!(zeta(&BigFloat::from_rational(&rat(1, 2), 64), 64).is_err());
    }

    #[test]
    fn quadrature_degenerate_and_domain() {
        let cfg = QuadratureConfig::default_at(96);
        let two = BigFloat::from_u64(2, 96);
        assert!(integral_sqrt_log(&two, &two, &cfg).unwrap().is_zero());
        assert!(integral_sqrt_log(&BigFloat::one(96), &two, &cfg).is_err());
        assert!(integral_sqrt_log(&two, &BigFloat::one(96), &cfg).is_err());
    }

    #[test]
    fn quadrature_monotone_bracket() {
        // integrand is decreasing, so (x-a)/sqrt(log x) < I < (x-a)/sqrt(log a)
        let cfg = QuadratureConfig::default_at(96);
        let a = BigFloat::from_u64(2, 96);
        let x = BigFloat::from_u64(1_000_000, 96);
        let i = integral_sqrt_log(&a, &x, &cfg).unwrap();
        let span = &x - &a;
        let lo = &span / &x.ln().sqrt();
        let hi = &span / &a.ln().sqrt();
        assert!(lo < i && i < hi);
    }

    #[test]
    fn quadrature_additivity() {
        let tol = BigFloat::from_rational(&parse_decimal("1e-10").unwrap(), 96);
        let cfg = QuadratureConfig::new(tol.clone(), 60).unwrap();
        let a = BigFloat::from_u64(2, 96);
        let b = BigFloat::from_u64(5, 96);
        let c = BigFloat::from_u64(10, 96);
        let ab = integral_sqrt_log(&a, &b, &cfg).unwrap();
        let bc = integral_sqrt_log(&b, &c, &cfg).unwrap();
        let ac = integral_sqrt_log(&a, &c, &cfg).unwrap();
        let err = (&(&ab + &bc) - &ac).abs();
        assert!(err <= tol.mul_pow2(1));
    }
}

//! Arbitrary-precision binary floating point.
//!
//! A value is `mantissa * 2^exponent` where a nonzero mantissa always
//! carries exactly `precision` significant bits. Field operations and
//! square root round to nearest, ties to even, at the stated precision.
//! `ln` and `exp` run with 32 guard bits internally and return a result
//! within a few ulp of the true value.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const MIN_PRECISION_BITS: u32 = 16;
pub const MAX_PRECISION_BITS: u32 = 256;

const GUARD_BITS: u32 = 32;

pub fn check_precision(bits: u32) -> Result<()> {
    if (MIN_PRECISION_BITS..=MAX_PRECISION_BITS).contains(&bits) {
        Ok(())
    } else {
        Err(Error::PrecisionRange {
            bits,
            min: MIN_PRECISION_BITS,
            max: MAX_PRECISION_BITS,
        })
    }
}

/// Significant decimal digits that are fully determined by `precision_bits`
/// binary digits, minus a safety margin of two.
pub fn default_sig_digits(precision_bits: u32) -> u32 {
    let digits = (precision_bits as f64 * std::f64::consts::LOG10_2).floor() as u32;
    digits.saturating_sub(2).max(3)
}

#[derive(Clone)]
pub struct BigFloat {
    mantissa: BigInt,
    exponent: i64,
    precision: u32,
}

impl BigFloat {
    pub fn zero(precision: u32) -> Self {
        BigFloat {
            mantissa: BigInt::zero(),
            exponent: 0,
            precision,
        }
    }

    pub fn one(precision: u32) -> Self {
        Self::from_u64(1, precision)
    }

    /// Exact power of two, `2^k`.
    pub fn pow2(k: i64, precision: u32) -> Self {
        let mantissa = BigInt::one() << (precision - 1) as usize;
        BigFloat {
            mantissa,
            exponent: k - (precision as i64 - 1),
            precision,
        }
    }

    pub fn from_u64(n: u64, precision: u32) -> Self {
        Self::from_bigint(BigInt::from(n), precision)
    }

    pub fn from_i64(n: i64, precision: u32) -> Self {
        Self::from_bigint(BigInt::from(n), precision)
    }

    pub fn from_bigint(n: BigInt, precision: u32) -> Self {
        if n.is_zero() {
            return Self::zero(precision);
        }
        let (sign, mag) = n.into_parts();
        from_parts_rounded(sign == Sign::Minus, mag, 0, precision, false)
    }

    /// Correctly rounded value of `numer / denom` for positive integers.
    pub fn from_ratio(numer: &BigUint, denom: &BigUint, precision: u32) -> Self {
        assert!(!denom.is_zero(), "from_ratio with zero denominator");
        if numer.is_zero() {
            return Self::zero(precision);
        }
        let shift = precision as u64 + 3 + denom.bits();
        let (q, r) = (numer << shift).div_rem(denom);
        from_parts_rounded(false, q, -(shift as i64), precision, !r.is_zero())
    }

    /// Correctly rounded conversion from an exact rational.
    pub fn from_rational(q: &BigRational, precision: u32) -> Self {
        let neg = q.numer().is_negative();
        let numer = q.numer().magnitude();
        let denom = q.denom().magnitude();
        let f = Self::from_ratio(numer, denom, precision);
        if neg {
            -f
        } else {
            f
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
            precision: self.precision,
        }
    }

    /// Exact scaling by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
            precision: self.precision,
        }
    }

    /// Re-round to a new precision (exact when widening).
    pub fn with_precision(&self, precision: u32) -> Self {
        if self.is_zero() {
            return Self::zero(precision);
        }
        let neg = self.is_negative();
        from_parts_rounded(
            neg,
            self.mantissa.magnitude().clone(),
            self.exponent,
            precision,
            false,
        )
    }

    /// Floor of log2 of the absolute value. Panics on zero.
    pub fn floor_log2(&self) -> i64 {
        assert!(!self.is_zero(), "floor_log2 of zero");
        self.exponent + self.mantissa.magnitude().bits() as i64 - 1
    }

    /// Exact conversion to a rational (every finite float is dyadic).
    pub fn to_rational(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << self.exponent as usize)
        } else {
            BigRational::new(
                self.mantissa.clone(),
                BigInt::one() << (-self.exponent) as usize,
            )
        }
    }

    /// Nearest integer, ties away from zero. Panics if out of i64 range.
    pub fn to_i64_nearest(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        let r = self.to_rational();
        let floor = r.floor().to_integer();
        let frac = &r - BigRational::from_integer(floor.clone());
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let rounded = if frac >= half { floor + 1 } else { floor };
        rounded.to_i64().expect("to_i64_nearest out of range")
    }

    fn cmp_value(&self, rhs: &Self) -> Ordering {
        let ls = self.mantissa.sign();
        let rs = rhs.mantissa.sign();
        if ls != rs {
            return match (ls, rs) {
                (Sign::Minus, _) => Ordering::Less,
                (Sign::Plus, _) => Ordering::Greater,
                (Sign::NoSign, Sign::Plus) => Ordering::Less,
                (Sign::NoSign, Sign::Minus) => Ordering::Greater,
                _ => Ordering::Equal,
            };
        }
        if ls == Sign::NoSign {
            return Ordering::Equal;
        }
        let mag = self.cmp_magnitude(rhs);
        if ls == Sign::Minus {
            mag.reverse()
        } else {
            mag
        }
    }

    fn cmp_magnitude(&self, rhs: &Self) -> Ordering {
        let la = self.floor_log2();
        let lb = rhs.floor_log2();
        if la != lb {
            return la.cmp(&lb);
        }
        let ma = self.mantissa.magnitude();
        let mb = rhs.mantissa.magnitude();
        let gap = self.exponent - rhs.exponent;
        if gap >= 0 {
            (ma << gap as usize).cmp(mb)
        } else {
            ma.cmp(&(mb << (-gap) as usize))
        }
    }

    fn add_signed(&self, rhs: &Self, negate_rhs: bool) -> Self {
        let precision = self.precision.max(rhs.precision);
        if rhs.is_zero() {
            return self.with_precision(precision);
        }
        let rhs_m = if negate_rhs {
            -rhs.mantissa.clone()
        } else {
            rhs.mantissa.clone()
        };
        if self.is_zero() {
            let (sign, mag) = rhs_m.into_parts();
            return from_parts_rounded(sign == Sign::Minus, mag, rhs.exponent, precision, false);
        }
        let (hi_m, hi_e, lo_m, lo_e) = if self.exponent >= rhs.exponent {
            (self.mantissa.clone(), self.exponent, rhs_m, rhs.exponent)
        } else {
            (rhs_m, rhs.exponent, self.mantissa.clone(), self.exponent)
        };
        let gap = hi_e - lo_e;
        let cap = precision as i64 + 8;
        let (sum, exp) = if gap <= cap {
            ((hi_m << gap as usize) + lo_m, lo_e)
        } else {
            // The low operand only influences the sticky bit.
            let tiny = match lo_m.sign() {
                Sign::Minus => BigInt::from(-1),
                Sign::NoSign => BigInt::zero(),
                Sign::Plus => BigInt::one(),
            };
            ((hi_m << cap as usize) + tiny, hi_e - cap)
        };
        if sum.is_zero() {
            return Self::zero(precision);
        }
        let (sign, mag) = sum.into_parts();
        from_parts_rounded(sign == Sign::Minus, mag, exp, precision, false)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative value");
        if self.is_zero() {
            return self.clone();
        }
        let precision = self.precision;
        let bits = self.mantissa.magnitude().bits() as i64;
        let mut shift = (2 * (precision as i64 + 3) - bits).max(0);
        if (self.exponent - shift) % 2 != 0 {
            shift += 1;
        }
        let exp = self.exponent - shift;
        let m = self.mantissa.magnitude() << shift as usize;
        let (root, rem) = crate::rational::isqrt_with_rem(&m);
        from_parts_rounded(false, root, exp / 2, precision, !rem.is_zero())
    }

    pub fn recip(&self) -> Self {
        Self::one(self.precision) / self.clone()
    }

    /// Integer power by repeated squaring at working precision.
    pub fn pow_i64(&self, n: i64) -> Self {
        let precision = self.precision;
        if n == 0 {
            return Self::one(precision);
        }
        let wp = precision + GUARD_BITS;
        let mut base = self.with_precision(wp);
        let mut e = n.unsigned_abs();
        let mut acc = Self::one(wp);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        if n < 0 {
            acc = acc.recip();
        }
        acc.with_precision(precision)
    }

    /// Natural logarithm. Panics on nonpositive input.
    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "ln of nonpositive value");
        let precision = self.precision;
        let wp = precision + GUARD_BITS;
        let mut k = self.floor_log2();
        // y in [1, 2)
        let mut y = self.with_precision(wp).mul_pow2(-k);
        let three_halves = BigFloat::from_rational(&BigRational::new(3.into(), 2.into()), wp);
        if y >= three_halves {
            y = y.mul_pow2(-1);
            k += 1;
        }
        // y in [0.75, 1.5); atanh series on z = (y-1)/(y+1), |z| <= 1/5
        let one = Self::one(wp);
        let z = (&y - &one) / (&y + &one);
        let mut acc = Self::zero(wp);
        if !z.is_zero() {
            let z2 = &z * &z;
            let mut p = z.clone();
            let mut j = 0u64;
            loop {
                let term = &p / &Self::from_u64(2 * j + 1, wp);
                acc = &acc + &term;
                if term.is_zero() || term.floor_log2() < -(wp as i64 + 4) {
                    break;
                }
                p = &p * &z2;
                j += 1;
            }
            acc = acc.mul_pow2(1);
        }
        let res = &acc + &(&ln2(wp) * &Self::from_i64(k, wp));
        res.with_precision(precision)
    }

    /// Exponential function.
    pub fn exp(&self) -> Self {
        let precision = self.precision;
        if self.is_zero() {
            return Self::one(precision);
        }
        let wp = precision + GUARD_BITS;
        let x = self.with_precision(wp);
        let ln2w = ln2(wp);
        let k = (&x / &ln2w).to_i64_nearest();
        let r = &x - &(&ln2w * &Self::from_i64(k, wp));
        let mut term = Self::one(wp);
        let mut acc = Self::one(wp);
        let mut i = 1u64;
        loop {
            term = &(&term * &r) / &Self::from_u64(i, wp);
            acc = &acc + &term;
            if term.is_zero() || term.floor_log2() < -(wp as i64 + 4) {
                break;
            }
            i += 1;
        }
        acc.mul_pow2(k).with_precision(precision)
    }

    /// Decimal rendering with the given number of significant digits.
    /// Rounds half away from zero on the last digit.
    pub fn to_decimal(&self, sig_digits: u32) -> String {
        let sig = sig_digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let mag = self.mantissa.magnitude().clone();
        let e = self.exponent;
        let mut d10 = (self.floor_log2() as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let lo = BigUint::from(10u32).pow(sig - 1);
        let hi = &lo * 10u32;
        for _ in 0..4 {
            let p = sig as i64 - 1 - d10;
            let mut num = mag.clone();
            let mut den = BigUint::one();
            if p >= 0 {
                num *= BigUint::from(10u32).pow(p as u32);
            } else {
                den *= BigUint::from(10u32).pow((-p) as u32);
            }
            if e >= 0 {
                num <<= e as usize;
            } else {
                den <<= (-e) as usize;
            }
            let (q, r) = num.div_rem(&den);
            let i = if &r * 2u32 >= den { q + 1u32 } else { q };
            if i < lo {
                d10 -= 1;
                continue;
            }
            if i >= hi {
                d10 += 1;
                continue;
            }
            return render_decimal(neg, &i.to_string(), d10);
        }
        unreachable!("decimal exponent estimate failed to converge");
    }

    pub fn to_decimal_default(&self) -> String {
        self.to_decimal(default_sig_digits(self.precision))
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let top = self.with_precision(53);
        let m = top.mantissa.to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(top.exponent as i32)
    }
}

/// `digits` is a plain decimal string; value = 0.digits * 10^(d10+1).
fn render_decimal(neg: bool, digits: &str, d10: i64) -> String {
    let sign = if neg { "-" } else { "" };
    let n = digits.len() as i64;
    if (-4..=n + 8).contains(&d10) {
        if d10 >= n - 1 {
            let zeros = "0".repeat((d10 - n + 1) as usize);
            format!("{sign}{digits}{zeros}")
        } else if d10 >= 0 {
            let (int_part, frac_part) = digits.split_at((d10 + 1) as usize);
            format!("{sign}{int_part}.{frac_part}")
        } else {
            let zeros = "0".repeat((-d10 - 1) as usize);
            format!("{sign}0.{zeros}{digits}")
        }
    } else {
        let (head, tail) = digits.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{d10}")
        } else {
            format!("{sign}{head}.{tail}e{d10}")
        }
    }
}

/// Round `(-1)^neg * mag * 2^exp` to `precision` bits, nearest/ties-to-even.
/// `sticky` records nonzero discarded bits below `2^exp`.
fn from_parts_rounded(neg: bool, mag: BigUint, exp: i64, precision: u32, sticky: bool) -> BigFloat {
    assert!(!mag.is_zero(), "rounding a zero magnitude");
    let bits = mag.bits() as i64;
    let drop = bits - precision as i64;
    if drop <= 0 {
        assert!(!sticky, "sticky bit with an exact short mantissa");
        let widen = (-drop) as usize;
        let mantissa = signed(neg, mag << widen);
        return BigFloat {
            mantissa,
            exponent: exp - widen as i64,
            precision,
        };
    }
    let drop = drop as u64;
    let round_bit = mag.bit(drop - 1);
    let low_nonzero = sticky
        || (drop >= 2 && {
            let mask = (BigUint::one() << (drop - 1)) - 1u32;
            !(&mag & &mask).is_zero()
        });
    let mut keep = &mag >> drop;
    let mut exp = exp + drop as i64;
    if round_bit && (low_nonzero || keep.is_odd()) {
        keep += 1u32;
        if keep.bits() as i64 > precision as i64 {
            keep >>= 1;
            exp += 1;
        }
    }
    BigFloat {
        mantissa: signed(neg, keep),
        exponent: exp,
        precision,
    }
}

fn signed(neg: bool, mag: BigUint) -> BigInt {
    let sign = if neg { Sign::Minus } else { Sign::Plus };
    BigInt::from_biguint(sign, mag)
}

impl Add for &BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: &BigFloat) -> BigFloat {
        self.add_signed(rhs, false)
    }
}

impl Sub for &BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: &BigFloat) -> BigFloat {
        self.add_signed(rhs, true)
    }
}

impl Mul for &BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: &BigFloat) -> BigFloat {
        let precision = self.precision.max(rhs.precision);
        if self.is_zero() || rhs.is_zero() {
            return BigFloat::zero(precision);
        }
        let m = &self.mantissa * &rhs.mantissa;
        let (sign, mag) = m.into_parts();
        from_parts_rounded(
            sign == Sign::Minus,
            mag,
            self.exponent + rhs.exponent,
            precision,
            false,
        )
    }
}

impl Div for &BigFloat {
    type Output = BigFloat;
    fn div(self, rhs: &BigFloat) -> BigFloat {
        assert!(!rhs.is_zero(), "division by zero");
        let precision = self.precision.max(rhs.precision);
        if self.is_zero() {
            return BigFloat::zero(precision);
        }
        let neg = self.is_negative() != rhs.is_negative();
        let db = rhs.mantissa.magnitude();
        let shift = precision as u64 + 3 + db.bits();
        let (q, r) = (self.mantissa.magnitude() << shift).div_rem(db);
        from_parts_rounded(
            neg,
            q,
            self.exponent - rhs.exponent - shift as i64,
            precision,
            !r.is_zero(),
        )
    }
}

macro_rules! forward_value_binop {
    ($Op:ident, $op:ident) => {
        impl $Op for BigFloat {
            type Output = BigFloat;
            fn $op(self, rhs: BigFloat) -> BigFloat {
                (&self).$op(&rhs)
            }
        }
        impl $Op<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $op(self, rhs: &BigFloat) -> BigFloat {
                (&self).$op(rhs)
            }
        }
        impl $Op<BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $op(self, rhs: BigFloat) -> BigFloat {
                self.$op(&rhs)
            }
        }
    };
}

forward_value_binop!(Add, add);
forward_value_binop!(Sub, sub);
forward_value_binop!(Mul, mul);
forward_value_binop!(Div, div);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(mut self) -> BigFloat {
        self.mantissa = -self.mantissa;
        self
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        self.clone().neg()
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_default())
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BigFloat({} @ {} bits)",
            self.to_decimal_default(),
            self.precision
        )
    }
}

type ConstCache = OnceLock<Mutex<HashMap<u32, BigFloat>>>;

fn cached(cache: &ConstCache, precision: u32, compute: impl FnOnce(u32) -> BigFloat) -> BigFloat {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().expect("constant cache poisoned");
    guard
        .entry(precision)
        .or_insert_with(|| compute(precision))
        .clone()
}

/// ln 2 at the given precision.
pub fn ln2(precision: u32) -> BigFloat {
    static CACHE: ConstCache = OnceLock::new();
    cached(&CACHE, precision, compute_ln2)
}

fn compute_ln2(precision: u32) -> BigFloat {
    // ln 2 = 2 atanh(1/3)
    let wp = precision + 16;
    let third = BigFloat::one(wp) / BigFloat::from_u64(3, wp);
    let z2 = &third * &third;
    let mut p = third;
    let mut acc = BigFloat::zero(wp);
    let mut j = 0u64;
    loop {
        let term = &p / &BigFloat::from_u64(2 * j + 1, wp);
        acc = &acc + &term;
        if term.floor_log2() < -(wp as i64 + 4) {
            break;
        }
        p = &p * &z2;
        j += 1;
    }
    acc.mul_pow2(1).with_precision(precision)
}

/// pi at the given precision, by the Machin formula.
pub fn pi(precision: u32) -> BigFloat {
    static CACHE: ConstCache = OnceLock::new();
    cached(&CACHE, precision, compute_pi)
}

fn compute_pi(precision: u32) -> BigFloat {
    let wp = precision + 16;
    let a = atan_recip(5, wp);
    let b = atan_recip(239, wp);
    let sixteen = BigFloat::from_u64(16, wp);
    let four = BigFloat::from_u64(4, wp);
    (&(&sixteen * &a) - &(&four * &b)).with_precision(precision)
}

fn atan_recip(x: u64, precision: u32) -> BigFloat {
    let t = BigFloat::one(precision) / BigFloat::from_u64(x, precision);
    let t2 = &t * &t;
    let mut p = t.clone();
    let mut acc = t;
    let mut k = 1u64;
    loop {
        p = &p * &t2;
        let term = &p / &BigFloat::from_u64(2 * k + 1, precision);
        acc = if k % 2 == 1 { &acc - &term } else { &acc + &term };
        if term.is_zero() || term.floor_log2() < -(precision as i64 + 4) {
            break;
        }
        k += 1;
    }
    acc
}

/// ln(2 pi) / 2, cached per precision.
pub fn half_ln_two_pi(precision: u32) -> BigFloat {
    static CACHE: ConstCache = OnceLock::new();
    cached(&CACHE, precision, |p| {
        let wp = p + 16;
        let two_pi = pi(wp).mul_pow2(1);
        two_pi.ln().mul_pow2(-1).with_precision(p)
    })
}

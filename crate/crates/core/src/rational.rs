//! Exact rational arithmetic support: integer square roots, rational
//! square-root detection, univariate polynomials over the rationals,
//! and linear forms `a -> u*a + v`.
//!
//! Rationals are [`num_rational::BigRational`], which keeps every value
//! in canonical form: `gcd(|numerator|, denominator) = 1`, denominator
//! positive, zero stored as `0/1`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

use num_traits::{One, Signed, Zero};

use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};

/// Small-integer rational constructor, mostly for tests and tables.
/// Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> BigRational {
    assert!(denom != 0, "rat() with zero denominator");
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer as a rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Floor square root with remainder, by Newton iteration seeded from the
/// bit length. Returns `(root, n - root^2)`.
pub(crate) fn isqrt_with_rem(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    if n < &BigUint::from(4u32) {
        return (BigUint::one(), n - BigUint::one());
    }
    // initial guess 2^ceil(bits/2) >= sqrt(n)
    let mut x: BigUint = BigUint::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    let rem = n - &x * &x;
    (x, rem)
}

/// Floor square root of a nonnegative integer.
/// Returns the root and whether it is exact.
pub fn isqrt(n: &BigInt) -> Result<(BigInt, bool)> {
    if n.is_negative() {
        return Err(Error::NegativeSqrt(n.to_string()));
    }
    let (root, rem) = isqrt_with_rem(n.magnitude());
    Ok((BigInt::from(root), rem.is_zero()))
}

/// Exact square root of a nonnegative rational, if one exists.
///
/// A reduced fraction is a rational square iff its numerator and
/// denominator are both perfect squares, so each part is tested
/// independently with [`isqrt`].
pub fn exact_sqrt(q: &BigRational) -> Result<Option<BigRational>> {
    if q.is_negative() {
        return Err(Error::NegativeSqrt(q.to_string()));
    }
    let (num_root, num_exact) = isqrt_with_rem(q.numer().magnitude());
    if !num_exact.is_zero() {
        return Ok(None);
    }
    let (den_root, den_exact) = isqrt_with_rem(q.denom().magnitude());
    if !den_exact.is_zero() {
        return Ok(None);
    }
    Ok(Some(BigRational::new(
        BigInt::from(num_root),
        BigInt::from(den_root),
    )))
}

/// Correctly rounded (nearest, ties to even) conversion to a binary float.
pub fn to_bigfloat(q: &BigRational, precision_bits: u32) -> BigFloat {
    BigFloat::from_rational(q, precision_bits)
}

/// Parse `"p/q"` or `"p"` as an exact rational. Whitespace is trimmed.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let err = || Error::ParseRational(s.to_string());
    let (num_str, den_str) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let numer: BigInt = num_str.parse().map_err(|_| err())?;
    let denom: BigInt = den_str.parse().map_err(|_| err())?;
    if denom.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(numer, denom))
}

/// Parse a decimal literal (optional sign, fraction, `e`/`E` exponent)
/// into the exact rational it denotes. Also accepts `"p/q"`.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if t.contains('/') {
        return parse_rational(t);
    }
    let err = || Error::ParseDecimal(s.to_string());
    let (mantissa_str, exp_str) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, Some(e)),
        None => (t, None),
    };
    let exp10: i64 = match exp_str {
        Some(e) => e.parse().map_err(|_| err())?,
        None => 0,
    };
    let (int_str, frac_str) = match mantissa_str.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa_str, ""),
    };
    if int_str.is_empty() && frac_str.is_empty() {
        return Err(err());
    }
    let digits = format!("{int_str}{frac_str}");
    if digits == "-" || digits == "+" {
        return Err(err());
    }
    let numer: BigInt = digits.parse().map_err(|_| err())?;
    let scale = exp10 - frac_str.len() as i64;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::from_integer(numer * ten.pow(scale as u32))
    } else {
        BigRational::new(numer, ten.pow((-scale) as u32))
    })
}

/// Univariate polynomial with rational coefficients, index = degree.
/// Canonical form never stores trailing zero coefficients; the zero
/// polynomial has an empty coefficient list and `degree() == None`
/// (the "minus infinity" sentinel).
#[derive(Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, a: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c;
        }
        acc
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            out.push(a + b);
        }
        RationalPoly::from_coeffs(out)
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            out.push(a - b);
        }
        RationalPoly::from_coeffs(out)
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::from_coeffs(out)
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})a")?,
                _ => write!(f, "({c})a^{i}")?,
            }
        }
        Ok(())
    }
}

/// The affine map `a -> u*a + v` with nonzero slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    u: BigRational,
    v: BigRational,
}

impl LinearForm {
    pub fn new(u: BigRational, v: BigRational) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::DegenerateForm);
        }
        Ok(LinearForm { u, v })
    }

    pub fn from_i64(u: i64, v: i64) -> Result<Self> {
        Self::new(int(u), int(v))
    }

    pub fn slope(&self) -> &BigRational {
        &self.u
    }

    pub fn offset(&self) -> &BigRational {
        &self.v
    }

    pub fn eval(&self, a: &BigRational) -> BigRational {
        &self.u * a + &self.v
    }

    pub fn to_poly(&self) -> RationalPoly {
        RationalPoly::from_coeffs(vec![self.v.clone(), self.u.clone()])
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.u.is_one() {
            write!(f, "a")?;
        } else if self.u == -BigRational::one() {
            write!(f, "-a")?;
        } else {
            write!(f, "{}a", self.u)?;
        }
        if self.v.is_positive() {
            write!(f, "+{}", self.v)?;
        } else if self.v.is_negative() {
            write!(f, "{}", self.v)?;
        }
        Ok(())
    }
}

//! Exact verification of square-root product identities of the shape
//!
//! ```text
//! sqrt(prefactor * prod (1 - 1/d_k^2)) = prod (1 + 1/d_k)
//! ```
//!
//! Everything here works on squared equations in exact rational
//! arithmetic: `sqrt(P) = Q` is decided as `P = Q^2 && Q >= 0`, so no
//! square root is ever extracted numerically. A float-mode wrapper is
//! provided for irrational parameters; the exact mode is authoritative.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use crate::rational::{int, rat, LinearForm, RationalPoly};

/// Where a parameter sits relative to an identity's domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainStatus {
    /// Inside the domain with both sides nonzero.
    Valid,
    /// Inside the domain but both sides vanish (a = -1 or a = -1/3).
    ZeroCase,
    /// Outside the domain.
    Excluded,
}

impl fmt::Display for DomainStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainStatus::Valid => "valid",
            DomainStatus::ZeroCase => "zero_case",
            DomainStatus::Excluded => "excluded",
        })
    }
}

/// Outcome of one exact identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheckResult {
    pub lhs_squared: BigRational,
    pub rhs: BigRational,
    pub rhs_squared: BigRational,
    pub holds: bool,
    pub domain: DomainStatus,
}

impl IdentityCheckResult {
    fn decide(lhs_squared: BigRational, rhs: BigRational, domain: DomainStatus) -> Self {
        let rhs_squared = &rhs * &rhs;
        let holds = lhs_squared == rhs_squared && !rhs.is_negative();
        IdentityCheckResult {
            lhs_squared,
            rhs,
            rhs_squared,
            holds,
            domain,
        }
    }
}

/// Which equation the squared-form check uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// Prefactor (a+1)/(a-1) * (1 - 1/a^2); excludes a in {0, 1}.
    Full,
    /// Prefactor ((a+1)/a)^2; excludes a = 0 only.
    Alternative,
}

/// Denominator family for the three fixed-step telescoping identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TelescopeCase {
    /// d_k = k, prefactor n(n+1)/(m(m-1)), needs m >= 2.
    Shift0,
    /// d_k = 2k, prefactor (2n+1)/(2m-1).
    Even,
    /// d_k = 2k+1, prefactor (n+1)/m.
    Odd,
}

/// The denominator triple 2a+1, 3a+2, 6a+1.
pub fn canonical_forms() -> [LinearForm; 3] {
    [
        LinearForm::from_i64(2, 1).expect("nonzero slope"),
        LinearForm::from_i64(3, 2).expect("nonzero slope"),
        LinearForm::from_i64(6, 1).expect("nonzero slope"),
    ]
}

/// The three triples that satisfy the product identity
/// prod (L_i(a)+1)/(L_i(a)-1) = ((a+1)/a)^2.
pub fn interchangeable_triples() -> [[LinearForm; 3]; 3] {
    let f = |u, v| LinearForm::from_i64(u, v).expect("nonzero slope");
    [
        [f(2, 1), f(3, 2), f(6, 1)],
        [f(2, 1), f(3, 1), f(6, 5)],
        [f(2, 1), f(4, 1), f(4, 3)],
    ]
}

fn in_main_interval(a: &BigRational) -> bool {
    // (-inf, -2/3) or (-1/2, -1/3] or (-1/6, inf)
    *a < rat(-2, 3) || (rat(-1, 2) < *a && *a <= rat(-1, 3)) || *a > rat(-1, 6)
}

fn is_zero_case(a: &BigRational) -> bool {
    *a == int(-1) || *a == rat(-1, 3)
}

/// Domain classification for the full-form identity:
/// a in (-inf,-2/3) u (-1/2,-1/3] u ((-1/6,inf) \ {0,1}).
pub fn theorem1_domain(a: &BigRational) -> DomainStatus {
    if !in_main_interval(a) || a.is_zero() || a.is_one() {
        DomainStatus::Excluded
    } else if is_zero_case(a) {
        DomainStatus::ZeroCase
    } else {
        DomainStatus::Valid
    }
}

/// Domain classification for the alternative form: a = 1 is allowed.
/// Both sides still vanish exactly at a = -1 and a = -1/3.
pub fn remark_alt_domain(a: &BigRational) -> DomainStatus {
    if !in_main_interval(a) || a.is_zero() {
        DomainStatus::Excluded
    } else if is_zero_case(a) {
        DomainStatus::ZeroCase
    } else {
        DomainStatus::Valid
    }
}

fn vanishes(factor: &str, a: &BigRational) -> Error {
    Error::FactorVanishes {
        factor: factor.to_string(),
        a: a.to_string(),
    }
}

/// 1 - 1/t^2 for nonzero t.
fn one_minus_inv_sq(t: &BigRational) -> BigRational {
    let inv = t.recip();
    BigRational::one() - &inv * &inv
}

/// The radicand (a+1)/(a-1) (1-1/a^2) prod (1 - 1/L_i(a)^2) over the
/// canonical triple, as an exact rational.
pub fn theorem1_lhs_squared(a: &BigRational) -> Result<BigRational> {
    lhs_squared_with_forms(a, &canonical_forms(), FormKind::Full)
}

/// The product prod (1 + 1/L_i(a)) over the canonical triple.
pub fn theorem1_rhs(a: &BigRational) -> Result<BigRational> {
    rhs_with_forms(a, &canonical_forms())
}

fn lhs_squared_with_forms(
    a: &BigRational,
    forms: &[LinearForm; 3],
    kind: FormKind,
) -> Result<BigRational> {
    let one = BigRational::one();
    let mut acc = match kind {
        FormKind::Full => {
            if a.is_one() {
                return Err(vanishes("a-1", a));
            }
            if a.is_zero() {
                return Err(vanishes("a", a));
            }
            let ratio = (a + &one) / (a - &one);
            ratio * one_minus_inv_sq(a)
        }
        FormKind::Alternative => {
            if a.is_zero() {
                return Err(vanishes("a", a));
            }
            let pre = (a + &one) / a;
            &pre * &pre
        }
    };
    for form in forms {
        let value = form.eval(a);
        if value.is_zero() {
            return Err(vanishes(&form.to_string(), a));
        }
        acc *= one_minus_inv_sq(&value);
    }
    Ok(acc)
}

fn rhs_with_forms(a: &BigRational, forms: &[LinearForm; 3]) -> Result<BigRational> {
    let mut acc = BigRational::one();
    for form in forms {
        let value = form.eval(a);
        if value.is_zero() {
            return Err(vanishes(&form.to_string(), a));
        }
        acc *= BigRational::one() + value.recip();
    }
    Ok(acc)
}

/// Exact check of the full identity at a rational parameter.
/// The parameter must not be Excluded; at the zero cases both sides
/// evaluate to exactly 0.
pub fn verify_theorem1(a: &BigRational) -> Result<IdentityCheckResult> {
    let domain = theorem1_domain(a);
    if domain == DomainStatus::Excluded {
        return Err(Error::ExcludedParameter(a.to_string()));
    }
    let lhs = theorem1_lhs_squared(a)?;
    let rhs = theorem1_rhs(a)?;
    Ok(IdentityCheckResult::decide(lhs, rhs, domain))
}

/// Exact check of the alternative form (prefactor (a+1)/a outside the
/// root), compared through the squared equation.
pub fn verify_remark_alt(a: &BigRational) -> Result<IdentityCheckResult> {
    let domain = remark_alt_domain(a);
    if domain == DomainStatus::Excluded {
        return Err(Error::ExcludedParameter(a.to_string()));
    }
    let lhs = lhs_squared_with_forms(a, &canonical_forms(), FormKind::Alternative)?;
    let rhs = theorem1_rhs(a)?;
    Ok(IdentityCheckResult::decide(lhs, rhs, domain))
}

/// The squared equation holds on the much larger domain that only
/// removes literal zero denominators: a not in {-2/3,-1/2,-1/6,0,1}
/// for the full form, a not in {-2/3,-1/2,-1/6,0} for the alternative.
pub fn verify_squared(a: &BigRational, kind: FormKind) -> Result<bool> {
    verify_squared_with_forms(a, &canonical_forms(), kind)
}

/// Squared-equation check against an arbitrary denominator triple.
/// Useful for mutation testing: perturbing any coefficient of a valid
/// triple must break the identity for almost every parameter.
pub fn verify_squared_with_forms(
    a: &BigRational,
    forms: &[LinearForm; 3],
    kind: FormKind,
) -> Result<bool> {
    if kind == FormKind::Full && a.is_one() {
        return Err(Error::ExcludedParameter(a.to_string()));
    }
    if a.is_zero() {
        return Err(Error::ExcludedParameter(a.to_string()));
    }
    let lhs = lhs_squared_with_forms(a, forms, kind)?;
    let rhs = rhs_with_forms(a, forms)?;
    Ok(lhs == &rhs * &rhs)
}

/// Float-mode squared check for parameters that are not rational.
/// Uses absolute tolerance 2^(-precision/2); the exact rational mode is
/// the source of truth wherever it applies.
pub fn verify_squared_float(a: &BigFloat, kind: FormKind) -> Result<bool> {
    let precision = a.precision();
    let one = BigFloat::one(precision);
    if kind == FormKind::Full && *a == one {
        return Err(Error::ExcludedParameter(a.to_decimal(8)));
    }
    if a.is_zero() {
        return Err(Error::ExcludedParameter(a.to_decimal(8)));
    }
    let forms = canonical_forms();
    let mut lhs = match kind {
        FormKind::Full => (&(a + &one) / &(a - &one)) * (&one - (&one / a).pow_i64(2)),
        FormKind::Alternative => (&(a + &one) / a).pow_i64(2),
    };
    let mut rhs = one.clone();
    for form in &forms {
        let u = BigFloat::from_rational(form.slope(), precision);
        let v = BigFloat::from_rational(form.offset(), precision);
        let value = &(&u * a) + &v;
        if value.is_zero() {
            return Err(Error::ExcludedParameter(a.to_decimal(8)));
        }
        lhs = &lhs * &(&one - &(&one / &value).pow_i64(2));
        rhs = &rhs * &(&one + &(&one / &value));
    }
    let diff = (&lhs - &(&rhs * &rhs)).abs();
    Ok(diff <= BigFloat::pow2(-(precision as i64) / 2, precision))
}

/// Finite product identity behind all the families:
/// prod (a_k+1)/(a_k-1) * prod (1 - 1/a_k^2) = (prod (1 + 1/a_k))^2,
/// valid whenever every |a_k| > 1.
pub fn verify_lemma1(seq: &[BigRational]) -> Result<IdentityCheckResult> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    let one = BigRational::one();
    for (index, a) in seq.iter().enumerate() {
        if a.abs() <= one {
            return Err(Error::ElementNotAdmissible {
                index,
                value: a.to_string(),
            });
        }
    }
    let mut lhs = BigRational::one();
    let mut rhs = BigRational::one();
    for a in seq {
        lhs *= (a + &one) / (a - &one);
        lhs *= one_minus_inv_sq(a);
        rhs *= &one + a.recip();
    }
    Ok(IdentityCheckResult::decide(lhs, rhs, DomainStatus::Valid))
}

fn check_bounds(m: i64, n: i64, min_m: i64) -> Result<()> {
    if m < min_m || n < m {
        return Err(Error::InvalidBounds { m, n, min_m });
    }
    Ok(())
}

fn check_telescope_condition(u: &BigRational, v: &BigRational, m: i64, n: i64) -> Result<()> {
    if u.is_zero() {
        return Err(Error::DegenerateForm);
    }
    // uk+v is monotone in k, so the extreme value sits at k = m
    let at_m = u * int(m) + v;
    let ok = if u.is_positive() {
        at_m > BigRational::one()
    } else {
        at_m < -BigRational::one()
    };
    if ok {
        Ok(())
    } else {
        Err(Error::TelescopeCondition { m, n })
    }
}

/// Closed form of prod_{k=m..n} (uk+v+1)/(uk+v-1), computed exactly by
/// collapsing the gamma ratio into rising factorials:
/// prod_{j=0..n-m} (m+j+(v+1)/u) / (m+j+(v-1)/u).
pub fn telescope_linear(
    u: &BigRational,
    v: &BigRational,
    m: i64,
    n: i64,
) -> Result<BigRational> {
    check_bounds(m, n, 1)?;
    check_telescope_condition(u, v, m, n)?;
    let one = BigRational::one();
    let lo = (v - &one) / u;
    let hi = (v + &one) / u;
    let mut acc = BigRational::one();
    for j in 0..=(n - m) {
        let base = int(m + j);
        acc *= (&base + &hi) / (&base + &lo);
    }
    Ok(acc)
}

/// Direct evaluation of prod_{k=m..n} (uk+v+1)/(uk+v-1).
pub fn telescope_direct(
    u: &BigRational,
    v: &BigRational,
    m: i64,
    n: i64,
) -> Result<BigRational> {
    check_bounds(m, n, 1)?;
    check_telescope_condition(u, v, m, n)?;
    let one = BigRational::one();
    let mut acc = BigRational::one();
    for k in m..=n {
        let value = u * int(k) + v;
        acc *= (&value + &one) / (&value - &one);
    }
    Ok(acc)
}

/// The three fixed-step telescoping families with denominators k, 2k,
/// and 2k+1.
pub fn verify_theorem3(case: TelescopeCase, m: i64, n: i64) -> Result<IdentityCheckResult> {
    let min_m = match case {
        TelescopeCase::Shift0 => 2,
        TelescopeCase::Even | TelescopeCase::Odd => 1,
    };
    check_bounds(m, n, min_m)?;
    let (prefactor, d): (BigRational, fn(i64) -> BigRational) = match case {
        TelescopeCase::Shift0 => (rat(n * (n + 1), m * (m - 1)), int),
        TelescopeCase::Even => (rat(2 * n + 1, 2 * m - 1), |k| int(2 * k)),
        TelescopeCase::Odd => (rat(n + 1, m), |k| int(2 * k + 1)),
    };
    let one = BigRational::one();
    let mut lhs = prefactor;
    let mut rhs = BigRational::one();
    for k in m..=n {
        let value = d(k);
        lhs *= one_minus_inv_sq(&value);
        rhs *= &one + value.recip();
    }
    Ok(IdentityCheckResult::decide(lhs, rhs, DomainStatus::Valid))
}

/// General linear-denominator family: the gamma-ratio closed form must
/// both equal the direct product and make the square-root identity hold.
pub fn verify_theorem4(
    u: &BigRational,
    v: &BigRational,
    m: i64,
    n: i64,
) -> Result<IdentityCheckResult> {
    let closed = telescope_linear(u, v, m, n)?;
    let direct = telescope_direct(u, v, m, n)?;
    let one = BigRational::one();
    let mut lhs = closed.clone();
    let mut rhs = BigRational::one();
    for k in m..=n {
        let value = u * int(k) + v;
        lhs *= one_minus_inv_sq(&value);
        rhs *= &one + value.recip();
    }
    let mut result = IdentityCheckResult::decide(lhs, rhs, DomainStatus::Valid);
    result.holds = result.holds && closed == direct;
    Ok(result)
}

/// Cubic-denominator family with superparticular prefactor:
/// sqrt((m(m-1)+1)/(m(m-1)) * n(n+1)/(n(n+1)+1) * prod (1-1/k^6))
///   = prod (1 + 1/k^3),
/// including the intermediate closed form for prod (k^3+1)/(k^3-1).
pub fn verify_theorem5_cubic(m: i64, n: i64) -> Result<IdentityCheckResult> {
    check_bounds(m, n, 2)?;
    let one = BigRational::one();
    let closed = rat(m * (m - 1) + 1, m * (m - 1)) * rat(n * (n + 1), n * (n + 1) + 1);
    let mut direct = BigRational::one();
    let mut lhs = closed.clone();
    let mut rhs = BigRational::one();
    for k in m..=n {
        let cube = int(k).pow(3);
        direct *= (&cube + &one) / (&cube - &one);
        lhs *= one_minus_inv_sq(&cube);
        rhs *= &one + cube.recip();
    }
    let mut result = IdentityCheckResult::decide(lhs, rhs, DomainStatus::Valid);
    result.holds = result.holds && direct == closed;
    Ok(result)
}

/// Decides whether a denominator triple satisfies
/// prod (L_i(a)+1)/(L_i(a)-1) = ((a+1)/a)^2
/// as an identity of rational functions, by cross-multiplying into
/// polynomial form: a^2 prod (L_i(a)+1) = (a+1)^2 prod (L_i(a)-1).
pub fn verify_triple_family(forms: &[LinearForm; 3]) -> bool {
    let one = RationalPoly::from_i64_coeffs(&[1]);
    let a_sq = RationalPoly::from_i64_coeffs(&[0, 0, 1]);
    let a_plus_1_sq = RationalPoly::from_i64_coeffs(&[1, 2, 1]);
    let mut left = a_sq;
    let mut right = a_plus_1_sq;
    for form in forms {
        let p = form.to_poly();
        left = &left * &(&p + &one);
        right = &right * &(&p - &one);
    }
    left == right
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_classification() {
        assert_eq!(theorem1_domain(&int(3)), DomainStatus::Valid);
        assert_eq!(theorem1_domain(&rat(-1, 3)), DomainStatus::ZeroCase);
        assert_eq!(theorem1_domain(&int(-1)), DomainStatus::ZeroCase);
        assert_eq!(theorem1_domain(&int(1)), DomainStatus::Excluded);
        assert_eq!(theorem1_domain(&int(0)), DomainStatus::Excluded);
        // interval endpoints: -2/3, -1/2, -1/6 excluded, -1/3 included
        assert_eq!(theorem1_domain(&rat(-2, 3)), DomainStatus::Excluded);
        assert_eq!(theorem1_domain(&rat(-1, 2)), DomainStatus::Excluded);
        assert_eq!(theorem1_domain(&rat(-1, 6)), DomainStatus::Excluded);
        assert_eq!(theorem1_domain(&rat(-2, 5)), DomainStatus::Valid);
        assert_eq!(theorem1_domain(&rat(-1, 5)), DomainStatus::Excluded);
        assert_eq!(theorem1_domain(&rat(-3, 4)), DomainStatus::Valid);
        // alternative form admits a = 1
        assert_eq!(remark_alt_domain(&int(1)), DomainStatus::Valid);
        assert_eq!(remark_alt_domain(&int(0)), DomainStatus::Excluded);
        assert_eq!(remark_alt_domain(&rat(-1, 3)), DomainStatus::ZeroCase);
    }

    #[test]
    fn lhs_and_rhs_at_3() {
        // 2 * (8/9)(48/49)(120/121)(360/361) = (1920/1463)^2
        let lhs = theorem1_lhs_squared(&int(3)).unwrap();
        assert_eq!(lhs, rat(1920, 1463) * rat(1920, 1463));
        assert_eq!(theorem1_rhs(&int(3)).unwrap(), rat(1920, 1463));
    }

    #[test]
    fn zero_cases_vanish_on_both_sides() {
        assert_eq!(theorem1_lhs_squared(&int(-1)).unwrap(), int(0));
        assert_eq!(theorem1_rhs(&int(-1)).unwrap(), int(0));
        assert_eq!(theorem1_lhs_squared(&rat(-1, 3)).unwrap(), int(0));
        // at a = -1/3 the vanishing right-hand factor is 1 + 1/(6a+1),
        // because 6a+1 = -1 there (3a+2 = 1 keeps its factor at 2)
        assert_eq!(theorem1_rhs(&rat(-1, 3)).unwrap(), int(0));
        let f = canonical_forms();
        assert_eq!(f[2].eval(&rat(-1, 3)), int(-1));
        assert_eq!(f[1].eval(&rat(-1, 3)), int(1));
        // and at a = -1 it is 1 + 1/(2a+1), since 2a+1 = -1
        assert_eq!(f[0].eval(&int(-1)), int(-1));
    }

    #[test]
    fn verify_full_form_examples() {
        let r = verify_theorem1(&int(3)).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs, rat(1920, 1463));
        assert_eq!(r.domain, DomainStatus::Valid);

        let r = verify_theorem1(&int(2)).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs, rat(189, 130));
        assert_eq!(theorem1_lhs_squared(&int(2)).unwrap(), rat(189, 130) * rat(189, 130));

        let r = verify_theorem1(&int(-2)).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs, rat(5, 11));

        let r = verify_theorem1(&int(-1)).unwrap();
        assert!(r.holds);
        assert!(r.lhs_squared.is_zero() && r.rhs.is_zero());
        assert_eq!(r.domain, DomainStatus::ZeroCase);

        assert!(matches!(
            verify_theorem1(&int(1)),
            Err(Error::ExcludedParameter(_))
        ));
    }

    #[test]
    fn verify_alternative_form_examples() {
        let r = verify_remark_alt(&int(1)).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs, rat(64, 35));
        assert_eq!(r.lhs_squared, rat(64, 35) * rat(64, 35));

        let r = verify_remark_alt(&int(-1)).unwrap();
        assert!(r.holds && r.rhs.is_zero());

        // shared right-hand side with the full form
        let alt = verify_remark_alt(&int(3)).unwrap();
        let full = verify_theorem1(&int(3)).unwrap();
        assert!(alt.holds);
        assert_eq!(alt.rhs, full.rhs);
    }

    #[test]
    fn squared_form_on_widened_domain() {
        // a = -1/5 is outside the strict domain but satisfies the square
        assert_eq!(theorem1_domain(&rat(-1, 5)), DomainStatus::Excluded);
        assert!(verify_squared(&rat(-1, 5), FormKind::Full).unwrap());
        assert!(verify_squared(&rat(7, 2), FormKind::Full).unwrap());
        assert!(verify_squared(&int(1), FormKind::Alternative).unwrap());
        assert!(matches!(
            verify_squared(&int(1), FormKind::Full),
            Err(Error::ExcludedParameter(_))
        ));
        assert!(verify_squared(&rat(-1, 2), FormKind::Full).is_err());
        assert!(verify_squared(&rat(-2, 3), FormKind::Full).is_err());
        assert!(verify_squared(&rat(-1, 6), FormKind::Full).is_err());
    }

    #[test]
    fn squared_form_float_mode() {
        // sqrt(2) is irrational; the squared identity still holds in floats
        let sqrt2 = BigFloat::from_u64(2, 128).sqrt();
        assert!(verify_squared_float(&sqrt2, FormKind::Full).unwrap());
        assert!(verify_squared_float(&sqrt2, FormKind::Alternative).unwrap());
        assert!(verify_squared_float(&BigFloat::zero(128), FormKind::Full).is_err());
    }

    #[test]
    fn lemma_single_factor_cases() {
        // sqrt(2 (1-1/3^2)) = 1 + 1/3
        let r = verify_lemma1(&[int(3)]).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs, rat(4, 3));
        // sqrt(3 (1-1/2^2)) = 1 + 1/2
        let r = verify_lemma1(&[int(2)]).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs, rat(3, 2));
    }

    #[test]
    fn lemma_over_the_first_4n3_primes() {
        // rhs carries a factor (1+1/a_k) for every element, including 3:
        // (4/3)(8/7)(12/11)(20/19) = 2560/1463
        let r = verify_lemma1(&[int(3), int(7), int(11), int(19)]).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs, rat(2560, 1463));
        assert_eq!(rat(2560, 1463), rat(4, 3) * rat(1920, 1463));
    }

    #[test]
    fn lemma_rejects_small_elements() {
        assert!(matches!(
            verify_lemma1(&[int(3), rat(1, 2)]),
            Err(Error::ElementNotAdmissible { index: 1, .. })
        ));
        assert!(verify_lemma1(&[int(-1)]).is_err());
        assert!(verify_lemma1(&[]).is_err());
        // negative elements below -1 are admissible
        assert!(verify_lemma1(&[int(-2), rat(-3, 2)]).unwrap().holds);
    }

    #[test]
    fn telescope_closed_forms() {
        assert_eq!(telescope_linear(&int(1), &int(0), 2, 4).unwrap(), int(10));
        assert_eq!(telescope_linear(&int(2), &int(0), 1, 3).unwrap(), int(7));
        assert_eq!(telescope_linear(&int(2), &int(1), 1, 3).unwrap(), int(4));
        // closed form equals the direct product
        let u = rat(1, 2);
        let v = int(1);
        assert_eq!(
            telescope_linear(&u, &v, 1, 9).unwrap(),
            telescope_direct(&u, &v, 1, 9).unwrap()
        );
    }

    #[test]
    fn telescope_condition_enforced() {
        // u > 0 needs um+v > 1: u=1, v=0, m=1 gives exactly 1
        assert!(matches!(
            telescope_linear(&int(1), &int(0), 1, 4),
            Err(Error::TelescopeCondition { .. })
        ));
        // u < 0 needs um+v < -1: u=-1, v=0, m=1 gives exactly -1
        assert!(telescope_linear(&int(-1), &int(0), 1, 4).is_err());
        assert!(telescope_linear(&int(-2), &int(0), 1, 3).is_ok());
        assert!(telescope_linear(&int(0), &int(5), 1, 3).is_err());
        assert!(telescope_linear(&int(1), &int(1), 3, 2).is_err());
    }

    #[test]
    fn theorem3_families() {
        let r = verify_theorem3(TelescopeCase::Odd, 1, 3).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs, rat(64, 35)); // same content as the a=1 example

        let r = verify_theorem3(TelescopeCase::Shift0, 2, 4).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs, rat(5, 2));
        assert_eq!(r.lhs_squared, rat(25, 4));

        let r = verify_theorem3(TelescopeCase::Even, 1, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs, rat(3, 2));

        assert!(verify_theorem3(TelescopeCase::Shift0, 1, 4).is_err());
        assert!(verify_theorem3(TelescopeCase::Even, 0, 4).is_err());
        assert!(verify_theorem3(TelescopeCase::Even, 3, 1).is_err());
    }

    #[test]
    fn theorem4_families() {
        assert!(verify_theorem4(&int(1), &int(0), 2, 5).unwrap().holds);
        assert!(verify_theorem4(&int(3), &int(1), 1, 4).unwrap().holds);
        // negative slope with every uk+v < -1
        assert!(verify_theorem4(&int(-2), &int(0), 1, 3).unwrap().holds);
        let r = verify_theorem4(&int(-2), &int(0), 1, 3).unwrap();
        assert_eq!(r.rhs, rat(5, 16));
    }

    #[test]
    fn theorem5_cubic() {
        let r = verify_theorem5_cubic(2, 2).unwrap();
        assert!(r.holds);
        // prod (k^3+1)/(k^3-1) over k=2..2 is 9/7 = (3/2)(6/7)
        assert_eq!(rat(9, 7), rat(3, 2) * rat(6, 7));
        let r = verify_theorem5_cubic(2, 10).unwrap();
        assert!(r.holds);
        let r = verify_theorem5_cubic(5, 5).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs, rat(126, 125)); // 1 + 1/125
        assert!(verify_theorem5_cubic(1, 3).is_err());
    }

    #[test]
    fn triple_families_accept_and_reject() {
        for triple in interchangeable_triples() {
            assert!(verify_triple_family(&triple), "triple must verify");
        }
        // perturbed: {2a+1, 3a+2, 6a+2}
        let bad = [
            LinearForm::from_i64(2, 1).unwrap(),
            LinearForm::from_i64(3, 2).unwrap(),
            LinearForm::from_i64(6, 2).unwrap(),
        ];
        assert!(!verify_triple_family(&bad));
    }
}

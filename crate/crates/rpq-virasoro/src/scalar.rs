//! The field of fractions of Laurent polynomials.
//!
//! Every coefficient in the workbench is a `Scalar`, so identity verdicts
//! reduce to exact zero tests. Equality goes through cross-multiplication;
//! full multivariate gcd reduction is deliberately avoided. Normalization
//! strips monomial content, folds monomial denominators into the numerator
//! (Laurent monomials are units), attempts one exact division, and scales
//! the denominator monic for deterministic rendering.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Ctx, LaurentPoly, SubstTarget};

#[derive(Debug, Clone)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Scalar {
        debug_assert!(!den.is_zero());
        let ctx = num.ctx();
        if num.is_zero() {
            return Scalar {
                num,
                den: LaurentPoly::one(ctx),
            };
        }
        // Cancel the common monomial content so both parts are honest
        // polynomials with zero minimum exponent where they overlap.
        let cn = num.content_mono();
        let cd = den.content_mono();
        let mut common = cn;
        for (i, e) in common.0.iter_mut().enumerate() {
            *e = (*e).min(cd.0[i]);
        }
        let inv = crate::poly::Mono::one().div(&common);
        let mut num = num.mul_mono(&inv);
        let mut den = den.mul_mono(&inv);
        // A monomial denominator is a unit: fold it into the numerator.
        if let Some((m, c)) = den.as_monomial() {
            let minv = crate::poly::Mono::one().div(&m);
            num = num.mul_mono(&minv).mul_rat(&c.recip());
            den = LaurentPoly::one(ctx);
        } else {
            // Strip the denominator's own content (a unit), then try one
            // exact division to keep iterated arithmetic small.
            let cd = den.content_mono();
            if !cd.is_one() {
                let minv = crate::poly::Mono::one().div(&cd);
                den = den.mul_mono(&minv);
                num = num.mul_mono(&minv);
            }
            let ncont = num.content_mono();
            let sep = crate::poly::Mono::one().div(&ncont);
            let num_poly = num.mul_mono(&sep);
            if let Some(q) = num_poly.try_div_exact(&den) {
                num = q.mul_mono(&ncont);
                den = LaurentPoly::one(ctx);
            } else {
                let lead = den.leading().unwrap().1;
                if !lead.is_one() {
                    let linv = lead.recip();
                    num = num.mul_rat(&linv);
                    den = den.mul_rat(&linv);
                }
            }
        }
        Scalar { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Scalar {
        let ctx = p.ctx();
        Scalar::normalized(p, LaurentPoly::one(ctx))
    }

    pub fn zero(ctx: Ctx) -> Scalar {
        Scalar::from_poly(LaurentPoly::zero(ctx))
    }

    pub fn one(ctx: Ctx) -> Scalar {
        Scalar::from_poly(LaurentPoly::one(ctx))
    }

    pub fn from_int(ctx: Ctx, n: i64) -> Scalar {
        Scalar::from_poly(LaurentPoly::from_int(ctx, n))
    }

    pub fn from_rat(ctx: Ctx, r: BigRational) -> Scalar {
        Scalar::from_poly(LaurentPoly::constant(ctx, r))
    }

    pub fn var(ctx: Ctx, name: &str) -> Scalar {
        Scalar::from_poly(LaurentPoly::var(ctx, name))
    }

    pub fn var_pow(ctx: Ctx, name: &str, exp: i32) -> Scalar {
        Scalar::from_poly(LaurentPoly::var_pow(ctx, name, exp))
    }

    pub fn ctx(&self) -> Ctx {
        self.num.ctx()
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    /// True iff the value is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one(self.ctx())
    }

    pub fn add_ref(&self, other: &Scalar) -> Scalar {
        if self.den == other.den {
            return Scalar::normalized(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Scalar::normalized(num, den)
    }

    pub fn sub_ref(&self, other: &Scalar) -> Scalar {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Scalar) -> Scalar {
        Scalar::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn neg_ref(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::normalized(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn inv(&self) -> Result<Scalar> {
        Scalar::one(self.ctx()).try_div(self)
    }

    /// Integer power; negative exponents invert, so the base must be
    /// nonzero for those.
    pub fn pow(&self, n: i64) -> Result<Scalar> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one(self.ctx());
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul_ref(&base);
        }
        Ok(acc)
    }

    pub fn mul_int(&self, k: i64) -> Scalar {
        self.mul_ref(&Scalar::from_int(self.ctx(), k))
    }

    /// Exact substitution of every variable, numerator and denominator
    /// separately. Fails with `EvaluationAtPole` when the substituted
    /// denominator vanishes.
    pub fn substitute(&self, target: Ctx, map: &[SubstTarget]) -> Result<Scalar> {
        let num = self.num.substitute(target, map)?;
        let den = self.den.substitute(target, map)?;
        if den.is_zero() {
            return Err(Error::EvaluationAtPole);
        }
        Ok(Scalar::normalized(num, den))
    }

    /// The rational value if this scalar is a constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        (!d.is_zero()).then(|| n / d)
    }

    pub fn as_i64(&self) -> Option<i64> {
        let r = self.as_rational()?;
        if !r.denom().is_one() {
            return None;
        }
        i64::try_from(r.numer().clone()).ok()
    }
}

/// Equality by cross-multiplication: a/b = c/d iff ad - cb = 0.
impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        self.num.mul(&other.den).sub(&other.num.mul(&self.den)).is_zero()
    }
}

impl Eq for Scalar {}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.add_ref(rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.sub_ref(rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.mul_ref(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one(self.ctx()) {
            if self.num.num_terms() > 1 {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Convenience constructor for rationals.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp() -> Scalar {
        Scalar::var(Ctx::Pqc, "p")
    }

    fn sq() -> Scalar {
        Scalar::var(Ctx::Pqc, "q")
    }

    #[test]
    fn identity_quotient() {
        let d = &sp() - &sq();
        assert!(d.try_div(&d).unwrap().is_one());
    }

    #[test]
    fn difference_of_squares_reduces() {
        // (p^2 - q^2)/(p - q) equals p + q under the zero test
        let num = &(&sp() * &sp()) - &(&sq() * &sq());
        let den = &sp() - &sq();
        let quot = num.try_div(&den).unwrap();
        let expect = &sp() + &sq();
        assert!(quot.sub_ref(&expect).is_zero());
        assert_eq!(quot, expect);
    }

    #[test]
    fn inverse_monomial() {
        let qinv = Scalar::var_pow(Ctx::Pqc, "q", -1);
        assert!(qinv.mul_ref(&sq()).is_one());
    }

    #[test]
    fn zero_tests() {
        assert!(Scalar::zero(Ctx::Pqc).is_zero());
        let frac = (&sp() - &sq()).try_div(&(&sp() * &sq())).unwrap();
        assert!(!frac.is_zero());
        // (p^2 - q^2) - (p + q)(p - q) = 0 as one scalar
        let lhs = &(&sp() * &sp()) - &(&sq() * &sq());
        let rhs = &(&sp() + &sq()) * &(&sp() - &sq());
        assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let z = Scalar::zero(Ctx::Pqc);
        assert!(matches!(sp().try_div(&z), Err(Error::DivisionByZero)));
    }

    #[test]
    fn substitution_pole() {
        let one = Scalar::one(Ctx::Pqc);
        let f = one.try_div(&(&sp() - &sq())).unwrap();
        let err = f
            .substitute(
                Ctx::Pqc,
                &[
                    SubstTarget::value_i64(1),
                    SubstTarget::value_i64(1),
                    SubstTarget::Power("c", 1),
                ],
            )
            .unwrap_err();
        assert!(matches!(err, Error::EvaluationAtPole));
    }

    #[test]
    fn identity_substitution_is_identity() {
        let f = (&(&sp() + &sq()) * &sp()).try_div(&(&sp() - &sq())).unwrap();
        let id = [
            SubstTarget::Power("p", 1),
            SubstTarget::Power("q", 1),
            SubstTarget::Power("c", 1),
        ];
        assert_eq!(f.substitute(Ctx::Pqc, &id).unwrap(), f);
    }
}

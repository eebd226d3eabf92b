//! Formal square-root scalars: coeff · √radicand.
//!
//! The radicand is kept square-free (its square part is absorbed into the
//! coefficient), so equality is componentwise. Constant radicands such as
//! -1 stay formal; no extension-field arithmetic happens here.

use std::fmt;


use super::ratfunc::RatFunc;
use super::square::{extract_square, rational_square_part};
use super::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct SqrtScalar {
    coeff: RatFunc,
    radicand: RatFunc,
}

impl SqrtScalar {
    /// Canonicalize coeff·√radicand: square parts of the radicand's
    /// numerator and denominator move into the coefficient.
    pub fn new(coeff: RatFunc, radicand: RatFunc) -> Result<Self> {
        if radicand.is_zero() {
            return Err(Error::DegenerateInput("zero radicand".into()));
        }
        if coeff.is_zero() {
            return Ok(SqrtScalar {
                coeff: RatFunc::zero(),
                radicand: RatFunc::one(),
            });
        }
        // √(n/d) = √(n·d)/d
        let nd = radicand.num().mul_ref(radicand.den());
        let (root, rest) = extract_square(&nd);
        // unit content of the squarefree part may still hold a square
        let (u, rest_n) = rest.unit_and_normalized();
        let (ur, uq) = rational_square_part(&u);
        let rest = rest_n.scale(&uq);
        let scale = RatFunc::new(root.scale(&ur), radicand.den().clone())?;
        Ok(SqrtScalar {
            coeff: coeff.mul(&scale),
            radicand: RatFunc::from_poly(rest),
        })
    }

    pub fn rational(coeff: RatFunc) -> Self {
        SqrtScalar {
            coeff,
            radicand: RatFunc::one(),
        }
    }

    pub fn one() -> Self {
        SqrtScalar::rational(RatFunc::one())
    }

    pub fn coeff(&self) -> &RatFunc {
        &self.coeff
    }

    pub fn radicand(&self) -> &RatFunc {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    /// The exact square: coeff² · radicand.
    pub fn square(&self) -> RatFunc {
        self.coeff.mul(&self.coeff).mul(&self.radicand)
    }

    pub fn neg(&self) -> SqrtScalar {
        SqrtScalar {
            coeff: self.coeff.neg(),
            radicand: self.radicand.clone(),
        }
    }

    /// Product with radicand recombination (√a·√b = √(ab), square part
    /// re-absorbed). Uses the positive-root convention √a·√a = a.
    pub fn mul(&self, other: &SqrtScalar) -> Result<SqrtScalar> {
        let coeff = self.coeff.mul(&other.coeff);
        if self.is_zero() || other.is_zero() {
            return Ok(SqrtScalar {
                coeff: RatFunc::zero(),
                radicand: RatFunc::one(),
            });
        }
        // Canonical radicands: equal ones multiply as (√d)² = d, which keeps
        // √-1 · √-1 = -1 regardless of square extraction over ℚ.
        if self.radicand == other.radicand {
            return Ok(SqrtScalar::rational(coeff.mul(&self.radicand)));
        }
        SqrtScalar::new(coeff, self.radicand.mul(&other.radicand))
    }

    pub fn mul_rat(&self, c: &RatFunc) -> SqrtScalar {
        SqrtScalar {
            coeff: self.coeff.mul(c),
            radicand: self.radicand.clone(),
        }
    }

    /// ±: same up to sign of the coefficient.
    pub fn eq_up_to_sign(&self, other: &SqrtScalar) -> bool {
        self.radicand == other.radicand
            && (self.coeff == other.coeff || self.coeff == other.coeff.neg())
    }
}

impl fmt::Display for SqrtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else if self.coeff.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else {
            write!(f, "({})*sqrt({})", self.coeff, self.radicand)
        }
    }
}

impl fmt::Debug for SqrtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::poly::MultiPoly;

    #[test]
    fn square_part_absorbed() {
        // √(A^3 B^3) = A*B*√(A*B)
        let a = MultiPoly::sym("A");
        let b = MultiPoly::sym("B");
        let rad = RatFunc::from_poly(a.pow(3).mul_ref(&b.pow(3)));
        let s = SqrtScalar::new(RatFunc::one(), rad).unwrap();
        assert_eq!(s.coeff(), &RatFunc::from_poly(a.mul_ref(&b)));
        assert_eq!(s.radicand(), &RatFunc::from_poly(a.mul_ref(&b)));
        assert_eq!(s.square(), RatFunc::from_poly(a.pow(3).mul_ref(&b.pow(3))));
    }

    #[test]
    fn minus_one_stays_formal() {
        let s = SqrtScalar::new(RatFunc::one(), RatFunc::from_int(-1)).unwrap();
        assert!(!s.is_rational());
        assert_eq!(s.square(), RatFunc::from_int(-1));
        let sq = s.mul(&s).unwrap();
        assert!(sq.is_rational());
        assert_eq!(sq.coeff(), &RatFunc::from_int(-1));
    }

    #[test]
    fn rational_denominator_radicand() {
        // √((A0-A1)/A0) = √((A0-A1)A0)/A0
        let a0 = MultiPoly::sym("A0");
        let a1 = MultiPoly::sym("A1");
        let rad = RatFunc::new(&a0 - &a1, a0.clone()).unwrap();
        let s = SqrtScalar::new(RatFunc::one(), rad).unwrap();
        assert_eq!(
            s.radicand(),
            &RatFunc::from_poly((&a0 - &a1).mul_ref(&a0))
        );
        assert_eq!(s.coeff(), &RatFunc::new(MultiPoly::one(a0.vars().clone()), a0.clone()).unwrap());
        assert_eq!(s.square(), RatFunc::new(&a0 - &a1, a0).unwrap());
    }
}

//! Reduced rational functions over ℚ.
//!
//! Representation is unique: numerator and denominator coprime, denominator
//! integer-primitive with positive leading coefficient. Equality is
//! therefore structural.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use super::gcd::gcd;
use super::poly::MultiPoly;
use super::symbol::{Symbol, Vars};
use super::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero(format!(
                "rational function with zero denominator (numerator {num})"
            )));
        }
        if num.is_zero() {
            return Ok(RatFunc {
                den: MultiPoly::one(num.vars().clone()),
                num,
            });
        }
        let g = gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let (u, den) = den.unit_and_normalized();
        num = num.scale(&(BigRational::one() / u));
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            den: MultiPoly::one(p.vars().clone()),
            num: p,
        }
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_poly(MultiPoly::from_int(Vars::empty(), n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        RatFunc::from_poly(MultiPoly::constant(Vars::empty(), c))
    }

    pub fn var(name: &str) -> Self {
        RatFunc::from_poly(MultiPoly::sym(name))
    }

    pub fn zero() -> Self {
        RatFunc::from_int(0)
    }

    pub fn one() -> Self {
        RatFunc::from_int(1)
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        Some(self.num.constant_value()? / self.den.constant_value()?)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        let num = &self.num.mul_ref(&o.den) + &o.num.mul_ref(&self.den);
        let den = self.den.mul_ref(&o.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul_ref(&o.num), self.den.mul_ref(&o.den))
            .expect("nonzero denominator")
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        if o.is_zero() {
            return Err(Error::DivisionByZero("division by zero rational function".into()));
        }
        RatFunc::new(self.num.mul_ref(&o.den), self.den.mul_ref(&o.num))
    }

    pub fn inverse(&self) -> Result<RatFunc> {
        RatFunc::one().div(self)
    }

    pub fn pow(&self, e: i64) -> Result<RatFunc> {
        if e >= 0 {
            Ok(RatFunc {
                num: self.num.pow(e as u32),
                den: self.den.pow(e as u32),
            })
        } else {
            self.inverse()?.pow(-e)
        }
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn derivative(&self, s: &Symbol) -> RatFunc {
        let num = &self.num.derivative(s).mul_ref(&self.den)
            - &self.num.mul_ref(&self.den.derivative(s));
        RatFunc::new(num, self.den.pow(2)).expect("nonzero denominator")
    }

    /// Simultaneous substitution into a rational function.
    pub fn subst(&self, bindings: &[(Symbol, RatFunc)]) -> Result<RatFunc> {
        let n = substitute(&self.num, bindings)?;
        let d = substitute(&self.den, bindings)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero(
                "denominator vanishes identically after substitution".into(),
            ));
        }
        n.div(&d)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exact simultaneous substitution of rational functions into a polynomial.
/// Unbound variables pass through. The common denominator is assembled once,
/// so only a single final reduction happens.
pub fn substitute(p: &MultiPoly, bindings: &[(Symbol, RatFunc)]) -> Result<RatFunc> {
    for (s, _) in bindings {
        if !p.vars().contains(s) && bindings.iter().filter(|(t, _)| t == s).count() > 1 {
            return Err(Error::DegenerateInput(format!("duplicate binding for {s}")));
        }
    }
    let bound: Vec<(usize, &RatFunc)> = bindings
        .iter()
        .filter_map(|(s, v)| p.vars().index_of(s).map(|i| (i, v)))
        .collect();
    if bound.is_empty() {
        return Ok(RatFunc::from_poly(p.clone()));
    }
    if p.is_zero() {
        return Ok(RatFunc::zero());
    }
    let all_poly = bound.iter().all(|(_, v)| v.is_polynomial());

    // degree of p in each bound variable
    let mut max_deg: HashMap<usize, u32> = HashMap::new();
    for (m, _) in p.terms() {
        for (i, _) in &bound {
            let e = m.0[*i];
            let slot = max_deg.entry(*i).or_insert(0);
            if e > *slot {
                *slot = e;
            }
        }
    }

    // power caches for numerators and denominators
    let mut num_pow: HashMap<(usize, u32), MultiPoly> = HashMap::new();
    let mut den_pow: HashMap<(usize, u32), MultiPoly> = HashMap::new();
    let get_pow = |cache: &mut HashMap<(usize, u32), MultiPoly>,
                   base: &MultiPoly,
                   i: usize,
                   e: u32|
     -> MultiPoly {
        if let Some(q) = cache.get(&(i, e)) {
            return q.clone();
        }
        let q = base.pow(e);
        cache.insert((i, e), q.clone());
        q
    };

    let mut acc: Option<MultiPoly> = None;
    for (m, c) in p.terms() {
        // unbound part of the monomial.
        let mut ev = m.0.clone();
        for (i, _) in &bound {
            ev[*i] = 0;
        }
        let mut term = MultiPoly::from_terms(p.vars().clone(), [(ev, c.clone())]);
        for (i, v) in &bound {
            let e = m.0[*i];
            if e > 0 {
                term = term.mul_ref(&get_pow(&mut num_pow, v.num(), *i, e));
            }
            if !all_poly {
                let def = max_deg[i] - e;
                if def > 0 {
                    term = term.mul_ref(&get_pow(&mut den_pow, v.den(), *i, def));
                }
            }
        }
        acc = Some(match acc {
            None => term,
            Some(a) => a.add_ref(&term),
        });
    }
    let num = acc.unwrap();
    if all_poly {
        return Ok(RatFunc::from_poly(num));
    }
    let mut den = MultiPoly::one(p.vars().clone());
    for (i, v) in &bound {
        den = den.mul_ref(&get_pow(&mut den_pow, v.den(), *i, max_deg[i]));
    }
    RatFunc::new(num, den)
}

/// Polynomial-only substitution (all bindings polynomials).
pub fn substitute_poly(p: &MultiPoly, bindings: &[(Symbol, MultiPoly)]) -> MultiPoly {
    let bs: Vec<(Symbol, RatFunc)> = bindings
        .iter()
        .map(|(s, q)| (s.clone(), RatFunc::from_poly(q.clone())))
        .collect();
    let r = substitute(p, &bs).expect("polynomial substitution cannot fail");
    debug_assert!(r.is_polynomial());
    r.num().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_pencil_substitution() {
        // x+y+z+t with t -> s*z gives x+y+(1+s)z
        let vars = Vars::from(["x", "y", "z", "t", "s"]);
        let x = MultiPoly::var(&vars, &"x".into());
        let y = MultiPoly::var(&vars, &"y".into());
        let z = MultiPoly::var(&vars, &"z".into());
        let t = MultiPoly::var(&vars, &"t".into());
        let s = MultiPoly::var(&vars, &"s".into());
        let p = &(&x + &y) + &(&z + &t);
        let r = substitute(&p, &[("t".into(), RatFunc::from_poly(s.mul_ref(&z)))]).unwrap();
        let expect = &(&x + &y) + &(&z + &s.mul_ref(&z));
        assert_eq!(r, RatFunc::from_poly(expect));
    }

    #[test]
    fn identity_binding() {
        let x = MultiPoly::sym("x");
        let r = substitute(&x, &[("x".into(), RatFunc::from_poly(x.clone()))]).unwrap();
        assert_eq!(r, RatFunc::from_poly(x));
    }

    #[test]
    fn rational_binding_reduces() {
        // x^2 with x -> (1+y)/y
        let x = MultiPoly::sym("x");
        let y = MultiPoly::sym("y");
        let one = MultiPoly::one(y.vars().clone());
        let b = RatFunc::new(&one + &y, y.clone()).unwrap();
        let r = substitute(&x.pow(2), &[("x".into(), b)]).unwrap();
        assert_eq!(r, RatFunc::new((&one + &y).pow(2), y.pow(2)).unwrap());
    }

    #[test]
    fn canonical_equality() {
        let x = MultiPoly::sym("x");
        let y = MultiPoly::sym("y");
        let a = RatFunc::new(x.scale_int(2), y.scale_int(4)).unwrap();
        let b = RatFunc::new(x.clone(), y.scale_int(2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(1/2*x)/(y)");
    }

    #[test]
    fn zero_denominator_rejected() {
        let x = MultiPoly::sym("x");
        let z = MultiPoly::zero(x.vars().clone());
        assert!(RatFunc::new(x, z).is_err());
    }
}

//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a map from exponent vectors to nonzero coefficients,
//! ordered by graded lex over the polynomial's variable universe. Binary
//! operations align universes by symbol name, so expressions built from
//! different contexts combine without ceremony.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::symbol::{Symbol, Vars};

/// Exponent vector, aligned with the owning polynomial's variable list.
/// Ordered graded-lex: total degree first, ties broken lexicographically
/// with index 0 most significant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        debug_assert_eq!(self.0.len(), other.0.len());
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| {
                    a.checked_add(*b)
                        .expect("monomial exponent overflow: inputs exceed supported degree")
                })
                .collect(),
        )
    }

    fn try_div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Mono(out))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                for (a, b) in self.0.iter().zip(&other.0) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        // larger exponent on an earlier variable = larger monomial
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

/// Sparse exact multivariate polynomial over ℚ.
#[derive(Clone)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Mono, BigRational>,
}

impl MultiPoly {
    pub fn zero(vars: Vars) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vars, c: BigRational) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; p.vars.len()]), c);
        }
        p
    }

    pub fn from_int(vars: Vars, n: i64) -> Self {
        MultiPoly::constant(vars, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn one(vars: Vars) -> Self {
        MultiPoly::from_int(vars, 1)
    }

    /// The variable `s`, extending the universe if needed.
    pub fn var(vars: &Vars, s: &Symbol) -> Self {
        let vars = vars.with(s);
        let i = vars.index_of(s).unwrap();
        let mut e = vec![0u32; vars.len()];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Mono(e), BigRational::one());
        MultiPoly { vars, terms }
    }

    /// Convenience: variable in a fresh single-symbol universe.
    pub fn sym(name: &str) -> Self {
        let s = Symbol::new(name);
        MultiPoly::var(&Vars::empty(), &s)
    }

    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let n = vars.len();
        let mut p = MultiPoly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent vector length mismatch");
            if !c.is_zero() {
                let m = Mono(e);
                let entry = p.terms.entry(m).or_insert_with(BigRational::zero);
                *entry += c;
                if entry.is_zero() {
                    // re-fetch key: remove zero entries lazily below
                }
            }
        }
        p.terms.retain(|_, c| !c.is_zero());
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1
            && self
                .terms
                .keys()
                .all(|m| m.total_degree() == 0)
    }

    /// For constants, the value (zero polynomial gives 0).
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Degree in one variable; 0 if the variable is absent from the universe.
    pub fn degree_in(&self, s: &Symbol) -> u32 {
        match self.vars.index_of(s) {
            None => 0,
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
        }
    }

    /// Leading (graded-lex max) term.
    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Does the variable actually occur?
    pub fn uses_var(&self, s: &Symbol) -> bool {
        match self.vars.index_of(s) {
            None => false,
            Some(i) => self.terms.keys().any(|m| m.0[i] > 0),
        }
    }

    /// Variables that occur with positive exponent.
    pub fn support(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        for (i, s) in self.vars.iter().enumerate() {
            if self.terms.keys().any(|m| m.0[i] > 0) {
                out.push(s.clone());
            }
        }
        out
    }

    /// Re-express over a universe that contains all of `self`'s variables.
    pub fn aligned_to(&self, vars: &Vars) -> MultiPoly {
        if &self.vars == vars {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|s| {
                vars.index_of(s)
                    .expect("target universe does not contain variable")
            })
            .collect();
        let n = vars.len();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; n];
            for (i, x) in m.0.iter().enumerate() {
                e[map[i]] = *x;
            }
            terms.insert(Mono(e), c.clone());
        }
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    fn binop(&self, other: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if self.vars == other.vars {
            (self.clone(), other.clone())
        } else {
            let vars = self.vars.merge(&other.vars);
            (self.aligned_to(&vars), other.aligned_to(&vars))
        }
    }

    pub fn add_ref(&self, other: &MultiPoly) -> MultiPoly {
        let (mut a, b) = self.binop(other);
        for (m, c) in b.terms {
            let entry = a.terms.entry(m).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                // removal handled after the loop
            }
        }
        a.terms.retain(|_, c| !c.is_zero());
        a
    }

    pub fn sub_ref(&self, other: &MultiPoly) -> MultiPoly {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> MultiPoly {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = -c.clone();
        }
        p
    }

    pub fn mul_ref(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(self.vars.merge(&other.vars));
        }
        let (a, b) = self.binop(other);
        let mut terms: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                let entry = terms.entry(m).or_insert_with(BigRational::zero);
                *entry += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly {
            vars: a.vars,
            terms,
        }
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        let mut p = self.clone();
        for v in p.terms.values_mut() {
            *v *= c;
        }
        p
    }

    pub fn scale_int(&self, n: i64) -> MultiPoly {
        self.scale(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Partial derivative.
    pub fn derivative(&self, s: &Symbol) -> MultiPoly {
        let Some(i) = self.vars.index_of(s) else {
            return MultiPoly::zero(self.vars.clone());
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut ev = m.0.clone();
            ev[i] = e - 1;
            let coeff = c * BigRational::from_integer(BigInt::from(e));
            let entry = terms.entry(Mono(ev)).or_insert_with(BigRational::zero);
            *entry += coeff;
        }
        terms.retain(|_, c: &mut BigRational| !c.is_zero());
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Exact division: `self = q * d` with no remainder, else `None`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MultiPoly::zero(self.vars.merge(&d.vars)));
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&(BigRational::one() / c)));
        }
        let (mut r, d) = self.binop(d);
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        let mut q = MultiPoly::zero(r.vars.clone());
        while !r.is_zero() {
            let (rm, rc) = {
                let (m, c) = r.leading().unwrap();
                (m.clone(), c.clone())
            };
            let qm = rm.try_div(&dm)?;
            let qc = rc / &dc;
            // r -= (qc * qm) * d
            let mut t = MultiPoly::zero(r.vars.clone());
            t.terms.insert(qm.clone(), qc.clone());
            r = r.sub_ref(&t.mul_ref(&d));
            let entry = q.terms.entry(qm).or_insert_with(BigRational::zero);
            *entry += qc;
        }
        q.terms.retain(|_, c| !c.is_zero());
        Some(q)
    }

    /// Exact order of divisibility by `d` (None means `self` is zero).
    pub fn valuation(&self, d: &MultiPoly) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut v = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(d) {
            v += 1;
            cur = q;
        }
        Some(v)
    }

    /// Rational content: positive c with self = c * (integer-primitive poly).
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_bigint_gcd(&num_gcd, c.numer());
            den_lcm = num_bigint_lcm(&den_lcm, c.denom());
        }
        BigRational::new(num_gcd, den_lcm)
    }

    /// Divide out the content and make the leading coefficient positive.
    /// The canonical representative of the scalar class of `self`.
    pub fn normalized(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.scale(&(BigRational::one() / c))
    }

    /// (content-with-sign, normalized): self = unit * normalized.
    pub fn unit_and_normalized(&self) -> (BigRational, MultiPoly) {
        if self.is_zero() {
            return (BigRational::zero(), self.clone());
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        (c.clone(), self.scale(&(BigRational::one() / c)))
    }

    /// Per-variable minimum exponents over all terms: the largest monomial
    /// dividing the polynomial.
    pub fn monomial_content(&self) -> Option<Mono> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut min = first.0.clone();
        for m in it {
            for (a, b) in min.iter_mut().zip(&m.0) {
                if *b < *a {
                    *a = *b;
                }
            }
        }
        Some(Mono(min))
    }

    /// Divide by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Mono) -> MultiPoly {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let q = e.try_div(m).expect("monomial divides every term");
            terms.insert(q, c.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Substitute integer values for every variable in the support except
    /// `keep`; used for cheap exact degree witnesses.
    pub fn eval_except(&self, keep: &Symbol, values: &dyn Fn(usize) -> i64) -> MultiPoly {
        let mut point: Vec<Option<BigRational>> = vec![None; self.vars.len()];
        for (i, s) in self.vars.iter().enumerate() {
            if s != keep {
                point[i] = Some(BigRational::from_integer(BigInt::from(values(i))));
            }
        }
        let keep_idx = self.vars.index_of(keep);
        let mut terms: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut e = vec![0u32; self.vars.len()];
            for (i, &exp) in m.0.iter().enumerate() {
                match &point[i] {
                    Some(v) => {
                        for _ in 0..exp {
                            coeff *= v;
                        }
                    }
                    None => e[i] = exp,
                }
            }
            let _ = keep_idx;
            let entry = terms.entry(Mono(e)).or_insert_with(BigRational::zero);
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Coefficients of powers of `s`: index = exponent, entries are
    /// polynomials not involving `s`.
    pub fn coeffs_in(&self, s: &Symbol) -> Vec<MultiPoly> {
        let d = self.degree_in(s) as usize;
        let mut out = vec![MultiPoly::zero(self.vars.clone()); d + 1];
        let Some(i) = self.vars.index_of(s) else {
            out[0] = self.clone();
            return out;
        };
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            let mut ev = m.0.clone();
            ev[i] = 0;
            let entry = out[e]
                .terms
                .entry(Mono(ev))
                .or_insert_with(BigRational::zero);
            *entry += c.clone();
        }
        for p in &mut out {
            p.terms.retain(|_, c| !c.is_zero());
        }
        out
    }

    /// Rebuild from `coeffs_in` output.
    pub fn from_coeffs_in(vars: &Vars, s: &Symbol, coeffs: &[MultiPoly]) -> MultiPoly {
        let vars = vars.with(s);
        let x = MultiPoly::var(&vars, s);
        let mut acc = MultiPoly::zero(vars);
        for (e, c) in coeffs.iter().enumerate() {
            acc = acc.add_ref(&c.aligned_to(&acc.vars().merge(c.vars())).mul_ref(&x.pow(e as u32)));
        }
        acc
    }

    /// Substitute a polynomial for a single variable.
    pub fn subst_var(&self, s: &Symbol, value: &MultiPoly) -> MultiPoly {
        if !self.uses_var(s) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(s);
        let mut acc = MultiPoly::zero(self.vars.clone());
        // Horner
        for c in coeffs.iter().rev() {
            acc = acc.mul_ref(value).add_ref(c);
        }
        acc
    }

    /// Evaluate at rational values for every variable in the universe.
    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        assert_eq!(values.len(), self.vars.len());
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.0.iter().enumerate() {
                for _ in 0..*e {
                    t *= &values[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Is the polynomial homogeneous of the given degree in the listed
    /// variables (all terms carry that exact total degree in them)?
    pub fn is_homogeneous_in(&self, vars: &[Symbol], degree: u32) -> bool {
        let idx: Vec<Option<usize>> = vars.iter().map(|s| self.vars.index_of(s)).collect();
        self.terms.keys().all(|m| {
            let d: u32 = idx.iter().map(|i| i.map(|i| m.0[i]).unwrap_or(0)).sum();
            d == degree
        })
    }
}

fn num_bigint_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.gcd(b)
}

fn num_bigint_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = self.binop(other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_ref(rhs)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.sub_ref(rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.neg_ref()
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text form: terms in descending graded lex, `*` products,
    /// `^` powers, coefficients as integers or `a/b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.total_degree() == 0 {
                parts.push(fmt_coeff(&abs));
            }
            for (i, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.vars.get(i).to_string()),
                    _ => parts.push(format!("{}^{}", self.vars.get(i), e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> (MultiPoly, MultiPoly, MultiPoly) {
        let vars = Vars::from(["x", "y", "z"]);
        let x = MultiPoly::var(&vars, &Symbol::new("x"));
        let y = MultiPoly::var(&vars, &Symbol::new("y"));
        let z = MultiPoly::var(&vars, &Symbol::new("z"));
        (x, y, z)
    }

    #[test]
    fn difference_of_squares() {
        let (x, y, _) = xyz();
        let lhs = (&x + &y).mul_ref(&(&x - &y));
        let rhs = &x.pow(2) - &y.pow(2);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "x^2 - y^2");
    }

    #[test]
    fn elementary_symmetric_expansion() {
        // (t+a)(t+b)(t+c) = t^3 + (a+b+c)t^2 + (ab+ac+bc)t + abc
        let vars = Vars::from(["t", "a", "b", "c"]);
        let t = MultiPoly::var(&vars, &Symbol::new("t"));
        let a = MultiPoly::var(&vars, &Symbol::new("a"));
        let b = MultiPoly::var(&vars, &Symbol::new("b"));
        let c = MultiPoly::var(&vars, &Symbol::new("c"));
        let p = (&t + &a).mul_ref(&(&t + &b)).mul_ref(&(&t + &c));
        let e1 = &(&a + &b) + &c;
        let e2 = &(&a.mul_ref(&b) + &a.mul_ref(&c)) + &b.mul_ref(&c);
        let e3 = a.mul_ref(&b).mul_ref(&c);
        let expect = &(&t.pow(3) + &e1.mul_ref(&t.pow(2))) + &(&e2.mul_ref(&t) + &e3);
        assert_eq!(p, expect);
    }

    #[test]
    fn mixed_universe_arithmetic() {
        let x1 = MultiPoly::sym("x");
        let vars = Vars::from(["y", "x"]);
        let x2 = MultiPoly::var(&vars, &Symbol::new("x"));
        let y = MultiPoly::var(&vars, &Symbol::new("y"));
        assert_eq!(x1, x2);
        let s = &x1 + &y;
        assert_eq!(s.degree_in(&Symbol::new("y")), 1);
    }

    #[test]
    fn exact_division() {
        let (x, y, z) = xyz();
        let p = (&x + &y).pow(3).mul_ref(&(&x - &z));
        let q = p.div_exact(&(&x + &y).pow(2)).unwrap();
        assert_eq!(q, (&x + &y).mul_ref(&(&x - &z)));
        assert!(p.div_exact(&(&x + &z)).is_none());
    }

    #[test]
    fn valuation_counts_multiplicity() {
        let (x, y, _) = xyz();
        let p = (&x + &y).pow(4).mul_ref(&x);
        assert_eq!(p.valuation(&(&x + &y)), Some(4));
        assert_eq!(p.valuation(&x), Some(1));
    }

    #[test]
    fn normalization_is_primitive_and_positive() {
        let (x, y, _) = xyz();
        let p = (&x + &y).scale(&BigRational::new(BigInt::from(-6), BigInt::from(4)));
        let n = p.normalized();
        assert_eq!(n, &x + &y);
        let (u, m) = p.unit_and_normalized();
        assert_eq!(m.scale(&u), p);
    }

    #[test]
    fn display_is_canonical() {
        let (x, y, z) = xyz();
        let p = &(&x.pow(2).scale_int(3) - &y.mul_ref(&z).scale_int(2)) + &MultiPoly::from_int(x.vars().clone(), 1);
        assert_eq!(p.to_string(), "3*x^2 - 2*y*z + 1");
    }
}

//! Points of the projective line over a function field, cross-ratios,
//! and Möbius transformations.

use std::fmt;

use super::poly::MultiPoly;
use super::ratfunc::RatFunc;
use super::symbol::Symbol;
use super::{Error, Result};

/// A point of ℙ¹ over ℚ(...): (num : den), not both zero.
#[derive(Clone)]
pub struct P1 {
    pub num: RatFunc,
    pub den: RatFunc,
}

impl P1 {
    pub fn new(num: RatFunc, den: RatFunc) -> Result<Self> {
        if num.is_zero() && den.is_zero() {
            return Err(Error::DegenerateInput("(0 : 0) is not a point".into()));
        }
        Ok(P1 { num, den })
    }

    pub fn finite(v: RatFunc) -> Self {
        P1 {
            num: v,
            den: RatFunc::one(),
        }
    }

    pub fn infinity() -> Self {
        P1 {
            num: RatFunc::one(),
            den: RatFunc::zero(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.den.is_zero()
    }

    pub fn to_ratfunc(&self) -> Result<RatFunc> {
        self.num.div(&self.den)
    }

    /// Formal difference as a cross-multiplied determinant:
    /// a/b - c/d ~ ad - cb (denominators cancel in cross-ratios).
    fn det(&self, other: &P1) -> RatFunc {
        self.num.mul(&other.den).sub(&other.num.mul(&self.den))
    }

    pub fn eq_proj(&self, other: &P1) -> bool {
        self.det(other).is_zero()
    }
}

impl From<RatFunc> for P1 {
    fn from(v: RatFunc) -> Self {
        P1::finite(v)
    }
}

impl fmt::Display for P1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) : ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for P1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cross-ratio ((z1-z3)(z2-z4)) / ((z2-z3)(z1-z4)), with infinite entries
/// handled by the usual limit rules (projective determinants).
pub fn cross_ratio(q: &[P1; 4]) -> Result<RatFunc> {
    for i in 0..4 {
        for j in (i + 1)..4 {
            if q[i].eq_proj(&q[j]) {
                return Err(Error::DegenerateQuadruple(format!(
                    "entries {} and {} coincide",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let n = q[0].det(&q[2]).mul(&q[1].det(&q[3]));
    let d = q[1].det(&q[2]).mul(&q[0].det(&q[3]));
    n.div(&d)
}

pub fn cross_ratio_values(q: &[RatFunc; 4]) -> Result<RatFunc> {
    cross_ratio(&[
        P1::finite(q[0].clone()),
        P1::finite(q[1].clone()),
        P1::finite(q[2].clone()),
        P1::finite(q[3].clone()),
    ])
}

/// The six values a cross-ratio takes under reordering of the four points.
pub fn cross_ratio_orbit(lambda: &RatFunc) -> Result<Vec<RatFunc>> {
    let one = RatFunc::one();
    let l = lambda.clone();
    let om = one.sub(&l); // 1 - λ
    Ok(vec![
        l.clone(),
        l.inverse()?,
        om.clone(),
        om.inverse()?,
        l.div(&om.neg())?, // λ/(λ-1)
        one.sub(&l.inverse()?),
    ])
}

/// Do two cross-ratios agree modulo the six-element orbit?
pub fn same_cross_ratio_orbit(a: &RatFunc, b: &RatFunc) -> bool {
    match cross_ratio_orbit(a) {
        Ok(orbit) => orbit.iter().any(|x| x == b),
        Err(_) => false,
    }
}

/// Möbius transformation w ↦ (aw + b)/(cw + d), ad − bc ≠ 0.
#[derive(Clone)]
pub struct Mobius {
    pub a: RatFunc,
    pub b: RatFunc,
    pub c: RatFunc,
    pub d: RatFunc,
}

impl Mobius {
    pub fn new(a: RatFunc, b: RatFunc, c: RatFunc, d: RatFunc) -> Result<Self> {
        let det = a.mul(&d).sub(&b.mul(&c));
        if det.is_zero() {
            return Err(Error::DegenerateInput("singular Möbius matrix".into()));
        }
        Ok(Mobius { a, b, c, d })
    }

    pub fn identity() -> Self {
        Mobius {
            a: RatFunc::one(),
            b: RatFunc::zero(),
            c: RatFunc::zero(),
            d: RatFunc::one(),
        }
    }

    pub fn apply(&self, p: &P1) -> P1 {
        P1 {
            num: self.a.mul(&p.num).add(&self.b.mul(&p.den)),
            den: self.c.mul(&p.num).add(&self.d.mul(&p.den)),
        }
    }

    pub fn apply_value(&self, v: &RatFunc) -> Result<RatFunc> {
        self.apply(&P1::finite(v.clone())).to_ratfunc()
    }

    /// Image of the coordinate variable: (a·w + b)/(c·w + d).
    pub fn apply_var(&self, w: &Symbol) -> Result<RatFunc> {
        let wp = RatFunc::from_poly(MultiPoly::sym(w.as_str()));
        self.apply(&P1::finite(wp)).to_ratfunc()
    }

    pub fn inverse(&self) -> Mobius {
        Mobius {
            a: self.d.clone(),
            b: self.b.neg(),
            c: self.c.neg(),
            d: self.a.clone(),
        }
    }

    pub fn compose(&self, inner: &Mobius) -> Mobius {
        Mobius {
            a: self.a.mul(&inner.a).add(&self.b.mul(&inner.c)),
            b: self.a.mul(&inner.b).add(&self.b.mul(&inner.d)),
            c: self.c.mul(&inner.a).add(&self.d.mul(&inner.c)),
            d: self.c.mul(&inner.b).add(&self.d.mul(&inner.d)),
        }
    }

    /// Projective equality of the matrices.
    pub fn eq_proj(&self, other: &Mobius) -> bool {
        let m = [&self.a, &self.b, &self.c, &self.d];
        let n = [&other.a, &other.b, &other.c, &other.d];
        for i in 0..4 {
            for j in (i + 1)..4 {
                if !m[i].mul(n[j]).sub(&m[j].mul(n[i])).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_identity_proj(&self) -> bool {
        self.eq_proj(&Mobius::identity())
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "w -> (({})*w + ({})) / (({})*w + ({}))",
            self.a, self.b, self.c, self.d
        )
    }
}

impl fmt::Debug for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The Möbius transform sending (p1, p2, p3) to (0, 1, ∞).
fn to_standard(p: &[P1; 3]) -> Result<Mobius> {
    for i in 0..3 {
        for j in (i + 1)..3 {
            if p[i].eq_proj(&p[j]) {
                return Err(Error::DegenerateQuadruple(
                    "repeated entry in Möbius interpolation".into(),
                ));
            }
        }
    }
    // w ↦ ((w-p1)(p2-p3)) / ((w-p3)(p2-p1)) in projective form
    let d23 = p[1].det(&p[2]);
    let d21 = p[1].det(&p[0]);
    Ok(Mobius {
        a: p[0].den.mul(&d23),
        b: p[0].num.neg().mul(&d23),
        c: p[2].den.mul(&d21),
        d: p[2].num.neg().mul(&d21),
    })
}

/// The unique Möbius transform with m(sourceᵢ) = targetᵢ for three pairs.
pub fn mobius_from_pairs(pairs: &[(P1, P1); 3]) -> Result<Mobius> {
    let src = [pairs[0].0.clone(), pairs[1].0.clone(), pairs[2].0.clone()];
    let tgt = [pairs[0].1.clone(), pairs[1].1.clone(), pairs[2].1.clone()];
    let ms = to_standard(&src)?;
    let mt = to_standard(&tgt)?;
    let m = mt.inverse().compose(&ms);
    Mobius::new(m.a, m.b, m.c, m.d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    #[test]
    fn standard_orbit_of_two() {
        // (0, 1, w, ∞) at w = 2: cross-ratio convention gives a fixed member
        // of the orbit {2, 1/2, -1, 1/2, ...}
        let q = [
            P1::finite(rf(0)),
            P1::finite(rf(1)),
            P1::finite(rf(2)),
            P1::infinity(),
        ];
        let cr = cross_ratio(&q).unwrap();
        // ((0-2)(1-inf))/((1-2)(0-inf)) -> determinant form: (0*1-2*1)(1*0-1*1)/((1*1-2*1)(0*0-1*1)) = (-2)(-1)/((-1)(-1)) = 2
        assert_eq!(cr, rf(2));
        let orbit = cross_ratio_orbit(&cr).unwrap();
        assert!(orbit.contains(&rf(2)));
        assert!(orbit.contains(&RatFunc::from_rational(num_rational::BigRational::new(
            1.into(),
            2.into()
        ))));
        assert!(orbit.contains(&rf(-1)));
    }

    #[test]
    fn degenerate_quadruple_detected() {
        let q = [
            P1::finite(rf(0)),
            P1::finite(rf(0)),
            P1::finite(rf(2)),
            P1::infinity(),
        ];
        assert!(cross_ratio(&q).is_err());
    }

    #[test]
    fn identity_from_fixed_points() {
        let pairs = [
            (P1::finite(rf(0)), P1::finite(rf(0))),
            (P1::finite(rf(1)), P1::finite(rf(1))),
            (P1::infinity(), P1::infinity()),
        ];
        let m = mobius_from_pairs(&pairs).unwrap();
        assert!(m.is_identity_proj());
    }

    #[test]
    fn affine_case() {
        // (0→b, 1→a+b, ∞→∞) is w ↦ aw + b, here a=3, b=5
        let pairs = [
            (P1::finite(rf(0)), P1::finite(rf(5))),
            (P1::finite(rf(1)), P1::finite(rf(8))),
            (P1::infinity(), P1::infinity()),
        ];
        let m = mobius_from_pairs(&pairs).unwrap();
        assert_eq!(m.apply_value(&rf(0)).unwrap(), rf(5));
        assert_eq!(m.apply_value(&rf(1)).unwrap(), rf(8));
        assert_eq!(m.apply_value(&rf(2)).unwrap(), rf(11));
    }

    #[test]
    fn mobius_invariance_of_cross_ratio() {
        let m = Mobius::new(rf(2), rf(3), rf(1), rf(4)).unwrap();
        let q = [
            P1::finite(rf(0)),
            P1::finite(rf(1)),
            P1::finite(rf(5)),
            P1::finite(rf(-7)),
        ];
        let mq = [
            m.apply(&q[0]),
            m.apply(&q[1]),
            m.apply(&q[2]),
            m.apply(&q[3]),
        ];
        assert_eq!(cross_ratio(&q).unwrap(), cross_ratio(&mq).unwrap());
    }
}

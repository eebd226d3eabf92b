//! Square extraction and square-free parts.
//!
//! `extract_square` writes p = root² · squarefree with the squarefree part
//! free of repeated factors. Works on expanded polynomials via gcds with
//! partial derivatives, and on retained factor lists via gcd-free basis
//! refinement (much cheaper for the double-cover pullback computations).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::poly::MultiPoly;
use super::symbol::Vars;

/// A polynomial kept as unit · ∏ factorᵢ^eᵢ with normalized factors.
#[derive(Clone, Debug)]
pub struct Factored {
    pub unit: BigRational,
    pub factors: Vec<(MultiPoly, u32)>,
}

impl Factored {
    pub fn one() -> Self {
        Factored {
            unit: BigRational::one(),
            factors: Vec::new(),
        }
    }

    pub fn of_unit(unit: BigRational) -> Self {
        Factored {
            unit,
            factors: Vec::new(),
        }
    }

    /// Push a factor, folding its scalar content into the unit.
    pub fn push(&mut self, f: &MultiPoly, e: u32) {
        let (u, n) = f.unit_and_normalized();
        for _ in 0..e {
            self.unit *= &u;
        }
        if n.is_zero() {
            self.unit = BigRational::zero();
            self.factors.clear();
            return;
        }
        if !n.is_one() {
            if let Some(slot) = self.factors.iter_mut().find(|(g, _)| *g == n) {
                slot.1 += e;
            } else {
                self.factors.push((n, e));
            }
        }
    }

    pub fn from_factors<'a>(fs: impl IntoIterator<Item = &'a MultiPoly>) -> Self {
        let mut out = Factored::one();
        for f in fs {
            out.push(f, 1);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn expand(&self) -> MultiPoly {
        let vars = self
            .factors
            .iter()
            .fold(Vars::empty(), |v, (f, _)| v.merge(f.vars()));
        let mut acc = MultiPoly::constant(vars, self.unit.clone());
        for (f, e) in &self.factors {
            acc = acc.mul_ref(&f.pow(*e));
        }
        acc
    }

    pub fn mul(&self, other: &Factored) -> Factored {
        let mut out = self.clone();
        out.unit *= &other.unit;
        for (f, e) in &other.factors {
            out.push(f, *e);
        }
        out
    }

    /// Replace the factor list by a pairwise-coprime one (gcd-free basis)
    /// with the same product. Factors themselves may still be non-squarefree.
    pub fn refined(&self) -> Factored {
        let mut fs: Vec<(MultiPoly, u32)> = self.factors.clone();
        let mut unit = self.unit.clone();
        'outer: loop {
            for i in 0..fs.len() {
                for j in (i + 1)..fs.len() {
                    let g = gcd(&fs[i].0, &fs[j].0);
                    if g.is_constant() {
                        continue;
                    }
                    let (fi, ei) = fs[i].clone();
                    let (fj, ej) = fs[j].clone();
                    let qi = fi.div_exact(&g).unwrap();
                    let qj = fj.div_exact(&g).unwrap();
                    // remove j first to keep i valid
                    fs.remove(j);
                    fs.remove(i);
                    let mut add = |f: MultiPoly, e: u32| {
                        let (u, n) = f.unit_and_normalized();
                        for _ in 0..e {
                            unit *= &u;
                        }
                        if !n.is_one() {
                            if let Some(slot) = fs.iter_mut().find(|(h, _)| *h == n) {
                                slot.1 += e;
                            } else {
                                fs.push((n, e));
                            }
                        }
                    };
                    add(qi, ei);
                    add(qj, ej);
                    add(g, ei + ej);
                    continue 'outer;
                }
            }
            break;
        }
        Factored { unit, factors: fs }
    }

    /// Exact square extraction on the factor list: self = root² · rest.
    /// `rest` is squarefree (its expanded form has no repeated factors).
    pub fn extract_square(&self) -> (Factored, Factored) {
        let refined = self.refined();
        let mut root = Factored::one();
        let mut rest = Factored::one();
        let (ur, uq) = rational_square_part(&refined.unit);
        root.unit = ur;
        rest.unit = uq;
        for (f, e) in &refined.factors {
            let (fr, fq) = extract_square(f);
            // f^e = fr^(2e) * fq^e
            root.push(&fr, *e);
            root.push(&fq, e / 2);
            if e % 2 == 1 {
                rest.push(&fq, 1);
            }
        }
        (root, rest)
    }
}

/// Square-free part of an expanded polynomial (char 0): p / gcd(p, ∂p).
pub fn squarefree_part(p: &MultiPoly) -> MultiPoly {
    let g = gcd_all_partials(p);
    p.div_exact(&g).expect("gcd divides").normalized()
}

fn gcd_all_partials(p: &MultiPoly) -> MultiPoly {
    let mut g = p.normalized();
    for v in p.support() {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, &p.derivative(&v));
    }
    g
}

/// Write p = root² · squarefree exactly. Rational content is split with
/// `rational_square_part`, so the squarefree part may carry a sign or a
/// non-square rational.
pub fn extract_square(p: &MultiPoly) -> (MultiPoly, MultiPoly) {
    assert!(!p.is_zero(), "extract_square on zero");
    let (u, pp) = p.unit_and_normalized();
    let (ur, uq) = rational_square_part(&u);
    let vars = p.vars().clone();
    let (pr, pq) = extract_square_primitive(&pp);
    (
        pr.scale(&ur),
        pq.scale(&uq).aligned_to(&vars.merge(pq.vars())),
    )
}

fn extract_square_primitive(p: &MultiPoly) -> (MultiPoly, MultiPoly) {
    if p.is_constant() {
        return (MultiPoly::one(p.vars().clone()), p.clone());
    }
    let g = gcd_all_partials(p);
    if g.is_constant() {
        return (MultiPoly::one(p.vars().clone()), p.clone());
    }
    let w = p.div_exact(&g).expect("gcd divides");
    let (gr, gq) = extract_square_primitive(&g);
    // exponents: e in p; g has e-1; floor(e/2) = floor((e-1)/2) + [e even]
    let root = gr.mul_ref(&gq);
    let rest = w.div_exact(&gq).expect("even-multiplicity part divides w");
    (root, rest)
}

/// n = r² · q with q having no square divisors among small primes; any
/// large square cofactor is detected by an exact integer square root.
fn int_square_part(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_negative());
    if n.is_zero() {
        return (BigInt::zero(), BigInt::one());
    }
    let mut m = n.clone();
    let mut r = BigInt::one();
    let mut q = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1000);
    while p <= limit && &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            r *= &p;
        }
        if e % 2 == 1 {
            q *= &p;
        }
        p += 1;
    }
    let s = m.sqrt();
    if &s * &s == m {
        r *= s;
    } else {
        q *= m;
    }
    (r, q)
}

/// u = r² · q with r > 0; q carries the sign of u.
pub fn rational_square_part(u: &BigRational) -> (BigRational, BigRational) {
    if u.is_zero() {
        return (BigRational::zero(), BigRational::one());
    }
    let neg = u.is_negative();
    let (rn, qn) = int_square_part(&u.numer().abs());
    let (rd, qd) = int_square_part(u.denom());
    let r = BigRational::new(rn, rd);
    let mut q = BigRational::new(qn, qd);
    if neg {
        q = -q;
    }
    (r, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::symbol::Vars;

    #[test]
    fn trivial_square() {
        let vars = Vars::from(["x", "y"]);
        let x = MultiPoly::var(&vars, &"x".into());
        let y = MultiPoly::var(&vars, &"y".into());
        let p = (&x + &y).pow(2).mul_ref(&(&x - &y));
        let (r, q) = extract_square(&p);
        assert_eq!(r, &x + &y);
        assert_eq!(q, &x - &y);
        assert_eq!(r.pow(2).mul_ref(&q), p);
    }

    #[test]
    fn squarefree_fixed_point() {
        let vars = Vars::from(["x", "y"]);
        let x = MultiPoly::var(&vars, &"x".into());
        let y = MultiPoly::var(&vars, &"y".into());
        let p = (&x + &y).mul_ref(&(&x - &y.scale_int(2)));
        let (r, q) = extract_square(&p);
        assert!(r.is_one());
        assert_eq!(q, p);
    }

    #[test]
    fn content_squares_move_to_root() {
        let vars = Vars::from(["x"]);
        let x = MultiPoly::var(&vars, &"x".into());
        let p = x.pow(2).scale_int(-12); // = (2x)^2 * (-3)
        let (r, q) = extract_square(&p);
        assert_eq!(r, x.scale_int(2));
        assert_eq!(q, MultiPoly::from_int(r.vars().clone(), -3));
        assert_eq!(r.pow(2).mul_ref(&q), p);
    }

    #[test]
    fn factored_extraction_matches_expanded() {
        let vars = Vars::from(["x", "y", "z"]);
        let x = MultiPoly::var(&vars, &"x".into());
        let y = MultiPoly::var(&vars, &"y".into());
        let z = MultiPoly::var(&vars, &"z".into());
        // (x+y)*z * (x+y)*(y+z) * z = (x+y)^2 z^2 (y+z)
        let f = Factored::from_factors([
            &(&x + &y).mul_ref(&z),
            &(&x + &y).mul_ref(&(&y + &z)),
            &z,
        ]);
        let (r, q) = f.extract_square();
        let (re, qe) = extract_square(&f.expand());
        assert_eq!(r.expand(), re);
        assert_eq!(q.expand(), qe);
        assert_eq!(qe, &y + &z);
    }
}

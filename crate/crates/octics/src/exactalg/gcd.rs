//! Multivariate polynomial GCD over ℚ.
//!
//! Content/primitive-part recursion on a chosen main variable, with a
//! subresultant polynomial remainder sequence to control coefficient
//! growth. Output is canonical: integer-primitive with positive leading
//! coefficient in graded lex.

use super::poly::MultiPoly;
use super::symbol::Symbol;

/// Greatest common divisor, normalized. `gcd(p, 0) = normalized(p)`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let a = a.normalized();
    let b = b.normalized();
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.vars().merge(b.vars()));
    }
    if a == b {
        return a;
    }
    // Strip the largest monomial factors first; they meet in the gcd's own
    // monomial part and keep everything afterwards cheap.
    let vars = a.vars().merge(b.vars());
    let aa = a.aligned_to(&vars);
    let bb = b.aligned_to(&vars);
    let ma = aa.monomial_content().unwrap();
    let mb = bb.monomial_content().unwrap();
    let mg = super::poly::Mono(
        ma.0.iter()
            .zip(&mb.0)
            .map(|(x, y)| *x.min(y))
            .collect(),
    );
    let a = aa.div_monomial(&ma);
    let b = bb.div_monomial(&mb);
    let with_mono = |g: MultiPoly| -> MultiPoly {
        if mg.total_degree() == 0 {
            return g;
        }
        let mono = MultiPoly::from_terms(
            vars.clone(),
            [(mg.0.clone(), num_rational::BigRational::from_integer(1.into()))],
        );
        g.mul_ref(&mono).normalized()
    };

    // Cheap divisibility wins: common in reduction workloads.
    if b.div_exact(&a).is_some() {
        return with_mono(a);
    }
    if a.div_exact(&b).is_some() {
        return with_mono(b);
    }
    let sa = a.support();
    let sb = b.support();
    let mut common: Vec<Symbol> = sa.iter().filter(|s| sb.contains(s)).cloned().collect();
    if common.is_empty() {
        return with_mono(MultiPoly::one(vars.clone()));
    }
    // Exact degree witnesses: a variable proved absent from the gcd by a
    // degree-preserving integer specialization is dropped from the search.
    if common.len() > 1 {
        common.retain(|v| !witness_excludes(&a, &b, v));
        if common.is_empty() {
            return with_mono(MultiPoly::one(vars.clone()));
        }
    }
    // Main variable: smallest min-degree keeps the remainder sequence short.
    let v = common
        .iter()
        .min_by_key(|s| a.degree_in(s).min(b.degree_in(s)))
        .unwrap()
        .clone();

    let ca = content_in(&a, &v);
    let cb = content_in(&b, &v);
    let c = gcd(&ca, &cb);
    let ppa = a.div_exact(&ca).expect("content divides");
    let ppb = b.div_exact(&cb).expect("content divides");
    let g = subresultant_gcd(&ppa, &ppb, &v);
    with_mono(c.mul_ref(&g).normalized())
}

/// Proof that `v` does not occur in gcd(a, b): specialize every other
/// variable at integers without dropping the degree of `a` in `v`, and find
/// a constant univariate gcd. Writing a = g·ā, a degree-preserving
/// specialization preserves deg_v(g), which then divides the specialized
/// gcd. Inconclusive attempts keep the variable.
fn witness_excludes(a: &MultiPoly, b: &MultiPoly, v: &Symbol) -> bool {
    const POINTS: [i64; 3] = [3, -5, 7];
    let da = a.degree_in(v);
    for (attempt, base) in POINTS.iter().enumerate() {
        let values = move |i: usize| -> i64 {
            // deterministic, distinct-ish small values per variable
            base + (i as i64) * (2 * attempt as i64 + 3) + 1
        };
        let au = a.eval_except(v, &values);
        if au.degree_in(v) != da {
            continue;
        }
        let bu = b.eval_except(v, &values);
        if bu.is_zero() {
            continue;
        }
        let g = univariate_gcd(&au, &bu, v);
        if g.degree_in(v) == 0 {
            return true;
        }
    }
    false
}

/// Subresultant gcd for univariate inputs (constant contents).
fn univariate_gcd(a: &MultiPoly, b: &MultiPoly, v: &Symbol) -> MultiPoly {
    let (x, y) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    if y.degree_in(v) == 0 {
        return MultiPoly::one(a.vars().clone());
    }
    subresultant_gcd(&x.normalized(), &y.normalized(), v)
}

/// GCD of a list (normalized); empty list gives 0.
pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a MultiPoly>) -> MultiPoly {
    let mut it = polys.into_iter();
    let first = match it.next() {
        None => return MultiPoly::zero(super::symbol::Vars::empty()),
        Some(p) => p.clone(),
    };
    let mut acc = first.normalized();
    for p in it {
        if acc.is_one() {
            break;
        }
        acc = gcd(&acc, p);
    }
    acc
}

/// Content with respect to `v`: gcd of the coefficients of powers of `v`.
pub fn content_in(p: &MultiPoly, v: &Symbol) -> MultiPoly {
    let coeffs = p.coeffs_in(v);
    gcd_many(coeffs.iter().filter(|c| !c.is_zero()))
}

/// Primitive part with respect to `v`.
pub fn primitive_part_in(p: &MultiPoly, v: &Symbol) -> MultiPoly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides")
}

fn deg(coeffs: &[MultiPoly]) -> usize {
    debug_assert!(!coeffs.is_empty());
    coeffs.len() - 1
}

fn trim(mut coeffs: Vec<MultiPoly>) -> Vec<MultiPoly> {
    while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
        coeffs.pop();
    }
    coeffs
}

fn is_zero_univ(coeffs: &[MultiPoly]) -> bool {
    coeffs.iter().all(|c| c.is_zero())
}

/// Pseudo-remainder of `a` by `b` in the implicit variable:
/// `lc(b)^(deg a - deg b + 1) * a  mod  b`. Both given as coefficient
/// vectors (index = exponent), `deg a >= deg b >= 1`.
fn prem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let db = deg(b);
    let lb = &b[db];
    let mut r: Vec<MultiPoly> = a.to_vec();
    let mut e = deg(a) as i64 - db as i64 + 1;
    while !is_zero_univ(&r) && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        // r = lb*r - lr*x^(dr-db)*b
        for c in r.iter_mut() {
            *c = c.mul_ref(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            let idx = dr - db + i;
            r[idx] = r[idx].sub_ref(&lr.mul_ref(bc));
        }
        r = trim(r);
        e -= 1;
    }
    let mut mult = MultiPoly::one(lb.vars().clone());
    for _ in 0..e.max(0) {
        mult = mult.mul_ref(lb);
    }
    for c in r.iter_mut() {
        *c = c.mul_ref(&mult);
    }
    trim(r)
}

/// Subresultant PRS gcd of two polynomials primitive with respect to `v`.
fn subresultant_gcd(a: &MultiPoly, b: &MultiPoly, v: &Symbol) -> MultiPoly {
    let vars = a.vars().merge(b.vars());
    let mut f = a.coeffs_in(v);
    let mut g = b.coeffs_in(v);
    if deg(&f) < deg(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    if deg(&g) == 0 {
        // primitive inputs with a constant-in-v member: gcd carries no v
        return MultiPoly::one(vars);
    }
    let one = MultiPoly::one(vars.clone());
    let mut gg = one.clone();
    let mut hh = one.clone();
    loop {
        let delta = (deg(&f) - deg(&g)) as u32;
        let r = prem(&f, &g);
        if is_zero_univ(&r) {
            let gp = MultiPoly::from_coeffs_in(&vars, v, &g);
            return primitive_part_in(&gp, v).normalized();
        }
        if deg(&r) == 0 {
            return one;
        }
        f = g;
        // divisor g*h^delta
        let div = gg.mul_ref(&hh.pow(delta));
        g = r
            .into_iter()
            .map(|c| c.div_exact(&div).expect("subresultant division exact"))
            .collect();
        gg = f[deg(&f)].clone();
        hh = if delta == 0 {
            hh
        } else {
            // h = g^delta / h^(delta-1)
            gg.pow(delta)
                .div_exact(&hh.pow(delta - 1))
                .expect("subresultant h-update exact")
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::symbol::Vars;

    fn xy() -> (MultiPoly, MultiPoly) {
        let vars = Vars::from(["x", "y"]);
        (
            MultiPoly::var(&vars, &"x".into()),
            MultiPoly::var(&vars, &"y".into()),
        )
    }

    #[test]
    fn gcd_difference_of_squares() {
        let (x, y) = xy();
        let a = &x.pow(2) - &y.pow(2);
        let b = &(&x.pow(2) + &x.mul_ref(&y).scale_int(2)) + &y.pow(2);
        assert_eq!(gcd(&a, &b), &x + &y);
    }

    #[test]
    fn gcd_with_zero_normalizes() {
        let (x, y) = xy();
        let p = (&x + &y).scale_int(-4);
        let z = MultiPoly::zero(p.vars().clone());
        assert_eq!(gcd(&p, &z), &x + &y);
        assert_eq!(gcd(&z, &p), &x + &y);
    }

    #[test]
    fn gcd_divides_both() {
        let (x, y) = xy();
        let g = &x.pow(2) + &y;
        let a = g.mul_ref(&(&x - &y)).scale_int(6);
        let b = g.mul_ref(&(&x + &y.scale_int(3)));
        let d = gcd(&a, &b);
        assert!(a.div_exact(&d).is_some());
        assert!(b.div_exact(&d).is_some());
        assert_eq!(d, g.normalized());
    }

    #[test]
    fn gcd_multivariate_content() {
        // gcd(y*(x+y)^2, y^2*(x+y)) = y*(x+y)
        let (x, y) = xy();
        let a = y.mul_ref(&(&x + &y).pow(2));
        let b = y.pow(2).mul_ref(&(&x + &y));
        assert_eq!(gcd(&a, &b), y.mul_ref(&(&x + &y)));
    }

    #[test]
    fn coprime_gives_one() {
        let (x, y) = xy();
        let a = &x + &y;
        let b = &x - &y;
        assert!(gcd(&a, &b).is_one());
    }
}

//! Resultants and discriminants via the Sylvester matrix.
//!
//! Determinants use fraction-free (Bareiss) elimination over the polynomial
//! ring, so everything stays exact.

use super::poly::MultiPoly;
use super::symbol::Symbol;
use super::{Error, Result};

/// Sylvester resultant of `a` and `b` with respect to `v`.
pub fn resultant(a: &MultiPoly, b: &MultiPoly, v: &Symbol) -> Result<MultiPoly> {
    let da = a.degree_in(v) as usize;
    let db = b.degree_in(v) as usize;
    if da == 0 || db == 0 {
        return Err(Error::DegenerateInput(format!(
            "resultant needs positive degree in {v} (got {da} and {db})"
        )));
    }
    let vars = a.vars().merge(b.vars());
    let ac = a.coeffs_in(v);
    let bc = b.coeffs_in(v);
    let n = da + db;
    let zero = MultiPoly::zero(vars.clone());
    let mut m = vec![vec![zero.clone(); n]; n];
    // rows of a-coefficients (descending), shifted
    for r in 0..db {
        for (k, c) in ac.iter().rev().enumerate() {
            m[r][r + k] = c.aligned_to(&vars);
        }
    }
    for r in 0..da {
        for (k, c) in bc.iter().rev().enumerate() {
            m[db + r][r + k] = c.aligned_to(&vars);
        }
    }
    Ok(bareiss_det(m))
}

/// Fraction-free determinant. Divisions are exact by construction.
pub fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        panic!("empty matrix");
    }
    let vars = m[0][0].vars().clone();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut sign = 1i64;
    let mut prev = MultiPoly::one(vars.clone());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return MultiPoly::zero(vars);
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[k][k].mul_ref(&m[i][j]) - &m[i][k].mul_ref(&m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("bareiss division exact");
            }
            m[i][k] = MultiPoly::zero(vars.clone());
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale_int(sign)
}

/// Discriminant of `f` in `v`: (-1)^(d(d-1)/2) res(f, f') / lc(f).
pub fn discriminant(f: &MultiPoly, v: &Symbol) -> Result<MultiPoly> {
    let d = f.degree_in(v);
    if d < 2 {
        return Err(Error::DegenerateInput(format!(
            "discriminant needs degree >= 2 in {v}"
        )));
    }
    let fp = f.derivative(v);
    let r = resultant(f, &fp, v)?;
    let lc = f.coeffs_in(v).pop().unwrap();
    let q = r.div_exact(&lc).expect("leading coefficient divides resultant");
    let sign = if (d as u64 * (d as u64 - 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    };
    Ok(q.scale_int(sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::symbol::Vars;

    #[test]
    fn linear_resultant_sign() {
        // res_t(t - a, t - b) = a - b
        let vars = Vars::from(["t", "a", "b"]);
        let t = MultiPoly::var(&vars, &"t".into());
        let a = MultiPoly::var(&vars, &"a".into());
        let b = MultiPoly::var(&vars, &"b".into());
        let r = resultant(&(&t - &a), &(&t - &b), &"t".into()).unwrap();
        assert_eq!(r, &a - &b);
    }

    #[test]
    fn cubic_discriminant_is_squared_root_differences() {
        // disc_t (t+a)(t+b)(t+c) = (a-b)^2 (a-c)^2 (b-c)^2
        let vars = Vars::from(["t", "a", "b", "c"]);
        let t = MultiPoly::var(&vars, &"t".into());
        let a = MultiPoly::var(&vars, &"a".into());
        let b = MultiPoly::var(&vars, &"b".into());
        let c = MultiPoly::var(&vars, &"c".into());
        let f = (&t + &a).mul_ref(&(&t + &b)).mul_ref(&(&t + &c));
        let disc = discriminant(&f, &"t".into()).unwrap();
        let expect = (&a - &b)
            .pow(2)
            .mul_ref(&(&a - &c).pow(2))
            .mul_ref(&(&b - &c).pow(2));
        assert_eq!(disc, expect);
    }

    #[test]
    fn constant_input_rejected() {
        let vars = Vars::from(["t"]);
        let t = MultiPoly::var(&vars, &"t".into());
        let one = MultiPoly::one(vars);
        assert!(resultant(&t, &one, &"t".into()).is_err());
    }
}

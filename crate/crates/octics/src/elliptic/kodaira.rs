//! Fiber types along discriminant lines.
//!
//! Exact divisibility orders of c₄, c₆, Δ by the line's form, reduced to a
//! minimal model by subtracting (4,6,12) while possible, then classified by
//! the standard residue-characteristic-zero table.

use std::fmt;

use crate::arrangement::LinearForm;
use crate::exactalg::MultiPoly;

use super::{Error, Result, WeierstrassModel};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FiberKind {
    Smooth,
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IIStar,
    IIIStar,
    IVStar,
}

impl fmt::Display for FiberKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberKind::Smooth => write!(f, "smooth"),
            FiberKind::I(n) => write!(f, "I{n}"),
            FiberKind::IStar(n) => write!(f, "I{n}*"),
            FiberKind::II => write!(f, "II"),
            FiberKind::III => write!(f, "III"),
            FiberKind::IV => write!(f, "IV"),
            FiberKind::IIStar => write!(f, "II*"),
            FiberKind::IIIStar => write!(f, "III*"),
            FiberKind::IVStar => write!(f, "IV*"),
        }
    }
}

/// A classified fiber: the line, the minimal valuations, the type.
#[derive(Clone, Debug)]
pub struct KodairaFiber {
    pub line: MultiPoly,
    pub kind: FiberKind,
    /// v(c₄); None when c₄ is identically zero
    pub v_c4: Option<u32>,
    /// v(c₆); None when c₆ is identically zero
    pub v_c6: Option<u32>,
    pub v_delta: u32,
}

fn geq(v: Option<u32>, bound: u32) -> bool {
    v.map(|x| x >= bound).unwrap_or(true)
}

fn classify(v4: Option<u32>, v6: Option<u32>, vd: u32) -> Result<FiberKind> {
    Ok(match () {
        _ if vd == 0 => FiberKind::Smooth,
        _ if v4 == Some(0) => FiberKind::I(vd),
        _ if vd == 2 => FiberKind::II,
        _ if vd == 3 => FiberKind::III,
        _ if vd == 4 => FiberKind::IV,
        _ if vd == 6 && geq(v4, 2) && geq(v6, 3) => FiberKind::IStar(0),
        _ if vd >= 7 && v4 == Some(2) && v6 == Some(3) => FiberKind::IStar(vd - 6),
        _ if vd == 8 && geq(v4, 3) => FiberKind::IVStar,
        _ if vd == 9 && v4 == Some(3) => FiberKind::IIIStar,
        _ if vd == 10 && geq(v4, 4) => FiberKind::IIStar,
        _ => {
            return Err(Error::DegenerateFibration(format!(
                "no fiber type for minimal valuations v(c4)={v4:?} v(c6)={v6:?} v(delta)={vd}"
            )))
        }
    })
}

/// Fiber type of the model at the generic point of the line `l = 0`.
pub fn kodaira_along(m: &WeierstrassModel, line: &LinearForm) -> Result<KodairaFiber> {
    let l = line.poly.clone();
    if l.is_zero() || !m.base_vars.iter().any(|v| l.uses_var(v)) {
        return Err(Error::LineNotLinear(format!(
            "form {l} does not involve the base variables"
        )));
    }
    let deg: u32 = m
        .base_vars
        .iter()
        .map(|v| l.degree_in(v))
        .max()
        .unwrap_or(0);
    if deg != 1 || !l.is_homogeneous_in(&m.base_vars, 1) {
        return Err(Error::LineNotLinear(format!(
            "form {l} is not linear in the base variables"
        )));
    }
    let l = l.normalized();
    let mut v4 = m.c4.valuation(&l);
    let mut v6 = m.c6.valuation(&l);
    let mut vd = m.delta.valuation(&l).ok_or(Error::SingularModel)?;
    // minimal model along the line
    while geq(v4, 4) && geq(v6, 6) && vd >= 12 {
        v4 = v4.map(|x| x - 4);
        v6 = v6.map(|x| x - 6);
        vd -= 12;
    }
    let kind = classify(v4, v6, vd)?;
    Ok(KodairaFiber {
        line: l,
        kind,
        v_c4: v4,
        v_c6: v6,
        v_delta: vd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{RatFunc, Symbol};

    /// Model with indeterminate forms: five through-planes F1..F5, three
    /// residual F6..F8, as free variables.
    fn indeterminate_fivefold() -> WeierstrassModel {
        let f: Vec<MultiPoly> = (1..=8).map(|i| MultiPoly::sym(&format!("F{i}"))).collect();
        super::super::fivefold_model(
            &[
                f[0].clone(),
                f[1].clone(),
                f[2].clone(),
                f[3].clone(),
                f[4].clone(),
            ],
            &[f[5].clone(), f[6].clone(), f[7].clone()],
        )
        .unwrap()
    }

    fn form(p: MultiPoly) -> LinearForm {
        LinearForm { poly: p }
    }

    #[test]
    fn fivefold_along_a_through_plane_is_i0_star() {
        let m = indeterminate_fivefold();
        let f1 = MultiPoly::sym("F1");
        let fib = kodaira_along(&m, &form(f1)).unwrap();
        assert_eq!(fib.v_c4, Some(2));
        assert_eq!(fib.v_c6, Some(3));
        assert_eq!(fib.v_delta, 6);
        assert_eq!(fib.kind, FiberKind::IStar(0));
    }

    #[test]
    fn fivefold_along_a_root_difference_is_i2() {
        let m = indeterminate_fivefold();
        let l = &MultiPoly::sym("F6") - &MultiPoly::sym("F7");
        let fib = kodaira_along(&m, &form(l)).unwrap();
        assert_eq!(fib.v_c4, Some(0));
        assert_eq!(fib.v_delta, 2);
        assert_eq!(fib.kind, FiberKind::I(2));
    }

    #[test]
    fn smooth_when_delta_has_no_zero() {
        let m = indeterminate_fivefold();
        let l = &MultiPoly::sym("F1") - &MultiPoly::sym("F2");
        let fib = kodaira_along(&m, &form(l)).unwrap();
        assert_eq!(fib.v_delta, 0);
        assert_eq!(fib.kind, FiberKind::Smooth);
    }

    #[test]
    fn twist_shifts_types_along_the_twisting_plane() {
        // the bare cubic (residual roots only) is smooth along F1; the
        // twisted model acquires I0* there
        let f: Vec<MultiPoly> = (1..=8).map(|i| MultiPoly::sym(&format!("F{i}"))).collect();
        let bare = super::super::fourfold_model(
            &[
                MultiPoly::one(f[0].vars().clone()),
                MultiPoly::one(f[0].vars().clone()),
                MultiPoly::one(f[0].vars().clone()),
                MultiPoly::one(f[0].vars().clone()),
            ],
            &[f[4].clone(), f[5].clone(), f[6].clone(), f[7].clone()],
        )
        .unwrap();
        let q = f[0]
            .mul_ref(&f[1])
            .mul_ref(&f[2])
            .mul_ref(&f[3]);
        let twisted = bare.quadratic_twist(&q).unwrap();
        assert!(twisted.same_j(&bare));
        let fib = kodaira_along(&twisted, &form(f[0].clone())).unwrap();
        assert_eq!(fib.kind, FiberKind::IStar(0));
        // and the fourfold construction from forms equals this twist
        let four = super::super::fourfold_model(
            &[f[0].clone(), f[1].clone(), f[2].clone(), f[3].clone()],
            &[f[4].clone(), f[5].clone(), f[6].clone(), f[7].clone()],
        )
        .unwrap();
        assert_eq!(four.f6, twisted.f6);
        assert_eq!(four.f12, twisted.f12);
        assert_eq!(four.f18, twisted.f18);
        let _ = RatFunc::one();
        let _ = Symbol::new("t");
    }
}

//! Elliptic fibrations of a double octic: constructions from
//! high-multiplicity points and skew line pairs, Weierstrass invariants,
//! quadratic twists, and fiber types along discriminant lines.

pub mod kodaira;

use std::fmt;

use num_rational::BigRational;

use crate::arrangement::{LinearForm, OcticArrangement};
use crate::exactalg::{substitute_poly, MultiPoly, RatFunc, Symbol};

pub use kodaira::{kodaira_along, FiberKind, KodairaFiber};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("arrangement is not in the normalized shape: {0}")]
    NotNormalized(String),
    #[error("degenerate fibration: {0}")]
    DegenerateFibration(String),
    #[error("singular model: the discriminant vanishes identically")]
    SingularModel,
    #[error("degenerate quadruple: {0}")]
    DegenerateQuadruple(String),
    #[error("not a linear form in the base variables: {0}")]
    LineNotLinear(String),
    #[error(transparent)]
    Algebra(#[from] crate::exactalg::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fibration in the shape u² = t³ + f₆t² + f₁₂t + f₁₈ with base-form
/// coefficients, plus the cached standard invariants.
#[derive(Clone)]
pub struct WeierstrassModel {
    pub base_vars: Vec<Symbol>,
    pub fiber_var: Symbol,
    pub f6: MultiPoly,
    pub f12: MultiPoly,
    pub f18: MultiPoly,
    pub c4: MultiPoly,
    pub c6: MultiPoly,
    pub delta: MultiPoly,
}

impl WeierstrassModel {
    /// Build from the cubic's coefficients and cache c₄, c₆, Δ.
    pub fn from_cubic(
        base_vars: Vec<Symbol>,
        fiber_var: Symbol,
        f6: MultiPoly,
        f12: MultiPoly,
        f18: MultiPoly,
    ) -> Result<Self> {
        // b2 = 4 f6, b4 = 2 f12, b6 = 4 f18
        let b2 = f6.scale_int(4);
        let b4 = f12.scale_int(2);
        let b6 = f18.scale_int(4);
        let c4 = &b2.pow(2) - &b4.scale_int(24);
        let c6 = &(&b2.pow(3).scale_int(-1) + &b2.mul_ref(&b4).scale_int(36)) - &b6.scale_int(216);
        let delta = (&c4.pow(3) - &c6.pow(2))
            .div_exact(&MultiPoly::from_int(c4.vars().clone(), 1728))
            .expect("1728 divides c4^3 - c6^2");
        if delta.is_zero() {
            return Err(Error::SingularModel);
        }
        Ok(WeierstrassModel {
            base_vars,
            fiber_var,
            f6,
            f12,
            f18,
            c4,
            c6,
            delta,
        })
    }

    /// Build from the three roots of the monic cubic (model ∏(t + sᵢ)).
    /// Rational-function roots are admitted; denominators are cleared by
    /// the admissible rescaling t ↦ e²t, u ↦ e³u which leaves J unchanged.
    pub fn from_roots(
        base_vars: Vec<Symbol>,
        fiber_var: Symbol,
        roots: &[RatFunc; 3],
    ) -> Result<Self> {
        let s1 = &roots[0];
        let s2 = &roots[1];
        let s3 = &roots[2];
        let f6 = s1.add(s2).add(s3);
        let f12 = s1.mul(s2).add(&s1.mul(s3)).add(&s2.mul(s3));
        let f18 = s1.mul(s2).mul(s3);
        // smallest e with e^2 f6, e^4 f12, e^6 f18 all polynomial:
        // the lcm of the denominators works
        let mut e = MultiPoly::one(f6.num().vars().clone());
        for d in [f6.den(), f12.den(), f18.den()] {
            let extra = d
                .div_exact(&crate::exactalg::gcd(&e, d))
                .expect("gcd divides");
            e = e.mul_ref(&extra);
        }
        let clear = |f: &RatFunc, k: u32| -> MultiPoly {
            let scaled = RatFunc::from_poly(e.pow(k)).mul(f);
            debug_assert!(scaled.is_polynomial());
            scaled.num().clone()
        };
        WeierstrassModel::from_cubic(base_vars, fiber_var, clear(&f6, 2), clear(&f12, 4), clear(&f18, 6))
    }

    /// Classical j-function c₄³/Δ.
    pub fn j_classical(&self) -> RatFunc {
        RatFunc::new(self.c4.pow(3), self.delta.clone()).expect("delta nonzero")
    }

    /// The J-invariant this crate reports: classical j divided by 1728,
    /// so J = 1 exactly at j = 1728.
    pub fn j_invariant(&self) -> RatFunc {
        self.j_classical()
            .scale(&BigRational::new(1.into(), 1728.into()))
    }

    /// (c₄, c₆, Δ, J).
    pub fn invariants(&self) -> (MultiPoly, MultiPoly, MultiPoly, RatFunc) {
        (
            self.c4.clone(),
            self.c6.clone(),
            self.delta.clone(),
            self.j_invariant(),
        )
    }

    /// Same J-invariant, decided by cross-multiplication (no reduction of
    /// the possibly huge fraction c₄³/Δ).
    pub fn same_j(&self, other: &WeierstrassModel) -> bool {
        let lhs = self.c4.pow(3).mul_ref(&other.delta);
        let rhs = other.c4.pow(3).mul_ref(&self.delta);
        lhs == rhs
    }

    /// Quadratic twist by d: the model of u² = d·(t³+f₆t²+f₁₂t+f₁₈),
    /// rescaled to monic form. J is unchanged; Δ gains d⁶.
    pub fn quadratic_twist(&self, d: &MultiPoly) -> Result<WeierstrassModel> {
        if d.is_zero() {
            return Err(Error::DegenerateFibration("twist by zero".into()));
        }
        let mut base_vars = self.base_vars.clone();
        for s in d.support() {
            if !base_vars.contains(&s) {
                base_vars.push(s);
            }
        }
        WeierstrassModel::from_cubic(
            base_vars,
            self.fiber_var.clone(),
            self.f6.mul_ref(d),
            self.f12.mul_ref(&d.pow(2)),
            self.f18.mul_ref(&d.pow(3)),
        )
    }

    /// The cubic's right-hand side as a polynomial in the fiber variable.
    pub fn rhs(&self) -> MultiPoly {
        let t = MultiPoly::sym(self.fiber_var.as_str());
        let t3 = t.pow(3);
        let t2 = t.pow(2);
        &(&t3 + &self.f6.mul_ref(&t2)) + &(&self.f12.mul_ref(&t) + &self.f18)
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.fiber_var;
        write!(
            f,
            "u^2 = {t}^3 + ({})*{t}^2 + ({})*{t} + ({})",
            self.f6, self.f12, self.f18
        )
    }
}

/// Genus-one model u² = multiplier · ∏(t + rᵢ).
#[derive(Clone, Debug)]
pub struct GenusOneQuartic {
    pub roots: [RatFunc; 4],
    pub multiplier: RatFunc,
}

/// The birational move that sends one ramification point of a genus-one
/// quartic to infinity, producing a cubic model.
#[derive(Clone, Debug)]
pub struct QuarticToCubicMap {
    /// image of the fiber coordinate: K/(t + r_d)
    pub t_image: RatFunc,
    /// u maps to this multiple of u: K/(t + r_d)²
    pub u_multiplier: RatFunc,
}

/// Move the distinguished root to infinity. With roots (a,b,c,d) and
/// distinguished index 3 (the default), the cubic has roots
/// (b−d)(c−d), (a−d)(c−d), (a−d)(b−d); the multiplier becomes a twist.
pub fn quartic_to_cubic(
    q: &GenusOneQuartic,
    distinguished: usize,
) -> Result<(WeierstrassModel, QuarticToCubicMap)> {
    if distinguished >= 4 {
        return Err(Error::DegenerateQuadruple(
            "distinguished root index out of range".into(),
        ));
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            if q.roots[i] == q.roots[j] {
                return Err(Error::DegenerateQuadruple(format!(
                    "roots {} and {} coincide",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    if q.multiplier.is_zero() {
        return Err(Error::DegenerateFibration("zero multiplier".into()));
    }
    let d = &q.roots[distinguished];
    let others: Vec<&RatFunc> = (0..4)
        .filter(|&i| i != distinguished)
        .map(|i| &q.roots[i])
        .collect();
    let (a, b, c) = (others[0], others[1], others[2]);
    let ad = a.sub(d);
    let bd = b.sub(d);
    let cd = c.sub(d);
    // cubic roots in the displayed order
    let s = [bd.mul(&cd), ad.mul(&cd), ad.mul(&bd)];
    let base_model = WeierstrassModel::from_roots(vec![], Symbol::new("t"), &s)?;
    // the quartic multiplier survives as a quadratic twist
    let model = if q.multiplier.is_one() {
        base_model
    } else {
        let m = &q.multiplier;
        // twist by a rational function: clear to a polynomial twist d_n*d_d
        // (same square class)
        let twist = m.num().mul_ref(m.den());
        base_model.quadratic_twist(&twist)?
    };
    let k = ad.mul(&bd).mul(&cd);
    let t = RatFunc::var("t");
    let t_shift = t.add(d);
    let map = QuarticToCubicMap {
        t_image: k.div(&t_shift).map_err(|_| {
            Error::DegenerateQuadruple("distinguished root collides with t".into())
        })?,
        u_multiplier: k.div(&t_shift.mul(&t_shift)).expect("nonzero"),
    };
    Ok((model, map))
}

/// The cubic model attached to a fivefold point, from the five forms
/// through the point and the three residual forms: the fibration
/// u² = (P·F₆ + t)(P·F₇ + t)(P·F₈ + t) with P the product of the five.
pub fn fivefold_model(
    through: &[MultiPoly; 5],
    residual: &[MultiPoly; 3],
) -> Result<WeierstrassModel> {
    let mut p = MultiPoly::one(through[0].vars().clone());
    for f in through {
        p = p.mul_ref(f);
    }
    let roots: [RatFunc; 3] =
        std::array::from_fn(|i| RatFunc::from_poly(p.mul_ref(&residual[i])));
    check_distinct(&roots)?;
    let base_vars = collect_base_vars(through.iter().chain(residual.iter()));
    WeierstrassModel::from_roots(base_vars, Symbol::new("t"), &roots)
}

/// The cubic model attached to a fourfold point: the fibration
/// u² = ∏ (Q(F₅−Fᵢ)(F₅−Fⱼ) + t) with Q the product of the four forms
/// through the point.
pub fn fourfold_model(
    through: &[MultiPoly; 4],
    residual: &[MultiPoly; 4],
) -> Result<WeierstrassModel> {
    let mut q = MultiPoly::one(through[0].vars().clone());
    for f in through {
        q = q.mul_ref(f);
    }
    let (f5, f6, f7, f8) = (&residual[0], &residual[1], &residual[2], &residual[3]);
    let roots: [RatFunc; 3] = [
        RatFunc::from_poly(q.mul_ref(&(f5 - f7).mul_ref(&(f5 - f6)))),
        RatFunc::from_poly(q.mul_ref(&(f5 - f8).mul_ref(&(f5 - f6)))),
        RatFunc::from_poly(q.mul_ref(&(f5 - f8).mul_ref(&(f5 - f7)))),
    ];
    check_distinct(&roots)?;
    let base_vars = collect_base_vars(through.iter().chain(residual.iter()));
    WeierstrassModel::from_roots(base_vars, Symbol::new("t"), &roots)
}

/// The cubic model attached to a pair of skew double lines, from the
/// restrictions Fᵢ = Fᵢ(γ,β,0,0) and Gᵢ = Fᵢ(0,0,α,γ) of the residual
/// forms: u² = t(t − [68][57])(t − [67][58]) with [ij] = FᵢGⱼ − FⱼGᵢ.
pub fn skew_lines_model(f: &[MultiPoly; 4], g: &[MultiPoly; 4]) -> Result<WeierstrassModel> {
    let br = |i: usize, j: usize| -> MultiPoly {
        &f[i].mul_ref(&g[j]) - &f[j].mul_ref(&g[i])
    };
    // indices 0..3 stand for forms 5..8
    let a = br(1, 3).mul_ref(&br(0, 2)); // [68][57]
    let b = br(1, 2).mul_ref(&br(0, 3)); // [67][58]
    let roots: [RatFunc; 3] = [
        RatFunc::zero(),
        RatFunc::from_poly(a.neg_ref()),
        RatFunc::from_poly(b.neg_ref()),
    ];
    check_distinct(&roots)?;
    let base_vars = collect_base_vars(f.iter().chain(g.iter()));
    WeierstrassModel::from_roots(base_vars, Symbol::new("t"), &roots)
}

fn check_distinct(roots: &[RatFunc; 3]) -> Result<()> {
    for i in 0..3 {
        for j in (i + 1)..3 {
            if roots[i] == roots[j] {
                return Err(Error::DegenerateFibration(format!(
                    "cubic roots {} and {} coincide",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

fn collect_base_vars<'a>(forms: impl Iterator<Item = &'a MultiPoly>) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = Vec::new();
    for f in forms {
        for s in f.support() {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// Split a normalized plane G + c·t into (t-free part, t-coefficient).
fn split_t(form: &LinearForm, coords: &[Symbol; 4]) -> (MultiPoly, MultiPoly) {
    let t = &coords[3];
    let cs = form.poly.coeffs_in(t);
    let free = cs[0].clone();
    let c = if cs.len() > 1 {
        cs[1].clone()
    } else {
        MultiPoly::zero(form.poly.vars().clone())
    };
    (free, c)
}

/// Elliptic fibration from a fivefold point on a point-normalized
/// arrangement: planes 1–5 must omit the last coordinate and planes 6–8
/// carry it with nonzero coefficient.
pub fn from_fivefold(arr: &OcticArrangement) -> Result<WeierstrassModel> {
    let coords = &arr.coords;
    let mut through: Vec<MultiPoly> = Vec::new();
    let mut residual: Vec<RatFunc> = Vec::new();
    for (i, p) in arr.planes.iter().enumerate() {
        let (free, c) = split_t(p, coords);
        if i < 5 {
            if !c.is_zero() {
                return Err(Error::NotNormalized(format!(
                    "plane {} should omit {}",
                    i + 1,
                    coords[3]
                )));
            }
            through.push(free);
        } else {
            if c.is_zero() {
                return Err(Error::NotNormalized(format!(
                    "plane {} should carry {}",
                    i + 1,
                    coords[3]
                )));
            }
            residual.push(RatFunc::new(free, c)?);
        }
    }
    if residual[0] == residual[1] || residual[0] == residual[2] || residual[1] == residual[2] {
        return Err(Error::DegenerateFibration(
            "two residual planes restrict to the same form".into(),
        ));
    }
    let mut p = MultiPoly::one(through[0].vars().clone());
    for f in &through {
        p = p.mul_ref(f);
    }
    let pr = RatFunc::from_poly(p);
    let roots: [RatFunc; 3] = std::array::from_fn(|i| pr.mul(&residual[i]));
    let base_vars = collect_base_vars(through.iter());
    WeierstrassModel::from_roots(base_vars, Symbol::new("t"), &roots)
}

/// Elliptic fibration from a fourfold point on a point-normalized
/// arrangement: planes 1–4 omit the last coordinate, planes 5–8 carry it.
pub fn from_fourfold(arr: &OcticArrangement) -> Result<WeierstrassModel> {
    let coords = &arr.coords;
    let mut through: Vec<MultiPoly> = Vec::new();
    let mut residual: Vec<RatFunc> = Vec::new();
    for (i, p) in arr.planes.iter().enumerate() {
        let (free, c) = split_t(p, coords);
        if i < 4 {
            if !c.is_zero() {
                return Err(Error::NotNormalized(format!(
                    "plane {} should omit {}",
                    i + 1,
                    coords[3]
                )));
            }
            through.push(free);
        } else {
            if c.is_zero() {
                return Err(Error::NotNormalized(format!(
                    "plane {} should carry {}",
                    i + 1,
                    coords[3]
                )));
            }
            residual.push(RatFunc::new(free, c)?);
        }
    }
    let mut q = MultiPoly::one(through[0].vars().clone());
    for f in &through {
        q = q.mul_ref(f);
    }
    let qr = RatFunc::from_poly(q);
    let (f5, f6, f7, f8) = (&residual[0], &residual[1], &residual[2], &residual[3]);
    let roots: [RatFunc; 3] = [
        qr.mul(&f5.sub(f7)).mul(&f5.sub(f6)),
        qr.mul(&f5.sub(f8)).mul(&f5.sub(f6)),
        qr.mul(&f5.sub(f8)).mul(&f5.sub(f7)),
    ];
    check_distinct(&roots)?;
    let base_vars = collect_base_vars(through.iter());
    WeierstrassModel::from_roots(base_vars, Symbol::new("t"), &roots)
}

/// Elliptic fibration from a pair of skew lines on a line-normalized
/// arrangement (first four planes are exactly the coordinate forms).
/// The base is ℙ² with coordinates (α, β, γ).
pub fn from_skew_lines(arr: &OcticArrangement) -> Result<WeierstrassModel> {
    let coords = &arr.coords;
    for (i, c) in coords.iter().enumerate() {
        let expect = MultiPoly::var(arr.planes[i].poly.vars(), c);
        if arr.planes[i].poly != expect {
            return Err(Error::NotNormalized(format!(
                "plane {} must be the coordinate form {}",
                i + 1,
                c
            )));
        }
    }
    let alpha = MultiPoly::sym("alpha");
    let beta = MultiPoly::sym("beta");
    let gamma = MultiPoly::sym("gamma");
    let zero = MultiPoly::zero(alpha.vars().clone());
    let restrict = |p: &MultiPoly, at: [&MultiPoly; 4]| -> MultiPoly {
        substitute_poly(
            p,
            &[
                (coords[0].clone(), at[0].clone()),
                (coords[1].clone(), at[1].clone()),
                (coords[2].clone(), at[2].clone()),
                (coords[3].clone(), at[3].clone()),
            ],
        )
    };
    let mut f: Vec<MultiPoly> = Vec::new();
    let mut g: Vec<MultiPoly> = Vec::new();
    for p in &arr.planes[4..8] {
        f.push(restrict(&p.poly, [&gamma, &beta, &zero, &zero]));
        g.push(restrict(&p.poly, [&zero, &zero, &alpha, &gamma]));
    }
    skew_lines_model(
        &[f[0].clone(), f[1].clone(), f[2].clone(), f[3].clone()],
        &[g[0].clone(), g[1].clone(), g[2].clone(), g[3].clone()],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{discriminant, Vars};

    fn rat(n: i64, d: i64) -> RatFunc {
        RatFunc::from_rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn cm_curve_invariants() {
        // u² = t³ - t: Δ = 64, j = 1728, J = 1
        let vars = Vars::empty();
        let f6 = MultiPoly::zero(vars.clone());
        let f12 = MultiPoly::from_int(vars.clone(), -1);
        let f18 = MultiPoly::zero(vars.clone());
        let m = WeierstrassModel::from_cubic(vec![], Symbol::new("t"), f6, f12, f18).unwrap();
        assert_eq!(m.delta, MultiPoly::from_int(Vars::empty(), 64));
        assert_eq!(m.j_classical(), RatFunc::from_int(1728));
        assert_eq!(m.j_invariant(), RatFunc::one());
    }

    #[test]
    fn j_zero_curve() {
        // u² = t³ - 1: c₄ = 0, J = 0
        let vars = Vars::empty();
        let m = WeierstrassModel::from_cubic(
            vec![],
            Symbol::new("t"),
            MultiPoly::zero(vars.clone()),
            MultiPoly::zero(vars.clone()),
            MultiPoly::from_int(vars, -1),
        )
        .unwrap();
        assert!(m.c4.is_zero());
        assert!(m.j_invariant().is_zero());
    }

    #[test]
    fn delta_is_16_times_cubic_discriminant() {
        let a = MultiPoly::sym("a");
        let b = MultiPoly::sym("b");
        let c = MultiPoly::sym("c");
        let roots: [RatFunc; 3] = [
            RatFunc::from_poly(a),
            RatFunc::from_poly(b),
            RatFunc::from_poly(c),
        ];
        let m = WeierstrassModel::from_roots(vec!["a".into(), "b".into(), "c".into()], Symbol::new("t"), &roots)
            .unwrap();
        let disc = discriminant(&m.rhs(), &Symbol::new("t")).unwrap();
        assert_eq!(m.delta, disc.scale_int(16));
    }

    #[test]
    fn quartic_move_matches_display() {
        // (a,b,c,d) = (1,2,3,0) moves d to infinity: cubic roots (6, 3, 2)
        let q = GenusOneQuartic {
            roots: [
                RatFunc::from_int(1),
                RatFunc::from_int(2),
                RatFunc::from_int(3),
                RatFunc::from_int(0),
            ],
            multiplier: RatFunc::one(),
        };
        let (m, map) = quartic_to_cubic(&q, 3).unwrap();
        let expect = WeierstrassModel::from_roots(
            vec![],
            Symbol::new("t"),
            &[RatFunc::from_int(6), RatFunc::from_int(3), RatFunc::from_int(2)],
        )
        .unwrap();
        assert_eq!(m.f6, expect.f6);
        assert_eq!(m.f12, expect.f12);
        assert_eq!(m.f18, expect.f18);
        // K = (a-d)(b-d)(c-d) = 6, map t -> 6/(t+0)
        assert_eq!(map.t_image, RatFunc::from_int(6).div(&RatFunc::var("t")).unwrap());
    }

    #[test]
    fn quartic_move_is_symmetric_in_the_non_distinguished_roots() {
        let q1 = GenusOneQuartic {
            roots: [rat(1, 1), rat(5, 2), rat(-3, 1), rat(7, 3)],
            multiplier: RatFunc::one(),
        };
        let q2 = GenusOneQuartic {
            roots: [rat(5, 2), rat(-3, 1), rat(1, 1), rat(7, 3)],
            multiplier: RatFunc::one(),
        };
        let (m1, _) = quartic_to_cubic(&q1, 3).unwrap();
        let (m2, _) = quartic_to_cubic(&q2, 3).unwrap();
        // permuting a,b,c permutes the roots: same cubic
        assert_eq!(m1.f6, m2.f6);
        assert_eq!(m1.f12, m2.f12);
        assert_eq!(m1.f18, m2.f18);
    }

    #[test]
    fn twist_preserves_j_and_scales_delta() {
        let a = MultiPoly::sym("a");
        let roots: [RatFunc; 3] = [
            RatFunc::from_int(0),
            RatFunc::from_int(1),
            RatFunc::from_poly(a.clone()),
        ];
        let m = WeierstrassModel::from_roots(vec!["a".into()], Symbol::new("t"), &roots).unwrap();
        let d = &a + &MultiPoly::from_int(a.vars().clone(), 2);
        let tw = m.quadratic_twist(&d).unwrap();
        assert!(tw.same_j(&m));
        assert_eq!(tw.j_invariant(), m.j_invariant());
        assert_eq!(tw.delta, m.delta.mul_ref(&d.pow(6)));
        let same = m.quadratic_twist(&MultiPoly::one(a.vars().clone())).unwrap();
        assert_eq!(same.f6, m.f6);
        assert_eq!(same.delta, m.delta);
    }
}

//! K3 fibrations of a double octic: Kummer fibrations from disjoint plane
//! quadruples, double-sextic families from double/triple lines, double
//! quadrics from skew line pairs, and the elliptic fibrations cut out on
//! a double quadric by the pencil through a node of its branch curve.

use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::arrangement::{
    self, analyze, normalize_skew_lines, IncidenceReport, OcticArrangement,
};
use crate::elliptic::{self, GenusOneQuartic, WeierstrassModel};
use crate::exactalg::{substitute_poly, Factored, MultiPoly, RatFunc, Symbol, Vars};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("arrangement is not in the normalized shape: {0}")]
    NotNormalized(String),
    #[error("bad seed: {0}")]
    BadSeed(String),
    #[error("not a node: {0}")]
    NotANode(String),
    #[error(transparent)]
    Arrangement(#[from] arrangement::Error),
    #[error(transparent)]
    Elliptic(#[from] elliptic::Error),
    #[error(transparent)]
    Algebra(#[from] crate::exactalg::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fiberwise quotient data from two disjoint plane quadruples: two double
/// quartics over the common pencil.
#[derive(Clone)]
pub struct KummerFibration {
    /// quartic in the first three coordinates (omits the last)
    pub s1_branch: Vec<MultiPoly>,
    /// quartic in the last three coordinates (omits the first)
    pub s2_branch: Vec<MultiPoly>,
    /// the two forms spanning the pencil of planes through both points
    pub pencil: (Symbol, Symbol),
    pub involution_note: String,
}

impl KummerFibration {
    pub fn s1_product(&self) -> MultiPoly {
        product(&self.s1_branch)
    }

    pub fn s2_product(&self) -> MultiPoly {
        product(&self.s2_branch)
    }
}

fn product(fs: &[MultiPoly]) -> MultiPoly {
    let mut acc = MultiPoly::one(fs[0].vars().clone());
    for f in fs {
        acc = acc.mul_ref(f);
    }
    acc
}

/// Kummer fibration of a two-point-normalized arrangement: planes 1–4 must
/// omit the last coordinate, planes 5–8 the first.
pub fn kummer(arr: &OcticArrangement) -> Result<KummerFibration> {
    let coords = &arr.coords;
    let x = &coords[0];
    let t = &coords[3];
    for (i, p) in arr.planes.iter().enumerate() {
        if i < 4 && p.poly.uses_var(t) {
            return Err(Error::NotNormalized(format!(
                "plane {} involves {t}",
                i + 1
            )));
        }
        if i >= 4 && p.poly.uses_var(x) {
            return Err(Error::NotNormalized(format!(
                "plane {} involves {x}",
                i + 1
            )));
        }
    }
    Ok(KummerFibration {
        s1_branch: arr.planes[0..4].iter().map(|p| p.poly.clone()).collect(),
        s2_branch: arr.planes[4..8].iter().map(|p| p.poly.clone()).collect(),
        pencil: (coords[1].clone(), coords[2].clone()),
        involution_note: "(S1 x_P1 S2)/(i1 x i2)".to_string(),
    })
}

/// Elliptic surfaces over the common pencil: restrict each branch quartic
/// to the pencil plane (third coordinate = m · second coordinate) and run
/// the genus-one machinery with the fourth ramification point moved away.
pub fn kummer_fiber_elliptic(
    k: &KummerFibration,
    arr: &OcticArrangement,
    pencil_var: &str,
) -> Result<(WeierstrassModel, WeierstrassModel)> {
    let coords = &arr.coords;
    let m = MultiPoly::sym(pencil_var);
    let restrict = |branch: &[MultiPoly], fiber_coord: &Symbol| -> Result<WeierstrassModel> {
        let mut roots: Vec<RatFunc> = Vec::new();
        let mut multiplier = RatFunc::one();
        for f in branch {
            let sub = substitute_poly(
                f,
                &[(coords[2].clone(), m.mul_ref(&MultiPoly::var(f.vars(), &coords[1])))],
            );
            // now a form a·fiber + b·other with a, b in the pencil variable
            let a = coeff_of(&sub, fiber_coord);
            let b = coeff_of(&sub, &coords[1]);
            if a.is_zero() {
                return Err(Error::BadSeed(format!(
                    "branch form {f} degenerates along the pencil"
                )));
            }
            multiplier = multiplier.mul(&RatFunc::from_poly(a.clone()));
            roots.push(RatFunc::new(b, a)?);
        }
        let quartic = GenusOneQuartic {
            roots: [
                roots[0].clone(),
                roots[1].clone(),
                roots[2].clone(),
                roots[3].clone(),
            ],
            multiplier,
        };
        let (model, _) = elliptic::quartic_to_cubic(&quartic, 3)?;
        Ok(model)
    };
    let m1 = restrict(&k.s1_branch, &coords[0])?;
    let m2 = restrict(&k.s2_branch, &coords[3])?;
    Ok((m1, m2))
}

fn coeff_of(p: &MultiPoly, v: &Symbol) -> MultiPoly {
    let mut cs = p.coeffs_in(v);
    if cs.len() > 1 {
        cs.remove(1)
    } else {
        MultiPoly::zero(p.vars().clone())
    }
}

/// A pencil-of-planes K3 family: the double sextic over the line through
/// two arrangement planes.
#[derive(Clone)]
pub struct SexticFamily {
    pub parameter: Symbol,
    /// the six moving lines (branch of the generic fiber)
    pub fiber_branch: Vec<MultiPoly>,
    pub fiber_at_infinity: Vec<MultiPoly>,
}

impl SexticFamily {
    pub fn branch_product(&self) -> MultiPoly {
        product(&self.fiber_branch)
    }
}

/// Double-sextic family seeded by the line of planes (i, j): coordinates
/// must be normalized so plane i is the third coordinate and plane j the
/// fourth. The substitution t ↦ s·z restricts the six residual planes to
/// the moving plane of the pencil.
pub fn sextic_family(
    arr: &OcticArrangement,
    rep: &IncidenceReport,
    line_index: usize,
) -> Result<SexticFamily> {
    let line = rep
        .lines
        .get(line_index)
        .ok_or_else(|| Error::BadSeed(format!("no line with index {line_index}")))?;
    if line.multiplicity > 3 {
        return Err(Error::BadSeed(format!(
            "line has multiplicity {}, the fibers would not be K3",
            line.multiplicity
        )));
    }
    let (i, j) = line.rep;
    // normalize: the two defining planes become z and t
    let coords = &arr.coords;
    let ci = arr.planes[i].coeffs(coords);
    let cj = arr.planes[j].coeffs(coords);
    // complete to a basis with standard coordinate forms
    let mut rows: Vec<[RatFunc; 4]> = Vec::new();
    for k in 0..4 {
        let cand: [RatFunc; 4] =
            std::array::from_fn(|c| if c == k { RatFunc::one() } else { RatFunc::zero() });
        if rows.len() < 2 && rank_with(&rows, &[&ci, &cj], &cand) == rows.len() + 3 {
            rows.push(cand);
        }
    }
    if rows.len() < 2 {
        return Err(Error::BadSeed("could not complete the coordinate basis".into()));
    }
    let to_rf = |c: &[MultiPoly; 4]| -> [RatFunc; 4] {
        std::array::from_fn(|k| RatFunc::from_poly(c[k].clone()))
    };
    let change = arrangement::ProjectiveChange::from_rows([
        rows[0].clone(),
        rows[1].clone(),
        to_rf(&ci),
        to_rf(&cj),
    ])?;
    let s = Symbol::new("s");
    let z = &coords[2];
    let t = &coords[3];
    let mut fiber_branch = Vec::new();
    let mut fiber_at_infinity = Vec::new();
    for (k, p) in arr.planes.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        let moved = change.transform_form(p, coords)?;
        let sz = MultiPoly::sym("s").mul_ref(&MultiPoly::var(moved.poly.vars(), z));
        fiber_branch.push(substitute_poly(&moved.poly, &[(t.clone(), sz)]));
        let zero = MultiPoly::zero(moved.poly.vars().clone());
        fiber_at_infinity.push(substitute_poly(&moved.poly, &[(z.clone(), zero)]));
    }
    Ok(SexticFamily {
        parameter: s,
        fiber_branch,
        fiber_at_infinity,
    })
}

fn rank_with(
    rows: &[[RatFunc; 4]],
    fixed: &[&[MultiPoly; 4]],
    cand: &[RatFunc; 4],
) -> usize {
    let mut m: Vec<Vec<RatFunc>> = rows.iter().map(|r| r.to_vec()).collect();
    for f in fixed {
        m.push(f.iter().map(|p| RatFunc::from_poly(p.clone())).collect());
    }
    m.push(cand.to_vec());
    let nrows = m.len();
    let mut rank = 0;
    for col in 0..4 {
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in (rank + 1)..nrows {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].div(&m[rank][col]).expect("nonzero pivot");
            for c in col..4 {
                m[r][c] = m[r][c].sub(&f.mul(&m[rank][c]));
            }
        }
        rank += 1;
    }
    rank
}

/// Degenerations of a double-sextic family: parameter values where two of
/// the six lines coincide or four become concurrent.
#[derive(Clone, Debug)]
pub enum SexticDegeneration {
    Coincident {
        lines: (usize, usize),
        condition: MultiPoly,
        rational_roots: Vec<BigRational>,
    },
    Concurrent {
        lines: [usize; 4],
        condition: MultiPoly,
        rational_roots: Vec<BigRational>,
    },
}

/// Enumerate the special fibers of a sextic family (parameter-free input:
/// conditions are univariate in the family parameter).
pub fn sextic_special_fibers(
    f: &SexticFamily,
    base_coords: [&Symbol; 3],
) -> Result<Vec<SexticDegeneration>> {
    let s = &f.parameter;
    let coeffs: Vec<[MultiPoly; 3]> = f
        .fiber_branch
        .iter()
        .map(|l| std::array::from_fn(|k| coeff_of(l, base_coords[k])))
        .collect();
    let mut out = Vec::new();
    let n = coeffs.len();
    // coincidence: all 2x2 minors vanish
    for i in 0..n {
        for j in (i + 1)..n {
            let mut minors = Vec::new();
            for p in 0..3 {
                for q in (p + 1)..3 {
                    minors.push(
                        &coeffs[i][p].mul_ref(&coeffs[j][q])
                            - &coeffs[i][q].mul_ref(&coeffs[j][p]),
                    );
                }
            }
            let g = crate::exactalg::gcd_many(minors.iter().filter(|m| !m.is_zero()));
            if g.uses_var(s) {
                let roots = rational_roots(&g, s);
                out.push(SexticDegeneration::Coincident {
                    lines: (i, j),
                    condition: g,
                    rational_roots: roots,
                });
            }
        }
    }
    // concurrency of four lines: all four 3x3 minors vanish
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for d in (c + 1)..n {
                    let idx = [a, b, c, d];
                    let mut minors = Vec::new();
                    for skip in 0..4 {
                        let rows: Vec<usize> =
                            idx.iter().enumerate().filter(|(r, _)| *r != skip).map(|(_, &i)| i).collect();
                        minors.push(det3_owned([
                            coeffs[rows[0]].clone(),
                            coeffs[rows[1]].clone(),
                            coeffs[rows[2]].clone(),
                        ]));
                    }
                    if minors.iter().all(|m| m.is_zero()) {
                        // concurrent for every parameter value: genericity
                        // is already broken; report with condition 0
                        continue;
                    }
                    let g = crate::exactalg::gcd_many(minors.iter().filter(|m| !m.is_zero()));
                    if g.uses_var(s) {
                        let roots = rational_roots(&g, s);
                        out.push(SexticDegeneration::Concurrent {
                            lines: idx,
                            condition: g,
                            rational_roots: roots,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn det3_owned(rows: [[MultiPoly; 3]; 3]) -> MultiPoly {
    let m: [[&MultiPoly; 3]; 3] = [
        [&rows[0][0], &rows[0][1], &rows[0][2]],
        [&rows[1][0], &rows[1][1], &rows[1][2]],
        [&rows[2][0], &rows[2][1], &rows[2][2]],
    ];
    let a = m[0][0].mul_ref(&(&m[1][1].mul_ref(m[2][2]) - &m[1][2].mul_ref(m[2][1])));
    let b = m[0][1].mul_ref(&(&m[1][0].mul_ref(m[2][2]) - &m[1][2].mul_ref(m[2][0])));
    let c = m[0][2].mul_ref(&(&m[1][0].mul_ref(m[2][1]) - &m[1][1].mul_ref(m[2][0])));
    &(&a - &b) + &c
}

/// Rational roots of a univariate polynomial (exact, via divisor search on
/// small leading/trailing integer coefficients).
fn rational_roots(p: &MultiPoly, v: &Symbol) -> Vec<BigRational> {
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};
    let coeffs = p.coeffs_in(v);
    if coeffs.len() < 2 {
        return Vec::new();
    }
    let mut ints: Vec<BigInt> = Vec::new();
    let scale = p.content();
    let pp = p.scale(&(BigRational::one() / scale));
    let coeffs = pp.coeffs_in(v);
    for c in &coeffs {
        match c.constant_value() {
            Some(x) if x.denom().is_one() => ints.push(x.numer().clone()),
            Some(_) => return Vec::new(),
            None => return Vec::new(), // multivariate condition: skip listing
        }
    }
    let trailing = ints.iter().find(|c| !c.is_zero()).cloned().unwrap();
    let leading = ints.last().cloned().unwrap();
    let bound = 10_000i64;
    let small_divisors = |n: &BigInt| -> Vec<i64> {
        let mut out = vec![];
        let abs = n.abs();
        let cap = if abs > BigInt::from(bound) {
            bound
        } else {
            i64::try_from(abs.clone()).unwrap_or(bound)
        };
        for d in 1..=cap {
            if (&abs % BigInt::from(d)).is_zero() {
                out.push(d);
            }
        }
        out
    };
    let mut roots = Vec::new();
    let eval = |x: &BigRational| -> BigRational {
        let mut acc = BigRational::zero();
        for c in ints.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    };
    // zero root
    if ints[0].is_zero() {
        roots.push(BigRational::zero());
    }
    for p in small_divisors(&trailing) {
        for q in small_divisors(&leading) {
            for sign in [1i64, -1] {
                let cand = BigRational::new(BigInt::from(sign * p), BigInt::from(q));
                if eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand.clone());
                }
            }
        }
    }
    roots.sort();
    roots
}

/// A one-parameter family of double covers of ℙ¹×ℙ¹ branched along a
/// bidegree-(4,4) curve, produced from a skew pair of arrangement lines.
#[derive(Clone)]
pub struct QuadricFamily {
    /// family parameter (the pencil coordinate)
    pub lambda: Symbol,
    /// first ruling coordinates (p0 : p1)
    pub p: (Symbol, Symbol),
    /// second ruling coordinates (q0 : q1)
    pub q: (Symbol, Symbol),
    /// branch factors: the λ prefactor first, then the images of the four
    /// residual planes split into irreducible pieces
    pub branch: Factored,
    /// images of the four residual planes before splitting, in plane order
    pub residual_images: Vec<MultiPoly>,
    /// the ordered quadruple of plane indices that became the coordinates
    pub quadruple: [usize; 4],
    /// the substitution realizing x=p0q0, y=p0q1, z=p1q0, t=λp1q1 on the
    /// normalized coordinates
    pub parametrization: Vec<(Symbol, MultiPoly)>,
    /// the normalized arrangement the family was built from
    pub normalized: OcticArrangement,
}

impl QuadricFamily {
    pub fn branch_product(&self) -> MultiPoly {
        self.branch.expand()
    }
}

/// Build the double-quadric family attached to the ordered quadruple
/// (i, j, k, l): the lines are L_ij and L_kl, the normalized coordinates
/// are the four forms in that order, and the quadric substitution is
/// x = p₀q₀, y = p₀q₁, z = p₁q₀, t = λp₁q₁.
pub fn quadric_family(arr: &OcticArrangement, quad: [usize; 4]) -> Result<QuadricFamily> {
    let (norm, _change) = normalize_skew_lines(arr, quad)?;
    let lambda = Symbol::new("l");
    let p0 = Symbol::new("p0");
    let p1 = Symbol::new("p1");
    let q0 = Symbol::new("q0");
    let q1 = Symbol::new("q1");
    let vars = Vars::new(["p0", "p1", "q0", "q1", "l"]);
    let vp0 = MultiPoly::var(&vars, &p0);
    let vp1 = MultiPoly::var(&vars, &p1);
    let vq0 = MultiPoly::var(&vars, &q0);
    let vq1 = MultiPoly::var(&vars, &q1);
    let vl = MultiPoly::var(&vars, &lambda);
    let parametrization = vec![
        (norm.coords[0].clone(), vp0.mul_ref(&vq0)),
        (norm.coords[1].clone(), vp0.mul_ref(&vq1)),
        (norm.coords[2].clone(), vp1.mul_ref(&vq0)),
        (norm.coords[3].clone(), vl.mul_ref(&vp1).mul_ref(&vq1)),
    ];
    let mut branch = Factored::one();
    branch.push(&vl, 1);
    let mut residual_images = Vec::new();
    for p in &norm.planes[4..8] {
        let img = substitute_poly(&p.poly, &parametrization);
        residual_images.push(img.clone());
        for piece in split_bilinear(&img, (&p0, &p1), (&q0, &q1)) {
            branch.push(&piece, 1);
        }
    }
    Ok(QuadricFamily {
        lambda,
        p: (p0, p1),
        q: (q0, q1),
        branch,
        residual_images,
        quadruple: quad,
        parametrization,
        normalized: norm,
    })
}

/// Split a (1,1)-form in (p, q) into irreducible pieces: it factors as
/// (linear in p)·(linear in q) exactly when its 2×2 coefficient
/// determinant vanishes. Forms of bidegree (1,0) or (0,1) pass through.
fn split_bilinear(f: &MultiPoly, p: (&Symbol, &Symbol), q: (&Symbol, &Symbol)) -> Vec<MultiPoly> {
    let dp = f.degree_in(p.0).max(f.degree_in(p.1));
    let dq = f.degree_in(q.0).max(f.degree_in(q.1));
    if dp == 0 || dq == 0 {
        return vec![f.clone()];
    }
    // f = p0·row0 + p1·row1 with rows linear in q
    let row0 = coeff_of(f, p.0);
    let row1 = coeff_of(f, p.1);
    let a = coeff_of(&row0, q.0);
    let b = coeff_of(&row0, q.1);
    let c = coeff_of(&row1, q.0);
    let d = coeff_of(&row1, q.1);
    let det = &a.mul_ref(&d) - &b.mul_ref(&c);
    if !det.is_zero() {
        return vec![f.clone()];
    }
    // rank-1 coefficient matrix: the q-linear factor is the common part of
    // the two rows
    let qfactor = crate::exactalg::gcd(&row0, &row1);
    match f.div_exact(&qfactor) {
        Some(pfactor) => vec![pfactor, qfactor],
        None => vec![f.clone()],
    }
}

/// Elliptic fibration on a double-quadric family from a corner node of the
/// branch curve.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CornerNode {
    /// p0 = q1 = 0
    P0Q1,
    /// p1 = q0 = 0
    P1Q0,
}

impl fmt::Display for CornerNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CornerNode::P0Q1 => write!(f, "p0=q1=0"),
            CornerNode::P1Q0 => write!(f, "p1=q0=0"),
        }
    }
}

#[derive(Clone)]
pub struct NodeEllipticFibration {
    pub base: (Symbol, Symbol),
    /// w² = product of these factors (squares already extracted)
    pub model: Factored,
    /// the square root pulled out of the substituted branch
    pub extracted: Factored,
    pub node: CornerNode,
}

impl NodeEllipticFibration {
    pub fn model_product(&self) -> MultiPoly {
        self.model.expand()
    }
}

/// Substitute the rational parametrization of the members of the pencil
/// p₀q₀t₀ = p₁q₁t₁ through the chosen corner node, extract squares, and
/// return the genus-one model.
pub fn node_elliptic(f: &QuadricFamily, node: CornerNode) -> Result<NodeEllipticFibration> {
    // the node must lie on exactly two distinct branch factors
    let vanishing = |at_p0_q1: bool| -> usize {
        f.branch
            .factors
            .iter()
            .filter(|(g, _)| {
                let (pz, qz) = if at_p0_q1 {
                    (&f.p.0, &f.q.1)
                } else {
                    (&f.p.1, &f.q.0)
                };
                let zero1 = MultiPoly::zero(g.vars().clone());
                let reduced = substitute_poly(
                    g,
                    &[(pz.clone(), zero1.clone()), (qz.clone(), zero1)],
                );
                reduced.is_zero()
            })
            .count()
    };
    let count = match node {
        CornerNode::P0Q1 => vanishing(true),
        CornerNode::P1Q0 => vanishing(false),
    };
    if count != 2 {
        return Err(Error::NotANode(format!(
            "{count} branch factors vanish at {node}; a node needs exactly 2"
        )));
    }
    let t0 = Symbol::new("t0");
    let t1 = Symbol::new("t1");
    let tvars = Vars::new(["p0", "p1", "q0", "q1", "t0", "t1"]);
    let vt0 = MultiPoly::var(&tvars, &t0);
    let vt1 = MultiPoly::var(&tvars, &t1);
    let vp0 = MultiPoly::var(&tvars, &f.p.0);
    let vp1 = MultiPoly::var(&tvars, &f.p.1);
    let vq0 = MultiPoly::var(&tvars, &f.q.0);
    let vq1 = MultiPoly::var(&tvars, &f.q.1);
    let subs: Vec<(Symbol, MultiPoly)> = match node {
        // eliminate q: q0 = p1 t1, q1 = p0 t0
        CornerNode::P0Q1 => vec![
            (f.q.0.clone(), vp1.mul_ref(&vt1)),
            (f.q.1.clone(), vp0.mul_ref(&vt0)),
        ],
        // eliminate p: p0 = q1 t1, p1 = q0 t0
        CornerNode::P1Q0 => vec![
            (f.p.0.clone(), vq1.mul_ref(&vt1)),
            (f.p.1.clone(), vq0.mul_ref(&vt0)),
        ],
    };
    let mut substituted = Factored::of_unit(f.branch.unit.clone());
    for (g, e) in &f.branch.factors {
        substituted.push(&substitute_poly(g, &subs), *e);
    }
    let (root, model) = substituted.extract_square();
    // the fiber coordinate must stay squarefree generically: two tangent
    // factors would leave a repeated t-root
    let expanded = model.expand();
    let sq = crate::exactalg::gcd(&expanded, &expanded.derivative(&t0));
    if sq.uses_var(&t0) {
        return Err(Error::NotANode(
            "the pencil is tangent to the branch at the chosen point".into(),
        ));
    }
    Ok(NodeEllipticFibration {
        base: (t0, t1),
        model,
        extracted: root,
        node,
    })
}

/// One census record per skew pair of double lines.
#[derive(Clone)]
pub struct CensusEntry {
    /// representative plane pairs of the two lines
    pub lines: ((usize, usize), (usize, usize)),
    /// ordered quadruple passed to `quadric_family`
    pub quadruple: [usize; 4],
    pub branch: Factored,
}

/// All double-quadric fibrations from skew pairs of double lines
/// (multiplicity exactly 2), one per unordered pair, with the canonical
/// quadruple order (i, j, k, l), i < j, k < l, i < k.
pub fn fibration_census(arr: &OcticArrangement) -> Result<Vec<CensusEntry>> {
    let rep = analyze(arr)?;
    if !rep.admissible {
        return Err(Error::BadSeed(
            "census requires an admissible arrangement".into(),
        ));
    }
    let coeffs: Vec<[MultiPoly; 4]> = arr
        .planes
        .iter()
        .map(|p| p.coeffs(&arr.coords))
        .collect();
    let doubles: Vec<&crate::arrangement::IncidenceLine> = rep
        .lines
        .iter()
        .filter(|l| l.multiplicity == 2)
        .collect();
    let mut out = Vec::new();
    for a in 0..doubles.len() {
        for b in (a + 1)..doubles.len() {
            let (i, j) = doubles[a].rep;
            let (k, l) = doubles[b].rep;
            if [i, j].iter().any(|x| [k, l].contains(x)) {
                continue;
            }
            let det = det4_of(&coeffs, [i, j, k, l]);
            if det.is_zero() {
                continue;
            }
            let quad = [i, j, k, l];
            let fam = quadric_family(arr, quad)?;
            out.push(CensusEntry {
                lines: ((i, j), (k, l)),
                quadruple: quad,
                branch: fam.branch,
            });
        }
    }
    Ok(out)
}

fn det4_of(coeffs: &[[MultiPoly; 4]], idx: [usize; 4]) -> MultiPoly {
    let rows: [&[MultiPoly; 4]; 4] = [
        &coeffs[idx[0]],
        &coeffs[idx[1]],
        &coeffs[idx[2]],
        &coeffs[idx[3]],
    ];
    let mut acc = MultiPoly::zero(rows[0][0].vars().clone());
    for c in 0..4 {
        let cols: Vec<usize> = (0..4).filter(|&x| x != c).collect();
        let minor = det3_owned([
            [
                rows[1][cols[0]].clone(),
                rows[1][cols[1]].clone(),
                rows[1][cols[2]].clone(),
            ],
            [
                rows[2][cols[0]].clone(),
                rows[2][cols[1]].clone(),
                rows[2][cols[2]].clone(),
            ],
            [
                rows[3][cols[0]].clone(),
                rows[3][cols[1]].clone(),
                rows[3][cols[2]].clone(),
            ],
        ]);
        let term = rows[0][c].mul_ref(&minor);
        acc = if c % 2 == 0 {
            acc.add_ref(&term)
        } else {
            acc.sub_ref(&term)
        };
    }
    acc
}

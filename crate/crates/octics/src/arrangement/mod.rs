//! Octic arrangements: eight planes in ℙ³ with optional symbolic
//! parameters, their incidence combinatorics, admissibility, and the
//! coordinate normalizations the fibration constructors expect.
//!
//! Rank decisions over ℚ(parameters) use generic-parameter semantics: a
//! determinant that is a nonzero polynomial counts as nonzero, and every
//! such parameter-dependent decision is reported so specializations can be
//! re-checked.

use std::fmt;

use serde::{Deserialize, Serialize};

use num_traits::Zero;

use crate::exactalg::{parse_poly, substitute_poly, MultiPoly, RatFunc, Symbol, Vars};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("parameter degeneracy: {0}")]
    ParameterDegeneracy(String),
    #[error("lines are not skew: {0}")]
    NotSkew(String),
    #[error("bad seed: {0}")]
    BadSeed(String),
    #[error(transparent)]
    Algebra(#[from] crate::exactalg::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// A plane of the arrangement: a homogeneous linear form in the four
/// coordinates, with coefficients polynomial in the parameters.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub poly: MultiPoly,
}

impl LinearForm {
    pub fn new(poly: MultiPoly, coords: &[Symbol; 4]) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::InvalidArrangement("zero linear form".into()));
        }
        if !poly.is_homogeneous_in(coords, 1) {
            return Err(Error::InvalidArrangement(format!(
                "form {poly} is not homogeneous linear in the coordinates"
            )));
        }
        Ok(LinearForm { poly })
    }

    /// Coefficient of each coordinate, as a polynomial in the parameters.
    pub fn coeffs(&self, coords: &[Symbol; 4]) -> [MultiPoly; 4] {
        let mut out: Vec<MultiPoly> = Vec::with_capacity(4);
        for c in coords {
            let mut cs = self.poly.coeffs_in(c);
            out.push(if cs.len() > 1 {
                cs.remove(1)
            } else {
                MultiPoly::zero(self.poly.vars().clone())
            });
        }
        [
            out[0].clone(),
            out[1].clone(),
            out[2].clone(),
            out[3].clone(),
        ]
    }

    /// Value at a projective point with rational-function coordinates.
    pub fn eval(&self, coords: &[Symbol; 4], point: &[RatFunc; 4]) -> RatFunc {
        let cs = self.coeffs(coords);
        let mut acc = RatFunc::zero();
        for (c, p) in cs.iter().zip(point.iter()) {
            acc = acc.add(&RatFunc::from_poly(c.clone()).mul(p));
        }
        acc
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Eight planes plus declared parameter symbols.
#[derive(Clone)]
pub struct OcticArrangement {
    pub label: String,
    pub coords: [Symbol; 4],
    pub params: Vec<Symbol>,
    pub planes: Vec<LinearForm>,
}

impl OcticArrangement {
    pub fn new(
        label: &str,
        coords: [Symbol; 4],
        params: Vec<Symbol>,
        planes: Vec<LinearForm>,
    ) -> Result<Self> {
        if planes.len() != 8 {
            return Err(Error::InvalidArrangement(format!(
                "need exactly 8 planes, got {}",
                planes.len()
            )));
        }
        let arr = OcticArrangement {
            label: label.to_string(),
            coords,
            params,
            planes,
        };
        for i in 0..8 {
            for j in (i + 1)..8 {
                if arr.proportional(i, j) {
                    return Err(Error::InvalidArrangement(format!(
                        "planes {} and {} are proportional",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(arr)
    }

    fn proportional(&self, i: usize, j: usize) -> bool {
        let a = self.planes[i].coeffs(&self.coords);
        let b = self.planes[j].coeffs(&self.coords);
        for p in 0..4 {
            for q in (p + 1)..4 {
                if !(&a[p].mul_ref(&b[q]) - &a[q].mul_ref(&b[p])).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// The branch octic: the product of the eight forms.
    pub fn octic(&self) -> MultiPoly {
        let mut acc = MultiPoly::one(self.planes[0].poly.vars().clone());
        for p in &self.planes {
            acc = acc.mul_ref(&p.poly);
        }
        acc
    }

    /// Specialize parameters to exact rational values.
    pub fn specialize(&self, values: &[(Symbol, RatFunc)]) -> Result<OcticArrangement> {
        let mut planes = Vec::new();
        for p in &self.planes {
            let bindings: Vec<(Symbol, MultiPoly)> = values
                .iter()
                .map(|(s, v)| {
                    if !v.is_polynomial() {
                        return Err(Error::InvalidArrangement(format!(
                            "specialization of {s} must be polynomial"
                        )));
                    }
                    Ok((s.clone(), v.num().clone()))
                })
                .collect::<Result<_>>()?;
            let q = substitute_poly(&p.poly, &bindings);
            if q.is_zero() {
                return Err(Error::ParameterDegeneracy(format!(
                    "plane {p} vanishes under the given specialization"
                )));
            }
            planes.push(LinearForm::new(q, &self.coords)?);
        }
        let remaining: Vec<Symbol> = self
            .params
            .iter()
            .filter(|s| !values.iter().any(|(t, _)| &t == s))
            .cloned()
            .collect();
        OcticArrangement::new(&self.label, self.coords.clone(), remaining, planes)
    }
}

/// A projective point with rational-function coordinates, normalized so the
/// first nonzero coordinate is 1.
#[derive(Clone, PartialEq)]
pub struct ProjPoint(pub [RatFunc; 4]);

impl ProjPoint {
    pub fn normalized(mut coords: [RatFunc; 4]) -> Option<Self> {
        let pivot = coords.iter().position(|c| !c.is_zero())?;
        let inv = coords[pivot].inverse().ok()?;
        for c in coords.iter_mut() {
            *c = c.mul(&inv);
        }
        Some(ProjPoint(coords))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} : {} : {} : {})",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A point of multiplicity >= 3.
#[derive(Clone, Debug)]
pub struct IncidencePoint {
    pub point: ProjPoint,
    pub multiplicity: usize,
    pub planes: Vec<usize>,
}

/// A line of multiplicity >= 2, named by its two lowest-index planes.
#[derive(Clone, Debug)]
pub struct IncidenceLine {
    pub rep: (usize, usize),
    pub multiplicity: usize,
    pub planes: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct IncidenceReport {
    pub points: Vec<IncidencePoint>,
    pub lines: Vec<IncidenceLine>,
    pub admissible: bool,
    /// Parameter-dependent determinants whose non-vanishing the generic
    /// rank decisions rely on.
    pub discriminants: Vec<MultiPoly>,
}

fn det3(m: [[&MultiPoly; 3]; 3]) -> MultiPoly {
    let a = m[0][0].mul_ref(&(&m[1][1].mul_ref(m[2][2]) - &m[1][2].mul_ref(m[2][1])));
    let b = m[0][1].mul_ref(&(&m[1][0].mul_ref(m[2][2]) - &m[1][2].mul_ref(m[2][0])));
    let c = m[0][2].mul_ref(&(&m[1][0].mul_ref(m[2][1]) - &m[1][1].mul_ref(m[2][0])));
    &(&a - &b) + &c
}

struct DiscriminantLog {
    coords: Vec<Symbol>,
    seen: Vec<MultiPoly>,
}

impl DiscriminantLog {
    fn new(coords: &[Symbol; 4]) -> Self {
        DiscriminantLog {
            coords: coords.to_vec(),
            seen: Vec::new(),
        }
    }

    /// Record a determinant whose non-vanishing was used, if it depends on
    /// parameters.
    fn note(&mut self, det: &MultiPoly) {
        if det.is_zero() {
            return;
        }
        let param_dependent = det.support().iter().any(|s| !self.coords.contains(s));
        if param_dependent {
            let n = det.normalized();
            if !self.seen.contains(&n) {
                self.seen.push(n);
            }
        }
    }
}

/// The four signed 3x3 minors of a 3x4 coefficient matrix; the kernel
/// vector of the three forms when the rank is 3.
fn triple_kernel(rows: [&[MultiPoly; 4]; 3]) -> [MultiPoly; 4] {
    let minor = |skip: usize| -> MultiPoly {
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
        det3([
            [&rows[0][cols[0]], &rows[0][cols[1]], &rows[0][cols[2]]],
            [&rows[1][cols[0]], &rows[1][cols[1]], &rows[1][cols[2]]],
            [&rows[2][cols[0]], &rows[2][cols[1]], &rows[2][cols[2]]],
        ])
    };
    [minor(0), minor(1).neg_ref(), minor(2), minor(3).neg_ref()]
}

/// Incidence analysis by exact rank computations.
pub fn analyze(arr: &OcticArrangement) -> Result<IncidenceReport> {
    let coords = &arr.coords;
    let n = arr.planes.len();
    let coeffs: Vec<[MultiPoly; 4]> = arr.planes.iter().map(|p| p.coeffs(coords)).collect();
    let mut log = DiscriminantLog::new(coords);

    // lines: group plane pairs by the set of planes containing their line
    let mut lines: Vec<IncidenceLine> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if lines
                .iter()
                .any(|l| l.planes.contains(&i) && l.planes.contains(&j))
            {
                continue;
            }
            let mut members = vec![i, j];
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                // plane k contains the line iff rank(F_i, F_j, F_k) <= 2
                let kernel = triple_kernel([&coeffs[i], &coeffs[j], &coeffs[k]]);
                let rank3 = kernel.iter().any(|d| !d.is_zero());
                if rank3 {
                    for d in kernel.iter().filter(|d| !d.is_zero()) {
                        log.note(d);
                    }
                } else {
                    members.push(k);
                }
            }
            members.sort_unstable();
            lines.push(IncidenceLine {
                rep: (members[0], members[1]),
                multiplicity: members.len(),
                planes: members,
            });
        }
    }

    // points: triples of full rank give candidate intersection points
    let mut points: Vec<IncidencePoint> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let kernel = triple_kernel([&coeffs[i], &coeffs[j], &coeffs[k]]);
                if kernel.iter().all(|d| d.is_zero()) {
                    continue; // the triple shares a line
                }
                for d in kernel.iter().filter(|d| !d.is_zero()) {
                    log.note(d);
                }
                let pt = [
                    RatFunc::from_poly(kernel[0].clone()),
                    RatFunc::from_poly(kernel[1].clone()),
                    RatFunc::from_poly(kernel[2].clone()),
                    RatFunc::from_poly(kernel[3].clone()),
                ];
                let Some(pt) = ProjPoint::normalized(pt) else {
                    continue;
                };
                if points.iter().any(|q| q.point == pt) {
                    continue;
                }
                let mut through = Vec::new();
                for (m, plane) in arr.planes.iter().enumerate() {
                    let v = plane.eval(coords, &pt.0);
                    if v.is_zero() {
                        through.push(m);
                    } else if !v.is_constant() {
                        log.note(v.num());
                    }
                }
                if through.len() >= 3 {
                    points.push(IncidencePoint {
                        point: pt,
                        multiplicity: through.len(),
                        planes: through,
                    });
                }
            }
        }
    }

    let admissible = points.iter().all(|p| p.multiplicity <= 5)
        && lines.iter().all(|l| l.multiplicity <= 3);

    Ok(IncidenceReport {
        points,
        lines,
        admissible,
        discriminants: log.seen,
    })
}

/// Fibration seeds read off an incidence report.
#[derive(Clone, Debug)]
pub struct SeedList {
    /// points of multiplicity 4 or 5
    pub point_seeds: Vec<usize>,
    /// pairs of skew double/triple lines (indices into report.lines)
    pub skew_line_pairs: Vec<(usize, usize)>,
    /// pairs of point seeds with disjoint plane quadruples
    pub kummer_pairs: Vec<(usize, usize, [usize; 4], [usize; 4])>,
    /// all double/triple lines (pencil-of-planes fibration seeds)
    pub sextic_seeds: Vec<usize>,
}

pub fn find_fibration_seeds(arr: &OcticArrangement, rep: &IncidenceReport) -> Result<SeedList> {
    if !rep.admissible {
        return Err(Error::BadSeed(
            "seed enumeration requires an admissible arrangement".into(),
        ));
    }
    let coeffs: Vec<[MultiPoly; 4]> = arr.planes.iter().map(|p| p.coeffs(&arr.coords)).collect();

    let point_seeds: Vec<usize> = rep
        .points
        .iter()
        .enumerate()
        .filter(|(_, p)| p.multiplicity == 4 || p.multiplicity == 5)
        .map(|(i, _)| i)
        .collect();

    let mut skew_line_pairs = Vec::new();
    for a in 0..rep.lines.len() {
        for b in (a + 1)..rep.lines.len() {
            let la = &rep.lines[a];
            let lb = &rep.lines[b];
            if la.multiplicity > 3 || lb.multiplicity > 3 {
                continue;
            }
            let (i, j) = la.rep;
            let (k, l) = lb.rep;
            if [i, j].iter().any(|x| [k, l].contains(x)) {
                continue;
            }
            if !det4(&[&coeffs[i], &coeffs[j], &coeffs[k], &coeffs[l]]).is_zero() {
                skew_line_pairs.push((a, b));
            }
        }
    }

    let mut kummer_pairs = Vec::new();
    for x in 0..point_seeds.len() {
        for y in (x + 1)..point_seeds.len() {
            let pa = &rep.points[point_seeds[x]];
            let pb = &rep.points[point_seeds[y]];
            let only_a: Vec<usize> = pa
                .planes
                .iter()
                .filter(|i| !pb.planes.contains(i))
                .cloned()
                .collect();
            let only_b: Vec<usize> = pb
                .planes
                .iter()
                .filter(|i| !pa.planes.contains(i))
                .cloned()
                .collect();
            if only_a.len() >= 4 && only_b.len() >= 4 {
                kummer_pairs.push((
                    point_seeds[x],
                    point_seeds[y],
                    [only_a[0], only_a[1], only_a[2], only_a[3]],
                    [only_b[0], only_b[1], only_b[2], only_b[3]],
                ));
            }
        }
    }

    let sextic_seeds: Vec<usize> = (0..rep.lines.len())
        .filter(|&i| rep.lines[i].multiplicity <= 3)
        .collect();

    Ok(SeedList {
        point_seeds,
        skew_line_pairs,
        kummer_pairs,
        sextic_seeds,
    })
}

fn det4(rows: &[&[MultiPoly; 4]; 4]) -> MultiPoly {
    let mut acc = MultiPoly::zero(rows[0][0].vars().clone());
    for c in 0..4 {
        let cols: Vec<usize> = (0..4).filter(|&x| x != c).collect();
        let minor = det3([
            [&rows[1][cols[0]], &rows[1][cols[1]], &rows[1][cols[2]]],
            [&rows[2][cols[0]], &rows[2][cols[1]], &rows[2][cols[2]]],
            [&rows[3][cols[0]], &rows[3][cols[1]], &rows[3][cols[2]]],
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

/// An exact projective change of coordinates with cached inverse. Rows of
/// `matrix` are the new coordinate forms in terms of the old coordinates.
#[derive(Clone, Debug)]
pub struct ProjectiveChange {
    pub matrix: [[RatFunc; 4]; 4],
    pub inverse: [[RatFunc; 4]; 4],
}

impl ProjectiveChange {
    pub fn identity() -> Self {
        let mut m: [[RatFunc; 4]; 4] = Default::default();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = if i == j { RatFunc::one() } else { RatFunc::zero() };
            }
        }
        ProjectiveChange {
            matrix: m.clone(),
            inverse: m,
        }
    }

    pub fn from_rows(rows: [[RatFunc; 4]; 4]) -> Result<Self> {
        let inverse = invert4(&rows)
            .ok_or_else(|| Error::NotSkew("coordinate rows are linearly dependent".into()))?;
        Ok(ProjectiveChange {
            matrix: rows,
            inverse,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() })
        })
    }

    /// Transform a linear form: coefficients as a row vector times the
    /// inverse matrix (new form = old ∘ inverse change).
    pub fn transform_form(&self, form: &LinearForm, coords: &[Symbol; 4]) -> Result<LinearForm> {
        self.apply_rows(form, coords, &self.inverse)
    }

    /// Transform with the inverse change (round-trip partner of
    /// `transform_form`).
    pub fn untransform_form(&self, form: &LinearForm, coords: &[Symbol; 4]) -> Result<LinearForm> {
        self.apply_rows(form, coords, &self.matrix)
    }

    fn apply_rows(
        &self,
        form: &LinearForm,
        coords: &[Symbol; 4],
        rows: &[[RatFunc; 4]; 4],
    ) -> Result<LinearForm> {
        let c = form.coeffs(coords);
        let mut new_coeffs: Vec<RatFunc> = Vec::with_capacity(4);
        for j in 0..4 {
            let mut acc = RatFunc::zero();
            for (i, ci) in c.iter().enumerate() {
                acc = acc.add(&RatFunc::from_poly(ci.clone()).mul(&rows[i][j]));
            }
            new_coeffs.push(acc);
        }
        linear_form_from_coeffs(&new_coeffs, coords)
    }
}

/// Assemble a primitive polynomial linear form from rational-function
/// coefficients. The common denominator is cleared; projective planes do
/// not see the resulting parameter-unit.
fn linear_form_from_coeffs(coeffs: &[RatFunc], coords: &[Symbol; 4]) -> Result<LinearForm> {
    let mut den = MultiPoly::one(coeffs[0].num().vars().clone());
    for c in coeffs {
        let extra = c
            .den()
            .div_exact(&crate::exactalg::gcd(&den, c.den()))
            .expect("gcd divides");
        den = den.mul_ref(&extra);
    }
    let mut poly = MultiPoly::zero(den.vars().clone());
    for (c, x) in coeffs.iter().zip(coords.iter()) {
        let cleared = c.num().mul_ref(&den.div_exact(c.den()).expect("lcm"));
        let xv = MultiPoly::var(&poly.vars().merge(cleared.vars()).with(x), x);
        poly = poly.add_ref(&cleared.mul_ref(&xv));
    }
    let poly = poly.normalized();
    LinearForm::new(poly, coords)
}

fn invert4(m: &[[RatFunc; 4]; 4]) -> Option<[[RatFunc; 4]; 4]> {
    // Gauss-Jordan over the rational function field
    let mut a: Vec<Vec<RatFunc>> = m.iter().map(|r| r.to_vec()).collect();
    let mut b: Vec<Vec<RatFunc>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() })
                .collect()
        })
        .collect();
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].inverse().ok()?;
        for j in 0..4 {
            a[col][j] = a[col][j].mul(&inv);
            b[col][j] = b[col][j].mul(&inv);
        }
        for r in 0..4 {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..4 {
                a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                b[r][j] = b[r][j].sub(&f.mul(&b[col][j]));
            }
        }
    }
    let mut out: [[RatFunc; 4]; 4] = Default::default();
    for (i, row) in b.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            out[i][j] = e.clone();
        }
    }
    Some(out)
}

/// Apply a coordinate change to a whole arrangement, preserving plane order.
pub fn transform_arrangement(
    arr: &OcticArrangement,
    change: &ProjectiveChange,
) -> Result<OcticArrangement> {
    let planes = arr
        .planes
        .iter()
        .map(|p| change.transform_form(p, &arr.coords))
        .collect::<Result<Vec<_>>>()?;
    OcticArrangement::new(&arr.label, arr.coords.clone(), arr.params.clone(), planes)
}

/// Move a point of multiplicity 4 or 5 to (0:0:0:1): the planes through it
/// come first (original order preserved) and lose the last coordinate; the
/// remaining planes get last-coordinate coefficient 1 whenever that
/// coefficient is a rational constant.
pub fn normalize_point(
    arr: &OcticArrangement,
    rep: &IncidenceReport,
    point_index: usize,
) -> Result<(OcticArrangement, ProjectiveChange)> {
    let pt = rep
        .points
        .get(point_index)
        .ok_or_else(|| Error::BadSeed(format!("no point with index {point_index}")))?;
    if pt.multiplicity != 4 && pt.multiplicity != 5 {
        return Err(Error::BadSeed(format!(
            "point has multiplicity {}, need 4 or 5",
            pt.multiplicity
        )));
    }
    let coords = &arr.coords;
    let coeffs: Vec<[MultiPoly; 4]> = arr.planes.iter().map(|p| p.coeffs(coords)).collect();

    // three independent forms through the point, greedily by plane order
    let mut rows: Vec<[RatFunc; 4]> = Vec::new();
    for &i in &pt.planes {
        if rows.len() == 3 {
            break;
        }
        let cand: [RatFunc; 4] =
            std::array::from_fn(|k| RatFunc::from_poly(coeffs[i][k].clone()));
        if rank_of(&rows, &cand) > rows.len() {
            rows.push(cand);
        }
    }
    if rows.len() < 3 {
        return Err(Error::InvalidArrangement(
            "planes through the point span less than three dimensions".into(),
        ));
    }
    // fourth row: a coordinate form not vanishing at the point
    let k = (0..4)
        .rev()
        .find(|&k| !pt.point.0[k].is_zero())
        .expect("projective point has a nonzero coordinate");
    let mut e: [RatFunc; 4] = Default::default();
    for (idx, item) in e.iter_mut().enumerate() {
        *item = if idx == k {
            RatFunc::one()
        } else {
            RatFunc::zero()
        };
    }
    let change =
        ProjectiveChange::from_rows([rows[0].clone(), rows[1].clone(), rows[2].clone(), e])?;

    let mut order: Vec<usize> = pt.planes.clone();
    for i in 0..8 {
        if !order.contains(&i) {
            order.push(i);
        }
    }
    let mut planes = Vec::new();
    for &i in &order {
        let mut f = change.transform_form(&arr.planes[i], coords)?;
        if !pt.planes.contains(&i) {
            let c = f.coeffs(coords)[3].clone();
            if let Some(v) = c.constant_value() {
                if !v.is_zero() {
                    let inv = num_rational::BigRational::from_integer(1.into()) / v;
                    f = LinearForm::new(f.poly.scale(&inv), coords)?;
                }
            }
        }
        planes.push(f);
    }
    let out = OcticArrangement::new(&arr.label, coords.clone(), arr.params.clone(), planes)?;
    Ok((out, change))
}

fn rank_of(rows: &[[RatFunc; 4]], cand: &[RatFunc; 4]) -> usize {
    let mut m: Vec<Vec<RatFunc>> = rows.iter().map(|r| r.to_vec()).collect();
    m.push(cand.to_vec());
    let mut rank = 0;
    let nrows = m.len();
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

/// Move two point seeds with disjoint quadruples onto the model position:
/// the first to (0:0:0:1), the second to (1:0:0:0). The first quadruple
/// then omits the last coordinate and the second omits the first.
pub fn normalize_two_points(
    arr: &OcticArrangement,
    rep: &IncidenceReport,
    p1: usize,
    p2: usize,
    quad1: &[usize; 4],
    quad2: &[usize; 4],
) -> Result<(OcticArrangement, ProjectiveChange)> {
    let a = &rep.points[p1];
    let b = &rep.points[p2];
    let coords = &arr.coords;
    let both = double_kernel(&a.point, &b.point)?;
    let row_of = |i: usize| -> [RatFunc; 4] {
        let c = arr.planes[i].coeffs(coords);
        std::array::from_fn(|k| RatFunc::from_poly(c[k].clone()))
    };
    // x: vanishes at the first point but not the second
    let x_row = quad1
        .iter()
        .map(|&i| row_of(i))
        .find(|r| !eval_row(r, &b.point).is_zero())
        .ok_or_else(|| {
            Error::BadSeed("no plane of the first quadruple avoids the second point".into())
        })?;
    // t: vanishes at the second point but not the first
    let t_row = quad2
        .iter()
        .map(|&i| row_of(i))
        .find(|r| !eval_row(r, &a.point).is_zero())
        .ok_or_else(|| {
            Error::BadSeed("no plane of the second quadruple avoids the first point".into())
        })?;
    let change = ProjectiveChange::from_rows([x_row, both[0].clone(), both[1].clone(), t_row])?;
    let mut order: Vec<usize> = quad1.to_vec();
    order.extend_from_slice(quad2);
    for i in 0..8 {
        if !order.contains(&i) {
            order.push(i);
        }
    }
    let planes = order
        .iter()
        .map(|&i| change.transform_form(&arr.planes[i], coords))
        .collect::<Result<Vec<_>>>()?;
    let out = OcticArrangement::new(&arr.label, coords.clone(), arr.params.clone(), planes)?;
    Ok((out, change))
}

fn eval_row(row: &[RatFunc; 4], pt: &ProjPoint) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (c, p) in row.iter().zip(pt.0.iter()) {
        acc = acc.add(&c.mul(p));
    }
    acc
}

/// Basis of the 2-dim space of forms vanishing at two distinct points.
fn double_kernel(a: &ProjPoint, b: &ProjPoint) -> Result<Vec<[RatFunc; 4]>> {
    let m = [
        [
            a.0[0].clone(),
            a.0[1].clone(),
            a.0[2].clone(),
            a.0[3].clone(),
        ],
        [
            b.0[0].clone(),
            b.0[1].clone(),
            b.0[2].clone(),
            b.0[3].clone(),
        ],
    ];
    let mut mat: Vec<Vec<RatFunc>> = m.iter().map(|r| r.to_vec()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for col in 0..4 {
        if r >= 2 {
            break;
        }
        let Some(p) = (r..2).find(|&row| !mat[row][col].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][col].inverse().expect("nonzero pivot");
        for c in 0..4 {
            mat[r][c] = mat[r][c].mul(&inv);
        }
        for row in 0..2 {
            if row != r && !mat[row][col].is_zero() {
                let f = mat[row][col].clone();
                for c in 0..4 {
                    mat[row][c] = mat[row][c].sub(&f.mul(&mat[r][c]));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if pivots.len() < 2 {
        return Err(Error::BadSeed("the two points coincide".into()));
    }
    let mut basis = Vec::new();
    for free in (0..4).filter(|c| !pivots.contains(c)) {
        let mut v: [RatFunc; 4] = Default::default();
        v[free] = RatFunc::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = mat[ri][free].neg();
        }
        basis.push(v);
    }
    Ok(basis)
}

/// New coordinates are exactly the four defining forms; the two seed lines
/// become x=y=0 and z=t=0. Plane order: the quadruple first, then the rest.
pub fn normalize_skew_lines(
    arr: &OcticArrangement,
    quad: [usize; 4],
) -> Result<(OcticArrangement, ProjectiveChange)> {
    let coords = &arr.coords;
    let rows: Vec<[RatFunc; 4]> = quad
        .iter()
        .map(|&i| {
            let c = arr.planes[i].coeffs(coords);
            std::array::from_fn(|k| RatFunc::from_poly(c[k].clone()))
        })
        .collect();
    let change = ProjectiveChange::from_rows([
        rows[0].clone(),
        rows[1].clone(),
        rows[2].clone(),
        rows[3].clone(),
    ])
    .map_err(|_| {
        Error::NotSkew(format!(
            "planes {:?} do not span: the lines intersect",
            quad.map(|i| i + 1)
        ))
    })?;
    let mut order: Vec<usize> = quad.to_vec();
    for i in 0..8 {
        if !order.contains(&i) {
            order.push(i);
        }
    }
    let planes = order
        .iter()
        .map(|&i| change.transform_form(&arr.planes[i], coords))
        .collect::<Result<Vec<_>>>()?;
    let out = OcticArrangement::new(&arr.label, coords.clone(), arr.params.clone(), planes)?;
    Ok((out, change))
}

/// Arrangement input file.
#[derive(Serialize, Deserialize)]
pub struct ArrangementFile {
    pub label: String,
    pub variables: Vec<String>,
    #[serde(default)]
    pub parameters: Vec<String>,
    pub planes: Vec<String>,
}

impl ArrangementFile {
    pub fn parse(&self) -> Result<OcticArrangement> {
        if self.variables.len() != 4 {
            return Err(Error::InvalidArrangement(
                "exactly four coordinate variables required".into(),
            ));
        }
        let all: Vec<&str> = self
            .variables
            .iter()
            .chain(self.parameters.iter())
            .map(|s| s.as_str())
            .collect();
        let vars = Vars::new(all);
        let coords: [Symbol; 4] = std::array::from_fn(|i| Symbol::new(&self.variables[i]));
        let params: Vec<Symbol> = self.parameters.iter().map(|s| Symbol::new(s)).collect();
        let planes = self
            .planes
            .iter()
            .map(|src| {
                let p = parse_poly(src, &vars)?;
                LinearForm::new(p, &coords)
            })
            .collect::<Result<Vec<_>>>()?;
        OcticArrangement::new(&self.label, coords, params, planes)
    }

    pub fn load(path: &std::path::Path) -> Result<OcticArrangement> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidArrangement(format!("cannot read {}: {e}", path.display()))
        })?;
        let file: ArrangementFile = serde_json::from_str(&text).map_err(|e| {
            Error::InvalidArrangement(format!("cannot parse {}: {e}", path.display()))
        })?;
        file.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn arrangement_from_strs(
        label: &str,
        params: &[&str],
        planes: [&str; 8],
    ) -> OcticArrangement {
        ArrangementFile {
            label: label.into(),
            variables: vec!["x".into(), "y".into(), "z".into(), "t".into()],
            parameters: params.iter().map(|s| s.to_string()).collect(),
            planes: planes.iter().map(|s| s.to_string()).collect(),
        }
        .parse()
        .unwrap()
    }

    #[test]
    fn fourfold_point_detected() {
        // planes {x, y, z, x+y+z, t, x+t, y+t, z+t}: (0:0:0:1) on exactly
        // the four t-free planes
        let arr = arrangement_from_strs(
            "demo",
            &[],
            ["x", "y", "z", "x+y+z", "t", "x+t", "y+t", "z+t"],
        );
        let rep = analyze(&arr).unwrap();
        let origin = rep
            .points
            .iter()
            .find(|p| {
                p.point.0[0].is_zero() && p.point.0[1].is_zero() && p.point.0[2].is_zero()
            })
            .expect("(0:0:0:1) found");
        assert_eq!(origin.multiplicity, 4);
        assert_eq!(origin.planes, vec![0, 1, 2, 3]);
        assert!(rep.admissible);
    }

    #[test]
    fn six_through_a_point_is_inadmissible() {
        let arr = arrangement_from_strs(
            "bad",
            &[],
            ["x", "y", "z", "x+y", "y+z", "x+z", "t", "x+t"],
        );
        let rep = analyze(&arr).unwrap();
        assert!(!rep.admissible);
        assert!(rep.points.iter().any(|p| p.multiplicity >= 6));
    }

    #[test]
    fn skew_coordinate_lines_reported() {
        let arr = arrangement_from_strs(
            "skew",
            &[],
            ["x", "y", "z", "t", "x+y+z+t", "x+2*y+4*z+8*t", "x+3*y+9*z+27*t", "x+5*y+25*z+125*t"],
        );
        let rep = analyze(&arr).unwrap();
        let seeds = find_fibration_seeds(&arr, &rep).unwrap();
        // lines {x=y=0} and {z=t=0} are both double lines and skew
        let lxy = rep
            .lines
            .iter()
            .position(|l| l.planes == vec![0, 1])
            .unwrap();
        let lzt = rep
            .lines
            .iter()
            .position(|l| l.planes == vec![2, 3])
            .unwrap();
        let pair = if lxy < lzt { (lxy, lzt) } else { (lzt, lxy) };
        assert!(seeds.skew_line_pairs.contains(&pair));
    }

    #[test]
    fn intersecting_lines_rejected_as_seed() {
        let arr = arrangement_from_strs(
            "meet",
            &[],
            ["x", "y", "z", "t", "x+y+z+t", "x+2*y+4*z+8*t", "x+3*y+9*z+27*t", "x+5*y+25*z+125*t"],
        );
        // lines {x=y=0} and {y=z=0} share the point (0:0:0:1)
        let err = normalize_skew_lines(&arr, [0, 1, 1, 2]);
        assert!(err.is_err());
        let err2 = normalize_skew_lines(&arr, [0, 1, 2, 4]);
        // x, y, z, x+y+z+t: independent, fine
        assert!(err2.is_ok());
    }

    #[test]
    fn normalize_point_shapes_planes() {
        let arr = arrangement_from_strs(
            "demo",
            &[],
            ["x+y", "y", "z", "x+y+z", "t", "x+t", "y+t", "z+t"],
        );
        let rep = analyze(&arr).unwrap();
        let idx = rep
            .points
            .iter()
            .position(|p| p.multiplicity == 4 && p.planes == vec![0, 1, 2, 3])
            .unwrap();
        let (norm, change) = normalize_point(&arr, &rep, idx).unwrap();
        let t = Symbol::new("t");
        for p in &norm.planes[0..4] {
            assert!(!p.poly.uses_var(&t), "plane {p} should be t-free");
        }
        for p in &norm.planes[4..8] {
            let c = p.coeffs(&norm.coords)[3].clone();
            assert!(c.is_one(), "plane {p} should have t-coefficient 1");
        }
        // round trip: transform then untransform returns the original forms
        for p in &arr.planes {
            let fwd = change.transform_form(p, &arr.coords).unwrap();
            let back = change.untransform_form(&fwd, &arr.coords).unwrap();
            assert_eq!(back.poly, p.poly.normalized());
        }
        // re-analysis sees the distinguished point at (0:0:0:1)
        let rep2 = analyze(&norm).unwrap();
        assert!(rep2
            .points
            .iter()
            .any(|p| p.multiplicity == 4
                && p.point.0[0].is_zero()
                && p.point.0[1].is_zero()
                && p.point.0[2].is_zero()));
    }

    #[test]
    fn incidence_multiset_is_invariant_under_change() {
        let arr = arrangement_from_strs(
            "demo",
            &[],
            ["x", "y", "z", "x+y+z", "t", "x+t", "y+t", "z+t"],
        );
        let rep = analyze(&arr).unwrap();
        let rows: [[RatFunc; 4]; 4] = [
            std::array::from_fn(|i| RatFunc::from_int([1, 1, 0, 0][i])),
            std::array::from_fn(|i| RatFunc::from_int([0, 1, 0, 0][i])),
            std::array::from_fn(|i| RatFunc::from_int([0, 2, 1, 0][i])),
            std::array::from_fn(|i| RatFunc::from_int([1, 0, 1, 1][i])),
        ];
        let change = ProjectiveChange::from_rows(rows).unwrap();
        let moved = transform_arrangement(&arr, &change).unwrap();
        let rep2 = analyze(&moved).unwrap();
        let mut m1: Vec<usize> = rep.points.iter().map(|p| p.multiplicity).collect();
        let mut m2: Vec<usize> = rep2.points.iter().map(|p| p.multiplicity).collect();
        m1.sort_unstable();
        m2.sort_unstable();
        assert_eq!(m1, m2);
        let mut l1: Vec<usize> = rep.lines.iter().map(|l| l.multiplicity).collect();
        let mut l2: Vec<usize> = rep2.lines.iter().map(|l| l.multiplicity).collect();
        l1.sort_unstable();
        l2.sort_unstable();
        assert_eq!(l1, l2);
    }
}

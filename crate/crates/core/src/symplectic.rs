//! Binary cubics as the symplectic space C⁴, Lagrangian planes, Plücker
//! coordinates and the three SL(2,C)-orbits.

use std::fmt;

use nalgebra::{DMatrix, Matrix4x2, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;
use crate::projective::{form_mul, Complex, ProjPoint, Sym3Matrix, ONE, ZERO};
use crate::tol::Tolerance;

/// `aX³ + bX²Y + cXY² + dY³`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CubicForm {
    pub coeffs: [Complex; 4],
}

impl CubicForm {
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        Self { coeffs: [a, b, c, d] }
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    /// `X^{3−k} Y^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = [ZERO; 4];
        coeffs[k] = ONE;
        Self { coeffs }
    }

    /// Product of the linear forms vanishing at the three points.
    pub fn from_roots(r: [&ProjPoint; 3]) -> Self {
        let f = form_mul(&form_mul(&r[0].linear_form(), &r[1].linear_form()), &r[2].linear_form());
        Self {
            coeffs: [f[0], f[1], f[2], f[3]],
        }
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, k: Complex) -> Self {
        Self {
            coeffs: self.coeffs.map(|c| c * k),
        }
    }

    /// `α·self + β·other`.
    pub fn combine(&self, alpha: Complex, other: &CubicForm, beta: Complex) -> Self {
        let mut coeffs = [ZERO; 4];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = alpha * self.coeffs[k] + beta * other.coeffs[k];
        }
        Self { coeffs }
    }

    pub fn eval(&self, p: &ProjPoint) -> Complex {
        poly::eval_form(&self.coeffs, p)
    }

    pub fn transform(&self, g: &Sym3Matrix) -> Self {
        Self {
            coeffs: g.apply(&self.coeffs),
        }
    }

    /// The three roots with multiplicity.
    pub fn roots(&self) -> Result<[ProjPoint; 3]> {
        let r = poly::form_roots(&self.coeffs)?;
        Ok([r[0], r[1], r[2]])
    }

    /// Distinct roots with multiplicities, merged at `cluster_tol`.
    pub fn distinct_roots(&self, tol: &Tolerance) -> Result<Vec<(ProjPoint, usize)>> {
        Ok(poly::cluster(&self.roots()?, tol.cluster_tol))
    }

    /// Discriminant divided by `‖p‖⁴`.
    pub fn normalized_discriminant(&self) -> f64 {
        let n = self.norm();
        if n == 0.0 {
            return 0.0;
        }
        discriminant(&self.scale(Complex::from(1.0 / n))).norm()
    }

    /// For a cubic with a repeated root, returns (double root, single root).
    /// The single root coincides with the double one for a perfect cube.
    pub fn double_and_single_root(&self) -> Result<(ProjPoint, ProjPoint)> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroForm);
        }
        let [a, b, c, d] = self.coeffs.map(|x| x / n);
        let u = 9.0 * a * d - b * c;
        let first = (u, 2.0 * (b * b - 3.0 * a * c));
        let second = (2.0 * (c * c - 3.0 * b * d), u);
        let size = |p: &(Complex, Complex)| p.0.norm().max(p.1.norm());
        let (x, y) = if size(&first) >= size(&second) { first } else { second };
        if size(&(x, y)) < 1e-12 {
            let r = self.roots()?;
            let mean = poly::cluster(&r, 1.0).remove(0).0;
            return Ok((mean, mean));
        }
        let double = ProjPoint::new(x, y)?;
        let single = residual_root(&self.coeffs.map(|x| x / n), &double);
        Ok((double, single))
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.im.abs() <= tol * self.norm().max(1.0))
    }
}

impl fmt::Display for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const MONO: [&str; 4] = ["X³", "X²Y", "XY²", "Y³"];
        let mut first = true;
        for (c, m) in self.coeffs.iter().zip(MONO) {
            if c.norm() == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}){m}", crate::projective::fmt_complex(*c))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Least-squares factorisation `q = ℓ²·(uX + vY)` with `ℓ` vanishing at
/// `double`; returns the root of `uX + vY`.
fn residual_root(q: &[Complex; 4], double: &ProjPoint) -> ProjPoint {
    let l2 = form_mul(&double.linear_form(), &double.linear_form());
    let mut m = Matrix4x2::<Complex>::zeros();
    for i in 0..3 {
        m[(i, 0)] = l2[i];
        m[(i + 1, 1)] = l2[i];
    }
    let rhs = Vector4::from_column_slice(q);
    let mh = m.adjoint();
    let sol = (mh * m).try_inverse().map(|inv| inv * mh * rhs);
    match sol {
        Some(s) => ProjPoint::new(-s[1], s[0]).unwrap_or(*double),
        None => *double,
    }
}

/// The symplectic form `ω(p,q) = a_p d_q − d_p a_q − (b_p c_q − c_p b_q)/3`.
pub fn omega(p: &CubicForm, q: &CubicForm) -> Complex {
    let [a1, b1, c1, d1] = p.coeffs;
    let [a2, b2, c2, d2] = q.coeffs;
    a1 * d2 - d1 * a2 - (b1 * c2 - c1 * b2) / 3.0
}

/// `Δ = b²c² − 4ac³ − 4db³ − 27a²d² + 18abcd`.
pub fn discriminant(p: &CubicForm) -> Complex {
    let [a, b, c, d] = p.coeffs;
    b * b * c * c - 4.0 * a * c * c * c - 4.0 * d * b * b * b - 27.0 * a * a * d * d
        + 18.0 * a * b * c * d
}

/// The cubic vanishing to third order at `t`: `(bX − aY)³`.
pub fn veronese1(t: &ProjPoint) -> CubicForm {
    CubicForm::from_roots([t, t, t])
}

/// `⟨ℓ³, ℓ² m⟩` where `ℓ` vanishes at `t` and `m` at `aux`. The span does
/// not depend on `aux`.
pub fn veronese2(t: &ProjPoint, aux: &ProjPoint, tol: &Tolerance) -> Result<Lagrangian> {
    if t.chordal(aux) < tol.tol {
        return Err(Error::DegenerateInput("auxiliary point equals the base point".into()));
    }
    Lagrangian::new(veronese1(t), CubicForm::from_roots([t, t, aux]), tol)
}

/// Index pairs of the Plücker coordinates, in the order 12, 13, 14, 23, 24, 34.
pub const PLUCKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub type Plucker = [Complex; 6];

pub fn plucker_of(p1: &CubicForm, p2: &CubicForm) -> Plucker {
    PLUCKER_PAIRS.map(|(i, j)| p1.coeffs[i] * p2.coeffs[j] - p1.coeffs[j] * p2.coeffs[i])
}

fn pnorm(w: &[Complex]) -> f64 {
    w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Relative residual of `W12 W34 − W13 W24 + W14 W23`.
pub fn plucker_relation_residual(w: &Plucker) -> f64 {
    let n = pnorm(w);
    (w[0] * w[5] - w[1] * w[4] + w[2] * w[3]).norm() / (n * n)
}

/// Relative residual of the linear Lagrangian condition `W14 − W23/3`.
pub fn lagrangian_residual(w: &Plucker) -> f64 {
    (w[2] - w[3] / 3.0).norm() / pnorm(w)
}

/// Fubini–Study chordal distance between two points of CP⁵.
pub fn plucker_distance(w1: &[Complex], w2: &[Complex]) -> f64 {
    let (n1, n2) = (pnorm(w1), pnorm(w2));
    let mut s = 0.0;
    for i in 0..w1.len() {
        for j in i + 1..w1.len() {
            s += (w1[i] * w2[j] - w1[j] * w2[i]).norm_sqr();
        }
    }
    (s.sqrt() / (n1 * n2)).min(1.0)
}

/// A Lagrangian plane of `(C⁴, ω)` given by a basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawLagrangian", into = "RawLagrangian")]
pub struct Lagrangian {
    basis: [CubicForm; 2],
    plucker: Plucker,
}

#[derive(Serialize, Deserialize)]
struct RawLagrangian {
    basis: [CubicForm; 2],
}

impl TryFrom<RawLagrangian> for Lagrangian {
    type Error = Error;
    fn try_from(raw: RawLagrangian) -> Result<Self> {
        Lagrangian::new(raw.basis[0], raw.basis[1], &Tolerance::default())
    }
}

impl From<Lagrangian> for RawLagrangian {
    fn from(l: Lagrangian) -> Self {
        RawLagrangian { basis: l.basis }
    }
}

impl Lagrangian {
    pub fn new(p1: CubicForm, p2: CubicForm, tol: &Tolerance) -> Result<Self> {
        let (n1, n2) = (p1.norm(), p2.norm());
        if !(n1.is_finite() && n2.is_finite()) {
            return Err(Error::DegenerateInput("non-finite coefficient".into()));
        }
        let plucker = plucker_of(&p1, &p2);
        let wn = pnorm(&plucker);
        if n1 == 0.0 || n2 == 0.0 || wn <= tol.tol * n1 * n2 {
            return Err(Error::DegenerateInput("basis vectors are linearly dependent".into()));
        }
        let res = omega(&p1, &p2).norm() / (n1 * n2);
        if res > tol.tol {
            return Err(Error::NotLagrangian(res));
        }
        Ok(Self {
            basis: [p1, p2],
            plucker,
        })
    }

    pub fn basis(&self) -> &[CubicForm; 2] {
        &self.basis
    }

    pub fn plucker(&self) -> &Plucker {
        &self.plucker
    }

    /// Image under the Sp(4,C) element; validity is preserved exactly up
    /// to rounding, so no tolerance check is made.
    pub fn transform(&self, g: &Sym3Matrix) -> Self {
        let [p1, p2] = self.basis.map(|p| p.transform(g));
        Self {
            basis: [p1, p2],
            plucker: plucker_of(&p1, &p2),
        }
    }

    /// Same plane up to projective Plücker equality.
    pub fn same_plane(&self, other: &Lagrangian, tol: f64) -> bool {
        self.distance(other) < tol
    }

    pub fn distance(&self, other: &Lagrangian) -> f64 {
        plucker_distance(&self.plucker, &other.plucker)
    }

    /// Hermitian orthonormal basis of the same plane.
    pub fn orthonormal_basis(&self) -> [CubicForm; 2] {
        let [p1, p2] = self.basis;
        let e1 = p1.scale(Complex::from(1.0 / p1.norm()));
        let proj: Complex = e1.coeffs.iter().zip(p2.coeffs.iter()).map(|(x, y)| x.conj() * y).sum();
        let r = p2.combine(ONE, &e1, -proj);
        let e2 = r.scale(Complex::from(1.0 / r.norm()));
        [e1, e2]
    }

    /// Contains a cube whose root is the point.
    pub fn contains(&self, p: &CubicForm, tol: f64) -> bool {
        let [e1, e2] = self.orthonormal_basis();
        let n = p.norm();
        let c1: Complex = e1.coeffs.iter().zip(p.coeffs.iter()).map(|(x, y)| x.conj() * y).sum();
        let c2: Complex = e2.coeffs.iter().zip(p.coeffs.iter()).map(|(x, y)| x.conj() * y).sum();
        let r = p.combine(ONE, &e1, -c1).combine(ONE, &e2, -c2);
        r.norm() < tol * n
    }

    /// The quartic `Δ(α p₁ + β p₂)` in `(α, β)`, coefficients of
    /// `α⁴, α³β, …, β⁴`.
    pub fn pencil_quartic(&self) -> [Complex; 5] {
        pencil_quartic(&self.basis[0], &self.basis[1])
    }
}

fn pencil_quartic(p1: &CubicForm, p2: &CubicForm) -> [Complex; 5] {
    let lin = |k: usize| [p1.coeffs[k], p2.coeffs[k]];
    let (a, b, c, d) = (lin(0), lin(1), lin(2), lin(3));
    let m = |fs: &[&[Complex; 2]]| {
        let mut out = vec![ONE];
        for f in fs {
            out = form_mul(&out, &f[..]);
        }
        out
    };
    let terms: [(f64, Vec<Complex>); 5] = [
        (1.0, m(&[&b, &b, &c, &c])),
        (-4.0, m(&[&a, &c, &c, &c])),
        (-4.0, m(&[&d, &b, &b, &b])),
        (-27.0, m(&[&a, &a, &d, &d])),
        (18.0, m(&[&a, &b, &c, &d])),
    ];
    let mut out = [ZERO; 5];
    for (k, t) in terms.iter() {
        for (i, c) in t.iter().enumerate() {
            out[i] += c * k;
        }
    }
    out
}

/// Value and first two derivatives of a cubic in an affine chart.
fn chart_jet(p: &CubicForm, flip: bool) -> impl Fn(Complex) -> [Complex; 3] + '_ {
    move |x| {
        let c = if flip {
            [p.coeffs[3], p.coeffs[2], p.coeffs[1], p.coeffs[0]]
        } else {
            p.coeffs
        };
        let v = ((c[0] * x + c[1]) * x + c[2]) * x + c[3];
        let d1 = (3.0 * c[0] * x + 2.0 * c[1]) * x + c[2];
        let d2 = 6.0 * c[0] * x + 2.0 * c[1];
        [v, d1, d2]
    }
}

/// Newton iteration on `(t, x)` for `q_t(x) = q_t′(x) = 0`, where `q_t` is
/// the pencil member in an affine chart of `[α:β]` and `x` the double root
/// in an affine chart of CP¹.
fn refine_double_root(
    u1: &CubicForm,
    u2: &CubicForm,
    pencil: ProjPoint,
    double: ProjPoint,
) -> (ProjPoint, ProjPoint) {
    let swap_pencil = pencil.a().norm() < pencil.b().norm();
    let (pa, pb) = if swap_pencil { (u2, u1) } else { (u1, u2) };
    let mut t = if swap_pencil { pencil.a() / pencil.b() } else { pencil.b() / pencil.a() };
    let flip = double.a().norm() > double.b().norm();
    let mut x = if flip { double.b() / double.a() } else { double.a() / double.b() };
    let (ja, jb) = (chart_jet(pa, flip), chart_jet(pb, flip));
    let resid = |t: Complex, x: Complex| {
        let (a, b) = (ja(x), jb(x));
        (a[0] + t * b[0]).norm() + (a[1] + t * b[1]).norm()
    };
    let mut r = resid(t, x);
    for _ in 0..6 {
        let (a, b) = (ja(x), jb(x));
        let f1 = a[0] + t * b[0];
        let f2 = a[1] + t * b[1];
        let (j11, j12, j21, j22) = (b[0], f2, b[1], a[2] + t * b[2]);
        let det = j11 * j22 - j12 * j21;
        if det.norm() == 0.0 {
            break;
        }
        let dt = (f1 * j22 - j12 * f2) / det;
        let dx = (j11 * f2 - j21 * f1) / det;
        let (tn, xn) = (t - dt, x - dx);
        let rn = resid(tn, xn);
        if !(rn < r) {
            break;
        }
        (t, x, r) = (tn, xn, rn);
    }
    let new_pencil = if swap_pencil {
        ProjPoint::new(t, ONE)
    } else {
        ProjPoint::new(ONE, t)
    };
    let new_double = if flip { ProjPoint::new(ONE, x) } else { ProjPoint::new(x, ONE) };
    match (new_pencil, new_double) {
        (Ok(p), Ok(d)) => (p, d),
        _ => (pencil, double),
    }
}

/// Member of the pencil with a repeated root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PencilRoot {
    /// `[α:β]` with the member `α p₁ + β p₂` in the stored basis.
    pub pencil: ProjPoint,
    pub double: ProjPoint,
    pub single: ProjPoint,
}

/// Solves `Δ(α p₁ + β p₂) = 0` and returns, for each solution whose member
/// has a double but not triple root, that double root and the remaining
/// single root.
pub fn pencil_double_roots(w: &Lagrangian, tol: &Tolerance) -> Result<Vec<PencilRoot>> {
    let [p1, p2] = w.basis;
    let (n1, n2) = (p1.norm(), p2.norm());
    let (u1, u2) = (p1.scale((1.0 / n1).into()), p2.scale((1.0 / n2).into()));
    let quartic = pencil_quartic(&u1, &u2);
    if pnorm(&quartic) < tol.tol {
        return Err(Error::NumericalDegeneracy(
            "every member of the pencil has a repeated root".into(),
        ));
    }
    let raw = poly::form_roots(&quartic)?;
    let sep = poly::min_separation(&raw);
    if sep >= tol.cluster_tol && sep < 10.0 * tol.cluster_tol {
        return Err(Error::NumericalDegeneracy(format!(
            "pencil points separated by {sep:e}, too close to the clustering tolerance"
        )));
    }
    let mut out = Vec::new();
    for (pt, _) in poly::cluster(&raw, tol.cluster_tol) {
        let q = u1.combine(pt.a(), &u2, pt.b());
        let (double, single) = q.double_and_single_root()?;
        if double.chordal(&single) < tol.cluster_tol {
            continue;
        }
        let (pt, double) = refine_double_root(&u1, &u2, pt, double);
        let q = u1.combine(pt.a(), &u2, pt.b());
        let q = q.scale((1.0 / q.norm()).into());
        let single = residual_root(&q.coeffs, &double);
        let pencil = ProjPoint::new(pt.a() / n1, pt.b() / n2)?;
        out.push(PencilRoot { pencil, double, single });
    }
    Ok(out)
}

/// The three SL(2,C)-orbits of Lag(C⁴).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitTag {
    Closed,
    Intermediate,
    Open,
}

impl fmt::Display for OrbitTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitTag::Closed => "Closed",
            OrbitTag::Intermediate => "Intermediate",
            OrbitTag::Open => "Open",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum OrbitClass {
    /// Orbit of `⟨X³, X²Y⟩`: a common root of multiplicity two.
    Closed { root: ProjPoint },
    /// Orbit of `⟨X³, XY²⟩`: a simple common root.
    Intermediate { root: ProjPoint },
    /// Orbit of `⟨X²Y, X³+Y³⟩`.
    Open,
}

impl OrbitClass {
    pub fn tag(&self) -> OrbitTag {
        match self {
            OrbitClass::Closed { .. } => OrbitTag::Closed,
            OrbitClass::Intermediate { .. } => OrbitTag::Intermediate,
            OrbitClass::Open => OrbitTag::Open,
        }
    }

    /// Common root and its multiplicity in the gcd of the pencil.
    pub fn witness(&self) -> Option<(ProjPoint, usize)> {
        match *self {
            OrbitClass::Closed { root } => Some((root, 2)),
            OrbitClass::Intermediate { root } => Some((root, 1)),
            OrbitClass::Open => None,
        }
    }
}

fn sylvester(f: &CubicForm, g: &CubicForm) -> DMatrix<Complex> {
    let mut m = DMatrix::zeros(6, 6);
    for j in 0..3 {
        for k in 0..4 {
            m[(j, j + k)] = f.coeffs[k];
            m[(j + 3, j + k)] = g.coeffs[k];
        }
    }
    m
}

/// `|Res(e₁, e₂)|` for a Hermitian orthonormal basis; intrinsic to the plane.
pub fn normalized_resultant(w: &Lagrangian) -> f64 {
    let [e1, e2] = w.orthonormal_basis();
    sylvester(&e1, &e2).determinant().norm()
}

fn root_from_powers(v: &[Complex]) -> Result<ProjPoint> {
    let k = (0..v.len() - 1)
        .max_by(|&i, &j| {
            let si = v[i].norm() + v[i + 1].norm();
            let sj = v[j].norm() + v[j + 1].norm();
            si.total_cmp(&sj)
        })
        .unwrap_or(0);
    ProjPoint::new(v[k], v[k + 1])
}

/// Common root of a plane in the closed orbit, read off the Plücker vector:
/// with `ℓ = uX + vY`, `(W12, W13/2, W14, W24/2, W34) ∝ (u⁴, u³v, …, v⁴)`.
fn closed_root(w: &Plucker) -> Result<ProjPoint> {
    let r = [w[0], w[1] / 2.0, w[2], w[4] / 2.0, w[5]];
    let uv = root_from_powers(&r)?;
    ProjPoint::new(-uv.b(), uv.a())
}

pub fn classify_orbit(w: &Lagrangian, tol: &Tolerance) -> Result<OrbitClass> {
    let [e1, e2] = w.orthonormal_basis();
    let m = sylvester(&e1, &e2);
    let res = m.determinant().norm();
    if res > 10.0 * tol.tol {
        return Ok(OrbitClass::Open);
    }
    if res >= tol.tol {
        return Err(Error::NumericalDegeneracy(format!(
            "normalized resultant {res:e} is within the orbit-boundary band"
        )));
    }
    let svd = m.svd(false, true);
    let s = &svd.singular_values;
    let mut sorted: Vec<f64> = s.iter().copied().collect();
    sorted.sort_by(|a, b| b.total_cmp(a));
    if sorted[4] / sorted[0] < tol.cluster_tol {
        let p = plucker_of(&e1, &e2);
        return Ok(OrbitClass::Closed { root: closed_root(&p)? });
    }
    let v_t = svd.v_t.as_ref().expect("requested right singular vectors");
    let imin = (0..6).min_by(|&i, &j| s[i].total_cmp(&s[j])).unwrap_or(5);
    let v: Vec<Complex> = (0..6).map(|k| v_t[(imin, k)].conj()).collect();
    Ok(OrbitClass::Intermediate {
        root: root_from_powers(&v)?,
    })
}

/// Membership in K_R: a common root lying on RP¹.
pub fn in_kr(w: &Lagrangian, tol: &Tolerance) -> Result<bool> {
    Ok(match classify_orbit(w, tol)?.witness() {
        Some((root, _)) => root.distance_to_real_line() < tol.tol,
        None => false,
    })
}

/// Complement of K_R, the domain of discontinuity.
pub fn in_omega(w: &Lagrangian, tol: &Tolerance) -> Result<bool> {
    in_kr(w, tol).map(|b| !b)
}

/// Inverse of the Plücker embedding on the Lagrangian quadric.
pub fn lagrangian_from_plucker(w: &Plucker, tol: &Tolerance) -> Result<Lagrangian> {
    if !w.iter().all(|c| c.is_finite()) || pnorm(w) == 0.0 {
        return Err(Error::DegenerateInput("Plücker vector must be finite and nonzero".into()));
    }
    let q = plucker_relation_residual(w);
    if q > tol.tol {
        return Err(Error::NotOnQuadric(q));
    }
    let l = lagrangian_residual(w);
    if l > tol.tol {
        return Err(Error::NotLagrangian(l));
    }
    let mut full = [[ZERO; 4]; 4];
    for (k, &(i, j)) in PLUCKER_PAIRS.iter().enumerate() {
        full[i][j] = w[k];
        full[j][i] = -w[k];
    }
    let (k, _) = w
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .expect("six entries");
    let (i, j) = PLUCKER_PAIRS[k];
    let p1 = CubicForm { coeffs: full[i] };
    let p2 = CubicForm { coeffs: full[j] };
    Lagrangian::new(p1, p2, &tol.with_tol(tol.tol.max(1e-12) * 10.0))
}

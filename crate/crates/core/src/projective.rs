//! Points of CP¹, Möbius transformations and the principal representation
//! of SL(2,C) on binary cubics.

use std::fmt;
use std::ops::Mul;

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol::Tolerance;

pub type Complex = Complex64;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);
pub(crate) const I: Complex = Complex::new(0.0, 1.0);

/// A point `[a:b]` of CP¹, stored in canonical form: the coordinate of
/// larger modulus is exactly `1`.
///
/// `[z:1]` is the finite point `z`, `[1:0]` is `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProjPoint")]
pub struct ProjPoint {
    a: Complex,
    b: Complex,
}

#[derive(Deserialize)]
struct RawProjPoint {
    a: Complex,
    b: Complex,
}

impl TryFrom<RawProjPoint> for ProjPoint {
    type Error = Error;

    fn try_from(raw: RawProjPoint) -> Result<Self> {
        ProjPoint::new(raw.a, raw.b)
    }
}

impl ProjPoint {
    pub fn new(a: Complex, b: Complex) -> Result<Self> {
        let (na, nb) = (a.norm(), b.norm());
        if !(na.is_finite() && nb.is_finite() && a.is_finite() && b.is_finite()) {
            return Err(Error::DegenerateInput("non-finite homogeneous coordinate".into()));
        }
        if na == 0.0 && nb == 0.0 {
            return Err(Error::DegenerateInput("[0:0] is not a point of CP¹".into()));
        }
        Ok(Self::normalized(a, b))
    }

    fn normalized(a: Complex, b: Complex) -> Self {
        if a.norm() >= b.norm() {
            Self { a: ONE, b: b / a }
        } else {
            Self { a: a / b, b: ONE }
        }
    }

    /// The finite point `z`, i.e. `[z:1]`.
    pub fn finite(z: Complex) -> Self {
        Self::normalized(z, ONE)
    }

    pub fn real(x: f64) -> Self {
        Self::finite(Complex::new(x, 0.0))
    }

    pub fn infinity() -> Self {
        Self { a: ONE, b: ZERO }
    }

    pub fn zero() -> Self {
        Self { a: ZERO, b: ONE }
    }

    pub fn a(&self) -> Complex {
        self.a
    }

    pub fn b(&self) -> Complex {
        self.b
    }

    /// `a/b`, or `None` at `∞`.
    pub fn to_complex(&self) -> Option<Complex> {
        if self.b == ZERO {
            None
        } else {
            Some(self.a / self.b)
        }
    }

    /// `a·b′ − a′·b`; vanishes exactly when the points coincide.
    pub fn wedge(&self, other: &ProjPoint) -> Complex {
        self.a * other.b - other.a * self.b
    }

    /// Fubini–Study chordal distance `|a b′ − a′ b| / (‖(a,b)‖ ‖(a′,b′)‖)`,
    /// in `[0, 1]`.
    pub fn chordal(&self, other: &ProjPoint) -> f64 {
        let n1 = (self.a.norm_sqr() + self.b.norm_sqr()).sqrt();
        let n2 = (other.a.norm_sqr() + other.b.norm_sqr()).sqrt();
        (self.wedge(other).norm() / (n1 * n2)).min(1.0)
    }

    /// Projective equality at tolerance `tol`.
    pub fn approx_eq(&self, other: &ProjPoint, tol: f64) -> bool {
        self.wedge(other).norm() < tol
    }

    /// Complex conjugate point `[ā : b̄]`.
    pub fn conj(&self) -> ProjPoint {
        Self::normalized(self.a.conj(), self.b.conj())
    }

    /// Distance to RP¹ measured as `|Im(a b̄)| / (|a|² + |b|²)`.
    pub fn distance_to_real_line(&self) -> f64 {
        (self.a * self.b.conj()).im.abs() / (self.a.norm_sqr() + self.b.norm_sqr())
    }

    /// The linear form `bX − aY` vanishing at this point, as `(coef X, coef Y)`.
    pub fn linear_form(&self) -> [Complex; 2] {
        [self.b, -self.a]
    }

    pub fn is_infinity(&self, tol: f64) -> bool {
        self.b.norm() < tol
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_complex() {
            Some(z) if self.b == ONE => write!(f, "{}", fmt_complex(z)),
            _ if self.b.norm() < 1e-300 => write!(f, "∞"),
            _ => write!(f, "[{}:{}]", fmt_complex(self.a), fmt_complex(self.b)),
        }
    }
}

pub(crate) fn fmt_complex(z: Complex) -> String {
    if z.im == 0.0 {
        format!("{:.9}", z.re)
    } else {
        format!("{:.9}{:+.9}i", z.re, z.im)
    }
}

/// Element of SL(2,C) acting on CP¹ by `[a:b] ↦ m·(a,b)ᵀ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mobius {
    pub m: [[Complex; 2]; 2],
}

impl Mobius {
    /// Builds the transformation with matrix `((a,b),(c,d))`, rescaled to
    /// determinant one. The square root of the determinant is the principal
    /// one (argument in `(−π/2, π/2]`).
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Result<Self> {
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if !(det.is_finite() && scale.is_finite()) || det.norm() <= 1e-14 * scale * scale {
            return Err(Error::DegenerateInput("singular Möbius matrix".into()));
        }
        let k = ONE / det.sqrt();
        Ok(Self {
            m: [[a * k, b * k], [c * k, d * k]],
        })
    }

    pub fn identity() -> Self {
        Self {
            m: [[ONE, ZERO], [ZERO, ONE]],
        }
    }

    /// `diag(k, 1/k)`, i.e. `z ↦ k² z`.
    pub fn diagonal(k: Complex) -> Self {
        Self {
            m: [[k, ZERO], [ZERO, ONE / k]],
        }
    }

    pub fn a(&self) -> Complex {
        self.m[0][0]
    }
    pub fn b(&self) -> Complex {
        self.m[0][1]
    }
    pub fn c(&self) -> Complex {
        self.m[1][0]
    }
    pub fn d(&self) -> Complex {
        self.m[1][1]
    }

    pub fn det(&self) -> Complex {
        self.a() * self.d() - self.b() * self.c()
    }

    pub fn inverse(&self) -> Self {
        Self {
            m: [[self.d(), -self.b()], [-self.c(), self.a()]],
        }
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let a = self.a() * p.a + self.b() * p.b;
        let b = self.c() * p.a + self.d() * p.b;
        ProjPoint::normalized(a, b)
    }

    /// Whether the matrix lies in SL(2,R) up to `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.m.iter().flatten().all(|z| z.im.abs() < tol)
    }

    /// Maximum entrywise distance to `other` up to the sign ambiguity of PSL.
    pub fn distance(&self, other: &Mobius) -> f64 {
        let d = |s: f64| {
            self.m
                .iter()
                .flatten()
                .zip(other.m.iter().flatten())
                .map(|(x, y)| (x - y * s).norm())
                .fold(0.0, f64::max)
        };
        d(1.0).min(d(-1.0))
    }
}

impl Mul for Mobius {
    type Output = Mobius;

    fn mul(self, rhs: Mobius) -> Mobius {
        let (u, v) = (self.m, rhs.m);
        Mobius {
            m: [
                [
                    u[0][0] * v[0][0] + u[0][1] * v[1][0],
                    u[0][0] * v[0][1] + u[0][1] * v[1][1],
                ],
                [
                    u[1][0] * v[0][0] + u[1][1] * v[1][0],
                    u[1][0] * v[0][1] + u[1][1] * v[1][1],
                ],
            ],
        }
    }
}

/// Mobius image of the three points under the cross-ratio normalisation
/// `p1 ↦ ∞, p2 ↦ 0, p3 ↦ 1`, before determinant scaling.
fn to_standard_triple(p1: &ProjPoint, p2: &ProjPoint, p3: &ProjPoint) -> [[Complex; 2]; 2] {
    let k1 = p3.wedge(p1);
    let k2 = p3.wedge(p2);
    [[k1 * p2.b, -k1 * p2.a], [k2 * p1.b, -k2 * p1.a]]
}

fn check_distinct(points: &[&ProjPoint], tol: f64) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            if p.chordal(q) < tol {
                return Err(Error::DegenerateInput(format!("points {p} and {q} coincide")));
            }
        }
    }
    Ok(())
}

/// The unique Möbius transformation with `g(pᵢ) = qᵢ`.
pub fn mobius_fixing_triple(
    p: [&ProjPoint; 3],
    q: [&ProjPoint; 3],
    tol: &Tolerance,
) -> Result<Mobius> {
    check_distinct(&p, tol.tol)?;
    check_distinct(&q, tol.tol)?;
    let a = to_standard_triple(p[0], p[1], p[2]);
    let b = to_standard_triple(q[0], q[1], q[2]);
    let a = Mobius::new(a[0][0], a[0][1], a[1][0], a[1][1])?;
    let b = Mobius::new(b[0][0], b[0][1], b[1][0], b[1][1])?;
    Ok(b.inverse() * a)
}

/// Cross-ratio `(z3−z1)(z4−z2) / ((z3−z2)(z4−z1))`, evaluated in
/// homogeneous coordinates so that `∞` is allowed anywhere.
pub fn cross_ratio(z: [&ProjPoint; 4], tol: &Tolerance) -> Result<Complex> {
    check_distinct(&z, tol.tol)?;
    let num = z[2].wedge(z[0]) * z[3].wedge(z[1]);
    let den = z[2].wedge(z[1]) * z[3].wedge(z[0]);
    Ok(num / den)
}

/// A transformation sending `p ↦ 0` and `q ↦ ∞`.
pub fn mobius_to_zero_infinity(p: &ProjPoint, q: &ProjPoint) -> Result<Mobius> {
    Mobius::new(p.b, -p.a, q.b, -q.a)
}

/// Cross-ratio of a regular ideal tetrahedron, `(1 − √3 i)/2`.
pub fn regular_cross_ratio() -> Complex {
    Complex::new(0.5, -(3f64.sqrt()) / 2.0)
}

/// Binary forms in two variables stored by coefficient of `X^{n−k} Y^k`.
pub(crate) fn form_mul(p: &[Complex], q: &[Complex]) -> Vec<Complex> {
    let mut out = vec![ZERO; p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Gram matrix `J` of the symplectic form on cubics in the monomial basis
/// `(X³, X²Y, XY², Y³)`: `ω(P_k, P_{3−k}) = (−1)^k k!(3−k)!/3!`.
pub fn omega_gram() -> Matrix4<Complex> {
    const FACT: [f64; 4] = [1.0, 1.0, 2.0, 6.0];
    let mut j = Matrix4::zeros();
    for k in 0..4 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        j[(k, 3 - k)] = Complex::new(sign * FACT[k] * FACT[3 - k] / 6.0, 0.0);
    }
    j
}

/// Image of an SL(2,C) element under the principal representation into
/// Sp(4,C), acting on coefficient vectors of binary cubics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sym3Matrix {
    pub m4: Matrix4<Complex>,
}

impl Sym3Matrix {
    pub fn apply(&self, coeffs: &[Complex; 4]) -> [Complex; 4] {
        let v = self.m4 * nalgebra::Vector4::from_column_slice(coeffs);
        [v[0], v[1], v[2], v[3]]
    }

    /// `‖m4ᵀ J m4 − J‖_max`.
    pub fn symplectic_defect(&self) -> f64 {
        let j = omega_gram();
        (self.m4.transpose() * j * self.m4 - j).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Mul for Sym3Matrix {
    type Output = Sym3Matrix;
    fn mul(self, rhs: Sym3Matrix) -> Sym3Matrix {
        Sym3Matrix { m4: self.m4 * rhs.m4 }
    }
}

/// The representation `g ↦ (p ↦ p ∘ g⁻¹)`, under which the roots of a
/// cubic are transported by `g`.
pub fn sym3(g: &Mobius) -> Sym3Matrix {
    // p(g⁻¹(X,Y)) with g⁻¹ = ((d,−b),(−c,a)): X ↦ dX − bY, Y ↦ −cX + aY.
    let x_img = [g.d(), -g.b()];
    let y_img = [-g.c(), g.a()];
    let mut m4 = Matrix4::zeros();
    for k in 0..4 {
        let mut mono = vec![ONE];
        for _ in 0..(3 - k) {
            mono = form_mul(&mono, &x_img);
        }
        for _ in 0..k {
            mono = form_mul(&mono, &y_img);
        }
        for (row, c) in mono.into_iter().enumerate() {
            m4[(row, k)] = c;
        }
    }
    Sym3Matrix { m4 }
}

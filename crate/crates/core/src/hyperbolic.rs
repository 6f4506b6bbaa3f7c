//! Upper half-space model of H³, the axis ℓ from −i to i, and the plane P
//! over the real line.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projective::{mobius_to_zero_infinity, Complex, Mobius, ProjPoint, I, ZERO};
use crate::tol::Tolerance;

/// Interior point `(z, t)` of H³, `t > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawH3Point")]
pub struct H3Point {
    pub z: Complex,
    pub t: f64,
}

#[derive(Deserialize)]
struct RawH3Point {
    z: Complex,
    t: f64,
}

impl TryFrom<RawH3Point> for H3Point {
    type Error = Error;
    fn try_from(r: RawH3Point) -> Result<Self> {
        H3Point::new(r.z, r.t)
    }
}

impl H3Point {
    pub fn new(z: Complex, t: f64) -> Result<Self> {
        if !(z.is_finite() && t.is_finite() && t > 0.0) {
            return Err(Error::DegenerateInput(format!("({z}, {t}) is not a point of H³")));
        }
        Ok(Self { z, t })
    }

    /// The base point `O = (0, 1)`.
    pub fn origin() -> Self {
        Self { z: ZERO, t: 1.0 }
    }

    pub fn distance(&self, other: &H3Point) -> f64 {
        h3_distance(self, other)
    }
}

impl fmt::Display for H3Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:.9})", crate::projective::fmt_complex(self.z), self.t)
    }
}

/// Point of the compactification H³ ∪ CP¹.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum H3Bar {
    Interior(H3Point),
    Boundary { boundary: ProjPoint },
}

impl H3Bar {
    pub fn boundary(p: ProjPoint) -> Self {
        H3Bar::Boundary { boundary: p }
    }

    pub fn apply(&self, g: &Mobius) -> Self {
        match self {
            H3Bar::Interior(x) => H3Bar::Interior(poincare_extend(g, x)),
            H3Bar::Boundary { boundary } => H3Bar::boundary(g.apply(boundary)),
        }
    }

    /// Distance in the compactification: hyperbolic distance between
    /// interior points, chordal distance between boundary points, `∞`
    /// otherwise.
    pub fn separation(&self, other: &H3Bar) -> f64 {
        match (self, other) {
            (H3Bar::Interior(a), H3Bar::Interior(b)) => h3_distance(a, b),
            (H3Bar::Boundary { boundary: a }, H3Bar::Boundary { boundary: b }) => a.chordal(b),
            _ => f64::INFINITY,
        }
    }
}

impl fmt::Display for H3Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            H3Bar::Interior(x) => write!(f, "{x}"),
            H3Bar::Boundary { boundary } => write!(f, "{boundary}"),
        }
    }
}

/// Point `x + i h` of the upper half-plane P ≅ H².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct H2Point {
    pub x: f64,
    pub h: f64,
}

impl H2Point {
    pub fn origin() -> Self {
        Self { x: 0.0, h: 1.0 }
    }

    pub fn as_h3(&self) -> H3Point {
        H3Point {
            z: Complex::new(self.x, 0.0),
            t: self.h,
        }
    }

    pub fn distance(&self, other: &H2Point) -> f64 {
        h3_distance(&self.as_h3(), &other.as_h3())
    }

    /// Action of an element of SL(2,R).
    pub fn apply(&self, g: &Mobius) -> Self {
        let y = poincare_extend(g, &self.as_h3());
        Self { x: y.z.re, h: y.t }
    }
}

impl fmt::Display for H2Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.9}, {:.9})", self.x, self.h)
    }
}

/// `[−∞, +∞]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn neg(self) -> Self {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::PosInf => ExtReal::NegInf,
            ExtReal::Finite(x) => ExtReal::Finite(-x),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    /// Maps `±∞` to `f64` infinities; for display and comparisons only.
    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::PosInf => f64::INFINITY,
            ExtReal::Finite(x) => x,
        }
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        if x == f64::INFINITY {
            ExtReal::PosInf
        } else if x == f64::NEG_INFINITY {
            ExtReal::NegInf
        } else {
            ExtReal::Finite(x)
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => write!(f, "-inf"),
            ExtReal::PosInf => write!(f, "+inf"),
            ExtReal::Finite(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct InfTag {
    inf: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawExtReal {
    Num(f64),
    Inf(InfTag),
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(x) => s.serialize_f64(*x),
            ExtReal::PosInf => InfTag { inf: "+".into() }.serialize(s),
            ExtReal::NegInf => InfTag { inf: "-".into() }.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match RawExtReal::deserialize(d)? {
            RawExtReal::Num(x) if x.is_finite() => Ok(ExtReal::Finite(x)),
            RawExtReal::Num(_) => Err(de::Error::custom("extended reals use {\"inf\": ...}")),
            RawExtReal::Inf(t) => match t.inf.as_str() {
                "+" => Ok(ExtReal::PosInf),
                "-" | "\u{2212}" => Ok(ExtReal::NegInf),
                other => Err(de::Error::custom(format!("unknown infinity {other:?}"))),
            },
        }
    }
}

/// Isometric extension of a Möbius transformation to H³.
pub fn poincare_extend(g: &Mobius, x: &H3Point) -> H3Point {
    let (a, b, c, d) = (g.a(), g.b(), g.c(), g.d());
    let czd = c * x.z + d;
    let t2 = x.t * x.t;
    let den = czd.norm_sqr() + c.norm_sqr() * t2;
    let z = ((a * x.z + b) * czd.conj() + a * c.conj() * t2) / den;
    H3Point { z, t: x.t / den }
}

pub fn h3_distance(x: &H3Point, y: &H3Point) -> f64 {
    let num = (x.z - y.z).norm_sqr() + (x.t - y.t).powi(2);
    2.0 * (num.sqrt() / (2.0 * (x.t * y.t).sqrt())).asinh()
}

/// The chart `m(z) = (z + i)/(1 + iz)` sending `−i ↦ 0`, `i ↦ ∞` and ℓ
/// to the vertical axis over `0`.
pub fn axis_chart() -> Mobius {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Mobius {
        m: [[Complex::from(s), I * s], [I * s, Complex::from(s)]],
    }
}

pub fn plus_i() -> ProjPoint {
    ProjPoint::finite(I)
}

pub fn minus_i() -> ProjPoint {
    ProjPoint::finite(-I)
}

/// Signed arclength coordinate on `ℓ̄`, with `η(O) = 0` and `η(±i) = ±∞`.
pub fn eta(x: &H3Bar, tol: &Tolerance) -> Result<ExtReal> {
    let m = axis_chart();
    match x {
        H3Bar::Interior(p) => {
            let y = poincare_extend(&m, p);
            let off = y.z.norm() / y.t;
            if off > tol.tol {
                return Err(Error::NotOnAxis(off));
            }
            Ok(ExtReal::Finite(y.t.ln()))
        }
        H3Bar::Boundary { boundary } => {
            let y = m.apply(boundary);
            if y.is_infinity(tol.tol) {
                Ok(ExtReal::PosInf)
            } else if y.a().norm() < tol.tol {
                Ok(ExtReal::NegInf)
            } else {
                Err(Error::NotOnAxis(y.chordal(&ProjPoint::zero()).min(y.chordal(&ProjPoint::infinity()))))
            }
        }
    }
}

pub fn eta_inv(s: ExtReal) -> H3Bar {
    match s {
        ExtReal::PosInf => H3Bar::boundary(plus_i()),
        ExtReal::NegInf => H3Bar::boundary(minus_i()),
        ExtReal::Finite(s) => H3Bar::Interior(eta_inv_finite(s)),
    }
}

pub fn eta_inv_finite(s: f64) -> H3Point {
    poincare_extend(&axis_chart().inverse(), &H3Point { z: ZERO, t: s.exp() })
}

/// `h_z = ln|m(z)|`, constant on circles orthogonal to ℓ and zero on RP¹.
pub fn height(z: &ProjPoint) -> ExtReal {
    let num = (z.a() + I * z.b()).norm();
    let den = (I * z.a() + z.b()).norm();
    if den == 0.0 {
        ExtReal::PosInf
    } else if num == 0.0 {
        ExtReal::NegInf
    } else {
        ExtReal::Finite((num / den).ln())
    }
}

/// Orthogonal projection onto P: `(x + iy, t) ↦ (x, √(y² + t²))`.
pub fn project_to_p(x: &H3Bar, tol: &Tolerance) -> Result<H2Point> {
    match x {
        H3Bar::Interior(p) => Ok(H2Point {
            x: p.z.re,
            h: p.z.im.hypot(p.t),
        }),
        H3Bar::Boundary { boundary } => {
            if boundary.distance_to_real_line() < tol.tol {
                return Err(Error::UndefinedProjection);
            }
            let z = boundary.to_complex().ok_or(Error::UndefinedProjection)?;
            Ok(H2Point {
                x: z.re,
                h: z.im.abs(),
            })
        }
    }
}

fn axis_conjugate(k: Complex) -> Mobius {
    let m = axis_chart();
    m.inverse() * Mobius::diagonal(k) * m
}

/// `L_λ^±`: translation along ℓ by `±λ`, attracting towards `±i`.
pub fn axis_translate(lambda: f64, positive: bool) -> Mobius {
    let s = if positive { lambda } else { -lambda };
    axis_conjugate(Complex::from((s / 2.0).exp()))
}

/// Elliptic rotation by angle `φ` about ℓ.
pub fn axis_rotate(phi: f64) -> Mobius {
    axis_conjugate(Complex::from_polar(1.0, phi / 2.0))
}

/// The reflection ι in P.
pub trait Reflect {
    fn iota(&self) -> Self;
}

impl Reflect for ProjPoint {
    fn iota(&self) -> Self {
        self.conj()
    }
}

impl Reflect for H3Point {
    fn iota(&self) -> Self {
        H3Point {
            z: self.z.conj(),
            t: self.t,
        }
    }
}

impl Reflect for H3Bar {
    fn iota(&self) -> Self {
        match self {
            H3Bar::Interior(p) => H3Bar::Interior(p.iota()),
            H3Bar::Boundary { boundary } => H3Bar::boundary(boundary.iota()),
        }
    }
}

/// `ι ∘ g ∘ ι`.
impl Reflect for Mobius {
    fn iota(&self) -> Self {
        Mobius {
            m: self.m.map(|row| row.map(|z| z.conj())),
        }
    }
}

/// Second endpoint of the geodesic from `v` through `b`.
pub fn antipode(v: &ProjPoint, b: &H3Point) -> ProjPoint {
    let h = to_origin(b);
    let w = h.apply(v);
    let flipped = ProjPoint::new(-w.b().conj(), w.a().conj()).expect("nonzero coordinates");
    h.inverse().apply(&flipped)
}

/// The map `w ↦ (w − z)/t`, sending `(z, t)` to `O`.
pub fn to_origin(b: &H3Point) -> Mobius {
    let s = b.t.sqrt();
    Mobius {
        m: [[Complex::from(1.0 / s), -b.z / s], [ZERO, Complex::from(s)]],
    }
}

/// Hyperbolic distance from `x` to the geodesic with endpoints `p`, `q`.
pub fn distance_to_geodesic(x: &H3Point, p: &ProjPoint, q: &ProjPoint) -> Result<f64> {
    let g = mobius_to_zero_infinity(p, q)?;
    let y = poincare_extend(&g, x);
    Ok((y.z.norm() / y.t).asinh())
}

/// Hyperbolic distance from `x` to the plane with ideal vertices `u`.
pub fn distance_to_plane(x: &H3Point, u: [&ProjPoint; 3], tol: &Tolerance) -> Result<f64> {
    let targets = [ProjPoint::real(1.0), ProjPoint::finite(I), ProjPoint::real(-1.0)];
    let g = crate::projective::mobius_fixing_triple(u, [&targets[0], &targets[1], &targets[2]], tol)?;
    let y = poincare_extend(&g, x);
    let r2 = y.z.norm_sqr() + y.t * y.t;
    Ok(((r2 - 1.0).abs() / (2.0 * y.t)).asinh())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::ONE;
    use crate::random::Sampler;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn extension_examples() {
        let o = H3Point::origin();
        assert_eq!(poincare_extend(&Mobius::identity(), &o), o);
        let shift = Mobius::new(ONE, ONE, ZERO, ONE).unwrap();
        let y = poincare_extend(&shift, &o);
        assert!((y.z - ONE).norm() < 1e-15 && (y.t - 1.0).abs() < 1e-15);
        let dil = Mobius::diagonal(Complex::from(2f64.sqrt()));
        let y = poincare_extend(&dil, &o);
        assert!(y.z.norm() < 1e-15 && (y.t - 2.0).abs() < 1e-15);
        assert!((h3_distance(&o, &y) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn distance_examples() {
        let o = H3Point::origin();
        assert_eq!(h3_distance(&o, &o), 0.0);
        let e = H3Point::new(ZERO, std::f64::consts::E).unwrap();
        assert!((h3_distance(&o, &e) - 1.0).abs() < 1e-15);
        let p = H3Point::new(ONE, 1.0).unwrap();
        assert!((h3_distance(&o, &p) - 1.5f64.acosh()).abs() < 1e-15);
    }

    #[test]
    fn eta_examples() {
        let tol = Tolerance::default();
        let e0 = eta(&H3Bar::Interior(H3Point::origin()), &tol).unwrap();
        assert!(e0.finite().unwrap().abs() < 1e-15);
        assert_eq!(eta(&H3Bar::boundary(plus_i()), &tol).unwrap(), ExtReal::PosInf);
        assert_eq!(eta(&H3Bar::boundary(minus_i()), &tol).unwrap(), ExtReal::NegInf);
        let p = eta_inv_finite(1.0);
        assert!((h3_distance(&H3Point::origin(), &p) - 1.0).abs() < 1e-14);
        assert!(p.z.re.abs() < 1e-15 && p.z.im > 0.0);
        assert!((p.z.norm_sqr() + p.t * p.t - 1.0).abs() < 1e-14);
        let off = H3Bar::Interior(H3Point::new(c(0.5, 0.0), 1.0).unwrap());
        assert!(matches!(eta(&off, &tol), Err(Error::NotOnAxis(_))));
    }

    #[test]
    fn height_examples() {
        assert_eq!(height(&ProjPoint::zero()), ExtReal::Finite(0.0));
        assert_eq!(height(&minus_i()), ExtReal::NegInf);
        assert_eq!(height(&plus_i()), ExtReal::PosInf);
        let e = std::f64::consts::E;
        let z = ProjPoint::finite(I * (e - 1.0) / (e + 1.0));
        assert!((height(&z).finite().unwrap() - 1.0).abs() < 1e-15);
        assert!(height(&ProjPoint::real(3.7)).finite().unwrap().abs() < 1e-15);
    }

    #[test]
    fn projection_examples() {
        let tol = Tolerance::default();
        let o = H3Bar::Interior(H3Point::origin());
        assert_eq!(project_to_p(&o, &tol).unwrap(), H2Point::origin());
        let p = H3Bar::Interior(H3Point::new(I, 1.0).unwrap());
        let q = project_to_p(&p, &tol).unwrap();
        assert!(q.x == 0.0 && (q.h - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(project_to_p(&H3Bar::boundary(plus_i()), &tol).unwrap(), H2Point::origin());
        assert_eq!(
            project_to_p(&H3Bar::boundary(ProjPoint::real(2.0)), &tol),
            Err(Error::UndefinedProjection)
        );
    }

    #[test]
    fn projection_minimises_distance_to_p() {
        let mut s = Sampler::new(3);
        let tol = Tolerance::default();
        for _ in 0..20 {
            let x = H3Point::new(s.complex_gaussian(), s.uniform(0.2, 3.0)).unwrap();
            let p = project_to_p(&H3Bar::Interior(x), &tol).unwrap();
            let d = h3_distance(&x, &p.as_h3());
            for _ in 0..50 {
                let q = H2Point {
                    x: p.x + s.uniform(-0.3, 0.3),
                    h: p.h * s.uniform(0.7, 1.4),
                };
                assert!(h3_distance(&x, &q.as_h3()) >= d - 1e-12);
            }
        }
    }

    #[test]
    fn translation_examples() {
        let tol = Tolerance::default();
        assert!(axis_translate(0.0, true).distance(&Mobius::identity()) < 1e-15);
        let y = poincare_extend(&axis_translate(1.0, true), &H3Point::origin());
        assert!((eta(&H3Bar::Interior(y), &tol).unwrap().finite().unwrap() - 1.0).abs() < 1e-14);
        let mut s = Sampler::new(5);
        for _ in 0..20 {
            let z = s.proj_point();
            let lam = s.uniform(0.0, 3.0);
            let hz = height(&z).finite().unwrap();
            let moved = axis_translate(lam, true).apply(&z);
            assert!((height(&moved).finite().unwrap() - hz - lam).abs() < 1e-9);
            let back = axis_translate(lam, false).apply(&moved);
            assert!(back.chordal(&z) < 1e-12);
            let r = axis_rotate(s.uniform(0.0, 6.0)).apply(&z);
            assert!((height(&r).finite().unwrap() - hz).abs() < 1e-10);
        }
    }

    #[test]
    fn reflection_examples() {
        let tol = Tolerance::default();
        assert_eq!(H3Point::origin().iota(), H3Point::origin());
        assert!(plus_i().iota().approx_eq(&minus_i(), 1e-15));
        let x = H3Bar::Interior(eta_inv_finite(0.8));
        let e = eta(&x.iota(), &tol).unwrap().finite().unwrap();
        assert!((e + 0.8).abs() < 1e-14);
    }

    #[test]
    fn antipode_and_plane_distance() {
        let tol = Tolerance::default();
        let b = H3Point::new(ZERO, 2f64.sqrt()).unwrap();
        let v = ProjPoint::real(-1.0);
        assert!(antipode(&v, &b).chordal(&ProjPoint::real(2.0)) < 1e-15);
        assert!(antipode(&ProjPoint::infinity(), &b).chordal(&ProjPoint::zero()) < 1e-15);
        let face = [
            ProjPoint::real(-1.0),
            ProjPoint::finite(c(0.5, 3f64.sqrt() / 2.0)),
            ProjPoint::finite(c(0.5, -(3f64.sqrt()) / 2.0)),
        ];
        let d = distance_to_plane(&b, [&face[0], &face[1], &face[2]], &tol).unwrap();
        assert!((d - 2f64.sqrt().ln()).abs() < 1e-15);
        let d = distance_to_geodesic(&b, &ProjPoint::zero(), &ProjPoint::infinity()).unwrap();
        assert!(d.abs() < 1e-15);
    }

    #[test]
    fn ext_real_json() {
        let v = vec![ExtReal::NegInf, ExtReal::Finite(1.5), ExtReal::PosInf];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[{"inf":"-"},1.5,{"inf":"+"}]"#);
        let back: Vec<ExtReal> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let unicode: ExtReal = serde_json::from_str("{\"inf\":\"\u{2212}\"}").unwrap();
        assert_eq!(unicode, ExtReal::NegInf);
        let x = H3Bar::boundary(ProjPoint::infinity());
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"boundary":{"a":[1.0,0.0],"b":[0.0,0.0]}}"#);
        assert_eq!(serde_json::from_str::<H3Bar>(&s).unwrap(), x);
        assert!(serde_json::from_str::<H3Point>(r#"{"z":[0,0],"t":-1}"#).is_err());
    }
}

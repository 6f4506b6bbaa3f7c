//! The projection `q: Ω → H²`, its fiber over `O`, the up/down
//! decomposition of tetrahedra with barycenter on ℓ, and the map Φ.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::{
    antipode, axis_translate, eta, eta_inv_finite, height, minus_i, plus_i, poincare_extend,
    project_to_p, ExtReal, H2Point, H3Bar, H3Point, Reflect,
};
use crate::projective::{mobius_to_zero_infinity, Complex, Mobius, ProjPoint};
use crate::random::Sampler;
use crate::symplectic::{in_omega, Lagrangian};
use crate::tetra::{g_inverse, matching_distance, DecoratedTetra, TetraPoint};
use crate::tol::Tolerance;

/// `η(A_O) = −|ln(½(√6 − √2))|`.
pub fn eta_a_o() -> f64 {
    -(0.5 * (6f64.sqrt() - 2f64.sqrt())).ln().abs()
}

/// `η(B_O) = η(A_O) − 1`.
pub fn eta_b_o() -> f64 {
    eta_a_o() - 1.0
}

const THIRD_TURN: f64 = TAU / 3.0;

/// Point of the fiber F ≅ 𝔗_ℓ̄.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiberPoint {
    Tetra(DecoratedTetra),
    /// `(+i, z)`.
    DegenPlus { second: ProjPoint },
    /// `(−i, z)`.
    DegenMinus { second: ProjPoint },
}

impl FiberPoint {
    /// Vertex multiset; degenerate points count their barycenter three times.
    pub fn sym4(&self) -> [ProjPoint; 4] {
        match self {
            FiberPoint::Tetra(t) => *t.tetra.vertices(),
            FiberPoint::DegenPlus { second } => [plus_i(), plus_i(), plus_i(), *second],
            FiberPoint::DegenMinus { second } => [minus_i(), minus_i(), minus_i(), *second],
        }
    }

    /// Chordal matching distance of the vertex multisets.
    pub fn distance(&self, other: &FiberPoint) -> f64 {
        matching_distance(&self.sym4(), &other.sym4())
    }

    pub fn barycenter(&self) -> H3Bar {
        match self {
            FiberPoint::Tetra(t) => H3Bar::Interior(t.barycenter),
            FiberPoint::DegenPlus { .. } => H3Bar::boundary(plus_i()),
            FiberPoint::DegenMinus { .. } => H3Bar::boundary(minus_i()),
        }
    }
}

impl Reflect for FiberPoint {
    fn iota(&self) -> Self {
        match self {
            FiberPoint::Tetra(t) => FiberPoint::Tetra(t.iota()),
            FiberPoint::DegenPlus { second } => FiberPoint::DegenMinus { second: second.iota() },
            FiberPoint::DegenMinus { second } => FiberPoint::DegenPlus { second: second.iota() },
        }
    }
}

/// Bottom vertex and rotation angle of a tetrahedron in the down part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DownCoord {
    pub v: ProjPoint,
    /// Angle in `[0, 2π/3)`.
    pub theta: f64,
}

impl DownCoord {
    pub fn new(v: ProjPoint, theta: f64) -> Self {
        Self {
            v,
            theta: theta.rem_euclid(THIRD_TURN),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum UpDown {
    Up,
    Down(DownCoord),
    /// Bottom vertex at `−i`.
    DownThree,
}

/// `q = π_P ∘ Q` on Ω.
pub fn project_q_h2(w: &Lagrangian, tol: &Tolerance) -> Result<H2Point> {
    if !in_omega(w, tol)? {
        return Err(Error::NotInOmega);
    }
    project_to_p(&g_inverse(w, tol)?.barycenter(), tol)
}

/// The fiber point of `w` when `q(w) = O`.
pub fn in_fiber_o(w: &Lagrangian, tol: &Tolerance) -> Option<FiberPoint> {
    if !in_omega(w, tol).ok()? {
        return None;
    }
    let x = g_inverse(w, tol).ok()?;
    let p = project_to_p(&x.barycenter(), tol).ok()?;
    if p.distance(&H2Point::origin()) > tol.tol.sqrt().max(10.0 * tol.tol) {
        return None;
    }
    match x {
        TetraPoint::Tetra(t) => Some(FiberPoint::Tetra(t)),
        TetraPoint::Degenerate(d) => {
            if d.first.chordal(&plus_i()) < d.first.chordal(&minus_i()) {
                Some(FiberPoint::DegenPlus { second: d.second })
            } else {
                Some(FiberPoint::DegenMinus { second: d.second })
            }
        }
    }
}

/// `f(v) = v + 1/(η(B_O) − v)` on `v < η(B_O)`.
pub fn f_shift(v: f64) -> Result<f64> {
    let b = eta_b_o();
    if !(v < b) {
        return Err(Error::DomainError(format!("f is defined below {b}, got {v}")));
    }
    Ok(v + 1.0 / (b - v))
}

/// Inverse of [`f_shift`].
pub fn f_inverse(h: f64) -> f64 {
    let d = eta_b_o() - h;
    let u = if d >= 0.0 {
        (d + (d * d + 4.0).sqrt()) / 2.0
    } else {
        2.0 / (-d + (d * d + 4.0).sqrt())
    };
    eta_b_o() - u
}

/// `ρ_s(v) = min(v + s, f(v))`.
pub fn rho_s(v: f64, s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::DomainError(format!("ρ_s needs s ≥ 0, got {s}")));
    }
    Ok((v + s).min(f_shift(v)?))
}

/// Chart `n` with `n(v) = ∞`, `n(v_dual) = 0`, `n(b) = (0, √2)`, rotated so
/// that the zero of the angle sits at `1`. The three other vertices lie on
/// the unit circle.
fn down_chart(v: &ProjPoint, b: &H3Point, tol: &Tolerance) -> Result<Mobius> {
    let vd = antipode(v, b);
    let g = mobius_to_zero_infinity(&vd, v)?;
    let bt = poincare_extend(&g, b).t;
    let k = (2f64.sqrt() / bt).sqrt();
    let n0 = Mobius::diagonal(Complex::from(k)) * g;
    let dir = if v.chordal(&minus_i()) < tol.tol {
        n0.apply(&ProjPoint::real(1.0))
    } else {
        n0.apply(&minus_i())
    };
    let p = dir
        .to_complex()
        .filter(|p| p.norm() > 0.0)
        .ok_or_else(|| Error::NumericalDegeneracy("angle origin is undefined".into()))?;
    let u = p / p.norm();
    let inv = n0.inverse();
    let u0 = if v.chordal(&minus_i()) < tol.tol {
        u
    } else {
        let hp = height(&inv.apply(&ProjPoint::finite(u))).to_f64();
        let hm = height(&inv.apply(&ProjPoint::finite(-u))).to_f64();
        if hp <= hm {
            u
        } else {
            -u
        }
    };
    Ok(Mobius::diagonal(u0.conj().sqrt()) * n0)
}

/// The tetrahedron with barycenter `η⁻¹(c)`, bottom vertex `d.v` and angle
/// `d.theta`.
pub fn make_down_tetra(c: f64, d: &DownCoord, tol: &Tolerance) -> Result<DecoratedTetra> {
    if !c.is_finite() {
        return Err(Error::DomainError("barycenter coordinate must be finite".into()));
    }
    let thr = c + eta_b_o();
    let hv = height(&d.v).to_f64();
    if !(hv < thr) {
        return Err(Error::DomainError(format!(
            "bottom vertex height {hv} is not below the level {thr}"
        )));
    }
    let b = eta_inv_finite(c);
    let n = down_chart(&d.v, &b, tol)?;
    let rot = Mobius::diagonal(Complex::from_polar(1.0, (d.theta - std::f64::consts::PI) / 2.0));
    let mut t = crate::tetra::decorated_image(&(n.inverse() * rot), tol)?;
    t.barycenter = b;
    Ok(t)
}

fn axis_coord(t: &DecoratedTetra, tol: &Tolerance) -> Result<f64> {
    let loose = tol.with_tol(tol.tol.max(1e-12) * 100.0);
    eta(&H3Bar::Interior(t.barycenter), &loose)?
        .finite()
        .ok_or(Error::NotOnAxis(f64::INFINITY))
}

/// Up/down decomposition relative to the level `η(B_c) = η(c) + η(B_O)`.
pub fn updown_classify(t: &DecoratedTetra, tol: &Tolerance) -> Result<UpDown> {
    let c = axis_coord(t, tol)?;
    let thr = c + eta_b_o();
    let mut below = Vec::new();
    for v in t.tetra.vertices() {
        let h = height(v).to_f64();
        if (h - thr).abs() < tol.tol {
            return Err(Error::AmbiguousBoundary { height: h, threshold: thr });
        }
        if h < thr {
            below.push(*v);
        }
    }
    match below.len() {
        0 => Ok(UpDown::Up),
        1 => {
            let v = below[0];
            if v.chordal(&minus_i()) < tol.tol {
                return Ok(UpDown::DownThree);
            }
            let n = down_chart(&v, &t.barycenter, tol)?;
            let w = t
                .tetra
                .vertices()
                .iter()
                .filter(|w| **w != v)
                .filter_map(|w| n.apply(w).to_complex())
                .next()
                .ok_or_else(|| Error::NumericalDegeneracy("no upper vertex".into()))?;
            Ok(UpDown::Down(DownCoord::new(v, w.arg())))
        }
        count => Err(Error::MultipleBottomVertices { count }),
    }
}

/// Up/down type used by Φ: the boundary band counts as up, where both
/// branches of Φ agree.
fn phi_type(t: &DecoratedTetra, tol: &Tolerance) -> Result<UpDown> {
    match updown_classify(t, tol) {
        Err(Error::AmbiguousBoundary { .. }) => Ok(UpDown::Up),
        other => other,
    }
}

/// `M_λ`: moves the barycenter by `L_λ⁺` keeping bottom vertex and angle.
pub fn m_shift(lambda: f64, t: &DecoratedTetra, tol: &Tolerance) -> Result<DecoratedTetra> {
    if !(lambda >= 0.0) {
        return Err(Error::DomainError(format!("M_λ needs λ ≥ 0, got {lambda}")));
    }
    match updown_classify(t, tol)? {
        UpDown::Up => Err(Error::DomainError("M_λ is defined on the down part".into())),
        UpDown::DownThree => Ok(t.apply(&axis_translate(lambda, true))),
        UpDown::Down(d) => {
            if lambda == 0.0 {
                return Ok(*t);
            }
            make_down_tetra(axis_coord(t, tol)? + lambda, &d, tol)
        }
    }
}

fn at_origin(t: &DecoratedTetra, tol: &Tolerance) -> Result<()> {
    let d = t.barycenter.distance(&H3Point::origin());
    if d > tol.tol.sqrt().max(10.0 * tol.tol) {
        return Err(Error::DomainError(format!("barycenter is at distance {d:e} from O")));
    }
    Ok(())
}

/// `λ₀ = f(h_v) − h_v`.
fn uplift_length(v: &ProjPoint) -> Result<f64> {
    let h = height(v).to_f64();
    Ok(f_shift(h)? - h)
}

/// `z^f = L⁺_λ(z)` with `λ = f(h_z) − h_z`; `−i` is fixed.
pub fn f_uplift(z: &ProjPoint, tol: &Tolerance) -> Result<ProjPoint> {
    if z.chordal(&minus_i()) < tol.tol {
        return Ok(minus_i());
    }
    Ok(axis_translate(uplift_length(z)?, true).apply(z))
}

fn phi_plus(t: &DecoratedTetra, s: ExtReal, tol: &Tolerance) -> Result<FiberPoint> {
    let kind = phi_type(t, tol)?;
    match s {
        ExtReal::Finite(0.0) => Ok(FiberPoint::Tetra(*t)),
        ExtReal::Finite(s) => match kind {
            UpDown::Up | UpDown::DownThree => {
                Ok(FiberPoint::Tetra(t.apply(&axis_translate(s, true))))
            }
            UpDown::Down(d) => {
                let lam = uplift_length(&d.v)?;
                if s <= lam {
                    Ok(FiberPoint::Tetra(t.apply(&axis_translate(s, true))))
                } else {
                    // M_{s−λ₀} ∘ L_{λ₀} = L_{λ₀} ∘ M_{s−λ₀}, and the right side keeps
                    // the bottom vertex representable for large λ₀
                    let m = make_down_tetra(s - lam, &d, tol)?;
                    Ok(FiberPoint::Tetra(m.apply(&axis_translate(lam, true))))
                }
            }
        },
        ExtReal::PosInf => Ok(FiberPoint::DegenPlus {
            second: match kind {
                UpDown::Up => plus_i(),
                UpDown::DownThree => minus_i(),
                UpDown::Down(d) => f_uplift(&d.v, tol)?,
            },
        }),
        ExtReal::NegInf => unreachable!("negative parameters are reflected"),
    }
}

/// Φ: 𝔗_O × [−∞, +∞] → 𝔗_ℓ̄.
pub fn phi(t: &DecoratedTetra, s: ExtReal, tol: &Tolerance) -> Result<FiberPoint> {
    at_origin(t, tol)?;
    let negative = match s {
        ExtReal::NegInf => true,
        ExtReal::Finite(x) => x < 0.0,
        ExtReal::PosInf => false,
    };
    if negative {
        Ok(phi_plus(&t.iota(), s.neg(), tol)?.iota())
    } else {
        phi_plus(t, s, tol)
    }
}

/// `n` tetrahedra `T` at `O` with `Φ(T, +∞) = (+i, z)`, spaced evenly in
/// the angle.
pub fn phi_fiber(z: &ProjPoint, n: usize, tol: &Tolerance) -> Result<Vec<DecoratedTetra>> {
    if z.chordal(&plus_i()) < tol.tol {
        return Err(Error::DomainError(
            "the fiber over (+i, +i) is the whole up part".into(),
        ));
    }
    let v = if z.chordal(&minus_i()) < tol.tol {
        minus_i()
    } else {
        let hz = height(z).to_f64();
        let hv = f_inverse(hz);
        axis_translate(hz - hv, false).apply(z)
    };
    (0..n)
        .map(|k| {
            let theta = THIRD_TURN * k as f64 / n as f64;
            make_down_tetra(0.0, &DownCoord::new(v, theta), tol)
        })
        .collect()
}

/// Random tetrahedron with barycenter `η⁻¹(c)`.
pub fn random_tetra_on_axis(s: &mut Sampler, c: f64, tol: &Tolerance) -> Result<DecoratedTetra> {
    let k = Complex::from(2f64.powf(-0.25));
    let g = axis_translate(c.abs(), c >= 0.0) * s.su2() * Mobius::diagonal(k);
    let mut t = crate::tetra::decorated_image(&g, tol)?;
    t.barycenter = eta_inv_finite(c);
    Ok(t)
}

/// Rejection sample of a tetrahedron in the down part at `η⁻¹(c)`.
pub fn random_down_on_axis(
    s: &mut Sampler,
    c: f64,
    tol: &Tolerance,
) -> Result<(DecoratedTetra, DownCoord)> {
    for _ in 0..10_000 {
        let t = random_tetra_on_axis(s, c, tol)?;
        if let Ok(UpDown::Down(d)) = updown_classify(&t, tol) {
            return Ok((t, d));
        }
    }
    Err(Error::NumericalDegeneracy("no down tetrahedron sampled".into()))
}

/// Rejection sample of a tetrahedron in the up part at `η⁻¹(c)`.
pub fn random_up_on_axis(s: &mut Sampler, c: f64, tol: &Tolerance) -> Result<DecoratedTetra> {
    for _ in 0..10_000 {
        let t = random_tetra_on_axis(s, c, tol)?;
        if let Ok(UpDown::Up) = updown_classify(&t, tol) {
            return Ok(t);
        }
    }
    Err(Error::NumericalDegeneracy("no up tetrahedron sampled".into()))
}

/// One frame of an exported path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneFrame {
    pub s: ExtReal,
    pub tetra: Vec<ProjPoint>,
    pub dual: Vec<ProjPoint>,
    pub barycenter: H3Bar,
}

impl SceneFrame {
    pub fn new(s: ExtReal, p: &FiberPoint) -> Self {
        match p {
            FiberPoint::Tetra(t) => Self {
                s,
                tetra: t.tetra.vertices().to_vec(),
                dual: t.dual.vertices().to_vec(),
                barycenter: H3Bar::Interior(t.barycenter),
            },
            _ => Self {
                s,
                tetra: p.sym4().to_vec(),
                dual: p.sym4().to_vec(),
                barycenter: p.barycenter(),
            },
        }
    }
}

/// Samples Φ at `steps` evenly spaced parameters in `[s0, s1]`; a single
/// step uses `s0`.
pub fn scene(
    t: &DecoratedTetra,
    s0: f64,
    s1: f64,
    steps: usize,
    tol: &Tolerance,
) -> Result<Vec<SceneFrame>> {
    if steps == 0 || !(s0.is_finite() && s1.is_finite()) {
        return Err(Error::DomainError("scene needs a finite range and at least one step".into()));
    }
    (0..steps)
        .map(|k| {
            let s = if steps == 1 {
                s0
            } else {
                s0 + (s1 - s0) * k as f64 / (steps - 1) as f64
            };
            phi(t, ExtReal::Finite(s), tol).map(|p| SceneFrame::new(ExtReal::Finite(s), &p))
        })
        .collect()
}

/// Angle of the vertex `w` in the chart of `t`, for diagnostics.
pub fn vertex_angle(t: &DecoratedTetra, v: &ProjPoint, w: &ProjPoint, tol: &Tolerance) -> Result<f64> {
    let n = down_chart(v, &t.barycenter, tol)?;
    n.apply(w)
        .to_complex()
        .map(|z| z.arg().rem_euclid(TAU))
        .ok_or_else(|| Error::DomainError("vertex coincides with the bottom vertex".into()))
}

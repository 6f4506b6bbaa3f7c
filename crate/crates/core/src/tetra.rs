//! Regular ideal tetrahedra, their duals and barycenters, and the
//! correspondence with Lag(C⁴).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::{
    antipode, distance_to_geodesic, distance_to_plane, poincare_extend, H3Bar, H3Point, Reflect,
};
use crate::projective::{
    cross_ratio, mobius_fixing_triple, regular_cross_ratio, sym3, Complex, Mobius, ProjPoint,
};
use crate::symplectic::{classify_orbit, pencil_double_roots, CubicForm, Lagrangian, OrbitClass};
use crate::tol::Tolerance;

/// Largest admissible distance of the cross-ratio from `(1 − √3 i)/2`.
pub const REGULARITY_TOL: f64 = 1e-8;

/// Four distinct points of CP¹. The order carries no meaning.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<ProjPoint>", into = "Vec<ProjPoint>")]
pub struct IdealTetra {
    vertices: [ProjPoint; 4],
}

impl TryFrom<Vec<ProjPoint>> for IdealTetra {
    type Error = Error;
    fn try_from(v: Vec<ProjPoint>) -> Result<Self> {
        let arr: [ProjPoint; 4] = v
            .try_into()
            .map_err(|v: Vec<ProjPoint>| Error::DegenerateInput(format!("{} vertices, expected 4", v.len())))?;
        IdealTetra::new(arr, &Tolerance::default())
    }
}

impl From<IdealTetra> for Vec<ProjPoint> {
    fn from(t: IdealTetra) -> Self {
        t.vertices.to_vec()
    }
}

impl IdealTetra {
    pub fn new(vertices: [ProjPoint; 4], tol: &Tolerance) -> Result<Self> {
        for i in 0..4 {
            for j in i + 1..4 {
                if vertices[i].chordal(&vertices[j]) <= tol.tol {
                    return Err(Error::DegenerateInput(format!(
                        "vertices {} and {} coincide",
                        vertices[i], vertices[j]
                    )));
                }
            }
        }
        Ok(Self { vertices })
    }

    /// `{∞, −1, (1 ± √3 i)/2}`, with barycenter `(0, √2)`.
    pub fn standard() -> Self {
        let h = 3f64.sqrt() / 2.0;
        Self {
            vertices: [
                ProjPoint::infinity(),
                ProjPoint::real(-1.0),
                ProjPoint::finite(Complex::new(0.5, h)),
                ProjPoint::finite(Complex::new(0.5, -h)),
            ],
        }
    }

    pub fn vertices(&self) -> &[ProjPoint; 4] {
        &self.vertices
    }

    pub fn apply(&self, g: &Mobius) -> Self {
        Self {
            vertices: self.vertices.map(|v| g.apply(&v)),
        }
    }

    /// Cross-ratio of the vertices taken in an ordering with non-positive
    /// imaginary part; odd reorderings conjugate the value, so this is an
    /// invariant of the unordered set. Equal to `(1 − √3 i)/2` exactly when
    /// the tetrahedron is regular.
    pub fn cross_ratio(&self, tol: &Tolerance) -> Result<Complex> {
        let v = &self.vertices;
        let z = cross_ratio([&v[0], &v[1], &v[2], &v[3]], tol)?;
        if z.im > 0.0 {
            cross_ratio([&v[0], &v[1], &v[3], &v[2]], tol)
        } else {
            Ok(z)
        }
    }

    pub fn is_regular(&self, tol: &Tolerance) -> bool {
        self.cross_ratio(tol)
            .map(|z| (z - regular_cross_ratio()).norm() < REGULARITY_TOL)
            .unwrap_or(false)
    }

    /// Chordal matching distance: minimum over bijections of the largest
    /// chordal distance between matched vertices.
    pub fn distance(&self, other: &IdealTetra) -> f64 {
        matching_distance(&self.vertices, &other.vertices)
    }
}

pub(crate) fn matching_distance(a: &[ProjPoint], b: &[ProjPoint]) -> f64 {
    fn go(a: &[ProjPoint], b: &[ProjPoint], used: &mut Vec<bool>, i: usize, cur: f64, best: &mut f64) {
        if cur >= *best {
            return;
        }
        if i == a.len() {
            *best = cur;
            return;
        }
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                go(a, b, used, i + 1, cur.max(a[i].chordal(&b[j])), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(a, b, &mut vec![false; b.len()], 0, 0.0, &mut best);
    best
}

impl Reflect for IdealTetra {
    fn iota(&self) -> Self {
        Self {
            vertices: self.vertices.map(|v| v.iota()),
        }
    }
}

impl fmt::Display for IdealTetra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = &self.vertices;
        write!(f, "{{{}, {}, {}, {}}}", v[0], v[1], v[2], v[3])
    }
}

/// A regular tetrahedron with its dual; vertex `i` of `tetra` is paired
/// with vertex `i` of `dual`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecoratedTetra {
    pub tetra: IdealTetra,
    pub dual: IdealTetra,
    pub barycenter: H3Point,
}

impl DecoratedTetra {
    pub fn pairing(&self) -> [(ProjPoint, ProjPoint); 4] {
        std::array::from_fn(|i| (self.tetra.vertices[i], self.dual.vertices[i]))
    }

    pub fn apply(&self, g: &Mobius) -> Self {
        Self {
            tetra: self.tetra.apply(g),
            dual: self.dual.apply(g),
            barycenter: poincare_extend(g, &self.barycenter),
        }
    }

    /// Largest distance from the barycenter to a pairing geodesic.
    pub fn collinearity_defect(&self) -> f64 {
        self.pairing()
            .iter()
            .map(|(v, w)| distance_to_geodesic(&self.barycenter, v, w).unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    /// Distances from the barycenter to the four face planes.
    pub fn face_distances(&self, tol: &Tolerance) -> Result<[f64; 4]> {
        let v = &self.tetra.vertices;
        let mut out = [0.0; 4];
        for (k, d) in out.iter_mut().enumerate() {
            let f: Vec<&ProjPoint> = (0..4).filter(|&j| j != k).map(|j| &v[j]).collect();
            *d = distance_to_plane(&self.barycenter, [f[0], f[1], f[2]], tol)?;
        }
        Ok(out)
    }

    /// Distance that ignores the labelling: vertex sets, dual sets and the
    /// pairing are compared through a common bijection.
    pub fn distance(&self, other: &DecoratedTetra) -> f64 {
        let mut best = f64::INFINITY;
        for p in permutations4() {
            let mut m: f64 = 0.0;
            for i in 0..4 {
                m = m
                    .max(self.tetra.vertices[i].chordal(&other.tetra.vertices[p[i]]))
                    .max(self.dual.vertices[i].chordal(&other.dual.vertices[p[i]]));
            }
            best = best.min(m);
        }
        best
    }
}

impl Reflect for DecoratedTetra {
    fn iota(&self) -> Self {
        Self {
            tetra: self.tetra.iota(),
            dual: self.dual.iota(),
            barycenter: self.barycenter.iota(),
        }
    }
}

/// A point of CP¹ × CP¹; `first` is the degenerate barycenter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegenTetra {
    pub first: ProjPoint,
    pub second: ProjPoint,
}

impl DegenTetra {
    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.first.chordal(&self.second) < tol
    }

    pub fn apply(&self, g: &Mobius) -> Self {
        Self {
            first: g.apply(&self.first),
            second: g.apply(&self.second),
        }
    }
}

/// A possibly degenerate regular tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TetraPoint {
    Tetra(DecoratedTetra),
    Degenerate(DegenTetra),
}

impl TetraPoint {
    pub fn apply(&self, g: &Mobius) -> Self {
        match self {
            TetraPoint::Tetra(t) => TetraPoint::Tetra(t.apply(g)),
            TetraPoint::Degenerate(d) => TetraPoint::Degenerate(d.apply(g)),
        }
    }

    /// Barycenter in the compactification of H³.
    pub fn barycenter(&self) -> H3Bar {
        match self {
            TetraPoint::Tetra(t) => H3Bar::Interior(t.barycenter),
            TetraPoint::Degenerate(d) => H3Bar::boundary(d.first),
        }
    }
}

pub(crate) fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    if distinct {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Transformation carrying the tetrahedron onto the standard one, vertex
/// `p[k]` going to standard vertex `k`.
fn standard_position(t: &IdealTetra, tol: &Tolerance) -> Result<(Mobius, [usize; 4])> {
    let s = IdealTetra::standard().vertices;
    let v = &t.vertices;
    let mut best: Option<(f64, Mobius, [usize; 4])> = None;
    for p in permutations4() {
        let g = mobius_fixing_triple([&v[p[0]], &v[p[1]], &v[p[2]]], [&s[0], &s[1], &s[2]], tol)?;
        let miss = g.apply(&v[p[3]]).chordal(&s[3]);
        if miss < REGULARITY_TOL {
            return Ok((g, p));
        }
        if best.as_ref().is_none_or(|b| miss < b.0) {
            best = Some((miss, g, p));
        }
    }
    let miss = best.map(|b| b.0).unwrap_or(f64::INFINITY);
    Err(Error::NotRegular(format!("fourth vertex misses the standard position by {miss:e}")))
}

pub fn barycenter(t: &IdealTetra, tol: &Tolerance) -> Result<H3Point> {
    let (g, _) = standard_position(t, tol)?;
    let b0 = H3Point {
        z: Complex::new(0.0, 0.0),
        t: 2f64.sqrt(),
    };
    Ok(poincare_extend(&g.inverse(), &b0))
}

/// Pairs every vertex with the far endpoint of the geodesic through it and
/// the barycenter.
pub fn dual_tetra(t: &IdealTetra, tol: &Tolerance) -> Result<DecoratedTetra> {
    let b = barycenter(t, tol)?;
    let dual = t.vertices.map(|v| antipode(&v, &b));
    Ok(DecoratedTetra {
        tetra: *t,
        dual: IdealTetra { vertices: dual },
        barycenter: b,
    })
}

fn pair_form(v: &ProjPoint, w: &ProjPoint) -> CubicForm {
    CubicForm::from_roots([v, v, w])
}

/// The Lagrangian of a possibly degenerate tetrahedron.
pub fn g_map(x: &TetraPoint, tol: &Tolerance) -> Result<Lagrangian> {
    match x {
        TetraPoint::Tetra(t) => {
            let forms: Vec<CubicForm> = t.pairing().iter().map(|(v, w)| pair_form(v, w)).collect();
            let mut best: Option<(f64, usize, usize)> = None;
            for i in 0..4 {
                for j in i + 1..4 {
                    let w = crate::symplectic::plucker_of(&forms[i], &forms[j]);
                    let n = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
                        / (forms[i].norm() * forms[j].norm());
                    if best.is_none_or(|b| n > b.0) {
                        best = Some((n, i, j));
                    }
                }
            }
            let (_, i, j) = best.expect("six pairs");
            Lagrangian::new(forms[i], forms[j], tol)
        }
        TetraPoint::Degenerate(d) => {
            let (a, c) = (&d.first, &d.second);
            if d.is_diagonal(tol.tol) {
                let aux = ProjPoint::new(-a.b().conj(), a.a().conj())?;
                crate::symplectic::veronese2(a, &aux, tol)
            } else {
                Lagrangian::new(CubicForm::from_roots([a, a, a]), CubicForm::from_roots([a, c, c]), tol)
            }
        }
    }
}

/// Second point of a plane in the intermediate orbit with common root `r`.
fn intermediate_second_point(w: &Lagrangian, r: &ProjPoint) -> Result<ProjPoint> {
    let n = (r.a().norm_sqr() + r.b().norm_sqr()).sqrt();
    let (a, b) = (r.a() / n, r.b() / n);
    let h = Mobius {
        m: [[b.conj(), a], [-a.conj(), b]],
    };
    let s = sym3(&h.inverse());
    let moved = w.basis().map(|p| p.transform(&s));
    let best = moved
        .iter()
        .max_by(|p, q| {
            let np = p.coeffs[1].norm().hypot(p.coeffs[2].norm());
            let nq = q.coeffs[1].norm().hypot(q.coeffs[2].norm());
            np.total_cmp(&nq)
        })
        .expect("two basis vectors");
    let (bb, cc) = (best.coeffs[1], best.coeffs[2]);
    Ok(h.apply(&ProjPoint::new(2.0 * cc, -bb)?))
}

/// Inverse of [`g_map`].
pub fn g_inverse(w: &Lagrangian, tol: &Tolerance) -> Result<TetraPoint> {
    match classify_orbit(w, tol)? {
        OrbitClass::Open => {
            let roots = pencil_double_roots(w, tol)?;
            if roots.len() != 4 {
                return Err(Error::NumericalDegeneracy(format!(
                    "{} double-root members in an open-orbit pencil",
                    roots.len()
                )));
            }
            let tetra = IdealTetra::new(std::array::from_fn(|i| roots[i].double), tol)?;
            let dual = IdealTetra::new(std::array::from_fn(|i| roots[i].single), tol)?;
            let b = barycenter(&tetra, tol)?;
            Ok(TetraPoint::Tetra(DecoratedTetra {
                tetra,
                dual,
                barycenter: b,
            }))
        }
        OrbitClass::Intermediate { root } => Ok(TetraPoint::Degenerate(DegenTetra {
            first: root,
            second: intermediate_second_point(w, &root)?,
        })),
        OrbitClass::Closed { root } => Ok(TetraPoint::Degenerate(DegenTetra {
            first: root,
            second: root,
        })),
    }
}

/// The equivariant projection `Lag(C⁴) → H³ ∪ CP¹` to the (possibly
/// degenerate) barycenter.
pub fn project_q(w: &Lagrangian, tol: &Tolerance) -> Result<H3Bar> {
    Ok(g_inverse(w, tol)?.barycenter())
}

/// `g · T₀` for a regular tetrahedron with its dual.
pub fn decorated_image(g: &Mobius, tol: &Tolerance) -> Result<DecoratedTetra> {
    dual_tetra(&IdealTetra::standard(), tol).map(|d| d.apply(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{representative, Sampler};
    use crate::symplectic::OrbitTag;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn cube_tetra() -> IdealTetra {
        let c2 = 2f64.cbrt();
        let w = Complex::from_polar(c2, 2.0 * std::f64::consts::PI / 3.0);
        IdealTetra::new(
            [ProjPoint::zero(), ProjPoint::real(c2), ProjPoint::finite(w), ProjPoint::finite(w.conj())],
            &Tolerance::default(),
        )
        .unwrap()
    }

    #[test]
    fn standard_barycenter_and_dual() {
        let tol = Tolerance::default();
        let t = IdealTetra::standard();
        assert!(t.is_regular(&tol));
        let b = barycenter(&t, &tol).unwrap();
        assert!(b.z.norm() < 1e-15 && (b.t - 2f64.sqrt()).abs() < 1e-15);
        let d = dual_tetra(&t, &tol).unwrap();
        let s3 = 3f64.sqrt();
        let expected = [
            ProjPoint::zero(),
            ProjPoint::real(2.0),
            ProjPoint::finite(c(-1.0, -s3)),
            ProjPoint::finite(c(-1.0, s3)),
        ];
        for (k, e) in expected.iter().enumerate() {
            assert!(d.dual.vertices()[k].chordal(e) < 1e-14, "{k}");
        }
        assert!(d.collinearity_defect() < 1e-14);
        assert!(d.dual.is_regular(&tol));
    }

    #[test]
    fn cube_root_tetra() {
        let tol = Tolerance::default();
        let t = cube_tetra();
        let b = barycenter(&t, &tol).unwrap();
        assert!(b.z.norm() < 1e-14);
        assert!((b.t - 2f64.powf(-1.0 / 6.0)).abs() < 1e-14);
        let d = dual_tetra(&t, &tol).unwrap();
        let c4 = 4f64.cbrt();
        let s3 = 3f64.sqrt();
        let expected = [
            ProjPoint::infinity(),
            ProjPoint::real(-1.0 / c4),
            ProjPoint::finite(c(1.0, s3) / (2.0 * c4)),
            ProjPoint::finite(c(1.0, -s3) / (2.0 * c4)),
        ];
        assert!(matching_distance(d.dual.vertices(), &expected) < 1e-13);
    }

    #[test]
    fn non_regular_is_rejected() {
        let tol = Tolerance::default();
        let t = IdealTetra::new(
            [ProjPoint::infinity(), ProjPoint::zero(), ProjPoint::real(1.0), ProjPoint::finite(c(0.3, 2.0))],
            &tol,
        )
        .unwrap();
        assert!(matches!(barycenter(&t, &tol), Err(Error::NotRegular(_))));
        assert!(!t.is_regular(&tol));
    }

    #[test]
    fn g_map_on_the_three_strata() {
        let tol = Tolerance::default();
        let d = dual_tetra(&cube_tetra(), &tol).unwrap();
        let w = g_map(&TetraPoint::Tetra(d), &tol).unwrap();
        assert!(w.same_plane(&representative(OrbitTag::Open), 1e-13));

        let u = g_map(
            &TetraPoint::Degenerate(DegenTetra {
                first: ProjPoint::zero(),
                second: ProjPoint::infinity(),
            }),
            &tol,
        )
        .unwrap();
        assert!(u.same_plane(&representative(OrbitTag::Intermediate), 1e-15));

        let z = g_map(
            &TetraPoint::Degenerate(DegenTetra {
                first: ProjPoint::zero(),
                second: ProjPoint::zero(),
            }),
            &tol,
        )
        .unwrap();
        assert!(z.same_plane(&representative(OrbitTag::Closed), 1e-15));
    }

    #[test]
    fn g_inverse_examples() {
        let tol = Tolerance::default();
        match g_inverse(&representative(OrbitTag::Open), &tol).unwrap() {
            TetraPoint::Tetra(d) => {
                assert!(d.tetra.distance(&cube_tetra()) < 1e-13);
                assert!((d.barycenter.t - 2f64.powf(-1.0 / 6.0)).abs() < 1e-13);
                assert!(d.collinearity_defect() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        match g_inverse(&representative(OrbitTag::Intermediate), &tol).unwrap() {
            TetraPoint::Degenerate(d) => {
                assert!(d.first.chordal(&ProjPoint::zero()) < 1e-14);
                assert!(d.second.chordal(&ProjPoint::infinity()) < 1e-14);
            }
            other => panic!("{other:?}"),
        }
        match g_inverse(&representative(OrbitTag::Closed), &tol).unwrap() {
            TetraPoint::Degenerate(d) => {
                assert!(d.is_diagonal(1e-14));
                assert!(d.first.chordal(&ProjPoint::zero()) < 1e-14);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            project_q(&representative(OrbitTag::Closed), &tol).unwrap(),
            H3Bar::boundary(ProjPoint::zero())
        );
    }

    #[test]
    fn random_round_trips() {
        let tol = Tolerance::default();
        let mut s = Sampler::new(11);
        for _ in 0..50 {
            let g = s.mobius();
            let d = decorated_image(&g, &tol).unwrap();
            assert!(d.tetra.is_regular(&tol));
            for f in d.face_distances(&tol).unwrap() {
                assert!((f - 2f64.sqrt().ln()).abs() < 1e-9);
            }
            let w = g_map(&TetraPoint::Tetra(d), &tol).unwrap();
            match g_inverse(&w, &tol).unwrap() {
                TetraPoint::Tetra(e) => {
                    assert!(e.distance(&d) < 1e-8);
                    assert!(h3(&e.barycenter, &d.barycenter) < 1e-8);
                }
                other => panic!("{other:?}"),
            }
            for tag in [OrbitTag::Closed, OrbitTag::Intermediate] {
                let w = s.lagrangian(tag);
                let back = g_map(&g_inverse(&w, &tol).unwrap(), &tol).unwrap();
                assert!(back.distance(&w) < 1e-8);
            }
        }
    }

    fn h3(a: &H3Point, b: &H3Point) -> f64 {
        crate::hyperbolic::h3_distance(a, b)
    }

    #[test]
    fn json_shape() {
        let tol = Tolerance::default();
        let d = dual_tetra(&IdealTetra::standard(), &tol).unwrap();
        let s = serde_json::to_string(&TetraPoint::Tetra(d)).unwrap();
        assert!(s.starts_with(r#"{"kind":"tetra","tetra":[{"a":[1.0,0.0],"b":[0.0,0.0]}"#), "{s}");
        let back: TetraPoint = serde_json::from_str(&s).unwrap();
        assert_eq!(back, TetraPoint::Tetra(d));
        let p = ProjPoint::zero();
        let dup = serde_json::to_string(&vec![p, p, ProjPoint::real(1.0), ProjPoint::infinity()]).unwrap();
        assert!(serde_json::from_str::<IdealTetra>(&dup).is_err());
    }
}

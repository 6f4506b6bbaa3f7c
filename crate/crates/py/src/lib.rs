//! Python bindings. Points of the Riemann sphere are `complex`, with `None`
//! for ∞.

use lagtetra::fibration::{self, FiberPoint};
use lagtetra::hyperbolic::{plus_i, project_to_p};
use lagtetra::random::{representative, Sampler};
use lagtetra::symplectic::{self, in_kr};
use lagtetra::tetra::{self as tt, DecoratedTetra, IdealTetra, TetraPoint};
use lagtetra::topology;
use lagtetra::verify::{run_suite, RunConfig, SUITES};
use lagtetra::{Complex, CubicForm, ExtReal, H3Bar, OrbitTag, ProjPoint, Tolerance};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(pylagtetra, GeometryError, PyValueError);

fn err(e: lagtetra::Error) -> PyErr {
    GeometryError::new_err(e.to_string())
}

fn tol(t: f64) -> Tolerance {
    Tolerance::default().with_tol(t)
}

fn point(z: Option<Complex>) -> ProjPoint {
    z.map_or_else(ProjPoint::infinity, ProjPoint::finite)
}

fn unpoint(p: &ProjPoint) -> Option<Complex> {
    p.to_complex()
}

fn cubic(c: Vec<Complex>) -> PyResult<CubicForm> {
    match c.as_slice() {
        [a, b, c, d] => Ok(CubicForm::new(*a, *b, *c, *d)),
        _ => Err(PyValueError::new_err("a cubic form has four coefficients (X³, X²Y, XY², Y³)")),
    }
}

fn ext(s: f64) -> PyResult<ExtReal> {
    if s.is_nan() {
        return Err(PyValueError::new_err("s must not be NaN"));
    }
    Ok(ExtReal::from(s))
}

fn tag(name: &str) -> PyResult<OrbitTag> {
    match name.to_ascii_lowercase().as_str() {
        "closed" => Ok(OrbitTag::Closed),
        "intermediate" => Ok(OrbitTag::Intermediate),
        "open" => Ok(OrbitTag::Open),
        _ => Err(PyValueError::new_err("orbit is one of 'closed', 'intermediate', 'open'")),
    }
}

fn bar<'py>(py: Python<'py>, b: &H3Bar) -> PyResult<Bound<'py, PyAny>> {
    Ok(match b {
        H3Bar::Interior(x) => (x.z, x.t).into_pyobject(py)?.into_any(),
        H3Bar::Boundary { boundary } => unpoint(boundary).into_pyobject(py)?.into_any(),
    })
}

/// Möbius transformation `z ↦ (az + b)/(cz + d)`.
#[pyclass(module = "pylagtetra", frozen)]
pub struct Mobius(lagtetra::Mobius);

#[pymethods]
impl Mobius {
    #[new]
    fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> PyResult<Self> {
        lagtetra::Mobius::new(a, b, c, d).map(Mobius).map_err(err)
    }

    #[staticmethod]
    fn random(seed: u64) -> Self {
        Mobius(Sampler::new(seed).mobius())
    }

    fn apply(&self, z: Option<Complex>) -> Option<Complex> {
        unpoint(&self.0.apply(&point(z)))
    }

    fn inverse(&self) -> Self {
        Mobius(self.0.inverse())
    }

    fn __mul__(&self, other: &Mobius) -> Self {
        Mobius(self.0 * other.0)
    }

    fn __repr__(&self) -> String {
        format!("Mobius({}, {}, {}, {})", self.0.a(), self.0.b(), self.0.c(), self.0.d())
    }
}

/// Lagrangian plane of C⁴ spanned by two binary cubics.
#[pyclass(module = "pylagtetra", frozen)]
pub struct Lagrangian(lagtetra::Lagrangian);

#[pymethods]
impl Lagrangian {
    #[new]
    #[pyo3(signature = (p1, p2, tol=1e-9))]
    fn new(p1: Vec<Complex>, p2: Vec<Complex>, tol: f64) -> PyResult<Self> {
        lagtetra::Lagrangian::new(cubic(p1)?, cubic(p2)?, &self::tol(tol))
            .map(Lagrangian)
            .map_err(err)
    }

    /// `⟨X³, X²Y⟩`, `⟨X³, XY²⟩` or `⟨X²Y, X³+Y³⟩`.
    #[staticmethod]
    fn representative(orbit: &str) -> PyResult<Self> {
        Ok(Lagrangian(representative(tag(orbit)?)))
    }

    #[staticmethod]
    fn random(orbit: &str, seed: u64) -> PyResult<Self> {
        Ok(Lagrangian(Sampler::new(seed).lagrangian(tag(orbit)?)))
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        serde_json::from_str(s).map(Lagrangian).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serializable")
    }

    fn basis(&self) -> Vec<Vec<Complex>> {
        self.0.basis().iter().map(|p| p.coeffs.to_vec()).collect()
    }

    /// Plücker coordinates in the order 12, 13, 14, 23, 24, 34.
    fn plucker(&self) -> Vec<Complex> {
        self.0.plucker().to_vec()
    }

    /// Orbit name: `"Closed"`, `"Intermediate"` or `"Open"`.
    #[pyo3(signature = (tol=1e-9))]
    fn classify(&self, tol: f64) -> PyResult<String> {
        symplectic::classify_orbit(&self.0, &self::tol(tol)).map(|c| c.tag().to_string()).map_err(err)
    }

    /// Common root of the pencil, if any, with its multiplicity.
    #[pyo3(signature = (tol=1e-9))]
    fn witness(&self, tol: f64) -> PyResult<Option<(Option<Complex>, usize)>> {
        let c = symplectic::classify_orbit(&self.0, &self::tol(tol)).map_err(err)?;
        Ok(c.witness().map(|(p, k)| (unpoint(&p), k)))
    }

    #[pyo3(signature = (tol=1e-9))]
    fn in_kr(&self, tol: f64) -> PyResult<bool> {
        in_kr(&self.0, &self::tol(tol)).map_err(err)
    }

    fn transform(&self, g: &Mobius) -> Self {
        Lagrangian(self.0.transform(&lagtetra::projective::sym3(&g.0)))
    }

    fn same_plane(&self, other: &Lagrangian, tol: f64) -> bool {
        self.0.same_plane(&other.0, tol)
    }

    fn __repr__(&self) -> String {
        let [p, q] = self.0.basis();
        format!("Lagrangian⟨{p}, {q}⟩")
    }
}

/// Regular ideal tetrahedron with its dual and barycenter.
#[pyclass(module = "pylagtetra", frozen)]
pub struct Tetra(DecoratedTetra);

#[pymethods]
impl Tetra {
    #[new]
    #[pyo3(signature = (vertices, tol=1e-9))]
    fn new(vertices: Vec<Option<Complex>>, tol: f64) -> PyResult<Self> {
        let v: [ProjPoint; 4] = vertices
            .into_iter()
            .map(point)
            .collect::<Vec<_>>()
            .try_into()
            .map_err(|_| PyValueError::new_err("a tetrahedron has four vertices"))?;
        let t = self::tol(tol);
        let ideal = IdealTetra::new(v, &t).map_err(err)?;
        tt::dual_tetra(&ideal, &t).map(Tetra).map_err(err)
    }

    /// `{∞, −1, (1 ± √3 i)/2}`.
    #[staticmethod]
    fn standard() -> PyResult<Self> {
        tt::dual_tetra(&IdealTetra::standard(), &Tolerance::default()).map(Tetra).map_err(err)
    }

    /// Random tetrahedron whose barycenter is on the axis at `η = c`.
    #[staticmethod]
    #[pyo3(signature = (seed, c=0.0))]
    fn random_on_axis(seed: u64, c: f64) -> PyResult<Self> {
        fibration::random_tetra_on_axis(&mut Sampler::new(seed), c, &Tolerance::default())
            .map(Tetra)
            .map_err(err)
    }

    fn vertices(&self) -> Vec<Option<Complex>> {
        self.0.tetra.vertices().iter().map(unpoint).collect()
    }

    fn dual(&self) -> Vec<Option<Complex>> {
        self.0.dual.vertices().iter().map(unpoint).collect()
    }

    /// `(z, t)` in the upper half-space.
    fn barycenter(&self) -> (Complex, f64) {
        (self.0.barycenter.z, self.0.barycenter.t)
    }

    #[pyo3(signature = (tol=1e-9))]
    fn face_distances(&self, tol: f64) -> PyResult<Vec<f64>> {
        self.0.face_distances(&self::tol(tol)).map(|d| d.to_vec()).map_err(err)
    }

    #[pyo3(signature = (tol=1e-9))]
    fn cross_ratio(&self, tol: f64) -> PyResult<Complex> {
        self.0.tetra.cross_ratio(&self::tol(tol)).map_err(err)
    }

    fn apply(&self, g: &Mobius) -> Self {
        Tetra(self.0.apply(&g.0))
    }

    /// The Lagrangian spanned by the cubics with a double root at a vertex
    /// and a single root at the paired dual vertex.
    #[pyo3(signature = (tol=1e-9))]
    fn lagrangian(&self, tol: f64) -> PyResult<Lagrangian> {
        tt::g_map(&TetraPoint::Tetra(self.0), &self::tol(tol)).map(Lagrangian).map_err(err)
    }

    fn distance(&self, other: &Tetra) -> f64 {
        self.0.distance(&other.0)
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        serde_json::from_str(s).map(Tetra).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serializable")
    }

    fn __repr__(&self) -> String {
        let v: Vec<String> = self.0.tetra.vertices().iter().map(|p| p.to_string()).collect();
        format!("Tetra[{}]", v.join(", "))
    }
}

/// Tetrahedron of a Lagrangian: a `Tetra` for the open orbit, otherwise
/// the degenerate pair `(first, second)`.
#[pyfunction]
#[pyo3(signature = (w, tol=1e-9))]
fn g_inverse<'py>(py: Python<'py>, w: &Lagrangian, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    Ok(match tt::g_inverse(&w.0, &self::tol(tol)).map_err(err)? {
        TetraPoint::Tetra(t) => Bound::new(py, Tetra(t))?.into_any(),
        TetraPoint::Degenerate(d) => (unpoint(&d.first), unpoint(&d.second)).into_pyobject(py)?.into_any(),
    })
}

/// Barycenter of the tetrahedron of `w`: `(z, t)` inside, a point on the
/// boundary for degenerate planes.
#[pyfunction]
#[pyo3(signature = (w, tol=1e-9))]
fn project_q<'py>(py: Python<'py>, w: &Lagrangian, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    bar(py, &tt::project_q(&w.0, &self::tol(tol)).map_err(err)?)
}

/// Projection `(x, h)` to the upper half-plane over the real line.
#[pyfunction]
#[pyo3(signature = (w, tol=1e-9))]
fn project_q_h2(w: &Lagrangian, tol: f64) -> PyResult<(f64, f64)> {
    let p = fibration::project_q_h2(&w.0, &self::tol(tol)).map_err(err)?;
    Ok((p.x, p.h))
}

/// Projection of a point `(z, t)` of H³ to the plane over the real line.
#[pyfunction]
fn project_to_plane(z: Complex, t: f64) -> PyResult<(f64, f64)> {
    let x = lagtetra::H3Point::new(z, t).map_err(err)?;
    let p = project_to_p(&H3Bar::Interior(x), &Tolerance::default()).map_err(err)?;
    Ok((p.x, p.h))
}

/// `Φ(T, s)`: a `Tetra`, or `("+", z)` / `("-", z)` for the degenerate
/// limits `(±i, z)`.
#[pyfunction]
#[pyo3(signature = (t, s, tol=1e-9))]
fn phi<'py>(py: Python<'py>, t: &Tetra, s: f64, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    Ok(match fibration::phi(&t.0, ext(s)?, &self::tol(tol)).map_err(err)? {
        FiberPoint::Tetra(u) => Bound::new(py, Tetra(u))?.into_any(),
        FiberPoint::DegenPlus { second } => ("+", unpoint(&second)).into_pyobject(py)?.into_any(),
        FiberPoint::DegenMinus { second } => ("-", unpoint(&second)).into_pyobject(py)?.into_any(),
    })
}

/// `n` tetrahedra on the circle `Φ(·, +∞)⁻¹(+i, z)`.
#[pyfunction]
#[pyo3(signature = (z, n, tol=1e-9))]
fn phi_fiber(z: Option<Complex>, n: usize, tol: f64) -> PyResult<Vec<Tetra>> {
    let p = point(z);
    if p.chordal(&plus_i()) == 0.0 {
        return Err(PyValueError::new_err("z = +i is not in the image"));
    }
    fibration::phi_fiber(&p, n, &self::tol(tol))
        .map(|v| v.into_iter().map(Tetra).collect())
        .map_err(err)
}

/// Frames of `Φ(T, s)` for `steps` values of `s` in `[s0, s1]`, as JSON.
#[pyfunction]
#[pyo3(signature = (t, s0, s1, steps, tol=1e-9))]
fn scene(t: &Tetra, s0: f64, s1: f64, steps: usize, tol: f64) -> PyResult<String> {
    let frames = fibration::scene(&t.0, s0, s1, steps, &self::tol(tol)).map_err(err)?;
    Ok(serde_json::to_string(&frames).expect("serializable"))
}

#[pyfunction]
fn f_shift(v: f64) -> PyResult<f64> {
    fibration::f_shift(v).map_err(err)
}

#[pyfunction]
fn eta_a_o() -> f64 {
    fibration::eta_a_o()
}

#[pyfunction]
fn eta_b_o() -> f64 {
    fibration::eta_b_o()
}

/// The exact intersection-form certificate, as JSON.
#[pyfunction]
fn certificate() -> PyResult<String> {
    let c = topology::certificate().map_err(err)?;
    Ok(serde_json::to_string(&c).expect("serializable"))
}

/// Cohomology groups of the fiber in degrees 0..4, e.g. `["Z", "0", ...]`.
#[pyfunction]
fn betti() -> PyResult<Vec<String>> {
    let t = topology::betti_assemble().map_err(err)?;
    Ok(t.groups.iter().map(|g| g.to_string()).collect())
}

/// `(rank, signature, parity, definiteness, model)` of a unimodular form.
#[pyfunction]
fn classify_form(m: Vec<Vec<i64>>) -> PyResult<(usize, i64, String, String, String)> {
    let rows: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
    let c = topology::classify_form(&topology::IntegerForm::from_ints(&rows)).map_err(err)?;
    Ok((
        c.rank,
        c.signature,
        format!("{:?}", c.parity).to_lowercase(),
        format!("{:?}", c.definiteness).to_lowercase(),
        c.model,
    ))
}

/// Runs verification suites; returns `(passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (suites=None, seed=20240611, samples=1000, tol=1e-9, cluster_tol=1e-6))]
fn verify(
    py: Python<'_>,
    suites: Option<Vec<String>>,
    seed: u64,
    samples: usize,
    tol: f64,
    cluster_tol: f64,
) -> PyResult<(bool, String)> {
    let cfg = RunConfig { tol, cluster_tol, seed, samples };
    let names = suites.unwrap_or_else(|| SUITES.iter().map(|s| s.to_string()).collect());
    let reports = py.detach(|| names.iter().map(|n| run_suite(n, &cfg)).collect::<Result<Vec<_>, _>>());
    let reports = reports.map_err(|e| PyValueError::new_err(e.to_string()))?;
    let passed = reports.iter().all(|r| r.passed());
    Ok((passed, serde_json::to_string(&reports).expect("serializable")))
}

#[pymodule]
fn pylagtetra(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("GeometryError", m.py().get_type::<GeometryError>())?;
    m.add_class::<Mobius>()?;
    m.add_class::<Lagrangian>()?;
    m.add_class::<Tetra>()?;
    m.add_function(wrap_pyfunction!(g_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(project_q, m)?)?;
    m.add_function(wrap_pyfunction!(project_q_h2, m)?)?;
    m.add_function(wrap_pyfunction!(project_to_plane, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(phi_fiber, m)?)?;
    m.add_function(wrap_pyfunction!(scene, m)?)?;
    m.add_function(wrap_pyfunction!(f_shift, m)?)?;
    m.add_function(wrap_pyfunction!(eta_a_o, m)?)?;
    m.add_function(wrap_pyfunction!(eta_b_o, m)?)?;
    m.add_function(wrap_pyfunction!(certificate, m)?)?;
    m.add_function(wrap_pyfunction!(betti, m)?)?;
    m.add_function(wrap_pyfunction!(classify_form, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}

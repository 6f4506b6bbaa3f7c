//! Seeded property suites over the whole library, reported with counts.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fibration::{
    eta_b_o, f_shift, make_down_tetra, phi, phi_fiber, random_down_on_axis, random_tetra_on_axis,
    random_up_on_axis, updown_classify, DownCoord, FiberPoint, UpDown,
};
use crate::hyperbolic::{
    axis_rotate, axis_translate, eta, height, minus_i, plus_i, poincare_extend, project_to_p, ExtReal,
    H3Bar, H3Point, Reflect,
};
use crate::projective::{cross_ratio, regular_cross_ratio, sym3, Complex, ProjPoint};
use crate::random::{representative, Sampler};
use crate::symplectic::{
    classify_orbit, lagrangian_residual, pencil_double_roots, plucker_distance, plucker_relation_residual,
    CubicForm, Lagrangian, OrbitTag,
};
use crate::tetra::{
    decorated_image, dual_tetra, g_inverse, g_map, DecoratedTetra, DegenTetra, IdealTetra, TetraPoint,
};
use crate::tol::Tolerance;
use crate::topology::{certificate, classify_form, Certificate, IntegerForm};

pub const SUITES: [&str; 6] = ["projective", "symplectic", "hyperbolic", "tetra", "fibration", "topology"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub tol: f64,
    pub cluster_tol: f64,
    pub seed: u64,
    /// Upper bound on the sample count of every check.
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            cluster_tol: 1e-6,
            seed: 20240611,
            samples: 1000,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> std::result::Result<(), String> {
        if !(self.tol > 0.0 && self.tol < self.cluster_tol && self.cluster_tol < 1e-3) {
            return Err(format!(
                "need 0 < tol < cluster_tol < 1e-3, got tol = {:e}, cluster_tol = {:e}",
                self.tol, self.cluster_tol
            ));
        }
        if self.samples == 0 {
            return Err("samples must be at least 1".into());
        }
        Ok(())
    }

    pub fn tolerance(&self) -> Tolerance {
        Tolerance {
            tol: self.tol,
            cluster_tol: self.cluster_tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    /// Largest error measure seen.
    pub worst: f64,
    pub threshold: f64,
    /// First failure, if any.
    pub note: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

struct Runner<'a> {
    cfg: &'a RunConfig,
    tol: Tolerance,
    sampler: Sampler,
    checks: Vec<Check>,
}

impl<'a> Runner<'a> {
    fn new(cfg: &'a RunConfig, suite: &str) -> Self {
        Self {
            cfg,
            tol: cfg.tolerance(),
            sampler: Sampler::for_stream(cfg.seed, suite),
            checks: Vec::new(),
        }
    }

    /// Runs `f` on `n` samples (capped by the config); a sample fails when
    /// it errors, panics or returns a measure above `threshold`.
    fn check<F>(&mut self, name: &str, n: usize, threshold: f64, mut f: F)
    where
        F: FnMut(&mut Sampler, &Tolerance) -> Result<f64>,
    {
        let n = n.min(self.cfg.samples);
        let mut c = Check {
            name: name.to_string(),
            samples: n,
            failures: 0,
            worst: 0.0,
            threshold,
            note: None,
        };
        for k in 0..n {
            let tol = self.tol;
            let s = &mut self.sampler;
            let out = catch_unwind(AssertUnwindSafe(|| f(s, &tol)));
            let msg = match out {
                Ok(Ok(e)) if e <= threshold => {
                    c.worst = c.worst.max(e);
                    None
                }
                Ok(Ok(e)) => {
                    c.worst = c.worst.max(e);
                    Some(format!("sample {k}: measure {e:e}"))
                }
                Ok(Err(e)) => Some(format!("sample {k}: {e}")),
                Err(_) => Some(format!("sample {k}: panicked")),
            };
            if let Some(m) = msg {
                c.failures += 1;
                c.note.get_or_insert(m);
            }
        }
        self.checks.push(c);
    }

    fn finish(self, suite: &str, certificate: Option<Certificate>) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            checks: self.checks,
            certificate,
        }
    }
}

fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn random_h3(s: &mut Sampler) -> H3Point {
    H3Point {
        z: s.complex_gaussian(),
        t: s.uniform(-2.0, 2.0).exp(),
    }
}

fn random_tag(s: &mut Sampler) -> OrbitTag {
    [OrbitTag::Closed, OrbitTag::Intermediate, OrbitTag::Open][s.uniform(0.0, 3.0) as usize % 3]
}

fn random_tetra_point(s: &mut Sampler, tol: &Tolerance) -> Result<TetraPoint> {
    Ok(match s.uniform(0.0, 3.0) as usize {
        0 => TetraPoint::Tetra(decorated_image(&s.mobius(), tol)?),
        1 => {
            let p = s.proj_point();
            TetraPoint::Degenerate(DegenTetra { first: p, second: p })
        }
        _ => TetraPoint::Degenerate(DegenTetra {
            first: s.proj_point(),
            second: s.proj_point(),
        }),
    })
}

fn projective(cfg: &RunConfig) -> SuiteReport {
    let mut r = Runner::new(cfg, "projective");
    r.check("projective equality is an equivalence relation", 1000, 0.0, |s, tol| {
        let p = s.proj_point();
        let scaled = |s: &mut Sampler| {
            let k = s.complex_gaussian() + Complex::new(0.1, 0.0);
            ProjPoint::new(p.a() * k, p.b() * k)
        };
        let (q, w) = (scaled(s)?, scaled(s)?);
        let t = tol.tol;
        Ok(flag(
            p.approx_eq(&p, t)
                && q.approx_eq(&p, t) == p.approx_eq(&q, t)
                && p.approx_eq(&q, t)
                && q.approx_eq(&w, t)
                && p.approx_eq(&w, t),
        ))
    });
    r.check("cross-ratio is Möbius invariant (relative error)", 1000, 1e-9, |s, tol| {
        let z: [ProjPoint; 4] = std::array::from_fn(|_| s.proj_point());
        let g = s.mobius();
        let w = z.map(|p| g.apply(&p));
        let a = cross_ratio([&z[0], &z[1], &z[2], &z[3]], tol)?;
        let b = cross_ratio([&w[0], &w[1], &w[2], &w[3]], tol)?;
        Ok((a - b).norm() / a.norm().max(1.0))
    });
    r.check("sym3 is a homomorphism", 200, 1e-9, |s, _| {
        let (g, h) = (s.mobius(), s.mobius());
        let lhs = sym3(&(g * h)).m4;
        let rhs = (sym3(&g) * sym3(&h)).m4;
        Ok((lhs - rhs).norm() / lhs.norm())
    });
    r.check("sym3 preserves the symplectic form", 200, 1e-10, |s, _| {
        let g = s.mobius();
        let m = sym3(&g);
        Ok(m.symplectic_defect() / m.m4.norm().powi(2).max(1.0))
    });
    r.finish("projective", None)
}

fn symplectic(cfg: &RunConfig) -> SuiteReport {
    let mut r = Runner::new(cfg, "symplectic");
    r.check("open orbit: Plücker relations and classification", 1000, 1e-10, |s, tol| {
        let w = s.lagrangian(OrbitTag::Open);
        let c = classify_orbit(&w, tol)?;
        if c.tag() != OrbitTag::Open {
            return Ok(1.0);
        }
        Ok(plucker_relation_residual(w.plucker()).max(lagrangian_residual(w.plucker())))
    });
    r.check("classification is equivariant and witnesses transport", 500, 1e-8, |s, tol| {
        let tag = random_tag(s);
        let l = representative(tag).transform(&sym3(&s.mobius_within(1.0)));
        let w = s.rebasis(&l);
        let g = s.mobius_within(1.0);
        let gl = w.transform(&sym3(&g));
        let gw = s.rebasis(&gl);
        let (a, b) = (classify_orbit(&w, tol)?, classify_orbit(&gw, tol)?);
        if a.tag() != tag || b.tag() != tag {
            return Ok(1.0);
        }
        Ok(match (a.witness(), b.witness()) {
            (Some((p, _)), Some((q, _))) => g.apply(&p).chordal(&q),
            (None, None) => 0.0,
            _ => 1.0,
        })
    });
    r.check("open orbit: four distinct double roots with regular cross-ratio", 300, 1e-8, |s, tol| {
        let l = s.lagrangian(OrbitTag::Open);
        let w = s.rebasis(&l);
        let roots = pencil_double_roots(&w, tol)?;
        if roots.len() != 4 {
            return Ok(1.0);
        }
        let d: Vec<ProjPoint> = roots.iter().map(|p| p.double).collect();
        for i in 0..4 {
            for j in i + 1..4 {
                if d[i].chordal(&d[j]) < tol.cluster_tol {
                    return Ok(1.0);
                }
            }
        }
        let z = cross_ratio([&d[0], &d[1], &d[2], &d[3]], tol)?;
        let z0 = regular_cross_ratio();
        Ok((z - z0).norm().min((z - z0.conj()).norm()))
    });
    r.check("discriminant vanishes exactly on repeated roots", 1100, 0.0, |s, tol| {
        let (p, constructed) = if s.uniform(0.0, 11.0) < 1.0 {
            let (a, b) = (s.proj_point(), s.proj_point());
            (CubicForm::from_roots([&a, &a, &b]).scale(s.complex_gaussian()), true)
        } else {
            (s.cubic(), false)
        };
        let vanishes = p.normalized_discriminant() < tol.tol;
        let repeated = p.distinct_roots(tol)?.len() < 3;
        Ok(flag(vanishes == repeated && repeated == constructed))
    });
    let t = cfg.tol;
    r.check("Lagrangian condition on Plücker data (threshold tol)", 1000, t, |s, _| {
        let tag = random_tag(s);
        let l = s.lagrangian(tag);
        let w = s.rebasis(&l);
        Ok(lagrangian_residual(w.plucker()))
    });
    r.finish("symplectic", None)
}

fn hyperbolic(cfg: &RunConfig) -> SuiteReport {
    let mut r = Runner::new(cfg, "hyperbolic");
    r.check("Poincaré extension is a homomorphism", 500, 1e-9, |s, _| {
        let (g, h, x) = (s.mobius(), s.mobius(), random_h3(s));
        let a = poincare_extend(&(g * h), &x);
        let b = poincare_extend(&g, &poincare_extend(&h, &x));
        Ok(a.distance(&b))
    });
    r.check("Poincaré extension is an isometry (relative)", 500, 1e-9, |s, _| {
        let (g, x, y) = (s.mobius(), random_h3(s), random_h3(s));
        let d = x.distance(&y);
        let e = poincare_extend(&g, &x).distance(&poincare_extend(&g, &y));
        Ok((d - e).abs() / d.max(1e-3))
    });
    r.check("projection to P commutes with SL(2,R)", 500, 1e-9, |s, tol| {
        let (g, x) = (s.real_mobius(), random_h3(s));
        let a = project_to_p(&H3Bar::Interior(poincare_extend(&g, &x)), tol)?;
        let b = project_to_p(&H3Bar::Interior(x), tol)?.apply(&g);
        Ok(a.distance(&b))
    });
    r.check("height is invariant under rotation about the axis", 1000, 1e-10, |s, _| {
        let z = s.proj_point();
        let rot = axis_rotate(s.uniform(0.0, std::f64::consts::TAU));
        let (a, b) = (height(&z), height(&rot.apply(&z)));
        Ok(match (a, b) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => (a - b).abs(),
            (a, b) => flag(a == b),
        })
    });
    r.finish("hyperbolic", None)
}

fn tetra_distance(a: &TetraPoint, b: &TetraPoint) -> f64 {
    match (a, b) {
        (TetraPoint::Tetra(x), TetraPoint::Tetra(y)) => x.distance(y).max(x.barycenter.distance(&y.barycenter)),
        (TetraPoint::Degenerate(x), TetraPoint::Degenerate(y)) => {
            x.first.chordal(&y.first).max(x.second.chordal(&y.second))
        }
        _ => 1.0,
    }
}

/// Translation length along ℓ at which the vertices of `t` that move lie
/// within chordal distance `eps` of `+i`.
pub fn translation_for(t: &DecoratedTetra, eps: f64) -> f64 {
    let moving: Vec<ProjPoint> = t
        .tetra
        .vertices()
        .iter()
        .filter(|v| v.chordal(&minus_i()) > 1e-12)
        .copied()
        .collect();
    let spread = |lam: f64| {
        let g = axis_translate(lam, true);
        moving.iter().map(|v| g.apply(v).chordal(&plus_i())).fold(0.0, f64::max)
    };
    let (mut lo, mut hi) = (0.0, 80.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if spread(mid) > eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Plücker distances to the limit along the path `L_λ⁺(t)`, at the
/// parameters `ε = 10⁻¹, …, 10⁻⁴`, where `ε` is the largest chordal
/// distance from a moving vertex to `+i`.
pub fn degeneration_profile(t: &DecoratedTetra, limit: &DegenTetra, tol: &Tolerance) -> Result<Vec<f64>> {
    let target = g_map(&TetraPoint::Degenerate(*limit), tol)?;
    (1..=4)
        .map(|k| {
            let lam = translation_for(t, 10f64.powi(-k));
            let x = TetraPoint::Tetra(t.apply(&axis_translate(lam, true)));
            Ok(plucker_distance(g_map(&x, tol)?.plucker(), target.plucker()))
        })
        .collect()
}

fn profile_measure(p: &[f64]) -> f64 {
    let monotone = p.windows(2).all(|w| w[1] < w[0]);
    if monotone {
        p[p.len() - 1]
    } else {
        1.0
    }
}

fn tetra(cfg: &RunConfig) -> SuiteReport {
    let mut r = Runner::new(cfg, "tetra");
    r.check("tetrahedron → g → g⁻¹ round trip", 1000, 1e-8, |s, tol| {
        let x = TetraPoint::Tetra(decorated_image(&s.mobius(), tol)?);
        let back = g_inverse(&g_map(&x, tol)?, tol)?;
        Ok(tetra_distance(&x, &back))
    });
    r.check("barycenter to face distance is ln √2", 200, 1e-9, |s, tol| {
        let t = decorated_image(&s.mobius(), tol)?;
        let target = 2f64.sqrt().ln();
        Ok(t.face_distances(tol)?.iter().map(|d| (d - target).abs()).fold(0.0, f64::max))
    });
    r.check("the dual of the dual is the tetrahedron", 500, 1e-8, |s, tol| {
        let t = decorated_image(&s.mobius(), tol)?;
        let dd = dual_tetra(&t.dual, tol)?;
        Ok(dd.dual.distance(&t.tetra).max(dd.barycenter.distance(&t.barycenter)))
    });
    r.check("g is equivariant on all strata", 600, 1e-8, |s, tol| {
        let x = random_tetra_point(s, tol)?;
        let g = s.mobius();
        let a = g_map(&x.apply(&g), tol)?;
        let b = g_map(&x, tol)?.transform(&sym3(&g));
        Ok(plucker_distance(a.plucker(), b.plucker()))
    });
    r.check("g is continuous at the diagonal stratum", 100, 1e-3, |s, tol| {
        let t = random_tetra_on_axis(s, 0.0, tol)?;
        let lim = DegenTetra { first: plus_i(), second: plus_i() };
        Ok(profile_measure(&degeneration_profile(&t, &lim, tol)?))
    });
    r.check("g is continuous at the off-diagonal stratum", 100, 1e-3, |s, tol| {
        let theta = s.uniform(0.0, std::f64::consts::TAU);
        let t = make_down_tetra(0.0, &DownCoord::new(minus_i(), theta), tol)?;
        let lim = DegenTetra { first: plus_i(), second: minus_i() };
        Ok(profile_measure(&degeneration_profile(&t, &lim, tol)?))
    });
    r.check("regular tetrahedra have the regular cross-ratio", 500, 1e-9, |s, tol| {
        let t = IdealTetra::standard().apply(&s.mobius());
        Ok((t.cross_ratio(tol)? - regular_cross_ratio()).norm())
    });
    r.finish("tetra", None)
}

fn fiber_eta(p: &FiberPoint, tol: &Tolerance) -> Result<ExtReal> {
    eta(&p.barycenter(), &tol.with_tol(1e-7))
}

/// Samples of every Φ property that can be checked pointwise; shared with
/// the acceptance run.
pub fn phi_checks(cfg: &RunConfig, n: usize) -> Vec<Check> {
    let mut r = Runner::new(cfg, "phi");
    r.check("Φ(T, 0) = T", n, 0.0, |s, tol| {
        let t = random_tetra_on_axis(s, 0.0, tol)?;
        Ok(flag(phi(&t, ExtReal::Finite(0.0), tol)? == FiberPoint::Tetra(t)))
    });
    r.check("Φ(T, −s) = ι Φ(ι T, s)", n, 1e-12, |s, tol| {
        let t = random_tetra_on_axis(s, 0.0, tol)?;
        let x = s.uniform(-8.0, 8.0);
        let a = phi(&t, ExtReal::Finite(-x), tol)?;
        let b = phi(&t.iota(), ExtReal::Finite(x), tol)?.iota();
        let ai = phi(&t, ExtReal::NegInf, tol)?;
        let bi = phi(&t.iota(), ExtReal::PosInf, tol)?.iota();
        Ok(a.distance(&b).max(ai.distance(&bi)))
    });
    r.check("η of the barycenter of Φ(T, s) is s", n, 1e-8, |s, tol| {
        let t = random_tetra_on_axis(s, 0.0, tol)?;
        let x = s.uniform(-10.0, 10.0);
        match fiber_eta(&phi(&t, ExtReal::Finite(x), tol)?, tol)? {
            ExtReal::Finite(e) => Ok((e - x).abs()),
            _ => Ok(1.0),
        }
    });
    r.check("Φ maps up × {+∞} to (+i, +i)", n, 1e-12, |s, tol| {
        let t = random_up_on_axis(s, 0.0, tol)?;
        match phi(&t, ExtReal::PosInf, tol)? {
            FiberPoint::DegenPlus { second } => Ok(second.chordal(&plus_i())),
            _ => Ok(1.0),
        }
    });
    r.check("Φ(T, +∞) is the f-uplift of the bottom vertex", n, 1e-8, |s, tol| {
        let (t, d) = random_down_on_axis(s, 0.0, tol)?;
        let hv = height(&d.v).to_f64();
        let hf = f_shift(hv)?;
        match phi(&t, ExtReal::PosInf, tol)? {
            FiberPoint::DegenPlus { second } => {
                // same circle through ±i and v, at height f(h_v)
                let h = height(&second).to_f64();
                if hf > 18.0 {
                    // within 1e-8 of +i: only the height is resolvable
                    return Ok(flag(h > 17.0));
                }
                let same_circle = cross_ratio([&minus_i(), &plus_i(), &d.v, &second], tol)?;
                Ok(((h - hf).abs() / hf.abs().max(1.0)).max(same_circle.im.abs() / same_circle.norm().max(1.0)))
            }
            _ => Ok(1.0),
        }
    });
    r.check("the fiber over (+i, z) is a circle of preimages", n.div_ceil(5), 1e-8, |s, tol| {
        let z = loop {
            let z = s.proj_point();
            if z.chordal(&plus_i()) > 1e-3 && height(&z).to_f64() < 25.0 {
                break z;
            }
        };
        let k = 6;
        let pre = phi_fiber(&z, k, tol)?;
        let mut worst: f64 = 0.0;
        for (i, t) in pre.iter().enumerate() {
            match phi(t, ExtReal::PosInf, tol)? {
                FiberPoint::DegenPlus { second } => worst = worst.max(second.chordal(&z)),
                _ => return Ok(1.0),
            }
            for u in &pre[i + 1..] {
                if t.distance(u) < 1e-6 {
                    return Ok(1.0);
                }
            }
        }
        Ok(worst)
    });
    r.check("Φ is injective on finite parameters (sampled)", n.max(1000.min(cfg.samples)), 0.0, |s, tol| {
        let t = random_tetra_on_axis(s, 0.0, tol)?;
        let x = s.uniform(-8.0, 8.0);
        let (u, y) = match s.uniform(0.0, 3.0) as usize {
            0 => (random_tetra_on_axis(s, 0.0, tol)?, s.uniform(-8.0, 8.0)),
            1 => (t, x + s.uniform(1e-5, 1e-3)),
            _ => (t.apply(&axis_rotate(s.uniform(1e-5, 1e-3))), x),
        };
        let sep_in = t.distance(&u).max((x - y).abs());
        let a = phi(&t, ExtReal::Finite(x), tol)?;
        let b = phi(&u, ExtReal::Finite(y), tol)?;
        let both_tetra = matches!((a, b), (FiberPoint::Tetra(_), FiberPoint::Tetra(_)));
        Ok(flag(both_tetra && (sep_in <= 1e-6 || a.distance(&b) > 1e-10)))
    });
    r.check("Φ(T, s) → Φ(T, +∞) for down T (error at s = 20)", n.div_ceil(2), 1e-4, |s, tol| {
        let (t, _) = random_down_on_axis(s, 0.0, tol)?;
        let a = phi(&t, ExtReal::Finite(20.0), tol)?;
        let b = phi(&t, ExtReal::PosInf, tol)?;
        Ok(a.distance(&b))
    });
    r.checks
}

/// Exactly one vertex below the level of `η⁻¹(c)` whenever there is one.
pub fn unique_bottom_check(cfg: &RunConfig, n: usize) -> Check {
    let mut r = Runner::new(cfg, "unique");
    r.check("down tetrahedra have exactly one vertex below the level", n, 0.0, |s, tol| {
        loop {
            let c = s.uniform(-4.0, 4.0);
            let t = random_tetra_on_axis(s, c, tol)?;
            let thr = c + eta_b_o();
            let below = t
                .tetra
                .vertices()
                .iter()
                .filter(|v| height(v).to_f64() < thr)
                .count();
            if below > 0 {
                return Ok(flag(below == 1));
            }
        }
    });
    r.checks.remove(0)
}

fn fibration(cfg: &RunConfig) -> SuiteReport {
    let mut r = Runner::new(cfg, "fibration");
    r.check("f is increasing", 1000, 0.0, |s, _| {
        let a = eta_b_o() - s.uniform(-10.0, 5.0).exp();
        let b = eta_b_o() - s.uniform(-10.0, 5.0).exp();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if lo == hi {
            return Ok(0.0);
        }
        Ok(flag(f_shift(lo)? < f_shift(hi)? && f_shift(lo)? > lo))
    });
    r.check("down chart round trip", 500, 1e-9, |s, tol| {
        let c = s.uniform(-4.0, 4.0);
        let (t, d) = random_down_on_axis(s, c, tol)?;
        let back = make_down_tetra(c, &d, tol)?;
        match updown_classify(&back, tol)? {
            UpDown::Down(e) => {
                let dth = (e.theta - d.theta).abs();
                let dth = dth.min(std::f64::consts::TAU / 3.0 - dth);
                Ok(back.distance(&t).max(e.v.chordal(&d.v)).max(dth))
            }
            _ => Ok(1.0),
        }
    });
    let mut checks = r.checks;
    checks.push(unique_bottom_check(cfg, 1000));
    checks.extend(phi_checks(cfg, 500));
    SuiteReport {
        suite: "fibration".into(),
        checks,
        certificate: None,
    }
}

/// Random unimodular integral form `Pᵀ D P` with `D` a sum of `±1` and
/// hyperbolic blocks.
pub fn random_unimodular_form(s: &mut Sampler) -> IntegerForm {
    let n = 2 + (s.uniform(0.0, 3.0) as usize);
    let mut d = vec![vec![0i64; n]; n];
    let mut i = 0;
    while i < n {
        if i + 1 < n && s.uniform(0.0, 1.0) < 0.3 {
            d[i][i + 1] = 1;
            d[i + 1][i] = 1;
            i += 2;
        } else {
            d[i][i] = if s.uniform(0.0, 1.0) < 0.5 { 1 } else { -1 };
            i += 1;
        }
    }
    let mut p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..6 {
        let a = s.uniform(0.0, n as f64) as usize % n;
        let b = s.uniform(0.0, n as f64) as usize % n;
        if a != b {
            let k = s.uniform(-2.0, 3.0).floor() as i64;
            for row in p.iter_mut() {
                row[a] += k * row[b];
            }
        }
    }
    let big = |m: &Vec<Vec<i64>>| -> Vec<Vec<BigRational>> {
        m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(BigInt::from(*x))).collect()).collect()
    };
    let (dm, pm) = (big(&d), big(&p));
    let q: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = BigRational::from_integer(BigInt::from(0));
                    for a in 0..n {
                        for b in 0..n {
                            acc += &pm[a][i] * &dm[a][b] * &pm[b][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    IntegerForm::new(q)
}

fn topology(cfg: &RunConfig) -> SuiteReport {
    let mut r = Runner::new(cfg, "topology");
    let cert = certificate().ok();
    let verdict = cert.clone();
    r.check("certificate: diag(1, −1), model CP²#C̄P², reproducible", 1, 0.0, move |_, _| {
        let a = verdict.clone().ok_or_else(|| Error::InconsistentSequence("no certificate".into()))?;
        let b = certificate()?;
        let form_ok = a.form == vec![vec!["1".to_string(), "0".into()], vec!["0".into(), "-1".into()]];
        let json_ok = serde_json::to_string(&a).ok() == serde_json::to_string(&b).ok();
        Ok(flag(
            form_ok
                && json_ok
                && a.classification.model == crate::topology::MODEL_CP2_SUM
                && a.q_candidates == vec![-3, 3]
                && a.determinant == "27"
                && a.kernel.index == 3,
        ))
    });
    r.check("negating a form negates the signature", 50, 0.0, |s, _| {
        let q = random_unimodular_form(s);
        let (a, b) = (classify_form(&q)?, classify_form(&q.neg())?);
        Ok(flag(a.signature == -b.signature && a.parity == b.parity && a.rank == b.rank))
    });
    r.check("rank and signature are additive under direct sum", 50, 0.0, |s, _| {
        let (q1, q2) = (random_unimodular_form(s), random_unimodular_form(s));
        let (a, b, c) = (classify_form(&q1)?, classify_form(&q2)?, classify_form(&q1.direct_sum(&q2))?);
        Ok(flag(c.rank == a.rank + b.rank && c.signature == a.signature + b.signature))
    });
    r.finish("topology", cert)
}

pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<SuiteReport> {
    cfg.validate().map_err(Error::DomainError)?;
    Ok(match name {
        "projective" => projective(cfg),
        "symplectic" => symplectic(cfg),
        "hyperbolic" => hyperbolic(cfg),
        "tetra" => tetra(cfg),
        "fibration" => fibration(cfg),
        "topology" => topology(cfg),
        other => return Err(Error::DomainError(format!("unknown suite {other:?}"))),
    })
}

/// Representative Lagrangians of the three orbits, for reports.
pub fn representatives() -> [(OrbitTag, Lagrangian); 3] {
    [OrbitTag::Closed, OrbitTag::Intermediate, OrbitTag::Open].map(|t| (t, representative(t)))
}

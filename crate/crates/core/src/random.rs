//! Seeded samplers for group elements, forms and Lagrangians.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::projective::{sym3, Complex, Mobius, ProjPoint, ONE, ZERO};
use crate::symplectic::{CubicForm, Lagrangian, OrbitTag};
use crate::tol::Tolerance;

/// FNV-1a, used to derive independent streams from one seed.
pub fn stream_seed(seed: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes().chain(seed.to_le_bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn for_stream(seed: u64, name: &str) -> Self {
        Self::new(stream_seed(seed, name))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn complex_gaussian(&mut self) -> Complex {
        Complex::new(self.gaussian(), self.gaussian())
    }

    /// Haar-distributed element of SU(2).
    pub fn su2(&mut self) -> Mobius {
        let mut q = [0.0; 4];
        let mut n = 0.0;
        while n < 1e-6 {
            q = [self.gaussian(), self.gaussian(), self.gaussian(), self.gaussian()];
            n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        }
        let al = Complex::new(q[0] / n, q[1] / n);
        let be = Complex::new(q[2] / n, q[3] / n);
        Mobius {
            m: [[al, -be.conj()], [be, al.conj()]],
        }
    }

    /// `u₁ · diag(e^{(r+iφ)/2}, e^{−(r+iφ)/2}) · u₂` with `|r| ≤ 2`.
    pub fn mobius(&mut self) -> Mobius {
        self.mobius_within(2.0)
    }

    /// As [`Sampler::mobius`] with `|r| ≤ rmax`.
    pub fn mobius_within(&mut self, rmax: f64) -> Mobius {
        let r = self.uniform(-rmax, rmax);
        let phi = self.uniform(0.0, std::f64::consts::TAU);
        let k = (Complex::new(r, phi) / 2.0).exp();
        self.su2() * Mobius::diagonal(k) * self.su2()
    }

    pub fn rotation(&mut self) -> Mobius {
        let a = self.uniform(0.0, std::f64::consts::PI);
        let (s, c) = a.sin_cos();
        Mobius {
            m: [[c.into(), (-s).into()], [s.into(), c.into()]],
        }
    }

    /// Element of SL(2,R): rotation · diag · rotation.
    pub fn real_mobius(&mut self) -> Mobius {
        let r = self.uniform(-2.0, 2.0);
        self.rotation() * Mobius::diagonal(Complex::from((r / 2.0).exp())) * self.rotation()
    }

    /// Uniform point of the Riemann sphere.
    pub fn proj_point(&mut self) -> ProjPoint {
        self.su2().apply(&ProjPoint::zero())
    }

    pub fn cubic(&mut self) -> CubicForm {
        CubicForm::new(
            self.complex_gaussian(),
            self.complex_gaussian(),
            self.complex_gaussian(),
            self.complex_gaussian(),
        )
    }

    /// `sym3(g)` applied to the orbit representative.
    pub fn lagrangian(&mut self, tag: OrbitTag) -> Lagrangian {
        representative(tag).transform(&sym3(&self.mobius()))
    }

    /// Random basis of the same plane, so that tests do not depend on the
    /// particular basis produced by `transform`.
    pub fn rebasis(&mut self, w: &Lagrangian) -> Lagrangian {
        let [p1, p2] = *w.basis();
        loop {
            let m = [
                self.complex_gaussian(),
                self.complex_gaussian(),
                self.complex_gaussian(),
                self.complex_gaussian(),
            ];
            if (m[0] * m[3] - m[1] * m[2]).norm() < 0.1 {
                continue;
            }
            let q1 = p1.combine(m[0], &p2, m[1]);
            let q2 = p1.combine(m[2], &p2, m[3]);
            if let Ok(l) = Lagrangian::new(q1, q2, &Tolerance::default().with_tol(1e-7)) {
                return l;
            }
        }
    }
}

/// `⟨X³, X²Y⟩`, `⟨X³, XY²⟩` and `⟨X²Y, X³+Y³⟩`.
pub fn representative(tag: OrbitTag) -> Lagrangian {
    let tol = Tolerance::default();
    let (p1, p2) = match tag {
        OrbitTag::Closed => (CubicForm::monomial(0), CubicForm::monomial(1)),
        OrbitTag::Intermediate => (CubicForm::monomial(0), CubicForm::monomial(2)),
        OrbitTag::Open => (CubicForm::monomial(1), CubicForm::new(ONE, ZERO, ZERO, ONE)),
    };
    Lagrangian::new(p1, p2, &tol).expect("orbit representatives are Lagrangian")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = Sampler::for_stream(7, "tetra").uniform(0.0, 1.0);
        let b = Sampler::for_stream(7, "tetra").uniform(0.0, 1.0);
        let c = Sampler::for_stream(7, "fibration").uniform(0.0, 1.0);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn samples_have_unit_determinant() {
        let mut s = Sampler::new(1);
        for _ in 0..50 {
            assert!((s.mobius().det() - ONE).norm() < 1e-12);
            let r = s.real_mobius();
            assert!(r.is_real(1e-15) && (r.det() - ONE).norm() < 1e-12);
        }
    }
}

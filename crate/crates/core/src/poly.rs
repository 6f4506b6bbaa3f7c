//! Roots of binary forms `Σ c_k X^{n−k} Y^k` on CP¹.

use nalgebra::{DMatrix, Schur};

use crate::error::{Error, Result};
use crate::projective::{Complex, ProjPoint, ONE, ZERO};

fn eval_affine(coeffs: &[Complex], x: Complex) -> (Complex, Complex) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &c in coeffs {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Value of the form at `[a:b]`.
pub(crate) fn eval_form(coeffs: &[Complex], p: &ProjPoint) -> Complex {
    let n = coeffs.len() - 1;
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * p.a().powu((n - k) as u32) * p.b().powu(k as u32))
        .sum()
}

fn polish(coeffs: &[Complex], mut x: Complex) -> Complex {
    let (mut r, _) = eval_affine(coeffs, x);
    for _ in 0..4 {
        let (p, dp) = eval_affine(coeffs, x);
        if dp.norm() == 0.0 {
            break;
        }
        let y = x - p / dp;
        let (ry, _) = eval_affine(coeffs, y);
        if !(ry.norm() < r.norm()) {
            break;
        }
        x = y;
        r = ry;
    }
    x
}

/// Eigenvalues of the companion matrix of a monic-normalised polynomial
/// with nonzero constant term, highest degree first.
fn affine_roots(coeffs: &[Complex]) -> Result<Vec<Complex>> {
    let n = coeffs.len() - 1;
    match n {
        0 => return Ok(vec![]),
        1 => return Ok(vec![-coeffs[1] / coeffs[0]]),
        _ => {}
    }
    let lead = coeffs[0];
    let mut m = DMatrix::<Complex>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = ONE;
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[n - i] / lead;
    }
    let eig = Schur::new(m)
        .eigenvalues()
        .ok_or_else(|| Error::NumericalDegeneracy("companion eigenvalues did not converge".into()))?;
    Ok(eig.iter().map(|&x| polish(coeffs, x)).collect())
}

/// All `n` roots with multiplicity (unclustered). Leading coefficients
/// below the underflow threshold become roots at `∞`, trailing ones roots
/// at `[0:1]`.
pub(crate) fn form_roots(coeffs: &[Complex]) -> Result<Vec<ProjPoint>> {
    let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroForm);
    }
    let thresh = 16.0 * f64::EPSILON * norm;
    let n = coeffs.len() - 1;
    let lead = coeffs.iter().take_while(|c| c.norm() <= thresh).count();
    let trail = coeffs.iter().rev().take_while(|c| c.norm() <= thresh).count();
    if lead + trail > n {
        // only possible when a single coefficient survives
        let k = coeffs
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .map(|(k, _)| k)
            .unwrap_or(0);
        let mut out = vec![ProjPoint::infinity(); k];
        out.extend(std::iter::repeat_n(ProjPoint::zero(), n - k));
        return Ok(out);
    }
    let mut out = Vec::with_capacity(n);
    out.extend(std::iter::repeat_n(ProjPoint::infinity(), lead));
    out.extend(std::iter::repeat_n(ProjPoint::zero(), trail));
    let core = &coeffs[lead..coeffs.len() - trail];
    if core[0].norm() >= core[core.len() - 1].norm() {
        for x in affine_roots(core)? {
            out.push(ProjPoint::new(x, ONE)?);
        }
    } else {
        let rev: Vec<Complex> = core.iter().rev().copied().collect();
        for y in affine_roots(&rev)? {
            out.push(ProjPoint::new(ONE, y)?);
        }
    }
    Ok(out)
}

/// Groups roots closer than `cluster_tol` (chordal) into one root with
/// multiplicity. The representative is the mean in the affine chart of the
/// first member.
pub(crate) fn cluster(roots: &[ProjPoint], cluster_tol: f64) -> Vec<(ProjPoint, usize)> {
    let mut groups: Vec<Vec<ProjPoint>> = Vec::new();
    for r in roots {
        match groups.iter_mut().find(|g| g.iter().any(|q| q.chordal(r) < cluster_tol)) {
            Some(g) => g.push(*r),
            None => groups.push(vec![*r]),
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let k = g.len();
            let first = g[0];
            let rep = if first.b() == ONE {
                let z: Complex = g.iter().map(|p| p.a() / p.b()).sum::<Complex>() / k as f64;
                ProjPoint::finite(z)
            } else {
                let w: Complex = g.iter().map(|p| p.b() / p.a()).sum::<Complex>() / k as f64;
                ProjPoint::new(ONE, w).unwrap_or(first)
            };
            (rep, k)
        })
        .collect()
}

/// Smallest chordal distance between distinct roots of the list, used to
/// detect ambiguous clustering.
pub(crate) fn min_separation(roots: &[ProjPoint]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            best = best.min(roots[i].chordal(&roots[j]));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn quartic_with_roots_everywhere() {
        // X Y (X − Y)(X − 2iY): roots ∞, 0, 1, 2i
        let coeffs = [ZERO, ONE, c(-1.0, -2.0), c(0.0, 2.0), ZERO];
        let roots = form_roots(&coeffs).unwrap();
        for r in &roots {
            assert!(eval_form(&coeffs, r).norm() < 1e-14);
        }
        let expected = [
            ProjPoint::infinity(),
            ProjPoint::zero(),
            ProjPoint::real(1.0),
            ProjPoint::finite(c(0.0, 2.0)),
        ];
        for e in &expected {
            assert!(roots.iter().any(|r| r.chordal(e) < 1e-14));
        }
    }

    #[test]
    fn clustering_merges_double_roots() {
        // (X − Y)² (X + Y)
        let coeffs = [ONE, c(-1.0, 0.0), c(-1.0, 0.0), ONE];
        let roots = form_roots(&coeffs).unwrap();
        let cl = cluster(&roots, 1e-6);
        assert_eq!(cl.len(), 2);
        let double = cl.iter().find(|g| g.1 == 2).unwrap();
        assert!(double.0.chordal(&ProjPoint::real(1.0)) < 1e-10);
    }

    #[test]
    fn zero_form_is_rejected() {
        assert_eq!(form_roots(&[ZERO; 4]), Err(Error::ZeroForm));
    }
}

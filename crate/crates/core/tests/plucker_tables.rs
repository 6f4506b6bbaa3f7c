//! Closed-form Plücker coordinates of the three strata of `g`, recomputed
//! from 2×2 minors.

use lagtetra::random::Sampler;
use lagtetra::symplectic::{plucker_of, plucker_relation_residual, lagrangian_residual};
use lagtetra::{Complex, CubicForm};

const NAMES: [&str; 6] = ["12", "13", "14", "23", "24", "34"];

fn lin(a: Complex, b: Complex) -> Vec<Complex> {
    vec![b, -a]
}

fn mul(p: &[Complex], q: &[Complex]) -> Vec<Complex> {
    let mut out = vec![Complex::new(0.0, 0.0); p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn cubic(v: Vec<Complex>) -> CubicForm {
    CubicForm::new(v[0], v[1], v[2], v[3])
}

fn mismatches(tabulated: &[Complex; 6], minors: &[Complex; 6]) -> Vec<&'static str> {
    let scale = minors.iter().map(|z| z.norm()).fold(0.0, f64::max);
    (0..6)
        .filter(|&k| (tabulated[k] - minors[k]).norm() > 1e-10 * scale)
        .map(|k| NAMES[k])
        .collect()
}

#[test]
fn tetrahedron_table_matches_minors() {
    let mut s = Sampler::new(11);
    for _ in 0..50 {
        let [a1, b1, c1, d1, a2, b2, c2, d2] = std::array::from_fn(|_| s.complex_gaussian());
        let p1 = cubic(mul(&mul(&lin(a1, b1), &lin(a1, b1)), &lin(c1, d1)));
        let p2 = cubic(mul(&mul(&lin(a2, b2), &lin(a2, b2)), &lin(c2, d2)));
        let w = plucker_of(&p1, &p2);
        let two = Complex::new(2.0, 0.0);
        let e1 = b1 * b1 * c1 + two * a1 * b1 * d1;
        let e2 = b2 * b2 * c2 + two * a2 * b2 * d2;
        let f1 = a1 * a1 * d1 + two * a1 * b1 * c1;
        let f2 = a2 * a2 * d2 + two * a2 * b2 * c2;
        let tabulated = [
            -b1 * b1 * d1 * e2 + b2 * b2 * d2 * e1,
            b1 * b1 * d1 * f2 - b2 * b2 * d2 * f1,
            -b1 * b1 * d1 * a2 * a2 * c2 + b2 * b2 * d2 * a1 * a1 * c1,
            -e1 * f2 + e2 * f1,
            a2 * a2 * c2 * e1 - a1 * a1 * c1 * e2,
            -a2 * a2 * c2 * f1 + a1 * a1 * c1 * f2,
        ];
        assert!(mismatches(&tabulated, &w).is_empty());
    }
}

#[test]
fn degenerate_tables_have_two_typos() {
    let mut s = Sampler::new(12);
    let two = Complex::new(2.0, 0.0);
    let three = Complex::new(3.0, 0.0);
    for _ in 0..50 {
        let [a, b, c, d] = std::array::from_fn(|_| s.complex_gaussian());
        let k = b * c - a * d;
        let l = lin(a, b);
        let m = lin(c, d);

        let u = plucker_of(&cubic(mul(&mul(&l, &l), &l)), &cubic(mul(&mul(&l, &m), &m)));
        let u_tabulated = [
            two * b * b * b * d * k,
            b * b * (three * a * d + b * c) * k,
            -b * a * (b * c + a * d) * k,
            -three * b * a * (b * c + a * d) * k,
            a * a * (a * d + three * b * c) * k,
            -two * a * a * a * c * k,
        ];
        assert_eq!(mismatches(&u_tabulated, &u), vec!["12"]);
        let mut u_fixed = u_tabulated;
        u_fixed[0] = -u_fixed[0];
        assert!(mismatches(&u_fixed, &u).is_empty());

        let z = plucker_of(&cubic(mul(&mul(&l, &l), &l)), &cubic(mul(&mul(&l, &l), &m)));
        let z_tabulated = [
            -two * b * b * b * b * k,
            two * a * b * b * b * k,
            -a * a * b * b * k,
            -three * a * a * b * b * k,
            two * a * a * a * b * k,
            -a * a * a * a * k,
        ];
        assert_eq!(mismatches(&z_tabulated, &z), vec!["12"]);
        assert!(plucker_relation_residual(&z_tabulated) > 1e-9);
        let mut z_fixed = z_tabulated;
        z_fixed[0] /= two;
        assert!(mismatches(&z_fixed, &z).is_empty());
        assert!(plucker_relation_residual(&z_fixed) < 1e-12);
        assert!(lagrangian_residual(&u) < 1e-12 && lagrangian_residual(&z) < 1e-12);
    }
    println!("tabulated U12 has the wrong sign; tabulated Z12 has an extra factor 2");
}

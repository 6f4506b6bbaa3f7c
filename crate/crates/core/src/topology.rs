//! Exact certificates for the cohomology and intersection form of the fiber.
//! Integer matrices use `BigInt`, forms use `BigRational`; nothing here
//! touches floating point.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(int(x))
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect())
        .collect()
}

#[cfg(test)]
fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Smith normal form `u · m · v = d` with `u`, `v` unimodular.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.len().min(self.d.first().map_or(0, |r| r.len())))
            .map(|i| self.d[i][i].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith(m: &IntMatrix) -> Smith {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut d = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);

    fn swap_rows(a: &mut IntMatrix, i: usize, j: usize) {
        a.swap(i, j);
    }
    fn swap_cols(a: &mut IntMatrix, i: usize, j: usize) {
        for r in a.iter_mut() {
            r.swap(i, j);
        }
    }
    // row_i -= k row_j
    fn row_op(a: &mut IntMatrix, i: usize, j: usize, k: &BigInt) {
        let rj = a[j].clone();
        for (x, y) in a[i].iter_mut().zip(rj) {
            *x -= k * y;
        }
    }
    fn col_op(a: &mut IntMatrix, i: usize, j: usize, k: &BigInt) {
        for r in a.iter_mut() {
            let y = r[j].clone();
            r[i] -= k * y;
        }
    }

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the remaining block as pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { u, d, v };
            };
            swap_rows(&mut d, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let k = &d[i][t] / &d[t][t];
                if !k.is_zero() {
                    row_op(&mut d, i, t, &k);
                    row_op(&mut u, i, t, &k);
                }
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..cols {
                let k = &d[t][j] / &d[t][t];
                if !k.is_zero() {
                    col_op(&mut d, j, t, &k);
                    col_op(&mut v, j, t, &k);
                }
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility of the rest of the block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&d[i][j] % &d[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    let one = int(-1);
                    row_op(&mut d, t, i, &one);
                    row_op(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    Smith { u, d, v }
}

/// Kernel of `m: Z^cols → Z^rows` as a list of basis vectors.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith(m);
    let cols = s.v.len();
    (s.rank()..cols)
        .map(|j| (0..cols).map(|i| s.v[i][j].clone()).collect())
        .collect()
}

/// Row-style Hermite normal form of a full-rank square lattice basis.
pub fn hermite(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let n = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..n {
        loop {
            let piv = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(p) = piv else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                let k = &a[i][c] / &a[r][c];
                let ar = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(ar) {
                    *x -= &k * y;
                }
                done &= a[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let k = div_floor(&a[i][c], &a[r][c]);
                let ar = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(ar) {
                    *x -= &k * y;
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    let q = a / b;
    if !(a % b).is_zero() && (a.is_negative() != b.is_negative()) {
        q - 1
    } else {
        q
    }
}

fn det2(m: &[Vec<BigInt>]) -> BigInt {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

/// Coordinates of the integer vector `x` in the lattice basis `b` (2×2),
/// if it lies in the lattice.
fn coords_in(b: &[Vec<BigInt>], x: &[BigInt]) -> Option<[BigInt; 2]> {
    let det = det2(b);
    // x = c0 b0 + c1 b1
    let c0 = &x[0] * &b[1][1] - &x[1] * &b[1][0];
    let c1 = &b[0][0] * &x[1] - &b[0][1] * &x[0];
    if (&c0 % &det).is_zero() && (&c1 % &det).is_zero() {
        Some([c0 / &det, c1 / &det])
    } else {
        None
    }
}

/// `ker ζ` for `ζ(n, m) = n + m mod 3`, with the certificate that it is
/// spanned by `(2, 1)` and `(1, 2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelCert {
    /// Hermite basis of the kernel.
    pub basis: [[i64; 2]; 2],
    /// Rows express `(2, 1)`, `(1, 2)` in `basis`.
    pub change_of_basis: [[i64; 2]; 2],
    pub change_det: i64,
    pub index: i64,
}

fn small(x: &BigInt) -> i64 {
    i64::try_from(x).expect("certificate entries are small")
}

pub fn mv_kernel() -> KernelCert {
    // (n, m, k) ↦ n + m + 3k, projected to (n, m)
    let zeta = vec![vec![int(1), int(1), int(3)]];
    let ker: Vec<Vec<BigInt>> = integer_kernel(&zeta)
        .into_iter()
        .map(|v| v[..2].to_vec())
        .collect();
    let basis = hermite(&ker);
    let index = smith(&basis).invariant_factors().iter().product::<BigInt>();
    let target = [[int(2), int(1)], [int(1), int(2)]];
    let rows: Vec<[BigInt; 2]> = target
        .iter()
        .map(|t| coords_in(&basis, t).expect("(2,1) and (1,2) lie in the kernel"))
        .collect();
    let change: Vec<Vec<BigInt>> = rows.iter().map(|r| r.to_vec()).collect();
    let change_det = det2(&change);
    let b = |i: usize, j: usize| small(&basis[i][j]);
    let c = |i: usize, j: usize| small(&change[i][j]);
    KernelCert {
        basis: [[b(0, 0), b(0, 1)], [b(1, 0), b(1, 1)]],
        change_of_basis: [[c(0, 0), c(0, 1)], [c(1, 0), c(1, 1)]],
        change_det: small(&change_det),
        index: small(&index),
    }
}

/// Finitely generated abelian group `Z^rank ⊕ ⊕ Z/t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbGroup {
    pub fn free(rank: usize) -> Self {
        Self { rank, torsion: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        Self { rank: 0, torsion: vec![n] }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    fn generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    fn sum(&self, other: &AbGroup) -> AbGroup {
        let mut torsion = self.torsion.clone();
        torsion.extend(&other.torsion);
        AbGroup {
            rank: self.rank + other.rank,
            torsion,
        }
    }
}

fn superscript(n: usize) -> String {
    const D: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| D[c as usize - '0' as usize]).collect()
}

fn subscript(n: u64) -> String {
    const D: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string().chars().map(|c| D[c as usize - '0' as usize]).collect()
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z{}", superscript(r))),
        }
        for t in &self.torsion {
            parts.push(format!("Z{}", subscript(*t)));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Kernel rank and cokernel of `δ: Z^s → G`, where `δ` is given on the
/// generators of `G` (free ones first).
fn kernel_cokernel(source_rank: usize, target: &AbGroup, delta: &IntMatrix) -> (usize, AbGroup) {
    let g = target.generators();
    if g == 0 {
        return (source_rank, AbGroup::free(0));
    }
    // [δ | R] with R the relations of the torsion generators
    let mut m: IntMatrix = delta.clone();
    for (i, row) in m.iter_mut().enumerate() {
        for (k, t) in target.torsion.iter().enumerate() {
            row.push(if i == target.rank + k { BigInt::from(*t) } else { int(0) });
        }
    }
    let s = smith(&m);
    let factors = s.invariant_factors();
    let torsion: Vec<u64> = factors
        .iter()
        .filter(|x| !x.is_one())
        .map(|x| u64::try_from(x).expect("small torsion"))
        .collect();
    let coker = AbGroup {
        rank: g - factors.len(),
        torsion,
    };
    let kernel = integer_kernel(&m);
    let projected: Vec<Vec<BigInt>> = kernel.into_iter().map(|v| v[..source_rank].to_vec()).collect();
    let ker_rank = if projected.is_empty() {
        0
    } else {
        smith(&projected).rank()
    };
    (ker_rank, coker)
}

/// Cohomology of the pieces of the decomposition `A ∪ B` with `A ∩ B = Y`,
/// and the restriction maps `H^k(A) ⊕ H^k(B) → H^k(Y)`.
#[derive(Debug, Clone)]
pub struct MvInput {
    pub a: Vec<AbGroup>,
    pub b: Vec<AbGroup>,
    pub y: Vec<AbGroup>,
    pub delta: Vec<IntMatrix>,
}

impl MvInput {
    /// `A ≃ B ≃ S²` and `Y ≃ SO(3)/A₄`, whose cohomology `(Z, 0, Z₃, Z)`
    /// is taken as given. `δ⁰(a, b) = a − b` and `δ²(n, m) = n + m mod 3`.
    pub fn fiber() -> Self {
        let s2 = vec![AbGroup::free(1), AbGroup::free(0), AbGroup::free(1), AbGroup::free(0), AbGroup::free(0)];
        let y = vec![
            AbGroup::free(1),
            AbGroup::free(0),
            AbGroup::cyclic(3),
            AbGroup::free(1),
            AbGroup::free(0),
        ];
        let delta = vec![
            vec![vec![int(1), int(-1)]],
            vec![],
            vec![vec![int(1), int(1)]],
            vec![vec![]],
            vec![],
        ];
        Self { a: s2.clone(), b: s2, y, delta }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub groups: Vec<AbGroup>,
}

impl BettiTable {
    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(k, g)| if k % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) })
            .sum()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.groups.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Runs the Mayer–Vietoris sequence `… → H^{k−1}(Y) → H^k(F) → H^k(A) ⊕ H^k(B) → H^k(Y) → …`.
/// `H^k(F) ≅ coker δ^{k−1} ⊕ ker δ^k`, split because `ker δ^k` is free.
/// Checks the result against simple connectivity and duality of a closed
/// oriented 4-manifold.
pub fn betti_assemble_from(input: &MvInput) -> Result<BettiTable> {
    let n = input.y.len();
    if input.a.len() != n || input.b.len() != n || input.delta.len() != n {
        return Err(Error::InconsistentSequence("degree ranges differ".into()));
    }
    let mut kers = Vec::with_capacity(n);
    let mut cokers = Vec::with_capacity(n);
    for k in 0..n {
        let src = input.a[k].sum(&input.b[k]);
        if !src.torsion.is_empty() {
            return Err(Error::InconsistentSequence(format!("H^{k}(A) ⊕ H^{k}(B) has torsion")));
        }
        let rows = input.y[k].generators();
        let d = &input.delta[k];
        let shape_ok = if rows == 0 {
            d.iter().all(|r| r.is_empty())
        } else {
            d.len() == rows && d.iter().all(|r| r.len() == src.rank)
        };
        if !shape_ok {
            return Err(Error::InconsistentSequence(format!("δ^{k} has the wrong shape")));
        }
        let d = if rows == 0 { vec![] } else { d.clone() };
        let (kr, ck) = kernel_cokernel(src.rank, &input.y[k], &d);
        kers.push(kr);
        cokers.push(ck);
    }
    let mut groups = Vec::with_capacity(n);
    for k in 0..n {
        let from_y = if k == 0 { AbGroup::free(0) } else { cokers[k - 1].clone() };
        groups.push(from_y.sum(&AbGroup::free(kers[k])));
    }
    let t = BettiTable { groups };
    if t.groups.len() >= 5 {
        if !t.groups[1].is_zero() || !t.groups[3].is_zero() {
            return Err(Error::InconsistentSequence(format!(
                "odd cohomology {} does not vanish",
                t
            )));
        }
        if t.groups[0] != t.groups[4] || t.groups[0] != AbGroup::free(1) {
            return Err(Error::InconsistentSequence(format!("H⁰ and H⁴ disagree in {t}")));
        }
        if !t.groups[2].torsion.is_empty() {
            return Err(Error::InconsistentSequence(format!("H² has torsion in {t}")));
        }
    }
    Ok(t)
}

pub fn betti_assemble() -> Result<BettiTable> {
    betti_assemble_from(&MvInput::fiber())
}

/// Coefficients of `Q(2v−w, 2w−v) = 0`, `Q(2v−w, 2v−w) = q`,
/// `Q(2w−v, 2w−v) = −q` in the unknowns `(x, y, z)` of `Q = [[x, z], [z, y]]`.
pub const SYSTEM: [[i64; 3]; 3] = [[-2, -2, 5], [4, 1, -4], [1, 4, -4]];
/// Right-hand side as multiples of `q`.
pub const SYSTEM_RHS: [i64; 3] = [0, 1, -1];

fn det3(m: &[[BigRational; 3]; 3]) -> BigRational {
    let [a, b, c] = m;
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

/// Exact solution of the system for a given `q`, with its determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSolution {
    pub determinant: BigRational,
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
}

impl SystemSolution {
    pub fn residuals(&self, q: &BigRational) -> [BigRational; 3] {
        let v = [&self.x, &self.y, &self.z];
        std::array::from_fn(|i| {
            let lhs: BigRational = (0..3).map(|j| rat(SYSTEM[i][j]) * v[j]).sum();
            lhs - rat(SYSTEM_RHS[i]) * q
        })
    }

    pub fn form(&self) -> IntegerForm {
        IntegerForm::new(vec![
            vec![self.x.clone(), self.z.clone()],
            vec![self.z.clone(), self.y.clone()],
        ])
    }
}

/// Cramer's rule over the rationals.
pub fn intersection_form_solve(q: &BigRational) -> SystemSolution {
    let a: [[BigRational; 3]; 3] = SYSTEM.map(|r| r.map(rat));
    let b: [BigRational; 3] = SYSTEM_RHS.map(|x| rat(x) * q);
    let det = det3(&a);
    let sub = |col: usize| {
        let mut m = a.clone();
        for i in 0..3 {
            m[i][col] = b[i].clone();
        }
        det3(&m) / &det
    };
    SystemSolution {
        x: sub(0),
        y: sub(1),
        z: sub(2),
        determinant: det,
    }
}

/// Why a value of `q` does not give a unimodular integral form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QRejection {
    NotIntegral,
    NotUnimodular { det: String },
}

/// The form for `q` if it is integral and unimodular.
pub fn check_q(q: &BigRational) -> std::result::Result<IntegerForm, QRejection> {
    let form = intersection_form_solve(q).form();
    if !form.is_integral() {
        return Err(QRejection::NotIntegral);
    }
    let det = form.det();
    if det.abs() != rat(1) {
        return Err(QRejection::NotUnimodular { det: det.to_string() });
    }
    Ok(form)
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

/// All integers `q` for which the solved form is integral with `det = ±1`.
/// `det Q(q)` is a quadratic in `q`, recovered exactly from three values.
pub fn unimodular_q_candidates() -> Vec<BigInt> {
    let det_at = |q: i64| intersection_form_solve(&rat(q)).form().det();
    let (d0, d1, dm) = (det_at(0), det_at(1), det_at(-1));
    let a = (&d1 + &dm) / rat(2) - &d0;
    let b = (&d1 - &dm) / rat(2);
    let mut out = Vec::new();
    for target in [rat(1), rat(-1)] {
        let c = &d0 - &target;
        let roots: Vec<BigRational> = if a.is_zero() {
            if b.is_zero() {
                vec![]
            } else {
                vec![-c / &b]
            }
        } else {
            let disc = &b * &b - rat(4) * &a * &c;
            match rational_sqrt(&disc) {
                Some(s) => vec![(-&b + &s) / (rat(2) * &a), (-&b - &s) / (rat(2) * &a)],
                None => vec![],
            }
        };
        for r in roots {
            if r.is_integer() && check_q(&r).is_ok() && !out.contains(r.numer()) {
                out.push(r.numer().clone());
            }
        }
    }
    out.sort();
    out
}

/// Symmetric bilinear form with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerForm {
    pub m: Vec<Vec<BigRational>>,
}

impl IntegerForm {
    pub fn new(m: Vec<Vec<BigRational>>) -> Self {
        Self { m }
    }

    pub fn from_ints(m: &[&[i64]]) -> Self {
        Self::new(m.iter().map(|r| r.iter().map(|x| rat(*x)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        self.m.iter().all(|r| r.len() == n)
            && (0..n).all(|i| (0..i).all(|j| self.m[i][j] == self.m[j][i]))
    }

    pub fn is_integral(&self) -> bool {
        self.m.iter().flatten().all(|x| x.is_integer())
    }

    pub fn det(&self) -> BigRational {
        let mut a = self.m.clone();
        let n = a.len();
        let mut det = rat(1);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return rat(0);
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= &a[c][c];
            for i in c + 1..n {
                let k = &a[i][c] / &a[c][c];
                let ac = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(ac) {
                    *x -= &k * y;
                }
            }
        }
        det
    }

    pub fn neg(&self) -> Self {
        Self::new(self.m.iter().map(|r| r.iter().map(|x| -x).collect()).collect())
    }

    /// Block sum `Q₁ ⊕ Q₂`.
    pub fn direct_sum(&self, other: &IntegerForm) -> Self {
        let (n, k) = (self.dim(), other.dim());
        let mut m = vec![vec![rat(0); n + k]; n + k];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = self.m[i][j].clone();
            }
        }
        for i in 0..k {
            for j in 0..k {
                m[n + i][n + j] = other.m[i][j].clone();
            }
        }
        Self::new(m)
    }

    /// Congruence diagonalization `PᵀQP = D` over the rationals.
    pub fn diagonalize(&self) -> Vec<BigRational> {
        let mut a = self.m.clone();
        let n = a.len();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if a[k][k].is_zero() {
                if let Some(p) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                    a.swap(k, p);
                    for r in a.iter_mut() {
                        r.swap(k, p);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                    // e_k ← e_k + e_j makes the diagonal entry 2a_kj
                    let rj = a[j].clone();
                    for (x, y) in a[k].iter_mut().zip(rj) {
                        *x += y;
                    }
                    for r in a.iter_mut() {
                        let y = r[j].clone();
                        r[k] += y;
                    }
                }
            }
            let piv = a[k][k].clone();
            out.push(piv.clone());
            if piv.is_zero() {
                continue;
            }
            for i in k + 1..n {
                let f = &a[i][k] / &piv;
                let ak = a[k].clone();
                for (x, y) in a[i].iter_mut().zip(ak.iter()) {
                    *x -= &f * y;
                }
                for r in a.iter_mut() {
                    let y = r[k].clone();
                    r[i] -= &f * y;
                }
            }
        }
        out
    }
}

impl fmt::Display for IntegerForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Definiteness {
    Positive,
    Negative,
    Indefinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormClass {
    pub rank: usize,
    pub signature: i64,
    pub parity: Parity,
    pub definiteness: Definiteness,
    pub model: String,
}

pub const MODEL_CP2_SUM: &str = "CP²#C̄P²";
pub const MODEL_S2XS2: &str = "S²×S²";
pub const MODEL_OTHER: &str = "other";

pub fn classify_form(q: &IntegerForm) -> Result<FormClass> {
    if !q.is_symmetric() {
        return Err(Error::NotUnimodular("matrix is not symmetric".into()));
    }
    if !q.is_integral() {
        return Err(Error::NotUnimodular(format!("{q} has non-integral entries")));
    }
    let det = q.det();
    if det.abs() != rat(1) {
        return Err(Error::NotUnimodular(format!("{q} has determinant {det}")));
    }
    let d = q.diagonalize();
    let pos = d.iter().filter(|x| x.is_positive()).count();
    let neg = d.iter().filter(|x| x.is_negative()).count();
    let parity = if q.m.iter().enumerate().all(|(i, r)| (r[i].numer() % int(2)).is_zero()) {
        Parity::Even
    } else {
        Parity::Odd
    };
    let definiteness = match (pos, neg) {
        (_, 0) => Definiteness::Positive,
        (0, _) => Definiteness::Negative,
        _ => Definiteness::Indefinite,
    };
    let rank = q.dim();
    let model = match (rank, definiteness, parity) {
        (2, Definiteness::Indefinite, Parity::Odd) => MODEL_CP2_SUM,
        (2, Definiteness::Indefinite, Parity::Even) => MODEL_S2XS2,
        _ => MODEL_OTHER,
    };
    Ok(FormClass {
        rank,
        signature: pos as i64 - neg as i64,
        parity,
        definiteness,
        model: model.to_string(),
    })
}

/// JSON certificate for the intersection form of the fiber.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub system: [[i64; 3]; 3],
    pub rhs: [String; 3],
    pub determinant: String,
    pub solution: [String; 3],
    pub q_candidates: Vec<i64>,
    pub form: Vec<Vec<String>>,
    pub classification: FormClass,
    pub kernel: KernelCert,
    pub cohomology: Vec<String>,
}

fn times_q(c: &BigRational) -> String {
    if c.is_zero() {
        "0".into()
    } else if c.is_one() {
        "q".into()
    } else if *c == -rat(1) {
        "-q".into()
    } else if c.denom().is_one() {
        format!("{}q", c.numer())
    } else {
        let sign = if c.is_negative() { "-" } else { "" };
        let n = c.numer().abs();
        let num = if n.is_one() { "q".to_string() } else { format!("{n}q") };
        format!("{sign}{num}/{}", c.denom())
    }
}

/// Composes the kernel, the solved system, the admissible `q` and the form
/// classification. The form is reported for the positive candidate.
pub fn certificate() -> Result<Certificate> {
    let kernel = mv_kernel();
    let per_q = intersection_form_solve(&rat(1));
    let cands = unimodular_q_candidates();
    let q = cands
        .iter()
        .max()
        .ok_or_else(|| Error::NotUnimodular("no admissible q".into()))?;
    let form = check_q(&BigRational::from_integer(q.clone()))
        .map_err(|e| Error::NotUnimodular(format!("{e:?}")))?;
    let classification = classify_form(&form)?;
    let betti = betti_assemble()?;
    Ok(Certificate {
        system: SYSTEM,
        rhs: SYSTEM_RHS.map(|c| times_q(&rat(c))),
        determinant: per_q.determinant.to_string(),
        solution: [times_q(&per_q.x), times_q(&per_q.y), times_q(&per_q.z)],
        q_candidates: cands.iter().map(small).collect(),
        form: form.m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        classification,
        kernel,
        cohomology: betti.groups.iter().map(|g| g.to_string()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_zeta() {
        let k = mv_kernel();
        assert_eq!(k.index, 3);
        assert_eq!(k.change_det.abs(), 1);
        for [n, m] in k.basis {
            assert_eq!((n + m).rem_euclid(3), 0);
        }
        let b: Vec<Vec<BigInt>> = k.basis.iter().map(|r| r.iter().map(|x| int(*x)).collect()).collect();
        assert!(coords_in(&b, &[int(1), int(0)]).is_none());
    }

    #[test]
    fn smith_examples() {
        let m = vec![vec![int(2), int(4), int(4)], vec![int(-6), int(6), int(12)], vec![int(10), int(-4), int(-16)]];
        let s = smith(&m);
        assert_eq!(s.invariant_factors(), vec![int(2), int(6), int(12)]);
        assert_eq!(mat_mul(&mat_mul(&s.u, &m), &s.v), s.d);
    }

    #[test]
    fn cohomology_of_the_fiber() {
        let t = betti_assemble().unwrap();
        assert_eq!(t.to_string(), "(Z, 0, Z², 0, Z)");
        assert_eq!(t.euler_characteristic(), 4);
        let mut bad = MvInput::fiber();
        bad.delta[2] = vec![vec![int(3), int(3)]];
        assert!(matches!(betti_assemble_from(&bad), Err(Error::InconsistentSequence(_))));
    }

    #[test]
    fn solve_the_system() {
        let s = intersection_form_solve(&rat(3));
        assert_eq!(s.determinant, rat(27));
        assert_eq!((s.x.clone(), s.y.clone(), s.z.clone()), (rat(1), rat(-1), rat(0)));
        assert!(s.residuals(&rat(3)).iter().all(|r| r.is_zero()));
        let z = intersection_form_solve(&rat(0));
        assert!(z.x.is_zero() && z.y.is_zero() && z.z.is_zero());
    }

    #[test]
    fn q_candidates() {
        assert_eq!(unimodular_q_candidates(), vec![int(-3), int(3)]);
        assert_eq!(check_q(&rat(1)), Err(QRejection::NotIntegral));
        assert!(matches!(check_q(&rat(6)), Err(QRejection::NotUnimodular { .. })));
    }

    #[test]
    fn classify_examples() {
        let c = classify_form(&IntegerForm::from_ints(&[&[1, 0], &[0, -1]])).unwrap();
        assert_eq!((c.rank, c.signature, c.parity, c.definiteness), (2, 0, Parity::Odd, Definiteness::Indefinite));
        assert_eq!(c.model, MODEL_CP2_SUM);
        let h = classify_form(&IntegerForm::from_ints(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!((h.signature, h.parity, h.model.as_str()), (0, Parity::Even, MODEL_S2XS2));
        let p = classify_form(&IntegerForm::from_ints(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!((p.definiteness, p.model.as_str()), (Definiteness::Positive, MODEL_OTHER));
        assert!(classify_form(&IntegerForm::from_ints(&[&[2, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn certificate_json() {
        let c = certificate().unwrap();
        assert_eq!(c.solution, ["q/3".to_string(), "-q/3".into(), "0".into()]);
        assert_eq!(c.determinant, "27");
        assert_eq!(c.form, vec![vec!["1".to_string(), "0".into()], vec!["0".into(), "-1".into()]]);
        let a = serde_json::to_string(&c).unwrap();
        assert_eq!(a, serde_json::to_string(&certificate().unwrap()).unwrap());
    }
}

// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

//! Jacobi eigensolvers and simultaneous diagonalization of commuting pairs.
//!
//! Both solvers are cyclic Jacobi: every sweep visits each upper-triangular
//! pivot once and annihilates it with a plane rotation. Eigenvalues come back
//! sorted ascending, and each eigenvector is normalized so that its
//! largest-magnitude entry is real and positive.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, OrthogonalMatrix, RealDiagonal, RealMatrix, RealSymmetricMatrix, ZERO};
use crate::error::{Result, SesError};

/// Sweep cap for both Jacobi solvers.
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues of `P` closer than this (relative to `|P|_max`) are treated as one cluster.
pub const CLUSTER_TOL: f64 = 1e-8;

/// Commutator tolerance relative to `max(1, |P|_max |Q|_max)`.
pub const COMMUTATOR_TOL: f64 = 1e-8;

/// Unitarity tolerance on inputs to [`unitary_diagonalize`].
pub const UNITARY_TOL: f64 = 1e-8;

/// Off-diagonal residual (relative) above which simultaneous diagonalization
/// retries with a mixed pivot matrix `P + tQ`.
const RETRY_RESIDUAL: f64 = 1e-11;

/// Mixing coefficients tried in order when the plain `P` pass leaves residue.
const MIX_COEFFS: [f64; 6] = [
    0.618_033_988_749_895,
    -1.324_717_957_244_746,
    2.414_213_562_373_095,
    -0.414_213_562_373_095,
    3.732_050_807_568_877,
    -0.267_949_192_431_122,
];

/// Eigendecomposition `S = Q diag(lam) Q^T` of a real symmetric matrix.
pub fn symmetric_eig(s: &RealSymmetricMatrix) -> Result<(OrthogonalMatrix, RealDiagonal)> {
    let n = s.dim();
    let mut a = s.as_matrix().entries().to_vec();
    let mut v = RealMatrix::identity(n).entries().to_vec();
    let scale = s.max_abs();

    let mut converged = false;
    for _ in 0..=MAX_SWEEPS {
        let off = max_off_real(&a, n);
        if off <= f64::EPSILON * scale || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let (c, s) = jacobi_angle(a[p * n + p], a[q * n + q], apq);
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(SesError::NonConvergence { sweeps: MAX_SWEEPS });
    }

    let lam: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    let order = ascending_order(&lam);
    let mut q = RealMatrix::zeros(n, n);
    let mut sorted = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        sorted.push(lam[src]);
        let col: Vec<f64> = (0..n).map(|k| v[k * n + src]).collect();
        let sign = if col[argmax_abs(col.iter().map(|x| x.abs()))] < 0.0 { -1.0 } else { 1.0 };
        for (k, x) in col.iter().enumerate() {
            q.data_mut()[k * n + dst] = sign * x;
        }
    }
    Ok((OrthogonalMatrix::new_unchecked(q), RealDiagonal(sorted)))
}

/// Eigendecomposition `H = V diag(lam) V^dag` of a complex Hermitian matrix.
///
/// Only the upper triangle is read; the caller is responsible for checking
/// hermiticity.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<(ComplexMatrix, RealDiagonal)> {
    assert!(h.is_square(), "hermitian_eig needs a square matrix");
    let n = h.rows();
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        Ordering::Less => h[(i, j)],
        Ordering::Equal => Complex64::new(h[(i, i)].re, 0.0),
        Ordering::Greater => h[(j, i)].conj(),
    })
    .entries()
    .to_vec();
    let mut v = ComplexMatrix::identity(n).entries().to_vec();
    let scale = h.max_abs();

    let mut converged = false;
    for _ in 0..=MAX_SWEEPS {
        let off = max_off_complex(&a, n);
        if off <= f64::EPSILON * scale || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let w = apq / r;
                let (c, s) = jacobi_angle(a[p * n + p].re, a[q * n + q].re, r);
                // G = diag(1, conj w) * [[c, s], [-s, c]] acting on columns p, q.
                let gqp = -s * w.conj();
                let gqq = c * w.conj();
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c + akq * gqp;
                    a[k * n + q] = akp * s + akq * gqq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c + aqk * gqp.conj();
                    a[q * n + k] = apk * s + aqk * gqq.conj();
                }
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * c + vkq * gqp;
                    v[k * n + q] = vkp * s + vkq * gqq;
                }
            }
        }
    }
    if !converged {
        return Err(SesError::NonConvergence { sweeps: MAX_SWEEPS });
    }

    let lam: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    let order = ascending_order(&lam);
    let mut out = ComplexMatrix::zeros(n, n);
    let mut sorted = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        sorted.push(lam[src]);
        let col: Vec<Complex64> = (0..n).map(|k| v[k * n + src]).collect();
        let pivot = col[argmax_abs(col.iter().map(|z| z.norm()))];
        let phase = pivot.conj() / pivot.norm();
        for (k, z) in col.iter().enumerate() {
            out.data_mut()[k * n + dst] = z * phase;
        }
    }
    Ok((out, RealDiagonal(sorted)))
}

/// Result of [`simultaneous_diag`].
#[derive(Clone, Debug)]
pub struct SimultaneousEig {
    /// Unitary whose columns are common eigenvectors.
    pub basis: ComplexMatrix,
    pub p_vals: RealDiagonal,
    pub q_vals: RealDiagonal,
}

/// Diagonalizes two commuting Hermitian matrices with one unitary basis.
///
/// The basis is sorted by ascending `p_vals` (ties broken by `q_vals`).
/// When both inputs are real the basis is real orthogonal; see
/// [`simultaneous_diag_real`].
pub fn simultaneous_diag(p: &ComplexMatrix, q: &ComplexMatrix) -> Result<SimultaneousEig> {
    check_pair(p, q)?;
    if p.max_imag() == 0.0 && q.max_imag() == 0.0 {
        let pr = RealSymmetricMatrix::symmetrize(&p.re());
        let qr = RealSymmetricMatrix::symmetrize(&q.re());
        let (basis, p_vals, q_vals) = simultaneous_diag_real(&pr, &qr)?;
        return Ok(SimultaneousEig { basis: ComplexMatrix::from_real(basis.as_matrix()), p_vals, q_vals });
    }
    let scale = p.max_abs().max(q.max_abs()).max(1.0);
    let mut best = complex_pass(p, q, p)?;
    for t in MIX_COEFFS {
        if best.0 <= RETRY_RESIDUAL * scale {
            break;
        }
        let mixed = p + &q.scale(Complex64::new(t, 0.0));
        let candidate = complex_pass(p, q, &mixed)?;
        if candidate.0 < best.0 {
            best = candidate;
        }
    }
    Ok(best.1)
}

/// Real-orthogonal simultaneous diagonalization of two commuting real
/// symmetric matrices: `O^T P O = diag(p_vals)` and `O^T Q O = diag(q_vals)`.
pub fn simultaneous_diag_real(
    p: &RealSymmetricMatrix,
    q: &RealSymmetricMatrix,
) -> Result<(OrthogonalMatrix, RealDiagonal, RealDiagonal)> {
    if p.dim() != q.dim() {
        return Err(SesError::DimensionMismatch { expected: p.dim(), actual: q.dim() });
    }
    let residual = (&**p * &**q).max_abs_diff(&(&**q * &**p));
    if residual > COMMUTATOR_TOL * (p.max_abs() * q.max_abs()).max(1.0) {
        return Err(SesError::CommutatorViolation { residual });
    }
    let scale = p.max_abs().max(q.max_abs()).max(1.0);
    let mut best = real_pass(p, q, p)?;
    for t in MIX_COEFFS {
        if best.0 <= RETRY_RESIDUAL * scale {
            break;
        }
        let mixed = RealSymmetricMatrix::symmetrize(&(&**p + &q.scale(t)));
        let candidate = real_pass(p, q, &mixed)?;
        if candidate.0 < best.0 {
            best = candidate;
        }
    }
    Ok(best.1)
}

type RealPass = (f64, (OrthogonalMatrix, RealDiagonal, RealDiagonal));

/// One pass: eigendecompose `pivot`, then split each eigenvalue cluster with `q`.
fn real_pass(p: &RealSymmetricMatrix, q: &RealSymmetricMatrix, pivot: &RealSymmetricMatrix) -> Result<RealPass> {
    let n = p.dim();
    let (v, vals) = symmetric_eig(pivot)?;
    let mut basis = v.into_matrix();
    for cluster in clusters(vals.values(), CLUSTER_TOL * pivot.max_abs()) {
        if cluster.len() < 2 {
            continue;
        }
        let k = cluster.len();
        let sub = RealMatrix::from_fn(n, k, |i, j| basis[(i, cluster[j])]);
        let restricted = RealSymmetricMatrix::symmetrize(&(&(&sub.transpose() * &**q) * &sub));
        let (w, _) = symmetric_eig(&restricted)?;
        let rotated = &sub * w.as_matrix();
        for (j, &col) in cluster.iter().enumerate() {
            for i in 0..n {
                basis.data_mut()[i * n + col] = rotated[(i, j)];
            }
        }
    }
    let pd = &(&basis.transpose() * &**p) * &basis;
    let qd = &(&basis.transpose() * &**q) * &basis;
    let residual = pd.max_off_diagonal().max(qd.max_off_diagonal());
    let p_vals = pd.diagonal();
    let q_vals = qd.diagonal();
    let order = pair_order(&p_vals, &q_vals);
    let sorted = RealMatrix::from_fn(n, n, |i, j| basis[(i, order[j])]);
    Ok((
        residual,
        (
            OrthogonalMatrix::new_unchecked(sorted),
            RealDiagonal(order.iter().map(|&k| p_vals[k]).collect()),
            RealDiagonal(order.iter().map(|&k| q_vals[k]).collect()),
        ),
    ))
}

fn complex_pass(p: &ComplexMatrix, q: &ComplexMatrix, pivot: &ComplexMatrix) -> Result<(f64, SimultaneousEig)> {
    let n = p.rows();
    let (v, vals) = hermitian_eig(pivot)?;
    let mut basis = v;
    for cluster in clusters(vals.values(), CLUSTER_TOL * pivot.max_abs()) {
        if cluster.len() < 2 {
            continue;
        }
        let k = cluster.len();
        let sub = ComplexMatrix::from_fn(n, k, |i, j| basis[(i, cluster[j])]);
        let restricted = &(&sub.adjoint() * q) * &sub;
        let (w, _) = hermitian_eig(&restricted)?;
        let rotated = &sub * &w;
        for (j, &col) in cluster.iter().enumerate() {
            for i in 0..n {
                basis.data_mut()[i * n + col] = rotated[(i, j)];
            }
        }
    }
    let pd = &(&basis.adjoint() * p) * &basis;
    let qd = &(&basis.adjoint() * q) * &basis;
    let residual = pd.max_off_diagonal().max(qd.max_off_diagonal());
    let p_vals: Vec<f64> = (0..n).map(|i| pd[(i, i)].re).collect();
    let q_vals: Vec<f64> = (0..n).map(|i| qd[(i, i)].re).collect();
    let order = pair_order(&p_vals, &q_vals);
    Ok((
        residual,
        SimultaneousEig {
            basis: ComplexMatrix::from_fn(n, n, |i, j| basis[(i, order[j])]),
            p_vals: RealDiagonal(order.iter().map(|&k| p_vals[k]).collect()),
            q_vals: RealDiagonal(order.iter().map(|&k| q_vals[k]).collect()),
        },
    ))
}

fn check_pair(p: &ComplexMatrix, q: &ComplexMatrix) -> Result<()> {
    if !p.is_square() {
        return Err(SesError::InvalidMatrix("P is not square".into()));
    }
    if (q.rows(), q.cols()) != (p.rows(), p.cols()) {
        return Err(SesError::DimensionMismatch { expected: p.rows(), actual: q.rows() });
    }
    let residual = (p * q).max_abs_diff(&(q * p));
    if residual > COMMUTATOR_TOL * (p.max_abs() * q.max_abs()).max(1.0) {
        return Err(SesError::CommutatorViolation { residual });
    }
    Ok(())
}

/// Spectral form `U = V diag(exp(-i lam)) V^dag` of a unitary, with `lam` in `(-pi, pi]`.
///
/// Works through the commuting Hermitian pair `(U + U^dag)/2`, `(U - U^dag)/2i`.
pub fn unitary_diagonalize(u: &ComplexMatrix) -> Result<(ComplexMatrix, RealDiagonal)> {
    u.check_unitary(UNITARY_TOL)?;
    let n = u.rows();
    let ud = u.adjoint();
    let half = Complex64::new(0.5, 0.0);
    let herm = |m: ComplexMatrix| ComplexMatrix::from_fn(n, n, |i, j| half * (m[(i, j)] + m[(j, i)].conj()));
    let re_part = herm((u + &ud).scale(half));
    let im_part = herm((u - &ud).scale(Complex64::new(0.0, -0.5)));
    let eig = simultaneous_diag(&re_part, &im_part)?;
    let v = eig.basis;
    let diag = &(&v.adjoint() * u) * &v;
    let lam = (0..n).map(|k| principal_angle(-diag[(k, k)].arg())).collect();
    Ok((v, RealDiagonal(lam)))
}

/// Maps an angle onto `(-pi, pi]`.
pub fn principal_angle(x: f64) -> f64 {
    let mut y = x % (2.0 * PI);
    if y <= -PI {
        y += 2.0 * PI;
    } else if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// Rotation `(c, s)` annihilating the off-diagonal of `[[app, apq], [apq, aqq]]`.
fn jacobi_angle(app: f64, aqq: f64, apq: f64) -> (f64, f64) {
    let theta = (aqq - app) / (2.0 * apq);
    let t =
        if theta.abs() > 1e150 { 0.5 / theta } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
    let c = 1.0 / (t * t + 1.0).sqrt();
    (c, t * c)
}

fn max_off_real(a: &[f64], n: usize) -> f64 {
    let mut m = 0.0f64;
    for p in 0..n {
        for q in p + 1..n {
            m = m.max(a[p * n + q].abs());
        }
    }
    m
}

fn max_off_complex(a: &[Complex64], n: usize) -> f64 {
    let mut m = 0.0f64;
    for p in 0..n {
        for q in p + 1..n {
            m = m.max(a[p * n + q].norm());
        }
    }
    m
}

fn ascending_order(vals: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..vals.len()).collect();
    idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(a.cmp(&b)));
    idx
}

fn pair_order(p: &[f64], q: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..p.len()).collect();
    idx.sort_by(|&a, &b| p[a].total_cmp(&p[b]).then(q[a].total_cmp(&q[b])).then(a.cmp(&b)));
    idx
}

fn argmax_abs(mags: impl Iterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, m) in mags.enumerate() {
        if m > best.1 * (1.0 + 1e-12) {
            best = (i, m);
        }
    }
    best.0
}

/// Groups sorted values into runs whose consecutive gaps are at most `tol`.
fn clusters(sorted: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, &x) in sorted.iter().enumerate() {
        match out.last_mut() {
            Some(run) if x - sorted[*run.last().unwrap()] <= tol => run.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{haar_unitary, random_hermitian, random_symmetric};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn reconstruct_real(q: &OrthogonalMatrix, lam: &RealDiagonal) -> RealMatrix {
        &(&**q * &lam.to_matrix()) * &q.transpose()
    }

    #[test]
    fn identity_spectrum() {
        let (q, lam) = symmetric_eig(&RealSymmetricMatrix::identity(3)).unwrap();
        assert_eq!(lam.values(), &[1.0, 1.0, 1.0]);
        assert_eq!(q.as_matrix(), &RealMatrix::identity(3));
    }

    #[test]
    fn pauli_x_spectrum() {
        let x = RealSymmetricMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let (q, lam) = symmetric_eig(&x).unwrap();
        assert!((lam[0] + 1.0).abs() < 1e-15 && (lam[1] - 1.0).abs() < 1e-15);
        // Largest-magnitude entry positive; for equal magnitudes the first wins.
        let expected = [[FRAC_1_SQRT_2, FRAC_1_SQRT_2], [-FRAC_1_SQRT_2, FRAC_1_SQRT_2]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((q[(i, j)] - expected[i][j]).abs() < 1e-15, "{q:?}");
            }
        }
    }

    #[test]
    fn random_symmetric_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [1, 2, 5, 8, 20] {
            let s = random_symmetric(n, &mut rng);
            let (q, lam) = symmetric_eig(&s).unwrap();
            let tol = 1e-10 * s.max_abs().max(1.0);
            assert!(reconstruct_real(&q, &lam).max_abs_diff(&s) <= tol);
            assert!(q.orthogonality_residual() <= 1e-10);
            assert!(lam.values().windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn hermitian_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [1, 3, 6, 16] {
            let h = random_hermitian(n, &mut rng);
            let (v, lam) = hermitian_eig(&h).unwrap();
            let d = ComplexMatrix::from_real(&lam.to_matrix());
            let rec = &(&v * &d) * &v.adjoint();
            assert!(rec.max_abs_diff(&h) <= 1e-10, "n={n}");
            assert!(v.unitarity_residual() <= 1e-12);
        }
    }

    #[test]
    fn simultaneous_trivial_cases() {
        let p = ComplexMatrix::identity(2);
        let q = ComplexMatrix::from_real(&RealMatrix::from_diagonal(&[3.0, 4.0]));
        let eig = simultaneous_diag(&p, &q).unwrap();
        assert_eq!(eig.basis, ComplexMatrix::identity(2));
        assert_eq!(eig.p_vals.values(), &[1.0, 1.0]);
        assert_eq!(eig.q_vals.values(), &[3.0, 4.0]);

        let p = ComplexMatrix::from_real(&RealMatrix::from_diagonal(&[1.0, 2.0]));
        let q = ComplexMatrix::from_real(&RealMatrix::from_diagonal(&[5.0, 6.0]));
        assert_eq!(simultaneous_diag(&p, &q).unwrap().basis, ComplexMatrix::identity(2));
    }

    #[test]
    fn simultaneous_diag_of_chi_parts() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = haar_unitary(6, &mut rng);
        let chi = &u * &u.transpose();
        let p = RealSymmetricMatrix::symmetrize(&chi.re());
        let q = RealSymmetricMatrix::symmetrize(&chi.im());
        let (o, _, _) = simultaneous_diag_real(&p, &q).unwrap();
        let pd = &(&o.transpose() * &*p) * &*o;
        let qd = &(&o.transpose() * &*q) * &*o;
        assert!(pd.max_off_diagonal() <= 1e-9 && qd.max_off_diagonal() <= 1e-9);
    }

    #[test]
    fn simultaneous_with_degenerate_p() {
        // P has a triple eigenvalue; Q splits it.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let basis = haar_unitary(5, &mut rng);
        let pd = ComplexMatrix::from_real(&RealMatrix::from_diagonal(&[2.0, 2.0, 2.0, -1.0, 0.5]));
        let qd = ComplexMatrix::from_real(&RealMatrix::from_diagonal(&[0.1, 0.7, -0.3, 0.7, 0.7]));
        let p = &(&basis * &pd) * &basis.adjoint();
        let q = &(&basis * &qd) * &basis.adjoint();
        let eig = simultaneous_diag(&p, &q).unwrap();
        let b = &eig.basis;
        assert!((&(&b.adjoint() * &p) * b).max_off_diagonal() <= 1e-9);
        assert!((&(&b.adjoint() * &q) * b).max_off_diagonal() <= 1e-9);
        assert!(b.unitarity_residual() <= 1e-12);
    }

    #[test]
    fn commutator_violation() {
        let p = ComplexMatrix::from_real(&RealMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap());
        let q = ComplexMatrix::from_real(&RealMatrix::from_diagonal(&[1.0, -1.0]));
        assert!(matches!(simultaneous_diag(&p, &q), Err(SesError::CommutatorViolation { .. })));
    }

    #[test]
    fn unitary_diagonalize_examples() {
        let (_, lam) = unitary_diagonalize(&ComplexMatrix::identity(3)).unwrap();
        assert!(lam.values().iter().all(|&x| x.abs() < 1e-15));

        let u = ComplexMatrix::from_diagonal(&[Complex64::new(1.0, 0.0), Complex64::i()]);
        let (v, lam) = unitary_diagonalize(&u).unwrap();
        let mut sorted = lam.values().to_vec();
        sorted.sort_by(f64::total_cmp);
        assert!((sorted[0] + PI / 2.0).abs() < 1e-14 && sorted[1].abs() < 1e-14);
        let rec =
            &(&v * &ComplexMatrix::from_diagonal(
                &lam.0.iter().map(|&l| Complex64::from_polar(1.0, -l)).collect::<Vec<_>>(),
            )) * &v.adjoint();
        assert!(rec.max_abs_diff(&u) < 1e-14);
    }

    #[test]
    fn unitary_diagonalize_rejects_non_unitary() {
        let m = ComplexMatrix::from_real(&RealMatrix::from_diagonal(&[1.0, 2.0]));
        assert!(matches!(unitary_diagonalize(&m), Err(SesError::NotUnitary { .. })));
    }

    #[test]
    fn principal_angle_branch() {
        assert_eq!(principal_angle(-PI), PI);
        assert_eq!(principal_angle(PI), PI);
        assert!((principal_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
    }
}

//! Small dense complex linear algebra: just enough for representation
//! splitting. Matrices stay under ~50x50, so a cyclic Jacobi eigensolver
//! and plain Gaussian elimination are adequate and fully deterministic.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = Vec<Vec<Complex64>>;

pub fn czeros(n: usize, m: usize) -> CMat {
    vec![vec![Complex64::new(0.0, 0.0); m]; n]
}

pub fn cidentity(n: usize) -> CMat {
    let mut a = czeros(n, n);
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    a
}

pub fn cmul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    let k = if n == 0 { 0 } else { a[0].len() };
    let m = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = czeros(n, m);
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[l][j];
            }
        }
    }
    out
}

pub fn dagger(a: &CMat) -> CMat {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut out = czeros(m, n);
    for i in 0..n {
        for j in 0..m {
            out[j][i] = a[i][j].conj();
        }
    }
    out
}

pub fn cadd(a: &CMat, b: &CMat) -> CMat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn cscale(a: &CMat, z: Complex64) -> CMat {
    a.iter()
        .map(|r| r.iter().map(|x| x * z).collect())
        .collect()
}

/// Largest entry magnitude of `a - b`.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    let mut worst: f64 = 0.0;
    for (r, s) in a.iter().zip(b) {
        for (x, y) in r.iter().zip(s) {
            worst = worst.max((x - y).norm());
        }
    }
    worst
}

pub fn trace(a: &CMat) -> Complex64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations: returns (eigenvalues, V) with `a V = V diag(values)` and the
/// columns of V orthonormal. Eigenvalues are sorted ascending.
pub fn hermitian_eigen(a: &CMat) -> Result<(Vec<f64>, CMat)> {
    let n = a.len();
    let mut m = a.clone();
    // symmetrize guard
    for i in 0..n {
        for j in 0..n {
            let avg = (m[i][j] + m[j][i].conj()) * 0.5;
            m[i][j] = avg;
            m[j][i] = avg.conj();
        }
    }
    let mut v = cidentity(n);
    let scale: f64 = m
        .iter()
        .flatten()
        .map(|x| x.norm())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let tol = 1e-14 * scale;
    for _sweep in 0..100 {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(m[p][q].norm());
            }
        }
        if off < tol {
            let mut pairs: Vec<(f64, usize)> =
                (0..n).map(|i| (m[i][i].re, i)).collect();
            pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            let values: Vec<f64> = pairs.iter().map(|&(x, _)| x).collect();
            let mut vv = czeros(n, n);
            for (new_col, &(_, old_col)) in pairs.iter().enumerate() {
                for r in 0..n {
                    vv[r][new_col] = v[r][old_col];
                }
            }
            return Ok((values, vv));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = m[p][q];
                if g.norm() < tol {
                    continue;
                }
                let alpha = m[p][p].re;
                let beta = m[q][q].re;
                let absg = g.norm();
                let phase = g / absg; // e^{i phi}
                let theta = 0.5 * (2.0 * absg).atan2(alpha - beta);
                let c = theta.cos();
                let s = theta.sin();
                // unitary: col p' = c*col_p + s*conj(phase)*col_q
                //          col q' = -s*phase*col_p + c*col_q
                let up = Complex64::new(c, 0.0);
                let sp = phase.conj() * s;
                let sq = -(phase * s);
                let uq = Complex64::new(c, 0.0);
                // m <- U^dagger m U ; apply on columns then rows
                for r in 0..n {
                    let (xp, xq) = (m[r][p], m[r][q]);
                    m[r][p] = xp * up + xq * sp;
                    m[r][q] = xp * sq + xq * uq;
                }
                for cidx in 0..n {
                    let (xp, xq) = (m[p][cidx], m[q][cidx]);
                    m[p][cidx] = xp * up.conj() + xq * sp.conj();
                    m[q][cidx] = xp * sq.conj() + xq * uq.conj();
                }
                for r in 0..n {
                    let (xp, xq) = (v[r][p], v[r][q]);
                    v[r][p] = xp * up + xq * sp;
                    v[r][q] = xp * sq + xq * uq;
                }
            }
        }
    }
    Err(Error::Numerical("Jacobi eigensolver did not converge".into()))
}

/// Numerical rank by Gaussian elimination with partial pivoting.
pub fn rank_with_tol(a: &CMat, tol: f64) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    for col in 0..cols {
        // find pivot
        let mut best = rank;
        for r in rank..rows {
            if m[r][col].norm() > m[best][col].norm() {
                best = r;
            }
        }
        if rank >= rows || m[best][col].norm() <= tol {
            continue;
        }
        m.swap(rank, best);
        let piv = m[rank][col];
        for r in 0..rows {
            if r != rank && m[r][col].norm() > 0.0 {
                let f = m[r][col] / piv;
                for c2 in col..cols {
                    let t = f * m[rank][c2];
                    m[r][c2] -= t;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Nullity (dimension of the kernel) with tolerance.
pub fn nullity_with_tol(a: &CMat, tol: f64) -> usize {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    cols - rank_with_tol(a, tol)
}

/// |det| estimate via LU with partial pivoting (used for nondegeneracy).
pub fn abs_det(a: &CMat) -> f64 {
    let n = a.len();
    let mut m = a.clone();
    let mut det: f64 = 1.0;
    for col in 0..n {
        let mut best = col;
        for r in col..n {
            if m[r][col].norm() > m[best][col].norm() {
                best = r;
            }
        }
        if m[best][col].norm() == 0.0 {
            return 0.0;
        }
        m.swap(col, best);
        let piv = m[col][col];
        det *= piv.norm();
        for r in (col + 1)..n {
            let f = m[r][col] / piv;
            for c2 in col..n {
                let t = f * m[col][c2];
                m[r][c2] -= t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rand_hermitian(n: usize, seed: &mut u64) -> CMat {
        let next = |s: &mut u64| {
            *s ^= *s << 13;
            *s ^= *s >> 7;
            *s ^= *s << 17;
            (*s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut a = czeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a[i][j] = Complex64::new(next(seed), next(seed));
            }
        }
        let ad = dagger(&a);
        cadd(&a, &ad)
    }

    #[test]
    fn jacobi_reconstructs_matrix() {
        let mut seed = 42u64;
        for n in [2usize, 5, 12] {
            let a = rand_hermitian(n, &mut seed);
            let (vals, v) = hermitian_eigen(&a).unwrap();
            // A V = V diag
            let av = cmul(&a, &v);
            let mut vd = v.clone();
            for r in 0..n {
                for c in 0..n {
                    vd[r][c] = v[r][c] * vals[c];
                }
            }
            assert!(max_abs_diff(&av, &vd) < 1e-9);
            // V unitary
            let vtv = cmul(&dagger(&v), &v);
            assert!(max_abs_diff(&vtv, &cidentity(n)) < 1e-9);
        }
    }

    #[test]
    fn rank_and_det_basics() {
        let a = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
            vec![Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0)],
        ];
        assert_eq!(rank_with_tol(&a, 1e-10), 1);
        assert!(abs_det(&a) < 1e-12);
        let i3 = cidentity(3);
        assert_eq!(rank_with_tol(&i3, 1e-10), 3);
        assert!((abs_det(&i3) - 1.0).abs() < 1e-12);
    }
}

//! Exact integer matrix utilities: Smith normal form with optional
//! transformation matrices, and Gaussian rank over a prime field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type IMat = Vec<Vec<BigInt>>;

pub fn int_mat<T: Into<i64> + Copy>(rows: &[Vec<T>]) -> IMat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x.into())).collect())
        .collect()
}

pub fn identity_mat(n: usize) -> IMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let k = if n == 0 { 0 } else { a[0].len() };
    let m = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                let t = &a[i][l] * &b[l][j];
                out[i][j] += t;
            }
        }
    }
    out
}

/// Smith normal form data: `u * a * v = d` with `u`, `v` unimodular and `d`
/// diagonal with nonnegative entries forming a divisibility chain.
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub u: Option<IMat>,
    pub u_inv: Option<IMat>,
    pub v: Option<IMat>,
    pub v_inv: Option<IMat>,
}

struct Work {
    a: IMat,
    m: usize,
    n: usize,
    u: Option<IMat>,
    u_inv: Option<IMat>,
    v: Option<IMat>,
    v_inv: Option<IMat>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(i, j);
        }
    }

    /// row_i -= q * row_j
    fn row_op(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.n {
            let t = q * &self.a[j][c];
            self.a[i][c] -= t;
        }
        if let Some(u) = &mut self.u {
            for c in 0..self.m {
                let t = q * &u[j][c];
                u[i][c] -= t;
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for r in 0..self.m {
                let t = q * &ui[r][i];
                ui[r][j] += t;
            }
        }
    }

    /// col_i -= q * col_j
    fn col_op(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.m {
            let t = q * &self.a[r][j];
            self.a[r][i] -= t;
        }
        if let Some(v) = &mut self.v {
            for r in 0..v.len() {
                let t = q * &v[r][j];
                v[r][i] -= t;
            }
        }
        if let Some(vi) = &mut self.v_inv {
            for c in 0..self.n {
                let t = q * &vi[i][c];
                vi[j][c] += t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.n {
            let t = -&self.a[i][c];
            self.a[i][c] = t;
        }
        if let Some(u) = &mut self.u {
            for c in 0..self.m {
                let t = -&u[i][c];
                u[i][c] = t;
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for r in 0..self.m {
                let t = -&ui[r][i];
                ui[r][i] = t;
            }
        }
    }
}

/// Computes the Smith normal form. `want_left` / `want_right` control
/// whether the (inverse) transformation matrices are tracked.
pub fn smith(a: &IMat, want_left: bool, want_right: bool) -> Result<Smith> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    for row in a {
        if row.len() != n {
            return Err(Error::Numerical("ragged matrix".into()));
        }
    }
    let mut w = Work {
        a: a.clone(),
        m,
        n,
        u: want_left.then(|| identity_mat(m)),
        u_inv: want_left.then(|| identity_mat(m)),
        v: want_right.then(|| identity_mat(n)),
        v_inv: want_right.then(|| identity_mat(n)),
    };
    let k = m.min(n);
    let mut t = 0;
    while t < k {
        // locate a minimal-magnitude nonzero pivot in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !w.a[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| w.a[i][j].abs() < w.a[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        // clear row and column t
        loop {
            let mut dirty = false;
            for i in (t + 1)..m {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&w.a[t][t]);
                    w.row_op(i, t, &q);
                    if !w.a[i][t].is_zero() {
                        // remainder smaller than the pivot: swap up and redo
                        w.swap_rows(t, i);
                        dirty = true;
                    }
                }
            }
            for j in (t + 1)..n {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&w.a[t][t]);
                    w.col_op(j, t, &q);
                    if !w.a[t][j].is_zero() {
                        w.swap_cols(t, j);
                        dirty = true;
                    }
                }
            }
            if !dirty
                && (t + 1..m).all(|i| w.a[i][t].is_zero())
                && (t + 1..n).all(|j| w.a[t][j].is_zero())
            {
                break;
            }
        }
        // pivot must divide every remaining entry for the divisibility chain
        let mut offender = None;
        'scan: for i in (t + 1)..m {
            for j in (t + 1)..n {
                if !(&w.a[i][j] % &w.a[t][t]).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            // fold the offending row into row t and redo this pivot
            let q = BigInt::from(-1);
            w.row_op(t, i, &q); // row_t += row_i
            continue;
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let diag: Vec<BigInt> = (0..k).map(|i| w.a[i][i].clone()).collect();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    // sanity: divisibility chain
    for i in 1..rank {
        if !(&diag[i] % &diag[i - 1]).is_zero() {
            return Err(Error::Numerical("divisibility chain violated".into()));
        }
    }
    Ok(Smith {
        diag,
        rank,
        rows: m,
        cols: n,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
    })
}

/// Invariant factors greater than 1 (the torsion of the cokernel).
pub fn nontrivial_invariant_factors(a: &IMat) -> Result<Vec<BigInt>> {
    let s = smith(a, false, false)?;
    Ok(s.diag
        .into_iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .collect())
}

/// Rank of an integer matrix over GF(p).
pub fn rank_mod_p(a: &[Vec<i64>], p: u64) -> usize {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut rows: Vec<Vec<u64>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let pivot = (rank..m).find(|&i| rows[i][col] % p != 0);
        let Some(pi) = pivot else { continue };
        rows.swap(rank, pi);
        let inv = mod_inverse(rows[rank][col] % p, p);
        for j in col..n {
            rows[rank][j] = rows[rank][j] % p * inv % p;
        }
        for i in 0..m {
            if i != rank && rows[i][col] % p != 0 {
                let f = rows[i][col] % p;
                for j in col..n {
                    rows[i][j] = (rows[i][j] + (p - f) * rows[rank][j]) % p;
                }
            }
        }
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p prime; Fermat
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc: u64 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_decomposition(a: &IMat) {
        let s = smith(a, true, true).unwrap();
        let uav = mat_mul(&mat_mul(s.u.as_ref().unwrap(), a), s.v.as_ref().unwrap());
        for (i, row) in uav.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expect = if i == j && i < s.diag.len() {
                    s.diag[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(*x, expect, "at ({i},{j})");
            }
        }
        // u * u_inv = I
        let uu = mat_mul(s.u.as_ref().unwrap(), s.u_inv.as_ref().unwrap());
        assert_eq!(uu, identity_mat(a.len()));
        let vv = mat_mul(s.v_inv.as_ref().unwrap(), s.v.as_ref().unwrap());
        let n = if a.is_empty() { 0 } else { a[0].len() };
        assert_eq!(vv, identity_mat(n));
    }

    #[test]
    fn smith_small_known() {
        let a = int_mat(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let s = smith(&a, false, false).unwrap();
        let d: Vec<i64> = s.diag.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(d, vec![2, 2, 156]);
        check_decomposition(&a);
    }

    #[test]
    fn smith_rectangular_and_zero() {
        let a = int_mat(&[vec![0i64, 0], vec![0, 0], vec![0, 0]]);
        let s = smith(&a, true, true).unwrap();
        assert_eq!(s.rank, 0);
        let b = int_mat(&[vec![1i64, 2, 3], vec![4, 5, 6]]);
        check_decomposition(&b);
        let s = smith(&b, false, false).unwrap();
        let d: Vec<i64> = s.diag.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(d, vec![1, 3]);
    }

    #[test]
    fn cokernel_torsion() {
        // coker of diag-ish map with factors 1, 2, 6
        let a = int_mat(&[vec![2i64, 0], vec![0, 6], vec![0, 0]]);
        let f = nontrivial_invariant_factors(&a).unwrap();
        let d: Vec<i64> = f.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(d, vec![2, 6]);
    }

    #[test]
    fn rank_mod_p_matches() {
        let a = vec![vec![1i64, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank_mod_p(&a, 10007), 2);
        assert_eq!(rank_mod_p(&a, 2), 2);
        let z = vec![vec![0i64; 3]; 2];
        assert_eq!(rank_mod_p(&z, 5), 0);
    }

    #[test]
    fn smith_random_decompositions() {
        // deterministic pseudo-random small matrices
        let mut seed: u64 = 0x9E3779B97F4A7C15;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..10 {
            let m = 2 + (next() % 4) as usize;
            let n = 2 + (next() % 4) as usize;
            let a: IMat = (0..m)
                .map(|_| {
                    (0..n)
                        .map(|_| BigInt::from((next() % 11) as i64 - 5))
                        .collect()
                })
                .collect();
            check_decomposition(&a);
        }
    }
}

//! Bar-resolution group cohomology with finite (and Z) coefficients:
//! normalized cochains, the bar differential, Smith-normal-form cohomology
//! with explicit representative cocycles, Schur multipliers by two
//! independent routes, and group extensions built from 2-cocycles.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::snf::{int_mat, smith, IMat};

/// A finitely generated abelian coefficient module presented by invariant
/// factors (`0` encodes a `Z` summand), with an optional diagonal action:
/// each group element scales each factor by a unit.
#[derive(Debug, Clone)]
pub struct CoeffModule {
    pub factors: Vec<u64>,
    /// `action[g][k]`: multiplier of `g` on factor `k`; `None` = trivial.
    pub action: Option<Vec<Vec<i64>>>,
}

impl CoeffModule {
    pub fn zn(m: u64) -> Self {
        CoeffModule {
            factors: vec![m],
            action: None,
        }
    }

    pub fn integers() -> Self {
        CoeffModule {
            factors: vec![0],
            action: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn multiplier(&self, g: usize, k: usize) -> i64 {
        self.action.as_ref().map(|a| a[g][k]).unwrap_or(1)
    }

    /// Validates the action against a group: unit multipliers, identity acts
    /// trivially, multiplicativity.
    pub fn check_action(&self, group: &FiniteGroup) -> Result<()> {
        let Some(action) = &self.action else {
            return Ok(());
        };
        if action.len() != group.order() {
            return Err(Error::CoeffModule("one action row per element".into()));
        }
        for row in action {
            if row.len() != self.factors.len() {
                return Err(Error::CoeffModule("one multiplier per factor".into()));
            }
        }
        for (k, &m) in self.factors.iter().enumerate() {
            if action[group.identity()][k] != 1 {
                return Err(Error::CoeffModule("identity must act trivially".into()));
            }
            for g in 0..group.order() {
                let a = action[g][k];
                if m == 0 {
                    if a != 1 && a != -1 {
                        return Err(Error::CoeffModule("non-unit multiplier on Z".into()));
                    }
                } else if gcd_u(a.rem_euclid(m as i64) as u64, m) != 1 {
                    return Err(Error::CoeffModule("non-unit multiplier".into()));
                }
                for h in 0..group.order() {
                    let gh = group.mul(g, h);
                    let lhs = mod_reduce(action[g][k] * action[h][k], m);
                    if lhs != mod_reduce(action[gh][k], m) {
                        return Err(Error::CoeffModule("action not multiplicative".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

fn gcd_u(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u(b, a % b)
    }
}

fn mod_reduce(x: i64, m: u64) -> i64 {
    if m == 0 {
        x
    } else {
        x.rem_euclid(m as i64)
    }
}

/// A normalized inhomogeneous cochain: values on tuples of non-identity
/// elements, zero whenever any argument is the identity.
#[derive(Debug, Clone)]
pub struct Cochain {
    pub group: Arc<FiniteGroup>,
    pub module: CoeffModule,
    pub degree: usize,
    /// `values[tuple_index][factor]`, tuples over non-identity elements in
    /// mixed-radix order (first argument most significant).
    pub values: Vec<Vec<i64>>,
}

fn n_tuples(order: usize, degree: usize) -> usize {
    (order - 1).pow(degree as u32)
}

impl Cochain {
    pub fn zero(group: Arc<FiniteGroup>, module: CoeffModule, degree: usize) -> Self {
        let len = n_tuples(group.order(), degree);
        let k = module.rank();
        Cochain {
            group,
            module,
            degree,
            values: vec![vec![0; k]; len],
        }
    }

    pub fn new(
        group: Arc<FiniteGroup>,
        module: CoeffModule,
        degree: usize,
        values: Vec<Vec<i64>>,
    ) -> Result<Self> {
        module.check_action(&group)?;
        if values.len() != n_tuples(group.order(), degree) {
            return Err(Error::Cochain(format!(
                "expected {} value tuples",
                n_tuples(group.order(), degree)
            )));
        }
        if values.iter().any(|v| v.len() != module.rank()) {
            return Err(Error::Cochain("value arity mismatch".into()));
        }
        let mut c = Cochain {
            group,
            module,
            degree,
            values,
        };
        c.reduce();
        Ok(c)
    }

    /// Tuple of non-identity elements -> flat index.
    pub fn tuple_index(&self, args: &[usize]) -> usize {
        let q = self.group.order() - 1;
        args.iter().fold(0, |acc, &g| acc * q + (g - 1))
    }

    /// Value on arbitrary arguments; identity anywhere gives zero
    /// (normalization).
    pub fn value(&self, args: &[usize]) -> Vec<i64> {
        debug_assert_eq!(args.len(), self.degree);
        if args.iter().any(|&g| g == self.group.identity()) {
            return vec![0; self.module.rank()];
        }
        self.values[self.tuple_index(args)].clone()
    }

    pub fn reduce(&mut self) {
        for v in &mut self.values {
            for (k, x) in v.iter_mut().enumerate() {
                *x = mod_reduce(*x, self.module.factors[k]);
            }
        }
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        if self.degree != other.degree
            || self.module.factors != other.module.factors
            || self.group.order() != other.group.order()
        {
            return Err(Error::Cochain("degree or module mismatch".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        Cochain::new(self.group.clone(), self.module.clone(), self.degree, values)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| {
            v.iter()
                .enumerate()
                .all(|(k, &x)| mod_reduce(x, self.module.factors[k]) == 0)
        })
    }
}

/// Iterates tuples of non-identity elements in mixed-radix order.
fn for_each_tuple(order: usize, degree: usize, mut f: impl FnMut(&[usize])) {
    let q = order - 1;
    let mut t = vec![1usize; degree];
    if degree == 0 {
        f(&t);
        return;
    }
    if q == 0 {
        return;
    }
    loop {
        f(&t);
        let mut k = degree;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            t[k] += 1;
            if t[k] <= q {
                break;
            }
            t[k] = 1;
        }
    }
}

/// The bar differential on normalized cochains.
pub fn coboundary(c: &Cochain) -> Cochain {
    let group = &c.group;
    let n = c.degree;
    let order = group.order();
    let mut out = Cochain::zero(group.clone(), c.module.clone(), n + 1);
    let rank = c.module.rank();
    let mut idx = 0;
    for_each_tuple(order, n + 1, |t| {
        let mut acc = vec![0i64; rank];
        // g1 . c(g2, ..., g_{n+1})
        let head = c.value(&t[1..]);
        for k in 0..rank {
            acc[k] += c.module.multiplier(t[0], k) * head[k];
        }
        // middle alternating terms with a single product slot
        let mut sign = -1i64;
        for i in 0..n {
            let mut args = Vec::with_capacity(n);
            args.extend_from_slice(&t[..i]);
            args.push(group.mul(t[i], t[i + 1]));
            args.extend_from_slice(&t[i + 2..]);
            let v = c.value(&args);
            for k in 0..rank {
                acc[k] += sign * v[k];
            }
            sign = -sign;
        }
        // (-1)^{n+1} c(g1, ..., gn)
        let tail = c.value(&t[..n]);
        for k in 0..rank {
            acc[k] += sign * tail[k];
        }
        out.values[idx] = acc;
        idx += 1;
    });
    out.reduce();
    out
}

pub fn is_cocycle(c: &Cochain) -> bool {
    coboundary(c).is_zero()
}

/// Integer matrix of the bar differential d^n on factor `k`, rows indexed by
/// (n+1)-tuples, columns by n-tuples.
pub fn bar_matrix(group: &FiniteGroup, module: &CoeffModule, k: usize, n: usize) -> Vec<Vec<i64>> {
    let order = group.order();
    let rows = n_tuples(order, n + 1);
    let cols = n_tuples(order, n);
    let mut mat = vec![vec![0i64; cols]; rows];
    let q = order - 1;
    let col_of = |args: &[usize]| -> Option<usize> {
        if args.iter().any(|&g| g == 0) {
            None
        } else {
            Some(args.iter().fold(0, |acc, &g| acc * q + (g - 1)))
        }
    };
    let mut r = 0;
    for_each_tuple(order, n + 1, |t| {
        if let Some(c) = col_of(&t[1..]) {
            mat[r][c] += module.multiplier(t[0], k);
        }
        let mut sign = -1i64;
        for i in 0..n {
            let mut args = Vec::with_capacity(n);
            args.extend_from_slice(&t[..i]);
            args.push(group.mul(t[i], t[i + 1]));
            args.extend_from_slice(&t[i + 2..]);
            if let Some(c) = col_of(&args) {
                mat[r][c] += sign;
            }
            sign = -sign;
        }
        if let Some(c) = col_of(&t[..n]) {
            mat[r][c] += sign;
        }
        r += 1;
    });
    mat
}

/// A computed cohomology group: invariant factors (`0` = a free `Z`
/// summand) with one explicit representative cocycle per listed factor.
pub struct CohomologyGroup {
    pub degree: usize,
    pub factors: Vec<u64>,
    pub representatives: Vec<Cochain>,
}

impl CohomologyGroup {
    pub fn order(&self) -> Option<u64> {
        if self.factors.contains(&0) {
            None
        } else {
            Some(self.factors.iter().product())
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Kernel-mod-m lattice of an integer matrix `d`: a basis of
/// {x : d x = 0 mod m} (m = 0 means over Z), returned as columns, together
/// with data to express kernel vectors in that basis.
struct KernelLattice {
    /// cn x k basis matrix (columns are basis vectors)
    basis: IMat,
    v_inv: IMat,
    /// per basis column, its scaling; used to coordinatize
    scales: Vec<BigInt>,
    /// column indices of v used (all, for m > 0)
    picked: Vec<usize>,
    cn: usize,
}

fn kernel_lattice(d: &[Vec<i64>], m: u64) -> Result<KernelLattice> {
    let cn = if d.is_empty() { 0 } else { d[0].len() };
    let s = smith(&int_mat(d), false, true)?;
    let v = s.v.unwrap();
    let v_inv = s.v_inv.unwrap();
    let mb = BigInt::from(m);
    let mut picked = Vec::new();
    let mut scales = Vec::new();
    for i in 0..cn {
        let di = if i < s.diag.len() {
            s.diag[i].clone()
        } else {
            BigInt::zero()
        };
        if m == 0 {
            if di.is_zero() {
                picked.push(i);
                scales.push(BigInt::one());
            }
        } else {
            let g = di.gcd(&mb);
            let t = &mb / g;
            picked.push(i);
            scales.push(t);
        }
    }
    // basis columns: v[:, i] * scale
    let mut basis = vec![vec![BigInt::zero(); picked.len()]; cn];
    for (col, (&i, t)) in picked.iter().zip(&scales).enumerate() {
        for r in 0..cn {
            basis[r][col] = &v[r][i] * t;
        }
    }
    Ok(KernelLattice {
        basis,
        v_inv,
        scales,
        picked,
        cn,
    })
}

impl KernelLattice {
    /// Coordinates of a kernel vector in the basis; errors if the vector is
    /// not in the lattice.
    fn coordinates(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let mut w = vec![BigInt::zero(); self.cn];
        for r in 0..self.cn {
            for c in 0..self.cn {
                if !self.v_inv[r][c].is_zero() && !x[c].is_zero() {
                    let t = &self.v_inv[r][c] * &x[c];
                    w[r] += t;
                }
            }
        }
        let mut y = Vec::with_capacity(self.picked.len());
        let mut hit = vec![false; self.cn];
        for (&i, t) in self.picked.iter().zip(&self.scales) {
            let (q, r) = w[i].div_rem(t);
            if !r.is_zero() {
                return Err(Error::Numerical("vector outside kernel lattice".into()));
            }
            y.push(q);
            hit[i] = true;
        }
        for i in 0..self.cn {
            if !hit[i] && !w[i].is_zero() {
                return Err(Error::Numerical("vector outside kernel lattice".into()));
            }
        }
        Ok(y)
    }
}

/// Quotient of the kernel lattice of `dn` (mod `m`) by the subgroup
/// generated by the columns of `rels` (plus `m * Z^cn` when `m > 0`).
/// Returns the nontrivial invariant factors and an integral representative
/// in cochain coordinates per factor.
fn lattice_quotient(
    dn: &[Vec<i64>],
    rels: &[Vec<i64>],
    m: u64,
) -> Result<(Vec<u64>, Vec<Vec<i64>>)> {
    let cn = if dn.is_empty() { 0 } else { dn[0].len() };
    if cn == 0 {
        return Ok((vec![], vec![]));
    }
    let lat = kernel_lattice(dn, m)?;
    let k = lat.basis[0].len();
    // relation columns in basis coordinates
    let mut rel_cols: Vec<Vec<BigInt>> = Vec::new();
    for r in rels {
        let x: Vec<BigInt> = r.iter().map(|&v| BigInt::from(v)).collect();
        rel_cols.push(lat.coordinates(&x)?);
    }
    if m > 0 {
        for i in 0..cn {
            let mut x = vec![BigInt::zero(); cn];
            x[i] = BigInt::from(m);
            rel_cols.push(lat.coordinates(&x)?);
        }
    }
    // R: k x (#rels)
    let ncols = rel_cols.len();
    let mut rmat = vec![vec![BigInt::zero(); ncols]; k];
    for (j, col) in rel_cols.iter().enumerate() {
        for i in 0..k {
            rmat[i][j] = col[i].clone();
        }
    }
    let s = smith(&rmat, true, false)?;
    let u_inv = s.u_inv.unwrap();
    let mut factors = Vec::new();
    let mut reps = Vec::new();
    for i in 0..k {
        let d = if i < s.diag.len() {
            s.diag[i].clone()
        } else {
            BigInt::zero()
        };
        if d.is_one() {
            continue;
        }
        let f = d.to_u64().ok_or_else(|| Error::Numerical("factor overflow".into()))?;
        // representative: basis * (column i of u_inv)
        let mut rep = vec![BigInt::zero(); cn];
        for r in 0..cn {
            for c in 0..k {
                if !lat.basis[r][c].is_zero() && !u_inv[c][i].is_zero() {
                    let t = &lat.basis[r][c] * &u_inv[c][i];
                    rep[r] += t;
                }
            }
        }
        let rep: Vec<i64> = rep
            .iter()
            .map(|x| {
                let mut v = x.clone();
                if m > 0 {
                    v = v.mod_floor(&BigInt::from(m));
                }
                v.to_i64().ok_or_else(|| Error::Numerical("representative overflow".into()))
            })
            .collect::<Result<_>>()?;
        factors.push(f);
        reps.push(rep);
    }
    Ok((factors, reps))
}

/// H^n(G; A) on the normalized bar complex, by integer Smith normal form.
/// Factors of the module are treated independently (diagonal actions only).
pub fn cohomology_group(
    group: &Arc<FiniteGroup>,
    module: &CoeffModule,
    n: usize,
    max_order: usize,
) -> Result<CohomologyGroup> {
    module.check_action(group)?;
    if n > 3 {
        return Err(Error::BoundExceeded("degree capped at 3".into()));
    }
    if group.order().pow(n as u32 + 1) > max_order.max(1).pow(4) {
        return Err(Error::BoundExceeded(format!(
            "bar complex too large for |G| = {}",
            group.order()
        )));
    }
    let mut factors = Vec::new();
    let mut representatives = Vec::new();
    for k in 0..module.rank() {
        let m = module.factors[k];
        let dn = bar_matrix(group, module, k, n);
        let rels: Vec<Vec<i64>> = if n == 0 {
            vec![]
        } else {
            let dprev = bar_matrix(group, module, k, n - 1);
            let cols = if dprev.is_empty() { 0 } else { dprev[0].len() };
            (0..cols)
                .map(|j| dprev.iter().map(|row| row[j]).collect())
                .collect()
        };
        let (fs, reps) = lattice_quotient(&dn, &rels, m)?;
        for (f, rep) in fs.into_iter().zip(reps) {
            let mut values = vec![vec![0i64; module.rank()]; rep.len()];
            for (i, &v) in rep.iter().enumerate() {
                values[i][k] = v;
            }
            let c = Cochain::new(group.clone(), module.clone(), n, values)?;
            if !is_cocycle(&c) {
                return Err(Error::NotCocycle(
                    "representative fails the cocycle identity".into(),
                ));
            }
            factors.push(f);
            representatives.push(c);
        }
    }
    Ok(CohomologyGroup {
        degree: n,
        factors,
        representatives,
    })
}

/// Decides whether `c1 - c2` is a coboundary; on success returns the
/// cobounding cochain of degree n-1.
pub fn is_cohomologous(c1: &Cochain, c2: &Cochain) -> Result<Option<Cochain>> {
    if c1.degree != c2.degree {
        return Err(Error::Cochain("degree mismatch".into()));
    }
    let diff = c1.sub(c2)?;
    let n = c1.degree;
    if n == 0 {
        return Ok(diff.is_zero().then(|| {
            Cochain::zero(c1.group.clone(), c1.module.clone(), 0)
        }));
    }
    let group = &c1.group;
    let module = &c1.module;
    let rank = module.rank();
    let prev_len = n_tuples(group.order(), n - 1);
    let mut witness_values = vec![vec![0i64; rank]; prev_len];
    for k in 0..rank {
        let m = module.factors[k];
        let d = bar_matrix(group, module, k, n - 1);
        let target: Vec<BigInt> = diff
            .values
            .iter()
            .map(|v| BigInt::from(v[k]))
            .collect();
        match solve_mod(&d, &target, m)? {
            Some(x) => {
                for (i, v) in x.iter().enumerate() {
                    witness_values[i][k] = v
                        .to_i64()
                        .ok_or_else(|| Error::Numerical("witness overflow".into()))?;
                }
            }
            None => return Ok(None),
        }
    }
    let b = Cochain::new(group.clone(), module.clone(), n - 1, witness_values)?;
    // verify: db = diff (mod the module)
    let db = coboundary(&b);
    if !db.sub(&diff)?.is_zero() {
        return Err(Error::Numerical("coboundary witness check failed".into()));
    }
    Ok(Some(b))
}

/// Solves `a x = r (mod m)` (m = 0: over Z) via Smith normal form.
fn solve_mod(a: &[Vec<i64>], r: &[BigInt], m: u64) -> Result<Option<Vec<BigInt>>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let s = smith(&int_mat(a), true, true)?;
    let u = s.u.unwrap();
    let v = s.v.unwrap();
    // ur = u * r
    let mut ur = vec![BigInt::zero(); rows];
    for i in 0..rows {
        for j in 0..rows {
            if !u[i][j].is_zero() && !r[j].is_zero() {
                let t = &u[i][j] * &r[j];
                ur[i] += t;
            }
        }
    }
    let mb = BigInt::from(m);
    let mut y = vec![BigInt::zero(); cols];
    for i in 0..rows.max(cols) {
        let di = if i < s.diag.len() {
            s.diag[i].clone()
        } else {
            BigInt::zero()
        };
        let ri = if i < rows { ur[i].clone() } else { BigInt::zero() };
        if i >= cols {
            // no unknown: need ri = 0 (mod m)
            let ok = if m == 0 {
                ri.is_zero()
            } else {
                ri.mod_floor(&mb).is_zero()
            };
            if !ok {
                return Ok(None);
            }
            continue;
        }
        if di.is_zero() {
            let ok = if m == 0 {
                ri.is_zero()
            } else {
                ri.mod_floor(&mb).is_zero()
            };
            if !ok {
                return Ok(None);
            }
            y[i] = BigInt::zero();
        } else if m == 0 {
            let (q, rem) = ri.div_rem(&di);
            if !rem.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else {
            // di * y = ri (mod m)
            let g = di.gcd(&mb);
            if !(&ri % &g).is_zero() {
                return Ok(None);
            }
            let m2 = &mb / &g;
            let d2 = (&di / &g).mod_floor(&m2);
            let r2 = (&ri / &g).mod_floor(&m2);
            if m2.is_one() {
                y[i] = BigInt::zero();
            } else {
                let inv = modinv_big(&d2, &m2)
                    .ok_or_else(|| Error::Numerical("modular inverse missing".into()))?;
                y[i] = (r2 * inv).mod_floor(&m2);
            }
        }
    }
    // x = v * y
    let mut x = vec![BigInt::zero(); cols];
    for i in 0..cols {
        for j in 0..cols {
            if !v[i][j].is_zero() && !y[j].is_zero() {
                let t = &v[i][j] * &y[j];
                x[i] += t;
            }
        }
    }
    if m > 0 {
        for xi in &mut x {
            *xi = xi.mod_floor(&mb);
        }
    }
    Ok(Some(x))
}

fn modinv_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Schur multiplier H^2(G; C^x) by two independent routes that must agree.
///
/// Route A: H^3(G; Z) = torsion of coker(d^2) on the integral normalized
/// bar complex. The cohomology of a finite group in positive degree is
/// killed by |G| (transfer), and C^3/ker d^3 is torsion-free, so the
/// torsion of the cokernel of d^2 inside C^3 is the whole of H^3; by the
/// long exact sequence of 0 -> Z -> Q -> Q/Z -> 0 and the vanishing of
/// rational cohomology, H^2(G; C^x) = H^2(G; Q/Z) = H^3(G; Z).
///
/// Route B: H^2(G; Z/N) with N = |G|, quotiented by the image of the
/// connecting map out of H^1(G; Q/Z) = Hom(G, Z/N) for the sequence
/// 0 -> Z/N -> Q/Z -> Q/Z -> 0 (multiplication by N); the connecting map
/// evaluates to (a_g + a_h - a_{gh}) / N mod N on a hom g -> a_g / N.
///
/// Representatives come from route B: Z/N-valued 2-cocycles, read as
/// exponents of N-th roots of unity.
pub fn schur_multiplier(group: &Arc<FiniteGroup>, max_order: usize) -> Result<CohomologyGroup> {
    if group.order() > max_order {
        return Err(Error::BoundExceeded(format!(
            "group order {} over bound {max_order}",
            group.order()
        )));
    }
    if group.order() == 1 {
        return Ok(CohomologyGroup {
            degree: 2,
            factors: vec![],
            representatives: vec![],
        });
    }
    let route_a = schur_route_a(group)?;
    let (route_b, reps) = schur_route_b(group)?;
    if route_a != route_b {
        return Err(Error::RouteDisagreement {
            route_a,
            route_b,
        });
    }
    Ok(CohomologyGroup {
        degree: 2,
        factors: route_b,
        representatives: reps,
    })
}

/// Torsion invariant factors of coker(d^2) over Z = H^3(G; Z).
fn schur_route_a(group: &Arc<FiniteGroup>) -> Result<Vec<u64>> {
    let module = CoeffModule::integers();
    let d2 = bar_matrix(group, &module, 0, 2);
    let fs = crate::snf::nontrivial_invariant_factors(&int_mat(&d2))?;
    fs.iter()
        .map(|f| {
            f.to_u64()
                .ok_or_else(|| Error::Numerical("invariant factor overflow".into()))
        })
        .collect()
}

/// H^2(G; Z/N) modulo the connecting image of Hom(G, Z/N).
fn schur_route_b(group: &Arc<FiniteGroup>) -> Result<(Vec<u64>, Vec<Cochain>)> {
    let nn = group.order() as u64;
    let module = CoeffModule::zn(nn);
    let d2 = bar_matrix(group, &module, 0, 2);
    let d1 = bar_matrix(group, &module, 0, 1);
    // columns of d1 are the coboundaries inside C^2
    let d1_cols = if d1.is_empty() { 0 } else { d1[0].len() };
    let mut rels: Vec<Vec<i64>> = (0..d1_cols)
        .map(|j| d1.iter().map(|row| row[j]).collect())
        .collect();
    // connecting-map images of each hom G -> Z/N
    let zn = FiniteGroup::builtin(&format!("Zn({})", nn))?;
    // exponent table for Z/N: index of generator^k -> k
    let mut expo = vec![usize::MAX; zn.order()];
    let gen = if zn.order() > 1 { 1 } else { 0 };
    let mut cur = zn.identity();
    for k in 0..zn.order() {
        expo[cur] = k;
        cur = zn.mul(gen, cur);
    }
    if expo.contains(&usize::MAX) {
        return Err(Error::Numerical("cyclic exponent table incomplete".into()));
    }
    let order = group.order();
    for hom in group.homs_to(&zn) {
        let mut col = Vec::with_capacity(n_tuples(order, 2));
        for_each_tuple(order, 2, |t| {
            let (g, h) = (t[0], t[1]);
            let (ag, ah, agh) = (
                expo[hom[g]] as i64,
                expo[hom[h]] as i64,
                expo[hom[group.mul(g, h)]] as i64,
            );
            let num = ag + ah - agh;
            debug_assert_eq!(num.rem_euclid(nn as i64), 0);
            col.push((num / nn as i64).rem_euclid(nn as i64));
        });
        rels.push(col);
    }
    let (factors, reps) = lattice_quotient(&d2, &rels, nn)?;
    let mut cochains = Vec::new();
    for rep in reps {
        let values = rep.iter().map(|&v| vec![v]).collect();
        let c = Cochain::new(group.clone(), module.clone(), 2, values)?;
        if !is_cocycle(&c) {
            return Err(Error::NotCocycle("route B representative".into()));
        }
        cochains.push(c);
    }
    Ok((factors, cochains))
}

/// Central extension of `base` by the finite abelian module `a` along a
/// normalized 2-cocycle: elements are pairs (a, g) with
/// (a, g)(b, h) = (a + b + kappa(g, h), gh).
pub struct Extension {
    pub group: Arc<FiniteGroup>,
    pub inclusion: GroupHom,
    pub projection: GroupHom,
    pub coeff_group: Arc<FiniteGroup>,
}

fn abelian_group_from_factors(factors: &[u64]) -> Result<Arc<FiniteGroup>> {
    for &f in factors {
        if f == 0 {
            return Err(Error::CoeffModule("extension coefficients must be finite".into()));
        }
    }
    let size: u64 = factors.iter().product();
    let size = size as usize;
    let decode = |mut i: usize| -> Vec<usize> {
        let mut out = vec![0; factors.len()];
        for k in (0..factors.len()).rev() {
            out[k] = i % factors[k] as usize;
            i /= factors[k] as usize;
        }
        out
    };
    let encode = |v: &[usize]| -> usize {
        v.iter()
            .zip(factors)
            .fold(0, |acc, (&x, &f)| acc * f as usize + x)
    };
    let mut table = vec![vec![0usize; size]; size];
    for i in 0..size {
        for j in 0..size {
            let (a, b) = (decode(i), decode(j));
            let sum: Vec<usize> = a
                .iter()
                .zip(&b)
                .zip(factors)
                .map(|((&x, &y), &f)| (x + y) % f as usize)
                .collect();
            table[i][j] = encode(&sum);
        }
    }
    FiniteGroup::from_table(table)
}

pub fn extension_from_cocycle(
    base: &Arc<FiniteGroup>,
    module: &CoeffModule,
    kappa: &Cochain,
) -> Result<Extension> {
    if kappa.degree != 2 || kappa.module.factors != module.factors {
        return Err(Error::Cochain("extension cocycle must be a 2-cochain over the module".into()));
    }
    if module.action.is_some() {
        return Err(Error::CoeffModule("central extensions need a trivial action".into()));
    }
    if !is_cocycle(kappa) {
        return Err(Error::NotCocycle("extension class".into()));
    }
    let a_grp = abelian_group_from_factors(&module.factors)?;
    let asize = a_grp.order();
    let bsize = base.order();
    let factors = &module.factors;
    let decode = |mut i: usize| -> Vec<usize> {
        let mut out = vec![0; factors.len()];
        for k in (0..factors.len()).rev() {
            out[k] = i % factors[k] as usize;
            i /= factors[k] as usize;
        }
        out
    };
    let encode = |v: &[i64]| -> usize {
        v.iter()
            .zip(factors)
            .fold(0, |acc, (&x, &f)| acc * f as usize + x.rem_euclid(f as i64) as usize)
    };
    let size = asize * bsize;
    let mut table = vec![vec![0usize; size]; size];
    for i in 0..size {
        let (ai, gi) = (i / bsize, i % bsize);
        let av = decode(ai);
        for j in 0..size {
            let (aj, gj) = (j / bsize, j % bsize);
            let bv = decode(aj);
            let kv = kappa.value(&[gi, gj]);
            let sum: Vec<i64> = av
                .iter()
                .zip(&bv)
                .zip(&kv)
                .map(|((&x, &y), &z)| x as i64 + y as i64 + z)
                .collect();
            table[i][j] = encode(&sum) * bsize + base.mul(gi, gj);
        }
    }
    let ext = FiniteGroup::from_table(table)?;
    let inclusion = GroupHom::new(
        a_grp.clone(),
        ext.clone(),
        (0..asize).map(|a| a * bsize).collect(),
    )?;
    let projection = GroupHom::new(
        ext.clone(),
        base.clone(),
        (0..size).map(|i| i % bsize).collect(),
    )?;
    Ok(Extension {
        group: ext,
        inclusion,
        projection,
        coeff_group: a_grp,
    })
}

/// Cohomologous cocycles give isomorphic extensions; the isomorphism is the
/// change-of-section (a, g) -> (a + b(g), g) built from the cobounding
/// 1-cochain.
pub fn extension_isomorphism_from_cobounding(
    base: &Arc<FiniteGroup>,
    module: &CoeffModule,
    kappa1: &Cochain,
    kappa2: &Cochain,
) -> Result<GroupHom> {
    let b = is_cohomologous(kappa2, kappa1)?
        .ok_or_else(|| Error::Cochain("cocycles are not cohomologous".into()))?;
    let e1 = extension_from_cocycle(base, module, kappa1)?;
    let e2 = extension_from_cocycle(base, module, kappa2)?;
    let bsize = base.order();
    let factors = &module.factors;
    let decode = |mut i: usize| -> Vec<i64> {
        let mut out = vec![0i64; factors.len()];
        for k in (0..factors.len()).rev() {
            out[k] = (i % factors[k] as usize) as i64;
            i /= factors[k] as usize;
        }
        out
    };
    let encode = |v: &[i64]| -> usize {
        v.iter()
            .zip(factors)
            .fold(0, |acc, (&x, &f)| acc * f as usize + x.rem_euclid(f as i64) as usize)
    };
    // kappa2 - kappa1 = db with (db)(g,h) = b(g) + b(h) - b(gh)
    let map: Vec<usize> = (0..e1.group.order())
        .map(|i| {
            let (ai, g) = (i / bsize, i % bsize);
            let av = decode(ai);
            let bg = b.value(&[g]);
            let img: Vec<i64> = av.iter().zip(&bg).map(|(&x, &y)| x + y).collect();
            encode(&img) * bsize + g
        })
        .collect();
    GroupHom::new(e1.group.clone(), e2.group.clone(), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::snf::rank_mod_p;

    fn zn(n: usize) -> Arc<FiniteGroup> {
        FiniteGroup::builtin(&format!("Zn({n})")).unwrap()
    }

    #[test]
    fn coboundary_of_zero_degree_trivial_action() {
        let g = zn(4);
        let mut c = Cochain::zero(g, CoeffModule::zn(6), 0);
        c.values[0] = vec![5];
        let d = coboundary(&c);
        assert!(d.is_zero());
    }

    #[test]
    fn d_squared_zero_on_pseudorandom_cochains() {
        let g = FiniteGroup::builtin("Sym(3)").unwrap();
        let module = CoeffModule::zn(6);
        let mut seed = 12345u64;
        for _ in 0..5 {
            let mut c = Cochain::zero(g.clone(), module.clone(), 1);
            for v in &mut c.values {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                v[0] = (seed >> 33) as i64 % 6;
            }
            assert!(coboundary(&coboundary(&c)).is_zero());
        }
    }

    #[test]
    fn z2_sign_cocycle() {
        // 2-cochain on Z/2 with value 1 at (x, x): a cocycle, nontrivial
        let g = zn(2);
        let module = CoeffModule::zn(2);
        let c = Cochain::new(g.clone(), module.clone(), 2, vec![vec![1]]).unwrap();
        assert!(is_cocycle(&c));
        let zero = Cochain::zero(g, module, 2);
        assert!(is_cohomologous(&c, &zero).unwrap().is_none());
    }

    #[test]
    fn h1_with_qz_torsion_is_abelianization() {
        // H^1(Z/4; Z/4) = Hom(Z/4, Z/4) = Z/4
        let g = zn(4);
        let h = cohomology_group(&g, &CoeffModule::zn(4), 1, 100).unwrap();
        assert_eq!(h.factors, vec![4]);
    }

    #[test]
    fn h2_z2_with_z2_coefficients() {
        let g = zn(2);
        let h = cohomology_group(&g, &CoeffModule::zn(2), 2, 100).unwrap();
        assert_eq!(h.factors, vec![2]);
        assert!(is_cocycle(&h.representatives[0]));
    }

    #[test]
    fn integral_cohomology_of_cyclic_groups() {
        // standard values: H^1(Z/n; Z) = 0, H^2(Z/n; Z) = Z/n,
        // H^3(Z/n; Z) = 0
        for n in [2usize, 3, 4] {
            let g = zn(n);
            let zc = CoeffModule::integers();
            let h1 = cohomology_group(&g, &zc, 1, 100).unwrap();
            assert!(h1.factors.is_empty(), "H^1(Z/{n}; Z) = 0");
            let h2 = cohomology_group(&g, &zc, 2, 100).unwrap();
            assert_eq!(h2.factors, vec![n as u64], "H^2(Z/{n}; Z) = Z/{n}");
            let h3 = cohomology_group(&g, &zc, 3, 100).unwrap();
            assert!(h3.factors.is_empty(), "H^3(Z/{n}; Z) = 0");
        }
    }

    #[test]
    fn h0_of_integers_is_z() {
        let g = zn(3);
        let h = cohomology_group(&g, &CoeffModule::integers(), 0, 100).unwrap();
        assert_eq!(h.factors, vec![0]);
    }

    #[test]
    fn h3_exactness_certificate_small_groups() {
        // free rank of H^3(G; Z) is 0; certify im d^2 = ker d^3 over Q by a
        // mod-p rank squeeze on every group of order <= 6
        for name in ["Zn(2)", "Zn(3)", "Zn(4)", "Z2xZ2", "Zn(5)", "Sym(3)", "Zn(6)"] {
            let g = FiniteGroup::builtin(name).unwrap();
            let module = CoeffModule::integers();
            let d2 = bar_matrix(&g, &module, 0, 2);
            let d3 = bar_matrix(&g, &module, 0, 3);
            let rank_d2 = smith(&int_mat(&d2), false, false).unwrap().rank;
            let c3 = d2.len();
            let certified = [2u64, 3, 5, 7, 11, 13]
                .iter()
                .any(|&p| rank_mod_p(&d3, p) == c3 - rank_d2);
            assert!(certified, "exactness certificate for {name}");
        }
    }

    #[test]
    fn schur_multipliers_of_corpus() {
        for (name, expect) in [
            ("Zn(2)", vec![]),
            ("Zn(3)", vec![]),
            ("Zn(6)", vec![]),
            ("Z2xZ2", vec![2u64]),
            ("Sym(3)", vec![]),
            ("Q8", vec![]),
            ("Dih(4)", vec![2]),
        ] {
            let g = FiniteGroup::builtin(name).unwrap();
            let h = schur_multiplier(&g, 16).unwrap();
            assert_eq!(h.factors, expect, "Schur multiplier of {name}");
            for r in &h.representatives {
                assert!(is_cocycle(r));
            }
        }
    }

    #[test]
    fn schur_multiplier_a4() {
        let g = FiniteGroup::builtin("A4").unwrap();
        let h = schur_multiplier(&g, 16).unwrap();
        assert_eq!(h.factors, vec![2]);
    }

    #[test]
    fn extension_trivial_cocycle_is_product() {
        let g = zn(2);
        let module = CoeffModule::zn(2);
        let kappa = Cochain::zero(g.clone(), module.clone(), 2);
        let e = extension_from_cocycle(&g, &module, &kappa).unwrap();
        assert_eq!(e.group.order(), 4);
        let z2xz2 = FiniteGroup::builtin("Z2xZ2").unwrap();
        assert!(e.group.isomorphism_to(&z2xz2).is_some());
    }

    #[test]
    fn extension_nontrivial_cocycle_is_z4() {
        let g = zn(2);
        let module = CoeffModule::zn(2);
        let kappa = Cochain::new(g.clone(), module.clone(), 2, vec![vec![1]]).unwrap();
        let e = extension_from_cocycle(&g, &module, &kappa).unwrap();
        assert_eq!(e.group.order(), 4);
        let z4 = zn(4);
        assert!(e.group.isomorphism_to(&z4).is_some());
        // an element of order 4 exists
        assert!((0..4).any(|x| e.group.element_order(x) == 4));
    }

    #[test]
    fn cohomologous_cocycles_give_isomorphic_extensions() {
        // on Z/2 x Z/2 with Z/2 coefficients, shift a representative by a
        // coboundary and rebuild
        let g = FiniteGroup::builtin("Z2xZ2").unwrap();
        let module = CoeffModule::zn(2);
        let h = cohomology_group(&g, &module, 2, 100).unwrap();
        let kappa = h.representatives[0].clone();
        let mut one = Cochain::zero(g.clone(), module.clone(), 1);
        one.values[0] = vec![1];
        let shifted = Cochain::new(
            g.clone(),
            module.clone(),
            2,
            kappa
                .values
                .iter()
                .zip(coboundary(&one).values.iter())
                .map(|(a, b)| vec![a[0] + b[0]])
                .collect(),
        )
        .unwrap();
        assert!(is_cocycle(&shifted));
        let iso = extension_isomorphism_from_cobounding(&g, &module, &kappa, &shifted).unwrap();
        assert!(iso.is_injective());
    }

    #[test]
    fn is_cohomologous_reflexive_with_zero_witness() {
        let g = zn(2);
        let module = CoeffModule::zn(2);
        let c = Cochain::new(g, module, 2, vec![vec![1]]).unwrap();
        let b = is_cohomologous(&c, &c).unwrap().unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn degree_bound_enforced() {
        let g = zn(2);
        assert!(matches!(
            cohomology_group(&g, &CoeffModule::integers(), 4, 100),
            Err(Error::BoundExceeded(_))
        ));
    }
}

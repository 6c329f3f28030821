//! Cohomological anomaly classes of a finite groupoid, projective
//! representations realized by splitting the twisted regular
//! representation, and twisted groupoid algebras with their block
//! structure. Cocycle values are exact exponents modulo the group order;
//! only the matrix layer is floating point.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{is_cocycle, is_cohomologous, schur_multiplier, Cochain};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::groupoid::FiniteGroupoid;
use crate::linalg::{czeros, dagger, hermitian_eigen, rank_with_tol, CMat};
use crate::rep::{irreducible_degrees, partition_by, MATRIX_TOL, ROUNDING_TOL};

/// Nondegeneracy tolerance for the regular trace form.
pub const TRACE_FORM_TOL: f64 = 1e-8;

/// One connected component of a symmetry groupoid with a chosen anomaly
/// cocycle on its vertex group.
#[derive(Clone)]
pub struct ComponentAnomaly {
    pub objects: Vec<usize>,
    pub base: usize,
    /// For each object of the ambient groupoid, a morphism base -> x
    /// (usize::MAX off-component).
    pub tree: Vec<usize>,
    pub group: Arc<FiniteGroup>,
    /// aut_morphisms[i] = morphism id realizing group element i.
    pub aut_morphisms: Vec<usize>,
    /// Normalized 2-cocycle on the vertex group, exponents mod |group|.
    pub cocycle: Cochain,
}

/// An anomaly for a finite groupoid symmetry: one vertex-group cohomology
/// class per connected component, with chosen representative cocycles.
#[derive(Clone)]
pub struct Anomaly {
    pub symmetry: Arc<FiniteGroupoid>,
    pub components: Vec<ComponentAnomaly>,
}

fn component_skeleton_data(
    y: &Arc<FiniteGroupoid>,
    comp: &[usize],
) -> Result<(usize, Vec<usize>, Arc<FiniteGroup>, Vec<usize>)> {
    let base = comp[0];
    let mut tree = vec![usize::MAX; y.n_objects()];
    for &x in comp {
        tree[x] = y.hom(base, x)[0];
    }
    let (group, aut_morphisms) = y.automorphism_group(base)?;
    Ok((base, tree, group, aut_morphisms))
}

impl Anomaly {
    /// The trivial anomaly (zero cocycle on every component).
    pub fn trivial(y: &Arc<FiniteGroupoid>) -> Result<Anomaly> {
        let mut components = Vec::new();
        for comp in y.connected_components() {
            let (base, tree, group, aut_morphisms) = component_skeleton_data(y, &comp)?;
            let n = group.order() as u64;
            let cocycle = Cochain::zero(group.clone(), crate::cohomology::CoeffModule::zn(n), 2);
            components.push(ComponentAnomaly {
                objects: comp,
                base,
                tree,
                group,
                aut_morphisms,
                cocycle,
            });
        }
        Ok(Anomaly {
            symmetry: y.clone(),
            components,
        })
    }

    /// Builds an anomaly from one explicit vertex-group cocycle per
    /// component (in component order).
    pub fn from_cocycles(y: &Arc<FiniteGroupoid>, cocycles: Vec<Cochain>) -> Result<Anomaly> {
        let comps = y.connected_components();
        if comps.len() != cocycles.len() {
            return Err(Error::Invalid(format!(
                "{} cocycles for {} components",
                cocycles.len(),
                comps.len()
            )));
        }
        let mut components = Vec::new();
        for (comp, cocycle) in comps.into_iter().zip(cocycles) {
            let (base, tree, group, aut_morphisms) = component_skeleton_data(y, &comp)?;
            check_group_cocycle(&group, &cocycle)?;
            components.push(ComponentAnomaly {
                objects: comp,
                base,
                tree,
                group,
                aut_morphisms,
                cocycle,
            });
        }
        Ok(Anomaly {
            symmetry: y.clone(),
            components,
        })
    }

    pub fn is_trivial_cocycle(&self) -> bool {
        self.components.iter().all(|c| c.cocycle.is_zero())
    }
}

fn check_group_cocycle(group: &Arc<FiniteGroup>, alpha: &Cochain) -> Result<()> {
    if alpha.degree != 2
        || alpha.group.order() != group.order()
        || alpha.module.factors != vec![group.order() as u64]
        || alpha.module.action.is_some()
    {
        return Err(Error::Cochain(
            "anomaly cocycle must be a degree-2 cochain mod the group order".into(),
        ));
    }
    let n = group.order();
    for a in 0..n {
        for b in 0..n {
            if alpha.group.mul(a, b) != group.mul(a, b) {
                return Err(Error::Cochain("cocycle group mismatch".into()));
            }
        }
    }
    if !is_cocycle(alpha) {
        return Err(Error::NotCocycle("cocycle identity fails".into()));
    }
    Ok(())
}

/// All anomaly classes of a finite groupoid: the product over components
/// of the vertex-group Schur multipliers, each class with a representative
/// cocycle.
pub fn classify_anomalies(y: &Arc<FiniteGroupoid>, max_order: usize) -> Result<Vec<Anomaly>> {
    let mut per_component: Vec<Vec<Cochain>> = Vec::new();
    for comp in y.connected_components() {
        let (_, _, group, _) = component_skeleton_data(y, &comp)?;
        let schur = schur_multiplier(&group, max_order)?;
        let n = group.order() as u64;
        let mut classes = Vec::new();
        let mut coeffs = vec![0u64; schur.factors.len()];
        loop {
            // representatives are already Z/n-valued exponents; take the
            // coefficient combination
            let order = group.order();
            let mut values = vec![vec![0i64]; (order - 1) * (order - 1)];
            for (&k, rep) in coeffs.iter().zip(&schur.representatives) {
                for (v, rv) in values.iter_mut().zip(&rep.values) {
                    v[0] += rv[0] * k as i64;
                }
            }
            let class = Cochain::new(
                group.clone(),
                crate::cohomology::CoeffModule::zn(n),
                2,
                values,
            )?;
            if !is_cocycle(&class) {
                return Err(Error::NotCocycle("cocycle identity fails".into()));
            }
            classes.push(class);
            let mut i = 0;
            loop {
                if i == coeffs.len() {
                    break;
                }
                coeffs[i] += 1;
                if coeffs[i] < schur.factors[i] {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if coeffs.iter().all(|&x| x == 0) {
                break;
            }
        }
        per_component.push(classes);
    }
    // product over components
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_component.len()];
    loop {
        let picks: Vec<Cochain> = idx
            .iter()
            .zip(&per_component)
            .map(|(&i, cs)| cs[i].clone())
            .collect();
        out.push(Anomaly::from_cocycles(y, picks)?);
        let mut i = 0;
        loop {
            if i == idx.len() {
                return Ok(out);
            }
            idx[i] += 1;
            if idx[i] < per_component[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Conjugacy classes of g with alpha(g, h) = alpha(h, g) for every h in
/// the centralizer of g; well-definedness on classes is asserted.
pub fn alpha_regular_classes(
    group: &Arc<FiniteGroup>,
    alpha: &Cochain,
) -> Result<Vec<Vec<usize>>> {
    check_group_cocycle(group, alpha)?;
    let n = group.order();
    let m = n as i64;
    let regular = |g: usize| -> bool {
        (0..n)
            .filter(|&h| group.mul(g, h) == group.mul(h, g))
            .all(|h| {
                (alpha.value(&[g, h])[0] - alpha.value(&[h, g])[0]).rem_euclid(m) == 0
            })
    };
    let mut out = Vec::new();
    for class in group.conjugacy_classes() {
        let verdicts: Vec<bool> = class.iter().map(|&g| regular(g)).collect();
        if verdicts.iter().any(|&v| v != verdicts[0]) {
            return Err(Error::Invalid(
                "alpha-regularity not constant on a conjugacy class".into(),
            ));
        }
        if verdicts[0] {
            out.push(class);
        }
    }
    Ok(out)
}

/// A projective representation: rho(g) rho(h) = omega(g, h) rho(gh) with
/// omega(g, h) = exp(2 pi i alpha(g, h) / |G|).
pub struct ProjectiveRep {
    pub group: Arc<FiniteGroup>,
    pub cocycle: Cochain,
    pub matrices: Vec<CMat>,
}

fn root_of_unity(exponent: i64, modulus: u64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * exponent.rem_euclid(modulus as i64) as f64 / modulus as f64)
}

impl ProjectiveRep {
    pub fn degree(&self) -> usize {
        self.matrices[0].len()
    }

    /// Defining relation on all pairs within 1e-9, and rho(e) = identity.
    pub fn check(&self) -> Result<()> {
        let g = &self.group;
        let n = g.order();
        let m = n as u64;
        let d = self.degree();
        let id = crate::linalg::cidentity(d);
        if crate::linalg::max_abs_diff(&self.matrices[g.identity()], &id) > MATRIX_TOL {
            return Err(Error::Numerical("rho(e) is not the identity".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let lhs = crate::linalg::cmul(&self.matrices[a], &self.matrices[b]);
                let w = root_of_unity(self.cocycle.value(&[a, b])[0], m);
                let rhs = crate::linalg::cscale(&self.matrices[g.mul(a, b)], w);
                if crate::linalg::max_abs_diff(&lhs, &rhs) > MATRIX_TOL {
                    return Err(Error::Numerical(format!(
                        "twisted relation fails at pair ({a}, {b})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The twisted left regular representation L_g[gh, h] = omega(g, h).
fn twisted_regular(group: &Arc<FiniteGroup>, alpha: &Cochain) -> Vec<CMat> {
    let n = group.order();
    let m = n as u64;
    (0..n)
        .map(|g| {
            let mut l = czeros(n, n);
            for h in 0..n {
                l[group.mul(g, h)][h] = root_of_unity(alpha.value(&[g, h])[0], m);
            }
            l
        })
        .collect()
}

/// Irreducible alpha-projective representations, obtained by splitting the
/// twisted regular representation along the spectrum of a random Hermitian
/// element of its commutant. Returns (degree, representation) pairs with
/// degrees ascending; the count equals the number of alpha-regular classes
/// and the degree squares sum to |G|.
pub fn projective_irreps(
    group: &Arc<FiniteGroup>,
    alpha: &Cochain,
    seed: u64,
) -> Result<Vec<(usize, ProjectiveRep)>> {
    check_group_cocycle(group, alpha)?;
    let n = group.order();
    let m = n as u64;
    let left = twisted_regular(group, alpha);
    // commutant basis: twisted right translations R_k[yk, y] = omega(y, k);
    // these commute with every L_g by the cocycle identity
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = czeros(n, n);
    for k in 0..n {
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        for y in 0..n {
            a[group.mul(y, k)][y] += c * root_of_unity(alpha.value(&[y, k])[0], m);
        }
    }
    let h = crate::linalg::cadd(&a, &dagger(&a));
    for l in &left {
        let lhs = crate::linalg::cmul(&h, l);
        let rhs = crate::linalg::cmul(l, &h);
        if crate::linalg::max_abs_diff(&lhs, &rhs) > MATRIX_TOL {
            return Err(Error::Numerical("commutant element fails to commute".into()));
        }
    }
    let (eigs, v) = hermitian_eigen(&h)?;
    let scale = eigs.iter().fold(1.0f64, |acc, e| acc.max(e.abs()));
    let clusters = cluster_sorted(&eigs, ROUNDING_TOL * scale);
    // per cluster: twisted character vector chi(g) = tr(V^dagger L_g V)
    let chars: Vec<Vec<Complex64>> = clusters
        .iter()
        .map(|members| {
            (0..n)
                .map(|g| {
                    let mut tr = Complex64::new(0.0, 0.0);
                    for &col in members {
                        for r in 0..n {
                            let mut lv = Complex64::new(0.0, 0.0);
                            for c in 0..n {
                                lv += left[g][r][c] * v[c][col];
                            }
                            tr += v[r][col].conj() * lv;
                        }
                    }
                    tr
                })
                .collect()
        })
        .collect();
    let distinct = partition_by(&chars, |x, y| {
        x.iter().zip(y).all(|(p, q)| (p - q).norm() < 1e-6)
    });
    let regular = alpha_regular_classes(group, alpha)?;
    if distinct.len() != regular.len() {
        return Err(Error::Numerical(format!(
            "{} distinct twisted characters for {} alpha-regular classes",
            distinct.len(),
            regular.len()
        )));
    }
    let mut out = Vec::new();
    for char_class in &distinct {
        let d = clusters[char_class[0]].len();
        // the regular module contains each irreducible d times, one copy
        // per eigenvalue cluster of the generic commutant element
        if char_class.iter().any(|&c| clusters[c].len() != d) || char_class.len() != d {
            return Err(Error::Numerical(
                "eigenvalue clusters inconsistent with isotypic multiplicity".into(),
            ));
        }
        let members = &clusters[char_class[0]];
        let matrices: Vec<CMat> = (0..n)
            .map(|g| {
                let mut rho = czeros(d, d);
                for (i, &ci) in members.iter().enumerate() {
                    for (j, &cj) in members.iter().enumerate() {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for r in 0..n {
                            let mut lv = Complex64::new(0.0, 0.0);
                            for c in 0..n {
                                lv += left[g][r][c] * v[c][cj];
                            }
                            acc += v[r][ci].conj() * lv;
                        }
                        rho[i][j] = acc;
                    }
                }
                rho
            })
            .collect();
        let rep = ProjectiveRep {
            group: group.clone(),
            cocycle: alpha.clone(),
            matrices,
        };
        rep.check()?;
        out.push((d, rep));
    }
    out.sort_by_key(|(d, _)| *d);
    if out.iter().map(|(d, _)| d * d).sum::<usize>() != n {
        return Err(Error::Numerical(
            "projective degree squares do not sum to |G|".into(),
        ));
    }
    Ok(out)
}

/// Splits sorted values into clusters at gaps larger than tol.
fn cluster_sorted(values: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for i in 0..values.len() {
        match clusters.last_mut() {
            Some(last) if values[i] - values[*last.last().unwrap()] < tol => last.push(i),
            _ => clusters.push(vec![i]),
        }
    }
    clusters
}

/// Rescales a projective representation to one whose cocycle is the given
/// cohomologous target, using the cobounding 1-cochain as phases:
/// rho'(g) = exp(-2 pi i b(g) / |G|) rho(g).
pub fn rescale_to_cocycle(rep: &ProjectiveRep, target: &Cochain) -> Result<ProjectiveRep> {
    let witness = is_cohomologous(&rep.cocycle, target)?
        .ok_or_else(|| Error::Invalid("cocycles are not cohomologous".into()))?;
    let m = rep.group.order() as u64;
    let matrices: Vec<CMat> = (0..rep.group.order())
        .map(|g| {
            let phase = root_of_unity(-witness.value(&[g])[0], m);
            crate::linalg::cscale(&rep.matrices[g], phase)
        })
        .collect();
    let out = ProjectiveRep {
        group: rep.group.clone(),
        cocycle: target.clone(),
        matrices,
    };
    out.check()?;
    Ok(out)
}

/// The alpha-twisted groupoid algebra: basis e_f for morphisms f, with
/// e_f e_g = omega(f, g) e_{fg} on composable pairs and 0 otherwise.
/// omega is stored exactly as an exponent modulo `modulus`.
pub struct TwistedAlgebra {
    pub groupoid: Arc<FiniteGroupoid>,
    pub dim: usize,
    /// Common exponent modulus (lcm of the component vertex-group orders).
    pub modulus: u64,
    /// exponents[f][g] = Some(exponent of omega(f, g)) iff f, g composable.
    pub exponents: Vec<Vec<Option<u64>>>,
    pub trace_form_nondegenerate: bool,
    /// Dimension of the center (number of simple blocks).
    pub blocks: usize,
    /// Sizes of the simple matrix blocks, ascending.
    pub block_sizes: Vec<usize>,
}

/// Builds the twisted algebra of the anomaly's symmetry groupoid; the
/// cocycle is pulled back from the vertex groups along spanning trees.
/// Associativity is checked exhaustively on exponents; semisimplicity via
/// the regular trace form; the block structure from a seeded random
/// Hermitian split, cross-checked against the center dimension.
pub fn twisted_algebra(anomaly: &Anomaly, seed: u64) -> Result<TwistedAlgebra> {
    let y = &anomaly.symmetry;
    let nm = y.n_morphisms();
    let modulus: u64 = anomaly
        .components
        .iter()
        .map(|c| c.group.order() as u64)
        .fold(1u64, |acc, n| acc.lcm(&n));
    // per-morphism component index and vertex-group element a(f)
    let mut comp_of = vec![usize::MAX; y.n_objects()];
    for (ci, c) in anomaly.components.iter().enumerate() {
        for &x in &c.objects {
            comp_of[x] = ci;
        }
    }
    let mut elt_of: Vec<(usize, usize)> = Vec::with_capacity(nm); // (component, element)
    for f in 0..nm {
        let (x, yv) = (y.source(f), y.target(f));
        let ci = comp_of[x];
        let c = &anomaly.components[ci];
        let a = y
            .compose(y.inverse(c.tree[yv]), y.compose(f, c.tree[x]).unwrap())
            .unwrap();
        let idx = c
            .aut_morphisms
            .iter()
            .position(|&mid| mid == a)
            .ok_or_else(|| Error::Invalid("tree transport left the vertex group".into()))?;
        elt_of.push((ci, idx));
    }
    let mut exponents = vec![vec![None; nm]; nm];
    for f in 0..nm {
        for g in 0..nm {
            if y.compose(f, g).is_some() {
                let (ci, af) = elt_of[f];
                let (_, ag) = elt_of[g];
                let c = &anomaly.components[ci];
                let n = c.group.order() as u64;
                let e = c.cocycle.value(&[af, ag])[0].rem_euclid(n as i64) as u64;
                exponents[f][g] = Some(e * (modulus / n) % modulus);
            }
        }
    }
    // exhaustive associativity on exponents: for composable h, g, f
    // (reading right to left), omega(f, g) + omega(fg, h) = omega(g, h) + omega(f, gh)
    for f in 0..nm {
        for g in 0..nm {
            let Some(fg) = y.compose(f, g) else { continue };
            for h in 0..nm {
                let Some(gh) = y.compose(g, h) else { continue };
                let lhs = exponents[f][g].unwrap() + exponents[fg][h].unwrap();
                let rhs = exponents[g][h].unwrap() + exponents[f][gh].unwrap();
                if lhs % modulus != rhs % modulus {
                    return Err(Error::NotCocycle("cocycle identity fails".into()));
                }
            }
        }
    }
    if nm == 0 {
        return Ok(TwistedAlgebra {
            groupoid: y.clone(),
            dim: 0,
            modulus,
            exponents,
            trace_form_nondegenerate: true,
            blocks: 0,
            block_sizes: vec![],
        });
    }
    let omega = |f: usize, g: usize| -> Complex64 {
        root_of_unity(exponents[f][g].unwrap() as i64, modulus)
    };
    // regular trace form: B[f][g] = tr(left multiplication by e_f e_g);
    // nonzero only when fg is an identity, where the trace counts the
    // morphisms into that object
    let mut indeg = vec![0usize; y.n_objects()];
    for f in 0..nm {
        indeg[y.target(f)] += 1;
    }
    let mut form = czeros(nm, nm);
    for f in 0..nm {
        for g in 0..nm {
            if let Some(fg) = y.compose(f, g) {
                if fg == y.identity_of(y.source(fg)) {
                    form[f][g] = omega(f, g) * indeg[y.source(fg)] as f64;
                }
            }
        }
    }
    let trace_form_nondegenerate = rank_with_tol(&form, TRACE_FORM_TOL) == nm;
    // center dimension: solutions z of e_g z = z e_g for all basis g
    let mut constraints: CMat = Vec::new();
    for g in 0..nm {
        // row block: (left mult by e_g - right mult by e_g) acting on
        // coefficient vectors
        let mut block = czeros(nm, nm);
        for f in 0..nm {
            if let Some(gf) = y.compose(g, f) {
                block[gf][f] += omega(g, f);
            }
            if let Some(fg) = y.compose(f, g) {
                block[fg][f] -= omega(f, g);
            }
        }
        constraints.extend(block);
    }
    let blocks = nm - rank_with_tol(&constraints, TRACE_FORM_TOL);
    // block sizes: eigenvalue clusters of a random Hermitian algebra
    // element in the left regular representation have size n_i, with n_i
    // clusters per block of size n_i
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = czeros(nm, nm);
    for f in 0..nm {
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        for g in 0..nm {
            if let Some(fg) = y.compose(f, g) {
                a[fg][g] += c * omega(f, g);
            }
        }
    }
    let h = crate::linalg::cadd(&a, &dagger(&a));
    let (eigs, _) = hermitian_eigen(&h)?;
    let scale = eigs.iter().fold(1.0f64, |acc, e| acc.max(e.abs()));
    let clusters = cluster_sorted(&eigs, ROUNDING_TOL * scale.max(1.0));
    let mut size_counts: HashMap<usize, usize> = HashMap::new();
    for cl in &clusters {
        *size_counts.entry(cl.len()).or_insert(0) += 1;
    }
    let mut block_sizes = Vec::new();
    for (&s, &count) in &size_counts {
        if count % s != 0 {
            return Err(Error::Numerical(format!(
                "{count} eigenvalue clusters of size {s} cannot split into blocks"
            )));
        }
        for _ in 0..count / s {
            block_sizes.push(s);
        }
    }
    block_sizes.sort_unstable();
    if block_sizes.iter().map(|s| s * s).sum::<usize>() != nm || block_sizes.len() != blocks {
        return Err(Error::Numerical(format!(
            "block sizes {block_sizes:?} inconsistent with dimension {nm} and center dimension {blocks}"
        )));
    }
    Ok(TwistedAlgebra {
        groupoid: y.clone(),
        dim: nm,
        modulus,
        exponents,
        trace_form_nondegenerate,
        blocks,
        block_sizes,
    })
}

/// Per-component comparison of anomalous theories counted two ways.
pub struct ComponentCorrespondence {
    /// Requested per-object dimension on this component.
    pub dim: usize,
    /// Degrees of the irreducible projective representations of the vertex
    /// group (ascending).
    pub rep_degrees: Vec<usize>,
    /// Per-object degrees read off the simple blocks of the component's
    /// twisted groupoid algebra (ascending).
    pub section_degrees: Vec<usize>,
    /// Multisets of irreducibles with total degree = dim, counted on the
    /// representation side.
    pub rep_classes: usize,
    /// The same count on the algebra-block side.
    pub section_classes: usize,
}

/// Report of the correspondence between anomalous theories of a given
/// dimension and projective-representation data.
pub struct SectionsVsProjReps {
    pub components: Vec<ComponentCorrespondence>,
    pub total_rep_classes: usize,
    pub total_section_classes: usize,
    pub verdict: bool,
}

/// Number of multisets of parts (with the given part sizes, each usable
/// any number of times, distinct parts of equal size counted separately)
/// summing exactly to total.
fn multiset_count(parts: &[usize], total: usize) -> usize {
    let mut ways = vec![0usize; total + 1];
    ways[0] = 1;
    for &p in parts {
        for t in p..=total {
            ways[t] += ways[t - p];
        }
    }
    ways[total]
}

/// Counts anomalous theories with the requested per-object dimensions in
/// two independent ways: as multisets of irreducible projective
/// representations of the vertex groups, and as multisets of simple
/// modules of the per-component twisted groupoid algebras. The dimension
/// must be constant on each component. For a trivial cocycle the
/// representation side is additionally checked against ordinary character
/// theory.
pub fn anomalous_theories_as_sections(
    anomaly: &Anomaly,
    dims: &[usize],
    seed: u64,
) -> Result<SectionsVsProjReps> {
    let y = &anomaly.symmetry;
    if dims.len() != y.n_objects() {
        return Err(Error::Invalid("one dimension per object required".into()));
    }
    let mut components = Vec::new();
    let mut total_rep = 1usize;
    let mut total_sec = 1usize;
    for c in &anomaly.components {
        let d = dims[c.objects[0]];
        if c.objects.iter().any(|&x| dims[x] != d) {
            return Err(Error::Invalid(
                "dimension must be constant on a connected component".into(),
            ));
        }
        let irreps = projective_irreps(&c.group, &c.cocycle, seed)?;
        let rep_degrees: Vec<usize> = irreps.iter().map(|(deg, _)| *deg).collect();
        if c.cocycle.is_zero() {
            let ordinary = irreducible_degrees(&c.group, seed)?;
            if rep_degrees != ordinary {
                return Err(Error::Numerical(
                    "trivial cocycle fails to reduce to ordinary degrees".into(),
                ));
            }
        }
        // independent count: blocks of the twisted algebra of this
        // component; a simple block of size m*d restricts to per-object
        // degree d (m = number of objects in the component)
        let (sub, _) = y.full_subgroupoid(&c.objects)?;
        let sub_anomaly = Anomaly::from_cocycles(&sub, vec![c.cocycle.clone()])?;
        let alg = twisted_algebra(&sub_anomaly, seed)?;
        if !alg.trace_form_nondegenerate {
            return Err(Error::Numerical("degenerate trace form".into()));
        }
        let m = c.objects.len();
        let mut section_degrees = Vec::new();
        for &s in &alg.block_sizes {
            if s % m != 0 {
                return Err(Error::Numerical(format!(
                    "block size {s} not divisible by component size {m}"
                )));
            }
            section_degrees.push(s / m);
        }
        let rep_classes = multiset_count(&rep_degrees, d);
        let section_classes = multiset_count(&section_degrees, d);
        total_rep *= rep_classes;
        total_sec *= section_classes;
        components.push(ComponentCorrespondence {
            dim: d,
            rep_degrees,
            section_degrees,
            rep_classes,
            section_classes,
        });
    }
    let verdict = components
        .iter()
        .all(|c| c.rep_degrees == c.section_degrees && c.rep_classes == c.section_classes);
    Ok(SectionsVsProjReps {
        components,
        total_rep_classes: total_rep,
        total_section_classes: total_sec,
        verdict,
    })
}

/// Convenience: a representative nontrivial anomaly cocycle on the vertex
/// group, if one exists.
pub fn nontrivial_group_cocycle(
    group: &Arc<FiniteGroup>,
    max_order: usize,
) -> Result<Option<Cochain>> {
    let schur = schur_multiplier(group, max_order)?;
    if schur.factors.is_empty() {
        return Ok(None);
    }
    let n = group.order() as u64;
    let values: Vec<Vec<i64>> = schur.representatives[0]
        .values
        .iter()
        .map(|v| vec![v[0]])
        .collect();
    let c = Cochain::new(
        group.clone(),
        crate::cohomology::CoeffModule::zn(n),
        2,
        values,
    )?;
    Ok(Some(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{coboundary, CoeffModule};

    fn z2z2_nontrivial() -> (Arc<FiniteGroup>, Cochain) {
        let g = FiniteGroup::builtin("Z2xZ2").unwrap();
        let alpha = nontrivial_group_cocycle(&g, 100).unwrap().unwrap();
        (g, alpha)
    }

    #[test]
    fn classify_bzn_trivial_only() {
        for n in 2..=6 {
            let g = FiniteGroup::builtin(&format!("Zn({n})")).unwrap();
            let y = FiniteGroupoid::delooping(&g);
            let classes = classify_anomalies(&y, 100).unwrap();
            assert_eq!(classes.len(), 1);
            assert!(classes[0].is_trivial_cocycle());
        }
    }

    #[test]
    fn classify_bz2z2_two_classes() {
        let g = FiniteGroup::builtin("Z2xZ2").unwrap();
        let y = FiniteGroupoid::delooping(&g);
        let classes = classify_anomalies(&y, 100).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(
            classes.iter().filter(|a| a.is_trivial_cocycle()).count(),
            1
        );
    }

    #[test]
    fn classify_disjoint_point_and_bz2z2() {
        let g = FiniteGroup::builtin("Z2xZ2").unwrap();
        let y = FiniteGroupoid::disjoint_union(&FiniteGroupoid::discrete(1), &FiniteGroupoid::delooping(&g)).unwrap().0;
        let classes = classify_anomalies(&y, 100).unwrap();
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn alpha_regular_trivial_gives_all_classes() {
        let g = FiniteGroup::builtin("Sym(3)").unwrap();
        let alpha = Cochain::zero(g.clone(), CoeffModule::zn(6), 2);
        assert_eq!(alpha_regular_classes(&g, &alpha).unwrap().len(), 3);
    }

    #[test]
    fn alpha_regular_z2z2_nontrivial_only_identity() {
        let (g, alpha) = z2z2_nontrivial();
        let reg = alpha_regular_classes(&g, &alpha).unwrap();
        assert_eq!(reg, vec![vec![g.identity()]]);
    }

    #[test]
    fn alpha_regular_d4_nontrivial_two_classes() {
        let g = FiniteGroup::builtin("Dih(4)").unwrap();
        let alpha = nontrivial_group_cocycle(&g, 100).unwrap().unwrap();
        assert_eq!(alpha_regular_classes(&g, &alpha).unwrap().len(), 2);
    }

    #[test]
    fn projective_irreps_pauli() {
        let (g, alpha) = z2z2_nontrivial();
        let irreps = projective_irreps(&g, &alpha, 0).unwrap();
        assert_eq!(irreps.len(), 1);
        assert_eq!(irreps[0].0, 2);
    }

    #[test]
    fn projective_irreps_trivial_matches_ordinary() {
        for name in ["Zn(4)", "Sym(3)", "Q8", "Dih(4)"] {
            let g = FiniteGroup::builtin(name).unwrap();
            let n = g.order() as u64;
            let alpha = Cochain::zero(g.clone(), CoeffModule::zn(n), 2);
            let tw: Vec<usize> = projective_irreps(&g, &alpha, 0)
                .unwrap()
                .iter()
                .map(|(d, _)| *d)
                .collect();
            assert_eq!(tw, irreducible_degrees(&g, 0).unwrap());
        }
    }

    #[test]
    fn projective_irreps_d4_twisted() {
        let g = FiniteGroup::builtin("Dih(4)").unwrap();
        let alpha = nontrivial_group_cocycle(&g, 100).unwrap().unwrap();
        let degrees: Vec<usize> = projective_irreps(&g, &alpha, 0)
            .unwrap()
            .iter()
            .map(|(d, _)| *d)
            .collect();
        assert_eq!(degrees, vec![2, 2]);
    }

    #[test]
    fn cohomologous_rescaling() {
        let (g, alpha) = z2z2_nontrivial();
        // shift alpha by a coboundary and check degrees agree plus the
        // explicit rescaling carries one rep to the other
        let mut b = Cochain::zero(g.clone(), CoeffModule::zn(4), 1);
        b.values[0][0] = 1;
        b.values[2][0] = 3;
        let shifted = Cochain::new(
            g.clone(),
            CoeffModule::zn(4),
            2,
            alpha
                .values
                .iter()
                .zip(&coboundary(&b).values)
                .map(|(x, y)| vec![x[0] + y[0]])
                .collect(),
        )
        .unwrap();
        let a_irreps = projective_irreps(&g, &alpha, 0).unwrap();
        let s_irreps = projective_irreps(&g, &shifted, 0).unwrap();
        let da: Vec<usize> = a_irreps.iter().map(|(d, _)| *d).collect();
        let ds: Vec<usize> = s_irreps.iter().map(|(d, _)| *d).collect();
        assert_eq!(da, ds);
        let moved = rescale_to_cocycle(&a_irreps[0].1, &shifted).unwrap();
        moved.check().unwrap();
    }

    #[test]
    fn twisted_algebra_group_algebra() {
        let g = FiniteGroup::builtin("Sym(3)").unwrap();
        let y = FiniteGroupoid::delooping(&g);
        let a = Anomaly::trivial(&y).unwrap();
        let alg = twisted_algebra(&a, 0).unwrap();
        assert_eq!(alg.dim, 6);
        assert!(alg.trace_form_nondegenerate);
        assert_eq!(alg.blocks, 3);
        assert_eq!(alg.block_sizes, vec![1, 1, 2]);
    }

    #[test]
    fn twisted_algebra_pauli_block() {
        let (g, alpha) = z2z2_nontrivial();
        let y = FiniteGroupoid::delooping(&g);
        let a = Anomaly::from_cocycles(&y, vec![alpha]).unwrap();
        let alg = twisted_algebra(&a, 0).unwrap();
        assert_eq!(alg.dim, 4);
        assert!(alg.trace_form_nondegenerate);
        assert_eq!(alg.blocks, 1);
        assert_eq!(alg.block_sizes, vec![2]);
    }

    #[test]
    fn twisted_algebra_discrete_is_commutative() {
        let y = FiniteGroupoid::discrete(5);
        let a = Anomaly::trivial(&y).unwrap();
        let alg = twisted_algebra(&a, 0).unwrap();
        assert_eq!(alg.dim, 5);
        assert_eq!(alg.blocks, 5);
        assert_eq!(alg.block_sizes, vec![1; 5]);
    }

    #[test]
    fn twisted_algebra_empty() {
        let y = FiniteGroupoid::empty();
        let a = Anomaly::trivial(&y).unwrap();
        let alg = twisted_algebra(&a, 0).unwrap();
        assert_eq!(alg.dim, 0);
        assert_eq!(alg.blocks, 0);
    }

    #[test]
    fn sections_pauli_dim2_unique_and_dim1_empty() {
        let (g, alpha) = z2z2_nontrivial();
        let y = FiniteGroupoid::delooping(&g);
        let a = Anomaly::from_cocycles(&y, vec![alpha]).unwrap();
        let r2 = anomalous_theories_as_sections(&a, &[2], 0).unwrap();
        assert!(r2.verdict);
        assert_eq!(r2.total_rep_classes, 1);
        assert_eq!(r2.total_section_classes, 1);
        let r1 = anomalous_theories_as_sections(&a, &[1], 0).unwrap();
        assert!(r1.verdict);
        assert_eq!(r1.total_rep_classes, 0);
    }

    #[test]
    fn sections_trivial_alpha_matches_ordinary_reps() {
        let g = FiniteGroup::builtin("Sym(3)").unwrap();
        let y = FiniteGroupoid::delooping(&g);
        let a = Anomaly::trivial(&y).unwrap();
        let r = anomalous_theories_as_sections(&a, &[2], 0).unwrap();
        assert!(r.verdict);
        // dim 2: the 2-dim irrep, or any of 3 unordered pairs of the two
        // 1-dim irreps
        assert_eq!(r.total_rep_classes, 4);
    }

    #[test]
    fn sections_on_action_groupoid_component() {
        // two-object component equivalent to BZ2: quotient of the
        // nontrivial Z2-action is connected with vertex group Z2... use a
        // connected groupoid with 2 objects and vertex group Z2 via
        // product of delooping with a 2-object contractible groupoid
        let g = FiniteGroup::builtin("Zn(2)").unwrap();
        let bg = FiniteGroupoid::delooping(&g);
        let pair = crate::action::universal_bundle(FiniteGroup::builtin("Zn(2)").unwrap())
            .unwrap()
            .groupoid;
        let (y, _, _) = FiniteGroupoid::product(&bg, &pair).unwrap();
        assert_eq!(y.n_objects(), 2);
        let a = Anomaly::trivial(&y).unwrap();
        let alg = twisted_algebra(&a, 0).unwrap();
        // C[Z2] tensor M2: two blocks of size 2
        assert_eq!(alg.dim, 8);
        assert_eq!(alg.block_sizes, vec![2, 2]);
        let r = anomalous_theories_as_sections(&a, &[1, 1], 0).unwrap();
        assert!(r.verdict);
        assert_eq!(r.total_rep_classes, 2);
    }
}

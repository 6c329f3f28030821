//! Functor categories between finite groupoids, irreducible-representation
//! counting and degrees, and the two headline verifications: the quotient
//! equivalence for actions on sets and the universal-bundle family
//! correspondence.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{
    homotopy_fixed_points, homotopy_quotient, residual_action_on_universal_bundle, GroupAction,
    GroupoidAction,
};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::groupoid::{
    enumerate_functors_raw, nat_isos, naturally_isomorphic, FiniteGroupoid, GroupoidFunctor,
};
use crate::linalg::{czeros, hermitian_eigen, CMat};

/// Matrix-equation tolerance used throughout the linear layer.
pub const MATRIX_TOL: f64 = 1e-9;
/// Integer-recovery guard for numerically computed degrees.
pub const ROUNDING_TOL: f64 = 1e-6;

/// A fully enumerated functor category with its isomorphism-class
/// partition.
pub struct FunctorCategory {
    pub functors: Vec<GroupoidFunctor>,
    /// Classes of functor indices; classes ordered by first member.
    pub iso_classes: Vec<Vec<usize>>,
}

pub fn enumerate_functors(
    c: &Arc<FiniteGroupoid>,
    d: &Arc<FiniteGroupoid>,
    max_enum: usize,
) -> Result<FunctorCategory> {
    let functors = enumerate_functors_raw(c, d, max_enum)?;
    let iso_classes = partition_by(&functors, |f, g| naturally_isomorphic(f, g));
    Ok(FunctorCategory {
        functors,
        iso_classes,
    })
}

pub(crate) fn partition_by<T>(
    items: &[T],
    mut related: impl FnMut(&T, &T) -> bool,
) -> Vec<Vec<usize>> {
    let n = items.len();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[i] = id;
        let mut members = vec![i];
        for j in (i + 1)..n {
            if class_of[j] == usize::MAX && related(&items[i], &items[j]) {
                class_of[j] = id;
                members.push(j);
            }
        }
        classes.push(members);
    }
    classes
}

/// Number of irreducible linear representations of a groupoid: the sum over
/// connected components of the conjugacy-class count of the vertex group.
pub fn irreducible_reps_count(y: &Arc<FiniteGroupoid>) -> Result<usize> {
    let mut total = 0;
    for comp in y.connected_components() {
        let (aut, _) = y.automorphism_group(comp[0])?;
        total += aut.conjugacy_classes().len();
    }
    Ok(total)
}

/// Degrees of the irreducible complex representations of a finite group,
/// sorted ascending, computed from the spectrum of a random Hermitian
/// central element of the regular representation.
pub fn irreducible_degrees(group: &Arc<FiniteGroup>, seed: u64) -> Result<Vec<usize>> {
    let n = group.order();
    let classes = group.conjugacy_classes();
    // class-sum matrices in the regular representation
    let mut class_sums: Vec<CMat> = Vec::with_capacity(classes.len());
    for class in &classes {
        let mut m = czeros(n, n);
        for &g in class {
            for h in 0..n {
                m[group.mul(g, h)][h] += Complex64::new(1.0, 0.0);
            }
        }
        class_sums.push(m);
    }
    // Hermitian central element: coefficients paired so z_{j'} = conj(z_j)
    // where class j' carries the inverses of class j
    let inv_class: Vec<usize> = classes
        .iter()
        .map(|class| {
            let target = group.inv(class[0]);
            classes
                .iter()
                .position(|c| c.contains(&target))
                .expect("inverse class")
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); classes.len()];
    for j in 0..classes.len() {
        if coeffs[j].norm_sqr() != 0.0 {
            continue;
        }
        let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if inv_class[j] == j {
            coeffs[j] = Complex64::new(z.re, 0.0);
        } else {
            coeffs[j] = z;
            coeffs[inv_class[j]] = z.conj();
        }
    }
    let mut h = czeros(n, n);
    for (j, m) in class_sums.iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                h[r][c] += coeffs[j] * m[r][c];
            }
        }
    }
    let (_, v) = hermitian_eigen(&h)?;
    // per eigenvector: the central character vector (class sums act by
    // scalars on each isotypic component)
    let mut char_vectors: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for col in 0..n {
        let vec: Vec<Complex64> = (0..n).map(|r| v[r][col]).collect();
        let mut omegas = Vec::with_capacity(classes.len());
        for m in &class_sums {
            // omega = (v^dagger M v) since v is unit
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..n {
                let mut mv = Complex64::new(0.0, 0.0);
                for c in 0..n {
                    mv += m[r][c] * vec[c];
                }
                acc += vec[r].conj() * mv;
            }
            omegas.push(acc);
        }
        char_vectors.push(omegas);
    }
    // group eigenvectors by central character
    let groups = partition_by(&char_vectors, |a, b| {
        a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-6)
    });
    if groups.len() != classes.len() {
        return Err(Error::Numerical(format!(
            "central-character clustering found {} groups for {} classes",
            groups.len(),
            classes.len()
        )));
    }
    let mut degrees = Vec::new();
    for members in &groups {
        let omegas = &char_vectors[members[0]];
        // column orthogonality: sum_j |omega_j|^2 / |class_j| = |G| / d^2
        let s: f64 = omegas
            .iter()
            .zip(&classes)
            .map(|(o, c)| o.norm_sqr() / c.len() as f64)
            .sum();
        let d = (n as f64 / s).sqrt();
        let rounded = d.round();
        if (d - rounded).abs() > ROUNDING_TOL || rounded < 1.0 {
            return Err(Error::Numerical(format!("degree {d} fails integer guard")));
        }
        let deg = rounded as usize;
        // the isotypic component has dimension d^2 in the regular rep
        if members.len() != deg * deg {
            return Err(Error::Numerical(format!(
                "isotypic multiplicity {} does not match degree {deg}",
                members.len()
            )));
        }
        degrees.push(deg);
    }
    degrees.sort_unstable();
    if degrees.iter().map(|d| d * d).sum::<usize>() != n {
        return Err(Error::Numerical("degree squares do not sum to |G|".into()));
    }
    Ok(degrees)
}

/// Outcome of the quotient-equivalence verification for a G-set.
pub struct CepReport {
    /// Sum over orbits of the conjugacy-class count of the stabilizer.
    pub equivariant_count: usize,
    /// Irreducible representation count of the quotient groupoid.
    pub quotient_count: usize,
    /// Finite-target comparison, when a target was supplied:
    /// (iso classes over the base, iso classes of plain functors).
    pub finite_target: Option<(usize, usize)>,
    pub verdict: bool,
}

/// Verifies, for a G-set X, that G-equivariant families over X match plain
/// data over the quotient groupoid X//G:
/// (i) counting: irreducible equivariant families (one per orbit per
/// stabilizer class) vs. irreducible representations of X//G;
/// (ii) for an optional finite target T: functors X//G -> T x BG strictly
/// over BG vs. functors X//G -> T, as an explicit bijection that descends
/// to isomorphism classes.
pub fn cep_verify(
    action: &GroupAction,
    finite_target: Option<&Arc<FiniteGroupoid>>,
    max_enum: usize,
) -> Result<CepReport> {
    let mut equivariant_count = 0;
    for orbit in action.orbits() {
        let (stab, _) = action.stabilizer(orbit[0])?;
        equivariant_count += stab.conjugacy_classes().len();
    }
    let q = homotopy_quotient(action)?;
    let quotient_count = irreducible_reps_count(&q.groupoid)?;
    let mut verdict = equivariant_count == quotient_count;
    let finite = match finite_target {
        None => None,
        Some(t) => {
            let (over, plain) = cep_finite_target(action, t, max_enum)?;
            verdict = verdict && over == plain;
            Some((over, plain))
        }
    };
    Ok(CepReport {
        equivariant_count,
        quotient_count,
        finite_target: finite,
        verdict,
    })
}

/// Functors X//G -> T x BG strictly over BG, compared with functors
/// X//G -> T. Returns the iso-class counts on both sides after checking the
/// one-to-one correspondence on the nose.
fn cep_finite_target(
    action: &GroupAction,
    target: &Arc<FiniteGroupoid>,
    max_enum: usize,
) -> Result<(usize, usize)> {
    let q = homotopy_quotient(action)?;
    let (prod, proj_t, proj_bg) = FiniteGroupoid::product(target, &q.base)?;
    let plain = enumerate_functors_raw(&q.groupoid, target, max_enum)?;
    // pair each plain functor T with the quotient projection
    let my = q.base.n_morphisms();
    let mut paired: Vec<GroupoidFunctor> = Vec::with_capacity(plain.len());
    for f in &plain {
        let obj_map: Vec<usize> = f
            .obj_map
            .iter()
            .map(|&t| t * q.base.n_objects() + 0)
            .collect();
        let mor_map: Vec<usize> = f
            .mor_map
            .iter()
            .zip(&q.projection.mor_map)
            .map(|(&tm, &bm)| tm * my + bm)
            .collect();
        let pf = GroupoidFunctor::new(q.groupoid.clone(), prod.clone(), obj_map, mor_map)?;
        // strictly over the base
        let down = proj_bg.compose(&pf)?;
        if !down.same_maps(&q.projection) {
            return Err(Error::Invalid("paired functor not over the base".into()));
        }
        paired.push(pf);
    }
    // every functor over the base arises this way: its target component is a
    // plain functor, and the pairing is injective; verify by enumerating all
    // functors to the product and filtering
    let all = enumerate_functors_raw(&q.groupoid, &prod, max_enum)?;
    let over_base: Vec<&GroupoidFunctor> = all
        .iter()
        .filter(|f| {
            proj_bg
                .compose(f)
                .map(|d| d.same_maps(&q.projection))
                .unwrap_or(false)
        })
        .collect();
    if over_base.len() != paired.len() {
        return Err(Error::Invalid(format!(
            "over-base functors ({}) do not match plain functors ({})",
            over_base.len(),
            paired.len()
        )));
    }
    for f in &over_base {
        let t = proj_t.compose(f)?;
        if !plain.iter().any(|p| p.same_maps(&t)) {
            return Err(Error::Invalid("projection of over-base functor missing".into()));
        }
    }
    // iso classes: over-base side uses vertical isomorphisms (projecting to
    // identities in BG); plain side uses all natural isomorphisms
    let over_classes = partition_by(&paired, |f, g| {
        nat_isos(f, g).into_iter().any(|eta| {
            eta.components
                .iter()
                .all(|&m| proj_bg.mor_map[m] == q.base.identity_of(0))
        })
    });
    let plain_classes = partition_by(&plain, |f, g| naturally_isomorphic(f, g));
    Ok((over_classes.len(), plain_classes.len()))
}

/// Report for the universal-bundle family correspondence: strictly
/// equivariant functors EG -> T (with a strict action on T) up to
/// equivariant isomorphism, vs. functors BG -> T up to isomorphism.
pub struct EgFamiliesReport {
    pub equivariant_classes: usize,
    pub internal_symmetry_classes: usize,
    pub verdict: bool,
}

/// For a trivial action on the target, pullback along EG -> BG gives a
/// bijection between functors BG -> T up to isomorphism and equivariant
/// functors EG -> T up to equivariant isomorphism.
pub fn eg_families_verify(
    group: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroupoid>,
    max_enum: usize,
) -> Result<EgFamiliesReport> {
    let trivial = GroupoidAction::trivial(group.clone(), target.clone());
    let fixed = homotopy_fixed_points(&trivial, max_enum)?;
    let internal = enumerate_functors(&FiniteGroupoid::delooping(group), target, max_enum)?;
    let mut verdict = fixed.classes.len() == internal.iso_classes.len();
    // explicit comparison map: pull back along the projection EG -> BG and
    // check it hits every equivariant class exactly once
    if verdict {
        let (eg, eg_action) = residual_action_on_universal_bundle(group)?;
        let mut hit_classes = Vec::new();
        for class in &internal.iso_classes {
            let f = &internal.functors[class[0]];
            let pulled = f.compose(&eg.projection)?;
            let cls = fixed.classes.iter().position(|members| {
                crate::action::equivariantly_isomorphic(
                    &pulled,
                    &fixed.functors[members[0]],
                    &eg_action,
                    &trivial,
                )
            });
            match cls {
                Some(c) if !hit_classes.contains(&c) => hit_classes.push(c),
                _ => {
                    verdict = false;
                    break;
                }
            }
        }
        if verdict && hit_classes.len() != fixed.classes.len() {
            verdict = false;
        }
    }
    Ok(EgFamiliesReport {
        equivariant_classes: fixed.classes.len(),
        internal_symmetry_classes: internal.iso_classes.len(),
        verdict,
    })
}

/// Homotopy fixed points for a nontrivial strict action on the target; used
/// to confirm that the family construction is action-sensitive.
pub fn equivariant_family_classes(
    action: &GroupoidAction,
    max_enum: usize,
) -> Result<usize> {
    Ok(homotopy_fixed_points(action, max_enum)?.classes.len())
}

//! Group actions on finite sets and on finite groupoids, homotopy quotients,
//! the universal bundle, and homotopy fixed points.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Perm};
use crate::groupoid::{
    enumerate_functors_raw, FiniteGroupoid, GroupoidFunctor, NatTransformation,
};

/// A left action of a finite group on a finite set, stored as one
/// permutation per group element.
#[derive(Debug, Clone)]
pub struct GroupAction {
    pub group: Arc<FiniteGroup>,
    pub set_size: usize,
    /// `perms[g][x] = g . x`
    pub perms: Vec<Perm>,
}

impl GroupAction {
    pub fn new(group: Arc<FiniteGroup>, set_size: usize, perms: Vec<Perm>) -> Result<Self> {
        let a = GroupAction {
            group,
            set_size,
            perms,
        };
        a.check()?;
        Ok(a)
    }

    /// Action from images of a generating set; every other element is
    /// expressed through the stored generator words.
    pub fn from_generator_images(
        group: Arc<FiniteGroup>,
        set_size: usize,
        gen_images: &[(usize, Perm)],
    ) -> Result<Self> {
        let imgs: HashMap<usize, Perm> = gen_images.iter().cloned().collect();
        let mut perms: Vec<Option<Perm>> = vec![None; group.order()];
        perms[group.identity()] = Some((0..set_size).collect());
        // BFS over the Cayley graph of the given generators
        let mut queue = vec![group.identity()];
        while let Some(g) = queue.pop() {
            let pg = perms[g].clone().unwrap();
            for (&s, ps) in &imgs {
                let h = group.mul(s, g);
                if perms[h].is_none() {
                    let ph: Perm = (0..set_size).map(|x| ps[pg[x]]).collect();
                    perms[h] = Some(ph);
                    queue.push(h);
                }
            }
        }
        let perms: Vec<Perm> = perms
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::BadAction("generator images do not generate".into()))?;
        Self::new(group, set_size, perms)
    }

    pub fn trivial(group: Arc<FiniteGroup>, set_size: usize) -> Self {
        let perms = vec![(0..set_size).collect(); group.order()];
        GroupAction {
            group,
            set_size,
            perms,
        }
    }

    /// Left translation of G on itself.
    pub fn left_translation(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let perms = (0..n)
            .map(|g| (0..n).map(|x| group.mul(g, x)).collect())
            .collect();
        GroupAction {
            set_size: n,
            group,
            perms,
        }
    }

    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.perms[g][x]
    }

    /// Exhaustive action-axiom check.
    pub fn check(&self) -> Result<()> {
        if self.perms.len() != self.group.order() {
            return Err(Error::BadAction("one permutation per element required".into()));
        }
        for p in &self.perms {
            if p.len() != self.set_size {
                return Err(Error::BadAction("permutation size mismatch".into()));
            }
            let mut seen = vec![false; self.set_size];
            for &v in p {
                if v >= self.set_size || seen[v] {
                    return Err(Error::BadAction("not a permutation".into()));
                }
                seen[v] = true;
            }
        }
        let e = self.group.identity();
        for x in 0..self.set_size {
            if self.perms[e][x] != x {
                return Err(Error::BadAction("identity must act trivially".into()));
            }
        }
        for g in 0..self.group.order() {
            for h in 0..self.group.order() {
                let gh = self.group.mul(g, h);
                for x in 0..self.set_size {
                    if self.apply(gh, x) != self.apply(g, self.apply(h, x)) {
                        return Err(Error::BadAction(format!(
                            "compatibility fails at g={g}, h={h}, x={x}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Orbits sorted by minimum element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.set_size];
        let mut out = Vec::new();
        for x in 0..self.set_size {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..self.group.order())
                .map(|g| self.apply(g, x))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Stabilizer subgroup of `x` with its inclusion hom.
    pub fn stabilizer(
        &self,
        x: usize,
    ) -> Result<(Arc<FiniteGroup>, crate::group::GroupHom)> {
        let members: Vec<usize> = (0..self.group.order())
            .filter(|&g| self.apply(g, x) == x)
            .collect();
        self.group.subgroup(&members)
    }
}

/// The action groupoid X//G of a left G-set X.
///
/// Objects are the points of X. A morphism x -> y is a pair (g, witness)
/// with g.x = y; since X is a set the witness is determined, so morphisms
/// are pairs (g, x) with target g.x, ordered g-major. Composition is
/// (h, g.x) ∘ (g, x) = (hg, x).
pub struct ActionQuotient {
    pub groupoid: Arc<FiniteGroupoid>,
    /// Per morphism index: the pair (g, x).
    pub labels: Vec<(usize, usize)>,
    /// Projection to the delooping of G.
    pub projection: GroupoidFunctor,
    pub base: Arc<FiniteGroupoid>,
    /// Inclusion of the carrier (as a discrete groupoid) into the quotient.
    pub inclusion: GroupoidFunctor,
}

/// True iff the strict preimage of the base point's identity is the carrier:
/// the fiber of X//G -> BG over pt is X as a discrete groupoid.
pub fn fiber_check(q: &ActionQuotient) -> bool {
    let fiber_mors: Vec<usize> = (0..q.groupoid.n_morphisms())
        .filter(|&m| q.projection.mor_map[m] == q.base.identity_of(0))
        .collect();
    // every fiber morphism must be an identity, one per object
    fiber_mors.len() == q.groupoid.n_objects()
        && fiber_mors
            .iter()
            .enumerate()
            .all(|(x, &m)| m == q.groupoid.identity_of(x))
        && q.inclusion.check().is_ok()
}

/// Builds X//G together with its projection functor to BG.
pub fn homotopy_quotient(action: &GroupAction) -> Result<ActionQuotient> {
    let g = &action.group;
    let n = action.set_size;
    let order = g.order();
    let labels: Vec<(usize, usize)> = (0..order * n).map(|i| (i / n, i % n)).collect();
    let mor: Vec<(usize, usize)> = labels
        .iter()
        .map(|&(gg, x)| (x, action.apply(gg, x)))
        .collect();
    let midx = |gg: usize, x: usize| gg * n + x;
    let mut comp_pairs = HashMap::new();
    for h in 0..order {
        for gg in 0..order {
            for x in 0..n {
                // (h, g.x) after (g, x) = (hg, x)
                comp_pairs.insert((midx(h, action.apply(gg, x)), midx(gg, x)), midx(g.mul(h, gg), x));
            }
        }
    }
    let identity: Vec<usize> = (0..n).map(|x| midx(g.identity(), x)).collect();
    let groupoid = FiniteGroupoid::new(n, mor, &comp_pairs, identity)?;
    let bg = FiniteGroupoid::delooping(g);
    let projection = GroupoidFunctor::new(
        groupoid.clone(),
        bg.clone(),
        vec![0; n],
        labels.iter().map(|&(gg, _)| gg).collect(),
    )?;
    let carrier = FiniteGroupoid::discrete(n);
    let inclusion = GroupoidFunctor::new(
        carrier,
        groupoid.clone(),
        (0..n).collect(),
        (0..n).map(|x| midx(g.identity(), x)).collect(),
    )?;
    Ok(ActionQuotient {
        groupoid,
        labels,
        projection,
        base: bg,
        inclusion,
    })
}

/// The universal bundle EG = G//G for left translation. It is connected
/// with trivial automorphism groups (contractible).
pub fn universal_bundle(group: Arc<FiniteGroup>) -> Result<ActionQuotient> {
    homotopy_quotient(&GroupAction::left_translation(group))
}

/// Checks that EG is contractible: connected and every hom-set a singleton.
pub fn is_contractible(g: &Arc<FiniteGroupoid>) -> bool {
    if g.n_objects() == 0 || g.connected_components().len() != 1 {
        return false;
    }
    for x in 0..g.n_objects() {
        for y in 0..g.n_objects() {
            if g.hom(x, y).len() != 1 {
                return false;
            }
        }
    }
    true
}

/// A strict action of G on a groupoid: one automorphism-functor per element.
pub struct GroupoidAction {
    pub group: Arc<FiniteGroup>,
    pub carrier: Arc<FiniteGroupoid>,
    pub functors: Vec<GroupoidFunctor>,
}

impl GroupoidAction {
    pub fn new(
        group: Arc<FiniteGroup>,
        carrier: Arc<FiniteGroupoid>,
        functors: Vec<GroupoidFunctor>,
    ) -> Result<Self> {
        if functors.len() != group.order() {
            return Err(Error::BadAction("one functor per element required".into()));
        }
        for f in &functors {
            f.check()?;
        }
        let e = &functors[group.identity()];
        if !e.same_maps(&GroupoidFunctor::identity(carrier.clone())) {
            return Err(Error::BadAction("identity must act as identity functor".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                let comp = functors[g].compose(&functors[h])?;
                if !comp.same_maps(&functors[gh]) {
                    return Err(Error::BadAction(format!(
                        "strict compatibility fails at g={g}, h={h}"
                    )));
                }
            }
        }
        Ok(GroupoidAction {
            group,
            carrier,
            functors,
        })
    }

    pub fn trivial(group: Arc<FiniteGroup>, carrier: Arc<FiniteGroupoid>) -> Self {
        let functors = (0..group.order())
            .map(|_| GroupoidFunctor::identity(carrier.clone()))
            .collect();
        GroupoidAction {
            group,
            carrier,
            functors,
        }
    }
}

/// The residual right-translation action of G on EG, written as a left
/// action: g sends the object x to x g^{-1} and the morphism (h, x) to
/// (h, x g^{-1}). It commutes with left translation, so these are functors.
pub fn residual_action_on_universal_bundle(
    group: &Arc<FiniteGroup>,
) -> Result<(ActionQuotient, GroupoidAction)> {
    let eg = universal_bundle(group.clone())?;
    let n = group.order();
    let mut functors = Vec::with_capacity(n);
    for g in 0..n {
        let ginv = group.inv(g);
        let obj_map: Vec<usize> = (0..n).map(|x| group.mul(x, ginv)).collect();
        let mor_map: Vec<usize> = eg
            .labels
            .iter()
            .map(|&(h, x)| h * n + group.mul(x, ginv))
            .collect();
        functors.push(GroupoidFunctor::new(
            eg.groupoid.clone(),
            eg.groupoid.clone(),
            obj_map,
            mor_map,
        )?);
    }
    let action = GroupoidAction::new(group.clone(), eg.groupoid.clone(), functors)?;
    Ok((eg, action))
}

/// A strictly equivariant functor between two groupoids carrying strict
/// G-actions: commutes with each group element's functor on the nose.
pub fn is_strictly_equivariant(
    f: &GroupoidFunctor,
    src_action: &GroupoidAction,
    tgt_action: &GroupoidAction,
) -> bool {
    for g in 0..src_action.group.order() {
        let left = match f.compose(&src_action.functors[g]) {
            Ok(v) => v,
            Err(_) => return false,
        };
        let right = match tgt_action.functors[g].compose(f) {
            Ok(v) => v,
            Err(_) => return false,
        };
        if !left.same_maps(&right) {
            return false;
        }
    }
    true
}

/// The groupoid of homotopy fixed points of a strict action on a carrier
/// groupoid, modeled as strictly equivariant functors EG -> carrier with
/// equivariant natural isomorphisms between them.
pub struct FixedPoints {
    pub functors: Vec<GroupoidFunctor>,
    /// iso-class partition, each class sorted, classes ordered by first member
    pub classes: Vec<Vec<usize>>,
}

pub fn homotopy_fixed_points(
    action: &GroupoidAction,
    max_enum: usize,
) -> Result<FixedPoints> {
    let (_, eg_action) = residual_action_on_universal_bundle(&action.group)?;
    let all = enumerate_functors_raw(&eg_action.carrier, &action.carrier, max_enum)?;
    let functors: Vec<GroupoidFunctor> = all
        .into_iter()
        .filter(|f| is_strictly_equivariant(f, &eg_action, action))
        .collect();
    // equivariant natural isomorphisms: components eta with
    // eta_{x g^{-1}} = a_g(eta_x) for target action a
    let n = functors.len();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[i] = id;
        let mut members = vec![i];
        for j in (i + 1)..n {
            if class_of[j] == usize::MAX
                && equivariantly_isomorphic(&functors[i], &functors[j], &eg_action, action)
            {
                class_of[j] = id;
                members.push(j);
            }
        }
        classes.push(members);
    }
    Ok(FixedPoints { functors, classes })
}

/// Whether two strictly equivariant functors are related by an equivariant
/// natural isomorphism, checked by exhausting natural isomorphisms.
pub fn equivariantly_isomorphic(
    f: &GroupoidFunctor,
    g: &GroupoidFunctor,
    src_action: &GroupoidAction,
    tgt_action: &GroupoidAction,
) -> bool {
    for eta in crate::groupoid::nat_isos(f, g) {
        if is_equivariant_transformation(&eta, src_action, tgt_action) {
            return true;
        }
    }
    false
}

pub fn is_equivariant_transformation(
    eta: &NatTransformation,
    src_action: &GroupoidAction,
    tgt_action: &GroupoidAction,
) -> bool {
    for gg in 0..src_action.group.order() {
        for x in 0..eta.source.source.n_objects() {
            let gx = src_action.functors[gg].obj_map[x];
            if eta.components[gx] != tgt_action.functors[gg].mor_map[eta.components[x]] {
                return false;
            }
        }
    }
    true
}

/// Views a G-set as a strict action on its discrete groupoid.
pub fn set_action_as_groupoid_action(action: &GroupAction) -> Result<GroupoidAction> {
    let carrier = FiniteGroupoid::discrete(action.set_size);
    let functors = (0..action.group.order())
        .map(|g| {
            GroupoidFunctor::new(
                carrier.clone(),
                carrier.clone(),
                action.perms[g].clone(),
                action.perms[g].clone(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    GroupoidAction::new(action.group.clone(), carrier, functors)
}

/// Homotopy fixed points of a G-set; must agree with the literal fixed-point
/// set, which is returned alongside for comparison.
pub fn set_fixed_points(action: &GroupAction, max_enum: usize) -> Result<(FixedPoints, Vec<usize>)> {
    let ga = set_action_as_groupoid_action(action)?;
    let fp = homotopy_fixed_points(&ga, max_enum)?;
    let literal: Vec<usize> = (0..action.set_size)
        .filter(|&x| (0..action.group.order()).all(|g| action.apply(g, x) == x))
        .collect();
    Ok((fp, literal))
}

/// Postcomposition with a G-invariant family on the carrier sends each
/// homotopy fixed point of the carrier to a homotopy fixed point of the
/// target with its trivial action. Returns the images.
pub fn postcompose_fixed_points(
    carrier_action: &GroupoidAction,
    family: &GroupoidFunctor,
    max_enum: usize,
) -> Result<Vec<GroupoidFunctor>> {
    // the family must be invariant: family . a_g = family for all g
    let trivial = GroupoidAction::trivial(carrier_action.group.clone(), family.target.clone());
    if !is_strictly_equivariant(family, carrier_action, &trivial) {
        return Err(Error::BadAction("family is not G-invariant".into()));
    }
    let fp = homotopy_fixed_points(carrier_action, max_enum)?;
    let (_, eg_action) = residual_action_on_universal_bundle(&carrier_action.group)?;
    let mut out = Vec::new();
    for s in &fp.functors {
        let composed = family.compose(s)?;
        if !is_strictly_equivariant(&composed, &eg_action, &trivial) {
            return Err(Error::BadAction("postcomposition left equivariance".into()));
        }
        out.push(composed);
    }
    Ok(out)
}

/// Skeleton-level sanity check for quotients of G-sets: the skeleton of
/// X//G has one object per orbit whose automorphism group is the stabilizer.
pub fn quotient_matches_orbit_structure(action: &GroupAction) -> Result<bool> {
    let q = homotopy_quotient(action)?;
    let orbits = action.orbits();
    let comps = q.groupoid.connected_components();
    if comps.len() != orbits.len() {
        return Ok(false);
    }
    for (orbit, comp) in orbits.iter().zip(&comps) {
        if orbit != comp {
            return Ok(false);
        }
        let (aut, _) = q.groupoid.automorphism_group(comp[0])?;
        let (stab, _) = action.stabilizer(comp[0])?;
        if aut.isomorphism_to(&stab).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_action_quotient_is_product_with_bg() {
        let g = FiniteGroup::builtin("Zn(2)").unwrap();
        let a = GroupAction::trivial(g.clone(), 3);
        let q = homotopy_quotient(&a).unwrap();
        assert_eq!(q.groupoid.n_objects(), 3);
        assert_eq!(q.groupoid.n_morphisms(), 6);
        assert_eq!(q.groupoid.connected_components().len(), 3);
        let (aut, _) = q.groupoid.automorphism_group(0).unwrap();
        assert!(aut.isomorphism_to(&g).is_some());
    }

    #[test]
    fn universal_bundle_contractible() {
        for name in ["Zn(4)", "Sym(3)", "Q8"] {
            let g = FiniteGroup::builtin(name).unwrap();
            let eg = universal_bundle(g.clone()).unwrap();
            assert!(is_contractible(&eg.groupoid));
            assert_eq!(eg.groupoid.n_morphisms(), g.order() * g.order());
        }
    }

    #[test]
    fn z2_swap_action_quotient() {
        let g = FiniteGroup::builtin("Zn(2)").unwrap();
        let a = GroupAction::new(g, 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let q = homotopy_quotient(&a).unwrap();
        // free action: quotient is equivalent to a point
        assert!(is_contractible(&q.groupoid));
        assert!(quotient_matches_orbit_structure(&a).unwrap());
    }

    #[test]
    fn s3_natural_action_orbits_and_stabilizers() {
        let g = FiniteGroup::builtin("Sym(3)").unwrap();
        let perms = (0..6).map(|i| g.perm_of(i).unwrap().clone()).collect();
        let a = GroupAction::new(g, 3, perms).unwrap();
        assert_eq!(a.orbits().len(), 1);
        let (stab, _) = a.stabilizer(0).unwrap();
        assert_eq!(stab.order(), 2);
        assert!(quotient_matches_orbit_structure(&a).unwrap());
    }

    #[test]
    fn mixed_action_structure() {
        // Z/2 on 4 points: swap {0,1}, fix {2,3}
        let g = FiniteGroup::builtin("Zn(2)").unwrap();
        let a = GroupAction::new(g, 4, vec![vec![0, 1, 2, 3], vec![1, 0, 2, 3]]).unwrap();
        assert_eq!(a.orbits(), vec![vec![0, 1], vec![2], vec![3]]);
        assert!(quotient_matches_orbit_structure(&a).unwrap());
        let q = homotopy_quotient(&a).unwrap();
        assert_eq!(q.groupoid.n_morphisms(), 8);
    }

    #[test]
    fn residual_action_is_strict() {
        let g = FiniteGroup::builtin("Sym(3)").unwrap();
        let (_, action) = residual_action_on_universal_bundle(&g).unwrap();
        assert_eq!(action.functors.len(), 6);
    }

    #[test]
    fn fixed_points_of_trivial_action_on_discrete() {
        // G acting trivially on n discrete points: fixed points = n points
        let g = FiniteGroup::builtin("Zn(2)").unwrap();
        let carrier = FiniteGroupoid::discrete(3);
        let action = GroupoidAction::trivial(g, carrier);
        let fp = homotopy_fixed_points(&action, 100_000).unwrap();
        assert_eq!(fp.classes.len(), 3);
    }

    #[test]
    fn fiber_check_on_corpus() {
        let g = FiniteGroup::builtin("Zn(2)").unwrap();
        for a in [
            GroupAction::trivial(g.clone(), 3),
            GroupAction::new(g.clone(), 2, vec![vec![0, 1], vec![1, 0]]).unwrap(),
            GroupAction::left_translation(g.clone()),
        ] {
            assert!(fiber_check(&homotopy_quotient(&a).unwrap()));
        }
    }

    #[test]
    fn swap_action_has_no_fixed_points() {
        let g = FiniteGroup::builtin("Zn(2)").unwrap();
        let a = GroupAction::new(g, 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let (fp, literal) = set_fixed_points(&a, 100_000).unwrap();
        assert!(literal.is_empty());
        assert!(fp.classes.is_empty());
    }

    #[test]
    fn mixed_action_fixed_points_match_literal() {
        let g = FiniteGroup::builtin("Zn(2)").unwrap();
        let a = GroupAction::new(g, 4, vec![vec![0, 1, 2, 3], vec![1, 0, 2, 3]]).unwrap();
        let (fp, literal) = set_fixed_points(&a, 1_000_000).unwrap();
        assert_eq!(literal, vec![2, 3]);
        assert_eq!(fp.classes.len(), 2);
    }

    #[test]
    fn postcomposition_lands_in_fixed_points() {
        // Z/2 swaps {0,1}, fixes 2; family collapses the orbit to one object
        let g = FiniteGroup::builtin("Zn(2)").unwrap();
        let a = GroupAction::new(g, 3, vec![vec![0, 1, 2], vec![1, 0, 2]]).unwrap();
        let ga = set_action_as_groupoid_action(&a).unwrap();
        let theta = FiniteGroupoid::discrete(2);
        let family = GroupoidFunctor::new(
            ga.carrier.clone(),
            theta,
            vec![0, 0, 1],
            vec![0, 0, 1],
        )
        .unwrap();
        let images = postcompose_fixed_points(&ga, &family, 1_000_000).unwrap();
        assert_eq!(images.len(), 1);
    }

    #[test]
    fn action_from_generator_images() {
        let g = FiniteGroup::builtin("Sym(3)").unwrap();
        let gens = g.small_generating_set();
        let images: Vec<(usize, Perm)> = gens
            .iter()
            .map(|&s| (s, g.perm_of(s).unwrap().clone()))
            .collect();
        let a = GroupAction::from_generator_images(g.clone(), 3, &images).unwrap();
        for s in 0..6 {
            assert_eq!(&a.perms[s], g.perm_of(s).unwrap());
        }
    }
}

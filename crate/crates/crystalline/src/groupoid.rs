//! Finite groupoids with full composition tables, functors between them,
//! natural transformations, and equivalence checking.
//!
//! Composition order is fixed globally as "f after g": `comp(f, g)` is
//! defined iff `target(g) = source(f)`, and denotes the composite g then f.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct FiniteGroupoid {
    n_objects: usize,
    /// (source, target) per morphism.
    mor: Vec<(usize, usize)>,
    /// Flat `m * m` table; `comp[f * m + g]` = f∘g when target(g)=source(f).
    comp: Vec<u32>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroupoid {
    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_morphisms(&self) -> usize {
        self.mor.len()
    }

    pub fn source(&self, f: usize) -> usize {
        self.mor[f].0
    }

    pub fn target(&self, f: usize) -> usize {
        self.mor[f].1
    }

    pub fn identity_of(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.inverse[f]
    }

    /// `f` after `g`; defined iff `target(g) = source(f)`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        let v = self.comp[f * self.mor.len() + g];
        if v == NONE {
            None
        } else {
            Some(v as usize)
        }
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.mor.len())
            .filter(|&f| self.mor[f] == (x, y))
            .collect()
    }

    pub fn morphisms_out(&self, x: usize) -> Vec<usize> {
        (0..self.mor.len())
            .filter(|&f| self.mor[f].0 == x)
            .collect()
    }

    /// Builds and validates a groupoid from raw parts. `comp_pairs` maps
    /// composable pairs `(f, g)` (f after g) to the composite index.
    pub fn new(
        n_objects: usize,
        mor: Vec<(usize, usize)>,
        comp_pairs: &HashMap<(usize, usize), usize>,
        identity: Vec<usize>,
    ) -> Result<Arc<Self>> {
        let m = mor.len();
        let mut comp = vec![NONE; m * m];
        for (&(f, g), &h) in comp_pairs {
            if f >= m || g >= m || h >= m {
                return Err(Error::GroupoidAxiom("composition index out of range".into()));
            }
            comp[f * m + g] = h as u32;
        }
        let mut g = FiniteGroupoid {
            n_objects,
            mor,
            comp,
            identity,
            inverse: vec![0; m],
        };
        g.fill_inverses()?;
        g.validate()?;
        Ok(Arc::new(g))
    }

    fn fill_inverses(&mut self) -> Result<()> {
        let m = self.mor.len();
        for f in 0..m {
            let (x, y) = self.mor[f];
            let inv = (0..m).find(|&g| {
                self.mor[g] == (y, x)
                    && self.compose(g, f) == Some(self.identity[x])
                    && self.compose(f, g) == Some(self.identity[y])
            });
            match inv {
                Some(g) => self.inverse[f] = g,
                None => {
                    return Err(Error::GroupoidAxiom(format!("morphism {f} has no inverse")))
                }
            }
        }
        Ok(())
    }

    /// Exhaustive groupoid-axiom check.
    pub fn validate(&self) -> Result<()> {
        let m = self.mor.len();
        if self.identity.len() != self.n_objects {
            return Err(Error::GroupoidAxiom("identity table size".into()));
        }
        for (x, &e) in self.identity.iter().enumerate() {
            if self.mor[e] != (x, x) {
                return Err(Error::GroupoidAxiom(format!("identity of {x} not an endomorphism")));
            }
        }
        for f in 0..m {
            for g in 0..m {
                let defined = self.compose(f, g).is_some();
                let composable = self.mor[g].1 == self.mor[f].0;
                if defined != composable {
                    return Err(Error::GroupoidAxiom(format!(
                        "comp({f},{g}) defined={defined} but composable={composable}"
                    )));
                }
                if let Some(h) = self.compose(f, g) {
                    if self.mor[h] != (self.mor[g].0, self.mor[f].1) {
                        return Err(Error::GroupoidAxiom(format!(
                            "comp({f},{g}) has wrong endpoints"
                        )));
                    }
                }
            }
        }
        // identity laws
        for f in 0..m {
            let (x, y) = self.mor[f];
            if self.compose(f, self.identity[x]) != Some(f)
                || self.compose(self.identity[y], f) != Some(f)
            {
                return Err(Error::GroupoidAxiom(format!("identity law fails at {f}")));
            }
        }
        // associativity on all composable triples
        for f in 0..m {
            for g in 0..m {
                if self.compose(f, g).is_none() {
                    continue;
                }
                for h in 0..m {
                    if self.compose(g, h).is_none() {
                        continue;
                    }
                    let left = self.compose(self.compose(f, g).unwrap(), h);
                    let right = self.compose(f, self.compose(g, h).unwrap());
                    if left != right {
                        return Err(Error::GroupoidAxiom(format!(
                            "associativity fails at ({f},{g},{h})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Discrete groupoid: n objects, identity morphisms only.
    pub fn discrete(n: usize) -> Arc<Self> {
        let mor: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        let mut comp = vec![NONE; n * n];
        for i in 0..n {
            comp[i * n + i] = i as u32;
        }
        Arc::new(FiniteGroupoid {
            n_objects: n,
            mor,
            comp,
            identity: (0..n).collect(),
            inverse: (0..n).collect(),
        })
    }

    pub fn empty() -> Arc<Self> {
        Self::discrete(0)
    }

    /// One object, morphisms in bijection with `g`, composition given by
    /// group multiplication.
    pub fn delooping(g: &FiniteGroup) -> Arc<Self> {
        let n = g.order();
        let mor: Vec<(usize, usize)> = (0..n).map(|_| (0, 0)).collect();
        let mut comp = vec![NONE; n * n];
        for a in 0..n {
            for b in 0..n {
                comp[a * n + b] = g.mul(a, b) as u32;
            }
        }
        Arc::new(FiniteGroupoid {
            n_objects: 1,
            mor,
            comp,
            identity: vec![0],
            inverse: (0..n).map(|a| g.inv(a)).collect(),
        })
    }

    /// Connected components of objects, sorted by minimum object.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut comp_id = vec![usize::MAX; self.n_objects];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.n_objects {
            if comp_id[start] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp_id[start] = id;
            while let Some(x) = stack.pop() {
                members.push(x);
                for f in 0..self.mor.len() {
                    let (s, t) = self.mor[f];
                    if s == x && comp_id[t] == usize::MAX {
                        comp_id[t] = id;
                        stack.push(t);
                    }
                    if t == x && comp_id[s] == usize::MAX {
                        comp_id[s] = id;
                        stack.push(s);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        comps
    }

    /// The automorphism group at `x`, with the list of morphism indices in
    /// element order (identity first).
    pub fn automorphism_group(&self, x: usize) -> Result<(Arc<FiniteGroup>, Vec<usize>)> {
        let mut endos = self.hom(x, x);
        endos.retain(|&f| f != self.identity[x]);
        endos.insert(0, self.identity[x]);
        let pos: HashMap<usize, usize> = endos.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let k = endos.len();
        let mut table = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in 0..k {
                let h = self
                    .compose(endos[i], endos[j])
                    .ok_or_else(|| Error::GroupoidAxiom("endo composition undefined".into()))?;
                table[i][j] = pos[&h];
            }
        }
        Ok((FiniteGroup::from_table(table)?, endos))
    }

    /// Full subgroupoid on an object subset, with the inclusion functor.
    pub fn full_subgroupoid(
        self: &Arc<Self>,
        objects: &[usize],
    ) -> Result<(Arc<FiniteGroupoid>, GroupoidFunctor)> {
        let obj_list: Vec<usize> = objects.to_vec();
        let obj_pos: HashMap<usize, usize> =
            obj_list.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mor_list: Vec<usize> = (0..self.mor.len())
            .filter(|&f| obj_pos.contains_key(&self.mor[f].0) && obj_pos.contains_key(&self.mor[f].1))
            .collect();
        let mor_pos: HashMap<usize, usize> =
            mor_list.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mor: Vec<(usize, usize)> = mor_list
            .iter()
            .map(|&f| (obj_pos[&self.mor[f].0], obj_pos[&self.mor[f].1]))
            .collect();
        let mut comp_pairs = HashMap::new();
        for (i, &f) in mor_list.iter().enumerate() {
            for (j, &g) in mor_list.iter().enumerate() {
                if let Some(h) = self.compose(f, g) {
                    comp_pairs.insert((i, j), mor_pos[&h]);
                }
            }
        }
        let identity: Vec<usize> = obj_list.iter().map(|&x| mor_pos[&self.identity[x]]).collect();
        let sub = FiniteGroupoid::new(obj_list.len(), mor, &comp_pairs, identity)?;
        let inclusion = GroupoidFunctor::new(sub.clone(), self.clone(), obj_list, mor_list)?;
        Ok((sub, inclusion))
    }

    /// One object per component with its automorphism group, as the full
    /// subgroupoid on component-minimal objects, plus the inclusion.
    pub fn skeleton(self: &Arc<Self>) -> Result<(Arc<FiniteGroupoid>, GroupoidFunctor)> {
        let reps: Vec<usize> = self.connected_components().iter().map(|c| c[0]).collect();
        self.full_subgroupoid(&reps)
    }

    /// Disjoint union with the two injection functors.
    pub fn disjoint_union(
        x: &Arc<Self>,
        y: &Arc<Self>,
    ) -> Result<(Arc<FiniteGroupoid>, GroupoidFunctor, GroupoidFunctor)> {
        let no = x.n_objects + y.n_objects;
        let mut mor = x.mor.clone();
        mor.extend(y.mor.iter().map(|&(s, t)| (s + x.n_objects, t + x.n_objects)));
        let mx = x.mor.len();
        let mut comp_pairs = HashMap::new();
        for f in 0..x.mor.len() {
            for g in 0..x.mor.len() {
                if let Some(h) = x.compose(f, g) {
                    comp_pairs.insert((f, g), h);
                }
            }
        }
        for f in 0..y.mor.len() {
            for g in 0..y.mor.len() {
                if let Some(h) = y.compose(f, g) {
                    comp_pairs.insert((f + mx, g + mx), h + mx);
                }
            }
        }
        let mut identity = x.identity.clone();
        identity.extend(y.identity.iter().map(|&e| e + mx));
        let u = FiniteGroupoid::new(no, mor, &comp_pairs, identity)?;
        let inj_x = GroupoidFunctor::new(
            x.clone(),
            u.clone(),
            (0..x.n_objects).collect(),
            (0..x.mor.len()).collect(),
        )?;
        let inj_y = GroupoidFunctor::new(
            y.clone(),
            u.clone(),
            (0..y.n_objects).map(|i| i + x.n_objects).collect(),
            (0..y.mor.len()).map(|i| i + mx).collect(),
        )?;
        Ok((u, inj_x, inj_y))
    }

    /// Product with the two projection functors. Objects and morphisms are
    /// pairs ordered x-major.
    pub fn product(
        x: &Arc<Self>,
        y: &Arc<Self>,
    ) -> Result<(Arc<FiniteGroupoid>, GroupoidFunctor, GroupoidFunctor)> {
        let no = x.n_objects * y.n_objects;
        let obj = |a: usize, b: usize| a * y.n_objects + b;
        let mx = x.mor.len();
        let my = y.mor.len();
        let mor: Vec<(usize, usize)> = (0..mx * my)
            .map(|i| {
                let (f, g) = (i / my, i % my);
                (
                    obj(x.mor[f].0, y.mor[g].0),
                    obj(x.mor[f].1, y.mor[g].1),
                )
            })
            .collect();
        let mut comp_pairs = HashMap::new();
        for f1 in 0..mx {
            for g1 in 0..my {
                for f2 in 0..mx {
                    for g2 in 0..my {
                        if let (Some(hf), Some(hg)) = (x.compose(f1, f2), y.compose(g1, g2)) {
                            comp_pairs.insert((f1 * my + g1, f2 * my + g2), hf * my + hg);
                        }
                    }
                }
            }
        }
        let identity: Vec<usize> = (0..no)
            .map(|o| x.identity[o / y.n_objects] * my + y.identity[o % y.n_objects])
            .collect();
        let p = FiniteGroupoid::new(no, mor, &comp_pairs, identity)?;
        let proj_x = GroupoidFunctor::new(
            p.clone(),
            x.clone(),
            (0..no).map(|o| o / y.n_objects).collect(),
            (0..mx * my).map(|i| i / my).collect(),
        )?;
        let proj_y = GroupoidFunctor::new(
            p.clone(),
            y.clone(),
            (0..no).map(|o| o % y.n_objects).collect(),
            (0..mx * my).map(|i| i % my).collect(),
        )?;
        Ok((p, proj_x, proj_y))
    }

    /// Structural equality (same tables).
    pub fn same_presentation(&self, other: &FiniteGroupoid) -> bool {
        self.n_objects == other.n_objects
            && self.mor == other.mor
            && self.comp == other.comp
            && self.identity == other.identity
    }

    /// Isomorphism of groupoids (bijective on objects and morphisms,
    /// preserving everything), found by backtracking on objects.
    pub fn isomorphism_to(self: &Arc<Self>, other: &Arc<Self>) -> Option<GroupoidFunctor> {
        if self.n_objects != other.n_objects || self.mor.len() != other.mor.len() {
            return None;
        }
        // match objects by hom-set size profile, then morphisms greedily
        let mut obj_map = vec![usize::MAX; self.n_objects];
        let mut used = vec![false; other.n_objects];
        self.iso_objects(other, 0, &mut obj_map, &mut used)
    }

    fn iso_objects(
        self: &Arc<Self>,
        other: &Arc<Self>,
        depth: usize,
        obj_map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> Option<GroupoidFunctor> {
        if depth == self.n_objects {
            return self.iso_morphisms(other, obj_map);
        }
        for cand in 0..other.n_objects {
            if used[cand] {
                continue;
            }
            obj_map[depth] = cand;
            // quick endomorphism-count prune
            if self.hom(depth, depth).len() == other.hom(cand, cand).len() {
                used[cand] = true;
                if let Some(f) = self.iso_objects(other, depth + 1, obj_map, used) {
                    return Some(f);
                }
                used[cand] = false;
            }
        }
        obj_map[depth] = usize::MAX;
        None
    }

    fn iso_morphisms(self: &Arc<Self>, other: &Arc<Self>, obj_map: &[usize]) -> Option<GroupoidFunctor> {
        // Morphism bijection: per hom-set, try all assignments via vertex
        // group isomorphism transport. Small sizes: brute force per hom-set
        // would explode; instead use component bases.
        // Build via automorphism group isomorphisms and tree transport.
        let comps = self.connected_components();
        let mut mor_map = vec![usize::MAX; self.mor.len()];
        for comp in &comps {
            let base = comp[0];
            let obase = obj_map[base];
            let (a, a_mors) = self.automorphism_group(base).ok()?;
            let (b, b_mors) = other.automorphism_group(obase).ok()?;
            let gmap = a.isomorphism_to(&b)?;
            let tree: HashMap<usize, usize> = comp
                .iter()
                .map(|&x| (x, self.hom(base, x)[0]))
                .collect();
            let otree: HashMap<usize, usize> = comp
                .iter()
                .map(|&x| (x, other.hom(obase, obj_map[x])[0]))
                .collect();
            let apos: HashMap<usize, usize> =
                a_mors.iter().enumerate().map(|(i, &f)| (f, i)).collect();
            for &x in comp {
                for &y in comp {
                    for f in self.hom(x, y) {
                        // a = t_y^{-1} f t_x
                        let a_el = self
                            .compose(self.inverse(tree[&y]), self.compose(f, tree[&x])?)?;
                        let ai = apos[&a_el];
                        let img_a = b_mors[gmap[ai]];
                        let img = other
                            .compose(otree[&y], other.compose(img_a, other.inverse(otree[&x]))?)?;
                        mor_map[f] = img;
                    }
                }
            }
        }
        if mor_map.iter().any(|&v| v == usize::MAX) {
            return None;
        }
        let f = GroupoidFunctor::new(self.clone(), other.clone(), obj_map.to_vec(), mor_map).ok()?;
        // must be bijective on morphisms
        let mut seen = vec![false; other.mor.len()];
        for &v in &f.mor_map {
            if seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(f)
    }
}

/// A functor between finite groupoids, stored as total object/morphism maps.
#[derive(Debug, Clone)]
pub struct GroupoidFunctor {
    pub source: Arc<FiniteGroupoid>,
    pub target: Arc<FiniteGroupoid>,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl GroupoidFunctor {
    pub fn new(
        source: Arc<FiniteGroupoid>,
        target: Arc<FiniteGroupoid>,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Result<Self> {
        let f = GroupoidFunctor {
            source,
            target,
            obj_map,
            mor_map,
        };
        f.check()?;
        Ok(f)
    }

    pub fn identity(g: Arc<FiniteGroupoid>) -> Self {
        GroupoidFunctor {
            obj_map: (0..g.n_objects()).collect(),
            mor_map: (0..g.n_morphisms()).collect(),
            source: g.clone(),
            target: g,
        }
    }

    /// Exhaustive functoriality check.
    pub fn check(&self) -> Result<()> {
        if self.obj_map.len() != self.source.n_objects()
            || self.mor_map.len() != self.source.n_morphisms()
        {
            return Err(Error::BadFunctor("map length mismatch".into()));
        }
        for f in 0..self.source.n_morphisms() {
            let (s, t) = (self.source.source(f), self.source.target(f));
            let img = self.mor_map[f];
            if self.target.source(img) != self.obj_map[s]
                || self.target.target(img) != self.obj_map[t]
            {
                return Err(Error::BadFunctor(format!("endpoints not preserved at {f}")));
            }
        }
        for (x, &e) in self.source.identity.iter().enumerate() {
            if self.mor_map[e] != self.target.identity_of(self.obj_map[x]) {
                return Err(Error::BadFunctor(format!("identity not preserved at {x}")));
            }
        }
        for f in 0..self.source.n_morphisms() {
            for g in 0..self.source.n_morphisms() {
                if let Some(h) = self.source.compose(f, g) {
                    let img = self.target.compose(self.mor_map[f], self.mor_map[g]);
                    if img != Some(self.mor_map[h]) {
                        return Err(Error::BadFunctor(format!(
                            "composition not preserved at ({f},{g})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &GroupoidFunctor) -> Result<GroupoidFunctor> {
        if !Arc::ptr_eq(&self.source, &other.target)
            && !self.source.same_presentation(&other.target)
        {
            return Err(Error::BadFunctor("composition source/target mismatch".into()));
        }
        GroupoidFunctor::new(
            other.source.clone(),
            self.target.clone(),
            other.obj_map.iter().map(|&x| self.obj_map[x]).collect(),
            other.mor_map.iter().map(|&f| self.mor_map[f]).collect(),
        )
    }

    pub fn same_maps(&self, other: &GroupoidFunctor) -> bool {
        self.obj_map == other.obj_map && self.mor_map == other.mor_map
    }
}

/// Witness that a functor is (or is not) an equivalence of groupoids.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub essentially_surjective: bool,
    /// Per target object: a source object and an iso from its image.
    pub surjectivity_witnesses: Vec<Option<(usize, usize)>>,
    pub fully_faithful: bool,
    /// A source object pair where the hom map fails to be bijective.
    pub failing_pair: Option<(usize, usize)>,
    pub verdict: bool,
}

/// Checks essential surjectivity and full faithfulness exhaustively.
pub fn check_equivalence(f: &GroupoidFunctor) -> EquivalenceReport {
    let src = &f.source;
    let tgt = &f.target;
    let mut witnesses = Vec::with_capacity(tgt.n_objects());
    let mut ess = true;
    for y in 0..tgt.n_objects() {
        let mut found = None;
        'search: for x in 0..src.n_objects() {
            for iso in tgt.hom(f.obj_map[x], y) {
                found = Some((x, iso));
                break 'search;
            }
        }
        if found.is_none() {
            ess = false;
        }
        witnesses.push(found);
    }
    let mut ff = true;
    let mut failing = None;
    'outer: for x in 0..src.n_objects() {
        for y in 0..src.n_objects() {
            let dom = src.hom(x, y);
            let mut images: Vec<usize> = dom.iter().map(|&h| f.mor_map[h]).collect();
            images.sort_unstable();
            let before = images.len();
            images.dedup();
            let cod = tgt.hom(f.obj_map[x], f.obj_map[y]);
            if images.len() != before || images.len() != cod.len() {
                ff = false;
                failing = Some((x, y));
                break 'outer;
            }
        }
    }
    EquivalenceReport {
        essentially_surjective: ess,
        surjectivity_witnesses: witnesses,
        fully_faithful: ff,
        failing_pair: failing,
        verdict: ess && ff,
    }
}

/// Constructs a quasi-inverse of an equivalence, using the surjectivity
/// witnesses and full faithfulness.
pub fn quasi_inverse(f: &GroupoidFunctor) -> Result<GroupoidFunctor> {
    let report = check_equivalence(f);
    if !report.verdict {
        return Err(Error::BadFunctor("not an equivalence".into()));
    }
    let src = &f.source;
    let tgt = &f.target;
    let mut obj_map = Vec::with_capacity(tgt.n_objects());
    let mut iso = Vec::with_capacity(tgt.n_objects()); // w_y : F(x_y) -> y
    for y in 0..tgt.n_objects() {
        let (x, w) = report.surjectivity_witnesses[y].unwrap();
        obj_map.push(x);
        iso.push(w);
    }
    let mut mor_map = Vec::with_capacity(tgt.n_morphisms());
    for g in 0..tgt.n_morphisms() {
        let (y, y2) = (tgt.source(g), tgt.target(g));
        // want source morphism h: x_y -> x_{y2} with F(h) = w_{y2}^{-1} g w_y
        let want = tgt
            .compose(tgt.inverse(iso[y2]), tgt.compose(g, iso[y]).unwrap())
            .unwrap();
        let h = src
            .hom(obj_map[y], obj_map[y2])
            .into_iter()
            .find(|&h| f.mor_map[h] == want)
            .ok_or_else(|| Error::BadFunctor("quasi-inverse lift missing".into()))?;
        mor_map.push(h);
    }
    GroupoidFunctor::new(tgt.clone(), src.clone(), obj_map, mor_map)
}

/// A natural transformation between parallel functors.
#[derive(Debug, Clone)]
pub struct NatTransformation {
    pub source: GroupoidFunctor,
    pub target: GroupoidFunctor,
    /// Per source object, a morphism `F(x) -> G(x)` in the target groupoid.
    pub components: Vec<usize>,
}

impl NatTransformation {
    pub fn new(
        source: GroupoidFunctor,
        target: GroupoidFunctor,
        components: Vec<usize>,
    ) -> Result<Self> {
        let t = NatTransformation {
            source,
            target,
            components,
        };
        t.check()?;
        Ok(t)
    }

    pub fn check(&self) -> Result<()> {
        let src = &self.source.source;
        let tgt = &self.source.target;
        for x in 0..src.n_objects() {
            let c = self.components[x];
            if tgt.source(c) != self.source.obj_map[x] || tgt.target(c) != self.target.obj_map[x] {
                return Err(Error::BadNaturality { object: x });
            }
        }
        for f in 0..src.n_morphisms() {
            let (x, y) = (src.source(f), src.target(f));
            let left = tgt.compose(self.components[y], self.source.mor_map[f]);
            let right = tgt.compose(self.target.mor_map[f], self.components[x]);
            if left != right || left.is_none() {
                return Err(Error::BadNaturality { object: x });
            }
        }
        Ok(())
    }
}

/// All natural isomorphisms `F => G`, in deterministic component order.
pub fn nat_isos(f: &GroupoidFunctor, g: &GroupoidFunctor) -> Vec<NatTransformation> {
    let src = &f.source;
    let tgt = &f.target;
    let comps = src.connected_components();
    // candidates at each component base; others derived by transport
    let mut per_comp: Vec<Vec<Vec<(usize, usize)>>> = Vec::new(); // per comp: list of assignments [(obj, mor)]
    for comp in &comps {
        let base = comp[0];
        let mut assignments = Vec::new();
        'cand: for u in tgt.hom(f.obj_map[base], g.obj_map[base]) {
            let mut local = vec![(base, u)];
            for &x in comp.iter().filter(|&&x| x != base) {
                let t = src.hom(base, x)[0];
                // eta_x = G(t) u F(t)^{-1}
                let gt = g.mor_map[t];
                let ft_inv = tgt.inverse(f.mor_map[t]);
                let inner = match tgt.compose(u, ft_inv) {
                    Some(v) => v,
                    None => continue 'cand,
                };
                let eta = match tgt.compose(gt, inner) {
                    Some(v) => v,
                    None => continue 'cand,
                };
                local.push((x, eta));
            }
            assignments.push(local);
        }
        per_comp.push(assignments);
    }
    // cartesian product over components
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_comp.len()];
    if per_comp.iter().any(|a| a.is_empty()) && !per_comp.is_empty() {
        return out;
    }
    loop {
        let mut components = vec![usize::MAX; src.n_objects()];
        for (ci, assignments) in per_comp.iter().enumerate() {
            for &(x, m) in &assignments[idx[ci]] {
                components[x] = m;
            }
        }
        if src.n_objects() == 0 || !components.contains(&usize::MAX) {
            if let Ok(t) = NatTransformation::new(f.clone(), g.clone(), components) {
                out.push(t);
            }
        }
        // advance
        let mut k = 0;
        loop {
            if k == per_comp.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < per_comp[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if per_comp.is_empty() {
            return out;
        }
    }
}

pub fn naturally_isomorphic(f: &GroupoidFunctor, g: &GroupoidFunctor) -> bool {
    if f.source.n_objects() == 0 {
        return true;
    }
    !nat_isos(f, g).is_empty()
}

/// Enumerates all functors `c -> d` in deterministic order. Uses the
/// component structure of `c`: a functor is determined by a base-object
/// image, a group hom on the vertex group, and free images of tree edges.
pub fn enumerate_functors_raw(
    c: &Arc<FiniteGroupoid>,
    d: &Arc<FiniteGroupoid>,
    max_enum: usize,
) -> Result<Vec<GroupoidFunctor>> {
    if c.n_objects() == 0 {
        return Ok(vec![GroupoidFunctor::new(
            c.clone(),
            d.clone(),
            vec![],
            vec![],
        )?]);
    }
    let comps = c.connected_components();
    // per component: list of (base, aut group, aut morphisms, tree map x -> t_x)
    struct CompData {
        base: usize,
        members: Vec<usize>,
        aut: Arc<FiniteGroup>,
        aut_mors: Vec<usize>,
        tree: HashMap<usize, usize>,
    }
    let mut data = Vec::new();
    for comp in &comps {
        let base = comp[0];
        let (aut, aut_mors) = c.automorphism_group(base)?;
        let tree: HashMap<usize, usize> = comp.iter().map(|&x| (x, c.hom(base, x)[0])).collect();
        data.push(CompData {
            base,
            members: comp.clone(),
            aut,
            aut_mors,
            tree,
        });
    }
    // per component, enumerate choices: (y0, hom, tree images)
    struct Choice {
        obj: Vec<(usize, usize)>,          // (object, image object)
        mor_gen: Vec<(usize, usize)>,      // (tree morphism, image morphism)
        aut_images: HashMap<usize, usize>, // aut morphism -> image morphism
    }
    let mut per_comp: Vec<Vec<Choice>> = Vec::new();
    let mut total: usize = 1;
    for cd in &data {
        let mut choices = Vec::new();
        for y0 in 0..d.n_objects() {
            let (taut, taut_mors) = d.automorphism_group(y0)?;
            let homs = cd.aut.homs_to(&taut);
            // tree images: any morphism out of y0, per non-base member
            let out_mors = d.morphisms_out(y0);
            let non_base: Vec<usize> = cd
                .members
                .iter()
                .copied()
                .filter(|&x| x != cd.base)
                .collect();
            let mut tree_choice = vec![0usize; non_base.len()];
            loop {
                for hom in &homs {
                    if choices.len() > max_enum {
                        return Err(Error::BoundExceeded(format!(
                            "functor enumeration exceeds {max_enum}"
                        )));
                    }
                    let mut obj = vec![(cd.base, y0)];
                    let mut mor_gen = vec![(cd.tree[&cd.base], d.identity_of(y0))];
                    for (k, &x) in non_base.iter().enumerate() {
                        let img = out_mors[tree_choice[k]];
                        obj.push((x, d.target(img)));
                        mor_gen.push((cd.tree[&x], img));
                    }
                    let aut_images: HashMap<usize, usize> = cd
                        .aut_mors
                        .iter()
                        .enumerate()
                        .map(|(i, &m)| (m, taut_mors[hom[i]]))
                        .collect();
                    choices.push(Choice {
                        obj,
                        mor_gen,
                        aut_images,
                    });
                }
                // advance tree_choice
                if non_base.is_empty() {
                    break;
                }
                let mut k = 0;
                loop {
                    tree_choice[k] += 1;
                    if tree_choice[k] < out_mors.len() {
                        break;
                    }
                    tree_choice[k] = 0;
                    k += 1;
                    if k == non_base.len() {
                        break;
                    }
                }
                if k == non_base.len() {
                    break;
                }
                if out_mors.is_empty() {
                    break;
                }
            }
        }
        total = total.saturating_mul(choices.len().max(1));
        if total > max_enum {
            return Err(Error::BoundExceeded(format!(
            "functor enumeration exceeds {max_enum}"
            )));
        }
        per_comp.push(choices);
    }
    if per_comp.iter().any(|ch| ch.is_empty()) {
        // no functor out of a nonempty component into empty target
        return Ok(vec![]);
    }
    // assemble functors from per-component choices
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_comp.len()];
    loop {
        let mut obj_map = vec![usize::MAX; c.n_objects()];
        let mut mor_map = vec![usize::MAX; c.n_morphisms()];
        for (ci, cd) in data.iter().enumerate() {
            let choice = &per_comp[ci][idx[ci]];
            for &(x, y) in &choice.obj {
                obj_map[x] = y;
            }
            let tree_img: HashMap<usize, usize> = choice.mor_gen.iter().copied().collect();
            let apos: HashMap<usize, usize> = choice.aut_images.clone();
            for &x in &cd.members {
                for &y in &cd.members {
                    for fm in c.hom(x, y) {
                        // fm = t_y * a * t_x^{-1}
                        let a = c
                            .compose(c.inverse(cd.tree[&y]), c.compose(fm, cd.tree[&x]).unwrap())
                            .unwrap();
                        let ia = apos[&a];
                        let img = d
                            .compose(
                                tree_img[&cd.tree[&y]],
                                d.compose(ia, d.inverse(tree_img[&cd.tree[&x]])).unwrap(),
                            )
                            .unwrap();
                        mor_map[fm] = img;
                    }
                }
            }
        }
        out.push(GroupoidFunctor::new(
            c.clone(),
            d.clone(),
            obj_map,
            mor_map,
        )?);
        if out.len() > max_enum {
            return Err(Error::BoundExceeded(format!(
                "functor enumeration exceeds {max_enum}"
            )));
        }
        let mut k = 0;
        loop {
            if k == per_comp.len() {
                out.sort_by(|a, b| (&a.obj_map, &a.mor_map).cmp(&(&b.obj_map, &b.mor_map)));
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < per_comp[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Helper: the automorphism group at the base of a delooping recovers G.
pub fn delooping_recovers_group(g: &Arc<FiniteGroup>) -> Result<bool> {
    let bg = FiniteGroupoid::delooping(g);
    let (aut, _) = bg.automorphism_group(0)?;
    Ok(aut.isomorphism_to(g).is_some())
}

/// Group hom induced on automorphism groups by a functor fixing a basepoint.
pub fn induced_hom_on_aut(
    f: &GroupoidFunctor,
    x: usize,
) -> Result<(Arc<FiniteGroup>, Arc<FiniteGroup>, GroupHom)> {
    let (a, a_mors) = f.source.automorphism_group(x)?;
    let (b, b_mors) = f.target.automorphism_group(f.obj_map[x])?;
    let bpos: HashMap<usize, usize> = b_mors.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let map: Vec<usize> = a_mors.iter().map(|&m| bpos[&f.mor_map[m]]).collect();
    let hom = GroupHom::new(a.clone(), b.clone(), map)?;
    Ok((a, b, hom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delooping_basics() {
        let g = FiniteGroup::builtin("Sym(3)").unwrap();
        let bg = FiniteGroupoid::delooping(&g);
        assert_eq!(bg.n_objects(), 1);
        assert_eq!(bg.n_morphisms(), 6);
        bg.validate().unwrap();
        assert!(delooping_recovers_group(&g).unwrap());
        assert_eq!(bg.connected_components().len(), 1);
    }

    #[test]
    fn delooping_z2_involution() {
        let g = FiniteGroup::builtin("Zn(2)").unwrap();
        let bg = FiniteGroupoid::delooping(&g);
        assert_eq!(bg.n_morphisms(), 2);
        assert_eq!(bg.inverse(1), 1);
    }

    #[test]
    fn discrete_components_and_aut() {
        let d = FiniteGroupoid::discrete(5);
        assert_eq!(d.connected_components().len(), 5);
        let (aut, _) = d.automorphism_group(3).unwrap();
        assert_eq!(aut.order(), 1);
    }

    #[test]
    fn identity_functor_is_equivalence() {
        let g = FiniteGroup::builtin("Zn(3)").unwrap();
        let bg = FiniteGroupoid::delooping(&g);
        let id = GroupoidFunctor::identity(bg);
        assert!(check_equivalence(&id).verdict);
    }

    #[test]
    fn object_inclusion_not_essentially_surjective() {
        let one = FiniteGroupoid::discrete(1);
        let two = FiniteGroupoid::discrete(2);
        let inc = GroupoidFunctor::new(one, two.clone(), vec![0], vec![0]).unwrap();
        let rep = check_equivalence(&inc);
        assert!(!rep.essentially_surjective);
        assert!(rep.fully_faithful);
        assert!(!rep.verdict);
    }

    #[test]
    fn skeleton_of_disjoint_deloopings_is_identity_shaped() {
        let z2 = FiniteGroup::builtin("Zn(2)").unwrap();
        let z3 = FiniteGroup::builtin("Zn(3)").unwrap();
        let (u, _, _) = FiniteGroupoid::disjoint_union(
            &FiniteGroupoid::delooping(&z2),
            &FiniteGroupoid::delooping(&z3),
        )
        .unwrap();
        let (sk, inc) = u.skeleton().unwrap();
        assert_eq!(sk.n_objects(), 2);
        assert_eq!(sk.n_morphisms(), 5);
        assert!(check_equivalence(&inc).verdict);
    }

    #[test]
    fn product_of_deloopings() {
        let z2 = FiniteGroup::builtin("Zn(2)").unwrap();
        let b = FiniteGroupoid::delooping(&z2);
        let (p, px, py) = FiniteGroupoid::product(&b, &b).unwrap();
        assert_eq!(p.n_objects(), 1);
        assert_eq!(p.n_morphisms(), 4);
        px.check().unwrap();
        py.check().unwrap();
        let (aut, _) = p.automorphism_group(0).unwrap();
        let z2xz2 = FiniteGroup::builtin("Z2xZ2").unwrap();
        assert!(aut.isomorphism_to(&z2xz2).is_some());
    }

    #[test]
    fn pt_times_x_equivalent_to_x() {
        let z3 = FiniteGroup::builtin("Zn(3)").unwrap();
        let x = FiniteGroupoid::delooping(&z3);
        let pt = FiniteGroupoid::discrete(1);
        let (_, _, py) = FiniteGroupoid::product(&pt, &x).unwrap();
        assert!(check_equivalence(&py).verdict);
    }

    #[test]
    fn union_with_empty_is_same() {
        let z2 = FiniteGroup::builtin("Zn(2)").unwrap();
        let x = FiniteGroupoid::delooping(&z2);
        let (u, inj, _) = FiniteGroupoid::disjoint_union(&x, &FiniteGroupoid::empty()).unwrap();
        assert!(u.same_presentation(&x));
        assert!(check_equivalence(&inj).verdict);
    }

    #[test]
    fn functor_enumeration_between_deloopings() {
        let z2 = FiniteGroup::builtin("Zn(2)").unwrap();
        let z3 = FiniteGroup::builtin("Zn(3)").unwrap();
        let bz2 = FiniteGroupoid::delooping(&z2);
        let bz3 = FiniteGroupoid::delooping(&z3);
        // only the trivial hom Z/2 -> Z/3
        assert_eq!(enumerate_functors_raw(&bz2, &bz3, 1000).unwrap().len(), 1);
        // two homs Z/2 -> Z/2
        assert_eq!(enumerate_functors_raw(&bz2, &bz2, 1000).unwrap().len(), 2);
    }

    #[test]
    fn quasi_inverse_roundtrip() {
        // EZ/2-like groupoid: 2 objects, all hom-sets singletons
        let mut comp_pairs = HashMap::new();
        // morphisms: 0:id0, 1:id1, 2:0->1, 3:1->0
        let mor = vec![(0, 0), (1, 1), (0, 1), (1, 0)];
        let table: Vec<((usize, usize), usize)> = vec![
            ((0, 0), 0),
            ((1, 1), 1),
            ((2, 0), 2),
            ((0, 3), 3),
            ((3, 1), 3),
            ((1, 2), 2),
            ((3, 2), 0),
            ((2, 3), 1),
        ];
        for (k, v) in table {
            comp_pairs.insert(k, v);
        }
        let e = FiniteGroupoid::new(2, mor, &comp_pairs, vec![0, 1]).unwrap();
        let (sk, inc) = e.skeleton().unwrap();
        assert_eq!(sk.n_objects(), 1);
        assert!(check_equivalence(&inc).verdict);
        let qi = quasi_inverse(&inc).unwrap();
        assert!(check_equivalence(&qi).verdict);
    }

    #[test]
    fn nat_isos_partition_functors() {
        let z2 = FiniteGroup::builtin("Zn(2)").unwrap();
        let bz2 = FiniteGroupoid::delooping(&z2);
        let fs = enumerate_functors_raw(&bz2, &bz2, 1000).unwrap();
        // trivial and identity functors are not isomorphic
        assert_eq!(fs.len(), 2);
        assert!(!naturally_isomorphic(&fs[0], &fs[1]));
        assert!(naturally_isomorphic(&fs[0], &fs[0]));
    }
}

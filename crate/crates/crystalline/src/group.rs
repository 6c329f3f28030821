//! Finite groups as plain multiplication tables.
//!
//! Element indices are contiguous from 0 and index 0 is always the
//! identity. Groups built from permutation generators are ordered
//! identity-first, then breadth-first over the sorted generators, so
//! construction is bit-exact reproducible.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A permutation on `{0..degree-1}`, stored as its image vector.
pub type Perm = Vec<usize>;

pub fn compose_perms(p: &Perm, q: &Perm) -> Perm {
    // (p * q)(i) = p(q(i))
    q.iter().map(|&i| p[i]).collect()
}

pub fn identity_perm(degree: usize) -> Perm {
    (0..degree).collect()
}

fn check_perm(degree: usize, p: &Perm) -> Result<()> {
    if p.len() != degree {
        return Err(Error::BadPermutation {
            degree,
            reason: format!("length {} != degree", p.len()),
        });
    }
    let mut seen = vec![false; degree];
    for &i in p {
        if i >= degree || seen[i] {
            return Err(Error::BadPermutation {
                degree,
                reason: "not a bijection".into(),
            });
        }
        seen[i] = true;
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    /// Flat `order * order` table: `mul[a * order + b]` = index of `a·b`.
    mul: Vec<usize>,
    inv: Vec<usize>,
    /// Permutation image of each element, when built from permutations.
    perms: Option<Vec<Perm>>,
    /// Indices of the generators used during closure (sorted input order).
    generators: Vec<usize>,
    /// BFS parent data: `words[i] = (gen, prev)` with `i = gen * prev`.
    words: Vec<Option<(usize, usize)>>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// BFS parent data from the closure: `(generator position, previous
    /// element)` such that the element is generator * previous. `None` for
    /// the identity (or when the group was built from a raw table).
    pub fn parent_word(&self, a: usize) -> Option<(usize, usize)> {
        self.words[a]
    }

    pub fn perm_of(&self, a: usize) -> Option<&Perm> {
        self.perms.as_ref().map(|ps| &ps[a])
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    /// Exhaustive group-axiom check on all `|G|^3` triples.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::GroupAxiom(format!("identity fails at {a}")));
            }
            if self.mul(a, self.inv[a]) != 0 || self.mul(self.inv[a], a) != 0 {
                return Err(Error::GroupAxiom(format!("inverse fails at {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::GroupAxiom(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds a group from a raw multiplication table. Row/column 0 must be
    /// the identity.
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Arc<Self>> {
        let order = mul.len();
        let mut flat = vec![0usize; order * order];
        for (a, row) in mul.iter().enumerate() {
            if row.len() != order {
                return Err(Error::GroupAxiom("ragged multiplication table".into()));
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(Error::GroupAxiom("table entry out of range".into()));
                }
                flat[a * order + b] = v;
            }
        }
        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if flat[a * order + b] == 0 && flat[b * order + a] == 0 {
                    inv[a] = b;
                }
            }
            if inv[a] == usize::MAX {
                return Err(Error::GroupAxiom(format!("no inverse for {a}")));
            }
        }
        let g = FiniteGroup {
            order,
            mul: flat,
            inv,
            perms: None,
            generators: Vec::new(),
            words: vec![None; order],
        };
        g.check_axioms()?;
        Ok(Arc::new(g))
    }

    /// Closure of permutation generators under composition, breadth-first
    /// with identity first and generators processed in sorted order.
    pub fn from_permutations(
        degree: usize,
        generators: &[Perm],
        max_order: usize,
    ) -> Result<Arc<Self>> {
        for p in generators {
            check_perm(degree, p)?;
        }
        let mut gens: Vec<Perm> = generators.to_vec();
        gens.sort();
        gens.dedup();
        gens.retain(|p| *p != identity_perm(degree));

        let mut elems: Vec<Perm> = vec![identity_perm(degree)];
        let mut index: HashMap<Perm, usize> = HashMap::new();
        index.insert(elems[0].clone(), 0);

        let mut frontier = 0;
        while frontier < elems.len() {
            let cur = elems[frontier].clone();
            for g in &gens {
                let next = compose_perms(g, &cur);
                if !index.contains_key(&next) {
                    if elems.len() >= max_order {
                        return Err(Error::OrderBound { bound: max_order });
                    }
                    index.insert(next.clone(), elems.len());
                    elems.push(next);
                }
            }
            frontier += 1;
        }
        let mut gen_indices = Vec::new();
        for g in &gens {
            gen_indices.push(index[g]);
        }
        let order = elems.len();
        let mut words_fixed: Vec<Option<(usize, usize)>> = vec![None; order];
        // BFS parent words over the now-fixed element indices.
        {
            let mut seen = vec![false; order];
            seen[0] = true;
            let mut queue = std::collections::VecDeque::from([0usize]);
            while let Some(cur) = queue.pop_front() {
                for &gi in &gen_indices {
                    let next = index[&compose_perms(&elems[gi], &elems[cur])];
                    if !seen[next] {
                        seen[next] = true;
                        words_fixed[next] = Some((gi, cur));
                        queue.push_back(next);
                    }
                }
            }
        }

        let mut mul = vec![0usize; order * order];
        for a in 0..order {
            for b in 0..order {
                mul[a * order + b] = index[&compose_perms(&elems[a], &elems[b])];
            }
        }
        let mut inv = vec![0usize; order];
        for a in 0..order {
            inv[a] = (0..order).find(|&b| mul[a * order + b] == 0).unwrap();
        }
        Ok(Arc::new(FiniteGroup {
            order,
            mul,
            inv,
            perms: Some(elems),
            generators: gen_indices,
            words: words_fixed,
        }))
    }

    /// Canonical groups for the test corpus.
    pub fn builtin(name: &str) -> Result<Arc<Self>> {
        let max = crate::DEFAULT_MAX_ORDER;
        if let Some(arg) = name.strip_prefix("Zn(").and_then(|s| s.strip_suffix(')')) {
            let n: usize = arg
                .trim()
                .parse()
                .map_err(|_| Error::UnknownBuiltin(name.into()))?;
            if n == 0 {
                return Err(Error::UnknownBuiltin(name.into()));
            }
            if n == 1 {
                return Self::from_permutations(1, &[], max);
            }
            let cycle: Perm = (0..n).map(|i| (i + 1) % n).collect();
            return Self::from_permutations(n, &[cycle], max);
        }
        if let Some(arg) = name.strip_prefix("Sym(").and_then(|s| s.strip_suffix(')')) {
            let n: usize = arg
                .trim()
                .parse()
                .map_err(|_| Error::UnknownBuiltin(name.into()))?;
            if n == 0 {
                return Err(Error::UnknownBuiltin(name.into()));
            }
            if n == 1 {
                return Self::from_permutations(1, &[], max);
            }
            let cycle: Perm = (0..n).map(|i| (i + 1) % n).collect();
            let mut swap = identity_perm(n);
            swap.swap(0, 1);
            return Self::from_permutations(n, &[cycle, swap], max);
        }
        if let Some(arg) = name.strip_prefix("Dih(").and_then(|s| s.strip_suffix(')')) {
            let n: usize = arg
                .trim()
                .parse()
                .map_err(|_| Error::UnknownBuiltin(name.into()))?;
            if n < 3 {
                return Err(Error::UnknownBuiltin(name.into()));
            }
            let rot: Perm = (0..n).map(|i| (i + 1) % n).collect();
            let refl: Perm = (0..n).map(|i| (n - i) % n).collect();
            return Self::from_permutations(n, &[rot, refl], max);
        }
        match name {
            "Q8" => {
                // Regular action of the quaternion group on itself; element
                // order 1,-1,i,-i,j,-j,k,-k.
                let table = q8_table();
                let mut perms = Vec::new();
                for a in 0..8 {
                    perms.push((0..8).map(|b| table[a][b]).collect::<Perm>());
                }
                // generators i (index 2) and j (index 4)
                Self::from_permutations(8, &[perms[2].clone(), perms[4].clone()], max)
            }
            "Z2xZ2" => {
                let a: Perm = vec![1, 0, 3, 2];
                let b: Perm = vec![2, 3, 0, 1];
                Self::from_permutations(4, &[a, b], max)
            }
            "A4" => {
                let r: Perm = vec![1, 2, 0, 3]; // (0 1 2)
                let v: Perm = vec![1, 0, 3, 2]; // (0 1)(2 3)
                Self::from_permutations(4, &[r, v], max)
            }
            _ => Err(Error::UnknownBuiltin(name.into())),
        }
    }

    /// Conjugacy classes, each sorted, ordered by minimum element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|g| self.conjugate(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Subgroup on the given element subset (must be closed); returns the
    /// subgroup in canonical order together with the inclusion hom.
    pub fn subgroup(self: &Arc<Self>, subset: &[usize]) -> Result<(Arc<FiniteGroup>, GroupHom)> {
        let mut members: Vec<usize> = subset.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            if members.contains(&0) {
                // fine
            } else {
                return Err(Error::GroupAxiom("subset misses identity".into()));
            }
        }
        // identity first, then ascending parent index
        members.retain(|&x| x != 0);
        members.insert(0, 0);
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let k = members.len();
        let mut mul = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in 0..k {
                let p = self.mul(members[i], members[j]);
                match pos.get(&p) {
                    Some(&q) => mul[i][j] = q,
                    None => {
                        return Err(Error::GroupAxiom(format!(
                            "subset not closed: {} * {}",
                            members[i], members[j]
                        )))
                    }
                }
            }
        }
        let sub = FiniteGroup::from_table(mul)?;
        let hom = GroupHom::new(sub.clone(), self.clone(), members)?;
        Ok((sub, hom))
    }

    /// Centralizer of `g`, as a subgroup with inclusion.
    pub fn centralizer(self: &Arc<Self>, g: usize) -> Result<(Arc<FiniteGroup>, GroupHom)> {
        let members: Vec<usize> = (0..self.order)
            .filter(|&x| self.mul(x, g) == self.mul(g, x))
            .collect();
        self.subgroup(&members)
    }

    pub fn center(self: &Arc<Self>) -> Vec<usize> {
        (0..self.order)
            .filter(|&x| (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
            .collect()
    }

    /// A small generating set found greedily (empty for the trivial group).
    pub fn small_generating_set(&self) -> Vec<usize> {
        if !self.generators.is_empty() {
            return self.generators.clone();
        }
        let mut gens: Vec<usize> = Vec::new();
        let mut closed = vec![false; self.order];
        closed[0] = true;
        let mut size = 1;
        while size < self.order {
            let next = (0..self.order).find(|&x| !closed[x]).unwrap();
            gens.push(next);
            // re-close
            let mut members: Vec<usize> = (0..self.order).filter(|&x| closed[x]).collect();
            members.push(next);
            loop {
                let mut grew = false;
                let snapshot: Vec<usize> = members.clone();
                for &a in &snapshot {
                    for &b in &snapshot {
                        let p = self.mul(a, b);
                        if !members.contains(&p) {
                            members.push(p);
                            grew = true;
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            closed = vec![false; self.order];
            for &m in &members {
                closed[m] = true;
            }
            size = members.len();
        }
        gens
    }

    /// Searches for an isomorphism onto `other`; returns the element map.
    pub fn isomorphism_to(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order != other.order {
            return None;
        }
        let gens = self.small_generating_set();
        if gens.is_empty() {
            return Some(vec![0]);
        }
        let self_orders: Vec<usize> = (0..self.order).map(|x| self.element_order(x)).collect();
        let other_orders: Vec<usize> = (0..other.order).map(|x| other.element_order(x)).collect();
        {
            let mut a = self_orders.clone();
            let mut b = other_orders.clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return None;
            }
        }
        let mut images = vec![0usize; gens.len()];
        self.iso_backtrack(other, &gens, &self_orders, &other_orders, 0, &mut images)
    }

    fn iso_backtrack(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        self_orders: &[usize],
        other_orders: &[usize],
        depth: usize,
        images: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if depth == gens.len() {
            return self.extend_gen_map(other, gens, images);
        }
        for cand in 0..other.order() {
            if other_orders[cand] != self_orders[gens[depth]] {
                continue;
            }
            images[depth] = cand;
            if let Some(m) =
                self.iso_backtrack(other, gens, self_orders, other_orders, depth + 1, images)
            {
                return Some(m);
            }
        }
        None
    }

    /// Extends a map on generators to a full map by closure; checks it is a
    /// bijective homomorphism.
    fn extend_gen_map(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        images: &[usize],
    ) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let next = self.mul(g, cur);
                let img = other.mul(images[k], map[cur]);
                if map[next] == usize::MAX {
                    map[next] = img;
                    queue.push_back(next);
                } else if map[next] != img {
                    return None;
                }
            }
        }
        if map.iter().any(|&x| x == usize::MAX) {
            return None;
        }
        let mut hit = vec![false; other.order()];
        for &x in &map {
            if hit[x] {
                return None;
            }
            hit[x] = true;
        }
        for a in 0..self.order {
            for b in 0..self.order {
                if map[self.mul(a, b)] != other.mul(map[a], map[b]) {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// All homomorphisms `self -> target`, enumerated by generator images.
    pub fn homs_to(&self, target: &FiniteGroup) -> Vec<Vec<usize>> {
        let gens = self.small_generating_set();
        if gens.is_empty() {
            return vec![vec![0]];
        }
        let mut out = Vec::new();
        let mut images = vec![0usize; gens.len()];
        self.hom_backtrack(target, &gens, 0, &mut images, &mut out);
        out.sort();
        out
    }

    fn hom_backtrack(
        &self,
        target: &FiniteGroup,
        gens: &[usize],
        depth: usize,
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == gens.len() {
            if let Some(map) = self.extend_gen_map_hom(target, gens, images) {
                out.push(map);
            }
            return;
        }
        for cand in 0..target.order() {
            // image order must divide generator order
            if self.element_order(gens[depth]) % target.element_order(cand) != 0 {
                continue;
            }
            images[depth] = cand;
            self.hom_backtrack(target, gens, depth + 1, images, out);
        }
    }

    fn extend_gen_map_hom(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        images: &[usize],
    ) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let next = self.mul(g, cur);
                let img = other.mul(images[k], map[cur]);
                if map[next] == usize::MAX {
                    map[next] = img;
                    queue.push_back(next);
                } else if map[next] != img {
                    return None;
                }
            }
        }
        if map.iter().any(|&x| x == usize::MAX) {
            return None;
        }
        for a in 0..self.order {
            for b in 0..self.order {
                if map[self.mul(a, b)] != other.mul(map[a], map[b]) {
                    return None;
                }
            }
        }
        Some(map)
    }
}

fn q8_table() -> Vec<Vec<usize>> {
    // elements: 1, -1, i, -i, j, -j, k, -k
    const E: usize = 0;
    const NE: usize = 1;
    const I: usize = 2;
    const NI: usize = 3;
    const J: usize = 4;
    const NJ: usize = 5;
    const K: usize = 6;
    const NK: usize = 7;
    let neg = |x: usize| if x % 2 == 0 { x + 1 } else { x - 1 };
    let base = |a: usize, b: usize| -> usize {
        // product of i,j,k units ignoring sign of args
        match (a, b) {
            (E, y) => y,
            (x, E) => x,
            (I, I) => NE,
            (J, J) => NE,
            (K, K) => NE,
            (I, J) => K,
            (J, I) => NK,
            (J, K) => I,
            (K, J) => NI,
            (K, I) => J,
            (I, K) => NJ,
            _ => unreachable!(),
        }
    };
    let mut t = vec![vec![0usize; 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            let ua = a & !1;
            let ub = b & !1;
            let mut p = base(ua, ub);
            if a % 2 == 1 {
                p = neg(p);
            }
            if b % 2 == 1 {
                p = neg(p);
            }
            t[a][b] = p;
        }
    }
    t
}

/// A homomorphism between finite groups, stored as a total element map.
#[derive(Debug, Clone)]
pub struct GroupHom {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    pub map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        let h = GroupHom {
            source,
            target,
            map,
        };
        h.check()?;
        Ok(h)
    }

    pub fn check(&self) -> Result<()> {
        if self.map.len() != self.source.order() {
            return Err(Error::BadHom("map length mismatch".into()));
        }
        if self.map[0] != 0 {
            return Err(Error::BadHom("identity not preserved".into()));
        }
        for a in 0..self.source.order() {
            for b in 0..self.source.order() {
                if self.map[self.source.mul(a, b)] != self.target.mul(self.map[a], self.map[b]) {
                    return Err(Error::BadHom(format!("fails at ({a},{b})")));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&x| {
            if seen[x] {
                false
            } else {
                seen[x] = true;
                true
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_closure() {
        let g = FiniteGroup::builtin("Sym(3)").unwrap();
        assert_eq!(g.order(), 6);
        g.check_axioms().unwrap();
    }

    #[test]
    fn trivial_group_from_empty_generators() {
        let g = FiniteGroup::from_permutations(1, &[], 10).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn q8_regular_action_order_census() {
        let g = FiniteGroup::builtin("Q8").unwrap();
        assert_eq!(g.order(), 8);
        let order2 = (0..8).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(order2, 1);
        assert_eq!(g.center().len(), 2);
    }

    #[test]
    fn closure_bound_rejected() {
        let cycle: Perm = (0..12).map(|i| (i + 1) % 12).collect();
        assert!(matches!(
            FiniteGroup::from_permutations(12, &[cycle], 5),
            Err(Error::OrderBound { bound: 5 })
        ));
    }

    #[test]
    fn conjugacy_classes_s3() {
        let g = FiniteGroup::builtin("Sym(3)").unwrap();
        let classes = g.conjugacy_classes();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        assert_eq!(classes[0], vec![0]);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        // class equation
        assert_eq!(classes.iter().map(|c| c.len()).sum::<usize>(), 6);
    }

    #[test]
    fn conjugacy_classes_z4_singletons() {
        let g = FiniteGroup::builtin("Zn(4)").unwrap();
        assert_eq!(g.conjugacy_classes().len(), 4);
    }

    #[test]
    fn a4_class_count() {
        let g = FiniteGroup::builtin("A4").unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.conjugacy_classes().len(), 4);
    }

    #[test]
    fn centralizer_sizes() {
        let g = FiniteGroup::builtin("Sym(3)").unwrap();
        // identity centralizer is everything
        let (c, _) = g.centralizer(0).unwrap();
        assert_eq!(c.order(), 6);
        // a transposition has centralizer of order 2
        let t = (1..6).find(|&x| g.element_order(x) == 2).unwrap();
        let (c, inc) = g.centralizer(t).unwrap();
        assert_eq!(c.order(), 2);
        inc.check().unwrap();
        // |class| * |centralizer| = |G|
        for x in 0..6 {
            let class_len = g
                .conjugacy_classes()
                .into_iter()
                .find(|cl| cl.contains(&x))
                .unwrap()
                .len();
            let (cx, _) = g.centralizer(x).unwrap();
            assert_eq!(class_len * cx.order(), 6);
        }
    }

    #[test]
    fn z2xz2_centralizer_is_whole_group() {
        let g = FiniteGroup::builtin("Z2xZ2").unwrap();
        for x in 0..4 {
            assert_eq!(g.centralizer(x).unwrap().0.order(), 4);
        }
    }

    #[test]
    fn dihedral_and_cyclic() {
        let d4 = FiniteGroup::builtin("Dih(4)").unwrap();
        assert_eq!(d4.order(), 8);
        let z4 = FiniteGroup::builtin("Zn(4)").unwrap();
        assert_eq!(z4.order(), 4);
        assert!(z4.is_abelian());
        assert!(!d4.is_abelian());
    }

    #[test]
    fn isomorphism_detects_q8_vs_d4() {
        let q8 = FiniteGroup::builtin("Q8").unwrap();
        let d4 = FiniteGroup::builtin("Dih(4)").unwrap();
        assert!(q8.isomorphism_to(&d4).is_none());
        assert!(q8.isomorphism_to(&q8).is_some());
    }

    #[test]
    fn hom_enumeration_z2_to_z3() {
        let z2 = FiniteGroup::builtin("Zn(2)").unwrap();
        let z3 = FiniteGroup::builtin("Zn(3)").unwrap();
        assert_eq!(z2.homs_to(&z3).len(), 1);
        assert_eq!(z2.homs_to(&z2).len(), 2);
    }
}

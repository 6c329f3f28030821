//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`; the harness line itself
//! reports the same verdict).

use std::sync::Arc;

use crystalline::action::{
    fiber_check, homotopy_quotient, is_contractible, universal_bundle, GroupAction,
};
use crystalline::anomaly::{
    alpha_regular_classes, nontrivial_group_cocycle, projective_irreps,
};
use crystalline::cohomology::{
    extension_from_cocycle, extension_isomorphism_from_cobounding, schur_multiplier, Cochain,
    CoeffModule, coboundary,
};
use crystalline::fibration::{
    constant_family, constant_family_sections_are_functors, roundtrip_family,
    roundtrip_fibration, straighten, unstraighten,
};
use crystalline::group::{FiniteGroup, Perm};
use crystalline::groupoid::{check_equivalence, enumerate_functors_raw, FiniteGroupoid};
use crystalline::oracle::{connecting_images, verify_h2_presentation, verify_schur_presentation};
use crystalline::rep::{cep_verify, eg_families_verify, irreducible_degrees};

const MAX_ENUM: usize = crystalline::DEFAULT_MAX_ENUM;

fn pass(n: usize, what: &str) {
    println!("criterion {n}: PASS - {what}");
}

fn corpus_groups() -> Vec<Arc<FiniteGroup>> {
    let mut gs: Vec<Arc<FiniteGroup>> = (1..=8)
        .map(|n| FiniteGroup::builtin(&format!("Zn({n})")).unwrap())
        .collect();
    for name in ["Sym(3)", "Dih(4)", "Q8", "Z2xZ2", "A4"] {
        gs.push(FiniteGroup::builtin(name).unwrap());
    }
    gs
}

/// All subgroups, as sorted element lists (every subgroup of a corpus
/// group is generated by at most two elements).
fn subgroups(g: &Arc<FiniteGroup>) -> Vec<Vec<usize>> {
    let n = g.order();
    let closure = |gens: &[usize]| -> Vec<usize> {
        let mut in_set = vec![false; n];
        in_set[g.identity()] = true;
        let mut members = vec![g.identity()];
        let mut frontier = members.clone();
        while let Some(x) = frontier.pop() {
            for &s in gens {
                for y in [g.mul(s, x), g.mul(x, s), g.inv(g.mul(s, x))] {
                    if !in_set[y] {
                        in_set[y] = true;
                        members.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    };
    let mut subs: Vec<Vec<usize>> = vec![closure(&[])];
    for a in 0..n {
        let ca = closure(&[a]);
        if !subs.contains(&ca) {
            subs.push(ca);
        }
        for b in (a + 1)..n {
            let cab = closure(&[a, b]);
            if !subs.contains(&cab) {
                subs.push(cab);
            }
        }
    }
    subs
}

/// The left coset action of G on G/H.
fn coset_action(g: &Arc<FiniteGroup>, h: &[usize]) -> GroupAction {
    let n = g.order();
    // coset id of x = minimal element of xH
    let coset_min = |x: usize| h.iter().map(|&k| g.mul(x, k)).min().unwrap();
    let mut reps: Vec<usize> = (0..n).map(coset_min).collect();
    let mut distinct: Vec<usize> = reps.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let index_of = |m: usize| distinct.binary_search(&m).unwrap();
    reps = reps.iter().map(|&m| index_of(m)).collect();
    let perms: Vec<Perm> = (0..n)
        .map(|s| {
            distinct
                .iter()
                .map(|&rep| reps[g.mul(s, rep)])
                .collect()
        })
        .collect();
    GroupAction::new(g.clone(), distinct.len(), perms).unwrap()
}

fn transitive_actions(g: &Arc<FiniteGroup>) -> Vec<GroupAction> {
    subgroups(g)
        .iter()
        .filter(|h| g.order() / h.len() <= 8)
        .map(|h| coset_action(g, h))
        .collect()
}

/// Disjoint sum of two actions.
fn sum_action(a: &GroupAction, b: &GroupAction) -> GroupAction {
    let g = a.group.clone();
    let perms: Vec<Perm> = (0..g.order())
        .map(|s| {
            let mut p: Perm = (0..a.set_size).map(|x| a.apply(s, x)).collect();
            p.extend((0..b.set_size).map(|x| b.apply(s, x) + a.set_size));
            p
        })
        .collect();
    GroupAction::new(g, a.set_size + b.set_size, perms).unwrap()
}

fn action_corpus(g: &Arc<FiniteGroup>) -> Vec<GroupAction> {
    let mut out = transitive_actions(g);
    // several intransitive ones within |X| <= 8
    out.push(GroupAction::trivial(g.clone(), 2));
    out.push(GroupAction::trivial(g.clone(), 3));
    let trans = transitive_actions(g);
    let smallest = trans
        .iter()
        .filter(|a| a.set_size >= 2)
        .min_by_key(|a| a.set_size);
    if let Some(t) = smallest {
        if t.set_size + 1 <= 8 {
            out.push(sum_action(t, &GroupAction::trivial(g.clone(), 1)));
        }
        if 2 * t.set_size <= 8 {
            out.push(sum_action(t, t));
        }
    }
    out
}

fn is_free(a: &GroupAction) -> bool {
    (0..a.set_size).all(|x| a.stabilizer(x).unwrap().0.order() == 1)
}

#[test]
fn criterion_01_straightening_roundtrips() {
    let mut fibration_count = 0usize;
    // quotient projections X//G -> BG
    for g in corpus_groups() {
        if g.order() > 8 {
            continue;
        }
        for a in action_corpus(&g) {
            if a.set_size > 6 {
                continue;
            }
            let q = homotopy_quotient(&a).unwrap();
            assert!(roundtrip_fibration(&q.projection).unwrap());
            assert!(roundtrip_family(&straighten(&q.projection).unwrap()).unwrap());
            fibration_count += 1;
        }
    }
    // constant families with discrete fibers over multi-object bases
    let z2 = FiniteGroup::builtin("Zn(2)").unwrap();
    let z3 = FiniteGroup::builtin("Zn(3)").unwrap();
    let bases = [
        FiniteGroupoid::discrete(2),
        FiniteGroupoid::discrete(3),
        FiniteGroupoid::delooping(&z2),
        FiniteGroupoid::delooping(&z3),
        universal_bundle(z2.clone()).unwrap().groupoid,
    ];
    for base in &bases {
        for k in 1..=2 {
            let fam = constant_family(base.clone(), FiniteGroupoid::discrete(k)).unwrap();
            let un = unstraighten(&fam).unwrap();
            assert!(roundtrip_fibration(&un.projection).unwrap());
            assert!(roundtrip_family(&fam).unwrap());
            fibration_count += 1;
        }
    }
    assert!(fibration_count >= 30, "only {fibration_count} fibrations");
    pass(1, &format!("straightening round trips on {fibration_count} fibrations"));
}

#[test]
fn criterion_02_quotient_structure() {
    let mut checked = 0usize;
    for g in corpus_groups() {
        for a in action_corpus(&g) {
            let q = homotopy_quotient(&a).unwrap();
            assert!(fiber_check(&q), "fiber check failed");
            // automorphism group at each object = stabilizer of the point
            for x in 0..a.set_size {
                let (aut, _) = q.groupoid.automorphism_group(x).unwrap();
                let (stab, _) = a.stabilizer(x).unwrap();
                assert!(
                    aut.isomorphism_to(&stab).is_some(),
                    "automorphism group differs from stabilizer"
                );
            }
            if is_free(&a) {
                // free actions collapse to the orbit set
                let (sk, _) = q.groupoid.skeleton().unwrap();
                assert_eq!(sk.n_objects(), a.orbits().len());
                assert_eq!(sk.n_morphisms(), sk.n_objects());
            }
            checked += 1;
        }
    }
    pass(2, &format!("quotient structure on {checked} (G, X) pairs"));
}

#[test]
fn criterion_03_eg_contractible() {
    let mut checked = 0usize;
    for g in corpus_groups() {
        let eg = universal_bundle(g.clone()).unwrap().groupoid;
        assert!(is_contractible(&eg));
        // explicit equivalence against the point
        let to_pt = enumerate_functors_raw(&eg, &FiniteGroupoid::discrete(1), MAX_ENUM)
            .unwrap()
            .into_iter()
            .next()
            .unwrap();
        assert!(check_equivalence(&to_pt).verdict);
        checked += 1;
    }
    pass(3, &format!("EG contractible for {checked} corpus groups"));
}

#[test]
fn criterion_04_cep() {
    let z2 = FiniteGroup::builtin("Zn(2)").unwrap();
    let bz2 = FiniteGroupoid::delooping(&z2);
    let d2 = FiniteGroupoid::discrete(2);
    let mut counted = 0usize;
    let mut with_target = 0usize;
    for g in corpus_groups() {
        for a in action_corpus(&g) {
            let rep = cep_verify(&a, None, MAX_ENUM).unwrap();
            assert!(rep.verdict, "counting CEP failed");
            counted += 1;
            if g.order() <= 6 && a.set_size <= 4 {
                for t in [&d2, &bz2] {
                    let rep = cep_verify(&a, Some(t), MAX_ENUM).unwrap();
                    assert!(rep.verdict, "finite-target CEP failed");
                    with_target += 1;
                }
            }
        }
    }
    pass(
        4,
        &format!("CEP verified on {counted} pairs ({with_target} with finite targets)"),
    );
}

#[test]
fn criterion_05_eg_families() {
    let z2 = FiniteGroup::builtin("Zn(2)").unwrap();
    let bz2 = FiniteGroupoid::delooping(&z2);
    let mut checked = 0usize;
    for g in corpus_groups() {
        let mut targets = vec![
            FiniteGroupoid::discrete(1),
            FiniteGroupoid::discrete(2),
            FiniteGroupoid::discrete(3),
        ];
        if g.order() <= 8 {
            targets.push(bz2.clone());
        }
        assert!(targets.len() >= 3);
        for t in &targets {
            let rep = eg_families_verify(&g, t, MAX_ENUM).unwrap();
            assert!(rep.verdict, "EG families failed");
            checked += 1;
        }
    }
    pass(5, &format!("EG-family correspondence on {checked} (G, target) pairs"));
}

#[test]
fn criterion_06_schur_multipliers() {
    let expected: Vec<(&str, Vec<u64>)> = vec![
        ("Zn(1)", vec![]),
        ("Zn(2)", vec![]),
        ("Zn(3)", vec![]),
        ("Zn(4)", vec![]),
        ("Zn(5)", vec![]),
        ("Zn(6)", vec![]),
        ("Zn(7)", vec![]),
        ("Zn(8)", vec![]),
        ("Sym(3)", vec![]),
        ("Dih(4)", vec![2]),
        ("Q8", vec![]),
        ("Z2xZ2", vec![2]),
        ("A4", vec![2]),
    ];
    let mut oracle_checked = 0usize;
    for (name, factors) in &expected {
        let g = FiniteGroup::builtin(name).unwrap();
        // the two internal routes agree by construction or the call errors
        let s = schur_multiplier(&g, 10080).unwrap();
        assert_eq!(&s.factors, factors, "schur multiplier of {name}");
        if (2..=8).contains(&g.order()) {
            let n = g.order() as u64;
            let h2 = crystalline::cohomology::cohomology_group(
                &g,
                &CoeffModule::zn(n),
                2,
                10080,
            )
            .unwrap();
            verify_h2_presentation(&g, &h2).unwrap();
            verify_schur_presentation(&g, &s, &connecting_images(&g).unwrap()).unwrap();
            oracle_checked += 1;
        }
    }
    pass(
        6,
        &format!(
            "Schur multipliers exact on {} groups ({oracle_checked} with brute-force oracle)",
            expected.len()
        ),
    );
}

#[test]
fn criterion_07_anomalous_theories() {
    let mut checked = 0usize;
    for g in corpus_groups() {
        if g.order() == 1 {
            continue;
        }
        let n = g.order() as u64;
        let mut cocycles = vec![Cochain::zero(g.clone(), CoeffModule::zn(n), 2)];
        if let Some(c) = nontrivial_group_cocycle(&g, 10080).unwrap() {
            cocycles.push(c);
        }
        for alpha in &cocycles {
            let irreps = projective_irreps(&g, alpha, 0).unwrap();
            let regular = alpha_regular_classes(&g, alpha).unwrap();
            assert_eq!(irreps.len(), regular.len());
            assert_eq!(
                irreps.iter().map(|(d, _)| d * d).sum::<usize>(),
                g.order()
            );
            for (_, rep) in &irreps {
                rep.check().unwrap();
            }
            if alpha.is_zero() {
                let degrees: Vec<usize> = irreps.iter().map(|(d, _)| *d).collect();
                assert_eq!(degrees, irreducible_degrees(&g, 0).unwrap());
            }
            checked += 1;
        }
    }
    // the named example: Z/2 x Z/2 with its nontrivial class
    let g = FiniteGroup::builtin("Z2xZ2").unwrap();
    let alpha = nontrivial_group_cocycle(&g, 100).unwrap().unwrap();
    let irreps = projective_irreps(&g, &alpha, 0).unwrap();
    assert_eq!(irreps.len(), 1);
    assert_eq!(irreps[0].0, 2);
    pass(7, &format!("anomalous theories verified on {checked} (G, alpha) pairs"));
}

#[test]
fn criterion_08_sections_of_trivial_bundles() {
    let z2 = FiniteGroup::builtin("Zn(2)").unwrap();
    let z3 = FiniteGroup::builtin("Zn(3)").unwrap();
    let s3 = FiniteGroup::builtin("Sym(3)").unwrap();
    let bases = vec![
        FiniteGroupoid::discrete(1),
        FiniteGroupoid::discrete(2),
        FiniteGroupoid::delooping(&z2),
        FiniteGroupoid::delooping(&z3),
        FiniteGroupoid::delooping(&s3),
        universal_bundle(z2).unwrap().groupoid,
    ];
    let fibers = vec![
        FiniteGroupoid::discrete(2),
        FiniteGroupoid::discrete(3),
        FiniteGroupoid::delooping(&FiniteGroup::builtin("Zn(2)").unwrap()),
    ];
    let mut checked = 0usize;
    for base in &bases {
        for fiber in &fibers {
            let (n_sections, n_functors) =
                constant_family_sections_are_functors(base, fiber, MAX_ENUM).unwrap();
            assert_eq!(n_sections, n_functors);
            checked += 1;
        }
    }
    assert!(checked >= 10);
    pass(8, &format!("sections = functors for {checked} trivial fibrations"));
}

#[test]
fn criterion_09_extensions() {
    // Z/4 from the nontrivial class on Z/2 with Z/2 coefficients
    let z2 = FiniteGroup::builtin("Zn(2)").unwrap();
    let module = CoeffModule::zn(2);
    let nontrivial = Cochain::new(z2.clone(), module.clone(), 2, vec![vec![1]]).unwrap();
    let e = extension_from_cocycle(&z2, &module, &nontrivial).unwrap();
    assert_eq!(e.group.order(), 4);
    assert!((0..4).any(|a| e.group.element_order(a) == 4), "expected Z/4");
    // Z/2 x Z/2 from the trivial class
    let trivial = Cochain::zero(z2.clone(), module.clone(), 2);
    let e0 = extension_from_cocycle(&z2, &module, &trivial).unwrap();
    assert_eq!(e0.group.order(), 4);
    assert!((0..4).all(|a| e0.group.element_order(a) <= 2), "expected Z/2 x Z/2");
    // cohomologous inputs give isomorphic outputs, with the isomorphism
    // constructed from the cobounding 1-cochain (over Z/2 x Z/2, where
    // nonzero coboundaries exist)
    let v4 = FiniteGroup::builtin("Z2xZ2").unwrap();
    let mut b = Cochain::zero(v4.clone(), module.clone(), 1);
    b.values[0][0] = 1;
    b.values[1][0] = 1;
    b.values[2][0] = 1;
    let kappa1 = Cochain::zero(v4.clone(), module.clone(), 2);
    let kappa2 = coboundary(&b);
    assert!(!kappa2.is_zero());
    let iso = extension_isomorphism_from_cobounding(&v4, &module, &kappa1, &kappa2).unwrap();
    iso.check().unwrap();
    assert!(iso.is_injective());
    pass(9, "central extensions reproduce Z/4 and Z/2 x Z/2 with explicit isomorphisms");
}

#[test]
fn criterion_10_deterministic_reports() {
    let dir = std::env::temp_dir().join("crystalline-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let ws = dir.join("determinism.ws");
    std::fs::write(
        &ws,
        "version = 1\n\n[group G]\nbuiltin = Z2xZ2\n\n[group S]\nbuiltin = Sym(3)\n\n\
         [action A]\ngroup = S\ntrivial = true\npoints = 2\n\n[groupoid Y]\ndelooping = G\n\n\
         [cocycle w]\ngroup = G\nschur = nontrivial\n\n[task]\nschur G\ndegrees S\n\
         quotient A\nproj-irreps G w\ntwisted-algebra Y w\nsections-vs-projreps Y w dim=2\n",
    )
    .unwrap();
    let bin = env!("CARGO_BIN_EXE_crystalline");
    let run = |fmt: &str| {
        let out = std::process::Command::new(bin)
            .arg(&ws)
            .arg(format!("--format={fmt}"))
            .output()
            .unwrap();
        assert!(out.status.success(), "exit: {:?}", out.status);
        out.stdout
    };
    for fmt in ["text", "json-like"] {
        let a = run(fmt);
        let b = run(fmt);
        assert_eq!(a, b, "{fmt} output not byte-identical");
        assert!(!a.is_empty());
    }
    pass(10, "workspace reports byte-identical across runs");
}

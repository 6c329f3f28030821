//! Randomized invariants over the cochain complex and the workspace format.

use proptest::prelude::*;

use crystalline::cohomology::{coboundary, Cochain, CoeffModule};
use crystalline::group::FiniteGroup;
use crystalline::workspace::{format_doc, parse};

fn corpus_group(idx: usize) -> std::sync::Arc<FiniteGroup> {
    let names = ["Zn(2)", "Zn(3)", "Zn(4)", "Zn(6)", "Sym(3)", "Z2xZ2", "Q8"];
    FiniteGroup::builtin(names[idx % names.len()]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// d(d(c)) = 0 for arbitrary normalized cochains in degrees 0 and 1.
    #[test]
    fn coboundary_squares_to_zero(
        gidx in 0usize..7,
        degree in 0usize..2,
        modulus in 2u64..7,
        seed in any::<u64>(),
    ) {
        let g = corpus_group(gidx);
        let module = CoeffModule::zn(modulus);
        let slots = (g.order() - 1).pow(degree as u32);
        let mut state = seed;
        let values: Vec<Vec<i64>> = (0..slots)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                vec![(state >> 33) as i64 % modulus as i64]
            })
            .collect();
        let c = Cochain::new(g, module, degree, values).unwrap();
        let dd = coboundary(&coboundary(&c));
        prop_assert!(dd.is_zero());
    }

    /// Parsing is stable under print: parse(print(parse(text))) = parse(text).
    #[test]
    fn format_parse_roundtrip(n in 1usize..8, trivial in any::<bool>()) {
        let text = format!(
            "version = 1\n\n[group G]\nbuiltin = Zn({n})\n\n[action A]\ngroup = G\n\
             trivial = {trivial}\npoints = 3\n\n[task]\nquotient A\ndegrees G\n"
        );
        let doc = parse(&text).unwrap();
        let printed = format_doc(&doc);
        let doc2 = parse(&printed).unwrap();
        prop_assert!(doc == doc2);
    }
}

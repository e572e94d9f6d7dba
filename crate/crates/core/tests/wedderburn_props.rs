mod common;

use common::{build, permutation, relabel, small_spec};
use proptest::prelude::*;
use zgsep::analysis::{analyze_group, AnalysisOptions};
use zgsep::group::cyclotomic_classes;
use zgsep::wedderburn::{character_oracle, decompose, GroupAlgebraElement};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn idempotents_are_primitive_central(spec in small_spec()) {
        let g = build(&spec);
        let n = g.order();
        let comps = decompose(&g, 256).unwrap();
        let mut sum = GroupAlgebraElement::zero(n);
        for (i, c) in comps.iter().enumerate() {
            let e = &c.pair.e;
            prop_assert!(e.is_idempotent(&g));
            prop_assert!(e.is_central(&g));
            let (num, den) = e.coefficient_parts(0);
            prop_assert_eq!(num * n as i128, den * c.q_dimension as i128);
            prop_assert!(c.crossed_product.verify_cocycle());
            for d in &comps[i + 1..] {
                prop_assert!(e.mul(&g, &d.pair.e).is_zero());
            }
            sum = sum.add(e);
        }
        prop_assert_eq!(sum, GroupAlgebraElement::one(n));
        prop_assert_eq!(comps.len(), cyclotomic_classes(&g).len());
        prop_assert_eq!(comps.iter().map(|c| c.q_dimension).sum::<usize>(), n);
    }

    #[test]
    fn oracle_agrees(spec in small_spec()) {
        let g = build(&spec);
        let o = character_oracle(&g).unwrap();
        prop_assert_eq!(o.degree_square_sum(), g.order());
    }

    #[test]
    fn relabeling_keeps_the_decomposition(spec in small_spec(), seed in any::<u64>()) {
        let g = build(&spec);
        let h = relabel(&g, &permutation(g.order(), seed));
        let opts = AnalysisOptions::default();
        let a = analyze_group(&g, "G", 0, &opts).unwrap();
        let b = analyze_group(&h, "G", 0, &opts).unwrap();
        prop_assert_eq!(a.component_multiset(), b.component_multiset());
        prop_assert_eq!(a.decomposition, b.decomposition);
        prop_assert_eq!(a.verdict.value, b.verdict.value);
    }
}

#[test]
fn decomposition_is_deterministic() {
    let opts = AnalysisOptions::default();
    for spec in ["sdp(3,8,2)", "DD+", "Q8 x C7", "D8YQ8"] {
        let g = build(spec);
        let a = serde_json::to_string(&analyze_group(&g, spec, 0, &opts).unwrap()).unwrap();
        let b = serde_json::to_string(&analyze_group(&g, spec, 0, &opts).unwrap()).unwrap();
        assert_eq!(a, b, "{spec}");
    }
}

#[test]
fn catalog_relabeling() {
    use zgsep::analysis::peel_c2;
    use zgsep::catalog::catalog;
    use zgsep::presentation::{parse_spec, resolve};
    let opts = AnalysisOptions {
        oracle: false,
        ..AnalysisOptions::default()
    };
    for e in catalog() {
        let s = parse_spec(&e.spec).unwrap();
        if peel_c2(&s).1 > 0 {
            continue;
        }
        let g = resolve(&s).unwrap();
        let h = relabel(&g, &permutation(g.order(), 7));
        let a = analyze_group(&g, "G", 0, &opts).unwrap();
        let b = analyze_group(&h, "G", 0, &opts).unwrap();
        assert_eq!(a.component_multiset(), b.component_multiset(), "{}", e.name);
        assert_eq!(a.verdict.value, b.verdict.value, "{}", e.name);
    }
}

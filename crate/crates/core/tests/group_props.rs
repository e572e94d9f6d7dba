mod common;

use common::{build, permutation, relabel, small_spec};
use proptest::prelude::*;
use zgsep::group::{
    center, conjugacy_classes, cyclotomic_classes, derived_subgroup, is_isomorphic, normal_subgroups, normalizer, quotient,
    semidirect_cyclic, subgroups, DEFAULT_SUBGROUP_CAP,
};
use zgsep::presentation::{parse_spec, resolve};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn classes_partition(spec in small_spec()) {
        let g = build(&spec);
        let classes = conjugacy_classes(&g);
        let total: usize = classes.iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(total, g.order());
        let cyc = cyclotomic_classes(&g);
        prop_assert!(classes.len() >= cyc.len());
        let covered: usize = cyc.iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(covered, g.order());
        let idx = g.class_index();
        for c in &cyc {
            let x = c.representative;
            let o = g.elem_order(x);
            for t in (1..=o).filter(|&t| num_integer::gcd(t, o) == 1) {
                let k = idx[g.pow(x, t as i64)];
                prop_assert!(c.conjugacy_classes.contains(&k));
            }
        }
    }

    #[test]
    fn subgroups_check_out(spec in small_spec()) {
        let g = build(&spec);
        for s in subgroups(&g, DEFAULT_SUBGROUP_CAP).unwrap() {
            prop_assert_eq!(g.order() % s.order(), 0);
            prop_assert!(s.contains(g.identity()));
            for &a in s.elements() {
                prop_assert!(s.contains(g.inv(a)));
                for &b in s.elements() {
                    prop_assert!(s.contains(g.mul(a, b)));
                }
            }
            prop_assert!(s.is_subgroup_of(&normalizer(&g, &s)));
        }
    }

    #[test]
    fn quotients_project(spec in small_spec()) {
        let g = build(&spec);
        for n in normal_subgroups(&g, DEFAULT_SUBGROUP_CAP).unwrap() {
            let q = quotient(&g, n.set()).unwrap();
            prop_assert_eq!(q.group.order() * n.order(), g.order());
            for x in g.elements() {
                for y in g.elements() {
                    prop_assert_eq!(q.projection[g.mul(x, y)], q.group.mul(q.projection[x], q.projection[y]));
                }
            }
        }
    }

    #[test]
    fn isomorphism_witnesses(spec in small_spec(), seed in any::<u64>()) {
        let g = build(&spec);
        let h = relabel(&g, &permutation(g.order(), seed));
        for (a, b) in [(&g, &g), (&g, &h), (&h, &g)] {
            let w = is_isomorphic(a, b).expect("isomorphic copies");
            for x in a.elements() {
                for y in a.elements() {
                    prop_assert_eq!(w[a.mul(x, y)], b.mul(w[x], w[y]));
                }
            }
        }
        prop_assert_eq!(center(&g).order(), center(&h).order());
        prop_assert_eq!(derived_subgroup(&g).order(), derived_subgroup(&h).order());
    }
}

#[test]
fn non_isomorphic_same_order() {
    let d8 = build("D8");
    let q8 = build("Q8");
    assert!(is_isomorphic(&d8, &q8).is_none());
    assert!(is_isomorphic(&build("C4 x C2"), &build("C8")).is_none());
    assert!(is_isomorphic(&build("D16+"), &semidirect_cyclic(8, 2, 5).unwrap()).is_some());
}

#[test]
fn spec_round_trip() {
    for s in ["Q8 x C2^3", "sdp(3,8,2)", "DD+", "D16-", "y(D8,Q8)", "H1", "(C4 x C4) / <a^2 a_2^2>", "<a,b | a^4, b^2, b a b^-1 = a^-1>"] {
        let ast = parse_spec(s).unwrap();
        let again = parse_spec(&ast.to_string()).unwrap();
        assert_eq!(ast, again, "{s}");
    }
}

#[test]
fn bad_specs_are_errors() {
    for s in ["", "Q7", "sdp(5,2,2)", "C0", "Q8 x", "<a | a^"] {
        let parsed = parse_spec(s);
        assert!(parsed.is_err() || resolve(&parsed.unwrap()).is_err(), "{s}");
    }
}

mod common;

use common::{build, small_spec};
use num_bigint::BigInt;
use proptest::prelude::*;
use zgsep::analysis::{analyze, analyze_group, AnalysisOptions};
use zgsep::catalog::catalog;
use zgsep::claims::closure_violations;
use zgsep::classify::{division_status, ComponentClass, DivisionCriterion, DivisionStatus, VerdictValue, TAG_Q8_CP};
use zgsep::numbers::{ramified_places, AbelianFieldDescriptor, Cyclotomic, QuaternionSymbol, Rational, SignConfig};

#[test]
fn verdict_matches_membership_on_catalog() {
    let opts = AnalysisOptions {
        oracle: false,
        ..AnalysisOptions::default()
    };
    for e in catalog() {
        let r = analyze(&e.spec, &opts).unwrap();
        let v = r.verdict.value;
        match r.theorem_membership {
            Some(t) if t == TAG_Q8_CP || t == "D8YQ8" => assert_eq!(v, VerdictValue::OpenCase, "{}", e.name),
            Some(_) => assert_eq!(v, VerdictValue::SubgroupSeparable, "{}", e.name),
            None => assert!(!matches!(v, VerdictValue::SubgroupSeparable | VerdictValue::OpenCase), "{}: {v:?}", e.name),
        }
        if let Some(exp) = &e.expected_verdict {
            assert_eq!(v, exp.value, "{}", e.name);
        }
        for c in &r.components {
            assert!(!r.verdict.reason.rules.is_empty());
            if c.class == ComponentClass::Field {
                assert_eq!(c.matrix_degree, Some(1));
                assert_eq!(c.division.kind, "field");
            }
            assert_eq!(c.vc, Some(c.class.is_vc()), "{}: {}", e.name, c.display);
        }
    }
}

fn abelian_spec() -> impl Strategy<Value = String> {
    prop::collection::vec(1usize..=12, 1..=3)
        .prop_filter("order", |v| v.iter().product::<usize>() <= 200)
        .prop_map(|v| v.iter().map(|n| format!("C{n}")).collect::<Vec<_>>().join(" x "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn abelian_groups_are_separable(spec in abelian_spec()) {
        let r = analyze(&spec, &AnalysisOptions::default()).unwrap();
        prop_assert_eq!(r.verdict.value, VerdictValue::SubgroupSeparable);
        prop_assert!(r.components.iter().all(|c| c.class == ComponentClass::Field && c.vc == Some(true)));
        prop_assert_eq!(r.verdict.reason.non_vc_count.unwrap_or(0), 0);
    }

    #[test]
    fn rational_quaternions_follow_reciprocity(a in -60i64..=60, b in -60i64..=60) {
        prop_assume!(a != 0 && b != 0);
        let q = QuaternionSymbol::new(AbelianFieldDescriptor::rationals(), Cyclotomic::from_integer(a), Cyclotomic::from_integer(b)).unwrap();
        let ram = ramified_places(&Rational::from_integer(BigInt::from(a)), &Rational::from_integer(BigInt::from(b)));
        for criterion in [DivisionCriterion::Local, DivisionCriterion::Paper] {
            let (status, _) = division_status(&q, criterion, &SignConfig::default());
            prop_assert_eq!(status == DivisionStatus::Division, ram.len() >= 2);
            prop_assert!(status != DivisionStatus::Unknown);
        }
    }

    #[test]
    fn separable_groups_are_closed(spec in small_spec()) {
        let g = build(&spec);
        let opts = AnalysisOptions { oracle: false, ..AnalysisOptions::default() };
        let r = analyze_group(&g, &spec, 0, &opts).unwrap();
        if r.verdict.value == VerdictValue::SubgroupSeparable {
            let (_, bad) = closure_violations(&g, &opts).unwrap();
            prop_assert!(bad.is_empty(), "{:?}", bad);
        }
    }
}

#[test]
fn criteria_disagree_only_at_73() {
    let s = SignConfig::default();
    for p in [3usize, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 47, 73] {
        let h = QuaternionSymbol::hamiltonian(AbelianFieldDescriptor::cyclotomic(p));
        let local = division_status(&h, DivisionCriterion::Local, &s).0;
        let paper = division_status(&h, DivisionCriterion::Paper, &s).0;
        let expected = if p % 8 == 7 { DivisionStatus::Division } else { DivisionStatus::Split };
        assert_eq!(paper, expected, "p = {p}");
        if p != 73 {
            assert_eq!(local, paper, "p = {p}");
        } else {
            assert_ne!(local, paper);
        }
    }
}

#[test]
fn bianchi_flag_widens() {
    // M2(Q(sqrt -7)) is non-VC; with the widening it counts as separable
    let mut opts = AnalysisOptions::default();
    let off = analyze("D14 x C2", &opts).unwrap().verdict.value;
    opts.classify.bianchi_extension = true;
    let on = analyze("D14 x C2", &opts).unwrap().verdict.value;
    assert_eq!(off, VerdictValue::NotSubgroupSeparable);
    assert_eq!(on, VerdictValue::NotSubgroupSeparable);
}

//! The reproduction suite behind `verify-paper`: one claim per checked fact.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{analyze_group, analyze_spec, peel_c2, AnalysisOptions, AnalysisReport};
use crate::catalog::{catalog, CatalogEntry, ORDER_18};
use crate::classify::{
    division_status, is_totally_definite, ComponentClass, DivisionCriterion, DivisionStatus, VerdictValue,
};
use crate::group::{dicyclic, is_isomorphic, normal_subgroups, quotient, subgroup_classes, FiniteGroup};
use crate::numbers::{
    hilbert_symbol_q, prime_factors, ramified_places, AbelianFieldDescriptor, Cyclotomic, Place, QuaternionSymbol,
    Rational, SignConfig,
};
use crate::presentation::{parse_spec, resolve_with, ResolveOptions};
use crate::wedderburn::{strong_shoda_pairs, GroupAlgebraElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    Match,
    Mismatch,
    /// Shown without asserting either answer.
    Reported,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub criterion: u8,
    pub claim: String,
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub outcome: Outcome,
}

fn claim(criterion: u8, name: impl Into<String>, anchor: &str, expected: impl Into<String>, computed: impl Into<String>, ok: bool) -> Claim {
    Claim {
        criterion,
        claim: name.into(),
        anchor: anchor.to_string(),
        expected: expected.into(),
        computed: computed.into(),
        outcome: if ok { Outcome::Match } else { Outcome::Mismatch },
    }
}

/// Every catalog entry analyzed once, in catalog order.
pub struct Suite {
    pub options: AnalysisOptions,
    pub entries: Vec<CatalogEntry>,
    pub reports: Vec<Result<AnalysisReport, String>>,
}

impl Suite {
    pub fn new(options: AnalysisOptions) -> Self {
        let entries = catalog();
        let reports = entries
            .par_iter()
            .map(|e| {
                parse_spec(&e.spec)
                    .map_err(crate::Error::from)
                    .and_then(|s| analyze_spec(&s, &options))
                    .map_err(|err| err.to_string())
            })
            .collect();
        Suite {
            options,
            entries,
            reports,
        }
    }

    pub fn report(&self, spec: &str) -> Option<&Result<AnalysisReport, String>> {
        self.entries.iter().position(|e| e.spec == spec).map(|i| &self.reports[i])
    }
}

fn normalize(s: &str) -> String {
    s.replace('−', "-")
}

/// Multiset of the terms of `16Q ⊕ M2(H(Q))`, with counts split off.
pub fn parse_decomposition(s: &str) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for t in normalize(s).split('⊕') {
        let t = t.trim();
        let digits = t.chars().take_while(|c| c.is_ascii_digit()).count();
        let (n, rest) = if digits == 0 { (1, t) } else { (t[..digits].parse().unwrap_or(1), &t[digits..]) };
        *out.entry(rest.to_string()).or_insert(0) += n;
    }
    out
}

fn decomposition_claim(criterion: u8, e: &CatalogEntry, r: &Result<AnalysisReport, String>, anchor: &str) -> Option<Claim> {
    let expected = e.expected_decomposition.as_ref()?;
    let (computed, ok) = match r {
        Ok(r) => (r.decomposition.clone(), parse_decomposition(&r.decomposition) == parse_decomposition(&expected.value)),
        Err(err) => (format!("error: {err}"), false),
    };
    Some(claim(criterion, format!("Q{}", e.name), anchor, expected.value.clone(), computed, ok))
}

/// Displayed decompositions: cyclic, dihedral, generalized quaternion and the five named 2-groups.
pub fn criterion_1(suite: &Suite) -> Vec<Claim> {
    use crate::catalog::{Family, Origin};
    suite
        .entries
        .iter()
        .zip(&suite.reports)
        .filter(|(e, _)| {
            e.expected_decomposition.as_ref().is_some_and(|x| x.origin == Origin::Displayed)
                && !matches!(e.family, Family::Q8TimesCp)
        })
        .filter_map(|(e, r)| decomposition_claim(1, e, r, "displayed decompositions"))
        .collect()
}

/// Decompositions written out in the proof of the classification.
pub fn criterion_2(suite: &Suite) -> Vec<Claim> {
    let mut out = Vec::new();
    for spec in [ORDER_18, "sdp(3,8,2)"] {
        let i = suite.entries.iter().position(|e| e.spec == spec).expect("bundled");
        if let Some(c) = decomposition_claim(2, &suite.entries[i], &suite.reports[i], "proof of the classification") {
            out.push(c);
        }
    }
    let r = suite.report("sdp(3,8,2)").expect("bundled");
    let find = |display: &str| -> String {
        match r {
            Ok(r) => r
                .components
                .iter()
                .find(|c| normalize(&c.display) == display)
                .map(|c| format!("{:?}, VC={:?}", c.class, c.vc))
                .unwrap_or_else(|| "absent".into()),
            Err(e) => format!("error: {e}"),
        }
    };
    let td = find("(-1,-3/Q)");
    out.push(claim(
        2,
        "(−1,−3/Q) in QC3⋊C8 is a totally definite division algebra",
        "proof of the classification",
        "TotallyDefiniteQuaternion, VC",
        td.clone(),
        td == format!("{:?}, VC={:?}", ComponentClass::TotallyDefiniteQuaternion, Some(true)),
    ));
    let nvc = find("(i,-3/Q(i))");
    out.push(claim(
        2,
        "(i,−3/Q(i)) in QC3⋊C8 is not VC",
        "proof of the classification",
        "VC=false",
        nvc.clone(),
        nvc.ends_with("VC=Some(false)"),
    ));
    out
}

/// Verdicts for every catalog group carrying an expected verdict.
pub fn criterion_3(suite: &Suite) -> Vec<Claim> {
    suite
        .entries
        .iter()
        .zip(&suite.reports)
        .filter_map(|(e, r)| {
            let expected = e.expected_verdict.as_ref()?;
            let (computed, ok) = match r {
                Ok(r) => (r.verdict.value.to_string(), r.verdict.value == expected.value),
                Err(err) => (format!("error: {err}"), false),
            };
            Some(claim(3, e.name.clone(), "classification of subgroup separable unit groups", expected.value.to_string(), computed, ok))
        })
        .collect()
}

fn status_pair(q: &QuaternionSymbol) -> (DivisionStatus, DivisionStatus) {
    let s = SignConfig::default();
    (
        division_status(q, DivisionCriterion::Local, &s).0,
        division_status(q, DivisionCriterion::Paper, &s).0,
    )
}

/// Division or splitting of the quaternion algebras the proofs rely on.
pub fn criterion_4() -> Vec<Claim> {
    use DivisionStatus::*;
    let mut out = Vec::new();
    let mut cases: Vec<(String, QuaternionSymbol, DivisionStatus)> = Vec::new();
    for p in [7usize, 23, 31] {
        cases.push((format!("H(Q(ζ{p}))"), QuaternionSymbol::hamiltonian(AbelianFieldDescriptor::cyclotomic(p)), Division));
    }
    for p in [3usize, 5, 13, 17] {
        cases.push((format!("H(Q(ζ{p}))"), QuaternionSymbol::hamiltonian(AbelianFieldDescriptor::cyclotomic(p)), Split));
    }
    cases.push(("H(Q(i))".into(), QuaternionSymbol::hamiltonian(AbelianFieldDescriptor::cyclotomic(4)), Split));
    cases.push(("H(Q(√−3))".into(), QuaternionSymbol::hamiltonian(AbelianFieldDescriptor::cyclotomic(3)), Split));
    let q2 = QuaternionSymbol::new(AbelianFieldDescriptor::rationals(), Cyclotomic::from_integer(-1), Cyclotomic::from_integer(-3))
        .expect("valid symbol");
    cases.push(("(−1,−3/Q)".into(), q2.clone(), Division));
    for (name, q, expected) in cases {
        let (local, paper) = status_pair(&q);
        out.push(claim(
            4,
            name,
            "split criterion for H(Q(ζn)) and the simple components of Q8×Cp",
            format!("{expected:?} under both criteria"),
            format!("local {local:?}, paper {paper:?}"),
            local == expected && paper == expected,
        ));
    }
    let td = is_totally_definite(&q2, &SignConfig::default()).unwrap_or(false);
    out.push(claim(4, "(−1,−3/Q) is totally definite", "proof of the classification", "true", td.to_string(), td));
    let h73 = QuaternionSymbol::hamiltonian(AbelianFieldDescriptor::cyclotomic(73));
    let (local, paper) = status_pair(&h73);
    out.push(Claim {
        criterion: 4,
        claim: "H(Q(ζ73))".into(),
        anchor: "split criterion for H(Q(ζn))".into(),
        expected: "reported, not asserted".into(),
        computed: format!("local {local:?}, paper {paper:?}"),
        outcome: Outcome::Reported,
    });
    out
}

/// Oracle agreement on every catalog group.
pub fn criterion_5(suite: &Suite) -> Vec<Claim> {
    suite
        .entries
        .iter()
        .zip(&suite.reports)
        .map(|(e, r)| {
            let (computed, ok) = match r {
                Ok(r) => match &r.oracle {
                    Some(o) => (
                        format!(
                            "{} components, {} orbits, {} classes, dim {}",
                            o.components,
                            o.rational_orbits,
                            o.cyclotomic_classes,
                            r.total_dimension()
                        ),
                        o.components == o.rational_orbits
                            && o.rational_orbits == o.cyclotomic_classes
                            && o.dimensions_match
                            && r.total_dimension() == r.group.order
                            && r.components.iter().map(|c| c.multiplicity).sum::<usize>() == o.components,
                    ),
                    None => ("oracle off".into(), false),
                },
                Err(err) => (format!("error: {err}"), false),
            };
            claim(5, e.name.clone(), "character oracle", "components = orbits = classes, dims sum to |G|", computed, ok)
        })
        .collect()
}

/// Coset enumeration on the bundled presentations.
pub fn criterion_6(opts: &AnalysisOptions) -> Vec<Claim> {
    let ropts = ResolveOptions {
        max_order: opts.max_order,
        ..ResolveOptions::default()
    };
    let build = |s: &str| parse_spec(s).map_err(crate::Error::from).and_then(|g| resolve_with(&g, &ropts));
    let mut out = Vec::new();
    for (spec, name, n) in [("DD", "|𝒟|", 16usize), ("DD+", "|𝒟+|", 32)] {
        let computed = match build(spec) {
            Ok(g) => g.order().to_string(),
            Err(e) => format!("error: {e}"),
        };
        out.push(claim(6, name, "presentations of 𝒟 and 𝒟+", n.to_string(), computed.clone(), computed == n.to_string()));
    }
    let (computed, ok) = match build("H1") {
        Ok(g) => {
            let iso = is_isomorphic(&g, &dicyclic(16).expect("Q16")).is_some();
            (format!("order {}, isomorphic to Q16: {iso}", g.order()), iso)
        }
        Err(e) => (format!("error: {e}"), false),
    };
    out.push(claim(6, "H1 ≅ Q16", "presentation of H_n", "isomorphic to Q16", computed, ok));
    out
}

/// Checks `e^2 = e`, centrality, orthogonality and `sum e = 1` directly.
pub fn idempotent_laws(g: &FiniteGroup, cap: usize) -> Result<usize, String> {
    let pairs = strong_shoda_pairs(g, cap).map_err(|e| e.to_string())?;
    let n = g.order();
    let mut total = GroupAlgebraElement::zero(n);
    for (i, p) in pairs.iter().enumerate() {
        let e = &p.e;
        if e.mul(g, e) != *e {
            return Err(format!("e_{i} is not idempotent"));
        }
        for x in g.elements() {
            let gx = GroupAlgebraElement::element(n, x);
            if gx.mul(g, e) != e.mul(g, &gx) {
                return Err(format!("e_{i} does not commute with element {x}"));
            }
        }
        for (j, q) in pairs[..i].iter().enumerate() {
            if !e.mul(g, &q.e).is_zero() {
                return Err(format!("e_{i} e_{j} != 0"));
            }
        }
        total = total.add(e);
    }
    if total != GroupAlgebraElement::one(n) {
        return Err("idempotents do not sum to 1".into());
    }
    Ok(pairs.len())
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-300..=300);
        let d: i64 = rng.gen_range(1..=60);
        if n != 0 {
            return Rational::new(n.into(), d.into());
        }
    }
}

/// Places at which a Hilbert symbol over `Q` can be `-1`.
fn candidate_places(a: &Rational, b: &Rational) -> Vec<Place> {
    let mut places = vec![Place::Infinity, Place::Prime(2)];
    for x in [a.numer(), a.denom(), b.numer(), b.denom()] {
        let v: i64 = x.try_into().expect("small");
        for (p, _) in prime_factors(v.unsigned_abs()) {
            if p != 2 && !places.contains(&Place::Prime(p)) {
                places.push(Place::Prime(p));
            }
        }
    }
    places
}

/// Product formula on random pairs, and agreement with the division test over `Q`.
pub fn reciprocity(samples: usize, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = random_rational(&mut rng);
        let b = random_rational(&mut rng);
        let product: i32 = candidate_places(&a, &b).iter().map(|&v| hilbert_symbol_q(&a, &b, v)).product();
        if product != 1 {
            return Err(format!("({a},{b}): product of local symbols is {product}"));
        }
        let ramified = ramified_places(&a, &b);
        let q = QuaternionSymbol::new(
            AbelianFieldDescriptor::rationals(),
            Cyclotomic::from_rational(a.clone()),
            Cyclotomic::from_rational(b.clone()),
        )
        .map_err(|e| e.to_string())?;
        let (status, _) = division_status(&q, DivisionCriterion::Local, &SignConfig::default());
        let division = status == DivisionStatus::Division;
        if division != (ramified.len() >= 2) || ramified.len() % 2 == 1 {
            return Err(format!("({a},{b}): {status:?} with ramification {ramified:?}"));
        }
    }
    Ok(samples)
}

/// Largest materialized order whose subgroups and quotients are enumerated.
pub const CLOSURE_MAX_ORDER: usize = 64;

/// Verdicts of all subgroups (up to conjugacy) and quotients of `g`, none of
/// which may be `NotSubgroupSeparable` when `g` is separable.
pub fn closure_violations(g: &FiniteGroup, opts: &AnalysisOptions) -> Result<(usize, Vec<String>), String> {
    let opts = AnalysisOptions { oracle: false, ..*opts };
    let cap = opts.max_order.max(g.order());
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut visit = |h: &FiniteGroup, what: String| -> Result<(), String> {
        let r = analyze_group(h, &what, 0, &opts).map_err(|e| format!("{what}: {e}"))?;
        checked += 1;
        if r.verdict.value == VerdictValue::NotSubgroupSeparable {
            bad.push(format!("{what} ({})", r.decomposition));
        }
        Ok(())
    };
    for class in subgroup_classes(g, cap).map_err(|e| e.to_string())? {
        let s = &class.representative;
        if s.order() == 1 || s.order() == g.order() {
            continue;
        }
        let (h, _) = s.as_group(g, format!("subgroup of order {}", s.order()));
        let label = h.label().to_string();
        visit(&h, label)?;
    }
    for nsub in normal_subgroups(g, cap).map_err(|e| e.to_string())? {
        if nsub.order() == 1 || nsub.order() == g.order() {
            continue;
        }
        let q = quotient(g, nsub.set()).map_err(|e| e.to_string())?.group;
        visit(&q, format!("quotient by a normal subgroup of order {}", nsub.order()))?;
    }
    Ok((checked, bad))
}

/// Idempotent laws, reciprocity, and the closure invariant.
pub fn criterion_7(suite: &Suite) -> Vec<Claim> {
    let opts = &suite.options;
    let ropts = ResolveOptions {
        max_order: opts.max_order,
        ..ResolveOptions::default()
    };
    let mut out: Vec<Claim> = suite
        .entries
        .par_iter()
        .map(|e| {
            let result = parse_spec(&e.spec)
                .map_err(|x| x.to_string())
                .and_then(|s| resolve_with(&peel_c2(&s).0, &ropts).map_err(|x| x.to_string()))
                .and_then(|g| idempotent_laws(&g, opts.max_order.max(g.order())));
            let (computed, ok) = match result {
                Ok(k) => (format!("{k} idempotents"), true),
                Err(err) => (err, false),
            };
            claim(7, format!("idempotents of Q{}", e.name), "strong Shoda pair idempotents", "laws hold", computed, ok)
        })
        .collect();
    let (computed, ok) = match reciprocity(500, 0x5eed) {
        Ok(n) => (format!("{n} pairs"), true),
        Err(err) => (err, false),
    };
    out.push(claim(7, "Hilbert reciprocity", "Hilbert symbols over Q", "500 random pairs", computed, ok));
    let separable: Vec<(&CatalogEntry, FiniteGroup)> = suite
        .entries
        .iter()
        .zip(&suite.reports)
        .filter(|(_, r)| r.as_ref().is_ok_and(|r| r.verdict.value == VerdictValue::SubgroupSeparable))
        .filter_map(|(e, _)| {
            let spec = parse_spec(&e.spec).ok()?;
            if peel_c2(&spec).1 > 0 || spec.order_hint().is_some_and(|n| n > CLOSURE_MAX_ORDER as u128) {
                return None;
            }
            let g = resolve_with(&spec, &ropts).ok()?;
            (g.order() <= CLOSURE_MAX_ORDER).then_some((e, g))
        })
        .collect();
    let closure: Vec<Claim> = separable
        .par_iter()
        .map(|(e, g)| {
            let (computed, ok) = match closure_violations(g, opts) {
                Ok((n, bad)) if bad.is_empty() => (format!("{n} subgroups and quotients"), true),
                Ok((_, bad)) => (bad.join("; "), false),
                Err(err) => (err, false),
            };
            claim(
                7,
                format!("closure under subgroups and quotients of {}", e.name),
                "the class is closed under subgroups and epimorphic images",
                "no NotSubgroupSeparable subgroup or quotient",
                computed,
                ok,
            )
        })
        .collect();
    out.extend(closure);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PaperReport {
    pub claims: Vec<Claim>,
}

impl PaperReport {
    pub fn mismatches(&self) -> usize {
        self.claims.iter().filter(|c| c.outcome == Outcome::Mismatch).count()
    }

    pub fn criterion_passed(&self, n: u8) -> bool {
        self.claims.iter().any(|c| c.criterion == n)
            && self.claims.iter().filter(|c| c.criterion == n).all(|c| c.outcome != Outcome::Mismatch)
    }

    pub fn render_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<3} {:<44} {:<48} {:<52} match", "#", "claim", "anchor", "computed");
        for c in &self.claims {
            let m = match c.outcome {
                Outcome::Match => "yes",
                Outcome::Mismatch => "NO",
                Outcome::Reported => "reported",
            };
            let _ = writeln!(s, "{:<3} {:<44} {:<48} {:<52} {m}", c.criterion, c.claim, c.anchor, c.computed);
            if c.outcome == Outcome::Mismatch {
                let _ = writeln!(s, "    expected: {}", c.expected);
            }
        }
        let _ = writeln!(s, "{} claims, {} mismatches", self.claims.len(), self.mismatches());
        s
    }
}

/// Runs all seven groups of claims.
pub fn verify_paper(opts: &AnalysisOptions) -> PaperReport {
    let suite = Suite::new(*opts);
    let mut claims = criterion_1(&suite);
    claims.extend(criterion_2(&suite));
    claims.extend(criterion_3(&suite));
    claims.extend(criterion_4());
    claims.extend(criterion_5(&suite));
    claims.extend(criterion_6(opts));
    claims.extend(criterion_7(&suite));
    PaperReport { claims }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_terms() {
        let m = parse_decomposition("16Q ⊕ M2(H(Q))");
        assert_eq!(m.get("Q"), Some(&16));
        assert_eq!(m.get("M2(H(Q))"), Some(&1));
        assert_eq!(parse_decomposition("(−1,−3/Q)"), parse_decomposition("(-1,-3/Q)"));
    }

    #[test]
    fn reciprocity_holds() {
        assert_eq!(reciprocity(50, 1), Ok(50));
    }
}

//! The end-to-end pipeline: resolve, decompose, classify, decide, cross-check.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::classify::{
    classify_component, theorem_membership, verdict, ClassifiedComponent, ClassifyConfig, ComponentClass,
    DivisionCriterion, DivisionStatus, Tier, Verdict,
};
use crate::group::{abelian_invariants, center, FiniteGroup, GroupError};
use crate::numbers::{prime_factors, AbelianFieldDescriptor};
use crate::presentation::{parse_spec, resolve_with, todd_coxeter, GroupSpec, Presentation, ResolveOptions, DEFAULT_MAX_COSETS};
use crate::wedderburn::{cross_check, decompose};
use crate::Result;

pub const SCHEMA_VERSION: &str = "1";

/// Above this order, direct factors `C2` are split off before materializing.
pub const PEEL_THRESHOLD: u128 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub max_order: usize,
    pub classify: ClassifyConfig,
    pub oracle: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            max_order: 256,
            classify: ClassifyConfig::default(),
            oracle: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupMetadata {
    pub label: String,
    pub order: usize,
    /// Invariant factors of `G/G'`.
    pub abelianization: Vec<usize>,
    pub center_order: usize,
    /// Number of direct factors `C2` split off; the algebra is `2^k` copies
    /// of the algebra of the remaining core.
    pub peeled_c2: u32,
    pub core_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterReport {
    pub name: String,
    pub conductor: usize,
    pub subgroup: Vec<usize>,
    pub degree: usize,
}

impl CenterReport {
    fn new(f: &AbelianFieldDescriptor) -> Self {
        CenterReport {
            name: f.pretty(),
            conductor: f.conductor(),
            subgroup: f.subgroup().to_vec(),
            degree: f.degree(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionAnswer {
    pub criterion: DivisionCriterion,
    pub status: DivisionStatus,
    pub tier: Tier,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisionReport {
    pub kind: String,
    pub symbol: Option<String>,
    pub status: Option<DivisionStatus>,
    pub tier: Option<Tier>,
    pub totally_definite: Option<bool>,
    /// The other division criterion, present only when it disagrees.
    pub other_criterion: Option<CriterionAnswer>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub display: String,
    pub multiplicity: usize,
    /// Matrix degree over the division part after splitting.
    pub matrix_degree: Option<usize>,
    pub center: CenterReport,
    pub division: DivisionReport,
    pub class: ComponentClass,
    pub q_dimension: usize,
    /// `None` when the class is not settled.
    pub vc: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub prime: u64,
    pub group_order: usize,
    pub components: usize,
    pub rational_orbits: usize,
    pub cyclotomic_classes: usize,
    pub dimensions_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub max_order: usize,
    pub bianchi_extension: bool,
    pub division_criterion: DivisionCriterion,
    pub oracle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub schema_version: &'static str,
    pub group: GroupMetadata,
    pub components: Vec<ComponentReport>,
    pub decomposition: String,
    pub verdict: Verdict,
    pub theorem_membership: Option<&'static str>,
    pub oracle: Option<OracleReport>,
    pub notes: Vec<String>,
    pub flags: Flags,
}

impl AnalysisReport {
    /// Sum of `multiplicity * q_dimension`.
    pub fn total_dimension(&self) -> usize {
        self.components.iter().map(|c| c.multiplicity * c.q_dimension).sum()
    }

    /// Display strings with multiplicity, sorted.
    pub fn component_multiset(&self) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for c in &self.components {
            *m.entry(c.display.clone()).or_insert(0) += c.multiplicity;
        }
        m
    }
}

fn flatten(spec: &GroupSpec, out: &mut Vec<GroupSpec>) {
    match spec {
        GroupSpec::Product(a, b) => {
            flatten(a, out);
            flatten(b, out);
        }
        GroupSpec::Power(g, k) if **g == GroupSpec::Cyclic(2) => {
            out.extend(std::iter::repeat(GroupSpec::Cyclic(2)).take(*k as usize));
        }
        other => out.push(other.clone()),
    }
}

/// `(core, k)` with `spec = core x C2^k`, splitting only when the full order
/// is above the threshold.
pub fn peel_c2(spec: &GroupSpec) -> (GroupSpec, u32) {
    match spec.order_hint() {
        Some(n) if n > PEEL_THRESHOLD => {}
        _ => return (spec.clone(), 0),
    }
    let mut factors = Vec::new();
    flatten(spec, &mut factors);
    let k = factors.iter().filter(|f| **f == GroupSpec::Cyclic(2)).count() as u32;
    if k == 0 {
        return (spec.clone(), 0);
    }
    let core = factors
        .into_iter()
        .filter(|f| *f != GroupSpec::Cyclic(2))
        .reduce(|a, b| GroupSpec::Product(Box::new(a), Box::new(b)))
        .unwrap_or(GroupSpec::Cyclic(1));
    (core, k)
}

/// Invariant factors of `A x C2^k` from those of `A`.
fn add_c2_factors(inv: &[usize], k: u32) -> Vec<usize> {
    let mut by_prime: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for &q in inv {
        for (p, e) in prime_factors(q as u64) {
            by_prime.entry(p).or_default().push(p.pow(e) as usize);
        }
    }
    by_prime.entry(2).or_default().extend(std::iter::repeat(2).take(k as usize));
    let width = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1usize; width];
    for parts in by_prime.values_mut() {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        for (i, &q) in parts.iter().enumerate() {
            out[width - 1 - i] *= q;
        }
    }
    out
}

fn component_report(c: &ClassifiedComponent, multiplicity: usize, cfg: &ClassifyConfig) -> ComponentReport {
    let other = match cfg.criterion {
        DivisionCriterion::Local => DivisionCriterion::Paper,
        DivisionCriterion::Paper => DivisionCriterion::Local,
    };
    let division = match &c.quaternion {
        Some(q) => DivisionReport {
            kind: c.division_kind().into(),
            symbol: Some(q.symbol.to_string()),
            status: Some(q.status),
            tier: Some(q.tier),
            totally_definite: Some(q.totally_definite),
            other_criterion: q.other_criterion.map(|(status, tier)| CriterionAnswer {
                criterion: other,
                status,
                tier,
            }),
        },
        None => DivisionReport {
            kind: c.division_kind().into(),
            symbol: None,
            status: None,
            tier: None,
            totally_definite: None,
            other_criterion: None,
        },
    };
    ComponentReport {
        display: c.display.clone(),
        multiplicity,
        matrix_degree: c.class.matrix_degree(),
        center: CenterReport::new(&c.center),
        division,
        class: c.class,
        q_dimension: c.q_dimension,
        vc: c.is_vc(),
    }
}

/// `16Q ⊕ M2(H(Q))` style rendering, in component order.
pub fn decomposition_string(components: &[ComponentReport]) -> String {
    let mut terms: Vec<(String, usize)> = Vec::new();
    for c in components {
        match terms.iter_mut().find(|(d, _)| *d == c.display) {
            Some(t) => t.1 += c.multiplicity,
            None => terms.push((c.display.clone(), c.multiplicity)),
        }
    }
    terms
        .iter()
        .map(|(d, n)| if *n == 1 { d.clone() } else { format!("{n}{d}") })
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

/// Runs the pipeline on an already built group whose algebra is `2^peeled`
/// copies of `QG`.
pub fn analyze_group(core: &FiniteGroup, label: &str, peeled: u32, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let mult = 1usize << peeled;
    let comps = decompose(core, opts.max_order.max(core.order()))?;
    let cfg = &opts.classify;
    let mut classified = Vec::with_capacity(comps.len());
    for c in &comps {
        classified.push(classify_component(c, cfg)?);
    }
    let v = verdict(&classified, mult, cfg);
    let oracle = if opts.oracle {
        let check = cross_check(core, &comps)?;
        Some(OracleReport {
            prime: check.prime,
            group_order: core.order(),
            components: check.components * mult,
            rational_orbits: check.rational_orbits * mult,
            cyclotomic_classes: check.cyclotomic_classes * mult,
            dimensions_match: true,
        })
    } else {
        None
    };
    let mut order: Vec<usize> = (0..classified.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (&classified[a], &classified[b]);
        (x.q_dimension, x.center.conductor(), &x.display).cmp(&(y.q_dimension, y.center.conductor(), &y.display))
    });
    let components: Vec<ComponentReport> = order.iter().map(|&i| component_report(&classified[i], mult, cfg)).collect();
    // membership is only decidable on the materialized group
    let tag = if peeled == 0 {
        theorem_membership(core)
    } else if core.is_abelian() {
        Some(crate::classify::TAG_ABELIAN)
    } else if crate::group::is_hamiltonian(core) && core.order().is_power_of_two() {
        Some(crate::classify::TAG_HAMILTONIAN_2)
    } else {
        None
    };
    let mut notes = Vec::new();
    if peeled > 0 {
        notes.push(format!(
            "split off C2^{peeled}; components and the oracle were computed on the core {} of order {}",
            core.label(),
            core.order()
        ));
    }
    for c in &components {
        if let Some(o) = &c.division.other_criterion {
            notes.push(format!(
                "division criteria disagree on {}: {:?} gives {:?} ({})",
                c.division.symbol.as_deref().unwrap_or(&c.display),
                o.criterion,
                o.status,
                o.tier
            ));
        }
    }
    if tag == Some("Q12") {
        notes.push("the non-VC component M2(Q) of QQ12 is placed by this decomposition; no order-table row lists Q12".into());
    }
    let inv = add_c2_factors(&abelian_invariants(core), peeled);
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        group: GroupMetadata {
            label: label.to_string(),
            order: core.order() * mult,
            abelianization: inv,
            center_order: center(core).order() * mult,
            peeled_c2: peeled,
            core_order: core.order(),
        },
        decomposition: decomposition_string(&components),
        components,
        verdict: v,
        theorem_membership: tag,
        oracle,
        notes,
        flags: Flags {
            max_order: opts.max_order,
            bianchi_extension: cfg.bianchi_extension,
            division_criterion: cfg.criterion,
            oracle: opts.oracle,
        },
    })
}

pub fn analyze_spec(spec: &GroupSpec, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let (core_spec, k) = peel_c2(spec);
    let ropts = ResolveOptions {
        max_order: opts.max_order,
        ..ResolveOptions::default()
    };
    let core = resolve_with(&core_spec, &ropts)?;
    analyze_group(&core, &spec.to_string(), k, opts)
}

/// Parses and analyzes a group-spec string.
pub fn analyze(text: &str, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    analyze_spec(&parse_spec(text)?, opts)
}

/// Enumerates cosets of a presentation file and analyzes the result.
pub fn analyze_presentation(text: &str, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let p = Presentation::parse(text)?;
    let g = todd_coxeter(&p, DEFAULT_MAX_COSETS)?;
    if g.order() > opts.max_order {
        return Err(GroupError::GroupTooLarge {
            order: g.order(),
            cap: opts.max_order,
        }
        .into());
    }
    let label = g.label().to_string();
    analyze_group(&g, &label, 0, opts)
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "?",
    }
}

/// Plain-text rendering of a report.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let g = &r.group;
    let _ = writeln!(s, "group        {}", g.label);
    let _ = writeln!(s, "order        {}", g.order);
    let ab: Vec<String> = g.abelianization.iter().map(|q| format!("C{q}")).collect();
    let _ = writeln!(s, "G/G'         {}", if ab.is_empty() { "1".into() } else { ab.join(" x ") });
    let _ = writeln!(s, "|Z(G)|       {}", g.center_order);
    if g.peeled_c2 > 0 {
        let _ = writeln!(s, "core         order {}, times C2^{}", g.core_order, g.peeled_c2);
    }
    let _ = writeln!(s, "QG           {}", r.decomposition);
    let _ = writeln!(s);
    let _ = writeln!(s, "{:>5}  {:<28} {:>5}  {:<14} {:<10} {:<6} VC", "mult", "component", "dim", "center", "division", "tier");
    // identical components share one row
    let mut rows: Vec<(usize, String)> = Vec::new();
    for c in &r.components {
        let status = c.division.status.map(|x| format!("{x:?}")).unwrap_or_else(|| c.division.kind.clone());
        let tier = c.division.tier.map(|t| t.to_string()).unwrap_or_else(|| "-".into());
        let line = format!(
            "{:<28} {:>5}  {:<14} {:<10} {:<6} {}",
            c.display,
            c.q_dimension,
            c.center.name,
            status,
            tier,
            yes_no(c.vc)
        );
        match rows.last_mut() {
            Some((n, l)) if *l == line => *n += c.multiplicity,
            _ => rows.push((c.multiplicity, line)),
        }
    }
    for (n, line) in rows {
        let _ = writeln!(s, "{n:>5}  {line}");
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "verdict      {}", r.verdict.value);
    if let Some(n) = r.verdict.reason.non_vc_count {
        let _ = writeln!(s, "non-VC       {n}");
    }
    for rule in &r.verdict.reason.rules {
        let _ = writeln!(s, "  [{}] {}", rule.rule, rule.statement);
    }
    if let Some(k) = &r.verdict.reason.known_order {
        let _ = writeln!(s, "  order {} in {} ({:?})", k.order, k.component, k.status);
    }
    if let Some(t) = r.theorem_membership {
        let _ = writeln!(s, "listed as    {t}");
    }
    match &r.oracle {
        Some(o) => {
            let _ = writeln!(
                s,
                "oracle       p = {}: {} components, {} rational orbits, {} cyclotomic classes",
                o.prime, o.components, o.rational_orbits, o.cyclotomic_classes
            );
        }
        None => {
            let _ = writeln!(s, "oracle       off");
        }
    }
    for n in &r.notes {
        let _ = writeln!(s, "note         {n}");
    }
    let f = &r.flags;
    let _ = writeln!(
        s,
        "flags        max-order={} bianchi-extension={} division-criterion={:?} oracle={}",
        f.max_order,
        if f.bianchi_extension { "on" } else { "off" },
        f.division_criterion,
        if f.oracle { "on" } else { "off" }
    );
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::VerdictValue;

    #[test]
    fn peeling_only_above_threshold() {
        let s = parse_spec("Q8 x C2^4").unwrap();
        let (core, k) = peel_c2(&s);
        assert_eq!(k, 4);
        assert_eq!(core, GroupSpec::Dicyclic(8));
        let s = parse_spec("Q8 x C2 x C3").unwrap();
        assert_eq!(peel_c2(&s).1, 0);
    }

    #[test]
    fn invariant_factors_with_c2() {
        assert_eq!(add_c2_factors(&[2, 2], 3), vec![2, 2, 2, 2, 2]);
        assert_eq!(add_c2_factors(&[12], 1), vec![2, 12]);
        assert_eq!(add_c2_factors(&[], 2), vec![2, 2]);
    }

    #[test]
    fn trivial_group() {
        let r = analyze("C1", &AnalysisOptions::default()).unwrap();
        assert_eq!(r.decomposition, "Q");
        assert_eq!(r.verdict.value, VerdictValue::SubgroupSeparable);
    }

    #[test]
    fn peeled_report_counts() {
        let r = analyze("Q8 x C2^5", &AnalysisOptions::default()).unwrap();
        assert_eq!(r.group.order, 256);
        assert_eq!(r.total_dimension(), 256);
        assert_eq!(r.decomposition, "128Q ⊕ 32H(Q)");
        assert_eq!(r.verdict.value, VerdictValue::SubgroupSeparable);
    }
}

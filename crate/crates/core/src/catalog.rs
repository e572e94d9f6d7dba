//! Bundled groups with their expected decompositions and verdicts.

use serde::Serialize;

use crate::classify::VerdictValue;
use crate::numbers::{divisors, is_prime, AbelianFieldDescriptor};

/// Where an expectation comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Origin {
    /// A published closed-form decomposition.
    Displayed,
    /// A decomposition written out inside one of its proofs.
    Proof,
    /// The classifying list of groups with subgroup separable unit group.
    CandidateList,
    /// Computed here from one of the above.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expectation<T> {
    pub value: T,
    pub origin: Origin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// A group of the classifying list.
    Listed,
    /// A group used inside a proof.
    Auxiliary,
    Cyclic,
    Dihedral,
    Dicyclic,
    Q8TimesCp,
    Q8TimesElementary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: String,
    pub family: Family,
    pub expected_decomposition: Option<Expectation<String>>,
    pub expected_verdict: Option<Expectation<VerdictValue>>,
}

pub const ORDER_18: &str = "<a,b,x | a^3, b^3, a b = b a, x^2, x a = b x>";

fn term(n: usize, s: &str) -> String {
    if n == 1 {
        s.to_string()
    } else {
        format!("{n}{s}")
    }
}

/// Aggregates repeated terms, keeping first-seen order.
fn join(parts: &[String]) -> String {
    let mut terms: Vec<(String, usize)> = Vec::new();
    for p in parts {
        match terms.iter_mut().find(|(t, _)| t == p) {
            Some(t) => t.1 += 1,
            None => terms.push((p.clone(), 1)),
        }
    }
    terms.iter().map(|(t, n)| term(*n, t)).collect::<Vec<_>>().join(" ⊕ ")
}

fn m2(inner: &str) -> String {
    format!("M2({inner})")
}

/// `QC_n = sum over d | n of Q(zeta_d)`.
pub fn cyclic_decomposition(n: usize) -> String {
    let parts: Vec<String> = divisors(n).into_iter().map(|d| AbelianFieldDescriptor::cyclotomic(d).pretty()).collect();
    join(&parts)
}

/// `QD_2n = Q(D/D') + sum over 2 < d | n of M2(Q(zeta_d + zeta_d^-1))`, with
/// `D/D'` of order 2 for odd `n` and 4 for even `n`.
pub fn dihedral_decomposition(n: usize) -> String {
    let mut parts = vec!["Q".to_string(); if n % 2 == 1 { 2 } else { 4 }];
    for d in divisors(n).into_iter().filter(|&d| d > 2) {
        parts.push(m2(&AbelianFieldDescriptor::real_cyclotomic(d).pretty()));
    }
    join(&parts)
}

/// `QQ_2^n = QD_2^(n-1) + H(Q(zeta + zeta^-1))` with `zeta` of order `2^(n-1)`.
pub fn generalized_quaternion_decomposition(n: u32) -> String {
    let half = 1usize << (n - 1);
    let mut s = dihedral_decomposition(half / 2);
    s.push_str(&format!(" ⊕ H({})", AbelianFieldDescriptor::real_cyclotomic(half).pretty()));
    s
}

/// `Q(Q8 x C_p) = 4Q + 4Q(zeta_p) + H(Q) + H(Q(zeta_p))` for `p = -1 mod 8`,
/// with `M2(Q(zeta_p))` in place of the last term otherwise.
pub fn q8_cp_decomposition(p: usize) -> String {
    let f = AbelianFieldDescriptor::cyclotomic(p).pretty();
    let last = if p % 8 == 7 { format!("H({f})") } else { m2(&f) };
    join(&["4Q".into(), "H(Q)".into(), format!("4{f}"), last])
}

fn entry(name: &str, spec: &str, family: Family) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        spec: spec.to_string(),
        family,
        expected_decomposition: None,
        expected_verdict: None,
    }
}

impl CatalogEntry {
    fn decomposition(mut self, value: impl Into<String>, origin: Origin) -> Self {
        self.expected_decomposition = Some(Expectation {
            value: value.into(),
            origin,
        });
        self
    }

    fn verdict(mut self, value: VerdictValue, origin: Origin) -> Self {
        self.expected_verdict = Some(Expectation { value, origin });
        self
    }
}

use VerdictValue::{NotSubgroupSeparable as Not, OpenCase as Open, SubgroupSeparable as Sep};

/// Every bundled entry, in a fixed order, each spec at most once.
pub fn catalog() -> Vec<CatalogEntry> {
    use Family::*;
    use Origin::*;
    let mut v = vec![
        entry("D6", "D6", Listed)
            .decomposition(dihedral_decomposition(3), Displayed)
            .verdict(Sep, CandidateList),
        entry("D8", "D8", Listed)
            .decomposition(dihedral_decomposition(4), Displayed)
            .verdict(Sep, CandidateList),
        entry("Q12", "Q12", Listed).verdict(Sep, CandidateList),
        entry("C4⋊C4", "sdp(4,4,3)", Listed).verdict(Sep, CandidateList),
        entry("𝒟", "DD", Listed)
            .decomposition("8Q ⊕ M2(Q(i))", Displayed)
            .verdict(Sep, CandidateList),
        entry("D16+", "D16+", Listed)
            .decomposition("4Q ⊕ 2Q(i) ⊕ M2(Q(i))", Displayed)
            .verdict(Sep, CandidateList),
        entry("Q16", "Q16", Listed)
            .decomposition(generalized_quaternion_decomposition(4), Displayed)
            .verdict(Sep, CandidateList),
        entry("Q8×C3", "Q8 x C3", Listed)
            .decomposition(q8_cp_decomposition(3), Derived)
            .verdict(Sep, CandidateList),
        entry("Q8×C4", "Q8 x C4", Listed).verdict(Sep, CandidateList),
        entry("D8YQ8", "D8YQ8", Listed)
            .decomposition("16Q ⊕ M2(H(Q))", Displayed)
            .verdict(Open, CandidateList),
        entry("Q8", "Q8", Listed)
            .decomposition(generalized_quaternion_decomposition(3), Displayed)
            .verdict(Sep, CandidateList),
    ];
    for n in 1..=10u32 {
        let spec = if n == 1 { "Q8 x C2".to_string() } else { format!("Q8 x C2^{n}") };
        v.push(
            entry(&format!("Q8×C2^{n}"), &spec, Q8TimesElementary)
                .decomposition(format!("{}Q ⊕ {}H(Q)", 4usize << n, 1usize << n), Derived)
                .verdict(Sep, CandidateList),
        );
    }
    for p in [7, 23, 31] {
        v.push(
            entry(&format!("Q8×C{p}"), &format!("Q8 x C{p}"), Listed)
                .decomposition(q8_cp_decomposition(p), Proof)
                .verdict(Open, CandidateList),
        );
    }
    v.extend([
        entry("Q8×Q8", "Q8 x Q8", Auxiliary)
            .decomposition("16Q ⊕ 8H(Q) ⊕ M4(Q)", Derived)
            .verdict(Not, CandidateList),
        entry("C3⋊C8", "sdp(3,8,2)", Auxiliary)
            .decomposition("2Q ⊕ Q(i) ⊕ Q(ζ8) ⊕ M2(Q) ⊕ (-1,-3/Q) ⊕ (i,-3/Q(i))", Proof)
            .verdict(Not, CandidateList),
        entry("(C3×C3)⋊C2", ORDER_18, Auxiliary)
            .decomposition("2Q ⊕ 2Q(√-3) ⊕ M2(Q) ⊕ M2(Q(√-3))", Proof)
            .verdict(Not, CandidateList),
        entry("D16", "D16", Auxiliary)
            .decomposition(dihedral_decomposition(8), Displayed)
            .verdict(Not, CandidateList),
        entry("D16-", "D16-", Auxiliary)
            .decomposition("4Q ⊕ M2(Q) ⊕ M2(Q(√-2))", Displayed)
            .verdict(Not, CandidateList),
        entry("Q32", "Q32", Auxiliary)
            .decomposition(generalized_quaternion_decomposition(5), Displayed)
            .verdict(Not, CandidateList),
        entry("Q8×C5", "Q8 x C5", Auxiliary)
            .decomposition(q8_cp_decomposition(5), Derived)
            .verdict(Not, CandidateList),
        entry("Q8×C2×C3", "Q8 x C2 x C3", Auxiliary).verdict(Not, CandidateList),
        entry("H1", "H1", Auxiliary).verdict(Sep, CandidateList),
        entry("𝒟+", "DD+", Auxiliary)
            .decomposition("4Q ⊕ 2Q(i) ⊕ 2M2(Q) ⊕ 2M2(Q(i))", Displayed)
            .verdict(Not, CandidateList),
    ]);
    for n in 1..=30 {
        v.push(
            entry(&format!("C{n}"), &format!("C{n}"), Cyclic)
                .decomposition(cyclic_decomposition(n), Displayed)
                .verdict(Sep, Derived),
        );
    }
    for n in 1..=16 {
        let verdict = if n <= 4 { Sep } else { Not };
        v.push(
            entry(&format!("D{}", 2 * n), &format!("D{}", 2 * n), Dihedral)
                .decomposition(dihedral_decomposition(n), Displayed)
                .verdict(verdict, Derived),
        );
    }
    for n in 2..=8 {
        let m: usize = 4 * n;
        let mut e = entry(&format!("Q{m}"), &format!("Q{m}"), Dicyclic);
        if m.is_power_of_two() {
            e = e.decomposition(generalized_quaternion_decomposition(m.trailing_zeros()), Displayed);
        }
        let verdict = if [8, 12, 16].contains(&m) { Sep } else { Not };
        v.push(e.verdict(verdict, Derived));
    }
    for p in (2..=31).filter(|&p| is_prime(p as u64)) {
        let verdict = match p {
            2 | 3 => Sep,
            p if p % 8 == 7 => Open,
            _ => Not,
        };
        let mut e = entry(&format!("Q8×C{p}"), &format!("Q8 x C{p}"), Q8TimesCp);
        if p > 2 {
            e = e.decomposition(q8_cp_decomposition(p), Derived);
        }
        v.push(e.verdict(verdict, Derived));
    }
    let mut seen = std::collections::HashSet::new();
    v.retain(|e| seen.insert(e.spec.clone()));
    v
}

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use super::{lemma_shape_ok_for, ClassifiedComponent, ClassifyConfig, ComponentClass};
use crate::group::{is_hamiltonian, is_isomorphic, FiniteGroup};
use crate::numbers::{is_prime, AbelianFieldDescriptor};
use crate::presentation::{parse_spec, resolve};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VerdictValue {
    SubgroupSeparable,
    NotSubgroupSeparable,
    OpenCase,
    Undetermined,
}

impl fmt::Display for VerdictValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictValue::SubgroupSeparable => "SubgroupSeparable",
            VerdictValue::NotSubgroupSeparable => "NotSubgroupSeparable",
            VerdictValue::OpenCase => "OpenCase",
            VerdictValue::Undetermined => "Undetermined",
        })
    }
}

/// A rule applied while reaching a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Citation {
    pub rule: &'static str,
    pub statement: &'static str,
}

const ALL_VC: Citation = Citation {
    rule: "all-vc",
    statement: "every simple component is a field or a totally definite quaternion algebra, so the unit group is virtually abelian (condition 1)",
};
const AT_MOST_ONE: Citation = Citation {
    rule: "at-most-one-non-vc",
    statement: "if the unit group of ZG is subgroup separable then QG has at most one non-VC simple component",
};
const DEGREE: Citation = Citation {
    rule: "matrix-degree",
    statement: "if SL_n(R) is subgroup separable for an order R in M_n(D) then n <= 2",
};
const SHAPE: Citation = Citation {
    rule: "non-vc-shape",
    statement: "the non-VC component must be a division algebra or M2(D) with D one of Q, an imaginary quadratic field, or a totally definite quaternion algebra over Q",
};
const ORDER_M2Z: Citation = Citation {
    rule: "order-m2z",
    statement: "GL2(Z) contains a free subgroup of finite index and is subgroup separable",
};
const ORDER_BIANCHI: Citation = Citation {
    rule: "order-gl2-gaussian-eisenstein",
    statement: "GL2(Z[i]) and GL2(Z[sqrt(-3)]) are subgroup separable",
};
const BIANCHI_EXTENSION: Citation = Citation {
    rule: "bianchi-extension",
    statement: "Bianchi groups are subgroup separable (enabled by --bianchi-extension)",
};
const OPEN_M2H: Citation = Citation {
    rule: "open-m2-hz",
    statement: "subgroup separability of the unit group of M2(H(Z)) is open",
};
const OPEN_HZETA: Citation = Citation {
    rule: "open-h-zeta-p",
    statement: "subgroup separability of the unit group of H(Z[zeta_p]) is open",
};
const NO_RULE: Citation = Citation {
    rule: "no-rule",
    statement: "no known result decides this non-VC component",
};
const UNRESOLVED: Citation = Citation {
    rule: "unresolved-component",
    statement: "a component could not be identified or its division status is undecided, and the outcome depends on it",
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KnownOrderStatus {
    SeparableKnown,
    OpenCase,
}

/// A row of the table of non-VC components and the orders inside them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KnownOrder {
    pub groups: &'static str,
    pub component: &'static str,
    pub order: &'static str,
    pub status: KnownOrderStatus,
    pub citation: &'static str,
}

pub fn known_orders() -> &'static [KnownOrder] {
    const TABLE: &[KnownOrder] = &[
        KnownOrder {
            groups: "D6, D8, C4⋊C4, Q16",
            component: "M2(Q)",
            order: "M2(Z)",
            status: KnownOrderStatus::SeparableKnown,
            citation: ORDER_M2Z.statement,
        },
        KnownOrder {
            groups: "Q8×C3",
            component: "M2(Q(√-3))",
            order: "M2(Z[√-3])",
            status: KnownOrderStatus::SeparableKnown,
            citation: ORDER_BIANCHI.statement,
        },
        KnownOrder {
            groups: "Q8×C4, 𝒟, D16+",
            component: "M2(Q(i))",
            order: "M2(Z[i])",
            status: KnownOrderStatus::SeparableKnown,
            citation: ORDER_BIANCHI.statement,
        },
        KnownOrder {
            groups: "D8YQ8",
            component: "M2(H(Q))",
            order: "M2(H(Z))",
            status: KnownOrderStatus::OpenCase,
            citation: OPEN_M2H.statement,
        },
        KnownOrder {
            groups: "Q8×Cp, p≡−1(8)",
            component: "H(Q(ζp))",
            order: "H(Z[ζp])",
            status: KnownOrderStatus::OpenCase,
            citation: OPEN_HZETA.statement,
        },
    ];
    TABLE
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReason {
    /// Non-VC components counted with multiplicity; `None` when undecided.
    pub non_vc_count: Option<usize>,
    pub offending: Vec<String>,
    pub rules: Vec<Citation>,
    pub known_order: Option<KnownOrder>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub value: VerdictValue,
    pub reason: VerdictReason,
}

fn is_gaussian_or_eisenstein(f: &AbelianFieldDescriptor) -> bool {
    *f == AbelianFieldDescriptor::quadratic(-1) || *f == AbelianFieldDescriptor::quadratic(-3)
}

fn row(component: &str) -> Option<KnownOrder> {
    known_orders().iter().find(|r| r.component == component).copied()
}

struct Decision {
    value: VerdictValue,
    rules: Vec<Citation>,
    known_order: Option<KnownOrder>,
    non_vc: usize,
    offending: Vec<usize>,
}

fn decide(classes: &[ComponentClass], comps: &[ClassifiedComponent], mult: usize, cfg: &ClassifyConfig) -> Decision {
    let non_vc: Vec<usize> = (0..classes.len()).filter(|&i| !classes[i].is_vc()).collect();
    let count = non_vc.len() * mult;
    let d = |value, rules: Vec<Citation>, known_order| Decision {
        value,
        rules,
        known_order,
        non_vc: count,
        offending: non_vc.clone(),
    };
    if count == 0 {
        return d(VerdictValue::SubgroupSeparable, vec![ALL_VC], None);
    }
    if count >= 2 {
        return d(VerdictValue::NotSubgroupSeparable, vec![AT_MOST_ONE], None);
    }
    let i = non_vc[0];
    let (class, c) = (classes[i], &comps[i]);
    if class == ComponentClass::Unresolved {
        return d(VerdictValue::Undetermined, vec![UNRESOLVED], None);
    }
    if class.matrix_degree().is_some_and(|n| n >= 3) {
        return d(VerdictValue::NotSubgroupSeparable, vec![AT_MOST_ONE, DEGREE], None);
    }
    if !lemma_shape_ok_for(class, c) {
        return d(VerdictValue::NotSubgroupSeparable, vec![AT_MOST_ONE, SHAPE], None);
    }
    match class {
        ComponentClass::SplitDegree2OverField | ComponentClass::MatrixOverField { n: 2 } => {
            if c.center.is_rational() {
                d(VerdictValue::SubgroupSeparable, vec![AT_MOST_ONE, ORDER_M2Z], row("M2(Q)"))
            } else if is_gaussian_or_eisenstein(&c.center) {
                let name = if c.center == AbelianFieldDescriptor::quadratic(-1) {
                    "M2(Q(i))"
                } else {
                    "M2(Q(√-3))"
                };
                d(VerdictValue::SubgroupSeparable, vec![AT_MOST_ONE, ORDER_BIANCHI], row(name))
            } else if cfg.bianchi_extension {
                d(VerdictValue::SubgroupSeparable, vec![AT_MOST_ONE, BIANCHI_EXTENSION], None)
            } else {
                d(VerdictValue::Undetermined, vec![AT_MOST_ONE, NO_RULE], None)
            }
        }
        ComponentClass::MatrixOverQuaternion { n: 2 } => {
            d(VerdictValue::OpenCase, vec![AT_MOST_ONE, OPEN_M2H], row("M2(H(Q))"))
        }
        ComponentClass::DivisionQuaternionNotTD => {
            let hamiltonian = c.quaternion.as_ref().is_some_and(|q| q.symbol.is_hamiltonian());
            if hamiltonian && c.center.is_full_cyclotomic() && !c.center.is_totally_real() {
                d(VerdictValue::OpenCase, vec![AT_MOST_ONE, OPEN_HZETA], row("H(Q(ζp))"))
            } else {
                d(VerdictValue::Undetermined, vec![AT_MOST_ONE, NO_RULE], None)
            }
        }
        _ => d(VerdictValue::Undetermined, vec![AT_MOST_ONE, NO_RULE], None),
    }
}

/// Maximum number of undecided components enumerated before giving up.
const MAX_UNDECIDED: usize = 12;

/// Verdict for a group whose rational group algebra is `mult` copies of the
/// given components.
pub fn verdict(comps: &[ClassifiedComponent], mult: usize, cfg: &ClassifyConfig) -> Verdict {
    let undecided: Vec<usize> = (0..comps.len()).filter(|&i| comps[i].alternatives.len() > 1).collect();
    if undecided.len() > MAX_UNDECIDED {
        return Verdict {
            value: VerdictValue::Undetermined,
            reason: VerdictReason {
                non_vc_count: None,
                offending: undecided.iter().map(|&i| comps[i].display.clone()).collect(),
                rules: vec![UNRESOLVED],
                known_order: None,
            },
        };
    }
    let mut decisions = Vec::new();
    for mask in 0..(1usize << undecided.len()) {
        let mut classes: Vec<ComponentClass> = comps.iter().map(|c| c.alternatives[0]).collect();
        for (bit, &i) in undecided.iter().enumerate() {
            classes[i] = comps[i].alternatives[(mask >> bit) & 1];
        }
        decisions.push(decide(&classes, comps, mult, cfg));
    }
    let values: BTreeSet<VerdictValue> = decisions.iter().map(|d| d.value).collect();
    let first = &decisions[0];
    let offending = first.offending.iter().map(|&i| comps[i].display.clone()).collect();
    if values.len() == 1 {
        let mut rules: Vec<Citation> = decisions.iter().flat_map(|d| d.rules.clone()).collect();
        rules.sort();
        rules.dedup();
        let counts: BTreeSet<usize> = decisions.iter().map(|d| d.non_vc).collect();
        return Verdict {
            value: first.value,
            reason: VerdictReason {
                non_vc_count: (counts.len() == 1).then_some(first.non_vc),
                offending,
                rules,
                known_order: first.known_order,
            },
        };
    }
    Verdict {
        value: VerdictValue::Undetermined,
        reason: VerdictReason {
            non_vc_count: None,
            offending,
            rules: vec![UNRESOLVED],
            known_order: None,
        },
    }
}

const THEOREM_LIST: &[(&str, &str)] = &[
    ("D6", "D6"),
    ("D8", "D8"),
    ("Q12", "Q12"),
    ("C4⋊C4", "sdp(4,4,3)"),
    ("𝒟", "DD"),
    ("D16+", "D16+"),
    ("Q16", "Q16"),
    ("Q8×C3", "Q8 x C3"),
    ("Q8×C4", "Q8 x C4"),
    ("D8YQ8", "D8YQ8"),
];

pub const TAG_HAMILTONIAN_2: &str = "Q8×C2^n";
pub const TAG_Q8_CP: &str = "Q8×Cp, p≡−1(8)";
pub const TAG_ABELIAN: &str = "abelian";

fn theorem_groups() -> &'static [(&'static str, FiniteGroup)] {
    static CELL: OnceLock<Vec<(&'static str, FiniteGroup)>> = OnceLock::new();
    CELL.get_or_init(|| {
        THEOREM_LIST
            .iter()
            .map(|(tag, spec)| (*tag, resolve(&parse_spec(spec).expect("bundled spec parses")).expect("bundled theorem groups resolve")))
            .collect()
    })
}

/// The entry of the list of candidate groups that `g` is isomorphic to.
pub fn theorem_membership(g: &FiniteGroup) -> Option<&'static str> {
    if g.is_abelian() {
        return Some(TAG_ABELIAN);
    }
    let n = g.order();
    if is_hamiltonian(g) {
        if n.is_power_of_two() {
            return Some(TAG_HAMILTONIAN_2);
        }
        let p = n / 8;
        if n % 8 == 0 && is_prime(p as u64) && p % 8 == 7 {
            return Some(TAG_Q8_CP);
        }
    }
    theorem_groups()
        .iter()
        .find(|(_, h)| h.order() == n && is_isomorphic(g, h).is_some())
        .map(|(tag, _)| *tag)
}

//! VC classification of simple components, division/split decisions for
//! quaternion symbols, and the subgroup-separability verdict.

mod verdict;

use std::fmt;

use serde::Serialize;

use crate::numbers::{
    embedding_signs, hilbert_symbol_q, is_prime, is_square_in_field, ramified_places,
    AbelianFieldDescriptor, NumberError, Place, QuaternionSymbol, Sign, SignConfig, Truth,
};
use crate::wedderburn::{DivisionPart, SimpleComponent};

pub use verdict::{
    known_orders, theorem_membership, verdict, Citation, KnownOrder, KnownOrderStatus, Verdict,
    VerdictReason, VerdictValue, TAG_ABELIAN, TAG_HAMILTONIAN_2, TAG_Q8_CP,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DivisionStatus {
    Division,
    Split,
    Unknown,
}

/// The test that decided a division/split question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Tier {
    /// An entry, or minus their product, is a square.
    T0,
    /// Both entries negative at a real place.
    T1,
    /// Rational entries: Hilbert symbols over `Q` and local degrees of `F`.
    T2,
    /// `(-1,-1)` over a field of odd conductor: residue degree at 2.
    T3,
    /// No test applied.
    T4,
    /// The `p = -1 mod 8` rule for `H(Q(zeta_p))`.
    PaperRule,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tier::T0 => "T0",
            Tier::T1 => "T1",
            Tier::T2 => "T2",
            Tier::T3 => "T3",
            Tier::T4 => "T4",
            Tier::PaperRule => "paper-rule",
        };
        f.write_str(s)
    }
}

/// How `H(Q(zeta_p))` is decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum DivisionCriterion {
    /// Residue degree of 2 (tier T3).
    #[default]
    Local,
    /// Split unless `p = -1 mod 8`.
    Paper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyConfig {
    pub criterion: DivisionCriterion,
    /// Treat `M2(F)` over every imaginary quadratic `F` as separable.
    pub bianchi_extension: bool,
    pub signs: SignConfig,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            criterion: DivisionCriterion::Local,
            bianchi_extension: false,
            signs: SignConfig::default(),
        }
    }
}

/// `F` is totally real and both entries are negative at every real place.
pub fn is_totally_definite(q: &QuaternionSymbol, cfg: &SignConfig) -> Result<bool, NumberError> {
    if !q.field.is_totally_real() {
        return Ok(false);
    }
    let su = embedding_signs(&q.u, &q.field, cfg)?;
    let sc = embedding_signs(&q.c, &q.field, cfg)?;
    Ok(su.iter().chain(&sc).all(|&s| s == Sign::Negative))
}

/// `F = Q(zeta_p)` for an odd prime `p`.
fn prime_cyclotomic(f: &AbelianFieldDescriptor) -> Option<u64> {
    let k = f.conductor() as u64;
    (k > 2 && is_prime(k) && f.is_full_cyclotomic()).then_some(k)
}

/// Division/split decision with the tier that settled it.
pub fn division_status(q: &QuaternionSymbol, criterion: DivisionCriterion, cfg: &SignConfig) -> (DivisionStatus, Tier) {
    let q = q.normalized();
    let f = &q.field;
    // (u, -u x^2) is split as well
    let minus_uc = -&(&q.u * &q.c);
    if [&q.u, &q.c, &minus_uc].iter().any(|x| is_square_in_field(x, f) == Truth::True) {
        return (DivisionStatus::Split, Tier::T0);
    }
    if f.is_totally_real() {
        if let (Ok(su), Ok(sc)) = (embedding_signs(&q.u, f, cfg), embedding_signs(&q.c, f, cfg)) {
            if su.iter().zip(&sc).any(|(a, b)| *a == Sign::Negative && *b == Sign::Negative) {
                return (DivisionStatus::Division, Tier::T1);
            }
        }
    }
    if q.is_hamiltonian() {
        if criterion == DivisionCriterion::Paper {
            if let Some(p) = prime_cyclotomic(f) {
                let s = if p % 8 == 7 { DivisionStatus::Division } else { DivisionStatus::Split };
                return (s, Tier::PaperRule);
            }
        }
        if let Ok(ord) = f.frobenius_order_at_2() {
            let s = if ord % 2 == 1 { DivisionStatus::Division } else { DivisionStatus::Split };
            return (s, Tier::T3);
        }
    }
    if let (Some(a), Some(b)) = (q.u.as_rational(), q.c.as_rational()) {
        // (a, b)_P = (a, b)_p ^ [F_P : Q_p]
        let odd = ramified_places(a, b).into_iter().any(|v| f.local_degree(v) % 2 == 1);
        let s = if odd { DivisionStatus::Division } else { DivisionStatus::Split };
        return (s, Tier::T2);
    }
    (DivisionStatus::Unknown, Tier::T4)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ComponentClass {
    Field,
    TotallyDefiniteQuaternion,
    /// `M2(F)` coming from a split quaternion symbol.
    SplitDegree2OverField,
    MatrixOverField { n: usize },
    MatrixOverQuaternion { n: usize },
    DivisionQuaternionNotTD,
    /// `M_n` of a quaternion symbol over a field that is not totally real,
    /// whose division status is undecided; non-VC either way.
    QuaternionNotTdUndecided { n: usize },
    Unresolved,
}

impl ComponentClass {
    pub fn is_vc(&self) -> bool {
        matches!(self, ComponentClass::Field | ComponentClass::TotallyDefiniteQuaternion)
    }

    /// Matrix degree over the division algebra.
    pub fn matrix_degree(&self) -> Option<usize> {
        match *self {
            ComponentClass::Field
            | ComponentClass::TotallyDefiniteQuaternion
            | ComponentClass::DivisionQuaternionNotTD => Some(1),
            ComponentClass::SplitDegree2OverField => Some(2),
            ComponentClass::MatrixOverField { n }
            | ComponentClass::MatrixOverQuaternion { n }
            | ComponentClass::QuaternionNotTdUndecided { n } => Some(n),
            ComponentClass::Unresolved => None,
        }
    }
}

/// Quaternion data carried by a classified component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionInfo {
    pub symbol: QuaternionSymbol,
    pub status: DivisionStatus,
    pub tier: Tier,
    pub totally_definite: bool,
    /// The other criterion's answer, when it disagrees.
    pub other_criterion: Option<(DivisionStatus, Tier)>,
}

#[derive(Clone, Debug)]
pub struct ClassifiedComponent {
    pub class: ComponentClass,
    /// Classes the component could have once undecided statuses are settled.
    pub alternatives: Vec<ComponentClass>,
    /// Matrix degree of the component as computed (before splitting a quaternion part).
    pub matrix_degree: usize,
    pub center: AbelianFieldDescriptor,
    pub quaternion: Option<QuaternionInfo>,
    pub q_dimension: usize,
    pub display: String,
}

impl ClassifiedComponent {
    pub fn is_vc(&self) -> Option<bool> {
        let v: Vec<bool> = self.alternatives.iter().map(ComponentClass::is_vc).collect();
        if self.class == ComponentClass::Unresolved {
            return None;
        }
        if v.iter().all(|&x| x) {
            Some(true)
        } else if v.iter().all(|&x| !x) {
            Some(false)
        } else {
            None
        }
    }

    pub fn division_kind(&self) -> &'static str {
        match (&self.quaternion, self.class) {
            (_, ComponentClass::Unresolved) => "crossed-product",
            (None, _) => "field",
            (Some(_), _) => "quaternion",
        }
    }
}

fn matrix(n: usize, inner: &str) -> String {
    if n == 1 {
        inner.to_string()
    } else {
        format!("M{n}({inner})")
    }
}

/// Display name of a division quaternion algebra; over `Q` the algebra
/// ramified exactly at 2 and infinity is written `H(Q)`.
fn quaternion_name(q: &QuaternionSymbol) -> String {
    if q.field.is_rational() {
        if let (Some(a), Some(b)) = (q.u.as_rational(), q.c.as_rational()) {
            let r = ramified_places(a, b);
            if r.len() == 2 && r.contains(&Place::Prime(2)) && r.contains(&Place::Infinity) {
                return "H(Q)".into();
            }
        }
    }
    q.to_string()
}

fn class_for(n: usize, status: DivisionStatus, td: bool) -> ComponentClass {
    match (status, n) {
        (DivisionStatus::Split, 1) => ComponentClass::SplitDegree2OverField,
        (DivisionStatus::Split, n) => ComponentClass::MatrixOverField { n: 2 * n },
        (DivisionStatus::Division, 1) if td => ComponentClass::TotallyDefiniteQuaternion,
        (DivisionStatus::Division, 1) => ComponentClass::DivisionQuaternionNotTD,
        (DivisionStatus::Division, n) => ComponentClass::MatrixOverQuaternion { n },
        (DivisionStatus::Unknown, n) => ComponentClass::QuaternionNotTdUndecided { n },
    }
}

pub fn classify_component(c: &SimpleComponent, cfg: &ClassifyConfig) -> Result<ClassifiedComponent, NumberError> {
    let n = c.matrix_degree;
    let center = c.center.clone();
    let field_name = center.pretty();
    let out = |class, alternatives, quaternion, display| ClassifiedComponent {
        class,
        alternatives,
        matrix_degree: n,
        center: center.clone(),
        quaternion,
        q_dimension: c.q_dimension,
        display,
    };
    match &c.division {
        DivisionPart::Field => {
            let class = if n == 1 {
                ComponentClass::Field
            } else {
                ComponentClass::MatrixOverField { n }
            };
            Ok(out(class, vec![class], None, matrix(n, &field_name)))
        }
        DivisionPart::Unresolved(cp) => Ok(out(
            ComponentClass::Unresolved,
            vec![ComponentClass::Unresolved],
            None,
            matrix(n, &format!("Q(ζ{})*C{}", cp.m, cp.order())),
        )),
        DivisionPart::Quaternion(symbol) => {
            let q = symbol.normalized();
            let (status, tier) = division_status(&q, cfg.criterion, &cfg.signs);
            let other = match cfg.criterion {
                DivisionCriterion::Local => DivisionCriterion::Paper,
                DivisionCriterion::Paper => DivisionCriterion::Local,
            };
            let alt = division_status(&q, other, &cfg.signs);
            let td = is_totally_definite(&q, &cfg.signs)?;
            let class = class_for(n, status, td);
            let alternatives = if status == DivisionStatus::Unknown {
                vec![
                    class_for(n, DivisionStatus::Split, false),
                    class_for(n, DivisionStatus::Division, false),
                ]
            } else {
                vec![class]
            };
            let display = match status {
                DivisionStatus::Split => matrix(2 * n, &field_name),
                DivisionStatus::Division => matrix(n, &quaternion_name(&q)),
                DivisionStatus::Unknown => matrix(n, &q.to_string()),
            };
            let info = QuaternionInfo {
                symbol: q,
                status,
                tier,
                totally_definite: td,
                other_criterion: (alt.0 != status).then_some(alt),
            };
            Ok(out(class, alternatives, Some(info), display))
        }
    }
}

/// The non-VC component is a division algebra or `M2(D)` for `D` one of
/// `Q`, an imaginary quadratic field, or a totally definite quaternion
/// algebra over `Q`.
pub fn lemma_shape_ok(c: &ClassifiedComponent) -> bool {
    lemma_shape_ok_for(c.class, c)
}

fn lemma_shape_ok_for(class: ComponentClass, c: &ClassifiedComponent) -> bool {
    let imaginary_quadratic = c.center.degree() == 2 && !c.center.is_totally_real();
    match class {
        ComponentClass::Field | ComponentClass::TotallyDefiniteQuaternion | ComponentClass::DivisionQuaternionNotTD => true,
        ComponentClass::SplitDegree2OverField | ComponentClass::MatrixOverField { n: 2 } => {
            c.center.is_rational() || imaginary_quadratic
        }
        ComponentClass::MatrixOverQuaternion { n: 2 } => {
            c.center.is_rational() && c.quaternion.as_ref().is_some_and(|q| q.totally_definite)
        }
        _ => false,
    }
}

/// Hilbert symbol of a rational quaternion symbol at a place, exposed for reports.
pub fn local_symbol(q: &QuaternionSymbol, place: Place) -> Option<i32> {
    let (a, b) = (q.u.as_rational()?, q.c.as_rational()?);
    Some(hilbert_symbol_q(a, b, place))
}

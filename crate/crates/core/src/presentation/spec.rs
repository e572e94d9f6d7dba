//! The group-spec DSL: parsing, printing and resolution to Cayley tables.

use std::fmt;

use super::words::{parse_relation, Cursor, Relation};
use super::{todd_coxeter, Presentation, PresentationError, DEFAULT_MAX_COSETS};
use crate::group::{
    center, central_product, cyclic, dicyclic, dihedral, direct_product, quotient, semidirect_cyclic, ElemSet,
    FiniteGroup, GroupError, DEFAULT_SUBGROUP_CAP,
};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    /// `D_m^+ = C_(m/2) x| C_2` with `b a b^-1 = a^(m/4 + 1)`.
    DihedralPlus(usize),
    /// `D_m^- = C_(m/2) x| C_2` with `b a b^-1 = a^(m/4 - 1)`.
    DihedralMinus(usize),
    DD,
    DDPlus,
    D8YQ8,
    H(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Power(Box<GroupSpec>, u32),
    Semidirect { n: usize, m: usize, r: usize },
    Central(Box<GroupSpec>, Box<GroupSpec>),
    Quotient(Box<GroupSpec>, Vec<Relation>),
    Presented { generators: Vec<String>, relations: Vec<Relation> },
}

const PRIMARY: &[&str] = &[
    "C<n>", "D<m>", "Q<m>", "D<m>+", "D<m>-", "DD", "DD+", "D8YQ8", "H<n>", "sdp(n,m,r)", "y(G,H)", "(", "<",
];

struct Parser<'a> {
    c: Cursor<'a>,
}

impl<'a> Parser<'a> {
    fn product(&mut self) -> std::result::Result<GroupSpec, PresentationError> {
        let mut left = self.quotient()?;
        loop {
            self.c.skip_ws();
            if self.c.eat('x') || self.c.eat('X') || self.c.eat('×') {
                let right = self.quotient()?;
                left = GroupSpec::Product(Box::new(left), Box::new(right));
            } else {
                return Ok(left);
            }
        }
    }

    fn quotient(&mut self) -> std::result::Result<GroupSpec, PresentationError> {
        let mut g = self.power()?;
        loop {
            self.c.skip_ws();
            if !self.c.eat('/') {
                return Ok(g);
            }
            self.c.expect('<')?;
            let rels = self.relation_list(&['>'])?;
            self.c.expect('>')?;
            g = GroupSpec::Quotient(Box::new(g), rels);
        }
    }

    fn power(&mut self) -> std::result::Result<GroupSpec, PresentationError> {
        let g = self.primary()?;
        self.c.skip_ws();
        if self.c.eat('^') {
            let k = self.c.unsigned()?;
            return Ok(GroupSpec::Power(Box::new(g), k as u32));
        }
        Ok(g)
    }

    fn relation_list(&mut self, end: &[char]) -> std::result::Result<Vec<Relation>, PresentationError> {
        let mut rels = Vec::new();
        loop {
            self.c.skip_ws();
            if matches!(self.c.peek(), Some(ch) if end.contains(&ch)) {
                return Ok(rels);
            }
            rels.push(parse_relation(&mut self.c)?);
            self.c.skip_ws();
            if !self.c.eat(',') {
                return Ok(rels);
            }
        }
    }

    /// `<n>` or `(<n>)` directly after an atom letter.
    fn atom_param(&mut self) -> std::result::Result<usize, PresentationError> {
        if self.c.eat('(') {
            let n = self.c.unsigned()?;
            self.c.expect(')')?;
            Ok(n)
        } else {
            if !matches!(self.c.peek(), Some(ch) if ch.is_ascii_digit()) {
                return Err(self.c.error(&["integer", "("]));
            }
            self.c.unsigned()
        }
    }

    fn not_followed_by_alnum(&self) -> bool {
        !matches!(self.c.peek(), Some(ch) if ch.is_alphanumeric())
    }

    fn primary(&mut self) -> std::result::Result<GroupSpec, PresentationError> {
        self.c.skip_ws();
        let start = self.c.pos;
        if self.c.eat('(') {
            let g = self.product()?;
            self.c.expect(')')?;
            return Ok(g);
        }
        if self.c.eat('<') {
            return self.presented();
        }
        if self.c.eat_keyword("sdp") {
            self.c.expect('(')?;
            let n = self.c.unsigned()?;
            self.c.expect(',')?;
            let m = self.c.unsigned()?;
            self.c.expect(',')?;
            let r = self.c.unsigned()?;
            self.c.expect(')')?;
            return Ok(GroupSpec::Semidirect { n, m, r });
        }
        if self.c.eat_keyword("d8yq8") && self.not_followed_by_alnum() {
            return Ok(GroupSpec::D8YQ8);
        }
        self.c.pos = start;
        if self.c.eat_keyword("dd") && self.not_followed_by_alnum() {
            return Ok(if self.c.eat('+') { GroupSpec::DDPlus } else { GroupSpec::DD });
        }
        self.c.pos = start;
        if self.c.eat_keyword("y") {
            self.c.skip_ws();
            if self.c.eat('(') {
                let g = self.product()?;
                self.c.expect(',')?;
                let h = self.product()?;
                self.c.expect(')')?;
                return Ok(GroupSpec::Central(Box::new(g), Box::new(h)));
            }
            self.c.pos = start;
        }
        if self.c.eat_keyword("hn") && self.c.peek() == Some('(') {
            return Ok(GroupSpec::H(self.atom_param()?));
        }
        self.c.pos = start;
        let letter = match self.c.peek() {
            Some(ch) if ch.is_alphabetic() => ch.to_ascii_lowercase(),
            _ => return Err(self.c.error(PRIMARY)),
        };
        if !matches!(letter, 'c' | 'd' | 'q' | 'h') {
            let offset = self.c.offset();
            let name = self.c.ident().unwrap_or_default();
            if name.eq_ignore_ascii_case("x") {
                self.c.pos = start;
                return Err(self.c.error(PRIMARY));
            }
            return Err(PresentationError::UnknownAtom { name, offset });
        }
        self.c.bump();
        if !matches!(self.c.peek(), Some(ch) if ch.is_ascii_digit() || ch == '(') {
            self.c.pos = start;
            let offset = self.c.offset();
            let name = self.c.ident().unwrap_or_default();
            return Err(PresentationError::UnknownAtom { name, offset });
        }
        let n = self.atom_param()?;
        Ok(match letter {
            'c' => GroupSpec::Cyclic(n),
            'q' => GroupSpec::Dicyclic(n),
            'h' => GroupSpec::H(n),
            _ => {
                if self.c.eat('+') {
                    GroupSpec::DihedralPlus(n)
                } else if self.c.eat('-') {
                    GroupSpec::DihedralMinus(n)
                } else {
                    GroupSpec::Dihedral(n)
                }
            }
        })
    }

    fn presented(&mut self) -> std::result::Result<GroupSpec, PresentationError> {
        let mut generators = Vec::new();
        loop {
            self.c.skip_ws();
            match self.c.ident() {
                Some(n) => generators.push(n),
                None => return Err(self.c.error(&["generator name"])),
            }
            self.c.skip_ws();
            if self.c.eat('|') {
                break;
            }
            if !self.c.eat(',') {
                return Err(self.c.error(&[",", "|"]));
            }
        }
        let relations = self.relation_list(&['>'])?;
        self.c.expect('>')?;
        Ok(GroupSpec::Presented { generators, relations })
    }
}

/// Parses a group spec such as `Q8 x C7`, `sdp(3,8,2)` or `D16-`.
pub fn parse_spec(text: &str) -> std::result::Result<GroupSpec, PresentationError> {
    let mut p = Parser {
        c: Cursor::new(text, 0),
    };
    let g = p.product()?;
    p.c.skip_ws();
    if !p.c.at_end() {
        return Err(p.c.error(&["x", "/", "^", "end of input"]));
    }
    Ok(g)
}

impl GroupSpec {
    fn precedence(&self) -> u8 {
        match self {
            GroupSpec::Product(..) => 0,
            GroupSpec::Quotient(..) => 1,
            GroupSpec::Power(..) => 2,
            _ => 3,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Dicyclic(n) => write!(f, "Q{n}"),
            GroupSpec::DihedralPlus(n) => write!(f, "D{n}+"),
            GroupSpec::DihedralMinus(n) => write!(f, "D{n}-"),
            GroupSpec::DD => write!(f, "DD"),
            GroupSpec::DDPlus => write!(f, "DD+"),
            GroupSpec::D8YQ8 => write!(f, "D8YQ8"),
            GroupSpec::H(n) => write!(f, "H{n}"),
            GroupSpec::Product(a, b) => {
                a.fmt_at(f, 0)?;
                write!(f, " x ")?;
                b.fmt_at(f, 1)
            }
            GroupSpec::Power(g, k) => {
                g.fmt_at(f, 3)?;
                write!(f, "^{k}")
            }
            GroupSpec::Semidirect { n, m, r } => write!(f, "sdp({n},{m},{r})"),
            GroupSpec::Central(a, b) => {
                write!(f, "y(")?;
                a.fmt_at(f, 0)?;
                write!(f, ", ")?;
                b.fmt_at(f, 0)?;
                write!(f, ")")
            }
            GroupSpec::Quotient(g, rels) => {
                g.fmt_at(f, 1)?;
                let rs: Vec<String> = rels.iter().map(|r| r.to_string()).collect();
                write!(f, " / <{}>", rs.join(", "))
            }
            GroupSpec::Presented { generators, relations } => {
                let rs: Vec<String> = relations.iter().map(|r| r.to_string()).collect();
                write!(f, "<{} | {}>", generators.join(", "), rs.join(", "))
            }
        }
    }

    /// Order of the group the spec denotes, when it follows from the
    /// constructor without materializing anything.
    pub fn order_hint(&self) -> Option<u128> {
        Some(match self {
            GroupSpec::Cyclic(n) => *n as u128,
            GroupSpec::Dihedral(n)
            | GroupSpec::Dicyclic(n)
            | GroupSpec::DihedralPlus(n)
            | GroupSpec::DihedralMinus(n) => *n as u128,
            GroupSpec::DD => 16,
            GroupSpec::DDPlus | GroupSpec::D8YQ8 => 32,
            GroupSpec::Product(a, b) => a.order_hint()?.checked_mul(b.order_hint()?)?,
            GroupSpec::Power(g, k) => g.order_hint()?.checked_pow(*k)?,
            GroupSpec::Semidirect { n, m, .. } => (*n as u128) * (*m as u128),
            GroupSpec::Central(a, b) => a.order_hint()? * b.order_hint()? / 2,
            _ => return None,
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolveOptions {
    pub max_order: usize,
    pub max_cosets: usize,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions {
            max_order: DEFAULT_SUBGROUP_CAP,
            max_cosets: DEFAULT_MAX_COSETS,
        }
    }
}

fn bundled(name: &str, gens: &[&str], relations: &str, opts: &ResolveOptions) -> Result<FiniteGroup> {
    let p = Presentation::from_relations(gens, relations)?.with_name(name);
    Ok(todd_coxeter(&p, opts.max_cosets)?)
}

/// Relators for `H_n`: `x^4`, `x^2 y_i^4`, `y_i^2 [x, y_i]`, `[y_i, y_j]`.
/// The commutator here is `x y x^-1 y^-1`; with `x^-1 y^-1 x y` the same
/// relators give a semidihedral group for `n = 1` instead of `Q_16`.
pub(crate) fn h_family_presentation(n: usize) -> std::result::Result<Presentation, PresentationError> {
    let mut gens = vec!["x".to_string()];
    gens.extend((1..=n).map(|i| format!("y{i}")));
    let mut rels = vec!["x^4".to_string()];
    for i in 1..=n {
        rels.push(format!("x^2 y{i}^4"));
        rels.push(format!("y{i}^2 x y{i} x^-1 y{i}^-1"));
        for j in i + 1..=n {
            rels.push(format!("[y{i}, y{j}]"));
        }
    }
    let names: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
    Ok(Presentation::from_relations(&names, &rels.join(", "))?.with_name(format!("H{n}")))
}

fn check_order(order: u128, opts: &ResolveOptions) -> Result<()> {
    if order > opts.max_order as u128 {
        return Err(GroupError::GroupTooLarge {
            order: order.min(usize::MAX as u128) as usize,
            cap: opts.max_order,
        }
        .into());
    }
    Ok(())
}

fn unique_central_involution(g: &FiniteGroup) -> Result<usize> {
    let z = center(g);
    let invs: Vec<usize> = z.elements().iter().copied().filter(|&x| g.elem_order(x) == 2).collect();
    match invs.as_slice() {
        [x] => Ok(*x),
        _ => Err(PresentationError::NoCentralInvolution {
            group: g.label().to_string(),
        }
        .into()),
    }
}

fn normal_closure(g: &FiniteGroup, elems: &[usize]) -> ElemSet {
    let mut conj = Vec::new();
    for &w in elems {
        for x in g.elements() {
            conj.push(g.conj(w, x));
        }
    }
    conj.sort_unstable();
    conj.dedup();
    g.generate(&conj)
}

fn power_of_two(m: usize) -> bool {
    m.is_power_of_two()
}

fn build(spec: &GroupSpec, opts: &ResolveOptions) -> Result<FiniteGroup> {
    if let Some(o) = spec.order_hint() {
        check_order(o, opts)?;
    }
    let g = match spec {
        GroupSpec::Cyclic(n) => cyclic(*n)?,
        GroupSpec::Dihedral(m) => dihedral(*m)?,
        GroupSpec::Dicyclic(m) => dicyclic(*m)?,
        GroupSpec::DihedralPlus(m) | GroupSpec::DihedralMinus(m) => {
            if !power_of_two(*m) || *m < 8 {
                return Err(PresentationError::BadAtomParameter {
                    family: "D<m>+/-".into(),
                    value: *m,
                    requirement: "m a power of two, m >= 8".into(),
                }
                .into());
            }
            let r = if matches!(spec, GroupSpec::DihedralPlus(_)) { m / 4 + 1 } else { m / 4 - 1 };
            semidirect_cyclic(m / 2, 2, r)?
        }
        GroupSpec::DD => bundled("DD", &["a", "b", "c"], "c a = a c, c b = b c, a^2 = b^2 = c^4 = 1, b a = c^2 a b", opts)?,
        GroupSpec::DDPlus => {
            bundled("DD+", &["a", "b", "c"], "c a = a c, c b = b c, a^4 = b^2 = c^4 = 1, b a = c a^3 b", opts)?
        }
        GroupSpec::D8YQ8 => {
            let d8 = dihedral(8)?;
            let q8 = dicyclic(8)?;
            let zd = unique_central_involution(&d8)?;
            let zq = unique_central_involution(&q8)?;
            central_product(&d8, zd, &q8, zq)?
        }
        GroupSpec::H(n) => {
            if *n == 0 {
                return Err(PresentationError::BadAtomParameter {
                    family: "H<n>".into(),
                    value: 0,
                    requirement: "n >= 1".into(),
                }
                .into());
            }
            todd_coxeter(&h_family_presentation(*n)?, opts.max_cosets)?
        }
        GroupSpec::Product(a, b) => {
            let a = build(a, opts)?;
            let b = build(b, opts)?;
            check_order(a.order() as u128 * b.order() as u128, opts)?;
            direct_product(&a, &b)
        }
        GroupSpec::Power(g, k) => {
            let g = build(g, opts)?;
            check_order((g.order() as u128).saturating_pow(*k), opts)?;
            let mut acc = cyclic(1)?;
            for i in 0..*k {
                acc = if i == 0 { g.clone() } else { direct_product(&acc, &g) };
            }
            acc
        }
        GroupSpec::Semidirect { n, m, r } => semidirect_cyclic(*n, *m, *r)?,
        GroupSpec::Central(a, b) => {
            let a = build(a, opts)?;
            let b = build(b, opts)?;
            let za = unique_central_involution(&a)?;
            let zb = unique_central_involution(&b)?;
            central_product(&a, za, &b, zb)?
        }
        GroupSpec::Quotient(g, rels) => {
            let g = build(g, opts)?;
            let names: Vec<String> = g.generators().iter().map(|x| x.name.clone()).collect();
            let p = Presentation::new(names, rels)?;
            let elems: Vec<usize> = p
                .relators
                .iter()
                .map(|w| p.evaluate(&g, w).unwrap_or(g.identity()))
                .collect();
            let n = normal_closure(&g, &elems);
            quotient(&g, &n)?.group
        }
        GroupSpec::Presented { generators, relations } => {
            let p = Presentation::new(generators.clone(), relations)?;
            let enumerated = super::todd_coxeter::enumerate(&p, opts.max_cosets)?;
            check_order(enumerated.len() as u128, opts)?;
            todd_coxeter(&p, opts.max_cosets)?
        }
    };
    check_order(g.order() as u128, opts)?;
    Ok(g.with_label(spec.to_string()))
}

/// Builds the group a spec denotes, with default limits.
pub fn resolve(spec: &GroupSpec) -> Result<FiniteGroup> {
    resolve_with(spec, &ResolveOptions::default())
}

pub fn resolve_with(spec: &GroupSpec, opts: &ResolveOptions) -> Result<FiniteGroup> {
    build(spec, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::is_isomorphic;
    use crate::Error;

    fn p(s: &str) -> GroupSpec {
        parse_spec(s).unwrap()
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(
            p("Q8 x C7"),
            GroupSpec::Product(Box::new(GroupSpec::Dicyclic(8)), Box::new(GroupSpec::Cyclic(7)))
        );
        assert_eq!(p("sdp(3,8,2)"), GroupSpec::Semidirect { n: 3, m: 8, r: 2 });
        match parse_spec("Q8 x x C3") {
            Err(PresentationError::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn atoms_are_case_insensitive() {
        assert_eq!(p("c(7)"), GroupSpec::Cyclic(7));
        assert_eq!(p("dd+"), GroupSpec::DDPlus);
        assert_eq!(p("d8yq8"), GroupSpec::D8YQ8);
        assert_eq!(p("Hn(2)"), GroupSpec::H(2));
        assert_eq!(p("D16-"), GroupSpec::DihedralMinus(16));
        assert!(matches!(parse_spec("Z5"), Err(PresentationError::UnknownAtom { .. })));
    }

    #[test]
    fn print_parse_round_trip() {
        for s in [
            "Q8 x C2^3",
            "C2 x (C3 x C4)",
            "(Q8 x C2)^2",
            "y(D8, Q8)",
            "sdp(4,8,3) / <b^4>",
            "<a, b, x | a^3, b^3, a b = b a, x^2, x a = b x>",
            "D16+ x DD",
            "(C4 x C4) / <a a_2^-1>",
        ] {
            let g = p(s);
            assert_eq!(p(&g.to_string()), g, "{s}");
        }
    }

    #[test]
    fn resolve_examples() {
        assert_eq!(resolve(&p("D8YQ8")).unwrap().order(), 32);
        assert_eq!(resolve(&p("C1")).unwrap().order(), 1);
        let dm = resolve(&p("D16-")).unwrap();
        assert_eq!(dm.order(), 16);
        let a = dm.generator("a").unwrap();
        let b = dm.generator("b").unwrap();
        assert_eq!(dm.conj(a, dm.inv(b)), dm.pow(a, 3));
        assert_eq!(resolve(&p("DD")).unwrap().order(), 16);
        assert_eq!(resolve(&p("DD+")).unwrap().order(), 32);
    }

    #[test]
    fn d16_plus_matches_semidirect() {
        let g = resolve(&p("D16+")).unwrap();
        let h = semidirect_cyclic(8, 2, 5).unwrap();
        assert!(is_isomorphic(&g, &h).is_some());
    }

    #[test]
    fn h1_is_q16() {
        let g = resolve(&p("H1")).unwrap();
        assert!(is_isomorphic(&g, &dicyclic(16).unwrap()).is_some());
        // the other commutator convention gives a group that is not Q16
        let other = Presentation::from_relations(&["x", "y"], "x^4, x^2 y^4, y^2 [x, y]").unwrap();
        let g2 = todd_coxeter(&other, 1000).unwrap();
        assert_eq!(g2.order(), 16);
        assert!(is_isomorphic(&g2, &dicyclic(16).unwrap()).is_none());
    }

    #[test]
    fn quotient_by_words() {
        let g = resolve(&p("sdp(4,8,3) / <b^4>")).unwrap();
        assert_eq!(g.order(), 16);
        assert!(is_isomorphic(&g, &semidirect_cyclic(4, 4, 3).unwrap()).is_some());
    }

    #[test]
    fn order_cap() {
        let err = resolve(&p("C2^9")).unwrap_err();
        assert!(matches!(err, Error::Group(GroupError::GroupTooLarge { order: 512, cap: 256 })));
    }

    #[test]
    fn bundled_presentations_hold() {
        for n in 1..=2 {
            let pres = h_family_presentation(n).unwrap();
            let g = todd_coxeter(&pres, DEFAULT_MAX_COSETS).unwrap();
            assert!(pres.holds_in(&g));
        }
    }
}

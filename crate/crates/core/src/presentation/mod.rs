//! Finite presentations, the group-spec DSL, and coset enumeration.

mod spec;
mod todd_coxeter;
mod words;

use thiserror::Error;

use crate::group::FiniteGroup;

pub use spec::{parse_spec, resolve, resolve_with, GroupSpec, ResolveOptions};
pub use todd_coxeter::{todd_coxeter, DEFAULT_MAX_COSETS};
pub use words::{Base, Factor, Letter, Relation, WordExpr};

use words::{parse_relation, Cursor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("syntax error at byte {offset}: expected {}", expected.join(" or "))]
    Syntax { offset: usize, expected: Vec<String> },
    #[error("coset enumeration exceeded {max_cosets} cosets (the group may be infinite)")]
    CosetOverflow { max_cosets: usize },
    #[error("presentation has no generators")]
    EmptyPresentation,
    #[error("unknown group atom `{name}` at byte {offset}")]
    UnknownAtom { name: String, offset: usize },
    #[error("unknown generator `{name}`")]
    UnknownGenerator { name: String },
    #[error("{group} has no unique central involution")]
    NoCentralInvolution { group: String },
    #[error("{family} needs parameter {value} to satisfy: {requirement}")]
    BadAtomParameter {
        family: String,
        value: usize,
        requirement: String,
    },
}

/// Generator names plus relators as letter words (`2g` for generator `g`,
/// `2g + 1` for its inverse).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
    pub name: Option<String>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relations: &[Relation]) -> Result<Self, PresentationError> {
        if generators.is_empty() {
            return Err(PresentationError::EmptyPresentation);
        }
        let mut relators = Vec::new();
        for r in relations {
            relators.extend(r.relators(&generators)?);
        }
        Ok(Presentation {
            generators,
            relators,
            name: None,
        })
    }

    /// Parses relations written as word equations, separated by commas.
    pub fn from_relations(generators: &[&str], relations: &str) -> Result<Self, PresentationError> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let mut c = Cursor::new(relations, 0);
        let mut rels = Vec::new();
        loop {
            c.skip_ws();
            if c.at_end() {
                break;
            }
            rels.push(parse_relation(&mut c)?);
            c.skip_ws();
            if !c.eat(',') && !c.at_end() {
                return Err(c.error(&[",", "="]));
            }
        }
        Self::new(gens, &rels)
    }

    /// Parses the file format: a `gens: a b c` line followed by one relation
    /// per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut gens: Option<Vec<String>> = None;
        let mut rels = Vec::new();
        let mut line_start = 0;
        for raw in text.split_inclusive('\n') {
            let base = line_start;
            line_start += raw.len();
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            let line = line.trim_end_matches(['\n', '\r']);
            if line.trim().is_empty() {
                continue;
            }
            let mut c = Cursor::new(line, base);
            c.skip_ws();
            match gens {
                None => {
                    if !c.eat_keyword("gens") {
                        return Err(c.error(&["gens:"]));
                    }
                    c.expect(':')?;
                    let mut names = Vec::new();
                    loop {
                        c.skip_ws();
                        c.eat(',');
                        c.skip_ws();
                        if c.at_end() {
                            break;
                        }
                        match c.ident() {
                            Some(n) => names.push(n),
                            None => return Err(c.error(&["generator name"])),
                        }
                    }
                    if names.is_empty() {
                        return Err(PresentationError::EmptyPresentation);
                    }
                    gens = Some(names);
                }
                Some(_) => {
                    rels.push(parse_relation(&mut c)?);
                    c.skip_ws();
                    if !c.at_end() {
                        return Err(c.error(&["=", "end of line"]));
                    }
                }
            }
        }
        let gens = gens.ok_or(PresentationError::EmptyPresentation)?;
        Self::new(gens, &rels)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub(crate) fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("<{} | {} relators>", self.generators.join(","), self.relators.len()))
    }

    /// Value of a letter word in `g`, reading generators by name.
    pub fn evaluate(&self, g: &FiniteGroup, w: &[Letter]) -> Option<usize> {
        let mut x = g.identity();
        for &l in w {
            let gen = g.generator(&self.generators[l / 2]).unwrap_or(g.identity());
            let gen = if l % 2 == 1 { g.inv(gen) } else { gen };
            x = g.mul(x, gen);
        }
        Some(x)
    }

    /// Every relator evaluates to the identity of `g`.
    pub fn holds_in(&self, g: &FiniteGroup) -> bool {
        self.relators
            .iter()
            .all(|r| self.evaluate(g, r) == Some(g.identity()))
    }
}

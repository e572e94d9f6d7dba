//! Words over named generators, shared by presentation files, inline
//! presentations and quotient specs.

use std::fmt;

use super::PresentationError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    /// A generator name, or a run of single-letter generator names such as `ab`.
    Name(String),
    Identity,
    Group(WordExpr),
    /// `[u, v] = u^-1 v^-1 u v`.
    Commutator(WordExpr, WordExpr),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub base: Base,
    pub exp: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordExpr(pub Vec<Factor>);

/// `w0 = w1 = ... = wk`; a single word means `w0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation(pub Vec<WordExpr>);

/// A letter: generator index `g` is `2g`, its inverse `2g + 1`.
pub type Letter = usize;

pub(crate) fn inverse_letter(x: Letter) -> Letter {
    x ^ 1
}

pub(crate) fn invert(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&x| inverse_letter(x)).collect()
}

fn resolve_name(name: &str, gens: &[String]) -> Result<Vec<Letter>, PresentationError> {
    if let Some(i) = gens.iter().position(|g| g == name) {
        return Ok(vec![2 * i]);
    }
    if let Some(i) = gens.iter().position(|g| g.eq_ignore_ascii_case(name)) {
        return Ok(vec![2 * i]);
    }
    // juxtaposed single-letter generators
    let mut out = Vec::new();
    for ch in name.chars() {
        let s = ch.to_string();
        match gens.iter().position(|g| *g == s) {
            Some(i) => out.push(2 * i),
            None => {
                return Err(PresentationError::UnknownGenerator {
                    name: name.to_string(),
                })
            }
        }
    }
    Ok(out)
}

impl WordExpr {
    pub fn letters(&self, gens: &[String]) -> Result<Vec<Letter>, PresentationError> {
        let mut out = Vec::new();
        for f in &self.0 {
            let base = match &f.base {
                Base::Name(n) => resolve_name(n, gens)?,
                Base::Identity => Vec::new(),
                Base::Group(w) => w.letters(gens)?,
                Base::Commutator(u, v) => {
                    let u = u.letters(gens)?;
                    let v = v.letters(gens)?;
                    let mut c = invert(&u);
                    c.extend(invert(&v));
                    c.extend(u);
                    c.extend(v);
                    c
                }
            };
            let piece = if f.exp < 0 { invert(&base) } else { base };
            for _ in 0..f.exp.unsigned_abs() {
                out.extend_from_slice(&piece);
            }
        }
        Ok(out)
    }
}

impl Relation {
    /// Relators `w_i w_(i+1)^-1`.
    pub fn relators(&self, gens: &[String]) -> Result<Vec<Vec<Letter>>, PresentationError> {
        let words = self.0.iter().map(|w| w.letters(gens)).collect::<Result<Vec<_>, _>>()?;
        if words.len() == 1 {
            return Ok(words);
        }
        Ok(words
            .windows(2)
            .map(|p| {
                let mut r = p[0].clone();
                r.extend(invert(&p[1]));
                r
            })
            .collect())
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, fac) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match &fac.base {
                Base::Name(n) => f.write_str(n)?,
                Base::Identity => f.write_str("1")?,
                Base::Group(w) => write!(f, "({w})")?,
                Base::Commutator(u, v) => write!(f, "[{u}, {v}]")?,
            }
            if fac.exp != 1 {
                write!(f, "^{}", fac.exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        f.write_str(&parts.join(" = "))
    }
}

/// Byte-offset cursor over a slice of a larger source text.
pub(crate) struct Cursor<'a> {
    pub src: &'a str,
    pub pos: usize,
    pub base: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str, base: usize) -> Self {
        Cursor { src, pos: 0, base }
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub fn offset(&self) -> usize {
        self.base + self.pos
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    /// Case-insensitive keyword match; consumes it on success.
    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        let r = self.rest();
        if r.len() >= kw.len() && r.is_char_boundary(kw.len()) && r[..kw.len()].eq_ignore_ascii_case(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    pub fn error(&self, expected: &[&str]) -> PresentationError {
        PresentationError::Syntax {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), PresentationError> {
        self.skip_ws();
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[&c.to_string()]))
        }
    }

    pub fn integer(&mut self) -> Result<i64, PresentationError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.bump();
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        self.src[start..self.pos].parse().map_err(|_| {
            self.pos = start;
            self.error(&["integer"])
        })
    }

    pub fn unsigned(&mut self) -> Result<usize, PresentationError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        self.src[start..self.pos].parse().map_err(|_| {
            self.pos = start;
            self.error(&["positive integer"])
        })
    }

    pub fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_alphabetic() => {
                self.bump();
            }
            _ => return None,
        }
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            self.bump();
        }
        Some(self.src[start..self.pos].to_string())
    }
}

const WORD_START: &[&str] = &["generator", "1", "(", "["];

fn parse_factor(c: &mut Cursor) -> Result<Option<Factor>, PresentationError> {
    c.skip_ws();
    let base = match c.peek() {
        Some('(') => {
            c.bump();
            let w = parse_word(c)?;
            c.expect(')')?;
            Base::Group(w)
        }
        Some('[') => {
            c.bump();
            let u = parse_word(c)?;
            c.expect(',')?;
            let v = parse_word(c)?;
            c.expect(']')?;
            Base::Commutator(u, v)
        }
        Some('1') => {
            c.bump();
            Base::Identity
        }
        Some(ch) if ch.is_alphabetic() => Base::Name(c.ident().unwrap()),
        _ => return Ok(None),
    };
    c.skip_ws();
    let exp = if c.eat('^') { c.integer()? } else { 1 };
    Ok(Some(Factor { base, exp }))
}

pub(crate) fn parse_word(c: &mut Cursor) -> Result<WordExpr, PresentationError> {
    let mut factors = Vec::new();
    loop {
        c.skip_ws();
        if !factors.is_empty() && (c.eat('*') || c.eat('·')) {
            continue;
        }
        match parse_factor(c)? {
            Some(f) => factors.push(f),
            None => break,
        }
    }
    if factors.is_empty() {
        return Err(c.error(WORD_START));
    }
    Ok(WordExpr(factors))
}

pub(crate) fn parse_relation(c: &mut Cursor) -> Result<Relation, PresentationError> {
    let mut words = vec![parse_word(c)?];
    loop {
        c.skip_ws();
        if c.eat('=') {
            words.push(parse_word(c)?);
        } else {
            break;
        }
    }
    Ok(Relation(words))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn rel(text: &str) -> Relation {
        let mut c = Cursor::new(text, 0);
        let r = parse_relation(&mut c).unwrap();
        c.skip_ws();
        assert!(c.at_end(), "trailing input in {text:?}");
        r
    }

    #[test]
    fn equation_becomes_relator() {
        let g = gens(&["a", "b", "c"]);
        let r = rel("b a = c^2 a b").relators(&g).unwrap();
        // b a b^-1 a^-1 c^-2
        assert_eq!(r, vec![vec![2, 0, 3, 1, 5, 5]]);
    }

    #[test]
    fn juxtaposition_and_commutators() {
        let g = gens(&["x", "y"]);
        assert_eq!(rel("xy").relators(&g).unwrap(), vec![vec![0, 2]]);
        assert_eq!(rel("[x,y]").relators(&g).unwrap(), vec![vec![1, 3, 0, 2]]);
        assert_eq!(rel("x^-2").relators(&g).unwrap(), vec![vec![1, 1]]);
        assert!(matches!(
            rel("xz").relators(&g),
            Err(PresentationError::UnknownGenerator { .. })
        ));
    }

    #[test]
    fn chains_give_consecutive_relators() {
        let g = gens(&["a", "b", "c"]);
        let r = rel("a^2 = b^2 = c^4 = 1").relators(&g).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r[2], vec![4, 4, 4, 4]);
    }

    #[test]
    fn display_round_trip() {
        for t in ["b a = c^2 a b", "x^4 = x^2 y1^4", "[x, y] (a b)^-1", "1"] {
            let r = rel(t);
            assert_eq!(rel(&r.to_string()), r);
        }
    }
}

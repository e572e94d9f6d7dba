use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::{
    embedding_signs, fundamental_discriminant, rat, rational_square_class, squarefree_part, AbelianFieldDescriptor, Cyclotomic, NumberError,
    Rational, Sign, SignConfig,
};

/// Three-valued answer for predicates the tiers cannot always settle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Truth {
    True,
    False,
    Unknown,
}

/// `q * zeta_n^e`, with `n` odd or divisible by 4 and `gcd(e, n) = 1`
/// (`n = 1`, `e = 0` for rationals).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub root_order: usize,
    pub root_exp: usize,
    pub q: Rational,
}

impl Monomial {
    pub fn from_cyclotomic(x: &Cyclotomic) -> Option<Self> {
        x.as_monomial().map(|(n, e, q)| Monomial {
            root_order: n,
            root_exp: e,
            q,
        })
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::zeta(self.root_order, self.root_exp as i64).scale(&self.q)
    }

    /// One square root, as an element of some cyclotomic field.
    pub fn a_square_root(&self) -> Cyclotomic {
        let d = rational_square_class(&self.q);
        // q = d * (t / den)^2
        let num = self.q.numer().abs();
        let den = self.q.denom().clone();
        let t2: BigInt = (&num * &den) / BigInt::from(d.abs());
        let t = t2.sqrt();
        debug_assert_eq!(&t * &t, t2);
        let scale = Rational::new(t, den);
        let root = Cyclotomic::zeta(2 * self.root_order, self.root_exp as i64);
        (&root * &Cyclotomic::sqrt_squarefree(d)).scale(&scale)
    }

    fn render(&self) -> String {
        let root = match (self.root_order, self.root_exp) {
            (1, _) => String::new(),
            (4, 1) => "i".to_string(),
            (4, 3) => "i^3".to_string(),
            (n, 1) => format!("ζ{n}"),
            (n, e) => format!("ζ{n}^{e}"),
        };
        let q = if self.q.denom().is_one() {
            self.q.numer().to_string()
        } else {
            format!("{}/{}", self.q.numer(), self.q.denom())
        };
        if root.is_empty() {
            q
        } else if self.q.is_one() {
            root
        } else if (-&self.q).is_one() {
            format!("-{root}")
        } else {
            format!("{q}{root}")
        }
    }
}

/// `u` has a square root in `f` (`True`), provably has none (`False`: a
/// rational whose quadratic field is not in `f`, or negative at a real
/// place), or neither could be shown.
pub fn is_square_in_field(u: &Cyclotomic, f: &AbelianFieldDescriptor) -> Truth {
    if u.is_zero() {
        return Truth::True;
    }
    if let Some(m) = Monomial::from_cyclotomic(u) {
        if m.root_order == 1 {
            // a rational is a square in f iff f contains its quadratic field
            let d = rational_square_class(&m.q);
            let fits = || f.conductor() % fundamental_discriminant(d).unsigned_abs() as usize == 0;
            return if d == 1 || (fits() && AbelianFieldDescriptor::quadratic(d).is_subfield_of(f)) {
                Truth::True
            } else {
                Truth::False
            };
        }
        if f.contains(&m.a_square_root()) {
            return Truth::True;
        }
    }
    if f.is_totally_real() {
        if let Ok(signs) = embedding_signs(u, f, &SignConfig::default()) {
            if signs.contains(&Sign::Negative) {
                return Truth::False;
            }
        }
    }
    Truth::Unknown
}

/// The quaternion algebra `(u, c / F)`: `i^2 = u`, `j^2 = c`, `ji = -ij`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuaternionSymbol {
    pub field: AbelianFieldDescriptor,
    pub u: Cyclotomic,
    pub c: Cyclotomic,
}

impl QuaternionSymbol {
    pub fn new(field: AbelianFieldDescriptor, u: Cyclotomic, c: Cyclotomic) -> Result<Self, NumberError> {
        if u.is_zero() || c.is_zero() {
            return Err(NumberError::ZeroEntry);
        }
        for x in [&u, &c] {
            if !field.contains(x) {
                return Err(NumberError::NotInField { field: field.pretty() });
            }
        }
        Ok(QuaternionSymbol { field, u, c })
    }

    pub fn hamiltonian(field: AbelianFieldDescriptor) -> Self {
        QuaternionSymbol {
            field,
            u: Cyclotomic::from_integer(-1),
            c: Cyclotomic::from_integer(-1),
        }
    }

    /// An isomorphic symbol with entries reduced modulo squares of `F`:
    /// roots of unity modulo `mu_w^2`, rationals to the smallest squarefree
    /// representative modulo the rational square classes that become squares
    /// in `F`.
    pub fn normalized(&self) -> QuaternionSymbol {
        let w = self.field.roots_of_unity_order();
        let sq = self.field.square_classes();
        let reduce = |x: &Cyclotomic| -> (Cyclotomic, (u8, u64, bool, usize)) {
            let Some(m) = Monomial::from_cyclotomic(x) else {
                return (x.clone(), (1, 0, false, 0));
            };
            let mut q = m.q.clone();
            let mut root = (1usize, 0usize);
            if m.root_order > 1 {
                let e = m.root_exp * (w / m.root_order);
                if e % 2 == 1 {
                    if w % 4 == 2 {
                        q = -q;
                    } else {
                        root = (w, 1);
                    }
                }
            }
            let d = rational_square_class(&q);
            let best = sq
                .iter()
                .map(|&s| squarefree_part(d * s))
                .min_by_key(|&v| (v.abs(), (v > 0) == (root.0 == 1)))
                .unwrap_or(d);
            let y = Monomial {
                root_order: root.0,
                root_exp: root.1,
                q: rat(best),
            };
            (y.to_cyclotomic(), (0, best.unsigned_abs(), best > 0, root.0))
        };
        let (a, ka) = reduce(&self.u);
        let (b, kb) = reduce(&self.c);
        let (u, c) = if kb < ka { (b, a) } else { (a, b) };
        QuaternionSymbol {
            field: self.field.clone(),
            u,
            c,
        }
    }

    /// `(-1, -1 / F)` up to the normalization above.
    pub fn is_hamiltonian(&self) -> bool {
        let n = self.normalized();
        let m1 = Cyclotomic::from_integer(-1);
        n.u == m1 && n.c == m1
    }

    fn entry(x: &Cyclotomic) -> String {
        match Monomial::from_cyclotomic(x) {
            Some(m) => m.render(),
            None => x.to_string(),
        }
    }
}

impl fmt::Display for QuaternionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalized();
        if n.is_hamiltonian() {
            return write!(f, "H({})", n.field);
        }
        write!(f, "({},{}/{})", Self::entry(&n.u), Self::entry(&n.c), n.field)
    }
}

impl fmt::Debug for QuaternionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?}/{:?})", self.u, self.c, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> AbelianFieldDescriptor {
        AbelianFieldDescriptor::rationals()
    }

    #[test]
    fn squares() {
        let qi = AbelianFieldDescriptor::cyclotomic(4);
        assert_eq!(is_square_in_field(&Cyclotomic::from_integer(-1), &qi), Truth::True);
        assert_eq!(is_square_in_field(&Cyclotomic::from_integer(-1), &q()), Truth::False);
        assert_eq!(is_square_in_field(&Cyclotomic::zeta(4, 1), &qi), Truth::Unknown);
        assert_eq!(is_square_in_field(&Cyclotomic::from_integer(9), &q()), Truth::True);
        let r8 = AbelianFieldDescriptor::real_cyclotomic(8);
        assert_eq!(is_square_in_field(&Cyclotomic::from_integer(2), &r8), Truth::True);
        assert_eq!(is_square_in_field(&Cyclotomic::zeta(7, 3), &AbelianFieldDescriptor::cyclotomic(7)), Truth::True);
    }

    #[test]
    fn symbol_names() {
        let h = QuaternionSymbol::hamiltonian(q());
        assert_eq!(h.to_string(), "H(Q)");
        let s = QuaternionSymbol::new(q(), Cyclotomic::from_integer(-3), Cyclotomic::from_integer(-1)).unwrap();
        assert_eq!(s.to_string(), "(-1,-3/Q)");
        let qi = AbelianFieldDescriptor::cyclotomic(4);
        let s = QuaternionSymbol::new(qi, Cyclotomic::from_integer(3), Cyclotomic::zeta(4, 3)).unwrap();
        assert_eq!(s.to_string(), "(i,-3/Q(i))");
        // -2 becomes -1 modulo the square class of 2 in Q(sqrt 2)
        let r8 = AbelianFieldDescriptor::real_cyclotomic(8);
        let s = QuaternionSymbol::new(r8, Cyclotomic::from_integer(-2), Cyclotomic::from_integer(-1)).unwrap();
        assert_eq!(s.to_string(), "H(Q(√2))");
        // zeta7 is a square in Q(zeta7) up to sign: mu_14 has odd index part
        let f7 = AbelianFieldDescriptor::cyclotomic(7);
        let s = QuaternionSymbol::new(f7, Cyclotomic::zeta(14, 7), Cyclotomic::from_integer(7)).unwrap();
        assert_eq!(s.to_string(), "H(Q(ζ7))");
    }

    #[test]
    fn rejects_bad_entries() {
        assert_eq!(
            QuaternionSymbol::new(q(), Cyclotomic::zero(), Cyclotomic::one()),
            Err(NumberError::ZeroEntry)
        );
        assert!(matches!(
            QuaternionSymbol::new(q(), Cyclotomic::zeta(4, 1), Cyclotomic::one()),
            Err(NumberError::NotInField { .. })
        ));
    }
}

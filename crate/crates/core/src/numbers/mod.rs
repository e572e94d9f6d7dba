//! Exact arithmetic for rationals, cyclotomic numbers and abelian number fields.
//!
//! Every field that appears as a center here is a subfield of some `Q(zeta_k)`,
//! so fields are described by a conductor and a subgroup of `(Z/k)^*`
//! (the Galois group fixing the field), never by minimal polynomials.

mod cyclotomic;
mod field;
mod hilbert;
mod quaternion;
mod signs;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use cyclotomic::Cyclotomic;
pub use field::AbelianFieldDescriptor;
pub use hilbert::{hilbert_symbol_q, kronecker, ramified_places, Place};
pub use quaternion::{is_square_in_field, Monomial, QuaternionSymbol, Truth};
pub use signs::{embedding_signs, Sign, SignConfig};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("Galois index {t} is not coprime to the conductor {conductor}")]
    BadGaloisIndex { t: i64, conductor: usize },
    #[error("field of degree {degree} is not quadratic")]
    NotQuadratic { degree: usize },
    #[error("sign of an embedding could not be certified at {bits} bits")]
    SignUncertain { bits: u32 },
    #[error("field conductor {conductor} is even; 2 ramifies")]
    EvenConductor { conductor: usize },
    #[error("field is not totally real")]
    NotTotallyReal,
    #[error("element is not in the field {field}")]
    NotInField { field: String },
    #[error("zero entry in a quaternion symbol")]
    ZeroEntry,
}

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub(crate) fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let mut b = (base % m) as u128;
    let m = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo `m` (`a` coprime to `m`).
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let a = a % m;
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = x * a % m;
        k += 1;
    }
    k
}

/// The units of `Z/k`, as residues in `0..k` (for `k = 1` this is `[0]`).
pub fn units(k: usize) -> Vec<usize> {
    if k == 1 {
        return vec![0];
    }
    (1..k).filter(|&t| gcd(t as u64, k as u64) == 1).collect()
}

pub fn euler_phi(k: usize) -> usize {
    units(k).len()
}

pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == vec![(n, 1)]
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Squarefree part of a nonzero integer, keeping the sign.
pub fn squarefree_part(n: i64) -> i64 {
    assert!(n != 0);
    let sign = n.signum();
    let mut out = 1i64;
    for (p, e) in prime_factors(n.unsigned_abs()) {
        if e % 2 == 1 {
            out *= p as i64;
        }
    }
    sign * out
}

/// Squarefree integer representing a nonzero rational modulo squares.
pub fn rational_square_class(q: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    let n = q.numer() * q.denom();
    let n = n.to_i64().expect("rational entry too large for square-class reduction");
    squarefree_part(n)
}

/// Fundamental discriminant of `Q(sqrt(d))` for squarefree `d != 1`.
pub fn fundamental_discriminant(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

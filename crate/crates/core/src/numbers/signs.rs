//! Certified signs of real embeddings by fixed-point ball arithmetic.

use num_bigint::{BigInt, Sign as BigSign};
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{AbelianFieldDescriptor, Cyclotomic, NumberError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignConfig {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl Default for SignConfig {
    fn default() -> Self {
        SignConfig {
            start_bits: 64,
            max_bits: 1024,
        }
    }
}

/// `[mid - rad, mid + rad] / 2^bits`.
#[derive(Clone, Debug)]
struct Ball {
    mid: BigInt,
    rad: BigInt,
}

fn atan_inv(x: u64, bits: u32) -> Ball {
    let one = BigInt::from(1) << bits;
    let x2 = BigInt::from(x * x);
    let mut term = &one / x;
    let mut sum = BigInt::zero();
    let mut n = 0u64;
    let mut ops = 1u64;
    while !term.is_zero() {
        let t = &term / (2 * n + 1);
        if n % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &x2;
        n += 1;
        ops += 2;
    }
    Ball {
        mid: sum,
        rad: BigInt::from(ops + 1),
    }
}

fn pi(bits: u32) -> Ball {
    let a = atan_inv(5, bits);
    let b = atan_inv(239, bits);
    Ball {
        mid: a.mid * 16 - b.mid * 4,
        rad: a.rad * 16 + b.rad * 4,
    }
}

/// `cos(2 pi j / k)`.
fn cos_ball(j: usize, k: usize, pi: &Ball, bits: u32) -> Ball {
    let one = BigInt::from(1) << bits;
    let mut a = j % k;
    if 2 * a > k {
        a = k - a;
    }
    // angle = pi * num / den with num/den in [0, 1/2]
    let (mut num, den, negate) = if 4 * a > k { (k - 2 * a, k, true) } else { (2 * a, k, false) };
    if num == 0 {
        let v = if negate { -one } else { one };
        return Ball {
            mid: v,
            rad: BigInt::zero(),
        };
    }
    if 2 * num == den {
        return Ball {
            mid: BigInt::zero(),
            rad: BigInt::zero(),
        };
    }
    let g = num_integer::gcd(num, den);
    num /= g;
    let den = den / g;
    let theta_mid = &pi.mid * num / den;
    let theta_rad = &pi.rad * num / den + 1;
    let theta2 = (&theta_mid * &theta_mid) >> bits;
    let mut term = one.clone();
    let mut sum = one;
    let mut n = 1u64;
    while !term.is_zero() {
        term = ((term * &theta2) >> bits) / ((2 * n - 1) * (2 * n));
        if n % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        n += 1;
    }
    let rad = BigInt::from(n * (n + 4) + 2) + theta_rad;
    Ball {
        mid: if negate { -sum } else { sum },
        rad,
    }
}

fn evaluate(x: &Cyclotomic, t: usize, bits: u32) -> Ball {
    let k = x.conductor();
    let p = pi(bits + 8);
    let mut mid = BigInt::zero();
    let mut rad = BigInt::zero();
    for (j, c) in x.coefficients().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let b = cos_ball(j * t % k.max(1), k.max(1), &p, bits + 8);
        let n = c.numer();
        let d = c.denom();
        mid += &b.mid * n / d;
        rad += &b.rad * n.abs() / d + 2;
    }
    Ball { mid, rad }
}

/// Sign of `sigma_t(x)` for every real embedding `sigma_t` of the totally
/// real field `f`, in the order of [`AbelianFieldDescriptor::real_embeddings`].
pub fn embedding_signs(
    x: &Cyclotomic,
    f: &AbelianFieldDescriptor,
    cfg: &SignConfig,
) -> Result<Vec<Sign>, NumberError> {
    if !f.is_totally_real() {
        return Err(NumberError::NotTotallyReal);
    }
    if x.is_zero() {
        return Err(NumberError::ZeroEntry);
    }
    if !f.contains(x) {
        return Err(NumberError::NotInField { field: f.pretty() });
    }
    if let Some(q) = x.as_rational() {
        let s = if q.is_positive() { Sign::Positive } else { Sign::Negative };
        return Ok(vec![s; f.degree()]);
    }
    let mut out = Vec::new();
    for t in f.real_embeddings() {
        let mut bits = cfg.start_bits;
        let sign = loop {
            let b = evaluate(x, t % x.conductor(), bits);
            if b.mid.abs() > b.rad {
                break if b.mid.sign() == BigSign::Minus { Sign::Negative } else { Sign::Positive };
            }
            if bits >= cfg.max_bits {
                return Err(NumberError::SignUncertain { bits });
            }
            bits = (bits * 2).min(cfg.max_bits);
        };
        out.push(sign);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;
    use proptest::prelude::*;

    #[test]
    fn rational_shortcut() {
        let q = AbelianFieldDescriptor::rationals();
        let cfg = SignConfig::default();
        assert_eq!(embedding_signs(&Cyclotomic::from_integer(-1), &q, &cfg), Ok(vec![Sign::Negative]));
        assert_eq!(embedding_signs(&Cyclotomic::from_integer(-3), &q, &cfg), Ok(vec![Sign::Negative]));
    }

    #[test]
    fn sqrt2_has_both_signs() {
        let f = AbelianFieldDescriptor::real_cyclotomic(8);
        let s2 = &Cyclotomic::zeta(8, 1) + &Cyclotomic::zeta(8, 7);
        let signs = embedding_signs(&s2, &f, &SignConfig::default()).unwrap();
        assert_eq!(signs, vec![Sign::Positive, Sign::Negative]);
    }

    #[test]
    fn pi_digits() {
        let p = pi(128);
        let approx = p.mid.to_string().parse::<f64>().unwrap() / 2f64.powi(128);
        assert!((approx - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn uncertain_when_precision_is_tiny() {
        // sqrt 2 minus a 16-digit decimal approximation; too close to zero for 16 bits
        let f = AbelianFieldDescriptor::real_cyclotomic(8);
        let s2 = &Cyclotomic::zeta(8, 1) + &Cyclotomic::zeta(8, 7);
        let close = &s2 - &Cyclotomic::from_rational(Rational::new(14142135623730951i64.into(), (10i64.pow(16)).into()));
        let cfg = SignConfig {
            start_bits: 8,
            max_bits: 16,
        };
        assert_eq!(embedding_signs(&close, &f, &cfg), Err(NumberError::SignUncertain { bits: 16 }));
        assert!(embedding_signs(&close, &f, &SignConfig::default()).is_ok());
    }

    use crate::numbers::Rational;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn squares_are_totally_positive(
            k in prop::sample::select(vec![5usize, 7, 8, 9, 12, 13, 16]),
            c in prop::collection::vec(-4i64..5, 1..4),
        ) {
            let f = AbelianFieldDescriptor::real_cyclotomic(k);
            let mut x = Cyclotomic::from_integer(c[0]);
            for (j, &cj) in c.iter().enumerate().skip(1) {
                let r = &Cyclotomic::zeta(k, j as i64) + &Cyclotomic::zeta(k, -(j as i64));
                x = &x + &r.scale(&rat(cj));
            }
            prop_assume!(!x.is_zero());
            let sq = &x * &x;
            let signs = embedding_signs(&sq, &f, &SignConfig::default()).unwrap();
            prop_assert!(signs.iter().all(|&s| s == Sign::Positive));
        }
    }
}

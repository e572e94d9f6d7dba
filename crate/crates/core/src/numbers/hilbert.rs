use std::fmt;

use serde::Serialize;

use super::{prime_factors, rational_square_class, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("∞"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

fn jacobi(mut a: i64, mut n: i64) -> i32 {
    debug_assert!(n > 0 && n % 2 == 1);
    a = a.rem_euclid(n);
    let mut result = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol `(a / n)`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -1;
        }
    }
    let v = n.trailing_zeros();
    n >>= v;
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    if n == 1 {
        return result;
    }
    result * jacobi(a, n)
}

fn split(a: i64, p: i64) -> (u32, i64) {
    if a % p == 0 {
        (1, a / p)
    } else {
        (0, a)
    }
}

fn squarefree_symbol(a: i64, b: i64, place: Place) -> i32 {
    match place {
        Place::Infinity => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split(a, 2);
            let (beta, v) = split(b, 2);
            let eps = |x: i64| ((x.rem_euclid(4) - 1) / 2) as u32 & 1;
            let omega = |x: i64| {
                let r = x.rem_euclid(8);
                u32::from(r == 3 || r == 5)
            };
            let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let p = p as i64;
            let (alpha, u) = split(a, p);
            let (beta, v) = split(b, p);
            let mut s = 1;
            if alpha * beta == 1 && (p - 1) / 2 % 2 == 1 {
                s = -s;
            }
            if beta == 1 {
                s *= jacobi(u, p);
            }
            if alpha == 1 {
                s *= jacobi(v, p);
            }
            s
        }
    }
}

/// Hilbert symbol `(a, b)_v` over `Q`.
pub fn hilbert_symbol_q(a: &Rational, b: &Rational, place: Place) -> i32 {
    let a = rational_square_class(a);
    let b = rational_square_class(b);
    squarefree_symbol(a, b, place)
}

/// Places of `Q` where `(a, b / Q)` ramifies.
pub fn ramified_places(a: &Rational, b: &Rational) -> Vec<Place> {
    let sa = rational_square_class(a);
    let sb = rational_square_class(b);
    let mut places = vec![Place::Infinity, Place::Prime(2)];
    let mut odd: Vec<u64> = prime_factors(sa.unsigned_abs())
        .into_iter()
        .chain(prime_factors(sb.unsigned_abs()))
        .map(|(p, _)| p)
        .filter(|&p| p != 2)
        .collect();
    odd.sort_unstable();
    odd.dedup();
    places.extend(odd.into_iter().map(Place::Prime));
    places.retain(|&v| squarefree_symbol(sa, sb, v) == -1);
    places.sort();
    places
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;
    use proptest::prelude::*;

    /// Oracle: a nontrivial solution of `a x^2 + b y^2 = z^2` over `Q_p`
    /// exists iff a primitive one exists modulo a high enough power of `p`.
    fn brute_symbol(a: i64, b: i64, p: i64) -> i32 {
        let n = if p == 2 { 5 } else { 3 };
        let m = p.pow(n);
        for x in 0..m {
            for y in 0..m {
                let lhs = (a * x * x + b * y * y).rem_euclid(m);
                for z in 0..m {
                    if x % p == 0 && y % p == 0 && z % p == 0 {
                        continue;
                    }
                    if (z * z).rem_euclid(m) == lhs {
                        return 1;
                    }
                }
            }
        }
        -1
    }

    #[test]
    fn doc_examples() {
        assert_eq!(hilbert_symbol_q(&rat(-1), &rat(-1), Place::Infinity), -1);
        assert_eq!(hilbert_symbol_q(&rat(-1), &rat(-1), Place::Prime(2)), -1);
        // -1 is not a square mod 3, so x^2 + z^2 = -3 y^2 has no primitive
        // solution; the algebra ramifies exactly at 3 and infinity
        assert_eq!(hilbert_symbol_q(&rat(-1), &rat(-3), Place::Prime(3)), -1);
        assert_eq!(brute_symbol(-1, -3, 3), -1);
        assert_eq!(hilbert_symbol_q(&rat(-1), &rat(-3), Place::Prime(2)), 1);
    }

    #[test]
    fn no_odd_solutions_of_sum_of_three_squares_mod_8() {
        // x^2 + y^2 + z^2 = 0 mod 8 has no solution with all odd entries
        let found = (1..8)
            .step_by(2)
            .flat_map(|x| (1..8).step_by(2).flat_map(move |y| (1..8).step_by(2).map(move |z| (x, y, z))))
            .any(|(x, y, z): (i64, i64, i64)| (x * x + y * y + z * z) % 8 == 0);
        assert!(!found);
    }

    #[test]
    fn local_formulas_match_brute_force() {
        let sqf = [-15i64, -10, -7, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 15];
        for &a in &sqf {
            for &b in &sqf {
                for p in [2i64, 3, 5] {
                    assert_eq!(
                        squarefree_symbol(a, b, Place::Prime(p as u64)),
                        brute_symbol(a, b, p),
                        "({a},{b})_{p}"
                    );
                }
            }
        }
    }

    #[test]
    fn kronecker_values() {
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 5), 1);
        assert_eq!(kronecker(8, 3), -1);
        assert_eq!(kronecker(8, 7), 1);
        assert_eq!(kronecker(-8, 3), 1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-3, 4), 1);
    }

    #[test]
    fn hamiltonian_ramifies_at_two_and_infinity() {
        assert_eq!(ramified_places(&rat(-1), &rat(-1)), vec![Place::Infinity, Place::Prime(2)]);
        assert_eq!(ramified_places(&rat(-1), &rat(-3)), vec![Place::Infinity, Place::Prime(3)]);
        assert!(ramified_places(&rat(1), &rat(-7)).is_empty());
    }

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        (-2000i64..2000, 1i64..200)
            .prop_filter("nonzero", |(n, _)| *n != 0)
            .prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn hilbert_reciprocity(a in nonzero_rational(), b in nonzero_rational()) {
            let sa = rational_square_class(&a);
            let sb = rational_square_class(&b);
            let mut places = vec![Place::Infinity, Place::Prime(2)];
            for (p, _) in prime_factors(sa.unsigned_abs()).into_iter().chain(prime_factors(sb.unsigned_abs())) {
                if p != 2 && !places.contains(&Place::Prime(p)) {
                    places.push(Place::Prime(p));
                }
            }
            let product: i32 = places.iter().map(|&v| hilbert_symbol_q(&a, &b, v)).product();
            prop_assert_eq!(product, 1);
            prop_assert_eq!(ramified_places(&a, &b).len() % 2, 0);
        }
    }
}

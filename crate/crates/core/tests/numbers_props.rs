use num_bigint::BigInt;
use proptest::prelude::*;
use zgsep::numbers::{
    embedding_signs, hilbert_symbol_q, prime_factors, ramified_places, squarefree_part, AbelianFieldDescriptor, Cyclotomic, Place,
    Rational, Sign, SignConfig,
};

const CONDUCTORS: &[usize] = &[1, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24];

fn element() -> impl Strategy<Value = Cyclotomic> {
    (prop::sample::select(CONDUCTORS), prop::collection::vec((0i64..24, -5i64..=5, 1i64..=3), 0..4)).prop_map(|(k, terms)| {
        Cyclotomic::from_terms(k, terms.into_iter().map(|(j, a, b)| (j, Rational::new(BigInt::from(a), BigInt::from(b)))))
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-200i64..=200, 1i64..=30)
        .prop_filter("nonzero", |(a, _)| *a != 0)
        .prop_map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
}

fn places(a: &Rational, b: &Rational) -> Vec<Place> {
    let mut primes = vec![2u64];
    for x in [a.numer(), a.denom(), b.numer(), b.denom()] {
        let n: u64 = x.magnitude().try_into().unwrap();
        primes.extend(prime_factors(n).into_iter().map(|(p, _)| p));
    }
    primes.sort_unstable();
    primes.dedup();
    let mut out = vec![Place::Infinity];
    out.extend(primes.into_iter().map(Place::Prime));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Cyclotomic::one(), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Cyclotomic::one());
        }
    }

    #[test]
    fn galois_is_multiplicative(a in element(), b in element(), t in 1i64..240) {
        let k = num_integer::lcm(a.conductor(), b.conductor());
        prop_assume!(num_integer::gcd(t, k as i64) == 1);
        let ab = &a * &b;
        let lhs = ab.galois_apply(t).unwrap();
        let rhs = &a.galois_apply(t).unwrap() * &b.galois_apply(t).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.conjugate().galois_apply(t).unwrap(), a.galois_apply(-t).unwrap());
    }

    #[test]
    fn conductor_is_minimal(a in element()) {
        // rewriting in a bigger field and back changes nothing
        let lifted = Cyclotomic::from_terms(
            2 * a.conductor().max(1) * 3,
            a.lift(a.conductor().max(1)).into_iter().enumerate().map(|(j, q)| ((6 * j) as i64, q)),
        );
        prop_assert_eq!(&lifted, &a);
        prop_assert_eq!(lifted.conductor(), a.conductor());
    }

    #[test]
    fn hilbert_reciprocity(a in rational(), b in rational()) {
        let product: i32 = places(&a, &b).into_iter().map(|v| hilbert_symbol_q(&a, &b, v)).product();
        prop_assert_eq!(product, 1);
        let ram = ramified_places(&a, &b);
        prop_assert_eq!(ram.len() % 2, 0);
        for v in places(&a, &b) {
            prop_assert_eq!(hilbert_symbol_q(&a, &b, v) == -1, ram.contains(&v));
        }
    }

    #[test]
    fn quadratic_round_trip(d in -150i64..=150) {
        prop_assume!(d != 0 && d != 1 && squarefree_part(d) == d);
        let f = AbelianFieldDescriptor::quadratic(d);
        prop_assert_eq!(f.degree(), 2);
        prop_assert_eq!(f.quadratic_identity().unwrap(), d);
        prop_assert!(f.contains(&Cyclotomic::sqrt_squarefree(d)));
        let rebuilt = AbelianFieldDescriptor::new(f.conductor(), &f.subgroup_generators());
        prop_assert_eq!(rebuilt, f);
    }

    #[test]
    fn squares_are_positive(k in prop::sample::select(vec![5usize, 7, 8, 9, 12, 13, 15, 16, 20]), coeffs in prop::collection::vec(-4i64..=4, 1..4)) {
        let f = AbelianFieldDescriptor::real_cyclotomic(k);
        // x = sum c_j (zeta^j + zeta^-j) lies in the real subfield
        let mut x = Cyclotomic::zero();
        for (j, c) in coeffs.iter().enumerate() {
            let t = &Cyclotomic::zeta(k, j as i64) + &Cyclotomic::zeta(k, -(j as i64));
            x = &x + &t.scale(&Rational::from_integer(BigInt::from(*c)));
        }
        prop_assume!(!x.is_zero());
        let signs = embedding_signs(&(&x * &x), &f, &SignConfig::default()).unwrap();
        prop_assert_eq!(signs.len(), f.degree());
        prop_assert!(signs.iter().all(|s| *s == Sign::Positive));
    }
}

#[test]
fn field_names() {
    assert_eq!(AbelianFieldDescriptor::cyclotomic(6).pretty(), "Q(√-3)");
    assert_eq!(AbelianFieldDescriptor::cyclotomic(4).pretty(), "Q(i)");
    assert_eq!(AbelianFieldDescriptor::real_cyclotomic(8).pretty(), "Q(√2)");
    assert_eq!(AbelianFieldDescriptor::real_cyclotomic(12).pretty(), "Q(√3)");
    assert_eq!(AbelianFieldDescriptor::quadratic(-2).pretty(), "Q(√-2)");
    assert_eq!(AbelianFieldDescriptor::cyclotomic(7).pretty(), "Q(ζ7)");
    assert_eq!(AbelianFieldDescriptor::real_cyclotomic(16).pretty(), "Q(ζ16+ζ16^-1)");
}

#[test]
fn hilbert_small_table() {
    let r = |n: i64| Rational::from_integer(BigInt::from(n));
    // (-1,-1) ramifies at 2 and infinity, (-1,-3) at 3 and infinity
    assert_eq!(ramified_places(&r(-1), &r(-1)), vec![Place::Infinity, Place::Prime(2)]);
    assert_eq!(ramified_places(&r(-1), &r(-3)), vec![Place::Infinity, Place::Prime(3)]);
    assert!(ramified_places(&r(2), &r(-1)).is_empty());
    assert_eq!(hilbert_symbol_q(&r(2), &r(3), Place::Prime(3)), -1);
}

proptest! {
    #[test]
    fn local_degree_of_cyclotomic(k in 1usize..=120, p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        // [Q_p(zeta_k) : Q_p] = phi(p^a) * (order of p mod k / p^a)
        let mut pa = 1usize;
        while k % (pa * p as usize) == 0 {
            pa *= p as usize;
        }
        let m = k / pa;
        let e = (1..=pa).filter(|&t| num_integer::gcd(t, pa) == 1).count();
        let mut f = 1;
        let mut x = p as usize % m.max(1);
        while m > 1 && x != 1 {
            x = x * p as usize % m;
            f += 1;
        }
        let field = AbelianFieldDescriptor::cyclotomic(k);
        prop_assert_eq!(field.local_degree(Place::Prime(p)), e * f);
    }
}

#[test]
fn local_degrees_of_small_fields() {
    let q2 = AbelianFieldDescriptor::quadratic(-2);
    assert_eq!(q2.local_degree(Place::Prime(2)), 2);
    assert_eq!(q2.local_degree(Place::Prime(3)), 1);
    assert_eq!(q2.local_degree(Place::Prime(5)), 2);
    assert_eq!(q2.local_degree(Place::Infinity), 2);
    assert_eq!(AbelianFieldDescriptor::real_cyclotomic(8).local_degree(Place::Infinity), 1);
    assert_eq!(AbelianFieldDescriptor::rationals().local_degree(Place::Prime(7)), 1);
}

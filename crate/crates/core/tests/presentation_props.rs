use zgsep::group::{dicyclic, is_isomorphic};
use zgsep::presentation::{todd_coxeter, Presentation, DEFAULT_MAX_COSETS};

const BUNDLED: &[(&str, &str, usize)] = &[
    ("DD", "gens: a b c\nc a = a c\nc b = b c\na^2 = b^2 = c^4 = 1\nb a = c^2 a b\n", 16),
    ("DD+", "gens: a b c\nc a = a c\nc b = b c\na^4 = b^2 = c^4 = 1\nb a = c a^3 b\n", 32),
    ("H1", "gens: x y\nx^4\nx^2 y^4 = 1\ny^2 x y x^-1 y^-1\n", 16),
    ("Q8", "gens: i j\ni^4\ni^2 = j^2\nj i j^-1 = i^-1\n", 8),
    ("order 18", "gens: a b x\na^3\nb^3\na b = b a\nx^2\nx a = b x\n", 18),
    ("S3", "# symmetric group\ngens: s t\ns^2 = t^2 = 1\n(s t)^3\n", 6),
];

#[test]
fn enumeration_satisfies_relators() {
    for (name, text, order) in BUNDLED {
        let p = Presentation::parse(text).unwrap();
        let g = todd_coxeter(&p, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(g.order(), *order, "{name}");
        assert!(p.holds_in(&g), "{name}");
    }
}

#[test]
fn h1_is_q16() {
    let g = todd_coxeter(&Presentation::parse(BUNDLED[2].1).unwrap(), DEFAULT_MAX_COSETS).unwrap();
    assert!(is_isomorphic(&g, &dicyclic(16).unwrap()).is_some());
}

#[test]
fn coset_limit_is_an_error() {
    let free = Presentation::parse("gens: a b\na^2\n").unwrap();
    assert!(todd_coxeter(&free, 500).is_err());
    let big = Presentation::parse("gens: a\na^600\n").unwrap();
    assert!(todd_coxeter(&big, 100).is_err());
    assert_eq!(todd_coxeter(&big, 1000).unwrap().order(), 600);
}

#[test]
fn malformed_files() {
    for text in ["", "a^2\n", "gens:\n", "gens: a\na^\n", "gens: a\nb^2\n"] {
        assert!(Presentation::parse(text).is_err(), "{text:?}");
    }
}

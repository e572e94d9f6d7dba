#![allow(dead_code)]

use proptest::prelude::*;
use zgsep::presentation::resolve;
use zgsep::FiniteGroup;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow_mod(r: usize, e: usize, n: usize) -> usize {
    (0..e).fold(1 % n, |acc, _| acc * r % n)
}

/// Specs of small groups from every constructor family.
pub fn small_spec() -> impl Strategy<Value = String> {
    let sdp = (2usize..=12, 1usize..=6, 1usize..12).prop_filter_map("action", |(n, m, r)| {
        let r = r % n;
        (gcd(r, n) == 1 && pow_mod(r, m, n) == 1).then(|| format!("sdp({n},{m},{r})"))
    });
    let atom = prop_oneof![
        (1usize..=24).prop_map(|n| format!("C{n}")),
        (1usize..=12).prop_map(|n| format!("D{}", 2 * n)),
        (2usize..=8).prop_map(|n| format!("Q{}", 4 * n)),
        sdp,
        Just("D16+".to_string()),
        Just("D16-".to_string()),
        Just("DD".to_string()),
    ];
    prop_oneof![
        3 => atom.clone(),
        1 => (atom, 1usize..=4).prop_map(|(a, n)| format!("{a} x C{n}")),
    ]
    .prop_filter("keep orders small", |s| resolve(&zgsep::presentation::parse_spec(s).unwrap()).map(|g| g.order() <= 64).unwrap_or(false))
}

pub fn build(spec: &str) -> FiniteGroup {
    resolve(&zgsep::presentation::parse_spec(spec).unwrap()).unwrap()
}

/// The same group with its elements renamed by `perm` (`perm[0] = 0` not required).
pub fn relabel(g: &FiniteGroup, perm: &[usize]) -> FiniteGroup {
    let n = g.order();
    let mut table = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            table[perm[x]][perm[y]] = perm[g.mul(x, y)];
        }
    }
    FiniteGroup::from_cayley(&table, format!("{} relabeled", g.label())).unwrap()
}

pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    p
}

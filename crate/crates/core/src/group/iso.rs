use super::{center, conjugacy_classes, derived_subgroup, FiniteGroup};

/// Isomorphism invariants used to reject candidates before backtracking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFingerprint {
    pub order: usize,
    pub exponent: usize,
    pub class_count: usize,
    pub center_order: usize,
    pub derived_order: usize,
    /// Sorted multiset of (element order, class size).
    pub element_profile: Vec<(usize, usize)>,
}

fn element_keys(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let mut keys = vec![(0, 0); g.order()];
    for c in conjugacy_classes(g) {
        for &m in &c.members {
            keys[m] = (g.elem_order(m), c.members.len());
        }
    }
    keys
}

pub fn fingerprint(g: &FiniteGroup) -> GroupFingerprint {
    let mut element_profile = element_keys(g);
    element_profile.sort_unstable();
    GroupFingerprint {
        order: g.order(),
        exponent: g.exponent(),
        class_count: conjugacy_classes(g).len(),
        center_order: center(g).order(),
        derived_order: derived_subgroup(g).order(),
        element_profile,
    }
}

/// Small generating set: repeatedly add an element of maximal order outside
/// the current span.
fn short_generators(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = g.generate(&[]);
    while span.len() < g.order() {
        let x = g
            .elements()
            .filter(|&x| !span.contains(x))
            .max_by_key(|&x| (g.elem_order(x), std::cmp::Reverse(x)))
            .unwrap();
        gens.push(x);
        span = g.generate(&gens);
    }
    gens
}

/// Searches for an isomorphism `G -> H`; returns the element map if one exists.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    if fingerprint(g) != fingerprint(h) {
        return None;
    }
    let gens = short_generators(g);
    if gens.is_empty() {
        return Some(vec![0]);
    }
    let gkeys = element_keys(g);
    let hkeys = element_keys(h);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| h.elements().filter(|&y| hkeys[y] == gkeys[x]).collect())
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search(g, h, &gens, &candidates, &mut images)
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let k = images.len();
    if k == gens.len() {
        let map = g.extend_on_generators(h, gens, images)?;
        let mut hit = vec![false; h.order()];
        for &y in &map {
            if y == usize::MAX || std::mem::replace(&mut hit[y], true) {
                return None;
            }
        }
        return Some(map);
    }
    for &y in &candidates[k] {
        images.push(y);
        if partial_ok(g, h, &gens[..=k], images) {
            if let Some(m) = search(g, h, gens, candidates, images) {
                return Some(m);
            }
        }
        images.pop();
    }
    None
}

fn partial_ok(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> bool {
    let Some(map) = g.extend_on_generators(h, gens, images) else {
        return false;
    };
    let mut hit = vec![false; h.order()];
    for &y in map.iter().filter(|&&y| y != usize::MAX) {
        if std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    true
}

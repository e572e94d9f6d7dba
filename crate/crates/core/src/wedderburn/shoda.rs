use std::collections::HashSet;

use super::algebra::{epsilon, GroupAlgebraElement};
use crate::group::{normalizer, subgroup_classes, ElemSet, FiniteGroup, GroupError, Subgroup};
use crate::numbers::euler_phi;

/// A strong Shoda pair `(H, K)` with its normalizer `N = N_G(K)` and the
/// primitive central idempotent `e(G, H, K)` it produces.
#[derive(Clone, Debug)]
pub struct StrongShodaPair {
    pub h: Subgroup,
    pub k: Subgroup,
    pub n: Subgroup,
    /// Generator of `H/K`.
    pub h0: usize,
    pub epsilon: GroupAlgebraElement,
    pub e: GroupAlgebraElement,
}

impl StrongShodaPair {
    /// `[H:K]`.
    pub fn m(&self) -> usize {
        self.h.order() / self.k.order()
    }

    /// `[G:N]^2 phi([H:K]) [N:H]`.
    pub fn q_dimension(&self, g: &FiniteGroup) -> usize {
        let gn = g.order() / self.n.order();
        gn * gn * euler_phi(self.m()) * (self.n.order() / self.h.order())
    }
}

/// An element generating `H` modulo `K`, if `H/K` is cyclic.
pub(crate) fn cyclic_generator(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Option<usize> {
    let m = h.order() / k.order();
    h.elements().iter().copied().find(|&x| {
        // order of x modulo K must be m
        let mut y = x;
        let mut ord = 1;
        while !k.contains(y) {
            y = g.mul(y, x);
            ord += 1;
        }
        ord == m
    })
}

/// Right transversal of `N` in `G`, starting with the identity.
pub(crate) fn transversal(g: &FiniteGroup, n: &Subgroup) -> Vec<usize> {
    let mut covered = ElemSet::new(g.order());
    let mut reps = Vec::new();
    for x in g.elements() {
        if covered.contains(x) {
            continue;
        }
        reps.push(x);
        for &m in n.elements() {
            covered.insert(g.mul(m, x));
        }
    }
    reps
}

fn check_pair(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Option<StrongShodaPair> {
    if !k.is_subgroup_of(h) || !k.is_normal_in_subgroup(g, h) {
        return None;
    }
    let n = normalizer(g, k);
    if !h.is_subgroup_of(&n) || !h.is_normal_in_subgroup(g, &n) {
        return None;
    }
    let h0 = cyclic_generator(g, h, k)?;
    // H/K is maximal abelian in N/K iff every n commuting with h0 modulo K lies in H
    if n
        .elements()
        .iter()
        .any(|&x| !h.contains(x) && k.contains(g.commutator(x, h0)))
    {
        return None;
    }
    let eps = epsilon(g, h, k).ok()?;
    let reps = transversal(g, &n);
    let mut e = eps.clone();
    for &x in reps.iter().skip(1) {
        let c = eps.conjugate(g, x);
        if !eps.mul(g, &c).is_zero() {
            return None;
        }
        e = e.add(&c);
    }
    Some(StrongShodaPair {
        h: h.clone(),
        k: k.clone(),
        n,
        h0,
        epsilon: eps,
        e,
    })
}

pub fn is_strong_shoda_pair(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> bool {
    check_pair(g, h, k).is_some()
}

/// `[H, H]` for a subgroup `H`.
fn derived(g: &FiniteGroup, h: &Subgroup) -> ElemSet {
    let mut comms: Vec<usize> = Vec::new();
    let mut seen = HashSet::new();
    for &a in h.generators() {
        for &b in h.elements() {
            let c = g.commutator(a, b);
            if c != 0 && seen.insert(c) {
                comms.push(c);
            }
        }
    }
    // closure under conjugation by H
    loop {
        let s = g.generate(&comms);
        let mut grew = false;
        for &x in h.generators() {
            for c in s.to_vec() {
                let d = g.conj(c, x);
                if !s.contains(d) && seen.insert(d) {
                    comms.push(d);
                    grew = true;
                }
            }
        }
        if !grew {
            return s;
        }
    }
}

/// Strong Shoda pairs whose idempotents are pairwise distinct, searched until
/// their dimensions add up to `|G|`. Larger `H` are preferred, so the acting
/// group `N/H` tends to be small.
///
/// Returns the pairs found; the caller checks completeness.
pub fn strong_shoda_pairs(g: &FiniteGroup, cap: usize) -> Result<Vec<StrongShodaPair>, GroupError> {
    let classes = subgroup_classes(g, cap)?;
    let all: Vec<Subgroup> = classes.iter().flat_map(|c| c.conjugates(g)).collect();
    let mut found: Vec<StrongShodaPair> = Vec::new();
    let mut seen: HashSet<GroupAlgebraElement> = HashSet::new();
    let mut total = 0;
    for class in classes.iter().rev() {
        let h = &class.representative;
        let hd = derived(g, h);
        let mut ks: Vec<&Subgroup> = all
            .iter()
            .filter(|k| k.is_subgroup_of(h) && hd.is_subset(k.set()))
            .collect();
        // larger K first: smaller cyclotomic field
        ks.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.elements().cmp(b.elements())));
        for k in ks {
            if total == g.order() {
                return Ok(found);
            }
            if cyclic_generator(g, h, k).is_none() {
                continue;
            }
            if let Some(p) = check_pair(g, h, k) {
                if seen.insert(p.e.clone()) {
                    total += p.q_dimension(g);
                    found.push(p);
                }
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dicyclic, dihedral};

    #[test]
    fn q8_pairs() {
        let g = dicyclic(8).unwrap();
        let pairs = strong_shoda_pairs(&g, 256).unwrap();
        let dims: Vec<usize> = pairs.iter().map(|p| p.q_dimension(&g)).collect();
        let mut sorted = dims.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 1, 1, 1, 4]);
        for p in &pairs {
            assert!(is_strong_shoda_pair(&g, &p.h, &p.k));
            assert!(p.e.is_idempotent(&g));
            assert!(p.e.is_central(&g));
        }
    }

    #[test]
    fn cyclic_components_match_divisors() {
        let g = cyclic(12).unwrap();
        let pairs = strong_shoda_pairs(&g, 256).unwrap();
        // one component Q(zeta_d) per divisor d of 12
        let mut ms: Vec<usize> = pairs.iter().map(|p| p.m()).collect();
        ms.sort();
        assert_eq!(ms, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn non_pairs_rejected() {
        let g = dihedral(8).unwrap();
        // (G, 1): G/1 is not cyclic
        assert!(!is_strong_shoda_pair(&g, &Subgroup::whole(&g), &Subgroup::trivial(&g)));
        // (<b>, 1): <b> is not normal in N_G(1) = G
        let b = g.generator("b").unwrap();
        assert!(!is_strong_shoda_pair(&g, &Subgroup::from_generators(&g, &[b]), &Subgroup::trivial(&g)));
        let a = g.generator("a").unwrap();
        assert!(is_strong_shoda_pair(&g, &Subgroup::from_generators(&g, &[a]), &Subgroup::trivial(&g)));
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::group::{ElemSet, FiniteGroup, GroupError, Subgroup};
use crate::numbers::Rational;

/// An element of `QG` as integer coefficients over a common denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupAlgebraElement {
    num: Vec<i128>,
    den: i128,
}

impl GroupAlgebraElement {
    fn normalized(mut num: Vec<i128>, mut den: i128) -> Self {
        assert!(den != 0);
        if den < 0 {
            den = -den;
            num.iter_mut().for_each(|x| *x = -*x);
        }
        let mut g = den;
        for &x in &num {
            if g == 1 {
                break;
            }
            g = g.gcd(&x);
        }
        if g > 1 {
            num.iter_mut().for_each(|x| *x /= g);
            den /= g;
        }
        GroupAlgebraElement { num, den }
    }

    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement { num: vec![0; n], den: 1 }
    }

    pub fn one(n: usize) -> Self {
        Self::element(n, 0)
    }

    pub fn element(n: usize, g: usize) -> Self {
        let mut num = vec![0; n];
        num[g] = 1;
        GroupAlgebraElement { num, den: 1 }
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&x| x == 0)
    }

    pub fn coefficient(&self, g: usize) -> Rational {
        Rational::new(BigInt::from(self.num[g]), BigInt::from(self.den))
    }

    /// Numerator and denominator of the coefficient of `g`.
    pub fn coefficient_parts(&self, g: usize) -> (i128, i128) {
        (self.num[g], self.den)
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.num.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i)
    }

    pub fn add(&self, other: &Self) -> Self {
        let l = self.den.lcm(&other.den);
        let (a, b) = (l / self.den, l / other.den);
        let num = self.num.iter().zip(&other.num).map(|(x, y)| x * a + y * b).collect();
        Self::normalized(num, l)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        GroupAlgebraElement {
            num: self.num.iter().map(|x| -x).collect(),
            den: self.den,
        }
    }

    pub fn mul(&self, g: &FiniteGroup, other: &Self) -> Self {
        let n = self.len();
        let mut acc = vec![0i128; n];
        let right: Vec<(usize, i128)> = other.support().map(|j| (j, other.num[j])).collect();
        for i in self.support() {
            let a = self.num[i];
            for &(j, b) in &right {
                acc[g.mul(i, j)] += a * b;
            }
        }
        Self::normalized(acc, self.den * other.den)
    }

    /// `x^-1 a x`.
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Self {
        let mut num = vec![0; self.len()];
        for i in self.support() {
            num[g.conj(i, x)] = self.num[i];
        }
        GroupAlgebraElement { num, den: self.den }
    }

    pub fn is_central(&self, g: &FiniteGroup) -> bool {
        g.generators()
            .iter()
            .map(|gen| gen.elem)
            .chain(if g.generators().is_empty() { 0..g.order() } else { 0..0 })
            .all(|x| self.conjugate(g, x) == *self)
    }

    pub fn is_idempotent(&self, g: &FiniteGroup) -> bool {
        self.mul(g, self) == *self
    }
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.support().map(|i| format!("{}*g{}", self.num[i], i)).collect();
        write!(f, "({})/{}", terms.join(" + "), self.den)
    }
}

/// `(1/|S|) sum_{s in S} s`.
pub fn hat(g: &FiniteGroup, s: &Subgroup) -> GroupAlgebraElement {
    hat_set(g, s.set())
}

pub(crate) fn hat_set(g: &FiniteGroup, s: &ElemSet) -> GroupAlgebraElement {
    let mut num = vec![0; g.order()];
    for x in s.iter() {
        num[x] = 1;
    }
    GroupAlgebraElement::normalized(num, s.len() as i128)
}

/// `epsilon(H, K)`: `hat(H)` when `H = K`, otherwise the product of
/// `hat(K) - hat(M)` over the minimal normal subgroups `M/K` of `H/K`.
pub fn epsilon(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<GroupAlgebraElement, GroupError> {
    if !k.is_subgroup_of(h) || !k.is_normal_in_subgroup(g, h) {
        return Err(GroupError::NotNormal { order: k.order() });
    }
    if h == k {
        return Ok(hat(g, h));
    }
    let khat = hat(g, k);
    let mut e = khat.clone();
    for m in minimal_normal_over(g, h, k) {
        e = e.mul(g, &khat.sub(&hat_set(g, &m)));
    }
    Ok(e)
}

/// Minimal members of `{M normal in H : K < M}`.
fn minimal_normal_over(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Vec<ElemSet> {
    let mut cands: Vec<ElemSet> = Vec::new();
    for &x in h.elements() {
        if k.contains(x) {
            continue;
        }
        let mut gens: Vec<usize> = k.generators().to_vec();
        for &y in h.elements() {
            gens.push(g.conj(x, y));
        }
        let m = g.generate(&gens);
        if !cands.contains(&m) {
            cands.push(m);
        }
    }
    let minimal: Vec<ElemSet> = cands
        .iter()
        .filter(|m| !cands.iter().any(|o| o.len() < m.len() && o.is_subset(m)))
        .cloned()
        .collect();
    let mut out = minimal;
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dicyclic};

    #[test]
    fn hat_examples() {
        let g = dicyclic(8).unwrap();
        let one = hat(&g, &Subgroup::trivial(&g));
        assert_eq!(one, GroupAlgebraElement::one(8));
        let whole = hat(&g, &Subgroup::whole(&g));
        for x in g.elements() {
            assert_eq!(whole.mul(&g, &GroupAlgebraElement::element(8, x)), whole);
        }
        let z = g.elements().find(|&x| g.elem_order(x) == 2).unwrap();
        let hz = hat(&g, &Subgroup::from_generators(&g, &[z]));
        let expect = GroupAlgebraElement::one(8).add(&GroupAlgebraElement::element(8, z));
        assert_eq!(hz.add(&hz), expect);
        assert!(hz.is_idempotent(&g));
    }

    #[test]
    fn epsilon_q8_cyclic_four() {
        let g = dicyclic(8).unwrap();
        let i = g.generator("a").unwrap();
        let h = Subgroup::from_generators(&g, &[i]);
        let k = Subgroup::trivial(&g);
        let e = epsilon(&g, &h, &k).unwrap();
        let z = g.pow(i, 2);
        // (1 - z) / 2, checked against the direct expansion of 1 - hat<z>
        let one = GroupAlgebraElement::one(8);
        let expect = one.sub(&hat(&g, &Subgroup::from_generators(&g, &[z])));
        assert_eq!(e, expect);
        assert_eq!(e.coefficient(0), Rational::new(1.into(), 2.into()));
        assert!(e.is_idempotent(&g));
    }

    #[test]
    fn epsilon_c4_over_c2() {
        let g = cyclic(4).unwrap();
        let h = Subgroup::whole(&g);
        let k = Subgroup::from_generators(&g, &[2]);
        let e = epsilon(&g, &h, &k).unwrap();
        assert_eq!(e, hat(&g, &k).sub(&hat(&g, &h)));
        assert_eq!(epsilon(&g, &h, &h).unwrap(), hat(&g, &h));
    }

    #[test]
    fn epsilon_requires_normality() {
        let g = crate::group::dihedral(6).unwrap();
        let b = g.generator("b").unwrap();
        let k = Subgroup::from_generators(&g, &[b]);
        assert!(epsilon(&g, &Subgroup::whole(&g), &k).is_err());
    }
}

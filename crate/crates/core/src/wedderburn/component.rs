use serde::Serialize;

use super::shoda::StrongShodaPair;
use crate::group::FiniteGroup;
use crate::numbers::{AbelianFieldDescriptor, Cyclotomic, NumberError, QuaternionSymbol};

/// The crossed product `Q(zeta_m) * N/H` attached to a strong Shoda pair.
///
/// `A = N/H` is stored by index (0 is the identity) with its multiplication
/// table; `a` acts by `zeta -> zeta^action[a]` and `u_a u_b = zeta^twist[a][b] u_(ab)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossedProductDescriptor {
    pub m: usize,
    pub action: Vec<usize>,
    pub table: Vec<Vec<usize>>,
    pub twist: Vec<Vec<usize>>,
    pub center: AbelianFieldDescriptor,
}

impl CrossedProductDescriptor {
    pub fn from_pair(g: &FiniteGroup, pair: &StrongShodaPair) -> Self {
        let m = pair.m();
        let size = g.order();
        // exponent of x in H modulo K, with respect to h0
        let mut exp = vec![usize::MAX; size];
        let mut y = g.identity();
        for e in 0..m {
            for &k in pair.k.elements() {
                exp[g.mul(y, k)] = e;
            }
            y = g.mul(y, pair.h0);
        }
        let mut coset = vec![usize::MAX; size];
        let mut reps = Vec::new();
        for &x in pair.n.elements() {
            if coset[x] != usize::MAX {
                continue;
            }
            for &h in pair.h.elements() {
                coset[g.mul(x, h)] = reps.len();
            }
            reps.push(x);
        }
        let d = reps.len();
        let mut table = vec![vec![0; d]; d];
        let mut twist = vec![vec![0; d]; d];
        for a in 0..d {
            for b in 0..d {
                let ab = g.mul(reps[a], reps[b]);
                let c = coset[ab];
                table[a][b] = c;
                twist[a][b] = exp[g.mul(ab, g.inv(reps[c]))];
            }
        }
        let action: Vec<usize> = reps
            .iter()
            .map(|&x| exp[g.conj(pair.h0, g.inv(x))])
            .collect();
        let center = AbelianFieldDescriptor::new(m, &action);
        CrossedProductDescriptor {
            m,
            action,
            table,
            twist,
            center,
        }
    }

    pub fn order(&self) -> usize {
        self.action.len()
    }

    /// `t(a,b) + t(ab,c) = r_a t(b,c) + t(a,bc)` mod `m`.
    pub fn verify_cocycle(&self) -> bool {
        let d = self.order();
        let m = self.m;
        (0..d).all(|a| {
            (0..d).all(|b| {
                (0..d).all(|c| {
                    let ab = self.table[a][b];
                    let bc = self.table[b][c];
                    (self.twist[a][b] + self.twist[ab][c]) % m
                        == (self.action[a] * self.twist[b][c] + self.twist[a][bc]) % m
                })
            })
        })
    }

    /// A function `f: A -> Z/m` with `t(a,b) = f(a) + r_a f(b) - f(ab)`, if
    /// one exists with at most `budget` search nodes.
    fn root_of_unity_coboundary(&self, budget: usize) -> Option<Vec<usize>> {
        let d = self.order();
        let mut f = vec![usize::MAX; d];
        f[0] = self.twist[0][0] % self.m;
        let mut nodes = 0;
        fn consistent(cp: &CrossedProductDescriptor, f: &[usize], upto: usize) -> bool {
            let m = cp.m;
            for a in 0..=upto {
                for b in 0..=upto {
                    let ab = cp.table[a][b];
                    if ab > upto && f[ab] == usize::MAX {
                        continue;
                    }
                    if (cp.twist[a][b] + f[ab]) % m != (f[a] + cp.action[a] * f[b]) % m {
                        return false;
                    }
                }
            }
            true
        }
        fn go(cp: &CrossedProductDescriptor, f: &mut Vec<usize>, i: usize, nodes: &mut usize, budget: usize) -> Option<bool> {
            if i == f.len() {
                return Some(true);
            }
            for v in 0..cp.m {
                *nodes += 1;
                if *nodes > budget {
                    return None;
                }
                f[i] = v;
                if consistent(cp, f, i) && go(cp, f, i + 1, nodes, budget)? {
                    return Some(true);
                }
            }
            f[i] = usize::MAX;
            Some(false)
        }
        if !consistent(self, &f, 0) {
            return None;
        }
        match go(self, &mut f, 1, &mut nodes, budget) {
            Some(true) => Some(f),
            _ => None,
        }
    }
}

/// The division part of a simple component `M_n(D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisionPart {
    /// `D` is the center itself.
    Field,
    /// `D = (u, c / F)`; whether it splits is decided by the classifier.
    Quaternion(QuaternionSymbol),
    /// Nothing cheaper than the crossed product itself was found.
    Unresolved(CrossedProductDescriptor),
}

/// One simple component `M_n(D)` of `QG`.
#[derive(Clone, Debug)]
pub struct SimpleComponent {
    pub matrix_degree: usize,
    pub center: AbelianFieldDescriptor,
    pub division: DivisionPart,
    pub q_dimension: usize,
    pub crossed_product: CrossedProductDescriptor,
    pub pair: StrongShodaPair,
}

/// Search budget for the coboundary search when `|N/H| > 2`.
const COBOUNDARY_BUDGET: usize = 2_000_000;

/// `(extra matrix degree, division part)` for a crossed product.
pub fn identify(cp: &CrossedProductDescriptor) -> Result<(usize, DivisionPart), NumberError> {
    match cp.order() {
        1 => Ok((1, DivisionPart::Field)),
        2 => Ok((1, DivisionPart::Quaternion(quaternion_symbol(cp)?))),
        d => match cp.root_of_unity_coboundary(COBOUNDARY_BUDGET) {
            Some(_) => Ok((d, DivisionPart::Field)),
            None => Ok((1, DivisionPart::Unresolved(cp.clone()))),
        },
    }
}

/// `y` in `Q(zeta_m)` with `sigma(y) = -y` for the nontrivial automorphism
/// `sigma: zeta_m -> zeta_m^s` of a quadratic extension.
fn antifixed(m: usize, s: usize) -> Cyclotomic {
    // roots of unity first
    let w = num_integer::lcm(2, m);
    let s2 = if s % 2 == 1 || m % 2 == 0 { s } else { s + m };
    if let Some(j) = (0..w).find(|&j| j * (s2 + w - 1) % w == w / 2) {
        return Cyclotomic::zeta(w, j as i64);
    }
    // then square roots of rational integers
    for q in AbelianFieldDescriptor::cyclotomic(m).square_classes() {
        let y = Cyclotomic::sqrt_squarefree(q);
        if y.galois_apply(s as i64).ok() == Some(-&y) {
            return y;
        }
    }
    &Cyclotomic::zeta(m, 1) - &Cyclotomic::zeta(m, s as i64)
}

fn quaternion_symbol(cp: &CrossedProductDescriptor) -> Result<QuaternionSymbol, NumberError> {
    let s = cp.action[1];
    let y = antifixed(cp.m, s);
    debug_assert_eq!(y.galois_apply_mod(s, cp.m), -&y);
    let u = &y * &y;
    let c = Cyclotomic::zeta(cp.m, cp.twist[1][1] as i64);
    QuaternionSymbol::new(cp.center.clone(), u, c)
}

/// The simple component `QG e` for a strong Shoda pair.
pub fn simple_component(g: &FiniteGroup, pair: &StrongShodaPair) -> Result<SimpleComponent, NumberError> {
    let cp = CrossedProductDescriptor::from_pair(g, pair);
    let (extra, division) = identify(&cp)?;
    let gn = g.order() / pair.n.order();
    Ok(SimpleComponent {
        matrix_degree: gn * extra,
        center: cp.center.clone(),
        division,
        q_dimension: pair.q_dimension(g),
        crossed_product: cp,
        pair: pair.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{dicyclic, dihedral};
    use crate::wedderburn::shoda::strong_shoda_pairs;

    fn big_component(g: &FiniteGroup) -> SimpleComponent {
        let pairs = strong_shoda_pairs(g, 256).unwrap();
        let p = pairs.iter().max_by_key(|p| p.q_dimension(g)).unwrap();
        simple_component(g, p).unwrap()
    }

    #[test]
    fn q8_gives_hamiltonian_quaternions() {
        let g = dicyclic(8).unwrap();
        let c = big_component(&g);
        assert!(c.crossed_product.verify_cocycle());
        assert_eq!(c.matrix_degree, 1);
        assert!(c.center.is_rational());
        match &c.division {
            DivisionPart::Quaternion(q) => assert!(q.normalized().is_hamiltonian(), "{q}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn d8_gives_two_by_two_rational_matrices() {
        let g = dihedral(8).unwrap();
        let c = big_component(&g);
        assert!(c.center.is_rational());
        match &c.division {
            DivisionPart::Quaternion(q) => assert_eq!(q.c, Cyclotomic::one()),
            DivisionPart::Field => assert_eq!(c.matrix_degree, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn antifixed_elements() {
        // (m, s) pairs of order two
        for (m, s) in [(4, 3), (3, 2), (12, 5), (12, 7), (8, 3), (8, 5), (7, 6), (5, 4), (24, 5)] {
            let y = antifixed(m, s);
            assert!(!y.is_zero());
            assert_eq!(y.galois_apply_mod(s, m), -&y, "m={m} s={s}");
        }
    }

    #[test]
    fn cyclic_action_split_by_coboundary() {
        // C7 x| C3 has a component with an acting group of order 3 and trivial twist
        let g = crate::group::semidirect_cyclic(7, 3, 2).unwrap();
        let pairs = strong_shoda_pairs(&g, 256).unwrap();
        let p = pairs.iter().find(|p| p.n.order() / p.h.order() == 3).unwrap();
        let c = simple_component(&g, p).unwrap();
        assert_eq!(c.division, DivisionPart::Field);
        assert_eq!(c.matrix_degree, 3);
        assert_eq!(c.center.degree(), 2);
    }
}

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::hilbert::kronecker;
use super::{divisors, euler_phi, fundamental_discriminant, gcd, mod_pow, units, Cyclotomic, NumberError, Place};

/// The subfield of `Q(zeta_k)` fixed by a subgroup `S` of `(Z/k)^*`.
///
/// Always stored at its minimal conductor, so two descriptors describe the
/// same field exactly when they compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbelianFieldDescriptor {
    conductor: usize,
    subgroup: Vec<usize>,
}

fn close_subgroup(k: usize, gens: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = BTreeSet::new();
    s.insert(1 % k);
    let gens: Vec<usize> = gens.into_iter().map(|g| g % k).collect();
    let mut frontier = vec![1 % k];
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = x * g % k;
            if s.insert(y) {
                frontier.push(y);
            }
        }
    }
    s
}

impl AbelianFieldDescriptor {
    /// Fixed field of the subgroup generated by `gens` (residues mod `k`,
    /// each coprime to `k`).
    pub fn new(k: usize, gens: &[usize]) -> Self {
        assert!(k >= 1);
        for &g in gens {
            assert!(k == 1 || gcd(g as u64, k as u64) == 1, "{g} is not a unit mod {k}");
        }
        let s = close_subgroup(k, gens.iter().copied());
        Self::normalize(k, s)
    }

    fn normalize(k: usize, s: BTreeSet<usize>) -> Self {
        for d in divisors(k) {
            // kernel of (Z/k)^* -> (Z/d)^* must lie in S
            let in_kernel = units(k).into_iter().filter(|&t| t % d == 1 % d);
            if in_kernel.clone().all(|t| s.contains(&(t % k))) {
                let image: BTreeSet<usize> = s.iter().map(|&t| t % d).collect();
                let subgroup = if d == 1 { vec![0] } else { image.into_iter().collect() };
                return AbelianFieldDescriptor {
                    conductor: d,
                    subgroup,
                };
            }
        }
        unreachable!("d = k always qualifies")
    }

    pub fn rationals() -> Self {
        AbelianFieldDescriptor {
            conductor: 1,
            subgroup: vec![0],
        }
    }

    /// `Q(zeta_k)`.
    pub fn cyclotomic(k: usize) -> Self {
        Self::new(k, &[])
    }

    /// `Q(zeta_k + zeta_k^-1)`.
    pub fn real_cyclotomic(k: usize) -> Self {
        Self::new(k, &[k.saturating_sub(1).max(1)])
    }

    /// `Q(sqrt d)` for squarefree `d`.
    pub fn quadratic(d: i64) -> Self {
        if d == 1 {
            return Self::rationals();
        }
        let disc = fundamental_discriminant(d);
        let k = disc.unsigned_abs() as usize;
        let s: BTreeSet<usize> = units(k)
            .into_iter()
            .filter(|&t| kronecker(disc, t as i64) == 1)
            .collect();
        Self::normalize(k, s)
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    /// Members of `S`, sorted.
    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    /// A small generating set of `S`.
    pub fn subgroup_generators(&self) -> Vec<usize> {
        let k = self.conductor;
        let mut gens = Vec::new();
        let mut span = close_subgroup(k.max(1), []);
        for &t in &self.subgroup {
            if !span.contains(&t) {
                gens.push(t);
                span = close_subgroup(k, gens.iter().copied());
            }
        }
        gens
    }

    pub fn degree(&self) -> usize {
        euler_phi(self.conductor) / self.subgroup.len()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    /// `S` trivial: the whole cyclotomic field.
    pub fn is_full_cyclotomic(&self) -> bool {
        self.subgroup.len() == 1
    }

    pub fn is_totally_real(&self) -> bool {
        self.conductor <= 2 || self.subgroup.contains(&(self.conductor - 1))
    }

    pub fn contains(&self, x: &Cyclotomic) -> bool {
        let c = x.conductor();
        if self.conductor % c != 0 {
            return false;
        }
        if c <= 2 {
            return true;
        }
        self.subgroup
            .iter()
            .all(|&t| x.galois_apply(t as i64).map(|y| &y == x).unwrap_or(false))
    }

    /// `F1 <= F2`.
    pub fn is_subfield_of(&self, other: &AbelianFieldDescriptor) -> bool {
        if other.conductor % self.conductor != 0 {
            return false;
        }
        // every element of other's S must act trivially on self
        other
            .subgroup
            .iter()
            .all(|&t| self.conductor == 1 || self.subgroup.contains(&(t % self.conductor)))
    }

    /// Coset representatives of `(Z/k)^* / S`; `t` stands for the embedding
    /// `zeta_k -> exp(2 pi i t / k)` restricted to the field.
    pub fn embeddings(&self) -> Vec<usize> {
        let k = self.conductor;
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        for t in units(k) {
            if seen.contains(&t) {
                continue;
            }
            reps.push(t);
            for &s in &self.subgroup {
                seen.insert(if k == 1 { 0 } else { t * s % k });
            }
        }
        reps
    }

    /// Real embeddings; empty for totally imaginary fields (abelian fields
    /// have no mixed signature).
    pub fn real_embeddings(&self) -> Vec<usize> {
        if self.is_totally_real() {
            self.embeddings()
        } else {
            Vec::new()
        }
    }

    /// The squarefree `d` with `F = Q(sqrt d)`.
    pub fn quadratic_identity(&self) -> Result<i64, NumberError> {
        if self.degree() != 2 {
            return Err(NumberError::NotQuadratic {
                degree: self.degree(),
            });
        }
        let k = self.conductor as i64;
        let quarter = if k % 4 == 0 { k / 4 } else { 0 };
        for d in [-k, k, -quarter, quarter] {
            if d == 0 || d == 1 {
                continue;
            }
            if super::squarefree_part(d) != d {
                continue;
            }
            if fundamental_discriminant(d).abs() != k {
                continue;
            }
            if &Self::quadratic(d) == self {
                return Ok(d);
            }
        }
        unreachable!("every quadratic abelian field has a squarefree radicand matching its conductor")
    }

    /// Local degree `[F_P : Q_p]` at a place of `Q` (the same for every `P`
    /// above it, `F` being Galois).
    pub fn local_degree(&self, place: Place) -> usize {
        let k = self.conductor;
        let p = match place {
            Place::Infinity => return if self.is_totally_real() { 1 } else { 2 },
            Place::Prime(p) => p as usize,
        };
        if k == 1 {
            return 1;
        }
        let mut pa = 1;
        while k % (pa * p) == 0 {
            pa *= p;
        }
        let m = k / pa;
        // decomposition group: inertia (t = 1 mod m) and a Frobenius lift
        let mut gens: Vec<usize> = units(k).into_iter().filter(|&t| t % m == 1 % m).collect();
        if let Some(frob) = units(k).into_iter().find(|&t| t % m == p % m && t % pa == 1 % pa) {
            gens.push(frob);
        }
        gens.extend(self.subgroup.iter().copied());
        close_subgroup(k, gens).len() / self.subgroup.len()
    }

    /// Order of the class of 2 in `(Z/k)^* / S`; this is the residue degree
    /// of the primes above 2.
    pub fn frobenius_order_at_2(&self) -> Result<u64, NumberError> {
        let k = self.conductor;
        if k % 2 == 0 {
            return Err(NumberError::EvenConductor { conductor: k });
        }
        if k == 1 {
            return Ok(1);
        }
        let mut j = 1u64;
        loop {
            let r = mod_pow(2, j, k as u64) as usize;
            if self.subgroup.contains(&r) {
                return Ok(j);
            }
            j += 1;
        }
    }

    /// Number of roots of unity in the field.
    pub fn roots_of_unity_order(&self) -> usize {
        let l = num_integer::lcm(2, self.conductor);
        divisors(l)
            .into_iter()
            .rev()
            .find(|&n| self.contains(&Cyclotomic::zeta(n, 1)))
            .unwrap_or(2)
    }

    /// Squarefree `d` (including `1` and negatives) with `sqrt d` in the field.
    pub fn square_classes(&self) -> Vec<i64> {
        let k = self.conductor as i64;
        let mut out = vec![1];
        let max = (4 * k).max(4);
        for d in (-max..=max).filter(|&d| d != 0 && d != 1) {
            if super::squarefree_part(d) != d {
                continue;
            }
            let disc = fundamental_discriminant(d).abs();
            if k % disc != 0 {
                continue;
            }
            if Self::quadratic(d).is_subfield_of(self) {
                out.push(d);
            }
        }
        out.sort_by_key(|&d| (d.abs(), d > 0));
        out
    }

    /// Display name: radicals in degree two, zeta notation otherwise.
    pub fn pretty(&self) -> String {
        let k = self.conductor;
        match self.degree() {
            1 => "Q".to_string(),
            2 => match self.quadratic_identity() {
                Ok(-1) => "Q(i)".to_string(),
                Ok(d) => format!("Q(√{d})"),
                Err(_) => unreachable!(),
            },
            _ if self.is_full_cyclotomic() => format!("Q(ζ{k})"),
            _ if self.subgroup == [1, k - 1] => format!("Q(ζ{k}+ζ{k}^-1)"),
            _ => {
                let gens: Vec<String> = self.subgroup_generators().iter().map(|g| g.to_string()).collect();
                format!("Q(ζ{k})^<{}>", gens.join(","))
            }
        }
    }
}

impl fmt::Display for AbelianFieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl fmt::Debug for AbelianFieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [k={}, S={:?}]", self.pretty(), self.conductor, self.subgroup)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totally_real_examples() {
        assert!(AbelianFieldDescriptor::real_cyclotomic(8).is_totally_real());
        assert!(AbelianFieldDescriptor::rationals().is_totally_real());
        assert!(!AbelianFieldDescriptor::cyclotomic(7).is_totally_real());
    }

    #[test]
    fn quadratic_identities() {
        assert_eq!(AbelianFieldDescriptor::cyclotomic(3).quadratic_identity(), Ok(-3));
        assert_eq!(AbelianFieldDescriptor::cyclotomic(4).quadratic_identity(), Ok(-1));
        assert_eq!(AbelianFieldDescriptor::new(8, &[3]).quadratic_identity(), Ok(-2));
        assert_eq!(AbelianFieldDescriptor::real_cyclotomic(8).quadratic_identity(), Ok(2));
        assert_eq!(
            AbelianFieldDescriptor::cyclotomic(7).quadratic_identity(),
            Err(NumberError::NotQuadratic { degree: 6 })
        );
    }

    /// Numerical oracle: which of sqrt(-2), sqrt(2), sqrt(-1) is fixed by the
    /// automorphisms in S, evaluated in floating point.
    #[test]
    fn k8_s3_is_q_sqrt_minus_2_numerically() {
        let f = AbelianFieldDescriptor::new(8, &[3]);
        let z = |j: f64| {
            let th = 2.0 * std::f64::consts::PI * j / 8.0;
            (th.cos(), th.sin())
        };
        // sqrt(-2) = zeta8 + zeta8^3, sqrt(2) = zeta8 + zeta8^7, i = zeta8^2
        let cands: [(i64, [usize; 2]); 3] = [(-2, [1, 3]), (2, [1, 7]), (-1, [2, 2])];
        let mut fixed = Vec::new();
        for (d, e) in cands {
            let val = |t: usize| {
                let mut s = (0.0, 0.0);
                let terms: Vec<usize> = if e[0] == e[1] { vec![e[0]] } else { e.to_vec() };
                for x in terms {
                    let (a, b) = z((x * t % 8) as f64);
                    s.0 += a;
                    s.1 += b;
                }
                s
            };
            let ok = f.subgroup().iter().all(|&t| {
                let (a, b) = val(t);
                let (c, dd) = val(1);
                (a - c).abs() < 1e-12 && (b - dd).abs() < 1e-12
            });
            if ok {
                fixed.push(d);
            }
        }
        assert_eq!(fixed, vec![-2]);
    }

    #[test]
    fn quadratic_round_trip() {
        for d in [-1i64, -2, -3, 2, 3, 5, -5, -7, 6, -6, 10, -15, 13] {
            let f = AbelianFieldDescriptor::quadratic(d);
            assert_eq!(f.degree(), 2, "d={d}");
            assert_eq!(f.quadratic_identity(), Ok(d));
            assert_eq!(AbelianFieldDescriptor::quadratic(f.quadratic_identity().unwrap()), f);
        }
    }

    #[test]
    fn frobenius_at_two() {
        assert_eq!(AbelianFieldDescriptor::cyclotomic(7).frobenius_order_at_2(), Ok(3));
        assert_eq!(AbelianFieldDescriptor::cyclotomic(3).frobenius_order_at_2(), Ok(2));
        assert_eq!(AbelianFieldDescriptor::rationals().frobenius_order_at_2(), Ok(1));
        assert_eq!(AbelianFieldDescriptor::cyclotomic(73).frobenius_order_at_2(), Ok(9));
        assert!(AbelianFieldDescriptor::cyclotomic(8).frobenius_order_at_2().is_err());
    }

    #[test]
    fn normalization_to_minimal_conductor() {
        // Q(zeta_12) fixed by the kernel of reduction to mod 3 is Q(zeta_3)
        assert_eq!(AbelianFieldDescriptor::new(12, &[7]), AbelianFieldDescriptor::cyclotomic(3));
        assert_eq!(AbelianFieldDescriptor::cyclotomic(6), AbelianFieldDescriptor::cyclotomic(3));
        assert_eq!(AbelianFieldDescriptor::cyclotomic(2), AbelianFieldDescriptor::rationals());
    }

    #[test]
    fn names() {
        assert_eq!(AbelianFieldDescriptor::cyclotomic(4).pretty(), "Q(i)");
        assert_eq!(AbelianFieldDescriptor::cyclotomic(3).pretty(), "Q(√-3)");
        assert_eq!(AbelianFieldDescriptor::cyclotomic(7).pretty(), "Q(ζ7)");
        assert_eq!(AbelianFieldDescriptor::real_cyclotomic(8).pretty(), "Q(√2)");
        assert_eq!(AbelianFieldDescriptor::real_cyclotomic(16).pretty(), "Q(ζ16+ζ16^-1)");
    }

    #[test]
    fn roots_of_unity_and_squares() {
        assert_eq!(AbelianFieldDescriptor::cyclotomic(4).roots_of_unity_order(), 4);
        assert_eq!(AbelianFieldDescriptor::cyclotomic(7).roots_of_unity_order(), 14);
        assert_eq!(AbelianFieldDescriptor::rationals().roots_of_unity_order(), 2);
        assert_eq!(AbelianFieldDescriptor::cyclotomic(7).square_classes(), vec![1, -7]);
        assert_eq!(AbelianFieldDescriptor::cyclotomic(8).square_classes(), vec![-1, 1, -2, 2]);
    }

    #[test]
    fn membership() {
        let f = AbelianFieldDescriptor::real_cyclotomic(8);
        let s2 = &Cyclotomic::zeta(8, 1) + &Cyclotomic::zeta(8, 7);
        assert!(f.contains(&s2));
        assert!(!f.contains(&Cyclotomic::zeta(4, 1)));
        assert!(AbelianFieldDescriptor::cyclotomic(4).contains(&Cyclotomic::from_integer(5)));
    }
}

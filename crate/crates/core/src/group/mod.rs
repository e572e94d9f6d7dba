//! Finite groups stored as full Cayley tables.
//!
//! Element `0` is always the identity. Every group carries a list of named
//! generators; constructors name them after the standard presentations
//! (`a`, `b`, ...) so the group-spec DSL can refer to them in quotients.

mod build;
mod elemset;
mod iso;
mod lattice;

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

pub use build::{
    central_product, cyclic, dicyclic, dihedral, direct_product, direct_product_all,
    semidirect_cyclic,
};
pub use elemset::ElemSet;
pub use iso::{fingerprint, is_isomorphic, GroupFingerprint};
pub use lattice::{
    abelian_invariants, center, centralizer, conjugacy_classes, cyclotomic_classes,
    derived_subgroup, is_hamiltonian, normal_subgroups, normalizer, quotient, subgroup_classes,
    subgroups, ConjugacyClass, CyclotomicClass, Quotient, Subgroup, SubgroupClass,
    DEFAULT_SUBGROUP_CAP,
};

/// Errors raised while building or manipulating groups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("Cayley table is not square or has an entry out of range (row {row})")]
    MalformedTable { row: usize },
    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity element in the table")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("bad constructor parameter: {0}")]
    BadParameter(String),
    #[error("action a -> a^{r} does not define C{n} x| C{m}: {r}^{m} != 1 mod {n}")]
    BadAction { n: usize, m: usize, r: usize },
    #[error("element {element} is not central in {group}")]
    NotCentral { element: usize, group: String },
    #[error("element {element} of {group} has order {order}, expected 2")]
    WrongOrder {
        element: usize,
        group: String,
        order: usize,
    },
    #[error("subgroup of order {order} is not normal")]
    NotNormal { order: usize },
    #[error("group of order {order} exceeds the configured cap {cap}")]
    GroupTooLarge { order: usize, cap: usize },
}

/// A named generator of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub elem: usize,
}

/// A finite group given by its multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    label: String,
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    gens: Vec<Generator>,
    classes: OnceLock<Vec<ConjugacyClass>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.n)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates a Cayley table and builds the group.
    ///
    /// If the identity is not at index 0 the elements are relabelled so that
    /// it is; all other indices keep their relative order.
    pub fn from_cayley(table: &[Vec<usize>], label: impl Into<String>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::MalformedTable { row: 0 });
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n || r.iter().any(|&x| x >= n) {
                return Err(GroupError::MalformedTable { row });
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inv = vec![0usize; n];
        for x in 0..n {
            inv[x] = (0..n)
                .find(|&y| table[x][y] == e && table[y][x] == e)
                .ok_or(GroupError::NoInverse { element: x })?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        // relabel: e -> 0, 0..e -> 1..=e
        let to_new = |x: usize| {
            if x == e {
                0
            } else if x < e {
                x + 1
            } else {
                x
            }
        };
        let mut from_new = vec![0usize; n];
        for x in 0..n {
            from_new[to_new(x)] = x;
        }
        let mut flat = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                flat[i * n + j] = to_new(table[from_new[i]][from_new[j]]) as u32;
            }
        }
        let mut g = Self::from_parts(label.into(), n, flat, Vec::new());
        g.gens = g.greedy_generators();
        Ok(g)
    }

    /// Builds a group from a flattened table that is known to be a group
    /// table with identity 0. Used by constructors whose output is a group by
    /// construction.
    pub(crate) fn from_parts(label: String, n: usize, table: Vec<u32>, gens: Vec<Generator>) -> Self {
        debug_assert_eq!(table.len(), n * n);
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let row = &table[x * n..(x + 1) * n];
            inv[x] = row.iter().position(|&y| y == 0).expect("group table row lacks identity") as u32;
        }
        let mut g = FiniteGroup {
            label,
            n,
            table,
            inv,
            orders: vec![0; n],
            gens,
            classes: OnceLock::new(),
        };
        for x in 0..n {
            let mut k = 1u32;
            let mut y = x;
            while y != 0 {
                y = g.mul(y, x);
                k += 1;
            }
            g.orders[x] = k;
        }
        g.orders[0] = 1;
        if g.gens.is_empty() && n > 1 {
            g.gens = g.greedy_generators();
        }
        g
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// Commutator `(x, y) = x^-1 y^-1 x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn elem_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let ord = self.elem_order(a) as i64;
        let k = k.rem_euclid(ord);
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.gens.iter().find(|g| g.name == name).map(|g| g.elem)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|a| self.gens.iter().all(|b| self.mul(a.elem, b.elem) == self.mul(b.elem, a.elem)))
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        self.orders
            .iter()
            .fold(1usize, |acc, &o| num_integer::lcm(acc, o as usize))
    }

    /// Number of elements of each order, sorted by order.
    pub fn order_census(&self) -> Vec<(usize, usize)> {
        let mut m = std::collections::BTreeMap::new();
        for &o in &self.orders {
            *m.entry(o as usize).or_insert(0usize) += 1;
        }
        m.into_iter().collect()
    }

    /// Closure of a set of elements under multiplication.
    pub fn generate(&self, gens: &[usize]) -> ElemSet {
        let mut set = ElemSet::new(self.n);
        set.insert(0);
        let mut frontier = vec![0usize];
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    fn greedy_generators(&self) -> Vec<Generator> {
        let mut gens = Vec::new();
        let mut span = self.generate(&[]);
        while span.len() < self.n {
            let g = (0..self.n)
                .filter(|&x| !span.contains(x))
                .max_by_key(|&x| (self.orders[x], std::cmp::Reverse(x)))
                .unwrap();
            gens.push(g);
            span = self.generate(&gens);
        }
        gens.into_iter()
            .enumerate()
            .map(|(i, elem)| Generator {
                name: format!("g{}", i + 1),
                elem,
            })
            .collect()
    }

    /// Cayley table as nested vectors (row-major, `table[a][b] = a*b`).
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// Applies a homomorphism candidate given on generators, returning the
    /// full element map if it extends consistently.
    pub fn extend_on_generators(
        &self,
        target: &FiniteGroup,
        gens: &[usize],
        images: &[usize],
    ) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.n];
        map[0] = 0;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let img = target.mul(map[x], h);
                if map[y] == usize::MAX {
                    map[y] = img;
                    frontier.push(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        Some(map)
    }
}

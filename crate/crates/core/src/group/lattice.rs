use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use num_integer::Integer;

use super::{ElemSet, FiniteGroup, Generator, GroupError};

/// Largest group order for which the subgroup lattice is enumerated.
pub const DEFAULT_SUBGROUP_CAP: usize = 256;

/// A subgroup of some parent group, stored as a member bitset.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: ElemSet,
    elems: Vec<usize>,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Subgroup {
    pub fn from_generators(g: &FiniteGroup, gens: &[usize]) -> Self {
        let members = g.generate(gens);
        let mut gens: Vec<usize> = gens.iter().copied().filter(|&x| x != 0).collect();
        gens.dedup();
        Self::from_parts(members, gens)
    }

    fn from_parts(members: ElemSet, gens: Vec<usize>) -> Self {
        let elems = members.to_vec();
        Subgroup {
            members,
            elems,
            gens,
        }
    }

    /// Wraps a member set after checking closure, identity and Lagrange.
    pub fn from_set(g: &FiniteGroup, members: ElemSet) -> Result<Self, GroupError> {
        let bad = || GroupError::BadParameter("element set is not a subgroup".into());
        if !members.contains(0) || g.order() % members.len() != 0 {
            return Err(bad());
        }
        let elems = members.to_vec();
        for &x in &elems {
            if !members.contains(g.inv(x)) {
                return Err(bad());
            }
            for &y in &elems {
                if !members.contains(g.mul(x, y)) {
                    return Err(bad());
                }
            }
        }
        Ok(Self::from_parts(members, elems.iter().copied().filter(|&x| x != 0).collect()))
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::from_generators(g, &[])
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        let gens: Vec<usize> = g.generators().iter().map(|x| x.elem).collect();
        Self::from_parts(ElemSet::full(g.order()), gens)
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn set(&self) -> &ElemSet {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        g.generators()
            .iter()
            .all(|x| self.gens.iter().all(|&h| self.contains(g.conj(h, x.elem))))
    }

    /// Normal in the subgroup `over` (which must contain `self`).
    pub fn is_normal_in_subgroup(&self, g: &FiniteGroup, over: &Subgroup) -> bool {
        over.gens
            .iter()
            .all(|&x| self.gens.iter().all(|&h| self.contains(g.conj(h, x))))
    }

    /// `x^-1 S x`.
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        let members = ElemSet::from_iter(g.order(), self.elems.iter().map(|&s| g.conj(s, x)));
        let gens = self.gens.iter().map(|&s| g.conj(s, x)).collect();
        Self::from_parts(members, gens)
    }

    pub fn is_cyclic(&self, g: &FiniteGroup) -> bool {
        self.elems.iter().any(|&x| g.elem_order(x) == self.order())
    }

    /// Materializes the subgroup as a group; also returns the embedding
    /// (new index -> parent index).
    pub fn as_group(&self, g: &FiniteGroup, label: impl Into<String>) -> (FiniteGroup, Vec<usize>) {
        let emb = self.elems.clone();
        let n = emb.len();
        let mut back = vec![usize::MAX; g.order()];
        for (i, &x) in emb.iter().enumerate() {
            back[x] = i;
        }
        let mut t = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                t[i * n + j] = back[g.mul(emb[i], emb[j])] as u32;
            }
        }
        let gens = self
            .gens
            .iter()
            .enumerate()
            .map(|(i, &x)| Generator {
                name: format!("s{}", i + 1),
                elem: back[x],
            })
            .collect();
        (FiniteGroup::from_parts(label.into(), n, t, gens), emb)
    }
}

/// A conjugacy class of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Union of the conjugacy classes of `x^t` over `t` coprime to the order of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicClass {
    pub representative: usize,
    pub members: Vec<usize>,
    /// Indices into [`conjugacy_classes`].
    pub conjugacy_classes: Vec<usize>,
}

pub fn conjugacy_classes(g: &FiniteGroup) -> &[ConjugacyClass] {
    g.classes.get_or_init(|| {
        let n = g.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut members: Vec<usize> = g.elements().map(|y| g.conj(x, y)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                seen[m] = true;
            }
            out.push(ConjugacyClass {
                representative: x,
                members,
            });
        }
        out
    })
}

impl FiniteGroup {
    /// Element -> index of its conjugacy class.
    pub fn class_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.order()];
        for (i, c) in conjugacy_classes(self).iter().enumerate() {
            for &m in &c.members {
                idx[m] = i;
            }
        }
        idx
    }
}

pub fn cyclotomic_classes(g: &FiniteGroup) -> Vec<CyclotomicClass> {
    let classes = conjugacy_classes(g);
    let idx = g.class_index();
    let mut taken = vec![false; classes.len()];
    let mut out = Vec::new();
    for (ci, c) in classes.iter().enumerate() {
        if taken[ci] {
            continue;
        }
        let x = c.representative;
        let ord = g.elem_order(x);
        let mut cls: Vec<usize> = (1..=ord.max(1))
            .filter(|t| t.gcd(&ord) == 1)
            .map(|t| idx[g.pow(x, t as i64)])
            .collect();
        cls.sort_unstable();
        cls.dedup();
        let mut members = Vec::new();
        for &k in &cls {
            taken[k] = true;
            members.extend_from_slice(&classes[k].members);
        }
        members.sort_unstable();
        out.push(CyclotomicClass {
            representative: x,
            members,
            conjugacy_classes: cls,
        });
    }
    out
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let gens: Vec<usize> = g.generators().iter().map(|x| x.elem).collect();
    let members = ElemSet::from_iter(
        g.order(),
        g.elements()
            .filter(|&z| gens.iter().all(|&x| g.mul(x, z) == g.mul(z, x))),
    );
    Subgroup::from_parts(members.clone(), members.to_vec().into_iter().filter(|&x| x != 0).collect())
}

/// Elements commuting with every element of `set`.
pub fn centralizer(g: &FiniteGroup, set: &[usize]) -> Subgroup {
    let members = ElemSet::from_iter(
        g.order(),
        g.elements()
            .filter(|&z| set.iter().all(|&x| g.mul(x, z) == g.mul(z, x))),
    );
    let elems = members.to_vec();
    Subgroup::from_parts(members, elems.into_iter().filter(|&x| x != 0).collect())
}

pub fn derived_subgroup(g: &FiniteGroup) -> Subgroup {
    let gens: Vec<usize> = g.generators().iter().map(|x| x.elem).collect();
    // normal closure of generator commutators
    let mut comms: Vec<usize> = Vec::new();
    for &a in &gens {
        for &b in &gens {
            let c = g.commutator(a, b);
            if c != 0 && !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    normal_closure(g, &comms)
}

fn normal_closure(g: &FiniteGroup, set: &[usize]) -> Subgroup {
    let mut gens: Vec<usize> = set.to_vec();
    loop {
        let s = g.generate(&gens);
        let mut grew = false;
        for x in g.generators() {
            for &h in gens.clone().iter() {
                let c = g.conj(h, x.elem);
                if !s.contains(c) {
                    gens.push(c);
                    grew = true;
                }
            }
        }
        if !grew {
            return Subgroup::from_parts(s, gens);
        }
    }
}

pub fn normalizer(g: &FiniteGroup, s: &Subgroup) -> Subgroup {
    let members = ElemSet::from_iter(
        g.order(),
        g.elements()
            .filter(|&x| s.generators().iter().all(|&h| s.contains(g.conj(h, x)))),
    );
    let elems = members.to_vec();
    Subgroup::from_parts(members, elems.into_iter().filter(|&x| x != 0).collect())
}

/// A quotient group together with the canonical projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[x]` is the image of `x` in `group`.
    pub projection: Vec<usize>,
}

pub fn quotient(g: &FiniteGroup, n: &ElemSet) -> Result<Quotient, GroupError> {
    let normal = Subgroup::from_set(g, n.clone())?;
    if !normal.is_normal_in(g) {
        return Err(GroupError::NotNormal { order: normal.order() });
    }
    let size = g.order();
    let mut projection = vec![usize::MAX; size];
    let mut reps = Vec::new();
    for x in 0..size {
        if projection[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &m in normal.elements() {
            projection[g.mul(x, m)] = c;
        }
    }
    let k = reps.len();
    let mut t = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..k {
            t[i * k + j] = projection[g.mul(reps[i], reps[j])] as u32;
        }
    }
    let gens = g
        .generators()
        .iter()
        .map(|x| Generator {
            name: x.name.clone(),
            elem: projection[x.elem],
        })
        .collect();
    let label = format!("{}/N{}", g.label(), normal.order());
    Ok(Quotient {
        group: FiniteGroup::from_parts(label, k, t, gens),
        projection,
    })
}

/// A conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    /// Number of conjugates.
    pub size: usize,
}

impl SubgroupClass {
    pub fn conjugates(&self, g: &FiniteGroup) -> Vec<Subgroup> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in g.elements() {
            let c = self.representative.conjugate(g, x);
            if seen.insert(c.set().clone()) {
                out.push(c);
            }
            if out.len() == self.size {
                break;
            }
        }
        out
    }
}

/// Subgroups up to conjugacy, by iterated cyclic extension.
///
/// Sorted by order, then by member set.
pub fn subgroup_classes(g: &FiniteGroup, cap: usize) -> Result<Vec<SubgroupClass>, GroupError> {
    if g.order() > cap {
        return Err(GroupError::GroupTooLarge {
            order: g.order(),
            cap,
        });
    }
    // one generator per cyclic subgroup
    let mut cyc_gens = Vec::new();
    let mut cyc_seen = HashSet::new();
    for x in g.elements().skip(1) {
        if cyc_seen.insert(g.generate(&[x])) {
            cyc_gens.push(x);
        }
    }
    let mut all: HashSet<ElemSet> = HashSet::new();
    let mut reps: Vec<SubgroupClass> = Vec::new();
    let mut queue = Vec::new();

    let register = |s: Subgroup, all: &mut HashSet<ElemSet>, reps: &mut Vec<SubgroupClass>, queue: &mut Vec<usize>| {
        if all.contains(s.set()) {
            return;
        }
        let mut size = 0;
        let norm = normalizer(g, &s);
        // transversal of the normalizer: conjugates by one element per coset
        let mut covered = ElemSet::new(g.order());
        for x in g.elements() {
            if covered.contains(x) {
                continue;
            }
            for &m in norm.elements() {
                covered.insert(g.mul(m, x));
            }
            all.insert(s.conjugate(g, x).set().clone());
            size += 1;
        }
        queue.push(reps.len());
        reps.push(SubgroupClass {
            representative: s,
            size,
        });
    };

    register(Subgroup::trivial(g), &mut all, &mut reps, &mut queue);
    let mut head = 0;
    while head < queue.len() {
        let ri = queue[head];
        head += 1;
        let base = reps[ri].representative.clone();
        for &c in &cyc_gens {
            if base.contains(c) {
                continue;
            }
            let mut gens = base.generators().to_vec();
            gens.push(c);
            let s = Subgroup::from_generators(g, &gens);
            register(s, &mut all, &mut reps, &mut queue);
        }
    }
    reps.sort_by(|a, b| {
        a.representative
            .order()
            .cmp(&b.representative.order())
            .then_with(|| a.representative.elements().cmp(b.representative.elements()))
    });
    Ok(reps)
}

/// Every subgroup, sorted by order then member list.
pub fn subgroups(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
    let mut out: Vec<Subgroup> = subgroup_classes(g, cap)?
        .iter()
        .flat_map(|c| c.conjugates(g))
        .collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
    Ok(out)
}

pub fn normal_subgroups(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
    Ok(subgroup_classes(g, cap)?
        .into_iter()
        .filter(|c| c.size == 1)
        .map(|c| c.representative)
        .collect())
}

/// Invariant factors of the abelianization `G/G'`, increasing, each dividing the next.
pub fn abelian_invariants(g: &FiniteGroup) -> Vec<usize> {
    let d = derived_subgroup(g);
    let q = quotient(g, d.set()).expect("derived subgroup is normal").group;
    abelian_group_invariants(&q)
}

fn abelian_group_invariants(a: &FiniteGroup) -> Vec<usize> {
    let n = a.order();
    if n == 1 {
        return Vec::new();
    }
    // partitions per prime from counts of elements killed by p^k
    let mut primary: Vec<Vec<usize>> = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            // r_k = log_p #{x : x^(p^k) = 1}; parts >= k number = r_k - r_{k-1}
            let mut r = vec![0usize];
            let mut pk = 1usize;
            for _ in 0..e {
                pk *= p;
                let cnt = a.elements().filter(|&x| pk % a.elem_order(x) == 0).count();
                let mut lg = 0;
                let mut c = cnt;
                while c > 1 {
                    c /= p;
                    lg += 1;
                }
                r.push(lg);
            }
            let ge: Vec<usize> = (1..=e).map(|k| r[k] - r[k - 1]).collect();
            // ge[k-1] = number of parts >= k
            let nparts = ge[0];
            let mut parts = vec![1usize; nparts];
            for (k, &cnt) in ge.iter().enumerate() {
                for part in parts.iter_mut().take(cnt) {
                    *part = p.pow(k as u32 + 1);
                }
            }
            primary.push(parts);
        }
        p += 1;
    }
    let width = primary.iter().map(Vec::len).max().unwrap_or(0);
    let mut inv = vec![1usize; width];
    for parts in &primary {
        // parts are decreasing; align to the end so the largest goes last
        for (i, &q) in parts.iter().enumerate() {
            inv[width - 1 - i] *= q;
        }
    }
    inv
}

/// Nonabelian group in which every subgroup is normal.
pub fn is_hamiltonian(g: &FiniteGroup) -> bool {
    if g.is_abelian() {
        return false;
    }
    g.elements().all(|x| {
        let c = g.generate(&[x]);
        g.generators().iter().all(|y| c.contains(g.conj(x, y.elem)))
    })
}

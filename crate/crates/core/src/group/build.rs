use super::{FiniteGroup, Generator, GroupError};

fn named(pairs: &[(&str, usize)]) -> Vec<Generator> {
    pairs
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(n, e)| Generator {
            name: n.to_string(),
            elem: *e,
        })
        .collect()
}

/// Cyclic group `C_n = <a>`; element `i` is `a^i`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::BadParameter("cyclic group needs n >= 1".into()));
    }
    let mut t = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            t[i * n + j] = ((i + j) % n) as u32;
        }
    }
    let gens = named(&[("a", if n > 1 { 1 } else { 0 })]);
    Ok(FiniteGroup::from_parts(format!("C{n}"), n, t, gens))
}

/// Dihedral group of order `m`: `<a, b | a^(m/2), b^2, b a b^-1 = a^-1>`.
pub fn dihedral(m: usize) -> Result<FiniteGroup, GroupError> {
    if m < 2 || m % 2 != 0 {
        return Err(GroupError::BadParameter(format!(
            "dihedral group D{m}: order must be even and >= 2"
        )));
    }
    let n = m / 2;
    // index = i + n*j  <->  a^i b^j
    let mut t = vec![0u32; m * m];
    for x in 0..m {
        let (i, j) = (x % n, x / n);
        for y in 0..m {
            let (k, l) = (y % n, y / n);
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            t[x * m + y] = (rot + n * ((j + l) % 2)) as u32;
        }
    }
    let gens = named(&[("a", if n > 1 { 1 } else { 0 }), ("b", n)]);
    Ok(FiniteGroup::from_parts(format!("D{m}"), m, t, gens))
}

/// Generalized quaternion (dicyclic) group of order `m`:
/// `<a, b | a^(m/2), b^2 = a^(m/4), b a b^-1 = a^-1>`.
pub fn dicyclic(m: usize) -> Result<FiniteGroup, GroupError> {
    if m < 4 || m % 4 != 0 {
        return Err(GroupError::BadParameter(format!(
            "dicyclic group Q{m}: order must be a positive multiple of 4"
        )));
    }
    let n = m / 2;
    let q = m / 4;
    let mut t = vec![0u32; m * m];
    for x in 0..m {
        let (i, j) = (x % n, x / n);
        for y in 0..m {
            let (k, l) = (y % n, y / n);
            let idx = match (j, l) {
                (0, _) => (i + k) % n + n * l,
                (1, 0) => (i + n - k) % n + n,
                _ => (i + n - k + q) % n,
            };
            t[x * m + y] = idx as u32;
        }
    }
    let gens = named(&[("a", 1), ("b", n)]);
    Ok(FiniteGroup::from_parts(format!("Q{m}"), m, t, gens))
}

fn pow_mod(base: usize, exp: usize, m: usize) -> usize {
    let mut acc = 1 % m;
    let mut b = base % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// `C_n x| C_m = <a, b | a^n, b^m, b a b^-1 = a^r>`.
pub fn semidirect_cyclic(n: usize, m: usize, r: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || m == 0 {
        return Err(GroupError::BadParameter("semidirect product needs n, m >= 1".into()));
    }
    if pow_mod(r, m, n) != 1 % n {
        return Err(GroupError::BadAction { n, m, r });
    }
    let size = n * m;
    let rpow: Vec<usize> = (0..m).map(|j| pow_mod(r, j, n)).collect();
    let mut t = vec![0u32; size * size];
    for x in 0..size {
        let (i, j) = (x % n, x / n);
        for y in 0..size {
            let (k, l) = (y % n, y / n);
            t[x * size + y] = ((i + k * rpow[j]) % n + n * ((j + l) % m)) as u32;
        }
    }
    let gens = named(&[("a", if n > 1 { 1 } else { 0 }), ("b", if m > 1 { n } else { 0 })]);
    let label = format!("C{n}:C{m}[{r}]");
    Ok(FiniteGroup::from_parts(label, size, t, gens))
}

/// Direct product; element `(g, h)` has index `g*|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (n, m) = (g.order(), h.order());
    let size = n * m;
    let mut t = vec![0u32; size * size];
    for x in 0..size {
        let (a, b) = (x / m, x % m);
        for y in 0..size {
            let (c, d) = (y / m, y % m);
            t[x * size + y] = (g.mul(a, c) * m + h.mul(b, d)) as u32;
        }
    }
    let mut gens: Vec<Generator> = g
        .generators()
        .iter()
        .map(|gen| Generator {
            name: gen.name.clone(),
            elem: gen.elem * m,
        })
        .collect();
    for gen in h.generators() {
        let mut name = gen.name.clone();
        let mut k = 2;
        while gens.iter().any(|x| x.name == name) {
            name = format!("{}_{k}", gen.name);
            k += 1;
        }
        gens.push(Generator {
            name,
            elem: gen.elem,
        });
    }
    let label = format!("{} x {}", g.label(), h.label());
    FiniteGroup::from_parts(label, size, t, gens)
}

pub fn direct_product_all(groups: &[FiniteGroup]) -> FiniteGroup {
    let mut it = groups.iter();
    let first = it.next().cloned().unwrap_or_else(|| cyclic(1).unwrap());
    it.fold(first, |acc, g| direct_product(&acc, g))
}

fn check_central_involution(g: &FiniteGroup, z: usize) -> Result<(), GroupError> {
    if z >= g.order() {
        return Err(GroupError::BadParameter(format!("element {z} out of range")));
    }
    if g.elem_order(z) != 2 {
        return Err(GroupError::WrongOrder {
            element: z,
            group: g.label().to_string(),
            order: g.elem_order(z),
        });
    }
    if g.elements().any(|x| g.mul(x, z) != g.mul(z, x)) {
        return Err(GroupError::NotCentral {
            element: z,
            group: g.label().to_string(),
        });
    }
    Ok(())
}

/// Central product `(G x H) / <(zG, zH)>` for central involutions `zG`, `zH`.
pub fn central_product(
    g: &FiniteGroup,
    zg: usize,
    h: &FiniteGroup,
    zh: usize,
) -> Result<FiniteGroup, GroupError> {
    check_central_involution(g, zg)?;
    check_central_involution(h, zh)?;
    let prod = direct_product(g, h);
    let z = zg * h.order() + zh;
    let n = prod.generate(&[z]);
    let q = super::quotient(&prod, &n)?;
    Ok(q.group.with_label(format!("{}Y{}", g.label(), h.label())))
}

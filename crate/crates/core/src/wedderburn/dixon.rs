//! Character table modulo a prime by Dixon's method, used as an independent
//! check of the strong Shoda pair decomposition.

use std::collections::HashMap;

use super::algebra::GroupAlgebraElement;
use super::WedderburnError;
use crate::group::{conjugacy_classes, FiniteGroup};
use crate::numbers::{is_prime, mod_pow};

/// Irreducible characters of `G` reduced modulo `prime`, grouped into
/// rational (Galois) orbits.
#[derive(Clone, Debug)]
pub struct CharacterOracle {
    pub prime: u64,
    pub class_sizes: Vec<usize>,
    /// `omega[chi][i] = |C_i| chi(g_i) / chi(1)` modulo `prime`.
    pub omega: Vec<Vec<u64>>,
    pub degrees: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
}

/// Smallest prime `q = 1 mod exponent` with `q > 2 sqrt(|G|)`.
pub fn dixon_prime(order: usize, exponent: usize) -> u64 {
    let e = exponent.max(1) as u64;
    let mut q = e + 1;
    while !(is_prime(q) && q * q > 4 * order as u64) {
        q += e;
    }
    q
}

fn inv_mod(a: u64, q: u64) -> u64 {
    mod_pow(a % q, q - 2, q)
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut Vec<Vec<u64>>, q: u64) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let iv = inv_mod(rows[r][c], q);
        for x in rows[r].iter_mut() {
            *x = *x * iv % q;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + q - f * rows[r][j] % q) % q;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the kernel of a square matrix.
fn kernel(mut a: Vec<Vec<u64>>, q: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let pivots = rref(&mut a, q);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; n];
            v[f] = 1;
            for (row, &p) in a.iter().zip(&pivots) {
                v[p] = (q - row[f]) % q;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial via Hessenberg reduction; coefficients from
/// degree 0 upward.
fn char_poly(mut h: Vec<Vec<u64>>, q: u64) -> Vec<u64> {
    let n = h.len();
    for m in 0..n.saturating_sub(2) {
        if h[m + 1][m] == 0 {
            if let Some(i) = (m + 2..n).find(|&i| h[i][m] != 0) {
                h.swap(i, m + 1);
                for row in h.iter_mut() {
                    row.swap(i, m + 1);
                }
            } else {
                continue;
            }
        }
        let iv = inv_mod(h[m + 1][m], q);
        for i in m + 2..n {
            let u = h[i][m] * iv % q;
            if u == 0 {
                continue;
            }
            for j in 0..n {
                h[i][j] = (h[i][j] + q - u * h[m + 1][j] % q) % q;
            }
            for row in h.iter_mut() {
                row[m + 1] = (row[m + 1] + u * row[i]) % q;
            }
        }
    }
    let mut p: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        // (x - h_mm) p_(m-1)
        let prev = &p[m - 1];
        let mut cur = vec![0; m + 1];
        for (k, &c) in prev.iter().enumerate() {
            cur[k + 1] = (cur[k + 1] + c) % q;
            cur[k] = (cur[k] + q - h[m - 1][m - 1] * c % q) % q;
        }
        let mut t = 1u64;
        for i in (1..m).rev() {
            t = t * h[i][i - 1] % q;
            let f = h[i - 1][m - 1] * t % q;
            for (k, &c) in p[i - 1].iter().enumerate() {
                cur[k] = (cur[k] + q - f * c % q) % q;
            }
        }
        p.push(cur);
    }
    p.pop().unwrap()
}

fn eval(poly: &[u64], x: u64, q: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % q)
}

struct ClassData {
    reps: Vec<usize>,
    sizes: Vec<usize>,
    members: Vec<Vec<usize>>,
    index: Vec<usize>,
}

impl ClassData {
    /// `(M_j)_(i,l)` = number of `x` in `C_j` with `x^-1 z_l` in `C_i`.
    fn class_matrix(&self, g: &FiniteGroup, j: usize, q: u64) -> Vec<Vec<u64>> {
        let r = self.reps.len();
        let mut m = vec![vec![0u64; r]; r];
        for (l, &z) in self.reps.iter().enumerate() {
            for &x in &self.members[j] {
                let i = self.index[g.mul(g.inv(x), z)];
                m[i][l] += 1;
            }
        }
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x %= q;
            }
        }
        m
    }
}

/// Splits `F_q^r` into common eigenlines of the class matrices.
fn eigenlines(g: &FiniteGroup, cd: &ClassData, q: u64) -> Result<Vec<Vec<u64>>, WedderburnError> {
    let r = cd.reps.len();
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces: Vec<(Vec<Vec<u64>>, usize)> = vec![(identity, 1)];
    let mut lines = Vec::new();
    let mut cache: HashMap<usize, Vec<Vec<u64>>> = HashMap::new();
    while let Some((basis, j)) = spaces.pop() {
        if basis.len() == 1 {
            lines.push(basis.into_iter().next().unwrap());
            continue;
        }
        if j >= r {
            return Err(WedderburnError::OracleMismatch {
                detail: format!("class matrices do not separate a space of dimension {}", basis.len()),
            });
        }
        // omega is a common right eigenvector: M_j omega = omega_j omega
        let mj = cache.entry(j).or_insert_with(|| cd.class_matrix(g, j, q)).clone();
        let mut basis = basis;
        let pivots = rref(&mut basis, q);
        let d = basis.len();
        let images: Vec<Vec<u64>> = basis
            .iter()
            .map(|v| {
                (0..r)
                    .map(|i| (0..r).fold(0, |acc, l| (acc + mj[i][l] * v[l]) % q))
                    .collect()
            })
            .collect();
        // coordinates: images[k] = sum_k' b[k][k'] basis[k'], read at pivots
        let b: Vec<Vec<u64>> = images
            .iter()
            .map(|img| pivots.iter().map(|&p| img[p]).collect())
            .collect();
        let bt: Vec<Vec<u64>> = (0..d).map(|i| (0..d).map(|k| b[k][i]).collect()).collect();
        let poly = char_poly(bt, q);
        let roots: Vec<u64> = (0..q).filter(|&x| eval(&poly, x, q) == 0).collect();
        if roots.len() == 1 {
            spaces.push((basis, j + 1));
            continue;
        }
        let mut covered = 0;
        for lam in roots {
            let mut a = b.clone();
            for (k, row) in a.iter_mut().enumerate() {
                row[k] = (row[k] + q - lam) % q;
            }
            // row vectors c with c (B - lam) = 0  <=>  (B - lam)^T c^T = 0
            let at: Vec<Vec<u64>> = (0..d).map(|i| (0..d).map(|k| a[k][i]).collect()).collect();
            let ker = kernel(at, q);
            covered += ker.len();
            let sub: Vec<Vec<u64>> = ker
                .iter()
                .map(|c| {
                    (0..r)
                        .map(|l| (0..d).fold(0, |acc, k| (acc + c[k] * basis[k][l]) % q))
                        .collect()
                })
                .collect();
            spaces.push((sub, j + 1));
        }
        if covered != d {
            return Err(WedderburnError::OracleMismatch {
                detail: format!("class matrix {j} is not diagonalizable modulo {q}"),
            });
        }
    }
    Ok(lines)
}

/// Character table modulo a Dixon prime, with rational orbits.
pub fn character_oracle(g: &FiniteGroup) -> Result<CharacterOracle, WedderburnError> {
    let classes = conjugacy_classes(g);
    let cd = ClassData {
        reps: classes.iter().map(|c| c.representative).collect(),
        sizes: classes.iter().map(|c| c.members.len()).collect(),
        members: classes.iter().map(|c| c.members.clone()).collect(),
        index: g.class_index(),
    };
    let n = g.order();
    let exp = g.exponent();
    let q = dixon_prime(n, exp);
    let r = cd.reps.len();
    let lines = eigenlines(g, &cd, q)?;
    if lines.len() != r {
        return Err(WedderburnError::OracleMismatch {
            detail: format!("{} eigenlines for {} classes", lines.len(), r),
        });
    }
    let inv_class: Vec<usize> = cd.reps.iter().map(|&x| cd.index[g.inv(x)]).collect();
    let mut omega = Vec::new();
    let mut degrees = Vec::new();
    for v in lines {
        if v[0] == 0 {
            return Err(WedderburnError::OracleMismatch {
                detail: "eigenvector vanishes on the identity class".into(),
            });
        }
        let s = inv_mod(v[0], q);
        let w: Vec<u64> = v.iter().map(|x| x * s % q).collect();
        let sum = (0..r).fold(0, |acc, i| {
            (acc + w[i] * w[inv_class[i]] % q * inv_mod(cd.sizes[i] as u64, q)) % q
        });
        let sq = (n as u64 % q) * inv_mod(sum, q) % q;
        let d = (1..=n)
            .take_while(|d| d * d <= n)
            .find(|&d| (d * d) as u64 % q == sq)
            .ok_or_else(|| WedderburnError::OracleMismatch {
                detail: format!("no degree with square {sq} mod {q}"),
            })?;
        omega.push(w);
        degrees.push(d);
    }
    // Galois orbits: omega^(t) = omega composed with the t-th power map on classes
    let position: HashMap<Vec<u64>, usize> =
        omega.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let mut orbit_of = vec![usize::MAX; r];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for chi in 0..r {
        if orbit_of[chi] != usize::MAX {
            continue;
        }
        let mut orbit = Vec::new();
        for t in (1..=exp.max(1)).filter(|t| num_integer::gcd(*t, exp.max(1)) == 1) {
            let powered: Vec<u64> = (0..r)
                .map(|i| omega[chi][cd.index[g.pow(cd.reps[i], t as i64)]])
                .collect();
            let Some(&psi) = position.get(&powered) else {
                return Err(WedderburnError::OracleMismatch {
                    detail: "Galois conjugate of a character is missing".into(),
                });
            };
            if orbit_of[psi] == usize::MAX {
                orbit_of[psi] = orbits.len();
                orbit.push(psi);
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(CharacterOracle {
        prime: q,
        class_sizes: cd.sizes,
        omega,
        degrees,
        orbits,
    })
}

impl CharacterOracle {
    /// Sum of the squared degrees; `|G|` for a complete table.
    pub fn degree_square_sum(&self) -> usize {
        self.degrees.iter().map(|d| d * d).sum()
    }

    /// `omega_chi(e)` for a central element `e`, for every character.
    pub fn central_character_values(
        &self,
        g: &FiniteGroup,
        e: &GroupAlgebraElement,
    ) -> Result<Vec<u64>, WedderburnError> {
        let q = self.prime;
        let classes = conjugacy_classes(g);
        let den = e.denominator().rem_euclid(q as i128) as u64;
        if den == 0 {
            return Err(WedderburnError::OracleMismatch {
                detail: format!("denominator divisible by the prime {q}"),
            });
        }
        let dinv = inv_mod(den, q);
        let coeff: Vec<u64> = classes
            .iter()
            .map(|c| {
                let (num, _) = e.coefficient_parts(c.representative);
                num.rem_euclid(q as i128) as u64 * dinv % q
            })
            .collect();
        Ok(self
            .omega
            .iter()
            .map(|w| (0..w.len()).fold(0, |acc, i| (acc + coeff[i] * w[i]) % q))
            .collect())
    }

    /// Index of the orbit on which `e` acts as `1` (and as `0` elsewhere).
    pub fn orbit_of_idempotent(
        &self,
        g: &FiniteGroup,
        e: &GroupAlgebraElement,
    ) -> Result<usize, WedderburnError> {
        let vals = self.central_character_values(g, e)?;
        let ones: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == 1).collect();
        if ones.len() + vals.iter().filter(|&&v| v == 0).count() != vals.len() {
            return Err(WedderburnError::OracleMismatch {
                detail: "idempotent takes a value other than 0 or 1".into(),
            });
        }
        self.orbits
            .iter()
            .position(|o| *o == ones)
            .ok_or_else(|| WedderburnError::OracleMismatch {
                detail: format!("idempotent is supported on characters {ones:?}, not on one orbit"),
            })
    }

    /// `Q`-dimension of the component belonging to an orbit.
    pub fn orbit_dimension(&self, orbit: usize) -> usize {
        let o = &self.orbits[orbit];
        o.len() * self.degrees[o[0]] * self.degrees[o[0]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dicyclic, dihedral, direct_product, semidirect_cyclic};

    fn sorted_degrees(g: &FiniteGroup) -> Vec<usize> {
        let mut d = character_oracle(g).unwrap().degrees;
        d.sort();
        d
    }

    #[test]
    fn prime_choice() {
        assert_eq!(dixon_prime(8, 4), 13);
        assert_eq!(dixon_prime(6, 6), 7);
        assert_eq!(dixon_prime(1, 1), 3);
    }

    #[test]
    fn char_poly_small() {
        // [[2,1],[1,2]] mod 7: x^2 - 4x + 3
        assert_eq!(char_poly(vec![vec![2, 1], vec![1, 2]], 7), vec![3, 3, 1]);
        let h = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]];
        // det(xI - A) = x^3 - 16x^2 - 12x + 3 over Z, reduced mod 101
        assert_eq!(char_poly(h, 101), vec![3, 101 - 12, 101 - 16, 1]);
    }

    #[test]
    fn degrees_of_small_groups() {
        assert_eq!(sorted_degrees(&dihedral(6).unwrap()), vec![1, 1, 2]);
        assert_eq!(sorted_degrees(&dicyclic(8).unwrap()), vec![1, 1, 1, 1, 2]);
        assert_eq!(sorted_degrees(&cyclic(5).unwrap()), vec![1; 5]);
        assert_eq!(sorted_degrees(&semidirect_cyclic(7, 3, 2).unwrap()), vec![1, 1, 1, 3, 3]);
        let g = direct_product(&dihedral(6).unwrap(), &dihedral(6).unwrap());
        assert_eq!(sorted_degrees(&g), vec![1, 1, 1, 1, 2, 2, 2, 2, 4]);
    }

    #[test]
    fn rational_orbits() {
        let o = character_oracle(&cyclic(5).unwrap()).unwrap();
        let mut sizes: Vec<usize> = o.orbits.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 4]);
        let o = character_oracle(&semidirect_cyclic(7, 3, 2).unwrap()).unwrap();
        let mut sizes: Vec<usize> = o.orbits.iter().map(Vec::len).collect();
        sizes.sort();
        // trivial, the two linear characters of order 3, the two degree-3 characters
        assert_eq!(sizes, vec![1, 2, 2]);
        assert_eq!(o.degree_square_sum(), 21);
    }
}

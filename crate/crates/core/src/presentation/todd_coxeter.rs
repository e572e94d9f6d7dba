//! HLT coset enumeration over the trivial subgroup.

use std::collections::VecDeque;

use super::words::{inverse_letter, Letter};
use super::{Presentation, PresentationError};
use crate::group::{FiniteGroup, Generator};

pub const DEFAULT_MAX_COSETS: usize = 10_000;

const NONE: usize = usize::MAX;

struct Table {
    cols: usize,
    rows: Vec<Vec<usize>>,
    parent: Vec<usize>,
    max: usize,
}

impl Table {
    fn rep(&mut self, mut k: usize) -> usize {
        let mut root = k;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[k] != root {
            let next = self.parent[k];
            self.parent[k] = root;
            k = next;
        }
        root
    }

    fn live(&self, k: usize) -> bool {
        self.parent[k] == k
    }

    fn define(&mut self, c: usize, x: Letter) -> Result<(), PresentationError> {
        if self.rows.len() >= self.max {
            return Err(PresentationError::CosetOverflow { max_cosets: self.max });
        }
        let n = self.rows.len();
        self.rows.push(vec![NONE; self.cols]);
        self.parent.push(n);
        self.rows[c][x] = n;
        self.rows[n][inverse_letter(x)] = c;
        Ok(())
    }

    fn merge(&mut self, k: usize, l: usize, queue: &mut VecDeque<usize>) {
        let a = self.rep(k);
        let b = self.rep(l);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
            queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(g) = queue.pop_front() {
            for x in 0..self.cols {
                let d = self.rows[g][x];
                if d == NONE {
                    continue;
                }
                let xi = inverse_letter(x);
                self.rows[d][xi] = NONE;
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.rows[mu][x] != NONE {
                    let t = self.rows[mu][x];
                    self.merge(nu, t, &mut queue);
                } else if self.rows[nu][xi] != NONE {
                    let t = self.rows[nu][xi];
                    self.merge(mu, t, &mut queue);
                } else {
                    self.rows[mu][x] = nu;
                    self.rows[nu][xi] = mu;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[Letter]) -> Result<(), PresentationError> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i: isize = 0;
        let mut j: isize = w.len() as isize - 1;
        loop {
            while i <= j && self.rows[f][w[i as usize]] != NONE {
                f = self.rows[f][w[i as usize]];
                i += 1;
            }
            if i > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j >= i && self.rows[b][inverse_letter(w[j as usize])] != NONE {
                b = self.rows[b][inverse_letter(w[j as usize])];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.rows[f][x] = b;
                self.rows[b][inverse_letter(x)] = f;
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }
}

/// Enumerates the cosets of the trivial subgroup and returns the group acting
/// regularly on them, as a Cayley table. Coset 0 is the identity.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> Result<FiniteGroup, PresentationError> {
    let table = enumerate(p, max_cosets)?;
    let n = table.len();
    let ngens = p.generators.len();
    // word for each coset as a (parent, letter) spanning tree in BFS order
    let mut tree: Vec<(usize, usize)> = vec![(NONE, NONE); n];
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut k = 0;
    while k < order.len() {
        let c = order[k];
        for x in 0..2 * ngens {
            let d = table[c][x];
            if !seen[d] {
                seen[d] = true;
                tree[d] = (c, x);
                order.push(d);
            }
        }
        k += 1;
    }
    let mut mul = vec![0u32; n * n];
    for i in 0..n {
        for &j in &order {
            let v = if j == 0 {
                i
            } else {
                let (par, x) = tree[j];
                table[mul[i * n + par] as usize][x]
            };
            mul[i * n + j] = v as u32;
        }
    }
    let gens = p
        .generators
        .iter()
        .enumerate()
        .filter(|(g, _)| table[0][2 * g] != 0)
        .map(|(g, name)| Generator {
            name: name.clone(),
            elem: table[0][2 * g],
        })
        .collect();
    Ok(FiniteGroup::from_parts(p.label(), n, mul, gens))
}

/// The standardized coset table: `table[c][x]` for letters `x`.
pub(crate) fn enumerate(p: &Presentation, max_cosets: usize) -> Result<Vec<Vec<usize>>, PresentationError> {
    if p.generators.is_empty() {
        return Err(PresentationError::EmptyPresentation);
    }
    let cols = 2 * p.generators.len();
    let mut t = Table {
        cols,
        rows: vec![vec![NONE; cols]],
        parent: vec![0],
        max: max_cosets.max(1),
    };
    let mut c = 0;
    while c < t.rows.len() {
        if t.live(c) {
            for r in &p.relators {
                t.scan_and_fill(c, r)?;
                if !t.live(c) {
                    break;
                }
            }
            if t.live(c) {
                for x in 0..cols {
                    if t.rows[c][x] == NONE {
                        t.define(c, x)?;
                    }
                }
            }
        }
        c += 1;
    }
    // renumber live cosets in BFS order from coset 0
    let mut index = vec![NONE; t.rows.len()];
    let mut order = vec![0usize];
    index[0] = 0;
    let mut k = 0;
    while k < order.len() {
        let c = order[k];
        for x in 0..cols {
            let d = t.rep(t.rows[c][x]);
            if index[d] == NONE {
                index[d] = order.len();
                order.push(d);
            }
        }
        k += 1;
    }
    let mut out = vec![vec![0usize; cols]; order.len()];
    for (new, &old) in order.iter().enumerate() {
        for x in 0..cols {
            let d = t.rep(t.rows[old][x]);
            out[new][x] = index[d];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn cyclic_and_dihedral() {
        assert_eq!(todd_coxeter(&pres("gens: a\na^7"), 100).unwrap().order(), 7);
        let d = todd_coxeter(&pres("gens: r s\nr^5\ns^2\ns r s = r^-1"), 100).unwrap();
        assert_eq!(d.order(), 10);
        assert!(!d.is_abelian());
    }

    #[test]
    fn free_group_overflows() {
        let p = pres("gens: a b\na b a^-1 b^-1");
        assert_eq!(
            todd_coxeter(&p, 50).unwrap_err(),
            PresentationError::CosetOverflow { max_cosets: 50 }
        );
    }

    #[test]
    fn empty_presentation() {
        let p = Presentation {
            generators: vec![],
            relators: vec![],
            name: None,
        };
        assert_eq!(todd_coxeter(&p, 10).unwrap_err(), PresentationError::EmptyPresentation);
    }

    #[test]
    fn relators_hold_in_result() {
        let p = pres("gens: x y\nx^4\ny^2 = x^2\ny x y^-1 = x^-1");
        let g = todd_coxeter(&p, 100).unwrap();
        assert_eq!(g.order(), 8);
        assert!(p.holds_in(&g));
    }
}

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{divisors, euler_phi, gcd, rat, units, NumberError, Rational};

fn phi_cache() -> &'static Mutex<HashMap<usize, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (low to high) of the `n`-th cyclotomic polynomial.
pub(crate) fn cyclotomic_polynomial(n: usize) -> Arc<Vec<i64>> {
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by the proper divisors' polynomials
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let den = cyclotomic_polynomial(d);
        num = poly_div_exact(&num, &den);
    }
    let p = Arc::new(num);
    phi_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// An element of a cyclotomic field, stored in the smallest `Q(zeta_k)`
/// containing it, as coordinates over the power basis `1, zeta_k, ...,
/// zeta_k^(phi(k)-1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: usize,
    coeffs: Vec<Rational>,
}

/// Reduces a dense vector of coefficients of `zeta_k^j` (any length) modulo
/// `x^k - 1` and the cyclotomic polynomial; result has length `phi(k)`.
fn reduce(k: usize, dense: &[Rational]) -> Vec<Rational> {
    let mut folded = vec![Rational::zero(); k];
    for (j, c) in dense.iter().enumerate() {
        if !c.is_zero() {
            folded[j % k] += c;
        }
    }
    let phi = cyclotomic_polynomial(k);
    let deg = phi.len() - 1;
    for i in (deg..k).rev() {
        if folded[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut folded[i]);
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                folded[i - deg + j] -= &c * rat(pj);
            }
        }
    }
    folded.truncate(deg);
    folded
}

/// Solves `A x = b` over `Q` where `A` is given by columns; returns `None`
/// if the system is inconsistent.
fn solve_columns(cols: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = b.len();
    let ncols = cols.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][ncols].clone();
    }
    Some(x)
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    /// `zeta_k^j` with `zeta_k = exp(2 pi i / k)`.
    pub fn zeta(k: usize, j: i64) -> Self {
        assert!(k >= 1);
        let e = j.rem_euclid(k as i64) as usize;
        let mut dense = vec![Rational::zero(); k];
        dense[e] = Rational::one();
        Self::from_dense(k, &dense)
    }

    /// `sum c * zeta_k^j` over the given terms.
    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut dense = vec![Rational::zero(); k];
        for (j, c) in terms {
            dense[j.rem_euclid(k as i64) as usize] += c;
        }
        Self::from_dense(k, &dense)
    }

    fn from_dense(k: usize, dense: &[Rational]) -> Self {
        let coeffs = reduce(k, dense);
        Self::minimized(k, coeffs)
    }

    fn minimized(k: usize, coeffs: Vec<Rational>) -> Self {
        if coeffs.iter().skip(1).all(Zero::is_zero) {
            return Cyclotomic {
                conductor: 1,
                coeffs: vec![coeffs.first().cloned().unwrap_or_else(Rational::zero)],
            };
        }
        for d in divisors(k) {
            if d == k {
                break;
            }
            if d % 4 == 2 {
                continue;
            }
            let fixed = units(k)
                .into_iter()
                .filter(|&t| t % d == 1 % d)
                .all(|t| galois_coeffs(k, &coeffs, t) == coeffs);
            if !fixed {
                continue;
            }
            let cols: Vec<Vec<Rational>> = (0..euler_phi(d))
                .map(|j| {
                    let mut dense = vec![Rational::zero(); k];
                    dense[j * (k / d)] = Rational::one();
                    reduce(k, &dense)
                })
                .collect();
            if let Some(x) = solve_columns(&cols, &coeffs) {
                return Cyclotomic {
                    conductor: d,
                    coeffs: x,
                };
            }
        }
        Cyclotomic {
            conductor: k,
            coeffs,
        }
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    /// Coordinates over the power basis of `Q(zeta_conductor)`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    /// Coordinates of this element inside `Q(zeta_k)`; `k` must be a multiple
    /// of the conductor.
    pub fn lift(&self, k: usize) -> Vec<Rational> {
        assert!(k % self.conductor == 0, "cannot lift to a field not containing the element");
        let step = k / self.conductor;
        let mut dense = vec![Rational::zero(); k];
        for (j, c) in self.coeffs.iter().enumerate() {
            dense[j * step] = c.clone();
        }
        reduce(k, &dense)
    }

    /// Applies `zeta -> zeta^t` (as an automorphism of any cyclotomic field
    /// containing the element).
    pub fn galois_apply(&self, t: i64) -> Result<Self, NumberError> {
        let k = self.conductor;
        let tr = t.rem_euclid(k as i64) as usize;
        if gcd(tr as u64, k as u64) != 1 && k > 1 {
            return Err(NumberError::BadGaloisIndex { t, conductor: k });
        }
        if k <= 2 {
            return Ok(self.clone());
        }
        // automorphisms keep the minimal conductor
        Ok(Cyclotomic {
            conductor: k,
            coeffs: galois_coeffs(k, &self.coeffs, tr),
        })
    }

    /// Galois action when `t` is a unit modulo a multiple `k` of the conductor.
    pub fn galois_apply_mod(&self, t: usize, k: usize) -> Self {
        let tr = t % self.conductor.max(1);
        let tr = if self.conductor == 1 { 0 } else { tr };
        debug_assert!(k % self.conductor == 0);
        if self.conductor <= 2 {
            return self.clone();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: galois_coeffs(self.conductor, &self.coeffs, tr),
        }
    }

    /// Complex conjugate.
    pub fn conjugate(&self) -> Self {
        self.galois_apply(-1).expect("-1 is always a unit")
    }

    pub fn inv(&self) -> Result<Self, NumberError> {
        if self.is_zero() {
            return Err(NumberError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(Rational::one() / q));
        }
        let k = self.conductor;
        let phi = self.coeffs.len();
        let cols: Vec<Vec<Rational>> = (0..phi)
            .map(|j| (self * &Cyclotomic::zeta(k, j as i64)).lift(k))
            .collect();
        let mut e0 = vec![Rational::zero(); phi];
        e0[0] = Rational::one();
        let x = solve_columns(&cols, &e0).ok_or(NumberError::DivisionByZero)?;
        Ok(Self::minimized(k, x))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclotomic::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::minimized(self.conductor, self.coeffs.iter().map(|c| c * q).collect())
    }

    /// Floating-point value, for display and tests.
    pub fn to_complex(&self) -> (f64, f64) {
        let k = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let th = 2.0 * std::f64::consts::PI * j as f64 / k;
            re += c * th.cos();
            im += c * th.sin();
        }
        (re, im)
    }

    /// Writes the element as `q * zeta_n^e` when it has that shape. The root
    /// is normalized so that `n` is odd or divisible by 4 and `gcd(e, n) = 1`.
    pub fn as_monomial(&self) -> Option<(usize, usize, Rational)> {
        let l = num_integer::lcm(2, self.conductor);
        let base = self.lift(l);
        for j in 0..l {
            let mut dense = vec![Rational::zero(); l];
            for (i, c) in base.iter().enumerate() {
                dense[(i + l - j) % l] = c.clone();
            }
            let r = reduce(l, &dense);
            if r.iter().skip(1).all(Zero::is_zero) {
                let q = r[0].clone();
                return Some(normalize_root(l, j, q));
            }
        }
        None
    }

    /// `sqrt(d)` for a squarefree integer `d`, built from a quadratic Gauss sum.
    pub fn sqrt_squarefree(d: i64) -> Self {
        if d == 1 {
            return Cyclotomic::one();
        }
        let disc = super::fundamental_discriminant(d);
        let k = disc.unsigned_abs() as usize;
        let g = Cyclotomic::from_terms(
            k,
            units(k)
                .into_iter()
                .map(|a| (a as i64, rat(super::kronecker(disc, a as i64) as i64))),
        );
        if disc == d {
            g
        } else {
            g.scale(&Rational::new(1.into(), 2.into()))
        }
    }

    fn binary(&self, other: &Self, f: impl Fn(&[Rational], &[Rational], usize) -> Vec<Rational>) -> Self {
        let k = num_integer::lcm(self.conductor, other.conductor);
        let a = self.lift(k);
        let b = other.lift(k);
        Self::minimized(k, f(&a, &b, k))
    }
}

fn normalize_root(l: usize, j: usize, q: Rational) -> (usize, usize, Rational) {
    if j == 0 {
        return (1, 0, q);
    }
    let g = num_integer::gcd(j, l);
    let (n, e) = (l / g, j / g);
    if n == 2 {
        return (1, 0, -q);
    }
    if n % 4 == 2 {
        // zeta_n^e = -zeta_(n/2)^((e + n/2)/2)
        let h = n / 2;
        return (h, ((e + h) / 2) % h, -q);
    }
    (n, e, q)
}

fn galois_coeffs(k: usize, coeffs: &[Rational], t: usize) -> Vec<Rational> {
    let mut dense = vec![Rational::zero(); k];
    for (j, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            dense[(j * t) % k] += c;
        }
    }
    reduce(k, &dense)
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.binary(rhs, |a, b, _| a.iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.binary(rhs, |a, b, _| a.iter().zip(b).map(|(x, y)| x - y).collect())
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.binary(rhs, |a, b, k| {
            let mut dense = vec![Rational::zero(); 2 * a.len().max(1)];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    if !y.is_zero() {
                        dense[i + j] += x * y;
                    }
                }
            }
            reduce(k, &dense)
        })
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let k = self.conductor;
        let mut out = String::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let base = match j {
                0 => String::new(),
                1 => format!("ζ{k}"),
                _ => format!("ζ{k}^{j}"),
            };
            if base.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&base);
            } else {
                out.push_str(&fmt_rational(&mag));
                out.push_str(&base);
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn phi_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = Cyclotomic::zeta(4, 1);
        assert_eq!(&i * &i, Cyclotomic::from_integer(-1));
    }

    #[test]
    fn zeta3_sum_is_minus_one() {
        let s = &Cyclotomic::zeta(3, 1) + &Cyclotomic::zeta(3, 2);
        assert_eq!(s, Cyclotomic::from_integer(-1));
        assert!(s.is_rational());
    }

    #[test]
    fn galois_on_zeta7() {
        let z = Cyclotomic::zeta(7, 1);
        assert_eq!(z.galois_apply(2).unwrap(), Cyclotomic::zeta(7, 2));
        assert!(matches!(
            Cyclotomic::zeta(6, 1).galois_apply(3),
            Err(NumberError::BadGaloisIndex { .. })
        ));
    }

    #[test]
    fn conductor_is_minimized() {
        // zeta8 + zeta8^-1 = sqrt 2 lives in Q(zeta8) only
        let s2 = &Cyclotomic::zeta(8, 1) + &Cyclotomic::zeta(8, 7);
        assert_eq!(s2.conductor(), 8);
        assert_eq!(&s2 * &s2, Cyclotomic::from_integer(2));
        // zeta12^4 = zeta3
        assert_eq!(Cyclotomic::zeta(12, 4), Cyclotomic::zeta(3, 1));
        assert_eq!(Cyclotomic::zeta(12, 4).conductor(), 3);
        // zeta6 lives in Q(zeta3)
        assert_eq!(Cyclotomic::zeta(6, 1).conductor(), 3);
        // i * zeta3 needs conductor 12
        assert_eq!((&Cyclotomic::zeta(4, 1) * &Cyclotomic::zeta(3, 1)).conductor(), 12);
    }

    #[test]
    fn inverse_and_division_by_zero() {
        let x = &Cyclotomic::zeta(5, 1) + &Cyclotomic::from_integer(2);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, Cyclotomic::one());
        assert_eq!(Cyclotomic::zero().inv(), Err(NumberError::DivisionByZero));
    }

    #[test]
    fn monomials() {
        assert_eq!(Cyclotomic::zeta(6, 1).as_monomial(), Some((3, 2, rat(-1))));
        assert_eq!(Cyclotomic::from_integer(-3).as_monomial(), Some((1, 0, rat(-3))));
        let x = Cyclotomic::zeta(8, 3).scale(&rat(5));
        assert_eq!(x.as_monomial(), Some((8, 3, rat(5))));
        assert_eq!((&Cyclotomic::zeta(5, 1) + &Cyclotomic::one()).as_monomial(), None);
    }

    #[test]
    fn gauss_sum_square_roots() {
        for d in [-1i64, -2, -3, 2, 3, 5, -7, 6, -15] {
            let r = Cyclotomic::sqrt_squarefree(d);
            assert_eq!(&r * &r, Cyclotomic::from_integer(d), "d={d}");
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(Cyclotomic::from_integer(-3).to_string(), "-3");
        assert_eq!(Cyclotomic::zeta(4, 1).to_string(), "ζ4");
        assert_eq!((&Cyclotomic::zeta(5, 2) - &Cyclotomic::from_integer(2)).to_string(), "-2+ζ5^2");
    }

    fn arb_cyc() -> impl Strategy<Value = Cyclotomic> {
        (prop::sample::select(vec![1usize, 3, 4, 5, 8, 12]), prop::collection::vec((0i64..12, -3i64..4), 1..4))
            .prop_map(|(k, terms)| Cyclotomic::from_terms(k, terms.into_iter().map(|(j, c)| (j, rat(c)))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn ring_axioms(a in arb_cyc(), b in arb_cyc(), c in arb_cyc()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn galois_is_multiplicative(a in arb_cyc(), b in arb_cyc(), t in prop::sample::select(vec![1i64, 7, 11, 13, 17, -1])) {
            let ab = (&a * &b).galois_apply(t).unwrap();
            let prod = &a.galois_apply(t).unwrap() * &b.galois_apply(t).unwrap();
            prop_assert_eq!(ab, prod);
        }
    }
}

//! Dense univariate polynomials over a [`Field`], with irreducibility testing,
//! factorization and root finding.

use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{prime_factors, Field, Gf};

/// A polynomial with coefficients little-endian; trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    c: Vec<Gf>,
}

// Degree first, then coefficients from the top: the index order on
// coefficient tuples.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { c: Vec::new() }
    }

    pub fn constant(a: Gf) -> Poly {
        Poly::from_coeffs(vec![a])
    }

    pub fn one(f: &Field) -> Poly {
        Poly::constant(f.one())
    }

    pub fn x(f: &Field) -> Poly {
        Poly { c: vec![f.zero(), f.one()] }
    }

    /// `x - root`.
    pub fn linear(f: &Field, root: &Gf) -> Poly {
        Poly { c: vec![f.neg(root), f.one()] }
    }

    pub fn monomial(a: Gf, k: usize) -> Poly {
        let mut c = vec![Gf::ZERO; k + 1];
        c[k] = a;
        Poly::from_coeffs(c)
    }

    pub fn from_coeffs(mut c: Vec<Gf>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    /// Builds a polynomial from field element indices (little-endian).
    pub fn from_indices(f: &Field, idx: &[u64]) -> Poly {
        Poly::from_coeffs(idx.iter().map(|&i| f.from_index(i)).collect())
    }

    pub fn to_indices(&self, f: &Field) -> Vec<u64> {
        self.c.iter().map(|a| f.index(a)).collect()
    }

    pub fn coeffs(&self) -> &[Gf] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Gf {
        self.c.get(i).copied().unwrap_or(Gf::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn leading(&self) -> Option<Gf> {
        self.c.last().copied()
    }

    pub fn is_monic(&self, f: &Field) -> bool {
        self.leading() == Some(f.one())
    }

    pub fn add(&self, o: &Poly, f: &Field) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::from_coeffs((0..n).map(|i| f.add(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Poly, f: &Field) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::from_coeffs((0..n).map(|i| f.sub(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly { c: self.c.iter().map(|a| f.neg(a)).collect() }
    }

    pub fn scale(&self, a: &Gf, f: &Field) -> Poly {
        Poly::from_coeffs(self.c.iter().map(|x| f.mul(x, a)).collect())
    }

    pub fn mul(&self, o: &Poly, f: &Field) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Gf::ZERO; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn pow(&self, k: u32, f: &Field) -> Poly {
        (0..k).fold(Poly::one(f), |acc, _| acc.mul(self, f))
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly, f: &Field) -> (Poly, Poly) {
        let dl = d.leading().expect("division by the zero polynomial");
        let dl_inv = f.inv(&dl).expect("nonzero leading coefficient");
        let dn = d.c.len();
        if self.c.len() < dn {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let mut q = vec![Gf::ZERO; r.len() - dn + 1];
        for k in (0..q.len()).rev() {
            let top = r[k + dn - 1];
            if top.is_zero() {
                continue;
            }
            let coef = f.mul(&top, &dl_inv);
            q[k] = coef;
            for (j, dj) in d.c.iter().enumerate() {
                r[k + j] = f.sub(&r[k + j], &f.mul(&coef, dj));
            }
        }
        r.truncate(dn - 1);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn rem(&self, d: &Poly, f: &Field) -> Poly {
        self.divrem(d, f).1
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn div_exact(&self, d: &Poly, f: &Field) -> Poly {
        let (q, r) = self.divrem(d, f);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly, f: &Field) -> bool {
        other.rem(self, f).is_zero()
    }

    pub fn monic(&self, f: &Field) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&f.inv(&l).expect("nonzero"), f),
        }
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, o: &Poly, f: &Field) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, f: &Field, x: &Gf) -> Gf {
        self.c.iter().rev().fold(f.zero(), |acc, a| f.add(&f.mul(&acc, x), a))
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::from_coeffs(
            self.c.iter().enumerate().skip(1).map(|(i, a)| f.mul_int(a, i as i64)).collect(),
        )
    }

    /// Applies a coefficient map, e.g. an embedding into an extension field.
    pub fn map(&self, g: impl Fn(&Gf) -> Gf) -> Poly {
        Poly::from_coeffs(self.c.iter().map(g).collect())
    }

    /// `p(eps * x)`.
    pub fn scale_variable(&self, eps: &Gf, f: &Field) -> Poly {
        let mut w = f.one();
        let mut c = Vec::with_capacity(self.c.len());
        for a in &self.c {
            c.push(f.mul(a, &w));
            w = f.mul(&w, eps);
        }
        Poly::from_coeffs(c)
    }

    /// `p(x + a)` via repeated synthetic division.
    pub fn taylor_shift(&self, a: &Gf, f: &Field) -> Poly {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                c[j] = f.add(&c[j], &f.mul(&c[j + 1], a));
            }
        }
        Poly::from_coeffs(c)
    }

    /// Reversal `x^n p(1/x)` for `n = deg p`.
    pub fn reversed(&self) -> Poly {
        let mut c = self.c.clone();
        c.reverse();
        Poly::from_coeffs(c)
    }

    pub fn mulmod(&self, o: &Poly, m: &Poly, f: &Field) -> Poly {
        self.mul(o, f).rem(m, f)
    }

    pub fn powmod(&self, mut exp: u128, m: &Poly, f: &Field) -> Poly {
        let mut base = self.rem(m, f);
        let mut acc = Poly::one(f).rem(m, f);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mulmod(&base, m, f);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mulmod(&base, m, f);
            }
        }
        acc
    }

    /// Rabin's test over the given field.
    pub fn is_irreducible(&self, f: &Field) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let m = self.monic(f);
        let x = Poly::x(f);
        let q = f.order() as u128;
        // x^{Q^k} mod m for k = 0..=n
        let mut frob = vec![x.rem(&m, f)];
        for k in 1..=n {
            let next = frob[k - 1].powmod(q, &m, f);
            frob.push(next);
        }
        if frob[n] != x.rem(&m, f) {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|r| {
            let k = n / r as usize;
            frob[k].sub(&x, f).gcd(&m, f).is_constant()
        })
    }

    /// `p`-th root of a polynomial whose exponents are all multiples of `p`.
    fn pth_root(&self, f: &Field) -> Poly {
        let p = f.characteristic() as usize;
        Poly::from_coeffs(self.c.iter().step_by(p).map(|a| f.pth_root(a)).collect())
    }

    /// Monic irreducible factors with multiplicities, sorted.
    pub fn factor(&self, f: &Field) -> Vec<(Poly, u32)> {
        if self.is_constant() {
            return Vec::new();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut out = Vec::new();
        for (part, mult) in squarefree(&self.monic(f), f) {
            for (g, k) in distinct_degree(&part, f) {
                for h in equal_degree(&g, k, f, &mut rng) {
                    out.push((h, mult));
                }
            }
        }
        out.sort();
        out
    }

    /// Distinct roots in the coefficient field, sorted.
    pub fn roots(&self, f: &Field) -> Vec<Gf> {
        if self.is_constant() {
            return Vec::new();
        }
        let m = self.monic(f);
        let x = Poly::x(f);
        let split = x.powmod(f.order() as u128, &m, f).sub(&x, f).gcd(&m, f);
        if split.is_constant() {
            return Vec::new();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut roots: Vec<Gf> = equal_degree(&split, 1, f, &mut rng)
            .into_iter()
            .map(|lin| f.neg(&lin.coeff(0)))
            .collect();
        roots.sort();
        roots
    }
}

/// Squarefree decomposition of a monic polynomial in characteristic `p`.
fn squarefree(g: &Poly, f: &Field) -> Vec<(Poly, u32)> {
    let p = f.characteristic();
    let mut out = Vec::new();
    let dg = g.derivative(f);
    if dg.is_zero() {
        for (h, m) in squarefree(&g.pth_root(f), f) {
            out.push((h, m * p));
        }
        return out;
    }
    let mut c = g.gcd(&dg, f);
    let mut w = g.div_exact(&c, f);
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c, f);
        let fac = w.div_exact(&y, f);
        if !fac.is_constant() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w, f);
        i += 1;
    }
    if !c.is_constant() {
        for (h, m) in squarefree(&c.pth_root(f), f) {
            out.push((h, m * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial by the degrees of its irreducible factors.
fn distinct_degree(g: &Poly, f: &Field) -> Vec<(Poly, usize)> {
    let q = f.order() as u128;
    let x = Poly::x(f);
    let mut rest = g.clone();
    let mut h = x.rem(&rest, f);
    let mut out = Vec::new();
    let mut k = 1;
    while rest.deg() >= 2 * k as i64 {
        h = h.powmod(q, &rest, f);
        let t = h.sub(&x, f).gcd(&rest, f);
        if !t.is_constant() {
            rest = rest.div_exact(&t, f);
            h = h.rem(&rest, f);
            out.push((t, k));
        }
        k += 1;
    }
    if !rest.is_constant() {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct degree-`k` irreducibles.
fn equal_degree(g: &Poly, k: usize, f: &Field, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = g.degree().unwrap_or(0);
    if n <= k {
        return vec![g.monic(f)];
    }
    let q = f.order() as u128;
    loop {
        let a = Poly::from_coeffs((0..n).map(|_| f.random(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if f.characteristic() == 2 {
            // Absolute trace of a from F_{Q^k} to F_2.
            let steps = f.degree() * k;
            let mut acc = Poly::zero();
            let mut term = a.rem(g, f);
            for _ in 0..steps {
                acc = acc.add(&term, f);
                term = term.mulmod(&term, g, f);
            }
            acc
        } else {
            // a^{(Q^k - 1)/2} = (a^{1 + Q + ... + Q^{k-1}})^{(Q-1)/2}
            let mut norm = Poly::one(f);
            let mut conj = a.rem(g, f);
            for _ in 0..k {
                norm = norm.mulmod(&conj, g, f);
                conj = conj.powmod(q, g, f);
            }
            norm.powmod((q - 1) / 2, g, f).sub(&Poly::one(f), f)
        };
        let d = b.gcd(g, f);
        if !d.is_constant() && d.deg() < g.deg() {
            let other = g.div_exact(&d, f);
            let mut parts = equal_degree(&d, k, f, rng);
            parts.extend(equal_degree(&other, k, f, rng));
            return parts;
        }
    }
}

//! Finite fields `F_{p^e}` in a dense polynomial basis.
//!
//! Elements are coefficient vectors over `F_p` in powers of a root of the
//! field modulus (little-endian). The modulus is the least monic irreducible
//! polynomial of degree `e` in index order and the stored primitive element is
//! the least element of full multiplicative order, so every derived artifact
//! is reproducible.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::poly::Poly;
use crate::error::{Error, Result};

/// Largest supported extension degree over the prime field.
pub const MAX_DEGREE: usize = 32;

/// Default bound on the number of elements of any constructed field.
pub const DEFAULT_SIZE_CAP: u64 = 1 << 24;

/// An element of some `F_{p^e}`; the field is passed to every operation.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf {
    c: [u32; MAX_DEGREE],
}

impl Gf {
    pub const ZERO: Gf = Gf { c: [0; MAX_DEGREE] };

    pub fn from_coeffs(coeffs: &[u32]) -> Gf {
        assert!(coeffs.len() <= MAX_DEGREE);
        let mut c = [0; MAX_DEGREE];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Gf { c }
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.c[i]
    }

    pub fn coeffs(&self, e: usize) -> &[u32] {
        &self.c[..e]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
}

// Index order: compares the highest coefficient first, which is the same as
// comparing `Field::index` values.
impl Ord for Gf {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.iter().rev().cmp(other.c.iter().rev())
    }
}

impl PartialOrd for Gf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.c.iter().rposition(|&x| x != 0).map_or(1, |i| i + 1);
        write!(f, "Gf{:?}", &self.c[..top])
    }
}

struct Inner {
    p: u32,
    e: usize,
    order: u64,
    /// Monic modulus, `e + 1` coefficients.
    modulus: Vec<u32>,
    /// `(p - m_j) mod p` for the low coefficients of the modulus.
    neg_modulus: Vec<u64>,
    /// Absolute trace of each basis monomial `u^i`.
    basis_trace: Vec<u32>,
    primitive: Gf,
    /// Distinct prime factors of `order - 1`.
    unit_factors: Vec<u64>,
    lazy_reduce: bool,
}

/// A finite field `F_{p^e}`. Cloning is cheap; the description is shared.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.e, self.0.modulus)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `p^e` if it fits the cap.
pub(crate) fn checked_size(p: u64, e: usize, cap: u64) -> Result<u64> {
    let mut size: u128 = 1;
    for _ in 0..e {
        size *= p as u128;
        if size > cap as u128 {
            return Err(Error::SizeCap { size: (p as u128).saturating_pow(e as u32), cap });
        }
    }
    Ok(size as u64)
}

impl Field {
    /// Builds `F_{p^e}` under the default size cap.
    pub fn new(p: u64, e: usize) -> Result<Field> {
        Field::with_cap(p, e, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(p: u64, e: usize, cap: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidParameter("extension degree must be at least 1".into()));
        }
        if e > MAX_DEGREE || p > u32::MAX as u64 {
            return Err(Error::SizeCap { size: (p as u128).saturating_pow(e as u32), cap });
        }
        let order = checked_size(p, e, cap)?;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p as u32, e)
        };
        Ok(Field::assemble(p as u32, e, modulus, order))
    }

    fn assemble(p: u32, e: usize, modulus: Vec<u32>, order: u64) -> Field {
        let pp = p as u64;
        let neg_modulus = modulus[..e].iter().map(|&m| (pp - m as u64) % pp).collect();
        let lazy_reduce = (e as u128) * ((pp - 1) as u128).pow(2) < (1u128 << 63);
        let inner = Inner {
            p,
            e,
            order,
            modulus,
            neg_modulus,
            basis_trace: Vec::new(),
            primitive: Gf::ZERO,
            unit_factors: prime_factors(order - 1),
            lazy_reduce,
        };
        // The trace table and the primitive search both need arithmetic.
        let staged = Field(Arc::new(inner));
        let basis_trace: Vec<u32> = (0..e)
            .map(|i| {
                let mut basis = [0u32; MAX_DEGREE];
                basis[i] = 1;
                staged.trace_by_frobenius(&Gf { c: basis })
            })
            .collect();
        let primitive = staged.least_primitive();
        let mut inner = Arc::try_unwrap(staged.0).ok().expect("sole owner");
        inner.basis_trace = basis_trace;
        inner.primitive = primitive;
        Field(Arc::new(inner))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.e
    }

    /// Number of elements `p^e`.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn primitive(&self) -> Gf {
        self.0.primitive
    }

    pub fn zero(&self) -> Gf {
        Gf::ZERO
    }

    pub fn one(&self) -> Gf {
        self.from_int(1)
    }

    /// The residue class of an integer.
    pub fn from_int(&self, n: i64) -> Gf {
        let p = self.0.p as i64;
        let mut c = [0; MAX_DEGREE];
        c[0] = n.rem_euclid(p) as u32;
        Gf { c }
    }

    /// The generator `u` of the polynomial basis (a root of the modulus).
    pub fn generator(&self) -> Gf {
        if self.0.e == 1 {
            // Root of the modulus `x` is zero; the basis is just {1}.
            return self.zero();
        }
        let mut c = [0; MAX_DEGREE];
        c[1] = 1;
        Gf { c }
    }

    pub fn index(&self, a: &Gf) -> u64 {
        let p = self.0.p as u64;
        a.c[..self.0.e].iter().rev().fold(0u64, |acc, &x| acc * p + x as u64)
    }

    pub fn from_index(&self, mut idx: u64) -> Gf {
        debug_assert!(idx < self.0.order);
        let p = self.0.p as u64;
        let mut c = [0; MAX_DEGREE];
        for slot in c.iter_mut().take(self.0.e) {
            *slot = (idx % p) as u32;
            idx /= p;
        }
        Gf { c }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Gf> + '_ {
        (0..self.0.order).map(move |i| self.from_index(i))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Gf {
        let mut c = [0; MAX_DEGREE];
        for slot in c.iter_mut().take(self.0.e) {
            *slot = rng.gen_range(0..self.0.p);
        }
        Gf { c }
    }

    pub fn contains(&self, a: &Gf) -> bool {
        a.c[..self.0.e].iter().all(|&x| x < self.0.p) && a.c[self.0.e..].iter().all(|&x| x == 0)
    }

    pub fn add(&self, a: &Gf, b: &Gf) -> Gf {
        let p = self.0.p;
        let mut c = [0; MAX_DEGREE];
        for i in 0..self.0.e {
            let s = a.c[i] as u64 + b.c[i] as u64;
            c[i] = (s % p as u64) as u32;
        }
        Gf { c }
    }

    pub fn neg(&self, a: &Gf) -> Gf {
        let p = self.0.p;
        let mut c = [0; MAX_DEGREE];
        for i in 0..self.0.e {
            c[i] = if a.c[i] == 0 { 0 } else { p - a.c[i] };
        }
        Gf { c }
    }

    pub fn sub(&self, a: &Gf, b: &Gf) -> Gf {
        self.add(a, &self.neg(b))
    }

    /// Multiplication by an integer scalar.
    pub fn mul_int(&self, a: &Gf, n: i64) -> Gf {
        self.mul(a, &self.from_int(n))
    }

    pub fn mul(&self, a: &Gf, b: &Gf) -> Gf {
        let e = self.0.e;
        let p = self.0.p as u64;
        if e == 1 {
            let mut c = [0; MAX_DEGREE];
            c[0] = (a.c[0] as u64 * b.c[0] as u64 % p) as u32;
            return Gf { c };
        }
        let mut acc = [0u64; 2 * MAX_DEGREE - 1];
        if self.0.lazy_reduce {
            for i in 0..e {
                let ai = a.c[i] as u64;
                if ai == 0 {
                    continue;
                }
                for j in 0..e {
                    acc[i + j] += ai * b.c[j] as u64;
                }
            }
            for x in acc.iter_mut().take(2 * e - 1) {
                *x %= p;
            }
        } else {
            for i in 0..e {
                let ai = a.c[i] as u64;
                if ai == 0 {
                    continue;
                }
                for j in 0..e {
                    acc[i + j] = (acc[i + j] + ai * b.c[j] as u64 % p) % p;
                }
            }
        }
        let neg = &self.0.neg_modulus;
        for k in (e..2 * e - 1).rev() {
            let top = acc[k];
            if top == 0 {
                continue;
            }
            acc[k] = 0;
            for j in 0..e {
                acc[k - e + j] = (acc[k - e + j] + top * neg[j]) % p;
            }
        }
        let mut c = [0; MAX_DEGREE];
        for i in 0..e {
            c[i] = acc[i] as u32;
        }
        Gf { c }
    }

    pub fn square(&self, a: &Gf) -> Gf {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Gf, mut n: u128) -> Gf {
        let mut base = *a;
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Gf) -> Option<Gf> {
        if a.is_zero() {
            return None;
        }
        Some(self.pow(a, (self.0.order - 2) as u128))
    }

    pub fn div(&self, a: &Gf, b: &Gf) -> Option<Gf> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// The absolute Frobenius `a^p`.
    pub fn frobenius(&self, a: &Gf) -> Gf {
        self.pow(a, self.0.p as u128)
    }

    /// The unique `p`-th root.
    pub fn pth_root(&self, a: &Gf) -> Gf {
        let mut r = *a;
        for _ in 1..self.0.e {
            r = self.frobenius(&r);
        }
        r
    }

    /// Absolute trace to `F_p`, returned as a residue in `[0, p)`.
    pub fn trace(&self, a: &Gf) -> u32 {
        let p = self.0.p as u64;
        let mut acc = 0u64;
        for i in 0..self.0.e {
            acc = (acc + a.c[i] as u64 * self.0.basis_trace[i] as u64) % p;
        }
        acc as u32
    }

    fn trace_by_frobenius(&self, a: &Gf) -> u32 {
        let mut acc = self.zero();
        let mut conj = *a;
        for _ in 0..self.0.e {
            acc = self.add(&acc, &conj);
            conj = self.frobenius(&conj);
        }
        acc.c[0]
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &Gf) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut n = self.0.order - 1;
        for &r in &self.0.unit_factors {
            while n % r == 0 && self.pow(a, (n / r) as u128) == self.one() {
                n /= r;
            }
        }
        Some(n)
    }

    pub fn is_primitive(&self, a: &Gf) -> bool {
        if a.is_zero() {
            return false;
        }
        let n = self.0.order - 1;
        self.0.unit_factors.iter().all(|&r| self.pow(a, (n / r) as u128) != self.one())
    }

    fn least_primitive(&self) -> Gf {
        if self.0.order == 2 {
            return self.one();
        }
        (1..self.0.order)
            .map(|i| self.from_index(i))
            .find(|a| self.is_primitive(a))
            .expect("every finite field has a primitive element")
    }

    pub fn is_square(&self, a: &Gf) -> bool {
        if a.is_zero() || self.0.p == 2 {
            return true;
        }
        self.pow(a, ((self.0.order - 1) / 2) as u128) == self.one()
    }

    /// A square root, when one exists (Tonelli–Shanks in odd characteristic).
    pub fn sqrt(&self, a: &Gf) -> Option<Gf> {
        if a.is_zero() {
            return Some(*a);
        }
        if self.0.p == 2 {
            return Some(self.pow(a, (self.0.order / 2) as u128));
        }
        if !self.is_square(a) {
            return None;
        }
        let mut s = 0u32;
        let mut t = self.0.order - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let non_residue = self
            .elements()
            .skip(1)
            .find(|z| !self.is_square(z))
            .expect("odd fields have non-squares");
        let mut m = s;
        let mut c = self.pow(&non_residue, t as u128);
        let mut r = self.pow(a, t.div_ceil(2) as u128);
        let mut tt = self.pow(a, t as u128);
        let one = self.one();
        while tt != one {
            let mut i = 0;
            let mut probe = tt;
            while probe != one {
                probe = self.square(&probe);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.square(&b);
            }
            r = self.mul(&r, &b);
            c = self.square(&b);
            tt = self.mul(&tt, &c);
            m = i;
        }
        Some(r)
    }

    /// All solutions of `y^2 + b*y = c` in this field.
    pub fn solve_quadratic(&self, b: &Gf, c: &Gf) -> Vec<Gf> {
        let mut roots = if self.0.p == 2 {
            if b.is_zero() {
                vec![self.sqrt(c).expect("squaring is bijective in characteristic 2")]
            } else {
                // y = b*w with w^2 + w = c / b^2.
                let b_inv = self.inv(b).expect("nonzero");
                let rhs = self.mul(c, &self.square(&b_inv));
                match self.solve_artin_schreier(&rhs) {
                    Some(w) => {
                        let y = self.mul(b, &w);
                        vec![y, self.add(&y, b)]
                    }
                    None => Vec::new(),
                }
            }
        } else {
            // (2y + b)^2 = b^2 + 4c
            let disc = self.add(&self.square(b), &self.mul_int(c, 4));
            match self.sqrt(&disc) {
                Some(s) => {
                    let half = self.inv(&self.from_int(2)).expect("odd characteristic");
                    let y1 = self.mul(&self.sub(&s, b), &half);
                    let y2 = self.mul(&self.sub(&self.neg(&s), b), &half);
                    vec![y1, y2]
                }
                None => Vec::new(),
            }
        };
        roots.sort();
        roots.dedup();
        roots
    }

    /// Solves `w^2 + w = c` in characteristic 2 by linear algebra over `F_2`.
    fn solve_artin_schreier(&self, c: &Gf) -> Option<Gf> {
        debug_assert_eq!(self.0.p, 2);
        let e = self.0.e;
        if self.trace(c) != 0 {
            return None;
        }
        // Columns: image of each basis vector under w -> w^2 + w.
        let columns: Vec<Gf> = (0..e)
            .map(|i| {
                let mut basis = [0u32; MAX_DEGREE];
                basis[i] = 1;
                let w = Gf { c: basis };
                self.add(&self.square(&w), &w)
            })
            .collect();
        // Augmented rows over F_2: row r = (col_0[r], ..., col_{e-1}[r] | c[r]).
        let mut rows: Vec<Vec<u8>> = (0..e)
            .map(|r| {
                let mut row: Vec<u8> = columns.iter().map(|col| col.c[r] as u8).collect();
                row.push(c.c[r] as u8);
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..e {
            let Some(pr) = (rank..e).find(|&r| rows[r][col] == 1) else { continue };
            rows.swap(rank, pr);
            for r in 0..e {
                if r != rank && rows[r][col] == 1 {
                    for k in 0..=e {
                        rows[r][k] ^= rows[rank][k];
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        if rows[rank..].iter().any(|row| row[e] == 1) {
            return None;
        }
        let mut w = [0u32; MAX_DEGREE];
        for (r, &col) in pivots.iter().enumerate() {
            w[col] = rows[r][e] as u32;
        }
        Some(Gf { c: w })
    }
}

/// The least monic irreducible of degree `e` over `F_p` in index order.
fn least_irreducible(p: u32, e: usize) -> Vec<u32> {
    let prime = Field::prime_unchecked(p);
    let count = (p as u64).pow(e as u32);
    for idx in 0..count {
        let mut coeffs: Vec<Gf> = Vec::with_capacity(e + 1);
        let mut rest = idx;
        for _ in 0..e {
            coeffs.push(prime.from_int((rest % p as u64) as i64));
            rest /= p as u64;
        }
        coeffs.push(prime.one());
        if coeffs[0].is_zero() {
            continue;
        }
        let f = Poly::from_coeffs(coeffs);
        if f.is_irreducible(&prime) {
            return f.coeffs().iter().map(|c| c.coeff(0)).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// `F_p` without cap checks; `p` must be prime.
    pub(crate) fn prime_unchecked(p: u32) -> Field {
        Field::assemble(p, 1, vec![0, 1], p as u64)
    }
}

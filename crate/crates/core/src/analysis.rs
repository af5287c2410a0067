//! Figures of merit for `p`-ary sequences: linear complexity, correlation,
//! pattern counts, nonlinear complexity and character sums.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::elliptic::{Curve, ECFunction};
use crate::error::{Error, Result};
use crate::ratfield::RatFunction;
use crate::galois::Field;

/// Default limit on the number of unknowns in the nonlinear complexity solver.
pub const DEFAULT_MONOMIAL_CAP: usize = 5000;

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Berlekamp–Massey over `F_p`, returning `LC_n` for every prefix length.
fn berlekamp_massey(s: &[u32], p: u32) -> Vec<usize> {
    let p = p as u64;
    let mut c = vec![1u64];
    let mut b = vec![1u64];
    let (mut l, mut m, mut bd) = (0usize, 1usize, 1u64);
    let mut profile = Vec::with_capacity(s.len());
    for n in 0..s.len() {
        let mut disc = s[n] as u64 % p;
        for i in 1..=l.min(c.len() - 1) {
            disc = (disc + c[i] * (s[n - i] as u64 % p)) % p;
        }
        if disc == 0 {
            m += 1;
        } else {
            let coef = disc * inv_mod(bd, p) % p;
            let t = c.clone();
            if c.len() < b.len() + m {
                c.resize(b.len() + m, 0);
            }
            for (i, &bi) in b.iter().enumerate() {
                c[i + m] = (c[i + m] + p - coef * bi % p) % p;
            }
            if 2 * l <= n {
                l = n + 1 - l;
                b = t;
                bd = disc;
                m = 1;
            } else {
                m += 1;
            }
        }
        profile.push(l);
    }
    profile
}

/// Linear complexity of the finite sequence `s` as a window.
pub fn linear_complexity_finite(s: &[u32], p: u32) -> usize {
    berlekamp_massey(s, p).last().copied().unwrap_or(0)
}

/// Linear complexity of the periodic sequence with period `s`.
///
/// Berlekamp–Massey on two periods, which determines the minimal
/// polynomial since the complexity never exceeds one period.
pub fn linear_complexity(s: &[u32], p: u32) -> usize {
    let doubled: Vec<u32> = s.iter().chain(s.iter()).copied().collect();
    linear_complexity_finite(&doubled, p)
}

/// `LC_n(s)` for prefix lengths `n = 1, ..., len(s)`.
pub fn lc_profile(s: &[u32], p: u32) -> Vec<usize> {
    berlekamp_massey(s, p)
}

/// Whether `|LC_n(s) - n| <= d` for every prefix length `n >= 1`.
pub fn d_perfect(s: &[u32], p: u32, d: usize) -> bool {
    lc_profile(s, p).iter().enumerate().all(|(i, &lc)| (i + 1).abs_diff(lc) <= d)
}

/// Exact distribution of additive character arguments over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub p: u32,
    /// `counts[a]` is the number of terms `w_p^a`.
    pub counts: Vec<u64>,
}

impl CountTable {
    pub fn new(p: u32) -> CountTable {
        CountTable { p, counts: vec![0; p as usize] }
    }

    pub fn record(&mut self, a: u32) {
        self.counts[(a % self.p) as usize] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `sum_a c_a w_p^a`.
    pub fn value(&self) -> Complex64 {
        if self.p == 2 {
            return Complex64::new(self.counts[0] as f64 - self.counts[1] as f64, 0.0);
        }
        self.counts
            .iter()
            .enumerate()
            .map(|(a, &c)| Complex64::from_polar(c as f64, TAU * a as f64 / self.p as f64))
            .sum()
    }

    pub fn magnitude(&self) -> f64 {
        self.value().norm()
    }
}

/// Periodic correlation at one shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrelationValue {
    pub shift: usize,
    pub table: CountTable,
}

impl CorrelationValue {
    pub fn value(&self) -> Complex64 {
        self.table.value()
    }

    pub fn magnitude(&self) -> f64 {
        self.table.magnitude()
    }
}

/// `C(tau) = sum_i w_p^{s1_{i+tau} - s2_i}` over one period.
pub fn periodic_correlation(s1: &[u32], s2: &[u32], tau: usize, p: u32) -> Result<CorrelationValue> {
    if s1.len() != s2.len() || s1.is_empty() {
        return Err(Error::InvalidParameter(format!("periods differ: {} and {}", s1.len(), s2.len())));
    }
    let n = s1.len();
    let mut table = CountTable::new(p);
    for i in 0..n {
        table.record(s1[(i + tau) % n] + p - s2[i] % p);
    }
    Ok(CorrelationValue { shift: tau % n, table })
}

/// Correlation at every shift `0 <= tau < T`.
pub fn correlation_spectrum(s1: &[u32], s2: &[u32], p: u32) -> Result<Vec<CorrelationValue>> {
    (0..s1.len()).map(|tau| periodic_correlation(s1, s2, tau, p)).collect()
}

/// Values `z` at strictly increasing positions `t` within one period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternQuery {
    values: Vec<u32>,
    positions: Vec<usize>,
}

impl PatternQuery {
    pub fn new(values: Vec<u32>, positions: Vec<usize>, n: usize, p: u32) -> Result<PatternQuery> {
        if values.len() != positions.len() || values.is_empty() {
            return Err(Error::InvalidParameter("pattern needs matching nonempty values and positions".into()));
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) || positions.last().is_some_and(|&t| t >= n) {
            return Err(Error::InvalidParameter(format!("positions must increase within [0, {n})")));
        }
        if values.iter().any(|&v| v >= p) {
            return Err(Error::InvalidParameter(format!("pattern values must lie in [0, {p})")));
        }
        Ok(PatternQuery { values, positions })
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn arity(&self) -> usize {
        self.values.len()
    }
}

/// Number of `i` in `[0, n)` with `s_{i + t_j mod n} = z_j` for all `j`.
pub fn pattern_count(s: &[u32], query: &PatternQuery) -> usize {
    let n = s.len();
    (0..n)
        .filter(|&i| query.positions.iter().zip(&query.values).all(|(&t, &z)| s[(i + t) % n] == z))
        .count()
}

/// Exponent vectors of total degree `<= m` in `vars` variables, each
/// exponent below `p`.
fn monomials(vars: usize, m: usize, p: u32) -> Vec<Vec<(usize, u32)>> {
    fn walk(var: usize, vars: usize, left: usize, p: u32, cur: &mut Vec<(usize, u32)>, out: &mut Vec<Vec<(usize, u32)>>) {
        if var == vars {
            out.push(cur.clone());
            return;
        }
        walk(var + 1, vars, left, p, cur, out);
        for e in 1..=(left.min(p as usize - 1)) {
            cur.push((var, e as u32));
            walk(var + 1, vars, left - e, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    walk(0, vars, m, p, &mut Vec::new(), &mut out);
    out
}

fn monomial_count(vars: usize, m: usize, p: u32) -> u128 {
    // Coefficients of (1 + x + ... + x^{p-1})^vars up to degree m.
    let cap = (p as usize - 1).min(m);
    let mut ways = vec![0u128; m + 1];
    ways[0] = 1;
    for _ in 0..vars {
        let mut next = vec![0u128; m + 1];
        for (d, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for e in 0..=cap.min(m - d) {
                next[d + e] = next[d + e].saturating_add(w);
            }
        }
        ways = next;
    }
    ways.iter().fold(0u128, |a, &b| a.saturating_add(b))
}

/// Whether the system with augmented rows `[A | b]` over `F_p` is consistent.
fn consistent(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> bool {
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot).skip(col) {
                    *x = (*x + p - c * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rows[rank..].iter().all(|row| row[ncols] == 0)
}

/// Whether some `Phi` of degree `<= m` in `l` variables generates `s`.
pub fn nl_feasible(s: &[u32], p: u32, m: usize, l: usize, cap: usize) -> Result<bool> {
    let count = monomial_count(l, m, p);
    if count > cap as u128 {
        return Err(Error::MonomialCap { count: count.min(usize::MAX as u128) as usize, cap });
    }
    if l >= s.len() {
        return Ok(true);
    }
    let pp = p as u64;
    let monos = monomials(l, m, p);
    let rows: Vec<Vec<u64>> = (0..s.len() - l)
        .map(|i| {
            let mut row: Vec<u64> = monos
                .iter()
                .map(|mono| {
                    mono.iter().fold(1u64, |acc, &(v, e)| {
                        let x = s[i + v] as u64 % pp;
                        (0..e).fold(acc, |a, _| a * x % pp)
                    })
                })
                .collect();
            row.push(s[i + l] as u64 % pp);
            row
        })
        .collect();
    Ok(consistent(rows, monos.len(), pp))
}

/// `m`-th order nonlinear complexity: the least `L >= 1` with
/// `s_{i+L} = Phi(s_i, ..., s_{i+L-1})` for `0 <= i <= N-1-L` and
/// `deg Phi <= m`; zero for the all-zero sequence.
pub fn nonlinear_complexity(s: &[u32], p: u32, m: usize, cap: usize) -> Result<usize> {
    if m == 0 {
        return Err(Error::InvalidParameter("degree m must be at least 1".into()));
    }
    if s.iter().all(|&x| x % p == 0) {
        return Ok(0);
    }
    for l in 1..s.len().max(1) {
        if nl_feasible(s, p, m, l, cap)? {
            return Ok(l);
        }
    }
    Ok(s.len().max(1))
}

/// `sum_P w_p^{Tr(f(P))}` over the rational places that are not poles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterSum {
    /// Number of places summed over.
    pub places: usize,
    pub table: CountTable,
}

impl CharacterSum {
    pub fn value(&self) -> Complex64 {
        self.table.value()
    }

    pub fn magnitude(&self) -> f64 {
        self.table.magnitude()
    }
}

/// Character sum of `f` over the projective line minus its poles.
pub fn exp_sum_rational(f: &RatFunction, field: &Field) -> Result<CharacterSum> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut table = CountTable::new(field.characteristic());
    let values = field.elements().filter_map(|a| f.eval(&a, field)).chain(f.eval_at_infinity(field));
    for v in values {
        table.record(field.trace(&v));
    }
    Ok(CharacterSum { places: table.total() as usize, table })
}

/// Character sum of `z` over the rational points of `curve` minus its poles.
pub fn exp_sum_elliptic(z: &ECFunction, curve: &Curve) -> Result<CharacterSum> {
    if z.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let field = curve.field();
    let mut table = CountTable::new(field.characteristic());
    for pt in curve.points() {
        if let Some(v) = curve.eval(z, &pt)? {
            table.record(field.trace(&v));
        }
    }
    Ok(CharacterSum { places: table.total() as usize, table })
}

//! Truncated Laurent series in a local uniformizer, and Artin–Schreier
//! reduction of principal parts.

use crate::galois::{Field, Gf, Poly};

/// `sum_{k >= val} a_k t^k`, known exactly for exponents below `prec`.
///
/// `coeffs[0]` is nonzero unless the series is zero to the known precision,
/// in which case `coeffs` is empty and `val == prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    val: i64,
    coeffs: Vec<Gf>,
    prec: i64,
}

impl Laurent {
    pub fn zero(prec: i64) -> Laurent {
        Laurent { val: prec, coeffs: Vec::new(), prec }
    }

    fn normalized(val: i64, mut coeffs: Vec<Gf>, prec: i64) -> Laurent {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Laurent::zero(prec),
            Some(k) => {
                coeffs.drain(..k);
                Laurent { val: val + k as i64, coeffs, prec }
            }
        }
    }

    /// Coefficients `a_0, a_1, ...` starting at `t^shift`, truncated at `prec`.
    pub fn from_coeffs(shift: i64, coeffs: &[Gf], prec: i64) -> Laurent {
        let len = (prec - shift).max(0) as usize;
        let padded = (0..len).map(|i| coeffs.get(i).copied().unwrap_or(Gf::ZERO)).collect();
        Laurent::normalized(shift, padded, prec.max(shift))
    }

    /// An exact polynomial in `t`, multiplied by `t^shift`, kept to `rel`
    /// coefficients past its leading term.
    pub fn from_poly(poly: &Poly, shift: i64, rel: usize) -> Laurent {
        let lead = poly.coeffs().iter().position(|c| !c.is_zero());
        match lead {
            None => Laurent::zero(shift + rel as i64),
            Some(k) => {
                let val = shift + k as i64;
                let coeffs: Vec<Gf> = (0..rel).map(|i| poly.coeff(k + i)).collect();
                Laurent { val, coeffs, prec: val + rel as i64 }
            }
        }
    }

    pub fn monomial(c: Gf, k: i64, prec: i64) -> Laurent {
        if c.is_zero() || k >= prec {
            return Laurent::zero(prec);
        }
        let mut coeffs = vec![Gf::ZERO; (prec - k) as usize];
        coeffs[0] = c;
        Laurent { val: k, coeffs, prec }
    }

    /// `None` when the series vanishes to the known precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Gf {
        debug_assert!(k < self.prec, "coefficient beyond known precision");
        if k < self.val || k >= self.prec {
            return Gf::ZERO;
        }
        self.coeffs[(k - self.val) as usize]
    }

    pub fn leading(&self) -> Option<Gf> {
        self.coeffs.first().copied()
    }

    pub fn truncate(&self, prec: i64) -> Laurent {
        let prec = prec.min(self.prec);
        if self.is_zero() || prec <= self.val {
            return Laurent::zero(prec);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate((prec - self.val) as usize);
        Laurent { val: self.val, coeffs, prec }
    }

    pub fn add(&self, o: &Laurent, f: &Field) -> Laurent {
        let prec = self.prec.min(o.prec);
        let lo = self.val.min(o.val).min(prec);
        let coeffs = (lo..prec).map(|k| f.add(&self.coeff(k), &o.coeff(k))).collect();
        Laurent::normalized(lo, coeffs, prec)
    }

    pub fn neg(&self, f: &Field) -> Laurent {
        Laurent {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Laurent, f: &Field) -> Laurent {
        self.add(&o.neg(f), f)
    }

    pub fn scale(&self, c: &Gf, f: &Field) -> Laurent {
        if c.is_zero() {
            return Laurent::zero(self.prec);
        }
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(|a| f.mul(a, c)).collect(), prec: self.prec }
    }

    pub fn mul(&self, o: &Laurent, f: &Field) -> Laurent {
        if self.is_zero() || o.is_zero() {
            let prec = match (self.is_zero(), o.is_zero()) {
                (true, true) => self.prec + o.prec,
                (true, false) => self.prec + o.val,
                _ => o.prec + self.val,
            };
            return Laurent::zero(prec);
        }
        let n = self.coeffs.len().min(o.coeffs.len());
        let mut coeffs = vec![Gf::ZERO; n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        let val = self.val + o.val;
        Laurent { val, coeffs, prec: val + n as i64 }
    }

    /// Multiplicative inverse; `None` when the series is zero to precision.
    pub fn inv(&self, f: &Field) -> Option<Laurent> {
        let lead = self.leading()?;
        let n = self.coeffs.len();
        let lead_inv = f.inv(&lead)?;
        let mut out = vec![Gf::ZERO; n];
        out[0] = lead_inv;
        for k in 1..n {
            let mut acc = f.zero();
            for j in 1..=k {
                acc = f.add(&acc, &f.mul(&self.coeffs[j], &out[k - j]));
            }
            out[k] = f.neg(&f.mul(&acc, &lead_inv));
        }
        let val = -self.val;
        Some(Laurent { val, coeffs: out, prec: val + n as i64 })
    }

    pub fn div(&self, o: &Laurent, f: &Field) -> Option<Laurent> {
        Some(self.mul(&o.inv(f)?, f))
    }

    pub fn pow(&self, k: u32, f: &Field) -> Laurent {
        let one = Laurent::monomial(f.one(), 0, self.coeffs.len().max(1) as i64);
        (0..k).fold(one, |acc, _| acc.mul(self, f))
    }

    /// Evaluates a polynomial at this series by Horner's rule.
    pub fn compose_poly(&self, poly: &Poly, f: &Field) -> Laurent {
        let rel = self.coeffs.len().max(1);
        let mut acc: Option<Laurent> = None;
        for c in poly.coeffs().iter().rev() {
            acc = Some(match acc {
                None => Laurent::from_coeffs(0, &[*c], rel as i64),
                Some(a) => {
                    let prod = a.mul(self, f);
                    let prec = prod.prec;
                    prod.add(&Laurent::monomial(*c, 0, prec), f)
                }
            });
        }
        acc.unwrap_or_else(|| Laurent::zero(rel as i64))
    }
}

/// Local expansion of a function at a place, over the residue field.
#[derive(Clone, Debug)]
pub struct LocalExpansion {
    pub residue_field: Field,
    pub series: Laurent,
}

/// Outcome of reducing a principal part modulo `{w^p - w}`.
#[derive(Clone, Debug)]
pub struct ArtinSchreierReduction {
    /// Pole order left after reduction (zero when the part is removable).
    pub reduced_order: u64,
    /// Local correction `w`; the input minus `w^p - w` has pole order
    /// `reduced_order`.
    pub correction: Laurent,
    pub reduced: Laurent,
}

/// Iteratively strips leading pole terms of order divisible by `p`.
///
/// A leading term `c t^{-m}` with `p | m` equals, up to lower-order poles,
/// `w^p - w` for `w = c^{1/p} t^{-m/p}`, so the reduction stops only at a
/// pole order coprime to `p` or at a regular remainder.
pub fn artin_schreier_reduce(series: &Laurent, f: &Field) -> ArtinSchreierReduction {
    let p = f.characteristic() as i64;
    let prec = series.precision().max(1);
    let mut current = series.truncate(prec);
    let mut correction = Laurent::zero(prec);
    loop {
        match current.valuation() {
            Some(v) if v < 0 && (-v) % p == 0 => {
                let c = current.leading().expect("nonzero leading term");
                let root = f.pth_root(&c);
                let w = Laurent::monomial(root, v / p, prec);
                // w^p - w = c t^v - root t^{v/p}
                let step = Laurent::monomial(c, v, prec).sub(&w, f);
                current = current.sub(&step, f);
                correction = correction.add(&w, f);
            }
            Some(v) if v < 0 => {
                return ArtinSchreierReduction { reduced_order: (-v) as u64, correction, reduced: current };
            }
            _ => return ArtinSchreierReduction { reduced_order: 0, correction, reduced: current },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let f = Field::new(5, 2).unwrap();
        let a = Laurent::from_coeffs(-2, &[f.from_index(3), f.from_index(7), f.from_index(11)], 1);
        let inv = a.inv(&f).unwrap();
        assert_eq!(inv.valuation(), Some(2));
        let prod = a.mul(&inv, &f);
        assert_eq!(prod.valuation(), Some(0));
        assert_eq!(prod.leading(), Some(f.one()));
        assert!(prod.coeff(1).is_zero() && prod.coeff(2).is_zero());
    }

    #[test]
    fn binary_reduction_removes_square_pole() {
        // 1/t^2 + 1/t = w^2 - w with w = 1/t in characteristic 2.
        let f = Field::new(2, 1).unwrap();
        let s = Laurent::from_coeffs(-2, &[f.one(), f.one()], 1);
        let red = artin_schreier_reduce(&s, &f);
        assert_eq!(red.reduced_order, 0);
        let w = &red.correction;
        let wp = w.mul(w, &f);
        let rest = s.sub(&wp.sub(w, &f), &f);
        assert!(rest.valuation().is_none_or(|v| v >= 0));
    }

    #[test]
    fn coprime_order_is_kept() {
        let f = Field::new(2, 1).unwrap();
        let s = Laurent::from_coeffs(-3, &[f.one()], 1);
        assert_eq!(artin_schreier_reduce(&s, &f).reduced_order, 3);
        let f3 = Field::new(3, 1).unwrap();
        // t^-6 + 2t^-2 reduces to 3t^-2, which vanishes.
        let s = Laurent::from_coeffs(-6, &[f3.one(), f3.zero(), f3.zero(), f3.zero(), f3.from_int(2)], 1);
        let red = artin_schreier_reduce(&s, &f3);
        assert_eq!(red.reduced_order, 0);
    }
}

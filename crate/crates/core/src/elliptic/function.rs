use crate::error::{Error, Result};
use crate::galois::{Field, Gf, Poly};

use super::model::WeierstrassModel;

/// A function `(u + v y) / w` on a Weierstrass curve, with `u, v, w` in
/// `F_q[x]`, `w` monic and no common factor of all three.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ECFunction {
    u: Poly,
    v: Poly,
    w: Poly,
}

impl ECFunction {
    pub fn new(u: Poly, v: Poly, w: Poly, f: &Field) -> Result<ECFunction> {
        if w.is_zero() {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        if u.is_zero() && v.is_zero() {
            return Ok(ECFunction::zero(f));
        }
        let g = u.gcd(&v, f).gcd(&w, f);
        let (u, v, w) = (u.div_exact(&g, f), v.div_exact(&g, f), w.div_exact(&g, f));
        let lc = f.inv(&w.leading().expect("nonzero")).expect("nonzero");
        Ok(ECFunction { u: u.scale(&lc, f), v: v.scale(&lc, f), w: w.scale(&lc, f) })
    }

    pub fn zero(f: &Field) -> ECFunction {
        ECFunction { u: Poly::zero(), v: Poly::zero(), w: Poly::one(f) }
    }

    pub fn constant(c: Gf, f: &Field) -> ECFunction {
        ECFunction { u: Poly::constant(c), v: Poly::zero(), w: Poly::one(f) }
    }

    pub fn one(f: &Field) -> ECFunction {
        ECFunction::constant(f.one(), f)
    }

    pub fn x(f: &Field) -> ECFunction {
        ECFunction { u: Poly::x(f), v: Poly::zero(), w: Poly::one(f) }
    }

    pub fn y(f: &Field) -> ECFunction {
        ECFunction { u: Poly::zero(), v: Poly::one(f), w: Poly::one(f) }
    }

    /// `x^i y^j`.
    pub fn monomial(i: usize, j: usize, model: &WeierstrassModel) -> ECFunction {
        let f = model.field();
        let xi = ECFunction { u: Poly::monomial(f.one(), i), v: Poly::zero(), w: Poly::one(f) };
        (0..j).fold(xi, |acc, _| acc.mul(&ECFunction::y(f), model))
    }

    pub fn parts(&self) -> (&Poly, &Poly, &Poly) {
        (&self.u, &self.v, &self.w)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.v.is_zero() && self.u.is_constant() && self.w.is_constant()
    }

    pub fn add(&self, o: &ECFunction, f: &Field) -> ECFunction {
        let u = self.u.mul(&o.w, f).add(&o.u.mul(&self.w, f), f);
        let v = self.v.mul(&o.w, f).add(&o.v.mul(&self.w, f), f);
        ECFunction::new(u, v, self.w.mul(&o.w, f), f).expect("nonzero denominator")
    }

    pub fn neg(&self, f: &Field) -> ECFunction {
        ECFunction { u: self.u.neg(f), v: self.v.neg(f), w: self.w.clone() }
    }

    pub fn sub(&self, o: &ECFunction, f: &Field) -> ECFunction {
        self.add(&o.neg(f), f)
    }

    pub fn scale(&self, c: &Gf, f: &Field) -> ECFunction {
        ECFunction::new(self.u.scale(c, f), self.v.scale(c, f), self.w.clone(), f).expect("nonzero denominator")
    }

    /// Multiplies the `F_q[x]`-parts, reducing `y^2 = f(x) - h(x) y`.
    pub fn mul(&self, o: &ECFunction, model: &WeierstrassModel) -> ECFunction {
        let f = model.field();
        let vv = self.v.mul(&o.v, f);
        let u = self.u.mul(&o.u, f).add(&vv.mul(&model.f_poly(), f), f);
        let v = self.u.mul(&o.v, f).add(&o.u.mul(&self.v, f), f).sub(&vv.mul(&model.h_poly(), f), f);
        ECFunction::new(u, v, self.w.mul(&o.w, f), f).expect("nonzero denominator")
    }

    /// Image under the hyperelliptic involution `y -> -y - h(x)`.
    pub fn conjugate(&self, model: &WeierstrassModel) -> ECFunction {
        let f = model.field();
        let u = self.u.sub(&self.v.mul(&model.h_poly(), f), f);
        ECFunction { u, v: self.v.neg(f), w: self.w.clone() }
    }

    /// `u^2 - u v h - v^2 f`, the norm of `u + v y` down to `F_q(x)`.
    pub fn numerator_norm(&self, model: &WeierstrassModel) -> Poly {
        let f = model.field();
        let uu = self.u.mul(&self.u, f);
        let uvh = self.u.mul(&self.v, f).mul(&model.h_poly(), f);
        let vvf = self.v.mul(&self.v, f).mul(&model.f_poly(), f);
        uu.sub(&uvh, f).sub(&vvf, f)
    }

    pub fn inv(&self, model: &WeierstrassModel) -> Result<ECFunction> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let f = model.field();
        let conj = self.conjugate(model);
        let norm = self.numerator_norm(model);
        ECFunction::new(conj.u.mul(&self.w, f), conj.v.mul(&self.w, f), norm, f)
    }

    pub fn div(&self, o: &ECFunction, model: &WeierstrassModel) -> Result<ECFunction> {
        Ok(self.mul(&o.inv(model)?, model))
    }

    /// Direct evaluation where the denominator does not vanish.
    pub fn eval_direct(&self, x: &Gf, y: &Gf, f: &Field) -> Option<Gf> {
        let num = f.add(&self.u.eval(f, x), &f.mul(&self.v.eval(f, x), y));
        f.div(&num, &self.w.eval(f, x))
    }

    /// Largest of `deg u`, `deg v + 2`, `deg w`, bounding local orders.
    pub(crate) fn degree_bound(&self) -> i64 {
        self.u.deg().max(self.v.deg() + 2).max(self.w.deg()).max(0)
    }

    pub fn map_coeffs(&self, g: impl Fn(&Poly) -> Poly) -> (Poly, Poly, Poly) {
        (g(&self.u), g(&self.v), g(&self.w))
    }

    /// Coefficient index lists for `u`, `v` and `w`.
    pub fn label(&self, f: &Field) -> String {
        let show = |p: &Poly| {
            let idx: Vec<String> = p.to_indices(f).iter().map(u64::to_string).collect();
            format!("[{}]", idx.join(","))
        };
        format!("({}+{}y)/{}", show(&self.u), show(&self.v), show(&self.w))
    }
}

//! The rational function field `F_q(x)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::Rng;

use crate::divisor::{Divisor, Place};
use crate::error::{Error, Result};
use crate::galois::{checked_size, ExtEmbedding, Field, Gf, Poly, DEFAULT_SIZE_CAP};
pub use crate::series::LocalExpansion;
use crate::series::{artin_schreier_reduce, ArtinSchreierReduction, Laurent};

/// A place of `F_q(x)`: the zero of a monic irreducible polynomial, or the
/// place at infinity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RatPlace {
    Finite(Poly),
    Infinity,
}

impl RatPlace {
    /// Validates that `poly` is monic and irreducible.
    pub fn finite(poly: Poly, f: &Field) -> Result<RatPlace> {
        if poly.deg() < 1 || !poly.is_monic(f) || !poly.is_irreducible(f) {
            return Err(Error::InvalidParameter("place polynomial must be monic irreducible".into()));
        }
        Ok(RatPlace::Finite(poly))
    }

    pub fn poly(&self) -> Option<&Poly> {
        match self {
            RatPlace::Finite(p) => Some(p),
            RatPlace::Infinity => None,
        }
    }

    /// Coefficient indices from the constant term up, or `inf`.
    pub fn label(&self, f: &Field) -> String {
        match self {
            RatPlace::Finite(p) => index_list(p, f),
            RatPlace::Infinity => "inf".to_string(),
        }
    }
}

impl Place for RatPlace {
    fn degree(&self) -> usize {
        match self {
            RatPlace::Finite(p) => p.deg() as usize,
            RatPlace::Infinity => 1,
        }
    }
}

fn index_list(p: &Poly, f: &Field) -> String {
    let idx: Vec<String> = p.to_indices(f).iter().map(u64::to_string).collect();
    format!("[{}]", idx.join(","))
}

/// A rational function `num / den` with monic denominator and coprime parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFunction {
    num: Poly,
    den: Poly,
}

impl RatFunction {
    pub fn new(num: Poly, den: Poly, f: &Field) -> Result<RatFunction> {
        if den.is_zero() {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFunction::zero(f));
        }
        let g = num.gcd(&den, f);
        let (num, den) = (num.div_exact(&g, f), den.div_exact(&g, f));
        let lc = f.inv(&den.leading().expect("nonzero")).expect("nonzero");
        Ok(RatFunction { num: num.scale(&lc, f), den: den.scale(&lc, f) })
    }

    pub fn zero(f: &Field) -> RatFunction {
        RatFunction { num: Poly::zero(), den: Poly::one(f) }
    }

    pub fn one(f: &Field) -> RatFunction {
        RatFunction::constant(f.one(), f)
    }

    pub fn constant(c: Gf, f: &Field) -> RatFunction {
        RatFunction { num: Poly::constant(c), den: Poly::one(f) }
    }

    pub fn from_poly(p: Poly, f: &Field) -> RatFunction {
        RatFunction { num: p, den: Poly::one(f) }
    }

    pub fn x(f: &Field) -> RatFunction {
        RatFunction::from_poly(Poly::x(f), f)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn add(&self, o: &RatFunction, f: &Field) -> RatFunction {
        let num = self.num.mul(&o.den, f).add(&o.num.mul(&self.den, f), f);
        RatFunction::new(num, self.den.mul(&o.den, f), f).expect("nonzero denominator")
    }

    pub fn neg(&self, f: &Field) -> RatFunction {
        RatFunction { num: self.num.neg(f), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunction, f: &Field) -> RatFunction {
        self.add(&o.neg(f), f)
    }

    pub fn mul(&self, o: &RatFunction, f: &Field) -> RatFunction {
        RatFunction::new(self.num.mul(&o.num, f), self.den.mul(&o.den, f), f).expect("nonzero denominator")
    }

    pub fn scale(&self, c: &Gf, f: &Field) -> RatFunction {
        RatFunction::new(self.num.scale(c, f), self.den.clone(), f).expect("nonzero denominator")
    }

    pub fn inv(&self, f: &Field) -> Result<RatFunction> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        RatFunction::new(self.den.clone(), self.num.clone(), f)
    }

    pub fn div(&self, o: &RatFunction, f: &Field) -> Result<RatFunction> {
        Ok(self.mul(&o.inv(f)?, f))
    }

    pub fn pow(&self, k: u32, f: &Field) -> RatFunction {
        RatFunction { num: self.num.pow(k, f), den: self.den.pow(k, f) }
    }

    /// Value at `a`, or `None` at a pole.
    pub fn eval(&self, a: &Gf, f: &Field) -> Option<Gf> {
        f.div(&self.num.eval(f, a), &self.den.eval(f, a))
    }

    /// Value at the place at infinity, or `None` if it is a pole.
    pub fn eval_at_infinity(&self, f: &Field) -> Option<Gf> {
        let (dn, dd) = (self.num.deg(), self.den.deg());
        if self.num.is_zero() || dn < dd {
            Some(f.zero())
        } else if dn == dd {
            f.div(&self.num.leading()?, &self.den.leading()?)
        } else {
            None
        }
    }

    /// `z(eps * x)`.
    pub fn scale_variable(&self, eps: &Gf, f: &Field) -> RatFunction {
        RatFunction::new(self.num.scale_variable(eps, f), self.den.scale_variable(eps, f), f)
            .expect("nonzero denominator")
    }

    /// Compact text form: coefficient index lists, constant term first.
    pub fn label(&self, f: &Field) -> String {
        format!("{}/{}", index_list(&self.num, f), index_list(&self.den, f))
    }
}

impl fmt::Display for RatPlace {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatPlace::Finite(p) => write!(fm, "deg-{} place", p.deg()),
            RatPlace::Infinity => write!(fm, "infinity"),
        }
    }
}

/// Whether a function is non-degenerate, with a witnessing pole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nondegeneracy {
    pub nondegenerate: bool,
    pub witness: Option<RatPlace>,
    pub reduced_order: u64,
}

/// `F_q(x)` together with the automorphism `x -> eps x`, `eps` the primitive
/// element of `F_q`.
#[derive(Debug)]
pub struct RationalFunctionField {
    field: Field,
    epsilon: Gf,
    cap: u64,
    extensions: Mutex<BTreeMap<usize, Arc<ExtEmbedding>>>,
}

impl RationalFunctionField {
    pub fn new(field: Field) -> RationalFunctionField {
        RationalFunctionField::with_cap(field, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(field: Field, cap: u64) -> RationalFunctionField {
        let epsilon = field.primitive();
        RationalFunctionField { field, epsilon, cap, extensions: Mutex::new(BTreeMap::new()) }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn epsilon(&self) -> Gf {
        self.epsilon
    }

    fn q(&self) -> u64 {
        self.field.order()
    }

    fn extension(&self, d: usize) -> Result<Arc<ExtEmbedding>> {
        let mut cache = self.extensions.lock().expect("extension cache poisoned");
        if let Some(e) = cache.get(&d) {
            return Ok(Arc::clone(e));
        }
        let e = Arc::new(ExtEmbedding::with_cap(&self.field, d, self.cap)?);
        cache.insert(d, Arc::clone(&e));
        Ok(e)
    }

    fn monic_of_degree(&self, d: usize, idx: u64) -> Poly {
        let q = self.q();
        let mut rest = idx;
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(self.field.from_index(rest % q));
            rest /= q;
        }
        c.push(self.field.one());
        Poly::from_coeffs(c)
    }

    /// All finite places of degree `d`, in lexicographic order of coefficients.
    pub fn places_of_degree(&self, d: usize) -> Result<Vec<RatPlace>> {
        if d == 0 {
            return Err(Error::InvalidParameter("place degree must be positive".into()));
        }
        let total = checked_size(self.q(), d, self.cap)?;
        let f = &self.field;
        let places = (0..total)
            .map(|i| self.monic_of_degree(d, i))
            .filter(|poly| d == 1 || poly.is_irreducible(f))
            .map(RatPlace::Finite)
            .collect();
        Ok(places)
    }

    /// A uniformly random finite place of degree `d`.
    pub fn random_place<R: Rng + ?Sized>(&self, d: usize, rng: &mut R) -> Result<RatPlace> {
        if d == 0 {
            return Err(Error::InvalidParameter("place degree must be positive".into()));
        }
        let f = &self.field;
        loop {
            let mut c: Vec<Gf> = (0..d).map(|_| f.random(rng)).collect();
            c.push(f.one());
            let poly = Poly::from_coeffs(c);
            if poly.is_irreducible(f) {
                return Ok(RatPlace::Finite(poly));
            }
        }
    }

    /// `phi^k(P)` where `phi` maps a root set `R` to `eps^{-1} R`.
    pub fn phi_apply(&self, k: i64, place: &RatPlace) -> RatPlace {
        match place {
            RatPlace::Infinity => RatPlace::Infinity,
            RatPlace::Finite(poly) => {
                let n = (self.q() - 1) as i64;
                let e = self.field.pow(&self.epsilon, k.rem_euclid(n) as u128);
                RatPlace::Finite(poly.scale_variable(&e, &self.field).monic(&self.field))
            }
        }
    }

    /// `P, phi(P), phi^2(P), ...` up to the first repetition.
    pub fn phi_orbit(&self, place: &RatPlace) -> Vec<RatPlace> {
        let mut orbit = vec![place.clone()];
        loop {
            let next = self.phi_apply(1, orbit.last().expect("nonempty"));
            if &next == place {
                return orbit;
            }
            orbit.push(next);
        }
    }

    /// Least member of the `phi`-orbit of `place`.
    pub fn canonical_representative(&self, place: &RatPlace) -> RatPlace {
        self.phi_orbit(place).into_iter().min().expect("nonempty orbit")
    }

    /// Splits the degree-`d` places into `phi`-orbits of size `q - 1`, each
    /// listed from its least member.
    pub fn orbit_decomposition(&self, d: usize) -> Result<Vec<Vec<RatPlace>>> {
        let n = self.q() - 1;
        if d < 2 || gcd(d as u64, n) != 1 {
            return Err(Error::Precondition(format!("orbit decomposition needs d >= 2 and gcd(d, q-1) = 1 (d={d}, q={})", self.q())));
        }
        let places = self.places_of_degree(d)?;
        let mut seen: BTreeSet<RatPlace> = BTreeSet::new();
        let mut orbits = Vec::new();
        for place in places {
            if seen.contains(&place) {
                continue;
            }
            let orbit = self.phi_orbit(&place);
            if orbit.len() as u64 != n {
                return Err(Error::Mismatch(format!("orbit of size {} instead of {n}", orbit.len())));
            }
            seen.extend(orbit.iter().cloned());
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// Basis `1, 1/f, x/f, ..., x^{d-1}/f` of `L(Q)`, or `1, x` at infinity.
    pub fn riemann_roch_basis(&self, place: &RatPlace) -> Result<Vec<RatFunction>> {
        let f = &self.field;
        let Some(poly) = place.poly() else {
            return Ok(vec![RatFunction::one(f), RatFunction::x(f)]);
        };
        let mut basis = vec![RatFunction::one(f)];
        for i in 0..poly.deg() as usize {
            basis.push(RatFunction::new(Poly::monomial(f.one(), i), poly.clone(), f)?);
        }
        Ok(basis)
    }

    /// `sum_i c_i b_i` for a basis of `L(Q)`.
    pub fn combine(&self, basis: &[RatFunction], coeffs: &[Gf]) -> RatFunction {
        let f = &self.field;
        basis
            .iter()
            .zip(coeffs)
            .fold(RatFunction::zero(f), |acc, (b, c)| acc.add(&b.scale(c, f), f))
    }

    pub fn valuation(&self, z: &RatFunction, place: &RatPlace) -> Result<i64> {
        if z.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(match place {
            RatPlace::Infinity => z.den.deg() - z.num.deg(),
            RatPlace::Finite(p) => {
                multiplicity(&z.num, p, &self.field) as i64 - multiplicity(&z.den, p, &self.field) as i64
            }
        })
    }

    pub fn pole_divisor(&self, z: &RatFunction) -> Result<Divisor<RatPlace>> {
        if z.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(self.support_divisor(&z.den, z.num.deg() - z.den.deg()))
    }

    pub fn zero_divisor(&self, z: &RatFunction) -> Result<Divisor<RatPlace>> {
        if z.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(self.support_divisor(&z.num, z.den.deg() - z.num.deg()))
    }

    pub fn principal_divisor(&self, z: &RatFunction) -> Result<Divisor<RatPlace>> {
        Ok(self.zero_divisor(z)?.add(&self.pole_divisor(z)?.neg()))
    }

    fn support_divisor(&self, poly: &Poly, at_infinity: i64) -> Divisor<RatPlace> {
        let mut d: Divisor<RatPlace> =
            poly.factor(&self.field).into_iter().map(|(g, k)| (RatPlace::Finite(g), k as i64)).collect();
        if at_infinity > 0 {
            d.add_term(RatPlace::Infinity, at_infinity);
        }
        d
    }

    /// Laurent expansion of `z` at `place`, through the constant term at least.
    pub fn local_expansion(&self, z: &RatFunction, place: &RatPlace) -> Result<LocalExpansion> {
        let v = self.valuation(z, place)?;
        let rel = (1 - v).max(1) as usize + 1;
        match place {
            RatPlace::Infinity => {
                let f = self.field.clone();
                let num = Laurent::from_poly(&z.num.reversed(), 0, rel);
                let den = Laurent::from_poly(&z.den.reversed(), -v, rel);
                let series = num.div(&den, &f).ok_or(Error::ZeroFunction)?;
                Ok(LocalExpansion { residue_field: f, series })
            }
            RatPlace::Finite(poly) => {
                let emb = self.extension(poly.deg() as usize)?;
                let ext = emb.ext().clone();
                let alpha = *emb.embed_poly(poly).roots(&ext).first().ok_or_else(|| {
                    Error::Mismatch("place polynomial has no root in its residue field".into())
                })?;
                let num = Laurent::from_poly(&emb.embed_poly(&z.num).taylor_shift(&alpha, &ext), 0, rel);
                let den = Laurent::from_poly(&emb.embed_poly(&z.den).taylor_shift(&alpha, &ext), 0, rel);
                let series = num.div(&den, &ext).ok_or(Error::ZeroFunction)?;
                Ok(LocalExpansion { residue_field: ext, series })
            }
        }
    }

    /// Artin–Schreier reduction of `z` at `place`, with its local certificate.
    pub fn artin_schreier(&self, z: &RatFunction, place: &RatPlace) -> Result<ArtinSchreierReduction> {
        let local = self.local_expansion(z, place)?;
        Ok(artin_schreier_reduce(&local.series, &local.residue_field))
    }

    /// Reduced pole order `m*` of `z` at `place`.
    pub fn reduced_pole_order(&self, z: &RatFunction, place: &RatPlace) -> Result<u64> {
        if z.is_zero() {
            return Ok(0);
        }
        let v = self.valuation(z, place)?;
        if v >= 0 {
            return Ok(0);
        }
        if (-v) as u64 % self.field.characteristic() as u64 != 0 {
            return Ok((-v) as u64);
        }
        Ok(self.artin_schreier(z, place)?.reduced_order)
    }

    pub fn is_nondegenerate(&self, z: &RatFunction) -> Nondegeneracy {
        let degenerate = Nondegeneracy { nondegenerate: false, witness: None, reduced_order: 0 };
        let Ok(poles) = self.pole_divisor(z) else {
            return degenerate;
        };
        let p = self.field.characteristic() as i64;
        if let Some((place, k)) = poles.iter().find(|(_, k)| k % p != 0) {
            return Nondegeneracy { nondegenerate: true, witness: Some(place.clone()), reduced_order: k as u64 };
        }
        for (place, _) in poles.iter() {
            if let Ok(m) = self.reduced_pole_order(z, place) {
                if m > 0 {
                    return Nondegeneracy { nondegenerate: true, witness: Some(place.clone()), reduced_order: m };
                }
            }
        }
        degenerate
    }
}

fn multiplicity(poly: &Poly, g: &Poly, f: &Field) -> u32 {
    let mut k = 0;
    let mut cur = poly.clone();
    while !cur.is_zero() {
        let (q, r) = cur.divrem(g, f);
        if !r.is_zero() {
            break;
        }
        cur = q;
        k += 1;
    }
    k
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::count_irreducibles;

    fn rf(p: u64, e: usize) -> RationalFunctionField {
        RationalFunctionField::new(Field::new(p, e).unwrap())
    }

    fn poly(r: &RationalFunctionField, idx: &[u64]) -> Poly {
        Poly::from_indices(r.field(), idx)
    }

    #[test]
    fn places_over_small_fields() {
        let r = rf(2, 1);
        assert_eq!(r.places_of_degree(2).unwrap(), vec![RatPlace::Finite(poly(&r, &[1, 1, 1]))]);
        assert_eq!(
            r.places_of_degree(1).unwrap(),
            vec![RatPlace::Finite(poly(&r, &[0, 1])), RatPlace::Finite(poly(&r, &[1, 1]))]
        );
        let r3 = rf(3, 1);
        assert_eq!(r3.places_of_degree(2).unwrap().len(), 3);
        for (q, e, d) in [(2, 3, 2), (5, 1, 3), (3, 2, 2)] {
            let r = rf(q, e);
            let n = r.places_of_degree(d).unwrap().len() as u128;
            assert_eq!(n, count_irreducibles(r.field().order(), d as u32));
        }
    }

    #[test]
    fn phi_moves_the_unit_root() {
        let r = rf(7, 1);
        let f = r.field();
        let one = RatPlace::Finite(poly(&r, &[6, 1]));
        assert_eq!(r.phi_apply(0, &one), one);
        for i in 0..6 {
            let root = f.inv(&f.pow(&r.epsilon(), i as u128)).unwrap();
            assert_eq!(r.phi_apply(i, &one), RatPlace::Finite(Poly::linear(f, &root)));
        }
        assert_eq!(r.phi_apply(6, &one), one);
        assert_eq!(r.phi_apply(-1, &r.phi_apply(1, &one)), one);
    }

    #[test]
    fn orbit_decomposition_f11_cubic() {
        let r = rf(11, 1);
        let orbits = r.orbit_decomposition(3).unwrap();
        assert_eq!(orbits.len(), 44);
        assert!(orbits.iter().all(|o| o.len() == 10));
        for o in &orbits {
            assert_eq!(&o[0], o.iter().min().unwrap());
        }
        let all: BTreeSet<_> = orbits.iter().flatten().cloned().collect();
        assert_eq!(all.len(), 440);
        assert!(matches!(rf(2, 2).orbit_decomposition(3), Err(Error::Precondition(_))));
        assert!(rf(2, 1).orbit_decomposition(3).unwrap().iter().all(|o| o.len() == 1));
    }

    #[test]
    fn riemann_roch_basis_members() {
        let r = rf(2, 1);
        let f = r.field();
        let q = RatPlace::Finite(poly(&r, &[1, 1, 1]));
        let basis = r.riemann_roch_basis(&q).unwrap();
        assert_eq!(basis.len(), 3);
        assert_eq!(basis[2], RatFunction::new(Poly::x(f), poly(&r, &[1, 1, 1]), f).unwrap());
        for b in &basis {
            assert!(r.valuation(b, &q).unwrap() >= -1);
        }
        let qx = RatPlace::Finite(poly(&r, &[0, 1]));
        assert_eq!(r.riemann_roch_basis(&qx).unwrap().len(), 2);
        assert_eq!(r.riemann_roch_basis(&RatPlace::Infinity).unwrap().len(), 2);
    }

    #[test]
    fn valuations_and_poles() {
        let r = rf(2, 1);
        let f = r.field();
        let x = RatFunction::x(f);
        let px = RatPlace::Finite(poly(&r, &[0, 1]));
        let q = RatPlace::Finite(poly(&r, &[1, 1, 1]));
        assert_eq!(r.valuation(&x, &px).unwrap(), 1);
        assert_eq!(r.valuation(&x, &RatPlace::Infinity).unwrap(), -1);
        let z = RatFunction::new(Poly::x(f), poly(&r, &[1, 1, 1]), f).unwrap();
        assert_eq!(r.valuation(&z, &q).unwrap(), -1);
        assert!(matches!(r.valuation(&RatFunction::zero(f), &q), Err(Error::ZeroFunction)));
        assert_eq!(r.pole_divisor(&x).unwrap(), Divisor::single(RatPlace::Infinity, 1));
        let w = RatFunction::new(Poly::one(f), poly(&r, &[1, 1, 1]), f).unwrap();
        let poles = r.pole_divisor(&w).unwrap();
        assert_eq!(poles, Divisor::single(q, 1));
        assert_eq!(poles.degree(), 2);
        assert!(r.pole_divisor(&RatFunction::one(f)).unwrap().is_empty());
    }

    #[test]
    fn reduction_in_characteristic_two() {
        let r = rf(2, 1);
        let f = r.field();
        let px = RatPlace::Finite(poly(&r, &[0, 1]));
        let z = RatFunction::new(poly(&r, &[1, 1]), poly(&r, &[0, 0, 1]), f).unwrap();
        assert_eq!(r.reduced_pole_order(&z, &px).unwrap(), 0);
        assert!(!r.is_nondegenerate(&z).nondegenerate);
        let cube = RatFunction::new(Poly::one(f), poly(&r, &[0, 0, 0, 1]), f).unwrap();
        assert_eq!(r.reduced_pole_order(&cube, &px).unwrap(), 3);
        let x = RatFunction::x(f);
        let nd = r.is_nondegenerate(&x);
        assert!(nd.nondegenerate);
        assert_eq!(nd.witness, Some(RatPlace::Infinity));
        assert!(!r.is_nondegenerate(&RatFunction::one(f)).nondegenerate);
    }

    #[test]
    fn reduction_at_higher_degree_place() {
        // Over F_2, 1/f^2 - 1/f is removable while 1/f^2 keeps a simple pole.
        let r = rf(2, 1);
        let f = r.field();
        let q = RatPlace::Finite(poly(&r, &[1, 1, 1]));
        let h = RatFunction::new(Poly::one(f), poly(&r, &[1, 1, 1]), f).unwrap();
        let z = h.mul(&h, f).sub(&h, f);
        assert_eq!(r.reduced_pole_order(&z, &q).unwrap(), 0);
        let z2 = h.mul(&h, f);
        let red = r.artin_schreier(&z2, &q).unwrap();
        assert_eq!(red.reduced_order, 1);
        let z3 = h.mul(&h, f).add(&h.mul(&RatFunction::x(f), f), f);
        let red = r.artin_schreier(&z3, &q).unwrap();
        let local = r.local_expansion(&z3, &q).unwrap();
        let ext = &local.residue_field;
        let w = &red.correction;
        let rest = local.series.sub(&w.mul(w, ext).sub(w, ext), ext);
        assert_eq!(rest.valuation().map_or(0, |v| (-v).max(0) as u64), red.reduced_order);
    }

    #[test]
    fn local_expansion_at_infinity() {
        let r = rf(5, 1);
        let f = r.field();
        // x^2 / (x + 1) = t^-1 / (1 + t) = t^-1 - 1 + t - ...
        let z = RatFunction::new(poly(&r, &[0, 0, 1]), poly(&r, &[1, 1]), f).unwrap();
        let s = r.local_expansion(&z, &RatPlace::Infinity).unwrap().series;
        assert_eq!(s.valuation(), Some(-1));
        assert_eq!(s.coeff(-1), f.one());
        assert_eq!(s.coeff(0), f.from_int(-1));
    }
}

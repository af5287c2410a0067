use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::divisor::{Divisor, Place};
use crate::error::{Error, Result};
use crate::galois::{checked_size, linalg, Gf, Poly};
use crate::ratfield::gcd;
use crate::series::{artin_schreier_reduce, ArtinSchreierReduction, Laurent, LocalExpansion};

use super::{Curve, ECFunction, ECPoint};

/// A place of degree `d`: a Frobenius orbit of `d` points over `F_{q^d}`,
/// listed from its least point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ECPlace {
    degree: usize,
    points: Vec<ECPoint>,
}

impl ECPlace {
    pub fn infinity() -> ECPlace {
        ECPlace { degree: 1, points: vec![ECPoint::Infinity] }
    }

    pub fn representative(&self) -> ECPoint {
        self.points[0]
    }

    /// The conjugate points, each a `q`-power of the previous one.
    pub fn points(&self) -> &[ECPoint] {
        &self.points
    }

    pub fn is_infinity(&self) -> bool {
        self.points[0].is_infinity()
    }
}

impl Place for ECPlace {
    fn degree(&self) -> usize {
        self.degree
    }
}

impl Curve {
    /// The place through `pt` in `F_{q^d}`, if `pt` has exact degree `d`.
    pub fn place_of_point(&self, pt: &ECPoint, d: usize) -> Result<Option<ECPlace>> {
        if pt.is_infinity() {
            return Ok((d == 1).then(ECPlace::infinity));
        }
        let ext = self.extension(d)?;
        let emb = &ext.embedding;
        let mut orbit = vec![*pt];
        loop {
            let next = orbit.last().expect("nonempty").map(|c| emb.relative_frobenius(c));
            if next == *pt {
                break;
            }
            orbit.push(next);
            if orbit.len() > d {
                return Ok(None);
            }
        }
        if orbit.len() != d {
            return Ok(None);
        }
        let start = (0..d).min_by_key(|&i| orbit[i]).expect("nonempty");
        orbit.rotate_left(start);
        Ok(Some(ECPlace { degree: d, points: orbit }))
    }

    /// The degree-one place of a rational point.
    pub fn rational_place(&self, pt: &ECPoint) -> ECPlace {
        ECPlace { degree: 1, points: vec![*pt] }
    }

    /// All places of degree `d`, ordered by their least point.
    pub fn places_of_degree(&self, d: usize) -> Result<Vec<ECPlace>> {
        if d == 0 {
            return Err(Error::InvalidParameter("place degree must be positive".into()));
        }
        checked_size(self.q(), d, self.cap())?;
        let ext = self.extension(d)?;
        let mut places = Vec::new();
        for pt in ext.model.points() {
            if pt.is_infinity() && d > 1 {
                continue;
            }
            if let Some(place) = self.place_of_point(&pt, d)? {
                if place.representative() == pt {
                    places.push(place);
                }
            }
        }
        Ok(places)
    }

    /// A random place of degree `d`, found without enumerating `F_{q^d}`.
    pub fn random_place<R: Rng + ?Sized>(&self, d: usize, rng: &mut R) -> Result<ECPlace> {
        let ext = self.extension(d)?;
        let field = ext.model.field();
        loop {
            let x = field.random(rng);
            let ys = ext.model.lift_x(&x);
            if ys.is_empty() {
                continue;
            }
            let y = ys[rng.gen_range(0..ys.len())];
            if let Some(place) = self.place_of_point(&ECPoint::Affine(x, y), d)? {
                return Ok(place);
            }
        }
    }

    /// `sigma_P^k(Q)`: translation of every conjugate point by `[k]P`.
    pub fn translate(&self, place: &ECPlace, p: &ECPoint, k: i128) -> Result<ECPlace> {
        let d = place.degree;
        let ext = self.extension(d)?;
        let shift = self.scalar_mul(k, p).map(|c| ext.embedding.embed(c));
        let moved = ext.model.add(&place.representative(), &shift);
        self.place_of_point(&moved, d)?
            .ok_or_else(|| Error::Mismatch("translation changed the degree of a place".into()))
    }

    /// `Q, sigma_P(Q), sigma_P^2(Q), ...` up to the first repetition.
    pub fn translation_orbit(&self, place: &ECPlace, generator: &ECPoint) -> Result<Vec<ECPlace>> {
        let mut orbit = vec![place.clone()];
        loop {
            let next = self.translate(orbit.last().expect("nonempty"), generator, 1)?;
            if &next == place {
                return Ok(orbit);
            }
            orbit.push(next);
            if orbit.len() as u64 > self.order() {
                return Err(Error::Mismatch("translation orbit longer than the group order".into()));
            }
        }
    }

    /// Least member of the translation orbit of `place`.
    pub fn canonical_representative(&self, place: &ECPlace, generator: &ECPoint) -> Result<ECPlace> {
        Ok(self.translation_orbit(place, generator)?.into_iter().min().expect("nonempty"))
    }

    /// Splits the degree-`d` places into translation orbits of size `N`,
    /// each listed from its least member.
    pub fn translation_orbits(&self, d: usize, generator: &ECPoint) -> Result<Vec<Vec<ECPlace>>> {
        if gcd(d as u64, self.order()) != 1 {
            return Err(Error::Precondition(format!("translation orbits need gcd(d, N) = 1 (d={d}, N={})", self.order())));
        }
        if self.point_order(generator) != self.order() {
            return Err(Error::InvalidParameter("translation needs a generator of the group".into()));
        }
        let mut seen = BTreeSet::new();
        let mut orbits = Vec::new();
        for place in self.places_of_degree(d)? {
            if seen.contains(&place) {
                continue;
            }
            let orbit = self.translation_orbit(&place, generator)?;
            if orbit.len() as u64 != self.order() {
                return Err(Error::Mismatch(format!("translation orbit of size {}", orbit.len())));
            }
            seen.extend(orbit.iter().cloned());
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// Numerator `u + v y` and denominator `w` expanded at `place`.
    fn expansion_parts(&self, z: &ECFunction, place: &ECPlace, extra: i64) -> Result<(Laurent, Laurent, crate::galois::Field)> {
        let ext = self.extension(place.degree)?;
        let field = ext.model.field().clone();
        let bound = 2 * z.degree_bound() + 3;
        let prec = 3 * bound + 12 + extra;
        let (x, y) = ext.model.local_parameters(&place.representative(), prec);
        let (u, v, w) = z.map_coeffs(|p| ext.embedding.embed_poly(p));
        let num = x.compose_poly(&u, &field).add(&y.mul(&x.compose_poly(&v, &field), &field), &field);
        let den = x.compose_poly(&w, &field);
        Ok((num, den, field))
    }

    pub fn valuation(&self, z: &ECFunction, place: &ECPlace) -> Result<i64> {
        if z.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let (num, den, _) = self.expansion_parts(z, place, 0)?;
        match (num.valuation(), den.valuation()) {
            (Some(a), Some(b)) => Ok(a - b),
            _ => Err(Error::Mismatch("local expansion lost all precision".into())),
        }
    }

    /// Laurent expansion of `z` at `place`, through the constant term.
    pub fn local_expansion(&self, z: &ECFunction, place: &ECPlace) -> Result<LocalExpansion> {
        if z.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let (num, den, field) = self.expansion_parts(z, place, 0)?;
        let series = num.div(&den, &field).ok_or(Error::ZeroFunction)?;
        Ok(LocalExpansion { residue_field: field, series })
    }

    pub fn artin_schreier(&self, z: &ECFunction, place: &ECPlace) -> Result<ArtinSchreierReduction> {
        let local = self.local_expansion(z, place)?;
        Ok(artin_schreier_reduce(&local.series, &local.residue_field))
    }

    pub fn reduced_pole_order(&self, z: &ECFunction, place: &ECPlace) -> Result<u64> {
        if z.is_zero() {
            return Ok(0);
        }
        let v = self.valuation(z, place)?;
        if v >= 0 {
            return Ok(0);
        }
        if (-v) as u64 % self.field().characteristic() as u64 != 0 {
            return Ok((-v) as u64);
        }
        Ok(self.artin_schreier(z, place)?.reduced_order)
    }

    /// Value of `z` at a rational point, or `None` at a pole.
    pub fn eval(&self, z: &ECFunction, pt: &ECPoint) -> Result<Option<Gf>> {
        if let ECPoint::Affine(x, y) = pt {
            let (_, _, w) = z.parts();
            if !w.eval(self.field(), x).is_zero() {
                return Ok(z.eval_direct(x, y, self.field()));
            }
        }
        if z.is_zero() {
            return Ok(Some(self.field().zero()));
        }
        if pt.is_infinity() {
            // Orders at O: -2 deg u, -2 deg v - 3, -2 deg w; the first two differ in parity.
            let (u, v, w) = z.parts();
            let pole_u = u.degree().map_or(-1, |d| 2 * d as i64);
            let pole_v = v.degree().map_or(-1, |d| 2 * d as i64 + 3);
            let pole_w = 2 * w.deg();
            let num = pole_u.max(pole_v);
            return Ok(if num > pole_w {
                None
            } else if num == pole_w {
                self.field().div(&u.leading().expect("nonzero"), &w.leading().expect("nonzero"))
            } else {
                Some(self.field().zero())
            });
        }
        let place = self.rational_place(pt);
        let local = self.local_expansion(z, &place)?;
        Ok(match local.series.valuation() {
            Some(v) if v < 0 => None,
            Some(0) => local.series.leading(),
            _ => Some(self.field().zero()),
        })
    }

    /// Places lying over the roots of an irreducible `g` in `F_q[x]`.
    pub fn places_above(&self, g: &Poly) -> Result<Vec<ECPlace>> {
        let k = g.deg() as usize;
        if k == 0 {
            return Ok(Vec::new());
        }
        for d in [k, 2 * k] {
            let ext = self.extension(d)?;
            let field = ext.model.field();
            let roots = ext.embedding.embed_poly(g).roots(field);
            let x0 = *roots.first().ok_or_else(|| Error::Mismatch("irreducible factor without roots".into()))?;
            let mut found = BTreeSet::new();
            for y in ext.model.lift_x(&x0) {
                if let Some(place) = self.place_of_point(&ECPoint::Affine(x0, y), d)? {
                    found.insert(place);
                }
            }
            if !found.is_empty() {
                return Ok(found.into_iter().collect());
            }
        }
        Err(Error::Mismatch("no place above an irreducible factor".into()))
    }

    fn candidate_places(&self, polys: &[&Poly]) -> Result<BTreeSet<ECPlace>> {
        let f = self.field();
        let mut out = BTreeSet::from([ECPlace::infinity()]);
        for p in polys {
            for (g, _) in p.factor(f) {
                out.extend(self.places_above(&g)?);
            }
        }
        Ok(out)
    }

    pub fn pole_divisor(&self, z: &ECFunction) -> Result<Divisor<ECPlace>> {
        if z.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let (_, _, w) = z.parts();
        let mut d = Divisor::new();
        for place in self.candidate_places(&[w])? {
            let v = self.valuation(z, &place)?;
            if v < 0 {
                d.add_term(place, -v);
            }
        }
        Ok(d)
    }

    pub fn zero_divisor(&self, z: &ECFunction) -> Result<Divisor<ECPlace>> {
        if z.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let norm = z.numerator_norm(self.model());
        let mut d = Divisor::new();
        for place in self.candidate_places(&[&norm])? {
            let v = self.valuation(z, &place)?;
            if v > 0 {
                d.add_term(place, v);
            }
        }
        Ok(d)
    }

    pub fn principal_divisor(&self, z: &ECFunction) -> Result<Divisor<ECPlace>> {
        Ok(self.zero_divisor(z)?.add(&self.pole_divisor(z)?.neg()))
    }

    /// Minimal polynomial over `F_q` of the `x`-coordinate of an affine place.
    pub fn x_minimal_polynomial(&self, place: &ECPlace) -> Result<Poly> {
        let ext = self.extension(place.degree)?;
        let field = ext.model.field();
        let mut xs: Vec<Gf> = place.points.iter().filter_map(|p| p.x()).collect();
        xs.sort();
        xs.dedup();
        let prod = xs.iter().fold(Poly::one(field), |acc, x| acc.mul(&Poly::linear(field, x), field));
        let coeffs = prod
            .coeffs()
            .iter()
            .map(|c| ext.embedding.to_base(c))
            .collect::<Option<Vec<Gf>>>()
            .ok_or_else(|| Error::Mismatch("x-coordinates are not Galois-stable".into()))?;
        Ok(Poly::from_coeffs(coeffs))
    }

    /// A basis of `L(G)` for an effective divisor `G` of positive degree.
    ///
    /// With `h` a product of minimal polynomials of the `x`-coordinates in
    /// `G`, every `z` in `L(G)` is `g / h` for some `g` in `L(M O)`, where
    /// `M = 2 deg h + G(O)`; `g` is found from linear conditions on its local
    /// expansions at the zeros of `h`. The constant function comes first.
    pub fn riemann_roch_basis(&self, g_div: &Divisor<ECPlace>) -> Result<Vec<ECFunction>> {
        if !g_div.is_effective() || g_div.degree() < 1 {
            return Err(Error::InvalidParameter("riemann-roch basis needs an effective divisor of positive degree".into()));
        }
        let f = self.field().clone();
        let model = self.model().clone();
        let mut exps: BTreeMap<Poly, i64> = BTreeMap::new();
        for (place, e) in g_div.iter() {
            if place.is_infinity() {
                continue;
            }
            let m = self.x_minimal_polynomial(place)?;
            let slot = exps.entry(m).or_insert(0);
            *slot = (*slot).max(e);
        }
        let h = exps.iter().fold(Poly::one(&f), |acc, (m, &e)| acc.mul(&m.pow(e as u32, &f), &f));
        let h_fn = ECFunction::new(h.clone(), Poly::zero(), Poly::one(&f), &f)?;
        let big_m = 2 * h.deg() + g_div.coefficient(&ECPlace::infinity());
        let mut monomials: Vec<(usize, usize)> = Vec::new();
        for order in 0..=big_m {
            if order == 1 {
                continue;
            }
            let (i, j) = if order % 2 == 0 { (order / 2, 0) } else { ((order - 3) / 2, 1) };
            monomials.push((i as usize, j));
        }
        let basis_fns: Vec<ECFunction> = monomials.iter().map(|&(i, j)| ECFunction::monomial(i, j, &model)).collect();
        let ncols = basis_fns.len();
        let mut rows: Vec<Vec<Gf>> = Vec::new();
        for m in exps.keys() {
            for place in self.places_above(m)? {
                let need = self.valuation(&h_fn, &place)? - g_div.coefficient(&place);
                if need <= 0 {
                    continue;
                }
                let ext = self.extension(place.degree)?;
                let efield = ext.model.field().clone();
                let (x, y) = ext.model.local_parameters(&place.representative(), need + 8);
                let series: Vec<Laurent> = monomials
                    .iter()
                    .map(|&(i, j)| {
                        let xi = x.compose_poly(&Poly::monomial(efield.one(), i), &efield);
                        if j == 1 {
                            xi.mul(&y, &efield)
                        } else {
                            xi
                        }
                    })
                    .collect();
                for k in 0..need {
                    let coords: Vec<Vec<Gf>> =
                        series.iter().map(|s| ext.embedding.base_coordinates(&s.coeff(k))).collect();
                    for c in 0..place.degree {
                        rows.push(coords.iter().map(|v| v[c]).collect());
                    }
                }
            }
        }
        let kernel = linalg::kernel(&rows, ncols, &f);
        let h_vec: Vec<Gf> = monomials
            .iter()
            .map(|&(i, j)| if j == 0 { h.coeff(i) } else { f.zero() })
            .collect();
        let mut chosen = vec![h_vec];
        for v in kernel {
            let mut trial = chosen.clone();
            trial.push(v);
            if linalg::rank(&trial, ncols, &f) == trial.len() {
                chosen = trial;
            }
        }
        chosen
            .iter()
            .map(|c| {
                let g = basis_fns
                    .iter()
                    .zip(c)
                    .fold(ECFunction::zero(&f), |acc, (b, ci)| acc.add(&b.scale(ci, &f), &f));
                let (u, v, _) = g.parts();
                ECFunction::new(u.clone(), v.clone(), h.clone(), &f)
            })
            .collect()
    }

    /// `sum_i c_i b_i`.
    pub fn combine(&self, basis: &[ECFunction], coeffs: &[Gf]) -> ECFunction {
        let f = self.field();
        basis
            .iter()
            .zip(coeffs)
            .fold(ECFunction::zero(f), |acc, (b, c)| acc.add(&b.scale(c, f), f))
    }
}

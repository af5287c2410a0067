//! Trace sequences `s_j = Tr(z(P_j))` along an orbit of rational places, and
//! the rational and elliptic sequence families.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::divisor::{Divisor, Place};
use crate::elliptic::{Curve, ECFunction, ECPlace, ECPoint};
use crate::error::{Error, Result};
use crate::galois::{count_irreducibles, Field, Gf, Poly};
use crate::ratfield::{gcd, RatFunction, RatPlace, RationalFunctionField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Rational,
    Elliptic,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Rational => "rational",
            Construction::Elliptic => "elliptic",
        })
    }
}

#[derive(Clone, Debug)]
enum OrbitKind {
    /// Evaluation points `eps^j`.
    Rational { rf: Arc<RationalFunctionField>, points: Vec<Gf> },
    /// Points `[j]P`.
    Elliptic { curve: Arc<Curve>, generator: ECPoint, points: Vec<ECPoint> },
}

/// An ordered cycle of `n` distinct rational places.
///
/// In the rational case `P_j` is the zero of `eps^j x - 1`, and digits are
/// read at `x = eps^j`, which visits the same places in reverse order.
#[derive(Clone, Debug)]
pub struct OrbitSpec {
    kind: OrbitKind,
    degenerate: bool,
}

impl OrbitSpec {
    pub fn rational(rf: Arc<RationalFunctionField>) -> Result<OrbitSpec> {
        let f = rf.field().clone();
        let eps = rf.epsilon();
        let n = (f.order() - 1) as usize;
        let mut points = Vec::with_capacity(n);
        let mut cur = f.one();
        for _ in 0..n {
            points.push(cur);
            cur = f.mul(&cur, &eps);
        }
        check_distinct(&points)?;
        Ok(OrbitSpec { kind: OrbitKind::Rational { rf, points }, degenerate: n == 1 })
    }

    pub fn elliptic(curve: Arc<Curve>) -> Result<OrbitSpec> {
        let generator = curve
            .generator()
            .ok_or_else(|| Error::Precondition("curve group is not cyclic".into()))?;
        let n = curve.order() as usize;
        let mut points = Vec::with_capacity(n);
        let mut cur = ECPoint::Infinity;
        for _ in 0..n {
            points.push(cur);
            cur = curve.add(&cur, &generator);
        }
        check_distinct(&points)?;
        Ok(OrbitSpec { kind: OrbitKind::Elliptic { curve, generator, points }, degenerate: n == 1 })
    }

    pub fn construction(&self) -> Construction {
        match self.kind {
            OrbitKind::Rational { .. } => Construction::Rational,
            OrbitKind::Elliptic { .. } => Construction::Elliptic,
        }
    }

    pub fn len(&self) -> usize {
        match &self.kind {
            OrbitKind::Rational { points, .. } => points.len(),
            OrbitKind::Elliptic { points, .. } => points.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Set for the one-place orbit over `F_2`.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn field(&self) -> &Field {
        match &self.kind {
            OrbitKind::Rational { rf, .. } => rf.field(),
            OrbitKind::Elliptic { curve, .. } => curve.field(),
        }
    }

    /// Rational places `P_0, ..., P_{n-1}` of the rational orbit.
    pub fn rational_places(&self) -> Option<Vec<RatPlace>> {
        match &self.kind {
            OrbitKind::Rational { rf, points } => {
                let f = rf.field();
                let n = points.len();
                // P_j has root eps^{-j}, read off the evaluation points backwards.
                Some((0..n).map(|j| RatPlace::Finite(Poly::linear(f, &points[(n - j) % n]))).collect())
            }
            OrbitKind::Elliptic { .. } => None,
        }
    }

    /// Points `[j]P` of the elliptic orbit.
    pub fn elliptic_points(&self) -> Option<&[ECPoint]> {
        match &self.kind {
            OrbitKind::Elliptic { points, .. } => Some(points),
            OrbitKind::Rational { .. } => None,
        }
    }

    /// Checks that the automorphism moves each place to the next one.
    pub fn verify_cycle(&self) -> bool {
        match &self.kind {
            OrbitKind::Rational { rf, .. } => {
                let places = self.rational_places().expect("rational orbit");
                let n = places.len();
                (0..n).all(|j| rf.phi_apply(1, &places[j]) == places[(j + 1) % n])
            }
            OrbitKind::Elliptic { curve, generator, points } => {
                let n = points.len();
                (0..n).all(|j| curve.add(generator, &points[j]) == points[(j + 1) % n])
            }
        }
    }

    /// The same cycle started `shift` places later.
    pub fn shifted(&self, shift: usize) -> OrbitSpec {
        let mut out = self.clone();
        match &mut out.kind {
            OrbitKind::Rational { points, .. } => {
                let n = points.len();
                points.rotate_left(shift % n.max(1));
            }
            OrbitKind::Elliptic { points, .. } => {
                let n = points.len();
                points.rotate_left(shift % n.max(1));
            }
        }
        out
    }
}

fn check_distinct<T: Ord + Clone>(items: &[T]) -> Result<()> {
    let mut sorted = items.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != items.len() {
        return Err(Error::Mismatch("orbit places are not pairwise distinct".into()));
    }
    Ok(())
}

/// A function on either construction's curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqFunction {
    Rational(RatFunction),
    Elliptic(ECFunction),
}

/// A pole of the generating function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleInfo {
    pub place: String,
    pub order: i64,
    pub reduced_order: u64,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub construction: Construction,
    pub p: u64,
    pub e: usize,
    pub q: u64,
    /// Weierstrass coefficient indices `a1, a2, a3, a4, a6`.
    pub curve: Option<String>,
    pub orbit_id: String,
    pub function: String,
    pub poles: Vec<PoleInfo>,
}

impl Provenance {
    pub fn unique_pole(&self) -> Option<&PoleInfo> {
        match self.poles.as_slice() {
            [only] => Some(only),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sequence {
    pub digits: Vec<u32>,
    pub provenance: Provenance,
}

impl Sequence {
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

/// Smallest `k >= 1` with `s_{j+k mod n} = s_j` for all `j`.
pub fn least_period(s: &[u32]) -> usize {
    let n = s.len();
    if n == 0 {
        return 1;
    }
    (1..=n)
        .filter(|k| n % k == 0)
        .find(|&k| (0..n).all(|j| s[(j + k) % n] == s[j]))
        .unwrap_or(n)
}

fn curve_label(curve: &Curve) -> String {
    let f = curve.field();
    let idx: Vec<String> = curve.coefficients().iter().map(|c| f.index(c).to_string()).collect();
    format!("[{}]", idx.join(","))
}

/// Label of an elliptic place: degree and representative coordinate indices.
pub fn ec_place_label(curve: &Curve, place: &ECPlace) -> Result<String> {
    match place.representative() {
        ECPoint::Infinity => Ok("O".to_string()),
        ECPoint::Affine(x, y) => {
            let ext = curve.extension(place.degree())?;
            let f = ext.model.field();
            Ok(format!("d{}:({},{})", place.degree(), f.index(&x), f.index(&y)))
        }
    }
}

fn rational_poles(rf: &RationalFunctionField, z: &RatFunction) -> Result<Vec<PoleInfo>> {
    let f = rf.field();
    rf.pole_divisor(z)?
        .iter()
        .map(|(place, k)| {
            Ok(PoleInfo {
                place: place.label(f),
                order: k,
                reduced_order: rf.reduced_pole_order(z, place)?,
                degree: place.degree(),
            })
        })
        .collect()
}

fn elliptic_poles(curve: &Curve, z: &ECFunction) -> Result<Vec<PoleInfo>> {
    curve
        .pole_divisor(z)?
        .iter()
        .map(|(place, k)| {
            Ok(PoleInfo {
                place: ec_place_label(curve, place)?,
                order: k,
                reduced_order: curve.reduced_pole_order(z, place)?,
                degree: place.degree(),
            })
        })
        .collect()
}

fn digits_of(orbit: &OrbitSpec, z: &SeqFunction) -> Result<Vec<u32>> {
    let f = orbit.field();
    match (&orbit.kind, z) {
        (OrbitKind::Rational { points, .. }, SeqFunction::Rational(z)) => points
            .iter()
            .enumerate()
            .map(|(j, a)| z.eval(a, f).map(|v| f.trace(&v)).ok_or(Error::PoleOnOrbit(j)))
            .collect(),
        (OrbitKind::Elliptic { curve, points, .. }, SeqFunction::Elliptic(z)) => points
            .iter()
            .enumerate()
            .map(|(j, pt)| curve.eval(z, pt)?.map(|v| f.trace(&v)).ok_or(Error::PoleOnOrbit(j)))
            .collect(),
        _ => Err(Error::InvalidParameter("function and orbit belong to different constructions".into())),
    }
}

fn base_provenance(orbit: &OrbitSpec, z: &SeqFunction, orbit_id: String, poles: Vec<PoleInfo>) -> Provenance {
    let f = orbit.field();
    let (curve, function) = match (&orbit.kind, z) {
        (OrbitKind::Elliptic { curve, .. }, SeqFunction::Elliptic(z)) => (Some(curve_label(curve)), z.label(f)),
        (_, SeqFunction::Rational(z)) => (None, z.label(f)),
        (_, SeqFunction::Elliptic(z)) => (None, z.label(f)),
    };
    Provenance {
        construction: orbit.construction(),
        p: f.characteristic() as u64,
        e: f.degree(),
        q: f.order(),
        curve,
        orbit_id,
        function,
        poles,
    }
}

/// `s_j = Tr(z(P_j))` for one period, with the poles of `z` recorded.
pub fn generate_sequence(z: &SeqFunction, orbit: &OrbitSpec) -> Result<Sequence> {
    let is_zero = match z {
        SeqFunction::Rational(r) => r.is_zero(),
        SeqFunction::Elliptic(e) => e.is_zero(),
    };
    if is_zero {
        return Err(Error::ZeroFunction);
    }
    let digits = digits_of(orbit, z)?;
    let poles = match (&orbit.kind, z) {
        (OrbitKind::Rational { rf, .. }, SeqFunction::Rational(r)) => rational_poles(rf, r)?,
        (OrbitKind::Elliptic { curve, .. }, SeqFunction::Elliptic(e)) => elliptic_poles(curve, e)?,
        _ => unreachable!("construction mismatch rejected above"),
    };
    Ok(Sequence { digits, provenance: base_provenance(orbit, z, "-".into(), poles) })
}

/// How family members are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum Policy {
    Exhaustive,
    Sample { count: usize, seed: u64 },
}

#[derive(Clone, Debug)]
enum Source {
    Rational { rf: Arc<RationalFunctionField>, reps: Option<Vec<RatPlace>> },
    Elliptic { curve: Arc<Curve>, reps: Option<Vec<ECPlace>> },
}

/// A family `S_d` of sequences: one orbit of evaluation places and the
/// Riemann–Roch spaces of orbit representatives `Q_1, ..., Q_r`.
#[derive(Clone, Debug)]
pub struct Family {
    pub construction: Construction,
    pub d: usize,
    /// Multiple of `Q_i` whose Riemann–Roch space is used (elliptic).
    pub k: usize,
    pub r: u128,
    pub policy: Policy,
    orbit: OrbitSpec,
    source: Source,
}

/// A representative place, enumerated or drawn at random.
#[derive(Clone, Debug)]
enum Rep {
    Rational(RatPlace),
    Elliptic(ECPlace),
}

impl Family {
    /// `S_d` over `F_q(x)`: needs `d >= 2` and `gcd(d, q-1) = 1`.
    pub fn rational(rf: Arc<RationalFunctionField>, d: usize, policy: Policy) -> Result<Family> {
        let q = rf.field().order();
        if d < 2 || gcd(d as u64, q - 1) != 1 {
            return Err(Error::Precondition(format!("rational family needs d >= 2 and gcd(d, q-1) = 1 (d={d}, q={q})")));
        }
        let r = count_irreducibles(q, d as u32) / (q as u128 - 1);
        let enumerable = crate::galois::checked_size(q, d, crate::galois::DEFAULT_SIZE_CAP).is_ok();
        let reps = if enumerable {
            Some(rf.orbit_decomposition(d)?.into_iter().map(|o| o[0].clone()).collect::<Vec<_>>())
        } else {
            None
        };
        if reps.is_none() && policy == Policy::Exhaustive {
            return Err(Error::SizeCap { size: (q as u128).pow(d as u32), cap: crate::galois::DEFAULT_SIZE_CAP });
        }
        let orbit = OrbitSpec::rational(Arc::clone(&rf))?;
        Ok(Family { construction: Construction::Rational, d, k: 1, r, policy, orbit, source: Source::Rational { rf, reps } })
    }

    /// The elliptic family from `L(k Q_i)`: needs a cyclic curve and
    /// `gcd(d, N) = 1`.
    pub fn elliptic(curve: Arc<Curve>, d: usize, k: usize, policy: Policy) -> Result<Family> {
        let n = curve.order();
        if d < 2 || gcd(d as u64, n) != 1 {
            return Err(Error::Precondition(format!("elliptic family needs d >= 2 and gcd(d, N) = 1 (d={d}, N={n})")));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("pole multiple k must be positive".into()));
        }
        let generator = curve.generator().ok_or_else(|| Error::Precondition("curve group is not cyclic".into()))?;
        let r = curve.count_places_zeta(d as u32)? / n as u128;
        let enumerable = crate::galois::checked_size(curve.q(), d, crate::galois::DEFAULT_SIZE_CAP).is_ok();
        let reps = if enumerable {
            Some(curve.translation_orbits(d, &generator)?.into_iter().map(|o| o[0].clone()).collect::<Vec<_>>())
        } else {
            None
        };
        if reps.is_none() && policy == Policy::Exhaustive {
            return Err(Error::SizeCap { size: (curve.q() as u128).pow(d as u32), cap: crate::galois::DEFAULT_SIZE_CAP });
        }
        let orbit = OrbitSpec::elliptic(Arc::clone(&curve))?;
        Ok(Family { construction: Construction::Elliptic, d, k, r, policy, orbit, source: Source::Elliptic { curve, reps } })
    }

    pub fn orbit(&self) -> &OrbitSpec {
        &self.orbit
    }

    pub fn n(&self) -> usize {
        self.orbit.len()
    }

    /// Labels of the enumerated representatives, if they were enumerated.
    pub fn representative_labels(&self) -> Result<Option<Vec<String>>> {
        match &self.source {
            Source::Rational { rf, reps } => Ok(reps.as_ref().map(|v| v.iter().map(|p| p.label(rf.field())).collect())),
            Source::Elliptic { curve, reps } => match reps {
                None => Ok(None),
                Some(v) => Ok(Some(v.iter().map(|p| ec_place_label(curve, p)).collect::<Result<_>>()?)),
            },
        }
    }

    pub fn representative_count(&self) -> Option<usize> {
        match &self.source {
            Source::Rational { reps, .. } => reps.as_ref().map(Vec::len),
            Source::Elliptic { reps, .. } => reps.as_ref().map(Vec::len),
        }
    }

    /// Number of members an exhaustive run emits: `r (q^{d+1} - q)` over
    /// `F_q(x)` and `r (q^{kd} - q)` on the curve (before the coprimality
    /// filter when `k > 1`).
    pub fn exhaustive_size(&self) -> u128 {
        let q = self.orbit.field().order() as u128;
        let dim = match self.construction {
            Construction::Rational => self.d as u32 + 1,
            Construction::Elliptic => (self.k * self.d) as u32,
        };
        self.r * (q.pow(dim) - q)
    }

    fn rep_at(&self, i: usize) -> Rep {
        match &self.source {
            Source::Rational { reps, .. } => Rep::Rational(reps.as_ref().expect("enumerated")[i].clone()),
            Source::Elliptic { reps, .. } => Rep::Elliptic(reps.as_ref().expect("enumerated")[i].clone()),
        }
    }

    fn random_rep<R: Rng>(&self, rng: &mut R) -> Result<(String, Rep)> {
        match &self.source {
            Source::Rational { reps: Some(v), .. } => {
                let i = rng.gen_range(0..v.len());
                Ok((format!("Q{}", i + 1), Rep::Rational(v[i].clone())))
            }
            Source::Elliptic { reps: Some(v), .. } => {
                let i = rng.gen_range(0..v.len());
                Ok((format!("Q{}", i + 1), Rep::Elliptic(v[i].clone())))
            }
            Source::Rational { rf, reps: None } => {
                let place = rf.canonical_representative(&rf.random_place(self.d, rng)?);
                Ok((place.label(rf.field()), Rep::Rational(place)))
            }
            Source::Elliptic { curve, reps: None } => {
                let generator = curve.generator().expect("cyclic");
                let place = curve.canonical_representative(&curve.random_place(self.d, rng)?, &generator)?;
                Ok((ec_place_label(curve, &place)?, Rep::Elliptic(place)))
            }
        }
    }

    fn basis(&self, rep: &Rep) -> Result<RepBasis> {
        match (&self.source, rep) {
            (Source::Rational { rf, .. }, Rep::Rational(place)) => Ok(RepBasis::Rational {
                basis: rf.riemann_roch_basis(place)?,
                pole: PoleInfo { place: place.label(rf.field()), order: 1, reduced_order: 1, degree: place.degree() },
            }),
            (Source::Elliptic { curve, .. }, Rep::Elliptic(place)) => {
                let g = Divisor::single(place.clone(), self.k as i64);
                Ok(RepBasis::Elliptic {
                    basis: curve.riemann_roch_basis(&g)?,
                    place: place.clone(),
                    label: ec_place_label(curve, place)?,
                })
            }
            _ => unreachable!("representative matches its source"),
        }
    }

    /// Builds the member with coefficient vector `c` on `basis`, or `None`
    /// when it is constant or fails the coprime pole-order filter.
    fn member(&self, orbit_id: &str, basis: &RepBasis, c: &[Gf]) -> Result<Option<Sequence>> {
        if c[1..].iter().all(Gf::is_zero) {
            return Ok(None);
        }
        let p = self.orbit.field().characteristic() as i64;
        let (z, pole) = match (basis, &self.source) {
            (RepBasis::Rational { basis, pole }, Source::Rational { rf, .. }) => {
                (SeqFunction::Rational(rf.combine(basis, c)), pole.clone())
            }
            (RepBasis::Elliptic { basis, place, label }, Source::Elliptic { curve, .. }) => {
                let z = curve.combine(basis, c);
                let order = if self.k == 1 { 1 } else { -curve.valuation(&z, place)? };
                if order % p == 0 {
                    return Ok(None);
                }
                let pole = PoleInfo { place: label.clone(), order, reduced_order: order as u64, degree: place.degree() };
                (SeqFunction::Elliptic(z), pole)
            }
            _ => unreachable!("basis matches its source"),
        };
        let digits = digits_of(&self.orbit, &z)?;
        Ok(Some(Sequence { digits, provenance: base_provenance(&self.orbit, &z, orbit_id.to_string(), vec![pole]) }))
    }

    /// Family members as a lazy, deterministic stream.
    pub fn iter(&self) -> FamilyIter<'_> {
        let rng = match self.policy {
            Policy::Sample { seed, .. } => Some(ChaCha8Rng::seed_from_u64(seed)),
            Policy::Exhaustive => None,
        };
        FamilyIter { family: self, rng, emitted: 0, rep_index: 0, current: None, counter: 0, cache: BTreeMap::new() }
    }
}

/// Members of a family; see [`Family::iter`].
pub fn build_family(family: &Family) -> FamilyIter<'_> {
    family.iter()
}

#[derive(Clone, Debug)]
enum RepBasis {
    Rational { basis: Vec<RatFunction>, pole: PoleInfo },
    Elliptic { basis: Vec<ECFunction>, place: ECPlace, label: String },
}

impl RepBasis {
    fn dim(&self) -> usize {
        match self {
            RepBasis::Rational { basis, .. } => basis.len(),
            RepBasis::Elliptic { basis, .. } => basis.len(),
        }
    }
}

pub struct FamilyIter<'a> {
    family: &'a Family,
    rng: Option<ChaCha8Rng>,
    emitted: usize,
    rep_index: usize,
    current: Option<(String, RepBasis)>,
    counter: u128,
    cache: BTreeMap<String, RepBasis>,
}

impl FamilyIter<'_> {
    fn next_exhaustive(&mut self) -> Option<Result<Sequence>> {
        let fam = self.family;
        let reps = fam.representative_count()?;
        let f = fam.orbit.field().clone();
        let q = f.order() as u128;
        loop {
            if self.current.is_none() {
                if self.rep_index >= reps {
                    return None;
                }
                let rep = fam.rep_at(self.rep_index);
                match fam.basis(&rep) {
                    Ok(b) => self.current = Some((format!("Q{}", self.rep_index + 1), b)),
                    Err(e) => {
                        self.rep_index = reps;
                        return Some(Err(e));
                    }
                }
                self.counter = 0;
            }
            let (id, basis) = self.current.as_ref().expect("set above");
            let dim = basis.dim();
            if self.counter >= q.pow(dim as u32) {
                self.current = None;
                self.rep_index += 1;
                continue;
            }
            let mut rest = self.counter;
            self.counter += 1;
            let c: Vec<Gf> = (0..dim)
                .map(|_| {
                    let digit = (rest % q) as u64;
                    rest /= q;
                    f.from_index(digit)
                })
                .collect();
            match fam.member(id, basis, &c) {
                Ok(None) => continue,
                Ok(Some(s)) => return Some(Ok(s)),
                Err(e) => return Some(Err(e)),
            }
        }
    }

    fn next_sample(&mut self, count: usize) -> Option<Result<Sequence>> {
        if self.emitted >= count {
            return None;
        }
        let fam = self.family;
        let f = fam.orbit.field().clone();
        let rng = self.rng.as_mut().expect("sampling rng");
        let (id, rep) = match fam.random_rep(rng) {
            Ok(x) => x,
            Err(e) => return Some(Err(e)),
        };
        if !self.cache.contains_key(&id) {
            match fam.basis(&rep) {
                Ok(b) => {
                    self.cache.insert(id.clone(), b);
                }
                Err(e) => return Some(Err(e)),
            }
        }
        let basis = &self.cache[&id];
        loop {
            let rng = self.rng.as_mut().expect("sampling rng");
            let c: Vec<Gf> = (0..basis.dim()).map(|_| f.random(rng)).collect();
            match fam.member(&id, basis, &c) {
                Ok(None) => continue,
                Ok(Some(s)) => {
                    self.emitted += 1;
                    return Some(Ok(s));
                }
                Err(e) => return Some(Err(e)),
            }
        }
    }
}

impl Iterator for FamilyIter<'_> {
    type Item = Result<Sequence>;

    fn next(&mut self) -> Option<Self::Item> {
        match self.family.policy {
            Policy::Exhaustive => self.next_exhaustive(),
            Policy::Sample { count, .. } => self.next_sample(count),
        }
    }
}

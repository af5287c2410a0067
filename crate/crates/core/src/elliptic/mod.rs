//! Cyclic elliptic curves over `F_q` and their function fields.

mod function;
mod model;
mod places;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

pub use function::ECFunction;
pub use model::{ECPoint, WeierstrassModel};
pub use places::ECPlace;

use crate::error::{Error, Result};
use crate::galois::{checked_size, mobius_invert, ExtEmbedding, Field, Gf, DEFAULT_SIZE_CAP};

/// Extension fields used only for arithmetic, never enumerated.
pub(crate) const ARITHMETIC_CAP: u64 = 1 << 62;

/// A curve over `F_q` in one of its extensions, with the embedding.
#[derive(Debug)]
pub struct CurveExtension {
    pub embedding: ExtEmbedding,
    pub model: WeierstrassModel,
}

/// An elliptic curve over `F_q` with its group order and, when the group is
/// cyclic, a generator.
#[derive(Debug)]
pub struct Curve {
    model: WeierstrassModel,
    order: u64,
    generator: Option<ECPoint>,
    cap: u64,
    extensions: Mutex<BTreeMap<usize, Arc<CurveExtension>>>,
}

impl Clone for Curve {
    fn clone(&self) -> Self {
        Curve {
            model: self.model.clone(),
            order: self.order,
            generator: self.generator,
            cap: self.cap,
            extensions: Mutex::new(BTreeMap::new()),
        }
    }
}

impl Curve {
    /// Coefficients `a1, a2, a3, a4, a6`; the group order is found by
    /// enumeration.
    pub fn new(field: Field, a: [Gf; 5]) -> Result<Curve> {
        Curve::with_cap(field, a, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(field: Field, a: [Gf; 5], cap: u64) -> Result<Curve> {
        checked_size(field.order(), 1, cap)?;
        let model = WeierstrassModel::new(field, a)?;
        let order = model.count_points();
        Ok(Curve::from_model(model, order, cap))
    }

    fn from_model(model: WeierstrassModel, order: u64, cap: u64) -> Curve {
        let generator = find_generator(&model, order);
        Curve { model, order, generator, cap, extensions: Mutex::new(BTreeMap::new()) }
    }

    /// Short form `y^2 = x^3 + a4 x + a6`.
    pub fn short(field: Field, a4: Gf, a6: Gf) -> Result<Curve> {
        let z = field.zero();
        Curve::new(field, [z, z, z, a4, a6])
    }

    pub fn model(&self) -> &WeierstrassModel {
        &self.model
    }

    pub fn field(&self) -> &Field {
        self.model.field()
    }

    pub fn q(&self) -> u64 {
        self.field().order()
    }

    pub fn coefficients(&self) -> [Gf; 5] {
        self.model.coefficients()
    }

    /// `N = #E(F_q)`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Frobenius trace `a = q + 1 - N`.
    pub fn frobenius_trace(&self) -> i64 {
        self.q() as i64 + 1 - self.order as i64
    }

    /// `t = N - q - 1`.
    pub fn t(&self) -> i64 {
        -self.frobenius_trace()
    }

    pub fn is_cyclic(&self) -> bool {
        self.generator.is_some()
    }

    /// The first point in `(x, y)` order whose order is `N`.
    pub fn generator(&self) -> Option<ECPoint> {
        self.generator
    }

    pub fn points(&self) -> Vec<ECPoint> {
        self.model.points()
    }

    pub fn add(&self, p: &ECPoint, q: &ECPoint) -> ECPoint {
        self.model.add(p, q)
    }

    pub fn neg(&self, p: &ECPoint) -> ECPoint {
        self.model.neg(p)
    }

    pub fn scalar_mul(&self, k: i128, p: &ECPoint) -> ECPoint {
        self.model.scalar_mul(k, p)
    }

    pub fn point_order(&self, p: &ECPoint) -> u64 {
        self.model.point_order(p, self.order, &crate::galois::prime_factors(self.order))
    }

    /// Curve over `F_{q^d}` (cached).
    pub fn extension(&self, d: usize) -> Result<Arc<CurveExtension>> {
        let mut cache = self.extensions.lock().expect("extension cache poisoned");
        if let Some(e) = cache.get(&d) {
            return Ok(Arc::clone(e));
        }
        let embedding = ExtEmbedding::with_cap(self.field(), d, ARITHMETIC_CAP)?;
        let a = self.coefficients().map(|c| embedding.embed(&c));
        let model = WeierstrassModel::new(embedding.ext().clone(), a)?;
        let ext = Arc::new(CurveExtension { embedding, model });
        cache.insert(d, Arc::clone(&ext));
        Ok(ext)
    }

    /// `N_b = #E(F_{q^b})` from the zeta recurrence.
    pub fn points_over_extension(&self, b: u32) -> i128 {
        let q = self.q() as i128;
        let a = self.frobenius_trace() as i128;
        let (mut s_prev, mut s) = (2i128, a);
        for _ in 1..b {
            let next = a * s - q * s_prev;
            s_prev = s;
            s = next;
        }
        let s_b = if b == 0 { 2 } else { s };
        q.pow(b) + 1 - s_b
    }

    /// Number `B_d` of places of degree `d`.
    pub fn count_places_zeta(&self, d: u32) -> Result<u128> {
        if d == 0 {
            return Err(Error::InvalidParameter("place degree must be positive".into()));
        }
        Ok(mobius_invert(d as u64, |b| self.points_over_extension(b as u32)) as u128)
    }

    pub(crate) fn cap(&self) -> u64 {
        self.cap
    }
}

fn find_generator(model: &WeierstrassModel, order: u64) -> Option<ECPoint> {
    let primes = crate::galois::prime_factors(order);
    model.points().into_iter().find(|p| model.point_order(p, order, &primes) == order)
}

/// Whether `t` meets one of the sufficient conditions for a cyclic curve
/// with `q + 1 + t` points over `F_{p^e}`.
pub fn admissible_trace(p: u64, e: usize, t: i64) -> bool {
    let q = (p as i128).pow(e as u32);
    let t = t as i128;
    let t2 = t * t;
    let coprime = t != 0 && crate::ratfield::gcd(t.unsigned_abs() as u64, p) == 1;
    let cond1 = t2 <= 4 * q && coprime;
    let cond2 = t == 0 && (e % 2 == 1 || q % 4 != 3);
    let cond3 = (e % 2 == 0 && p % 3 != 1 && t2 == q)
        || (e % 2 == 1 && (p == 2 || p == 3) && t2 == (p as i128).pow(e as u32 + 1));
    cond1 || cond2 || cond3
}

/// Scans Weierstrass coefficients in lexicographic index order for the
/// first nonsingular cyclic curve with `q + 1 + t` points.
///
/// Short form `(a4, a6)` is used for `p >= 5` and the full tuple
/// `(a1, a2, a3, a4, a6)` for `p = 2, 3`. When `t` is prime to `p`, tuples
/// with vanishing Hasse invariant are skipped: their trace is divisible by
/// `p`, so they cannot match.
pub fn search_cyclic_curve(field: &Field, t: i64) -> Result<Curve> {
    search_cyclic_curve_with_cap(field, t, DEFAULT_SIZE_CAP)
}

pub fn search_cyclic_curve_with_cap(field: &Field, t: i64, cap: u64) -> Result<Curve> {
    let (p, e, q) = (field.characteristic() as u64, field.degree(), field.order());
    if !admissible_trace(p, e, t) {
        return Err(Error::Precondition(format!("trace t={t} is not admissible over F_{q}")));
    }
    checked_size(q, 1, cap)?;
    let target = q as i64 + 1 + t;
    if target <= 0 {
        return Err(Error::NoCurve(format!("no curve with {target} points")));
    }
    let target = target as u64;
    let coprime = crate::ratfield::gcd(t.unsigned_abs(), p) == 1;
    let zero = field.zero();
    let try_tuple = |a: [Gf; 5]| -> Option<Curve> {
        let model = WeierstrassModel::new(field.clone(), a).ok()?;
        if model.count_points() != target {
            return None;
        }
        let curve = Curve::from_model(model, target, cap);
        curve.is_cyclic().then_some(curve)
    };
    if p >= 5 {
        for i4 in 0..q {
            for i6 in 0..q {
                let a = [zero, zero, zero, field.from_index(i4), field.from_index(i6)];
                if let Some(c) = try_tuple(a) {
                    return Ok(c);
                }
            }
        }
    } else {
        let total = (q as u128).pow(5);
        for idx in 0..total {
            let mut rest = idx;
            let mut digits = [0u64; 5];
            for d in digits.iter_mut().rev() {
                *d = (rest % q as u128) as u64;
                rest /= q as u128;
            }
            let a = digits.map(|i| field.from_index(i));
            if coprime && hasse_invariant_vanishes(field, &a) {
                continue;
            }
            if let Some(c) = try_tuple(a) {
                return Ok(c);
            }
        }
    }
    Err(Error::NoCurve(format!("no cyclic curve with {target} points over F_{q}")))
}

/// Supersingularity test for characteristic 2 and 3 via `a1` and `b2`.
fn hasse_invariant_vanishes(field: &Field, a: &[Gf; 5]) -> bool {
    match field.characteristic() {
        2 => a[0].is_zero(),
        3 => field.add(&field.square(&a[0]), &a[1]).is_zero(),
        _ => false,
    }
}

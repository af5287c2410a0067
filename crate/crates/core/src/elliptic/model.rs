use crate::error::{Error, Result};
use crate::galois::{Field, Gf, Poly};
use crate::series::Laurent;

/// A point of a Weierstrass curve; affine points order by `(x, y)` in index
/// order, after the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ECPoint {
    Infinity,
    Affine(Gf, Gf),
}

impl ECPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ECPoint::Infinity)
    }

    pub fn x(&self) -> Option<Gf> {
        match self {
            ECPoint::Affine(x, _) => Some(*x),
            ECPoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<Gf> {
        match self {
            ECPoint::Affine(_, y) => Some(*y),
            ECPoint::Infinity => None,
        }
    }

    pub fn map(&self, g: impl Fn(&Gf) -> Gf) -> ECPoint {
        match self {
            ECPoint::Affine(x, y) => ECPoint::Affine(g(x), g(y)),
            ECPoint::Infinity => ECPoint::Infinity,
        }
    }
}

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over a fixed field.
#[derive(Clone, Debug)]
pub struct WeierstrassModel {
    field: Field,
    a: [Gf; 5],
}

impl WeierstrassModel {
    /// Coefficients in the order `a1, a2, a3, a4, a6`.
    pub fn new(field: Field, a: [Gf; 5]) -> Result<WeierstrassModel> {
        let m = WeierstrassModel { field, a };
        if m.discriminant().is_zero() {
            return Err(Error::InvalidParameter("singular Weierstrass equation".into()));
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coefficients(&self) -> [Gf; 5] {
        self.a
    }

    pub fn discriminant(&self) -> Gf {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.a;
        let m = |a: &Gf, b: &Gf| f.mul(a, b);
        let k = |a: &Gf, n: i64| f.mul_int(a, n);
        let b2 = f.add(&m(&a1, &a1), &k(&a2, 4));
        let b4 = f.add(&k(&a4, 2), &m(&a1, &a3));
        let b6 = f.add(&m(&a3, &a3), &k(&a6, 4));
        let b8 = [
            m(&m(&a1, &a1), &a6),
            k(&m(&a2, &a6), 4),
            f.neg(&m(&m(&a1, &a3), &a4)),
            m(&a2, &m(&a3, &a3)),
            f.neg(&m(&a4, &a4)),
        ]
        .iter()
        .fold(f.zero(), |acc, t| f.add(&acc, t));
        [
            f.neg(&m(&m(&b2, &b2), &b8)),
            k(&m(&m(&b4, &b4), &b4), -8),
            k(&m(&b6, &b6), -27),
            k(&m(&m(&b2, &b4), &b6), 9),
        ]
        .iter()
        .fold(f.zero(), |acc, t| f.add(&acc, t))
    }

    /// `a1 x + a3`.
    pub fn h_poly(&self) -> Poly {
        Poly::from_coeffs(vec![self.a[2], self.a[0]])
    }

    /// `x^3 + a2 x^2 + a4 x + a6`.
    pub fn f_poly(&self) -> Poly {
        Poly::from_coeffs(vec![self.a[4], self.a[3], self.a[1], self.field.one()])
    }

    fn h_at(&self, x: &Gf) -> Gf {
        let f = &self.field;
        f.add(&f.mul(&self.a[0], x), &self.a[2])
    }

    fn f_at(&self, x: &Gf) -> Gf {
        let f = &self.field;
        let mut acc = f.add(x, &self.a[1]);
        acc = f.add(&f.mul(&acc, x), &self.a[3]);
        f.add(&f.mul(&acc, x), &self.a[4])
    }

    pub fn contains(&self, p: &ECPoint) -> bool {
        match p {
            ECPoint::Infinity => true,
            ECPoint::Affine(x, y) => {
                let f = &self.field;
                let lhs = f.mul(y, &f.add(y, &self.h_at(x)));
                lhs == self.f_at(x)
            }
        }
    }

    /// Sorted `y` with `(x, y)` on the curve.
    pub fn lift_x(&self, x: &Gf) -> Vec<Gf> {
        self.field.solve_quadratic(&self.h_at(x), &self.f_at(x))
    }

    /// Number of affine points with the given `x`.
    pub fn count_over_x(&self, x: &Gf) -> u64 {
        let f = &self.field;
        let (b, c) = (self.h_at(x), self.f_at(x));
        if f.characteristic() == 2 {
            if b.is_zero() {
                return 1;
            }
            let s = f.div(&c, &f.square(&b)).expect("nonzero");
            return if f.trace(&s) == 0 { 2 } else { 0 };
        }
        let disc = f.add(&f.square(&b), &f.mul_int(&c, 4));
        if disc.is_zero() {
            1
        } else if f.is_square(&disc) {
            2
        } else {
            0
        }
    }

    pub fn count_points(&self) -> u64 {
        1 + self.field.elements().map(|x| self.count_over_x(&x)).sum::<u64>()
    }

    /// All points: infinity first, then affine points in `(x, y)` order.
    pub fn points(&self) -> Vec<ECPoint> {
        let mut pts = vec![ECPoint::Infinity];
        let mut xs: Vec<Gf> = self.field.elements().collect();
        xs.sort();
        for x in xs {
            pts.extend(self.lift_x(&x).into_iter().map(|y| ECPoint::Affine(x, y)));
        }
        pts
    }

    pub fn neg(&self, p: &ECPoint) -> ECPoint {
        match p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine(x, y) => {
                let f = &self.field;
                ECPoint::Affine(*x, f.neg(&f.add(y, &self.h_at(x))))
            }
        }
    }

    pub fn add(&self, p: &ECPoint, q: &ECPoint) -> ECPoint {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.a;
        let (x1, y1, x2, y2) = match (p, q) {
            (ECPoint::Infinity, _) => return *q,
            (_, ECPoint::Infinity) => return *p,
            (ECPoint::Affine(x1, y1), ECPoint::Affine(x2, y2)) => (*x1, *y1, *x2, *y2),
        };
        let (lambda, nu) = if x1 == x2 {
            if f.add(&f.add(&y1, &y2), &f.add(&f.mul(&a1, &x2), &a3)).is_zero() {
                return ECPoint::Infinity;
            }
            let denom = f.add(&f.add(&f.mul_int(&y1, 2), &f.mul(&a1, &x1)), &a3);
            let x1sq = f.square(&x1);
            let num_l = [f.mul_int(&x1sq, 3), f.mul_int(&f.mul(&a2, &x1), 2), a4, f.neg(&f.mul(&a1, &y1))]
                .iter()
                .fold(f.zero(), |acc, t| f.add(&acc, t));
            let num_n = [
                f.neg(&f.mul(&x1sq, &x1)),
                f.mul(&a4, &x1),
                f.mul_int(&a6, 2),
                f.neg(&f.mul(&a3, &y1)),
            ]
            .iter()
            .fold(f.zero(), |acc, t| f.add(&acc, t));
            (f.div(&num_l, &denom).expect("nonzero"), f.div(&num_n, &denom).expect("nonzero"))
        } else {
            let dx = f.sub(&x2, &x1);
            let lambda = f.div(&f.sub(&y2, &y1), &dx).expect("nonzero");
            let nu = f.div(&f.sub(&f.mul(&y1, &x2), &f.mul(&y2, &x1)), &dx).expect("nonzero");
            (lambda, nu)
        };
        let x3 = [f.square(&lambda), f.mul(&a1, &lambda), f.neg(&a2), f.neg(&x1), f.neg(&x2)]
            .iter()
            .fold(f.zero(), |acc, t| f.add(&acc, t));
        let y3 = f.neg(&f.add(&f.add(&f.mul(&f.add(&lambda, &a1), &x3), &nu), &a3));
        ECPoint::Affine(x3, y3)
    }

    /// `add` that first checks both operands lie on this curve.
    pub fn checked_add(&self, p: &ECPoint, q: &ECPoint) -> Result<ECPoint> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::InvalidParameter("point is not on this curve".into()));
        }
        Ok(self.add(p, q))
    }

    pub fn scalar_mul(&self, k: i128, p: &ECPoint) -> ECPoint {
        let mut base = if k < 0 { self.neg(p) } else { *p };
        let mut n = k.unsigned_abs();
        let mut acc = ECPoint::Infinity;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Order of `p` in a group of order `n` with prime factors `primes`.
    pub fn point_order(&self, p: &ECPoint, n: u64, primes: &[u64]) -> u64 {
        let mut ord = n;
        for &l in primes {
            while ord % l == 0 && self.scalar_mul((ord / l) as i128, p).is_infinity() {
                ord /= l;
            }
        }
        ord
    }

    /// Series for `x` and `y` in a uniformizer at `p`, with absolute
    /// precision at least `prec`.
    pub fn local_parameters(&self, p: &ECPoint, prec: i64) -> (Laurent, Laurent) {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.a;
        let prec = prec.max(4);
        match p {
            ECPoint::Infinity => {
                // w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3,
                // with x = z/w and y = -1/w.
                let wp = prec + 8;
                let z = Laurent::monomial(f.one(), 1, wp);
                let z2 = z.mul(&z, f);
                let z3 = Laurent::monomial(f.one(), 3, wp);
                let mut w = z3.clone();
                for _ in 0..wp {
                    let w2 = w.mul(&w, f);
                    let w3 = w2.mul(&w, f);
                    w = z3
                        .add(&z.mul(&w, f).scale(&a1, f), f)
                        .add(&z2.mul(&w, f).scale(&a2, f), f)
                        .add(&w2.scale(&a3, f), f)
                        .add(&z.mul(&w2, f).scale(&a4, f), f)
                        .add(&w3.scale(&a6, f), f)
                        .truncate(wp);
                }
                let winv = w.inv(f).expect("w has a leading term");
                (z.mul(&winv, f), winv.neg(f))
            }
            ECPoint::Affine(x0, y0) => {
                let fy = f.add(&f.add(&f.mul_int(y0, 2), &f.mul(&a1, x0)), &a3);
                if !fy.is_zero() {
                    let x = Laurent::from_coeffs(0, &[*x0, f.one()], prec);
                    let hx = Laurent::from_coeffs(0, &[f.add(&f.mul(&a1, x0), &a3), a1], prec);
                    let rhs = Laurent::from_coeffs(0, self.f_poly().taylor_shift(x0, f).coeffs(), prec)
                        .sub(&hx.scale(y0, f), f)
                        .sub(&Laurent::monomial(f.square(y0), 0, prec), f);
                    let den_inv = Laurent::from_coeffs(0, &[fy, a1], prec).inv(f).expect("unit");
                    let mut eta = Laurent::zero(prec);
                    for _ in 0..prec {
                        eta = rhs.sub(&eta.mul(&eta, f), f).mul(&den_inv, f).truncate(prec);
                    }
                    let y = Laurent::monomial(*y0, 0, prec).add(&eta, f);
                    (x, y)
                } else {
                    let x0sq = f.square(x0);
                    let y = Laurent::from_coeffs(0, &[*y0, f.one()], prec);
                    // F(x0, y0 + t) = t^2 when the y-derivative vanishes.
                    let base = Laurent::monomial(f.one(), 2, prec);
                    let lin = y.scale(&a1, f).sub(
                        &Laurent::monomial(
                            [f.mul_int(&x0sq, 3), f.mul_int(&f.mul(&a2, x0), 2), a4]
                                .iter()
                                .fold(f.zero(), |acc, t| f.add(&acc, t)),
                            0,
                            prec,
                        ),
                        f,
                    );
                    let quad = f.neg(&f.add(&f.mul_int(x0, 3), &a2));
                    let lin_inv = lin.inv(f).expect("x-derivative is nonzero");
                    let mut xi = Laurent::zero(prec);
                    for _ in 0..prec {
                        let xi2 = xi.mul(&xi, f);
                        let num = base.add(&xi2.scale(&quad, f), f).sub(&xi2.mul(&xi, f), f);
                        xi = num.mul(&lin_inv, f).neg(f).truncate(prec);
                    }
                    (Laurent::monomial(*x0, 0, prec).add(&xi, f), y)
                }
            }
        }
    }
}

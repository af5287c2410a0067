//! Extension towers `F_q ⊂ F_{q^d}` realized as `F_{p^{ed}}`.

use super::field::{Field, Gf, DEFAULT_SIZE_CAP};
use super::linalg::rref;
use super::poly::Poly;
use crate::error::Result;

/// An embedding of `F_q = F_{p^e}` into `F_{q^d} = F_{p^{ed}}`.
///
/// The image of the base generator is the least root (index order) of the
/// base modulus in the extension, except for `d = 1` where the embedding is
/// the identity.
#[derive(Clone, Debug)]
pub struct ExtEmbedding {
    base: Field,
    ext: Field,
    degree: usize,
    generator_image: Gf,
    /// Images of `u^0, ..., u^{e-1}`.
    powers: Vec<Gf>,
    /// Inverse of the `F_p`-matrix whose columns are `gamma^i * beta^j`.
    coord_inverse: Vec<Vec<Gf>>,
}

impl ExtEmbedding {
    pub fn new(base: &Field, d: usize) -> Result<ExtEmbedding> {
        ExtEmbedding::with_cap(base, d, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(base: &Field, d: usize, cap: u64) -> Result<ExtEmbedding> {
        if d == 0 {
            return Err(crate::Error::InvalidParameter("extension degree must be at least 1".into()));
        }
        let p = base.characteristic();
        let e = base.degree();
        let (ext, generator_image) = if d == 1 {
            (base.clone(), base.generator())
        } else {
            let ext = Field::with_cap(p as u64, e * d, cap)?;
            let modulus = Poly::from_coeffs(
                base.modulus().iter().map(|&c| ext.from_int(c as i64)).collect(),
            );
            let root = *modulus.roots(&ext).first().expect("the base modulus splits in the extension");
            (ext, root)
        };
        let mut powers = Vec::with_capacity(e);
        let mut w = ext.one();
        for _ in 0..e {
            powers.push(w);
            w = ext.mul(&w, &generator_image);
        }
        let coord_inverse = coordinate_inverse(&ext, &powers, d);
        Ok(ExtEmbedding { base: base.clone(), ext, degree: d, generator_image, powers, coord_inverse })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator_image(&self) -> Gf {
        self.generator_image
    }

    pub fn embed(&self, a: &Gf) -> Gf {
        let f = &self.ext;
        let mut acc = f.zero();
        for (j, w) in self.powers.iter().enumerate() {
            let c = a.coeff(j);
            if c != 0 {
                acc = f.add(&acc, &f.mul_int(w, c as i64));
            }
        }
        acc
    }

    pub fn embed_poly(&self, poly: &Poly) -> Poly {
        poly.map(|a| self.embed(a))
    }

    /// `a^q`, the Frobenius of the extension relative to the base.
    pub fn relative_frobenius(&self, a: &Gf) -> Gf {
        self.ext.pow(a, self.base.order() as u128)
    }

    /// Coordinates over the base in the basis `1, gamma, ..., gamma^{d-1}`,
    /// where `gamma` is the extension's primitive element.
    pub fn base_coordinates(&self, a: &Gf) -> Vec<Gf> {
        let e = self.base.degree();
        let n = e * self.degree;
        let p = self.base.characteristic() as u64;
        let v: Vec<u64> = (0..n).map(|k| a.coeff(k) as u64).collect();
        let flat: Vec<u32> = self
            .coord_inverse
            .iter()
            .map(|row| {
                (row.iter().zip(&v).map(|(m, x)| m.coeff(0) as u64 * x % p).sum::<u64>() % p) as u32
            })
            .collect();
        flat.chunks(e).map(Gf::from_coeffs).collect()
    }

    /// Preimage in the base, if the element lies in the embedded subfield.
    pub fn to_base(&self, a: &Gf) -> Option<Gf> {
        let coords = self.base_coordinates(a);
        coords[1..].iter().all(|c| c.is_zero()).then_some(coords[0])
    }
}

fn coordinate_inverse(ext: &Field, powers: &[Gf], d: usize) -> Vec<Vec<Gf>> {
    let e = powers.len();
    let n = e * d;
    let prime = Field::prime_unchecked(ext.characteristic());
    let gamma = ext.primitive();
    let mut columns = Vec::with_capacity(n);
    let mut g = ext.one();
    for _ in 0..d {
        for w in powers {
            columns.push(ext.mul(&g, w));
        }
        g = ext.mul(&g, &gamma);
    }
    let mut rows: Vec<Vec<Gf>> = (0..n)
        .map(|r| {
            let mut row: Vec<Gf> =
                columns.iter().map(|col| prime.from_int(col.coeff(r) as i64)).collect();
            row.extend((0..n).map(|k| if k == r { prime.one() } else { prime.zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut rows, n, &prime);
    assert_eq!(pivots.len(), n, "gamma^i * beta^j is a basis");
    rows.into_iter().map(|row| row[n..].to_vec()).collect()
}

use std::collections::BTreeMap;

/// A place of a function field, ordered deterministically.
pub trait Place: Ord + Clone {
    fn degree(&self) -> usize;
}

/// Finite formal sum of places with nonzero integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor<P: Place> {
    terms: BTreeMap<P, i64>,
}

impl<P: Place> Default for Divisor<P> {
    fn default() -> Self {
        Divisor { terms: BTreeMap::new() }
    }
}

impl<P: Place> Divisor<P> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(place: P, coeff: i64) -> Self {
        let mut d = Self::new();
        d.add_term(place, coeff);
        d
    }

    pub fn add_term(&mut self, place: P, coeff: i64) {
        let entry = self.terms.entry(place.clone()).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&place);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, k) in &other.terms {
            out.add_term(p.clone(), *k);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Divisor { terms: self.terms.iter().map(|(p, k)| (p.clone(), -k)).collect() }
    }

    pub fn coefficient(&self, place: &P) -> i64 {
        self.terms.get(place).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, k)| k * p.degree() as i64).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = &P> {
        self.terms.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&P, i64)> {
        self.terms.iter().map(|(p, k)| (p, *k))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&k| k > 0)
    }
}

impl<P: Place> FromIterator<(P, i64)> for Divisor<P> {
    fn from_iter<I: IntoIterator<Item = (P, i64)>>(iter: I) -> Self {
        let mut d = Divisor::new();
        for (p, k) in iter {
            d.add_term(p, k);
        }
        d
    }
}

//! Bounds on period, linear complexity, correlation, pattern distribution
//! and nonlinear complexity, and verification of measured families.

use std::fmt;

use num_rational::Ratio;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{
    d_perfect, linear_complexity, nonlinear_complexity, pattern_count, periodic_correlation, PatternQuery,
    DEFAULT_MONOMIAL_CAP,
};
use crate::error::{Error, Result};
use crate::seqgen::{least_period, Construction, Sequence};

/// Tolerance on real-valued comparisons.
pub const TOLERANCE: f64 = 1e-6;

/// Every symbol the bounds depend on.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundInputs {
    pub q: u64,
    pub p: u64,
    /// `q = p^h`.
    pub h: u32,
    pub genus: u32,
    /// Orbit length.
    pub n: u64,
    /// Degree of the pole.
    pub d: u64,
    /// Reduced pole order `m*`.
    pub m_star: u64,
    pub r: u32,
    pub m: u32,
    /// Elliptic `t = N - q - 1`.
    pub t: i64,
}

impl BoundInputs {
    fn sqrt_q(&self) -> f64 {
        (self.q as f64).sqrt()
    }

    fn two_g_minus_two(&self) -> f64 {
        2.0 * self.genus as f64 - 2.0
    }
}

/// `(2g - 2 + sum_u (m*_u + 1) deg u) sqrt(q)` for poles `(m*_u, deg u)`.
pub fn weil_bound(genus: u32, q: u64, poles: &[(u64, u64)]) -> f64 {
    let s: f64 = poles.iter().map(|&(m, d)| (m as f64 + 1.0) * d as f64).sum();
    (2.0 * genus as f64 - 2.0 + s) * (q as f64).sqrt()
}

/// Rational places only, every pole of degree one: `(-2 + sum (m*_u + 1)) sqrt(q)`.
pub fn weil_bound_rational_degree_one(q: u64, pole_orders: &[u64]) -> f64 {
    let poles: Vec<(u64, u64)> = pole_orders.iter().map(|&m| (m, 1)).collect();
    weil_bound(0, q, &poles)
}

/// Genus one: `sum (m*_u + 1) deg u sqrt(q)`.
pub fn weil_bound_elliptic(q: u64, poles: &[(u64, u64)]) -> f64 {
    weil_bound(1, q, poles)
}

/// Unique pole of order one on a genus one field: `2 deg((f)_inf) sqrt(q)`.
pub fn weil_bound_unique_simple_pole(q: u64, pole_degree: u64) -> f64 {
    2.0 * pole_degree as f64 * (q as f64).sqrt()
}

/// Period `n` is guaranteed once `n > (2g - 2 + 2(m* + 1)d) sqrt(q)`.
pub fn period_guarantee(b: &BoundInputs) -> f64 {
    (b.two_g_minus_two() + 2.0 * (b.m_star as f64 + 1.0) * b.d as f64) * b.sqrt_q()
}

/// `(n - m* d) / (m* d + 1)`, valid for `q = p`.
pub fn lc_bound_prime(b: &BoundInputs) -> f64 {
    let md = (b.m_star * b.d) as f64;
    (b.n as f64 - md) / (md + 1.0)
}

/// `(n - (2g - 2) sqrt(q)) / ((m* + 1) d sqrt(q)) - 1`.
pub fn lc_bound_general(b: &BoundInputs) -> f64 {
    (b.n as f64 - b.two_g_minus_two() * b.sqrt_q()) / ((b.m_star as f64 + 1.0) * b.d as f64 * b.sqrt_q()) - 1.0
}

/// The linear complexity bound that applies: the prime form when `q = p`.
pub fn lc_bound(b: &BoundInputs) -> f64 {
    if b.q == b.p {
        lc_bound_prime(b)
    } else {
        lc_bound_general(b)
    }
}

/// Which correlation bound covers a (shift, pole, function) combination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrelationCase {
    /// `0 < tau < n`.
    Shifted,
    /// `tau = 0` and `Q1 != Q2`.
    InPhaseDistinctPoles,
    /// `tau = 0`, `Q1 = Q2`, `z1 != z2`.
    InPhaseSamePole,
    /// `tau = 0` and `z1 = z2`: not covered.
    Excluded,
}

impl CorrelationCase {
    pub fn classify(tau: u64, n: u64, same_pole: bool, same_function: bool) -> CorrelationCase {
        if tau % n != 0 {
            CorrelationCase::Shifted
        } else if !same_pole {
            CorrelationCase::InPhaseDistinctPoles
        } else if !same_function {
            CorrelationCase::InPhaseSamePole
        } else {
            CorrelationCase::Excluded
        }
    }
}

/// Correlation bound for poles `(m*_1, d_1)` and `(m*_2, d_2)`.
pub fn correlation_bound(genus: u32, q: u64, first: (u64, u64), second: (u64, u64), case: CorrelationCase) -> Option<f64> {
    match case {
        CorrelationCase::Shifted | CorrelationCase::InPhaseDistinctPoles => Some(weil_bound(genus, q, &[first, second])),
        CorrelationCase::InPhaseSamePole => Some(weil_bound(genus, q, &[first])),
        CorrelationCase::Excluded => None,
    }
}

/// `(2g - 2) sqrt(q) + d r sqrt(q) (m* + 1)(1 - 1/p)`, bounding `|N - n/p^r|`.
pub fn pattern_bound(b: &BoundInputs) -> f64 {
    let sq = b.sqrt_q();
    b.two_g_minus_two() * sq + (b.d * b.r as u64) as f64 * sq * (b.m_star as f64 + 1.0) * (1.0 - 1.0 / b.p as f64)
}

/// `(n - p^{h-1} m* d) / (1 + m p^{h-1} m* d)`.
pub fn nlc_bound(b: &BoundInputs) -> f64 {
    let k = (b.p as f64).powi(b.h as i32 - 1) * (b.m_star * b.d) as f64;
    (b.n as f64 - k) / (1.0 + b.m as f64 * k)
}

/// Right side of the printed `|2L - n|` corollary; flagged as suspect.
pub fn lc_deviation_corollary(b: &BoundInputs) -> f64 {
    let md = (b.m_star as f64 + 1.0) * b.d as f64;
    let n = b.n as f64;
    (2.0 * n - (2.0 * b.two_g_minus_two() + (n + 2.0) * md) * b.sqrt_q()) / (md * b.sqrt_q())
}

/// Printed rational perfectness statement at prefix length `len`:
/// `(bound on |2L_len - len|, threshold on d)`; flagged as suspect.
pub fn perfectness_rational(q: u64, d: u64, len: u64) -> (f64, f64) {
    let (sq, d, t) = ((q as f64).sqrt(), d as f64, len as f64);
    ((t - (-2.0 + (t + 2.0) * d) * sq) / (d * sq), (t + 2.0 * sq) / (sq * (t + 3.0)))
}

/// Printed elliptic perfectness statement at prefix length `len`; flagged as suspect.
pub fn perfectness_elliptic(q: u64, d: u64, len: u64) -> (f64, f64) {
    let (sq, d, s) = ((q as f64).sqrt(), d as f64, len as f64);
    ((s - (s + 2.0) * d * sq) / (d * sq), s / (sq * (s + 3.0)))
}

/// Exact `a + b sqrt(q)` with rational `a` and `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Surd {
    pub q: u64,
    pub a: Rational,
    pub b: Rational,
}

pub type Rational = Ratio<i128>;

impl Surd {
    pub fn new(q: u64, a: Rational, b: Rational) -> Surd {
        Surd { q, a, b }
    }

    pub fn int(q: u64, n: i128) -> Surd {
        Surd::new(q, Rational::from_integer(n), Rational::from_integer(0))
    }

    /// `n sqrt(q)`.
    pub fn sqrt(q: u64, n: i128) -> Surd {
        Surd::new(q, Rational::from_integer(0), Rational::from_integer(n))
    }

    pub fn add(&self, o: &Surd) -> Surd {
        Surd::new(self.q, self.a + o.a, self.b + o.b)
    }

    pub fn sub(&self, o: &Surd) -> Surd {
        Surd::new(self.q, self.a - o.a, self.b - o.b)
    }

    /// `self / (k sqrt(q))`.
    pub fn div_sqrt(&self, k: i128) -> Surd {
        let q = self.q as i128;
        Surd::new(self.q, self.b / k, self.a / (k * q))
    }

    /// Exact sign of `a + b sqrt(q)`.
    pub fn signum(&self) -> i32 {
        let sign = |r: &Rational| (*r.numer()).signum() as i32;
        let (sa, sb) = (sign(&self.a), sign(&self.b));
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: compare a^2 with b^2 q.
        let a2 = self.a * self.a;
        let b2q = self.b * self.b * Rational::from_integer(self.q as i128);
        match a2.cmp(&b2q) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let r = |x: &Rational| *x.numer() as f64 / *x.denom() as f64;
        r(&self.a) + r(&self.b) * (self.q as f64).sqrt()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.q)
    }
}

impl Serialize for Surd {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The printed comparison with the earlier binary constructions, in exact
/// arithmetic over `Q(sqrt(q))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRemarks {
    pub q: u64,
    pub d: u64,
    pub t: i64,
    pub l1: Surd,
    pub l1_prime: Surd,
    pub c1: Surd,
    pub c1_prime: Surd,
    pub l2: Surd,
    pub l2_prime: Surd,
    pub c2: Surd,
    pub c2_prime: Surd,
    pub l1_diff: Surd,
    pub c1_diff: Surd,
    pub l2_diff: Surd,
    pub c2_diff: Surd,
    /// `L1 > L1'`.
    pub l1_greater: bool,
    /// `C1 < C1'`.
    pub c1_smaller: bool,
    /// `L2 >= L2'`, with equality only at `t = 2 sqrt(q)`.
    pub l2_not_smaller: bool,
    /// `C2 < C2'`.
    pub c2_smaller: bool,
}

pub fn comparison_remarks(q: u64, d: u64, t: i64) -> ComparisonRemarks {
    let (d, t) = (d as i128, t as i128);
    let int = |n: i128| Surd::int(q, n);
    let sqrt = |n: i128| Surd::sqrt(q, n);
    let qi = q as i128;
    let l1 = int(qi - 1).sub(&sqrt(2 * (d - 1))).div_sqrt(2 * d);
    let l1_prime = int(qi - 3).sub(&sqrt(2 * (d - 1))).div_sqrt(2 * d);
    let c1 = sqrt(2 * (2 * d - 1));
    let c1_prime = c1.add(&int(6));
    let l2 = int(qi + 1 + t).sub(&sqrt(2 * d)).div_sqrt(2 * d);
    let l2_prime = int(qi + 1 + 2 * t).sub(&sqrt(2 * (d + 1))).div_sqrt(2 * d);
    let c2 = sqrt(4 * d);
    let c2_prime = sqrt(2 * (2 * d + 1)).add(&int(t.abs()));
    let (l1_diff, c1_diff, l2_diff, c2_diff) = (l1.sub(&l1_prime), c1.sub(&c1_prime), l2.sub(&l2_prime), c2.sub(&c2_prime));
    ComparisonRemarks {
        q,
        d: d as u64,
        t: t as i64,
        l1,
        l1_prime,
        c1,
        c1_prime,
        l2,
        l2_prime,
        c2,
        c2_prime,
        l1_diff,
        c1_diff,
        l2_diff,
        c2_diff,
        l1_greater: l1_diff.signum() > 0,
        c1_smaller: c1_diff.signum() < 0,
        l2_not_smaller: l2_diff.signum() >= 0,
        c2_smaller: c2_diff.signum() < 0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The bound is nonpositive or its hypothesis is not met.
    Vacuous,
    /// Reported only; never counted as pass or fail.
    Flagged,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `measured >= bound`.
    Lower,
    /// `measured <= bound`.
    Upper,
    /// `measured == bound`.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub id: String,
    pub kind: String,
    pub measured: f64,
    pub bound: f64,
    pub direction: Direction,
    pub status: CheckStatus,
    pub pass: bool,
    pub flags: Vec<String>,
}

impl BoundCheck {
    fn new(id: String, kind: &str, measured: f64, bound: f64, direction: Direction) -> BoundCheck {
        let holds = match direction {
            Direction::Lower => measured >= bound - TOLERANCE,
            Direction::Upper => measured <= bound + TOLERANCE,
            Direction::Exact => (measured - bound).abs() <= TOLERANCE,
        };
        let status = if holds { CheckStatus::Pass } else { CheckStatus::Fail };
        BoundCheck { id, kind: kind.to_string(), measured, bound, direction, status, pass: holds, flags: Vec::new() }
    }

    fn with_status(mut self, status: CheckStatus, flag: &str) -> BoundCheck {
        self.status = status;
        self.pass = !matches!(status, CheckStatus::Fail);
        self.flags.push(flag.to_string());
        self
    }

    /// `bound - measured` for upper bounds and `measured - bound` for lower bounds.
    pub fn slack(&self) -> f64 {
        match self.direction {
            Direction::Lower => self.measured - self.bound,
            Direction::Upper => self.bound - self.measured,
            Direction::Exact => -(self.measured - self.bound).abs(),
        }
    }

    /// How close the measurement comes to the bound, in `[0, 1]` when it holds.
    pub fn tightness(&self) -> Option<f64> {
        match self.direction {
            Direction::Upper if self.bound > 0.0 => Some(self.measured / self.bound),
            Direction::Lower if self.measured > 0.0 && self.bound > 0.0 => Some(self.bound / self.measured),
            _ => None,
        }
    }
}

/// Which checks to run and how much to sample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub period: bool,
    pub lc: bool,
    /// Number of sequence pairs for correlation; every shift is examined.
    pub correlation_pairs: usize,
    /// Include each sequence's autocorrelation among the pairs.
    pub autocorrelation: bool,
    pub pattern_arities: Vec<u32>,
    /// Position vectors per sequence and arity; all value vectors are
    /// examined when `p^r <= 256`.
    pub pattern_positions: usize,
    pub pattern_sequences: usize,
    /// Degree for the nonlinear complexity check.
    pub nl_degree: Option<u32>,
    pub nl_sequences: usize,
    pub monomial_cap: usize,
    /// Report the flagged corollary and perfectness statements.
    pub suspect: bool,
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig {
            seed: 0,
            period: true,
            lc: true,
            correlation_pairs: 100,
            autocorrelation: true,
            pattern_arities: vec![1, 2],
            pattern_positions: 50,
            pattern_sequences: 20,
            nl_degree: None,
            nl_sequences: 10,
            monomial_cap: DEFAULT_MONOMIAL_CAP,
            suspect: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyParams {
    pub construction: Construction,
    pub p: u64,
    pub e: usize,
    pub q: u64,
    pub genus: u32,
    pub n: u64,
    pub t: Option<i64>,
    pub curve: Option<String>,
    pub sequences: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregates {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub vacuous: usize,
    pub flagged: usize,
    pub skipped: usize,
    /// Least slack among checks that were decided.
    pub min_slack: Option<f64>,
    /// Counts of decided checks by tightness in tenths, then one bin above 1.
    pub tightness_histogram: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub params: FamilyParams,
    pub config: VerifyConfig,
    pub checks: Vec<BoundCheck>,
    pub aggregates: Aggregates,
}

impl VerificationReport {
    /// Whether every check that is not flagged holds.
    pub fn all_pass(&self) -> bool {
        self.aggregates.failed == 0
    }

    fn aggregate(checks: &[BoundCheck]) -> Aggregates {
        let count = |s: CheckStatus| checks.iter().filter(|c| c.status == s).count();
        let decided = checks.iter().filter(|c| matches!(c.status, CheckStatus::Pass | CheckStatus::Fail));
        let min_slack = decided.clone().map(BoundCheck::slack).fold(None, |m: Option<f64>, s| Some(m.map_or(s, |m| m.min(s))));
        let mut tightness_histogram = vec![0u64; 11];
        for t in decided.filter_map(BoundCheck::tightness) {
            let bin = if t > 1.0 { 10 } else { ((t.max(0.0) * 10.0) as usize).min(9) };
            tightness_histogram[bin] += 1;
        }
        Aggregates {
            total: checks.len(),
            passed: count(CheckStatus::Pass),
            failed: count(CheckStatus::Fail),
            vacuous: count(CheckStatus::Vacuous),
            flagged: count(CheckStatus::Flagged),
            skipped: count(CheckStatus::Skipped),
            min_slack,
            tightness_histogram,
        }
    }
}

struct PoleData {
    label: String,
    m_star: u64,
    d: u64,
}

fn pole_data(s: &Sequence) -> Result<PoleData> {
    let pole = s.provenance.unique_pole().ok_or(Error::MissingProvenance("unique pole"))?;
    Ok(PoleData { label: pole.place.clone(), m_star: pole.reduced_order, d: pole.degree as u64 })
}

fn family_params(seqs: &[Sequence]) -> Result<FamilyParams> {
    let first = seqs.first().ok_or(Error::MissingProvenance("sequences"))?;
    let pr = &first.provenance;
    let n = first.digits.len() as u64;
    if seqs.iter().any(|s| s.digits.len() as u64 != n || s.provenance.q != pr.q || s.provenance.construction != pr.construction) {
        return Err(Error::Mismatch("sequences come from different families".into()));
    }
    let (genus, t) = match pr.construction {
        Construction::Rational => (0, None),
        Construction::Elliptic => (1, Some(n as i64 - pr.q as i64 - 1)),
    };
    Ok(FamilyParams {
        construction: pr.construction,
        p: pr.p,
        e: pr.e,
        q: pr.q,
        genus,
        n,
        t,
        curve: pr.curve.clone(),
        sequences: seqs.len(),
    })
}

fn inputs(params: &FamilyParams, pole: &PoleData) -> BoundInputs {
    BoundInputs {
        q: params.q,
        p: params.p,
        h: params.e as u32,
        genus: params.genus,
        n: params.n,
        d: pole.d,
        m_star: pole.m_star,
        r: 1,
        m: 1,
        t: params.t.unwrap_or(0),
    }
}

fn vacuous_if_nonpositive(check: BoundCheck) -> BoundCheck {
    if check.bound <= 0.0 && check.direction == Direction::Lower {
        check.with_status(CheckStatus::Vacuous, "nonpositive lower bound")
    } else {
        check
    }
}

fn sequence_checks(params: &FamilyParams, cfg: &VerifyConfig, i: usize, s: &Sequence, pole: &PoleData, out: &mut Vec<BoundCheck>) {
    let b = inputs(params, pole);
    let p = params.p as u32;
    if cfg.period {
        let threshold = period_guarantee(&b);
        let period = least_period(&s.digits) as f64;
        let check = BoundCheck::new(format!("period/{i}"), "period", period, params.n as f64, Direction::Exact);
        out.push(if (params.n as f64) > threshold {
            check
        } else {
            check.with_status(CheckStatus::Vacuous, "orbit length below period threshold")
        });
    }
    if cfg.lc {
        let lc = linear_complexity(&s.digits, p) as f64;
        let kind = if params.q == params.p { "lc-prime" } else { "lc-general" };
        out.push(vacuous_if_nonpositive(BoundCheck::new(format!("{kind}/{i}"), kind, lc, lc_bound(&b), Direction::Lower)));
        if cfg.suspect {
            let rhs = lc_deviation_corollary(&b);
            let check = BoundCheck::new(format!("lc-deviation/{i}"), "lc-deviation", (2.0 * lc - params.n as f64).abs(), rhs, Direction::Upper);
            out.push(check.with_status(CheckStatus::Flagged, "suspect formula"));
        }
    }
    if cfg.suspect {
        let perfect = d_perfect(&s.digits, p, 1);
        let threshold = match params.construction {
            Construction::Rational => perfectness_rational(params.q, pole.d, params.n).1,
            Construction::Elliptic => perfectness_elliptic(params.q, pole.d, params.n).1,
        };
        let mut check = BoundCheck::new(format!("perfect/{i}"), "perfect", if perfect { 1.0 } else { 0.0 }, 1.0, Direction::Exact);
        check.flags.push(format!("printed d threshold {threshold:.6}"));
        out.push(check.with_status(CheckStatus::Flagged, "suspect formula"));
    }
}

fn pattern_checks<R: Rng>(params: &FamilyParams, cfg: &VerifyConfig, i: usize, s: &Sequence, pole: &PoleData, rng: &mut R, out: &mut Vec<BoundCheck>) -> Result<()> {
    let n = params.n as usize;
    let p = params.p as u32;
    for &r in &cfg.pattern_arities {
        if r == 0 || r as usize > n {
            continue;
        }
        let b = BoundInputs { r, ..inputs(params, pole) };
        let bound = pattern_bound(&b);
        let expected = params.n as f64 / (params.p as f64).powi(r as i32);
        let all_values = (params.p as u128).pow(r) <= 256;
        let mut worst = 0.0f64;
        let mut tuples = 0usize;
        for _ in 0..cfg.pattern_positions {
            let mut positions: Vec<usize> = sample(rng, n, r as usize).into_vec();
            positions.sort_unstable();
            let value_sets: Vec<Vec<u32>> = if all_values {
                (0..(p as u64).pow(r))
                    .map(|mut k| {
                        (0..r)
                            .map(|_| {
                                let v = (k % p as u64) as u32;
                                k /= p as u64;
                                v
                            })
                            .collect()
                    })
                    .collect()
            } else {
                vec![(0..r).map(|_| rng.gen_range(0..p)).collect()]
            };
            for values in value_sets {
                let query = PatternQuery::new(values, positions.clone(), n, p)?;
                worst = worst.max((pattern_count(&s.digits, &query) as f64 - expected).abs());
                tuples += 1;
            }
        }
        let mut check = BoundCheck::new(format!("pattern/{i}/r{r}"), "pattern", worst, bound, Direction::Upper);
        check.flags.push(format!("{tuples} tuples"));
        out.push(check);
    }
    Ok(())
}

fn correlation_checks(params: &FamilyParams, pairs: &[(usize, usize)], seqs: &[Sequence], poles: &[PoleData], out: &mut Vec<BoundCheck>) -> Result<()> {
    let n = params.n;
    let p = params.p as u32;
    for &(i, j) in pairs {
        let (pi, pj) = (&poles[i], &poles[j]);
        let same_pole = pi.label == pj.label;
        let same_function = seqs[i].provenance.function == seqs[j].provenance.function && seqs[i].provenance.orbit_id == seqs[j].provenance.orbit_id;
        let mut shifted = 0.0f64;
        let mut in_phase = None;
        for tau in 0..n {
            let c = periodic_correlation(&seqs[i].digits, &seqs[j].digits, tau as usize, p)?;
            match CorrelationCase::classify(tau, n, same_pole, same_function) {
                CorrelationCase::Shifted | CorrelationCase::InPhaseDistinctPoles => shifted = shifted.max(c.magnitude()),
                CorrelationCase::InPhaseSamePole => in_phase = Some(c),
                CorrelationCase::Excluded => {}
            }
        }
        let two = correlation_bound(params.genus, params.q, (pi.m_star, pi.d), (pj.m_star, pj.d), CorrelationCase::Shifted).expect("covered");
        out.push(BoundCheck::new(format!("corr/{i}/{j}"), "correlation", shifted, two, Direction::Upper));
        if let Some(c) = in_phase {
            let one = correlation_bound(params.genus, params.q, (pi.m_star, pi.d), (pj.m_star, pj.d), CorrelationCase::InPhaseSamePole).expect("covered");
            let check = BoundCheck::new(format!("corr/{i}/{j}/in-phase"), "correlation-in-phase", c.magnitude(), one, Direction::Upper);
            // A constant difference z1 - z2 is degenerate and outside the hypothesis.
            let constant = c.table.counts.iter().filter(|&&k| k > 0).count() == 1;
            out.push(if constant { check.with_status(CheckStatus::Vacuous, "difference of functions is constant") } else { check });
        }
    }
    Ok(())
}

/// Measures a family against every applicable bound.
pub fn verify_family(seqs: &[Sequence], cfg: &VerifyConfig) -> Result<VerificationReport> {
    let params = family_params(seqs)?;
    let poles: Vec<PoleData> = seqs.iter().map(pole_data).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut checks = Vec::new();
    for (i, (s, pole)) in seqs.iter().zip(&poles).enumerate() {
        sequence_checks(&params, cfg, i, s, pole, &mut checks);
    }
    for (i, (s, pole)) in seqs.iter().zip(&poles).enumerate().take(cfg.pattern_sequences) {
        pattern_checks(&params, cfg, i, s, pole, &mut rng, &mut checks)?;
    }
    if let Some(m) = cfg.nl_degree {
        for (i, (s, pole)) in seqs.iter().zip(&poles).enumerate().take(cfg.nl_sequences) {
            let b = BoundInputs { m, ..inputs(&params, pole) };
            let bound = nlc_bound(&b);
            let kind = format!("nl{m}");
            let check = match nonlinear_complexity(&s.digits, params.p as u32, m as usize, cfg.monomial_cap) {
                Ok(nl) => vacuous_if_nonpositive(BoundCheck::new(format!("{kind}/{i}"), &kind, nl as f64, bound, Direction::Lower)),
                Err(Error::MonomialCap { .. }) => BoundCheck::new(format!("{kind}/{i}"), &kind, 0.0, bound, Direction::Lower)
                    .with_status(CheckStatus::Skipped, "monomial cap exceeded"),
                Err(e) => return Err(e),
            };
            checks.push(check);
        }
    }
    let pairs = sample_pairs(seqs.len(), cfg.correlation_pairs, cfg.autocorrelation, &mut rng);
    correlation_checks(&params, &pairs, seqs, &poles, &mut checks)?;
    let aggregates = VerificationReport::aggregate(&checks);
    Ok(VerificationReport { params, config: cfg.clone(), checks, aggregates })
}

/// Distinct index pairs `i < j` (or `i <= j` with autocorrelation), all of
/// them when few enough, otherwise a seeded sample in sorted order.
fn sample_pairs<R: Rng>(len: usize, count: usize, auto: bool, rng: &mut R) -> Vec<(usize, usize)> {
    let all: Vec<(usize, usize)> = (0..len)
        .flat_map(|i| (if auto { i } else { i + 1 }..len).map(move |j| (i, j)))
        .collect();
    if all.len() <= count {
        return all;
    }
    let mut picked = sample(rng, all.len(), count).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|k| all[k]).collect()
}

//! Exact verification of the constant inequalities behind the `250 r`
//! bound and the stability argument.
//!
//! Every inequality is stated as `lhs < rhs` (or `lhs <= rhs`) between
//! nonnegative quantities and decided with big rationals. The certificate is
//! the ratio `lhs / rhs`, exact where possible and an enclosing interval when
//! a root is involved. Items that the argument only needs for large `n` or
//! `r` carry `asymptotic = true`; their verdict is exact for the parameters
//! given, not a universal claim.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::exact::{binomial, int, pow, rat, to_scientific, Interval, Rounding};
use super::stability::{deficiency_coefficient, degree_base, stability_base};
use crate::error::{invalid, Result};

/// The constant `A` of the linear Ramsey bound.
pub const DEFAULT_A: u64 = 250;

/// Inequalities the verifier knows about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Inequality {
    /// `r (24/25)^k C(Ar-1, k-1) < C((A-1)r, k)`, per `r`.
    ColorClassCount,
    /// `k (24/25)^k A^(k-1) < (A-1)^k`, the large-`r` limit of the above.
    ColorClassLeadingTerms,
    /// `k < (99/96)^k`.
    LinearBelowExponential,
    /// `99/100 <= 1 - 1/A`.
    VertexLossRatio,
    /// `(9/10)^k < (k-1)/(32k) (24/25)^(2k)`, the averaging step with
    /// `n C(n-1,k-2) / C(n-1,k-1) >= k-1` substituted.
    ShadowAveraging,
    /// `1/(3k) < (1/k) ((k-1)/k)^(k-1)`, the probability of a proper set.
    ProperSetProbability,
    /// `(9/10)^k < (24/25)^k / (144k)`, the greedy balance condition.
    GreedyBalance,
    /// `(24/25)^2 < (24/25)^(k/(k-1))` and `9/10 < (24/25)^2`.
    PowerOrdering,
    /// `(1/10)^(k-2) (k-1) < (9/10)^k`.
    RootGap,
    /// `(1 - ((9/10)^k/(k-1))^(1/(k-2)))^(k-1) < (24/25)^k`.
    StabilityCoefficient,
    /// `48 k^2 (9/10)^(k-2) < (24/25)^k`, the large-`n` form of the
    /// minimum-degree spreading step.
    DenseColorSpread,
}

impl Inequality {
    pub const ALL: [Inequality; 11] = [
        Inequality::ColorClassCount,
        Inequality::ColorClassLeadingTerms,
        Inequality::LinearBelowExponential,
        Inequality::VertexLossRatio,
        Inequality::ShadowAveraging,
        Inequality::ProperSetProbability,
        Inequality::GreedyBalance,
        Inequality::PowerOrdering,
        Inequality::RootGap,
        Inequality::StabilityCoefficient,
        Inequality::DenseColorSpread,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Inequality::ColorClassCount => "color_class_count",
            Inequality::ColorClassLeadingTerms => "color_class_leading_terms",
            Inequality::LinearBelowExponential => "linear_below_exponential",
            Inequality::VertexLossRatio => "vertex_loss_ratio",
            Inequality::ShadowAveraging => "shadow_averaging",
            Inequality::ProperSetProbability => "proper_set_probability",
            Inequality::GreedyBalance => "greedy_balance",
            Inequality::PowerOrdering => "power_ordering",
            Inequality::RootGap => "root_gap",
            Inequality::StabilityCoefficient => "stability_coefficient",
            Inequality::DenseColorSpread => "dense_color_spread",
        }
    }

    pub fn asymptotic(self) -> bool {
        matches!(
            self,
            Inequality::ColorClassCount | Inequality::DenseColorSpread
        )
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Exact `lhs / rhs`.
    Ratio(BigRational),
    /// Enclosure of `lhs / rhs`.
    Enclosure(Interval),
    /// `rhs` is zero, so no ratio exists.
    ZeroRight,
}

impl Certificate {
    pub fn bounds(&self) -> Option<(BigRational, BigRational)> {
        match self {
            Certificate::Ratio(q) => Some((q.clone(), q.clone())),
            Certificate::Enclosure(iv) => Some((iv.lo().clone(), iv.hi().clone())),
            Certificate::ZeroRight => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IneqRecord {
    pub inequality: Inequality,
    pub params: BTreeMap<&'static str, u64>,
    pub holds: Verdict,
    pub certificate: Certificate,
}

impl IneqRecord {
    pub fn name(&self) -> &'static str {
        self.inequality.name()
    }

    pub fn asymptotic(&self) -> bool {
        self.inequality.asymptotic()
    }
}

impl Serialize for IneqRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let bounds = self.certificate.bounds();
        let mut st = s.serialize_struct("IneqRecord", 6)?;
        st.serialize_field("name", self.name())?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("holds", &self.holds)?;
        st.serialize_field(
            "certificate_lo",
            &bounds
                .as_ref()
                .map(|(lo, _)| to_scientific(lo, 17, Rounding::Down)),
        )?;
        st.serialize_field(
            "certificate_hi",
            &bounds
                .as_ref()
                .map(|(_, hi)| to_scientific(hi, 17, Rounding::Up)),
        )?;
        st.serialize_field("asymptotic_flag", &self.asymptotic())?;
        st.end()
    }
}

/// All verdicts for one parameter set; serializes as a JSON array.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IneqReport {
    pub records: Vec<IneqRecord>,
}

impl Serialize for IneqReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.records.serialize(s)
    }
}

impl IneqReport {
    pub fn get(&self, which: Inequality) -> impl Iterator<Item = &IneqRecord> {
        self.records.iter().filter(move |r| r.inequality == which)
    }

    pub fn all_hold(&self) -> bool {
        self.records.iter().all(|r| r.holds == Verdict::Yes)
    }

    /// Smallest `r` for which the per-`r` color-class count was verified.
    pub fn smallest_verified_r(&self) -> Option<u64> {
        self.get(Inequality::ColorClassCount)
            .filter(|r| r.holds == Verdict::Yes)
            .filter_map(|r| r.params.get("r").copied())
            .min()
    }
}

fn params(entries: &[(&'static str, u64)]) -> BTreeMap<&'static str, u64> {
    entries.iter().copied().collect()
}

/// Decides `lhs < rhs` (or `<=`) exactly for nonnegative sides.
fn compare(lhs: BigRational, rhs: BigRational, strict: bool) -> (Verdict, Certificate) {
    let holds = if strict { lhs < rhs } else { lhs <= rhs };
    let cert = if rhs.is_zero() {
        Certificate::ZeroRight
    } else {
        Certificate::Ratio(lhs / rhs)
    };
    (if holds { Verdict::Yes } else { Verdict::No }, cert)
}

fn big(v: u64) -> BigRational {
    int(BigInt::from(v))
}

/// Evaluates one inequality. `a` is the Ramsey constant and `r` the color
/// count; each is used only by the inequalities that mention it.
pub fn evaluate(which: Inequality, k: u64, a: u64, r: u64) -> Result<IneqRecord> {
    if k < 3 {
        return Err(invalid(format!("inequalities need k >= 3 (got {k})")));
    }
    if a < 2 {
        return Err(invalid(format!(
            "the Ramsey constant must be at least 2 (got {a})"
        )));
    }
    let s = stability_base();
    let d = degree_base();
    let (p, (holds, certificate)) = match which {
        Inequality::ColorClassCount => {
            if r < 1 {
                return Err(invalid("r must be positive"));
            }
            let lhs = big(r) * pow(&s, k) * int(BigInt::from(binomial(a * r - 1, k - 1)));
            let rhs = int(BigInt::from(binomial((a - 1) * r, k)));
            (
                params(&[("k", k), ("A", a), ("r", r)]),
                compare(lhs, rhs, true),
            )
        }
        Inequality::ColorClassLeadingTerms => {
            let lhs = big(k) * pow(&s, k) * pow(&big(a), k - 1);
            let rhs = pow(&big(a - 1), k);
            (params(&[("k", k), ("A", a)]), compare(lhs, rhs, true))
        }
        Inequality::LinearBelowExponential => (
            params(&[("k", k)]),
            compare(big(k), pow(&rat(99, 96), k), true),
        ),
        Inequality::VertexLossRatio => (
            params(&[("A", a)]),
            compare(rat(99, 100), BigRational::one() - rat(1, a as i64), false),
        ),
        Inequality::ShadowAveraging => {
            let rhs = rat(k as i64 - 1, 32 * k as i64) * pow(&s, 2 * k);
            (params(&[("k", k)]), compare(pow(&d, k), rhs, true))
        }
        Inequality::ProperSetProbability => {
            let rhs = rat(1, k as i64) * pow(&rat(k as i64 - 1, k as i64), k - 1);
            (
                params(&[("k", k)]),
                compare(rat(1, 3 * k as i64), rhs, true),
            )
        }
        Inequality::GreedyBalance => {
            let rhs = pow(&s, k) / big(144 * k);
            (params(&[("k", k)]), compare(pow(&d, k), rhs, true))
        }
        Inequality::PowerOrdering => {
            // Raising to the (k-1)-th power: (24/25)^(2k-2) < (24/25)^k.
            let (first, c1) = compare(pow(&s, 2 * k - 2), pow(&s, k), true);
            let (second, _) = compare(d.clone(), pow(&s, 2), true);
            let holds = if first == Verdict::Yes && second == Verdict::Yes {
                Verdict::Yes
            } else {
                Verdict::No
            };
            (params(&[("k", k)]), (holds, c1))
        }
        Inequality::RootGap => {
            let lhs = pow(&rat(1, 10), k - 2) * big(k - 1);
            (params(&[("k", k)]), compare(lhs, pow(&d, k), true))
        }
        Inequality::StabilityCoefficient => (params(&[("k", k)]), stability_coefficient(k)?),
        Inequality::DenseColorSpread => {
            let lhs = big(48 * k * k) * pow(&d, k - 2);
            (params(&[("k", k)]), compare(lhs, pow(&s, k), true))
        }
    };
    Ok(IneqRecord {
        inequality: which,
        params: p,
        holds,
        certificate,
    })
}

/// Root-valued item: refines the enclosure until it separates from the
/// right side, giving up as `Undecided` after a fixed number of rounds.
fn stability_coefficient(k: u64) -> Result<(Verdict, Certificate)> {
    let b = pow(&degree_base(), k);
    let rhs = pow(&stability_base(), k);
    let mut precision = rhs.clone() / big(16);
    let mut last = None;
    for _ in 0..12 {
        let iv = deficiency_coefficient(&b, k as usize, &precision)?;
        let ratio = Interval::new(iv.lo() / &rhs, iv.hi() / &rhs)?;
        if iv.hi() < &rhs {
            return Ok((Verdict::Yes, Certificate::Enclosure(ratio)));
        }
        if iv.lo() >= &rhs {
            return Ok((Verdict::No, Certificate::Enclosure(ratio)));
        }
        last = Some(ratio);
        precision /= big(1 << 16);
    }
    Ok((
        Verdict::Undecided,
        Certificate::Enclosure(last.expect("at least one round")),
    ))
}

/// Every inequality at `(k, A)`, with the per-`r` item once per entry of
/// `r_list` (evaluated in parallel).
pub fn verify_constant_inequalities(k: u64, a: u64, r_list: &[u64]) -> Result<IneqReport> {
    if r_list.is_empty() {
        return Err(invalid("r_list must not be empty"));
    }
    let mut records: Vec<IneqRecord> = r_list
        .par_iter()
        .map(|&r| evaluate(Inequality::ColorClassCount, k, a, r))
        .collect::<Result<_>>()?;
    for which in Inequality::ALL.into_iter().skip(1) {
        records.push(evaluate(which, k, a, 1)?);
    }
    Ok(IneqReport { records })
}

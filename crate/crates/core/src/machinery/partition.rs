//! Balanced three-way splitting of weighted vertices and the derandomized
//! vertex bipartition.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::exact::{binomial, int, pow, rat};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{Edge, Hypergraph};

/// Nonnegative exact weights on vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedVertices(BTreeMap<usize, BigRational>);

impl WeightedVertices {
    pub fn new(weights: impl IntoIterator<Item = (usize, BigRational)>) -> Result<Self> {
        let map: BTreeMap<usize, BigRational> = weights.into_iter().collect();
        if let Some((v, w)) = map.iter().find(|(_, w)| w.is_negative()) {
            return Err(invalid(format!("vertex {v} has negative weight {w}")));
        }
        Ok(WeightedVertices(map))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.0.iter().map(|(&v, w)| (v, w))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<&BigRational> {
        self.0.get(&v)
    }

    pub fn max_weight(&self) -> BigRational {
        self.0
            .values()
            .max()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total(&self) -> BigRational {
        self.0.values().fold(BigRational::zero(), |acc, w| acc + w)
    }
}

/// Three disjoint vertex classes with their weight sums, ordered so that
/// `sums[0] <= sums[1] <= sums[2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tripartition {
    pub parts: [BTreeSet<usize>; 3],
    pub sums: [BigRational; 3],
}

impl Tripartition {
    /// `S3 - S1`.
    pub fn gap(&self) -> BigRational {
        &self.sums[2] - &self.sums[0]
    }
}

/// Places vertices, heaviest first (ties by id), into the part with the
/// smallest current sum (ties to the lowest part index).
pub fn greedy_tripartition(w: &WeightedVertices) -> Tripartition {
    let mut order: Vec<(usize, &BigRational)> = w.iter().collect();
    order.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(&b.0)));
    let mut parts: [BTreeSet<usize>; 3] = Default::default();
    let mut sums: [BigRational; 3] = [
        BigRational::zero(),
        BigRational::zero(),
        BigRational::zero(),
    ];
    for (v, weight) in order {
        let target = (0..3)
            .min_by(|&a, &b| sums[a].cmp(&sums[b]).then(a.cmp(&b)))
            .expect("three parts");
        parts[target].insert(v);
        sums[target] += weight;
    }
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&a, &b| sums[a].cmp(&sums[b]).then(a.cmp(&b)));
    Tripartition {
        parts: idx.map(|i| parts[i].clone()),
        sums: idx.map(|i| sums[i].clone()),
    }
}

/// A bipartition `(U1, U2)` of `0..n` with its count of proper sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitAssignment {
    pub u1: BTreeSet<usize>,
    pub u2: BTreeSet<usize>,
    /// Sets `f` with apex `v_f ∈ U1` and `f ⊆ U2`.
    pub proper_count: usize,
    /// Expected proper count when each vertex joins `U1` with probability `1/k`.
    pub expectation: BigRational,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Open,
    One,
    Two,
}

/// Deterministically chooses `(U1, U2)` with at least the expected number
/// of proper sets, by conditional expectations.
///
/// `assignments` maps each `(k-1)`-set `f` to its apex `v_f ∉ f`. Vertices
/// are fixed in ascending order, each going to the side whose conditional
/// expectation is not smaller (ties to `U2`). All comparisons are exact:
/// conditional probabilities are `(1/k)^a ((k-1)/k)^b` with `a + b <= k`,
/// which become integers after scaling by `k^k`.
pub fn derandomized_split(
    assignments: &BTreeMap<Edge, usize>,
    n: usize,
    k: usize,
) -> Result<SplitAssignment> {
    if k < 2 {
        return Err(invalid("split needs k >= 2"));
    }
    for (&f, &v) in assignments {
        if f.len() != k - 1 {
            return Err(Error::InvalidAssignment(format!(
                "set {{{f}}} does not have k - 1 = {} vertices",
                k - 1
            )));
        }
        if f.contains(v) {
            return Err(Error::InvalidAssignment(format!(
                "apex {v} lies inside its set {{{f}}}"
            )));
        }
        if let Some(bad) = f.with(v).last().filter(|&x| x >= n) {
            return Err(Error::InvalidVertex { vertex: bad, n });
        }
    }

    // weight[a][b] = (k-1)^b * k^(k-a-b)
    let kk = BigUint::from(k);
    let km1 = BigUint::from(k - 1);
    let weight: Vec<Vec<BigUint>> = (0..=1usize)
        .map(|a| {
            (0..k)
                .map(|b| km1.pow(b as u32) * kk.pow((k - a - b) as u32))
                .collect()
        })
        .collect();

    let items: Vec<(Edge, usize)> = assignments.iter().map(|(&f, &v)| (f, v)).collect();
    let mut touching = vec![Vec::new(); n];
    for (i, &(f, v)) in items.iter().enumerate() {
        touching[v].push(i);
        for u in f.vertices() {
            touching[u].push(i);
        }
    }

    let mut side = vec![Side::Open; n];
    let scaled = |side: &[Side], i: usize| -> BigUint {
        let (f, v) = items[i];
        let a = match side[v] {
            Side::Two => return BigUint::zero(),
            Side::One => 0,
            Side::Open => 1,
        };
        let mut b = 0;
        for u in f.vertices() {
            match side[u] {
                Side::One => return BigUint::zero(),
                Side::Open => b += 1,
                Side::Two => {}
            }
        }
        weight[a][b].clone()
    };

    for v in 0..n {
        // Only sets touching v differ between the two branches.
        side[v] = Side::One;
        let with_one: BigUint = touching[v].iter().map(|&i| scaled(&side, i)).sum();
        side[v] = Side::Two;
        let with_two: BigUint = touching[v].iter().map(|&i| scaled(&side, i)).sum();
        side[v] = if with_two >= with_one {
            Side::Two
        } else {
            Side::One
        };
    }

    let proper_count = items
        .iter()
        .filter(|&&(f, v)| side[v] == Side::One && f.vertices().all(|u| side[u] == Side::Two))
        .count();
    let expectation = int(BigInt::from(items.len()))
        * rat(1, k as i64)
        * pow(&rat(k as i64 - 1, k as i64), k as u64 - 1);
    if int(BigInt::from(proper_count)) < expectation {
        return Err(Error::Internal(format!(
            "split found {proper_count} proper sets, below the expectation {expectation}"
        )));
    }
    Ok(SplitAssignment {
        u1: (0..n).filter(|&v| side[v] == Side::One).collect(),
        u2: (0..n).filter(|&v| side[v] == Side::Two).collect(),
        proper_count,
        expectation,
    })
}

/// Picks for every shadow set `f` of `h` the smallest apex `v` with
/// `{v} ∪ f ∈ h`.
pub fn choose_apexes(h: &Hypergraph) -> Result<BTreeMap<Edge, usize>> {
    if h.uniformity() < 2 {
        return Err(invalid("apexes need k >= 2"));
    }
    let mut apex = BTreeMap::new();
    for e in h.edges() {
        for v in e.vertices() {
            let f = e.without(v);
            apex.entry(f)
                .and_modify(|a: &mut usize| *a = (*a).min(v))
                .or_insert(v);
        }
    }
    Ok(apex)
}

/// `φ_v = |F_v| / C(n-1, k-1)` for `v ∈ U1`, where `F_v` are the proper
/// sets with apex `v`. Vertices with no proper set are left out.
pub fn proper_weights(
    assignments: &BTreeMap<Edge, usize>,
    split: &SplitAssignment,
    n: usize,
    k: usize,
) -> Result<WeightedVertices> {
    if k < 2 || n == 0 {
        return Err(invalid("weights need k >= 2 and n >= 1"));
    }
    let u2 = Edge::from_vertices(split.u2.iter().copied())?;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for (&f, &v) in assignments {
        if split.u1.contains(&v) && f.is_subset(u2) {
            *counts.entry(v).or_default() += 1;
        }
    }
    let denom = BigInt::from(binomial(n as u64 - 1, k as u64 - 1));
    if denom.is_zero() {
        return Err(invalid("C(n-1, k-1) is zero"));
    }
    WeightedVertices::new(
        counts
            .into_iter()
            .map(|(v, c)| (v, BigRational::new(BigInt::from(c), denom.clone()))),
    )
}

/// Summary of the split-and-balance pipeline on a hypergraph.
#[derive(Clone, Debug, Serialize)]
pub struct BalanceSummary {
    pub shadow_sets: usize,
    pub proper_count: usize,
    pub expectation: String,
    pub u1: Vec<usize>,
    pub parts: [Vec<usize>; 3],
    pub sums: [String; 3],
    pub max_weight: String,
}

/// Apexes, derandomized split, weights and greedy tripartition in sequence.
pub fn balance_pipeline(h: &Hypergraph) -> Result<(SplitAssignment, Tripartition, BalanceSummary)> {
    let (n, k) = (h.vertex_count(), h.uniformity());
    let apexes = choose_apexes(h)?;
    let split = derandomized_split(&apexes, n, k)?;
    let weights = proper_weights(&apexes, &split, n, k)?;
    let tri = greedy_tripartition(&weights);
    let summary = BalanceSummary {
        shadow_sets: apexes.len(),
        proper_count: split.proper_count,
        expectation: split.expectation.to_string(),
        u1: split.u1.iter().copied().collect(),
        parts: tri.parts.clone().map(|p| p.into_iter().collect()),
        sums: tri.sums.clone().map(|s| s.to_string()),
        max_weight: weights.max_weight().to_string(),
    };
    Ok((split, tri, summary))
}

impl SplitAssignment {
    pub fn expectation_is_met(&self) -> bool {
        BigRational::from_integer(BigInt::from(self.proper_count)) >= self.expectation
    }
}

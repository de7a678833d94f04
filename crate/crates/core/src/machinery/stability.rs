//! The star-stability predicate and the root-valued deficiency bounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use super::exact::{binomial_rat, int, pow, rat, root_interval, Interval};
use crate::error::{invalid, Result};
use crate::hypergraph::Hypergraph;

/// `24/25`, the base of the stability deficiency `(24/25)^k C(n-1, k-1)`.
pub fn stability_base() -> BigRational {
    rat(24, 25)
}

/// `9/10`, the base of the max-degree threshold `(9/10)^k C(n-1, k-1)`.
pub fn degree_base() -> BigRational {
    rat(9, 10)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    /// Maximum degree vertex (smallest id on ties).
    pub vertex: usize,
    pub degree: usize,
    /// `|H| - deg(vertex)`.
    pub deficiency: usize,
    /// `(24/25)^k C(n-1, k-1)`.
    pub allowance: BigRational,
    pub holds: bool,
}

impl Serialize for StabilityReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("StabilityReport", 5)?;
        st.serialize_field("vertex", &self.vertex)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("deficiency", &self.deficiency)?;
        st.serialize_field("allowance", &self.allowance.to_string())?;
        st.serialize_field("holds", &self.holds)?;
        st.end()
    }
}

/// Checks whether one vertex's star captures all but
/// `(24/25)^k C(n-1, k-1)` edges of `h`. Computed for any `h`; the
/// guarantee itself concerns large loose-path-free hypergraphs.
pub fn stability_deficiency(h: &Hypergraph) -> Result<StabilityReport> {
    let k = h.uniformity();
    if k < 2 {
        return Err(invalid("stability needs k >= 2"));
    }
    let (vertex, degree) = h.max_degree();
    let deficiency = h.edge_count() - degree;
    let n = h.vertex_count().max(1) as u64;
    let allowance = pow(&stability_base(), k as u64) * binomial_rat(n - 1, k as u64 - 1);
    let holds = int(BigInt::from(deficiency)) <= allowance;
    Ok(StabilityReport {
        vertex,
        degree,
        deficiency,
        allowance,
        holds,
    })
}

fn check_root_args(b: &BigRational, k: usize, precision: &BigRational) -> Result<()> {
    if k < 3 {
        return Err(invalid(format!("root bounds need k >= 3 (got {k})")));
    }
    if !b.is_positive() || *b > int(k as i64 - 1) {
        return Err(invalid(format!("b must lie in (0, k-1] (got {b})")));
    }
    if !precision.is_positive() {
        return Err(invalid("precision must be positive"));
    }
    Ok(())
}

/// Encloses `(b/(k-1))^(1/(k-2))` to within `width`.
fn link_root(b: &BigRational, k: usize, width: &BigRational) -> Result<Interval> {
    let q = b / int(k as i64 - 1);
    root_interval(&q, (k - 2) as u32, width)
}

/// Encloses `(1 - (b/(k-1))^(1/(k-2)))^(k-1)` to within `precision`.
pub fn deficiency_coefficient(
    b: &BigRational,
    k: usize,
    precision: &BigRational,
) -> Result<Interval> {
    check_root_args(b, k, precision)?;
    // (1 - x)^(k-1) is (k-1)-Lipschitz and decreasing on [0, 1].
    let root = link_root(b, k, &(precision / int(k as i64 - 1)))?;
    let one = BigRational::one();
    let e = k as u64 - 1;
    Interval::new(pow(&(&one - root.hi()), e), pow(&(&one - root.lo()), e))
}

/// Encloses `(1 - (b/(k-1))^(1/(k-2)))^(k-1) C(n-1, k-1)`, the number of
/// edges that may avoid a vertex of degree at least `b C(n-1, k-1)` in a
/// loose-path-free k-graph. Width is at most `precision`.
pub fn avoiding_edges_bound(
    b: &BigRational,
    k: usize,
    n: usize,
    precision: &BigRational,
) -> Result<Interval> {
    check_root_args(b, k, precision)?;
    if n < 1 {
        return Err(invalid("n must be positive"));
    }
    let scale = binomial_rat(n as u64 - 1, k as u64 - 1);
    if scale.is_positive() {
        Ok(deficiency_coefficient(b, k, &(precision / &scale))?.scale(&scale))
    } else {
        Ok(Interval::point(scale))
    }
}

/// Encloses `(b/(k-1))^(1/(k-2)) (n-1)`, the lower bound on the vertex count
/// of a dense subgraph of the link. Width is at most `precision`.
pub fn dense_link_order_bound(
    b: &BigRational,
    k: usize,
    n: usize,
    precision: &BigRational,
) -> Result<Interval> {
    check_root_args(b, k, precision)?;
    if n < 2 {
        return Ok(Interval::point(int(0)));
    }
    let scale = int(n as i64 - 1);
    Ok(link_root(b, k, &(precision / &scale))?.scale(&scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::full_star;

    #[test]
    fn stability_examples() {
        let s = stability_deficiency(&full_star(10, 3, 0).unwrap()).unwrap();
        assert_eq!((s.vertex, s.deficiency, s.holds), (0, 0, true));

        let h = Hypergraph::from_lists(3, 6, &[[0, 1, 2], [3, 4, 5]]).unwrap();
        let s = stability_deficiency(&h).unwrap();
        assert_eq!(s.deficiency, 1);
        // (24/25)^3 * C(5, 2) = 0.884736 * 10
        assert_eq!(s.allowance, rat(138_240, 15_625));
        assert!(s.holds);

        let s = stability_deficiency(&Hypergraph::empty(3, 5).unwrap()).unwrap();
        assert_eq!((s.deficiency, s.holds), (0, true));
    }

    #[test]
    fn stability_can_fail() {
        // Every vertex of K_6^(3) misses C(5, 3) = 10 edges; the allowance is ~8.85.
        let h = Hypergraph::complete(6, 3).unwrap();
        let s = stability_deficiency(&h).unwrap();
        assert_eq!(s.deficiency, 10);
        assert!(!s.holds);
    }

    #[test]
    fn exact_coefficients() {
        let p = rat(1, 1_000_000);
        let iv = deficiency_coefficient(&int(2), 3, &p).unwrap();
        assert_eq!(iv, Interval::point(int(0)));
        let iv = deficiency_coefficient(&rat(1, 2), 3, &p).unwrap();
        assert_eq!(iv, Interval::point(rat(9, 16)));
        let iv = avoiding_edges_bound(&rat(1, 2), 3, 11, &p).unwrap();
        assert_eq!(iv, Interval::point(rat(9 * 45, 16)));
    }

    #[test]
    fn irrational_coefficient() {
        let p = rat(1, 10_000_000_000);
        let b = rat(6561, 10_000);
        let iv = avoiding_edges_bound(&b, 4, 4, &p).unwrap();
        assert!(iv.width() <= p);
        let expected = (1.0 - (0.6561f64 / 3.0).sqrt()).powi(3);
        assert!((iv.midpoint_f64() - expected).abs() < 1e-9);
        assert!((iv.midpoint_f64() - 0.1509).abs() < 1e-4);
    }

    #[test]
    fn mm_bounds() {
        let p = rat(1, 1000);
        assert_eq!(
            dense_link_order_bound(&rat(1, 2), 3, 11, &p).unwrap(),
            Interval::point(rat(5, 2))
        );
        assert_eq!(
            dense_link_order_bound(&rat(3, 4), 4, 9, &p).unwrap(),
            Interval::point(int(4))
        );
        let iv = dense_link_order_bound(&int(1), 5, 101, &p).unwrap();
        assert!(iv.width() <= p);
        assert!((iv.midpoint_f64() - 0.25f64.cbrt() * 100.0).abs() < 1e-3);
    }

    #[test]
    fn invalid_arguments() {
        let p = rat(1, 10);
        assert!(avoiding_edges_bound(&int(0), 4, 10, &p).is_err());
        assert!(avoiding_edges_bound(&int(4), 4, 10, &p).is_err());
        assert!(avoiding_edges_bound(&int(1), 2, 10, &p).is_err());
        assert!(dense_link_order_bound(&int(1), 4, 10, &int(0)).is_err());
    }
}

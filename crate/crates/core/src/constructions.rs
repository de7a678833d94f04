//! Extremal colorings and hypergraphs, and the closed-form Ramsey bounds.

use serde::Serialize;

use crate::coloring::Coloring;
use crate::error::{invalid, Result};
use crate::hypergraph::{complete_edges, Edge, Hypergraph, MAX_VERTICES};

/// The constant in the linear upper bound `R <= 250 r`.
pub const LINEAR_BOUND_CONSTANT: u64 = 250;

/// Colors `K_n^(k)` with `n = r + 3k - 4` using `r - 1` stars and a clique.
///
/// Vertices `0..r-1` are star centers. An edge takes color `i + 1` for the
/// smallest center `i` it contains, so every star class is a sub-star. Edges
/// avoiding all centers lie inside the last `3k - 3` vertices and take
/// color `r`. No class contains a loose 3-path.
pub fn star_clique_coloring(k: usize, r: u32) -> Result<Coloring> {
    if k < 3 || r < 1 {
        return Err(invalid(format!(
            "star-clique coloring needs k >= 3 and r >= 1 (got k = {k}, r = {r})"
        )));
    }
    let n = r as usize + 3 * k - 4;
    if n > MAX_VERTICES {
        return Err(invalid(format!(
            "r + 3k - 4 = {n} exceeds {MAX_VERTICES} vertices"
        )));
    }
    let centers = Edge::from_mask((1u128 << (r - 1)) - 1);
    Coloring::from_fn(k, n, r, |e| match e.intersection(centers).first() {
        Some(c) => c as u32 + 1,
        None => r,
    })
}

/// All `C(n-1, k-1)` edges through `center`.
pub fn full_star(n: usize, k: usize, center: usize) -> Result<Hypergraph> {
    if k < 2 || k > n || center >= n {
        return Err(invalid(format!(
            "full star needs 2 <= k <= n and center < n (got n = {n}, k = {k}, center = {center})"
        )));
    }
    Ok(Hypergraph::complete(n, k)?.filter_edges(|e| e.contains(center)))
}

/// All `C(n-2, k-2)` edges containing both vertices of `pair`. Any two
/// edges share at least the pair, so none meet in exactly one vertex.
pub fn pair_cover(n: usize, k: usize, pair: (usize, usize)) -> Result<Hypergraph> {
    let (a, b) = pair;
    if k < 3 || k > n || a == b || a >= n || b >= n {
        return Err(invalid(format!(
            "pair cover needs 3 <= k <= n and two distinct vertices below n \
             (got n = {n}, k = {k}, pair = ({a}, {b}))"
        )));
    }
    let edges: Vec<Edge> = complete_edges(n, k)
        .into_iter()
        .filter(|e| e.contains(a) && e.contains(b))
        .collect();
    Hypergraph::new(k, n, edges)
}

/// Closed-form bounds on the loose-path Ramsey number for given `k`, `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub k: u64,
    pub r: u64,
    /// `r + 3k - 3`, from the star-clique coloring.
    pub lower: u64,
    /// `k r`, valid once `r` exceeds an unspecified threshold depending on `k`.
    pub upper_kr: u64,
    /// `250 r`, valid once `r` exceeds an unspecified threshold depending on `k`.
    pub upper_250r: u64,
    pub caveats: Vec<String>,
}

pub fn ramsey_bounds(k: u64, r: u64) -> Result<BoundsReport> {
    if k < 3 || r < 1 {
        return Err(invalid(format!(
            "bounds need k >= 3 and r >= 1 (got k = {k}, r = {r})"
        )));
    }
    let overflow = || invalid("parameters overflow 64-bit arithmetic");
    let lower = k
        .checked_mul(3)
        .and_then(|x| x.checked_add(r))
        .map(|x| x - 3)
        .ok_or_else(overflow)?;
    let upper_kr = k.checked_mul(r).ok_or_else(overflow)?;
    let upper_250r = LINEAR_BOUND_CONSTANT.checked_mul(r).ok_or_else(overflow)?;

    let mut caveats = vec![
        "upper_kr holds only for r >= r0(k); r0(k) has no explicit value".to_string(),
        "upper_250r holds only for r >= r_k; r_k has no explicit value".to_string(),
    ];
    if lower > upper_kr {
        caveats.push(format!(
            "lower = {lower} exceeds upper_kr = {upper_kr}: r = {r} is below r0(k)"
        ));
    }
    if lower > upper_250r {
        caveats.push(format!(
            "lower = {lower} exceeds upper_250r = {upper_250r}: r = {r} is below r_k"
        ));
    }
    Ok(BoundsReport {
        k,
        r,
        lower,
        upper_kr,
        upper_250r,
        caveats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::binomial_u64;
    use crate::patterns::{find_loose_path, find_mono_loose_path, is_full_star, PathLength};

    #[test]
    fn star_clique_sizes() {
        let c = star_clique_coloring(3, 2).unwrap();
        assert_eq!(c.vertex_count(), 7);
        assert_eq!(c.class_sizes(), vec![15, 20]);
        assert!(c.class(1).edges().iter().all(|e| e.contains(0)));

        let c = star_clique_coloring(3, 3).unwrap();
        assert_eq!(c.vertex_count(), 8);
        assert_eq!(c.class_sizes(), vec![21, 15, 20]);

        let c = star_clique_coloring(4, 2).unwrap();
        assert_eq!(c.vertex_count(), 10);
        assert_eq!(c.class_sizes(), vec![84, 126]);

        let c = star_clique_coloring(3, 1).unwrap();
        assert_eq!(c.vertex_count(), 6);
        assert_eq!(c.class_sizes(), vec![20]);

        assert!(star_clique_coloring(2, 3).is_err());
        assert!(star_clique_coloring(3, 0).is_err());
    }

    #[test]
    fn star_clique_is_path_free() {
        for k in 3..=6 {
            for r in 1..=6 {
                let c = star_clique_coloring(k, r).unwrap();
                let total: usize = c.class_sizes().iter().sum();
                assert_eq!(
                    total as u64,
                    binomial_u64(r as u64 + 3 * k as u64 - 4, k as u64).unwrap()
                );
                assert!(
                    find_mono_loose_path(&c, PathLength::Three).is_none(),
                    "k={k} r={r}"
                );
            }
        }
    }

    #[test]
    fn stars_and_pair_covers() {
        assert_eq!(full_star(5, 3, 0).unwrap().edge_count(), 6);
        assert_eq!(full_star(4, 4, 0).unwrap().edge_count(), 1);
        let star = full_star(10, 3, 0).unwrap();
        assert!(is_full_star(&star));
        assert!(find_loose_path(&star, PathLength::Three).is_none());
        assert!(full_star(5, 3, 5).is_err());
        assert!(full_star(2, 3, 0).is_err());

        assert_eq!(pair_cover(6, 4, (0, 1)).unwrap().edge_count(), 6);
        assert_eq!(pair_cover(5, 3, (0, 1)).unwrap().edge_count(), 3);
        let pc = pair_cover(8, 4, (0, 1)).unwrap();
        assert!(find_loose_path(&pc, PathLength::Two).is_none());
        assert!(pair_cover(5, 3, (1, 1)).is_err());
        assert!(pair_cover(5, 2, (0, 1)).is_err());
    }

    #[test]
    fn bounds() {
        let b = ramsey_bounds(3, 5).unwrap();
        assert_eq!((b.lower, b.upper_kr, b.upper_250r), (11, 15, 1250));
        assert_eq!(ramsey_bounds(3, 2).unwrap().lower, 8);
        let b = ramsey_bounds(250, 1).unwrap();
        assert_eq!((b.lower, b.upper_250r), (748, 250));
        assert!(b.caveats.iter().any(|c| c.contains("below r_k")));
        assert!(ramsey_bounds(2, 1).is_err());
        let json = serde_json::to_value(&b).unwrap();
        for key in ["k", "r", "lower", "upper_kr", "upper_250r", "caveats"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }
}

//! Closed-form edge bounds for uniquely dominated graphs.
//!
//! Everything is exact: integers throughout, and `Ratio<i64>` where the
//! algebra produces fractions (the adjacent-dominator case bound for
//! `γ = 2`, and Vizing's bound when `n - γ` is odd).

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("gamma = {gamma} is below the minimum {min}")]
    GammaTooSmall { gamma: u64, min: u64 },
    #[error("n = {n} is below 3 * gamma = {}", 3 * gamma)]
    OrderBelowThreeGamma { n: u64, gamma: u64 },
    #[error("n = {n} is below the minimum {min}")]
    OrderTooSmall { n: u64, min: u64 },
}

fn ceil_half(x: u64) -> u64 {
    x.div_ceil(2)
}

fn floor_half(x: u64) -> u64 {
    x / 2
}

fn require_gamma(gamma: u64, min: u64) -> Result<(), BoundError> {
    if gamma < min {
        return Err(BoundError::GammaTooSmall { gamma, min });
    }
    Ok(())
}

fn require_order(n: u64, min: u64) -> Result<(), BoundError> {
    if n < min {
        return Err(BoundError::OrderTooSmall { n, min });
    }
    Ok(())
}

/// `γ ≥ 2` and `n ≥ 3γ`.
fn require_main_hypothesis(n: u64, gamma: u64) -> Result<(), BoundError> {
    require_gamma(gamma, 2)?;
    if n < 3 * gamma {
        return Err(BoundError::OrderBelowThreeGamma { n, gamma });
    }
    Ok(())
}

/// Largest number of extra `B`-side vertices the bipartite construction
/// attaches to `x₁` before it needs the remaining set:
/// `2⌈γ/2⌉ - ⌊γ/2⌋ + 1`.
pub fn attachment_capacity(gamma: u64) -> u64 {
    2 * ceil_half(gamma) + 1 - floor_half(gamma)
}

/// Number of remaining vertices summed over in the bipartite bound:
/// `max(0, n - 3γ - (2⌈γ/2⌉ - ⌊γ/2⌋ + 1))`.
///
/// This is the count that makes vertex totals add up in the extremal
/// construction. [`phi_as_printed`] differs from it whenever `⌊γ/2⌋ ≠ 1`.
pub fn phi(n: u64, gamma: u64) -> u64 {
    n.saturating_sub(3 * gamma + attachment_capacity(gamma))
}

/// The literal `max(0, n - 3γ - 2⌈γ/2⌉ - ⌊γ/2⌋ + 1)`.
pub fn phi_as_printed(n: u64, gamma: u64) -> u64 {
    let v = n as i64 - 3 * gamma as i64 - 2 * ceil_half(gamma) as i64 - floor_half(gamma) as i64 + 1;
    v.max(0) as u64
}

/// The bipartite bound `m(n, γ)`, evaluated term by term:
/// `2γ + 2⌈γ/2⌉⌊γ/2⌋ + min{n-3γ, cap}(2⌈γ/2⌉+1) + Σ_{i=1}^{Φ} ((2⌈γ/2⌉+1) + ⌈i/2⌉)`.
pub fn bipartite_bound(n: u64, gamma: u64) -> Result<u64, BoundError> {
    require_main_hypothesis(n, gamma)?;
    let (c, f) = (ceil_half(gamma), floor_half(gamma));
    let base = 2 * gamma + 2 * c * f;
    let attached = (n - 3 * gamma).min(attachment_capacity(gamma)) * (2 * c + 1);
    let remaining: u64 = (1..=phi(n, gamma)).map(|i| (2 * c + 1) + ceil_half(i)).sum();
    Ok(base + attached + remaining)
}

/// `m(n, 2)` in closed form: `n(n-2)/4` for even `n`, `(n-1)²/4` for odd.
pub fn bipartite_bound_gamma2(n: u64) -> Result<u64, BoundError> {
    require_order(n, 6)?;
    Ok(if n.is_multiple_of(2) { n * (n - 2) / 4 } else { (n - 1) * (n - 1) / 4 })
}

/// `m(3γ, γ) = 2γ + 2⌈γ/2⌉⌊γ/2⌋`.
pub fn n3g_bound(gamma: u64) -> Result<u64, BoundError> {
    require_gamma(gamma, 2)?;
    Ok(2 * gamma + 2 * ceil_half(gamma) * floor_half(gamma))
}

/// Fischermann's bound `C(n-γ, 2) - γ(γ-2)` for general graphs.
pub fn fischermann_bound(n: u64, gamma: u64) -> Result<u64, BoundError> {
    require_main_hypothesis(n, gamma)?;
    let k = n - gamma;
    Ok(k * (k - 1) / 2 - gamma * (gamma - 2))
}

/// Vizing's bound `(n-γ)(n-γ+2)/2` as an exact rational.
pub fn vizing_bound(n: u64, gamma: u64) -> Result<Rational, BoundError> {
    require_gamma(gamma, 2)?;
    require_order(n, gamma)?;
    let k = (n - gamma) as i64;
    Ok(Rational::new(k * (k + 2), 2))
}

/// `K_{1,n-1}` is the only bipartite graph with `γ = 1`.
pub fn star_bound(n: u64) -> Result<u64, BoundError> {
    require_order(n, 3)?;
    Ok(n - 1)
}

/// Count of positive integers below `n` of the opposite parity.
pub fn tau(n: u64) -> Result<u64, BoundError> {
    require_order(n, 1)?;
    Ok(if n.is_multiple_of(2) { ceil_half(n) } else { floor_half(n) })
}

/// Fewest edges in a graph on `n ≥ 3` vertices with no isolated vertex and
/// no `P₂` component: `⌈2n/3⌉`.
pub fn min_forest_edges(n: u64) -> Result<u64, BoundError> {
    require_order(n, 3)?;
    Ok((2 * n).div_ceil(3))
}

/// Per-case upper bounds from the `γ = 2` analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Gamma2CaseBounds {
    /// Both dominators on one side: `2(n-2) - 4`.
    pub m1: i64,
    /// Adjacent dominators, in the parity-split closed form with the ceiling
    /// on `2(n-2)/3` dropped.
    #[serde(serialize_with = "ser_rational")]
    pub m2: Rational,
    /// `n - 1 + ⌈(n-2)/2⌉⌊(n-2)/2⌋ - ⌈2(n-2)/3⌉`, the adjacent case with
    /// the ceiling kept.
    pub m2_with_ceiling: i64,
    /// Non-adjacent dominators on opposite sides.
    pub m3: i64,
}

pub fn gamma2_case_bounds(n: u64) -> Result<Gamma2CaseBounds, BoundError> {
    require_order(n, 6)?;
    let n = n as i64;
    let m1 = 2 * (n - 2) - 4;
    let m2 = if n % 2 == 0 {
        Rational::new(3 * n * n - 6 * n - (2 * n - 8), 12)
    } else {
        Rational::new(3 * n * n - 6 * n + 3 - (2 * n - 2), 12)
    };
    let half_product = ((n - 2 + 1) / 2) * ((n - 2) / 2);
    let m2_with_ceiling = n - 1 + half_product - (2 * (n - 2) + 2) / 3;
    let m3 = n - 2 + ((n - 3 + 1) / 2) * ((n - 3) / 2);
    Ok(Gamma2CaseBounds { m1, m2, m2_with_ceiling, m3 })
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// One row of a bound table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub n: u64,
    pub gamma: u64,
    pub m_bipartite: u64,
    pub m_fischermann: u64,
    #[serde(serialize_with = "ser_rational")]
    pub vizing: Rational,
    pub phi: u64,
}

pub fn bound_row(n: u64, gamma: u64) -> Result<BoundRow, BoundError> {
    Ok(BoundRow {
        n,
        gamma,
        m_bipartite: bipartite_bound(n, gamma)?,
        m_fischermann: fischermann_bound(n, gamma)?,
        vizing: vizing_bound(n, gamma)?,
        phi: phi(n, gamma),
    })
}

/// Rows for every `(n, γ)` in the ranges satisfying `γ ≥ 2`, `n ≥ 3γ`.
pub fn bound_table(
    ns: std::ops::RangeInclusive<u64>,
    gammas: std::ops::RangeInclusive<u64>,
) -> Vec<BoundRow> {
    gammas
        .flat_map(|gamma| ns.clone().map(move |n| (n, gamma)))
        .filter_map(|(n, gamma)| bound_row(n, gamma).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_values() {
        assert_eq!(phi(10, 3), 0);
        assert_eq!(phi(20, 2), 12);
        for g in 1..50 {
            assert_eq!(phi(3 * g, g), 0);
            assert_eq!(phi_as_printed(3 * g, g), 0);
        }
        assert_eq!(phi_as_printed(20, 2), 12);
    }

    #[test]
    fn phi_forms_agree_only_for_gamma_two_and_three() {
        for n in 6..200 {
            assert_eq!(phi(n, 2), phi_as_printed(n, 2));
            assert_eq!(phi(n, 3), phi_as_printed(n, 3));
        }
        // γ = 4: capacity 3, so the remaining set is non-empty from n = 16.
        assert_eq!(phi(16, 4), 1);
        assert_eq!(phi_as_printed(16, 4), 0);
    }

    #[test]
    fn bipartite_bound_reference_values() {
        assert_eq!(bipartite_bound(6, 2), Ok(6));
        assert_eq!(bipartite_bound(7, 2), Ok(9));
        assert_eq!(bipartite_bound(10, 3), Ok(15));
        assert_eq!(bipartite_bound(5, 2), Err(BoundError::OrderBelowThreeGamma { n: 5, gamma: 2 }));
        assert_eq!(bipartite_bound(9, 1), Err(BoundError::GammaTooSmall { gamma: 1, min: 2 }));
    }

    #[test]
    fn bipartite_bound_closed_form_agrees() {
        // Σ_{i=1}^{Φ} ⌈i/2⌉ = ⌈Φ/2⌉(⌊Φ/2⌋ + 1).
        for gamma in 2..30 {
            for n in 3 * gamma..3 * gamma + 100 {
                let (c, f) = (ceil_half(gamma), floor_half(gamma));
                let p = phi(n, gamma);
                let closed = 2 * gamma
                    + 2 * c * f
                    + (n - 3 * gamma).min(attachment_capacity(gamma)) * (2 * c + 1)
                    + p * (2 * c + 1)
                    + ceil_half(p) * (floor_half(p) + 1);
                assert_eq!(bipartite_bound(n, gamma), Ok(closed), "n={n} gamma={gamma}");
            }
        }
    }

    #[test]
    fn gamma2_closed_form() {
        assert_eq!(bipartite_bound_gamma2(8), Ok(12));
        assert_eq!(bipartite_bound_gamma2(7), Ok(9));
        assert_eq!(bipartite_bound_gamma2(100), Ok(2450));
        assert_eq!(bipartite_bound(100, 2), Ok(2450));
        assert_eq!(bipartite_bound_gamma2(5), Err(BoundError::OrderTooSmall { n: 5, min: 6 }));
        // The intermediate form 12 + Σ_{i=1}^{n-8} (3 + ⌈i/2⌉) at n = 8.
        assert_eq!(bipartite_bound(8, 2), Ok(12));
    }

    #[test]
    fn n3g_values() {
        assert_eq!(n3g_bound(2), Ok(6));
        assert_eq!(n3g_bound(3), Ok(10));
        assert_eq!(n3g_bound(4), Ok(16));
        assert!(n3g_bound(1).is_err());
        for g in 2..=100 {
            assert_eq!(n3g_bound(g), bipartite_bound(3 * g, g));
        }
    }

    #[test]
    fn fischermann_values() {
        assert_eq!(fischermann_bound(6, 2), Ok(6));
        assert_eq!(fischermann_bound(10, 3), Ok(18));
        assert!(fischermann_bound(8, 3).is_err());
    }

    #[test]
    fn vizing_values() {
        assert_eq!(vizing_bound(6, 2), Ok(Rational::from_integer(12)));
        assert_eq!(vizing_bound(10, 3), Ok(Rational::new(63, 2)));
        assert_eq!(vizing_bound(9, 3), Ok(Rational::from_integer(24)));
        assert!(vizing_bound(9, 1).is_err());
    }

    #[test]
    fn tau_values() {
        assert_eq!(tau(9), Ok(4));
        assert_eq!(tau(4), Ok(2));
        assert_eq!(tau(1), Ok(0));
        assert!(tau(0).is_err());
    }

    #[test]
    fn forest_values() {
        assert_eq!(min_forest_edges(3), Ok(2));
        assert_eq!(min_forest_edges(7), Ok(5));
        // Frozen from a brute force over all labelled graphs on 6 vertices.
        assert_eq!(min_forest_edges(6), Ok(4));
        assert!(min_forest_edges(2).is_err());
    }

    #[test]
    fn gamma2_cases() {
        let b = gamma2_case_bounds(10).unwrap();
        assert_eq!((b.m1, b.m2, b.m3), (12, Rational::from_integer(19), 20));
        let b = gamma2_case_bounds(8).unwrap();
        assert_eq!((b.m1, b.m2, b.m3), (8, Rational::new(34, 3), 12));
        assert_eq!(gamma2_case_bounds(6).unwrap().m3, 6);
        assert!(gamma2_case_bounds(5).is_err());
    }

    #[test]
    fn m2_sits_two_thirds_below_unsimplified_expression() {
        for n in 6..500i64 {
            let prod = ((n - 1) / 2) * ((n - 2) / 2);
            let direct = Rational::from_integer(n - 1 + prod) - Rational::new(2 * (n - 2), 3);
            let b = gamma2_case_bounds(n as u64).unwrap();
            assert_eq!(b.m2 + Rational::new(2, 3), direct, "n={n}");
            assert!(Rational::from_integer(b.m2_with_ceiling) <= direct);
            assert!(b.m2_with_ceiling <= b.m3, "n={n}");
        }
    }

    #[test]
    fn star() {
        assert_eq!(star_bound(5), Ok(4));
        assert!(star_bound(2).is_err());
    }

    #[test]
    fn table_rows() {
        let t = bound_table(9..=10, 2..=3);
        assert_eq!(t.len(), 4);
        let row = t.iter().find(|r| (r.n, r.gamma) == (10, 3)).unwrap();
        assert_eq!((row.m_bipartite, row.m_fischermann, row.phi), (15, 18, 0));
        assert_eq!(row.vizing, Rational::new(63, 2));
        let json = serde_json::to_value(row).unwrap();
        assert_eq!(json["vizing"], "63/2");
    }
}

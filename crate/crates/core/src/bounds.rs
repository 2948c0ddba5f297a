//! Closed-form bounds on the energy per vertex of k-regular graphs, and the
//! comparison constants they are measured against.

use crate::finitefield::smallest_prime_power_at_least;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BoundsError {
    #[error("k must be at least 2, got {0}")]
    BadK(u64),
    #[error("bad arguments: {0}")]
    BadArgs(String),
}

/// Upper bound (k + (k^2-k) sqrt(k-1)) / (k^2-k+1), attained exactly by
/// disjoint unions of incidence graphs of projective planes of order k-1
/// (triangles and hexagons for k = 2).
pub fn thm1_upper(k: u64) -> Result<f64, BoundsError> {
    if k < 2 {
        return Err(BoundsError::BadK(k));
    }
    let kf = k as f64;
    Ok((kf + (kf * kf - kf) * (kf - 1.0).sqrt()) / (kf * kf - kf + 1.0))
}

/// Cauchy-Schwarz bound k/m + sqrt((m-1)(m-k)k)/m for a connected bipartite
/// k-regular graph on 2m vertices.
pub fn cs_upper(k: u64, m: u64) -> Result<f64, BoundsError> {
    if k < 1 || m < k {
        return Err(BoundsError::BadArgs(format!("need m >= k >= 1, got k={k} m={m}")));
    }
    let kf = k as f64;
    let mf = m as f64;
    Ok(kf / mf + ((mf - 1.0) * (mf - kf) * kf).sqrt() / mf)
}

/// Interlacing lower bound for the (q - ell)-regular truncation of the
/// pencil semiplane S(q^2-1, q, q-1):
/// (2q - ell + sqrt(q)(q^2 - 2q ell + 2 ell - q - 2)) / ((q-1)(q+1-ell)).
pub fn interlacing_lower(q: u64, ell: u64) -> Result<f64, BoundsError> {
    if q < 2 || ell > q - 2 {
        return Err(BoundsError::BadArgs(format!(
            "need 0 <= ell <= q-2 with q >= 2, got q={q} ell={ell}"
        )));
    }
    let qf = q as f64;
    let lf = ell as f64;
    Ok((2.0 * qf - lf + qf.sqrt() * (qf * qf - 2.0 * qf * lf + 2.0 * lf - qf - 2.0))
        / ((qf - 1.0) * (qf + 1.0 - lf)))
}

/// Existence lower bound for k-regular graphs: with ell the distance from k
/// to the next prime power q = k + ell, some k-regular graph has energy per
/// vertex at least (2k + ell + sqrt(k+ell)(k^2 - ell^2 + ell - k - 2)) /
/// ((k+1)(k+ell-1)). Returns (value, q, ell).
pub fn thm2_lower(k: u64) -> Result<(f64, u64, u64), BoundsError> {
    if k < 2 {
        return Err(BoundsError::BadK(k));
    }
    let (q, ell) = smallest_prime_power_at_least(k);
    let value = interlacing_lower(q, ell)?;
    Ok((value, q, ell))
}

/// Asymptotic floor sqrt(k) - k^(1/40); vacuous for small k.
pub fn corollary_floor(k: u64) -> Result<f64, BoundsError> {
    if k < 2 {
        return Err(BoundsError::BadK(k));
    }
    let kf = k as f64;
    Ok(kf.sqrt() - kf.powf(1.0 / 40.0))
}

/// Reference constants: the ~sqrt(k/2) level of maximal-energy graphs, the
/// 4/pi supremum for trees, and the trivial floor of 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonConstants {
    pub km_nikiforov: f64,
    pub tree_limit: f64,
    pub trivial_floor: f64,
}

pub fn comparison_constants(k: u64) -> ComparisonConstants {
    ComparisonConstants {
        km_nikiforov: (k as f64 / 2.0).sqrt(),
        tree_limit: 4.0 / std::f64::consts::PI,
        trivial_floor: 1.0,
    }
}

/// Everything the `bound` command reports for one k.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub k: u64,
    pub thm1_upper: f64,
    pub q: u64,
    pub ell: u64,
    pub thm2_lower: f64,
    pub corollary_floor: f64,
    pub cs_upper: Option<f64>,
    pub constants: ComparisonConstants,
}

pub fn bound_report(k: u64, m: Option<u64>) -> Result<BoundReport, BoundsError> {
    let thm1 = thm1_upper(k)?;
    let (thm2, q, ell) = thm2_lower(k)?;
    let cs = match m {
        Some(m) => Some(cs_upper(k, m)?),
        None => None,
    };
    Ok(BoundReport {
        k,
        thm1_upper: thm1,
        q,
        ell,
        thm2_lower: thm2,
        corollary_floor: corollary_floor(k)?,
        cs_upper: cs,
        constants: comparison_constants(k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upper_bound_values() {
        assert!((thm1_upper(2).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!((thm1_upper(7).unwrap() - 2.555315562718453).abs() < 1e-12);
        assert!((thm1_upper(11).unwrap() - 3.2328877713380337).abs() < 1e-12);
        assert_eq!(thm1_upper(1), Err(BoundsError::BadK(1)));
    }

    #[test]
    fn cauchy_schwarz_values() {
        // m = k^2 - k + 1 reproduces the main upper bound
        assert!((cs_upper(3, 7).unwrap() - thm1_upper(3).unwrap()).abs() < 1e-15);
        assert_eq!(cs_upper(3, 3).unwrap(), 1.0);
        assert!((cs_upper(7, 45).unwrap() - 2.5596672597864036).abs() < 1e-12);
        assert!(cs_upper(3, 2).is_err());
    }

    #[test]
    fn interlacing_values() {
        assert!((interlacing_lower(7, 0).unwrap() - 2.4964594258871586).abs() < 1e-12);
        let expect = (13.0 + 28.0 * 7.0f64.sqrt()) / 42.0;
        assert!((interlacing_lower(7, 1).unwrap() - expect).abs() < 1e-15);
        assert!((interlacing_lower(11, 0).unwrap() - 3.168295644653193).abs() < 1e-12);
        assert!(interlacing_lower(7, 6).is_err());
    }

    #[test]
    fn lower_bound_values() {
        let (v7, q7, l7) = thm2_lower(7).unwrap();
        assert_eq!((q7, l7), (7, 0));
        assert!((v7 - 2.4964594258871586).abs() < 1e-12);

        let (v6, q6, l6) = thm2_lower(6).unwrap();
        assert_eq!((q6, l6), (7, 1));
        assert!((v6 - (13.0 + 28.0 * 7.0f64.sqrt()) / 42.0).abs() < 1e-15);

        let (v10, q10, l10) = thm2_lower(10).unwrap();
        assert_eq!((q10, l10), (11, 1));
        assert!((v10 - (21.0 + 88.0 * 11.0f64.sqrt()) / 110.0).abs() < 1e-15);
    }

    #[test]
    fn floor_values() {
        assert!((corollary_floor(16).unwrap() - 2.928226537463707).abs() < 1e-12);
        assert!((corollary_floor(4).unwrap() - 0.9647350761586225).abs() < 1e-12);
        assert!((corollary_floor(100).unwrap() - 8.877981545698036).abs() < 1e-12);
    }

    #[test]
    fn constants() {
        let c = comparison_constants(8);
        assert_eq!(c.km_nikiforov, 2.0);
        assert!((c.tree_limit - 1.2732395447351628).abs() < 1e-15);
        assert_eq!(c.trivial_floor, 1.0);
    }

    #[test]
    fn bound_ordering() {
        // 1 <= thm2 <= thm1 across the range the report covers
        for k in 2..=200u64 {
            let (lo, _, _) = thm2_lower(k).unwrap();
            let hi = thm1_upper(k).unwrap();
            assert!(lo <= hi + 1e-9, "k = {k}: {lo} > {hi}");
            assert!(lo >= 1.0 - 1e-9, "k = {k}: {lo} < 1");
        }
    }

    #[test]
    fn report_shape() {
        let r = bound_report(7, Some(45)).unwrap();
        assert_eq!(r.q, 7);
        assert_eq!(r.ell, 0);
        assert!(r.cs_upper.is_some());
        assert!(bound_report(7, None).unwrap().cs_upper.is_none());
    }
}

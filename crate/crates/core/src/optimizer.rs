//! The constrained eigenvalue-profile optimization: maximize the sum of m
//! nonnegative values lambda_i <= k subject to sum lambda_i^2 = mk and
//! sum lambda_i^4 >= mk(2k-1).
//!
//! Three independent views of the problem live here: the closed-form
//! optimum (t values at k, the rest at sqrt(k-1), for m = t(k^2-k+1)), a
//! seeded multi-start numeric oracle (penalty ascent, projection, then
//! tangent polish), and a least-squares KKT stationarity certificate that
//! measures how far a feasible point is from first-order optimality.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OptError {
    #[error("bad arguments: {0}")]
    BadArgs(String),
    #[error("no restart produced a feasible point for k={k}, m={m}")]
    NoFeasiblePoint { k: u64, m: usize },
}

/// Desk-scale limits for the numeric oracle.
pub const ORACLE_MAX_M: usize = 12;
pub const ORACLE_MAX_K: u64 = 4;

/// A candidate solution: values with multiplicities, plus the constraint
/// residuals at that point.
#[derive(Debug, Clone)]
pub struct OptPoint {
    entries: Vec<(f64, usize)>,
    objective: f64,
    g_residual: f64,
    h0_value: f64,
}

impl OptPoint {
    fn from_values(values: &[f64], k: u64, m: usize) -> OptPoint {
        assert_eq!(values.len(), m);
        let mut sorted = values.to_vec();
        sorted.sort_unstable_by(|a, b| b.total_cmp(a));
        // merge numerically identical values
        let mut entries: Vec<(f64, usize)> = Vec::new();
        for &v in &sorted {
            match entries.last_mut() {
                Some((w, c)) if (*w - v).abs() <= 1e-12 => *c += 1,
                _ => entries.push((v, 1)),
            }
        }
        let kf = k as f64;
        let mf = m as f64;
        let objective: f64 = sorted.iter().sum();
        let g_residual = sorted.iter().map(|v| v * v).sum::<f64>() - mf * kf;
        let h0_value =
            sorted.iter().map(|v| v * v * v * v).sum::<f64>() - mf * kf * (2.0 * kf - 1.0);
        OptPoint { entries, objective, g_residual, h0_value }
    }

    pub fn entries(&self) -> &[(f64, usize)] {
        &self.entries
    }

    pub fn multiplicity_sum(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    pub fn objective(&self) -> f64 {
        self.objective
    }

    pub fn g_residual(&self) -> f64 {
        self.g_residual
    }

    pub fn h0_value(&self) -> f64 {
        self.h0_value
    }

    pub fn values_expanded(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.multiplicity_sum());
        for &(v, m) in &self.entries {
            out.extend(std::iter::repeat_n(v, m));
        }
        out
    }

    /// Entries re-clustered with the given value gap (for checking how many
    /// distinct values an optimum takes).
    pub fn clustered_values(&self, gap: f64) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &(v, m) in &self.entries {
            match out.last_mut() {
                Some((w, c)) if (*w - v).abs() <= gap => {
                    // weighted running mean keeps the representative stable
                    *w = (*w * *c as f64 + v * m as f64) / (*c + m) as f64;
                    *c += m;
                }
                _ => out.push((v, m)),
            }
        }
        out
    }
}

/// The optimum for m = t(k^2-k+1): t entries at k and t(k^2-k) entries at
/// sqrt(k-1). Both constraints are tight there.
pub fn closed_form_optimum(k: u64, t: usize) -> Result<OptPoint, OptError> {
    if k < 2 || t < 1 {
        return Err(OptError::BadArgs(format!("need k >= 2 and t >= 1, got k={k} t={t}")));
    }
    let kf = k as f64;
    let kk = (k * k - k) as usize;
    let m = t * (kk + 1);
    let mut values = Vec::with_capacity(m);
    values.extend(std::iter::repeat_n(kf, t));
    values.extend(std::iter::repeat_n((kf - 1.0).sqrt(), t * kk));
    let p = OptPoint::from_values(&values, k, m);
    debug_assert!(p.g_residual.abs() <= 1e-9 * (m as f64) * kf * kf);
    debug_assert!(p.h0_value.abs() <= 1e-9 * (m as f64) * kf.powi(4));
    Ok(p)
}

/// Feasibility diagnostics for a candidate point.
#[derive(Debug, Clone, Copy)]
pub struct Feasibility {
    pub feasible: bool,
    pub g_residual: f64,
    pub h0_value: f64,
    pub box_violation: f64,
}

/// |g| <= tol, h0 >= -tol, and every value inside [-tol, k+tol].
pub fn feasibility_check(p: &OptPoint, k: u64, m: usize, tol: f64) -> Feasibility {
    let kf = k as f64;
    let mut box_violation: f64 = 0.0;
    for &(v, _) in p.entries() {
        box_violation = box_violation.max(-v).max(v - kf);
    }
    let ok = p.multiplicity_sum() == m
        && p.g_residual.abs() <= tol
        && p.h0_value >= -tol
        && box_violation <= tol;
    Feasibility {
        feasible: ok,
        g_residual: p.g_residual,
        h0_value: p.h0_value,
        box_violation: box_violation.max(0.0),
    }
}

struct ProblemScale {
    kf: f64,
    mf: f64,
    sphere: f64, // mk
    walk4: f64,  // mk(2k-1)
}

impl ProblemScale {
    fn new(k: u64, m: usize) -> ProblemScale {
        let kf = k as f64;
        let mf = m as f64;
        ProblemScale { kf, mf, sphere: mf * kf, walk4: mf * kf * (2.0 * kf - 1.0) }
    }

    fn g(&self, x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum::<f64>() - self.sphere
    }

    fn h0(&self, x: &[f64]) -> f64 {
        x.iter().map(|v| v * v * v * v).sum::<f64>() - self.walk4
    }

    fn f(&self, x: &[f64]) -> f64 {
        x.iter().sum()
    }
}

/// Multi-start numeric oracle. Deterministic for fixed arguments: restart
/// r uses a ChaCha stream derived from (master_seed, r), and ties between
/// equal objectives go to the earliest restart.
pub fn numeric_optimum(
    k: u64,
    m: usize,
    seeds: usize,
    tol: f64,
    master_seed: u64,
) -> Result<OptPoint, OptError> {
    if !(2..=ORACLE_MAX_K).contains(&k) {
        return Err(OptError::BadArgs(format!(
            "oracle supports 2 <= k <= {ORACLE_MAX_K}, got k={k}"
        )));
    }
    if !(1..=ORACLE_MAX_M).contains(&m) {
        return Err(OptError::BadArgs(format!(
            "oracle supports 1 <= m <= {ORACLE_MAX_M}, got m={m}"
        )));
    }
    if seeds < 1 {
        return Err(OptError::BadArgs("need at least one restart".into()));
    }
    if tol <= 0.0 || tol.is_nan() {
        return Err(OptError::BadArgs(format!("tolerance must be positive, got {tol}")));
    }
    let scale = ProblemScale::new(k, m);
    let mut best: Option<OptPoint> = None;
    for restart in 0..seeds {
        let mut rng =
            ChaCha8Rng::seed_from_u64(master_seed ^ (restart as u64).wrapping_mul(0x9E3779B97F4A7C15));
        let mut x: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..=scale.kf)).collect();
        penalty_ascent(&mut x, &scale);
        project_to_sphere_box(&mut x, &scale);
        restore_quartic_floor(&mut x, &scale);
        tangent_polish(&mut x, &scale);
        project_to_sphere_box(&mut x, &scale);
        let point = OptPoint::from_values(&x, k, m);
        if !feasibility_check(&point, k, m, tol).feasible {
            continue;
        }
        match &best {
            Some(b) if b.objective >= point.objective => {}
            _ => best = Some(point),
        }
    }
    best.ok_or(OptError::NoFeasiblePoint { k, m })
}

/// Gradient ascent on f minus quadratic penalties for g = 0 and h0 >= 0,
/// with geometrically growing penalty weight and box clamping.
fn penalty_ascent(x: &mut [f64], scale: &ProblemScale) {
    let m = x.len();
    let penalized = |x: &[f64], mu: f64| -> f64 {
        let g = scale.g(x) / scale.sphere;
        let h = (scale.h0(x) / scale.walk4).min(0.0);
        scale.f(x) - mu * g * g - mu * h * h
    };
    for round in 0..6 {
        let mu = 10f64.powi(round + 1);
        let mut step = 0.05 * scale.kf;
        let mut current = penalized(x, mu);
        for _ in 0..250 {
            let g = scale.g(x) / scale.sphere;
            let h = (scale.h0(x) / scale.walk4).min(0.0);
            let mut grad = vec![0.0; m];
            for i in 0..m {
                grad[i] = 1.0 - mu * 4.0 * g * x[i] / scale.sphere
                    - mu * 8.0 * h * x[i] * x[i] * x[i] / scale.walk4;
            }
            let candidate: Vec<f64> = x
                .iter()
                .zip(&grad)
                .map(|(&v, &d)| (v + step * d).clamp(0.0, scale.kf))
                .collect();
            let value = penalized(&candidate, mu);
            if value > current {
                x.copy_from_slice(&candidate);
                current = value;
                step = (step * 1.25).min(0.2 * scale.kf);
            } else {
                step *= 0.5;
                if step < 1e-14 {
                    break;
                }
            }
        }
    }
}

/// Alternates box clamping with radial rescaling onto the sphere
/// sum x^2 = mk; converges because clamping only ever shrinks the norm.
fn project_to_sphere_box(x: &mut [f64], scale: &ProblemScale) {
    for _ in 0..80 {
        let norm2: f64 = x.iter().map(|v| v * v).sum();
        if norm2 <= 0.0 {
            // degenerate start; spread evenly
            let v = (scale.sphere / scale.mf).sqrt();
            x.iter_mut().for_each(|e| *e = v);
            continue;
        }
        let factor = (scale.sphere / norm2).sqrt();
        let mut clamped = false;
        for e in x.iter_mut() {
            *e *= factor;
            if *e > scale.kf {
                *e = scale.kf;
                clamped = true;
            }
        }
        if !clamped && (factor - 1.0).abs() < 1e-15 {
            break;
        }
    }
}

/// If the quartic floor is violated after projection, climbs h0 along the
/// sphere (projected gradient, box-respecting) until the point is feasible
/// with a little margin. The sphere maximum of h0 puts all mass on one
/// coordinate, which satisfies the floor, so the climb has room.
fn restore_quartic_floor(x: &mut [f64], scale: &ProblemScale) {
    let m = x.len();
    let margin = 1e-9 * scale.walk4;
    if scale.h0(x) >= margin {
        return;
    }
    let mut step = 0.05 * scale.kf;
    for _ in 0..600 {
        let current = scale.h0(x);
        if current >= margin {
            break;
        }
        let mut basis = vec![x.iter().map(|&v| 2.0 * v).collect::<Vec<f64>>()];
        orthonormalize(&mut basis);
        let mut dir: Vec<f64> = x.iter().map(|&v| 4.0 * v * v * v).collect();
        for b in &basis {
            let dot: f64 = dir.iter().zip(b).map(|(a, c)| a * c).sum();
            dir.iter_mut().zip(b).for_each(|(a, c)| *a -= dot * c);
        }
        for i in 0..m {
            if x[i] >= scale.kf - 1e-11 && dir[i] > 0.0 {
                dir[i] = 0.0;
            }
            if x[i] <= 1e-11 && dir[i] < 0.0 {
                dir[i] = 0.0;
            }
        }
        let norm: f64 = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-14 {
            // flat spot (all coordinates equal); nudge mass onto the first
            // free coordinate deterministically
            for v in x.iter_mut() {
                *v *= 0.99;
            }
            x[0] = (x[0] + 0.05 * scale.kf).min(scale.kf);
            project_to_sphere_box(x, scale);
            continue;
        }
        let mut candidate: Vec<f64> = x
            .iter()
            .zip(&dir)
            .map(|(&v, &d)| (v + step * d / norm).clamp(0.0, scale.kf))
            .collect();
        project_to_sphere_box(&mut candidate, scale);
        if scale.h0(&candidate) > current {
            x.copy_from_slice(&candidate);
            step = (step * 1.3).min(0.2 * scale.kf);
        } else {
            step *= 0.5;
            if step < 1e-13 {
                break;
            }
        }
    }
}

/// Ascent restricted to the feasible surface: the direction of increasing f
/// is projected against the gradients of the active constraints (the sphere
/// always, the quartic floor when tight) and against the active box faces.
/// A step first re-projects onto the sphere, then restores the quartic
/// floor when the curvature dragged it slightly negative, and is accepted
/// only if f improved; this predictor-corrector slides cleanly along the
/// floor surface where the optimum lives.
fn tangent_polish(x: &mut [f64], scale: &ProblemScale) {
    let m = x.len();
    let h_active_band = 1e-7 * scale.walk4;
    let h_floor = -1e-12 * scale.walk4;
    let mut step = 0.05 * scale.kf;
    let mut current = scale.f(x);
    for _ in 0..800 {
        let mut basis: Vec<Vec<f64>> = vec![x.iter().map(|&v| 2.0 * v).collect()];
        if scale.h0(x) <= h_active_band {
            basis.push(x.iter().map(|&v| 4.0 * v * v * v).collect());
        }
        orthonormalize(&mut basis);
        let mut dir = vec![1.0; m];
        for _ in 0..2 {
            for b in &basis {
                let dot: f64 = dir.iter().zip(b).map(|(a, c)| a * c).sum();
                dir.iter_mut().zip(b).for_each(|(a, c)| *a -= dot * c);
            }
            // do not push through active box faces
            for i in 0..m {
                if x[i] >= scale.kf - 1e-11 && dir[i] > 0.0 {
                    dir[i] = 0.0;
                }
                if x[i] <= 1e-11 && dir[i] < 0.0 {
                    dir[i] = 0.0;
                }
            }
        }
        let norm: f64 = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-14 {
            break;
        }
        let candidate: Vec<f64> = {
            let mut c: Vec<f64> = x
                .iter()
                .zip(&dir)
                .map(|(&v, &d)| (v + step * d / norm).clamp(0.0, scale.kf))
                .collect();
            project_to_sphere_box(&mut c, scale);
            if scale.h0(&c) < h_floor {
                restore_quartic_floor(&mut c, scale);
            }
            c
        };
        let value = scale.f(&candidate);
        if scale.h0(&candidate) >= h_floor && value > current {
            x.copy_from_slice(&candidate);
            current = value;
            step = (step * 1.3).min(0.1 * scale.kf);
        } else {
            step *= 0.5;
            if step < 1e-13 {
                break;
            }
        }
    }
}

fn orthonormalize(basis: &mut Vec<Vec<f64>>) {
    let mut kept: Vec<Vec<f64>> = Vec::new();
    for mut v in basis.drain(..) {
        for u in &kept {
            let dot: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(u).for_each(|(a, b)| *a -= dot * b);
        }
        let norm: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-12 {
            v.iter_mut().for_each(|a| *a /= norm);
            kept.push(v);
        }
    }
    *basis = kept;
}

/// First-order stationarity certificate with fitted multipliers.
#[derive(Debug, Clone)]
pub struct KktCertificate {
    pub c1: f64,
    pub c2: f64,
    /// Box multipliers aligned with the point's entries; zero off the
    /// active set.
    pub d: Vec<f64>,
    pub stationarity_residual: f64,
    /// Indices of entries whose value sits at the box bound k.
    pub active_entries: Vec<usize>,
}

/// Fits (c1, c2, d) in the stationarity equation
/// 1 + 2 c1 lambda_i + 4 c2 lambda_i^3 - d_i = 0 by least squares, with
/// c2 forced to zero when the quartic constraint is slack and d_i forced to
/// zero off the active box set. Reports the residual norm over the inactive
/// coordinates (active ones are matched exactly by their d_i).
pub fn kkt_residual(p: &OptPoint, k: u64, activation_tol: f64) -> KktCertificate {
    let kf = k as f64;
    let active: Vec<usize> = (0..p.entries.len())
        .filter(|&i| kf - p.entries[i].0 <= activation_tol)
        .collect();
    let inactive: Vec<usize> = (0..p.entries.len())
        .filter(|&i| kf - p.entries[i].0 > activation_tol)
        .collect();
    let h0_active = p.h0_value <= activation_tol;

    // weighted least squares over the inactive entries
    let rows: Vec<(f64, f64, f64)> = inactive
        .iter()
        .map(|&i| {
            let (v, mult) = p.entries[i];
            (2.0 * v, 4.0 * v * v * v, mult as f64)
        })
        .collect();
    let (mut c1, mut c2) = (0.0, 0.0);
    if !rows.is_empty() {
        if h0_active {
            // normal equations for two unknowns, with a min-norm fallback
            // when every inactive value coincides (rank one)
            let (mut a11, mut a12, mut a22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for &(u, w, wt) in &rows {
                a11 += wt * u * u;
                a12 += wt * u * w;
                a22 += wt * w * w;
                b1 += -(wt * u);
                b2 += -(wt * w);
            }
            let det = a11 * a22 - a12 * a12;
            if det > 1e-10 * a11.max(1.0) * a22.max(1.0) {
                c1 = (b1 * a22 - b2 * a12) / det;
                c2 = (a11 * b2 - a12 * b1) / det;
            } else {
                // single effective equation u c1 + w c2 = -1
                let (u, w, _) = rows[0];
                let nn = u * u + w * w;
                c1 = -u / nn;
                c2 = -w / nn;
                // use the leftover freedom to keep box multipliers nonnegative
                if !active.is_empty() {
                    let t = (-w / nn.sqrt(), u / nn.sqrt());
                    let d0 = 1.0 + 2.0 * c1 * kf + 4.0 * c2 * kf * kf * kf;
                    let slope = 2.0 * kf * t.0 + 4.0 * kf * kf * kf * t.1;
                    if d0 < 0.0 && slope.abs() > 1e-12 {
                        let s = -d0 / slope;
                        c1 += s * t.0;
                        c2 += s * t.1;
                    }
                }
            }
        } else {
            // c2 pinned at zero: fit c1 alone
            let num: f64 = rows.iter().map(|&(u, _, wt)| wt * u).sum();
            let den: f64 = rows.iter().map(|&(u, _, wt)| wt * u * u).sum();
            if den > 0.0 {
                c1 = -num / den;
            }
        }
    }
    let mut residual_sq = 0.0;
    for &(u, w, wt) in &rows {
        let r = 1.0 + c1 * u + c2 * w;
        residual_sq += wt * r * r;
    }
    let d: Vec<f64> = (0..p.entries.len())
        .map(|i| {
            if active.contains(&i) {
                let v = p.entries[i].0;
                1.0 + 2.0 * c1 * v + 4.0 * c2 * v * v * v
            } else {
                0.0
            }
        })
        .collect();
    KktCertificate {
        c1,
        c2,
        d,
        stationarity_residual: residual_sq.sqrt(),
        active_entries: active,
    }
}

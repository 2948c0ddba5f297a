//! Adjacency spectra and graph energy.
//!
//! Bipartite graphs go through the point-block Gram route: with biadjacency
//! N, the adjacency eigenvalues are the singular values of N with both
//! signs, padded with zeros. The Gram matrix N N^T (taken on the smaller
//! side) is handed to a cyclic Jacobi solver, which keeps the problem at
//! half size and makes the +/- symmetry of the result exact. Everything
//! else is solved directly by Jacobi on the adjacency matrix.

use crate::finitefield::{is_prime_power, FieldError};
use crate::graphcore::Graph;
use serde::Deserialize;
use thiserror::Error;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("Jacobi iteration failed to converge at n = {0}")]
    NoConvergence(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("infeasible strongly-regular parameters ({v},{k},{lambda},{mu}): {reason}")]
    SrgInfeasible { v: u64, k: u64, lambda: u64, mu: u64, reason: String },
    #[error("spectrum file: {0}")]
    BadSpectrumFile(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// How a spectrum was obtained; carried through energy reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Computed,
    ClosedForm,
    UserSupplied,
}

/// All n adjacency eigenvalues, sorted descending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    values: Vec<f64>,
    origin: Origin,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>, origin: Origin) -> Spectrum {
        values.sort_unstable_by(|a, b| b.total_cmp(a));
        Spectrum { values, origin }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    /// Sum of absolute eigenvalues.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum()
    }

    /// Mean absolute eigenvalue.
    pub fn energy_per_vertex(&self) -> f64 {
        assert!(!self.values.is_empty(), "energy per vertex of an empty spectrum");
        self.energy() / self.values.len() as f64
    }
}

/// Distinct eigenvalues with multiplicities, strictly descending.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteredSpectrum {
    pairs: Vec<(f64, usize)>,
}

impl ClusteredSpectrum {
    /// Builds directly from (value, multiplicity) pairs; zero multiplicities
    /// are dropped and values sorted descending.
    pub fn from_pairs(pairs: Vec<(f64, usize)>) -> ClusteredSpectrum {
        let mut pairs: Vec<_> = pairs.into_iter().filter(|&(_, m)| m > 0).collect();
        pairs.sort_unstable_by(|a, b| b.0.total_cmp(&a.0));
        ClusteredSpectrum { pairs }
    }

    pub fn pairs(&self) -> &[(f64, usize)] {
        &self.pairs
    }

    pub fn multiplicity_sum(&self) -> usize {
        self.pairs.iter().map(|&(_, m)| m).sum()
    }

    /// Expands back to a full spectrum with the given origin tag.
    pub fn to_spectrum(&self, origin: Origin) -> Spectrum {
        let mut values = Vec::with_capacity(self.multiplicity_sum());
        for &(v, m) in &self.pairs {
            values.extend(std::iter::repeat_n(v, m));
        }
        Spectrum::new(values, origin)
    }
}

/// Greedy clustering of a sorted spectrum: consecutive values merge while
/// the gap to the previous value is at most `ctol`; each cluster reports
/// its mean.
pub fn cluster(s: &Spectrum, ctol: f64) -> ClusteredSpectrum {
    assert!(ctol > 0.0);
    let mut pairs = Vec::new();
    let vals = s.values();
    let mut i = 0;
    while i < vals.len() {
        let mut j = i + 1;
        while j < vals.len() && vals[j - 1] - vals[j] <= ctol {
            j += 1;
        }
        let mean = vals[i..j].iter().sum::<f64>() / (j - i) as f64;
        pairs.push((mean, j - i));
        i = j;
    }
    ClusteredSpectrum { pairs }
}

/// Eigenvalues of the adjacency matrix of `g`, each accurate to well within
/// `tol` absolutely for the sizes this crate targets (n <= 600).
pub fn eigenvalues(g: &Graph, tol: f64) -> Result<Spectrum, SpectralError> {
    assert!(tol > 0.0);
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Spectrum::new(vec![], Origin::Computed));
    }
    if let Some((side0, side1)) = g.bipartition() {
        return bipartite_spectrum(g, &side0, &side1);
    }
    let mut mat = vec![0.0f64; n * n];
    for (u, v) in g.edges() {
        mat[u * n + v] = 1.0;
        mat[v * n + u] = 1.0;
    }
    let eig = jacobi_eigenvalues(mat, n)?;
    Ok(Spectrum::new(eig, Origin::Computed))
}

/// The Gram route for bipartite graphs: exact +/- pairing and exact zeros.
fn bipartite_spectrum(
    g: &Graph,
    side0: &[usize],
    side1: &[usize],
) -> Result<Spectrum, SpectralError> {
    let n = g.vertex_count();
    let (small, large) = if side0.len() <= side1.len() {
        (side0, side1)
    } else {
        (side1, side0)
    };
    let s = small.len();
    if s == 0 {
        return Ok(Spectrum::new(vec![0.0; n], Origin::Computed));
    }
    let mut pos_of = vec![usize::MAX; n];
    for (i, &v) in large.iter().enumerate() {
        pos_of[v] = i;
    }
    // rows of the biadjacency, as neighbor positions in the large side
    let rows: Vec<Vec<usize>> =
        small.iter().map(|&u| g.neighbors(u).iter().map(|&v| pos_of[v]).collect()).collect();
    // gram[i][j] = number of common neighbors of small[i] and small[j]
    let mut gram = vec![0.0f64; s * s];
    let mut marks = vec![false; large.len()];
    for i in 0..s {
        for &p in &rows[i] {
            marks[p] = true;
        }
        for j in i..s {
            let mut c = 0u64;
            for &p in &rows[j] {
                if marks[p] {
                    c += 1;
                }
            }
            gram[i * s + j] = c as f64;
            gram[j * s + i] = c as f64;
        }
        for &p in &rows[i] {
            marks[p] = false;
        }
    }
    let mut gram_eigs = jacobi_eigenvalues(gram, s)?;
    // The Gram matrix is positive semidefinite with integer entries; values
    // below the noise floor are exact zeros of the adjacency spectrum.
    let lambda_max = gram_eigs.iter().cloned().fold(0.0f64, f64::max);
    let zero_cut = 1e-10 * (1.0 + lambda_max);
    for v in gram_eigs.iter_mut() {
        if *v < zero_cut {
            *v = 0.0;
        }
    }
    let mut values = Vec::with_capacity(n);
    for &v in &gram_eigs {
        let sv = v.sqrt();
        values.push(sv);
        values.push(-sv);
    }
    values.extend(std::iter::repeat_n(0.0, n - 2 * s));
    Ok(Spectrum::new(values, Origin::Computed))
}

/// Cyclic Jacobi for dense symmetric matrices, eigenvalues only.
///
/// Rotations sweep the strict upper triangle row by row; small elements are
/// annihilated outright once their contribution is below machine noise for
/// the adjacent diagonal entries, so the off-diagonal mass reaches exactly
/// zero after a handful of sweeps.
fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>, SpectralError> {
    const MAX_SWEEPS: usize = 75;
    if n == 1 {
        return Ok(vec![a[0]]);
    }
    for sweep in 1..=MAX_SWEEPS {
        let mut off_sum = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off_sum += a[p * n + q].abs();
            }
        }
        if off_sum == 0.0 {
            let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
            eig.sort_unstable_by(|x, y| y.total_cmp(x));
            return Ok(eig);
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let small = 100.0 * apq.abs();
                if sweep > 4
                    && app.abs() + small == app.abs()
                    && aqq.abs() + small == aqq.abs()
                {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    1.0 / (2.0 * theta)
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = arp - s * (arq + tau * arp);
                    let new_rq = arq + s * (arp - tau * arq);
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
            }
        }
    }
    Err(SpectralError::NoConvergence(n))
}

/// Families with a closed-form incidence-graph spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormFamily {
    /// Incidence graph of a projective plane of order q.
    ProjectivePlane,
    /// Incidence graph of the semiplane S(q^2, q, q).
    SemiplaneParallel,
    /// Incidence graph of the semiplane S(q^2-1, q, q-1).
    SemiplanePencil,
}

/// Known spectra:
/// - plane of order q: {(q+1)^1, sqrt(q)^(q^2+q), -sqrt(q)^(q^2+q), -(q+1)^1}
/// - S(q^2,q,q): {q^1, sqrt(q)^(q(q-1)), 0^(2(q-1)), -sqrt(q)^(q(q-1)), -q^1}
/// - S(q^2-1,q,q-1): {q^1, sqrt(q)^(q^2-q-2), 1^q, -1^q, -sqrt(q)^(q^2-q-2), -q^1}
pub fn closed_form_spectrum(
    family: ClosedFormFamily,
    q: u64,
) -> Result<ClusteredSpectrum, SpectralError> {
    is_prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
    let qf = q as f64;
    let rq = qf.sqrt();
    let pairs = match family {
        ClosedFormFamily::ProjectivePlane => {
            let m = (q * q + q) as usize;
            vec![(qf + 1.0, 1), (rq, m), (-rq, m), (-(qf + 1.0), 1)]
        }
        ClosedFormFamily::SemiplaneParallel => {
            let m = (q * (q - 1)) as usize;
            vec![
                (qf, 1),
                (rq, m),
                (0.0, 2 * (q as usize - 1)),
                (-rq, m),
                (-qf, 1),
            ]
        }
        ClosedFormFamily::SemiplanePencil => {
            let m = (q * q - q - 2) as usize; // zero when q = 2
            vec![
                (qf, 1),
                (rq, m),
                (1.0, q as usize),
                (-1.0, q as usize),
                (-rq, m),
                (-qf, 1),
            ]
        }
    };
    Ok(ClusteredSpectrum::from_pairs(pairs))
}

/// Spectrum of a strongly regular graph with parameters (v, k, lambda, mu):
/// {k^1, theta^(m1), tau^(m2)} with theta/tau the roots of
/// x^2 - (lambda - mu) x - (k - mu) and multiplicities fixed by the traces.
pub fn srg_spectrum(
    v: u64,
    k: u64,
    lambda: u64,
    mu: u64,
) -> Result<ClusteredSpectrum, SpectralError> {
    let fail = |reason: &str| SpectralError::SrgInfeasible {
        v,
        k,
        lambda,
        mu,
        reason: reason.to_string(),
    };
    if v <= k || k < 1 {
        return Err(fail("requires v > k >= 1"));
    }
    // edge count identity between a vertex's neighborhood and the rest
    if k * (k - lambda - 1) != mu * (v - k - 1) {
        return Err(fail("k(k-lambda-1) = mu(v-k-1) fails"));
    }
    let lf = lambda as f64;
    let muf = mu as f64;
    let kf = k as f64;
    let vf = v as f64;
    let disc = (lf - muf) * (lf - muf) + 4.0 * (kf - muf);
    if disc <= 0.0 {
        return Err(fail("negative discriminant"));
    }
    let root = disc.sqrt();
    let theta = ((lf - muf) + root) / 2.0;
    let tau = ((lf - muf) - root) / 2.0;
    let m_theta = 0.5 * ((vf - 1.0) - (2.0 * kf + (vf - 1.0) * (lf - muf)) / root);
    let m_tau = 0.5 * ((vf - 1.0) + (2.0 * kf + (vf - 1.0) * (lf - muf)) / root);
    for m in [m_theta, m_tau] {
        if m < -1e-9 || (m - m.round()).abs() > 1e-9 {
            return Err(fail("multiplicities not nonnegative integers"));
        }
    }
    Ok(ClusteredSpectrum::from_pairs(vec![
        (kf, 1),
        (theta, m_theta.round() as usize),
        (tau, m_tau.round() as usize),
    ]))
}

#[derive(Deserialize)]
struct SpectrumFile {
    eigenvalues: Vec<f64>,
    #[serde(default)]
    #[allow(dead_code)]
    label: Option<String>,
}

/// Parses the spectrum JSON schema: `{"eigenvalues": [...], "label": "..."}`
/// with the label optional. Values may come in any order.
pub fn parse_spectrum_json(text: &str) -> Result<Spectrum, SpectralError> {
    let file: SpectrumFile = serde_json::from_str(text)
        .map_err(|e| SpectralError::BadSpectrumFile(e.to_string()))?;
    if file.eigenvalues.is_empty() {
        return Err(SpectralError::BadSpectrumFile("empty eigenvalue list".into()));
    }
    if file.eigenvalues.iter().any(|v| !v.is_finite()) {
        return Err(SpectralError::BadSpectrumFile("non-finite eigenvalue".into()));
    }
    Ok(Spectrum::new(file.eigenvalues, Origin::UserSupplied))
}

pub fn read_spectrum_json(path: &std::path::Path) -> Result<Spectrum, SpectralError> {
    let text = std::fs::read_to_string(path)?;
    parse_spectrum_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{
        bipartite_double, disjoint_union, standard_family, StandardFamily,
    };

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{x} vs {y}");
        }
    }

    #[test]
    fn hexagon_spectrum() {
        let g = standard_family(StandardFamily::Cycle, 6).unwrap();
        let s = eigenvalues(&g, DEFAULT_TOL).unwrap();
        assert_close(s.values(), &[2.0, 1.0, 1.0, -1.0, -1.0, -2.0], 1e-12);
        assert!((s.energy_per_vertex() - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_spectrum() {
        let g = standard_family(StandardFamily::Cycle, 3).unwrap();
        let s = eigenvalues(&g, DEFAULT_TOL).unwrap();
        assert_close(s.values(), &[2.0, -1.0, -1.0], 1e-12);
    }

    #[test]
    fn heawood_spectrum_and_clusters() {
        let g = crate::geometry::incidence_graph(&crate::geometry::projective_plane(2).unwrap());
        let s = eigenvalues(&g, DEFAULT_TOL).unwrap();
        let r2 = 2.0f64.sqrt();
        let expect: Vec<f64> = std::iter::once(3.0)
            .chain(std::iter::repeat_n(r2, 6))
            .chain(std::iter::repeat_n(-r2, 6))
            .chain(std::iter::once(-3.0))
            .collect();
        assert_close(s.values(), &expect, 1e-10);
        let c = cluster(&s, DEFAULT_CLUSTER_TOL);
        let mults: Vec<usize> = c.pairs().iter().map(|&(_, m)| m).collect();
        assert_eq!(mults, vec![1, 6, 6, 1]);
    }

    #[test]
    fn k33_spectrum() {
        let g = standard_family(StandardFamily::CompleteBipartite, 3).unwrap();
        let s = eigenvalues(&g, DEFAULT_TOL).unwrap();
        assert_close(s.values(), &[3.0, 0.0, 0.0, 0.0, 0.0, -3.0], 1e-12);
    }

    #[test]
    fn path5_matches_cosine_form() {
        let g = standard_family(StandardFamily::Path, 5).unwrap();
        let s = eigenvalues(&g, DEFAULT_TOL).unwrap();
        let mut expect: Vec<f64> = (1..=5)
            .map(|j| 2.0 * (j as f64 * std::f64::consts::PI / 6.0).cos())
            .collect();
        expect.sort_unstable_by(|a, b| b.total_cmp(a));
        assert_close(s.values(), &expect, 1e-12);
    }

    #[test]
    fn bipartite_symmetry_is_exact() {
        let g = crate::geometry::incidence_graph(
            &crate::geometry::remove_pencil(&crate::geometry::affine_plane(4).unwrap(), 0)
                .unwrap(),
        );
        let s = eigenvalues(&g, DEFAULT_TOL).unwrap();
        let v = s.values();
        let n = v.len();
        for i in 0..n {
            assert_eq!(v[i], -v[n - 1 - i], "exact symmetry at {i}");
        }
    }

    #[test]
    fn trace_constraints_hold() {
        let graphs = vec![
            standard_family(StandardFamily::Cycle, 7).unwrap(),
            crate::graphcore::random_regular(20, 3, 5).unwrap(),
            crate::geometry::incidence_graph(&crate::geometry::projective_plane(3).unwrap()),
        ];
        for g in &graphs {
            let s = eigenvalues(g, DEFAULT_TOL).unwrap();
            let sum: f64 = s.values().iter().sum();
            let sq: f64 = s.values().iter().map(|v| v * v).sum();
            assert!(sum.abs() < 1e-8);
            assert!((sq - 2.0 * g.edge_count() as f64).abs() < 1e-6);
        }
    }

    #[test]
    fn double_cover_energy_invariance() {
        for seed in 0..10u64 {
            let g = crate::graphcore::random_regular(14, 3, seed).unwrap();
            let e1 = eigenvalues(&g, DEFAULT_TOL).unwrap().energy_per_vertex();
            let e2 = eigenvalues(&bipartite_double(&g), DEFAULT_TOL)
                .unwrap()
                .energy_per_vertex();
            assert!((e1 - e2).abs() < 1e-9, "seed {seed}: {e1} vs {e2}");
        }
    }

    #[test]
    fn double_cover_spectrum_is_symmetrized_union() {
        for seed in [3u64, 11] {
            let g = crate::graphcore::random_regular(12, 3, seed).unwrap();
            let s = eigenvalues(&g, DEFAULT_TOL).unwrap();
            let d = eigenvalues(&bipartite_double(&g), DEFAULT_TOL).unwrap();
            let mut expect: Vec<f64> =
                s.values().iter().flat_map(|&v| [v, -v]).collect();
            expect.sort_unstable_by(|a, b| b.total_cmp(a));
            assert_close(d.values(), &expect, 1e-9);
        }
    }

    #[test]
    fn double_of_k22_doubles_the_spectrum() {
        let k22 = standard_family(StandardFamily::CompleteBipartite, 2).unwrap();
        let d = bipartite_double(&k22);
        let s = eigenvalues(&d, DEFAULT_TOL).unwrap();
        // two disjoint 4-cycles: every multiplicity of K_{2,2} doubled
        assert_close(s.values(), &[2.0, 2.0, 0.0, 0.0, 0.0, 0.0, -2.0, -2.0], 1e-10);
    }

    #[test]
    fn union_doubles_multiplicities() {
        let c4 = standard_family(StandardFamily::Cycle, 4).unwrap();
        let u = disjoint_union(&[c4.clone(), c4.clone()]).unwrap();
        let single = cluster(&eigenvalues(&c4, DEFAULT_TOL).unwrap(), DEFAULT_CLUSTER_TOL);
        let doubled = cluster(&eigenvalues(&u, DEFAULT_TOL).unwrap(), DEFAULT_CLUSTER_TOL);
        assert_eq!(single.pairs().len(), doubled.pairs().len());
        for (a, b) in single.pairs().iter().zip(doubled.pairs()) {
            assert!((a.0 - b.0).abs() < 1e-9);
            assert_eq!(2 * a.1, b.1);
        }
    }

    #[test]
    fn union_energy_is_weighted_mean() {
        let t = standard_family(StandardFamily::Cycle, 3).unwrap();
        let h = standard_family(StandardFamily::Cycle, 6).unwrap();
        let u = disjoint_union(&[t.clone(), h.clone()]).unwrap();
        let et = eigenvalues(&t, DEFAULT_TOL).unwrap().energy_per_vertex();
        let eh = eigenvalues(&h, DEFAULT_TOL).unwrap().energy_per_vertex();
        let eu = eigenvalues(&u, DEFAULT_TOL).unwrap().energy_per_vertex();
        assert!((eu - (3.0 * et + 6.0 * eh) / 9.0).abs() < 1e-9);
        assert!((eu - 4.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn clustering_rules() {
        let s = Spectrum::new(vec![2.0000001, 1.9999999, 0.0], Origin::UserSupplied);
        let c = cluster(&s, 1e-5);
        assert_eq!(c.pairs().len(), 2);
        assert!((c.pairs()[0].0 - 2.0).abs() < 1e-12);
        assert_eq!(c.pairs()[0].1, 2);
        assert_eq!(c.pairs()[1], (0.0, 1));

        let s2 = Spectrum::new(vec![3.0, 1.0, 1.0, -2.0], Origin::UserSupplied);
        let c2 = cluster(&s2, 1e-9);
        assert_eq!(c2.pairs(), &[(3.0, 1), (1.0, 2), (-2.0, 1)]);
    }

    #[test]
    fn closed_forms_match_computed_small() {
        use crate::geometry::*;
        let sp = remove_parallel_class(&affine_plane(3).unwrap(), Direction::Vertical).unwrap();
        let computed = eigenvalues(&incidence_graph(&sp), DEFAULT_TOL).unwrap();
        let expect = closed_form_spectrum(ClosedFormFamily::SemiplaneParallel, 3)
            .unwrap()
            .to_spectrum(Origin::ClosedForm);
        assert_close(computed.values(), expect.values(), 1e-9);

        let pp = remove_pencil(&affine_plane(3).unwrap(), 0).unwrap();
        let computed = eigenvalues(&incidence_graph(&pp), DEFAULT_TOL).unwrap();
        let expect = closed_form_spectrum(ClosedFormFamily::SemiplanePencil, 3)
            .unwrap()
            .to_spectrum(Origin::ClosedForm);
        assert_close(computed.values(), expect.values(), 1e-9);
    }

    #[test]
    fn pencil_semiplane_of_order_two_is_hexagon() {
        let c = closed_form_spectrum(ClosedFormFamily::SemiplanePencil, 2).unwrap();
        let s = c.to_spectrum(Origin::ClosedForm);
        assert_close(s.values(), &[2.0, 1.0, 1.0, -1.0, -1.0, -2.0], 0.0);
    }

    #[test]
    fn srg_spectra() {
        let hs = srg_spectrum(50, 7, 0, 1).unwrap();
        assert_eq!(hs.pairs(), &[(7.0, 1), (2.0, 28), (-3.0, 21)]);
        assert_eq!(hs.to_spectrum(Origin::ClosedForm).energy_per_vertex(), 126.0 / 50.0);

        let pentagon = srg_spectrum(5, 2, 0, 1).unwrap();
        let s5 = (5.0f64).sqrt();
        assert_eq!(pentagon.pairs().len(), 3);
        assert!((pentagon.pairs()[1].0 - (-1.0 + s5) / 2.0).abs() < 1e-12);
        assert_eq!(pentagon.pairs()[1].1, 2);
        let computed =
            eigenvalues(&standard_family(StandardFamily::Cycle, 5).unwrap(), DEFAULT_TOL)
                .unwrap();
        assert_close(
            computed.values(),
            pentagon.to_spectrum(Origin::ClosedForm).values(),
            1e-10,
        );

        let paley9 = srg_spectrum(9, 4, 1, 2).unwrap();
        assert_eq!(paley9.pairs(), &[(4.0, 1), (1.0, 4), (-2.0, 4)]);
        let trace: f64 =
            paley9.pairs().iter().map(|&(v, m)| v * m as f64).sum();
        assert!(trace.abs() < 1e-12);

        assert!(srg_spectrum(6, 3, 0, 2).is_err());
        // K_{3,3} as a strongly regular graph
        let k33 = srg_spectrum(6, 3, 0, 3).unwrap();
        assert_eq!(k33.pairs(), &[(3.0, 1), (0.0, 4), (-3.0, 1)]);
    }

    #[test]
    fn spectrum_json_round_trip() {
        let s = parse_spectrum_json(r#"{"eigenvalues": [1.5, -0.5, -1.0], "label": "x"}"#)
            .unwrap();
        assert_eq!(s.values(), &[1.5, -0.5, -1.0]);
        assert_eq!(s.origin(), Origin::UserSupplied);
        assert!(parse_spectrum_json(r#"{"eigenvalues": []}"#).is_err());
        assert!(parse_spectrum_json("nope").is_err());
    }

    #[test]
    fn zero_eigenvalues_of_complete_bipartite_are_exact() {
        for k in 1..=10usize {
            let g = standard_family(StandardFamily::CompleteBipartite, k).unwrap();
            let s = eigenvalues(&g, DEFAULT_TOL).unwrap();
            for &v in &s.values()[1..2 * k - 1] {
                assert_eq!(v, 0.0, "k = {k}");
            }
        }
    }
}

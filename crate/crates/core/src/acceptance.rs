//! End-to-end verification checklist: every headline number and structural
//! claim the workbench is supposed to reproduce, each with its pinned
//! tolerance. `epv verify` and the acceptance test target both run this.

use crate::bounds;
use crate::geometry::{
    affine_plane, incidence_graph, projective_plane, remove_parallel_class, remove_pencil,
    truncate_semiplane, Direction,
};
use crate::graphcore::{
    bipartite_double, closed_walks4, count_4cycles, disjoint_union, random_regular,
    standard_family, Graph, StandardFamily,
};
use crate::optimizer::{closed_form_optimum, kkt_residual, numeric_optimum};
use crate::spectral::{
    cluster, closed_form_spectrum, eigenvalues, parse_spectrum_json, srg_spectrum,
    ClosedFormFamily, Origin, DEFAULT_CLUSTER_TOL, DEFAULT_TOL,
};

/// Eigenvalue digits of the 90-vertex (7,6)-cage, shipped as a spectrum
/// file because the graph itself is out of scope here.
pub const CAGE76_SPECTRUM_JSON: &str = include_str!("../../../data/cage76.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: &'static str,
    pub label: &'static str,
    pub status: CheckStatus,
    pub details: String,
}

struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Check {
        Check { failures: Vec::new(), notes: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, text: String) {
        self.notes.push(text);
    }

    fn finish(self, id: &'static str, label: &'static str) -> CheckResult {
        if self.failures.is_empty() {
            CheckResult { id, label, status: CheckStatus::Pass, details: self.notes.join("; ") }
        } else {
            CheckResult {
                id,
                label,
                status: CheckStatus::Fail,
                details: self.failures.join("; "),
            }
        }
    }
}

fn energy_of(g: &Graph) -> f64 {
    eigenvalues(g, DEFAULT_TOL).expect("eigensolver converges at this size").energy_per_vertex()
}

/// Equality families meet the upper bound: incidence graphs of planes of
/// order q at k = q + 1, and the triangle/hexagon family at k = 2.
pub fn check_theorem1_equality() -> CheckResult {
    let mut c = Check::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let g = incidence_graph(&projective_plane(q).unwrap());
        let e = energy_of(&g);
        let bound = bounds::thm1_upper(q + 1).unwrap();
        c.require((e - bound).abs() <= 1e-9, || {
            format!("plane order {q}: energy {e:.12} vs bound {bound:.12}")
        });
    }
    let triangle = standard_family(StandardFamily::Cycle, 3).unwrap();
    let hexagon = standard_family(StandardFamily::Cycle, 6).unwrap();
    let union = disjoint_union(&[triangle.clone(), hexagon.clone()]).unwrap();
    for (name, g) in [("triangle", &triangle), ("hexagon", &hexagon), ("union", &union)] {
        let e = energy_of(g);
        c.require((e - 4.0 / 3.0).abs() <= 1e-12, || format!("{name}: energy {e:.15}"));
    }
    c.note("orders 2..9 and the k=2 family".into());
    c.finish("A1", "equality at the upper bound")
}

/// The headline numeric values: bound evaluations and semiplane energies.
pub fn check_value_table() -> CheckResult {
    let mut c = Check::new();
    let t7 = bounds::thm1_upper(7).unwrap();
    let t11 = bounds::thm1_upper(11).unwrap();
    c.require((t7 - 2.5553).abs() <= 5e-5, || format!("upper bound at k=7: {t7}"));
    c.require((t11 - 3.2329).abs() <= 5e-5, || format!("upper bound at k=11: {t11}"));

    let ag7 = affine_plane(7).unwrap();
    let pencil7 = energy_of(&incidence_graph(&remove_pencil(&ag7, 0).unwrap()));
    let r7 = 7.0f64.sqrt();
    c.require((pencil7 - 2.4965).abs() <= 5e-5, || format!("pencil semiplane q=7: {pencil7}"));
    c.require((pencil7 - (r7 + 14.0 / 48.0 - r7 / 6.0)).abs() <= 1e-9, || {
        format!("pencil q=7 exact form: {pencil7}")
    });

    let parallel7 =
        energy_of(&incidence_graph(&remove_parallel_class(&ag7, Direction::Vertical).unwrap()));
    c.require((parallel7 - 2.4106).abs() <= 5e-5, || {
        format!("parallel semiplane q=7: {parallel7}")
    });
    c.require((parallel7 - (r7 - 1.0 / r7 + 1.0 / 7.0)).abs() <= 1e-9, || {
        format!("parallel q=7 exact form: {parallel7}")
    });

    let ag11 = affine_plane(11).unwrap();
    let pencil11 = energy_of(&incidence_graph(&remove_pencil(&ag11, 0).unwrap()));
    c.require((pencil11 - 3.1683).abs() <= 5e-5, || format!("pencil semiplane q=11: {pencil11}"));
    c.note(format!("pencil7 {pencil7:.6}, parallel7 {parallel7:.6}, pencil11 {pencil11:.6}"));
    c.finish("A2", "reference value table")
}

/// The shipped (7,6)-cage spectrum and the Hoffman-Singleton comparison.
pub fn check_cage_and_srg() -> CheckResult {
    let mut c = Check::new();
    let cage = parse_spectrum_json(CAGE76_SPECTRUM_JSON).unwrap();
    c.require(cage.len() == 90, || format!("cage spectrum has {} values", cage.len()));
    let e = cage.energy_per_vertex();
    c.require((e - 2.5416).abs() <= 5e-5, || format!("cage energy per vertex: {e}"));

    let hs = srg_spectrum(50, 7, 0, 1).unwrap();
    let ehs = hs.to_spectrum(Origin::ClosedForm).energy_per_vertex();
    c.require(ehs == 126.0 / 50.0, || format!("Hoffman-Singleton energy: {ehs}"));
    c.note(format!("cage {e:.6}, srg(50,7,0,1) {ehs}"));
    c.finish("A3", "cage spectrum file and srg comparison")
}

/// Computed semiplane spectra match their closed forms, values and
/// multiplicities both.
pub fn check_closed_form_spectra() -> CheckResult {
    let mut c = Check::new();
    for q in [2u64, 3, 4, 5, 7, 11] {
        let ag = affine_plane(q).unwrap();
        let cases = [
            (
                ClosedFormFamily::SemiplaneParallel,
                incidence_graph(&remove_parallel_class(&ag, Direction::Vertical).unwrap()),
            ),
            (
                ClosedFormFamily::SemiplanePencil,
                incidence_graph(&remove_pencil(&ag, 0).unwrap()),
            ),
        ];
        for (family, graph) in cases {
            let computed = eigenvalues(&graph, DEFAULT_TOL).unwrap();
            let expected = closed_form_spectrum(family, q).unwrap();
            let expanded = expected.to_spectrum(Origin::ClosedForm);
            c.require(computed.len() == expanded.len(), || {
                format!("{family:?} q={q}: length {} vs {}", computed.len(), expanded.len())
            });
            let worst = computed
                .values()
                .iter()
                .zip(expanded.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            c.require(worst <= 1e-8, || format!("{family:?} q={q}: worst gap {worst:.2e}"));
            let clustered = cluster(&computed, DEFAULT_CLUSTER_TOL);
            let mults: Vec<usize> = clustered.pairs().iter().map(|&(_, m)| m).collect();
            let want: Vec<usize> = expected.pairs().iter().map(|&(_, m)| m).collect();
            c.require(mults == want, || {
                format!("{family:?} q={q}: multiplicities {mults:?} vs {want:?}")
            });
        }
    }
    c.note("q in {2,3,4,5,7,11}, both semiplanes".into());
    c.finish("A4", "closed-form spectra of semiplanes")
}

/// The k-regular truncations exist, have the right size, land between the
/// lower and upper bounds, and keep the interlacing multiplicities.
pub fn check_theorem2_truncation() -> CheckResult {
    let mut c = Check::new();
    for k in [4u64, 6, 10] {
        let (value, q, ell) = bounds::thm2_lower(k).unwrap();
        let sp = remove_pencil(&affine_plane(q).unwrap(), 0).unwrap();
        let truncated = truncate_semiplane(&sp, ell).unwrap();
        let g = incidence_graph(&truncated);
        let n_expect = (2 * (q * q - 1 - ell * (q - 1))) as usize;
        c.require(g.vertex_count() == n_expect, || {
            format!("k={k}: {} vertices, expected {n_expect}", g.vertex_count())
        });
        c.require(g.regularity() == Some(k as usize), || {
            format!("k={k}: not {k}-regular")
        });
        let s = eigenvalues(&g, DEFAULT_TOL).unwrap();
        let e = s.energy_per_vertex();
        let upper = bounds::thm1_upper(k).unwrap();
        c.require(e >= value - 1e-9, || format!("k={k}: energy {e} below bound {value}"));
        c.require(e <= upper + 1e-9, || format!("k={k}: energy {e} above bound {upper}"));

        // interlacing multiplicities: sqrt(q) copies and large leftovers
        let rq = (q as f64).sqrt();
        let kf = k as f64;
        let want_rq = (q * q - q - 2 - 2 * ell * (q - 1)) as usize;
        for sign in [1.0, -1.0] {
            let got = s.values().iter().filter(|&&v| (v - sign * rq).abs() <= 1e-6).count();
            c.require(got >= want_rq, || {
                format!("k={k}: {got} eigenvalues near {}sqrt(q), need {want_rq}", if sign > 0.0 { "" } else { "-" })
            });
        }
        // beyond +/-k and the guaranteed sqrt(q) copies, 2q more eigenvalues
        // of modulus at least 1 must remain (extra sqrt(q) survivors count)
        let big = s.values().iter().filter(|&&v| v.abs() >= 1.0 - 1e-6).count() as i64;
        let k_copies =
            s.values().iter().filter(|&&v| (v.abs() - kf).abs() <= 1e-6).count() as i64;
        let leftovers = big - k_copies - 2 * want_rq as i64;
        c.require(leftovers >= 2 * q as i64, || {
            format!("k={k}: only {leftovers} further eigenvalues of modulus >= 1")
        });
        c.note(format!("k={k}: q={q} ell={ell} energy {e:.6} in [{value:.6}, {upper:.6}]"));
    }
    c.finish("A5", "k-regular truncations and interlacing")
}

/// Numeric oracle vs closed form, value structure, and KKT stationarity.
pub fn check_optimizer() -> CheckResult {
    let mut c = Check::new();
    for (k, t) in [(2u64, 1usize), (2, 2), (3, 1)] {
        let cf = closed_form_optimum(k, t).unwrap();
        let m = cf.multiplicity_sum();
        match numeric_optimum(k, m, 64, 1e-8, 0) {
            Ok(p) => {
                let rel = (p.objective() - cf.objective()).abs() / cf.objective();
                c.require(rel <= 1e-5, || {
                    format!("k={k} t={t}: oracle {} vs {} (rel {rel:.2e})", p.objective(), cf.objective())
                });
                let clusters = p.clustered_values(1e-3);
                c.require(clusters.len() <= 2, || {
                    format!("k={k} t={t}: {} distinct optimal values", clusters.len())
                });
                c.require(
                    clusters.iter().any(|&(v, _)| (v - k as f64).abs() <= 1e-3),
                    || format!("k={k} t={t}: no optimal value at k"),
                );
            }
            Err(e) => c.require(false, || format!("k={k} t={t}: oracle failed: {e}")),
        }
        let cert = kkt_residual(&cf, k, 1e-6);
        c.require(cert.stationarity_residual <= 1e-6, || {
            format!("k={k} t={t}: KKT residual {}", cert.stationarity_residual)
        });
    }
    c.note("(k,t) in {(2,1),(2,2),(3,1)}, 64 restarts".into());
    c.finish("A6", "optimization problem certified")
}

fn sweep_parameters(case: usize) -> (usize, usize) {
    let k = 2 + case % 5;
    let mut n = 10 + (case * 7) % 31; // 10..=40
    if n <= k {
        n = k + 1;
    }
    if n * k % 2 == 1 {
        n += 1;
    }
    (n.min(40), k)
}

/// Seeded sweep over random regular graphs: energy window, the exact
/// closed-walk identity, double-cover invariance, and the Cauchy-Schwarz
/// bound on connected bipartite instances.
pub fn check_property_sweep() -> CheckResult {
    let mut c = Check::new();
    let mut bipartite_hits = 0usize;
    for case in 0..200usize {
        let (n, k) = sweep_parameters(case);
        let g = match random_regular(n, k, case as u64) {
            Ok(g) => g,
            Err(e) => {
                c.require(false, || format!("case {case}: generator failed: {e}"));
                continue;
            }
        };
        let s = eigenvalues(&g, DEFAULT_TOL).unwrap();
        let e = s.energy_per_vertex();
        let upper = bounds::thm1_upper(k as u64).unwrap();
        c.require(e >= 1.0 - 1e-9, || format!("case {case} (n={n},k={k}): energy {e} < 1"));
        c.require(e <= upper + 1e-9, || {
            format!("case {case} (n={n},k={k}): energy {e} > bound {upper}")
        });

        let walks = closed_walks4(&g);
        let expect = (n * k * (2 * k - 1)) as u64 + 8 * count_4cycles(&g);
        c.require(walks == expect, || {
            format!("case {case}: walk identity {walks} != {expect}")
        });

        let d = bipartite_double(&g);
        let ed = eigenvalues(&d, DEFAULT_TOL).unwrap().energy_per_vertex();
        c.require((e - ed).abs() <= 1e-9, || {
            format!("case {case}: double-cover energy drift {:.2e}", (e - ed).abs())
        });

        if g.is_connected() && g.bipartition().is_some() {
            bipartite_hits += 1;
            let cs = bounds::cs_upper(k as u64, (n / 2) as u64).unwrap();
            c.require(e <= cs + 1e-9, || {
                format!("case {case}: bipartite energy {e} above cs bound {cs}")
            });
        }
        if d.is_connected() {
            bipartite_hits += 1;
            let cs = bounds::cs_upper(k as u64, n as u64).unwrap();
            c.require(ed <= cs + 1e-9, || {
                format!("case {case}: double energy {ed} above cs bound {cs}")
            });
        }
    }
    c.note(format!("200 graphs, {bipartite_hits} connected bipartite checks"));
    c.finish("A7", "random regular property sweep")
}

/// Energy per vertex of a path on n vertices from the cosine eigenvalues
/// 2 cos(j pi / (n+1)); used instead of the dense solver for large n.
pub fn path_energy_closed_form(n: usize) -> f64 {
    let nf = (n + 1) as f64;
    let sum: f64 = (1..=n)
        .map(|j| (2.0 * (j as f64 * std::f64::consts::PI / nf).cos()).abs())
        .sum();
    sum / n as f64
}

/// The trivial floor at complete bipartite graphs and the 4/pi tree limit.
pub fn check_floors_and_limits() -> CheckResult {
    let mut c = Check::new();
    for k in 1..=10usize {
        // exact route: K_{k,k} is srg(2k, k, 0, k) and its spectrum
        // {k, 0^(2k-2), -k} comes out in exact integer arithmetic
        let exact = srg_spectrum(2 * k as u64, k as u64, 0, k as u64).unwrap();
        let expect: Vec<(f64, usize)> = if k == 1 {
            vec![(1.0, 1), (-1.0, 1)]
        } else {
            vec![(k as f64, 1), (0.0, 2 * k - 2), (-(k as f64), 1)]
        };
        c.require(exact.pairs() == expect.as_slice(), || {
            format!("K_{{{k},{k}}}: srg spectrum {:?}", exact.pairs())
        });
        let e_exact = exact.to_spectrum(Origin::ClosedForm).energy_per_vertex();
        c.require(e_exact == 1.0, || format!("K_{{{k},{k}}}: exact energy {e_exact:.17}"));
        // solver route agrees to machine precision
        let g = standard_family(StandardFamily::CompleteBipartite, k).unwrap();
        let e = energy_of(&g);
        c.require((e - 1.0).abs() <= 1e-12, || format!("K_{{{k},{k}}}: solver energy {e:.17}"));
    }

    // the closed form is trusted only after it matches the solver
    for n in [2usize, 3, 5, 8, 12] {
        let g = standard_family(StandardFamily::Path, n).unwrap();
        let solver = energy_of(&g);
        let formula = path_energy_closed_form(n);
        c.require((solver - formula).abs() <= 1e-9, || {
            format!("path({n}): solver {solver} vs cosine form {formula}")
        });
    }
    let four_over_pi = 4.0 / std::f64::consts::PI;
    let e1000 = path_energy_closed_form(1000);
    c.require((e1000 - four_over_pi).abs() <= 0.002, || format!("path(1000): {e1000}"));
    c.require(e1000 < four_over_pi, || format!("path(1000) not below 4/pi: {e1000}"));
    let mut previous = 0.0;
    for n in (2..=1000usize).step_by(2) {
        let e = path_energy_closed_form(n);
        c.require(e > previous, || format!("path({n}): {e} not above path({})", n - 2));
        c.require(e < four_over_pi, || format!("path({n}): {e} not below 4/pi"));
        previous = e;
    }
    c.note(format!("path(1000) energy {e1000:.6} vs 4/pi {four_over_pi:.6}"));
    c.finish("A8", "floors and the tree limit")
}

/// Runs the checklist; the slow sweep only with `full`.
pub fn run_all(full: bool) -> Vec<CheckResult> {
    let mut results = vec![
        check_theorem1_equality(),
        check_value_table(),
        check_cage_and_srg(),
        check_closed_form_spectra(),
        check_theorem2_truncation(),
        check_optimizer(),
    ];
    if full {
        results.push(check_property_sweep());
    } else {
        results.push(CheckResult {
            id: "A7",
            label: "random regular property sweep",
            status: CheckStatus::Skipped,
            details: "run with --full".into(),
        });
    }
    results.push(check_floors_and_limits());
    results
}

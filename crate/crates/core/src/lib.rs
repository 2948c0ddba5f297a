//! Spectral workbench for the energy per vertex of regular graphs.
//!
//! The library builds the extremal families (incidence graphs of projective
//! planes, elliptic semiplanes obtained from affine planes, and their
//! k-regular truncations), computes adjacency spectra and energy per vertex,
//! evaluates the closed-form upper and lower bounds for k-regular graphs,
//! and numerically certifies the associated constrained eigenvalue
//! optimization problem.
//!
//! Modules:
//! - [`finitefield`]: exact GF(p^e) arithmetic and prime-power search
//! - [`geometry`]: projective/affine planes, elliptic semiplanes, truncation
//! - [`graphcore`]: simple graphs, operators, walk/cycle counters, edge-list I/O
//! - [`spectral`]: eigenvalues, energy, clustering, closed-form spectra
//! - [`bounds`]: the bound formulas and comparison constants
//! - [`optimizer`]: closed-form optimum, numeric oracle, KKT certificates
//! - [`acceptance`]: the end-to-end verification checklist used by `epv verify`

pub mod acceptance;
pub mod bounds;
pub mod finitefield;
pub mod geometry;
pub mod graphcore;
pub mod optimizer;
pub mod spectral;

//! Incidence structures over GF(q): the projective plane PG(2,q), the affine
//! plane AG(2,q), the two elliptic semiplanes obtained from an affine plane
//! (delete a parallel class, or delete a pencil), and the class truncation
//! that turns the pencil semiplane into a square 1-design with block size
//! k = q - ell.
//!
//! Points and blocks carry stable integer ids in construction order, so
//! every derived graph is deterministic.

use crate::finitefield::{FieldError, FieldSpec};
use crate::graphcore::Graph;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("structure has family {found:?}, expected {expected:?}")]
    WrongFamily { expected: Family, found: Family },
    #[error("unknown parallel class {0:?}")]
    UnknownClass(Direction),
    #[error("unknown point id {0}")]
    UnknownPoint(usize),
    #[error("ell = {ell} out of range 0..={max} for q = {q}")]
    BadEll { ell: u64, max: u64, q: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    ProjectivePlane,
    AffinePlane,
    SemiplaneParallel,
    SemiplanePencil,
    Truncated,
}

/// Direction of an affine line: the slope a of y = ax + b (by canonical
/// field-element index), or vertical for the lines x = c. Directions order
/// slopes first, vertical last; truncation deletes from the top of this
/// order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Slope(u64),
    Vertical,
}

/// A finite incidence structure with optional point/block class partitions.
///
/// Blocks store sorted point-id lists; `point_class`/`block_class`, when
/// present, give each point/block a class id (for semiplanes: the direction
/// id of the matched class structure).
#[derive(Debug, Clone)]
pub struct IncidenceStructure {
    family: Family,
    q: u64,
    ell: u64,
    n_points: usize,
    blocks: Vec<Vec<usize>>,
    point_class: Option<Vec<usize>>,
    block_class: Option<Vec<usize>>,
    /// Point id that was deleted to form a pencil semiplane, in the
    /// coordinates of the parent affine plane.
    deleted_point: Option<usize>,
}

impl IncidenceStructure {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn point_count(&self) -> usize {
        self.n_points
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn point_class(&self) -> Option<&[usize]> {
        self.point_class.as_deref()
    }

    pub fn block_class(&self) -> Option<&[usize]> {
        self.block_class.as_deref()
    }

    pub fn deleted_point(&self) -> Option<usize> {
        self.deleted_point
    }

    /// Degree sequence over points.
    pub fn point_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n_points];
        for block in &self.blocks {
            for &p in block {
                deg[p] += 1;
            }
        }
        deg
    }

    /// Number of blocks containing both points; any two distinct points of
    /// these structures lie on at most one common block.
    pub fn common_blocks(&self, p: usize, r: usize) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.binary_search(&p).is_ok() && b.binary_search(&r).is_ok())
            .count()
    }
}

/// PG(2,q): points are the 1-dimensional subspaces of GF(q)^3, represented
/// by the vector whose first nonzero coordinate is 1; lines use the same
/// normalization in dual coordinates, and incidence is a zero dot product.
pub fn projective_plane(q: u64) -> Result<IncidenceStructure, GeometryError> {
    let field = FieldSpec::new(q)?;
    let reps = projective_points(&field);
    let n = reps.len();
    debug_assert_eq!(n as u64, q * q + q + 1);
    let mut blocks = Vec::with_capacity(n);
    for line in &reps {
        let mut pts = Vec::with_capacity(q as usize + 1);
        for (pid, point) in reps.iter().enumerate() {
            let mut dot = field.zero();
            for i in 0..3 {
                dot = field.add(&dot, &field.mul(&line[i], &point[i]));
            }
            if dot.is_zero() {
                pts.push(pid);
            }
        }
        blocks.push(pts);
    }
    Ok(IncidenceStructure {
        family: Family::ProjectivePlane,
        q,
        ell: 0,
        n_points: n,
        blocks,
        point_class: None,
        block_class: None,
        deleted_point: None,
    })
}

/// Canonical projective point representatives in a fixed order:
/// [1, y, z], then [0, 1, z], then [0, 0, 1].
fn projective_points(field: &FieldSpec) -> Vec<[crate::finitefield::FieldElement; 3]> {
    let q = field.order();
    let one = field.one();
    let zero = field.zero();
    let mut reps = Vec::with_capacity((q * q + q + 1) as usize);
    for y in 0..q {
        for z in 0..q {
            reps.push([one.clone(), field.element(y), field.element(z)]);
        }
    }
    for z in 0..q {
        reps.push([zero.clone(), one.clone(), field.element(z)]);
    }
    reps.push([zero.clone(), zero, one]);
    reps
}

/// AG(2,q): points are GF(q)^2 with id x_idx * q + y_idx; lines are
/// y = ax + b (direction Slope(a)) followed by x = c (direction Vertical).
pub fn affine_plane(q: u64) -> Result<IncidenceStructure, GeometryError> {
    let field = FieldSpec::new(q)?;
    let point_id = |x: u64, y: u64| (x * q + y) as usize;
    let mut blocks = Vec::with_capacity((q * q + q) as usize);
    let mut block_class = Vec::with_capacity(blocks.capacity());
    for a in 0..q {
        let slope = field.element(a);
        for b in 0..q {
            let intercept = field.element(b);
            let mut pts: Vec<usize> = (0..q)
                .map(|x| {
                    let xe = field.element(x);
                    let y = field.add(&field.mul(&slope, &xe), &intercept);
                    point_id(x, field.index_of(&y))
                })
                .collect();
            pts.sort_unstable();
            blocks.push(pts);
            block_class.push(a as usize);
        }
    }
    for c in 0..q {
        let pts: Vec<usize> = (0..q).map(|y| point_id(c, y)).collect();
        blocks.push(pts);
        block_class.push(q as usize);
    }
    Ok(IncidenceStructure {
        family: Family::AffinePlane,
        q,
        ell: 0,
        n_points: (q * q) as usize,
        blocks,
        point_class: None,
        block_class: Some(block_class),
        deleted_point: None,
    })
}

fn direction_class_id(q: u64, d: Direction) -> usize {
    match d {
        Direction::Slope(a) => a as usize,
        Direction::Vertical => q as usize,
    }
}

fn expect_family(
    is: &IncidenceStructure,
    expected: Family,
) -> Result<(), GeometryError> {
    if is.family != expected {
        return Err(GeometryError::WrongFamily { expected, found: is.family });
    }
    Ok(())
}

/// Deletes one parallel class of lines from an affine plane, giving the
/// elliptic semiplane S(q^2, q, q). Point classes are the lines of the
/// deleted class; block classes are the surviving directions.
pub fn remove_parallel_class(
    ag: &IncidenceStructure,
    class: Direction,
) -> Result<IncidenceStructure, GeometryError> {
    expect_family(ag, Family::AffinePlane)?;
    let q = ag.q;
    if let Direction::Slope(a) = class {
        if a >= q {
            return Err(GeometryError::UnknownClass(class));
        }
    }
    let deleted = direction_class_id(q, class);
    let classes = ag.block_class.as_ref().expect("affine planes carry block classes");

    // points keep their ids; their class is the deleted-class line they lie on
    let mut point_class = vec![usize::MAX; ag.n_points];
    for (bid, block) in ag.blocks.iter().enumerate() {
        if classes[bid] == deleted {
            let class_idx = block_rank_within_class(ag, bid);
            for &p in block {
                point_class[p] = class_idx;
            }
        }
    }
    debug_assert!(point_class.iter().all(|&c| c != usize::MAX));

    let mut blocks = Vec::with_capacity((q * q) as usize);
    let mut block_class = Vec::with_capacity(blocks.capacity());
    let mut surviving: Vec<usize> = (0..=q as usize).filter(|&c| c != deleted).collect();
    surviving.sort_unstable();
    for (bid, block) in ag.blocks.iter().enumerate() {
        if classes[bid] != deleted {
            blocks.push(block.clone());
            let rank = surviving.binary_search(&classes[bid]).unwrap();
            block_class.push(rank);
        }
    }
    Ok(IncidenceStructure {
        family: Family::SemiplaneParallel,
        q,
        ell: 0,
        n_points: ag.n_points,
        blocks,
        point_class: Some(point_class),
        block_class: Some(block_class),
        deleted_point: None,
    })
}

/// Position of a block among the blocks sharing its class, in id order.
fn block_rank_within_class(is: &IncidenceStructure, bid: usize) -> usize {
    let classes = is.block_class.as_ref().unwrap();
    (0..bid).filter(|&b| classes[b] == classes[bid]).count()
}

/// Deletes a pencil (the point x and every line through it) from an affine
/// plane, giving the elliptic semiplane S(q^2-1, q, q-1). Point classes are
/// the punctured lines through x, block classes the matching directions;
/// class id = direction id.
pub fn remove_pencil(
    ag: &IncidenceStructure,
    x: usize,
) -> Result<IncidenceStructure, GeometryError> {
    expect_family(ag, Family::AffinePlane)?;
    if x >= ag.n_points {
        return Err(GeometryError::UnknownPoint(x));
    }
    let q = ag.q;
    let classes = ag.block_class.as_ref().expect("affine planes carry block classes");

    // surviving points keep relative order; map old id -> new id
    let mut new_id = vec![usize::MAX; ag.n_points];
    let mut next = 0;
    for (p, id) in new_id.iter_mut().enumerate() {
        if p != x {
            *id = next;
            next += 1;
        }
    }

    // point class = direction of the line joining the point to x
    let mut point_class = vec![usize::MAX; ag.n_points - 1];
    let mut blocks = Vec::new();
    let mut block_class = Vec::new();
    for (bid, block) in ag.blocks.iter().enumerate() {
        if block.binary_search(&x).is_ok() {
            for &p in block {
                if p != x {
                    point_class[new_id[p]] = classes[bid];
                }
            }
        } else {
            blocks.push(block.iter().map(|&p| new_id[p]).collect::<Vec<_>>());
            block_class.push(classes[bid]);
        }
    }
    debug_assert!(point_class.iter().all(|&c| c != usize::MAX));
    debug_assert_eq!(blocks.len(), (q * q - 1) as usize);
    Ok(IncidenceStructure {
        family: Family::SemiplanePencil,
        q,
        ell: 0,
        n_points: ag.n_points - 1,
        blocks,
        point_class: Some(point_class),
        block_class: Some(block_class),
        deleted_point: Some(x),
    })
}

/// Deletes `ell` whole directions from a pencil semiplane: each deleted
/// direction takes its point class (a punctured line through the deleted
/// point) and its block class (the parallel lines of that direction). The
/// result is a square 1-design with block size k = q - ell. Directions are
/// deleted from the top of the direction order (vertical first).
pub fn truncate_semiplane(
    sp: &IncidenceStructure,
    ell: u64,
) -> Result<IncidenceStructure, GeometryError> {
    expect_family(sp, Family::SemiplanePencil)?;
    let q = sp.q;
    if ell > q - 2 {
        return Err(GeometryError::BadEll { ell, max: q - 2, q });
    }
    let keep = |class: usize| (class as u64) < q + 1 - ell;

    let point_class = sp.point_class.as_ref().unwrap();
    let block_class = sp.block_class.as_ref().unwrap();

    let mut new_id = vec![usize::MAX; sp.n_points];
    let mut next = 0;
    for p in 0..sp.n_points {
        if keep(point_class[p]) {
            new_id[p] = next;
            next += 1;
        }
    }
    let mut blocks = Vec::new();
    let mut new_block_class = Vec::new();
    let mut new_point_class = vec![usize::MAX; next];
    for (p, &c) in point_class.iter().enumerate() {
        if keep(c) {
            new_point_class[new_id[p]] = c;
        }
    }
    for (bid, block) in sp.blocks.iter().enumerate() {
        if keep(block_class[bid]) {
            let pts: Vec<usize> = block
                .iter()
                .filter(|&&p| keep(point_class[p]))
                .map(|&p| new_id[p])
                .collect();
            blocks.push(pts);
            new_block_class.push(block_class[bid]);
        }
    }
    Ok(IncidenceStructure {
        family: Family::Truncated,
        q,
        ell,
        n_points: next,
        blocks,
        point_class: Some(new_point_class),
        block_class: Some(new_block_class),
        deleted_point: sp.deleted_point,
    })
}

/// Bipartite incidence graph: vertices 0..P-1 are the points in id order,
/// then the blocks; edges are the flags.
pub fn incidence_graph(is: &IncidenceStructure) -> Graph {
    let np = is.n_points;
    let mut edges = Vec::new();
    for (bid, block) in is.blocks.iter().enumerate() {
        for &p in block {
            edges.push((p, np + bid));
        }
    }
    Graph::from_edges(np + is.blocks.len(), &edges)
        .expect("incidence structure produces a valid graph")
}

//! Simple undirected graphs: standard families, the operators used by the
//! energy arguments (bipartite double, disjoint union), exact combinatorial
//! counters (girth, 4-cycles, closed 4-walks), a seeded pairing-model
//! generator for random regular graphs, and edge-list file I/O.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("bad size for family {family}: {size}")]
    BadSize { family: &'static str, size: usize },
    #[error("disjoint union of an empty list")]
    EmptyList,
    #[error("no {k}-regular graph on {n} vertices (nk odd or k >= n)")]
    Infeasible { n: usize, k: usize },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// A simple undirected graph: no loops, no multi-edges.
///
/// Neighbor lists are kept sorted so every traversal is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse to one;
    /// loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Ok(Graph { n, adj, edge_count: set.len() })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as sorted (u, v) pairs with u < v.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Common degree if the graph is regular.
    pub fn regularity(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let k = self.adj[0].len();
        if self.adj.iter().all(|l| l.len() == k) {
            Some(k)
        } else {
            None
        }
    }

    /// Proper 2-coloring as (side0, side1) vertex lists, or `None` when an
    /// odd cycle exists. Isolated vertices land on side 0 of their component.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut color = vec![u8::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        let side0 = (0..self.n).filter(|&u| color[u] == 0).collect();
        let side1 = (0..self.n).filter(|&u| color[u] == 1).collect();
        Some((side0, side1))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }
}

/// Bipartite double cover: vertex u maps to u and n+u; each edge {u, v}
/// becomes {u, n+v} and {v, n+u}. Its spectrum is the original spectrum
/// together with its negation.
pub fn bipartite_double(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    for (u, v) in g.edges() {
        edges.push((u, n + v));
        edges.push((v, n + u));
    }
    Graph::from_edges(2 * n, &edges).expect("double cover of a valid graph is valid")
}

/// Vertex-relabelled union; the spectrum is the multiset union.
pub fn disjoint_union(gs: &[Graph]) -> Result<Graph, GraphError> {
    if gs.is_empty() {
        return Err(GraphError::EmptyList);
    }
    let n: usize = gs.iter().map(|g| g.vertex_count()).sum();
    let mut edges = Vec::new();
    let mut offset = 0;
    for g in gs {
        for (u, v) in g.edges() {
            edges.push((offset + u, offset + v));
        }
        offset += g.vertex_count();
    }
    Graph::from_edges(n, &edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardFamily {
    /// K_{k,k} on 2k vertices for size parameter k.
    CompleteBipartite,
    Cycle,
    Path,
}

pub fn standard_family(family: StandardFamily, size: usize) -> Result<Graph, GraphError> {
    match family {
        StandardFamily::CompleteBipartite => {
            if size < 1 {
                return Err(GraphError::BadSize { family: "complete_bipartite", size });
            }
            let k = size;
            let edges: Vec<_> =
                (0..k).flat_map(|i| (0..k).map(move |j| (i, k + j))).collect();
            Graph::from_edges(2 * k, &edges)
        }
        StandardFamily::Cycle => {
            if size < 3 {
                return Err(GraphError::BadSize { family: "cycle", size });
            }
            let edges: Vec<_> = (0..size).map(|i| (i, (i + 1) % size)).collect();
            Graph::from_edges(size, &edges)
        }
        StandardFamily::Path => {
            if size < 1 {
                return Err(GraphError::BadSize { family: "path", size });
            }
            let edges: Vec<_> = (1..size).map(|i| (i - 1, i)).collect();
            Graph::from_edges(size, &edges)
        }
    }
}

/// Length of a shortest cycle, or `None` for forests.
///
/// BFS from every start vertex; a non-tree edge seen at depths d(u), d(v)
/// witnesses a cycle of length at most d(u) + d(v) + 1 through the start,
/// and the minimum over all starts is exact.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        parent.iter_mut().for_each(|p| *p = usize::MAX);
        let mut queue = std::collections::VecDeque::new();
        dist[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if let Some(b) = best {
                // deeper layers cannot improve on the current best
                if 2 * dist[u] >= b {
                    break;
                }
            }
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if v != parent[u] {
                    let cycle = dist[u] + dist[v] + 1;
                    if best.is_none_or(|b| cycle < b) {
                        best = Some(cycle);
                    }
                }
            }
        }
        if best == Some(3) {
            break;
        }
    }
    best
}

/// Common-neighbor counts c(u, v) for all ordered pairs, as a flat n*n table.
fn common_neighbor_table(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    let mut table = vec![0u64; n * n];
    for mid in 0..n {
        let nbrs = g.neighbors(mid);
        for (i, &u) in nbrs.iter().enumerate() {
            for &v in &nbrs[i + 1..] {
                table[u * n + v] += 1;
                table[v * n + u] += 1;
            }
        }
    }
    table
}

/// Number of distinct 4-cycles. Each 4-cycle is counted once via its two
/// diagonals: sum over unordered pairs of C(c(u,v), 2) equals twice the count.
pub fn count_4cycles(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let table = common_neighbor_table(g);
    let mut twice = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            let c = table[u * n + v];
            if c >= 2 {
                twice += c * (c - 1) / 2;
            }
        }
    }
    debug_assert_eq!(twice % 2, 0);
    twice / 2
}

/// Trace of A^4 as an exact integer: the number of closed walks of length 4.
///
/// tr A^4 = sum over ordered pairs (u, v) of (number of 2-walks u -> v)^2,
/// where the diagonal 2-walk count is the degree.
pub fn closed_walks4(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let table = common_neighbor_table(g);
    let mut total = 0u64;
    for u in 0..n {
        for v in 0..n {
            let paths2 = if u == v { g.degree(u) as u64 } else { table[u * n + v] };
            total += paths2 * paths2;
        }
    }
    total
}

/// Seeded pairing-model generator: k stubs per vertex, a random perfect
/// matching of stubs, full restart whenever a loop or multi-edge appears.
pub fn random_regular(n: usize, k: usize, seed: u64) -> Result<Graph, GraphError> {
    if n * k % 2 == 1 || k >= n {
        return Err(GraphError::Infeasible { n, k });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|u| std::iter::repeat_n(u, k)).collect();
    'restart: loop {
        stubs.shuffle(&mut rng);
        let mut seen = BTreeSet::new();
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                continue 'restart;
            }
        }
        let edges: Vec<_> = seen.into_iter().collect();
        return Graph::from_edges(n, &edges);
    }
}

/// Reads the edge-list format: first line `<n> <edge_count>`, then one
/// `<u> <v>` line per edge with 0 <= u < v < n. Lines starting with `#`
/// and blank lines are ignored.
pub fn read_graph(path: &Path) -> Result<Graph, GraphError> {
    let text = fs::read_to_string(path)?;
    parse_graph(&text)
}

pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(' ').collect();
        if fields.len() != 2 {
            return Err(GraphError::Parse {
                line: line_no,
                message: format!("expected two fields, got {}", fields.len()),
            });
        }
        let a: usize = fields[0].parse().map_err(|_| GraphError::Parse {
            line: line_no,
            message: format!("bad integer {:?}", fields[0]),
        })?;
        let b: usize = fields[1].parse().map_err(|_| GraphError::Parse {
            line: line_no,
            message: format!("bad integer {:?}", fields[1]),
        })?;
        match header {
            None => header = Some((a, b)),
            Some((n, _)) => {
                if a >= b {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: format!("edge must satisfy u < v, got {a} {b}"),
                    });
                }
                if b >= n {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: format!("endpoint {b} out of range for n = {n}"),
                    });
                }
                edges.push((a, b));
            }
        }
    }
    let (n, m) = header.ok_or(GraphError::Parse {
        line: 0,
        message: "missing header line".into(),
    })?;
    if edges.len() != m {
        return Err(GraphError::Parse {
            line: 0,
            message: format!("header promised {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, &edges)
}

/// Canonical serialization of the edge-list format (sorted edges, `\n`
/// endings), so identical graphs always produce identical bytes.
pub fn format_graph(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.vertex_count(), g.edge_count()));
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn write_graph(g: &Graph, path: &Path) -> Result<(), GraphError> {
    fs::write(path, format_graph(g))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        standard_family(StandardFamily::Cycle, 3).unwrap()
    }

    fn heawood() -> Graph {
        // incidence graph of the Fano plane
        crate::geometry::incidence_graph(&crate::geometry::projective_plane(2).unwrap())
    }

    #[test]
    fn builder_rejects_bad_edges() {
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::Loop(1))));
        // duplicates collapse
        let g = Graph::from_edges(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn double_of_triangle_is_hexagon_shaped() {
        let d = bipartite_double(&triangle());
        assert_eq!(d.vertex_count(), 6);
        assert_eq!(d.edge_count(), 6);
        assert_eq!(d.regularity(), Some(2));
        assert_eq!(girth(&d), Some(6));
        assert!(d.is_connected());
    }

    #[test]
    fn double_of_empty_graph() {
        let g = Graph::from_edges(3, &[]).unwrap();
        let d = bipartite_double(&g);
        assert_eq!(d.vertex_count(), 6);
        assert_eq!(d.edge_count(), 0);
    }

    #[test]
    fn union_behaviour() {
        let t = triangle();
        let h = standard_family(StandardFamily::Cycle, 6).unwrap();
        let u = disjoint_union(&[t.clone(), h]).unwrap();
        assert_eq!(u.vertex_count(), 9);
        assert_eq!(u.regularity(), Some(2));
        assert_eq!(disjoint_union(std::slice::from_ref(&t)).unwrap(), t);
        assert!(matches!(disjoint_union(&[]), Err(GraphError::EmptyList)));
    }

    #[test]
    fn families() {
        let k33 = standard_family(StandardFamily::CompleteBipartite, 3).unwrap();
        assert_eq!(k33.vertex_count(), 6);
        assert_eq!(k33.regularity(), Some(3));
        assert!(matches!(
            standard_family(StandardFamily::Cycle, 2),
            Err(GraphError::BadSize { .. })
        ));
        let p5 = standard_family(StandardFamily::Path, 5).unwrap();
        assert_eq!(p5.edge_count(), 4);
        assert_eq!(p5.regularity(), None);
    }

    #[test]
    fn girth_basics() {
        assert_eq!(girth(&standard_family(StandardFamily::Cycle, 6).unwrap()), Some(6));
        assert_eq!(girth(&heawood()), Some(6));
        assert_eq!(girth(&standard_family(StandardFamily::Path, 5).unwrap()), None);
        assert_eq!(girth(&triangle()), Some(3));
        assert_eq!(girth(&standard_family(StandardFamily::CompleteBipartite, 2).unwrap()), Some(4));
    }

    /// Independent oracle: count 4-cycles by enumerating 4-subsets.
    fn brute_4cycles(g: &Graph) -> u64 {
        let n = g.vertex_count();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let vs = [a, b, c, d];
                        // the 3 cyclic orders of a 4-subset are the 3
                        // candidate 4-cycle subgraphs on it
                        let orders =
                            [[0usize, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]];
                        for ord in orders {
                            let ok = (0..4).all(|i| {
                                g.has_edge(vs[ord[i]], vs[ord[(i + 1) % 4]])
                            });
                            if ok {
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
        count
    }

    /// Independent oracle: tr A^4 by enumerating all closed 4-walks.
    fn brute_walks4(g: &Graph) -> u64 {
        let n = g.vertex_count();
        let mut count = 0;
        for u in 0..n {
            for &v in g.neighbors(u) {
                for &w in g.neighbors(v) {
                    for &x in g.neighbors(w) {
                        if g.has_edge(x, u) {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn four_cycle_counts() {
        assert_eq!(count_4cycles(&standard_family(StandardFamily::Cycle, 4).unwrap()), 1);
        assert_eq!(count_4cycles(&heawood()), 0);
        let k33 = standard_family(StandardFamily::CompleteBipartite, 3).unwrap();
        assert_eq!(count_4cycles(&k33), 9);
        assert_eq!(brute_4cycles(&k33), 9);
    }

    #[test]
    fn walk_counts() {
        assert_eq!(closed_walks4(&standard_family(StandardFamily::Cycle, 6).unwrap()), 36);
        assert_eq!(closed_walks4(&standard_family(StandardFamily::Cycle, 4).unwrap()), 32);
        let k33 = standard_family(StandardFamily::CompleteBipartite, 3).unwrap();
        assert_eq!(closed_walks4(&k33), 162);
        assert_eq!(brute_walks4(&k33), 162);
    }

    #[test]
    fn walk_identity_on_random_regular() {
        // tr A^4 = nk(2k-1) + 8 * (number of 4-cycles) for k-regular graphs
        let mut checked = 0;
        for seed in 0..25u64 {
            let n = 8 + (seed as usize % 5) * 4;
            let k = 2 + (seed as usize % 3);
            let g = random_regular(n, k, seed).unwrap();
            assert_eq!(g.regularity(), Some(k));
            let expect = (n * k * (2 * k - 1)) as u64 + 8 * count_4cycles(&g);
            assert_eq!(closed_walks4(&g), expect, "n={n} k={k} seed={seed}");
            assert_eq!(closed_walks4(&g), brute_walks4(&g));
            checked += 1;
        }
        assert_eq!(checked, 25);
    }

    #[test]
    fn random_regular_contract() {
        let k4 = random_regular(4, 3, 7).unwrap();
        assert_eq!(k4.edge_count(), 6); // K4 is the only 3-regular graph on 4 vertices
        let g = random_regular(8, 3, 42).unwrap();
        assert_eq!(g.regularity(), Some(3));
        assert!(matches!(random_regular(5, 3, 1), Err(GraphError::Infeasible { .. })));
        assert_eq!(random_regular(12, 3, 9).unwrap(), random_regular(12, 3, 9).unwrap());
    }

    #[test]
    fn edge_list_round_trip() {
        let h = heawood();
        let text = format_graph(&h);
        let back = parse_graph(&text).unwrap();
        assert_eq!(h, back);
        assert!(text.starts_with("14 21\n"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_graph("3 1\n0 1 2\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n0 5\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n1 0\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(GraphError::Parse { .. })));
        // comments and blank lines are fine
        let g = parse_graph("# c\n3 1\n\n0 2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn bipartition_detection() {
        assert!(triangle().bipartition().is_none());
        let (s0, s1) = heawood().bipartition().unwrap();
        assert_eq!(s0.len(), 7);
        assert_eq!(s1.len(), 7);
    }
}

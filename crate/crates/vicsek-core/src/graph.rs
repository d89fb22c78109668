//! Level-`m` graph approximations of the Vicsek set.
//!
//! `Gamma_0` is the complete graph on the four corners; `Gamma_{m+1}` is the
//! union of the five contracted copies of `Gamma_m`. Vertices are
//! deduplicated by exact rational coordinates, so the center identifications
//! are automatic and the counts `|V_m| = 3*5^m + 1` come out of construction
//! rather than bookkeeping.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::DenseMatrix;
use crate::words::{visit_cells, CellFrame, ExactPoint};
use crate::{Error, Result};

/// Levels above this are refused by [`build_graph`]; `5^10` cells is still
/// fine, anything deeper starts to hurt for no analytic payoff.
pub const BUILD_LEVEL_CAP: u32 = 10;

/// Vertex ids are dense indices, assigned in order of first appearance
/// during the depth-first cell traversal, so they are stable across runs.
pub type VertexId = u32;

/// One graph approximation with exact vertex coordinates.
#[derive(Debug, Clone)]
pub struct LevelGraph {
    level: u32,
    coords: Vec<ExactPoint>,
    index: BTreeMap<ExactPoint, VertexId>,
    adjacency: Vec<Vec<VertexId>>,
    boundary: [VertexId; 4],
    edge_count: usize,
}

/// Real values on every vertex of one level.
#[derive(Debug, Clone)]
pub struct EigenfunctionField {
    pub level: u32,
    pub values: Vec<f64>,
}

impl EigenfunctionField {
    pub fn new(level: u32, values: Vec<f64>) -> EigenfunctionField {
        EigenfunctionField { level, values }
    }

    pub fn value(&self, id: VertexId) -> f64 {
        self.values[id as usize]
    }
}

/// Builds the level-`m` graph by walking all cells of depth `m`.
///
/// ```
/// let g = vicsek_core::graph::build_graph(2).unwrap();
/// assert_eq!(g.vertex_count(), 76); // 3 * 5^2 + 1
/// assert_eq!(g.edge_count(), 150);  // 6 * 5^2
/// ```
pub fn build_graph(m: u32) -> Result<LevelGraph> {
    if m > BUILD_LEVEL_CAP {
        return Err(Error::LevelCap {
            requested: m,
            cap: BUILD_LEVEL_CAP,
        });
    }
    let mut coords: Vec<ExactPoint> = Vec::new();
    let mut index: BTreeMap<ExactPoint, VertexId> = BTreeMap::new();
    let mut adjacency: Vec<Vec<VertexId>> = Vec::new();
    let mut edge_count = 0usize;
    visit_cells(m, &mut |frame: &CellFrame| {
        let mut ids = [0 as VertexId; 4];
        for i in 1..=4u8 {
            let p = frame.corner(i);
            let id = *index.entry(p).or_insert_with(|| {
                coords.push(p);
                adjacency.push(Vec::new());
                (coords.len() - 1) as VertexId
            });
            ids[(i - 1) as usize] = id;
        }
        for a in 0..4 {
            for b in (a + 1)..4 {
                adjacency[ids[a] as usize].push(ids[b]);
                adjacency[ids[b] as usize].push(ids[a]);
                edge_count += 1;
            }
        }
    });
    for list in adjacency.iter_mut() {
        list.sort_unstable();
        debug_assert!(list.windows(2).all(|w| w[0] != w[1]), "duplicate edge");
    }
    let boundary = [
        index[&crate::words::fixed_point(1)],
        index[&crate::words::fixed_point(2)],
        index[&crate::words::fixed_point(3)],
        index[&crate::words::fixed_point(4)],
    ];
    Ok(LevelGraph {
        level: m,
        coords,
        index,
        adjacency,
        boundary,
        edge_count,
    })
}

impl LevelGraph {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn coordinate(&self, id: VertexId) -> &ExactPoint {
        &self.coords[id as usize]
    }

    pub fn vertex_id(&self, p: &ExactPoint) -> Option<VertexId> {
        self.index.get(p).copied()
    }

    pub fn degree(&self, id: VertexId) -> usize {
        self.adjacency[id as usize].len()
    }

    pub fn neighbors(&self, id: VertexId) -> &[VertexId] {
        &self.adjacency[id as usize]
    }

    /// Ids of the boundary corners `q_1..q_4`, in corner order.
    pub fn boundary_ids(&self) -> [VertexId; 4] {
        self.boundary
    }

    pub fn is_boundary(&self, id: VertexId) -> bool {
        self.boundary.contains(&id)
    }

    /// Undirected edges as `(low, high)` id pairs, each exactly once.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(x, list)| {
            list.iter()
                .filter(move |&&y| (x as VertexId) < y)
                .map(move |&y| (x as VertexId, y))
        })
    }
}

/// Dense matrix of `-Delta_m`: ones on the diagonal, `-1/deg(x)` toward each
/// neighbor. Its eigenvalues are the nonnegative graph eigenvalues.
pub fn neumann_laplacian(g: &LevelGraph) -> DenseMatrix {
    let n = g.vertex_count();
    let mut m = DenseMatrix::zeros(n);
    for x in 0..n {
        m.set(x, x, 1.0);
        let inv = -1.0 / g.degree(x as VertexId) as f64;
        for &y in g.neighbors(x as VertexId) {
            m.set(x, y as usize, inv);
        }
    }
    m
}

/// The degree-symmetrized Laplacian `D^{1/2} (-Delta) D^{-1/2}`, which is
/// exactly symmetric and shares the spectrum of `-Delta_m`.
pub fn symmetrized_laplacian(g: &LevelGraph) -> DenseMatrix {
    let n = g.vertex_count();
    let mut m = DenseMatrix::zeros(n);
    for x in 0..n {
        m.set(x, x, 1.0);
        let dx = g.degree(x as VertexId) as f64;
        for &y in g.neighbors(x as VertexId) {
            let dy = g.degree(y) as f64;
            m.set(x, y as usize, -1.0 / libm::sqrt(dx * dy));
        }
    }
    m
}

/// Matrix-free application of `-Delta_m` to vertex values.
pub fn apply_neg_laplacian(g: &LevelGraph, values: &[f64]) -> Vec<f64> {
    assert_eq!(values.len(), g.vertex_count());
    let mut out = vec![0.0; values.len()];
    for x in 0..values.len() {
        let mut acc = 0.0;
        for &y in g.neighbors(x as VertexId) {
            acc += values[y as usize];
        }
        out[x] = values[x] - acc / g.degree(x as VertexId) as f64;
    }
    out
}

/// `max_x |(-Delta_m u)(x) - lambda u(x)|` over all vertices.
pub fn eigen_residual(g: &LevelGraph, u: &EigenfunctionField, lambda: f64) -> Result<f64> {
    if u.level != g.level {
        return Err(Error::LevelMismatch {
            field: u.level,
            graph: g.level,
        });
    }
    let applied = apply_neg_laplacian(g, &u.values);
    let mut worst = 0.0f64;
    for (ax, ux) in applied.iter().zip(&u.values) {
        worst = worst.max(libm::fabs(ax - lambda * ux));
    }
    Ok(worst)
}

/// Graph energy `E_m(u) = sum over edges of (u(x)-u(y))^2`, optionally
/// renormalized to `3^m E_m(u)` so that energies are monotone in the level.
pub fn graph_energy(g: &LevelGraph, u: &EigenfunctionField, renormalized: bool) -> Result<f64> {
    if u.level != g.level {
        return Err(Error::LevelMismatch {
            field: u.level,
            graph: g.level,
        });
    }
    let mut e = 0.0;
    for (x, y) in g.edges() {
        let d = u.values[x as usize] - u.values[y as usize];
        e += d * d;
    }
    if renormalized {
        let factor = (0..g.level).fold(1.0f64, |acc, _| acc * 3.0);
        Ok(factor * e)
    } else {
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{group_multiplicities, jacobi_eigen};

    #[test]
    fn level0_is_k4() {
        let g = build_graph(0).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        for id in 0..4 {
            assert_eq!(g.degree(id), 3);
        }
        assert_eq!(g.boundary_ids(), [0, 1, 2, 3]);
    }

    #[test]
    fn counts_and_degrees_match_recurrences() {
        let mut prev = 0usize;
        for m in 0..=4u32 {
            let g = build_graph(m).unwrap();
            let n = 3 * 5usize.pow(m) + 1;
            assert_eq!(g.vertex_count(), n);
            assert_eq!(g.edge_count(), 6 * 5usize.pow(m));
            if m > 0 {
                assert_eq!(n, 5 * prev - 4);
            }
            prev = n;
            let mut handshake = 0usize;
            let mut deg6 = 0usize;
            for id in 0..g.vertex_count() {
                let d = g.degree(id as VertexId);
                assert!(d == 3 || d == 6, "degree {d} at level {m}");
                if d == 6 {
                    deg6 += 1;
                }
                handshake += d;
            }
            assert_eq!(handshake, 12 * 5usize.pow(m));
            assert_eq!(deg6, 5usize.pow(m) - 1);
            for b in g.boundary_ids() {
                assert_eq!(g.degree(b), 3);
            }
        }
    }

    #[test]
    fn vertex_sets_are_nested() {
        let graphs: Vec<LevelGraph> = (0..=3).map(|m| build_graph(m).unwrap()).collect();
        for m in 0..3 {
            for id in 0..graphs[m].vertex_count() {
                let p = graphs[m].coordinate(id as VertexId);
                assert!(graphs[m + 1].vertex_id(p).is_some());
            }
        }
    }

    #[test]
    fn rejects_above_cap() {
        assert!(matches!(
            build_graph(BUILD_LEVEL_CAP + 1),
            Err(Error::LevelCap { .. })
        ));
    }

    #[test]
    fn level0_laplacian_matches_printed_matrix() {
        let g = build_graph(0).unwrap();
        let l = neumann_laplacian(&g);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { -1.0 / 3.0 };
                assert_eq!(l.get(i, j), expect);
            }
        }
    }

    #[test]
    fn constants_are_in_the_kernel() {
        for m in 0..=2u32 {
            let g = build_graph(m).unwrap();
            let ones = vec![1.0; g.vertex_count()];
            for v in apply_neg_laplacian(&g, &ones) {
                assert!(v.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn boundary_eigenvector_at_level0() {
        let g = build_graph(0).unwrap();
        let u = EigenfunctionField::new(0, vec![1.0, 0.0, 0.0, -1.0]);
        let r = eigen_residual(&g, &u, 4.0 / 3.0).unwrap();
        assert!(r < 1e-15);
    }

    #[test]
    fn level0_spectrum_is_zero_and_four_thirds() {
        let g = build_graph(0).unwrap();
        let d = jacobi_eigen(&symmetrized_laplacian(&g)).unwrap();
        assert!(d.values[0].abs() < 1e-12);
        for k in 1..4 {
            assert!((d.values[k] - 4.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn level1_spectrum_has_expected_multiplicities() {
        let g = build_graph(1).unwrap();
        let d = jacobi_eigen(&symmetrized_laplacian(&g)).unwrap();
        // eigenvalues lie in [0, 2]
        assert!(d.values[0] > -1e-12 && *d.values.last().unwrap() < 2.0 + 1e-12);
        let groups = group_multiplicities(&d.values, 1e-8);
        let expected = [
            (0.0, 1usize),
            (1.0 / 6.0, 3),
            (5.0 / 6.0, 1),
            (4.0 / 3.0, 11),
        ];
        assert_eq!(groups.len(), expected.len());
        for ((val, mult), (eval, emult)) in groups.iter().zip(expected.iter()) {
            assert!((val - eval).abs() < 1e-10, "{val} vs {eval}");
            assert_eq!(mult, emult);
        }
    }

    #[test]
    fn energy_of_u1_on_k4() {
        let g = build_graph(0).unwrap();
        let u = EigenfunctionField::new(0, vec![1.0, 0.0, 0.0, -1.0]);
        assert_eq!(graph_energy(&g, &u, false).unwrap(), 8.0);
        assert_eq!(graph_energy(&g, &u, true).unwrap(), 8.0);
        let c = EigenfunctionField::new(0, vec![2.5; 4]);
        assert_eq!(graph_energy(&g, &c, false).unwrap(), 0.0);
    }

    #[test]
    fn energy_rejects_level_mismatch() {
        let g = build_graph(1).unwrap();
        let u = EigenfunctionField::new(0, vec![1.0, 0.0, 0.0, -1.0]);
        assert!(matches!(
            graph_energy(&g, &u, false),
            Err(Error::LevelMismatch { .. })
        ));
    }
}

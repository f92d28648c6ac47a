//! Hitting times from the first-step equations, and the hitting-time route
//! to the cover cost: `CC_r(G) = sum_x H_r(x)`.
//!
//! For a fixed target `x` the expected hitting times satisfy
//! `H_y(x) = 1 + (1/d(y)) * sum_{z ~ y} H_z(x)` for `y != x` and
//! `H_x(x) = 0`. Clearing denominators turns the system for one target
//! into the grounded Laplacian `L_x H = d`, one `O(n^3)` solve; all
//! targets together cost `O(n^4)` and give the cover cost for every root
//! at once as row sums.

use crate::exec;
use crate::graph::Graph;
use crate::linalg::DenseSystem;
use crate::{CoverCost, Error};

/// Dense table of expected hitting times; `get(y, x)` is `H_y(x)`, the
/// expected number of steps for a walk from `y` to first reach `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct HittingMatrix {
    values: Vec<Vec<f64>>,
}

impl HittingMatrix {
    pub fn vertex_count(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, from: usize, to: usize) -> f64 {
        self.values[from][to]
    }

    /// Row of hitting times out of `from`.
    pub fn row(&self, from: usize) -> &[f64] {
        &self.values[from]
    }

    /// `CC_root = sum_x H_root(x)` as a fixed-order row sum.
    pub fn cover_cost(&self, root: usize) -> CoverCost {
        let total: f64 = self.values[root].iter().sum();
        CoverCost::from_total(total, self.vertex_count() - 1)
    }
}

/// Expected hitting times `H_y(target)` for every start vertex `y`.
pub fn hitting_times_to(g: &Graph, target: usize) -> Result<Vec<f64>, Error> {
    g.check_vertex(target)?;
    let v = g.vertex_count();
    let others: Vec<usize> = (0..v).filter(|&y| y != target).collect();
    let index_of = |y: usize| if y < target { y } else { y - 1 };
    let m = others.len();
    let mut a = vec![vec![0.0; m]; m];
    let mut b = vec![0.0; m];
    for (i, &y) in others.iter().enumerate() {
        a[i][i] = g.degree(y) as f64;
        for &z in g.neighbors(y) {
            if z != target {
                a[i][index_of(z)] -= 1.0;
            }
        }
        b[i] = g.degree(y) as f64;
    }
    let solved = DenseSystem::with_single_rhs(a, b)?.solve()?;
    let mut h = vec![0.0; v];
    for (i, &y) in others.iter().enumerate() {
        h[y] = solved[i][0];
    }
    Ok(h)
}

/// All hitting times, one linear solve per target vertex.
pub fn hitting_matrix(g: &Graph) -> Result<HittingMatrix, Error> {
    let v = g.vertex_count();
    let columns = exec::try_map_indexed(v, |target| hitting_times_to(g, target))?;
    let values = (0..v)
        .map(|y| (0..v).map(|x| columns[x][y]).collect())
        .collect();
    Ok(HittingMatrix { values })
}

/// Cover cost from the hitting-time sum `CC_r = sum_x H_r(x)`.
pub fn cover_cost_hitting(g: &Graph, root: usize) -> Result<CoverCost, Error> {
    g.check_vertex(root)?;
    let v = g.vertex_count();
    let at_root = exec::try_map_indexed(v, |target| {
        hitting_times_to(g, target).map(|h| h[root])
    })?;
    Ok(CoverCost::from_total(at_root.iter().sum(), g.n()))
}

/// Cover cost for every root at once (row sums of the hitting matrix).
pub fn cover_cost_all_roots(g: &Graph) -> Result<Vec<CoverCost>, Error> {
    let matrix = hitting_matrix(g)?;
    Ok((0..g.vertex_count()).map(|r| matrix.cover_cost(r)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Graph, GraphKind};

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "expected {expected}, got {actual}"
        );
    }

    #[test]
    fn path2_hitting_times_to_endpoint() {
        let g = Graph::path(2).unwrap();
        let h = hitting_times_to(&g, 0).unwrap();
        assert_close(h[0], 0.0, 0.0);
        assert_close(h[1], 3.0, 1e-10);
        assert_close(h[2], 4.0, 1e-10);
    }

    #[test]
    fn single_edge_hitting_time_is_one_step() {
        let g = Graph::path(1).unwrap();
        let h = hitting_times_to(&g, 1).unwrap();
        assert_eq!(h[1], 0.0);
        assert_close(h[0], 1.0, 1e-12);
    }

    #[test]
    fn complete4_hitting_times_by_symmetry() {
        // Each non-target vertex satisfies H = 1 + (2/3) H, so H = 3.
        let g = Graph::complete(4).unwrap();
        let h = hitting_times_to(&g, 3).unwrap();
        for y in 0..3 {
            assert_close(h[y], 3.0, 1e-10);
        }
        assert_eq!(h[3], 0.0);
    }

    #[test]
    fn hitting_matrix_small_cases() {
        let k2 = Graph::path(1).unwrap();
        let m = hitting_matrix(&k2).unwrap();
        assert_eq!(m.row(0), &[0.0, 1.0]);
        assert_eq!(m.row(1), &[1.0, 0.0]);

        let p2 = Graph::path(2).unwrap();
        let m = hitting_matrix(&p2).unwrap();
        assert_close(m.get(1, 0), 3.0, 1e-10);
        assert_close(m.get(1, 2), 3.0, 1e-10);
        assert_eq!(m.get(1, 1), 0.0);

        // On a cycle of length 4, H between vertices k apart is k * (4 - k).
        let c4 = Graph::cycle(4).unwrap();
        let m = hitting_matrix(&c4).unwrap();
        assert_close(m.get(0, 1), 3.0, 1e-10);
        assert_close(m.get(0, 2), 4.0, 1e-10);
        assert_close(m.get(0, 3), 3.0, 1e-10);
    }

    #[test]
    fn first_step_consistency_and_positivity() {
        let g = generate(GraphKind::Gnp {
            vertices: 12,
            edge_probability: 0.35,
            seed: 2,
        })
        .unwrap();
        let m = hitting_matrix(&g).unwrap();
        for x in 0..g.vertex_count() {
            assert_eq!(m.get(x, x), 0.0);
            for y in 0..g.vertex_count() {
                if y == x {
                    continue;
                }
                assert!(m.get(y, x) > 0.0);
                let mean: f64 = g
                    .neighbors(y)
                    .iter()
                    .map(|&z| m.get(z, x))
                    .sum::<f64>()
                    / g.degree(y) as f64;
                assert_close(m.get(y, x), 1.0 + mean, 1e-8);
            }
        }
    }

    #[test]
    fn path2_cover_costs() {
        let g = Graph::path(2).unwrap();
        let c0 = cover_cost_hitting(&g, 0).unwrap();
        assert_close(c0.total, 5.0, 1e-10);
        assert_close(c0.per_vertex, 2.5, 1e-10);
        let c1 = cover_cost_hitting(&g, 1).unwrap();
        assert_close(c1.total, 6.0, 1e-10);
        assert_close(c1.per_vertex, 3.0, 1e-10);
    }

    #[test]
    fn single_edge_cover_cost() {
        let g = Graph::path(1).unwrap();
        let c = cover_cost_hitting(&g, 0).unwrap();
        assert_close(c.total, 1.0, 1e-12);
        assert_close(c.per_vertex, 1.0, 1e-12);
    }

    #[test]
    fn all_roots_matches_per_root_and_known_values() {
        let g = Graph::path(2).unwrap();
        let all = cover_cost_all_roots(&g).unwrap();
        let totals: Vec<f64> = all.iter().map(|c| c.total).collect();
        assert_close(totals[0], 5.0, 1e-10);
        assert_close(totals[1], 6.0, 1e-10);
        assert_close(totals[2], 5.0, 1e-10);
        for (r, c) in all.iter().enumerate() {
            let direct = cover_cost_hitting(&g, r).unwrap();
            assert_close(c.total, direct.total, 1e-12);
        }

        let star = Graph::star(3).unwrap();
        let c = cover_cost_all_roots(&star).unwrap()[0];
        assert_close(c.per_vertex, 5.0, 1e-10);

        let k4 = Graph::complete(4).unwrap();
        for c in cover_cost_all_roots(&k4).unwrap() {
            assert_close(c.total, 9.0, 1e-10);
            assert_close(c.per_vertex, 3.0, 1e-10);
        }
    }

    #[test]
    fn total_and_per_vertex_share_one_arithmetic_path() {
        let g = Graph::cycle(7).unwrap();
        let c = cover_cost_hitting(&g, 3).unwrap();
        assert_eq!(c.per_vertex.to_bits(), (c.total / g.n() as f64).to_bits());
    }

    #[test]
    fn triangle_additivity_on_paths() {
        // H_0(k) = H_0(r) + H_r(k) for 0 < r < k on a path.
        let g = Graph::path(12).unwrap();
        let m = hitting_matrix(&g).unwrap();
        for r in 1..12 {
            for k in r + 1..=12 {
                let lhs = m.get(0, k);
                let rhs = m.get(0, r) + m.get(r, k);
                assert_close(lhs, rhs, 1e-8 * lhs.abs());
            }
        }
    }

    #[test]
    fn invalid_vertex_is_rejected() {
        let g = Graph::path(2).unwrap();
        assert!(matches!(
            hitting_times_to(&g, 3),
            Err(Error::Graph(_))
        ));
        assert!(matches!(cover_cost_hitting(&g, 9), Err(Error::Graph(_))));
    }
}

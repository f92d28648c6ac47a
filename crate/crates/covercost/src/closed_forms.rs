//! Exact closed forms: paths, stars, the confluent double sum for trees,
//! and the Wiener-index identity. These are the analytically solvable
//! cases used as regression anchors for the linear-algebra routes.

use crate::graph::Graph;
use crate::hitting;
use crate::{CoverCost, Error};

/// `cc_r(P_n) = (n+1)(2n+1)/6 + r(n-r)/n` for the path on `n` edges with
/// vertices indexed `0..=n`.
pub fn cc_path(n: usize, r: usize) -> Result<f64, Error> {
    if n == 0 || r > n {
        return Err(Error::RootOutOfRange { root: r, n });
    }
    let nf = n as f64;
    let rf = r as f64;
    Ok((nf + 1.0) * (2.0 * nf + 1.0) / 6.0 + rf * (nf - rf) / nf)
}

/// Endpoint/midpoint comparison for a path with an even edge count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathExtremes {
    pub cc_end: f64,
    pub cc_mid: f64,
    /// `cc_mid - cc_end`, equal to `n/4`.
    pub gap: f64,
}

pub fn path_extremes(n: usize) -> Result<PathExtremes, Error> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::OddPathLength(n));
    }
    let cc_end = cc_path(n, 0)?;
    let cc_mid = cc_path(n, n / 2)?;
    debug_assert!({
        // cc is nondecreasing in min(r, n - r).
        (1..=n / 2).all(|r| cc_path(n, r).unwrap() >= cc_path(n, r - 1).unwrap())
    });
    Ok(PathExtremes {
        cc_end,
        cc_mid,
        gap: cc_mid - cc_end,
    })
}

/// `cc_center(S_n) = 2n - 1` for the star with `n` leaves.
pub fn cc_star_center(n: usize) -> Result<f64, Error> {
    if n == 0 {
        return Err(Error::RootOutOfRange { root: 0, n });
    }
    Ok(2.0 * n as f64 - 1.0)
}

/// Parent/depth view of a tree under a chosen root; the root's parent is
/// the `None` sentinel.
#[derive(Debug, Clone)]
pub struct TreeView {
    pub root: usize,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

impl TreeView {
    pub fn new(g: &Graph, root: usize) -> Result<Self, Error> {
        g.check_vertex(root)?;
        if !g.is_tree() {
            return Err(Error::NotATree {
                vertices: g.vertex_count(),
                edges: g.edge_count(),
            });
        }
        let v = g.vertex_count();
        let mut parent = vec![None; v];
        let mut depth = vec![0usize; v];
        let mut seen = vec![false; v];
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(Self { root, parent, depth })
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// The confluent of `x` and `y` with respect to the root: the deepest
    /// common ancestor, i.e. the vertex of minimal distance from the root
    /// separating `x` from `y`. `confluent(x, x) = x`.
    pub fn confluent(&self, x: usize, y: usize) -> usize {
        let (mut a, mut b) = (x, y);
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].expect("deeper vertex has a parent");
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].expect("deeper vertex has a parent");
        }
        while a != b {
            a = self.parent[a].expect("non-root mismatch has a parent");
            b = self.parent[b].expect("non-root mismatch has a parent");
        }
        a
    }
}

/// Tree cover cost from the confluent double sum
/// `CC_r(T) = sum_{x,y} d(x ^_r y, y) * d(x)`, where the first factor is
/// tree distance and the second is degree. The diagonal contributes zero.
pub fn cover_cost_tree(g: &Graph, root: usize) -> Result<CoverCost, Error> {
    let view = TreeView::new(g, root)?;
    let v = g.vertex_count();
    let mut total = 0.0;
    for x in 0..v {
        let degree = g.degree(x) as f64;
        let mut distance_sum = 0usize;
        for y in 0..v {
            let meet = view.confluent(x, y);
            distance_sum += view.depth(y) - view.depth(meet);
        }
        total += degree * distance_sum as f64;
    }
    Ok(CoverCost::from_total(total, g.n()))
}

/// Wiener index `W(G) = (1/2) * sum over ordered pairs of d(x, y)`,
/// via all-sources BFS. Integral on unweighted graphs, returned as a real
/// for interface uniformity.
pub fn wiener_index(g: &Graph) -> f64 {
    let v = g.vertex_count();
    let mut ordered_sum = 0usize;
    for source in 0..v {
        let dist = g.bfs_distances(source).expect("valid source");
        ordered_sum += dist.iter().sum::<usize>();
    }
    ordered_sum as f64 / 2.0
}

/// The identity `CC_r(T) + sum_v d(r, v) = 2 W(T)` on trees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WienerIdentity {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn wiener_identity_check(g: &Graph, root: usize) -> Result<WienerIdentity, Error> {
    if !g.is_tree() {
        return Err(Error::NotATree {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
        });
    }
    let cc = hitting::cover_cost_hitting(g, root)?;
    let dist_sum: usize = g.bfs_distances(root)?.iter().sum();
    let lhs = cc.total + dist_sum as f64;
    let rhs = 2.0 * wiener_index(g);
    let holds = (lhs - rhs).abs() <= 1e-8 * (1.0 + rhs.abs());
    Ok(WienerIdentity { lhs, rhs, holds })
}

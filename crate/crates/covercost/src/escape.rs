//! Escape probabilities, before-probabilities, the double-sum route
//! `CC_r = sum_{x != y} p_r(x<y) / p_xy`, and the departing-charge vector.
//!
//! All probabilities here are harmonic extensions: fixing boundary values
//! on two vertices and requiring every other value to equal the mean of
//! its neighbors yields one dense solve per queried pair. The degree
//! normalization `1/d` appears in every interior equation and in the
//! escape sum over the neighbors of `x`; without it the "probabilities"
//! exceed 1 on any non-regular example.

use crate::exec;
use crate::graph::Graph;
use crate::linalg::DenseSystem;
use crate::{CoverCost, Error};

/// Escape data for one ordered pair `(x, y)`.
///
/// `probability` is `p_xy`, the chance that a walk from `x` visits `y`
/// before returning to `x`; `expected_visits` is `V_x^{+y} = 1/p_xy`, the
/// expected number of visits to `x` (the start counts) before first
/// reaching `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Escape {
    pub probability: f64,
    pub expected_visits: f64,
}

/// Departing-charge vector for one root: `values[x]` is the expected total
/// charge departing `x` in the quark-dropping walk, and
/// `sum_x values[x] = cc_root(G)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DVector {
    pub root: usize,
    pub values: Vec<f64>,
}

impl DVector {
    /// `cc = sum_x D(x)` as a fixed-order sum; `CC = n * cc`.
    pub fn cover_cost(&self) -> CoverCost {
        let cc: f64 = self.values.iter().sum();
        CoverCost::from_per_vertex(cc, self.values.len() - 1)
    }
}

/// Harmonic extension with `h(one) = 1`, `h(zero) = 0` and
/// `h(v) = mean of h over the neighbors of v` elsewhere.
fn harmonic(g: &Graph, one: usize, zero: usize) -> Result<Vec<f64>, Error> {
    let v = g.vertex_count();
    let interior: Vec<usize> = (0..v).filter(|&u| u != one && u != zero).collect();
    let mut h = vec![0.0; v];
    h[one] = 1.0;
    if interior.is_empty() {
        return Ok(h);
    }
    let mut position = vec![usize::MAX; v];
    for (i, &u) in interior.iter().enumerate() {
        position[u] = i;
    }
    let m = interior.len();
    let mut a = vec![vec![0.0; m]; m];
    let mut b = vec![0.0; m];
    for (i, &u) in interior.iter().enumerate() {
        a[i][i] = g.degree(u) as f64;
        for &w in g.neighbors(u) {
            if w == one {
                b[i] += 1.0;
            } else if w != zero {
                a[i][position[w]] -= 1.0;
            }
        }
    }
    let solved = DenseSystem::with_single_rhs(a, b)?.solve()?;
    for (i, &u) in interior.iter().enumerate() {
        h[u] = solved[i][0];
    }
    Ok(h)
}

/// `p_xy` together with its reciprocal `V_x^{+y}`.
pub fn escape(g: &Graph, x: usize, y: usize) -> Result<Escape, Error> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(Error::EqualVertexPair(x));
    }
    let h = harmonic(g, y, x)?;
    // Clamp away float excess above 1 so the (0, 1] range holds exactly.
    let probability = neighbor_mean(g, x, &h).min(1.0);
    Ok(Escape {
        probability,
        expected_visits: 1.0 / probability,
    })
}

/// Probability that a walk from `x` visits `y` before returning to `x`.
pub fn escape_probability(g: &Graph, x: usize, y: usize) -> Result<f64, Error> {
    escape(g, x, y).map(|e| e.probability)
}

/// Probability that a walk from `r` visits `x` before `y`; the start
/// vertex counts as visited at time 0, so `p_x(x<y) = 1` and
/// `p_y(x<y) = 0`.
pub fn before_probability(g: &Graph, r: usize, x: usize, y: usize) -> Result<f64, Error> {
    g.check_vertex(r)?;
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(Error::EqualVertexPair(x));
    }
    Ok(harmonic(g, x, y)?[r].clamp(0.0, 1.0))
}

fn neighbor_mean(g: &Graph, v: usize, h: &[f64]) -> f64 {
    g.neighbors(v).iter().map(|&z| h[z]).sum::<f64>() / g.degree(v) as f64
}

/// One harmonic solve serving a whole ordered pair: `p_r(x<y)` for every
/// root from `h`, and `p_xy` from the complementary boundary `1 - h`.
fn pair_solve(g: &Graph, x: usize, y: usize) -> Result<(Vec<f64>, f64), Error> {
    let h = harmonic(g, x, y)?;
    let p_xy = 1.0 - neighbor_mean(g, x, &h);
    Ok((h, p_xy))
}

/// Cover cost from the double sum `CC_r = sum_{x != y} p_r(x<y) / p_xy`.
///
/// Terms with `y = root` vanish because the root counts as visited at
/// time 0, and terms with `x = root` reduce to `1 / p_{root,y}`; both fall
/// out of the boundary values, so every surviving term is one dedicated
/// harmonic solve. `O(n^5)` in total; this is the verification route, not
/// the production one.
pub fn cover_cost_theorem(g: &Graph, root: usize) -> Result<CoverCost, Error> {
    g.check_vertex(root)?;
    let v = g.vertex_count();
    let mut pairs = Vec::with_capacity(v * (v - 1));
    for x in 0..v {
        for y in 0..v {
            if y != x && y != root {
                pairs.push((x, y));
            }
        }
    }
    let terms = exec::try_map_indexed(pairs.len(), |i| {
        let (x, y) = pairs[i];
        let (h, p_xy) = pair_solve(g, x, y)?;
        Ok::<f64, Error>(h[root] / p_xy)
    })?;
    Ok(CoverCost::from_total(terms.iter().sum(), g.n()))
}

/// The theorem sum for every root at once, reusing one harmonic solve per
/// ordered pair across all roots.
pub fn cover_cost_theorem_all_roots(g: &Graph) -> Result<Vec<CoverCost>, Error> {
    let v = g.vertex_count();
    let mut pairs = Vec::with_capacity(v * (v - 1));
    for x in 0..v {
        for y in 0..v {
            if y != x {
                pairs.push((x, y));
            }
        }
    }
    let contributions = exec::try_map_indexed(pairs.len(), |i| {
        let (x, y) = pairs[i];
        let (h, p_xy) = pair_solve(g, x, y)?;
        let per_root: Vec<f64> = h.iter().map(|&hr| hr / p_xy).collect();
        Ok::<Vec<f64>, Error>(per_root)
    })?;
    let mut totals = vec![0.0; v];
    for contribution in &contributions {
        for (t, c) in totals.iter_mut().zip(contribution) {
            *t += c;
        }
    }
    Ok(totals
        .into_iter()
        .map(|t| CoverCost::from_total(t, g.n()))
        .collect())
}

/// Departing-charge vector for `root`.
///
/// `D(root) = (1/n) * sum_{y != root} 1/p_{root,y}` needs `n` escape
/// solves; the remaining entries come from one charge-balance system
/// `D(x) = sum_{z ~ x} D(z)/d(z) - 1/n` for `x != root`, which accounts
/// for the `1/n` quark dropped at the first visit to `x`.
pub fn d_vector(g: &Graph, root: usize) -> Result<DVector, Error> {
    g.check_vertex(root)?;
    let v = g.vertex_count();
    let n = g.n() as f64;
    let others: Vec<usize> = (0..v).filter(|&u| u != root).collect();
    let visits = exec::try_map_indexed(others.len(), |i| {
        escape(g, root, others[i]).map(|e| e.expected_visits)
    })?;
    let d_root = visits.iter().sum::<f64>() / n;

    let mut position = vec![usize::MAX; v];
    for (i, &u) in others.iter().enumerate() {
        position[u] = i;
    }
    let m = others.len();
    let mut a = vec![vec![0.0; m]; m];
    let mut b = vec![-1.0 / n; m];
    for (i, &u) in others.iter().enumerate() {
        a[i][i] = 1.0;
        for &z in g.neighbors(u) {
            if z == root {
                b[i] += d_root / g.degree(root) as f64;
            } else {
                a[i][position[z]] -= 1.0 / g.degree(z) as f64;
            }
        }
    }
    let solved = DenseSystem::with_single_rhs(a, b)?.solve()?;
    let mut values = vec![0.0; v];
    values[root] = d_root;
    for (i, &u) in others.iter().enumerate() {
        values[u] = solved[i][0];
    }
    Ok(DVector { root, values })
}

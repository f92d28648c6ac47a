//! Cross-validation suites over built-in corpora.
//!
//! Each suite exercises one family of identities at pinned tolerances and
//! reports the worst observed error. The CLI `verify` subcommand prints
//! these reports; the acceptance test target asserts them.

use crate::graph::{generate, Graph, GraphKind};
use crate::{closed_forms, escape, exec, hitting, simulate, Error};

/// Relative tolerance for all exact-method comparisons.
pub const REL_TOL: f64 = 1e-8;
/// Absolute tolerance for the even-path midpoint/endpoint gap.
pub const GAP_TOL: f64 = 1e-10;
/// Monte Carlo targets must lie within this many CI half-widths.
pub const CI_SIGMAS: f64 = 3.0;

/// Largest path (in edges) checked against the closed form.
pub const PATH_MAX_EDGES: usize = 200;
/// Largest star (in leaves) checked against the closed form.
pub const STAR_MAX_LEAVES: usize = 100;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub max_err: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    fn from_err(name: &str, max_err: f64, tol: f64) -> Self {
        Self {
            name: name.to_string(),
            max_err,
            tol,
            pass: max_err <= tol,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub const SUITE_NAMES: [&str; 6] = ["path", "star", "tree", "methods", "oracle", "montecarlo"];

/// Run one named suite, or every suite for `"all"`.
pub fn run(name: &str) -> Result<Option<Vec<SuiteReport>>, Error> {
    let reports = match name {
        "path" => vec![path_suite()?],
        "star" => vec![star_suite()?],
        "tree" => vec![tree_suite()?],
        "methods" => vec![methods_suite()?],
        "oracle" => vec![oracle_suite()?],
        "montecarlo" => vec![montecarlo_suite()?],
        "all" => vec![
            path_suite()?,
            star_suite()?,
            tree_suite()?,
            methods_suite()?,
            oracle_suite()?,
            montecarlo_suite()?,
        ],
        _ => return Ok(None),
    };
    Ok(Some(reports))
}

fn rel_err(actual: f64, expected: f64) -> f64 {
    (actual - expected).abs() / expected.abs().max(f64::MIN_POSITIVE)
}

fn fold_max<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

/// Paths: the hitting route against the closed form for every root of
/// every path up to [`PATH_MAX_EDGES`], plus the even-path extremes.
pub fn path_suite() -> Result<SuiteReport, Error> {
    let mut checks = vec![path_closed_form_check()?];
    checks.extend(path_extremes_checks()?);
    Ok(SuiteReport {
        suite: "path",
        checks,
    })
}

/// The hitting route against `(n+1)(2n+1)/6 + r(n-r)/n` for every root of
/// every path up to [`PATH_MAX_EDGES`].
pub fn path_closed_form_check() -> Result<Check, Error> {
    let per_n = exec::try_map_indexed(PATH_MAX_EDGES, |i| {
        let n = i + 1;
        let g = Graph::path(n)?;
        let all = hitting::cover_cost_all_roots(&g)?;
        let mut worst = 0.0f64;
        for (r, cost) in all.iter().enumerate() {
            let formula = closed_forms::cc_path(n, r)?;
            worst = worst.max(rel_err(cost.per_vertex, formula));
        }
        Ok::<f64, Error>(worst)
    })?;
    Ok(Check::from_err(
        "path cc (hitting) vs (n+1)(2n+1)/6 + r(n-r)/n, n <= 200, all roots",
        fold_max(per_n),
        REL_TOL,
    ))
}

/// Even paths up to [`PATH_MAX_EDGES`]: the midpoint/endpoint gap is
/// exactly `n/4`, endpoints are the argmin and the midpoint the argmax.
pub fn path_extremes_checks() -> Result<Vec<Check>, Error> {
    let mut gap_err = 0.0f64;
    let mut extremes_exact = true;
    for n in (2..=PATH_MAX_EDGES).step_by(2) {
        let ex = closed_forms::path_extremes(n)?;
        gap_err = gap_err.max((ex.gap - n as f64 / 4.0).abs());
        let values: Vec<f64> = (0..=n)
            .map(|r| closed_forms::cc_path(n, r).unwrap())
            .collect();
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let argmin: Vec<usize> = (0..=n).filter(|&r| values[r] == min).collect();
        let argmax: Vec<usize> = (0..=n).filter(|&r| values[r] == max).collect();
        extremes_exact &= argmin == vec![0, n] && argmax == vec![n / 2];
    }
    let gap = Check::from_err("even-path midpoint minus endpoint = n/4", gap_err, GAP_TOL);
    let extremes = Check {
        name: "endpoints are the exact argmin, midpoint the exact argmax".into(),
        max_err: if extremes_exact { 0.0 } else { 1.0 },
        tol: 0.0,
        pass: extremes_exact,
    };
    Ok(vec![gap, extremes])
}

/// Stars: the hitting route from the center against `2n - 1`.
pub fn star_suite() -> Result<SuiteReport, Error> {
    let per_n = exec::try_map_indexed(STAR_MAX_LEAVES, |i| {
        let n = i + 1;
        let g = Graph::star(n)?;
        let cost = hitting::cover_cost_hitting(&g, 0)?;
        Ok::<f64, Error>(rel_err(cost.per_vertex, closed_forms::cc_star_center(n)?))
    })?;
    Ok(SuiteReport {
        suite: "star",
        checks: vec![Check::from_err(
            "star center cc (hitting) vs 2n-1, n <= 100",
            fold_max(per_n),
            REL_TOL,
        )],
    })
}

fn tree_corpus() -> Vec<GraphKind> {
    (0..50)
        .map(|i| GraphKind::RandomTree {
            vertices: 5 + (i * 193) % 196,
            seed: 100 + i as u64,
        })
        .collect()
}

/// Trees: the confluent double sum and the Wiener identity against the
/// hitting route on 50 seeded random trees, 5 roots each.
pub fn tree_suite() -> Result<SuiteReport, Error> {
    let corpus = tree_corpus();
    let per_tree = exec::try_map_indexed(corpus.len(), |i| {
        let g = generate(corpus[i])?;
        let v = g.vertex_count();
        let matrix = hitting::hitting_matrix(&g)?;
        let two_w = 2.0 * closed_forms::wiener_index(&g);
        let mut tree_err = 0.0f64;
        let mut wiener_err = 0.0f64;
        for j in 0..5 {
            let root = (i + j * v / 5) % v;
            let from_hitting = matrix.cover_cost(root);
            let from_sum = closed_forms::cover_cost_tree(&g, root)?;
            tree_err = tree_err.max(rel_err(from_sum.total, from_hitting.total));
            let dist: usize = g.bfs_distances(root)?.iter().sum();
            let lhs = from_hitting.total + dist as f64;
            wiener_err = wiener_err.max(rel_err(lhs, two_w));
        }
        Ok::<(f64, f64), Error>((tree_err, wiener_err))
    })?;
    let tree = Check::from_err(
        "tree confluent sum vs hitting, 50 random trees x 5 roots",
        fold_max(per_tree.iter().map(|&(t, _)| t)),
        REL_TOL,
    );
    let wiener = Check::from_err(
        "Wiener identity CC_r + sum d(r,.) = 2W on the same trees",
        fold_max(per_tree.iter().map(|&(_, w)| w)),
        REL_TOL,
    );
    Ok(SuiteReport {
        suite: "tree",
        checks: vec![tree, wiener],
    })
}

fn methods_corpus() -> Vec<GraphKind> {
    let probabilities = [0.15, 0.25, 0.4, 0.6];
    (0..50)
        .map(|i| GraphKind::Gnp {
            vertices: 5 + (i % 26),
            edge_probability: probabilities[i % 4],
            seed: 500 + i as u64,
        })
        .collect()
}

/// Three-way agreement of the hitting sum, the theorem double sum and the
/// D-vector on 50 seeded connected random graphs, every root.
pub fn methods_suite() -> Result<SuiteReport, Error> {
    let corpus = methods_corpus();
    let per_graph = exec::try_map_indexed(corpus.len(), |i| {
        let g = generate(corpus[i])?;
        let from_hitting = hitting::cover_cost_all_roots(&g)?;
        let from_theorem = escape::cover_cost_theorem_all_roots(&g)?;
        let mut worst = 0.0f64;
        for (root, (h, t)) in from_hitting.iter().zip(&from_theorem).enumerate() {
            let from_d = escape::d_vector(&g, root)?.cover_cost();
            let (a, b, c) = (h.total, t.total, from_d.total);
            worst = worst
                .max(rel_err(a, b))
                .max(rel_err(b, c))
                .max(rel_err(a, c));
        }
        Ok::<f64, Error>(worst)
    })?;
    Ok(SuiteReport {
        suite: "methods",
        checks: vec![Check::from_err(
            "hitting vs theorem-sum vs D-vector, 50 random graphs, all roots",
            fold_max(per_graph),
            REL_TOL,
        )],
    })
}

/// Every corpus graph with at most 10 vertices, used by the oracle suite.
pub fn small_corpus() -> Vec<(String, Graph)> {
    let mut graphs = Vec::new();
    for n in 1..=9 {
        graphs.push((format!("path({n})"), Graph::path(n).unwrap()));
    }
    for n in 1..=9 {
        graphs.push((format!("star({n})"), Graph::star(n).unwrap()));
    }
    for v in 3..=10 {
        graphs.push((format!("cycle({v})"), Graph::cycle(v).unwrap()));
    }
    for v in 2..=6 {
        graphs.push((format!("complete({v})"), Graph::complete(v).unwrap()));
    }
    for v in 5..=10 {
        let kind = GraphKind::RandomTree {
            vertices: v,
            seed: 3 * v as u64 + 1,
        };
        graphs.push((format!("random_tree({v})"), generate(kind).unwrap()));
    }
    for (v, p, seed) in [(6, 0.4, 3), (8, 0.35, 4), (10, 0.3, 5), (9, 0.5, 6), (7, 0.6, 9)] {
        let kind = GraphKind::Gnp {
            vertices: v,
            edge_probability: p,
            seed,
        };
        graphs.push((format!("gnp({v},{p},{seed})"), generate(kind).unwrap()));
    }
    graphs
}

/// The subset-DP oracle against the hitting route on every small corpus
/// graph and every root, plus the cc <= ct <= CC ordering.
pub fn oracle_suite() -> Result<SuiteReport, Error> {
    let corpus = small_corpus();
    let per_graph = exec::try_map_indexed(corpus.len(), |i| {
        let g = &corpus[i].1;
        let n = g.n() as f64;
        let all = hitting::cover_cost_all_roots(g)?;
        let mut worst = 0.0f64;
        let mut ordering = true;
        for root in 0..g.vertex_count() {
            let oracle = simulate::exact_cover_stats(g, root)?;
            worst = worst.max(rel_err(oracle.cc, all[root].per_vertex));
            let strict = g.n() >= 2;
            ordering &= if strict {
                oracle.cc < oracle.ct && oracle.ct < n * oracle.cc
            } else {
                oracle.cc <= oracle.ct && oracle.ct <= n * oracle.cc
            };
        }
        Ok::<(f64, bool), Error>((worst, ordering))
    })?;
    let agreement = Check::from_err(
        "subset-DP oracle cc vs hitting cc, all graphs <= 10 vertices, all roots",
        fold_max(per_graph.iter().map(|&(e, _)| e)),
        REL_TOL,
    );
    let ordered = per_graph.iter().all(|&(_, o)| o);
    let ordering = Check {
        name: "oracle ordering cc <= CT <= CC (strict for n >= 2)".into(),
        max_err: if ordered { 0.0 } else { 1.0 },
        tol: 0.0,
        pass: ordered,
    };
    Ok(SuiteReport {
        suite: "oracle",
        checks: vec![agreement, ordering],
    })
}

/// Monte Carlo calibration: star(20) from the center against the star
/// closed form and the coupon-collector cover time, plus the
/// coupon-collector formula itself against the exact oracle.
pub fn montecarlo_suite() -> Result<SuiteReport, Error> {
    let harmonic = |n: usize| (1..=n).map(|k| 1.0 / k as f64).sum::<f64>();

    let mut coupon_err = 0.0f64;
    for n in 1..=8 {
        let g = Graph::star(n)?;
        let oracle = simulate::exact_cover_stats(&g, 0)?;
        let formula = 2.0 * n as f64 * harmonic(n) - 1.0;
        coupon_err = coupon_err.max(rel_err(formula, oracle.ct));
    }
    let coupon = Check::from_err(
        "coupon-collector CT formula vs exact oracle, stars n <= 8",
        coupon_err,
        REL_TOL,
    );

    let g = Graph::star(20)?;
    let summary = simulate::estimate(&g, 0, 200_000, 1)?;
    let cost_target = closed_forms::cc_star_center(20)?;
    let steps_target = 2.0 * 20.0 * harmonic(20) - 1.0;
    let cost = Check::from_err(
        "star(20) mean cost within 3 CI of 39 (200k walks)",
        (summary.mean_cost - cost_target).abs(),
        CI_SIGMAS * summary.ci95_cost,
    );
    let steps = Check::from_err(
        "star(20) mean steps within 3 CI of 40 H_20 - 1",
        (summary.mean_steps - steps_target).abs(),
        CI_SIGMAS * summary.ci95_steps,
    );
    Ok(SuiteReport {
        suite: "montecarlo",
        checks: vec![coupon, cost, steps],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_name_is_none() {
        assert!(run("bogus").unwrap().is_none());
    }

    #[test]
    fn corpora_are_well_formed() {
        assert_eq!(tree_corpus().len(), 50);
        for kind in tree_corpus() {
            if let GraphKind::RandomTree { vertices, .. } = kind {
                assert!((5..=200).contains(&vertices));
            }
        }
        assert_eq!(methods_corpus().len(), 50);
        for kind in methods_corpus() {
            if let GraphKind::Gnp { vertices, .. } = kind {
                assert!(vertices <= 30);
            }
        }
        for (name, g) in small_corpus() {
            assert!(g.vertex_count() <= 10, "{name} too large");
        }
    }

    #[test]
    fn star_suite_passes() {
        let report = star_suite().unwrap();
        assert!(report.pass(), "{:?}", report.checks);
    }
}

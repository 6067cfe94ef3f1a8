//! The verification suites. Each suite is a list of independent jobs run in
//! parallel; the report is sorted by check name, so runs are reproducible.

use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use twinreduce_core::diversity::{
    check_bound, second_profile_partition, surface_second_bound, surface_square_bound, Bound,
};
use twinreduce_core::gadgets::{blowup2, gen_grid, gen_q_tree, gen_s, gen_t_of, gen_tight_ktree_pi1, gen_tight_surface_pi1};
use twinreduce_core::oracle::{reduced_f_exact, reduced_f_upper_greedy, OracleConfig, Strategy};
use twinreduce_core::params::{
    bandwidth_exact, col_s_exact, degeneracy, max_degree, ordering_bandwidth, pathwidth_exact, treewidth_exact, Limits,
    ParamKind, RedParam,
};
use twinreduce_core::product::{
    power_sequence, product_path_sequence, verify_product_sequence, ProductCertificate, RootedTreeDecomposition,
};
use twinreduce_core::{Graph, Trigraph};

use crate::enumerate::{is_cograph, is_p4_free, nonisomorphic};
use crate::formats::{graph_to_json, CertificateJson};
use crate::planar::is_planar;
use crate::random::{random_graph, random_planar, random_subset, random_triangulation, rng, SEED};
use crate::report::{timed, Check, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    GadgetBounds,
    ProductPathGrids,
    PowerSquares,
    OracleSmallGraphs,
    Tightness,
    PlanarPi1,
    TofSequence,
    LeafMergeQtree,
    CrossEvaluators,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::GadgetBounds,
        Suite::ProductPathGrids,
        Suite::PowerSquares,
        Suite::OracleSmallGraphs,
        Suite::Tightness,
        Suite::PlanarPi1,
        Suite::TofSequence,
        Suite::LeafMergeQtree,
        Suite::CrossEvaluators,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::GadgetBounds => "gadget-bounds",
            Suite::ProductPathGrids => "productpath-grids",
            Suite::PowerSquares => "power-squares",
            Suite::OracleSmallGraphs => "oracle-smallgraphs",
            Suite::Tightness => "tightness",
            Suite::PlanarPi1 => "planar-pi1",
            Suite::TofSequence => "tof-sequence",
            Suite::LeafMergeQtree => "leaf-merge-qtree",
            Suite::CrossEvaluators => "cross-evaluators",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Wall-clock budget of the acceptance run.
    pub fn budget(self) -> Duration {
        Duration::from_secs(match self {
            Suite::GadgetBounds | Suite::Tightness | Suite::TofSequence => 5,
            Suite::ProductPathGrids => 10,
            Suite::PowerSquares | Suite::LeafMergeQtree => 30,
            Suite::OracleSmallGraphs => 300,
            Suite::PlanarPi1 | Suite::CrossEvaluators => 120,
        })
    }

    pub fn uses_seed(self) -> bool {
        matches!(self, Suite::Tightness | Suite::PlanarPi1 | Suite::CrossEvaluators)
    }
}

type Job = Box<dyn Fn() -> Vec<Check> + Send + Sync>;

fn job(f: impl Fn() -> Vec<Check> + Send + Sync + 'static) -> Job {
    Box::new(f)
}

pub fn run_suite(suite: Suite, seed: u64) -> VerifyReport {
    let start = Instant::now();
    let jobs = match suite {
        Suite::GadgetBounds => gadget_bounds(),
        Suite::ProductPathGrids => productpath_grids(),
        Suite::PowerSquares => power_squares(),
        Suite::OracleSmallGraphs => oracle_small_graphs(),
        Suite::Tightness => tightness(seed),
        Suite::PlanarPi1 => planar_pi1(seed),
        Suite::TofSequence => tof_sequence(),
        Suite::LeafMergeQtree => leaf_merge_qtree(),
        Suite::CrossEvaluators => cross_evaluators(seed),
    };
    let checks: Vec<Check> = jobs.par_iter().flat_map_iter(timed).collect();
    let seed = suite.uses_seed().then_some(seed);
    VerifyReport::new(suite.name(), seed, checks, start.elapsed().as_millis() as u64)
}

fn gadget_bounds() -> Vec<Job> {
    let mut jobs = Vec::new();
    for x in 1..=4 {
        for q in 2..=3 {
            for r in 1..=2 {
                jobs.push(job(move || {
                    let tag = format!("s[x={x},q={q},r={r}]");
                    let s = match gen_s(x, q, r) {
                        Ok(s) => s,
                        Err(e) => return vec![Check::error(tag, "gadget construction", e)],
                    };
                    let input = graph_to_json(&s.graph);
                    let mut out = vec![Check::at_most(
                        format!("{tag} max degree"),
                        "max degree of S_{x,q,r} is at most (3r+2)q-2",
                        max_degree(&s.graph) as u64,
                        s.degree_bound() as u64,
                    )];
                    let order = s.layered_ordering();
                    out.push(match ordering_bandwidth(&s.graph, &order) {
                        Some(bw) => Check::at_most(
                            format!("{tag} layered ordering"),
                            "the layered ordering of S_{x,q,r} has bandwidth at most (2r+2)q-2",
                            bw as u64,
                            s.bandwidth_bound() as u64,
                        ),
                        None => Check::error(format!("{tag} layered ordering"), "layered ordering", "not a permutation"),
                    });
                    if s.graph.n() <= 24 {
                        let name = format!("{tag} exact bandwidth");
                        let anchor = "exact bandwidth of S_{x,q,r} is at most (2r+2)q-2";
                        out.push(match bandwidth_exact(&s.graph, None, &Limits::default()) {
                            Ok(b) => Check::at_most(name, anchor, b.value as u64, s.bandwidth_bound() as u64),
                            Err(e) => Check::error(name, anchor, e),
                        });
                    }
                    out.into_iter().map(|c| c.with_input(input.as_bytes())).collect()
                }));
            }
        }
    }
    jobs
}

fn productpath_grids() -> Vec<Job> {
    (3..=6)
        .map(|m| {
            job(move || {
                let q = 2;
                let tag = format!("grid[{m}x{m}]");
                let (g, cert) = gen_grid(m, m).expect("m >= 1");
                let input = format!("{}{}", graph_to_json(&g), serde_json::to_string(&CertificateJson::from_certificate(&cert)).unwrap());
                let anchor_bw = "every step of the product sequence has witness bandwidth at most 4q-2";
                let anchor_deg = "every step of the product sequence has red degree at most 5q-2";
                let anchor_map = "every red component maps edge-preservingly into S_{l,q,1}";
                let s = match product_path_sequence(&Trigraph::from_graph(&g), &cert, q) {
                    Ok(s) => s,
                    Err(e) => return vec![Check::error(format!("{tag} sequence"), anchor_map, e)],
                };
                let out = match verify_product_sequence(&s) {
                    Ok(st) => vec![
                        Check::equal(format!("{tag} template injections"), anchor_map, st.steps as u64 + 1, s.templates.len() as u64),
                        Check::at_most(format!("{tag} padded witness bandwidth"), anchor_bw, st.max_witness_bandwidth as u64, (4 * q - 2) as u64),
                        Check::at_most(format!("{tag} padded red degree"), anchor_deg, st.max_red_degree as u64, (5 * q - 2) as u64),
                        Check::at_most(format!("{tag} witness bandwidth"), anchor_bw, st.projected_max_witness_bandwidth as u64, (4 * q - 2) as u64),
                        Check::at_most(format!("{tag} red degree"), anchor_deg, st.projected_max_red_degree as u64, (5 * q - 2) as u64),
                        Check::equal(format!("{tag} complete"), "the sequence ends with one vertex", s.projected.merges.len() as u64, g.n() as u64 - 1),
                    ],
                    Err(e) => vec![Check::error(format!("{tag} verification"), anchor_map, e)],
                };
                out.into_iter().map(|c| c.with_input(input.as_bytes())).collect()
            })
        })
        .collect()
}

/// `H = K1` with the root and one leaf: `P_n` sits in `K1 ⊠ P_n`.
pub fn path_certificate(n: usize, r: usize) -> ProductCertificate {
    ProductCertificate {
        h: Graph::new(1),
        decomp: RootedTreeDecomposition { parent: vec![None, Some(0)], bags: vec![vec![], vec![0]], root: 0 },
        path_len: n,
        embed: (0..n).map(|v| Some((0, v))).collect(),
        apex: Vec::new(),
        r,
    }
}

fn power_checks(tag: String, g: &Graph, cert: &ProductCertificate) -> Vec<Check> {
    let anchor_bw = "every step of the sequence for G^2 has witness bandwidth at most 6q-2";
    let p = match power_sequence(g, cert) {
        Ok(p) => p,
        Err(e) => return vec![Check::error(format!("{tag} sequence"), anchor_bw, e)],
    };
    let q = p.q as u64;
    let mut out = vec![Check::at_most(
        format!("{tag} q"),
        "q is at most the genus-0 second-diversity product at |X| = (2r+1)(k+1)",
        q,
        surface_square_bound(p.anchor_size, 0),
    )
    .with_note(format!("|X| = {}, attempts {:?}", p.anchor_size, p.attempts))];
    match verify_product_sequence(&p.sequence) {
        Ok(st) => {
            out.push(Check::at_most(format!("{tag} padded witness bandwidth"), anchor_bw, st.max_witness_bandwidth as u64, 6 * q - 2));
            out.push(Check::at_most(format!("{tag} witness bandwidth"), anchor_bw, st.projected_max_witness_bandwidth as u64, 6 * q - 2));
            out.push(Check::equal(
                format!("{tag} complete"),
                "the sequence ends with one vertex",
                p.sequence.projected.merges.len() as u64,
                g.n().saturating_sub(1) as u64,
            ));
        }
        Err(e) => out.push(Check::error(format!("{tag} verification"), anchor_bw, e)),
    }
    let input = graph_to_json(g);
    out.into_iter().map(|c| c.with_input(input.as_bytes())).collect()
}

fn power_squares() -> Vec<Job> {
    let mut jobs: Vec<Job> = (1..=30)
        .map(|n| job(move || power_checks(format!("path[{n:02}]^2"), &Graph::path(n), &path_certificate(n, 2))))
        .collect();
    jobs.push(job(|| {
        let (g, mut cert) = gen_grid(4, 4).expect("4x4 grid");
        cert.r = 2;
        power_checks("grid[4x4]^2".into(), &g, &cert)
    }));
    jobs
}

fn exact(g: &Graph, f: &dyn RedParam) -> Result<usize, String> {
    let r = reduced_f_exact(&Trigraph::from_graph(g), &OracleConfig::new(f)).map_err(|e| e.to_string())?;
    if r.exact {
        Ok(r.value)
    } else {
        Err("oracle search ran out of budget".into())
    }
}

fn oracle_small_graphs() -> Vec<Job> {
    let mut jobs: Vec<Job> = vec![job(|| {
        let c = nonisomorphic(6).iter().filter(|g| g.is_connected()).count();
        vec![Check::equal("connected graphs on 6 vertices", "there are 112 connected graphs on 6 vertices", c as u64, 112u64)]
    })];
    for n in 1..=6 {
        jobs.push(job(move || {
            let graphs = nonisomorphic(n);
            let connected: Vec<&Graph> = graphs.iter().filter(|g| g.is_connected()).collect();
            let mut agree = 0u64;
            let mut recog = 0u64;
            for g in &connected {
                match exact(g, &ParamKind::MaxDegree) {
                    Ok(tww) => agree += u64::from((tww == 0) == is_p4_free(g)),
                    Err(e) => return vec![Check::error(format!("n={n} twin-width"), "oracle", e)],
                }
                recog += u64::from(is_cograph(g) == is_p4_free(g));
            }
            let total = connected.len() as u64;
            let mut out = vec![
                Check::equal(format!("n={n} twin-width 0 iff P4-free"), "a connected graph has twin-width 0 iff it is a cograph", agree, total),
                Check::equal(format!("n={n} cograph recognisers agree"), "P4-freeness matches the complement-decomposition test", recog, total),
            ];
            let mut hered = 0u64;
            let mut comp = 0u64;
            let bw = ParamKind::Bandwidth;
            for g in &graphs {
                let v = match exact(g, &bw) {
                    Ok(v) => v,
                    Err(e) => return vec![Check::error(format!("n={n} reduced bandwidth"), "oracle", e)],
                };
                for d in 0..g.n() {
                    let keep: Vec<usize> = (0..g.n()).filter(|&x| x != d).collect();
                    match exact(&g.induced(&keep), &bw) {
                        Ok(w) => hered += u64::from(w > v),
                        Err(e) => return vec![Check::error(format!("n={n} reduced bandwidth"), "oracle", e)],
                    }
                }
                match exact(&g.complement(), &bw) {
                    Ok(w) => comp += u64::from(w != v),
                    Err(e) => return vec![Check::error(format!("n={n} reduced bandwidth"), "oracle", e)],
                }
            }
            out.push(Check::equal(format!("n={n} reduced bandwidth hereditary"), "deleting a vertex never raises reduced bandwidth", hered, 0u64));
            out.push(Check::equal(format!("n={n} reduced bandwidth complement"), "reduced bandwidth is invariant under complementation", comp, 0u64));
            out
        }));
    }
    jobs
}

fn tightness(seed: u64) -> Vec<Job> {
    let mut jobs = Vec::new();
    for x in 4..=10usize {
        jobs.push(job(move || {
            let tag = format!("surface[|X|={x:02}]");
            let g0 = random_triangulation(&mut rng(seed, 500 + x as u64), x);
            let b = match gen_tight_surface_pi1(&g0) {
                Ok(b) => b,
                Err(e) => return vec![Check::error(tag, "tight instance", e)],
            };
            let want = (6 * x - 9) as u64;
            let input = graph_to_json(&b.graph);
            let mut out = vec![Check::equal(format!("{tag} planar"), "the tight instance is planar, so genus 0 applies", u64::from(is_planar(&b.graph)), 1u64)];
            out.push(match check_bound(&b.graph, &b.x, 1, Bound::Surface { gamma: 0 }) {
                Ok(c) => {
                    assert_eq!(c.rhs, want as u128);
                    Check::equal(format!("{tag} pi1"), "the tight planar instance has exactly 6|X|-9 neighbourhood classes", c.lhs, c.rhs)
                }
                Err(e) => Check::error(format!("{tag} pi1"), "surface bound", e),
            });
            out.into_iter().map(|c| c.with_input(input.as_bytes())).collect()
        }));
    }
    for (k, n) in [(1usize, 4usize), (2, 5), (3, 6)] {
        jobs.push(job(move || {
            let tag = format!("ktree[k={k},n={n}]");
            let b = match gen_tight_ktree_pi1(k, n) {
                Ok(b) => b,
                Err(e) => return vec![Check::error(tag, "tight instance", e)],
            };
            let want = ((1u64 << k) * (n - k + 1) as u64) - n as u64 + k as u64;
            let input = graph_to_json(&b.graph);
            let mut out = Vec::new();
            out.push(match check_bound(&b.graph, &b.x, 1, Bound::Treewidth { k: Some(k) }) {
                Ok(c) => Check::equal(format!("{tag} pi1"), "the tight k-tree instance has exactly 2^k(n-k+1)-n+k classes", c.lhs, want as u128)
                    .with_note(format!("closed form {}", c.rhs)),
                Err(e) => Check::error(format!("{tag} pi1"), "treewidth bound", e),
            });
            out.push(match treewidth_exact(&b.graph, &Limits::default()) {
                Ok(t) => Check::at_most(format!("{tag} treewidth"), "the tight k-tree instance has treewidth at most k", t.value as u64, k as u64),
                Err(e) => Check::error(format!("{tag} treewidth"), "treewidth", e),
            });
            out.into_iter().map(|c| c.with_input(input.as_bytes())).collect()
        }));
    }
    jobs
}

fn bound_check(name: String, anchor: &str, r: Result<twinreduce_core::diversity::BoundCheck, impl ToString>) -> Check {
    match r {
        Ok(c) => Check::at_most(name, anchor, c.lhs, c.rhs),
        Err(e) => Check::error(name, anchor, e),
    }
}

fn planar_pi1(seed: u64) -> Vec<Job> {
    let mut jobs = Vec::new();
    for i in 0..50u64 {
        jobs.push(job(move || {
            let mut r = rng(seed, 6000 + i);
            let n = r.gen_range(4..=40);
            let keep = r.gen_range(0.5..=1.0);
            let g = random_planar(&mut r, n, keep);
            let k = r.gen_range(2..=6usize).min(n);
            let x = random_subset(&mut r, n, k);
            let tag = format!("planar[{i:02}]");
            let input = graph_to_json(&g);
            let f = surface_second_bound(k, 0);
            let mut out = vec![Check::equal(format!("{tag} planar"), "the instance is planar, so genus 0 applies", u64::from(is_planar(&g)), 1u64)
                .with_note(format!("n = {n}, X = {x:?}"))];
            out.push(bound_check(format!("{tag} pi1"), "pi1(X) <= max(4, 6|X|-9) at genus 0", check_bound(&g, &x, 1, Bound::Surface { gamma: 0 })));
            out.push(bound_check(
                format!("{tag} second traces"),
                "distinct N^2(v) & X over v outside N[X] are at most 68|X|-132 at genus 0",
                check_bound(&g, &x, 2, Bound::SurfaceSecond { gamma: 0 }),
            ));
            out.push(bound_check(
                format!("{tag} pi2 surface"),
                "pi2(X) <= max(4, 6|X|-9)(68|X|-132) at genus 0",
                check_bound(&g, &x, 2, Bound::SurfaceSquare { gamma: 0 }),
            ));
            out.push(bound_check(format!("{tag} pi2 product"), "pi2(X) <= pi1(X) f(|X|)", check_bound(&g, &x, 2, Bound::Square { f_at_x: f })));
            match second_profile_partition(&g, &x) {
                Ok(p) => {
                    out.push(Check::at_most(format!("{tag} partition classes"), "pi2(X) <= s t for the two-level partition", p.pi2 as u64, (p.s * p.t) as u64));
                    out.push(Check::at_most(format!("{tag} partition t"), "each first-level class splits into at most f(|X|) classes", p.t as u128, f));
                }
                Err(e) => out.push(Check::error(format!("{tag} partition"), "two-level partition", e)),
            }
            out.into_iter().map(|c| c.with_input(input.as_bytes())).collect()
        }));
    }
    for i in 0..50u64 {
        jobs.push(job(move || {
            let mut r = rng(seed, 6100 + i);
            let n = r.gen_range(2..=14);
            let p = r.gen_range(0.1..0.7);
            let g = random_graph(&mut r, n, p);
            let k = r.gen_range(1..n);
            let a = random_subset(&mut r, n, k);
            let tag = format!("random[{i:02}]");
            let input = graph_to_json(&g);
            let mut out = vec![match check_bound(&g, &a, 1, Bound::Colouring { c: None }) {
                Ok(c) => Check::at_most(format!("{tag} col5"), "pi1(A) <= min(2^(c-1)(|A|-c+2), 2^|A|) with c = col_5", c.lhs, c.rhs)
                    .with_note(format!("n = {n}, |A| = {k}, col_5 = {}", c.computed.unwrap_or(0))),
                Err(e) => Check::error(format!("{tag} col5"), "colouring bound", e),
            }];
            for rad in 1..=3 {
                out.push(bound_check(format!("{tag} trivial r={rad}"), "pi_r(A) <= (r+1)^|A|", check_bound(&g, &a, rad, Bound::Trivial)));
            }
            out.into_iter().map(|c| c.with_input(input.as_bytes())).collect()
        }));
    }
    jobs
}

/// Replays the canonical sequence of `t(H)` and checks every step.
fn tof_checks(hname: &str, h: &Graph, t: usize) -> Vec<Check> {
    let tag = format!("t({hname})[t={t}]");
    let tof = match gen_t_of(h, Some(t)) {
        Ok(x) => x,
        Err(e) => return vec![Check::error(tag, "construction", e)],
    };
    let blow = blowup2(h);
    let dmax = 2 * max_degree(h);
    let mut worst = 0;
    let mut bad_maps = 0u64;
    let snaps = match tof.sequence.snapshots() {
        Ok(s) => s,
        Err(e) => return vec![Check::error(tag, "replay", e)],
    };
    for (step, tri) in snaps.iter().enumerate() {
        worst = worst.max(tri.max_red_degree());
        let map: std::collections::HashMap<usize, usize> = tof.blowup_maps[step].iter().copied().collect();
        let mut images: Vec<usize> = map.values().copied().collect();
        images.sort_unstable();
        images.dedup();
        let injective = images.len() == map.len();
        let edges_ok = tri.red_edges().all(|(u, v)| match (map.get(&u), map.get(&v)) {
            (Some(&a), Some(&b)) => blow.has_edge(a, b),
            _ => false,
        });
        bad_maps += u64::from(!(injective && edges_ok));
    }
    let last = snaps.last().expect("the base is always a snapshot");
    let mut want: Vec<(usize, usize)> = h
        .edges()
        .map(|(u, v)| {
            let (a, b) = (tof.clique_part[u], tof.clique_part[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    want.sort_unstable();
    let mut got: Vec<(usize, usize)> = last.red_edges().map(|(u, v)| (u.min(v), u.max(v))).collect();
    got.sort_unstable();
    let ends = last.n() == h.n() && last.black_edges().next().is_none() && got == want;
    let input = graph_to_json(&tof.graph);
    vec![
        Check::equal(format!("{tag} ends at red(H)"), "the canonical sequence of t(H) ends at red(H)", u64::from(ends), 1u64),
        Check::at_most(format!("{tag} red degree"), "red degree stays at most 2 max degree of H", worst as u64, dmax as u64),
        Check::equal(format!("{tag} blowup maps"), "every red graph maps edge-preservingly into the 2-blowup of H", bad_maps, 0u64),
    ]
    .into_iter()
    .map(|c| c.with_input(input.as_bytes()))
    .collect()
}

fn tof_sequence() -> Vec<Job> {
    let mut jobs = Vec::new();
    for t in 3..=4 {
        jobs.push(job(move || tof_checks("K2", &Graph::complete(2), t)));
        jobs.push(job(move || tof_checks("P3", &Graph::path(3), t)));
        jobs.push(job(move || tof_checks("C4", &Graph::cycle(4), t)));
    }
    jobs
}

fn leaf_merge_qtree() -> Vec<Job> {
    (3..=6)
        .map(|n| {
            job(move || {
                let tag = format!("Q[{n}]");
                let g = gen_q_tree(n).expect("n >= 1");
                let f = ParamKind::MaxDegreePlusPathwidth;
                let res = match reduced_f_upper_greedy(&Trigraph::from_graph(&g), &f, &[Strategy::LeafMerge]) {
                    Ok(r) => r,
                    Err(e) => return vec![Check::error(tag, "leaf merge", e)],
                };
                let mut deg = 0;
                let mut pw = 0;
                let mut tree = true;
                for tri in res.sequence.snapshots().expect("greedy sequences replay") {
                    let (red, _) = tri.red_graph();
                    deg = deg.max(max_degree(&red));
                    match pathwidth_exact(&red, &Limits::default()) {
                        Ok(p) => pw = pw.max(p.value),
                        Err(e) => return vec![Check::error(format!("{tag} pathwidth"), "pathwidth", e)],
                    }
                    let (under, _) = tri.underlying_graph();
                    tree &= under.is_connected() && under.m() + 1 == under.n();
                }
                let input = graph_to_json(&g);
                vec![
                    Check::at_most(format!("{tag} red degree"), "leaf merging keeps red degree at most 3", deg as u64, 3u64),
                    Check::at_most(format!("{tag} red pathwidth"), "leaf merging keeps red pathwidth at most 2", pw as u64, 2u64),
                    Check::at_most(format!("{tag} reduced maxdeg+pw"), "reduced (max degree + pathwidth) is at most 5", res.value as u64, 5u64),
                    Check::equal(format!("{tag} underlying tree"), "every underlying graph is a tree", u64::from(tree), 1u64),
                ]
                .into_iter()
                .map(|c| c.with_input(input.as_bytes()))
                .collect()
            })
        })
        .collect()
}

fn cross_evaluators(seed: u64) -> Vec<Job> {
    // ten chunks of fifty graphs, one stream each
    (0..10u64)
        .map(|chunk| {
            job(move || {
                let mut r = rng(seed, 9000 + chunk);
                let l = Limits::default();
                let (mut order, mut degree, mut col1, mut cols) = (0u64, 0u64, 0u64, 0u64);
                let mut errors = Vec::new();
                for _ in 0..50 {
                    let n = r.gen_range(1..=8);
                    let p = r.gen_range(0.0..=1.0);
                    let g = random_graph(&mut r, n, p);
                    let (Ok(bw), Ok(pw), Ok(tw)) = (bandwidth_exact(&g, None, &l), pathwidth_exact(&g, &l), treewidth_exact(&g, &l)) else {
                        errors.push(graph_to_json(&g));
                        continue;
                    };
                    let (bw, pw, tw) = (bw.value, pw.value, tw.value);
                    order += u64::from(!(tw <= pw && pw <= bw));
                    degree += u64::from(max_degree(&g) > 2 * bw);
                    match col_s_exact(&g, 1, &l) {
                        Ok(c) => col1 += u64::from(c.value != degeneracy(&g).value + 1),
                        Err(_) => errors.push(graph_to_json(&g)),
                    }
                    for s in 1..=4 {
                        match col_s_exact(&g, s, &l) {
                            Ok(c) => cols += u64::from(c.value > tw + 1),
                            Err(_) => errors.push(graph_to_json(&g)),
                        }
                    }
                }
                let tag = format!("chunk[{chunk}]");
                vec![
                    Check::equal(format!("{tag} tw <= pw <= bw"), "treewidth <= pathwidth <= bandwidth", order, 0u64),
                    Check::equal(format!("{tag} maxdeg <= 2bw"), "max degree <= 2 bandwidth", degree, 0u64),
                    Check::equal(format!("{tag} col1 = degeneracy + 1"), "col_1 = degeneracy + 1", col1, 0u64),
                    Check::equal(format!("{tag} col_s <= tw + 1"), "col_s <= treewidth + 1 for s = 1..4", cols, 0u64),
                    Check::equal(format!("{tag} evaluator errors"), "every evaluator finishes", errors.len() as u64, 0u64),
                ]
            })
        })
        .collect()
}

pub fn default_seed() -> u64 {
    SEED
}

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use twinreduce::formats::{
    convert, parse_edgelist, CertificateJson, Format, GraphJson, SequenceJson,
};
use twinreduce::random::{rng, SEED};
use twinreduce::report::VerifyReport;
use twinreduce::suites::{run_suite, Suite};
use twinreduce_core::diversity::{check_bound, diversity, Bound};
use twinreduce_core::gadgets::{
    blowup2, gen_binary_tree, gen_grid, gen_ktree, gen_q_tree, gen_s, gen_s_star, gen_stacked_triangulation,
    gen_t_of, gen_tight_ktree_pi1, gen_tight_surface_pi1, GadgetKind,
};
use twinreduce_core::oracle::{reduced_f_exact, reduced_f_upper_greedy, OracleConfig, Strategy};
use twinreduce_core::params::{
    bandwidth_exact, col_s_exact, degeneracy, max_degree, pathwidth_exact, treewidth_exact, Limits, ParamKind,
    ParamResult, Witness,
};
use twinreduce_core::product::{apex_product_sequence, power_sequence, verify_product_sequence, ProductError};
use twinreduce_core::trigraph::red_of;
use twinreduce_core::{Graph, Trigraph};

#[derive(Parser)]
#[command(name = "twinreduce", version, about = "Contraction sequences, reduced parameters and neighbourhood diversity")]
struct Cli {
    /// Raise the size caps of the exact evaluators and the oracle.
    #[arg(long, global = true, env = "TWINREDUCE_MAX_N")]
    max_n: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph.
    Gen(GenArgs),
    /// Evaluate a graph parameter exactly.
    Param {
        input: PathBuf,
        #[arg(long, value_enum)]
        param: EvalParam,
        /// Reach for `col`.
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
    /// Reduced-f of a graph or trigraph: exact search or greedy upper bound.
    Oracle {
        input: PathBuf,
        /// maxdeg, bw, pw, tw, star, degeneracy, maxdeg+pw or maxdeg+tw.
        #[arg(long, default_value = "maxdeg")]
        param: String,
        #[arg(long)]
        greedy: bool,
    },
    /// Reduction sequence from a product certificate.
    Seq {
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        /// Number of parts per row; required unless --power.
        #[arg(long)]
        q: Option<usize>,
        /// Sequence for the r-th power, with q chosen automatically.
        #[arg(long)]
        power: bool,
    },
    /// Distance profiles on an anchor set, optionally against a closed form.
    Diversity {
        input: PathBuf,
        /// Comma-separated anchor vertices.
        #[arg(long, value_delimiter = ',')]
        anchor: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, value_enum)]
        bound: Option<BoundName>,
        #[arg(long, default_value_t = 0)]
        gamma: usize,
        /// Treewidth, col_5 or degeneracy value; computed when omitted where possible.
        #[arg(long)]
        k: Option<usize>,
        /// f(|X|) for the square bound.
        #[arg(long)]
        f: Option<u128>,
    },
    /// Run verification suites; exits nonzero if any check fails.
    Verify {
        /// Suite name or `all`.
        suite: String,
        #[arg(long, default_value_t = SEED)]
        seed: u64,
        /// Print a table instead of JSON.
        #[arg(long)]
        table: bool,
    },
    /// Convert between json and edgelist, or export dot.
    Convert {
        input: PathBuf,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenArgs {
    /// s_star, s_xqr, q_tree, grid, binary_tree, blowup2, red_of, t_of,
    /// tight_surface_pi1, tight_ktree_pi1, stacked_triangulation or ktree.
    kind: String,
    #[arg(long)]
    x: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Host graph for blowup2, red_of, t_of and tight_surface_pi1.
    #[arg(long)]
    host: Option<PathBuf>,
    #[arg(long, default_value_t = SEED)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalParam {
    Bw,
    Pw,
    Tw,
    Col,
    Degeneracy,
    Maxdeg,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundName {
    Surface,
    Treewidth,
    Col,
    Degen,
    SurfaceSecond,
    SurfaceSquare,
    Square,
    Trivial,
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn guess_format(path: &Path, text: &str) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => Format::Json,
        Some("dot") | Some("gv") => Format::Dot,
        Some("txt") | Some("edges") | Some("edgelist") => Format::Edgelist,
        _ if text.trim_start().starts_with('{') => Format::Json,
        _ => Format::Edgelist,
    }
}

fn load(path: &PathBuf) -> Result<GraphJson> {
    let text = read_input(path)?;
    Ok(match guess_format(path, &text) {
        Format::Json => serde_json::from_str(&text)?,
        Format::Edgelist => parse_edgelist(&text)?,
        Format::Dot => bail!("DOT input is not supported"),
    })
}

fn load_graph(path: &PathBuf) -> Result<Graph> {
    Ok(load(path)?.to_graph()?)
}

fn limits(max_n: Option<usize>) -> Limits {
    max_n.map_or_else(Limits::default, |n| Limits::default().with_max_n(n))
}

fn param_json(name: &str, r: &ParamResult) -> Value {
    let witness = match &r.witness {
        Witness::Ordering(o) | Witness::Peeling(o) => json!({ "ordering": o }),
        Witness::Decomposition(d) => json!({ "bags": d.bags, "parent": d.parent }),
        Witness::None => Value::Null,
    };
    json!({ "param": name, "value": r.value, "exact": r.exact, "witness": witness })
}

fn gen(a: &GenArgs) -> Result<Value> {
    let kind = GadgetKind::parse(&a.kind).ok_or_else(|| anyhow!("unknown generator '{}'", a.kind))?;
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| anyhow!("{} needs --{name}", a.kind));
    let host = || -> Result<Graph> { load_graph(a.host.as_ref().ok_or_else(|| anyhow!("{} needs --host", a.kind))?) };
    let mut r = rng(a.seed, 0);
    let pick = |len: usize| rand::Rng::gen_range(&mut r, 0..len);
    let graph = |g: &Graph| serde_json::to_value(GraphJson::from_graph(g)).expect("graphs serialise");
    Ok(match kind {
        GadgetKind::SStar | GadgetKind::SXqr => {
            let (x, q) = (need(a.x, "x")?, need(a.q, "q")?);
            let s = if kind == GadgetKind::SStar { gen_s_star(x, q)? } else { gen_s(x, q, a.r)? };
            json!({
                "graph": graph(&s.graph),
                "layered_ordering": s.layered_ordering(),
                "bandwidth_bound": s.bandwidth_bound(),
                "degree_bound": s.degree_bound(),
            })
        }
        GadgetKind::QTree => json!({ "graph": graph(&gen_q_tree(need(a.n, "n")?)?) }),
        GadgetKind::Grid => {
            let m = need(a.m, "m")?;
            let (g, cert) = gen_grid(m, a.n.unwrap_or(m))?;
            json!({ "graph": graph(&g), "certificate": CertificateJson::from_certificate(&cert) })
        }
        GadgetKind::BinaryTree => json!({ "graph": graph(&gen_binary_tree(need(a.n, "n")?)) }),
        GadgetKind::Blowup2 => json!({ "graph": graph(&blowup2(&host()?)) }),
        GadgetKind::RedOf => json!({ "graph": GraphJson::from_trigraph(&red_of(&host()?)) }),
        GadgetKind::TOf => {
            let t = gen_t_of(&host()?, a.t)?;
            json!({
                "graph": graph(&t.graph),
                "t": t.t,
                "clique_part": t.clique_part,
                "sequence": SequenceJson::from_sequence(&t.sequence),
            })
        }
        GadgetKind::TightSurfacePi1 => {
            let g0 = match (&a.host, a.n) {
                (Some(_), _) => host()?,
                (None, Some(n)) => gen_stacked_triangulation(n, pick)?.0,
                (None, None) => bail!("tight_surface_pi1 needs --host or --n"),
            };
            let b = gen_tight_surface_pi1(&g0)?;
            json!({ "graph": graph(&b.graph), "x": b.x, "y": b.y })
        }
        GadgetKind::TightKtreePi1 => {
            let b = gen_tight_ktree_pi1(need(a.k, "k")?, need(a.n, "n")?)?;
            json!({ "graph": graph(&b.graph), "x": b.x, "y": b.y })
        }
        GadgetKind::StackedTriangulation => {
            let (g, faces) = gen_stacked_triangulation(need(a.n, "n")?, pick)?;
            json!({ "graph": graph(&g), "faces": faces, "seed": a.seed })
        }
        GadgetKind::KTree => {
            let g = gen_ktree(need(a.k, "k")?, need(a.n, "n")?, pick)?;
            json!({ "graph": graph(&g), "seed": a.seed })
        }
    })
}

fn param(input: &PathBuf, p: EvalParam, s: usize, l: &Limits) -> Result<Value> {
    let g = load_graph(input)?;
    Ok(match p {
        EvalParam::Bw => param_json("bw", &bandwidth_exact(&g, None, l)?),
        EvalParam::Pw => param_json("pw", &pathwidth_exact(&g, l)?),
        EvalParam::Tw => param_json("tw", &treewidth_exact(&g, l)?),
        EvalParam::Col => param_json(&format!("col_{s}"), &col_s_exact(&g, s, l)?),
        EvalParam::Degeneracy => param_json("degeneracy", &degeneracy(&g)),
        EvalParam::Maxdeg => json!({ "param": "maxdeg", "value": max_degree(&g), "exact": true }),
    })
}

fn oracle(input: &PathBuf, name: &str, greedy: bool, max_n: Option<usize>) -> Result<Value> {
    let t = load(input)?.to_trigraph()?;
    let kind = ParamKind::parse(name).ok_or_else(|| anyhow!("unknown parameter '{name}'"))?;
    let f = kind.with_limits(limits(max_n));
    let res = if greedy {
        reduced_f_upper_greedy(&t, &f, &[Strategy::MinRedParam, Strategy::LeafMerge])?
    } else {
        let mut cfg = OracleConfig::new(&f);
        if let Some(n) = max_n {
            cfg.max_n = n;
        }
        reduced_f_exact(&t, &cfg)?
    };
    Ok(json!({
        "param": name,
        "value": res.value,
        "exact": res.exact,
        "states_explored": res.states_explored,
        "sequence": SequenceJson::from_sequence(&res.sequence),
    }))
}

fn seq(input: &PathBuf, cert: &PathBuf, q: Option<usize>, power: bool) -> Result<Value> {
    let g = load_graph(input)?;
    let cert: CertificateJson = serde_json::from_str(&read_input(cert)?)?;
    let cert = cert.to_certificate()?;
    let (s, extra) = if power {
        let p = power_sequence(&g, &cert)?;
        (p.sequence, json!({ "attempts": p.attempts, "anchor_size": p.anchor_size }))
    } else {
        let q = q.ok_or_else(|| anyhow!("seq needs --q or --power"))?;
        match apex_product_sequence(&Trigraph::from_graph(&g), &cert, q) {
            Ok(s) => (s, Value::Null),
            Err(ProductError::Pigeonhole(f)) => bail!("{}; retry with --q {}", ProductError::Pigeonhole(f.clone()), f.signatures.len()),
            Err(e) => return Err(e.into()),
        }
    };
    let st = verify_product_sequence(&s)?;
    Ok(json!({
        "q": s.q,
        "final_q": s.final_q(),
        "r": s.r,
        "bandwidth_bound": st.bandwidth_bound,
        "degree_bound": st.degree_bound,
        "max_witness_bandwidth": st.projected_max_witness_bandwidth,
        "max_red_degree": st.projected_max_red_degree,
        "padded_max_witness_bandwidth": st.max_witness_bandwidth,
        "padded_max_red_degree": st.max_red_degree,
        "power": extra,
        "sequence": SequenceJson::from_sequence(&s.projected),
    }))
}

fn diversity_cmd(input: &PathBuf, anchor: &[usize], r: usize, bound: Option<BoundName>, gamma: usize, k: Option<usize>, f: Option<u128>) -> Result<Value> {
    let g = load_graph(input)?;
    let rep = diversity(&g, anchor, r)?;
    let classes: Vec<Value> = rep
        .classes
        .iter()
        .map(|(p, m)| json!({ "profile": p.key(), "members": m }))
        .collect();
    let mut out = json!({ "anchor": rep.anchor, "r": rep.r, "count": rep.count, "classes": classes });
    if let Some(b) = bound {
        let b = match b {
            BoundName::Surface => Bound::Surface { gamma },
            BoundName::Treewidth => Bound::Treewidth { k },
            BoundName::Col => Bound::Colouring { c: k },
            BoundName::Degen => Bound::Degenerate { d: k.ok_or_else(|| anyhow!("degen needs --k"))? },
            BoundName::SurfaceSecond => Bound::SurfaceSecond { gamma },
            BoundName::SurfaceSquare => Bound::SurfaceSquare { gamma },
            BoundName::Square => Bound::Square { f_at_x: f.ok_or_else(|| anyhow!("square needs --f"))? },
            BoundName::Trivial => Bound::Trivial,
        };
        let c = check_bound(&g, anchor, r, b)?;
        out["bound"] = json!({ "name": b.name(), "lhs": c.lhs, "rhs": c.rhs, "holds": c.holds, "computed": c.computed });
    }
    Ok(out)
}

fn verify(suite: &str, seed: u64, table: bool) -> Result<bool> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::parse(suite).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            anyhow!("unknown suite '{suite}' (expected all, {})", names.join(", "))
        })?]
    };
    let reports: Vec<VerifyReport> = suites.into_iter().map(|s| run_suite(s, seed)).collect();
    let ok = reports.iter().all(VerifyReport::holds);
    let mut out = io::stdout().lock();
    if table {
        for r in &reports {
            writeln!(out, "{}", r.table())?;
        }
    } else if reports.len() == 1 {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports[0])?)?;
    } else {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
    }
    Ok(ok)
}

fn run(cli: Cli) -> Result<bool> {
    let l = limits(cli.max_n);
    let value = match &cli.cmd {
        Cmd::Gen(a) => gen(a)?,
        Cmd::Param { input, param: p, s } => param(input, *p, *s, &l)?,
        Cmd::Oracle { input, param, greedy } => oracle(input, param, *greedy, cli.max_n)?,
        Cmd::Seq { input, cert, q, power } => seq(input, cert, *q, *power)?,
        Cmd::Diversity { input, anchor, r, bound, gamma, k, f } => diversity_cmd(input, anchor, *r, *bound, *gamma, *k, *f)?,
        Cmd::Verify { suite, seed, table } => return verify(suite, *seed, *table),
        Cmd::Convert { input, from, to, output } => {
            let text = read_input(input)?;
            let from = match from {
                Some(f) => Format::parse(f).ok_or_else(|| anyhow!("unknown format '{f}'"))?,
                None => guess_format(input, &text),
            };
            let to = Format::parse(to).ok_or_else(|| anyhow!("unknown format '{to}'"))?;
            let s = convert(&text, from, to)?;
            match output {
                Some(p) => fs::write(p, s).with_context(|| format!("writing {}", p.display()))?,
                None => io::stdout().lock().write_all(s.as_bytes())?,
            }
            return Ok(true);
        }
    };
    writeln!(io::stdout().lock(), "{}", serde_json::to_string_pretty(&value)?)?;
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

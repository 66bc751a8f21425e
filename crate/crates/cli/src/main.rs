mod cache;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperchroma::chromatic::{
    chromatic_dc, ChromaticCache, DEFAULT_ASSIGNMENT_BUDGET, DEFAULT_SUBSET_BUDGET,
};
use hyperchroma::covers::{
    count_colorings_brute, cwd1_hypothesis, cwd1_value, cwd_bound_with_offset, dp_exact,
    dp_upper_search, Cover, SearchBudget, UpperStrategy, DEFAULT_COVER_BUDGET,
};
use hyperchroma::format::{write_hypergraph, Labels};
use hyperchroma::harness::{
    default_corpus, overall_status, run_audit, table1, ApexCover, Status, Verifier, VerifyOptions,
};
use hyperchroma::instance::{Instance, InstanceSpec};
use hyperchroma::poly::{bigint_to_json, rational_to_json};
use hyperchroma::{Error, Hypergraph, Result};
use serde_json::{json, Value};

use crate::cache::CacheFile;
use crate::output::{reports_document, Document, Format, Table};

/// Exact chromatic polynomials and DP color functions of small hypergraphs.
#[derive(Parser, Debug)]
#[command(name = "hyperchroma", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value = "md", global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Persistent chromatic-polynomial cache.
    #[arg(long, env = "HYPERCHROMA_CACHE", global = true)]
    cache: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    /// Cap on k^n for brute-force colorings.
    #[arg(long, default_value_t = DEFAULT_ASSIGNMENT_BUDGET, global = true)]
    assignment_budget: u64,
    /// Cap on the number of covers an exhaustive search examines.
    #[arg(long, default_value_t = DEFAULT_COVER_BUDGET, global = true)]
    cover_budget: u64,
    /// Cap on the edge count for subset enumerations.
    #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET, global = true)]
    subset_budget: usize,
    /// Random covers drawn when a family is too large to enumerate.
    #[arg(long, default_value_t = 10_000, global = true)]
    samples: u64,
    #[arg(long, value_enum, hide = true, global = true)]
    inject_fault: Option<Fault>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Fault {
    /// Raise the exponent of k in the CWD bound by one.
    CwdExponent,
}

#[derive(Args, Debug, Clone)]
struct InstanceArgs {
    /// Generator descriptor, e.g. cycle:3:4 or hypertree:3:2:7.
    #[arg(long = "gen", conflicts_with = "file")]
    generator: Option<String>,
    /// Hypergraph file in the text format.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Accept edge vertices missing from the `vertices:` line.
    #[arg(long)]
    infer_vertices: bool,
}

#[derive(Args, Debug, Clone)]
struct KArgs {
    /// A single k.
    #[arg(long, conflicts_with = "k_range")]
    k: Option<i64>,
    /// Several k: `A..B` (inclusive) or `A,B,C`.
    #[arg(long)]
    k_range: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chromatic polynomial coefficients and evaluations.
    Chromatic {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        ks: KArgs,
    },
    /// Girth and the shortest cycle through each edge.
    Girth {
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Number of shortest cycles.
    Census {
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// F-colorings of a cover file.
    DpCount {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        cover: PathBuf,
    },
    /// Exact DP color function value by exhaustive cover search.
    DpExact {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        k: i64,
        /// Search the full normal-form family without gauge fixing.
        #[arg(long)]
        no_prune: bool,
        /// Write the minimizing cover to this file.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// CWD bound, CWD-1 values and witness searches at one k.
    DpBounds {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        k: i64,
        /// Restrict CWD-1 to this edge.
        #[arg(long)]
        edge: Option<usize>,
    },
    /// Check one claim, or run the audit corpus.
    Verify {
        claim: ClaimArg,
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        ks: KArgs,
        /// Edge index for edge-based claims.
        #[arg(long, default_value_t = 0)]
        edge: usize,
        /// Clique size for joins.
        #[arg(long, default_value_t = 1)]
        p: usize,
        /// Cover file for level and lemma22.
        #[arg(long)]
        cover: Option<PathBuf>,
    },
    /// Write a generated instance in the text format.
    Gen {
        #[command(flatten)]
        instance: InstanceArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClaimArg {
    Gir1,
    Evencyc,
    Prop1p1,
    Lemma9,
    Join,
    Level,
    Lemma21,
    Lemma22,
    Jointheorems,
    Audit,
}

/// Exit codes besides the verification statuses.
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 66;

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => EXIT_IO,
        Error::Syntax { .. }
        | Error::Semantic { .. }
        | Error::InvalidCover(_)
        | Error::Json(_)
        | Error::NonUniform
        | Error::HypothesisUnmet(_) => EXIT_DATA,
        Error::BudgetExceeded { .. } => Status::Inconclusive.exit_code() as u8,
        _ => EXIT_USAGE,
    }
}

struct Context {
    global: Global,
    cache: ChromaticCache,
}

impl Context {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            covers: self.global.cover_budget,
            assignments: self.global.assignment_budget,
        }
    }

    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            budget: self.budget(),
            brute_budget: self.global.assignment_budget,
            subset_budget: self.global.subset_budget,
            seed: self.global.seed,
            samples: self.global.samples,
            cwd_exponent_offset: self.fault_offset(),
        }
    }

    fn fault_offset(&self) -> i64 {
        match self.global.inject_fault {
            Some(Fault::CwdExponent) => 1,
            None => 0,
        }
    }
}

fn load_instance(args: &InstanceArgs) -> Result<Instance> {
    let spec: InstanceSpec = match (&args.generator, &args.file) {
        (Some(g), None) => g.parse()?,
        (None, Some(f)) => InstanceSpec::File(f.clone()),
        (None, None) => {
            return Err(Error::InvalidParameters(
                "give an instance with --gen or --file".into(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap rejects both"),
    };
    spec.generate_with(args.infer_vertices)
}

fn has_instance(args: &InstanceArgs) -> bool {
    args.generator.is_some() || args.file.is_some()
}

fn k_list(ks: &KArgs) -> Result<Option<Vec<i64>>> {
    let bad = |s: &str| Error::InvalidParameters(format!("bad k range {s:?}"));
    if let Some(k) = ks.k {
        return Ok(Some(vec![k]));
    }
    let Some(text) = &ks.k_range else {
        return Ok(None);
    };
    let list: Vec<i64> = if let Some((a, b)) = text.split_once("..") {
        let a: i64 = a.trim().parse().map_err(|_| bad(text))?;
        let b: i64 = b.trim().parse().map_err(|_| bad(text))?;
        (a..=b).collect()
    } else {
        text.split(',')
            .map(|s| s.trim().parse().map_err(|_| bad(text)))
            .collect::<Result<_>>()?
    };
    if list.is_empty() {
        return Err(bad(text));
    }
    Ok(Some(list))
}

fn positive_k(k: i64) -> Result<u32> {
    u32::try_from(k)
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| Error::InvalidParameters(format!("k = {k} must be positive")))
}

fn read_cover(path: &PathBuf, h: &Hypergraph, labels: &Labels) -> Result<Cover> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Cover::from_json(h, &text, |s| labels.id_of(s))
}

fn write_file(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// A command result plus its exit status.
struct Outcome {
    doc: Document,
    status: Status,
    files: Vec<(PathBuf, String)>,
}

impl Outcome {
    fn computed(doc: Document) -> Self {
        Outcome {
            doc,
            status: Status::Verified,
            files: Vec::new(),
        }
    }
}

fn cmd_chromatic(ctx: &mut Context, inst: &Instance, ks: Option<Vec<i64>>) -> Result<Outcome> {
    let h = &inst.hypergraph;
    let p = chromatic_dc(h, &mut ctx.cache)?;
    let ks = ks.unwrap_or_else(|| (0..=5).collect());
    let mut table = Table::new(&["k", "P(H,k)"]);
    let mut evals = Vec::new();
    for &k in &ks {
        let v = p.eval_i64(k);
        table.row(vec![k.to_string(), v.to_string()]);
        evals.push(json!({ "k": k, "value": bigint_to_json(&v) }));
    }
    let json = json!({
        "instance": inst.descriptor(),
        "coefficients": p,
        "polynomial": p.to_string(),
        "evaluations": evals,
    });
    let mut doc = Document::simple(&format!("P(H, k) = {p}"), json, table);
    doc.markdown = format!("Instance `{}`\n\n{}", inst.descriptor(), doc.markdown);
    Ok(Outcome::computed(doc))
}

fn cmd_girth(inst: &Instance) -> Result<Outcome> {
    let h = &inst.hypergraph;
    let mut table = Table::new(&["edge", "vertices", "girth of edge", "cycle edges"]);
    let mut per_edge = Vec::new();
    for (i, e) in h.edges().iter().enumerate() {
        let names: Vec<String> = e.iter().map(|&v| inst.labels.name_of(v)).collect();
        let (g, w) = h.girth_of_edge(i)?;
        let cycle = w
            .as_ref()
            .map(|w| format!("{:?}", w.edges))
            .unwrap_or_default();
        table.row(vec![i.to_string(), names.join(" "), g.to_string(), cycle]);
        per_edge.push(json!({ "edge": i, "girth": g, "cycle": w }));
    }
    let girth = h.girth();
    let json = json!({ "instance": inst.descriptor(), "girth": girth, "edges": per_edge });
    Ok(Outcome::computed(Document::simple(
        &format!("girth {girth}"),
        json,
        table,
    )))
}

fn cmd_census(inst: &Instance) -> Result<Outcome> {
    let c = inst.hypergraph.shortest_cycle_census()?;
    let mut table = Table::new(&["cycle", "edges"]);
    for (i, s) in c.edge_sets.iter().enumerate() {
        table.row(vec![i.to_string(), format!("{s:?}")]);
    }
    let json = json!({ "instance": inst.descriptor(), "census": c });
    let title = format!("{} shortest cycles of length {}", c.count, c.length);
    Ok(Outcome::computed(Document::simple(&title, json, table)))
}

fn cmd_dp_count(ctx: &Context, inst: &Instance, path: &PathBuf) -> Result<Outcome> {
    let h = &inst.hypergraph;
    let cover = read_cover(path, h, &inst.labels)?;
    let count = count_colorings_brute(h, &cover, ctx.global.assignment_budget)?;
    let mut table = Table::new(&["k", "maps", "perfect", "count"]);
    table.row(vec![
        cover.k.to_string(),
        cover.map_count().to_string(),
        cover.is_perfect().to_string(),
        count.to_string(),
    ]);
    let json = json!({
        "instance": inst.descriptor(),
        "k": cover.k,
        "maps": cover.map_count(),
        "perfect": cover.is_perfect(),
        "count": count,
    });
    Ok(Outcome::computed(Document::simple(
        "F-colorings",
        json,
        table,
    )))
}

fn cmd_dp_exact(
    ctx: &Context,
    inst: &Instance,
    k: i64,
    prune: bool,
    emit: Option<&PathBuf>,
) -> Result<Outcome> {
    let h = &inst.hypergraph;
    let r = dp_exact(h, positive_k(k)?, prune, ctx.budget())?;
    let cover = r.witness.expand(h)?;
    let mut table = Table::new(&["k", "P_DP", "covers examined", "free slots", "gauge fixed"]);
    table.row(vec![
        k.to_string(),
        r.value.to_string(),
        r.covers_examined.to_string(),
        r.free_slots.to_string(),
        prune.to_string(),
    ]);
    let json = json!({
        "instance": inst.descriptor(),
        "k": k,
        "value": r.value,
        "coversExamined": r.covers_examined,
        "freeSlots": r.free_slots,
        "pruned": prune,
        "witness": cover.to_json_value(h),
    });
    let mut out = Outcome::computed(Document::simple(
        &format!("P_DP(H, {k}) = {}", r.value),
        json,
        table,
    ));
    if let Some(path) = emit {
        let mut text = cover.to_json(h);
        text.push('\n');
        out.files.push((path.clone(), text));
    }
    Ok(out)
}

fn cmd_dp_bounds(
    ctx: &mut Context,
    inst: &Instance,
    k: i64,
    edge: Option<usize>,
) -> Result<Outcome> {
    let h = &inst.hypergraph;
    let ku = positive_k(k)?;
    let p = chromatic_dc(h, &mut ctx.cache)?.eval_i64(k);
    let mut table = Table::new(&["quantity", "value"]);
    table.row(vec![format!("P(H,{k})"), p.to_string()]);
    let mut json = json!({ "instance": inst.descriptor(), "k": k, "P": bigint_to_json(&p) });
    match cwd_bound_with_offset(h, ctx.fault_offset()) {
        Ok(b) => {
            let v = b.at(k)?;
            table.row(vec!["cwd bound".into(), v.to_string()]);
            json["cwdBound"] = rational_to_json(&v);
        }
        Err(Error::NonUniform) => {
            table.row(vec!["cwd bound".into(), "n/a (not uniform)".into()]);
        }
        Err(e) => return Err(e),
    }
    let edges: Vec<usize> = match edge {
        Some(e) => vec![e],
        None => (0..h.m()).collect(),
    };
    let mut cwd1 = Vec::new();
    for e in edges {
        if k >= 2 && cwd1_hypothesis(h, e)? {
            let v = cwd1_value(h, e, k, &mut ctx.cache)?;
            table.row(vec![format!("cwd1 (edge {e})"), v.value.to_string()]);
            cwd1.push(json!({
                "edge": e,
                "value": rational_to_json(&v.value),
                "branch": v.branch,
                "quotient": rational_to_json(&v.quotient),
            }));
        }
    }
    json["cwd1"] = Value::Array(cwd1);
    let strategies = [
        ("shift search", UpperStrategy::Shifts),
        (
            "random search",
            UpperStrategy::RandomPerms {
                samples: ctx.global.samples,
                seed: ctx.global.seed,
            },
        ),
    ];
    let mut searches = Vec::new();
    for (name, s) in strategies {
        match dp_upper_search(h, ku, s, ctx.budget()) {
            Ok(u) => {
                table.row(vec![name.into(), u.bound.to_string()]);
                searches.push(json!({
                    "strategy": s,
                    "bound": u.bound,
                    "coversExamined": u.covers_examined,
                    "exhaustive": u.exhaustive,
                }));
            }
            Err(Error::BudgetExceeded { .. }) => {
                table.row(vec![name.into(), "budget exceeded".into()]);
            }
            Err(e) => return Err(e),
        }
    }
    json["upperSearch"] = Value::Array(searches);
    Ok(Outcome::computed(Document::simple(
        &format!("bounds at k = {k}"),
        json,
        table,
    )))
}

/// The apex cover for `level`/`lemma22`: the shipped example, a cover file
/// over a tagged instance, or the natural cover of the instance joined
/// with `K_1`.
fn apex_cover(
    inst: Option<&Instance>,
    cover: Option<&PathBuf>,
    ks: &Option<Vec<i64>>,
) -> Result<(String, ApexCover)> {
    match (inst, cover) {
        (None, None) => Ok(("table1".into(), table1()?.1)),
        (None, Some(_)) => Err(Error::InvalidParameters("--cover needs an instance".into())),
        (Some(inst), Some(path)) => {
            let cover = read_cover(path, &inst.hypergraph, &inst.labels)?;
            let key = format!("{} cover={}", inst.descriptor(), path.display());
            Ok((key, ApexCover::from_tagged(inst.hypergraph.clone(), cover)?))
        }
        (Some(inst), None) => {
            let k = match ks.as_deref() {
                Some([k]) => positive_k(*k)?,
                _ => {
                    return Err(Error::InvalidParameters(
                        "give one --k for the natural cover".into(),
                    ))
                }
            };
            let join = inst.hypergraph.join_clique(1)?;
            let cover = Cover::natural(&join, k);
            let key = format!("join:1:{} k={k} natural", inst.descriptor());
            Ok((key, ApexCover::from_tagged(join, cover)?))
        }
    }
}

fn cmd_verify(
    ctx: &mut Context,
    claim: ClaimArg,
    args: &InstanceArgs,
    ks: Option<Vec<i64>>,
    edge: usize,
    p: usize,
    cover: Option<&PathBuf>,
) -> Result<Outcome> {
    let options = ctx.options();
    if claim == ClaimArg::Audit {
        let reports = run_audit(&default_corpus(ctx.global.seed), &options)?;
        let status = overall_status(&reports);
        return Ok(Outcome {
            doc: reports_document(&reports, Some(ctx.global.seed)),
            status,
            files: Vec::new(),
        });
    }
    let inst = if has_instance(args) {
        Some(load_instance(args)?)
    } else {
        None
    };
    let mut v = Verifier {
        options,
        cache: std::mem::take(&mut ctx.cache),
    };
    let need = |inst: &Option<Instance>| -> Result<(String, Hypergraph)> {
        inst.as_ref()
            .map(|i| (i.descriptor(), i.hypergraph.clone()))
            .ok_or_else(|| Error::InvalidParameters("this claim needs --gen or --file".into()))
    };
    let reports = match claim {
        ClaimArg::Gir1 => {
            let (d, h) = need(&inst)?;
            vec![v.gir1(&d, &h)?]
        }
        ClaimArg::Evencyc => {
            let (d, h) = need(&inst)?;
            vec![v.evencyc(&format!("{d} e={edge}"), &h, edge)?]
        }
        ClaimArg::Prop1p1 => {
            let (d, h) = need(&inst)?;
            vec![v.prop1p1(&format!("{d} e={edge}"), &h, edge)?]
        }
        ClaimArg::Lemma9 => {
            let (d, h) = need(&inst)?;
            vec![v.lemma9(&format!("{d} e={edge}"), &h, edge, None)?]
        }
        ClaimArg::Join => {
            let (d, h) = need(&inst)?;
            let ks = ks.unwrap_or_else(|| (p as i64 + 1..=p as i64 + 3).collect());
            vec![v.join_identity(&format!("{d} p={p}"), &h, p, &ks)?]
        }
        ClaimArg::Level => {
            let (key, ac) = apex_cover(inst.as_ref(), cover, &ks)?;
            vec![v.level(&key, &ac)?]
        }
        ClaimArg::Lemma21 => {
            let (d, h) = need(&inst)?;
            let k = match ks.as_deref() {
                None => 2,
                Some([k]) => positive_k(*k)?,
                Some(_) => return Err(Error::InvalidParameters("lemma21 takes one k".into())),
            };
            vec![v.lemma2p1(&format!("{d} k={k}"), &h, k)?]
        }
        ClaimArg::Lemma22 => {
            let (key, ac) = apex_cover(inst.as_ref(), cover, &ks)?;
            vec![v.lemma2p2(&key, &ac)?]
        }
        ClaimArg::Jointheorems => {
            let (d, h) = need(&inst)?;
            let ks =
                ks.unwrap_or_else(|| vec![(h.coloring_number() + h.max_edge_size() + p) as i64]);
            v.join_theorems(&format!("{d} p={p}"), &h, p, &ks)?
        }
        ClaimArg::Audit => unreachable!("handled above"),
    };
    ctx.cache = v.cache;
    let status = overall_status(&reports);
    Ok(Outcome {
        doc: reports_document(&reports, None),
        status,
        files: Vec::new(),
    })
}

fn cmd_gen(inst: &Instance) -> Result<Outcome> {
    let text = write_hypergraph(&inst.hypergraph, Some(&inst.labels));
    let json = json!({
        "instance": inst.descriptor(),
        "vertices": inst.hypergraph.vertices(),
        "edges": inst.hypergraph.edges(),
    });
    let mut table = Table::new(&["edge", "vertices"]);
    for (i, e) in inst.hypergraph.edges().iter().enumerate() {
        let names: Vec<String> = e.iter().map(|&v| inst.labels.name_of(v)).collect();
        table.row(vec![i.to_string(), names.join(" ")]);
    }
    let mut doc = Document::simple(&inst.descriptor(), json, table);
    doc.markdown = text;
    Ok(Outcome::computed(doc))
}

fn run(cli: Cli) -> Result<Status> {
    if let Some(n) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?;
    }
    let mut ctx = Context {
        global: cli.global,
        cache: ChromaticCache::new(),
    };
    let cache_file = match ctx.global.cache.clone() {
        Some(path) => Some(CacheFile::load(path, &mut ctx.cache)?),
        None => None,
    };
    let outcome = match &cli.command {
        Command::Chromatic { instance, ks } => {
            let inst = load_instance(instance)?;
            cmd_chromatic(&mut ctx, &inst, k_list(ks)?)?
        }
        Command::Girth { instance } => cmd_girth(&load_instance(instance)?)?,
        Command::Census { instance } => cmd_census(&load_instance(instance)?)?,
        Command::DpCount { instance, cover } => {
            cmd_dp_count(&ctx, &load_instance(instance)?, cover)?
        }
        Command::DpExact {
            instance,
            k,
            no_prune,
            emit_witness,
        } => cmd_dp_exact(
            &ctx,
            &load_instance(instance)?,
            *k,
            !no_prune,
            emit_witness.as_ref(),
        )?,
        Command::DpBounds { instance, k, edge } => {
            let inst = load_instance(instance)?;
            cmd_dp_bounds(&mut ctx, &inst, *k, *edge)?
        }
        Command::Verify {
            claim,
            instance,
            ks,
            edge,
            p,
            cover,
        } => cmd_verify(
            &mut ctx,
            *claim,
            instance,
            k_list(ks)?,
            *edge,
            *p,
            cover.as_ref(),
        )?,
        Command::Gen { instance } => cmd_gen(&load_instance(instance)?)?,
    };
    let text = outcome.doc.render(ctx.global.format);
    for (path, contents) in &outcome.files {
        write_file(path, contents)?;
    }
    match &ctx.global.out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    if let Some(c) = cache_file {
        c.save(&ctx.cache)?;
    }
    Ok(outcome.status)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(status) => ExitCode::from(status.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

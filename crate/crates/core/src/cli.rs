//! The `setlab` command line.
//!
//! Exit codes: 0 success, 1 condition violated / verdict FAIL / no witness,
//! 2 usage, parse or precondition error, 3 search interrupted with a
//! checkpoint left behind.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::constructions::{
    ahlswede_khachatrian_family, nonintersecting_star_family, shadow_bound_check,
    small_kernel_family, star, threshold_family, transversal_family, twin_2_star,
    two_block_family, PartitionSpec,
};
use crate::duality::round_trip;
use crate::error::{Error, Result};
use crate::family::{shadow, shift_family, stabilize, SetFamily, ShiftPair};
use crate::predicates::{find_violating_cluster, is_ij_unstable, ConditionParams};
use crate::search::{
    build_report, parse_range, plan_instances, run_search, verify_theorem, InstanceOutcome,
    SearchOptions, SearchOutcome, SearchReport, SearchRequest, Status, Theorem, VerifyRequest,
    VertexPool, DEFAULT_VERTEX_CAP,
};
use crate::set::ElementSet;
use crate::text::{member_line, parse_family, write_family};
use crate::canon::DEFAULT_CANON_LIMIT;

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERRUPTED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "setlab", version, about = "Set families under (d,s,t)-conditional intersection")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for searches (default: SETLAB_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest candidate pool a search accepts.
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP, global = true)]
    vertex_cap: usize,
    /// Largest ground set canonicalized when deduplicating optima.
    #[arg(long, default_value_t = DEFAULT_CANON_LIMIT, global = true)]
    canon_limit: usize,
    /// Print node counts and timing to stderr.
    #[arg(long, global = true)]
    stats: bool,
    /// Resume from and save search progress to this file.
    #[arg(long, global = true)]
    checkpoint: Option<PathBuf>,
    /// Solve at most this many pending subproblems, then stop (exit 3).
    #[arg(long, global = true)]
    stop_after: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a family against a (d,s,t) condition, optionally a shift pair.
    Check {
        /// Family file, `-` for stdin.
        file: String,
        #[command(flatten)]
        cond: Cond,
        /// Also test (i,j)-instability, as `i,j`.
        #[arg(long)]
        pair: Option<String>,
    },
    /// Print a named family.
    Construct(ConstructArgs),
    /// Maximum families over a candidate pool.
    Search(SearchArgs),
    /// Check a named extremal statement over parameter ranges.
    Verify(VerifyArgs),
    /// Map an unstable subfamily to its partner and back.
    Duality {
        file: String,
        #[arg(long)]
        pair: String,
        #[command(flatten)]
        cond: Cond,
    },
    /// Shift a family until it is stable.
    Stabilize { file: String },
    /// The ell-shadow, with the shadow bound when --t is given.
    Shadow {
        file: String,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        t: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct Cond {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    s: usize,
    #[arg(long, default_value_t = 1)]
    t: usize,
}

impl Cond {
    fn params(&self) -> Result<ConditionParams> {
        ConditionParams::new(self.d, self.s, self.t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Constructor {
    Star,
    #[value(alias = "hk")]
    Transversal,
    #[value(alias = "gr")]
    Threshold,
    #[value(alias = "fj")]
    Ak,
    #[value(alias = "fprime")]
    SmallKernel,
    #[value(alias = "twin2star")]
    TwinStar,
    #[value(alias = "conj41")]
    NonintersectingStar,
    #[value(alias = "g4")]
    TwoBlock,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    name: Constructor,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    center: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long)]
    x: Option<usize>,
    #[arg(long)]
    y: Option<usize>,
    /// `z:c,...` pairs for twin-star.
    #[arg(long)]
    assign: Option<String>,
    /// Parts for threshold, `1,2,3/4,5`.
    #[arg(long)]
    parts: Option<String>,
    /// One threshold per part, `2,0`.
    #[arg(long)]
    thresholds: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    b1: Option<String>,
    #[arg(long)]
    b2: Option<String>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    /// Pool of all k-subsets.
    #[arg(long, group = "pool")]
    k: Option<usize>,
    /// Pool of all subsets with at most u elements.
    #[arg(long, group = "pool")]
    u: Option<usize>,
    /// Pool of all subsets.
    #[arg(long, group = "pool")]
    power_set: bool,
    #[command(flatten)]
    cond: Cond,
    /// Only stable families.
    #[arg(long)]
    stable: bool,
    /// Only families with two disjoint members.
    #[arg(long)]
    nonintersecting: bool,
    /// Members have at most this many elements.
    #[arg(long)]
    max_size: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// mubayi, stable-mubayi, frankl, twin-star, nonintersecting, power-set,
    /// capped or capped-intermediate.
    theorem: String,
    /// Values as `6`, `5..7` or `5,7`.
    #[arg(long)]
    n: String,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    u: Option<String>,
}

/// Runs the command line and maps the outcome to an exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match execute(&cli) {
        Ok((out, code)) => match emit(&cli.global, &out) {
            Ok(()) => ExitCode::from(code),
            Err(e) => {
                eprintln!("setlab: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        },
        Err(e) => {
            eprintln!("setlab: {e}");
            ExitCode::from(match e {
                Error::Invariant(_) => EXIT_FAIL,
                _ => EXIT_USAGE,
            })
        }
    }
}

fn emit(global: &Global, out: &str) -> Result<()> {
    match &global.output {
        Some(path) => std::fs::write(path, out)?,
        None => print!("{out}"),
    }
    Ok(())
}

fn read_family(file: &str) -> Result<SetFamily> {
    let text = if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(file)
            .map_err(|e| Error::Argument(format!("cannot read `{file}`: {e}")))?
    };
    parse_family(&text)
}

fn parse_list(what: &str, text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Argument(format!("bad {what} `{text}`")))
        })
        .collect()
}

fn parse_pair(text: &str) -> Result<ShiftPair> {
    match parse_list("pair", text)?.as_slice() {
        [i, j] => ShiftPair::new(*i, *j),
        _ => Err(Error::Argument(format!("a pair is `i,j`, got `{text}`"))),
    }
}

fn family_text(sets: &[ElementSet]) -> String {
    if sets.is_empty() {
        return "(none)".into();
    }
    sets.iter().map(|s| format!("{{{}}}", member_line(s))).collect::<Vec<_>>().join(" ")
}

fn json_line(v: serde_json::Value) -> String {
    let mut s = v.to_string();
    s.push('\n');
    s
}

fn options(g: &Global) -> SearchOptions {
    SearchOptions {
        threads: g.threads,
        vertex_cap: g.vertex_cap,
        canon_limit: g.canon_limit,
        checkpoint: g.checkpoint.clone(),
        stop_after: g.stop_after,
    }
}

fn execute(cli: &Cli) -> Result<(String, u8)> {
    let g = &cli.global;
    match &cli.command {
        Command::Check { file, cond, pair } => cmd_check(g, file, cond, pair.as_deref()),
        Command::Construct(args) => Ok((write_family(&construct(args)?), EXIT_OK)),
        Command::Search(args) => cmd_search(g, args),
        Command::Verify(args) => cmd_verify(g, args),
        Command::Duality { file, pair, cond } => cmd_duality(g, file, pair, cond),
        Command::Stabilize { file } => {
            let (stable, shifts) = stabilize(&read_family(file)?);
            Ok((
                match g.format {
                    Format::Json => json_line(json!({
                        "family": stable,
                        "shifts": shifts.iter().map(|p| [p.i, p.j]).collect::<Vec<_>>(),
                    })),
                    Format::Text => {
                        let seq: Vec<String> = shifts.iter().map(|p| p.to_string()).collect();
                        let seq = if seq.is_empty() { "none".to_string() } else { seq.join(" ") };
                        format!("# shifts: {seq}\n{}", write_family(&stable))
                    }
                },
                EXIT_OK,
            ))
        }
        Command::Shadow { file, ell, t } => {
            let family = read_family(file)?;
            let sh = shadow(&family, *ell)?;
            let check = t.map(|t| shadow_bound_check(&family, t, *ell)).transpose()?;
            Ok((
                match g.format {
                    Format::Json => json_line(json!({ "shadow": sh, "bound": check })),
                    Format::Text => {
                        let mut out = String::new();
                        if let Some(c) = &check {
                            let _ = writeln!(
                                out,
                                "# |shadow| = {} vs bound {}/{}: {}{}",
                                c.lhs,
                                c.rhs_num,
                                c.rhs_den,
                                if c.holds { "holds" } else { "VIOLATED" },
                                if c.equality { ", equality" } else { "" }
                            );
                        }
                        out.push_str(&write_family(&sh));
                        out
                    }
                },
                EXIT_OK,
            ))
        }
    }
}

fn cmd_check(g: &Global, file: &str, cond: &Cond, pair: Option<&str>) -> Result<(String, u8)> {
    let family = read_family(file)?;
    let params = cond.params()?;
    let pair = pair.map(parse_pair).transpose()?;
    if let Some(p) = pair {
        p.check_ground(family.ground())?;
    }
    let cluster = find_violating_cluster(&family, params);
    let holds = cluster.is_none();
    let unstable = match (pair, holds) {
        (Some(p), true) => is_ij_unstable(&family, p, params)?,
        _ => None,
    };
    let image = pair.map(|p| shift_family(&family, p)).transpose()?;
    let image_cluster = image.as_ref().and_then(|f| find_violating_cluster(f, params));
    let (d, s, t) = (params.d, params.s, params.t);
    let code = if holds { EXIT_OK } else { EXIT_FAIL };
    let out = match g.format {
        Format::Json => json_line(json!({
            "params": params,
            "holds": holds,
            "cluster": cluster,
            "pair": pair.map(|p| [p.i, p.j]),
            "unstable": unstable,
            "image": image,
            "image_cluster": image_cluster,
        })),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "({d},{s},{t})-conditionally intersecting: {}",
                if holds { "yes" } else { "no" }
            );
            if let Some(c) = &cluster {
                let _ = writeln!(
                    out,
                    "violating sets: {} (union {}, intersection {})",
                    family_text(&c.sets),
                    c.union_size,
                    c.intersection_size
                );
            }
            if let (Some(p), Some(img)) = (pair, &image) {
                if holds {
                    match &unstable {
                        Some(w) => {
                            let _ = writeln!(out, "{p}-unstable: yes, witness {}", family_text(&w.subfamily));
                        }
                        None => {
                            let _ = writeln!(out, "{p}-unstable: no");
                        }
                    }
                } else {
                    let _ = writeln!(out, "{p}-unstable: not applicable, condition fails");
                }
                let _ = writeln!(out, "image under {p}: {}", family_text(img.members()));
                match &image_cluster {
                    Some(c) => {
                        let _ = writeln!(
                            out,
                            "image violates the condition: {} (union {}, intersection {})",
                            family_text(&c.sets),
                            c.union_size,
                            c.intersection_size
                        );
                    }
                    None => {
                        let _ = writeln!(out, "image satisfies the condition");
                    }
                }
            }
            out
        }
    };
    Ok((out, code))
}

fn set_arg(n: usize, name: &str, v: &Option<String>) -> Result<ElementSet> {
    let text = v.as_deref().ok_or_else(|| Error::Argument(format!("missing --{name}")))?;
    ElementSet::new(n, parse_list(name, text)?)
}

fn construct(a: &ConstructArgs) -> Result<SetFamily> {
    use Constructor as C;
    let provided = [
        ("k", a.k.is_some()),
        ("center", a.center.is_some()),
        ("t", a.t.is_some()),
        ("j", a.j.is_some()),
        ("x", a.x.is_some()),
        ("y", a.y.is_some()),
        ("assign", a.assign.is_some()),
        ("parts", a.parts.is_some()),
        ("thresholds", a.thresholds.is_some()),
        ("b", a.b.is_some()),
        ("b1", a.b1.is_some()),
        ("b2", a.b2.is_some()),
    ];
    let takes: &[&str] = match a.name {
        C::Star => &["k", "center"],
        C::Transversal => &["k"],
        C::Threshold => &["k", "parts", "thresholds"],
        C::Ak => &["k", "t", "j"],
        C::SmallKernel => &["k", "t"],
        C::TwinStar => &["x", "y", "assign"],
        C::NonintersectingStar => &["k", "x", "b"],
        C::TwoBlock => &["k", "b1", "b2", "x", "y"],
    };
    let name = a.name.to_possible_value().expect("named").get_name().to_string();
    if let Some((flag, _)) = provided.iter().find(|(f, on)| *on && !takes.contains(f)) {
        return Err(Error::Argument(format!("{name} takes no --{flag}")));
    }
    let need = |flag: &str, v: Option<usize>| {
        v.ok_or_else(|| Error::Argument(format!("{name} needs --{flag}")))
    };
    let n = a.n;
    match a.name {
        C::Star => star(n, need("k", a.k)?, a.center.unwrap_or(1)),
        C::Transversal => transversal_family(n, need("k", a.k)?),
        C::Threshold => {
            let parts_text =
                a.parts.as_deref().ok_or_else(|| Error::Argument(format!("{name} needs --parts")))?;
            let parts = parts_text
                .split('/')
                .map(|p| ElementSet::new(n, parse_list("parts", p)?))
                .collect::<Result<Vec<_>>>()?;
            let th = a
                .thresholds
                .as_deref()
                .ok_or_else(|| Error::Argument(format!("{name} needs --thresholds")))?;
            let spec = PartitionSpec::new(parts, parse_list("thresholds", th)?)?;
            threshold_family(n, need("k", a.k)?, &spec)
        }
        C::Ak => ahlswede_khachatrian_family(n, need("k", a.k)?, need("t", a.t)?, need("j", a.j)?),
        C::SmallKernel => small_kernel_family(n, need("k", a.k)?, need("t", a.t)?),
        C::TwinStar => {
            let text = a
                .assign
                .as_deref()
                .ok_or_else(|| Error::Argument(format!("{name} needs --assign")))?;
            let assignment = text
                .split(',')
                .map(|item| {
                    let (z, c) = item
                        .split_once(':')
                        .ok_or_else(|| Error::Argument(format!("bad assignment `{item}`")))?;
                    let num = |v: &str| {
                        v.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Argument(format!("bad assignment `{item}`")))
                    };
                    Ok((num(z)?, num(c)?))
                })
                .collect::<Result<Vec<_>>>()?;
            twin_2_star(n, need("x", a.x)?, need("y", a.y)?, &assignment)
        }
        C::NonintersectingStar => {
            nonintersecting_star_family(n, need("k", a.k)?, need("x", a.x)?, set_arg(n, "b", &a.b)?)
        }
        C::TwoBlock => two_block_family(
            n,
            need("k", a.k)?,
            set_arg(n, "b1", &a.b1)?,
            set_arg(n, "b2", &a.b2)?,
            need("x", a.x)?,
            need("y", a.y)?,
        ),
    }
}

fn render_reports(g: &Global, reports: &[SearchReport]) -> String {
    let mut out = String::new();
    for (idx, r) in reports.iter().enumerate() {
        match g.format {
            Format::Json => {
                out.push_str(&r.to_json());
                out.push('\n');
            }
            Format::Text => {
                if idx > 0 {
                    out.push('\n');
                }
                out.push_str(&r.to_text());
            }
        }
        if g.stats {
            eprintln!("{} nodes, {} ms", r.nodes, r.wall_ms);
        }
    }
    out
}

fn interrupted(completed: usize, total: usize) -> (String, u8) {
    eprintln!(
        "setlab: stopped after {completed} of {total} subproblems; rerun with the same --checkpoint to resume"
    );
    (String::new(), EXIT_INTERRUPTED)
}

fn cmd_search(g: &Global, a: &SearchArgs) -> Result<(String, u8)> {
    let pool = match (a.k, a.u, a.power_set) {
        (Some(k), None, false) => VertexPool::Uniform { k },
        (None, Some(u), false) => VertexPool::UpTo { u },
        (None, None, true) => VertexPool::PowerSet,
        _ => return Err(Error::Argument("choose exactly one of --k, --u, --power-set".into())),
    };
    let mut request = SearchRequest::new(a.n, pool, a.cond.params()?);
    request.constraints.require_stable = a.stable;
    request.constraints.require_nonintersecting = a.nonintersecting;
    request.constraints.max_member_size = a.max_size;
    let opts = options(g);
    match run_search(&request, &opts)? {
        SearchOutcome::Complete(result) => {
            let report = build_report(&request, None, &result, opts.canon_limit)?;
            Ok((render_reports(g, &[report]), EXIT_OK))
        }
        SearchOutcome::Interrupted { completed, total } => Ok(interrupted(completed, total)),
    }
}

fn cmd_verify(g: &Global, a: &VerifyArgs) -> Result<(String, u8)> {
    let theorem: Theorem = a.theorem.parse()?;
    let range = |v: &Option<String>| v.as_deref().map(parse_range).transpose().map(Option::unwrap_or_default);
    let req = VerifyRequest {
        theorem,
        n: parse_range(&a.n)?,
        k: range(&a.k)?,
        d: range(&a.d)?,
        s: range(&a.s)?,
        u: range(&a.u)?,
    };
    let opts = options(g);
    let reports = if opts.checkpoint.is_some() || opts.stop_after.is_some() {
        let instances = plan_instances(&req)?;
        let [inst] = instances.as_slice() else {
            return Err(Error::Argument(
                "--checkpoint and --stop-after need a single instance".into(),
            ));
        };
        match inst.run(&opts)? {
            InstanceOutcome::Report(r) => vec![*r],
            InstanceOutcome::Interrupted { completed, total } => {
                return Ok(interrupted(completed, total))
            }
        }
    } else {
        verify_theorem(&req, &opts)?
    };
    let failed = reports.iter().any(|r| r.verdict.status == Status::Fail);
    Ok((render_reports(g, &reports), if failed { EXIT_FAIL } else { EXIT_OK }))
}

fn cmd_duality(g: &Global, file: &str, pair: &str, cond: &Cond) -> Result<(String, u8)> {
    let family = read_family(file)?;
    let params = cond.params()?;
    let pair = parse_pair(pair)?;
    pair.check_ground(family.ground())?;
    let fail = |msg: String| {
        eprintln!("setlab: {msg}");
        Ok((String::new(), EXIT_FAIL))
    };
    let witness = match is_ij_unstable(&family, pair, params) {
        Ok(Some(w)) => w,
        Ok(None) => return fail(format!("no {pair}-unstable subfamily: the shifted family still satisfies the condition")),
        Err(Error::Argument(msg)) => return fail(format!("no {pair}-unstable subfamily: {msg}")),
        Err(e) => return Err(e),
    };
    let rt = match round_trip(&witness.subfamily, &family, pair, params) {
        Ok(rt) => rt,
        Err(Error::Capability(msg)) => return fail(msg),
        Err(e) => return Err(e),
    };
    let ok = rt.all_hold();
    let code = if ok { EXIT_OK } else { EXIT_FAIL };
    let out = match g.format {
        Format::Json => json_line(json!({
            "forward": rt.forward,
            "inverse": rt.inverse,
            "identities": rt.identities.iter().map(|(k, v)| json!({"identity": k, "holds": v})).collect::<Vec<_>>(),
            "round_trip": ok,
        })),
        Format::Text => {
            let f = &rt.forward;
            let rev = pair.reversed();
            let mut out = String::new();
            let _ = writeln!(out, "pair {pair}, (d,s,t) = ({},{},{})", params.d, params.s, params.t);
            let _ = writeln!(out, "A          {}", family_text(&f.input));
            let _ = writeln!(out, "moved      {}", family_text(&f.partition.moved));
            let _ = writeln!(out, "anchored   {}", family_text(&f.partition.anchored));
            let _ = writeln!(out, "untouched  {}", family_text(&f.partition.untouched));
            let _ = writeln!(out, "G          {}", family_text(&f.g));
            let _ = writeln!(out, "G'         {}", family_text(&f.g_prime));
            let _ = writeln!(out, "B          {}  ({rev}-unstable)", family_text(&f.output));
            let i = &rt.inverse;
            let _ = writeln!(out, "H          {}", family_text(&i.g));
            let _ = writeln!(out, "H'         {}", family_text(&i.g_prime));
            let _ = writeln!(out, "inverse    {}", family_text(&i.output));
            for (name, holds) in &rt.identities {
                let _ = writeln!(out, "  {name}: {}", if *holds { "ok" } else { "FAILED" });
            }
            let _ = writeln!(out, "round trip: {}", if ok { "OK" } else { "FAILED" });
            out
        }
    };
    Ok((out, code))
}

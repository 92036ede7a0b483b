//! Command-line front end: argument parsing, command dispatch and output
//! rendering. [`run`] is the whole program minus process plumbing, so it
//! can be driven directly from tests.

mod verify;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use schur_clusters::cluster::{ClusterEngine, ClusterVariable, EngineOptions, Precluster};
use schur_clusters::einv::EInvariant;
use schur_clusters::error::{Error, ErrorKind, Result};
use schur_clusters::io::{self, Format};
use schur_clusters::monotone::count_monotone_maps;
use schur_clusters::quiver::{DimVec, Quiver};
use schur_clusters::rep::DEFAULT_PROBE_BUDGET;
use schur_clusters::roots::positive_real_roots;
use schur_clusters::schur::{is_real_schur_root, real_schur_roots, SchurMode, VerdictSummary};
use schur_clusters::stilt::{stilt_poset, Realizer};
use schur_clusters::FinitePoset;

pub use verify::{run_checks, Check};

/// Dynkin quivers with more positive roots than this need `--allow-large`.
pub const LARGE_ROOT_COUNT: usize = 64;

#[derive(Parser, Debug)]
#[command(
    name = "schur-clusters",
    version,
    about = "Real Schur roots, clusters and their posets for finite acyclic quivers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Quiver file (`n <count>` then one `<source> <target>` line per arrow).
    #[arg(long)]
    pub quiver: PathBuf,
    /// Height bound on roots; required for non-Dynkin quivers.
    #[arg(long)]
    pub bound: Option<u64>,
    /// Seed for sampled representations.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of samples tried before a probe gives up.
    #[arg(long, default_value_t = DEFAULT_PROBE_BUDGET)]
    pub probe_budget: u32,
    /// Output format: json, dot or tsv.
    #[arg(long, default_value = "tsv")]
    pub format: String,
    /// Allow Dynkin quivers with more than 64 positive roots (E8 and up).
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Positive real roots.
    Roots(Common),
    /// Real Schur roots, or a verdict for a single vector with --alpha.
    Schur {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// The E-invariant E(x, y) and its two one-sided formulas.
    Einv {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Include memo table statistics.
        #[arg(long)]
        stats: bool,
    },
    /// All preclusters.
    Preclusters {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        positive_only: bool,
    },
    /// All clusters.
    Clusters(Common),
    /// The cluster poset.
    Poset(Common),
    /// The poset of support tilting modules realizing the clusters.
    Stilt(Common),
    /// Cross-checks the combinatorics against independent oracles.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Box size for the E-formula equivalence check.
        #[arg(long = "box", default_value_t = 2)]
        box_size: i64,
    },
    /// Number of order-preserving maps from a finite poset to the cluster poset.
    TorsionCount {
        #[command(flatten)]
        common: Common,
        /// Poset file (`n <count>` then `<lower> <upper>` cover lines).
        #[arg(long)]
        poset: PathBuf,
    },
    /// Exceptional representations realizing a precluster.
    Realize {
        #[command(flatten)]
        common: Common,
        /// Semicolon-separated cluster variables, e.g. "1,1;-e1".
        #[arg(long)]
        vars: String,
    },
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match run_command(&cli.command) {
        Ok(stdout) => Output {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Checks(stdout)) => Output {
            code: 1,
            stdout,
            stderr: "error[verify_failed]: at least one check failed\n".into(),
        },
        Err(Failure::Error(e)) => Output {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error[{}]: {}\n", e.code(), e),
        },
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Input => 2,
        ErrorKind::Domain | ErrorKind::Internal => 1,
    }
}

enum Failure {
    Error(Error),
    /// `verify` ran, but some check failed; carries the report.
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        reason: format!("cannot read {}: {e}", path.display()),
    })
}

fn load_quiver(common: &Common) -> Result<Quiver> {
    io::parse_quiver(&read_file(&common.quiver)?)
}

fn format_of(common: &Common, allowed: &[Format]) -> Result<Format> {
    let f: Format = common.format.parse()?;
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Error::UnsupportedFormat(common.format.clone()))
    }
}

fn options(common: &Common) -> EngineOptions {
    EngineOptions {
        bound: common.bound,
        seed: common.seed,
        probe_budget: common.probe_budget,
    }
}

fn guard_size(quiver: &Quiver, common: &Common) -> Result<()> {
    if common.allow_large || !quiver.is_dynkin() {
        return Ok(());
    }
    let roots = positive_real_roots(quiver, None)?.len();
    if roots > LARGE_ROOT_COUNT {
        return Err(Error::TooLarge(format!(
            "{roots} positive roots (limit {LARGE_ROOT_COUNT})"
        )));
    }
    Ok(())
}

fn parse_vec(s: &str, n: usize) -> Result<DimVec> {
    match io::parse_variable(s)? {
        ClusterVariable::PosRoot { dim } if dim.len() == n => Ok(dim),
        ClusterVariable::PosRoot { dim } => Err(Error::DimensionMismatch {
            expected: n,
            found: dim.len(),
        }),
        ClusterVariable::NegSimple { .. } => Err(Error::Parse {
            line: 1,
            column: 1,
            reason: format!("expected a dimension vector, found '{s}'"),
        }),
    }
}

fn envelope(name: &str, common: &Common, extra: Value, result: Value) -> String {
    let mut meta = json!({
        "quiver": common.quiver.file_name().map(|f| f.to_string_lossy().into_owned()),
        "seed": common.seed,
        "bound": common.bound,
        "probe_budget": common.probe_budget,
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut meta, extra) {
        m.extend(e);
    }
    let doc = json!({ "command": name, "meta": meta, "result": result });
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    s.push('\n');
    s
}

fn run_command(cmd: &Command) -> std::result::Result<String, Failure> {
    Ok(match cmd {
        Command::Roots(c) => cmd_roots(c)?,
        Command::Schur { common, alpha } => cmd_schur(common, alpha.as_deref())?,
        Command::Einv {
            common,
            x,
            y,
            stats,
        } => cmd_einv(common, x, y, *stats)?,
        Command::Preclusters {
            common,
            positive_only,
        } => cmd_preclusters(common, *positive_only)?,
        Command::Clusters(c) => cmd_clusters(c)?,
        Command::Poset(c) => cmd_poset(c)?,
        Command::Stilt(c) => cmd_stilt(c)?,
        Command::Verify { common, box_size } => return cmd_verify(common, *box_size),
        Command::TorsionCount { common, poset } => cmd_torsion(common, poset)?,
        Command::Realize { common, vars } => cmd_realize(common, vars)?,
    })
}

fn root_lines(roots: &[DimVec]) -> String {
    roots.iter().map(|r| format!("{r}\n")).collect()
}

fn cmd_roots(c: &Common) -> Result<String> {
    let q = load_quiver(c)?;
    let format = format_of(c, &[Format::Json, Format::Tsv])?;
    let roots = positive_real_roots(&q, c.bound)?;
    Ok(match format {
        Format::Json => envelope(
            "roots",
            c,
            json!({ "complete": roots.complete }),
            json!(roots.roots),
        ),
        _ => root_lines(&roots.roots),
    })
}

fn cmd_schur(c: &Common, alpha: Option<&str>) -> Result<String> {
    let q = load_quiver(c)?;
    let format = format_of(c, &[Format::Json, Format::Tsv])?;
    let einv = EInvariant::new(&q);
    if let Some(a) = alpha {
        let alpha = parse_vec(a, q.vertex_count())?;
        let mode = if q.is_dynkin() {
            SchurMode::ExactDynkin
        } else {
            SchurMode::Probe {
                seed: c.seed,
                budget: c.probe_budget,
            }
        };
        let verdict = is_real_schur_root(&einv, &alpha, mode)?;
        let summary = VerdictSummary::from(&verdict);
        return Ok(match format {
            Format::Json => envelope("schur", c, json!({}), json!(summary)),
            _ => format!("{}\t{}\t{}\n", alpha, summary.is_schur, summary.certificate),
        });
    }
    let roots = real_schur_roots(&einv, c.bound, c.seed, c.probe_budget)?;
    Ok(match format {
        Format::Json => envelope(
            "schur",
            c,
            json!({ "complete": roots.complete, "method": if q.is_dynkin() { "dynkin" } else { "probe" } }),
            json!({ "roots": roots.roots, "unresolved": roots.unresolved }),
        ),
        _ => {
            let mut s = root_lines(&roots.roots);
            for u in &roots.unresolved {
                s.push_str(&format!("{u}\tunresolved\n"));
            }
            s
        }
    })
}

fn cmd_einv(c: &Common, x: &str, y: &str, stats: bool) -> Result<String> {
    let q = load_quiver(c)?;
    let format = format_of(c, &[Format::Json, Format::Tsv])?;
    let x = parse_vec(x, q.vertex_count())?;
    let y = parse_vec(y, q.vertex_count())?;
    let einv = EInvariant::new(&q);
    let e = einv.e(&x, &y)?;
    let (by_y, by_x) = einv.e_alt(&x, &y)?;
    let st = einv.stats();
    Ok(match format {
        Format::Json => {
            let mut result = json!({ "x": x, "y": y, "e": e, "e_by_y": by_y, "e_by_x": by_x });
            if stats {
                result["stats"] = json!(st);
            }
            envelope("einv", c, json!({}), result)
        }
        _ => {
            let mut s = format!("{e}\t{by_y}\t{by_x}\n");
            if stats {
                s.push_str(&format!(
                    "# entries={} summand_entries={} hits={} misses={}\n",
                    st.entries, st.summand_entries, st.hits, st.misses
                ));
            }
            s
        }
    })
}

fn engine_for(c: &Common) -> Result<(Quiver, ClusterEngine)> {
    let q = load_quiver(c)?;
    guard_size(&q, c)?;
    let engine = ClusterEngine::new(&q, &options(c))?;
    Ok((q, engine))
}

fn cmd_preclusters(c: &Common, positive_only: bool) -> Result<String> {
    let format = format_of(c, &[Format::Json, Format::Tsv])?;
    let (_, engine) = engine_for(c)?;
    let pre = engine.enumerate_preclusters(positive_only);
    Ok(match format {
        Format::Json => envelope(
            "preclusters",
            c,
            json!({ "complete": engine.is_complete(), "positive_only": positive_only }),
            json!(pre),
        ),
        _ => pre
            .iter()
            .map(|p| format!("{}\n", io::variable_tsv(p)))
            .collect(),
    })
}

fn cmd_clusters(c: &Common) -> Result<String> {
    let format = format_of(c, &[Format::Json, Format::Tsv])?;
    let (_, engine) = engine_for(c)?;
    let list = engine.enumerate_clusters();
    Ok(match format {
        Format::Json => envelope(
            "clusters",
            c,
            json!({ "complete": list.complete }),
            json!(list.clusters),
        ),
        _ => list
            .clusters
            .iter()
            .map(|p| format!("{}\n", io::variable_tsv(p)))
            .collect(),
    })
}

fn render_poset(
    name: &str,
    c: &Common,
    format: Format,
    elements: &[Precluster],
    hasse: &[(usize, usize)],
    extra: Value,
) -> String {
    let labels: Vec<String> = elements.iter().map(io::precluster_label).collect();
    let graph = c
        .quiver
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    match format {
        Format::Json => envelope(name, c, extra, io::poset_json(elements, hasse)),
        Format::Dot => io::poset_dot(&graph, &labels, hasse),
        Format::Tsv => io::poset_tsv(&labels, hasse),
    }
}

fn cmd_poset(c: &Common) -> Result<String> {
    let format = format_of(c, &[Format::Json, Format::Dot, Format::Tsv])?;
    let (_, engine) = engine_for(c)?;
    let p = engine.cluster_poset()?;
    let elements: Vec<Precluster> = p.clusters.iter().map(|c| c.precluster().clone()).collect();
    Ok(render_poset(
        "poset",
        c,
        format,
        &elements,
        &p.hasse,
        json!({ "complete": p.complete, "top": p.top, "bottom": p.bottom }),
    ))
}

fn cmd_stilt(c: &Common) -> Result<String> {
    let format = format_of(c, &[Format::Json, Format::Dot, Format::Tsv])?;
    let (_, engine) = engine_for(c)?;
    let sp = stilt_poset(&engine, c.seed)?;
    let hasse = sp.order.hasse();
    Ok(render_poset(
        "stilt",
        c,
        format,
        &sp.labels,
        &hasse,
        json!({ "top": sp.order.top(), "bottom": sp.order.bottom() }),
    ))
}

fn cmd_torsion(c: &Common, poset: &Path) -> Result<String> {
    let format = format_of(c, &[Format::Json, Format::Tsv])?;
    let domain: FinitePoset = io::parse_poset(&read_file(poset)?)?;
    let q = load_quiver(c)?;
    if !q.is_dynkin() {
        return Err(Error::NotDynkin);
    }
    guard_size(&q, c)?;
    let engine = ClusterEngine::new(&q, &options(c))?;
    let target = engine.cluster_poset()?;
    let count = count_monotone_maps(&domain, &target.order);
    Ok(match format {
        Format::Json => envelope(
            "torsion-count",
            c,
            json!({ "poset": poset.file_name().map(|f| f.to_string_lossy().into_owned()) }),
            json!({ "count": count.to_string(), "domain_size": domain.size(), "clusters": target.clusters.len() }),
        ),
        _ => format!("{count}\n"),
    })
}

fn cmd_realize(c: &Common, vars: &str) -> Result<String> {
    let format = format_of(c, &[Format::Json])?;
    let q = load_quiver(c)?;
    let einv = EInvariant::new(&q);
    let parsed = vars
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(io::parse_variable)
        .collect::<Result<Vec<_>>>()?;
    let pre = Precluster::new(&einv, parsed)?;
    let mut realizer = Realizer::with_budget(&q, c.seed, c.probe_budget);
    let list = realizer.realize(&pre)?;
    let result: Vec<Value> = list
        .entries
        .iter()
        .map(|(label, rep)| json!({ "label": label, "rep": io::representation_json(&q, rep) }))
        .collect();
    debug_assert_eq!(format, Format::Json);
    Ok(envelope("realize", c, json!({}), json!(result)))
}

fn cmd_verify(c: &Common, box_size: i64) -> std::result::Result<String, Failure> {
    let format = format_of(c, &[Format::Json, Format::Tsv])?;
    let q = load_quiver(c)?;
    guard_size(&q, c)?;
    let checks = run_checks(&q, &options(c), box_size)?;
    let all_pass = checks.iter().all(|ch| ch.pass);
    let out = match format {
        Format::Json => envelope("verify", c, json!({ "box": box_size }), json!(checks)),
        _ => checks
            .iter()
            .map(|ch| {
                format!(
                    "{}\t{}\t{}\n",
                    if ch.skipped {
                        "SKIP"
                    } else if ch.pass {
                        "PASS"
                    } else {
                        "FAIL"
                    },
                    ch.name,
                    ch.detail
                )
            })
            .collect(),
    };
    if all_pass {
        Ok(out)
    } else {
        Err(Failure::Checks(out))
    }
}

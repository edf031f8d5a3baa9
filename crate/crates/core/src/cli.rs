//! Command-line front end. The binary is a thin wrapper around [`main_with`].

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::codes::{
    distance_exact_with_budget, distance_upper, TannerReport, DEFAULT_EXACT_BUDGET,
};
use crate::gauging::{deform, gauge_measure, GaugeMode, GaugingPlan, RandomEdges};
use crate::io::{self, IoError, LoadedCode, ProjectConfig};
use crate::presets;
use crate::spacetime::{self, FluxCadence, Instance, SyndromeMap};
use crate::sparsify::{self, DecongestConfig, FaceShape, Thresholds};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "GAUGING_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "gauging",
    version,
    about = "Gauging-measurement code deformations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect builtin or file-based codes.
    #[command(subcommand)]
    Codes(CodesCmd),
    /// Build plans, deform codes and run the measurement.
    #[command(subcommand)]
    Gauge(GaugeCmd),
    /// Expansion audit and layered decongestion.
    #[command(subcommand)]
    Sparsify(SparsifyCmd),
    /// Detectors, spacetime stabilizers and fault-distance search.
    #[command(subcommand)]
    Spacetime(SpacetimeCmd),
    /// Rebuild a bundled construction and its report.
    Repro(ReproArgs),
}

#[derive(Subcommand, Debug)]
pub enum CodesCmd {
    /// Builtin code names.
    List,
    /// Checks and Tanner report of a code.
    Show {
        code: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Code JSON (checks, labels, k) for a builtin or file-based code.
    Build {
        code: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tanner-graph degree report, as JSON or a table.
    Report {
        code: String,
        #[arg(long)]
        table: bool,
    },
    /// Distance: randomized upper bound (default), or exact up to `--wmax`.
    Distance {
        code: String,
        #[arg(long, conflicts_with = "upper")]
        exact: bool,
        #[arg(long)]
        upper: bool,
        #[arg(long, default_value_t = 8)]
        wmax: usize,
        #[arg(long, default_value_t = DEFAULT_EXACT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct Target {
    /// Project configuration (JSON); flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Builtin code name or code JSON file.
    #[arg(long)]
    pub code: Option<String>,
    /// Bundled construction (`gross`, `double-gross`): code and plan.
    #[arg(long, conflicts_with_all = ["code", "logical"])]
    pub preset: Option<String>,
    /// Pauli string, `X`/`Z` for named logicals, or `basis:<i>`.
    #[arg(long)]
    pub logical: Option<String>,
    /// Plan JSON from `gauge plan`.
    #[arg(long)]
    pub plan: Option<PathBuf>,
}

impl Target {
    fn resolve(&self) -> Result<(ProjectConfig, LoadedCode, GaugingPlan), IoError> {
        let mut cfg = match &self.config {
            Some(p) => ProjectConfig::load(p)?,
            None => ProjectConfig::default(),
        };
        if let Some(c) = &self.code {
            cfg.code = Some(c.clone());
        }
        if let Some(l) = &self.logical {
            cfg.logical = Some(l.clone());
            cfg.plan.file = None;
        }
        if let Some(p) = &self.plan {
            cfg.plan.file = Some(p.clone());
        }
        if let Some(name) = self.preset.as_ref().or(cfg.preset.as_ref()) {
            let p = presets::load(name)?;
            let code = LoadedCode {
                name: name.clone(),
                code: p.code.clone(),
                bb: Some(p.bb.clone()),
                surface: None,
            };
            let plan = match &cfg.plan.file {
                Some(f) => io::load_plan(&code.code, f)?,
                None => p.plan,
            };
            return Ok((cfg, code, plan));
        }
        let name = cfg
            .code
            .clone()
            .ok_or_else(|| IoError::Config("no code given (--code or config)".into()))?;
        let code = io::load_code(&name)?;
        let plan = cfg.build_plan(&code)?;
        Ok((cfg, code, plan))
    }
}

#[derive(Subcommand, Debug)]
pub enum GaugeCmd {
    /// Matching graph for a logical, optionally augmented.
    Plan {
        #[command(flatten)]
        target: Target,
        /// Random edges per trial; enables the expander augmentation.
        #[arg(long)]
        random_edges: Option<usize>,
        #[arg(long, default_value_t = 4)]
        degree_cap: usize,
        #[arg(long, default_value_t = 20)]
        budget: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0)]
        target_distance: usize,
        #[arg(long, default_value_t = 200)]
        isd_trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Deformed code as JSON, text matrices or the plan graph as DOT.
    Deform {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate the measurement on a code state.
    Run {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Algorithm1)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plans from the bundled constructions.
    #[command(subcommand)]
    Recipe(RecipeCmd),
}

#[derive(Subcommand, Debug)]
pub enum RecipeCmd {
    /// Two copies of `--code` merged along a logical of each block.
    Ladder {
        #[arg(long)]
        code: String,
        /// Logical selector applied to both blocks.
        #[arg(long, default_value = "X")]
        logical: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One dummy per support qubit, the dummies joined in a path.
    Shor {
        #[arg(long)]
        code: String,
        #[arg(long)]
        logical: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prepares a CSS code state by gauging from an empty register.
    CssInit {
        #[arg(long)]
        code: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum SparsifyCmd {
    /// Path lengths, Cheeger constant and cycle weights.
    Audit {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        kappa: Option<usize>,
        #[arg(long)]
        cycle_weight: Option<usize>,
    },
    /// Cheeger constant of the plan graph.
    Cheeger {
        #[command(flatten)]
        target: Target,
        /// Exhaustive enumeration (small graphs only).
        #[arg(long, conflicts_with = "spectral")]
        exact: bool,
        /// Laplacian lower bound.
        #[arg(long)]
        spectral: bool,
    },
    /// Layered graph with every base edge on at most `--cap` faces.
    Decongest {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum)]
        shape: Option<Shape>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ScheduleArgs {
    #[arg(long)]
    pub pre: Option<usize>,
    #[arg(long)]
    pub rounds: Option<usize>,
    #[arg(long)]
    pub post: Option<usize>,
    #[arg(long, value_enum)]
    pub cadence: Option<Cadence>,
}

#[derive(Subcommand, Debug)]
pub enum SpacetimeCmd {
    /// Detector list as JSON.
    Detectors {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every local spacetime-stabilizer generator and the time faults.
    Verify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        schedule: ScheduleArgs,
    },
    /// Lightest undetected logical fault up to `--wmax`.
    Search {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[arg(long, default_value_t = 3)]
        wmax: usize,
        #[arg(long, default_value_t = spacetime::DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
}

#[derive(Args, Debug)]
pub struct ReproArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(presets::names()))]
    pub preset: String,
    /// Directory for the report, plan, table and exports.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory with golden files to compare against.
    #[arg(long)]
    pub check: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    TextMatrix,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Algorithm1,
    Circuit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Triangles,
    Squares,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Cadence {
    EveryRound,
    EndpointsOnly,
}

/// Where command output goes: a directory for multi-file outputs, a file,
/// or stdout.
struct Sink<'a> {
    out: Option<&'a Path>,
    stdout: &'a mut dyn Write,
}

impl Sink<'_> {
    fn emit(&mut self, name: &str, text: &str) -> Result<(), IoError> {
        match self.out {
            Some(dir) => io::write_text(&dir.join(name), text),
            None => {
                let _ = self.stdout.write_all(text.as_bytes());
                Ok(())
            }
        }
    }

    fn file(&mut self, text: &str) -> Result<(), IoError> {
        match self.out {
            Some(path) => io::write_text(path, text),
            None => {
                let _ = self.stdout.write_all(text.as_bytes());
                Ok(())
            }
        }
    }
}

/// Parses `args` and runs the command, writing results to `stdout` and
/// errors (as JSON) to `stderr`. Returns the exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
                _ => {
                    report(stderr, "usage", &e.render().to_string());
                    EXIT_INVALID
                }
            };
        }
    };
    configure_threads();
    match run(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            report(stderr, e.kind(), &e.to_string());
            if e.is_budget() {
                EXIT_BUDGET
            } else {
                EXIT_INVALID
            }
        }
    }
}

fn report(stderr: &mut dyn Write, kind: &str, message: &str) {
    let v = json!({ "error": kind, "message": message.trim_end() });
    let _ = writeln!(stderr, "{v}");
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        // Fails only when a pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

pub fn run(command: Command, stdout: &mut dyn Write) -> Result<(), IoError> {
    match command {
        Command::Codes(c) => codes(c, stdout),
        Command::Gauge(c) => gauge(c, stdout),
        Command::Sparsify(c) => sparsify_cmd(c, stdout),
        Command::Spacetime(c) => spacetime_cmd(c, stdout),
        Command::Repro(a) => repro(&a, stdout),
    }
}

fn codes(cmd: CodesCmd, stdout: &mut dyn Write) -> Result<(), IoError> {
    match cmd {
        CodesCmd::List => {
            let mut sink = Sink { out: None, stdout };
            sink.file(&io::to_stable_json(&json!({ "codes": io::BUILTIN_CODES })))
        }
        CodesCmd::Show { code, format, out } => {
            let c = io::load_code(&code)?;
            let mut sink = Sink {
                out: out.as_deref(),
                stdout,
            };
            match format {
                Format::Json => {
                    let mut v = c.code.to_json();
                    v["k"] = json!(c.code.k());
                    v["report"] =
                        serde_json::to_value(TannerReport::of(&c.code)).expect("serializable");
                    sink.file(&io::to_stable_json(&v))
                }
                Format::TextMatrix => {
                    let (hx, hz) = io::text_matrices(&c.code)?;
                    sink.emit("hx.txt", &hx)?;
                    sink.emit("hz.txt", &hz)
                }
                Format::Dot => Err(IoError::Unsupported(
                    "a code has no graph; use gauge deform".into(),
                )),
            }
        }
        CodesCmd::Build { code, out } => {
            let c = io::load_code(&code)?;
            let mut v = c.code.to_json();
            v["k"] = json!(c.code.k());
            Sink {
                out: out.as_deref(),
                stdout,
            }
            .file(&io::to_stable_json(&v))
        }
        CodesCmd::Report { code, table } => {
            let c = io::load_code(&code)?;
            let r = TannerReport::of(&c.code);
            let text = if table {
                r.to_string()
            } else {
                io::to_stable_json(&r)
            };
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
        CodesCmd::Distance {
            code,
            exact,
            upper: _,
            wmax,
            budget,
            trials,
            seed,
        } => {
            let c = io::load_code(&code)?;
            let v = if exact {
                let b = distance_exact_with_budget(&c.code, wmax, budget)?;
                json!({
                    "code": c.name, "method": "exact", "wmax": wmax,
                    "distance": b.as_ref().map(|b| b.weight),
                    "witness": b.map(|b| b.witness.to_string()),
                })
            } else {
                let b = distance_upper(&c.code, trials, seed);
                json!({
                    "code": c.name, "method": "upper", "trials": trials, "seed": seed,
                    "distance_upper": b.as_ref().map(|b| b.weight),
                    "witness": b.map(|b| b.witness.to_string()),
                })
            };
            let _ = stdout.write_all(io::to_stable_json(&v).as_bytes());
            Ok(())
        }
    }
}

fn gauge(cmd: GaugeCmd, stdout: &mut dyn Write) -> Result<(), IoError> {
    match cmd {
        GaugeCmd::Plan {
            target,
            random_edges,
            degree_cap,
            budget,
            seed,
            target_distance,
            isd_trials,
            out,
        } => {
            let (_, code, mut plan) = target.resolve()?;
            let mut trial = None;
            if let Some(count) = random_edges {
                let seed =
                    seed.ok_or_else(|| IoError::Config("random edges need --seed".into()))?;
                let cfg = RandomEdges {
                    count,
                    degree_cap,
                    budget,
                    seed,
                    target_distance,
                    isd_trials,
                };
                let (p, r) = crate::gauging::add_random_edges(&plan, &code.code, &cfg)?;
                plan = p;
                trial = Some(serde_json::to_value(r).expect("serializable"));
            }
            let mut v = plan.to_json();
            if let Some(t) = trial {
                v["trial"] = t;
            }
            Sink {
                out: out.as_deref(),
                stdout,
            }
            .file(&io::to_stable_json(&v))
        }
        GaugeCmd::Deform {
            target,
            format,
            out,
        } => {
            let (_, code, plan) = target.resolve()?;
            let dc = deform(&code.code, &plan)?;
            let mut sink = Sink {
                out: out.as_deref(),
                stdout,
            };
            match format {
                Format::Json => {
                    let v = json!({
                        "code": dc.code().to_json(),
                        "report": dc.report(),
                        "counting_identity": dc.counting_identity(),
                        "k_base": dc.base().k(),
                        "k": dc.code().k(),
                        "additions": dc.additions(),
                    });
                    sink.file(&io::to_stable_json(&v))
                }
                Format::TextMatrix => {
                    let (hx, hz) = io::text_matrices(dc.code())?;
                    sink.emit("hx.txt", &hx)?;
                    sink.emit("hz.txt", &hz)
                }
                Format::Dot => sink.file(&io::plan_dot(&plan, &code)),
            }
        }
        GaugeCmd::Recipe(r) => recipe(r, stdout),
        GaugeCmd::Run {
            target,
            seed,
            mode,
            out,
        } => {
            let (_, code, plan) = target.resolve()?;
            // Code state with the first partner of L fixed, so sigma is random.
            let pairs = code.code.symplectic_pairs(Some(&plan.logical))?;
            let partners: Vec<_> = pairs.iter().map(|(_, z)| z.clone()).collect();
            let state = io::code_state(&code.code, &partners)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mode = match mode {
                Mode::Algorithm1 => GaugeMode::Algorithm1,
                Mode::Circuit => GaugeMode::Circuit,
            };
            let (o, post) = gauge_measure(&state, &plan, mode, &mut rng)?;
            let signs = |s: &[crate::pauli::Sign]| s.iter().map(|s| s.value()).collect::<Vec<_>>();
            let v = json!({
                "seed": seed,
                "sigma": o.sigma.value(),
                "vertex_outcomes": signs(&o.vertex_outcomes),
                "edge_outcomes": signs(&o.edge_outcomes),
                "correction": o.correction.iter_ones().collect::<Vec<_>>(),
                "byproduct": o.byproduct.to_string(),
                "state": post.canonical().rows().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            });
            Sink {
                out: out.as_deref(),
                stdout,
            }
            .file(&io::to_stable_json(&v))
        }
    }
}

fn recipe(cmd: RecipeCmd, stdout: &mut dyn Write) -> Result<(), IoError> {
    let plan_summary =
        |code: &crate::codes::StabilizerCode, plan: &GaugingPlan| -> Result<Value, IoError> {
            let dc = deform(code, plan)?;
            let mut v = plan.to_json();
            v["summary"] = json!({
                "k_base": code.k(),
                "k": dc.code().k(),
                "counting_identity": dc.counting_identity(),
                "edges": plan.graph.edge_count(),
                "flux_checks": plan.cycles.len(),
            });
            Ok(v)
        };
    match cmd {
        RecipeCmd::Ladder { code, logical, out } => {
            let block = io::load_code(&code)?;
            let n = block.code.n();
            let l = io::resolve_logical(&block, &logical)?;
            let both = crate::codes::library::product(&block.code, &block.code);
            let la = l.resized(2 * n);
            let mut lb = crate::pauli::PauliOp::identity(2 * n);
            for q in 0..n {
                lb.set(n + q, l.get(q));
            }
            let plan = crate::gauging::recipes::ladder(&both, &la, &lb)?;
            Sink {
                out: out.as_deref(),
                stdout,
            }
            .file(&io::to_stable_json(&plan_summary(&both, &plan)?))
        }
        RecipeCmd::Shor { code, logical, out } => {
            let c = io::load_code(&code)?;
            let l = io::resolve_logical(&c, &logical)?;
            let w = l.weight();
            let chain: Vec<(usize, usize)> = (1..w).map(|i| (i - 1, i)).collect();
            let plan = crate::gauging::recipes::shor(&c.code, &l, &chain)?;
            Sink {
                out: out.as_deref(),
                stdout,
            }
            .file(&io::to_stable_json(&plan_summary(&c.code, &plan)?))
        }
        RecipeCmd::CssInit { code, seed } => {
            let c = io::load_code(&code)?;
            let css = c
                .code
                .as_css()
                .ok_or_else(|| IoError::Unsupported(format!("{} is not a CSS code", c.name)))?;
            let hg = crate::gauging::recipes::css_init(&css);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let empty = crate::tableau::Tableau::new(0);
            let (o, post) = crate::gauging::hypergraph_measure(&empty, &hg, false, &mut rng)?;
            let mut prepared = true;
            for s in c.code.checks() {
                prepared &= post
                    .expectation(s)
                    .map_err(crate::gauging::GaugingError::from)?
                    .is_some();
            }
            let v = json!({
                "code": c.name,
                "seed": seed,
                "vertex_outcomes": o.vertex_outcomes.iter().map(|s| s.value()).collect::<Vec<_>>(),
                "prepared": prepared,
                "state": post.canonical().rows().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            });
            let _ = stdout.write_all(io::to_stable_json(&v).as_bytes());
            Ok(())
        }
    }
}

fn sparsify_cmd(cmd: SparsifyCmd, stdout: &mut dyn Write) -> Result<(), IoError> {
    match cmd {
        SparsifyCmd::Audit {
            target,
            kappa,
            cycle_weight,
        } => {
            let (_, _, plan) = target.resolve()?;
            let mut th = Thresholds::default();
            if let Some(k) = kappa {
                th.kappa = k;
            }
            if let Some(w) = cycle_weight {
                th.cycle_weight = w;
            }
            let r = sparsify::audit_desiderata(&plan, th);
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["passes"] = json!(r.passes());
            let _ = stdout.write_all(io::to_stable_json(&v).as_bytes());
            Ok(())
        }
        SparsifyCmd::Cheeger {
            target,
            exact,
            spectral,
        } => {
            let (_, _, plan) = target.resolve()?;
            let c = match (exact, spectral) {
                (true, _) => sparsify::cheeger(&plan.graph, sparsify::CheegerMode::Exact)?,
                (_, true) => sparsify::cheeger(&plan.graph, sparsify::CheegerMode::Spectral)?,
                _ => sparsify::cheeger_auto(&plan.graph),
            };
            let _ = stdout.write_all(io::to_stable_json(&c).as_bytes());
            Ok(())
        }
        SparsifyCmd::Decongest {
            target,
            cap,
            shape,
            out,
        } => {
            let (cfg, code, plan) = target.resolve()?;
            let config = DecongestConfig {
                cap: cap.unwrap_or(cfg.cap),
                shape: match shape {
                    Some(Shape::Triangles) => FaceShape::Triangles,
                    Some(Shape::Squares) => FaceShape::Squares,
                    None => cfg.shape,
                },
            };
            let layered = sparsify::decongest(&plan, config)?;
            let dc = sparsify::sparsified_deform(&code.code, &plan, &layered)?;
            let mut v = layered.to_json(&plan)?;
            v["summary"] = json!({
                "layers": layered.layers,
                "max_flux_weight": layered.max_flux_weight(),
                "edges": layered.graph.edge_count(),
                "vertices": layered.graph.vertex_count(),
                "k_drop": dc.k_drop(),
                "counting_identity": dc.counting_identity(),
            });
            Sink {
                out: out.as_deref(),
                stdout,
            }
            .file(&io::to_stable_json(&v))
        }
    }
}

fn instance(target: &Target, args: &ScheduleArgs) -> Result<Instance, IoError> {
    let (cfg, code, plan) = target.resolve()?;
    let mut sc = cfg.schedule.clone();
    sc.pre = args.pre.unwrap_or(sc.pre);
    sc.rounds = args.rounds.unwrap_or(sc.rounds);
    sc.post = args.post.unwrap_or(sc.post);
    if let Some(c) = args.cadence {
        sc.cadence = match c {
            Cadence::EveryRound => FluxCadence::EveryRound,
            Cadence::EndpointsOnly => FluxCadence::EndpointsOnly,
        };
    }
    let dc = deform(&code.code, &plan)?;
    Ok(Instance::new(&dc, sc.schedule()?)?)
}

fn spacetime_cmd(cmd: SpacetimeCmd, stdout: &mut dyn Write) -> Result<(), IoError> {
    match cmd {
        SpacetimeCmd::Detectors {
            target,
            schedule,
            out,
        } => {
            let inst = instance(&target, &schedule)?;
            let ds = spacetime::build_detectors(&inst);
            spacetime::validate_detectors(&inst, &ds, 8)?;
            Sink {
                out: out.as_deref(),
                stdout,
            }
            .file(&io::to_stable_json(&ds))
        }
        SpacetimeCmd::Verify { target, schedule } => {
            let inst = instance(&target, &schedule)?;
            let map = SyndromeMap::build(&inst)?;
            let gens = spacetime::spacetime_generators(&inst);
            let r = spacetime::verify_with(&inst, &map, &gens)?;
            let time = map.syndrome(&spacetime::time_logical_fault(&inst))?;
            let trivial: Vec<bool> = (0..inst.n_edges)
                .map(|e| {
                    map.syndrome(&spacetime::trivial_edge_string(&inst, e))
                        .map(|s| s.is_trivial())
                })
                .collect::<Result<_, _>>()?;
            let v = json!({
                "generators": r.checked,
                "failures": r.failures,
                "time_logical": {
                    "weight": inst.schedule.rounds,
                    "silent": time.is_silent(),
                    "flips_outcome": time.flip,
                },
                "edge_strings_trivial": trivial.iter().all(|&t| t),
                "detectors": map.detectors.len(),
                "sites": map.sites.len(),
            });
            let _ = stdout.write_all(io::to_stable_json(&v).as_bytes());
            if !r.passed() {
                return Err(IoError::Spacetime(spacetime::SpacetimeError::Invariant(
                    format!(
                        "{} generator(s) failed, first: {}",
                        r.failures.len(),
                        r.failures[0].0
                    ),
                )));
            }
            Ok(())
        }
        SpacetimeCmd::Search {
            target,
            schedule,
            wmax,
            budget,
        } => {
            let inst = instance(&target, &schedule)?;
            let map = SyndromeMap::build(&inst)?;
            let found = spacetime::fault_distance_search(&map, wmax, budget)?;
            let v = match found {
                Some(f) => json!({
                    "wmax": wmax,
                    "weight": f.weight,
                    "witness": f.faults.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "effect": f.effect,
                }),
                None => json!({ "wmax": wmax, "weight": Value::Null }),
            };
            let _ = stdout.write_all(io::to_stable_json(&v).as_bytes());
            Ok(())
        }
    }
}

/// Human-readable table for a repro summary.
pub fn repro_table(s: &presets::ReproSummary) -> String {
    format!(
        "{name}\n\
         edges          {matched} matched + {extra} extra = {edges}\n\
         cycle space    {cs} (dim U = {u}, flux checks {flux})\n\
         additions      {ax} X checks, {bz} Z checks, {q} qubits, total {total}\n\
         \n{report}",
        name = s.name,
        matched = s.matched_edges,
        extra = s.extra_edges,
        edges = s.edges,
        cs = s.cycle_space,
        u = s.dim_u,
        flux = s.flux_checks,
        ax = s.added_x_checks,
        bz = s.added_z_checks,
        q = s.added_qubits,
        total = s.total_additions,
        report = s.report,
    )
}

/// Files written by `repro`, as `(name, contents)`.
pub fn repro_artifacts(name: &str) -> Result<Vec<(String, String)>, IoError> {
    let p = presets::load(name)?;
    let summary = p.summary()?;
    let dc = p.deformed()?;
    let (hx, hz) = io::text_matrices(dc.code())?;
    let code = LoadedCode {
        name: name.to_string(),
        code: p.code.clone(),
        bb: Some(p.bb.clone()),
        surface: None,
    };
    Ok(vec![
        (format!("{name}.summary.json"), io::to_stable_json(&summary)),
        (
            format!("{name}.plan.json"),
            io::to_stable_json(&p.plan.to_json()),
        ),
        (format!("{name}.table.txt"), repro_table(&summary)),
        (format!("{name}.graph.dot"), io::plan_dot(&p.plan, &code)),
        (format!("{name}.hx.txt"), hx),
        (format!("{name}.hz.txt"), hz),
    ])
}

fn repro(args: &ReproArgs, stdout: &mut dyn Write) -> Result<(), IoError> {
    let files = repro_artifacts(&args.preset)?;
    if let Some(dir) = &args.out {
        for (name, text) in &files {
            io::write_text(&dir.join(name), text)?;
        }
    } else {
        let _ = stdout.write_all(files[0].1.as_bytes());
    }
    if let Some(golden) = &args.check {
        let name = &files[0].0;
        let path = golden.join(name);
        let want =
            std::fs::read_to_string(&path).map_err(|source| IoError::File { path, source })?;
        if want != files[0].1 {
            return Err(IoError::Config(format!(
                "{name} differs from the golden copy"
            )));
        }
    }
    Ok(())
}

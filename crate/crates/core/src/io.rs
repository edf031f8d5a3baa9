//! Code lookup, project configuration and stable exports.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::codes::{library, BBCode, CodeError, LogicalKind, StabilizerCode};
use crate::f2::{BitMatrix, RowSpace};
use crate::gauging::{GaugingError, GaugingPlan, RandomEdges};
use crate::pauli::PauliOp;
use crate::spacetime::{FluxCadence, Schedule, SpacetimeError};
use crate::sparsify::{FaceShape, SparsifyError};
use crate::tableau::Tableau;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("config: {0}")]
    Config(String),
    #[error("unsupported export: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Gauging(#[from] GaugingError),
    #[error(transparent)]
    Sparsify(#[from] SparsifyError),
    #[error(transparent)]
    Spacetime(#[from] SpacetimeError),
}

impl IoError {
    /// Whether the failure is an exhausted search budget rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            IoError::Code(CodeError::Budget { .. })
                | IoError::Gauging(GaugingError::BudgetExhausted(_))
                | IoError::Sparsify(SparsifyError::Budget { .. })
                | IoError::Sparsify(SparsifyError::Gauging(GaugingError::BudgetExhausted(_)))
                | IoError::Spacetime(SpacetimeError::Budget { .. })
        )
    }

    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            _ if self.is_budget() => "budget",
            IoError::File { .. } => "file",
            IoError::Json { .. } => "json",
            IoError::Config(_) => "config",
            IoError::Unsupported(_) => "unsupported",
            IoError::Code(_) => "code",
            IoError::Gauging(_) => "gauging",
            IoError::Sparsify(_) => "sparsify",
            IoError::Spacetime(_) => "spacetime",
        }
    }
}

/// Names accepted by [`load_code`] besides file paths.
pub const BUILTIN_CODES: &[&str] = &[
    "toy-zz",
    "four-two-two",
    "surface-<d>",
    "gross",
    "double-gross",
];

/// A code plus whatever knows how to name its logicals.
#[derive(Clone, Debug)]
pub struct LoadedCode {
    pub name: String,
    pub code: StabilizerCode,
    pub bb: Option<BBCode>,
    pub surface: Option<usize>,
}

/// Builtin code by name, or a JSON file in the shape of
/// [`StabilizerCode::to_json`] or `{"kind": "css", "hx": [[0,1,..]], "hz": ..}`.
pub fn load_code(spec: &str) -> Result<LoadedCode, IoError> {
    let named = |code, bb, surface| LoadedCode {
        name: spec.to_string(),
        code,
        bb,
        surface,
    };
    match spec {
        "toy-zz" => return Ok(named(library::toy_zz(), None, None)),
        "four-two-two" => return Ok(named(library::four_two_two(), None, None)),
        "gross" | "double-gross" => {
            let bb = if spec == "gross" {
                BBCode::gross()
            } else {
                BBCode::double_gross()
            };
            return Ok(named(bb.to_stabilizer(), Some(bb), None));
        }
        _ => {}
    }
    if let Some(d) = spec.strip_prefix("surface-") {
        let d: usize = d
            .parse()
            .map_err(|_| IoError::Config(format!("bad surface distance in {spec:?}")))?;
        if d < 2 {
            return Err(IoError::Config(
                "surface distance must be at least 2".into(),
            ));
        }
        return Ok(named(
            library::rotated_surface(d).to_stabilizer(),
            None,
            Some(d),
        ));
    }
    let value = read_json(Path::new(spec))?;
    Ok(named(code_from_json(&value)?, None, None))
}

pub fn code_from_json(value: &Value) -> Result<StabilizerCode, IoError> {
    let bad = |what: &str| IoError::Config(format!("code JSON: {what}"));
    match value["kind"].as_str() {
        Some("stabilizer") => {
            let checks: Vec<PauliOp> = value["checks"]
                .as_array()
                .ok_or_else(|| bad("missing checks"))?
                .iter()
                .map(|c| {
                    c.as_str()
                        .ok_or_else(|| bad("check is not a string"))?
                        .parse::<PauliOp>()
                        .map_err(|e| bad(&e.to_string()))
                })
                .collect::<Result<_, _>>()?;
            let n = match value["n"].as_u64() {
                Some(n) => n as usize,
                None => checks
                    .first()
                    .map(PauliOp::n)
                    .ok_or_else(|| bad("no checks and no n"))?,
            };
            let labels = match value.get("labels") {
                Some(Value::Array(ls)) => Some(
                    ls.iter()
                        .map(|l| {
                            l.as_str()
                                .map(str::to_string)
                                .ok_or_else(|| bad("label is not a string"))
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                ),
                _ => None,
            };
            Ok(StabilizerCode::new(n, checks, labels)?)
        }
        Some("css") => {
            let matrix = |key: &str| -> Result<BitMatrix, IoError> {
                let rows: Vec<Vec<u8>> = serde_json::from_value(value[key].clone())
                    .map_err(|e| bad(&format!("{key}: {e}")))?;
                Ok(BitMatrix::from_dense(&rows).map_err(CodeError::from)?)
            };
            Ok(crate::codes::CssCode::new(matrix("hx")?, matrix("hz")?)?.to_stabilizer())
        }
        other => Err(bad(&format!("unknown kind {other:?}"))),
    }
}

/// Logical by selector: a Pauli string, `X`/`Z` for the named logicals of
/// bivariate-bicycle and surface codes, or `basis:<i>` for the `i`-th
/// element of the computed logical basis.
pub fn resolve_logical(code: &LoadedCode, selector: &str) -> Result<PauliOp, IoError> {
    if let Some(i) = selector.strip_prefix("basis:") {
        let i: usize = i
            .parse()
            .map_err(|_| IoError::Config(format!("bad basis index in {selector:?}")))?;
        return code
            .code
            .logical_basis()
            .get(i)
            .cloned()
            .ok_or_else(|| IoError::Config(format!("logical basis has no entry {i}")));
    }
    if let Some(bb) = &code.bb {
        let kind = match selector {
            "X" => Some(LogicalKind::X),
            "X'" => Some(LogicalKind::XPrime),
            "Z" => Some(LogicalKind::Z),
            "Z'" => Some(LogicalKind::ZPrime),
            _ => None,
        };
        if let Some(kind) = kind {
            return Ok(bb.logical(kind, (0, 0))?);
        }
    }
    if let Some(d) = code.surface {
        match selector {
            "X" => return Ok(library::surface_x_logical(d)),
            "Z" => return Ok(library::surface_z_logical(d)),
            _ => {}
        }
    }
    let op: PauliOp = selector
        .parse()
        .map_err(|_| IoError::Config(format!("cannot read logical {selector:?}")))?;
    if op.n() != code.code.n() {
        return Err(IoError::Config(format!(
            "logical on {} qubits, code has {}",
            op.n(),
            code.code.n()
        )));
    }
    if !code.code.is_logical(&op) {
        return Err(IoError::Config(format!(
            "{selector} is not a nontrivial logical"
        )));
    }
    Ok(op)
}

/// Plan section of a project configuration.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlanConfig {
    /// Plan JSON written by `gauge plan`.
    pub file: Option<PathBuf>,
    /// Extra edges between base qubits, added to the matching graph.
    pub extra_edges: Vec<(usize, usize)>,
    pub random: Option<RandomEdges>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScheduleConfig {
    pub pre: usize,
    pub rounds: usize,
    pub post: usize,
    pub cadence: FluxCadence,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        ScheduleConfig {
            pre: 2,
            rounds: 2,
            post: 2,
            cadence: FluxCadence::EveryRound,
        }
    }
}

impl ScheduleConfig {
    pub fn schedule(&self) -> Result<Schedule, IoError> {
        Ok(Schedule::new(self.pre, self.rounds, self.post)?.with_cadence(self.cadence))
    }
}

/// Everything one pipeline run needs. Relative paths resolve against the
/// configuration file's directory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProjectConfig {
    pub code: Option<String>,
    /// Bundled construction; replaces `code` and the plan section.
    pub preset: Option<String>,
    pub logical: Option<String>,
    pub plan: PlanConfig,
    pub cap: usize,
    pub shape: FaceShape,
    pub schedule: ScheduleConfig,
    pub out: Option<PathBuf>,
}

impl Default for ProjectConfig {
    fn default() -> Self {
        ProjectConfig {
            code: None,
            preset: None,
            logical: None,
            plan: PlanConfig::default(),
            cap: 3,
            shape: FaceShape::Triangles,
            schedule: ScheduleConfig::default(),
            out: None,
        }
    }
}

impl ProjectConfig {
    pub fn load(path: &Path) -> Result<Self, IoError> {
        let value = read_json(path)?;
        let mut cfg: ProjectConfig =
            serde_json::from_value(value).map_err(|source| IoError::Json {
                path: path.to_path_buf(),
                source,
            })?;
        let dir = path.parent().unwrap_or(Path::new("."));
        let rebase = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        };
        if let Some(f) = cfg.plan.file.as_mut() {
            rebase(f);
        }
        if let Some(o) = cfg.out.as_mut() {
            rebase(o);
        }
        if let Some(c) = cfg.code.as_mut() {
            let p = dir.join(&*c);
            if c.ends_with(".json") && p.exists() {
                *c = p.to_string_lossy().into_owned();
            }
        }
        if cfg.cap == 0 {
            return Err(IoError::Config("cap must be positive".into()));
        }
        Ok(cfg)
    }

    /// The plan this configuration describes for `code`.
    pub fn build_plan(&self, code: &LoadedCode) -> Result<GaugingPlan, IoError> {
        if let Some(f) = &self.plan.file {
            return load_plan(&code.code, f);
        }
        let selector = self
            .logical
            .as_deref()
            .ok_or_else(|| IoError::Config("need a logical or a plan file".into()))?;
        let l = resolve_logical(code, selector)?;
        let mut plan = GaugingPlan::from_matching(&code.code, &l)?;
        plan.add_qubit_edges(&self.plan.extra_edges)?;
        plan.select_flux_checks(&code.code)?;
        if let Some(cfg) = &self.plan.random {
            plan = crate::gauging::add_random_edges(&plan, &code.code, cfg)?.0;
        }
        Ok(plan)
    }
}

pub fn read_json(path: &Path) -> Result<Value, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| IoError::Json {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_plan(code: &StabilizerCode, path: &Path) -> Result<GaugingPlan, IoError> {
    Ok(GaugingPlan::from_json(code, &read_json(path)?)?)
}

/// Pretty JSON with keys sorted and a trailing newline.
pub fn to_stable_json<T: Serialize>(value: &T) -> String {
    // Going through `Value` sorts object keys (BTreeMap-backed maps).
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|source| IoError::File {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, text).map_err(|source| IoError::File {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    write_text(path, &to_stable_json(value))
}

/// `H_X` and `H_Z` of a CSS code as text matrices (`rows cols` header,
/// then one 0/1 row per line).
pub fn text_matrices(code: &StabilizerCode) -> Result<(String, String), IoError> {
    let css = code.as_css().ok_or_else(|| {
        IoError::Unsupported("text matrices need X-type and Z-type checks only".into())
    })?;
    Ok((css.hx().to_text(), css.hz().to_text()))
}

/// DOT rendering of a plan graph; BB qubits get monomial labels.
pub fn plan_dot(plan: &GaugingPlan, code: &LoadedCode) -> String {
    let name = code.name.replace(|c: char| !c.is_ascii_alphanumeric(), "_");
    match &code.bb {
        Some(bb) => plan.graph.to_dot(&name, |q| bb.qubit_label(q)),
        None => plan.graph.to_dot(&name, |q| format!("q{q}")),
    }
}

/// State stabilized by the checks of `code` and the given extra operators,
/// which must commute with them and each other and complete them.
pub fn code_state(code: &StabilizerCode, extra: &[PauliOp]) -> Result<Tableau, IoError> {
    let mut span = RowSpace::new(2 * code.n());
    let gens: Vec<PauliOp> = code
        .checks()
        .iter()
        .chain(extra)
        .filter(|g| span.insert(g.symplectic()))
        .cloned()
        .collect();
    Tableau::from_stabilizers(&gens)
        .map_err(|e| IoError::Config(format!("state does not close: {e}")))
}

//! Command-line front end. Machine-readable `key=value` lines go to `out`,
//! the human-readable report to `err`.
//!
//! Exit codes: 0 pass, 1 check failed, 2 document or usage error.

mod plot;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::catgraph::CategoryPresentation;
use crate::charge::{maslov_indices, tau, validate_triple, walcher_triple, ChargeTriple, Complex};
use crate::lift::{build_z_lift, check_bridgeland, BridgelandData, LiftError};
use crate::mf::{Catalog, CatalogOptions};
use crate::polymat::Q;
use crate::stab::{
    basic_monodromy_loops, derive_stability, monodromy_word, validate_stability, LoopOutcome, PathDoc,
    StabilityCondition,
};

pub use plot::{render_svg, SCALE, SIZE};

pub const PRESENTATION_FILE: &str = "presentation.json";
pub const CHARGE_FILE: &str = "charge.json";
pub const STABILITY_FILE: &str = "stability.json";
pub const PATH_FILE: &str = "path.json";
pub const LOOPS_FILE: &str = "loops.json";
pub const BRIDGELAND_FILE: &str = "bridgeland.json";
pub const BOUND_VAR: &str = "CYCLIC_STAB_BOUND";
pub const DEFAULT_WINDOW: u32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cyclic-stab", version, about = "Charge, lift and stability checks for graded matrix factorization categories")]
pub struct Cli {
    /// TOML file with `bound`, `rcharge_scale` and `window`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory for `build`, SVG file for `plot`, report copy otherwise.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Writes presentation and charge documents for an example.
    Build { example: String },
    /// Runs one check over a workspace directory.
    Check { kind: CheckKind, dir: PathBuf },
    /// Draws the charge plane of a workspace.
    Plot { dir: PathBuf },
    /// Runs the loops of a workspace and reports the relabelings.
    Monodromy {
        dir: PathBuf,
        /// Use the three generator loops instead of `loops.json`.
        #[arg(long)]
        generators: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Triple,
    Liftable,
    Maslov,
    Stability,
    Bridgeland,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub bound: Option<u32>,
    pub rcharge_scale: Option<Q>,
    pub window: Option<u32>,
}

/// Closed loops, each a list of samples in the path-document layout.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopsDoc {
    pub loops: Vec<Vec<Vec<Complex>>>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("document error: {0}")]
    Document(String),
    #[error("check failed")]
    Failed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Document(_) => 2,
            CliError::Failed => 1,
        }
    }
}

/// `p/q`, or just `p` for integers.
fn show(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        q.to_string()
    }
}

fn doc_err(e: impl std::fmt::Display) -> CliError {
    CliError::Document(e.to_string())
}

/// Settings after the config file and the bound override.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub options: CatalogOptions,
    pub window: u32,
}

impl Settings {
    pub fn resolve(config: Option<&Path>, bound_override: Option<&str>) -> Result<Settings, CliError> {
        let cfg: Config = match config {
            Some(p) => toml::from_str(&std::fs::read_to_string(p).map_err(doc_err)?).map_err(doc_err)?,
            None => Config::default(),
        };
        let mut options = CatalogOptions::default();
        if let Some(b) = cfg.bound {
            options.bound = b;
        }
        if let Some(s) = cfg.rcharge_scale {
            options.rcharge_scale = s;
        }
        if let Some(b) = bound_override {
            options.bound = b.trim().parse().map_err(|_| CliError::Document(format!("{BOUND_VAR}={b} is not a bound")))?;
        }
        Ok(Settings { options, window: cfg.window.unwrap_or(DEFAULT_WINDOW) })
    }
}

/// Documents found in a directory; cross-references are checked on load.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub presentation: Option<CategoryPresentation>,
    pub charge: Option<ChargeTriple>,
    pub stability: Option<StabilityCondition>,
    pub path: Option<PathDoc>,
    pub loops: Option<LoopsDoc>,
    pub bridgeland: Option<BridgelandData>,
}

fn read_doc<T: DeserializeOwned>(dir: &Path, name: &str) -> Result<Option<T>, CliError> {
    let p = dir.join(name);
    if !p.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(&p).map_err(|e| CliError::Document(format!("{}: {e}", p.display())))?;
    serde_json::from_str(&text).map(Some).map_err(|e| CliError::Document(format!("{}: {e}", p.display())))
}

impl Workspace {
    pub fn load(dir: &Path) -> Result<Workspace, CliError> {
        if !dir.is_dir() {
            return Err(CliError::Document(format!("{} is not a directory", dir.display())));
        }
        let ws = Workspace {
            presentation: read_doc(dir, PRESENTATION_FILE)?,
            charge: read_doc(dir, CHARGE_FILE)?,
            stability: read_doc(dir, STABILITY_FILE)?,
            path: read_doc(dir, PATH_FILE)?,
            loops: read_doc(dir, LOOPS_FILE)?,
            bridgeland: read_doc(dir, BRIDGELAND_FILE)?,
        };
        if let Some(c) = &ws.presentation {
            c.validate().map_err(doc_err)?;
            for r in ws.charge.iter().chain(ws.stability.as_ref().map(|s| &s.triple)) {
                r.check_ids(c).map_err(doc_err)?;
            }
        }
        Ok(ws)
    }

    fn presentation(&self) -> Result<&CategoryPresentation, CliError> {
        self.presentation.as_ref().ok_or_else(|| CliError::Document(format!("missing {PRESENTATION_FILE}")))
    }

    /// The stability document's triple, else the charge document.
    fn triple(&self) -> Result<&ChargeTriple, CliError> {
        self.stability
            .as_ref()
            .map(|s| &s.triple)
            .or(self.charge.as_ref())
            .ok_or_else(|| CliError::Document(format!("missing {STABILITY_FILE} and {CHARGE_FILE}")))
    }

    /// The stability document, else the one derived from the charge document.
    fn stability(&self, out: &mut Report) -> Result<StabilityCondition, CliError> {
        if let Some(s) = &self.stability {
            return Ok(s.clone());
        }
        let (s, missing) = derive_stability(self.triple()?, self.presentation()?).map_err(doc_err)?;
        out.human(format!("stability derived from {CHARGE_FILE}"));
        for m in missing {
            out.human(format!("no filtration found for {m}"));
        }
        Ok(s)
    }
}

/// Collected output of one command.
#[derive(Debug, Default)]
pub struct Report {
    pub machine: Vec<String>,
    pub human: Vec<String>,
}

impl Report {
    fn kv(&mut self, k: &str, v: impl std::fmt::Display) {
        self.machine.push(format!("{k}={v}"));
    }

    fn human(&mut self, line: impl Into<String>) {
        self.human.push(line.into());
    }

    fn list(&mut self, k: &str, items: &[String]) {
        self.kv(k, items.join(","));
    }
}

fn verdict(rep: &mut Report, pass: bool) -> Result<(), CliError> {
    rep.kv("result", if pass { "pass" } else { "fail" });
    if pass {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(doc_err)?;
    std::fs::write(path, text + "\n").map_err(|e| CliError::Document(format!("{}: {e}", path.display())))
}

fn build(example: &str, settings: &Settings, out: &Path, rep: &mut Report) -> Result<(), CliError> {
    let (n, d, charge) = match example {
        "a2-z3-walcher" => (2, 3, Some(false)),
        "a2-z3-mirror" => (2, 3, Some(true)),
        other => {
            let (n, d) = other
                .strip_prefix("an-zd:")
                .and_then(|s| s.split_once(','))
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| CliError::Document(format!("unknown example `{other}`")))?;
            (n, d, None)
        }
    };
    let catalog = Catalog::build(n, d, &settings.options).map_err(doc_err)?;
    let c = &catalog.presentation;
    std::fs::create_dir_all(out).map_err(doc_err)?;
    write_json(&out.join(PRESENTATION_FILE), c)?;
    rep.kv("example", example);
    rep.kv("bound", settings.options.bound);
    rep.kv("objects", c.objects.len());
    rep.kv("arrows", c.proper_arrows().count());
    rep.kv("triangles", c.triangles.len());
    rep.kv("written", out.join(PRESENTATION_FILE).display());
    rep.human(format!("{example}: {} objects, {} arrows", c.objects.len(), c.proper_arrows().count()));
    if let Some(mirror) = charge {
        let w = walcher_triple(c).map_err(doc_err)?;
        let r = if mirror { tau(&w) } else { w };
        write_json(&out.join(CHARGE_FILE), &r)?;
        rep.kv("written", out.join(CHARGE_FILE).display());
    }
    Ok(())
}

fn check(kind: CheckKind, ws: &Workspace, settings: &Settings, rep: &mut Report) -> Result<(), CliError> {
    let c = ws.presentation()?;
    rep.kv("check", format!("{kind:?}").to_lowercase());
    match kind {
        CheckKind::Triple => {
            let r = ws.triple()?;
            let t = validate_triple(r, c).map_err(doc_err)?;
            rep.list("shift_phase", &t.shift_phase);
            rep.list("polar_form", &t.polar_form);
            rep.list("degree_phase", &t.degree_phase);
            rep.human(format!("triple conditions: {t:?}"));
            verdict(rep, t.passed())
        }
        CheckKind::Maslov => {
            let r = ws.triple()?;
            let ms = maslov_indices(r, c).map_err(doc_err)?;
            rep.kv("loops", ms.len());
            let bad: Vec<_> = ms.iter().filter(|(_, m)| !m.is_zero()).collect();
            rep.kv("nonzero", bad.len());
            if let Some((l, m)) = bad.iter().min_by(|a, b| a.1.cmp(&b.1)) {
                rep.kv("witness", l.triangle.join(","));
                rep.kv("witness_index", show(m));
                rep.human(format!("basic loop {} has Maslov index {m}", l.triangle.join(" ")));
            }
            verdict(rep, bad.is_empty())
        }
        CheckKind::Liftable => {
            let r = ws.triple()?;
            let t = validate_triple(r, c).map_err(doc_err)?;
            rep.kv("triple", if t.passed() { "pass" } else { "fail" });
            match build_z_lift(c, r, settings.window) {
                Ok(l) => {
                    let lr = l.report().map_err(doc_err)?;
                    rep.kv("window", l.window);
                    rep.kv("lift_objects", l.objects.len());
                    rep.kv("cone_checks", l.cone_checks);
                    let partition = lr.checks.get("hom_partition").copied().unwrap_or(false);
                    rep.kv("hom_partition", partition);
                    rep.human(format!("lift has {} objects within window {}", l.objects.len(), l.window));
                    verdict(rep, partition)
                }
                Err(LiftError::MaslovObstruction { triangle, index }) => {
                    rep.kv("obstruction", triangle.join(","));
                    rep.kv("witness_index", show(&index));
                    rep.human(format!("triangle {} obstructs the lift", triangle.join(" ")));
                    verdict(rep, false)
                }
                Err(LiftError::InvalidTriple(e)) => {
                    rep.human(format!("invalid triple: {e}"));
                    verdict(rep, false)
                }
                Err(e) => Err(doc_err(e)),
            }
        }
        CheckKind::Stability => {
            let s = ws.stability(rep)?;
            let catalog = match &c.source {
                Some(src) => Some(Catalog::from_source(src, settings.options.rcharge_scale.clone()).map_err(doc_err)?),
                None => None,
            };
            let v = validate_stability(&s, c, catalog.as_ref()).map_err(doc_err)?;
            for (i, ok) in v.conditions().iter().enumerate() {
                rep.kv(&format!("condition{}", i + 1), if *ok { "pass" } else { "fail" });
            }
            rep.list("unstable", &s.hn.keys().cloned().collect::<Vec<_>>());
            rep.human(format!("stability report: {v:?}"));
            verdict(rep, v.passed())
        }
        CheckKind::Bridgeland => {
            let s = ws.stability(rep)?;
            let l = match build_z_lift(c, &s.triple, settings.window) {
                Ok(l) => l,
                Err(e @ (LiftError::MaslovObstruction { .. } | LiftError::InvalidTriple(_))) => {
                    rep.human(format!("no lift: {e}"));
                    return verdict(rep, false);
                }
                Err(e) => return Err(doc_err(e)),
            };
            let data = match &ws.bridgeland {
                Some(b) => b.clone(),
                None => BridgelandData::from_stability(&s, &l).map_err(doc_err)?,
            };
            let b = check_bridgeland(&l, &data, None).map_err(doc_err)?;
            for (name, ok) in ["a", "b", "c", "d"].iter().zip(b.clauses()) {
                rep.kv(&format!("clause_{name}"), if ok { "pass" } else { "fail" });
            }
            rep.list("hom_order", &b.hom_order);
            rep.human(format!("bridgeland report: {b:?}"));
            verdict(rep, b.passed())
        }
    }
}

fn offsets(prefix: &str, o: &LoopOutcome, rep: &mut Report) {
    rep.kv(&format!("{prefix}.base_identity"), o.base_identity);
    for (k, v) in &o.offsets {
        rep.kv(&format!("{prefix}.offset.{k}"), show(v));
    }
}

fn monodromy(ws: &Workspace, generators: bool, rep: &mut Report) -> Result<(), CliError> {
    let c = ws.presentation()?;
    let s = ws.stability(rep)?;
    let loops = if generators {
        basic_monodromy_loops(&s.triple.z)
    } else {
        ws.loops.clone().ok_or_else(|| CliError::Document(format!("missing {LOOPS_FILE}")))?.loops
    };
    let m = monodromy_word(&s, &loops, c).map_err(|e| {
        let dbg = format!("{e:?}");
        let kind: String = dbg.chars().take_while(|ch| ch.is_alphanumeric()).collect();
        rep.kv("error_kind", kind);
        doc_err(e)
    })?;
    rep.kv("loops", m.per_loop.len());
    for (i, o) in m.per_loop.iter().enumerate() {
        offsets(&format!("loop{i}"), o, rep);
    }
    offsets("composite", &m.composite, rep);
    rep.kv("composite", if m.composite.base_identity { "identity" } else { "nonidentity" });
    let lifted = match &m.lifted_offset {
        Some(q) if q.is_zero() => "0".to_string(),
        Some(q) if !q.is_negative() => format!("+{}", show(q)),
        Some(q) => show(q),
        None => "none".to_string(),
    };
    rep.kv("lifted_offset", &lifted);
    rep.human(format!(
        "composite of {} loops is {} on the base, lifted offset {lifted}",
        m.per_loop.len(),
        if m.composite.base_identity { "the identity" } else { "not the identity" }
    ));
    Ok(())
}

fn plot(ws: &Workspace, svg: &Path, rep: &mut Report) -> Result<(), CliError> {
    let r = ws.charge.as_ref().ok_or_else(|| CliError::Document(format!("missing {CHARGE_FILE}")))?;
    let text = render_svg(r, ws.path.as_ref()).map_err(doc_err)?;
    std::fs::write(svg, &text).map_err(|e| CliError::Document(format!("{}: {e}", svg.display())))?;
    rep.kv("vectors", r.v.len());
    rep.kv("path", ws.path.is_some());
    rep.kv("written", svg.display());
    Ok(())
}

/// Runs one command; `bound_override` is the value of [`BOUND_VAR`].
pub fn execute(cli: &Cli, bound_override: Option<&str>, rep: &mut Report) -> Result<(), CliError> {
    let settings = Settings::resolve(cli.config.as_deref(), bound_override)?;
    match &cli.command {
        Command::Build { example } => build(example, &settings, cli.out.as_deref().unwrap_or(Path::new(".")), rep),
        Command::Check { kind, dir } => check(*kind, &Workspace::load(dir)?, &settings, rep),
        Command::Plot { dir } => {
            let svg = cli.out.clone().unwrap_or_else(|| dir.join("plot.svg"));
            plot(&Workspace::load(dir)?, &svg, rep)
        }
        Command::Monodromy { dir, generators } => monodromy(&Workspace::load(dir)?, *generators, rep),
    }
}

/// Parses `args` (program name first), runs, prints, and returns the exit code.
pub fn run<I, T>(args: I, bound_override: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut rep = Report::default();
    let res = execute(&cli, bound_override, &mut rep);
    if let Err(CliError::Document(msg)) = &res {
        rep.kv("error", msg.replace('\n', " "));
        rep.human(format!("error: {msg}"));
    }
    let code = res.as_ref().map_or_else(CliError::exit_code, |_| 0);
    rep.kv("exit", code);
    let machine = rep.machine.join("\n") + "\n";
    for line in &rep.human {
        let _ = writeln!(err, "{line}");
    }
    let _ = out.write_all(machine.as_bytes());
    if let (Some(path), Command::Check { .. } | Command::Monodromy { .. }) = (&cli.out, &cli.command) {
        if std::fs::write(path, &machine).is_err() {
            let _ = writeln!(err, "could not write {}", path.display());
            return 2;
        }
    }
    code
}

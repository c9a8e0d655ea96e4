use std::path::Path;

use cyclic_stab::catgraph::CategoryPresentation;
use cyclic_stab::charge::{tau, validate_triple, ChargeTriple, Complex};
use cyclic_stab::cli::{render_svg, run, LoopsDoc};
use cyclic_stab::mf::{Catalog, CatalogOptions};
use cyclic_stab::polymat::Q;
use cyclic_stab::stab::{basic_monodromy_loops, rotation_path, PathDoc};
use tempfile::TempDir;

struct Outcome {
    code: i32,
    machine: String,
    human: String,
}

impl Outcome {
    fn get(&self, key: &str) -> Vec<&str> {
        self.machine.lines().filter_map(|l| l.strip_prefix(key)?.strip_prefix('=')).collect()
    }

    fn one(&self, key: &str) -> &str {
        let v = self.get(key);
        assert_eq!(v.len(), 1, "{key} in\n{}", self.machine);
        v[0]
    }
}

fn cli_env(args: &[&str], bound: Option<&str>) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("cyclic-stab").chain(args.iter().copied()), bound, &mut out, &mut err);
    Outcome { code, machine: String::from_utf8(out).unwrap(), human: String::from_utf8(err).unwrap() }
}

fn cli(args: &[&str]) -> Outcome {
    cli_env(args, None)
}

fn built(example: &str) -> TempDir {
    let dir = TempDir::new().unwrap();
    let o = cli(&["build", example, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.human);
    dir
}

fn read<T: serde::de::DeserializeOwned>(dir: &Path, name: &str) -> T {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

fn p(dir: &TempDir) -> &str {
    dir.path().to_str().unwrap()
}

#[test]
fn build_walcher_round_trips() {
    let dir = built("a2-z3-walcher");
    let c: CategoryPresentation = read(dir.path(), "presentation.json");
    let r: ChargeTriple = read(dir.path(), "charge.json");
    let catalog = Catalog::build(2, 3, &CatalogOptions::default()).unwrap();
    assert_eq!(c, catalog.presentation);
    assert_eq!(c.objects.len(), 6);
    for o in &c.objects {
        let s = &c.shift[o];
        assert_ne!(s, o);
        assert_eq!(&c.shift[s], o);
    }
    assert!(validate_triple(&r, &c).unwrap().passed());
    let text = serde_json::to_string_pretty(&r).unwrap() + "\n";
    assert_eq!(std::fs::read_to_string(dir.path().join("charge.json")).unwrap(), text);
}

#[test]
fn build_mirror_and_an() {
    let w = built("a2-z3-walcher");
    let m = built("a2-z3-mirror");
    let rw: ChargeTriple = read(w.path(), "charge.json");
    let rm: ChargeTriple = read(m.path(), "charge.json");
    assert_eq!(rm, tau(&rw));

    let a = built("an-zd:3,4");
    let c: CategoryPresentation = read(a.path(), "presentation.json");
    assert_eq!(c.objects.len(), 12);
    assert!(!a.path().join("charge.json").exists());

    let o = cli(&["build", "e8", "--out", p(&a)]);
    assert_eq!(o.code, 2);
    assert!(o.one("error").contains("unknown example"));
    assert_eq!(cli(&["build", "an-zd:3,3", "--out", p(&a)]).code, 2);
}

#[test]
fn checks_on_walcher_pass() {
    let dir = built("a2-z3-walcher");
    for kind in ["triple", "liftable", "maslov", "stability", "bridgeland"] {
        let o = cli(&["check", kind, p(&dir)]);
        assert_eq!((o.code, o.one("result")), (0, "pass"), "{kind}: {}{}", o.machine, o.human);
        assert_eq!(o.one("check"), kind);
    }
    let o = cli(&["check", "liftable", p(&dir)]);
    assert_eq!(o.one("hom_partition"), "true");
    assert_eq!(o.one("lift_objects"), "30");
}

#[test]
fn checks_on_mirror_fail() {
    let dir = built("a2-z3-mirror");
    let o = cli(&["check", "maslov", p(&dir)]);
    assert_eq!(o.code, 1);
    assert_eq!(o.one("witness_index"), "-1");
    assert_eq!(o.one("witness").split(',').count(), 3);
    let o = cli(&["check", "liftable", p(&dir)]);
    assert_eq!(o.code, 1);
    assert!(!o.one("obstruction").is_empty());
    assert_eq!(cli(&["check", "triple", p(&dir)]).code, 0);
}

#[test]
fn document_errors_exit_two() {
    let dir = built("a2-z3-walcher");
    std::fs::write(dir.path().join("stability.json"), "{\"triple\": ").unwrap();
    let o = cli(&["check", "stability", p(&dir)]);
    assert_eq!(o.code, 2);
    assert!(o.one("error").contains("stability.json"));

    let dir = built("a2-z3-walcher");
    let mut r: ChargeTriple = read(dir.path(), "charge.json");
    r.phi.insert("M9_9".into(), Q::one());
    std::fs::write(dir.path().join("charge.json"), serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(cli(&["check", "triple", p(&dir)]).code, 2);

    let empty = TempDir::new().unwrap();
    assert_eq!(cli(&["check", "triple", p(&empty)]).code, 2);
    assert_eq!(cli(&["check", "triple", "/nonexistent/dir"]).code, 2);
    assert_eq!(cli(&["check", "nonsense", p(&empty)]).code, 2);
}

#[test]
fn exit_codes_are_stable() {
    let dir = built("a2-z3-mirror");
    let a = cli(&["check", "maslov", p(&dir)]);
    let b = cli(&["check", "maslov", p(&dir)]);
    assert_eq!((a.code, &a.machine), (b.code, &b.machine));
}

#[test]
fn report_copy_goes_to_out() {
    let dir = built("a2-z3-walcher");
    let file = dir.path().join("report.txt");
    let o = cli(&["check", "triple", p(&dir), "--out", file.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(file).unwrap(), o.machine);
}

#[test]
fn monodromy_commands() {
    let dir = built("a2-z3-walcher");
    let o = cli(&["monodromy", p(&dir), "--generators"]);
    assert_eq!(o.code, 0, "{}", o.human);
    assert_eq!(o.one("composite"), "identity");
    assert_eq!(o.one("lifted_offset"), "+2");
    assert_eq!(o.one("loops"), "3");
    assert_eq!(o.one("loop0.base_identity"), "false");

    let r: ChargeTriple = read(dir.path(), "charge.json");
    let l = basic_monodromy_loops(&r.z).remove(0);
    let back: Vec<Vec<Complex>> = l.iter().rev().skip(1).cloned().chain([r.z.clone()]).collect();
    let doc = LoopsDoc { loops: vec![l.clone(), l.clone(), back.clone(), back] };
    std::fs::write(dir.path().join("loops.json"), serde_json::to_string(&doc).unwrap()).unwrap();
    let o = cli(&["monodromy", p(&dir)]);
    assert_eq!((o.one("composite"), o.one("lifted_offset")), ("identity", "0"));

    let doc = LoopsDoc { loops: vec![rotation_path(&r.z, 0, 0.1, 3)] };
    std::fs::write(dir.path().join("loops.json"), serde_json::to_string(&doc).unwrap()).unwrap();
    let o = cli(&["monodromy", p(&dir)]);
    assert_eq!(o.code, 2);
    assert_eq!(o.one("error_kind"), "LoopNotClosed");
}

#[test]
fn config_and_bound_override() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "bound = 10\nwindow = 1\n").unwrap();
    let out = dir.path().join("ws");
    let args = ["build", "a2-z3-walcher", "--out", out.to_str().unwrap(), "--config", cfg.to_str().unwrap()];
    assert_eq!(cli(&args).one("bound"), "10");
    assert_eq!(cli_env(&args, Some("12")).one("bound"), "12");
    assert_eq!(cli_env(&args, Some("twelve")).code, 2);
    let o = cli(&["check", "liftable", out.to_str().unwrap(), "--config", cfg.to_str().unwrap()]);
    assert_eq!((o.one("window"), o.one("lift_objects")), ("1", "18"));
    std::fs::write(&cfg, "bogus = 1\n").unwrap();
    assert_eq!(cli(&args).code, 2);
}

#[test]
fn binary_reads_the_bound_variable() {
    let dir = TempDir::new().unwrap();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_cyclic-stab"))
        .args(["build", "a2-z3-walcher", "--out", p(&dir)])
        .env("CYCLIC_STAB_BOUND", "9")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().lines().any(|l| l == "bound=9"));
    let c: CategoryPresentation = read(dir.path(), "presentation.json");
    assert_eq!(c.source.unwrap().bound, 9);
}

/// Endpoint of the unit vector at phase `phi` (in units of pi), in pixels.
fn expected_tip(phi: f64) -> (String, String) {
    let a = phi * std::f64::consts::PI;
    (format!("{:.2}", 250.0 + 150.0 * a.cos()), format!("{:.2}", 250.0 - 150.0 * a.sin()))
}

fn attr<'a>(line: &'a str, name: &str) -> &'a str {
    let start = line.find(&format!(" {name}=\"")).unwrap() + name.len() + 3;
    &line[start..start + line[start..].find('"').unwrap()]
}

#[test]
fn walcher_plot_matches_phases() {
    let dir = built("a2-z3-walcher");
    let o = cli(&["plot", p(&dir)]);
    assert_eq!(o.code, 0);
    let svg = std::fs::read_to_string(dir.path().join("plot.svg")).unwrap();
    let tips: Vec<(String, String)> = svg
        .lines()
        .filter(|l| l.contains("class=\"charge\""))
        .map(|l| (attr(l, "x2").to_string(), attr(l, "y2").to_string()))
        .collect();
    // Walcher phases in id order M1_0, M1_1, M1_2, M2_0, M2_1, M2_2; unit masses.
    let phases = [1.0 / 6.0, 5.0 / 6.0, 1.5, 0.5, 7.0 / 6.0, 11.0 / 6.0];
    assert_eq!(tips, phases.map(expected_tip));
    let labels: Vec<&str> = svg.lines().filter(|l| l.starts_with("<text")).map(|l| &l[l.find('>').unwrap() + 1..l.find("</").unwrap()]).collect();
    assert_eq!(labels, ["M_1^1", "M_1^2", "M_1^3", "M_2^1", "M_2^2", "M_2^3"]);
    assert_eq!(svg.matches("class=\"pillar\"").count(), 1);
    assert_eq!(svg, include_str!("golden/walcher.svg"));
}

#[test]
fn empty_and_path_plots() {
    let r = ChargeTriple {
        lattice_rank: 1,
        v: Default::default(),
        z: vec![Complex::new(Q::one(), Q::zero())],
        phi: Default::default(),
        q: Default::default(),
    };
    let svg = render_svg(&r, None).unwrap();
    assert_eq!(svg.matches("class=\"axis\"").count(), 2);
    assert_eq!(svg.matches("class=\"pillar\"").count(), 1);
    assert!(!svg.contains("class=\"charge\""));

    let dir = built("a2-z3-walcher");
    let w: ChargeTriple = read(dir.path(), "charge.json");
    let path = PathDoc { samples: rotation_path(&w.z, 1, -0.25, 10) };
    std::fs::write(dir.path().join("path.json"), serde_json::to_string(&path).unwrap()).unwrap();
    let svg_file = dir.path().join("f.svg");
    let o = cli(&["plot", p(&dir), "--out", svg_file.to_str().unwrap()]);
    assert_eq!(o.one("path"), "true");
    let svg = std::fs::read_to_string(&svg_file).unwrap();
    let lines: Vec<&str> = svg.lines().filter(|l| l.contains("class=\"path\"")).collect();
    assert_eq!(lines.len(), 1);
    assert!(lines[0].contains("stroke-dasharray"));
    assert_eq!(attr(lines[0], "points").split(' ').count(), 11);
    assert_eq!(render_svg(&w, Some(&path)).unwrap(), svg);
}

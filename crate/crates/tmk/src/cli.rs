//! The `tmk` command line: argument parsing, dispatch to `tmk-core`, and
//! report rendering.
//!
//! Exit codes: 0 on success, 2 when an argument or input file cannot be
//! parsed, 3 when `obstruct` finds an obstruction, 4 when a mathematical
//! precondition of the requested operation fails, and 1 for internal
//! errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use tmk_core::bergman::{bergman_fine, coarsen_2dim};
use tmk_core::cycles::FanCycle;
use tmk_core::linear::{Int, IntVec};
use tmk_core::matroid::{elements, Matroid};
use tmk_core::modification::{self, elementary_contraction, pullback, pushforward, MatroidalContext, PLFunction};
use tmk_core::product::{matroidal_product, Chooser, ProductPolicy};
use tmk_core::realisability::obstruction_for_divisor;
use tmk_core::stable::stable_intersection;
use tmk_core::Error;

use crate::corpus::{cycle_file, CORPUS_MATROIDS, CYCLE_FILES};
use crate::formats::{
    cycle_from_json, cycle_to_json, facet_to_json, int_to_json, matroid_from_json, matroid_to_json, named_matroid, parse_json, ParseError,
    MATROID_BUILDERS,
};

/// Environment variable that overrides the contraction policy.
pub const POLICY_ENV: &str = "TMK_POLICY";

/// Exit code for success and for `obstruct` without an obstruction.
pub const EXIT_OK: i32 = 0;
/// Exit code for internal errors.
pub const EXIT_INTERNAL: i32 = 1;
/// Exit code for unparsable arguments or input files.
pub const EXIT_PARSE: i32 = 2;
/// Exit code for `obstruct` when the curve is obstructed.
pub const EXIT_OBSTRUCTED: i32 = 3;
/// Exit code for failed mathematical preconditions.
pub const EXIT_MATH: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "tmk", version, about = "Intersection theory on Bergman fans of matroids")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Print the rays and facets of the resulting cycle as plain text.
    #[arg(long, global = true)]
    emit_rays: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolicyArg {
    Smallest,
    Largest,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The Bergman fan of a matroid, fine or coarse.
    Bergman {
        /// Builder name (uniform:r,n, graphic:K4, fano, nonfano) or JSON file.
        #[arg(long)]
        matroid: String,
        /// Emit the coarse structure of a two dimensional fan.
        #[arg(long)]
        coarse: bool,
    },
    /// The coarse structure of a two dimensional Bergman fan.
    Coarsen {
        #[arg(long)]
        matroid: String,
    },
    /// Checks the balancing condition of a cycle.
    Balanced {
        /// Cycle JSON file or bundled cycle name.
        #[arg(long)]
        cycle: String,
    },
    /// The elementary contraction removing one element.
    Contract {
        #[arg(long)]
        matroid: String,
        #[arg(long)]
        element: usize,
    },
    /// Pushes a cycle forward along an elementary contraction.
    Push {
        #[arg(long)]
        matroid: String,
        #[arg(long)]
        element: usize,
        #[arg(long)]
        cycle: String,
    },
    /// Pulls a cycle back along an elementary contraction.
    Pull {
        #[arg(long)]
        matroid: String,
        #[arg(long)]
        element: usize,
        #[arg(long)]
        cycle: String,
    },
    /// A divisor: of the modification function of a contraction (with
    /// --matroid and --element), or of a maximum of linear functions on a
    /// cycle (with --cycle and --max).
    Divisor {
        #[arg(long, requires = "element", conflicts_with_all = ["cycle", "max"])]
        matroid: Option<String>,
        #[arg(long)]
        element: Option<usize>,
        #[arg(long, requires = "max")]
        cycle: Option<String>,
        /// A linear function as comma separated integer coefficients;
        /// repeat for each term of the maximum.
        #[arg(long = "max", allow_hyphen_values = true)]
        max: Vec<String>,
    },
    /// Stable intersection of two cycles in the same ambient space.
    Stable {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// The intersection product of two cycles in the Bergman fan of a
    /// matroid.
    Intersect {
        #[arg(long)]
        matroid: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Contraction policy; overrides TMK_POLICY.
        #[arg(long, value_enum)]
        policy: Option<PolicyArg>,
        /// Element to contract first.
        #[arg(long)]
        first: Option<usize>,
    },
    /// Tests a curve against a divisor for non-realisability.
    Obstruct {
        #[arg(long)]
        matroid: String,
        #[arg(long)]
        divisor: String,
        #[arg(long)]
        curve: String,
        #[arg(long, value_enum)]
        policy: Option<PolicyArg>,
        #[arg(long)]
        first: Option<usize>,
    },
    /// Lists the bundled matroids and cycle files, or prints one file.
    Corpus {
        /// Name of a bundled cycle file to print.
        #[arg(long)]
        show: Option<String>,
    },
}

enum Failure {
    Parse(ParseError),
    Math(Error),
    Usage(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

/// What a command produced.
struct Report {
    json: Value,
    text: String,
    /// The cycle behind the report, for `--emit-rays`.
    cycle: Option<FanCycle>,
    exit: i32,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Report { json, text, cycle: None, exit: EXIT_OK }
    }

    fn of_cycle(c: FanCycle, json: Value, heading: &str) -> Self {
        let text = format!("{heading}\n{}", cycle_text(&c));
        Report { json, text, cycle: Some(c), exit: EXIT_OK }
    }
}

/// Runs the command line `args` (including the program name), reading the
/// policy override from the process environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_policy = std::env::var(POLICY_ENV).ok();
    run_with_env(args, env_policy.as_deref(), out, err)
}

/// Runs the command line with an explicit value for the policy variable.
pub fn run_with_env<I, T>(args: I, env_policy: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_PARSE,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let result = dispatch(&cli.command, env_policy).and_then(|r| {
        if cli.emit_rays && r.cycle.is_none() {
            Err(Failure::Usage(String::from("--emit-rays applies only to commands whose result is a cycle")))
        } else {
            Ok(r)
        }
    });
    match result {
        Ok(report) => {
            let body = if cli.emit_rays {
                ray_dump(report.cycle.as_ref().expect("checked above"))
            } else {
                match cli.format {
                    Format::Json => {
                        let mut s = serde_json::to_string_pretty(&report.json).expect("JSON values serialise");
                        s.push('\n');
                        s
                    }
                    Format::Text => report.text,
                }
            };
            let _ = out.write_all(body.as_bytes());
            report.exit
        }
        Err(Failure::Parse(e)) => {
            let _ = writeln!(err, "parse error: {e}");
            EXIT_PARSE
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "usage error: {m}");
            EXIT_PARSE
        }
        Err(Failure::Math(Error::Internal(m))) => {
            let _ = writeln!(err, "internal error: {m}");
            EXIT_INTERNAL
        }
        Err(Failure::Math(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_MATH
        }
    }
}

fn load_matroid(name: &str) -> Result<Matroid, ParseError> {
    if let Some(m) = named_matroid(name) {
        return m;
    }
    let text = std::fs::read_to_string(name)
        .map_err(|e| ParseError::new(name, format!("not a matroid builder name, and the file cannot be read: {e}")))?;
    matroid_from_json(name, &parse_json(name, &text)?)
}

/// Reads a cycle from a file, falling back to the bundled file of the same
/// name when no such file exists.
fn load_cycle(arg: &str) -> Result<FanCycle, ParseError> {
    let text = if Path::new(arg).exists() {
        std::fs::read_to_string(arg).map_err(|e| ParseError::new(arg, format!("cannot read file: {e}")))?
    } else if let Some(f) = cycle_file(arg) {
        String::from(f.text)
    } else {
        return Err(ParseError::new(arg, "no such file or bundled cycle"));
    };
    cycle_from_json(arg, &parse_json(arg, &text)?)
}

fn parse_linear(arg: &str) -> Result<IntVec, ParseError> {
    arg.split(',')
        .map(|s| s.trim().parse::<Int>())
        .collect::<Result<IntVec, _>>()
        .map_err(|_| ParseError::new(format!("--max {arg:?}"), "expected comma separated integers"))
}

fn resolve_policy(flag: Option<PolicyArg>, first: Option<usize>, env: Option<&str>) -> Result<ProductPolicy, Failure> {
    let chooser = match flag {
        Some(PolicyArg::Smallest) => Chooser::Smallest,
        Some(PolicyArg::Largest) => Chooser::Largest,
        None => match env {
            None => Chooser::Smallest,
            Some(v) => v
                .trim()
                .parse()
                .map_err(|_| ParseError::new(POLICY_ENV, format!("{v:?} is not a policy; expected \"smallest\" or \"largest\"")))?,
        },
    };
    let policy = ProductPolicy::new(chooser);
    Ok(match first {
        Some(f) => policy.with_first(f),
        None => policy,
    })
}

fn check_ambient(c: &FanCycle, ctx: &MatroidalContext, what: &str) -> Result<(), Failure> {
    if c.ambient_dim() != ctx.ambient_dim() {
        return Err(Failure::Math(Error::Precondition(format!(
            "{what} lives in dimension {}, the fan of the matroid in dimension {}",
            c.ambient_dim(),
            ctx.ambient_dim()
        ))));
    }
    Ok(())
}

fn dispatch(cmd: &Command, env_policy: Option<&str>) -> Result<Report, Failure> {
    match cmd {
        Command::Bergman { matroid, coarse } => {
            let m = load_matroid(matroid)?;
            if *coarse {
                coarse_report(&m)
            } else {
                Ok(fine_report(&m))
            }
        }
        Command::Coarsen { matroid } => coarse_report(&load_matroid(matroid)?),
        Command::Balanced { cycle } => {
            let c = load_cycle(cycle)?;
            let report = c.is_balanced();
            let failing: Vec<Value> = report
                .failing
                .iter()
                .map(|w| {
                    let mut f = facet_to_json(w, &Int::from(1));
                    f.remove("weight");
                    Value::Object(f)
                })
                .collect();
            let mut text = format!("balanced: {}\n", report.balanced);
            for w in &report.failing {
                text.push_str(&format!("  unbalanced at {}\n", cone_text(w.rays(), w.lineality())));
            }
            Ok(Report::new(json!({ "balanced": report.balanced, "failing_walls": failing }), text))
        }
        Command::Contract { matroid, element } => {
            let ctx = MatroidalContext::new(load_matroid(matroid)?)?;
            let c = elementary_contraction(&ctx, *element)?;
            let target = c.target();
            let json = json!({
                "element": c.element(),
                "kernel_coordinate": c.kernel_coordinate(),
                "target": matroid_to_json(target.matroid()),
                "target_labels": target.labels(),
                "divisor": cycle_to_json(c.divisor()),
            });
            let text = format!(
                "contraction of element {} (coordinate {})\ntarget matroid: rank {} on {} elements, labels {:?}\ndivisor:\n{}",
                c.element(),
                c.kernel_coordinate(),
                target.matroid().rank(),
                target.matroid().ground_size(),
                target.labels(),
                cycle_text(c.divisor())
            );
            let mut r = Report::new(json, text);
            r.cycle = Some(c.divisor().clone());
            Ok(r)
        }
        Command::Push { matroid, element, cycle } => {
            let m = load_matroid(matroid)?;
            let a = load_cycle(cycle)?;
            let ctx = MatroidalContext::new(m)?;
            check_ambient(&a, &ctx, "the cycle")?;
            let c = elementary_contraction(&ctx, *element)?;
            let p = pushforward(&c, &a)?;
            let json = cycle_to_json(&p);
            Ok(Report::of_cycle(p, json, &format!("pushforward along element {element}")))
        }
        Command::Pull { matroid, element, cycle } => {
            let m = load_matroid(matroid)?;
            let x = load_cycle(cycle)?;
            let ctx = MatroidalContext::new(m)?;
            let c = elementary_contraction(&ctx, *element)?;
            if x.ambient_dim() != c.target().ambient_dim() {
                return Err(Failure::Math(Error::Precondition(format!(
                    "the cycle lives in dimension {}, the target of the contraction in dimension {}",
                    x.ambient_dim(),
                    c.target().ambient_dim()
                ))));
            }
            let p = pullback(&c, &x)?;
            let json = cycle_to_json(&p);
            Ok(Report::of_cycle(p, json, &format!("pullback along element {element}")))
        }
        Command::Divisor { matroid, element, cycle, max } => {
            let d = match (matroid, element, cycle) {
                (Some(m), Some(i), None) => {
                    let m = load_matroid(m)?;
                    let ctx = MatroidalContext::new(m)?;
                    let c = elementary_contraction(&ctx, *i)?;
                    modification::divisor(&c.modification_function())?
                }
                (None, None, Some(cycle)) => {
                    let a = load_cycle(cycle)?;
                    let linears = max.iter().map(|s| parse_linear(s)).collect::<Result<Vec<_>, _>>()?;
                    if let Some(l) = linears.iter().find(|l| l.len() != a.ambient_dim()) {
                        return Err(Failure::Parse(ParseError::new(
                            "--max",
                            format!("expected {} coefficients, found {}", a.ambient_dim(), l.len()),
                        )));
                    }
                    modification::divisor(&PLFunction::max_of_linear(&a, &linears)?)?
                }
                _ => return Err(Failure::Usage(String::from("give either --matroid and --element, or --cycle with at least one --max"))),
            };
            let json = cycle_to_json(&d);
            Ok(Report::of_cycle(d, json, "divisor"))
        }
        Command::Stable { a, b } => {
            let a = load_cycle(a)?;
            let b = load_cycle(b)?;
            let s = stable_intersection(&a, &b)?;
            let mut json = cycle_to_json(&s);
            if s.dim() == 0 {
                json["vertices"] = vertex_table(&s);
            }
            Ok(Report::of_cycle(s, json, "stable intersection"))
        }
        Command::Intersect { matroid, a, b, policy, first } => {
            let m = load_matroid(matroid)?;
            let a = load_cycle(a)?;
            let b = load_cycle(b)?;
            let policy = resolve_policy(*policy, *first, env_policy)?;
            let ctx = MatroidalContext::new(m)?;
            check_ambient(&a, &ctx, "cycle a")?;
            check_ambient(&b, &ctx, "cycle b")?;
            let p = matroidal_product(&ctx, &a, &b, &policy)?;
            let mut json = cycle_to_json(&p);
            json["policy"] = policy_json(&policy);
            let mut heading = String::from("intersection product");
            if p.dim() == 0 {
                json["vertices"] = vertex_table(&p);
                heading.push_str(&format!("\nvertex multiplicity at the origin: {}", p.origin_weight()));
            }
            Ok(Report::of_cycle(p, json, &heading))
        }
        Command::Obstruct { matroid, divisor, curve, policy, first } => {
            let m = load_matroid(matroid)?;
            let d = load_cycle(divisor)?;
            let c = load_cycle(curve)?;
            let policy = resolve_policy(*policy, *first, env_policy)?;
            let v = obstruction_for_divisor(&m, &d, &c, &policy)?;
            let json = json!({
                "obstructed": v.obstructed,
                "total_multiplicity": int_to_json(&v.total_multiplicity),
                "u24_free": v.u24_free,
                "explanation": v.explanation,
            });
            let text = format!(
                "obstructed: {}\nmultiplicity: {}\nno U(2,4) minor: {}\nverdict: {}\n",
                v.obstructed, v.total_multiplicity, v.u24_free, v.explanation
            );
            let mut r = Report::new(json, text);
            r.exit = if v.obstructed { EXIT_OBSTRUCTED } else { EXIT_OK };
            Ok(r)
        }
        Command::Corpus { show } => match show {
            Some(name) => {
                let f = cycle_file(name).ok_or_else(|| ParseError::new(format!("--show {name:?}"), "no bundled cycle of this name"))?;
                let v = parse_json(f.name, f.text)?;
                let c = cycle_from_json(f.name, &v)?;
                let text = format!("{} (in the fan of {})\n{}", f.name, f.matroid, cycle_text(&c));
                let mut r = Report::new(v, text);
                r.cycle = Some(c);
                Ok(r)
            }
            None => Ok(corpus_report()),
        },
    }
}

fn fine_report(m: &Matroid) -> Report {
    let fan = bergman_fine(m);
    let facets: Vec<Value> = fan
        .cones()
        .iter()
        .zip(fan.chains())
        .map(|(cone, chain)| {
            let mut f = facet_to_json(cone, &Int::from(1));
            let flats: Vec<Vec<usize>> = chain.iter().map(|&s| elements(s)).collect();
            f.insert("chain".into(), json!(flats));
            Value::Object(f)
        })
        .collect();
    let mut json = Map::new();
    json.insert("ambient".into(), json!(fan.ambient_dim()));
    json.insert("dim".into(), json!(fan.dim()));
    json.insert("facets".into(), Value::Array(facets));
    json.insert("ray_count".into(), json!(fan.rays().len()));
    if let Some(note) = fan.note() {
        json.insert("note".into(), json!(note));
    }
    let mut text = format!(
        "fine Bergman fan: {} rays, {} facets, dimension {} in R^{}\n",
        fan.rays().len(),
        fan.cones().len(),
        fan.dim(),
        fan.ambient_dim()
    );
    if let Some(note) = fan.note() {
        text.push_str(&format!("note: {note}\n"));
    }
    for (cone, chain) in fan.cones().iter().zip(fan.chains()) {
        let flats: Vec<String> = chain.iter().map(|&s| set_text(&elements(s))).collect();
        text.push_str(&format!("  {}  chain {}\n", cone_text(cone.rays(), cone.lineality()), flats.join(" < ")));
    }
    Report { json: Value::Object(json), text, cycle: Some(fan.cycle()), exit: EXIT_OK }
}

fn coarse_report(m: &Matroid) -> Result<Report, Failure> {
    let coarse = coarsen_2dim(&bergman_fine(m))?;
    let mut json = cycle_to_json(&coarse.cycle);
    json["ray_count"] = json!(coarse.rays.len());
    let heading = format!("coarse Bergman fan: {} rays, {} facets", coarse.rays.len(), coarse.cycle.facets().len());
    Ok(Report::of_cycle(coarse.cycle, json, &heading))
}

fn corpus_report() -> Report {
    let builders: Vec<Value> = MATROID_BUILDERS.iter().map(|(n, d)| json!({ "name": n, "description": d })).collect();
    let mut cycles = Vec::new();
    let mut text = String::from("matroid builders:\n");
    for (n, d) in MATROID_BUILDERS {
        text.push_str(&format!("  {n:<12} {d}\n"));
    }
    text.push_str(&format!("corpus matroids: {}\ncycle files:\n", CORPUS_MATROIDS.join(" ")));
    for f in CYCLE_FILES {
        let v = parse_json(f.name, f.text).expect("bundled files are valid JSON");
        let note = v.get("note").cloned().unwrap_or(Value::Null);
        cycles.push(json!({
            "name": f.name,
            "matroid": f.matroid,
            "ambient": v["ambient"],
            "dim": v["dim"],
            "note": note,
        }));
        text.push_str(&format!("  {:<18} in {}: {}\n", f.name, f.matroid, note.as_str().unwrap_or("")));
    }
    Report::new(json!({ "matroids": builders, "corpus_matroids": CORPUS_MATROIDS, "cycles": cycles }), text)
}

fn policy_json(p: &ProductPolicy) -> Value {
    let chooser = match p.chooser {
        Chooser::Smallest => "smallest",
        Chooser::Largest => "largest",
    };
    json!({ "chooser": chooser, "first": p.first })
}

/// Vertex multiplicities of a zero dimensional fan cycle: at most the
/// origin, listed even when its multiplicity is zero.
fn vertex_table(c: &FanCycle) -> Value {
    json!([{ "point": vec![0; c.ambient_dim()], "multiplicity": int_to_json(&c.origin_weight()) }])
}

fn vec_text(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn set_text(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn cone_text(rays: &[IntVec], lineality: &[IntVec]) -> String {
    if rays.is_empty() && lineality.is_empty() {
        return String::from("the origin");
    }
    let rays: Vec<String> = rays.iter().map(|r| vec_text(r)).collect();
    let mut s = format!("rays [{}]", rays.join(" "));
    if !lineality.is_empty() {
        let lin: Vec<String> = lineality.iter().map(|r| vec_text(r)).collect();
        s.push_str(&format!(" lineality [{}]", lin.join(" ")));
    }
    s
}

fn cycle_text(c: &FanCycle) -> String {
    let mut s = format!("cycle of dimension {} in R^{} with {} facets\n", c.dim(), c.ambient_dim(), c.facets().len());
    for (cone, w) in c.facets() {
        s.push_str(&format!("  weight {w}: {}\n", cone_text(cone.rays(), cone.lineality())));
    }
    s
}

/// Plain text listing of the distinct rays of a cycle followed by its
/// facets as ray indices, lineality vectors, and weights.
fn ray_dump(c: &FanCycle) -> String {
    let mut rays: Vec<IntVec> = Vec::new();
    for (cone, _) in c.facets() {
        for r in cone.rays() {
            if !rays.contains(r) {
                rays.push(r.clone());
            }
        }
    }
    let join = |v: &[Int]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let mut s = format!("# ambient {} dim {}\n# rays\n", c.ambient_dim(), c.dim());
    for r in &rays {
        s.push_str(&join(r));
        s.push('\n');
    }
    s.push_str("# facets: weight | ray indices | lineality vectors\n");
    for (cone, w) in c.facets() {
        let idx: Vec<String> = cone.rays().iter().map(|r| rays.iter().position(|x| x == r).expect("collected above").to_string()).collect();
        let lin: Vec<String> = cone.lineality().iter().map(|l| join(l)).collect();
        s.push_str(&format!("{w} | {} | {}\n", idx.join(" "), lin.join(", ")));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str], env: Option<&str>) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["tmk"];
        argv.extend_from_slice(args);
        let code = run_with_env(argv, env, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn policy_resolution_order() {
        let p = resolve_policy(None, None, None).ok().unwrap();
        assert_eq!(p.chooser, Chooser::Smallest);
        let p = resolve_policy(None, Some(2), Some("largest")).ok().unwrap();
        assert_eq!((p.chooser, p.first), (Chooser::Largest, Some(2)));
        let p = resolve_policy(Some(PolicyArg::Smallest), None, Some("largest")).ok().unwrap();
        assert_eq!(p.chooser, Chooser::Smallest);
        assert!(matches!(resolve_policy(None, None, Some("middle")), Err(Failure::Parse(_))));
    }

    #[test]
    fn bad_environment_policy_is_a_parse_error() {
        let (code, _, err) =
            run_capture(&["intersect", "--matroid", "uniform:3,4", "--a", "exampleA.json", "--b", "exampleA.json"], Some("x"));
        assert_eq!(code, EXIT_PARSE);
        assert!(err.contains(POLICY_ENV));
    }

    #[test]
    fn emit_rays_needs_a_cycle() {
        let (code, _, _) = run_capture(&["--emit-rays", "balanced", "--cycle", "exampleA.json"], None);
        assert_eq!(code, EXIT_PARSE);
        let (code, out, _) = run_capture(&["--emit-rays", "bergman", "--matroid", "uniform:2,3"], None);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("# ambient 2 dim 1\n# rays\n"));
        assert_eq!(out.lines().filter(|l| l.starts_with("1 | ")).count(), 3);
    }

    #[test]
    fn linear_function_arguments() {
        assert_eq!(parse_linear("1,-2, 0").unwrap(), tmk_core::linear::ivec(&[1, -2, 0]));
        assert!(parse_linear("1,x").is_err());
    }
}

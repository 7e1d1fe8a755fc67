use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dlcoh::braid::BraidMonoid;
use dlcoh::cohomology::{
    data_source, full_h, verify_suite, CohomologyError, GroupType, Status, Suite, SuiteReport, Table,
};
use dlcoh::coxeter::{CoxeterSystem, WeylElt};
use dlcoh::hecke::{CharSpec, HeckeAlgebra};

#[derive(Parser)]
#[command(name = "dlcoh", version, about = "Braid monoids, Hecke algebras and Deligne-Lusztig cohomology tables")]
struct Cli {
    /// Output format; `H` defaults to json, everything else to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Garside normal form of a positive braid.
    Nf {
        #[arg(long = "type", default_value = "A2")]
        ty: String,
        expr: String,
    },
    /// Whether `a` left-divides `b` in the positive braid monoid.
    Divides {
        #[arg(long = "type", default_value = "A2")]
        ty: String,
        a: String,
        b: String,
    },
    /// Conjugacy class descriptor and φ of an A2 braid.
    #[command(name = "classify-a2")]
    ClassifyA2 { word: String },
    /// T-basis expansion of a completed braid expression.
    Hecke {
        #[arg(long = "type", default_value = "A2")]
        ty: String,
        expr: String,
    },
    /// Kazhdan-Lusztig polynomial P_{y,w}, or the whole table as CSV.
    Kl {
        #[arg(long = "type")]
        ty: String,
        /// Reduced word; `""` is the identity.
        y: Option<String>,
        w: Option<String>,
        #[arg(long)]
        csv: bool,
    },
    /// Rational smoothness of w, i.e. P_{1,w} = 1.
    Smooth {
        #[arg(long = "type", default_value = "A3")]
        ty: String,
        w: String,
    },
    /// Trace of a completed braid expression on a character of the Hecke algebra.
    Trace {
        #[arg(long = "type", default_value = "A2")]
        ty: String,
        #[arg(long = "char")]
        ch: String,
        expr: String,
        /// Compose with the Frobenius before taking the trace.
        #[arg(long = "F")]
        with_f: bool,
    },
    /// Graded character H(y) from the tables.
    #[command(name = "H")]
    H {
        #[arg(long = "type")]
        ty: String,
        expr: String,
        /// Also print the input and the trivial and Steinberg multiplicities.
        #[arg(long)]
        full: bool,
    },
    /// Run an identity suite against the table of a type (or `all`).
    Verify {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        suite: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// List every instance, not only failures.
        #[arg(long)]
        verbose: bool,
    },
    /// Conjecture checks.
    Conj {
        #[command(subcommand)]
        which: ConjCmd,
    },
}

#[derive(Subcommand)]
enum ConjCmd {
    /// H(b) against (-h)^{l(b)-φ(b)} Tr(T_b | ρ) at x = -ht, split A2.
    #[command(name = "a2")]
    A2 {
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// T_π acts on each character space by a power of x.
    #[command(name = "Ahm1")]
    Ahm1 {
        #[arg(long = "type")]
        ty: String,
    },
    /// Tr(T_w⁻¹ F) is the bar of Tr(T_w F), for one w or all.
    #[command(name = "Bhm1")]
    Bhm1 {
        #[arg(long = "type")]
        ty: String,
        w: Option<String>,
    },
}

enum CliError {
    /// Malformed input: exit 2.
    Input(String),
    /// A check did not pass or a value is unavailable: exit 1.
    Failed(String),
}

fn input(e: impl Display) -> CliError {
    CliError::Input(e.to_string())
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::Parse(_)
            | CohomologyError::UnknownType(_)
            | CohomologyError::Braid(_)
            | CohomologyError::Data { .. }
            | CohomologyError::Io(_)
            | CohomologyError::UnknownRule(_) => CliError::Input(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

type Out = Result<(Value, String, bool), CliError>;

/// A Coxeter system named by a group type (`2B2`) or a preset (`A3`, `I2(5)`).
fn system(name: &str) -> Result<(CoxeterSystem, Option<GroupType>), CliError> {
    if let Ok(ty) = name.parse::<GroupType>() {
        return CoxeterSystem::preset(ty.coxeter_preset()).map(|s| (s, Some(ty))).map_err(input);
    }
    CoxeterSystem::preset(name).map(|s| (s, None)).map_err(input)
}

fn group_type(name: &str) -> Result<GroupType, CliError> {
    name.parse::<GroupType>().map_err(input)
}

fn element(sys: &CoxeterSystem, word: &str) -> Result<WeylElt, CliError> {
    let w = sys.parse_word(word).map_err(input)?;
    sys.from_reduced_word(&w).ok_or_else(|| CliError::Input(format!("'{word}' is not a reduced word")))
}

fn char_by_name<'a>(chars: &'a [CharSpec], name: &str) -> Result<&'a CharSpec, CliError> {
    let canon = match name {
        "rho" | "reflection" => "refl",
        "Id" | "trivial" => "id",
        "St" | "sign" | "Steinberg" => "sgn",
        other => other,
    };
    chars.iter().find(|c| c.name == canon).ok_or_else(|| {
        let names: Vec<&str> = chars.iter().map(|c| c.name.as_str()).collect();
        CliError::Input(format!("unknown character '{name}', expected one of {}", names.join(", ")))
    })
}

fn run(cli: Cli) -> Result<(Value, String, bool), CliError> {
    match cli.cmd {
        Cmd::Nf { ty, expr } => nf(&ty, &expr),
        Cmd::Divides { ty, a, b } => divides(&ty, &a, &b),
        Cmd::ClassifyA2 { word } => classify_a2(&word),
        Cmd::Hecke { ty, expr } => hecke(&ty, &expr),
        Cmd::Kl { ty, y, w, csv } => kl(&ty, y.as_deref(), w.as_deref(), csv),
        Cmd::Smooth { ty, w } => smooth(&ty, &w),
        Cmd::Trace { ty, ch, expr, with_f } => trace(&ty, &ch, &expr, with_f),
        Cmd::H { ty, expr, full } => h_query(&ty, &expr, full),
        Cmd::Verify { ty, suite, threads, verbose } => verify(&ty, suite.as_deref(), threads, verbose),
        Cmd::Conj { which } => match which {
            ConjCmd::A2 { words } => conj_a2(&words),
            ConjCmd::Ahm1 { ty } => conj_ahm1(&ty),
            ConjCmd::Bhm1 { ty, w } => conj_bhm1(&ty, w.as_deref()),
        },
    }
}

fn nf(ty: &str, expr: &str) -> Out {
    let (sys, _) = system(ty)?;
    let m = BraidMonoid::new(&sys);
    let b = m.parse(expr).map_err(input)?;
    let factors: Vec<String> = b.factors().iter().map(|&w| sys.format(w)).collect();
    let text = m.format(&b);
    Ok((json!({ "input": expr, "normal_form": factors, "length": b.length(), "inf": m.inf(&b) }), text, true))
}

fn divides(ty: &str, a: &str, b: &str) -> Out {
    let (sys, _) = system(ty)?;
    let m = BraidMonoid::new(&sys);
    let (x, y) = (m.parse(a).map_err(input)?, m.parse(b).map_err(input)?);
    let q = m.left_quotient(&x, &y);
    let text = match &q {
        Some(q) => format!("true (quotient {})", m.format(q)),
        None => "false".into(),
    };
    Ok((json!({ "divides": q.is_some(), "quotient": q.map(|q| m.format(&q)) }), text, true))
}

fn classify_a2(word: &str) -> Out {
    let data = GroupType::A2.data();
    let m = data.monoid();
    let b = m.parse(word).map_err(input)?;
    let d = m.a2_classify(&b).map_err(|e| CliError::Failed(e.to_string()))?;
    Ok((serde_json::to_value(&d).expect("serializable"), d.to_string(), true))
}

fn hecke(ty: &str, expr: &str) -> Out {
    let (sys, _) = system(ty)?;
    let m = BraidMonoid::new(&sys);
    let c = m.parse_completed(expr).map_err(input)?;
    let hk = HeckeAlgebra::new(&sys);
    let h = hk.eval_completed(&c);
    let terms: serde_json::Map<String, Value> =
        h.terms().map(|(w, p)| (sys.format_word(sys.word(w)), Value::String(p.to_string()))).collect();
    Ok((Value::Object(terms), hk.format(&h), true))
}

fn kl(ty: &str, y: Option<&str>, w: Option<&str>, csv: bool) -> Out {
    let (sys, _) = system(ty)?;
    let table = HeckeAlgebra::new(&sys).kl_table();
    match (y, w, csv) {
        (Some(y), Some(w), false) => {
            let (y, w) = (element(&sys, y)?, element(&sys, w)?);
            let p = table.p(y, w);
            let v = json!({ "y": sys.format(y), "w": sys.format(w), "P": p.to_string(), "mu": table.mu(y, w) });
            Ok((v, p.to_string(), true))
        }
        (None, None, true) => {
            let mut wtr = csv::Writer::from_writer(Vec::new());
            let mut rows = Vec::new();
            wtr.write_record(["y", "w", "P"]).expect("in-memory write");
            for w in sys.elements() {
                for y in sys.elements().filter(|&y| sys.bruhat_leq(y, w)) {
                    let (ys, ws, p) = (sys.format(y), sys.format(w), table.p(y, w).to_string());
                    wtr.write_record([&ys, &ws, &p]).expect("in-memory write");
                    rows.push(json!({ "y": ys, "w": ws, "P": p }));
                }
            }
            let text = String::from_utf8(wtr.into_inner().expect("flush")).expect("utf-8");
            Ok((Value::Array(rows), text.trim_end().to_string(), true))
        }
        _ => Err(CliError::Input("give either `y w` or `--csv`".into())),
    }
}

fn smooth(ty: &str, w: &str) -> Out {
    let (sys, _) = system(ty)?;
    let table = HeckeAlgebra::new(&sys).kl_table();
    let w = element(&sys, w)?;
    let p = table.p(sys.identity(), w);
    let ok = table.is_rationally_smooth(w);
    let text = format!("{}: {} (P_1,w = {p})", sys.format(w), if ok { "smooth" } else { "singular" });
    Ok((json!({ "w": sys.format(w), "smooth": ok, "P": p.to_string() }), text, true))
}

fn trace(ty: &str, ch: &str, expr: &str, with_f: bool) -> Out {
    let ty = group_type(ty)?;
    let data = ty.data();
    let spec = char_by_name(&data.chars, ch)?;
    let c = data.monoid().parse_completed(expr).map_err(input)?;
    let tr = spec.trace(&data.sys, &data.hecke().eval_completed(&c), with_f);
    Ok((json!({ "char": spec.name, "F": with_f, "trace": tr.to_string() }), tr.to_string(), true))
}

fn h_query(ty: &str, expr: &str, full: bool) -> Out {
    let ty = group_type(ty)?;
    let data = ty.data();
    let c = data.monoid().parse_completed(expr).map_err(input)?;
    let table = Table::load(ty)?;
    let r = full_h(&table, &c)?;
    let text = format!("H({}) = {}\nId: {}\nSt: {}\nfrom {}", r.input, r.h, r.id, r.st, r.provenance);
    let v = if full { serde_json::to_value(&r).expect("serializable") } else { serde_json::to_value(&r.h).expect("serializable") };
    Ok((v, text, true))
}

fn read_suite(ty: GroupType, path: Option<&Path>) -> Result<Suite, CliError> {
    let Some(path) = path else {
        return Ok(Suite::load(ty)?);
    };
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        // a bare file name such as `b2.ids` falls back to the data directory
        Err(e) if path.components().count() == 1 => {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
            if stem.eq_ignore_ascii_case(&ty.data_stem()) && path.extension().is_some_and(|x| x == "ids") {
                data_source(ty, "ids")?
            } else {
                return Err(CliError::Input(format!("{}: {e}", path.display())));
            }
        }
        Err(e) => return Err(CliError::Input(format!("{}: {e}", path.display()))),
    };
    Ok(Suite::parse(ty, &src)?)
}

fn status_json(s: &Status) -> Value {
    match s {
        Status::Pass => json!({ "status": "pass" }),
        Status::Fail { lhs, rhs } => json!({ "status": "fail", "lhs": lhs, "rhs": rhs }),
        Status::EpsOnly { holds_at } => json!({ "status": "eps_only", "holds_at": holds_at }),
        Status::Defined { term, value } => json!({ "status": "defined", "term": term, "value": value }),
        Status::Unresolvable { terms } => json!({ "status": "unresolvable", "terms": terms }),
        Status::Error(e) => json!({ "status": "error", "message": e }),
    }
}

fn report_json(r: &SuiteReport) -> Value {
    let instances: Vec<Value> = r
        .instances
        .iter()
        .map(|i| {
            let mut v = status_json(&i.status);
            v["line"] = json!(i.line);
            v["rule"] = json!(i.rule);
            v["text"] = json!(i.text);
            v
        })
        .collect();
    json!({
        "type": r.ty.name(),
        "instances": instances,
        "checks_passed": r.checks_passed(),
        "failures": r.failures().count(),
        "ok": r.ok(),
    })
}

fn verify(ty: &str, suite: Option<&Path>, threads: Option<usize>, verbose: bool) -> Out {
    let types: Vec<GroupType> = if ty.eq_ignore_ascii_case("all") {
        if suite.is_some() {
            return Err(CliError::Input("--suite needs a single --type".into()));
        }
        GroupType::ALL.to_vec()
    } else {
        vec![group_type(ty)?]
    };
    let mut reports = Vec::new();
    let mut text = Vec::new();
    let mut ok = true;
    for ty in types {
        let s = read_suite(ty, suite)?;
        let table = Table::load(ty)?;
        let r = verify_suite(&s, &table, threads);
        for i in &r.instances {
            if verbose || i.status.is_failure() {
                text.push(format!("{ty} line {} [{}] {}: {}", i.line, i.rule, i.text, i.status));
            }
        }
        let defined = r.instances.iter().filter(|i| matches!(i.status, Status::Defined { .. })).count();
        text.push(format!(
            "{ty}: {} instances, {} checks passed, {defined} values defined, {} failures",
            r.instances.len(),
            r.checks_passed(),
            r.failures().count()
        ));
        ok &= r.ok();
        reports.push(report_json(&r));
    }
    let v = if reports.len() == 1 { reports.pop().unwrap() } else { Value::Array(reports) };
    Ok((v, text.join("\n"), ok))
}

fn conj_a2(words: &[String]) -> Out {
    let data = GroupType::A2.data();
    let m = data.monoid();
    let table = Table::load(GroupType::A2)?;
    let mut out = Vec::new();
    let mut text = Vec::new();
    let mut ok = true;
    for w in words {
        let b = m.parse(w).map_err(input)?;
        let r = data.check_conj_a2(&table, &b)?;
        ok &= r.holds;
        text.push(format!(
            "{}: {} [{}] predicted {} actual {}",
            r.input,
            if r.holds { "holds" } else { "FAILS" },
            r.class,
            r.predicted,
            r.actual
        ));
        out.push(serde_json::to_value(&r).expect("serializable"));
    }
    Ok((Value::Array(out), text.join("\n"), ok))
}

fn conj_ahm1(ty: &str) -> Out {
    let data = group_type(ty)?.data();
    let mut out = Vec::new();
    let mut text = Vec::new();
    let mut ok = true;
    for ch in &data.chars {
        match ch.check_conj_a_hm1(&data.sys) {
            Ok(k) => {
                text.push(format!("{}: T_pi acts by x^{k}", ch.name));
                out.push(json!({ "char": ch.name, "exponent": k }));
            }
            Err(e) => {
                ok = false;
                text.push(format!("{}: FAILS: {e}", ch.name));
                out.push(json!({ "char": ch.name, "error": e.to_string() }));
            }
        }
    }
    Ok((Value::Array(out), text.join("\n"), ok))
}

fn conj_bhm1(ty: &str, w: Option<&str>) -> Out {
    let data = group_type(ty)?.data();
    let sys = &data.sys;
    let elts: Vec<WeylElt> = match w {
        Some(w) => vec![element(sys, w)?],
        None => sys.elements().collect(),
    };
    let mut failures = Vec::new();
    for ch in &data.chars {
        for &w in &elts {
            if !ch.check_conj_b_hm1(sys, w) {
                failures.push(format!("{} at {}", ch.name, sys.format(w)));
            }
        }
    }
    let checked = elts.len() * data.chars.len();
    let text = if failures.is_empty() {
        format!("holds for {checked} (character, w) pairs")
    } else {
        format!("FAILS for {}", failures.join(", "))
    };
    Ok((json!({ "checked": checked, "failures": failures }), text, failures.is_empty()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let default = if matches!(cli.cmd, Cmd::H { .. }) { Format::Json } else { Format::Text };
    let format = cli.format.unwrap_or(default);
    match run(cli) {
        Ok((v, text, ok)) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = match format {
                Format::Json => writeln!(std::io::stdout(), "{v}"),
                Format::Text => writeln!(std::io::stdout(), "{text}"),
            };
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

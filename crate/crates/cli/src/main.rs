use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wreathrep::combinatorics::{
    enumerate_gdiagrams, enumerate_gtableaux, phi, verify_spec, GYoungDiagram,
};
use wreathrep::gz_rep::{self, build_rep, char_table, verify_branching, Form, VerifyOptions};
use wreathrep::johnson::{self, GroupAction};
use wreathrep::report::{Check, Report};
use wreathrep::wreath::{
    gz_dimension_report, verify_commutant, verify_relations, verify_yjm_centralizes,
};
use wreathrep::GroupTable;

#[derive(Parser)]
#[command(
    name = "wreathrep",
    version,
    about = "Irreducible representations of wreath products G ~ S_n"
)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArg {
    /// `trivial`, `cyclic:m`, `sym:3`, or a path to a group JSON file.
    #[arg(long, default_value = "trivial")]
    group: String,
}

#[derive(Subcommand)]
enum Command {
    /// List the Young G-diagrams and standard tableaux with their content vectors.
    Tableaux {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        n: usize,
        /// Restrict to one diagram, as JSON (object keyed by 1-based irrep or array of partitions).
        #[arg(long)]
        mu: Option<String>,
    },
    /// Export the matrices of one irreducible module.
    Rep {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = FormArg::Seminormal)]
        form: FormArg,
    },
    /// Run a verification suite.
    Verify {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = gz_rep::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Action of G on X for the johnson suite: point, regular or natural.
        #[arg(long)]
        action: Option<String>,
    },
    /// Restriction of V^mu to the next smaller wreath product.
    Branch {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        mu: String,
        #[arg(long, default_value_t = gz_rep::DEFAULT_TOL)]
        tol: f64,
    },
    /// Symmetric Jordan basis of the Boolean lattice B(n).
    Sjb {
        #[arg(long)]
        n: usize,
    },
    /// Generalized Johnson scheme of G_n acting on words over {L_0} + X.
    Johnson {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        action: Option<String>,
        #[arg(long, default_value_t = gz_rep::DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Seminormal,
    Orthogonal,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Form {
        match f {
            FormArg::Seminormal => Form::Seminormal,
            FormArg::Orthogonal => Form::Orthogonal,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Relations,
    Commutant,
    Yjm,
    Reps,
    Characters,
    Branching,
    GzDimension,
    Spec,
    Johnson,
    All,
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::anyhow!(msg.into())
}

fn load_group(arg: &GroupArg) -> anyhow::Result<GroupTable> {
    GroupTable::load(&arg.group).map_err(|e| usage(e.to_string()))
}

fn parse_mu(text: &str, g: &GroupTable) -> anyhow::Result<GYoungDiagram> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| usage(format!("--mu is not JSON: {e}")))?;
    GYoungDiagram::from_json(&v, g.num_classes()).map_err(|e| usage(e.to_string()))
}

fn check_n(n: usize) -> anyhow::Result<()> {
    if n == 0 {
        return Err(usage("n must be at least 1"));
    }
    Ok(())
}

fn lib<T>(r: wreathrep::Result<T>) -> anyhow::Result<T> {
    r.map_err(anyhow::Error::new)
}

fn pick_action(spec: Option<&str>, g: &GroupTable) -> anyhow::Result<GroupAction> {
    match spec {
        Some(s) => lib(GroupAction::from_spec(s, g)),
        None if g.is_abelian() => lib(GroupAction::regular(g)),
        None if g.natural_action().is_some() => lib(GroupAction::natural(g)),
        None => Ok(GroupAction::point(g)),
    }
}

struct Output {
    value: Value,
    passed: bool,
}

impl Output {
    fn data(value: Value) -> Self {
        Output {
            value,
            passed: true,
        }
    }

    fn report(report: &Report) -> Self {
        Output {
            value: serde_json::to_value(report).expect("report serializes"),
            passed: report.passed,
        }
    }
}

fn cmd_tableaux(group: &GroupArg, n: usize, mu: Option<&str>) -> anyhow::Result<Output> {
    check_n(n)?;
    let g = load_group(group)?;
    let diagrams = match mu {
        Some(text) => {
            let mu = parse_mu(text, &g)?;
            if mu.size() != n {
                return Err(usage(format!("--mu has {} boxes, --n is {n}", mu.size())));
            }
            vec![mu]
        }
        None => enumerate_gdiagrams(n, g.num_classes()),
    };
    let listing: Vec<Value> = diagrams
        .iter()
        .map(|mu| {
            let tableaux: Vec<Value> = enumerate_gtableaux(mu)
                .iter()
                .map(|t| json!({ "tableau": t.to_json(), "content_vector": phi(t, &g).to_json() }))
                .collect();
            json!({
                "mu": mu.to_json(),
                "dimension": gz_rep::dimension(mu, &g).to_string(),
                "num_tableaux": tableaux.len(),
                "tableaux": tableaux,
            })
        })
        .collect();
    let total: usize = listing
        .iter()
        .map(|d| d["num_tableaux"].as_u64().unwrap_or(0) as usize)
        .sum();
    Ok(Output::data(json!({
        "group": g.name(),
        "n": n,
        "num_diagrams": listing.len(),
        "num_tableaux": total,
        "diagrams": listing,
    })))
}

fn cmd_rep(group: &GroupArg, mu: &str, n: Option<usize>, form: FormArg) -> anyhow::Result<Output> {
    let g = load_group(group)?;
    let mu = parse_mu(mu, &g)?;
    check_n(mu.size())?;
    if let Some(n) = n {
        if n != mu.size() {
            return Err(usage(format!("--mu has {} boxes, --n is {n}", mu.size())));
        }
    }
    let rep = lib(build_rep(&mu, &g, form.into()))?;
    Ok(Output::data(rep.to_json()))
}

fn suite_reps(g: &GroupTable, n: usize, opts: &VerifyOptions) -> anyhow::Result<Report> {
    let mut report = Report::new("reps");
    for mu in enumerate_gdiagrams(n, g.num_classes()) {
        for form in [Form::Seminormal, Form::Orthogonal] {
            let rep = lib(build_rep(&mu, g, form))?;
            report.extend(rep.verify(opts));
        }
    }
    Ok(report)
}

fn suite_yjm(g: &GroupTable, n: usize, opts: &VerifyOptions) -> anyhow::Result<Report> {
    let mut report = Report::new("yjm");
    report.extend(lib(verify_yjm_centralizes(n, g))?);
    for mu in enumerate_gdiagrams(n, g.num_classes()) {
        let rep = lib(build_rep(&mu, g, Form::Seminormal))?;
        let r = rep.verify(opts);
        for c in r.checks.into_iter().filter(|c| c.name.starts_with("X_")) {
            report.push(Check {
                name: format!("{mu}/{}", c.name),
                ..c
            });
        }
    }
    Ok(report)
}

fn suite_branching(g: &GroupTable, n: usize, tol: f64) -> anyhow::Result<Report> {
    let mut report = Report::new("branching");
    for mu in enumerate_gdiagrams(n, g.num_classes()) {
        report.extend(lib(verify_branching(&mu, g, tol))?);
    }
    Ok(report)
}

fn suite_johnson(
    g: &GroupTable,
    n: usize,
    action: Option<&str>,
    tol: f64,
) -> anyhow::Result<Report> {
    let mut report = Report::new("johnson");
    report.extend(johnson::verify_johnson(n));
    let action = pick_action(action, g)?;
    report.extend(lib(johnson::generalized_scheme(n, g, &action, tol))?);
    Ok(report)
}

fn run_suite(
    suite: Suite,
    g: &GroupTable,
    n: usize,
    opts: &VerifyOptions,
    action: Option<&str>,
) -> anyhow::Result<Report> {
    Ok(match suite {
        Suite::Relations => lib(verify_relations(n, g))?,
        Suite::Commutant => lib(verify_commutant(n, g))?.report,
        Suite::Yjm => suite_yjm(g, n, opts)?,
        Suite::Reps => suite_reps(g, n, opts)?,
        Suite::Characters => lib(char_table(n, g))?.verify(g, opts.tol),
        Suite::Branching => suite_branching(g, n, opts.tol)?,
        Suite::GzDimension => lib(gz_dimension_report(n, g))?,
        Suite::Spec => verify_spec(n, g),
        Suite::Johnson => suite_johnson(g, n, action, opts.tol)?,
        Suite::All => {
            let mut report = Report::new(format!("all {} n={n}", g.name()));
            for s in [
                Suite::Relations,
                Suite::Commutant,
                Suite::Yjm,
                Suite::Reps,
                Suite::Characters,
                Suite::Branching,
                Suite::GzDimension,
                Suite::Spec,
                Suite::Johnson,
            ] {
                report.extend(run_suite(s, g, n, opts, action)?);
            }
            report
        }
    })
}

fn cmd_verify(
    group: &GroupArg,
    n: usize,
    suite: Suite,
    tol: f64,
    seed: u64,
    action: Option<&str>,
) -> anyhow::Result<Output> {
    check_n(n)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(usage("--tol must be positive"));
    }
    let g = load_group(group)?;
    let opts = VerifyOptions {
        tol,
        seed,
        ..Default::default()
    };
    let report = run_suite(suite, &g, n, &opts, action)?;
    Ok(Output::report(&report))
}

fn cmd_branch(group: &GroupArg, mu: &str, tol: f64) -> anyhow::Result<Output> {
    let g = load_group(group)?;
    let mu = parse_mu(mu, &g)?;
    check_n(mu.size())?;
    let branch = lib(gz_rep::branch(&mu, &g))?;
    let report = lib(verify_branching(&mu, &g, tol))?;
    Ok(Output {
        value: json!({
            "group": g.name(),
            "mu": mu.to_json(),
            "restriction": branch.to_json(),
            "verification": serde_json::to_value(&report)?,
        }),
        passed: report.passed,
    })
}

fn cmd_sjb(n: usize) -> anyhow::Result<Output> {
    check_n(n)?;
    if n > 20 {
        return Err(usage("n is limited to 20 for the symmetric Jordan basis"));
    }
    Ok(Output::data(johnson::sjb_to_json(&johnson::build_sjb(n))))
}

fn cmd_johnson(
    group: &GroupArg,
    n: usize,
    action: Option<&str>,
    tol: f64,
) -> anyhow::Result<Output> {
    check_n(n)?;
    let g = load_group(group)?;
    let action = pick_action(action, &g)?;
    let (lhs, rhs) = johnson::identity_rti(n, &g, &action);
    let y2: Vec<Value> = johnson::enumerate_y2(n, &g, &action)
        .iter()
        .map(|y| {
            json!({
                "mu": y.mu.to_json(),
                "a": y.a,
                "b": y.b,
                "s": y.s,
                "ranks": (0..=n).filter(|&i| y.occurs_at(i)).collect::<Vec<_>>(),
                "dimension": gz_rep::dimension(&y.mu, &g).to_string(),
            })
        })
        .collect();
    let report = lib(johnson::generalized_scheme(n, &g, &action, tol))?;
    Ok(Output {
        value: json!({
            "group": g.name(),
            "action": action.name(),
            "n": n,
            "identity": { "lhs": lhs.to_string(), "rhs": rhs.to_string() },
            "constituents": y2,
            "verification": serde_json::to_value(&report)?,
        }),
        passed: report.passed,
    })
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    match &cli.command {
        Command::Tableaux { group, n, mu } => cmd_tableaux(group, *n, mu.as_deref()),
        Command::Rep { group, mu, n, form } => cmd_rep(group, mu, *n, *form),
        Command::Verify {
            group,
            n,
            suite,
            tol,
            seed,
            action,
        } => cmd_verify(group, *n, *suite, *tol, *seed, action.as_deref()),
        Command::Branch { group, mu, tol } => cmd_branch(group, mu, *tol),
        Command::Sjb { n } => cmd_sjb(*n),
        Command::Johnson {
            group,
            n,
            action,
            tol,
        } => cmd_johnson(group, *n, action.as_deref(), *tol),
    }
}

fn emit(cli: &Cli, value: &Value) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli).and_then(|out| emit(&cli, &out.value).map(|()| out.passed)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        // 1 is reserved for failed checks
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

mod store;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use csection_core::csection::{Analysis, Options};
use csection_core::groupspec::GroupSpec;
use csection_core::report::{combine, Evidence, Status, VerdictReport};
use csection_core::{iso, scan, verify, PermGroup};

use store::ScanRecord;

const EXIT_USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "csection",
    version,
    about = "Chief factors, c-sections and supersolvability checks for finite permutation groups"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// JSON group spec file.
    #[arg(long, global = true, value_name = "FILE")]
    group: Option<PathBuf>,
    /// Inline JSON group spec.
    #[arg(long, global = true, value_name = "JSON", conflicts_with = "group")]
    spec: Option<String>,
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest order for exhaustive subgroup enumeration.
    #[arg(long, global = true, default_value_t = 5000)]
    max_order: u64,
    /// Largest permutation degree accepted or constructed.
    #[arg(long, global = true, default_value_t = 5000)]
    degree_cap: usize,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the group order.
    Order,
    /// List conjugacy classes of maximal subgroups.
    Maximals,
    /// Compute Sec(M) for one maximal class.
    Sec {
        /// 0-based index into the maximal classes (largest order first).
        #[arg(long)]
        maximal_index: usize,
    },
    /// Is Sec(M) supersolvable for every maximal M?
    Hypothesis,
    /// Is every composition factor L2(p) or cyclic of prime order?
    Conclusion,
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Run the theorem check over the built-in catalog (or the given group).
    Scan {
        /// Worker threads; defaults to available parallelism.
        #[arg(long)]
        workers: Option<usize>,
        /// Append-only record file.
        #[arg(long, env = "CSECTION_STORE", value_name = "FILE")]
        store: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// All c-sections of each maximal subgroup are isomorphic.
    Lemma1,
    /// A_n has no subgroup of index k for 1 < k < n.
    Lemma2a {
        #[arg(long)]
        n: usize,
    },
    /// Index-n subgroups of A_n form one conjugacy class.
    Lemma3 {
        #[arg(long)]
        n: usize,
    },
    /// Sylow normalizers in SL(n, q) and PSL(n, q).
    Lemma4 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
    /// The PGL2(p) example.
    Example {
        #[arg(long, default_value_t = 7)]
        p: u64,
        /// Permit p > 7.
        #[arg(long)]
        allow_large: bool,
    },
}

struct Input {
    spec: GroupSpec,
    group: PermGroup,
}

fn fail_usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn exit_for(status: Status) -> ExitCode {
    match status {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail => ExitCode::from(1),
        Status::Inconclusive => ExitCode::from(2),
    }
}

fn load(global: &Global) -> Result<Option<Input>, String> {
    let text = match (&global.group, &global.spec) {
        (Some(path), _) => {
            std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
        }
        (None, Some(s)) => s.clone(),
        (None, None) => return Ok(None),
    };
    let spec = GroupSpec::parse(&text).map_err(|e| e.to_string())?;
    let group = spec.build(global.degree_cap).map_err(|e| e.to_string())?;
    Ok(Some(Input { spec, group }))
}

fn require(input: Option<Input>) -> Result<Input, String> {
    input.ok_or_else(|| "this command needs --group FILE or --spec JSON".to_string())
}

fn id_of(g: &PermGroup) -> String {
    iso::identify(g)
        .map(|id| id.to_string())
        .unwrap_or_else(|_| format!("group of order {}", g.order()))
}

fn order_report(input: &Input) -> VerdictReport {
    let mut ev = Evidence::default();
    ev.order("G", input.group.order());
    ev.count("degree", input.group.degree() as u64);
    VerdictReport::new(input.spec.label(), "order", Status::Pass, ev, true)
}

fn maximals_report(input: &Input, a: &Analysis) -> VerdictReport {
    let mut ev = Evidence::default();
    ev.order("G", input.group.order());
    for (i, c) in a.maximal_classes().iter().enumerate() {
        ev.order(format!("M{i}"), c.order());
        ev.count(format!("M{i} class size"), c.class_size as u64);
        ev.ids(format!("M{i}"), [id_of(c.representative.group())]);
    }
    ev.count("maximal classes", a.num_maximal_classes() as u64);
    VerdictReport::new(
        input.spec.label(),
        "maximals",
        Status::Pass,
        ev,
        a.is_complete(),
    )
}

fn sec_report(input: &Input, a: &Analysis, index: usize) -> Result<VerdictReport, String> {
    let classes = a.maximal_classes();
    let class = classes.get(index).ok_or_else(|| {
        format!(
            "--maximal-index {index} out of range; the group has {} maximal classes",
            classes.len()
        )
    })?;
    let s = a.sec_of_class(index).map_err(|e| e.to_string())?;
    let mut ev = Evidence::default();
    ev.order("G", input.group.order())
        .order("M", class.order())
        .order("K", s.source_pair.k.group().order())
        .order("L", s.source_pair.l.group().order())
        .order("Sec(M)", s.order());
    ev.ids("Sec(M)", [s.identified.to_string()]);
    ev.witness(format!("supersolvable: {}", s.supersolvable));
    Ok(VerdictReport::new(
        input.spec.label(),
        "sec",
        Status::Pass,
        ev,
        a.is_complete(),
    ))
}

fn render(r: &VerdictReport, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let complete = if r.completeness {
        "complete"
    } else {
        "incomplete"
    };
    out.push_str(&format!(
        "{pad}{} [{}]: {} ({complete})\n",
        r.check, r.subject, r.status
    ));
    for (k, v) in &r.evidence.orders {
        out.push_str(&format!("{pad}  order {k} = {v}\n"));
    }
    for (k, v) in &r.evidence.class_counts {
        out.push_str(&format!("{pad}  count {k} = {v}\n"));
    }
    for (k, v) in &r.evidence.factor_ids {
        out.push_str(&format!("{pad}  ids {k} = {}\n", v.join(", ")));
    }
    for w in &r.evidence.witnesses {
        out.push_str(&format!("{pad}  witness: {w}\n"));
    }
    for n in &r.evidence.notes {
        out.push_str(&format!("{pad}  note: {n}\n"));
    }
    for sub in &r.sub_checks {
        render(sub, depth + 1, out);
    }
}

fn emit(r: &VerdictReport, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(r).expect("serializable"));
    } else {
        let mut s = String::new();
        render(r, 0, &mut s);
        print!("{s}");
    }
}

fn run_scan(
    input: Option<Input>,
    options: Options,
    workers: Option<usize>,
    store_path: Option<PathBuf>,
    json: bool,
) -> Result<ExitCode, String> {
    let specs: Vec<GroupSpec> = match input {
        Some(i) => vec![i.spec],
        None => scan::catalog().into_iter().map(|(s, _)| s).collect(),
    };
    let workers = workers.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    });
    let timestamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
    let records: Vec<ScanRecord> = scan::scan(&specs, options, workers)
        .into_iter()
        .map(|r| ScanRecord::from_result(r, &timestamp))
        .collect();

    let mut fails = 0;
    let mut inconclusive = 0;
    for rec in &records {
        let status = if rec.error.is_some() {
            Status::Inconclusive
        } else {
            combine(rec.reports.iter().map(|r| r.status))
        };
        match status {
            Status::Fail => fails += 1,
            Status::Inconclusive => inconclusive += 1,
            Status::Pass => {}
        }
        if json {
            println!("{}", serde_json::to_string(rec).expect("serializable"));
        } else {
            let theorem = rec.reports.first();
            let hyp = theorem
                .and_then(|t| t.sub_checks.first())
                .map(|h| h.status.to_string())
                .unwrap_or_else(|| "-".into());
            match &rec.error {
                Some(e) => println!("{:<32} error: {e}", rec.label),
                None => println!(
                    "{:<32} {:<12} hypothesis {:<12} complete {}",
                    rec.label, status, hyp, rec.complete
                ),
            }
        }
    }
    if let Some(path) = store_path {
        let written =
            store::append_new(&path, &records).map_err(|e| format!("{}: {e}", path.display()))?;
        eprintln!("{written} new record(s) appended to {}", path.display());
    }
    if !json {
        println!(
            "{} groups, {} fail, {} inconclusive",
            records.len(),
            fails,
            inconclusive
        );
    }
    Ok(if fails > 0 {
        ExitCode::from(1)
    } else if inconclusive > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let g = &cli.global;
    let options = Options {
        order_cap: g.max_order,
        degree_cap: g.degree_cap,
        seed: g.seed,
    };
    let input = load(g)?;
    let err = |e: csection_core::GroupError| e.to_string();
    let report = match cli.command {
        Command::Order => order_report(&require(input)?),
        Command::Maximals => {
            let input = require(input)?;
            let a = Analysis::new(&input.group, options).map_err(err)?;
            maximals_report(&input, &a)
        }
        Command::Sec { maximal_index } => {
            let input = require(input)?;
            let a = Analysis::new(&input.group, options).map_err(err)?;
            sec_report(&input, &a, maximal_index)?
        }
        Command::Hypothesis => {
            let input = require(input)?;
            verify::check_hypothesis(&input.group, options)
                .map_err(err)?
                .with_subject(input.spec.label())
        }
        Command::Conclusion => {
            let input = require(input)?;
            verify::check_conclusion(&input.group)
                .map_err(err)?
                .with_subject(input.spec.label())
        }
        Command::Verify(v) => match v {
            VerifyCommand::Lemma1 => {
                let input = require(input)?;
                verify::verify_lemma1(&input.group, options)
                    .map_err(err)?
                    .with_subject(input.spec.label())
            }
            VerifyCommand::Lemma2a { n } => verify::verify_lemma2a(n).map_err(err)?,
            VerifyCommand::Lemma3 { n } => verify::verify_lemma3(n).map_err(err)?,
            VerifyCommand::Lemma4 { n, q } => verify::verify_lemma4(n, q, g.seed).map_err(err)?,
            VerifyCommand::Example { p, allow_large } => {
                verify::verify_example(p, allow_large, options).map_err(err)?
            }
        },
        Command::Scan { workers, store } => {
            return run_scan(input, options, workers, store, g.json)
        }
    };
    emit(&report, g.json);
    Ok(exit_for(report.status))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => fail_usage(msg),
    }
}

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use skewring::corpus::{
    affordable_degree, chain_harness, check_expectations, laurent_consistency,
    run_implication_matrix, run_product_check, run_relabeling_transport, series_consistency,
    CorpusEntry, Manifest, RowStatus,
};
use skewring::decide::{
    decide, replay, Budget, DecideError, Envelope, PropertyId, Tail, Verdict, Witness,
};
use skewring::format::{RecordError, RingDefinition, VerdictRecord};
use skewring::ring::{Endomorphism, FiniteRing};
use skewring::skew::render_terms;

const HOLDS: u8 = 0;
const FAILS: u8 = 1;
const INVALID: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "skewring",
    version,
    about = "Finite rings, skew polynomials and Armendariz-type deciders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and validate a ring definition.
    Validate { file: PathBuf },
    /// Decide a property of the ring in a definition file.
    Check(CheckArgs),
    /// Re-check the witness in a structured verdict record.
    Replay { file: PathBuf },
    /// Run corpus expectations and consistency checks.
    Corpus(CorpusArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum TailArg {
    Free,
    Zero,
}

#[derive(clap::Args)]
struct CheckArgs {
    file: PathBuf,
    #[arg(long)]
    property: String,
    /// Degree bound for the plain polynomial properties.
    #[arg(long)]
    deg: Option<usize>,
    /// Laurent exponent window `m,n,t,s`: p in x^-m..x^n, q in x^-t..x^s.
    #[arg(long, value_parser = parse_window)]
    window: Option<[usize; 4]>,
    /// Truncation order N for the series properties.
    #[arg(long)]
    trunc: Option<i64>,
    /// Series start at x^-lead (Laurent series property only).
    #[arg(long)]
    lead: Option<usize>,
    #[arg(long, value_enum)]
    tail: Option<TailArg>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(clap::Args)]
struct CorpusArgs {
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    entry: Option<String>,
    #[arg(long)]
    all: bool,
    /// Degree used by the implication matrix and the other harness checks.
    #[arg(long, default_value_t = 2)]
    deg: usize,
    /// Number of relabelings per entry.
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    #[arg(long)]
    manifest: Option<PathBuf>,
}

fn parse_window(s: &str) -> Result<[usize; 4], String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|p: Vec<usize>| format!("expected four values m,n,t,s, got {}", p.len()))
}

/// An error with its exit code.
struct Failure(u8, String);

impl Failure {
    fn invalid(msg: impl ToString) -> Self {
        Failure(INVALID, msg.to_string())
    }
}

impl From<DecideError> for Failure {
    fn from(e: DecideError) -> Self {
        match e {
            DecideError::BudgetExceeded { .. } => Failure(BUDGET, e.to_string()),
            _ => Failure::invalid(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Check(args) => check(&args),
        Command::Replay { file } => replay_record(&file),
        Command::Corpus(args) => corpus(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn load_definition(path: &Path) -> Result<(RingDefinition, FiniteRing, Endomorphism), Failure> {
    let def = RingDefinition::from_toml_str(&read(path)?).map_err(Failure::invalid)?;
    let (ring, alpha) = def.build().map_err(Failure::invalid)?;
    Ok((def, ring, alpha))
}

fn budget() -> Result<Budget, Failure> {
    Ok(Budget::from_env()?)
}

fn validate(path: &Path) -> Result<u8, Failure> {
    let (def, ring, alpha) = load_definition(path)?;
    let unital = if ring.is_unital() {
        "unital"
    } else {
        "non-unital"
    };
    let kind = if alpha.is_identity() {
        "identity"
    } else if alpha.is_automorphism() {
        "automorphism"
    } else {
        "non-invertible endomorphism"
    };
    let (t, p) = alpha.orbit();
    println!(
        "{}: size {}, {unital}, {kind}, orbit ({t},{p})",
        def.label,
        ring.size()
    );
    Ok(HOLDS)
}

fn envelope_for(args: &CheckArgs, property: PropertyId) -> Result<Envelope, Failure> {
    let given = |flag: &str, present: bool| -> Result<(), Failure> {
        if present {
            Err(Failure::invalid(format!(
                "--{flag} does not apply to `{property}`"
            )))
        } else {
            Ok(())
        }
    };
    let tail = match args.tail {
        None | Some(TailArg::Free) => Tail::Free,
        Some(TailArg::Zero) => Tail::Zero,
    };
    use PropertyId::*;
    match property {
        p if p.is_element_level() => {
            given("deg", args.deg.is_some())?;
            given("window", args.window.is_some())?;
            given("trunc", args.trunc.is_some())?;
            given("lead", args.lead.is_some())?;
            given("tail", args.tail.is_some())?;
            Ok(Envelope::Exhaustive)
        }
        LaurentQAlphaSkew => {
            given("deg", args.deg.is_some())?;
            given("trunc", args.trunc.is_some())?;
            given("lead", args.lead.is_some())?;
            given("tail", args.tail.is_some())?;
            let w = args
                .window
                .as_ref()
                .ok_or_else(|| Failure::invalid(format!("`{property}` needs --window m,n,t,s")))?;
            Ok(Envelope::Window {
                m: w[0],
                n: w[1],
                t: w[2],
                s: w[3],
            })
        }
        PowerseriesQAlphaSkew | LaurentPowerseriesQAlphaSkew => {
            given("deg", args.deg.is_some())?;
            given("window", args.window.is_some())?;
            if property == PowerseriesQAlphaSkew {
                given("lead", args.lead.is_some())?;
            }
            let order = args
                .trunc
                .ok_or_else(|| Failure::invalid(format!("`{property}` needs --trunc N")))?;
            Ok(Envelope::Truncated {
                order,
                lead: args.lead.unwrap_or(0),
                tail,
            })
        }
        _ => {
            given("window", args.window.is_some())?;
            given("trunc", args.trunc.is_some())?;
            given("lead", args.lead.is_some())?;
            given("tail", args.tail.is_some())?;
            let degree = args
                .deg
                .ok_or_else(|| Failure::invalid(format!("`{property}` needs --deg d")))?;
            Ok(Envelope::Degree { degree })
        }
    }
}

fn describe(ring: &FiniteRing, label: &str, alpha: &Endomorphism, v: &Verdict) -> String {
    let mut out = String::new();
    let word = if v.holds() { "holds" } else { "fails" };
    let _ = writeln!(
        out,
        "{} on {label} with {}: {word} ({})",
        v.property,
        alpha.name(),
        v.envelope
    );
    match v.witness() {
        None => {}
        Some(Witness::Elements(w)) => {
            let names: Vec<&str> = w.elements.iter().map(|&e| ring.label(e)).collect();
            let _ = writeln!(out, "  elements: {}", names.join(", "));
            if let Some(x) = w.value {
                let _ = writeln!(out, "  value: {}", ring.label(x));
            }
        }
        Some(Witness::Polynomials(w)) => {
            let _ = writeln!(out, "  p = {}", render_terms(ring, w.p_min, &w.p));
            let _ = writeln!(out, "  q = {}", render_terms(ring, w.q_min, &w.q));
            let _ = writeln!(out, "  pair (i, j) = ({}, {})", w.pair.0, w.pair.1);
            if let Some(r) = w.middle {
                let _ = writeln!(out, "  middle r = {}", ring.label(r));
            }
            if let Some(t) = w.power {
                let _ = writeln!(out, "  power t = {t}");
            }
            let _ = writeln!(out, "  value = {}", ring.label(w.value));
        }
    }
    out
}

fn check(args: &CheckArgs) -> Result<u8, Failure> {
    let property: PropertyId = args.property.parse().map_err(Failure::invalid)?;
    let envelope = envelope_for(args, property)?;
    let (def, ring, alpha) = load_definition(&args.file)?;
    let verdict = decide(&ring, &alpha, property, envelope, budget()?)?;
    match args.format {
        OutputFormat::Text => print!("{}", describe(&ring, &def.label, &alpha, &verdict)),
        OutputFormat::Structured => {
            let record = VerdictRecord::new(&def, &ring, &alpha, &verdict);
            print!("{}", record.to_toml_string().map_err(Failure::invalid)?);
        }
    }
    Ok(if verdict.holds() { HOLDS } else { FAILS })
}

fn replay_record(path: &Path) -> Result<u8, Failure> {
    let record = VerdictRecord::from_toml_str(&read(path)?).map_err(Failure::invalid)?;
    let (ring, alpha) = record.definition.build().map_err(Failure::invalid)?;
    let verdict = match record.to_verdict(&ring) {
        Ok(v) => v,
        Err(RecordError::Invalid(e)) => return Err(Failure::invalid(e)),
        Err(e @ RecordError::Inconsistent(_)) => return Err(Failure(FAILS, e.to_string())),
    };
    if record.ring != record.definition.label {
        return Err(Failure(
            FAILS,
            format!(
                "record names ring `{}` but embeds `{}`",
                record.ring, record.definition.label
            ),
        ));
    }
    if record.endomorphism != alpha.name() {
        return Err(Failure(
            FAILS,
            format!(
                "record names endomorphism `{}` but the definition builds `{}`",
                record.endomorphism,
                alpha.name()
            ),
        ));
    }
    if verdict.holds() {
        let again = decide(&ring, &alpha, verdict.property, verdict.envelope, budget()?)?;
        if again.holds() {
            println!("{} holds again ({})", verdict.property, verdict.envelope);
            return Ok(HOLDS);
        }
        print!("{}", describe(&ring, &record.ring, &alpha, &again));
        return Err(Failure(
            FAILS,
            "the recorded verdict holds but the decider finds a witness".into(),
        ));
    }
    match replay(&ring, &alpha, &verdict) {
        Ok(()) => {
            println!(
                "witness reproduced: {} fails ({})",
                verdict.property, verdict.envelope
            );
            Ok(HOLDS)
        }
        Err(e) => Err(Failure(FAILS, format!("witness does not replay: {e}"))),
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run_entry(
    entry: &CorpusEntry,
    args: &CorpusArgs,
    budget: Budget,
    out: &mut String,
) -> Result<bool, Failure> {
    let mut ok = true;
    let _ = writeln!(
        out,
        "== {}{}",
        entry.name,
        if entry.exploratory {
            " (exploratory)"
        } else {
            ""
        }
    );
    for r in check_expectations(entry, budget) {
        let exp = &r.expectation;
        let want = format!("{:?}", exp.outcome).to_lowercase();
        let got = match &r.verdict {
            Ok(v) if v.holds() => "holds".to_string(),
            Ok(_) => "fails".to_string(),
            Err(e) => format!("error: {e}"),
        };
        let _ = writeln!(
            out,
            "{} expect {} ({}) {want}, got {got}",
            status(r.passed()),
            exp.property,
            exp.envelope
        );
        for p in &r.problems {
            let _ = writeln!(out, "     {p}");
        }
        ok &= r.passed();
    }

    let matrix = run_implication_matrix(entry, args.deg, budget)?;
    for row in &matrix.rows {
        let (mark, note) = match &row.status {
            RowStatus::Vacuous => ("PASS", "vacuous".to_string()),
            RowStatus::Confirmed => ("PASS", "confirmed".to_string()),
            RowStatus::Violated(why) => ("FAIL", format!("violated: {why}")),
        };
        let _ = writeln!(
            out,
            "{mark} implication at degree {}: {} ({note})",
            matrix.degree, row.rule
        );
    }
    ok &= matrix.violations().next().is_none();

    let degree = matrix.degree;
    let consistency = [
        (
            "laurent window",
            laurent_consistency(entry, degree, budget)?,
        ),
        (
            "laurent series",
            series_consistency(entry, degree as i64 + 1, budget)?,
        ),
    ];
    for (what, report) in consistency {
        let Some(c) = report else { continue };
        let _ = writeln!(
            out,
            "{} {what}: {} ({}) vs {} ({})",
            status(c.agrees()),
            if c.plain.holds() { "holds" } else { "fails" },
            c.plain.envelope,
            if c.laurent.holds() { "holds" } else { "fails" },
            c.laurent.envelope
        );
        for p in &c.problems {
            let _ = writeln!(out, "     {p}");
        }
        ok &= c.agrees();
    }

    if let Some(c) = chain_harness(entry, budget)? {
        let _ = writeln!(
            out,
            "{} coefficient chains over {} zero-product triples",
            status(c.violations.is_empty()),
            c.triples
        );
        for v in &c.violations {
            let _ = writeln!(out, "     {v}");
        }
        ok &= c.violations.is_empty();
    }

    if args.seeds > 0 {
        let d = affordable_degree(&entry.ring, degree, budget).unwrap_or(0);
        let t = run_relabeling_transport(entry, 0..args.seeds, d, budget)?;
        let _ = writeln!(
            out,
            "{} relabeling: {} comparisons over {} seeds at degree {}",
            status(t.mismatches.is_empty()),
            t.comparisons,
            t.seeds,
            t.degree
        );
        for m in &t.mismatches {
            let _ = writeln!(out, "     {m}");
        }
        ok &= t.mismatches.is_empty();
    }
    Ok(ok)
}

fn run_products(
    entries: &[CorpusEntry],
    degree: usize,
    budget: Budget,
    out: &mut String,
) -> Result<bool, Failure> {
    let mut ok = true;
    let _ = writeln!(out, "== direct products");
    for (i, a) in entries.iter().enumerate() {
        for b in &entries[i..] {
            if a.ring.size() * b.ring.size() > 36 {
                continue;
            }
            let d = degree.min(1);
            for property in [PropertyId::AlphaArmendariz, PropertyId::AlphaSkewArmendariz] {
                let r = run_product_check(
                    (&a.ring, &a.alpha),
                    (&b.ring, &b.alpha),
                    property,
                    d,
                    budget,
                )?;
                let _ = writeln!(
                    out,
                    "{} {property} at degree {d}: {} x {}: factors {}/{}, product {}",
                    status(r.consistent()),
                    a.name,
                    b.name,
                    r.left_holds,
                    r.right_holds,
                    r.product.holds()
                );
                ok &= r.consistent();
            }
        }
    }
    Ok(ok)
}

fn corpus(args: &CorpusArgs) -> Result<u8, Failure> {
    let manifest = match &args.manifest {
        Some(path) => Manifest::from_toml_str(&read(path)?).map_err(Failure::invalid)?,
        None => Manifest::default_manifest(),
    };
    let budget = budget()?;
    let entries = match &args.entry {
        Some(name) => vec![manifest
            .entry(name)
            .map_err(Failure::invalid)?
            .build()
            .map_err(Failure::invalid)?],
        None => manifest.build_all().map_err(Failure::invalid)?,
    };
    let mut out = String::new();
    let mut ok = true;
    for entry in &entries {
        ok &= run_entry(entry, args, budget, &mut out)?;
    }
    if args.all {
        ok &= run_products(&entries, args.deg, budget, &mut out)?;
    }
    let _ = writeln!(
        out,
        "{}",
        if ok {
            "corpus: all checks passed"
        } else {
            "corpus: some checks failed"
        }
    );
    print!("{out}");
    Ok(if ok { HOLDS } else { FAILS })
}

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use monres::betti::BettiTable;
use monres::cancellation::{self, MinimalizeOptions};
use monres::dominance;
use monres::taylor::{self, OracleOptions};
use monres::verify::{self, VerifyOptions};
use monres::{random_ideals, Error, Field, Ideal, Monomial, RandomIdealConfig};
use serde_json::{json, Value};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "monres", version, about = "Betti numbers of monomial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cancel the Taylor complex of the generators as given down to a minimal
    /// resolution and print the step log.
    Minimalize(Common),
    /// List the dominant n-subsets of the minimal generators with their witnesses.
    Dominant(Common),
    /// Top Betti numbers from the dominant class.
    TopBetti(Common),
    /// Full multigraded Betti table from strand homology.
    Betti {
        #[command(flatten)]
        common: Common,
        /// Compute over GF(p) instead of the rationals.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Projective dimension from the oracle and from the dominant class.
    Pd(Common),
    /// Betti numbers of a three-variable ideal from the closed formula.
    Trivariate(Common),
    /// The twin ideal: each generator keeps only its exponents equal to the lcm's.
    Twin(Common),
    /// Structure reports: beta_k = 1, Artinian, squarefree and the Betti sum bound.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Report on beta_k = 1 for this k.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Cross-check closed forms, oracle and cancellation; exit 1 on any mismatch.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        random: RandomArgs,
        /// Also compare with the oracle over GF(p).
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Print a seeded stream of random minimal ideals, one per line.
    Random {
        #[command(flatten)]
        random: RandomArgs,
        /// Number of variables.
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct Common {
    /// Ideal as text (`x1^2*x2, x3`) or JSON (`{"n": 2, "generators": [[2, 1]]}`).
    ideal: Option<String>,
    /// Read the ideal from a file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Read the ideal from standard input.
    #[arg(long)]
    stdin: bool,
    /// Number of variables (default: the largest variable that occurs).
    /// With `verify --seed`, the variables of each random ideal (default 3).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Variable names in text output; `auto` answers in the style of the input.
    #[arg(long, value_enum, default_value_t = Names::Auto)]
    names: Names,
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Maximum number of random generators per ideal.
    #[arg(long, default_value_t = 5)]
    q: usize,
    #[arg(long, default_value_t = 4)]
    max_exp: u32,
    /// Add one pure power per variable before the random generators.
    #[arg(long)]
    artinian: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Names {
    Auto,
    Indexed,
    Letters,
}

/// Text rendering of monomials in the chosen variable style.
#[derive(Clone, Copy)]
struct Namer {
    letters: bool,
}

impl Namer {
    fn mono(&self, m: &Monomial) -> String {
        match self.letters.then(|| m.to_letters()).flatten() {
            Some(s) => s,
            None => m.to_string(),
        }
    }

    fn ideal(&self, i: &Ideal) -> String {
        match self.letters.then(|| i.to_letters()).flatten() {
            Some(s) => s,
            None => i.to_text(),
        }
    }
}

struct Input {
    raw: String,
    presentation: Ideal,
    namer: Namer,
    format: Format,
}

impl Input {
    fn minimal(&self) -> Ideal {
        self.presentation.minimal_generators()
    }

    /// Report skeleton carried by every JSON output.
    fn header(&self) -> Value {
        let g = self.minimal();
        json!({
            "version": VERSION,
            "n": g.ambient(),
            "minimal_generators": g.to_text(),
        })
    }

    fn text_header(&self) -> String {
        format!(
            "monres {VERSION}\nminimal generators: {}\n",
            self.namer.ideal(&self.minimal())
        )
    }
}

/// Failures that map to documented exit codes.
enum Failure {
    Library(Error),
    Input(anyhow::Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.into())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read_input(common: &Common) -> anyhow::Result<String> {
    let sources = usize::from(common.ideal.is_some())
        + usize::from(common.file.is_some())
        + usize::from(common.stdin);
    if sources != 1 {
        bail!("give exactly one input: an inline ideal, --file or --stdin");
    }
    if let Some(text) = &common.ideal {
        return Ok(text.clone());
    }
    if let Some(path) = &common.file {
        return std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()));
    }
    let mut text = String::new();
    io::stdin()
        .read_to_string(&mut text)
        .context("reading standard input")?;
    Ok(text)
}

/// Letter output when the text input used only the letter aliases `a..w`.
fn uses_letters(raw: &str) -> bool {
    let t = raw.trim_start();
    !t.starts_with('{')
        && t.bytes().any(|b| (b'a'..=b'w').contains(&b))
        && !t.bytes().any(|b| (b'x'..=b'z').contains(&b))
}

fn load(common: &Common) -> std::result::Result<Input, Failure> {
    let raw = read_input(common)?;
    let text = raw.trim();
    let presentation = match Ideal::parse(text, common.n) {
        Ok(i) => i,
        Err(Error::Parse { position, message }) => {
            // positions refer to the trimmed text
            let position = position + (raw.len() - raw.trim_start().len());
            show_location(&raw, position);
            return Err(Error::Parse { position, message }.into());
        }
        Err(e) => return Err(e.into()),
    };
    let letters = match common.names {
        Names::Auto => uses_letters(&raw),
        Names::Indexed => false,
        Names::Letters => true,
    };
    Ok(Input {
        raw,
        presentation,
        namer: Namer { letters },
        format: common.format,
    })
}

fn show_location(raw: &str, position: usize) {
    if let Some(line) = raw
        .lines()
        .next()
        .filter(|l| !l.is_empty() && position <= l.len())
    {
        eprintln!(
            "  {line}\n  {}^",
            " ".repeat(line[..position].chars().count())
        );
    }
}

fn emit(input: &Input, text: String, mut json_body: Value) -> Outcome {
    let mut out = io::stdout().lock();
    match input.format {
        Format::Text => write!(out, "{}{text}", input.text_header())?,
        Format::Json => {
            let mut report = input.header();
            if let (Value::Object(r), Value::Object(b)) = (&mut report, json_body.take()) {
                r.extend(b);
            }
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            )?;
        }
    }
    Ok(())
}

fn require_proper(input: &Input) -> Outcome {
    let g = &input.presentation;
    if g.is_zero() || g.contains_unit() {
        return Err(Error::Domain(format!(
            "{} is not a proper nonzero ideal",
            input.raw.trim()
        ))
        .into());
    }
    Ok(())
}

fn betti_text(table: &BettiTable, namer: Namer) -> String {
    let mut s = format!(
        "totals: {:?}\npd: {}\n",
        table.totals(),
        table.pd().map_or("-".into(), |p| p.to_string())
    );
    s.push_str("graded:\n");
    for ((i, j), c) in table.graded() {
        s.push_str(&format!("  beta_{i},{j} = {c}\n"));
    }
    s.push_str("multigraded:\n");
    for (i, l, c) in table.entries() {
        s.push_str(&format!("  beta_{i},{} = {c}\n", namer.mono(l)));
    }
    s
}

fn run_minimalize(common: &Common) -> Outcome {
    let input = load(common)?;
    if input.presentation.is_zero() {
        return Err(Error::Domain("the zero ideal has no Taylor complex".into()).into());
    }
    // the list as given, so redundant generators show up as cancellations
    let complex = taylor::taylor_complex(&input.presentation)?;
    let before = complex.ranks();
    let (minimal, steps) = cancellation::minimalize_with(complex, &MinimalizeOptions::default())?;
    let table = cancellation::betti_from_minimal(&minimal)?;
    let mut text = format!("taylor ranks: {before:?}\ncancellations: {}\n", steps.len());
    for s in &steps {
        text.push_str(&format!(
            "  hdeg {}: theta {:#b}, pi {:#b}, pivot {}, mdeg {}\n",
            s.hdeg,
            s.theta,
            s.pi,
            s.pivot,
            input.namer.mono(&s.mdeg)
        ));
    }
    text.push_str(&format!("minimal ranks: {:?}\n", minimal.ranks()));
    text.push_str(&betti_text(&table, input.namer));
    let body = json!({
        "taylor_ranks": before,
        "steps": cancellation::steps_to_json(&steps),
        "minimal_ranks": minimal.ranks(),
        "betti": table.to_json(),
    });
    emit(&input, text, body)
}

fn run_dominant(common: &Common) -> Outcome {
    let input = load(common)?;
    require_proper(&input)?;
    let class = dominance::enumerate_dominant_class(&input.minimal())?;
    let mut text = format!("dominant class: {} member(s)\n", class.len());
    for d in &class {
        let members = d
            .monomials
            .iter()
            .map(|m| input.namer.mono(m))
            .collect::<Vec<_>>()
            .join(", ");
        let vars = d
            .assignment
            .iter()
            .map(|&(_, v)| {
                input
                    .namer
                    .mono(&Monomial::pure_power(d.lcm.ambient(), v, 1))
            })
            .collect::<Vec<_>>()
            .join(", ");
        text.push_str(&format!(
            "  {{{members}}} dominant in {vars}; lcm {}\n",
            input.namer.mono(&d.lcm)
        ));
    }
    let body = json!({ "dominant_class": class.iter().map(|d| d.to_json()).collect::<Vec<_>>() });
    emit(&input, text, body)
}

fn run_top_betti(common: &Common) -> Outcome {
    let input = load(common)?;
    require_proper(&input)?;
    let g = input.minimal();
    let n = g.ambient();
    let lcms = dominance::top_betti_multidegrees(&g)?;
    let mut graded = std::collections::BTreeMap::new();
    for l in &lcms {
        *graded.entry(l.total_degree()).or_insert(0u64) += 1;
    }
    let mut text = format!("beta_{n} = {}\n", lcms.len());
    for (j, c) in &graded {
        text.push_str(&format!("beta_{n},{j} = {c}\n"));
    }
    for l in &lcms {
        text.push_str(&format!("beta_{n},{} = 1\n", input.namer.mono(l)));
    }
    let body = json!({
        "hdeg": n,
        "total": lcms.len(),
        "graded": graded.iter().map(|(j, c)| (j.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
        "multidegrees": lcms.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    emit(&input, text, body)
}

fn run_betti(common: &Common, prime: Option<u64>) -> Outcome {
    let input = load(common)?;
    let field = match prime {
        Some(p) => Field::prime(p)?,
        None => Field::Rationals,
    };
    if input.presentation.contains_unit() {
        return Err(Error::Domain("Betti table of the unit ideal".into()).into());
    }
    let table = taylor::betti_table_oracle_with(&input.presentation, &OracleOptions::over(field))?;
    let text = format!("field: {field}\n{}", betti_text(&table, input.namer));
    let body = json!({ "field": field.to_string(), "betti": table.to_json() });
    emit(&input, text, body)
}

fn run_pd(common: &Common) -> Outcome {
    let input = load(common)?;
    require_proper(&input)?;
    let g = input.minimal();
    let pd = taylor::betti_table_oracle(&g)?.pd().unwrap_or(0);
    let predicate = dominance::pd_is_n(&g)?;
    if predicate != (pd == g.ambient()) {
        return Err(Error::Invariant(format!(
            "oracle pd {pd} disagrees with dominant-class predicate {predicate}"
        ))
        .into());
    }
    let text = format!("pd = {pd}\ndominant class nonempty (pd = n): {predicate}\n");
    emit(&input, text, json!({ "pd": pd, "pd_is_n": predicate }))
}

fn run_trivariate(common: &Common) -> Outcome {
    let input = load(common)?;
    require_proper(&input)?;
    let b = dominance::trivariate_betti(&input.minimal())?;
    let text = format!("betti: {b:?}\n");
    emit(&input, text, json!({ "betti": b }))
}

fn run_twin(common: &Common) -> Outcome {
    let input = load(common)?;
    let twin = input.presentation.twin()?;
    let text = format!("twin: {}\n", input.namer.ideal(&twin));
    let body = json!({ "twin": twin.to_text(), "twin_json": serde_json::from_str::<Value>(&twin.to_json()).expect("valid json") });
    emit(&input, text, body)
}

fn run_classify(common: &Common, k: Option<usize>) -> Outcome {
    let input = load(common)?;
    require_proper(&input)?;
    let g = input.minimal();
    let n = g.ambient();
    let table = taylor::betti_table_oracle(&g)?;
    let mut text = format!("totals: {:?}\ncodim: {}\n", table.totals(), g.codim()?);
    let mut body = serde_json::Map::new();
    body.insert("totals".into(), json!(table.totals()));
    body.insert("codim".into(), json!(g.codim()?));

    if g.is_artinian() {
        let pure = dominance::classify_artinian_top_betti_one(&g)?;
        text.push_str(&format!(
            "artinian: beta_{n} = {}; {}\n",
            table.betti(n),
            match &pure {
                Some(e) => format!("pure powers with exponents {e:?}"),
                None => "not a complete intersection".into(),
            }
        ));
        body.insert(
            "artinian".into(),
            json!({ "top_betti": table.betti(n), "pure_powers": pure }),
        );
    }
    if g.is_squarefree() {
        let full = dominance::squarefree_pd_check(&g)?;
        text.push_str(&format!("squarefree: pd = n is {full}\n"));
        body.insert("squarefree".into(), json!({ "pd_is_n": full }));
    }
    if table.pd() == Some(n) {
        let bound = dominance::betti_sum_bound(&g)?;
        if !bound.holds {
            return Err(
                Error::Invariant(format!("Betti sum {} below {}", bound.sum, bound.bound)).into(),
            );
        }
        text.push_str(&format!("betti sum: {} >= {}\n", bound.sum, bound.bound));
        body.insert(
            "betti_sum".into(),
            json!({ "sum": bound.sum, "bound": bound.bound }),
        );
    }
    if let Some(k) = k {
        let report = dominance::unit_betti_report(&g, k)?;
        text.push_str(&format!(
            "beta_{k} = 1: pd = {}, codim = {}, symmetric = {}\n",
            report.pd, report.codim, report.symmetric
        ));
        body.insert("unit_betti".into(), report.to_json());
    }
    emit(&input, text, Value::Object(body))
}

fn random_config(args: &RandomArgs, n: usize) -> RandomIdealConfig {
    let config = RandomIdealConfig::new(n, args.q, args.max_exp);
    if args.artinian {
        config.artinian()
    } else {
        config
    }
}

fn run_verify(common: &Common, random: &RandomArgs, prime: Option<u64>) -> Outcome {
    let options = VerifyOptions {
        prime,
        ..VerifyOptions::default()
    };
    if let Some(seed) = random.seed {
        if common.ideal.is_some() || common.file.is_some() || common.stdin {
            return Err(
                anyhow::anyhow!("--seed runs a random campaign and takes no ideal input").into(),
            );
        }
        let args_config = random_config(random, common.n.unwrap_or(3));
        let ideals: Vec<Ideal> = random_ideals(seed, args_config)?
            .take(random.count)
            .collect();
        let report = verify::verify_campaign(&ideals, &options)?;
        let mut out = io::stdout().lock();
        match common.format {
            Format::Text => {
                writeln!(out, "monres {VERSION}")?;
                writeln!(
                    out,
                    "campaign: seed {seed}, {} ideals in {} variables",
                    report.ideals, args_config.n
                )?;
                for (check, count) in &report.checks {
                    writeln!(out, "  {check}: {count}")?;
                }
                for (i, ideal, d) in &report.discrepancies {
                    writeln!(
                        out,
                        "MISMATCH #{i} ({}): {}: {}",
                        ideal.to_text(),
                        d.check,
                        d.detail
                    )?;
                }
                writeln!(
                    out,
                    "{}",
                    if report.passed() {
                        "all checks passed"
                    } else {
                        "mismatches found"
                    }
                )?;
            }
            Format::Json => {
                let mut v = report.to_json();
                v["version"] = json!(VERSION);
                v["seed"] = json!(seed);
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serializable")
                )?;
            }
        }
        return if report.passed() {
            Ok(())
        } else {
            Err(Failure::Mismatch)
        };
    }
    let input = load(common)?;
    require_proper(&input)?;
    let report = verify::verify_ideal(&input.presentation, &options)?;
    let mut text = format!("checks: {}\n", report.checks_run.join(", "));
    for d in &report.discrepancies {
        text.push_str(&format!("MISMATCH {}: {}\n", d.check, d.detail));
    }
    text.push_str(if report.passed() {
        "all checks passed\n"
    } else {
        "mismatches found\n"
    });
    let body = report.to_json();
    emit(&input, text, body)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn run_random(random: &RandomArgs, n: usize, format: Format) -> Outcome {
    let seed = random.seed.unwrap_or(0);
    let mut out = io::stdout().lock();
    for ideal in random_ideals(seed, random_config(random, n))?.take(random.count) {
        match format {
            Format::Text => writeln!(out, "{}", ideal.to_text())?,
            Format::Json => writeln!(out, "{}", ideal.to_json())?,
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Domain(_) | Error::Dimension { .. } => 2,
        Error::Capacity { .. } => 3,
        Error::Invariant(_) | Error::Integrity(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Minimalize(c) => run_minimalize(c),
        Command::Dominant(c) => run_dominant(c),
        Command::TopBetti(c) => run_top_betti(c),
        Command::Betti { common, prime } => run_betti(common, *prime),
        Command::Pd(c) => run_pd(c),
        Command::Trivariate(c) => run_trivariate(c),
        Command::Twin(c) => run_twin(c),
        Command::Classify { common, k } => run_classify(common, *k),
        Command::Verify {
            common,
            random,
            prime,
        } => run_verify(common, random, *prime),
        Command::Random { random, n, format } => run_random(random, *n, *format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

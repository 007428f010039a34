//! The `critideal` command line.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 for usage and input errors, 3 when a resource cap is hit.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::abelian::{self, IntMatrix, PointKind};
use crate::critical::{self, Census, CensusOptions, Classification, CriticalError, CriticalIdealReport, GammaCache};
use crate::digraph::{self, Digraph};
use crate::ideals::{self, GroebnerOptions};
use crate::lambda::{self, LambdaParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "critideal", version, about = "Critical ideals of digraphs over Z[X]")]
pub struct Cli {
    /// Log one line per processed critical pair.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConvertTarget {
    Json,
    Digraph6,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Algebraic co-rank and the triviality of every critical ideal.
    Gamma {
        /// digraph6 string, JSON arc list, or a file holding either.
        input: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Co-rank at most one, forbidden-family freeness and Lambda membership.
    Classify {
        input: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Gamma-critical digraphs on n vertices, counted by co-rank.
    Census {
        #[arg(long)]
        n: usize,
        /// Also print the digraph6 string of every gamma-critical class.
        #[arg(long)]
        emit_members: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Checkpoint file; completed classifications are read from and appended to it.
        #[arg(long)]
        resume: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Smith normal form of an integer matrix read from a file.
    Snf {
        matrix: PathBuf,
        /// Print the unimodular transforms as well.
        #[arg(long)]
        transforms: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Critical group and Smith group.
    Groups {
        input: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Co-rank two and criticality of the seventeen forbidden digraphs.
    VerifyLemma2,
    /// Closed forms of the second critical ideal of Lambda(n1,n2,n3).
    VerifyLemma3 {
        #[arg(long, default_value_t = 6)]
        max_total: usize,
    },
    /// Co-rank at most one vs forbidden-family freeness vs Lambda membership.
    VerifyTheorem5 {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Unit invariant factor predicates against Smith normal forms.
    VerifyCorollaries {
        #[arg(long, default_value_t = 6)]
        max_total: usize,
    },
    /// digraph6 to JSON and back.
    Convert {
        input: String,
        #[arg(long, value_enum)]
        to: Option<ConvertTarget>,
    },
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn check(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CHECK_FAILED,
            message: message.into(),
        }
    }
}

impl From<CriticalError> for Failure {
    fn from(e: CriticalError) -> Self {
        let code = if e.is_resource() { EXIT_RESOURCE } else { EXIT_USAGE };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ideals::IdealError> for Failure {
    fn from(e: ideals::IdealError) -> Self {
        CriticalError::from(e).into()
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (program name first), runs the command, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    if cli.verbose {
        let _ = env_logger::Builder::new()
            .filter_module("critical_ideals::ideals", log::LevelFilter::Trace)
            .target(env_logger::Target::Stderr)
            .try_init();
    }
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Gamma { input, format } => gamma(&read_digraph(&input)?, format, out),
        Command::Classify { input, format } => classify(&read_digraph(&input)?, format, out),
        Command::Census {
            n,
            emit_members,
            jobs,
            resume,
            format,
        } => with_jobs(jobs, out, |buf| census(n, emit_members, resume.as_deref(), format, buf)),
        Command::Snf {
            matrix,
            transforms,
            format,
        } => snf(&matrix, transforms, format, out),
        Command::Groups { input, format } => groups(&read_digraph(&input)?, format, out),
        Command::VerifyLemma2 => verify_lemma2(out),
        Command::VerifyLemma3 { max_total } => verify_lemma3(max_total, out),
        Command::VerifyTheorem5 { n, jobs } => with_jobs(jobs, out, |buf| verify_theorem5(n, buf)),
        Command::VerifyCorollaries { max_total } => verify_corollaries(max_total, out),
        Command::Convert { input, to } => convert(&input, to, out),
    }
}

/// Runs `f` on a pool of `jobs` threads (the global pool when unset),
/// buffering its report.
fn with_jobs(jobs: Option<usize>, out: &mut dyn Write, f: impl FnOnce(&mut Vec<u8>) -> Outcome + Send) -> Outcome {
    let mut buf = Vec::new();
    let result = match jobs {
        None => f(&mut buf),
        Some(0) => return Err(Failure::usage("--jobs must be at least 1")),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Failure::usage(e.to_string()))?;
            pool.install(|| f(&mut buf))
        }
    };
    out.write_all(&buf)?;
    result
}

fn read_input(arg: &str) -> Result<String, String> {
    let text = arg.trim();
    if text.starts_with('&') || text.starts_with('{') {
        Ok(text.to_string())
    } else if Path::new(arg).is_file() {
        Ok(std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?.trim().to_string())
    } else {
        Err(format!("{arg}: neither digraph6, JSON, nor a readable file"))
    }
}

/// A digraph6 string, a JSON arc list, or the path of a file holding one.
pub fn read_digraph(arg: &str) -> Result<Digraph, String> {
    let text = read_input(arg)?;
    let parsed = if text.starts_with('{') {
        digraph::parse_json(&text)
    } else {
        digraph::parse_digraph6(&text)
    };
    parsed.map_err(|e| e.to_string())
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure::usage(message)
    }
}

fn gamma(d: &Digraph, format: Format, out: &mut dyn Write) -> Outcome {
    let report = CriticalIdealReport::compute(d)?;
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&report).expect("plain data"))?,
        Format::Tsv => {
            writeln!(out, "{}\tgamma={}", report.digraph6, report.gamma)?;
            for (i, trivial) in report.verdicts.iter().enumerate() {
                writeln!(out, "I{}\t{}", i + 1, if *trivial { "trivial" } else { "proper" })?;
            }
        }
    }
    Ok(())
}

fn classify(d: &Digraph, format: Format, out: &mut dyn Write) -> Outcome {
    let g = critical::algebraic_corank(d)?;
    let witness = critical::forbidden_witness(d);
    let recognized = lambda::recognize_lambda(d);
    let agree = (g <= 1) == witness.is_none() && witness.is_none() == recognized.is_ok();
    match format {
        Format::Json => {
            let v = json!({
                "digraph6": d.to_digraph6(),
                "gamma": g,
                "gamma_at_most_one": g <= 1,
                "f_free": witness.is_none(),
                "forbidden_witness": witness.map(|(name, set)| json!({"name": name, "vertices": set})),
                "lambda": recognized.as_ref().ok().map(|p| serde_json::to_value(p).expect("plain data")),
                "rejection": recognized.as_ref().err().map(|r| json!({"reason": r.reason, "certificate": r.certificate})),
                "consistent": agree,
            });
            writeln!(out, "{v}")?;
        }
        Format::Tsv => {
            writeln!(out, "{}\tgamma={}", d.to_digraph6(), g)?;
            writeln!(out, "gamma<=1\t{}", g <= 1)?;
            match witness {
                None => writeln!(out, "f-free\ttrue")?,
                Some((name, set)) => writeln!(out, "f-free\tfalse\t{name} induced on {set}")?,
            }
            match &recognized {
                Ok(p) => writeln!(out, "lambda\t{p}")?,
                Err(r) => writeln!(out, "lambda\trejected\t{r}")?,
            }
        }
    }
    if agree {
        Ok(())
    } else {
        Err(Failure::check(format!("{}: the three verdicts disagree", d.to_digraph6())))
    }
}

fn read_checkpoint(path: &Path) -> Result<HashMap<String, Classification>, Failure> {
    let mut known = HashMap::new();
    if !path.exists() {
        return Ok(known);
    }
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        if let Some(c) = Classification::parse_line(line.trim_end()) {
            known.insert(c.digraph6.clone(), c);
        }
    }
    Ok(known)
}

fn census(n: usize, emit_members: bool, resume: Option<&Path>, format: Format, out: &mut dyn Write) -> Outcome {
    if !(2..=digraph::MAX_ENUMERATION_VERTICES).contains(&n) {
        return Err(Failure::usage(format!(
            "--n must lie in 2..={}",
            digraph::MAX_ENUMERATION_VERTICES
        )));
    }
    let known = match resume {
        Some(p) => read_checkpoint(p)?,
        None => HashMap::new(),
    };
    let sink = match resume {
        Some(p) => Some(Mutex::new(OpenOptions::new().create(true).append(true).open(p)?)),
        None => None,
    };
    let record = |c: &Classification| {
        if let Some(file) = &sink {
            let mut f = file.lock().expect("checkpoint writer");
            let _ = writeln!(f, "{}", c.line());
        }
    };
    let opts = CensusOptions {
        known,
        on_classified: Some(&record),
    };
    let result: Census = critical::census_with(n, &opts)?;
    match format {
        Format::Tsv => {
            write!(out, "{}", result.tsv())?;
            if emit_members {
                for c in result.members() {
                    writeln!(out, "{}\t{}", c.digraph6, c.gamma)?;
                }
            }
        }
        Format::Json => {
            let counts: serde_json::Map<String, serde_json::Value> =
                result.counts.iter().map(|(k, c)| (k.to_string(), json!(c))).collect();
            let mut v = json!({"n": n, "classes": result.classes.len(), "counts": counts});
            if emit_members {
                v["members"] = json!(result.members().map(|c| json!({"digraph6": c.digraph6, "gamma": c.gamma})).collect::<Vec<_>>());
            }
            writeln!(out, "{v}")?;
        }
    }
    Ok(())
}

fn snf(path: &Path, transforms: bool, format: Format, out: &mut dyn Write) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let m = IntMatrix::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let s = if transforms {
        abelian::smith_normal_form_with_transforms(&m)
    } else {
        abelian::smith_normal_form(&m)
    };
    let rows = |m: &IntMatrix| m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>();
    match format {
        Format::Tsv => {
            writeln!(out, "{s}")?;
            if let (Some(u), Some(v)) = (&s.u, &s.v) {
                write!(out, "U\n{u}V\n{v}")?;
            }
        }
        Format::Json => {
            let mut v = json!({
                "factors": s.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "rank": s.rank,
                "zero_count": s.zero_count,
            });
            if let (Some(u), Some(w)) = (&s.u, &s.v) {
                v["u"] = json!(rows(u));
                v["v"] = json!(rows(w));
            }
            writeln!(out, "{v}")?;
        }
    }
    Ok(())
}

fn groups(d: &Digraph, format: Format, out: &mut dyn Write) -> Outcome {
    let k = abelian::critical_group(d);
    let s = abelian::smith_group(d);
    match format {
        Format::Tsv => {
            writeln!(out, "critical\t{k}")?;
            writeln!(out, "smith\t{s}")?;
        }
        Format::Json => writeln!(out, "{}", json!({"critical": k.to_json(), "smith": s.to_json()}))?,
    }
    Ok(())
}

fn verify_lemma2(out: &mut dyn Write) -> Outcome {
    let mut failed = Vec::new();
    for m in critical::forbidden_family().members() {
        let g = critical::algebraic_corank(&m.digraph)?;
        let forb = critical::is_gamma_critical(&m.digraph)?;
        let verdict = if forb { "forbidden" } else { "not forbidden" };
        writeln!(out, "{}: gamma={} {}", m.name, g, verdict)?;
        if g != 2 || !forb {
            failed.push(format!("{} ({})", m.name, m.digraph.to_digraph6()));
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::check(format!("not gamma=2 forbidden: {}", failed.join(", "))))
    }
}

fn verify_lemma3(max_total: usize, out: &mut dyn Write) -> Outcome {
    if max_total > digraph::MAX_VERTICES {
        return Err(Failure::usage(format!("--max-total must be at most {}", digraph::MAX_VERTICES)));
    }
    let opts = GroebnerOptions::default();
    let mut failed = Vec::new();
    for p in LambdaParams::connected_up_to(max_total).into_iter().filter(|p| p.total() >= 2) {
        let d = lambda::build_lambda(p).expect("connected parameters");
        let n = p.total();
        let case = lambda::lemma3_case(p).expect("total at least two");
        let closed = lambda::lemma3_ideal(p).expect("connected parameters");
        let i1 = critical::ideal_is_trivial(n, &critical::critical_ideal_gens(&d, 1)?)?;
        let i2 = critical::critical_ideal_gens(&d, 2)?;
        let missing = ideals::first_non_member(n, &i2, &closed, &opts)?;
        let extra = ideals::first_non_member(n, &closed, &i2, &opts)?;
        let mut problems = Vec::new();
        if !i1 {
            problems.push("I1 is proper".to_string());
        }
        if let Some(g) = &missing {
            problems.push(format!("minor {g} outside the closed form"));
        }
        if let Some(g) = &extra {
            problems.push(format!("closed-form generator {g} outside I2"));
        }
        if problems.is_empty() {
            writeln!(out, "{p}\tcase {case}\tok")?;
        } else {
            writeln!(out, "{p}\tcase {case}\tFAILED\t{}\t{}", d.to_digraph6(), problems.join("; "))?;
            failed.push(p.to_string());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::check(format!("closed form differs for {}", failed.join(", "))))
    }
}

/// Per-class verdicts: co-rank at most one, forbidden-family freeness, and
/// Lambda membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem5Row {
    pub digraph6: String,
    pub gamma_at_most_one: bool,
    pub f_free: bool,
    pub lambda: Option<LambdaParams>,
}

impl Theorem5Row {
    pub fn agrees(&self) -> bool {
        self.gamma_at_most_one == self.f_free && self.f_free == self.lambda.is_some()
    }
}

pub fn theorem5_rows(n: usize, cache: &GammaCache) -> Result<Vec<Theorem5Row>, CriticalError> {
    digraph::enumerate_connected(n)?
        .par_iter()
        .map(|d| {
            Ok(Theorem5Row {
                digraph6: d.to_digraph6(),
                gamma_at_most_one: cache.gamma(d)? <= 1,
                f_free: critical::is_f_free(d),
                lambda: lambda::recognize_lambda(d).ok(),
            })
        })
        .collect()
}

fn verify_theorem5(n: usize, out: &mut dyn Write) -> Outcome {
    if !(1..=digraph::MAX_ENUMERATION_VERTICES).contains(&n) {
        return Err(Failure::usage(format!(
            "--n must lie in 1..={}",
            digraph::MAX_ENUMERATION_VERTICES
        )));
    }
    let cache = GammaCache::new();
    let mut failed = 0;
    for k in 1..=n {
        let rows = theorem5_rows(k, &cache)?;
        let low = rows.iter().filter(|r| r.gamma_at_most_one).count();
        for r in rows.iter().filter(|r| !r.agrees()) {
            writeln!(
                out,
                "FAILED\t{}\tgamma<=1={}\tf-free={}\tlambda={}",
                r.digraph6,
                r.gamma_at_most_one,
                r.f_free,
                r.lambda.map_or("none".to_string(), |p| p.to_string())
            )?;
            failed += 1;
        }
        writeln!(out, "n={k}\tclasses={}\tgamma<=1={low}", rows.len())?;
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::check(format!("{failed} classes with disagreeing verdicts")))
    }
}

fn verify_corollaries(max_total: usize, out: &mut dyn Write) -> Outcome {
    if max_total > digraph::MAX_VERTICES {
        return Err(Failure::usage(format!("--max-total must be at most {}", digraph::MAX_VERTICES)));
    }
    let mut failed = Vec::new();
    for p in LambdaParams::connected_up_to(max_total) {
        let d = lambda::build_lambda(p).expect("connected parameters");
        let k = abelian::critical_group(&d);
        let s = abelian::smith_group(&d);
        let (c7, c9) = (lambda::corollary7_predicate(p), lambda::corollary9_predicate(p));
        let ok7 = c7 == (k.unit_count == 1);
        let ok9 = c9 == (s.unit_count == 1);
        let status = if ok7 && ok9 { "ok" } else { "FAILED" };
        let mut line = format!(
            "{p}\tcritical: predicate={c7} unit_count={}\tsmith: predicate={c9} unit_count={}\t{status}",
            k.unit_count, s.unit_count
        );
        if k.zero_factors > 0 {
            line += &format!("\tlaplacian rank below n-1 ({} zero factors)", k.zero_factors);
        }
        writeln!(out, "{line}")?;
        if !(ok7 && ok9) {
            failed.push(p.to_string());
        }
    }
    // the bridge the corollaries rest on
    for p in LambdaParams::connected_up_to(max_total).into_iter().filter(|p| p.total() >= 2) {
        let d = lambda::build_lambda(p).expect("connected parameters");
        for (kind, m) in [
            (PointKind::Outdegree, abelian::laplacian_matrix(&d)),
            (PointKind::Zero, abelian::adjacency_matrix(&d)),
        ] {
            for i in 1..p.total() {
                let lhs = abelian::evaluation_bridge(&d, i, kind).map_err(|e| Failure::usage(e.to_string()))?;
                let rhs = abelian::gcd_minors(&m, i).map_err(|e| Failure::usage(e.to_string()))?;
                if lhs != rhs {
                    writeln!(out, "{p}\tbridge {kind:?} i={i}: {lhs} != {rhs}\tFAILED")?;
                    failed.push(format!("{p} bridge"));
                }
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::check(format!("mismatch for {}", failed.join(", "))))
    }
}

fn convert(input: &str, to: Option<ConvertTarget>, out: &mut dyn Write) -> Outcome {
    let d = read_digraph(input)?;
    let target = to.unwrap_or(if read_input(input)?.starts_with('{') {
        ConvertTarget::Digraph6
    } else {
        ConvertTarget::Json
    });
    match target {
        ConvertTarget::Json => writeln!(out, "{}", d.to_json())?,
        ConvertTarget::Digraph6 => writeln!(out, "{}", d.to_digraph6())?,
    }
    Ok(())
}

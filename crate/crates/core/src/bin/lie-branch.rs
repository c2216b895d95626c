use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use lie_branch::branch::branch;
use lie_branch::embed::{self, EmbeddingDescriptor};
use lie_branch::expr::{parse_params, Env};
use lie_branch::gamma::{self, duality_check};
use lie_branch::paperdata::{self, CaseFilter, CaseInstance, Table};
use lie_branch::report::{branch_summary, CertificateSummary, Report};
use lie_branch::rootsys::Family;
use lie_branch::{Error, Result};

const WEIGHT_HELP: &str = "\
Weights of G are written either as coefficients on the fundamental weights,
`1,0,2`, or as a sum `pi1+2pi3` (also `pi[3]`). For SL_n block cases the
degree coordinate of the GL_n lift is filled in automatically.

Embeddings (--case) are catalog ids such as `sl_sp`, `e6_f4` or `so_in_sl`
(parameters via --params n=3), the forms `identity:B3`, `levi:2,1`,
`blocks:sp4,sl1`, or the id of a tabulated case such as `sl_spsp_12`
(which also supplies I and the expected generators).

Exit codes: 0 ok, 1 verification FAIL, 2 usage error, 3 internal inconsistency.";

#[derive(Parser)]
#[command(name = "lie-branch", version, about = "Branching rules and restricted branching monoids", after_help = WEIGHT_HELP)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Emit the structured JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// Embedding or tabulated case id.
    #[arg(long)]
    case: Option<String>,
    /// `k=v,...`
    #[arg(long, default_value = "")]
    params: String,
    /// Restriction matrix file in the embedding catalog format.
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose R_G(lambda) over H.
    Branch {
        #[command(flatten)]
        target: Target,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Enumerate Gamma_I(G, H) up to a degree bound and certify freeness.
    Gamma {
        #[command(flatten)]
        target: Target,
        /// 1-based nodes of G, `1,3`, or `S` for all of them.
        #[arg(long = "I")]
        index_set: Option<String>,
        #[arg(long, default_value_t = 4)]
        bound: u32,
    },
    /// Replay tabulated cases against the monoid engine.
    Verify {
        #[arg(long, conflicts_with = "case")]
        all: bool,
        #[arg(long)]
        case: Option<String>,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, default_value_t = 4)]
        bound: u32,
        /// Smallest admissible bound per case and no duality pass.
        #[arg(long)]
        quick: bool,
        /// Only records of this table (`Levi-SL`, `SL`, `Sym`).
        #[arg(long)]
        table: Option<Table>,
    },
    /// List tabulated cases.
    List {
        #[arg(long)]
        table: Option<Table>,
        #[arg(long)]
        family: Option<String>,
        /// Only cases with exceptional G (or only classical with `false`).
        #[arg(long)]
        exceptional: Option<bool>,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonIntegral(_) | Error::NegativeMultiplicity { .. } | Error::Overflow(_) | Error::Data(_) => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Resolved {
    d: EmbeddingDescriptor,
    case: Option<CaseInstance>,
}

fn resolve(t: &Target) -> Result<Resolved> {
    let params = parse_params(&t.params)?;
    if let Some(path) = &t.matrix {
        return Ok(Resolved {
            d: embed::from_matrix_file(path)?,
            case: None,
        });
    }
    let Some(id) = &t.case else {
        return Err(Error::parse("", "give --case or --matrix"));
    };
    if let Some(rec) = paperdata::cases().get(id) {
        let inst = rec.instantiate(&params)?;
        return Ok(Resolved {
            d: inst.embedding.clone(),
            case: Some(inst),
        });
    }
    Ok(Resolved {
        d: embed::resolve(id, &params)?,
        case: None,
    })
}

fn parse_index_set(d: &EmbeddingDescriptor, s: &str) -> Result<Vec<usize>> {
    if s.trim() == "S" {
        return Ok((0..d.g_rank()).collect());
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let k: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::parse(s, "expected 1-based node numbers"))?;
        if k == 0 || k > d.g_rank() {
            return Err(Error::IndexOutOfRange {
                what: format!("nodes of {}", d.g_type()),
                index: k as i64,
            });
        }
        out.push(k - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn fmt_set(v: &[usize]) -> String {
    let s: Vec<String> = v.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", s.join(","))
}

fn cmd_branch(t: &Target, lambda: &str, json: bool) -> std::result::Result<bool, Failure> {
    let Resolved { d, .. } = resolve(t)?;
    let lambda = d.parse_g_weight(lambda)?;
    let r = branch(&d, &lambda)?;
    let s = branch_summary(&d, &r)?;
    let mut rep = Report::new("branch");
    rep.input("case", &d.case_id)?;
    rep.input("params", &d.params)?;
    rep.input("lambda", &lambda)?;
    rep.check(
        "dimension",
        s.conserved(),
        format!(
            "sum of constituent dimensions {} vs dim R_G(lambda) {}",
            s.total_dimension, s.dimension
        ),
    );
    if json {
        print!("{}", rep_with(&mut rep, &s)?);
    } else {
        println!("{d}  lambda = {}  dim {}", s.lambda_label, s.dimension);
        let w = s.constituents.iter().map(|c| c.label.len()).max().unwrap_or(1);
        for c in &s.constituents {
            println!("  {:w$}  mult {}  dim {}", c.label, c.multiplicity, c.dimension);
        }
        println!(
            "total {} = {}  {}",
            s.total_dimension,
            s.dimension,
            if s.conserved() { "PASS" } else { "FAIL" }
        );
    }
    if !s.conserved() {
        return Err(Failure::Internal("dimension is not conserved".into()));
    }
    Ok(true)
}

fn rep_with(rep: &mut Report, result: impl serde::Serialize) -> Result<String> {
    rep.push_result(result)?;
    rep.to_json()
}

fn print_certificate(s: &CertificateSummary, elapsed: f64) {
    let c = &s.certificate;
    println!("{}", s.embedding);
    println!(
        "I = {}  D = {}  elements {}",
        fmt_set(&c.index_set),
        c.bound,
        c.elements.len()
    );
    if !c.multiplicity_free {
        println!(
            "multiplicity-free: NO ({})",
            s.witness_label.as_deref().unwrap_or("no witness recorded")
        );
        return;
    }
    println!("generators ({}):", c.generators.len());
    for g in &s.generator_labels {
        println!("  {g}");
    }
    println!("multiplicity-free: yes (max multiplicity {})", c.max_multiplicity);
    println!(
        "free: {}",
        if c.free {
            "yes (unique factorization up to D)"
        } else {
            "NO"
        }
    );
    if let Some(r) = c.rank_expected {
        println!(
            "expected rank {r}: generators {}, rank {}",
            if c.generators_match == Some(true) {
                "match"
            } else {
                "DIFFER"
            },
            if c.rank_match == Some(true) {
                "matches"
            } else {
                "DIFFERS"
            }
        );
        for m in &s.missing_labels {
            println!("  missing    {m}");
        }
        for u in &s.unexpected_labels {
            println!("  unexpected {u}");
        }
    }
    println!("time {elapsed:.2}s");
}

fn cmd_gamma(t: &Target, index_set: Option<&str>, bound: u32, json: bool) -> std::result::Result<bool, Failure> {
    let Resolved { d, case } = resolve(t)?;
    let index_set = match (index_set, &case) {
        (Some(s), _) => parse_index_set(&d, s)?,
        (None, Some(c)) => c.index_set.clone(),
        (None, None) => return Err(Failure::Usage("--I is required for a bare embedding".into())),
    };
    let expected = case.as_ref().filter(|c| c.index_set == index_set).map(|c| &c.expected);
    let start = Instant::now();
    let mut cert = gamma::certify(&d, &index_set, bound, expected)?;
    if let Some(c) = &case {
        cert.case_id = c.id.clone();
    }
    let mut s = CertificateSummary::new(&d, cert);
    if let Some(c) = &case {
        s.provenance = Some(c.provenance.clone());
        s.reconstructed = Some(c.reconstructed);
    }
    let c = &s.certificate;
    let mut rep = Report::new("gamma");
    rep.input("case", &c.case_id)?;
    rep.input("params", &c.params)?;
    rep.input("index_set", &c.index_set)?;
    rep.input("bound", bound)?;
    rep.check(
        "multiplicity_free",
        c.multiplicity_free,
        format!("max multiplicity {}", c.max_multiplicity),
    );
    if c.multiplicity_free {
        rep.check("free", c.free, "unique factorization of every element up to the bound");
    }
    if expected.is_some() {
        rep.check(
            "generators",
            c.generators_match == Some(true),
            "against the tabulated generators",
        );
        rep.check(
            "rank",
            c.rank_match == Some(true),
            format!("expected {}", c.rank_expected.unwrap_or(0)),
        );
    }
    if json {
        print!("{}", rep_with(&mut rep, &s)?);
    } else {
        print_certificate(&s, start.elapsed().as_secs_f64());
    }
    Ok(true)
}

fn duality_applies(d: &EmbeddingDescriptor) -> bool {
    let t = d.g_type();
    matches!(t.family(), Family::A) || (t.family() == Family::E && t.rank() == 6)
}

fn verify_one(inst: &CaseInstance, bound: u32, quick: bool) -> Result<(CertificateSummary, f64)> {
    let start = Instant::now();
    let b = if quick {
        inst.minimal_bound()
    } else {
        bound.max(inst.minimal_bound())
    };
    let cert = inst.certify(b)?;
    let mut s = CertificateSummary::new(&inst.embedding, cert);
    s.provenance = Some(inst.provenance.clone());
    s.reconstructed = Some(inst.reconstructed);
    if !quick && duality_applies(&inst.embedding) {
        s.duality = Some(duality_check(&inst.embedding, &inst.index_set, b)?);
    }
    Ok((s, start.elapsed().as_secs_f64()))
}

fn cmd_verify(
    all: bool,
    case: Option<&str>,
    params: &str,
    bound: u32,
    quick: bool,
    table: Option<Table>,
    json: bool,
) -> std::result::Result<bool, Failure> {
    let instances: Vec<CaseInstance> = if all {
        let filter = CaseFilter {
            table,
            ..Default::default()
        };
        paperdata::list_cases(&filter)
            .iter()
            .map(|c| paperdata::instantiate(&c.id, &Env::new()))
            .collect::<Result<_>>()?
    } else {
        let Some(id) = case else {
            return Err(Failure::Usage("give --all or --case".into()));
        };
        let params = parse_params(params)?;
        vec![paperdata::instantiate(id, &params)?]
    };
    let runs: Vec<Result<(CertificateSummary, f64)>> = instances
        .par_iter()
        .map(|inst| verify_one(inst, bound, quick))
        .collect();
    let mut rep = Report::new("verify");
    rep.input("all", all)?;
    rep.input("bound", bound)?;
    rep.input("quick", quick)?;
    if let Some(c) = case {
        rep.input("case", c)?;
    }
    let mut failed = 0;
    for (inst, run) in instances.iter().zip(runs) {
        let (s, secs) = run?;
        let ok = s.passed();
        failed += usize::from(!ok);
        let c = &s.certificate;
        let detail = format!(
            "{} at {}: D={}, {} generators, expected rank {}",
            inst.id,
            inst.params_label(),
            c.bound,
            c.generators.len(),
            inst.expected.rank
        );
        if !json {
            println!(
                "{}  {:22} {:18} D={} gens {} rank {}{}  {:.2}s",
                if ok { "PASS" } else { "FAIL" },
                inst.id,
                inst.params_label(),
                c.bound,
                c.generators.len(),
                inst.expected.rank,
                s.duality.as_ref().map_or(String::new(), |r| format!(
                    "  duality {}",
                    if r.holds { "ok" } else { "BROKEN" }
                )),
                secs
            );
            for m in &s.missing_labels {
                println!("      missing    {m}");
            }
            for u in &s.unexpected_labels {
                println!("      unexpected {u}");
            }
            if let Some(w) = &s.witness_label {
                println!("      not multiplicity-free: {w}");
            }
        }
        rep.check(inst.id.clone(), ok, detail);
        rep.push_result(&s)?;
    }
    if json {
        print!("{}", rep.to_json()?);
    } else {
        println!(
            "{} cases: {} PASS, {} FAIL",
            instances.len(),
            instances.len() - failed,
            failed
        );
    }
    Ok(failed == 0)
}

fn cmd_list(filter: CaseFilter, json: bool) -> std::result::Result<bool, Failure> {
    let found = paperdata::list_cases(&filter);
    if json {
        let mut rep = Report::new("list");
        rep.input("table", filter.table.map(|t| t.to_string()))?;
        rep.input("family", &filter.family)?;
        rep.input("exceptional", filter.exceptional)?;
        for c in &found {
            rep.push_result(c)?;
        }
        print!("{}", rep.to_json()?);
    } else {
        for c in &found {
            println!("{:24} {:8} {:14} {}", c.id, c.table.to_string(), c.family, c.smallest);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    // `lie-branch list | head` should end quietly, not panic on a closed pipe
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let json = cli.json;
    let outcome = match &cli.command {
        Command::Branch { target, lambda } => cmd_branch(target, lambda, json),
        Command::Gamma {
            target,
            index_set,
            bound,
        } => cmd_gamma(target, index_set.as_deref(), *bound, json),
        Command::Verify {
            all,
            case,
            params,
            bound,
            quick,
            table,
        } => cmd_verify(*all, case.as_deref(), params, *bound, *quick, *table, json),
        Command::List {
            table,
            family,
            exceptional,
        } => cmd_list(
            CaseFilter {
                table: *table,
                family: family.clone(),
                exceptional: *exceptional,
            },
            json,
        ),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}

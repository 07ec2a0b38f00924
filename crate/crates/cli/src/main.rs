use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use princ_core::census::{
    self, probe_problem4, problem5_witnesses, render_census, run_census_range, DEFAULT_LATTICE_LIMIT,
};
use princ_core::congruence::{con_lattice, princ_order};
use princ_core::construct::{
    build_k, render_exhaustive, verify_exhaustive, verify_theorem1_with, BuildOptions, ConstructError,
};
use princ_core::io::{self, export_dot, Document, DocumentKind};
use princ_core::lattice::{builtin, Lattice};
use princ_core::parallel::with_jobs;
use princ_core::poset::{Poset, DEFAULT_POSET_LIMIT};

#[derive(Parser)]
#[command(name = "princ", version)]
#[command(about = "Principal congruences of finite lattices: analysis, construction, verification, census")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report on a lattice (a .latt file or builtin:NAME)
    Analyze {
        input: String,
        /// List Con L
        #[arg(long)]
        con: bool,
        /// List Princ L and its order
        #[arg(long)]
        princ: bool,
        /// Valuation of every congruence
        #[arg(long)]
        valuation: bool,
        /// Distributive, modular, semimodular
        #[arg(long)]
        props: bool,
    },
    /// Build K with Princ K isomorphic to a bounded poset
    Construct {
        poset: PathBuf,
        /// Write K here instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write a DOT diagram of K with the a_p, b_p highlighted
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        build: BuildFlags,
    },
    /// Check P ≅ Princ K for one poset or for all small bounded posets
    Verify {
        #[arg(required_unless_present = "exhaustive", conflicts_with = "exhaustive")]
        poset: Option<PathBuf>,
        /// Every bounded poset with at most N elements
        #[arg(long, value_name = "N")]
        exhaustive: Option<usize>,
        #[command(flatten)]
        build: BuildFlags,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Congruence data for every lattice with at most N elements
    Census {
        n: usize,
        /// Start at this size instead of 1
        #[arg(long, default_value_t = 1)]
        from: usize,
        /// Write one record per line here
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Lattices with at most N elements whose congruence lattice is B3
    Probe4 {
        n: usize,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Hasse diagram of a poset or lattice in DOT
    ExportDot {
        input: String,
        /// Labels to highlight
        #[arg(long, value_delimiter = ',')]
        highlight: Vec<String>,
    },
}

#[derive(Args)]
struct BuildFlags {
    /// Insert gadgets on covering pairs only
    #[arg(long)]
    covers_only: bool,
}

impl BuildFlags {
    fn options(&self) -> BuildOptions {
        BuildOptions {
            covers_only: self.covers_only,
        }
    }
}

#[derive(Args)]
struct Jobs {
    /// Worker threads (0 = one per core)
    #[arg(long, env = "PRINC_JOBS", default_value_t = 0)]
    jobs: usize,
}

enum Failure {
    /// Bad input or arguments: exit 2.
    Usage(String),
    /// A check ran and failed: exit 1.
    Check(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze {
            input,
            con,
            princ,
            valuation,
            props,
        } => analyze(&input, con, princ, valuation, props),
        Command::Construct {
            poset,
            output,
            dot,
            build,
        } => construct(&poset, output.as_deref(), dot.as_deref(), build.options()),
        Command::Verify {
            poset,
            exhaustive,
            build,
            jobs,
        } => match (poset, exhaustive) {
            (_, Some(n)) => verify_all(n, build.options(), jobs.jobs),
            (Some(path), None) => verify_one(&path, build.options()),
            (None, None) => Err(usage("give a poset file or --exhaustive N")),
        },
        Command::Census { n, from, out, jobs } => run_census(n, from, out.as_deref(), jobs.jobs),
        Command::Probe4 { n, jobs } => probe4(n, jobs.jobs),
        Command::ExportDot { input, highlight } => export(&input, &highlight),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_document(input: &str) -> Result<Document, Failure> {
    if let Some(name) = input.strip_prefix("builtin:") {
        let l = builtin(name).map_err(usage)?;
        return Ok(Document::from_poset(DocumentKind::Lattice, l.order()));
    }
    let path = Path::new(input);
    io::parse(&read(path)?).map_err(|e| usage(format!("{input}: {e}")))
}

fn load_lattice(input: &str) -> Result<Lattice, Failure> {
    load_document(input)?
        .to_lattice()
        .map_err(|e| usage(format!("{input}: {e}")))
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    let doc = io::parse(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    doc.to_poset().map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn analyze(input: &str, con: bool, princ: bool, valuation: bool, props: bool) -> Outcome {
    let l = load_lattice(input)?;
    let all = !(con || princ || valuation || props);
    let cl = con_lattice(&l);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "lattice {input}: {} elements, {} covers",
        l.size(),
        l.order().covers().len()
    );
    if all || props {
        let p = l.predicates();
        let _ = writeln!(out, "distributive {}", p.distributive);
        let _ = writeln!(out, "modular {}", p.modular);
        let _ = writeln!(out, "semimodular {}", p.semimodular);
    }
    if all || con {
        let _ = writeln!(out, "con_size {}", cl.len());
        for i in 0..cl.len() {
            let how = match cl.witness(i) {
                Some((a, b)) => format!("= con({},{})", l.label(a), l.label(b)),
                None => "not principal".to_string(),
            };
            let _ = writeln!(out, "  [{i}] {} {how} v={}", cl.get(i), cl.valuation(i));
        }
        let p = cl.as_poset();
        let covers: Vec<String> = p.covers().iter().map(|(x, y)| format!("{x}<{y}")).collect();
        let _ = writeln!(out, "  order {}", covers.join(" "));
    }
    if all || princ {
        let _ = writeln!(out, "princ_size {}", cl.principal_count());
        let idx = cl.principal_indices();
        let p = princ_order(&cl);
        let covers: Vec<String> = p
            .covers()
            .iter()
            .map(|&(x, y)| format!("{}<{}", idx[x], idx[y]))
            .collect();
        let _ = writeln!(out, "  principal {:?}", idx);
        let _ = writeln!(out, "  order {}", covers.join(" "));
        for i in (0..cl.len()).filter(|&i| !cl.is_principal(i)) {
            let _ = writeln!(out, "  missing [{i}] {}", cl.get(i));
        }
    }
    if all || valuation {
        for i in 0..cl.len() {
            let _ = writeln!(out, "v[{i}] = {}", cl.valuation(i));
        }
        let _ = writeln!(out, "max_valuation {}", cl.max_valuation());
    }
    print!("{out}");
    Ok(())
}

fn construct(path: &Path, output: Option<&Path>, dot: Option<&Path>, opts: BuildOptions) -> Outcome {
    let p = load_poset(path)?;
    let c = build_k(&p, opts).map_err(|e| match e {
        ConstructError::NotBounded => usage(format!("{}: {e}", path.display())),
        other => Failure::Check(other.to_string()),
    })?;
    let text = io::serialize(&Document::from_poset(DocumentKind::Lattice, c.k.order()));
    if let Some(dot) = dot {
        write(dot, &export_dot(c.k.order(), Some(&c.boundary_elements())))?;
    }
    match output {
        Some(out) => {
            write(out, &text)?;
            println!(
                "K: {} elements ({} in F), {} gadgets",
                c.k.size(),
                c.f_size,
                c.gadgets.len()
            );
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn verify_one(path: &Path, opts: BuildOptions) -> Outcome {
    let p = load_poset(path)?;
    match verify_theorem1_with(&p, opts) {
        Ok(report) => {
            println!("{}", report.summary);
            Ok(())
        }
        Err(ConstructError::NotBounded) => Err(usage(format!("{}: order is not bounded", path.display()))),
        Err(e) => Err(Failure::Check(format!("FAIL {}: {e}", path.display()))),
    }
}

fn verify_all(n: usize, opts: BuildOptions, jobs: usize) -> Outcome {
    if n == 0 {
        return Err(usage("--exhaustive needs n >= 1"));
    }
    if n > DEFAULT_POSET_LIMIT {
        return Err(usage(format!("--exhaustive is limited to n <= {DEFAULT_POSET_LIMIT}")));
    }
    let entries = with_jobs(jobs, || verify_exhaustive(n, opts)).map_err(usage)?;
    print!("{}", render_exhaustive(&entries));
    if entries.iter().any(|e| e.outcome.is_err()) {
        return Err(Failure::Check("some posets failed".into()));
    }
    Ok(())
}

fn check_census_size(n: usize) -> Outcome {
    if n == 0 || n > DEFAULT_LATTICE_LIMIT {
        return Err(usage(format!("n must be between 1 and {DEFAULT_LATTICE_LIMIT}")));
    }
    Ok(())
}

fn run_census(n: usize, from: usize, out: Option<&Path>, jobs: usize) -> Outcome {
    check_census_size(n)?;
    let records = with_jobs(jobs, || run_census_range(from, n)).map_err(usage)?;
    if let Some(out) = out {
        write(out, &render_census(&records))?;
    }
    let mut text = String::new();
    for size in from.max(1)..=n {
        let at: Vec<&census::CensusRecord> = records.iter().filter(|r| r.n == size).collect();
        let all_principal = at.iter().filter(|r| r.all_principal).count();
        let max_v = at.iter().map(|r| r.max_valuation).max().unwrap_or(0);
        let _ = writeln!(
            text,
            "n={size}: {} lattices, {all_principal} with Con = Princ, max valuation {max_v}",
            at.len()
        );
    }
    let _ = writeln!(
        text,
        "Con shapes (join-irreducible order) and a witness with Con = Princ:"
    );
    for (shape, (count, witness)) in problem5_witnesses(&records) {
        let w = witness.map_or_else(|| "none".to_string(), |c| c.to_string());
        let _ = writeln!(text, "  {shape} lattices={count} witness={w}");
    }
    print!("{text}");
    Ok(())
}

fn probe4(n: usize, jobs: usize) -> Outcome {
    check_census_size(n)?;
    let records = with_jobs(jobs, || run_census_range(1, n)).map_err(usage)?;
    let findings = probe_problem4(&records, n);
    print!("{findings}");
    if !findings.consistent() {
        return Err(Failure::Check("counterexample found".into()));
    }
    Ok(())
}

fn export(input: &str, highlight: &[String]) -> Outcome {
    let doc = load_document(input)?;
    let order = doc.to_poset().map_err(|e| usage(format!("{input}: {e}")))?;
    let mut marked = Vec::new();
    for h in highlight {
        let x = (0..order.size())
            .find(|&x| order.label(x) == *h)
            .ok_or_else(|| usage(format!("no element labeled {h}")))?;
        marked.push(x);
    }
    print!(
        "{}",
        export_dot(&order, (!marked.is_empty()).then_some(marked.as_slice()))
    );
    Ok(())
}

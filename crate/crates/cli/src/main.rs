//! mbx: build groups, compute character tables, query Kronecker and induced
//! multiplicities, run the verification suite, and ingest class data files.
//! Data goes to stdout, diagnostics to stderr; exit 0 = all good, 1 = some
//! check failed, 2 = bad input.

use clap::{Parser, Subcommand, ValueEnum};
use mbx_core::{
    a_from_centralizers, battery_core, character_table, class_fusion, counterexample_scan, embed,
    exit_code, group_stats, induced_matrix, induced_max, induced_sum_squares, kron_analysis,
    lr_rhs, monster_report, parse_class_data, parse_table, read_table, run_suite, sn_degree_stats,
    to_csv, to_json, to_text, CharacterTable, ClassData, Family, Kron, Permutation,
    SubgroupEmbedding, SubgroupPair, SuiteReport,
};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::ToPrimitive;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "mbx", version, about = "exact character table and multiplicity workbench")]
struct Cli {
    /// Element count limit for group construction.
    #[arg(long, global = true, default_value_t = 250_000)]
    element_cap: usize,

    /// Largest n for symmetric-group degree scans.
    #[arg(long, global = true, default_value_t = 60)]
    sn_cap: u32,

    /// Largest class count for full coefficient scans.
    #[arg(long, global = true, default_value_t = 160)]
    table_cap: usize,

    /// Seed for the randomized steps of table computation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker thread count (MBX_THREADS overrides; default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Report format for verify, scan, and classdata --report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum View {
    Classes,
    Stats,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a group and list its classes or numeric profile.
    Group {
        /// Family descriptor, e.g. s:4, sl2:7, prod(s:3,c:2).
        spec: String,
        #[arg(value_enum, default_value_t = View::Classes)]
        view: View,
    },
    /// Compute a character table.
    Table {
        spec: String,
        /// Write the table file here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kronecker coefficients of a family descriptor or a table file.
    Kron {
        input: String,
        /// Largest coefficient over all triples.
        #[arg(long, group = "mode")]
        max: bool,
        /// One coefficient g(rho, phi, psi) by row indices.
        #[arg(long, group = "mode", num_args = 3, value_names = ["RHO", "PHI", "PSI"])]
        triple: Option<Vec<usize>>,
        /// Sum of squared coefficients, checked against the centralizer sum.
        #[arg(long, group = "mode")]
        sum_squares: bool,
        /// Mean coefficient over all triples.
        #[arg(long, group = "mode")]
        avg: bool,
    },
    /// Induced-character multiplicities for a subgroup embedding.
    Induce {
        /// Parent family descriptor.
        #[arg(long)]
        parent: String,
        /// Subgroup: family descriptor or generator file (cycle notation).
        #[arg(long)]
        sub: String,
        /// Largest multiplicity with its position.
        #[arg(long, group = "imode")]
        max: bool,
        /// Full matrix, parent rows by subgroup columns.
        #[arg(long, group = "imode")]
        matrix: bool,
        /// Sum of squared entries, checked against the centralizer identity.
        #[arg(long, group = "imode")]
        sum_squares: bool,
    },
    /// Symmetric-group degree statistics without building tables.
    Sn {
        #[command(subcommand)]
        cmd: SnCmd,
    },
    /// Run the check suite over a battery or explicit targets.
    Verify {
        /// Named battery; only "core" is defined.
        #[arg(long, conflicts_with = "targets")]
        battery: Option<String>,
        /// Group or parent/sub pair descriptors, repeatable or
        /// comma-separated (commas inside parentheses stay untouched).
        #[arg(long)]
        targets: Vec<String>,
        /// Check names, repeatable or comma-separated (default: all).
        #[arg(long)]
        checks: Vec<String>,
    },
    /// Inspect a class data or table file; --report runs the Monster rows.
    Classdata {
        file: PathBuf,
        #[arg(long)]
        report: bool,
    },
    /// Hunt for counterexamples to a pair check over declared embeddings.
    Scan {
        #[arg(long, default_value = "spec9_5")]
        check: String,
        /// Sweep seed: a group spec expands to its declared subgroup pairs;
        /// parent/sub, diag(h), factor(h) pass through. Repeatable or
        /// comma-separated.
        #[arg(long, required = true)]
        sweep: Vec<String>,
    },
}

#[derive(Subcommand)]
enum SnCmd {
    Stats {
        #[arg(long)]
        n: u32,
        /// Inclusive range A..B of additional rows.
        #[arg(long)]
        range: Option<String>,
    },
}

fn main() {
    // die quietly when a pipe downstream closes early, like any unix filter
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let threads = std::env::var("MBX_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .or(cli.threads);
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(2);
        }
    }
}

fn run(cli: &Cli) -> Result<i32, Box<dyn std::error::Error>> {
    match &cli.cmd {
        Cmd::Group { spec, view } => group_cmd(cli, spec, *view),
        Cmd::Table { spec, out } => table_cmd(cli, spec, out.as_deref()),
        Cmd::Kron {
            input,
            max,
            triple,
            sum_squares,
            avg,
        } => kron_cmd(cli, input, *max, triple.as_deref(), *sum_squares, *avg),
        Cmd::Induce {
            parent,
            sub,
            max,
            matrix,
            sum_squares,
        } => induce_cmd(cli, parent, sub, *max, *matrix, *sum_squares),
        Cmd::Sn {
            cmd: SnCmd::Stats { n, range },
        } => sn_cmd(cli, *n, range.as_deref()),
        Cmd::Verify {
            battery,
            targets,
            checks,
        } => verify_cmd(cli, battery.as_deref(), targets, checks),
        Cmd::Classdata { file, report } => classdata_cmd(cli, file, *report),
        Cmd::Scan { check, sweep } => scan_cmd(cli, check, sweep),
    }
}

/// Splits comma lists while leaving prod(a,b)-style descriptors whole.
fn split_top_level(values: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    for v in values {
        let mut depth = 0usize;
        let mut start = 0usize;
        for (i, c) in v.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    if !v[start..i].trim().is_empty() {
                        out.push(v[start..i].trim().to_string());
                    }
                    start = i + 1;
                }
                _ => {}
            }
        }
        if !v[start..].trim().is_empty() {
            out.push(v[start..].trim().to_string());
        }
    }
    out
}

fn rat_text(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{} (~{:.6})", r, r.to_f64().unwrap_or(f64::NAN))
    }
}

fn group_cmd(cli: &Cli, spec: &str, view: View) -> Result<i32, Box<dyn std::error::Error>> {
    let fam = Family::parse(spec)?;
    let g = fam.build_with_cap(cli.element_cap)?;
    match view {
        View::Classes => {
            println!(
                "group {}  order {}  degree {}  classes {}  exponent {}",
                g.name,
                g.order(),
                g.degree,
                g.class_count(),
                g.exponent()
            );
            println!("class  size  order  centralizer  representative");
            for (i, c) in g.classes().iter().enumerate() {
                println!(
                    "{:>5}  {:>4}  {:>5}  {:>11}  {}",
                    i,
                    c.size(),
                    c.rep_order,
                    g.order() / c.size(),
                    c.representative
                );
            }
        }
        View::Stats => {
            let t = character_table(&g, cli.seed);
            let st = group_stats(&g, &t);
            println!("group        {}", st.name);
            println!("order        {}", st.order);
            println!("degree       {}", g.degree);
            println!("classes      {}", st.k);
            println!("exponent     {}", g.exponent());
            println!("b            {}", st.b);
            println!("e            {}", rat_text(&st.e));
            println!("epsilon      {}", rat_text(&st.epsilon));
            println!("degree_sum   {}", st.degree_sum);
            println!("involutions  {}", st.involutions);
            println!("center       {}", st.center_order);
            println!("simple       {}", if st.is_simple { "yes" } else { "no" });
            match st.nilpotency_class {
                Some(c) => println!("nilpotent    yes (class {})", c),
                None => println!("nilpotent    no"),
            }
        }
    }
    Ok(0)
}

fn table_cmd(cli: &Cli, spec: &str, out: Option<&Path>) -> Result<i32, Box<dyn std::error::Error>> {
    let fam = Family::parse(spec)?;
    let g = fam.build_with_cap(cli.element_cap)?;
    let t = character_table(&g, cli.seed);
    match out {
        Some(path) => {
            mbx_core::write_table_file(&t, path)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{}", mbx_core::write_table(&t)),
    }
    Ok(0)
}

/// A table from disk when the argument names a file, else from a descriptor.
fn load_table(cli: &Cli, input: &str) -> Result<CharacterTable, Box<dyn std::error::Error>> {
    let path = Path::new(input);
    if path.is_file() {
        return Ok(read_table(path)?);
    }
    let fam = Family::parse(input)?;
    let g = fam.build_with_cap(cli.element_cap)?;
    Ok(character_table(&g, cli.seed))
}

fn kron_cmd(
    cli: &Cli,
    input: &str,
    max: bool,
    triple: Option<&[usize]>,
    sum_squares: bool,
    avg: bool,
) -> Result<i32, Box<dyn std::error::Error>> {
    let t = load_table(cli, input)?;
    let kron = Kron::new(&t)?;
    if let Some(idx) = triple {
        for &i in idx {
            if i >= t.k {
                return Err(format!("irrep index {} out of range (k = {})", i, t.k).into());
            }
        }
        println!("{}", kron.coefficient(idx[0], idx[1], idx[2])?);
        return Ok(0);
    }
    if t.k > cli.table_cap {
        return Err(format!(
            "{} has {} classes, above the full-scan limit {} (raise --table-cap)",
            t.group_name, t.k, cli.table_cap
        )
        .into());
    }
    let (stats, _) = kron_analysis(&kron, 0)?;
    let (r, p, s) = stats.argmax;
    if max {
        println!(
            "K({}) = {} at (rho, phi, psi) = ({}, {}, {})",
            t.group_name, stats.max, r, p, s
        );
    } else if sum_squares {
        let a = a_from_centralizers(&t.centralizers);
        println!("{}", stats.sum_squares);
        if stats.sum_squares == a {
            println!("identity holds (lemma7_2)");
        } else {
            println!("identity FAILS (lemma7_2): centralizer sum is {}", a);
            return Ok(1);
        }
    } else if avg {
        println!("{}", rat_text(&stats.average()));
    } else {
        println!("group        {}", t.group_name);
        println!("classes      {}", t.k);
        println!("K            {}  at (rho, phi, psi) = ({}, {}, {})", stats.max, r, p, s);
        println!("sum          {}", stats.sum);
        println!("sum_squares  {}", stats.sum_squares);
        println!("average      {}", rat_text(&stats.average()));
    }
    Ok(0)
}

/// Subgroup from a descriptor when it parses, else from a generator file
/// read at the parent's degree.
fn resolve_sub(
    cli: &Cli,
    parent: &Family,
    sub: &str,
) -> Result<SubgroupEmbedding, Box<dyn std::error::Error>> {
    match Family::parse(sub) {
        Ok(sf) => Ok(SubgroupPair {
            parent: parent.clone(),
            sub: sf,
        }
        .build()?),
        Err(parse_err) => {
            let path = Path::new(sub);
            if !path.is_file() {
                return Err(parse_err.into());
            }
            let pg = parent.build_with_cap(cli.element_cap)?;
            let degree = pg.degree;
            let mut gens: Vec<Permutation> = Vec::new();
            for line in std::fs::read_to_string(path)?.lines() {
                let body = line.split('#').next().unwrap_or("").trim();
                if body.is_empty() {
                    continue;
                }
                gens.push(Permutation::parse_cycles(body, degree)?);
            }
            Ok(embed(pg, gens)?)
        }
    }
}

fn induce_cmd(
    cli: &Cli,
    parent: &str,
    sub: &str,
    max: bool,
    matrix: bool,
    sum_squares: bool,
) -> Result<i32, Box<dyn std::error::Error>> {
    let parent_fam = Family::parse(parent)?;
    let e = resolve_sub(cli, &parent_fam, sub)?;
    let fusion = class_fusion(&e);
    let tg = character_table(&e.parent, cli.seed);
    let th = character_table(&e.sub, cli.seed);
    let m = induced_matrix(&tg, &th, &fusion)?;
    if max {
        let (v, (rho, pi)) = induced_max(&m);
        println!(
            "C({}, {}) = {} at (rho, pi) = ({}, {})",
            m.parent_name, m.sub_name, v, rho, pi
        );
    } else if matrix {
        for row in &m.entries {
            let line: Vec<String> = row.iter().map(BigInt::to_string).collect();
            println!("{}", line.join(" "));
        }
    } else if sum_squares {
        let s = induced_sum_squares(&m);
        let rhs = lr_rhs(&fusion);
        println!("{}", s);
        if BigRational::from_integer(s) == rhs {
            println!("identity holds (lemma8_2)");
        } else {
            println!("identity FAILS (lemma8_2): centralizer ratio sum is {}", rat_text(&rhs));
            return Ok(1);
        }
    } else {
        let (v, (rho, pi)) = induced_max(&m);
        println!("parent       {}  ({} classes)", m.parent_name, tg.k);
        println!("sub          {}  ({} classes)", m.sub_name, th.k);
        println!("index        {}", m.index);
        println!("C            {}  at (rho, pi) = ({}, {})", v, rho, pi);
        println!("sum_squares  {}", induced_sum_squares(&m));
    }
    Ok(0)
}

fn sn_cmd(cli: &Cli, n: u32, range: Option<&str>) -> Result<i32, Box<dyn std::error::Error>> {
    let (lo, hi) = match range {
        None => (n, n),
        Some(r) => {
            let (a, b) = r
                .split_once("..")
                .ok_or_else(|| format!("range `{}` is not of the form A..B", r))?;
            (a.trim().parse::<u32>()?, b.trim().parse::<u32>()?)
        }
    };
    if lo > hi {
        return Err(format!("empty range {}..{}", lo, hi).into());
    }
    for m in lo..=hi {
        let st = sn_degree_stats(m, cli.sn_cap)?;
        println!(
            "n={} p={} b={} m={} f={} f_degree={} eps={:.4}",
            st.n,
            st.partition_count,
            st.b,
            st.m_count,
            st.f_count,
            st.f_degree,
            st.epsilon.to_f64().unwrap_or(f64::NAN)
        );
    }
    Ok(0)
}

fn print_report(format: Format, r: &SuiteReport) {
    match format {
        Format::Text => print!("{}", to_text(r)),
        Format::Json => print!("{}", to_json(r)),
        Format::Csv => print!("{}", to_csv(r)),
    }
}

fn verify_cmd(
    cli: &Cli,
    battery: Option<&str>,
    targets: &[String],
    checks: &[String],
) -> Result<i32, Box<dyn std::error::Error>> {
    if let Some(name) = battery {
        if name != "core" {
            return Err(format!("unknown battery `{}` (only `core` is defined)", name).into());
        }
    }
    let targets = if targets.is_empty() {
        battery_core()
    } else {
        split_top_level(targets)
    };
    let checks = split_top_level(checks);
    eprintln!("verifying {} targets", targets.len());
    let suite = run_suite(&targets, &checks, cli.seed)?;
    print_report(cli.format, &suite);
    Ok(exit_code(&suite))
}

fn classdata_cmd(cli: &Cli, file: &Path, report: bool) -> Result<i32, Box<dyn std::error::Error>> {
    let src = std::fs::read_to_string(file)
        .map_err(|e| format!("{}: {}", file.display(), e))?;
    let has_rows = src
        .lines()
        .any(|l| l.split('#').next().unwrap_or("").trim_start().starts_with("char "));
    let (cd, table) = if has_rows {
        let t = parse_table(&src)?;
        (
            ClassData {
                name: t.group_name.clone(),
                order: t.order.clone(),
                k: t.k,
                centralizers: t.centralizers.clone(),
                degrees: Some(t.degrees.clone()),
            },
            Some(t),
        )
    } else {
        (parse_class_data(&src)?, None)
    };
    if report {
        let rep = monster_report(&cd, table.as_ref())?;
        print_report(cli.format, &rep);
        Ok(exit_code(&rep))
    } else {
        println!("name     {}", cd.name);
        println!("order    {}", cd.order);
        println!("classes  {}", cd.k);
        println!(
            "degrees  {}",
            if cd.degrees.is_some() { "present" } else { "absent" }
        );
        println!("table    {}", if table.is_some() { "full" } else { "class data only" });
        Ok(0)
    }
}

fn scan_cmd(cli: &Cli, check: &str, sweep: &[String]) -> Result<i32, Box<dyn std::error::Error>> {
    let sweep = split_top_level(sweep);
    eprintln!("scanning {} sweep specs", sweep.len());
    let suite = counterexample_scan(check, &sweep, cli.seed)?;
    print_report(cli.format, &suite);
    Ok(exit_code(&suite))
}

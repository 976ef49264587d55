//! Subcommand implementations. Each returns a [`Report`] carrying the JSON,
//! CSV and text forms; `run` wraps it in the provenance envelope.

use std::fmt::{self, Write as _};
use std::path::PathBuf;

use serde_json::{json, Value};
use sn_spectral::characters::{young_decomposition, CharacterTable, MAX_TABLE_DEGREE};
use sn_spectral::combinatorics::{kostka_number, lex_initial_segment, Partition, PermutationSet};
use sn_spectral::fourier::{operator_m_spectrum, projection_report};
use sn_spectral::isolab::{
    exhaustive_benefraim, fourth_moment_bound_check, sampled_benefraim, stability_report_with_count,
    two_level_optimum, BenEfraimTable, FamilySpec, SearchMode, MAX_EXHAUSTIVE_DEGREE,
};
use sn_spectral::scalar::{format_rational, rational_pair};
use sn_spectral::spectral::{
    dense_operator_m_check, edge_boundary, normal_cayley_eigenvalues, spectral_lower_bounds,
    transposition_eigenvalues, BoundaryReport, CayleySpec, MAX_DENSE_ORACLE_DEGREE,
};
use sn_spectral::{Error, Rational};

use crate::output::{Envelope, Report};
use crate::{Cli, Command, SetInput};

/// Tolerance of the dense eigenvalue cross-check.
const DENSE_TOLERANCE: f64 = 1e-8;
/// Random starts per size when `lexcheck` falls back to local search.
const DEFAULT_SAMPLES: usize = 8;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
}

impl CliError {
    /// 2 for capacity errors, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_capacity() => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(Error::Io(e))
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

struct Context {
    cache_dir: Option<PathBuf>,
    seed: Option<u64>,
}

impl Context {
    /// Seeds the process-wide table cache from disk when a cache dir is set.
    fn prepare_table(&self, n: usize) -> CliResult<()> {
        if let Some(dir) = &self.cache_dir {
            if n <= MAX_TABLE_DEGREE {
                CharacterTable::install(CharacterTable::load_or_compute(dir, n)?);
            }
        }
        Ok(())
    }
}

/// Runs the parsed command and renders its report.
pub fn run(cli: &Cli) -> CliResult<String> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads as usize)
            .build_global()
            .map_err(|e| usage(format!("cannot start thread pool: {e}")))?;
    }
    let ctx = Context {
        cache_dir: cli
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os("SN_SPECTRAL_CACHE").map(PathBuf::from)),
        seed: cli.seed,
    };
    let mut canonical = format!("{:?}", cli.command);
    let (name, report, seed) = match &cli.command {
        Command::Chartable { n } => ("chartable", chartable(&ctx, *n)?, ctx.seed),
        Command::Kostka { lambda, mu } => ("kostka", kostka(lambda.as_deref(), mu)?, ctx.seed),
        Command::Project { input, t } => {
            let set = load_set(input, &mut canonical)?;
            ctx.prepare_table(set.n())?;
            ("project", project(&set, *t)?, ctx.seed)
        }
        Command::Spectrum { n, generators } => ("spectrum", spectrum(&ctx, *n, generators)?, ctx.seed),
        Command::Boundary { input } => {
            let set = load_set(input, &mut canonical)?;
            ("boundary", boundary(&edge_boundary(&set)?), ctx.seed)
        }
        Command::Bounds { input, t } => {
            let set = load_set(input, &mut canonical)?;
            ctx.prepare_table(set.n())?;
            ("bounds", boundary(&spectral_lower_bounds(&set, *t)?), ctx.seed)
        }
        Command::Lexcheck { n, exhaustive, samples } => {
            let (report, seed) = lexcheck(&ctx, *n, *exhaustive, *samples)?;
            ("lexcheck", report, seed)
        }
        Command::Stability { input, t, m } => {
            let set = load_set(input, &mut canonical)?;
            ctx.prepare_table(set.n())?;
            ("stability", stability(&set, *t, *m)?, ctx.seed)
        }
        Command::Mcheck { n, t } => ("mcheck", mcheck(&ctx, *n, *t)?, ctx.seed),
        Command::H4check {
            trials,
            grid,
            theta_range,
            eta_range,
            theta,
            eta,
        } => {
            let seed = ctx.seed.unwrap_or(0);
            let report = h4check(*trials, *grid, theta_range, eta_range, theta, eta, seed)?;
            ("h4check", report, Some(seed))
        }
    };
    if let Some(seed) = seed {
        write!(canonical, "\nseed={seed}").expect("write to string");
    }
    let envelope = Envelope::new(name, &canonical, seed, cli.deterministic);
    Ok(envelope.render(&report, cli.format))
}

/// Resolves the set source; a file's contents are appended to the digest input.
fn load_set(input: &SetInput, canonical: &mut String) -> CliResult<PermutationSet> {
    let set = if let Some(path) = &input.set {
        let text = std::fs::read_to_string(path)?;
        canonical.push('\n');
        canonical.push_str(&text);
        PermutationSet::from_text(&text)?
    } else {
        let n = input.n.ok_or_else(|| usage("--n is required with --family or --k"))?;
        match (&input.family, input.k) {
            (Some(spec), _) => FamilySpec::parse(n, spec)?.generate()?,
            (None, Some(k)) => lex_initial_segment(n, k)?,
            (None, None) => return Err(usage("one of --set, --family or --k is required")),
        }
    };
    if let Some(n) = input.n {
        if n != set.n() {
            return Err(usage(format!("--n {n} disagrees with the set's degree {}", set.n())));
        }
    }
    Ok(set)
}

fn csv_quote(s: &str) -> String {
    format!("\"{s}\"")
}

fn chartable(ctx: &Context, n: usize) -> CliResult<Report> {
    ctx.prepare_table(n)?;
    let table = CharacterTable::cached(n)?;
    let labels: Vec<String> = table.partitions().iter().map(Partition::to_csv_form).collect();
    let total = table.sum_dim_squared();

    let mut csv = format!(
        "partition,dim,{}\n",
        labels.iter().map(|l| csv_quote(l)).collect::<Vec<_>>().join(",")
    );
    let mut text = format!("character table of S_{n} (rows: irreducibles, columns: classes)\n");
    writeln!(text, "classes: {}", table.partitions().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "))
        .expect("write to string");
    let mut rows = Vec::new();
    for (i, label) in labels.iter().enumerate() {
        let values = table.row_values(i);
        let joined: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        writeln!(csv, "{},{},{}", csv_quote(label), table.dim(i), joined.join(",")).expect("write to string");
        writeln!(text, "{:>16}  {}", table.partitions()[i].to_string(), joined.join(" ")).expect("write to string");
        rows.push(json!({ "partition": label, "dim": table.dim(i) as u64, "values": values }));
    }
    writeln!(csv, "sum_dim_squared,{total}").expect("write to string");
    writeln!(text, "sum of squared dimensions: {total}").expect("write to string");
    let json = json!({
        "n": n,
        "classes": labels,
        "class_sizes": table.class_sizes().iter().map(|&s| s as u64).collect::<Vec<_>>(),
        "rows": rows,
        "sum_dim_squared": total as u64,
        "rows_orthonormal": table.rows_orthonormal(),
        "columns_orthogonal": table.columns_orthogonal(),
    });
    Ok(Report::new(json, Some(csv), text))
}

fn kostka(lambda: Option<&str>, mu: &str) -> CliResult<Report> {
    let mu: Partition = mu.parse()?;
    if let Some(lambda) = lambda {
        let lambda: Partition = lambda.parse()?;
        let k = kostka_number(&lambda, &mu)?;
        let json = json!({ "lambda": lambda.to_csv_form(), "mu": mu.to_csv_form(), "kostka": k as u64 });
        let csv = format!("lambda,mu,kostka\n{},{},{k}\n", csv_quote(&lambda.to_csv_form()), csv_quote(&mu.to_csv_form()));
        return Ok(Report::new(json, Some(csv), format!("K_{{{lambda},{mu}}} = {k}\n")));
    }
    let terms = young_decomposition(&mu)?;
    let mut csv = String::from("lambda,kostka\n");
    let mut text = format!("ξ_{mu} =");
    for (i, (l, k)) in terms.iter().enumerate() {
        writeln!(csv, "{},{k}", csv_quote(&l.to_csv_form())).expect("write to string");
        write!(text, "{} {k}·χ_{l}", if i == 0 { "" } else { " +" }).expect("write to string");
    }
    text.push('\n');
    let json = json!({
        "mu": mu.to_csv_form(),
        "decomposition": terms.iter().map(|(l, k)| json!([l.to_csv_form(), *k as u64])).collect::<Vec<_>>(),
    });
    Ok(Report::new(json, Some(csv), text))
}

fn project(set: &PermutationSet, t: usize) -> CliResult<Report> {
    let r = projection_report(set, t)?;
    let mut csv = String::from("partition,norm_squared\n");
    for (a, v) in &r.norms {
        writeln!(csv, "{},{}", csv_quote(&a.to_csv_form()), format_rational(v)).expect("write to string");
    }
    let epsilon = r.epsilon.as_ref().map_or_else(|| "undefined".to_string(), format_rational);
    let text = format!(
        "n = {}, t = {}, |A| = {}\nc = {}\ntail E[(f - f_t)^2] = {}\nepsilon = {epsilon}\n{csv}",
        r.n,
        r.t,
        r.size,
        format_rational(&r.c),
        format_rational(&r.tail)
    );
    Ok(Report::new(r.to_json(), Some(csv), text))
}

fn spectrum(ctx: &Context, n: usize, generators: &str) -> CliResult<Report> {
    ctx.prepare_table(n)?;
    let (report, method) = if generators.trim() == "transpositions" {
        (transposition_eigenvalues(n)?, "content_sum")
    } else {
        let spec = CayleySpec::<Rational>::parse(n, generators)?;
        (normal_cayley_eigenvalues(&spec)?, "character_sum")
    };
    let gap = report.spectral_gap();
    let mut json = report.to_json();
    json["generators"] = json!(generators);
    json["method"] = json!(method);
    json["spectral_gap"] = json!(gap.as_ref().map(rational_pair));
    let csv = report.to_csv();
    let gap_text = gap.as_ref().map_or_else(|| "none".to_string(), format_rational);
    let text = format!("S_{n}, generators {generators}\nspectral gap: {gap_text}\n{csv}");
    Ok(Report::new(json, Some(csv), text))
}

fn boundary(r: &BoundaryReport) -> Report {
    let mut json = r.to_json();
    json["all_bounds_hold"] = json!(r.all_bounds_hold());
    let mut csv = String::from("name,value,slack,tight\n");
    writeln!(csv, "boundary,{},0,true", r.boundary).expect("write to string");
    for b in &r.bounds {
        writeln!(csv, "{},{},{},{}", b.name, format_rational(&b.value), format_rational(&b.slack), b.tight)
            .expect("write to string");
    }
    let mut text = format!("n = {}, |A| = {}, |∂A| = {}\n", r.n, r.size, r.boundary);
    for b in &r.bounds {
        writeln!(
            text,
            "{:<22} {:>16}  slack {}{}",
            b.name,
            format_rational(&b.value),
            format_rational(&b.slack),
            if b.tight { "  (tight)" } else { "" }
        )
        .expect("write to string");
    }
    if let Some(c) = r.centered_in_gap_eigenspace {
        writeln!(text, "centred indicator in the gap eigenspace: {c}").expect("write to string");
    }
    Report::new(json, Some(csv), text)
}

fn verdict(table: &BenEfraimTable) -> &'static str {
    if table.holds() {
        "conjecture holds"
    } else {
        "counterexample found"
    }
}

fn lexcheck(ctx: &Context, n: usize, exhaustive: bool, samples: Option<usize>) -> CliResult<(Report, Option<u64>)> {
    let use_exhaustive = exhaustive || (samples.is_none() && n <= MAX_EXHAUSTIVE_DEGREE);
    let (table, seed) = if use_exhaustive {
        (exhaustive_benefraim(n)?, ctx.seed)
    } else {
        let seed = ctx.seed.unwrap_or(0);
        (sampled_benefraim(n, samples.unwrap_or(DEFAULT_SAMPLES), seed)?, Some(seed))
    };
    let mode = match table.mode {
        SearchMode::Exhaustive => json!({ "kind": "exhaustive" }),
        SearchMode::Sampled { samples_per_size, seed } => {
            json!({ "kind": "sampled", "samples_per_size": samples_per_size, "seed": seed })
        }
    };
    let csv = table.to_csv();
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            json!({
                "k": r.k,
                "lex_boundary": r.lex_boundary,
                "min_boundary": r.min_boundary,
                "witness_ranks": r.witness,
            })
        })
        .collect();
    let json = json!({ "n": n, "mode": mode, "verdict": verdict(&table), "rows": rows, "csv": csv });
    let text = format!("{}\n{csv}", verdict(&table));
    let body = format!("# {}\n{csv}", verdict(&table));
    Ok((Report::new(json, Some(body), text), seed))
}

fn stability(set: &PermutationSet, t: usize, m: Option<usize>) -> CliResult<Report> {
    let r = stability_report_with_count(set, t, m)?;
    let csv = format!(
        "n,t,size,c,epsilon,round_c,m_found,symdiff,symdiff_ratio,exact_search,measured_constant,measured_rounding_constant\n\
         {},{},{},{},{},{},{},{},{},{},{},{}\n",
        r.n,
        r.t,
        r.size,
        format_rational(&r.c),
        format_rational(&r.epsilon),
        r.round_c,
        r.m_found,
        r.symdiff,
        format_rational(&r.symdiff_ratio),
        r.exact_search,
        r.measured_constant,
        r.measured_rounding_constant
    );
    let mut text = format!(
        "n = {}, t = {}, |A| = {}\nc = {}, round(c) = {}\nepsilon = {}\nclosest union of {} cosets ({}): |A Δ C| = {} (ratio {})\n",
        r.n,
        r.t,
        r.size,
        format_rational(&r.c),
        r.round_c,
        format_rational(&r.epsilon),
        r.m_found,
        if r.exact_search { "exact search" } else { "local search" },
        r.symdiff,
        format_rational(&r.symdiff_ratio)
    );
    for c in &r.cosets {
        writeln!(text, "  {c}").expect("write to string");
    }
    writeln!(
        text,
        "measured constants: {} (union), {} (rounding)",
        r.measured_constant, r.measured_rounding_constant
    )
    .expect("write to string");
    Ok(Report::new(r.to_json(), Some(csv), text))
}

fn mcheck(ctx: &Context, n: usize, t: usize) -> CliResult<Report> {
    ctx.prepare_table(n)?;
    let spectrum = operator_m_spectrum(n, t)?;
    let dense = if n <= MAX_DENSE_ORACLE_DEGREE {
        Some(dense_operator_m_check(n, t, DENSE_TOLERANCE)?)
    } else {
        None
    };
    let mut csv = String::from("partition,eigenvalue\n");
    for (a, v) in &spectrum {
        writeln!(csv, "{},{}", csv_quote(&a.to_csv_form()), format_rational(v)).expect("write to string");
    }
    let dense_json = dense.as_ref().map(|d| {
        json!({
            "max_eigenvalue_error": d.max_eigenvalue_error,
            "max_eigenspace_residual": d.max_eigenspace_residual,
            "max_matrix_error": d.max_matrix_error,
            "tolerance": d.tolerance,
            "passed": d.passed(),
        })
    });
    let json = json!({
        "n": n,
        "t": t,
        "eigenvalues": spectrum.iter().map(|(a, v)| json!([a.to_csv_form(), rational_pair(v)])).collect::<Vec<_>>(),
        "dense_check": dense_json,
    });
    let dense_text = match &dense {
        Some(d) if d.passed() => format!("dense cross-check passed (max error {:e})\n", d.max_eigenvalue_error),
        Some(d) => format!("dense cross-check FAILED: {d:?}\n"),
        None => format!("dense cross-check skipped (n > {MAX_DENSE_ORACLE_DEGREE})\n"),
    };
    Ok(Report::new(json, Some(csv.clone()), format!("{dense_text}{csv}")))
}

fn parse_range(text: &str, what: &str) -> CliResult<(f64, f64)> {
    let bad = || usage(format!("--{what} expects \"lo,hi\", found {text:?}"));
    let (lo, hi) = text.split_once(',').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn parse_rational(text: &str, what: &str) -> CliResult<Rational> {
    text.trim()
        .parse()
        .map_err(|_| usage(format!("--{what} expects a rational such as 1/4, found {text:?}")))
}

fn h4check(
    trials: usize,
    grid: usize,
    theta_range: &str,
    eta_range: &str,
    theta: &str,
    eta: &str,
    seed: u64,
) -> CliResult<Report> {
    let verdict = fourth_moment_bound_check(
        trials,
        parse_range(theta_range, "theta-range")?,
        parse_range(eta_range, "eta-range")?,
        grid,
        seed,
    )?;
    let optimum = two_level_optimum(parse_rational(theta, "theta")?, parse_rational(eta, "eta")?)?;
    let json = json!({ "randomized": verdict.to_json(), "optimum": optimum.to_json() });
    let csv = format!(
        "trials,grid_size,seed,bound_violations,minimum_violations,min_gap_to_minimum,theta,eta,optimum_fourth_moment,optimum_attained\n\
         {},{},{},{},{},{},{},{},{},{}\n",
        verdict.trials,
        verdict.grid_size,
        verdict.seed,
        verdict.bound_violations,
        verdict.minimum_violations,
        verdict.min_gap_to_minimum,
        format_rational(&optimum.theta),
        format_rational(&optimum.eta),
        format_rational(&optimum.fourth_moment),
        optimum.attained()
    );
    let text = format!(
        "{} trials on a {}-cell grid: {} bound violations, {} minimum violations, least gap {:e}\n\
         two-level optimum at theta = {}, eta = {}: E[h^4] = {} ({})\n",
        verdict.trials,
        verdict.grid_size,
        verdict.bound_violations,
        verdict.minimum_violations,
        verdict.min_gap_to_minimum,
        format_rational(&optimum.theta),
        format_rational(&optimum.eta),
        format_rational(&optimum.fourth_moment),
        if optimum.attained() { "attained" } else { "not attained" }
    );
    Ok(Report::new(json, Some(csv), text))
}

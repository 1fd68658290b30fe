//! The `nlspec` command line.
//!
//! Exit codes: 0 success, 1 a check or verification failed, 2 usage or
//! input error. JSON output carries `"schema": 1`; rationals print as
//! `"num/den"`.

use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cache::{cache_path, FingerprintCache};
use crate::canon::canonical_form;
use crate::enumerate::{import_graph6, EnumFilter, Enumerator, DEFAULT_CAP, OVERRIDE_CAP};
use crate::error::{Error, Result};
use crate::graph::{construct_basic, gamma_graph, generalized_friendship, Family, Graph};
use crate::graph6;
use crate::poly::fmt_rational;
use crate::spectral::{closed_form_fpq, fingerprint, float_spectrum, spectrum_to_fingerprint};
use crate::structure::{lemma_witness_check, three_eigenvalue_check, CheckReport};
use crate::verify::{
    find_cospectral_mates_with, verify_cycle_mates_with, verify_ds_batch, verify_star_mates_with,
    SearchOptions, DEFAULT_MAX_N,
};

#[derive(Parser, Debug)]
#[command(
    name = "nlspec",
    version,
    about = "Exact normalized-Laplacian spectra and cospectral-mate searches"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Also print floating-point eigenvalues.
    #[arg(long, global = true)]
    float: bool,

    /// Worker threads (1 = sequential reference path).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,

    /// Fingerprint cache file (default: $NLSPEC_CACHE).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Largest order searched exhaustively.
    #[arg(long = "max-n", global = true, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,

    /// Include wall-clock times in reports.
    #[arg(long, global = true)]
    timing: bool,

    /// Search all graphs rather than connected ones.
    #[arg(long = "all-graphs", global = true)]
    all_graphs: bool,
}

#[derive(Args, Debug, Clone)]
struct GraphInput {
    /// A graph in graph6.
    #[arg(long, conflicts_with_all = ["stdin", "construct"])]
    graph6: Option<String>,

    /// Read newline-delimited graph6 from standard input.
    #[arg(long, conflicts_with = "construct")]
    stdin: bool,

    /// family:params, e.g. fpq:2,3 or cycle:8. Families: complete, cycle,
    /// path, star, kbip, fpq, gamma, empty.
    #[arg(long)]
    construct: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct FilterArgs {
    #[arg(short = 'n', long = "n")]
    n: usize,
    #[arg(long)]
    connected: bool,
    #[arg(long = "min-degree")]
    min_degree: Option<usize>,
    #[arg(long = "max-degree")]
    max_degree: Option<usize>,
    /// Permit n up to 12.
    #[arg(long = "allow-large")]
    allow_large: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact characteristic polynomial (and closed form for fpq).
    Spectrum(GraphInput),
    /// Print a constructed graph in graph6.
    Construct {
        /// family:params
        spec: String,
    },
    /// Cospectral mates by exhaustive search.
    Mates {
        #[command(flatten)]
        input: GraphInput,
        /// Order to search (defaults to the graph's order).
        #[arg(long = "n")]
        n: Option<usize>,
    },
    /// Whether F_{p,q} is determined by its spectrum.
    VerifyDs {
        #[arg(short = 'p', required_unless_present = "all")]
        p: Option<usize>,
        #[arg(short = 'q', required_unless_present = "all")]
        q: Option<usize>,
        /// Every (p, q) with pq + 1 <= max-n.
        #[arg(long, conflicts_with_all = ["p", "q"])]
        all: bool,
    },
    /// Cospectral mates of the star K_{1,p}.
    VerifyStars {
        /// Star sizes (default 3, 4, 5).
        #[arg(short = 'p')]
        p: Vec<usize>,
    },
    /// Whether γ_{4k} is a cospectral mate of C_{4k}.
    VerifyCycles {
        /// Default 2.
        #[arg(short = 'k')]
        k: Vec<usize>,
    },
    /// Three-eigenvalue equations with spectrum {0, 1/q, 1 + 1/q}.
    CheckThreeEig {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short = 'q')]
        q: usize,
    },
    /// Degree and size witnesses for graphs cospectral with F_{p,q}.
    CheckWitness {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short = 'p')]
        p: usize,
        #[arg(short = 'q')]
        q: usize,
    },
    /// Isomorph-free graphs as graph6, one per line.
    Enumerate {
        #[command(flatten)]
        filter: FilterArgs,
        /// Canonicalize and filter an external graph6 file ("-" for stdin)
        /// instead of generating.
        #[arg(long)]
        import: Option<PathBuf>,
    },
    /// Number of isomorphism classes.
    Count {
        #[command(flatten)]
        filter: FilterArgs,
    },
}

struct Ctx<'a> {
    cli: &'a Cli,
    stdin: &'a mut dyn BufRead,
    out: &'a mut dyn Write,
}

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::TooManyVertices(_)
            | Error::MalformedGraph6 { .. }
            | Error::Precondition(_)
            | Error::CapExceeded { .. } => Failure::Usage(e.to_string()),
            other => Failure::Run(other),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Run(e.into())
    }
}

type Outcome = std::result::Result<bool, Failure>;

/// Parses `argv` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(argv: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let mut ctx = Ctx {
        cli: &cli,
        stdin,
        out,
    };
    let result = dispatch(&mut ctx).and_then(|ok| {
        ctx.out.flush()?;
        Ok(ok)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Run(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(ctx: &mut Ctx) -> Outcome {
    let cli = ctx.cli;
    if cli.max_n > OVERRIDE_CAP {
        return Err(Failure::Usage(format!(
            "--max-n {} exceeds the hard limit {OVERRIDE_CAP}",
            cli.max_n
        )));
    }
    match &cli.command {
        Command::Spectrum(input) => spectrum(ctx, input),
        Command::Construct { spec } => {
            let g = parse_construct(spec)?;
            emit(
                ctx,
                json!({"schema": 1, "graph6": graph6::encode(&g), "n": g.n(), "m": g.m()}),
                graph6::encode(&g),
            )?;
            Ok(true)
        }
        Command::Mates { input, n } => mates(ctx, input, *n),
        Command::VerifyDs { p, q, all } => verify_ds_cmd(ctx, *p, *q, *all),
        Command::VerifyStars { p } => {
            let ps = if p.is_empty() {
                vec![3, 4, 5]
            } else {
                p.clone()
            };
            let opts = search_options(cli);
            let mut cache = open_cache(cli)?;
            let mut ok = true;
            for p in ps {
                let r = verify_star_mates_with(p, &opts, cache.as_mut())?;
                ok &= r.matches_expected();
                let g6s: Vec<&str> = r.mates.iter().map(|c| c.g6.as_str()).collect();
                let text = format!(
                    "K_1,{}: mates [{}] expected {}",
                    r.p,
                    g6s.join(", "),
                    if r.matches_expected() { "yes" } else { "NO" }
                );
                emit(ctx, r.to_json(), text)?;
            }
            Ok(ok)
        }
        Command::VerifyCycles { k } => {
            let ks = if k.is_empty() { vec![2] } else { k.clone() };
            let opts = search_options(cli);
            let mut cache = open_cache(cli)?;
            let mut ok = true;
            for k in ks {
                let r = verify_cycle_mates_with(k, &opts, cache.as_mut())?;
                ok &= r.holds();
                let text = format!(
                    "C_{}: gamma cospectral {} distinct {} exhaustive {} holds {}",
                    r.n,
                    r.cospectral,
                    r.distinct,
                    r.other_mates.is_some(),
                    r.holds()
                );
                emit(ctx, r.to_json(), text)?;
            }
            Ok(ok)
        }
        Command::CheckThreeEig { input, q } => {
            let mut ok = true;
            for g in read_graphs(ctx, input)? {
                let r = three_eigenvalue_check(&g, *q)?;
                let roots = three_roots(*q);
                let spectral = fingerprint(&g).distinct_roots_are(&roots);
                let agree = spectral == r.passed();
                ok &= r.passed() && agree;
                let mut v = r.to_json();
                v["graph6"] = json!(graph6::encode(&g));
                v["q"] = json!(q);
                v["spectrum_matches"] = json!(spectral);
                emit(ctx, v, check_text(&g, &r, Some(spectral)))?;
            }
            Ok(ok)
        }
        Command::CheckWitness { input, p, q } => {
            let mut ok = true;
            for g in read_graphs(ctx, input)? {
                let r = lemma_witness_check(&g, *p, *q)?;
                ok &= r.passed();
                let mut v = r.to_json();
                v["graph6"] = json!(graph6::encode(&g));
                v["p"] = json!(p);
                v["q"] = json!(q);
                emit(ctx, v, check_text(&g, &r, None))?;
            }
            Ok(ok)
        }
        Command::Enumerate { filter, import } => enumerate_cmd(ctx, filter, import.as_ref()),
        Command::Count { filter } => {
            let f = to_filter(filter);
            let count = enumerator(cli, filter, f).count()?;
            emit(
                ctx,
                json!({"schema": 1, "filter": filter_json(&f), "count": count}),
                count.to_string(),
            )?;
            Ok(true)
        }
    }
}

fn emit(ctx: &mut Ctx, v: Value, text: String) -> std::result::Result<(), Failure> {
    if ctx.cli.json {
        writeln!(ctx.out, "{v}")?;
    } else {
        writeln!(ctx.out, "{text}")?;
    }
    Ok(())
}

fn search_options(cli: &Cli) -> SearchOptions {
    SearchOptions {
        threads: cli.threads.map(|t| t as usize),
        max_n: cli.max_n,
        all_graphs: cli.all_graphs,
    }
}

fn open_cache(cli: &Cli) -> Result<Option<FingerprintCache>> {
    cache_path(cli.cache.as_deref())
        .map(FingerprintCache::open)
        .transpose()
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("--construct: bad parameter {t:?}")))
        })
        .collect()
}

/// Builds a graph from `family:params`.
pub fn parse_construct(spec: &str) -> Result<Graph> {
    let (family, params) = spec.split_once(':').ok_or_else(|| {
        Error::InvalidParameter(format!("--construct {spec:?}: expected family:params"))
    })?;
    let params = parse_usize_list(params)?;
    let basic = |f| construct_basic(f, &params);
    let two = || -> Result<(usize, usize)> {
        match params[..] {
            [a, b] => Ok((a, b)),
            _ => Err(Error::InvalidParameter(format!(
                "--construct {family}: expects two parameters"
            ))),
        }
    };
    match family {
        "complete" => basic(Family::Complete),
        "cycle" => basic(Family::Cycle),
        "path" => basic(Family::Path),
        "star" => basic(Family::Star),
        "kbip" => basic(Family::CompleteBipartite),
        "empty" => basic(Family::Empty),
        "fpq" => {
            let (p, q) = two()?;
            generalized_friendship(p, q)
        }
        "gamma" => match params[..] {
            [k] => gamma_graph(k),
            _ => Err(Error::InvalidParameter(
                "--construct gamma: expects one parameter".into(),
            )),
        },
        other => Err(Error::InvalidParameter(format!(
            "--construct: unknown family {other:?}"
        ))),
    }
}

fn read_graphs(ctx: &mut Ctx, input: &GraphInput) -> Result<Vec<Graph>> {
    if let Some(s) = &input.graph6 {
        return Ok(vec![graph6::decode(s)?]);
    }
    if let Some(spec) = &input.construct {
        return Ok(vec![parse_construct(spec)?]);
    }
    if input.stdin {
        let mut text = String::new();
        ctx.stdin.read_to_string(&mut text)?;
        let gs = graph6::decode_lines(&text)?;
        if gs.is_empty() {
            return Err(Error::InvalidParameter(
                "--stdin: no graphs on standard input".into(),
            ));
        }
        return Ok(gs);
    }
    Err(Error::InvalidParameter(
        "one of --graph6, --stdin or --construct is required".into(),
    ))
}

fn three_roots(q: usize) -> Vec<(BigInt, BigInt)> {
    let q = BigInt::from(q);
    vec![
        (BigInt::from(0), BigInt::from(1)),
        (BigInt::from(1), q.clone()),
        (&q + 1, q),
    ]
}

fn check_text(g: &Graph, r: &CheckReport, spectral: Option<bool>) -> String {
    let mut s = format!(
        "{}: {}",
        graph6::encode(g),
        if r.passed() { "passed" } else { "failed" }
    );
    if let Some(v) = &r.first_violation {
        s.push_str(&format!(" {}", v.to_json()));
    }
    if let Some(b) = spectral {
        s.push_str(&format!(" (spectrum matches: {b})"));
    }
    s
}

fn spectrum(ctx: &mut Ctx, input: &GraphInput) -> Outcome {
    let fpq = input
        .construct
        .as_deref()
        .and_then(|s| s.strip_prefix("fpq:"))
        .map(parse_usize_list)
        .transpose()?;
    let mut ok = true;
    for g in read_graphs(ctx, input)? {
        let fp = fingerprint(&g);
        let poly: Vec<String> = fp.monic_coefficients().iter().map(fmt_rational).collect();
        let mut v = json!({
            "schema": 1,
            "graph6": graph6::encode(&g),
            "canonical_graph6": canonical_form(&g).g6,
            "n": g.n(),
            "m": g.m(),
            "fingerprint": fp.to_json(),
            "char_poly": poly,
            "zero_multiplicity": fp.multiplicity(&BigInt::from(0), &BigInt::from(1)),
        });
        let mut text = format!(
            "{} n={} m={}\ncharacteristic polynomial (low to high): {}",
            graph6::encode(&g),
            g.n(),
            g.m(),
            poly.join(" ")
        );
        if let Some(pq) = &fpq {
            let closed = closed_form_fpq(pq[0], pq[1])?;
            let equal = spectrum_to_fingerprint(&closed, fp.deg_product())? == fp;
            ok &= equal;
            let pairs: Vec<Value> = closed
                .pairs()
                .iter()
                .map(|(l, m)| json!({"eigenvalue": fmt_rational(l), "multiplicity": m}))
                .collect();
            let shown: Vec<String> = closed
                .pairs()
                .iter()
                .map(|(l, m)| format!("{}^{m}", fmt_rational(l)))
                .collect();
            text.push_str(&format!(
                "\nclosed form: {} equal: {equal}",
                shown.join(" ")
            ));
            v["closed_form"] = json!({"spectrum": pairs, "equal": equal});
        }
        if ctx.cli.float {
            let ev = float_spectrum(&g);
            text.push_str(&format!(
                "\nfloat: {}",
                ev.iter()
                    .map(|x| format!("{x:.12}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            v["float_eigenvalues"] = json!(ev);
        }
        emit(ctx, v, text)?;
    }
    Ok(ok)
}

fn mates(ctx: &mut Ctx, input: &GraphInput, n: Option<usize>) -> Outcome {
    let cli = ctx.cli;
    let opts = search_options(cli);
    let mut cache = open_cache(cli)?;
    for g in read_graphs(ctx, input)? {
        let n = n.unwrap_or(g.n());
        if n != g.n() {
            return Err(Failure::Usage(format!(
                "--n {n} differs from the graph's {} vertices",
                g.n()
            )));
        }
        let found = find_cospectral_mates_with(&g, n, !cli.all_graphs, &opts, cache.as_mut())?;
        let g6s: Vec<&str> = found.iter().map(|c| c.g6.as_str()).collect();
        emit(
            ctx,
            json!({
                "schema": 1,
                "graph6": graph6::encode(&g),
                "n": n,
                "connected_only": !cli.all_graphs,
                "mates": g6s,
            }),
            if g6s.is_empty() {
                format!("{}: no mates", graph6::encode(&g))
            } else {
                format!("{}: {}", graph6::encode(&g), g6s.join(" "))
            },
        )?;
    }
    Ok(true)
}

fn verify_ds_cmd(ctx: &mut Ctx, p: Option<usize>, q: Option<usize>, all: bool) -> Outcome {
    let cli = ctx.cli;
    let params: Vec<(usize, usize)> = if all {
        (1..cli.max_n)
            .flat_map(|p| (1..cli.max_n).map(move |q| (p, q)))
            .filter(|(p, q)| p * q < cli.max_n)
            .collect()
    } else {
        vec![(p.unwrap_or(0), q.unwrap_or(0))]
    };
    let mut cache = open_cache(cli)?;
    let reports = verify_ds_batch(&params, &search_options(cli), cache.as_mut())?;
    let mut ok = true;
    for r in reports {
        ok &= r.consistent();
        let mut text = format!(
            "F_{},{} (n={}): searched {} classes, determined {}, predicted {}, mates [{}]",
            r.p,
            r.q,
            r.n,
            r.search_space,
            r.determined,
            r.predicted(),
            r.mates.join(", ")
        );
        if let Some(w) = r.witness_passed {
            text.push_str(&format!(", witnesses {w}"));
        }
        if cli.timing {
            text.push_str(&format!(", {} ms", r.elapsed.as_millis()));
        }
        emit(ctx, r.to_json(cli.timing), text)?;
    }
    Ok(ok)
}

fn to_filter(a: &FilterArgs) -> EnumFilter {
    EnumFilter {
        n: a.n,
        connected_only: a.connected,
        min_degree: a.min_degree,
        max_degree: a.max_degree,
    }
}

fn filter_json(f: &EnumFilter) -> Value {
    json!({
        "n": f.n,
        "connected": f.connected_only,
        "min_degree": f.min_degree,
        "max_degree": f.max_degree,
    })
}

fn enumerator(cli: &Cli, a: &FilterArgs, f: EnumFilter) -> Enumerator {
    Enumerator::new(f)
        .threads(cli.threads.map(|t| t as usize))
        .allow_large(a.allow_large)
}

fn enumerate_cmd(ctx: &mut Ctx, a: &FilterArgs, import: Option<&PathBuf>) -> Outcome {
    let f = to_filter(a);
    if let Some(path) = import {
        let gs = if path.as_os_str() == "-" {
            import_graph6(&mut *ctx.stdin, &f)?
        } else {
            let file = std::fs::File::open(path)
                .map_err(|e| Failure::Usage(format!("--import {}: {e}", path.display())))?;
            import_graph6(std::io::BufReader::new(file), &f)?
        };
        let g6s: Vec<String> = gs.into_iter().map(|c| c.g6).collect();
        return list_output(ctx, &f, g6s);
    }
    let e = enumerator(ctx.cli, a, f);
    if f.n < DEFAULT_CAP || ctx.cli.json {
        // Small enough to sort globally.
        let g6s: Vec<String> = e.collect()?.into_iter().map(|c| c.g6).collect();
        return list_output(ctx, &f, g6s);
    }
    // Larger orders stream in parent-major order.
    let out = &mut *ctx.out;
    let mut io_err = None;
    e.for_each(|c| {
        if io_err.is_none() {
            if let Err(err) = writeln!(out, "{}", c.g6) {
                io_err = Some(err);
            }
        }
    })?;
    match io_err {
        Some(err) => Err(err.into()),
        None => Ok(true),
    }
}

fn list_output(ctx: &mut Ctx, f: &EnumFilter, g6s: Vec<String>) -> Outcome {
    if ctx.cli.json {
        writeln!(
            ctx.out,
            "{}",
            json!({"schema": 1, "filter": filter_json(f), "count": g6s.len(), "graphs": g6s})
        )?;
    } else {
        for g in &g6s {
            writeln!(ctx.out, "{g}")?;
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut input = stdin.as_bytes();
        let argv = std::iter::once("nlspec").chain(args.iter().copied());
        let code = run(argv, &mut input, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn construct_families() {
        assert_eq!(parse_construct("kbip:2,3").unwrap().m(), 6);
        assert_eq!(parse_construct("fpq:2,2").unwrap().n(), 5);
        assert_eq!(parse_construct("gamma:2").unwrap().n(), 8);
        assert!(parse_construct("fpq:2").is_err());
        assert!(parse_construct("wheel:5").is_err());
        assert!(parse_construct("cycle").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["construct", "cycle:4"], "").0, 0);
        let (code, _, err) = run_args(&["construct", "cycle:x"], "");
        assert_eq!(code, 2);
        assert!(err.contains("--construct"), "{err}");
        let (code, _, err) = run_args(&["count", "-n", "4", "--bogus"], "");
        assert_eq!(code, 2);
        assert!(err.contains("--bogus"), "{err}");
        assert_eq!(
            run_args(
                &[
                    "check-witness",
                    "--construct",
                    "cycle:7",
                    "-p",
                    "3",
                    "-q",
                    "2"
                ],
                ""
            )
            .0,
            1
        );
    }

    #[test]
    fn stdin_input() {
        let (code, out, _) = run_args(
            &["check-three-eig", "--stdin", "-q", "2", "--json"],
            "Dhc\nD{c\n",
        );
        assert_eq!(code, 1);
        assert_eq!(out.lines().count(), 2);
    }
}

//! `ybx`: exact computation and machine verification at the command line.
//!
//! Three command families:
//!
//! - `element`: print one operator entry exactly (a Laurent polynomial in
//!   `q`, or a rational function of `q` and `z`).
//! - `verify`: check an identity as an exact equality and exit `0` on a
//!   full pass, `1` on any mismatch.
//! - `table`: emit a whole basis, map, or operator block as JSON.
//!
//! Usage errors exit with `2` (via argument parsing), precondition
//! violations (inadmissible states, degenerate parameters, poles) with `3`.
//! Reports print as plain text by default and as versioned JSON
//! (`"schema": "ybx/1"`) with `--format json` or `YBX_OUTPUT=json`.

mod output;
mod points;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use ybx_core::crystal::Crystal;
use ybx_core::oscillator::check_osc_relations;
use ybx_core::qgroup::{check_algebra_relations, verify_intertwiner};
use ybx_core::smatrix::{s_block, s_element, verify_limit_theorem, verify_ybe_point};
use ybx_core::threed::{
    comb_te_trace, l_elem, r_elem, r_elem_contour, r_elem_series, verify_combinatorial_te,
    verify_te_nlayer, verify_te_rlll, verify_te_rrrr, TeFamily, TeReport,
};
use ybx_core::{parse_rational, EpsSignature, ExactRational, StateVector};

use output::{
    render_chain, render_checks, render_failures, render_state, value_json, verdict,
    verify_header, verify_json, Emitted,
};
use points::{sample_points, PointSampler};

type DynError = Box<dyn std::error::Error>;

#[derive(Parser)]
#[command(
    name = "ybx",
    version,
    about = "Exact solitonic operators, spectral matrices, and combinatorial maps",
    long_about = "Computes entries of the three-dimensional solitonic operators and their \
                  spectral matrices exactly, and machine-verifies the identities they satisfy \
                  (tetrahedron equations, Yang-Baxter equations, intertwining relations, \
                  low-q limits) as equalities of exact arithmetic."
)]
struct Cli {
    /// Output format.
    #[arg(
        short = 'f',
        long,
        global = true,
        env = "YBX_OUTPUT",
        value_enum,
        default_value_t = Format::Table
    )]
    format: Format,

    /// Worker threads for sweeps; 0 uses all cores.
    #[arg(short = 'j', long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Seed for sampled parameter points and random sweep inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// Versioned JSON documents.
    Json,
    /// Plain text for terminals.
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a single operator entry exactly.
    #[command(subcommand)]
    Element(ElementCmd),
    /// Verify an identity; exit 0 on pass, 1 on mismatch.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Emit a full basis, map, or operator block as JSON.
    #[command(subcommand)]
    Table(TableCmd),
}

#[derive(Subcommand)]
enum ElementCmd {
    /// Entry of the bosonic three-leg operator.
    R(ElementR),
    /// Entry of the fermionic three-leg operator.
    L(ElementThreeLeg),
    /// Entry of the spectral matrix, as a rational function of q and z.
    S(ElementS),
}

#[derive(Args)]
struct ElementThreeLeg {
    /// Output legs a,b,c.
    #[arg(long, value_parser = parse_triple)]
    upper: [u32; 3],
    /// Input legs i,j,k.
    #[arg(long, value_parser = parse_triple)]
    lower: [u32; 3],
}

#[derive(Args)]
struct ElementR {
    #[command(flatten)]
    legs: ElementThreeLeg,
    /// Evaluation route; all three agree.
    #[arg(long, value_enum, default_value_t = Route::Closed)]
    route: Route,
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    /// Single-sum closed form.
    Closed,
    /// Double-series route.
    Series,
    /// Residue-extraction route.
    Contour,
}

#[derive(Args)]
struct ElementS {
    /// Signature bits, e.g. 101.
    #[arg(long, value_parser = EpsSignature::parse)]
    eps: EpsSignature,
    /// First output word.
    #[arg(long, value_parser = StateVector::parse)]
    a: StateVector,
    /// Second output word.
    #[arg(long, value_parser = StateVector::parse)]
    b: StateVector,
    /// First input word.
    #[arg(long, value_parser = StateVector::parse)]
    i: StateVector,
    /// Second input word.
    #[arg(long, value_parser = StateVector::parse)]
    j: StateVector,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Tetrahedron equation with four bosonic operators.
    TeRrrr(TeRrrrArgs),
    /// Tetrahedron equation with one bosonic and three fermionic operators.
    TeRlll(TeRlllArgs),
    /// Layered tetrahedron equation for a mixed signature.
    TeN(TeNArgs),
    /// Set-theoretic tetrahedron equation of the occupation maps.
    TeComb(TeCombArgs),
    /// Yang-Baxter equation for the spectral matrix at exact points.
    YbeS(YbeSArgs),
    /// Set-theoretic Yang-Baxter equation on affine words.
    YbeComb(YbeCombArgs),
    /// Defining relations of the quantum algebra on one representation.
    Algebra(AlgebraArgs),
    /// Coproduct intertwining property of the spectral matrix.
    Intertwiner(IntertwinerArgs),
    /// Leading low-q behavior of the spectral matrix vs. the combinatorial map.
    LimitTheorem(LimitArgs),
    /// Structural properties of the bosonic operator.
    RProps(RPropsArgs),
    /// Inversion property of the combinatorial map.
    Inverse(InverseArgs),
    /// Defining relations of the oscillator algebra on the Fock space.
    Osc(OscArgs),
}

#[derive(Args)]
struct TeRrrrArgs {
    /// Check one input state a,b,c,i,j,k instead of sweeping.
    #[arg(long, value_parser = parse_six)]
    input: Option<[u32; 6]>,
    /// Sweep every input with component sum at most this bound.
    #[arg(long, default_value_t = 2)]
    sum_bound: u32,
    /// Additionally check this many random inputs.
    #[arg(long, default_value_t = 0)]
    samples: u32,
    /// Largest entry drawn for random inputs.
    #[arg(long, default_value_t = 3)]
    max_entry: u32,
}

#[derive(Args)]
struct TeRlllArgs {
    /// Check one two-valued input triple (with --fock) instead of sweeping.
    #[arg(long, value_parser = parse_triple, requires = "fock")]
    spins: Option<[u32; 3]>,
    /// Occupation numbers of the three Fock legs.
    #[arg(long, value_parser = parse_triple, requires = "spins")]
    fock: Option<[u32; 3]>,
    /// Sweep bound: all 8 spin triples times Fock sums up to this value.
    #[arg(long, default_value_t = 3)]
    bound: u32,
}

#[derive(Args)]
struct TeNArgs {
    /// Signature bits, e.g. 10.
    #[arg(long, value_parser = EpsSignature::parse)]
    eps: EpsSignature,
    /// First input word (with --beta, --gamma, --fock: check one input).
    #[arg(long, value_parser = StateVector::parse, requires = "beta")]
    alpha: Option<StateVector>,
    /// Second input word.
    #[arg(long, value_parser = StateVector::parse, requires = "gamma")]
    beta: Option<StateVector>,
    /// Third input word.
    #[arg(long, value_parser = StateVector::parse, requires = "fock")]
    gamma: Option<StateVector>,
    /// Occupation numbers of the three Fock legs.
    #[arg(long, value_parser = parse_triple, requires = "alpha")]
    fock: Option<[u32; 3]>,
    /// Sweep bound on every word entry and Fock occupation.
    #[arg(long, default_value_t = 1)]
    bound: u32,
}

#[derive(Args)]
struct TeCombArgs {
    /// Which operator family's map to compose.
    #[arg(long, value_enum)]
    family: Family,
    /// Replay one input a,b,c,i,j,k and print both chains.
    #[arg(long, value_parser = parse_six)]
    input: Option<[u32; 6]>,
    /// Sweep bound on every leg occupation.
    #[arg(long, default_value_t = 3)]
    bound: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Four bosonic maps.
    Rrrr,
    /// One bosonic and three fermionic maps.
    Rlll,
}

impl From<Family> for TeFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::Rrrr => TeFamily::Rrrr,
            Family::Rlll => TeFamily::Rlll,
        }
    }
}

#[derive(Args)]
struct YbeSArgs {
    /// Signature bits.
    #[arg(long, value_parser = EpsSignature::parse)]
    eps: EpsSignature,
    /// Levels k,l,m of the three factors.
    #[arg(long, value_parser = parse_levels)]
    levels: (u32, u32, u32),
    /// Deformation parameter (with --x, --y: check this exact point).
    #[arg(long, value_parser = parse_rational, requires = "x")]
    q: Option<ExactRational>,
    /// Spectral parameter of the first factor.
    #[arg(long, value_parser = parse_rational, requires = "y")]
    x: Option<ExactRational>,
    /// Spectral parameter of the third factor.
    #[arg(long, value_parser = parse_rational, requires = "q")]
    y: Option<ExactRational>,
    /// Number of sampled points when no explicit point is given.
    #[arg(long, default_value_t = 1)]
    points: u32,
}

#[derive(Args)]
struct YbeCombArgs {
    /// Signature bits.
    #[arg(long, value_parser = EpsSignature::parse)]
    eps: EpsSignature,
    /// Levels k,l,m of the three factors.
    #[arg(long, value_parser = parse_levels)]
    levels: (u32, u32, u32),
}

#[derive(Args)]
struct AlgebraArgs {
    /// Signature bits (at least two).
    #[arg(long, value_parser = EpsSignature::parse)]
    eps: EpsSignature,
    /// Representation level.
    #[arg(long)]
    l: u32,
    /// Deformation parameter (with --x: check this exact point).
    #[arg(long, value_parser = parse_rational, requires = "x")]
    q: Option<ExactRational>,
    /// Spectral parameter.
    #[arg(long, value_parser = parse_rational, requires = "q")]
    x: Option<ExactRational>,
    /// Number of sampled points when no explicit point is given.
    #[arg(long, default_value_t = 1)]
    points: u32,
}

#[derive(Args)]
struct IntertwinerArgs {
    /// Signature bits (at least two).
    #[arg(long, value_parser = EpsSignature::parse)]
    eps: EpsSignature,
    /// Level of the first factor.
    #[arg(long)]
    l: u32,
    /// Level of the second factor.
    #[arg(long)]
    m: u32,
    /// Deformation parameter (with --x, --y: check this exact point).
    #[arg(long, value_parser = parse_rational, requires = "x")]
    q: Option<ExactRational>,
    /// Spectral parameter of the first factor.
    #[arg(long, value_parser = parse_rational, requires = "y")]
    x: Option<ExactRational>,
    /// Spectral parameter of the second factor.
    #[arg(long, value_parser = parse_rational, requires = "q")]
    y: Option<ExactRational>,
    /// Number of sampled points when no explicit point is given.
    #[arg(long, default_value_t = 1)]
    points: u32,
}

#[derive(Args)]
struct LimitArgs {
    /// Signature bits.
    #[arg(long, value_parser = EpsSignature::parse)]
    eps: EpsSignature,
    /// Level of the first factor.
    #[arg(long)]
    l: u32,
    /// Level of the second factor.
    #[arg(long)]
    m: u32,
    /// Restrict to one input column: first word.
    #[arg(long, value_parser = StateVector::parse, requires = "col_j")]
    col_i: Option<StateVector>,
    /// Restrict to one input column: second word.
    #[arg(long, value_parser = StateVector::parse, requires = "col_i")]
    col_j: Option<StateVector>,
}

#[derive(Args)]
struct RPropsArgs {
    /// Sweep bound on conserved charges and free indices.
    #[arg(long, default_value_t = 3)]
    bound: u32,
}

#[derive(Args)]
struct InverseArgs {
    /// Signature bits.
    #[arg(long, value_parser = EpsSignature::parse)]
    eps: EpsSignature,
    /// Level of the first factor.
    #[arg(long)]
    l: u32,
    /// Level of the second factor.
    #[arg(long)]
    m: u32,
}

#[derive(Args)]
struct OscArgs {
    /// Fock-space truncation size (at least 3).
    #[arg(long, default_value_t = 12)]
    cutoff: usize,
}

#[derive(Subcommand)]
enum TableCmd {
    /// Full spectral operator block on a pair of levels.
    SBlock(SBlockArgs),
    /// All occupation words of one level.
    Crystal(CrystalArgs),
    /// The combinatorial map on all pairs of a level pair.
    CombRMap(CombRMapArgs),
}

#[derive(Args)]
struct SBlockArgs {
    /// Signature bits.
    #[arg(long, value_parser = EpsSignature::parse)]
    eps: EpsSignature,
    /// Level of the first factor.
    #[arg(long)]
    l: u32,
    /// Level of the second factor.
    #[arg(long)]
    m: u32,
    /// Write the JSON document to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CrystalArgs {
    /// Signature bits.
    #[arg(long, value_parser = EpsSignature::parse)]
    eps: EpsSignature,
    /// Level to enumerate.
    #[arg(long)]
    l: u32,
    /// Write the JSON document to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CombRMapArgs {
    /// Signature bits.
    #[arg(long, value_parser = EpsSignature::parse)]
    eps: EpsSignature,
    /// Level of the first factor.
    #[arg(long)]
    l: u32,
    /// Level of the second factor.
    #[arg(long)]
    m: u32,
    /// Write the JSON document to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_u32_list(s: &str, want: usize) -> Result<Vec<u32>, String> {
    let parts: Result<Vec<u32>, String> = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| format!("invalid entry {t:?}: {e}")))
        .collect();
    let parts = parts?;
    if parts.len() != want {
        return Err(format!("expected {want} comma-separated entries, got {}", parts.len()));
    }
    Ok(parts)
}

fn parse_triple(s: &str) -> Result<[u32; 3], String> {
    let v = parse_u32_list(s, 3)?;
    Ok([v[0], v[1], v[2]])
}

fn parse_six(s: &str) -> Result<[u32; 6], String> {
    let v = parse_u32_list(s, 6)?;
    Ok([v[0], v[1], v[2], v[3], v[4], v[5]])
}

fn parse_levels(s: &str) -> Result<(u32, u32, u32), String> {
    let v = parse_u32_list(s, 3)?;
    Ok((v[0], v[1], v[2]))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        // Ignore the error: the global pool can only be set once.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    let format = cli.format;
    match dispatch(cli.command, cli.seed) {
        Ok(emitted) => {
            match format {
                Format::Json => {
                    let doc = serde_json::to_string_pretty(&emitted.json)
                        .expect("reports always serialize");
                    println!("{doc}");
                }
                Format::Table => print!("{}", emitted.table),
            }
            if emitted.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn dispatch(command: Command, seed: u64) -> Result<Emitted, DynError> {
    match command {
        Command::Element(cmd) => match cmd {
            ElementCmd::R(args) => cmd_element_r(&args),
            ElementCmd::L(args) => cmd_element_l(&args),
            ElementCmd::S(args) => cmd_element_s(&args),
        },
        Command::Verify(cmd) => match cmd {
            VerifyCmd::TeRrrr(args) => cmd_te_rrrr(&args, seed),
            VerifyCmd::TeRlll(args) => cmd_te_rlll(&args),
            VerifyCmd::TeN(args) => cmd_te_n(&args),
            VerifyCmd::TeComb(args) => cmd_te_comb(&args),
            VerifyCmd::YbeS(args) => cmd_ybe_s(&args, seed),
            VerifyCmd::YbeComb(args) => cmd_ybe_comb(&args),
            VerifyCmd::Algebra(args) => cmd_algebra(&args, seed),
            VerifyCmd::Intertwiner(args) => cmd_intertwiner(&args, seed),
            VerifyCmd::LimitTheorem(args) => cmd_limit(&args),
            VerifyCmd::RProps(args) => cmd_r_props(&args),
            VerifyCmd::Inverse(args) => cmd_inverse(&args),
            VerifyCmd::Osc(args) => cmd_osc(&args),
        },
        Command::Table(cmd) => match cmd {
            TableCmd::SBlock(args) => cmd_table_s_block(&args),
            TableCmd::Crystal(args) => cmd_table_crystal(&args),
            TableCmd::CombRMap(args) => cmd_table_comb_r_map(&args),
        },
    }
}

fn cmd_element_r(args: &ElementR) -> Result<Emitted, DynError> {
    let [a, b, c] = args.legs.upper;
    let [i, j, k] = args.legs.lower;
    let (value, route) = match args.route {
        Route::Closed => (r_elem(a, b, c, i, j, k), "closed"),
        Route::Series => (r_elem_series(a, b, c, i, j, k), "series"),
        Route::Contour => (r_elem_contour(a, b, c, i, j, k)?, "contour"),
    };
    let rendered = value.to_string();
    let json = value_json(
        "element.r",
        json!({
            "upper": args.legs.upper,
            "lower": args.legs.lower,
            "route": route,
            "value": rendered,
        }),
    );
    let table = format!("R[{a},{b},{c} | {i},{j},{k}] = {rendered}\n");
    Ok(Emitted::value(json, table))
}

fn cmd_element_l(args: &ElementThreeLeg) -> Result<Emitted, DynError> {
    let [a, b, c] = args.upper;
    let [i, j, k] = args.lower;
    let rendered = l_elem(a, b, c, i, j, k).to_string();
    let json = value_json(
        "element.l",
        json!({"upper": args.upper, "lower": args.lower, "value": rendered}),
    );
    let table = format!("L[{a},{b},{c} | {i},{j},{k}] = {rendered}\n");
    Ok(Emitted::value(json, table))
}

fn cmd_element_s(args: &ElementS) -> Result<Emitted, DynError> {
    let value = s_element(&args.eps, &args.a, &args.b, &args.i, &args.j)?;
    let rendered = value.to_string();
    let json = value_json(
        "element.s",
        json!({
            "eps": args.eps,
            "a": args.a,
            "b": args.b,
            "i": args.i,
            "j": args.j,
            "value": rendered,
            "terms": value,
        }),
    );
    let table = format!(
        "S[{} (x) {} | {} (x) {}] = {rendered}\n",
        args.a, args.b, args.i, args.j
    );
    Ok(Emitted::value(json, table))
}

/// All length-`len` tuples of nonnegative entries with sum at most `bound`.
fn tuples_sum_at_most(len: usize, bound: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(len, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, bound, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Cartesian product of the per-slot ranges `0..=cap`.
fn grid(caps: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &cap in caps {
        let mut next = Vec::with_capacity(out.len() * (cap as usize + 1));
        for prefix in &out {
            for v in 0..=cap {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn to_six(v: &[u32]) -> [u32; 6] {
    [v[0], v[1], v[2], v[3], v[4], v[5]]
}

fn to_three(v: &[u32]) -> [u32; 3] {
    [v[0], v[1], v[2]]
}

/// Emits one report for a single tetrahedron-equation input.
fn single_te(command: &str, identity: &str, report: &TeReport) -> Emitted {
    let pass = report.equal;
    let json = verify_json(command, identity, pass, json!({"report": report}));
    let mut table = verify_header(identity);
    table.push_str(&format!(
        "input: {}\nstates compared: {}\nresult: {}\n",
        render_state(&report.input),
        report.states_compared,
        verdict(pass)
    ));
    Emitted { pass, json, table }
}

/// Emits an aggregate report for a sweep of tetrahedron-equation inputs.
fn sweep_te(
    command: &str,
    identity: &str,
    inputs: Vec<[u32; 6]>,
    check: impl Fn([u32; 6]) -> bool + Sync,
) -> Emitted {
    let outcomes: Vec<bool> = inputs.par_iter().map(|&i| check(i)).collect();
    let failures: Vec<Value> = inputs
        .iter()
        .zip(&outcomes)
        .filter(|&(_, ok)| !ok)
        .take(8)
        .map(|(input, _)| json!(input))
        .collect();
    let pass = outcomes.iter().all(|&ok| ok);
    let checked = inputs.len();
    let json = verify_json(
        command,
        identity,
        pass,
        json!({"inputs_checked": checked, "failing_inputs": failures}),
    );
    let mut table = verify_header(identity);
    table.push_str(&format!("inputs checked: {checked}\n"));
    for (input, ok) in inputs.iter().zip(&outcomes) {
        if !ok {
            table.push_str(&format!("  mismatch at input {}\n", render_state(input)));
        }
    }
    table.push_str(&format!("result: {}\n", verdict(pass)));
    Emitted { pass, json, table }
}

fn cmd_te_rrrr(args: &TeRrrrArgs, seed: u64) -> Result<Emitted, DynError> {
    const COMMAND: &str = "verify.te-rrrr";
    const IDENTITY: &str = "tetrahedron equation with four bosonic operators";
    if let Some(input) = args.input {
        return Ok(single_te(COMMAND, IDENTITY, &verify_te_rrrr(input)));
    }
    let mut inputs: Vec<[u32; 6]> =
        tuples_sum_at_most(6, args.sum_bound).iter().map(|v| to_six(v)).collect();
    if args.samples > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..args.samples {
            inputs.push(std::array::from_fn(|_| rng.random_range(0..=args.max_entry)));
        }
    }
    Ok(sweep_te(COMMAND, IDENTITY, inputs, |i| verify_te_rrrr(i).equal))
}

fn cmd_te_rlll(args: &TeRlllArgs) -> Result<Emitted, DynError> {
    const COMMAND: &str = "verify.te-rlll";
    const IDENTITY: &str = "tetrahedron equation with one bosonic and three fermionic operators";
    if let (Some(spins), Some(fock)) = (args.spins, args.fock) {
        return Ok(single_te(COMMAND, IDENTITY, &verify_te_rlll(spins, fock)?));
    }
    let mut inputs = Vec::new();
    for spins in grid(&[1, 1, 1]) {
        for fock in tuples_sum_at_most(3, args.bound) {
            inputs.push([spins[0], spins[1], spins[2], fock[0], fock[1], fock[2]]);
        }
    }
    let outcomes: Result<Vec<bool>, ybx_core::Error> = inputs
        .par_iter()
        .map(|&s| verify_te_rlll(to_three(&s[..3]), to_three(&s[3..])).map(|r| r.equal))
        .collect();
    let outcomes = outcomes?;
    let pass = outcomes.iter().all(|&ok| ok);
    let failures: Vec<Value> = inputs
        .iter()
        .zip(&outcomes)
        .filter(|&(_, ok)| !ok)
        .take(8)
        .map(|(input, _)| json!(input))
        .collect();
    let json = verify_json(
        COMMAND,
        IDENTITY,
        pass,
        json!({"inputs_checked": inputs.len(), "failing_inputs": failures}),
    );
    let mut table = verify_header(IDENTITY);
    table.push_str(&format!("inputs checked: {}\n", inputs.len()));
    for (input, ok) in inputs.iter().zip(&outcomes) {
        if !ok {
            table.push_str(&format!("  mismatch at input {}\n", render_state(input)));
        }
    }
    table.push_str(&format!("result: {}\n", verdict(pass)));
    Ok(Emitted { pass, json, table })
}

fn cmd_te_n(args: &TeNArgs) -> Result<Emitted, DynError> {
    const COMMAND: &str = "verify.te-n";
    const IDENTITY: &str = "layered tetrahedron equation for a mixed signature";
    let eps = &args.eps;
    if let (Some(alpha), Some(beta), Some(gamma), Some(fock)) =
        (&args.alpha, &args.beta, &args.gamma, args.fock)
    {
        let report = verify_te_nlayer(eps, alpha, beta, gamma, fock)?;
        return Ok(single_te(COMMAND, IDENTITY, &report));
    }
    let caps: Vec<u32> = (0..eps.len())
        .map(|t| if eps.is_fermionic(t) { args.bound.min(1) } else { args.bound })
        .collect();
    let words: Vec<StateVector> = grid(&caps).into_iter().map(StateVector::new).collect();
    let focks: Vec<[u32; 3]> =
        grid(&[args.bound; 3]).iter().map(|v| to_three(v)).collect();
    let mut cases = Vec::new();
    for alpha in &words {
        for beta in &words {
            for gamma in &words {
                for &fock in &focks {
                    cases.push((alpha, beta, gamma, fock));
                }
            }
        }
    }
    let outcomes: Result<Vec<bool>, ybx_core::Error> = cases
        .par_iter()
        .map(|(a, b, g, fock)| Ok(verify_te_nlayer(eps, a, b, g, *fock)?.equal))
        .collect();
    let outcomes = outcomes?;
    let pass = outcomes.iter().all(|&ok| ok);
    let failures: Vec<String> = cases
        .iter()
        .zip(&outcomes)
        .filter(|&(_, ok)| !ok)
        .take(8)
        .map(|((a, b, g, fock), _)| {
            format!("alpha={a} beta={b} gamma={g} fock={}", render_state(fock))
        })
        .collect();
    let json = verify_json(
        COMMAND,
        IDENTITY,
        pass,
        json!({
            "eps": eps,
            "bound": args.bound,
            "inputs_checked": cases.len(),
            "failures": failures,
        }),
    );
    let mut table = verify_header(IDENTITY);
    table.push_str(&format!(
        "signature: {eps}\ninputs checked: {}\n{}result: {}\n",
        cases.len(),
        render_failures(&failures),
        verdict(pass)
    ));
    Ok(Emitted { pass, json, table })
}

fn cmd_te_comb(args: &TeCombArgs) -> Result<Emitted, DynError> {
    const COMMAND: &str = "verify.te-comb";
    const IDENTITY: &str = "set-theoretic tetrahedron equation of the occupation maps";
    let family: TeFamily = args.family.into();
    if let Some(input) = args.input {
        let trace = comb_te_trace(family, input)?;
        let pass = trace.agrees();
        let json = verify_json(COMMAND, IDENTITY, pass, json!({"trace": trace}));
        let mut table = verify_header(IDENTITY);
        table.push_str(&format!(
            "lhs: {}\nrhs: {}\nresult: {}\n",
            render_chain(&trace.lhs),
            render_chain(&trace.rhs),
            verdict(pass)
        ));
        return Ok(Emitted { pass, json, table });
    }
    let report = verify_combinatorial_te(family, args.bound);
    let pass = report.pass;
    let json = verify_json(COMMAND, IDENTITY, pass, json!({"report": report}));
    let mut table = verify_header(IDENTITY);
    table.push_str(&format!(
        "inputs checked: {}\nresult: {}\n",
        report.inputs_checked,
        verdict(pass)
    ));
    Ok(Emitted { pass, json, table })
}

fn cmd_ybe_s(args: &YbeSArgs, seed: u64) -> Result<Emitted, DynError> {
    const COMMAND: &str = "verify.ybe-s";
    const IDENTITY: &str = "Yang-Baxter equation for the spectral matrix at exact points";
    let (k, l, m) = args.levels;
    let reports = match (&args.q, &args.x, &args.y) {
        (Some(q), Some(x), Some(y)) => vec![verify_ybe_point(&args.eps, k, l, m, q, x, y)?],
        _ => {
            let mut sampler = PointSampler::new(seed);
            sample_points(&mut sampler, args.points, |q, x, y| {
                verify_ybe_point(&args.eps, k, l, m, q, x, y)
            })?
        }
    };
    let pass = reports.iter().all(|r| r.equal);
    let json = verify_json(
        COMMAND,
        IDENTITY,
        pass,
        json!({"eps": args.eps, "levels": [k, l, m], "points": reports}),
    );
    let mut table = verify_header(IDENTITY);
    table.push_str(&format!("signature: {}  levels: ({k},{l},{m})\n", args.eps));
    for r in &reports {
        table.push_str(&format!(
            "  q={} x={} y={}  dim {}  {}\n",
            r.q,
            r.x,
            r.y,
            r.dim,
            verdict(r.equal)
        ));
    }
    table.push_str(&format!("result: {}\n", verdict(pass)));
    Ok(Emitted { pass, json, table })
}

fn cmd_ybe_comb(args: &YbeCombArgs) -> Result<Emitted, DynError> {
    const COMMAND: &str = "verify.ybe-comb";
    const IDENTITY: &str = "set-theoretic Yang-Baxter equation on affine words";
    let (k, l, m) = args.levels;
    let report = Crystal::new(args.eps.clone()).verify_ybe_comb(k, l, m)?;
    let pass = report.pass;
    let json = verify_json(COMMAND, IDENTITY, pass, json!({"report": report}));
    let mut table = verify_header(IDENTITY);
    table.push_str(&format!(
        "signature: {}  levels: ({k},{l},{m})\ntriples checked: {}\n{}result: {}\n",
        args.eps,
        report.triples_checked,
        render_failures(&report.failures),
        verdict(pass)
    ));
    Ok(Emitted { pass, json, table })
}

fn cmd_algebra(args: &AlgebraArgs, seed: u64) -> Result<Emitted, DynError> {
    const COMMAND: &str = "verify.algebra";
    const IDENTITY: &str = "defining relations of the quantum algebra on one representation";
    let reports = match (&args.q, &args.x) {
        (Some(q), Some(x)) => vec![check_algebra_relations(&args.eps, args.l, q, x)?],
        _ => {
            let mut sampler = PointSampler::new(seed);
            sample_points(&mut sampler, args.points, |q, x, _| {
                check_algebra_relations(&args.eps, args.l, q, x)
            })?
        }
    };
    let pass = reports.iter().all(|r| r.passed());
    let json = verify_json(COMMAND, IDENTITY, pass, json!({"points": reports}));
    let mut table = verify_header(IDENTITY);
    table.push_str(&format!("signature: {}  level: {}\n", args.eps, args.l));
    for r in &reports {
        table.push_str(&format!("point q={} x={}\n{}", r.q, r.x, render_checks(&r.checks)));
    }
    table.push_str(&format!("result: {}\n", verdict(pass)));
    Ok(Emitted { pass, json, table })
}

fn cmd_intertwiner(args: &IntertwinerArgs, seed: u64) -> Result<Emitted, DynError> {
    const COMMAND: &str = "verify.intertwiner";
    const IDENTITY: &str = "coproduct intertwining property of the spectral matrix";
    let reports = match (&args.q, &args.x, &args.y) {
        (Some(q), Some(x), Some(y)) => {
            vec![verify_intertwiner(&args.eps, args.l, args.m, q, x, y)?]
        }
        _ => {
            let mut sampler = PointSampler::new(seed);
            sample_points(&mut sampler, args.points, |q, x, y| {
                verify_intertwiner(&args.eps, args.l, args.m, q, x, y)
            })?
        }
    };
    let pass = reports.iter().all(|r| r.passed());
    let json = verify_json(COMMAND, IDENTITY, pass, json!({"points": reports}));
    let mut table = verify_header(IDENTITY);
    table.push_str(&format!(
        "signature: {}  levels: ({},{})\n",
        args.eps, args.l, args.m
    ));
    for r in &reports {
        table.push_str(&format!(
            "point q={} x={} y={}  dim {}\n{}",
            r.q,
            r.x,
            r.y,
            r.dim,
            render_checks(&r.checks)
        ));
    }
    table.push_str(&format!("result: {}\n", verdict(pass)));
    Ok(Emitted { pass, json, table })
}

fn cmd_limit(args: &LimitArgs) -> Result<Emitted, DynError> {
    const COMMAND: &str = "verify.limit-theorem";
    const IDENTITY: &str =
        "leading low-q behavior of the spectral matrix equals the combinatorial map";
    let column = match (&args.col_i, &args.col_j) {
        (Some(i), Some(j)) => Some((i, j)),
        _ => None,
    };
    let report = verify_limit_theorem(&args.eps, args.l, args.m, column)?;
    let pass = report.pass;
    let json = verify_json(COMMAND, IDENTITY, pass, json!({"report": report}));
    let mut table = verify_header(IDENTITY);
    table.push_str(&format!(
        "signature: {}  levels: ({},{})\ncolumns checked: {}\nentries checked: {}\n{}result: {}\n",
        args.eps,
        args.l,
        args.m,
        report.columns_checked,
        report.entries_checked,
        render_failures(&report.failures),
        verdict(pass)
    ));
    Ok(Emitted { pass, json, table })
}

fn cmd_r_props(args: &RPropsArgs) -> Result<Emitted, DynError> {
    const COMMAND: &str = "verify.r-props";
    const IDENTITY: &str = "structural properties of the bosonic operator";
    let report = ybx_core::threed::check_r_properties(args.bound);
    let pass = report.passed();
    let json = verify_json(COMMAND, IDENTITY, pass, json!({"report": report}));
    let mut table = verify_header(IDENTITY);
    table.push_str(&format!("bound: {}\n", args.bound));
    table.push_str(&render_checks(&report.checks));
    table.push_str(&format!("result: {}\n", verdict(pass)));
    Ok(Emitted { pass, json, table })
}

fn cmd_inverse(args: &InverseArgs) -> Result<Emitted, DynError> {
    const COMMAND: &str = "verify.inverse";
    const IDENTITY: &str = "inversion property of the combinatorial map";
    let report = Crystal::new(args.eps.clone()).verify_inverse(args.l, args.m)?;
    let pass = report.pass;
    let json = verify_json(COMMAND, IDENTITY, pass, json!({"report": report}));
    let mut table = verify_header(IDENTITY);
    table.push_str(&format!(
        "signature: {}  levels: ({},{})\npairs checked: {}\n{}result: {}\n",
        args.eps,
        args.l,
        args.m,
        report.pairs_checked,
        render_failures(&report.failures),
        verdict(pass)
    ));
    Ok(Emitted { pass, json, table })
}

fn cmd_osc(args: &OscArgs) -> Result<Emitted, DynError> {
    const COMMAND: &str = "verify.osc";
    const IDENTITY: &str = "defining relations of the oscillator algebra on the Fock space";
    let report = check_osc_relations(args.cutoff)?;
    let pass = report.passed();
    let json = verify_json(COMMAND, IDENTITY, pass, json!({"report": report}));
    let mut table = verify_header(IDENTITY);
    table.push_str(&format!(
        "cutoff: {}  faithful window: 0..={}\n",
        report.cutoff, report.max_checked_state
    ));
    table.push_str(&render_checks(&report.checks));
    table.push_str(&format!("result: {}\n", verdict(pass)));
    Ok(Emitted { pass, json, table })
}

/// Prints inline, or writes the JSON document to `out` and confirms.
fn deliver(
    command: &str,
    out: Option<&PathBuf>,
    json: Value,
    table: String,
) -> Result<Emitted, DynError> {
    match out {
        None => Ok(Emitted::value(json, table)),
        Some(path) => {
            let mut doc = serde_json::to_string_pretty(&json)?;
            doc.push('\n');
            fs::write(path, doc)?;
            let shown = path.display().to_string();
            let json = value_json(command, json!({"out": shown}));
            let table = format!("wrote {shown}\n");
            Ok(Emitted::value(json, table))
        }
    }
}

fn cmd_table_s_block(args: &SBlockArgs) -> Result<Emitted, DynError> {
    const COMMAND: &str = "table.s-block";
    let block = s_block(&args.eps, args.l, args.m)?;
    let json = value_json(
        COMMAND,
        json!({
            "dim": block.dim(),
            "nonzero_entries": block.nonzero_entries(),
            "block": block,
        }),
    );
    let mut table = format!(
        "spectral operator block: signature {}  levels ({},{})  dim {}  nonzero {}\n",
        args.eps,
        args.l,
        args.m,
        block.dim(),
        block.nonzero_entries()
    );
    for (a, b, i, j, value) in block.iter_entries() {
        table.push_str(&format!("  [{a} (x) {b} | {i} (x) {j}] = {value}\n"));
    }
    deliver(COMMAND, args.out.as_ref(), json, table)
}

fn cmd_table_crystal(args: &CrystalArgs) -> Result<Emitted, DynError> {
    const COMMAND: &str = "table.crystal";
    let words = Crystal::new(args.eps.clone()).enumerate(args.l);
    let json = value_json(
        COMMAND,
        json!({
            "eps": args.eps,
            "level": args.l,
            "count": words.len(),
            "vectors": words,
        }),
    );
    let mut table = format!(
        "occupation words: signature {}  level {}  count {}\n",
        args.eps,
        args.l,
        words.len()
    );
    for w in &words {
        table.push_str(&format!("  {w}\n"));
    }
    deliver(COMMAND, args.out.as_ref(), json, table)
}

fn cmd_table_comb_r_map(args: &CombRMapArgs) -> Result<Emitted, DynError> {
    const COMMAND: &str = "table.comb-r-map";
    let crystal = Crystal::new(args.eps.clone());
    let basis_l = crystal.enumerate(args.l);
    let basis_m = crystal.enumerate(args.m);
    let mut entries = Vec::with_capacity(basis_l.len() * basis_m.len());
    let mut table = format!(
        "combinatorial map: signature {}  levels ({},{})  pairs {}\n",
        args.eps,
        args.l,
        args.m,
        basis_l.len() * basis_m.len()
    );
    for i in &basis_l {
        for j in &basis_m {
            let out = crystal.comb_r(i, j)?;
            entries.push(json!({
                "i": i,
                "j": j,
                "b": out.b,
                "a": out.a,
                "energy": out.energy,
                "borders": out.trace.borders,
            }));
            table.push_str(&format!(
                "  {i} (x) {j} -> {b} (x) {a}  H={h}\n",
                b = out.b,
                a = out.a,
                h = out.energy
            ));
        }
    }
    let json = value_json(
        COMMAND,
        json!({
            "eps": args.eps,
            "l": args.l,
            "m": args.m,
            "entries": entries,
        }),
    );
    deliver(COMMAND, args.out.as_ref(), json, table)
}

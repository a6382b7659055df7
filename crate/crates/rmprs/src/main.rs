//! Command-line front end: encode, decode, simulate, analyze, field-info.
//! Exit codes: 0 success, 2 usage or validation failure, 3 decoder-parameter
//! infeasibility (no achievable radius).

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rmprs::analysis;
use rmprs::galois::{make_extension, make_field, BasisKind, FieldCtx};
use rmprs::io;
use rmprs::prs_codec::{
    prs_decode_recursive, prs_encode, rm_list_decode_recursive, PRSSpec, TupleRule,
};
use rmprs::rm_codec::{rm_encode, rm_list_decode_pw_at, RMSpec};
use rmprs::rs_codec::Word;
use rmprs::simulator::{
    radius_sweep, subcube_pattern, sweep_csv, PatternConstraint, SweepTarget,
};
use rmprs::{Error, Result};

#[derive(Parser)]
#[command(name = "rmprs", about = "Reed-Muller / product-RS list decoding toolkit", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Encode a message polynomial with the code from a spec file.
    Encode(EncodeArgs),
    /// List decode a received word.
    Decode(DecodeArgs),
    /// Run seeded decoding trials and report success rates as CSV.
    Simulate(SimulateArgs),
    /// Closed-form radius comparisons, region volumes, and dominance scans.
    Analyze(AnalyzeArgs),
    /// Print a field's parameters and, optionally, an extension's basis data.
    FieldInfo(FieldInfoArgs),
}

#[derive(Args)]
struct EncodeArgs {
    /// Code spec file (`field`/`ell`/`m`/`n`[/`point`] for RM, `field`/`k` for PRS)
    #[arg(long)]
    spec: PathBuf,
    /// Message polynomial file: one term per line, `coeff i_1 ... i_m`
    #[arg(long)]
    message: PathBuf,
    /// Output path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum DecoderKind {
    /// lifting list decoder (RM specs)
    Pw,
    /// recursive per-axis decoder (PRS specs, or RM specs via tuple covering)
    Recursive,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TupleRuleArg {
    /// sum k_j <= l
    Literal,
    /// sum (k_j - 1) <= l
    Shifted,
}

impl From<TupleRuleArg> for TupleRule {
    fn from(v: TupleRuleArg) -> TupleRule {
        match v {
            TupleRuleArg::Literal => TupleRule::LiteralSum,
            TupleRuleArg::Shifted => TupleRule::ShiftedSum,
        }
    }
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Received word: a word file for RM specs, a tensor file for PRS specs
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    decoder: DecoderKind,
    /// Tuple enumeration rule for the recursive RM decoder
    #[arg(long, value_enum, default_value = "literal")]
    tuple_rule: TupleRuleArg,
    /// Decode out to this distance instead of the guaranteed radius
    /// (lifting decoder only); exits 3 when unachievable
    #[arg(long)]
    tau: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum PatternKind {
    Random,
    Capped,
    Subcube,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, value_enum)]
    decoder: DecoderKind,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Error weights, `a..b` inclusive or a single value
    #[arg(long, default_value = "0..4")]
    weights: String,
    #[arg(long, value_enum, default_value = "random")]
    pattern: PatternKind,
    /// Per-line error cap (pattern `capped`)
    #[arg(long, default_value_t = 1)]
    cap: usize,
    /// Axis whose lines the cap constrains (pattern `capped`)
    #[arg(long, default_value_t = 0)]
    axis: usize,
    /// Sub-cube side lengths, comma separated (pattern `subcube`)
    #[arg(long, value_delimiter = ',')]
    sides: Vec<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AnalyzeMode {
    /// dominance-region volume V_m
    Volume,
    /// radius surface over the unit rate square
    Surface,
    /// integer threshold scan against the (q+1)-point variant
    Dominance,
    /// the four radii for one (q, k) parameter point
    Radii,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long, value_enum)]
    mode: AnalyzeMode,
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Grid points per axis; defaults to 1000 for m = 2 and 100 for m = 3
    #[arg(long)]
    resolution: Option<usize>,
    /// Monte-Carlo sample budget (m > 3 volumes)
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Field size for `radii`
    #[arg(long, default_value_t = 16)]
    q: u64,
    /// Axis dimensions for `radii`, comma separated
    #[arg(long, value_delimiter = ',')]
    k: Vec<usize>,
    /// Scan bounds for `dominance`
    #[arg(long, default_value_t = 32)]
    max_q: u64,
    #[arg(long, default_value_t = 4)]
    max_m: u32,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FieldInfoArgs {
    /// Characteristic
    p: u64,
    /// Extension degree over the prime field
    e: u32,
    /// Modulus coefficients low-to-high (defaults to the canonical modulus)
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
    /// Also print the GF(q) in GF(q^m) embedding data for this m
    #[arg(long)]
    ext: Option<u32>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Encode(a) => cmd_encode(a),
        Cmd::Decode(a) => cmd_decode(a),
        Cmd::Simulate(a) => cmd_simulate(a),
        Cmd::Analyze(a) => cmd_analyze(a),
        Cmd::FieldInfo(a) => cmd_field_info(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::RadiusUnachievable { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(Error::from)
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_rm(field: &Arc<FieldCtx>, ell: usize, m: usize, n: usize, points: Option<Vec<Vec<u64>>>) -> Result<RMSpec> {
    RMSpec::new(field, ell, m, n, points)
}

fn cmd_encode(a: EncodeArgs) -> Result<()> {
    let spec = io::parse_code_spec(&read(&a.spec)?)?;
    match spec {
        io::CodeSpecFile::Rm { field, ell, m, n, points } => {
            let rm = load_rm(&field, ell, m, n, points)?;
            let phi = io::parse_multi_poly(&field, m, &read(&a.message)?)?;
            let word = rm_encode(&rm, &phi)?;
            emit(&a.output, &io::write_word(&word.0))
        }
        io::CodeSpecFile::Prs { field, k } => {
            let prs = PRSSpec::new(&field, &k)?;
            let phi = io::parse_multi_poly(&field, k.len(), &read(&a.message)?)?;
            let cube = prs_encode(&prs, &phi)?;
            emit(&a.output, &io::write_tensor(&cube))
        }
    }
}

fn cmd_decode(a: DecodeArgs) -> Result<()> {
    let spec = io::parse_code_spec(&read(&a.spec)?)?;
    let input = read(&a.input)?;
    match (spec, a.decoder) {
        (io::CodeSpecFile::Rm { field, ell, m, n, points }, DecoderKind::Pw) => {
            let rm = load_rm(&field, ell, m, n, points)?;
            let list = rm_list_decode_pw_at(&rm, &Word(io::parse_word(&input)?), a.tau)?;
            emit(&a.output, &io::render_rm_list(&list))
        }
        (io::CodeSpecFile::Rm { field, ell, m, n, points }, DecoderKind::Recursive) => {
            let rm = load_rm(&field, ell, m, n, points)?;
            let cands =
                rm_list_decode_recursive(&rm, &Word(io::parse_word(&input)?), a.tuple_rule.into())?;
            emit(&a.output, &io::render_rec_candidates(&cands))
        }
        (io::CodeSpecFile::Prs { field, k }, DecoderKind::Recursive) => {
            let prs = PRSSpec::new(&field, &k)?;
            let decoded = prs_decode_recursive(&prs, &io::parse_tensor(&input)?)?;
            emit(&a.output, &io::write_tensor(&decoded))
        }
        (io::CodeSpecFile::Prs { .. }, DecoderKind::Pw) => Err(Error::InvalidParameter(
            "the lifting decoder runs on RM specs; use `--decoder recursive` for PRS".into(),
        )),
    }
}

fn parse_weights(spec: &str) -> Result<Vec<usize>> {
    let parse = |t: &str| -> Result<usize> {
        t.parse().map_err(|_| Error::Parse(format!("bad weight `{t}`")))
    };
    if let Some((a, b)) = spec.split_once("..") {
        let (a, b) = (parse(a)?, parse(b)?);
        if a > b {
            return Err(Error::InvalidParameter(format!("empty weight range {a}..{b}")));
        }
        Ok((a..=b).collect())
    } else {
        Ok(vec![parse(spec)?])
    }
}

fn cmd_simulate(a: SimulateArgs) -> Result<()> {
    let weights = parse_weights(&a.weights)?;
    let spec = io::parse_code_spec(&read(&a.spec)?)?;
    let csv = match (spec, a.decoder) {
        (io::CodeSpecFile::Rm { field, ell, m, n, points }, DecoderKind::Pw) => {
            if a.pattern != PatternKind::Random {
                return Err(Error::InvalidParameter(
                    "only `random` patterns are supported for the lifting decoder".into(),
                ));
            }
            let rm = load_rm(&field, ell, m, n, points)?;
            let pts = radius_sweep(&SweepTarget::RmLifting(&rm), &weights, a.trials, a.seed)?;
            sweep_csv(&pts)
        }
        (io::CodeSpecFile::Prs { field, k }, DecoderKind::Recursive) => {
            let prs = PRSSpec::new(&field, &k)?;
            match a.pattern {
                PatternKind::Random => {
                    let target = SweepTarget::PrsRecursive(&prs, PatternConstraint::Unconstrained);
                    sweep_csv(&radius_sweep(&target, &weights, a.trials, a.seed)?)
                }
                PatternKind::Capped => {
                    let constraint = PatternConstraint::PerLineCap { axis: a.axis, cap: a.cap };
                    let target = SweepTarget::PrsRecursive(&prs, constraint);
                    sweep_csv(&radius_sweep(&target, &weights, a.trials, a.seed)?)
                }
                PatternKind::Subcube => simulate_subcube_csv(&prs, &a)?,
            }
        }
        _ => {
            return Err(Error::InvalidParameter(
                "supported pairs: RM spec with `pw`, PRS spec with `recursive`".into(),
            ))
        }
    };
    emit(&a.output, &csv)
}

/// Sub-cube trials: random corner and random message per trial.
fn simulate_subcube_csv(prs: &PRSSpec, a: &SimulateArgs) -> Result<String> {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rmprs::polynomial::random_axis_bounded_poly;
    use rmprs::prs_codec::TensorWord;

    let m = prs.num_axes();
    if a.sides.len() != m {
        return Err(Error::InvalidParameter(format!("--sides must list {m} side lengths")));
    }
    let q = prs.ctx().order() as usize;
    let mut out = String::from("trial,seed,weight,success,residual\n");
    for trial in 0..a.trials {
        let ts = a.seed ^ (trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let mut rng = ChaCha8Rng::seed_from_u64(ts);
        let phi = random_axis_bounded_poly(prs.ctx(), prs.dims(), &mut rng);
        let c = prs_encode(prs, &phi)?;
        let corner: Vec<usize> =
            a.sides.iter().map(|&s| rng.gen_range(0..=q - s)).collect();
        let pat = subcube_pattern(c.symbols(), q, m, &corner, &a.sides, &mut rng)?;
        let r = TensorWord::new(q, m, pat.apply(c.symbols()))?;
        let decoded = prs_decode_recursive(prs, &r)?;
        let residual = decoded
            .symbols()
            .iter()
            .zip(c.symbols())
            .filter(|(x, y)| x != y)
            .count();
        out.push_str(&format!(
            "{trial},{ts},{},{},{residual}\n",
            pat.weight(),
            residual == 0
        ));
    }
    Ok(out)
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<()> {
    let text = match a.mode {
        AnalyzeMode::Volume => {
            let mut out = String::from("m,method,budget,seed,volume\n");
            if a.m <= 3 {
                let res = a.resolution.unwrap_or(if a.m == 2 { 1000 } else { 100 });
                let v = analysis::region_volume_grid(a.m, res)?;
                out.push_str(&format!("{},grid,{res},,{v:.6}\n", a.m));
            } else {
                let v = analysis::region_volume_mc(a.m, a.samples, a.seed)?;
                out.push_str(&format!("{},mc,{},{},{v:.6}\n", a.m, a.samples, a.seed));
            }
            out
        }
        AnalyzeMode::Surface => analysis::emit_surface(a.resolution.unwrap_or(101))?,
        AnalyzeMode::Dominance => {
            let mut out = String::from("q,m,ell,t_lift,t_alt\n");
            for c in analysis::radius_dominance_scan(a.max_q, a.max_m) {
                out.push_str(&format!("{},{},{},{},{}\n", c.q, c.m, c.ell, c.t_lift, c.t_alt));
            }
            out
        }
        AnalyzeMode::Radii => {
            if a.k.is_empty() {
                return Err(Error::InvalidParameter("--k is required for `radii`".into()));
            }
            let rep = analysis::compare_radii(a.q, a.k.len(), &a.k)?;
            format!(
                "q,m,k,radius_pw_rs,radius_pw_ag,radius_recursive,radius_prs_pw,dominant\n\
                 {},{},{},{:.6},{:.6},{:.6},{:.6},{:?}\n",
                rep.q,
                rep.m,
                rep.k.iter().map(usize::to_string).collect::<Vec<_>>().join("|"),
                rep.radius_pw_rs,
                rep.radius_pw_ag,
                rep.radius_recursive,
                rep.radius_prs_pw,
                rep.dominant()
            )
        }
    };
    emit(&a.output, &text)
}

fn cmd_field_info(a: FieldInfoArgs) -> Result<()> {
    let ctx = make_field(a.p, a.e, a.modulus.as_deref())?;
    let coeffs: Vec<String> = ctx.modulus().iter().map(u64::to_string).collect();
    println!("order {}", ctx.order());
    println!("characteristic {}", ctx.characteristic());
    println!("degree {}", ctx.extension_degree());
    println!("modulus {}", coeffs.join(" "));
    println!("generator {}", ctx.generator());
    if let Some(m) = a.ext {
        let em = make_extension(&ctx, m, BasisKind::Polynomial)?;
        println!("extension-order {}", em.ext().order());
        let basis: Vec<String> = em.basis().iter().map(u64::to_string).collect();
        println!("basis {}", basis.join(" "));
        for (j, mu) in (1..=m).zip(em.mu()) {
            let cs: Vec<String> = mu.coeffs().iter().map(u64::to_string).collect();
            println!("mu_{j} {}", cs.join(" "));
        }
    }
    Ok(())
}

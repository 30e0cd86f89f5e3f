//! Command dispatch.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use derivimage_core::bernoulli::{clausen_staudt_primes, BernoulliCache};
use derivimage_core::derivimage::{derivation_ideal_shape, lambda_member, Derivation};
use derivimage_core::ederiv::{
    classify_case, default_gdeg_bound, generic_member, im_delta_member, EDerivation,
};
use derivimage_core::mathieu::{classify_homogeneous, enumerate_candidates};
use derivimage_core::translation::{
    difference_operator, quantum_derivation, QuadraticIdealSpec, RootedIdeal, TranslationDelta,
};
use derivimage_core::{Error as CoreError, ImageShape, Polynomial, Rational};
use rand::seq::SliceRandom;
use serde_json::{json, Value};

use crate::cache::SharedBernoulliCache;
use crate::json::{self, ExponentSetJson};
use crate::sampling;
use crate::scans::{self, Builtin, Target};
use crate::text::{parse_coeff_samples, parse_poly, parse_rational, parse_rational_list};
use crate::verify::{self, Limits};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

const GRAMMAR: &str = "\
Polynomial text grammar (used by every polynomial flag):
  poly := term ((\"+\"|\"-\") term)* ; term := coeff | coeff \"*\"? var | var ; var := \"x\" (\"^\" uint)? ; coeff := (\"-\")? uint (\"/\" uint)?
  Canonical output: descending powers, reduced fractions, \"0\" for zero, no spaces around \"^\", single spaces around \"+\"/\"-\".
Rationals are written \"n\" or \"p/q\". JSON polynomials are {\"coeffs\": [\"c0\",\"c1\",...]}, ascending.

Output is JSON on stdout; --pretty renders it as indented text.
Exit codes: 0 success, 2 usage or parse error, 3 unsupported case, 4 verify failure.
DERIVIMAGE_THREADS caps the number of worker threads.";

#[derive(Debug, Parser)]
#[command(name = "derivimage", version, about = "Images of ideals of Q[x] under derivations and E-derivations", after_help = GRAMMAR)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bernoulli numbers and polynomials.
    #[command(subcommand, after_help = GRAMMAR)]
    Bernoulli(BernoulliCmd),
    /// Membership in and shape of images.
    #[command(subcommand, after_help = GRAMMAR)]
    Image(ImageCmd),
    /// Case of the E-derivation f -> f - f(w).
    #[command(after_help = GRAMMAR)]
    Classify {
        #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
        w: Polynomial,
    },
    /// Homogeneous Mathieu subspaces.
    #[command(subcommand, after_help = GRAMMAR)]
    Ms(MsCmd),
    /// Quantum derivation (f(x + h) - f(x)) / h.
    #[command(after_help = GRAMMAR)]
    Qderiv {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        h: Rational,
        #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
        f: Polynomial,
    },
    /// Difference operator f(x + 1) - f(x).
    #[command(after_help = GRAMMAR)]
    Diffop {
        #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
        f: Polynomial,
    },
    /// Replay the verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
enum BernoulliCmd {
    /// The number B_N.
    Num { n: usize },
    /// The polynomial B_N(x).
    Poly { n: usize },
    /// D_N(x) = (B_{N+1}(x) - B_{N+1}) / ((N+1) x).
    Dpoly { n: usize },
    /// B_N + sum of 1/q over primes q with (q-1) | N, for even N.
    Cvs { n: u64 },
}

#[derive(Debug, Subcommand)]
enum ImageCmd {
    /// D = a d/dx, optionally restricted to the ideal (u).
    #[command(after_help = GRAMMAR)]
    Derivation {
        #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
        a: Polynomial,
        /// Generator u of the ideal; the whole algebra if absent.
        #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
        ideal: Option<Polynomial>,
        #[arg(long, value_parser = parse_poly, allow_hyphen_values = true, required_unless_present = "shape")]
        member: Option<Polynomial>,
        #[arg(long, conflicts_with = "member")]
        shape: bool,
    },
    /// delta = I - phi with phi(x) = w, optionally restricted to the ideal (u).
    #[command(after_help = GRAMMAR)]
    Ederivation {
        #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
        w: Polynomial,
        #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
        member: Polynomial,
        #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
        ideal: Option<Polynomial>,
        /// Degree bound on g in f = delta(u g); derived from the case if absent.
        #[arg(long, requires = "ideal")]
        gbound: Option<i64>,
    },
    /// delta f = f - f(x + c).
    #[command(after_help = GRAMMAR)]
    Translation(TranslationArgs),
}

/// Comma list parsed as one value; a bare `Vec` would make clap expect repeats.
type RootList = Vec<Rational>;

#[derive(Debug, Args)]
struct TranslationArgs {
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    c: Rational,
    /// Rational roots r1,r2,... of the ideal generator, with multiplicity.
    #[arg(long, value_parser = parse_rational_list, allow_hyphen_values = true, conflicts_with_all = ["a", "linear"])]
    ideal_roots: Option<RootList>,
    /// Leading coefficient of the ideal generator.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, requires = "ideal_roots")]
    lc: Option<Rational>,
    /// The quadratic ideal (x^2 - a x).
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, conflicts_with = "linear")]
    a: Option<Rational>,
    /// The linear ideal (x - r); the member gets an explicit preimage.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    linear: Option<Rational>,
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true, required_unless_present = "shape")]
    member: Option<Polynomial>,
    #[arg(long, conflicts_with = "member", requires = "a")]
    shape: bool,
}

#[derive(Debug, Subcommand)]
enum MsCmd {
    /// Classify the span of x^n, n in the exponent set.
    Classify {
        /// {"exceptional": [..], "modulus": M, "residues": [..], "threshold": T}
        #[arg(long)]
        spec: String,
    },
    /// Candidates f whose first W powers all lie in the target.
    #[command(after_help = GRAMMAR)]
    RadicalScan {
        /// A builtin name or an exponent-set JSON spec.
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// "lo..hi" (inclusive) or a comma list of rationals.
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, default_value_t = 12)]
        window: u32,
        /// Seed for --sample.
        #[arg(long, default_value_t = Limits::default().seed)]
        seed: u64,
        /// Test a seeded random subset of this size instead of every candidate.
        #[arg(long)]
        sample: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = Limits::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = Limits::default().samples)]
    samples: usize,
    #[arg(long, default_value_t = Limits::default().max_degree)]
    max_degree: usize,
    #[arg(long, default_value_t = Limits::default().window)]
    window: u32,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Unsupported(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Unsupported(_) => Failure::Unsupported(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
            } else {
                let _ = write!(out, "{}", e.render());
            }
            return code;
        }
    };
    configure_threads();
    let (value, code) = match dispatch(cli.command) {
        Ok(result) => result,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Unsupported(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_UNSUPPORTED;
        }
    };
    let text = if cli.pretty {
        json::render_pretty(&value)
    } else {
        serde_json::to_string(&value).expect("serializable")
    };
    let _ = writeln!(out, "{text}");
    code
}

fn configure_threads() {
    if let Some(n) = std::env::var("DERIVIMAGE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second build in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

type Dispatched = Result<(Value, i32), Failure>;

fn ok(v: Value) -> Dispatched {
    Ok((v, EXIT_OK))
}

fn dispatch(cmd: Command) -> Dispatched {
    match cmd {
        Command::Bernoulli(b) => bernoulli(b),
        Command::Image(ImageCmd::Derivation { a, ideal, member, shape }) => {
            derivation(a, ideal, member, shape)
        }
        Command::Image(ImageCmd::Ederivation { w, member, ideal, gbound }) => {
            ederivation(w, member, ideal, gbound)
        }
        Command::Image(ImageCmd::Translation(args)) => translation(args),
        Command::Classify { w } => ok(json!({
            "w": json::poly(&w),
            "case": json::case_tag(&classify_case(&w)),
        })),
        Command::Ms(MsCmd::Classify { spec }) => {
            let set = parse_spec(&spec)?;
            let verdict = classify_homogeneous(&set, set.contains(0), set.is_finite())?;
            ok(json!({ "spec": ExponentSetJson::from(&set), "verdict": json::verdict(&verdict) }))
        }
        Command::Ms(MsCmd::RadicalScan { target, max_degree, coeffs, window, seed, sample }) => {
            radical_scan(&target, max_degree, &coeffs, window, seed, sample)
        }
        Command::Qderiv { h, f } => {
            let d = quantum_derivation(&h, &f)?;
            ok(json!({ "h": json::rat(&h), "f": json::poly(&f), "result": json::poly(&d) }))
        }
        Command::Diffop { f } => {
            ok(json!({ "f": json::poly(&f), "result": json::poly(&difference_operator(&f)) }))
        }
        Command::Verify(v) => {
            let limits = Limits {
                seed: v.seed,
                samples: v.samples,
                max_degree: v.max_degree,
                window: v.window,
                ..Limits::default()
            };
            let report = verify::run_verify(&v.suite, &limits).map_err(|e| Failure::Usage(e.to_string()))?;
            let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok((serde_json::to_value(&report).expect("serializable"), code))
        }
    }
}

fn bernoulli(cmd: BernoulliCmd) -> Dispatched {
    let mut cache = BernoulliCache::new();
    match cmd {
        BernoulliCmd::Num { n } => ok(json!({ "n": n, "value": json::rat(&cache.number(n)) })),
        BernoulliCmd::Poly { n } => ok(json!({ "n": n, "poly": json::poly(&cache.poly(n)) })),
        BernoulliCmd::Dpoly { n } => ok(json!({ "n": n, "poly": json::poly(cache.d_poly(n)) })),
        BernoulliCmd::Cvs { n } => {
            let defect = cache.clausen_staudt_defect(n)?;
            ok(json!({
                "n": n,
                "bernoulli": json::rat(&cache.number(n as usize)),
                "primes": clausen_staudt_primes(n),
                "defect": json::rat(&defect),
                "is_integer": defect.is_integer(),
            }))
        }
    }
}

fn derivation(a: Polynomial, ideal: Option<Polynomial>, member: Option<Polynomial>, shape: bool) -> Dispatched {
    let d = Derivation::new(a.clone());
    let head = json!({ "a": json::poly(&a), "ideal": json::opt_poly(ideal.as_ref()), "lf": d.is_lf(), "ln": d.is_ln() });
    let mut out = head;
    if shape {
        let s = match &ideal {
            Some(u) => derivation_ideal_shape(&d, u)?,
            None => ImageShape::principal(&a),
        };
        out["shape"] = json::shape(&s);
        return ok(out);
    }
    let f = member.expect("clap requires --member without --shape");
    let witness = match &ideal {
        Some(u) => lambda_member(&a, u, &f)?.map(|g| u * &g),
        None => d.image_member(&f),
    };
    out["member"] = json::poly(&f);
    out["verdict"] = json!(witness.is_some());
    // the witness is the preimage h with a h' = f, already inside the ideal
    out["witness"] = json::opt_poly(witness.as_ref());
    ok(out)
}

fn ederivation(w: Polynomial, f: Polynomial, ideal: Option<Polynomial>, gbound: Option<i64>) -> Dispatched {
    let case = json::case_tag(&classify_case(&w));
    let (witness, bound) = match &ideal {
        None => (im_delta_member(&w, &f), None),
        Some(u) => {
            let bound = gbound.unwrap_or_else(|| default_gdeg_bound(&w, u, &f));
            let g = generic_member(&w, u, &f, bound)?;
            (g.map(|g| u * &g), Some(bound))
        }
    };
    if let Some(h) = &witness {
        debug_assert_eq!(EDerivation::new(w.clone()).apply(h), f);
    }
    ok(json!({
        "w": json::poly(&w),
        "ideal": json::opt_poly(ideal.as_ref()),
        "member": json::poly(&f),
        "case": case,
        "gbound": bound,
        "verdict": witness.is_some(),
        "witness": json::opt_poly(witness.as_ref()),
    }))
}

fn translation(args: TranslationArgs) -> Dispatched {
    let delta = TranslationDelta::new(args.c.clone())?;
    let mut cache = BernoulliCache::new();
    let mut out = json!({ "c": json::rat(&args.c) });
    if let Some(roots) = args.ideal_roots {
        let lc = args.lc.unwrap_or_else(|| Rational::from_integer(1.into()));
        let ideal = RootedIdeal::new(roots.clone(), lc.clone())?;
        let f = args.member.ok_or_else(|| Failure::Usage("--ideal-roots needs --member".into()))?;
        out["ideal"] = json::poly(&ideal.generator());
        out["roots"] = Value::Array(roots.iter().map(json::rat).collect());
        out["member"] = json::poly(&f);
        out["verdict"] = json!(delta.rational_rooted_member(&ideal, &f, &mut cache));
        return ok(out);
    }
    if let Some(r) = args.linear {
        let f = args.member.ok_or_else(|| Failure::Usage("--linear needs --member".into()))?;
        let g = delta.preimage_full(&r, &f);
        out["ideal"] = json::poly(&Polynomial::linear_root(&r));
        out["member"] = json::poly(&f);
        out["verdict"] = json!(true);
        out["witness"] = json::poly(&g);
        return ok(out);
    }
    let a = args
        .a
        .ok_or_else(|| Failure::Usage("one of --ideal-roots, --a or --linear is required".into()))?;
    let spec = QuadraticIdealSpec::new(a.clone(), &delta);
    out["ideal"] = json::poly(&spec.generator());
    out["beta"] = json::rat(&(&a / &args.c));
    if args.shape {
        out["shape"] = json::shape(&delta.quadratic_shape(&spec));
        return ok(out);
    }
    let f = args.member.expect("clap requires --member without --shape");
    let residue = delta.reduce_mod_quadratic(&spec, &f, &mut cache);
    out["member"] = json::poly(&f);
    out["residue"] = json::rat(&residue);
    out["verdict"] = json!(num_traits::Zero::is_zero(&residue));
    ok(out)
}

fn parse_spec(text: &str) -> Result<derivimage_core::mathieu::ExponentSet, Failure> {
    let spec: ExponentSetJson =
        serde_json::from_str(text).map_err(|e| Failure::Usage(format!("exponent set spec: {e}")))?;
    Ok(spec.build()?)
}

fn radical_scan(
    target: &str,
    max_degree: usize,
    coeffs: &str,
    window: u32,
    seed: u64,
    sample: Option<usize>,
) -> Dispatched {
    let target = match Builtin::from_name(target) {
        Some(b) => Target::Builtin(b),
        None if target.trim_start().starts_with('{') => Target::Homogeneous(parse_spec(target)?),
        None => {
            let names: Vec<&str> = Builtin::ALL.iter().map(|b| b.name()).collect();
            return Err(Failure::Usage(format!("unknown target {target:?}; builtins: {}", names.join(", "))));
        }
    };
    if window == 0 {
        return Err(Failure::Usage("--window must be at least 1".into()));
    }
    let coeffs = parse_coeff_samples(coeffs).map_err(|e| Failure::Usage(format!("--coeffs: {e}")))?;
    let shared = SharedBernoulliCache::new();
    let mut candidates = enumerate_candidates(max_degree, &coeffs);
    let total = candidates.len();
    if let Some(k) = sample {
        let mut rng = sampling::case_rng(seed, "radical-scan");
        candidates.shuffle(&mut rng);
        candidates.truncate(k);
    }
    let survivors = scans::scan(&target, &candidates, window, &shared);
    let outcome = scans::ScanOutcome {
        target: target.label(),
        max_degree,
        coeffs,
        window,
        tested: candidates.len(),
        survivors,
    };
    let mut v = outcome.to_json();
    v["enumerated"] = json!(total);
    v["seed"] = json!(sample.map(|_| seed));
    ok(v)
}

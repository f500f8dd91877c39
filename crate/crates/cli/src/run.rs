//! Dispatch of session commands to the engine.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use ncmodgb::dmodules::{
    annihilator_fs, bs_polynomial, reduced_bs_polynomial, AnnihilatorSetup, CommPoly, Engine,
    UniPoly,
};
use ncmodgb::field::Rationals;
use ncmodgb::galgebra::GAlgebra;
use ncmodgb::groebner::{
    buchberger, gb_check, ideal_membership, opposite_algebra, transport, GroebnerBasis, Side,
};
use ncmodgb::modular::{modular_gb, ModularOptions, Status, VerifyLevel};
use ncmodgb::orderings::OrderingSpec;
use ncmodgb::poly::NcPoly;

use crate::document::{from_records, records, ResultDocument, TermRecord};
use crate::session::{eval, Command, Directive, Expr, Options, Pos, Session, SessionError};

/// Which engine a command runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineChoice {
    Direct,
    Modular,
}

impl FromStr for EngineChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "direct" => Ok(EngineChoice::Direct),
            "modular" => Ok(EngineChoice::Modular),
            _ => Err(format!("unknown engine `{s}`")),
        }
    }
}

/// Defaults for command options. Options written on a command win.
#[derive(Debug, Clone)]
pub struct RunFlags {
    pub threads: usize,
    pub seed: u64,
    pub verify: VerifyLevel,
    pub prime_bits: u32,
    pub timings: bool,
    /// Forces the engine of every command.
    pub engine: Option<EngineChoice>,
}

impl Default for RunFlags {
    fn default() -> Self {
        RunFlags {
            threads: 1,
            seed: 1,
            verify: VerifyLevel::Full,
            prime_bits: 31,
            timings: false,
            engine: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    /// Bad input; the process exits with code 2.
    #[error("{0}")]
    Input(#[from] SessionError),
    /// The computation failed; exit code 1.
    #[error("{0}")]
    Compute(String),
}

impl From<ncmodgb::Error> for RunError {
    fn from(e: ncmodgb::Error) -> Self {
        RunError::Compute(e.to_string())
    }
}

fn bad(pos: Pos, message: impl Into<String>) -> RunError {
    RunError::Input(SessionError {
        pos,
        message: message.into(),
    })
}

fn check_keys(options: &Options, allowed: &[&str]) -> Result<(), RunError> {
    for (k, (_, p)) in options {
        if !allowed.contains(&k.as_str()) {
            return Err(bad(*p, format!("unknown option `{k}`")));
        }
    }
    Ok(())
}

fn opt<T: FromStr>(options: &Options, key: &str) -> Result<Option<T>, RunError> {
    match options.get(key) {
        None => Ok(None),
        Some((v, p)) => v
            .parse::<T>()
            .map(Some)
            .map_err(|_| bad(*p, format!("bad value `{v}` for `{key}`"))),
    }
}

fn modular_options(options: &Options, flags: &RunFlags) -> Result<ModularOptions, RunError> {
    let threads = opt::<usize>(options, "threads")?.unwrap_or(flags.threads);
    if threads == 0 {
        let p = options
            .get("threads")
            .map_or(Pos { line: 1, col: 1 }, |(_, p)| *p);
        return Err(bad(p, "threads must be at least 1"));
    }
    let prime_bits = opt::<u32>(options, "bits")?.unwrap_or(flags.prime_bits);
    if !(2..=32).contains(&prime_bits) {
        let p = options
            .get("bits")
            .map_or(Pos { line: 1, col: 1 }, |(_, p)| *p);
        return Err(bad(p, "prime bits must lie in 2..=32"));
    }
    let verify = match options.get("verify") {
        None => flags.verify,
        Some((v, p)) => VerifyLevel::from_str(v).map_err(|e| bad(*p, e.to_string()))?,
    };
    Ok(ModularOptions {
        threads,
        seed: opt::<u64>(options, "seed")?.unwrap_or(flags.seed),
        verify,
        prime_bits,
        ..ModularOptions::default()
    })
}

fn engine_choice(options: &Options, flags: &RunFlags) -> Result<EngineChoice, RunError> {
    if let Some(e) = flags.engine {
        return Ok(e);
    }
    match options.get("engine") {
        None => Ok(EngineChoice::Direct),
        Some((v, p)) => v.parse().map_err(|e: String| bad(*p, e)),
    }
}

struct Outcome {
    engine: EngineChoice,
    algebra_names: Vec<String>,
    ordering: String,
    side: Side,
    basis: Vec<Vec<TermRecord>>,
    status: Status,
    primes: Vec<u64>,
    seed: Option<u64>,
    bernstein_sato: Option<String>,
}

/// Runs one command of a session.
pub fn run_command(
    session: &Session,
    digest: &str,
    cmd: &Command,
    flags: &RunFlags,
) -> Result<ResultDocument, RunError> {
    let start = Instant::now();
    let out = match &cmd.directive {
        Directive::Gb { ideal, options } => {
            check_keys(options, &["side"])?;
            let side = match options.get("side") {
                None => Side::Left,
                Some((v, p)) => Side::from_str(v).map_err(|e| bad(*p, e.to_string()))?,
            };
            match flags.engine {
                Some(EngineChoice::Modular) => {
                    if side != Side::Left {
                        return Err(bad(cmd.pos, "the modular engine computes left ideals only"));
                    }
                    run_modgb(session, &session.ideals[ideal], &Options::new(), flags)?
                }
                _ => run_gb(session, &session.ideals[ideal], side)?,
            }
        }
        Directive::Modgb { ideal, options } => {
            check_keys(options, &["threads", "seed", "verify", "bits"])?;
            match flags.engine {
                Some(EngineChoice::Direct) => run_gb(session, &session.ideals[ideal], Side::Left)?,
                _ => run_modgb(session, &session.ideals[ideal], options, flags)?,
            }
        }
        Directive::Ann { polys, options } => {
            check_keys(options, &["engine", "threads", "seed", "verify", "bits"])?;
            let (xs, fs) = commutative_inputs(session, polys, cmd.pos)?;
            let choice = engine_choice(options, flags)?;
            let (engine, seed) = make_engine(choice, options, flags)?;
            let setup = AnnihilatorSetup::new(&xs, &fs)?;
            let (ann, status) = annihilator_fs(&setup, &engine)?;
            let m = 2 * setup.nx() + setup.r();
            let names = setup.ambient.names()[..m].to_vec();
            let basis = ann
                .iter()
                .map(|g| {
                    g.terms()
                        .iter()
                        .map(|(e, c)| TermRecord {
                            coefficient: ncmodgb::arithmetic::format_rational(c),
                            exponent: e[..m].to_vec(),
                        })
                        .collect()
                })
                .collect();
            Outcome {
                engine: choice,
                algebra_names: names,
                ordering: setup.ambient.ordering().describe(setup.ambient.names()),
                side: Side::Left,
                basis,
                status,
                primes: Vec::new(),
                seed,
                bernstein_sato: None,
            }
        }
        Directive::Bsp {
            poly,
            reduced,
            options,
        } => {
            check_keys(options, &["engine", "threads", "seed", "verify", "bits"])?;
            let (xs, fs) = commutative_inputs(session, std::slice::from_ref(poly), cmd.pos)?;
            let choice = engine_choice(options, flags)?;
            let (engine, seed) = make_engine(choice, options, flags)?;
            let (b, status) = if *reduced {
                reduced_bs_polynomial(&xs, &fs[0], &engine)?
            } else {
                bs_polynomial(&xs, &fs[0], &engine)?
            };
            Outcome {
                engine: choice,
                algebra_names: vec!["s".into()],
                ordering: "dp".into(),
                side: Side::Left,
                basis: vec![uni_records(&b)],
                status,
                primes: Vec::new(),
                seed,
                bernstein_sato: Some(b.factored("s")),
            }
        }
    };
    let timings = flags.timings.then(|| {
        let mut t = BTreeMap::new();
        t.insert("total".to_string(), start.elapsed().as_secs_f64());
        t
    });
    Ok(ResultDocument {
        input_digest: digest.to_string(),
        command: cmd.text.clone(),
        engine: match out.engine {
            EngineChoice::Direct => "direct".into(),
            EngineChoice::Modular => "modular".into(),
        },
        ordering: out.ordering,
        variables: out.algebra_names,
        side: out.side.as_str().into(),
        basis: out.basis,
        status: out.status.as_str().into(),
        primes: out.primes,
        seed: out.seed,
        bernstein_sato: out.bernstein_sato,
        timings,
    })
}

fn run_gb(session: &Session, gens: &[NcPoly<Rationals>], side: Side) -> Result<Outcome, RunError> {
    let alg = &session.algebra;
    let gb = buchberger(alg, gens, side)?;
    Ok(Outcome {
        engine: EngineChoice::Direct,
        algebra_names: alg.names().to_vec(),
        ordering: alg.ordering().describe(alg.names()),
        side,
        basis: gb.elements.iter().map(records).collect(),
        status: Status::Direct,
        primes: Vec::new(),
        seed: None,
        bernstein_sato: None,
    })
}

fn run_modgb(
    session: &Session,
    gens: &[NcPoly<Rationals>],
    options: &Options,
    flags: &RunFlags,
) -> Result<Outcome, RunError> {
    let alg = &session.algebra;
    let opts = modular_options(options, flags)?;
    let r = modular_gb(alg, gens, &opts)?;
    Ok(Outcome {
        engine: EngineChoice::Modular,
        algebra_names: alg.names().to_vec(),
        ordering: alg.ordering().describe(alg.names()),
        side: Side::Left,
        basis: r.basis.elements.iter().map(records).collect(),
        status: r.status,
        primes: r.primes,
        seed: Some(opts.seed),
        bernstein_sato: None,
    })
}

fn make_engine(
    choice: EngineChoice,
    options: &Options,
    flags: &RunFlags,
) -> Result<(Engine, Option<u64>), RunError> {
    match choice {
        EngineChoice::Direct => Ok((Engine::Direct, None)),
        EngineChoice::Modular => {
            let o = modular_options(options, flags)?;
            let seed = o.seed;
            Ok((Engine::Modular(o), Some(seed)))
        }
    }
}

fn uni_records(b: &UniPoly) -> Vec<TermRecord> {
    b.coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(k, c)| TermRecord {
            coefficient: ncmodgb::arithmetic::format_rational(c),
            exponent: vec![k as u32],
        })
        .collect()
}

/// The variables of the `ann`/`bsp` inputs (declared ones in declaration
/// order, then the rest by first appearance) and the inputs as commutative
/// polynomials in them.
fn commutative_inputs(
    session: &Session,
    polys: &[Expr],
    pos: Pos,
) -> Result<(Vec<String>, Vec<CommPoly>), RunError> {
    let mut seen: Vec<String> = Vec::new();
    for p in polys {
        for v in p.variables() {
            if !seen.contains(&v) {
                seen.push(v);
            }
        }
    }
    let rank = |v: &String| {
        session
            .declared
            .iter()
            .position(|d| d == v)
            .unwrap_or(usize::MAX)
    };
    let mut xs = seen.clone();
    xs.sort_by_key(|v| (rank(v), seen.iter().position(|s| s == v)));
    if xs.is_empty() {
        return Err(bad(pos, "the polynomial must involve a variable"));
    }
    let ring = GAlgebra::commutative(Rationals, xs.clone(), OrderingSpec::Lex)?;
    let mut out = Vec::new();
    for p in polys {
        let f = eval(&ring, p)?;
        let c = CommPoly::new(xs.len(), f.terms().to_vec());
        if c.is_constant() {
            return Err(bad(pos, "polynomials must be nonconstant"));
        }
        out.push(c);
    }
    Ok((xs, out))
}

/// Re-checks a `gb`/`modgb` document against its session: the basis must
/// pass Buchberger's criterion and contain the ideal's generators. `None`
/// for documents of other commands.
pub fn reverify(session: &Session, doc: &ResultDocument) -> Result<Option<bool>, RunError> {
    let cmd = session
        .commands
        .iter()
        .find(|c| c.text == doc.command)
        .ok_or_else(|| {
            RunError::Compute(format!("command `{}` is not in the session", doc.command))
        })?;
    let ideal = match &cmd.directive {
        Directive::Gb { ideal, .. } | Directive::Modgb { ideal, .. } => ideal,
        _ => return Ok(None),
    };
    let alg = &session.algebra;
    if doc.variables != alg.names() {
        return Ok(Some(false));
    }
    let mut basis = Vec::with_capacity(doc.basis.len());
    for g in &doc.basis {
        match from_records(alg, g) {
            Some(p) => basis.push(p),
            None => return Ok(Some(false)),
        }
    }
    let side = Side::from_str(&doc.side)?;
    let gens = &session.ideals[ideal];
    let ok_gb = match side {
        Side::Right => {
            let opp = opposite_algebra(alg)?;
            let g: Vec<_> = basis.iter().map(|h| transport(h, &opp)).collect();
            gb_check(&opp, &g)
        }
        _ => gb_check(alg, &basis),
    };
    if !ok_gb {
        return Ok(Some(false));
    }
    let gb = GroebnerBasis {
        elements: basis,
        ordering: alg.ordering().clone(),
        reduced: true,
        side,
    };
    for f in gens {
        if !ideal_membership(alg, f, &gb)? {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// `true` for statuses that count as a verification failure.
pub fn is_failure(status: &str) -> bool {
    status == Status::Failed.as_str() || status == Status::PTestFailed.as_str()
}

//! One PASS/FAIL line per acceptance criterion, with pinned time limits.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::{Duration, Instant};

use common::{
    closed_form_poly, comm_poly, from_dense, hilbert_instances, modular_suite, names, parse,
    quasi_homogeneous_bs, random_ideals, shift_power_closed_form, staircase_count,
    textbook_buchberger, to_dense, weyl_power_closed_form, SuiteCase, TextbookOrder,
};
use ncmodgb::dmodules::{
    annihilator_fs, bs_polynomial, reduced_bs_polynomial, shift, weyl, AnnihilatorSetup, Engine,
    UniPoly,
};
use ncmodgb::field::{Field, PrimeField, Rationals};
use ncmodgb::galgebra::GAlgebra;
use ncmodgb::graded::hilbert_function_weighted;
use ncmodgb::groebner::left_gb;
use ncmodgb::modular::{gb_mod_p, modular_gb, Fault, ModularOptions, PrimePool, Status};
use ncmodgb::orderings::OrderingSpec;
use ncmodgb::poly::NcPoly;
use ncmodgb_cli::document::digest;
use ncmodgb_cli::{load_session, run_command, RunFlags};

type Check = Result<String, String>;

const SEED: u64 = 11;

fn modular_opts(threads: usize) -> ModularOptions {
    ModularOptions {
        threads,
        seed: SEED,
        ..ModularOptions::default()
    }
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn closed_forms() -> Check {
    fn powers<F: Field>(w: &GAlgebra<F>, s: &GAlgebra<F>, label: &str) -> Result<(), String> {
        let a = w.add(&w.var(0), &w.var(1));
        let b = s.add(&s.var(0), &s.var(1));
        for n in 1..=12u32 {
            let wf = closed_form_poly(w, &weyl_power_closed_form(n as u64));
            ensure(w.pow(&a, n) == wf, || format!("(x+D)^{n} over {label}"))?;
            let sf = closed_form_poly(s, &shift_power_closed_form(n as u64));
            ensure(s.pow(&b, n) == sf, || format!("(s+t)^{n} over {label}"))?;
        }
        Ok(())
    }
    powers(
        &weyl(Rationals, 1).unwrap(),
        &shift(Rationals, 1).unwrap(),
        "Q",
    )?;
    for p in [1_000_000_007u32, 2_147_483_647, 65_521] {
        let f = PrimeField::new(p);
        powers(
            &weyl(f, 1).unwrap(),
            &shift(f, 1).unwrap(),
            &format!("F_{p}"),
        )?;
    }
    Ok("n = 1..12 over Q and three primes".into())
}

fn commutative_cross_check() -> Check {
    let ideals = random_ideals(2024, 24);
    for (spec, o) in [
        (OrderingSpec::DegRevLex, TextbookOrder::DegRevLex),
        (OrderingSpec::Lex, TextbookOrder::Lex),
    ] {
        for (n, gens) in &ideals {
            let alg = GAlgebra::commutative(Rationals, names(&["x", "y", "z"][..*n]), spec.clone())
                .unwrap();
            let polys: Vec<_> = gens.iter().map(|g| from_dense(&alg, g)).collect();
            let ours: Vec<_> = left_gb(&alg, &polys)
                .elements
                .iter()
                .map(to_dense)
                .collect();
            ensure(ours == textbook_buchberger(gens, o), || {
                format!("{spec}: {gens:?}")
            })?;
        }
    }
    Ok(format!("{} ideals under dp and lp", ideals.len()))
}

/// The suite and its clean modular results, reused by later criteria.
struct SuiteRun {
    cases: Vec<SuiteCase>,
    modular: Vec<Vec<NcPoly<Rationals>>>,
}

fn modular_equals_direct(run: &mut Option<SuiteRun>) -> Check {
    let cases = modular_suite();
    let mut modular = Vec::new();
    let mut graded = 0;
    for case in &cases {
        let d = left_gb(&case.alg, &case.gens).elements;
        let m = modular_gb(&case.alg, &case.gens, &modular_opts(1))
            .map_err(|e| format!("{}: {e}", case.name))?;
        ensure(m.basis.elements == d, || {
            format!("{}: bases differ", case.name)
        })?;
        if case.graded {
            graded += 1;
            ensure(m.status == Status::VerifiedGraded, || {
                format!("{}: status {}", case.name, m.status)
            })?;
        }
        modular.push(m.basis.elements);
    }
    let n = cases.len();
    *run = Some(SuiteRun { cases, modular });
    Ok(format!("{n} ideals, {graded} graded and VerifiedGraded"))
}

fn error_tolerance(run: &Option<SuiteRun>) -> Check {
    let run = run.as_ref().ok_or("criterion 3 did not finish")?;
    for fault in [Fault::CorruptBasis(3), Fault::CorruptCoefficient(5)] {
        for (case, want) in run.cases.iter().zip(&run.modular) {
            let opts = ModularOptions {
                faults: vec![fault],
                ..modular_opts(1)
            };
            let m = modular_gb(&case.alg, &case.gens, &opts)
                .map_err(|e| format!("{}: {e}", case.name))?;
            ensure(m.primes.len() >= 19 || m.rounds > 1, || {
                format!("{}: too few primes", case.name)
            })?;
            ensure(&m.basis.elements == want, || {
                format!("{}: {fault:?} changed the result", case.name)
            })?;
        }
    }
    Ok(format!(
        "{} ideals, basis and coefficient faults among 20 primes",
        run.cases.len()
    ))
}

fn timed<T>(limit: Duration, f: impl FnOnce() -> Result<T, String>) -> Result<T, String> {
    let t = Instant::now();
    let r = f()?;
    ensure(t.elapsed() <= limit, || {
        format!("took {:.1?}, limit {limit:?}", t.elapsed())
    })?;
    Ok(r)
}

fn bernstein_sato() -> Check {
    let minute = Duration::from_secs(60);
    let s_plus_1 = UniPoly::linear(common::q(-1, 1));
    timed(minute, || {
        let (b, _) = bs_polynomial(&names(&["x"]), &comm_poly(&["x"], "x"), &Engine::Direct)
            .map_err(|e| e.to_string())?;
        ensure(b == s_plus_1, || format!("b_x = {b}"))
    })?;
    timed(minute, || {
        let f = comm_poly(&["x", "y"], "x^2 - y^3");
        let (b, _) =
            bs_polynomial(&names(&["x", "y"]), &f, &Engine::Direct).map_err(|e| e.to_string())?;
        ensure(b == quasi_homogeneous_bs(2, 3), || {
            format!("cusp: {}", b.factored("s"))
        })
    })?;
    let cases: [(&[&str], &str); 6] = [
        (&["x"], "x"),
        (&["x"], "x^3"),
        (&["x", "y"], "x*y"),
        (&["x", "y"], "x^2 - y^3"),
        (&["x", "y"], "x^3 - y^4"),
        (&["x", "y", "z"], "x*y - z^2"),
    ];
    for (vars, text) in cases {
        timed(minute, || {
            let f = comm_poly(vars, text);
            let (b, _) =
                bs_polynomial(&names(vars), &f, &Engine::Direct).map_err(|e| e.to_string())?;
            let (r, _) = reduced_bs_polynomial(&names(vars), &f, &Engine::Direct)
                .map_err(|e| e.to_string())?;
            ensure(r.mul(&s_plus_1) == b, || {
                format!("{text}: b = {b}, reduced = {r}")
            })
        })?;
    }
    timed(minute, || {
        let setup = AnnihilatorSetup::new(&names(&["x"]), &[comm_poly(&["x"], "x")])
            .map_err(|e| e.to_string())?;
        let (ann, _) = annihilator_fs(&setup, &Engine::Direct).map_err(|e| e.to_string())?;
        let a = &setup.ambient;
        let want = parse(a, "x*Dx - s");
        ensure(left_gb(a, &ann).elements == vec![want], || {
            "Ann(x^s)".into()
        })
    })?;
    Ok("b_x, cusp, 6 reduced identities, Ann(x^s); each under 60 s".into())
}

fn reiffen() -> Check {
    let vars = ["x", "y"];
    let f = comm_poly(&vars, "x^4 + y^5 + x*y^4");
    let t = Instant::now();
    let (d, _) = bs_polynomial(&names(&vars), &f, &Engine::Direct).map_err(|e| e.to_string())?;
    let direct_time = t.elapsed();
    let t = Instant::now();
    let (m, st) = bs_polynomial(&names(&vars), &f, &Engine::Modular(modular_opts(1)))
        .map_err(|e| e.to_string())?;
    let modular_time = t.elapsed();
    ensure(d == m, || {
        format!("direct {} vs modular {}", d.factored("s"), m.factored("s"))
    })?;
    Ok(format!(
        "b = {}; direct {:.0?}, modular {:.0?} ({st})",
        d.factored("s"),
        direct_time,
        modular_time
    ))
}

fn hilbert_monotonicity() -> Check {
    let w = [1u32; 4];
    let mut equal = 0;
    let mut instances = 0;
    for (k, (alg, gens, bad)) in hilbert_instances(10).into_iter().enumerate() {
        instances += 1;
        let leads = left_gb(&alg, &gens).leading_exponents();
        let h: Vec<u64> = (0..=8).map(|d| staircase_count(&w, &leads, d)).collect();
        let mut pool =
            PrimePool::new(&alg, &gens, 100 + k as u64, 31).map_err(|e| e.to_string())?;
        let mut primes = pool.next_primes(4).map_err(|e| e.to_string())?;
        primes.push(bad);
        for p in primes {
            let (_, gp) = gb_mod_p(&alg, &gens, p).map_err(|e| e.to_string())?;
            let lp = gp.leading_exponents();
            let hp: Vec<u64> = (0..=8)
                .map(|d| hilbert_function_weighted(&w, &lp, d))
                .collect();
            ensure(hp.iter().zip(&h).all(|(a, b)| a <= b), || {
                format!("ideal {k}, p = {p}: {hp:?} > {h:?}")
            })?;
            if p == bad {
                ensure(hp != h, || format!("ideal {k}: bad prime {p} not detected"))?;
            } else {
                ensure(hp == h, || format!("ideal {k}, p = {p}: {hp:?} != {h:?}"))?;
                equal += 1;
            }
        }
    }
    Ok(format!(
        "{instances} ideals x 5 primes, {equal} equal, every bad prime drops"
    ))
}

/// The session text of a suite case with a `modgb` command.
fn session_text(case: &SuiteCase) -> String {
    let alg = &case.alg;
    let names = alg.names();
    let mut s = format!("var {};\n", names.join(", "));
    for r in alg.relations() {
        let tail = alg.normalize(r.d.clone());
        let lhs = format!("{}*{}", names[r.j], names[r.i]);
        let mut rhs = format!("{}*{}*{}", r.c, names[r.i], names[r.j]);
        if !tail.is_zero() {
            rhs = format!("{rhs} + ({})", alg.format(&tail));
        }
        s.push_str(&format!("rel {lhs} = {rhs};\n"));
    }
    s.push_str(&format!("order {};\n", alg.ordering().describe(names)));
    let gens: Vec<String> = case.gens.iter().map(|g| alg.format(g)).collect();
    s.push_str(&format!(
        "ideal I = {};\nmodgb I seed={SEED};\n",
        gens.join(", ")
    ));
    s
}

fn determinism(run: &Option<SuiteRun>) -> Check {
    let run = run.as_ref().ok_or("criterion 3 did not finish")?;
    for (case, want) in run.cases.iter().zip(&run.modular) {
        let text = session_text(case);
        let session = load_session(&text).map_err(|e| format!("{}: {e}\n{text}", case.name))?;
        ensure(session.ideals["I"] == case.gens, || {
            format!("{}: session does not reproduce the input", case.name)
        })?;
        let d = digest(&text);
        let mut bytes: Vec<Vec<u8>> = Vec::new();
        for threads in [1, 2, 4, 1] {
            let flags = RunFlags {
                threads,
                ..RunFlags::default()
            };
            let doc = run_command(&session, &d, &session.commands[0], &flags)
                .map_err(|e| format!("{}: {e}", case.name))?;
            let basis: Vec<_> = want.iter().map(ncmodgb_cli::document::records).collect();
            ensure(doc.basis == basis, || {
                format!("{}: document basis differs", case.name)
            })?;
            bytes.push(serde_json::to_vec(&doc).unwrap());
        }
        ensure(bytes.windows(2).all(|w| w[0] == w[1]), || {
            format!("{}: documents differ", case.name)
        })?;
    }
    Ok(format!(
        "{} sessions, threads 1/2/4 and a repeat run",
        run.cases.len()
    ))
}

fn main() {
    let mut suite: Option<SuiteRun> = None;
    let mut failures = 0;
    let mut report = |k: u32, limit: Duration, f: &mut dyn FnMut() -> Check| {
        let t = Instant::now();
        let r = f();
        let el = t.elapsed();
        let r = match r {
            Ok(msg) if el > limit => Err(format!("{msg}; over the time limit")),
            other => other,
        };
        match r {
            Ok(msg) => println!(
                "criterion {k}: PASS ({:.2} s, limit {} s) {msg}",
                el.as_secs_f64(),
                limit.as_secs()
            ),
            Err(msg) => {
                failures += 1;
                println!(
                    "criterion {k}: FAIL ({:.2} s, limit {} s) {msg}",
                    el.as_secs_f64(),
                    limit.as_secs()
                );
            }
        }
    };
    let secs = Duration::from_secs;
    report(1, secs(1), &mut closed_forms);
    report(2, secs(30), &mut commutative_cross_check);
    report(3, secs(600), &mut || modular_equals_direct(&mut suite));
    report(4, secs(600), &mut || error_tolerance(&suite));
    report(5, secs(6 * 60), &mut bernstein_sato);
    report(6, secs(1800), &mut reiffen);
    report(7, secs(120), &mut hilbert_monotonicity);
    report(8, secs(1800), &mut || determinism(&suite));
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}

//! The parallel modular Gröbner basis driver.
//!
//! Bases are computed modulo a batch of random primes in parallel, the
//! primes are filtered by a weighted majority vote on the leading
//! exponents, and the surviving bases are lifted to the rationals by
//! Chinese remaindering and error tolerant rational reconstruction. The
//! lift is checked modulo a fresh prime and then verified over the
//! rationals; any failure enlarges the prime set and repeats.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arithmetic::{
    err_tolerant_reconstruct, is_prime_u64, prime_divides_rational, CrtBasis, Rational, Residue,
};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::galgebra::{poly_mod_p, GAlgebra};
use crate::graded::grading_weight_with;
use crate::groebner::{gb_check, left_gb, left_normal_form, GroebnerBasis, Side};
use crate::poly::{Exponent, NcPoly};

/// Source of random machine-word primes for one modular run.
#[derive(Debug, Clone)]
pub struct PrimePool {
    rng: ChaCha8Rng,
    low: u64,
    high: u64,
    used: HashSet<u64>,
    rejected: Vec<Rational>,
}

impl PrimePool {
    /// Primes in `[2^(bits-1), 2^bits)` for `2 <= bits <= 32`, rejecting those
    /// that divide a relation coefficient or a generator denominator.
    pub fn new(
        alg: &GAlgebra<Rationals>,
        gens: &[NcPoly<Rationals>],
        seed: u64,
        bits: u32,
    ) -> Result<Self> {
        if !(2..=32).contains(&bits) {
            return Err(Error::Invalid(
                "prime size must be between 2 and 32 bits".into(),
            ));
        }
        let mut rejected: Vec<Rational> = Vec::new();
        for r in alg.relations() {
            rejected.push(r.c.clone());
            rejected.extend(r.d.iter().map(|(_, c)| c.clone()));
        }
        // denominators only for the generators
        for f in gens {
            for (_, c) in f.terms() {
                if !num_traits::One::is_one(c.denom()) {
                    rejected.push(Rational::from_integer(c.denom().clone()));
                }
            }
        }
        Ok(PrimePool {
            rng: ChaCha8Rng::seed_from_u64(seed),
            low: 1 << (bits - 1),
            high: 1 << bits,
            used: HashSet::new(),
            rejected,
        })
    }

    /// Whether `p` passes every rejection test of this pool.
    pub fn admissible(&self, p: u64) -> bool {
        self.rejected.iter().all(|q| !prime_divides_rational(p, q))
    }

    /// The next unused admissible prime.
    pub fn next_prime(&mut self) -> Result<u64> {
        self.next_prime_avoiding(&[])
    }

    /// The next unused admissible prime dividing none of `extra`.
    pub fn next_prime_avoiding(&mut self, extra: &[Rational]) -> Result<u64> {
        let span = self.high - self.low;
        for _ in 0..(span.min(1 << 20) * 8 + 64) {
            let p = self.rng.gen_range(self.low..self.high);
            if self.used.contains(&p) || !is_prime_u64(p) || !self.admissible(p) {
                continue;
            }
            if extra.iter().any(|q| prime_divides_rational(p, q)) {
                continue;
            }
            self.used.insert(p);
            return Ok(p);
        }
        Err(Error::PrimePoolExhausted)
    }

    pub fn next_primes(&mut self, k: usize) -> Result<Vec<u64>> {
        (0..k).map(|_| self.next_prime()).collect()
    }
}

/// Smallest multiple of `threads` that is at least 20.
pub fn batch_size(threads: usize) -> usize {
    let t = threads.max(1);
    20usize.div_ceil(t) * t
}

/// Reduced left basis of the ideal generated by the reductions of `gens`.
pub fn gb_mod_p(
    alg: &GAlgebra<Rationals>,
    gens: &[NcPoly<Rationals>],
    p: u64,
) -> Result<(GAlgebra<PrimeField>, GroebnerBasis<PrimeField>)> {
    let pu = u32::try_from(p).map_err(|_| Error::BadPrime(p))?;
    let alg_p = alg.reduce_mod_p(pu)?;
    let gp: Vec<NcPoly<PrimeField>> = gens
        .iter()
        .map(|f| poly_mod_p(f, alg_p.field()).ok_or(Error::BadPrime(p)))
        .collect::<Result<_>>()?;
    let gb = left_gb(&alg_p, &gp);
    Ok((alg_p, gb))
}

/// Leading exponents of a reduced basis, in basis order.
pub type Signature = Vec<Exponent>;

/// Primes sharing one signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoteClass {
    pub signature: Signature,
    pub members: Vec<u64>,
    pub weight: u64,
}

/// Weighted majority vote.
///
/// The `carried` class of earlier rounds absorbs new primes of its
/// signature, and is displaced only by a class of strictly larger weight.
/// Between new classes, ties go to the lexicographically smallest
/// signature.
pub fn majority_vote(carried: Option<VoteClass>, new: &[(u64, Signature)]) -> VoteClass {
    let mut classes: BTreeMap<Signature, VoteClass> = BTreeMap::new();
    for (p, sig) in new {
        let c = classes.entry(sig.clone()).or_insert_with(|| VoteClass {
            signature: sig.clone(),
            members: Vec::new(),
            weight: 0,
        });
        c.members.push(*p);
        c.weight += 1;
    }
    let mut best: Option<VoteClass> = None;
    let mut carried = carried;
    if let Some(c) = carried.as_mut() {
        if let Some(same) = classes.remove(&c.signature) {
            c.members.extend(same.members);
            c.weight += same.weight;
        }
    }
    // BTreeMap iterates signatures ascending, so the first maximum wins ties
    for c in classes.into_values() {
        if best.as_ref().is_none_or(|b| c.weight > b.weight) {
            best = Some(c);
        }
    }
    match (carried, best) {
        (Some(c), Some(b)) => {
            if b.weight > c.weight {
                b
            } else {
                c
            }
        }
        (Some(c), None) => c,
        (None, Some(b)) => b,
        (None, None) => VoteClass {
            signature: Vec::new(),
            members: Vec::new(),
            weight: 0,
        },
    }
}

/// Lifts bases with a common signature to the rationals, coefficient by
/// coefficient. `None` when some coefficient does not reconstruct.
pub fn lift_candidate(
    alg: &GAlgebra<Rationals>,
    primes: &[u64],
    bases: &[&[NcPoly<PrimeField>]],
) -> Option<Vec<NcPoly<Rationals>>> {
    assert_eq!(primes.len(), bases.len());
    let first = bases.first()?;
    let crt = CrtBasis::new(primes).ok()?;
    let n_elems = first.len();
    if bases.iter().any(|b| b.len() != n_elems) {
        return None;
    }
    let mut out = Vec::with_capacity(n_elems);
    for k in 0..n_elems {
        // a coefficient missing modulo some prime is zero there
        let mut support: Vec<Exponent> = Vec::new();
        let mut seen: HashSet<Exponent> = HashSet::new();
        for b in bases {
            for (e, _) in b[k].terms() {
                if seen.insert(e.clone()) {
                    support.push(e.clone());
                }
            }
        }
        let mut terms = Vec::with_capacity(support.len());
        for e in support {
            let residues: Vec<u64> = bases
                .iter()
                .map(|b| b[k].coefficient(&e).copied().unwrap_or(0) as u64)
                .collect();
            let value = crt.combine(&residues);
            if value.is_zero() {
                continue;
            }
            let r = Residue::new(value, crt.modulus().clone()).ok()?;
            let q = err_tolerant_reconstruct(&r).ok()?;
            if !q.is_zero() {
                terms.push((e, q));
            }
        }
        out.push(terms);
    }
    Some(out.into_iter().map(|t| alg.normalize(t)).collect())
}

/// pTest: recomputes the basis modulo a fresh prime and compares it with
/// the reduction of the candidate. Returns the verdict and the prime used.
pub fn p_test(
    alg: &GAlgebra<Rationals>,
    gens: &[NcPoly<Rationals>],
    candidate: &[NcPoly<Rationals>],
    pool: &mut PrimePool,
) -> Result<(bool, u64)> {
    let coeffs: Vec<Rational> = candidate
        .iter()
        .flat_map(|g| g.terms().iter().map(|(_, c)| c.clone()))
        .collect();
    let p = pool.next_prime_avoiding(&coeffs)?;
    let (alg_p, gb) = gb_mod_p(alg, gens, p)?;
    let reduced: Option<Vec<NcPoly<PrimeField>>> = candidate
        .iter()
        .map(|g| poly_mod_p(g, alg_p.field()))
        .collect();
    Ok((reduced.is_some_and(|r| r == gb.elements), p))
}

/// Outcome of a modular run or of its final verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    /// Lifted but not tested.
    Lifting,
    PTestFailed,
    /// Certified exactly: the input is graded and the final check passed.
    VerifiedGraded,
    /// Passed every test; correct with high probability.
    ProbablyCorrect,
    Running,
    Failed,
    /// Computed directly over the rationals.
    Direct,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Lifting => "Lifting",
            Status::PTestFailed => "PTestFailed",
            Status::VerifiedGraded => "VerifiedGraded",
            Status::ProbablyCorrect => "ProbablyCorrect",
            Status::Running => "Running",
            Status::Failed => "Failed",
            Status::Direct => "Direct",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Buchberger's criterion for the candidate and containment of every
/// generator. Graded inputs are certified.
pub fn final_verify(
    alg: &GAlgebra<Rationals>,
    gens: &[NcPoly<Rationals>],
    candidate: &[NcPoly<Rationals>],
) -> Status {
    if !gb_check(alg, candidate) {
        return Status::Failed;
    }
    if gens
        .iter()
        .any(|f| !left_normal_form(alg, f, candidate).is_zero())
    {
        return Status::Failed;
    }
    if grading_weight_with(alg, gens).is_some() {
        Status::VerifiedGraded
    } else {
        Status::ProbablyCorrect
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum VerifyLevel {
    /// Lift only.
    None,
    /// Lift and pTest.
    PTest,
    /// Lift, pTest and the rational checks.
    #[default]
    Full,
}

impl VerifyLevel {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerifyLevel::None => "none",
            VerifyLevel::PTest => "ptest",
            VerifyLevel::Full => "full",
        }
    }
}

impl FromStr for VerifyLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(VerifyLevel::None),
            "ptest" => Ok(VerifyLevel::PTest),
            "full" => Ok(VerifyLevel::Full),
            _ => Err(Error::Invalid(format!("unknown verification level `{s}`"))),
        }
    }
}

/// Deliberate damage to per-prime results of the first round, for
/// exercising the vote and the error tolerant lift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Changes the signature of the basis at this batch position.
    CorruptBasis(usize),
    /// Changes one non-leading coefficient of the basis at this position.
    CorruptCoefficient(usize),
}

#[derive(Debug, Clone)]
pub struct ModularOptions {
    pub threads: usize,
    pub seed: u64,
    pub verify: VerifyLevel,
    pub prime_bits: u32,
    pub round_cap: usize,
    pub faults: Vec<Fault>,
}

impl Default for ModularOptions {
    fn default() -> Self {
        ModularOptions {
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            seed: 1,
            verify: VerifyLevel::Full,
            prime_bits: 31,
            round_cap: 32,
            faults: Vec::new(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ModularResult {
    pub basis: GroebnerBasis<Rationals>,
    pub status: Status,
    /// Primes of the surviving vote class, in the order they were drawn.
    pub primes: Vec<u64>,
    pub rounds: usize,
}

fn apply_fault(alg_p: &GAlgebra<PrimeField>, basis: &mut Vec<NcPoly<PrimeField>>, fault: Fault) {
    match fault {
        Fault::CorruptBasis(_) => {
            if basis.len() > 1 {
                basis.pop();
            } else {
                // append a fresh high power of the last variable
                let n = alg_p.nvars();
                let mut e: Exponent = std::iter::repeat_n(0, n).collect();
                e[n - 1] = 50;
                basis.push(alg_p.monomial(e, alg_p.field().one()));
            }
        }
        Fault::CorruptCoefficient(_) => {
            for g in basis.iter_mut() {
                if g.len() > 1 {
                    let (e, c) = g.terms()[1].clone();
                    let bump = alg_p.field().add(&c, &alg_p.field().from_i64(12345));
                    let delta = alg_p.field().sub(&bump, &c);
                    *g = alg_p.add(g, &alg_p.monomial(e, delta));
                    return;
                }
            }
        }
    }
}

/// Modular Gröbner basis of the left ideal generated by `gens`.
pub fn modular_gb(
    alg: &GAlgebra<Rationals>,
    gens: &[NcPoly<Rationals>],
    opts: &ModularOptions,
) -> Result<ModularResult> {
    let gens: Vec<NcPoly<Rationals>> = gens.iter().filter(|f| !f.is_zero()).cloned().collect();
    let finish = |elements: Vec<NcPoly<Rationals>>, status, primes, rounds| ModularResult {
        basis: GroebnerBasis {
            elements,
            ordering: alg.ordering().clone(),
            reduced: true,
            side: Side::Left,
        },
        status,
        primes,
        rounds,
    };
    if gens.is_empty() {
        return Ok(finish(Vec::new(), Status::VerifiedGraded, Vec::new(), 0));
    }
    let threads = opts.threads.max(1);
    let pool_rt = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let mut pool = PrimePool::new(alg, &gens, opts.seed, opts.prime_bits)?;
    let batch = batch_size(threads);
    // per-prime bases of the carried class, keyed by prime
    let mut kept: BTreeMap<u64, Vec<NcPoly<PrimeField>>> = BTreeMap::new();
    let mut order: Vec<u64> = Vec::new();
    let mut carried: Option<VoteClass> = None;

    for round in 0..opts.round_cap {
        let primes = pool.next_primes(batch)?;
        let results: Vec<Result<(GAlgebra<PrimeField>, GroebnerBasis<PrimeField>)>> = pool_rt
            .install(|| {
                primes
                    .par_iter()
                    .map(|&p| gb_mod_p(alg, &gens, p))
                    .collect()
            });
        let mut new_sigs = Vec::with_capacity(batch);
        for (pos, (p, res)) in primes.iter().zip(results).enumerate() {
            let (alg_p, gb) = res?;
            let mut elements = gb.elements;
            if round == 0 {
                for f in &opts.faults {
                    let at = match *f {
                        Fault::CorruptBasis(k) | Fault::CorruptCoefficient(k) => k,
                    };
                    if at == pos {
                        apply_fault(&alg_p, &mut elements, *f);
                    }
                }
            }
            let sig: Signature = elements
                .iter()
                .map(|g| g.leading_exponent().unwrap().clone())
                .collect();
            new_sigs.push((*p, sig));
            kept.insert(*p, elements);
            order.push(*p);
        }
        let class = majority_vote(carried.take(), &new_sigs);
        let members: HashSet<u64> = class.members.iter().copied().collect();
        kept.retain(|p, _| members.contains(p));
        order.retain(|p| members.contains(p));
        carried = Some(class);

        let bases: Vec<&[NcPoly<PrimeField>]> = order.iter().map(|p| kept[p].as_slice()).collect();
        let Some(lifted) = lift_candidate(alg, &order, &bases) else {
            continue;
        };
        let status = match opts.verify {
            VerifyLevel::None => Status::Lifting,
            VerifyLevel::PTest | VerifyLevel::Full => {
                let (ok, _) = p_test(alg, &gens, &lifted, &mut pool)?;
                if !ok {
                    continue;
                }
                if opts.verify == VerifyLevel::PTest {
                    Status::ProbablyCorrect
                } else {
                    match final_verify(alg, &gens, &lifted) {
                        Status::Failed => continue,
                        s => s,
                    }
                }
            }
        };
        return Ok(finish(lifted, status, order.clone(), round + 1));
    }
    Err(Error::RoundCapExceeded(opts.round_cap))
}

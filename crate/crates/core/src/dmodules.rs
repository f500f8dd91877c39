//! Weyl and shift algebras, and Bernstein–Sato polynomials by the
//! Briançon–Maisonobe elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arithmetic::{format_rational, Rational};
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::galgebra::{GAlgebra, Relation};
use crate::groebner::{left_gb, left_normal_form};
use crate::modular::{modular_gb, ModularOptions, Status};
use crate::orderings::{Block, OrderingSpec};
use crate::poly::{zero_exponent, Exponent, NcPoly};

/// The Weyl algebra `D_n` on `x1..xn, D1..Dn` with `Di xi = xi Di + 1`,
/// ordered by degrevlex.
pub fn weyl<F: Field>(field: F, n: usize) -> Result<GAlgebra<F>> {
    let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    weyl_named(field, &xs)
}

/// The Weyl algebra on the given position variables; the derivation of
/// `v` is named `Dv`.
pub fn weyl_named<F: Field>(field: F, xs: &[String]) -> Result<GAlgebra<F>> {
    let n = xs.len();
    if n == 0 {
        return Err(Error::Invalid("the Weyl algebra needs a variable".into()));
    }
    let mut names = xs.to_vec();
    names.extend(xs.iter().map(|v| format!("D{v}")));
    let rels = (0..n)
        .map(|i| Relation {
            i,
            j: n + i,
            c: field.one(),
            d: vec![(zero_exponent(2 * n), field.one())],
        })
        .collect();
    GAlgebra::new(field, names, rels, OrderingSpec::DegRevLex)
}

/// The shift algebra `S_r` on `s1..sr, t1..tr` with `tj sj = sj tj - tj`,
/// ordered by degrevlex.
pub fn shift<F: Field>(field: F, r: usize) -> Result<GAlgebra<F>> {
    let name = |v: &str, j: usize| {
        if r == 1 {
            v.to_string()
        } else {
            format!("{v}{j}")
        }
    };
    let s: Vec<String> = (1..=r).map(|j| name("s", j)).collect();
    let t: Vec<String> = (1..=r).map(|j| name("t", j)).collect();
    shift_named(field, &s, &t)
}

fn shift_named<F: Field>(field: F, s: &[String], t: &[String]) -> Result<GAlgebra<F>> {
    let r = s.len();
    if r == 0 || t.len() != r {
        return Err(Error::Invalid(
            "the shift algebra needs matching s and t".into(),
        ));
    }
    let mut names = s.to_vec();
    names.extend(t.iter().cloned());
    let rels = (0..r)
        .map(|j| {
            let mut e = zero_exponent(2 * r);
            e[r + j] = 1;
            Relation {
                i: j,
                j: r + j,
                c: field.one(),
                d: vec![(e, field.neg(&field.one()))],
            }
        })
        .collect();
    GAlgebra::new(field, names, rels, OrderingSpec::DegRevLex)
}

/// `A ⊗ B`: the variables of `A` then those of `B`, commuting across, with
/// the block ordering of the two orderings.
pub fn tensor<F: Field>(a: &GAlgebra<F>, b: &GAlgebra<F>) -> Result<GAlgebra<F>> {
    let (na, nb) = (a.nvars(), b.nvars());
    let spec = OrderingSpec::Block(vec![
        Block::new((0..na).collect(), a.ordering().clone()),
        Block::new((na..na + nb).collect(), b.ordering().clone()),
    ]);
    tensor_with_ordering(a, b, spec)
}

/// [`tensor`] with an explicit ordering on the combined variables.
pub fn tensor_with_ordering<F: Field>(
    a: &GAlgebra<F>,
    b: &GAlgebra<F>,
    spec: OrderingSpec,
) -> Result<GAlgebra<F>> {
    if a.field() != b.field() {
        return Err(Error::Invalid(
            "tensor factors live over different fields".into(),
        ));
    }
    let (na, nb) = (a.nvars(), b.nvars());
    let n = na + nb;
    let widen = |e: &[u32], shift: usize| -> Exponent {
        let mut out = zero_exponent(n);
        for (k, &x) in e.iter().enumerate() {
            out[k + shift] = x;
        }
        out
    };
    let mut rels = Vec::new();
    for r in a.relations() {
        rels.push(Relation {
            i: r.i,
            j: r.j,
            c: r.c,
            d: r.d.iter().map(|(e, c)| (widen(e, 0), c.clone())).collect(),
        });
    }
    for r in b.relations() {
        rels.push(Relation {
            i: r.i + na,
            j: r.j + na,
            c: r.c,
            d: r.d.iter().map(|(e, c)| (widen(e, na), c.clone())).collect(),
        });
    }
    let mut names = a.names().to_vec();
    names.extend(b.names().iter().cloned());
    let alg = GAlgebra::unchecked(a.field().clone(), names, rels, spec)?;
    alg.check_admissible()?;
    Ok(alg)
}

fn binomial(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

/// `(n-1)!!` for even `n`, zero for odd `n`.
fn g_weyl(n: u64) -> i64 {
    if n % 2 == 1 {
        return 0;
    }
    let mut acc = 1i64;
    let mut k = n as i64 - 1;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

fn stirling2(n: u64, k: u64) -> i64 {
    let (n, k) = (n as usize, k as usize);
    let mut row = vec![0i64; k + 1];
    row[0] = 1;
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = j as i64 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

/// `(x + D)^n` in the first Weyl algebra from the closed formula, without
/// multiplying in the algebra. `alg` has the variables `x, D` in this order.
pub fn oracle_weyl_power<F: Field>(alg: &GAlgebra<F>, n: u32) -> NcPoly<F> {
    let fd = alg.field();
    let n64 = n as u64;
    let mut terms: Vec<(Exponent, F::Elem)> = Vec::new();
    for k in 0..=n64 {
        terms.push((ex2(k, n64 - k), fd.from_i64(binomial(n64, k))));
    }
    if n >= 2 {
        for k in 0..=n64 - 2 {
            for j in 0..=(n64 - k - 2) {
                let c = binomial(n64, j) * binomial(n64 - j, k) * g_weyl(n64 - j - k);
                terms.push((ex2(k, j), fd.from_i64(c)));
            }
        }
    }
    alg.normalize(terms)
}

/// `(s + t)^n` in the first shift algebra from the closed formula.
/// `alg` has the variables `s, t` in this order.
pub fn oracle_shift_power<F: Field>(alg: &GAlgebra<F>, n: u32) -> NcPoly<F> {
    let fd = alg.field();
    let n64 = n as u64;
    let mut terms: Vec<(Exponent, F::Elem)> = Vec::new();
    for k in 0..=n64 {
        terms.push((ex2(k, n64 - k), fd.from_i64(binomial(n64, k))));
    }
    if n >= 1 {
        for k in 0..=n64 - 1 {
            for j in 0..=(n64 - k - 1) {
                let sign = if (n64 + k + j).is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                let c = sign * binomial(n64, k) * stirling2(n64 - k, j);
                terms.push((ex2(k, j), fd.from_i64(c)));
            }
        }
    }
    alg.normalize(terms)
}

fn ex2(a: u64, b: u64) -> Exponent {
    [a as u32, b as u32].into_iter().collect()
}

/// A commutative polynomial over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommPoly {
    pub nvars: usize,
    pub terms: Vec<(Exponent, Rational)>,
}

impl CommPoly {
    /// Merges equal exponents and drops zeros.
    pub fn new(nvars: usize, terms: Vec<(Exponent, Rational)>) -> Self {
        let mut terms = terms;
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Exponent, Rational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        CommPoly { nvars, terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0))
    }

    /// `∂f/∂x_i`.
    pub fn derivative(&self, i: usize) -> CommPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] > 0)
            .map(|(e, c)| {
                let mut d = e.clone();
                d[i] -= 1;
                (d, c * Rational::from_integer(BigInt::from(e[i])))
            })
            .collect();
        CommPoly::new(self.nvars, terms)
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                terms.push((e, ca * cb));
            }
        }
        CommPoly::new(self.nvars, terms)
    }

    fn embed(
        &self,
        alg: &GAlgebra<Rationals>,
        offset: usize,
        extra: Option<usize>,
    ) -> NcPoly<Rationals> {
        let n = alg.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut w = zero_exponent(n);
                for (k, &x) in e.iter().enumerate() {
                    w[offset + k] = x;
                }
                if let Some(v) = extra {
                    w[v] += 1;
                }
                (w, c.clone())
            })
            .collect();
        alg.normalize(terms)
    }
}

/// Univariate polynomial with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn one() -> Self {
        UniPoly::new(vec![Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `s - root`.
    pub fn linear(root: Rational) -> Self {
        UniPoly::new(vec![-root, Rational::one()])
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => UniPoly::new(self.coeffs.iter().map(|c| c / l).collect()),
        }
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::new(Vec::new());
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let lead = d.coeffs.last().unwrap();
        if r.len() < d.coeffs.len() {
            return (UniPoly::new(Vec::new()), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / lead;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            q[k] = c;
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * s + c)
    }

    /// Rational roots with multiplicity, ascending, when the polynomial
    /// splits into rational linear factors; `None` otherwise.
    pub fn rational_roots(&self) -> Option<Vec<Rational>> {
        let mut p = self.monic();
        let mut roots = Vec::new();
        while p.degree()? > 0 {
            let root = find_rational_root(&p)?;
            let (q, r) = p.div_rem(&UniPoly::linear(root.clone()));
            debug_assert!(r.is_zero());
            roots.push(root);
            p = q;
        }
        roots.sort();
        Some(roots)
    }

    /// `(s+1)*(s+5/6)` style when the polynomial splits, else the expanded
    /// form. A factor `s+1` comes first.
    pub fn factored(&self, var: &str) -> String {
        match self.rational_roots() {
            Some(roots) if !roots.is_empty() => {
                // s+1 first, then the other roots from zero downwards
                let minus_one = -Rational::one();
                let mut roots = roots;
                roots.sort_by(|a, b| (*a != minus_one).cmp(&(*b != minus_one)).then(b.cmp(a)));
                roots
                    .iter()
                    .map(|r| {
                        if r.is_zero() {
                            var.to_string()
                        } else if r.is_negative() {
                            format!("({var}+{})", format_rational(&-r))
                        } else {
                            format!("({var}-{})", format_rational(r))
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*")
            }
            _ => self.expanded(var),
        }
    }

    /// `s^2 + 3/2*s + 1/2`.
    pub fn expanded(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", format_rational(&abs)));
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.expanded("s"))
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

fn find_rational_root(p: &UniPoly) -> Option<Rational> {
    if p.coeffs[0].is_zero() {
        return Some(Rational::zero());
    }
    // clear denominators
    let l = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs.iter().map(|c| (c * &l).to_integer()).collect();
    let a0 = &ints[0];
    let an = ints.last().unwrap();
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [-1, 1] {
                let r = Rational::new(&num * sign, den.clone());
                if p.eval(&r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// Which engine computes the Gröbner bases inside a pipeline.
#[derive(Debug, Clone, Default)]
pub enum Engine {
    #[default]
    Direct,
    Modular(ModularOptions),
}

impl Engine {
    pub fn name(&self) -> &'static str {
        match self {
            Engine::Direct => "direct",
            Engine::Modular(_) => "modular",
        }
    }

    /// Reduced left basis, with the status of the computation.
    pub fn gb(
        &self,
        alg: &GAlgebra<Rationals>,
        gens: &[NcPoly<Rationals>],
    ) -> Result<(Vec<NcPoly<Rationals>>, Status)> {
        match self {
            Engine::Direct => Ok((left_gb(alg, gens).elements, Status::Direct)),
            Engine::Modular(opts) => {
                let r = modular_gb(alg, gens, opts)?;
                Ok((r.basis.elements, r.status))
            }
        }
    }
}

/// Weakest of two statuses.
pub fn combine_status(a: Status, b: Status) -> Status {
    fn rank(s: Status) -> u8 {
        match s {
            Status::Direct => 4,
            Status::VerifiedGraded => 3,
            Status::ProbablyCorrect => 2,
            Status::Lifting => 1,
            _ => 0,
        }
    }
    if rank(a) <= rank(b) {
        a
    } else {
        b
    }
}

/// The ambient algebra `D_n ⊗ S_r` and the Briançon–Maisonobe generators
/// `s_j + f_j t_j` and `D_i + sum_k (∂f_k/∂x_i) t_k`.
///
/// Variables are `x_1..x_n, D_1..D_n, s_1..s_r, t_1..t_r`; the ordering
/// is the block ordering `(dp on t, dp on the rest)`, which eliminates `t`.
#[derive(Debug)]
pub struct AnnihilatorSetup {
    pub f: Vec<CommPoly>,
    pub ambient: GAlgebra<Rationals>,
    pub generators: Vec<NcPoly<Rationals>>,
}

fn fresh(taken: &[String], want: String) -> String {
    let mut c = want;
    while taken.contains(&c) {
        c.push('_');
    }
    c
}

impl AnnihilatorSetup {
    pub fn new(xs: &[String], f: &[CommPoly]) -> Result<Self> {
        let n = xs.len();
        let r = f.len();
        if n == 0 || r == 0 {
            return Err(Error::Invalid(
                "need variables and at least one polynomial".into(),
            ));
        }
        if f.iter().any(|p| p.nvars != n || p.is_constant()) {
            return Err(Error::Invalid(
                "polynomials must be nonconstant in the given variables".into(),
            ));
        }
        let d = weyl_named(Rationals, xs)?;
        let mut taken = d.names().to_vec();
        let mut s_names = Vec::new();
        let mut t_names = Vec::new();
        for j in 0..r {
            let sfx = if r == 1 {
                String::new()
            } else {
                (j + 1).to_string()
            };
            let s = fresh(&taken, format!("s{sfx}"));
            taken.push(s.clone());
            s_names.push(s);
        }
        for j in 0..r {
            let sfx = if r == 1 {
                String::new()
            } else {
                (j + 1).to_string()
            };
            let t = fresh(&taken, format!("t{sfx}"));
            taken.push(t.clone());
            t_names.push(t);
        }
        let s = shift_named(Rationals, &s_names, &t_names)?;
        let m = 2 * n + 2 * r;
        let t_block: Vec<usize> = (2 * n + r..m).collect();
        let rest: Vec<usize> = (0..2 * n + r).collect();
        let ambient = tensor_with_ordering(&d, &s, OrderingSpec::block_dp(t_block, rest))?;
        let sv = |j: usize| 2 * n + j;
        let tv = |j: usize| 2 * n + r + j;
        let mut generators = Vec::with_capacity(n + r);
        for (j, fj) in f.iter().enumerate() {
            let g = ambient.add(&ambient.var(sv(j)), &fj.embed(&ambient, 0, Some(tv(j))));
            generators.push(g);
        }
        for i in 0..n {
            let mut g = ambient.var(n + i);
            for (k, fk) in f.iter().enumerate() {
                g = ambient.add(&g, &fk.derivative(i).embed(&ambient, 0, Some(tv(k))));
            }
            generators.push(g);
        }
        Ok(AnnihilatorSetup {
            f: f.to_vec(),
            ambient,
            generators,
        })
    }

    pub fn nx(&self) -> usize {
        self.f[0].nvars
    }

    pub fn r(&self) -> usize {
        self.f.len()
    }
}

/// Generators of `Ann(f^s)` in `D_n[s]`, as elements of the ambient algebra
/// free of `t`.
pub fn annihilator_fs(
    setup: &AnnihilatorSetup,
    engine: &Engine,
) -> Result<(Vec<NcPoly<Rationals>>, Status)> {
    let (gb, status) = engine.gb(&setup.ambient, &setup.generators)?;
    let keep: Vec<usize> = (0..2 * setup.nx() + setup.r()).collect();
    Ok((
        gb.into_iter().filter(|g| g.involves_only(&keep)).collect(),
        status,
    ))
}

/// The algebra `D_n[s_1..s_r]` on the first `2n + r` ambient variables,
/// with the given ordering.
fn xds_algebra(setup: &AnnihilatorSetup, spec: OrderingSpec) -> Result<GAlgebra<Rationals>> {
    let n = setup.nx();
    let names: Vec<String> = setup.ambient.names()[..2 * n + setup.r()].to_vec();
    let d = weyl_named(Rationals, &names[..n])?;
    let s = GAlgebra::commutative(Rationals, names[2 * n..].to_vec(), OrderingSpec::DegRevLex)?;
    tensor_with_ordering(&d, &s, spec)
}

fn drop_t(alg: &GAlgebra<Rationals>, f: &NcPoly<Rationals>) -> NcPoly<Rationals> {
    let m = alg.nvars();
    alg.normalize(
        f.terms()
            .iter()
            .map(|(e, c)| (e[..m].iter().copied().collect(), c.clone()))
            .collect(),
    )
}

/// Generators of `(Ann(f^s) + <extra>) ∩ Q[s]`, as polynomials in the `s`
/// variables (exponent vectors of length `r`).
///
/// With one `s` the intersection is principal and `s` is central, so its
/// generator is the minimal polynomial of `s` modulo a degrevlex basis.
/// Several `s` variables go through the block ordering eliminating `x` and
/// `D`.
fn s_ideal(
    setup: &AnnihilatorSetup,
    extra: &[CommPoly],
    engine: &Engine,
) -> Result<(Vec<NcPoly<Rationals>>, GAlgebra<Rationals>, Status)> {
    let n = setup.nx();
    let r = setup.r();
    let (ann, st1) = annihilator_fs(setup, engine)?;
    let spec = if r == 1 {
        OrderingSpec::DegRevLex
    } else {
        OrderingSpec::block_dp((0..2 * n).collect(), (2 * n..2 * n + r).collect())
    };
    let xds = xds_algebra(setup, spec)?;
    let mut gens: Vec<NcPoly<Rationals>> = ann.iter().map(|g| drop_t(&xds, g)).collect();
    gens.extend(extra.iter().map(|p| p.embed(&xds, 0, None)));
    let (gb, st2) = engine.gb(&xds, &gens)?;
    let s_ring = GAlgebra::commutative(
        Rationals,
        xds.names()[2 * n..].to_vec(),
        OrderingSpec::DegRevLex,
    )?;
    let out = if r == 1 {
        let b = minimal_polynomial(&xds, &gb, 2 * n)?;
        let terms = b
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (std::iter::once(k as u32).collect(), c.clone()))
            .collect();
        vec![s_ring.normalize(terms)]
    } else {
        let keep: Vec<usize> = (2 * n..2 * n + r).collect();
        let found: Vec<NcPoly<Rationals>> = gb
            .iter()
            .filter(|g| g.involves_only(&keep))
            .map(|g| {
                s_ring.normalize(
                    g.terms()
                        .iter()
                        .map(|(e, c)| (e[2 * n..].iter().copied().collect(), c.clone()))
                        .collect(),
                )
            })
            .collect();
        left_gb(&s_ring, &found).elements
    };
    Ok((out, s_ring, combine_status(st1, st2)))
}

/// Degree cap for [`minimal_polynomial`].
const MAX_MINPOLY_DEGREE: usize = 512;

/// The monic generator of `I ∩ Q[x_v]` for a central variable `x_v`,
/// found from the first linear dependency among the normal forms of
/// `1, x_v, x_v^2, ...` modulo the left Gröbner basis `gb` of `I`.
fn minimal_polynomial(
    alg: &GAlgebra<Rationals>,
    gb: &[NcPoly<Rationals>],
    v: usize,
) -> Result<UniPoly> {
    let fd = alg.field();
    // echelon rows: pivot (leading exponent), vector, combination of powers
    let mut rows: Vec<(NcPoly<Rationals>, Vec<Rational>)> = Vec::new();
    let mut power = left_normal_form(alg, &alg.one(), gb);
    let sv = alg.var(v);
    for k in 0..=MAX_MINPOLY_DEGREE {
        let mut vec = power.clone();
        let mut comb = vec![Rational::zero(); k + 1];
        comb[k] = Rational::one();
        loop {
            let hit = vec.terms().iter().find_map(|(e, c)| {
                rows.iter()
                    .position(|(row, _)| row.leading_exponent() == Some(e))
                    .map(|i| (i, c.clone()))
            });
            let Some((i, c)) = hit else { break };
            let (row, rc) = &rows[i];
            let s = fd.div(&c, &row.terms()[0].1);
            vec = alg.add_scaled(&vec, row, &fd.neg(&s));
            for (j, x) in rc.iter().enumerate() {
                comb[j] -= &s * x;
            }
        }
        if vec.is_zero() {
            return Ok(UniPoly::new(comb).monic());
        }
        rows.push((vec, comb));
        power = left_normal_form(alg, &alg.mul(&sv, &power), gb);
    }
    Err(Error::Internal(format!(
        "no relation of degree at most {MAX_MINPOLY_DEGREE} for {}",
        alg.names()[v]
    )))
}

fn product(f: &[CommPoly]) -> CommPoly {
    let mut p = f[0].clone();
    for q in &f[1..] {
        p = p.mul(q);
    }
    p
}

/// The Bernstein–Sato ideal of `f_1, ..., f_r` in `Q[s_1..s_r]`, as its
/// reduced Gröbner basis.
pub fn bs_ideal(
    setup: &AnnihilatorSetup,
    engine: &Engine,
) -> Result<(Vec<NcPoly<Rationals>>, GAlgebra<Rationals>, Status)> {
    s_ideal(setup, &[product(&setup.f)], engine)
}

fn univariate(g: &[NcPoly<Rationals>]) -> UniPoly {
    g.iter()
        .map(|p| {
            let deg = p
                .terms()
                .iter()
                .map(|(e, _)| e[0] as usize)
                .max()
                .unwrap_or(0);
            let mut c = vec![Rational::zero(); deg + 1];
            for (e, q) in p.terms() {
                c[e[0] as usize] += q;
            }
            UniPoly::new(c)
        })
        .fold(UniPoly::new(Vec::new()), |acc, p| acc.gcd(&p))
}

/// The Bernstein–Sato polynomial of a single nonconstant `f`.
pub fn bs_polynomial(xs: &[String], f: &CommPoly, engine: &Engine) -> Result<(UniPoly, Status)> {
    let setup = AnnihilatorSetup::new(xs, std::slice::from_ref(f))?;
    let (g, _, st) = bs_ideal(&setup, engine)?;
    let b = univariate(&g);
    if b.is_zero() {
        return Err(Error::Internal("Bernstein–Sato ideal is zero".into()));
    }
    Ok((b, st))
}

/// `b_f / (s + 1)`, from the ideal augmented by the partial derivatives.
pub fn reduced_bs_polynomial(
    xs: &[String],
    f: &CommPoly,
    engine: &Engine,
) -> Result<(UniPoly, Status)> {
    let setup = AnnihilatorSetup::new(xs, std::slice::from_ref(f))?;
    let mut extra = vec![f.clone()];
    extra.extend(
        (0..f.nvars)
            .map(|i| f.derivative(i))
            .filter(|d| !d.is_zero()),
    );
    let (g, _, st) = s_ideal(&setup, &extra, engine)?;
    let b = univariate(&g);
    if b.is_zero() {
        return Err(Error::Internal(
            "reduced Bernstein–Sato ideal is zero".into(),
        ));
    }
    Ok((b, st))
}

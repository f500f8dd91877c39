//! Independent oracles and generators shared by the integration tests.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ncmodgb::arithmetic::Rational;
use ncmodgb::field::{Field, Rationals};
use ncmodgb::galgebra::GAlgebra;
use ncmodgb::poly::{Exponent, NcPoly};

pub fn q(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

pub fn ex(v: &[u32]) -> Exponent {
    v.iter().copied().collect()
}

pub fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// A commutative polynomial as a plain map from exponents to coefficients.
pub type Dense = BTreeMap<Vec<u32>, Rational>;

/// Monomial orderings written out from their textbook definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TextbookOrder {
    Lex,
    DegRevLex,
}

impl TextbookOrder {
    pub fn cmp(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            TextbookOrder::Lex => a.cmp(b),
            TextbookOrder::DegRevLex => {
                let da: u64 = a.iter().map(|&x| x as u64).sum();
                let db: u64 = b.iter().map(|&x| x as u64).sum();
                if da != db {
                    return da.cmp(&db);
                }
                for k in (0..a.len()).rev() {
                    if a[k] != b[k] {
                        // smaller last exponent wins
                        return b[k].cmp(&a[k]);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

fn lead(f: &Dense, o: TextbookOrder) -> Option<(Vec<u32>, Rational)> {
    f.iter()
        .max_by(|a, b| o.cmp(a.0, b.0))
        .map(|(e, c)| (e.clone(), c.clone()))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn sub_scaled_shift(f: &mut Dense, g: &Dense, c: &Rational, shift: &[u32]) {
    for (e, gc) in g {
        let m: Vec<u32> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
        let v = f.entry(m.clone()).or_insert_with(Rational::zero);
        *v -= c * gc;
        if v.is_zero() {
            f.remove(&m);
        }
    }
}

/// Full reduction of `f` by `g`, taking the first divisor in list order.
pub fn reduce(f: &Dense, g: &[Dense], o: TextbookOrder) -> Dense {
    let mut p = f.clone();
    let mut r = Dense::new();
    while let Some((e, c)) = lead(&p, o) {
        let hit = g.iter().find_map(|h| {
            let (le, lc) = lead(h, o)?;
            divides(&le, &e).then_some((h, le, lc))
        });
        match hit {
            Some((h, le, lc)) => {
                let shift: Vec<u32> = e.iter().zip(&le).map(|(a, b)| a - b).collect();
                sub_scaled_shift(&mut p, h, &(c / lc), &shift);
            }
            None => {
                p.remove(&e);
                r.insert(e, c);
            }
        }
    }
    r
}

fn spoly(f: &Dense, g: &Dense, o: TextbookOrder) -> Dense {
    let (ef, cf) = lead(f, o).unwrap();
    let (eg, cg) = lead(g, o).unwrap();
    let l: Vec<u32> = ef.iter().zip(&eg).map(|(a, b)| *a.max(b)).collect();
    let mut s = Dense::new();
    let sf: Vec<u32> = l.iter().zip(&ef).map(|(a, b)| a - b).collect();
    let sg: Vec<u32> = l.iter().zip(&eg).map(|(a, b)| a - b).collect();
    sub_scaled_shift(&mut s, f, &-(cf.recip()), &sf);
    sub_scaled_shift(&mut s, g, &cg.recip(), &sg);
    s
}

/// Reduced Gröbner basis by the unoptimized Buchberger algorithm: every
/// pair is reduced, then the basis is minimized, interreduced, made monic
/// and sorted ascending by leading exponent.
pub fn textbook_buchberger(gens: &[Dense], o: TextbookOrder) -> Vec<Dense> {
    let mut g: Vec<Dense> = gens.iter().filter(|f| !f.is_empty()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let h = reduce(&spoly(&g[i], &g[j], o), &g, o);
        if !h.is_empty() {
            let k = g.len();
            g.push(h);
            for i in 0..k {
                pairs.push((i, k));
            }
        }
    }
    // minimize
    let mut keep: Vec<Dense> = Vec::new();
    for (k, f) in g.iter().enumerate() {
        let lf = lead(f, o).unwrap().0;
        let redundant = g.iter().enumerate().any(|(m, h)| {
            let lh = lead(h, o).unwrap().0;
            m != k && divides(&lh, &lf) && (lh != lf || m < k)
        });
        if !redundant {
            keep.push(f.clone());
        }
    }
    let mut out: Vec<Dense> = Vec::new();
    for k in 0..keep.len() {
        let others: Vec<Dense> = keep
            .iter()
            .enumerate()
            .filter(|(m, _)| *m != k)
            .map(|(_, h)| h.clone())
            .collect();
        let (le, lc) = lead(&keep[k], o).unwrap();
        let mut tail = keep[k].clone();
        tail.remove(&le);
        let mut r = reduce(&tail, &others, o);
        r.insert(le, lc.clone());
        let inv = lc.recip();
        for v in r.values_mut() {
            *v *= &inv;
        }
        out.push(r);
    }
    out.sort_by(|a, b| o.cmp(&lead(a, o).unwrap().0, &lead(b, o).unwrap().0));
    out
}

pub fn to_dense(f: &NcPoly<Rationals>) -> Dense {
    f.terms()
        .iter()
        .map(|(e, c)| (e.to_vec(), c.clone()))
        .collect()
}

pub fn from_dense(alg: &GAlgebra<Rationals>, f: &Dense) -> NcPoly<Rationals> {
    alg.normalize(f.iter().map(|(e, c)| (ex(e), c.clone())).collect())
}

/// A random nonzero polynomial with small integer coefficients, at most
/// `max_terms` terms and total degree at most `max_deg`.
pub fn random_dense(rng: &mut ChaCha8Rng, nvars: usize, max_deg: u32, max_terms: usize) -> Dense {
    loop {
        let mut f = Dense::new();
        for _ in 0..rng.gen_range(1..=max_terms) {
            let deg = rng.gen_range(0..=max_deg);
            let mut e = vec![0u32; nvars];
            for _ in 0..deg {
                e[rng.gen_range(0..nvars)] += 1;
            }
            let c = rng.gen_range(-5i64..=5);
            if c != 0 {
                *f.entry(e).or_insert_with(Rational::zero) += q(c, 1);
            }
        }
        f.retain(|_, c| !c.is_zero());
        if !f.is_empty() {
            return f;
        }
    }
}

/// `count` random ideals with up to three generators of degree at most 3.
pub fn random_ideals(seed: u64, count: usize) -> Vec<(usize, Vec<Dense>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=3);
            let k = rng.gen_range(1..=3);
            (n, (0..k).map(|_| random_dense(&mut rng, n, 3, 4)).collect())
        })
        .collect()
}

/// A random homogeneous polynomial of total degree `deg`.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, nvars: usize, deg: u32, max_terms: usize) -> Dense {
    loop {
        let mut f = Dense::new();
        for _ in 0..rng.gen_range(1..=max_terms) {
            let mut e = vec![0u32; nvars];
            for _ in 0..deg {
                e[rng.gen_range(0..nvars)] += 1;
            }
            let c = rng.gen_range(-7i64..=7);
            if c != 0 {
                *f.entry(e).or_insert_with(Rational::zero) += q(c, 1);
            }
        }
        f.retain(|_, c| !c.is_zero());
        if !f.is_empty() {
            return f;
        }
    }
}

fn binom(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `(x + D)^n` in the first Weyl algebra, exponents `(x, D)`:
/// the normally ordered binomial plus the terms weighted by double
/// factorials of even order.
pub fn weyl_power_closed_form(n: u64) -> BTreeMap<(u32, u32), BigInt> {
    let g = |m: u64| -> BigInt {
        if m % 2 == 1 {
            return BigInt::zero();
        }
        let mut r = BigInt::one();
        let mut k = m.saturating_sub(1);
        while k > 1 {
            r *= k;
            k -= 2;
        }
        r
    };
    let mut out = BTreeMap::new();
    for k in 0..=n {
        for j in 0..=n - k {
            let mut c = binom(n, j) * binom(n - j, k) * g(n - j - k);
            if k + j == n {
                c = binom(n, k);
            }
            if !c.is_zero() {
                *out.entry((k as u32, j as u32)).or_insert_with(BigInt::zero) += c;
            }
        }
    }
    out
}

/// Stirling numbers of the second kind from the explicit alternating sum.
pub fn stirling2(n: u64, k: u64) -> BigInt {
    let mut s = BigInt::zero();
    for i in 0..=k {
        let term = binom(k, i) * BigInt::from(k - i).pow(n as u32);
        if i % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    let mut fact = BigInt::one();
    for i in 2..=k {
        fact *= i;
    }
    s / fact
}

/// `(s + t)^n` in the first shift algebra, exponents `(s, t)`.
pub fn shift_power_closed_form(n: u64) -> BTreeMap<(u32, u32), BigInt> {
    let mut out = BTreeMap::new();
    for k in 0..=n {
        for j in 0..=n - k {
            let c = if k + j == n {
                binom(n, k)
            } else {
                let v = binom(n, k) * stirling2(n - k, j);
                if (n + k + j).is_multiple_of(2) {
                    v
                } else {
                    -v
                }
            };
            if !c.is_zero() {
                out.insert((k as u32, j as u32), c);
            }
        }
    }
    out
}

/// Converts a closed form to a polynomial of a two-variable algebra.
pub fn closed_form_poly<F: Field>(
    alg: &GAlgebra<F>,
    form: &BTreeMap<(u32, u32), BigInt>,
) -> NcPoly<F> {
    let fd = alg.field();
    alg.normalize(
        form.iter()
            .map(|(&(a, b), c)| {
                let c = fd
                    .from_rational(&Rational::from_integer(c.clone()))
                    .unwrap();
                (ex(&[a, b]), c)
            })
            .collect(),
    )
}

/// `dim I_d` for the monomial ideal spanned by `leads`, counted over the
/// box of all exponents bounded by `d` and filtered by weighted degree.
pub fn staircase_count(w: &[u32], leads: &[Exponent], d: u64) -> u64 {
    let n = w.len();
    let bound: Vec<u64> = w.iter().map(|&x| d / x as u64).collect();
    let mut e = vec![0u64; n];
    let mut count = 0;
    loop {
        let deg: u64 = e.iter().zip(w).map(|(a, &b)| a * b as u64).sum();
        if deg == d
            && leads
                .iter()
                .any(|l| l.iter().zip(&e).all(|(&a, &b)| a as u64 <= b))
        {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return count;
            }
            if e[k] < bound[k] {
                e[k] += 1;
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

/// Parses a polynomial of `alg` in the usual infix syntax; products are
/// taken in the written order.
pub fn parse(alg: &GAlgebra<Rationals>, text: &str) -> NcPoly<Rationals> {
    let toks = tokenize(text);
    let mut p = Parser { alg, toks, at: 0 };
    let f = p.expr();
    assert!(p.at == p.toks.len(), "trailing input in `{text}`");
    f
}

#[derive(Debug, Clone, PartialEq)]
enum Tk {
    Num(BigInt),
    Id(String),
    Op(char),
}

fn tokenize(s: &str) -> Vec<Tk> {
    let c: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < c.len() {
        let ch = c[k];
        if ch.is_whitespace() {
            k += 1;
        } else if ch.is_ascii_digit() {
            let st = k;
            while k < c.len() && c[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = c[st..k].iter().collect();
            out.push(Tk::Num(digits.parse().unwrap()));
        } else if ch.is_alphabetic() || ch == '_' {
            let st = k;
            while k < c.len() && (c[k].is_alphanumeric() || c[k] == '_') {
                k += 1;
            }
            out.push(Tk::Id(c[st..k].iter().collect()));
        } else {
            out.push(Tk::Op(ch));
            k += 1;
        }
    }
    out
}

struct Parser<'a> {
    alg: &'a GAlgebra<Rationals>,
    toks: Vec<Tk>,
    at: usize,
}

impl Parser<'_> {
    fn eat(&mut self, op: char) -> bool {
        if self.toks.get(self.at) == Some(&Tk::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> NcPoly<Rationals> {
        let mut acc = if self.eat('-') {
            self.alg.neg(&self.term())
        } else {
            self.term()
        };
        loop {
            if self.eat('+') {
                acc = self.alg.add(&acc, &self.term());
            } else if self.eat('-') {
                acc = self.alg.sub(&acc, &self.term());
            } else {
                return acc;
            }
        }
    }

    fn term(&mut self) -> NcPoly<Rationals> {
        let mut acc = self.power();
        while self.eat('*') {
            acc = self.alg.mul(&acc, &self.power());
        }
        acc
    }

    fn power(&mut self) -> NcPoly<Rationals> {
        let base = self.atom();
        if self.eat('^') {
            match self.toks.get(self.at).cloned() {
                Some(Tk::Num(n)) => {
                    self.at += 1;
                    self.alg.pow(&base, u32::try_from(n).unwrap())
                }
                t => panic!("bad exponent {t:?}"),
            }
        } else {
            base
        }
    }

    fn atom(&mut self) -> NcPoly<Rationals> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        match t {
            Some(Tk::Num(n)) => {
                let mut v = Rational::from_integer(n);
                if self.eat('/') {
                    match self.toks.get(self.at).cloned() {
                        Some(Tk::Num(d)) => {
                            self.at += 1;
                            v /= Rational::from_integer(d);
                        }
                        t => panic!("bad denominator {t:?}"),
                    }
                }
                self.alg.constant(v)
            }
            Some(Tk::Id(name)) => {
                let i = self
                    .alg
                    .var_index(&name)
                    .unwrap_or_else(|| panic!("unknown variable {name}"));
                self.alg.var(i)
            }
            Some(Tk::Op('(')) => {
                let e = self.expr();
                assert!(self.eat(')'), "missing )");
                e
            }
            t => panic!("unexpected token {t:?}"),
        }
    }
}

/// One instance of the modular-versus-direct suite.
pub struct SuiteCase {
    pub name: String,
    pub alg: GAlgebra<Rationals>,
    pub gens: Vec<NcPoly<Rationals>>,
    pub graded: bool,
}

/// The quasi-commutative algebra with `x_j x_i = c x_i x_j` for all
/// `i < j`, ordered by degrevlex.
pub fn quasi_commutative(vars: &[&str], c: i64) -> GAlgebra<Rationals> {
    let n = vars.len();
    let mut rels = Vec::new();
    for j in 0..n {
        for i in 0..j {
            rels.push(ncmodgb::galgebra::relation(i, j, c, vec![]));
        }
    }
    GAlgebra::new(
        Rationals,
        names(vars),
        rels,
        ncmodgb::orderings::OrderingSpec::DegRevLex,
    )
    .unwrap()
}

/// Homogenized cyclic(4) with homogenizing variable `h`.
pub const CYCLIC4_H: [&str; 4] = [
    "a + b + c + d",
    "a*b + b*c + c*d + a*d",
    "a*b*c + b*c*d + a*c*d + a*b*d",
    "a*b*c*d - h^4",
];

/// Homogenized katsura(4) on `u0..u4` with homogenizing variable `h`.
pub const KATSURA4_H: [&str; 5] = [
    "u0 + 2*u1 + 2*u2 + 2*u3 + 2*u4 - h",
    "u0^2 + 2*u1^2 + 2*u2^2 + 2*u3^2 + 2*u4^2 - u0*h",
    "2*u0*u1 + 2*u1*u2 + 2*u2*u3 + 2*u3*u4 - u1*h",
    "2*u0*u2 + u1^2 + 2*u1*u3 + 2*u2*u4 - u2*h",
    "2*u0*u3 + 2*u1*u2 + 2*u1*u4 - u3*h",
];

/// The fixed suite: Weyl `D_1` and `D_2`, shift `S_1`, `D_1 ⊗ S_1` and the
/// quasi-commutative algebra with `c = 2`.
pub fn modular_suite() -> Vec<SuiteCase> {
    use ncmodgb::dmodules::{shift, tensor, weyl};
    let d1 = || weyl(Rationals, 1).unwrap();
    let d2 = || weyl(Rationals, 2).unwrap();
    let s1 = || shift(Rationals, 1).unwrap();
    let ds = || tensor(&weyl(Rationals, 1).unwrap(), &shift(Rationals, 1).unwrap()).unwrap();
    let qc3 = || quasi_commutative(&["x", "y", "z"], 2);
    let mut specs: Vec<(&str, GAlgebra<Rationals>, Vec<&str>)> = vec![
        ("D1 airy", d1(), vec!["Dx1^2 - x1"]),
        ("D1 bessel", d1(), vec!["x1^2*Dx1^2 + x1*Dx1 + x1^2 - 4"]),
        ("D1 power", d1(), vec!["x1*Dx1 - 3", "x1^4"]),
        ("D1 mixed", d1(), vec!["x1^2*Dx1 + 2*x1", "Dx1^3 + x1"]),
        (
            "D1 rational",
            d1(),
            vec!["2*x1^2*Dx1 - 3*x1 + 1/2", "x1^3*Dx1^2"],
        ),
        (
            "D2 cusp",
            d2(),
            vec!["3*x1^2*Dx2 + 2*x2*Dx1", "2*x1*Dx1 + 3*x2*Dx2 + 6"],
        ),
        ("D2 euler", d2(), vec!["x1*Dx1 + x2*Dx2 - 2", "x1^2 - x2^2"]),
        (
            "D2 rotation",
            d2(),
            vec!["x1*Dx2 - x2*Dx1", "x1*Dx1 + x2*Dx2 + 1"],
        ),
        ("D2 gkz", d2(), vec!["Dx1*Dx2 - 1", "x1*Dx1 - x2*Dx2"]),
        ("S1 quadratic", s1(), vec!["t^2 - s", "s^2 - 2*t"]),
        ("S1 product", s1(), vec!["s*t + t - 3", "t^3 - s"]),
        ("S1 ratio", s1(), vec!["2*s*t^2 + 3*t - 1/3", "s^2*t - 5"]),
        ("D1xS1 annihilator", ds(), vec!["x1*Dx1 - s", "s*t - x1"]),
        (
            "D1xS1 mixed",
            ds(),
            vec!["Dx1*t - s", "x1^2 - t", "s^2 + Dx1"],
        ),
        ("D1xS1 shift", ds(), vec!["t*x1 - 2", "s + x1*Dx1 + 1"]),
        (
            "QC3 quadrics",
            qc3(),
            vec!["x*y + y*z", "x^2 - z^2", "y^2 + 2*x*z"],
        ),
        ("QC3 cubics", qc3(), vec!["x^2*y - 3*z^3", "x*y*z + y^3"]),
        ("QC3 linear", qc3(), vec!["x + y - z", "x*y - 2*z^2"]),
        (
            "QC3 mixed",
            qc3(),
            vec!["x*z + y^2", "y*z^2 - x^3", "x^2*y + 4*z^3"],
        ),
    ];
    let cyc = quasi_commutative(&["a", "b", "c", "d", "h"], 2);
    specs.push(("QC cyclic(4)^h", cyc, CYCLIC4_H.to_vec()));
    let kat = quasi_commutative(&["u0", "u1", "u2", "u3", "u4", "h"], 2);
    specs.push(("QC katsura(4)^h", kat, KATSURA4_H.to_vec()));
    specs
        .into_iter()
        .map(|(name, alg, gens)| {
            let gens: Vec<NcPoly<Rationals>> = gens.iter().map(|g| parse(&alg, g)).collect();
            let graded = name.starts_with("QC");
            SuiteCase {
                name: name.to_string(),
                alg,
                gens,
                graded,
            }
        })
        .collect()
}

/// A commutative polynomial in `vars` from infix text.
pub fn comm_poly(vars: &[&str], text: &str) -> ncmodgb::dmodules::CommPoly {
    let ring = GAlgebra::commutative(
        Rationals,
        names(vars),
        ncmodgb::orderings::OrderingSpec::DegRevLex,
    )
    .unwrap();
    let f = parse(&ring, text);
    ncmodgb::dmodules::CommPoly::new(vars.len(), f.terms().to_vec())
}

/// `(s + 1) * prod (s + i/p + j/q)` over `0 < i < p`, `0 < j < q`: the
/// Bernstein–Sato polynomial of `x^p + y^q` for coprime `p, q`.
pub fn quasi_homogeneous_bs(p: i64, qq: i64) -> ncmodgb::dmodules::UniPoly {
    use ncmodgb::dmodules::UniPoly;
    let mut b = UniPoly::linear(q(-1, 1));
    for i in 1..p {
        for j in 1..qq {
            b = b.mul(&UniPoly::linear(-(q(i, p) + q(j, qq))));
        }
    }
    b
}

/// Random graded ideals in the quasi-commutative algebra on four
/// variables, each with one deliberately bad prime `p`: the generators
/// include `f_1 + p * m` for a monomial `m` outside the ideal of the rest.
pub fn hilbert_instances(count: usize) -> Vec<(GAlgebra<Rationals>, Vec<NcPoly<Rationals>>, u64)> {
    let alg = quasi_commutative(&["x", "y", "z", "w"], 2);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut out = Vec::new();
    while out.len() < count {
        let mut gens: Vec<NcPoly<Rationals>> = (0..rng.gen_range(2..=3))
            .map(|_| {
                let d = rng.gen_range(2..=3);
                from_dense(&alg, &random_homogeneous(&mut rng, 4, d, 3))
            })
            .collect();
        let base = ncmodgb::groebner::left_gb(&alg, &gens).elements;
        let d = gens[0].weighted_degree(&[1; 4]).unwrap() as u32;
        let m = from_dense(&alg, &random_homogeneous(&mut rng, 4, d, 1));
        let m = alg.monic(&m);
        if ncmodgb::groebner::left_normal_form(&alg, &m, &base).is_zero() {
            continue;
        }
        let bad = [10_007u64, 10_009, 10_037, 10_039][out.len() % 4];
        let p = alg.constant(q(bad as i64, 1));
        gens.push(alg.add(&gens[0], &alg.mul(&p, &m)));
        out.push((quasi_commutative(&["x", "y", "z", "w"], 2), gens, bad));
    }
    out
}

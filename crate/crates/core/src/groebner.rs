//! Left normal forms, S-polynomials and Buchberger's algorithm, plus right
//! and two-sided bases through the opposite and enveloping algebras.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::galgebra::{GAlgebra, Relation};
use crate::orderings::{elimination_weight, Block, OrderingSpec};
use crate::poly::{divides, exp_lcm, exp_sub, total_degree, Exponent, NcPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "twosided",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            "twosided" | "two-sided" => Ok(Side::TwoSided),
            _ => Err(Error::Invalid(format!("unknown side `{s}`"))),
        }
    }
}

/// A Gröbner basis of a left, right or two-sided ideal.
///
/// Two-sided bases are also left bases of the same ideal. Right bases are
/// right bases: membership is decided in the opposite algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    pub elements: Vec<NcPoly<F>>,
    pub ordering: OrderingSpec,
    pub reduced: bool,
    pub side: Side,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_exponents(&self) -> Vec<Exponent> {
        self.elements
            .iter()
            .filter_map(|g| g.leading_exponent().cloned())
            .collect()
    }

    /// `true` when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }
}

/// Result of a left division `f = sum q_k * g_k + remainder`.
#[derive(Debug, Clone)]
pub struct Division<F: Field> {
    pub remainder: NcPoly<F>,
    pub quotients: Vec<NcPoly<F>>,
}

/// The shortest element of `g` whose leading exponent divides `e`; ties go
/// to the earliest.
fn find_divisor<F: Field>(e: &[u32], g: &[NcPoly<F>]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, h) in g.iter().enumerate() {
        if h.leading_exponent().is_some_and(|l| divides(l, e))
            && best.is_none_or(|b| h.len() < g[b].len())
        {
            best = Some(k);
        }
    }
    best
}

/// Quotient terms per divisor, as collected during a division.
type QuotientTerms<F> = Vec<Vec<(Exponent, <F as Field>::Elem)>>;

fn reduce_impl<F: Field>(
    alg: &GAlgebra<F>,
    f: &NcPoly<F>,
    g: &[NcPoly<F>],
    mut record: Option<&mut QuotientTerms<F>>,
    mut touched: Option<&mut BTreeSet<Exponent>>,
) -> NcPoly<F> {
    let fd = alg.field();
    let mut p = f.clone();
    let mut rem: Vec<(Exponent, F::Elem)> = Vec::new();
    while let Some((e, c)) = p.terms.first().cloned() {
        if let Some(t) = touched.as_deref_mut() {
            t.extend(p.support().cloned());
        }
        match find_divisor(&e, g) {
            Some(k) => {
                let lg = g[k].leading_exponent().unwrap();
                let gamma = exp_sub(&e, lg);
                let m = alg.mul_term_left(&gamma, &fd.one(), &g[k]);
                let s = fd.div(&c, &m.terms[0].1);
                if let Some(q) = record.as_deref_mut() {
                    q[k].push((gamma, s.clone()));
                }
                p = alg.add_scaled(&p, &m, &fd.neg(&s));
            }
            None => {
                let t = p.terms.remove(0);
                rem.push(t);
            }
        }
    }
    NcPoly::from_sorted(rem)
}

/// Left normal form with full tail reduction. Each step uses the shortest
/// element of `g` whose leading exponent divides the current term.
pub fn left_normal_form<F: Field>(alg: &GAlgebra<F>, f: &NcPoly<F>, g: &[NcPoly<F>]) -> NcPoly<F> {
    reduce_impl(alg, f, g, None, None)
}

/// Left division recording the quotients.
pub fn left_division<F: Field>(alg: &GAlgebra<F>, f: &NcPoly<F>, g: &[NcPoly<F>]) -> Division<F> {
    let mut q = vec![Vec::new(); g.len()];
    let remainder = reduce_impl(alg, f, g, Some(&mut q), None);
    Division {
        remainder,
        quotients: q.into_iter().map(|t| alg.normalize(t)).collect(),
    }
}

/// Left S-polynomial of two nonzero polynomials.
pub fn left_spoly<F: Field>(alg: &GAlgebra<F>, f: &NcPoly<F>, g: &NcPoly<F>) -> NcPoly<F> {
    let fd = alg.field();
    let (ef, eg) = match (f.leading_exponent(), g.leading_exponent()) {
        (Some(a), Some(b)) => (a, b),
        _ => return NcPoly::zero(),
    };
    let gamma = exp_lcm(ef, eg);
    let mf = alg.mul_term_left(&exp_sub(&gamma, ef), &fd.one(), f);
    let mg = alg.mul_term_left(&exp_sub(&gamma, eg), &fd.one(), g);
    let mf = alg.monic(&mf);
    let mg = alg.monic(&mg);
    alg.sub(&mf, &mg)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exponent,
    sugar: u64,
}

/// Critical pairs, popped by the sugar strategy (smallest sugar, then
/// smallest lcm, then index).
struct PairQueue {
    pairs: Vec<Pair>,
}

impl PairQueue {
    fn pop<F: Field>(&mut self, alg: &GAlgebra<F>) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = alg.order();
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let o = a
                .sugar
                .cmp(&b.sugar)
                .then_with(|| order.cmp(&a.lcm, &b.lcm))
                .then((a.j, a.i).cmp(&(b.j, b.i)));
            if o == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    /// Installs the pairs of a new element `t` with the Gebauer-Möller
    /// criteria built from the chain criterion (no product criterion).
    /// Elements in `active` whose leads `t` divides are retired.
    fn update(&mut self, leads: &[Exponent], sugar: &[u64], active: &mut [bool], t: usize) {
        let et = &leads[t];
        self.pairs.retain(|p| {
            if !divides(et, &p.lcm) {
                return true;
            }
            let lit = exp_lcm(&leads[p.i], et);
            let ljt = exp_lcm(&leads[p.j], et);
            lit == p.lcm || ljt == p.lcm
        });
        let fresh: Vec<Pair> = (0..t)
            .filter(|&i| active[i])
            .map(|i| {
                let lcm = exp_lcm(&leads[i], et);
                let d = total_degree(&lcm);
                let si = sugar[i] + d - total_degree(&leads[i]);
                let st = sugar[t] + d - total_degree(et);
                Pair {
                    i,
                    j: t,
                    lcm,
                    sugar: si.max(st),
                }
            })
            .collect();
        for (k, p) in fresh.iter().enumerate() {
            let dominated = fresh
                .iter()
                .any(|q| q.lcm != p.lcm && divides(&q.lcm, &p.lcm));
            let repeated = fresh[..k].iter().any(|q| q.lcm == p.lcm);
            if !dominated && !repeated {
                self.pairs.push(p.clone());
            }
        }
        for i in 0..t {
            if active[i] && divides(et, &leads[i]) {
                active[i] = false;
            }
        }
    }
}

/// A (non-reduced) left Gröbner basis by Buchberger's algorithm.
fn buchberger_raw<F: Field>(alg: &GAlgebra<F>, gens: &[NcPoly<F>]) -> Vec<NcPoly<F>> {
    let order = alg.order();
    let mut input: Vec<NcPoly<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    input.sort_by(|a, b| order.cmp(a.leading_exponent().unwrap(), b.leading_exponent().unwrap()));
    let mut st = State {
        basis: Vec::new(),
        leads: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        reducers: Vec::new(),
        queue: PairQueue { pairs: Vec::new() },
    };
    for f in input {
        let h = left_normal_form(alg, &f, &st.reducers);
        if !h.is_zero() {
            if h.is_constant() {
                return vec![alg.one()];
            }
            let sg = degree(&h);
            st.push(alg, h, sg);
        }
    }
    while let Some(p) = st.queue.pop(alg) {
        let s = left_spoly(alg, &st.basis[p.i], &st.basis[p.j]);
        let h = left_normal_form(alg, &s, &st.reducers);
        if !h.is_zero() {
            if h.is_constant() {
                return vec![alg.one()];
            }
            let sg = p.sugar.max(degree(&h));
            st.push(alg, h, sg);
        }
    }
    st.reducers
}

fn degree<F: Field>(f: &NcPoly<F>) -> u64 {
    f.support().map(|e| total_degree(e)).max().unwrap_or(0)
}

struct State<F: Field> {
    basis: Vec<NcPoly<F>>,
    leads: Vec<Exponent>,
    sugar: Vec<u64>,
    active: Vec<bool>,
    reducers: Vec<NcPoly<F>>,
    queue: PairQueue,
}

impl<F: Field> State<F> {
    fn push(&mut self, alg: &GAlgebra<F>, h: NcPoly<F>, sugar: u64) {
        let h = alg.monic(&h);
        self.sugar.push(sugar);
        self.leads.push(h.leading_exponent().unwrap().clone());
        self.basis.push(h);
        self.active.push(true);
        let t = self.basis.len() - 1;
        self.queue
            .update(&self.leads, &self.sugar, &mut self.active, t);
        self.reducers = self
            .basis
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(g, _)| g.clone())
            .collect();
    }
}

/// Minimalizes and interreduces a left Gröbner basis; the result is monic
/// and sorted ascending by leading exponent.
pub fn reduce_basis<F: Field>(alg: &GAlgebra<F>, elems: &[NcPoly<F>]) -> Vec<NcPoly<F>> {
    let order = alg.order();
    let mut g: Vec<NcPoly<F>> = elems
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| alg.monic(f))
        .collect();
    g.sort_by(|a, b| order.cmp(a.leading_exponent().unwrap(), b.leading_exponent().unwrap()));
    let mut minimal: Vec<NcPoly<F>> = Vec::new();
    for f in g {
        let e = f.leading_exponent().unwrap();
        if !minimal
            .iter()
            .any(|h| divides(h.leading_exponent().unwrap(), e))
        {
            minimal.push(f);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let (lead, rest) = minimal[k].terms.split_first().unwrap();
        let others: Vec<NcPoly<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, h)| h.clone())
            .collect();
        let tail = left_normal_form(alg, &NcPoly::from_sorted(rest.to_vec()), &others);
        let mut terms = vec![lead.clone()];
        terms.extend(tail.terms);
        out.push(NcPoly::from_sorted(terms));
    }
    out
}

/// The reduced left Gröbner basis of the left ideal generated by `gens`.
pub fn left_gb<F: Field>(alg: &GAlgebra<F>, gens: &[NcPoly<F>]) -> GroebnerBasis<F> {
    let raw = buchberger_raw(alg, gens);
    GroebnerBasis {
        elements: reduce_basis(alg, &raw),
        ordering: alg.ordering().clone(),
        reduced: true,
        side: Side::Left,
    }
}

/// Reduced Gröbner basis of the ideal of the given side.
pub fn buchberger<F: Field>(
    alg: &GAlgebra<F>,
    gens: &[NcPoly<F>],
    side: Side,
) -> Result<GroebnerBasis<F>> {
    match side {
        Side::Left => Ok(left_gb(alg, gens)),
        Side::Right => right_gb(alg, gens),
        Side::TwoSided => two_sided_gb(alg, gens),
    }
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn gb_check<F: Field>(alg: &GAlgebra<F>, g: &[NcPoly<F>]) -> bool {
    gb_check_impl(alg, g, None)
}

/// [`gb_check`] that also returns every monomial met along the way.
pub fn gb_check_traced<F: Field>(alg: &GAlgebra<F>, g: &[NcPoly<F>]) -> (bool, BTreeSet<Exponent>) {
    let mut touched = BTreeSet::new();
    for f in g {
        touched.extend(f.support().cloned());
    }
    let ok = gb_check_impl(alg, g, Some(&mut touched));
    (ok, touched)
}

fn gb_check_impl<F: Field>(
    alg: &GAlgebra<F>,
    g: &[NcPoly<F>],
    mut touched: Option<&mut BTreeSet<Exponent>>,
) -> bool {
    let g: Vec<NcPoly<F>> = g.iter().filter(|f| !f.is_zero()).cloned().collect();
    let leads: Vec<&Exponent> = g.iter().map(|f| f.leading_exponent().unwrap()).collect();
    for j in 0..g.len() {
        for i in 0..j {
            let lcm = exp_lcm(leads[i], leads[j]);
            // chain criterion: the pairs (i,k) and (k,j) have strictly smaller lcms
            let chained = touched.is_none()
                && (0..g.len()).any(|k| {
                    k != i
                        && k != j
                        && divides(leads[k], &lcm)
                        && exp_lcm(leads[i], leads[k]) != lcm
                        && exp_lcm(leads[j], leads[k]) != lcm
                });
            if chained {
                continue;
            }
            let s = left_spoly(alg, &g[i], &g[j]);
            let r = reduce_impl(alg, &s, &g, None, touched.as_deref_mut());
            if !r.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Membership of `f` in the ideal with basis `gb`.
pub fn ideal_membership<F: Field>(
    alg: &GAlgebra<F>,
    f: &NcPoly<F>,
    gb: &GroebnerBasis<F>,
) -> Result<bool> {
    match gb.side {
        Side::Left | Side::TwoSided => Ok(left_normal_form(alg, f, &gb.elements).is_zero()),
        Side::Right => {
            let opp = opposite_algebra(alg)?;
            let g: Vec<NcPoly<F>> = gb.elements.iter().map(|h| transport(h, &opp)).collect();
            Ok(left_normal_form(&opp, &transport(f, &opp), &g).is_zero())
        }
    }
}

/// Generators of `I ∩ A_keep`, the subalgebra on the variables in `keep`.
///
/// Uses the algebra's own ordering when it already eliminates the other
/// variables, and otherwise a weighted ordering from the elimination
/// program. The returned elements are sorted for the original algebra.
pub fn eliminate<F: Field>(
    alg: &GAlgebra<F>,
    gens: &[NcPoly<F>],
    keep: &[usize],
) -> Result<Vec<NcPoly<F>>> {
    let n = alg.nvars();
    let elim: Vec<NcPoly<F>> = if alg.order().is_elimination_for(keep) {
        left_gb(alg, gens).elements
    } else {
        let w = elimination_weight(alg, keep).ok_or(Error::NoEliminationOrdering)?;
        let spec = OrderingSpec::weighted(w, alg.ordering().clone());
        debug_assert!(spec.is_elimination_for(n, keep));
        let other = alg.with_ordering(spec)?;
        let g: Vec<NcPoly<F>> = gens.iter().map(|f| other.import(f)).collect();
        left_gb(&other, &g).elements
    };
    Ok(elim
        .iter()
        .filter(|g| g.involves_only(keep))
        .map(|g| alg.import(g))
        .collect())
}

/// The opposite algebra on the reversed variables: `x_i` of `A` becomes
/// variable `n-1-i`, and the standard monomial `x^a` becomes `x^rev(a)`.
pub fn opposite_algebra<F: Field>(alg: &GAlgebra<F>) -> Result<GAlgebra<F>> {
    let n = alg.nvars();
    let names: Vec<String> = alg.names().iter().rev().cloned().collect();
    let rels = alg
        .relations()
        .into_iter()
        .map(|r| Relation {
            i: n - 1 - r.j,
            j: n - 1 - r.i,
            c: r.c,
            d: r.d.into_iter().map(|(e, c)| (reverse(&e), c)).collect(),
        })
        .collect();
    let spec = alg.ordering().reversed(n);
    let opp = GAlgebra::unchecked(alg.field().clone(), names, rels, spec)?;
    opp.check_admissible()?;
    Ok(opp)
}

fn reverse(e: &[u32]) -> Exponent {
    e.iter().rev().copied().collect()
}

/// The anti-isomorphism between an algebra and its opposite, in either
/// direction; `target` is the algebra the result lives in.
pub fn transport<F: Field>(f: &NcPoly<F>, target: &GAlgebra<F>) -> NcPoly<F> {
    let terms = f
        .terms()
        .iter()
        .map(|(e, c)| (reverse(e), c.clone()))
        .collect();
    target.normalize(terms)
}

fn right_gb<F: Field>(alg: &GAlgebra<F>, gens: &[NcPoly<F>]) -> Result<GroebnerBasis<F>> {
    let opp = opposite_algebra(alg)?;
    let g: Vec<NcPoly<F>> = gens.iter().map(|f| transport(f, &opp)).collect();
    let gb = left_gb(&opp, &g);
    let order = alg.order();
    let mut elements: Vec<NcPoly<F>> = gb.elements.iter().map(|h| transport(h, alg)).collect();
    elements
        .sort_by(|a, b| order.cmp(a.leading_exponent().unwrap(), b.leading_exponent().unwrap()));
    Ok(GroebnerBasis {
        elements,
        ordering: alg.ordering().clone(),
        reduced: true,
        side: Side::Right,
    })
}

/// `A ⊗ A^opp` on `2n` variables: the variables of `A`, then those of the
/// opposite algebra, ordered by a block ordering with the opposite block
/// first so that it is eliminated.
pub fn enveloping_algebra<F: Field>(alg: &GAlgebra<F>) -> Result<GAlgebra<F>> {
    let n = alg.nvars();
    let opp = opposite_algebra(alg)?;
    let mut names: Vec<String> = alg.names().to_vec();
    names.extend(opp.names().iter().map(|s| format!("{s}_op")));
    let widen = |e: &[u32], shift: usize| -> Exponent {
        let mut out: Exponent = std::iter::repeat_n(0, 2 * n).collect();
        for (k, &x) in e.iter().enumerate() {
            out[k + shift] = x;
        }
        out
    };
    let mut rels = Vec::new();
    for r in alg.relations() {
        rels.push(Relation {
            i: r.i,
            j: r.j,
            c: r.c,
            d: r.d.iter().map(|(e, c)| (widen(e, 0), c.clone())).collect(),
        });
    }
    for r in opp.relations() {
        rels.push(Relation {
            i: r.i + n,
            j: r.j + n,
            c: r.c,
            d: r.d.iter().map(|(e, c)| (widen(e, n), c.clone())).collect(),
        });
    }
    let spec = OrderingSpec::Block(vec![
        Block::new((n..2 * n).collect(), opp.ordering().clone()),
        Block::new((0..n).collect(), alg.ordering().clone()),
    ]);
    let env = GAlgebra::unchecked(alg.field().clone(), names, rels, spec)?;
    env.check_admissible()?;
    Ok(env)
}

/// Reduced basis of the two-sided ideal generated by `gens`, computed as
/// a left ideal of the enveloping algebra and contracted back.
pub fn two_sided_gb<F: Field>(alg: &GAlgebra<F>, gens: &[NcPoly<F>]) -> Result<GroebnerBasis<F>> {
    let n = alg.nvars();
    if alg.is_commutative() {
        let mut gb = left_gb(alg, gens);
        gb.side = Side::TwoSided;
        return Ok(gb);
    }
    let env = enveloping_algebra(alg)?;
    let mut g: Vec<NcPoly<F>> = gens
        .iter()
        .map(|f| {
            let terms = f
                .terms()
                .iter()
                .map(|(e, c)| {
                    let mut w: Exponent = e.clone();
                    w.extend(std::iter::repeat_n(0, n));
                    (w, c.clone())
                })
                .collect();
            env.normalize(terms)
        })
        .collect();
    for i in 0..n {
        let x = env.var(i);
        let y = env.var(n + (n - 1 - i));
        g.push(env.sub(&x, &y));
    }
    let gb = left_gb(&env, &g);
    let keep: Vec<usize> = (0..n).collect();
    let contracted: Vec<NcPoly<F>> = gb
        .elements
        .iter()
        .filter(|h| h.involves_only(&keep))
        .map(|h| {
            let terms = h
                .terms()
                .iter()
                .map(|(e, c)| (e[..n].iter().copied().collect::<Exponent>(), c.clone()))
                .collect();
            alg.normalize(terms)
        })
        .collect();
    Ok(GroebnerBasis {
        elements: reduce_basis(alg, &contracted),
        ordering: alg.ordering().clone(),
        reduced: true,
        side: Side::TwoSided,
    })
}

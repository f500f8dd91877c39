//! G-algebra presentations and PBW multiplication.
//!
//! A G-algebra on `x_1, ..., x_n` is given by relations
//! `x_j x_i = c_ij x_i x_j + d_ij` for `i < j`, where the `c_ij` are nonzero
//! scalars and the tails `d_ij` are standard polynomials strictly below
//! `x_i x_j` in an admissible ordering. Products are computed by rewriting
//! powers of variable pairs, memoized per algebra.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::arithmetic::{prime_divides_rational, Rational};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::orderings::{MonomialOrder, OrderingSpec};
use crate::poly::{exp_add, is_zero_exponent, unit_exponent, zero_exponent, Exponent, NcPoly};

type Terms<F> = Vec<(Exponent, <F as Field>::Elem)>;
type Acc<F> = HashMap<Exponent, <F as Field>::Elem>;
type PairKey = (u32, u32, u32, u32);

/// One defining relation `x_j x_i = c x_i x_j + d` with `i < j`.
#[derive(Debug, Clone)]
pub struct Relation<F: Field> {
    pub i: usize,
    pub j: usize,
    pub c: F::Elem,
    pub d: Terms<F>,
}

/// A validated G-algebra together with its admissible ordering.
pub struct GAlgebra<F: Field> {
    field: F,
    names: Vec<String>,
    // c[j][i] and d[j][i] for i < j
    c: Vec<Vec<F::Elem>>,
    d: Vec<Vec<NcPoly<F>>>,
    spec: OrderingSpec,
    order: MonomialOrder,
    // bit i of tail_mask[j] set when d_ij != 0 (i < j)
    tail_mask: Vec<u64>,
    // bit i of scalar_mask[j] set when c_ij != 1 (i < j)
    scalar_mask: Vec<u64>,
    cache: RwLock<HashMap<PairKey, Arc<Terms<F>>>>,
    use_cache: bool,
}

impl<F: Field> std::fmt::Debug for GAlgebra<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GAlgebra")
            .field("field", &self.field)
            .field("names", &self.names)
            .field("ordering", &self.spec)
            .finish_non_exhaustive()
    }
}

impl<F: Field> GAlgebra<F> {
    /// Builds and validates an algebra. Pairs without a relation commute.
    pub fn new(
        field: F,
        names: Vec<String>,
        relations: Vec<Relation<F>>,
        ordering: OrderingSpec,
    ) -> Result<Self> {
        let alg = Self::unchecked(field, names, relations, ordering)?;
        alg.check_admissible()?;
        alg.check_nondegeneracy()?;
        Ok(alg)
    }

    /// Builds without the admissibility and nondegeneracy checks.
    pub fn unchecked(
        field: F,
        names: Vec<String>,
        relations: Vec<Relation<F>>,
        ordering: OrderingSpec,
    ) -> Result<Self> {
        let n = names.len();
        if n > 64 {
            return Err(Error::Invalid("at most 64 variables are supported".into()));
        }
        let order = ordering.compile(n)?;
        let mut c = vec![Vec::new(); n];
        let mut d = vec![Vec::new(); n];
        for j in 0..n {
            c[j] = vec![field.one(); j];
            d[j] = vec![NcPoly::zero(); j];
        }
        let mut alg = GAlgebra {
            field,
            names,
            c,
            d,
            spec: ordering,
            order,
            tail_mask: vec![0; n],
            scalar_mask: vec![0; n],
            cache: RwLock::new(HashMap::new()),
            use_cache: true,
        };
        for rel in relations {
            if rel.i >= rel.j || rel.j >= n {
                return Err(Error::Invalid(format!(
                    "relation indices ({}, {}) must satisfy i < j < n",
                    rel.i, rel.j
                )));
            }
            if alg.field.is_zero(&rel.c) {
                return Err(Error::ZeroScalar { i: rel.i, j: rel.j });
            }
            if rel.d.iter().any(|(e, _)| e.len() != n) {
                return Err(Error::Invalid("tail exponent has the wrong length".into()));
            }
            let tail = alg.normalize(rel.d);
            alg.c[rel.j][rel.i] = rel.c;
            alg.d[rel.j][rel.i] = tail;
        }
        alg.refresh_masks();
        Ok(alg)
    }

    /// The polynomial ring `K[x_1..x_n]` as a G-algebra.
    pub fn commutative(field: F, names: Vec<String>, ordering: OrderingSpec) -> Result<Self> {
        Self::new(field, names, Vec::new(), ordering)
    }

    fn refresh_masks(&mut self) {
        let n = self.nvars();
        for j in 0..n {
            let mut tm = 0u64;
            let mut sm = 0u64;
            for i in 0..j {
                if !self.d[j][i].is_zero() {
                    tm |= 1 << i;
                }
                if !self.field.is_one(&self.c[j][i]) {
                    sm |= 1 << i;
                }
            }
            self.tail_mask[j] = tm;
            self.scalar_mask[j] = sm;
        }
    }

    /// Disables (or re-enables) the pair-product memo table.
    pub fn set_cache(&mut self, enabled: bool) {
        self.use_cache = enabled;
        self.cache.write().unwrap().clear();
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn ordering(&self) -> &OrderingSpec {
        &self.spec
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// `(c_ij, d_ij)` for `i < j`.
    pub fn relation(&self, i: usize, j: usize) -> (&F::Elem, &NcPoly<F>) {
        assert!(i < j);
        (&self.c[j][i], &self.d[j][i])
    }

    /// All relations that differ from plain commutation.
    pub fn relations(&self) -> Vec<Relation<F>> {
        let mut out = Vec::new();
        for j in 0..self.nvars() {
            for i in 0..j {
                if !self.field.is_one(&self.c[j][i]) || !self.d[j][i].is_zero() {
                    out.push(Relation {
                        i,
                        j,
                        c: self.c[j][i].clone(),
                        d: self.d[j][i].terms.clone(),
                    });
                }
            }
        }
        out
    }

    /// `(i, j, supp d_ij)` for every nonzero tail.
    pub fn tail_supports(&self) -> Vec<(usize, usize, Vec<Exponent>)> {
        let mut out = Vec::new();
        for j in 0..self.nvars() {
            for i in 0..j {
                if !self.d[j][i].is_zero() {
                    out.push((i, j, self.d[j][i].support().cloned().collect()));
                }
            }
        }
        out
    }

    /// `true` when every `c_ij = 1` and every `d_ij = 0`.
    pub fn is_commutative(&self) -> bool {
        self.tail_mask.iter().all(|&m| m == 0) && self.scalar_mask.iter().all(|&m| m == 0)
    }

    /// The same presentation under another ordering, revalidated.
    pub fn with_ordering(&self, ordering: OrderingSpec) -> Result<Self> {
        let alg = Self::unchecked(
            self.field.clone(),
            self.names.clone(),
            self.relations(),
            ordering,
        )?;
        alg.check_admissible()?;
        Ok(alg)
    }

    /// Admissibility: every nonzero tail lies strictly below `x_i x_j`.
    pub fn check_admissible(&self) -> Result<()> {
        let n = self.nvars();
        for j in 0..n {
            for i in 0..j {
                if let Some(lead) = self.d[j][i].leading_exponent() {
                    let mut eij = unit_exponent(n, i);
                    eij[j] += 1;
                    if self.order.cmp(lead, &eij) != Ordering::Less {
                        return Err(Error::NotAdmissible { i, j });
                    }
                }
            }
        }
        Ok(())
    }

    /// Nondegeneracy, checked as associativity of
    /// `(x_k x_j) x_i = x_k (x_j x_i)` for all `i < j < k`.
    pub fn check_nondegeneracy(&self) -> Result<()> {
        let n = self.nvars();
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    if self.tail_mask[k] == 0 && self.tail_mask[j] == 0 {
                        // pure scalar relations are associative iff trivially so
                        continue;
                    }
                    let xi = self.var(i);
                    let xj = self.var(j);
                    let xk = self.var(k);
                    let left = self.mul(&self.mul(&xk, &xj), &xi);
                    let right = self.mul(&xk, &self.mul(&xj, &xi));
                    if left != right {
                        return Err(Error::Degenerate { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    // ---- construction helpers ----

    /// Sorts terms descending, merges equal exponents and drops zeros.
    pub fn normalize(&self, terms: Terms<F>) -> NcPoly<F> {
        let mut acc: Acc<F> = HashMap::with_capacity(terms.len());
        for (e, c) in terms {
            self.acc_add(&mut acc, e, c);
        }
        self.finish(acc)
    }

    pub fn monomial(&self, e: Exponent, c: F::Elem) -> NcPoly<F> {
        assert_eq!(e.len(), self.nvars());
        if self.field.is_zero(&c) {
            NcPoly::zero()
        } else {
            NcPoly::from_sorted(vec![(e, c)])
        }
    }

    pub fn constant(&self, c: F::Elem) -> NcPoly<F> {
        self.monomial(zero_exponent(self.nvars()), c)
    }

    pub fn one(&self) -> NcPoly<F> {
        self.constant(self.field.one())
    }

    pub fn var(&self, i: usize) -> NcPoly<F> {
        self.monomial(unit_exponent(self.nvars(), i), self.field.one())
    }

    /// Re-sorts a polynomial that was built for the same variables under
    /// another ordering.
    pub fn import(&self, f: &NcPoly<F>) -> NcPoly<F> {
        let mut terms = f.terms.clone();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        NcPoly::from_sorted(terms)
    }

    // ---- linear operations ----

    pub fn add(&self, f: &NcPoly<F>, g: &NcPoly<F>) -> NcPoly<F> {
        self.add_scaled(f, g, &self.field.one())
    }

    pub fn sub(&self, f: &NcPoly<F>, g: &NcPoly<F>) -> NcPoly<F> {
        self.add_scaled(f, g, &self.field.neg(&self.field.one()))
    }

    pub fn neg(&self, f: &NcPoly<F>) -> NcPoly<F> {
        NcPoly::from_sorted(
            f.terms
                .iter()
                .map(|(e, c)| (e.clone(), self.field.neg(c)))
                .collect(),
        )
    }

    pub fn scale(&self, f: &NcPoly<F>, s: &F::Elem) -> NcPoly<F> {
        if self.field.is_zero(s) {
            return NcPoly::zero();
        }
        NcPoly::from_sorted(
            f.terms
                .iter()
                .map(|(e, c)| (e.clone(), self.field.mul(c, s)))
                .collect(),
        )
    }

    /// `f + s * g` by a sorted merge.
    pub fn add_scaled(&self, f: &NcPoly<F>, g: &NcPoly<F>, s: &F::Elem) -> NcPoly<F> {
        let fd = &self.field;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut a, mut b) = (f.terms.iter().peekable(), g.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (e, c) = b.next().unwrap();
                    out.push((e.clone(), fd.mul(c, s)));
                }
                (Some((ea, ca)), Some((eb, cb))) => match self.order.cmp(ea, eb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        out.push((eb.clone(), fd.mul(cb, s)));
                        b.next();
                    }
                    Ordering::Equal => {
                        let c = fd.add(ca, &fd.mul(cb, s));
                        if !fd.is_zero(&c) {
                            out.push((ea.clone(), c));
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
        NcPoly::from_sorted(out)
    }

    /// Leading exponent and coefficient.
    pub fn leading_data(&self, f: &NcPoly<F>) -> Result<(Exponent, F::Elem)> {
        f.leading()
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Scales `f` to leading coefficient one.
    pub fn monic(&self, f: &NcPoly<F>) -> NcPoly<F> {
        match f.leading() {
            None => NcPoly::zero(),
            Some((_, c)) if self.field.is_one(c) => f.clone(),
            Some((_, c)) => self.scale(f, &self.field.inv(c).unwrap()),
        }
    }

    // ---- multiplication ----

    /// `f * g`.
    pub fn mul(&self, f: &NcPoly<F>, g: &NcPoly<F>) -> NcPoly<F> {
        if f.is_zero() || g.is_zero() {
            return NcPoly::zero();
        }
        let mut acc: Acc<F> = HashMap::new();
        for (a, ca) in &f.terms {
            for (b, cb) in &g.terms {
                let c = self.field.mul(ca, cb);
                self.mono_mul_acc(a, b, &c, &mut acc);
            }
        }
        self.finish(acc)
    }

    pub fn pow(&self, f: &NcPoly<F>, e: u32) -> NcPoly<F> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// `x^a * x^b` in PBW form.
    pub fn mul_monomials(&self, a: &[u32], b: &[u32]) -> NcPoly<F> {
        let mut acc: Acc<F> = HashMap::new();
        self.mono_mul_acc(a, b, &self.field.one(), &mut acc);
        self.finish(acc)
    }

    /// `s * x^a * g`.
    pub fn mul_term_left(&self, a: &[u32], s: &F::Elem, g: &NcPoly<F>) -> NcPoly<F> {
        if g.is_zero() || self.field.is_zero(s) {
            return NcPoly::zero();
        }
        // translation invariance keeps the order when no rewriting happens
        if g.terms.iter().all(|(b, _)| self.swap_free(a, b)) {
            let terms = g
                .terms
                .iter()
                .map(|(b, c)| {
                    let k = self
                        .field
                        .mul(s, &self.field.mul(c, &self.swap_scalar(a, b)));
                    (exp_add(a, b), k)
                })
                .collect();
            return NcPoly::from_sorted(terms);
        }
        let mut acc: Acc<F> = HashMap::new();
        for (b, c) in &g.terms {
            let k = self.field.mul(s, c);
            self.mono_mul_acc(a, b, &k, &mut acc);
        }
        self.finish(acc)
    }

    /// `g * s * x^a`.
    pub fn mul_term_right(&self, g: &NcPoly<F>, a: &[u32], s: &F::Elem) -> NcPoly<F> {
        if g.is_zero() || self.field.is_zero(s) {
            return NcPoly::zero();
        }
        let mut acc: Acc<F> = HashMap::new();
        for (b, c) in &g.terms {
            let k = self.field.mul(s, c);
            self.mono_mul_acc(b, a, &k, &mut acc);
        }
        self.finish(acc)
    }

    fn support_mask(e: &[u32]) -> u64 {
        e.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }

    /// No tail is produced when moving `x^a` past `x^b`.
    #[inline]
    fn swap_free(&self, a: &[u32], b: &[u32]) -> bool {
        let mb = Self::support_mask(b);
        a.iter()
            .enumerate()
            .all(|(j, &x)| x == 0 || self.tail_mask[j] & mb == 0)
    }

    /// Product of the `c_ij^(a_j b_i)` picked up by a tail-free swap.
    fn swap_scalar(&self, a: &[u32], b: &[u32]) -> F::Elem {
        let mut s = self.field.one();
        let mb = Self::support_mask(b);
        for (j, &aj) in a.iter().enumerate() {
            if aj == 0 {
                continue;
            }
            let mut m = self.scalar_mask[j] & mb;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                let e = aj as u64 * b[i] as u64;
                s = self.field.mul(&s, &self.field.pow(&self.c[j][i], e));
            }
        }
        s
    }

    fn acc_add(&self, acc: &mut Acc<F>, e: Exponent, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match acc.get_mut(&e) {
            Some(v) => *v = self.field.add(v, &c),
            None => {
                acc.insert(e, c);
            }
        }
    }

    fn finish(&self, acc: Acc<F>) -> NcPoly<F> {
        let mut terms: Terms<F> = acc
            .into_iter()
            .filter(|(_, c)| !self.field.is_zero(c))
            .collect();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        NcPoly::from_sorted(terms)
    }

    /// Adds `coef * x^a * x^b` to `acc`.
    fn mono_mul_acc(&self, a: &[u32], b: &[u32], coef: &F::Elem, acc: &mut Acc<F>) {
        let last_a = a.iter().rposition(|&x| x != 0);
        let first_b = b.iter().position(|&x| x != 0);
        let (k, i0) = match (last_a, first_b) {
            (Some(k), Some(i0)) => (k, i0),
            _ => {
                self.acc_add(acc, exp_add(a, b), coef.clone());
                return;
            }
        };
        if k <= i0 {
            self.acc_add(acc, exp_add(a, b), coef.clone());
            return;
        }
        if self.swap_free(a, b) {
            let c = self.field.mul(coef, &self.swap_scalar(a, b));
            self.acc_add(acc, exp_add(a, b), c);
            return;
        }
        // x^a = x^a' x_k^m
        let m = a[k];
        let mut rest: Exponent = a.into();
        rest[k] = 0;
        let q = self.power_times_monomial(k, m, b);
        for (g, c) in q {
            let c = self.field.mul(coef, &c);
            self.mono_mul_acc(&rest, &g, &c, acc);
        }
    }

    /// `x_k^m * x^b` as unsorted terms.
    fn power_times_monomial(&self, k: usize, m: u32, b: &[u32]) -> Terms<F> {
        let i = match b.iter().position(|&x| x != 0) {
            Some(i) if i < k => i,
            _ => {
                let mut e: Exponent = b.into();
                e[k] += m;
                return vec![(e, self.field.one())];
            }
        };
        let pair = self.pair_power(i, b[i], k, m);
        let mut tail: Exponent = b.into();
        tail[i] = 0;
        if is_zero_exponent(&tail) {
            return pair.as_ref().clone();
        }
        let mut acc: Acc<F> = HashMap::new();
        for (g, c) in pair.iter() {
            self.mono_mul_acc(g, &tail, c, &mut acc);
        }
        acc.into_iter()
            .filter(|(_, c)| !self.field.is_zero(c))
            .collect()
    }

    /// `x_j^b * x_i^a` for `i < j`, memoized.
    fn pair_power(&self, i: usize, a: u32, j: usize, b: u32) -> Arc<Terms<F>> {
        let n = self.nvars();
        if self.tail_mask[j] & (1 << i) == 0 {
            let mut e = zero_exponent(n);
            e[i] = a;
            e[j] = b;
            let c = self.field.pow(&self.c[j][i], a as u64 * b as u64);
            return Arc::new(vec![(e, c)]);
        }
        let key = (i as u32, a, j as u32, b);
        if self.use_cache {
            if let Some(hit) = self.cache.read().unwrap().get(&key) {
                return hit.clone();
            }
        }
        let mut acc: Acc<F> = HashMap::new();
        if a == 1 && b == 1 {
            let mut e = zero_exponent(n);
            e[i] = 1;
            e[j] = 1;
            self.acc_add(&mut acc, e, self.c[j][i].clone());
            for (e, c) in &self.d[j][i].terms {
                self.acc_add(&mut acc, e.clone(), c.clone());
            }
        } else if b > 1 {
            // x_j * (x_j^(b-1) * x_i^a)
            let prev = self.pair_power(i, a, j, b - 1);
            let xj = unit_exponent(n, j);
            for (g, c) in prev.iter() {
                self.mono_mul_acc(&xj, g, c, &mut acc);
            }
        } else {
            // (x_j * x_i^(a-1)) * x_i
            let prev = self.pair_power(i, a - 1, j, 1);
            let xi = unit_exponent(n, i);
            for (g, c) in prev.iter() {
                self.mono_mul_acc(g, &xi, c, &mut acc);
            }
        }
        let terms: Terms<F> = acc
            .into_iter()
            .filter(|(_, c)| !self.field.is_zero(c))
            .collect();
        let terms = Arc::new(terms);
        if self.use_cache {
            self.cache
                .write()
                .unwrap()
                .entry(key)
                .or_insert_with(|| terms.clone());
        }
        terms
    }

    // ---- printing ----

    pub fn format_monomial(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| {
                if x == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], x)
                }
            })
            .collect();
        parts.join("*")
    }

    /// Prints in the session syntax, e.g. `x^2*Dx - 1/2*y + 3`.
    pub fn format(&self, f: &NcPoly<F>) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let fd = &self.field;
        let mut out = String::new();
        for (k, (e, c)) in f.terms.iter().enumerate() {
            let neg = fd.is_negative(c);
            let abs = if neg { fd.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(e);
            if mono.is_empty() {
                out.push_str(&fd.format(&abs));
            } else if fd.is_one(&abs) {
                out.push_str(&mono);
            } else {
                out.push_str(&fd.format(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

impl GAlgebra<Rationals> {
    /// Reduces the presentation modulo `p`. Fails when `p` divides a
    /// numerator or denominator of some `c_ij` or tail coefficient.
    pub fn reduce_mod_p(&self, p: u32) -> Result<GAlgebra<PrimeField>> {
        let fp = PrimeField::new(p);
        let mut rels = Vec::new();
        for rel in self.relations() {
            if prime_divides_rational(p as u64, &rel.c) {
                return Err(Error::BadPrime(p as u64));
            }
            let c = fp.from_rational(&rel.c).ok_or(Error::BadPrime(p as u64))?;
            let mut d = Vec::with_capacity(rel.d.len());
            for (e, q) in &rel.d {
                if prime_divides_rational(p as u64, q) {
                    return Err(Error::BadPrime(p as u64));
                }
                d.push((
                    e.clone(),
                    fp.from_rational(q).ok_or(Error::BadPrime(p as u64))?,
                ));
            }
            rels.push(Relation {
                i: rel.i,
                j: rel.j,
                c,
                d,
            });
        }
        // supports are unchanged, and associativity survives reduction
        let alg = GAlgebra::unchecked(fp, self.names.clone(), rels, self.spec.clone())?;
        alg.check_admissible()?;
        Ok(alg)
    }

    /// `true` when `p` passes the rejection test of [`Self::reduce_mod_p`].
    pub fn prime_is_admissible(&self, p: u64) -> bool {
        self.relations().iter().all(|rel| {
            !prime_divides_rational(p, &rel.c)
                && rel.d.iter().all(|(_, q)| !prime_divides_rational(p, q))
        })
    }

    /// Parses integer or rational coefficients from `(exponent, "a/b")` pairs.
    pub fn poly_from_rationals(&self, terms: Vec<(Exponent, Rational)>) -> NcPoly<Rationals> {
        self.normalize(terms)
    }
}

/// Coefficientwise image of a rational polynomial in `F_p`; `None` when a
/// denominator vanishes. Exponent order is preserved, so the result is
/// valid for the reduced algebra with the same ordering.
pub fn poly_mod_p(f: &NcPoly<Rationals>, field: &PrimeField) -> Option<NcPoly<PrimeField>> {
    let mut terms = Vec::with_capacity(f.len());
    for (e, q) in f.terms() {
        let c = field.from_rational(q)?;
        if c != 0 {
            terms.push((e.clone(), c));
        }
    }
    Some(NcPoly::from_sorted(terms))
}

/// Builds a relation from rational data.
pub fn relation(i: usize, j: usize, c: i64, d: Vec<(Exponent, i64)>) -> Relation<Rationals> {
    let f = Rationals;
    Relation {
        i,
        j,
        c: f.from_i64(c),
        d: d.into_iter().map(|(e, k)| (e, f.from_i64(k))).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn ex(v: &[u32]) -> Exponent {
        v.iter().copied().collect()
    }

    fn weyl1() -> GAlgebra<Rationals> {
        GAlgebra::new(
            Rationals,
            names(&["x", "D"]),
            vec![relation(0, 1, 1, vec![(ex(&[0, 0]), 1)])],
            OrderingSpec::DegRevLex,
        )
        .unwrap()
    }

    fn q(a: i64) -> Rational {
        Rational::from_integer(BigInt::from(a))
    }

    #[test]
    fn weyl_commutator() {
        let a = weyl1();
        let p = a.mul_monomials(&[0, 1], &[1, 0]);
        assert_eq!(a.format(&p), "x*D + 1");
        let p = a.mul_monomials(&[1, 0], &[0, 0]);
        assert_eq!(a.format(&p), "x");
    }

    #[test]
    fn quasi_commutative_swap() {
        let a = GAlgebra::new(
            Rationals,
            names(&["x", "y"]),
            vec![relation(0, 1, 2, vec![])],
            OrderingSpec::DegRevLex,
        )
        .unwrap();
        let p = a.mul_monomials(&[0, 1], &[1, 0]);
        assert_eq!(a.format(&p), "2*x*y");
        // y^2 x^3 = 2^6 x^3 y^2
        let p = a.mul_monomials(&[0, 2], &[3, 0]);
        assert_eq!(p.terms()[0].1, q(64));
    }

    #[test]
    fn square_of_sum_in_weyl() {
        let a = weyl1();
        let s = a.add(&a.var(0), &a.var(1));
        assert_eq!(a.format(&a.mul(&s, &s)), "x^2 + 2*x*D + D^2 + 1");
    }

    #[test]
    fn shift_square() {
        // t s = s t - t
        let a = GAlgebra::new(
            Rationals,
            names(&["s", "t"]),
            vec![relation(0, 1, 1, vec![(ex(&[0, 1]), -1)])],
            OrderingSpec::DegRevLex,
        )
        .unwrap();
        let s = a.add(&a.var(0), &a.var(1));
        assert_eq!(a.format(&a.mul(&s, &s)), "s^2 + 2*s*t + t^2 - t");
    }

    #[test]
    fn admissibility_failures() {
        let r = GAlgebra::new(
            Rationals,
            names(&["x", "y"]),
            vec![relation(0, 1, 1, vec![(ex(&[2, 2]), 1)])],
            OrderingSpec::DegRevLex,
        );
        assert_eq!(r.unwrap_err(), Error::NotAdmissible { i: 0, j: 1 });
        let r = GAlgebra::new(
            Rationals,
            names(&["x", "y"]),
            vec![relation(0, 1, 1, vec![(ex(&[1, 1]), 1)])],
            OrderingSpec::Lex,
        );
        assert_eq!(r.unwrap_err(), Error::NotAdmissible { i: 0, j: 1 });
        let r = GAlgebra::new(
            Rationals,
            names(&["x", "y"]),
            vec![relation(0, 1, 0, vec![])],
            OrderingSpec::Lex,
        );
        assert_eq!(r.unwrap_err(), Error::ZeroScalar { i: 0, j: 1 });
    }

    #[test]
    fn degenerate_triple() {
        // yx = xy + 1, zx = xz, zy = yz + y
        let r = GAlgebra::new(
            Rationals,
            names(&["x", "y", "z"]),
            vec![
                relation(0, 1, 1, vec![(ex(&[0, 0, 0]), 1)]),
                relation(1, 2, 1, vec![(ex(&[0, 1, 0]), 1)]),
            ],
            OrderingSpec::DegRevLex,
        );
        assert_eq!(r.unwrap_err(), Error::Degenerate { i: 0, j: 1, k: 2 });
    }

    #[test]
    fn reduce_mod_p_rejections() {
        let qc = GAlgebra::new(
            Rationals,
            names(&["x", "y"]),
            vec![relation(0, 1, 2, vec![])],
            OrderingSpec::DegRevLex,
        )
        .unwrap();
        assert_eq!(qc.reduce_mod_p(2).unwrap_err(), Error::BadPrime(2));
        assert!(qc.reduce_mod_p(3).is_ok());

        let sixth = GAlgebra::new(
            Rationals,
            names(&["x", "y"]),
            vec![Relation {
                i: 0,
                j: 1,
                c: q(1),
                d: vec![(ex(&[0, 0]), Rational::new(1.into(), 6.into()))],
            }],
            OrderingSpec::DegRevLex,
        )
        .unwrap();
        assert_eq!(sixth.reduce_mod_p(3).unwrap_err(), Error::BadPrime(3));

        let w = weyl1().reduce_mod_p(32003).unwrap();
        assert_eq!(w.format(&w.mul_monomials(&[0, 1], &[1, 0])), "x*D + 1");
    }

    #[test]
    fn cache_transparency() {
        let a = weyl1();
        let mut b = weyl1();
        b.set_cache(false);
        for (u, v) in [([3u32, 2], [2u32, 4]), ([0, 5], [5, 0]), ([1, 3], [4, 1])] {
            assert_eq!(a.mul_monomials(&u, &v), b.mul_monomials(&u, &v));
        }
    }

    #[test]
    fn formatting() {
        let a = weyl1();
        let f = a.normalize(vec![
            (ex(&[1, 1]), q(-1)),
            (ex(&[0, 0]), Rational::new(1.into(), 2.into())),
        ]);
        assert_eq!(a.format(&f), "-x*D + 1/2");
        assert_eq!(a.format(&NcPoly::zero()), "0");
    }
}

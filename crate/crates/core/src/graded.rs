//! Gradings, Rees-algebra homogenization and Hilbert functions.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::galgebra::{GAlgebra, Relation};
use crate::groebner::{left_gb, reduce_basis, GroebnerBasis, Side};
use crate::lp::LinearProgram;
use crate::orderings::{filtration_weight, OrderingSpec};
use crate::poly::{divides, weighted_degree, Exponent, NcPoly};

/// A positive weight vector making every relation homogeneous, if any.
///
/// Each nonzero tail monomial `a` of `d_ij` imposes `w_i + w_j = |a|_w`;
/// the program also asks `w >= 1` and minimizes the coordinate sum.
pub fn grading_weight<F: Field>(alg: &GAlgebra<F>) -> Option<Vec<u32>> {
    grading_weight_with(alg, &[])
}

/// [`grading_weight`] that additionally makes every polynomial in `polys`
/// homogeneous.
pub fn grading_weight_with<F: Field>(alg: &GAlgebra<F>, polys: &[NcPoly<F>]) -> Option<Vec<u32>> {
    let n = alg.nvars();
    let mut lp = LinearProgram::new(n, vec![1; n]);
    for i in 0..n {
        let mut row = vec![0; n];
        row[i] = 1;
        lp.ge(row, 1);
    }
    for (i, j, support) in alg.tail_supports() {
        for a in support {
            let mut row: Vec<i64> = a.iter().map(|&e| -(e as i64)).collect();
            row[i] += 1;
            row[j] += 1;
            lp.eq(row, 0);
        }
    }
    for f in polys {
        let mut it = f.support();
        if let Some(first) = it.next() {
            for e in it {
                let row: Vec<i64> = first
                    .iter()
                    .zip(e)
                    .map(|(&a, &b)| a as i64 - b as i64)
                    .collect();
                if row.iter().any(|&x| x != 0) {
                    lp.eq(row, 0);
                }
            }
        }
    }
    lp.solve_integral()
        .map(|w| w.into_iter().map(|x| x as u32).collect())
}

/// Which homogenized ordering the Rees algebra carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReesOrdering {
    /// `(w, 1)`-degree, then `>_w` on the base part.
    Weighted,
    /// `(w, 1)`-degree, then the base ordering on the base part.
    Plain,
}

/// The Rees algebra of an algebra with respect to a filtration weight.
/// The homogenizing variable `t` is the last variable and is central.
#[derive(Debug)]
pub struct ReesContext<F: Field> {
    pub base: GAlgebra<F>,
    pub weights: Vec<u32>,
    pub rees: GAlgebra<F>,
    pub kind: ReesOrdering,
}

/// Builds the Rees algebra; `weights` defaults to [`filtration_weight`].
pub fn build_rees<F: Field>(
    alg: &GAlgebra<F>,
    weights: Option<Vec<u32>>,
    kind: ReesOrdering,
) -> Result<ReesContext<F>> {
    let n = alg.nvars();
    let w = weights.unwrap_or_else(|| filtration_weight(alg));
    if w.len() != n || w.contains(&0) {
        return Err(Error::Invalid("filtration weights must be positive".into()));
    }
    let mut rels = Vec::new();
    for r in alg.relations() {
        let top = w[r.i] as u64 + w[r.j] as u64;
        let mut d = Vec::with_capacity(r.d.len());
        for (e, c) in r.d {
            let deg = weighted_degree(&e, &w);
            if deg >= top {
                return Err(Error::Invalid(format!(
                    "weights do not filter the relation of ({}, {})",
                    r.i, r.j
                )));
            }
            let mut he: Exponent = e.clone();
            he.push((top - deg) as u32);
            d.push((he, c));
        }
        rels.push(Relation {
            i: r.i,
            j: r.j,
            c: r.c,
            d,
        });
    }
    let mut names = alg.names().to_vec();
    names.push(fresh_name(alg.names(), "t"));
    let base_order = alg.ordering().clone();
    let spec = match kind {
        ReesOrdering::Weighted => OrderingSpec::HomogWeighted {
            weights: w.clone(),
            base: Box::new(base_order),
        },
        ReesOrdering::Plain => OrderingSpec::Homog {
            weights: w.clone(),
            base: Box::new(base_order),
        },
    };
    let rees = GAlgebra::new(alg.field().clone(), names, rels, spec)
        .map_err(|e| Error::Internal(format!("Rees algebra is invalid: {e}")))?;
    Ok(ReesContext {
        base: alg.with_ordering(alg.ordering().clone())?,
        weights: w,
        rees,
        kind,
    })
}

fn fresh_name(names: &[String], want: &str) -> String {
    let mut cand = want.to_string();
    while names.contains(&cand) {
        cand.push('_');
    }
    cand
}

impl<F: Field> ReesContext<F> {
    /// The homogenizing weight `(w, 1)` on the Rees variables.
    pub fn rees_weights(&self) -> Vec<u32> {
        let mut w = self.weights.clone();
        w.push(1);
        w
    }

    /// `f^h = sum c_a x^a t^(d - |a|_w)` with `d = deg_w f`.
    pub fn homogenize(&self, f: &NcPoly<F>) -> NcPoly<F> {
        let d = match f.weighted_degree(&self.weights) {
            Some(d) => d,
            None => return NcPoly::zero(),
        };
        let terms = f
            .terms()
            .iter()
            .map(|(e, c)| {
                let mut he = e.clone();
                he.push((d - weighted_degree(e, &self.weights)) as u32);
                (he, c.clone())
            })
            .collect();
        self.rees.normalize(terms)
    }

    /// Sets `t = 1`.
    pub fn dehomogenize(&self, f: &NcPoly<F>) -> NcPoly<F> {
        let n = self.base.nvars();
        let terms = f
            .terms()
            .iter()
            .map(|(e, c)| (e[..n].iter().copied().collect::<Exponent>(), c.clone()))
            .collect();
        self.base.normalize(terms)
    }
}

/// A Gröbner basis of the left ideal generated by `gens` in the base
/// algebra, computed from the homogenized generators in the Rees algebra.
pub fn gb_via_homogenization<F: Field>(
    ctx: &ReesContext<F>,
    gens: &[NcPoly<F>],
) -> Result<GroebnerBasis<F>> {
    let hw = ctx.rees_weights();
    let h: Vec<NcPoly<F>> = gens.iter().map(|f| ctx.homogenize(f)).collect();
    let gb = left_gb(&ctx.rees, &h);
    for g in &gb.elements {
        if !g.is_homogeneous(&hw) {
            return Err(Error::Internal(
                "homogenized basis element is not homogeneous".into(),
            ));
        }
    }
    let de: Vec<NcPoly<F>> = gb.elements.iter().map(|g| ctx.dehomogenize(g)).collect();
    Ok(GroebnerBasis {
        elements: reduce_basis(&ctx.base, &de),
        ordering: ctx.base.ordering().clone(),
        reduced: true,
        side: Side::Left,
    })
}

/// `dim_K I_d` for the graded ideal with reduced basis `gb`, using the
/// positive grading weight of the algebra.
pub fn hilbert_function<F: Field>(alg: &GAlgebra<F>, gb: &GroebnerBasis<F>, d: u64) -> Result<u64> {
    let w = grading_weight(alg).ok_or(Error::NotGraded)?;
    Ok(hilbert_function_weighted(&w, &gb.leading_exponents(), d))
}

/// Number of monomials of `w`-degree `d` in the staircase generated by
/// `leads`.
pub fn hilbert_function_weighted(w: &[u32], leads: &[Exponent], d: u64) -> u64 {
    let mut count = 0;
    let mut e = vec![0u32; w.len()];
    enumerate(w, 0, d, &mut e, &mut |m| {
        if leads.iter().any(|l| divides(l, m)) {
            count += 1;
        }
    });
    count
}

fn enumerate(w: &[u32], k: usize, rest: u64, e: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    if k == w.len() {
        if rest == 0 {
            visit(e);
        }
        return;
    }
    let wk = w[k] as u64;
    let mut x = 0u64;
    while x * wk <= rest {
        e[k] = x as u32;
        enumerate(w, k + 1, rest - x * wk, e, visit);
        x += 1;
    }
    e[k] = 0;
}

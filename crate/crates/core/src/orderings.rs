//! Monomial orderings.
//!
//! An [`OrderingSpec`] is a declarative description; it compiles to a
//! [`MonomialOrder`], a flat list of comparison steps (weight rows, lex and
//! reverse-lex scans) that is evaluated on exponent slices.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::galgebra::GAlgebra;
use crate::lp::LinearProgram;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrderingSpec {
    /// Lexicographic, `x_1 > x_2 > ... > x_n`.
    Lex,
    /// Degree reverse lexicographic: total degree first, then the last
    /// nonzero entry of `a - b` is negative for the bigger exponent.
    DegRevLex,
    /// `>_w`: compare `<w, a>` first, then `base`.
    Weighted {
        weights: Vec<u32>,
        base: Box<OrderingSpec>,
    },
    /// Block ordering; the blocks partition the variables and are compared
    /// in sequence. Weights inside a block refer to the block's own list.
    Block(Vec<Block>),
    /// `>_w^h` on `(a, d)` with `t` as the last variable: `(w, 1)`-degree,
    /// then `>_w` (built on `base`) on the `a` part.
    HomogWeighted {
        weights: Vec<u32>,
        base: Box<OrderingSpec>,
    },
    /// `>^h`: `(w, 1)`-degree, then `base` on the `a` part.
    Homog {
        weights: Vec<u32>,
        base: Box<OrderingSpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub vars: Vec<usize>,
    pub order: OrderingSpec,
}

impl Block {
    pub fn new(vars: Vec<usize>, order: OrderingSpec) -> Self {
        Block { vars, order }
    }
}

impl OrderingSpec {
    pub fn weighted(weights: Vec<u32>, base: OrderingSpec) -> Self {
        OrderingSpec::Weighted {
            weights,
            base: Box::new(base),
        }
    }

    /// Two-block ordering with `first` compared before `second`, both
    /// degrevlex.
    pub fn block_dp(first: Vec<usize>, second: Vec<usize>) -> Self {
        OrderingSpec::Block(vec![
            Block::new(first, OrderingSpec::DegRevLex),
            Block::new(second, OrderingSpec::DegRevLex),
        ])
    }

    /// Checks lengths and block partitions for an `n`-variable ring.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            OrderingSpec::Lex | OrderingSpec::DegRevLex => Ok(()),
            OrderingSpec::Weighted { weights, base } => {
                if weights.len() != n {
                    return Err(Error::Invalid(format!(
                        "weight vector has {} entries, expected {n}",
                        weights.len()
                    )));
                }
                base.validate(n)
            }
            OrderingSpec::Block(blocks) => {
                let mut seen = vec![false; n];
                for b in blocks {
                    if b.vars.is_empty() {
                        return Err(Error::Invalid("empty block".into()));
                    }
                    for &v in &b.vars {
                        if v >= n || seen[v] {
                            return Err(Error::Invalid(
                                "blocks must partition the variables".into(),
                            ));
                        }
                        seen[v] = true;
                    }
                    b.order.validate(b.vars.len())?;
                }
                if seen.iter().all(|&s| s) {
                    Ok(())
                } else {
                    Err(Error::Invalid("blocks must partition the variables".into()))
                }
            }
            OrderingSpec::HomogWeighted { weights, base }
            | OrderingSpec::Homog { weights, base } => {
                if n == 0 || weights.len() != n - 1 {
                    return Err(Error::Invalid(
                        "homogenized ordering needs n weights on n + 1 variables".into(),
                    ));
                }
                if weights.contains(&0) {
                    return Err(Error::Invalid(
                        "homogenizing weights must be positive".into(),
                    ));
                }
                base.validate(n - 1)
            }
        }
    }

    pub fn compile(&self, n: usize) -> Result<MonomialOrder> {
        self.validate(n)?;
        let vars: Vec<usize> = (0..n).collect();
        let mut steps = Vec::new();
        self.push_steps(&vars, &mut steps);
        Ok(MonomialOrder { nvars: n, steps })
    }

    fn push_steps(&self, vars: &[usize], out: &mut Vec<Step>) {
        match self {
            OrderingSpec::Lex => out.push(Step::Lex(vars.to_vec())),
            OrderingSpec::DegRevLex => {
                out.push(Step::Weight(vars.iter().map(|&v| (v, 1)).collect()));
                out.push(Step::RevLex(vars.to_vec()));
            }
            OrderingSpec::Weighted { weights, base } => {
                out.push(weight_step(vars, weights));
                base.push_steps(vars, out);
            }
            OrderingSpec::Block(blocks) => {
                for b in blocks {
                    let sub: Vec<usize> = b.vars.iter().map(|&i| vars[i]).collect();
                    b.order.push_steps(&sub, out);
                }
            }
            OrderingSpec::HomogWeighted { weights, base } => {
                let n = vars.len() - 1;
                out.push(homog_step(vars, weights));
                out.push(weight_step(&vars[..n], weights));
                base.push_steps(&vars[..n], out);
            }
            OrderingSpec::Homog { weights, base } => {
                let n = vars.len() - 1;
                out.push(homog_step(vars, weights));
                base.push_steps(&vars[..n], out);
            }
        }
    }

    /// Convenience comparison; compiles on every call.
    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.compile(a.len())
            .expect("ordering does not fit the exponent length")
            .cmp(a, b)
    }

    /// Whether the ordering provably eliminates every variable outside
    /// `keep`: a monomial involving an eliminated variable is bigger than
    /// every monomial in the kept variables only.
    pub fn is_elimination_for(&self, n: usize, keep: &[usize]) -> bool {
        match self.compile(n) {
            Ok(order) => order.is_elimination_for(keep),
            Err(_) => false,
        }
    }

    /// The ordering transported along the variable reversal `i -> n-1-i`.
    pub fn reversed(&self, n: usize) -> OrderingSpec {
        OrderingSpec::Block(vec![Block::new((0..n).rev().collect(), self.clone())])
    }

    /// Human readable form using variable names, in the session syntax.
    pub fn describe(&self, names: &[String]) -> String {
        match self {
            OrderingSpec::Lex => "lp".into(),
            OrderingSpec::DegRevLex => "dp".into(),
            OrderingSpec::Weighted { weights, base } => {
                let w = join_u32(weights);
                match **base {
                    OrderingSpec::DegRevLex => format!("wp({w})"),
                    _ => format!("w({w}; {})", base.describe(names)),
                }
            }
            OrderingSpec::Block(blocks) => {
                let parts: Vec<String> = blocks
                    .iter()
                    .map(|b| {
                        let sub: Vec<String> = b.vars.iter().map(|&i| names[i].clone()).collect();
                        format!("{}: {}", b.order.describe(&sub), sub.join(", "))
                    })
                    .collect();
                format!("block({})", parts.join("; "))
            }
            OrderingSpec::HomogWeighted { weights, base } => {
                format!("homw({}; {})", join_u32(weights), base.describe(names))
            }
            OrderingSpec::Homog { weights, base } => {
                format!("hom({}; {})", join_u32(weights), base.describe(names))
            }
        }
    }
}

fn join_u32(w: &[u32]) -> String {
    w.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for OrderingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = max_var(self) + 1;
        let names: Vec<String> = (0..n).map(|i| format!("x{}", i + 1)).collect();
        f.write_str(&self.describe(&names))
    }
}

fn max_var(spec: &OrderingSpec) -> usize {
    match spec {
        OrderingSpec::Block(blocks) => blocks
            .iter()
            .flat_map(|b| b.vars.iter().copied())
            .max()
            .unwrap_or(0),
        _ => 0,
    }
}

fn weight_step(vars: &[usize], weights: &[u32]) -> Step {
    Step::Weight(
        vars.iter()
            .zip(weights)
            .filter(|(_, &w)| w != 0)
            .map(|(&v, &w)| (v, w as i64))
            .collect(),
    )
}

fn homog_step(vars: &[usize], weights: &[u32]) -> Step {
    let n = vars.len() - 1;
    let mut row: Vec<(usize, i64)> = vars[..n]
        .iter()
        .zip(weights)
        .map(|(&v, &w)| (v, w as i64))
        .collect();
    row.push((vars[n], 1));
    Step::Weight(row)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Step {
    Weight(Vec<(usize, i64)>),
    Lex(Vec<usize>),
    RevLex(Vec<usize>),
}

/// A compiled monomial ordering on `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    nvars: usize,
    steps: Vec<Step>,
}

impl MonomialOrder {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        for step in &self.steps {
            let o = match step {
                Step::Weight(row) => {
                    let mut da = 0i64;
                    let mut db = 0i64;
                    for &(v, w) in row {
                        da += w * a[v] as i64;
                        db += w * b[v] as i64;
                    }
                    da.cmp(&db)
                }
                Step::Lex(vars) => vars
                    .iter()
                    .map(|&v| a[v].cmp(&b[v]))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal),
                Step::RevLex(vars) => vars
                    .iter()
                    .rev()
                    .map(|&v| b[v].cmp(&a[v]))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal),
            };
            if o.is_ne() {
                return o;
            }
        }
        Ordering::Equal
    }

    /// See [`OrderingSpec::is_elimination_for`].
    pub fn is_elimination_for(&self, keep: &[usize]) -> bool {
        let kept = |v: usize| keep.contains(&v);
        // eliminated variables not yet shown to dominate
        let mut open: Vec<usize> = (0..self.nvars).filter(|&v| !kept(v)).collect();
        for step in &self.steps {
            if open.is_empty() {
                return true;
            }
            match step {
                Step::Weight(row) => {
                    if row.iter().any(|&(v, w)| w < 0 || (kept(v) && w != 0)) {
                        return false;
                    }
                    open.retain(|v| !row.iter().any(|&(u, w)| u == *v && w > 0));
                }
                Step::Lex(vars) => {
                    for &v in vars {
                        if kept(v) {
                            break;
                        }
                        open.retain(|&u| u != v);
                    }
                }
                Step::RevLex(_) => return open.is_empty(),
            }
        }
        open.is_empty()
    }
}

/// A weight vector `w` in `N^n` with `w_i + w_j > |a|_w` for every exponent
/// `a` in the support of every tail `d_ij`, minimizing the coordinate sum.
pub fn filtration_weight<F: Field>(alg: &GAlgebra<F>) -> Vec<u32> {
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
            lp.ge(row, 1);
        }
    }
    lp.solve_integral()
        .map(|w| w.into_iter().map(|x| x as u32).collect())
        .expect("a filtration weight always exists for a G-algebra")
}

/// An integer solution of the elimination program: `w_i = 0` on `keep`,
/// `w_i >= 1` elsewhere, `w_i + w_j >= |a|_w` on all tails. `None` when no
/// such weight exists.
pub fn elimination_weight<F: Field>(alg: &GAlgebra<F>, keep: &[usize]) -> Option<Vec<u32>> {
    let n = alg.nvars();
    let mut lp = LinearProgram::new(n, vec![1; n]);
    for i in 0..n {
        let mut row = vec![0; n];
        row[i] = 1;
        if keep.contains(&i) {
            lp.eq(row, 0);
        } else {
            lp.ge(row, 1);
        }
    }
    for (i, j, support) in alg.tail_supports() {
        for a in support {
            let mut row: Vec<i64> = a.iter().map(|&e| -(e as i64)).collect();
            row[i] += 1;
            row[j] += 1;
            lp.ge(row, 0);
        }
    }
    lp.solve_integral()
        .map(|w| w.into_iter().map(|x| x as u32).collect())
}

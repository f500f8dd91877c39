//! A tiny exact simplex solver for the weight-vector programs.
//!
//! Problems are stated as `minimize c.x` subject to `A x (>=|=) b`,
//! `x >= 0`, and solved over the rationals with Bland's rule.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arithmetic::Rational;
use num_bigint::BigInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    GreaterEq,
    Equal,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<i64>,
    pub relation: Relation,
    pub rhs: i64,
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub nvars: usize,
    pub objective: Vec<i64>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(nvars: usize, objective: Vec<i64>) -> Self {
        assert_eq!(objective.len(), nvars);
        LinearProgram {
            nvars,
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn ge(&mut self, coeffs: Vec<i64>, rhs: i64) {
        self.constraints.push(Constraint {
            coeffs,
            relation: Relation::GreaterEq,
            rhs,
        });
    }

    pub fn eq(&mut self, coeffs: Vec<i64>, rhs: i64) {
        self.constraints.push(Constraint {
            coeffs,
            relation: Relation::Equal,
            rhs,
        });
    }

    /// An optimal vertex, or `None` when infeasible. The objective is
    /// assumed to be bounded below on the feasible set (all our programs
    /// minimize a sum of non-negative variables).
    pub fn solve(&self) -> Option<Vec<Rational>> {
        Tableau::build(self).and_then(|t| t.run())
    }

    /// The optimal vertex scaled to the smallest integer multiple.
    pub fn solve_integral(&self) -> Option<Vec<u64>> {
        let x = self.solve()?;
        let lcm = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        x.iter()
            .map(|q| {
                let v = q.numer() * (&lcm / q.denom());
                let digits = v.to_u64_digits().1;
                match digits.len() {
                    0 => Some(0),
                    1 => Some(digits[0]),
                    _ => None,
                }
            })
            .collect()
    }
}

struct Tableau {
    // rows: constraints, last column is rhs
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
    nstruct: usize,
    artificial: Vec<usize>,
    objective: Vec<Rational>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Option<Self> {
        let m = lp.constraints.len();
        let nsurplus = lp
            .constraints
            .iter()
            .filter(|c| c.relation == Relation::GreaterEq)
            .count();
        let nstruct = lp.nvars;
        let ncols = nstruct + nsurplus + m;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut artificial = Vec::with_capacity(m);
        let mut surplus_idx = nstruct;
        for (r, c) in lp.constraints.iter().enumerate() {
            assert_eq!(c.coeffs.len(), nstruct);
            let mut row = vec![Rational::zero(); ncols + 1];
            let sign: i64 = if c.rhs < 0 { -1 } else { 1 };
            for (j, &a) in c.coeffs.iter().enumerate() {
                row[j] = Rational::from_integer(BigInt::from(a * sign));
            }
            if c.relation == Relation::GreaterEq {
                row[surplus_idx] = Rational::from_integer(BigInt::from(-sign));
                surplus_idx += 1;
            }
            let art = nstruct + nsurplus + r;
            row[art] = Rational::one();
            row[ncols] = Rational::from_integer(BigInt::from(c.rhs * sign));
            rows.push(row);
            basis.push(art);
            artificial.push(art);
        }
        let mut objective = vec![Rational::zero(); ncols];
        for (j, &c) in lp.objective.iter().enumerate() {
            objective[j] = Rational::from_integer(BigInt::from(c));
        }
        Some(Tableau {
            rows,
            basis,
            ncols,
            nstruct,
            artificial,
            objective,
        })
    }

    fn run(mut self) -> Option<Vec<Rational>> {
        let first_art = self.artificial.first().copied().unwrap_or(self.ncols);
        // phase one: minimize the sum of artificials
        let mut phase1 = vec![Rational::zero(); self.ncols];
        for &a in &self.artificial {
            phase1[a] = Rational::one();
        }
        self.optimize(&phase1, self.ncols);
        let infeasibility: Rational = self
            .basis
            .iter()
            .zip(&self.rows)
            .filter(|(b, _)| **b >= first_art)
            .map(|(_, row)| row[self.ncols].clone())
            .sum();
        if !infeasibility.is_zero() {
            return None;
        }
        // drive remaining (zero) artificials out of the basis where possible
        for r in 0..self.rows.len() {
            if self.basis[r] >= first_art {
                if let Some(j) = (0..first_art).find(|&j| !self.rows[r][j].is_zero()) {
                    self.pivot(r, j);
                }
            }
        }
        let objective = self.objective.clone();
        self.optimize(&objective, first_art);
        let mut x = vec![Rational::zero(); self.nstruct];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.nstruct {
                x[b] = self.rows[r][self.ncols].clone();
            }
        }
        Some(x)
    }

    /// Primal simplex with Bland's rule over columns `< allowed`.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) {
        loop {
            // reduced costs: c_j - c_B B^{-1} A_j
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !self.rows[r][j].is_zero() {
                        rc -= &cost[b] * &self.rows[r][j];
                    }
                }
                if rc.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else { return };
            let mut leaving: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][j];
                if a.is_positive() {
                    let ratio = &self.rows[r][self.ncols] / a;
                    let better = match &leaving {
                        None => true,
                        Some((lr, best)) => {
                            ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leaving = Some((r, ratio));
                    }
                }
            }
            match leaving {
                Some((r, _)) => self.pivot(r, j),
                // unbounded; cannot happen for our programs
                None => return,
            }
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let piv = self.rows[r][j].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &piv;
        }
        let pivot_row = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = j;
    }
}

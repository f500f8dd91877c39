//! Exponent vectors and PBW-form polynomials.
//!
//! A polynomial is a list of `(exponent, coefficient)` pairs with nonzero
//! coefficients, sorted strictly descending under the ambient algebra's
//! monomial ordering. Operations that depend on the ordering or on the
//! multiplication live on [`crate::galgebra::GAlgebra`].

use smallvec::SmallVec;

use crate::field::Field;

/// Exponent vector `a` of the standard monomial `x^a`.
pub type Exponent = SmallVec<[u32; 8]>;

pub fn zero_exponent(n: usize) -> Exponent {
    SmallVec::from_elem(0, n)
}

pub fn unit_exponent(n: usize, i: usize) -> Exponent {
    let mut e = zero_exponent(n);
    e[i] = 1;
    e
}

pub fn exp_add(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a - b`, assuming `b` divides `a`.
pub fn exp_sub(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Componentwise `b <= a`.
#[inline]
pub fn divides(b: &[u32], a: &[u32]) -> bool {
    b.iter().zip(a).all(|(x, y)| x <= y)
}

pub fn exp_lcm(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn total_degree(a: &[u32]) -> u64 {
    a.iter().map(|&x| x as u64).sum()
}

pub fn weighted_degree(a: &[u32], w: &[u32]) -> u64 {
    a.iter().zip(w).map(|(&x, &y)| x as u64 * y as u64).sum()
}

pub fn is_zero_exponent(a: &[u32]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// A polynomial in PBW normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcPoly<F: Field> {
    pub(crate) terms: Vec<(Exponent, F::Elem)>,
}

impl<F: Field> Default for NcPoly<F> {
    fn default() -> Self {
        NcPoly { terms: Vec::new() }
    }
}

impl<F: Field> NcPoly<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Wraps terms that are already sorted descending and free of zeros.
    pub(crate) fn from_sorted(terms: Vec<(Exponent, F::Elem)>) -> Self {
        NcPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms, descending under the ambient ordering.
    pub fn terms(&self) -> &[(Exponent, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Exponent, F::Elem)> {
        self.terms
    }

    /// Leading exponent and coefficient, `None` for zero.
    pub fn leading(&self) -> Option<(&Exponent, &F::Elem)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    pub fn leading_exponent(&self) -> Option<&Exponent> {
        self.terms.first().map(|(e, _)| e)
    }

    pub fn coefficient(&self, e: &[u32]) -> Option<&F::Elem> {
        self.terms
            .iter()
            .find(|(x, _)| x.as_slice() == e)
            .map(|(_, c)| c)
    }

    /// Newton diagram.
    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.iter().map(|(e, _)| e)
    }

    /// `w`-weighted degree, `None` for zero.
    pub fn weighted_degree(&self, w: &[u32]) -> Option<u64> {
        self.support().map(|e| weighted_degree(e, w)).max()
    }

    pub fn is_homogeneous(&self, w: &[u32]) -> bool {
        let mut degs = self.support().map(|e| weighted_degree(e, w));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// `true` when every monomial only involves variables in `vars`.
    pub fn involves_only(&self, vars: &[usize]) -> bool {
        self.support().all(|e| {
            e.iter()
                .enumerate()
                .all(|(i, &x)| x == 0 || vars.contains(&i))
        })
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && is_zero_exponent(&self.terms[0].0)
    }
}

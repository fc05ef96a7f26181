use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{axpy, Scalar, SparseVec};

/// Finite linear combination of basis words, keyed by word index in the owning algebra.
///
/// Zero coefficients are never stored, so the empty map is the zero element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: SparseVec,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn basis(word: usize) -> Self {
        AlgebraElement { terms: BTreeMap::from([(word, Scalar::one())]) }
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut e = AlgebraElement::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn from_sparse(terms: SparseVec) -> Self {
        AlgebraElement { terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn add_term(&mut self, word: usize, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, factor: &Scalar, other: &AlgebraElement) {
        axpy(&mut self.terms, factor, &other.terms);
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

    pub fn coefficient(&self, word: usize) -> Scalar {
        self.terms.get(&word).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.terms.iter().map(|(&w, c)| (w, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn as_sparse(&self) -> &SparseVec {
        &self.terms
    }

    pub fn into_sparse(self) -> SparseVec {
        self.terms
    }

    pub fn scaled(&self, factor: &Scalar) -> AlgebraElement {
        AlgebraElement { terms: super::scalar::scale(&self.terms, factor) }
    }

    /// Renames word indices through `f`; terms mapped to the same index are summed.
    pub fn map_words(&self, mut f: impl FnMut(usize) -> usize) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms.iter().map(|(&w, c)| (f(w), c.clone())))
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), rhs);
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), rhs);
        out
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scaled(&-Scalar::one())
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*w{w}")?;
        }
        Ok(())
    }
}

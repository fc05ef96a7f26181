//! Quotients of graded algebras by two-sided ideals.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::algebra::{BasisProduct, BasisWord, GradedAlgebra, ProductRule};
use super::element::AlgebraElement;
use super::ideal::GradedSubspace;
use super::AlgebraError;

#[derive(Debug)]
struct Reduction {
    base: Arc<GradedAlgebra>,
    ideal: GradedSubspace,
    reps: Vec<usize>,
    rep_of: HashMap<usize, usize>,
}

impl Reduction {
    fn normal_form(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (g, part) in self.base.split_by_grade(x) {
            let local = self.base.to_local(&part);
            let reduced = match self.ideal.grade(g) {
                Some(s) => s.reduce(&local),
                None => local,
            };
            for (w, c) in self.base.from_local(g, &reduced).terms() {
                let q = self.rep_of[&w];
                out.add_term(q, c.clone());
            }
        }
        out
    }
}

impl ProductRule for Reduction {
    fn product(&self, left: usize, right: usize) -> BasisProduct {
        match self.base.basis_product(self.reps[left], self.reps[right]) {
            BasisProduct::Zero => BasisProduct::Zero,
            BasisProduct::Overflow => BasisProduct::Overflow,
            BasisProduct::Element(e) => {
                let nf = self.normal_form(&e);
                if nf.is_zero() {
                    BasisProduct::Zero
                } else {
                    BasisProduct::Element(nf)
                }
            }
        }
    }
}

/// `A / I` with representatives chosen among the words of `A` that carry no pivot of `I`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    algebra: Arc<GradedAlgebra>,
    reduction: Arc<Reduction>,
}

impl QuotientAlgebra {
    /// The quotient as an algebra in its own right; its words are named after their
    /// representatives.
    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn base(&self) -> &Arc<GradedAlgebra> {
        &self.reduction.base
    }

    pub fn ideal(&self) -> &GradedSubspace {
        &self.reduction.ideal
    }

    /// Base word representing each quotient word.
    pub fn representatives(&self) -> &[usize] {
        &self.reduction.reps
    }

    /// Reduces an element of the base algebra to quotient coordinates.
    pub fn normal_form(&self, x: &AlgebraElement) -> AlgebraElement {
        self.reduction.normal_form(x)
    }

    /// Canonical lift of a quotient element back to the base algebra.
    pub fn lift(&self, q: &AlgebraElement) -> AlgebraElement {
        q.map_words(|w| self.reduction.reps[w])
    }

    /// Reduces in place within the base algebra: `lift(normal_form(x))`.
    pub fn reduce(&self, x: &AlgebraElement) -> AlgebraElement {
        self.lift(&self.normal_form(x))
    }
}

pub fn quotient(base: Arc<GradedAlgebra>, ideal: GradedSubspace) -> Result<QuotientAlgebra, AlgebraError> {
    if !ideal.is_two_sided(&base) {
        return Err(AlgebraError::IdealNotClosed("a product with a basis word leaves the subspace".into()));
    }
    let mut reps = Vec::new();
    for (g, words) in base.grades() {
        match ideal.grade(g) {
            Some(s) => reps.extend(s.non_pivots().into_iter().map(|k| words[k])),
            None => reps.extend_from_slice(words),
        }
    }
    reps.sort_unstable();
    let rep_of: HashMap<usize, usize> = reps.iter().enumerate().map(|(q, &w)| (w, q)).collect();
    let words: Vec<BasisWord> = reps.iter().map(|&w| base.word(w).clone()).collect();
    let identities: BTreeMap<usize, usize> =
        base.identities().iter().filter_map(|(&o, w)| rep_of.get(w).map(|&q| (o, q))).collect();
    let reduction = Arc::new(Reduction { base: base.clone(), ideal, reps, rep_of });
    let algebra = GradedAlgebra::assemble(
        base.objects().to_vec(),
        words,
        identities,
        base.grading(),
        base.is_truncated(),
        reduction.clone(),
    )?;
    Ok(QuotientAlgebra { algebra: Arc::new(algebra), reduction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::algebra::{AlgebraBuilder, Grading};
    use crate::exactalg::ideal::two_sided_ideal;

    // Free category on a commutative-square shape: 4 -a-> 2 -c-> 1, 4 -b-> 3 -d-> 1.
    fn square() -> GradedAlgebra {
        let mut b = AlgebraBuilder::new(Grading::Composable);
        let [v4, v2, v3, v1] = ["4", "2", "3", "1"].map(|n| b.object(n));
        let e: Vec<usize> = [v4, v2, v3, v1].iter().map(|&v| b.word(format!("e{v}"), v, v)).collect();
        let a = b.word("a", v4, v2);
        let bw = b.word("b", v4, v3);
        let c = b.word("c", v2, v1);
        let d = b.word("d", v3, v1);
        let ac = b.word("ac", v4, v1);
        let bd = b.word("bd", v4, v1);
        for (i, &v) in [v4, v2, v3, v1].iter().enumerate() {
            b.identity(v, e[i]);
            b.product(e[i], e[i], AlgebraElement::basis(e[i]));
        }
        let all = [(a, v4, v2), (bw, v4, v3), (c, v2, v1), (d, v3, v1), (ac, v4, v1), (bd, v4, v1)];
        for (w, s, t) in all {
            b.product(e[s], w, AlgebraElement::basis(w));
            b.product(w, e[t], AlgebraElement::basis(w));
        }
        b.product(a, c, AlgebraElement::basis(ac));
        b.product(bw, d, AlgebraElement::basis(bd));
        b.build().unwrap()
    }

    #[test]
    fn zero_ideal_quotient_is_identity() {
        let alg = Arc::new(square());
        let q = quotient(alg.clone(), GradedSubspace::zero()).unwrap();
        assert_eq!(q.algebra().dim(), alg.dim());
        let x = alg.basis_element("ac").unwrap();
        assert_eq!(q.reduce(&x), x);
    }

    #[test]
    fn square_relation_collapses_one_dimension() {
        let alg = Arc::new(square());
        let rel = &alg.basis_element("ac").unwrap() - &alg.basis_element("bd").unwrap();
        let ideal = two_sided_ideal(&alg, std::slice::from_ref(&rel)).unwrap();
        assert_eq!(ideal.total_rank(), 1);
        let q = quotient(alg.clone(), ideal).unwrap();
        assert_eq!(q.algebra().dim(), alg.dim() - 1);
        assert!(q.normal_form(&rel).is_zero());
        let x = alg.basis_element("bd").unwrap();
        let nf = q.normal_form(&x);
        assert_eq!(q.normal_form(&q.lift(&nf)), nf);
        let assoc = q.algebra().check_associativity(10_000, 1);
        assert!(assoc.holds());
    }

    #[test]
    fn raw_span_rejected() {
        let alg = Arc::new(square());
        let s = GradedSubspace::span(&alg, &[alg.basis_element("a").unwrap()]);
        assert!(matches!(quotient(alg, s), Err(AlgebraError::IdealNotClosed(_))));
    }
}

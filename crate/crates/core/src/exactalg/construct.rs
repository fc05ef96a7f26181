//! Coproducts (free products) and direct products of graded algebras.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use super::algebra::{BasisProduct, BasisWord, GradedAlgebra, Grading, ProductRule};
use super::element::AlgebraElement;
use super::morphism::Morphism;
use super::scalar::Scalar;
use super::AlgebraError;

/// Which factor a tensor factor comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

type Factor = (Side, usize);

fn names_clash(a: &GradedAlgebra, b: &GradedAlgebra) -> bool {
    let names: HashSet<&str> = a.words().iter().map(|w| w.name.as_str()).collect();
    b.words().iter().any(|w| names.contains(w.name.as_str()))
}

fn union_objects(a: &GradedAlgebra, b: &GradedAlgebra) -> (Vec<String>, Vec<usize>, Vec<usize>) {
    let mut objects: Vec<String> = a.objects().to_vec();
    let left: Vec<usize> = (0..objects.len()).collect();
    let right = b
        .objects()
        .iter()
        .map(|o| match objects.iter().position(|x| x == o) {
            Some(i) => i,
            None => {
                objects.push(o.clone());
                objects.len() - 1
            }
        })
        .collect();
    (objects, left, right)
}

#[derive(Debug)]
struct CoproductRule {
    left: Arc<GradedAlgebra>,
    right: Arc<GradedAlgebra>,
    cap: usize,
    words: Vec<Vec<Factor>>,
    lookup: HashMap<Vec<Factor>, usize>,
}

impl CoproductRule {
    fn factor_product(&self, x: Factor, y: Factor) -> BasisProduct {
        match x.0 {
            Side::Left => self.left.basis_product(x.1, y.1),
            Side::Right => self.right.basis_product(x.1, y.1),
        }
    }
}

impl ProductRule for CoproductRule {
    fn product(&self, l: usize, r: usize) -> BasisProduct {
        let (x, y) = (&self.words[l], &self.words[r]);
        let (last, first) = (*x.last().unwrap(), y[0]);
        if last.0 != first.0 {
            if x.len() + y.len() > self.cap {
                return BasisProduct::Overflow;
            }
            let mut w = x.clone();
            w.extend_from_slice(y);
            return BasisProduct::Element(AlgebraElement::basis(self.lookup[&w]));
        }
        match self.factor_product(last, first) {
            BasisProduct::Zero => BasisProduct::Zero,
            BasisProduct::Overflow => BasisProduct::Overflow,
            BasisProduct::Element(e) => {
                if x.len() + y.len() - 1 > self.cap {
                    return BasisProduct::Overflow;
                }
                let mut out = AlgebraElement::zero();
                for (t, c) in e.terms() {
                    let mut w = x[..x.len() - 1].to_vec();
                    w.push((last.0, t));
                    w.extend_from_slice(&y[1..]);
                    out.add_term(self.lookup[&w], c.clone());
                }
                if out.is_zero() {
                    BasisProduct::Zero
                } else {
                    BasisProduct::Element(out)
                }
            }
        }
    }
}

/// The coproduct `A ∐ B` truncated to alternating words of at most `cap` factors.
#[derive(Clone, Debug)]
pub struct Coproduct {
    algebra: Arc<GradedAlgebra>,
    rule: Arc<CoproductRule>,
}

impl Coproduct {
    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn left(&self) -> &Arc<GradedAlgebra> {
        &self.rule.left
    }

    pub fn right(&self) -> &Arc<GradedAlgebra> {
        &self.rule.right
    }

    pub fn cap(&self) -> usize {
        self.rule.cap
    }

    /// Tensor factors of a word.
    pub fn factors(&self, word: usize) -> &[(Side, usize)] {
        &self.rule.words[word]
    }

    pub fn word_of(&self, factors: &[(Side, usize)]) -> Option<usize> {
        self.rule.lookup.get(factors).copied()
    }

    pub fn injection(&self, side: Side) -> Result<Morphism, AlgebraError> {
        let factor = match side {
            Side::Left => self.left().clone(),
            Side::Right => self.right().clone(),
        };
        let images = (0..factor.dim()).map(|w| AlgebraElement::basis(self.rule.lookup[&vec![(side, w)]])).collect();
        Morphism::new(factor, self.algebra.clone(), images)
    }

    /// The map `[f, g]` out of the coproduct: `x1 ⊗ … ⊗ xn ↦ f_1(x1) × … × f_n(xn)`.
    pub fn fold(&self, f: &Morphism, g: &Morphism) -> Result<Morphism, AlgebraError> {
        let target = f.codomain().clone();
        if target.dim() != g.codomain().dim() {
            return Err(AlgebraError::ShapeMismatch("fold maps need a common codomain".into()));
        }
        let mut images = Vec::with_capacity(self.algebra.dim());
        for w in &self.rule.words {
            let parts: Vec<&AlgebraElement> = w
                .iter()
                .map(|&(s, i)| match s {
                    Side::Left => f.image_of(i),
                    Side::Right => g.image_of(i),
                })
                .collect();
            images.push(target.multiply_all(&parts)?);
        }
        Morphism::new(self.algebra.clone(), target, images)
    }

    /// `f ∐ g` into another coproduct, applied factor by factor.
    pub fn factorwise(&self, f: &Morphism, g: &Morphism, target: &Coproduct) -> Result<Morphism, AlgebraError> {
        let mut images = Vec::with_capacity(self.algebra.dim());
        for w in &self.rule.words {
            let mut acc: Vec<(Vec<Factor>, Scalar)> = vec![(Vec::new(), Scalar::from_integer(1.into()))];
            for &(s, i) in w {
                let img = match s {
                    Side::Left => f.image_of(i),
                    Side::Right => g.image_of(i),
                };
                let mut next = Vec::new();
                for (prefix, c) in &acc {
                    for (t, d) in img.terms() {
                        let mut p = prefix.clone();
                        p.push((s, t));
                        next.push((p, c * d));
                    }
                }
                acc = next;
            }
            let mut image = AlgebraElement::zero();
            for (p, c) in acc {
                let idx = target.word_of(&p).ok_or_else(|| {
                    AlgebraError::ShapeMismatch("factorwise image outside the target coproduct".into())
                })?;
                image.add_term(idx, c);
            }
            images.push(image);
        }
        Morphism::new(self.algebra.clone(), target.algebra.clone(), images)
    }
}

/// Counts alternating words of length `1..=cap` over factor bases of sizes `a` and `b`.
pub fn alternating_word_count(a: usize, b: usize, cap: usize) -> usize {
    let mut total = 0;
    for n in 1..=cap {
        let (hi, lo) = (n.div_ceil(2) as u32, (n / 2) as u32);
        total += a.pow(hi) * b.pow(lo) + b.pow(hi) * a.pow(lo);
    }
    total
}

pub fn coproduct(a: Arc<GradedAlgebra>, b: Arc<GradedAlgebra>, cap: usize) -> Result<Coproduct, AlgebraError> {
    if cap == 0 {
        return Err(AlgebraError::ShapeMismatch("word cap must be at least 1".into()));
    }
    let (objects, lmap, rmap) = union_objects(&a, &b);
    let tag = names_clash(&a, &b);
    let factor_word = |(s, i): Factor| -> &BasisWord {
        match s {
            Side::Left => a.word(i),
            Side::Right => b.word(i),
        }
    };
    let factor_name = |f: Factor| -> String {
        let w = factor_word(f);
        match (tag, f.0) {
            (false, _) => w.name.clone(),
            (true, Side::Left) => format!("{}@1", w.name),
            (true, Side::Right) => format!("{}@2", w.name),
        }
    };
    let obj = |s: Side, o: usize| match s {
        Side::Left => lmap[o],
        Side::Right => rmap[o],
    };

    let mut words: Vec<Vec<Factor>> = Vec::new();
    let mut frontier: Vec<Vec<Factor>> =
        (0..a.dim()).map(|i| vec![(Side::Left, i)]).chain((0..b.dim()).map(|i| vec![(Side::Right, i)])).collect();
    for _ in 0..cap {
        let mut next = Vec::new();
        for w in &frontier {
            let (other, n) = match w.last().unwrap().0 {
                Side::Left => (Side::Right, b.dim()),
                Side::Right => (Side::Left, a.dim()),
            };
            for i in 0..n {
                let mut x = w.clone();
                x.push((other, i));
                next.push(x);
            }
        }
        words.append(&mut frontier);
        frontier = next;
    }
    let lookup: HashMap<Vec<Factor>, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();

    let basis: Vec<BasisWord> = words
        .iter()
        .map(|w| {
            let first = w[0];
            let last = *w.last().unwrap();
            BasisWord {
                name: w.iter().map(|&f| factor_name(f)).collect::<Vec<_>>().join(" ⊗ "),
                source: obj(first.0, factor_word(first).source),
                target: obj(last.0, factor_word(last).target),
            }
        })
        .collect();
    // Identities stay units only when one factor is empty; in a genuine free product
    // e_a ⊗ y is a new word.
    let (identities, grading): (BTreeMap<usize, usize>, Grading) = match (a.dim(), b.dim()) {
        (_, 0) => {
            (a.identities().iter().map(|(&o, &w)| (lmap[o], lookup[&vec![(Side::Left, w)]])).collect(), a.grading())
        }
        (0, _) => {
            (b.identities().iter().map(|(&o, &w)| (rmap[o], lookup[&vec![(Side::Right, w)]])).collect(), b.grading())
        }
        _ => (BTreeMap::new(), Grading::Free),
    };
    let truncated = (a.dim() > 0 && b.dim() > 0) || a.is_truncated() || b.is_truncated();
    let rule = Arc::new(CoproductRule { left: a, right: b, cap, words, lookup });
    let algebra = GradedAlgebra::assemble(objects, basis, identities, grading, truncated, rule.clone())?;
    Ok(Coproduct { algebra: Arc::new(algebra), rule })
}

#[derive(Debug)]
struct SumRule {
    left: Arc<GradedAlgebra>,
    right: Arc<GradedAlgebra>,
}

impl ProductRule for SumRule {
    fn product(&self, l: usize, r: usize) -> BasisProduct {
        let n = self.left.dim();
        match (l < n, r < n) {
            (true, true) => self.left.basis_product(l, r),
            (false, false) => match self.right.basis_product(l - n, r - n) {
                BasisProduct::Element(e) => BasisProduct::Element(e.map_words(|w| w + n)),
                other => other,
            },
            _ => BasisProduct::Zero,
        }
    }
}

/// `A × B` with componentwise multiplication; objects and words of `B` follow those of `A`.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    algebra: Arc<GradedAlgebra>,
    left: Arc<GradedAlgebra>,
    right: Arc<GradedAlgebra>,
}

impl DirectProduct {
    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    /// Index of a right-factor word in the product.
    pub fn right_word(&self, w: usize) -> usize {
        self.left.dim() + w
    }

    pub fn projection(&self, side: Side) -> Result<Morphism, AlgebraError> {
        let n = self.left.dim();
        let (target, images) = match side {
            Side::Left => (
                self.left.clone(),
                (0..self.algebra.dim())
                    .map(|w| if w < n { AlgebraElement::basis(w) } else { AlgebraElement::zero() })
                    .collect(),
            ),
            Side::Right => (
                self.right.clone(),
                (0..self.algebra.dim())
                    .map(|w| if w < n { AlgebraElement::zero() } else { AlgebraElement::basis(w - n) })
                    .collect(),
            ),
        };
        Morphism::new(self.algebra.clone(), target, images)
    }

    pub fn injection(&self, side: Side) -> Result<Morphism, AlgebraError> {
        let n = self.left.dim();
        let (source, images) = match side {
            Side::Left => (self.left.clone(), (0..n).map(AlgebraElement::basis).collect()),
            Side::Right => (self.right.clone(), (0..self.right.dim()).map(|w| AlgebraElement::basis(w + n)).collect()),
        };
        Morphism::new(source, self.algebra.clone(), images)
    }
}

pub fn direct_product(a: Arc<GradedAlgebra>, b: Arc<GradedAlgebra>) -> Result<DirectProduct, AlgebraError> {
    let obj_clash = a.objects().iter().any(|o| b.objects().contains(o));
    let word_clash = names_clash(&a, &b);
    let tag = |s: &str, clash: bool, k: u8| if clash { format!("{s}@{k}") } else { s.to_string() };
    let n_obj = a.objects().len();
    let objects: Vec<String> = a
        .objects()
        .iter()
        .map(|o| tag(o, obj_clash, 1))
        .chain(b.objects().iter().map(|o| tag(o, obj_clash, 2)))
        .collect();
    let words: Vec<BasisWord> = a
        .words()
        .iter()
        .map(|w| BasisWord { name: tag(&w.name, word_clash, 1), ..w.clone() })
        .chain(b.words().iter().map(|w| BasisWord {
            name: tag(&w.name, word_clash, 2),
            source: w.source + n_obj,
            target: w.target + n_obj,
        }))
        .collect();
    let identities: BTreeMap<usize, usize> = a
        .identities()
        .iter()
        .map(|(&o, &w)| (o, w))
        .chain(b.identities().iter().map(|(&o, &w)| (o + n_obj, w + a.dim())))
        .collect();
    let grading =
        if a.grading() == Grading::Free || b.grading() == Grading::Free { Grading::Free } else { Grading::Composable };
    let truncated = a.is_truncated() || b.is_truncated();
    let rule = Arc::new(SumRule { left: a.clone(), right: b.clone() });
    let algebra = GradedAlgebra::assemble(objects, words, identities, grading, truncated, rule)?;
    Ok(DirectProduct { algebra: Arc::new(algebra), left: a, right: b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::algebra::AlgebraBuilder;
    use crate::exactalg::scalar::int;

    /// `R` as the convolution algebra of the one-morphism category.
    fn r1(obj: &str, id: &str) -> Arc<GradedAlgebra> {
        let mut b = AlgebraBuilder::new(Grading::Composable);
        let o = b.object(obj);
        let e = b.word(id, o, o);
        b.identity(o, e);
        b.product(e, e, AlgebraElement::basis(e));
        Arc::new(b.build().unwrap())
    }

    #[test]
    fn coproduct_with_zero_is_identity_shaped() {
        let a = r1("a", "e_a");
        let z = Arc::new(GradedAlgebra::zero());
        let c = coproduct(a.clone(), z, 4).unwrap();
        assert_eq!(c.algebra().dim(), 1);
        assert_eq!(c.algebra().named_dimension_counts(), a.named_dimension_counts());
        let e = AlgebraElement::basis(0);
        assert_eq!(c.algebra().multiply(&e, &e).unwrap(), e);
    }

    #[test]
    fn alternating_words_concatenate_or_merge() {
        let a = r1("a", "x");
        let b = r1("b", "y");
        let c = coproduct(a, b, 4).unwrap();
        assert_eq!(c.algebra().dim(), alternating_word_count(1, 1, 4));
        let alg = c.algebra();
        let xy = alg.basis_element("x ⊗ y").unwrap();
        let xyxy = alg.multiply(&xy, &xy).unwrap();
        assert_eq!(xyxy, alg.basis_element("x ⊗ y ⊗ x ⊗ y").unwrap());
        let yx = alg.basis_element("y ⊗ x").unwrap();
        // junction y·y merges to y
        assert_eq!(alg.multiply(&xy, &yx).unwrap(), alg.basis_element("x ⊗ y ⊗ x").unwrap());
        assert!(matches!(alg.multiply(&xyxy, &xy), Err(AlgebraError::Truncated { .. })));
        assert!(alg.check_associativity(10_000, 0).holds());
    }

    #[test]
    fn product_of_two_copies_of_r() {
        let p = direct_product(r1("a", "e_a"), r1("b", "e_b")).unwrap();
        let alg = p.algebra();
        assert_eq!(alg.dim(), 2);
        let x = AlgebraElement::from_terms([(0, int(2)), (1, int(3))]);
        let y = AlgebraElement::from_terms([(0, int(5)), (1, int(7))]);
        assert_eq!(alg.multiply(&x, &y).unwrap(), AlgebraElement::from_terms([(0, int(10)), (1, int(21))]));
        let proj = p.projection(Side::Left).unwrap();
        assert!(proj.is_algebra_map());
    }
}

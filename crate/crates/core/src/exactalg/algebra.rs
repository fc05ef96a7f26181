//! Bigraded non-unital associative algebras with a finite basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::element::AlgebraElement;
use super::scalar::SparseVec;
use super::AlgebraError;

/// `(source, target)` pair of object indices; the bigrading of a basis word.
pub type Grade = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisWord {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

impl BasisWord {
    pub fn grade(&self) -> Grade {
        (self.source, self.target)
    }
}

/// How products interact with the bigrading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// Convolution-style: `x * y = 0` unless `target(x) == source(y)`.
    Composable,
    /// Free products: any two words may multiply; the product lands in `(source(x), target(y))`.
    Free,
}

/// Product of two basis words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisProduct {
    Zero,
    Element(AlgebraElement),
    /// The product exists but lies beyond the algebra's truncation.
    Overflow,
}

/// Multiplication rule on basis words. Implementations only see composable pairs when the
/// algebra uses [`Grading::Composable`].
pub(crate) trait ProductRule: Send + Sync + fmt::Debug {
    fn product(&self, left: usize, right: usize) -> BasisProduct;
}

#[derive(Debug, Default)]
pub(crate) struct TableRule {
    pub(crate) table: HashMap<(usize, usize), AlgebraElement>,
    pub(crate) overflow: std::collections::HashSet<(usize, usize)>,
}

impl ProductRule for TableRule {
    fn product(&self, left: usize, right: usize) -> BasisProduct {
        if self.overflow.contains(&(left, right)) {
            return BasisProduct::Overflow;
        }
        match self.table.get(&(left, right)) {
            Some(e) => BasisProduct::Element(e.clone()),
            None => BasisProduct::Zero,
        }
    }
}

/// Concatenation in a free category: each word is an item sequence starting at an object.
#[derive(Debug)]
pub(crate) struct ConcatRule {
    pub(crate) sources: Vec<usize>,
    pub(crate) items: Vec<Vec<u32>>,
    pub(crate) lookup: HashMap<(usize, Vec<u32>), usize>,
}

impl ConcatRule {
    pub(crate) fn new(sources: Vec<usize>, items: Vec<Vec<u32>>) -> Self {
        let lookup = sources.iter().zip(&items).enumerate().map(|(i, (&s, it))| ((s, it.clone()), i)).collect();
        ConcatRule { sources, items, lookup }
    }
}

impl ProductRule for ConcatRule {
    fn product(&self, left: usize, right: usize) -> BasisProduct {
        let mut seq = self.items[left].clone();
        seq.extend_from_slice(&self.items[right]);
        match self.lookup.get(&(self.sources[left], seq)) {
            Some(&w) => BasisProduct::Element(AlgebraElement::basis(w)),
            // every composite inside the enumeration window is present
            None => BasisProduct::Overflow,
        }
    }
}

#[derive(Debug)]
pub(crate) struct ZeroRule;

impl ProductRule for ZeroRule {
    fn product(&self, _: usize, _: usize) -> BasisProduct {
        BasisProduct::Zero
    }
}

/// A finite-basis algebra bigraded by pairs of objects.
///
/// The underlying module is the direct sum of its grade components. Algebras are immutable
/// once built and are shared through [`Arc`].
#[derive(Clone)]
pub struct GradedAlgebra {
    objects: Vec<String>,
    object_index: HashMap<String, usize>,
    words: Vec<BasisWord>,
    by_name: HashMap<String, usize>,
    grades: BTreeMap<Grade, Vec<usize>>,
    slot: Vec<usize>,
    identities: BTreeMap<usize, usize>,
    grading: Grading,
    truncated: bool,
    rule: Arc<dyn ProductRule>,
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedAlgebra")
            .field("objects", &self.objects)
            .field("dim", &self.words.len())
            .field("grading", &self.grading)
            .field("truncated", &self.truncated)
            .finish()
    }
}

impl GradedAlgebra {
    pub(crate) fn assemble(
        objects: Vec<String>,
        words: Vec<BasisWord>,
        identities: BTreeMap<usize, usize>,
        grading: Grading,
        truncated: bool,
        rule: Arc<dyn ProductRule>,
    ) -> Result<Self, AlgebraError> {
        let mut object_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateObject(o.clone()));
            }
        }
        let mut by_name = HashMap::new();
        let mut grades: BTreeMap<Grade, Vec<usize>> = BTreeMap::new();
        let mut slot = Vec::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            if w.source >= objects.len() || w.target >= objects.len() {
                return Err(AlgebraError::UnknownObject(format!("word {} endpoint", w.name)));
            }
            if by_name.insert(w.name.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateWord(w.name.clone()));
            }
            let g = grades.entry(w.grade()).or_default();
            slot.push(g.len());
            g.push(i);
        }
        for (&obj, &w) in &identities {
            if words.get(w).is_none_or(|bw| bw.grade() != (obj, obj)) {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "identity of object {obj} is not a word in grade ({obj},{obj})"
                )));
            }
        }
        Ok(GradedAlgebra { objects, object_index, words, by_name, grades, slot, identities, grading, truncated, rule })
    }

    /// The zero algebra: no objects, no basis.
    pub fn zero() -> Self {
        GradedAlgebra::assemble(vec![], vec![], BTreeMap::new(), Grading::Composable, false, Arc::new(ZeroRule))
            .expect("empty algebra is well formed")
    }

    /// Algebra with the given basis and identically zero multiplication.
    pub fn with_zero_product(objects: Vec<String>, words: Vec<BasisWord>) -> Result<Self, AlgebraError> {
        GradedAlgebra::assemble(objects, words, BTreeMap::new(), Grading::Composable, false, Arc::new(ZeroRule))
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.object_index.get(name).copied()
    }

    pub fn words(&self) -> &[BasisWord] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &BasisWord {
        &self.words[i]
    }

    pub fn word_index(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    /// Whether some basis products fall outside the stored basis.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Nonempty grades with their words, in grade order.
    pub fn grades(&self) -> impl Iterator<Item = (Grade, &[usize])> {
        self.grades.iter().map(|(g, w)| (*g, w.as_slice()))
    }

    pub fn grade_words(&self, grade: Grade) -> &[usize] {
        self.grades.get(&grade).map_or(&[], Vec::as_slice)
    }

    pub fn grade_dim(&self, grade: Grade) -> usize {
        self.grade_words(grade).len()
    }

    /// Position of word `i` inside its grade.
    pub fn slot(&self, i: usize) -> usize {
        self.slot[i]
    }

    pub fn identity(&self, object: usize) -> Option<usize> {
        self.identities.get(&object).copied()
    }

    pub fn identities(&self) -> &BTreeMap<usize, usize> {
        &self.identities
    }

    pub fn grade_name(&self, g: Grade) -> (String, String) {
        (self.objects[g.0].clone(), self.objects[g.1].clone())
    }

    pub fn basis_element(&self, name: &str) -> Result<AlgebraElement, AlgebraError> {
        self.word_index(name).map(AlgebraElement::basis).ok_or_else(|| AlgebraError::UnknownWordName(name.to_string()))
    }

    fn composable(&self, left: usize, right: usize) -> bool {
        self.grading == Grading::Free || self.words[left].target == self.words[right].source
    }

    /// Product of two basis words.
    pub fn basis_product(&self, left: usize, right: usize) -> BasisProduct {
        if !self.composable(left, right) {
            return BasisProduct::Zero;
        }
        self.rule.product(left, right)
    }

    fn check_support(&self, x: &AlgebraElement) -> Result<(), AlgebraError> {
        match x.support().find(|&w| w >= self.words.len()) {
            Some(w) => Err(AlgebraError::UnknownWord(w)),
            None => Ok(()),
        }
    }

    /// Bilinear extension of the basis product.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_support(x)?;
        self.check_support(y)?;
        let mut out = AlgebraElement::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                match self.basis_product(i, j) {
                    BasisProduct::Zero => {}
                    BasisProduct::Element(e) => out.add_scaled(&(a * b), &e),
                    BasisProduct::Overflow => {
                        return Err(AlgebraError::Truncated {
                            left: self.words[i].name.clone(),
                            right: self.words[j].name.clone(),
                        })
                    }
                }
            }
        }
        Ok(out)
    }

    /// Products of several elements, left to right.
    pub fn multiply_all(&self, factors: &[&AlgebraElement]) -> Result<AlgebraElement, AlgebraError> {
        let mut it = factors.iter();
        let Some(first) = it.next() else {
            return Ok(AlgebraElement::zero());
        };
        let mut acc = (*first).clone();
        for f in it {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    /// Splits an element into its homogeneous components.
    pub fn split_by_grade(&self, x: &AlgebraElement) -> BTreeMap<Grade, AlgebraElement> {
        let mut out: BTreeMap<Grade, AlgebraElement> = BTreeMap::new();
        for (w, c) in x.terms() {
            out.entry(self.words[w].grade()).or_default().add_term(w, c.clone());
        }
        out
    }

    /// The single grade of a nonzero homogeneous element.
    pub fn homogeneous_grade(&self, x: &AlgebraElement) -> Result<Option<Grade>, AlgebraError> {
        self.check_support(x)?;
        let mut grade = None;
        for w in x.support() {
            let g = self.words[w].grade();
            match grade {
                None => grade = Some(g),
                Some(h) if h != g => return Err(AlgebraError::NonHomogeneous),
                _ => {}
            }
        }
        Ok(grade)
    }

    /// Coordinates of a homogeneous element relative to its grade's word list.
    pub fn to_local(&self, x: &AlgebraElement) -> SparseVec {
        x.terms().map(|(w, c)| (self.slot[w], c.clone())).collect()
    }

    pub fn from_local(&self, grade: Grade, v: &SparseVec) -> AlgebraElement {
        let words = self.grade_words(grade);
        AlgebraElement::from_terms(v.iter().map(|(&k, c)| (words[k], c.clone())))
    }

    /// Number of basis words in each grade.
    pub fn dimension_counts(&self) -> BTreeMap<Grade, usize> {
        self.grades.iter().map(|(g, w)| (*g, w.len())).collect()
    }

    /// Dimension counts keyed by object names, for comparing algebras with different object lists.
    pub fn named_dimension_counts(&self) -> BTreeMap<(String, String), usize> {
        self.grades.iter().map(|(g, w)| (self.grade_name(*g), w.len())).collect()
    }

    fn words_by_source(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.objects.len()];
        for (i, w) in self.words.iter().enumerate() {
            out[w.source].push(i);
        }
        out
    }

    fn followers<'a>(&'a self, by_source: &'a [Vec<usize>], i: usize) -> &'a [usize] {
        match self.grading {
            Grading::Composable => &by_source[self.words[i].target],
            Grading::Free => &[],
        }
    }

    /// Checks `(xy)z = x(yz)` on basis triples; exhaustive up to `exhaustive_limit` triples,
    /// otherwise on a seeded random sample of that many triples.
    pub fn check_associativity(&self, exhaustive_limit: usize, seed: u64) -> AssociativityReport {
        let n = self.words.len();
        let by_source = self.words_by_source();
        let all: Vec<usize> = (0..n).collect();
        let next = |i: usize| -> &[usize] {
            match self.grading {
                Grading::Composable => self.followers(&by_source, i),
                Grading::Free => &all,
            }
        };
        let total: usize = (0..n).map(|i| next(i).iter().map(|&j| next(j).len()).sum::<usize>()).sum();
        let mut report = AssociativityReport { exhaustive: total <= exhaustive_limit, ..Default::default() };
        let check = |i: usize, j: usize, k: usize, report: &mut AssociativityReport| {
            let (x, y, z) = (AlgebraElement::basis(i), AlgebraElement::basis(j), AlgebraElement::basis(k));
            let lhs = self.multiply(&x, &y).and_then(|xy| self.multiply(&xy, &z));
            let rhs = self.multiply(&y, &z).and_then(|yz| self.multiply(&x, &yz));
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => {
                    report.triples_checked += 1;
                    if l != r && report.failure.is_none() {
                        report.failure = Some((i, j, k));
                    }
                }
                _ => report.triples_skipped += 1,
            }
        };
        if report.exhaustive {
            for i in 0..n {
                for &j in next(i) {
                    for &k in next(j) {
                        check(i, j, k, &mut report);
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut drawn = 0;
            let mut attempts = 0;
            while drawn < exhaustive_limit && attempts < exhaustive_limit * 20 {
                attempts += 1;
                let i = rng.gen_range(0..n);
                let js = next(i);
                if js.is_empty() {
                    continue;
                }
                let j = js[rng.gen_range(0..js.len())];
                let ks = next(j);
                if ks.is_empty() {
                    continue;
                }
                let k = ks[rng.gen_range(0..ks.len())];
                check(i, j, k, &mut report);
                drawn += 1;
            }
        }
        report
    }

    /// Every term of every basis product lies in grade `(source(x), target(y))`.
    pub fn check_bigrading(&self) -> Result<(), (usize, usize)> {
        let n = self.words.len();
        for i in 0..n {
            for j in 0..n {
                if let BasisProduct::Element(e) = self.basis_product(i, j) {
                    let expect = (self.words[i].source, self.words[j].target);
                    if e.support().any(|w| self.words[w].grade() != expect) {
                        return Err((i, j));
                    }
                    if self.grading == Grading::Composable && self.words[i].target != self.words[j].source {
                        return Err((i, j));
                    }
                }
            }
        }
        Ok(())
    }

    /// Identities are orthogonal idempotents acting as units on words with matching endpoints.
    pub fn check_idempotents(&self) -> Result<(), String> {
        for (&a, &ea) in &self.identities {
            let e = AlgebraElement::basis(ea);
            for (&b, &eb) in &self.identities {
                let p = self.multiply(&e, &AlgebraElement::basis(eb)).map_err(|x| x.to_string())?;
                let expect = if a == b { e.clone() } else { AlgebraElement::zero() };
                if p != expect {
                    return Err(format!("e_{a} * e_{b} = {p}"));
                }
            }
            for (w, bw) in self.words.iter().enumerate() {
                let x = AlgebraElement::basis(w);
                let left = self.multiply(&e, &x).map_err(|x| x.to_string())?;
                let want = if bw.source == a { x.clone() } else { AlgebraElement::zero() };
                if left != want {
                    return Err(format!("e_{a} * {} = {left}", bw.name));
                }
                let right = self.multiply(&x, &e).map_err(|x| x.to_string())?;
                let want = if bw.target == a { x.clone() } else { AlgebraElement::zero() };
                if right != want {
                    return Err(format!("{} * e_{a} = {right}", bw.name));
                }
            }
        }
        Ok(())
    }

    /// Renders an element with word names, e.g. `a·c - b·d`.
    pub fn format_element(&self, x: &AlgebraElement) -> String {
        use num_traits::{One, Signed};
        if x.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (w, c)) in x.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(&self.words[w].name);
        }
        s
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AssociativityReport {
    pub triples_checked: usize,
    pub triples_skipped: usize,
    pub exhaustive: bool,
    pub failure: Option<(usize, usize, usize)>,
}

impl AssociativityReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Builder for algebras given by an explicit multiplication table.
#[derive(Debug)]
pub struct AlgebraBuilder {
    grading: Grading,
    objects: Vec<String>,
    words: Vec<BasisWord>,
    identities: BTreeMap<usize, usize>,
    rule: TableRule,
}

impl AlgebraBuilder {
    pub fn new(grading: Grading) -> Self {
        AlgebraBuilder {
            grading,
            objects: Vec::new(),
            words: Vec::new(),
            identities: BTreeMap::new(),
            rule: TableRule::default(),
        }
    }

    pub fn object(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        if let Some(i) = self.objects.iter().position(|o| *o == name) {
            return i;
        }
        self.objects.push(name);
        self.objects.len() - 1
    }

    pub fn word(&mut self, name: impl Into<String>, source: usize, target: usize) -> usize {
        self.words.push(BasisWord { name: name.into(), source, target });
        self.words.len() - 1
    }

    pub fn identity(&mut self, object: usize, word: usize) {
        self.identities.insert(object, word);
    }

    pub fn product(&mut self, left: usize, right: usize, value: AlgebraElement) {
        if value.is_zero() {
            self.rule.table.remove(&(left, right));
        } else {
            self.rule.table.insert((left, right), value);
        }
    }

    pub fn overflow(&mut self, left: usize, right: usize) {
        self.rule.overflow.insert((left, right));
    }

    pub fn build(self) -> Result<GradedAlgebra, AlgebraError> {
        let n = self.words.len();
        for (&(i, j), v) in &self.rule.table {
            if i >= n || j >= n {
                return Err(AlgebraError::UnknownWord(i.max(j)));
            }
            if let Some(w) = v.support().find(|&w| w >= n) {
                return Err(AlgebraError::UnknownWord(w));
            }
            let (wi, wj) = (&self.words[i], &self.words[j]);
            if self.grading == Grading::Composable && wi.target != wj.source {
                return Err(AlgebraError::ProductOutOfGrade { left: wi.name.clone(), right: wj.name.clone() });
            }
            if v.support().any(|w| self.words[w].grade() != (wi.source, wj.target)) {
                return Err(AlgebraError::ProductOutOfGrade { left: wi.name.clone(), right: wj.name.clone() });
            }
        }
        let truncated = !self.rule.overflow.is_empty();
        GradedAlgebra::assemble(self.objects, self.words, self.identities, self.grading, truncated, Arc::new(self.rule))
    }
}

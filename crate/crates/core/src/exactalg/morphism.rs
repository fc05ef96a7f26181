//! Linear maps between graded algebras, with verified multiplicativity.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::{Grade, GradedAlgebra};
use super::element::AlgebraElement;
use super::ideal::{two_sided_ideal, GradedSubspace};
use super::linalg::kernel_of_columns;
use super::quotient::{quotient, QuotientAlgebra};
use super::scalar::{is_integral, to_integers, Scalar};
use super::snf::{integer_kernel, IntMatrix};
use super::AlgebraError;

/// Pairs beyond this count are sampled instead of checked exhaustively.
const EXHAUSTIVE_PAIRS: usize = 250_000;

/// Outcome of checking `f(x*y) = f(x)*f(y)` on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMapCheck {
    pub is_algebra_map: bool,
    /// First failing pair of domain basis words.
    pub witness: Option<(String, String)>,
    pub pairs_checked: usize,
    pub pairs_skipped: usize,
    pub exhaustive: bool,
}

/// A linear map given by the image of every domain basis word.
#[derive(Clone, Debug)]
pub struct Morphism {
    domain: Arc<GradedAlgebra>,
    codomain: Arc<GradedAlgebra>,
    images: Vec<AlgebraElement>,
    check: OnceLock<AlgebraMapCheck>,
}

impl Morphism {
    pub fn new(
        domain: Arc<GradedAlgebra>,
        codomain: Arc<GradedAlgebra>,
        images: Vec<AlgebraElement>,
    ) -> Result<Self, AlgebraError> {
        if images.len() != domain.dim() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} images for a domain of dimension {}",
                images.len(),
                domain.dim()
            )));
        }
        if let Some(w) = images.iter().flat_map(|e| e.support()).find(|&w| w >= codomain.dim()) {
            return Err(AlgebraError::UnknownWord(w));
        }
        Ok(Morphism { domain, codomain, images, check: OnceLock::new() })
    }

    pub fn identity(alg: Arc<GradedAlgebra>) -> Self {
        let images = (0..alg.dim()).map(AlgebraElement::basis).collect();
        Morphism { domain: alg.clone(), codomain: alg, images, check: OnceLock::new() }
    }

    pub fn zero(domain: Arc<GradedAlgebra>, codomain: Arc<GradedAlgebra>) -> Self {
        let images = vec![AlgebraElement::zero(); domain.dim()];
        Morphism { domain, codomain, images, check: OnceLock::new() }
    }

    /// Sends each domain word to the codomain word of the same name.
    pub fn inclusion_by_name(domain: Arc<GradedAlgebra>, codomain: Arc<GradedAlgebra>) -> Result<Self, AlgebraError> {
        let images = domain.words().iter().map(|w| codomain.basis_element(&w.name)).collect::<Result<_, _>>()?;
        Morphism::new(domain, codomain, images)
    }

    pub fn domain(&self) -> &Arc<GradedAlgebra> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<GradedAlgebra> {
        &self.codomain
    }

    pub fn images(&self) -> &[AlgebraElement] {
        &self.images
    }

    pub fn image_of(&self, word: usize) -> &AlgebraElement {
        &self.images[word]
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, c) in x.terms() {
            out.add_scaled(c, &self.images[w]);
        }
        out
    }

    /// `self - other`, for maps with the same domain and codomain.
    pub fn difference(&self, other: &Morphism) -> Result<Morphism, AlgebraError> {
        self.same_shape(other)?;
        let images = self.images.iter().zip(&other.images).map(|(a, b)| a - b).collect();
        Morphism::new(self.domain.clone(), self.codomain.clone(), images)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism, AlgebraError> {
        if !Arc::ptr_eq(&self.codomain, &next.domain) && self.codomain.dim() != next.domain.dim() {
            return Err(AlgebraError::ShapeMismatch("composition of incompatible maps".into()));
        }
        let images = self.images.iter().map(|x| next.apply(x)).collect();
        Morphism::new(self.domain.clone(), next.codomain.clone(), images)
    }

    fn same_shape(&self, other: &Morphism) -> Result<(), AlgebraError> {
        if self.domain.dim() != other.domain.dim() || self.codomain.dim() != other.codomain.dim() {
            return Err(AlgebraError::ShapeMismatch("maps have different domain or codomain".into()));
        }
        Ok(())
    }

    fn check_pair(&self, i: usize, j: usize) -> Option<bool> {
        let d = &self.domain;
        let c = &self.codomain;
        let lhs = d.multiply(&AlgebraElement::basis(i), &AlgebraElement::basis(j)).ok()?;
        let rhs = c.multiply(&self.images[i], &self.images[j]).ok()?;
        Some(self.apply(&lhs) == rhs)
    }

    /// Multiplicativity on basis pairs, computed once and cached.
    pub fn algebra_map_check(&self) -> &AlgebraMapCheck {
        self.check.get_or_init(|| {
            let n = self.domain.dim();
            let total = n * n;
            let mut report = AlgebraMapCheck {
                is_algebra_map: true,
                witness: None,
                pairs_checked: 0,
                pairs_skipped: 0,
                exhaustive: total <= EXHAUSTIVE_PAIRS,
            };
            let visit = |i: usize, j: usize, report: &mut AlgebraMapCheck| match self.check_pair(i, j) {
                Some(true) => report.pairs_checked += 1,
                Some(false) => {
                    report.pairs_checked += 1;
                    if report.is_algebra_map {
                        report.is_algebra_map = false;
                        report.witness = Some((self.domain.word(i).name.clone(), self.domain.word(j).name.clone()));
                    }
                }
                None => report.pairs_skipped += 1,
            };
            if report.exhaustive {
                for i in 0..n {
                    for j in 0..n {
                        visit(i, j, &mut report);
                    }
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(0);
                for _ in 0..EXHAUSTIVE_PAIRS {
                    visit(rng.gen_range(0..n), rng.gen_range(0..n), &mut report);
                }
            }
            report
        })
    }

    pub fn is_algebra_map(&self) -> bool {
        self.algebra_map_check().is_algebra_map
    }

    /// For each domain grade with a nonzero image, the codomain grade it lands in.
    ///
    /// Fails when a grade's images spread over several codomain grades or when two domain
    /// grades share a codomain grade; kernels are then not computable grade by grade.
    pub fn grade_map(&self) -> Result<BTreeMap<Grade, Grade>, AlgebraError> {
        let mut map = BTreeMap::new();
        let mut used: BTreeMap<Grade, Grade> = BTreeMap::new();
        for (g, words) in self.domain.grades() {
            let mut target = None;
            for &w in words {
                for (h, _) in self.codomain.split_by_grade(&self.images[w]) {
                    match target {
                        None => target = Some(h),
                        Some(t) if t != h => {
                            return Err(AlgebraError::GradeMixing(format!(
                                "grade {:?} maps into several grades",
                                self.domain.grade_name(g)
                            )))
                        }
                        _ => {}
                    }
                }
            }
            if let Some(t) = target {
                if let Some(prev) = used.insert(t, g) {
                    return Err(AlgebraError::GradeMixing(format!(
                        "grades {:?} and {:?} share the image grade {:?}",
                        self.domain.grade_name(prev),
                        self.domain.grade_name(g),
                        self.codomain.grade_name(t)
                    )));
                }
                map.insert(g, t);
            }
        }
        Ok(map)
    }
}

/// `Ker(f, g) = { x : f(x) = g(x) }`; `g = None` means the zero map.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub subspace: GradedSubspace,
    /// Whether the kernel is a two-sided ideal; only evaluated for `Ker(f, 0)` with `f`
    /// multiplicative.
    pub two_sided: Option<bool>,
}

pub fn kernel(f: &Morphism, g: Option<&Morphism>) -> Result<Kernel, AlgebraError> {
    let d = match g {
        Some(g) => f.difference(g)?,
        None => f.clone(),
    };
    let grade_map = d.grade_map()?;
    let dom = &d.domain;
    let cod = &d.codomain;
    let mut sub = GradedSubspace::zero();
    for (g, words) in dom.grades() {
        let dim = words.len();
        let Some(&h) = grade_map.get(&g) else {
            for k in 0..dim {
                sub.insert_local(g, dim, [(k, Scalar::from_integer(1.into()))].into());
            }
            continue;
        };
        let cols: Vec<_> = words.iter().map(|&w| cod.to_local(&d.images[w])).collect();
        if cols.iter().all(is_integral) {
            let ints: Vec<_> = cols.iter().map(to_integers).collect();
            let m = IntMatrix::from_columns(cod.grade_dim(h), &ints);
            for v in integer_kernel(&m) {
                let local = v.into_iter().map(|(k, x)| (k, Scalar::from_integer(x))).collect();
                sub.insert_local(g, dim, local);
            }
        } else {
            for v in kernel_of_columns(&cols) {
                sub.insert_local(g, dim, v);
            }
        }
    }
    let two_sided = match g {
        None if f.is_algebra_map() => Some(sub.is_two_sided(dom)),
        _ => None,
    };
    Ok(Kernel { subspace: sub, two_sided })
}

/// Span of the images of all basis words.
pub fn image(f: &Morphism) -> GradedSubspace {
    GradedSubspace::span(&f.codomain, &f.images)
}

/// `coKer(f, g) = B / I(f, g)` with `I(f, g)` the two-sided ideal generated by `Im(f - g)`.
pub fn cokernel(f: &Morphism, g: Option<&Morphism>) -> Result<QuotientAlgebra, AlgebraError> {
    let d = match g {
        Some(g) => f.difference(g)?,
        None => f.clone(),
    };
    let cod = d.codomain.clone();
    let gens: Vec<AlgebraElement> = d.images.iter().flat_map(|x| cod.split_by_grade(x).into_values()).collect();
    let ideal = two_sided_ideal(&cod, &gens)?;
    quotient(cod, ideal)
}

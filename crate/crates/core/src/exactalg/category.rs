//! Finite categories, their convolution algebras, and linearized functors.

use std::collections::HashMap;
use std::sync::Arc;

use super::algebra::{AlgebraBuilder, GradedAlgebra, Grading};
use super::element::AlgebraElement;
use super::morphism::Morphism;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatMorphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category given by a total composition table on composable pairs.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<CatMorphism>,
    identities: Vec<usize>,
    /// `(f, g) ↦ f then g`, for `target(f) == source(g)`.
    compose: HashMap<(usize, usize), usize>,
    /// For free categories: the arrow sequence spelling each morphism.
    spelling: Option<Vec<Vec<usize>>>,
}

impl FiniteCategory {
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<CatMorphism>,
        identities: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<Self, AlgebraError> {
        let c = FiniteCategory { objects, morphisms, identities, compose, spelling: None };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let bad = |m: String| Err(AlgebraError::InvalidCategory(m));
        let n_obj = self.objects.len();
        let n = self.morphisms.len();
        for m in &self.morphisms {
            if m.source >= n_obj || m.target >= n_obj {
                return bad(format!("morphism {} has an unknown endpoint", m.name));
            }
        }
        if self.identities.len() != n_obj {
            return bad("every object needs exactly one identity".into());
        }
        for (o, &id) in self.identities.iter().enumerate() {
            match self.morphisms.get(id) {
                Some(m) if m.source == o && m.target == o => {}
                _ => return bad(format!("identity of {} is not an endomorphism of it", self.objects[o])),
            }
        }
        for f in 0..n {
            for g in 0..n {
                let composable = self.morphisms[f].target == self.morphisms[g].source;
                match (composable, self.compose.get(&(f, g))) {
                    (true, None) => {
                        return bad(format!(
                            "missing composite of {} and {}",
                            self.morphisms[f].name, self.morphisms[g].name
                        ))
                    }
                    (false, Some(_)) => {
                        return bad(format!(
                            "composite given for non-composable {} and {}",
                            self.morphisms[f].name, self.morphisms[g].name
                        ))
                    }
                    (true, Some(&h)) => {
                        let hm = self.morphisms.get(h).ok_or_else(|| {
                            AlgebraError::InvalidCategory(format!("composite index {h} out of range"))
                        })?;
                        if hm.source != self.morphisms[f].source || hm.target != self.morphisms[g].target {
                            return bad(format!(
                                "composite of {} and {} has wrong endpoints",
                                self.morphisms[f].name, self.morphisms[g].name
                            ));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in 0..n {
            let m = &self.morphisms[f];
            if self.compose[&(self.identities[m.source], f)] != f || self.compose[&(f, self.identities[m.target])] != f
            {
                return bad(format!("identity law fails at {}", m.name));
            }
        }
        for (&(f, g), &fg) in &self.compose {
            for h in 0..n {
                if let (Some(&fg_h), Some(&gh)) = (self.compose.get(&(fg, h)), self.compose.get(&(g, h))) {
                    if self.compose[&(f, gh)] != fg_h {
                        return bad(format!(
                            "composition is not associative at ({}, {}, {})",
                            self.morphisms[f].name, self.morphisms[g].name, self.morphisms[h].name
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Category with only identity morphisms.
    pub fn discrete(objects: &[&str]) -> Self {
        let morphisms = objects
            .iter()
            .enumerate()
            .map(|(i, o)| CatMorphism { name: format!("e_{o}"), source: i, target: i })
            .collect();
        let identities = (0..objects.len()).collect();
        let compose = (0..objects.len()).map(|i| ((i, i), i)).collect();
        FiniteCategory::new(objects.iter().map(|s| s.to_string()).collect(), morphisms, identities, compose)
            .expect("discrete category is valid")
    }

    /// Free category on an acyclic quiver; arrows are `(name, source, target)`.
    ///
    /// Identities are named `e_<object>`, composites join arrow names with `·`.
    pub fn free(objects: &[&str], arrows: &[(&str, usize, usize)]) -> Result<Self, AlgebraError> {
        let n_obj = objects.len();
        if arrows.iter().any(|&(_, s, t)| s >= n_obj || t >= n_obj) {
            return Err(AlgebraError::InvalidCategory("arrow endpoint out of range".into()));
        }
        let mut spelling: Vec<Vec<usize>> = Vec::new();
        let mut morphisms = Vec::new();
        for (i, o) in objects.iter().enumerate() {
            spelling.push(Vec::new());
            morphisms.push(CatMorphism { name: format!("e_{o}"), source: i, target: i });
        }
        // breadth-first by length; a path longer than the arrow count implies a cycle
        let mut frontier: Vec<usize> = (0..n_obj).collect();
        for len in 1..=arrows.len() + 1 {
            let mut next = Vec::new();
            for &p in &frontier {
                let end = morphisms[p].target;
                for (a, &(name, s, t)) in arrows.iter().enumerate() {
                    if s != end {
                        continue;
                    }
                    if len > arrows.len() {
                        return Err(AlgebraError::InvalidCategory("quiver has a directed cycle".into()));
                    }
                    let mut sp = spelling[p].clone();
                    sp.push(a);
                    let label = if spelling[p].is_empty() {
                        name.to_string()
                    } else {
                        format!("{}·{name}", morphisms[p].name)
                    };
                    morphisms.push(CatMorphism { name: label, source: morphisms[p].source, target: t });
                    spelling.push(sp);
                    next.push(morphisms.len() - 1);
                }
            }
            frontier = next;
        }
        let index: HashMap<&[usize], usize> =
            spelling.iter().enumerate().filter(|(_, sp)| !sp.is_empty()).map(|(i, sp)| (sp.as_slice(), i)).collect();
        let mut compose = HashMap::new();
        for f in 0..morphisms.len() {
            for g in 0..morphisms.len() {
                if morphisms[f].target != morphisms[g].source {
                    continue;
                }
                let h = match (spelling[f].is_empty(), spelling[g].is_empty()) {
                    (true, _) => g,
                    (_, true) => f,
                    _ => {
                        let mut sp = spelling[f].clone();
                        sp.extend_from_slice(&spelling[g]);
                        index[sp.as_slice()]
                    }
                };
                compose.insert((f, g), h);
            }
        }
        let identities = (0..n_obj).collect();
        let mut c =
            FiniteCategory::new(objects.iter().map(|s| s.to_string()).collect(), morphisms, identities, compose)?;
        c.spelling = Some(spelling);
        Ok(c)
    }

    /// Poset category: one morphism `a → b` whenever `leq(a, b)`; `leq` must be a partial order.
    pub fn poset(objects: &[&str], leq: impl Fn(usize, usize) -> bool) -> Result<Self, AlgebraError> {
        let n = objects.len();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    index.insert((a, b), morphisms.len());
                    morphisms.push(CatMorphism {
                        name: format!("{}≤{}", objects[a], objects[b]),
                        source: a,
                        target: b,
                    });
                }
            }
        }
        let identities = (0..n)
            .map(|a| index.get(&(a, a)).copied())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| AlgebraError::InvalidCategory("order relation is not reflexive".into()))?;
        let mut compose = HashMap::new();
        for (&(a, b), &f) in &index {
            for c in 0..n {
                if let Some(&g) = index.get(&(b, c)) {
                    let h = *index
                        .get(&(a, c))
                        .ok_or_else(|| AlgebraError::InvalidCategory("order relation is not transitive".into()))?;
                    compose.insert((f, g), h);
                }
            }
        }
        FiniteCategory::new(objects.iter().map(|s| s.to_string()).collect(), morphisms, identities, compose)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[CatMorphism] {
        &self.morphisms
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// `f` then `g`, when composable.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.compose.get(&(f, g)).copied()
    }

    /// Arrow spelling of each morphism, for free categories.
    pub fn spelling(&self) -> Option<&[Vec<usize>]> {
        self.spelling.as_deref()
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&m| self.morphisms[m].source == a && self.morphisms[m].target == b).collect()
    }
}

/// Free module on the morphisms, multiplied by composition when composable and zero otherwise.
pub fn convolution_algebra(cat: &FiniteCategory) -> Result<GradedAlgebra, AlgebraError> {
    let mut b = AlgebraBuilder::new(Grading::Composable);
    for o in &cat.objects {
        b.object(o.clone());
    }
    for m in &cat.morphisms {
        b.word(m.name.clone(), m.source, m.target);
    }
    for (o, &id) in cat.identities.iter().enumerate() {
        b.identity(o, id);
    }
    for (&(f, g), &h) in &cat.compose {
        b.product(f, g, AlgebraElement::basis(h));
    }
    b.build()
}

/// Object and morphism assignment between finite categories, checked to be a functor.
#[derive(Clone, Debug)]
pub struct Functor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    object_map: Vec<usize>,
    morphism_map: Vec<usize>,
}

impl Functor {
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        let bad = |m: String| Err(AlgebraError::NotAFunctor(m));
        if object_map.len() != source.objects.len() || morphism_map.len() != source.morphisms.len() {
            return bad("maps do not cover the source category".into());
        }
        if object_map.iter().any(|&o| o >= target.objects.len())
            || morphism_map.iter().any(|&m| m >= target.morphisms.len())
        {
            return bad("image outside the target category".into());
        }
        for (f, m) in source.morphisms.iter().enumerate() {
            let im = &target.morphisms[morphism_map[f]];
            if im.source != object_map[m.source] || im.target != object_map[m.target] {
                return bad(format!("{} is not sent between the images of its endpoints", m.name));
            }
        }
        for (o, &id) in source.identities.iter().enumerate() {
            if morphism_map[id] != target.identities[object_map[o]] {
                return bad(format!("identity of {} is not preserved", source.objects[o]));
            }
        }
        for (&(f, g), &h) in &source.compose {
            if target.compose(morphism_map[f], morphism_map[g]) != Some(morphism_map[h]) {
                return bad(format!(
                    "composite of {} and {} is not preserved",
                    source.morphisms[f].name, source.morphisms[g].name
                ));
            }
        }
        Ok(Functor { source, target, object_map, morphism_map })
    }

    /// Extends an assignment on arrows of a free category to all of its morphisms.
    pub fn from_free(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        object_map: Vec<usize>,
        arrow_images: &[usize],
    ) -> Result<Self, AlgebraError> {
        let spelling =
            source.spelling().ok_or_else(|| AlgebraError::NotAFunctor("source is not a free category".into()))?;
        let mut morphism_map = Vec::with_capacity(spelling.len());
        for (m, sp) in spelling.iter().enumerate() {
            let mut acc = target.identities[*object_map
                .get(source.morphisms[m].source)
                .ok_or_else(|| AlgebraError::NotAFunctor("object map too short".into()))?];
            for &a in sp {
                let img =
                    *arrow_images.get(a).ok_or_else(|| AlgebraError::NotAFunctor("missing arrow image".into()))?;
                acc = target
                    .compose(acc, img)
                    .ok_or_else(|| AlgebraError::NotAFunctor("arrow images are not composable".into()))?;
            }
            morphism_map.push(acc);
        }
        Functor::new(source, target, object_map, morphism_map)
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = self.object_map.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphism_map
    }
}

/// Linear extension `R[C] → R[D]` of a functor. Multiplicativity is verified, not assumed:
/// see [`Morphism::algebra_map_check`].
pub fn linearize_functor(f: &Functor) -> Result<Morphism, AlgebraError> {
    let dom = Arc::new(convolution_algebra(&f.source)?);
    let cod = Arc::new(convolution_algebra(&f.target)?);
    let images = f.morphism_map.iter().map(|&m| AlgebraElement::basis(m)).collect();
    Morphism::new(dom, cod, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::int;

    #[test]
    fn discrete_two_is_r_squared() {
        let alg = convolution_algebra(&FiniteCategory::discrete(&["α", "β"])).unwrap();
        let x = AlgebraElement::from_terms([(0, int(2)), (1, int(3))]);
        let y = AlgebraElement::from_terms([(0, int(4)), (1, int(-1))]);
        assert_eq!(alg.multiply(&x, &y).unwrap(), AlgebraElement::from_terms([(0, int(8)), (1, int(-3))]));
        assert!(alg.check_idempotents().is_ok());
    }

    #[test]
    fn kronecker_dimensions() {
        let c = FiniteCategory::free(&["1", "2"], &[("α", 0, 1), ("β", 0, 1)]).unwrap();
        let alg = convolution_algebra(&c).unwrap();
        assert_eq!(alg.grade_dim((0, 0)), 1);
        assert_eq!(alg.grade_dim((0, 1)), 2);
        assert_eq!(alg.grade_dim((1, 0)), 0);
        assert_eq!(alg.grade_dim((1, 1)), 1);
    }

    #[test]
    fn cyclic_quiver_rejected() {
        assert!(FiniteCategory::free(&["u"], &[("t", 0, 0)]).is_err());
    }

    #[test]
    fn collapse_functor_is_not_multiplicative() {
        let two = Arc::new(FiniteCategory::discrete(&["α", "β"]));
        let one = Arc::new(FiniteCategory::discrete(&["*"]));
        let f = Functor::new(two, one, vec![0, 0], vec![0, 0]).unwrap();
        let m = linearize_functor(&f).unwrap();
        let check = m.algebra_map_check();
        assert!(!check.is_algebra_map);
        assert_eq!(check.witness, Some(("e_α".into(), "e_β".into())));
    }

    #[test]
    fn broken_table_rejected() {
        let objects = vec!["a".to_string()];
        let morphisms = vec![
            CatMorphism { name: "e".into(), source: 0, target: 0 },
            CatMorphism { name: "x".into(), source: 0, target: 0 },
        ];
        // x*x undefined
        let compose = HashMap::from([((0, 0), 0), ((0, 1), 1), ((1, 0), 1)]);
        assert!(FiniteCategory::new(objects, morphisms, vec![0], compose).is_err());
    }

    #[test]
    fn poset_category_is_incidence_algebra() {
        let c = FiniteCategory::poset(&["a", "b", "c"], |x, y| x <= y).unwrap();
        let alg = convolution_algebra(&c).unwrap();
        assert_eq!(alg.dim(), 6);
        assert!(alg.check_associativity(10_000, 0).holds());
    }
}

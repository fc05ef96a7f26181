//! Small simplicial sets, the free simplicial modules on them, and bar constructions of
//! finite commutative monoids as simplicial algebras.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{SimplicialError, TruncatedSimplicialAlgebra};
use crate::exactalg::{AlgebraBuilder, AlgebraElement, BasisWord, GradedAlgebra, Grading, Morphism};

/// A finite simplicial set truncated at level `top`.
#[derive(Clone, Debug)]
pub struct SimplicialSet {
    pub name: String,
    elements: Vec<Vec<String>>,
    /// `faces[n][i][x]` for `n >= 1`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[n][i][x]` for `n < top`.
    degeneracies: Vec<Vec<Vec<usize>>>,
}

fn monotone_sequences(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s: Vec<usize>| {
                let lo = s.last().copied().unwrap_or(0);
                (lo..=max).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

fn within(seq: &[usize], faces: &[&[usize]]) -> bool {
    faces.iter().any(|f| seq.iter().all(|v| f.contains(v)))
}

impl SimplicialSet {
    /// Simplicial set of the simplicial complex on vertices `0..=max_vertex` with the given
    /// maximal faces, with the subcomplex spanned by `collapse` crushed to a point.
    ///
    /// `n`-simplices are non-decreasing vertex sequences of length `n + 1` inside a face.
    pub fn from_complex(
        name: &str,
        max_vertex: usize,
        maximal: &[&[usize]],
        collapse: &[&[usize]],
        top: usize,
    ) -> Self {
        let class = |seq: &[usize]| -> String {
            if !collapse.is_empty() && within(seq, collapse) {
                "*".to_string()
            } else {
                seq.iter().map(ToString::to_string).collect::<String>()
            }
        };
        let mut elements = Vec::new();
        let mut index: Vec<HashMap<String, usize>> = Vec::new();
        for n in 0..=top {
            let mut names: Vec<String> = Vec::new();
            for s in monotone_sequences(n + 1, max_vertex) {
                if within(&s, maximal) {
                    let c = class(&s);
                    if !names.contains(&c) {
                        names.push(c);
                    }
                }
            }
            index.push(names.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect());
            elements.push(names);
        }
        // a representative sequence of each class, taken from the names
        let rep = |n: usize, c: &str| -> Vec<usize> {
            if c == "*" {
                let v = collapse[0][0];
                vec![v; n + 1]
            } else {
                c.chars().map(|ch| ch.to_digit(10).expect("single-digit vertices") as usize).collect()
            }
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=top {
            let per: Vec<Vec<usize>> = (0..=n)
                .map(|i| {
                    elements[n]
                        .iter()
                        .map(|c| {
                            let mut s = rep(n, c);
                            s.remove(i);
                            index[n - 1][&class(&s)]
                        })
                        .collect()
                })
                .collect();
            faces.push(per);
        }
        let mut degeneracies = Vec::new();
        for n in 0..top {
            let per: Vec<Vec<usize>> = (0..=n)
                .map(|i| {
                    elements[n]
                        .iter()
                        .map(|c| {
                            let mut s = rep(n, c);
                            s.insert(i, s[i]);
                            index[n + 1][&class(&s)]
                        })
                        .collect()
                })
                .collect();
            degeneracies.push(per);
        }
        SimplicialSet { name: name.to_string(), elements, faces, degeneracies }
    }

    pub fn point(top: usize) -> Self {
        Self::from_complex("point", 0, &[&[0]], &[], top)
    }

    pub fn two_points(top: usize) -> Self {
        Self::from_complex("two points", 1, &[&[0], &[1]], &[], top)
    }

    /// `Δ^1 / ∂Δ^1`.
    pub fn circle(top: usize) -> Self {
        Self::from_complex("circle", 1, &[&[0, 1]], &[&[0], &[1]], top)
    }

    /// Boundary of the 2-simplex.
    pub fn hollow_triangle(top: usize) -> Self {
        Self::from_complex("hollow triangle", 2, &[&[0, 1], &[1, 2], &[0, 2]], &[], top)
    }

    /// Two edges with all vertices crushed to one point.
    pub fn wedge_of_circles(top: usize) -> Self {
        Self::from_complex("wedge of two circles", 2, &[&[0, 1], &[0, 2]], &[&[0], &[1], &[2]], top)
    }

    /// `Δ^2 / ∂Δ^2`.
    pub fn sphere(top: usize) -> Self {
        Self::from_complex("2-sphere", 2, &[&[0, 1, 2]], &[&[0, 1], &[1, 2], &[0, 2]], top)
    }

    pub fn examples(top: usize) -> Vec<SimplicialSet> {
        vec![
            Self::point(top),
            Self::two_points(top),
            Self::circle(top),
            Self::hollow_triangle(top),
            Self::wedge_of_circles(top),
            Self::sphere(top),
        ]
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn elements(&self, n: usize) -> &[String] {
        &self.elements[n]
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    pub fn degeneracy(&self, n: usize, i: usize, x: usize) -> usize {
        self.degeneracies[n][i][x]
    }
}

fn basis_map(domain: &Arc<GradedAlgebra>, codomain: &Arc<GradedAlgebra>, f: &[usize]) -> Morphism {
    let images = f.iter().map(|&t| AlgebraElement::basis(t)).collect();
    Morphism::new(domain.clone(), codomain.clone(), images).expect("maps between levels")
}

/// Free module on `x` at every level, with zero multiplication.
pub fn free_module(x: &SimplicialSet) -> TruncatedSimplicialAlgebra {
    let levels: Vec<Arc<GradedAlgebra>> = x
        .elements
        .iter()
        .map(|names| {
            let words = names.iter().map(|n| BasisWord { name: n.clone(), source: 0, target: 0 }).collect();
            Arc::new(GradedAlgebra::with_zero_product(vec!["*".into()], words).expect("distinct element names"))
        })
        .collect();
    let faces = (0..levels.len())
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n).map(|i| basis_map(&levels[n], &levels[n - 1], &x.faces[n][i])).collect()
        })
        .collect();
    let degeneracies = (0..x.top())
        .map(|n| (0..=n).map(|i| basis_map(&levels[n], &levels[n + 1], &x.degeneracies[n][i])).collect())
        .collect();
    TruncatedSimplicialAlgebra::new(levels, faces, degeneracies).expect("well-shaped")
}

/// The commutative monoid `{0, …, index + period - 1}` generated by `1`, with
/// `index + period = index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicMonoid {
    pub index: usize,
    pub period: usize,
}

impl CyclicMonoid {
    pub fn size(&self) -> usize {
        self.index + self.period
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let s = a + b;
        if s < self.size() {
            s
        } else {
            self.index + (s - self.index) % self.period
        }
    }
}

fn product_elements(factors: &[CyclicMonoid]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for f in factors {
        out = out
            .into_iter()
            .flat_map(|e: Vec<usize>| {
                (0..f.size()).map(move |v| {
                    let mut t = e.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// Monoid algebra of the bar construction of `M = ∏ factors`: level `n` has basis `M^n`,
/// `d_0` and `d_n` drop the outer entries, inner faces add neighbours, `s_i` inserts `0`.
pub fn bar_algebra(factors: &[CyclicMonoid], top: usize) -> Result<TruncatedSimplicialAlgebra, SimplicialError> {
    if factors.iter().any(|f| f.period == 0) {
        return Err(SimplicialError::Shape("cyclic monoid with period 0".into()));
    }
    let m = product_elements(factors);
    let add = |a: &[usize], b: &[usize]| -> Vec<usize> {
        factors.iter().enumerate().map(|(k, f)| f.add(a[k], b[k])).collect()
    };
    let m_index: HashMap<Vec<usize>, usize> = m.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let name_of = |t: &[usize]| -> String {
        let parts: Vec<String> =
            t.iter().map(|&e| m[e].iter().map(ToString::to_string).collect::<Vec<_>>().join(".")).collect();
        format!("[{}]", parts.join(","))
    };
    let zero = m_index[&vec![0; factors.len()]];
    let mut tuples: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut levels = Vec::new();
    let mut lookups: Vec<HashMap<Vec<usize>, usize>> = Vec::new();
    for n in 0..=top {
        let ts: Vec<Vec<usize>> = (0..n).fold(vec![Vec::new()], |acc, _| {
            acc.into_iter()
                .flat_map(|t: Vec<usize>| {
                    (0..m.len()).map(move |e| {
                        let mut u = t.clone();
                        u.push(e);
                        u
                    })
                })
                .collect()
        });
        let lookup: HashMap<Vec<usize>, usize> = ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let mut b = AlgebraBuilder::new(Grading::Composable);
        let o = b.object("*");
        for t in &ts {
            b.word(name_of(t), o, o);
        }
        b.identity(o, lookup[&vec![zero; n]]);
        for (i, x) in ts.iter().enumerate() {
            for (j, y) in ts.iter().enumerate() {
                let z: Vec<usize> = x.iter().zip(y).map(|(&a, &c)| m_index[&add(&m[a], &m[c])]).collect();
                b.product(i, j, AlgebraElement::basis(lookup[&z]));
            }
        }
        levels.push(Arc::new(b.build()?));
        tuples.push(ts);
        lookups.push(lookup);
    }
    let mut faces = vec![Vec::new()];
    for n in 1..=top {
        let per = (0..=n)
            .map(|i| {
                let f: Vec<usize> = tuples[n]
                    .iter()
                    .map(|t| {
                        let mut u = t.clone();
                        if i == 0 {
                            u.remove(0);
                        } else if i == n {
                            u.pop();
                        } else {
                            let s = m_index[&add(&m[u[i - 1]], &m[u[i]])];
                            u.splice(i - 1..=i, [s]);
                        }
                        lookups[n - 1][&u]
                    })
                    .collect();
                basis_map(&levels[n], &levels[n - 1], &f)
            })
            .collect();
        faces.push(per);
    }
    let degeneracies = (0..top)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    let f: Vec<usize> = tuples[n]
                        .iter()
                        .map(|t| {
                            let mut u = t.clone();
                            u.insert(i, zero);
                            lookups[n + 1][&u]
                        })
                        .collect();
                    basis_map(&levels[n], &levels[n + 1], &f)
                })
                .collect()
        })
        .collect();
    TruncatedSimplicialAlgebra::new(levels, faces, degeneracies)
}

/// Seeded bar construction on one or two random cyclic monoids of total size at most 6,
/// truncated at level 2. Returns a description alongside.
pub fn random_simplicial_algebra(seed: u64) -> (String, TruncatedSimplicialAlgebra) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let k = rng.gen_range(1..=2);
        let factors: Vec<CyclicMonoid> =
            (0..k).map(|_| CyclicMonoid { index: rng.gen_range(0..=2), period: rng.gen_range(1..=3) }).collect();
        let size: usize = factors.iter().map(CyclicMonoid::size).product();
        if !(2..=6).contains(&size) {
            continue;
        }
        let desc = factors.iter().map(|f| format!("C({},{})", f.index, f.period)).collect::<Vec<_>>().join("×");
        let s = bar_algebra(&factors, 2).expect("valid monoid");
        return (desc, s);
    }
}

#[cfg(test)]
mod tests {
    use super::super::{check_simplicial, moore_normalize};
    use super::*;

    #[test]
    fn level_sizes() {
        assert_eq!(SimplicialSet::circle(2).elements(1).len(), 2);
        assert_eq!(SimplicialSet::circle(2).elements(2).len(), 3);
        assert_eq!(SimplicialSet::hollow_triangle(1).elements(1).len(), 6);
        assert_eq!(SimplicialSet::sphere(2).elements(2).len(), 2);
    }

    #[test]
    fn free_modules_are_simplicial() {
        for x in SimplicialSet::examples(3) {
            assert!(check_simplicial(&free_module(&x)).is_empty(), "{}", x.name);
        }
    }

    #[test]
    fn circle_homology() {
        let m = moore_normalize(&free_module(&SimplicialSet::circle(2))).unwrap();
        assert_eq!(m.homology_total(0).rank, 1);
        assert_eq!(m.homology_total(1).rank, 1);
    }

    #[test]
    fn monoid_arithmetic() {
        let c = CyclicMonoid { index: 1, period: 2 };
        assert_eq!(c.add(2, 2), 2);
        assert_eq!(c.add(1, 1), 2);
        assert_eq!(c.add(2, 1), 1);
    }

    #[test]
    fn bar_constructions_are_simplicial() {
        for seed in 0..5 {
            let (desc, s) = random_simplicial_algebra(seed);
            assert!(check_simplicial(&s).is_empty(), "{desc}");
        }
    }
}

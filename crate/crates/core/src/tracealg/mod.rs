//! Trace algebras of a precubical set: reachability pairs, edge paths, chained 2-cell
//! sequences, and mixed edge/2-cell sequences, with their boundary maps.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::exactalg::algebra::{AlgebraBuilder, BasisWord, ConcatRule, GradedAlgebra, Grading};
use crate::exactalg::{AlgebraElement, AlgebraError, Morphism};
use crate::precubical::{PathWord, PrecubicalError, PrecubicalSet};

#[derive(Debug, thiserror::Error)]
pub enum TraceError {
    #[error(transparent)]
    Precubical(#[from] PrecubicalError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("`{0}` is longer than the length cap; raise --max-len")]
    Truncated(String),
    #[error("boundary paths of 2-cell `{0}` do not share endpoints")]
    EndpointMismatch(String),
}

fn vertex_index(c: &PrecubicalSet) -> HashMap<&str, usize> {
    c.vertices().iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect()
}

/// Reachability algebra: basis `(x, y)` for every directed path `x → y`, with
/// `(x, y) × (y, t) = (x, t)` and all other products zero.
pub fn r0_algebra(c: &PrecubicalSet) -> Result<GradedAlgebra, TraceError> {
    c.ensure_valid()?;
    let pairs = c.reachable_pairs();
    let mut b = AlgebraBuilder::new(Grading::Composable);
    for v in c.vertices() {
        b.object(v.clone());
    }
    let mut index = BTreeMap::new();
    for &(x, y) in &pairs {
        let name = format!("({},{})", c.vertices()[x], c.vertices()[y]);
        index.insert((x, y), b.word(name, x, y));
    }
    for (&(x, y), &w) in &index {
        if x == y {
            b.identity(x, w);
        }
        for (&(y2, t), &w2) in index.range((y, 0)..=(y, usize::MAX)) {
            debug_assert_eq!(y2, y);
            b.product(w, w2, AlgebraElement::basis(index[&(x, t)]));
        }
    }
    Ok(b.build()?)
}

/// Path algebra of the 1-skeleton, truncated to paths of at most `max_len` edges.
#[derive(Clone, Debug)]
pub struct PathAlgebra {
    algebra: Arc<GradedAlgebra>,
    paths: Vec<PathWord>,
    lookup: HashMap<(String, Vec<String>), usize>,
    max_len: usize,
    cyclic: bool,
}

impl PathAlgebra {
    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn paths(&self) -> &[PathWord] {
        &self.paths
    }

    pub fn path(&self, word: usize) -> &PathWord {
        &self.paths[word]
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    /// Whether longer paths than the cap exist (always so for cyclic complexes).
    pub fn is_truncated(&self) -> bool {
        self.algebra.is_truncated()
    }

    pub fn word_of(&self, p: &PathWord) -> Option<usize> {
        self.lookup.get(&(p.start.clone(), p.edges.clone())).copied()
    }

    /// Word for the edge sequence `edges` starting at `start`.
    pub fn word(&self, start: &str, edges: &[&str]) -> Option<usize> {
        self.lookup.get(&(start.to_string(), edges.iter().map(|s| s.to_string()).collect())).copied()
    }

    pub fn element(&self, start: &str, edges: &[&str]) -> Result<AlgebraElement, TraceError> {
        self.word(start, edges).map(AlgebraElement::basis).ok_or_else(|| TraceError::Truncated(edges.join("·")))
    }
}

/// Builds the path algebra. `max_len = None` uses `|C_1|`, which is complete for acyclic
/// complexes; cyclic complexes need an explicit cap.
pub fn path_algebra(c: &PrecubicalSet, max_len: Option<usize>) -> Result<PathAlgebra, TraceError> {
    c.ensure_valid()?;
    let cyclic = !c.is_acyclic();
    let max_len = match max_len {
        Some(l) => l,
        None => c.default_max_len().ok_or(PrecubicalError::NeedsCap)?,
    };
    let paths = c.all_paths(max_len);
    let truncated = cyclic || c.all_paths(max_len + 1).len() > paths.len();
    let vidx = vertex_index(c);
    let eidx: HashMap<&str, u32> = c.edges().iter().enumerate().map(|(i, e)| (e.as_str(), i as u32)).collect();
    let mut words = Vec::with_capacity(paths.len());
    let mut sources = Vec::with_capacity(paths.len());
    let mut items = Vec::with_capacity(paths.len());
    let mut identities = BTreeMap::new();
    let mut lookup = HashMap::new();
    for (k, p) in paths.iter().enumerate() {
        let s = vidx[p.start.as_str()];
        let t = match p.edges.last() {
            Some(e) => vidx[c.target(e).expect("validated edge")],
            None => s,
        };
        if p.edges.is_empty() {
            identities.insert(s, k);
        }
        words.push(BasisWord { name: p.name(), source: s, target: t });
        sources.push(s);
        items.push(p.edges.iter().map(|e| eidx[e.as_str()]).collect());
        lookup.insert((p.start.clone(), p.edges.clone()), k);
    }
    let rule = Arc::new(ConcatRule::new(sources, items));
    let algebra =
        GradedAlgebra::assemble(c.vertices().to_vec(), words, identities, Grading::Composable, truncated, rule)?;
    Ok(PathAlgebra { algebra: Arc::new(algebra), paths, lookup, max_len, cyclic })
}

/// The two boundary paths of a 2-cell `A`: `(d^0_2 A · d^1_1 A, d^0_1 A · d^1_2 A)`.
pub fn boundary_paths(c: &PrecubicalSet, cell: &str) -> Result<(PathWord, PathWord), TraceError> {
    let f =
        |eps, i| c.face(cell, eps, i).map(str::to_string).ok_or_else(|| PrecubicalError::UnknownCell(cell.to_string()));
    let (top, right, left, bottom) = (f(0, 2)?, f(1, 1)?, f(0, 1)?, f(1, 2)?);
    let ends = |x: &str, y: &str| (c.source(x), c.target(x), c.source(y), c.target(y));
    let (s0, m0, m0b, t0) = ends(&top, &right);
    let (s1, m1, m1b, t1) = ends(&left, &bottom);
    if m0 != m0b || m1 != m1b || s0 != s1 || t0 != t1 || s0.is_none() {
        return Err(TraceError::EndpointMismatch(cell.to_string()));
    }
    let start = s0.unwrap().to_string();
    Ok((PathWord { start: start.clone(), edges: vec![top, right] }, PathWord { start, edges: vec![left, bottom] }))
}

/// `d^0_2 A · d^1_1 A − d^0_1 A · d^1_2 A`, homogeneous in grade (initial, final corner).
pub fn cell_relation(c: &PrecubicalSet, p: &PathAlgebra, cell: &str) -> Result<AlgebraElement, TraceError> {
    let (x, y) = boundary_paths(c, cell)?;
    let wx = p.word_of(&x).ok_or_else(|| TraceError::Truncated(x.name()))?;
    let wy = p.word_of(&y).ok_or_else(|| TraceError::Truncated(y.name()))?;
    Ok(&AlgebraElement::basis(wx) - &AlgebraElement::basis(wy))
}

/// Chained sequences of cells: words are item lists, concatenation multiplies.
#[derive(Clone, Debug)]
pub struct SequenceAlgebra {
    algebra: Arc<GradedAlgebra>,
    sequences: Vec<Vec<Item>>,
    lookup: HashMap<Vec<Item>, usize>,
}

/// Letter of a mixed sequence: an edge or a 2-cell, by index in the complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    Edge(usize),
    Cell(usize),
}

impl SequenceAlgebra {
    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn sequences(&self) -> &[Vec<Item>] {
        &self.sequences
    }

    pub fn word_of(&self, items: &[Item]) -> Option<usize> {
        self.lookup.get(items).copied()
    }
}

fn item_ends(c: &PrecubicalSet, vidx: &HashMap<&str, usize>, it: Item) -> (usize, usize) {
    match it {
        Item::Edge(e) => {
            let id = &c.edges()[e];
            (vidx[c.source(id).unwrap()], vidx[c.target(id).unwrap()])
        }
        Item::Cell(a) => {
            let id = &c.squares()[a];
            (vidx[c.corner(id, 0).unwrap()], vidx[c.corner(id, 1).unwrap()])
        }
    }
}

fn item_name(c: &PrecubicalSet, it: Item) -> String {
    match it {
        Item::Edge(e) => c.edges()[e].clone(),
        Item::Cell(a) => format!("[{}]", c.squares()[a]),
    }
}

/// Enumerates chained item sequences by depth-first search in item order.
/// `weight` bounds the total; `with_empty` adds the empty sequence at each vertex.
fn build_sequences(
    c: &PrecubicalSet,
    alphabet: &[Item],
    weight: impl Fn(Item) -> usize,
    budget: usize,
    with_empty: bool,
) -> Result<SequenceAlgebra, TraceError> {
    let vidx = vertex_index(c);
    let mut by_start: Vec<Vec<Item>> = vec![Vec::new(); c.vertices().len()];
    for &it in alphabet {
        by_start[item_ends(c, &vidx, it).0].push(it);
    }
    let mut seqs: Vec<(usize, Vec<Item>)> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        c: &PrecubicalSet,
        vidx: &HashMap<&str, usize>,
        by_start: &[Vec<Item>],
        weight: &dyn Fn(Item) -> usize,
        v: usize,
        left: usize,
        cur: &mut Vec<Item>,
        start: usize,
        out: &mut Vec<(usize, Vec<Item>)>,
    ) {
        for &it in &by_start[v] {
            let w = weight(it);
            if w > left {
                continue;
            }
            cur.push(it);
            out.push((start, cur.clone()));
            dfs(c, vidx, by_start, weight, item_ends(c, vidx, it).1, left - w, cur, start, out);
            cur.pop();
        }
    }
    for v in 0..c.vertices().len() {
        if with_empty {
            seqs.push((v, Vec::new()));
        }
        dfs(c, &vidx, &by_start, &weight, v, budget, &mut Vec::new(), v, &mut seqs);
    }
    let cells_only = alphabet.iter().all(|i| matches!(i, Item::Cell(_)));
    let names: Vec<String> = seqs
        .iter()
        .map(|(v, s)| {
            if s.is_empty() {
                format!("e_{}", c.vertices()[*v])
            } else if cells_only {
                let ids: Vec<String> = s.iter().map(|&i| item_name(c, i)).collect();
                format!("({})", ids.join(",").replace(['[', ']'], ""))
            } else {
                s.iter().map(|&i| item_name(c, i)).collect::<Vec<_>>().join("·")
            }
        })
        .collect();
    let mut order: Vec<usize> = (0..seqs.len()).collect();
    order.sort_by(|&a, &b| (seqs[a].0, seqs[a].1.len(), &names[a]).cmp(&(seqs[b].0, seqs[b].1.len(), &names[b])));
    let n_edges = c.edges().len() as u32;
    let encode = |it: Item| match it {
        Item::Edge(e) => e as u32,
        Item::Cell(a) => n_edges + a as u32,
    };
    let mut words = Vec::new();
    let mut sources = Vec::new();
    let mut items = Vec::new();
    let mut sequences = Vec::new();
    let mut identities = BTreeMap::new();
    let mut lookup = HashMap::new();
    for (k, &i) in order.iter().enumerate() {
        let (v, s) = &seqs[i];
        let t = s.last().map_or(*v, |&it| item_ends(c, &vidx, it).1);
        if s.is_empty() {
            identities.insert(*v, k);
        }
        words.push(BasisWord { name: names[i].clone(), source: *v, target: t });
        sources.push(*v);
        items.push(s.iter().map(|&it| encode(it)).collect());
        lookup.insert(s.clone(), k);
        sequences.push(s.clone());
    }
    let truncated = alphabet.iter().any(|&it| weight(it) > budget)
        || seqs.iter().any(|(v, s)| {
            let w: usize = s.iter().map(|&i| weight(i)).sum();
            let end = s.last().map_or(*v, |&it| item_ends(c, &vidx, it).1);
            by_start[end].iter().any(|&it| w + weight(it) > budget)
        });
    let rule = Arc::new(ConcatRule::new(sources, items));
    let algebra =
        GradedAlgebra::assemble(c.vertices().to_vec(), words, identities, Grading::Composable, truncated, rule)?;
    // keys for empty sequences collide across vertices; keep only nonempty ones
    lookup.retain(|s: &Vec<Item>, _| !s.is_empty());
    Ok(SequenceAlgebra { algebra: Arc::new(algebra), sequences, lookup })
}

/// Algebra of nonempty chained 2-cell sequences `(A_1, …, A_k)` with the final corner of
/// `A_i` equal to the initial corner of `A_{i+1}`; at most `max_cells` cells per sequence.
/// `None` means no cap, which requires an acyclic complex.
pub fn two_path_algebra(c: &PrecubicalSet, max_cells: Option<usize>) -> Result<SequenceAlgebra, TraceError> {
    c.ensure_valid()?;
    let max_cells = match max_cells {
        Some(k) => k,
        None if c.is_acyclic() => c.squares().len(),
        None => return Err(PrecubicalError::NeedsCap.into()),
    };
    let alphabet: Vec<Item> = (0..c.squares().len()).map(Item::Cell).collect();
    build_sequences(c, &alphabet, |_| 1, max_cells, false)
}

/// Mixed sequences of edges and 2-cells, with edges weighing 1 and 2-cells 2, of total
/// weight at most `max_len`, constant sequences included.
pub fn mixed_sequence_algebra(c: &PrecubicalSet, max_len: usize) -> Result<SequenceAlgebra, TraceError> {
    c.ensure_valid()?;
    let alphabet: Vec<Item> =
        (0..c.edges().len()).map(Item::Edge).chain((0..c.squares().len()).map(Item::Cell)).collect();
    build_sequences(c, &alphabet, |i| if matches!(i, Item::Cell(_)) { 2 } else { 1 }, max_len, true)
}

/// The map sending each 2-cell to one of its boundary paths (`side = 0`: `d^0_2·d^1_1`,
/// `side = 1`: `d^0_1·d^1_2`) and each edge to itself.
pub fn boundary_map(
    c: &PrecubicalSet,
    seqs: &SequenceAlgebra,
    paths: &PathAlgebra,
    side: u8,
) -> Result<Morphism, TraceError> {
    let vidx = vertex_index(c);
    let boundaries = c.squares().iter().map(|a| boundary_paths(c, a)).collect::<Result<Vec<_>, _>>()?;
    let mut images = Vec::with_capacity(seqs.sequences.len());
    for (k, s) in seqs.sequences.iter().enumerate() {
        let start = c.vertices()[seqs.algebra.word(k).source].clone();
        let mut edges: Vec<String> = Vec::new();
        for &it in s {
            match it {
                Item::Edge(e) => edges.push(c.edges()[e].clone()),
                Item::Cell(a) => {
                    let b = if side == 0 { &boundaries[a].0 } else { &boundaries[a].1 };
                    edges.extend(b.edges.iter().cloned());
                }
            }
        }
        debug_assert!(s.is_empty() || vidx.contains_key(start.as_str()));
        let p = PathWord { start, edges };
        let w = paths.word_of(&p).ok_or_else(|| TraceError::Truncated(p.name()))?;
        images.push(AlgebraElement::basis(w));
    }
    Ok(Morphism::new(seqs.algebra.clone(), paths.algebra.clone(), images)?)
}

/// `(δ_0, δ_1)` from chained 2-cell sequences to paths.
pub fn boundary_maps(
    c: &PrecubicalSet,
    two: &SequenceAlgebra,
    paths: &PathAlgebra,
) -> Result<(Morphism, Morphism), TraceError> {
    Ok((boundary_map(c, two, paths, 0)?, boundary_map(c, two, paths, 1)?))
}

/// Inclusion of paths as edge-only mixed sequences.
pub fn edge_inclusion(c: &PrecubicalSet, paths: &PathAlgebra, mixed: &SequenceAlgebra) -> Result<Morphism, TraceError> {
    let eidx: HashMap<&str, usize> = c.edges().iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
    let vidx = vertex_index(c);
    let mut images = Vec::with_capacity(paths.paths.len());
    for p in &paths.paths {
        let w = if p.edges.is_empty() {
            mixed.algebra.identity(vidx[p.start.as_str()])
        } else {
            let items: Vec<Item> = p.edges.iter().map(|e| Item::Edge(eidx[e.as_str()])).collect();
            mixed.word_of(&items)
        };
        let w = w.ok_or_else(|| TraceError::Truncated(p.name()))?;
        images.push(AlgebraElement::basis(w));
    }
    Ok(Morphism::new(paths.algebra.clone(), mixed.algebra.clone(), images)?)
}

/// The bigrading `∂_0`: each word of `alg` goes to the reachability pair of its endpoints.
pub fn augmentation(alg: &Arc<GradedAlgebra>, r0: &Arc<GradedAlgebra>) -> Result<Morphism, TraceError> {
    let images = alg
        .words()
        .iter()
        .map(|w| r0.basis_element(&format!("({},{})", alg.objects()[w.source], alg.objects()[w.target])))
        .collect::<Result<_, _>>()?;
    Ok(Morphism::new(alg.clone(), r0.clone(), images)?)
}

/// Largest 2-cell sequence length that keeps every boundary image within `max_len`.
pub fn cells_within(max_len: usize) -> usize {
    max_len / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precubical::{empty_square, filled_square, loop_graph, two_holes_left};

    #[test]
    fn reachability_of_filled_square() {
        let c = filled_square();
        let r = r0_algebra(&c).unwrap();
        let mut names: Vec<&str> = r.words().iter().map(|w| w.name.as_str()).collect();
        names.sort_unstable();
        let mut want = vec!["(4,4)", "(3,3)", "(2,2)", "(1,1)", "(4,2)", "(4,3)", "(4,1)", "(2,1)", "(3,1)"];
        want.sort_unstable();
        assert_eq!(names, want);
        let x = r.basis_element("(4,2)").unwrap();
        let y = r.basis_element("(2,1)").unwrap();
        assert_eq!(r.multiply(&x, &y).unwrap(), r.basis_element("(4,1)").unwrap());
        assert!(r.check_idempotents().is_ok());
    }

    #[test]
    fn loop_algebra_is_truncated_polynomials() {
        let p = path_algebra(&loop_graph(), Some(5)).unwrap();
        assert_eq!(p.algebra().dim(), 6);
        let t2 = p.element("u", &["t", "t"]).unwrap();
        let t3 = p.element("u", &["t", "t", "t"]).unwrap();
        assert_eq!(p.algebra().multiply(&t2, &t3).unwrap(), p.element("u", &["t"; 5]).unwrap());
        assert!(p.algebra().multiply(&t3, &t3).is_err());
        assert!(path_algebra(&loop_graph(), None).is_err());
    }

    #[test]
    fn two_cell_sequences() {
        let c = two_holes_left();
        let t = two_path_algebra(&c, None).unwrap();
        let names: Vec<&str> = t.algebra().words().iter().map(|w| w.name.as_str()).collect();
        assert_eq!(names.len(), 3);
        for n in ["(C)", "(D)", "(C,D)"] {
            assert!(names.contains(&n), "{names:?}");
        }
        assert_eq!(two_path_algebra(&filled_square(), None).unwrap().algebra().dim(), 1);
        assert_eq!(two_path_algebra(&empty_square(), None).unwrap().algebra().dim(), 0);
    }

    #[test]
    fn relations_and_boundaries() {
        let c = filled_square();
        let p = path_algebra(&c, None).unwrap();
        let r = cell_relation(&c, &p, "C").unwrap();
        assert_eq!(p.algebra().format_element(&r), "a·c - b·d");
        let t = two_path_algebra(&c, None).unwrap();
        let (d0, d1) = boundary_maps(&c, &t, &p).unwrap();
        assert!(d0.is_algebra_map() && d1.is_algebra_map());
        let r0 = Arc::new(r0_algebra(&c).unwrap());
        assert!(augmentation(p.algebra(), &r0).unwrap().is_algebra_map());
        let cw = AlgebraElement::basis(0);
        assert_eq!(&d0.apply(&cw) - &d1.apply(&cw), r);
    }

    #[test]
    fn mixed_sequences_of_filled_square() {
        let c = filled_square();
        let m = mixed_sequence_algebra(&c, 4).unwrap();
        // 4 constants, 4 edges, ac, bd, [C]
        assert_eq!(m.algebra().dim(), 11);
        let p = path_algebra(&c, None).unwrap();
        let s0 = edge_inclusion(&c, &p, &m).unwrap();
        let d0 = boundary_map(&c, &m, &p, 0).unwrap();
        assert!(s0.is_algebra_map() && d0.is_algebra_map());
        let back = s0.then(&d0).unwrap();
        for w in 0..p.algebra().dim() {
            assert_eq!(back.image_of(w), &AlgebraElement::basis(w));
        }
    }
}

//! Finite precubical sets: storage, validation, and edge paths on the 1-skeleton.
//!
//! Face convention: `d^ε_i` of an `n`-cell is the `(n-1)`-cell obtained by freezing its
//! `i`-th coordinate to `ε`, for `i` in `1..=n`. For an edge, `d^0_1` is the source and
//! `d^1_1` the target. For a square, `d^0_1`/`d^1_1` are the two edges transverse to the
//! first coordinate and `d^0_2`/`d^1_2` the two transverse to the second; the initial
//! corner is `d^0_1 d^0_1` and the final corner `d^1_1 d^1_1`.

mod builders;
mod json;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

pub use builders::{
    empty_square, filled_square, grid_complex, hollow_cube, kronecker_quiver, labeled_grid, loop_graph,
    two_half_circles, two_holes_left, two_holes_right, GridLabels,
};

#[derive(Debug, thiserror::Error)]
pub enum PrecubicalError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error("duplicate cell id `{0}`")]
    DuplicateId(String),
    #[error("cell set is not closed under faces: `{cell}` has face `{face}` outside it")]
    NotClosed { cell: String, face: String },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("complex has a directed cycle; an explicit length cap is required")]
    NeedsCap,
    #[error("complex is invalid: {0}")]
    Invalid(Violation),
    #[error("malformed complex document: {0}")]
    Parse(#[from] serde_json::Error),
}

/// The two face lists of a cell: `zero[i-1] = d^0_i`, `one[i-1] = d^1_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CellFaces {
    pub zero: Vec<String>,
    pub one: Vec<String>,
}

impl CellFaces {
    pub fn get(&self, eps: u8, i: usize) -> Option<&str> {
        let list = if eps == 0 { &self.zero } else { &self.one };
        list.get(i.checked_sub(1)?).map(String::as_str)
    }
}

/// A problem found by [`PrecubicalSet::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateCell {
        cell: String,
    },
    MissingFaces {
        cell: String,
    },
    StrayFaces {
        cell: String,
    },
    Arity {
        cell: String,
        eps: u8,
        expected: usize,
        found: usize,
    },
    DanglingFace {
        cell: String,
        face: String,
    },
    WrongDimension {
        cell: String,
        face: String,
        expected: usize,
        found: usize,
    },
    /// `d^eps_i d^eta_j (cell) = left` but `d^eta_{j-1} d^eps_i (cell) = right`.
    Identity {
        cell: String,
        eps: u8,
        eta: u8,
        i: usize,
        j: usize,
        left: String,
        right: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateCell { cell } => write!(f, "cell `{cell}` is listed more than once"),
            Violation::MissingFaces { cell } => write!(f, "cell `{cell}` has no face entry"),
            Violation::StrayFaces { cell } => {
                write!(f, "face entry for `{cell}`, which is not a cell of positive dimension")
            }
            Violation::Arity { cell, eps, expected, found } => {
                write!(f, "cell `{cell}` lists {found} faces d^{eps}_i, expected {expected}")
            }
            Violation::DanglingFace { cell, face } => write!(f, "cell `{cell}` refers to unknown face `{face}`"),
            Violation::WrongDimension { cell, face, expected, found } => {
                write!(f, "face `{face}` of `{cell}` has dimension {found}, expected {expected}")
            }
            Violation::Identity { cell, eps, eta, i, j, left, right } => write!(
                f,
                "identity d^{eps}_{i} d^{eta}_{j} = d^{eta}_{} d^{eps}_{i} fails at `{cell}`: `{left}` vs `{right}`",
                j - 1
            ),
        }
    }
}

/// A composable sequence of edges; the empty sequence is the constant path at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    pub start: String,
    pub edges: Vec<String>,
}

impl PathWord {
    /// Basis-word name: `e_<start>` for constant paths, else edge ids joined by `·`.
    pub fn name(&self) -> String {
        if self.edges.is_empty() {
            format!("e_{}", self.start)
        } else {
            self.edges.join("·")
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Finite precubical set with string cell ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrecubicalSet {
    cells: Vec<Vec<String>>,
    faces: BTreeMap<String, CellFaces>,
}

impl PrecubicalSet {
    /// Stores cells and faces as given; call [`validate`](Self::validate) before computing.
    pub fn new(cells: Vec<Vec<String>>, faces: BTreeMap<String, CellFaces>) -> Self {
        let mut cells = cells;
        while cells.last().is_some_and(Vec::is_empty) {
            cells.pop();
        }
        PrecubicalSet { cells, faces }
    }

    pub fn empty() -> Self {
        PrecubicalSet::default()
    }

    /// Highest dimension with at least one cell; `None` for the empty set.
    pub fn top_dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn cells(&self, n: usize) -> &[String] {
        self.cells.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn vertices(&self) -> &[String] {
        self.cells(0)
    }

    pub fn edges(&self) -> &[String] {
        self.cells(1)
    }

    pub fn squares(&self) -> &[String] {
        self.cells(2)
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn faces(&self) -> &BTreeMap<String, CellFaces> {
        &self.faces
    }

    pub fn dim_of(&self, id: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.iter().any(|x| x == id))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.dim_of(id).is_some()
    }

    /// `d^eps_i (cell)`.
    pub fn face(&self, cell: &str, eps: u8, i: usize) -> Option<&str> {
        self.faces.get(cell)?.get(eps, i)
    }

    /// `d^eps_1 d^eps_1 ...` down to a vertex: the initial (`eps = 0`) or final corner.
    pub fn corner<'a>(&'a self, cell: &'a str, eps: u8) -> Option<&'a str> {
        let mut cur = cell;
        while self.dim_of(cur)? > 0 {
            cur = self.face(cur, eps, 1)?;
        }
        Some(cur)
    }

    pub fn source(&self, edge: &str) -> Option<&str> {
        self.face(edge, 0, 1)
    }

    pub fn target(&self, edge: &str) -> Option<&str> {
        self.face(edge, 1, 1)
    }

    /// Every structural problem and failed precubical identity, in a deterministic order.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut dim: HashMap<&str, usize> = HashMap::new();
        for (n, level) in self.cells.iter().enumerate() {
            for c in level {
                if dim.insert(c.as_str(), n).is_some() {
                    out.push(Violation::DuplicateCell { cell: c.clone() });
                }
            }
        }
        for id in self.faces.keys() {
            if dim.get(id.as_str()).is_none_or(|&n| n == 0) {
                out.push(Violation::StrayFaces { cell: id.clone() });
            }
        }
        let mut sound: HashSet<&str> = HashSet::new();
        for (n, level) in self.cells.iter().enumerate().skip(1) {
            for c in level {
                let Some(fs) = self.faces.get(c) else {
                    out.push(Violation::MissingFaces { cell: c.clone() });
                    continue;
                };
                let mut ok = true;
                for (eps, list) in [(0u8, &fs.zero), (1u8, &fs.one)] {
                    if list.len() != n {
                        out.push(Violation::Arity { cell: c.clone(), eps, expected: n, found: list.len() });
                        ok = false;
                    }
                    for f in list {
                        match dim.get(f.as_str()) {
                            None => {
                                out.push(Violation::DanglingFace { cell: c.clone(), face: f.clone() });
                                ok = false;
                            }
                            Some(&m) if m + 1 != n => {
                                out.push(Violation::WrongDimension {
                                    cell: c.clone(),
                                    face: f.clone(),
                                    expected: n - 1,
                                    found: m,
                                });
                                ok = false;
                            }
                            _ => {}
                        }
                    }
                }
                if ok {
                    sound.insert(c.as_str());
                }
            }
        }
        for (n, level) in self.cells.iter().enumerate().skip(2) {
            for c in level {
                if !sound.contains(c.as_str()) {
                    continue;
                }
                for i in 1..n {
                    for j in (i + 1)..=n {
                        for eps in 0..2u8 {
                            for eta in 0..2u8 {
                                let outer = self.face(c, eta, j).unwrap();
                                let inner = self.face(c, eps, i).unwrap();
                                if !sound.contains(outer) || !sound.contains(inner) {
                                    continue;
                                }
                                let left = self.face(outer, eps, i).unwrap();
                                let right = self.face(inner, eta, j - 1).unwrap();
                                if left != right {
                                    out.push(Violation::Identity {
                                        cell: c.clone(),
                                        eps,
                                        eta,
                                        i,
                                        j,
                                        left: left.to_string(),
                                        right: right.to_string(),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Fails with the first violation, if any.
    pub fn ensure_valid(&self) -> Result<(), PrecubicalError> {
        match self.validate().into_iter().next() {
            Some(v) => Err(PrecubicalError::Invalid(v)),
            None => Ok(()),
        }
    }

    fn skeleton(&self) -> Skeleton<'_> {
        let vertex: HashMap<&str, usize> = self.vertices().iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.vertices().len()];
        let mut ends = Vec::with_capacity(self.edges().len());
        for (k, e) in self.edges().iter().enumerate() {
            let s = vertex[self.source(e).expect("validated edge")];
            let t = vertex[self.target(e).expect("validated edge")];
            out[s].push(k);
            ends.push((s, t));
        }
        // lexicographic enumeration follows edge-id order
        for list in &mut out {
            list.sort_by(|&x, &y| self.edges()[x].cmp(&self.edges()[y]));
        }
        Skeleton { set: self, vertex, out, ends }
    }

    /// True iff the 1-skeleton has no directed cycle (self-loops count as cycles).
    pub fn is_acyclic(&self) -> bool {
        let sk = self.skeleton();
        let n = self.vertices().len();
        let mut indeg = vec![0usize; n];
        for &(_, t) in &sk.ends {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &e in &sk.out[v] {
                let t = sk.ends[e].1;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        seen == n
    }

    /// `|C_1|` for acyclic complexes, which bounds every path; `None` when a cap is required.
    pub fn default_max_len(&self) -> Option<usize> {
        self.is_acyclic().then_some(self.edges().len())
    }

    /// All edge paths `a → b` with at most `max_len` edges, lexicographic by edge ids.
    pub fn enumerate_paths(&self, a: &str, b: &str, max_len: usize) -> Result<Vec<PathWord>, PrecubicalError> {
        let sk = self.skeleton();
        let &s = sk.vertex.get(a).ok_or_else(|| PrecubicalError::UnknownVertex(a.into()))?;
        let &t = sk.vertex.get(b).ok_or_else(|| PrecubicalError::UnknownVertex(b.into()))?;
        let mut out = Vec::new();
        sk.walk(s, max_len, &mut Vec::new(), &mut |end, edges| {
            if end == t {
                out.push(sk.path(s, edges));
            }
        });
        Ok(out)
    }

    /// Every path of length at most `max_len`, grouped by start vertex in vertex order and
    /// lexicographic within a start vertex.
    pub fn all_paths(&self, max_len: usize) -> Vec<PathWord> {
        let sk = self.skeleton();
        let mut out = Vec::new();
        for s in 0..self.vertices().len() {
            sk.walk(s, max_len, &mut Vec::new(), &mut |_, edges| out.push(sk.path(s, edges)));
        }
        out
    }

    /// Pairs `(x, y)` of vertices with a directed edge path `x → y`, including `x = y`.
    pub fn reachable_pairs(&self) -> BTreeSet<(usize, usize)> {
        let sk = self.skeleton();
        let mut out = BTreeSet::new();
        for s in 0..self.vertices().len() {
            let mut seen = vec![false; self.vertices().len()];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                out.insert((s, v));
                for &e in &sk.out[v] {
                    let t = sk.ends[e].1;
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        out
    }

    /// Renames cells; ids missing from `map` keep their name.
    pub fn relabel(&self, map: &HashMap<String, String>) -> PrecubicalSet {
        let r = |s: &String| map.get(s).cloned().unwrap_or_else(|| s.clone());
        let cells = self.cells.iter().map(|l| l.iter().map(r).collect()).collect();
        let faces = self
            .faces
            .iter()
            .map(|(k, f)| {
                (r(k), CellFaces { zero: f.zero.iter().map(r).collect(), one: f.one.iter().map(r).collect() })
            })
            .collect();
        PrecubicalSet::new(cells, faces)
    }

    /// Prefixes every id.
    pub fn prefixed(&self, prefix: &str) -> PrecubicalSet {
        let map = self.cells.iter().flatten().map(|c| (c.clone(), format!("{prefix}{c}"))).collect();
        self.relabel(&map)
    }

    /// Union of two complexes with disjoint ids.
    pub fn disjoint_union(&self, other: &PrecubicalSet) -> Result<PrecubicalSet, PrecubicalError> {
        let mine: HashSet<&String> = self.cells.iter().flatten().collect();
        if let Some(c) = other.cells.iter().flatten().find(|c| mine.contains(c)) {
            return Err(PrecubicalError::DuplicateId(c.clone()));
        }
        let n = self.cells.len().max(other.cells.len());
        let cells = (0..n).map(|k| self.cells(k).iter().chain(other.cells(k)).cloned().collect()).collect();
        let mut faces = self.faces.clone();
        faces.extend(other.faces.clone());
        Ok(PrecubicalSet::new(cells, faces))
    }

    /// The subcomplex on the given cells, which must be closed under faces.
    pub fn subcomplex(&self, ids: &[&str]) -> Result<PrecubicalSet, PrecubicalError> {
        let keep: HashSet<&str> = ids.iter().copied().collect();
        for &id in ids {
            if !self.contains(id) {
                return Err(PrecubicalError::UnknownCell(id.into()));
            }
            if let Some(fs) = self.faces.get(id) {
                if let Some(f) = fs.zero.iter().chain(&fs.one).find(|f| !keep.contains(f.as_str())) {
                    return Err(PrecubicalError::NotClosed { cell: id.into(), face: f.clone() });
                }
            }
        }
        let cells =
            self.cells.iter().map(|l| l.iter().filter(|c| keep.contains(c.as_str())).cloned().collect()).collect();
        let faces =
            self.faces.iter().filter(|(k, _)| keep.contains(k.as_str())).map(|(k, f)| (k.clone(), f.clone())).collect();
        Ok(PrecubicalSet::new(cells, faces))
    }
}

struct Skeleton<'a> {
    set: &'a PrecubicalSet,
    vertex: HashMap<&'a str, usize>,
    out: Vec<Vec<usize>>,
    ends: Vec<(usize, usize)>,
}

impl Skeleton<'_> {
    fn walk(&self, v: usize, budget: usize, stack: &mut Vec<usize>, visit: &mut impl FnMut(usize, &[usize])) {
        visit(v, stack);
        if budget == 0 {
            return;
        }
        for &e in &self.out[v] {
            stack.push(e);
            self.walk(self.ends[e].1, budget - 1, stack, visit);
            stack.pop();
        }
    }

    fn path(&self, start: usize, edges: &[usize]) -> PathWord {
        PathWord {
            start: self.set.vertices()[start].clone(),
            edges: edges.iter().map(|&e| self.set.edges()[e].clone()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_set_is_valid() {
        assert!(PrecubicalSet::empty().validate().is_empty());
        assert!(PrecubicalSet::empty().is_acyclic());
    }

    #[test]
    fn rewired_left_edge_breaks_one_identity() {
        let mut c = filled_square();
        // left edge b: 4 -> 3; send it to 2 instead
        c.faces.get_mut("b").unwrap().one[0] = "2".into();
        let v = c.validate();
        assert_eq!(v.len(), 1, "{v:?}");
        match &v[0] {
            Violation::Identity { cell, eps, eta, i, j, .. } => {
                assert_eq!((cell.as_str(), *eps, *eta, *i, *j), ("C", 0, 1, 1, 2));
            }
            other => panic!("unexpected violation {other}"),
        }
    }

    #[test]
    fn structural_problems_reported() {
        let mut c = filled_square();
        c.faces.get_mut("a").unwrap().zero.push("4".into());
        c.faces.get_mut("C").unwrap().one[1] = "zz".into();
        let v = c.validate();
        assert!(v.iter().any(|x| matches!(x, Violation::Arity { cell, .. } if cell == "a")));
        assert!(v.iter().any(|x| matches!(x, Violation::DanglingFace { face, .. } if face == "zz")));
    }

    #[test]
    fn paths_in_empty_square() {
        let c = empty_square();
        let p = c.enumerate_paths("4", "1", 4).unwrap();
        let names: Vec<String> = p.iter().map(PathWord::name).collect();
        assert_eq!(names, vec!["a·c", "b·d"]);
        let own = c.enumerate_paths("4", "4", 4).unwrap();
        assert_eq!(own.len(), 1);
        assert!(own[0].is_empty());
        assert!(c.enumerate_paths("4", "9", 4).is_err());
    }

    #[test]
    fn acyclicity() {
        assert!(filled_square().is_acyclic());
        assert!(!loop_graph().is_acyclic());
        assert!(!two_half_circles().is_acyclic());
        let discrete = PrecubicalSet::new(vec![vec!["p".into(), "q".into()]], BTreeMap::new());
        assert!(discrete.is_acyclic());
    }

    #[test]
    fn loop_paths_grow_with_cap() {
        let c = loop_graph();
        for cap in 0..6 {
            assert_eq!(c.enumerate_paths("u", "u", cap).unwrap().len(), cap + 1);
        }
    }

    #[test]
    fn subcomplex_must_be_closed() {
        let c = two_half_circles();
        assert!(c.subcomplex(&["1", "2", "u"]).is_ok());
        assert!(matches!(c.subcomplex(&["1", "u"]), Err(PrecubicalError::NotClosed { .. })));
    }

    #[test]
    fn disjoint_union_rejects_shared_ids() {
        let c = filled_square();
        assert!(c.disjoint_union(&c).is_err());
        let u = c.disjoint_union(&c.prefixed("x")).unwrap();
        assert!(u.is_valid());
        assert_eq!(u.cell_count(), 2 * c.cell_count());
    }
}

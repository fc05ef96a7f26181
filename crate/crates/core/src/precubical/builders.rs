//! Named example complexes.

use std::collections::BTreeMap;

use super::{CellFaces, PrecubicalError, PrecubicalSet};

fn faces(zero: &[&str], one: &[&str]) -> CellFaces {
    CellFaces { zero: zero.iter().map(|s| s.to_string()).collect(), one: one.iter().map(|s| s.to_string()).collect() }
}

/// Labels for a rectangular grid of vertices.
///
/// `vertices[r][c]` labels grid point `(r, c)`; `horizontal[r][c]` the edge
/// `(r, c) → (r, c+1)`; `vertical[r][c]` the edge `(r, c) → (r+1, c)`; `squares` lists the
/// filled unit squares by top-left grid point.
#[derive(Clone, Debug)]
pub struct GridLabels {
    pub vertices: Vec<Vec<String>>,
    pub horizontal: Vec<Vec<String>>,
    pub vertical: Vec<Vec<String>>,
    pub squares: Vec<((usize, usize), String)>,
}

/// Grid complex from explicit labels.
///
/// The square with top-left point `(r, c)` has `d^0_2` = top edge, `d^1_1` = right edge,
/// `d^0_1` = left edge, `d^1_2` = bottom edge.
pub fn labeled_grid(labels: &GridLabels) -> Result<PrecubicalSet, PrecubicalError> {
    let rows = labels.vertices.len();
    let cols = labels.vertices.first().map_or(0, Vec::len);
    let shape_ok = labels.vertices.iter().all(|r| r.len() == cols)
        && labels.horizontal.len() == rows
        && labels.horizontal.iter().all(|r| r.len() + 1 == cols.max(1))
        && labels.vertical.len() + 1 == rows.max(1)
        && labels.vertical.iter().all(|r| r.len() == cols);
    if !shape_ok {
        return Err(PrecubicalError::InvalidGrid("label arrays do not match the grid shape".into()));
    }
    let v = |r: usize, c: usize| labels.vertices[r][c].as_str();
    let mut fs = BTreeMap::new();
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols.saturating_sub(1) {
            let id = &labels.horizontal[r][c];
            fs.insert(id.clone(), faces(&[v(r, c)], &[v(r, c + 1)]));
            edges.push(id.clone());
        }
    }
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols {
            let id = &labels.vertical[r][c];
            fs.insert(id.clone(), faces(&[v(r, c)], &[v(r + 1, c)]));
            edges.push(id.clone());
        }
    }
    let mut squares = Vec::new();
    for ((r, c), id) in &labels.squares {
        let (r, c) = (*r, *c);
        if r + 1 >= rows || c + 1 >= cols {
            return Err(PrecubicalError::InvalidGrid(format!("square ({r}, {c}) is outside the grid")));
        }
        let top = labels.horizontal[r][c].as_str();
        let bottom = labels.horizontal[r + 1][c].as_str();
        let left = labels.vertical[r][c].as_str();
        let right = labels.vertical[r][c + 1].as_str();
        fs.insert(id.clone(), faces(&[left, top], &[right, bottom]));
        squares.push(id.clone());
    }
    let mut vertices: Vec<String> = labels.vertices.iter().flatten().cloned().collect();
    vertices.sort_by(|a, b| natural_order(a, b));
    let c = PrecubicalSet::new(vec![vertices, edges, squares], fs);
    c.ensure_valid()?;
    let mut seen = std::collections::HashSet::new();
    for id in (0..3).flat_map(|n| c.cells(n)) {
        if !seen.insert(id) {
            return Err(PrecubicalError::DuplicateId(id.clone()));
        }
    }
    Ok(c)
}

/// Numeric labels first, in numeric order, then the rest lexicographically.
pub(crate) fn natural_order(a: &str, b: &str) -> std::cmp::Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => std::cmp::Ordering::Less,
        (Err(_), Ok(_)) => std::cmp::Ordering::Greater,
        _ => a.cmp(b),
    }
}

fn strings(rows: &[&[&str]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

/// A `rows × cols` grid of vertices with the listed unit squares filled.
///
/// Vertices are numbered `rows*cols` down to `1` in reading order and declared in
/// ascending order. Edges are named `<source>-<target>` and the square with top-left point
/// `(r, c)` is `S<r><c>`, with an underscore between indices when either exceeds 9.
pub fn grid_complex(rows: usize, cols: usize, filled: &[(usize, usize)]) -> Result<PrecubicalSet, PrecubicalError> {
    if rows == 0 || cols == 0 {
        return Err(PrecubicalError::InvalidGrid("grid needs at least one vertex".into()));
    }
    let label = |r: usize, c: usize| (rows * cols - (r * cols + c)).to_string();
    let vertices = (0..rows).map(|r| (0..cols).map(|c| label(r, c)).collect()).collect();
    let horizontal =
        (0..rows).map(|r| (0..cols - 1).map(|c| format!("{}-{}", label(r, c), label(r, c + 1))).collect()).collect();
    let vertical =
        (0..rows - 1).map(|r| (0..cols).map(|c| format!("{}-{}", label(r, c), label(r + 1, c))).collect()).collect();
    let squares = filled
        .iter()
        .map(|&(r, c)| {
            let name = if r > 9 || c > 9 { format!("S{r}_{c}") } else { format!("S{r}{c}") };
            ((r, c), name)
        })
        .collect();
    labeled_grid(&GridLabels { vertices, horizontal, vertical, squares })
}

fn square(filled: bool) -> PrecubicalSet {
    let squares = if filled { vec![((0, 0), "C".to_string())] } else { vec![] };
    labeled_grid(&GridLabels {
        vertices: strings(&[&["4", "2"], &["3", "1"]]),
        horizontal: strings(&[&["a"], &["d"]]),
        vertical: strings(&[&["b", "c"]]),
        squares,
    })
    .expect("square labels are consistent")
}

/// Square `4 → 1` with edges `a: 4→2`, `c: 2→1`, `b: 4→3`, `d: 3→1` and the 2-cell `C`.
pub fn filled_square() -> PrecubicalSet {
    square(true)
}

/// The boundary of [`filled_square`], without its 2-cell.
pub fn empty_square() -> PrecubicalSet {
    square(false)
}

fn two_holes(squares: &[((usize, usize), &str)]) -> PrecubicalSet {
    labeled_grid(&GridLabels {
        vertices: strings(&[&["9", "8", "7"], &["6", "5", "4"], &["3", "2", "1"]]),
        horizontal: strings(&[&["i", "j"], &["d", "f"], &["a", "b"]]),
        vertical: strings(&[&["k", "h", "l"], &["c", "e", "g"]]),
        squares: squares.iter().map(|(p, s)| (*p, s.to_string())).collect(),
    })
    .expect("two-holes labels are consistent")
}

/// 3×3 grid with the top-left (`C`) and bottom-right (`D`) squares filled.
pub fn two_holes_left() -> PrecubicalSet {
    two_holes(&[((0, 0), "C"), ((1, 1), "D")])
}

/// 3×3 grid with the top-right (`E`) and bottom-left (`F`) squares filled.
pub fn two_holes_right() -> PrecubicalSet {
    two_holes(&[((0, 1), "E"), ((1, 0), "F")])
}

/// One vertex `u` with a loop `t`.
pub fn loop_graph() -> PrecubicalSet {
    PrecubicalSet::new(
        vec![vec!["u".into()], vec!["t".into()]],
        BTreeMap::from([("t".to_string(), faces(&["u"], &["u"]))]),
    )
}

/// Two parallel edges `α, β: 1 → 2`.
pub fn kronecker_quiver() -> PrecubicalSet {
    PrecubicalSet::new(
        vec![vec!["1".into(), "2".into()], vec!["α".into(), "β".into()]],
        BTreeMap::from([("α".to_string(), faces(&["1"], &["2"])), ("β".to_string(), faces(&["1"], &["2"]))]),
    )
}

/// Two edges `u: 1 → 2` and `v: 2 → 1` forming a directed circle.
pub fn two_half_circles() -> PrecubicalSet {
    PrecubicalSet::new(
        vec![vec!["1".into(), "2".into()], vec!["u".into(), "v".into()]],
        BTreeMap::from([("u".to_string(), faces(&["1"], &["2"])), ("v".to_string(), faces(&["2"], &["1"]))]),
    )
}

/// Boundary of the 3-cube: 8 vertices, 12 edges, 6 squares, no 3-cell.
///
/// Vertices: `8 = (0,0,0)`, `7 = (1,0,0)`, `4 = (0,1,0)`, `6 = (0,0,1)`, `3 = (1,1,0)`,
/// `5 = (1,0,1)`, `2 = (0,1,1)`, `1 = (1,1,1)`. Edges are named `<source><target>` and the
/// square with frozen axis `k ∈ {x,y,z}` at value `v` is `<k><v>`.
pub fn hollow_cube() -> PrecubicalSet {
    let label = |p: [u8; 3]| -> &'static str {
        match p {
            [0, 0, 0] => "8",
            [1, 0, 0] => "7",
            [0, 1, 0] => "4",
            [0, 0, 1] => "6",
            [1, 1, 0] => "3",
            [1, 0, 1] => "5",
            [0, 1, 1] => "2",
            _ => "1",
        }
    };
    let points: Vec<[u8; 3]> = (0..8u8).map(|m| [m & 1, (m >> 1) & 1, (m >> 2) & 1]).collect();
    let mut fs = BTreeMap::new();
    let mut edges = Vec::new();
    let edge_name = |p: [u8; 3], axis: usize| {
        let mut q = p;
        q[axis] = 1;
        format!("{}{}", label(p), label(q))
    };
    for &p in &points {
        for axis in 0..3 {
            if p[axis] == 0 {
                let mut q = p;
                q[axis] = 1;
                let name = edge_name(p, axis);
                fs.insert(name.clone(), faces(&[label(p)], &[label(q)]));
                edges.push(name);
            }
        }
    }
    let mut squares = Vec::new();
    for (frozen, axis_name) in ["x", "y", "z"].iter().enumerate() {
        let free: Vec<usize> = (0..3).filter(|&a| a != frozen).collect();
        for value in 0..2u8 {
            let mut base = [0u8; 3];
            base[frozen] = value;
            // d^e_1 freezes free[0] to e (an edge along free[1]); d^e_2 freezes free[1]
            let along = |axis: usize, fixed_axis: usize, e: u8| {
                let mut p = base;
                p[fixed_axis] = e;
                edge_name(p, axis)
            };
            let name = format!("{axis_name}{value}");
            let zero = [along(free[1], free[0], 0), along(free[0], free[1], 0)];
            let one = [along(free[1], free[0], 1), along(free[0], free[1], 1)];
            fs.insert(name.clone(), CellFaces { zero: zero.to_vec(), one: one.to_vec() });
            squares.push(name);
        }
    }
    let mut vertices: Vec<String> = points.iter().map(|&p| label(p).to_string()).collect();
    vertices.sort_by(|a, b| natural_order(a, b));
    edges.sort();
    PrecubicalSet::new(vec![vertices, edges, squares], fs)
}

//! Smith normal form over the integers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Dense integer matrix with explicit shape (so `0 x n` matrices keep their width).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged integer matrix");
        IntMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        IntMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    /// Matrix whose columns are the given sparse integer vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[std::collections::BTreeMap<usize, BigInt>]) -> Self {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (&i, x) in col {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i][j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        self.data.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = &self.data[i][k] * &other.data[k][j];
                    out.data[i][j] += p;
                }
            }
        }
        out
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// `row[dst] -= q * row[src]`
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        let (s, d) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst);
            (&lo[src], &mut hi[0])
        } else {
            let (lo, hi) = self.data.split_at_mut(src);
            (&hi[0], &mut lo[dst])
        };
        for (x, y) in d.iter_mut().zip(s) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
    }

    /// `col[dst] -= q * col[src]`
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in &mut self.data {
            if !r[src].is_zero() {
                let d = q * &r[src];
                r[dst] -= d;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -x.clone();
        }
    }
}

/// Rank and invariant factors of an integer matrix.
///
/// The cokernel `Z^rows / image` is `Z^(rows - rank)` plus one cyclic factor per invariant factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfReport {
    pub rank: usize,
    #[serde(serialize_with = "serialize_factors")]
    pub invariant_factors: Vec<BigUint>,
}

pub(crate) fn serialize_factors<S: serde::Serializer>(f: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(f.len()))?;
    for x in f {
        match u64::try_from(x) {
            Ok(n) => seq.serialize_element(&n)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

/// `left * A * right = diag(diagonal, 0...)` with unimodular `left` and `right`.
///
/// The diagonal entries are positive but not normalized into a divisibility chain; use
/// [`invariant_factors`] for that.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

/// Reduces `a` to diagonal form, tracking row operations in `left` and column operations in `right`.
pub fn smith_decomposition(a: &IntMatrix) -> SmithDecomposition {
    let mut m = a.clone();
    let mut left = IntMatrix::identity(a.rows);
    let mut right = IntMatrix::identity(a.cols);
    let mut diagonal = Vec::new();
    let n = a.rows.min(a.cols);
    for t in 0..n {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                let x = &m.data[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m.data[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.data.swap(t, pi);
        left.data.swap(t, pi);
        m.swap_cols(t, pj);
        right.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m.rows {
                if m.data[i][t].is_zero() {
                    continue;
                }
                let q = m.data[i][t].div_floor(&m.data[t][t]);
                m.sub_row(i, t, &q);
                left.sub_row(i, t, &q);
                if !m.data[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..m.cols {
                if m.data[t][j].is_zero() {
                    continue;
                }
                let q = m.data[t][j].div_floor(&m.data[t][t]);
                m.sub_col(j, t, &q);
                right.sub_col(j, t, &q);
                if !m.data[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // move the smallest leftover remainder of row/column t into the pivot
            let mut best = (t, t);
            for i in t + 1..m.rows {
                let x = &m.data[i][t];
                if !x.is_zero() && x.abs() < m.data[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..m.cols {
                let x = &m.data[t][j];
                if !x.is_zero() && x.abs() < m.data[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                m.data.swap(t, best.0);
                left.data.swap(t, best.0);
            }
            if best.1 != t {
                m.swap_cols(t, best.1);
                right.swap_cols(t, best.1);
            }
        }
        if m.data[t][t].is_negative() {
            m.negate_row(t);
            left.negate_row(t);
        }
        diagonal.push(m.data[t][t].clone());
    }
    SmithDecomposition { diagonal, left, right }
}

/// Normalizes nonzero diagonal entries into a divisibility chain and keeps the factors `> 1`.
pub fn invariant_factors(diagonal: &[BigInt]) -> Vec<BigUint> {
    let mut d: Vec<BigInt> = diagonal.iter().map(|x| x.abs()).filter(|x| !x.is_zero()).collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d.into_iter().filter(|x| !x.is_one()).map(|x| x.to_biguint().expect("positive")).collect()
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfReport {
    let dec = smith_decomposition(a);
    SnfReport { rank: dec.rank(), invariant_factors: invariant_factors(&dec.diagonal) }
}

/// Sublattice of `Z^ambient` spanned by a list of integer vectors, with exact membership.
#[derive(Clone, Debug)]
pub struct IntLattice {
    ambient: usize,
    dec: SmithDecomposition,
}

impl IntLattice {
    pub fn span(ambient: usize, generators: &[std::collections::BTreeMap<usize, BigInt>]) -> Self {
        let a = IntMatrix::from_columns(ambient, generators);
        IntLattice { ambient, dec: smith_decomposition(&a) }
    }

    pub fn rank(&self) -> usize {
        self.dec.rank()
    }

    /// Solves `A x = v` over `Z` when possible; `None` if `v` is outside the lattice.
    pub fn contains(&self, v: &std::collections::BTreeMap<usize, BigInt>) -> bool {
        let mut dense = vec![BigInt::zero(); self.ambient];
        for (&i, x) in v {
            dense[i] = x.clone();
        }
        let uv = self.dec.left.mul_vec(&dense);
        uv.iter().enumerate().all(|(i, x)| match self.dec.diagonal.get(i) {
            Some(d) => x.is_multiple_of(d),
            None => x.is_zero(),
        })
    }
}

/// Integer basis of `{ x in Z^cols : A x = 0 }`, as sparse column vectors.
pub fn integer_kernel(a: &IntMatrix) -> Vec<std::collections::BTreeMap<usize, BigInt>> {
    let dec = smith_decomposition(a);
    (dec.rank()..a.cols)
        .map(|j| dec.right.column(j).into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
        .collect()
}

/// Integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let dec = smith_decomposition(a);
    let ub = dec.left.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, x) in ub.iter().enumerate() {
        match dec.diagonal.get(i) {
            Some(d) => {
                if !x.is_multiple_of(d) {
                    return None;
                }
                y[i] = x / d;
            }
            None => {
                if !x.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(dec.right.mul_vec(&y))
}

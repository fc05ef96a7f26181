//! Exact echelon forms over the rationals.

use num_traits::{One, Zero};
use serde::Serialize;

use super::scalar::{axpy, Scalar, SparseVec};

/// A subspace of the free module on `ambient` coordinates, kept in reduced row-echelon form.
///
/// Rows are sorted by pivot, every pivot entry is `1`, and no row has a nonzero entry in
/// another row's pivot column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceBasis {
    ambient: usize,
    #[serde(serialize_with = "serialize_rows")]
    rows: Vec<SparseVec>,
}

fn serialize_rows<S: serde::Serializer>(rows: &[SparseVec], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for row in rows {
        let entries: Vec<(usize, String)> = row.iter().map(|(k, v)| (*k, v.to_string())).collect();
        seq.serialize_element(&entries)?;
    }
    seq.end()
}

fn pivot(v: &SparseVec) -> Option<usize> {
    v.keys().next().copied()
}

impl SubspaceBasis {
    pub fn new(ambient: usize) -> Self {
        SubspaceBasis { ambient, rows: Vec::new() }
    }

    /// The whole ambient module.
    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient).map(|i| SparseVec::from([(i, Scalar::one())])).collect();
        SubspaceBasis { ambient, rows }
    }

    pub fn from_vectors<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = SparseVec>,
    {
        let mut s = SubspaceBasis::new(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().filter_map(pivot).collect()
    }

    /// Coordinates that carry no pivot, in increasing order.
    pub fn non_pivots(&self) -> Vec<usize> {
        let pivots = self.pivots();
        let mut it = pivots.iter().peekable();
        (0..self.ambient)
            .filter(|c| {
                if it.peek() == Some(&c) {
                    it.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for row in &self.rows {
            let p = pivot(row).expect("echelon rows are nonzero");
            if let Some(c) = out.get(&p).cloned() {
                axpy(&mut out, &-c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.keys().all(|&k| k < self.ambient), "coordinate out of range");
        let mut r = self.reduce(&v);
        let Some(p) = pivot(&r) else {
            return false;
        };
        let lead = r[&p].clone();
        if !lead.is_one() {
            let inv = Scalar::one() / lead;
            for c in r.values_mut() {
                *c *= &inv;
            }
        }
        for row in &mut self.rows {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &-c, &r);
            }
        }
        let pos = self.rows.partition_point(|row| pivot(row).unwrap() < p);
        self.rows.insert(pos, r);
        true
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    pub fn same_span(&self, other: &SubspaceBasis) -> bool {
        // Reduced echelon form is canonical.
        self.ambient == other.ambient && self.rows == other.rows
    }

    /// Echelon invariant: pivots strictly increase and are cleared in all other rows.
    pub fn is_reduced_echelon(&self) -> bool {
        let pivots = self.pivots();
        if pivots.len() != self.rows.len() || pivots.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        self.rows.iter().enumerate().all(|(i, row)| {
            row.get(&pivots[i]).is_some_and(|c| c.is_one())
                && pivots.iter().enumerate().all(|(j, p)| j == i || !row.contains_key(p))
                && row.values().all(|c| !c.is_zero())
        })
    }
}

/// Basis of the nullspace of the linear map whose `j`-th column is `columns[j]`.
///
/// Columns are reduced left to right while tracking the combination that produced each
/// reduced column; a column that reduces to zero yields a kernel vector.
pub fn kernel_of_columns(columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut stored: std::collections::BTreeMap<usize, (SparseVec, SparseVec)> = Default::default();
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut img = col.clone();
        let mut comb = SparseVec::from([(j, Scalar::one())]);
        while let Some(p) = pivot(&img) {
            match stored.get(&p) {
                Some((s_img, s_comb)) => {
                    let factor = -(&img[&p] / &s_img[&p]);
                    axpy(&mut img, &factor, s_img);
                    axpy(&mut comb, &factor, s_comb);
                }
                None => break,
            }
        }
        match pivot(&img) {
            Some(p) => {
                stored.insert(p, (img, comb));
            }
            None => kernel.push(comb),
        }
    }
    kernel
}

pub fn rank_of<'a, I>(ambient: usize, vectors: I) -> usize
where
    I: IntoIterator<Item = &'a SparseVec>,
{
    SubspaceBasis::from_vectors(ambient, vectors.into_iter().cloned()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::int;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, c)| (k, int(c))).collect()
    }

    #[test]
    fn insert_tracks_rank_and_reduces() {
        let mut s = SubspaceBasis::new(3);
        assert!(s.insert(v(&[(0, 2), (1, 4)])));
        assert!(s.insert(v(&[(1, 1), (2, 1)])));
        assert!(!s.insert(v(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(s.rank(), 2);
        assert!(s.is_reduced_echelon());
        assert_eq!(s.pivots(), vec![0, 1]);
        assert_eq!(s.non_pivots(), vec![2]);
        assert!(s.contains(&v(&[(0, 1), (1, 2)])));
        assert!(!s.contains(&v(&[(2, 1)])));
    }

    #[test]
    fn kernel_of_dependent_columns() {
        // columns: e0, e1, e0 + e1, 0
        let cols = vec![v(&[(0, 1)]), v(&[(1, 1)]), v(&[(0, 1), (1, 1)]), SparseVec::new()];
        let k = kernel_of_columns(&cols);
        assert_eq!(k.len(), 2);
        for kv in &k {
            let mut img = SparseVec::new();
            for (j, c) in kv {
                axpy(&mut img, c, &cols[*j]);
            }
            assert!(img.is_empty());
        }
    }

    #[test]
    fn full_and_sum() {
        let f = SubspaceBasis::full(2);
        let a = SubspaceBasis::from_vectors(2, [v(&[(0, 1), (1, -1)])]);
        assert!(a.is_subspace_of(&f));
        assert!(!f.is_subspace_of(&a));
        assert!(a.sum(&f).same_span(&f));
    }
}

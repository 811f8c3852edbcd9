//! Incremental sparse Gaussian elimination over ℚ(i).
//!
//! Used for the large, very sparse homogeneous systems that arise from
//! coefficient-wise polynomial identities.

use std::collections::BTreeMap;

use super::GaussianRational as GR;

pub type SparseRow = BTreeMap<usize, GR>;

/// Row echelon basis of the span of the inserted rows.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    ncols: usize,
    /// Keyed by leading column; each row has leading coefficient 1.
    rows: BTreeMap<usize, SparseRow>,
}

fn axpy(row: &mut SparseRow, f: &GR, other: &SparseRow) {
    for (c, v) in other {
        let t = f * v;
        match row.get_mut(c) {
            Some(x) => {
                *x -= &t;
                if x.is_zero() {
                    row.remove(c);
                }
            }
            None => {
                row.insert(*c, -t);
            }
        }
    }
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        let mut cursor = 0;
        loop {
            let Some((&c, _)) = row.range(cursor..).next() else {
                return false;
            };
            match self.rows.get(&c) {
                Some(p) => {
                    let f = row[&c].clone();
                    axpy(&mut row, &f, p);
                    cursor = c + 1;
                }
                None => {
                    let inv = row[&c].inv();
                    for v in row.values_mut() {
                        *v = &*v * &inv;
                    }
                    self.rows.insert(c, row);
                    return true;
                }
            }
        }
    }

    /// Whether `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: &SparseRow) -> bool {
        let mut probe = self.clone();
        !probe.insert(row.clone())
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Fully reduced rows (every pivot column is zero in all other rows).
    pub fn reduced_rows(&self) -> BTreeMap<usize, SparseRow> {
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&p, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            let targets: Vec<usize> = r
                .keys()
                .copied()
                .filter(|c| *c != p && done.contains_key(c))
                .collect();
            for c in targets {
                if let Some(f) = r.get(&c).cloned() {
                    axpy(&mut r, &f, &done[&c]);
                }
            }
            done.insert(p, r);
        }
        done
    }

    /// Basis of the solution space of the homogeneous system, one vector
    /// per free column, in increasing free-column order.
    pub fn nullspace(&self) -> Vec<Vec<GR>> {
        let reduced = self.reduced_rows();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !reduced.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![GR::ZERO; self.ncols];
                v[f] = GR::ONE;
                for (&p, row) in &reduced {
                    if let Some(x) = row.get(&f) {
                        v[p] = -x;
                    }
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Matrix;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, GR::from_int(v))).collect()
    }

    #[test]
    fn agrees_with_dense_nullspace() {
        let dense = Matrix::from_ints(&[
            vec![1, 2, 0, -1, 0],
            vec![0, 0, 1, 3, 0],
            vec![2, 4, 1, 1, 0],
            vec![0, 1, 0, 0, 5],
        ]);
        let mut e = SparseEchelon::new(5);
        for i in 0..dense.rows() {
            let r: SparseRow = dense
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect();
            e.insert(r);
        }
        assert_eq!(e.rank(), dense.rank());
        let ns = e.nullspace();
        assert_eq!(ns.len(), dense.nullspace().len());
        for v in &ns {
            assert!(dense.mul_vec(v).iter().all(GR::is_zero));
        }
    }

    #[test]
    fn dependent_rows_do_not_raise_rank() {
        let mut e = SparseEchelon::new(3);
        assert!(e.insert(row(&[(0, 1), (2, 1)])));
        assert!(!e.insert(row(&[(0, 2), (2, 2)])));
        assert!(e.contains(&row(&[(0, -3), (2, -3)])));
        assert!(!e.contains(&row(&[(1, 1)])));
        assert!(!e.insert(SparseRow::new()));
    }
}

//! Exact linear algebra over a [`Field`].

use std::collections::HashMap;

use crate::field::Field;

/// Row-reduces `rows` in place and returns the rank.
pub fn rank<C: Field>(mut rows: Vec<Vec<C>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].inv();
        for c in col..ncols {
            let v = rows[r][c].clone() * inv.clone();
            rows[r][c] = v;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for c in col..ncols {
                    let v = rows[r][c].clone() * factor.clone();
                    rows[i][c] -= v;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

pub fn determinant<C: Field>(mut m: Vec<Vec<C>>) -> C {
    let n = m.len();
    let mut det = C::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else { return C::zero() };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= pivot.clone();
        let inv = pivot.inv();
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone() * inv.clone();
            for c in col..n {
                let v = m[col][c].clone() * factor.clone();
                m[i][c] -= v;
            }
        }
    }
    det
}

/// Basis of the right kernel `{v : m v = 0}`.
pub fn kernel<C: Field>(m: &[Vec<C>], ncols: usize) -> Vec<Vec<C>> {
    let mut rows: Vec<Vec<C>> = m.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].inv();
        for c in 0..ncols {
            let v = rows[r][c].clone() * inv.clone();
            rows[r][c] = v;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for c in 0..ncols {
                    let v = rows[r][c].clone() * factor.clone();
                    rows[i][c] -= v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![C::zero(); ncols];
        v[free] = C::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Incremental echelon form of sparse rows. Each inserted row is reduced
/// against the current pivots; rows that survive become new pivots.
pub struct SparseEchelon<C: Field> {
    pivots: HashMap<usize, Vec<(usize, C)>>,
}

impl<C: Field> Default for SparseEchelon<C> {
    fn default() -> Self {
        SparseEchelon { pivots: HashMap::new() }
    }
}

impl<C: Field> SparseEchelon<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a row given as (column, value) pairs; returns whether the rank grew.
    pub fn insert(&mut self, row: Vec<(usize, C)>) -> bool {
        let mut dense: std::collections::BTreeMap<usize, C> = std::collections::BTreeMap::new();
        for (c, v) in row {
            if !v.is_zero() {
                let e = dense.entry(c).or_insert_with(C::zero);
                *e += v;
            }
        }
        dense.retain(|_, v| !v.is_zero());
        loop {
            let Some((&col, _)) = dense.iter().next() else { return false };
            match self.pivots.get(&col) {
                Some(prow) => {
                    let factor = dense[&col].clone();
                    for (c, v) in prow {
                        let e = dense.entry(*c).or_insert_with(C::zero);
                        *e -= v.clone() * factor.clone();
                        if e.is_zero() {
                            dense.remove(c);
                        }
                    }
                }
                None => {
                    let inv = dense[&col].inv();
                    let normalized: Vec<(usize, C)> = dense.into_iter().map(|(c, v)| (c, v * inv.clone())).collect();
                    self.pivots.insert(col, normalized);
                    return true;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_traits::{One, Zero};

    type F = Fp<101>;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<F>> {
        rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect()
    }

    #[test]
    fn rank_and_determinant() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(m.clone()), 2);
        assert!(determinant(m).is_zero());
        let id = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(id), -F::one());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = mat(&[&[1, 2, 3, 4], &[0, 1, 1, 1]]);
        let k = kernel(&m, 4);
        assert_eq!(k.len(), 2);
        for v in k {
            for row in &m {
                let s = row.iter().zip(&v).fold(F::zero(), |acc, (a, b)| acc + *a * *b);
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn sparse_echelon_matches_dense_rank() {
        let m = mat(&[&[1, 2, 0, 4], &[2, 4, 0, 8], &[0, 0, 3, 1], &[1, 2, 3, 5]]);
        let mut e = SparseEchelon::new();
        for row in &m {
            e.insert(row.iter().enumerate().map(|(c, v)| (c, *v)).collect());
        }
        assert_eq!(e.rank(), rank(m));
    }
}

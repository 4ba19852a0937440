//! Exact dense linear algebra over a base field: reduced row echelon form,
//! rank and nullspace.
//!
//! Pivots are chosen deterministically (first nonzero entry in column
//! order), so echelon forms and nullspace bases are reproducible
//! byte-for-byte. Everything is plain exact elimination; coefficient growth
//! is absorbed by the arbitrary-precision rationals.

use crate::scalar::{BaseField, Scalar};

/// Dense row-major matrix of exact scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    field: BaseField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    /// Builds a matrix from row-major entries; all entries must lie in `field`.
    pub fn new(field: BaseField, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        assert!(
            data.iter().all(|s| s.field() == field),
            "matrix entries must lie in the declared field"
        );
        Matrix { field, rows, cols, data }
    }

    pub fn zero(field: BaseField, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Scalar::zero(&field); rows * cols],
        }
    }

    pub fn identity(field: BaseField, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(&field));
        }
        m
    }

    /// Builds a matrix from integer entries (convenience for tests).
    pub fn from_i64(field: BaseField, rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&n| Scalar::from_i64(&field, n)))
            .collect();
        Matrix::new(field, r, c, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero(&self.field);
                for c in 0..self.cols {
                    let e = self.get(r, c);
                    if !e.is_zero() && !v[c].is_zero() {
                        acc = &acc + &(e * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // First nonzero entry at or below `row` in this column.
            let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = m.get(row, col).inverse().expect("pivot is nonzero");
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.sub_scaled_row(r, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact basis of `{v : Mv = 0}`, returned in reduced echelon normal
    /// form (stack the vectors as rows and they form an RREF matrix), so the
    /// output is deterministic.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Scalar::zero(&self.field); self.cols];
            v[free] = Scalar::one(&self.field);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return basis;
        }
        // Renormalize the basis itself to reduced echelon form.
        let n = basis.len();
        let flat: Vec<Scalar> = basis.into_iter().flatten().collect();
        let stacked = Matrix::new(self.field, n, self.cols, flat);
        let (rr, _) = stacked.rref();
        (0..n)
            .map(|i| (0..self.cols).map(|j| rr.get(i, j).clone()).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let v = self.get(r, c) * factor;
            self.set(r, c, v);
        }
    }

    /// row[r] -= factor * row[src]
    fn sub_scaled_row(&mut self, r: usize, src: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let v = self.get(r, c) - &(self.get(src, c) * factor);
            self.set(r, c, v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> BaseField {
        BaseField::Q
    }

    #[test]
    fn identity_has_trivial_nullspace() {
        let m = Matrix::identity(q(), 2);
        assert!(m.nullspace().is_empty());
    }

    #[test]
    fn zero_matrix_nullspace_is_standard_basis() {
        let m = Matrix::zero(q(), 2, 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        assert_eq!(ns[0], vec![Scalar::one(&q()), Scalar::zero(&q())]);
        assert_eq!(ns[1], vec![Scalar::zero(&q()), Scalar::one(&q())]);
    }

    #[test]
    fn rank_one_example_by_hand_elimination() {
        // [[1,1],[2,2]] row-reduces to [[1,1],[0,0]]; the kernel is spanned
        // by (1,-1) after echelon renormalization.
        let m = Matrix::from_i64(q(), &[vec![1, 1], vec![2, 2]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![Scalar::one(&q()), Scalar::from_i64(&q(), -1)]);
    }

    fn random_matrix(rng: &mut ChaCha8Rng, field: BaseField, rows: usize, cols: usize) -> Matrix {
        let data = (0..rows * cols)
            .map(|_| Scalar::from_i64(&field, rng.random_range(-4..=4)))
            .collect();
        Matrix::new(field, rows, cols, data)
    }

    #[test]
    fn nullspace_vectors_are_exact_kernel_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [BaseField::Q, BaseField::fp(5).unwrap()] {
            for _ in 0..40 {
                let rows = rng.random_range(1..=12);
                let cols = rng.random_range(1..=12);
                let m = random_matrix(&mut rng, field, rows, cols);
                let ns = m.nullspace();
                for v in &ns {
                    assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
                }
                assert_eq!(m.rank() + ns.len(), cols);
            }
        }
    }

    #[test]
    fn nullspace_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let m = random_matrix(&mut rng, BaseField::Q, 6, 9);
        assert_eq!(m.nullspace(), m.nullspace());
    }
}

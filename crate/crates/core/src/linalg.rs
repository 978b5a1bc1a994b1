//! Small dense exact linear algebra over a [`Field`].
//!
//! Everything here is runtime-dimensioned and dense; the ambient dimension
//! stays in single digits, so there is no sparsity or blocking. All
//! singularity decisions compare against exact zero.

use crate::error::AlgebraError;
use crate::field::Field;

/// Column vector, an element of V.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Vector<F: Field> {
    pub coords: Vec<F::Elem>,
}

/// Row vector, an element of the dual space V*.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Covector<F: Field> {
    pub coords: Vec<F::Elem>,
}

impl<F: Field> Vector<F> {
    pub fn new(coords: Vec<F::Elem>) -> Self {
        Vector { coords }
    }

    pub fn zero(field: &F, n: usize) -> Self {
        Vector {
            coords: vec![field.zero(); n],
        }
    }

    /// Standard basis vector e_i (0-indexed).
    pub fn basis(field: &F, n: usize, i: usize) -> Self {
        let mut coords = vec![field.zero(); n];
        coords[i] = field.one();
        Vector { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.coords.iter().all(|c| field.is_zero(c))
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        Vector {
            coords: zip_map(field, &self.coords, &other.coords, F::add),
        }
    }

    pub fn sub(&self, field: &F, other: &Self) -> Self {
        Vector {
            coords: zip_map(field, &self.coords, &other.coords, F::sub),
        }
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        Vector {
            coords: self.coords.iter().map(|x| field.mul(c, x)).collect(),
        }
    }
}

impl<F: Field> Covector<F> {
    pub fn new(coords: Vec<F::Elem>) -> Self {
        Covector { coords }
    }

    /// Dual basis covector e_i* (0-indexed).
    pub fn basis(field: &F, n: usize, i: usize) -> Self {
        let mut coords = vec![field.zero(); n];
        coords[i] = field.one();
        Covector { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.coords.iter().all(|c| field.is_zero(c))
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        Covector {
            coords: zip_map(field, &self.coords, &other.coords, F::add),
        }
    }

    pub fn sub(&self, field: &F, other: &Self) -> Self {
        Covector {
            coords: zip_map(field, &self.coords, &other.coords, F::sub),
        }
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        Covector {
            coords: self.coords.iter().map(|x| field.mul(c, x)).collect(),
        }
    }

    /// phi(v), the natural pairing.
    pub fn apply(&self, field: &F, v: &Vector<F>) -> F::Elem {
        dot(field, &self.coords, &v.coords)
    }
}

fn zip_map<F: Field>(
    field: &F,
    a: &[F::Elem],
    b: &[F::Elem],
    op: fn(&F, &F::Elem, &F::Elem) -> F::Elem,
) -> Vec<F::Elem> {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    a.iter().zip(b).map(|(x, y)| op(field, x, y)).collect()
}

pub fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        acc = field.add(&acc, &field.mul(x, y));
    }
    acc
}

/// Square matrix over F, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<F: Field> {
    pub n: usize,
    pub field: F,
    entries: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn identity(field: &F, n: usize) -> Self {
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = field.one();
        }
        Matrix {
            n,
            field: field.clone(),
            entries,
        }
    }

    pub fn zero(field: &F, n: usize) -> Self {
        Matrix {
            n,
            field: field.clone(),
            entries: vec![field.zero(); n * n],
        }
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(AlgebraError::ShapeMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix {
            n,
            field: field.clone(),
            entries,
        })
    }

    pub fn from_fn(field: &F, n: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(f(r, c));
            }
        }
        Matrix {
            n,
            field: field.clone(),
            entries,
        }
    }

    /// Rank-one matrix v * phi (the dyadic product).
    pub fn outer(field: &F, v: &Vector<F>, phi: &Covector<F>) -> Self {
        let n = v.len();
        assert_eq!(phi.len(), n, "dimension mismatch");
        Matrix::from_fn(field, n, |r, c| field.mul(&v.coords[r], &phi.coords[c]))
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.entries[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.entries[r * self.n + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.entries[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.n).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        let f = &self.field;
        for r in 0..self.n {
            for c in 0..self.n {
                let e = self.get(r, c);
                if r == c {
                    if !f.is_one(e) {
                        return false;
                    }
                } else if !f.is_zero(e) {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let f = &self.field;
        Matrix {
            n: self.n,
            field: f.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let f = &self.field;
        Matrix {
            n: self.n,
            field: f.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Matrix {
            n: self.n,
            field: f.clone(),
            entries: self.entries.iter().map(|a| f.mul(c, a)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let f = &self.field;
        let n = self.n;
        Matrix::from_fn(f, n, |r, c| {
            let mut acc = f.zero();
            for k in 0..n {
                acc = f.add(&acc, &f.mul(self.get(r, k), other.get(k, c)));
            }
            acc
        })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(&self.field, self.n, |r, c| self.get(c, r).clone())
    }

    /// M * v.
    pub fn apply(&self, v: &Vector<F>) -> Vector<F> {
        assert_eq!(v.len(), self.n);
        let f = &self.field;
        Vector {
            coords: (0..self.n)
                .map(|r| dot(f, self.row(r), &v.coords))
                .collect(),
        }
    }

    /// phi * M (as a row vector).
    pub fn apply_covector(&self, phi: &Covector<F>) -> Covector<F> {
        assert_eq!(phi.len(), self.n);
        let f = &self.field;
        Covector {
            coords: (0..self.n)
                .map(|c| {
                    let mut acc = f.zero();
                    for r in 0..self.n {
                        acc = f.add(&acc, &f.mul(&phi.coords[r], self.get(r, c)));
                    }
                    acc
                })
                .collect(),
        }
    }

    /// The dual action of g on a covector: g . phi = phi o g^{-1}.
    pub fn dual_action(&self, phi: &Covector<F>) -> Result<Covector<F>, AlgebraError> {
        let inv = self.inverse()?;
        Ok(inv.apply_covector(phi))
    }

    pub fn det(&self) -> F::Elem {
        let f = &self.field;
        let mut rows = self.rows();
        let mut det = f.one();
        let n = self.n;
        let mut col = 0;
        for r in 0..n {
            // pivot search
            let mut piv = None;
            for i in r..n {
                if !f.is_zero(&rows[i][col]) {
                    piv = Some(i);
                    break;
                }
            }
            let Some(piv) = piv else {
                return f.zero();
            };
            if piv != r {
                rows.swap(piv, r);
                det = f.neg(&det);
            }
            det = f.mul(&det, &rows[r][col]);
            let inv = f.inv(&rows[r][col]).expect("nonzero pivot");
            for i in (r + 1)..n {
                if f.is_zero(&rows[i][col]) {
                    continue;
                }
                let factor = f.mul(&rows[i][col], &inv);
                for c in col..n {
                    let s = f.mul(&factor, &rows[r][c]);
                    rows[i][c] = f.sub(&rows[i][c], &s);
                }
            }
            col += 1;
        }
        det
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&self.field, self.rows())
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let f = &self.field;
        let n = self.n;
        // Augment with the identity and row-reduce.
        let mut rows: Vec<Vec<F::Elem>> = self
            .rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                for j in 0..n {
                    row.push(if i == j { f.one() } else { f.zero() });
                }
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&i| !f.is_zero(&rows[i][col]));
            let Some(piv) = piv else {
                return Err(AlgebraError::SingularMatrix);
            };
            rows.swap(piv, col);
            let inv = f.inv(&rows[col][col])?;
            for c in 0..2 * n {
                rows[col][c] = f.mul(&rows[col][c], &inv);
            }
            for i in 0..n {
                if i == col || f.is_zero(&rows[i][col]) {
                    continue;
                }
                let factor = rows[i][col].clone();
                for c in 0..2 * n {
                    let s = f.mul(&factor, &rows[col][c]);
                    rows[i][c] = f.sub(&rows[i][c], &s);
                }
            }
        }
        Ok(Matrix::from_fn(f, n, |r, c| rows[r][n + c].clone()))
    }

    /// Basis of the null space { v : M v = 0 }.
    pub fn kernel_basis(&self) -> Vec<Vector<F>> {
        nullspace(&self.field, self.rows(), self.n)
            .into_iter()
            .map(Vector::new)
            .collect()
    }

    /// One solution of M x = b, or `None` when inconsistent.
    pub fn solve(&self, b: &Vector<F>) -> Option<Vector<F>> {
        solve_rows(&self.field, self.rows(), &b.coords).map(Vector::new)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow_i64(&self, e: i64) -> Result<Self, AlgebraError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Matrix::identity(&self.field, self.n);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

/// Reduce `rows` in place to row echelon form; returns pivot column indices.
pub fn row_echelon<F: Field>(field: &F, rows: &mut [Vec<F::Elem>]) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let piv = (r..nrows).find(|&i| !field.is_zero(&rows[i][col]));
        let Some(piv) = piv else { continue };
        rows.swap(piv, r);
        let inv = field.inv(&rows[r][col]).expect("nonzero pivot");
        for c in col..ncols {
            rows[r][c] = field.mul(&rows[r][c], &inv);
        }
        for i in 0..nrows {
            if i == r || field.is_zero(&rows[i][col]) {
                continue;
            }
            let factor = rows[i][col].clone();
            for c in col..ncols {
                let s = field.mul(&factor, &rows[r][c]);
                rows[i][c] = field.sub(&rows[i][c], &s);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank_of_rows<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    row_echelon(field, &mut rows).len()
}

/// Basis of { x : A x = 0 } for a (possibly rectangular) row list with
/// `ncols` columns.
pub fn nullspace<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>, ncols: usize) -> Vec<Vec<F::Elem>> {
    let pivots = row_echelon(field, &mut rows);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut x = vec![field.zero(); ncols];
        x[fc] = field.one();
        // Back-substitute: row i has pivot at pivots[i] with value 1.
        for (i, &pc) in pivots.iter().enumerate() {
            // x[pc] = -rows[i][fc]
            x[pc] = field.neg(&rows[i][fc]);
        }
        basis.push(x);
    }
    basis
}

/// One solution of A x = b (rows of A paired with entries of b), or `None`.
pub fn solve_rows<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(rows.len(), b.len());
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<F::Elem>> = rows
        .into_iter()
        .zip(b)
        .map(|(mut row, rhs)| {
            row.push(rhs.clone());
            row
        })
        .collect();
    let pivots = row_echelon(field, &mut aug);
    // Inconsistent iff a pivot lands in the augmented column.
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[i][ncols].clone();
    }
    Some(x)
}

/// Span dimension of a list of coordinate vectors.
pub fn span_rank<F: Field>(field: &F, vecs: &[Vec<F::Elem>]) -> usize {
    rank_of_rows(field, vecs.to_vec())
}

/// Express `target` as a linear combination of `basis` vectors; returns the
/// coefficients or `None` when the target lies outside the span.
pub fn express_in_span<F: Field>(
    field: &F,
    basis: &[Vec<F::Elem>],
    target: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    let n = target.len();
    // Columns are the basis vectors.
    let rows: Vec<Vec<F::Elem>> = (0..n)
        .map(|r| basis.iter().map(|v| v[r].clone()).collect())
        .collect();
    solve_rows(field, rows, target)
}

/// First-nonzero normalization: returns (coords / c, c) with the leading
/// nonzero coordinate scaled to one, or `None` for the zero vector.
pub fn normalize_leading<F: Field>(field: &F, coords: &[F::Elem]) -> Option<(Vec<F::Elem>, F::Elem)> {
    let lead = coords.iter().position(|c| !field.is_zero(c))?;
    let c = coords[lead].clone();
    let inv = field.inv(&c).expect("nonzero leading coefficient");
    Some((coords.iter().map(|x| field.mul(&inv, x)).collect(), c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn det_identity_is_one() {
        let f = PrimeField::new(5).unwrap();
        for n in 1..=4 {
            assert_eq!(Matrix::identity(&f, n).det(), 1);
        }
        let q = Rationals;
        assert!(q.is_one(&Matrix::identity(&q, 3).det()));
    }

    #[test]
    fn rank_of_single_entry() {
        // 1 + E_12 - identity over F_3 has a single nonzero entry.
        let f = PrimeField::new(3).unwrap();
        let mut m = Matrix::zero(&f, 3);
        m.set(0, 1, 1);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_e12() {
        // E_12 over F_5, n = 3: kernel is span{e_1, e_3}.
        let f = PrimeField::new(5).unwrap();
        let mut m = Matrix::zero(&f, 3);
        m.set(0, 1, 1);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.apply(v).is_zero(&f));
        }
        let coords: Vec<Vec<u64>> = ker.iter().map(|v| v.coords.clone()).collect();
        assert_eq!(span_rank(&f, &coords), 2);
        // e_1 and e_3 both lie in the kernel span.
        assert!(express_in_span(&f, &coords, &[1, 0, 0]).is_some());
        assert!(express_in_span(&f, &coords, &[0, 0, 1]).is_some());
        assert!(express_in_span(&f, &coords, &[0, 1, 0]).is_none());
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let f = PrimeField::new(5).unwrap();
        let id = Matrix::identity(&f, 3);
        let e1 = Vector::basis(&f, 3, 0);
        assert_eq!(id.solve(&e1).unwrap(), e1);
        // 0 x = 1 is inconsistent.
        let zero = Matrix::zero(&f, 3);
        assert_eq!(zero.solve(&e1), None);
    }

    #[test]
    fn inverse_round_trip() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_rows(&f, vec![vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn dual_action_is_left_action_on_example() {
        let f = PrimeField::new(5).unwrap();
        let g = Matrix::from_rows(&f, vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let h = Matrix::from_rows(&f, vec![vec![1, 0, 0], vec![2, 1, 0], vec![0, 3, 1]]).unwrap();
        let phi = Covector::new(vec![1, 2, 3]);
        let gh = g.mul(&h);
        let lhs = gh.dual_action(&phi).unwrap();
        let rhs = g.dual_action(&h.dual_action(&phi).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

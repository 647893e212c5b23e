use super::{axpy, is_zero_vec, unit_vec, zero_vec, Mat, Rat};
use num_traits::{One, Zero};

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &Mat) -> Rref {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.row_vecs();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        if !inv.is_one() {
            for x in a[r][c..].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                axpy(&mut row[c..], &f, &pivot_row[c..]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    let matrix = if rows == 0 { Mat::zeros(0, cols) } else { Mat::from_rows(a) };
    Rref { matrix, pivots, rank }
}

/// Basis of `{v : m v = 0}`.
pub fn kernel_basis(m: &Mat) -> Subspace {
    let cols = m.cols();
    let r = rref(m);
    let mut is_pivot = vec![false; cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let vecs = (0..cols).filter(|&f| !is_pivot[f]).map(|f| {
        let mut v = zero_vec(cols);
        v[f] = Rat::one();
        for (i, &p) in r.pivots.iter().enumerate() {
            v[p] = -r.matrix.get(i, f).clone();
        }
        v
    });
    Subspace::from_vectors(cols, vecs)
}

/// One solution of `m x = b`, if the system is consistent.
pub fn solve(m: &Mat, b: &[Rat]) -> Option<Vec<Rat>> {
    let cols = m.cols();
    let mut rows = m.row_vecs();
    for (row, x) in rows.iter_mut().zip(b) {
        row.push(x.clone());
    }
    let r = rref(&Mat::from_rows(rows));
    if r.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = zero_vec(cols);
    for (i, &p) in r.pivots.iter().enumerate() {
        x[p] = r.matrix.get(i, cols).clone();
    }
    Some(x)
}

/// A linear subspace of `Q^n`, stored as the rows of its reduced echelon
/// basis. Two equal subspaces always carry identical bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vec(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_vectors<I>(ambient: usize, vecs: I) -> Self
    where
        I: IntoIterator<Item = Vec<Rat>>,
    {
        let mut s = Subspace::zero(ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    /// Span of the coordinate vectors `e_i` for the listed indices.
    pub fn coordinate(ambient: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        Subspace::from_vectors(ambient, idx.into_iter().map(|i| unit_vec(ambient, i)))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient dimension");
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = -w[p].clone();
                axpy(&mut w, &f, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` with respect to the stored echelon basis.
    pub fn coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn from_coords(&self, c: &[Rat]) -> Vec<Rat> {
        assert_eq!(c.len(), self.dim());
        let mut v = zero_vec(self.ambient);
        for (row, x) in self.basis.iter().zip(c) {
            axpy(&mut v, x, row);
        }
        v
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Rat>) -> bool {
        let mut w = self.reduce(&v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        if !inv.is_one() {
            for x in w.iter_mut() {
                *x *= &inv;
            }
        }
        for row in self.basis.iter_mut() {
            if !row[p].is_zero() {
                let f = -row[p].clone();
                axpy(row, &f, &w);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, w);
        true
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v.clone());
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // a in self, b in other, a - b = 0.
        let cols: Vec<Vec<Rat>> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()))
            .collect();
        let k = kernel_basis(&Mat::from_cols(self.ambient, &cols));
        let d = self.dim();
        Subspace::from_vectors(self.ambient, k.basis.iter().map(|c| self.from_coords(&c[..d])))
    }

    /// Indices of the coordinate vectors completing the echelon basis
    /// (the lexicographically first coordinate complement).
    pub fn complement_coords(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Coordinates of the class of `v` in `Q^n / self`, against the
    /// complement returned by [`Subspace::complement_coords`].
    pub fn quotient_coords(&self, v: &[Rat]) -> Vec<Rat> {
        let r = self.reduce(v);
        self.complement_coords().into_iter().map(|i| r[i].clone()).collect()
    }

    /// Restricts to the coordinates in `range` (both ends must be pivots-aligned
    /// for graded subspaces).
    pub fn restrict_to(&self, range: std::ops::Range<usize>) -> Subspace {
        let v = self
            .basis
            .iter()
            .filter(|row| row.iter().enumerate().all(|(i, x)| range.contains(&i) || x.is_zero()))
            .cloned();
        Subspace::from_vectors(self.ambient, v)
    }

    /// Image under a linear map.
    pub fn image(&self, m: &Mat) -> Subspace {
        Subspace::from_vectors(m.rows(), self.basis.iter().map(|v| m.mul_vec(v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{frac, rat};
    use proptest::prelude::*;

    #[test]
    fn rref_identity_and_zero() {
        let r = rref(&Mat::identity(3));
        assert_eq!(r.matrix, Mat::identity(3));
        assert_eq!(r.pivots, vec![0, 1, 2]);
        let r = rref(&Mat::zeros(2, 4));
        assert!(r.matrix.is_zero());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_rank_one() {
        let r = rref(&Mat::from_i64(2, 2, &[1, 2, 2, 4]));
        assert_eq!(r.matrix, Mat::from_i64(2, 2, &[1, 2, 0, 0]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Mat::identity(4)).is_zero());
        assert_eq!(kernel_basis(&Mat::zeros(2, 3)), Subspace::full(3));
        let k = kernel_basis(&Mat::from_i64(1, 2, &[1, 1]));
        assert_eq!(k, Subspace::from_vectors(2, [vec![rat(1), rat(-1)]]));
    }

    #[test]
    fn intersection_and_quotient_coords() {
        let a = Subspace::coordinate(3, [0, 1]);
        let b = Subspace::from_vectors(3, [vec![rat(1), rat(1), rat(1)], vec![rat(0), rat(1), rat(0)]]);
        let c = a.intersect(&b);
        assert_eq!(c, Subspace::coordinate(3, [1]));
        let line = Subspace::from_vectors(3, [vec![rat(1), rat(2), rat(0)]]);
        assert_eq!(line.complement_coords(), vec![1, 2]);
        assert_eq!(line.quotient_coords(&[rat(1), rat(0), frac(1, 2)]), vec![rat(-2), frac(1, 2)]);
    }

    fn small_mat() -> impl Strategy<Value = Mat> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |e| Mat::from_i64(r, c, &e))
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in small_mat()) {
            let once = rref(&m);
            let twice = rref(&once.matrix);
            prop_assert_eq!(&once.matrix, &twice.matrix);
            prop_assert_eq!(once.rank, once.pivots.len());
        }

        #[test]
        fn kernel_is_annihilated(m in small_mat()) {
            let k = kernel_basis(&m);
            for v in k.basis() {
                prop_assert!(is_zero_vec(&m.mul_vec(v)));
            }
            prop_assert_eq!(k.dim() + rref(&m).rank, m.cols());
        }
    }
}

//! Lie superalgebras given by structure constants.
//!
//! Basis elements are ordered even first. Subalgebras are graded subspaces
//! in parent coordinates; since the even and odd coordinates are separated,
//! the canonical echelon basis of a graded subspace consists of homogeneous
//! vectors.

mod json;
mod sub;

pub use json::{algebra_from_json, algebra_to_json};
pub use sub::Subalgebra;

use crate::exactla::{axpy, is_zero_vec, rat, unit_vec, zero_vec, Mat, Rat, Subspace};
use crate::{Error, Result};
use num_traits::{One, Zero};
use rand::Rng;

/// Matrix model of an algebra inside gl(p|q), possibly modulo a central
/// ideal of the matrix algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub p: usize,
    pub q: usize,
    pub matrices: Vec<Mat>,
    /// Subspace of flattened (p+q)x(p+q) matrices that was quotiented out.
    pub central_ideal: Subspace,
}

impl Realization {
    pub fn size(&self) -> usize {
        self.p + self.q
    }

    pub fn is_faithful(&self) -> bool {
        self.central_ideal.is_zero()
    }

    /// Whether only multiples of the identity were quotiented out.
    pub fn ideal_is_scalar(&self) -> bool {
        let n = self.size();
        let id = Subspace::from_vectors(n * n, [Mat::identity(n).into_flat()]);
        self.central_ideal.is_subspace_of(&id)
    }

    /// Matrix of a coordinate vector.
    pub fn matrix_of(&self, v: &[Rat]) -> Mat {
        let n = self.size();
        let mut flat = zero_vec(n * n);
        for (c, m) in v.iter().zip(&self.matrices) {
            axpy(&mut flat, c, m.as_flat());
        }
        Mat::from_flat(n, n, flat)
    }

    /// Coordinates of the algebra element represented by `m`, if any.
    pub fn coords_of(&self, m: &Mat) -> Option<Vec<Rat>> {
        let k = self.matrices.len();
        let n = self.size();
        let mut cols: Vec<Vec<Rat>> = self.matrices.iter().map(|a| a.as_flat().to_vec()).collect();
        cols.extend(self.central_ideal.basis().iter().cloned());
        let target = m.as_flat().to_vec();
        let mut aug = cols.clone();
        aug.push(target.iter().map(|x| -x).collect());
        let ker = crate::exactla::kernel_basis(&Mat::from_cols(n * n, &aug));
        let last = cols.len();
        let v = ker.basis().iter().find(|v| !v[last].is_zero())?;
        let scale = v[last].recip();
        Some(v[..k].iter().map(|x| x * &scale).collect())
    }

    /// Algebra elements whose matrix lies in `span(mats)` modulo the central ideal.
    pub fn preimage(&self, mats: &[Mat]) -> Subspace {
        let n = self.size();
        let k = self.matrices.len();
        let mut cols: Vec<Vec<Rat>> = self.matrices.iter().map(|a| a.as_flat().to_vec()).collect();
        cols.extend(mats.iter().map(|m| m.as_flat().iter().map(|x| -x).collect::<Vec<_>>()));
        cols.extend(self.central_ideal.basis().iter().cloned());
        let ker = crate::exactla::kernel_basis(&Mat::from_cols(n * n, &cols));
        Subspace::from_vectors(k, ker.basis().iter().map(|v| v[..k].to_vec()))
    }
}

/// Parity of a homogeneous matrix in gl(p|q); `None` if inhomogeneous.
pub fn matrix_parity(m: &Mat, p: usize) -> Option<u8> {
    let mut par = None;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m.get(i, j).is_zero() {
                let here = u8::from((i < p) != (j < p));
                match par {
                    None => par = Some(here),
                    Some(x) if x != here => return None,
                    _ => {}
                }
            }
        }
    }
    Some(par.unwrap_or(0))
}

/// Supercommutator `AB - (-1)^{|A||B|} BA` of homogeneous matrices.
pub fn supercommutator(a: &Mat, b: &Mat, p: usize) -> Mat {
    let pa = matrix_parity(a, p).expect("inhomogeneous matrix");
    let pb = matrix_parity(b, p).expect("inhomogeneous matrix");
    let ab = a * b;
    let ba = b * a;
    if pa * pb == 1 {
        &ab + &ba
    } else {
        &ab - &ba
    }
}

/// Finite-dimensional Lie superalgebra over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperAlgebra {
    dim_even: usize,
    dim_odd: usize,
    names: Vec<String>,
    /// Sparse `[b_i, b_j]` at index `i * dim + j`.
    table: Vec<Vec<(usize, Rat)>>,
    realization: Option<Realization>,
}

impl SuperAlgebra {
    /// Builds an algebra from the brackets `[b_i, b_j]` with `i <= j`; the
    /// rest follows by super-antisymmetry.
    pub fn from_upper<F>(dim_even: usize, dim_odd: usize, names: Vec<String>, mut upper: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Vec<Rat>,
    {
        let n = dim_even + dim_odd;
        if names.len() != n {
            return Err(Error::DimensionMismatch(format!("{} names for dimension {}", names.len(), n)));
        }
        let mut table = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in i..n {
                let v = upper(i, j);
                if v.len() != n {
                    return Err(Error::DimensionMismatch(format!("bracket ({i},{j}) has length {}", v.len())));
                }
                let sparse: Vec<(usize, Rat)> =
                    v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                let both_odd = i >= dim_even && j >= dim_even;
                if i == j && !both_odd && !sparse.is_empty() {
                    return Err(Error::Precondition(format!("[b{i}, b{i}] must vanish for even b{i}")));
                }
                let mirrored = sparse
                    .iter()
                    .map(|(k, x)| (*k, if both_odd { x.clone() } else { -x.clone() }))
                    .collect();
                table[j * n + i] = mirrored;
                table[i * n + j] = sparse;
            }
        }
        Ok(SuperAlgebra { dim_even, dim_odd, names, table, realization: None })
    }

    /// Coordinatizes supercommutators of homogeneous matrices in gl(p|q),
    /// modulo `central_ideal`. Matrices must be listed even first and be
    /// linearly independent modulo the ideal.
    pub fn from_matrices(p: usize, q: usize, matrices: Vec<Mat>, names: Vec<String>, central_ideal: Subspace) -> Result<Self> {
        let n = p + q;
        let k = matrices.len();
        let mut dim_even = 0;
        for (idx, m) in matrices.iter().enumerate() {
            match matrix_parity(m, p) {
                Some(0) if dim_even == idx => dim_even += 1,
                Some(0) => return Err(Error::Precondition("even matrices must be listed first".into())),
                Some(_) => {}
                None => return Err(Error::NotHomogeneous),
            }
        }
        // Rows (vec(B_i), e_i) and (z, 0): reducing (w, 0) leaves (0, -coords).
        let width = n * n + k;
        let mut coord = Subspace::from_vectors(
            width,
            central_ideal.basis().iter().map(|z| {
                let mut v = z.clone();
                v.extend(zero_vec(k));
                v
            }),
        );
        let mut plain = central_ideal.clone();
        for (i, m) in matrices.iter().enumerate() {
            if !plain.insert(m.as_flat().to_vec()) {
                return Err(Error::Precondition("realization matrices are dependent".into()));
            }
            let mut v = m.as_flat().to_vec();
            v.extend(unit_vec(k, i));
            coord.insert(v);
        }
        let solve = |w: &Mat| -> Option<Vec<Rat>> {
            let mut v = w.as_flat().to_vec();
            v.extend(zero_vec(k));
            let r = coord.reduce(&v);
            if !is_zero_vec(&r[..n * n]) {
                return None;
            }
            Some(r[n * n..].iter().map(|x| -x).collect())
        };
        let mut failed = false;
        let mut alg = SuperAlgebra::from_upper(dim_even, k - dim_even, names, |i, j| {
            match solve(&supercommutator(&matrices[i], &matrices[j], p)) {
                Some(c) => c,
                None => {
                    failed = true;
                    zero_vec(k)
                }
            }
        })?;
        if failed {
            return Err(Error::NotClosed);
        }
        alg.realization = Some(Realization { p, q, matrices, central_ideal });
        Ok(alg)
    }

    pub fn zero() -> Self {
        SuperAlgebra { dim_even: 0, dim_odd: 0, names: Vec::new(), table: Vec::new(), realization: None }
    }

    pub fn dim_even(&self) -> usize {
        self.dim_even
    }

    pub fn dim_odd(&self) -> usize {
        self.dim_odd
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_even, self.dim_odd)
    }

    pub fn dim(&self) -> usize {
        self.dim_even + self.dim_odd
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    pub fn with_realization(mut self, r: Option<Realization>) -> Self {
        self.realization = r;
        self
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim());
        self.names = names;
        self
    }

    pub fn parity(&self, i: usize) -> u8 {
        u8::from(i >= self.dim_even)
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Rat> {
        unit_vec(self.dim(), i)
    }

    /// Sparse bracket of two basis elements.
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.table[i * self.dim() + j]
    }

    pub fn is_even_vec(&self, v: &[Rat]) -> bool {
        is_zero_vec(&v[self.dim_even..])
    }

    pub fn is_odd_vec(&self, v: &[Rat]) -> bool {
        is_zero_vec(&v[..self.dim_even])
    }

    /// Parity of a homogeneous vector (zero counts as even); `None` if mixed.
    pub fn vec_parity(&self, v: &[Rat]) -> Option<u8> {
        if self.is_even_vec(v) {
            Some(0)
        } else if self.is_odd_vec(v) {
            Some(1)
        } else {
            None
        }
    }

    pub fn even_part(&self, v: &[Rat]) -> Vec<Rat> {
        let mut w = v.to_vec();
        for x in w[self.dim_even..].iter_mut() {
            *x = Rat::zero();
        }
        w
    }

    pub fn odd_part(&self, v: &[Rat]) -> Vec<Rat> {
        let mut w = v.to_vec();
        for x in w[..self.dim_even].iter_mut() {
            *x = Rat::zero();
        }
        w
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        assert_eq!(x.len(), n, "bracket: left argument has wrong length");
        assert_eq!(y.len(), n, "bracket: right argument has wrong length");
        let mut out = zero_vec(n);
        for (i, xi) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                let c = xi * yj;
                for (k, s) in self.structure(i, j) {
                    out[*k] += &c * s;
                }
            }
        }
        out
    }

    pub fn try_bracket(&self, x: &[Rat], y: &[Rat]) -> Result<Vec<Rat>> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {} in an algebra of dimension {}",
                x.len(),
                y.len(),
                self.dim()
            )));
        }
        Ok(self.bracket(x, y))
    }

    /// Matrix of `ad x = [x, -]`.
    pub fn adjoint_matrix(&self, x: &[Rat]) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for (i, xi) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for j in 0..n {
                for (k, s) in self.structure(i, j) {
                    let cur = m.get(*k, j) + xi * s;
                    m.set(*k, j, cur);
                }
            }
        }
        m
    }

    /// Basis triples `i <= j <= k` violating the graded Jacobi identity, and
    /// pairs violating super-antisymmetry (reported as `(i, j, usize::MAX)`).
    pub fn check_jacobi(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i..n {
                let sign = if self.parity(i) * self.parity(j) == 1 { Rat::one() } else { -Rat::one() };
                let lhs: Vec<(usize, Rat)> = self.structure(j, i).to_vec();
                let rhs: Vec<(usize, Rat)> = self.structure(i, j).iter().map(|(k, x)| (*k, &sign * x)).collect();
                if lhs != rhs {
                    bad.push((i, j, usize::MAX));
                }
            }
        }
        // (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0
        let e: Vec<Vec<Rat>> = (0..n).map(|i| self.basis_vec(i)).collect();
        let sgn = |a: usize, b: usize| if self.parity(a) * self.parity(b) == 1 { -Rat::one() } else { Rat::one() };
        for i in 0..n {
            for j in i..n {
                let ij = self.bracket(&e[i], &e[j]);
                for k in j..n {
                    let jk = self.bracket(&e[j], &e[k]);
                    let ki = self.bracket(&e[k], &e[i]);
                    let mut s = zero_vec(n);
                    axpy(&mut s, &sgn(i, k), &self.bracket(&e[i], &jk));
                    axpy(&mut s, &sgn(j, i), &self.bracket(&e[j], &ki));
                    axpy(&mut s, &sgn(k, j), &self.bracket(&e[k], &ij));
                    if !is_zero_vec(&s) {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    /// Replaces one structure constant, breaking antisymmetry or Jacobi on
    /// purpose; used to exercise the checkers.
    pub fn corrupt(&mut self, i: usize, j: usize, k: usize, value: Rat) {
        let n = self.dim();
        let entry = &mut self.table[i * n + j];
        entry.retain(|(kk, _)| *kk != k);
        if !value.is_zero() {
            entry.push((k, value));
            entry.sort_by_key(|(kk, _)| *kk);
        }
    }

    /// Random vector with coordinates in `-range..=range` on the chosen parity.
    pub fn random_vec<R: Rng>(&self, rng: &mut R, parity: Option<u8>, range: i64) -> Vec<Rat> {
        (0..self.dim())
            .map(|i| {
                if parity.map_or(true, |p| p == self.parity(i)) {
                    rat(rng.gen_range(-range..=range))
                } else {
                    Rat::zero()
                }
            })
            .collect()
    }

    /// Supertrace of an operator on this algebra (or any space graded like it).
    pub fn supertrace(&self, m: &Mat) -> Rat {
        let mut s = Rat::zero();
        for i in 0..self.dim() {
            if self.parity(i) == 0 {
                s += m.get(i, i);
            } else {
                s -= m.get(i, i);
            }
        }
        s
    }

    /// Killing-type form `str(ad x ad y)` on basis elements.
    pub fn killing_matrix(&self, idx: &[usize]) -> Mat {
        let ads: Vec<Mat> = idx.iter().map(|&i| self.adjoint_matrix(&self.basis_vec(i))).collect();
        let mut k = Mat::zeros(idx.len(), idx.len());
        for a in 0..idx.len() {
            for b in a..idx.len() {
                let v = self.supertrace(&(&ads[a] * &ads[b]));
                k.set(a, b, v.clone());
                k.set(b, a, v);
            }
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// gl(1|1) with basis E11, E22, E12, E21.
    pub(crate) fn gl11() -> SuperAlgebra {
        let mats = vec![
            Mat::unit(2, 2, 0, 0),
            Mat::unit(2, 2, 1, 1),
            Mat::unit(2, 2, 0, 1),
            Mat::unit(2, 2, 1, 0),
        ];
        let names = ["E11", "E22", "E12", "E21"].iter().map(|s| s.to_string()).collect();
        SuperAlgebra::from_matrices(1, 1, mats, names, Subspace::zero(4)).unwrap()
    }

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn gl11_brackets() {
        let g = gl11();
        assert_eq!(g.dims(), (2, 2));
        assert_eq!(g.bracket(&v(&[0, 0, 1, 0]), &v(&[0, 0, 0, 1])), v(&[1, 1, 0, 0]));
        assert_eq!(g.bracket(&v(&[1, 0, 0, 0]), &v(&[0, 0, 1, 0])), v(&[0, 0, 1, 0]));
        let x = v(&[3, -2, 0, 0]);
        assert!(is_zero_vec(&g.bracket(&x, &x)));
        assert!(g.check_jacobi().is_empty());
        assert!(g.try_bracket(&v(&[1]), &x).is_err());
    }

    #[test]
    fn corruption_is_detected() {
        let mut g = gl11();
        g.corrupt(0, 2, 2, rat(2));
        assert!(!g.check_jacobi().is_empty());
        assert!(SuperAlgebra::zero().check_jacobi().is_empty());
    }

    #[test]
    fn adjoint_of_odd_generator() {
        let g = gl11();
        let ad = g.adjoint_matrix(&v(&[0, 0, 1, 0]));
        assert_eq!(ad.rank(), 2);
        // (ad E12)^2 = ad([E12,E12]/2) = 0
        assert!((&ad * &ad).is_zero());
        let center = v(&[1, 1, 0, 0]);
        assert!(g.adjoint_matrix(&center).is_zero());
    }
}

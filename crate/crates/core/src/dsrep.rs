//! Finite-dimensional modules and the Duflo-Serganova functor.
//!
//! For odd `x` with `[x,x] != 0` acting semisimply, `DS_x` is taken on the
//! kernel of `ρ([x,x])`, where `ρ(x)` squares to zero.

use crate::exactla::{
    format_rat, is_semisimple_matrix, kernel_basis, parse_rat, simultaneous_eigenspaces, zero_vec, Mat, Rat, Subspace,
};
use crate::liesuper::{Subalgebra, SuperAlgebra};
use crate::{Error, Result};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Graded module: even basis vectors first, one action matrix per basis
/// element of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdModule {
    dim_even: usize,
    dim_odd: usize,
    alg_dim_even: usize,
    action: Vec<Mat>,
}

fn block_parity(m: &Mat, p: usize) -> Option<u8> {
    crate::liesuper::matrix_parity(m, p)
}

impl FdModule {
    /// Checks sizes and that each action matrix has the parity of its basis element.
    pub fn new(a: &SuperAlgebra, dim_even: usize, dim_odd: usize, action: Vec<Mat>) -> Result<Self> {
        let d = dim_even + dim_odd;
        if action.len() != a.dim() {
            return Err(Error::DimensionMismatch(format!("{} action matrices for dimension {}", action.len(), a.dim())));
        }
        for (i, m) in action.iter().enumerate() {
            if m.rows() != d || m.cols() != d {
                return Err(Error::DimensionMismatch(format!("action matrix {i} is not {d}x{d}")));
            }
            if !m.is_zero() && block_parity(m, dim_even) != Some(a.parity(i)) {
                return Err(Error::Precondition(format!("action matrix {i} does not respect the grading")));
            }
        }
        Ok(FdModule { dim_even, dim_odd, alg_dim_even: a.dim_even(), action })
    }

    pub fn trivial(a: &SuperAlgebra) -> Self {
        FdModule { dim_even: 1, dim_odd: 0, alg_dim_even: a.dim_even(), action: vec![Mat::zeros(1, 1); a.dim()] }
    }

    /// One-dimensional even module on which even basis element `i` acts by `chi[i]`.
    pub fn character(a: &SuperAlgebra, chi: &[Rat]) -> Result<Self> {
        let action = (0..a.dim())
            .map(|i| {
                let mut m = Mat::zeros(1, 1);
                if i < a.dim_even() {
                    m.set(0, 0, chi[i].clone());
                }
                m
            })
            .collect();
        FdModule::new(a, 1, 0, action)
    }

    pub fn adjoint(a: &SuperAlgebra) -> Self {
        let action = (0..a.dim()).map(|i| a.adjoint_matrix(&a.basis_vec(i))).collect();
        FdModule { dim_even: a.dim_even(), dim_odd: a.dim_odd(), alg_dim_even: a.dim_even(), action }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_even, self.dim_odd)
    }

    pub fn dim(&self) -> usize {
        self.dim_even + self.dim_odd
    }

    pub fn sdim(&self) -> i64 {
        self.dim_even as i64 - self.dim_odd as i64
    }

    pub fn action(&self) -> &[Mat] {
        &self.action
    }

    fn parity(&self, i: usize) -> u8 {
        u8::from(i >= self.dim_even)
    }

    fn alg_parity(&self, i: usize) -> u8 {
        u8::from(i >= self.alg_dim_even)
    }

    /// `ρ(x)` for a coordinate vector `x`.
    pub fn act(&self, x: &[Rat]) -> Mat {
        let d = self.dim();
        let mut flat = zero_vec(d * d);
        for (c, m) in x.iter().zip(&self.action) {
            crate::exactla::axpy(&mut flat, c, m.as_flat());
        }
        Mat::from_flat(d, d, flat)
    }

    /// Basis pairs `(i, j)` where `ρ([b_i,b_j]) != [ρ(b_i), ρ(b_j)]`.
    pub fn check_module(&self, a: &SuperAlgebra) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..a.dim() {
            for j in i..a.dim() {
                let lhs = self.act(&a.bracket(&a.basis_vec(i), &a.basis_vec(j)));
                let (x, y) = (&self.action[i], &self.action[j]);
                let rhs = if a.parity(i) * a.parity(j) == 1 { &(x * y) + &(y * x) } else { &(x * y) - &(y * x) };
                if lhs != rhs {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// `ρ*(x)_{ij} = -(-1)^{|x||j|} ρ(x)_{ji}`.
    pub fn dual(&self) -> FdModule {
        let d = self.dim();
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let mut out = Mat::zeros(d, d);
                for i in 0..d {
                    for j in 0..d {
                        let x = m.get(j, i);
                        if !x.is_zero() {
                            let neg = !(self.alg_parity(k) * self.parity(j) == 1);
                            out.set(i, j, if neg { -x.clone() } else { x.clone() });
                        }
                    }
                }
                out
            })
            .collect();
        FdModule { action, ..self.clone() }
    }

    /// `x(m ⊗ n) = xm ⊗ n + (-1)^{|x||m|} m ⊗ xn`, basis reordered even first.
    pub fn tensor(&self, other: &FdModule) -> FdModule {
        let (d1, d2) = (self.dim(), other.dim());
        let pairs: Vec<(usize, usize)> = {
            let mut all: Vec<(usize, usize)> = (0..d1).flat_map(|i| (0..d2).map(move |j| (i, j))).collect();
            all.sort_by_key(|&(i, j)| (self.parity(i) + other.parity(j)) % 2);
            all
        };
        let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let de = pairs.iter().filter(|&&(i, j)| (self.parity(i) + other.parity(j)) % 2 == 0).count();
        let d = d1 * d2;
        let action = (0..self.action.len())
            .map(|k| {
                let (x1, x2) = (&self.action[k], &other.action[k]);
                let px = self.alg_parity(k);
                let mut out = Mat::zeros(d, d);
                for (col, &(i, j)) in pairs.iter().enumerate() {
                    for r in 0..d1 {
                        let c = x1.get(r, i);
                        if !c.is_zero() {
                            let row = index[&(r, j)];
                            let cur = out.get(row, col) + c;
                            out.set(row, col, cur);
                        }
                    }
                    let sign = if px * self.parity(i) == 1 { -Rat::one() } else { Rat::one() };
                    for r in 0..d2 {
                        let c = x2.get(r, j);
                        if !c.is_zero() {
                            let row = index[&(i, r)];
                            let cur = out.get(row, col) + &sign * c;
                            out.set(row, col, cur);
                        }
                    }
                }
                out
            })
            .collect();
        FdModule { dim_even: de, dim_odd: d - de, alg_dim_even: self.alg_dim_even, action }
    }

    /// Direct sum, basis order `even(self), even(other), odd(self), odd(other)`.
    pub fn direct_sum(&self, other: &FdModule) -> FdModule {
        let (e1, e2) = (self.dim_even, other.dim_even);
        let d = self.dim() + other.dim();
        let m1 = |i: usize| if i < e1 { i } else { e2 + i };
        let m2 = |i: usize| if i < e2 { e1 + i } else { self.dim() + i };
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(x, y)| {
                let mut out = Mat::zeros(d, d);
                for r in 0..x.rows() {
                    for c in 0..x.cols() {
                        out.set(m1(r), m1(c), x.get(r, c).clone());
                    }
                }
                for r in 0..y.rows() {
                    for c in 0..y.cols() {
                        out.set(m2(r), m2(c), y.get(r, c).clone());
                    }
                }
                out
            })
            .collect();
        FdModule { dim_even: e1 + e2, dim_odd: d - e1 - e2, alg_dim_even: self.alg_dim_even, action }
    }

    /// Restriction to a subalgebra, as a module over `a.subalgebra_algebra(k)`.
    pub fn restrict(&self, k: &Subalgebra) -> FdModule {
        let action = k.basis().iter().map(|v| self.act(v)).collect();
        FdModule { dim_even: self.dim_even, dim_odd: self.dim_odd, alg_dim_even: k.dims().0, action }
    }

    pub fn even_coords(&self) -> Subspace {
        Subspace::coordinate(self.dim(), 0..self.dim_even)
    }

    pub fn odd_coords(&self) -> Subspace {
        Subspace::coordinate(self.dim(), self.dim_even..self.dim())
    }

    /// Graded dimensions of a graded subspace of the module.
    pub fn graded_dims(&self, s: &Subspace) -> (usize, usize) {
        let e = s.basis().iter().filter(|v| v[self.dim_even..].iter().all(Zero::is_zero)).count();
        (e, s.dim() - e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsResult {
    pub x: Vec<Rat>,
    /// Graded dimensions of the kernel of `ρ([x,x])`, the domain of `ρ(x)`.
    pub domain_dims: (usize, usize),
    pub kernel_dims: (usize, usize),
    pub image_dims: (usize, usize),
    pub output_dims: (usize, usize),
    /// Vectors of `ker ρ(x)` whose classes form a basis of the output.
    pub representatives: Vec<Vec<Rat>>,
}

impl DsResult {
    pub fn sdim(&self) -> i64 {
        self.output_dims.0 as i64 - self.output_dims.1 as i64
    }
}

/// `DS_x(M) = ker ρ(x) / im ρ(x)` on the kernel of `ρ([x,x])`.
pub fn ds(a: &SuperAlgebra, m: &FdModule, x: &[Rat]) -> Result<DsResult> {
    if !a.is_odd_vec(x) {
        return Err(Error::NotHomogeneous);
    }
    let rx = m.act(x);
    let ry = m.act(&a.bracket(x, x));
    if !is_semisimple_matrix(&ry) {
        return Err(Error::Precondition("[x,x] does not act semisimply".into()));
    }
    let domain = kernel_basis(&ry);
    let ker = domain.intersect(&kernel_basis(&rx));
    let image = domain.image(&rx);
    debug_assert!(image.is_subspace_of(&ker));
    let mut reps = Vec::new();
    let mut acc = image.clone();
    for v in ker.basis() {
        if acc.insert(v.clone()) {
            reps.push(v.clone());
        }
    }
    let kd = m.graded_dims(&ker);
    let id = m.graded_dims(&image);
    Ok(DsResult {
        x: x.to_vec(),
        domain_dims: m.graded_dims(&domain),
        kernel_dims: kd,
        image_dims: id,
        output_dims: (kd.0 - id.0, kd.1 - id.1),
        representatives: reps,
    })
}

/// Joint weight spaces of the torus spanned by `torus` (even vectors of `a`),
/// mapped to graded dimensions.
pub fn weight_spaces(m: &FdModule, torus: &[Vec<Rat>]) -> Result<BTreeMap<Vec<Rat>, (usize, usize)>> {
    let mats: Vec<Mat> = torus.iter().map(|h| m.act(h)).collect();
    let spaces = simultaneous_eigenspaces(&mats, m.dim())?;
    Ok(spaces.into_iter().map(|(w, s)| (w, m.graded_dims(&s))).collect())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleJson {
    dim_even: usize,
    dim_odd: usize,
    action: Vec<Vec<Vec<String>>>,
}

pub fn module_to_json(m: &FdModule) -> String {
    let doc = ModuleJson {
        dim_even: m.dim_even,
        dim_odd: m.dim_odd,
        action: m
            .action
            .iter()
            .map(|x| (0..x.rows()).map(|i| x.row(i).iter().map(format_rat).collect()).collect())
            .collect(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

pub fn module_from_json(a: &SuperAlgebra, text: &str) -> Result<FdModule> {
    let doc: ModuleJson = serde_json::from_str(text)
        .map_err(|e| Error::Schema(format!("line {} column {}: {}", e.line(), e.column(), e)))?;
    let d = doc.dim_even + doc.dim_odd;
    let mut action = Vec::new();
    for (k, rows) in doc.action.iter().enumerate() {
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(Error::Schema(format!("action[{k}]: expected {d}x{d}")));
        }
        let flat = rows
            .iter()
            .flatten()
            .map(|s| parse_rat(s).ok_or_else(|| Error::Schema(format!("action[{k}]: \"{s}\" is not a rational"))))
            .collect::<Result<Vec<_>>>()?;
        action.push(Mat::from_flat(d, d, flat));
    }
    let m = FdModule::new(a, doc.dim_even, doc.dim_odd, action).map_err(|e| Error::Schema(e.to_string()))?;
    if let Some((i, j)) = m.check_module(a).first() {
        return Err(Error::Schema(format!("not a module: fails on basis pair ({i},{j})")));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use crate::families::{construct, standard_module, FamilySpec};

    fn alg(s: &str) -> SuperAlgebra {
        construct(&s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    #[test]
    fn module_checks() {
        let g = alg("gl(1|1)");
        let v = standard_module(&g).unwrap();
        assert!(v.check_module(&g).is_empty());
        assert!(FdModule::trivial(&g).check_module(&g).is_empty());
        assert!(FdModule::adjoint(&g).check_module(&g).is_empty());
        let mut bad = v.action().to_vec();
        bad[0].set(0, 0, rat(2));
        let bad = FdModule::new(&g, 1, 1, bad).unwrap();
        assert!(!bad.check_module(&g).is_empty());
    }

    #[test]
    fn dual_and_tensor_are_modules() {
        for s in ["gl(2|1)", "osp(1|2)", "q(2)"] {
            let g = alg(s);
            let v = standard_module(&g).unwrap();
            assert!(v.dual().check_module(&g).is_empty(), "{s} dual");
            let vv = v.tensor(&v);
            assert!(vv.check_module(&g).is_empty(), "{s} tensor");
            assert!(v.dual().tensor(&v).check_module(&g).is_empty(), "{s} end");
            assert!(v.direct_sum(&FdModule::trivial(&g)).check_module(&g).is_empty());
        }
    }

    #[test]
    fn ds_examples() {
        let g = alg("gl(1|1)");
        let v = standard_module(&g).unwrap();
        let zero = zero_vec(4);
        assert_eq!(ds(&g, &v, &zero).unwrap().output_dims, (1, 1));
        let e12 = g.basis_vec(2);
        assert_eq!(ds(&g, &v, &e12).unwrap().output_dims, (0, 0));
        for (m, n) in [(2, 2), (2, 3)] {
            let g = alg(&format!("gl({m}|{n})"));
            let v = standard_module(&g).unwrap();
            let idx = g.names().iter().position(|s| *s == format!("E1{}", m + 1)).unwrap();
            let r = ds(&g, &v, &g.basis_vec(idx)).unwrap();
            assert_eq!(r.output_dims, (m - 1, n - 1));
        }
        // [x,x] = 2I acts invertibly on the standard module
        let x = vec![rat(0), rat(0), rat(1), rat(1)];
        assert_eq!(ds(&g, &v, &x).unwrap().output_dims, (0, 0));
    }

    #[test]
    fn weight_space_superdimensions() {
        let sq2 = alg("sq(2)");
        let v = standard_module(&sq2).unwrap();
        let h = sq2.basis_vec(sq2.names().iter().position(|s| s == "A11").unwrap());
        let k = sq2.basis_vec(sq2.names().iter().position(|s| s == "A22").unwrap());
        for (_, (e, o)) in weight_spaces(&v, &[h, k]).unwrap() {
            assert_eq!((e, o), (1, 1));
        }
        let g = alg("gl(1|1)");
        let t = FdModule::trivial(&g);
        let w = weight_spaces(&t, &[g.basis_vec(0)]).unwrap();
        assert_eq!(w.get(&vec![rat(0)]), Some(&(1, 0)));
    }

    #[test]
    fn json_round_trip() {
        let g = alg("gl(1|1)");
        let v = standard_module(&g).unwrap();
        let text = module_to_json(&v);
        assert_eq!(module_from_json(&g, &text).unwrap(), v);
        assert!(module_from_json(&g, "{\"dim_even\":1}").is_err());
    }
}

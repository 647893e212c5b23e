//! Cohomology relative to the even part: cochains are `g0`-invariant maps
//! from symmetric powers of `g1` to a module. Degree one computes
//! `Ext^1_{(g,g0)}(C, M)`, and `Ext^1(M, N)` through `M* ⊗ N`.
//!
//! Graded dimensions are those of `Ext^1(C, M)` with `C` even: an even class
//! is a cocycle with values in the odd part of `M`.

use crate::dsrep::FdModule;
use crate::exactla::{is_semisimple_matrix, kernel_basis, Mat, Rat, Subspace};
use crate::liesuper::{Subalgebra, SuperAlgebra};
use crate::{Error, Result};

/// A pair `(k, k0)` described by bases in ambient coordinates.
struct Pair<'a> {
    g: &'a SuperAlgebra,
    even: Vec<Vec<Rat>>,
    odd: Subspace,
}

impl<'a> Pair<'a> {
    fn whole(g: &'a SuperAlgebra) -> Self {
        Pair {
            g,
            even: (0..g.dim_even()).map(|i| g.basis_vec(i)).collect(),
            odd: Subspace::coordinate(g.dim(), g.dim_even()..g.dim()),
        }
    }

    fn sub(g: &'a SuperAlgebra, k: &Subalgebra) -> Self {
        Pair { g, even: k.even_basis().to_vec(), odd: k.odd_space() }
    }

    fn rank(&self) -> usize {
        self.odd.dim()
    }

    /// Matrix of `ad a` on the odd basis.
    fn ad_odd(&self, a: &[Rat]) -> Mat {
        let r = self.rank();
        let mut m = Mat::zeros(r, r);
        for (i, x) in self.odd.basis().iter().enumerate() {
            let c = self.odd.coords(&self.g.bracket(a, x)).expect("odd part is stable under the even part");
            for (k, v) in c.into_iter().enumerate() {
                m.set(k, i, v);
            }
        }
        m
    }
}

fn pair_index(i: usize, j: usize, r: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * r - i * (i + 1) / 2 + j
}

fn joint_kernel(n: usize, mats: &[Mat]) -> Subspace {
    if mats.is_empty() {
        return Subspace::full(n);
    }
    let rows: Vec<Vec<Rat>> = mats.iter().flat_map(|m| m.row_vecs()).collect();
    kernel_basis(&Mat::from_rows(rows))
}

/// The complex in degrees 0, 1 and optionally 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelComplex {
    pub module: FdModule,
    /// `M^{g0}`.
    pub c0: Subspace,
    /// Invariant maps `g1 -> M`, coordinate `i * dim M + v` for odd basis vector `i`.
    pub c1: Subspace,
    /// Invariant symmetric maps, coordinate `pair(i,j) * dim M + v` for `i <= j`.
    pub c2: Option<Subspace>,
    /// Ambient matrix of `d0 : M -> Hom(g1, M)`.
    pub d0: Mat,
    /// Ambient matrix of `d1 : Hom(g1, M) -> Hom(S^2 g1, M)`.
    pub d1: Mat,
    odd_dim: usize,
}

fn center_acts_semisimply(p: &Pair, m: &FdModule) -> bool {
    let even = Subspace::from_vectors(p.g.dim(), p.even.iter().cloned());
    let center = p.g.centralizer(&even).space().intersect(&even);
    center.basis().iter().all(|z| is_semisimple_matrix(&m.act(z)))
}

fn build(p: &Pair, m: &FdModule, max_degree: usize) -> Result<RelComplex> {
    if !center_acts_semisimply(p, m) {
        return Err(Error::Precondition("the even part does not act semisimply".into()));
    }
    let dm = m.dim();
    let r = p.rank();
    let odd_act: Vec<Mat> = p.odd.basis().iter().map(|x| m.act(x)).collect();
    let even_act: Vec<Mat> = p.even.iter().map(|a| m.act(a)).collect();
    let ads: Vec<Mat> = p.even.iter().map(|a| p.ad_odd(a)).collect();

    let c0 = joint_kernel(dm, &even_act);

    let n1 = r * dm;
    let inv1: Vec<Mat> = even_act
        .iter()
        .zip(&ads)
        .map(|(ra, ad)| {
            let mut out = Mat::zeros(n1, n1);
            for i in 0..r {
                for u in 0..dm {
                    for v in 0..dm {
                        let x = ra.get(u, v);
                        if !num_traits::Zero::is_zero(x) {
                            out.set(i * dm + u, i * dm + v, x.clone());
                        }
                    }
                }
                // (a.c)(x_i) -= c([a, x_i]) = sum_k ad_{k i} c(x_k)
                for k in 0..r {
                    let x = ad.get(k, i);
                    if !num_traits::Zero::is_zero(x) {
                        for u in 0..dm {
                            let cur = out.get(i * dm + u, k * dm + u) - x;
                            out.set(i * dm + u, k * dm + u, cur);
                        }
                    }
                }
            }
            out
        })
        .collect();
    let c1 = joint_kernel(n1, &inv1);

    let mut d0 = Mat::zeros(n1, dm);
    for (i, a) in odd_act.iter().enumerate() {
        for u in 0..dm {
            for v in 0..dm {
                d0.set(i * dm + u, v, a.get(u, v).clone());
            }
        }
    }

    let np = r * (r + 1) / 2;
    let n2 = np * dm;
    let mut d1 = Mat::zeros(n2, n1);
    for i in 0..r {
        for j in i..r {
            let row = pair_index(i, j, r) * dm;
            // x_i . c(x_j) + x_j . c(x_i)
            for (a, col) in [(&odd_act[i], j), (&odd_act[j], i)] {
                for u in 0..dm {
                    for v in 0..dm {
                        let cur = d1.get(row + u, col * dm + v) + a.get(u, v);
                        d1.set(row + u, col * dm + v, cur);
                    }
                }
            }
        }
    }

    let c2 = (max_degree >= 2).then(|| {
        let inv2: Vec<Mat> = even_act
            .iter()
            .zip(&ads)
            .map(|(ra, ad)| {
                let mut out = Mat::zeros(n2, n2);
                for i in 0..r {
                    for j in i..r {
                        let row = pair_index(i, j, r) * dm;
                        for u in 0..dm {
                            for v in 0..dm {
                                let cur = out.get(row + u, row + v) + ra.get(u, v);
                                out.set(row + u, row + v, cur);
                            }
                        }
                        // - c([a,x_i], x_j) - c(x_i, [a,x_j])
                        for (moved, fixed) in [(i, j), (j, i)] {
                            for k in 0..r {
                                let x = ad.get(k, moved);
                                if num_traits::Zero::is_zero(x) {
                                    continue;
                                }
                                let col = pair_index(k, fixed, r) * dm;
                                for u in 0..dm {
                                    let cur = out.get(row + u, col + u) - x;
                                    out.set(row + u, col + u, cur);
                                }
                            }
                        }
                    }
                }
                out
            })
            .collect();
        joint_kernel(n2, &inv2)
    });

    Ok(RelComplex { module: m.clone(), c0, c1, c2, d0, d1, odd_dim: r })
}

/// Relative complex of `m` for the pair `(g, g0)`, up to degree `max_degree`
/// (1 or 2).
pub fn build_complex(g: &SuperAlgebra, m: &FdModule, max_degree: usize) -> Result<RelComplex> {
    build(&Pair::whole(g), m, max_degree)
}

impl RelComplex {
    /// `d1 ∘ d0 = 0` on `C^0`, and the differentials land in the invariant cochains.
    pub fn is_complex(&self) -> bool {
        let d0_ok = self.c0.basis().iter().all(|v| self.c1.contains(&self.d0.mul_vec(v)));
        let d1_ok = match &self.c2 {
            Some(c2) => self.c1.basis().iter().all(|v| c2.contains(&self.d1.mul_vec(v))),
            None => true,
        };
        let square = self.c0.basis().iter().all(|v| self.d1.mul_vec(&self.d0.mul_vec(v)).iter().all(num_traits::Zero::is_zero));
        d0_ok && d1_ok && square
    }

    /// Cochains of degree one with values in the odd (`odd_values`) or even part of `M`.
    fn c1_part(&self, odd_values: bool) -> Subspace {
        let (de, _) = self.module.dims();
        let dm = self.module.dim();
        let idx = (0..self.odd_dim).flat_map(|i| (0..dm).filter(move |&v| (v >= de) == odd_values).map(move |v| i * dm + v));
        self.c1.intersect(&Subspace::coordinate(self.c1.ambient(), idx))
    }

    fn cocycles(&self, odd_values: bool) -> Subspace {
        let part = self.c1_part(odd_values);
        if part.is_zero() {
            return part;
        }
        let images: Vec<Vec<Rat>> = part.basis().iter().map(|v| self.d1.mul_vec(v)).collect();
        let ker = kernel_basis(&Mat::from_cols(self.d1.rows(), &images));
        Subspace::from_vectors(part.ambient(), ker.basis().iter().map(|c| part.from_coords(c)))
    }

    fn coboundaries(&self, odd_values: bool) -> Subspace {
        let (de, dm) = (self.module.dims().0, self.module.dim());
        let src = if odd_values { Subspace::coordinate(dm, 0..de) } else { Subspace::coordinate(dm, de..dm) };
        let c0 = self.c0.intersect(&src);
        Subspace::from_vectors(self.c1.ambient(), c0.basis().iter().map(|v| self.d0.mul_vec(v)))
    }

    /// Graded dimension of `H^1`.
    pub fn h1(&self) -> (usize, usize) {
        let part = |odd_values: bool| self.cocycles(odd_values).dim() - self.coboundaries(odd_values).dim();
        (part(true), part(false))
    }

    /// Graded dimension of `H^0 = M^{g}`.
    pub fn h0(&self) -> (usize, usize) {
        let images: Vec<Vec<Rat>> = self.c0.basis().iter().map(|v| self.d0.mul_vec(v)).collect();
        let k = kernel_basis(&Mat::from_cols(self.d0.rows(), &images));
        let ker = Subspace::from_vectors(self.module.dim(), k.basis().iter().map(|c| self.c0.from_coords(c)));
        self.module.graded_dims(&ker)
    }
}

/// `Ext^1_{(g,g0)}(M, N)` as `H^1(g, g0; M* ⊗ N)`.
pub fn ext1(g: &SuperAlgebra, m: &FdModule, n: &FdModule) -> Result<(usize, usize)> {
    Ok(build_complex(g, &m.dual().tensor(n), 1)?.h1())
}

/// Whether restriction `Ext^1_{(g,g0)}(M,N) -> Ext^1_{(k,k0)}(M,N)` is injective.
///
/// With `Z`, `B` the cocycles and coboundaries and `res` the restriction of
/// cochains to `k1`, the kernel of the induced map has dimension
/// `dim Z(g) - dim(res Z(g) + B(k)) + dim B(k)`, and injectivity means it
/// equals `dim B(g)`.
pub fn restriction_injective_ext1(g: &SuperAlgebra, k: &Subalgebra, m: &FdModule, n: &FdModule) -> Result<bool> {
    let p = m.dual().tensor(n);
    let big = build(&Pair::whole(g), &p, 1)?;
    let sub_pair = Pair::sub(g, k);
    let small = build(&sub_pair, &p, 1)?;
    let dm = p.dim();
    let r = g.dim_odd();
    let rk = sub_pair.rank();
    let de = g.dim_even();
    // res(c)(y_j) = sum_i y_j[de + i] c(x_i)
    let mut res = Mat::zeros(rk * dm, r * dm);
    for (j, y) in sub_pair.odd.basis().iter().enumerate() {
        for i in 0..r {
            let coef = &y[de + i];
            if num_traits::Zero::is_zero(coef) {
                continue;
            }
            for u in 0..dm {
                res.set(j * dm + u, i * dm + u, coef.clone());
            }
        }
    }
    for odd_values in [true, false] {
        let zg = big.cocycles(odd_values);
        let bg = big.coboundaries(odd_values);
        let bk = small.coboundaries(odd_values);
        let image = Subspace::from_vectors(rk * dm, zg.basis().iter().map(|v| res.mul_vec(v)));
        let kernel = zg.dim() - (image.join(&bk).dim() - bk.dim());
        if kernel != bg.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use crate::families::{construct, standard_module, sylow_candidate, FamilySpec};

    fn alg(s: &str) -> SuperAlgebra {
        construct(&s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    fn odd_line() -> SuperAlgebra {
        SuperAlgebra::from_upper(0, 1, vec!["x".into()], |_, _| vec![rat(0)]).unwrap()
    }

    /// Two-dimensional sl(1|1)-module with the central element acting by `lambda`.
    fn typical(g: &SuperAlgebra, lambda: i64) -> FdModule {
        let pos = |n: &str| g.names().iter().position(|s| s == n).unwrap();
        let (h, e, f) = (pos("E11+E22"), pos("E12"), pos("E21"));
        let mut action = vec![Mat::zeros(2, 2); 3];
        action[h] = Mat::identity(2).scale(&rat(lambda));
        action[e].set(0, 1, rat(1));
        action[f].set(1, 0, rat(lambda));
        let m = FdModule::new(g, 1, 1, action).unwrap();
        assert!(m.check_module(g).is_empty());
        m
    }

    #[test]
    fn odd_line_trivial() {
        let g = odd_line();
        let c = build_complex(&g, &FdModule::trivial(&g), 2).unwrap();
        assert_eq!((c.c0.dim(), c.c1.dim(), c.c2.as_ref().unwrap().dim()), (1, 1, 1));
        assert!(c.d0.is_zero() && c.d1.is_zero());
        assert_eq!(c.h1(), (0, 1));
        assert!(c.is_complex());
    }

    #[test]
    fn small_examples() {
        let s = alg("sl(1|1)");
        let c = build_complex(&s, &FdModule::trivial(&s), 2).unwrap();
        assert_eq!(c.h0(), (1, 0));
        assert!(c.is_complex());

        let o = alg("osp(1|2)");
        let std = standard_module(&o).unwrap();
        let c = build_complex(&o, &std, 2).unwrap();
        assert!(c.is_complex());
        assert_eq!(c.h1(), (0, 0));
        let triv = FdModule::trivial(&o);
        assert_eq!(ext1(&o, &triv, &triv).unwrap(), (0, 0));
        assert_eq!(ext1(&o, &std, &std).unwrap(), (0, 0));

        let adj = FdModule::adjoint(&s);
        assert_ne!(ext1(&s, &FdModule::trivial(&s), &adj).unwrap(), (0, 0));

        let sl2 = alg("sl(2)");
        let a = FdModule::adjoint(&sl2);
        assert_eq!(ext1(&sl2, &a, &a).unwrap(), (0, 0));
    }

    #[test]
    fn nonzero_weights_have_no_extensions() {
        let s = alg("sl(1|1)");
        let triv = FdModule::trivial(&s);
        for lambda in [1, 2, -3] {
            assert_eq!(ext1(&s, &triv, &typical(&s, lambda)).unwrap(), (0, 0));
        }
    }

    #[test]
    fn restriction() {
        let g = alg("gl(1|1)");
        let std = standard_module(&g).unwrap();
        let k = sylow_candidate(&"gl(1|1)".parse().unwrap()).unwrap();
        assert!(restriction_injective_ext1(&g, &k, &std, &std).unwrap());
        assert!(restriction_injective_ext1(&g, &g.whole(), &std, &std).unwrap());
        let torus = Subalgebra::new(&g, Subspace::coordinate(g.dim(), 0..g.dim_even())).unwrap();
        // the odd root character: E11 -> 1, E22 -> -1
        let mut chi = vec![rat(0); g.dim_even()];
        chi[g.names().iter().position(|s| s == "E11").unwrap()] = rat(1);
        chi[g.names().iter().position(|s| s == "E22").unwrap()] = rat(-1);
        let alpha = FdModule::character(&g, &chi).unwrap();
        let triv = FdModule::trivial(&g);
        assert_ne!(ext1(&g, &triv, &alpha).unwrap(), (0, 0));
        assert!(!restriction_injective_ext1(&g, &torus, &triv, &alpha).unwrap());
        assert!(restriction_injective_ext1(&g, &k, &triv, &alpha).unwrap());
    }
}

//! Weyl groups of the Sylow torus in `G` and in the normalizer, computed by
//! enumerating the (signed) coordinate permutations of the ambient Weyl group
//! that stabilize the torus.

use crate::exactla::{Mat, Rat, Subspace};
use crate::families::{construct, isotropic_pairs, sylow_candidate, FamilySpec};
use crate::{Error, Result};
use itertools::Itertools;
use serde::Serialize;
use std::collections::BTreeSet;

/// A factor of the ambient Weyl group acting on a set of coordinates.
#[derive(Clone, Debug)]
enum Factor {
    Sym(Vec<usize>),
    /// Signed permutations; `even` restricts to an even number of sign changes.
    Signed { idx: Vec<usize>, even: bool },
}

#[derive(Clone, Debug)]
struct SignedPerm {
    perm: Vec<usize>,
    neg: Vec<bool>,
}

impl SignedPerm {
    fn identity(n: usize) -> Self {
        SignedPerm { perm: (0..n).collect(), neg: vec![false; n] }
    }

    fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::default(); v.len()];
        for (i, x) in v.iter().enumerate() {
            out[self.perm[i]] = if self.neg[i] { -x } else { x.clone() };
        }
        out
    }
}

fn factor_elements(f: &Factor) -> Vec<Vec<(usize, usize, bool)>> {
    let (idx, signs) = match f {
        Factor::Sym(idx) => (idx, None),
        Factor::Signed { idx, even } => (idx, Some(*even)),
    };
    let k = idx.len();
    let masks: Vec<u32> = match signs {
        None => vec![0],
        Some(even) => (0..1u32 << k).filter(|m| !even || m.count_ones() % 2 == 0).collect(),
    };
    let mut out = Vec::new();
    for p in (0..k).permutations(k) {
        for &mask in &masks {
            out.push((0..k).map(|i| (idx[i], idx[p[i]], mask >> i & 1 == 1)).collect());
        }
    }
    out
}

fn enumerate(n: usize, factors: &[Factor]) -> Vec<SignedPerm> {
    let mut acc = vec![SignedPerm::identity(n)];
    for f in factors {
        let elems = factor_elements(f);
        let mut next = Vec::with_capacity(acc.len() * elems.len());
        for g in &acc {
            for e in &elems {
                let mut h = g.clone();
                for &(from, to, neg) in e {
                    h.perm[from] = to;
                    h.neg[from] = neg;
                }
                next.push(h);
            }
        }
        acc = next;
    }
    acc
}

/// Coordinates on diagonal matrices, ambient group and blocks of the normalizer.
struct Setup {
    coords: Box<dyn Fn(&Mat) -> Vec<Rat>>,
    n: usize,
    factors: Vec<Factor>,
    blocks: Vec<Vec<usize>>,
}

fn setup(spec: &FamilySpec) -> Result<Setup> {
    use FamilySpec::*;
    let pair_blocks = |offset: &dyn Fn(usize) -> usize| -> Vec<Vec<usize>> {
        isotropic_pairs(spec, false).expect("Kac-Moody row").into_iter().map(|(a, c)| vec![a, offset(c)]).collect()
    };
    Ok(match spec {
        Gl(m, n) | Sl(m, n) => {
            let (m, n) = (*m, *n);
            Setup {
                coords: Box::new(move |x: &Mat| (0..m + n).map(|i| x.get(i, i).clone()).collect()),
                n: m + n,
                factors: vec![Factor::Sym((0..m).collect()), Factor::Sym((m..m + n).collect())],
                blocks: pair_blocks(&|c| c),
            }
        }
        Psl(n) => {
            let n = *n;
            Setup {
                coords: Box::new(move |x: &Mat| (0..2 * n).map(|i| x.get(i, i).clone()).collect()),
                n: 2 * n,
                factors: vec![Factor::Sym((0..n).collect()), Factor::Sym((n..2 * n).collect())],
                blocks: pair_blocks(&|c| c),
            }
        }
        Osp(m, n2) => {
            let (m, k, n) = (*m, m / 2, n2 / 2);
            Setup {
                coords: Box::new(move |x: &Mat| {
                    (0..k).map(|j| x.get(j, j).clone()).chain((0..n).map(|l| x.get(m + l, m + l).clone())).collect()
                }),
                n: k + n,
                factors: vec![
                    Factor::Signed { idx: (0..k).collect(), even: m % 2 == 0 },
                    Factor::Signed { idx: (k..k + n).collect(), even: false },
                ],
                blocks: pair_blocks(&|c| k + (c - m)),
            }
        }
        Q(n) | Sq(n) | Psq(n) | Pq(n) | Pe(n) | Spe(n) => {
            let n = *n;
            let mut blocks: Vec<Vec<usize>> = (0..n / 2).map(|b| vec![2 * b, 2 * b + 1]).collect();
            if n % 2 == 1 {
                blocks.push(vec![n - 1]);
            }
            Setup {
                coords: Box::new(move |x: &Mat| (0..n).map(|i| x.get(i, i).clone()).collect()),
                n,
                factors: vec![Factor::Sym((0..n).collect())],
                blocks,
            }
        }
        _ => return Err(Error::InvalidParameters(format!("{spec}: no Weyl group data"))),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylData {
    /// Number of coordinates on the ambient Cartan subalgebra.
    pub coordinates: usize,
    pub torus_dim: usize,
    pub ambient_order: usize,
    /// `|N_G(t)/C_G(t)|`.
    pub w_g: usize,
    /// `|N_N(t)/C_N(t)|` with `N` the normalizer of the Sylow subalgebra.
    pub w_n: usize,
}

impl WeylData {
    /// Number of conjugacy classes of Sylow subalgebras containing the torus.
    pub fn sylow_count(&self) -> usize {
        self.w_g / self.w_n
    }
}

/// Span, in diagonal coordinates, of the diagonal part of the Sylow
/// subalgebra together with the diagonal central ideal.
fn sylow_torus(spec: &FamilySpec, coords: &dyn Fn(&Mat) -> Vec<Rat>, n: usize) -> Result<Subspace> {
    let g = construct(spec)?;
    let o = sylow_candidate(spec)?;
    let r = g.realization().expect("matrix family");
    let size = r.size();
    let diag: Vec<Mat> = (0..size).map(|i| Mat::unit(size, size, i, i)).collect();
    let even = o.even_space().intersect(&r.preimage(&diag));
    let mut t = Subspace::zero(n);
    for v in even.basis() {
        t.insert(coords(&r.matrix_of(v)));
    }
    for c in r.central_ideal.basis() {
        t.insert(coords(&Mat::from_flat(size, size, c.clone())));
    }
    Ok(t)
}

pub fn weyl_data(spec: &FamilySpec) -> Result<WeylData> {
    spec.validate()?;
    let s = setup(spec)?;
    let t = sylow_torus(spec, s.coords.as_ref(), s.n)?;
    let mut covered: BTreeSet<usize> = BTreeSet::new();
    let mut blocks: BTreeSet<Vec<usize>> = BTreeSet::new();
    for b in &s.blocks {
        covered.extend(b.iter().copied());
        blocks.insert(b.clone());
    }
    blocks.extend((0..s.n).filter(|i| !covered.contains(i)).map(|i| vec![i]));
    let elements = enumerate(s.n, &s.factors);
    let mut w_g = BTreeSet::new();
    let mut w_n = BTreeSet::new();
    for g in &elements {
        let Some(m) = t.basis().iter().map(|v| t.coords(&g.apply(v))).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let m: Vec<Rat> = m.into_iter().flatten().collect();
        let keeps_blocks = blocks.iter().all(|b| {
            let img: Vec<usize> = b.iter().map(|&i| g.perm[i]).sorted().collect();
            blocks.contains(&img)
        });
        if keeps_blocks {
            w_n.insert(m.clone());
        }
        w_g.insert(m);
    }
    Ok(WeylData { coordinates: s.n, torus_dim: t.dim(), ambient_order: elements.len(), w_g: w_g.len(), w_n: w_n.len() })
}

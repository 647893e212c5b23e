use super::{fingerprint, Fingerprint};
use crate::exactla::{halfspace_feasible, is_zero_vec, simultaneous_eigenspaces, solve, Mat, Rat, Subspace};
use crate::families::{construct, FamilySpec};
use crate::liesuper::{Subalgebra, SuperAlgebra};
use crate::{seeded_rng, Error, Result};
use num_traits::{Signed, Zero};
use rand::Rng;
use std::collections::BTreeMap;

/// Subalgebra generated by `g_α + g_{-α}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOne {
    pub dims: (usize, usize),
    /// `"psq(2)"` or `"sq(2)"` when the fingerprint matches.
    pub template: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub cartan: Subalgebra,
    /// Basis of `h0`; weights are listed by their values on it.
    pub torus: Vec<Vec<Rat>>,
    pub roots: Vec<Vec<Rat>>,
    pub root_spaces: BTreeMap<Vec<Rat>, Subspace>,
    pub zero_space: Subspace,
    /// Every root has a nonzero even root space.
    pub roots_match_even: bool,
    pub irreducible: BTreeMap<Vec<Rat>, bool>,
    /// Keyed by the positive root of each pair `±α`.
    pub rank_one: BTreeMap<Vec<Rat>, RankOne>,
}

impl RootDatum {
    pub fn root_dims(&self, a: &SuperAlgebra, root: &[Rat]) -> Option<(usize, usize)> {
        let s = self.root_spaces.get(root)?;
        let e = s.basis().iter().filter(|v| a.is_even_vec(v)).count();
        Some((e, s.dim() - e))
    }
}

fn is_positive(w: &[Rat]) -> bool {
    w.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive())
}

fn templates() -> Vec<(String, Fingerprint)> {
    ["psq(2)", "sq(2)"]
        .iter()
        .map(|s| {
            let spec: FamilySpec = s.parse().expect("template");
            (s.to_string(), fingerprint(&construct(&spec).expect("template")))
        })
        .collect()
}

/// `h` acting on `g_α` has no proper nonzero graded invariant subspace, tested
/// on the submodules generated by basis and seeded random homogeneous vectors.
fn is_irreducible(a: &SuperAlgebra, h: &Subalgebra, space: &Subspace) -> bool {
    let mut rng = seeded_rng(0x1bb);
    let ads: Vec<Mat> = h.odd_basis().iter().map(|v| a.adjoint_matrix(v)).collect();
    let generated = |v: Vec<Rat>| {
        let mut s = Subspace::zero(a.dim());
        let mut queue = vec![v];
        while let Some(v) = queue.pop() {
            if s.insert(v.clone()) {
                queue.extend(ads.iter().map(|m| m.mul_vec(&v)));
            }
        }
        s.dim()
    };
    let even: Vec<Vec<Rat>> = space.basis().iter().filter(|v| a.is_even_vec(v)).cloned().collect();
    let odd: Vec<Vec<Rat>> = space.basis().iter().filter(|v| !a.is_even_vec(v)).cloned().collect();
    let mut candidates: Vec<Vec<Rat>> = space.basis().to_vec();
    for part in [&even, &odd] {
        for _ in 0..4 {
            let mut v = vec![Rat::zero(); a.dim()];
            for b in part.iter() {
                crate::exactla::axpy(&mut v, &Rat::from_integer(rng.gen_range(-5i64..=5).into()), b);
            }
            if !is_zero_vec(&v) {
                candidates.push(v);
            }
        }
    }
    candidates.into_iter().all(|v| generated(v) == space.dim())
}

/// Simultaneous eigenspace decomposition of `a` under `ad h0`.
pub fn root_decomposition(a: &SuperAlgebra, h: &Subalgebra) -> Result<RootDatum> {
    let torus: Vec<Vec<Rat>> = h.even_basis().to_vec();
    let ads: Vec<Mat> = torus.iter().map(|t| a.adjoint_matrix(t)).collect();
    let spaces = simultaneous_eigenspaces(&ads, a.dim())?;
    let mut root_spaces = BTreeMap::new();
    let mut zero_space = Subspace::zero(a.dim());
    for (w, s) in spaces {
        if w.iter().all(Zero::is_zero) {
            zero_space = s;
        } else {
            root_spaces.insert(w, s);
        }
    }
    let roots: Vec<Vec<Rat>> = root_spaces.keys().cloned().collect();
    let roots_match_even = root_spaces.values().all(|s| s.basis().iter().any(|v| a.is_even_vec(v)));
    let irreducible = root_spaces.iter().map(|(w, s)| (w.clone(), is_irreducible(a, h, s))).collect();
    let templates = templates();
    let mut rank_one = BTreeMap::new();
    for (w, s) in root_spaces.iter().filter(|(w, _)| is_positive(w)) {
        let neg: Vec<Rat> = w.iter().map(|x| -x).collect();
        let mut gens: Vec<Vec<Rat>> = s.basis().to_vec();
        if let Some(t) = root_spaces.get(&neg) {
            gens.extend(t.basis().iter().cloned());
        }
        let k = a.generated_subalgebra(&gens);
        let fp = fingerprint(&a.subalgebra_algebra(&k));
        let template = templates.iter().find(|(_, t)| *t == fp).map(|(n, _)| n.clone());
        rank_one.insert(w.clone(), RankOne { dims: k.dims(), template });
    }
    Ok(RootDatum { cartan: h.clone(), torus, roots, root_spaces, zero_space, roots_match_even, irreducible, rank_one })
}

/// Torus-restricted Hilbert-Mumford test: the weights in the support of `x`
/// lie in an open halfspace. Sufficient for nil-cone membership.
pub fn nilcone_weight_member(a: &SuperAlgebra, rd: &RootDatum, x: &[Rat]) -> Result<bool> {
    if !a.is_odd_vec(x) {
        return Err(Error::NotHomogeneous);
    }
    let zero_weight = vec![Rat::zero(); rd.torus.len()];
    let blocks: Vec<(&Vec<Rat>, &Subspace)> =
        rd.root_spaces.iter().chain(std::iter::once((&zero_weight, &rd.zero_space))).collect();
    let basis: Vec<Vec<Rat>> = blocks.iter().flat_map(|(_, s)| s.basis().iter().cloned()).collect();
    let Some(c) = solve(&Mat::from_cols(a.dim(), &basis), x) else {
        return Err(Error::Precondition("x is not a sum of weight vectors".into()));
    };
    let mut support = Vec::new();
    let mut offset = 0;
    for (w, s) in blocks {
        if c[offset..offset + s.dim()].iter().any(|v| !v.is_zero()) {
            support.push(w.clone());
        }
        offset += s.dim();
    }
    Ok(support.is_empty() || halfspace_feasible(&support))
}

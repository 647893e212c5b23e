//! Structural predicates: homological and neat elements, odd generation,
//! Cartan subalgebras and root data, minimal ideals, Takiff recognition and
//! the classification-based 0-superalgebra test.

mod ideals;
mod roots;

pub use ideals::{
    ideal_generated, ideal_type, is_takiff, is_takiff0, is_zero_superalgebra, minimal_ideals, IdealType,
    ZeroCertificate, ZeroFailure,
};
pub use roots::{nilcone_weight_member, root_decomposition, RankOne, RootDatum};

use crate::exactla::{
    is_semisimple_matrix, is_zero_vec, jordan_decomposition, minimal_polynomial, rat, rational_roots, solve, Mat, Rat, Subspace,
};
use crate::liesuper::{Subalgebra, SuperAlgebra};
use crate::{seeded_rng, Error, Result};
use serde::Serialize;

/// Coordinates of sampled odd vectors are drawn from `-SAMPLE_RANGE..=SAMPLE_RANGE`.
pub const SAMPLE_RANGE: i64 = 1_000_000;

fn require_odd(a: &SuperAlgebra, x: &[Rat]) -> Result<()> {
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch(format!("vector of length {} in dimension {}", x.len(), a.dim())));
    }
    if !a.is_odd_vec(x) {
        return Err(Error::NotHomogeneous);
    }
    Ok(())
}

/// Whether the even element `y` is semisimple: through the realization when
/// it is faithful or only scalars were quotiented out, otherwise through `ad`.
pub fn is_semisimple_element(a: &SuperAlgebra, y: &[Rat]) -> bool {
    match a.realization() {
        Some(r) if r.is_faithful() || r.ideal_is_scalar() => is_semisimple_matrix(&r.matrix_of(y)),
        _ => is_semisimple_matrix(&a.adjoint_matrix(y)),
    }
}

/// `[x,x]` is semisimple.
pub fn is_homological(a: &SuperAlgebra, x: &[Rat]) -> Result<bool> {
    require_odd(a, x)?;
    Ok(is_semisimple_element(a, &a.bracket(x, x)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeSample {
    pub seed: u64,
    pub trials: usize,
    pub homological: usize,
}

impl ConeSample {
    /// Fraction of homological samples; `1` when there was nothing to sample.
    pub fn fraction(&self) -> Rat {
        if self.trials == 0 {
            rat(1)
        } else {
            Rat::new((self.homological as i64).into(), (self.trials as i64).into())
        }
    }

    pub fn all_homological(&self) -> bool {
        self.homological == self.trials
    }
}

/// Samples nonzero odd vectors and counts the homological ones.
pub fn homological_cone_sample(a: &SuperAlgebra, trials: usize, seed: u64) -> ConeSample {
    let mut rng = seeded_rng(seed);
    if a.dim_odd() == 0 {
        return ConeSample { seed, trials: 0, homological: 0 };
    }
    let mut homological = 0;
    for _ in 0..trials {
        let x = loop {
            let x = a.random_vec(&mut rng, Some(1), SAMPLE_RANGE);
            if !is_zero_vec(&x) {
                break x;
            }
        };
        if is_semisimple_element(a, &a.bracket(&x, &x)) {
            homological += 1;
        }
    }
    ConeSample { seed, trials, homological }
}

/// `[g1, g1] = g0`.
pub fn is_oddly_generated(a: &SuperAlgebra) -> bool {
    let odd: Vec<Vec<Rat>> = (a.dim_even()..a.dim()).map(|i| a.basis_vec(i)).collect();
    a.bracket_span(&odd, &odd).dim() == a.dim_even()
}

/// Commuting even basis vectors whose `ad` is diagonalizable over Q.
pub fn split_torus(a: &SuperAlgebra) -> Subspace {
    let mut t = Subspace::zero(a.dim());
    for i in 0..a.dim_even() {
        let b = a.basis_vec(i);
        let p = minimal_polynomial(&a.adjoint_matrix(&b));
        let split = p.is_squarefree() && rational_roots(&p).len() == p.degree().unwrap_or(0);
        if split && t.basis().iter().all(|v| is_zero_vec(&a.bracket(v, &b))) {
            t.insert(b);
        }
    }
    t
}

/// `c(x^2)` for homological `x`.
pub fn cartan_from_element(a: &SuperAlgebra, x: &[Rat]) -> Result<Subalgebra> {
    if !is_homological(a, x)? {
        return Err(Error::Precondition("element is not homological".into()));
    }
    let y = a.bracket(x, x);
    Ok(a.centralizer(&Subspace::from_vectors(a.dim(), [y])))
}

/// Even element `s` with `ad s` the semisimple part of `ad y`, if one exists.
pub fn semisimple_part(a: &SuperAlgebra, y: &[Rat]) -> Option<Vec<Rat>> {
    let (s, _) = jordan_decomposition(&a.adjoint_matrix(y));
    if s == a.adjoint_matrix(y) {
        return Some(y.to_vec());
    }
    let n = a.dim();
    let cols: Vec<Vec<Rat>> = (0..a.dim_even()).map(|i| a.adjoint_matrix(&a.basis_vec(i)).into_flat()).collect();
    let z = solve(&Mat::from_cols(n * n, &cols), s.as_flat())?;
    let mut out = z;
    out.resize(n, rat(0));
    Some(out)
}

/// Tries to embed `x` in a copy of osp(1|2) through an sl(2)-triple
/// `(e, h, f)` with `e = [x,x]`, `[h,x] = x`. `None` means the construction
/// did not close; it is not a proof that `x` is not neat.
pub fn neat_witness(a: &SuperAlgebra, x: &[Rat]) -> Result<Option<Subalgebra>> {
    require_odd(a, x)?;
    if is_zero_vec(x) {
        return Err(Error::Precondition("x must be nonzero".into()));
    }
    let e = a.bracket(x, x);
    if is_zero_vec(&e) {
        return Ok(None);
    }
    // inside osp(1|2) the square of an odd element is nilpotent
    let (s, _) = jordan_decomposition(&a.adjoint_matrix(&e));
    if !s.is_zero() {
        return Ok(None);
    }
    let n = a.dim();
    let de = a.dim_even();
    let ad_e = a.adjoint_matrix(&e);
    let even: Vec<Vec<Rat>> = (0..de).map(|i| a.basis_vec(i)).collect();
    // f0 with [e,[e,f0]] = -2e and [[e,f0],x] = x
    let cols: Vec<Vec<Rat>> = even
        .iter()
        .map(|b| {
            let eb = ad_e.mul_vec(b);
            let mut c = ad_e.mul_vec(&eb);
            c.extend(a.bracket(&eb, x));
            c
        })
        .collect();
    let mut rhs: Vec<Rat> = e.iter().map(|v| v * rat(-2)).collect();
    rhs.extend(x.iter().cloned());
    let Some(f0) = solve(&Mat::from_cols(2 * n, &cols), &rhs) else {
        return Ok(None);
    };
    let f0: Vec<Rat> = f0.into_iter().chain(std::iter::repeat(rat(0))).take(n).collect();
    let h = a.bracket(&e, &f0);
    // f with [e,f] = h and [h,f] = -2f
    let ad_h = a.adjoint_matrix(&h);
    let cols: Vec<Vec<Rat>> = even
        .iter()
        .map(|b| {
            let mut c = ad_e.mul_vec(b);
            let hb = ad_h.mul_vec(b);
            c.extend(hb.iter().zip(b).map(|(u, v)| u + v * rat(2)));
            c
        })
        .collect();
    let mut rhs = h.clone();
    rhs.extend(std::iter::repeat(rat(0)).take(n));
    let Some(f) = solve(&Mat::from_cols(2 * n, &cols), &rhs) else {
        return Ok(None);
    };
    let f: Vec<Rat> = f.into_iter().chain(std::iter::repeat(rat(0))).take(n).collect();
    let k = a.generated_subalgebra(&[x.to_vec(), f]);
    if k.dims() != (3, 2) || !k.contains(&h) {
        return Ok(None);
    }
    Ok(Some(k))
}

/// Whether the Lie algebra spanned by the even vectors `even` (closed under
/// the bracket) is semisimple, by nondegeneracy of its Killing form.
pub fn is_semisimple_lie(a: &SuperAlgebra, even: &Subspace) -> bool {
    if even.is_zero() {
        return true;
    }
    let k = Subalgebra::new(a, even.clone()).expect("even subalgebra");
    let alg = a.subalgebra_algebra(&k);
    let idx: Vec<usize> = (0..alg.dim()).collect();
    alg.killing_matrix(&idx).rank() == alg.dim()
}

/// Isomorphism invariants used to compare algebras against named ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub dims: (usize, usize),
    pub center: (usize, usize),
    pub derived: (usize, usize),
    pub second_derived: (usize, usize),
    pub odd_square: usize,
}

pub fn fingerprint(a: &SuperAlgebra) -> Fingerprint {
    let d1 = a.derived_subalgebra();
    let d2 = a.derived_of(&d1);
    let odd: Vec<Vec<Rat>> = (a.dim_even()..a.dim()).map(|i| a.basis_vec(i)).collect();
    Fingerprint {
        dims: a.dims(),
        center: a.center().dims(),
        derived: d1.dims(),
        second_derived: d2.dims(),
        odd_square: a.bracket_span(&odd, &odd).dim(),
    }
}

#[cfg(test)]
mod tests;

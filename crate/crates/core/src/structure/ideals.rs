use super::{is_oddly_generated, is_semisimple_lie};
use crate::exactla::{kernel_basis, rat, Mat, Rat, Subspace};
use crate::liesuper::{Subalgebra, SuperAlgebra};
use crate::{seeded_rng, Result};
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

const IDEAL_SEED: u64 = 0x1dea1;
const RANDOM_CANDIDATES: usize = 20;

/// Smallest ideal containing the homogeneous components of `gens`.
pub fn ideal_generated(a: &SuperAlgebra, gens: &[Vec<Rat>]) -> Subalgebra {
    let mut space = Subspace::zero(a.dim());
    let mut queue: Vec<Vec<Rat>> = Vec::new();
    for g in gens {
        queue.push(a.even_part(g));
        queue.push(a.odd_part(g));
    }
    let ads: Vec<Mat> = (0..a.dim()).map(|i| a.adjoint_matrix(&a.basis_vec(i))).collect();
    while let Some(v) = queue.pop() {
        if !space.insert(v.clone()) {
            continue;
        }
        for ad in &ads {
            let w = ad.mul_vec(&v);
            if !space.contains(&w) {
                queue.push(w);
            }
        }
    }
    Subalgebra::new(a, space).expect("an ideal is a graded subalgebra")
}

fn random_in<R: Rng>(rng: &mut R, basis: &[Vec<Rat>], n: usize) -> Vec<Rat> {
    let mut v = vec![rat(0); n];
    for b in basis {
        let c = rat(rng.gen_range(-5..=5));
        crate::exactla::axpy(&mut v, &c, b);
    }
    v
}

/// A nonzero ideal of `a` properly inside the ideal `j`, if one of the
/// candidates produces it.
fn proper_subideal<R: Rng>(a: &SuperAlgebra, j: &Subalgebra, rng: &mut R) -> Option<Subalgebra> {
    let proper = |k: &Subalgebra| k.dim() > 0 && k.dim() < j.dim();
    let all: Vec<Vec<Rat>> = (0..a.dim()).map(|i| a.basis_vec(i)).collect();
    let canonical = [
        Subalgebra::new(a, a.bracket_span(&all, j.basis())).ok(),
        Subalgebra::new(a, j.space().intersect(a.center().space())).ok(),
        Some(ideal_generated(a, j.odd_basis())),
        Some(ideal_generated(a, j.even_basis())),
        Some(ideal_generated(a, &a.bracket_span(j.odd_basis(), j.odd_basis()).basis().to_vec())),
    ];
    if let Some(k) = canonical.into_iter().flatten().find(|k| proper(k)) {
        return Some(k);
    }
    for v in j.basis() {
        let k = ideal_generated(a, std::slice::from_ref(v));
        if proper(&k) {
            return Some(k);
        }
    }
    for _ in 0..RANDOM_CANDIDATES {
        for basis in [j.even_basis(), j.odd_basis()] {
            if basis.is_empty() {
                continue;
            }
            let k = ideal_generated(a, &[random_in(rng, basis, a.dim())]);
            if proper(&k) {
                return Some(k);
            }
        }
    }
    None
}

fn descend<R: Rng>(a: &SuperAlgebra, mut j: Subalgebra, rng: &mut R) -> Subalgebra {
    while let Some(k) = proper_subideal(a, &j, rng) {
        j = k;
    }
    j
}

/// Minimal ideals whose sum is direct, found by descending from the ideals
/// generated by basis vectors and random vectors. Minimality of each is
/// certified by the failure of a seeded randomized search for a proper
/// sub-ideal.
pub fn minimal_ideals(a: &SuperAlgebra) -> Vec<Subalgebra> {
    let mut rng = seeded_rng(IDEAL_SEED);
    let mut found: Vec<Subalgebra> = Vec::new();
    let mut socle = Subspace::zero(a.dim());
    if a.dim() == 0 {
        return found;
    }
    let mut starts: Vec<Subalgebra> = vec![a.whole()];
    starts.extend((0..a.dim()).map(|i| ideal_generated(a, &[a.basis_vec(i)])));
    for start in starts {
        if start.space().is_subspace_of(&socle) {
            continue;
        }
        let m = descend(a, start, &mut rng);
        if m.space().intersect(&socle).is_zero() {
            socle = socle.join(m.space());
            found.push(m);
        }
    }
    found
}

/// Type of a minimal ideal: every minimal ideal of a quasireductive algebra
/// is simple, odd abelian or Takiff.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealType {
    Simple,
    Takiff,
    OddAbelian,
    EvenAbelian,
    Other,
}

pub fn ideal_type(a: &SuperAlgebra, i: &Subalgebra) -> IdealType {
    let derived = a.derived_of(i);
    let (de, dd) = i.dims();
    if derived.dim() == 0 {
        return if de == 0 { IdealType::OddAbelian } else { IdealType::EvenAbelian };
    }
    if derived.dim() < i.dim() {
        return IdealType::Other;
    }
    let odd_square = a.bracket_span(i.odd_basis(), i.odd_basis());
    if dd > 0 && odd_square.is_zero() {
        if is_takiff(&a.subalgebra_algebra(i)) {
            IdealType::Takiff
        } else {
            IdealType::Other
        }
    } else {
        IdealType::Simple
    }
}

/// Invertible `g0`-equivariant map `s0 -> s1` (as a matrix from `s0` basis
/// coordinates to `s1` basis coordinates), when one exists.
fn intertwiner(a: &SuperAlgebra, s0: &Subspace, s1: &Subspace) -> Option<Mat> {
    let (d0, d1) = (s0.dim(), s1.dim());
    if d0 != d1 {
        return None;
    }
    if d0 == 0 {
        return Some(Mat::zeros(0, 0));
    }
    let b0 = s0.basis();
    let b1 = s1.basis();
    // unknown phi[k][l] at index k * d0 + l
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for bi in b0 {
        let act1: Vec<Vec<Rat>> = b1.iter().map(|u| s1.coords(&a.bracket(bi, u)).expect("s1 is g0-stable")).collect();
        for (j, bj) in b0.iter().enumerate() {
            let c = s0.coords(&a.bracket(bi, bj)).expect("s0 is closed");
            for m in 0..d1 {
                let mut row = vec![rat(0); d0 * d1];
                for (l, cl) in c.iter().enumerate() {
                    row[m * d0 + l] += cl;
                }
                for (k, ak) in act1.iter().enumerate() {
                    row[k * d0 + j] -= &ak[m];
                }
                rows.push(row);
            }
        }
    }
    let ker = kernel_basis(&Mat::from_rows(rows));
    let mut rng = seeded_rng(IDEAL_SEED);
    for _ in 0..8 {
        let v = random_in(&mut rng, ker.basis(), d0 * d1);
        let phi = Mat::from_flat(d1, d0, v);
        if phi.rank() == d0 {
            return Some(phi);
        }
    }
    None
}

/// `s ≅ ⊕ s_i ⊗ C[ξ_i]`: `s0` semisimple and nonzero, `s1` abelian and
/// isomorphic to the adjoint module of `s0`.
pub fn is_takiff(a: &SuperAlgebra) -> bool {
    let even = Subspace::coordinate(a.dim(), 0..a.dim_even());
    let odd = Subspace::coordinate(a.dim(), a.dim_even()..a.dim());
    if a.dim_even() == 0 || a.dim_even() != a.dim_odd() {
        return false;
    }
    let ob: Vec<Vec<Rat>> = odd.basis().to_vec();
    if !a.bracket_span(&ob, &ob).is_zero() {
        return false;
    }
    is_semisimple_lie(a, &even) && intertwiner(a, &even, &odd).is_some()
}

/// Odd vectors `v` with `[g1, v] = 0`; the largest ideal inside `g1`.
fn odd_abelian_radical(a: &SuperAlgebra) -> Subspace {
    let odd = Subspace::coordinate(a.dim(), a.dim_even()..a.dim());
    a.centralizer(&odd).odd_space()
}

/// `[g,g]` Takiff, no center, no odd abelian ideal, and oddly generated
/// (equivalently, the derivation part projects onto every `∂_{ξ_i}`).
pub fn is_takiff0(a: &SuperAlgebra) -> bool {
    let d = a.derived_subalgebra();
    is_takiff(&a.subalgebra_algebra(&d))
        && a.center().dim() == 0
        && odd_abelian_radical(a).is_zero()
        && is_oddly_generated(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroFailure {
    NotOddlyGenerated,
    SimpleIdealPresent,
    StructureMismatch,
}

/// Outcome of the classification test. The parts live in `quotient`, the
/// quotient of the algebra by the even part of its center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCertificate {
    pub verdict: bool,
    pub center: Subalgebra,
    pub quotient: SuperAlgebra,
    pub minimal_ideals: Vec<((usize, usize), IdealType)>,
    pub takiff_part: Option<Subalgebra>,
    pub odd_abelian_part: Option<Subalgebra>,
    pub derivation_part: Option<Subalgebra>,
    pub failure_reason: Option<ZeroFailure>,
}

impl ZeroCertificate {
    pub fn to_json(&self) -> Value {
        let dims = |s: &Option<Subalgebra>| s.as_ref().map(|k| json!([k.dims().0, k.dims().1]));
        json!({
            "verdict": self.verdict,
            "center": [self.center.dims().0, self.center.dims().1],
            "quotient": [self.quotient.dim_even(), self.quotient.dim_odd()],
            "minimal_ideals": self.minimal_ideals.iter().map(|((e, o), t)| json!({"dims": [e, o], "type": t})).collect::<Vec<_>>(),
            "takiff_part": dims(&self.takiff_part),
            "odd_abelian_part": dims(&self.odd_abelian_part),
            "derivation_part": dims(&self.derivation_part),
            "failure_reason": self.failure_reason,
        })
    }
}

/// Decides whether `a` is a 0-superalgebra: oddly generated, and modulo its
/// even center of the form `(s ⋊ d) × v` with `s` Takiff, `d` odd abelian
/// commuting with the even part, and `v` odd abelian.
pub fn is_zero_superalgebra(a: &SuperAlgebra) -> Result<ZeroCertificate> {
    let z = a.center();
    let z0 = Subalgebra::new(a, z.even_space())?;
    let quotient = a.quotient(&z0)?;
    let mut cert = ZeroCertificate {
        verdict: false,
        center: z0,
        quotient,
        minimal_ideals: Vec::new(),
        takiff_part: None,
        odd_abelian_part: None,
        derivation_part: None,
        failure_reason: None,
    };
    if !is_oddly_generated(a) {
        cert.failure_reason = Some(ZeroFailure::NotOddlyGenerated);
        return Ok(cert);
    }
    let q = &cert.quotient;
    let mins = minimal_ideals(q);
    cert.minimal_ideals = mins.iter().map(|m| (m.dims(), ideal_type(q, m))).collect();
    if cert.minimal_ideals.iter().any(|(_, t)| *t == IdealType::Simple) {
        cert.failure_reason = Some(ZeroFailure::SimpleIdealPresent);
        return Ok(cert);
    }
    match zero_structure(q) {
        Some((s, v, d)) => {
            cert.verdict = true;
            cert.takiff_part = Some(s);
            cert.odd_abelian_part = Some(v);
            cert.derivation_part = Some(d);
        }
        None => cert.failure_reason = Some(ZeroFailure::StructureMismatch),
    }
    Ok(cert)
}

/// Splits `q = (S0 + S1) + C` with `S1 = [q0, q1]` and `C` the `q0`-invariant
/// odd vectors, and checks the Takiff shape.
fn zero_structure(q: &SuperAlgebra) -> Option<(Subalgebra, Subalgebra, Subalgebra)> {
    let n = q.dim();
    let even = Subspace::coordinate(n, 0..q.dim_even());
    let odd = Subspace::coordinate(n, q.dim_even()..n);
    if !is_semisimple_lie(q, &even) {
        return None;
    }
    let s1 = q.bracket_span(even.basis(), odd.basis());
    let c = q.centralizer(&even).odd_space();
    if !s1.intersect(&c).is_zero() || s1.dim() + c.dim() != q.dim_odd() {
        return None;
    }
    if !q.bracket_span(s1.basis(), s1.basis()).is_zero() || !q.bracket_span(c.basis(), c.basis()).is_zero() {
        return None;
    }
    intertwiner(q, &even, &s1)?;
    let v = c.intersect(q.centralizer(&s1).space());
    let mut d = Subspace::zero(n);
    let mut acc = v.clone();
    for b in c.basis() {
        if acc.insert(b.clone()) {
            d.insert(b.clone());
        }
    }
    let s = Subalgebra::new(q, even.join(&s1)).ok()?;
    let v = Subalgebra::new(q, v).ok()?;
    let d = Subalgebra::new(q, d).ok()?;
    Some((s, v, d))
}

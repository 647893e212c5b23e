//! Sylow subalgebras: the Berezinian character, the splitting criterion,
//! generic homological elements and row-by-row verification of the tables.

mod named;
mod weyl;

pub use named::{normalizer_named, sylow_named, weyl_expected};
pub use weyl::{weyl_data, WeylData};

use crate::exactla::{axpy, format_rat, is_zero_vec, jordan_decomposition, rat, Rat, Subspace};
use crate::families::{construct, sylow_candidate, FamilySpec};
use crate::liesuper::{Subalgebra, SuperAlgebra};
use crate::report::VerificationReport;
use crate::structure::{
    fingerprint, homological_cone_sample, is_homological, is_zero_superalgebra, semisimple_part, ConeSample,
};
use crate::{seeded_rng, Error, Result};
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;
use serde_json::json;

/// Samples drawn from the odd part of `g` when testing density of homological elements.
pub const CONE_TRIALS: usize = 1000;
const LOCAL_RANGE: i64 = 50;

/// `a -> str(ad_g a) - str(ad_k a)` on `k0`, listed on the even basis of `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BerCharacter {
    pub subalgebra: Subalgebra,
    pub functional: Vec<Rat>,
}

impl BerCharacter {
    pub fn is_trivial(&self) -> bool {
        self.functional.iter().all(Zero::is_zero)
    }
}

pub fn ber_character(g: &SuperAlgebra, k: &Subalgebra) -> BerCharacter {
    let basis = k.basis();
    let functional = k
        .even_basis()
        .iter()
        .map(|a| {
            let mut s = g.supertrace(&g.adjoint_matrix(a));
            for (j, b) in basis.iter().enumerate() {
                let c = k.space().coords(&g.bracket(a, b)).expect("subalgebra is closed");
                if g.is_even_vec(b) {
                    s -= &c[j];
                } else {
                    s += &c[j];
                }
            }
            s
        })
        .collect();
    BerCharacter { subalgebra: k.clone(), functional }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingCheck {
    pub ber_trivial: bool,
    pub cone: ConeSample,
    /// `dim([g0,x] + k1) = dim g1` for some sampled homological `x` in `k1`;
    /// evaluated only when every sampled odd element of `g` was homological.
    pub hom_orbit_ok: Option<bool>,
}

impl SplittingCheck {
    /// No necessary condition is violated.
    pub fn consistent(&self) -> bool {
        self.ber_trivial && self.hom_orbit_ok != Some(false)
    }
}

fn random_in(rng: &mut impl Rng, n: usize, basis: &[Vec<Rat>]) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    for b in basis {
        axpy(&mut v, &rat(rng.gen_range(-LOCAL_RANGE..=LOCAL_RANGE)), b);
    }
    v
}

/// Seeded homological elements of `k1`, up to `want` of them.
fn sample_homological(g: &SuperAlgebra, k: &Subalgebra, seed: u64, want: usize) -> Vec<Vec<Rat>> {
    let mut rng = seeded_rng(seed);
    let mut out = Vec::new();
    for _ in 0..100 {
        let x = random_in(&mut rng, g.dim(), k.odd_basis());
        if is_homological(g, &x).unwrap_or(false) {
            out.push(x);
            if out.len() == want {
                break;
            }
        }
    }
    out
}

pub fn splitting_necessary(g: &SuperAlgebra, k: &Subalgebra, seed: u64) -> SplittingCheck {
    let ber_trivial = ber_character(g, k).is_trivial();
    let cone = homological_cone_sample(g, CONE_TRIALS, seed);
    let hom_orbit_ok = if cone.all_homological() {
        let even: Vec<Vec<Rat>> = (0..g.dim_even()).map(|i| g.basis_vec(i)).collect();
        let samples = sample_homological(g, k, seed ^ 0x5a5a, 10);
        let best = samples.into_iter().map(|x| g.bracket_span(&even, &[x]).join(&k.odd_space()).dim()).max();
        best.map(|d| d == g.dim_odd())
    } else {
        None
    };
    SplittingCheck { ber_trivial, cone, hom_orbit_ok }
}

/// Semisimple part of the even element `v`, through the realization when it
/// determines the element and through `ad` otherwise.
fn semisimple_component(g: &SuperAlgebra, v: &[Rat]) -> Option<Vec<Rat>> {
    match g.realization() {
        Some(r) if r.is_faithful() || r.ideal_is_scalar() => {
            let (s, _) = jordan_decomposition(&r.matrix_of(v));
            r.coords_of(&s)
        }
        _ => semisimple_part(g, v),
    }
}

/// A maximal torus of `o0`: grown by adjoining semisimple parts of seeded
/// random elements of its centralizer in `o0` until that centralizer is the
/// torus itself.
pub fn maximal_torus(g: &SuperAlgebra, o: &Subalgebra, seed: u64) -> Subspace {
    let mut rng = seeded_rng(seed);
    let o0 = o.even_space();
    let mut t = Subspace::zero(g.dim());
    loop {
        let c = g.centralizer(&t).space().intersect(&o0);
        if c.dim() == t.dim() {
            return t;
        }
        let mut grown = false;
        for _ in 0..20 {
            let v = random_in(&mut rng, g.dim(), c.basis());
            let Some(s) = semisimple_component(g, &v) else { continue };
            if !is_zero_vec(&s) && c.contains(&s) && !t.contains(&s) {
                t.insert(s);
                grown = true;
                break;
            }
        }
        if !grown {
            return t;
        }
    }
}

/// A homological `x` in `o1` with `y = [x,x]` regular: `c_{o0}(y)` is abelian
/// of the rank of `o0`, and `c_g(y)` equals the centralizer of that torus.
pub fn find_generic(g: &SuperAlgebra, o: &Subalgebra, seed: u64) -> Result<Vec<Rat>> {
    let rank = maximal_torus(g, o, seed).dim();
    let o0 = o.even_space();
    let mut rng = seeded_rng(seed ^ 0x6e6e);
    for _ in 0..500 {
        let x = random_in(&mut rng, g.dim(), o.odd_basis());
        if !is_homological(g, &x)? {
            continue;
        }
        let y = g.bracket(&x, &x);
        let cy = g.centralizer(&Subspace::from_vectors(g.dim(), [y]));
        let ty = cy.space().intersect(&o0);
        if ty.dim() != rank || !g.bracket_span(ty.basis(), ty.basis()).is_zero() {
            continue;
        }
        if g.centralizer(&ty) == cy {
            return Ok(x);
        }
    }
    Err(Error::NotFound("no generic homological element in the odd part".into()))
}

fn dims_json(d: (usize, usize)) -> serde_json::Value {
    json!([d.0, d.1])
}

/// Checks one row of the Sylow table: the tabulated subalgebra is a
/// 0-superalgebra, passes the splitting criterion and has the named type.
pub fn verify_sylow_row(spec: &FamilySpec, seed: u64) -> Result<VerificationReport> {
    let g = construct(spec)?;
    let o = sylow_candidate(spec)?;
    let oa = g.subalgebra_algebra(&o);
    let (label, named) = sylow_named(spec)?;
    let mut rep = VerificationReport::new(format!("sylow {spec}"), seed);

    let cert = is_zero_superalgebra(&oa)?;
    rep.pass("zero_superalgebra", cert.verdict, cert.to_json(), "classification of 0-superalgebras");

    let ber = ber_character(&g, &o);
    let functional: Vec<String> = ber.functional.iter().map(format_rat).collect();
    rep.pass("berezinian_trivial", ber.is_trivial(), json!({ "functional": functional }), "splitting criterion");

    let split = splitting_necessary(&g, &o, seed);
    rep.pass(
        "splitting_necessary",
        split.consistent(),
        json!({
            "cone_trials": split.cone.trials,
            "cone_homological": split.cone.homological,
            "homological_orbit": split.hom_orbit_ok,
        }),
        "splitting criterion",
    );

    rep.pass(
        "dimensions",
        o.dims() == named.dims(),
        json!({ "named": label, "expected": dims_json(named.dims()), "found": dims_json(o.dims()) }),
        "Sylow table",
    );
    let (fo, fn_) = (fingerprint(&oa), fingerprint(&named));
    rep.pass("isomorphism_invariants", fo == fn_, json!({ "expected": fn_, "found": fo }), "Sylow table");
    Ok(rep)
}

/// Checks one row of the normalizer table together with the containment
/// statements about centralizers and homological elements.
pub fn verify_normalizer_row(spec: &FamilySpec, seed: u64) -> Result<VerificationReport> {
    let g = construct(spec)?;
    let o = sylow_candidate(spec)?;
    let n = g.normalizer(&o);
    let na = g.subalgebra_algebra(&n);
    let (label, named) = normalizer_named(spec)?;
    let mut rep = VerificationReport::new(format!("normalizer {spec}"), seed);

    rep.pass(
        "dimensions",
        n.dims() == named.dims(),
        json!({ "named": label, "expected": dims_json(named.dims()), "found": dims_json(n.dims()) }),
        "normalizer table",
    );
    let (fo, fn_) = (fingerprint(&na), fingerprint(&named));
    rep.pass("isomorphism_invariants", fo == fn_, json!({ "expected": fn_, "found": fo }), "normalizer table");

    if matches!(spec, FamilySpec::Psq(_) | FamilySpec::Pq(_)) {
        rep.pass("self_normalizing", n == o, json!({ "sylow": dims_json(o.dims()) }), "normalizer table");
    }

    let t = maximal_torus(&g, &o, seed);
    let ct = g.centralizer(&t);
    rep.pass(
        "torus_centralizer_in_normalizer",
        ct.is_subalgebra_of(&n),
        json!({ "torus_dim": t.dim(), "centralizer": dims_json(ct.dims()) }),
        "normalizer table",
    );

    let mut rng = seeded_rng(seed ^ 0x4e4e);
    let (mut sampled, mut homological, mut inside) = (0, 0, 0);
    for _ in 0..100 {
        let x = random_in(&mut rng, g.dim(), n.odd_basis());
        sampled += 1;
        if is_homological(&g, &x)? {
            homological += 1;
            if o.contains(&x) {
                inside += 1;
            }
        }
    }
    rep.pass(
        "homological_in_sylow",
        homological == inside,
        json!({ "sampled": sampled, "homological": homological, "in_sylow": inside }),
        "normalizer table",
    );

    match find_generic(&g, &o, seed) {
        Ok(x) => {
            let cy = g.centralizer(&Subspace::from_vectors(g.dim(), [g.bracket(&x, &x)]));
            rep.pass(
                "generic_centralizer_in_normalizer",
                cy.is_subalgebra_of(&n),
                json!({ "centralizer": dims_json(cy.dims()) }),
                "normalizer table",
            );
        }
        Err(e) => {
            rep.check("generic_centralizer_in_normalizer", None, json!({ "error": e.to_string() }), "normalizer table");
        }
    }
    Ok(rep)
}

/// `|W_G / W_N|`: the number of conjugacy classes of Sylow subalgebras
/// sharing a maximal torus of the Sylow subalgebra.
pub fn third_sylow_count(spec: &FamilySpec) -> Result<usize> {
    Ok(weyl_data(spec)?.sylow_count())
}

/// Checks one row of the Weyl group table.
pub fn verify_weyl_row(spec: &FamilySpec, seed: u64) -> Result<VerificationReport> {
    let wd = weyl_data(spec)?;
    let (order, count) = weyl_expected(spec)?;
    let mut rep = VerificationReport::new(format!("weyl {spec}"), seed);
    rep.pass(
        "weyl_group_order",
        wd.w_g == order,
        json!({ "expected": order, "found": wd.w_g, "ambient": wd.ambient_order, "torus_dim": wd.torus_dim }),
        "Weyl group table",
    );
    rep.pass(
        "sylow_classes",
        wd.w_g % wd.w_n == 0 && wd.sylow_count() == count,
        json!({ "expected": count, "found": wd.sylow_count(), "normalizer_weyl_order": wd.w_n }),
        "Weyl group table",
    );
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NotSylowReason {
    BerNontrivial,
    NotZero,
    DimMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SylowVerdict {
    Sylow,
    NotSylow(NotSylowReason),
    Unknown,
}

/// Decides whether `k` is a Sylow subalgebra of `construct(spec)` by the
/// necessary conditions and comparison with the tabulated type.
pub fn is_sylow_by_table(spec: &FamilySpec, k: &Subalgebra, seed: u64) -> Result<SylowVerdict> {
    let g = construct(spec)?;
    if !ber_character(&g, k).is_trivial() {
        return Ok(SylowVerdict::NotSylow(NotSylowReason::BerNontrivial));
    }
    let ka = g.subalgebra_algebra(k);
    if !is_zero_superalgebra(&ka)?.verdict {
        return Ok(SylowVerdict::NotSylow(NotSylowReason::NotZero));
    }
    let (_, named) = sylow_named(spec)?;
    if fingerprint(&ka) != fingerprint(&named) {
        return Ok(SylowVerdict::NotSylow(NotSylowReason::DimMismatch));
    }
    Ok(match splitting_necessary(&g, k, seed).hom_orbit_ok {
        Some(true) => SylowVerdict::Sylow,
        _ => SylowVerdict::Unknown,
    })
}

#[cfg(test)]
mod tests;

//! Property suites that are not rows of a table.

use serde_json::json;
use supersylow::dsrep::{ds, FdModule};
use supersylow::exactla::{rat, zero_vec, Mat, Rat};
use supersylow::families::{
    construct, counterexample_subalgebra, standard_module, sylow_candidate, takiff_semidirect, FamilySpec, Simple,
};
use supersylow::relcoh::{ext1, restriction_injective_ext1};
use supersylow::report::VerificationReport;
use supersylow::structure::{homological_cone_sample, is_zero_superalgebra};
use supersylow::sylow::{is_sylow_by_table, SylowVerdict};
use supersylow::{seeded_rng, Error, Result, Subalgebra, Subspace, SuperAlgebra};

use rand::Rng;

fn construct_str(s: &str) -> Result<SuperAlgebra> {
    construct(&s.parse::<FamilySpec>()?)
}

pub fn zero_classification(seed: u64) -> Result<Vec<VerificationReport>> {
    let sl11 = construct_str("sl(1|1)")?;
    let mut corpus: Vec<(String, SuperAlgebra, bool)> = Vec::new();
    for s in ["sl(1|1)", "pq(2)", "spe(2)", "counterexample(2)", "takiff0(sl2;d=[1])", "takiff0(sl2+sl3;d=[1,-1])"] {
        corpus.push((s.into(), construct_str(s)?, true));
    }
    for k in 2..=3 {
        corpus.push((format!("sl(1|1)^{k}"), SuperAlgebra::direct_power(&sl11, k), true));
    }
    corpus.push(("spe(2)^2".into(), SuperAlgebra::direct_power(&construct_str("spe(2)")?, 2), true));
    for s in ["gl(1|1)", "osp(1|2)", "psq(2)", "psq(3)"] {
        corpus.push((s.into(), construct_str(s)?, false));
    }
    let non = takiff_semidirect(&[Simple::Sl(2), Simple::Sl(3)], &[vec![rat(1), rat(0)]])?;
    corpus.push(("takiff0(sl2+sl3;d=[1,0])".into(), non, false));
    corpus
        .into_iter()
        .map(|(name, a, expected)| {
            let cert = is_zero_superalgebra(&a)?;
            let mut rep = VerificationReport::new(format!("zero-classification {name}"), seed);
            rep.pass(
                "zero_superalgebra",
                cert.verdict == expected,
                json!({ "expected": expected, "found": cert.verdict, "certificate": cert.to_json() }),
                "classification of 0-superalgebras",
            );
            Ok(rep)
        })
        .collect()
}

pub fn counterexample(n: usize, seed: u64) -> Result<VerificationReport> {
    let gl = FamilySpec::Gl(n, n);
    let g = construct(&gl)?;
    let k = counterexample_subalgebra(n)?;
    let mut rep = VerificationReport::new(format!("counterexample({n}) in {gl}"), seed);
    let cert = is_zero_superalgebra(&g.subalgebra_algebra(&k))?;
    rep.pass("zero_superalgebra", cert.verdict, cert.to_json(), "counterexample to maximal 0-subalgebras being Sylow");
    let verdict = is_sylow_by_table(&gl, &k, seed)?;
    let o = sylow_candidate(&gl)?;
    rep.pass(
        "not_sylow",
        matches!(verdict, SylowVerdict::NotSylow(_)),
        json!({
            "verdict": verdict,
            "found": [k.dims().0, k.dims().1],
            "expected": [o.dims().0, o.dims().1],
        }),
        "counterexample to maximal 0-subalgebras being Sylow",
    );
    Ok(rep)
}

/// Random element of the upper right block of the defining matrices.
fn upper_odd(g: &SuperAlgebra, rng: &mut impl Rng) -> Vec<Rat> {
    let r = g.realization().expect("matrix family");
    let mut x = zero_vec(g.dim());
    for (i, m) in r.matrices.iter().enumerate() {
        let upper =
            (0..r.size()).all(|a| (0..r.size()).all(|b| m.get(a, b) == &rat(0) || (a < r.p && b >= r.p)));
        if !m.is_zero() && upper && rng.gen_bool(0.6) {
            x[i] = rat(rng.gen_range(-3..=3));
        }
    }
    x
}

pub fn ds_suite(seed: u64) -> Result<Vec<VerificationReport>> {
    let algebras = ["gl(1|1)", "gl(2|1)", "gl(1|2)", "gl(2|2)", "sl(2|3)", "gl(3|2)"];
    let mut rng = seeded_rng(seed);
    let mut rep = VerificationReport::new("ds superdimension", seed);
    let mut mismatches = Vec::new();
    for t in 0..100 {
        let name = algebras[t % algebras.len()];
        let g = construct_str(name)?;
        let v = standard_module(&g)?;
        let (label, m) = match (t / algebras.len()) % 5 {
            0 => ("V", v),
            1 => ("V*", v.dual()),
            2 => ("adjoint", FdModule::adjoint(&g)),
            3 => ("V⊗V", v.tensor(&v)),
            _ => ("V⊕V*", v.direct_sum(&v.dual())),
        };
        let x = upper_odd(&g, &mut rng);
        let d = ds(&g, &m, &x)?;
        if d.sdim() != m.sdim() {
            mismatches.push(json!({ "algebra": name, "module": label, "sdim": m.sdim(), "ds_sdim": d.sdim() }));
        }
    }
    rep.pass("sdim_invariance", mismatches.is_empty(), json!({ "triples": 100, "mismatches": mismatches }), "DS functor");
    let mut rank_one = VerificationReport::new("ds rank one", seed);
    for (m, n) in [(1, 1), (2, 2), (2, 3)] {
        let g = construct(&FamilySpec::Gl(m, n))?;
        let r = g.realization().expect("matrix family");
        let x = r.preimage(&[Mat::unit(r.size(), r.size(), 0, m)]).basis()[0].clone();
        let d = ds(&g, &standard_module(&g)?, &x)?;
        rank_one.pass(
            &format!("gl({m}|{n})"),
            d.output_dims == (m - 1, n - 1),
            json!({ "expected": [m - 1, n - 1], "found": [d.output_dims.0, d.output_dims.1] }),
            "DS functor",
        );
    }
    Ok(vec![rep, rank_one])
}

fn character(g: &SuperAlgebra, values: &[(&str, i64)]) -> Result<FdModule> {
    let mut chi = zero_vec(g.dim_even());
    for (n, v) in values {
        let i = g.names().iter().position(|s| s == n).ok_or_else(|| Error::InvalidParameters(format!("no {n}")))?;
        chi[i] = rat(*v);
    }
    FdModule::character(g, &chi)
}

pub fn ext_suite(seed: u64) -> Result<Vec<VerificationReport>> {
    let mut semisimple = VerificationReport::new("ext semisimplicity", seed);
    let o = construct_str("osp(1|2)")?;
    let cone = homological_cone_sample(&o, 1000, seed);
    semisimple.pass("osp(1|2) homological fraction", cone.homological == 0, json!(cone), "semisimplicity criterion");
    let std = standard_module(&o)?;
    let triv = FdModule::trivial(&o);
    for (name, m, n) in [("osp(1|2) Ext^1(C,V)", &triv, &std), ("osp(1|2) Ext^1(V,V)", &std, &std)] {
        let e = ext1(&o, m, n)?;
        semisimple.pass(name, e == (0, 0), json!([e.0, e.1]), "semisimplicity criterion");
    }
    let s = construct_str("sl(1|1)")?;
    let e = ext1(&s, &FdModule::trivial(&s), &FdModule::adjoint(&s))?;
    semisimple.pass("sl(1|1) Ext^1(C,adjoint)", e != (0, 0), json!([e.0, e.1]), "semisimplicity criterion");

    let mut splitting = VerificationReport::new("ext restriction", seed);
    let g = construct_str("gl(1|1)")?;
    let v = standard_module(&g)?;
    let alpha = character(&g, &[("E11", 1), ("E22", -1)])?;
    let corpus = [FdModule::trivial(&g), v.clone(), v.dual(), alpha.clone(), alpha.dual(), FdModule::adjoint(&g)];
    let g2 = construct_str("gl(1|2)")?;
    let v2 = standard_module(&g2)?;
    let ber = character(&g2, &[("E11", 1), ("E22", -1), ("E33", -1)])?;
    let corpus2 = [FdModule::trivial(&g2), v2.clone(), v2.dual(), ber];
    for (name, alg, spec, probes) in [("gl(1|1)", &g, "gl(1|1)", &corpus[..]), ("gl(1|2)", &g2, "gl(1|2)", &corpus2[..])] {
        let k = sylow_candidate(&spec.parse()?)?;
        let mut bad = Vec::new();
        for (i, m) in probes.iter().enumerate() {
            for (j, n) in probes.iter().enumerate() {
                if !restriction_injective_ext1(alg, &k, m, n)? {
                    bad.push([i, j]);
                }
            }
        }
        splitting.pass(
            &format!("{name} Sylow restriction injective"),
            bad.is_empty(),
            json!({ "probes": probes.len(), "failures": bad }),
            "splitting subalgebras",
        );
    }
    let torus = Subalgebra::new(&g, Subspace::coordinate(g.dim(), 0..g.dim_even()))?;
    let triv = FdModule::trivial(&g);
    let e = ext1(&g, &triv, &alpha)?;
    let inj = restriction_injective_ext1(&g, &torus, &triv, &alpha)?;
    splitting.pass(
        "gl(1|1) even torus not splitting",
        e != (0, 0) && !inj,
        json!({ "ext1": [e.0, e.1], "injective": inj }),
        "splitting subalgebras",
    );
    Ok(vec![semisimple, splitting])
}

use super::*;
use crate::exactla::{rat, vec_add};

fn spec(s: &str) -> FamilySpec {
    s.parse().unwrap()
}

fn alg(s: &str) -> SuperAlgebra {
    construct(&spec(s)).unwrap()
}

fn span(a: &SuperAlgebra, names: &[&str]) -> Subalgebra {
    let vecs = names.iter().map(|n| {
        let i = a.names().iter().position(|s| s == n).unwrap();
        a.basis_vec(i)
    });
    Subalgebra::new(a, Subspace::from_vectors(a.dim(), vecs)).unwrap()
}

#[test]
fn berezinian_examples() {
    let g = alg("gl(1|1)");
    let id = vec_add(&span(&g, &["E11"]).basis()[0], &span(&g, &["E22"]).basis()[0]);
    let mut sp = Subspace::from_vectors(g.dim(), [id]);
    for n in ["E12", "E21"] {
        sp.insert(span(&g, &[n]).basis()[0].clone());
    }
    let s = Subalgebra::new(&g, sp).unwrap();
    assert!(ber_character(&g, &s).is_trivial());
    let b = span(&g, &["E11", "E22", "E12"]);
    assert_eq!(ber_character(&g, &b).functional, vec![rat(1), rat(-1)]);
}

#[test]
fn sylow_rows_small() {
    for s in ["gl(1|1)", "sl(1|2)", "osp(3|2)", "psl(2|2)", "pe(3)", "spe(2)", "psq(3)", "pq(2)"] {
        let rep = verify_sylow_row(&spec(s), 1).unwrap();
        assert!(rep.passed(), "{s}: {}", rep.to_json());
    }
}

#[test]
fn normalizer_rows_small() {
    for s in ["gl(1|2)", "sl(1|2)", "sl(2|3)", "psl(2|2)", "osp(3|2)", "osp(2|4)", "pe(2)", "spe(3)", "psq(3)"] {
        let rep = verify_normalizer_row(&spec(s), 1).unwrap();
        assert!(rep.passed(), "{s}: {}", rep.to_json());
    }
}

#[test]
fn weyl_rows() {
    for s in ["sl(2|3)", "psl(3|3)", "osp(4|4)", "osp(5|4)", "osp(2|4)", "spe(4)", "pe(5)", "psq(4)", "psq(5)", "pq(2)"] {
        let rep = verify_weyl_row(&spec(s), 0).unwrap();
        assert!(rep.passed(), "{s}: {}", rep.to_json());
    }
    assert_eq!(weyl_data(&spec("psq(4)")).unwrap().sylow_count(), 3);
    assert_eq!(weyl_data(&spec("psq(5)")).unwrap().sylow_count(), 15);
}

#[test]
fn generic_elements() {
    for s in ["sl(2|3)", "pq(2)", "spe(4)"] {
        let g = alg(s);
        let o = sylow_candidate(&spec(s)).unwrap();
        let x = find_generic(&g, &o, 3).unwrap();
        assert!(o.contains(&x) && is_homological(&g, &x).unwrap());
    }
}

#[test]
fn table_membership() {
    let g = alg("sl(1|2)");
    let o = sylow_candidate(&spec("sl(1|2)")).unwrap();
    assert_eq!(is_sylow_by_table(&spec("sl(1|2)"), &o, 0).unwrap(), SylowVerdict::Sylow);
    let b = span(&g, &["E11+E22", "E13"]);
    assert_eq!(
        is_sylow_by_table(&spec("sl(1|2)"), &b, 0).unwrap(),
        SylowVerdict::NotSylow(NotSylowReason::BerNontrivial)
    );
}

use super::*;
use crate::exactla::{frac, vec_add, zero_vec};
use crate::families::{construct, takiff_semidirect, FamilySpec, Simple};

fn alg(s: &str) -> SuperAlgebra {
    construct(&s.parse::<FamilySpec>().unwrap()).unwrap()
}

fn named(a: &SuperAlgebra, terms: &[(&str, i64)]) -> Vec<Rat> {
    let mut v = zero_vec(a.dim());
    for (name, c) in terms {
        let i = a.names().iter().position(|s| s == name).unwrap_or_else(|| panic!("no basis element {name}"));
        v[i] += rat(*c);
    }
    v
}

fn odd_abelian(k: usize) -> SuperAlgebra {
    let names = (0..k).map(|i| format!("v{i}")).collect();
    SuperAlgebra::from_upper(0, k, names, |_, _| zero_vec(k)).unwrap()
}

#[test]
fn homological_examples() {
    let g = alg("gl(1|1)");
    assert!(is_homological(&g, &zero_vec(4)).unwrap());
    assert!(is_homological(&g, &named(&g, &[("E12", 1), ("E21", 1)])).unwrap());
    assert!(is_homological(&g, &named(&g, &[("E11", 1)])).is_err());

    // osp(1|2): the matrix square X^2 of a nonzero odd X is nonzero and nilpotent
    let o = alg("osp(1|2)");
    let r = o.realization().unwrap();
    let mut rng = seeded_rng(3);
    for _ in 0..30 {
        let x = o.random_vec(&mut rng, Some(1), 20);
        if is_zero_vec(&x) {
            continue;
        }
        let m = r.matrix_of(&x);
        let sq = &m * &m;
        assert!(!sq.is_zero() && sq.pow(3).is_zero());
        assert!(!is_homological(&o, &x).unwrap());
    }
    for i in o.dim_even()..o.dim() {
        assert!(!is_homological(&o, &o.basis_vec(i)).unwrap());
    }
}

#[test]
fn cone_samples() {
    assert_eq!(homological_cone_sample(&alg("gl(1|1)"), 200, 1).fraction(), rat(1));
    assert_eq!(homological_cone_sample(&alg("osp(1|2)"), 200, 1).fraction(), rat(0));
    assert_eq!(homological_cone_sample(&odd_abelian(3), 50, 1).fraction(), rat(1));
    let s = homological_cone_sample(&alg("gl(1|1)"), 10, 9);
    assert_eq!(s, homological_cone_sample(&alg("gl(1|1)"), 10, 9));
}

#[test]
fn neat_witnesses() {
    let o = alg("osp(1|2)");
    for i in o.dim_even()..o.dim() {
        let k = neat_witness(&o, &o.basis_vec(i)).unwrap().expect("root vector is neat");
        assert_eq!(k.dims(), (3, 2));
    }
    let s = alg("sl(1|1)");
    let mut rng = seeded_rng(5);
    for _ in 0..20 {
        let x = s.random_vec(&mut rng, Some(1), 9);
        if !is_zero_vec(&x) {
            assert!(neat_witness(&s, &x).unwrap().is_none());
        }
    }
    let g = alg("sl(2|1)");
    let x = named(&g, &[("E13", 1), ("E32", 1)]);
    let k = neat_witness(&g, &x).unwrap().expect("witness");
    assert_eq!(k.dims(), (3, 2));
    assert!(k.contains(&x));
    assert!(is_semisimple_lie(&g, &k.even_space()));
    assert!(neat_witness(&g, &zero_vec(g.dim())).is_err());
}

#[test]
fn odd_generation() {
    assert!(is_oddly_generated(&alg("sl(1|1)")));
    assert!(!is_oddly_generated(&alg("gl(1|1)")));
    assert!(is_oddly_generated(&alg("q(3)")));
}

#[test]
fn cartan_subalgebras() {
    let g = alg("pq(2)");
    let x = named(&g, &[("B11", 1), ("B22", 2)]);
    let h = cartan_from_element(&g, &x).unwrap();
    assert_eq!(h.dims(), (1, 2));
    assert_eq!(cartan_from_element(&g, &zero_vec(g.dim())).unwrap(), g.whole());
    let rd = root_decomposition(&g, &h).unwrap();
    assert_eq!(rd.roots.len(), 2);
    for r in &rd.roots {
        assert_eq!(rd.root_dims(&g, r), Some((1, 1)));
        assert!(rd.irreducible[r]);
    }
    assert!(rd.roots_match_even);
    let (_, r1) = rd.rank_one.iter().next().unwrap();
    assert_eq!(r1.template.as_deref(), Some("psq(2)"));
    // [h1, h1] = h0
    assert_eq!(g.bracket_span(h.odd_basis(), h.odd_basis()), h.even_space());
}

#[test]
fn sl2_roots() {
    let g = alg("sl(2)");
    let h = Subalgebra::new(&g, Subspace::from_vectors(g.dim(), [named(&g, &[("E11-E22", 1)])])).unwrap();
    let rd = root_decomposition(&g, &h).unwrap();
    assert_eq!(rd.roots, vec![vec![rat(-2)], vec![rat(2)]]);
    assert_eq!(rd.zero_space.dim(), 1);
}

#[test]
fn takiff0_sl2_roots() {
    let g = alg("takiff0(sl2;d=[1])");
    let h_elt = named(&g, &[("E11-E22", 1)]);
    let h = g.centralizer(&Subspace::from_vectors(g.dim(), [h_elt]));
    let rd = root_decomposition(&g, &h).unwrap();
    assert_eq!(rd.roots.len(), 2);
    for r in &rd.roots {
        assert_eq!(rd.root_dims(&g, r), Some((1, 1)));
    }
}

#[test]
fn takiff_recognition() {
    assert!(is_takiff(&alg("takiff(sl2)")));
    assert!(is_takiff(&alg("takiff(sl2+sl3)")));
    assert!(!is_takiff(&alg("sl(1|1)")));
    assert!(is_takiff0(&alg("pq(2)")));
    assert!(is_takiff0(&alg("spe(2)")));
    assert!(is_takiff0(&alg("takiff0(sl2+sl3;d=[1,-1])")));
    let non = takiff_semidirect(&[Simple::Sl(2), Simple::Sl(3)], &[vec![rat(1), rat(0)]]).unwrap();
    assert!(!is_takiff0(&non));
    assert!(!is_takiff0(&alg("takiff(sl2)")));
}

#[test]
fn minimal_ideal_types() {
    let t = alg("takiff(sl2+sl3)");
    let mins = minimal_ideals(&t);
    let mut dims: Vec<(usize, usize)> = mins.iter().map(|m| m.dims()).collect();
    dims.sort();
    assert_eq!(dims, vec![(0, 3), (0, 8)]);
    assert!(mins.iter().all(|m| ideal_type(&t, m) == IdealType::OddAbelian));
    let p = alg("pq(2)");
    let mins = minimal_ideals(&p);
    assert_eq!(mins.len(), 1);
    assert_eq!(ideal_type(&p, &mins[0]), IdealType::Takiff);
    let o = alg("osp(1|2)");
    assert_eq!(minimal_ideals(&o), vec![o.whole()]);
    assert_eq!(ideal_type(&o, &o.whole()), IdealType::Simple);
    let s = odd_abelian(2);
    assert_eq!(minimal_ideals(&s).len(), 2);
}

#[test]
fn zero_certificates() {
    let c = is_zero_superalgebra(&alg("sl(1|1)")).unwrap();
    assert!(c.verdict);
    assert_eq!(c.quotient.dims(), (0, 2));
    assert_eq!(c.odd_abelian_part.as_ref().unwrap().dims(), (0, 2));

    let c = is_zero_superalgebra(&alg("osp(1|2)")).unwrap();
    assert!(!c.verdict);
    assert_eq!(c.failure_reason, Some(ZeroFailure::SimpleIdealPresent));

    let c = is_zero_superalgebra(&alg("gl(1|1)")).unwrap();
    assert_eq!(c.failure_reason, Some(ZeroFailure::NotOddlyGenerated));

    let c = is_zero_superalgebra(&alg("counterexample(2)")).unwrap();
    assert!(c.verdict);
    assert_eq!(c.takiff_part.as_ref().unwrap().dims(), (3, 3));
    assert_eq!(c.odd_abelian_part.as_ref().unwrap().dims(), (0, 1));
    assert_eq!(c.derivation_part.as_ref().unwrap().dims(), (0, 1));

    for s in ["pq(2)", "spe(2)", "takiff0(sl2+sl3;d=[1,-1])"] {
        assert!(is_zero_superalgebra(&alg(s)).unwrap().verdict, "{s}");
    }
    let text = c.to_json().to_string();
    assert!(text.contains("\"verdict\":true"));
}

#[test]
fn nilcone_tests() {
    let g = alg("pq(2)");
    let h = cartan_from_element(&g, &named(&g, &[("B11", 1), ("B22", 2)])).unwrap();
    let rd = root_decomposition(&g, &h).unwrap();
    assert!(nilcone_weight_member(&g, &rd, &zero_vec(g.dim())).unwrap());
    let mut odd_root_vecs = Vec::new();
    for s in rd.root_spaces.values() {
        let v = s.basis().iter().find(|v| g.is_odd_vec(v)).unwrap().clone();
        assert!(nilcone_weight_member(&g, &rd, &v).unwrap());
        odd_root_vecs.push(v);
    }
    let both = vec_add(&odd_root_vecs[0], &odd_root_vecs[1]);
    assert!(!nilcone_weight_member(&g, &rd, &both).unwrap());
    let half: Vec<Rat> = odd_root_vecs[0].iter().map(|x| x * frac(1, 2)).collect();
    assert!(nilcone_weight_member(&g, &rd, &half).unwrap());
}

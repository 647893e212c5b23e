//! The algebras named in the Sylow and normalizer tables, built from their
//! factors independently of the ambient superalgebra.

use crate::exactla::{kernel_basis, Mat, Rat, Subspace};
use crate::families::{construct, FamilySpec};
use crate::liesuper::{Subalgebra, SuperAlgebra};
use crate::{Error, Result};

fn family(s: FamilySpec) -> SuperAlgebra {
    construct(&s).expect("named factor")
}

fn product(factors: Vec<SuperAlgebra>) -> SuperAlgebra {
    factors
        .into_iter()
        .filter(|f| f.dim() > 0)
        .reduce(|a, b| SuperAlgebra::direct_sum(&a, &b))
        .unwrap_or_else(SuperAlgebra::zero)
}

fn power(a: SuperAlgebra, k: usize) -> Vec<SuperAlgebra> {
    vec![a; k]
}

/// Kernel of a linear functional on the realization matrices.
fn functional_kernel(a: &SuperAlgebra, f: impl Fn(&Mat, usize) -> Rat) -> SuperAlgebra {
    let r = a.realization().expect("matrix realization");
    let row: Vec<Rat> = r.matrices.iter().map(|m| f(m, r.p)).collect();
    let ker = kernel_basis(&Mat::from_rows(vec![row]));
    let k = Subalgebra::new(a, ker).expect("kernel of a character is a subalgebra");
    a.subalgebra_algebra(&k)
}

fn supertrace(m: &Mat, p: usize) -> Rat {
    (0..m.rows()).map(|i| if i < p { m.get(i, i).clone() } else { -m.get(i, i) }).sum()
}

fn odd_trace(m: &Mat, p: usize) -> Rat {
    (0..p).map(|i| m.get(i, p + i).clone()).sum()
}

fn s(a: &SuperAlgebra) -> SuperAlgebra {
    functional_kernel(a, supertrace)
}

fn s_odd(a: &SuperAlgebra) -> SuperAlgebra {
    functional_kernel(a, odd_trace)
}

/// Quotient by the element realized by the identity matrix.
fn p(a: &SuperAlgebra) -> SuperAlgebra {
    let r = a.realization().expect("matrix realization");
    let id = r.coords_of(&Mat::identity(r.size())).expect("identity lies in the algebra");
    let ideal = Subalgebra::new(a, Subspace::from_vectors(a.dim(), [id])).expect("central line");
    a.quotient(&ideal).expect("identity is central")
}

fn blocks(n: usize, two: FamilySpec, one: FamilySpec) -> Vec<SuperAlgebra> {
    let mut f = power(family(two), n / 2);
    if n % 2 == 1 {
        f.push(family(one));
    }
    f
}

fn kac_moody_sylow(d: usize) -> (String, SuperAlgebra) {
    (format!("sl(1|1)^{d}"), product(power(family(FamilySpec::Sl(1, 1)), d)))
}

fn block_label(prefix: &str, base: &str, n: usize) -> String {
    let k = n / 2;
    if n % 2 == 1 {
        format!("{prefix}({base}(2)^{k} x {base}(1))")
    } else {
        format!("{prefix}({base}(2)^{k})")
    }
}

fn no_row(spec: &FamilySpec, table: &str) -> Error {
    Error::InvalidParameters(format!("{spec}: no row in the {table} table"))
}

/// Isomorphism type of the Sylow subalgebra, with a label.
pub fn sylow_named(spec: &FamilySpec) -> Result<(String, SuperAlgebra)> {
    use FamilySpec::*;
    spec.validate()?;
    Ok(match spec {
        Gl(..) | Sl(..) | Osp(..) => kac_moody_sylow(spec.defect().expect("defect")),
        Psl(n) => (format!("p(sl(1|1)^{n})"), p(&product(power(family(Sl(1, 1)), *n)))),
        Pe(n) | Spe(n) => (block_label("", "spe", *n), product(blocks(*n, Spe(2), Spe(1)))),
        Psq(n) => (block_label("ps", "q", *n), p(&s_odd(&product(blocks(*n, Q(2), Q(1)))))),
        Pq(2) => ("pq(2)".into(), family(Pq(2))),
        _ => return Err(no_row(spec, "Sylow")),
    })
}

/// Isomorphism type of the normalizer of the Sylow subalgebra, with a label.
pub fn normalizer_named(spec: &FamilySpec) -> Result<(String, SuperAlgebra)> {
    use FamilySpec::*;
    spec.validate()?;
    Ok(match spec {
        Gl(m, n) | Sl(m, n) => {
            let d = *m.min(n);
            let e = m.max(n) - d;
            let rest = if m < n { Gl(0, e) } else { Gl(e, 0) };
            let mut f = power(family(Gl(1, 1)), d);
            if e > 0 {
                f.push(family(rest));
            }
            let base = format!("gl(1|1)^{d} x gl({})", if m < n { format!("0|{e}") } else { format!("{e}|0") });
            if matches!(spec, Sl(..)) {
                (format!("s({base})"), s(&product(f)))
            } else {
                (base, product(f))
            }
        }
        Psl(n) => (format!("ps(gl(1|1)^{n})"), p(&s(&product(power(family(Gl(1, 1)), *n))))),
        Osp(m, n2) => {
            let n = n2 / 2;
            let (d, rest, label) = if *m > *n2 {
                (n, Osp(m - n2, 0), format!("so({})", m - n2))
            } else if m % 2 == 0 {
                (m / 2, Osp(0, n2 - m), format!("sp({})", n2 - m))
            } else {
                let k = m / 2;
                (k, Osp(1, n2 - 2 * k), format!("osp(1|{})", n2 - 2 * k))
            };
            let mut f = power(family(Gl(1, 1)), d);
            let extra = if rest == Osp(1, 0) || rest == Osp(0, 0) { None } else { Some(family(rest)) };
            f.extend(extra);
            (format!("gl(1|1)^{d} x {label}"), product(f))
        }
        Psq(_) | Pq(2) => sylow_named(spec)?,
        Spe(n) => (block_label("s", "pe", *n), s(&product(blocks(*n, Pe(2), Pe(1))))),
        Pe(n) => (block_label("", "pe", *n), product(blocks(*n, Pe(2), Pe(1)))),
        _ => return Err(no_row(spec, "normalizer")),
    })
}

/// Order of the Weyl group of the Sylow torus and the number of
/// `G`-conjugacy classes of Sylow subalgebras it contains, from the tables.
pub fn weyl_expected(spec: &FamilySpec) -> Result<(usize, usize)> {
    use FamilySpec::*;
    let fact = |k: usize| (1..=k).product::<usize>();
    Ok(match spec {
        Gl(..) | Sl(..) | Psl(_) => (fact(spec.defect().expect("defect")), 1),
        Osp(m, n2) => {
            let d = spec.defect().expect("defect");
            if m % 2 == 0 && m <= n2 {
                ((1 << d.saturating_sub(1)) * fact(d), 1)
            } else {
                ((1 << d) * fact(d), 1)
            }
        }
        Pe(n) | Spe(n) => ((1 << (n / 2)) * fact(n / 2), 1),
        Psq(n) | Pq(n) => {
            let k = n / 2;
            (fact(*n), fact(*n) / ((1 << k) * fact(k)))
        }
        _ => return Err(no_row(spec, "Weyl group")),
    })
}


use super::{Realization, SuperAlgebra};
use crate::exactla::{format_rat, parse_rat, zero_vec, Mat, Rat, Subspace};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

type BracketEntry = (usize, usize, Vec<(usize, String)>);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraJson {
    dim_even: usize,
    dim_odd: usize,
    names: Vec<String>,
    brackets: Vec<BracketEntry>,
    realization: Option<RealizationJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RealizationJson {
    p: usize,
    q: usize,
    matrices: Vec<Vec<Vec<String>>>,
    central_ideal: Vec<Vec<String>>,
}

fn parse_field(s: &str, what: &str) -> Result<Rat> {
    parse_rat(s).ok_or_else(|| Error::Schema(format!("{what}: \"{s}\" is not a rational")))
}

/// Compact JSON; only brackets with `i <= j` and nonzero values are stored.
pub fn algebra_to_json(a: &SuperAlgebra) -> String {
    let n = a.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i..n {
            let s = a.structure(i, j);
            if !s.is_empty() {
                brackets.push((i, j, s.iter().map(|(k, x)| (*k, format_rat(x))).collect()));
            }
        }
    }
    let realization = a.realization().map(|r| RealizationJson {
        p: r.p,
        q: r.q,
        matrices: r
            .matrices
            .iter()
            .map(|m| (0..m.rows()).map(|i| m.row(i).iter().map(format_rat).collect()).collect())
            .collect(),
        central_ideal: r.central_ideal.basis().iter().map(|v| v.iter().map(format_rat).collect()).collect(),
    });
    let doc = AlgebraJson {
        dim_even: a.dim_even(),
        dim_odd: a.dim_odd(),
        names: a.names().to_vec(),
        brackets,
        realization,
    };
    serde_json::to_string(&doc).expect("serializable")
}

/// Parses and validates (antisymmetry by construction, Jacobi exhaustively).
pub fn algebra_from_json(text: &str) -> Result<SuperAlgebra> {
    let doc: AlgebraJson = serde_json::from_str(text)
        .map_err(|e| Error::Schema(format!("line {} column {}: {}", e.line(), e.column(), e)))?;
    let n = doc.dim_even + doc.dim_odd;
    if doc.names.len() != n {
        return Err(Error::Schema(format!("names: expected {n} entries, found {}", doc.names.len())));
    }
    let mut upper = vec![zero_vec(n); n * n];
    for (idx, (i, j, terms)) in doc.brackets.iter().enumerate() {
        if *i >= n || *j >= n || i > j {
            return Err(Error::Schema(format!("brackets[{idx}]: invalid index pair ({i},{j})")));
        }
        for (k, x) in terms {
            if *k >= n {
                return Err(Error::Schema(format!("brackets[{idx}]: basis index {k} out of range")));
            }
            upper[i * n + j][*k] = parse_field(x, &format!("brackets[{idx}]"))?;
        }
    }
    let alg = SuperAlgebra::from_upper(doc.dim_even, doc.dim_odd, doc.names, |i, j| upper[i * n + j].clone())
        .map_err(|e| Error::Schema(e.to_string()))?;
    // parity of each bracket must be the sum of parities
    for i in 0..n {
        for j in i..n {
            let par = (alg.parity(i) + alg.parity(j)) % 2;
            if alg.structure(i, j).iter().any(|(k, _)| alg.parity(*k) != par) {
                return Err(Error::Schema(format!("brackets: [{i},{j}] has the wrong parity")));
            }
        }
    }
    if let Some(&(i, j, k)) = alg.check_jacobi().first() {
        return Err(Error::Schema(format!("Jacobi identity fails on basis triple ({i},{j},{k})")));
    }
    let realization = match doc.realization {
        None => None,
        Some(r) => {
            let size = r.p + r.q;
            if r.matrices.len() != n {
                return Err(Error::Schema(format!("realization.matrices: expected {n} matrices")));
            }
            let mut matrices = Vec::with_capacity(n);
            for (idx, m) in r.matrices.iter().enumerate() {
                if m.len() != size || m.iter().any(|row| row.len() != size) {
                    return Err(Error::Schema(format!("realization.matrices[{idx}]: expected {size}x{size}")));
                }
                let mut flat = Vec::with_capacity(size * size);
                for x in m.iter().flatten() {
                    flat.push(parse_field(x, &format!("realization.matrices[{idx}]"))?);
                }
                matrices.push(Mat::from_flat(size, size, flat));
            }
            let mut central = Subspace::zero(size * size);
            for (idx, v) in r.central_ideal.iter().enumerate() {
                if v.len() != size * size {
                    return Err(Error::Schema(format!("realization.central_ideal[{idx}]: wrong length")));
                }
                let vv = v
                    .iter()
                    .map(|x| parse_field(x, &format!("realization.central_ideal[{idx}]")))
                    .collect::<Result<Vec<_>>>()?;
                central.insert(vv);
            }
            let check = SuperAlgebra::from_matrices(r.p, r.q, matrices.clone(), alg.names().to_vec(), central.clone())
                .map_err(|e| Error::Schema(format!("realization: {e}")))?;
            if check.table != alg.table {
                return Err(Error::Schema("realization does not reproduce the brackets".into()));
            }
            Some(Realization { p: r.p, q: r.q, matrices, central_ideal: central })
        }
    };
    Ok(alg.with_realization(realization))
}

#[cfg(test)]
mod tests {
    use super::super::tests::gl11;
    use super::*;

    #[test]
    fn round_trip() {
        let g = gl11();
        let text = algebra_to_json(&g);
        assert!(text.starts_with("{\"dim_even\":2,\"dim_odd\":2,\"names\":[\"E11\",\"E22\",\"E12\",\"E21\"],\"brackets\":["));
        let back = algebra_from_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(algebra_to_json(&back), text);
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(algebra_from_json("{"), Err(Error::Schema(_))));
        let bad = r#"{"dim_even":1,"dim_odd":0,"names":["a"],"brackets":[[0,0,[[0,"1"]]]],"realization":null}"#;
        assert!(matches!(algebra_from_json(bad), Err(Error::Schema(_))));
        let bad = r#"{"dim_even":1,"dim_odd":1,"names":["a","b"],"brackets":[[1,1,[[1,"x"]]]],"realization":null}"#;
        assert!(matches!(algebra_from_json(bad), Err(Error::Schema(_))));
    }
}

//! Constructors for the classical families and their Sylow subalgebras.
//!
//! Every family is built from an explicit matrix realization in gl(p|q);
//! structure constants are read off from supercommutators. Conventions:
//!
//! * `osp(m|2n)` preserves the even form with anti-diagonal ones on `C^m`
//!   and the anti-diagonal symplectic form (`+1` above, `-1` below the
//!   anti-diagonal midpoint) on `C^{2n}`.
//! * `pe(n)` is `[[A, B], [C, -A^T]]` with `B` symmetric and `C` skew; it
//!   preserves the odd form with Gram matrix `[[0, I], [I, 0]]`.
//! * `q(n)` is `[[A, B], [B, A]]`; `sq(n)` has `tr B = 0`; `psq(n)` and
//!   `pq(n)` are the quotients of `sq(n)` and `q(n)` by the identity.
//! * The defect of `osp(m|2n)` is taken to be `min(floor(m/2), n)`.

use crate::dsrep::FdModule;
use crate::exactla::{format_rat, kernel_basis, parse_rat, Mat, Rat, Subspace};
use crate::liesuper::{matrix_parity, Subalgebra, SuperAlgebra};
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

/// Simple Lie algebra used as a Takiff factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Simple {
    Sl(usize),
    So(usize),
    /// `sp(2n)`, stored by matrix size `2n`.
    Sp(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilySpec {
    Gl(usize, usize),
    Sl(usize, usize),
    Psl(usize),
    /// `osp(m|2n)`, stored as `(m, 2n)`.
    Osp(usize, usize),
    Q(usize),
    Sq(usize),
    Psq(usize),
    Pq(usize),
    Pe(usize),
    Spe(usize),
    Takiff(Vec<Simple>),
    Takiff0 { factors: Vec<Simple>, ders: Vec<Vec<Rat>> },
    Counterexample(usize),
    Lie(Simple),
}

impl fmt::Display for Simple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Simple::Sl(n) => write!(f, "sl{n}"),
            Simple::So(n) => write!(f, "so{n}"),
            Simple::Sp(n) => write!(f, "sp{n}"),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        let factors = |v: &[Simple]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("+");
        match self {
            Gl(m, n) => write!(f, "gl({m}|{n})"),
            Sl(m, n) => write!(f, "sl({m}|{n})"),
            Psl(n) => write!(f, "psl({n}|{n})"),
            Osp(m, n) => write!(f, "osp({m}|{n})"),
            Q(n) => write!(f, "q({n})"),
            Sq(n) => write!(f, "sq({n})"),
            Psq(n) => write!(f, "psq({n})"),
            Pq(n) => write!(f, "pq({n})"),
            Pe(n) => write!(f, "pe({n})"),
            Spe(n) => write!(f, "spe({n})"),
            Takiff(v) => write!(f, "takiff({})", factors(v)),
            Takiff0 { factors: v, ders } => {
                let d: Vec<String> = ders
                    .iter()
                    .map(|c| format!("[{}]", c.iter().map(format_rat).collect::<Vec<_>>().join(",")))
                    .collect();
                write!(f, "takiff0({};d={})", factors(v), d.join(","))
            }
            Counterexample(n) => write!(f, "counterexample({n})"),
            Lie(Simple::Sl(n)) => write!(f, "sl({n})"),
            Lie(Simple::So(n)) => write!(f, "so({n})"),
            Lie(Simple::Sp(n)) => write!(f, "sp({n})"),
        }
    }
}

fn parse_simple(s: &str) -> Result<Simple> {
    let bad = || Error::InvalidParameters(format!("unknown simple factor `{s}`"));
    let s = s.trim();
    let (kind, num) = if let Some(r) = s.strip_prefix("sl") {
        ("sl", r)
    } else if let Some(r) = s.strip_prefix("so") {
        ("so", r)
    } else if let Some(r) = s.strip_prefix("sp") {
        ("sp", r)
    } else {
        return Err(bad());
    };
    let n: usize = num.trim_matches(|c| c == '(' || c == ')').parse().map_err(|_| bad())?;
    let out = match kind {
        "sl" => Simple::Sl(n),
        "so" => Simple::So(n),
        _ => Simple::Sp(n),
    };
    out.validate()?;
    Ok(out)
}

fn parse_factors(s: &str) -> Result<Vec<Simple>> {
    let mut out = Vec::new();
    for part in s.split(['+', ',']) {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        match part.split_once('*') {
            Some((f, k)) => {
                let k: usize = k
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidParameters(format!("bad multiplicity in `{part}`")))?;
                let f = parse_simple(f)?;
                out.extend(std::iter::repeat(f).take(k));
            }
            None => out.push(parse_simple(part)?),
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidParameters("no Takiff factors".into()));
    }
    Ok(out)
}

fn parse_ders(s: &str) -> Result<Vec<Vec<Rat>>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest.find('[').ok_or_else(|| Error::InvalidParameters(format!("expected `[` in `{s}`")))?;
        let close = rest.find(']').ok_or_else(|| Error::InvalidParameters(format!("expected `]` in `{s}`")))?;
        let v = rest[open + 1..close]
            .split(',')
            .map(|x| parse_rat(x).ok_or_else(|| Error::InvalidParameters(format!("bad rational `{x}`"))))
            .collect::<Result<Vec<_>>>()?;
        out.push(v);
        rest = rest[close + 1..].trim_start_matches([',', ' ']);
    }
    Ok(out)
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameters(format!("cannot parse family `{s}`"));
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let name = &s[..open];
        let args = &s[open + 1..s.len() - 1];
        let nums = |a: &str| -> Result<Vec<usize>> {
            a.split('|').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect()
        };
        use FamilySpec::*;
        let spec = match name {
            "takiff" => Takiff(parse_factors(args)?),
            "takiff0" => {
                let (f, d) = args.split_once(';').ok_or_else(bad)?;
                let d = d.trim().strip_prefix("d=").ok_or_else(bad)?;
                Takiff0 { factors: parse_factors(f)?, ders: parse_ders(d)? }
            }
            _ => {
                let v = nums(args)?;
                match (name, v.as_slice()) {
                    ("gl", [m, n]) => Gl(*m, *n),
                    ("sl", [m, n]) => Sl(*m, *n),
                    ("sl", [n]) => Lie(Simple::Sl(*n)),
                    ("so", [n]) => Lie(Simple::So(*n)),
                    ("sp", [n]) => Lie(Simple::Sp(*n)),
                    ("psl", [m, n]) if m == n => Psl(*n),
                    ("psl", [n]) => Psl(*n),
                    ("osp", [m, n]) => Osp(*m, *n),
                    ("q", [n]) => Q(*n),
                    ("sq", [n]) => Sq(*n),
                    ("psq", [n]) => Psq(*n),
                    ("pq", [n]) => Pq(*n),
                    ("pe", [n]) => Pe(*n),
                    ("spe", [n]) => Spe(*n),
                    ("counterexample", [n]) => Counterexample(*n),
                    _ => return Err(bad()),
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl Simple {
    fn validate(&self) -> Result<()> {
        let ok = match self {
            Simple::Sl(n) => *n >= 2,
            Simple::So(n) => *n >= 3 && *n != 4,
            Simple::Sp(n) => *n >= 2 && n % 2 == 0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("{self} is not a simple Lie algebra")))
        }
    }

    /// Matrix size of the defining representation.
    pub fn size(&self) -> usize {
        match self {
            Simple::Sl(n) | Simple::So(n) | Simple::Sp(n) => *n,
        }
    }
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        use FamilySpec::*;
        let bad = |why: &str| Err(Error::InvalidParameters(format!("{self}: {why}")));
        match self {
            Gl(m, n) if m + n == 0 => bad("empty"),
            Sl(m, n) if m + n < 2 || m == n && *m < 1 => bad("too small"),
            Psl(n) if *n < 2 => bad("requires n >= 2"),
            Osp(m, n) if n % 2 == 1 => bad("second parameter must be even"),
            Osp(m, n) if m + n == 0 => bad("empty"),
            Q(n) | Pq(n) | Pe(n) | Spe(n) | Counterexample(n) if *n == 0 => bad("requires n >= 1"),
            Sq(n) | Psq(n) if *n < 2 => bad("requires n >= 2"),
            Spe(1) => Ok(()),
            Takiff(f) if f.is_empty() => bad("no factors"),
            Takiff0 { factors, ders } => {
                if factors.is_empty() {
                    return bad("no factors");
                }
                if ders.iter().any(|d| d.len() != factors.len()) {
                    return bad("derivation vectors must have one entry per factor");
                }
                Ok(())
            }
            Lie(s) => s.validate(),
            _ => Ok(()),
        }
    }

    /// Whether the Sylow table has a recipe for this family.
    pub fn has_sylow_recipe(&self) -> bool {
        use FamilySpec::*;
        matches!(self, Gl(..) | Sl(..) | Psl(_) | Osp(..) | Q(_) | Sq(_) | Psq(_) | Pq(_) | Pe(_) | Spe(_))
    }

    /// Defect used by the isotropic-root recipe.
    pub fn defect(&self) -> Option<usize> {
        use FamilySpec::*;
        match self {
            Gl(m, n) | Sl(m, n) => Some(*m.min(n)),
            Psl(n) => Some(*n),
            Osp(m, n2) => Some((m / 2).min(n2 / 2)),
            _ => None,
        }
    }
}

pub(crate) fn idx_name(prefix: &str, i: usize, j: usize, size: usize) -> String {
    if size > 9 {
        format!("{prefix}{},{}", i + 1, j + 1)
    } else {
        format!("{prefix}{}{}", i + 1, j + 1)
    }
}

fn unit(n: usize, i: usize, j: usize) -> Mat {
    Mat::unit(n, n, i, j)
}

/// Orders homogeneous matrices even first, keeping names aligned.
fn even_first(p: usize, items: Vec<(Mat, String)>) -> (Vec<Mat>, Vec<String>) {
    let (mut ev, mut od): (Vec<_>, Vec<_>) = items.into_iter().partition(|(m, _)| matrix_parity(m, p) == Some(0));
    ev.append(&mut od);
    ev.into_iter().unzip()
}

fn gl_items(p: usize, q: usize) -> Vec<(Mat, String)> {
    let n = p + q;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            out.push((unit(n, i, j), idx_name("E", i, j, n)));
        }
    }
    out
}

fn sl_items(p: usize, q: usize) -> Vec<(Mat, String)> {
    let n = p + q;
    let mut out: Vec<(Mat, String)> = gl_items(p, q).into_iter().filter(|(m, _)| m.trace().is_zero()).collect();
    for i in 0..n.saturating_sub(1) {
        let mut h = unit(n, i, i);
        let across = i + 1 == p;
        h.set(i + 1, i + 1, if across { Rat::one() } else { -Rat::one() });
        let sign = if across { "+" } else { "-" };
        out.push((h, format!("{}{sign}{}", idx_name("E", i, i, n), idx_name("E", i + 1, i + 1, n))));
    }
    out
}

/// Matrices `X` in gl(p|q) with `B(Xu, v) + (-1)^{|X||u|} B(u, Xv) = 0`.
fn form_stabilizer(p: usize, q: usize, gram: &Mat) -> Vec<(Mat, String)> {
    let n = p + q;
    let par = |i: usize| usize::from(i >= p);
    let mut out = Vec::new();
    for xp in 0..2usize {
        let vars: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| (par(i) + par(j)) % 2 == xp).collect();
        if vars.is_empty() {
            continue;
        }
        let mut rows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let sign = if xp * par(a) == 1 { -Rat::one() } else { Rat::one() };
                // (X^T B)_{ab} = sum_k X_{ka} B_{kb};  (B X)_{ab} = sum_k B_{ak} X_{kb}
                let row: Vec<Rat> = vars
                    .iter()
                    .map(|&(i, j)| {
                        let mut c = Rat::zero();
                        if j == a {
                            c += gram.get(i, b);
                        }
                        if j == b {
                            c += &sign * gram.get(a, i);
                        }
                        c
                    })
                    .collect();
                rows.push(row);
            }
        }
        let ker = kernel_basis(&Mat::from_rows(rows));
        for v in ker.basis() {
            let mut m = Mat::zeros(n, n);
            let mut terms = Vec::new();
            for (x, &(i, j)) in v.iter().zip(&vars) {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                    terms.push((x.clone(), idx_name("E", i, j, n)));
                }
            }
            out.push((m, linear_name(&terms)));
        }
    }
    out
}

fn linear_name(terms: &[(Rat, String)]) -> String {
    let mut s = String::new();
    for (k, (c, name)) in terms.iter().enumerate() {
        let neg = *c < Rat::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if k > 0 || neg {
            s.push(if neg { '-' } else { '+' });
        }
        if !abs.is_one() {
            s.push_str(&format_rat(&abs));
            s.push('*');
        }
        s.push_str(name);
    }
    s
}

/// Gram matrix of the orthosymplectic form on `C^{m|2n}`.
pub fn osp_gram(m: usize, n2: usize) -> Mat {
    let size = m + n2;
    let mut g = Mat::zeros(size, size);
    for i in 0..m {
        g.set(i, m - 1 - i, Rat::one());
    }
    for i in 0..n2 {
        g.set(m + i, m + n2 - 1 - i, if i < n2 / 2 { Rat::one() } else { -Rat::one() });
    }
    g
}

/// Gram matrix of the odd form preserved by `pe(n)`.
pub fn pe_gram(n: usize) -> Mat {
    let mut g = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        g.set(i, n + i, Rat::one());
        g.set(n + i, i, Rat::one());
    }
    g
}

fn q_items(n: usize, special: bool) -> Vec<(Mat, String)> {
    let size = 2 * n;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut a = Mat::zeros(size, size);
            a.set(i, j, Rat::one());
            a.set(n + i, n + j, Rat::one());
            out.push((a, idx_name("A", i, j, n)));
        }
    }
    let odd = |i: usize, j: usize, c: Rat, m: &mut Mat| {
        m.set(i, n + j, c.clone());
        m.set(n + i, j, c);
    };
    for i in 0..n {
        for j in 0..n {
            if special && i == j {
                continue;
            }
            let mut b = Mat::zeros(size, size);
            odd(i, j, Rat::one(), &mut b);
            out.push((b, idx_name("B", i, j, n)));
        }
    }
    if special {
        for i in 0..n - 1 {
            let mut b = Mat::zeros(size, size);
            odd(i, i, Rat::one(), &mut b);
            odd(i + 1, i + 1, -Rat::one(), &mut b);
            out.push((b, format!("{}-{}", idx_name("B", i, i, n), idx_name("B", i + 1, i + 1, n))));
        }
    }
    out
}

fn pe_items(n: usize, special: bool) -> Vec<(Mat, String)> {
    let size = 2 * n;
    let mut out = Vec::new();
    let even = |i: usize, j: usize, c: Rat, m: &mut Mat| {
        let cur = m.get(i, j) + &c;
        m.set(i, j, cur);
        let cur = m.get(n + j, n + i) - &c;
        m.set(n + j, n + i, cur);
    };
    for i in 0..n {
        for j in 0..n {
            if special && i == j {
                continue;
            }
            let mut a = Mat::zeros(size, size);
            even(i, j, Rat::one(), &mut a);
            out.push((a, idx_name("A", i, j, n)));
        }
    }
    if special {
        for i in 0..n.saturating_sub(1) {
            let mut a = Mat::zeros(size, size);
            even(i, i, Rat::one(), &mut a);
            even(i + 1, i + 1, -Rat::one(), &mut a);
            out.push((a, format!("{}-{}", idx_name("A", i, i, n), idx_name("A", i + 1, i + 1, n))));
        }
    }
    for i in 0..n {
        for j in i..n {
            let mut b = Mat::zeros(size, size);
            b.set(i, n + j, Rat::one());
            b.set(j, n + i, Rat::one());
            out.push((b, idx_name("B", i, j, n)));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut c = Mat::zeros(size, size);
            c.set(n + i, j, Rat::one());
            c.set(n + j, i, -Rat::one());
            out.push((c, idx_name("C", i, j, n)));
        }
    }
    out
}

fn simple_items(s: &Simple) -> Vec<(Mat, String)> {
    match s {
        Simple::Sl(n) => sl_items(*n, 0),
        Simple::So(n) => form_stabilizer(*n, 0, &osp_gram(*n, 0)),
        Simple::Sp(n) => {
            let mut g = Mat::zeros(*n, *n);
            for i in 0..*n {
                g.set(i, n - 1 - i, if i < n / 2 { Rat::one() } else { -Rat::one() });
            }
            form_stabilizer(*n, 0, &g)
        }
    }
}

/// `s_1 ⊗ C[ξ_1] ⊕ ...` realized in gl(K|K) by `x ⊗ 1 -> [[x,0],[0,x]]`,
/// `x ⊗ ξ -> [[0,x],[0,0]]`. Returns the algebra and, for each factor, the
/// index ranges of its even and odd basis elements.
fn takiff_with_layout(factors: &[Simple]) -> Result<(SuperAlgebra, Vec<(usize, usize, usize)>)> {
    let sizes: Vec<usize> = factors.iter().map(Simple::size).collect();
    let k: usize = sizes.iter().sum();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    let mut layout = Vec::new();
    let mut offset = 0;
    let tag = |name: &str, i: usize| if factors.len() > 1 { format!("{name}#{}", i + 1) } else { name.to_string() };
    let mut even_start = 0;
    for (fi, f) in factors.iter().enumerate() {
        let items = simple_items(f);
        layout.push((even_start, items.len(), fi));
        even_start += items.len();
        for (m, name) in items {
            let mut e = Mat::zeros(2 * k, 2 * k);
            let mut o = Mat::zeros(2 * k, 2 * k);
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let x = m.get(r, c);
                    if !x.is_zero() {
                        e.set(offset + r, offset + c, x.clone());
                        e.set(k + offset + r, k + offset + c, x.clone());
                        o.set(offset + r, k + offset + c, x.clone());
                    }
                }
            }
            even.push((e, tag(&name, fi)));
            odd.push((o, tag(&format!("{name}.xi"), fi)));
        }
        offset += sizes[fi];
    }
    let (mats, names): (Vec<Mat>, Vec<String>) = even.into_iter().chain(odd).unzip();
    let alg = SuperAlgebra::from_matrices(k, k, mats, names, Subspace::zero(4 * k * k))?;
    // (start of factor's even block, its length, factor index); odd block is shifted by dim_even
    Ok((alg, layout))
}

/// Odd derivation `sum c_i ∂_{ξ_i}` of a Takiff algebra as a matrix.
fn takiff_derivation(alg: &SuperAlgebra, layout: &[(usize, usize, usize)], c: &[Rat]) -> Mat {
    let n = alg.dim();
    let e = alg.dim_even();
    let mut d = Mat::zeros(n, n);
    for &(start, len, fi) in layout {
        for t in 0..len {
            d.set(start + t, e + start + t, c[fi].clone());
        }
    }
    d
}

/// `takiff(factors) ⋊ span(ders)` without the surjectivity requirement.
pub fn takiff_semidirect(factors: &[Simple], ders: &[Vec<Rat>]) -> Result<SuperAlgebra> {
    let (t, layout) = takiff_with_layout(factors)?;
    let span = Subspace::from_vectors(factors.len(), ders.iter().cloned());
    let mats: Vec<Mat> = span.basis().iter().map(|c| takiff_derivation(&t, &layout, c)).collect();
    let names: Vec<String> = span
        .basis()
        .iter()
        .map(|c| {
            let terms: Vec<(Rat, String)> = c
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (x.clone(), format!("d{}", i + 1)))
                .collect();
            linear_name(&terms)
        })
        .collect();
    t.semidirect(&mats, &names)
}

fn identity_quotient(alg: SuperAlgebra) -> Result<SuperAlgebra> {
    let r = alg.realization().expect("matrix family");
    let id = Mat::identity(r.size());
    let c = r.coords_of(&id).ok_or_else(|| Error::Precondition("identity not in algebra".into()))?;
    let ideal = Subalgebra::new(&alg, Subspace::from_vectors(alg.dim(), [c]))?;
    alg.quotient(&ideal)
}

fn from_items(p: usize, q: usize, items: Vec<(Mat, String)>) -> Result<SuperAlgebra> {
    let (mats, names) = even_first(p, items);
    let n = p + q;
    SuperAlgebra::from_matrices(p, q, mats, names, Subspace::zero(n * n))
}

fn build(spec: &FamilySpec) -> Result<SuperAlgebra> {
    use FamilySpec::*;
    spec.validate()?;
    let alg = match spec {
        Gl(m, n) => from_items(*m, *n, gl_items(*m, *n))?,
        Sl(m, n) => from_items(*m, *n, sl_items(*m, *n))?,
        Psl(n) => identity_quotient(from_items(*n, *n, sl_items(*n, *n))?)?,
        Osp(m, n2) => from_items(*m, *n2, form_stabilizer(*m, *n2, &osp_gram(*m, *n2)))?,
        Q(n) => from_items(*n, *n, q_items(*n, false))?,
        Sq(n) => from_items(*n, *n, q_items(*n, true))?,
        Psq(n) => identity_quotient(from_items(*n, *n, q_items(*n, true))?)?,
        Pq(n) => identity_quotient(from_items(*n, *n, q_items(*n, false))?)?,
        Pe(n) => from_items(*n, *n, pe_items(*n, false))?,
        Spe(n) => from_items(*n, *n, pe_items(*n, true))?,
        Takiff(f) => takiff_with_layout(f)?.0,
        Takiff0 { factors, ders } => {
            for i in 0..factors.len() {
                if ders.iter().all(|d| d[i].is_zero()) {
                    return Err(Error::InvalidParameters(format!(
                        "{spec}: the derivation space does not project onto the {}-th odd derivation",
                        i + 1
                    )));
                }
            }
            takiff_semidirect(factors, ders)?
        }
        Counterexample(n) => {
            let size = 2 * n;
            let mut items = Vec::new();
            for i in 0..*n {
                for j in 0..*n {
                    let mut a = Mat::zeros(size, size);
                    a.set(i, j, Rat::one());
                    a.set(n + i, n + j, Rat::one());
                    items.push((a, idx_name("A", i, j, *n)));
                }
            }
            for i in 0..*n {
                for j in 0..*n {
                    items.push((unit(size, i, n + j), idx_name("B", i, j, *n)));
                }
            }
            let mut l = Mat::zeros(size, size);
            for i in 0..*n {
                l.set(n + i, i, Rat::one());
            }
            items.push((l, "L".to_string()));
            from_items(*n, *n, items)?
        }
        Lie(s) => from_items(s.size(), 0, simple_items(s))?,
    };
    if let Some(&(i, j, k)) = alg.check_jacobi().first() {
        return Err(Error::Precondition(format!("{spec}: Jacobi identity fails at ({i},{j},{k})")));
    }
    Ok(alg)
}

static CACHE: OnceLock<Mutex<HashMap<FamilySpec, SuperAlgebra>>> = OnceLock::new();

/// Builds the algebra of a family; results are memoized per spec.
pub fn construct(spec: &FamilySpec) -> Result<SuperAlgebra> {
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(a) = cache.lock().expect("cache lock").get(spec) {
        return Ok(a.clone());
    }
    let a = build(spec)?;
    cache.lock().expect("cache lock").insert(spec.clone(), a.clone());
    Ok(a)
}

/// Closed-form dimensions of the families that have one.
pub fn expected_dims(spec: &FamilySpec) -> Option<(usize, usize)> {
    use FamilySpec::*;
    Some(match *spec {
        Gl(m, n) => (m * m + n * n, 2 * m * n),
        Sl(m, n) => (m * m + n * n - 1, 2 * m * n),
        Psl(n) => (2 * n * n - 2, 2 * n * n),
        Osp(m, n2) => {
            let n = n2 / 2;
            (m * (m.max(1) - 1) / 2 + n * (2 * n + 1), m * n2)
        }
        Q(n) | Pe(n) => (n * n, n * n),
        Sq(n) => (n * n, n * n - 1),
        Psq(n) => (n * n - 1, n * n - 1),
        Pq(n) => (n * n - 1, n * n),
        Spe(n) => (n * n - 1, n * n),
        Counterexample(n) => (n * n, n * n + 1),
        _ => return None,
    })
}

/// Defining representation of a family with a faithful realization.
pub fn standard_module(a: &SuperAlgebra) -> Result<FdModule> {
    let r = a
        .realization()
        .ok_or_else(|| Error::Precondition("algebra has no matrix realization".into()))?;
    if !r.is_faithful() {
        return Err(Error::Precondition("realization is only defined modulo a central ideal".into()));
    }
    FdModule::new(a, r.p, r.q, r.matrices.clone())
}

/// Matrices spanning the block-diagonal Sylow model of the q- and pe-families:
/// `q(2)^k (x q(1))` resp. `spe(2)^k (x spe(1))` embedded in gl(n|n).
fn block_model(n: usize, periplectic: bool) -> Vec<Mat> {
    let mut blocks: Vec<Vec<usize>> = (0..n / 2).map(|b| vec![2 * b, 2 * b + 1]).collect();
    if n % 2 == 1 {
        blocks.push(vec![n - 1]);
    }
    let size = 2 * n;
    let mut out = Vec::new();
    for blk in &blocks {
        if !periplectic {
            for &i in blk {
                for &j in blk {
                    let mut a = Mat::zeros(size, size);
                    a.set(i, j, Rat::one());
                    a.set(n + i, n + j, Rat::one());
                    out.push(a);
                    let mut b = Mat::zeros(size, size);
                    b.set(i, n + j, Rat::one());
                    b.set(n + i, j, Rat::one());
                    out.push(b);
                }
            }
            continue;
        }
        // spe(2) or spe(1) on the block: traceless A, symmetric B, skew C
        let even = |i: usize, j: usize, c: Rat, m: &mut Mat| {
            let cur = m.get(i, j) + &c;
            m.set(i, j, cur);
            let cur = m.get(n + j, n + i) - &c;
            m.set(n + j, n + i, cur);
        };
        for &i in blk {
            for &j in blk {
                if i != j {
                    let mut a = Mat::zeros(size, size);
                    even(i, j, Rat::one(), &mut a);
                    out.push(a);
                }
                if i <= j {
                    let mut b = Mat::zeros(size, size);
                    b.set(i, n + j, Rat::one());
                    b.set(j, n + i, Rat::one());
                    out.push(b);
                }
                if i < j {
                    let mut c = Mat::zeros(size, size);
                    c.set(n + i, j, Rat::one());
                    c.set(n + j, i, -Rat::one());
                    out.push(c);
                }
            }
        }
        if blk.len() == 2 {
            let mut h = Mat::zeros(size, size);
            even(blk[0], blk[0], Rat::one(), &mut h);
            even(blk[1], blk[1], -Rat::one(), &mut h);
            out.push(h);
        }
    }
    out
}

/// Isotropic root pairs `(even index, odd index)` of the defining matrix for
/// the Kac-Moody rows. `alternate` pairs coordinate `i` with odd coordinate `i`
/// instead of the anti-diagonal matching.
pub fn isotropic_pairs(spec: &FamilySpec, alternate: bool) -> Option<Vec<(usize, usize)>> {
    use FamilySpec::*;
    let d = spec.defect()?;
    let m = match spec {
        Gl(m, _) | Sl(m, _) | Osp(m, _) => *m,
        Psl(n) => *n,
        _ => return None,
    };
    Some((0..d).map(|i| (i, m + if alternate { i } else { d - 1 - i })).collect())
}

/// Sylow subalgebra from the table recipe, in coordinates of `construct(spec)`.
pub fn sylow_candidate(spec: &FamilySpec) -> Result<Subalgebra> {
    sylow_candidate_with(spec, false)
}

pub fn sylow_candidate_with(spec: &FamilySpec, alternate: bool) -> Result<Subalgebra> {
    use FamilySpec::*;
    if !spec.has_sylow_recipe() {
        return Err(Error::InvalidParameters(format!("{spec}: no tabulated Sylow recipe")));
    }
    let g = construct(spec)?;
    let r = g.realization().expect("matrix family");
    let size = r.size();
    match spec {
        Gl(..) | Sl(..) | Psl(_) | Osp(..) => {
            let pairs = isotropic_pairs(spec, alternate).expect("Kac-Moody row");
            let mut gens = Vec::new();
            for (a, c) in pairs {
                let (up, down) = match spec {
                    Osp(m, n2) => {
                        let a_star = m - 1 - a;
                        let c_star = m + (n2 - 1 - (c - m));
                        (
                            vec![unit(size, a, c), unit(size, c_star, a_star)],
                            vec![unit(size, c, a), unit(size, a_star, c_star)],
                        )
                    }
                    _ => (vec![unit(size, a, c)], vec![unit(size, c, a)]),
                };
                for span in [up, down] {
                    let pre = r.preimage(&span);
                    if pre.dim() != 1 {
                        return Err(Error::Precondition(format!("{spec}: root space has dimension {}", pre.dim())));
                    }
                    gens.push(pre.basis()[0].clone());
                }
            }
            Ok(g.generated_subalgebra(&gens))
        }
        Q(n) | Sq(n) | Psq(n) | Pq(n) => {
            let pre = r.preimage(&block_model(*n, false));
            Subalgebra::new(&g, pre)
        }
        Pe(n) | Spe(n) => {
            let pre = r.preimage(&block_model(*n, true));
            Subalgebra::new(&g, pre)
        }
        _ => unreachable!(),
    }
}

/// `counterexample(n)` as a subalgebra of `gl(n|n)`.
pub fn counterexample_subalgebra(n: usize) -> Result<Subalgebra> {
    let ce = construct(&FamilySpec::Counterexample(n))?;
    let g = construct(&FamilySpec::Gl(n, n))?;
    let pre = g.realization().expect("matrix family").preimage(&ce.realization().expect("matrix family").matrices);
    Subalgebra::new(&g, pre)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    fn spec(s: &str) -> FamilySpec {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        for s in ["gl(2|3)", "psq(4)", "osp(3|2)", "counterexample(2)", "takiff0(sl2+sl3;d=[1,-1])", "sl(3)"] {
            assert_eq!(spec(s).to_string(), s);
        }
        assert_eq!(spec("takiff0(sl2*2;d=[1,-1])").to_string(), "takiff0(sl2+sl2;d=[1,-1])");
        assert!("osp(3|3)".parse::<FamilySpec>().is_err());
        assert!("foo(2)".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn closed_form_dimensions() {
        for s in [
            "gl(1|1)", "gl(2|1)", "sl(1|2)", "sl(2|2)", "psl(2|2)", "osp(1|2)", "osp(3|2)", "osp(2|4)", "q(2)", "q(3)",
            "sq(2)", "sq(3)", "psq(2)", "psq(3)", "pq(2)", "pe(2)", "pe(3)", "spe(2)", "spe(3)", "counterexample(2)",
        ] {
            let sp = spec(s);
            let a = construct(&sp).unwrap();
            assert_eq!(Some(a.dims()), expected_dims(&sp), "{s}");
        }
        assert_eq!(construct(&spec("sl(2)")).unwrap().dims(), (3, 0));
        assert_eq!(construct(&spec("so(5)")).unwrap().dims(), (10, 0));
        assert_eq!(construct(&spec("sp(4)")).unwrap().dims(), (10, 0));
        assert_eq!(construct(&spec("takiff0(sl2;d=[1])")).unwrap().dims(), (3, 4));
        assert!(construct(&spec("takiff0(sl2+sl3;d=[1,0])")).is_err());
        assert_eq!(takiff_semidirect(&[Simple::Sl(2), Simple::Sl(3)], &[vec![rat(1), rat(0)]]).unwrap().dims(), (11, 12));
    }

    #[test]
    fn forms_are_preserved() {
        for (s, gram) in [("osp(3|2)", osp_gram(3, 2)), ("osp(2|4)", osp_gram(2, 4)), ("pe(2)", pe_gram(2)), ("pe(3)", pe_gram(3))] {
            let a = construct(&spec(s)).unwrap();
            let r = a.realization().unwrap();
            for (i, x) in r.matrices.iter().enumerate() {
                // B(Xu,v) + (-1)^{|X||u|} B(u,Xv) = 0 entrywise
                let xtb = &x.transpose() * &gram;
                let bx = &gram * x;
                for u in 0..gram.rows() {
                    for v in 0..gram.rows() {
                        let odd_u = u >= r.p;
                        let sign = if a.parity(i) == 1 && odd_u { -Rat::one() } else { Rat::one() };
                        assert!((xtb.get(u, v) + sign * bx.get(u, v)).is_zero(), "{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn sylow_recipe_dimensions() {
        for (s, dims) in [
            ("sl(1|2)", (1, 2)),
            ("gl(2|2)", (2, 4)),
            ("psq(4)", (7, 7)),
            ("spe(5)", (6, 9)),
            ("pe(3)", (3, 5)),
            ("osp(3|2)", (1, 2)),
            ("psl(2|2)", (1, 4)),
        ] {
            let o = sylow_candidate(&spec(s)).unwrap();
            assert_eq!(o.dims(), dims, "{s}");
            let g = construct(&spec(s)).unwrap();
            let oa = g.subalgebra_algebra(&o);
            assert_eq!(oa.odd_generated_part(), oa.whole(), "{s}");
        }
    }

    #[test]
    fn standard_modules() {
        assert_eq!(standard_module(&construct(&spec("gl(1|1)")).unwrap()).unwrap().dims(), (1, 1));
        assert_eq!(standard_module(&construct(&spec("pe(2)")).unwrap()).unwrap().dims(), (2, 2));
        assert!(standard_module(&construct(&spec("psq(3)")).unwrap()).is_err());
    }
}

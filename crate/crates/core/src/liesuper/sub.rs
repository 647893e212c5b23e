use super::{matrix_parity, supercommutator, Realization, SuperAlgebra};
use crate::exactla::{format_rat, is_zero_vec, kernel_basis, unit_vec, vec_sub, zero_vec, Mat, Rat, Subspace};
use crate::{Error, Result};
use num_traits::{One, Zero};

/// Graded subalgebra stored in parent coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subalgebra {
    space: Subspace,
    dim_even: usize,
}

impl Subalgebra {
    /// Wraps a subspace already known to be a graded subalgebra of `a`.
    pub(crate) fn trusted(a: &SuperAlgebra, space: Subspace) -> Self {
        debug_assert!(space.basis().iter().all(|v| a.vec_parity(v).is_some()));
        let dim_even = space.basis().iter().filter(|v| a.is_even_vec(v)).count();
        Subalgebra { space, dim_even }
    }

    /// Checks gradedness and closure.
    pub fn new(a: &SuperAlgebra, space: Subspace) -> Result<Self> {
        if space.ambient() != a.dim() {
            return Err(Error::DimensionMismatch("subspace ambient differs from algebra".into()));
        }
        if space.basis().iter().any(|v| a.vec_parity(v).is_none()) {
            return Err(Error::NotHomogeneous);
        }
        let b = space.basis();
        for i in 0..b.len() {
            for j in i..b.len() {
                if !space.contains(&a.bracket(&b[i], &b[j])) {
                    return Err(Error::NotClosed);
                }
            }
        }
        Ok(Subalgebra::trusted(a, space))
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        self.space.basis()
    }

    pub fn even_basis(&self) -> &[Vec<Rat>] {
        &self.space.basis()[..self.dim_even]
    }

    pub fn odd_basis(&self) -> &[Vec<Rat>] {
        &self.space.basis()[self.dim_even..]
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_even, self.dim() - self.dim_even)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.space.contains(v)
    }

    pub fn is_subalgebra_of(&self, other: &Subalgebra) -> bool {
        self.space.is_subspace_of(&other.space)
    }

    pub fn even_space(&self) -> Subspace {
        Subspace::from_vectors(self.space.ambient(), self.even_basis().iter().cloned())
    }

    pub fn odd_space(&self) -> Subspace {
        Subspace::from_vectors(self.space.ambient(), self.odd_basis().iter().cloned())
    }
}

fn combo_name(names: &[String], v: &[Rat]) -> String {
    let terms: Vec<(usize, &Rat)> = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
    if terms.len() == 1 && terms[0].1.is_one() {
        return names[terms[0].0].clone();
    }
    let mut s = String::new();
    for (k, (i, c)) in terms.iter().enumerate() {
        let neg = **c < Rat::zero();
        let abs = if neg { -(*c).clone() } else { (*c).clone() };
        if k > 0 || neg {
            s.push(if neg { '-' } else { '+' });
        }
        if !abs.is_one() {
            s.push_str(&format_rat(&abs));
            s.push('*');
        }
        s.push_str(&names[*i]);
    }
    s
}

impl SuperAlgebra {
    pub fn whole(&self) -> Subalgebra {
        Subalgebra { space: Subspace::full(self.dim()), dim_even: self.dim_even() }
    }

    pub fn zero_subalgebra(&self) -> Subalgebra {
        Subalgebra { space: Subspace::zero(self.dim()), dim_even: 0 }
    }

    /// Span of the homogeneous components of the given vectors.
    pub fn graded_span<'a, I>(&self, vecs: I) -> Subspace
    where
        I: IntoIterator<Item = &'a Vec<Rat>>,
    {
        let mut s = Subspace::zero(self.dim());
        for v in vecs {
            s.insert(self.even_part(v));
            s.insert(self.odd_part(v));
        }
        s
    }

    /// Span of `[x, y]` for `x` in `a`, `y` in `b` (basis-wise).
    pub fn bracket_span(&self, a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Subspace {
        let mut s = Subspace::zero(self.dim());
        for x in a {
            for y in b {
                s.insert(self.bracket(x, y));
            }
        }
        s
    }

    /// Smallest graded subalgebra containing the homogeneous components of `gens`.
    pub fn generated_subalgebra(&self, gens: &[Vec<Rat>]) -> Subalgebra {
        let mut space = Subspace::zero(self.dim());
        let mut basis: Vec<Vec<Rat>> = Vec::new();
        let mut queue: Vec<Vec<Rat>> = Vec::new();
        for g in gens {
            queue.push(self.even_part(g));
            queue.push(self.odd_part(g));
        }
        while let Some(v) = queue.pop() {
            if !space.insert(v.clone()) {
                continue;
            }
            for w in basis.iter().chain(std::iter::once(&v)) {
                let b = self.bracket(&v, w);
                if !space.contains(&b) {
                    queue.push(b);
                }
            }
            basis.push(v);
        }
        Subalgebra::trusted(self, space)
    }

    /// `{x : [x, v] = 0 for all v in s}`, graded part by part.
    pub fn centralizer(&self, s: &Subspace) -> Subalgebra {
        let n = self.dim();
        let e = self.dim_even();
        let mut even_maps = Vec::new();
        let mut odd_maps = Vec::new();
        for v in s.basis() {
            let ad0 = self.adjoint_matrix(&self.even_part(v));
            let ad1 = self.adjoint_matrix(&self.odd_part(v));
            even_maps.push(&ad0 + &ad1);
            odd_maps.push(&ad1 - &ad0);
        }
        let mut out = kernel_on_columns(n, 0..e, &even_maps);
        for v in kernel_on_columns(n, e..n, &odd_maps).basis() {
            out.insert(v.clone());
        }
        Subalgebra::trusted(self, out)
    }

    pub fn center(&self) -> Subalgebra {
        self.centralizer(&Subspace::full(self.dim()))
    }

    /// `{x : [x, k] ⊆ k}`.
    pub fn normalizer(&self, k: &Subalgebra) -> Subalgebra {
        let n = self.dim();
        let comp = k.space().complement_coords();
        let mut maps = Vec::new();
        for v in k.basis() {
            let ad = self.adjoint_matrix(v);
            let mut m = Mat::zeros(comp.len(), n);
            for j in 0..n {
                let q = k.space().quotient_coords(&ad.col(j));
                for (r, x) in q.into_iter().enumerate() {
                    m.set(r, j, x);
                }
            }
            maps.push(m);
        }
        let space = kernel_on_columns(n, 0..n, &maps);
        Subalgebra::trusted(self, space)
    }

    pub fn derived_subalgebra(&self) -> Subalgebra {
        let e: Vec<Vec<Rat>> = (0..self.dim()).map(|i| self.basis_vec(i)).collect();
        Subalgebra::trusted(self, self.bracket_span(&e, &e))
    }

    /// `[g1, g1] + g1`.
    pub fn odd_generated_part(&self) -> Subalgebra {
        let odd: Vec<Vec<Rat>> = (self.dim_even()..self.dim()).map(|i| self.basis_vec(i)).collect();
        let mut s = self.bracket_span(&odd, &odd);
        for v in odd {
            s.insert(v);
        }
        Subalgebra::trusted(self, s)
    }

    /// Derived subalgebra of a subalgebra, in parent coordinates.
    pub fn derived_of(&self, k: &Subalgebra) -> Subalgebra {
        Subalgebra::trusted(self, self.bracket_span(k.basis(), k.basis()))
    }

    pub fn is_ideal(&self, k: &Subalgebra) -> bool {
        (0..self.dim()).all(|i| {
            let b = self.basis_vec(i);
            k.basis().iter().all(|v| k.contains(&self.bracket(&b, v)))
        })
    }

    pub fn is_central(&self, k: &Subalgebra) -> bool {
        k.is_subalgebra_of(&self.center())
    }

    /// Matrix of the projection onto `self / ideal` in quotient coordinates.
    pub fn quotient_map(&self, ideal: &Subalgebra) -> Mat {
        let comp = ideal.space().complement_coords();
        let n = self.dim();
        let mut m = Mat::zeros(comp.len(), n);
        for j in 0..n {
            for (r, x) in ideal.space().quotient_coords(&self.basis_vec(j)).into_iter().enumerate() {
                m.set(r, j, x);
            }
        }
        m
    }

    /// Quotient by an ideal; the basis is the coordinate complement of the
    /// ideal's echelon basis. A central quotient keeps the realization with
    /// the enlarged central ideal.
    pub fn quotient(&self, ideal: &Subalgebra) -> Result<SuperAlgebra> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let comp = ideal.space().complement_coords();
        let de = comp.iter().filter(|&&c| c < self.dim_even()).count();
        let names = comp.iter().map(|&c| self.names()[c].clone()).collect();
        let q = SuperAlgebra::from_upper(de, comp.len() - de, names, |s, t| {
            let b = self.bracket(&self.basis_vec(comp[s]), &self.basis_vec(comp[t]));
            ideal.space().quotient_coords(&b)
        })?;
        let realization = match self.realization() {
            Some(r) if self.is_central(ideal) => {
                let mut central = r.central_ideal.clone();
                for v in ideal.basis() {
                    central.insert(r.matrix_of(v).into_flat());
                }
                Some(Realization {
                    p: r.p,
                    q: r.q,
                    matrices: comp.iter().map(|&c| r.matrices[c].clone()).collect(),
                    central_ideal: central,
                })
            }
            _ => None,
        };
        Ok(q.with_realization(realization))
    }

    /// The subalgebra as an algebra in its own right, with basis the echelon
    /// basis of `k`.
    pub fn subalgebra_algebra(&self, k: &Subalgebra) -> SuperAlgebra {
        let b = k.basis();
        let (de, dd) = k.dims();
        let names = b.iter().map(|v| combo_name(self.names(), v)).collect();
        let alg = SuperAlgebra::from_upper(de, dd, names, |i, j| {
            k.space().coords(&self.bracket(&b[i], &b[j])).expect("subalgebra is closed")
        })
        .expect("subalgebra structure is well formed");
        let realization = self.realization().map(|r| Realization {
            p: r.p,
            q: r.q,
            matrices: b.iter().map(|v| r.matrix_of(v)).collect(),
            central_ideal: r.central_ideal.clone(),
        });
        alg.with_realization(realization)
    }

    /// Direct sum with basis order `a_even, b_even, a_odd, b_odd`.
    pub fn direct_sum(a: &SuperAlgebra, b: &SuperAlgebra) -> SuperAlgebra {
        let (ea, oa) = a.dims();
        let (eb, ob) = b.dims();
        let ia = |i: usize| if i < ea { i } else { ea + eb + (i - ea) };
        let ib = |i: usize| if i < eb { ea + i } else { ea + eb + oa + (i - eb) };
        let n = a.dim() + b.dim();
        let mut src: Vec<(u8, usize)> = vec![(0, 0); n];
        for i in 0..a.dim() {
            src[ia(i)] = (0, i);
        }
        for i in 0..b.dim() {
            src[ib(i)] = (1, i);
        }
        let names = src
            .iter()
            .map(|&(w, i)| if w == 0 { a.names()[i].clone() } else { b.names()[i].clone() })
            .collect();
        let alg = SuperAlgebra::from_upper(ea + eb, oa + ob, names, |s, t| {
            let mut out = zero_vec(n);
            match (src[s], src[t]) {
                ((0, i), (0, j)) => {
                    for (k, x) in a.structure(i, j) {
                        out[ia(*k)] = x.clone();
                    }
                }
                ((1, i), (1, j)) => {
                    for (k, x) in b.structure(i, j) {
                        out[ib(*k)] = x.clone();
                    }
                }
                _ => {}
            }
            out
        })
        .expect("direct sum is well formed");
        let realization = match (a.realization(), b.realization()) {
            (Some(ra), Some(rb)) => {
                let (pa, qa, pb, qb) = (ra.p, ra.q, rb.p, rb.q);
                let na = pa + qa;
                let nb = pb + qb;
                let size = na + nb;
                let ma = |i: usize| if i < pa { i } else { pa + pb + (i - pa) };
                let mb = |i: usize| if i < pb { pa + i } else { pa + pb + qa + (i - pb) };
                let embed = |m: &Mat, f: &dyn Fn(usize) -> usize| {
                    let mut out = Mat::zeros(size, size);
                    for r in 0..m.rows() {
                        for c in 0..m.cols() {
                            if !m.get(r, c).is_zero() {
                                out.set(f(r), f(c), m.get(r, c).clone());
                            }
                        }
                    }
                    out
                };
                let mut matrices = vec![Mat::zeros(size, size); n];
                for (i, m) in ra.matrices.iter().enumerate() {
                    matrices[ia(i)] = embed(m, &ma);
                }
                for (i, m) in rb.matrices.iter().enumerate() {
                    matrices[ib(i)] = embed(m, &mb);
                }
                let mut central = Subspace::zero(size * size);
                for z in ra.central_ideal.basis() {
                    central.insert(embed(&Mat::from_flat(na, na, z.clone()), &ma).into_flat());
                }
                for z in rb.central_ideal.basis() {
                    central.insert(embed(&Mat::from_flat(nb, nb, z.clone()), &mb).into_flat());
                }
                Some(Realization { p: pa + pb, q: qa + qb, matrices, central_ideal: central })
            }
            _ => None,
        };
        alg.with_realization(realization)
    }

    /// `k`-fold direct sum, names suffixed by the summand index.
    pub fn direct_power(a: &SuperAlgebra, k: usize) -> SuperAlgebra {
        let tag = |i: usize| {
            let names = a.names().iter().map(|s| format!("{s}#{i}")).collect();
            a.clone().with_names(names)
        };
        let mut acc = if k == 0 { SuperAlgebra::zero() } else { tag(1) };
        for i in 2..=k {
            acc = SuperAlgebra::direct_sum(&acc, &tag(i));
        }
        acc
    }

    /// Whether `d` is a homogeneous derivation; returns its parity.
    pub fn derivation_parity(&self, d: &Mat) -> Option<u8> {
        let n = self.dim();
        if d.rows() != n || d.cols() != n {
            return None;
        }
        let pd = matrix_parity(d, self.dim_even())?;
        for i in 0..n {
            let bi = self.basis_vec(i);
            let di = d.mul_vec(&bi);
            for j in 0..n {
                let bj = self.basis_vec(j);
                let lhs = d.mul_vec(&self.bracket(&bi, &bj));
                let mut rhs = self.bracket(&di, &bj);
                let t = self.bracket(&bi, &d.mul_vec(&bj));
                if pd * self.parity(i) == 1 {
                    rhs = vec_sub(&rhs, &t);
                } else {
                    rhs = crate::exactla::vec_add(&rhs, &t);
                }
                if lhs != rhs {
                    return None;
                }
            }
        }
        Some(pd)
    }

    /// Semidirect product `self ⋊ span(ders)`. The span must be closed under
    /// the supercommutator. Basis order: even of `self`, even derivations,
    /// odd of `self`, odd derivations.
    pub fn semidirect(&self, ders: &[Mat], der_names: &[String]) -> Result<SuperAlgebra> {
        let n = self.dim();
        let e = self.dim_even();
        let mut parities = Vec::new();
        for (idx, d) in ders.iter().enumerate() {
            parities.push(self.derivation_parity(d).ok_or(Error::NotADerivation(idx))?);
        }
        let ev: Vec<usize> = (0..ders.len()).filter(|&i| parities[i] == 0).collect();
        let od: Vec<usize> = (0..ders.len()).filter(|&i| parities[i] == 1).collect();
        let order: Vec<usize> = ev.iter().chain(&od).copied().collect();
        let m = ders.len();
        let span = Subspace::from_vectors(n * n, order.iter().map(|&i| ders[i].as_flat().to_vec()));
        if span.dim() != m {
            return Err(Error::Precondition("derivations are linearly dependent".into()));
        }
        // coordinates in `order` of a flattened matrix, via an augmented solve
        let mut aug = Subspace::zero(n * n + m);
        for (k, &i) in order.iter().enumerate() {
            let mut v = ders[i].as_flat().to_vec();
            v.extend(unit_vec(m, k));
            aug.insert(v);
        }
        let der_coords = |w: &Mat| -> Option<Vec<Rat>> {
            let mut v = w.as_flat().to_vec();
            v.extend(zero_vec(m));
            let r = aug.reduce(&v);
            is_zero_vec(&r[..n * n]).then(|| r[n * n..].iter().map(|x| -x).collect())
        };
        let total = n + m;
        let new_even = e + ev.len();
        // new index -> (is derivation, index into self basis or `order`)
        let mut src = Vec::with_capacity(total);
        src.extend((0..e).map(|i| (false, i)));
        src.extend((0..ev.len()).map(|k| (true, k)));
        src.extend((e..n).map(|i| (false, i)));
        src.extend((ev.len()..m).map(|k| (true, k)));
        let pos_alg = |i: usize| if i < e { i } else { i + ev.len() };
        let pos_der = |k: usize| if k < ev.len() { e + k } else { n + k };
        let mut names: Vec<String> = Vec::with_capacity(total);
        for &(is_der, i) in &src {
            names.push(if is_der {
                der_names.get(order[i]).cloned().unwrap_or_else(|| format!("D{}", order[i]))
            } else {
                self.names()[i].clone()
            });
        }
        let alg_vec = |v: &[Rat]| {
            let mut out = zero_vec(total);
            for (i, x) in v.iter().enumerate() {
                out[pos_alg(i)] = x.clone();
            }
            out
        };
        let mut failed = false;
        let alg = SuperAlgebra::from_upper(new_even, total - new_even, names, |s, t| match (src[s], src[t]) {
            ((false, i), (false, j)) => alg_vec(&self.bracket(&self.basis_vec(i), &self.basis_vec(j))),
            ((true, k), (false, j)) => alg_vec(&ders[order[k]].col(j)),
            ((false, i), (true, k)) => {
                let d = &ders[order[k]];
                let sign = if self.parity(i) * parities[order[k]] == 1 { Rat::one() } else { -Rat::one() };
                alg_vec(&d.col(i).iter().map(|x| &sign * x).collect::<Vec<_>>())
            }
            ((true, k), (true, l)) => {
                let c = supercommutator(&ders[order[k]], &ders[order[l]], e);
                match der_coords(&c) {
                    Some(co) => {
                        let mut out = zero_vec(total);
                        for (kk, x) in co.into_iter().enumerate() {
                            out[pos_der(kk)] = x;
                        }
                        out
                    }
                    None => {
                        failed = true;
                        zero_vec(total)
                    }
                }
            }
        })?;
        if failed {
            return Err(Error::NotClosed);
        }
        Ok(alg)
    }
}

/// Kernel of the stacked maps restricted to the given column block,
/// embedded back into the full coordinate space.
fn kernel_on_columns(n: usize, cols: std::ops::Range<usize>, maps: &[Mat]) -> Subspace {
    let w = cols.len();
    if w == 0 {
        return Subspace::zero(n);
    }
    let (c0, c1) = (cols.start, cols.end);
    let rows: Vec<Vec<Rat>> = maps
        .iter()
        .flat_map(|m| (0..m.rows()).map(move |r| m.row(r)[c0..c1].to_vec()))
        .filter(|r| !is_zero_vec(r))
        .collect();
    let k = if rows.is_empty() { Subspace::full(w) } else { kernel_basis(&Mat::from_rows(rows)) };
    Subspace::from_vectors(
        n,
        k.basis().iter().map(|v| {
            let mut full = zero_vec(n);
            for (i, x) in v.iter().enumerate() {
                full[c0 + i] = x.clone();
            }
            full
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::super::tests::gl11;
    use super::*;
    use crate::exactla::rat;

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn sl11_inside_gl11() {
        let g = gl11();
        let s = g.generated_subalgebra(&[v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]);
        assert_eq!(s.dims(), (1, 2));
        assert!(s.contains(&v(&[1, 1, 0, 0])));
        assert_eq!(g.odd_generated_part(), s);
        assert_eq!(g.normalizer(&s), g.whole());
        assert!(g.is_ideal(&s));
        assert!(g.generated_subalgebra(&[]).space().is_zero());
    }

    #[test]
    fn center_and_quotients() {
        let g = gl11();
        let z = g.center();
        assert_eq!(z.dims(), (1, 0));
        assert!(z.contains(&v(&[1, 1, 0, 0])));
        let s = g.odd_generated_part();
        let sl = g.subalgebra_algebra(&s);
        assert!(sl.check_jacobi().is_empty());
        let q = sl.quotient(&sl.center()).unwrap();
        assert_eq!(q.dims(), (0, 2));
        assert!(q.derived_subalgebra().space().is_zero());
        let same = g.quotient(&g.zero_subalgebra()).unwrap();
        assert_eq!(same.dims(), g.dims());
        assert_eq!(g.quotient(&g.generated_subalgebra(&[v(&[0, 0, 1, 0])])), Err(Error::NotAnIdeal));
    }

    #[test]
    fn borel_normalizer_and_centralizer() {
        let g = gl11();
        let b = g.generated_subalgebra(&[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0]), v(&[0, 0, 1, 0])]);
        assert_eq!(b.dims(), (2, 1));
        assert_eq!(g.normalizer(&b), b);
        let c = g.centralizer(&Subspace::from_vectors(4, [v(&[1, 0, 0, 0])]));
        assert_eq!(c.dims(), (2, 0));
    }

    #[test]
    fn direct_sum_and_semidirect() {
        let g = gl11();
        let gg = SuperAlgebra::direct_sum(&g, &g);
        assert_eq!(gg.dims(), (4, 4));
        assert!(gg.check_jacobi().is_empty());
        assert_eq!(gg.center().dims(), (2, 0));
        let r = gg.realization().unwrap();
        assert_eq!((r.p, r.q), (2, 2));
        // ad of E11 - E22 is an inner even derivation; ad of an odd element too.
        let ad_h = g.adjoint_matrix(&v(&[1, -1, 0, 0]));
        let ok = g.semidirect(&[ad_h.clone()], &["h".into()]).unwrap();
        assert_eq!(ok.dims(), (3, 2));
        assert!(ok.check_jacobi().is_empty());
        let mut bad = ad_h;
        bad.set(0, 0, rat(1));
        assert_eq!(g.semidirect(&[bad], &[]), Err(Error::NotADerivation(0)));
    }

    #[test]
    fn ad_is_a_homomorphism() {
        use rand::SeedableRng;
        let g = SuperAlgebra::direct_sum(&gl11(), &gl11());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let px = rand::Rng::gen_range(&mut rng, 0..2u8);
            let py = rand::Rng::gen_range(&mut rng, 0..2u8);
            let x = g.random_vec(&mut rng, Some(px), 3);
            let y = g.random_vec(&mut rng, Some(py), 3);
            let (ax, ay) = (g.adjoint_matrix(&x), g.adjoint_matrix(&y));
            let rhs = if px * py == 1 { &(&ax * &ay) + &(&ay * &ax) } else { &(&ax * &ay) - &(&ay * &ax) };
            assert_eq!(g.adjoint_matrix(&g.bracket(&x, &y)), rhs);
        }
    }
}

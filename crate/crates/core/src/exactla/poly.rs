use super::{axpy, is_zero_vec, unit_vec, vec_scale, zero_vec, Mat, Rat};
use num_traits::{One, Zero};
use std::fmt;

/// Univariate polynomial over Q, coefficients from low to high degree.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({})t^{}", super::format_rat(c), i))
            .collect();
        write!(f, "Poly[{}]", terms.join(" + "))
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| super::rat(x)).collect())
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Rat::one()] }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// `t - a`
    pub fn linear(a: &Rat) -> Self {
        Poly { coeffs: vec![-a.clone(), Rat::one()] }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        Poly { coeffs: vec_scale(&self.coeffs, &inv) }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * super::rat(i as i64))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = zero_vec(self.coeffs.len() + other.coeffs.len() - 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lead_inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = zero_vec(r.len() - dd);
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        let g = self.gcd(other);
        let (q, _) = self.mul(other).div_rem(&g);
        q.monic()
    }

    pub fn squarefree_part(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        let n = m.rows();
        let mut acc = Mat::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * m;
            if !c.is_zero() {
                for i in 0..n {
                    let v = acc.get(i, i) + c;
                    acc.set(i, i, v);
                }
            }
        }
        acc
    }

    /// `p(m) v` without forming `p(m)`.
    pub fn apply(&self, m: &Mat, v: &[Rat]) -> Vec<Rat> {
        let mut acc = zero_vec(v.len());
        for c in self.coeffs.iter().rev() {
            acc = m.mul_vec(&acc);
            axpy(&mut acc, c, v);
        }
        acc
    }
}

/// Minimal polynomial of `v` under `m` from the Krylov sequence.
fn krylov_minpoly(m: &Mat, v: &[Rat]) -> Poly {
    let n = m.rows();
    // Reduced Krylov vectors with their expression in the raw sequence.
    let mut rows: Vec<(usize, Vec<Rat>, Vec<Rat>)> = Vec::new();
    let mut w = v.to_vec();
    for k in 0..=n {
        let mut red = w.clone();
        let mut comb = zero_vec(n + 1);
        comb[k] = Rat::one();
        for (p, r, c) in &rows {
            if !red[*p].is_zero() {
                let f = -red[*p].clone();
                axpy(&mut red, &f, r);
                axpy(&mut comb, &f, c);
            }
        }
        match red.iter().position(|x| !x.is_zero()) {
            None => {
                comb.truncate(k + 1);
                return Poly::new(comb).monic();
            }
            Some(p) => {
                let inv = red[p].recip();
                rows.push((p, vec_scale(&red, &inv), vec_scale(&comb, &inv)));
            }
        }
        w = m.mul_vec(&w);
    }
    unreachable!("Krylov sequence must become dependent within n+1 steps")
}

/// Lowest-degree monic `p` with `p(m) = 0`.
pub fn minimal_polynomial(m: &Mat) -> Poly {
    assert!(m.is_square(), "minimal polynomial needs a square matrix");
    let n = m.rows();
    let mut p = Poly::one();
    for j in 0..n {
        let e = unit_vec(n, j);
        if is_zero_vec(&p.apply(m, &e)) {
            continue;
        }
        p = p.lcm(&krylov_minpoly(m, &e));
    }
    p
}

/// Diagonalizable over the algebraic closure: the minimal polynomial is squarefree.
pub fn is_semisimple_matrix(m: &Mat) -> bool {
    minimal_polynomial(m).is_squarefree()
}

/// Splits `m = s + n` with `s` semisimple, `n` nilpotent and `[s, n] = 0`.
///
/// `s` is obtained by Newton iteration on the squarefree part `q` of the
/// minimal polynomial: `s <- s - q(s) q'(s)^{-1}`. Both parts are
/// polynomials in `m` with rational coefficients.
pub fn jordan_decomposition(m: &Mat) -> (Mat, Mat) {
    assert!(m.is_square(), "Jordan decomposition needs a square matrix");
    let minpoly = minimal_polynomial(m);
    if minpoly.is_squarefree() {
        return (m.clone(), Mat::zeros(m.rows(), m.cols()));
    }
    let q = minpoly.squarefree_part();
    let dq = q.derivative();
    let mut s = m.clone();
    loop {
        let qs = q.eval_mat(&s);
        if qs.is_zero() {
            break;
        }
        let inv = dq
            .eval_mat(&s)
            .inverse()
            .expect("q'(s) is invertible since q is squarefree");
        s = &s - &(&qs * &inv);
    }
    let n = m - &s;
    (s, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use proptest::prelude::*;

    #[test]
    fn minpoly_examples() {
        assert_eq!(minimal_polynomial(&Mat::identity(3)), Poly::from_i64(&[-1, 1]));
        assert_eq!(minimal_polynomial(&Mat::from_i64(2, 2, &[0, 1, 0, 0])), Poly::from_i64(&[0, 0, 1]));
        // (t-1)(t-2) = t^2 - 3t + 2
        assert_eq!(minimal_polynomial(&Mat::from_i64(2, 2, &[1, 0, 0, 2])), Poly::from_i64(&[2, -3, 1]));
    }

    #[test]
    fn semisimplicity_examples() {
        assert!(is_semisimple_matrix(&Mat::from_i64(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 2])));
        assert!(!is_semisimple_matrix(&Mat::from_i64(2, 2, &[0, 1, 0, 0])));
        let rot = Mat::from_i64(2, 2, &[0, 1, -1, 0]);
        let p = minimal_polynomial(&rot);
        assert_eq!(p, Poly::from_i64(&[1, 0, 1]));
        assert_eq!(p.gcd(&p.derivative()), Poly::one());
        assert!(is_semisimple_matrix(&rot));
    }

    #[test]
    fn jordan_examples() {
        let m = Mat::from_i64(2, 2, &[1, 1, 0, 1]);
        let (s, n) = jordan_decomposition(&m);
        assert_eq!(s, Mat::identity(2));
        assert_eq!(n, Mat::from_i64(2, 2, &[0, 1, 0, 0]));
        let nil = Mat::from_i64(3, 3, &[0, 1, 2, 0, 0, 3, 0, 0, 0]);
        let (s, n) = jordan_decomposition(&nil);
        assert!(s.is_zero());
        assert_eq!(n, nil);
        let ss = Mat::from_i64(2, 2, &[0, 1, -1, 0]);
        assert_eq!(jordan_decomposition(&ss), (ss.clone(), Mat::zeros(2, 2)));
    }

    #[test]
    fn jordan_with_irrational_eigenvalues() {
        // Block diag(R, R) + nilpotent coupling, with R^2 = 2.
        let m = Mat::from_i64(4, 4, &[0, 2, 1, 0, 1, 0, 0, 1, 0, 0, 0, 2, 0, 0, 1, 0]);
        let (s, n) = jordan_decomposition(&m);
        assert_eq!(&s + &n, m);
        assert_eq!(&s * &n, &n * &s);
        assert!(is_semisimple_matrix(&s));
        assert!(n.pow(4).is_zero());
        assert!(!n.is_zero());
    }

    #[test]
    fn poly_arith() {
        let a = Poly::from_i64(&[-1, 0, 1]); // t^2 - 1
        let b = Poly::from_i64(&[1, 1]);
        assert_eq!(a.gcd(&b), b);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.eval(&rat(3)), rat(8));
        let sq = Poly::from_i64(&[0, 0, 1]).mul(&Poly::from_i64(&[-1, 1]));
        assert_eq!(sq.squarefree_part(), Poly::from_i64(&[0, -1, 1]));
    }

    fn rat4x4() -> impl Strategy<Value = Mat> {
        // Mix of dense random and structured (repeated eigenvalue) inputs.
        (proptest::collection::vec(-3i64..=3, 16), 0u8..3).prop_map(|(e, kind)| {
            let m = Mat::from_i64(4, 4, &e);
            match kind {
                0 => m,
                1 => {
                    // conjugate a Jordan-block-rich matrix by a unimodular matrix
                    let j = Mat::from_i64(4, 4, &[2, 1, 0, 0, 0, 2, 0, 0, 0, 0, 2, 1, 0, 0, 0, 2]);
                    let p = Mat::from_i64(4, 4, &[1, e[0], e[1], e[2], 0, 1, e[3], e[4], 0, 0, 1, e[5], 0, 0, 0, 1]);
                    let pinv = p.inverse().unwrap();
                    &(&p * &j) * &pinv
                }
                _ => {
                    // strictly upper triangular plus scalar
                    let mut u = Mat::zeros(4, 4);
                    for i in 0..4 {
                        u.set(i, i, rat(e[0]));
                        for k in i + 1..4 {
                            u.set(i, k, rat(e[4 * i + k]));
                        }
                    }
                    u
                }
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn jordan_decomposition_properties(m in rat4x4()) {
            let (s, n) = jordan_decomposition(&m);
            prop_assert_eq!(&s + &n, m.clone());
            prop_assert_eq!(&s * &n, &n * &s);
            prop_assert!(n.pow(4).is_zero());
            prop_assert!(is_semisimple_matrix(&s));
            let p = minimal_polynomial(&m);
            prop_assert!(p.eval_mat(&m).is_zero());
        }
    }
}

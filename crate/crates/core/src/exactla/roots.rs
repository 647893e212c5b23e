use super::{kernel_basis, minimal_polynomial, Mat, Poly, Rat, Subspace};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EigenError {
    #[error("operator is not diagonalizable")]
    NotDiagonalizable,
    #[error("operator has eigenvalues outside Q")]
    IrrationalSpectrum,
    #[error("operators do not share a common eigenbasis")]
    NotSimultaneous,
}

/// Integer polynomial with content removed, as BigInt coefficients low to high.
fn primitive_integer(p: &Poly) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn eval_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p)
}

fn poly_mod_p(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect()
}

fn inv_mod_u64(a: u64, p: u64) -> u64 {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(p));
    e.x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Degree of gcd(f, f') over F_p, with f given mod p.
fn squarefree_mod_p(f: &[u64], p: u64) -> bool {
    let trim = |mut v: Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let mut a = trim(f.to_vec());
    let mut b = trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (c * (i as u64 % p)) % p)
            .collect(),
    );
    while !b.is_empty() {
        // a mod b
        let inv = inv_mod_u64(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let c = (a.last().unwrap() * inv) % p;
            for (j, &bc) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + p - (c * bc) % p) % p;
            }
            a = trim(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

fn small_primes() -> impl Iterator<Item = u64> {
    (1009u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Finds `a/b` with `a = b r (mod m)`, `|a|, b <= bound`.
fn rational_reconstruct(r: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rat> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound {
        return None;
    }
    Some(Rat::new(r1, t1))
}

fn eval_big(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// All rational roots of `p`, sorted ascending, each listed once.
///
/// Roots are located modulo a small prime where `p` stays squarefree, lifted
/// p-adically past the Cauchy-type bound on numerators and denominators, and
/// recovered by rational reconstruction; each candidate is confirmed exactly.
pub fn rational_roots(p: &Poly) -> Vec<Rat> {
    assert!(!p.is_zero(), "rational roots of the zero polynomial");
    let mut roots = Vec::new();
    let mut q = p.squarefree_part();
    if q.coeffs()[0].is_zero() {
        roots.push(Rat::zero());
        q = q.div_rem(&Poly::linear(&Rat::zero())).0;
    }
    if q.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let f = primitive_integer(&q);
    let lead = f.last().unwrap().abs();
    let c0 = f[0].abs();
    let bound = std::cmp::max(lead.clone(), c0.clone());
    let needed = &bound * &bound * BigInt::from(2) + BigInt::one();
    let df: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();

    let prime = small_primes()
        .find(|&pr| {
            let fm = poly_mod_p(&f, pr);
            !(&lead % BigInt::from(pr)).is_zero() && squarefree_mod_p(&fm, pr)
        })
        .expect("some prime keeps a squarefree polynomial squarefree");
    let fm = poly_mod_p(&f, prime);
    let pb = BigInt::from(prime);
    for r0 in (0..prime).filter(|&x| eval_mod(&fm, x, prime) == 0) {
        // Newton/Hensel lift, doubling precision.
        let mut r = BigInt::from(r0);
        let mut modulus = pb.clone();
        while modulus < needed {
            modulus = &modulus * &modulus;
            let fr = eval_big(&f, &r).mod_floor(&modulus);
            let dfr = eval_big(&df, &r).mod_floor(&modulus);
            let e = dfr.extended_gcd(&modulus);
            debug_assert!(e.gcd.is_one());
            r = (&r - fr * e.x).mod_floor(&modulus);
        }
        let half = (&modulus / BigInt::from(2)).sqrt();
        if let Some(c) = rational_reconstruct(&r, &modulus, &half) {
            if q.eval(&c).is_zero() && !roots.contains(&c) {
                roots.push(c);
            }
        }
    }
    roots.sort();
    roots
}

/// Joint eigenspace decomposition of commuting operators on `Q^n`.
///
/// Returns `(weight, eigenspace)` pairs, the weight listing the eigenvalue
/// of each input operator, sorted by weight. Fails unless the operators are
/// simultaneously diagonalizable with rational spectrum.
pub fn simultaneous_eigenspaces(mats: &[Mat], n: usize) -> Result<Vec<(Vec<Rat>, Subspace)>, EigenError> {
    if mats.is_empty() {
        return Ok(vec![(Vec::new(), Subspace::full(n))]);
    }
    for m in mats {
        assert_eq!((m.rows(), m.cols()), (n, n));
    }
    for attempt in 0..12i64 {
        let base = Rat::from_integer(BigInt::from(attempt + 3));
        let mut t = Mat::zeros(n, n);
        let mut c = Rat::one();
        for m in mats {
            t = &t + &m.scale(&c);
            c *= &base;
        }
        let mp = minimal_polynomial(&t);
        if !mp.is_squarefree() {
            return Err(EigenError::NotDiagonalizable);
        }
        let roots = rational_roots(&mp);
        if roots.len() != mp.degree().unwrap_or(0) {
            return Err(EigenError::IrrationalSpectrum);
        }
        let mut out = Vec::with_capacity(roots.len());
        let mut joint = true;
        'spaces: for lambda in &roots {
            let shifted = &t - &Mat::identity(n).scale(lambda);
            let space = kernel_basis(&shifted);
            let mut weight = Vec::with_capacity(mats.len());
            for m in mats {
                let v0 = &space.basis()[0];
                let img = m.mul_vec(v0);
                let p = v0.iter().position(|x| !x.is_zero()).unwrap();
                let mu = &img[p] / &v0[p];
                for v in space.basis() {
                    let w = m.mul_vec(v);
                    if w.iter().zip(v).any(|(a, b)| *a != &mu * b) {
                        joint = false;
                        break 'spaces;
                    }
                }
                weight.push(mu);
            }
            out.push((weight, space));
        }
        if joint {
            out.sort_by(|a, b| a.0.cmp(&b.0));
            return Ok(out);
        }
    }
    Err(EigenError::NotSimultaneous)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{frac, rat};

    #[test]
    fn roots_of_products_of_linears() {
        let p = Poly::linear(&frac(3, 7))
            .mul(&Poly::linear(&rat(-12)))
            .mul(&Poly::linear(&rat(0)))
            .mul(&Poly::from_i64(&[2, 0, 1]))
            .mul(&Poly::linear(&frac(-5, 2)));
        assert_eq!(rational_roots(&p), vec![rat(-12), frac(-5, 2), rat(0), frac(3, 7)]);
    }

    #[test]
    fn roots_with_large_values_and_multiplicity() {
        let big = Rat::new(BigInt::from(123456789u64), BigInt::from(1000003u64));
        let p = Poly::linear(&big).mul(&Poly::linear(&big)).mul(&Poly::linear(&rat(1)));
        assert_eq!(rational_roots(&p), vec![rat(1), big]);
        assert!(rational_roots(&Poly::from_i64(&[-2, 0, 1])).is_empty());
    }

    #[test]
    fn eigenspaces_of_commuting_diagonals() {
        let a = Mat::from_i64(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 2]);
        let b = Mat::from_i64(3, 3, &[5, 0, 0, 0, -5, 0, 0, 0, 5]);
        let es = simultaneous_eigenspaces(&[a, b], 3).unwrap();
        assert_eq!(es.len(), 3);
        assert_eq!(es[0].0, vec![rat(1), rat(-5)]);
        assert!(simultaneous_eigenspaces(&[Mat::from_i64(2, 2, &[0, 1, 0, 0])], 2).is_err());
        assert_eq!(
            simultaneous_eigenspaces(&[Mat::from_i64(2, 2, &[0, 2, 1, 0])], 2),
            Err(EigenError::IrrationalSpectrum)
        );
    }
}

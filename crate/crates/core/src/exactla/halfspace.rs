use super::{dot, rat, Rat};
use num_traits::{Signed, Zero};

/// Constraint `a . phi >= b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Ineq {
    a: Vec<Rat>,
    b: Rat,
}

impl Ineq {
    /// Scales so the first nonzero entry of `(a, b)` has absolute value one.
    fn normalized(mut self) -> Ineq {
        if let Some(s) = self.a.iter().chain(std::iter::once(&self.b)).find(|x| !x.is_zero()) {
            let s = s.abs().recip();
            for x in self.a.iter_mut() {
                *x *= &s;
            }
            self.b *= &s;
        }
        self
    }
}

/// Fourier-Motzkin elimination on `w . phi >= 1`; returns a strictly
/// positive functional if one exists.
pub fn halfspace_witness(weights: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    assert!(!weights.is_empty(), "halfspace test needs at least one weight");
    let d = weights[0].len();
    let mut systems: Vec<Vec<Ineq>> = Vec::with_capacity(d + 1);
    let mut cur: Vec<Ineq> = weights.iter().map(|w| Ineq { a: w.clone(), b: rat(1) }.normalized()).collect();
    cur.sort();
    cur.dedup();
    for j in 0..d {
        systems.push(cur.clone());
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in cur {
            if c.a[j].is_positive() {
                pos.push(c);
            } else if c.a[j].is_negative() {
                neg.push(c);
            } else {
                rest.push(c);
            }
        }
        for p in &pos {
            for n in &neg {
                let (sp, sn) = (-n.a[j].clone(), p.a[j].clone());
                let a: Vec<Rat> = p.a.iter().zip(&n.a).map(|(x, y)| &sp * x + &sn * y).collect();
                rest.push(Ineq { a, b: &sp * &p.b + &sn * &n.b }.normalized());
            }
        }
        rest.sort();
        rest.dedup();
        cur = rest;
    }
    if cur.iter().any(|c| c.b.is_positive()) {
        return None;
    }
    // Back-substitute from the last variable to the first.
    let mut phi = vec![Rat::zero(); d];
    for j in (0..d).rev() {
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for c in &systems[j] {
            // variables < j are still free in this system; they carry zero coefficient
            // only after elimination, so evaluate with the already fixed tail.
            let rest: Rat = (j + 1..d).map(|k| &c.a[k] * &phi[k]).sum();
            let coef = &c.a[j];
            if coef.is_zero() {
                continue;
            }
            let bound = (&c.b - rest) / coef;
            if coef.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            }
        }
        phi[j] = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / rat(2),
            (Some(l), None) => l + rat(1),
            (None, Some(h)) => h - rat(1),
            (None, None) => Rat::zero(),
        };
    }
    debug_assert!(weights.iter().all(|w| dot(w, &phi).is_positive()));
    Some(phi)
}

/// Whether some rational functional is strictly positive on every weight.
pub fn halfspace_feasible(weights: &[Vec<Rat>]) -> bool {
    halfspace_witness(weights).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn examples() {
        assert!(halfspace_feasible(&[v(&[1, 0]), v(&[0, 1])]));
        assert!(!halfspace_feasible(&[v(&[1, 0]), v(&[-1, 0])]));
        assert!(!halfspace_feasible(&[v(&[0, 0])]));
        // thin cone: 2b < a < 3b
        let w = halfspace_witness(&[v(&[1, -2, 0]), v(&[-1, 3, 0])]).unwrap();
        assert!(dot(&v(&[1, -2, 0]), &w).is_positive());
    }

    fn grid_search(ws: &[Vec<i64>], r: i64) -> bool {
        let d = ws[0].len();
        let mut phi = vec![-r; d];
        loop {
            if ws.iter().all(|w| w.iter().zip(&phi).map(|(a, b)| a * b).sum::<i64>() > 0) {
                return true;
            }
            let mut k = 0;
            while k < d {
                phi[k] += 1;
                if phi[k] <= r {
                    break;
                }
                phi[k] = -r;
                k += 1;
            }
            if k == d {
                return false;
            }
        }
    }

    proptest! {
        // With weights in {-1,0,1}^3 the extreme rays of the closed feasible
        // cone are cross products with entries in {-2..2}; the sum of at most
        // ten of them is an interior point inside the {-20..20} grid.
        #[test]
        fn agrees_with_grid_search(ws in proptest::collection::vec(proptest::collection::vec(-1i64..=1, 3), 1..=5)) {
            let exact = halfspace_feasible(&ws.iter().map(|w| v(w)).collect::<Vec<_>>());
            prop_assert_eq!(exact, grid_search(&ws, 20));
        }

        #[test]
        fn witness_is_valid(ws in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 1..=5)) {
            let wv: Vec<Vec<Rat>> = ws.iter().map(|w| v(w)).collect();
            if let Some(phi) = halfspace_witness(&wv) {
                for w in &wv {
                    prop_assert!(dot(w, &phi).is_positive());
                }
            } else {
                prop_assert!(!grid_search(&ws, 3));
            }
        }
    }
}

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Extended rational endpoint for root counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

/// Dense univariate polynomial over Q, coefficients in ascending degree.
///
/// Canonical: no trailing zero coefficients; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_i64(cs: &[i64]) -> Self {
        UniPoly::new(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> UniPoly {
        match self.lc() {
            None => UniPoly::zero(),
            Some(lc) => UniPoly { coeffs: self.coeffs.iter().map(|c| c / lc).collect() },
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer((k as i64).into()))
                .collect(),
        )
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lc().expect("nonzero").clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, made monic.
    pub fn squarefree(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    fn sign_at(&self, x: &Bound) -> Ordering {
        let Some(deg) = self.degree() else { return Ordering::Equal };
        let lc = self.lc().expect("nonzero");
        let s = match x {
            Bound::Finite(v) => return self.eval(v).cmp(&BigRational::zero()),
            Bound::PosInf => lc.signum(),
            Bound::NegInf if deg % 2 == 0 => lc.signum(),
            Bound::NegInf => -lc.signum(),
        };
        s.cmp(&BigRational::zero())
    }

    /// Canonical Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone()];
        if self.degree().unwrap_or(0) == 0 {
            return seq;
        }
        seq.push(self.derivative());
        loop {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(UniPoly { coeffs: r.coeffs.iter().map(|c| -c).collect() });
        }
        seq
    }

    fn variations(seq: &[UniPoly], x: &Bound) -> usize {
        let signs: Vec<Ordering> =
            seq.iter().map(|p| p.sign_at(x)).filter(|s| *s != Ordering::Equal).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    ///
    /// Works on the square-free part; finite endpoints that are roots are
    /// divided out first so the Sturm count applies to non-root endpoints.
    pub fn count_roots(&self, lo: &Bound, hi: &Bound) -> usize {
        assert!(!self.is_zero(), "root count of zero polynomial");
        if bound_le(hi, lo) {
            return 0;
        }
        let mut p = self.squarefree();
        for end in [lo, hi] {
            if let Bound::Finite(v) = end {
                if p.eval(v).is_zero() {
                    let lin = UniPoly::new(vec![-v.clone(), BigRational::one()]);
                    p = p.div_rem(&lin).0;
                }
            }
        }
        if p.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let seq = p.sturm_sequence();
        UniPoly::variations(&seq, lo) - UniPoly::variations(&seq, hi)
    }

    /// Interior positive roots: `(0, ∞)`.
    pub fn count_positive_roots(&self) -> usize {
        self.count_roots(&Bound::Finite(BigRational::zero()), &Bound::PosInf)
    }
}

fn bound_le(a: &Bound, b: &Bound) -> bool {
    match (a, b) {
        (Bound::NegInf, _) | (_, Bound::PosInf) => true,
        (Bound::PosInf, _) | (_, Bound::NegInf) => false,
        (Bound::Finite(x), Bound::Finite(y)) => x <= y,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn fin(x: BigRational) -> Bound {
        Bound::Finite(x)
    }

    #[test]
    fn endpoints_that_are_roots_are_excluded() {
        // (a-1)(a-3) on (1, 3): no roots strictly inside.
        let p = UniPoly::from_i64(&[3, -4, 1]);
        assert_eq!(p.count_roots(&fin(int(1)), &fin(int(3))), 0);
        assert_eq!(p.count_roots(&fin(int(1)), &fin(rat(7, 2))), 1);
        assert_eq!(p.count_roots(&fin(int(0)), &fin(int(3))), 1);
        assert_eq!(p.count_roots(&fin(int(3)), &fin(int(1))), 0);
    }

    #[test]
    fn repeated_roots_count_once() {
        // (a-2)^3 (a+1)^2
        let p = UniPoly::from_i64(&[-2, 1]).mul(&UniPoly::from_i64(&[-2, 1])).mul(&UniPoly::from_i64(&[-2, 1]));
        let p = p.mul(&UniPoly::from_i64(&[1, 1])).mul(&UniPoly::from_i64(&[1, 1]));
        assert_eq!(p.count_roots(&Bound::NegInf, &Bound::PosInf), 2);
        assert_eq!(p.squarefree(), UniPoly::from_i64(&[-2, -1, 1]));
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = UniPoly::from_i64(&[5, 0, -3, 2, 7]);
        let d = UniPoly::from_i64(&[1, 2, 3]);
        let (q, r) = p.div_rem(&d);
        assert!(r.degree().unwrap_or(0) < 2);
        let back = q.mul(&d);
        let sum: Vec<BigRational> =
            (0..5).map(|k| back.coeffs().get(k).cloned().unwrap_or_default() + r.coeffs().get(k).cloned().unwrap_or_default()).collect();
        assert_eq!(UniPoly::new(sum), p);
    }

    // Oracle: polynomials built from known rational roots (with multiplicity)
    // times quadratics x^2 + c (c > 0) with no real roots.
    fn known_roots() -> impl Strategy<Value = (Vec<(i64, i64)>, Vec<i64>, i64)> {
        (
            prop::collection::vec((-6i64..=6, 1i64..=3), 0..4),
            prop::collection::vec(1i64..=5, 0..2),
            prop_oneof![Just(1i64), Just(-2i64)],
        )
    }

    fn bound_strategy() -> impl Strategy<Value = Bound> {
        prop_oneof![
            Just(Bound::NegInf),
            Just(Bound::PosInf),
            (-7i64..=7, 1i64..=3).prop_map(|(n, d)| Bound::Finite(rat(n, d))),
        ]
    }

    fn inside(x: &BigRational, lo: &Bound, hi: &Bound) -> bool {
        let above = match lo {
            Bound::NegInf => true,
            Bound::PosInf => false,
            Bound::Finite(l) => x > l,
        };
        let below = match hi {
            Bound::PosInf => true,
            Bound::NegInf => false,
            Bound::Finite(h) => x < h,
        };
        above && below
    }

    // Grid oracle: sign changes over a fine grid, with every grid cell that
    // shows no change bisected a few levels deeper; never exceeds the true count.
    fn grid_sign_changes(p: &UniPoly, lo: i64, hi: i64, steps: i64) -> usize {
        let sf = p.squarefree();
        let mut count = 0;
        let mut prev: Option<Ordering> = None;
        for k in 0..=steps * (hi - lo) {
            let x = int(lo) + rat(k, steps);
            let s = sf.eval(&x).cmp(&BigRational::zero());
            if s == Ordering::Equal {
                count += 1;
                prev = None;
                continue;
            }
            if let Some(ps) = prev {
                if ps != s {
                    count += 1;
                }
            }
            prev = Some(s);
        }
        count
    }

    proptest! {
        #[test]
        fn sturm_matches_constructed_roots((roots, quads, lead) in known_roots(), lo in bound_strategy(), hi in bound_strategy()) {
            let mut p = UniPoly::new(vec![int(lead)]);
            let mut distinct = BTreeSet::new();
            for &(n, d) in &roots {
                let r = rat(n, d);
                p = p.mul(&UniPoly::new(vec![-r.clone(), BigRational::one()]));
                distinct.insert(r);
            }
            for &c in &quads {
                p = p.mul(&UniPoly::from_i64(&[c, 0, 1]));
            }
            let expected = distinct.iter().filter(|r| inside(r, &lo, &hi)).count();
            prop_assert_eq!(p.count_roots(&lo, &hi), expected);
        }

        #[test]
        fn sturm_agrees_with_grid_for_integer_roots(rs in prop::collection::btree_set(-5i64..=5, 0..6), extra in 0i64..=2) {
            // degree <= 6 with well separated roots: the grid sees every root exactly.
            let mut p = UniPoly::from_i64(&[1]);
            for &r in &rs {
                p = p.mul(&UniPoly::from_i64(&[-r, 1]));
            }
            if extra > 0 && rs.len() < 5 {
                p = p.mul(&UniPoly::from_i64(&[extra, 0, 1]));
            }
            let grid = grid_sign_changes(&p, -6, 6, 4);
            prop_assert_eq!(p.count_roots(&fin(int(-6)), &fin(int(6))), grid);
        }

        #[test]
        fn sturm_matches_descartes_bisection(cs in prop::collection::vec(-5i64..=5, 2..8),
                                             lo in -8i64..=0, width in 1i64..=16) {
            let p = UniPoly::from_i64(&cs);
            prop_assume!(p.degree().unwrap_or(0) >= 1);
            let (l, h) = (rat(2 * lo - 1, 2), rat(2 * lo - 1, 2) + int(width));
            let expected = descartes::count(&p, &l, &h);
            prop_assert_eq!(p.count_roots(&fin(l), &fin(h)), expected);
            let grid = grid_sign_changes(&p, -8, 8, 8);
            prop_assert!(grid <= p.count_roots(&fin(rat(-129, 16)), &fin(rat(129, 16))));
        }
    }

    /// Independent root counter: Descartes' rule of signs with interval
    /// bisection (Vincent-Collins-Akritas), on coefficient vectors.
    mod descartes {
        use num_rational::BigRational;
        use num_traits::{One, Zero};

        type P = Vec<BigRational>;

        fn trim(mut p: P) -> P {
            while p.last().is_some_and(Zero::is_zero) {
                p.pop();
            }
            p
        }

        fn mul(a: &P, b: &P) -> P {
            let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            trim(out)
        }

        fn rem(a: &P, b: &P) -> P {
            let mut r = a.clone();
            while r.len() >= b.len() {
                let c = r.last().unwrap() / b.last().unwrap();
                let shift = r.len() - b.len();
                for (j, y) in b.iter().enumerate() {
                    r[shift + j] -= &c * y;
                }
                r.pop();
                r = trim(r);
            }
            r
        }

        fn gcd(a: &P, b: &P) -> P {
            let (mut a, mut b) = (a.clone(), b.clone());
            while !b.is_empty() {
                let r = rem(&a, &b);
                a = b;
                b = r;
            }
            a
        }

        fn div_exact(a: &P, b: &P) -> P {
            let mut r = a.clone();
            let db = b.len() - 1;
            let mut q = vec![BigRational::zero(); a.len() - db];
            for k in (0..q.len()).rev() {
                let c = &r[k + db] / b.last().unwrap();
                for (j, y) in b.iter().enumerate() {
                    r[k + j] -= &c * y;
                }
                q[k] = c;
            }
            trim(q)
        }

        /// `p(alpha + beta t)`.
        fn compose(p: &P, alpha: &BigRational, beta: &BigRational) -> P {
            let lin = vec![alpha.clone(), beta.clone()];
            let mut acc: P = vec![];
            for c in p.iter().rev() {
                acc = if acc.is_empty() { vec![] } else { mul(&acc, &lin) };
                if acc.is_empty() {
                    acc = vec![c.clone()];
                } else {
                    acc[0] += c;
                }
                acc = trim(acc);
            }
            acc
        }

        fn eval(p: &P, x: &BigRational) -> BigRational {
            p.iter().rev().fold(BigRational::zero(), |a, c| a * x + c)
        }

        fn variations(p: &P) -> usize {
            let signs: Vec<bool> = p.iter().filter(|c| !c.is_zero()).map(|c| c > &BigRational::zero()).collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        }

        fn count01(q: P, depth: u32) -> usize {
            let mut q = q;
            while q.first().is_some_and(Zero::is_zero) {
                q.remove(0);
            }
            let one = BigRational::one();
            if eval(&q, &one).is_zero() {
                q = div_exact(&q, &vec![-one.clone(), one.clone()]);
            }
            if q.len() <= 1 {
                return 0;
            }
            let mut rev = q.clone();
            rev.reverse();
            let v = variations(&compose(&rev, &one, &one));
            if v <= 1 {
                return v;
            }
            assert!(depth < 200, "bisection did not terminate");
            let half = &one / BigRational::from_integer(2.into());
            let at_mid = usize::from(eval(&q, &half).is_zero());
            count01(compose(&q, &BigRational::zero(), &half), depth + 1)
                + count01(compose(&q, &half, &half), depth + 1)
                + at_mid
        }

        pub fn count(p: &super::UniPoly, lo: &BigRational, hi: &BigRational) -> usize {
            let p: P = p.coeffs().to_vec();
            let mut d = vec![];
            for (k, c) in p.iter().enumerate().skip(1) {
                d.push(c * BigRational::from_integer((k as i64).into()));
            }
            let d = trim(d);
            let sf = if d.is_empty() { p.clone() } else { div_exact(&p, &gcd(&p, &d)) };
            count01(compose(&sf, lo, &(hi - lo)), 0)
        }
    }
}

//! Polynomials over Q: a sparse multivariate type for symbolic cone matrices,
//! and dense univariate helpers for gcds and Sturm root counting.

mod polymatrix;
mod univariate;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

pub use polymatrix::PolyMatrix;
pub use univariate::{Bound, UniPoly};

use crate::Error;

/// Sparse polynomial over Q in an ordered list of named variables.
///
/// Terms map exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Poly {
    pub fn zero(vars: &[String]) -> Self {
        Poly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: BigRational) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &[String]) -> Self {
        Poly::constant(vars, BigRational::one())
    }

    /// The variable `vars[i]`.
    pub fn var(vars: &[String], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Poly::monomial(vars, e, BigRational::one())
    }

    pub fn monomial(vars: &[String], exps: Vec<u32>, c: BigRational) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len()).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }

    fn check_vars(&self, o: &Poly) {
        assert_eq!(self.vars, o.vars, "polynomial variable lists differ");
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.vars.len());
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.clone();
                for (x, &k) in point.iter().zip(e) {
                    for _ in 0..k {
                        t *= x;
                    }
                }
                t
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Substitutes `var := value`; the variable stays in the list with degree 0.
    pub fn substitute(&self, var: usize, value: &BigRational) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..e[var] {
                t *= value;
            }
            let mut e2 = e.clone();
            e2[var] = 0;
            out.add_term(e2, t);
        }
        out
    }

    /// Remainder of division by `rel` with respect to `var`; `rel`'s leading
    /// coefficient in `var` must be a rational constant.
    pub fn reduce_mod(&self, rel: &Poly, var: &str) -> Result<Poly, Error> {
        self.check_vars(rel);
        let v = rel.var_index(var).ok_or_else(|| Error::RelationMissingVariable(var.into()))?;
        let d = rel.degree_in(v).unwrap_or(0);
        if d == 0 {
            return Err(Error::RelationMissingVariable(var.into()));
        }
        let lead: Vec<(&Vec<u32>, &BigRational)> = rel.terms.iter().filter(|(e, _)| e[v] == d).collect();
        if lead.len() != 1 || lead[0].0.iter().enumerate().any(|(i, &x)| i != v && x > 0) {
            return Err(Error::NotMonic(var.into()));
        }
        let lc = lead[0].1.clone();
        let mut p = self.clone();
        // Each step removes the largest term (in term order) of var-degree >= d.
        while let Some((e, c)) = p.terms.iter().rev().find(|(e, _)| e[v] >= d).map(|(e, c)| (e.clone(), c.clone())) {
            let mut qe = e.clone();
            qe[v] -= d;
            let q = Poly::monomial(&p.vars, qe, c / &lc);
            p = &p - &(&q * rel);
        }
        Ok(p)
    }

    /// Univariate view in variable `var` (all other variables must be absent).
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly> {
        let mut coeffs = vec![BigRational::zero(); self.degree_in(var).unwrap_or(0) as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &x)| i != var && x > 0) {
                return None;
            }
            coeffs[e[var] as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn from_univariate(vars: &[String], var: usize, u: &UniPoly) -> Poly {
        let mut p = Poly::zero(vars);
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[var] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Homogenizes with the variable `vars[hom]`: `p(a) -> b^deg p(a/b)`.
    pub fn homogenize(&self, hom: usize) -> Poly {
        let deg = self.total_degree().unwrap_or(0);
        let mut out = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[hom] += deg - e.iter().sum::<u32>();
            out.add_term(e2, c.clone());
        }
        out
    }

    /// True if `self = λ·o` for some nonzero rational `λ`.
    pub fn proportional_to(&self, o: &Poly) -> bool {
        self.check_vars(o);
        if self.is_zero() || o.is_zero() {
            return self.is_zero() && o.is_zero();
        }
        if self.terms.len() != o.terms.len() {
            return false;
        }
        let (e0, c0) = self.terms.iter().next().expect("nonzero");
        let Some(d0) = o.terms.get(e0) else { return false };
        let ratio = c0 / d0;
        self.terms.iter().all(|(e, c)| o.terms.get(e).is_some_and(|d| &(d * &ratio) == c))
    }

    /// Univariate polynomial in `name`, from coefficients in ascending degree.
    pub fn univariate(name: &str, coeffs: &[BigRational]) -> Poly {
        let vars = vec![name.to_string()];
        Poly::from_univariate(&vars, 0, &UniPoly::new(coeffs.to_vec()))
    }

    /// Minor sizes, term list and so on expect the same variable list; this
    /// re-embeds `self` into a larger list containing all current variables.
    pub fn embed(&self, vars: &[String]) -> Result<Poly, Error> {
        let map: Option<Vec<usize>> = self.vars.iter().map(|v| vars.iter().position(|w| w == v)).collect();
        let map = map.ok_or_else(|| Error::VariableMismatch(self.vars.clone(), vars.to_vec()))?;
        let mut out = Poly::zero(vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; vars.len()];
            for (i, &x) in e.iter().enumerate() {
                e2[map[i]] = x;
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }
}

/// Remainder of `p` modulo `rel` with respect to `var`.
pub fn reduce_mod(p: &Poly, rel: &Poly, var: &str) -> Result<Poly, Error> {
    p.reduce_mod(rel, var)
}

/// Monic gcd of univariate polynomials sharing one variable.
pub fn gcd_univariate(ps: &[Poly]) -> Result<Poly, Error> {
    let first = ps.first().ok_or(Error::EmptyInput)?;
    let vars = first.vars().to_vec();
    if ps.iter().any(|p| p.vars() != vars.as_slice()) {
        return Err(Error::NotUnivariate);
    }
    let mut support: Vec<usize> = ps.iter().flat_map(Poly::support).collect();
    support.sort_unstable();
    support.dedup();
    if support.len() > 1 {
        return Err(Error::NotUnivariate);
    }
    let var = support.first().copied().unwrap_or(0);
    if ps.iter().all(Poly::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    let g = ps
        .iter()
        .map(|p| p.to_univariate(var).expect("checked univariate"))
        .fold(UniPoly::zero(), |g, p| g.gcd(&p));
    Ok(Poly::from_univariate(&vars, var, &g))
}

/// Number of distinct real roots of a univariate polynomial in the open interval `(lo, hi)`.
pub fn real_roots_in_interval(p: &Poly, lo: &Bound, hi: &Bound) -> Result<usize, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let support = p.support();
    if support.len() > 1 {
        return Err(Error::NotUnivariate);
    }
    let u = p.to_univariate(support.first().copied().unwrap_or(0)).expect("univariate");
    Ok(u.count_roots(lo, hi))
}

/// All `k x k` minors of `m`, rows-major over sorted row and column subsets.
pub fn minors(m: &PolyMatrix, k: usize) -> Result<Vec<Poly>, Error> {
    m.minors(k)
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        self.check_vars(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-BigRational::one())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.check_vars(o);
        let mut out = Poly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

fn graded_desc(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl fmt::Display for Poly {
    /// Canonical form, e.g. `a^2 - 2*b^2`: graded order, highest first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|x, y| graded_desc(x.0, y.0));
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{k}", self.vars[i]) })
                .collect();
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{abs}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use crate::fixtures::kato;
    use proptest::prelude::*;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    fn a_only() -> Vec<String> {
        vec!["a".into()]
    }

    #[test]
    fn display_canonical() {
        let v = ab();
        let a = Poly::var(&v, 0);
        let b = Poly::var(&v, 1);
        let p = &(&a * &a) - &(&b * &b).scale(&int(2));
        assert_eq!(p.to_string(), "a^2 - 2*b^2");
        let q = &(&a.scale(&rat(3, 2)) - &Poly::one(&v)) + &(&a * &b);
        assert_eq!(q.to_string(), "a*b + 3/2*a - 1");
        assert_eq!(Poly::zero(&v).to_string(), "0");
    }

    #[test]
    fn reduce_mod_examples() {
        let v = a_only();
        let a = Poly::var(&v, 0);
        let rel = &a.pow(2) - &Poly::constant(&v, int(2));
        assert_eq!(a.pow(3).reduce_mod(&rel, "a").unwrap(), a.scale(&int(2)));

        let v2 = ab();
        let (a, b) = (Poly::var(&v2, 0), Poly::var(&v2, 1));
        let conic = &a.pow(2) - &b.pow(2).scale(&int(2));
        assert!(conic.reduce_mod(&conic, "a").unwrap().is_zero());
        // a^3 ≡ 2 a b^2
        let r = a.pow(3).reduce_mod(&conic, "a").unwrap();
        assert_eq!(r, (&a * &b.pow(2)).scale(&int(2)));

        let only_b = b.pow(2);
        assert_eq!(a.reduce_mod(&only_b, "a"), Err(Error::RelationMissingVariable("a".into())));
        let non_monic = &(&a * &b) - &Poly::one(&v2);
        assert_eq!(a.reduce_mod(&non_monic, "a"), Err(Error::NotMonic("a".into())));
    }

    #[test]
    fn sturm_examples() {
        let pos = (Bound::Finite(int(0)), Bound::PosInf);
        let all = (Bound::NegInf, Bound::PosInf);
        let p = Poly::univariate("a", &[int(-2), int(0), int(1)]);
        assert_eq!(real_roots_in_interval(&p, &pos.0, &pos.1).unwrap(), 1);
        let p = Poly::univariate("a", &[int(1), int(0), int(1)]);
        assert_eq!(real_roots_in_interval(&p, &all.0, &all.1).unwrap(), 0);
        let p = Poly::univariate("a", &[int(3), int(-4), int(1)]);
        assert_eq!(real_roots_in_interval(&p, &pos.0, &pos.1).unwrap(), 2);
        assert_eq!(
            real_roots_in_interval(&Poly::zero(&a_only()), &pos.0, &pos.1),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn gcd_examples() {
        let p = Poly::univariate("a", &[int(-2), int(0), int(1)]);
        let q = Poly::univariate("a", &[int(0), int(-2), int(0), int(1)]);
        assert_eq!(gcd_univariate(&[p.clone(), q]).unwrap(), p);
        let a = Poly::univariate("a", &[int(0), int(1)]);
        let a1 = Poly::univariate("a", &[int(1), int(1)]);
        assert_eq!(gcd_univariate(&[a, a1]).unwrap(), Poly::one(&a_only()));
        assert_eq!(gcd_univariate(&[]), Err(Error::EmptyInput));
        assert_eq!(gcd_univariate(&[Poly::zero(&a_only())]), Err(Error::ZeroPolynomial));
        let v = ab();
        let mixed = &Poly::var(&v, 0) + &Poly::var(&v, 1);
        assert_eq!(gcd_univariate(&[mixed]), Err(Error::NotUnivariate));
    }

    #[test]
    fn minors_examples() {
        let v = a_only();
        let a = Poly::var(&v, 0);
        let z = Poly::zero(&v);
        let m = PolyMatrix::new(2, 2, vec![a.clone(), z.clone(), z.clone(), a.clone()]);
        assert_eq!(m.minors(2).unwrap(), vec![a.pow(2)]);
        let m = PolyMatrix::new(2, 2, vec![a.clone(), z.clone(), z.clone(), Poly::one(&v)]);
        assert_eq!(m.minors(1).unwrap(), vec![a.clone(), z.clone(), z, Poly::one(&v)]);
        assert!(matches!(m.minors(3), Err(Error::MinorSizeOutOfRange { .. })));
    }

    #[test]
    fn kato_minors_vanish_on_the_conic() {
        // Oracle: N(a,1) = [[0, M, 0], [0, 0, M], [0, 0, 0]] in 2x2 blocks with
        // M = [[a+1, 1], [1, a-1]], det M = a^2 - 2. Every 3x3 minor of N(a,1)
        // only meets rows 1..4 and columns 3..6, where the matrix is diag(M, M)
        // shifted, and each such minor is a multiple of det M.
        let v = a_only();
        let n = PolyMatrix::linear_combination(&v, &[kato::n1()])
            .unwrap()
            .add(&PolyMatrix::constant(&v, &kato::n2()).unwrap());
        let rel = Poly::univariate("a", &[int(-2), int(0), int(1)]);
        let m3 = n.minors(3).unwrap();
        assert!(m3.iter().any(|p| !p.is_zero()));
        for p in &m3 {
            assert!(p.reduce_mod(&rel, "a").unwrap().is_zero(), "{p}");
        }
        // The unique nonzero 4x4 minor is (det M)^2.
        let m4: Vec<Poly> = n.minors(4).unwrap().into_iter().filter(|p| !p.is_zero()).collect();
        assert_eq!(m4, vec![rel.pow(2)]);
        let g = gcd_univariate(&m4).unwrap();
        let sf = g.to_univariate(0).unwrap().squarefree();
        assert_eq!(Poly::from_univariate(&v, 0, &sf), rel);
        assert_eq!(real_roots_in_interval(&g, &Bound::Finite(int(0)), &Bound::PosInf).unwrap(), 1);
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-4i64..=4, 1..5).prop_map(|cs| {
            Poly::univariate("a", &cs.into_iter().map(int).collect::<Vec<_>>())
        })
    }

    proptest! {
        #[test]
        fn reduce_mod_ignores_multiples_of_rel(p in small_poly(), q in small_poly(),
                                               r in prop::collection::vec(-3i64..=3, 1..3)) {
            let mut cs: Vec<BigRational> = r.into_iter().map(int).collect();
            cs.push(int(1));
            let rel = Poly::univariate("a", &cs);
            let lhs = (&(&p * &rel) + &q).reduce_mod(&rel, "a").unwrap();
            prop_assert_eq!(lhs, q.reduce_mod(&rel, "a").unwrap());
        }

        #[test]
        fn minors_vanish_iff_rank_drops(entries in prop::collection::vec(-2i64..=2, 9), x in -3i64..=3, k in 1usize..=3) {
            // entries are affine in `a`: e + (e mod 2) a
            let v = a_only();
            let ps: Vec<Poly> = entries.iter().map(|&e| Poly::univariate("a", &[int(e), int(e.rem_euclid(2))])).collect();
            let m = PolyMatrix::new(3, 3, ps);
            let at = m.eval(&[int(x)]);
            let all_zero = m.minors(k).unwrap().iter().all(|p| p.eval(&[int(x)]).is_zero());
            prop_assert_eq!(all_zero, at.rank() < k);
            let _ = v;
        }
    }
}

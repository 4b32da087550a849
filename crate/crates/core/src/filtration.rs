//! Increasing and decreasing filtrations, and the monodromy weight
//! filtration of a nilpotent endomorphism.
//!
//! Filtrations store only their jump indices. For an increasing filtration
//! `W`, a key `k` means `W_k` differs from `W_{k-1}`; lookups below the first
//! key give 0 and lookups between keys take the nearest key below. For a
//! decreasing filtration `F`, a key `p` means `F^p` differs from `F^{p+1}`;
//! lookups above the last key give 0 and lookups below take the nearest key
//! above. Weight filtrations are centered at 0; callers shift by the weight.

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::exactalg::{Matrix, Quotient, Scalar, Subspace, Vector};
use crate::Error;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IncFiltration {
    ambient: usize,
    jumps: BTreeMap<i64, Subspace>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecFiltration {
    ambient: usize,
    jumps: BTreeMap<i64, Subspace>,
}

fn check_steps(ambient: usize, steps: &BTreeMap<i64, Subspace>) -> Result<(), Error> {
    if let Some(s) = steps.values().find(|s| s.ambient_dim() != ambient) {
        return Err(Error::DimensionMismatch(format!(
            "filtration step in dimension {} for ambient {ambient}",
            s.ambient_dim()
        )));
    }
    Ok(())
}

impl IncFiltration {
    /// From explicit steps; unspecified indices interpolate from below. The
    /// last step must be the whole space.
    pub fn from_steps(ambient: usize, steps: BTreeMap<i64, Subspace>) -> Result<Self, Error> {
        check_steps(ambient, &steps)?;
        let mut jumps = BTreeMap::new();
        let mut prev = Subspace::zero(ambient);
        for (k, s) in steps {
            if !s.contains_subspace(&prev) {
                return Err(Error::Precondition(format!("W_{k} does not contain the previous step")));
            }
            if s != prev {
                jumps.insert(k, s.clone());
            }
            prev = s;
        }
        if !prev.is_full() {
            return Err(Error::Precondition("increasing filtration is not exhaustive".into()));
        }
        Ok(IncFiltration { ambient, jumps })
    }

    /// One jump at `k`: `W_{k-1} = 0`, `W_k = V`.
    pub fn trivial(ambient: usize, k: i64) -> Self {
        let mut jumps = BTreeMap::new();
        if ambient > 0 {
            jumps.insert(k, Subspace::full(ambient));
        }
        IncFiltration { ambient, jumps }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn jumps(&self) -> &BTreeMap<i64, Subspace> {
        &self.jumps
    }

    pub fn get(&self, k: i64) -> Subspace {
        self.jumps.range(..=k).next_back().map_or_else(|| Subspace::zero(self.ambient), |(_, s)| s.clone())
    }

    pub fn shift(&self, by: i64) -> IncFiltration {
        IncFiltration { ambient: self.ambient, jumps: self.jumps.iter().map(|(k, s)| (k + by, s.clone())).collect() }
    }

    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut prev = 0;
        self.jumps
            .iter()
            .map(|(&k, s)| {
                let d = s.dim() - prev;
                prev = s.dim();
                (k, d)
            })
            .collect()
    }

    /// `gr_k = W_k / W_{k-1}` with its canonical lifts.
    pub fn graded(&self, k: i64) -> Quotient {
        Quotient::new(&self.get(k), &self.get(k - 1)).expect("nested steps")
    }

    pub fn index_range(&self) -> Option<(i64, i64)> {
        Some((*self.jumps.keys().next()?, *self.jumps.keys().next_back()?))
    }

    pub fn conj(&self) -> IncFiltration {
        IncFiltration { ambient: self.ambient, jumps: self.jumps.iter().map(|(k, s)| (*k, s.conj())).collect() }
    }

    /// Intersects every step with `V_Q ⊗ C`.
    pub fn rational_part(&self) -> BTreeMap<i64, Subspace> {
        self.jumps.iter().map(|(k, s)| (*k, s.rational_part())).collect()
    }
}

impl DecFiltration {
    /// From explicit steps; unspecified indices interpolate from above. The
    /// first (lowest-index) step must be the whole space.
    pub fn from_steps(ambient: usize, steps: BTreeMap<i64, Subspace>) -> Result<Self, Error> {
        check_steps(ambient, &steps)?;
        if let Some((p, s)) = steps.iter().next() {
            if !s.is_full() {
                return Err(Error::Precondition(format!("F^{p}, the lowest given step, is not the whole space")));
            }
        } else if ambient > 0 {
            return Err(Error::Precondition("empty decreasing filtration".into()));
        }
        let mut jumps = BTreeMap::new();
        let mut next = Subspace::zero(ambient);
        for (p, s) in steps.into_iter().rev() {
            if !s.contains_subspace(&next) {
                return Err(Error::Precondition(format!("F^{p} does not contain F^{}", p + 1)));
            }
            if s != next {
                jumps.insert(p, s.clone());
            }
            next = s;
        }
        Ok(DecFiltration { ambient, jumps })
    }

    /// `F^p = V` for `p <= k`, 0 above.
    pub fn trivial(ambient: usize, k: i64) -> Self {
        let mut jumps = BTreeMap::new();
        if ambient > 0 {
            jumps.insert(k, Subspace::full(ambient));
        }
        DecFiltration { ambient, jumps }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn jumps(&self) -> &BTreeMap<i64, Subspace> {
        &self.jumps
    }

    pub fn get(&self, p: i64) -> Subspace {
        self.jumps.range(p..).next().map_or_else(|| Subspace::zero(self.ambient), |(_, s)| s.clone())
    }

    pub fn index_range(&self) -> Option<(i64, i64)> {
        Some((*self.jumps.keys().next()?, *self.jumps.keys().next_back()?))
    }

    /// `dim F^p / F^{p+1}` at every jump.
    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        self.jumps.iter().map(|(&p, s)| (p, s.dim() - self.get(p + 1).dim())).collect()
    }

    pub fn map(&self, m: &Matrix) -> DecFiltration {
        assert!(m.is_square() && m.rows() == self.ambient);
        let steps = self.jumps.iter().map(|(p, s)| (*p, s.image_under(m))).collect();
        DecFiltration::from_steps(self.ambient, steps).expect("image of a filtration under an automorphism")
    }

    /// Builds a normalized filtration from `p -> F^p` over `lo..=hi`, with
    /// `F^lo` the whole space.
    fn from_range(ambient: usize, lo: i64, hi: i64, f: impl Fn(i64) -> Subspace) -> DecFiltration {
        let steps = (lo..=hi).map(|p| (p, f(p))).collect();
        DecFiltration::from_steps(ambient, steps).expect("nested by construction")
    }

    /// `N F^p ⊆ F^{p-1}` for all `p`; returns a violating vector otherwise.
    pub fn transversality_witness(&self, n: &Matrix) -> Option<Vector> {
        self.jumps.iter().find_map(|(p, s)| {
            let target = self.get(p - 1);
            s.basis().iter().find(|v| !target.contains(&n.apply(v))).cloned()
        })
    }
}

/// A nilpotent endomorphism together with its nilpotency index: the
/// smallest `m` with `N^{m+1} = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NilpotentEndo {
    matrix: Matrix,
    index: u32,
}

impl NilpotentEndo {
    pub fn new(matrix: Matrix) -> Result<Self, Error> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch("nilpotent endomorphism must be square".into()));
        }
        let mut p = matrix.clone();
        for m in 0..=matrix.rows() as u32 {
            if p.is_zero() {
                return Ok(NilpotentEndo { matrix, index: m });
            }
            p = p.mul(&matrix);
        }
        Err(Error::NotNilpotent)
    }

    pub fn zero(n: usize) -> Self {
        NilpotentEndo { matrix: Matrix::zeros(n, n), index: 0 }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn nilpotency_index(&self) -> u32 {
        self.index
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn scale(&self, s: &Scalar) -> NilpotentEndo {
        assert!(!num_traits::Zero::is_zero(s));
        NilpotentEndo { matrix: self.matrix.scale(s), index: self.index }
    }
}

/// Monodromy weight filtration centered at 0, by the closed formula
/// `W_k = Σ_{j ≥ max(0,-k)} ker N^{k+j+1} ∩ im N^j`.
///
/// Both defining properties are re-verified before returning.
pub fn weight_filtration(n: &NilpotentEndo) -> Result<IncFiltration, Error> {
    let w = weight_filtration_closed_form(n);
    verify_weight_axioms(n, &w)?;
    Ok(w)
}

fn weight_filtration_closed_form(n: &NilpotentEndo) -> IncFiltration {
    let dim = n.dim();
    let l = n.index as i64;
    let powers: Vec<Matrix> = (0..=2 * l as u32 + 1).map(|e| n.matrix.pow(e)).collect();
    let kernels: Vec<Subspace> = powers.iter().map(Matrix::kernel).collect();
    let images: Vec<Subspace> = powers.iter().take(l as usize + 1).map(Matrix::image).collect();
    let mut steps = BTreeMap::new();
    for k in -l..=l {
        let mut wk = Subspace::zero(dim);
        for j in 0.max(-k)..=l {
            let kern = &kernels[(k + j + 1) as usize];
            wk = wk.sum(&kern.intersection(&images[j as usize]));
        }
        steps.insert(k, wk);
    }
    IncFiltration::from_steps(dim, steps).expect("weight filtration steps are nested")
}

/// Same filtration by Deligne's recursion: `W_{l-1} = ker N^l`,
/// `W_{-l} = im N^l`, then recurse on `ker N^l / im N^l`.
pub fn weight_filtration_recursive(n: &NilpotentEndo) -> IncFiltration {
    let dim = n.dim();
    let steps = recursive_steps(n.matrix(), &Subspace::full(dim), &Subspace::zero(dim), n.index as i64);
    IncFiltration::from_steps(dim, steps).expect("recursive steps are nested")
}

/// Weight filtration of `N` acting on `top / bottom` (both N-stable), with
/// `N^{l+1} = 0` there, returned as preimages in the ambient space.
fn recursive_steps(n: &Matrix, top: &Subspace, bottom: &Subspace, l: i64) -> BTreeMap<i64, Subspace> {
    let mut steps = BTreeMap::new();
    if l <= 0 {
        steps.insert(-1, bottom.clone());
        steps.insert(0, top.clone());
        return steps;
    }
    let nl = n.pow(l as u32);
    // ker and im of N^l on top/bottom, pulled back to the ambient space.
    let ker = bottom.preimage_under(&nl).intersection(top);
    let im = top.image_under(&nl).sum(bottom);
    steps.insert(l, top.clone());
    steps.insert(-l - 1, bottom.clone());
    let inner = if l >= 2 {
        recursive_steps(n, &ker, &im, l - 1)
    } else {
        let mut s = BTreeMap::new();
        s.insert(0, ker.clone());
        s.insert(-1, im.clone());
        s
    };
    for (k, s) in inner {
        if k >= -l && k < l {
            steps.insert(k, s);
        }
    }
    steps.insert(l - 1, ker);
    steps.insert(-l, im);
    steps
}

/// Checks `N W_k ⊆ W_{k-2}` and that `N^k: gr_k → gr_{-k}` is an isomorphism for `k ≥ 0`.
pub fn verify_weight_axioms(n: &NilpotentEndo, w: &IncFiltration) -> Result<(), Error> {
    let Some((lo, hi)) = w.index_range() else { return Ok(()) };
    let m = n.matrix();
    for k in lo..=hi {
        if !w.get(k - 2).contains_subspace(&w.get(k).image_under(m)) {
            return Err(Error::Precondition(format!("N W_{k} is not contained in W_{}", k - 2)));
        }
    }
    let bound = lo.abs().max(hi.abs());
    for k in 0..=bound {
        let gk = w.get(k).dim() - w.get(k - 1).dim();
        let gmk = w.get(-k).dim() - w.get(-k - 1).dim();
        if gk != gmk {
            return Err(Error::Precondition(format!("dim gr_{k} = {gk} but dim gr_-{k} = {gmk}")));
        }
        let below = w.get(-k - 1);
        let rank = w.get(k).image_under(&m.pow(k as u32)).sum(&below).dim() - below.dim();
        if rank != gk {
            return Err(Error::Precondition(format!("N^{k}: gr_{k} -> gr_-{k} is not an isomorphism")));
        }
    }
    Ok(())
}

pub fn graded_dims(w: &IncFiltration) -> BTreeMap<i64, usize> {
    w.graded_dims()
}

/// The filtration induced by `f` on `gr_k^W`, in the coordinates of the
/// returned quotient's lifts.
pub fn induce_on_graded(f: &DecFiltration, w: &IncFiltration, k: i64) -> Result<(DecFiltration, Quotient), Error> {
    if f.ambient_dim() != w.ambient_dim() {
        return Err(Error::DimensionMismatch("filtrations on different spaces".into()));
    }
    let q = w.graded(k);
    let wk = w.get(k);
    let Some((lo, hi)) = f.index_range() else {
        return Ok((DecFiltration::trivial(q.dim(), 0), q));
    };
    let induced = DecFiltration::from_range(q.dim(), lo, hi + 1, |p| {
        q.project(&f.get(p).intersection(&wk)).expect("W_k ∩ F^p lies in W_k")
    });
    Ok((induced, q))
}

impl Serialize for IncFiltration {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_steps(&self.jumps, s)
    }
}

impl Serialize for DecFiltration {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_steps(&self.jumps, s)
    }
}

// {"k": [basis vectors]} with string rationals.
fn serialize_steps<S: Serializer>(jumps: &BTreeMap<i64, Subspace>, s: S) -> Result<S::Ok, S::Error> {
    let mut m = s.serialize_map(Some(jumps.len()))?;
    for (k, sub) in jumps {
        m.serialize_entry(&k.to_string(), sub)?;
    }
    m.end()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::vector_from_i64;
    use crate::fixtures::kato;

    fn span(ambient: usize, idx: &[usize]) -> Subspace {
        Subspace::span(ambient, idx.iter().map(|&i| Subspace::unit_vector(ambient, i)).collect())
    }

    #[test]
    fn jordan_block_of_size_two() {
        let n = NilpotentEndo::new(Matrix::from_i64(&[&[0, 1], &[0, 0]])).unwrap();
        let w = weight_filtration(&n).unwrap();
        assert_eq!(w.get(-2), Subspace::zero(2));
        assert_eq!(w.get(-1), span(2, &[0]));
        assert_eq!(w.get(0), span(2, &[0]));
        assert_eq!(w.get(1), Subspace::full(2));
        assert_eq!(w, weight_filtration_recursive(&n));
    }

    #[test]
    fn zero_map() {
        let n = NilpotentEndo::new(Matrix::zeros(3, 3)).unwrap();
        assert_eq!(n.nilpotency_index(), 0);
        let w = weight_filtration(&n).unwrap();
        assert_eq!(w.get(-1), Subspace::zero(3));
        assert_eq!(w.get(0), Subspace::full(3));
        assert_eq!(graded_dims(&w), BTreeMap::from([(0, 3)]));
    }

    #[test]
    fn kato_at_one_one() {
        let n = NilpotentEndo::new(kato::n1().add(&kato::n2())).unwrap();
        let w = weight_filtration(&n).unwrap();
        assert_eq!(w.get(-3), Subspace::zero(6));
        assert_eq!(w.get(-2), span(6, &[0, 1]));
        assert_eq!(w.get(-1), span(6, &[0, 1]));
        assert_eq!(w.get(0), span(6, &[0, 1, 2, 3]));
        assert_eq!(w.get(1), span(6, &[0, 1, 2, 3]));
        assert_eq!(w.get(2), Subspace::full(6));
        assert_eq!(graded_dims(&w), BTreeMap::from([(-2, 2), (0, 2), (2, 2)]));
        assert_eq!(w, weight_filtration_recursive(&n));
    }

    #[test]
    fn jordan_three_block() {
        let n = NilpotentEndo::new(Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])).unwrap();
        let w = weight_filtration(&n).unwrap();
        assert_eq!(graded_dims(&w), BTreeMap::from([(-2, 1), (0, 1), (2, 1)]));
        assert_eq!(w, weight_filtration_recursive(&n));
    }

    #[test]
    fn not_nilpotent() {
        assert_eq!(NilpotentEndo::new(Matrix::identity(2)), Err(Error::NotNilpotent));
    }

    #[test]
    fn axioms_reject_wrong_filtration() {
        let n = NilpotentEndo::new(Matrix::from_i64(&[&[0, 1], &[0, 0]])).unwrap();
        let w = IncFiltration::trivial(2, 0);
        assert!(verify_weight_axioms(&n, &w).is_err());
    }

    #[test]
    fn induced_on_kato_graded_pieces() {
        let n = NilpotentEndo::new(kato::n1().add(&kato::n2())).unwrap();
        let w = weight_filtration(&n).unwrap();
        let f = kato::hodge_filtration();
        let (f2, q2) = induce_on_graded(&f, &w, 2).unwrap();
        assert_eq!(q2.lifts(), &[Subspace::unit_vector(6, 4), Subspace::unit_vector(6, 5)]);
        assert_eq!(f2.get(1), Subspace::full(2));
        assert_eq!(f2.get(2), Subspace::zero(2));
        let (f0, _) = induce_on_graded(&f, &w, 0).unwrap();
        assert_eq!(f0.get(0), Subspace::full(2));
        assert_eq!(f0.get(1), Subspace::zero(2));
        let (fm2, _) = induce_on_graded(&f, &w, -2).unwrap();
        assert_eq!(fm2.graded_dims(), BTreeMap::from([(-1, 2)]));
    }

    #[test]
    fn induced_with_trivial_weight_is_identity() {
        let f = kato::hodge_filtration();
        let w = IncFiltration::trivial(6, 0);
        let (g, q) = induce_on_graded(&f, &w, 0).unwrap();
        assert_eq!(q.dim(), 6);
        assert_eq!(g, f);
    }

    #[test]
    fn filtration_lookups() {
        let f = kato::hodge_filtration();
        assert_eq!(f.get(-5), Subspace::full(6));
        assert_eq!(f.get(2), Subspace::zero(6));
        assert_eq!(f.graded_dims(), BTreeMap::from([(-1, 2), (0, 2), (1, 2)]));
        let bad = BTreeMap::from([(0, span(6, &[0])), (1, Subspace::full(6))]);
        assert!(DecFiltration::from_steps(6, bad).is_err());
        let v = vector_from_i64(&[1, 0]);
        let w = IncFiltration::from_steps(2, BTreeMap::from([(0, Subspace::span(2, vec![v])), (3, Subspace::full(2))])).unwrap();
        assert_eq!(w.get(2).dim(), 1);
        assert_eq!(w.get(3).dim(), 2);
        assert_eq!(w.shift(1).get(1).dim(), 1);
        assert_eq!(
            serde_json::to_string(&w).unwrap(),
            r#"{"0":[["1","0"]],"3":[["1","0"],["0","1"]]}"#
        );
    }
}

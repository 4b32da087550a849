use num_traits::{One, Zero};
use serde::Serialize;

use super::{Matrix, Scalar, Vector};
use crate::Error;

/// A subspace of `K^n` (K = Q(i)) held by its reduced row-echelon basis.
///
/// The echelon basis is unique, so `==` is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient).to_rows() }
    }

    pub fn unit_vector(ambient: usize, i: usize) -> Vector {
        let mut v = vec![Scalar::zero(); ambient];
        v[i] = Scalar::one();
        v
    }

    /// The line spanned by the `i`-th standard basis vector.
    pub fn unit(ambient: usize, i: usize) -> Self {
        Subspace::span(ambient, vec![Subspace::unit_vector(ambient, i)])
    }

    pub fn span(ambient: usize, vectors: Vec<Vector>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "span: vector length mismatch");
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let (r, pivots) = Matrix::from_rows(vectors).expect("uniform rows").rref();
        Subspace { ambient, basis: r.to_rows().into_iter().take(pivots.len()).collect() }
    }

    pub fn try_span(ambient: usize, vectors: Vec<Vector>) -> Result<Self, Error> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {ambient}",
                v.len()
            )));
        }
        Ok(Subspace::span(ambient, vectors))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis.iter().map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero echelon row"))
    }

    fn check_ambient(&self, o: &Subspace) -> Result<(), Error> {
        if self.ambient != o.ambient {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient, o.ambient
            )));
        }
        Ok(())
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let coords: Vector = self.pivots().map(|p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in rest.iter_mut().zip(b) {
                *r -= &(c * x);
            }
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        o.ambient == self.ambient && o.basis.iter().all(|v| self.contains(v))
    }

    pub fn try_sum(&self, o: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(o)?;
        Ok(self.sum(o))
    }

    pub fn try_intersection(&self, o: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(o)?;
        Ok(self.intersection(o))
    }

    pub fn try_contains_subspace(&self, o: &Subspace) -> Result<bool, Error> {
        self.check_ambient(o)?;
        Ok(self.contains_subspace(o))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.ambient, o.ambient, "subspace sum: ambient mismatch");
        Subspace::span(self.ambient, self.basis.iter().chain(&o.basis).cloned().collect())
    }

    /// Annihilator under the dot pairing `x . y = sum x_i y_i`.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        Matrix::from_rows(self.basis.clone()).expect("uniform rows").kernel()
    }

    pub fn intersection(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.ambient, o.ambient, "subspace intersection: ambient mismatch");
        if self.is_full() {
            return o.clone();
        }
        if o.is_full() {
            return self.clone();
        }
        self.annihilator().sum(&o.annihilator()).annihilator()
    }

    pub fn conj(&self) -> Subspace {
        // conj of an echelon basis is still the echelon basis (pivots are 1).
        Subspace { ambient: self.ambient, basis: self.basis.iter().map(|v| v.iter().map(Scalar::conj).collect()).collect() }
    }

    pub fn is_real(&self) -> bool {
        self.basis.iter().all(|v| v.iter().all(Scalar::is_real))
    }

    /// `U ∩ conj(U)`: the complexification of the rational points of `U`.
    pub fn rational_part(&self) -> Subspace {
        self.intersection(&self.conj())
    }

    pub fn image_under(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::span(m.rows(), self.basis.iter().map(|v| m.apply(v)).collect())
    }

    /// `{x : m x ∈ self}`.
    pub fn preimage_under(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient);
        let ann = self.annihilator();
        if ann.is_zero() {
            return Subspace::full(m.cols());
        }
        Matrix::from_rows(ann.basis.clone()).expect("uniform rows").mul(m).kernel()
    }

    /// Re-expresses a subspace of `K^m` given in some basis `lifts` (as columns) in
    /// ambient coordinates.
    pub fn from_coordinates(ambient: usize, lifts: &[Vector], coords: &Subspace) -> Subspace {
        assert_eq!(coords.ambient, lifts.len());
        let vecs = coords.basis.iter().map(|c| combine(ambient, lifts, c)).collect();
        Subspace::span(ambient, vecs)
    }
}

/// `sum_i c_i v_i`.
pub fn combine(ambient: usize, vectors: &[Vector], coeffs: &[Scalar]) -> Vector {
    let mut out = vec![Scalar::zero(); ambient];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += &(c * x);
        }
    }
    out
}

/// The quotient `big / sub` with a canonical set of lifts.
///
/// Lifts are the echelon basis of `big` reduced modulo `sub`; they vanish on
/// the pivot columns of `sub`.
#[derive(Clone, Debug)]
pub struct Quotient {
    ambient: usize,
    sub: Subspace,
    lifts: Subspace,
}

impl Quotient {
    pub fn new(big: &Subspace, sub: &Subspace) -> Result<Self, Error> {
        big.check_ambient(sub)?;
        if !big.contains_subspace(sub) {
            return Err(Error::Precondition("quotient: subspace not contained".into()));
        }
        let reduced = big.basis.iter().map(|v| sub.reduce(v)).collect();
        let lifts = Subspace::span(big.ambient, reduced);
        Ok(Quotient { ambient: big.ambient, sub: sub.clone(), lifts })
    }

    pub fn dim(&self) -> usize {
        self.lifts.dim()
    }

    pub fn lifts(&self) -> &[Vector] {
        self.lifts.basis()
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    /// Coordinates of the class of `v`; `None` if `v` is outside `big`.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        self.lifts.coordinates(&self.sub.reduce(v))
    }

    pub fn lift(&self, coords: &[Scalar]) -> Vector {
        combine(self.ambient, self.lifts.basis(), coords)
    }

    /// Image of `u ⊆ big` in the quotient, as a subspace of `K^dim`.
    pub fn project(&self, u: &Subspace) -> Option<Subspace> {
        let vecs: Option<Vec<Vector>> = u.basis.iter().map(|v| self.coords(v)).collect();
        Some(Subspace::span(self.dim(), vecs?))
    }

    /// Preimage in `big` of a subspace of the quotient.
    pub fn unproject(&self, u: &Subspace) -> Subspace {
        Subspace::from_coordinates(self.ambient, self.lifts.basis(), u).sum(&self.sub)
    }
}

impl Subspace {
    /// Clears the pivot columns of `v` using the echelon basis.
    fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (b, p) in self.basis.iter().zip(self.pivots().collect::<Vec<_>>()) {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o -= &(&c * x);
            }
        }
        out
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}

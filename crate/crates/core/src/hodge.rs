//! Pure polarized Hodge structures, mixed Hodge structures, and mixed Hodge
//! structures polarized by a nilpotent endomorphism.
//!
//! The real structure is the one given by the standard coordinates: complex
//! conjugation acts entrywise. The Weil operator acts on `H^{p,q}` by
//! `i^{p-q}`, and the polarization on the primitive part of `gr_{w+k}` is
//! `S(x, N^k y)` with no extra sign.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exactalg::{combine, Matrix, Scalar, Subspace, Vector};
use crate::filtration::{induce_on_graded, weight_filtration, DecFiltration, IncFiltration, NilpotentEndo};
use crate::Error;

/// A `(-1)^w`-symmetric bilinear form `S(x, y) = x^T S y`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BilinearForm {
    matrix: Matrix,
    parity: i8,
}

impl BilinearForm {
    /// Checks the matrix is square, rational, `(-1)^weight`-symmetric and nondegenerate.
    pub fn new(matrix: Matrix, weight: i64) -> Result<Self, Error> {
        let form = BilinearForm::unchecked(matrix, weight);
        form.validate()?;
        Ok(form)
    }

    /// No checks; see [`BilinearForm::validate`].
    pub fn unchecked(matrix: Matrix, weight: i64) -> Self {
        BilinearForm { matrix, parity: if weight.rem_euclid(2) == 0 { 1 } else { -1 } }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let m = &self.matrix;
        if !m.is_square() {
            return Err(Error::InvalidDatum { invariant: "form_square", detail: format!("{}x{}", m.rows(), m.cols()) });
        }
        if !m.is_real() {
            return Err(Error::InvalidDatum { invariant: "form_rational", detail: "form has non-real entries".into() });
        }
        let expected = if self.parity == 1 { m.clone() } else { m.scale(&Scalar::from_int(-1)) };
        if m.transpose() != expected {
            let kind = if self.parity == 1 { "symmetric" } else { "antisymmetric" };
            return Err(Error::InvalidDatum { invariant: "form_parity", detail: format!("form is not {kind}") });
        }
        if m.determinant().is_zero() {
            return Err(Error::InvalidDatum { invariant: "form_nondegenerate", detail: "det S = 0".into() });
        }
        Ok(())
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `(-1)^w`.
    pub fn parity_sign(&self) -> i8 {
        self.parity
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let sy = self.matrix.apply(y);
        x.iter().zip(&sy).fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `S(N x, y) + S(x, N y) = 0` for all `x, y`.
    pub fn is_infinitesimal_isometry(&self, n: &Matrix) -> bool {
        self.isometry_defect(n).is_zero()
    }

    fn isometry_defect(&self, n: &Matrix) -> Matrix {
        n.transpose().mul(&self.matrix).add(&self.matrix.mul(n))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HodgeDatum {
    pub weight: i64,
    pub form: BilinearForm,
    pub filtration: DecFiltration,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    Decomposition,
    Orthogonality,
    Positivity,
    Mhs,
    Transversality,
    Isometry,
    PrimitivePolarization,
}

impl Clause {
    pub fn name(self) -> &'static str {
        match self {
            Clause::Decomposition => "decomposition",
            Clause::Orthogonality => "orthogonality",
            Clause::Positivity => "positivity",
            Clause::Mhs => "mhs",
            Clause::Transversality => "transversality",
            Clause::Isometry => "isometry",
            Clause::PrimitivePolarization => "primitive_polarization",
        }
    }
}

/// The Hermitian Gram matrix of `i^{p-q} S(v, conj v)` on one `H^{p,q}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GramRecord {
    /// `k` of the primitive part this came from, when checking a polarized MHS.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    pub p: i64,
    pub q: i64,
    pub gram: Matrix,
    #[serde(serialize_with = "ser_rationals")]
    pub leading_minors: Vec<BigRational>,
}

fn ser_rationals<S: serde::Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(ToString::to_string))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub failed_clause: Option<Clause>,
    pub witness: Option<Vector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub evidence: Vec<GramRecord>,
}

impl Verdict {
    fn pass(evidence: Vec<GramRecord>) -> Self {
        Verdict { ok: true, failed_clause: None, witness: None, detail: None, evidence }
    }

    fn fail(clause: Clause, witness: Option<Vector>, detail: String, evidence: Vec<GramRecord>) -> Self {
        Verdict { ok: false, failed_clause: Some(clause), witness, detail: Some(detail), evidence }
    }
}

/// Indices `p` over which `F^p` and `F^{w-p+1}` both need checking.
fn hodge_range(f: &DecFiltration, w: i64) -> Option<(i64, i64)> {
    let (lo, hi) = f.index_range()?;
    Some((lo.min(w - hi) - 1, hi.max(w - lo) + 1))
}

/// `F^p ⊕ conj F^{w-p+1} = H` for all `p`.
fn decomposition(f: &DecFiltration, w: i64) -> Result<(), (Vector, String)> {
    let n = f.ambient_dim();
    let Some((lo, hi)) = hodge_range(f, w) else { return Ok(()) };
    for p in lo..=hi {
        let a = f.get(p);
        let b = f.get(w - p + 1).conj();
        let meet = a.intersection(&b);
        if let Some(v) = meet.basis().first() {
            return Err((v.clone(), format!("F^{p} meets conj F^{}", w - p + 1)));
        }
        if a.dim() + b.dim() != n {
            let s = a.sum(&b);
            let v = (0..n).map(|i| Subspace::unit_vector(n, i)).find(|e| !s.contains(e)).expect("sum is proper");
            return Err((v, format!("F^{p} + conj F^{} is not the whole space", w - p + 1)));
        }
    }
    Ok(())
}

/// `S(F^p, F^{w-p+1}) = 0` for all `p`.
fn orthogonality(form: &BilinearForm, f: &DecFiltration, w: i64) -> Result<(), (Vector, String)> {
    let Some((lo, hi)) = hodge_range(f, w) else { return Ok(()) };
    for p in lo..=hi {
        let b = f.get(w - p + 1);
        for x in f.get(p).basis() {
            if b.basis().iter().any(|y| !form.eval(x, y).is_zero()) {
                return Err((x.clone(), format!("S(F^{p}, F^{}) != 0", w - p + 1)));
            }
        }
    }
    Ok(())
}

/// A vector of some `F^p` pairing nontrivially with `F^{w-p+1}`.
pub fn first_relation_witness(form: &BilinearForm, f: &DecFiltration, w: i64) -> Option<Vector> {
    orthogonality(form, f, w).err().map(|(v, _)| v)
}

/// Sylvester's criterion on a Hermitian matrix. On failure returns the
/// leading minors computed so far and a vector `u` with `u* G u <= 0`.
fn sylvester(g: &Matrix) -> (Vec<BigRational>, Option<Vector>) {
    let mut minors = Vec::new();
    for k in 1..=g.rows() {
        let d = g.leading(k).determinant();
        debug_assert!(d.is_real(), "Hermitian minors are real");
        let pos = d.re.is_positive();
        minors.push(d.re);
        if !pos {
            let mut u = if k == 1 {
                Vec::new()
            } else {
                let col: Vector = (0..k - 1).map(|i| -g[(i, k - 1)].clone()).collect();
                g.leading(k - 1).solve(&col).expect("leading block is positive definite")
            };
            u.push(Scalar::one());
            u.resize(g.rows(), Scalar::zero());
            return (minors, Some(u));
        }
    }
    (minors, None)
}

/// Full check of the Hodge-Riemann conditions.
pub fn is_pure_polarized(h: &HodgeDatum) -> Verdict {
    pure_polarized_impl(h, None)
}

fn pure_polarized_impl(h: &HodgeDatum, k: Option<i64>) -> Verdict {
    let (f, w, form) = (&h.filtration, h.weight, &h.form);
    if let Err((v, d)) = decomposition(f, w) {
        return Verdict::fail(Clause::Decomposition, Some(v), d, Vec::new());
    }
    if let Err((v, d)) = orthogonality(form, f, w) {
        return Verdict::fail(Clause::Orthogonality, Some(v), d, Vec::new());
    }
    let mut evidence = Vec::new();
    let Some((lo, hi)) = f.index_range() else { return Verdict::pass(evidence) };
    for p in lo..=hi {
        let q = w - p;
        let hpq = f.get(p).intersection(&f.get(q).conj());
        if hpq.is_zero() {
            continue;
        }
        let basis = hpq.basis();
        let c = Scalar::i_pow(p - q);
        let rows = basis
            .iter()
            .map(|x| basis.iter().map(|y| &c * &form.eval(x, &y.iter().map(Scalar::conj).collect::<Vector>())).collect())
            .collect();
        let gram = Matrix::from_rows(rows).expect("square Gram");
        let (leading_minors, bad) = sylvester(&gram);
        evidence.push(GramRecord { k, p, q, gram, leading_minors });
        if let Some(u) = bad {
            let coeffs: Vector = u.iter().map(Scalar::conj).collect();
            let x = combine(f.ambient_dim(), basis, &coeffs);
            return Verdict::fail(
                Clause::Positivity,
                Some(x),
                format!("i^{} S(x, conj x) <= 0 on H^{p},{q}", p - q),
                evidence,
            );
        }
    }
    Verdict::pass(evidence)
}

/// Every `gr_k^W` with the induced filtration is pure of weight `k`.
pub fn is_mhs(w: &IncFiltration, f: &DecFiltration) -> Verdict {
    if w.ambient_dim() != f.ambient_dim() {
        return Verdict::fail(Clause::Mhs, None, "filtrations on different spaces".into(), Vec::new());
    }
    if w.jumps().values().any(|s| !s.is_real()) {
        return Verdict::fail(Clause::Mhs, None, "W is not defined over Q".into(), Vec::new());
    }
    for &k in w.jumps().keys() {
        let (fk, q) = induce_on_graded(f, w, k).expect("same ambient");
        if let Err((v, d)) = decomposition(&fk, k) {
            return Verdict::fail(Clause::Mhs, Some(q.lift(&v)), format!("gr_{k}: {d}"), Vec::new());
        }
    }
    Verdict::pass(Vec::new())
}

/// `(W, F)` is a mixed Hodge structure polarized by `n` and `s`, with `W`
/// the weight filtration of `n` centered at `weight`.
pub fn is_polarized_mhs_by_n(
    w: &IncFiltration,
    f: &DecFiltration,
    n: &NilpotentEndo,
    s: &BilinearForm,
    weight: i64,
) -> Result<Verdict, Error> {
    if !n.matrix().is_real() {
        return Err(Error::Precondition("N must be defined over Q".into()));
    }
    if f.ambient_dim() != n.dim() || s.dim() != n.dim() {
        return Err(Error::DimensionMismatch("form, filtration and N disagree in rank".into()));
    }
    if *w != weight_filtration(n)?.shift(weight) {
        return Err(Error::Precondition(format!("W is not the weight filtration of N centered at {weight}")));
    }
    let mhs = is_mhs(w, f);
    if !mhs.ok {
        return Ok(mhs);
    }
    if let Some(v) = f.transversality_witness(n.matrix()) {
        return Ok(Verdict::fail(Clause::Transversality, Some(v), "N F^p is not inside F^(p-1)".into(), Vec::new()));
    }
    let defect = s.isometry_defect(n.matrix());
    if let Some((i, j)) = first_nonzero(&defect) {
        return Ok(Verdict::fail(
            Clause::Isometry,
            Some(Subspace::unit_vector(n.dim(), i)),
            format!("S(N e_{}, e_{}) + S(e_{}, N e_{}) != 0", i + 1, j + 1, i + 1, j + 1),
            Vec::new(),
        ));
    }
    let mut evidence = Vec::new();
    for k in 0..=n.nilpotency_index() as i64 {
        let Some(prim) = primitive_datum(w, f, n, s, weight, k) else { continue };
        let v = pure_polarized_impl(&prim.datum, Some(k));
        evidence.extend(v.evidence);
        if !v.ok {
            let witness = v.witness.map(|c| prim.to_ambient(&c));
            let detail = format!("primitive part of gr_{}: {}", weight + k, v.detail.unwrap_or_default());
            return Ok(Verdict::fail(Clause::PrimitivePolarization, witness, detail, evidence));
        }
    }
    Ok(Verdict::pass(evidence))
}

fn first_nonzero(m: &Matrix) -> Option<(usize, usize)> {
    (0..m.rows()).flat_map(|i| (0..m.cols()).map(move |j| (i, j))).find(|&(i, j)| !m[(i, j)].is_zero())
}

/// The primitive part `P = ker(N^{k+1}: gr_{w+k} -> gr_{w-k-2})` as a Hodge
/// datum of weight `w+k`, in the coordinates of a rational basis of `P`.
pub struct PrimitivePart {
    pub datum: HodgeDatum,
    /// Ambient lifts of the chosen basis of `P`.
    pub basis: Vec<Vector>,
}

impl PrimitivePart {
    pub fn to_ambient(&self, coords: &[Scalar]) -> Vector {
        let n = self.basis.first().map_or(0, Vec::len);
        combine(n, &self.basis, coords)
    }
}

pub fn primitive_datum(
    w: &IncFiltration,
    f: &DecFiltration,
    n: &NilpotentEndo,
    s: &BilinearForm,
    weight: i64,
    k: i64,
) -> Option<PrimitivePart> {
    let top = weight + k;
    let (fk, quot) = induce_on_graded(f, w, top).ok()?;
    if quot.dim() == 0 {
        return None;
    }
    let nk = n.matrix().pow(k as u32);
    let nk1 = nk.mul(n.matrix());
    let p_amb = w.get(top).intersection(&w.get(weight - k - 3).preimage_under(&nk1));
    let p = quot.project(&p_amb).expect("P lies in W");
    if p.is_zero() {
        return None;
    }
    let basis: Vec<Vector> = p.basis().iter().map(|c| quot.lift(c)).collect();
    let rows = basis.iter().map(|x| basis.iter().map(|y| s.eval(x, &nk.apply(y))).collect()).collect();
    let form = BilinearForm::unchecked(Matrix::from_rows(rows).expect("square"), top);
    let steps: BTreeMap<i64, Subspace> = match fk.index_range() {
        None => BTreeMap::new(),
        Some((lo, hi)) => (lo..=hi + 1)
            .map(|q| {
                let vecs = fk.get(q).intersection(&p).basis().iter().map(|v| p.coordinates(v).expect("inside P")).collect();
                (q, Subspace::span(p.dim(), vecs))
            })
            .collect(),
    };
    let filtration = DecFiltration::from_steps(p.dim(), steps).expect("induced filtration");
    Some(PrimitivePart { datum: HodgeDatum { weight: top, form, filtration }, basis })
}

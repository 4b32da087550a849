//! Pre-PLH data, period-domain membership and nilpotent-orbit certificates.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::cone::{constancy_analysis, Constancy, JumpWitness, MonodromyCone, SampleJump};
use crate::exactalg::{Matrix, Scalar, Vector};
use crate::filtration::{weight_filtration, DecFiltration, NilpotentEndo};
use crate::hodge::{self, is_polarized_mhs_by_n, is_pure_polarized, BilinearForm, Clause, GramRecord, HodgeDatum};
use crate::Error;

/// Values of `t` at which `exp(itN) F` is re-checked after a certificate.
pub const PROBE_TIMES: [i64; 3] = [10, 100, 1000];

/// Weight, Hodge numbers, polarization, Hodge filtration and cone generators.
///
/// The generators follow the sign convention `res_i(∇) = -N_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrePLHDatum {
    pub rank: usize,
    pub weight: i64,
    pub hodge_numbers: BTreeMap<(i64, i64), usize>,
    pub form: Matrix,
    pub filtration: DecFiltration,
    pub nilpotents: Vec<Matrix>,
    pub names: Vec<String>,
}

impl PrePLHDatum {
    pub const MONODROMY_SIGN: i8 = crate::MONODROMY_SIGN;

    pub fn form(&self) -> BilinearForm {
        BilinearForm::unchecked(self.form.clone(), self.weight)
    }

    pub fn cone(&self) -> Result<MonodromyCone, Error> {
        MonodromyCone::new(self.nilpotents.clone(), self.names.clone())
    }

    pub fn hodge_datum(&self, f: &DecFiltration) -> HodgeDatum {
        HodgeDatum { weight: self.weight, form: self.form(), filtration: f.clone() }
    }

    /// `p -> Σ_q h^{p,q}`, zero entries dropped.
    pub fn expected_graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&(p, _), &h) in &self.hodge_numbers {
            if h > 0 {
                *out.entry(p).or_insert(0) += h;
            }
        }
        out
    }
}

fn invalid(invariant: &'static str, detail: String) -> Error {
    Error::InvalidDatum { invariant, detail }
}

pub fn validate_datum(d: &PrePLHDatum) -> Result<(), Error> {
    let total: usize = d.hodge_numbers.values().sum();
    if total != d.rank {
        return Err(invalid("hodge_sum", format!("sum of Hodge numbers is {total}, rank is {}", d.rank)));
    }
    for (&(p, q), _) in d.hodge_numbers.iter().filter(|(_, &h)| h > 0) {
        if p + q != d.weight {
            return Err(invalid("hodge_weight", format!("h^{p},{q} is nonzero but {p}+{q} != {}", d.weight)));
        }
        let mirror = d.hodge_numbers.get(&(q, p)).copied().unwrap_or(0);
        if mirror != d.hodge_numbers[&(p, q)] {
            return Err(invalid("hodge_symmetry", format!("h^{p},{q} != h^{q},{p}")));
        }
    }
    if d.form.rows() != d.rank || d.form.cols() != d.rank {
        return Err(invalid("form_rank", format!("form is {}x{}, rank is {}", d.form.rows(), d.form.cols(), d.rank)));
    }
    d.form().validate()?;
    if d.filtration.ambient_dim() != d.rank {
        return Err(invalid("filtration_rank", format!("filtration lives in dimension {}", d.filtration.ambient_dim())));
    }
    let got = d.filtration.graded_dims();
    if got != d.expected_graded_dims() {
        return Err(invalid("hodge_filtration_dims", format!("dim gr_F is {got:?}, Hodge numbers give {:?}", d.expected_graded_dims())));
    }
    if d.nilpotents.is_empty() {
        return Err(invalid("generators", "no cone generators".into()));
    }
    if d.names.len() != d.nilpotents.len() {
        return Err(invalid("names", format!("{} names for {} generators", d.names.len(), d.nilpotents.len())));
    }
    for (i, n) in d.nilpotents.iter().enumerate() {
        if n.rows() != d.rank || n.cols() != d.rank {
            return Err(invalid("nilpotent_shape", format!("N_{} is {}x{}", i + 1, n.rows(), n.cols())));
        }
        if !n.is_real() {
            return Err(invalid("nilpotent_rational", format!("N_{} has non-real entries", i + 1)));
        }
        if NilpotentEndo::new(n.clone()).is_err() {
            return Err(invalid("nilpotent", format!("N_{} is not nilpotent", i + 1)));
        }
    }
    for i in 0..d.nilpotents.len() {
        for j in i + 1..d.nilpotents.len() {
            if !d.nilpotents[i].commutes_with(&d.nilpotents[j]) {
                return Err(invalid("commuting", format!("N_{} and N_{} do not commute", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// `exp(z N) F`.
pub fn twist(f: &DecFiltration, z: &Scalar, n: &NilpotentEndo) -> DecFiltration {
    f.map(&n.matrix().exp_nilpotent(z))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Membership {
    D,
    #[serde(rename = "Ď_only")]
    CompactDualOnly,
    #[serde(rename = "neither")]
    Neither,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::D => "D",
            Membership::CompactDualOnly => "Ď only",
            Membership::Neither => "neither",
        })
    }
}

/// Membership together with the first failed condition, if any.
pub fn classify(d: &PrePLHDatum, f: &DecFiltration) -> (Membership, hodge::Verdict) {
    if f.graded_dims() != d.expected_graded_dims() {
        let v = hodge::Verdict {
            ok: false,
            failed_clause: None,
            witness: None,
            detail: Some("dimensions of gr_F do not match the Hodge numbers".into()),
            evidence: Vec::new(),
        };
        return (Membership::Neither, v);
    }
    let v = is_pure_polarized(&d.hodge_datum(f));
    let m = if v.ok {
        Membership::D
    } else if hodge::first_relation_witness(&d.form(), f, d.weight).is_some() {
        Membership::Neither
    } else {
        Membership::CompactDualOnly
    };
    (m, v)
}

pub fn in_period_domain(d: &PrePLHDatum, f: &DecFiltration) -> Membership {
    classify(d, f).0
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Certified,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Certified => "certified",
            Status::Refuted => "refuted",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitWitness {
    Vector { clause: Clause, vector: Vector },
    Jump(Box<JumpWitness>),
    SampleJump(Box<SampleJump>),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ProbeRecord {
    pub t: i64,
    pub membership: Membership,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct OrbitVerdict {
    pub status: Status,
    pub reason: String,
    pub witness: Option<OrbitWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub evidence: Vec<GramRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constancy: Option<Constancy>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub probe: Vec<ProbeRecord>,
}

impl OrbitVerdict {
    fn refuted(reason: &str, witness: Option<OrbitWitness>, detail: Option<String>) -> Self {
        OrbitVerdict {
            status: Status::Refuted,
            reason: reason.into(),
            witness,
            detail,
            evidence: Vec::new(),
            constancy: None,
            probe: Vec::new(),
        }
    }
}

pub const REASON_CERTIFIED: &str = "nilpotent orbit certified";
pub const REASON_TRANSVERSALITY: &str = "Griffiths transversality fails";
pub const REASON_POLARIZED_MHS: &str = "not a mixed Hodge structure polarized by N";
pub const REASON_NOT_CONSTANT: &str = "weight filtration not constant on cone interior";
pub const REASON_SAMPLED: &str = "weight filtration constant on samples only";

/// Checks that `(N, F)` generates a nilpotent orbit through the polarized
/// mixed Hodge structure criterion, then probes `exp(itN) F ∈ D`.
pub fn certify_ray_orbit(d: &PrePLHDatum, n: &NilpotentEndo, f: &DecFiltration) -> Result<OrbitVerdict, Error> {
    if let Some(v) = f.transversality_witness(n.matrix()) {
        let w = OrbitWitness::Vector { clause: Clause::Transversality, vector: v };
        return Ok(OrbitVerdict::refuted(REASON_TRANSVERSALITY, Some(w), None));
    }
    let w = weight_filtration(n)?.shift(d.weight);
    let v = is_polarized_mhs_by_n(&w, f, n, &d.form(), d.weight)?;
    if !v.ok {
        let witness = v.witness.map(|vector| OrbitWitness::Vector { clause: v.failed_clause.expect("failed"), vector });
        let mut out = OrbitVerdict::refuted(REASON_POLARIZED_MHS, witness, v.detail);
        out.evidence = v.evidence;
        return Ok(out);
    }
    let mut probe = Vec::new();
    for t in PROBE_TIMES {
        let m = in_period_domain(d, &twist(f, &(&Scalar::i() * &Scalar::from_int(t)), n));
        if m != Membership::D {
            return Err(Error::ProbeFailed(format!("exp(itN)F is in {m} at t = {t}")));
        }
        probe.push(ProbeRecord { t, membership: m });
    }
    Ok(OrbitVerdict {
        status: Status::Certified,
        reason: REASON_CERTIFIED.into(),
        witness: None,
        detail: None,
        evidence: v.evidence,
        constancy: None,
        probe,
    })
}

/// One morphism from the standard log point: `N = Σ a_i N_i` and the Hodge
/// filtration `exp(i c N_1) F`, or `exp(i Σ t_i N_i) F` when `twist` is set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PullbackSample {
    pub a: Vec<i64>,
    pub c: Scalar,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<Vec<Scalar>>,
}

impl PullbackSample {
    pub fn new(a: Vec<i64>, c: BigRational) -> Self {
        PullbackSample { a, c: Scalar::real(c), twist: None }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PullbackResult {
    pub sample: PullbackSample,
    pub verdict: OrbitVerdict,
}

pub fn pullback_ray(d: &PrePLHDatum, s: &PullbackSample) -> Result<(NilpotentEndo, DecFiltration), Error> {
    let r = d.nilpotents.len();
    if s.a.len() != r {
        return Err(Error::DimensionMismatch(format!("{} coefficients for {r} generators", s.a.len())));
    }
    if let Some((index, a)) = s.a.iter().enumerate().find(|(_, &a)| a <= 0) {
        return Err(Error::NonPositiveCoordinate { index, value: a.to_string() });
    }
    let combo = |cs: &[Scalar]| {
        d.nilpotents.iter().zip(cs).fold(Matrix::zeros(d.rank, d.rank), |m, (n, c)| m.add(&n.scale(c)))
    };
    let coeffs: Vec<Scalar> = s.a.iter().map(|&a| Scalar::from_int(a)).collect();
    let n = NilpotentEndo::new(combo(&coeffs))?;
    let (dir, z) = match &s.twist {
        Some(t) if t.len() != r => {
            return Err(Error::DimensionMismatch(format!("{} twist coefficients for {r} generators", t.len())));
        }
        Some(t) if t.iter().any(|x| !x.is_real()) => return Err(Error::Precondition("twist coefficients must be rational".into())),
        Some(t) => (combo(t), Scalar::i()),
        None if !s.c.is_real() => return Err(Error::Precondition("c must be rational".into())),
        None => (d.nilpotents[0].clone(), &Scalar::i() * &s.c),
    };
    let f = twist(&d.filtration, &z, &NilpotentEndo::new(dir)?);
    Ok((n, f))
}

pub fn standard_point_pullbacks(d: &PrePLHDatum, samples: &[PullbackSample]) -> Result<Vec<PullbackResult>, Error> {
    validate_datum(d)?;
    samples
        .iter()
        .map(|s| {
            let (n, f) = pullback_ray(d, s)?;
            Ok(PullbackResult { sample: s.clone(), verdict: certify_ray_orbit(d, &n, &f)? })
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConeOptions {
    /// Interior test point; `(1, ..., 1)` when absent.
    pub interior: Option<Vec<BigRational>>,
    pub seed: u64,
}

impl Default for ConeOptions {
    fn default() -> Self {
        ConeOptions { interior: None, seed: crate::cone::DEFAULT_SEED }
    }
}

/// Transversality of every generator, constancy of the weight filtration
/// on the interior, and a ray certificate at one interior point.
pub fn certify_cone_orbit(d: &PrePLHDatum, opts: &ConeOptions) -> Result<OrbitVerdict, Error> {
    validate_datum(d)?;
    let r = d.nilpotents.len();
    let interior = opts.interior.clone().unwrap_or_else(|| vec![BigRational::one(); r]);
    if interior.len() != r {
        return Err(Error::DimensionMismatch(format!("interior point of length {} for {r} generators", interior.len())));
    }
    if let Some((index, c)) = interior.iter().enumerate().find(|(_, c)| !c.is_positive()) {
        return Err(Error::NonPositiveCoordinate { index, value: c.to_string() });
    }
    for (i, n) in d.nilpotents.iter().enumerate() {
        if let Some(v) = d.filtration.transversality_witness(n) {
            let w = OrbitWitness::Vector { clause: Clause::Transversality, vector: v };
            return Ok(OrbitVerdict::refuted(REASON_TRANSVERSALITY, Some(w), Some(format!("generator N_{}", i + 1))));
        }
    }
    let cone = d.cone()?;
    let constancy = constancy_analysis(&cone, opts.seed)?;
    let jump = match &constancy {
        Constancy::Jump(j) => Some(OrbitWitness::Jump(j.clone())),
        Constancy::SampleJump(j) => Some(OrbitWitness::SampleJump(j.clone())),
        _ => None,
    };
    if let Some(w) = jump {
        let mut out = OrbitVerdict::refuted(REASON_NOT_CONSTANT, Some(w), None);
        out.constancy = Some(constancy);
        return Ok(out);
    }
    let n = cone.point(&interior)?;
    let mut out = certify_ray_orbit(d, &n, &d.filtration)?;
    if out.status == Status::Certified && matches!(constancy, Constancy::Inconclusive { .. }) {
        out.status = Status::Inconclusive;
        out.reason = REASON_SAMPLED.into();
    }
    out.constancy = Some(constancy);
    Ok(out)
}

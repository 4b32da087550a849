//! Weight filtrations along the interior of a monodromy cone.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactalg::{rat, Matrix, Scalar};
use crate::filtration::{weight_filtration, IncFiltration, NilpotentEndo};
use crate::poly::{Poly, PolyMatrix, UniPoly};
use crate::Error;

/// Seed for the random part of the sampled analysis when none is given.
pub const DEFAULT_SEED: u64 = 1729;

/// Sample values of `a/b` for the two-generator check.
pub const RAY_SAMPLES: [(i64, i64); 5] = [(1, 7), (1, 2), (1, 1), (2, 1), (7, 1)];

pub const RANDOM_SAMPLES: usize = 20;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonodromyCone {
    generators: Vec<NilpotentEndo>,
    names: Vec<String>,
}

impl MonodromyCone {
    pub fn new(generators: Vec<Matrix>, names: Vec<String>) -> Result<Self, Error> {
        if generators.is_empty() {
            return Err(Error::EmptyInput);
        }
        if names.len() != generators.len() {
            return Err(Error::DimensionMismatch(format!("{} names for {} generators", names.len(), generators.len())));
        }
        let dim = generators[0].rows();
        let gens = generators
            .into_iter()
            .map(|m| {
                if m.rows() != dim || m.cols() != dim {
                    return Err(Error::DimensionMismatch("generators of different sizes".into()));
                }
                NilpotentEndo::new(m)
            })
            .collect::<Result<Vec<_>, _>>()?;
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                if !a.matrix().commutes_with(b.matrix()) {
                    return Err(Error::Precondition("cone generators do not commute".into()));
                }
            }
        }
        Ok(MonodromyCone { generators: gens, names })
    }

    /// Names `a`, `b`, ... for up to 26 generators, then `c1`, `c2`, ....
    pub fn default_names(r: usize) -> Vec<String> {
        if r <= 26 {
            (0..r).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
        } else {
            (1..=r).map(|i| format!("c{i}")).collect()
        }
    }

    pub fn generators(&self) -> &[NilpotentEndo] {
        &self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn r(&self) -> usize {
        self.generators.len()
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    /// `Σ c_i N_i` for a strictly positive point.
    pub fn point(&self, coeffs: &[BigRational]) -> Result<NilpotentEndo, Error> {
        if coeffs.len() != self.r() {
            return Err(Error::DimensionMismatch(format!("point of length {} for {} generators", coeffs.len(), self.r())));
        }
        if let Some((index, c)) = coeffs.iter().enumerate().find(|(_, c)| !c.is_positive()) {
            return Err(Error::NonPositiveCoordinate { index, value: c.to_string() });
        }
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (c, g) in coeffs.iter().zip(&self.generators) {
            m = m.add(&g.matrix().scale(&Scalar::real(c.clone())));
        }
        NilpotentEndo::new(m)
    }

    /// `Σ names[i] N_i` with polynomial entries.
    pub fn symbolic(&self) -> Result<PolyMatrix, Error> {
        let mats: Vec<Matrix> = self.generators.iter().map(|g| g.matrix().clone()).collect();
        PolyMatrix::linear_combination(&self.names, &mats)
    }

    /// `names[0] N_1 + N_2`, in the single variable `names[0]`.
    fn dehomogenized(&self) -> Result<PolyMatrix, Error> {
        let var = vec![self.names[0].clone()];
        let first = PolyMatrix::linear_combination(&var, &[self.generators[0].matrix().clone()])?;
        Ok(first.add(&PolyMatrix::constant(&var, self.generators[1].matrix())?))
    }
}

pub fn weight_filtration_at(cone: &MonodromyCone, point: &[BigRational]) -> Result<IncFiltration, Error> {
    weight_filtration(&cone.point(point)?)
}

/// `k -> rank N^k` for `k = 1, 2, ...` up to and including the first zero power.
pub fn rank_profile_of(n: &Matrix) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    let mut p = n.clone();
    for k in 1..=n.rows().max(1) as u32 {
        let r = p.rank();
        out.insert(k, r);
        if r == 0 {
            break;
        }
        p = p.mul(n);
    }
    out
}

pub fn rank_profile(cone: &MonodromyCone, point: &[BigRational]) -> Result<BTreeMap<u32, usize>, Error> {
    Ok(rank_profile_of(cone.point(point)?.matrix()))
}

/// Generic ranks of the powers of `N(t) = t N_1 + N_2` over `Q(t)`, and for
/// each power the monic gcd of its maximal nonvanishing minors.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SymbolicProfile {
    pub variable: String,
    pub generic: BTreeMap<u32, usize>,
    pub minor_gcds: BTreeMap<u32, Poly>,
    /// Value of `t` where every generic rank is attained.
    pub sample: Scalar,
}

/// Evidence that the Jordan type of `N(t)` drops inside the cone.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct JumpWitness {
    pub power: u32,
    pub generic_rank: usize,
    pub variable: String,
    pub sample: Scalar,
    pub sample_rank: usize,
    /// Square-free part of the minor gcd, in `names[0]` with `names[1] = 1`.
    pub polynomial: Poly,
    pub homogenized: Poly,
    pub interior_roots: usize,
    pub generic_profile: Vec<usize>,
    /// Rank of `N^k` at every interior root of `polynomial`, when uniform.
    pub locus_profile: Vec<Option<usize>>,
}

/// Two interior points with different weight filtrations.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SampleJump {
    pub first: Vec<Scalar>,
    pub second: Vec<Scalar>,
    pub first_graded: BTreeMap<i64, usize>,
    pub second_graded: BTreeMap<i64, usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    SingleRay,
    Symbolic,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Constancy {
    Constant { method: Method, samples: usize },
    Jump(Box<JumpWitness>),
    SampleJump(Box<SampleJump>),
    Inconclusive { samples: usize, seed: u64 },
}

impl Constancy {
    pub fn is_constant(&self) -> bool {
        matches!(self, Constancy::Constant { .. })
    }
}

pub fn constancy_analysis(cone: &MonodromyCone, seed: u64) -> Result<Constancy, Error> {
    match cone.r() {
        1 => Ok(Constancy::Constant { method: Method::SingleRay, samples: 0 }),
        2 => two_generators(cone),
        _ => sampled(cone, seed),
    }
}

fn minors_vanish_mod(minors: &[Poly], p: &Poly, var: &str) -> Result<bool, Error> {
    for m in minors {
        if !m.reduce_mod(p, var)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn univariate(p: &Poly) -> UniPoly {
    p.to_univariate(0).expect("single variable")
}

pub fn symbolic_rank_profile(cone: &MonodromyCone) -> Result<SymbolicProfile, Error> {
    if cone.r() != 2 {
        return Err(Error::Precondition("symbolic profile needs exactly two generators".into()));
    }
    let var = cone.names()[0].clone();
    let n = cone.dehomogenized()?;
    let dim = cone.dim();
    // t = 1, 2, ... : a polynomial matrix drops rank at finitely many points.
    let mut t = 1i64;
    let (sample, ranks) = loop {
        let s = n.eval(&[BigRational::from_integer(BigInt::from(t))]);
        let ranks = rank_profile_of(&s);
        let mut powers = n.clone();
        let mut generic = true;
        // Each sampled rank must also bound the generic rank; the last power,
        // of rank 0 at the sample, must vanish identically.
        for &r in ranks.values() {
            if r < dim && !powers.is_zero() && powers.minors(r + 1)?.iter().any(|m| !m.is_zero()) {
                generic = false;
                break;
            }
            powers = powers.mul(&n);
        }
        if generic {
            break (t, ranks);
        }
        t += 1;
    };
    let mut minor_gcds = BTreeMap::new();
    let mut power = n.clone();
    for (&k, &r) in &ranks {
        if r > 0 {
            let minors = power.minors(r)?;
            let g = crate::poly::gcd_univariate(&minors)?;
            minor_gcds.insert(k, g);
        }
        power = power.mul(&n);
    }
    Ok(SymbolicProfile { variable: var, generic: ranks, minor_gcds, sample: Scalar::from_int(sample) })
}

fn two_generators(cone: &MonodromyCone) -> Result<Constancy, Error> {
    let prof = symbolic_rank_profile(cone)?;
    let var = prof.variable.clone();
    let n = cone.dehomogenized()?;
    for (&k, g) in &prof.minor_gcds {
        let sq = univariate(g).squarefree().monic();
        let roots = sq.count_positive_roots();
        if roots == 0 {
            continue;
        }
        let p = Poly::from_univariate(std::slice::from_ref(&var), 0, &sq);
        let power = n.pow(k);
        let r = prof.generic[&k];
        if !minors_vanish_mod(&power.minors(r)?, &p, &var)? {
            return Err(Error::Precondition("minor gcd does not divide every minor".into()));
        }
        let both = vec![cone.names()[0].clone(), cone.names()[1].clone()];
        let homogenized = p.embed(&both)?.homogenize(1);
        let locus_profile = locus_profile(&n, &prof.generic, &p, &var)?;
        let witness = JumpWitness {
            power: k,
            generic_rank: r,
            variable: var,
            sample: prof.sample.clone(),
            sample_rank: r,
            polynomial: p,
            homogenized,
            interior_roots: roots,
            generic_profile: prof.generic.values().copied().collect(),
            locus_profile,
        };
        return Ok(Constancy::Jump(Box::new(witness)));
    }
    let points: Vec<Vec<BigRational>> = RAY_SAMPLES.iter().map(|&(a, b)| vec![rat(a, b), BigRational::one()]).collect();
    compare_samples(cone, &points).map(|j| j.unwrap_or(Constancy::Constant { method: Method::Symbolic, samples: points.len() }))
}

/// Rank of each power on the real roots of `p` in `(0, ∞)`, when the same at all of them.
fn locus_profile(n: &PolyMatrix, generic: &BTreeMap<u32, usize>, p: &Poly, var: &str) -> Result<Vec<Option<usize>>, Error> {
    let pu = univariate(p);
    let mut out = Vec::new();
    let mut power = n.clone();
    for &rho in generic.values() {
        out.push(uniform_rank(&power, rho, p, &pu, var)?);
        power = power.mul(n);
    }
    Ok(out)
}

fn uniform_rank(m: &PolyMatrix, rho: usize, p: &Poly, pu: &UniPoly, var: &str) -> Result<Option<usize>, Error> {
    for size in (1..=rho).rev() {
        let minors = m.minors(size)?;
        if minors.iter().any(|q| !q.is_zero() && univariate(q).gcd(pu).count_positive_roots() == 0) {
            return Ok(Some(size));
        }
        if !minors_vanish_mod(&minors, p, var)? {
            return Ok(None);
        }
    }
    Ok(Some(0))
}

fn compare_samples(cone: &MonodromyCone, points: &[Vec<BigRational>]) -> Result<Option<Constancy>, Error> {
    let Some(first) = points.first() else { return Ok(None) };
    let w0 = weight_filtration_at(cone, first)?;
    for pt in &points[1..] {
        let w = weight_filtration_at(cone, pt)?;
        if w != w0 {
            let to_scalars = |v: &[BigRational]| v.iter().cloned().map(Scalar::real).collect();
            return Ok(Some(Constancy::SampleJump(Box::new(SampleJump {
                first: to_scalars(first),
                second: to_scalars(pt),
                first_graded: w0.graded_dims(),
                second_graded: w.graded_dims(),
            }))));
        }
    }
    Ok(None)
}

/// Deterministic grid `{1,2,3}^r` followed by seeded random positive rationals.
pub fn sample_points(r: usize, seed: u64) -> Vec<Vec<BigRational>> {
    let mut pts: Vec<Vec<BigRational>> = vec![Vec::new()];
    for _ in 0..r {
        pts = pts.into_iter().flat_map(|p| (1..=3).map(move |v| [p.clone(), vec![rat(v, 1)]].concat())).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_SAMPLES {
        pts.push((0..r).map(|_| rat(rng.gen_range(1..=20), rng.gen_range(1..=10))).collect());
    }
    pts
}

fn sampled(cone: &MonodromyCone, seed: u64) -> Result<Constancy, Error> {
    let pts = sample_points(cone.r(), seed);
    Ok(compare_samples(cone, &pts)?.unwrap_or(Constancy::Inconclusive { samples: pts.len(), seed }))
}

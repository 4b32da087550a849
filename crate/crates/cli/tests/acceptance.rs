//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines are always printed; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use loghodge::cone::{symbolic_rank_profile, Constancy, Method};
use loghodge::exactalg::{int, rat, Scalar, Subspace};
use loghodge::filtration::{weight_filtration, weight_filtration_recursive, IncFiltration, NilpotentEndo};
use loghodge::fixtures::{elliptic, kato};
use loghodge::hodge::GramRecord;
use loghodge::monoidlat::{brute_force_integral, factorize, is_integral, MonoidHom};
use loghodge::orbit::{
    certify_cone_orbit, certify_ray_orbit, in_period_domain, twist, ConeOptions, Membership, OrbitVerdict, PrePLHDatum,
    Status, PROBE_TIMES,
};
use loghodge::poly::{Poly, PolyMatrix, UniPoly};
use loghodge::{random, Matrix};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cli(args: &[&str]) -> (i32, Value) {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..");
    let out = Command::new(env!("CARGO_BIN_EXE_loghodge")).current_dir(root).arg("--json").args(args).output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json)
}

fn square_free(p: &Poly) -> UniPoly {
    p.to_univariate(0).expect("univariate").squarefree()
}

fn proportional(a: &UniPoly, b: &UniPoly) -> bool {
    a.monic() == b.monic()
}

// Refutation of the rank-6 cone: jump locus a^2 = 2 b^2.
fn kato_refutation() -> Outcome {
    let (code, report) = cli(&["check", "fixtures/kato.json"]);
    ensure(code == 1, format!("exit {code}, expected 1"))?;
    let result = &report["result"];
    ensure(result["reason"] == "weight filtration not constant on cone interior", "reason")?;
    let w = &result["witness"];
    ensure(w["kind"] == "jump", "witness kind")?;
    ensure(w["generic_profile"][0] == 4 && w["locus_profile"][0] == 2, "rank profile 4 -> 2")?;

    let d = kato::datum();
    let v = certify_cone_orbit(&d, &ConeOptions::default()).map_err(|e| e.to_string())?;
    let Some(Constancy::Jump(j)) = v.constancy else { return Err("library verdict has no jump".into()) };
    ensure(w["polynomial"] == j.polynomial.to_string(), "report polynomial differs from library")?;
    let target = UniPoly::from_i64(&[-2, 0, 1]);
    ensure(proportional(&square_free(&j.polynomial), &target), format!("square-free part of {}", j.polynomial))?;

    // Independent rank check on the locus: with b = 1, every 3x3 minor of
    // N(a) = a N1 + N2 vanishes mod a^2 - 2 and some 2x2 minor does not.
    let vars = vec!["a".to_string()];
    let n = PolyMatrix::linear_combination(&vars, &[kato::n1()])
        .and_then(|m| Ok(m.add(&PolyMatrix::constant(&vars, &kato::n2())?)))
        .map_err(|e| e.to_string())?;
    let rel = Poly::univariate("a", &[int(-2), int(0), int(1)]);
    let vanish = |k: usize| -> Result<bool, String> {
        let ms = n.minors(k).map_err(|e| e.to_string())?;
        Ok(ms.iter().all(|m| m.reduce_mod(&rel, "a").map(|r| r.is_zero()).unwrap_or(false)))
    };
    ensure(vanish(3)? && !vanish(2)?, "rank of N on the locus is not 2")?;
    ensure(n.eval(&[int(1)]).rank() == 4, "generic rank is not 4")?;
    Ok(format!("polynomial {}, rank N 4 -> 2", j.polynomial))
}

// Hand computation: N e5 = (a+b) e3 + b e4, N e6 = b e3 + (a-b) e4, and the
// same matrix M = [[a+b, b], [b, a-b]] sends (e3, e4) to (e1, e2). So N^2 on
// <e5, e6> is M^2, and S(e5, e1) = S(e6, e2) = 1 gives the gr_2 Gram M^2:
// [[(a+b)^2 + b^2, 2ab], [2ab, b^2 + (a-b)^2]], det = (a^2 - 2b^2)^2.
fn expected_gram(a: i64, b: i64) -> Matrix {
    let g11 = (a + b) * (a + b) + b * b;
    let g12 = 2 * a * b;
    let g22 = b * b + (a - b) * (a - b);
    Matrix::from_i64(&[&[g11, g12], &[g12, g22]])
}

fn c_values() -> [BigRational; 4] {
    [int(-2), int(0), rat(1, 2), int(3)]
}

struct Certified {
    datum: PrePLHDatum,
    n: NilpotentEndo,
    f: loghodge::filtration::DecFiltration,
    verdict: OrbitVerdict,
}

fn pullback_family() -> Result<Vec<Certified>, String> {
    let d = kato::datum();
    let n1 = NilpotentEndo::new(kato::n1()).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for a in 1..=3 {
        for b in 1..=3 {
            for c in c_values() {
                let n = NilpotentEndo::new(kato::n_at(a, b)).map_err(|e| e.to_string())?;
                let f = twist(&kato::hodge_filtration(), &Scalar::new(int(0), c.clone()), &n1);
                let v = certify_ray_orbit(&d, &n, &f).map_err(|e| format!("(a,b,c)=({a},{b},{c}): {e}"))?;
                ensure(v.status == Status::Certified, format!("(a,b,c)=({a},{b},{c}): {}", v.reason))?;
                let gr2: Vec<&GramRecord> = v.evidence.iter().filter(|g| g.k == Some(2)).collect();
                ensure(gr2.len() == 1, format!("(a,b,c)=({a},{b},{c}): {} gr_2 Gram records", gr2.len()))?;
                let g = &gr2[0].gram;
                ensure(*g == expected_gram(a, b), format!("(a,b,c)=({a},{b},{c}): Gram {g:?}"))?;
                let det = int(a * a - 2 * b * b).pow(2);
                ensure(g.determinant() == Scalar::real(det), format!("(a,b,c)=({a},{b},{c}): determinant"))?;
                out.push(Certified { datum: d.clone(), n, f, verdict: v });
            }
        }
    }
    Ok(out)
}

fn pullbacks() -> Outcome {
    let family = pullback_family()?;
    let (code, report) = cli(&["pullbacks", "fixtures/kato.json", "--samples", "1,1,0", "2,1,1/2"]);
    ensure(code == 0, format!("cli pullbacks exit {code}"))?;
    let all = report["result"].as_array().map(|r| r.iter().all(|x| x["verdict"]["status"] == "certified"));
    ensure(all == Some(true), "cli pullbacks not all certified")?;
    Ok(format!("{} rays certified, gr_2 Gram = M^2 exactly", family.len()))
}

fn subcone() -> Result<Certified, String> {
    let d = kato::subcone_datum();
    let v = certify_cone_orbit(&d, &ConeOptions::default()).map_err(|e| e.to_string())?;
    ensure(v.status == Status::Certified, format!("status {} ({})", v.status, v.reason))?;
    ensure(
        matches!(v.constancy, Some(Constancy::Constant { method: Method::Symbolic, .. })),
        "constancy not decided symbolically",
    )?;
    let cone = d.cone().map_err(|e| e.to_string())?;
    let n = cone.point(&[int(1), int(1)]).map_err(|e| e.to_string())?;
    Ok(Certified { f: d.filtration.clone(), datum: d, n, verdict: v })
}

fn subcone_control() -> Outcome {
    subcone()?;
    let cone = kato::subcone_datum().cone().map_err(|e| e.to_string())?;
    let prof = symbolic_rank_profile(&cone).map_err(|e| e.to_string())?;
    let mut roots = 0;
    for g in prof.minor_gcds.values() {
        roots += g.to_univariate(0).map(|u| u.count_positive_roots()).unwrap_or(0);
    }
    ensure(roots == 0, format!("{roots} Sturm roots in (0, inf)"))?;
    // a N1 + (3 N1 + N2) = (a+3) N1 + N2: the gcd is ((a+3)^2 - 2)^2, roots -3 ± sqrt 2.
    let g1 = prof.minor_gcds.get(&1).ok_or("no gcd for N")?;
    ensure(proportional(&square_free(g1), &UniPoly::from_i64(&[7, 6, 1])), format!("gcd {g1}"))?;
    let (code, _) = cli(&["check", "fixtures/kato_subcone.json"]);
    ensure(code == 0, format!("cli check exit {code}"))?;
    Ok("certified, Sturm count 0 on (0, inf)".into())
}

fn pow_kernel(n: &Matrix, k: u32) -> Subspace {
    n.pow(k).kernel()
}

/// Defining properties, checked directly: `N W_k ⊂ W_{k-2}` and
/// `N^k : gr_k -> gr_{-k}` bijective for `k > 0`.
fn axioms_hold(n: &Matrix, w: &IncFiltration) -> bool {
    let Some((lo, hi)) = w.index_range() else { return n.is_zero() };
    let reach = lo.abs().max(hi.abs()) + 2;
    for k in -reach..=reach {
        if !w.get(k - 2).contains_subspace(&w.get(k).image_under(n)) {
            return false;
        }
    }
    for k in 1..=reach {
        let nk = n.pow(k as u32);
        let onto = w.get(k).image_under(&nk).sum(&w.get(-k - 1));
        if onto != w.get(-k) {
            return false;
        }
        let injective = pow_kernel(n, k as u32).intersection(&w.get(k)).sum(&w.get(k - 1)) == w.get(k - 1);
        if !injective {
            return false;
        }
    }
    true
}

fn weight_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_611);
    let (mut rational, mut gaussian) = (0, 0);
    for i in 0..200 {
        let over_gaussian = i % 2 == 1;
        let m = random::nilpotent(&mut rng, 8, over_gaussian);
        let n = NilpotentEndo::new(m.clone()).map_err(|e| e.to_string())?;
        let w = weight_filtration(&n).map_err(|e| format!("#{i}: {e}"))?;
        ensure(axioms_hold(&m, &w), format!("#{i}: axioms fail"))?;
        ensure(m.is_zero() || !axioms_hold(&m, &w.shift(1)), format!("#{i}: axiom check accepts a shifted W"))?;
        ensure(w == weight_filtration_recursive(&n), format!("#{i}: algorithms disagree"))?;
        let lam = if over_gaussian {
            Scalar::new(int(rng.gen_range(1..9)), int(rng.gen_range(-9..9)))
        } else {
            Scalar::real(rat(rng.gen_range(1..50), rng.gen_range(1..50)))
        };
        ensure(weight_filtration(&n.scale(&lam)).map_err(|e| e.to_string())? == w, format!("#{i}: scaling"))?;
        if over_gaussian {
            gaussian += 1;
            continue;
        }
        rational += 1;
        // Descent: N' = l N + m N^2 has the same complex weight filtration,
        // so the rational parts must agree and span the complex steps.
        let coeff = Scalar::real(rat(rng.gen_range(1..9), rng.gen_range(1..9)));
        let other = m.scale(&coeff).add(&m.mul(&m).scale(&Scalar::from_int(rng.gen_range(-3..4))));
        let w2 = weight_filtration(&NilpotentEndo::new(other).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(w2 == w, format!("#{i}: complex weight filtrations differ"))?;
        for (k, s) in w.jumps() {
            ensure(s.is_real(), format!("#{i}: W_{k} not defined over Q"))?;
            let q = s.rational_part();
            ensure(q.dim() == s.dim() && q == w2.get(*k).rational_part(), format!("#{i}: descent fails at W_{k}"))?;
        }
    }
    Ok(format!("{rational} over Q, {gaussian} over Q(i), sizes 1..=8"))
}

fn matrices(s: usize, r: usize) -> impl Iterator<Item = Vec<Vec<u64>>> {
    let cells = (s * r) as u32;
    (0..3u64.pow(cells)).map(move |mut code| {
        let mut rows = vec![vec![0; r]; s];
        for row in rows.iter_mut() {
            for x in row.iter_mut() {
                *x = code % 3;
                code /= 3;
            }
        }
        rows
    })
}

fn monoid_equivalence() -> Outcome {
    let mut total = 0;
    for s in 1..=3 {
        for r in 1..=3 {
            for rows in matrices(s, r) {
                let h = MonoidHom::from_u64(rows.clone()).map_err(|e| e.to_string())?;
                let support = is_integral(&h);
                let brute = brute_force_integral(&h, 8).map_err(|e| e.to_string())?.is_none();
                let factors = factorize(&h).is_ok();
                ensure(support == brute && brute == factors, format!("{rows:?}: {support} {brute} {factors}"))?;
                total += 1;
            }
        }
    }
    Ok(format!("{total} matrices, 0 disagreements"))
}

fn classical() -> Outcome {
    let at = |tau: Scalar| in_period_domain(&elliptic::pre_datum(tau.clone()), &elliptic::filtration(tau));
    let i = Scalar::i();
    ensure(at(i.clone()) == Membership::D, "tau = i not in D")?;
    ensure(at(-i) == Membership::CompactDualOnly, "tau = -i not Ď only")?;
    let d = kato::datum();
    let m = in_period_domain(&d, &d.filtration);
    ensure(m == Membership::CompactDualOnly, format!("rank-6 F is {m}"))?;
    Ok("tau=i: D, tau=-i: Ď only, rank-6 F: Ď only".into())
}

fn probe() -> Outcome {
    let mut rays = pullback_family()?;
    rays.push(subcone()?);
    for c in &rays {
        ensure(c.verdict.probe.len() == PROBE_TIMES.len(), "probe records missing")?;
        for t in [10, 100, 1000] {
            let f = twist(&c.f, &Scalar::new(int(0), int(t)), &c.n);
            ensure(in_period_domain(&c.datum, &f) == Membership::D, format!("exp(itN)F not in D at t = {t}"))?;
        }
    }
    Ok(format!("{} certified rays, t in {{10, 100, 1000}}", rays.len()))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "rank-6 cone refuted", limit: Duration::from_secs(5), run: kato_refutation },
        Criterion { id: 2, name: "standard-point pullbacks", limit: Duration::from_secs(10), run: pullbacks },
        Criterion { id: 3, name: "sub-cone positive control", limit: Duration::from_secs(5), run: subcone_control },
        Criterion { id: 4, name: "weight filtration properties", limit: Duration::from_secs(60), run: weight_suite },
        Criterion { id: 5, name: "monoid criteria equivalence", limit: Duration::from_secs(60), run: monoid_equivalence },
        Criterion { id: 6, name: "classical period domain", limit: Duration::from_secs(5), run: classical },
        Criterion { id: 7, name: "orbit probe", limit: Duration::from_secs(10), run: probe },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let within = start.elapsed() <= c.limit;
        let (tag, msg) = match (&result, within) {
            (Ok(m), true) => ("PASS", m.clone()),
            (Ok(m), false) => ("FAIL", format!("{m}; over time limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("criterion {} [{tag}] {} ({secs:.2} s, limit {} s): {msg}", c.id, c.name, c.limit.as_secs());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

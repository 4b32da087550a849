//! Browser bindings for the demo page in `www/`.
//!
//! Every export returns a JSON string; failures come back as `{"error": ..}`.

use loghodge::cone::{rank_profile_of, weight_filtration_at, MonodromyCone};
use loghodge::exactalg::{int, parse_rational, Scalar};
use loghodge::filtration::NilpotentEndo;
use loghodge::fixtures::kato;
use loghodge::io::parse_monoid;
use loghodge::monoidlat::{factorize, integrality_witness, is_integral, is_semistable_local, is_vertical};
use loghodge::orbit::{certify_ray_orbit, twist};
use loghodge::Error;
use num_rational::BigRational;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(r: Result<Value, Error>) -> String {
    let v = r.unwrap_or_else(|e| json!({ "error": e.to_string() }));
    serde_json::to_string(&v).expect("serializable")
}

fn kato_cone() -> MonodromyCone {
    MonodromyCone::new(vec![kato::n1(), kato::n2()], MonodromyCone::default_names(2)).expect("fixture")
}

/// Weight filtration and ranks of `N^k` at `a N1 + b N2` on the rank-6 example.
pub fn weight_at(a: &str, b: &str) -> Result<Value, Error> {
    let (a, b) = (parse_rational(a)?, parse_rational(b)?);
    let cone = kato_cone();
    let point = [a.clone(), b.clone()];
    let w = weight_filtration_at(&cone, &point)?;
    let ranks = rank_profile_of(cone.point(&point)?.matrix());
    let locus: BigRational = &a * &a - int(2) * &b * &b;
    Ok(json!({
        "weight_filtration": w,
        "graded_dims": w.graded_dims(),
        "rank_profile": ranks,
        "a2_minus_2b2": locus.to_string(),
    }))
}

/// Ray certificate for `N = a N1 + b N2` and `F = exp(i c N1) F0`.
pub fn pullback(a: i64, b: i64, c: &str) -> Result<Value, Error> {
    if let Some((index, v)) = [a, b].into_iter().enumerate().find(|(_, v)| *v <= 0) {
        return Err(Error::NonPositiveCoordinate { index, value: v.to_string() });
    }
    let c = parse_rational(c)?;
    let d = kato::datum();
    let n = NilpotentEndo::new(kato::n_at(a, b))?;
    let f = twist(&d.filtration, &Scalar::new(int(0), c), &NilpotentEndo::new(kato::n1())?);
    let v = certify_ray_orbit(&d, &n, &f)?;
    Ok(json!(v))
}

/// Integrality, semistability, verticality and the factorization.
pub fn monoid(matrix: &str) -> Result<Value, Error> {
    let h = parse_monoid(matrix)?;
    let vertical = match is_vertical(&h) {
        Ok(v) => json!(v),
        Err(_) => Value::Null,
    };
    Ok(json!({
        "integral": is_integral(&h),
        "witness": integrality_witness(&h),
        "semistable": is_semistable_local(&h),
        "vertical": vertical,
        "factorization": factorize(&h).ok(),
    }))
}

#[wasm_bindgen]
pub fn weight_filtration_json(a: &str, b: &str) -> String {
    respond(weight_at(a, b))
}

#[wasm_bindgen]
pub fn pullback_json(a: i32, b: i32, c: &str) -> String {
    respond(pullback(a.into(), b.into(), c))
}

#[wasm_bindgen]
pub fn monoid_json(matrix: &str) -> String {
    respond(monoid(matrix))
}

#[wasm_bindgen]
pub fn sign_convention() -> String {
    loghodge::SIGN_CONVENTION.join("; ")
}

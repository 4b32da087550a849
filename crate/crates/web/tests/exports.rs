use loghodge_web::{monoid_json, pullback_json, weight_filtration_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn weight_filtration_off_the_locus() {
    let v = parse(weight_filtration_json("3/2", "1"));
    assert_eq!(v["graded_dims"], serde_json::json!({"-2": 2, "0": 2, "2": 2}));
    assert_eq!(v["rank_profile"]["1"], 4);
    assert_eq!(v["a2_minus_2b2"], "1/4");
}

#[test]
fn pullback_gram_is_m_squared() {
    let v = parse(pullback_json(2, 1, "1/2"));
    assert_eq!(v["status"], "certified");
    assert_eq!(v["evidence"][0]["gram"], serde_json::json!([["10", "4"], ["4", "2"]]));
}

#[test]
fn errors_are_reported() {
    assert!(parse(pullback_json(0, 1, "0"))["error"].is_string());
    assert!(parse(weight_filtration_json("x", "1"))["error"].is_string());
    assert!(parse(monoid_json("[[1],"))["error"].is_string());
}

#[test]
fn monoid_checks() {
    let v = parse(monoid_json("[[1],[1]]"));
    assert_eq!(v["semistable"], true);
    assert_eq!(v["vertical"], true);
    let v = parse(monoid_json("[[1,1]]"));
    assert_eq!(v["integral"], false);
    assert!(v["vertical"].is_null());
    assert_eq!(v["witness"]["p1"], serde_json::json!([1, 0]));
}

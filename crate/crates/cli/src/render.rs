//! Plain-text reports.

use std::collections::BTreeMap;
use std::fmt::Write;

use loghodge::cone::{Constancy, JumpWitness, SampleJump};
use loghodge::exactalg::{Matrix, Scalar, Subspace};
use loghodge::filtration::IncFiltration;
use loghodge::hodge::GramRecord;
use loghodge::monoidlat::{factorize, integrality_witness, is_integral, is_semistable_local, is_vertical, MonoidHom};
use loghodge::orbit::{OrbitVerdict, OrbitWitness, PrePLHDatum, PullbackResult};
use serde_json::{json, Value};

pub fn banner() -> String {
    format!("sign convention: {}; {}\n", loghodge::SIGN_CONVENTION[0], loghodge::SIGN_CONVENTION[1])
}

fn vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m.to_rows().iter().map(|r| {
        let parts: Vec<String> = r.iter().map(ToString::to_string).collect();
        format!("[{}]", parts.join(", "))
    }).collect();
    format!("[{}]", rows.join(", "))
}

fn subspace(s: &Subspace) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = s.basis().iter().map(|v| vector(v)).collect();
    format!("<{}>", parts.join(", "))
}

fn list<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn dims(d: &BTreeMap<i64, usize>) -> String {
    list(d.iter().map(|(k, v)| format!("{k}:{v}")))
}

pub fn check(file: &str, d: &PrePLHDatum, v: &OrbitVerdict) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "datum: {file} (rank {}, weight {}, generators {})", d.rank, d.weight, list(&d.names));
    verdict(&mut s, v, &d.names, "");
    s
}

fn verdict(s: &mut String, v: &OrbitVerdict, names: &[String], indent: &str) {
    let _ = writeln!(s, "{indent}status: {}", v.status);
    let _ = writeln!(s, "{indent}reason: {}", v.reason);
    if let Some(d) = &v.detail {
        let _ = writeln!(s, "{indent}detail: {d}");
    }
    match &v.witness {
        Some(OrbitWitness::Vector { clause, vector: x }) => {
            let _ = writeln!(s, "{indent}witness ({}): {}", clause.name(), vector(x));
        }
        Some(OrbitWitness::Jump(j)) => jump(s, j, names, indent),
        Some(OrbitWitness::SampleJump(j)) => sample_jump(s, j, indent),
        None => {}
    }
    if let Some(c) = &v.constancy {
        if !matches!(c, Constancy::Jump(_) | Constancy::SampleJump(_)) {
            let _ = writeln!(s, "{indent}constancy: {}", constancy_line(c));
        }
    }
    grams(s, &v.evidence, indent);
    if !v.probe.is_empty() {
        let probes = list(v.probe.iter().map(|p| format!("t={} {}", p.t, p.membership)));
        let _ = writeln!(s, "{indent}probe exp(itN)F: {probes}");
    }
}

fn grams(s: &mut String, ev: &[GramRecord], indent: &str) {
    for g in ev {
        let k = g.k.map(|k| format!("k={k} ")).unwrap_or_default();
        let _ = writeln!(
            s,
            "{indent}gram {k}(p,q)=({},{}): {}  leading minors {}",
            g.p,
            g.q,
            matrix(&g.gram),
            list(&g.leading_minors)
        );
    }
}

fn constancy_line(c: &Constancy) -> String {
    match c {
        Constancy::Constant { method, samples } => {
            format!("constant ({}, {samples} samples)", serde_json::to_value(method).expect("method").as_str().unwrap_or(""))
        }
        Constancy::Inconclusive { samples, seed } => format!("inconclusive ({samples} samples agree, seed {seed})"),
        Constancy::Jump(_) => "jump".into(),
        Constancy::SampleJump(_) => "jump between samples".into(),
    }
}

fn jump(s: &mut String, j: &JumpWitness, names: &[String], indent: &str) {
    let other = names.get(1).map(String::as_str).unwrap_or("b");
    let locus: Vec<String> = j.locus_profile.iter().map(|r| r.map_or("?".into(), |r| r.to_string())).collect();
    let _ = writeln!(s, "{indent}jump witness:");
    let _ = writeln!(s, "{indent}  power: N^{} (generic rank {})", j.power, j.generic_rank);
    let _ = writeln!(s, "{indent}  polynomial ({other} = 1): {}", j.polynomial);
    let _ = writeln!(s, "{indent}  homogenized: {}", j.homogenized);
    let _ = writeln!(s, "{indent}  interior roots: {}", j.interior_roots);
    let _ = writeln!(s, "{indent}  rank N^k, k = 1, 2, ...: generic {}; on locus {}", list(&j.generic_profile), locus.join(", "));
    let _ = writeln!(s, "{indent}  generic sample {} = {}: rank {}", j.variable, j.sample, j.sample_rank);
}

fn sample_jump(s: &mut String, j: &SampleJump, indent: &str) {
    let _ = writeln!(s, "{indent}jump between samples:");
    let _ = writeln!(s, "{indent}  {}: gr_W dims {}", vector(&j.first), dims(&j.first_graded));
    let _ = writeln!(s, "{indent}  {}: gr_W dims {}", vector(&j.second), dims(&j.second_graded));
}

pub fn constancy(names: &[String], c: &Constancy) -> String {
    let mut s = String::new();
    match c {
        Constancy::Jump(j) => {
            let _ = writeln!(s, "constancy: not constant");
            jump(&mut s, j, names, "");
        }
        Constancy::SampleJump(j) => {
            let _ = writeln!(s, "constancy: not constant");
            sample_jump(&mut s, j, "");
        }
        _ => {
            let _ = writeln!(s, "constancy: {}", constancy_line(c));
        }
    }
    s
}

pub fn wf(d: &PrePLHDatum, point: &[String], w: &IncFiltration, ranks: &BTreeMap<u32, usize>) -> String {
    let mut s = String::new();
    let combo = list(point.iter().zip(&d.names).map(|(c, n)| format!("{n}={c}")));
    let _ = writeln!(s, "N = Σ a_i N_i at {combo}; W centered at weight {}", d.weight);
    if let Some((lo, hi)) = w.index_range() {
        for k in lo..=hi {
            let step = w.get(k);
            let _ = writeln!(s, "W_{k} (dim {}): {}", step.dim(), subspace(&step));
        }
    }
    let _ = writeln!(s, "gr_W dims: {}", dims(&w.graded_dims()));
    let _ = writeln!(s, "rank N^k: {}", list(ranks.iter().map(|(k, r)| format!("{k}:{r}"))));
    s
}

pub fn pullbacks(results: &[PullbackResult]) -> String {
    let mut s = String::new();
    for r in results {
        let twist = match &r.sample.twist {
            Some(t) => format!("exp(i Σ t_i N_i) F, t = {}", vector(t)),
            None => format!("exp(i c N_1) F, c = {}", r.sample.c),
        };
        let _ = writeln!(s, "sample a = ({}), {twist}", list(&r.sample.a));
        verdict(&mut s, &r.verdict, &[], "  ");
    }
    s
}

/// Accumulates text and JSON for `monoid`.
pub struct MonoidReport {
    pub text: String,
    pub json: Value,
}

impl MonoidReport {
    pub fn new(h: &MonoidHom) -> Self {
        let rows = list(h.rows().iter().map(|r| format!("[{}]", list(r))));
        let text = format!("h: N^{} -> N^{}, rows {rows}\n", h.r(), h.s());
        MonoidReport { text, json: json!({ "r": h.r(), "s": h.s(), "rows": h.rows() }) }
    }

    fn set(&mut self, key: &str, v: Value) {
        self.json[key] = v;
    }

    pub fn integral(&mut self, h: &MonoidHom) -> bool {
        let ok = is_integral(h);
        let _ = writeln!(self.text, "integral: {ok}");
        let mut v = json!({ "value": ok });
        if let Some(w) = integrality_witness(h) {
            let _ = writeln!(
                self.text,
                "  witness: h(p1) + q1 = h(p2) + q2 with p1 = [{}], p2 = [{}], q1 = [{}], q2 = [{}]",
                list(&w.p1),
                list(&w.p2),
                list(&w.q1),
                list(&w.q2)
            );
            v["witness"] = json!(w);
        }
        self.set("integral", v);
        ok
    }

    pub fn semistable(&mut self, h: &MonoidHom) -> bool {
        let ok = is_semistable_local(h);
        let _ = writeln!(self.text, "semistable: {ok}");
        let mut v = json!({ "value": ok });
        if !ok {
            let bad = h.rows().iter().position(|row| {
                row.iter().filter(|&&x| x > 0).count() != 1 || row.iter().any(|&x| x > 1)
            });
            if let Some(j) = bad {
                let _ = writeln!(self.text, "  row {} is not a unit vector", j + 1);
                v["row"] = json!(j);
            }
        }
        self.set("semistable", v);
        ok
    }

    /// `None` when `h` is not integral.
    pub fn vertical(&mut self, h: &MonoidHom) -> Option<bool> {
        match is_vertical(h) {
            Ok(ok) => {
                let _ = writeln!(self.text, "vertical: {ok}");
                let mut v = json!({ "value": ok });
                let zero: Vec<usize> = (0..h.s()).filter(|&j| h.rows()[j].iter().all(|&x| x == 0)).collect();
                if !zero.is_empty() {
                    let _ = writeln!(self.text, "  zero rows (f_j not invertible in the quotient): {}", list(zero.iter().map(|j| j + 1)));
                    v["zero_rows"] = json!(zero);
                }
                self.set("vertical", v);
                Some(ok)
            }
            Err(_) => {
                let _ = writeln!(self.text, "vertical: undecided (only decided for integral h)");
                self.set("vertical", json!({ "value": null, "reason": "not integral" }));
                None
            }
        }
    }

    pub fn factor(&mut self, h: &MonoidHom) -> bool {
        match factorize(h) {
            Ok(f) => {
                let _ = writeln!(self.text, "factorization:");
                for b in &f.blocks {
                    let _ = writeln!(
                        self.text,
                        "  e{} -> rows [{}] with values [{}]",
                        b.column + 1,
                        list(b.rows.iter().map(|j| j + 1)),
                        list(&b.values)
                    );
                }
                if !f.zero_rows.is_empty() {
                    let _ = writeln!(self.text, "  zero rows [{}]", list(f.zero_rows.iter().map(|j| j + 1)));
                }
                self.set("factorization", json!(f));
                true
            }
            Err(e) => {
                let _ = writeln!(self.text, "factorization: none ({e})");
                self.set("factorization", Value::Null);
                false
            }
        }
    }
}

//! Copies of `fixtures/`, so the binary works from any directory.

pub struct Fixture {
    pub name: &'static str,
    pub kind: &'static str,
    pub about: &'static str,
    pub text: &'static str,
}

macro_rules! fixture {
    ($name:literal, $kind:literal, $about:literal) => {
        Fixture { name: $name, kind: $kind, about: $about, text: include_str!(concat!("../../../fixtures/", $name, ".json")) }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("kato", "datum", "rank 6, weight 0, cone(N1, N2); jumps along a^2 = 2b^2"),
    fixture!("kato_subcone", "datum", "cone(N1, 3N1 + N2); constant weight filtration"),
    fixture!("kato_ray", "datum", "the single ray N1"),
    fixture!("elliptic", "datum", "weight 1, tau = i, zero nilpotent"),
    fixture!("elliptic_conj", "datum", "weight 1, tau = -i, zero nilpotent"),
    fixture!("jordan2", "datum", "weight 1, one 2x2 Jordan block"),
    fixture!("jordan3", "datum", "weight 2, one 3x3 Jordan block"),
    fixture!("diagonal", "monoid", "N -> N^2, 1 -> (1, 1)"),
    fixture!("semistable", "monoid", "product of two diagonal maps"),
    fixture!("nonsemistable", "monoid", "N -> N^2, 1 -> (2, 1); integral"),
    fixture!("nonintegral", "monoid", "row (1, 1) meets both basis vectors"),
];

/// Accepts `kato`, `kato.json` or `<dir>/fixtures/kato.json`.
pub fn lookup(arg: &str) -> Option<&'static str> {
    let (dir, base) = arg.rsplit_once(['/', '\\']).unwrap_or(("", arg));
    if !(dir.is_empty() || dir.ends_with("fixtures")) {
        return None;
    }
    let name = base.strip_suffix(".json").unwrap_or(base);
    FIXTURES.iter().find(|f| f.name == name).map(|f| f.text)
}

//! JSON datum files.
//!
//! ```json
//! {"rank": 2, "weight": 1,
//!  "hodge_numbers": {"1,0": 1, "0,1": 1},
//!  "form": [[0, 1], [-1, 0]],
//!  "filtration": {"0": [[1, 0], [0, 1]], "1": [[0, 1]]},
//!  "nilpotents": [[[0, -1], [0, 0]]],
//!  "cone_names": ["a"]}
//! ```
//!
//! Rationals are strings such as `"-3/2"` or integers; Gaussian rationals are
//! `{"re": "1/2", "im": "1"}`. `filtration` lists spanning vectors of `F^p`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cone::MonodromyCone;
use crate::exactalg::{Matrix, Subspace, Vector};
use crate::filtration::DecFiltration;
use crate::monoidlat::MonoidHom;
use crate::orbit::{validate_datum, PrePLHDatum};
use crate::Error;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub rank: usize,
    pub weight: i64,
    pub hodge_numbers: BTreeMap<String, usize>,
    pub form: Matrix,
    pub filtration: BTreeMap<String, Vec<Vector>>,
    pub nilpotents: Vec<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone_names: Option<Vec<String>>,
}

fn json_error(e: &serde_json::Error) -> Error {
    Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
}

fn invalid(invariant: &'static str, detail: String) -> Error {
    Error::InvalidDatum { invariant, detail }
}

fn parse_index(key: &str) -> Result<i64, Error> {
    key.trim().parse().map_err(|_| invalid("filtration_index", format!("{key:?} is not an integer")))
}

fn parse_pq(key: &str) -> Result<(i64, i64), Error> {
    let bad = || invalid("hodge_key", format!("{key:?} is not of the form \"p,q\""));
    let (p, q) = key.split_once(',').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?))
}

impl DatumFile {
    pub fn into_datum(self) -> Result<PrePLHDatum, Error> {
        let hodge_numbers = self
            .hodge_numbers
            .iter()
            .map(|(k, &v)| Ok((parse_pq(k)?, v)))
            .collect::<Result<BTreeMap<_, _>, Error>>()?;
        let mut steps = BTreeMap::new();
        for (k, vecs) in self.filtration {
            let p = parse_index(&k)?;
            let s = Subspace::try_span(self.rank, vecs).map_err(|e| invalid("filtration_vectors", format!("F^{p}: {e}")))?;
            steps.insert(p, s);
        }
        let filtration =
            DecFiltration::from_steps(self.rank, steps).map_err(|e| invalid("filtration_nested", e.to_string()))?;
        let names = self.cone_names.unwrap_or_else(|| MonodromyCone::default_names(self.nilpotents.len()));
        Ok(PrePLHDatum {
            rank: self.rank,
            weight: self.weight,
            hodge_numbers,
            form: self.form,
            filtration,
            nilpotents: self.nilpotents,
            names,
        })
    }

    pub fn from_datum(d: &PrePLHDatum) -> Self {
        DatumFile {
            rank: d.rank,
            weight: d.weight,
            hodge_numbers: d.hodge_numbers.iter().map(|(&(p, q), &h)| (format!("{p},{q}"), h)).collect(),
            form: d.form.clone(),
            filtration: d.filtration.jumps().iter().map(|(p, s)| (p.to_string(), s.basis().to_vec())).collect(),
            nilpotents: d.nilpotents.clone(),
            cone_names: Some(d.names.clone()),
        }
    }
}

/// Parses without checking the datum invariants.
pub fn parse_datum(text: &str) -> Result<PrePLHDatum, Error> {
    let file: DatumFile = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    file.into_datum()
}

/// Parses and validates.
pub fn load_datum(text: &str) -> Result<PrePLHDatum, Error> {
    let d = parse_datum(text)?;
    validate_datum(&d)?;
    Ok(d)
}

pub fn datum_to_json(d: &PrePLHDatum) -> String {
    serde_json::to_string_pretty(&DatumFile::from_datum(d)).expect("serializable")
}

/// A JSON array of rows of nonnegative integers.
pub fn parse_monoid(text: &str) -> Result<MonoidHom, Error> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    MonoidHom::new(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{jordan, kato};

    #[test]
    fn round_trip() {
        for d in [kato::datum(), jordan::block2(), jordan::block3()] {
            assert_eq!(load_datum(&datum_to_json(&d)).unwrap(), d);
        }
    }

    #[test]
    fn errors_carry_locations() {
        let Err(Error::Parse(msg)) = parse_datum("{\"rank\": 2,\n \"weight\": }") else { panic!() };
        assert!(msg.starts_with("line 2, column"), "{msg}");
        let mut text = datum_to_json(&kato::datum());
        text = text.replacen("\"-1,1\"", "\"-1;1\"", 1);
        assert!(matches!(parse_datum(&text), Err(Error::InvalidDatum { invariant: "hodge_key", .. })));
    }

    #[test]
    fn monoid_matrices() {
        assert_eq!(parse_monoid("[[1],[1]]").unwrap().s(), 2);
        assert!(parse_monoid("[[1],[-1]]").is_err());
        assert!(matches!(parse_monoid("[[1],"), Err(Error::Parse(_))));
    }
}

//! JSON input formats: ring specifications, matrices, representations and
//! conjugator lists.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rep::{GroupTable, Mat2, MatrixRep, GROUP_CAP};
use crate::ring::{LocalRing, Ring, RingElem, RingSpec, RING_SIZE_CAP};

/// Matrix as four coefficient arrays, row-major.
pub type MatJson = Vec<Vec<i64>>;

/// A representation given by the matrices generating its image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepInput {
    pub ring: RingSpec,
    pub generators: Vec<MatJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    /// Generators of the declared coefficient subring for the twist search.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient_subring: Option<Vec<Vec<i64>>>,
}

/// Enumeration limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest ring, in elements.
    pub ring: u64,
    /// Largest group, in elements.
    pub group: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { ring: RING_SIZE_CAP, group: GROUP_CAP }
    }
}

impl Caps {
    /// Parses `ring=N,group=M`; either key may be omitted.
    pub fn parse(text: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) =
                part.split_once('=').ok_or_else(|| Error::Input(format!("cap `{part}` is not of the form key=value")))?;
            let v: u64 = value.trim().parse().map_err(|_| Error::Input(format!("cap value `{value}` is not an integer")))?;
            match key.trim() {
                "ring" => caps.ring = v,
                "group" => caps.group = v as usize,
                other => return Err(Error::Input(format!("unknown cap `{other}`"))),
            }
        }
        Ok(caps)
    }
}

impl RepInput {
    pub fn parse(text: &str) -> Result<RepInput> {
        serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("input serializes")
    }
}

/// A parsed representation with its ring.
#[derive(Clone, Debug)]
pub struct LoadedRep {
    pub input: RepInput,
    pub ring: Ring,
    pub rep: MatrixRep,
}

pub fn build_ring(spec: &RingSpec, caps: &Caps) -> Result<Ring> {
    let size = (spec.p as u128).checked_pow(spec.n.saturating_mul(spec.f)).unwrap_or(u128::MAX);
    if size > caps.ring as u128 {
        return Err(Error::CapExceeded { what: "ring size", cap: caps.ring });
    }
    let r = LocalRing::new(spec.clone())?;
    if r.size() as u64 > caps.ring {
        return Err(Error::CapExceeded { what: "ring size", cap: caps.ring });
    }
    Ok(r)
}

pub fn parse_elem(r: &LocalRing, c: &[i64]) -> Result<RingElem> {
    r.from_coeffs(c).map_err(|e| Error::Input(e.to_string()))
}

pub fn parse_mat(r: &LocalRing, m: &MatJson) -> Result<Mat2> {
    if m.len() != 4 {
        return Err(Error::Input(format!("matrix has {} entries, expected 4", m.len())));
    }
    Ok(Mat2::new(parse_elem(r, &m[0])?, parse_elem(r, &m[1])?, parse_elem(r, &m[2])?, parse_elem(r, &m[3])?))
}

pub fn mat_to_json(r: &LocalRing, m: &Mat2) -> MatJson {
    m.0.iter().map(|x| r.coeffs(*x).into_iter().map(|c| c as i64).collect()).collect()
}

/// Builds the image group and the tautological representation on it.
pub fn load_rep(input: &RepInput, caps: &Caps) -> Result<LoadedRep> {
    let r = build_ring(&input.ring, caps)?;
    if let Some(labels) = &input.labels {
        if labels.len() != input.generators.len() {
            return Err(Error::Input(format!(
                "{} labels for {} generators",
                labels.len(),
                input.generators.len()
            )));
        }
    }
    let gens = input.generators.iter().map(|m| parse_mat(&r, m)).collect::<Result<Vec<_>>>()?;
    for (i, g) in gens.iter().enumerate() {
        if !g.is_invertible(&r) {
            return Err(Error::Input(format!("generator {i} is not invertible")));
        }
    }
    let group = GroupTable::close_capped(&r, &gens, caps.group)?;
    let rep = MatrixRep::identity(Arc::new(group));
    Ok(LoadedRep { input: input.clone(), ring: r, rep })
}

/// A JSON array of matrices.
pub fn parse_conjugators(r: &LocalRing, text: &str) -> Result<Vec<Mat2>> {
    let raw: Vec<MatJson> = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
    raw.iter().map(|m| parse_mat(r, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sl2_f3() {
        let text = r#"{"ring": {"p": 3, "n": 1, "f": 1}, "generators": [[[1],[1],[0],[1]], [[1],[0],[1],[1]]]}"#;
        let input = RepInput::parse(text).unwrap();
        let loaded = load_rep(&input, &Caps::default()).unwrap();
        assert_eq!(loaded.rep.group().len(), 24);
        let again = RepInput::parse(&input.to_json().to_string()).unwrap();
        assert_eq!(again, input);
    }

    #[test]
    fn rejects_bad_inputs() {
        let bad_poly = r#"{"ring": {"p": 3, "n": 2, "f": 1, "ext": {"var": "u", "minpoly": [1, 0, 1]}}, "generators": []}"#;
        assert!(load_rep(&RepInput::parse(bad_poly).unwrap(), &Caps::default()).is_err());
        assert!(matches!(RepInput::parse(r#"{"ring": {"p": 3}}"#), Err(Error::Input(_))));
        let singular = r#"{"ring": {"p": 3, "n": 1, "f": 1}, "generators": [[[1],[1],[1],[1]]]}"#;
        assert!(matches!(load_rep(&RepInput::parse(singular).unwrap(), &Caps::default()), Err(Error::Input(_))));
    }

    #[test]
    fn caps() {
        assert_eq!(Caps::parse("ring=81,group=100").unwrap(), Caps { ring: 81, group: 100 });
        assert!(Caps::parse("rings=1").is_err());
        let text = r#"{"ring": {"p": 7, "n": 1, "f": 1}, "generators": [[[1],[1],[0],[1]], [[1],[0],[1],[1]]]}"#;
        let input = RepInput::parse(text).unwrap();
        let err = load_rep(&input, &Caps { ring: 1 << 20, group: 100 }).unwrap_err();
        assert!(err.is_cap());
        assert!(build_ring(&input.ring, &Caps { ring: 5, group: 10 }).unwrap_err().is_cap());
    }
}

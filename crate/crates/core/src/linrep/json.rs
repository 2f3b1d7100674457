use serde::{Deserialize, Serialize};

use super::rational::{format_rational, parse_rational, Rational, RationalMatrix};
use super::LinearRepresentation;
use crate::error::{Error, Result};

/// File form of a representation; rationals are `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub rank: usize,
    pub v: Vec<String>,
    pub gamma0: Vec<Vec<String>>,
    pub gamma1: Vec<Vec<String>>,
    pub w: Vec<String>,
}

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(format_rational).collect()
}

fn parse_vec(xs: &[String]) -> Result<Vec<Rational>> {
    xs.iter().map(|s| parse_rational(s)).collect()
}

fn parse_matrix(rows: &[Vec<String>], r: usize) -> Result<RationalMatrix> {
    if r == 0 {
        return Ok(RationalMatrix::zeros(0, 0));
    }
    RationalMatrix::from_rows(
        rows.iter()
            .map(|row| parse_vec(row))
            .collect::<Result<_>>()?,
    )
}

impl From<&LinearRepresentation> for RepJson {
    fn from(rep: &LinearRepresentation) -> Self {
        let m = |d: u8| rep.gamma(d).to_rows().iter().map(|r| strings(r)).collect();
        RepJson {
            rank: rep.rank(),
            v: strings(rep.v()),
            gamma0: m(0),
            gamma1: m(1),
            w: strings(rep.w()),
        }
    }
}

impl TryFrom<&RepJson> for LinearRepresentation {
    type Error = Error;
    fn try_from(j: &RepJson) -> Result<Self> {
        if j.v.len() != j.rank {
            return Err(Error::Shape(format!(
                "declared rank {} but v has {} entries",
                j.rank,
                j.v.len()
            )));
        }
        LinearRepresentation::new(
            parse_vec(&j.v)?,
            parse_matrix(&j.gamma0, j.rank)?,
            parse_matrix(&j.gamma1, j.rank)?,
            parse_vec(&j.w)?,
        )
    }
}

impl LinearRepresentation {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&RepJson::from(self)).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: RepJson = serde_json::from_str(s)?;
        LinearRepresentation::try_from(&j)
    }
}

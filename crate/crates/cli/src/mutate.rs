//! `--mutate` fault injection.

use std::str::FromStr;

use liecoh_core::{Rational, Scalar};

use crate::CliError;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// A structure constant `C_ij^k`.
    Structure,
    /// A component of the command's main tensor.
    Tensor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub target: Target,
    pub index: Vec<usize>,
    pub delta: Scalar,
}

impl FromStr for Mutation {
    type Err = CliError;

    /// `C:0,1,2:+1`, `W:0,1,2,3,4:-1/2`, `W:0,1,2:2i`.
    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = |why: &str| CliError::Usage(format!("--mutate {s:?}: {why}"));
        let parts: Vec<&str> = s.split(':').collect();
        let [t, idx, delta] = parts[..] else {
            return Err(bad("expected TARGET:INDICES:DELTA"));
        };
        let target = match t {
            "C" => Target::Structure,
            "W" => Target::Tensor,
            _ => return Err(bad("target must be C or W")),
        };
        let index = idx
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad("indices must be non-negative integers"))?;
        let d = delta.trim().trim_start_matches('+');
        let delta = match d.strip_suffix('i') {
            Some(im) => Scalar::imag(Rational::from_str(if im.is_empty() { "1" } else { im }).map_err(|_| bad("bad delta"))?),
            None => Scalar::real(Rational::from_str(d).map_err(|_| bad("bad delta"))?),
        };
        if delta.is_zero() {
            return Err(bad("delta must be nonzero"));
        }
        if target == Target::Structure && index.len() != 3 {
            return Err(bad("a structure constant takes three indices i,j,k"));
        }
        Ok(Mutation { target, index, delta })
    }
}

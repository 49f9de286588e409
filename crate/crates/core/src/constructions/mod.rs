//! The line families and subspace designs under study.

mod designs;
mod examples;
mod tangents;

pub use designs::{gk_frs_design, gk_mult_design, DesignFamily, DesignParams, PolySubspace};
pub use examples::{fano_concurrent, pg3_examples, plane_triangle, quadric_points, Pg3Variant};
pub use tangents::{
    default_injection, diverted_pluecker_closed_form, diverted_tangent, higgledy_family, moment_point,
    moment_tangent, tangent_at_infinity, tangent_pluecker_closed_form, Injection,
};

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::projective::{ProjectiveSpace, Subspace};

/// An ordered list of pairwise distinct lines of one projective space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSet {
    construction: String,
    lines: Vec<Subspace>,
    /// Curve parameter of each line, when the construction has one.
    t_values: Vec<Elem>,
}

impl LineSet {
    pub fn new(space: &ProjectiveSpace, construction: impl Into<String>, lines: Vec<Subspace>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(lines.len());
        for (i, l) in lines.iter().enumerate() {
            if l.ambient_len() != space.n() {
                return Err(Error::DimensionMismatch { expected: space.n(), found: l.ambient_len() });
            }
            if l.rank() != 2 {
                return Err(Error::WrongRank { expected: 2, found: l.rank() });
            }
            if !seen.insert(l) {
                return Err(Error::DuplicateLine(i));
            }
        }
        Ok(LineSet { construction: construction.into(), lines, t_values: Vec::new() })
    }

    pub fn with_t_values(mut self, t_values: Vec<Elem>) -> Result<Self> {
        if !t_values.is_empty() && t_values.len() != self.lines.len() {
            return Err(Error::DimensionMismatch { expected: self.lines.len(), found: t_values.len() });
        }
        self.t_values = t_values;
        Ok(self)
    }

    pub fn construction(&self) -> &str {
        &self.construction
    }

    pub fn lines(&self) -> &[Subspace] {
        &self.lines
    }

    pub fn t_values(&self) -> &[Elem] {
        &self.t_values
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

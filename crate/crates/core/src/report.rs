//! JSON documents exchanged between `construct`, `verify`, `design` and `search`.
//!
//! Field elements appear as enumeration indices; every document carries the
//! field's characteristic, degree and modulus so the indices can be decoded.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::constructions::{DesignFamily, DesignParams, LineSet, PolySubspace};
use crate::error::{Error, Result};
use crate::field::{Elem, GaloisField};
use crate::pluecker;
use crate::projective::{ProjectiveSpace, Subspace};
use crate::verification::{
    DesignMode, DesignReport, GeneratorReport, PartialCertification, PlueckerOutcome, SearchReport, SizeSummary,
    SufficiencyVerdict, TransversalWitness,
};
use crate::verification::ConsistencyMonitor;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub p: u32,
    pub k: u32,
    /// Monic modulus, low degree first; absent for prime fields.
    pub modulus: Option<Vec<u32>>,
}

impl FieldDoc {
    pub fn from_field(f: &GaloisField) -> Self {
        FieldDoc { p: f.characteristic(), k: f.degree(), modulus: f.modulus().map(<[u32]>::to_vec) }
    }

    /// Rebuilds the field, rejecting a modulus other than the canonical one.
    pub fn to_field(&self) -> Result<GaloisField> {
        let f = GaloisField::new(self.p, self.k)?;
        if self.modulus.as_deref() != f.modulus() {
            return Err(Error::InvalidParameter(format!(
                "modulus {:?} differs from the canonical {:?}",
                self.modulus,
                f.modulus()
            )));
        }
        Ok(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSetDoc {
    pub kind: String,
    pub field: FieldDoc,
    pub dim: usize,
    pub construction: String,
    /// Construction parameters, echoed for reproducibility.
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    #[serde(default)]
    pub t_values: Vec<Elem>,
    /// Each line as its two RREF rows.
    pub lines: Vec<Vec<Vec<Elem>>>,
}

pub const LINE_SET_KIND: &str = "line-set";
pub const DESIGN_FAMILY_KIND: &str = "design-family";

impl LineSetDoc {
    pub fn new(space: &ProjectiveSpace, set: &LineSet) -> Self {
        LineSetDoc {
            kind: LINE_SET_KIND.into(),
            field: FieldDoc::from_field(space.field()),
            dim: space.dim(),
            construction: set.construction().into(),
            params: BTreeMap::new(),
            t_values: set.t_values().to_vec(),
            lines: set.lines().iter().map(|l| l.rows().to_vec()).collect(),
        }
    }

    pub fn to_line_set(&self) -> Result<(ProjectiveSpace, LineSet)> {
        if self.kind != LINE_SET_KIND {
            return Err(Error::InvalidParameter(format!("expected a {LINE_SET_KIND} document, got {}", self.kind)));
        }
        let space = ProjectiveSpace::new(self.dim, self.field.to_field()?)?;
        let q = space.q();
        let lines = self
            .lines
            .iter()
            .map(|rows| {
                if rows.iter().flatten().any(|e| e.0 >= q) {
                    return Err(Error::InvalidParameter(format!("element index out of range for q = {q}")));
                }
                let l = space.rref(rows)?;
                if l.rank() != 2 {
                    return Err(Error::WrongRank { expected: 2, found: l.rank() });
                }
                Ok(l)
            })
            .collect::<Result<Vec<_>>>()?;
        let set = LineSet::new(&space, self.construction.clone(), lines)?.with_t_values(self.t_values.clone())?;
        Ok((space, set))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub s: usize,
    pub r: usize,
    pub t: usize,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberDoc {
    /// Index in `label_field`.
    pub label: Elem,
    pub codim: usize,
    pub rows: Vec<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignFamilyDoc {
    pub kind: String,
    pub field: FieldDoc,
    pub label_field: FieldDoc,
    pub construction: String,
    pub params: ParamsDoc,
    pub members: Vec<MemberDoc>,
}

impl DesignFamilyDoc {
    pub fn new(fam: &DesignFamily) -> Self {
        let p = fam.params;
        DesignFamilyDoc {
            kind: DESIGN_FAMILY_KIND.into(),
            field: FieldDoc::from_field(&fam.field),
            label_field: FieldDoc::from_field(&fam.label_field),
            construction: fam.construction.clone(),
            params: ParamsDoc { s: p.s, r: p.r, t: p.t, d: p.d },
            members: fam
                .members
                .iter()
                .map(|m| MemberDoc { label: m.label(), codim: m.codim(), rows: m.rows().to_vec() })
                .collect(),
        }
    }

    pub fn to_family(&self) -> Result<DesignFamily> {
        if self.kind != DESIGN_FAMILY_KIND {
            return Err(Error::InvalidParameter(format!(
                "expected a {DESIGN_FAMILY_KIND} document, got {}",
                self.kind
            )));
        }
        let field = self.field.to_field()?;
        let label_field = self.label_field.to_field()?;
        let p = &self.params;
        let ambient = p.d + 1;
        let members = self
            .members
            .iter()
            .map(|m| {
                if m.rows.iter().flatten().any(|e| e.0 >= field.order()) {
                    return Err(Error::InvalidParameter("element index out of range".into()));
                }
                PolySubspace::new(&field, m.label, m.rows.clone(), ambient)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DesignFamily {
            construction: self.construction.clone(),
            params: DesignParams { s: p.s, r: p.r, t: p.t, d: p.d },
            field,
            label_field,
            members,
        })
    }
}

/// Wrapper shared by every report: what was run, on which field, and which property it decides.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub kind: &'static str,
    pub tool_version: &'static str,
    pub property: String,
    pub config: BTreeMap<String, String>,
    pub field: FieldDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
    pub result: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(
        kind: &'static str,
        property: impl Into<String>,
        config: BTreeMap<String, String>,
        field: &GaloisField,
        result: T,
    ) -> Self {
        Envelope {
            kind,
            tool_version: TOOL_VERSION,
            property: property.into(),
            config,
            field: FieldDoc::from_field(field),
            wall_time_ms: None,
            result,
        }
    }
}

/// Property descriptions embedded in reports.
pub mod property {
    pub const GENERATOR: &str =
        "generator set of lines: every hyperplane meets the union of the lines in a set spanning the hyperplane";
    pub const TRANSVERSAL: &str = "co-dimension-two transversal: a subspace of co-dimension two meeting every line";
    pub const SUFFICIENCY: &str =
        "sufficient condition: no co-dimension-two transversal implies generator; a generator set with a transversal has more than q lines";
    pub const DESIGN: &str = "(s,A) subspace design: maximum over s-dimensional W of the weak count or strong sum of dim(H_i meet W)";
    pub const SEARCH: &str = "smallest generator set of lines, with a lower bound of floor(d/2)+d lines when q is large enough";
    pub const WRONSKIAN: &str = "degree of the folded or derivative Wronskian: at most ds-C(s,2) (folded) or s(d-s+1) (derivative)";
    pub const DIVERTED: &str = "2d-1 diverted tangents of the moment curve are in higgledy-piggledy position";
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorResult {
    pub construction: String,
    pub dim: usize,
    pub line_count: usize,
    pub verdict: bool,
    pub counterexample: Option<Vec<Elem>>,
    pub rank_histogram: Vec<u64>,
}

impl GeneratorResult {
    pub fn new(space: &ProjectiveSpace, set: &LineSet, r: &GeneratorReport) -> Self {
        GeneratorResult {
            construction: set.construction().into(),
            dim: space.dim(),
            line_count: set.len(),
            verdict: r.verdict,
            counterexample: r.counterexample.as_ref().map(|h| h.coords().to_vec()),
            rank_histogram: r.rank_histogram.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessDoc {
    pub subspace: Vec<Vec<Elem>>,
    /// Dual Plücker coordinates as sorted `(i, j, value)` triples.
    pub pluecker: Vec<(usize, usize, Elem)>,
    pub meeting_points: Vec<Vec<Elem>>,
}

impl WitnessDoc {
    pub fn new(space: &ProjectiveSpace, w: &TransversalWitness) -> Result<Self> {
        Ok(WitnessDoc {
            subspace: w.subspace.rows().to_vec(),
            pluecker: pluecker::codim2_to_pluecker(space, &w.subspace)?.triples(),
            meeting_points: w.meeting_points.iter().map(|p: &Subspace| p.rows()[0].clone()).collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalResult {
    pub construction: String,
    pub dim: usize,
    pub line_count: usize,
    pub method: String,
    /// The Plücker finder delegated to the geometric scan.
    pub fallback: bool,
    pub found: bool,
    pub witness: Option<WitnessDoc>,
}

impl TransversalResult {
    pub fn geometric(space: &ProjectiveSpace, set: &LineSet, w: Option<&TransversalWitness>) -> Result<Self> {
        Self::build(space, set, "geometric", false, w)
    }

    pub fn pluecker(space: &ProjectiveSpace, set: &LineSet, o: &PlueckerOutcome) -> Result<Self> {
        Self::build(space, set, "pluecker", matches!(o, PlueckerOutcome::Fallback(_)), o.witness())
    }

    fn build(
        space: &ProjectiveSpace,
        set: &LineSet,
        method: &str,
        fallback: bool,
        w: Option<&TransversalWitness>,
    ) -> Result<Self> {
        Ok(TransversalResult {
            construction: set.construction().into(),
            dim: space.dim(),
            line_count: set.len(),
            method: method.into(),
            fallback,
            found: w.is_some(),
            witness: w.map(|w| WitnessDoc::new(space, w)).transpose()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SufficiencyResult {
    pub construction: String,
    pub line_count: usize,
    pub generator: bool,
    pub transversal_found: bool,
    pub contrapositive_holds: bool,
    pub size_bound_holds: bool,
    pub consistent: bool,
}

impl SufficiencyResult {
    pub fn new(set: &LineSet, v: &SufficiencyVerdict) -> Self {
        SufficiencyResult {
            construction: set.construction().into(),
            line_count: set.len(),
            generator: v.generator,
            transversal_found: v.transversal.is_some(),
            contrapositive_holds: v.contrapositive_holds,
            size_bound_holds: v.size_bound_holds,
            consistent: v.consistent(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioDoc {
    pub numer: u64,
    pub denom: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignResult {
    pub construction: String,
    pub params: ParamsDoc,
    pub member_count: usize,
    pub mode: DesignMode,
    pub s: usize,
    pub measured: u64,
    pub witness: Vec<Vec<Elem>>,
    pub claimed_bound: Option<RatioDoc>,
    pub satisfied: bool,
    pub subspaces_checked: u64,
    pub weak_le_strong: bool,
}

impl DesignResult {
    pub fn new(fam: &DesignFamily, r: &DesignReport) -> Self {
        let p = fam.params;
        DesignResult {
            construction: fam.construction.clone(),
            params: ParamsDoc { s: p.s, r: p.r, t: p.t, d: p.d },
            member_count: fam.members.len(),
            mode: r.mode,
            s: r.s,
            measured: r.measured,
            witness: r.witness.clone(),
            claimed_bound: r.claimed_bound.map(|b| RatioDoc { numer: *b.numer(), denom: *b.denom() }),
            satisfied: r.satisfied,
            subspaces_checked: r.subspaces_checked,
            weak_le_strong: r.weak_le_strong,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub dim: usize,
    pub strategy: crate::verification::SearchStrategy,
    pub line_count: usize,
    pub sizes: Vec<SizeSummary>,
    pub generator: Option<Vec<usize>>,
    pub generator_lines: Option<Vec<Vec<Vec<Elem>>>>,
    pub certified_none_up_to: usize,
    pub partial: Option<PartialCertification>,
    pub monitor: ConsistencyMonitor,
}

impl SearchResult {
    pub fn new(space: &ProjectiveSpace, r: &SearchReport) -> Self {
        SearchResult {
            dim: space.dim(),
            strategy: r.strategy,
            line_count: r.line_count,
            sizes: r.sizes.clone(),
            generator: r.generator.clone(),
            generator_lines: r
                .generator_lines
                .as_ref()
                .map(|s| s.lines().iter().map(|l| l.rows().to_vec()).collect()),
            certified_none_up_to: r.certified_none_up_to,
            partial: r.partial.clone(),
            monitor: r.monitor.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{default_injection, gk_frs_design, higgledy_family};

    #[test]
    fn line_set_round_trip() {
        let s = ProjectiveSpace::new(3, GaloisField::parse("5").unwrap()).unwrap();
        let fam = higgledy_family(&s, 5, &default_injection(&s).unwrap()).unwrap();
        let doc = LineSetDoc::new(&s, &fam);
        let (s2, back) = doc.to_line_set().unwrap();
        assert_eq!(s2.dim(), 3);
        assert_eq!(back, fam);
    }

    #[test]
    fn rejects_foreign_modulus_and_kind() {
        let mut fd = FieldDoc::from_field(&GaloisField::parse("4").unwrap());
        assert_eq!(fd.modulus, Some(vec![1, 1, 1]));
        assert!(fd.to_field().is_ok());
        fd.modulus = Some(vec![1, 0, 1]);
        assert!(fd.to_field().is_err());
        let s = ProjectiveSpace::new(2, GaloisField::parse("3").unwrap()).unwrap();
        let mut doc = LineSetDoc::new(&s, &crate::constructions::plane_triangle(&s).unwrap());
        doc.kind = "other".into();
        assert!(doc.to_line_set().is_err());
    }

    #[test]
    fn design_family_round_trip() {
        let f = GaloisField::parse("7").unwrap();
        let fam = gk_frs_design(&f, DesignParams { s: 2, r: 1, t: 2, d: 3 }).unwrap();
        let back = DesignFamilyDoc::new(&fam).to_family().unwrap();
        assert_eq!(back.members, fam.members);
        assert_eq!(back.params, fam.params);
    }
}

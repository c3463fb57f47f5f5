//! JSON form of a cover spec.
//!
//! ```json
//! {"group": {"factors": [2, 2, 2]},
//!  "components": [{"degree": 2, "alpha": [1, 0, 0]},
//!                 {"class": {"h": 1, "e": [1]}, "alpha": [0, 1, 0]}],
//!  "arrangement": {"lines": [[1, 0, 0], …], "alphas": [[1, 1, 1], …]},
//!  "blow_up": "auto"}
//! ```
//!
//! `arrangement` is optional. When present its lines become branch
//! components, the chosen multiple points are blown up (`"auto"`: all points
//! of multiplicity at least three, `"none"`, or a list of indices into the
//! sorted multiple points) and `degree` components are pulled back.

use serde::{Deserialize, Serialize};

use super::{BlowUp, BranchComponent, CoverError, CoverSpec, ExceptionalCurve};
use crate::geometry::{ArrangementFile, DivisorClass, ProjPoint, RationalValue};
use crate::groups::{GroupElement, GroupType};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassValue {
    pub h: RationalValue,
    #[serde(default)]
    pub e: Vec<RationalValue>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassValue>,
    pub alpha: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpecArrangement {
    #[serde(flatten)]
    pub lines: ArrangementFile,
    pub alphas: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BlowUpValue {
    Keyword(String),
    Indices(Vec<usize>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverSpecFile {
    pub group: GroupType,
    #[serde(default)]
    pub components: Vec<ComponentEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrangement: Option<SpecArrangement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blow_up: Option<BlowUpValue>,
    /// Explicit blown-up points for class-only specs on a blow-up.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[RationalValue; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_degree_claim: Option<u64>,
}

fn element(group: &GroupType, r: &[u64]) -> Result<GroupElement, CoverError> {
    let g = GroupElement(r.to_vec());
    if !group.contains(&g) {
        return Err(crate::groups::GroupError::Mismatch {
            group: group.to_string(),
            element: r.to_vec(),
        }
        .into());
    }
    Ok(g)
}

impl ComponentEntry {
    fn class(&self, t: usize) -> Result<DivisorClass, CoverError> {
        match (&self.degree, &self.class) {
            (Some(d), None) => Ok(DivisorClass::pullback(*d as i64, t)),
            (None, Some(c)) => Ok(DivisorClass::new(
                c.h.to_rational()?,
                c.e.iter()
                    .map(RationalValue::to_rational)
                    .collect::<Result<_, _>>()?,
            )),
            _ => Err(CoverError::Invalid(
                "each component needs exactly one of \"degree\" or \"class\"".into(),
            )),
        }
    }
}

impl CoverSpecFile {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    fn blow_up(&self) -> Result<BlowUp, CoverError> {
        match &self.blow_up {
            None => Ok(BlowUp::Auto),
            Some(BlowUpValue::Indices(v)) => Ok(BlowUp::Points(v.clone())),
            Some(BlowUpValue::Keyword(k)) => match k.as_str() {
                "auto" => Ok(BlowUp::Auto),
                "none" => Ok(BlowUp::None),
                other => Err(CoverError::Invalid(format!("unknown blow_up {other:?}"))),
            },
        }
    }

    /// Builds the [`CoverSpec`], plus the exceptional curves when an arrangement was blown up.
    pub fn to_spec(&self) -> Result<(CoverSpec, Vec<ExceptionalCurve>), CoverError> {
        let group = self.group.clone();
        let (mut spec, curves) = match &self.arrangement {
            Some(arr) => {
                let lines = arr.lines.to_arrangement()?;
                let alphas = arr
                    .alphas
                    .iter()
                    .map(|a| element(&group, a))
                    .collect::<Result<Vec<_>, _>>()?;
                let (base, curves) =
                    CoverSpec::from_arrangement(group.clone(), &lines, &alphas, &self.blow_up()?)?;
                let t = base.base();
                let mut comps = base.components().to_vec();
                for c in &self.components {
                    comps.push(BranchComponent {
                        cls: c.class(t)?,
                        alpha: element(&group, &c.alpha)?,
                    });
                }
                let points = base.points().map(<[_]>::to_vec).unwrap_or_default();
                (
                    CoverSpec::new(group, t, comps)?.with_points(points)?,
                    curves,
                )
            }
            None => {
                let points = self
                    .points
                    .as_ref()
                    .map(|ps| {
                        ps.iter()
                            .map(|[a, b, c]| {
                                Ok(ProjPoint::new([
                                    a.to_rational()?,
                                    b.to_rational()?,
                                    c.to_rational()?,
                                ])?)
                            })
                            .collect::<Result<Vec<_>, CoverError>>()
                    })
                    .transpose()?;
                let t = match &points {
                    Some(p) => p.len(),
                    None => self
                        .components
                        .iter()
                        .filter_map(|c| c.class.as_ref().map(|v| v.e.len()))
                        .max()
                        .unwrap_or(0),
                };
                let comps = self
                    .components
                    .iter()
                    .map(|c| {
                        Ok(BranchComponent {
                            cls: c.class(t)?,
                            alpha: element(&group, &c.alpha)?,
                        })
                    })
                    .collect::<Result<Vec<_>, CoverError>>()?;
                let spec = CoverSpec::new(group, t, comps)?;
                let spec = match points {
                    Some(p) => spec.with_points(p)?,
                    None => spec,
                };
                (spec, vec![])
            }
        };
        spec.canonical_degree_claim = self.canonical_degree_claim;
        Ok((spec, curves))
    }
}

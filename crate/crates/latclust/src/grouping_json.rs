//! Grouping JSON: `{maxdist, groups:[{id, members, representative, trace:[{a,b,dist}]}]}`.
//! Merge distances are exact fractions written as `"num/den"`.

use latclust_core::pregroup::{check_maxdist, Merge};
use latclust_core::{Distance, Group, GroupId, Grouping, PatternId};
use serde::{Deserialize, Serialize};

use crate::FormatError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MergeDoc {
    pub a: u32,
    pub b: u32,
    pub dist: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub id: u32,
    pub members: Vec<u32>,
    pub representative: u32,
    pub trace: Vec<MergeDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupingDoc {
    pub maxdist: f64,
    pub groups: Vec<GroupDoc>,
}

pub fn parse_distance(s: &str) -> Result<Distance, FormatError> {
    let bad = || FormatError::Invalid(format!("distance {s:?} is not a fraction num/den in [0, 1]"));
    let (n, d) = s.split_once('/').ok_or_else(bad)?;
    let (n, d) = (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
    Distance::new(n, d).ok_or_else(bad)
}

impl GroupingDoc {
    pub fn from_grouping(g: &Grouping) -> Self {
        let groups = g
            .groups
            .iter()
            .map(|gr| GroupDoc {
                id: gr.id.0,
                members: gr.members.iter().map(|m| m.0).collect(),
                representative: gr.representative.0,
                trace: gr.trace.iter().map(|m| MergeDoc { a: m.a.0, b: m.b.0, dist: m.dist.to_string() }).collect(),
            })
            .collect();
        GroupingDoc { maxdist: g.maxdist, groups }
    }

    /// Structural checks only; coherence with a lattice is
    /// [`Grouping::validate`].
    pub fn into_grouping(self) -> Result<Grouping, FormatError> {
        check_maxdist(self.maxdist)?;
        let groups = self
            .groups
            .into_iter()
            .map(|g| {
                let trace = g
                    .trace
                    .iter()
                    .map(|m| Ok(Merge { a: PatternId(m.a), b: PatternId(m.b), dist: parse_distance(&m.dist)? }))
                    .collect::<Result<_, FormatError>>()?;
                Ok(Group {
                    id: GroupId(g.id),
                    members: g.members.into_iter().map(PatternId).collect(),
                    representative: PatternId(g.representative),
                    trace,
                })
            })
            .collect::<Result<_, FormatError>>()?;
        Ok(Grouping { maxdist: self.maxdist, groups })
    }
}

pub fn to_string(g: &Grouping) -> String {
    crate::to_json(&GroupingDoc::from_grouping(g))
}

pub fn parse(text: &str) -> Result<Grouping, FormatError> {
    serde_json::from_str::<GroupingDoc>(text)?.into_grouping()
}

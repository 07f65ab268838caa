//! JSON instance files: weighted partial profiles with an optional agenda
//! and target.
//!
//! ```json
//! {
//!   "alternatives": ["p", "a", "b"],
//!   "voters": [{ "order": "a>p", "weight": 2 }, { "order": "p>b>a", "count": 3 }],
//!   "agenda": "a>b>p",
//!   "target": "p"
//! }
//! ```
//!
//! Orders and agendas use the chain syntax of [`Profile::from_chains`]:
//! `>` chains, `,` between independent fragments.

use crate::error::{Error, Result};
use crate::order::{PartialAgenda, StrictOrder};
use crate::preflib::parse_agenda;
use crate::profile::{Profile, Voter};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub profile: Profile,
    pub agenda: Option<PartialAgenda>,
    pub target: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct VoterFile {
    order: String,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    weight: u64,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    alternatives: Vec<String>,
    voters: Vec<VoterFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    agenda: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<String>,
}

fn one() -> u64 {
    1
}

fn is_one(x: &u64) -> bool {
    *x == 1
}

/// Chain text of a relation: one chain if linear, otherwise its covering
/// pairs joined by `,`.
pub fn order_to_chains(order: &StrictOrder, label: impl Fn(usize) -> String) -> String {
    if let Some(r) = order.linear_ranking() {
        return r.into_iter().map(&label).collect::<Vec<_>>().join(">");
    }
    let m = order.size();
    let mut parts = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if order.prefers(a, b) && !(0..m).any(|c| order.prefers(a, c) && order.prefers(c, b)) {
                parts.push(format!("{}>{}", label(a), label(b)));
            }
        }
    }
    parts.join(",")
}

pub fn parse_instance_json(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let labels: Vec<&str> = file.alternatives.iter().map(String::as_str).collect();
    let chains: Vec<(&str, u64)> = file
        .voters
        .iter()
        .map(|v| (v.order.as_str(), v.weight))
        .collect();
    let base = Profile::from_chains(&labels, &chains)?;
    let voters: Vec<Voter> = base
        .voters()
        .iter()
        .zip(&file.voters)
        .map(|(v, f)| v.clone().with_multiplicity(f.count))
        .collect();
    let profile = Profile::new(file.alternatives.clone(), voters)?;
    let agenda = file
        .agenda
        .as_deref()
        .map(|a| parse_agenda(a, &profile))
        .transpose()?;
    let target = file
        .target
        .as_deref()
        .map(|t| profile.id_of(t))
        .transpose()?;
    Ok(Instance {
        profile,
        agenda,
        target,
    })
}

pub fn write_instance_json(instance: &Instance) -> String {
    let p = &instance.profile;
    let label = |a: usize| p.label(a).to_string();
    let file = InstanceFile {
        alternatives: p.labels(),
        voters: p
            .voters()
            .iter()
            .map(|v| VoterFile {
                order: order_to_chains(v.order.relation(), label),
                weight: v.weight,
                count: v.multiplicity,
            })
            .collect(),
        agenda: instance
            .agenda
            .as_ref()
            .map(|a| order_to_chains(&a.0, label)),
        target: instance.target.map(label),
    };
    serde_json::to_string_pretty(&file).expect("serializable instance")
}

impl Instance {
    pub fn new(profile: Profile) -> Self {
        Instance {
            profile,
            agenda: None,
            target: None,
        }
    }
}

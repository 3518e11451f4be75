//! Deployment scenario taxonomy and the per-scenario slice-type matrix.
//!
//! Six scenarios: closed single-site (A), closed multi-site (B), open
//! networks hosting MNO subscribers or the general public, and mixed
//! networks federating by subnet import (Option A) or slice linking
//! (Option B).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{NsiType, SubscriberClass, Tenant};
use crate::plan::NetworkPlan;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    ClosedA,
    ClosedB,
    OpenMno,
    OpenPublic,
    MixedOptionA,
    MixedOptionB,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 6] = [
        ScenarioKind::ClosedA,
        ScenarioKind::ClosedB,
        ScenarioKind::OpenMno,
        ScenarioKind::OpenPublic,
        ScenarioKind::MixedOptionA,
        ScenarioKind::MixedOptionB,
    ];

    pub fn is_closed(self) -> bool {
        matches!(self, ScenarioKind::ClosedA | ScenarioKind::ClosedB)
    }

    pub fn is_mixed(self) -> bool {
        matches!(self, ScenarioKind::MixedOptionA | ScenarioKind::MixedOptionB)
    }

    /// Scenarios in which a dedicated general-public slice is expected and
    /// the public-isolation rule applies.
    pub fn hosts_public_slice(self) -> bool {
        matches!(
            self,
            ScenarioKind::OpenMno
                | ScenarioKind::OpenPublic
                | ScenarioKind::MixedOptionA
                | ScenarioKind::MixedOptionB
        )
    }
}

impl std::fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let token = match self {
            ScenarioKind::ClosedA => "closed_a",
            ScenarioKind::ClosedB => "closed_b",
            ScenarioKind::OpenMno => "open_mno",
            ScenarioKind::OpenPublic => "open_public",
            ScenarioKind::MixedOptionA => "mixed_option_a",
            ScenarioKind::MixedOptionB => "mixed_option_b",
        };
        f.write_str(token)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MalformedScenario {
    #[error("a single-site closed scenario cannot be multi-location")]
    ClosedASpansLocations,
    #[error("a multi-site closed scenario must be multi-location")]
    ClosedBSingleLocation,
    #[error("an open network hosting MNO subscribers needs at least one peered MNO")]
    OpenMnoWithoutPeer,
    #[error("a closed scenario without externally connecting tenants cannot have peered MNOs (found {peers})")]
    ClosedWithoutExternalNeedHasPeers { peers: u32 },
}

/// A deployment scenario plus the context the rule matrix depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeploymentScenario {
    pub kind: ScenarioKind,
    pub peered_mno_count: u32,
    pub multi_location: bool,
}

impl DeploymentScenario {
    /// Build a scenario, rejecting kind-local invariant violations.
    pub fn new(
        kind: ScenarioKind,
        peered_mno_count: u32,
        multi_location: bool,
    ) -> Result<Self, MalformedScenario> {
        let scenario = Self {
            kind,
            peered_mno_count,
            multi_location,
        };
        scenario.check_shape()?;
        Ok(scenario)
    }

    /// Kind-local invariants, independent of any plan.
    pub fn check_shape(&self) -> Result<(), MalformedScenario> {
        match self.kind {
            ScenarioKind::ClosedA if self.multi_location => {
                Err(MalformedScenario::ClosedASpansLocations)
            }
            ScenarioKind::ClosedB if !self.multi_location => {
                Err(MalformedScenario::ClosedBSingleLocation)
            }
            ScenarioKind::OpenMno if self.peered_mno_count == 0 => {
                Err(MalformedScenario::OpenMnoWithoutPeer)
            }
            _ => Ok(()),
        }
    }

    /// The set of slice types legal under this scenario.
    ///
    /// `external_need_present` states whether any tenant in context has
    /// declared a need to connect outside the network; it only matters for
    /// multi-site closed networks, whose matrix row has two regimes.
    pub fn allowed_types(
        &self,
        external_need_present: bool,
    ) -> Result<BTreeSet<NsiType>, MalformedScenario> {
        self.check_shape()?;
        if self.kind.is_closed() && !external_need_present && self.peered_mno_count > 0 {
            return Err(MalformedScenario::ClosedWithoutExternalNeedHasPeers {
                peers: self.peered_mno_count,
            });
        }
        let types: &[NsiType] = match self.kind {
            ScenarioKind::ClosedA => &[NsiType::Type1, NsiType::Type2],
            ScenarioKind::ClosedB => {
                if external_need_present {
                    &[NsiType::Type1, NsiType::Type2, NsiType::Type3]
                } else {
                    &[NsiType::Type1, NsiType::Type2]
                }
            }
            ScenarioKind::OpenMno => {
                if self.peered_mno_count == 1 {
                    &[NsiType::Type3]
                } else {
                    &[NsiType::Type2, NsiType::Type3]
                }
            }
            ScenarioKind::OpenPublic => &[NsiType::Type1],
            ScenarioKind::MixedOptionA | ScenarioKind::MixedOptionB => {
                &[NsiType::Type1, NsiType::Type2, NsiType::Type3]
            }
        };
        Ok(types.iter().copied().collect())
    }

    /// Allowed types with the external-need bit read off the plan.
    pub fn allowed_types_for_plan(
        &self,
        plan: &NetworkPlan,
    ) -> Result<BTreeSet<NsiType>, MalformedScenario> {
        self.allowed_types(plan.any_external_need())
    }

    /// Allowed types for one tenant's slices. Refines the scenario set:
    /// a general-public tenant's slice must be a dedicated Type 1 slice in
    /// every scenario that hosts one, and in a multi-site closed network
    /// Type 3 is reserved for tenants that declared the external need.
    pub fn allowed_types_for_tenant(
        &self,
        plan: &NetworkPlan,
        tenant: &Tenant,
    ) -> Result<BTreeSet<NsiType>, MalformedScenario> {
        if tenant.subscriber_class == SubscriberClass::GeneralPublic
            && self.kind.hosts_public_slice()
        {
            self.check_shape()?;
            return Ok([NsiType::Type1].into());
        }
        let mut types = self.allowed_types_for_plan(plan)?;
        if self.kind == ScenarioKind::ClosedB && !tenant.external_connectivity_need {
            types.remove(&NsiType::Type3);
        }
        Ok(types)
    }

    /// One-line statement of this scenario's row in the configuration
    /// matrix, echoed in reports.
    pub fn matrix_row(&self) -> &'static str {
        match self.kind {
            ScenarioKind::ClosedA => {
                "single-site closed network: dedicated and locally shared slices only (types 1-2); no constituent is exchanged with an external operator"
            }
            ScenarioKind::ClosedB => {
                "multi-site closed network: types 1-2 while no tenant connects outside; type 3 only for tenants with a declared external connectivity need"
            }
            ScenarioKind::OpenMno => {
                "open network hosting MNO subscribers: type 3 with a single peered MNO; types 2-3 with multiple peered MNOs"
            }
            ScenarioKind::OpenPublic => {
                "open network for the general public: a single dedicated type 1 slice"
            }
            ScenarioKind::MixedOptionA => {
                "mixed network importing peer subnets: types 1-3; some slices are formed from both local and peer-owned subnets"
            }
            ScenarioKind::MixedOptionB => {
                "mixed network linking peer slices: types 1-3; services span local slices and peer-managed slices"
            }
        }
    }
}

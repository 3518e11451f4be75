//! Deterministic scenario reports: per-slice classification, per-rule
//! pass/fail, violations, capacity residuals and service bindings.
//!
//! Identical plans yield identical report values; serialization order is
//! fixed by id-ordered maps and struct field order.

use serde::{Deserialize, Serialize};

use crate::classify::classify;
use crate::id::{DomainId, NsiId, NssiId, RequestId, TenantId};
use crate::model::{Actor, InstantiationMode, NsiType, NssiKind};
use crate::plan::NetworkPlan;
use crate::rules::{validate_network_plan, RuleViolation, Severity, ValidateError, ViolationCode};
use crate::scenario::DeploymentScenario;

/// Scenario context echoed at the top of a report, including its row of
/// the configuration matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioEcho {
    pub kind: crate::scenario::ScenarioKind,
    pub peered_mnos: u32,
    pub multi_location: bool,
    pub allowed_types: Vec<NsiType>,
    pub matrix_row: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstituentEcho {
    pub id: NssiId,
    pub kind: NssiKind,
    pub owner: DomainId,
    /// Referenced by at least one other live slice.
    pub shared: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NsiEntry {
    pub id: NsiId,
    pub tenant: TenantId,
    /// Derived type; absent when a constituent does not resolve.
    pub nsi_type: Option<NsiType>,
    pub locally_shared: bool,
    pub lifecycle: crate::lifecycle::LifecycleState,
    pub mode: InstantiationMode,
    pub manager: Actor,
    pub constituents: Vec<ConstituentEcho>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub linked_foreign_nsis: Vec<NsiId>,
}

/// Per-rule outcome, aggregated from the violation list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleCheck {
    pub rule: String,
    pub passed: bool,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapacityEntry {
    pub nssi: NssiId,
    pub kind: NssiKind,
    pub owner: DomainId,
    pub capacity: u32,
    pub reserved: u32,
    pub residual: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ServiceEcho {
    pub service: RequestId,
    pub tenant: TenantId,
    pub local_nsis: Vec<NsiId>,
    pub foreign_nsis: Vec<NsiId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: ScenarioEcho,
    pub nsis: Vec<NsiEntry>,
    pub decommissioned_nsis: usize,
    pub checks: Vec<RuleCheck>,
    pub violations: Vec<RuleViolation>,
    pub capacity: Vec<CapacityEntry>,
    pub services: Vec<ServiceEcho>,
}

impl ScenarioReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn error_count(&self) -> usize {
        self.violations
            .iter()
            .filter(|v| v.severity == Severity::Error)
            .count()
    }

    /// Multiset of derived slice types, in id order of the live slices.
    pub fn type_multiset(&self) -> Vec<NsiType> {
        self.nsis.iter().filter_map(|n| n.nsi_type).collect()
    }
}

const RULE_NAMES: [(&str, &[ViolationCode]); 6] = [
    ("allowed-types", &[ViolationCode::ForbiddenNsiType]),
    (
        "closed-isolation",
        &[ViolationCode::ForeignConstituentInClosed],
    ),
    (
        "external-need",
        &[ViolationCode::Type3WithoutExternalNeed],
    ),
    (
        "public-isolation",
        &[
            ViolationCode::PublicSliceShared,
            ViolationCode::PublicSliceMissing,
            ViolationCode::PublicSliceNotType1,
        ],
    ),
    (
        "operator-federation",
        &[ViolationCode::MnoSubscriberSliceNotFederated],
    ),
    (
        "capacity",
        &[
            ViolationCode::CapacityExceeded,
            ViolationCode::CompositionError,
        ],
    ),
];

/// Build the full report for a plan under a scenario. Violations are data
/// here, not errors; only malformed scenarios and unresolvable plans fail.
pub fn scenario_report(
    plan: &NetworkPlan,
    scenario: &DeploymentScenario,
) -> Result<ScenarioReport, ValidateError> {
    let violations = validate_network_plan(plan, scenario)?;
    let allowed = scenario
        .allowed_types_for_plan(plan)
        .expect("validate checked the scenario");

    let mut nsis = Vec::new();
    for nsi in plan.live_nsis() {
        let classification = classify(plan, &nsi.id).ok();
        let constituents = nsi
            .constituents()
            .iter()
            .map(|c| match plan.nssi(c) {
                Some(nssi) => ConstituentEcho {
                    id: c.clone(),
                    kind: nssi.kind,
                    owner: nssi.owner.clone(),
                    shared: plan.referencing_nsis(c).len() > 1,
                },
                None => ConstituentEcho {
                    id: c.clone(),
                    kind: NssiKind::An,
                    owner: DomainId::new("?"),
                    shared: false,
                },
            })
            .collect();
        nsis.push(NsiEntry {
            id: nsi.id.clone(),
            tenant: nsi.tenant.clone(),
            nsi_type: classification.map(|c| c.nsi_type),
            locally_shared: classification.map(|c| c.locally_shared).unwrap_or(false),
            lifecycle: nsi.lifecycle,
            mode: nsi.mode,
            manager: nsi.manager(),
            constituents,
            linked_foreign_nsis: nsi.linked_foreign_nsis().iter().cloned().collect(),
        });
    }

    let checks = RULE_NAMES
        .iter()
        .map(|(name, codes)| {
            let count = violations
                .iter()
                .filter(|v| codes.contains(&v.code))
                .count();
            RuleCheck {
                rule: name.to_string(),
                passed: count == 0,
                violations: count,
            }
        })
        .collect();

    let capacity = plan
        .nssis()
        .map(|nssi| {
            let reserved = plan.ledger().reserved(&nssi.id);
            CapacityEntry {
                nssi: nssi.id.clone(),
                kind: nssi.kind,
                owner: nssi.owner.clone(),
                capacity: nssi.capacity,
                reserved,
                residual: nssi.capacity.saturating_sub(reserved),
            }
        })
        .collect();

    let services = plan
        .bindings()
        .iter()
        .map(|binding| {
            let tenant = plan
                .request(&binding.service)
                .map(|r| r.tenant.clone())
                .unwrap_or_else(|| TenantId::new("?"));
            ServiceEcho {
                service: binding.service.clone(),
                tenant,
                local_nsis: binding.local_nsis.iter().cloned().collect(),
                foreign_nsis: binding.foreign_nsis.iter().cloned().collect(),
            }
        })
        .collect();

    Ok(ScenarioReport {
        scenario: ScenarioEcho {
            kind: scenario.kind,
            peered_mnos: scenario.peered_mno_count,
            multi_location: scenario.multi_location,
            allowed_types: allowed.into_iter().collect(),
            matrix_row: scenario.matrix_row().to_string(),
        },
        nsis,
        decommissioned_nsis: plan.nsis().filter(|n| !n.is_live()).count(),
        checks,
        violations,
        capacity,
        services,
    })
}

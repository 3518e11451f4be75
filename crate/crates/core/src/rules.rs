//! Whole-plan rule validation against a deployment scenario.
//!
//! Violations are collected exhaustively (no fail-fast) so a report is a
//! complete diagnosis. The checks, in order per slice and then plan-wide:
//!
//! 1. allowed-types: every slice's derived type is in the scenario's set
//!    (the general-public slice is governed by the public-isolation rule
//!    instead);
//! 2. closed-isolation: closed networks without an externally connecting
//!    tenant reference no foreign-owned subnet;
//! 3. external-need: in a multi-site closed network, Type 3 slices belong
//!    only to tenants that declared the external need, and slices of other
//!    tenants sharing a subnet with a Type 3 slice are flagged as warnings;
//! 4. public-isolation: exactly one Type 1 slice serves the general public
//!    and shares nothing with subscriber-group slices;
//! 5. operator-federation: in an open network hosting MNO subscribers,
//!    each subscriber-group slice includes a subnet owned by its home MNO;
//! 6. capacity: no subnet is reserved beyond its capacity.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{classify, validate_nsi_composition};
use crate::id::{NsiId, NssiId, TenantId};
use crate::model::{NsiType, SubscriberClass};
use crate::plan::{InconsistentPlan, NetworkPlan};
use crate::scenario::{DeploymentScenario, MalformedScenario, ScenarioKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationCode {
    ForbiddenNsiType,
    ForeignConstituentInClosed,
    PublicSliceShared,
    PublicSliceMissing,
    PublicSliceNotType1,
    Type3WithoutExternalNeed,
    MnoSubscriberSliceNotFederated,
    CompositionError,
    CapacityExceeded,
}

impl ViolationCode {
    /// The rule-catalog statement a violation of this code cites.
    pub fn anchor(self) -> &'static str {
        match self {
            ViolationCode::ForbiddenNsiType => {
                "slice-type matrix: each deployment scenario admits a fixed set of slice types"
            }
            ViolationCode::ForeignConstituentInClosed => {
                "closed-network rule: no constituent is exchanged with an external operator's network"
            }
            ViolationCode::PublicSliceShared => {
                "public-access rule: the public slice shares no resources with hosted subscriber slices"
            }
            ViolationCode::PublicSliceMissing => {
                "public-access rule: a single slice is dedicated to the general public"
            }
            ViolationCode::PublicSliceNotType1 => {
                "public-access rule: the public slice is a dedicated type 1 slice"
            }
            ViolationCode::Type3WithoutExternalNeed => {
                "multi-site closed rule: external sharing is reserved for tenants with a declared external connectivity need"
            }
            ViolationCode::MnoSubscriberSliceNotFederated => {
                "subscriber-hosting rule: a hosted subscriber group's slice includes a constituent owned by that group's home operator"
            }
            ViolationCode::CompositionError => {
                "composition rule: a slice contains at least two subnet instances covering access and core, with resolvable, exclusively-held non-sharable subnets"
            }
            ViolationCode::CapacityExceeded => {
                "capacity rule: reservations on a subnet instance never exceed its capacity"
            }
        }
    }
}

impl std::fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ViolationCode::ForbiddenNsiType => "ForbiddenNsiType",
            ViolationCode::ForeignConstituentInClosed => "ForeignConstituentInClosed",
            ViolationCode::PublicSliceShared => "PublicSliceShared",
            ViolationCode::PublicSliceMissing => "PublicSliceMissing",
            ViolationCode::PublicSliceNotType1 => "PublicSliceNotType1",
            ViolationCode::Type3WithoutExternalNeed => "Type3WithoutExternalNeed",
            ViolationCode::MnoSubscriberSliceNotFederated => "MnoSubscriberSliceNotFederated",
            ViolationCode::CompositionError => "CompositionError",
            ViolationCode::CapacityExceeded => "CapacityExceeded",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Warning,
    Error,
}

/// What a violation is about.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Nsi(NsiId),
    Nssi(NssiId),
    Tenant(TenantId),
}

impl std::fmt::Display for Subject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Subject::Nsi(id) => write!(f, "nsi {id}"),
            Subject::Nssi(id) => write!(f, "nssi {id}"),
            Subject::Tenant(id) => write!(f, "tenant {id}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleViolation {
    pub code: ViolationCode,
    pub severity: Severity,
    pub subject: Subject,
    pub detail: String,
    /// Rule-catalog citation; never empty.
    pub anchor: String,
}

impl RuleViolation {
    fn error(code: ViolationCode, subject: Subject, detail: String) -> Self {
        Self {
            code,
            severity: Severity::Error,
            subject,
            detail,
            anchor: code.anchor().to_string(),
        }
    }

    fn warning(code: ViolationCode, subject: Subject, detail: String) -> Self {
        Self {
            code,
            severity: Severity::Warning,
            subject,
            detail,
            anchor: code.anchor().to_string(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidateError {
    #[error(transparent)]
    MalformedScenario(#[from] MalformedScenario),
    #[error(transparent)]
    InconsistentPlan(#[from] InconsistentPlan),
}

/// Validate a whole plan against a scenario. An empty list means the plan
/// is legal. Deterministic and independent of declaration order: slices and
/// subnets are visited in id order.
pub fn validate_network_plan(
    plan: &NetworkPlan,
    scenario: &DeploymentScenario,
) -> Result<Vec<RuleViolation>, ValidateError> {
    scenario.check_shape()?;
    plan.check_consistency()?;
    // Surface the closed-without-external-need shape error before any
    // per-slice work; allowed_types_for_plan performs the same check.
    scenario.allowed_types_for_plan(plan)?;

    let mut violations = Vec::new();
    let uo = plan.micro_operator_id().clone();

    for nsi in plan.live_nsis() {
        let composition = validate_nsi_composition(plan, &nsi.id)
            .expect("live slice ids resolve");
        let dangling = composition.iter().any(|v| {
            matches!(
                v,
                crate::classify::CompositionViolation::DanglingConstituent { .. }
            )
        });
        for violation in &composition {
            violations.push(RuleViolation::error(
                ViolationCode::CompositionError,
                Subject::Nsi(nsi.id.clone()),
                violation.to_string(),
            ));
        }
        if dangling {
            // Classification is undefined for a slice with unresolved
            // references; the composition entries already cover it.
            continue;
        }
        let classification = classify(plan, &nsi.id).expect("constituents resolve");
        let tenant = plan.tenant(&nsi.tenant).expect("consistency checked");

        // (a) allowed types, refined per tenant.
        let allowed = scenario
            .allowed_types_for_tenant(plan, tenant)
            .expect("scenario shape checked");
        if !allowed.contains(&classification.nsi_type) {
            let code = if tenant.subscriber_class == SubscriberClass::GeneralPublic
                && scenario.kind.hosts_public_slice()
            {
                ViolationCode::PublicSliceNotType1
            } else {
                ViolationCode::ForbiddenNsiType
            };
            violations.push(RuleViolation::error(
                code,
                Subject::Nsi(nsi.id.clone()),
                format!(
                    "classified {} but the scenario allows {}",
                    classification.nsi_type,
                    format_type_set(&allowed)
                ),
            ));
        }

        // (b) closed isolation: no foreign constituent anywhere.
        if scenario.kind == ScenarioKind::ClosedA
            || (scenario.kind == ScenarioKind::ClosedB && !plan.any_external_need())
        {
            for constituent in nsi.constituents() {
                let nssi = plan.nssi(constituent).expect("no dangling here");
                if nssi.owner != uo {
                    violations.push(RuleViolation::error(
                        ViolationCode::ForeignConstituentInClosed,
                        Subject::Nsi(nsi.id.clone()),
                        format!(
                            "references subnet `{}` owned by external domain `{}`",
                            constituent, nssi.owner
                        ),
                    ));
                }
            }
        }

        // (c) multi-site closed network: Type 3 needs the declared need.
        if scenario.kind == ScenarioKind::ClosedB && !tenant.external_connectivity_need {
            if classification.nsi_type == NsiType::Type3 {
                violations.push(RuleViolation::error(
                    ViolationCode::Type3WithoutExternalNeed,
                    Subject::Nsi(nsi.id.clone()),
                    format!(
                        "tenant `{}` declared no external connectivity need",
                        tenant.id
                    ),
                ));
            } else if let Some((shared, with)) = shares_subnet_with_type3(plan, &nsi.id) {
                violations.push(RuleViolation::warning(
                    ViolationCode::Type3WithoutExternalNeed,
                    Subject::Nsi(nsi.id.clone()),
                    format!(
                        "shares subnet `{shared}` with externally connected slice `{with}` although tenant `{}` declared no external need",
                        tenant.id
                    ),
                ));
            }
        }

        // (e) subscriber-hosting federation witness.
        if scenario.kind == ScenarioKind::OpenMno
            && tenant.subscriber_class == SubscriberClass::MnoSubscriberGroup
        {
            let home = tenant.home_mno.as_ref().expect("declaration enforced");
            let federated = nsi
                .constituents()
                .iter()
                .any(|c| plan.nssi(c).map(|n| &n.owner == home).unwrap_or(false));
            if !federated {
                violations.push(RuleViolation::error(
                    ViolationCode::MnoSubscriberSliceNotFederated,
                    Subject::Nsi(nsi.id.clone()),
                    format!("no constituent is owned by home operator `{home}`"),
                ));
            }
        }
    }

    // (d) public isolation.
    if scenario.kind.hosts_public_slice() {
        if let Some(public) = plan.general_public_tenant() {
            let public_nsis: Vec<&crate::model::Nsi> = plan
                .live_nsis()
                .filter(|n| n.tenant == public.id)
                .collect();
            let any_live_nsi = plan.live_nsis().next().is_some();
            if public_nsis.is_empty() && any_live_nsi {
                violations.push(RuleViolation::error(
                    ViolationCode::PublicSliceMissing,
                    Subject::Tenant(public.id.clone()),
                    "no slice serves the general-public tenant".to_string(),
                ));
            } else if public_nsis.len() > 1 {
                violations.push(RuleViolation::error(
                    ViolationCode::PublicSliceMissing,
                    Subject::Tenant(public.id.clone()),
                    format!(
                        "expected exactly one slice for the general-public tenant, found {}",
                        public_nsis.len()
                    ),
                ));
            }
            for nsi in &public_nsis {
                // PublicSliceNotType1 is raised by the allowed-types check
                // above; here only the subscriber-sharing condition remains.
                for constituent in nsi.constituents() {
                    for other in plan.live_nsis() {
                        if other.id == nsi.id || !other.constituents().contains(constituent) {
                            continue;
                        }
                        let other_tenant =
                            plan.tenant(&other.tenant).expect("consistency checked");
                        if other_tenant.subscriber_class == SubscriberClass::MnoSubscriberGroup {
                            violations.push(RuleViolation::error(
                                ViolationCode::PublicSliceShared,
                                Subject::Nsi(nsi.id.clone()),
                                format!(
                                    "shares subnet `{constituent}` with subscriber slice `{}`",
                                    other.id
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }

    // (f) capacity accounting.
    for nssi in plan.nssis() {
        let reserved = plan.ledger().reserved(&nssi.id);
        if reserved > nssi.capacity {
            violations.push(RuleViolation::error(
                ViolationCode::CapacityExceeded,
                Subject::Nssi(nssi.id.clone()),
                format!("{reserved} units reserved on capacity {}", nssi.capacity),
            ));
        }
    }

    Ok(violations)
}

/// True violations only; warnings do not make a plan illegal for planning
/// purposes but are still reported.
pub fn has_errors(violations: &[RuleViolation]) -> bool {
    violations.iter().any(|v| v.severity == Severity::Error)
}

fn shares_subnet_with_type3(plan: &NetworkPlan, nsi_id: &NsiId) -> Option<(NssiId, NsiId)> {
    let nsi = plan.nsi(nsi_id)?;
    for constituent in nsi.constituents() {
        for other in plan.live_nsis() {
            if other.id == *nsi_id || !other.constituents().contains(constituent) {
                continue;
            }
            if let Ok(c) = classify(plan, &other.id) {
                if c.nsi_type == NsiType::Type3 {
                    return Some((constituent.clone(), other.id.clone()));
                }
            }
        }
    }
    None
}

pub(crate) fn format_type_set(types: &std::collections::BTreeSet<NsiType>) -> String {
    let names: Vec<String> = types.iter().map(|t| t.to_string()).collect();
    format!("{{{}}}", names.join(", "))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::model::{
        Domain, InstantiationMode, IsolationClass, LatencyClass, Nsi, Nssi, NssiKind,
        ReliabilityClass, ServiceRequest, Tenant,
    };
    use crate::scenario::ScenarioKind;

    fn nssi(id: &str, kind: NssiKind, owner: &str, sharable: bool) -> Nssi {
        Nssi {
            id: id.into(),
            kind,
            owner: owner.into(),
            sharable,
            capacity: 10,
            location: None,
            nf_labels: BTreeSet::new(),
        }
    }

    fn tenant(id: &str, class: SubscriberClass, home: Option<&str>, external: bool) -> Tenant {
        Tenant {
            id: id.into(),
            subscriber_class: class,
            home_mno: home.map(Into::into),
            locations: ["site".to_string()].into(),
            external_connectivity_need: external,
        }
    }

    fn scenario(kind: ScenarioKind, peers: u32, multi: bool) -> DeploymentScenario {
        DeploymentScenario {
            kind,
            peered_mno_count: peers,
            multi_location: multi,
        }
    }

    #[test]
    fn empty_plan_is_vacuously_legal() {
        let plan = NetworkPlan::new(Domain::micro_operator("uo", "Campus")).unwrap();
        let violations =
            validate_network_plan(&plan, &scenario(ScenarioKind::ClosedA, 0, false)).unwrap();
        assert!(violations.is_empty());
    }

    #[test]
    fn closed_a_with_foreign_constituent_reports_both_codes() {
        let mut plan = NetworkPlan::new(Domain::micro_operator("uo", "Campus")).unwrap();
        plan.declare_domain(Domain::mno("mno1", "MNO One")).unwrap();
        plan.declare_tenant(tenant("t1", SubscriberClass::PrivateTenant, None, false))
            .unwrap();
        plan.declare_nssi(nssi("an1", NssiKind::An, "uo", false)).unwrap();
        plan.declare_nssi(nssi("cnm", NssiKind::Cn, "mno1", true)).unwrap();
        plan.declare_nsi(Nsi::new(
            "x",
            "t1",
            vec!["an1".into(), "cnm".into()],
            InstantiationMode::Request,
        ))
        .unwrap();
        let violations =
            validate_network_plan(&plan, &scenario(ScenarioKind::ClosedA, 0, false)).unwrap();
        let codes: Vec<ViolationCode> = violations.iter().map(|v| v.code).collect();
        assert_eq!(
            codes,
            vec![
                ViolationCode::ForbiddenNsiType,
                ViolationCode::ForeignConstituentInClosed,
            ]
        );
        assert!(violations.iter().all(|v| !v.anchor.is_empty()));
    }

    #[test]
    fn closed_b_type3_without_declared_need_flagged() {
        // Derived by evaluating the rule set literally: tenant t1 has no
        // external need, so its Type 3 slice violates the external-need rule
        // (and the allowed-types refinement for that tenant).
        let mut plan = NetworkPlan::new(Domain::micro_operator("uo", "Campus")).unwrap();
        plan.declare_domain(Domain::mno("mno1", "MNO One")).unwrap();
        plan.declare_tenant(tenant("t1", SubscriberClass::PrivateTenant, None, false))
            .unwrap();
        plan.declare_tenant(tenant("t2", SubscriberClass::PrivateTenant, None, true))
            .unwrap();
        plan.declare_nssi(nssi("an1", NssiKind::An, "uo", false)).unwrap();
        plan.declare_nssi(nssi("cnm", NssiKind::Cn, "mno1", true)).unwrap();
        plan.declare_nsi(Nsi::new(
            "x",
            "t1",
            vec!["an1".into(), "cnm".into()],
            InstantiationMode::Request,
        ))
        .unwrap();
        let violations =
            validate_network_plan(&plan, &scenario(ScenarioKind::ClosedB, 1, true)).unwrap();
        let codes: Vec<(ViolationCode, Severity)> =
            violations.iter().map(|v| (v.code, v.severity)).collect();
        assert_eq!(
            codes,
            vec![
                (ViolationCode::ForbiddenNsiType, Severity::Error),
                (ViolationCode::Type3WithoutExternalNeed, Severity::Error),
            ]
        );
    }

    #[test]
    fn public_slice_sharing_with_subscriber_slice_flagged() {
        let mut plan = NetworkPlan::new(Domain::micro_operator("uo", "Campus")).unwrap();
        plan.declare_domain(Domain::mno("mno1", "MNO One")).unwrap();
        plan.declare_tenant(tenant(
            "g1",
            SubscriberClass::MnoSubscriberGroup,
            Some("mno1"),
            false,
        ))
        .unwrap();
        plan.declare_tenant(tenant("pub", SubscriberClass::GeneralPublic, None, false))
            .unwrap();
        plan.declare_nssi(nssi("an1", NssiKind::An, "uo", false)).unwrap();
        plan.declare_nssi(nssi("an2", NssiKind::An, "uo", false)).unwrap();
        plan.declare_nssi(nssi("cns", NssiKind::Cn, "uo", true)).unwrap();
        plan.declare_nssi(nssi("cnm", NssiKind::Cn, "mno1", true)).unwrap();
        plan.declare_nsi(Nsi::new(
            "sub",
            "g1",
            vec!["an1".into(), "cns".into(), "cnm".into()],
            InstantiationMode::Request,
        ))
        .unwrap();
        plan.declare_nsi(Nsi::new(
            "public",
            "pub",
            vec!["an2".into(), "cns".into()],
            InstantiationMode::Predefined,
        ))
        .unwrap();
        let violations =
            validate_network_plan(&plan, &scenario(ScenarioKind::MixedOptionA, 1, false)).unwrap();
        let codes: BTreeSet<ViolationCode> = violations.iter().map(|v| v.code).collect();
        assert!(codes.contains(&ViolationCode::PublicSliceShared));
        assert!(codes.contains(&ViolationCode::PublicSliceNotType1));
    }

    #[test]
    fn open_mno_subscriber_slice_must_federate_with_home_operator() {
        let mut plan = NetworkPlan::new(Domain::micro_operator("uo", "Campus")).unwrap();
        plan.declare_domain(Domain::mno("mno1", "MNO One")).unwrap();
        plan.declare_domain(Domain::mno("mno2", "MNO Two")).unwrap();
        plan.declare_tenant(tenant(
            "g2",
            SubscriberClass::MnoSubscriberGroup,
            Some("mno2"),
            false,
        ))
        .unwrap();
        plan.declare_nssi(nssi("an1", NssiKind::An, "uo", false)).unwrap();
        plan.declare_nssi(nssi("cn1", NssiKind::Cn, "mno1", true)).unwrap();
        // Slice federates with mno1, but the tenant's home is mno2.
        plan.declare_nsi(Nsi::new(
            "sub",
            "g2",
            vec!["an1".into(), "cn1".into()],
            InstantiationMode::Request,
        ))
        .unwrap();
        let violations =
            validate_network_plan(&plan, &scenario(ScenarioKind::OpenMno, 2, false)).unwrap();
        let codes: Vec<ViolationCode> = violations.iter().map(|v| v.code).collect();
        assert_eq!(codes, vec![ViolationCode::MnoSubscriberSliceNotFederated]);
    }

    #[test]
    fn composition_violations_fold_in_as_composition_errors() {
        let mut plan = NetworkPlan::new(Domain::micro_operator("uo", "Campus")).unwrap();
        plan.declare_tenant(tenant("t1", SubscriberClass::PrivateTenant, None, false))
            .unwrap();
        plan.declare_nssi(nssi("an1", NssiKind::An, "uo", false)).unwrap();
        plan.declare_nsi(Nsi::new(
            "x",
            "t1",
            vec!["an1".into()],
            InstantiationMode::Request,
        ))
        .unwrap();
        let violations =
            validate_network_plan(&plan, &scenario(ScenarioKind::ClosedA, 0, false)).unwrap();
        assert!(violations
            .iter()
            .all(|v| v.code == ViolationCode::CompositionError));
        assert_eq!(violations.len(), 2);
    }

    #[test]
    fn listing_order_does_not_affect_violations() {
        let build = |flip: bool| {
            let mut plan = NetworkPlan::new(Domain::micro_operator("uo", "Campus")).unwrap();
            plan.declare_tenant(tenant("t1", SubscriberClass::PrivateTenant, None, false))
                .unwrap();
            let mut subnets = vec![
                nssi("an1", NssiKind::An, "uo", false),
                nssi("an2", NssiKind::An, "uo", false),
                nssi("cns", NssiKind::Cn, "uo", true),
            ];
            if flip {
                subnets.reverse();
            }
            for n in subnets {
                plan.declare_nssi(n).unwrap();
            }
            let mut slices = vec![("a", vec!["an1", "cns"]), ("b", vec!["an2", "cns"])];
            if flip {
                slices.reverse();
            }
            for (id, constituents) in slices {
                plan.declare_nsi(Nsi::new(
                    id,
                    "t1",
                    constituents.into_iter().map(Into::into).collect(),
                    InstantiationMode::Request,
                ))
                .unwrap();
            }
            validate_network_plan(&plan, &scenario(ScenarioKind::OpenPublic, 0, false)).unwrap()
        };
        assert_eq!(build(false), build(true));
    }

    #[test]
    fn request_demand_has_no_effect_on_rules_without_reservations() {
        // Rules read the ledger, not the requests; a declared request alone
        // changes nothing.
        let mut plan = NetworkPlan::new(Domain::micro_operator("uo", "Campus")).unwrap();
        plan.declare_tenant(tenant("t1", SubscriberClass::PrivateTenant, None, false))
            .unwrap();
        plan.declare_request(ServiceRequest {
            id: "r1".into(),
            tenant: "t1".into(),
            latency_class: LatencyClass::Normal,
            isolation_class: IsolationClass::Shared,
            reliability_class: ReliabilityClass::Normal,
            wide_area: false,
            demand: 3,
            locations: ["site".to_string()].into(),
        })
        .unwrap();
        let violations =
            validate_network_plan(&plan, &scenario(ScenarioKind::ClosedA, 0, false)).unwrap();
        assert!(violations.is_empty());
    }
}

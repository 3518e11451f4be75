//! Peering between the micro-operator and external MNOs.
//!
//! An agreement can export MNO-owned subnets for use as constituents of
//! local slices (subnet import), export local subnets to the MNO
//! (bookkeeping only), and register opaque foreign slice instances that
//! tenant services may be bound to (slice linking).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::id::{DomainId, NsiId, NssiId, RequestId};
use crate::model::{DomainKind, NsiType};
use crate::plan::NetworkPlan;
use crate::scenario::{DeploymentScenario, ScenarioKind};

/// Who may consume whose resources under an agreement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    MicroOperatorUsesMno,
    MnoUsesMicroOperator,
    Bidirectional,
}

impl Direction {
    pub fn permits_micro_operator_use(self) -> bool {
        matches!(
            self,
            Direction::MicroOperatorUsesMno | Direction::Bidirectional
        )
    }

    pub fn permits_mno_use(self) -> bool {
        matches!(
            self,
            Direction::MnoUsesMicroOperator | Direction::Bidirectional
        )
    }
}

/// A peering agreement with one MNO.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeeringAgreement {
    pub mno: DomainId,
    pub direction: Direction,
    /// MNO-owned subnets offered to the micro-operator.
    pub exported_nssis: BTreeSet<NssiId>,
    /// Local subnets offered to the MNO (bookkeeping; consumption by the
    /// MNO is not simulated).
    pub exported_local_nssis: BTreeSet<NssiId>,
}

/// A tenant service composed of local and (optionally) foreign slices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ServiceBinding {
    pub service: RequestId,
    pub local_nsis: BTreeSet<NsiId>,
    pub foreign_nsis: BTreeSet<NsiId>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FederationError {
    #[error("domain `{0}` is not registered")]
    UnknownDomain(DomainId),
    #[error("domain `{0}` is not an MNO")]
    NotAnMno(DomainId),
    #[error("subnet `{0}` is not registered")]
    UnknownNssi(NssiId),
    #[error("exported subnet `{0}` is not sharable")]
    NonSharableExport(NssiId),
    #[error("subnet `{nssi}` is owned by `{actual}`, not by the expected domain `{expected}`")]
    ExportOwnershipMismatch {
        nssi: NssiId,
        expected: DomainId,
        actual: DomainId,
    },
    #[error("agreement direction does not permit the declared export: {0}")]
    DirectionMismatch(String),
    #[error("no agreement exports subnet `{0}`")]
    NotExported(NssiId),
    #[error("foreign subnet `{nssi}` has residual {residual}, needed {requested}")]
    ForeignCapacityExhausted {
        nssi: NssiId,
        requested: u32,
        residual: u32,
    },
    #[error("the scenario does not permit slices shared with another operator's network")]
    ScenarioForbidsFederation,
    #[error("slice `{0}` is not in the plan")]
    UnknownNsi(NsiId),
    #[error("slice `{nsi}` already contains `{nssi}`")]
    DuplicateConstituent { nsi: NsiId, nssi: NssiId },
    #[error("service bindings with foreign slices require the slice-linking mixed scenario")]
    WrongScenario,
    #[error("foreign slice `{0}` is not registered by any agreement")]
    UnknownForeignNsi(NsiId),
    #[error("service `{0}` is not registered")]
    UnknownService(RequestId),
    #[error(transparent)]
    Ledger(#[from] crate::resources::LedgerError),
}

/// Record a peering agreement. Exported subnets must resolve, be sharable,
/// and be owned by the right side; the direction must permit each export
/// list that is non-empty.
pub fn register_peer(
    plan: &mut NetworkPlan,
    agreement: PeeringAgreement,
) -> Result<(), FederationError> {
    let domain = plan
        .domain(&agreement.mno)
        .ok_or_else(|| FederationError::UnknownDomain(agreement.mno.clone()))?;
    if domain.kind != DomainKind::Mno {
        return Err(FederationError::NotAnMno(agreement.mno.clone()));
    }
    if !agreement.exported_nssis.is_empty() && !agreement.direction.permits_micro_operator_use() {
        return Err(FederationError::DirectionMismatch(
            "MNO subnets are exported but the direction does not permit micro-operator use"
                .to_string(),
        ));
    }
    if !agreement.exported_local_nssis.is_empty() && !agreement.direction.permits_mno_use() {
        return Err(FederationError::DirectionMismatch(
            "local subnets are exported but the direction does not permit MNO use".to_string(),
        ));
    }
    for (ids, expected_owner) in [
        (&agreement.exported_nssis, agreement.mno.clone()),
        (
            &agreement.exported_local_nssis,
            plan.micro_operator_id().clone(),
        ),
    ] {
        for id in ids {
            let nssi = plan
                .nssi(id)
                .ok_or_else(|| FederationError::UnknownNssi(id.clone()))?;
            if nssi.owner != expected_owner {
                return Err(FederationError::ExportOwnershipMismatch {
                    nssi: id.clone(),
                    expected: expected_owner.clone(),
                    actual: nssi.owner.clone(),
                });
            }
            if !nssi.sharable {
                return Err(FederationError::NonSharableExport(id.clone()));
            }
        }
    }
    plan.push_agreement(agreement);
    plan.bump();
    Ok(())
}

/// Register an opaque foreign slice instance (id plus owning MNO) offered
/// for service bindings. Requires an agreement with that MNO permitting
/// MNO-side use.
pub fn declare_foreign_nsi(
    plan: &mut NetworkPlan,
    id: NsiId,
    owner: DomainId,
) -> Result<(), FederationError> {
    let domain = plan
        .domain(&owner)
        .ok_or_else(|| FederationError::UnknownDomain(owner.clone()))?;
    if domain.kind != DomainKind::Mno {
        return Err(FederationError::NotAnMno(owner.clone()));
    }
    let permitted = plan
        .agreements()
        .iter()
        .any(|a| a.mno == owner && a.direction.permits_mno_use());
    if !permitted {
        return Err(FederationError::DirectionMismatch(format!(
            "no agreement with `{owner}` permits MNO-side use"
        )));
    }
    plan.register_foreign_nsi(id, owner);
    plan.bump();
    Ok(())
}

/// Foreign subnets currently selectable as slice constituents: exported by
/// an agreement whose direction permits micro-operator use. Sorted by id.
pub fn eligible_foreign_exports(plan: &NetworkPlan) -> Vec<NssiId> {
    let mut ids: BTreeSet<NssiId> = BTreeSet::new();
    for agreement in plan.agreements() {
        if agreement.direction.permits_micro_operator_use() {
            ids.extend(agreement.exported_nssis.iter().cloned());
        }
    }
    ids.into_iter().collect()
}

/// Add an exported foreign subnet to an existing slice, reserving `units`
/// on it. The slice reclassifies Type 3.
pub fn import_foreign_nssi(
    plan: &mut NetworkPlan,
    scenario: &DeploymentScenario,
    nsi_id: &NsiId,
    foreign_nssi: &NssiId,
    units: u32,
) -> Result<(), FederationError> {
    let nsi = plan
        .nsi(nsi_id)
        .ok_or_else(|| FederationError::UnknownNsi(nsi_id.clone()))?;
    let tenant = plan
        .tenant(&nsi.tenant)
        .ok_or_else(|| FederationError::UnknownNsi(nsi_id.clone()))?;
    let allowed = scenario
        .allowed_types_for_tenant(plan, tenant)
        .map_err(|_| FederationError::ScenarioForbidsFederation)?;
    if !allowed.contains(&NsiType::Type3) {
        return Err(FederationError::ScenarioForbidsFederation);
    }
    if !eligible_foreign_exports(plan).contains(foreign_nssi) {
        return Err(FederationError::NotExported(foreign_nssi.clone()));
    }
    if nsi.constituents().contains(foreign_nssi) {
        return Err(FederationError::DuplicateConstituent {
            nsi: nsi_id.clone(),
            nssi: foreign_nssi.clone(),
        });
    }
    let capacity = plan
        .nssi(foreign_nssi)
        .ok_or_else(|| FederationError::UnknownNssi(foreign_nssi.clone()))?
        .capacity;
    let residual = plan.ledger().residual(foreign_nssi, capacity);
    if units > residual {
        return Err(FederationError::ForeignCapacityExhausted {
            nssi: foreign_nssi.clone(),
            requested: units,
            residual,
        });
    }
    plan.ledger_mut()
        .admit(foreign_nssi, nsi_id, units, capacity)?;
    plan.nsi_mut(nsi_id)
        .expect("checked above")
        .push_constituent(foreign_nssi.clone());
    plan.bump();
    Ok(())
}

/// Record a service binding. Bindings with foreign slices are only legal
/// under the slice-linking mixed scenario and link the foreign slices to
/// every named local slice; bindings without foreign slices are plain
/// service bookkeeping, legal anywhere.
pub fn bind_service(
    plan: &mut NetworkPlan,
    scenario: &DeploymentScenario,
    binding: ServiceBinding,
) -> Result<(), FederationError> {
    if plan.request(&binding.service).is_none() {
        return Err(FederationError::UnknownService(binding.service.clone()));
    }
    for local in &binding.local_nsis {
        if plan.nsi(local).is_none() {
            return Err(FederationError::UnknownNsi(local.clone()));
        }
    }
    if !binding.foreign_nsis.is_empty() {
        if scenario.kind != ScenarioKind::MixedOptionB {
            return Err(FederationError::WrongScenario);
        }
        for foreign in &binding.foreign_nsis {
            if plan.foreign_nsi_owner(foreign).is_none() {
                return Err(FederationError::UnknownForeignNsi(foreign.clone()));
            }
        }
        for local in &binding.local_nsis {
            let nsi = plan.nsi_mut(local).expect("checked above");
            for foreign in &binding.foreign_nsis {
                nsi.link_foreign(foreign.clone());
            }
        }
    }
    plan.push_binding(binding);
    plan.bump();
    Ok(())
}

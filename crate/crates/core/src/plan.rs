//! The network plan: the full state of one micro-operator network.
//!
//! A plan holds domains, subnet instances, slice instances, tenants,
//! service requests, peering agreements, foreign-slice registrations,
//! service bindings and the capacity ledger. It is the unit of validation,
//! persistence and reporting. Cloning a plan yields an immutable snapshot
//! stamped with the version counter; every mutation bumps the counter.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::federation::{PeeringAgreement, ServiceBinding};
use crate::id::{DomainId, NsiId, NssiId, RequestId, TenantId};
use crate::model::{
    Domain, DomainKind, Nsi, Nssi, ServiceRequest, SubscriberClass, Tenant,
};
use crate::resources::ReservationLedger;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlanError {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("domain `{0}` is not registered")]
    UnknownDomain(DomainId),
    #[error("domain `{0}` is not an MNO")]
    NotAnMno(DomainId),
    #[error("a micro-operator domain is already registered (`{0}`)")]
    MicroOperatorAlreadyRegistered(DomainId),
    #[error("a general-public tenant is already registered (`{0}`)")]
    GeneralPublicAlreadyRegistered(TenantId),
    #[error("tenant `{0}` must name at least one location")]
    EmptyLocations(TenantId),
    #[error("tenant `{0}` is a subscriber group and must name a home MNO")]
    MissingHomeMno(TenantId),
    #[error("tenant `{0}` is not registered")]
    UnknownTenant(TenantId),
    #[error("subnet instance `{0}` is not registered")]
    UnknownNssi(NssiId),
    #[error("request `{0}` must demand a positive number of units")]
    ZeroDemand(RequestId),
    #[error("request `{0}` must name at least one location")]
    EmptyRequestLocations(RequestId),
    #[error("request `{0}` names locations outside its tenant's locations")]
    LocationsOutsideTenant(RequestId),
    #[error("slice `{0}` lists a duplicate constituent")]
    DuplicateConstituent(NsiId),
}

/// Plan-level referential inconsistency. The declaration API prevents these
/// states; the check exists for plans assembled by other means.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("inconsistent plan: {0}")]
pub struct InconsistentPlan(pub String);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NetworkPlan {
    version: u64,
    micro_operator: DomainId,
    domains: BTreeMap<DomainId, Domain>,
    nssis: BTreeMap<NssiId, Nssi>,
    nsis: BTreeMap<NsiId, Nsi>,
    tenants: BTreeMap<TenantId, Tenant>,
    requests: BTreeMap<RequestId, ServiceRequest>,
    agreements: Vec<PeeringAgreement>,
    /// Foreign slice instances known to the plan, keyed to their owning MNO.
    foreign_nsis: BTreeMap<NsiId, DomainId>,
    bindings: Vec<ServiceBinding>,
    ledger: ReservationLedger,
}

impl NetworkPlan {
    /// A fresh plan around the given micro-operator domain.
    pub fn new(micro_operator: Domain) -> Result<Self, PlanError> {
        if micro_operator.kind != DomainKind::MicroOperator {
            return Err(PlanError::NotAnMno(micro_operator.id.clone()));
        }
        let id = micro_operator.id.clone();
        let mut domains = BTreeMap::new();
        domains.insert(id.clone(), micro_operator);
        Ok(Self {
            version: 0,
            micro_operator: id,
            domains,
            nssis: BTreeMap::new(),
            nsis: BTreeMap::new(),
            tenants: BTreeMap::new(),
            requests: BTreeMap::new(),
            agreements: Vec::new(),
            foreign_nsis: BTreeMap::new(),
            bindings: Vec::new(),
            ledger: ReservationLedger::new(),
        })
    }

    // -----------------------------------------------------------------
    // Declarations
    // -----------------------------------------------------------------

    /// Register an external MNO domain. The micro-operator domain is fixed
    /// at construction; a second one is rejected.
    pub fn declare_domain(&mut self, domain: Domain) -> Result<(), PlanError> {
        if domain.kind == DomainKind::MicroOperator {
            return Err(PlanError::MicroOperatorAlreadyRegistered(
                self.micro_operator.clone(),
            ));
        }
        if self.domains.contains_key(&domain.id) {
            return Err(PlanError::DuplicateId(domain.id.to_string()));
        }
        self.domains.insert(domain.id.clone(), domain);
        self.bump();
        Ok(())
    }

    pub fn declare_nssi(&mut self, nssi: Nssi) -> Result<(), PlanError> {
        if self.nssis.contains_key(&nssi.id) {
            return Err(PlanError::DuplicateId(nssi.id.to_string()));
        }
        if !self.domains.contains_key(&nssi.owner) {
            return Err(PlanError::UnknownDomain(nssi.owner.clone()));
        }
        self.nssis.insert(nssi.id.clone(), nssi);
        self.bump();
        Ok(())
    }

    pub fn declare_tenant(&mut self, tenant: Tenant) -> Result<(), PlanError> {
        if self.tenants.contains_key(&tenant.id) {
            return Err(PlanError::DuplicateId(tenant.id.to_string()));
        }
        if tenant.locations.is_empty() {
            return Err(PlanError::EmptyLocations(tenant.id.clone()));
        }
        match tenant.subscriber_class {
            SubscriberClass::MnoSubscriberGroup => {
                let home = tenant
                    .home_mno
                    .as_ref()
                    .ok_or_else(|| PlanError::MissingHomeMno(tenant.id.clone()))?;
                let domain = self
                    .domains
                    .get(home)
                    .ok_or_else(|| PlanError::UnknownDomain(home.clone()))?;
                if domain.kind != DomainKind::Mno {
                    return Err(PlanError::NotAnMno(home.clone()));
                }
            }
            SubscriberClass::GeneralPublic => {
                if let Some(existing) = self.general_public_tenant() {
                    return Err(PlanError::GeneralPublicAlreadyRegistered(
                        existing.id.clone(),
                    ));
                }
            }
            SubscriberClass::PrivateTenant => {}
        }
        self.tenants.insert(tenant.id.clone(), tenant);
        self.bump();
        Ok(())
    }

    pub fn declare_request(&mut self, request: ServiceRequest) -> Result<(), PlanError> {
        if self.requests.contains_key(&request.id) {
            return Err(PlanError::DuplicateId(request.id.to_string()));
        }
        let tenant = self
            .tenants
            .get(&request.tenant)
            .ok_or_else(|| PlanError::UnknownTenant(request.tenant.clone()))?;
        if request.demand == 0 {
            return Err(PlanError::ZeroDemand(request.id.clone()));
        }
        if request.locations.is_empty() {
            return Err(PlanError::EmptyRequestLocations(request.id.clone()));
        }
        if !request.locations.is_subset(&tenant.locations) {
            return Err(PlanError::LocationsOutsideTenant(request.id.clone()));
        }
        self.requests.insert(request.id.clone(), request);
        self.bump();
        Ok(())
    }

    /// Insert a slice instance as-is, checking only that its references
    /// resolve. Composition and scenario legality are deliberately not
    /// enforced here: this is the import path for representing an existing
    /// network state so that it can be validated.
    pub fn declare_nsi(&mut self, nsi: Nsi) -> Result<(), PlanError> {
        if self.nsis.contains_key(&nsi.id) {
            return Err(PlanError::DuplicateId(nsi.id.to_string()));
        }
        if !self.tenants.contains_key(&nsi.tenant) {
            return Err(PlanError::UnknownTenant(nsi.tenant.clone()));
        }
        let mut seen = BTreeSet::new();
        for c in nsi.constituents() {
            if !self.nssis.contains_key(c) {
                return Err(PlanError::UnknownNssi(c.clone()));
            }
            if !seen.insert(c.clone()) {
                return Err(PlanError::DuplicateConstituent(nsi.id.clone()));
            }
        }
        self.nsis.insert(nsi.id.clone(), nsi);
        self.bump();
        Ok(())
    }

    // -----------------------------------------------------------------
    // Accessors
    // -----------------------------------------------------------------

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn micro_operator_id(&self) -> &DomainId {
        &self.micro_operator
    }

    pub fn domain(&self, id: &DomainId) -> Option<&Domain> {
        self.domains.get(id)
    }

    pub fn domains(&self) -> impl Iterator<Item = &Domain> {
        self.domains.values()
    }

    pub fn nssi(&self, id: &NssiId) -> Option<&Nssi> {
        self.nssis.get(id)
    }

    pub fn nssis(&self) -> impl Iterator<Item = &Nssi> {
        self.nssis.values()
    }

    pub fn nsi(&self, id: &NsiId) -> Option<&Nsi> {
        self.nsis.get(id)
    }

    pub fn nsis(&self) -> impl Iterator<Item = &Nsi> {
        self.nsis.values()
    }

    /// Slice instances that are not decommissioned, in id order.
    pub fn live_nsis(&self) -> impl Iterator<Item = &Nsi> {
        self.nsis.values().filter(|n| n.is_live())
    }

    pub fn tenant(&self, id: &TenantId) -> Option<&Tenant> {
        self.tenants.get(id)
    }

    pub fn tenants(&self) -> impl Iterator<Item = &Tenant> {
        self.tenants.values()
    }

    pub fn request(&self, id: &RequestId) -> Option<&ServiceRequest> {
        self.requests.get(id)
    }

    pub fn requests(&self) -> impl Iterator<Item = &ServiceRequest> {
        self.requests.values()
    }

    pub fn agreements(&self) -> &[PeeringAgreement] {
        &self.agreements
    }

    pub fn foreign_nsi_owner(&self, id: &NsiId) -> Option<&DomainId> {
        self.foreign_nsis.get(id)
    }

    pub fn foreign_nsis(&self) -> impl Iterator<Item = (&NsiId, &DomainId)> {
        self.foreign_nsis.iter()
    }

    pub fn bindings(&self) -> &[ServiceBinding] {
        &self.bindings
    }

    pub fn ledger(&self) -> &ReservationLedger {
        &self.ledger
    }

    pub fn residual(&self, nssi: &NssiId) -> u32 {
        match self.nssis.get(nssi) {
            Some(n) => self.ledger.residual(nssi, n.capacity),
            None => 0,
        }
    }

    pub fn general_public_tenant(&self) -> Option<&Tenant> {
        self.tenants
            .values()
            .find(|t| t.subscriber_class == SubscriberClass::GeneralPublic)
    }

    /// True if any tenant declared a need to connect outside the network.
    pub fn any_external_need(&self) -> bool {
        self.tenants.values().any(|t| t.external_connectivity_need)
    }

    /// Number of distinct MNO domains with at least one registered
    /// agreement.
    pub fn peered_mno_count(&self) -> usize {
        self.agreements
            .iter()
            .map(|a| &a.mno)
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Live slices referencing the given subnet, in id order.
    pub fn referencing_nsis(&self, nssi: &NssiId) -> Vec<&Nsi> {
        self.live_nsis()
            .filter(|n| n.constituents().contains(nssi))
            .collect()
    }

    /// Pick a free id of the form `<prefix>`, `<prefix>-2`, `<prefix>-3`, ...
    pub(crate) fn free_nsi_id(&self, prefix: &str) -> NsiId {
        free_id(prefix, |candidate| {
            !self.nsis.contains_key(&NsiId::new(candidate))
                && !self.foreign_nsis.contains_key(&NsiId::new(candidate))
        })
        .into()
    }

    pub(crate) fn free_nssi_id(&self, prefix: &str) -> NssiId {
        free_id(prefix, |candidate| {
            !self.nssis.contains_key(&NssiId::new(candidate))
        })
        .into()
    }

    // -----------------------------------------------------------------
    // Internal mutation (orchestrator / federation only)
    // -----------------------------------------------------------------

    pub(crate) fn bump(&mut self) {
        self.version += 1;
    }

    pub(crate) fn insert_nssi_internal(&mut self, nssi: Nssi) {
        self.nssis.insert(nssi.id.clone(), nssi);
    }

    pub(crate) fn insert_nsi_internal(&mut self, nsi: Nsi) {
        self.nsis.insert(nsi.id.clone(), nsi);
    }

    pub(crate) fn nsi_mut(&mut self, id: &NsiId) -> Option<&mut Nsi> {
        self.nsis.get_mut(id)
    }

    pub(crate) fn remove_nssi_internal(&mut self, id: &NssiId) {
        self.nssis.remove(id);
        self.ledger.forget_nssi(id);
    }

    pub(crate) fn ledger_mut(&mut self) -> &mut ReservationLedger {
        &mut self.ledger
    }

    pub(crate) fn push_agreement(&mut self, agreement: PeeringAgreement) {
        self.agreements.push(agreement);
    }

    pub(crate) fn register_foreign_nsi(&mut self, id: NsiId, owner: DomainId) {
        self.foreign_nsis.insert(id, owner);
    }

    pub(crate) fn push_binding(&mut self, binding: ServiceBinding) {
        self.bindings.push(binding);
    }

    // -----------------------------------------------------------------
    // Consistency
    // -----------------------------------------------------------------

    /// Check that every cross-entity reference in the plan resolves.
    /// Dangling slice constituents are not covered here: those are
    /// composition violations reported by `validate_nsi_composition`.
    pub fn check_consistency(&self) -> Result<(), InconsistentPlan> {
        for nssi in self.nssis.values() {
            if !self.domains.contains_key(&nssi.owner) {
                return Err(InconsistentPlan(format!(
                    "subnet `{}` is owned by unknown domain `{}`",
                    nssi.id, nssi.owner
                )));
            }
        }
        for nsi in self.nsis.values() {
            if !self.tenants.contains_key(&nsi.tenant) {
                return Err(InconsistentPlan(format!(
                    "slice `{}` belongs to unknown tenant `{}`",
                    nsi.id, nsi.tenant
                )));
            }
        }
        for tenant in self.tenants.values() {
            if let Some(home) = &tenant.home_mno {
                if !self.domains.contains_key(home) {
                    return Err(InconsistentPlan(format!(
                        "tenant `{}` names unknown home MNO `{}`",
                        tenant.id, home
                    )));
                }
            }
        }
        for request in self.requests.values() {
            if !self.tenants.contains_key(&request.tenant) {
                return Err(InconsistentPlan(format!(
                    "request `{}` names unknown tenant `{}`",
                    request.id, request.tenant
                )));
            }
        }
        for agreement in &self.agreements {
            if !self.domains.contains_key(&agreement.mno) {
                return Err(InconsistentPlan(format!(
                    "agreement names unknown MNO `{}`",
                    agreement.mno
                )));
            }
            for nssi in agreement
                .exported_nssis
                .iter()
                .chain(agreement.exported_local_nssis.iter())
            {
                if !self.nssis.contains_key(nssi) {
                    return Err(InconsistentPlan(format!(
                        "agreement with `{}` exports unknown subnet `{}`",
                        agreement.mno, nssi
                    )));
                }
            }
        }
        for (nsi, owner) in &self.foreign_nsis {
            if !self.domains.contains_key(owner) {
                return Err(InconsistentPlan(format!(
                    "foreign slice `{nsi}` is owned by unknown domain `{owner}`"
                )));
            }
        }
        for binding in &self.bindings {
            if !self.requests.contains_key(&binding.service) {
                return Err(InconsistentPlan(format!(
                    "binding names unknown service `{}`",
                    binding.service
                )));
            }
            for local in &binding.local_nsis {
                if !self.nsis.contains_key(local) {
                    return Err(InconsistentPlan(format!(
                        "binding for `{}` names unknown slice `{}`",
                        binding.service, local
                    )));
                }
            }
            for foreign in &binding.foreign_nsis {
                if !self.foreign_nsis.contains_key(foreign) {
                    return Err(InconsistentPlan(format!(
                        "binding for `{}` names unregistered foreign slice `{}`",
                        binding.service, foreign
                    )));
                }
            }
        }
        for entry in self.ledger.iter() {
            if !self.nssis.contains_key(&entry.nssi) {
                return Err(InconsistentPlan(format!(
                    "reservation references unknown subnet `{}`",
                    entry.nssi
                )));
            }
            if !self.nsis.contains_key(&entry.nsi) {
                return Err(InconsistentPlan(format!(
                    "reservation references unknown slice `{}`",
                    entry.nsi
                )));
            }
        }
        Ok(())
    }
}

fn free_id(prefix: &str, is_free: impl Fn(&str) -> bool) -> String {
    if is_free(prefix) {
        return prefix.to_string();
    }
    let mut n = 2u32;
    loop {
        let candidate = format!("{prefix}-{n}");
        if is_free(&candidate) {
            return candidate;
        }
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{InstantiationMode, NssiKind};

    fn base_plan() -> NetworkPlan {
        NetworkPlan::new(Domain::micro_operator("uo", "Campus")).unwrap()
    }

    fn nssi(id: &str, kind: NssiKind, owner: &str) -> Nssi {
        Nssi {
            id: id.into(),
            kind,
            owner: owner.into(),
            sharable: true,
            capacity: 10,
            location: None,
            nf_labels: BTreeSet::new(),
        }
    }

    fn tenant(id: &str) -> Tenant {
        Tenant {
            id: id.into(),
            subscriber_class: SubscriberClass::PrivateTenant,
            home_mno: None,
            locations: ["site".to_string()].into(),
            external_connectivity_need: false,
        }
    }

    #[test]
    fn constructor_requires_micro_operator() {
        let err = NetworkPlan::new(Domain::mno("m", "MNO")).unwrap_err();
        assert_eq!(err, PlanError::NotAnMno("m".into()));
    }

    #[test]
    fn second_micro_operator_rejected() {
        let mut plan = base_plan();
        let err = plan
            .declare_domain(Domain::micro_operator("uo2", "Other"))
            .unwrap_err();
        assert!(matches!(err, PlanError::MicroOperatorAlreadyRegistered(_)));
    }

    #[test]
    fn duplicate_ids_rejected() {
        let mut plan = base_plan();
        plan.declare_nssi(nssi("an1", NssiKind::An, "uo")).unwrap();
        assert!(matches!(
            plan.declare_nssi(nssi("an1", NssiKind::An, "uo")),
            Err(PlanError::DuplicateId(_))
        ));
    }

    #[test]
    fn subscriber_group_requires_registered_home_mno() {
        let mut plan = base_plan();
        let t = Tenant {
            id: "g1".into(),
            subscriber_class: SubscriberClass::MnoSubscriberGroup,
            home_mno: Some("mno1".into()),
            locations: ["site".to_string()].into(),
            external_connectivity_need: false,
        };
        assert_eq!(
            plan.declare_tenant(t.clone()).unwrap_err(),
            PlanError::UnknownDomain("mno1".into())
        );
        plan.declare_domain(Domain::mno("mno1", "MNO One")).unwrap();
        plan.declare_tenant(t).unwrap();
    }

    #[test]
    fn general_public_unique() {
        let mut plan = base_plan();
        let public = |id: &str| Tenant {
            id: id.into(),
            subscriber_class: SubscriberClass::GeneralPublic,
            home_mno: None,
            locations: ["site".to_string()].into(),
            external_connectivity_need: false,
        };
        plan.declare_tenant(public("pub")).unwrap();
        assert!(matches!(
            plan.declare_tenant(public("pub2")),
            Err(PlanError::GeneralPublicAlreadyRegistered(_))
        ));
    }

    #[test]
    fn request_locations_must_be_subset_of_tenant() {
        let mut plan = base_plan();
        plan.declare_tenant(tenant("t1")).unwrap();
        let request = ServiceRequest {
            id: "r1".into(),
            tenant: "t1".into(),
            latency_class: crate::model::LatencyClass::Normal,
            isolation_class: crate::model::IsolationClass::Shared,
            reliability_class: crate::model::ReliabilityClass::Normal,
            wide_area: false,
            demand: 1,
            locations: ["elsewhere".to_string()].into(),
        };
        assert_eq!(
            plan.declare_request(request).unwrap_err(),
            PlanError::LocationsOutsideTenant("r1".into())
        );
    }

    #[test]
    fn declare_nsi_checks_references() {
        let mut plan = base_plan();
        plan.declare_tenant(tenant("t1")).unwrap();
        plan.declare_nssi(nssi("an1", NssiKind::An, "uo")).unwrap();
        let bad = Nsi::new(
            "x",
            "t1",
            vec!["an1".into(), "cn9".into()],
            InstantiationMode::Request,
        );
        assert_eq!(
            plan.declare_nsi(bad).unwrap_err(),
            PlanError::UnknownNssi("cn9".into())
        );
    }

    #[test]
    fn version_bumps_on_every_declaration() {
        let mut plan = base_plan();
        let v0 = plan.version();
        plan.declare_tenant(tenant("t1")).unwrap();
        plan.declare_nssi(nssi("an1", NssiKind::An, "uo")).unwrap();
        assert_eq!(plan.version(), v0 + 2);
    }

    #[test]
    fn free_ids_skip_taken_names() {
        let mut plan = base_plan();
        plan.declare_tenant(tenant("t1")).unwrap();
        plan.declare_nssi(nssi("an-r1", NssiKind::An, "uo")).unwrap();
        assert_eq!(plan.free_nssi_id("an-r1").as_str(), "an-r1-2");
        assert_eq!(plan.free_nssi_id("cn-r1").as_str(), "cn-r1");
    }

    #[test]
    fn snapshots_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<NetworkPlan>();
    }
}

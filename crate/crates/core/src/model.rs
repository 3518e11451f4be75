//! Domain vocabulary: domains, subnet instances (NSSIs), slice instances
//! (NSIs), tenants and service requests.
//!
//! All types are immutable values once constructed; mutation of a network
//! plan happens only through the orchestrator and federation operations.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::id::{DomainId, NsiId, NssiId, RequestId, TenantId};
use crate::lifecycle::LifecycleState;

/// Administrative domain kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    MicroOperator,
    Mno,
}

/// An administrative domain. Exactly one micro-operator domain exists per
/// plan; every other domain is an external MNO peer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Domain {
    pub id: DomainId,
    pub kind: DomainKind,
    pub name: String,
}

impl Domain {
    pub fn micro_operator(id: impl Into<DomainId>, name: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            kind: DomainKind::MicroOperator,
            name: name.into(),
        }
    }

    pub fn mno(id: impl Into<DomainId>, name: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            kind: DomainKind::Mno,
            name: name.into(),
        }
    }
}

/// Whether a subnet instance carries access-network or core-network
/// functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NssiKind {
    An,
    Cn,
}

impl NssiKind {
    pub fn other(self) -> Self {
        match self {
            NssiKind::An => NssiKind::Cn,
            NssiKind::Cn => NssiKind::An,
        }
    }
}

impl std::fmt::Display for NssiKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NssiKind::An => f.write_str("an"),
            NssiKind::Cn => f.write_str("cn"),
        }
    }
}

/// A network slice subnet instance: the building block slices are composed
/// from. Capacity is an abstract unit count; `nf_labels` are descriptive
/// only and play no role in sharing rules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nssi {
    pub id: NssiId,
    pub kind: NssiKind,
    pub owner: DomainId,
    pub sharable: bool,
    pub capacity: u32,
    pub location: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub nf_labels: BTreeSet<String>,
}

/// Slice configuration type, derived from plan state and never stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NsiType {
    Type1,
    Type2,
    Type3,
}

impl std::fmt::Display for NsiType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NsiType::Type1 => f.write_str("Type1"),
            NsiType::Type2 => f.write_str("Type2"),
            NsiType::Type3 => f.write_str("Type3"),
        }
    }
}

/// How a slice was instantiated. The mode determines who manages the slice
/// for its whole lifecycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstantiationMode {
    Request,
    Predefined,
}

/// Who performs a lifecycle operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Actor {
    Tenant,
    Operator,
}

impl std::fmt::Display for Actor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Actor::Tenant => f.write_str("tenant"),
            Actor::Operator => f.write_str("operator"),
        }
    }
}

/// A network slice instance: an ordered set of subnet constituents bound to
/// a tenant, plus foreign slice links recorded by service bindings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nsi {
    pub id: NsiId,
    pub tenant: TenantId,
    constituents: Vec<NssiId>,
    linked_foreign_nsis: BTreeSet<NsiId>,
    pub lifecycle: LifecycleState,
    pub mode: InstantiationMode,
}

impl Nsi {
    pub fn new(
        id: impl Into<NsiId>,
        tenant: impl Into<TenantId>,
        constituents: Vec<NssiId>,
        mode: InstantiationMode,
    ) -> Self {
        Self {
            id: id.into(),
            tenant: tenant.into(),
            constituents,
            linked_foreign_nsis: BTreeSet::new(),
            lifecycle: LifecycleState::Planned,
            mode,
        }
    }

    /// Attach foreign slice links, for building records of existing states.
    pub fn with_linked_foreign(mut self, links: impl IntoIterator<Item = NsiId>) -> Self {
        self.linked_foreign_nsis.extend(links);
        self
    }

    /// Constituent subnet ids in insertion order.
    pub fn constituents(&self) -> &[NssiId] {
        &self.constituents
    }

    pub fn linked_foreign_nsis(&self) -> &BTreeSet<NsiId> {
        &self.linked_foreign_nsis
    }

    /// The slice manager is fully determined by the instantiation mode:
    /// request-mode slices are tenant-managed, pre-defined slices are
    /// operator-managed.
    pub fn manager(&self) -> Actor {
        match self.mode {
            InstantiationMode::Request => Actor::Tenant,
            InstantiationMode::Predefined => Actor::Operator,
        }
    }

    pub fn is_live(&self) -> bool {
        self.lifecycle != LifecycleState::Decommissioned
    }

    pub(crate) fn push_constituent(&mut self, nssi: NssiId) {
        self.constituents.push(nssi);
    }

    pub(crate) fn link_foreign(&mut self, nsi: NsiId) {
        self.linked_foreign_nsis.insert(nsi);
    }
}

/// Tenant subscriber class: a private vertical, a hosted MNO's subscriber
/// group, or the general public.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubscriberClass {
    PrivateTenant,
    MnoSubscriberGroup,
    GeneralPublic,
}

/// A tenant served by the micro-operator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tenant {
    pub id: TenantId,
    pub subscriber_class: SubscriberClass,
    /// Home operator, required iff the tenant is an MNO subscriber group.
    pub home_mno: Option<DomainId>,
    pub locations: BTreeSet<String>,
    pub external_connectivity_need: bool,
}

/// Latency requirement class of a communication service.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatencyClass {
    UltraLow,
    Normal,
}

/// Whether the service tolerates shared network resources.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsolationClass {
    Exclusive,
    Shared,
}

/// Reliability requirement class of a communication service.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReliabilityClass {
    High,
    Normal,
}

/// A tenant's communication-service requirement, the input to service
/// translation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ServiceRequest {
    pub id: RequestId,
    pub tenant: TenantId,
    pub latency_class: LatencyClass,
    pub isolation_class: IsolationClass,
    pub reliability_class: ReliabilityClass,
    pub wide_area: bool,
    /// Resource units demanded on each constituent subnet.
    pub demand: u32,
    pub locations: BTreeSet<String>,
}

//! Slice-instance planning and validation for local 5G operator networks.
//!
//! The crate models a micro-operator network as a [`NetworkPlan`] holding
//! domains, slice subnet instances (NSSIs), slice instances (NSIs),
//! tenants, service requests, peering agreements and a capacity ledger.
//! On top of the model it provides:
//!
//! - derived slice-type classification ([`classify`]): dedicated (Type 1),
//!   shared within the network (Type 2), shared with another operator's
//!   network (Type 3);
//! - a scenario rule engine ([`rules`], [`scenario`]) validating whole
//!   plans against the six deployment scenarios;
//! - an orchestrator ([`orchestrator`]) translating service requests into
//!   slice requirements, planning compositions and driving the lifecycle;
//! - federation operations ([`federation`]) for subnet import and
//!   slice-linking agreements with external MNOs;
//! - deterministic reports ([`report`]).

pub mod classify;
pub mod federation;
pub mod id;
pub mod lifecycle;
pub mod model;
pub mod orchestrator;
pub mod plan;
pub mod report;
pub mod resources;
pub mod rules;
pub mod scenario;

pub use classify::{classify, classify_nsi_type, validate_nsi_composition, Classification};
pub use id::{DomainId, NsiId, NssiId, RequestId, TenantId};
pub use lifecycle::LifecycleState;
pub use model::{
    Actor, Domain, DomainKind, InstantiationMode, IsolationClass, LatencyClass, Nsi, NsiType,
    Nssi, NssiKind, ReliabilityClass, ServiceRequest, SubscriberClass, Tenant,
};
pub use orchestrator::{
    draft_nsi, instantiate, plan_nsi, transition, translate_service, Orchestrator, PlanDelta,
    SliceRequirement, TypeConstraint,
};
pub use plan::NetworkPlan;
pub use report::{scenario_report, ScenarioReport};
pub use rules::{validate_network_plan, RuleViolation, Severity, ViolationCode};
pub use scenario::{DeploymentScenario, MalformedScenario, ScenarioKind};

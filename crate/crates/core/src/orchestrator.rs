//! Service orchestration: translate requests to slice requirements, plan
//! slice compositions, apply them and drive the lifecycle.
//!
//! Planning has two modes. `plan_nsi` is the adaptive planner: it follows
//! the reuse-or-create strategy but only accepts a composition that keeps
//! the whole plan violation-free for the scenario, falling back from reuse
//! to creation (and to federation, when the requirement permits it) until
//! a legal composition is found. `draft_nsi` is the mechanical variant used
//! when replaying a recorded history: it applies the same strategy on
//! structural eligibility alone and lets validation report whatever the
//! result violates.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::classify_nsi_type;
use crate::federation::{self, FederationError, PeeringAgreement, ServiceBinding};
use crate::id::{DomainId, NsiId, NssiId, RequestId};
use crate::lifecycle::{is_legal_transition, LifecycleState};
use crate::model::{
    Actor, InstantiationMode, IsolationClass, LatencyClass, Nsi, NsiType, Nssi, NssiKind,
    ServiceRequest, SubscriberClass, Tenant,
};
use crate::plan::NetworkPlan;
use crate::rules::validate_network_plan;
use crate::scenario::{DeploymentScenario, MalformedScenario};

// ---------------------------------------------------------------------
// Requirements
// ---------------------------------------------------------------------

/// Constraint on the derived type of the slice to be planned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TypeConstraint {
    Exactly(NsiType),
    AtMost(NsiType),
}

impl TypeConstraint {
    pub fn satisfies(self, ty: NsiType) -> bool {
        match self {
            TypeConstraint::Exactly(want) => ty == want,
            TypeConstraint::AtMost(max) => ty <= max,
        }
    }

    pub fn permits(self, ty: NsiType) -> bool {
        self.satisfies(ty)
    }
}

impl std::fmt::Display for TypeConstraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TypeConstraint::Exactly(t) => write!(f, "exactly {t}"),
            TypeConstraint::AtMost(t) => write!(f, "at most {t}"),
        }
    }
}

/// Units demanded per constituent kind. Demand applies uniformly today;
/// the split is kept explicit in the requirement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerKindDemand {
    pub an: u32,
    pub cn: u32,
}

impl PerKindDemand {
    pub fn of(&self, kind: NssiKind) -> u32 {
        match kind {
            NssiKind::An => self.an,
            NssiKind::Cn => self.cn,
        }
    }
}

/// Slice requirements derived from one service request.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceRequirement {
    pub service: RequestId,
    pub required_type: TypeConstraint,
    pub needs_foreign: bool,
    pub per_kind_demand: PerKindDemand,
    pub locations: BTreeSet<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TranslateError {
    #[error("request `{0}` pairs exclusive requirements with wide-area access; a dedicated slice cannot span another operator's network")]
    ContradictoryRequirement(RequestId),
}

/// Deterministic mapping from a service request to slice requirements:
/// ultra-low latency or exclusive isolation demands a dedicated Type 1
/// slice; wide-area services need a foreign constituent and may go up to
/// Type 3; everything else may share within the network (at most Type 2).
pub fn translate_service(request: &ServiceRequest) -> Result<SliceRequirement, TranslateError> {
    let dedicated = request.isolation_class == IsolationClass::Exclusive
        || request.latency_class == LatencyClass::UltraLow;
    if dedicated && request.wide_area {
        return Err(TranslateError::ContradictoryRequirement(request.id.clone()));
    }
    let (required_type, needs_foreign) = if dedicated {
        (TypeConstraint::Exactly(NsiType::Type1), false)
    } else if request.wide_area {
        (TypeConstraint::AtMost(NsiType::Type3), true)
    } else {
        (TypeConstraint::AtMost(NsiType::Type2), false)
    };
    Ok(SliceRequirement {
        service: request.id.clone(),
        required_type,
        needs_foreign,
        per_kind_demand: PerKindDemand {
            an: request.demand,
            cn: request.demand,
        },
        locations: request.locations.clone(),
    })
}

// ---------------------------------------------------------------------
// Plan deltas
// ---------------------------------------------------------------------

/// The changes planning proposes: new subnets, reused subnets, the new
/// slice and its reservations. Valid only against the plan version it was
/// computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanDelta {
    pub base_version: u64,
    pub created_nssis: Vec<Nssi>,
    pub reused_nssis: Vec<NssiId>,
    pub created_nsi: Nsi,
    pub reservations: Vec<(NssiId, u32)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlanNsiError {
    #[error("request `{0}` is not registered in the plan")]
    UnknownRequest(RequestId),
    #[error(transparent)]
    MalformedScenario(#[from] MalformedScenario),
    #[error("the plan already violates the scenario rules: {0}")]
    InvalidBasePlan(String),
    #[error("the scenario does not permit slices shared with another operator's network")]
    ScenarioForbidsFederation,
    #[error("a foreign constituent is needed but no peered MNO exports any subnet")]
    NoPeeredMno,
    #[error("all eligible foreign subnets lack residual capacity for {0} units")]
    ForeignCapacityExhausted(u32),
    #[error("no legal composition exists: {0}")]
    CompositionUnsatisfiable(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstantiateError {
    #[error("delta was computed from plan version {delta}, but the plan is at version {plan}")]
    StalePlanVersion { delta: u64, plan: u64 },
    #[error("reservation is no longer satisfiable: {0}")]
    CapacityRace(String),
    #[error("delta conflicts with the current plan state: {0}")]
    Conflict(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransitionError {
    #[error("slice `{0}` is not in the plan")]
    UnknownNsi(NsiId),
    #[error("illegal lifecycle transition {from} -> {to}")]
    IllegalTransition {
        from: LifecycleState,
        to: LifecycleState,
    },
    #[error("{actor} may not operate slice `{nsi}` managed by {manager}")]
    WrongActor {
        nsi: NsiId,
        actor: Actor,
        manager: Actor,
    },
}

// ---------------------------------------------------------------------
// Candidate machinery
// ---------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
enum Slot {
    Reuse(NssiId),
    Create,
    Foreign(NssiId),
}

fn location_compatible(nssi: &Nssi, locations: &BTreeSet<String>) -> bool {
    match &nssi.location {
        None => true,
        Some(l) => locations.len() == 1 && locations.contains(l),
    }
}

fn created_location(locations: &BTreeSet<String>) -> Option<String> {
    if locations.len() == 1 {
        locations.iter().next().cloned()
    } else {
        None
    }
}

/// Locally owned, sharable, location-compatible subnets of the kind with
/// enough residual capacity, ascending by id.
fn reuse_candidates(
    plan: &NetworkPlan,
    kind: NssiKind,
    demand: u32,
    locations: &BTreeSet<String>,
) -> Vec<NssiId> {
    plan.nssis()
        .filter(|n| {
            n.kind == kind
                && n.sharable
                && n.owner == *plan.micro_operator_id()
                && location_compatible(n, locations)
                && plan.residual(&n.id) >= demand
        })
        .map(|n| n.id.clone())
        .collect()
}

/// Exported foreign subnets in selection order: the tenant's home-MNO
/// exports first (for subscriber groups), then the rest, each ascending by
/// id. No capacity filter.
fn foreign_candidates(plan: &NetworkPlan, tenant: &Tenant) -> Vec<NssiId> {
    let exports = federation::eligible_foreign_exports(plan);
    match (&tenant.home_mno, tenant.subscriber_class) {
        (Some(home), SubscriberClass::MnoSubscriberGroup) => {
            let (own, other): (Vec<NssiId>, Vec<NssiId>) = exports
                .into_iter()
                .partition(|id| plan.nssi(id).map(|n| &n.owner == home).unwrap_or(false));
            own.into_iter().chain(other).collect()
        }
        _ => exports,
    }
}

fn build_delta(
    plan: &NetworkPlan,
    request: &ServiceRequest,
    requirement: &SliceRequirement,
    an_slot: &Slot,
    cn_slot: &Slot,
    sharable_created: bool,
) -> PlanDelta {
    let mut created = Vec::new();
    let mut reused = Vec::new();
    let mut resolve = |slot: &Slot, kind: NssiKind| -> NssiId {
        match slot {
            Slot::Reuse(id) | Slot::Foreign(id) => {
                reused.push(id.clone());
                id.clone()
            }
            Slot::Create => {
                let id = plan.free_nssi_id(&format!("{kind}-{}", request.id));
                created.push(Nssi {
                    id: id.clone(),
                    kind,
                    owner: plan.micro_operator_id().clone(),
                    sharable: sharable_created,
                    capacity: requirement.per_kind_demand.of(kind),
                    location: created_location(&requirement.locations),
                    nf_labels: BTreeSet::new(),
                });
                id
            }
        }
    };
    let an_id = resolve(an_slot, NssiKind::An);
    let cn_id = resolve(cn_slot, NssiKind::Cn);
    let nsi_id = plan.free_nsi_id(&format!("nsi-{}", request.id));
    let reservations = vec![
        (an_id.clone(), requirement.per_kind_demand.an),
        (cn_id.clone(), requirement.per_kind_demand.cn),
    ];
    PlanDelta {
        base_version: plan.version(),
        created_nssis: created,
        reused_nssis: reused,
        created_nsi: Nsi::new(
            nsi_id,
            request.tenant.clone(),
            vec![an_id, cn_id],
            InstantiationMode::Request,
        ),
        reservations,
    }
}

/// All (an, cn) slot assignments in preference order: reuse lowest-id
/// first, creation last, optionally with one foreign subnet filling its
/// kind's slot.
fn local_assignments(
    plan: &NetworkPlan,
    requirement: &SliceRequirement,
) -> Vec<(Slot, Slot)> {
    let ans: Vec<Slot> = reuse_candidates(
        plan,
        NssiKind::An,
        requirement.per_kind_demand.an,
        &requirement.locations,
    )
    .into_iter()
    .map(Slot::Reuse)
    .chain(std::iter::once(Slot::Create))
    .collect();
    let cns: Vec<Slot> = reuse_candidates(
        plan,
        NssiKind::Cn,
        requirement.per_kind_demand.cn,
        &requirement.locations,
    )
    .into_iter()
    .map(Slot::Reuse)
    .chain(std::iter::once(Slot::Create))
    .collect();
    let mut out = Vec::with_capacity(ans.len() * cns.len());
    for an in &ans {
        for cn in &cns {
            out.push((an.clone(), cn.clone()));
        }
    }
    out
}

/// Assignments that place one foreign export in its kind's slot, the other
/// kind filled locally.
fn foreign_assignments(
    plan: &NetworkPlan,
    requirement: &SliceRequirement,
    tenant: &Tenant,
) -> Vec<(Slot, Slot)> {
    let mut out = Vec::new();
    for foreign in foreign_candidates(plan, tenant) {
        let Some(nssi) = plan.nssi(&foreign) else {
            continue;
        };
        if plan.residual(&foreign) < requirement.per_kind_demand.of(nssi.kind) {
            continue;
        }
        let other_kind = nssi.kind.other();
        let locals: Vec<Slot> = reuse_candidates(
            plan,
            other_kind,
            requirement.per_kind_demand.of(other_kind),
            &requirement.locations,
        )
        .into_iter()
        .map(Slot::Reuse)
        .chain(std::iter::once(Slot::Create))
        .collect();
        for local in locals {
            let (an, cn) = match nssi.kind {
                NssiKind::An => (Slot::Foreign(foreign.clone()), local),
                NssiKind::Cn => (local, Slot::Foreign(foreign.clone())),
            };
            out.push((an, cn));
        }
    }
    out
}

// ---------------------------------------------------------------------
// Planning
// ---------------------------------------------------------------------

/// Adaptive planner: the first assignment in preference order whose
/// resulting plan validates cleanly and whose slice satisfies the
/// requirement's type constraint wins.
pub fn plan_nsi(
    plan: &NetworkPlan,
    requirement: &SliceRequirement,
    scenario: &DeploymentScenario,
) -> Result<PlanDelta, PlanNsiError> {
    let request = plan
        .request(&requirement.service)
        .ok_or_else(|| PlanNsiError::UnknownRequest(requirement.service.clone()))?;
    let tenant = plan
        .tenant(&request.tenant)
        .ok_or_else(|| PlanNsiError::UnknownRequest(requirement.service.clone()))?;

    match validate_network_plan(plan, scenario) {
        Ok(violations) if violations.is_empty() => {}
        Ok(violations) => {
            return Err(PlanNsiError::InvalidBasePlan(format!(
                "{} pre-existing violation(s)",
                violations.len()
            )))
        }
        Err(crate::rules::ValidateError::MalformedScenario(e)) => return Err(e.into()),
        Err(crate::rules::ValidateError::InconsistentPlan(e)) => {
            return Err(PlanNsiError::InvalidBasePlan(e.to_string()))
        }
    }

    let allowed = scenario
        .allowed_types_for_tenant(plan, tenant)
        .expect("scenario validated above");

    if requirement.needs_foreign {
        if !allowed.contains(&NsiType::Type3) {
            return Err(PlanNsiError::ScenarioForbidsFederation);
        }
        let exports = federation::eligible_foreign_exports(plan);
        if exports.is_empty() {
            return Err(PlanNsiError::NoPeeredMno);
        }
        let demand = requirement.per_kind_demand.an.max(requirement.per_kind_demand.cn);
        if !exports.iter().any(|id| {
            plan.nssi(id)
                .map(|n| plan.residual(id) >= requirement.per_kind_demand.of(n.kind))
                .unwrap_or(false)
        }) {
            return Err(PlanNsiError::ForeignCapacityExhausted(demand));
        }
    }

    let dedicated = requirement.required_type == TypeConstraint::Exactly(NsiType::Type1);
    let mut assignments: Vec<(Slot, Slot, bool)> = Vec::new();
    if dedicated {
        assignments.push((Slot::Create, Slot::Create, false));
    } else if requirement.needs_foreign {
        for (an, cn) in foreign_assignments(plan, requirement, tenant) {
            assignments.push((an, cn, true));
        }
    } else {
        for (an, cn) in local_assignments(plan, requirement) {
            assignments.push((an, cn, true));
        }
        // Local composition may be scenario-illegal even though the
        // requirement is satisfiable with a foreign constituent; fall back
        // to federation when the requirement permits Type 3.
        if requirement.required_type.permits(NsiType::Type3)
            && allowed.contains(&NsiType::Type3)
        {
            for (an, cn) in foreign_assignments(plan, requirement, tenant) {
                assignments.push((an, cn, true));
            }
        }
    }

    for (an, cn, sharable) in assignments {
        let delta = build_delta(plan, request, requirement, &an, &cn, sharable);
        if delta_keeps_plan_legal(plan, scenario, &delta, requirement.required_type) {
            return Ok(delta);
        }
    }
    Err(PlanNsiError::CompositionUnsatisfiable(format!(
        "no assignment satisfies `{}` for request `{}` under the scenario rules",
        requirement.required_type, requirement.service
    )))
}

/// Mechanical planner for replaying recorded histories: reuse the
/// lowest-id structurally eligible subnet per kind (or create), take the
/// first foreign export with capacity when one is needed, and perform no
/// scenario-legality simulation.
pub fn draft_nsi(
    plan: &NetworkPlan,
    requirement: &SliceRequirement,
) -> Result<PlanDelta, PlanNsiError> {
    let request = plan
        .request(&requirement.service)
        .ok_or_else(|| PlanNsiError::UnknownRequest(requirement.service.clone()))?;
    let tenant = plan
        .tenant(&request.tenant)
        .ok_or_else(|| PlanNsiError::UnknownRequest(requirement.service.clone()))?;

    if requirement.required_type == TypeConstraint::Exactly(NsiType::Type1) {
        return Ok(build_delta(
            plan,
            request,
            requirement,
            &Slot::Create,
            &Slot::Create,
            false,
        ));
    }

    let pick_local = |kind: NssiKind| -> Slot {
        reuse_candidates(
            plan,
            kind,
            requirement.per_kind_demand.of(kind),
            &requirement.locations,
        )
        .into_iter()
        .next()
        .map(Slot::Reuse)
        .unwrap_or(Slot::Create)
    };

    let (an, cn) = if requirement.needs_foreign {
        let candidates = foreign_candidates(plan, tenant);
        if candidates.is_empty() {
            return Err(PlanNsiError::NoPeeredMno);
        }
        let foreign = candidates
            .iter()
            .find(|id| {
                plan.nssi(id)
                    .map(|n| plan.residual(id) >= requirement.per_kind_demand.of(n.kind))
                    .unwrap_or(false)
            })
            .ok_or_else(|| {
                PlanNsiError::ForeignCapacityExhausted(
                    requirement
                        .per_kind_demand
                        .an
                        .max(requirement.per_kind_demand.cn),
                )
            })?;
        let kind = plan.nssi(foreign).expect("candidate resolves").kind;
        match kind {
            NssiKind::An => (Slot::Foreign(foreign.clone()), pick_local(NssiKind::Cn)),
            NssiKind::Cn => (pick_local(NssiKind::An), Slot::Foreign(foreign.clone())),
        }
    } else {
        (pick_local(NssiKind::An), pick_local(NssiKind::Cn))
    };
    Ok(build_delta(plan, request, requirement, &an, &cn, true))
}

fn delta_keeps_plan_legal(
    plan: &NetworkPlan,
    scenario: &DeploymentScenario,
    delta: &PlanDelta,
    constraint: TypeConstraint,
) -> bool {
    let mut sim = plan.clone();
    if apply_delta(&mut sim, delta, InstantiationMode::Request).is_err() {
        return false;
    }
    let Ok(violations) = validate_network_plan(&sim, scenario) else {
        return false;
    };
    if !violations.is_empty() {
        return false;
    }
    match classify_nsi_type(&sim, &delta.created_nsi.id) {
        Ok(ty) => constraint.satisfies(ty),
        Err(_) => false,
    }
}

// ---------------------------------------------------------------------
// Application
// ---------------------------------------------------------------------

/// Apply a delta atomically: all checks run before any mutation. The new
/// slice enters Planned, managed per the instantiation mode.
pub fn instantiate(
    plan: &mut NetworkPlan,
    delta: &PlanDelta,
    mode: InstantiationMode,
) -> Result<NsiId, InstantiateError> {
    if delta.base_version != plan.version() {
        return Err(InstantiateError::StalePlanVersion {
            delta: delta.base_version,
            plan: plan.version(),
        });
    }
    apply_delta(plan, delta, mode)
}

fn apply_delta(
    plan: &mut NetworkPlan,
    delta: &PlanDelta,
    mode: InstantiationMode,
) -> Result<NsiId, InstantiateError> {
    for created in &delta.created_nssis {
        if plan.nssi(&created.id).is_some() {
            return Err(InstantiateError::Conflict(format!(
                "subnet id `{}` is already taken",
                created.id
            )));
        }
    }
    if plan.nsi(&delta.created_nsi.id).is_some() {
        return Err(InstantiateError::Conflict(format!(
            "slice id `{}` is already taken",
            delta.created_nsi.id
        )));
    }
    if plan.tenant(&delta.created_nsi.tenant).is_none() {
        return Err(InstantiateError::Conflict(format!(
            "tenant `{}` is not registered",
            delta.created_nsi.tenant
        )));
    }
    for reused in &delta.reused_nssis {
        if plan.nssi(reused).is_none() {
            return Err(InstantiateError::Conflict(format!(
                "reused subnet `{reused}` is not in the plan"
            )));
        }
    }
    // Reservation feasibility, accumulated per subnet across the delta.
    let mut wanted: BTreeMap<&NssiId, u32> = BTreeMap::new();
    for (nssi, units) in &delta.reservations {
        if *units == 0 {
            return Err(InstantiateError::Conflict(
                "zero-unit reservation".to_string(),
            ));
        }
        *wanted.entry(nssi).or_default() += units;
    }
    let capacity_of = |id: &NssiId| -> Option<u32> {
        plan.nssi(id)
            .map(|n| n.capacity)
            .or_else(|| {
                delta
                    .created_nssis
                    .iter()
                    .find(|c| c.id == *id)
                    .map(|c| c.capacity)
            })
    };
    for (nssi, units) in &wanted {
        let capacity = capacity_of(nssi).ok_or_else(|| {
            InstantiateError::Conflict(format!("reservation on unknown subnet `{nssi}`"))
        })?;
        let residual = plan.ledger().residual(nssi, capacity);
        if *units > residual {
            return Err(InstantiateError::CapacityRace(format!(
                "subnet `{nssi}` has residual {residual}, delta needs {units}"
            )));
        }
    }

    for created in &delta.created_nssis {
        plan.insert_nssi_internal(created.clone());
    }
    let mut nsi = delta.created_nsi.clone();
    nsi.lifecycle = LifecycleState::Planned;
    nsi.mode = mode;
    let id = nsi.id.clone();
    plan.insert_nsi_internal(nsi);
    for (nssi, units) in &delta.reservations {
        let capacity = capacity_of_applied(plan, nssi);
        plan.ledger_mut()
            .admit(nssi, &id, *units, capacity)
            .expect("feasibility checked above");
    }
    plan.bump();
    Ok(id)
}

fn capacity_of_applied(plan: &NetworkPlan, id: &NssiId) -> u32 {
    plan.nssi(id).map(|n| n.capacity).unwrap_or(0)
}

/// Move a slice through its lifecycle. Decommissioning releases every
/// reservation the slice holds and removes its non-sharable subnets;
/// shared subnets persist and surviving co-sharers reclassify on the next
/// read.
pub fn transition(
    plan: &mut NetworkPlan,
    nsi_id: &NsiId,
    target: LifecycleState,
    actor: Actor,
) -> Result<(), TransitionError> {
    let nsi = plan
        .nsi(nsi_id)
        .ok_or_else(|| TransitionError::UnknownNsi(nsi_id.clone()))?;
    let manager = nsi.manager();
    let authorized =
        actor == manager || (actor == Actor::Operator && target == LifecycleState::Decommissioned);
    if !authorized {
        return Err(TransitionError::WrongActor {
            nsi: nsi_id.clone(),
            actor,
            manager,
        });
    }
    let from = nsi.lifecycle;
    if !is_legal_transition(from, target) {
        return Err(TransitionError::IllegalTransition { from, to: target });
    }
    if target == LifecycleState::Decommissioned {
        plan.ledger_mut().release_all_for_nsi(nsi_id);
        let exclusive: Vec<NssiId> = plan
            .nsi(nsi_id)
            .expect("checked above")
            .constituents()
            .iter()
            .filter(|c| plan.nssi(c).map(|n| !n.sharable).unwrap_or(false))
            .cloned()
            .collect();
        for nssi in exclusive {
            plan.remove_nssi_internal(&nssi);
        }
    }
    plan.nsi_mut(nsi_id).expect("checked above").lifecycle = target;
    plan.bump();
    Ok(())
}

// ---------------------------------------------------------------------
// The orchestrator
// ---------------------------------------------------------------------

#[derive(Debug, Error)]
pub enum OrchestrationError {
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Plan(#[from] PlanNsiError),
    #[error(transparent)]
    Instantiate(#[from] InstantiateError),
    #[error(transparent)]
    Transition(#[from] TransitionError),
    #[error(transparent)]
    Federation(#[from] FederationError),
    #[error("request `{0}` is not registered in the plan")]
    UnknownRequest(RequestId),
}

/// Owns the single mutable plan; all mutations are serialized through one
/// writer. Reads take cloned snapshots stamped with the version counter.
#[derive(Clone, Debug)]
pub struct Orchestrator {
    plan: NetworkPlan,
    scenario: DeploymentScenario,
}

impl Orchestrator {
    pub fn new(plan: NetworkPlan, scenario: DeploymentScenario) -> Self {
        Self { plan, scenario }
    }

    pub fn plan(&self) -> &NetworkPlan {
        &self.plan
    }

    pub fn scenario(&self) -> &DeploymentScenario {
        &self.scenario
    }

    /// An immutable snapshot of the current plan state.
    pub fn snapshot(&self) -> NetworkPlan {
        self.plan.clone()
    }

    fn requirement_for(&self, request_id: &RequestId) -> Result<SliceRequirement, OrchestrationError> {
        let request = self
            .plan
            .request(request_id)
            .ok_or_else(|| OrchestrationError::UnknownRequest(request_id.clone()))?;
        Ok(translate_service(request)?)
    }

    /// Translate, plan adaptively and instantiate one request.
    pub fn submit(
        &mut self,
        request_id: &RequestId,
        mode: InstantiationMode,
    ) -> Result<NsiId, OrchestrationError> {
        let requirement = self.requirement_for(request_id)?;
        let delta = plan_nsi(&self.plan, &requirement, &self.scenario)?;
        Ok(instantiate(&mut self.plan, &delta, mode)?)
    }

    /// Translate, draft mechanically and instantiate one request (replay
    /// path for recorded histories).
    pub fn replay_instantiate(
        &mut self,
        request_id: &RequestId,
        mode: InstantiationMode,
    ) -> Result<NsiId, OrchestrationError> {
        let requirement = self.requirement_for(request_id)?;
        let delta = draft_nsi(&self.plan, &requirement)?;
        Ok(instantiate(&mut self.plan, &delta, mode)?)
    }

    pub fn transition(
        &mut self,
        nsi: &NsiId,
        target: LifecycleState,
        actor: Actor,
    ) -> Result<(), OrchestrationError> {
        Ok(transition(&mut self.plan, nsi, target, actor)?)
    }

    pub fn register_peer(&mut self, agreement: PeeringAgreement) -> Result<(), OrchestrationError> {
        Ok(federation::register_peer(&mut self.plan, agreement)?)
    }

    pub fn declare_foreign_nsi(
        &mut self,
        id: NsiId,
        owner: DomainId,
    ) -> Result<(), OrchestrationError> {
        Ok(federation::declare_foreign_nsi(&mut self.plan, id, owner)?)
    }

    pub fn import_foreign_nssi(
        &mut self,
        nsi: &NsiId,
        foreign: &NssiId,
        units: u32,
    ) -> Result<(), OrchestrationError> {
        Ok(federation::import_foreign_nssi(
            &mut self.plan,
            &self.scenario,
            nsi,
            foreign,
            units,
        )?)
    }

    pub fn bind_service(&mut self, binding: ServiceBinding) -> Result<(), OrchestrationError> {
        Ok(federation::bind_service(
            &mut self.plan,
            &self.scenario,
            binding,
        )?)
    }
}

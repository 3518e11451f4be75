//! The plan document: a strict JSON object describing one network, its
//! scenario, and the service history to execute over it.
//!
//! Loading is two-pass: after parsing, every reference to a declared
//! entity is resolved and all unknown references are reported together,
//! each with the source position of its first occurrence. References to
//! slice ids generated during replay (`transition`, `bind.local`) are
//! resolved at execution time.

use std::collections::BTreeSet;
use std::fmt;

use serde::Deserialize;
use sliceplan::federation::{Direction, PeeringAgreement, ServiceBinding};
use sliceplan::model::{
    Actor, Domain, DomainKind, InstantiationMode, IsolationClass, LatencyClass, Nssi, NssiKind,
    ReliabilityClass, ServiceRequest, SubscriberClass, Tenant,
};
use sliceplan::orchestrator::Orchestrator;
use sliceplan::{DeploymentScenario, LifecycleState, NetworkPlan, ScenarioKind};
use thiserror::Error;

pub const SCHEMA_VERSION: u64 = 1;

// ---------------------------------------------------------------------
// Raw document shape
// ---------------------------------------------------------------------

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanDocument {
    pub schema_version: u64,
    pub scenario: RawScenario,
    #[serde(default)]
    pub domains: Vec<RawDomain>,
    #[serde(default)]
    pub nssis: Vec<RawNssi>,
    #[serde(default)]
    pub tenants: Vec<RawTenant>,
    #[serde(default)]
    pub agreements: Vec<RawAgreement>,
    #[serde(default)]
    pub requests: Vec<RawRequest>,
    /// When present, the recorded history to replay; when absent, requests
    /// are auto-planned in document order.
    #[serde(default)]
    pub events: Option<Vec<RawEvent>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    pub kind: ScenarioKind,
    /// Defaults by kind (single-site closed: false, multi-site closed:
    /// true) or, for open/mixed kinds, to whether tenants span more than
    /// one location.
    #[serde(default)]
    pub multi_location: Option<bool>,
    /// Defaults to the number of distinct MNOs with agreements.
    #[serde(default)]
    pub peered_mnos: Option<u32>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDomain {
    pub id: String,
    pub kind: DomainKind,
    #[serde(default)]
    pub name: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawNssi {
    pub id: String,
    pub kind: NssiKind,
    pub owner: String,
    #[serde(default)]
    pub sharable: bool,
    pub capacity: u32,
    #[serde(default)]
    pub location: Option<String>,
    #[serde(default)]
    pub nf_labels: BTreeSet<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTenant {
    pub id: String,
    pub class: SubscriberClass,
    #[serde(default)]
    pub home_mno: Option<String>,
    pub locations: BTreeSet<String>,
    #[serde(default)]
    pub external_connectivity: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAgreement {
    pub mno: String,
    pub direction: Direction,
    #[serde(default)]
    pub exports: BTreeSet<String>,
    #[serde(default)]
    pub local_exports: BTreeSet<String>,
    /// Opaque foreign slice instances this agreement makes bindable.
    #[serde(default)]
    pub foreign_nsis: BTreeSet<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRequest {
    pub id: String,
    pub tenant: String,
    #[serde(default = "default_latency")]
    pub latency: LatencyClass,
    #[serde(default = "default_isolation")]
    pub isolation: IsolationClass,
    #[serde(default = "default_reliability")]
    pub reliability: ReliabilityClass,
    #[serde(default)]
    pub wide_area: bool,
    pub demand: u32,
    /// Defaults to the tenant's locations.
    #[serde(default)]
    pub locations: Option<BTreeSet<String>>,
    /// Instantiation mode used when auto-planning; defaults to request
    /// mode (tenant-managed).
    #[serde(default)]
    pub mode: Option<InstantiationMode>,
}

fn default_latency() -> LatencyClass {
    LatencyClass::Normal
}

fn default_isolation() -> IsolationClass {
    IsolationClass::Shared
}

fn default_reliability() -> ReliabilityClass {
    ReliabilityClass::Normal
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum RawEvent {
    Instantiate {
        request: String,
        #[serde(default)]
        mode: Option<InstantiationMode>,
    },
    Transition {
        nsi: String,
        target: LifecycleState,
        actor: Actor,
    },
    Bind {
        service: String,
        #[serde(default)]
        local: BTreeSet<String>,
        #[serde(default)]
        foreign: BTreeSet<String>,
    },
}

// ---------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------

/// Source position of a reference, 1-based. Zero means "not located".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct At {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for At {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            Ok(())
        } else {
            write!(f, " at line {}, column {}", self.line, self.column)
        }
    }
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported schema version {found} (this tool reads version {SCHEMA_VERSION})")]
    UnsupportedSchemaVersion { found: String },
    #[error("unknown {kind} `{id}`{at}")]
    UnknownReference {
        kind: &'static str,
        id: String,
        at: At,
    },
    #[error("{0}")]
    Semantic(String),
}

fn syntax_error(err: &serde_json::Error) -> DocumentError {
    DocumentError::Syntax {
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    }
}

/// Line/column of the first occurrence of the quoted identifier. For an
/// undeclared id every occurrence is a reference, so the first one is a
/// true position.
fn locate(text: &str, id: &str) -> At {
    let needle = format!("\"{id}\"");
    match text.find(&needle) {
        Some(offset) => {
            let prefix = &text[..offset];
            let line = prefix.bytes().filter(|b| *b == b'\n').count() + 1;
            let column = offset - prefix.rfind('\n').map(|p| p + 1).unwrap_or(0) + 1;
            At { line, column }
        }
        None => At { line: 0, column: 0 },
    }
}

// ---------------------------------------------------------------------
// Parsing and reference resolution
// ---------------------------------------------------------------------

/// Parse a document and statically resolve every reference to a declared
/// entity. All reference errors are collected, not just the first.
pub fn parse_document(text: &str) -> Result<PlanDocument, Vec<DocumentError>> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| vec![syntax_error(&e)])?;
    match value.get("schema_version") {
        None => {
            return Err(vec![DocumentError::Semantic(
                "document has no schema_version".to_string(),
            )])
        }
        Some(v) if v.as_u64() != Some(SCHEMA_VERSION) => {
            return Err(vec![DocumentError::UnsupportedSchemaVersion {
                found: v.to_string(),
            }])
        }
        Some(_) => {}
    }
    let document: PlanDocument =
        serde_json::from_str(text).map_err(|e| vec![syntax_error(&e)])?;
    let errors = check_references(&document, text);
    if errors.is_empty() {
        Ok(document)
    } else {
        Err(errors)
    }
}

fn check_references(doc: &PlanDocument, text: &str) -> Vec<DocumentError> {
    let domains: BTreeSet<&str> = doc.domains.iter().map(|d| d.id.as_str()).collect();
    let nssis: BTreeSet<&str> = doc.nssis.iter().map(|n| n.id.as_str()).collect();
    let tenants: BTreeSet<&str> = doc.tenants.iter().map(|t| t.id.as_str()).collect();
    let requests: BTreeSet<&str> = doc.requests.iter().map(|r| r.id.as_str()).collect();
    let foreign: BTreeSet<&str> = doc
        .agreements
        .iter()
        .flat_map(|a| a.foreign_nsis.iter().map(|f| f.as_str()))
        .collect();

    let mut errors = Vec::new();
    let mut check = |set: &BTreeSet<&str>, kind: &'static str, id: &str| {
        if !set.contains(id) {
            errors.push(DocumentError::UnknownReference {
                kind,
                id: id.to_string(),
                at: locate(text, id),
            });
        }
    };

    for nssi in &doc.nssis {
        check(&domains, "domain", &nssi.owner);
    }
    for tenant in &doc.tenants {
        if let Some(home) = &tenant.home_mno {
            check(&domains, "domain", home);
        }
    }
    for agreement in &doc.agreements {
        check(&domains, "domain", &agreement.mno);
        for nssi in agreement.exports.iter().chain(&agreement.local_exports) {
            check(&nssis, "nssi", nssi);
        }
    }
    for request in &doc.requests {
        check(&tenants, "tenant", &request.tenant);
    }
    for event in doc.events.as_deref().unwrap_or(&[]) {
        match event {
            RawEvent::Instantiate { request, .. } => check(&requests, "request", request),
            RawEvent::Transition { .. } => {} // slice ids exist only at replay time
            RawEvent::Bind {
                service,
                foreign: foreign_refs,
                ..
            } => {
                check(&requests, "request", service);
                for f in foreign_refs {
                    check(&foreign, "foreign nsi", f);
                }
            }
        }
    }
    errors
}

// ---------------------------------------------------------------------
// State construction
// ---------------------------------------------------------------------

/// Build the initial network plan and the scenario from a parsed document.
pub fn build_state(
    doc: &PlanDocument,
) -> Result<(NetworkPlan, DeploymentScenario), DocumentError> {
    let mut micro_operators = doc
        .domains
        .iter()
        .filter(|d| d.kind == DomainKind::MicroOperator);
    let uo = micro_operators
        .next()
        .ok_or_else(|| DocumentError::Semantic("no micro-operator domain declared".to_string()))?;
    if micro_operators.next().is_some() {
        return Err(DocumentError::Semantic(
            "more than one micro-operator domain declared".to_string(),
        ));
    }
    let semantic = |e: &dyn fmt::Display| DocumentError::Semantic(e.to_string());

    let mut plan = NetworkPlan::new(Domain::micro_operator(
        uo.id.as_str(),
        uo.name.clone().unwrap_or_else(|| uo.id.clone()),
    ))
    .map_err(|e| semantic(&e))?;
    for domain in doc.domains.iter().filter(|d| d.kind == DomainKind::Mno) {
        plan.declare_domain(Domain::mno(
            domain.id.as_str(),
            domain.name.clone().unwrap_or_else(|| domain.id.clone()),
        ))
        .map_err(|e| semantic(&e))?;
    }
    for nssi in &doc.nssis {
        plan.declare_nssi(Nssi {
            id: nssi.id.as_str().into(),
            kind: nssi.kind,
            owner: nssi.owner.as_str().into(),
            sharable: nssi.sharable,
            capacity: nssi.capacity,
            location: nssi.location.clone(),
            nf_labels: nssi.nf_labels.clone(),
        })
        .map_err(|e| semantic(&e))?;
    }
    for tenant in &doc.tenants {
        plan.declare_tenant(Tenant {
            id: tenant.id.as_str().into(),
            subscriber_class: tenant.class,
            home_mno: tenant.home_mno.as_ref().map(|h| h.as_str().into()),
            locations: tenant.locations.clone(),
            external_connectivity_need: tenant.external_connectivity,
        })
        .map_err(|e| semantic(&e))?;
    }
    for request in &doc.requests {
        let locations = match &request.locations {
            Some(locations) => locations.clone(),
            None => plan
                .tenant(&request.tenant.as_str().into())
                .map(|t| t.locations.clone())
                .unwrap_or_default(),
        };
        plan.declare_request(ServiceRequest {
            id: request.id.as_str().into(),
            tenant: request.tenant.as_str().into(),
            latency_class: request.latency,
            isolation_class: request.isolation,
            reliability_class: request.reliability,
            wide_area: request.wide_area,
            demand: request.demand,
            locations,
        })
        .map_err(|e| semantic(&e))?;
    }
    for agreement in &doc.agreements {
        sliceplan::federation::register_peer(
            &mut plan,
            PeeringAgreement {
                mno: agreement.mno.as_str().into(),
                direction: agreement.direction,
                exported_nssis: agreement.exports.iter().map(|s| s.as_str().into()).collect(),
                exported_local_nssis: agreement
                    .local_exports
                    .iter()
                    .map(|s| s.as_str().into())
                    .collect(),
            },
        )
        .map_err(|e| semantic(&e))?;
        for foreign in &agreement.foreign_nsis {
            sliceplan::federation::declare_foreign_nsi(
                &mut plan,
                foreign.as_str().into(),
                agreement.mno.as_str().into(),
            )
            .map_err(|e| semantic(&e))?;
        }
    }

    let multi_location = doc.scenario.multi_location.unwrap_or(match doc.scenario.kind {
        ScenarioKind::ClosedA => false,
        ScenarioKind::ClosedB => true,
        _ => {
            let locations: BTreeSet<&String> =
                plan.tenants().flat_map(|t| t.locations.iter()).collect();
            locations.len() > 1
        }
    });
    let peered = doc
        .scenario
        .peered_mnos
        .unwrap_or(plan.peered_mno_count() as u32);
    let scenario = DeploymentScenario::new(doc.scenario.kind, peered, multi_location)
        .map_err(|e| semantic(&e))?;
    Ok((plan, scenario))
}

// ---------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------

/// Replay the document's recorded events strictly; the first failing event
/// aborts. Returns one trace line per applied event.
pub fn run_events(
    orchestrator: &mut Orchestrator,
    doc: &PlanDocument,
) -> Result<Vec<String>, DocumentError> {
    let mut trace = Vec::new();
    for (index, event) in doc.events.as_deref().unwrap_or(&[]).iter().enumerate() {
        let fail = |e: &dyn fmt::Display| {
            DocumentError::Semantic(format!("event {} failed: {e}", index + 1))
        };
        match event {
            RawEvent::Instantiate { request, mode } => {
                let mode = resolve_mode(doc, request, *mode);
                let id = orchestrator
                    .replay_instantiate(&request.as_str().into(), mode)
                    .map_err(|e| fail(&e))?;
                trace.push(format!("instantiate {request} -> {id} ({})", mode_name(mode)));
            }
            RawEvent::Transition { nsi, target, actor } => {
                orchestrator
                    .transition(&nsi.as_str().into(), *target, *actor)
                    .map_err(|e| fail(&e))?;
                trace.push(format!("transition {nsi} -> {target} (by {actor})"));
            }
            RawEvent::Bind {
                service,
                local,
                foreign,
            } => {
                orchestrator
                    .bind_service(ServiceBinding {
                        service: service.as_str().into(),
                        local_nsis: local.iter().map(|s| s.as_str().into()).collect(),
                        foreign_nsis: foreign.iter().map(|s| s.as_str().into()).collect(),
                    })
                    .map_err(|e| fail(&e))?;
                trace.push(format!(
                    "bind {service}: local [{}], foreign [{}]",
                    join(local),
                    join(foreign)
                ));
            }
        }
    }
    Ok(trace)
}

/// Auto-plan every request in document order. In strict mode the first
/// planning failure aborts; otherwise failures are collected and the rest
/// of the requests still get planned.
pub fn auto_plan(
    orchestrator: &mut Orchestrator,
    doc: &PlanDocument,
    strict: bool,
) -> Result<(Vec<String>, Vec<String>), DocumentError> {
    let mut trace = Vec::new();
    let mut failures = Vec::new();
    for request in &doc.requests {
        let mode = request.mode.unwrap_or(InstantiationMode::Request);
        match orchestrator.submit(&request.id.as_str().into(), mode) {
            Ok(id) => trace.push(format!(
                "planned {} -> {id} ({})",
                request.id,
                mode_name(mode)
            )),
            Err(e) => {
                let message = format!("planning {} failed: {e}", request.id);
                if strict {
                    return Err(DocumentError::Semantic(message));
                }
                failures.push(message);
            }
        }
    }
    Ok((trace, failures))
}

fn resolve_mode(
    doc: &PlanDocument,
    request: &str,
    event_mode: Option<InstantiationMode>,
) -> InstantiationMode {
    event_mode
        .or_else(|| {
            doc.requests
                .iter()
                .find(|r| r.id == request)
                .and_then(|r| r.mode)
        })
        .unwrap_or(InstantiationMode::Request)
}

fn mode_name(mode: InstantiationMode) -> &'static str {
    match mode {
        InstantiationMode::Request => "request mode",
        InstantiationMode::Predefined => "pre-defined mode",
    }
}

fn join(set: &BTreeSet<String>) -> String {
    set.iter().cloned().collect::<Vec<_>>().join(", ")
}

//! Shared proptest strategies: randomly shaped plans for oracle-equivalence
//! testing. Plans built here go through the public declaration API only and
//! may freely violate composition and scenario rules; that is the point.

use std::collections::BTreeSet;

use proptest::prelude::*;
use sliceplan::model::{
    Domain, InstantiationMode, Nsi, Nssi, NssiKind, SubscriberClass, Tenant,
};
use sliceplan::{NetworkPlan, NssiId};

#[derive(Clone, Debug)]
pub struct NssiSpec {
    pub is_an: bool,
    pub owner: usize,
    pub sharable: bool,
    pub capacity: u32,
}

#[derive(Clone, Debug)]
pub struct TenantSpec {
    pub class: usize,
    pub external: bool,
}

#[derive(Clone, Debug)]
pub struct NsiSpec {
    pub tenant: usize,
    pub an_pick: usize,
    pub cn_pick: usize,
    pub extras: Vec<usize>,
    pub linked_foreign: bool,
}

fn arb_nssi_spec() -> impl Strategy<Value = NssiSpec> {
    (any::<bool>(), 0usize..3, any::<bool>(), 0u32..=8).prop_map(
        |(is_an, owner, sharable, capacity)| NssiSpec {
            is_an,
            owner,
            sharable,
            capacity,
        },
    )
}

fn arb_tenant_spec() -> impl Strategy<Value = TenantSpec> {
    (0usize..3, any::<bool>()).prop_map(|(class, external)| TenantSpec { class, external })
}

fn arb_nsi_spec() -> impl Strategy<Value = NsiSpec> {
    (
        0usize..4,
        any::<usize>(),
        any::<usize>(),
        prop::collection::vec(any::<usize>(), 0..3),
        prop::bool::weighted(0.15),
    )
        .prop_map(|(tenant, an_pick, cn_pick, extras, linked_foreign)| NsiSpec {
            tenant,
            an_pick,
            cn_pick,
            extras,
            linked_foreign,
        })
}

/// A random plan: up to 2 MNO domains, 2..=10 subnets, 1..=3 tenants,
/// 0..=6 slices whose constituents are random subnet picks (one AN and one
/// CN when available, plus extras), occasionally linked to an opaque
/// foreign slice.
pub fn arb_plan() -> impl Strategy<Value = NetworkPlan> {
    (
        0usize..=2,
        prop::collection::vec(arb_nssi_spec(), 2..=10),
        prop::collection::vec(arb_tenant_spec(), 1..=3),
        prop::collection::vec(arb_nsi_spec(), 0..=6),
    )
        .prop_map(|(n_mnos, nssis, tenants, nsis)| build_plan(n_mnos, &nssis, &tenants, &nsis))
}

pub fn build_plan(
    n_mnos: usize,
    nssi_specs: &[NssiSpec],
    tenant_specs: &[TenantSpec],
    nsi_specs: &[NsiSpec],
) -> NetworkPlan {
    let mut plan = NetworkPlan::new(Domain::micro_operator("uo", "Micro Operator")).unwrap();
    for i in 0..n_mnos {
        plan.declare_domain(Domain::mno(format!("mno{}", i + 1), format!("MNO {}", i + 1)))
            .unwrap();
    }
    for (i, spec) in nssi_specs.iter().enumerate() {
        let owner = if n_mnos == 0 || spec.owner == 0 {
            "uo".to_string()
        } else {
            format!("mno{}", (spec.owner - 1) % n_mnos + 1)
        };
        plan.declare_nssi(Nssi {
            id: format!("s{i:02}").into(),
            kind: if spec.is_an { NssiKind::An } else { NssiKind::Cn },
            owner: owner.into(),
            sharable: spec.sharable,
            capacity: spec.capacity,
            location: None,
            nf_labels: BTreeSet::new(),
        })
        .unwrap();
    }
    let mut have_public = false;
    for (i, spec) in tenant_specs.iter().enumerate() {
        let class = match spec.class {
            1 if n_mnos > 0 => SubscriberClass::MnoSubscriberGroup,
            2 if !have_public => {
                have_public = true;
                SubscriberClass::GeneralPublic
            }
            _ => SubscriberClass::PrivateTenant,
        };
        plan.declare_tenant(Tenant {
            id: format!("t{i}").into(),
            subscriber_class: class,
            home_mno: (class == SubscriberClass::MnoSubscriberGroup).then(|| "mno1".into()),
            locations: ["site".to_string()].into(),
            external_connectivity_need: spec.external,
        })
        .unwrap();
    }
    let ans: Vec<NssiId> = plan
        .nssis()
        .filter(|n| n.kind == NssiKind::An)
        .map(|n| n.id.clone())
        .collect();
    let cns: Vec<NssiId> = plan
        .nssis()
        .filter(|n| n.kind == NssiKind::Cn)
        .map(|n| n.id.clone())
        .collect();
    let all: Vec<NssiId> = plan.nssis().map(|n| n.id.clone()).collect();
    for (i, spec) in nsi_specs.iter().enumerate() {
        let mut constituents: Vec<NssiId> = Vec::new();
        if !ans.is_empty() {
            constituents.push(ans[spec.an_pick % ans.len()].clone());
        }
        if !cns.is_empty() {
            constituents.push(cns[spec.cn_pick % cns.len()].clone());
        }
        for extra in &spec.extras {
            let candidate = all[extra % all.len()].clone();
            if !constituents.contains(&candidate) {
                constituents.push(candidate);
            }
        }
        let tenant = format!("t{}", spec.tenant % tenant_specs.len());
        let mut nsi = Nsi::new(
            format!("nsi{i:02}"),
            tenant,
            constituents,
            InstantiationMode::Request,
        );
        if spec.linked_foreign {
            nsi = nsi.with_linked_foreign([format!("ext-slice-{i}").into()]);
        }
        plan.declare_nsi(nsi).unwrap();
    }
    plan
}

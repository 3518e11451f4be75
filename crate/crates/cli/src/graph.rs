//! DOT export of the sharing graph: slices, subnets and domains, with
//! foreign-owned nodes clustered by their domain.

use std::fmt::Write;

use sliceplan::model::DomainKind;
use sliceplan::{classify_nsi_type, NetworkPlan};

pub fn render_dot(plan: &NetworkPlan) -> String {
    let mut out = String::new();
    writeln!(out, "digraph sliceplan {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [fontname=\"Helvetica\"];").unwrap();

    // Micro-operator cluster first, then MNO clusters in id order.
    let uo = plan.micro_operator_id().clone();
    let mut domains: Vec<_> = plan.domains().collect();
    domains.sort_by_key(|d| (d.kind != DomainKind::MicroOperator, d.id.clone()));
    for domain in domains {
        let foreign = domain.id != uo;
        writeln!(out, "  subgraph \"cluster_{}\" {{", domain.id).unwrap();
        writeln!(
            out,
            "    label=\"{} ({})\";",
            domain.name,
            match domain.kind {
                DomainKind::MicroOperator => "micro-operator",
                DomainKind::Mno => "mno",
            }
        )
        .unwrap();
        if foreign {
            writeln!(out, "    style=dashed;").unwrap();
        }
        for nssi in plan.nssis().filter(|n| n.owner == domain.id) {
            writeln!(
                out,
                "    \"nssi:{}\" [shape=ellipse,label=\"{}\\n{} {}/{}\"];",
                nssi.id,
                nssi.id,
                nssi.kind,
                plan.residual(&nssi.id),
                nssi.capacity
            )
            .unwrap();
        }
        if !foreign {
            for nsi in plan.live_nsis() {
                let ty = classify_nsi_type(plan, &nsi.id)
                    .map(|t| t.to_string())
                    .unwrap_or_else(|_| "-".to_string());
                writeln!(
                    out,
                    "    \"nsi:{}\" [shape=box,label=\"{}\\n{} {}\"];",
                    nsi.id, nsi.id, nsi.tenant, ty
                )
                .unwrap();
            }
        } else {
            for (id, owner) in plan.foreign_nsis() {
                if *owner == domain.id {
                    writeln!(
                        out,
                        "    \"nsi:{id}\" [shape=box,style=dashed,label=\"{id}\\nforeign slice\"];"
                    )
                    .unwrap();
                }
            }
        }
        writeln!(out, "  }}").unwrap();
    }

    for nsi in plan.live_nsis() {
        for constituent in nsi.constituents() {
            writeln!(out, "  \"nsi:{}\" -> \"nssi:{constituent}\";", nsi.id).unwrap();
        }
        for linked in nsi.linked_foreign_nsis() {
            writeln!(
                out,
                "  \"nsi:{}\" -> \"nsi:{linked}\" [style=dashed,label=\"linked\"];",
                nsi.id
            )
            .unwrap();
        }
    }
    writeln!(out, "}}").unwrap();
    out
}

//! Plain-text rendering of scenario reports.

use std::fmt::Write;

use sliceplan::rules::Severity;
use sliceplan::ScenarioReport;

pub fn render_text(report: &ScenarioReport) -> String {
    let mut out = String::new();
    let scenario = &report.scenario;
    writeln!(out, "scenario: {}", scenario.kind).unwrap();
    writeln!(out, "  multi-location: {}", scenario.multi_location).unwrap();
    writeln!(out, "  peered mnos: {}", scenario.peered_mnos).unwrap();
    let allowed: Vec<String> = scenario.allowed_types.iter().map(|t| t.to_string()).collect();
    writeln!(out, "  allowed types: {}", allowed.join(", ")).unwrap();
    writeln!(out, "  rule: {}", scenario.matrix_row).unwrap();

    out.push('\n');
    if report.nsis.is_empty() {
        writeln!(out, "slices: none").unwrap();
    } else {
        writeln!(out, "slices:").unwrap();
        for nsi in &report.nsis {
            let ty = nsi
                .nsi_type
                .map(|t| t.to_string())
                .unwrap_or_else(|| "-".to_string());
            writeln!(
                out,
                "  {}  tenant={} type={} lifecycle={} manager={}{}",
                nsi.id,
                nsi.tenant,
                ty,
                nsi.lifecycle,
                nsi.manager,
                if nsi.locally_shared { " locally-shared" } else { "" },
            )
            .unwrap();
            for c in &nsi.constituents {
                writeln!(
                    out,
                    "      {} ({}, owner {}{})",
                    c.id,
                    c.kind,
                    c.owner,
                    if c.shared { ", shared" } else { "" }
                )
                .unwrap();
            }
            for linked in &nsi.linked_foreign_nsis {
                writeln!(out, "      linked foreign slice {linked}").unwrap();
            }
        }
    }
    if report.decommissioned_nsis > 0 {
        writeln!(out, "  ({} decommissioned)", report.decommissioned_nsis).unwrap();
    }

    out.push('\n');
    writeln!(out, "checks:").unwrap();
    for check in &report.checks {
        writeln!(
            out,
            "  [{}] {}{}",
            if check.passed { "pass" } else { "fail" },
            check.rule,
            if check.passed {
                String::new()
            } else {
                format!(" ({})", check.violations)
            }
        )
        .unwrap();
    }

    out.push('\n');
    if report.violations.is_empty() {
        writeln!(out, "violations: none").unwrap();
    } else {
        writeln!(out, "violations:").unwrap();
        for v in &report.violations {
            let severity = match v.severity {
                Severity::Error => "error",
                Severity::Warning => "warning",
            };
            writeln!(out, "  [{severity}] {} {}: {}", v.code, v.subject, v.detail).unwrap();
            writeln!(out, "          anchor: {}", v.anchor).unwrap();
        }
    }

    out.push('\n');
    if report.capacity.is_empty() {
        writeln!(out, "capacity: none").unwrap();
    } else {
        writeln!(out, "capacity:").unwrap();
        for entry in &report.capacity {
            writeln!(
                out,
                "  {}  kind={} owner={} capacity={} reserved={} residual={}",
                entry.nssi, entry.kind, entry.owner, entry.capacity, entry.reserved, entry.residual
            )
            .unwrap();
        }
    }

    out.push('\n');
    if report.services.is_empty() {
        writeln!(out, "services: none").unwrap();
    } else {
        writeln!(out, "services:").unwrap();
        for service in &report.services {
            let local: Vec<String> = service.local_nsis.iter().map(|n| n.to_string()).collect();
            let foreign: Vec<String> =
                service.foreign_nsis.iter().map(|n| n.to_string()).collect();
            writeln!(
                out,
                "  {}  tenant={} local=[{}] foreign=[{}]",
                service.service,
                service.tenant,
                local.join(", "),
                foreign.join(", ")
            )
            .unwrap();
        }
    }

    out.push('\n');
    let errors = report.error_count();
    let warnings = report.violations.len() - errors;
    if report.violations.is_empty() {
        writeln!(out, "result: ok (0 violations)").unwrap();
    } else {
        writeln!(out, "result: {errors} error(s), {warnings} warning(s)").unwrap();
    }
    out
}

//! Slice type classification and per-slice composition validation.
//!
//! A slice classifies Type 3 as soon as it touches another operator's
//! network (a foreign-owned constituent or a linked foreign slice),
//! Type 2 when it shares a constituent with another slice in the same
//! network, and Type 1 otherwise. External exposure dominates local
//! sharing; the `locally_shared` flag preserves the sharing information
//! for Type 3 slices.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::id::{NsiId, NssiId};
use crate::model::{NsiType, NssiKind};
use crate::plan::NetworkPlan;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("slice `{0}` is not in the plan")]
    UnknownNsi(NsiId),
    #[error("slice `{nsi}` references unknown subnet `{nssi}`")]
    DanglingConstituent { nsi: NsiId, nssi: NssiId },
}

/// Classification result: the derived type plus whether any locally owned
/// constituent is shared with another live slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub nsi_type: NsiType,
    pub locally_shared: bool,
}

/// Classify a slice from plan state. Pure: identical plans yield identical
/// results.
pub fn classify(plan: &NetworkPlan, nsi_id: &NsiId) -> Result<Classification, ClassifyError> {
    let nsi = plan
        .nsi(nsi_id)
        .ok_or_else(|| ClassifyError::UnknownNsi(nsi_id.clone()))?;
    let uo = plan.micro_operator_id();
    let mut foreign = !nsi.linked_foreign_nsis().is_empty();
    let mut locally_shared = false;
    for constituent in nsi.constituents() {
        let nssi = plan
            .nssi(constituent)
            .ok_or_else(|| ClassifyError::DanglingConstituent {
                nsi: nsi_id.clone(),
                nssi: constituent.clone(),
            })?;
        if nssi.owner != *uo {
            foreign = true;
        } else if !locally_shared {
            locally_shared = plan
                .live_nsis()
                .any(|other| other.id != nsi.id && other.constituents().contains(constituent));
        }
    }
    let nsi_type = if foreign {
        NsiType::Type3
    } else if locally_shared {
        NsiType::Type2
    } else {
        NsiType::Type1
    };
    Ok(Classification {
        nsi_type,
        locally_shared,
    })
}

/// The slice configuration type alone.
pub fn classify_nsi_type(plan: &NetworkPlan, nsi_id: &NsiId) -> Result<NsiType, ClassifyError> {
    classify(plan, nsi_id).map(|c| c.nsi_type)
}

/// A violation of the slice composition rules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompositionViolation {
    /// Fewer than two constituents.
    TooFewConstituents { found: usize },
    /// No constituent of the given kind.
    MissingKind { kind: NssiKind },
    /// A constituent id that does not resolve.
    DanglingConstituent { nssi: NssiId },
    /// A non-sharable subnet referenced by more than one live slice.
    NonSharableShared { nssi: NssiId, also_in: NsiId },
}

impl std::fmt::Display for CompositionViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CompositionViolation::TooFewConstituents { found } => {
                write!(f, "slice has {found} constituent(s); at least 2 required")
            }
            CompositionViolation::MissingKind { kind } => {
                write!(f, "slice has no {kind} constituent")
            }
            CompositionViolation::DanglingConstituent { nssi } => {
                write!(f, "constituent `{nssi}` does not resolve")
            }
            CompositionViolation::NonSharableShared { nssi, also_in } => {
                write!(
                    f,
                    "non-sharable subnet `{nssi}` is also a constituent of `{also_in}`"
                )
            }
        }
    }
}

/// Check one slice against the composition rules: at least two
/// constituents, both access and core kinds present, all references
/// resolving, and no non-sharable subnet referenced by another slice.
pub fn validate_nsi_composition(
    plan: &NetworkPlan,
    nsi_id: &NsiId,
) -> Result<Vec<CompositionViolation>, ClassifyError> {
    let nsi = plan
        .nsi(nsi_id)
        .ok_or_else(|| ClassifyError::UnknownNsi(nsi_id.clone()))?;
    let mut violations = Vec::new();
    if nsi.constituents().len() < 2 {
        violations.push(CompositionViolation::TooFewConstituents {
            found: nsi.constituents().len(),
        });
    }
    let mut has_an = false;
    let mut has_cn = false;
    for constituent in nsi.constituents() {
        match plan.nssi(constituent) {
            None => violations.push(CompositionViolation::DanglingConstituent {
                nssi: constituent.clone(),
            }),
            Some(nssi) => {
                match nssi.kind {
                    NssiKind::An => has_an = true,
                    NssiKind::Cn => has_cn = true,
                }
                if !nssi.sharable {
                    if let Some(other) = plan
                        .live_nsis()
                        .find(|o| o.id != nsi.id && o.constituents().contains(constituent))
                    {
                        violations.push(CompositionViolation::NonSharableShared {
                            nssi: constituent.clone(),
                            also_in: other.id.clone(),
                        });
                    }
                }
            }
        }
    }
    if !has_an {
        violations.push(CompositionViolation::MissingKind { kind: NssiKind::An });
    }
    if !has_cn {
        violations.push(CompositionViolation::MissingKind { kind: NssiKind::Cn });
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::model::{Domain, InstantiationMode, Nsi, Nssi};

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

    fn tenant(id: &str) -> crate::model::Tenant {
        crate::model::Tenant {
            id: id.into(),
            subscriber_class: crate::model::SubscriberClass::PrivateTenant,
            home_mno: None,
            locations: ["site".to_string()].into(),
            external_connectivity_need: false,
        }
    }

    fn plan_with(nssis: Vec<Nssi>, nsis: Vec<(&str, Vec<&str>)>) -> NetworkPlan {
        let mut plan = NetworkPlan::new(Domain::micro_operator("uo", "Campus")).unwrap();
        plan.declare_domain(Domain::mno("mno1", "MNO One")).unwrap();
        plan.declare_tenant(tenant("t1")).unwrap();
        for n in nssis {
            plan.declare_nssi(n).unwrap();
        }
        for (id, constituents) in nsis {
            plan.declare_nsi(Nsi::new(
                id,
                "t1",
                constituents.into_iter().map(Into::into).collect(),
                InstantiationMode::Request,
            ))
            .unwrap();
        }
        plan
    }

    #[test]
    fn dedicated_pair_is_type1() {
        let plan = plan_with(
            vec![
                nssi("an1", NssiKind::An, "uo", false),
                nssi("cn1", NssiKind::Cn, "uo", false),
            ],
            vec![("x", vec!["an1", "cn1"])],
        );
        let c = classify(&plan, &"x".into()).unwrap();
        assert_eq!(c.nsi_type, NsiType::Type1);
        assert!(!c.locally_shared);
    }

    #[test]
    fn shared_core_subnet_makes_both_type2() {
        let plan = plan_with(
            vec![
                nssi("an1", NssiKind::An, "uo", false),
                nssi("an2", NssiKind::An, "uo", false),
                nssi("cns", NssiKind::Cn, "uo", true),
            ],
            vec![("x", vec!["an1", "cns"]), ("y", vec!["an2", "cns"])],
        );
        assert_eq!(classify_nsi_type(&plan, &"x".into()).unwrap(), NsiType::Type2);
        assert_eq!(classify_nsi_type(&plan, &"y".into()).unwrap(), NsiType::Type2);
    }

    #[test]
    fn foreign_constituent_makes_type3() {
        let plan = plan_with(
            vec![
                nssi("an1", NssiKind::An, "uo", false),
                nssi("cnm", NssiKind::Cn, "mno1", true),
            ],
            vec![("x", vec!["an1", "cnm"])],
        );
        assert_eq!(classify_nsi_type(&plan, &"x".into()).unwrap(), NsiType::Type3);
    }

    #[test]
    fn single_slice_plan_is_type1() {
        let plan = plan_with(
            vec![
                nssi("an1", NssiKind::An, "uo", true),
                nssi("cn1", NssiKind::Cn, "uo", true),
            ],
            vec![("only", vec!["an1", "cn1"])],
        );
        assert_eq!(
            classify_nsi_type(&plan, &"only".into()).unwrap(),
            NsiType::Type1
        );
    }

    #[test]
    fn foreign_dominates_local_sharing_and_flag_survives() {
        let plan = plan_with(
            vec![
                nssi("ans", NssiKind::An, "uo", true),
                nssi("an2", NssiKind::An, "uo", false),
                nssi("cn1", NssiKind::Cn, "uo", false),
                nssi("cnm", NssiKind::Cn, "mno1", true),
            ],
            vec![("x", vec!["ans", "cnm"]), ("y", vec!["ans", "cn1"])],
        );
        let c = classify(&plan, &"x".into()).unwrap();
        assert_eq!(c.nsi_type, NsiType::Type3);
        assert!(c.locally_shared);
    }

    #[test]
    fn linked_foreign_slice_makes_type3() {
        let mut plan = plan_with(
            vec![
                nssi("an1", NssiKind::An, "uo", false),
                nssi("cn1", NssiKind::Cn, "uo", false),
            ],
            vec![("x", vec!["an1", "cn1"])],
        );
        plan.nsi_mut(&"x".into())
            .unwrap()
            .link_foreign("mno-slice".into());
        assert_eq!(classify_nsi_type(&plan, &"x".into()).unwrap(), NsiType::Type3);
    }

    #[test]
    fn unknown_nsi_and_dangling_constituent_are_errors() {
        let plan = plan_with(
            vec![
                nssi("an1", NssiKind::An, "uo", false),
                nssi("cn1", NssiKind::Cn, "uo", false),
            ],
            vec![("x", vec!["an1", "cn1"])],
        );
        assert_eq!(
            classify(&plan, &"nope".into()).unwrap_err(),
            ClassifyError::UnknownNsi("nope".into())
        );
    }

    #[test]
    fn composition_minimal_pair_is_clean() {
        let plan = plan_with(
            vec![
                nssi("an1", NssiKind::An, "uo", false),
                nssi("cn1", NssiKind::Cn, "uo", false),
            ],
            vec![("x", vec!["an1", "cn1"])],
        );
        assert!(validate_nsi_composition(&plan, &"x".into())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn composition_single_an_reports_two_violations() {
        let plan = plan_with(
            vec![nssi("an1", NssiKind::An, "uo", false)],
            vec![("x", vec!["an1"])],
        );
        let violations = validate_nsi_composition(&plan, &"x".into()).unwrap();
        assert_eq!(
            violations,
            vec![
                CompositionViolation::TooFewConstituents { found: 1 },
                CompositionViolation::MissingKind { kind: NssiKind::Cn },
            ]
        );
    }

    // Brute-force reference count over the whole plan confirms the
    // non-sharable check: `cn1` is referenced twice.
    #[test]
    fn composition_non_sharable_shared_detected() {
        let plan = plan_with(
            vec![
                nssi("an1", NssiKind::An, "uo", false),
                nssi("an2", NssiKind::An, "uo", false),
                nssi("cn1", NssiKind::Cn, "uo", false),
            ],
            vec![("x", vec!["an1", "cn1"]), ("y", vec!["an2", "cn1"])],
        );
        let reference_count = plan
            .nsis()
            .filter(|n| n.constituents().contains(&"cn1".into()))
            .count();
        assert_eq!(reference_count, 2);
        let violations = validate_nsi_composition(&plan, &"x".into()).unwrap();
        assert_eq!(
            violations,
            vec![CompositionViolation::NonSharableShared {
                nssi: "cn1".into(),
                also_in: "y".into(),
            }]
        );
    }
}

//! Slice lifecycle state machine.
//!
//! A minimal linear machine: Planned -> Instantiated -> Active ->
//! Decommissioned, with an early exit Instantiated -> Decommissioned.
//! Everything else is rejected.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LifecycleState {
    Planned,
    Instantiated,
    Active,
    Decommissioned,
}

impl LifecycleState {
    pub const ALL: [LifecycleState; 4] = [
        LifecycleState::Planned,
        LifecycleState::Instantiated,
        LifecycleState::Active,
        LifecycleState::Decommissioned,
    ];
}

impl std::fmt::Display for LifecycleState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LifecycleState::Planned => f.write_str("planned"),
            LifecycleState::Instantiated => f.write_str("instantiated"),
            LifecycleState::Active => f.write_str("active"),
            LifecycleState::Decommissioned => f.write_str("decommissioned"),
        }
    }
}

/// True for exactly the four legal transitions.
pub fn is_legal_transition(from: LifecycleState, to: LifecycleState) -> bool {
    use LifecycleState::*;
    matches!(
        (from, to),
        (Planned, Instantiated)
            | (Instantiated, Active)
            | (Instantiated, Decommissioned)
            | (Active, Decommissioned)
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exactly_four_legal_transitions() {
        let mut legal = Vec::new();
        for from in LifecycleState::ALL {
            for to in LifecycleState::ALL {
                if is_legal_transition(from, to) {
                    legal.push((from, to));
                }
            }
        }
        assert_eq!(
            legal,
            vec![
                (LifecycleState::Planned, LifecycleState::Instantiated),
                (LifecycleState::Instantiated, LifecycleState::Active),
                (LifecycleState::Instantiated, LifecycleState::Decommissioned),
                (LifecycleState::Active, LifecycleState::Decommissioned),
            ]
        );
    }

    #[test]
    fn no_backward_edges() {
        assert!(!is_legal_transition(
            LifecycleState::Active,
            LifecycleState::Instantiated
        ));
        assert!(!is_legal_transition(
            LifecycleState::Decommissioned,
            LifecycleState::Planned
        ));
    }
}

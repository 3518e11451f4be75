//! Capacity ledger for subnet instances.
//!
//! Tracks one reservation per (subnet, slice) pair in integer units.
//! Residual capacity is always capacity minus the sum of live reservations;
//! admission refuses anything that would make a residual negative.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::id::{NsiId, NssiId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LedgerError {
    #[error("insufficient capacity on `{nssi}`: requested {requested}, residual {residual}")]
    InsufficientCapacity {
        nssi: NssiId,
        requested: u32,
        residual: u32,
    },
    #[error("reservation for `{nssi}` by `{nsi}` already exists")]
    DuplicateReservation { nssi: NssiId, nsi: NsiId },
    #[error("no reservation for `{nssi}` by `{nsi}`")]
    NoSuchReservation { nssi: NssiId, nsi: NsiId },
    #[error("reservation units must be positive")]
    ZeroUnits,
}

/// A single live reservation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reservation {
    pub nssi: NssiId,
    pub nsi: NsiId,
    pub units: u32,
}

/// All live reservations, keyed by (subnet, slice).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReservationLedger {
    entries: BTreeMap<(NssiId, NsiId), u32>,
}

impl ReservationLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Units currently reserved on a subnet across all slices.
    pub fn reserved(&self, nssi: &NssiId) -> u32 {
        self.entries
            .iter()
            .filter(|((n, _), _)| n == nssi)
            .map(|(_, units)| units)
            .sum()
    }

    /// Capacity left on a subnet of the given total capacity, saturating at
    /// zero if the ledger somehow overcommitted.
    pub fn residual(&self, nssi: &NssiId, capacity: u32) -> u32 {
        capacity.saturating_sub(self.reserved(nssi))
    }

    pub fn units_for(&self, nssi: &NssiId, nsi: &NsiId) -> Option<u32> {
        self.entries.get(&(nssi.clone(), nsi.clone())).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = Reservation> + '_ {
        self.entries.iter().map(|((nssi, nsi), units)| Reservation {
            nssi: nssi.clone(),
            nsi: nsi.clone(),
            units: *units,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Record a reservation if the residual allows it.
    pub fn admit(
        &mut self,
        nssi: &NssiId,
        nsi: &NsiId,
        units: u32,
        capacity: u32,
    ) -> Result<(), LedgerError> {
        if units == 0 {
            return Err(LedgerError::ZeroUnits);
        }
        let key = (nssi.clone(), nsi.clone());
        if self.entries.contains_key(&key) {
            return Err(LedgerError::DuplicateReservation {
                nssi: nssi.clone(),
                nsi: nsi.clone(),
            });
        }
        let residual = self.residual(nssi, capacity);
        if units > residual {
            return Err(LedgerError::InsufficientCapacity {
                nssi: nssi.clone(),
                requested: units,
                residual,
            });
        }
        self.entries.insert(key, units);
        Ok(())
    }

    /// Remove a reservation, restoring its units exactly.
    pub fn release(&mut self, nssi: &NssiId, nsi: &NsiId) -> Result<u32, LedgerError> {
        self.entries
            .remove(&(nssi.clone(), nsi.clone()))
            .ok_or_else(|| LedgerError::NoSuchReservation {
                nssi: nssi.clone(),
                nsi: nsi.clone(),
            })
    }

    /// Release every reservation held by a slice. Returns the freed pairs.
    pub fn release_all_for_nsi(&mut self, nsi: &NsiId) -> Vec<(NssiId, u32)> {
        let keys: Vec<(NssiId, NsiId)> = self
            .entries
            .keys()
            .filter(|(_, n)| n == nsi)
            .cloned()
            .collect();
        keys.into_iter()
            .map(|key| {
                let units = self.entries.remove(&key).expect("key just listed");
                (key.0, units)
            })
            .collect()
    }

    /// Drop every reservation touching a subnet (used when an exclusive
    /// subnet is removed together with its slice).
    pub(crate) fn forget_nssi(&mut self, nssi: &NssiId) {
        self.entries.retain(|(n, _), _| n != nssi);
    }
}

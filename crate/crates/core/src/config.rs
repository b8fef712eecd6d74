use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::ffield::DEFAULT_FIELD_CAP;

/// Size limits shared by the constructions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Limits {
    /// Largest field order `p^f`.
    pub field_cap: u64,
    /// Largest enumerated group.
    pub group_cap: usize,
    /// Largest point table for an action.
    pub point_cap: usize,
    /// An action precomputes its full `|G| x |Omega|` image table when the product is at
    /// most this many entries; otherwise images are computed per point on first use.
    pub table_budget: u64,
    /// Directory for the enumerated-group cache; `None` disables it.
    pub cache_dir: Option<PathBuf>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            field_cap: DEFAULT_FIELD_CAP,
            group_cap: 5_000_000,
            point_cap: 5_000_000,
            table_budget: 1 << 30,
            cache_dir: None,
        }
    }
}

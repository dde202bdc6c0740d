use serde::{Deserialize, Serialize};

use crate::error::{KefError, Result};

/// Work limits shared by every solver. Exceeding one yields
/// [`KefError::Capacity`], never a partial answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Largest graph handed to the exact α / μ solvers.
    pub solver_n: usize,
    /// Largest graph for which Ω(G) and the critical independent sets are enumerated.
    pub enum_n: usize,
    /// Largest graph for which every maximum matching is listed.
    pub matching_enum_n: usize,
    /// DFS steps allowed to the simple-cycle census.
    pub cycle_work: usize,
    /// Number of critical independent sets kept before giving up.
    pub crit_count: usize,
    /// Number of maximum matchings kept before giving up.
    pub matching_count: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            solver_n: 40,
            enum_n: 24,
            matching_enum_n: 20,
            cycle_work: 10_000_000,
            crit_count: 1_000_000,
            matching_count: 1_000_000,
        }
    }
}

impl Caps {
    /// Overlay a partial JSON object (e.g. `{"enum_n": 18}`) on top of `self`.
    pub fn overlay_json(self, json: &str) -> Result<Caps> {
        let mut value = serde_json::to_value(self).expect("caps serialize");
        let patch: serde_json::Value =
            serde_json::from_str(json).map_err(|e| KefError::input(format!("caps json: {e}")))?;
        let serde_json::Value::Object(patch) = patch else {
            return Err(KefError::input("caps json must be an object"));
        };
        let obj = value.as_object_mut().expect("caps is an object");
        for (k, v) in patch {
            if !obj.contains_key(&k) {
                return Err(KefError::input(format!("unknown cap `{k}`")));
            }
            obj.insert(k, v);
        }
        serde_json::from_value(value).map_err(|e| KefError::input(format!("caps json: {e}")))
    }

    pub(crate) fn check(&self, what: &'static str, limit: usize, actual: usize) -> Result<()> {
        if actual > limit {
            Err(KefError::Capacity { what, limit, actual })
        } else {
            Ok(())
        }
    }
}

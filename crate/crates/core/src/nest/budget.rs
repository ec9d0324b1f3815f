use serde::{Deserialize, Serialize};

/// Nest sizes needed to rule out large crossing-critical graphs with at most
/// `k` crossings and average degree at least `6 - r/n`.
///
/// `ell = 2.5k + 16` is kept as `ell_twice = 5k + 32`. The drawing nest of
/// size `t = 4k(ell + 1) + 1` is exactly what the pigeonhole over `ell`
/// crossings needs for a clean nest of size `4k + 1`; the triangulation
/// must supply `t_prime = t + 2 ell + r - 6` cycles before dummy-vertex
/// cycles are dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub k: u64,
    pub r: u64,
    pub ell_twice: u64,
    pub t: u64,
    pub t_prime: u64,
    pub clean_target: u64,
    pub clean_input: u64,
}

impl Budget {
    /// `ell` as a float; exact because `2 ell` is an integer.
    pub fn ell(&self) -> f64 {
        self.ell_twice as f64 / 2.0
    }

    /// `ell` as an exact decimal string.
    pub fn ell_string(&self) -> String {
        if self.ell_twice % 2 == 0 {
            format!("{}", self.ell_twice / 2)
        } else {
            format!("{}.5", self.ell_twice / 2)
        }
    }
}

/// Input size for the clean-nest pigeonhole: a nest of
/// `(crossings + 1)(t - 1) + 1` cycles in a drawing with at most
/// `crossings` crossings contains a clean nest of `t` consecutive cycles.
pub fn clean_input_size(crossings: u64, t: u64) -> u64 {
    (crossings + 1) * (t.max(1) - 1) + 1
}

/// Nest size to ask of the filled planarization of a drawing with
/// `crossings` crossings so that `t` cycles avoid every dummy vertex:
/// `t + 2·crossings + r − 6`, never below `t`.
pub fn nest_target(t: u64, crossings: u64, r: u64) -> u64 {
    (t + 2 * crossings + r).saturating_sub(6).max(t)
}

pub fn parameter_budget(k: u64, r: u64) -> Budget {
    let ell_twice = 5 * k + 32;
    // 4k(ell + 1) + 1 = 2k(2 ell + 2) + 1
    let t = 2 * k * (ell_twice + 2) + 1;
    // t + 2 ell + r - 6; ell_twice >= 37 so no underflow
    let t_prime = t + ell_twice + r - 6;
    let clean_target = 4 * k + 1;
    // (ell + 1)(clean_target - 1) + 1 with ell halved out exactly
    let clean_input = (ell_twice + 2) * (clean_target - 1) / 2 + 1;
    Budget {
        k,
        r,
        ell_twice,
        t,
        t_prime,
        clean_target,
        clean_input,
    }
}

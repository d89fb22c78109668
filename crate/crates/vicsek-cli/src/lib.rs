//! IO, file formats, and the reporting layer on top of `vicsek-core`.
//!
//! Everything here is deterministic for fixed inputs: CSV rows carry exact
//! rational coordinates, JSON reports echo their configuration and seed,
//! and the SVG emitter formats through integer arithmetic so plots are
//! byte-stable.

pub mod csv;
pub mod report;
pub mod rng;
pub mod svg;

/// Default seed for randomized trials, echoed in every report ("VSC2" as
/// ASCII bytes).
pub const DEFAULT_SEED: u64 = 0x5653_4332;

/// Hard ceiling for the `VICSEK_LEVEL_CAP` override.
pub const LEVEL_CAP_MAX: u32 = 8;

/// Default maximum level for extend/plot/export and the verify `--level`.
pub const LEVEL_CAP_DEFAULT: u32 = 6;

/// The effective level cap: `VICSEK_LEVEL_CAP` clamped into
/// `0..=LEVEL_CAP_MAX`, or the default when unset or unparsable.
pub fn level_cap_from_env(var: Option<&str>) -> u32 {
    match var.and_then(|s| s.trim().parse::<u32>().ok()) {
        Some(v) => v.min(LEVEL_CAP_MAX),
        None => LEVEL_CAP_DEFAULT,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_cap_parsing() {
        assert_eq!(level_cap_from_env(None), LEVEL_CAP_DEFAULT);
        assert_eq!(level_cap_from_env(Some("3")), 3);
        assert_eq!(level_cap_from_env(Some("99")), LEVEL_CAP_MAX);
        assert_eq!(level_cap_from_env(Some("junk")), LEVEL_CAP_DEFAULT);
    }
}

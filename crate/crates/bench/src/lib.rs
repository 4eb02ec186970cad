//! Benchmark fixtures shared by the criterion targets.

/// Degrees timed for the series engine.
pub const SERIES_DEGREES: [usize; 3] = [8, 12, 16];

/// Points timed for the bound table, one inside and one near the boundary.
pub const BOUND_POINTS: [(f64, f64); 2] = [(0.5, 0.5), (0.527, 0.527)];

//! Shared inputs for the benchmarks.

use discordant::states::{random_state, teahouse_doubled_weights};
use discordant::{example_state, teahouse_ensemble, BipartiteState};

/// Named states spanning the supported sizes: 2x2, 2x3 and 3x3.
pub fn inputs() -> Vec<(&'static str, BipartiteState)> {
    vec![
        ("example_2x2", example_state(0.5, 0.5).unwrap()),
        ("random_2x3", random_state((2, 3), 6, 1).unwrap()),
        ("random_3x3", random_state((3, 3), 9, 2).unwrap()),
        ("teahouse_3x3", teahouse_ensemble(&teahouse_doubled_weights()).unwrap().density_matrix()),
    ]
}

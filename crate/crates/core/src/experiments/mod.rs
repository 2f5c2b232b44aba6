//! Scenario files, the sizing table and parameter sweeps.

mod grid;
mod scenario;
mod sweep;
mod table;

pub use grid::{parse_axis, parse_grid};
pub use scenario::{load_scenario, parse_scenario, Scenario, SPEED_OF_LIGHT};
pub use sweep::{
    convergence_samples, path_gain, received_with_clusters, run_sweep, throughput, worker_pool, write_csv, SweepKind,
    SweepResult,
};
pub use table::{
    format_table1, run_table1, table1_deployment, write_table1_csv, Table1Cell, TABLE1_METHODS, TABLE1_POSITIONS,
    TABLE1_SIZES,
};

//! Writes a trajectory CSV for the 3-cycle and reads it back.
//!
//! ```sh
//! cargo run --example trajectory_export -- /tmp/cycle.csv
//! ```

use realeep::fixtures;
use realeep::flow::{simulate_exact, uniform_times};
use realeep::io::{parse_trajectory_csv, write_trajectory_csv};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| std::env::temp_dir().join("cycle_trajectory.csv").display().to_string());
    let flow = simulate_exact(&fixtures::l2(), &fixtures::INITIAL_STATES, &uniform_times(10.0, 100)).unwrap();
    let csv = write_trajectory_csv(&flow);
    std::fs::write(&path, &csv).expect("output path is writable");
    let table = parse_trajectory_csv(&csv).unwrap();
    assert_eq!(table.states, flow.states);
    println!("wrote {} rows to {path}", table.times.len());
    println!("{}", csv.lines().next().unwrap());
}

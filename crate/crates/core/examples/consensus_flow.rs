//! The Laplacian flow on the 3-cycle and on the counterexample: the first
//! reaches the average, the second freezes two agents apart.

use realeep::fixtures;
use realeep::flow::{simulate_exact, simulate_rk4, uniform_times};
use realeep::Complex;

fn show(v: &[Complex]) -> String {
    let parts: Vec<String> = v.iter().map(|z| format!("{z:.5}")).collect();
    format!("[{}]", parts.join(", "))
}

fn main() {
    let x0 = fixtures::INITIAL_STATES;
    for (name, l) in [("3-cycle", fixtures::l2()), ("counterexample", fixtures::l3())] {
        let exact = simulate_exact(&l, &x0, &uniform_times(20.0, 40)).unwrap();
        let rk4 = simulate_rk4(&l, &x0, 1e-3, 20.0).unwrap();
        println!("{name}:");
        for k in (0..exact.times.len()).step_by(8) {
            println!("  t = {:>5.1}  disagreement {:.3e}", exact.times[k], exact.disagreement[k]);
        }
        println!("  consensus reached: {} at {:?}", exact.consensus_reached, exact.consensus_time);
        match &exact.predicted_limit {
            Some(limit) => println!("  predicted limit: {}", show(limit)),
            None => println!("  predicted limit: none (zero eigenvalue not simple)"),
        }
        println!("  final state: {}", show(exact.final_state()));
        let gap = exact
            .final_state()
            .iter()
            .zip(rk4.final_state())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        println!("  |exact - RK4| at t = 20: {gap:.2e}");
    }
}

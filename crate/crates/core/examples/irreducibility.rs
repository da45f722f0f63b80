//! Irreducibility through strong connectivity of the support digraph,
//! cross-checked with the permutation brute force.

use realeep::fixtures;
use realeep::graph::{build_laplacian, irreducible_bruteforce, is_irreducible};

fn main() {
    let graphs = [
        ("triangle", fixtures::example1_graph()),
        ("3-cycle", fixtures::example2_graph()),
        ("counterexample", fixtures::counterexample_graph()),
    ];
    for (name, g) in graphs {
        let b = build_laplacian(&g);
        let flags = b.flags();
        println!(
            "{name:>15}: irreducible {} (brute force {}), strongly connected {}, weakly connected {}, balanced {}",
            is_irreducible(b.laplacian()).unwrap(),
            irreducible_bruteforce(b.laplacian()).unwrap(),
            flags.strongly_connected,
            flags.weakly_connected,
            flags.weight_balanced,
        );
    }
}

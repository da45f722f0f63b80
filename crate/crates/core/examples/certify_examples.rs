//! Real EEP certificates for the bundled graphs under both shift rules.

use realeep::certify::{certify_laplacian_with, ShiftRule};
use realeep::fixtures;
use realeep::graph::build_laplacian;

fn main() {
    let graphs = [
        ("triangle", fixtures::example1_graph()),
        ("3-cycle", fixtures::example2_graph()),
        ("counterexample", fixtures::counterexample_graph()),
    ];
    for (name, g) in graphs {
        let bundle = build_laplacian(&g);
        for rule in [ShiftRule::CorrectedDominance, ShiftRule::PaperEq5] {
            let cert = certify_laplacian_with(&bundle, rule).unwrap();
            println!(
                "{name:>15} [{rule}]: {} d = {:?} class P {:?} t0 = {:?} k0 = {:?}",
                cert.verdict,
                cert.shift_d,
                cert.class_p.as_ref().map(|c| c.member),
                cert.exponential_onset_t0,
                cert.power_onset_k0,
            );
            for note in &cert.evidence_notes {
                println!("{:>18} {note}", "-");
            }
        }
    }
}

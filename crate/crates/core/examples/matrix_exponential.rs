//! `e^{−Lt}` by Padé scaling-and-squaring, checked against the truncated
//! Taylor series, and the real part watched as `t` grows.

use realeep::certify::real_part_positive;
use realeep::fixtures;
use realeep::linalg::{expm, expm_series_oracle};

fn main() {
    let minus_l1 = fixtures::l1().scale_real(-1.0);
    let pade = expm(&minus_l1).unwrap();
    let series = expm_series_oracle(&minus_l1, 200).unwrap();
    println!("e^(-L1) =\n{pade:.4?}");
    println!("|Padé - series|_F = {:.2e}", pade.sub(&series).frobenius_norm());

    for t in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let e = expm(&fixtures::l2().scale_real(-t)).unwrap();
        let min_re = e.as_slice().iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        println!("t = {t:>4}: min Re e^(-L2 t) = {min_re:+.5}  positive: {}", real_part_positive(&e));
    }
}

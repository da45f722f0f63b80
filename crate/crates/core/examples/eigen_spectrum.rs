//! Eigenvalues and eigenvectors of the three bundled Laplacians.
//!
//! ```sh
//! cargo run --example eigen_spectrum
//! ```

use realeep::fixtures;
use realeep::linalg::{eig, geometric_multiplicity, Complex};

fn main() {
    for (name, l) in [("L1", fixtures::l1()), ("L2", fixtures::l2()), ("L3", fixtures::l3())] {
        let s = eig(&l).expect("bundled Laplacians are well-formed");
        println!("{name}: max residual {:.1e}", s.max_residual());
        for (i, lambda) in s.eigenvalues.iter().enumerate() {
            let x: Vec<String> = s.right_vector(i).iter().map(|z| format!("{z:.4}")).collect();
            println!("  λ = {lambda:>22.6}  x = [{}]", x.join(", "));
        }
        let zero = geometric_multiplicity(&l, Complex::new(0.0, 0.0)).unwrap();
        println!("  algebraic multiplicity of 0: {}, geometric: {zero}", s.cluster_of(Complex::new(0.0, 0.0)).len());
    }
}

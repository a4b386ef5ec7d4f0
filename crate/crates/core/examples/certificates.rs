// Certificates accept a valid decomposition and reject a tampered one.

use coninv::certify::verify_decomposition;
use coninv::conisum::coninv_sum;
use coninv::gen;
use coninv::matcore::{Matrix, Tolerance, C64};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = Matrix::Floating(gen::random_complex(3, 1.0, &mut gen::rng(1)));
    let mut d = coninv_sum(&a)?;
    let tol = Tolerance::certify_default();
    println!("{}", verify_decomposition(&a, &d, tol).to_json());

    if let Matrix::Floating(k) = &mut d.summands[0] {
        k[(0, 0)] += C64::new(1e-3, 0.0);
    }
    let cert = verify_decomposition(&a, &d, tol);
    assert!(!cert.pass);
    println!("tampered: {}", cert.failures.join("; "));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

// Four or five coninvolutory summands of a random complex matrix.

use coninv::certify::verify_decomposition;
use coninv::conisum::{coninv_sum, coninv_sum_with, SumOptions};
use coninv::gen;
use coninv::matcore::{Matrix, Tolerance};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = gen::rng(11);
    for n in [2, 3, 6] {
        let a = Matrix::Floating(gen::random_complex(n, 1.0, &mut rng));
        let d = coninv_sum(&a)?;
        let cert = verify_decomposition(&a, &d, Tolerance::certify_default());
        println!(
            "n = {n}: {} summands, sum residual {:.2e}, pass {}",
            d.count(),
            cert.sum_residual,
            cert.pass
        );
        for e in &d.log {
            println!("  {}: {}", e.stage, e.detail);
        }
        assert!(cert.pass);
    }

    // exactly five summands for a 3x3 input
    let a = Matrix::Floating(gen::random_complex(3, 1.0, &mut rng));
    let d = coninv_sum_with(&a, SumOptions { pad_to: Some(5), ..Default::default() })?;
    assert_eq!(d.count(), 5);
    println!("padded: {} summands", d.count());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

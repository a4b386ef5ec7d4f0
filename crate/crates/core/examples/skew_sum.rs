// Skew-coninvolutory sums (`conj(K) K = -I`) for even sizes.

use coninv::certify::verify_decomposition;
use coninv::gen;
use coninv::matcore::{CMat, Matrix, RMat, Tolerance, C64};
use coninv::skewsum::skew_sum;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::certify_default();
    let nilpotent = RMat::direct_sum(&[gen::jordan_block(3, 0.0), RMat::zeros(1, 1)]);
    let cases = vec![
        ("random 4x4", gen::random_complex(4, 1.0, &mut gen::rng(5))),
        ("J2(3)", CMat::from_real(&gen::jordan_block(2, 3.0))),
        ("J3(0) + J1(0)", CMat::from_real(&nilpotent)),
        ("H4(i)", gen::hblock(2, C64::new(0.0, 1.0))?),
        ("5 I4", CMat::scalar(4, C64::new(5.0, 0.0))),
    ];
    for (name, a) in cases {
        let a = Matrix::Floating(a);
        let d = skew_sum(&a)?;
        let cert = verify_decomposition(&a, &d, tol);
        println!(
            "{name}: {} summands, flags {:?}, pass {}",
            d.count(),
            d.flags,
            cert.pass
        );
        assert!(cert.pass);
    }

    // odd sizes carry no skew-coninvolutory matrices at all
    let odd = Matrix::Floating(CMat::identity(3));
    println!("3x3: {}", skew_sum(&odd).unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

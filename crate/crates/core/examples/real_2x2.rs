// Real 2x2 classes and their four coninvolutory summands.

use coninv::conisum::{classify_real_2x2, coninv_sum_2x2};
use coninv::matcore::RMat;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        RMat::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]),
        RMat::from_rows(vec![vec![3.0, 1.0], vec![-1.0, 1.0]]),
        RMat::from_rows(vec![vec![0.0, -2.0], vec![1.0, 0.0]]),
    ];
    for m in &cases {
        let class = classify_real_2x2(m)?;
        let (_, ks) = coninv_sum_2x2(m)?;
        let worst = ks
            .iter()
            .map(|k| (&(&k.conj() * k) - &coninv::matcore::CMat::identity(2)).norm_fro())
            .fold(0.0, f64::max);
        println!("{:?}: worst summand defect {worst:.1e}", class.kind);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

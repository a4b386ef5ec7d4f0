// `A = C + D` with `C` coninvolutory and `D` consimilar to a real diagonal.

use coninv::conisum::thm1b_decompose;
use coninv::gen;
use coninv::matcore::Matrix;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = gen::random_complex(4, 1.0, &mut gen::rng(21));
    let t = thm1b_decompose(&Matrix::Floating(a.clone()))?;
    let con = (&(&t.c.conj() * &t.c) - &coninv::matcore::CMat::identity(4)).norm_fro();
    let sum = (&(&t.c + &t.d) - &a).norm_fro();
    println!("||conj(C) C - I|| = {con:.2e}");
    println!("||C + D - A||     = {sum:.2e}");
    println!("real diagonal of D: {:?}", t.diag);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

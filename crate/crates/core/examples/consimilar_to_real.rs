// Every complex matrix is consimilar to a real one.

use coninv::concanon::{coninvolutory_factor, consimilar_to_real};
use coninv::gen;
use coninv::matcore::float::inverse;
use coninv::matcore::CMat;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = gen::random_complex(3, 1.0, &mut gen::rng(2));
    let r = consimilar_to_real(&a)?;
    println!("imaginary part before truncation: {:.1e}", r.max_imag);
    println!("real representative:\n{:?}", r.b);

    // a coninvolutory matrix is conj(S)^-1 S for some S
    let t = gen::random_complex(3, 1.0, &mut gen::rng(4));
    let c = &inverse(&t.conj())? * &t;
    let s = coninvolutory_factor(&c)?;
    let back: CMat = &inverse(&s.conj())? * &s;
    println!("factor residual: {:.1e}", (&back - &c).norm_fro());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

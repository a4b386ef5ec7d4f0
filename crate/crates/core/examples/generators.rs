// Seeded test matrices and their JSON form.

use coninv::gen;
use coninv::matcore::json::{cmat_to_json, matrix_from_value, qmat_to_json};
use coninv::matcore::{CMat, Matrix, C64};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let j = gen::jordan_chain(&[1.0, 1.0, 4.0], &[1, 0])?;
    let h = gen::hblock(1, C64::new(-2.0, 0.0))?;
    let a = CMat::direct_sum(&[CMat::from_real(&j), h]);
    let v = cmat_to_json(&a);
    println!("{v}");
    assert_eq!(matrix_from_value(&v)?, Matrix::Floating(a));

    let q = gen::random_rational(2, &mut gen::rng(7));
    println!("{}", qmat_to_json(&q));
    assert_eq!(
        gen::random_complex(3, 1.0, &mut gen::rng(7)),
        gen::random_complex(3, 1.0, &mut gen::rng(7))
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

// Exact rational split `A = V + D` with `V^2 = I` and `D` diagonalizable
// over the rationals.

use coninv::exactcanon::thm1a_decompose;
use coninv::gen;
use coninv::matcore::exact::char_poly;
use coninv::matcore::scalar::q_to_string;
use coninv::matcore::Mat;
use coninv::exactcanon::poly_to_string;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = gen::random_rational(4, &mut gen::rng(3));
    let t = thm1a_decompose(&a)?;
    assert_eq!(&t.v * &t.v, Mat::identity(4));
    assert_eq!(&t.v + &t.d, a);
    assert!(t.diagonalization_holds());
    println!("trace V = {}", q_to_string(&t.v.trace()));
    println!("eigenvalues of D: {}", t.eig.iter().map(q_to_string).collect::<Vec<_>>().join(", "));
    println!("char poly of D: {}", poly_to_string(&char_poly(&t.d)));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

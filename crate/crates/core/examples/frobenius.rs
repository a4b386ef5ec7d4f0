// Exact rational canonical form with prime-power companion blocks.

use coninv::exactcanon::{frobenius_form, poly_to_string};
use coninv::matcore::scalar::qi;
use coninv::matcore::Mat;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = Mat::from_rows(vec![
        vec![qi(2), qi(1), qi(0), qi(0)],
        vec![qi(0), qi(2), qi(0), qi(0)],
        vec![qi(0), qi(0), qi(0), qi(-1)],
        vec![qi(0), qi(0), qi(1), qi(0)],
    ]);
    let f = frobenius_form(&a)?;
    for b in &f.blocks {
        println!("{}", poly_to_string(b));
    }
    assert_eq!(&(&f.s * &a) * &f.s_inv, f.canonical());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

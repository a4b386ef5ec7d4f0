// Plant canonical blocks behind a random consimilarity and recover them.

use coninv::concanon::{build_blocks, concanonical_form};
use coninv::gen::{self, PlantKind};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = gen::rng(8);
    for kind in [PlantKind::J, PlantKind::H, PlantKind::Mixed] {
        let blocks = gen::random_blocks(5, kind, &mut rng);
        let s = gen::random_conditioned(5, 100.0, &mut rng);
        let a = gen::plant(&build_blocks(&blocks)?, &s)?;
        let f = concanonical_form(&a)?;
        println!("planted   {blocks:?}");
        println!("recovered {:?} (residual {:.1e})", f.blocks, f.residual);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

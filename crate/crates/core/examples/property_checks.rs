//! The seeded property checks shipped with the command-line tool.

use zp_index::alphabet::Alphabet;
use zp_index::verify;

fn main() -> zp_index::error::Result<()> {
    let seed = 1;
    for alphabet in [Alphabet::Cyclic(3), Alphabet::CircleGrid(12)] {
        for m in [2, 3] {
            let a = verify::eta_containment(m, &alphabet, 1000, seed)?;
            let b = verify::theta_eta_identity(m, &alphabet, 1000, seed)?;
            println!("{alphabet} m={m}: containment {}/{} ok, identity {}/{} ok", a.trials - a.failures, a.trials, b.trials - b.failures, b.trials);
        }
    }
    for p in [5, 7] {
        let r = verify::recoding(2, p)?;
        println!("recoding m=2 p={p}: passed = {}, {}", r.passed, r.results);
    }
    let r = verify::join_en(1, 5, 2, 5)?;
    println!("join of 3 copies of P_5(Sigma_1): passed = {}, Betti {}", r.passed, r.results["reduced_betti"]);
    let r = verify::pair_embed(5, 8)?;
    println!("pair code on P_5(Z) at q=8: passed = {}, {} words", r.passed, r.results["grid_words"]);
    Ok(())
}

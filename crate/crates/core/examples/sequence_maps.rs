//! The sliding-sum map theta, its section eta, and the pair code.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zp_index::alphabet::{Alphabet, Distance};
use zp_index::sequence_maps::{
    eta_apply, eta_input_window, pair_embed, random_valid_window, theta_apply, AnchorSeq, IndexRange, Window,
};

fn main() -> zp_index::error::Result<()> {
    let z3 = Alphabet::Cyclic(3);
    let m = 3;
    let wanted = IndexRange::new(-4, 10)?;
    // theta_3 reads 2·2! letters past its last output
    let y_range = IndexRange::new(wanted.lo, wanted.hi + 4)?;
    let need = eta_input_window(m, y_range)?.expect("not only anchor letters").union(&wanted);
    println!("eta_{{2,3}} on {y_range} reads x on {need}");

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let x = random_valid_window(&z3, 2, Distance::from_integer(1), need, &mut rng)?;
    let y = eta_apply(m, &AnchorSeq::Seeded(5), &x, y_range)?;
    println!("y satisfies the 3!-gap constraint: {}", y.satisfies_gap(6, Distance::from_integer(1)));
    let back = theta_apply(m, &y)?;
    println!("theta(eta(x)) == x on {wanted}: {}", back == x.restrict(wanted)?);

    let short = Window::from_scalars(z3.clone(), 10, &[0, 1, 2, 0])?;
    match theta_apply(3, &short) {
        Err(e) => println!("short window: {e}"),
        Ok(w) => println!("unexpected output {w:?}"),
    }

    let s8 = Alphabet::CircleGrid(8);
    let w = Window::from_scalars(s8, 0, &[0, 4, 0])?;
    let pairs = pair_embed(&w)?;
    let letters: Vec<String> = pairs.letters().iter().map(|e| e.to_string()).collect();
    println!("pair code of (0,4,0) over {}: {}", pairs.alphabet(), letters.join(" "));
    Ok(())
}

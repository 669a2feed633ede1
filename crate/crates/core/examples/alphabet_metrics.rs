//! Letters, group operations and invariant metrics on the supported alphabets.

use zp_index::alphabet::{Alphabet, Element};

fn main() -> zp_index::error::Result<()> {
    let z3: Alphabet = "Z3".parse()?;
    let s8: Alphabet = "S:q=8".parse()?;
    let square: Alphabet = "S^2:q=8".parse()?;

    let (a, b) = (Element::scalar(1), Element::scalar(2));
    println!("in {z3}: {a} + {b} = {}, rho = {}", z3.add(&a, &b)?, z3.metric(&a, &b)?);

    println!("distances from 0 in {s8}:");
    for x in s8.elements() {
        println!("  rho(0, {x}) = {}", s8.metric(&s8.zero(), &x)?);
    }

    let u = square.parse_element("[0,4]")?;
    let v = square.parse_element("[1,5]")?;
    println!("in {square}: rho({u}, {v}) = {} (max over coordinates)", square.metric(&u, &v)?);
    println!("{square} has {} letters and diameter {}", square.order(), square.diameter());
    Ok(())
}

//! Counting, listing and splitting periodic points into shift orbits.

use zp_index::symbolic::{count_periodic, enumerate_periodic, orbit_decompose, EnumConfig, SubshiftSpec};

fn main() -> zp_index::error::Result<()> {
    let sigma1 = SubshiftSpec::sigma(1)?;
    let sigma2 = SubshiftSpec::sigma(2)?;
    println!("{:>4} {:>10} {:>10}", "p", "#P_p(S1)", "#P_p(S2)");
    for p in [2u64, 3, 5, 7, 11, 13] {
        let a = count_periodic(&sigma1, p)?;
        let b = count_periodic(&sigma2, p)?;
        println!("{p:>4} {:>10} {:>10}", a.count, b.count);
    }

    let cfg = EnumConfig::default();
    let pts = enumerate_periodic(&sigma2, 5, &cfg)?;
    let orbits = orbit_decompose(&pts.words, 5)?;
    println!(
        "P_5({sigma2}): {} points via {:?} search, {} orbits, free = {}",
        pts.words.len(),
        pts.path,
        orbits.orbits.len(),
        orbits.free
    );
    for orbit in orbits.orbits.iter().take(3) {
        let texts: Vec<String> = orbit.iter().map(|w| w.to_text(sigma2.alphabet())).collect();
        println!("  {}", texts.join(" -> "));
    }

    let z = SubshiftSpec::zcal(8)?;
    let zp = enumerate_periodic(&z, 3, &cfg)?;
    println!("P_3({z}) has {} grid points; first {}", zp.words.len(), zp.words[0].to_text(z.alphabet()));
    Ok(())
}

//! Joins of free point sets and their homology over F_p.

use zp_index::complex::{is_en_zp, join_all, EquivariantComplex};
use zp_index::homology::betti_of;
use zp_index::symbolic::{enumerate_periodic, EnumConfig, SubshiftSpec};

fn main() -> zp_index::error::Result<()> {
    let p = 5;
    let spec = SubshiftSpec::sigma(1)?;
    let pts = enumerate_periodic(&spec, p as usize, &EnumConfig::default())?;
    let set = EquivariantComplex::from_periodic_words(p, spec.alphabet(), &pts.words)?;
    let n = set.n_vertices() as u64;
    println!("P_{p}({spec}): {n} points");

    for k in 0..3u32 {
        let join = join_all(&vec![&set; k as usize + 1])?;
        let t = std::time::Instant::now();
        let b = betti_of(&join, p as u64)?;
        let en = is_en_zp(&join, k as i64, None)?;
        println!(
            "K={k}: cells {:?}, reduced Betti {:?} (expected top {}), E_{k} certified = {} [{:.2?}]",
            join.cell_counts(),
            b.reduced,
            (n - 1).pow(k + 1),
            en.certified,
            t.elapsed()
        );
    }

    let labels: Vec<String> = (0..4).map(|i| i.to_string()).collect();
    let square = EquivariantComplex::from_maximal_simplices(2, labels, vec![2, 3, 0, 1], &[
        vec![0, 1],
        vec![1, 2],
        vec![2, 3],
        vec![0, 3],
    ])?;
    let b = betti_of(&square, 2)?;
    println!("antipodal square: free = {}, reduced Betti {:?}", square.verify_free_action().free, b.reduced);
    Ok(())
}

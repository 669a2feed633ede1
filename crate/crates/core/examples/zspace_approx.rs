//! Cubical approximations of P_p(Z) and a certificate for p = 2.

use zp_index::approx::{
    betti_profile, build_approx, canonical_certificate_p2, p2_cycle_certificate, refinement_inclusion,
    stability_check, TorusGridSpec, DEFAULT_CELL_CAP,
};
use zp_index::index::{verify_certificate, IndexReport};

fn main() -> zp_index::error::Result<()> {
    for q in [8, 16] {
        let spec = TorusGridSpec::zcal(2, q)?;
        let prof = betti_profile(&spec, 2, DEFAULT_CELL_CAP)?;
        println!(
            "{spec}: {} vertices, cells {:?}, reduced Betti {:?}, free = {}",
            prof.vertices, prof.cells_by_dim, prof.betti.reduced, prof.free.free
        );
        let target = build_approx(&spec, DEFAULT_CELL_CAP)?;
        let rep = verify_certificate(&canonical_certificate_p2(q)?, &target)?;
        let mut report = IndexReport::unknown(2, spec.to_string());
        rep.apply_to(&mut report)?;
        println!("  canonical certificate accepted; coind >= {}", report.coind_lower);
    }

    let target = build_approx(&TorusGridSpec::zcal(2, 8)?, DEFAULT_CELL_CAP)?;
    let rep = verify_certificate(&p2_cycle_certificate(8, 1)?, &target)?;
    println!("x -> (x, x+1) accepted = {}: {}", rep.accepted, rep.witness.unwrap_or_default());

    let spec = TorusGridSpec::zcal(3, 8)?;
    let st = stability_check(&spec, 3, DEFAULT_CELL_CAP)?;
    println!(
        "{spec}: q=8 {:?}, q=16 {:?}, agree = {}",
        st.coarse.betti.reduced, st.fine.betti.reduced, st.agree
    );
    println!("vertices survive refinement: {}", refinement_inclusion(&spec)?);
    Ok(())
}

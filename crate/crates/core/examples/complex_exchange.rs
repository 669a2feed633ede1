//! Writing complexes and certificates as JSON and checking them after reload.

use zp_index::approx::{build_approx, canonical_certificate_p2, TorusGridSpec, DEFAULT_CELL_CAP};
use zp_index::complex::ComplexFile;
use zp_index::index::{verify_certificate, EquivariantMapCert};

fn main() -> zp_index::error::Result<()> {
    let dir = std::env::temp_dir().join("zp-index-exchange");
    std::fs::create_dir_all(&dir)?;
    let target = build_approx(&TorusGridSpec::zcal(2, 8)?, DEFAULT_CELL_CAP)?;
    let complex_path = dir.join("p2_q8.json");
    let cert_path = dir.join("cert_q8.json");
    std::fs::write(&complex_path, ComplexFile::from_complex(&target).to_json()?)?;
    std::fs::write(&cert_path, canonical_certificate_p2(8)?.to_json()?)?;
    println!("wrote {} and {}", complex_path.display(), cert_path.display());

    let reloaded = ComplexFile::from_json(&std::fs::read_to_string(&complex_path)?)?.into_complex()?;
    let cert = EquivariantMapCert::from_json(&std::fs::read_to_string(&cert_path)?)?;
    let rep = verify_certificate(&cert, &reloaded)?;
    println!("reloaded complex has cells {:?}; certificate accepted = {}", reloaded.cell_counts(), rep.accepted);
    for c in &rep.checks {
        println!("  {:<20} {}", c.name, if c.passed { "ok" } else { "FAILED" });
    }
    Ok(())
}

//! Index and coindex reports: exact values, join bounds, transport and certificates.

use zp_index::complex::EquivariantComplex;
use zp_index::index::{
    apply_dimension_bound, coindex_join_lower, coindex_transport, exact_index_finite_free, index_of_join_of_finite,
    standard_join_model, verify_certificate, EquivariantMapCert, IndexReport, MapEvidence, StructuralMap,
};
use zp_index::symbolic::{enumerate_periodic, EnumConfig, SubshiftSpec};

fn main() -> zp_index::error::Result<()> {
    let p = 7;
    let spec = SubshiftSpec::sigma(2)?;
    let pts = enumerate_periodic(&spec, p as usize, &EnumConfig::default())?;
    let set = EquivariantComplex::from_periodic_words(p, spec.alphabet(), &pts.words)?;

    let single = exact_index_finite_free(&set, "P_7(Sigma_2)")?;
    let triple = index_of_join_of_finite(&[&set, &set, &set], "P_7(Sigma_2)^{*3}")?;
    println!("{}: exact {:?}", single.space, single.value());
    println!("{}: exact {:?} ({})", triple.space, triple.value(), triple.provenance[0]);

    let mut acc = single.clone();
    for _ in 0..2 {
        acc.coind_lower = coindex_join_lower(&acc, &single)?;
    }
    println!("iterated join bound from 0: {}", acc.coind_lower);

    let mut target = IndexReport::unknown(p, "some space receiving an inclusion");
    coindex_transport(&MapEvidence::Structural(StructuralMap::Inclusion), &triple, &mut target)?;
    println!("after transport: coind >= {}", target.coind_lower);
    let refused = coindex_transport(&MapEvidence::Unverified("a map nobody checked".into()), &triple, &mut target);
    println!("unverified map: {}", refused.unwrap_err());

    let model = standard_join_model(3, 1)?;
    let cert = EquivariantMapCert::standard(3, 1, model.labels().to_vec(), "(Z3)^{*2}");
    let rep = verify_certificate(&cert, &model)?;
    let mut r = IndexReport::unknown(3, "(Z3)^{*2}");
    rep.apply_to(&mut r)?;
    apply_dimension_bound(&model, &mut r)?;
    println!("identity certificate accepted = {}; report exact {:?}", rep.accepted, r.value());
    println!("{}", serde_json::to_string_pretty(&r)?);

    let mut tampered = cert;
    tampered.vertex_map.swap(0, 1);
    let rep = verify_certificate(&tampered, &model)?;
    println!("tampered certificate accepted = {}; witness: {}", rep.accepted, rep.witness.unwrap_or_default());
    Ok(())
}

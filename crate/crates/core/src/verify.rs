//! Seeded property checks for the sequence maps, the periodic-point
//! recoding, the join construction and the pair embedding.
//!
//! Each check returns a [`CheckRun`]: how many trials ran, how many failed,
//! and the inputs of every failing trial.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::alphabet::{Alphabet, Distance};
use crate::approx::{pair_embed_check, TorusGridSpec};
use crate::arith::factorial;
use crate::complex::{is_en_zp, join_all, EquivariantComplex};
use crate::error::{Error, Result};
use crate::homology::betti_of;
use crate::index::{coindex_transport, index_of_join_of_finite, IndexReport, MapEvidence, StructuralMap};
use crate::sequence_maps::{eta_apply, eta_input_window, random_valid_window, theta_apply, AnchorSeq, IndexRange};
use crate::symbolic::{count_periodic, enumerate_periodic, orbit_decompose, CyclicWord, EnumConfig, SubshiftSpec};

/// Cap on cells for the join check.
pub const JOIN_CELL_CAP: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRun {
    pub check: String,
    pub params: Value,
    pub passed: bool,
    pub trials: u64,
    pub failures: u64,
    /// Inputs of failing trials, at most 20.
    pub transcript: Vec<String>,
    pub results: Value,
    pub provenance: String,
}

const MAX_TRANSCRIPT: usize = 20;

struct Tally {
    trials: u64,
    failures: u64,
    transcript: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { trials: 0, failures: 0, transcript: Vec::new() }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.transcript.len() < MAX_TRANSCRIPT {
                self.transcript.push(describe());
            }
        }
    }

    fn finish(self, check: &str, params: Value, results: Value, provenance: &str) -> CheckRun {
        CheckRun {
            check: check.into(),
            params,
            passed: self.failures == 0,
            trials: self.trials,
            failures: self.failures,
            transcript: self.transcript,
            results,
            provenance: provenance.into(),
        }
    }
}

/// The distance threshold used for random inputs: 1 on `Z_n`, `1/2` on circle grids.
pub fn default_delta(alphabet: &Alphabet) -> Distance {
    if alphabet.leaves().iter().all(|l| l.is_circle_grid()) {
        Distance::new(1, 2)
    } else {
        Distance::from_integer(1)
    }
}

fn random_anchor(rng: &mut ChaCha8Rng, trial: u64) -> AnchorSeq {
    if trial.is_multiple_of(4) {
        AnchorSeq::Identity
    } else {
        AnchorSeq::Seeded(rng.gen())
    }
}

fn letters_text(w: &crate::sequence_maps::Window) -> String {
    let body: Vec<String> = w.letters().iter().map(|e| e.to_string()).collect();
    format!("offset {} [{}]", w.offset(), body.join(","))
}

/// `η_{m-1,m}` maps `X(G, m-1, δ)` into `X(G, m, δ)`: on random valid inputs
/// and anchors, every visible pair `(y_k, y_{k+m!})` of the output is `δ`-far.
pub fn eta_containment(m: u32, alphabet: &Alphabet, trials: u64, seed: u64) -> Result<CheckRun> {
    let delta = default_delta(alphabet);
    let f = factorial(m - 1)? as i64;
    let mf = m as i64 * f;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new();
    for t in 0..trials {
        let lo = rng.gen_range(-3 * mf..=3 * mf);
        let len = rng.gen_range(mf + 1..=3 * mf + 1);
        let requested = IndexRange::new(lo, lo + len - 1)?;
        let anchor = random_anchor(&mut rng, t);
        let Some(need) = eta_input_window(m, requested)? else {
            tally.record(true, String::new);
            continue;
        };
        let x = random_valid_window(alphabet, f as u64, delta, need, &mut rng)?;
        let y = eta_apply(m, &anchor, &x, requested)?;
        let bad = y.first_gap_violation(mf as u64, delta);
        tally.record(bad.is_none(), || {
            format!("trial {t}: anchor {anchor:?}, x = {}, requested {requested}, violation at k = {}", letters_text(&x), bad.unwrap())
        });
    }
    Ok(tally.finish(
        "eta-containment",
        json!({"m": m, "alphabet": alphabet.to_string(), "delta": delta.to_string(), "trials": trials, "seed": seed}),
        json!({}),
        "seeded random valid windows and anchors; pair constraint checked at every visible (k, k+m!)",
    ))
}

/// `θ_{m,m-1} ∘ η_{m-1,m} = id` on random valid inputs and anchors, checked
/// letter by letter on the requested range.
pub fn theta_eta_identity(m: u32, alphabet: &Alphabet, trials: u64, seed: u64) -> Result<CheckRun> {
    let delta = default_delta(alphabet);
    let f = factorial(m - 1)? as i64;
    let mf = m as i64 * f;
    let span = (m as i64 - 1) * f;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new();
    for t in 0..trials {
        let lo = rng.gen_range(-3 * mf..=3 * mf);
        let len = rng.gen_range(1..=2 * mf);
        let target = IndexRange::new(lo, lo + len - 1)?;
        let y_range = IndexRange::new(lo, target.hi + span)?;
        let anchor = random_anchor(&mut rng, t);
        let need = eta_input_window(m, y_range)?.map_or(target, |n| n.union(&target));
        let x = random_valid_window(alphabet, f as u64, delta, need, &mut rng)?;
        let y = eta_apply(m, &anchor, &x, y_range)?;
        let back = theta_apply(m, &y)?;
        let ok = back.range() == target && back == x.restrict(target)?;
        tally.record(ok, || {
            format!("trial {t}: anchor {anchor:?}, x = {}, checked on {target}, got {}", letters_text(&x), letters_text(&back))
        });
    }
    Ok(tally.finish(
        "theta-eta-identity",
        json!({"m": m, "alphabet": alphabet.to_string(), "delta": delta.to_string(), "trials": trials, "seed": seed}),
        json!({}),
        "seeded random valid windows and anchors; theta(eta(x)) compared with x letter by letter",
    ))
}

/// `P_p(Σ_m)` is nonempty, finite and free, and when `gcd(m!, p) = 1` the
/// recoding `y_k = x_{k·m! mod p}` is a bijection onto `P_p(Σ_1)`.
pub fn recoding(m: u32, p: u32) -> Result<CheckRun> {
    let spec = SubshiftSpec::sigma(m)?;
    let cfg = EnumConfig::default();
    let pts = enumerate_periodic(&spec, p as usize, &cfg)?;
    let count = count_periodic(&spec, p as u64)?;
    let orbits = orbit_decompose(&pts.words, p as usize)?;
    let mut tally = Tally::new();
    tally.record(!pts.words.is_empty(), || format!("P_{p}(Sigma_{m}) is empty"));
    tally.record(count.count == pts.words.len() as u128, || {
        format!("enumeration found {} points, transfer matrix counts {}", pts.words.len(), count.count)
    });
    tally.record(orbits.free, || {
        let short = orbits.orbits.iter().find(|o| o.len() != p as usize).expect("not free");
        format!("orbit of size {} through {:?}", short.len(), short[0])
    });
    let mf = factorial(m)?;
    let coprime = mf.gcd(&(p as u64)) == 1;
    let mut sigma1_count = None;
    if coprime {
        let base = SubshiftSpec::sigma(1)?;
        let step = (mf % p as u64) as i64;
        let mut images: Vec<CyclicWord> = Vec::with_capacity(pts.words.len());
        for w in &pts.words {
            let img = CyclicWord::new((0..p as i64).map(|k| w.letter(k * step).clone()).collect())?;
            let ok = base.satisfies(&img)?;
            tally.record(ok, || format!("recoded {:?} violates Sigma_1", w.letters()));
            images.push(img);
        }
        images.sort();
        images.dedup();
        let n1 = count_periodic(&base, p as u64)?.count;
        sigma1_count = Some(n1);
        tally.record(images.len() == pts.words.len() && n1 == images.len() as u128, || {
            format!("recoding hits {} distinct points of {n1}", images.len())
        });
    }
    Ok(tally.finish(
        "recoding",
        json!({"m": m, "p": p}),
        json!({
            "count": count.count.to_string(),
            "orbits": orbits.orbits.len(),
            "free": orbits.free,
            "coprime": coprime,
            "sigma1_count": sigma1_count.map(|c| c.to_string()),
            "enumeration_path": pts.path,
        }),
        "exhaustive enumeration, transfer-matrix count and orbit decomposition",
    ))
}

/// `P_p(Σ_m)^{*(K+1)}` is free, of dimension `K`, with reduced homology over
/// `F_field` concentrated in degree `K` with rank `(N-1)^{K+1}`, and the
/// index report for it is exactly `K`.
pub fn join_en(m: u32, p: u32, k: u32, field: u64) -> Result<CheckRun> {
    let spec = SubshiftSpec::sigma(m)?;
    let pts = enumerate_periodic(&spec, p as usize, &EnumConfig::default())?;
    let set = EquivariantComplex::from_periodic_words(p, spec.alphabet(), &pts.words)?;
    let n = set.n_vertices() as u64;
    let cells = (n + 1).checked_pow(k + 1).map(|c| c - 1);
    if cells.is_none_or(|c| c > JOIN_CELL_CAP) {
        return Err(Error::Resource { what: format!("join of {} copies of {n} points", k + 1), cap: JOIN_CELL_CAP });
    }
    let copies = vec![&set; k as usize + 1];
    let join = join_all(&copies)?;
    let en = is_en_zp(&join, k as i64, Some(field))?;
    let betti = betti_of(&join, field)?;
    let report = index_of_join_of_finite(&copies, &format!("P_{p}({spec})^{{*{}}}", k + 1))?;
    let expected_top = (n - 1).pow(k + 1);
    let mut expected = vec![0u64; k as usize + 1];
    expected[k as usize] = expected_top;

    let mut tally = Tally::new();
    tally.record(en.free, || format!("not free: {:?}", en.free_witness));
    tally.record(en.dimension == k as i64, || format!("dimension {} instead of {k}", en.dimension));
    tally.record(betti.reduced == expected, || format!("reduced Betti {:?}, expected {expected:?}", betti.reduced));
    tally.record(en.certified, || format!("not certified E_{k}: {}", en.basis));
    tally.record(report.value() == Some(k as i64), || format!("index report {:?}", report.value()));
    Ok(tally.finish(
        "join-en",
        json!({"m": m, "p": p, "K": k, "field": field}),
        json!({
            "points": n,
            "cells_by_dim": join.cell_counts(),
            "reduced_betti": betti.reduced,
            "expected_top": expected_top,
            "homology_connectivity": en.homology_connectivity,
            "certified": en.certified,
            "basis": en.basis,
            "index": report,
        }),
        "exact elimination over F_field; E_K recognition by join structure",
    ))
}

/// The pair code maps every period-`p` grid word of `Z` into
/// `X(S^2, 1, 1/2)` injectively, and transports coindex lower bounds.
pub fn pair_embed(p: u32, q: u32) -> Result<CheckRun> {
    let r = pair_embed_check(p, q)?;
    let mut tally = Tally::new();
    tally.record(r.words > 0, || format!("no period-{p} grid words of Z at q={q}"));
    tally.record(r.counterexample.is_none(), || format!("image of {} violates X(S^2,1,1/2)", r.counterexample.clone().unwrap()));
    tally.record(r.not_injective.is_none(), || format!("first coordinate does not recover {}", r.not_injective.clone().unwrap()));
    let spec = TorusGridSpec::zcal(p, q)?;
    let source = IndexReport::unknown(p, format!("P_{p}(Z)"));
    let mut target = IndexReport::unknown(p, format!("P_{p}(X(S^2,1,1/2))"));
    let transport = coindex_transport(&MapEvidence::Structural(StructuralMap::PairEmbed), &source, &mut target);
    tally.record(transport.is_ok(), || format!("transport failed: {}", transport.as_ref().unwrap_err()));
    Ok(tally.finish(
        "pair-embed",
        json!({"p": p, "q": q}),
        json!({"grid_words": r.words, "space": spec.to_string(), "target_report": target}),
        "exhaustive check on enumerated grid words",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_map_checks_pass_on_small_runs() {
        for a in [Alphabet::Cyclic(3), Alphabet::CircleGrid(12)] {
            for m in [2, 3] {
                let r = eta_containment(m, &a, 50, 7).unwrap();
                assert!(r.passed && r.trials == 50, "{r:?}");
                let r = theta_eta_identity(m, &a, 50, 7).unwrap();
                assert!(r.passed && r.trials == 50, "{r:?}");
            }
        }
    }

    #[test]
    fn runs_are_deterministic_in_the_seed() {
        let a = Alphabet::CircleGrid(12);
        assert_eq!(theta_eta_identity(3, &a, 20, 9).unwrap(), theta_eta_identity(3, &a, 20, 9).unwrap());
    }

    #[test]
    fn recoding_and_join() {
        let r = recoding(2, 7).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.results["count"], "126");
        let r = join_en(1, 5, 1, 5).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.results["reduced_betti"], json!([0, 841]));
    }

    #[test]
    fn pair_embed_check_passes() {
        assert!(pair_embed(3, 8).unwrap().passed);
    }
}

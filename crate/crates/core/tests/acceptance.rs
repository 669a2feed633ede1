//! One line per acceptance criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zp_index::alphabet::{Alphabet, Distance};
use zp_index::approx::{build_approx, canonical_certificate_p2, p2_cycle_certificate, vertex_codes, TorusGridSpec, DEFAULT_CELL_CAP};
use zp_index::complex::{join_all, EquivariantComplex};
use zp_index::error::Error;
use zp_index::homology::betti_of;
use zp_index::index::{
    coindex_join_lower, coindex_transport, exact_index_finite_free, index_of_join_of_finite, verify_certificate,
    IndexReport, MapEvidence, StructuralMap,
};
use zp_index::sequence_maps::{eta_apply, eta_input_window, random_valid_window, theta_apply, AnchorSeq, IndexRange, Window};
use zp_index::symbolic::{count_periodic, enumerate_periodic, orbit_decompose, CyclicWord, EnumConfig, SubshiftSpec};

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s(e: Error) -> String {
    e.to_string()
}

/// Words of length p over Z_3 with `x_i != x_{i+gap mod p}`, by exhaustive listing.
fn brute_sigma(p: usize, gap: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for code in 0..3u64.pow(p as u32) {
        let mut c = code;
        let w: Vec<u32> = (0..p)
            .map(|_| {
                let d = (c % 3) as u32;
                c /= 3;
                d
            })
            .collect();
        if (0..p).all(|i| w[i] != w[(i + gap) % p]) {
            out.push(w);
        }
    }
    out
}

fn fact(n: u32) -> u64 {
    (1..=n as u64).product()
}

fn criterion_1() -> Outcome {
    let expected = [(2u64, 6u128), (3, 6), (5, 30), (7, 126), (11, 2046)];
    let s1 = SubshiftSpec::sigma(1).map_err(e2s)?;
    for (p, want) in expected {
        let got = count_periodic(&s1, p).map_err(e2s)?.count;
        ensure(got == want, format!("count(Sigma_1, {p}) = {got}, want {want}"))?;
        if p <= 7 {
            let brute = brute_sigma(p as usize, 1).len() as u128;
            ensure(brute == got, format!("brute force {brute} != {got} at p={p}"))?;
            let listed = enumerate_periodic(&s1, p as usize, &EnumConfig::default()).map_err(e2s)?;
            ensure(listed.words.len() as u128 == got, format!("enumeration size differs at p={p}"))?;
        }
    }
    Ok("6, 6, 30, 126, 2046; brute force agrees for p <= 7".into())
}

fn criterion_2() -> Outcome {
    let (s1, s2) = (SubshiftSpec::sigma(1).map_err(e2s)?, SubshiftSpec::sigma(2).map_err(e2s)?);
    let mut notes = Vec::new();
    for p in [5usize, 7] {
        let pts = enumerate_periodic(&s2, p, &EnumConfig::default()).map_err(e2s)?;
        let c1 = count_periodic(&s1, p as u64).map_err(e2s)?.count;
        ensure(pts.words.len() as u128 == c1, format!("|P_{p}(Sigma_2)| = {} but |P_{p}(Sigma_1)| = {c1}", pts.words.len()))?;
        let brute = brute_sigma(p, 2);
        ensure(brute.len() == pts.words.len(), format!("brute force Sigma_2 at p={p} gives {}", brute.len()))?;
        let orb = orbit_decompose(&pts.words, p).map_err(e2s)?;
        ensure(orb.free && orb.orbits.iter().all(|o| o.len() == p), format!("non-free orbit at p={p}"))?;
        notes.push(format!("p={p}: {} points, {} orbits", c1, orb.orbits.len()));
    }
    Ok(notes.join("; "))
}

/// Runs `trials` seeded round trips; returns (identity failures, containment failures).
fn eta_trials(m: u32, alphabet: &Alphabet, delta: Distance, trials: u64, seed: u64) -> Result<(u64, u64), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gap = fact(m - 1);
    let span = (m as i64 - 1) * gap as i64;
    let (mut ident, mut contain) = (0, 0);
    for _ in 0..trials {
        let lo = rng.gen_range(-50i64..50);
        let wanted = IndexRange::new(lo, lo + rng.gen_range(0..30)).map_err(e2s)?;
        let y_range = IndexRange::new(wanted.lo, wanted.hi + span).map_err(e2s)?;
        let need = eta_input_window(m, y_range).map_err(e2s)?.map_or(wanted, |r| r.union(&wanted));
        let x = random_valid_window(alphabet, gap, delta, need, &mut rng).map_err(e2s)?;
        let anchor = AnchorSeq::Seeded(rng.gen());
        let y = eta_apply(m, &anchor, &x, y_range).map_err(e2s)?;
        let big = gap * m as u64;
        let letters = y.letters();
        if (0..letters.len().saturating_sub(big as usize))
            .any(|i| alphabet.metric(&letters[i], &letters[i + big as usize]).unwrap() < delta)
        {
            contain += 1;
        }
        if theta_apply(m, &y).map_err(e2s)? != x.restrict(wanted).map_err(e2s)? {
            ident += 1;
        }
    }
    Ok((ident, contain))
}

fn trial_matrix() -> Result<Vec<(String, u64, u64)>, String> {
    let mut rows = Vec::new();
    for (alphabet, delta) in [(Alphabet::Cyclic(3), Distance::from_integer(1)), (Alphabet::CircleGrid(12), Distance::new(1, 2))] {
        for m in [2u32, 3] {
            let (i, c) = eta_trials(m, &alphabet, delta, 1000, 0xACCE97 + m as u64)?;
            rows.push((format!("{alphabet} m={m}"), i, c));
        }
    }
    Ok(rows)
}

fn criterion_3() -> Outcome {
    let rows = trial_matrix()?;
    let bad: Vec<String> = rows.iter().filter(|r| r.1 > 0).map(|r| format!("{}: {} failures", r.0, r.1)).collect();
    ensure(bad.is_empty(), bad.join("; "))?;
    Ok("4 x 1000 trials, 0 failures of theta(eta(x)) = x".into())
}

fn criterion_4() -> Outcome {
    let rows = trial_matrix()?;
    let bad: Vec<String> = rows.iter().filter(|r| r.2 > 0).map(|r| format!("{}: {} violations", r.0, r.2)).collect();
    ensure(bad.is_empty(), bad.join("; "))?;
    Ok("4 x 1000 trials, 0 violations of the m!-gap constraint".into())
}

fn sigma1_set(p: u32) -> Result<EquivariantComplex, String> {
    let s1 = SubshiftSpec::sigma(1).map_err(e2s)?;
    let pts = enumerate_periodic(&s1, p as usize, &EnumConfig::default()).map_err(e2s)?;
    EquivariantComplex::from_periodic_words(p, s1.alphabet(), &pts.words).map_err(e2s)
}

fn criterion_5() -> Outcome {
    let mut notes = Vec::new();
    for p in [5u32, 7] {
        let set = sigma1_set(p)?;
        let n = count_periodic(&SubshiftSpec::sigma(1).map_err(e2s)?, p as u64).map_err(e2s)?.count as u64;
        for k in 0..=2usize {
            let t = Instant::now();
            let join = join_all(&vec![&set; k + 1]).map_err(e2s)?;
            ensure(join.verify_free_action().free, format!("p={p} K={k}: action not free"))?;
            ensure(join.dim() == k as i64, format!("p={p} K={k}: dimension {}", join.dim()))?;
            let b = betti_of(&join, p as u64).map_err(e2s)?;
            let top = (n - 1).pow(k as u32 + 1);
            let mut want = vec![0u64; k + 1];
            want[k] = top;
            ensure(b.reduced == want, format!("p={p} K={k}: reduced Betti {:?}, want {:?}", b.reduced, want))?;
            notes.push(format!("p={p} K={k}: b~_{k}={top} ({:.1?})", t.elapsed()));
        }
    }
    Ok(notes.join(", "))
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    for p in [5u32, 7] {
        let set = sigma1_set(p)?;
        let base = exact_index_finite_free(&set, "P").map_err(e2s)?;
        ensure(base.value() == Some(0), "single finite free set is not exactly 0")?;
        let mut acc = base.clone();
        for k in 0..=3usize {
            let rep = index_of_join_of_finite(&vec![&set; k + 1], "join").map_err(e2s)?;
            ensure(rep.value() == Some(k as i64), format!("p={p}: {} copies give {:?}", k + 1, rep.value()))?;
            ensure(acc.coind_lower == k as i64, format!("p={p}: iterated join bound {} at K={k}", acc.coind_lower))?;
            acc.coind_lower = coindex_join_lower(&acc, &base).map_err(e2s)?;
        }
        notes.push(format!("p={p}: K=0..3 exact"));
    }
    Ok(notes.join("; "))
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    for q in [8u32, 16] {
        let spec = TorusGridSpec::zcal(2, q).map_err(e2s)?;
        let c = build_approx(&spec, DEFAULT_CELL_CAP).map_err(e2s)?;
        let b = betti_of(&c, 2).map_err(e2s)?;
        ensure(b.reduced.len() >= 2 && b.reduced[0] == 0 && b.reduced[1] == 1, format!("q={q}: reduced Betti {:?}", b.reduced))?;
        ensure(c.verify_free_action().free, format!("q={q}: action not free"))?;
        let rep = verify_certificate(&canonical_certificate_p2(q).map_err(e2s)?, &c).map_err(e2s)?;
        ensure(rep.accepted, format!("q={q}: certificate rejected: {:?}", rep.witness))?;
        let mut r = IndexReport::unknown(2, spec.to_string());
        rep.apply_to(&mut r).map_err(e2s)?;
        ensure(r.coind_lower == 1, format!("q={q}: coind_lower {}", r.coind_lower))?;
        notes.push(format!("q={q}: {:?}, coind >= 1", b.reduced));
    }
    Ok(notes.join("; "))
}

fn criterion_8() -> Outcome {
    let (p, q) = (5u32, 8u32);
    let spec = TorusGridSpec::zcal(p, q).map_err(e2s)?;
    let codes = vertex_codes(&spec).map_err(e2s)?;
    let grid = spec.grid().map_err(e2s)?;
    let half = Distance::new(1, 2);
    let mut zcal_words = 0;
    for &code in &codes {
        let w: Vec<u32> = grid.letters(code).into_iter().map(|l| l[0]).collect();
        let d = |a: u32, b: u32| {
            let r = (a + q - b) % q;
            Distance::new(r.min(q - r) as i64, (q / 2) as i64)
        };
        let n = w.len();
        ensure((0..n).all(|i| d(w[(i + n - 1) % n], w[i]) >= half || d(w[i], w[(i + 1) % n]) >= half), "grid word outside Z")?;
        zcal_words += 1;
        // pair code, then the max-metric gap-1 condition checked letter by letter
        let pairs: Vec<(u32, u32)> = (0..n).map(|i| (w[i], w[(i + 1) % n])).collect();
        let ok = (0..n).all(|i| {
            let (a, b) = (pairs[i], pairs[(i + 1) % n]);
            d(a.0, b.0).max(d(a.1, b.1)) >= half
        });
        ensure(ok, format!("pair code of {w:?} leaves X(S^2,1,1/2)"))?;
        let lib = zp_index::sequence_maps::pair_embed_cyclic(&CyclicWord::from_scalars(&w).map_err(e2s)?);
        let target = SubshiftSpec::xsn(q, 2, half).map_err(e2s)?;
        ensure(target.satisfies(&lib).map_err(e2s)?, "library pair code rejected by the target predicate")?;
    }
    let source = IndexReport::unknown(p, "P_5(Z)");
    let mut target = IndexReport::unknown(p, "P_5(X(S^2,1,1/2))");
    coindex_transport(&MapEvidence::Structural(StructuralMap::PairEmbed), &source, &mut target).map_err(e2s)?;
    ensure(target.is_consistent(), "transport produced an inconsistent report")?;
    Ok(format!("{zcal_words} grid words map into X(S^2,1,1/2); transport applied"))
}

fn criterion_9() -> Outcome {
    let target = build_approx(&TorusGridSpec::zcal(2, 8).map_err(e2s)?, DEFAULT_CELL_CAP).map_err(e2s)?;
    let rep = verify_certificate(&p2_cycle_certificate(8, 1).map_err(e2s)?, &target).map_err(e2s)?;
    ensure(!rep.accepted && rep.witness.is_some(), "tampered certificate accepted or no witness")?;

    let labels = vec!["a".into(), "b".into(), "c".into()];
    let fixed = EquivariantComplex::discrete(2, labels, vec![1, 0, 2]).map_err(e2s)?;
    let free = fixed.verify_free_action();
    ensure(!free.free, "fixed vertex not detected")?;
    match exact_index_finite_free(&fixed, "S") {
        Err(Error::NotFree { witness }) => ensure(witness.contains('c'), format!("witness {witness} does not name c"))?,
        other => return Err(format!("non-free input not rejected: {other:?}")),
    }

    let w = Window::from_scalars(Alphabet::Cyclic(3), 10, &[0, 1, 2, 0]).map_err(e2s)?;
    match theta_apply(3, &w) {
        Err(Error::NeededRange { need_lo: 10, need_hi: 14, have_lo: 10, have_hi: 13 }) => {}
        other => return Err(format!("short window gave {other:?}")),
    }
    Ok("tampered certificate, fixed vertex and short window all rejected".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("1 periodic counts", criterion_1, Duration::from_secs(5)),
        ("2 recoding bijection", criterion_2, Duration::from_secs(5)),
        ("3 theta-eta identity", criterion_3, Duration::from_secs(30)),
        ("4 eta containment", criterion_4, Duration::from_secs(30)),
        ("5 join homology", criterion_5, Duration::from_secs(600)),
        ("6 join coindex arithmetic", criterion_6, Duration::from_secs(1)),
        ("7 Z approximation for p=2", criterion_7, Duration::from_secs(60)),
        ("8 pair code transport", criterion_8, Duration::from_secs(60)),
        ("9 negative controls", criterion_9, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (name, f, budget) in criteria {
        let t = Instant::now();
        let out = f();
        let took = t.elapsed();
        let verdict = match (&out, took <= budget) {
            (Ok(_), true) => "PASS",
            _ => "FAIL",
        };
        let detail = match out {
            Ok(s) if took <= budget => s,
            Ok(s) => format!("{s}; over budget {budget:?}"),
            Err(e) => e,
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("{verdict} criterion {name} [{took:.2?}]: {detail}");
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

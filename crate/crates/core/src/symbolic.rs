//! Shift spaces and their periodic points.
//!
//! A point of period `L` of a shift space is represented intrinsically as a
//! cyclic word of length `L`; every defining constraint is read with indices
//! modulo `L`, wraparound pairs included. The supported families are
//!
//! * `X(G, m, δ)`: letters `m!` apart are at distance at least `δ`
//!   (`Σ_m` is the instance over `Z_3`, and `X(S^N, 1, δ)` the instance over a
//!   product of circle grids with `m = 1`);
//! * `Z`: at every index, one of the two adjacent pairs has distance `≥ 1/2`;
//! * `Y`: at every index, one of the two adjacent pairs has distance exactly `1`.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::alphabet::{Alphabet, Distance, Element};
use crate::arith::factorial_mod;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `ρ(x_n, x_{n+m!}) ≥ δ` for all `n`.
    XGmdelta { m: u32, delta: Distance },
    /// Either `ρ(x_{n-1}, x_n) ≥ 1/2` or `ρ(x_n, x_{n+1}) ≥ 1/2`.
    Zcal,
    /// Either `ρ(x_{n-1}, x_n) = 1` or `ρ(x_n, x_{n+1}) = 1`.
    Ycal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubshiftSpec {
    alphabet: Alphabet,
    family: Family,
}

/// A point of period `L`: letters indexed by `Z/LZ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    letters: Vec<Element>,
}

impl SubshiftSpec {
    pub fn new(alphabet: Alphabet, family: Family) -> Result<Self> {
        match &family {
            Family::XGmdelta { m, delta } => {
                if *m == 0 {
                    return Err(Error::shape("X(G,m,delta) needs m >= 1"));
                }
                if *delta <= Distance::from_integer(0) || *delta > alphabet.diameter() {
                    return Err(Error::shape(format!(
                        "delta must lie in (0, diameter]; got {delta} for {alphabet}"
                    )));
                }
            }
            Family::Zcal | Family::Ycal => {
                if !matches!(alphabet, Alphabet::CircleGrid(_)) {
                    return Err(Error::shape(format!(
                        "the Z and Y families live over a circle grid, got {alphabet}"
                    )));
                }
            }
        }
        Ok(SubshiftSpec { alphabet, family })
    }

    /// `Σ_m = X(Z_3, m, δ)` for any `0 < δ ≤ 1`; we use `δ = 1`.
    pub fn sigma(m: u32) -> Result<Self> {
        Self::new(Alphabet::Cyclic(3), Family::XGmdelta { m, delta: Distance::from_integer(1) })
    }

    pub fn x_gmdelta(alphabet: Alphabet, m: u32, delta: Distance) -> Result<Self> {
        Self::new(alphabet, Family::XGmdelta { m, delta })
    }

    /// `X(S^n, 1, δ)` over the grid of resolution `q`.
    pub fn xsn(q: u32, n: usize, delta: Distance) -> Result<Self> {
        Self::x_gmdelta(Alphabet::circle_power(q, n)?, 1, delta)
    }

    pub fn zcal(q: u32) -> Result<Self> {
        Self::new(Alphabet::circle_grid(q)?, Family::Zcal)
    }

    pub fn ycal(q: u32) -> Result<Self> {
        Self::new(Alphabet::circle_grid(q)?, Family::Ycal)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// The letter relation used by the family: `ρ ≥ δ` for `X(G,m,δ)`,
    /// `ρ ≥ 1/2` for `Z`, `ρ = 1` for `Y`.
    pub fn related(&self, a: &Element, b: &Element) -> bool {
        let d = self.alphabet.metric_unchecked(a, b);
        match &self.family {
            Family::XGmdelta { delta, .. } => d >= *delta,
            Family::Zcal => d >= Distance::new(1, 2),
            Family::Ycal => d == Distance::from_integer(1),
        }
    }

    /// Whether the cyclic word is a periodic point of this shift space.
    pub fn satisfies(&self, w: &CyclicWord) -> Result<bool> {
        for e in &w.letters {
            self.alphabet.validate(e)?;
        }
        let len = w.period();
        if len == 0 {
            return Err(Error::shape("cyclic words have period >= 1"));
        }
        let at = |i: i64| &w.letters[i.rem_euclid(len as i64) as usize];
        Ok(match &self.family {
            Family::XGmdelta { m, .. } => {
                let step = factorial_mod(*m, len as u64) as i64;
                (0..len as i64).all(|n| self.related(at(n), at(n + step)))
            }
            Family::Zcal | Family::Ycal => (0..len as i64)
                .all(|n| self.related(at(n - 1), at(n)) || self.related(at(n), at(n + 1))),
        })
    }

    fn letter_table(&self, cap: u64) -> Result<(Vec<Element>, Vec<bool>)> {
        let order = self.alphabet.order();
        if order > cap {
            return Err(Error::Resource { what: format!("alphabet {} of order {order}", self.alphabet), cap });
        }
        let letters: Vec<Element> = self.alphabet.elements().collect();
        let n = letters.len();
        let mut rel = vec![false; n * n];
        for (i, a) in letters.iter().enumerate() {
            for (j, b) in letters.iter().enumerate() {
                rel[i * n + j] = self.related(a, b);
            }
        }
        Ok((letters, rel))
    }
}

impl fmt::Display for SubshiftSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::XGmdelta { m, delta } => {
                if self.alphabet == Alphabet::Cyclic(3) {
                    write!(f, "Sigma_{m}")
                } else {
                    write!(f, "X({},m={m},delta={delta})", self.alphabet)
                }
            }
            Family::Zcal => write!(f, "Z({})", self.alphabet),
            Family::Ycal => write!(f, "Y({})", self.alphabet),
        }
    }
}

impl CyclicWord {
    pub fn new(letters: Vec<Element>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::shape("cyclic words have period >= 1"));
        }
        Ok(CyclicWord { letters })
    }

    /// Convenience constructor for single-coordinate alphabets.
    pub fn from_scalars(values: &[u32]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Element::scalar(v)).collect())
    }

    pub fn period(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Element] {
        &self.letters
    }

    pub fn letter(&self, i: i64) -> &Element {
        &self.letters[i.rem_euclid(self.letters.len() as i64) as usize]
    }

    /// `σ^k`: the letter at index `i` of the result is the letter at `i + k`.
    pub fn shift(&self, k: i64) -> CyclicWord {
        let len = self.letters.len() as i64;
        let k = k.rem_euclid(len) as usize;
        let mut letters = Vec::with_capacity(self.letters.len());
        letters.extend_from_slice(&self.letters[k..]);
        letters.extend_from_slice(&self.letters[..k]);
        CyclicWord { letters }
    }

    /// Text form `ALPHABET:[letters]`, e.g. `Z3:[0,1,2]` or `S^2:q=8:[[0,4],[4,0]]`.
    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        let body: Vec<String> = self.letters.iter().map(|e| e.to_string()).collect();
        format!("{alphabet}:[{}]", body.join(","))
    }

    pub fn parse_text(s: &str) -> Result<(Alphabet, CyclicWord)> {
        let split = s
            .find(":[")
            .ok_or_else(|| Error::parse(format!("cyclic word {s:?} lacks ':[' separator")))?;
        let alphabet: Alphabet = s[..split].parse()?;
        let raw: serde_json::Value = serde_json::from_str(&s[split + 1..])
            .map_err(|e| Error::parse(format!("cyclic word {s:?}: {e}")))?;
        let items = raw
            .as_array()
            .ok_or_else(|| Error::parse(format!("cyclic word {s:?}: letters must be an array")))?;
        let letters = items
            .iter()
            .map(|v| alphabet.parse_element(&v.to_string()))
            .collect::<Result<Vec<_>>>()?;
        Ok((alphabet, CyclicWord::new(letters)?))
    }

    /// Lexicographically least rotation, used as the orbit representative.
    pub fn canonical_rotation(&self) -> CyclicWord {
        (0..self.period() as i64)
            .map(|k| self.shift(k))
            .min()
            .expect("period >= 1")
    }
}

/// Limits for periodic-point enumeration.
#[derive(Debug, Clone, Copy)]
pub struct EnumConfig {
    /// Maximum number of search-tree nodes visited.
    pub node_cap: u64,
    /// Maximum alphabet order.
    pub alphabet_cap: u64,
    /// Use the `k ↦ k·m!` change of variables when `gcd(m!, p) = 1`.
    pub recode: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { node_cap: 10_000_000, alphabet_cap: 4096, recode: true }
    }
}

/// How a periodic-point set was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumPath {
    /// Recoded to consecutive-letter constraints, searched, then mapped back.
    Recoded,
    /// Searched directly on the original index set.
    Direct,
}

#[derive(Debug, Clone)]
pub struct PeriodicPoints {
    pub words: Vec<CyclicWord>,
    pub path: EnumPath,
    pub nodes_visited: u64,
}

/// Constraint between cyclic positions, checked once all of them are assigned.
enum Check {
    Pair(usize, usize),
    Triple(usize, usize, usize),
}

struct Search<'a> {
    n_letters: usize,
    rel: &'a [bool],
    checks_at: Vec<Vec<Check>>,
    cap: u64,
    nodes: u64,
    assign: Vec<u32>,
    out: Vec<Vec<u32>>,
}

impl Search<'_> {
    fn related(&self, a: u32, b: u32) -> bool {
        self.rel[a as usize * self.n_letters + b as usize]
    }

    fn check(&self, c: &Check) -> bool {
        match *c {
            Check::Pair(i, j) => self.related(self.assign[i], self.assign[j]),
            Check::Triple(i, j, k) => {
                self.related(self.assign[i], self.assign[j]) || self.related(self.assign[j], self.assign[k])
            }
        }
    }

    fn run(&mut self, pos: usize) -> Result<()> {
        if pos == self.assign.len() {
            self.out.push(self.assign.clone());
            return Ok(());
        }
        for letter in 0..self.n_letters as u32 {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::Resource { what: "enumeration search nodes".into(), cap: self.cap });
            }
            self.assign[pos] = letter;
            if self.checks_at[pos].iter().all(|c| self.check(c)) {
                self.run(pos + 1)?;
            }
        }
        Ok(())
    }
}

/// Registers each check at the largest position it mentions, so it fires as
/// soon as the prefix covers it.
fn schedule(len: usize, checks: Vec<Check>) -> Vec<Vec<Check>> {
    let mut at: Vec<Vec<Check>> = (0..len).map(|_| Vec::new()).collect();
    for c in checks {
        let last = match c {
            Check::Pair(i, j) => i.max(j),
            Check::Triple(i, j, k) => i.max(j).max(k),
        };
        at[last].push(c);
    }
    at
}

/// All points of period `p` of the shift space, sorted lexicographically on
/// letter indices.
pub fn enumerate_periodic(spec: &SubshiftSpec, p: usize, cfg: &EnumConfig) -> Result<PeriodicPoints> {
    if p == 0 {
        return Err(Error::shape("period must be >= 1"));
    }
    let (letters, rel) = spec.letter_table(cfg.alphabet_cap)?;
    let modp = |i: i64| i.rem_euclid(p as i64) as usize;

    let (checks, path, step) = match spec.family() {
        Family::XGmdelta { m, .. } => {
            let step = factorial_mod(*m, p as u64) as usize;
            if cfg.recode && step.gcd(&p) == 1 {
                let checks = (0..p).map(|k| Check::Pair(k, modp(k as i64 + 1))).collect();
                (checks, EnumPath::Recoded, step)
            } else {
                let checks = (0..p).map(|n| Check::Pair(n, modp((n + step) as i64))).collect();
                (checks, EnumPath::Direct, step)
            }
        }
        Family::Zcal | Family::Ycal => {
            let checks = (0..p as i64)
                .map(|n| Check::Triple(modp(n - 1), modp(n), modp(n + 1)))
                .collect();
            (checks, EnumPath::Direct, 1)
        }
    };

    let mut search = Search {
        n_letters: letters.len(),
        rel: &rel,
        checks_at: schedule(p, checks),
        cap: cfg.node_cap,
        nodes: 0,
        assign: vec![0; p],
        out: Vec::new(),
    };
    search.run(0)?;

    let mut raw = search.out;
    if path == EnumPath::Recoded {
        // y_k = x_{k·m! mod p}
        for y in raw.iter_mut() {
            let mut x = vec![0u32; p];
            for (k, &letter) in y.iter().enumerate() {
                x[(k * step) % p] = letter;
            }
            *y = x;
        }
    }
    raw.sort_unstable();
    raw.dedup();
    let words = raw
        .into_iter()
        .map(|idx| CyclicWord { letters: idx.into_iter().map(|i| letters[i as usize].clone()).collect() })
        .collect();
    Ok(PeriodicPoints { words, path, nodes_visited: search.nodes })
}

/// Largest alphabet for which a transfer matrix is formed.
pub const TRANSFER_MATRIX_CAP: u64 = 512;

#[derive(Debug, Clone, Serialize)]
pub struct PeriodicCount {
    pub count: u128,
    /// `gcd(m!, p)`: the index graph `n → n + m!` splits into this many cycles.
    pub cycles: u64,
    pub cycle_length: u64,
    pub provenance: String,
}

/// `|P_p|` for an `X(G,m,δ)` family via the transfer matrix `A[a][b] = [ρ(a,b) ≥ δ]`.
///
/// With `g = gcd(m!, p)` the positions split into `g` cycles of length `p/g`
/// (for `g = 1` this is the recoding `k ↦ k·m!`), so the count is
/// `trace(A^{p/g})^g`.
pub fn count_periodic(spec: &SubshiftSpec, p: u64) -> Result<PeriodicCount> {
    let m = match spec.family() {
        Family::XGmdelta { m, .. } => *m,
        _ => {
            return Err(Error::shape(format!(
                "transfer-matrix counting covers X(G,m,delta) families only, not {spec}"
            )))
        }
    };
    if p == 0 {
        return Err(Error::shape("period must be >= 1"));
    }
    let (_, rel) = spec.letter_table(TRANSFER_MATRIX_CAP)?;
    let n = spec.alphabet().order() as usize;
    let step = factorial_mod(m, p);
    let g = step.gcd(&p);
    let len = p / g;

    let a: Vec<u128> = rel.iter().map(|&b| b as u128).collect();
    let tr = trace_of_power(&a, n, len)?;
    let count = (0..g).try_fold(1u128, |acc, _| {
        acc.checked_mul(tr).ok_or_else(|| Error::Overflow(format!("|P_{p}({spec})| exceeds 128 bits")))
    })?;
    let provenance = if g == 1 {
        format!("trace(A^{p}) after recoding k -> k*{m}! mod {p}")
    } else {
        format!("trace(A^{len})^{g}: gcd({m}!, {p}) = {g} index cycles of length {len}")
    };
    Ok(PeriodicCount { count, cycles: g, cycle_length: len, provenance })
}

fn mat_mul(x: &[u128], y: &[u128], n: usize) -> Result<Vec<u128>> {
    let mut out = vec![0u128; n * n];
    for i in 0..n {
        for k in 0..n {
            let xik = x[i * n + k];
            if xik == 0 {
                continue;
            }
            for j in 0..n {
                let prod = xik
                    .checked_mul(y[k * n + j])
                    .and_then(|v| v.checked_add(out[i * n + j]))
                    .ok_or_else(|| Error::Overflow("transfer matrix power exceeds 128 bits".into()))?;
                out[i * n + j] = prod;
            }
        }
    }
    Ok(out)
}

fn trace_of_power(a: &[u128], n: usize, mut e: u64) -> Result<u128> {
    let mut result: Vec<u128> = (0..n * n).map(|i| (i / n == i % n) as u128).collect();
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &base, n)?;
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base, n)?;
        }
    }
    (0..n).try_fold(0u128, |acc, i| {
        acc.checked_add(result[i * n + i]).ok_or_else(|| Error::Overflow("trace exceeds 128 bits".into()))
    })
}

#[derive(Debug, Clone)]
pub struct OrbitDecomposition {
    /// Each orbit starts at its least rotation and proceeds by `σ`.
    pub orbits: Vec<Vec<CyclicWord>>,
    /// Every orbit has exactly `p` elements.
    pub free: bool,
}

/// Splits a set of period-`p` words into shift orbits.
pub fn orbit_decompose(words: &[CyclicWord], p: usize) -> Result<OrbitDecomposition> {
    if let Some(w) = words.iter().find(|w| w.period() != p) {
        return Err(Error::shape(format!("word of period {} in a set of period {p}", w.period())));
    }
    let members: HashSet<&CyclicWord> = words.iter().collect();
    let mut seen: HashSet<CyclicWord> = HashSet::new();
    let mut orbits = Vec::new();
    for w in words {
        if seen.contains(w) {
            continue;
        }
        let rep = w.canonical_rotation();
        let mut orbit = vec![rep.clone()];
        let mut cur = rep.shift(1);
        while cur != rep {
            orbit.push(cur.clone());
            cur = cur.shift(1);
        }
        if let Some(missing) = orbit.iter().find(|o| !members.contains(o)) {
            return Err(Error::shape(format!(
                "set is not shift-invariant: {:?} is missing",
                missing.letters
            )));
        }
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit);
    }
    orbits.sort();
    let free = orbits.iter().all(|o| o.len() == p);
    Ok(OrbitDecomposition { orbits, free })
}

/// The shift `σ` as a permutation of positions in `words`.
pub fn shift_permutation(words: &[CyclicWord]) -> Result<Vec<u32>> {
    let index: std::collections::HashMap<&CyclicWord, u32> =
        words.iter().enumerate().map(|(i, w)| (w, i as u32)).collect();
    words
        .iter()
        .map(|w| {
            index
                .get(&w.shift(1))
                .copied()
                .ok_or_else(|| Error::shape("word set is not closed under the shift"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(spec: &SubshiftSpec, p: usize) -> Vec<CyclicWord> {
        let letters: Vec<Element> = spec.alphabet().elements().collect();
        let n = letters.len();
        let mut out = Vec::new();
        let total = n.pow(p as u32);
        for code in 0..total {
            let mut c = code;
            let mut ls = vec![Element::scalar(0); p];
            for slot in ls.iter_mut().rev() {
                *slot = letters[c % n].clone();
                c /= n;
            }
            let w = CyclicWord::new(ls).unwrap();
            if spec.satisfies(&w).unwrap() {
                out.push(w);
            }
        }
        out
    }

    #[test]
    fn satisfies_examples() {
        let s1 = SubshiftSpec::sigma(1).unwrap();
        assert!(s1.satisfies(&CyclicWord::from_scalars(&[0, 1, 2]).unwrap()).unwrap());
        assert!(!s1.satisfies(&CyclicWord::from_scalars(&[0, 0, 1]).unwrap()).unwrap());
        let z = SubshiftSpec::zcal(8).unwrap();
        assert!(z.satisfies(&CyclicWord::from_scalars(&[0, 4]).unwrap()).unwrap());
        assert!(!z.satisfies(&CyclicWord::from_scalars(&[0, 1]).unwrap()).unwrap());
        let wrong = CyclicWord::new(vec![Element(vec![0, 0])]).unwrap();
        assert_eq!(s1.satisfies(&wrong).unwrap_err().reason(), "shape");
    }

    #[test]
    fn shift_laws() {
        let w = CyclicWord::from_scalars(&[0, 1, 2]).unwrap();
        assert_eq!(w.shift(1), CyclicWord::from_scalars(&[1, 2, 0]).unwrap());
        assert_eq!(w.shift(3), w);
        assert_eq!(w.shift(-1), w.shift(2));
        for a in -4..4 {
            for b in -4..4 {
                assert_eq!(w.shift(a).shift(b), w.shift(a + b));
            }
        }
    }

    #[test]
    fn sigma_small_periods() {
        let cfg = EnumConfig::default();
        let s1 = SubshiftSpec::sigma(1).unwrap();
        assert!(enumerate_periodic(&s1, 1, &cfg).unwrap().words.is_empty());
        let p3 = enumerate_periodic(&s1, 3, &cfg).unwrap();
        assert_eq!(p3.words, brute_force(&s1, 3));
        assert_eq!(p3.words.len(), 6);
    }

    #[test]
    fn recoded_matches_brute_force() {
        let s2 = SubshiftSpec::sigma(2).unwrap();
        let cfg = EnumConfig::default();
        let recoded = enumerate_periodic(&s2, 5, &cfg).unwrap();
        assert_eq!(recoded.path, EnumPath::Recoded);
        assert_eq!(recoded.words, brute_force(&s2, 5));
        assert_eq!(recoded.words.len(), 30);
        let direct = enumerate_periodic(&s2, 5, &EnumConfig { recode: false, ..cfg }).unwrap();
        assert_eq!(direct.path, EnumPath::Direct);
        assert_eq!(direct.words, recoded.words);
    }

    #[test]
    fn non_coprime_period_falls_back() {
        // 3! = 6 and p = 4 share a factor
        let s3 = SubshiftSpec::sigma(3).unwrap();
        let pts = enumerate_periodic(&s3, 4, &EnumConfig::default()).unwrap();
        assert_eq!(pts.path, EnumPath::Direct);
        assert_eq!(pts.words, brute_force(&s3, 4));
        let c = count_periodic(&s3, 4).unwrap();
        assert_eq!(c.count as usize, pts.words.len());
        assert_eq!(c.cycles, 2);
    }

    #[test]
    fn counts_for_sigma_one() {
        let s1 = SubshiftSpec::sigma(1).unwrap();
        let got: Vec<u128> = [2u64, 3, 5, 7, 11].iter().map(|&p| count_periodic(&s1, p).unwrap().count).collect();
        assert_eq!(got, vec![6, 6, 30, 126, 2046]);
    }

    #[test]
    fn proper_coloring_law() {
        let s1 = SubshiftSpec::sigma(1).unwrap();
        for len in 2..=9usize {
            let brute = brute_force(&s1, len).len() as i64;
            let law = 2i64.pow(len as u32) + 2 * if len % 2 == 0 { 1 } else { -1 };
            assert_eq!(brute, law);
            assert_eq!(count_periodic(&s1, len as u64).unwrap().count as i64, law);
        }
    }

    #[test]
    fn count_agrees_with_enumeration_exhaustively() {
        let alphabets: Vec<Alphabet> = vec![
            Alphabet::Cyclic(2),
            Alphabet::Cyclic(3),
            Alphabet::Cyclic(5),
            Alphabet::CircleGrid(4),
            Alphabet::CircleGrid(8),
        ];
        let cfg = EnumConfig::default();
        for a in alphabets {
            for m in 1..=3u32 {
                for delta in [Distance::new(1, 4), Distance::new(1, 2), Distance::from_integer(1)] {
                    let spec = SubshiftSpec::x_gmdelta(a.clone(), m, delta).unwrap();
                    for p in 1..=7usize {
                        let e = enumerate_periodic(&spec, p, &cfg).unwrap().words.len() as u128;
                        let c = count_periodic(&spec, p as u64).unwrap().count;
                        assert_eq!(e, c, "{spec} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let s1 = SubshiftSpec::sigma(1).unwrap();
        let cfg = EnumConfig::default();
        let p3 = enumerate_periodic(&s1, 3, &cfg).unwrap().words;
        let d = orbit_decompose(&p3, 3).unwrap();
        assert_eq!(d.orbits.len(), 2);
        assert!(d.free);
        let p5 = enumerate_periodic(&s1, 5, &cfg).unwrap().words;
        let d = orbit_decompose(&p5, 5).unwrap();
        assert_eq!(d.orbits.len(), 6);
        assert!(d.free);
        let d = orbit_decompose(&[], 5).unwrap();
        assert!(d.orbits.is_empty() && d.free);
        let mixed = vec![CyclicWord::from_scalars(&[0, 1]).unwrap(), CyclicWord::from_scalars(&[0, 1, 2]).unwrap()];
        assert_eq!(orbit_decompose(&mixed, 2).unwrap_err().reason(), "shape");
    }

    #[test]
    fn freeness_for_fixed_point_free_specs() {
        let cfg = EnumConfig::default();
        let specs = vec![
            SubshiftSpec::sigma(1).unwrap(),
            SubshiftSpec::sigma(2).unwrap(),
            SubshiftSpec::zcal(8).unwrap(),
            SubshiftSpec::ycal(8).unwrap(),
            SubshiftSpec::xsn(8, 1, Distance::new(1, 2)).unwrap(),
        ];
        for spec in specs {
            for p in [2usize, 3, 5, 7] {
                let words = enumerate_periodic(&spec, p, &cfg).unwrap().words;
                assert!(orbit_decompose(&words, p).unwrap().free, "{spec} p={p}");
            }
        }
    }

    #[test]
    fn zcal_and_ycal_match_brute_force() {
        let cfg = EnumConfig::default();
        for spec in [SubshiftSpec::zcal(8).unwrap(), SubshiftSpec::ycal(8).unwrap()] {
            for p in 1..=4 {
                assert_eq!(enumerate_periodic(&spec, p, &cfg).unwrap().words, brute_force(&spec, p));
            }
        }
    }

    #[test]
    fn node_cap_is_enforced() {
        let spec = SubshiftSpec::zcal(16).unwrap();
        let cfg = EnumConfig { node_cap: 100, ..EnumConfig::default() };
        assert_eq!(enumerate_periodic(&spec, 5, &cfg).unwrap_err().reason(), "resource");
        let small = EnumConfig { alphabet_cap: 4, ..EnumConfig::default() };
        assert_eq!(enumerate_periodic(&spec, 2, &small).unwrap_err().reason(), "resource");
    }

    #[test]
    fn text_form_round_trip() {
        let (a, w) = CyclicWord::parse_text("Z3:[0,1,2]").unwrap();
        assert_eq!(a, Alphabet::Cyclic(3));
        assert_eq!(w.to_text(&a), "Z3:[0,1,2]");
        let (a, w) = CyclicWord::parse_text("S^2:q=8:[[0,4],[4,0]]").unwrap();
        assert_eq!(w.to_text(&a), "S^2:q=8:[[0,4],[4,0]]");
        assert!(CyclicWord::parse_text("Z3:[0,3]").is_err());
    }

    #[test]
    fn zcal_rejects_non_grid() {
        assert!(SubshiftSpec::new(Alphabet::Cyclic(3), Family::Zcal).is_err());
        assert!(SubshiftSpec::x_gmdelta(Alphabet::Cyclic(3), 1, Distance::new(3, 2)).is_err());
        assert!(SubshiftSpec::x_gmdelta(Alphabet::Cyclic(3), 0, Distance::new(1, 2)).is_err());
    }
}

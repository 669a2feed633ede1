//! Sliding-block maps between the `X(G, m, δ)` tower, on finite windows.
//!
//! `θ_{m,m-1}` sums `m` letters spaced `(m-1)!` apart and is equivariant.
//! `η_{m-1,m}` is its right inverse, built from an anchor sequence `a`; it is
//! not equivariant, so it is only ever evaluated on windows of bi-infinite
//! sequences and never on cyclic words.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::alphabet::{Alphabet, Distance, Element, GroupOp};
use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::symbolic::CyclicWord;

/// Largest `m` accepted by the window maps (`m!` sets the window scale).
pub const MAX_TOWER_LEVEL: u32 = 10;

/// Inclusive range of absolute indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexRange {
    pub lo: i64,
    pub hi: i64,
}

impl IndexRange {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::shape(format!("empty index range [{lo}, {hi}]")));
        }
        Ok(IndexRange { lo, hi })
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, k: i64) -> bool {
        self.lo <= k && k <= self.hi
    }

    pub fn covers(&self, other: &IndexRange) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn union(&self, other: &IndexRange) -> IndexRange {
        IndexRange { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Finite view `x_{offset}, …, x_{offset+len-1}` of a bi-infinite sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    alphabet: Alphabet,
    offset: i64,
    letters: Vec<Element>,
}

impl Window {
    pub fn new(alphabet: Alphabet, offset: i64, letters: Vec<Element>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::shape("windows are nonempty"));
        }
        for e in &letters {
            alphabet.validate(e)?;
        }
        Ok(Window { alphabet, offset, letters })
    }

    pub fn from_scalars(alphabet: Alphabet, offset: i64, values: &[u32]) -> Result<Self> {
        Self::new(alphabet, offset, values.iter().map(|&v| Element::scalar(v)).collect())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn letters(&self) -> &[Element] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn range(&self) -> IndexRange {
        IndexRange { lo: self.offset, hi: self.offset + self.letters.len() as i64 - 1 }
    }

    pub fn get(&self, k: i64) -> Option<&Element> {
        let i = k - self.offset;
        if i < 0 {
            return None;
        }
        self.letters.get(i as usize)
    }

    fn need(&self, needed: IndexRange) -> Result<()> {
        let have = self.range();
        if have.covers(&needed) {
            Ok(())
        } else {
            Err(Error::NeededRange { need_lo: needed.lo, need_hi: needed.hi, have_lo: have.lo, have_hi: have.hi })
        }
    }

    fn at(&self, k: i64) -> &Element {
        self.get(k).expect("index checked against window coverage")
    }

    /// `σ^k` applied to the underlying sequence: `(σ^k x)_i = x_{i+k}`.
    pub fn shift(&self, k: i64) -> Window {
        Window { alphabet: self.alphabet.clone(), offset: self.offset - k, letters: self.letters.clone() }
    }

    /// Restriction to a subrange.
    pub fn restrict(&self, r: IndexRange) -> Result<Window> {
        self.need(r)?;
        let start = (r.lo - self.offset) as usize;
        Ok(Window {
            alphabet: self.alphabet.clone(),
            offset: r.lo,
            letters: self.letters[start..start + r.len()].to_vec(),
        })
    }

    /// Whether `ρ(x_n, x_{n+gap}) ≥ δ` at every visible pair.
    pub fn satisfies_gap(&self, gap: u64, delta: Distance) -> bool {
        self.first_gap_violation(gap, delta).is_none()
    }

    pub fn first_gap_violation(&self, gap: u64, delta: Distance) -> Option<i64> {
        let gap = gap as usize;
        (0..self.letters.len().saturating_sub(gap))
            .find(|&i| self.alphabet.metric_unchecked(&self.letters[i], &self.letters[i + gap]) < delta)
            .map(|i| self.offset + i as i64)
    }
}

/// The anchor `a = (a_k)` used by `η`: a pure rule from index to letter.
#[derive(Clone)]
pub enum AnchorSeq {
    /// `a_k = 0` for all `k`.
    Identity,
    Constant(Element),
    /// Pseudo-random letters, a pure function of `(seed, k)`.
    Seeded(u64),
    Custom(Arc<dyn Fn(i64) -> Element + Send + Sync>),
}

impl fmt::Debug for AnchorSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnchorSeq::Identity => write!(f, "Identity"),
            AnchorSeq::Constant(e) => write!(f, "Constant({e})"),
            AnchorSeq::Seeded(s) => write!(f, "Seeded({s})"),
            AnchorSeq::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl AnchorSeq {
    pub fn at(&self, alphabet: &Alphabet, k: i64) -> Element {
        match self {
            AnchorSeq::Identity => alphabet.zero(),
            AnchorSeq::Constant(e) => e.clone(),
            AnchorSeq::Seeded(seed) => {
                let h = splitmix64(seed ^ splitmix64(k as u64));
                alphabet.element_at(h % alphabet.order())
            }
            AnchorSeq::Custom(rule) => rule(k),
        }
    }
}

fn check_level(m: u32) -> Result<()> {
    if !(2..=MAX_TOWER_LEVEL).contains(&m) {
        return Err(Error::shape(format!("tower level m must be in 2..={MAX_TOWER_LEVEL}, got {m}")));
    }
    Ok(())
}

/// `θ_{m,m-1}`: `y_k = Σ_{i=0}^{m-1} x_{k + i·(m-1)!}`.
///
/// The output window is shorter than the input by `(m-1)·(m-1)!`.
pub fn theta_apply(m: u32, w: &Window) -> Result<Window> {
    check_level(m)?;
    let step = factorial(m - 1)? as i64;
    let span = (m as i64 - 1) * step;
    let have = w.range();
    if (w.len() as i64) <= span {
        return Err(Error::NeededRange { need_lo: have.lo, need_hi: have.lo + span, have_lo: have.lo, have_hi: have.hi });
    }
    let a = &w.alphabet;
    let letters = (have.lo..=have.hi - span)
        .map(|k| {
            (0..m as i64).fold(a.zero(), |acc, i| a.op_unchecked(&acc, w.at(k + i * step), GroupOp::Add))
        })
        .collect();
    Ok(Window { alphabet: a.clone(), offset: have.lo, letters })
}

/// `θ_{m,n} = θ_{n+1,n} ∘ ⋯ ∘ θ_{m,m-1}`, by literal composition.
pub fn theta_compose(m: u32, n: u32, w: &Window) -> Result<Window> {
    if n == 0 || n >= m {
        return Err(Error::shape(format!("theta_{{m,n}} needs m > n >= 1, got m={m}, n={n}")));
    }
    let mut cur = w.clone();
    for level in (n + 1..=m).rev() {
        cur = theta_apply(level, &cur)?;
    }
    Ok(cur)
}

/// Position of `k` in the block decomposition `k = n·m! + j`, `0 ≤ j < m!`.
fn block(k: i64, mf: i64) -> (i64, i64) {
    (k.div_euclid(mf), k.rem_euclid(mf))
}

/// The `x`-indices `y_k` depends on, as an inclusive range, or `None` when
/// `y_k` is an anchor letter.
fn eta_dependency(m: u32, k: i64) -> Result<Option<IndexRange>> {
    let step = factorial(m - 1)? as i64;
    let mf = m as i64 * step;
    let base_cut = (m as i64 - 1) * step;
    let base = |j: i64| -> Option<IndexRange> {
        (j >= base_cut).then(|| IndexRange { lo: j - base_cut, hi: j - base_cut })
    };
    let (n, j) = block(k, mf);
    let dep = match n {
        0 => base(j),
        n if n > 0 => {
            let sums = IndexRange { lo: j, hi: (n - 1) * mf + step + j };
            Some(base(j).map_or(sums, |b| b.union(&sums)))
        }
        n => {
            let sums = IndexRange { lo: n * mf + j, hi: -mf + step + j };
            Some(base(j).map_or(sums, |b| b.union(&sums)))
        }
    };
    Ok(dep)
}

/// Smallest range of `x`-indices that determines `η_{m-1,m}(x)` on `requested`;
/// `None` if the requested letters are all anchor letters.
pub fn eta_input_window(m: u32, requested: IndexRange) -> Result<Option<IndexRange>> {
    check_level(m)?;
    let mut acc: Option<IndexRange> = None;
    for k in requested.iter() {
        if let Some(d) = eta_dependency(m, k)? {
            acc = Some(acc.map_or(d, |a| a.union(&d)));
        }
    }
    Ok(acc)
}

/// `η_{m-1,m}(x)` on `requested`, by the four-case block formula with
/// `F = (m-1)!`, `M = m!`:
///
/// * `0 ≤ k < (m-1)F`: `y_k = a_k`;
/// * `(m-1)F ≤ k < M`: `y_k = x_{k-(m-1)F} - Σ_{i=1}^{m-1} a_{k-iF}`;
/// * `k = nM + j`, `n > 0`: `y_k = Σ_{i=0}^{n-1} (x_{iM+F+j} - x_{iM+j}) + y_j`;
/// * `k = nM + j`, `n < 0`: `y_k = Σ_{i=n}^{-1} (x_{iM+j} - x_{iM+F+j}) + y_j`.
pub fn eta_apply(m: u32, anchor: &AnchorSeq, x: &Window, requested: IndexRange) -> Result<Window> {
    if let Some(needed) = eta_input_window(m, requested)? {
        x.need(needed)?;
    }
    let a = &x.alphabet;
    let step = factorial(m - 1)? as i64;
    let mf = m as i64 * step;
    let base_cut = (m as i64 - 1) * step;
    let add = |u: &Element, v: &Element| a.op_unchecked(u, v, GroupOp::Add);
    let sub = |u: &Element, v: &Element| a.op_unchecked(u, v, GroupOp::Sub);

    let base = |j: i64| -> Element {
        if j < base_cut {
            anchor.at(a, j)
        } else {
            (1..m as i64).fold(x.at(j - base_cut).clone(), |acc, i| sub(&acc, &anchor.at(a, j - i * step)))
        }
    };

    let letters = requested
        .iter()
        .map(|k| {
            let (n, j) = block(k, mf);
            let mut y = base(j);
            if n > 0 {
                for i in 0..n {
                    y = add(&y, &sub(x.at(i * mf + step + j), x.at(i * mf + j)));
                }
            } else if n < 0 {
                for i in n..0 {
                    y = add(&y, &sub(x.at(i * mf + j), x.at(i * mf + step + j)));
                }
            }
            y
        })
        .collect();
    Ok(Window { alphabet: a.clone(), offset: requested.lo, letters })
}

/// `(x_k) ↦ ((x_k, x_{k+1}))`, the sliding pair code into the square alphabet.
pub fn pair_embed(w: &Window) -> Result<Window> {
    if w.len() < 2 {
        return Err(Error::shape("pair_embed needs a window of length >= 2"));
    }
    let alphabet = Alphabet::product(vec![w.alphabet.clone(), w.alphabet.clone()])?;
    let letters = w.letters.windows(2).map(|pair| concat(&pair[0], &pair[1])).collect();
    Ok(Window { alphabet, offset: w.offset, letters })
}

/// The pair code on a periodic point, indices read cyclically.
pub fn pair_embed_cyclic(w: &CyclicWord) -> CyclicWord {
    let letters = (0..w.period() as i64).map(|k| concat(w.letter(k), w.letter(k + 1))).collect();
    CyclicWord::new(letters).expect("period >= 1")
}

/// Left inverse of the pair code: keep the first factor.
pub fn pair_project_cyclic(w: &CyclicWord, factor_rank: usize) -> CyclicWord {
    let letters = w.letters().iter().map(|e| Element(e.0[..factor_rank].to_vec())).collect();
    CyclicWord::new(letters).expect("period >= 1")
}

/// Canonical inclusion `S^r → S^{r+extra}` padding with zero coordinates;
/// the max metric is unchanged.
pub fn pad_embed_cyclic(w: &CyclicWord, extra: usize) -> CyclicWord {
    let letters = w
        .letters()
        .iter()
        .map(|e| {
            let mut c = e.0.clone();
            c.extend(std::iter::repeat_n(0, extra));
            Element(c)
        })
        .collect();
    CyclicWord::new(letters).expect("period >= 1")
}

fn concat(a: &Element, b: &Element) -> Element {
    let mut c = a.0.clone();
    c.extend_from_slice(&b.0);
    Element(c)
}

/// A random window on `range` satisfying `ρ(x_n, x_{n+gap}) ≥ δ` at every
/// visible pair, sampled left to right.
pub fn random_valid_window<R: Rng + ?Sized>(
    alphabet: &Alphabet,
    gap: u64,
    delta: Distance,
    range: IndexRange,
    rng: &mut R,
) -> Result<Window> {
    let order = alphabet.order();
    let gap = gap as usize;
    let mut letters: Vec<Element> = Vec::with_capacity(range.len());
    for i in 0..range.len() {
        let e = if i >= gap {
            let prev = &letters[i - gap];
            let allowed: Vec<Element> =
                alphabet.elements().filter(|c| alphabet.metric_unchecked(c, prev) >= delta).collect();
            if allowed.is_empty() {
                return Err(Error::shape(format!("no letter of {alphabet} is {delta}-far from {prev}")));
            }
            allowed[rng.gen_range(0..allowed.len())].clone()
        } else {
            alphabet.element_at(rng.gen_range(0..order))
        };
        letters.push(e);
    }
    Window::new(alphabet.clone(), range.lo, letters)
}

//! Finite abelian alphabets with translation-invariant metrics.
//!
//! Three kinds of letters are supported: a cyclic group `Z_n` with the
//! discrete metric, a grid discretization of the circle `R/2Z` with `q`
//! equally spaced points, and finite products of those with the max metric.
//! All distances are exact rationals.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact distance value.
pub type Distance = Rational64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `Z_n` with the discrete metric.
    Cyclic(u32),
    /// `q` grid points on the circle of circumference 2; point `j` sits at `2j/q`.
    CircleGrid(u32),
    /// Product with the max metric. Factors are never themselves products.
    Product(Vec<Alphabet>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOp {
    Add,
    Sub,
}

/// A letter: one residue per leaf factor of its alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub Vec<u32>);

impl Element {
    pub fn scalar(v: u32) -> Self {
        Element(vec![v])
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "[")?;
            for (i, c) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")
        }
    }
}

impl Alphabet {
    pub fn cyclic(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::shape(format!("cyclic group order must be >= 2, got {n}")));
        }
        Ok(Alphabet::Cyclic(n))
    }

    pub fn circle_grid(q: u32) -> Result<Self> {
        if q < 4 || !q.is_multiple_of(4) {
            return Err(Error::shape(format!(
                "circle grid resolution must be a positive multiple of 4, got {q}"
            )));
        }
        Ok(Alphabet::CircleGrid(q))
    }

    /// Builds a product, flattening nested products.
    pub fn product(factors: Vec<Alphabet>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::shape("product alphabet needs at least one factor"));
        }
        let mut leaves = Vec::new();
        for f in factors {
            match f {
                Alphabet::Product(inner) => leaves.extend(inner),
                leaf => leaves.push(leaf),
            }
        }
        Ok(Alphabet::Product(leaves))
    }

    /// `CircleGrid(q)^n`.
    pub fn circle_power(q: u32, n: usize) -> Result<Self> {
        let leaf = Alphabet::circle_grid(q)?;
        if n == 1 {
            return Ok(leaf);
        }
        Alphabet::product(vec![leaf; n])
    }

    pub fn leaves(&self) -> &[Alphabet] {
        match self {
            Alphabet::Product(v) => v,
            _ => std::slice::from_ref(self),
        }
    }

    pub fn rank(&self) -> usize {
        self.leaves().len()
    }

    fn leaf_order(leaf: &Alphabet) -> u32 {
        match leaf {
            Alphabet::Cyclic(n) | Alphabet::CircleGrid(n) => *n,
            Alphabet::Product(_) => unreachable!("products are flattened"),
        }
    }

    /// Number of letters.
    pub fn order(&self) -> u64 {
        self.leaves()
            .iter()
            .map(|l| Self::leaf_order(l) as u64)
            .product()
    }

    pub fn is_circle_grid(&self) -> bool {
        self.leaves().iter().all(|l| matches!(l, Alphabet::CircleGrid(_)))
    }

    pub fn diameter(&self) -> Distance {
        // Both leaf kinds have diameter exactly 1.
        Distance::from_integer(1)
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.rank()])
    }

    pub fn validate(&self, e: &Element) -> Result<()> {
        let leaves = self.leaves();
        if e.0.len() != leaves.len() {
            return Err(Error::shape(format!(
                "letter {e} has {} coordinates, alphabet {self} expects {}",
                e.0.len(),
                leaves.len()
            )));
        }
        for (c, l) in e.0.iter().zip(leaves) {
            if *c >= Self::leaf_order(l) {
                return Err(Error::shape(format!("letter {e} is not reduced for alphabet {self}")));
            }
        }
        Ok(())
    }

    /// Mixed-radix index, first coordinate most significant, so index order
    /// coincides with lexicographic order on coordinates.
    pub fn index_of(&self, e: &Element) -> u64 {
        let mut idx = 0u64;
        for (c, l) in e.0.iter().zip(self.leaves()) {
            idx = idx * Self::leaf_order(l) as u64 + *c as u64;
        }
        idx
    }

    pub fn element_at(&self, mut idx: u64) -> Element {
        let leaves = self.leaves();
        let mut coords = vec![0u32; leaves.len()];
        for (slot, l) in coords.iter_mut().zip(leaves).rev() {
            let n = Self::leaf_order(l) as u64;
            *slot = (idx % n) as u32;
            idx /= n;
        }
        Element(coords)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// Componentwise modular sum or difference.
    pub fn group_op(&self, a: &Element, b: &Element, op: GroupOp) -> Result<Element> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.op_unchecked(a, b, op))
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.group_op(a, b, GroupOp::Add)
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element> {
        self.group_op(a, b, GroupOp::Sub)
    }

    pub(crate) fn op_unchecked(&self, a: &Element, b: &Element, op: GroupOp) -> Element {
        let coords = a
            .0
            .iter()
            .zip(&b.0)
            .zip(self.leaves())
            .map(|((&x, &y), l)| {
                let n = Self::leaf_order(l) as u64;
                let (x, y) = (x as u64, y as u64);
                match op {
                    GroupOp::Add => ((x + y) % n) as u32,
                    GroupOp::Sub => ((x + n - y) % n) as u32,
                }
            })
            .collect();
        Element(coords)
    }

    /// Translation-invariant metric: discrete on cyclic factors, arc length
    /// on circle grids, max over product factors.
    pub fn metric(&self, a: &Element, b: &Element) -> Result<Distance> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.metric_unchecked(a, b))
    }

    pub(crate) fn metric_unchecked(&self, a: &Element, b: &Element) -> Distance {
        let mut best = Distance::from_integer(0);
        for ((&x, &y), l) in a.0.iter().zip(&b.0).zip(self.leaves()) {
            let d = match l {
                Alphabet::Cyclic(_) => Distance::from_integer((x != y) as i64),
                Alphabet::CircleGrid(q) => {
                    let q = *q as i64;
                    let diff = (x as i64 - y as i64).rem_euclid(q);
                    Distance::new(2 * diff.min(q - diff), q)
                }
                Alphabet::Product(_) => unreachable!("products are flattened"),
            };
            if d > best {
                best = d;
            }
        }
        best
    }

    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        let e = if s.starts_with('[') {
            let coords: Vec<u32> =
                serde_json::from_str(s).map_err(|e| Error::parse(format!("letter {s:?}: {e}")))?;
            Element(coords)
        } else {
            let v = s
                .parse::<u32>()
                .map_err(|_| Error::parse(format!("letter {s:?} is not an integer")))?;
            Element::scalar(v)
        };
        self.validate(&e)?;
        Ok(e)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Cyclic(n) => write!(f, "Z{n}"),
            Alphabet::CircleGrid(q) => write!(f, "S:q={q}"),
            Alphabet::Product(leaves) => {
                let first = &leaves[0];
                if leaves.iter().all(|l| l == first) {
                    match first {
                        Alphabet::CircleGrid(q) => write!(f, "S^{}:q={q}", leaves.len()),
                        Alphabet::Cyclic(n) => write!(f, "Z{n}^{}", leaves.len()),
                        Alphabet::Product(_) => unreachable!(),
                    }
                } else {
                    for (i, l) in leaves.iter().enumerate() {
                        if i > 0 {
                            write!(f, "x")?;
                        }
                        write!(f, "{l}")?;
                    }
                    Ok(())
                }
            }
        }
    }
}

impl FromStr for Alphabet {
    type Err = Error;

    /// Accepts `Z3`, `Z5^2`, `S:q=8`, `S^2:q=8` and `x`-separated products
    /// such as `Z3xS:q=8`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('x') {
            let factors = s
                .split('x')
                .map(|part| part.parse::<Alphabet>())
                .collect::<Result<Vec<_>>>()?;
            return Alphabet::product(factors);
        }
        let bad = || Error::parse(format!("unrecognized alphabet {s:?}"));
        if let Some(rest) = s.strip_prefix('S') {
            let (power, q) = match rest.split_once(":q=") {
                Some((pw, q)) => (pw, q),
                None => return Err(bad()),
            };
            let q: u32 = q.parse().map_err(|_| bad())?;
            let n: usize = if power.is_empty() {
                1
            } else {
                power.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
            };
            if n == 0 {
                return Err(bad());
            }
            return Alphabet::circle_power(q, n);
        }
        if let Some(rest) = s.strip_prefix('Z') {
            let (order, power) = match rest.split_once('^') {
                Some((o, pw)) => (o, pw.parse::<usize>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let n: u32 = order.parse().map_err(|_| bad())?;
            let leaf = Alphabet::cyclic(n)?;
            return match power {
                0 => Err(bad()),
                1 => Ok(leaf),
                k => Alphabet::product(vec![leaf; k]),
            };
        }
        Err(bad())
    }
}

impl Serialize for Alphabet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Alphabet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses `a/b` or an integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<Distance> {
    let s = s.trim();
    let bad = || Error::parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Distance::new(n, d))
        }
        None => Ok(Distance::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

//! Cubical approximations of period-`p` points of circle shift spaces.
//!
//! A period-`p` point over `S^N` is a point of the torus `(S^N)^p`. At grid
//! resolution `q` the approximation keeps the grid points satisfying the
//! family predicate (read cyclically) and every elementary cube all of whose
//! corners are kept. The letter shift acts by rotating the `p` blocks of
//! coordinates. This is an inner approximation at resolution `q`, not a
//! homotopy model; compare resolutions with [`stability_check`].

use std::fmt;

use serde::Serialize;

use crate::alphabet::{Alphabet, Distance, Element};
use crate::arith::require_prime;
use crate::complex::{Cube, CubicalCells, EquivariantComplex, FreeReport, TorusGrid};
use crate::error::{Error, Result};
use crate::homology::{betti_of, BettiVector};
use crate::index::{antipodal_cycle, EquivariantMapCert};
use crate::symbolic::{enumerate_periodic, CyclicWord, EnumConfig, SubshiftSpec};

/// Default cap on the total number of cells.
pub const DEFAULT_CELL_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ApproxFamily {
    /// `Z`: at every index one adjacent pair is `1/2`-far.
    Zcal,
    /// `X(S^N, 1, δ)`.
    Xsn { n: usize, delta: Distance },
    /// The whole torus `(S^1)^p`, with no constraint.
    Unconstrained,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusGridSpec {
    pub p: u32,
    pub q: u32,
    pub family: ApproxFamily,
}

impl TorusGridSpec {
    /// `q ≥ 8` with `4 | q`; for `X(S^N,1,δ)`, `δ` a multiple of `2/q` in `(0, 1]`.
    pub fn new(p: u32, q: u32, family: ApproxFamily) -> Result<Self> {
        require_prime(p as u64, "period p")?;
        if q < 8 || !q.is_multiple_of(4) {
            return Err(Error::shape(format!("grid resolution must be a multiple of 4 and >= 8, got {q}")));
        }
        if let ApproxFamily::Xsn { n, delta } = &family {
            if *n == 0 {
                return Err(Error::shape("X(S^N,1,delta) needs N >= 1"));
            }
            let steps = *delta * Distance::from_integer(q as i64 / 2);
            if !steps.is_integer() || *delta <= Distance::from_integer(0) || *delta > Distance::from_integer(1) {
                return Err(Error::shape(format!("delta = {delta} is not a grid-aligned multiple of 2/{q} in (0, 1]")));
            }
        }
        Ok(TorusGridSpec { p, q, family })
    }

    pub fn zcal(p: u32, q: u32) -> Result<Self> {
        Self::new(p, q, ApproxFamily::Zcal)
    }

    pub fn xsn(p: u32, q: u32, n: usize, delta: Distance) -> Result<Self> {
        Self::new(p, q, ApproxFamily::Xsn { n, delta })
    }

    pub fn unconstrained(p: u32, q: u32) -> Result<Self> {
        Self::new(p, q, ApproxFamily::Unconstrained)
    }

    /// Coordinates per letter.
    pub fn block_rank(&self) -> usize {
        match &self.family {
            ApproxFamily::Xsn { n, .. } => *n,
            _ => 1,
        }
    }

    pub fn alphabet(&self) -> Result<Alphabet> {
        Alphabet::circle_power(self.q, self.block_rank())
    }

    /// The shift space whose periodic points are the kept vertices.
    pub fn subshift(&self) -> Result<Option<SubshiftSpec>> {
        Ok(match &self.family {
            ApproxFamily::Zcal => Some(SubshiftSpec::zcal(self.q)?),
            ApproxFamily::Xsn { n, delta } => Some(SubshiftSpec::xsn(self.q, *n, *delta)?),
            ApproxFamily::Unconstrained => None,
        })
    }

    pub fn grid(&self) -> Result<TorusGrid> {
        TorusGrid::new(self.p, self.block_rank() as u32, self.q)
    }

    pub fn with_resolution(&self, q: u32) -> Result<Self> {
        Self::new(self.p, q, self.family.clone())
    }
}

impl fmt::Display for TorusGridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            ApproxFamily::Zcal => write!(f, "P_{}(Z) at q={}", self.p, self.q),
            ApproxFamily::Xsn { n, delta } => write!(f, "P_{}(X(S^{n},1,{delta})) at q={}", self.p, self.q),
            ApproxFamily::Unconstrained => write!(f, "torus (S^1)^{} at q={}", self.p, self.q),
        }
    }
}

fn word_code(grid: &TorusGrid, w: &CyclicWord) -> u64 {
    let coords: Vec<u32> = w.letters().iter().flat_map(|e| e.coords().iter().copied()).collect();
    grid.encode(&coords)
}

fn code_word(grid: &TorusGrid, code: u64) -> CyclicWord {
    let letters = grid.letters(code).into_iter().map(Element).collect();
    CyclicWord::new(letters).expect("p >= 1")
}

/// Grid codes of the kept vertices, increasing.
pub fn vertex_codes(spec: &TorusGridSpec) -> Result<Vec<u64>> {
    let grid = spec.grid()?;
    let mut codes: Vec<u64> = match spec.subshift()? {
        None => (0..grid.n_points()).collect(),
        Some(sub) => {
            let cfg = EnumConfig { node_cap: 50_000_000, ..EnumConfig::default() };
            let pts = enumerate_periodic(&sub, spec.p as usize, &cfg)?;
            pts.words.iter().map(|w| word_code(&grid, w)).collect()
        }
    };
    codes.sort_unstable();
    Ok(codes)
}

/// The cubical approximation. Fails with a resource error rather than
/// truncating when more than `cap` cells would be built.
pub fn build_approx(spec: &TorusGridSpec, cap: u64) -> Result<EquivariantComplex> {
    let grid = spec.grid()?;
    let alphabet = spec.alphabet()?;
    let points = vertex_codes(spec)?;
    let mut total = points.len() as u64;
    let over = |total: u64| Error::Resource { what: format!("{total}+ cells of {spec}"), cap };
    if total > cap {
        return Err(over(total));
    }
    let mut cells = CubicalCells {
        grid,
        points,
        by_dim: Vec::new(),
    };
    let n = cells.points.len() as u32;
    cells.by_dim.push((0..n).map(|base| Cube { base, mask: 0 }).collect());
    // (v, S ∪ {i}) is kept iff (v, S) and (v + e_i, S) are, for i above every direction of S
    loop {
        let prev = cells.by_dim.last().expect("dimension 0 exists");
        let mut next = Vec::new();
        for cube in prev {
            let lowest_new = if cube.mask == 0 { 0 } else { 32 - cube.mask.leading_zeros() };
            let base_code = cells.points[cube.base as usize];
            for i in lowest_new..grid.dims() {
                let Some(up) = cells.vertex_of(grid.step(base_code, i)) else { continue };
                if cells.by_dim.last().unwrap().binary_search(&Cube { base: up, mask: cube.mask }).is_ok() {
                    next.push(Cube { base: cube.base, mask: cube.mask | 1 << i });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        total += next.len() as u64;
        if total > cap {
            return Err(over(total));
        }
        next.sort_unstable();
        cells.by_dim.push(next);
    }
    let labels = cells.points.iter().map(|&c| code_word(&grid, c).to_text(&alphabet)).collect();
    EquivariantComplex::new_cubical(cells, labels)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproxProfile {
    pub space: String,
    pub p: u32,
    pub q: u32,
    pub vertices: usize,
    pub cells_by_dim: Vec<usize>,
    pub free: FreeReport,
    pub betti: BettiVector,
}

pub fn betti_profile(spec: &TorusGridSpec, field: u64, cap: u64) -> Result<ApproxProfile> {
    let c = build_approx(spec, cap)?;
    profile_of(spec, &c, field)
}

pub fn profile_of(spec: &TorusGridSpec, c: &EquivariantComplex, field: u64) -> Result<ApproxProfile> {
    Ok(ApproxProfile {
        space: format!("approximation of {spec}"),
        p: spec.p,
        q: spec.q,
        vertices: c.n_vertices(),
        cells_by_dim: c.cell_counts(),
        free: c.verify_free_action(),
        betti: betti_of(c, field)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub coarse: ApproxProfile,
    pub fine: ApproxProfile,
    /// Same reduced Betti numbers at `q` and `2q`.
    pub agree: bool,
}

fn trimmed(b: &BettiVector) -> (u64, Vec<u64>) {
    let mut r = b.reduced.clone();
    while r.last() == Some(&0) {
        r.pop();
    }
    (b.reduced_minus_one, r)
}

/// Betti profiles at `q` and `2q`, compared.
pub fn stability_check(spec: &TorusGridSpec, field: u64, cap: u64) -> Result<StabilityReport> {
    let coarse = betti_profile(spec, field, cap)?;
    let fine = betti_profile(&spec.with_resolution(2 * spec.q)?, field, cap)?;
    let agree = trimmed(&coarse.betti) == trimmed(&fine.betti);
    Ok(StabilityReport { coarse, fine, agree })
}

/// Whether doubling every coordinate maps the vertices at `q` into the
/// vertices at `2q`.
pub fn refinement_inclusion(spec: &TorusGridSpec) -> Result<bool> {
    let coarse_grid = spec.grid()?;
    let fine_spec = spec.with_resolution(2 * spec.q)?;
    let fine_grid = fine_spec.grid()?;
    let fine = vertex_codes(&fine_spec)?;
    Ok(vertex_codes(spec)?.into_iter().all(|c| {
        let doubled: Vec<u32> = coarse_grid.coords(c).iter().map(|x| 2 * x).collect();
        fine.binary_search(&fine_grid.encode(&doubled)).is_ok()
    }))
}

/// `E_1 Z_2 → P_2(Z)` approximation at resolution `q`: the `q`-cycle with
/// the antipodal action mapped by `x ↦ (x, x + offset)`. The canonical
/// choice is `offset = q/2`.
pub fn p2_cycle_certificate(q: u32, offset: u32) -> Result<EquivariantMapCert> {
    let alphabet = Alphabet::circle_grid(q)?;
    antipodal_cycle(q)?;
    let vertex_map = (0..q)
        .map(|x| {
            let w = CyclicWord::from_scalars(&[x, (x + offset) % q])?;
            Ok(w.to_text(&alphabet))
        })
        .collect::<Result<Vec<String>>>()?;
    Ok(EquivariantMapCert {
        p: 2,
        n: 1,
        domain: format!("antipodal_cycle({q})"),
        vertex_map,
        target_ref: format!("approximation of P_2(Z) at q={q}"),
    })
}

pub fn canonical_certificate_p2(q: u32) -> Result<EquivariantMapCert> {
    if !q.is_multiple_of(4) {
        return Err(Error::shape(format!("canonical certificate needs 4 | q, got {q}")));
    }
    p2_cycle_certificate(q, q / 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbedCheck {
    pub p: u32,
    pub q: u32,
    pub words: usize,
    /// First `Z` word whose pair code violates the target predicate.
    pub counterexample: Option<String>,
    /// First pair code that is not recovered by projecting to the first factor.
    pub not_injective: Option<String>,
}

/// `(x_k) ↦ ((x_k, x_{k+1}))` sends every period-`p` grid word of `Z` into
/// `X(S^2, 1, 1/2)`, injectively.
pub fn pair_embed_check(p: u32, q: u32) -> Result<EmbedCheck> {
    use crate::sequence_maps::{pair_embed_cyclic, pair_project_cyclic};
    let spec = TorusGridSpec::zcal(p, q)?;
    let source = spec.subshift()?.expect("Z has a predicate");
    let target = SubshiftSpec::xsn(q, 2, Distance::new(1, 2))?;
    let cfg = EnumConfig { node_cap: 50_000_000, ..EnumConfig::default() };
    let words = enumerate_periodic(&source, p as usize, &cfg)?.words;
    let mut counterexample = None;
    let mut not_injective = None;
    for w in &words {
        let img = pair_embed_cyclic(w);
        if counterexample.is_none() && !target.satisfies(&img)? {
            counterexample = Some(w.to_text(source.alphabet()));
        }
        if not_injective.is_none() && &pair_project_cyclic(&img, 1) != w {
            not_injective = Some(w.to_text(source.alphabet()));
        }
    }
    Ok(EmbedCheck { p, q, words: words.len(), counterexample, not_injective })
}

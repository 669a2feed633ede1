//! JSON exchange format for equivariant complexes.
//!
//! ```json
//! {"p": 3, "kind": "simplicial", "vertex_labels": ["0", "1", "2"],
//!  "maximal_cells": [[0], [1], [2]], "generator": [1, 2, 0]}
//! ```
//!
//! Cubical files add `grid` and `points` (grid codes, one per vertex); the
//! generator must then be the letter shift.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Cells, Cube, CubicalCells, EquivariantComplex, TorusGrid};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    Simplicial,
    Cubical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub p: u32,
    pub kind: ComplexKind,
    pub vertex_labels: Vec<String>,
    pub maximal_cells: Vec<Vec<u32>>,
    pub generator: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<TorusGrid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<u64>>,
}

impl ComplexFile {
    pub fn from_complex(c: &EquivariantComplex) -> Self {
        let (kind, grid, points) = match c.cells() {
            Cells::Simplicial(_) => (ComplexKind::Simplicial, None, None),
            Cells::Cubical(cc) => (ComplexKind::Cubical, Some(cc.grid), Some(cc.points.clone())),
        };
        ComplexFile {
            p: c.p(),
            kind,
            vertex_labels: c.labels().to_vec(),
            maximal_cells: c.maximal_cells(),
            generator: c.action().to_vec(),
            grid,
            points,
        }
    }

    pub fn into_complex(self) -> Result<EquivariantComplex> {
        match self.kind {
            ComplexKind::Simplicial => {
                if self.grid.is_some() || self.points.is_some() {
                    return Err(Error::shape("simplicial complexes take no grid or points"));
                }
                EquivariantComplex::from_maximal_simplices(self.p, self.vertex_labels, self.generator, &self.maximal_cells)
            }
            ComplexKind::Cubical => {
                let grid = self.grid.ok_or_else(|| Error::shape("cubical complex needs a grid"))?;
                let grid = TorusGrid::new(grid.blocks, grid.block_rank, grid.q)?;
                let points = self.points.ok_or_else(|| Error::shape("cubical complex needs points"))?;
                if grid.blocks != self.p {
                    return Err(Error::shape(format!("grid has {} letters but p = {}", grid.blocks, self.p)));
                }
                if points.len() != self.vertex_labels.len() {
                    return Err(Error::shape("one grid point per vertex label"));
                }
                if points.windows(2).any(|w| w[0] >= w[1]) || points.iter().any(|&c| c >= grid.n_points()) {
                    return Err(Error::shape("grid points must be strictly increasing codes inside the grid"));
                }
                let cells = close_cubes(grid, points, &self.maximal_cells)?;
                let c = EquivariantComplex::new_cubical(cells, self.vertex_labels)?;
                if c.action() != self.generator.as_slice() {
                    return Err(Error::InvalidAction("generator is not the letter shift of the grid".into()));
                }
                Ok(c)
            }
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("complex file: {e}")))
    }
}

/// Every face of every listed cube; each cell must be the vertex set of an
/// elementary cube.
fn close_cubes(grid: TorusGrid, points: Vec<u64>, maximal: &[Vec<u32>]) -> Result<CubicalCells> {
    let mut found: Vec<BTreeSet<(u64, u32)>> = vec![BTreeSet::new()];
    found[0].extend(points.iter().map(|&c| (c, 0)));
    for cell in maximal {
        let codes = cell
            .iter()
            .map(|&v| points.get(v as usize).copied().ok_or_else(|| Error::shape(format!("unknown vertex {v}"))))
            .collect::<Result<Vec<u64>>>()?;
        let (base, mask) =
            grid.bounding_cube(&codes).ok_or_else(|| Error::shape(format!("cell {cell:?} is not inside one cube")))?;
        let dirs: Vec<u32> = (0..grid.dims()).filter(|i| mask & (1 << i) != 0).collect();
        if codes.len() != 1 << dirs.len() {
            return Err(Error::shape(format!("cell {cell:?} is not the vertex set of a cube")));
        }
        let k = dirs.len();
        for keep in 0u32..(1 << k) {
            let free = (0..k).filter(|j| keep & (1 << j) == 0).collect::<Vec<_>>();
            for up in 0u32..(1 << free.len()) {
                let mut b = base;
                for (t, &j) in free.iter().enumerate() {
                    if up & (1 << t) != 0 {
                        b = grid.step(b, dirs[j]);
                    }
                }
                let m = (0..k).filter(|j| keep & (1 << j) != 0).fold(0u32, |acc, j| acc | 1 << dirs[j]);
                let d = m.count_ones() as usize;
                if found.len() <= d {
                    found.resize(d + 1, BTreeSet::new());
                }
                found[d].insert((b, m));
            }
        }
    }
    let mut by_dim = Vec::with_capacity(found.len());
    for set in found {
        let mut cubes = set
            .into_iter()
            .map(|(code, mask)| {
                let base = points
                    .binary_search(&code)
                    .map_err(|_| Error::shape("a cube corner is not a listed point"))?;
                Ok(Cube { base: base as u32, mask })
            })
            .collect::<Result<Vec<Cube>>>()?;
        cubes.sort_unstable();
        by_dim.push(cubes);
    }
    Ok(CubicalCells { grid, points, by_dim })
}

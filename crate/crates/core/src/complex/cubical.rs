//! Elementary cubes in the grid torus `(Z_q)^D`, `D = blocks · block_rank`.
//!
//! A grid point is read as a cyclic word of `blocks` letters, each letter a
//! point of `(Z_q)^block_rank`. Point codes put coordinate 0 in the most
//! significant digit, so code order is word order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusGrid {
    /// Number of letters (the period).
    pub blocks: u32,
    /// Coordinates per letter.
    pub block_rank: u32,
    pub q: u32,
}

/// Upper bound on `D`, set by the `u32` direction mask.
pub const MAX_GRID_DIMS: u32 = 32;

impl TorusGrid {
    pub fn new(blocks: u32, block_rank: u32, q: u32) -> Result<Self> {
        let g = TorusGrid { blocks, block_rank, q };
        if blocks == 0 || block_rank == 0 || q < 3 {
            return Err(Error::shape(format!("degenerate torus grid {g:?}")));
        }
        if g.dims() > MAX_GRID_DIMS {
            return Err(Error::shape(format!("torus grid has {} > {MAX_GRID_DIMS} coordinates", g.dims())));
        }
        if (q as f64).powi(g.dims() as i32) >= 2f64.powi(63) {
            return Err(Error::shape(format!("torus grid {g:?} has too many points to index")));
        }
        Ok(g)
    }

    pub fn dims(&self) -> u32 {
        self.blocks * self.block_rank
    }

    pub fn n_points(&self) -> u64 {
        (self.q as u64).pow(self.dims())
    }

    fn weight(&self, coord: u32) -> u64 {
        (self.q as u64).pow(self.dims() - 1 - coord)
    }

    pub fn coord(&self, code: u64, i: u32) -> u32 {
        ((code / self.weight(i)) % self.q as u64) as u32
    }

    pub fn coords(&self, code: u64) -> Vec<u32> {
        (0..self.dims()).map(|i| self.coord(code, i)).collect()
    }

    pub fn encode(&self, coords: &[u32]) -> u64 {
        coords.iter().fold(0u64, |acc, &c| acc * self.q as u64 + c as u64)
    }

    /// `code + e_i`, wrapping around the circle.
    pub fn step(&self, code: u64, i: u32) -> u64 {
        let w = self.weight(i);
        if self.coord(code, i) == self.q - 1 {
            code - (self.q as u64 - 1) * w
        } else {
            code + w
        }
    }

    /// Cyclic shift of letters: letter `t` of the image is letter `t+1` of the source.
    pub fn shift_point(&self, code: u64) -> u64 {
        let c = self.coords(code);
        let r = self.block_rank as usize;
        let rotated: Vec<u32> = c[r..].iter().chain(&c[..r]).copied().collect();
        self.encode(&rotated)
    }

    /// Image of a direction mask under the letter shift: coordinate `j` moves to `j - block_rank`.
    pub fn shift_mask(&self, mask: u32) -> u32 {
        let d = self.dims();
        let r = self.block_rank;
        (0..d).filter(|j| mask & (1 << j) != 0).fold(0u32, |acc, j| acc | 1 << ((j + d - r) % d))
    }

    /// Smallest elementary cube `(base code, mask)` containing the points:
    /// along every coordinate they take one value or two adjacent values.
    pub fn bounding_cube(&self, codes: &[u64]) -> Option<(u64, u32)> {
        let first = *codes.first()?;
        let q = self.q;
        let mut base = self.coords(first);
        let mut mask = 0u32;
        for i in 0..self.dims() {
            let mut vals: Vec<u32> = codes.iter().map(|&c| self.coord(c, i)).collect();
            vals.sort_unstable();
            vals.dedup();
            match vals.as_slice() {
                [v] => base[i as usize] = *v,
                [a, b] if b - a == 1 => {
                    base[i as usize] = *a;
                    mask |= 1 << i;
                }
                [a, b] if *a == 0 && *b == q - 1 => {
                    base[i as usize] = q - 1;
                    mask |= 1 << i;
                }
                _ => return None,
            }
        }
        Some((self.encode(&base), mask))
    }

    /// Letters of a point, each a coordinate list of length `block_rank`.
    pub fn letters(&self, code: u64) -> Vec<Vec<u32>> {
        self.coords(code).chunks(self.block_rank as usize).map(|c| c.to_vec()).collect()
    }
}

/// `base` is a vertex index into the complex's point list; `mask` holds the
/// nondegenerate directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    pub base: u32,
    pub mask: u32,
}

impl Cube {
    pub fn dim(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn directions(&self) -> impl Iterator<Item = u32> + '_ {
        (0..32).filter(move |i| self.mask & (1 << i) != 0)
    }
}

/// Cubes of every dimension over a sorted point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicalCells {
    pub grid: TorusGrid,
    /// Grid codes of the vertices, strictly increasing; vertex `i` is `points[i]`.
    pub points: Vec<u64>,
    /// `by_dim[d]` holds the `d`-cubes, sorted.
    pub by_dim: Vec<Vec<Cube>>,
}

impl CubicalCells {
    pub fn vertex_of(&self, code: u64) -> Option<u32> {
        self.points.binary_search(&code).ok().map(|i| i as u32)
    }

    pub fn position(&self, cube: &Cube) -> Option<usize> {
        self.by_dim.get(cube.dim())?.binary_search(cube).ok()
    }

    /// Vertex codes of a cube.
    pub fn corner_codes(&self, cube: &Cube) -> Vec<u64> {
        let mut codes = vec![self.points[cube.base as usize]];
        for i in cube.directions() {
            let stepped: Vec<u64> = codes.iter().map(|&c| self.grid.step(c, i)).collect();
            codes.extend(stepped);
        }
        codes
    }

    /// Facets with incidence signs: `(-1)^j` on the upper face and
    /// `-(-1)^j` on the lower face in the `j`-th direction.
    pub fn facets(&self, cube: &Cube) -> Vec<(Option<Cube>, i8)> {
        let base_code = self.points[cube.base as usize];
        cube.directions()
            .enumerate()
            .flat_map(|(j, i)| {
                let sign: i8 = if j % 2 == 0 { 1 } else { -1 };
                let mask = cube.mask & !(1 << i);
                let lower = Some(Cube { base: cube.base, mask });
                let upper = self.vertex_of(self.grid.step(base_code, i)).map(|b| Cube { base: b, mask });
                [(upper, sign), (lower, -sign)]
            })
            .collect()
    }

    /// Smallest cube whose vertex set contains the given points, if it is a
    /// cell of the complex.
    pub fn spanning_cube(&self, codes: &[u64]) -> Option<Cube> {
        let (base, mask) = self.grid.bounding_cube(codes)?;
        let cube = Cube { base: self.vertex_of(base)?, mask };
        self.position(&cube).map(|_| cube)
    }

    pub fn shift_cube(&self, cube: &Cube) -> Option<Cube> {
        let base = self.vertex_of(self.grid.shift_point(self.points[cube.base as usize]))?;
        Some(Cube { base, mask: self.grid.shift_mask(cube.mask) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coords_and_steps() {
        let g = TorusGrid::new(2, 1, 8).unwrap();
        let c = g.encode(&[3, 7]);
        assert_eq!(c, 31);
        assert_eq!(g.coords(g.step(c, 1)), vec![3, 0]);
        assert_eq!(g.coords(g.step(c, 0)), vec![4, 7]);
        assert_eq!(g.coords(g.shift_point(c)), vec![7, 3]);
    }

    #[test]
    fn mask_shift_rotates_blocks() {
        let g = TorusGrid::new(3, 2, 8).unwrap();
        // coordinates 2,3 (letter 1) move to 0,1 (letter 0)
        assert_eq!(g.shift_mask(0b001100), 0b000011);
        assert_eq!(g.shift_mask(0b000001), 0b010000);
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(TorusGrid::new(0, 1, 8).is_err());
        assert!(TorusGrid::new(40, 1, 8).is_err());
    }
}

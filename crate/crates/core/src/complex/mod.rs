//! Finite simplicial and cubical complexes carrying a `Z_p`-action.
//!
//! The action is a vertex permutation `π` of order `p` that maps cells to
//! cells. Freeness is decided at the cell level: the action is free iff no
//! cell is setwise invariant under `π`.

mod cubical;
mod exchange;
mod join;
mod simplicial;

use serde::Serialize;

pub use cubical::{Cube, CubicalCells, TorusGrid, MAX_GRID_DIMS};
pub use exchange::{ComplexFile, ComplexKind};
pub use join::{apply_join_of_maps, join_all, join_complex, JoinPoint};
pub use simplicial::{facets, SimplexTable};

use crate::alphabet::Alphabet;
use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::homology;
use crate::symbolic::{shift_permutation, CyclicWord};

/// How a complex was assembled; used to certify `E_n Z_p` structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    /// Join of nonempty free discrete complexes with these vertex counts.
    /// A single factor is a discrete complex; no factors is the empty complex.
    DiscreteJoin(Vec<usize>),
    General,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cells {
    /// `tables[d]` holds the `d`-simplices.
    Simplicial(Vec<SimplexTable>),
    Cubical(CubicalCells),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantComplex {
    p: u32,
    labels: Vec<String>,
    action: Vec<u32>,
    cells: Cells,
    structure: Structure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellWitness {
    pub dim: usize,
    pub vertices: Vec<String>,
}

impl std::fmt::Display for CellWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-cell {{{}}}", self.dim, self.vertices.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeReport {
    pub free: bool,
    /// First setwise-invariant cell, if any.
    pub witness: Option<CellWitness>,
}

impl EquivariantComplex {
    /// A 0-dimensional complex: `labels.len()` points permuted by `action`.
    pub fn discrete(p: u32, labels: Vec<String>, action: Vec<u32>) -> Result<Self> {
        let n = labels.len();
        let table = SimplexTable::from_unsorted(1, (0..n as u32).collect());
        let tables = if n == 0 { Vec::new() } else { vec![table] };
        let c = Self::new_simplicial(p, labels, action, tables, Structure::General)?;
        let structure = if n == 0 {
            Structure::DiscreteJoin(Vec::new())
        } else if c.verify_free_action().free {
            Structure::DiscreteJoin(vec![n])
        } else {
            Structure::General
        };
        Ok(EquivariantComplex { structure, ..c })
    }

    /// `Z_p` itself: `p` points cycled by `g ↦ g + 1`.
    pub fn cyclic_group(p: u32) -> Result<Self> {
        Self::discrete(p, (0..p).map(|g| g.to_string()).collect(), (0..p).map(|g| (g + 1) % p).collect())
    }

    /// A set of period-`p` words as a discrete complex acted on by the shift.
    /// Labels are the words' text forms.
    pub fn from_periodic_words(p: u32, alphabet: &Alphabet, words: &[CyclicWord]) -> Result<Self> {
        if let Some(w) = words.iter().find(|w| w.period() != p as usize) {
            return Err(Error::shape(format!("word of period {} in a set of period {p}", w.period())));
        }
        let action = shift_permutation(words)?;
        Self::discrete(p, words.iter().map(|w| w.to_text(alphabet)).collect(), action)
    }

    /// The closure of a list of simplices under taking faces.
    pub fn from_maximal_simplices(p: u32, labels: Vec<String>, action: Vec<u32>, maximal: &[Vec<u32>]) -> Result<Self> {
        let mut per_dim: Vec<Vec<u32>> = Vec::new();
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::shape("empty simplex in cell list"));
            }
            if let Some(&v) = s.iter().find(|&&v| v as usize >= labels.len()) {
                return Err(Error::shape(format!("simplex mentions unknown vertex {v}")));
            }
            if s.len() > 24 {
                return Err(Error::shape("simplices above dimension 23 are not supported"));
            }
            let k = s.len();
            for subset in 1u32..(1 << k) {
                let face: Vec<u32> = (0..k).filter(|i| subset & (1 << i) != 0).map(|i| s[i]).collect();
                let d = face.len() - 1;
                if per_dim.len() <= d {
                    per_dim.resize(d + 1, Vec::new());
                }
                per_dim[d].extend(face);
            }
        }
        for v in 0..labels.len() as u32 {
            if per_dim.is_empty() {
                per_dim.push(Vec::new());
            }
            per_dim[0].push(v);
        }
        let tables = per_dim
            .into_iter()
            .enumerate()
            .map(|(d, data)| SimplexTable::from_unsorted(d + 1, data))
            .collect();
        Self::new_simplicial(p, labels, action, tables, Structure::General)
    }

    pub(crate) fn new_simplicial(
        p: u32,
        labels: Vec<String>,
        action: Vec<u32>,
        tables: Vec<SimplexTable>,
        structure: Structure,
    ) -> Result<Self> {
        let c = EquivariantComplex { p, labels, action, cells: Cells::Simplicial(tables), structure };
        c.validate()?;
        Ok(c)
    }

    /// A cubical complex in a torus grid, acted on by the letter shift.
    pub fn new_cubical(cells: CubicalCells, labels: Vec<String>) -> Result<Self> {
        let p = cells.grid.blocks;
        let action = cells
            .points
            .iter()
            .map(|&c| {
                cells
                    .vertex_of(cells.grid.shift_point(c))
                    .ok_or_else(|| Error::InvalidAction("vertex set is not shift-invariant".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        let c = EquivariantComplex { p, labels, action, cells: Cells::Cubical(cells), structure: Structure::General };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        require_prime(self.p as u64, "acting prime p")?;
        let n = self.labels.len();
        if self.action.len() != n {
            return Err(Error::InvalidAction(format!("action has {} entries for {n} vertices", self.action.len())));
        }
        let mut seen = vec![false; n];
        for &v in &self.action {
            if v as usize >= n || std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::InvalidAction("action is not a permutation of the vertices".into()));
            }
        }
        for v in 0..n as u32 {
            let mut w = v;
            for _ in 0..self.p {
                w = self.action[w as usize];
            }
            if w != v {
                return Err(Error::InvalidAction(format!("pi^{} moves vertex {}", self.p, self.labels[v as usize])));
            }
        }
        if n > 0 && self.action.iter().enumerate().all(|(i, &v)| i as u32 == v) {
            return Err(Error::InvalidAction(format!("identity permutation does not have order {}", self.p)));
        }

        match &self.cells {
            Cells::Simplicial(tables) => {
                for (d, t) in tables.iter().enumerate() {
                    if t.arity() != d + 1 {
                        return Err(Error::shape(format!("table {d} holds simplices of arity {}", t.arity())));
                    }
                    for s in t.iter() {
                        if s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&v| v as usize >= n) {
                            return Err(Error::shape(format!("malformed simplex {s:?}")));
                        }
                        if d > 0 {
                            for (_, f) in facets(s) {
                                if !tables[d - 1].contains(&f) {
                                    return Err(Error::shape(format!(
                                        "not closed under faces: {f:?} missing from {s:?}"
                                    )));
                                }
                            }
                        }
                        if !t.contains(&self.map_simplex(s)) {
                            return Err(Error::InvalidAction(format!("pi does not map {s:?} to a cell")));
                        }
                    }
                }
                if tables.first().map_or(0, |t| t.len()) != n {
                    return Err(Error::shape("every vertex must be a 0-cell"));
                }
            }
            Cells::Cubical(cc) => {
                if cc.points.len() != n || cc.points.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::shape("cubical point list must be strictly increasing, one per vertex"));
                }
                for (d, cubes) in cc.by_dim.iter().enumerate() {
                    for cube in cubes {
                        if cube.dim() != d || cube.base as usize >= n || cube.mask >> cc.grid.dims() != 0 {
                            return Err(Error::shape(format!("malformed cube {cube:?} in dimension {d}")));
                        }
                        for (face, _) in cc.facets(cube) {
                            if face.and_then(|f| cc.position(&f)).is_none() {
                                return Err(Error::shape(format!("not closed under faces at cube {cube:?}")));
                            }
                        }
                        if cc.shift_cube(cube).and_then(|c| cc.position(&c)).is_none() {
                            return Err(Error::InvalidAction(format!("shift does not map {cube:?} to a cell")));
                        }
                    }
                }
                if cc.by_dim.first().map_or(0, |v| v.len()) != n {
                    return Err(Error::shape("every vertex must be a 0-cube"));
                }
            }
        }
        Ok(())
    }

    fn map_simplex(&self, s: &[u32]) -> Vec<u32> {
        let mut img: Vec<u32> = s.iter().map(|&v| self.action[v as usize]).collect();
        img.sort_unstable();
        img
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }

    /// The generator `π` as an index array.
    pub fn action(&self) -> &[u32] {
        &self.action
    }

    pub fn cells(&self) -> &Cells {
        &self.cells
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn is_cubical(&self) -> bool {
        matches!(self.cells, Cells::Cubical(_))
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Top dimension, `-1` for the empty complex.
    pub fn dim(&self) -> i64 {
        let counts = self.cell_counts();
        counts.iter().rposition(|&c| c > 0).map_or(-1, |d| d as i64)
    }

    pub fn cell_count(&self, d: usize) -> usize {
        match &self.cells {
            Cells::Simplicial(t) => t.get(d).map_or(0, |t| t.len()),
            Cells::Cubical(cc) => cc.by_dim.get(d).map_or(0, |v| v.len()),
        }
    }

    /// Cell counts per dimension up to the top dimension.
    pub fn cell_counts(&self) -> Vec<usize> {
        let mut counts: Vec<usize> = match &self.cells {
            Cells::Simplicial(t) => t.iter().map(|t| t.len()).collect(),
            Cells::Cubical(cc) => cc.by_dim.iter().map(|v| v.len()).collect(),
        };
        while counts.last() == Some(&0) {
            counts.pop();
        }
        counts
    }

    pub fn total_cells(&self) -> usize {
        self.cell_counts().iter().sum()
    }

    /// Vertex indices of cell `idx` in dimension `d`.
    pub fn cell_vertices(&self, d: usize, idx: usize) -> Vec<u32> {
        match &self.cells {
            Cells::Simplicial(t) => t[d].get(idx).to_vec(),
            Cells::Cubical(cc) => {
                let mut vs: Vec<u32> = cc
                    .corner_codes(&cc.by_dim[d][idx])
                    .into_iter()
                    .map(|code| cc.vertex_of(code).expect("face-closed"))
                    .collect();
                vs.sort_unstable();
                vs
            }
        }
    }

    fn witness(&self, d: usize, idx: usize) -> CellWitness {
        let vertices = self.cell_vertices(d, idx).into_iter().map(|v| self.labels[v as usize].clone()).collect();
        CellWitness { dim: d, vertices }
    }

    /// Appends the boundary of cell `idx` of dimension `d ≥ 1` as
    /// `(row in dimension d-1, sign)` pairs.
    pub fn boundary_entries(&self, d: usize, idx: usize, out: &mut Vec<(u32, i8)>) {
        out.clear();
        match &self.cells {
            Cells::Simplicial(t) => {
                for (i, f) in facets(t[d].get(idx)) {
                    let row = t[d - 1].position(&f).expect("face-closed");
                    out.push((row as u32, if i % 2 == 0 { 1 } else { -1 }));
                }
            }
            Cells::Cubical(cc) => {
                for (face, sign) in cc.facets(&cc.by_dim[d][idx]) {
                    let row = face.and_then(|f| cc.position(&f)).expect("face-closed");
                    out.push((row as u32, sign));
                }
            }
        }
    }

    /// Free iff no cell is mapped onto itself by `π`.
    pub fn verify_free_action(&self) -> FreeReport {
        match &self.cells {
            Cells::Simplicial(tables) => {
                for (d, t) in tables.iter().enumerate() {
                    for (idx, s) in t.iter().enumerate() {
                        if self.map_simplex(s) == s {
                            return FreeReport { free: false, witness: Some(self.witness(d, idx)) };
                        }
                    }
                }
            }
            Cells::Cubical(cc) => {
                for (d, cubes) in cc.by_dim.iter().enumerate() {
                    for (idx, cube) in cubes.iter().enumerate() {
                        if cc.shift_cube(cube).as_ref() == Some(cube) {
                            return FreeReport { free: false, witness: Some(self.witness(d, idx)) };
                        }
                    }
                }
            }
        }
        FreeReport { free: true, witness: None }
    }

    pub fn require_free(&self) -> Result<()> {
        match self.verify_free_action().witness {
            None => Ok(()),
            Some(w) => Err(Error::NotFree { witness: w.to_string() }),
        }
    }

    /// Whether the vertex set lies in a single closed cell, so the affine
    /// simplex on those vertices maps continuously into the complex.
    pub fn spans_cell(&self, vertices: &[u32]) -> bool {
        if vertices.is_empty() || vertices.iter().any(|&v| v as usize >= self.n_vertices()) {
            return false;
        }
        match &self.cells {
            Cells::Simplicial(t) => {
                let mut s = vertices.to_vec();
                s.sort_unstable();
                s.dedup();
                t.get(s.len() - 1).is_some_and(|t| t.contains(&s))
            }
            Cells::Cubical(cc) => {
                let codes: Vec<u64> = vertices.iter().map(|&v| cc.points[v as usize]).collect();
                cc.spanning_cube(&codes).is_some()
            }
        }
    }

    /// Cells that are not a facet of any other cell, as vertex lists.
    pub fn maximal_cells(&self) -> Vec<Vec<u32>> {
        let counts = self.cell_counts();
        let mut out = Vec::new();
        let mut buf = Vec::new();
        for d in 0..counts.len() {
            let mut covered = vec![false; counts[d]];
            if d + 1 < counts.len() {
                for idx in 0..counts[d + 1] {
                    self.boundary_entries(d + 1, idx, &mut buf);
                    for &(row, _) in &buf {
                        covered[row as usize] = true;
                    }
                }
            }
            for (idx, c) in covered.iter().enumerate() {
                if !c {
                    out.push(self.cell_vertices(d, idx));
                }
            }
        }
        out
    }
}

/// Evidence that a complex is an `E_n Z_p`-space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnReport {
    pub n: i64,
    pub p: u32,
    pub field: u64,
    pub free: bool,
    pub free_witness: Option<CellWitness>,
    pub dimension: i64,
    pub reduced_betti: Vec<u64>,
    /// Largest `k` with `b̃_i = 0` for all `i ≤ k`.
    pub homology_connectivity: i64,
    /// Free, of dimension `n`, and `b̃_i = 0` for `i ≤ n - 1`.
    pub homology_consistent: bool,
    /// Connectivity is known, not only homology-consistent: the complex is a
    /// join of `n + 1` nonempty free discrete complexes, or `n ≤ 1` where
    /// `(n-1)`-connectedness is decided by `b̃_0`.
    pub certified: bool,
    pub basis: String,
}

/// Checks freeness, dimension `n` and vanishing reduced homology over
/// `F_field` (default `F_p`) below `n`.
pub fn is_en_zp(c: &EquivariantComplex, n: i64, field: Option<u64>) -> Result<EnReport> {
    let field = field.unwrap_or(c.p() as u64);
    let free = c.verify_free_action();
    let betti = homology::betti_of(c, field)?;
    let conn = betti.connectivity();
    let dimension = c.dim();
    let homology_consistent = free.free && dimension == n && conn >= n - 1;
    let structural = matches!(c.structure(), Structure::DiscreteJoin(f) if f.len() as i64 == n + 1 && f.iter().all(|&s| s > 0));
    let (certified, basis) = if !homology_consistent {
        (false, "not an E_n model: freeness, dimension or homology check failed".to_string())
    } else if structural {
        (true, format!("structural: join of {} nonempty free discrete Z_{} complexes", n + 1, c.p()))
    } else if n <= 1 {
        (true, "n <= 1: (n-1)-connectedness is path-connectedness, decided by reduced b_0".to_string())
    } else {
        (false, "homology-consistent only; higher connectivity (pi_1) not decided".to_string())
    };
    Ok(EnReport {
        n,
        p: c.p(),
        field,
        free: free.free,
        free_witness: free.witness,
        dimension,
        reduced_betti: betti.reduced.clone(),
        homology_connectivity: conn,
        homology_consistent,
        certified,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_is_free() {
        let z3 = EquivariantComplex::cyclic_group(3).unwrap();
        assert!(z3.verify_free_action().free);
        assert_eq!(z3.dim(), 0);
        assert_eq!(z3.structure(), &Structure::DiscreteJoin(vec![3]));
    }

    #[test]
    fn identity_action_rejected() {
        let err = EquivariantComplex::discrete(2, vec!["x".into()], vec![0]).unwrap_err();
        assert_eq!(err.reason(), "invalid_action");
        let err = EquivariantComplex::discrete(3, vec!["a".into(), "b".into()], vec![1, 0]).unwrap_err();
        assert_eq!(err.reason(), "invalid_action");
        assert!(EquivariantComplex::discrete(4, vec![], vec![]).is_err());
    }

    #[test]
    fn invariant_edge_is_a_witness() {
        let c = EquivariantComplex::from_maximal_simplices(2, vec!["a".into(), "b".into()], vec![1, 0], &[vec![0, 1]])
            .unwrap();
        let r = c.verify_free_action();
        assert!(!r.free);
        assert_eq!(r.witness, Some(CellWitness { dim: 1, vertices: vec!["a".into(), "b".into()] }));
        assert!(c.require_free().is_err());
    }

    #[test]
    fn action_must_preserve_cells() {
        // a path a-b-c with the 3-cycle: image of {a,b} is {b,c} but {c,a} is missing
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let err = EquivariantComplex::from_maximal_simplices(3, labels, vec![1, 2, 0], &[vec![0, 1], vec![1, 2]])
            .unwrap_err();
        assert_eq!(err.reason(), "invalid_action");
    }

    #[test]
    fn maximal_cells_of_triangle_boundary() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let c = EquivariantComplex::from_maximal_simplices(3, labels, vec![1, 2, 0], &[vec![0, 1], vec![1, 2], vec![0, 2]])
            .unwrap();
        assert_eq!(c.maximal_cells(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert!(c.spans_cell(&[2, 0]));
        assert!(!c.spans_cell(&[0, 1, 2]));
        assert!(c.spans_cell(&[1, 1]));
    }
}

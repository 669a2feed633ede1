use num_rational::Rational64;

use super::{Cells, EquivariantComplex, SimplexTable, Structure};
use crate::error::{Error, Result};

fn tables_of(c: &EquivariantComplex) -> Result<&[SimplexTable]> {
    match c.cells() {
        Cells::Simplicial(t) => Ok(t),
        Cells::Cubical(_) => Err(Error::shape("joins are built for simplicial complexes only")),
    }
}

/// Simplices of `A * B`: `α ∪ β` with `α`, `β` cells or empty, not both empty.
/// `B`'s vertices are shifted past `A`'s.
fn join_tables(a: &[SimplexTable], na: u32, b: &[SimplexTable]) -> Vec<SimplexTable> {
    let top = a.len() + b.len();
    let mut out: Vec<Vec<u32>> = vec![Vec::new(); top];
    for ia in 0..=a.len() {
        for ib in 0..=b.len() {
            if ia + ib == 0 {
                continue;
            }
            let dst = &mut out[ia + ib - 1];
            let a_cells: Vec<&[u32]> = if ia == 0 { vec![&[]] } else { a[ia - 1].iter().collect() };
            let b_cells: Vec<&[u32]> = if ib == 0 { vec![&[]] } else { b[ib - 1].iter().collect() };
            dst.reserve(a_cells.len() * b_cells.len() * (ia + ib));
            for sa in &a_cells {
                for sb in &b_cells {
                    dst.extend_from_slice(sa);
                    dst.extend(sb.iter().map(|&v| v + na));
                }
            }
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(d, data)| SimplexTable::from_unsorted(d + 1, data))
        .collect()
}

/// `X_0 * X_1 * ⋯ * X_k` with the simultaneous action. Vertex labels become
/// `"{factor}/{label}"`.
pub fn join_all(factors: &[&EquivariantComplex]) -> Result<EquivariantComplex> {
    let first = factors.first().ok_or_else(|| Error::shape("join of zero factors"))?;
    let p = first.p();
    if let Some(f) = factors.iter().find(|f| f.p() != p) {
        return Err(Error::shape(format!("cannot join Z_{p} and Z_{} complexes", f.p())));
    }
    let mut tables: Vec<SimplexTable> = Vec::new();
    let mut labels = Vec::new();
    let mut action = Vec::new();
    let mut structure: Option<Vec<usize>> = Some(Vec::new());
    for (i, f) in factors.iter().enumerate() {
        let ft = tables_of(f)?;
        let offset = labels.len() as u32;
        tables = join_tables(&tables, offset, ft);
        labels.extend(f.labels().iter().map(|l| format!("{i}/{l}")));
        action.extend(f.action().iter().map(|&v| v + offset));
        structure = match (structure, f.structure()) {
            (Some(mut acc), Structure::DiscreteJoin(sizes)) => {
                acc.extend(sizes);
                Some(acc)
            }
            _ => None,
        };
    }
    while tables.last().is_some_and(|t| t.is_empty()) {
        tables.pop();
    }
    let structure = structure.map_or(Structure::General, Structure::DiscreteJoin);
    EquivariantComplex::new_simplicial(p, labels, action, tables, structure)
}

/// `A * B`: vertex set the disjoint union, cells `α ∪ β`, action blockwise.
pub fn join_complex(a: &EquivariantComplex, b: &EquivariantComplex) -> Result<EquivariantComplex> {
    join_all(&[a, b])
}

/// A point `⊕ t_i x_i` of a join of spaces. Coordinates with weight 0 are
/// collapsed: they are absent and ignored by equality.
#[derive(Debug, Clone)]
pub struct JoinPoint<P> {
    weights: Vec<Rational64>,
    points: Vec<Option<P>>,
}

impl<P> JoinPoint<P> {
    pub fn new(weights: Vec<Rational64>, points: Vec<Option<P>>) -> Result<Self> {
        if weights.len() != points.len() || weights.is_empty() {
            return Err(Error::shape("join point needs one weight per factor"));
        }
        let zero = Rational64::from_integer(0);
        if weights.iter().any(|w| *w < zero) || weights.iter().sum::<Rational64>() != Rational64::from_integer(1) {
            return Err(Error::shape("join weights must be nonnegative and sum to 1"));
        }
        let points = weights
            .iter()
            .zip(points)
            .map(|(w, pt)| match (w == &zero, pt) {
                (true, _) => Ok(None),
                (false, Some(pt)) => Ok(Some(pt)),
                (false, None) => Err(Error::shape("a factor with positive weight needs a point")),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(JoinPoint { weights, points })
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational64] {
        &self.weights
    }

    pub fn point(&self, i: usize) -> Option<&P> {
        self.points[i].as_ref()
    }
}

impl<P: PartialEq> PartialEq for JoinPoint<P> {
    fn eq(&self, other: &Self) -> bool {
        self.weights == other.weights && self.points == other.points
    }
}

/// `(T_0 * ⋯ * T_k)(⊕ t_i x_i) = ⊕ t_i T_i x_i`.
pub fn apply_join_of_maps<P, Q>(
    maps: &[&dyn Fn(&P) -> Result<Q>],
    x: &JoinPoint<P>,
) -> Result<JoinPoint<Q>> {
    if maps.len() != x.arity() {
        return Err(Error::shape(format!("{} maps for a {}-fold join", maps.len(), x.arity())));
    }
    let points = maps
        .iter()
        .zip(&x.points)
        .map(|(f, pt)| pt.as_ref().map(f).transpose())
        .collect::<Result<Vec<_>>>()?;
    Ok(JoinPoint { weights: x.weights.clone(), points })
}

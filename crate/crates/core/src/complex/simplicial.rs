use std::cmp::Ordering;

/// All simplices of one dimension, stored flat and sorted lexicographically.
/// Vertex lists inside each simplex are strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexTable {
    arity: usize,
    data: Vec<u32>,
}

impl SimplexTable {
    pub fn empty(arity: usize) -> Self {
        SimplexTable { arity, data: Vec::new() }
    }

    /// Sorts and deduplicates `data` (chunks of `arity` increasing vertex ids).
    pub fn from_unsorted(arity: usize, data: Vec<u32>) -> Self {
        debug_assert!(arity > 0 && data.len().is_multiple_of(arity));
        let mut rows: Vec<&[u32]> = data.chunks_exact(arity).collect();
        rows.sort_unstable();
        rows.dedup();
        let mut sorted = Vec::with_capacity(rows.len() * arity);
        for r in rows {
            sorted.extend_from_slice(r);
        }
        SimplexTable { arity, data: sorted }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[u32] {
        &self.data[i * self.arity..(i + 1) * self.arity]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        self.data.chunks_exact(self.arity)
    }

    /// Index of a sorted vertex list, by binary search.
    pub fn position(&self, simplex: &[u32]) -> Option<usize> {
        if simplex.len() != self.arity {
            return None;
        }
        let (mut lo, mut hi) = (0usize, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(simplex) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        self.position(simplex).is_some()
    }
}

/// The facets of a simplex, in the order `[v_1..], [v_0, v_2..], …` so that
/// facet `i` omits vertex `i` and carries sign `(-1)^i`.
pub fn facets(simplex: &[u32]) -> impl Iterator<Item = (usize, Vec<u32>)> + '_ {
    (0..simplex.len()).map(move |i| {
        let mut f = Vec::with_capacity(simplex.len() - 1);
        f.extend_from_slice(&simplex[..i]);
        f.extend_from_slice(&simplex[i + 1..]);
        (i, f)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_lookup() {
        let t = SimplexTable::from_unsorted(2, vec![1, 2, 0, 1, 0, 2, 0, 1]);
        assert_eq!(t.len(), 3);
        assert_eq!(t.get(0), &[0, 1]);
        assert_eq!(t.position(&[1, 2]), Some(2));
        assert_eq!(t.position(&[0, 3]), None);
        assert_eq!(t.position(&[0]), None);
    }

    #[test]
    fn facet_order() {
        let f: Vec<_> = facets(&[3, 5, 9]).collect();
        assert_eq!(f, vec![(0, vec![5, 9]), (1, vec![3, 9]), (2, vec![3, 5])]);
    }
}

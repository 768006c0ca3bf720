//! Exact linear algebra over `Q` on sparse vectors.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::Q;

/// Sparse vector with coordinates `usize -> Q`, no stored zeros.
pub type SparseVec = BTreeMap<usize, Q>;

pub fn axpy(y: &mut SparseVec, a: &Q, x: &SparseVec) {
    for (&k, v) in x {
        let e = y.entry(k).or_insert_with(Q::zero);
        *e += a * v;
        if e.is_zero() {
            y.remove(&k);
        }
    }
}

/// Incrementally built row-echelon basis. Each stored row is normalized to
/// pivot coefficient 1, and pivots are distinct.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: BTreeMap<usize, SparseVec>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the remainder.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        // eliminate pivots in increasing order; each row only has entries at
        // or after its pivot, so one pass suffices
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .map(|(&k, _)| k)
                .find(|k| self.rows.contains_key(k));
            let Some(p) = next else { break };
            let coef = -v[&p];
            axpy(&mut v, &coef, &self.rows[&p]);
            cursor = p + 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` if it is independent; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut r = self.reduce(v);
        let Some((&p, &lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        for x in r.values_mut() {
            *x *= inv;
        }
        // keep existing rows free of the new pivot
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).copied() {
                axpy(row, &-c, &r);
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }
}

pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut b = EchelonBasis::new();
    for v in vectors {
        b.insert(v);
    }
    b.rank()
}

/// Basis of `{x : A x = 0}` for `A` given by sparse rows over `cols` columns.
pub fn nullspace(rows: &[SparseVec], cols: usize) -> Vec<SparseVec> {
    let mut b = EchelonBasis::new();
    for r in rows {
        b.insert(r);
    }
    // fully reduced: each row has pivot p and entries only at free columns
    let pivots: BTreeMap<usize, &SparseVec> = b.rows.iter().map(|(&p, r)| (p, r)).collect();
    (0..cols)
        .filter(|c| !pivots.contains_key(c))
        .map(|free| {
            let mut v = SparseVec::new();
            v.insert(free, Q::from_integer(1));
            for (&p, row) in &pivots {
                if let Some(c) = row.get(&free) {
                    v.insert(p, -c);
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;

    fn vec_of(xs: &[i128]) -> SparseVec {
        xs.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(k, &x)| (k, qi(x)))
            .collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![vec_of(&[1, 2, 3]), vec_of(&[2, 4, 6]), vec_of(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            let dot: Q = r
                .iter()
                .map(|(k, v)| v * ns[0].get(k).copied().unwrap_or_default())
                .sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn membership() {
        let mut b = EchelonBasis::new();
        assert!(b.insert(&vec_of(&[0, 3, 1])));
        assert!(b.insert(&vec_of(&[1, 0, 1])));
        assert!(!b.insert(&vec_of(&[2, 3, 3])));
        assert!(b.contains(&vec_of(&[1, 3, 2])));
        assert!(!b.contains(&vec_of(&[0, 0, 1])));
    }
}

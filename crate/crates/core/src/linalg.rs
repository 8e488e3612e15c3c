//! Dense exact linear algebra over a fixed cyclotomic field.

use crate::exactnum::Cyclotomic;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Cyclotomic>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        if !rows[r][col].is_one() {
            let inv = rows[r][col].inverse().expect("nonzero pivot");
            for v in rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &(&f * pv);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of {x : A x = 0}, together with the free columns. Basis vector k has
/// a 1 in free column k and 0 in every other free column.
pub fn nullspace(mut rows: Vec<Vec<Cyclotomic>>, ncols: usize, order: u64) -> (Vec<Vec<Cyclotomic>>, Vec<usize>) {
    let pivots = rref(&mut rows, ncols);
    let zero = Cyclotomic::zero(order).expect("positive order");
    let one = Cyclotomic::one(order).expect("positive order");
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![zero.clone(); ncols];
            v[f] = one.clone();
            for (row, &pc) in rows.iter().zip(&pivots) {
                if !row[f].is_zero() {
                    v[pc] = -&row[f];
                }
            }
            v
        })
        .collect();
    (basis, free)
}

/// Incrementally maintained row space, used for span and rank tests.
#[derive(Debug, Clone)]
pub struct SpanBuilder {
    ncols: usize,
    rows: Vec<Vec<Cyclotomic>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduces `v` against the current rows; returns true if it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<Cyclotomic>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if v[pc].is_zero() {
                continue;
            }
            let f = v[pc].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pc].inverse().expect("nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(1, n).unwrap()
    }

    #[test]
    fn nullspace_of_rank_one() {
        let rows = vec![vec![c(1), c(2), c(3)], vec![c(2), c(4), c(6)]];
        let (basis, free) = nullspace(rows.clone(), 3, 1);
        assert_eq!(free, vec![1, 2]);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for row in &rows {
                let dot = row.iter().zip(v).fold(c(0), |acc, (a, b)| &acc + &(a * b));
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn span_builder_rank() {
        let mut s = SpanBuilder::new(3);
        assert!(s.insert(vec![c(1), c(1), c(0)]));
        assert!(s.insert(vec![c(0), c(1), c(1)]));
        assert!(!s.insert(vec![c(1), c(2), c(1)]));
        assert!(s.insert(vec![c(0), c(0), c(5)]));
        assert!(s.is_full());
    }
}

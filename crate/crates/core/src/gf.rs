//! Dense linear algebra over prime fields F_p.
//!
//! Everything here works with canonical row-reduced echelon bases, so
//! subspace equality is plain comparison and images/sums are rref of stacked
//! generators. Sizes are tiny (n <= weight of the partition), so no effort is
//! spent beyond textbook Gaussian elimination.

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// A matrix over F_p acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    n_rows: usize,
    n_cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(p: u64, n_rows: usize, n_cols: usize) -> Self {
        FpMatrix {
            p,
            n_rows,
            n_cols,
            data: vec![0; n_rows * n_cols],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        self.data[i * self.n_cols + j] = value % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!(self.n_cols, rhs.n_rows);
        assert_eq!(self.p, rhs.p);
        let mut out = FpMatrix::zeros(self.p, self.n_rows, rhs.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.n_cols {
                    let v = (out.get(i, j) + a * rhs.get(k, j)) % self.p;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.n_cols);
        (0..self.n_rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.n_cols {
                    acc = (acc + self.get(i, j) * v[j]) % self.p;
                }
                acc
            })
            .collect()
    }
}

/// Row-reduced echelon form in place; returns the rank.
fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> usize {
    let n_cols = rows.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    for col in 0..n_cols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = inv_mod(rows[pivot_row][col], p);
        for x in rows[pivot_row].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != pivot_row && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..n_cols {
                    let sub = factor * rows[pivot_row][c] % p;
                    rows[r][c] = (rows[r][c] + p - sub) % p;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.retain(|r| r.iter().any(|&x| x != 0));
    rows.len()
}

/// A subspace of F_p^n, stored as a canonical rref basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    p: u64,
    ambient: usize,
    basis: Vec<Vec<u64>>,
}

impl Subspace {
    pub fn zero(p: u64, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(p: u64, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut row = vec![0; ambient];
                row[i] = 1;
                row
            })
            .collect();
        Subspace { p, ambient, basis }
    }

    pub fn from_vectors(p: u64, ambient: usize, vectors: Vec<Vec<u64>>) -> Self {
        let mut rows: Vec<Vec<u64>> = vectors
            .into_iter()
            .map(|v| {
                assert_eq!(v.len(), ambient);
                v.into_iter().map(|x| x % p).collect()
            })
            .collect();
        rref(&mut rows, p);
        Subspace {
            p,
            ambient,
            basis: rows,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        rref(&mut rows, self.p);
        Subspace {
            p: self.p,
            ambient: self.ambient,
            basis: rows,
        }
    }

    /// The image of this subspace under the matrix (applied to each basis
    /// vector).
    pub fn image_under(&self, m: &FpMatrix) -> Subspace {
        let vectors = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::from_vectors(self.p, self.ambient, vectors)
    }

    pub fn contains_vec(&self, v: &[u64]) -> bool {
        let mut v: Vec<u64> = v.iter().map(|&x| x % self.p).collect();
        for row in &self.basis {
            let lead = row.iter().position(|&x| x != 0).expect("nonzero rref row");
            if v[lead] != 0 {
                let factor = v[lead];
                for c in 0..self.ambient {
                    let sub = factor * row[c] % self.p;
                    v[c] = (v[c] + self.p - sub) % self.p;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains_vec(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        for p in [2u64, 3, 5, 7, 13] {
            for a in 1..p {
                assert_eq!(a * inv_mod(a, p) % p, 1);
            }
        }
    }

    #[test]
    fn rref_canonical_and_rank() {
        let s = Subspace::from_vectors(
            5,
            3,
            vec![vec![2, 4, 0], vec![1, 2, 0], vec![0, 0, 3]],
        );
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis(), &[vec![1, 2, 0], vec![0, 0, 1]]);
        let same = Subspace::from_vectors(5, 3, vec![vec![3, 6, 3], vec![4, 3, 0], vec![0, 1, 0]]);
        // different generators, same canonical form when spans agree
        let other = Subspace::from_vectors(5, 3, vec![vec![1, 2, 0], vec![0, 0, 2]]);
        assert_eq!(s, other);
        assert_ne!(s, same);
    }

    #[test]
    fn images_and_sums() {
        // nilpotent shift on F_2^3
        let mut t = FpMatrix::zeros(2, 3, 3);
        t.set(1, 0, 1);
        t.set(2, 1, 1);
        let full = Subspace::full(2, 3);
        let image = full.image_under(&t);
        assert_eq!(image.dim(), 2);
        let image2 = image.image_under(&t);
        assert_eq!(image2.dim(), 1);
        let image3 = image2.image_under(&t);
        assert_eq!(image3.dim(), 0);
        assert!(full.contains(&image));
        assert!(image.contains(&image2));
        assert_eq!(image.sum(&image2), image);
        assert_eq!(
            image.sum(&Subspace::zero(2, 3)),
            image
        );
    }

    #[test]
    fn matrix_products_commute_check() {
        let mut a = FpMatrix::zeros(3, 2, 2);
        a.set(0, 1, 1);
        let mut b = FpMatrix::zeros(3, 2, 2);
        b.set(0, 0, 2);
        b.set(1, 1, 2);
        // a scales nilpotently, b is scalar: they commute
        assert_eq!(a.mul(&b), b.mul(&a));
        let mut c = FpMatrix::zeros(3, 2, 2);
        c.set(1, 0, 1);
        assert_ne!(a.mul(&c), c.mul(&a));
    }
}

//! Lattices in `Z^k` and `Q^k` in row-style Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Zero rows are dropped. Pivots are positive and move strictly right;
/// entries above a pivot lie in `[0, pivot)`. Two generating sets span the
/// same lattice iff their Hermite forms are equal.
pub fn hermite_normal_form(rows: &[Vec<i128>], width: usize) -> Vec<Vec<i128>> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .cloned()
        .collect();
    assert!(m.iter().all(|r| r.len() == width), "ragged generator list");
    let mut pivot_row = 0;
    for col in 0..width {
        if pivot_row == m.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below pivot_row moves up
            let best = (pivot_row..m.len())
                .filter(|&i| m[i][col] != 0)
                .min_by_key(|&i| m[i][col].abs());
            let Some(best) = best else { break };
            m.swap(pivot_row, best);
            let pivot = m[pivot_row][col];
            let mut done = true;
            for i in pivot_row + 1..m.len() {
                let q = m[i][col].div_euclid(pivot);
                if q != 0 {
                    let src = m[pivot_row].clone();
                    for (x, y) in m[i].iter_mut().zip(&src) {
                        *x -= q * y;
                    }
                }
                if m[i][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[pivot_row][col] == 0 {
            continue;
        }
        if m[pivot_row][col] < 0 {
            for x in m[pivot_row].iter_mut() {
                *x = -*x;
            }
        }
        let pivot = m[pivot_row][col];
        let src = m[pivot_row].clone();
        for row in m.iter_mut().take(pivot_row) {
            let q = row[col].div_euclid(pivot);
            if q != 0 {
                for (x, y) in row.iter_mut().zip(&src) {
                    *x -= q * y;
                }
            }
        }
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m.retain(|r| r.iter().any(|&x| x != 0));
    m
}

/// A subgroup of `Z^k` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntLattice {
    width: usize,
    basis: Vec<Vec<i128>>,
}

impl IntLattice {
    pub fn from_generators(width: usize, generators: &[Vec<i128>]) -> Self {
        IntLattice {
            width,
            basis: hermite_normal_form(generators, width),
        }
    }

    pub fn basis(&self) -> &[Vec<i128>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Absolute determinant for full-rank lattices.
    pub fn covolume(&self) -> Option<i128> {
        (self.rank() == self.width).then(|| self.basis.iter().enumerate().map(|(i, r)| r[i]).product())
    }

    /// Whether the lattice is all of `Z^k`.
    pub fn is_full(&self) -> bool {
        self.covolume() == Some(1)
    }
}

/// A finitely generated subgroup of `Q^k`, stored as `(1/D) H` with `H`
/// in Hermite form and `D` the least denominator clearing every vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalLattice {
    denominator: i128,
    scaled: IntLattice,
}

impl RationalLattice {
    pub fn from_generators(width: usize, generators: &[Vec<BigRational>]) -> Self {
        let mut den = BigInt::one();
        for g in generators {
            assert_eq!(g.len(), width, "ragged generator list");
            for x in g {
                den = den.lcm(x.denom());
            }
        }
        let scaled: Vec<Vec<i128>> = generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|x| {
                        (x * BigRational::from_integer(den.clone()))
                            .to_integer()
                            .to_i128()
                            .expect("lattice coordinates fit in i128")
                    })
                    .collect()
            })
            .collect();
        let mut lattice = IntLattice::from_generators(width, &scaled);
        let mut den = den.to_i128().expect("denominator fits in i128");
        let mut g = den;
        for row in &lattice.basis {
            for &x in row {
                g = g.gcd(&x);
            }
        }
        let g = g.abs();
        if g > 1 {
            den /= g;
            for row in lattice.basis.iter_mut() {
                for x in row.iter_mut() {
                    *x /= g;
                }
            }
        }
        RationalLattice {
            denominator: den,
            scaled: lattice,
        }
    }

    pub fn rank(&self) -> usize {
        self.scaled.rank()
    }

    pub fn denominator(&self) -> i128 {
        self.denominator
    }

    /// Canonical basis vectors with rational coordinates.
    pub fn basis(&self) -> Vec<Vec<BigRational>> {
        let den = BigInt::from(self.denominator);
        self.scaled
            .basis()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| BigRational::new(BigInt::from(x), den.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut gens = self.basis();
        gens.push(v.to_vec());
        RationalLattice::from_generators(self.scaled.width, &gens) == *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hnf_examples() {
        let h = hermite_normal_form(&[vec![2, 0], vec![0, 1], vec![0, 1]], 2);
        assert_eq!(h, vec![vec![2, 0], vec![0, 1]]);
        let h = hermite_normal_form(&[vec![3, 1], vec![5, 2]], 2);
        assert_eq!(h, vec![vec![1, 0], vec![0, 1]]);
        let h = hermite_normal_form(&[vec![4, 6], vec![6, 9]], 2);
        assert_eq!(h, vec![vec![2, 3]]);
        assert!(hermite_normal_form(&[vec![0, 0]], 2).is_empty());
    }

    #[test]
    fn lattice_predicates() {
        assert!(IntLattice::from_generators(2, &[vec![1, 0], vec![1, 1]]).is_full());
        let l = IntLattice::from_generators(2, &[vec![2, 0], vec![0, 1]]);
        assert!(!l.is_full());
        assert_eq!(l.covolume(), Some(2));
        assert_eq!(IntLattice::from_generators(2, &[vec![1, 1]]).covolume(), None);
    }

    #[test]
    fn rational_lattice_is_canonical() {
        let half = BigRational::new(1.into(), 2.into());
        let one = BigRational::one();
        let zero = BigRational::zero();
        let a = RationalLattice::from_generators(1, &[vec![half.clone()], vec![one.clone()]]);
        let b = RationalLattice::from_generators(1, &[vec![half.clone()]]);
        assert_eq!(a, b);
        assert_eq!(a.denominator(), 2);
        let c = RationalLattice::from_generators(1, &[vec![one.clone()]]);
        assert_ne!(a, c);
        assert!(a.contains(&[BigRational::from_integer(3.into())]));
        assert!(!c.contains(&[half]));
        assert!(c.contains(&[zero]));
    }

    proptest! {
        // unimodular changes of generators never change the form
        #[test]
        fn hnf_is_invariant_under_row_operations(
            rows in prop::collection::vec(prop::collection::vec(-9i128..10, 3), 1..5),
            k in -4i128..5,
            i in 0usize..5,
            j in 0usize..5,
        ) {
            let h = hermite_normal_form(&rows, 3);
            let mut moved = rows.clone();
            let (i, j) = (i % rows.len(), j % rows.len());
            if i != j {
                let src = moved[j].clone();
                for (x, y) in moved[i].iter_mut().zip(&src) {
                    *x += k * y;
                }
            }
            moved.reverse();
            prop_assert_eq!(hermite_normal_form(&moved, 3), h);
        }
    }
}

use std::fmt;

use thiserror::Error;

/// Integer 2x2 matrix, row-major.
pub type Mat2 = [[i64; 2]; 2];

pub const IDENTITY: Mat2 = [[1, 0], [0, 1]];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

pub fn det(m: &Mat2) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("matrix {0:?} has determinant {1}, not 1")]
    NotUnimodular(Mat2, i64),
}

/// Generators of SL(2,Z): `T = [[1,1],[0,1]]`, `S = [[0,-1],[1,0]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    T,
    TInv,
    S,
    SInv,
}

impl Generator {
    pub fn matrix(self) -> Mat2 {
        match self {
            Generator::T => [[1, 1], [0, 1]],
            Generator::TInv => [[1, -1], [0, 1]],
            Generator::S => [[0, -1], [1, 0]],
            Generator::SInv => [[0, 1], [-1, 0]],
        }
    }

    pub fn inverse(self) -> Generator {
        match self {
            Generator::T => Generator::TInv,
            Generator::TInv => Generator::T,
            Generator::S => Generator::SInv,
            Generator::SInv => Generator::S,
        }
    }
}

/// A word `g1 g2 ... gk` in the generators, with its matrix `g1·g2·...·gk`
/// cached. Acting on a surface applies `gk` first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SL2ZWord {
    generators: Vec<Generator>,
    matrix: Mat2,
}

impl SL2ZWord {
    pub fn identity() -> Self {
        SL2ZWord {
            generators: Vec::new(),
            matrix: IDENTITY,
        }
    }

    pub fn new(generators: Vec<Generator>) -> Self {
        let matrix = generators
            .iter()
            .fold(IDENTITY, |acc, g| mat_mul(&acc, &g.matrix()));
        SL2ZWord { generators, matrix }
    }

    /// `g^k`, with negative `k` meaning powers of the inverse.
    pub fn power(g: Generator, k: i64) -> Self {
        let base = if k >= 0 { g } else { g.inverse() };
        SL2ZWord::new(vec![base; k.unsigned_abs() as usize])
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn matrix(&self) -> Mat2 {
        self.matrix
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn then(&self, other: &SL2ZWord) -> SL2ZWord {
        let mut generators = self.generators.clone();
        generators.extend_from_slice(&other.generators);
        SL2ZWord {
            generators,
            matrix: mat_mul(&self.matrix, &other.matrix),
        }
    }

    pub fn inverse(&self) -> SL2ZWord {
        SL2ZWord::new(self.generators.iter().rev().map(|g| g.inverse()).collect())
    }

    /// Cancels adjacent inverse pairs.
    pub fn freely_reduced(&self) -> SL2ZWord {
        let mut out: Vec<Generator> = Vec::with_capacity(self.generators.len());
        for &g in &self.generators {
            if out.last() == Some(&g.inverse()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        SL2ZWord {
            generators: out,
            matrix: self.matrix,
        }
    }

    /// A word for a matrix of determinant 1, by the Euclidean algorithm on
    /// the first column.
    pub fn from_matrix(m: Mat2) -> Result<SL2ZWord, WordError> {
        let d = det(&m);
        if d != 1 {
            return Err(WordError::NotUnimodular(m, d));
        }
        // left factors applied so far: ops[k]·...·ops[0]·m = cur
        let mut ops: Vec<Generator> = Vec::new();
        let mut cur = m;
        while cur[1][0] != 0 {
            let (a, c) = (cur[0][0], cur[1][0]);
            if a.abs() >= c.abs() {
                let q = a / c;
                let g = if q > 0 { Generator::TInv } else { Generator::T };
                for _ in 0..q.unsigned_abs() {
                    ops.push(g);
                }
                cur = mat_mul(&SL2ZWord::power(Generator::T, -q).matrix, &cur);
            } else {
                ops.push(Generator::S);
                cur = mat_mul(&Generator::S.matrix(), &cur);
            }
        }
        // cur = ±T^b
        let mut rest = Vec::new();
        let b = if cur[0][0] == 1 {
            cur[0][1]
        } else {
            rest.extend([Generator::S, Generator::S]);
            -cur[0][1]
        };
        rest.extend(SL2ZWord::power(Generator::T, b).generators);
        let mut generators: Vec<Generator> = ops.iter().map(|g| g.inverse()).collect();
        generators.extend(rest);
        let word = SL2ZWord::new(generators).freely_reduced();
        debug_assert_eq!(word.matrix, m);
        Ok(word)
    }
}

impl fmt::Display for SL2ZWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<&str> = self
            .generators
            .iter()
            .map(|g| match g {
                Generator::T => "T",
                Generator::TInv => "T^-1",
                Generator::S => "S",
                Generator::SInv => "S^-1",
            })
            .collect();
        write!(f, "{}", names.join(" "))
    }
}

impl fmt::Debug for SL2ZWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SL2ZWord({self} = {:?})", self.matrix)
    }
}

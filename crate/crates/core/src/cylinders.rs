//! Cylinder decompositions of origamis in rational directions.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{apply_word, SL2ZWord};
use crate::origami::Origami;
use crate::quadfield::{squarefree_decomposition, QuadError, QuadNum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DirectionError {
    #[error("direction (0,0) is not a direction")]
    Zero,
    #[error("direction ({0},{1}) is not primitive")]
    NotCoprime(i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CylinderError {
    #[error("need at least two cylinders, got {0}")]
    TooFew(usize),
    #[error(transparent)]
    Field(#[from] QuadError),
}

/// A maximal horizontal cylinder: `height` rows of `width` squares each.
/// `rows[k]` lists the squares of the `k`-th row from the bottom, left to
/// right, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    pub width: usize,
    pub height: usize,
    pub rows: Vec<Vec<usize>>,
}

impl Cylinder {
    pub fn area(&self) -> usize {
        self.width * self.height
    }
}

/// Horizontal cylinders, sorted by smallest square label.
pub fn horizontal_decomposition(o: &Origami) -> Vec<Cylinder> {
    let n = o.n();
    let rows = o.h().cycles();
    let mut row_of = vec![0usize; n];
    for (r, cycle) in rows.iter().enumerate() {
        for &s in cycle {
            row_of[s - 1] = r;
        }
    }
    let angles = o.cone_angles();
    let corner = o.corner_vertices();
    // the top edge of a row is crossed only by regular vertices iff the
    // row above continues the same cylinder
    let merges_up: Vec<Option<usize>> = rows
        .iter()
        .map(|cycle| {
            let regular = cycle
                .iter()
                .all(|&s| angles[corner[o.v().apply(s - 1)]] == 1);
            regular.then(|| row_of[o.v().apply(cycle[0] - 1)])
        })
        .collect();
    let mut merges_down: Vec<Option<usize>> = vec![None; rows.len()];
    for (r, up) in merges_up.iter().enumerate() {
        if let Some(u) = *up {
            merges_down[u] = Some(r);
        }
    }

    let mut used = vec![false; rows.len()];
    let mut cylinders = Vec::new();
    for start in 0..rows.len() {
        if used[start] {
            continue;
        }
        // walk down to the bottom row; a closed chain starts at `start`,
        // which contains the least label of the chain
        let mut bottom = start;
        while let Some(d) = merges_down[bottom] {
            if d == start {
                bottom = start;
                break;
            }
            bottom = d;
        }
        let mut layout = Vec::new();
        let mut current = rows[bottom].clone();
        let mut r = bottom;
        loop {
            used[r] = true;
            layout.push(current.clone());
            match merges_up[r] {
                Some(u) if u != bottom => {
                    current = current.iter().map(|&s| o.v().apply(s - 1) + 1).collect();
                    r = u;
                }
                _ => break,
            }
        }
        cylinders.push(Cylinder {
            width: rows[bottom].len(),
            height: layout.len(),
            rows: layout,
        });
    }
    cylinders.sort_by_key(|c| c.rows.iter().flatten().copied().min());
    cylinders
}

fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

/// A word whose matrix `U` has `U·(p,q)ᵀ = (1,0)ᵀ`.
pub fn direction_to_horizontal(p: i64, q: i64) -> Result<SL2ZWord, DirectionError> {
    if p == 0 && q == 0 {
        return Err(DirectionError::Zero);
    }
    let (g, mut x, mut y) = extended_gcd(p, q);
    let g = if g < 0 {
        x = -x;
        y = -y;
        -g
    } else {
        g
    };
    if g != 1 {
        return Err(DirectionError::NotCoprime(p, q));
    }
    let u = [[x, y], [-q, p]];
    Ok(SL2ZWord::from_matrix(u).expect("x p + y q = 1"))
}

/// `coeff * sqrt(radicand)` with `radicand` squarefree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactLength {
    pub coeff: u64,
    pub radicand: u64,
}

impl ExactLength {
    pub fn new(coeff: u64, radicand: u64) -> Self {
        let (square, core) = squarefree_decomposition(radicand);
        ExactLength {
            coeff: coeff * square,
            radicand: core,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff as f64 * (self.radicand as f64).sqrt()
    }
}

impl fmt::Display for ExactLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 1 {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

/// A cylinder in direction `(p, q)`, described on the transported surface,
/// with the length of its core curve on the original one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedCylinder {
    pub cylinder: Cylinder,
    pub length: ExactLength,
}

pub fn decomposition_in_direction(
    o: &Origami,
    p: i64,
    q: i64,
) -> Result<Vec<DirectedCylinder>, DirectionError> {
    let word = direction_to_horizontal(p, q)?;
    let moved = apply_word(o, &word);
    let step = (p * p + q * q) as u64;
    Ok(horizontal_decomposition(&moved)
        .into_iter()
        .map(|cylinder| DirectedCylinder {
            length: ExactLength::new(cylinder.width as u64, step),
            cylinder,
        })
        .collect())
}

/// JSON row for a cylinder in a direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CylinderRecord {
    pub width: usize,
    pub height: usize,
    pub length: String,
}

impl From<&DirectedCylinder> for CylinderRecord {
    fn from(c: &DirectedCylinder) -> Self {
        CylinderRecord {
            width: c.cylinder.width,
            height: c.cylinder.height,
            length: c.length.to_string(),
        }
    }
}

/// A cylinder with circumference and height in a quadratic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadCylinder {
    pub width: QuadNum,
    pub height: QuadNum,
}

impl QuadCylinder {
    pub fn new(width: QuadNum, height: QuadNum) -> Self {
        QuadCylinder { width, height }
    }

    pub fn from_integers(width: i64, height: i64) -> Self {
        QuadCylinder::new(QuadNum::from_integer(width), QuadNum::from_integer(height))
    }

    /// `height / width`
    pub fn modulus(&self) -> Result<QuadNum, QuadError> {
        self.height.try_div(&self.width)
    }

    pub fn area(&self) -> Result<QuadNum, QuadError> {
        self.width.try_mul(&self.height)
    }
}

/// `modulus(first) / modulus(i)` for every later cylinder.
pub fn modulus_ratios(cyls: &[QuadCylinder]) -> Result<Vec<QuadNum>, CylinderError> {
    if cyls.len() < 2 {
        return Err(CylinderError::TooFew(cyls.len()));
    }
    let first = cyls[0].modulus()?;
    cyls[1..]
        .iter()
        .map(|c| Ok(first.try_div(&c.modulus()?)?))
        .collect()
}

/// The two horizontal cylinders of the regular octagon with unit sides.
pub fn octagon_horizontal_cylinders() -> Vec<QuadCylinder> {
    let rt2 = QuadNum::sqrt(2).expect("2 is squarefree");
    let one = QuadNum::from_integer(1);
    let half_rt2 = QuadNum::from_parts(0, 1, 1, 2, 2).expect("valid");
    vec![
        QuadCylinder::new(&one + &rt2, one.clone()),
        QuadCylinder::new(&QuadNum::from_integer(2) + &rt2, half_rt2),
    ]
}

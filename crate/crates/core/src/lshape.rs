//! L-shaped surfaces `L(a, 1)`: a unit square stacked on the left end of an
//! `a × 1` rectangle.
//!
//! The shifted variant slides the upper square left by `shift`, so that it
//! overhangs the bottom rectangle; a generic shift splits the cone point of
//! `L(a, 1)` into two.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cylinders::QuadCylinder;
use crate::lattice::RationalLattice;
use crate::origami::Stratum;
use crate::quadfield::{squarefree_decomposition, QuadError, QuadMatrix, QuadNum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LShapeError {
    #[error("the long side must exceed 1, got {0}")]
    TooShort(String),
    #[error("shift must lie in [0, 1), got {0}")]
    ShiftOutOfRange(String),
    #[error("shift {shift} makes cone points collide (stratum {stratum})")]
    DegenerateShift { shift: String, stratum: Stratum },
    #[error("4a is not a common multiple of the cylinder moduli for a = {0}")]
    NoParabolicElement(String),
    #[error("vertical cylinders are only described for the unshifted surface")]
    Shifted,
    #[error(transparent)]
    Field(#[from] QuadError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LSurface {
    a: QuadNum,
    shift: QuadNum,
}

fn one() -> QuadNum {
    QuadNum::from_integer(1)
}

fn zero() -> QuadNum {
    QuadNum::from_integer(0)
}

impl LSurface {
    pub fn new(a: QuadNum, shift: QuadNum) -> Result<Self, LShapeError> {
        if a.try_cmp(&one())? != Ordering::Greater {
            return Err(LShapeError::TooShort(a.to_string()));
        }
        if shift.signum() == Ordering::Less || shift.try_cmp(&one())? != Ordering::Less {
            return Err(LShapeError::ShiftOutOfRange(shift.to_string()));
        }
        a.try_add(&shift)?;
        let l = LSurface { a, shift };
        if !l.shift.is_zero() {
            let stratum = l.stratum();
            if stratum != Stratum::new(vec![1, 1]) {
                return Err(LShapeError::DegenerateShift {
                    shift: l.shift.to_string(),
                    stratum,
                });
            }
        }
        Ok(l)
    }

    /// `L(a, 1)` with `a = (1 + √d) / 2`; for a perfect square `d` the
    /// result is rational.
    pub fn from_d(d: u64) -> Result<Self, LShapeError> {
        let (square, core) = squarefree_decomposition(d);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let a = if core == 1 {
            QuadNum::from_rational(&half + BigRational::new(BigInt::from(square), BigInt::from(2)))
        } else {
            QuadNum::new(half, BigRational::new(BigInt::from(square), BigInt::from(2)), core)?
        };
        LSurface::new(a, zero())
    }

    pub fn with_shift(&self, shift: QuadNum) -> Result<Self, LShapeError> {
        LSurface::new(self.a.clone(), shift)
    }

    pub fn a(&self) -> &QuadNum {
        &self.a
    }

    pub fn shift(&self) -> &QuadNum {
        &self.shift
    }

    pub fn area(&self) -> QuadNum {
        &(&self.a + &self.a) - &one()
    }

    pub fn horizontal_cylinders(&self) -> Vec<QuadCylinder> {
        vec![
            QuadCylinder::new(self.a.clone(), one()),
            QuadCylinder::new(one(), &self.a - &one()),
        ]
    }

    /// Column `[0,1]` has circumference `a`; columns `[1,a]` have
    /// circumference 1.
    pub fn vertical_cylinders(&self) -> Result<Vec<QuadCylinder>, LShapeError> {
        if !self.shift.is_zero() {
            return Err(LShapeError::Shifted);
        }
        Ok(vec![
            QuadCylinder::new(self.a.clone(), one()),
            QuadCylinder::new(one(), &self.a - &one()),
        ])
    }

    /// Powers of the Dehn twists of the two horizontal cylinders realised by
    /// `[[1, t], [0, 1]]`: `t` times the modulus of each cylinder, when both
    /// are integers.
    pub fn twist_powers(&self, t: &QuadNum) -> Option<(BigInt, BigInt)> {
        let powers: Option<Vec<BigInt>> = self
            .horizontal_cylinders()
            .iter()
            .map(|c| {
                let m = c.modulus().ok()?;
                t.try_mul(&m).ok()?.to_integer()
            })
            .collect();
        let mut powers = powers?;
        let top = powers.pop()?;
        let bottom = powers.pop()?;
        Some((bottom, top))
    }

    /// Horizontal and vertical parabolic elements `[[1,4a],[0,1]]` and
    /// `[[1,0],[4a,1]]`.
    pub fn veech_generators(&self) -> Result<(QuadMatrix, QuadMatrix), LShapeError> {
        let t = &self.a * &QuadNum::from_integer(4);
        if self.twist_powers(&t).is_none() {
            return Err(LShapeError::NoParabolicElement(self.a.to_string()));
        }
        Ok((QuadMatrix::upper_unipotent(t.clone()), QuadMatrix::lower_unipotent(t)))
    }

    pub fn trace_field(&self) -> Result<TraceField, LShapeError> {
        let (a, b) = self.veech_generators()?;
        let trace = a.try_mul(&b)?.trace()?;
        let degree = trace.minimal_poly_degree();
        let field = if degree == 1 {
            "Q".to_string()
        } else {
            format!("Q[sqrt({})]", trace.radicand())
        };
        Ok(TraceField {
            generator_trace: trace,
            degree,
            field,
        })
    }

    fn polygon(&self) -> Polygon {
        let a = &self.a;
        let s = &self.shift;
        let p = |x: &QuadNum, y: &QuadNum| (x.clone(), y.clone());
        let (o, i) = (zero(), one());
        let a1 = &i - s;
        if s.is_zero() {
            // (0,0) (1,0) (a,0) (a,1) (1,1) (1,a) (0,a) (0,1)
            Polygon {
                vertices: vec![
                    p(&o, &o),
                    p(&i, &o),
                    p(a, &o),
                    p(a, &i),
                    p(&i, &i),
                    p(&i, a),
                    p(&o, a),
                    p(&o, &i),
                ],
                partner: vec![5, 3, 7, 1, 6, 0, 4, 2],
            }
        } else {
            let ms = -s;
            Polygon {
                vertices: vec![
                    p(&o, &o),
                    p(&a1, &o),
                    p(a, &o),
                    p(a, &i),
                    p(&a1, &i),
                    p(&a1, a),
                    p(&o, a),
                    p(&ms, a),
                    p(&ms, &i),
                    p(&o, &i),
                ],
                partner: vec![5, 3, 9, 1, 7, 0, 8, 4, 6, 2],
            }
        }
    }

    /// Cone orders read off the polygon model.
    pub fn stratum(&self) -> Stratum {
        self.polygon().stratum()
    }

    /// The subgroup of `Q(√d)²` spanned by holonomies of closed curves, in
    /// coordinates `(x₀, x₁, y₀, y₁)` for `(x₀ + x₁√d, y₀ + y₁√d)`.
    pub fn absolute_period_lattice(&self) -> RationalLattice {
        let gens: Vec<Vec<BigRational>> = self
            .polygon()
            .cycle_holonomies()
            .iter()
            .map(|(x, y)| coordinates(x, y))
            .collect();
        RationalLattice::from_generators(4, &gens)
    }

    /// Span of the cylinder core curves and the curves crossing them:
    /// `(a,0)`, `(1,0)`, `(0,1)`, `(0,a-1)`.
    pub fn core_curve_lattice(&self) -> RationalLattice {
        let a = &self.a;
        let gens = [
            (a.clone(), zero()),
            (one(), zero()),
            (zero(), one()),
            (zero(), a - &one()),
        ];
        let gens: Vec<Vec<BigRational>> = gens.iter().map(|(x, y)| coordinates(x, y)).collect();
        RationalLattice::from_generators(4, &gens)
    }

    pub fn report(&self) -> Result<LShapeReport, LShapeError> {
        let (a, b) = self.veech_generators()?;
        let tf = self.trace_field()?;
        let twist = self
            .twist_powers(&(&self.a * &QuadNum::from_integer(4)))
            .expect("checked by veech_generators");
        let rows = |m: &QuadMatrix| {
            vec![
                vec![m.m11.to_string(), m.m12.to_string()],
                vec![m.m21.to_string(), m.m22.to_string()],
            ]
        };
        Ok(LShapeReport {
            a: self.a.to_string(),
            cylinders: self
                .horizontal_cylinders()
                .iter()
                .map(|c| CylinderText {
                    width: c.width.to_string(),
                    height: c.height.to_string(),
                })
                .collect(),
            twist_powers: [twist.0.to_string(), twist.1.to_string()],
            generators: [rows(&a), rows(&b)],
            trace: tf.generator_trace.to_string(),
            degree: tf.degree,
            field: tf.field,
            stratum: self.stratum().to_string(),
        })
    }
}

fn coordinates(x: &QuadNum, y: &QuadNum) -> Vec<BigRational> {
    vec![
        x.rational_part().clone(),
        x.irrational_part().clone(),
        y.rational_part().clone(),
        y.irrational_part().clone(),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceField {
    pub generator_trace: QuadNum,
    pub degree: u32,
    pub field: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CylinderText {
    pub width: String,
    pub height: String,
}

/// JSON summary of an L-shaped surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LShapeReport {
    pub a: String,
    pub cylinders: Vec<CylinderText>,
    pub twist_powers: [String; 2],
    pub generators: [Vec<Vec<String>>; 2],
    pub trace: String,
    pub degree: u32,
    pub field: String,
    pub stratum: String,
}

/// A polygon, counterclockwise, whose edge `i` runs from vertex `i` to
/// vertex `i+1` and is glued by translation to edge `partner[i]`.
struct Polygon {
    vertices: Vec<(QuadNum, QuadNum)>,
    partner: Vec<usize>,
}

impl Polygon {
    fn len(&self) -> usize {
        self.vertices.len()
    }

    fn edge(&self, i: usize) -> (QuadNum, QuadNum) {
        let (x0, y0) = &self.vertices[i];
        let (x1, y1) = &self.vertices[(i + 1) % self.len()];
        (x1 - x0, y1 - y0)
    }

    /// Surface vertex of each polygon vertex.
    fn vertex_classes(&self) -> Vec<usize> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            parent[i] = r;
            r
        }
        for i in 0..n {
            let j = self.partner[i];
            // edge i = P_i → P_{i+1} is glued reversed onto P_j → P_{j+1}
            for (u, w) in [(i, (j + 1) % n), ((i + 1) % n, j)] {
                let (ru, rw) = (find(&mut parent, u), find(&mut parent, w));
                parent[ru] = rw;
            }
        }
        let mut label = HashMap::new();
        (0..n)
            .map(|i| {
                let r = find(&mut parent, i);
                let next = label.len();
                *label.entry(r).or_insert(next)
            })
            .collect()
    }

    /// Interior angle at vertex `i` in quarter turns; every edge is axis
    /// parallel.
    fn quarter_turns(&self, i: usize) -> usize {
        let n = self.len();
        let (ix, iy) = self.edge((i + n - 1) % n);
        let (ox, oy) = self.edge(i);
        let cross = &(&ix * &oy) - &(&iy * &ox);
        match cross.signum() {
            Ordering::Greater => 1,
            Ordering::Equal => 2,
            Ordering::Less => 3,
        }
    }

    fn stratum(&self) -> Stratum {
        let classes = self.vertex_classes();
        let count = classes.iter().max().map_or(0, |m| m + 1);
        let mut turns = vec![0usize; count];
        for (i, &c) in classes.iter().enumerate() {
            turns[c] += self.quarter_turns(i);
        }
        Stratum::new(turns.iter().map(|t| (t / 4) as u32 - 1).collect())
    }

    /// Holonomies of the fundamental cycles of the glued 1-skeleton.
    fn cycle_holonomies(&self) -> Vec<(QuadNum, QuadNum)> {
        let classes = self.vertex_classes();
        let n = self.len();
        let count = classes.iter().max().map_or(0, |m| m + 1);
        // one graph edge per glued pair
        let edges: Vec<(usize, usize, (QuadNum, QuadNum))> = (0..n)
            .filter(|&i| i < self.partner[i])
            .map(|i| (classes[i], classes[(i + 1) % n], self.edge(i)))
            .collect();
        let mut position: Vec<Option<(QuadNum, QuadNum)>> = vec![None; count];
        position[0] = Some((zero(), zero()));
        let mut tree = vec![false; edges.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for (k, (u, w, (hx, hy))) in edges.iter().enumerate() {
                match (&position[*u], &position[*w]) {
                    (Some((x, y)), None) => {
                        position[*w] = Some((x + hx, y + hy));
                        tree[k] = true;
                        changed = true;
                    }
                    (None, Some((x, y))) => {
                        position[*u] = Some((x - hx, y - hy));
                        tree[k] = true;
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        edges
            .iter()
            .zip(&tree)
            .filter(|(_, &t)| !t)
            .map(|((u, w, (hx, hy)), _)| {
                let (ux, uy) = position[*u].clone().expect("connected");
                let (wx, wy) = position[*w].clone().expect("connected");
                (&(&ux + hx) - &wx, &(&uy + hy) - &wy)
            })
            .collect()
    }
}

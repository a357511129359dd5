//! The SL(2,Z) action on origamis.
//!
//! A matrix `A` acts by post-composing the charts of the surface with `A`
//! and re-cutting the image into unit squares; square `s` of `A·X` keeps the
//! bottom-left corner of square `s` of `X`. On generators:
//!
//! * `T = [[1,1],[0,1]]`: `(h, v) ↦ (h, v∘h⁻¹)`
//! * `S = [[0,-1],[1,0]]` (quarter turn counterclockwise): `(h, v) ↦ (v⁻¹, h)`
//!
//! Orbits are computed projectively: `S²` is the half turn, which fixes
//! every origami of genus at most two, and an origami is identified with its
//! half turn throughout. [`OrbitReport::half_turn_nontrivial`] records
//! whether that identification merged distinct surfaces.

pub mod hyperbolic;
mod word;

use std::collections::{HashMap, HashSet};

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use word::{det, mat_mul, Generator, Mat2, SL2ZWord, WordError, IDENTITY};

use crate::cylinders::{direction_to_horizontal, horizontal_decomposition, DirectionError};
use crate::origami::Origami;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error(transparent)]
    Direction(#[from] DirectionError),
    #[error("orbit invariant violated: {0}")]
    InvariantViolation(String),
    #[error("origami is not in the orbit")]
    NotInOrbit,
}

fn shear(o: &Origami) -> Origami {
    let v = o.v().compose_unchecked(&o.h().inverse());
    Origami::from_parts_unchecked(o.h().clone(), v)
}

fn shear_inv(o: &Origami) -> Origami {
    let v = o.v().compose_unchecked(o.h());
    Origami::from_parts_unchecked(o.h().clone(), v)
}

fn quarter_turn(o: &Origami) -> Origami {
    Origami::from_parts_unchecked(o.v().inverse(), o.h().clone())
}

fn quarter_turn_inv(o: &Origami) -> Origami {
    Origami::from_parts_unchecked(o.v().clone(), o.h().inverse())
}

/// One generator, keeping square labels.
pub fn apply_generator(o: &Origami, g: Generator) -> Origami {
    match g {
        Generator::T => shear(o),
        Generator::TInv => shear_inv(o),
        Generator::S => quarter_turn(o),
        Generator::SInv => quarter_turn_inv(o),
    }
}

/// `w·o`, keeping square labels.
pub fn apply_word(o: &Origami, w: &SL2ZWord) -> Origami {
    w.generators()
        .iter()
        .rev()
        .fold(o.clone(), |acc, &g| apply_generator(&acc, g))
}

pub fn act_t(o: &Origami) -> Origami {
    shear(o).canonical_form()
}

pub fn act_t_inv(o: &Origami) -> Origami {
    shear_inv(o).canonical_form()
}

pub fn act_s(o: &Origami) -> Origami {
    quarter_turn(o).canonical_form()
}

pub fn act_s_inv(o: &Origami) -> Origami {
    quarter_turn_inv(o).canonical_form()
}

pub fn act_word(o: &Origami, w: &SL2ZWord) -> Origami {
    apply_word(o, w).canonical_form()
}

/// Half turn `S²`: `(h, v) ↦ (h⁻¹, v⁻¹)`.
pub fn half_turn(o: &Origami) -> Origami {
    Origami::from_parts_unchecked(o.h().inverse(), o.v().inverse())
}

/// Whether `w` stabilises `o` up to relabelling.
pub fn in_veech_group(o: &Origami, w: &SL2ZWord) -> bool {
    act_word(o, w) == o.canonical_form()
}

/// Canonical representative of `{X, S²X}`.
pub fn projective_key(o: &Origami) -> Origami {
    let a = o.canonical_form();
    let b = half_turn(&a).canonical_form();
    a.min(b)
}

/// A cusp of the Teichmüller curve, i.e. an orbit of `T` on the
/// SL(2,Z)-orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cusp {
    pub width: usize,
    pub cylinder_count: usize,
    pub representative: Origami,
}

/// The SL(2,Z)-orbit of an origami with the invariants of its Teichmüller
/// curve.
#[derive(Debug, Clone)]
pub struct OrbitReport {
    /// Canonical forms of every surface in the orbit, sorted.
    pub representatives: Vec<Origami>,
    /// Number of points of the projective orbit.
    pub index: usize,
    pub cusps: Vec<Cusp>,
    pub e2: usize,
    pub e3: usize,
    pub curve_genus: usize,
    pub reduced: bool,
    /// Some surface in the orbit differs from its half turn.
    pub half_turn_nontrivial: bool,
    cusp_of_key: HashMap<Origami, usize>,
}

/// JSON form of an [`OrbitReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitSummary {
    pub index: usize,
    pub cusps: Vec<CuspSummary>,
    pub e2: usize,
    pub e3: usize,
    pub genus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuspSummary {
    pub width: usize,
    pub cylinders: usize,
}

impl OrbitReport {
    pub fn contains(&self, o: &Origami) -> bool {
        self.cusp_of_key.contains_key(&projective_key(o))
    }

    /// Index into [`OrbitReport::cusps`] of the `T`-orbit containing `o`.
    pub fn cusp_of(&self, o: &Origami) -> Option<usize> {
        self.cusp_of_key.get(&projective_key(o)).copied()
    }

    pub fn cusp_widths(&self) -> Vec<usize> {
        self.cusps.iter().map(|c| c.width).collect()
    }

    pub fn summary(&self) -> OrbitSummary {
        OrbitSummary {
            index: self.index,
            cusps: self
                .cusps
                .iter()
                .map(|c| CuspSummary {
                    width: c.width,
                    cylinders: c.cylinder_count,
                })
                .collect(),
            e2: self.e2,
            e3: self.e3,
            genus: self.curve_genus,
        }
    }
}

const PARALLEL_FRONTIER: usize = 64;

fn neighbours(key: &Origami) -> [Origami; 3] {
    [
        projective_key(&shear(key)),
        projective_key(&shear_inv(key)),
        projective_key(&quarter_turn(key)),
    ]
}

/// Breadth-first closure under `T`, `T⁻¹` and `S`.
pub fn orbit(o: &Origami) -> Result<OrbitReport, ActionError> {
    let report = orbit_quiet(o)?;
    if !report.reduced {
        warn!("{o} is not reduced; its Veech group need not be contained in SL(2,Z)");
    }
    Ok(report)
}

/// [`orbit`] without the warning for non-reduced input.
pub(crate) fn orbit_quiet(o: &Origami) -> Result<OrbitReport, ActionError> {
    let reduced = o.is_reduced();
    let start = projective_key(o);
    let mut seen: HashSet<Origami> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let found: Vec<Origami> = if frontier.len() >= PARALLEL_FRONTIER {
            frontier.par_iter().flat_map_iter(neighbours).collect()
        } else {
            frontier.iter().flat_map(neighbours).collect()
        };
        frontier = found.into_iter().filter(|k| seen.insert(k.clone())).collect();
    }
    let mut keys: Vec<Origami> = seen.into_iter().collect();
    keys.sort();
    let index_of: HashMap<&Origami, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let lookup = |k: Origami| -> Result<usize, ActionError> {
        index_of
            .get(&k)
            .copied()
            .ok_or_else(|| ActionError::InvariantViolation("orbit not closed".into()))
    };
    let t_images: Vec<usize> = keys
        .iter()
        .map(|k| lookup(projective_key(&shear(k))))
        .collect::<Result<_, _>>()?;
    let s_images: Vec<usize> = keys
        .iter()
        .map(|k| lookup(projective_key(&quarter_turn(k))))
        .collect::<Result<_, _>>()?;

    let index = keys.len();
    let t_perm = Permutation::from_indices(t_images.clone())
        .map_err(|_| ActionError::InvariantViolation("T does not permute the orbit".into()))?;
    let mut cusps = Vec::new();
    let mut cusp_of_key = HashMap::new();
    for cycle in t_perm.cycles() {
        let representative = keys[cycle[0] - 1].clone();
        let cylinder_count = horizontal_decomposition(&representative).len();
        cusps.push((cycle, Cusp {
            width: 0,
            cylinder_count,
            representative,
        }));
    }
    cusps.sort_by(|(a, ca), (b, cb)| {
        (b.len(), cb.cylinder_count, &ca.representative).cmp(&(a.len(), ca.cylinder_count, &cb.representative))
    });
    let cusps: Vec<Cusp> = cusps
        .into_iter()
        .enumerate()
        .map(|(id, (cycle, mut cusp))| {
            cusp.width = cycle.len();
            for label in cycle {
                cusp_of_key.insert(keys[label - 1].clone(), id);
            }
            cusp
        })
        .collect();

    let e2 = (0..index).filter(|&i| s_images[i] == i).count();
    let e3 = (0..index).filter(|&i| s_images[t_images[i]] == i).count();
    let width_sum: usize = cusps.iter().map(|c| c.width).sum();
    if width_sum != index {
        return Err(ActionError::InvariantViolation(format!(
            "cusp widths sum to {width_sum}, index is {index}"
        )));
    }
    // 12 (g - 1) = index - 3 e2 - 4 e3 - 6 cusps
    let twelve_g = 12 + index as i64 - 3 * e2 as i64 - 4 * e3 as i64 - 6 * cusps.len() as i64;
    if twelve_g < 0 || twelve_g % 12 != 0 {
        return Err(ActionError::InvariantViolation(format!(
            "genus formula gives {twelve_g}/12"
        )));
    }

    let mut half_turn_nontrivial = false;
    let mut representatives = Vec::with_capacity(index);
    for k in &keys {
        representatives.push(k.clone());
        let other = half_turn(k).canonical_form();
        if &other != k {
            half_turn_nontrivial = true;
            representatives.push(other);
        }
    }
    representatives.sort();
    representatives.dedup();

    Ok(OrbitReport {
        representatives,
        index,
        cusps,
        e2,
        e3,
        curve_genus: (twelve_g / 12) as usize,
        reduced,
        half_turn_nontrivial,
        cusp_of_key,
    })
}

/// Cusp of the closed direction `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlopeCusp {
    pub cusp: usize,
    pub cylinder_count: usize,
}

/// Which cusp the direction `(p, q)` of `o` escapes to, using a precomputed
/// orbit of `o`.
pub fn slope_cusp_in(report: &OrbitReport, o: &Origami, p: i64, q: i64) -> Result<SlopeCusp, ActionError> {
    let word = direction_to_horizontal(p, q)?;
    let moved = apply_word(o, &word);
    let cusp = report.cusp_of(&moved).ok_or(ActionError::NotInOrbit)?;
    Ok(SlopeCusp {
        cusp,
        cylinder_count: horizontal_decomposition(&moved).len(),
    })
}

pub fn slope_cusp(o: &Origami, p: i64, q: i64) -> Result<SlopeCusp, ActionError> {
    let report = orbit(o)?;
    slope_cusp_in(&report, o, p, q)
}

//! Straight-line flow on origamis.
//!
//! Exact tracing moves from edge to edge with rational or `Q(√d)`
//! arithmetic, so periodicity and corner hits are decided exactly. Floats
//! only appear in [`discrepancy`].

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cylinders::{decomposition_in_direction, DirectionError, ExactLength};
use crate::origami::Origami;
use crate::quadfield::{ExactScalar, QuadError, QuadNum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("flow direction is zero")]
    ZeroDirection,
    #[error("square {0} does not exist")]
    NoSuchSquare(usize),
    #[error("start point lies outside the unit square")]
    OutsideSquare,
    #[error("start point is a cone point of angle {0}·2π")]
    SingularStart(usize),
    #[error(transparent)]
    Direction(#[from] DirectionError),
    #[error("shear parameter must lie in [0, 1)")]
    ShearOutOfRange,
    #[error(transparent)]
    Field(#[from] QuadError),
}

/// A point of square `square` (0-based) with local coordinates in `[0,1]²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlowState<S> {
    pub square: usize,
    pub x: S,
    pub y: S,
}

impl<S: ExactScalar> FlowState<S> {
    pub fn new(square: usize, x: S, y: S) -> Self {
        FlowState { square, x, y }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceOutcome<S> {
    /// The state after `crossings` edge crossings equals the first recorded
    /// one; `time` is the flow time of one period.
    Periodic { crossings: usize, time: S },
    /// The trajectory ran into the cone point `vertex` (index into the
    /// commutator cycles).
    Singular { crossings: usize, vertex: usize, time: S },
    /// `max_crossings` reached without a verdict.
    Undecided { crossings: usize },
}

#[derive(Debug, Clone)]
pub struct TraceReport<S> {
    pub outcome: TraceOutcome<S>,
    /// States right after each crossing.
    pub events: Vec<FlowState<S>>,
}

impl<S: ExactScalar> TraceReport<S> {
    pub fn period_time(&self) -> Option<&S> {
        match &self.outcome {
            TraceOutcome::Periodic { time, .. } => Some(time),
            _ => None,
        }
    }

    pub fn crossings(&self) -> usize {
        match self.outcome {
            TraceOutcome::Periodic { crossings, .. }
            | TraceOutcome::Singular { crossings, .. }
            | TraceOutcome::Undecided { crossings } => crossings,
        }
    }
}

fn corner_vertex(o: &Origami, corner: &[usize], s: usize, right: bool, top: bool) -> usize {
    let mut t = s;
    if right {
        t = o.h().apply(t);
    }
    if top {
        t = o.v().apply(t);
    }
    corner[t]
}

/// Time until the coordinate `p` moving at speed `dp` leaves `[0,1]`.
fn exit_time<S: ExactScalar>(p: &S, dp: &S) -> Option<S> {
    match dp.sign() {
        Ordering::Greater => Some(p.integer_like(1).sub_exact(p).div_exact(dp)),
        Ordering::Less => Some(p.div_exact(&p.integer_like(0).sub_exact(dp))),
        Ordering::Equal => None,
    }
}

/// Follows the flow in direction `(dx, dy)` from `start`.
pub fn trace<S: ExactScalar>(
    o: &Origami,
    start: &FlowState<S>,
    dir: (&S, &S),
    max_crossings: usize,
) -> Result<TraceReport<S>, FlowError> {
    let (dx, dy) = dir;
    if dx.is_zero_exact() && dy.is_zero_exact() {
        return Err(FlowError::ZeroDirection);
    }
    if start.square >= o.n() {
        return Err(FlowError::NoSuchSquare(start.square));
    }
    let zero = dx.integer_like(0);
    let one = dx.integer_like(1);
    let inside = |p: &S| p.cmp_exact(&zero) != Ordering::Less && p.cmp_exact(&one) != Ordering::Greater;
    if !inside(&start.x) || !inside(&start.y) {
        return Err(FlowError::OutsideSquare);
    }
    let angles = o.cone_angles();
    let corner = o.corner_vertices();
    let on_side = |p: &S| {
        if p.is_zero_exact() {
            Some(false)
        } else if p.cmp_exact(&one) == Ordering::Equal {
            Some(true)
        } else {
            None
        }
    };
    if let (Some(r), Some(t)) = (on_side(&start.x), on_side(&start.y)) {
        let vertex = corner_vertex(o, &corner, start.square, r, t);
        if angles[vertex] > 1 {
            return Err(FlowError::SingularStart(angles[vertex]));
        }
    }

    let mut seen: HashMap<FlowState<S>, (usize, S)> = HashMap::new();
    let mut events = Vec::new();
    let mut state = start.clone();
    let mut time = zero.clone();
    for crossing in 1..=max_crossings {
        let tx = exit_time(&state.x, dx);
        let ty = exit_time(&state.y, dy);
        let (t, cross_x, cross_y) = match (&tx, &ty) {
            (Some(a), Some(b)) => match a.cmp_exact(b) {
                Ordering::Less => (a.clone(), true, false),
                Ordering::Greater => (b.clone(), false, true),
                Ordering::Equal => (a.clone(), true, true),
            },
            (Some(a), None) => (a.clone(), true, false),
            (None, Some(b)) => (b.clone(), false, true),
            (None, None) => unreachable!("direction is nonzero"),
        };
        time = time.add_exact(&t);
        let right = dx.sign() == Ordering::Greater;
        let up = dy.sign() == Ordering::Greater;
        if cross_x && cross_y {
            let vertex = corner_vertex(o, &corner, state.square, right, up);
            if angles[vertex] > 1 {
                return Ok(TraceReport {
                    outcome: TraceOutcome::Singular {
                        crossings: crossing,
                        vertex,
                        time,
                    },
                    events,
                });
            }
        }
        let mut s = state.square;
        let mut x = state.x.add_exact(&t.mul_exact(dx));
        let mut y = state.y.add_exact(&t.mul_exact(dy));
        if cross_x {
            if right {
                s = o.h().apply(s);
                x = zero.clone();
            } else {
                s = o.h().inverse().apply(s);
                x = one.clone();
            }
        }
        if cross_y {
            if up {
                s = o.v().apply(s);
                y = zero.clone();
            } else {
                s = o.v().inverse().apply(s);
                y = one.clone();
            }
        }
        state = FlowState { square: s, x, y };
        if let Some((first, at)) = seen.get(&state) {
            return Ok(TraceReport {
                outcome: TraceOutcome::Periodic {
                    crossings: crossing - first,
                    time: time.sub_exact(at),
                },
                events,
            });
        }
        seen.insert(state.clone(), (crossing, time.clone()));
        events.push(state.clone());
    }
    Ok(TraceReport {
        outcome: TraceOutcome::Undecided {
            crossings: max_crossings,
        },
        events,
    })
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Traces in the integer direction `(p, q)`.
pub fn trace_rational(
    o: &Origami,
    start: &FlowState<BigRational>,
    p: i64,
    q: i64,
    max_crossings: usize,
) -> Result<TraceReport<BigRational>, FlowError> {
    trace(o, start, (&rational(p, 1), &rational(q, 1)), max_crossings)
}

/// Geometric length of a closed orbit of flow time `time` in direction
/// `(p, q)`; the time of a closed orbit is an integer.
pub fn orbit_length(time: &BigRational, p: i64, q: i64) -> Option<ExactLength> {
    if !time.is_integer() || time.is_negative() {
        return None;
    }
    let t = time.to_integer().to_u64()?;
    Some(ExactLength::new(t, (p * p + q * q) as u64))
}

/// Start points that meet every closed orbit of direction `(p, q)` at the
/// middle of a strip of width one. They sit on the edges the flow enters
/// through: at `x = (2j+1)/(2|q|)` on horizontal edges, or at `y = 1/2` on
/// vertical edges when `q = 0`.
pub fn midpoint_starts(o: &Origami, p: i64, q: i64) -> Vec<FlowState<BigRational>> {
    let entry = |forward: bool| rational(if forward { 0 } else { 1 }, 1);
    let mut out = Vec::new();
    for s in 0..o.n() {
        if q == 0 {
            out.push(FlowState::new(s, entry(p > 0), rational(1, 2)));
        } else {
            let m = q.abs();
            for j in 0..m {
                out.push(FlowState::new(s, rational(2 * j + 1, 2 * m), entry(q > 0)));
            }
        }
    }
    out
}

/// Witness that every orbit of direction `(p, q)` is closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicWitness {
    pub periodic: bool,
    /// Lengths of the traced orbits, one per orbit, sorted.
    pub traced: Vec<ExactLength>,
    /// Cylinder widths repeated by height, scaled to lengths, sorted.
    pub predicted: Vec<ExactLength>,
}

/// Checks complete periodicity of a rational direction two ways: through
/// the cylinder decomposition and by exact tracing from midpoint starts.
pub fn direction_is_periodic(o: &Origami, p: i64, q: i64) -> Result<PeriodicWitness, FlowError> {
    let cylinders = decomposition_in_direction(o, p, q)?;
    let mut predicted: Vec<ExactLength> = cylinders
        .iter()
        .flat_map(|c| std::iter::repeat_n(c.length, c.cylinder.height))
        .collect();
    predicted.sort_by_key(|l| (l.coeff, l.radicand));

    let max = 4 * o.n() * (p.unsigned_abs() + q.unsigned_abs()) as usize + 8;
    let mut covered: HashMap<FlowState<BigRational>, ()> = HashMap::new();
    let mut traced = Vec::new();
    let mut periodic = true;
    for start in midpoint_starts(o, p, q) {
        if covered.contains_key(&start) {
            continue;
        }
        let report = trace_rational(o, &start, p, q, max)?;
        match report.period_time().and_then(|t| orbit_length(t, p, q)) {
            Some(len) => traced.push(len),
            None => periodic = false,
        }
        for e in report.events {
            covered.insert(e, ());
        }
    }
    traced.sort_by_key(|l| (l.coeff, l.radicand));
    periodic &= traced == predicted;
    Ok(PeriodicWitness {
        periodic,
        traced,
        predicted,
    })
}

/// Trace endpoints in JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowSummary {
    pub periodic: bool,
    pub singular: bool,
    /// Exact length of one period, when periodic.
    pub length: Option<String>,
    pub crossings: usize,
}

pub fn summarize(report: &TraceReport<BigRational>, p: i64, q: i64) -> FlowSummary {
    FlowSummary {
        periodic: matches!(report.outcome, TraceOutcome::Periodic { .. }),
        singular: matches!(report.outcome, TraceOutcome::Singular { .. }),
        length: report
            .period_time()
            .and_then(|t| orbit_length(t, p, q))
            .map(|l| l.to_string()),
        crossings: report.crossings(),
    }
}

fn add_cell_times(cells: &mut [f64], grid: usize, x0: f64, y0: f64, dx: f64, dy: f64, t: f64) {
    let g = grid as f64;
    let mut cuts = vec![0.0, t];
    for (p0, dp) in [(x0, dx), (y0, dy)] {
        if dp != 0.0 {
            for k in 1..grid {
                let s = (k as f64 / g - p0) / dp;
                if s > 0.0 && s < t {
                    cuts.push(s);
                }
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    for w in cuts.windows(2) {
        let len = w[1] - w[0];
        if len <= 0.0 {
            continue;
        }
        let mid = 0.5 * (w[0] + w[1]);
        let i = (((x0 + mid * dx) * g).floor() as usize).min(grid - 1);
        let j = (((y0 + mid * dy) * g).floor() as usize).min(grid - 1);
        cells[i * grid + j] += len;
    }
}

/// Time fractions spent in each of the `grid × grid` cells of every square,
/// along the float orbit of slope `slope` from `(0, 0.31)` in square 0.
pub fn occupation(o: &Origami, slope: f64, crossings: usize, grid: usize) -> Vec<Vec<f64>> {
    let n = o.n();
    let grid = grid.max(1);
    let h = o.h();
    let v = o.v();
    let h_inv = h.inverse();
    let v_inv = v.inverse();
    let norm = slope.hypot(1.0);
    let (dx, dy) = (1.0 / norm, slope / norm);
    let mut cells = vec![vec![0.0; grid * grid]; n];
    let (mut s, mut x, mut y) = (0usize, 0.0f64, 0.31f64);
    let mut total = 0.0;
    for _ in 0..crossings.max(1) {
        let tx = if dx > 0.0 { (1.0 - x) / dx } else if dx < 0.0 { -x / dx } else { f64::INFINITY };
        let ty = if dy > 0.0 { (1.0 - y) / dy } else if dy < 0.0 { -y / dy } else { f64::INFINITY };
        let t = tx.min(ty);
        add_cell_times(&mut cells[s], grid, x, y, dx, dy, t);
        total += t;
        x += t * dx;
        y += t * dy;
        if tx <= ty {
            if dx > 0.0 {
                s = h.apply(s);
                x = 0.0;
            } else {
                s = h_inv.apply(s);
                x = 1.0;
            }
        }
        if ty <= tx {
            if dy > 0.0 {
                s = v.apply(s);
                y = 0.0;
            } else {
                s = v_inv.apply(s);
                y = 1.0;
            }
        }
    }
    for sq in cells.iter_mut() {
        for c in sq.iter_mut() {
            *c /= total;
        }
    }
    cells
}

/// Largest deviation between the time fraction spent in an anchored box
/// `[0, i/g) × [0, j/g)` of some square and its area share `i j / (n g²)`.
pub fn discrepancy(o: &Origami, slope: f64, crossings: usize, grid: usize) -> f64 {
    let grid = grid.max(1);
    let n = o.n() as f64;
    let g2 = (grid * grid) as f64;
    let mut worst: f64 = 0.0;
    for sq in occupation(o, slope, crossings, grid) {
        // prefix sums over the cell grid
        let mut prefix = vec![vec![0.0; grid + 1]; grid + 1];
        for i in 0..grid {
            for j in 0..grid {
                prefix[i + 1][j + 1] = sq[i * grid + j] + prefix[i][j + 1] + prefix[i + 1][j] - prefix[i][j];
            }
        }
        for (i, row) in prefix.iter().enumerate().skip(1) {
            for (j, &mass) in row.iter().enumerate().skip(1) {
                let uniform = (i * j) as f64 / (n * g2);
                worst = worst.max((mass - uniform).abs());
            }
        }
    }
    worst
}

/// St(3) with its top square slid to the right by `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShearedSt3 {
    x: QuadNum,
}

impl ShearedSt3 {
    pub fn new(x: QuadNum) -> Result<Self, FlowError> {
        if x.signum() == Ordering::Less || x.try_cmp(&QuadNum::from_integer(1))? != Ordering::Less {
            return Err(FlowError::ShearOutOfRange);
        }
        Ok(ShearedSt3 { x })
    }

    pub fn shear(&self) -> &QuadNum {
        &self.x
    }

    /// First return of the vertical flow of the big cylinder to its
    /// horizontal core circle, parametrised by `[0, 1)`.
    pub fn first_return(&self, u: &QuadNum) -> QuadNum {
        let w = u + &self.x;
        if w.try_cmp(&QuadNum::from_integer(1)).expect("same field") == Ordering::Less {
            w
        } else {
            &w - &QuadNum::from_integer(1)
        }
    }

    /// Number of returns until `u` comes back, if at most `max`.
    pub fn return_count(&self, u: &QuadNum, max: usize) -> Option<usize> {
        let mut w = self.first_return(u);
        for k in 1..=max {
            if &w == u {
                return Some(k);
            }
            w = self.first_return(&w);
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShearedReturn {
    /// Length of the vertical closed geodesics of the small cylinder.
    pub periodic_cylinder_length: QuadNum,
    /// Rotation number of the first-return map of the big cylinder.
    pub big_cylinder_rotation: QuadNum,
    pub rotation_is_rational: bool,
    /// Common length of every vertical orbit of the big cylinder, when the
    /// rotation is rational.
    pub big_cylinder_period: Option<BigInt>,
}

pub fn sheared_st3_return(s: &ShearedSt3) -> ShearedReturn {
    let x = s.shear().clone();
    let period = x.to_rational().map(|r| BigInt::from(2) * r.denom());
    ShearedReturn {
        periodic_cylinder_length: QuadNum::from_integer(1),
        rotation_is_rational: x.is_rational(),
        big_cylinder_rotation: x,
        big_cylinder_period: period,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::apply_word;
    use crate::cylinders::direction_to_horizontal;
    use crate::perm::Permutation;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn st(s: usize, x: (i64, i64), y: (i64, i64)) -> FlowState<BigRational> {
        FlowState::new(s, rational(x.0, x.1), rational(y.0, y.1))
    }

    #[test]
    fn trace_examples() {
        let r = trace_rational(&Origami::torus(), &st(0, (1, 3), (0, 1)), 1, 1, 50).unwrap();
        assert_eq!(orbit_length(r.period_time().unwrap(), 1, 1).unwrap().to_string(), "1*sqrt(2)");
        let st3 = Origami::st3();
        let r = trace_rational(&st3, &st(1, (1, 2), (1, 2)), 0, 1, 50).unwrap();
        assert_eq!(r.period_time(), Some(&rational(1, 1)));
        let r = trace_rational(&st3, &st(0, (1, 2), (1, 2)), 0, 1, 50).unwrap();
        assert_eq!(r.period_time(), Some(&rational(2, 1)));
    }

    #[test]
    fn singular_hits() {
        let st3 = Origami::st3();
        // St(3) has its single cone point at every square corner
        assert_eq!(
            trace_rational(&st3, &st(0, (0, 1), (0, 1)), 1, 1, 10).unwrap_err(),
            FlowError::SingularStart(3)
        );
        let r = trace_rational(&st3, &st(0, (1, 2), (1, 2)), 1, 1, 10).unwrap();
        assert!(matches!(r.outcome, TraceOutcome::Singular { crossings: 1, vertex: 0, .. }));
        // regular corners of the torus are crossed diagonally
        let r = trace_rational(&Origami::torus(), &st(0, (0, 1), (0, 1)), 1, 1, 10).unwrap();
        assert_eq!(r.period_time(), Some(&rational(1, 1)));
        assert_eq!(
            trace_rational(&st3, &st(0, (3, 2), (0, 1)), 1, 1, 10).unwrap_err(),
            FlowError::OutsideSquare
        );
        assert_eq!(
            trace_rational(&st3, &st(0, (1, 2), (0, 1)), 0, 0, 10).unwrap_err(),
            FlowError::ZeroDirection
        );
    }

    #[test]
    fn quadratic_slope_is_not_closed() {
        let golden = QuadNum::half_one_plus_sqrt(5).unwrap();
        let start = FlowState::new(0, golden.integer_like(0), QuadNum::from_parts(1, 3, 0, 1, 5).unwrap());
        let r = trace(&Origami::torus(), &start, (&golden.integer_like(1), &golden), 200).unwrap();
        assert_eq!(r.outcome, TraceOutcome::Undecided { crossings: 200 });
    }

    #[test]
    fn periodic_examples() {
        let st3 = Origami::st3();
        let w = direction_is_periodic(&st3, 1, 1).unwrap();
        assert!(w.periodic);
        assert!(w.traced.iter().all(|l| l.to_string() == "3*sqrt(2)"));
        let w = direction_is_periodic(&st3, 0, 1).unwrap();
        assert!(w.periodic);
        assert_eq!(w.traced.iter().map(|l| l.coeff).collect::<Vec<_>>(), vec![1, 2]);
        let w = direction_is_periodic(&Origami::torus(), 3, 5).unwrap();
        assert!(w.periodic);
        assert_eq!(w.traced.len(), 1);
        assert_eq!(w.traced[0].to_string(), "1*sqrt(34)");
    }

    #[test]
    fn discrepancy_examples() {
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let t = Origami::torus();
        assert!(discrepancy(&t, golden, 100_000, 10) < 0.01);
        assert!(discrepancy(&t, 1.0, 100_000, 10) > 0.1);
        let d = discrepancy(&Origami::st3(), 2f64.sqrt(), 100_000, 10);
        assert!(d < 0.05, "{d}");
    }

    #[test]
    fn discrepancy_decays_for_quadratic_slopes() {
        let t = Origami::torus();
        for slope in [(1.0 + 5f64.sqrt()) / 2.0, 2f64.sqrt(), 3f64.sqrt()] {
            let c = discrepancy(&t, slope, 1_000, 10) * 1_000f64.sqrt();
            for n in [10_000, 100_000] {
                assert!(discrepancy(&t, slope, n, 10) * (n as f64).sqrt() <= 2.0 * c + 0.05);
            }
        }
        for slope in [1.0, 0.5, 2.0 / 3.0] {
            let d_small = discrepancy(&t, slope, 1_000, 10);
            let d_big = discrepancy(&t, slope, 100_000, 10);
            assert!(d_big > 0.01 && d_big > 0.5 * d_small, "{slope}: {d_small} {d_big}");
        }
    }

    #[test]
    fn sheared_st3() {
        let x0 = ShearedSt3::new(QuadNum::from_integer(0)).unwrap();
        let r = sheared_st3_return(&x0);
        assert!(r.rotation_is_rational);
        assert_eq!(r.big_cylinder_period, Some(BigInt::from(2)));
        let half = ShearedSt3::new(QuadNum::from_parts(1, 2, 0, 1, 2).unwrap()).unwrap();
        let r = sheared_st3_return(&half);
        assert_eq!(r.big_cylinder_period, Some(BigInt::from(4)));
        assert_eq!(half.return_count(&QuadNum::from_parts(1, 5, 0, 1, 2).unwrap(), 10), Some(2));
        let irr = ShearedSt3::new(QuadNum::from_parts(-1, 1, 1, 1, 2).unwrap()).unwrap();
        let r = sheared_st3_return(&irr);
        assert!(!r.rotation_is_rational);
        assert_eq!(r.periodic_cylinder_length, QuadNum::from_integer(1));
        assert_eq!(irr.return_count(&QuadNum::from_parts(0, 1, 0, 1, 2).unwrap(), 500), None);
        assert!(ShearedSt3::new(QuadNum::from_integer(1)).is_err());
    }

    fn arb_origami() -> impl Strategy<Value = Origami> {
        (1usize..7).prop_flat_map(|n| {
            (
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
                .prop_filter_map("connected", |(h, v)| {
                    Origami::new(Permutation::from_indices(h).ok()?, Permutation::from_indices(v).ok()?).ok()
                })
        })
    }

    fn arb_direction() -> impl Strategy<Value = (i64, i64)> {
        (-5i64..6, -5i64..6).prop_filter("primitive", |&(p, q)| p.gcd(&q) == 1)
    }

    proptest! {
        #[test]
        fn rational_directions_are_completely_periodic(o in arb_origami(), (p, q) in arb_direction()) {
            let w = direction_is_periodic(&o, p, q).unwrap();
            prop_assert!(w.periodic, "{:?}", w);
        }

        // tracing (p, q) on o and (1, 0) on the transported surface give the
        // same closed orbits
        #[test]
        fn transported_trace_agrees(o in arb_origami(), (p, q) in arb_direction()) {
            let moved = apply_word(&o, &direction_to_horizontal(p, q).unwrap());
            let mut direct: Vec<u64> = direction_is_periodic(&o, p, q).unwrap().traced.iter().map(|l| l.coeff * l.coeff * l.radicand).collect();
            let mut horizontal = Vec::new();
            let mut covered = std::collections::HashSet::new();
            for start in midpoint_starts(&moved, 1, 0) {
                if covered.contains(&start) {
                    continue;
                }
                let r = trace_rational(&moved, &start, 1, 0, 4 * o.n() + 4).unwrap();
                let t = r.period_time().unwrap().to_integer().to_u64().unwrap();
                horizontal.push(t * t * (p * p + q * q) as u64);
                covered.extend(r.events);
            }
            direct.sort();
            horizontal.sort();
            prop_assert_eq!(direct, horizontal);
        }
    }
}

//! Square-tiled surfaces encoded by a pair of permutations.
//!
//! `h` sends a square to its right neighbour and `v` to its top neighbour.
//! The bottom-left corner of square `s` is a surface vertex; the corners of
//! `s` and `t` coincide iff `s` and `t` share a cycle of the commutator
//! `h∘v∘h⁻¹∘v⁻¹`, and a cycle of length `l` is a cone point of angle `2πl`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::IntLattice;
use crate::perm::{is_transitive, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrigamiError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("h and v generate an intransitive group: the surface is disconnected")]
    NotTransitive,
    #[error("an origami needs at least one square")]
    Empty,
    #[error("cannot parse origami {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("singularity orders sum to {sum}, expected {expected}")]
    InconsistentOrders { sum: i64, expected: i64 },
    #[error("cannot parse stratum {0:?}")]
    StratumParse(String),
}

/// A connected square-tiled surface.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Origami {
    h: Permutation,
    v: Permutation,
}

impl Origami {
    pub fn new(h: Permutation, v: Permutation) -> Result<Self, OrigamiError> {
        if h.degree() != v.degree() {
            return Err(PermError::DegreeMismatch(h.degree(), v.degree()).into());
        }
        if h.degree() == 0 {
            return Err(OrigamiError::Empty);
        }
        if !is_transitive(&[h.clone(), v.clone()])? {
            return Err(OrigamiError::NotTransitive);
        }
        Ok(Origami { h, v })
    }

    /// Skips the transitivity check; for pairs obtained from a valid origami
    /// by relabelling or by the SL(2,Z) action.
    pub(crate) fn from_parts_unchecked(h: Permutation, v: Permutation) -> Self {
        debug_assert_eq!(h.degree(), v.degree());
        Origami { h, v }
    }

    /// The unit square torus.
    pub fn torus() -> Self {
        Origami::from_parts_unchecked(Permutation::identity(1), Permutation::identity(1))
    }

    /// Three squares in an L: `h = (1 2)`, `v = (1 3)`.
    pub fn st3() -> Self {
        Origami::from_cycles(3, &[vec![1, 2]], &[vec![1, 3]]).expect("valid fixture")
    }

    /// Four squares with two cone points: `h = (1 2)(3 4)`, `v = (1 2 3 4)`.
    pub fn st4() -> Self {
        Origami::from_cycles(4, &[vec![1, 2], vec![3, 4]], &[vec![1, 2, 3, 4]])
            .expect("valid fixture")
    }

    pub fn from_cycles(n: usize, h: &[Vec<usize>], v: &[Vec<usize>]) -> Result<Self, OrigamiError> {
        Origami::new(Permutation::from_cycles(n, h)?, Permutation::from_cycles(n, v)?)
    }

    pub fn n(&self) -> usize {
        self.h.degree()
    }

    pub fn h(&self) -> &Permutation {
        &self.h
    }

    pub fn v(&self) -> &Permutation {
        &self.v
    }

    /// Simultaneous relabelling `(g h g⁻¹, g v g⁻¹)`.
    pub fn relabel(&self, g: &Permutation) -> Result<Origami, OrigamiError> {
        Ok(Origami::from_parts_unchecked(
            self.h.conjugate(g)?,
            self.v.conjugate(g)?,
        ))
    }

    /// `h∘v∘h⁻¹∘v⁻¹`
    pub fn commutator(&self) -> Permutation {
        let hv = self.h.compose_unchecked(&self.v);
        let hinv_vinv = self.h.inverse().compose_unchecked(&self.v.inverse());
        hv.compose_unchecked(&hinv_vinv)
    }

    /// Cycles of the commutator, one per surface vertex (1-based labels).
    pub fn vertex_cycles(&self) -> Vec<Vec<usize>> {
        self.commutator().cycles()
    }

    /// Index of the vertex at the bottom-left corner of each square.
    pub fn corner_vertices(&self) -> Vec<usize> {
        let mut out = vec![0; self.n()];
        for (k, cycle) in self.vertex_cycles().iter().enumerate() {
            for &s in cycle {
                out[s - 1] = k;
            }
        }
        out
    }

    /// Cone angles in units of `2π`, one per vertex.
    pub fn cone_angles(&self) -> Vec<usize> {
        self.vertex_cycles().iter().map(Vec::len).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_cycles().len()
    }

    /// `g = 1 + (n - V)/2`.
    pub fn genus(&self) -> usize {
        let n = self.n();
        let vertices = self.vertex_count();
        debug_assert!((n - vertices).is_multiple_of(2));
        1 + (n - vertices) / 2
    }

    /// Genus from `χ = V - E + F` with `V` counted by gluing the `4n`
    /// square corners directly, independently of the commutator.
    pub fn genus_by_corner_gluing(&self) -> usize {
        let n = self.n();
        // corners of square s: 4s bottom-left, 4s+1 bottom-right, 4s+2 top-left, 4s+3 top-right
        let mut parent: Vec<usize> = (0..4 * n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut union = |a: usize, b: usize| {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        };
        for s in 0..n {
            let r = self.h.apply(s);
            union(4 * s + 1, 4 * r);
            union(4 * s + 3, 4 * r + 2);
            let t = self.v.apply(s);
            union(4 * s + 2, 4 * t);
            union(4 * s + 3, 4 * t + 1);
        }
        let mut roots: Vec<usize> = (0..4 * n).map(|x| find(&mut parent, x)).collect();
        roots.sort_unstable();
        roots.dedup();
        let vertices = roots.len() as i64;
        let chi = vertices - 2 * n as i64 + n as i64;
        (1 - chi / 2) as usize
    }

    pub fn stratum(&self) -> Stratum {
        let orders = self
            .cone_angles()
            .into_iter()
            .filter(|&l| l > 1)
            .map(|l| (l - 1) as u32)
            .collect();
        let stratum = Stratum::new(orders);
        debug_assert_eq!(stratum.order_sum() as usize, 2 * self.genus() - 2);
        stratum
    }

    /// Least `(h, v)` in one-line order over all simultaneous relabellings.
    ///
    /// Every square is tried as a root; squares are numbered in breadth-first
    /// order along `h`, `h⁻¹`, `v`, `v⁻¹`.
    pub fn canonical_form(&self) -> Origami {
        let n = self.n();
        let h = self.h.raw();
        let v = self.v.raw();
        let hi = self.h.inverse();
        let vi = self.v.inverse();
        let (hi, vi) = (hi.raw(), vi.raw());

        let mut best: Option<(Vec<u32>, Vec<u32>)> = None;
        let mut label = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut ch = vec![0u32; n];
        let mut cv = vec![0u32; n];
        for root in 0..n {
            label.iter_mut().for_each(|l| *l = u32::MAX);
            order.clear();
            label[root] = 0;
            order.push(root as u32);
            let mut head = 0;
            while head < order.len() {
                let x = order[head] as usize;
                head += 1;
                for y in [h[x], hi[x], v[x], vi[x]] {
                    if label[y as usize] == u32::MAX {
                        label[y as usize] = order.len() as u32;
                        order.push(y);
                    }
                }
            }
            debug_assert_eq!(order.len(), n);
            for (new, &old) in order.iter().enumerate() {
                ch[new] = label[h[old as usize] as usize];
                cv[new] = label[v[old as usize] as usize];
            }
            let better = match &best {
                None => true,
                Some((bh, bv)) => (ch.as_slice(), cv.as_slice()) < (bh.as_slice(), bv.as_slice()),
            };
            if better {
                best = Some((ch.clone(), cv.clone()));
            }
        }
        let (bh, bv) = best.expect("at least one square");
        Origami::from_parts_unchecked(
            Permutation::from_u32_unchecked(bh),
            Permutation::from_u32_unchecked(bv),
        )
    }

    pub fn is_equivalent(&self, other: &Origami) -> bool {
        self.n() == other.n() && self.canonical_form() == other.canonical_form()
    }

    /// Lattice of absolute periods in `Z^2`.
    ///
    /// The 1-skeleton has one edge per square bottom (holonomy `(1,0)`) and
    /// per square left side (holonomy `(0,1)`); the holonomies of the
    /// fundamental cycles of a spanning tree generate the lattice.
    pub fn period_lattice(&self) -> IntLattice {
        let corner = self.corner_vertices();
        let vertices = self.vertex_count();
        // edges (from, to, holonomy)
        let mut edges: Vec<(usize, usize, [i128; 2])> = Vec::with_capacity(2 * self.n());
        for s in 0..self.n() {
            edges.push((corner[s], corner[self.h.apply(s)], [1, 0]));
            edges.push((corner[s], corner[self.v.apply(s)], [0, 1]));
        }
        let mut adjacency = vec![Vec::new(); vertices];
        for (k, &(a, b, _)) in edges.iter().enumerate() {
            adjacency[a].push(k);
            adjacency[b].push(k);
        }
        // potentials along a BFS spanning tree
        let mut potential: Vec<Option<[i128; 2]>> = vec![None; vertices];
        potential[0] = Some([0, 0]);
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let px = potential[x].expect("visited");
            for &k in &adjacency[x] {
                let (a, b, hol) = edges[k];
                let (y, py) = if a == x {
                    (b, [px[0] + hol[0], px[1] + hol[1]])
                } else {
                    (a, [px[0] - hol[0], px[1] - hol[1]])
                };
                if potential[y].is_none() {
                    potential[y] = Some(py);
                    queue.push_back(y);
                }
            }
        }
        let cycles: Vec<Vec<i128>> = edges
            .iter()
            .map(|&(a, b, hol)| {
                let pa = potential[a].expect("connected");
                let pb = potential[b].expect("connected");
                vec![pa[0] + hol[0] - pb[0], pa[1] + hol[1] - pb[1]]
            })
            .collect();
        IntLattice::from_generators(2, &cycles)
    }

    /// Reduced (primitive): the absolute periods span all of `Z^2`.
    pub fn is_reduced(&self) -> bool {
        self.period_lattice().is_full()
    }

    pub fn record(&self) -> OrigamiRecord {
        OrigamiRecord {
            n: self.n(),
            h: self.h.to_string(),
            v: self.v.to_string(),
            genus: self.genus(),
            stratum: self.stratum().to_string(),
            reduced: self.is_reduced(),
            cone_angles: self.cone_angles(),
        }
    }
}

/// `n; h=<perm>; v=<perm>`
impl fmt::Display for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; h={}; v={}", self.n(), self.h, self.v)
    }
}

impl fmt::Debug for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Origami({self})")
    }
}

impl FromStr for Origami {
    type Err = OrigamiError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| OrigamiError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut parts = text.split(';').map(str::trim);
        let n: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err("expected the number of squares first"))?;
        let mut h = None;
        let mut v = None;
        for part in parts.filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| err("expected key=value"))?;
            let perm = Permutation::parse_with_degree(value.trim(), n)?;
            match key.trim() {
                "h" => h = Some(perm),
                "v" => v = Some(perm),
                _ => return Err(err("unknown key, expected h or v")),
            }
        }
        let h = h.ok_or_else(|| err("missing h"))?;
        let v = v.ok_or_else(|| err("missing v"))?;
        Origami::new(h, v)
    }
}

/// JSON record of an origami and its invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrigamiRecord {
    pub n: usize,
    pub h: String,
    pub v: String,
    pub genus: usize,
    pub stratum: String,
    pub reduced: bool,
    /// Total angle of each vertex in units of `2π`.
    pub cone_angles: Vec<usize>,
}

/// Orders of the zeros of the Abelian differential, largest first.
/// The torus stratum `H(0)` has no orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Stratum {
    orders: Vec<u32>,
}

impl Stratum {
    pub fn new(mut orders: Vec<u32>) -> Self {
        orders.retain(|&k| k > 0);
        orders.sort_unstable_by(|a, b| b.cmp(a));
        Stratum { orders }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order_sum(&self) -> u32 {
        self.orders.iter().sum()
    }

    pub fn genus(&self) -> usize {
        (self.order_sum() as usize + 2) / 2
    }

    /// Complex dimension `2g + n - 1`.
    pub fn dimension(&self) -> usize {
        stratum_dim_abelian(&self.orders, self.genus()).expect("orders match their own genus")
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "H(0)");
        }
        let body: Vec<String> = self.orders.iter().map(u32::to_string).collect();
        write!(f, "H({})", body.join(","))
    }
}

impl FromStr for Stratum {
    type Err = OrigamiError;

    /// Accepts `H(2)`, `H(1,1)`, `H(1^2)` and `H(0)`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || OrigamiError::StratumParse(text.to_string());
        let body = text
            .trim()
            .strip_prefix("H(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(err)?;
        let mut orders = Vec::new();
        for item in body.split(',').map(str::trim) {
            let (k, mult) = match item.split_once('^') {
                Some((k, m)) => (k, m.parse::<usize>().map_err(|_| err())?),
                None => (item, 1),
            };
            let k: u32 = k.parse().map_err(|_| err())?;
            orders.extend(std::iter::repeat_n(k, mult));
        }
        Ok(Stratum::new(orders))
    }
}

/// Dimension `2g + n - 1` of the stratum of Abelian differentials of genus
/// `g` with zeros of the given orders; `H(0)` counts one marked point.
pub fn stratum_dim_abelian(orders: &[u32], genus: usize) -> Result<usize, OrigamiError> {
    let sum: i64 = orders.iter().map(|&k| k as i64).sum();
    let expected = 2 * genus as i64 - 2;
    if sum != expected || genus == 0 {
        return Err(OrigamiError::InconsistentOrders { sum, expected });
    }
    let points = orders.len().max(1);
    Ok(2 * genus + points - 1)
}

/// Dimension `2g + n - 2` of the stratum of quadratic differentials of
/// genus `g`; orders are at least `-1` and sum to `4g - 4`.
pub fn stratum_dim_quadratic(orders: &[i32], genus: usize) -> Result<usize, OrigamiError> {
    let sum: i64 = orders.iter().map(|&k| k as i64).sum();
    let expected = 4 * genus as i64 - 4;
    if sum != expected || orders.iter().any(|&k| k < -1) {
        return Err(OrigamiError::InconsistentOrders { sum, expected });
    }
    let points = orders.len().max(1);
    (2 * genus + points)
        .checked_sub(2)
        .ok_or(OrigamiError::InconsistentOrders { sum, expected })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(cycles: &[Vec<usize>], n: usize) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(Origami::torus().genus(), 1);
        let st3 = Origami::new(perm(&[vec![1, 2]], 3), perm(&[vec![1, 3]], 3)).unwrap();
        assert_eq!(st3, Origami::st3());
        let id2 = Permutation::identity(2);
        assert_eq!(Origami::new(id2.clone(), id2), Err(OrigamiError::NotTransitive));
        assert!(matches!(
            Origami::new(Permutation::identity(2), Permutation::identity(3)),
            Err(OrigamiError::Perm(PermError::DegreeMismatch(2, 3)))
        ));
    }

    #[test]
    fn vertices_and_angles() {
        assert_eq!(Origami::torus().vertex_cycles(), vec![vec![1]]);
        assert_eq!(Origami::st3().vertex_cycles(), vec![vec![1, 2, 3]]);
        assert_eq!(Origami::st3().cone_angles(), vec![3]);
        assert_eq!(Origami::st4().cone_angles(), vec![2, 2]);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(Origami::torus().genus(), 1);
        assert_eq!(Origami::st3().genus(), 2);
        let two = Origami::new(perm(&[vec![1, 2]], 2), Permutation::identity(2)).unwrap();
        assert_eq!(two.genus(), 1);
        for o in [Origami::torus(), Origami::st3(), Origami::st4(), two] {
            assert_eq!(o.genus(), o.genus_by_corner_gluing());
        }
    }

    #[test]
    fn strata() {
        assert_eq!(Origami::st3().stratum().to_string(), "H(2)");
        assert_eq!(Origami::st4().stratum().to_string(), "H(1,1)");
        assert_eq!(Origami::torus().stratum().to_string(), "H(0)");
        assert_eq!("H(1^2)".parse::<Stratum>().unwrap(), Origami::st4().stratum());
        assert_eq!("H(0)".parse::<Stratum>().unwrap(), Origami::torus().stratum());
        assert!("H(1,x)".parse::<Stratum>().is_err());
        assert!("Q(1)".parse::<Stratum>().is_err());
    }

    #[test]
    fn stratum_dimensions() {
        assert_eq!(stratum_dim_abelian(&[2], 2).unwrap(), 4);
        assert_eq!(stratum_dim_abelian(&[1, 1], 2).unwrap(), 5);
        assert_eq!(stratum_dim_abelian(&[], 1).unwrap(), 2);
        assert_eq!(stratum_dim_abelian(&[0], 1).unwrap(), 2);
        for g in 2..=6usize {
            let ones = vec![1u32; 2 * g - 2];
            assert_eq!(stratum_dim_abelian(&ones, g).unwrap(), 4 * g - 3);
            let quad = vec![1i32; 4 * g - 4];
            assert_eq!(stratum_dim_quadratic(&quad, g).unwrap(), 6 * g - 6);
        }
        assert!(stratum_dim_abelian(&[1], 2).is_err());
        assert!(stratum_dim_quadratic(&[2], 2).is_err());
        // pillowcase: four poles in genus 0
        assert_eq!(stratum_dim_quadratic(&[-1, -1, -1, -1], 0).unwrap(), 2);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(Origami::torus().canonical_form(), Origami::torus());
        let swapped = Origami::from_cycles(3, &[vec![1, 3]], &[vec![1, 2]]).unwrap();
        assert_eq!(swapped.canonical_form(), Origami::st3().canonical_form());
        let other = Origami::from_cycles(3, &[vec![1, 2]], &[vec![1, 2, 3]]).unwrap();
        assert_ne!(other.canonical_form(), Origami::st3().canonical_form());
        let c = Origami::st4().canonical_form();
        assert_eq!(c.canonical_form(), c);
    }

    #[test]
    fn reduction() {
        assert!(Origami::torus().is_reduced());
        let two = Origami::new(perm(&[vec![1, 2]], 2), Permutation::identity(2)).unwrap();
        assert!(!two.is_reduced());
        assert_eq!(two.period_lattice().basis(), &[vec![2, 0], vec![0, 1]]);
        assert!(Origami::st3().is_reduced());
        // the square graph of St(4) is bipartite, so every period has even x + y
        assert!(!Origami::st4().is_reduced());
        assert_eq!(Origami::st4().period_lattice().basis(), &[vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn staircase_reading_of_st4() {
        let stairs = Origami::from_cycles(4, &[vec![1, 2], vec![3, 4]], &[vec![2, 3]]).unwrap();
        assert_eq!(stairs.stratum().to_string(), "H(1,1)");
        assert_eq!(stairs.cone_angles(), vec![2, 2]);
        assert_eq!(stairs.genus(), 2);
    }

    /// Holonomies of closed walks through square centres, found by
    /// exhaustive search in a bounded box.
    fn loop_search_lattice(o: &Origami) -> IntLattice {
        let n = o.n() as i64;
        let bound = 2 * n + 1;
        let mut seen = std::collections::HashSet::new();
        let mut queue = std::collections::VecDeque::from([(0usize, 0i64, 0i64)]);
        seen.insert((0usize, 0i64, 0i64));
        let mut found = Vec::new();
        while let Some((s, x, y)) = queue.pop_front() {
            if s == 0 && (x, y) != (0, 0) {
                found.push(vec![x as i128, y as i128]);
            }
            let steps = [
                (o.h().apply(s), 1, 0),
                (o.h().inverse().apply(s), -1, 0),
                (o.v().apply(s), 0, 1),
                (o.v().inverse().apply(s), 0, -1),
            ];
            for (t, dx, dy) in steps {
                let next = (t, x + dx, y + dy);
                if next.1.abs() <= bound && next.2.abs() <= bound && seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        IntLattice::from_generators(2, &found)
    }

    #[test]
    fn period_lattice_matches_loop_search() {
        let samples = [
            Origami::torus(),
            Origami::st3(),
            Origami::st4(),
            "2; h=(1,2); v=(1)".parse().unwrap(),
            "4; h=(1,2,3,4); v=(1,3)(2,4)".parse().unwrap(),
            "6; h=(1,2,3)(4,5,6); v=(1,4)(2,5)(3,6)".parse().unwrap(),
            "5; h=(1,2,3,4,5); v=(1,2)".parse().unwrap(),
        ];
        for o in samples {
            assert_eq!(o.period_lattice(), loop_search_lattice(&o), "{o}");
        }
    }

    #[test]
    fn text_format() {
        let o: Origami = "3; h=(1,2); v=(1,3)".parse().unwrap();
        assert_eq!(o, Origami::st3());
        assert_eq!(o.to_string(), "3; h=(1,2); v=(1,3)");
        let t: Origami = "1; h=(1); v=[1]".parse().unwrap();
        assert_eq!(t, Origami::torus());
        assert!("2; h=(1); v=(1)".parse::<Origami>().is_err());
        assert!("x; h=(1); v=(1)".parse::<Origami>().is_err());
        assert!("3; h=(1,2)".parse::<Origami>().is_err());
        let r = o.record();
        assert_eq!((r.genus, r.stratum.as_str(), r.reduced), (2, "H(2)", true));
    }
}

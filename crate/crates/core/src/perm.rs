//! Permutations of a finite set of squares.
//!
//! Squares are labelled `1..=n` in every textual form (one-line and cycle
//! notation) and indexed from `0` internally. Composition is functional:
//! `p.compose(&q)` applies `q` first, then `p`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a bijection of 1..={0}")]
    NotBijection(usize),
    #[error("empty list of permutations")]
    Empty,
    #[error("cannot parse permutation {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// A bijection of `{0, .., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        let zero_based: Vec<usize> = images
            .iter()
            .map(|&i| i.checked_sub(1).ok_or(PermError::NotBijection(n)))
            .collect::<Result<_, _>>()?;
        Self::from_indices(zero_based)
    }

    /// Builds a permutation from 0-based images.
    pub fn from_indices(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotBijection(n));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// Builds a permutation of degree `n` from disjoint cycles of 1-based labels.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &label) in cycle.iter().enumerate() {
                if label == 0 || label > n {
                    return Err(PermError::NotBijection(n));
                }
                let src = label - 1;
                if touched[src] {
                    return Err(PermError::NotBijection(n));
                }
                touched[src] = true;
                images[src] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Self::from_indices(images)
    }

    pub(crate) fn from_u32_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_indices(images.iter().map(|&i| i as usize).collect()).is_ok());
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based index `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&j| self.images[j as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate(&self, g: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(g)?;
        Ok(g.compose_unchecked(&self.compose_unchecked(&g.inverse())))
    }

    /// Disjoint cycles in 1-based labels, fixed points included. Each cycle
    /// starts at its least element; cycles are ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted cycle lengths, longest first.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    fn check_degree(&self, other: &Permutation) -> Result<(), PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(())
    }

    /// Parses one-line (`[2,1,3]`) or cycle (`(1,2)(3)`) notation,
    /// fixing the degree to `n`.
    pub fn parse_with_degree(text: &str, n: usize) -> Result<Self, PermError> {
        let parsed = parse(text)?;
        match parsed {
            Parsed::OneLine(images) => {
                if images.len() != n {
                    return Err(PermError::DegreeMismatch(images.len(), n));
                }
                Self::from_one_line(&images)
            }
            Parsed::Cycles(cycles) => Self::from_cycles(n, &cycles),
        }
    }
}

/// Whether the group generated by `perms` acts transitively.
pub fn is_transitive(perms: &[Permutation]) -> Result<bool, PermError> {
    let first = perms.first().ok_or(PermError::Empty)?;
    let n = first.degree();
    for p in perms {
        first.check_degree(p)?;
    }
    if n == 0 {
        return Ok(true);
    }
    // The orbit of a point under a finite group equals its reachability
    // set under the generators alone; inverses add nothing.
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for p in perms {
            let j = p.apply(i);
            if !seen[j] {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    Ok(count == n)
}

enum Parsed {
    OneLine(Vec<usize>),
    Cycles(Vec<Vec<usize>>),
}

fn parse(text: &str) -> Result<Parsed, PermError> {
    let err = |reason: &str| PermError::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let t = text.trim();
    let numbers = |body: &str| -> Result<Vec<usize>, PermError> {
        body.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| err("expected a positive integer")))
            .collect()
    };
    if let Some(body) = t.strip_prefix('[') {
        let body = body.strip_suffix(']').ok_or_else(|| err("missing ']'"))?;
        return Ok(Parsed::OneLine(numbers(body)?));
    }
    if t.starts_with('(') {
        let mut cycles = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
            let close = body.find(')').ok_or_else(|| err("missing ')'"))?;
            let cycle = numbers(&body[..close])?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        return Ok(Parsed::Cycles(cycles));
    }
    Err(err("expected one-line '[..]' or cycle '(..)' notation"))
}

impl FromStr for Permutation {
    type Err = PermError;

    /// The degree is the length for one-line notation and the largest
    /// label for cycle notation.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        match parse(text)? {
            Parsed::OneLine(images) => Self::from_one_line(&images),
            Parsed::Cycles(cycles) => {
                let n = cycles.iter().flatten().copied().max().unwrap_or(1);
                Self::from_cycles(n, &cycles)
            }
        }
    }
}

/// Cycle notation; fixed points omitted, identity printed as `(1)`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let body: Vec<String> = cycle.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(","))?;
        }
        if !any {
            write!(f, "(1)")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_line())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(one_line: &[usize]) -> Permutation {
        Permutation::from_one_line(one_line).unwrap()
    }

    #[test]
    fn compose_examples() {
        let id3 = Permutation::identity(3);
        assert_eq!(id3.compose(&id3).unwrap(), id3);
        let t = p(&[2, 1]);
        assert_eq!(t.compose(&t).unwrap(), Permutation::identity(2));
        // (1 2)∘(1 3): 1 -> 3 -> 3, 2 -> 2 -> 1, 3 -> 1 -> 2
        let a = p(&[2, 1, 3]);
        let b = p(&[3, 2, 1]);
        assert_eq!(a.compose(&b).unwrap().one_line(), vec![3, 1, 2]);
        assert_eq!(a.compose(&p(&[1, 2])), Err(PermError::DegreeMismatch(3, 2)));
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(Permutation::identity(3).cycles(), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(p(&[2, 1, 3]).cycles(), vec![vec![1, 2], vec![3]]);
        assert_eq!(p(&[2, 3, 1]).cycles(), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn conjugate_examples() {
        let t12 = p(&[2, 1, 3]);
        assert_eq!(t12.conjugate(&Permutation::identity(3)).unwrap(), t12);
        let t23 = p(&[1, 3, 2]);
        assert_eq!(t12.conjugate(&t23).unwrap(), p(&[3, 2, 1]));
        let c = p(&[2, 3, 1]);
        assert_eq!(c.conjugate(&c).unwrap(), c);
    }

    #[test]
    fn transitivity_examples() {
        assert!(is_transitive(&[p(&[2, 1, 3]), p(&[3, 2, 1])]).unwrap());
        let id2 = Permutation::identity(2);
        assert!(!is_transitive(&[id2.clone(), id2]).unwrap());
        let a = Permutation::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let b = p(&[2, 3, 4, 1]);
        assert!(is_transitive(&[a, b]).unwrap());
        assert_eq!(is_transitive(&[]), Err(PermError::Empty));
    }

    #[test]
    fn parse_and_print() {
        let a: Permutation = "[2,1,3]".parse().unwrap();
        let b = Permutation::parse_with_degree("(1,2)(3)", 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(1,2)");
        assert_eq!(Permutation::identity(4).to_string(), "(1)");
        let c = Permutation::parse_with_degree("(1 2 3)(4,5)", 6).unwrap();
        assert_eq!(c.one_line(), vec![2, 3, 1, 5, 4, 6]);
        assert!("(1,2".parse::<Permutation>().is_err());
        assert!("[1,1]".parse::<Permutation>().is_err());
        assert!(Permutation::parse_with_degree("(1,2)(2,3)", 3).is_err());
        assert!("1 2".parse::<Permutation>().is_err());
    }

    fn arb_perm() -> impl Strategy<Value = Permutation> {
        (1usize..9).prop_flat_map(|n| {
            Just((0..n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_indices(v).unwrap())
        })
    }

    fn arb_pair() -> impl Strategy<Value = (Permutation, Permutation)> {
        (1usize..9).prop_flat_map(|n| {
            let s = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            (s.clone(), s).prop_map(|(a, b)| {
                (
                    Permutation::from_indices(a).unwrap(),
                    Permutation::from_indices(b).unwrap(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn identity_is_neutral(q in arb_perm()) {
            let id = Permutation::identity(q.degree());
            prop_assert_eq!(q.compose(&id).unwrap(), q.clone());
            prop_assert_eq!(id.compose(&q).unwrap(), q.clone());
            prop_assert!(q.compose(&q.inverse()).unwrap().is_identity());
        }

        #[test]
        fn conjugation_preserves_cycle_type((q, g) in arb_pair()) {
            prop_assert_eq!(q.conjugate(&g).unwrap().cycle_type(), q.cycle_type());
        }

        #[test]
        fn cycle_lengths_sum_to_degree(q in arb_perm()) {
            prop_assert_eq!(q.cycles().iter().map(Vec::len).sum::<usize>(), q.degree());
        }

        #[test]
        fn display_round_trips(q in arb_perm()) {
            let text = q.to_string();
            prop_assert_eq!(Permutation::parse_with_degree(&text, q.degree()).unwrap(), q);
        }
    }
}

//! Exhaustive enumeration of origamis with a fixed number of squares,
//! grouped into SL(2,Z)-orbits, and a line-delimited JSON catalog.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use itertools::Itertools;
use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{orbit_quiet, ActionError};
use crate::origami::{Origami, Stratum};
use crate::perm::Permutation;

pub const DEFAULT_MAX_SQUARES: usize = 8;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("number of squares must lie in 1..={max}, got {n}")]
    OutOfBounds { n: usize, max: usize },
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {reason}")]
    Malformed {
        path: PathBuf,
        line: usize,
        reason: String,
    },
}

/// One catalog line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    /// Canonical form, `n; h=...; v=...`.
    pub origami: String,
    pub n: usize,
    pub genus: usize,
    pub stratum: String,
    pub reduced: bool,
    /// `"{n}-{k}"`, with orbits of `n`-square origamis numbered from 1 in
    /// order of their least member.
    pub orbit_id: String,
    pub index: usize,
    pub cusp_widths: Vec<usize>,
    pub curve_genus: usize,
}

/// Cycle-type representatives: consecutive cycles, longest first.
fn conjugacy_representatives(n: usize) -> Vec<Permutation> {
    fn partitions(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            partitions(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut parts = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut parts);
    parts
        .into_iter()
        .map(|part| {
            let mut images = vec![0usize; n];
            let mut start = 0;
            for len in part {
                for i in 0..len {
                    images[start + i] = start + (i + 1) % len;
                }
                start += len;
            }
            Permutation::from_indices(images).expect("a permutation")
        })
        .collect()
}

/// Canonical forms of every connected origami with `n` squares, sorted.
/// Every class has a member whose `h` is a cycle-type representative.
pub fn all_origamis(n: usize) -> Vec<Origami> {
    let all_v: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut found: BTreeSet<Origami> = BTreeSet::new();
    for h in conjugacy_representatives(n) {
        let batch: HashSet<Origami> = all_v
            .par_iter()
            .filter_map(|v| {
                let v = Permutation::from_indices(v.clone()).ok()?;
                Origami::new(h.clone(), v).ok().map(|o| o.canonical_form())
            })
            .collect();
        found.extend(batch);
    }
    found.into_iter().collect()
}

/// All `n`-square origamis with their orbit data, sorted by canonical form,
/// optionally restricted to a stratum and to reduced surfaces.
pub fn enumerate(n: usize, stratum: Option<&Stratum>, reduced_only: bool) -> Result<Vec<CatalogEntry>, CatalogError> {
    enumerate_bounded(n, stratum, reduced_only, DEFAULT_MAX_SQUARES)
}

pub fn enumerate_bounded(
    n: usize,
    stratum: Option<&Stratum>,
    reduced_only: bool,
    max: usize,
) -> Result<Vec<CatalogEntry>, CatalogError> {
    if n == 0 || n > max {
        return Err(CatalogError::OutOfBounds { n, max });
    }
    let surfaces = all_origamis(n);
    let position: HashMap<&Origami, usize> = surfaces.iter().enumerate().map(|(i, o)| (o, i)).collect();
    // surfaces are sorted, so orbits are discovered in order of least member
    let mut orbit_of: Vec<Option<usize>> = vec![None; surfaces.len()];
    let mut reports = Vec::new();
    for i in 0..surfaces.len() {
        if orbit_of[i].is_some() {
            continue;
        }
        let report = orbit_quiet(&surfaces[i])?;
        for member in &report.representatives {
            let j = *position.get(member).ok_or_else(|| {
                ActionError::InvariantViolation(format!("{member} missing from the enumeration"))
            })?;
            orbit_of[j] = Some(reports.len());
        }
        reports.push(report);
    }
    let mut entries = Vec::new();
    for (o, k) in surfaces.iter().zip(&orbit_of) {
        let k = k.expect("every surface lies in an orbit");
        let s = o.stratum();
        let reduced = o.is_reduced();
        if stratum.is_some_and(|want| want != &s) || (reduced_only && !reduced) {
            continue;
        }
        let r = &reports[k];
        entries.push(CatalogEntry {
            origami: o.to_string(),
            n,
            genus: o.genus(),
            stratum: s.to_string(),
            reduced,
            orbit_id: format!("{n}-{}", k + 1),
            index: r.index,
            cusp_widths: r.cusp_widths(),
            curve_genus: r.curve_genus,
        });
    }
    Ok(entries)
}

/// Distinct orbit ids in order of appearance.
pub fn orbit_ids(entries: &[CatalogEntry]) -> Vec<String> {
    entries.iter().map(|e| e.orbit_id.clone()).unique().collect()
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CatalogError + '_ {
    move |source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn read_entries(path: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let file = File::open(path).map_err(io_error(path))?;
    let mut out = Vec::new();
    for (k, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_error(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let entry = serde_json::from_str(&line).map_err(|e| CatalogError::Malformed {
            path: path.to_path_buf(),
            line: k + 1,
            reason: e.to_string(),
        })?;
        out.push(entry);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WriteStats {
    pub written: usize,
    pub skipped: usize,
}

/// Appends entries whose canonical origami is not yet in the file.
pub fn catalog_write(path: &Path, entries: &[CatalogEntry]) -> Result<WriteStats, CatalogError> {
    let mut known: HashSet<String> = if path.exists() {
        read_entries(path)?.into_iter().map(|e| e.origami).collect()
    } else {
        HashSet::new()
    };
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(io_error(path))?;
    let mut stats = WriteStats::default();
    let mut buf = String::new();
    for e in entries {
        if !known.insert(e.origami.clone()) {
            warn!("{}: skipping duplicate entry {}", path.display(), e.origami);
            stats.skipped += 1;
            continue;
        }
        buf.push_str(&serde_json::to_string(e).expect("entries serialize"));
        buf.push('\n');
        stats.written += 1;
    }
    file.write_all(buf.as_bytes()).map_err(io_error(path))?;
    Ok(stats)
}

/// Conjunction of optional filters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CatalogQuery {
    pub n: Option<usize>,
    pub stratum: Option<Stratum>,
    pub orbit_id: Option<String>,
}

impl CatalogQuery {
    pub fn matches(&self, e: &CatalogEntry) -> bool {
        self.n.is_none_or(|n| n == e.n)
            && self
                .stratum
                .as_ref()
                .is_none_or(|s| e.stratum.parse::<Stratum>().is_ok_and(|t| &t == s))
            && self.orbit_id.as_ref().is_none_or(|id| id == &e.orbit_id)
    }
}

pub fn catalog_query(path: &Path, query: &CatalogQuery) -> Result<Vec<CatalogEntry>, CatalogError> {
    Ok(read_entries(path)?.into_iter().filter(|e| query.matches(e)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h2() -> Stratum {
        "H(2)".parse().unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(all_origamis(1), vec![Origami::torus()]);
        // 2 squares: horizontal or vertical 2-cylinder torus, and the 2x1 with a twist
        assert_eq!(all_origamis(2).len(), 3);
        assert_eq!(conjugacy_representatives(5).len(), 7);
        let e = enumerate(1, None, false).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].orbit_id, "1-1");
        assert!(matches!(enumerate(9, None, false), Err(CatalogError::OutOfBounds { n: 9, max: 8 })));
        assert!(matches!(enumerate(0, None, false), Err(CatalogError::OutOfBounds { .. })));
    }

    #[test]
    fn three_squares() {
        let e = enumerate(3, Some(&h2()), true).unwrap();
        assert_eq!(orbit_ids(&e).len(), 1);
        // the orbit of St(3) has three surfaces: two with two horizontal
        // cylinders, one with a single cylinder
        assert_eq!(e.len(), 3);
        assert!(e.iter().any(|x| x.origami == Origami::st3().canonical_form().to_string()));
        assert!(e.iter().all(|x| x.index == 3 && x.cusp_widths == vec![2, 1]));
    }

    #[test]
    fn orbits_partition_reduced_surfaces() {
        for n in 1..=5 {
            let all = enumerate(n, None, true).unwrap();
            let mut sizes: HashMap<&str, usize> = HashMap::new();
            for e in &all {
                *sizes.entry(&e.orbit_id).or_default() += 1;
            }
            // index counts projective points; genus <= 2 surfaces are their
            // own half turns
            for e in all.iter().filter(|e| e.genus <= 2) {
                assert_eq!(sizes[e.orbit_id.as_str()], e.index);
            }
            assert_eq!(sizes.values().sum::<usize>(), all.len());
        }
    }

    #[test]
    fn deterministic() {
        let a = enumerate(4, None, false).unwrap();
        let b = enumerate(4, None, false).unwrap();
        assert_eq!(a, b);
        let mut sorted = a.clone();
        sorted.sort_by_key(|x| x.origami.parse::<Origami>().unwrap());
        assert_eq!(a, sorted);
    }

    #[test]
    fn catalog_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.jsonl");
        std::fs::write(&path, "").unwrap();
        assert!(catalog_query(&path, &CatalogQuery::default()).unwrap().is_empty());
        let e3 = enumerate(3, Some(&h2()), false).unwrap();
        let stats = catalog_write(&path, &e3).unwrap();
        assert_eq!(stats, WriteStats { written: e3.len(), skipped: 0 });
        let again = catalog_write(&path, &e3).unwrap();
        assert_eq!(again, WriteStats { written: 0, skipped: e3.len() });
        catalog_write(&path, &enumerate(2, None, false).unwrap()).unwrap();
        let q = CatalogQuery {
            n: Some(3),
            ..Default::default()
        };
        assert_eq!(catalog_query(&path, &q).unwrap(), e3);
        let q = CatalogQuery {
            stratum: Some("H(1^2)".parse().unwrap()),
            ..Default::default()
        };
        assert!(catalog_query(&path, &q).unwrap().is_empty());
        let q = CatalogQuery {
            orbit_id: Some(e3[0].orbit_id.clone()),
            ..Default::default()
        };
        assert_eq!(catalog_query(&path, &q).unwrap(), e3);

        let mut text = std::fs::read_to_string(&path).unwrap();
        text.push_str("{not json\n");
        std::fs::write(&path, text).unwrap();
        let lines = e3.len() + 3 + 1;
        match catalog_query(&path, &CatalogQuery::default()) {
            Err(CatalogError::Malformed { line, .. }) => assert_eq!(line, lines),
            other => panic!("expected a malformed-line error, got {other:?}"),
        }
    }
}

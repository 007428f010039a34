//! Generalized Laplacians, critical ideals and the algebraic co-rank.
//!
//! The `i`-th critical ideal of a digraph is generated by the `i x i` minors
//! of its generalized Laplacian `L(D, X)`, the matrix with `x_u` on the
//! diagonal and `-1` at `(u, v)` for every arc `u -> v`. The algebraic
//! co-rank `gamma(D)` counts the critical ideals equal to the whole ring;
//! since the ideals are nested this is the largest `i` with `I_i` trivial.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use dashmap::DashMap;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::digraph::{self, CanonicalForm, Digraph, DigraphError, VertexSet};
use crate::ideals::{self, find_witness, GroebnerOptions, IdealError};
use crate::zpoly::{Polynomial, SymMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriticalError {
    #[error("ideal index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("{0}")]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("{digraph6}: {source}")]
    At {
        digraph6: String,
        #[source]
        source: Box<CriticalError>,
    },
}

impl CriticalError {
    pub fn is_resource(&self) -> bool {
        match self {
            CriticalError::Ideal(IdealError::StepCapExceeded { .. }) => true,
            CriticalError::At { source, .. } => source.is_resource(),
            _ => false,
        }
    }

    fn at(self, d: &Digraph) -> CriticalError {
        match self {
            e @ CriticalError::At { .. } => e,
            e => CriticalError::At {
                digraph6: d.to_digraph6(),
                source: Box::new(e),
            },
        }
    }
}

pub fn generalized_laplacian(d: &Digraph) -> SymMatrix {
    let n = d.vertex_count();
    let mut entries = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            entries.push(if u == v {
                Polynomial::var(n, u)
            } else if d.has_arc(u, v) {
                Polynomial::constant(n, -1)
            } else {
                Polynomial::zero(n)
            });
        }
    }
    SymMatrix::new(n, n, entries).expect("n*n entries over n variables")
}

/// Minors of a square matrix, one size at a time.
///
/// Size `i` minors are expanded along their first row using the size `i - 1`
/// table, so all minors up to size `i` cost one pass.
pub struct MinorTable<'a> {
    matrix: &'a SymMatrix,
    size: usize,
    previous: HashMap<(u32, u32), Polynomial>,
}

impl<'a> MinorTable<'a> {
    pub fn new(matrix: &'a SymMatrix) -> Self {
        assert_eq!(matrix.rows(), matrix.cols(), "minor tables need a square matrix");
        MinorTable {
            matrix,
            size: 0,
            previous: HashMap::new(),
        }
    }

    /// Advances to the next size and returns its nonzero minors ordered by
    /// row set, then column set (both lexicographic).
    pub fn next_level(&mut self) -> Option<Vec<Polynomial>> {
        let n = self.matrix.rows();
        if self.size == n {
            return None;
        }
        self.size += 1;
        let subsets = VertexSet::subsets_of_size(n, self.size);
        let mut table = HashMap::with_capacity(subsets.len() * subsets.len());
        let mut out = Vec::new();
        for &rows in &subsets {
            let r0 = rows.iter().next().expect("nonempty row set");
            let rest = rows.without(r0);
            for &cols in &subsets {
                let det = if self.size == 1 {
                    self.matrix.get(r0, cols.iter().next().expect("one column")).clone()
                } else {
                    let mut acc = Polynomial::zero(self.matrix.nvars());
                    for (k, c) in cols.iter().enumerate() {
                        let entry = self.matrix.get(r0, c);
                        if entry.is_zero() {
                            continue;
                        }
                        let Some(minor) = self.previous.get(&(rest.bits(), cols.without(c).bits())) else {
                            continue;
                        };
                        let term = entry * minor;
                        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
                    }
                    acc
                };
                if !det.is_zero() {
                    out.push(det.clone());
                    table.insert((rows.bits(), cols.bits()), det);
                }
            }
        }
        self.previous = table;
        Some(out)
    }
}

/// Nonzero `i x i` minors of `L(D, X)`, ordered by row set, then column set.
pub fn critical_ideal_gens(d: &Digraph, i: usize) -> Result<Vec<Polynomial>, CriticalError> {
    let n = d.vertex_count();
    if i == 0 || i > n {
        return Err(CriticalError::IndexOutOfRange { index: i, n });
    }
    let lap = generalized_laplacian(d);
    let mut table = MinorTable::new(&lap);
    let mut level = Vec::new();
    for _ in 0..i {
        level = table.next_level().expect("i <= n");
    }
    Ok(level)
}

/// Decides whether the ideal generated by `gens` is the whole ring.
///
/// A unit generator settles it at once; a common zero over a small prime
/// field proves the ideal proper; everything else goes to a Gröbner basis.
pub fn ideal_is_trivial(nvars: usize, gens: &[Polynomial]) -> Result<bool, IdealError> {
    if gens.iter().any(Polynomial::is_unit) {
        return Ok(true);
    }
    if gens.is_empty() || find_witness(nvars, gens).is_some() {
        return Ok(false);
    }
    let mut unique: Vec<Polynomial> = gens
        .iter()
        .map(|g| if g.terms()[0].1 < 0.into() { -g } else { g.clone() })
        .collect();
    unique.sort_by_key(|g| g.to_string());
    unique.dedup();
    ideals::is_trivial_with(nvars, &unique, &GroebnerOptions::default())
}

/// `gamma(D)`: ascend through the critical ideals and stop at the first
/// proper one.
pub fn algebraic_corank(d: &Digraph) -> Result<usize, CriticalError> {
    let n = d.vertex_count();
    let lap = generalized_laplacian(d);
    let mut table = MinorTable::new(&lap);
    let mut gamma = 0;
    while let Some(gens) = table.next_level() {
        if !ideal_is_trivial(n, &gens).map_err(|e| CriticalError::from(e).at(d))? {
            break;
        }
        gamma += 1;
    }
    Ok(gamma)
}

/// Triviality of every critical ideal, computed independently per index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalIdealReport {
    pub digraph6: String,
    pub verdicts: Vec<bool>,
    pub gamma: usize,
}

impl CriticalIdealReport {
    pub fn compute(d: &Digraph) -> Result<Self, CriticalError> {
        let n = d.vertex_count();
        let lap = generalized_laplacian(d);
        let mut table = MinorTable::new(&lap);
        let mut verdicts = Vec::with_capacity(n);
        while let Some(gens) = table.next_level() {
            verdicts.push(ideal_is_trivial(n, &gens).map_err(|e| CriticalError::from(e).at(d))?);
        }
        let gamma = verdicts.iter().take_while(|&&v| v).count();
        Ok(CriticalIdealReport {
            digraph6: d.to_digraph6(),
            verdicts,
            gamma,
        })
    }

    /// Verdicts are a run of `true` followed only by `false`.
    pub fn is_prefix_closed(&self) -> bool {
        self.verdicts.windows(2).all(|w| w[0] || !w[1])
    }
}

/// Memo of `gamma` keyed by canonical form, shared across threads.
#[derive(Default)]
pub struct GammaCache {
    map: DashMap<CanonicalForm, usize>,
}

impl GammaCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Digraphs too large to canonicalize bypass the memo.
    pub fn gamma(&self, d: &Digraph) -> Result<usize, CriticalError> {
        let Ok(key) = digraph::canonical_form(d) else {
            return algebraic_corank(d);
        };
        if let Some(g) = self.map.get(&key) {
            return Ok(*g);
        }
        let g = algebraic_corank(d)?;
        self.map.insert(key, g);
        Ok(g)
    }
}

/// `gamma(D - v) < gamma(D)` for every vertex `v`. Vertex-deleted
/// subdigraphs are evaluated as they are, connected or not.
pub fn is_gamma_critical(d: &Digraph) -> Result<bool, CriticalError> {
    is_gamma_critical_cached(d, &GammaCache::new())
}

pub fn is_gamma_critical_cached(d: &Digraph, cache: &GammaCache) -> Result<bool, CriticalError> {
    let gamma = cache.gamma(d)?;
    gamma_critical_given(d, gamma, cache)
}

fn gamma_critical_given(d: &Digraph, gamma: usize, cache: &GammaCache) -> Result<bool, CriticalError> {
    if d.vertex_count() < 2 {
        return Ok(false);
    }
    for v in 0..d.vertex_count() {
        if cache.gamma(&d.delete_vertex(v)?)? >= gamma {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// the forbidden family

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedDigraph {
    pub name: &'static str,
    pub digraph: Digraph,
}

/// The seventeen 3- and 4-vertex digraphs with `gamma = 2` whose proper
/// induced subdigraphs all have `gamma <= 1`.
#[derive(Clone, Debug)]
pub struct ForbiddenFamily {
    members: Vec<NamedDigraph>,
    forms: HashMap<CanonicalForm, usize>,
}

type AdjacencyListing = (&'static str, usize, &'static [(usize, &'static [usize])]);

const FORBIDDEN_LISTING: [AdjacencyListing; 17] = [
    ("F31", 3, &[(0, &[2]), (2, &[1])]),
    ("F32", 3, &[(0, &[2]), (1, &[2]), (2, &[0])]),
    ("F33", 3, &[(0, &[2]), (2, &[0, 1])]),
    ("F34", 3, &[(0, &[2]), (1, &[2]), (2, &[0, 1])]),
    ("F35", 3, &[(0, &[1]), (1, &[2]), (2, &[0])]),
    ("F36", 3, &[(0, &[1, 2]), (1, &[0]), (2, &[1])]),
    ("F37", 3, &[(0, &[1, 2]), (1, &[0, 2]), (2, &[0])]),
    ("F41", 4, &[(0, &[2, 3]), (1, &[3])]),
    ("F42", 4, &[(0, &[2, 3]), (1, &[3]), (2, &[3])]),
    ("F43", 4, &[(0, &[2]), (3, &[0, 1, 2])]),
    ("F44", 4, &[(0, &[2, 3]), (1, &[3]), (2, &[0, 3])]),
    ("F45", 4, &[(0, &[2]), (1, &[2]), (3, &[0, 1, 2])]),
    ("F46", 4, &[(0, &[2]), (2, &[0]), (3, &[0, 1, 2])]),
    ("F47", 4, &[(0, &[1, 2, 3]), (1, &[2, 3]), (2, &[3])]),
    ("F48", 4, &[(0, &[1, 2, 3]), (1, &[0, 2, 3]), (2, &[3])]),
    ("F49", 4, &[(0, &[1, 2, 3]), (1, &[0, 2, 3]), (2, &[3]), (3, &[2])]),
    ("F410", 4, &[(0, &[1]), (1, &[0]), (2, &[0, 1, 3]), (3, &[0, 1])]),
];

impl ForbiddenFamily {
    pub fn members(&self) -> &[NamedDigraph] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Digraph> {
        self.members.iter().find(|m| m.name == name).map(|m| &m.digraph)
    }

    /// The member isomorphic to `d`, if any.
    pub fn identify(&self, d: &Digraph) -> Option<&NamedDigraph> {
        let form = digraph::canonical_form(d).ok()?;
        self.forms.get(&form).map(|&k| &self.members[k])
    }
}

pub fn forbidden_family() -> &'static ForbiddenFamily {
    static FAMILY: OnceLock<ForbiddenFamily> = OnceLock::new();
    FAMILY.get_or_init(|| {
        let members: Vec<NamedDigraph> = FORBIDDEN_LISTING
            .iter()
            .map(|(name, n, lists)| NamedDigraph {
                name,
                digraph: Digraph::from_adjacency_lists(*n, lists).expect("listing is well formed"),
            })
            .collect();
        let forms = members
            .iter()
            .enumerate()
            .map(|(k, m)| (digraph::canonical_form(&m.digraph).expect("small digraph"), k))
            .collect();
        ForbiddenFamily { members, forms }
    })
}

/// An induced copy of a family member: its name and the vertex set.
pub fn forbidden_witness(d: &Digraph) -> Option<(&'static str, VertexSet)> {
    let family = forbidden_family();
    for k in [3, 4] {
        for set in VertexSet::subsets_of_size(d.vertex_count(), k) {
            let sub = d.induced(set).expect("subset of the vertex set");
            if let Some(m) = family.identify(&sub) {
                return Some((m.name, set));
            }
        }
    }
    None
}

pub fn is_f_free(d: &Digraph) -> bool {
    forbidden_witness(d).is_none()
}

// ---------------------------------------------------------------------------
// census

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub digraph6: String,
    pub gamma: usize,
    pub critical: bool,
}

impl Classification {
    /// `digraph6 TAB gamma TAB critical`.
    pub fn line(&self) -> String {
        format!("{}\t{}\t{}", self.digraph6, self.gamma, self.critical)
    }

    pub fn parse_line(line: &str) -> Option<Classification> {
        let mut parts = line.split('\t');
        let digraph6 = parts.next()?.to_string();
        let gamma = parts.next()?.parse().ok()?;
        let critical = parts.next()?.parse().ok()?;
        Some(Classification {
            digraph6,
            gamma,
            critical,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub n: usize,
    /// Number of gamma-critical classes per co-rank.
    pub counts: BTreeMap<usize, usize>,
    /// Every connected class in ascending canonical order.
    pub classes: Vec<Classification>,
}

impl Census {
    pub fn members(&self) -> impl Iterator<Item = &Classification> {
        self.classes.iter().filter(|c| c.critical)
    }

    /// One `n TAB k TAB count` line per co-rank.
    pub fn tsv(&self) -> String {
        self.counts
            .iter()
            .map(|(k, c)| format!("{}\t{}\t{}\n", self.n, k, c))
            .collect()
    }
}

#[derive(Default)]
pub struct CensusOptions<'a> {
    /// Classifications already known (from a checkpoint), keyed by digraph6.
    pub known: HashMap<String, Classification>,
    /// Called once for every freshly classified digraph.
    pub on_classified: Option<&'a (dyn Fn(&Classification) + Sync)>,
}

pub fn classify(d: &Digraph, cache: &GammaCache) -> Result<Classification, CriticalError> {
    let gamma = cache.gamma(d)?;
    let critical = gamma_critical_given(d, gamma, cache).map_err(|e| e.at(d))?;
    Ok(Classification {
        digraph6: d.to_digraph6(),
        gamma,
        critical,
    })
}

/// Gamma-critical counts over all connected digraphs on `n` vertices,
/// `2 <= n <= 5`, on the current rayon pool.
pub fn census(n: usize) -> Result<Census, CriticalError> {
    census_with(n, &CensusOptions::default())
}

pub fn census_with(n: usize, opts: &CensusOptions<'_>) -> Result<Census, CriticalError> {
    if !(2..=digraph::MAX_ENUMERATION_VERTICES).contains(&n) {
        return Err(CriticalError::IndexOutOfRange { index: n, n: digraph::MAX_ENUMERATION_VERTICES });
    }
    let classes = digraph::enumerate_connected(n)?;
    let cache = GammaCache::new();
    let results: Vec<Result<Classification, CriticalError>> = classes
        .par_iter()
        .map(|d| {
            let key = d.to_digraph6();
            if let Some(c) = opts.known.get(&key) {
                return Ok(c.clone());
            }
            let c = classify(d, &cache)?;
            if let Some(cb) = opts.on_classified {
                cb(&c);
            }
            Ok(c)
        })
        .collect();
    let classes: Vec<Classification> = results.into_iter().collect::<Result<_, _>>()?;
    let mut counts = BTreeMap::new();
    for c in classes.iter().filter(|c| c.critical) {
        *counts.entry(c.gamma).or_insert(0) += 1;
    }
    Ok(Census { n, counts, classes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::from_arcs(n, arcs.iter().copied()).unwrap()
    }

    fn p(n: usize, s: &str) -> Polynomial {
        Polynomial::parse(n, s).unwrap()
    }

    #[test]
    fn laplacian_examples() {
        let lap = generalized_laplacian(&d(2, &[(0, 1)]));
        assert_eq!(lap.get(0, 0), &Polynomial::var(2, 0));
        assert_eq!(lap.get(0, 1), &Polynomial::constant(2, -1));
        assert!(lap.get(1, 0).is_zero());
        assert_eq!(lap.get(1, 1), &Polynomial::var(2, 1));
        let t1 = generalized_laplacian(&d(1, &[]));
        assert_eq!(t1.get(0, 0), &Polynomial::var(1, 0));
        let c2 = generalized_laplacian(&d(2, &[(0, 1), (1, 0)]));
        assert_eq!(c2.get(1, 0), &Polynomial::constant(2, -1));
    }

    #[test]
    fn generator_examples() {
        assert_eq!(critical_ideal_gens(&d(1, &[]), 1).unwrap(), vec![p(1, "x0")]);
        assert_eq!(critical_ideal_gens(&d(2, &[(0, 1), (1, 0)]), 2).unwrap(), vec![p(2, "x0*x1 - 1")]);
        assert_eq!(
            critical_ideal_gens(&d(2, &[(0, 1)]), 1).unwrap(),
            vec![p(2, "x0"), p(2, "-1"), p(2, "x1")]
        );
        assert!(critical_ideal_gens(&d(2, &[(0, 1)]), 3).is_err());
        assert!(critical_ideal_gens(&d(2, &[(0, 1)]), 0).is_err());
    }

    #[test]
    fn minor_table_matches_leibniz() {
        let g = d(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 1)]);
        let lap = generalized_laplacian(&g);
        for i in 1..=4 {
            let fast = critical_ideal_gens(&g, i).unwrap();
            let mut slow = Vec::new();
            for rows in VertexSet::subsets_of_size(4, i) {
                for cols in VertexSet::subsets_of_size(4, i) {
                    let r: Vec<usize> = rows.iter().collect();
                    let c: Vec<usize> = cols.iter().collect();
                    let det = lap.submatrix(&r, &c).determinant().unwrap();
                    if !det.is_zero() {
                        slow.push(det);
                    }
                }
            }
            assert_eq!(fast, slow, "size {i}");
        }
    }

    #[test]
    fn corank_examples() {
        assert_eq!(algebraic_corank(&d(1, &[])).unwrap(), 0);
        assert_eq!(algebraic_corank(&d(2, &[(0, 1)])).unwrap(), 1);
        assert_eq!(algebraic_corank(&d(2, &[(0, 1), (1, 0)])).unwrap(), 1);
        assert_eq!(algebraic_corank(&d(3, &[(0, 1), (1, 2), (2, 0)])).unwrap(), 2);
        assert_eq!(algebraic_corank(&d(2, &[])).unwrap(), 0);
    }

    #[test]
    fn criticality_examples() {
        assert!(is_gamma_critical(&d(2, &[(0, 1)])).unwrap());
        let f41 = forbidden_family().get("F41").unwrap();
        assert!(is_gamma_critical(f41).unwrap());
        // transitive triangle has gamma 1 but deleting its middle vertex keeps an arc
        assert!(!is_gamma_critical(&d(3, &[(0, 1), (0, 2), (1, 2)])).unwrap());
    }

    #[test]
    fn transitive_tournament_minus_sink() {
        let f47 = forbidden_family().get("F47").unwrap();
        assert_eq!(algebraic_corank(f47).unwrap(), 2);
        let minus_sink = f47.delete_vertex(3).unwrap();
        assert_eq!(algebraic_corank(&minus_sink).unwrap(), 1);
    }

    #[test]
    fn family_shape() {
        let fam = forbidden_family();
        assert_eq!(fam.len(), 17);
        assert!(fam.members().iter().all(|m| m.digraph.is_connected()));
        assert_eq!(fam.get("F31").unwrap().arcs(), vec![(0, 2), (2, 1)]);
        assert_eq!(fam.get("F410").unwrap().arc_count(), 7);
    }

    #[test]
    fn f_freeness_examples() {
        let fam = forbidden_family();
        assert!(!is_f_free(fam.get("F31").unwrap()));
        assert!(!is_f_free(&d(3, &[(0, 1), (1, 2), (2, 0)])));
        assert_eq!(forbidden_witness(&d(3, &[(1, 2), (2, 0), (0, 1)])).unwrap().0, "F35");
        assert!(is_f_free(&d(2, &[(0, 1)])));
    }

    #[test]
    fn report_is_prefix_closed() {
        let r = CriticalIdealReport::compute(&d(3, &[(0, 1), (1, 2), (2, 0)])).unwrap();
        assert_eq!(r.verdicts, vec![true, true, false]);
        assert_eq!(r.gamma, 2);
        assert!(r.is_prefix_closed());
    }

    #[test]
    fn classification_lines_round_trip() {
        let c = Classification {
            digraph6: "&AO".into(),
            gamma: 1,
            critical: true,
        };
        assert_eq!(c.line(), "&AO\t1\ttrue");
        assert_eq!(Classification::parse_line(&c.line()), Some(c));
    }

    #[test]
    fn small_census() {
        assert_eq!(census(2).unwrap().counts, BTreeMap::from([(1, 2)]));
        assert_eq!(census(3).unwrap().counts, BTreeMap::from([(2, 7)]));
        assert!(census(1).is_err());
    }
}

//! Simple loop-free digraphs on at most 16 vertices.
//!
//! A [`Digraph`] stores one out-neighbour bitmask per vertex. Besides the usual
//! constructors this module provides the digraph6 and JSON arc-list
//! interchange formats, induced subdigraphs, a permutation-minimising
//! canonical form (for up to 8 vertices) and exhaustive enumeration of the
//! connected digraphs on up to 5 vertices.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest vertex count a [`Digraph`] can hold.
pub const MAX_VERTICES: usize = 16;
/// Largest vertex count accepted by [`canonical_form`].
pub const MAX_CANONICAL_VERTICES: usize = 8;
/// Largest vertex count accepted by [`enumerate_connected`].
pub const MAX_ENUMERATION_VERTICES: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DigraphError {
    #[error("vertex count {0} outside 1..={MAX_VERTICES}")]
    VertexCount(usize),
    #[error("loop arc ({0},{0}) is not allowed")]
    Loop(usize),
    #[error("arc ({u},{v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("vertex set {set} is not a subset of 0..{n}")]
    VertexSetOutOfRange { set: VertexSet, n: usize },
    #[error("{what} supports at most {max} vertices, got {n}")]
    Capability { what: &'static str, max: usize, n: usize },
    #[error("digraph6 parse error at byte {offset}: {reason}")]
    Digraph6 { offset: usize, reason: String },
    #[error("invalid JSON arc list: {0}")]
    Json(String),
}

/// A set of vertex indices stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    pub const fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet(((1u64 << n) - 1) as u32)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 32 && self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn without(mut self, v: usize) -> Self {
        self.remove(v);
        self
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    /// All `k`-element subsets of `0..n` in lexicographic order of their
    /// sorted member lists.
    pub fn subsets_of_size(n: usize, k: usize) -> Vec<VertexSet> {
        fn rec(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<VertexSet>) {
            if k == 0 {
                out.push(VertexSet(acc));
                return;
            }
            for v in start..n {
                if n - v < k {
                    break;
                }
                rec(v + 1, n, k - 1, acc | (1 << v), out);
            }
        }
        let mut out = Vec::new();
        if k <= n {
            rec(0, n, k, 0, &mut out);
        }
        out
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// Serialized as the ascending list of its members.
impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A simple digraph without loops. `rows[u]` has bit `v` set iff `u -> v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    rows: [u16; MAX_VERTICES],
}

impl Digraph {
    /// The digraph on `n` vertices without arcs.
    pub fn empty(n: usize) -> Result<Self, DigraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(DigraphError::VertexCount(n));
        }
        Ok(Digraph {
            n,
            rows: [0; MAX_VERTICES],
        })
    }

    /// Builds a digraph from ordered pairs. Repeated pairs collapse to one arc.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, DigraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut d = Digraph::empty(n)?;
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(DigraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(DigraphError::Loop(u));
            }
            d.rows[u] |= 1 << v;
        }
        Ok(d)
    }

    /// Builds a digraph from out-neighbour lists, as in `{0: [2], 2: [1]}`.
    pub fn from_adjacency_lists(n: usize, lists: &[(usize, &[usize])]) -> Result<Self, DigraphError> {
        Digraph::from_arcs(
            n,
            lists
                .iter()
                .flat_map(|(u, vs)| vs.iter().map(move |&v| (*u, v))),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u] & (1 << v) != 0
    }

    pub fn out_neighbors(&self, u: usize) -> VertexSet {
        VertexSet(self.rows[u] as u32)
    }

    pub fn in_neighbors(&self, v: usize) -> VertexSet {
        (0..self.n).filter(|&u| self.has_arc(u, v)).collect()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.rows[u].count_ones() as usize
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_neighbors(v).len()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.out_degree(u)).collect()
    }

    pub fn arc_count(&self) -> usize {
        self.rows[..self.n].iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Arcs in row-major order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.out_neighbors(u).iter().map(move |v| (u, v)))
            .collect()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Whether the underlying undirected graph is connected.
    pub fn is_connected(&self) -> bool {
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let mut nbrs = self.rows[u] as u32;
            for w in 0..self.n {
                if self.rows[w] & (1 << u) != 0 {
                    nbrs |= 1 << w;
                }
            }
            let fresh = nbrs & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == VertexSet::full(self.n).0
    }

    /// The subdigraph induced by `set`, relabelled in increasing vertex order.
    pub fn induced(&self, set: VertexSet) -> Result<Digraph, DigraphError> {
        if set.is_empty() {
            return Err(DigraphError::EmptyVertexSet);
        }
        if set.0 & !VertexSet::full(self.n).0 != 0 {
            return Err(DigraphError::VertexSetOutOfRange { set, n: self.n });
        }
        let verts: Vec<usize> = set.iter().collect();
        let mut d = Digraph::empty(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if self.has_arc(u, v) {
                    d.rows[i] |= 1 << j;
                }
            }
        }
        Ok(d)
    }

    /// `D - v`.
    pub fn delete_vertex(&self, v: usize) -> Result<Digraph, DigraphError> {
        self.induced(self.vertices().without(v))
    }

    /// Relabels vertex `u` as `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.n, "permutation length must match vertex count");
        let mut d = Digraph {
            n: self.n,
            rows: [0; MAX_VERTICES],
        };
        for (u, v) in self.arcs() {
            d.rows[perm[u]] |= 1 << perm[v];
        }
        d
    }

    pub fn to_digraph6(&self) -> String {
        emit_digraph6(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ArcList::from(self)).expect("arc lists always serialize")
    }

    pub fn canonical_form(&self) -> Result<CanonicalForm, DigraphError> {
        canonical_form(self)
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.n, self.arcs())
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_digraph6(self))
    }
}

/// JSON arc-list form `{"n": 3, "arcs": [[0, 2], [2, 1]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcList {
    pub n: usize,
    pub arcs: Vec<[usize; 2]>,
}

impl From<&Digraph> for ArcList {
    fn from(d: &Digraph) -> Self {
        ArcList {
            n: d.n,
            arcs: d.arcs().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<ArcList> for Digraph {
    type Error = DigraphError;

    fn try_from(list: ArcList) -> Result<Self, Self::Error> {
        Digraph::from_arcs(list.n, list.arcs.into_iter().map(|[u, v]| (u, v)))
    }
}

pub fn parse_json(text: &str) -> Result<Digraph, DigraphError> {
    let list: ArcList =
        serde_json::from_str(text).map_err(|e| DigraphError::Json(e.to_string()))?;
    Digraph::try_from(list)
}

// ---------------------------------------------------------------------------
// digraph6

fn d6_err(offset: usize, reason: impl Into<String>) -> DigraphError {
    DigraphError::Digraph6 {
        offset,
        reason: reason.into(),
    }
}

/// Encodes `d` as `&`, then `N(n)`, then the row-major `n*n` adjacency bits
/// packed six per byte (most significant first, zero padded, offset by 63).
pub fn emit_digraph6(d: &Digraph) -> String {
    let n = d.n;
    let mut out = String::with_capacity(2 + (n * n).div_ceil(6));
    out.push('&');
    // n <= 16, so N(n) is always the single byte n + 63.
    out.push((n as u8 + 63) as char);
    let total = n * n;
    let mut k = 0;
    while k < total {
        let mut group = 0u8;
        for b in 0..6 {
            group <<= 1;
            let idx = k + b;
            if idx < total && d.has_arc(idx / n, idx % n) {
                group |= 1;
            }
        }
        out.push((group + 63) as char);
        k += 6;
    }
    out
}

/// Inverse of [`emit_digraph6`]. Surrounding whitespace is ignored.
pub fn parse_digraph6(text: &str) -> Result<Digraph, DigraphError> {
    let bytes = text.trim().as_bytes();
    if bytes.first() != Some(&b'&') {
        return Err(d6_err(0, "expected leading '&'"));
    }
    let body = &bytes[1..];
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(d6_err(i + 1, format!("byte {b:#04x} outside the printable range 63..=126")));
        }
    }
    let (n, header_len) = match body {
        [] => return Err(d6_err(1, "missing vertex count")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(d6_err(1, "truncated 8-byte vertex count"));
            }
            let n = rest[..6].iter().fold(0u64, |acc, &b| (acc << 6) | (b - 63) as u64);
            (n as usize, 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(d6_err(1, "truncated 4-byte vertex count"));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(d6_err(1, format!("vertex count {n} outside 1..={MAX_VERTICES}")));
    }
    let payload = &body[header_len..];
    let total = n * n;
    let need = total.div_ceil(6);
    let start = 1 + header_len;
    if payload.len() < need {
        return Err(d6_err(
            start + payload.len(),
            format!("truncated payload: expected {need} bytes, found {}", payload.len()),
        ));
    }
    if payload.len() > need {
        return Err(d6_err(start + need, "trailing bytes after payload"));
    }
    let mut d = Digraph::empty(n).expect("n checked above");
    for (g, &b) in payload.iter().enumerate() {
        let bits = b - 63;
        for k in 0..6 {
            let idx = g * 6 + k;
            let set = bits & (1 << (5 - k)) != 0;
            if idx >= total {
                if set {
                    return Err(d6_err(start + g, "nonzero padding bit"));
                }
                continue;
            }
            if set {
                let (u, v) = (idx / n, idx % n);
                if u == v {
                    return Err(d6_err(start + g, format!("loop at vertex {u}")));
                }
                d.rows[u] |= 1 << v;
            }
        }
    }
    Ok(d)
}

// ---------------------------------------------------------------------------
// canonical form

/// The lexicographically smallest row-major adjacency bit string over all
/// relabellings. Bits are stored most significant first, so numeric order on
/// `bits` is lexicographic order on the strings.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm {
    n: u8,
    bits: u64,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// The canonical representative itself.
    pub fn to_digraph(&self) -> Digraph {
        let n = self.n as usize;
        let mut d = Digraph::empty(n).expect("canonical forms hold valid vertex counts");
        for idx in 0..n * n {
            if self.bits & (1 << (n * n - 1 - idx)) != 0 {
                d.rows[idx / n] |= 1 << (idx % n);
            }
        }
        d
    }
}

fn permutations(n: usize) -> &'static [Vec<u8>] {
    static TABLES: OnceLock<Vec<Vec<Vec<u8>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        (0..=MAX_CANONICAL_VERTICES)
            .map(|k| {
                let mut out = Vec::new();
                let mut cur: Vec<u8> = (0..k as u8).collect();
                permute(&mut cur, 0, &mut out);
                out.sort();
                out
            })
            .collect()
    });
    &tables[n]
}

fn permute(cur: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// Bit string of the relabelling whose vertex `i` is the old vertex `sigma[i]`.
fn relabelled_bits(d: &Digraph, sigma: &[u8]) -> u64 {
    let mut bits = 0u64;
    for &a in sigma {
        let row = d.rows[a as usize];
        for &b in sigma {
            bits = (bits << 1) | ((row >> b) & 1) as u64;
        }
    }
    bits
}

pub fn canonical_form(d: &Digraph) -> Result<CanonicalForm, DigraphError> {
    let n = d.n;
    if n > MAX_CANONICAL_VERTICES {
        return Err(DigraphError::Capability {
            what: "canonical form",
            max: MAX_CANONICAL_VERTICES,
            n,
        });
    }
    let bits = permutations(n)
        .iter()
        .map(|sigma| relabelled_bits(d, sigma))
        .min()
        .expect("at least the identity permutation");
    Ok(CanonicalForm { n: n as u8, bits })
}

/// True iff no relabelling yields a smaller bit string than `d`'s own.
fn is_canonical_labelling(d: &Digraph) -> bool {
    let n = d.n;
    for sigma in permutations(n) {
        'perm: for (i, &a) in sigma.iter().enumerate() {
            for (j, &b) in sigma.iter().enumerate() {
                let mine = d.has_arc(i, j);
                let theirs = d.has_arc(a as usize, b as usize);
                if mine != theirs {
                    if mine && !theirs {
                        return false;
                    }
                    break 'perm;
                }
            }
        }
    }
    true
}

pub fn is_isomorphic(a: &Digraph, b: &Digraph) -> Result<bool, DigraphError> {
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Whether some vertex subset of `d` induces a copy of `h`.
pub fn contains_induced(d: &Digraph, h: &Digraph) -> Result<bool, DigraphError> {
    Ok(find_induced(d, h)?.is_some())
}

/// A vertex set of `d` inducing a copy of `h`, if one exists.
pub fn find_induced(d: &Digraph, h: &Digraph) -> Result<Option<VertexSet>, DigraphError> {
    let k = h.vertex_count();
    if k > d.vertex_count() {
        return Ok(None);
    }
    let target = canonical_form(h)?;
    let arcs = h.arc_count();
    for set in VertexSet::subsets_of_size(d.vertex_count(), k) {
        let sub = d.induced(set)?;
        if sub.arc_count() == arcs && canonical_form(&sub)? == target {
            return Ok(Some(set));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// enumeration

fn from_offdiagonal_mask(n: usize, mask: u64) -> Digraph {
    let slots = n * (n - 1);
    let mut d = Digraph {
        n,
        rows: [0; MAX_VERTICES],
    };
    let mut k = 0;
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            if mask & (1 << (slots - 1 - k)) != 0 {
                d.rows[u] |= 1 << v;
            }
            k += 1;
        }
    }
    d
}

/// One representative per isomorphism class of connected digraphs on `n`
/// vertices, each in its canonical labelling, in ascending canonical order.
///
/// Every labelled arc set is visited, so the cost is `2^(n(n-1))` candidate
/// checks; the work is split across the rayon pool and merged in order.
pub fn enumerate_connected(n: usize) -> Result<Vec<Digraph>, DigraphError> {
    if n == 0 {
        return Err(DigraphError::VertexCount(0));
    }
    if n > MAX_ENUMERATION_VERTICES {
        return Err(DigraphError::Capability {
            what: "enumeration",
            max: MAX_ENUMERATION_VERTICES,
            n,
        });
    }
    let slots = n * (n - 1);
    Ok((0..1u64 << slots)
        .into_par_iter()
        .filter_map(|mask| {
            let d = from_offdiagonal_mask(n, mask);
            (d.is_connected() && is_canonical_labelling(&d)).then_some(d)
        })
        .collect())
}

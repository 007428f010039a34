//! The three-part family `Lambda(n1, n2, n3)`.
//!
//! Vertices are laid out as `T` (independent, `n1` vertices), then `K`
//! (complete bidirectional, `n2`), then `T'` (independent, `n3`), with every
//! arc `T -> K`, `T -> T'` and `K -> T'` present. Connected members of the
//! family are exactly the connected digraphs with at most one trivial
//! critical ideal.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{Digraph, VertexSet, MAX_VERTICES};
use crate::zpoly::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LambdaError {
    #[error("{0} has no vertices")]
    Empty(LambdaParams),
    #[error("{params} is disconnected: {reason}")]
    Disconnected { params: LambdaParams, reason: &'static str },
    #[error("{0} has more than {max} vertices", max = MAX_VERTICES)]
    TooLarge(LambdaParams),
    #[error("{0} has fewer than two vertices")]
    TooSmall(LambdaParams),
    #[error("cannot parse {0:?} as Lambda(n1,n2,n3)")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LambdaParams {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

impl LambdaParams {
    pub const fn new(n1: usize, n2: usize, n3: usize) -> Self {
        LambdaParams { n1, n2, n3 }
    }

    pub fn total(&self) -> usize {
        self.n1 + self.n2 + self.n3
    }

    /// Rejects empty and disconnected parameterizations.
    pub fn validate(&self) -> Result<(), LambdaError> {
        let total = self.total();
        if total == 0 {
            return Err(LambdaError::Empty(*self));
        }
        if total > MAX_VERTICES {
            return Err(LambdaError::TooLarge(*self));
        }
        if total == 1 {
            return Ok(());
        }
        let nonempty = [self.n1, self.n2, self.n3].iter().filter(|&&k| k > 0).count();
        if nonempty >= 2 || self.n2 > 0 {
            return Ok(());
        }
        let reason = if self.n1 > 0 {
            "T alone with at least two vertices has no arcs"
        } else {
            "T' alone with at least two vertices has no arcs"
        };
        Err(LambdaError::Disconnected { params: *self, reason })
    }

    pub fn is_connected(&self) -> bool {
        self.validate().is_ok()
    }

    /// All connected parameter triples with `1 <= total <= max_total`, in
    /// lexicographic order.
    pub fn connected_up_to(max_total: usize) -> Vec<LambdaParams> {
        let mut out = Vec::new();
        for n1 in 0..=max_total {
            for n2 in 0..=max_total - n1 {
                for n3 in 0..=max_total - n1 - n2 {
                    let p = LambdaParams::new(n1, n2, n3);
                    if p.is_connected() {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    fn t(&self) -> std::ops::Range<usize> {
        0..self.n1
    }

    fn k(&self) -> std::ops::Range<usize> {
        self.n1..self.n1 + self.n2
    }

    fn t_prime(&self) -> std::ops::Range<usize> {
        self.n1 + self.n2..self.total()
    }
}

impl fmt::Display for LambdaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lambda({},{},{})", self.n1, self.n2, self.n3)
    }
}

/// Accepts `Lambda(1,2,3)` or a bare `1,2,3`.
impl FromStr for LambdaParams {
    type Err = LambdaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LambdaError::Parse(s.to_string());
        let t = s.trim();
        let inner = t
            .strip_prefix("Lambda(")
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let parts: Vec<usize> = inner
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match parts[..] {
            [n1, n2, n3] => Ok(LambdaParams::new(n1, n2, n3)),
            _ => Err(bad()),
        }
    }
}

pub fn build_lambda(p: LambdaParams) -> Result<Digraph, LambdaError> {
    p.validate()?;
    let mut arcs = Vec::new();
    for u in p.k() {
        arcs.extend(p.k().filter(|&v| v != u).map(|v| (u, v)));
        arcs.extend(p.t_prime().map(|v| (u, v)));
    }
    for u in p.t() {
        arcs.extend(p.k().chain(p.t_prime()).map(|v| (u, v)));
    }
    Ok(Digraph::from_arcs(p.total(), arcs).expect("parameters were validated"))
}

/// Out-degrees of `build_lambda(p)` from the closed formula.
pub fn lambda_outdegrees(p: LambdaParams) -> Result<Vec<usize>, LambdaError> {
    p.validate()?;
    let mut out = vec![p.n2 + p.n3; p.n1];
    out.extend(std::iter::repeat_n((p.n2 + p.n3).saturating_sub(1), p.n2));
    out.extend(std::iter::repeat_n(0, p.n3));
    Ok(out)
}

// ---------------------------------------------------------------------------
// recognition

/// Why a digraph is not a member of the family, with the vertices that show it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub reason: String,
    pub certificate: VertexSet,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.reason, self.certificate)
    }
}

/// A recognized member: its parameters and the part of every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recognition {
    pub params: LambdaParams,
    pub t: VertexSet,
    pub k: VertexSet,
    pub t_prime: VertexSet,
}

pub fn recognize_lambda(d: &Digraph) -> Result<LambdaParams, Rejection> {
    recognize_lambda_parts(d).map(|r| r.params)
}

pub fn recognize_lambda_parts(d: &Digraph) -> Result<Recognition, Rejection> {
    let n = d.vertex_count();
    let reject = |reason: String, certificate: VertexSet| Err(Rejection { reason, certificate });
    if !d.is_connected() {
        return reject("disconnected".into(), d.vertices());
    }

    let mut b = VertexSet::empty();
    for u in 0..n {
        for v in d.out_neighbors(u).iter() {
            if d.has_arc(v, u) {
                b.insert(u);
            }
        }
    }
    for u in b.iter() {
        for v in b.iter() {
            if u != v && !d.has_arc(u, v) {
                return reject(format!("bidirectional part misses arc {u}->{v}"), [u, v].into_iter().collect());
            }
        }
    }

    let (mut t, mut t_prime, mut leftover) = (VertexSet::empty(), VertexSet::empty(), VertexSet::empty());
    for v in (0..n).filter(|&v| !b.contains(v)) {
        if d.out_degree(v) == 0 {
            t_prime.insert(v);
        } else if d.in_degree(v) == 0 {
            t.insert(v);
        } else {
            leftover.insert(v);
        }
    }
    if leftover.len() > 1 {
        return reject("more than one vertex outside every part".into(), leftover);
    }
    let mut k = b;
    if let Some(v) = leftover.iter().next() {
        k.insert(v);
    }

    let part = |v: usize| {
        if t.contains(v) {
            0
        } else if k.contains(v) {
            1
        } else {
            2
        }
    };
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u) {
            let expected = matches!((part(u), part(v)), (0, 1) | (0, 2) | (1, 1) | (1, 2));
            if expected != d.has_arc(u, v) {
                let what = if expected { "missing" } else { "extra" };
                return reject(format!("{what} arc {u}->{v}"), [u, v].into_iter().collect());
            }
        }
    }

    let params = LambdaParams::new(t.len(), k.len(), t_prime.len());
    let rebuilt = match build_lambda(params) {
        Ok(r) => r,
        Err(e) => return reject(e.to_string(), d.vertices()),
    };
    // the partition order is an explicit isomorphism onto the rebuilt digraph
    let mut perm = vec![0; n];
    for (new, old) in t.iter().chain(k.iter()).chain(t_prime.iter()).enumerate() {
        perm[old] = new;
    }
    if d.permuted(&perm) != rebuilt {
        return reject("rebuilt digraph differs".into(), d.vertices());
    }
    Ok(Recognition { params, t, k, t_prime })
}

// ---------------------------------------------------------------------------
// closed forms

/// Which of the thirteen closed-form cases for the second critical ideal
/// applies, numbered in table order.
pub fn lemma3_case(p: LambdaParams) -> Option<u8> {
    let LambdaParams { n1, n2, n3 } = p;
    let case = match (n1, n2, n3) {
        (1.., 1.., 1..) => 1,
        (1, 1, 0) => 2,
        (1, 0, 1) => 3,
        (0, 1, 1) => 4,
        (2.., 1, 0) => 5,
        (1.., 2.., 0) => 6,
        (0, 2, 0) => 7,
        (0, 3.., 0) => 8,
        (0, 1, 2..) => 9,
        (0, 2.., 1..) => 10,
        (1, 0, 2..) => 11,
        (2.., 0, 1) => 12,
        (2.., 0, 2..) => 13,
        _ => return None,
    };
    Some(case)
}

/// The closed-form generators of `I_2(Lambda(n1,n2,n3))` in variables
/// `x_1..x_n1, y_1..y_n2, z_1..z_n3`, numbered in vertex order.
pub fn lemma3_ideal(p: LambdaParams) -> Result<Vec<Polynomial>, LambdaError> {
    p.validate()?;
    let case = lemma3_case(p).ok_or(LambdaError::TooSmall(p))?;
    let nv = p.total();
    let var = |i: usize| Polynomial::var(nv, i);
    let one = Polynomial::one(nv);
    let xs = || p.t().map(var).collect::<Vec<_>>();
    let ys1 = || p.k().map(|i| &var(i) + &one).collect::<Vec<_>>();
    let zs = || p.t_prime().map(var).collect::<Vec<_>>();
    let (x1, y1, z1) = (p.t().start, p.k().start, p.t_prime().start);
    let gens = match case {
        1 => [xs(), ys1(), zs()].concat(),
        2 => vec![&var(x1) * &var(y1)],
        3 => vec![&var(x1) * &var(z1)],
        4 => vec![&var(y1) * &var(z1)],
        5 => xs(),
        6 => [xs(), ys1()].concat(),
        7 => vec![&(&var(y1) * &var(y1 + 1)) - &one],
        8 => {
            let ys = ys1();
            let mut out = Vec::new();
            for i in 0..ys.len() {
                for j in i + 1..ys.len() {
                    out.push(&ys[i] * &ys[j]);
                }
            }
            out
        }
        9 => zs(),
        10 => [ys1(), zs()].concat(),
        11 => zs(),
        12 => xs(),
        13 => [xs(), zs()].concat(),
        _ => unreachable!("thirteen cases"),
    };
    Ok(gens)
}

// ---------------------------------------------------------------------------
// invariant-factor predicates

/// Parameter list for a critical group with exactly one unit invariant factor.
pub fn corollary7_predicate(p: LambdaParams) -> bool {
    let LambdaParams { n1, n2, n3 } = p;
    (n1 >= 1 && n2 >= 1 && n3 >= 1)
        || (n1 == 1 && n2 == 1 && n3 == 0)
        || (n1 == 1 && n3 == 1 && n2 == 0)
        || (n2 == 1 && n3 == 1 && n1 == 0)
        || n2 >= 2
        || (n1 == 0 && n2 == 1 && n3 >= 2)
        || (n1 == 1 && n2 == 0 && n3 >= 2)
        || (n1 >= 2 && n2 == 0 && n3 >= 2)
}

/// Parameter list for a Smith group with exactly one unit invariant factor.
pub fn corollary9_predicate(p: LambdaParams) -> bool {
    let LambdaParams { n1, n2, n3 } = p;
    (n1 == 1 && n2 == 1 && n3 == 0)
        || (n1 == 1 && n3 == 1 && n2 == 0)
        || (n2 == 1 && n3 == 1 && n1 == 0)
        || (n1 >= 2 && n2 == 1 && n3 == 0)
        || (n1 == 0 && n2 == 1 && n3 >= 2)
        || (n1 == 1 && n2 == 0 && n3 >= 2)
        || (n1 >= 2 && n2 == 0 && n3 == 1)
        || (n1 >= 2 && n2 == 0 && n3 >= 2)
}

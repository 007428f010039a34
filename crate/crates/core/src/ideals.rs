//! Strong Gröbner bases over the integers.
//!
//! Over a Euclidean coefficient ring a generating set is a *strong* Gröbner
//! basis when every leading term of an ideal element is divisible, monomial
//! and coefficient alike, by the leading term of some basis element. Ideal
//! membership is then decided by strong reduction to zero, which is what
//! [`is_trivial`] and [`ideals_equal`] rely on.
//!
//! The completion follows Buchberger with two polynomials per critical pair:
//! the S-polynomial (cancelling the lcm of the leading terms) and the
//! G-polynomial (realising the gcd of the leading coefficients via Bézout).

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::zpoly::{
    canonicalize, scale_terms, sub_scaled, Coeff, Monomial, MonomialOrder, PolyError, Polynomial,
    Term,
};

/// Default bound on reduction steps per basis computation.
pub const DEFAULT_STEP_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("step cap of {cap} reduction steps exceeded with a partial basis of {basis_len} elements")]
    StepCapExceeded { cap: u64, basis_len: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerOptions {
    pub order: MonomialOrder,
    pub step_cap: u64,
}

impl Default for GroebnerOptions {
    fn default() -> Self {
        GroebnerOptions {
            order: MonomialOrder::DegRevLex,
            step_cap: DEFAULT_STEP_CAP,
        }
    }
}

impl GroebnerOptions {
    pub fn with_order(order: MonomialOrder) -> Self {
        GroebnerOptions {
            order,
            ..Default::default()
        }
    }
}

/// A reduced-by-leading-term strong Gröbner basis.
///
/// Elements are sorted ascending by leading monomial, have positive leading
/// coefficients and no element's leading term divides another's. The unit
/// ideal is always represented by the single element `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    elements: Vec<Vec<Term>>,
    steps: u64,
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Reduction steps spent computing the basis.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Whether the basis generates the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        matches!(self.elements.as_slice(), [e] if is_unit_terms(e))
    }

    pub fn elements(&self) -> Vec<Polynomial> {
        self.elements
            .iter()
            .map(|e| Polynomial::from_terms(self.nvars, e.iter().cloned()))
            .collect()
    }

    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial, IdealError> {
        reduce(p, self)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, IdealError> {
        Ok(reduce(p, self)?.is_zero())
    }
}

fn is_unit_terms(t: &[Term]) -> bool {
    matches!(t, [(m, c)] if m.is_one() && c.abs().is_one())
}

fn check_ambient(nvars: usize, gens: &[Polynomial]) -> Result<(), IdealError> {
    match gens.iter().find(|g| g.nvars() != nvars) {
        Some(g) => Err(PolyError::AmbientMismatch(nvars, g.nvars()).into()),
        None => Ok(()),
    }
}

/// Remainder of `p` modulo `basis`.
///
/// A term `c*m` is rewritten by the first basis element whose leading
/// monomial divides `m`: if the leading coefficient divides `c` the term is
/// cancelled, otherwise `c` is replaced by its balanced remainder when that
/// is strictly smaller in absolute value. Terms no element can touch move to
/// the remainder.
pub fn reduce(p: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial, IdealError> {
    if p.nvars() != basis.nvars {
        return Err(PolyError::AmbientMismatch(basis.nvars, p.nvars()).into());
    }
    let refs: Vec<&[Term]> = basis.elements.iter().map(Vec::as_slice).collect();
    let mut steps = 0;
    let rem = reduce_terms(p.terms_in_order(basis.order), &refs, basis.order, &mut steps, u64::MAX)
        .expect("an unbounded reduction cannot hit the cap");
    Ok(Polynomial::from_terms(basis.nvars, rem))
}

/// Balanced remainder of `c` modulo `d > 0` and the matching quotient.
fn balanced_div_rem(c: &Coeff, d: &Coeff) -> (Coeff, Coeff) {
    let (mut q, mut r) = c.div_mod_floor(d);
    if &r + &r > *d {
        r -= d;
        q += 1;
    }
    (q, r)
}

#[derive(Debug)]
struct StepLimit;

fn reduce_terms(
    mut p: Vec<Term>,
    basis: &[&[Term]],
    order: MonomialOrder,
    steps: &mut u64,
    cap: u64,
) -> Result<Vec<Term>, StepLimit> {
    let mut rem: Vec<Term> = Vec::new();
    'outer: while !p.is_empty() {
        let (m, c) = p[0].clone();
        for g in basis {
            let (gm, gc) = &g[0];
            let Some(factor) = m.checked_div(gm) else {
                continue;
            };
            let (q, r) = if c.is_multiple_of(gc) {
                (c.div_floor(gc), Coeff::zero())
            } else {
                balanced_div_rem(&c, gc)
            };
            if q.is_zero() || (!r.is_zero() && r.abs() >= c.abs()) {
                continue;
            }
            *steps += 1;
            if *steps > cap {
                return Err(StepLimit);
            }
            p = sub_scaled(&p, &q, &factor, g, order);
            continue 'outer;
        }
        rem.push(p.remove(0));
    }
    Ok(rem)
}

fn normalize_sign(mut t: Vec<Term>) -> Vec<Term> {
    if t.first().is_some_and(|(_, c)| c.is_negative()) {
        for (_, c) in &mut t {
            *c = -&*c;
        }
    }
    t
}

struct Pair {
    i: usize,
    j: usize,
    lcm_degree: u32,
}

struct Completion {
    order: MonomialOrder,
    cap: u64,
    steps: u64,
    basis: Vec<Vec<Term>>,
    pairs: Vec<Pair>,
    unit: bool,
}

impl Completion {
    fn reduce(&mut self, p: Vec<Term>) -> Result<Vec<Term>, IdealError> {
        let refs: Vec<&[Term]> = self.basis.iter().map(Vec::as_slice).collect();
        reduce_terms(p, &refs, self.order, &mut self.steps, self.cap).map_err(|_| {
            IdealError::StepCapExceeded {
                cap: self.cap,
                basis_len: self.basis.len(),
            }
        })
    }

    fn insert(&mut self, h: Vec<Term>) {
        let h = normalize_sign(h);
        if is_unit_terms(&h) {
            self.unit = true;
            return;
        }
        let k = self.basis.len();
        for (i, g) in self.basis.iter().enumerate() {
            self.pairs.push(Pair {
                i,
                j: k,
                lcm_degree: g[0].0.lcm(&h[0].0).degree(),
            });
        }
        self.basis.push(h);
    }

    fn reduce_and_insert(&mut self, p: Vec<Term>) -> Result<(), IdealError> {
        if p.is_empty() {
            return Ok(());
        }
        let r = self.reduce(p)?;
        if !r.is_empty() {
            self.insert(r);
        }
        Ok(())
    }

    /// Normal strategy: smallest lcm degree, then smallest index pair.
    fn next_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.lcm_degree, p.i, p.j))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn process(&mut self, pair: &Pair) -> Result<(), IdealError> {
        let f = &self.basis[pair.i];
        let g = &self.basis[pair.j];
        let (fm, fc) = &f[0];
        let (gm, gc) = &g[0];
        let lcm = fm.lcm(gm);
        let f_shift = lcm.checked_div(fm).expect("lcm is a multiple");
        let g_shift = lcm.checked_div(gm).expect("lcm is a multiple");

        let gpoly = if fc.is_multiple_of(gc) || gc.is_multiple_of(fc) {
            None
        } else {
            let e = fc.extended_gcd(gc);
            let mut terms = scale_terms(f, &e.x, &f_shift);
            terms.extend(scale_terms(g, &e.y, &g_shift));
            Some(canonicalize(terms, self.order))
        };

        // coprime leading monomials with coprime leading coefficients give an
        // S-polynomial with a standard representation
        let skip_s = fm.is_coprime(gm) && fc.gcd(gc).is_one();
        let spoly = if skip_s {
            None
        } else {
            let l = fc.lcm(gc);
            let a = scale_terms(f, &(&l / fc), &f_shift);
            Some(sub_scaled(&a, &(&l / gc), &g_shift, g, self.order))
        };

        if let Some(gp) = gpoly {
            self.reduce_and_insert(gp)?;
        }
        if let Some(sp) = spoly {
            if !self.unit {
                self.reduce_and_insert(sp)?;
            }
        }
        log::trace!(
            "pair ({}, {}) done: lcm degree {}, basis {}, pending {}, steps {}",
            pair.i,
            pair.j,
            pair.lcm_degree,
            self.basis.len(),
            self.pairs.len(),
            self.steps
        );
        Ok(())
    }

    /// Drops elements whose leading term is divisible by another's, then
    /// reduces the remaining tails.
    fn finish(mut self, nvars: usize) -> Result<GroebnerBasis, IdealError> {
        let order = self.order;
        if self.unit {
            return Ok(GroebnerBasis {
                nvars,
                order,
                elements: vec![vec![(Monomial::one(), Coeff::one())]],
                steps: self.steps,
            });
        }
        let lt_divides = |a: &Term, b: &Term| a.0.divides(&b.0) && b.1.is_multiple_of(&a.1);
        let basis = std::mem::take(&mut self.basis);
        let mut keep: Vec<Vec<Term>> = Vec::new();
        for (k, e) in basis.iter().enumerate() {
            let redundant = basis.iter().enumerate().any(|(l, other)| {
                l != k && lt_divides(&other[0], &e[0]) && (!lt_divides(&e[0], &other[0]) || l < k)
            });
            if !redundant {
                keep.push(e.clone());
            }
        }
        for k in 0..keep.len() {
            let head = keep[k][0].clone();
            let tail = keep[k][1..].to_vec();
            let others: Vec<&[Term]> = keep
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != k)
                .map(|(_, e)| e.as_slice())
                .collect();
            let tail = reduce_terms(tail, &others, order, &mut self.steps, self.cap).map_err(|_| {
                IdealError::StepCapExceeded {
                    cap: self.cap,
                    basis_len: keep.len(),
                }
            })?;
            let mut e = vec![head];
            e.extend(tail);
            keep[k] = e;
        }
        keep.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0).then_with(|| a[0].1.cmp(&b[0].1)));
        Ok(GroebnerBasis {
            nvars,
            order,
            elements: keep,
            steps: self.steps,
        })
    }
}

/// Strong Gröbner basis of the ideal generated by `gens` under degrevlex.
pub fn strong_groebner(nvars: usize, gens: &[Polynomial]) -> Result<GroebnerBasis, IdealError> {
    strong_groebner_with(nvars, gens, &GroebnerOptions::default())
}

pub fn strong_groebner_with(
    nvars: usize,
    gens: &[Polynomial],
    opts: &GroebnerOptions,
) -> Result<GroebnerBasis, IdealError> {
    check_ambient(nvars, gens)?;
    let mut run = Completion {
        order: opts.order,
        cap: opts.step_cap,
        steps: 0,
        basis: Vec::new(),
        pairs: Vec::new(),
        unit: false,
    };
    let mut inputs: Vec<Vec<Term>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| normalize_sign(g.terms_in_order(opts.order)))
        .collect();
    inputs.sort_by(|a, b| {
        opts.order
            .cmp(&a[0].0, &b[0].0)
            .then_with(|| a.len().cmp(&b.len()))
            .then_with(|| a[0].1.cmp(&b[0].1))
    });
    inputs.dedup();
    for g in inputs {
        run.reduce_and_insert(g)?;
        if run.unit {
            return run.finish(nvars);
        }
    }
    while let Some(pair) = run.next_pair() {
        run.process(&pair)?;
        if run.unit {
            break;
        }
    }
    run.finish(nvars)
}

/// Whether `1` lies in the ideal generated by `gens` (an empty list generates
/// the zero ideal).
pub fn is_trivial(nvars: usize, gens: &[Polynomial]) -> Result<bool, IdealError> {
    is_trivial_with(nvars, gens, &GroebnerOptions::default())
}

pub fn is_trivial_with(
    nvars: usize,
    gens: &[Polynomial],
    opts: &GroebnerOptions,
) -> Result<bool, IdealError> {
    check_ambient(nvars, gens)?;
    if gens.iter().any(Polynomial::is_unit) {
        return Ok(true);
    }
    if gens.iter().all(Polynomial::is_zero) {
        return Ok(false);
    }
    let gb = strong_groebner_with(nvars, gens, opts)?;
    gb.contains(&Polynomial::one(nvars))
}

/// Mutual containment of the ideals generated by `a` and `b`.
pub fn ideals_equal(nvars: usize, a: &[Polynomial], b: &[Polynomial]) -> Result<bool, IdealError> {
    ideals_equal_with(nvars, a, b, &GroebnerOptions::default())
}

pub fn ideals_equal_with(
    nvars: usize,
    a: &[Polynomial],
    b: &[Polynomial],
    opts: &GroebnerOptions,
) -> Result<bool, IdealError> {
    Ok(first_non_member(nvars, a, b, opts)?.is_none() && first_non_member(nvars, b, a, opts)?.is_none())
}

/// The first element of `gens` outside the ideal generated by `ideal`.
pub fn first_non_member(
    nvars: usize,
    gens: &[Polynomial],
    ideal: &[Polynomial],
    opts: &GroebnerOptions,
) -> Result<Option<Polynomial>, IdealError> {
    check_ambient(nvars, gens)?;
    let gb = strong_groebner_with(nvars, ideal, opts)?;
    for g in gens {
        if !gb.contains(g)? {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// A common zero of a generator set over a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub prime: u64,
    pub point: Vec<u64>,
}

const WITNESS_PRIMES: [u64; 3] = [2, 3, 5];
const WITNESS_COORDS: [i64; 4] = [-1, 0, 1, 2];
const WITNESS_MAX_POINTS: usize = 1 << 16;

/// Searches for a point over `Z/p`, `p in {2, 3, 5}`, with coordinates drawn
/// from the residues of `{-1, 0, 1, 2}`, at which every generator vanishes.
/// Such a point proves the ideal is proper; not finding one proves nothing.
pub fn find_witness(nvars: usize, gens: &[Polynomial]) -> Option<Witness> {
    for p in WITNESS_PRIMES {
        let mut residues: Vec<u64> = WITNESS_COORDS
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect();
        residues.sort_unstable();
        residues.dedup();
        let count = residues.len().checked_pow(nvars as u32);
        if count.is_none_or(|c| c > WITNESS_MAX_POINTS) {
            continue;
        }
        let mut idx = vec![0usize; nvars];
        loop {
            let point: Vec<u64> = idx.iter().map(|&k| residues[k]).collect();
            if gens.iter().all(|g| g.evaluate_mod(&point, p) == 0) {
                return Some(Witness { prime: p, point });
            }
            let mut k = 0;
            loop {
                if k == nvars {
                    break;
                }
                idx[k] += 1;
                if idx[k] < residues.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == nvars {
                break;
            }
        }
    }
    None
}

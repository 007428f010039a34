use critical_ideals::abelian::{self, IntMatrix};
use critical_ideals::critical::{self, CriticalIdealReport};
use critical_ideals::digraph::{self, Digraph, VertexSet};
use critical_ideals::ideals::{self, GroebnerOptions};
use critical_ideals::zpoly::{Monomial, MonomialOrder, Polynomial, SymMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

const NV: usize = 3;

fn poly(nvars: usize, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -4i64..=4), 0..=max_terms).prop_map(move |ts| {
        Polynomial::from_terms(
            nvars,
            ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), BigInt::from(c))),
        )
    })
}

fn digraph_on(n: usize) -> impl Strategy<Value = Digraph> {
    prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
        let arcs = (0..n * n).filter(|&k| bits[k] && k / n != k % n).map(|k| (k / n, k % n));
        Digraph::from_arcs(n, arcs).unwrap()
    })
}

fn any_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(digraph_on)
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn int_matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
    })
}

/// Random inputs occasionally blow up; those cases are discarded.
fn capped(order: MonomialOrder) -> GroebnerOptions {
    GroebnerOptions {
        order,
        step_cap: 200_000,
    }
}

/// Cofactor expansion along the first column.
fn cofactor_det(m: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(nvars);
    }
    let mut acc = Polynomial::zero(nvars);
    for r in 0..n {
        if m[r][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = (0..n)
            .filter(|&i| i != r)
            .map(|i| m[i][1..].to_vec())
            .collect();
        let term = &m[r][0] * &cofactor_det(&minor, nvars);
        acc = if r % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn sym(rows: &[Vec<Polynomial>], nvars: usize) -> SymMatrix {
    let m = SymMatrix::new(rows.len(), rows.len(), rows.concat()).unwrap();
    assert_eq!(m.nvars(), nvars);
    m
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        rng_seed: RngSeed::Fixed(0x5eed),
        ..ProptestConfig::default()
    })]

    #[test]
    fn ring_laws(a in poly(NV, 4), b in poly(NV, 4), c in poly(NV, 4)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(NV), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(NV, 4), b in poly(NV, 4), pt in prop::collection::vec(-3i64..=3, NV)) {
        let pt: Vec<BigInt> = pt.into_iter().map(BigInt::from).collect();
        let (ea, eb) = (a.evaluate(&pt).unwrap(), b.evaluate(&pt).unwrap());
        prop_assert_eq!((&a + &b).evaluate(&pt).unwrap(), &ea + &eb);
        prop_assert_eq!((&a * &b).evaluate(&pt).unwrap(), &ea * &eb);
    }

    #[test]
    fn display_parses_back(a in poly(NV, 5)) {
        prop_assert_eq!(Polynomial::parse(NV, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn determinant_matches_cofactor_expansion(
        n in 1usize..=4,
        entries in prop::collection::vec(poly(2, 2), 16),
    ) {
        let rows: Vec<Vec<Polynomial>> = (0..n).map(|r| entries[r * n..(r + 1) * n].to_vec()).collect();
        let m = sym(&rows, 2);
        prop_assert_eq!(m.determinant().unwrap(), cofactor_det(&rows, 2));
    }

    #[test]
    fn determinant_alternates(n in 2usize..=4, entries in prop::collection::vec(poly(2, 2), 16), i in 0usize..4, j in 0usize..4) {
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let rows: Vec<Vec<Polynomial>> = (0..n).map(|r| entries[r * n..(r + 1) * n].to_vec()).collect();
        let mut swapped = rows.clone();
        swapped.swap(i, j);
        prop_assert_eq!(sym(&swapped, 2).determinant().unwrap(), -&sym(&rows, 2).determinant().unwrap());
        let mut repeated = rows.clone();
        repeated[j] = repeated[i].clone();
        prop_assert!(sym(&repeated, 2).determinant().unwrap().is_zero());
    }

    #[test]
    fn generators_reduce_to_zero(gens in prop::collection::vec(poly(NV, 3), 1..=3)) {
        let gb = ideals::strong_groebner_with(NV, &gens, &capped(MonomialOrder::DegRevLex));
        prop_assume!(gb.is_ok());
        let gb = gb.unwrap();
        for g in &gens {
            prop_assert!(gb.reduce(g).unwrap().is_zero(), "{} does not reduce to zero", g);
        }
    }

    #[test]
    fn products_are_members(gens in prop::collection::vec(poly(NV, 3), 1..=3), h in poly(NV, 3), k in 0usize..3) {
        let g = &gens[k % gens.len()];
        let gb = ideals::strong_groebner_with(NV, &gens, &capped(MonomialOrder::DegRevLex));
        prop_assume!(gb.is_ok());
        let gb = gb.unwrap();
        prop_assert!(gb.contains(&(g * &h)).unwrap());
    }

    #[test]
    fn principal_membership_is_divisibility(f in poly(NV, 3), g in poly(NV, 3), c in 1i64..=12, m in 1i64..=12) {
        prop_assume!(!g.is_zero());
        let gb = ideals::strong_groebner(NV, std::slice::from_ref(&g)).unwrap();
        prop_assert!(gb.contains(&(&f * &g)).unwrap());
        let cg = ideals::strong_groebner(NV, &[Polynomial::constant(NV, m)]).unwrap();
        prop_assert_eq!(cg.contains(&Polynomial::constant(NV, c)).unwrap(), c % m == 0);
        // m*g + c in <g> iff g divides the constant c
        let shifted = &g.scale(&BigInt::from(m)) + &Polynomial::constant(NV, c);
        let expect = match g.as_constant() {
            Some(k) => BigInt::from(c).is_multiple_of(&k),
            None => false,
        };
        prop_assert_eq!(gb.contains(&shifted).unwrap(), expect);
    }

    #[test]
    fn triviality_ignores_order_and_permutation(gens in prop::collection::vec(poly(NV, 3), 1..=3), seed in any::<u64>()) {
        let grevlex = capped(MonomialOrder::DegRevLex);
        let base = ideals::is_trivial_with(NV, &gens, &grevlex);
        prop_assume!(base.is_ok());
        let base = base.unwrap();
        let mut shuffled = gens.clone();
        let len = shuffled.len();
        shuffled.rotate_left((seed as usize) % len);
        let rotated = ideals::is_trivial_with(NV, &shuffled, &grevlex);
        let lex = ideals::is_trivial_with(NV, &gens, &capped(MonomialOrder::Lex));
        prop_assume!(rotated.is_ok() && lex.is_ok());
        prop_assert_eq!(rotated.unwrap(), base);
        prop_assert_eq!(lex.unwrap(), base);
    }

    #[test]
    fn witnesses_are_genuine_common_zeros(gens in prop::collection::vec(poly(NV, 3), 1..=4)) {
        if let Some(w) = ideals::find_witness(NV, &gens) {
            for g in &gens {
                prop_assert_eq!(g.evaluate_mod(&w.point, w.prime), 0);
            }
            if let Ok(trivial) = ideals::is_trivial_with(NV, &gens, &capped(MonomialOrder::DegRevLex)) {
                prop_assert!(!trivial);
            }
        }
    }

    #[test]
    fn digraph6_round_trips(d in any_digraph(16)) {
        prop_assert_eq!(digraph::parse_digraph6(&d.to_digraph6()).unwrap(), d);
        prop_assert_eq!(digraph::parse_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn canonical_form_is_a_labelling_invariant((d, perm) in (1usize..=6).prop_flat_map(|n| (digraph_on(n), permutation(n)))) {
        let e = d.permuted(&perm);
        prop_assert_eq!(digraph::canonical_form(&d).unwrap(), digraph::canonical_form(&e).unwrap());
        prop_assert_eq!(digraph::canonical_form(&d).unwrap().to_digraph().arc_count(), d.arc_count());
    }

    #[test]
    fn corank_is_a_labelling_invariant((d, perm) in (1usize..=4).prop_flat_map(|n| (digraph_on(n), permutation(n)))) {
        prop_assert_eq!(
            critical::algebraic_corank(&d).unwrap(),
            critical::algebraic_corank(&d.permuted(&perm)).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, rng_seed: RngSeed::Fixed(0x5eed), ..ProptestConfig::default() })]

    #[test]
    fn snf_matches_gcd_of_minors(m in int_matrix(5)) {
        let s = abelian::smith_normal_form(&m);
        prop_assert!(s.is_divisibility_chain());
        let mut product = BigInt::one();
        for i in 1..=m.rows().min(m.cols()) {
            let delta = abelian::gcd_minors(&m, i).unwrap();
            if i <= s.rank {
                product *= &s.factors[i - 1];
                prop_assert_eq!(&product, &delta.abs(), "i = {}", i);
            } else {
                prop_assert!(delta.is_zero());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, rng_seed: RngSeed::Fixed(0x5eed), ..ProptestConfig::default() })]

    #[test]
    fn snf_transforms_are_unimodular(m in int_matrix(4)) {
        let s = abelian::smith_normal_form_with_transforms(&m);
        let (u, v) = (s.u.clone().unwrap(), s.v.clone().unwrap());
        let d = u.mul(&m).unwrap().mul(&v).unwrap();
        let diag = s.diagonal();
        for (r, row) in d.to_rows().iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                let want = if r == c { diag[r].clone() } else { BigInt::zero() };
                prop_assert_eq!(x, &want);
            }
        }
        // determinants through the polynomial engine on constant matrices
        for t in [&u, &v] {
            let rows: Vec<Vec<BigInt>> = t.to_rows();
            let det = SymMatrix::from_constants(1, &rows).unwrap().determinant().unwrap();
            prop_assert_eq!(det.as_constant().map(|c| c.abs()), Some(BigInt::one()));
        }
    }
}

#[test]
fn critical_ideals_are_nested_on_small_classes() {
    for n in 1..=4 {
        for d in digraph::enumerate_connected(n).unwrap() {
            let r = CriticalIdealReport::compute(&d).unwrap();
            assert!(r.is_prefix_closed(), "{}: {:?}", r.digraph6, r.verdicts);
        }
    }
}

#[test]
fn corank_is_monotone_under_induced_subdigraphs() {
    let cache = critical::GammaCache::new();
    for n in 2..=4 {
        for d in digraph::enumerate_connected(n).unwrap() {
            let g = cache.gamma(&d).unwrap();
            for k in 1..n {
                for set in VertexSet::subsets_of_size(n, k) {
                    let sub = d.induced(set).unwrap();
                    assert!(cache.gamma(&sub).unwrap() <= g, "{} on {}", d, set);
                }
            }
        }
    }
}

#[test]
fn digraph6_round_trips_on_every_small_class() {
    for n in 1..=5 {
        for d in digraph::enumerate_connected(n).unwrap() {
            assert_eq!(digraph::parse_digraph6(&d.to_digraph6()).unwrap(), d);
        }
    }
}

#[test]
fn enumeration_counts_connected_classes() {
    let counts: Vec<usize> = (1..=5).map(|n| digraph::enumerate_connected(n).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 2, 13, 199, 9364]);
}

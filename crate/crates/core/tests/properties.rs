use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zp_index::alphabet::{Alphabet, Distance, Element};
use zp_index::complex::EquivariantComplex;
use zp_index::homology::{betti, betti_of, boundary_matrices, PrimeField};
use zp_index::index::{coindex_join_lower, Bound, IndexReport};
use zp_index::sequence_maps::{
    eta_apply, eta_input_window, pair_embed, pair_embed_cyclic, pair_project_cyclic, random_valid_window,
    theta_apply, AnchorSeq, IndexRange, Window,
};
use zp_index::symbolic::{CyclicWord, SubshiftSpec};

fn alphabets() -> impl Strategy<Value = Alphabet> {
    prop_oneof![
        (2u32..7).prop_map(Alphabet::Cyclic),
        (1u32..5).prop_map(|k| Alphabet::CircleGrid(4 * k)),
        (1u32..3).prop_map(|k| Alphabet::circle_power(4 * k, 2).unwrap()),
    ]
}

fn with_letters(n: usize) -> impl Strategy<Value = (Alphabet, Vec<u64>)> {
    alphabets().prop_flat_map(move |a| {
        let order = a.order();
        (Just(a), prop::collection::vec(0..order, n))
    })
}

fn scalar_word(q: u32, len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..q, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn metric_is_an_invariant_metric((a, idx) in with_letters(3)) {
        let [x, y, z] = [a.element_at(idx[0]), a.element_at(idx[1]), a.element_at(idx[2])];
        let d = |u: &Element, v: &Element| a.metric(u, v).unwrap();
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert_eq!(d(&x, &y) == Distance::from_integer(0), x == y);
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
        prop_assert!(d(&x, &y) <= a.diameter());
        let (xz, yz) = (a.add(&x, &z).unwrap(), a.add(&y, &z).unwrap());
        prop_assert_eq!(d(&xz, &yz), d(&x, &y));
    }

    #[test]
    fn sigma_predicate_is_shift_invariant(letters in scalar_word(3, 2..9), m in 1u32..4, k in -10i64..10) {
        let spec = SubshiftSpec::sigma(m).unwrap();
        let w = CyclicWord::from_scalars(&letters).unwrap();
        prop_assert_eq!(spec.satisfies(&w).unwrap(), spec.satisfies(&w.shift(k)).unwrap());
    }

    #[test]
    fn zcal_predicate_is_shift_invariant(letters in scalar_word(8, 2..9), k in -10i64..10) {
        let spec = SubshiftSpec::zcal(8).unwrap();
        let w = CyclicWord::from_scalars(&letters).unwrap();
        prop_assert_eq!(spec.satisfies(&w).unwrap(), spec.satisfies(&w.shift(k)).unwrap());
    }

    #[test]
    fn theta_commutes_with_shift(letters in scalar_word(12, 20..40), m in 2u32..4, offset in -20i64..20, k in -15i64..15) {
        let w = Window::from_scalars(Alphabet::CircleGrid(12), offset, &letters).unwrap();
        prop_assert_eq!(theta_apply(m, &w.shift(k)).unwrap(), theta_apply(m, &w).unwrap().shift(k));
    }

    #[test]
    fn theta_undoes_eta(seed in any::<u64>(), anchor in any::<u64>(), m in 2u32..4, lo in -30i64..30, len in 1i64..25, circle in any::<bool>()) {
        let a = if circle { Alphabet::CircleGrid(12) } else { Alphabet::Cyclic(3) };
        let delta = if circle { Distance::new(1, 2) } else { Distance::from_integer(1) };
        let wanted = IndexRange::new(lo, lo + len - 1).unwrap();
        let span = (m as i64 - 1) * (1..m as i64).product::<i64>();
        let y_range = IndexRange::new(wanted.lo, wanted.hi + span).unwrap();
        let need = match eta_input_window(m, y_range).unwrap() {
            Some(r) => r.union(&wanted),
            None => wanted,
        };
        let gap = (1..m as u64).product::<u64>();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_valid_window(&a, gap, delta, need, &mut rng).unwrap();
        let y = eta_apply(m, &AnchorSeq::Seeded(anchor), &x, y_range).unwrap();
        prop_assert!(y.satisfies_gap(gap * m as u64, delta));
        prop_assert_eq!(theta_apply(m, &y).unwrap(), x.restrict(wanted).unwrap());
    }

    #[test]
    fn pair_code_is_injective_and_invertible(u in scalar_word(8, 3..7), v in scalar_word(8, 3..7)) {
        let (wu, wv) = (CyclicWord::from_scalars(&u).unwrap(), CyclicWord::from_scalars(&v).unwrap());
        let (pu, pv) = (pair_embed_cyclic(&wu), pair_embed_cyclic(&wv));
        prop_assert_eq!(pu == pv, wu == wv);
        prop_assert_eq!(pair_project_cyclic(&pu, 1), wu.clone());
        prop_assert_eq!(pair_embed_cyclic(&wu.shift(1)), pu.shift(1));
    }

    #[test]
    fn pair_code_sends_zcal_into_the_half_gap_space(u in scalar_word(8, 2..8)) {
        let w = CyclicWord::from_scalars(&u).unwrap();
        let z = SubshiftSpec::zcal(8).unwrap();
        let target = SubshiftSpec::xsn(8, 2, Distance::new(1, 2)).unwrap();
        if z.satisfies(&w).unwrap() {
            prop_assert!(target.satisfies(&pair_embed_cyclic(&w)).unwrap());
        }
        let win = Window::from_scalars(Alphabet::CircleGrid(8), 0, &u).unwrap();
        prop_assert_eq!(pair_embed(&win).unwrap().len(), u.len() - 1);
    }

    #[test]
    fn reports_built_from_ordered_bounds_are_consistent(lo in -1i64..6, gap in 0i64..6, extra in 0i64..4) {
        let mut r = IndexReport::unknown(5, "X");
        r.raise_coind_lower(lo, "a");
        r.lower_ind_upper(lo + gap, "b");
        r.raise_coind_lower(lo - extra, "weaker");
        prop_assert!(r.is_consistent());
        prop_assert_eq!(r.coind_lower, lo);
        prop_assert!(r.ind_lower >= r.coind_lower);
        prop_assert_eq!(r.value(), if gap == 0 { Some(lo) } else { None });
        prop_assert_eq!(r.ind_upper, Bound::Finite(lo + gap));
    }

    #[test]
    fn join_lower_bound_is_symmetric(a in -1i64..8, b in -1i64..8) {
        let mut r1 = IndexReport::unknown(3, "A");
        let mut r2 = IndexReport::unknown(3, "B");
        r1.raise_coind_lower(a, "a");
        r2.raise_coind_lower(b, "b");
        let ab = coindex_join_lower(&r1, &r2).unwrap();
        prop_assert_eq!(ab, coindex_join_lower(&r2, &r1).unwrap());
        prop_assert_eq!(ab, a + b + 1);
    }

    #[test]
    fn boundary_squares_to_zero_on_random_free_complexes(
        n in 2u32..6,
        simplices in prop::collection::vec(prop::collection::vec(0u32..12, 1..5), 1..6),
    ) {
        // vertices 0..2n, involution v -> v+n; keep simplices avoiding antipodal pairs
        let nv = 2 * n;
        let action: Vec<u32> = (0..nv).map(|v| (v + n) % nv).collect();
        let mut maximal = Vec::new();
        for s in &simplices {
            let mut s: Vec<u32> = s.iter().map(|v| v % nv).collect();
            s.sort_unstable();
            s.dedup();
            if s.iter().any(|&v| s.contains(&((v + n) % nv))) {
                continue;
            }
            maximal.push(s.iter().map(|&v| action[v as usize]).collect::<Vec<u32>>());
            maximal.push(s);
        }
        let labels = (0..nv).map(|v| v.to_string()).collect();
        let c = EquivariantComplex::from_maximal_simplices(2, labels, action, &maximal).unwrap();
        prop_assert!(c.verify_free_action().free);
        for l in [2u64, 3, 5] {
            let f = PrimeField::new(l).unwrap();
            let cc = boundary_matrices(&c, f);
            prop_assert!(cc.verify_boundary_squared_zero());
            prop_assert!(betti(&cc).euler_consistent());
        }
        let euler = |b: Vec<u64>| b.iter().enumerate().map(|(d, &x)| if d % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>();
        let cells: i64 = c.cell_counts().iter().enumerate().map(|(d, &x)| if d % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        prop_assert_eq!(euler(betti_of(&c, 2).unwrap().unreduced()), cells);
        prop_assert_eq!(euler(betti_of(&c, 3).unwrap().unreduced()), cells);
    }
}

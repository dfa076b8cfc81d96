//! Property-based invariants: ring laws, transform linearity, comparator
//! homogeneity, serialization round-trips, and greedy-vs-exhaustion
//! agreement on randomly generated valid lattices.

use proptest::prelude::*;

use num_bigint::BigInt;

use ellstab_core::cohomology::{ChernCharacter, CohClass};
use ellstab_core::geometry::Geometry;
use ellstab_core::gieseker::{destabilizes_2d, destabilizes_3d, lex_vector_3d};
use ellstab_core::hn::{validate_lattice, FixtureElement, FlexId, LatticeFixture};
use ellstab_core::poly::{FormalParam, RationalPoly};
use ellstab_core::rational::Rat;
use ellstab_core::slope::{mu_f, mu_lower_star, mu_upper_star};
use ellstab_core::transform::fm_transform;

fn geometry_strategy() -> impl Strategy<Value = Geometry> {
    prop_oneof![
        (1u32..=4).prop_map(Geometry::threefold),
        (0u32..=2).prop_map(Geometry::surface),
    ]
}

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=8).prop_map(|(n, d)| Rat::new(n, d))
}

fn coh_strategy() -> impl Strategy<Value = (CohClass, CohClass, CohClass)> {
    geometry_strategy().prop_flat_map(|g| {
        let (rows, cols) = g.shape();
        let n = rows * cols;
        (
            prop::collection::vec(rat_strategy(), n),
            prop::collection::vec(rat_strategy(), n),
            prop::collection::vec(rat_strategy(), n),
        )
            .prop_map(move |(a, b, c)| {
                let build = |v: Vec<Rat>| {
                    let mut out = CohClass::zero(g);
                    for i in 0..rows {
                        for j in 0..cols {
                            out.set(i, j, v[i * cols + j].clone());
                        }
                    }
                    out
                };
                (build(a), build(b), build(c))
            })
    })
}

fn chern_strategy() -> impl Strategy<Value = ChernCharacter> {
    geometry_strategy().prop_flat_map(|g| {
        let (rows, cols) = g.shape();
        prop::collection::vec(any::<i64>(), rows * cols).prop_map(move |v| {
            let mut ch = ChernCharacter::zero(g);
            for i in 0..rows {
                for j in 0..cols {
                    ch.set_entry(i, j, BigInt::from(v[i * cols + j]));
                }
            }
            ch
        })
    })
}

proptest! {
    #[test]
    fn cup_is_commutative_associative_unital((u, v, w) in coh_strategy()) {
        let uv = u.cup(&v).unwrap();
        prop_assert_eq!(&uv, &v.cup(&u).unwrap());
        let assoc_l = uv.cup(&w).unwrap();
        let assoc_r = u.cup(&v.cup(&w).unwrap()).unwrap();
        prop_assert_eq!(assoc_l, assoc_r);
        let unit = CohClass::unit(u.geometry());
        prop_assert_eq!(&unit.cup(&u).unwrap(), &u);
        // bilinear over +
        let sum = &u + &v;
        let lhs = sum.cup(&w).unwrap();
        let rhs = &u.cup(&w).unwrap() + &v.cup(&w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fm_is_linear_and_squares_to_minus_id(ch in chern_strategy(), other in chern_strategy()) {
        prop_assert_eq!(fm_transform(&fm_transform(&ch)), ch.neg());
        if ch.geometry() == other.geometry() {
            let sum = ch.add(&other).unwrap();
            prop_assert_eq!(
                fm_transform(&sum),
                fm_transform(&ch).add(&fm_transform(&other)).unwrap()
            );
        }
        // the fiber degree becomes the rank
        let image = fm_transform(&ch);
        prop_assert_eq!(image.rank(), ch.entry(1, 0));
    }

    #[test]
    fn chern_json_round_trips(ch in chern_strategy()) {
        let js = serde_json::to_string(&ch).unwrap();
        let back: ChernCharacter = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(back, ch);
    }

    #[test]
    fn rat_text_and_json_round_trip(n in any::<i64>(), d in 1i64..=1_000_000) {
        let r = Rat::new(n, d);
        let parsed: Rat = r.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, &r);
        let js = serde_json::to_string(&r).unwrap();
        let back: Rat = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn slopes_are_scale_invariant(ch in chern_strategy(), k in 1i64..=50) {
        let scaled = ch.scale_int(k);
        prop_assert_eq!(mu_f(&ch), mu_f(&scaled));
        prop_assert_eq!(mu_upper_star(&ch), mu_upper_star(&scaled));
        prop_assert_eq!(mu_lower_star(&ch), mu_lower_star(&scaled));
    }

    #[test]
    fn poly_comparison_matches_evaluation_beyond_the_bound(
        a in prop::collection::vec(-9i64..=9, 0..5),
        b in prop::collection::vec(-9i64..=9, 0..5),
        extra in 0i64..=40,
    ) {
        let p = RationalPoly::from_coeffs(FormalParam::N, a.into_iter().map(Rat::from_int).collect());
        let q = RationalPoly::from_coeffs(FormalParam::N, b.into_iter().map(Rat::from_int).collect());
        let ord = ellstab_core::poly::poly_compare_large_param(&p, &q).unwrap();
        let diff = &p - &q;
        let x = diff.sign_threshold() + Rat::from_int(extra);
        let val = diff.eval(&x);
        match ord {
            std::cmp::Ordering::Greater => prop_assert!(val.is_positive()),
            std::cmp::Ordering::Less => prop_assert!(val.is_negative()),
            std::cmp::Ordering::Equal => prop_assert!(val.is_zero()),
        }
    }

    #[test]
    fn comparator_verdicts_are_homogeneous(
        entries in prop::collection::vec(-3i64..=3, 10),
        k in 1i64..=7,
    ) {
        let g = Geometry::threefold(1);
        let mk = |v: &[i64]| {
            ChernCharacter::from_i64_rows(g, &[&[0, v[0].abs(), v[1]], &[v[2].abs(), v[3], v[4]]])
                .unwrap()
        };
        let sub = mk(&entries[0..5]);
        let amb = mk(&entries[5..10]);
        if let Ok(v) = destabilizes_2d(&sub, &amb) {
            prop_assert_eq!(destabilizes_2d(&sub.scale_int(k), &amb).unwrap(), v);
            prop_assert_eq!(destabilizes_2d(&sub, &amb.scale_int(k)).unwrap(), v);
        }

        let mk3 = |v: &[i64], lead: i64| {
            ChernCharacter::from_i64_rows(
                g,
                &[&[1 + lead.abs(), v[0], v[1]], &[v[2], v[3], v[4]]],
            )
            .unwrap()
        };
        let sub3 = mk3(&entries[0..5], entries[5]);
        let amb3 = mk3(&entries[5..10], entries[0]);
        let v = destabilizes_3d(&sub3, &amb3).unwrap();
        prop_assert_eq!(destabilizes_3d(&sub3.scale_int(k), &amb3).unwrap(), v);
        prop_assert_eq!(
            lex_vector_3d(&sub3.scale_int(k)).unwrap(),
            lex_vector_3d(&sub3).unwrap()
        );
    }
}

/// Random subset lattices with per-atom weights satisfying the slope-like
/// positivity; the induced labels are additive by construction, so every
/// generated fixture is valid.
fn subset_lattice_strategy() -> impl Strategy<Value = LatticeFixture> {
    let atom = (0i64..=3).prop_flat_map(|c0| {
        let c1 = if c0 == 0 { 0i64..=6 } else { -6i64..=6 };
        c1.prop_map(move |c1| (c0, c1))
    });
    prop::collection::vec(atom, 1..=3).prop_map(|atoms| {
        let n = atoms.len();
        let mut elements = Vec::new();
        let mut leq = Vec::new();
        for mask in 0..(1u32 << n) {
            let c0: i64 = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| atoms[i].0).sum();
            let c1: i64 = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| atoms[i].1).sum();
            elements.push(FixtureElement {
                id: format!("s{mask}"),
                c0,
                c1: Rat::from_int(c1),
            });
            for i in 0..n {
                if mask & (1 << i) == 0 {
                    leq.push((
                        FlexId(format!("s{mask}")),
                        FlexId(format!("s{}", mask | (1 << i))),
                    ));
                }
            }
        }
        LatticeFixture { elements, leq }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]
    #[test]
    fn greedy_equals_exhaustion_on_random_subset_lattices(fixture in subset_lattice_strategy()) {
        let lattice = validate_lattice(&fixture).unwrap();
        let greedy = lattice.hn_filtration().unwrap();
        let exhaustive = lattice.hn_by_exhaustion().unwrap();
        prop_assert_eq!(&greedy, &exhaustive);
        for w in greedy.layer_slopes.windows(2) {
            prop_assert!(w[0] > w[1]);
        }
    }
}

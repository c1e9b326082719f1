use proptest::prelude::*;

use stabring::bounds::multinomial_ramsey_bound;
use stabring::cli::rng::XorShift64Star;
use stabring::fourier::constants::ConstantsTable;
use stabring::fourier::harmonic::toth_holds;
use stabring::fourier::interval::{interval_norm_quadrature, szego_upper_bound};
use stabring::fourier::bg_norm;
use stabring::group::{coset_test, dft_magnitudes, FiniteAbelianGroup, GroupSubset};
use stabring::sidon::{is_sidon, singer_difference_set};
use stabring::stability::{find_order_witness, has_order_property, stability_index, verify_witness};

fn group(moduli: &[usize]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(moduli.to_vec()).unwrap()
}

/// Groups of order at most `max_order`, cyclic and not.
fn groups_up_to(max_order: usize) -> Vec<FiniteAbelianGroup> {
    let mut out: Vec<FiniteAbelianGroup> = (2..=max_order).map(|n| group(&[n])).collect();
    for m in [
        &[2, 2][..],
        &[2, 4],
        &[3, 3],
        &[2, 2, 2],
        &[2, 6],
        &[4, 4],
        &[2, 8],
        &[2, 2, 4],
        &[3, 6],
        &[2, 2, 2, 2],
        &[5, 5],
        &[2, 12],
        &[3, 9],
        &[4, 8],
        &[2, 2, 2, 4],
        &[2, 4, 8],
    ] {
        if m.iter().product::<usize>() <= max_order {
            out.push(group(m));
        }
    }
    out
}

fn random_subset(g: &FiniteAbelianGroup, rng: &mut XorShift64Star) -> GroupSubset {
    rng.subset(g)
}

/// The subgroup generated by `gens`, by closure.
fn generated(g: &FiniteAbelianGroup, gens: &[usize]) -> GroupSubset {
    let mut members = vec![false; g.order()];
    members[0] = true;
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.add_index(x, s);
            if !members[y] {
                members[y] = true;
                frontier.push(y);
            }
        }
    }
    GroupSubset::new(g, (0..g.order()).filter(|&i| members[i])).unwrap()
}

fn closed_under_add_and_neg(s: &GroupSubset) -> bool {
    let g = s.group();
    s.members().iter().all(|&x| s.contains(g.neg_index(x)) && s.members().iter().all(|&y| s.contains(g.add_index(x, y))))
}

fn group_strategy(max_order: usize) -> impl Strategy<Value = FiniteAbelianGroup> {
    let gs = groups_up_to(max_order);
    (0..gs.len()).prop_map(move |i| gs[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn coset_test_matches_closure(g in group_strategy(64), seed in any::<u64>(), kind in 0..3u8) {
        let mut rng = XorShift64Star::new(seed);
        let n = g.order() as u64;
        let a = match kind {
            // A coset of a random subgroup.
            0 => {
                let gens: Vec<usize> = (0..1 + rng.below(2)).map(|_| rng.below(n) as usize).collect();
                generated(&g, &gens).translate(rng.below(n) as usize)
            }
            // A coset with one element toggled.
            1 => {
                let gens = [rng.below(n) as usize];
                let c = generated(&g, &gens).translate(rng.below(n) as usize);
                let x = rng.below(n) as usize;
                let members: Vec<usize> =
                    (0..g.order()).filter(|&i| c.contains(i) != (i == x)).collect();
                GroupSubset::new(&g, members).unwrap()
            }
            _ => random_subset(&g, &mut rng),
        };
        let found = coset_test(&a);
        if a.is_empty() {
            prop_assert!(found.is_none());
        } else {
            for &x in a.members() {
                let shifted = a.translate(g.neg_index(x));
                prop_assert_eq!(found.is_some(), closed_under_add_and_neg(&shifted));
            }
        }
        if let Some(c) = found {
            prop_assert_eq!(c.subgroup.translate(g.index_of(&c.representative).unwrap()), a);
        }
    }

    #[test]
    fn parseval_and_translation(g in group_strategy(64), seed in any::<u64>()) {
        let mut rng = XorShift64Star::new(seed);
        let a = random_subset(&g, &mut rng);
        let mags = dft_magnitudes(&a);
        let energy: f64 = mags.iter().map(|m| m * m).sum();
        let want = (g.order() * a.len()) as f64;
        prop_assert!((energy - want).abs() <= 1e-9 * want.max(1.0));

        let t = rng.below(g.order() as u64) as usize;
        let shifted = dft_magnitudes(&a.translate(t));
        for (x, y) in mags.iter().zip(&shifted) {
            prop_assert!((x - y).abs() <= 1e-10 * (a.len() as f64).max(1.0));
        }
        let m = bg_norm(&a).norm;
        prop_assert!((bg_norm(&a.translate(t)).norm - m).abs() <= 1e-10);
        prop_assert!((bg_norm(&a.negate()).norm - m).abs() <= 1e-10);
    }

    #[test]
    fn order_property_is_monotone(g in group_strategy(16), seed in any::<u64>()) {
        let mut rng = XorShift64Star::new(seed);
        let a = random_subset(&g, &mut rng);
        let r = stability_index(&a);
        for k in 1..=r.max_order {
            let w = find_order_witness(&a, k).unwrap();
            prop_assert!(w.as_ref().is_some_and(|w| verify_witness(&a, w)), "k={}", k);
        }
        prop_assert!(!has_order_property(&a, r.max_order + 1));
    }

    #[test]
    fn stability_is_invariant_under_translation_and_units(n in 2usize..=16, seed in any::<u64>()) {
        let g = group(&[n]);
        let mut rng = XorShift64Star::new(seed);
        let a = random_subset(&g, &mut rng);
        let index = stability_index(&a).stability_index;
        let t = rng.below(n as u64) as usize;
        prop_assert_eq!(stability_index(&a.translate(t)).stability_index, index);
        prop_assert_eq!(stability_index(&a.negate()).stability_index, index);
        let units: Vec<usize> = (1..n).filter(|&u| gcd(u, n) == 1).collect();
        let u = units[rng.below(units.len() as u64) as usize];
        prop_assert_eq!(stability_index(&a.scale(u)).stability_index, index);
    }

    #[test]
    fn subsets_of_sidon_sets_are_sidon(n in 8usize..=64, seed in any::<u64>()) {
        let g = group(&[n]);
        let mut rng = XorShift64Star::new(seed);
        // Greedy Sidon set from a random order of the elements.
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.below(i as u64 + 1) as usize);
        }
        let mut members = Vec::new();
        for x in order {
            members.push(x);
            if !is_sidon(&GroupSubset::new(&g, members.clone()).unwrap()).is_sidon {
                members.pop();
            }
        }
        let s = GroupSubset::new(&g, members.clone()).unwrap();
        prop_assert!(is_sidon(&s).is_sidon);
        for _ in 0..8 {
            let sub: Vec<usize> = members.iter().copied().filter(|_| rng.next_bool()).collect();
            prop_assert!(is_sidon(&GroupSubset::new(&g, sub).unwrap()).is_sidon);
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn complement_raises_index_by_at_most_one() {
    for g in groups_up_to(8) {
        for bits in 0..1u64 << g.order() {
            let a = GroupSubset::from_bits(&g, bits);
            let i = stability_index(&a).stability_index;
            let j = stability_index(&a.complement()).stability_index;
            assert!(j <= i + 1, "{g} {a}: {i} vs complement {j}");
        }
    }
}

#[test]
fn union_bound_exhaustive() {
    for g in groups_up_to(6) {
        let n = 1u64 << g.order();
        let orders: Vec<u64> = (0..n).map(|b| stability_index(&GroupSubset::from_bits(&g, b)).max_order as u64).collect();
        for x in 0..n as usize {
            for y in 0..n as usize {
                let bound = multinomial_ramsey_bound(&[orders[x] + 1, orders[y] + 1]).unwrap().value.unwrap();
                assert!(num_bigint::BigUint::from(orders[x | y]) <= bound, "{g}: {x:b} ∪ {y:b}");
            }
        }
    }
}

#[test]
fn coset_equivalence_exhaustive() {
    for g in groups_up_to(16) {
        for bits in 0..1u64 << g.order() {
            let a = GroupSubset::from_bits(&g, bits);
            let two_stable = !has_order_property(&a, 2);
            assert_eq!(two_stable, a.is_empty() || coset_test(&a).is_some(), "{g} {a}");
        }
    }
}

#[test]
fn unions_of_cosets() {
    let mut rng = XorShift64Star::new(3);
    for n in 2..=16usize {
        let g = group(&[n]);
        for d in (1..=n).filter(|d| n % d == 0) {
            // H = dZ/n has d cosets, represented by 0..d.
            let h = generated(&g, &[d % n]);
            let unions: Vec<u64> = if d <= 8 {
                (1..1u64 << d).collect()
            } else {
                (0..300).map(|_| 1 + rng.below((1u64 << d) - 1)).collect()
            };
            for mask in unions {
                let reps: Vec<usize> = (0..d).filter(|r| mask >> r & 1 == 1).collect();
                let members = reps.iter().flat_map(|&r| h.translate(r).members().to_vec());
                let a = GroupSubset::new(&g, members).unwrap();
                let index = stability_index(&a).stability_index;
                assert!(index <= reps.len() + 1, "Z/{n}, H = {d}Z, {} cosets: index {index}", reps.len());
            }
        }
    }
}

#[test]
fn sidon_sets_are_three_stable() {
    for n in 2..=14 {
        let g = group(&[n]);
        for bits in 0..1u64 << n {
            let a = GroupSubset::from_bits(&g, bits);
            if is_sidon(&a).is_sidon {
                let m = a.len();
                assert!(m * m - m < n || m == 0, "Z/{n} {a}");
                assert!(stability_index(&a).stability_index <= 3, "Z/{n} {a}");
            }
        }
    }
    for g in groups_up_to(16).into_iter().filter(|g| !g.is_cyclic()) {
        let mut rng = XorShift64Star::new(g.order() as u64);
        for _ in 0..500 {
            let a = random_subset(&g, &mut rng);
            if is_sidon(&a).is_sidon && !a.is_empty() {
                assert!(a.len() * a.len() - a.len() < g.order(), "{g} {a}");
            }
        }
    }
}

#[test]
fn singer_character_sums() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32] {
        let d = singer_difference_set(q).unwrap();
        let g = group(&[d.modulus as usize]);
        let a = GroupSubset::new(&g, d.set.iter().map(|&x| x as usize)).unwrap();
        assert!(d.lambda_check && is_sidon(&a).is_sidon, "q={q}");
        for (chi, m) in dft_magnitudes(&a).iter().enumerate().skip(1) {
            assert!((m * m - q as f64).abs() < 1e-9, "q={q} χ={chi}: {}", m * m);
        }
        if d.modulus <= 200 {
            assert_eq!(stability_index(&a).stability_index, 3, "q={q}");
        }
    }
}

#[test]
fn szego_upper_bound_chain() {
    let constants = ConstantsTable::compute();
    for k in 1..=64 {
        assert!(interval_norm_quadrature(k).unwrap() < szego_upper_bound(k, &constants), "k={k}");
    }
}

#[test]
fn toth_bracket_up_to_a_million() {
    assert!((1..=1_000_000u64).all(toth_holds));
}

use pmtk_core::abelian::FinAbGroup;
use pmtk_core::doubles::*;
use pmtk_core::premetric::{blocks, Block, PreMetricGroup};
use proptest::prelude::*;

fn block_pool() -> Vec<Block> {
    [2u64, 3, 5].iter().flat_map(|&p| blocks(p, 9, false)).collect()
}

/// Orthogonal sums of up to three small blocks, total order at most 72.
fn form() -> impl Strategy<Value = (Vec<usize>, PreMetricGroup)> {
    let n = block_pool().len();
    prop::collection::vec(0..n, 1..=3).prop_filter_map("order too large", |idx| {
        let pool = block_pool();
        let order: u64 = idx.iter().map(|&i| pool[i].order()).product();
        if order > 72 {
            return None;
        }
        let p = idx.iter().try_fold(PreMetricGroup::trivial(), |acc, &i| acc.orthogonal_sum(&pool[i].build().ok()?).ok())?;
        Some((idx, p))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn forms_are_quadratic_with_symmetric_polarization((_, p) in form()) {
        prop_assert!(p.verify_quadratic());
        for x in 0..p.order() as usize {
            for y in 0..p.order() as usize {
                prop_assert_eq!(p.b(x, y), p.b(y, x));
            }
        }
    }

    #[test]
    fn sums_commute_up_to_isomorphism((idx, p) in form()) {
        let pool = block_pool();
        let reversed = idx.iter().rev().try_fold(PreMetricGroup::trivial(), |acc, &i| acc.orthogonal_sum(&pool[i].build()?)).unwrap();
        prop_assert!(p.are_isomorphic(&reversed).unwrap().is_some());
        prop_assert_eq!(p.q_multiset(), reversed.q_multiset());
    }

    #[test]
    fn radical_mantle_and_generation((_, p) in form()) {
        let radical = p.radical_subgroup().unwrap();
        prop_assert!(p.is_isotropic(&radical));
        for h in p.maximal_isotropic_subgroups().unwrap() {
            prop_assert!(radical.is_subgroup_of(&h));
        }
        let mantle = p.mantle().unwrap();
        prop_assert_eq!(mantle.order() * radical.order(), p.orthogonal(&radical).order());
        prop_assert!(mantle.radical_subgroup().unwrap().is_trivial());
        if p.is_nondegenerate() {
            prop_assert_eq!(p.is_isotropically_generated(), p.is_isotropically_generated_criterion().unwrap());
        }
    }

    #[test]
    fn herbrand_quotient_is_one(n in 2u64..40, m in 1u64..7, seed in 0u64..1000) {
        // multiplication by a unit u with u^m = 1 on Z/n
        let units: Vec<u64> = (1..n).filter(|&u| gcd(u, n) == 1 && pow_mod(u, m, n) == 1).collect();
        let u = units[(seed as usize) % units.len()];
        let module = CyclicModule::Finite { group: FinAbGroup::cyclic(n), action: vec![vec![u as i64]] };
        let h1 = cyclic_cohomology(m, &module, 1).unwrap().order();
        let h2 = cyclic_cohomology(m, &module, 2).unwrap().order();
        prop_assert_eq!(h1, h2);
        prop_assert_eq!(cyclic_cohomology(m, &module, 3).unwrap().order(), h1);
    }

    #[test]
    fn obstruction_class_is_additive_in_the_cocycle(t1 in abelian_terms(), t2 in abelian_terms()) {
        let a = FinAbGroup::new(vec![2, 2, 2]).unwrap();
        let w1 = Cocycle3::abelian(&a, &t1).unwrap();
        let w2 = Cocycle3::abelian(&a, &t2).unwrap();
        let sum = w1.add(&w2).unwrap();
        let g = w1.group().clone();
        for n in g.normal_abelian_subgroups() {
            let (Ok(c1), Ok(c2), Ok(cs)) = (m_class(&w1, &n), m_class(&w2, &n), m_class(&sum, &n)) else { continue };
            for h in 0..g.order() {
                prop_assert_eq!(cs.m[h].alt(), c1.m[h].alt().plus(&c2.m[h].alt()));
            }
        }
    }
}

fn abelian_terms() -> impl Strategy<Value = Vec<AbelianTerm>> {
    let term = prop_oneof![
        (0usize..3).prop_map(|i| AbelianTerm::I { i, p: 1 }),
        (0usize..3, 0usize..3).prop_filter_map("i < j", |(i, j)| (i < j).then_some(AbelianTerm::II { i, j, p: 1 })),
        Just(AbelianTerm::III { i: 0, j: 1, k: 2, p: 1 }),
    ];
    prop::collection::vec(term, 0..3)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn pow_mod(b: u64, e: u64, n: u64) -> u64 {
    (0..e).fold(1 % n, |acc, _| acc * b % n)
}

#[test]
fn abelian_census_matches_maximal_isotropic_count() {
    for f in [vec![5u64], vec![6], vec![8], vec![3, 3], vec![2, 2, 2]] {
        let a = FinAbGroup::new(f.clone()).unwrap();
        let total = lagrangian_census(&Cocycle3::zero(&FinGroup::from_abelian(&a).unwrap())).unwrap().total;
        let h = PreMetricGroup::hyper_general(&a).unwrap();
        let lagrangians = h.maximal_isotropic_subgroups().unwrap().iter().filter(|l| l.order() * l.order() == h.order()).count();
        assert_eq!(total, lagrangians as u128, "{f:?}");
    }
}

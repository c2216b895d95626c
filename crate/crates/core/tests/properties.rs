mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use lie_branch::branch::branch;
use lie_branch::chars;
use lie_branch::embed::{self, dual_case, EmbeddingDescriptor};
use lie_branch::expr::{self, Env};
use lie_branch::gamma::enumerate_gamma;
use lie_branch::paperdata::{self, CaseFile};
use lie_branch::rootsys::{root_system, GroupShape, SimpleLieType};

fn pool() -> Vec<EmbeddingDescriptor> {
    let mut v = common::small_embeddings();
    v.push(embed::levi_block_embedding(5, &[2, 3]).unwrap());
    v.push(embed::resolve("sl_spin", &[("n".to_string(), 2)].into()).unwrap());
    v
}

fn embedding() -> impl Strategy<Value = EmbeddingDescriptor> {
    let p = pool();
    (0..p.len()).prop_map(move |i| p[i].clone())
}

fn weight(rank: usize, max: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(0..=max, rank)
}

/// An embedding, a dominant `lambda` and a nonempty index set.
fn embedding_and_lambda() -> impl Strategy<Value = (EmbeddingDescriptor, Vec<i64>)> {
    embedding().prop_flat_map(|d| {
        let r = d.g_rank();
        (Just(d), weight(r, 2))
    })
}

fn embedding_and_index_set() -> impl Strategy<Value = (EmbeddingDescriptor, Vec<usize>)> {
    embedding().prop_flat_map(|d| {
        let r = d.g_rank();
        (
            Just(d),
            proptest::sample::subsequence((0..r).collect::<Vec<_>>(), 1..=r.min(3)),
        )
    })
}

fn small_type() -> impl Strategy<Value = SimpleLieType> {
    prop_oneof![
        (1usize..=4).prop_map(|n| common::lie_type('A', n)),
        (2usize..=4).prop_map(|n| common::lie_type('B', n)),
        (2usize..=3).prop_map(|n| common::lie_type('C', n)),
        Just(common::lie_type('D', 4)),
        Just(common::lie_type('G', 2)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn branching_conserves_dimension((d, fund) in embedding_and_lambda()) {
        let lambda = d.lift_weight(&fund);
        let r = branch(&d, &lambda).unwrap();
        let (g, h) = r.dimension_check(&d).unwrap();
        prop_assert_eq!(g, h);
    }

    #[test]
    fn enumeration_grows_with_the_bound((d, set) in embedding_and_index_set(), bound in 1u32..=3) {
        let a = enumerate_gamma(&d, &set, bound).unwrap();
        let b = enumerate_gamma(&d, &set, bound + 1).unwrap();
        prop_assert!(a.elements.is_subset(&b.elements));
        let cut: BTreeSet<_> = b.elements.iter().filter(|e| e.height(d.g_rank()) <= bound).cloned().collect();
        prop_assert_eq!(cut, a.elements);
    }

    #[test]
    fn duality_is_an_involution((d, set) in embedding_and_index_set()) {
        let (dd, dual_set) = dual_case(&d, &set);
        let (back, set_back) = dual_case(&dd, &dual_set);
        prop_assert_eq!(&set_back, &set);
        prop_assert_eq!(&back.lift, &d.lift);
        for e in enumerate_gamma(&d, &set, 2).unwrap().elements {
            prop_assert_eq!(e.dual(&d).dual(&dd), e);
        }
    }

    #[test]
    fn g_weights_survive_format_and_parse((d, fund) in embedding_and_lambda()) {
        let lambda = d.lift_weight(&fund);
        let text = d.format_g_weight(&lambda);
        prop_assert_eq!(d.parse_g_weight(&text).unwrap(), lambda);
    }

    #[test]
    fn h_weights_survive_format_and_parse((d, fund) in embedding_and_lambda()) {
        let r = branch(&d, &d.lift_weight(&fund)).unwrap();
        for mu in r.constituents.keys() {
            let text = d.format_h_weight(mu);
            let w = expr::parse_weight(&text).unwrap();
            prop_assert_eq!(&d.h_weight_from(&w, &Env::new()).unwrap(), mu, "{}", text);
        }
    }

    #[test]
    fn tensor_products_commute(ty in small_type(), a in weight(4, 1), b in weight(4, 1)) {
        let n = ty.rank();
        let shape = GroupShape::simple(ty);
        let x = chars::full_character(&shape, &a[..n]).unwrap();
        let y = chars::full_character(&shape, &b[..n]).unwrap();
        let xy = x.tensor(&y);
        prop_assert_eq!(xy.mass(), x.mass() * y.mass());
        prop_assert_eq!(xy.dominant_part(), y.tensor(&x).dominant_part());
    }

    #[test]
    fn characters_are_weyl_invariant(ty in small_type(), l in weight(4, 2), steps in proptest::collection::vec(0usize..4, 1..6)) {
        let n = ty.rank();
        let rs = root_system(ty);
        let ch = chars::full_character(&GroupShape::simple(ty), &l[..n]).unwrap();
        for (w, m) in &ch.entries {
            let mut v = w.clone();
            for &s in &steps {
                rs.reflect(&mut v, s % n);
            }
            prop_assert_eq!(ch.get(&v), *m);
        }
    }
}

#[test]
fn case_file_round_trips() {
    let text = paperdata::cases().to_text().unwrap();
    let again = CaseFile::parse(&text).unwrap();
    assert_eq!(again.to_text().unwrap(), text);
}

#[test]
fn embedding_catalog_round_trips() {
    let text = embed::catalog().to_text().unwrap();
    let again = embed::Catalog::parse(&text).unwrap();
    assert_eq!(again.to_text().unwrap(), text);
}

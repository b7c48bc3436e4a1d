//! Cross-module algebraic invariants, mostly property-based.

use proptest::prelude::*;

use quotient_sets::catalog::group_from_spec;
use quotient_sets::constructions::{
    apply_hom, compose_base, difference_set, dinfty_set, embed_free, int_gap, sumset, IntSet,
};
use quotient_sets::graph::{
    build_difference_graph, parity_certificate, phi_directed, transpose_component,
    transpose_vertex, validate_lemma_properties,
};
use quotient_sets::group::{DihedralElement, ReducedWord, Syllable};
use quotient_sets::quotient::{
    additive_energy, gap_report, left_quotient_set, right_quotient_set, small_product_criterion,
};
use quotient_sets::stats::{ball, gap_distribution, StatsMode};
use quotient_sets::{GroupContext, GroupElement, Side, SubsetOfGroup};

fn syllables() -> impl Strategy<Value = Vec<Syllable>> {
    proptest::collection::vec(
        (0usize..2, prop_oneof![-3i64..0, 1i64..4]).prop_map(|(g, e)| Syllable::new(g, e)),
        0..6,
    )
}

fn word() -> impl Strategy<Value = ReducedWord> {
    syllables().prop_map(|raw| ReducedWord::reduce(&raw, 2).unwrap())
}

fn word_element() -> impl Strategy<Value = GroupElement> {
    word().prop_map(GroupElement::Word)
}

fn dihedral_element() -> impl Strategy<Value = GroupElement> {
    (-8i64..=8, any::<bool>()).prop_map(|(shift, flip)| {
        GroupElement::Dihedral(if flip {
            DihedralElement::reflection(shift)
        } else {
            DihedralElement::rotation(shift)
        })
    })
}

/// A nonempty subset of F2 built from distinct short words.
fn f2_subset() -> impl Strategy<Value = SubsetOfGroup> {
    proptest::collection::hash_set(word(), 1..7).prop_map(|words| {
        SubsetOfGroup::new(
            GroupContext::free(2),
            words.into_iter().map(GroupElement::Word).collect(),
        )
        .unwrap()
    })
}

fn dinf_subset() -> impl Strategy<Value = SubsetOfGroup> {
    proptest::collection::hash_set(dihedral_element(), 1..7).prop_map(|els| {
        SubsetOfGroup::new(GroupContext::InfDihedral, els.into_iter().collect()).unwrap()
    })
}

fn sd16_subset() -> impl Strategy<Value = SubsetOfGroup> {
    proptest::collection::hash_set(0u32..16, 1..7).prop_map(|idx| {
        SubsetOfGroup::new(
            group_from_spec("sd16").unwrap(),
            idx.into_iter().map(GroupElement::Cayley).collect(),
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn associativity_and_inverse_laws_in_f2(a in word_element(), b in word_element(), c in word_element()) {
        let g = GroupContext::free(2);
        let ab_c = g.multiply(&g.multiply(&a, &b).unwrap(), &c).unwrap();
        let a_bc = g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let inv = g.inverse(&a).unwrap();
        prop_assert_eq!(g.inverse(&inv).unwrap(), a.clone());
        let ab = g.multiply(&a, &b).unwrap();
        let lhs = g.inverse(&ab).unwrap();
        let rhs = g.multiply(&g.inverse(&b).unwrap(), &g.inverse(&a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(g.multiply(&a, &g.inverse(&a).unwrap()).unwrap(), g.identity());
    }

    #[test]
    fn associativity_and_inverse_laws_in_dinf(a in dihedral_element(), b in dihedral_element(), c in dihedral_element()) {
        let g = GroupContext::InfDihedral;
        let ab_c = g.multiply(&g.multiply(&a, &b).unwrap(), &c).unwrap();
        let a_bc = g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let ab = g.multiply(&a, &b).unwrap();
        let lhs = g.inverse(&ab).unwrap();
        let rhs = g.multiply(&g.inverse(&b).unwrap(), &g.inverse(&a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_is_idempotent_and_length_nonincreasing(raw in syllables()) {
        let reduced = ReducedWord::reduce(&raw, 2).unwrap();
        let raw_length: u64 = raw.iter().map(|s| s.exponent.unsigned_abs()).sum();
        prop_assert!(reduced.length() <= raw_length);
        let again = ReducedWord::reduce(reduced.syllables(), 2).unwrap();
        prop_assert_eq!(again, reduced);
    }

    #[test]
    fn word_grammar_round_trips(w in word()) {
        let text = w.to_string();
        prop_assert_eq!(ReducedWord::parse(&text, 2).unwrap(), w);
    }

    #[test]
    fn gap_negates_under_inversion(a in f2_subset()) {
        let r = gap_report(&a);
        let ri = gap_report(&a.inverse_subset());
        prop_assert_eq!(r.gap, -ri.gap);
    }

    #[test]
    fn energies_agree_on_both_sides(a in dinf_subset()) {
        prop_assert_eq!(additive_energy(&a, Side::Right), additive_energy(&a, Side::Left));
    }

    #[test]
    fn torsion_free_gaps_are_even(a in f2_subset()) {
        prop_assert_eq!(gap_report(&a).gap % 2, 0);
    }

    #[test]
    fn symmetric_subsets_balance(a in f2_subset()) {
        // close under inversion, then the two quotient sets coincide
        let ctx = a.context().clone();
        let mut elements: Vec<GroupElement> = a.elements().to_vec();
        for el in a.elements() {
            let inv = ctx.inverse(el).unwrap();
            if !elements.contains(&inv) {
                elements.push(inv);
            }
        }
        let symmetric = SubsetOfGroup::new(ctx, elements).unwrap();
        prop_assert_eq!(gap_report(&symmetric).gap, 0);
        prop_assert_eq!(right_quotient_set(&symmetric), left_quotient_set(&symmetric));
    }

    #[test]
    fn abelian_subsets_balance(indices in proptest::collection::hash_set(0u32..12, 1..7)) {
        let g = group_from_spec("c:12").unwrap();
        let a = SubsetOfGroup::new(g, indices.into_iter().map(GroupElement::Cayley).collect()).unwrap();
        prop_assert_eq!(gap_report(&a).gap, 0);
        // the sufficient condition asserts gap 0 internally whenever it fires
        let _ = small_product_criterion(&a);
    }

    #[test]
    fn component_counts_equal_quotient_cardinalities(a in sd16_subset()) {
        let right = build_difference_graph(&a, Side::Right);
        let left = build_difference_graph(&a, Side::Left);
        prop_assert_eq!(right.component_count(), right_quotient_set(&a).len());
        prop_assert_eq!(left.component_count(), left_quotient_set(&a).len());
        prop_assert_eq!(right.directed_edge_count(), additive_energy(&a, Side::Right));
        prop_assert_eq!(left.directed_edge_count(), additive_energy(&a, Side::Left));
        prop_assert_eq!(right.directed_edge_count(), left.directed_edge_count());
        prop_assert!(right.max_offdiagonal_clique() <= a.len());
    }

    #[test]
    fn transpose_preserves_the_component_partition(a in f2_subset()) {
        let g = build_difference_graph(&a, Side::Right);
        for i in 0..a.len() {
            for j in 0..a.len() {
                prop_assert_eq!(transpose_vertex(transpose_vertex((i, j))), (i, j));
            }
        }
        for id in 0..g.component_count() {
            let partner = transpose_component(&g, id);
            prop_assert_eq!(transpose_component(&g, partner), id);
            // image of the whole component is exactly the partner's vertex set
            let mut image: Vec<_> = g
                .component_vertices(id)
                .iter()
                .map(|&v| transpose_vertex(v))
                .collect();
            image.sort_unstable();
            let mut partner_vertices = g.component_vertices(partner).to_vec();
            partner_vertices.sort_unstable();
            prop_assert_eq!(image, partner_vertices);
        }
    }

    #[test]
    fn phi_directed_bijects_edge_sets(a in dinf_subset()) {
        let right = build_difference_graph(&a, Side::Right);
        let left = build_difference_graph(&a, Side::Left);
        let images: std::collections::HashSet<_> =
            right.directed_edges().map(phi_directed).collect();
        prop_assert_eq!(images.len() as u64, right.directed_edge_count());
        let target: std::collections::HashSet<_> = left.directed_edges().collect();
        prop_assert_eq!(images, target);
    }

    #[test]
    fn validators_accept_genuine_graphs(a in sd16_subset()) {
        // SD16 has involutions, so the symmetric-pair rule is off
        for side in [Side::Right, Side::Left] {
            let g = build_difference_graph(&a, side);
            prop_assert!(validate_lemma_properties(&g, false).is_empty());
        }
    }

    #[test]
    fn parity_certificate_accounts_for_every_component(a in f2_subset()) {
        let g = build_difference_graph(&a, Side::Right);
        let cert = parity_certificate(&g, true);
        prop_assert_eq!(cert.component_count(), g.component_count());
        prop_assert!(cert.certifies_odd());
        prop_assert_eq!(g.component_count() % 2, 1);
    }

    #[test]
    fn dinfty_lift_tracks_the_integer_gap(values in proptest::collection::hash_set(-6i64..=10, 1..7)) {
        let b = IntSet::new(values);
        let a = dinfty_set(&b).unwrap();
        prop_assert_eq!(gap_report(&a).gap, int_gap(&b));
    }

    #[test]
    fn compose_base_multiplicativity(
        v1 in proptest::collection::hash_set(0i64..9, 1..5),
        v2 in proptest::collection::hash_set(0i64..9, 1..5),
    ) {
        // the multiplicative identities are asserted inside compose_base
        let s = compose_base(&IntSet::new(v1), &IntSet::new(v2));
        prop_assert!(!s.is_empty());
    }

    #[test]
    fn embeddings_preserve_quotient_cardinalities(
        m in 1usize..6,
        picks in proptest::collection::hash_set(0usize..24, 1..6),
    ) {
        // words over up to 2 syllables in F_m, deterministic from pick ids
        let ctx = GroupContext::free(m);
        let mut elements: Vec<GroupElement> = Vec::new();
        for pick in picks {
            let g1 = pick % m;
            let e1 = if pick % 2 == 0 { 1 } else { -1 };
            let g2 = (pick / 2) % m;
            let raw = [Syllable::new(g1, e1 * (1 + (pick % 3) as i64)), Syllable::new(g2, 1)];
            let w = GroupElement::Word(ReducedWord::reduce(&raw, m).unwrap());
            if !elements.contains(&w) {
                elements.push(w);
            }
        }
        let a = SubsetOfGroup::new(ctx, elements).unwrap();
        let hom = embed_free(m).unwrap();
        let image = apply_hom(&hom, &a).unwrap();
        prop_assert_eq!(image.len(), a.len());
        prop_assert_eq!(right_quotient_set(&image).len(), right_quotient_set(&a).len());
        prop_assert_eq!(left_quotient_set(&image).len(), left_quotient_set(&a).len());
    }

    #[test]
    fn sumset_difference_set_shapes(values in proptest::collection::hash_set(-9i64..9, 1..7)) {
        let b = IntSet::new(values);
        let d = difference_set(&b);
        prop_assert!(d.elements().contains(&0));
        prop_assert!(d.elements().iter().all(|&v| d.elements().contains(&-v)));
        prop_assert_eq!(d.len() % 2, 1);
        let s = sumset(&b);
        prop_assert!(s.len() >= 2 * b.len() - 1);
        prop_assert!(s.len() <= b.len() * b.len());
    }
}

#[test]
fn exhaustive_associativity_small_tables() {
    for spec in ["q8", "d:8", "c:12", "ham:1"] {
        let g = group_from_spec(spec).unwrap();
        let elements = g.elements().unwrap();
        for a in &elements {
            for b in &elements {
                let ab = g.multiply(a, b).unwrap();
                for c in &elements {
                    let left = g.multiply(&ab, c).unwrap();
                    let right = g.multiply(a, &g.multiply(b, c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }
}

#[test]
fn full_subgroup_subsets_trigger_the_small_product_criterion() {
    // a whole finite subgroup has AA = A, well under twice its size
    let c4 = group_from_spec("c:4").unwrap();
    let a = SubsetOfGroup::new(c4.clone(), c4.elements().unwrap()).unwrap();
    assert!(small_product_criterion(&a)); // asserts gap 0 internally
}

#[test]
fn abelian_full_subset_certificate_pairs_by_inversion() {
    let c5 = group_from_spec("c:5").unwrap();
    let a = SubsetOfGroup::new(c5.clone(), c5.elements().unwrap()).unwrap();
    let g = build_difference_graph(&a, Side::Right);
    let cert = parity_certificate(&g, true);
    assert!(cert.fixed_nondiagonal.is_empty());
    assert_eq!(cert.component_count(), 5);
}

#[test]
fn s8_witness_fires_the_symmetric_pair_rule_only_under_the_wrong_flag() {
    let witness = quotient_sets::search::example_witness_s8();
    for side in [Side::Right, Side::Left] {
        let g = build_difference_graph(&witness, side);
        assert!(validate_lemma_properties(&g, false).is_empty());
        let flipped = validate_lemma_properties(&g, true);
        assert!(!flipped.is_empty(), "odd gap needs a transpose-fixed pair");
    }
    // and the certificate records a transpose-fixed component
    let g = build_difference_graph(&witness, Side::Right);
    let cert = parity_certificate(&g, false);
    assert!(!cert.fixed_nondiagonal.is_empty());
}

#[test]
fn exact_histogram_is_symmetric() {
    let stats = gap_distribution(
        1,
        StatsMode::Exact {
            bit_limit_override: None,
        },
    )
    .unwrap();
    for (&gap, &count) in &stats.histogram {
        assert_eq!(stats.histogram.get(&-gap), Some(&count));
    }
}

/// Seed-averaged 4-standard-error check that the Monte Carlo mean vanishes.
#[test]
fn monte_carlo_mean_vanishes_at_radius_three() {
    let seeds = [0u64, 1, 2, 3, 4];
    let trials_per_seed = 10_000u64;
    let mut total = 0u64;
    let mut sum = 0.0f64;
    let mut sum_squares = 0.0f64;
    for &seed in &seeds {
        let stats = gap_distribution(
            3,
            StatsMode::MonteCarlo {
                trials: trials_per_seed,
                seed,
            },
        )
        .unwrap();
        assert!(stats.histogram.keys().all(|g| g % 2 == 0));
        total += trials_per_seed;
        sum += stats.mean * trials_per_seed as f64;
        sum_squares += (stats.variance + stats.mean * stats.mean) * trials_per_seed as f64;
    }
    let pooled_mean = sum / total as f64;
    let pooled_sd = (sum_squares / total as f64 - pooled_mean * pooled_mean).sqrt();
    let bound = 4.0 * pooled_sd / (total as f64).sqrt();
    assert!(
        pooled_mean.abs() <= bound,
        "pooled mean {pooled_mean} exceeds the 4-sigma bound {bound}"
    );
}

#[test]
fn ball_words_parse_back_in_order() {
    let b = ball(2).unwrap();
    for w in b.words() {
        assert_eq!(&ReducedWord::parse(&w.to_string(), 2).unwrap(), w);
    }
}

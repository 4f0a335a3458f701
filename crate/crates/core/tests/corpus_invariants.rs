use std::sync::OnceLock;

use engel_core::corpus::{build, default_corpus, default_specs, GroupSpec};
use engel_core::structure::{
    baer_elements, baer_radical, derived_series, fitting_oracle, lower_central_series, nilpotency_class,
    normal_closure, subgroup_generate, Subgroup,
};
use engel_core::{Elem, FiniteGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus() -> &'static [FiniteGroup] {
    static C: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    C.get_or_init(default_corpus)
}

#[test]
fn corpus_shape() {
    let c = corpus();
    assert!(c.len() >= 30);
    assert!(c.iter().all(|g| g.order() <= 512));
    let names: Vec<&str> = c.iter().map(FiniteGroup::name).collect();
    for required in ["S3", "A5", "S5", "S4", "Q8", "D8", "Heis3", "C7:C3"] {
        assert!(names.contains(&required), "{required}");
    }
    let mut sorted = names.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), names.len(), "names are unique");
}

#[test]
fn closed_form_orders() {
    fn expected(s: &GroupSpec) -> Option<usize> {
        Some(match s {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Dicyclic(n) => 4 * n,
            GroupSpec::Symmetric(n) => (1..=*n).product(),
            GroupSpec::Alternating(n) => (1..=*n).product::<usize>() / 2,
            GroupSpec::Heisenberg(p) => p * p * p,
            GroupSpec::ElementaryAbelian { p, k } => p.pow(*k as u32),
            GroupSpec::Product(a, b) => expected(a)? * expected(b)?,
            GroupSpec::Cayley { .. } => return None,
        })
    }
    for (s, g) in default_specs().iter().zip(corpus()) {
        assert_eq!(s.name(), g.name());
        if let Some(n) = expected(s) {
            assert_eq!(g.order(), n, "{}", g.name());
        }
    }
}

#[test]
fn associativity_and_inverses() {
    for g in corpus() {
        let n = g.order();
        if n <= 512 {
            for a in g.elements() {
                for b in g.elements() {
                    let ab = g.mul(a, b);
                    for c in g.elements() {
                        assert_eq!(g.mul(ab, c), g.mul(a, g.mul(b, c)), "{}", g.name());
                    }
                }
            }
        }
        for a in g.elements() {
            assert_eq!(g.inv(g.inv(a)), a);
            assert_eq!(g.mul(a, g.inv(a)), Elem::IDENTITY);
            for b in g.elements() {
                assert_eq!(g.comm(a, b), g.inv(g.comm(b, a)));
            }
        }
    }
}

#[test]
fn lagrange_and_generation() {
    for g in corpus() {
        for x in g.elements() {
            assert_eq!(g.order() % g.element_order(x), 0, "{}", g.name());
            assert_eq!(g.evaluate(g.word_of(x)).unwrap(), x);
        }
        let gens: Vec<Elem> = g.generators().iter().map(|(_, e)| *e).collect();
        assert_eq!(subgroup_generate(g, &gens).order(), g.order());
    }
}

#[test]
fn engel_recursion_small_groups() {
    for g in corpus().iter().filter(|g| g.order() <= 48) {
        for a in g.elements() {
            for x in g.elements() {
                assert_eq!(g.engel_commutator(a, x, 0), a);
                for n in 0..=6 {
                    assert_eq!(
                        g.engel_commutator(a, x, n + 1),
                        g.comm(g.engel_commutator(a, x, n), x)
                    );
                }
            }
        }
    }
}

#[test]
fn deterministic_numbering() {
    for s in default_specs().iter().take(20) {
        assert_eq!(build(s).unwrap().table(), build(s).unwrap().table());
    }
    let a: Vec<String> = default_corpus().iter().map(|g| g.name().to_string()).collect();
    let b: Vec<String> = corpus().iter().map(|g| g.name().to_string()).collect();
    assert_eq!(a, b);
}

#[test]
fn series_are_descending_and_short() {
    for g in corpus() {
        let whole = Subgroup::whole(g);
        for s in [lower_central_series(&whole), derived_series(&whole)] {
            for w in s.terms.windows(2) {
                assert!(w[1].is_subgroup_of(&w[0]) && w[1].order() < w[0].order());
            }
            let log2 = usize::BITS - g.order().leading_zeros();
            assert!(s.terms.len() - 1 <= log2 as usize);
        }
    }
}

#[test]
fn normal_closures_are_normal() {
    for g in corpus().iter().filter(|g| g.order() <= 128) {
        let whole = Subgroup::whole(g);
        for x in g.elements() {
            let n = normal_closure(g, &[x]);
            assert!(n.contains(x));
            assert!(n.is_normal_in(&whole), "{} {}", g.name(), g.show(x));
        }
    }
}

#[test]
fn radicals_agree() {
    for g in corpus() {
        let b = baer_radical(g);
        let f = fitting_oracle(g);
        assert_eq!(b.members(), f.members(), "{}", g.name());
        assert!(b.is_normal_in(&Subgroup::whole(g)));
        assert!(nilpotency_class(&b).is_some());
        // the generating set is already a subgroup
        assert_eq!(baer_elements(g).len(), b.order(), "{}", g.name());
    }
}

#[test]
fn class_bounds_weight_commutators() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in corpus() {
        let Some(c) = nilpotency_class(&Subgroup::whole(g)) else {
            continue;
        };
        let n = g.order();
        for _ in 0..10_000 {
            let mut acc = Elem::new(rng.gen_range(0..n));
            for _ in 0..c {
                acc = g.comm(acc, Elem::new(rng.gen_range(0..n)));
            }
            assert_eq!(acc, Elem::IDENTITY, "{}", g.name());
        }
    }
}

//! Shared test helpers: a fixture builder, label-set reference
//! implementations of the derived relations (no bit operations), and a
//! proptest strategy for small spaces.

use crate::space::Space;

pub(crate) fn fixture(labels: &[&str], members: &[&[&str]]) -> Space {
    let labels = labels.iter().map(|s| s.to_string()).collect();
    let members: Vec<Vec<&str>> = members.iter().map(|m| m.to_vec()).collect();
    Space::new(labels, &members).expect("fixture must be well-formed")
}

pub(crate) mod naive {
    use crate::space::{Space, Subset};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn label_set(space: &Space, s: Subset) -> BTreeSet<String> {
        space.labels_of(s).into_iter().collect()
    }

    pub(crate) fn depends_on(space: &Space, x: usize, a: Subset) -> bool {
        let a = label_set(space, a);
        let x = space.label(x).to_string();
        if a.contains(&x) {
            return true;
        }
        space.delta().iter().any(|&d| {
            let d = label_set(space, d);
            if !d.contains(&x) {
                return false;
            }
            let rest: BTreeSet<String> = d.into_iter().filter(|l| *l != x).collect();
            !rest.is_empty() && rest.is_subset(&a)
        })
    }

    pub(crate) fn span(space: &Space, a: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for x in 0..space.size() {
            if depends_on(space, x, a) {
                out = out.with(x);
            }
        }
        out
    }

    pub(crate) fn arb_space(max_n: usize) -> impl Strategy<Value = Space> {
        (0..=max_n).prop_flat_map(|n| {
            let all = 1u64 << n;
            prop::collection::vec(0..all, 0..10).prop_map(move |masks| {
                let labels = (1..=n).map(|i| format!("e{i:02}")).collect();
                let delta = masks
                    .into_iter()
                    .filter(|b| b.count_ones() >= 2)
                    .map(Subset::from_bits)
                    .collect();
                Space::from_masks(labels, delta).expect("generated space is valid")
            })
        })
    }
}

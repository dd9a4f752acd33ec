//! The dependence structure itself: a finite ground set together with a
//! family of directly dependent subsets, plus the predicates derived from
//! it (dependence on a set, span, independence, bases).
//!
//! Subsets are characteristic vectors over the ground set's sorted label
//! order, so the ground set is capped at 64 elements and every set
//! operation is a single word operation. The numeric value of the
//! characteristic vector doubles as the canonical subset order used by
//! every scan and every reported witness.

use std::fmt;

use crate::axioms;
use crate::error::Error;

/// Hard cap on ground-set size imposed by the fixed-width subset encoding.
pub const MAX_GROUND: usize = 64;

/// A subset of one space's ground set, encoded as a characteristic vector.
///
/// Bit `i` stands for the element with the `i`-th smallest label. A value
/// is only meaningful together with the space that produced it; operations
/// on subsets from different spaces are a caller bug, not a checked error.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Subset {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The full set over a ground set of `n` elements.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= MAX_GROUND);
        if n == 0 {
            Subset(0)
        } else {
            Subset(u64::MAX >> (64 - n))
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersect(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Element indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Least element index, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// All subsets of `self` in ascending characteristic-vector order,
    /// starting with the empty set (carry-rippler enumeration).
    pub fn submasks(self) -> Submasks {
        Submasks {
            of: self.0,
            next: 0,
            done: false,
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub struct Submasks {
    of: u64,
    next: u64,
    done: bool,
}

impl Iterator for Submasks {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.done {
            return None;
        }
        let cur = self.next;
        self.next = self.next.wrapping_sub(self.of) & self.of;
        self.done = self.next == 0;
        Some(Subset(cur))
    }
}

/// A finite ground set plus a family of directly dependent subsets, each
/// of size at least 2. Construction validates; an ill-formed input is a
/// hard error, never silently repaired. Values are immutable afterwards,
/// so shared read access from any number of workers is safe.
#[derive(Clone, PartialEq, Eq)]
pub struct Space {
    labels: Vec<String>,
    delta: Vec<Subset>,
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Space")
            .field("labels", &self.labels)
            .field("delta", &self.delta)
            .finish()
    }
}

pub(crate) fn validate_label(label: &str) -> Result<(), Error> {
    if label.is_empty() {
        return Err(Error::InvalidLabel {
            label: label.to_string(),
            reason: "empty",
        });
    }
    if label.chars().any(char::is_whitespace) {
        return Err(Error::InvalidLabel {
            label: label.to_string(),
            reason: "contains whitespace",
        });
    }
    if label.contains(',') {
        return Err(Error::InvalidLabel {
            label: label.to_string(),
            reason: "contains a comma",
        });
    }
    Ok(())
}

impl Space {
    /// Builds a space from element labels and family members given as
    /// label lists. Labels are sorted; members are deduplicated (a family
    /// is a set of sets) and stored in canonical order.
    pub fn new<S: AsRef<str>>(labels: Vec<String>, members: &[Vec<S>]) -> Result<Space, Error> {
        for label in &labels {
            validate_label(label)?;
        }
        let mut labels = labels;
        labels.sort();
        if let Some(dup) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement {
                label: dup[0].clone(),
            });
        }
        if labels.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge {
                size: labels.len(),
                limit: MAX_GROUND,
            });
        }

        let report = axioms::check_well_formed(&labels, members);
        if let Some(witness) = report.witness {
            return Err(witness.into_error());
        }

        let mut delta = Vec::with_capacity(members.len());
        for member in members {
            let mut mask = Subset::EMPTY;
            for label in member {
                let i = labels
                    .binary_search_by(|l| l.as_str().cmp(label.as_ref()))
                    .expect("member labels checked by well-formedness");
                mask = mask.with(i);
            }
            delta.push(mask);
        }
        delta.sort();
        delta.dedup();

        Ok(Space { labels, delta })
    }

    /// Builds a space from pre-sorted labels and member masks over that
    /// order. Used by generators that work in mask space directly.
    pub(crate) fn from_masks(labels: Vec<String>, mut delta: Vec<Subset>) -> Result<Space, Error> {
        for label in &labels {
            validate_label(label)?;
        }
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        if labels.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge {
                size: labels.len(),
                limit: MAX_GROUND,
            });
        }
        let ground = Subset::full(labels.len());
        for &d in &delta {
            if d.len() < 2 {
                return Err(Error::MemberTooSmall {
                    member: d.iter().map(|i| labels[i].clone()).collect(),
                });
            }
            assert!(d.is_subset_of(ground));
        }
        delta.sort();
        delta.dedup();
        Ok(Space { labels, delta })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// The full ground set as a subset value.
    pub fn ground(&self) -> Subset {
        Subset::full(self.labels.len())
    }

    /// Element labels in sorted order; index `i` is the element bit `i`
    /// stands for.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Index of the element with the given label.
    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    /// The family of directly dependent sets, deduplicated, in canonical
    /// (ascending characteristic-vector) order.
    pub fn delta(&self) -> &[Subset] {
        &self.delta
    }

    /// Resolves a list of labels to a subset; unknown labels are a domain
    /// error. This is the boundary where element-level domain checks live:
    /// a `Subset` obtained here is within the ground set by construction.
    pub fn subset_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset, Error> {
        let mut mask = Subset::EMPTY;
        for label in labels {
            let i = self
                .element(label.as_ref())
                .ok_or_else(|| Error::UnknownElement {
                    label: label.as_ref().to_string(),
                })?;
            mask = mask.with(i);
        }
        Ok(mask)
    }

    /// Labels of a subset's elements, in label order.
    pub fn labels_of(&self, s: Subset) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Renders a subset as `{a,b,c}`.
    pub fn format_subset(&self, s: Subset) -> String {
        format!("{{{}}}", self.labels_of(s).join(","))
    }

    fn assert_within(&self, s: Subset) {
        assert!(
            s.is_subset_of(self.ground()),
            "subset {s:?} has bits outside this space's ground set"
        );
    }

    fn assert_element(&self, x: usize) {
        assert!(
            x < self.labels.len(),
            "element index {x} outside this space's ground set"
        );
    }

    /// Whether `a` itself is a member of the family (exact set equality).
    pub fn is_directly_dependent(&self, a: Subset) -> bool {
        self.assert_within(a);
        self.delta.binary_search(&a).is_ok()
    }

    /// Whether `x` depends on `a`: either `x` is in `a`, or some family
    /// member consists of `x` together with a nonempty set of elements of
    /// `a`. This is the literal witness search; `span` computes the same
    /// relation by a different route, and the two are tested as an
    /// executable identity.
    pub fn depends_on(&self, x: usize, a: Subset) -> bool {
        self.assert_element(x);
        self.assert_within(a);
        if a.contains(x) {
            return true;
        }
        let xs = Subset::singleton(x);
        self.delta.iter().any(|&d| {
            if !d.contains(x) {
                return false;
            }
            let rest = d.minus(xs);
            !rest.is_empty() && rest.is_subset_of(a)
        })
    }

    /// One-step span: every ground element that depends on `x`. Not
    /// iterated; see `iterated_span` for the fixpoint.
    pub fn span(&self, x: Subset) -> Subset {
        self.assert_within(x);
        let mut out = x;
        for &d in &self.delta {
            let outside = d.minus(x);
            if outside.is_empty() {
                // member inside x: every element already accounted for
                out = out.union(d);
            } else if outside.len() == 1 {
                // the one element outside depends on the rest, which is in x
                out = out.union(outside);
            }
        }
        out
    }

    /// Least fixpoint of `span` containing `x`. Terminates because the
    /// ground set is finite and `span` is monotone and extensive. On a
    /// transitive space this coincides with `span`.
    pub fn iterated_span(&self, x: Subset) -> Subset {
        let mut cur = x;
        loop {
            let next = self.span(cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Whether some family member is contained in `a`.
    pub fn is_dependent(&self, a: Subset) -> bool {
        self.first_contained_member(a).is_some()
    }

    pub fn is_independent(&self, a: Subset) -> bool {
        !self.is_dependent(a)
    }

    /// The canonically first family member contained in `a`, if any.
    pub fn first_contained_member(&self, a: Subset) -> Option<Subset> {
        self.assert_within(a);
        self.delta.iter().copied().find(|d| d.is_subset_of(a))
    }

    /// Whether `a` is independent and every ground element depends on it
    /// in one step.
    pub fn is_basis(&self, a: Subset) -> bool {
        self.is_independent(a) && self.span(a) == self.ground()
    }
}

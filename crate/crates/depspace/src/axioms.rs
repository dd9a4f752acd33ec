//! Axiom checks: well-formedness of the family and the transitivity
//! axiom, the latter by two independent methods.
//!
//! The direct scan tests the axiom literally: for every element x and
//! pair of subsets (A, B), if x depends on A and every element of A
//! depends on B, then x must depend on B. The idempotence method instead
//! tests span(span(B)) = span(B) for every B. The two are equivalent:
//! span is extensive and monotone, so a second application can only add
//! elements, and any element it adds is exactly an x that depends on
//! A = span(B) but not on B. Both methods scan in canonical order and
//! report the same verdict; their counterexamples may differ in shape
//! but each is confirmed against the definitions before being returned.

use crate::error::Error;
use crate::scan::{self, UnitScan};
use crate::space::{Space, Subset};
use std::collections::BTreeSet;
use std::fmt;

/// Largest ground set accepted by the direct transitivity scan.
pub const DIRECT_LIMIT: usize = 12;
/// Largest ground set accepted by the idempotence transitivity scan.
pub const IDEMPOTENCE_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomName {
    WellFormed,
    Transitivity,
}

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomName::WellFormed => "well-formed",
            AxiomName::Transitivity => "transitivity",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Direct,
    Idempotence,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct-scan",
            Method::Idempotence => "idempotence",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport<W> {
    pub axiom: AxiomName,
    pub method: Method,
    /// Candidates examined: up to and including the witness when the
    /// check fails, the whole enumeration when it holds. Identical for
    /// every worker count.
    pub scanned: u64,
    pub witness: Option<W>,
}

impl<W> AxiomReport<W> {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

pub type WellFormedReport = AxiomReport<MemberWitness>;
pub type TransitivityReport = AxiomReport<TransitivityCounterexample>;

/// A family member violating well-formedness, with the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberWitness {
    /// The offending member as given.
    pub member: Vec<String>,
    pub defect: MemberDefect,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MemberDefect {
    /// Fewer than two distinct elements.
    TooSmall,
    /// Mentions a label outside the ground set.
    Unknown(String),
}

impl MemberWitness {
    pub fn into_error(self) -> Error {
        match self.defect {
            MemberDefect::TooSmall => Error::MemberTooSmall {
                member: self.member,
            },
            MemberDefect::Unknown(label) => Error::UnknownElement { label },
        }
    }
}

/// A triple violating transitivity: x depends on a, every element of a
/// depends on b, yet x does not depend on b.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransitivityCounterexample {
    pub x: usize,
    pub a: Subset,
    pub b: Subset,
}

/// Checks raw input for well-formedness: every family member must have
/// at least two distinct elements, all drawn from the ground set.
/// Members are scanned in the order given; the first offender is the
/// witness. Size is checked before membership, so a one-element member
/// with an unknown label reports the size defect.
pub fn check_well_formed<S: AsRef<str>>(labels: &[String], members: &[Vec<S>]) -> WellFormedReport {
    let known: BTreeSet<&str> = labels.iter().map(|s| s.as_str()).collect();
    let mut scanned = 0;
    for member in members {
        scanned += 1;
        let distinct: BTreeSet<&str> = member.iter().map(|l| l.as_ref()).collect();
        let defect = if distinct.len() < 2 {
            Some(MemberDefect::TooSmall)
        } else {
            distinct
                .iter()
                .find(|l| !known.contains(*l))
                .map(|l| MemberDefect::Unknown(l.to_string()))
        };
        if let Some(defect) = defect {
            return AxiomReport {
                axiom: AxiomName::WellFormed,
                method: Method::Direct,
                scanned,
                witness: Some(MemberWitness {
                    member: member.iter().map(|l| l.as_ref().to_string()).collect(),
                    defect,
                }),
            };
        }
    }
    AxiomReport {
        axiom: AxiomName::WellFormed,
        method: Method::Direct,
        scanned,
        witness: None,
    }
}

pub fn check_transitivity_direct(space: &Space) -> Result<TransitivityReport, Error> {
    check_transitivity_direct_with(space, scan::default_workers())
}

/// Exhaustive scan of all (x, A, B) triples in canonical order: x over
/// elements in label order, then A, then B over subsets in mask order.
pub fn check_transitivity_direct_with(
    space: &Space,
    workers: usize,
) -> Result<TransitivityReport, Error> {
    let n = space.size();
    if n > DIRECT_LIMIT {
        return Err(Error::Guard {
            op: "check_transitivity_direct",
            size: n,
            limit: DIRECT_LIMIT,
        });
    }
    let subsets = 1u64 << n;
    let outcome = scan::run(n as u64 * subsets, workers, |u| {
        let x = (u / subsets) as usize;
        let a = Subset::from_bits(u % subsets);
        if !space.depends_on(x, a) {
            return UnitScan::Complete(subsets);
        }
        for bits in 0..subsets {
            let b = Subset::from_bits(bits);
            if a.iter().all(|t| space.depends_on(t, b)) && !space.depends_on(x, b) {
                return UnitScan::Found {
                    scanned: bits + 1,
                    witness: TransitivityCounterexample { x, a, b },
                };
            }
        }
        UnitScan::Complete(subsets)
    });
    if let Some(w) = &outcome.witness {
        confirm_counterexample(space, w);
    }
    Ok(AxiomReport {
        axiom: AxiomName::Transitivity,
        method: Method::Direct,
        scanned: outcome.scanned,
        witness: outcome.witness,
    })
}

pub fn check_transitivity_idempotence(space: &Space) -> Result<TransitivityReport, Error> {
    check_transitivity_idempotence_with(space, scan::default_workers())
}

/// Scans subsets B in mask order and tests span(span(B)) = span(B).
/// On failure the counterexample is rebuilt in the direct shape with
/// A = span(B) and x the least element of span(A) outside span(B).
pub fn check_transitivity_idempotence_with(
    space: &Space,
    workers: usize,
) -> Result<TransitivityReport, Error> {
    let n = space.size();
    if n > IDEMPOTENCE_LIMIT {
        return Err(Error::Guard {
            op: "check_transitivity_idempotence",
            size: n,
            limit: IDEMPOTENCE_LIMIT,
        });
    }
    let outcome = scan::run(1u64 << n, workers, |u| {
        let b = Subset::from_bits(u);
        let sb = space.span(b);
        let ssb = space.span(sb);
        if ssb == sb {
            UnitScan::Complete(1)
        } else {
            let x = ssb.minus(sb).first().expect("span grew");
            UnitScan::Found {
                scanned: 1,
                witness: TransitivityCounterexample { x, a: sb, b },
            }
        }
    });
    if let Some(w) = &outcome.witness {
        confirm_counterexample(space, w);
    }
    Ok(AxiomReport {
        axiom: AxiomName::Transitivity,
        method: Method::Idempotence,
        scanned: outcome.scanned,
        witness: outcome.witness,
    })
}

/// Every reported counterexample is re-checked against the defining
/// conditions before leaving this module.
fn confirm_counterexample(space: &Space, w: &TransitivityCounterexample) {
    assert!(
        space.depends_on(w.x, w.a)
            && w.a.iter().all(|t| space.depends_on(t, w.b))
            && !space.depends_on(w.x, w.b),
        "transitivity counterexample failed confirmation: {w:?}"
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::fixture;

    fn chain() -> Space {
        fixture(&["1", "2", "3"], &[&["1", "2"], &["2", "3"]])
    }

    fn u23() -> Space {
        fixture(&["a", "b", "c"], &[&["a", "b", "c"]])
    }

    #[test]
    fn well_formed_accepts_and_counts() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let members = vec![vec!["a", "b"], vec!["b", "a"]];
        let report = check_well_formed(&labels, &members);
        assert!(report.holds());
        assert_eq!(report.scanned, 2);
        assert_eq!(report.axiom, AxiomName::WellFormed);
    }

    #[test]
    fn well_formed_flags_small_member() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let members = vec![vec!["a", "b"], vec!["a"], vec!["a", "z"]];
        let report = check_well_formed(&labels, &members);
        assert_eq!(report.scanned, 2);
        let w = report.witness.unwrap();
        assert_eq!(w.member, vec!["a"]);
        assert_eq!(w.defect, MemberDefect::TooSmall);
        assert!(matches!(w.into_error(), Error::MemberTooSmall { .. }));
    }

    #[test]
    fn well_formed_flags_unknown_label() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let members = vec![vec!["a", "z"]];
        let report = check_well_formed(&labels, &members);
        let w = report.witness.unwrap();
        assert_eq!(w.defect, MemberDefect::Unknown("z".to_string()));
        assert!(matches!(w.into_error(), Error::UnknownElement { label } if label == "z"));
    }

    #[test]
    fn repeated_label_member_is_too_small() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let members = vec![vec!["a", "a"]];
        let report = check_well_formed(&labels, &members);
        assert_eq!(report.witness.unwrap().defect, MemberDefect::TooSmall);
    }

    #[test]
    fn direct_finds_pinned_chain_counterexample() {
        let s = chain();
        let report = check_transitivity_direct(&s).unwrap();
        assert!(!report.holds());
        let w = report.witness.unwrap();
        assert_eq!(s.label(w.x), "1");
        assert_eq!(s.labels_of(w.a), vec!["2"]);
        assert_eq!(s.labels_of(w.b), vec!["3"]);
        assert_eq!(report.scanned, 21);
    }

    #[test]
    fn idempotence_finds_chain_counterexample() {
        let s = chain();
        let report = check_transitivity_idempotence(&s).unwrap();
        let w = report.witness.unwrap();
        assert_eq!(report.scanned, 2);
        assert_eq!(s.labels_of(w.b), vec!["1"]);
        assert_eq!(s.labels_of(w.a), vec!["1", "2"]);
        assert_eq!(s.label(w.x), "3");
    }

    #[test]
    fn uniform_space_is_transitive_under_both_methods() {
        let s = u23();
        let direct = check_transitivity_direct(&s).unwrap();
        assert!(direct.holds());
        assert_eq!(direct.scanned, 3 * 64);
        let idem = check_transitivity_idempotence(&s).unwrap();
        assert!(idem.holds());
        assert_eq!(idem.scanned, 8);
    }

    #[test]
    fn methods_agree_and_workers_do_not_matter() {
        let spaces = [
            chain(),
            u23(),
            fixture(&["1", "2", "3"], &[&["1", "2"], &["1", "3"]]),
            fixture(&["p", "q"], &[]),
        ];
        for s in &spaces {
            let base_d = check_transitivity_direct_with(s, 1).unwrap();
            let base_i = check_transitivity_idempotence_with(s, 1).unwrap();
            assert_eq!(base_d.holds(), base_i.holds());
            for workers in [2, 3, 8] {
                let d = check_transitivity_direct_with(s, workers).unwrap();
                assert_eq!(d, base_d);
                let i = check_transitivity_idempotence_with(s, workers).unwrap();
                assert_eq!(i, base_i);
            }
        }
    }

    #[test]
    fn empty_ground_holds_vacuously() {
        let s = fixture(&[], &[]);
        let d = check_transitivity_direct(&s).unwrap();
        assert!(d.holds());
        assert_eq!(d.scanned, 0);
        let i = check_transitivity_idempotence(&s).unwrap();
        assert!(i.holds());
        assert_eq!(i.scanned, 1);
    }

    #[test]
    fn direct_guard_rejects_large_ground() {
        let labels: Vec<String> = (0..13).map(|i| format!("x{i:02}")).collect();
        let s = Space::new(labels, &[] as &[Vec<&str>]).unwrap();
        let err = check_transitivity_direct(&s).unwrap_err();
        assert!(matches!(
            err,
            Error::Guard {
                op: "check_transitivity_direct",
                size: 13,
                limit: 12,
            }
        ));
        assert!(check_transitivity_idempotence(&s).unwrap().holds());
    }

    #[test]
    fn idempotence_guard_rejects_large_ground() {
        let labels: Vec<String> = (0..21).map(|i| format!("x{i:02}")).collect();
        let s = Space::new(labels, &[] as &[Vec<&str>]).unwrap();
        let err = check_transitivity_idempotence(&s).unwrap_err();
        assert!(matches!(err, Error::Guard { limit: 20, .. }));
    }
}

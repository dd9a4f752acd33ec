//! Derived properties: the exchange lemma scan, the exchange of
//! independent sets (EIS) scan, extension of independent sets, and
//! basis enumeration.

use crate::axioms;
use crate::error::Error;
use crate::scan::{self, UnitScan};
use crate::space::{Space, Subset};

/// Largest ground set accepted by `steinitz_scan`.
pub const STEINITZ_LIMIT: usize = 14;
/// Largest ground set accepted by `eis_scan`.
pub const EIS_LIMIT: usize = 10;
/// Largest ground set accepted by `enumerate_bases`.
pub const BASES_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport<W> {
    /// Candidates examined: up to and including the witness when the
    /// property fails, the whole enumeration when it holds. Identical
    /// for every worker count.
    pub scanned: u64,
    pub witness: Option<W>,
}

impl<W> ScanReport<W> {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// A triple violating the exchange lemma: b depends on base + a but not
/// on base alone, yet a does not depend on base + b.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SteinitzCounterexample {
    pub a: usize,
    pub b: usize,
    pub base: Subset,
}

/// A triple violating EIS: P and Q are disjoint with P + Q independent,
/// R is an independent subset of span(Q), yet P + R is dependent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EisCounterexample {
    pub p: Subset,
    pub q: Subset,
    pub r: Subset,
}

pub fn steinitz_scan(space: &Space) -> Result<ScanReport<SteinitzCounterexample>, Error> {
    steinitz_scan_with(space, scan::default_workers())
}

/// Scans all (base, a, b) triples: base over subsets in mask order,
/// then a and b over distinct elements in label order.
pub fn steinitz_scan_with(
    space: &Space,
    workers: usize,
) -> Result<ScanReport<SteinitzCounterexample>, Error> {
    let n = space.size();
    if n > STEINITZ_LIMIT {
        return Err(Error::Guard {
            op: "steinitz_scan",
            size: n,
            limit: STEINITZ_LIMIT,
        });
    }
    let outcome = scan::run(1u64 << n, workers, |u| {
        let base = Subset::from_bits(u);
        let mut examined = 0;
        for a in 0..n {
            for b in 0..n {
                if b == a {
                    continue;
                }
                examined += 1;
                if space.depends_on(b, base.with(a))
                    && !space.depends_on(b, base)
                    && !space.depends_on(a, base.with(b))
                {
                    return UnitScan::Found {
                        scanned: examined,
                        witness: SteinitzCounterexample { a, b, base },
                    };
                }
            }
        }
        UnitScan::Complete(examined)
    });
    if let Some(w) = &outcome.witness {
        assert!(
            space.depends_on(w.b, w.base.with(w.a))
                && !space.depends_on(w.b, w.base)
                && !space.depends_on(w.a, w.base.with(w.b)),
            "exchange counterexample failed confirmation: {w:?}"
        );
    }
    Ok(ScanReport {
        scanned: outcome.scanned,
        witness: outcome.witness,
    })
}

pub fn eis_scan(space: &Space) -> Result<ScanReport<EisCounterexample>, Error> {
    eis_scan_with(space, scan::default_workers())
}

/// Scans independent sets I in mask order; within each, P runs over
/// submasks of I in ascending order with Q = I - P, and R over submasks
/// of span(Q) in ascending order. Every R candidate counts as examined;
/// dependent R are skipped without testing the conclusion.
pub fn eis_scan_with(
    space: &Space,
    workers: usize,
) -> Result<ScanReport<EisCounterexample>, Error> {
    let n = space.size();
    if n > EIS_LIMIT {
        return Err(Error::Guard {
            op: "eis_scan",
            size: n,
            limit: EIS_LIMIT,
        });
    }
    let outcome = scan::run(1u64 << n, workers, |u| {
        let i = Subset::from_bits(u);
        if space.is_dependent(i) {
            return UnitScan::Complete(0);
        }
        let mut examined = 0;
        for p in i.submasks() {
            let q = i.minus(p);
            for r in space.span(q).submasks() {
                examined += 1;
                if !space.is_independent(r) {
                    continue;
                }
                if !space.is_independent(p.union(r)) {
                    return UnitScan::Found {
                        scanned: examined,
                        witness: EisCounterexample { p, q, r },
                    };
                }
            }
        }
        UnitScan::Complete(examined)
    });
    if let Some(w) = &outcome.witness {
        let t = eis_check_triple(space, w.p, w.q, w.r);
        assert!(
            t.premises_hold() && t.conclusion == Some(false),
            "EIS counterexample failed confirmation: {w:?}"
        );
    }
    Ok(ScanReport {
        scanned: outcome.scanned,
        witness: outcome.witness,
    })
}

/// Evaluation of one (P, Q, R) triple against the EIS conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EisTriple {
    /// P and Q share no element.
    pub disjoint: bool,
    /// P + Q is independent.
    pub union_independent: bool,
    /// R is independent and lies within span(Q).
    pub replacement_ok: bool,
    /// Whether P + R is independent; only evaluated when all three
    /// premises hold.
    pub conclusion: Option<bool>,
}

impl EisTriple {
    pub fn premises_hold(&self) -> bool {
        self.disjoint && self.union_independent && self.replacement_ok
    }
}

pub fn eis_check_triple(space: &Space, p: Subset, q: Subset, r: Subset) -> EisTriple {
    let disjoint = p.is_disjoint(q);
    let union_independent = space.is_independent(p.union(q));
    let replacement_ok = space.is_independent(r) && r.is_subset_of(space.span(q));
    let conclusion =
        (disjoint && union_independent && replacement_ok).then(|| space.is_independent(p.union(r)));
    EisTriple {
        disjoint,
        union_independent,
        replacement_ok,
        conclusion,
    }
}

/// Adds x to an independent set. Errors when a is dependent or when x
/// already depends on a; otherwise the result is independent, which is
/// asserted before returning.
pub fn extend_independent(space: &Space, a: Subset, x: usize) -> Result<Subset, Error> {
    if !space.is_independent(a) {
        return Err(Error::Contract {
            op: "extend_independent",
            clause: format!("the set {} is dependent", space.format_subset(a)),
        });
    }
    if space.depends_on(x, a) {
        return Err(Error::Contract {
            op: "extend_independent",
            clause: format!(
                "element {} already depends on {}",
                space.label(x),
                space.format_subset(a)
            ),
        });
    }
    let out = a.with(x);
    assert!(
        space.is_independent(out),
        "extension of an independent set by a non-dependent element must stay independent"
    );
    Ok(out)
}

/// Grows an independent set to a basis by repeatedly adding the least
/// element outside the current span. In strict mode the space must pass
/// the transitivity check (idempotence method) first; its guard applies.
pub fn extend_to_basis(space: &Space, a: Subset, strict: bool) -> Result<Subset, Error> {
    if !space.is_independent(a) {
        return Err(Error::Contract {
            op: "extend_to_basis",
            clause: format!("the starting set {} is dependent", space.format_subset(a)),
        });
    }
    if strict {
        let report = axioms::check_transitivity_idempotence(space)?;
        if !report.holds() {
            return Err(Error::Contract {
                op: "extend_to_basis",
                clause: "the space is not transitive".to_string(),
            });
        }
    }
    let mut cur = a;
    loop {
        let sp = space.span(cur);
        if sp == space.ground() {
            break;
        }
        let x = space
            .ground()
            .minus(sp)
            .first()
            .expect("span short of ground has a missing element");
        cur = extend_independent(space, cur, x)?;
    }
    if !space.is_basis(cur) {
        return Err(Error::ExtensionFailed {
            set: space.labels_of(cur),
        });
    }
    Ok(cur)
}

/// All bases of the space in mask order, with the equicardinality
/// verdict over them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisReport {
    pub bases: Vec<Subset>,
    pub equicardinal: bool,
    /// Common basis size when the bases are equicardinal and at least
    /// one exists.
    pub dimension: Option<usize>,
    /// Two bases of different sizes when they are not equicardinal:
    /// the first basis and the first later basis of another size.
    pub witness_pair: Option<(Subset, Subset)>,
}

pub fn enumerate_bases(space: &Space) -> Result<BasisReport, Error> {
    let n = space.size();
    if n > BASES_LIMIT {
        return Err(Error::Guard {
            op: "enumerate_bases",
            size: n,
            limit: BASES_LIMIT,
        });
    }
    let mut bases = Vec::new();
    for bits in 0..(1u64 << n) {
        let s = Subset::from_bits(bits);
        if space.is_basis(s) {
            bases.push(s);
        }
    }
    Ok(BasisReport::from_bases(bases))
}

impl BasisReport {
    pub(crate) fn from_bases(bases: Vec<Subset>) -> BasisReport {
        let first = bases.first().copied();
        let mut witness_pair = None;
        if let Some(f) = first {
            for &b in &bases[1..] {
                if b.len() != f.len() {
                    witness_pair = Some((f, b));
                    break;
                }
            }
        }
        let equicardinal = witness_pair.is_none();
        let dimension = if equicardinal {
            first.map(|f| f.len())
        } else {
            None
        };
        BasisReport {
            bases,
            equicardinal,
            dimension,
            witness_pair,
        }
    }
}

//! Chunked exhaustive scanning. A scan is a sequence of units (outer loop
//! positions in canonical order); each unit examines a run of candidates
//! and either completes with its candidate count or stops at the first
//! witness found. Units are split into contiguous chunks, one per worker,
//! and chunk results are combined in chunk order, so the reported witness
//! and the candidate count are identical for every worker count.

pub(crate) enum UnitScan<W> {
    /// The unit finished; it examined this many candidates.
    Complete(u64),
    /// A witness was found after examining `scanned` candidates of this unit.
    Found { scanned: u64, witness: W },
}

pub(crate) struct ScanOutcome<W> {
    /// Candidates examined in canonical order up to and including the
    /// witness, or the full enumeration size when no witness exists.
    pub scanned: u64,
    pub witness: Option<W>,
}

pub(crate) fn run<W, F>(units: u64, workers: usize, unit: F) -> ScanOutcome<W>
where
    W: Send,
    F: Fn(u64) -> UnitScan<W> + Sync,
{
    if units == 0 {
        return ScanOutcome {
            scanned: 0,
            witness: None,
        };
    }
    let workers = (workers.max(1) as u64).min(units) as usize;
    if workers == 1 {
        let (scanned, witness) = scan_range(0, units, &unit);
        return ScanOutcome { scanned, witness };
    }

    let results: Vec<(u64, Option<W>)> = std::thread::scope(|scope| {
        let unit = &unit;
        let handles: Vec<_> = (0..workers as u64)
            .map(|c| {
                let lo = units * c / workers as u64;
                let hi = units * (c + 1) / workers as u64;
                scope.spawn(move || scan_range(lo, hi, unit))
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    let mut total = 0;
    for (scanned, witness) in results {
        total += scanned;
        if witness.is_some() {
            return ScanOutcome {
                scanned: total,
                witness,
            };
        }
    }
    ScanOutcome {
        scanned: total,
        witness: None,
    }
}

fn scan_range<W, F>(lo: u64, hi: u64, unit: &F) -> (u64, Option<W>)
where
    F: Fn(u64) -> UnitScan<W>,
{
    let mut scanned = 0;
    for u in lo..hi {
        match unit(u) {
            UnitScan::Complete(count) => scanned += count,
            UnitScan::Found {
                scanned: in_unit,
                witness,
            } => return (scanned + in_unit, Some(witness)),
        }
    }
    (scanned, None)
}

pub(crate) fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|p| p.get().min(8))
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_and_witness_are_worker_independent() {
        // witness at unit 13, candidate 3 of 5 per unit
        let unit = |u: u64| {
            if u == 13 {
                UnitScan::Found {
                    scanned: 3,
                    witness: u,
                }
            } else {
                UnitScan::Complete(5)
            }
        };
        for workers in [1, 2, 3, 7, 64] {
            let out = run(20, workers, unit);
            assert_eq!(out.witness, Some(13));
            assert_eq!(out.scanned, 13 * 5 + 3);
        }
        for workers in [1, 4] {
            let out = run(20, workers, |_| UnitScan::Complete::<()>(5));
            assert!(out.witness.is_none());
            assert_eq!(out.scanned, 100);
        }
    }

    #[test]
    fn earliest_witness_wins_across_chunks() {
        let unit = |u: u64| {
            if u >= 6 {
                UnitScan::Found {
                    scanned: 1,
                    witness: u,
                }
            } else {
                UnitScan::Complete(1)
            }
        };
        for workers in [1, 2, 5, 16] {
            let out = run(16, workers, unit);
            assert_eq!(out.witness, Some(6));
            assert_eq!(out.scanned, 7);
        }
    }

    #[test]
    fn empty_scan() {
        let out = run(0, 4, |_| UnitScan::Complete::<u32>(1));
        assert_eq!(out.scanned, 0);
        assert!(out.witness.is_none());
    }
}

//! Instance generators backed by three matroid families, with rank
//! oracles computed by separate means for cross-validation, plus a
//! seeded pseudorandom generator.
//!
//! Each generator takes circuits (minimal dependent sets) as the family,
//! so the derived notions line up with the matroid ones; the oracles
//! answer rank queries straight from the defining structure (counting,
//! spanning forests, GF(2) elimination) without touching the family.

use crate::error::Error;
use crate::properties::ScanReport;
use crate::scan::{self, UnitScan};
use crate::space::{self, MAX_GROUND, Space, Subset};

/// Largest ground set accepted by `gen_uniform`.
pub const UNIFORM_LIMIT: usize = 20;
/// Largest edge count accepted by `gen_graphic`.
pub const GRAPHIC_EDGE_LIMIT: usize = 12;
/// Largest column count accepted by `gen_binary`.
pub const BINARY_LIMIT: usize = 16;
/// Largest ground set accepted by `gen_random` and `add_dependent_sets`.
pub const RANDOM_LIMIT: usize = 16;
/// Largest ground set accepted by `oracle_compare`.
pub const COMPARE_LIMIT: usize = 16;
/// Largest row count accepted for binary matrices.
pub const MATRIX_ROW_LIMIT: usize = 64;

/// A finite multigraph: vertices 0..vertex_count, edges as labeled
/// endpoint pairs. Parallel edges are fine; loops are rejected when the
/// graph is turned into a space or an oracle, since a loop would be a
/// one-element dependent set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    pub vertex_count: u64,
    pub edges: Vec<(u64, u64, String)>,
}

/// A 0/1 matrix over GF(2) given as rows; columns are the ground
/// elements. Column labels default to c1..cn when absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMatrixSpec {
    pub rows: Vec<Vec<u8>>,
    pub labels: Option<Vec<String>>,
}

fn padded_labels(prefix: char, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i:02}")).collect()
}

fn uniform_params(n: usize, k: usize) -> Result<(), Error> {
    if !(1..n).contains(&k) {
        return Err(Error::ParamRange {
            param: "k",
            value: k.to_string(),
            constraint: "1 <= k < n",
        });
    }
    Ok(())
}

/// The uniform matroid U(k, n): every set of more than k elements is
/// dependent, so the circuits are exactly the (k+1)-element subsets.
pub fn gen_uniform(n: usize, k: usize) -> Result<Space, Error> {
    if n > UNIFORM_LIMIT {
        return Err(Error::Guard {
            op: "gen_uniform",
            size: n,
            limit: UNIFORM_LIMIT,
        });
    }
    uniform_params(n, k)?;
    let mut delta = Vec::new();
    for bits in 0..(1u64 << n) {
        if bits.count_ones() as usize == k + 1 {
            delta.push(Subset::from_bits(bits));
        }
    }
    Space::from_masks(padded_labels('e', n), delta)
}

/// The cycle matroid of a graph: edge sets are the ground, a set is
/// dependent exactly when it contains a cycle, so the circuits are the
/// simple cycles.
pub fn gen_graphic(spec: &GraphSpec) -> Result<Space, Error> {
    let (labels, endpoints) = validate_graph(spec)?;
    let m = labels.len();
    if m > GRAPHIC_EDGE_LIMIT {
        return Err(Error::Guard {
            op: "gen_graphic",
            size: m,
            limit: GRAPHIC_EDGE_LIMIT,
        });
    }
    let mut delta = Vec::new();
    for bits in 1..(1u64 << m) {
        let s = Subset::from_bits(bits);
        if !is_forest(&endpoints, s) && s.iter().all(|e| is_forest(&endpoints, s.without(e))) {
            delta.push(s);
        }
    }
    Space::from_masks(labels, delta)
}

/// The column matroid of a 0/1 matrix over GF(2): a column set is
/// dependent when it is linearly dependent, so the circuits are the
/// minimal dependent column sets.
pub fn gen_binary(spec: &BinaryMatrixSpec) -> Result<Space, Error> {
    let (labels, columns) = validate_matrix(spec)?;
    let n = labels.len();
    if n > BINARY_LIMIT {
        return Err(Error::Guard {
            op: "gen_binary",
            size: n,
            limit: BINARY_LIMIT,
        });
    }
    let mut delta = Vec::new();
    for bits in 1..(1u64 << n) {
        let s = Subset::from_bits(bits);
        if gf2_dependent(&columns, s) && s.iter().all(|c| !gf2_dependent(&columns, s.without(c))) {
            delta.push(s);
        }
    }
    Space::from_masks(labels, delta)
}

/// A seeded pseudorandom space: m distinct members drawn uniformly from
/// the subsets of size 2 through max_size. The stream is splitmix64 over
/// the seed and the draw is a partial Fisher-Yates shuffle of the pool
/// in mask order, so equal arguments give equal spaces on any platform.
pub fn gen_random(n: usize, m: usize, max_size: usize, seed: u64) -> Result<Space, Error> {
    if n == 0 {
        return Err(Error::ParamRange {
            param: "n",
            value: "0".to_string(),
            constraint: "positive",
        });
    }
    if n > RANDOM_LIMIT {
        return Err(Error::Guard {
            op: "gen_random",
            size: n,
            limit: RANDOM_LIMIT,
        });
    }
    if max_size < 2 {
        return Err(Error::ParamRange {
            param: "max-size",
            value: max_size.to_string(),
            constraint: "at least 2",
        });
    }
    let cap = max_size.min(n);
    let mut pool: Vec<u64> = (0..(1u64 << n))
        .filter(|b| {
            let c = b.count_ones() as usize;
            (2..=cap).contains(&c)
        })
        .collect();
    if m > pool.len() {
        return Err(Error::RandomInfeasible {
            requested: m,
            available: pool.len(),
        });
    }
    let mut rng = SplitMix64::new(seed);
    for i in 0..m {
        let j = i + (rng.next() % (pool.len() - i) as u64) as usize;
        pool.swap(i, j);
    }
    let delta = pool[..m].iter().map(|&b| Subset::from_bits(b)).collect();
    Space::from_masks(padded_labels('e', n), delta)
}

/// Enlarges the family with every dependent set of size at most `limit`.
/// Existing members stay, so the result derives the same dependence
/// relation with a deliberately redundant family.
pub fn add_dependent_sets(space: &Space, limit: usize) -> Result<Space, Error> {
    let n = space.size();
    if n > RANDOM_LIMIT {
        return Err(Error::Guard {
            op: "add_dependent_sets",
            size: n,
            limit: RANDOM_LIMIT,
        });
    }
    if limit < 2 {
        return Err(Error::ParamRange {
            param: "limit",
            value: limit.to_string(),
            constraint: "at least 2",
        });
    }
    let mut delta: Vec<Subset> = space.delta().to_vec();
    for bits in 1..(1u64 << n) {
        let s = Subset::from_bits(bits);
        if s.len() <= limit && space.is_dependent(s) {
            delta.push(s);
        }
    }
    Space::from_masks(space.labels().to_vec(), delta)
}

/// A rank function computed from the defining structure of an instance,
/// sharing nothing with the family-based machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankOracle {
    Uniform {
        n: usize,
        k: usize,
    },
    Graphic {
        labels: Vec<String>,
        endpoints: Vec<(u64, u64)>,
    },
    Binary {
        labels: Vec<String>,
        columns: Vec<u64>,
    },
}

impl RankOracle {
    pub fn uniform(n: usize, k: usize) -> Result<RankOracle, Error> {
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge {
                size: n,
                limit: MAX_GROUND,
            });
        }
        uniform_params(n, k)?;
        Ok(RankOracle::Uniform { n, k })
    }

    pub fn graphic(spec: &GraphSpec) -> Result<RankOracle, Error> {
        let (labels, endpoints) = validate_graph(spec)?;
        Ok(RankOracle::Graphic { labels, endpoints })
    }

    pub fn binary(spec: &BinaryMatrixSpec) -> Result<RankOracle, Error> {
        let (labels, columns) = validate_matrix(spec)?;
        Ok(RankOracle::Binary { labels, columns })
    }

    pub fn size(&self) -> usize {
        match self {
            RankOracle::Uniform { n, .. } => *n,
            RankOracle::Graphic { labels, .. } => labels.len(),
            RankOracle::Binary { labels, .. } => labels.len(),
        }
    }

    /// Ground labels in sorted order, matching the generated space.
    pub fn labels(&self) -> Vec<String> {
        match self {
            RankOracle::Uniform { n, .. } => padded_labels('e', *n),
            RankOracle::Graphic { labels, .. } => labels.clone(),
            RankOracle::Binary { labels, .. } => labels.clone(),
        }
    }

    pub fn rank(&self, s: Subset) -> usize {
        match self {
            RankOracle::Uniform { k, .. } => s.len().min(*k),
            RankOracle::Graphic { endpoints, .. } => graphic_rank(endpoints, s),
            RankOracle::Binary { columns, .. } => gf2_rank(columns, s),
        }
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.rank(s) == s.len()
    }
}

/// One set on which the space and the oracle disagree about
/// independence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleMismatch {
    pub set: Subset,
    pub space_independent: bool,
    pub oracle_independent: bool,
}

pub fn oracle_compare(
    space: &Space,
    oracle: &RankOracle,
) -> Result<ScanReport<OracleMismatch>, Error> {
    oracle_compare_with(space, oracle, scan::default_workers())
}

/// Compares independence verdicts over every subset in mask order.
pub fn oracle_compare_with(
    space: &Space,
    oracle: &RankOracle,
    workers: usize,
) -> Result<ScanReport<OracleMismatch>, Error> {
    let n = space.size();
    if n > COMPARE_LIMIT {
        return Err(Error::Guard {
            op: "oracle_compare",
            size: n,
            limit: COMPARE_LIMIT,
        });
    }
    if space.labels() != oracle.labels().as_slice() {
        return Err(Error::GroundMismatch);
    }
    let outcome = scan::run(1u64 << n, workers, |u| {
        let s = Subset::from_bits(u);
        let space_independent = space.is_independent(s);
        let oracle_independent = oracle.is_independent(s);
        if space_independent == oracle_independent {
            UnitScan::Complete(1)
        } else {
            UnitScan::Found {
                scanned: 1,
                witness: OracleMismatch {
                    set: s,
                    space_independent,
                    oracle_independent,
                },
            }
        }
    });
    Ok(ScanReport {
        scanned: outcome.scanned,
        witness: outcome.witness,
    })
}

type LabeledEndpoints = (Vec<String>, Vec<(u64, u64)>);

fn validate_graph(spec: &GraphSpec) -> Result<LabeledEndpoints, Error> {
    if spec.vertex_count == 0 {
        return Err(Error::ParamRange {
            param: "vertex-count",
            value: "0".to_string(),
            constraint: "positive",
        });
    }
    for (u, v, label) in &spec.edges {
        space::validate_label(label)?;
        for &w in [u, v] {
            if w >= spec.vertex_count {
                return Err(Error::EdgeOutOfRange {
                    label: label.clone(),
                    vertex: w,
                    count: spec.vertex_count,
                });
            }
        }
        if u == v {
            return Err(Error::LoopEdge {
                label: label.clone(),
                vertex: *u,
            });
        }
    }
    if spec.edges.len() > MAX_GROUND {
        return Err(Error::GroundTooLarge {
            size: spec.edges.len(),
            limit: MAX_GROUND,
        });
    }
    let mut order: Vec<usize> = (0..spec.edges.len()).collect();
    order.sort_by(|&a, &b| spec.edges[a].2.cmp(&spec.edges[b].2));
    if let Some(w) = order
        .windows(2)
        .find(|w| spec.edges[w[0]].2 == spec.edges[w[1]].2)
    {
        return Err(Error::DuplicateEdgeLabel {
            label: spec.edges[w[0]].2.clone(),
        });
    }
    let labels = order.iter().map(|&i| spec.edges[i].2.clone()).collect();
    let endpoints = order
        .iter()
        .map(|&i| (spec.edges[i].0, spec.edges[i].1))
        .collect();
    Ok((labels, endpoints))
}

fn validate_matrix(spec: &BinaryMatrixSpec) -> Result<(Vec<String>, Vec<u64>), Error> {
    let width = spec.rows.first().map_or(0, |r| r.len());
    for row in &spec.rows {
        if row.len() != width {
            return Err(Error::RaggedMatrix {
                first: width,
                other: row.len(),
            });
        }
        for &v in row {
            if v > 1 {
                return Err(Error::MatrixEntry { value: v as i64 });
            }
        }
    }
    if spec.rows.len() > MATRIX_ROW_LIMIT {
        return Err(Error::TooManyRows {
            rows: spec.rows.len(),
            limit: MATRIX_ROW_LIMIT,
        });
    }
    if let Some(labels) = &spec.labels
        && labels.len() != width
    {
        return Err(Error::LabelCountMismatch {
            labels: labels.len(),
            columns: width,
        });
    }
    if width > MAX_GROUND {
        return Err(Error::GroundTooLarge {
            size: width,
            limit: MAX_GROUND,
        });
    }
    let labels: Vec<String> = match &spec.labels {
        Some(l) => l.clone(),
        None => (1..=width).map(|i| format!("c{i}")).collect(),
    };
    for label in &labels {
        space::validate_label(label)?;
    }
    let mut columns = Vec::with_capacity(width);
    for (j, label) in labels.iter().enumerate() {
        let mut col = 0u64;
        for (i, row) in spec.rows.iter().enumerate() {
            if row[j] == 1 {
                col |= 1 << i;
            }
        }
        if col == 0 {
            return Err(Error::ZeroColumn {
                label: label.clone(),
            });
        }
        columns.push(col);
    }
    let mut order: Vec<usize> = (0..width).collect();
    order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    if let Some(w) = order.windows(2).find(|w| labels[w[0]] == labels[w[1]]) {
        return Err(Error::DuplicateElement {
            label: labels[w[0]].clone(),
        });
    }
    Ok((
        order.iter().map(|&i| labels[i].clone()).collect(),
        order.iter().map(|&i| columns[i]).collect(),
    ))
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            false
        } else {
            self.parent[ra as usize] = rb;
            true
        }
    }
}

/// Spanning-forest rank of an edge set: the number of union-find merges
/// over the vertices the selected edges touch.
fn graphic_rank(endpoints: &[(u64, u64)], s: Subset) -> usize {
    let mut verts: Vec<u64> = s
        .iter()
        .flat_map(|e| [endpoints[e].0, endpoints[e].1])
        .collect();
    verts.sort_unstable();
    verts.dedup();
    let mut uf = UnionFind::new(verts.len());
    let mut rank = 0;
    for e in s.iter() {
        let a = verts.binary_search(&endpoints[e].0).unwrap() as u32;
        let b = verts.binary_search(&endpoints[e].1).unwrap() as u32;
        if uf.union(a, b) {
            rank += 1;
        }
    }
    rank
}

fn is_forest(endpoints: &[(u64, u64)], s: Subset) -> bool {
    graphic_rank(endpoints, s) == s.len()
}

/// GF(2) rank of a column set by elimination over a leading-bit basis.
fn gf2_rank(columns: &[u64], s: Subset) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for c in s.iter() {
        let mut v = columns[c];
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            if basis[lead] == 0 {
                basis[lead] = v;
                rank += 1;
                break;
            }
            v ^= basis[lead];
        }
    }
    rank
}

fn gf2_dependent(columns: &[u64], s: Subset) -> bool {
    gf2_rank(columns, s) < s.len()
}

struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }
}

//! Brute-force ground truth on small explicit graphs.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Largest vertex count accepted by the exhaustive enumerations
/// (`B_13` is about 2.8e7 partitions).
pub const MAX_ENUMERATION_VERTICES: usize = 13;

/// Simple graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl ExplicitGraph {
    /// Edges may be listed in either orientation; loops, duplicates and
    /// out-of-range endpoints are rejected.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {vertex_count} vertices"
                )));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Self { vertex_count, edges: set })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.vertex_count;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components
    }

    /// Acyclic iff `|E| = |V| - components`.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.component_count() == self.vertex_count
    }

    fn adjacency_masks(&self) -> Vec<u32> {
        let mut masks = vec![0u32; self.vertex_count];
        for &(u, v) in &self.edges {
            masks[u] |= 1 << v;
            masks[v] |= 1 << u;
        }
        masks
    }
}

fn check_order(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidArgument(format!("need at least {min} vertices, got {n}")));
    }
    Ok(())
}

pub fn build_empty(n: usize) -> Result<ExplicitGraph> {
    check_order(n, 1)?;
    ExplicitGraph::new(n, [])
}

pub fn build_path(n: usize) -> Result<ExplicitGraph> {
    check_order(n, 1)?;
    ExplicitGraph::new(n, (1..n).map(|v| (v - 1, v)))
}

/// Cycle on `n >= 3` vertices; `n = 2` gives a single edge.
pub fn build_cycle(n: usize) -> Result<ExplicitGraph> {
    check_order(n, 2)?;
    if n == 2 {
        return ExplicitGraph::new(2, [(0, 1)]);
    }
    ExplicitGraph::new(n, (0..n).map(|v| (v, (v + 1) % n)))
}

fn check_forest_shape(n: usize, c: usize) -> Result<()> {
    if c == 0 || c > n {
        return Err(Error::InvalidForest { n, c });
    }
    Ok(())
}

/// A star on `n - c + 1` vertices (centre 0) plus `c - 1` isolated vertices.
pub fn build_star_forest(n: usize, c: usize) -> Result<ExplicitGraph> {
    check_forest_shape(n, c)?;
    ExplicitGraph::new(n, (1..=n - c).map(|leaf| (0, leaf)))
}

/// 64-bit linear congruential generator with Knuth's MMIX constants:
/// `state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`,
/// output taken from the high 32 bits.
#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
    pub const INCREMENT: u64 = 1_442_695_040_888_963_407;

    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(Self::MULTIPLIER).wrapping_add(Self::INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish value in `0..bound` (modulo reduction), `bound > 0`.
    pub fn below(&mut self, bound: usize) -> usize {
        self.next_u32() as usize % bound
    }
}

/// Random forest with `n` vertices and `c` components, deterministic per
/// seed. Component sizes start at one and receive the remaining `n - c`
/// vertices one at a time; each tree grows by attaching every new vertex
/// to a uniformly chosen earlier vertex of its tree; finally all labels are
/// shuffled.
pub fn build_random_forest(n: usize, c: usize, seed: u64) -> Result<ExplicitGraph> {
    check_forest_shape(n, c)?;
    let mut rng = Lcg64::new(seed);
    let mut sizes = vec![1usize; c];
    for _ in 0..n - c {
        sizes[rng.below(c)] += 1;
    }
    let mut edges = Vec::with_capacity(n - c);
    let mut start = 0;
    for size in sizes {
        for j in 1..size {
            edges.push((start + rng.below(j), start + j));
        }
        start += size;
    }
    let mut labels: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        labels.swap(i, rng.below(i + 1));
    }
    ExplicitGraph::new(n, edges.into_iter().map(|(u, v)| (labels[u], labels[v])))
}

fn check_enumerable(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::TooLarge {
            vertices: n,
            limit: MAX_ENUMERATION_VERTICES,
        });
    }
    Ok(())
}

/// `(S(G, k))_k` by walking all restricted growth strings, abandoning a
/// prefix as soon as a vertex joins a block holding one of its neighbours.
pub fn enumerate_partition_counts(g: &ExplicitGraph) -> Result<Vec<BigUint>> {
    let n = g.vertex_count();
    check_enumerable(n)?;
    let adjacency = g.adjacency_masks();
    let mut counts = vec![0u64; n + 1];
    let mut blocks = vec![0u32; n];

    fn walk(v: usize, used: usize, adjacency: &[u32], blocks: &mut [u32], counts: &mut [u64]) {
        if v == adjacency.len() {
            counts[used] += 1;
            return;
        }
        for b in 0..=used {
            if b == blocks.len() {
                break;
            }
            if blocks[b] & adjacency[v] != 0 {
                continue;
            }
            blocks[b] |= 1 << v;
            walk(v + 1, used.max(b + 1), adjacency, blocks, counts);
            blocks[b] &= !(1 << v);
        }
    }

    walk(0, 0, &adjacency, &mut blocks, &mut counts);
    Ok(counts.into_iter().map(BigUint::from).collect())
}

/// Number of partitions of an `n`-set with every block of size at least two.
pub fn singleton_free_count(n: usize) -> Result<BigUint> {
    check_enumerable(n)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!("singleton_free_count needs n >= 2, got {n}")));
    }
    fn walk(v: usize, n: usize, sizes: &mut Vec<usize>) -> u64 {
        let singletons = sizes.iter().filter(|&&s| s == 1).count();
        // each remaining element can fix at most one singleton block
        if singletons > n - v {
            return 0;
        }
        if v == n {
            return 1;
        }
        let mut total = 0;
        for b in 0..sizes.len() {
            sizes[b] += 1;
            total += walk(v + 1, n, sizes);
            sizes[b] -= 1;
        }
        sizes.push(1);
        total += walk(v + 1, n, sizes);
        sizes.pop();
        total
    }
    Ok(BigUint::from(walk(0, n, &mut Vec::new())))
}

//! Strategy-independent entropy lower bound over protocol partitions.
//!
//! Any zero-error protocol partitions the input cube into monochromatic
//! combinatorial rectangles (per-coordinate subset products; subcubes for
//! Boolean coordinates), and no rectangle may contain two elements of a
//! fooling set. The expected bits of the protocol are lower-bounded by the
//! entropy of the partition under the product measure, so minimizing that
//! entropy over all partitions satisfying both constraints bounds every
//! protocol. The search is exhaustive and enforced to n <= 3.
//!
//! On every profile tried, the minimum matches the coherent DP cost for all
//! thresholds of three variables; whether that holds in general is open.

use serde::{Deserialize, Serialize};

use crate::math::xlog2x;
use crate::ordering::solve_dp;
use crate::{CostKind, Error, ProbProfile, Result};

/// Exhaustive partition search cap.
pub const PARTITION_NODE_CAP: usize = 3;

/// Allowed values of one coordinate inside a rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoordSet {
    Zero,
    One,
    Both,
}

impl CoordSet {
    fn admits(self, bit: usize) -> bool {
        matches!(
            (self, bit),
            (CoordSet::Zero, 0) | (CoordSet::One, 1) | (CoordSet::Both, _)
        )
    }
}

/// A combinatorial rectangle: the product of per-coordinate subsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rectangle {
    pub coords: Vec<CoordSet>,
}

impl Rectangle {
    /// Probability mass of the rectangle under the product measure.
    pub fn probability(&self, profile: &ProbProfile) -> f64 {
        self.coords
            .iter()
            .enumerate()
            .map(|(i, c)| match c {
                CoordSet::Zero => 1.0 - profile.p(i + 1),
                CoordSet::One => profile.p(i + 1),
                CoordSet::Both => 1.0,
            })
            .product()
    }

    fn contains(&self, cell: usize) -> bool {
        self.coords
            .iter()
            .enumerate()
            .all(|(i, c)| c.admits((cell >> i) & 1))
    }

    /// Bitset over the 2^n cube cells covered by this rectangle.
    fn cell_mask(&self, n: usize) -> u32 {
        (0..(1usize << n))
            .filter(|&cell| self.contains(cell))
            .fold(0u32, |acc, cell| acc | (1 << cell))
    }
}

/// A partition of the n-cube into rectangles, with part probabilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionCandidate {
    pub parts: Vec<Rectangle>,
    pub probabilities: Vec<f64>,
}

impl PartitionCandidate {
    /// Entropy of the part distribution.
    pub fn entropy(&self) -> f64 {
        -self.probabilities.iter().map(|&q| xlog2x(q)).sum::<f64>()
    }

    /// Re-verifies the structural constraints: parts disjointly cover the
    /// cube, every part is monochromatic under the threshold, and no part
    /// holds two elements of the weight-{theta-1, theta} fooling set.
    pub fn verify(&self, n: usize, theta: usize) -> bool {
        let full = if n == 32 { u32::MAX } else { (1u32 << (1 << n)) - 1 };
        let mut covered = 0u32;
        for rect in &self.parts {
            if rect.coords.len() != n {
                return false;
            }
            let mask = rect.cell_mask(n);
            if mask & covered != 0 {
                return false;
            }
            covered |= mask;
            if !monochromatic(mask, n, theta) || fooling_members(mask, n, theta) > 1 {
                return false;
            }
        }
        covered == full
    }
}

/// The minimizing partition and its entropy in bits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionBound {
    pub bits: f64,
    pub partition: PartitionCandidate,
}

fn weight(cell: usize) -> usize {
    cell.count_ones() as usize
}

fn monochromatic(mask: u32, n: usize, theta: usize) -> bool {
    let mut seen = [false, false];
    for cell in 0..(1usize << n) {
        if mask & (1 << cell) != 0 {
            seen[(weight(cell) >= theta) as usize] = true;
        }
    }
    !(seen[0] && seen[1])
}

fn fooling_members(mask: u32, n: usize, theta: usize) -> usize {
    (0..(1usize << n))
        .filter(|&cell| mask & (1 << cell) != 0)
        .filter(|&cell| weight(cell) == theta || weight(cell) + 1 == theta)
        .count()
}

/// Every rectangle valid for the given threshold, with its cell mask.
fn valid_rectangles(n: usize, theta: usize) -> Vec<(Rectangle, u32)> {
    let mut rects = Vec::new();
    let mut coords = vec![CoordSet::Zero; n];
    enumerate_rects(n, 0, &mut coords, &mut rects);
    rects
        .into_iter()
        .map(|r| {
            let mask = r.cell_mask(n);
            (r, mask)
        })
        .filter(|(_, mask)| monochromatic(*mask, n, theta) && fooling_members(*mask, n, theta) <= 1)
        .collect()
}

fn enumerate_rects(
    n: usize,
    i: usize,
    coords: &mut Vec<CoordSet>,
    out: &mut Vec<Rectangle>,
) {
    if i == n {
        out.push(Rectangle {
            coords: coords.clone(),
        });
        return;
    }
    for c in [CoordSet::Zero, CoordSet::One, CoordSet::Both] {
        coords[i] = c;
        enumerate_rects(n, i + 1, coords, out);
    }
}

/// All exact covers of the cube by valid rectangles. Canonical order: the
/// lowest uncovered cell picks its rectangle first, so each partition is
/// produced exactly once.
fn enumerate_partitions(n: usize, theta: usize) -> Vec<Vec<Rectangle>> {
    let rects = valid_rectangles(n, theta);
    let full: u32 = if (1 << n) == 32 {
        u32::MAX
    } else {
        (1u32 << (1 << n)) - 1
    };
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    cover(0, full, &rects, &mut chosen, &mut out);
    out
}

fn cover(
    covered: u32,
    full: u32,
    rects: &[(Rectangle, u32)],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<Rectangle>>,
) {
    if covered == full {
        out.push(chosen.iter().map(|&i| rects[i].0.clone()).collect());
        return;
    }
    let lowest = (!covered & full).trailing_zeros();
    let need = 1u32 << lowest;
    for (i, (_, mask)) in rects.iter().enumerate() {
        if mask & need != 0 && mask & covered == 0 {
            chosen.push(i);
            cover(covered | mask, full, rects, chosen, out);
            chosen.pop();
        }
    }
}

/// Minimum partition entropy over all valid partitions for the threshold.
pub fn partition_lower_bound(profile: &ProbProfile, theta: usize) -> Result<PartitionBound> {
    let n = profile.n();
    if n > PARTITION_NODE_CAP {
        return Err(Error::SizeCap {
            what: "partition entropy search",
            n,
            cap: PARTITION_NODE_CAP,
        });
    }
    if theta < 1 || theta > n {
        return Err(Error::ThresholdRange { theta, max: n });
    }
    let partitions = enumerate_partitions(n, theta);
    best_partition(profile, &partitions)
        .map(|(bits, partition)| PartitionBound { bits, partition })
}

fn best_partition(
    profile: &ProbProfile,
    partitions: &[Vec<Rectangle>],
) -> Result<(f64, PartitionCandidate)> {
    let mut best: Option<(f64, PartitionCandidate)> = None;
    for parts in partitions {
        let probabilities: Vec<f64> = parts.iter().map(|r| r.probability(profile)).collect();
        let candidate = PartitionCandidate {
            parts: parts.clone(),
            probabilities,
        };
        let h = candidate.entropy();
        if best.as_ref().is_none_or(|(b, _)| h < *b) {
            best = Some((h, candidate));
        }
    }
    best.ok_or(Error::UnsupportedKind {
        op: "partition search found no valid partition",
    })
}

/// One grid point of the three-node comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub theta: usize,
    pub probs: Vec<f64>,
    pub lower_bits: f64,
    pub upper_bits: f64,
    pub gap: f64,
}

/// Partition lower bound against coherent DP cost across a probability grid
/// at n = 3, for every threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub rows: Vec<ConjectureRow>,
    pub max_gap: f64,
    /// True when every gap is within 1e-6.
    pub equal: bool,
}

/// Sweeps all ordered triples from `grid` (sorted into profiles), comparing
/// the partition entropy minimum with the coherent DP cost at n = 3.
pub fn conjecture_check(grid: &[f64]) -> Result<ConjectureReport> {
    let mut rows = Vec::new();
    let mut max_gap: f64 = 0.0;
    for theta in 1..=3usize {
        let partitions = enumerate_partitions(3, theta);
        for &p1 in grid {
            for &p2 in grid {
                for &p3 in grid {
                    let mut probs = vec![p1, p2, p3];
                    probs.sort_by(f64::total_cmp);
                    let profile = ProbProfile::new(probs.clone())?;
                    let (lower_bits, _) = best_partition(&profile, &partitions)?;
                    let upper_bits =
                        solve_dp(&profile, theta, CostKind::BinaryEntropy)?.root_cost();
                    let gap = (upper_bits - lower_bits).abs();
                    max_gap = max_gap.max(gap);
                    rows.push(ConjectureRow {
                        theta,
                        probs,
                        lower_bits,
                        upper_bits,
                        gap,
                    });
                }
            }
        }
    }
    Ok(ConjectureReport {
        rows,
        max_gap,
        equal: max_gap <= 1e-6,
    })
}

//! Max-norm k-d tree used by the estimator above the brute-force cutoff.
//!
//! The tree answers exactly two queries — k-th smallest distance to a query
//! point (query included when it is part of the data) and the number of
//! points inside an axis-aligned max-norm ball — and must return *bit
//! identical* answers to the quadratic scan: every comparison runs on the
//! same f64 values the scan would produce, and subtree short-circuits only
//! fire when the node's bounding box certifies the predicate for every point
//! inside.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;


/// Max-norm (Chebyshev) distance.
pub(crate) fn chebyshev(a: &[f64], b: &[f64]) -> f64 {
    let mut m = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        let d = (x - y).abs();
        if d > m {
            m = d;
        }
    }
    m
}

const LEAF_SIZE: usize = 16;
const NO_CHILD: u32 = u32::MAX;

struct Node {
    start: u32,
    end: u32,
    left: u32,
    right: u32,
}

pub(crate) struct KdTree<'a> {
    data: &'a [f64],
    dim: usize,
    perm: Vec<u32>,
    nodes: Vec<Node>,
    bounds: Vec<f64>, // per node: dim lows then dim highs
}

/// f64 ordered by total order; used as a max-heap key.
#[derive(PartialEq)]
struct Dist(f64);

impl Eq for Dist {}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl<'a> KdTree<'a> {
    pub(crate) fn build(data: &'a [f64], n: usize, dim: usize) -> Self {
        debug_assert_eq!(data.len(), n * dim);
        let mut tree = KdTree {
            data,
            dim,
            perm: (0..n as u32).collect(),
            nodes: Vec::new(),
            bounds: Vec::new(),
        };
        if n > 0 {
            tree.build_range(0, n);
        }
        tree
    }

    fn point(&self, id: u32) -> &[f64] {
        let base = id as usize * self.dim;
        &self.data[base..base + self.dim]
    }

    fn build_range(&mut self, start: usize, end: usize) -> u32 {
        let node_id = self.nodes.len() as u32;
        self.nodes.push(Node {
            start: start as u32,
            end: end as u32,
            left: NO_CHILD,
            right: NO_CHILD,
        });
        let bounds_base = self.bounds.len();
        self.bounds
            .extend(core::iter::repeat(f64::INFINITY).take(self.dim));
        self.bounds
            .extend(core::iter::repeat(f64::NEG_INFINITY).take(self.dim));
        let (data, dim) = (self.data, self.dim);
        for idx in start..end {
            let id = self.perm[idx] as usize;
            let p = &data[id * dim..(id + 1) * dim];
            for (d, &v) in p.iter().enumerate() {
                if v < self.bounds[bounds_base + d] {
                    self.bounds[bounds_base + d] = v;
                }
                if v > self.bounds[bounds_base + dim + d] {
                    self.bounds[bounds_base + dim + d] = v;
                }
            }
        }
        let mut split_axis = 0;
        let mut widest = -1.0f64;
        for d in 0..self.dim {
            let extent = self.bounds[bounds_base + self.dim + d] - self.bounds[bounds_base + d];
            if extent > widest {
                widest = extent;
                split_axis = d;
            }
        }
        if end - start <= LEAF_SIZE || widest <= 0.0 {
            return node_id;
        }
        let mid = (start + end) / 2;
        let (dim, data) = (self.dim, self.data);
        self.perm[start..end].select_nth_unstable_by(mid - start, |&a, &b| {
            data[a as usize * dim + split_axis].total_cmp(&data[b as usize * dim + split_axis])
        });
        let left = self.build_range(start, mid);
        let right = self.build_range(mid, end);
        self.nodes[node_id as usize].left = left;
        self.nodes[node_id as usize].right = right;
        node_id
    }

    fn box_min_dist(&self, node: u32, query: &[f64]) -> f64 {
        let base = node as usize * 2 * self.dim;
        let mut m = 0.0f64;
        for d in 0..self.dim {
            let lo = self.bounds[base + d];
            let hi = self.bounds[base + self.dim + d];
            let q = query[d];
            let axis = if q < lo {
                lo - q
            } else if q > hi {
                q - hi
            } else {
                0.0
            };
            if axis > m {
                m = axis;
            }
        }
        m
    }

    fn box_max_dist(&self, node: u32, query: &[f64]) -> f64 {
        let base = node as usize * 2 * self.dim;
        let mut m = 0.0f64;
        for d in 0..self.dim {
            let lo = self.bounds[base + d];
            let hi = self.bounds[base + self.dim + d];
            let q = query[d];
            let axis = (q - lo).abs().max((q - hi).abs());
            if axis > m {
                m = axis;
            }
        }
        m
    }

    /// Distance to the k-th closest point (the query itself counts when it is
    /// one of the stored points). `k` must not exceed the point count.
    pub(crate) fn kth_distance(&self, query: &[f64], k: usize) -> f64 {
        debug_assert!(k >= 1 && k <= self.perm.len());
        let mut heap: BinaryHeap<Dist> = BinaryHeap::with_capacity(k + 1);
        self.knn_visit(0, query, k, &mut heap);
        heap.peek().expect("k >= 1").0
    }

    fn knn_visit(&self, node: u32, query: &[f64], k: usize, heap: &mut BinaryHeap<Dist>) {
        if heap.len() == k && self.box_min_dist(node, query) >= heap.peek().unwrap().0 {
            return;
        }
        let n = &self.nodes[node as usize];
        if n.left == NO_CHILD {
            for idx in n.start..n.end {
                let d = chebyshev(query, self.point(self.perm[idx as usize]));
                if heap.len() < k {
                    heap.push(Dist(d));
                } else if d < heap.peek().unwrap().0 {
                    heap.pop();
                    heap.push(Dist(d));
                }
            }
            return;
        }
        // nearer child first for tighter pruning
        let (first, second) =
            if self.box_min_dist(n.left, query) <= self.box_min_dist(n.right, query) {
                (n.left, n.right)
            } else {
                (n.right, n.left)
            };
        self.knn_visit(first, query, k, heap);
        self.knn_visit(second, query, k, heap);
    }

    /// Number of stored points within `radius` of `query` under the max
    /// norm; `strict` selects `< radius` versus `<= radius`.
    pub(crate) fn count_within(&self, query: &[f64], radius: f64, strict: bool) -> usize {
        self.count_visit(0, query, radius, strict)
    }

    fn count_visit(&self, node: u32, query: &[f64], radius: f64, strict: bool) -> usize {
        let min = self.box_min_dist(node, query);
        if (strict && min >= radius) || (!strict && min > radius) {
            return 0;
        }
        let n = &self.nodes[node as usize];
        let max = self.box_max_dist(node, query);
        if (strict && max < radius) || (!strict && max <= radius) {
            return (n.end - n.start) as usize;
        }
        if n.left == NO_CHILD {
            return (n.start..n.end)
                .filter(|&idx| {
                    let d = chebyshev(query, self.point(self.perm[idx as usize]));
                    if strict {
                        d < radius
                    } else {
                        d <= radius
                    }
                })
                .count();
        }
        self.count_visit(n.left, query, radius, strict)
            + self.count_visit(n.right, query, radius, strict)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;

    fn random_points(n: usize, dim: usize, seed: u64) -> Vec<f64> {
        let mut rng = SeededRng::new(seed);
        // quantize so duplicates and ties actually occur
        (0..n * dim)
            .map(|_| (rng.normal() * 4.0).round() / 4.0)
            .collect()
    }

    #[test]
    fn matches_quadratic_scan_exactly() {
        for seed in 0..4 {
            let n = 300;
            let dim = 3;
            let data = random_points(n, dim, seed);
            let tree = KdTree::build(&data, n, dim);
            for i in (0..n).step_by(7) {
                let q = &data[i * dim..(i + 1) * dim];
                let mut dists: Vec<f64> = (0..n)
                    .map(|j| chebyshev(q, &data[j * dim..(j + 1) * dim]))
                    .collect();
                dists.sort_by(f64::total_cmp);
                for k in [1usize, 2, 5, 17] {
                    assert_eq!(tree.kth_distance(q, k).to_bits(), dists[k - 1].to_bits());
                }
                for r in [0.0, 0.25, 0.5, 1.3] {
                    let strict = dists.iter().filter(|&&d| d < r).count();
                    let loose = dists.iter().filter(|&&d| d <= r).count();
                    assert_eq!(tree.count_within(q, r, true), strict);
                    assert_eq!(tree.count_within(q, r, false), loose);
                }
            }
        }
    }

    #[test]
    fn handles_all_identical_points() {
        let data = vec![1.0; 50 * 2];
        let tree = KdTree::build(&data, 50, 2);
        assert_eq!(tree.kth_distance(&[1.0, 1.0], 50), 0.0);
        assert_eq!(tree.count_within(&[1.0, 1.0], 0.0, false), 50);
        assert_eq!(tree.count_within(&[1.0, 1.0], 0.0, true), 0);
    }
}

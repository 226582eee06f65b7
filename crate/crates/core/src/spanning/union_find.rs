//! Disjoint-set forest with union by rank and full path compression.

use crate::graph::NodeId;

#[derive(Debug, Clone)]
pub struct DisjointSet {
    parent: Vec<NodeId>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n as NodeId).collect(),
            rank: vec![0; n],
        }
    }

    /// Representative of `x`'s set; compresses the walked path.
    pub fn find(&mut self, x: NodeId) -> NodeId {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while cur != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    /// Merges the sets holding `a` and `b`; false if already joined.
    /// Rank ties resolve to the lower root id, keeping runs deterministic.
    pub fn union(&mut self, a: NodeId, b: NodeId) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        use std::cmp::Ordering;
        match self.rank[ra as usize].cmp(&self.rank[rb as usize]) {
            Ordering::Greater => self.parent[rb as usize] = ra,
            Ordering::Less => self.parent[ra as usize] = rb,
            Ordering::Equal => {
                let (root, child) = if ra < rb { (ra, rb) } else { (rb, ra) };
                self.parent[child as usize] = root;
                self.rank[root as usize] += 1;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_reports_merges() {
        let mut ds = DisjointSet::new(4);
        assert!(ds.union(0, 1));
        assert!(ds.union(2, 3));
        assert!(!ds.union(1, 0));
        assert!(ds.union(0, 3));
        assert!(!ds.union(2, 1));
    }

    #[test]
    fn find_is_idempotent_after_compression() {
        let mut ds = DisjointSet::new(6);
        ds.union(0, 1);
        ds.union(1, 2);
        ds.union(2, 3);
        let r = ds.find(3);
        assert_eq!(ds.find(3), r);
        assert_eq!(ds.find(0), r);
    }

    #[test]
    fn rank_tie_goes_to_lower_id() {
        let mut ds = DisjointSet::new(2);
        ds.union(1, 0);
        assert_eq!(ds.find(1), 0);
    }
}

/// Disjoint-set forest over `0..len` with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`. Returns `false` when they were already
    /// in the same set.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Groups `0..len` by representative; groups are ordered by their
    /// smallest member and each group is ascending.
    pub fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: Vec<Option<usize>> = vec![None; self.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.len() {
            let r = self.find(x);
            match by_root[r] {
                Some(slot) => out[slot].push(x),
                None => {
                    by_root[r] = Some(out.len());
                    out.push(vec![x]);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_reports_cycles() {
        let mut ds = DisjointSets::new(3);
        assert!(ds.union(0, 1));
        assert!(ds.union(1, 2));
        assert!(!ds.union(2, 0));
        assert_eq!(ds.groups(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn groups_are_ordered_by_smallest_member() {
        let mut ds = DisjointSets::new(5);
        ds.union(4, 1);
        ds.union(3, 0);
        assert_eq!(ds.groups(), vec![vec![0, 3], vec![1, 4], vec![2]]);
    }
}

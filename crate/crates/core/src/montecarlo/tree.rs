/// Binary sum tree over event rates: `O(log n)` update and selection.
pub(crate) struct RateTree {
    size: usize,
    nodes: Vec<f64>,
}

impl RateTree {
    pub fn new(len: usize) -> Self {
        let size = len.next_power_of_two();
        Self { size, nodes: vec![0.0; 2 * size] }
    }

    pub fn set(&mut self, i: usize, rate: f64) {
        let mut k = i + self.size;
        self.nodes[k] = rate;
        while k > 1 {
            k /= 2;
            self.nodes[k] = self.nodes[2 * k] + self.nodes[2 * k + 1];
        }
    }

    pub fn total(&self) -> f64 {
        self.nodes[1]
    }

    /// Leaf whose cumulative interval contains `x ∈ [0, total)`.
    pub fn find(&self, mut x: f64) -> usize {
        let mut k = 1;
        while k < self.size {
            let left = self.nodes[2 * k];
            if x < left || self.nodes[2 * k + 1] <= 0.0 {
                k *= 2;
            } else {
                x -= left;
                k = 2 * k + 1;
            }
        }
        k - self.size
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selects_by_cumulative_rate() {
        let mut t = RateTree::new(5);
        for (i, r) in [1.0, 0.0, 2.0, 0.5, 0.0].into_iter().enumerate() {
            t.set(i, r);
        }
        assert_eq!(t.total(), 3.5);
        assert_eq!(t.find(0.5), 0);
        assert_eq!(t.find(1.5), 2);
        assert_eq!(t.find(3.2), 3);
        assert_eq!(t.find(3.4999), 3);
    }
}

use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::wear::SegmentationMask;

/// Square count matrix; rows are ground-truth classes, columns predicted ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u64>>", into = "Vec<Vec<u64>>")]
pub struct ConfusionMatrix {
    n: usize,
    counts: Vec<u64>,
}

impl ConfusionMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            counts: vec![0; n * n],
        }
    }

    /// Counts one pair. Labels are assumed valid for `n` classes.
    pub fn from_pair(pred: &SegmentationMask, gt: &SegmentationMask, n: usize) -> Self {
        let mut m = Self::zeros(n);
        for (&p, &g) in pred.labels().iter().zip(gt.labels()) {
            m.counts[usize::from(g) * n + usize::from(p)] += 1;
        }
        m
    }

    pub fn n_classes(&self) -> usize {
        self.n
    }

    pub fn get(&self, gt: usize, pred: usize) -> u64 {
        self.counts[gt * self.n + pred]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.counts.chunks(self.n.max(1))
    }

    pub fn trace(&self) -> u64 {
        (0..self.n).map(|c| self.get(c, c)).sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn ground_truth_totals(&self) -> Vec<u64> {
        self.rows().map(|r| r.iter().sum()).collect()
    }

    pub fn predicted_totals(&self) -> Vec<u64> {
        (0..self.n).map(|p| (0..self.n).map(|g| self.get(g, p)).sum()).collect()
    }

    /// trace / total; 0 for an empty matrix.
    pub fn accuracy(&self) -> f64 {
        let total = self.total();
        if total == 0 {
            0.0
        } else {
            self.trace() as f64 / total as f64
        }
    }
}

impl Add for ConfusionMatrix {
    type Output = ConfusionMatrix;

    fn add(mut self, rhs: ConfusionMatrix) -> ConfusionMatrix {
        assert_eq!(self.n, rhs.n, "confusion matrices of different size");
        for (a, b) in self.counts.iter_mut().zip(rhs.counts) {
            *a += b;
        }
        self
    }
}

impl From<ConfusionMatrix> for Vec<Vec<u64>> {
    fn from(m: ConfusionMatrix) -> Self {
        m.rows().map(<[u64]>::to_vec).collect()
    }
}

impl TryFrom<Vec<Vec<u64>>> for ConfusionMatrix {
    type Error = String;

    fn try_from(rows: Vec<Vec<u64>>) -> Result<Self, Self::Error> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(format!("confusion row {bad} does not have {n} entries"));
        }
        Ok(Self {
            n,
            counts: rows.concat(),
        })
    }
}

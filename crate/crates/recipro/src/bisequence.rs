//! Paired out-/in-degree sequences and their summary quantities.

use crate::error::{Error, Result};

/// A paired out-degree / in-degree sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiSequence {
    d_plus: Vec<usize>,
    d_minus: Vec<usize>,
}

impl BiSequence {
    pub fn new(d_plus: Vec<usize>, d_minus: Vec<usize>) -> Result<BiSequence> {
        if d_plus.len() != d_minus.len() {
            return Err(Error::DimensionMismatch {
                left: d_plus.len(),
                right: d_minus.len(),
            });
        }
        Ok(BiSequence { d_plus, d_minus })
    }

    pub fn len(&self) -> usize {
        self.d_plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d_plus.is_empty()
    }

    pub fn d_plus(&self) -> &[usize] {
        &self.d_plus
    }

    pub fn d_minus(&self) -> &[usize] {
        &self.d_minus
    }

    pub fn sum_out(&self) -> u128 {
        self.d_plus.iter().map(|&d| d as u128).sum()
    }

    pub fn sum_in(&self) -> u128 {
        self.d_minus.iter().map(|&d| d as u128).sum()
    }

    /// Element-wise minimum of the two sequences.
    pub fn min_seq(&self) -> Vec<usize> {
        self.d_plus
            .iter()
            .zip(&self.d_minus)
            .map(|(&p, &m)| p.min(m))
            .collect()
    }

    /// Element-wise maximum of the two sequences.
    pub fn max_seq(&self) -> Vec<usize> {
        self.d_plus
            .iter()
            .zip(&self.d_minus)
            .map(|(&p, &m)| p.max(m))
            .collect()
    }

    /// Summary quantities; see [`degree_summary`].
    pub fn summary(&self) -> Result<DegreeSummary> {
        degree_summary(self)
    }
}

/// Derived totals of a bi-sequence with equal degree sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSummary {
    /// Total number of edges of any realization.
    pub epsilon: usize,
    /// Total balanced degree: the l1-norm of the min sequence. Upper
    /// bound on the number of reciprocated edges.
    pub beta: usize,
    /// Total unbalanced degree: half the l1-distance between the out-
    /// and in-sequences.
    pub nu: usize,
    pub min_seq: Vec<usize>,
    pub max_seq: Vec<usize>,
}

/// Computes `epsilon`, `beta`, `nu` and the min/max sequences.
///
/// Errors with [`Error::UnbalancedSums`] when the degree sums differ,
/// since no digraph exists and the totals are undefined.
pub fn degree_summary(bs: &BiSequence) -> Result<DegreeSummary> {
    let out_sum = bs.sum_out();
    let in_sum = bs.sum_in();
    if out_sum != in_sum {
        return Err(Error::UnbalancedSums { out_sum, in_sum });
    }
    let min_seq = bs.min_seq();
    let max_seq = bs.max_seq();
    let beta: usize = min_seq.iter().sum();
    let abs_diff: usize = bs
        .d_plus
        .iter()
        .zip(&bs.d_minus)
        .map(|(&p, &m)| p.abs_diff(m))
        .sum();
    debug_assert_eq!(abs_diff % 2, 0, "equal sums force an even difference");
    let epsilon = out_sum as usize;
    let nu = abs_diff / 2;
    debug_assert_eq!(epsilon, beta + nu);
    Ok(DegreeSummary {
        epsilon,
        beta,
        nu,
        min_seq,
        max_seq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(p: &[usize], m: &[usize]) -> BiSequence {
        BiSequence::new(p.to_vec(), m.to_vec()).unwrap()
    }

    #[test]
    fn relay_star_summary() {
        // Source (4,0), four middles (1,1), sink (0,4).
        let s = bs(&[4, 1, 1, 1, 1, 0], &[0, 1, 1, 1, 1, 4])
            .summary()
            .unwrap();
        assert_eq!((s.epsilon, s.beta, s.nu), (8, 4, 4));
    }

    #[test]
    fn middleman_summary() {
        // Two sources (1,0), two sinks (0,1), hub (2,2).
        let s = bs(&[1, 1, 0, 0, 2], &[0, 0, 1, 1, 2]).summary().unwrap();
        assert_eq!((s.epsilon, s.beta, s.nu), (4, 2, 2));
    }

    #[test]
    fn nearly_balanced_summary() {
        let s = bs(&[1, 3, 2, 2, 2], &[0, 4, 2, 2, 2]).summary().unwrap();
        assert_eq!((s.epsilon, s.beta, s.nu), (10, 9, 1));
        assert_eq!(s.min_seq, vec![0, 3, 2, 2, 2]);
        assert_eq!(s.max_seq, vec![1, 4, 2, 2, 2]);
    }

    #[test]
    fn unbalanced_sums_rejected() {
        assert!(matches!(
            bs(&[2, 0], &[0, 1]).summary(),
            Err(Error::UnbalancedSums {
                out_sum: 2,
                in_sum: 1
            })
        ));
    }

    #[test]
    fn length_mismatch_rejected() {
        assert!(matches!(
            BiSequence::new(vec![1], vec![1, 0]),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        ));
    }
}

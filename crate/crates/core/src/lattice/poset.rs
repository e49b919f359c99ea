use crate::error::{Error, Result};

/// Element identity is by index into the carrier; labels are cosmetic.
pub type Elem = usize;

/// How the pairs handed to [`build_poset`] are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode {
    /// Pairs are generating relations; the reflexive-transitive closure is taken.
    Covers,
    /// Pairs are the full order; only the diagonal is implied.
    FullLeq,
}

/// A finite partial order stored as a dense `n x n` relation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    size: usize,
    leq: Vec<bool>,
    labels: Vec<String>,
}

impl FinitePoset {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.size + b]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for {} elements",
                labels.len(),
                self.size
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Builds a poset from a relation predicate; the diagonal is implied.
    pub fn from_relation(size: usize, rel: impl Fn(Elem, Elem) -> bool) -> Result<Self> {
        let mut leq = vec![false; size * size];
        for a in 0..size {
            for b in 0..size {
                leq[a * size + b] = a == b || rel(a, b);
            }
        }
        let poset = FinitePoset { size, leq, labels: default_labels(size) };
        poset.validate()?;
        Ok(poset)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let n = self.size;
        for a in 0..n {
            for b in (a + 1)..n {
                if self.leq(a, b) && self.leq(b, a) {
                    return Err(Error::CycleDetected {
                        a: self.labels[a].clone(),
                        b: self.labels[b].clone(),
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(b, c) && !self.leq(a, c) {
                        return Err(Error::NotTransitive {
                            a: self.labels[a].clone(),
                            b: self.labels[b].clone(),
                            c: self.labels[c].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Immediate successor pairs (the Hasse diagram), in index order.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let n = self.size;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between = (0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

/// Builds a finite poset on `0..n` from index pairs `(a, b)` meaning `a <= b`.
pub fn build_poset(n: usize, pairs: &[(Elem, Elem)], mode: PairMode) -> Result<FinitePoset> {
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for &(a, b) in pairs {
        for idx in [a, b] {
            if idx >= n {
                return Err(Error::IndexOutOfRange { index: idx, size: n });
            }
        }
        leq[a * n + b] = true;
    }
    if mode == PairMode::Covers {
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
    let poset = FinitePoset { size: n, leq, labels: default_labels(n) };
    poset.validate()?;
    Ok(poset)
}

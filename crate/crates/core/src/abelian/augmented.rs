use crate::error::{AugmentationFailure, Error, Result};
use crate::group::FiniteGroup;
use crate::quandle::FiniteQuandle;

/// A quandle with a right action of a finite group and an augmentation
/// `|·|: Q → G`. `action[q][g]` is `q·g`; `aug[q]` is `|q|`.
#[derive(Debug, Clone)]
pub struct AugmentedQuandle {
    pub quandle: FiniteQuandle,
    pub group: FiniteGroup,
    pub action: Vec<Vec<usize>>,
    pub aug: Vec<usize>,
}

fn fail(kind: AugmentationFailure, witness: Vec<usize>) -> Result<()> {
    Err(Error::Augmentation { kind, witness })
}

impl AugmentedQuandle {
    /// `Inn(Q)` acting naturally, with `|y| = S_y`. Group elements are the
    /// indices of the enumerated inner group.
    pub fn inner(q: &FiniteQuandle, bound: usize) -> Result<AugmentedQuandle> {
        let inn = q.inn(bound)?;
        let action = (0..q.len()).map(|x| inn.elements().iter().map(|g| g.apply(x)).collect()).collect();
        let aug = (0..q.len()).map(|y| inn.index_of(&q.symmetry(y)).expect("generator")).collect();
        Ok(AugmentedQuandle { quandle: q.clone(), group: inn.to_finite_group(), action, aug })
    }

    /// Checks, in order: a right action by automorphisms, `q·|q| = q`,
    /// `|q·g| = g⁻¹|q|g`, and `x·|y| = x ◁ y`.
    pub fn verify(&self) -> Result<()> {
        let (q, g) = (&self.quandle, &self.group);
        let (n, m) = (q.len(), g.order());
        if self.action.len() != n || self.action.iter().any(|r| r.len() != m || r.iter().any(|&v| v >= n)) {
            return Err(Error::Malformed("action table has the wrong shape".into()));
        }
        if self.aug.len() != n || self.aug.iter().any(|&a| a >= m) {
            return Err(Error::Malformed("augmentation has the wrong shape".into()));
        }
        let act = |x: usize, a: usize| self.action[x][a];
        for x in 0..n {
            if act(x, g.identity()) != x {
                return fail(AugmentationFailure::Action, vec![x, g.identity()]);
            }
            for a in 0..m {
                for b in 0..m {
                    if act(act(x, a), b) != act(x, g.mul(a, b)) {
                        return fail(AugmentationFailure::Action, vec![x, a, b]);
                    }
                }
            }
        }
        for a in 0..m {
            for x in 0..n {
                for y in 0..n {
                    if act(q.op(x, y), a) != q.op(act(x, a), act(y, a)) {
                        return fail(AugmentationFailure::Action, vec![x, y, a]);
                    }
                }
            }
        }
        for x in 0..n {
            if act(x, self.aug[x]) != x {
                return fail(AugmentationFailure::AQ1, vec![x]);
            }
        }
        for x in 0..n {
            for a in 0..m {
                if self.aug[act(x, a)] != g.mul(g.mul(g.inv(a), self.aug[x]), a) {
                    return fail(AugmentationFailure::AQ2, vec![x, a]);
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if act(x, self.aug[y]) != q.op(x, y) {
                    return fail(AugmentationFailure::OperationMismatch, vec![x, y]);
                }
            }
        }
        Ok(())
    }
}

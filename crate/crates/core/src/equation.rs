//! Per-row symbolic equations in normalized form.
//!
//! Row `i` is held as `x[i] = Σ β_k·b[k] + Σ α_m·x[m]`, with the diagonal
//! division already folded into the coefficients. The initial system is
//! forward substitution written out in closed form:
//! `β_i = 1/d_i` and `α_m = -L[i][m]/d_i`.

use serde::Serialize;

use crate::matrix_io::LowerTriangularSystem;

/// Sparse coefficient map kept as a vector sorted by index.
///
/// At most one coefficient per index and no stored coefficient is exactly
/// zero, so repeated accesses to the same `x` or `b` entry are always
/// grouped into one term.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Terms(Vec<(usize, f64)>);

impl Terms {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    /// Build from arbitrary pairs; repeated indices are summed.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, f64)>) -> Self {
        let mut v: Vec<(usize, f64)> = pairs.into_iter().collect();
        v.sort_by_key(|&(k, _)| k);
        let mut out: Vec<(usize, f64)> = Vec::with_capacity(v.len());
        for (k, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == k => last.1 += c,
                _ => out.push((k, c)),
            }
        }
        out.retain(|&(_, c)| c != 0.0);
        Self(out)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (usize, f64)> + '_ {
        self.0.iter().copied()
    }

    pub fn indices(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.0.iter().map(|&(k, _)| k)
    }

    pub fn get(&self, index: usize) -> Option<f64> {
        self.0
            .binary_search_by_key(&index, |&(k, _)| k)
            .ok()
            .map(|p| self.0[p].1)
    }

    pub fn remove(&mut self, index: usize) -> Option<f64> {
        let pos = self.0.binary_search_by_key(&index, |&(k, _)| k).ok()?;
        Some(self.0.remove(pos).1)
    }

    /// `self += scale * other`, dropping coefficients that land on exactly 0.
    pub fn add_scaled(&mut self, scale: f64, other: &Terms) {
        if other.is_empty() {
            return;
        }
        let mut merged = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(ka, ca)), Some(&&(kb, cb))) => {
                    if ka < kb {
                        merged.push((ka, ca));
                        a.next();
                    } else if kb < ka {
                        push_nonzero(&mut merged, kb, scale * cb);
                        b.next();
                    } else {
                        push_nonzero(&mut merged, ka, ca + scale * cb);
                        a.next();
                        b.next();
                    }
                }
                (Some(&&(ka, ca)), None) => {
                    merged.push((ka, ca));
                    a.next();
                }
                (None, Some(&&(kb, cb))) => {
                    push_nonzero(&mut merged, kb, scale * cb);
                    b.next();
                }
                (None, None) => break,
            }
        }
        self.0 = merged;
    }

    /// `Σ c_k · v[k]`, summed in ascending index order.
    pub fn dot(&self, v: &[f64]) -> f64 {
        self.0.iter().fold(0.0, |acc, &(k, c)| acc + c * v[k])
    }
}

fn push_nonzero(out: &mut Vec<(usize, f64)>, k: usize, c: f64) {
    if c != 0.0 {
        out.push((k, c));
    }
}

/// One row's equation `x[row] = Σ β·b + Σ α·x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Equation {
    pub row: usize,
    pub x_terms: Terms,
    pub b_terms: Terms,
}

impl Equation {
    /// Total number of terms `p + q`.
    pub fn term_count(&self) -> usize {
        self.x_terms.len() + self.b_terms.len()
    }

    /// `2·(p+q) - 1`: one multiply per term, one add between terms.
    pub fn flops(&self) -> usize {
        (2 * self.term_count()).saturating_sub(1)
    }

    /// Evaluate the right-hand side: b-terms first, then x-terms, each in
    /// ascending index order (the same order the emitted C statements use).
    pub fn evaluate(&self, x: &[f64], b: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (k, c) in self.b_terms.iter() {
            acc += c * b[k];
        }
        for (m, c) in self.x_terms.iter() {
            acc += c * x[m];
        }
        acc
    }
}

/// All row equations plus a log of the substitutions applied to each row.
#[derive(Debug, Clone, PartialEq)]
pub struct EquationSystem {
    pub(crate) equations: Vec<Equation>,
    pub(crate) provenance: Vec<Vec<usize>>,
}

impl EquationSystem {
    /// Closed form of serial forward substitution.
    pub fn from_lower(l: &LowerTriangularSystem) -> Self {
        let equations = (0..l.n())
            .map(|i| {
                let d = l.diag()[i];
                let (cols, vals) = l.off_diagonal(i);
                Equation {
                    row: i,
                    x_terms: Terms::from_pairs(cols.iter().zip(vals).map(|(&m, &v)| (m, -v / d))),
                    b_terms: Terms::from_pairs([(i, 1.0 / d)]),
                }
            })
            .collect();
        Self {
            equations,
            provenance: vec![Vec::new(); l.n()],
        }
    }

    /// Build from explicit equations. Row `i` must be `equations[i]` and
    /// every x-term must reference a smaller row.
    pub fn from_equations(equations: Vec<Equation>) -> crate::Result<Self> {
        for (i, eq) in equations.iter().enumerate() {
            if eq.row != i {
                return Err(crate::Error::Consistency(format!(
                    "equation at position {i} is for row {}",
                    eq.row
                )));
            }
            if let Some(m) = eq.x_terms.indices().find(|&m| m >= i) {
                return Err(crate::Error::Consistency(format!(
                    "row {i} references x[{m}], which is not an earlier row"
                )));
            }
        }
        let n = equations.len();
        Ok(Self {
            equations,
            provenance: vec![Vec::new(); n],
        })
    }

    pub fn n(&self) -> usize {
        self.equations.len()
    }

    pub fn equation(&self, i: usize) -> &Equation {
        &self.equations[i]
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    /// Rows substituted into row `i`, in application order.
    pub fn provenance(&self, i: usize) -> &[usize] {
        &self.provenance[i]
    }

    /// Total FLOPs, `Σ 2·(p+q) - 1` over rows.
    pub fn flop_count(&self) -> usize {
        self.equations.iter().map(Equation::flops).sum()
    }

    pub fn max_terms(&self) -> usize {
        self.equations
            .iter()
            .map(Equation::term_count)
            .max()
            .unwrap_or(0)
    }

    /// One `substitute i<-j` line per applied step, in row order.
    pub fn provenance_trace(&self) -> String {
        let mut out = String::new();
        for (i, steps) in self.provenance.iter().enumerate() {
            for j in steps {
                out.push_str(&format!("substitute {i}<-{j}\n"));
            }
        }
        out
    }
}

/// Classic CSR count, `2k+1` per row with `k` off-diagonal entries.
pub fn csr_flop_count(l: &LowerTriangularSystem) -> usize {
    (0..l.n()).map(|i| 2 * l.off_diagonal(i).0.len() + 1).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_io::CooEntry;

    #[test]
    fn diagonal_only_row() {
        let l = LowerTriangularSystem::from_coo(1, &[CooEntry::new(0, 0, 2.0)], false).unwrap();
        let sys = EquationSystem::from_lower(&l);
        let eq = sys.equation(0);
        assert_eq!(eq.b_terms.iter().collect::<Vec<_>>(), vec![(0, 0.5)]);
        assert!(eq.x_terms.is_empty());
        assert_eq!(sys.flop_count(), 1);
    }

    #[test]
    fn closed_form_of_2x2() {
        let entries = [
            CooEntry::new(0, 0, 2.0),
            CooEntry::new(1, 0, 3.0),
            CooEntry::new(1, 1, 4.0),
        ];
        let l = LowerTriangularSystem::from_coo(2, &entries, false).unwrap();
        let sys = EquationSystem::from_lower(&l);
        let eq = sys.equation(1);
        assert_eq!(eq.b_terms.iter().collect::<Vec<_>>(), vec![(1, 0.25)]);
        assert_eq!(eq.x_terms.iter().collect::<Vec<_>>(), vec![(0, -0.75)]);
        assert_eq!(sys.flop_count(), csr_flop_count(&l));
    }

    #[test]
    fn terms_merge_and_cancel() {
        let mut t = Terms::from_pairs([(3, 1.0), (1, 2.0), (3, 0.5)]);
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![(1, 2.0), (3, 1.5)]);
        t.add_scaled(-1.0, &Terms::from_pairs([(1, 2.0), (2, 4.0)]));
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![(2, -4.0), (3, 1.5)]);
        assert_eq!(t.remove(2), Some(-4.0));
        assert_eq!(t.remove(2), None);
        assert_eq!(t.get(3), Some(1.5));
        assert!(Terms::from_pairs([(0, 1.0), (0, -1.0)]).is_empty());
    }

    #[test]
    fn from_equations_rejects_forward_reference() {
        let eq = Equation {
            row: 0,
            x_terms: Terms::from_pairs([(1, 1.0)]),
            b_terms: Terms::new(),
        };
        assert!(EquationSystem::from_equations(vec![eq]).is_err());
    }
}

//! Matrix elements of the quadratic perturbation on the number-state basis.

use crate::error::CoreError;
use crate::Result;

/// Nonzero matrix elements of x² in units of ħ/(2Mω₀): the diagonal
/// d(n) = 2n+1 and the Δn = 2 off-diagonal o(n) = √((n+1)(n+2)) connecting
/// n ↔ n+2. No other element is nonzero (parity selection rule).
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingTable {
    diagonal: Vec<f64>,
    off_diagonal: Vec<f64>,
}

impl CouplingTable {
    pub fn n_max(&self) -> usize {
        self.diagonal.len() - 1
    }

    /// d(n) = 2n + 1.
    #[inline]
    pub fn diagonal(&self, n: usize) -> f64 {
        self.diagonal[n]
    }

    /// o(n) = √((n+1)(n+2)), the element between |n⟩ and |n+2⟩.
    #[inline]
    pub fn off_diagonal(&self, n: usize) -> f64 {
        self.off_diagonal[n]
    }

    pub(crate) fn diagonal_all(&self) -> &[f64] {
        &self.diagonal
    }

    pub(crate) fn off_diagonal_all(&self) -> &[f64] {
        &self.off_diagonal
    }
}

/// Tabulate the couplings for levels 0..=n_max.
pub fn coupling_table(n_max: usize) -> Result<CouplingTable> {
    if n_max < 2 {
        return Err(CoreError::InvalidInput(format!(
            "coupling table needs n_max ≥ 2, got {n_max}"
        )));
    }
    let diagonal = (0..=n_max).map(|n| 2.0 * n as f64 + 1.0).collect();
    let off_diagonal = (0..=n_max - 2)
        .map(|n| (((n + 1) * (n + 2)) as f64).sqrt())
        .collect();
    Ok(CouplingTable {
        diagonal,
        off_diagonal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Dense oracle: build (a + a†)² explicitly and read its entries.
    fn dense_x2_matrix(dim: usize) -> Vec<Vec<f64>> {
        // ladder operators on a dim×dim grid (one extra level so products
        // near the top edge stay exact)
        let mut a = vec![vec![0.0; dim + 2]; dim + 2];
        let mut adag = vec![vec![0.0; dim + 2]; dim + 2];
        for n in 1..dim + 2 {
            a[n - 1][n] = (n as f64).sqrt();
            adag[n][n - 1] = (n as f64).sqrt();
        }
        let add = |p: &Vec<Vec<f64>>, q: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
            p.iter()
                .zip(q)
                .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
                .collect()
        };
        let mul = |p: &Vec<Vec<f64>>, q: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
            let m = p.len();
            let mut out = vec![vec![0.0; m]; m];
            for i in 0..m {
                for k in 0..m {
                    if p[i][k] != 0.0 {
                        for j in 0..m {
                            out[i][j] += p[i][k] * q[k][j];
                        }
                    }
                }
            }
            out
        };
        let x = add(&a, &adag);
        let x2 = mul(&x, &x);
        x2.into_iter()
            .take(dim)
            .map(|row| row.into_iter().take(dim).collect())
            .collect()
    }

    #[test]
    fn ground_state_elements() {
        let table = coupling_table(12).unwrap();
        assert_eq!(table.diagonal(0), 1.0);
        assert!((table.off_diagonal(0) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn level_three_elements() {
        let table = coupling_table(12).unwrap();
        assert_eq!(table.diagonal(3), 7.0);
        assert!((table.off_diagonal(3) - 20f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn matches_dense_ladder_algebra() {
        let n_max = 10;
        let table = coupling_table(n_max).unwrap();
        let x2 = dense_x2_matrix(n_max + 1);
        for n in 0..=n_max {
            assert!(
                (x2[n][n] - table.diagonal(n)).abs() < 1e-12,
                "diagonal at {n}"
            );
            if n + 2 <= n_max {
                assert!(
                    (x2[n + 2][n] - table.off_diagonal(n)).abs() < 1e-12,
                    "off-diagonal at {n}"
                );
                assert!((x2[n][n + 2] - table.off_diagonal(n)).abs() < 1e-12);
            }
            // Parity selection rule: nothing one level apart.
            if n + 1 <= n_max {
                assert_eq!(x2[n][n + 1], 0.0);
                assert_eq!(x2[n + 1][n], 0.0);
            }
        }
    }

    #[test]
    fn rejects_tiny_ladder() {
        assert!(coupling_table(1).is_err());
    }
}

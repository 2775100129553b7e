//! Symmetric tridiagonal and periodic Jacobi matrices.

/// Symmetric tridiagonal matrix: `diag` of length N, `off` of length N−1.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

/// Periodic Jacobi matrix: tridiagonal plus the corner coupling b_N at
/// entries (1, N) and (N, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicJacobi {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    pub corner: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixError {
    Shape(String),
    NonFinite(String),
}

impl std::fmt::Display for MatrixError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MatrixError::Shape(m) => write!(f, "shape error: {m}"),
            MatrixError::NonFinite(m) => write!(f, "non-finite entry: {m}"),
        }
    }
}

impl std::error::Error for MatrixError {}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self, MatrixError> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(MatrixError::Shape(format!(
                "diag len {} vs off len {}",
                diag.len(),
                off.len()
            )));
        }
        if !diag.iter().chain(off.iter()).all(|v| v.is_finite()) {
            return Err(MatrixError::NonFinite("SymTridiag".into()));
        }
        Ok(SymTridiag { diag, off })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// The (N−1)×(N−1) principal submatrix (last row/column removed).
    pub fn principal_submatrix(&self) -> SymTridiag {
        SymTridiag {
            diag: self.diag[..self.n() - 1].to_vec(),
            off: self.off[..self.n().saturating_sub(2)].to_vec(),
        }
    }

    /// Dense representation (small N diagnostics only).
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            m[i][i] = self.diag[i];
        }
        for i in 0..n - 1 {
            m[i][i + 1] = self.off[i];
            m[i + 1][i] = self.off[i];
        }
        m
    }
}

impl PeriodicJacobi {
    pub fn new(diag: Vec<f64>, off: Vec<f64>, corner: f64) -> Result<Self, MatrixError> {
        if diag.len() < 3 || off.len() + 1 != diag.len() {
            return Err(MatrixError::Shape(format!(
                "periodic Jacobi needs N >= 3; diag len {} off len {}",
                diag.len(),
                off.len()
            )));
        }
        if !diag.iter().chain(off.iter()).chain([&corner]).all(|v| v.is_finite()) {
            return Err(MatrixError::NonFinite("PeriodicJacobi".into()));
        }
        Ok(PeriodicJacobi { diag, off, corner })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            m[i][i] = self.diag[i];
        }
        for i in 0..n - 1 {
            m[i][i + 1] = self.off[i];
            m[i + 1][i] = self.off[i];
        }
        m[0][n - 1] = self.corner;
        m[n - 1][0] = self.corner;
        m
    }
}

use nalgebra::{Complex, DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::scalar::{cabs, lit, Scalar};

/// Eigensystem of the first-excitation block.
///
/// Columns of `states` are site-basis amplitudes of the exciton states, ordered
/// by ascending energy. Each column is phase-fixed so that its largest-magnitude
/// component (first one, on ties) is real and positive.
#[derive(Clone, Debug, PartialEq)]
pub struct ExcitonBasis<T: Scalar = f64> {
    energies: Vec<T>,
    states: DMatrix<Complex<T>>,
    transition_dipoles: Vec<Complex<T>>,
}

impl<T: Scalar> ExcitonBasis<T> {
    /// Builds a basis from given eigenpairs, sorting and phase-fixing them.
    pub fn from_parts(energies: Vec<T>, states: DMatrix<Complex<T>>) -> Result<Self> {
        let n = states.nrows();
        if states.ncols() != energies.len() || n == 0 {
            return Err(Error::Validation(format!(
                "{} energies for a {}x{} state matrix",
                energies.len(),
                n,
                states.ncols()
            )));
        }
        let tol = T::validation_tol();
        let gram = states.adjoint() * &states;
        for i in 0..gram.nrows() {
            for j in 0..gram.ncols() {
                let target = if i == j { T::one() } else { T::zero() };
                if cabs(gram[(i, j)] - Complex::new(target, T::zero())) > tol {
                    return Err(Error::Validation(format!(
                        "basis columns not orthonormal at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self::assemble(energies, states))
    }

    fn assemble(energies: Vec<T>, states: DMatrix<Complex<T>>) -> Self {
        let mut order: Vec<usize> = (0..energies.len()).collect();
        order.sort_by(|&a, &b| {
            energies[a]
                .partial_cmp(&energies[b])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        let n = states.nrows();
        let mut sorted = DMatrix::zeros(n, order.len());
        let mut sorted_e = Vec::with_capacity(order.len());
        for (dst, &src) in order.iter().enumerate() {
            let mut col = states.column(src).clone_owned();
            fix_phase(col.as_mut_slice());
            sorted.set_column(dst, &col);
            sorted_e.push(energies[src]);
        }
        let transition_dipoles = (0..sorted.ncols())
            .map(|k| sorted.column(k).iter().fold(Complex::new(T::zero(), T::zero()), |a, &c| a + c))
            .collect();
        Self {
            energies: sorted_e,
            states: sorted,
            transition_dipoles,
        }
    }

    pub fn n_sites(&self) -> usize {
        self.states.nrows()
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn energies(&self) -> &[T] {
        &self.energies
    }

    pub fn states(&self) -> &DMatrix<Complex<T>> {
        &self.states
    }

    pub fn state(&self, k: usize) -> Vec<Complex<T>> {
        self.states.column(k).iter().copied().collect()
    }

    /// `⟨0|μ|ε_k⟩` in units of the single-site dipole.
    pub fn transition_dipoles(&self) -> &[Complex<T>] {
        &self.transition_dipoles
    }

    /// `|⟨0|μ|ε_k⟩|²` in units of μ².
    pub fn dipole_strengths(&self) -> Vec<T> {
        self.transition_dipoles.iter().map(|d| d.norm_sqr()).collect()
    }
}

fn fix_phase<T: Scalar>(col: &mut [Complex<T>]) {
    let max = col.iter().fold(T::zero(), |m, c| m.max(c.norm_sqr()));
    if max == T::zero() {
        return;
    }
    let cut = max * (T::one() - lit::<T>(1e-8));
    let pivot = col.iter().position(|c| c.norm_sqr() >= cut).unwrap_or(0);
    let c = col[pivot];
    let phase = c.conj() / cabs(c);
    for x in col.iter_mut() {
        *x *= phase;
    }
    // exact zero imaginary part on the pivot
    col[pivot] = Complex::new(cabs(col[pivot]), T::zero());
}

fn hermiticity_scale<T: Scalar>(n: usize, get: impl Fn(usize, usize) -> Complex<T>) -> Result<()> {
    let mut scale = T::one();
    for i in 0..n {
        for j in 0..n {
            scale = scale.max(cabs(get(i, j)));
        }
    }
    let tol = lit::<T>(1e-9) * scale;
    for i in 0..n {
        for j in i..n {
            let d = cabs(get(i, j) - get(j, i).conj());
            if d > tol {
                return Err(Error::Validation(format!(
                    "matrix not Hermitian at ({i}, {j}): deviation {d:?}"
                )));
            }
        }
    }
    Ok(())
}

/// Diagonalizes a real symmetric first-excitation Hamiltonian.
pub fn diagonalize<T: Scalar>(h: &DMatrix<T>) -> Result<ExcitonBasis<T>> {
    if !h.is_square() || h.nrows() == 0 {
        return Err(Error::Validation(format!("Hamiltonian is {}x{}", h.nrows(), h.ncols())));
    }
    hermiticity_scale(h.nrows(), |i, j| Complex::new(h[(i, j)], T::zero()))?;
    let sym = (h + h.transpose()) * lit::<T>(0.5);
    let eig = SymmetricEigen::new(sym);
    let states = eig.eigenvectors.map(|x| Complex::new(x, T::zero()));
    Ok(ExcitonBasis::assemble(eig.eigenvalues.iter().copied().collect(), states))
}

/// Diagonalizes a complex Hermitian first-excitation Hamiltonian.
pub fn diagonalize_hermitian<T: Scalar>(h: &DMatrix<Complex<T>>) -> Result<ExcitonBasis<T>> {
    if !h.is_square() || h.nrows() == 0 {
        return Err(Error::Validation(format!("Hamiltonian is {}x{}", h.nrows(), h.ncols())));
    }
    hermiticity_scale(h.nrows(), |i, j| h[(i, j)])?;
    let herm = (h + h.adjoint()) * Complex::new(lit::<T>(0.5), T::zero());
    let eig = SymmetricEigen::new(herm);
    Ok(ExcitonBasis::assemble(
        eig.eigenvalues.iter().copied().collect(),
        eig.eigenvectors,
    ))
}

#pragma once

#include <vector>

#include "rmtlab/ensembles.hpp"

namespace rmtlab {

// Reduces a Hermitian matrix to a real symmetric tridiagonal (diag, offdiag)
// with the same spectrum. offdiag has size n-1.
void hermitian_tridiagonalize(const HermitianMatrix& h, std::vector<double>& diag,
                              std::vector<double>& offdiag);

// Eigenvalues of a real symmetric tridiagonal matrix, sorted ascending.
// Throws std::runtime_error when an eigenvalue needs more than max_iter sweeps.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> offdiag,
                                            int max_iter = 50);

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h);

}  // namespace rmtlab

#pragma once

#include <vector>

namespace sstress {

// Eigendecomposition of a dense symmetric matrix by cyclic Jacobi rotations.
// `a` is n x n row-major and is destroyed. Returns eigenvalues in descending
// order; eigvecs is row-major with eigenvector i stored as column i.
void jacobi_symmetric_eigen(std::vector<double> a, int n, std::vector<double>& eigvals,
                            std::vector<double>& eigvecs);

}  // namespace sstress

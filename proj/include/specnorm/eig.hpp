#ifndef SPECNORM_EIG_HPP
#define SPECNORM_EIG_HPP

#include "specnorm/matrix.hpp"

#include <vector>

namespace specnorm {

struct ConvergenceFailure : std::runtime_error {
    explicit ConvergenceFailure(const std::string& what) : std::runtime_error(what) {}
};

// Eigenpairs of a real symmetric matrix.  values are ascending and columns
// of `vectors` are the matching orthonormal eigenvectors; each column is
// normalized so its first entry of magnitude > 1e-10 is positive.
struct SymmetricEigen {
    std::vector<double> values;
    Matrix vectors;  // column j = eigenvector j
};

// Householder tridiagonalization followed by tridiagonal QL with implicit
// shifts (tred2/tql2 lineage).  Throws ConvergenceFailure after the
// per-eigenvalue iteration budget.
SymmetricEigen eig_sym_dense(const Matrix& a);

// QL with implicit shifts on a symmetric tridiagonal matrix.
// d = diagonal (size n), e = subdiagonal (size n, e[0] unused).
// On return d holds ascending eigenvalues and z's columns the eigenvectors
// (z must be initialized, normally to the identity).
void tql2(std::vector<double>& d, std::vector<double>& e, Matrix& z);

}  // namespace specnorm

#endif

#ifndef SPECNORM_SPECTRAL_HPP
#define SPECNORM_SPECTRAL_HPP

#include "specnorm/eig.hpp"
#include "specnorm/graphs.hpp"
#include "specnorm/matrix.hpp"

#include <vector>

namespace specnorm {

// Spectral parameter of one eigenvalue of T_q, lambda = 2 cos(theta).
// Tempered: theta real in [0,pi].  Untempered: |lambda| > 2, stored as
// t = arcosh(|lambda|/2) plus the sign of lambda, avoiding complex
// arithmetic (theta = -i t for lambda > 2, theta = pi - i t for lambda < -2).
struct Theta {
    bool tempered = true;
    double value = 0.0;  // theta if tempered, arcosh(|lambda|/2) otherwise
    int sign = 1;        // sign of lambda (untempered only)

    static Theta from_lambda(double lambda);
    double lambda() const;
};

struct SpectralData {
    std::vector<double> eigenvalues;  // ascending
    Matrix eigenvectors;              // column j orthonormal
    std::vector<Theta> thetas;
    std::vector<bool> tempered;

    std::size_t size() const { return eigenvalues.size(); }
};

struct SpectralProjector {
    double epsilon = 0.0;
    Matrix matrix;
    std::vector<int> included;
};

// Full decomposition of a symmetric graph operator.
SpectralData eig_sym(const Matrix& op);

// Orthogonal projector onto span{psi_j : |lambda_j| <= 2 + epsilon}.
SpectralProjector projector(const SpectralData& spec, double epsilon);

// phi_theta(n) = q^{-n/2} ( 2/(q+1) cos(n theta)
//                           + (q-1)/(q+1) sin((n+1)theta)/sin(theta) ),
// with analytic limits at theta in {0, pi} and hyperbolic continuation for
// untempered theta.
double spherical_function(int q, const Theta& theta, int n);

// S_n eigenvalue of the untempered parameter, normalized so that it is the
// actual spectrum of the recursion-defined S_n:
//   mu = c_n q^{n/2} phi_theta(n), c_0 = 1, c_n = (q+1)/q for n >= 1.
double sn_eigenvalue(int q, const Theta& theta, int n);

struct SnEigenvalueRow {
    int n;
    double dev_bare;       // max_j residual against q^{n/2} phi(n)
    double dev_corrected;   // max_j residual against ((q+1)/q) q^{n/2} phi(n)
    double measured_factor; // least-squares c with S_n psi = c q^{n/2} phi psi
};

// Applies every S_n (recursion construction) to every eigenvector and
// reports which normalization of the spherical-function law matches.
std::vector<SnEigenvalueRow> sn_eigenvalue_check(const RegularGraph& g,
                                                 const SpectralData& spec,
                                                 const std::vector<Matrix>& sphere,
                                                 int n_max);

}  // namespace specnorm

#endif

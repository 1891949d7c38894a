#include "specnorm/spectral.hpp"

#include <cmath>

namespace specnorm {

Theta Theta::from_lambda(double lambda) {
    Theta t;
    if (std::abs(lambda) <= 2.0) {
        t.tempered = true;
        t.value = std::acos(lambda / 2.0);
    } else {
        t.tempered = false;
        t.value = std::acosh(std::abs(lambda) / 2.0);
        t.sign = (lambda > 0.0) ? 1 : -1;
    }
    return t;
}

double Theta::lambda() const {
    if (tempered) return 2.0 * std::cos(value);
    return sign * 2.0 * std::cosh(value);
}

SpectralData eig_sym(const Matrix& op) {
    SymmetricEigen e = eig_sym_dense(op);
    SpectralData out;
    out.eigenvalues = std::move(e.values);
    out.eigenvectors = std::move(e.vectors);
    out.thetas.reserve(out.eigenvalues.size());
    out.tempered.reserve(out.eigenvalues.size());
    for (double lam : out.eigenvalues) {
        Theta t = Theta::from_lambda(lam);
        out.tempered.push_back(t.tempered);
        out.thetas.push_back(t);
    }
    return out;
}

SpectralProjector projector(const SpectralData& spec, double epsilon) {
    if (epsilon < 0.0) throw std::invalid_argument("projector: epsilon must be >= 0");
    const std::size_t n = spec.size();
    SpectralProjector p;
    p.epsilon = epsilon;
    p.matrix = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(spec.eigenvalues[j]) > 2.0 + epsilon) continue;
        p.included.push_back((int)j);
        // rank-1 update psi_j psi_j^T
        for (std::size_t x = 0; x < n; ++x) {
            double vx = spec.eigenvectors(x, j);
            if (vx == 0.0) continue;
            for (std::size_t y = 0; y < n; ++y) p.matrix(x, y) += vx * spec.eigenvectors(y, j);
        }
    }
    return p;
}

namespace {

// sin((n+1)theta)/sin(theta) with limits at theta -> 0, pi, and the
// hyperbolic analogue sinh((n+1)t)/sinh(t) with limit at t -> 0.
double dirichlet_ratio_trig(double theta, int n) {
    double s = std::sin(theta);
    if (std::abs(s) < 1e-9) {
        // theta near 0: ratio -> n+1; near pi: (n+1)(-1)^n
        if (theta < M_PI / 2.0) return (double)(n + 1);
        return (n % 2 == 0) ? (double)(n + 1) : -(double)(n + 1);
    }
    return std::sin((n + 1) * theta) / s;
}

double dirichlet_ratio_hyp(double t, int n) {
    double s = std::sinh(t);
    if (std::abs(s) < 1e-12) return (double)(n + 1);
    return std::sinh((n + 1) * t) / s;
}

}  // namespace

double spherical_function(int q, const Theta& theta, int n) {
    if (n < 0) throw std::invalid_argument("spherical_function: n >= 0 required");
    if (n == 0) return 1.0;
    const double a = 2.0 / (q + 1);
    const double b = (double)(q - 1) / (q + 1);
    const double qn2 = std::pow((double)q, -0.5 * n);
    if (theta.tempered)
        return qn2 * (a * std::cos(n * theta.value) + b * dirichlet_ratio_trig(theta.value, n));
    // lambda > 2:  theta = -i t.  lambda < -2:  theta = pi + i t, which
    // flips the whole bracket by (-1)^n.
    double bracket = a * std::cosh(n * theta.value) + b * dirichlet_ratio_hyp(theta.value, n);
    if (theta.sign < 0 && n % 2 == 1) bracket = -bracket;
    return qn2 * bracket;
}

double sn_eigenvalue(int q, const Theta& theta, int n) {
    double c = (n == 0) ? 1.0 : (double)(q + 1) / q;
    return c * std::pow((double)q, 0.5 * n) * spherical_function(q, theta, n);
}

std::vector<SnEigenvalueRow> sn_eigenvalue_check(const RegularGraph& g,
                                                 const SpectralData& spec,
                                                 const std::vector<Matrix>& sphere,
                                                 int n_max) {
    if (n_max >= (int)sphere.size()) throw std::invalid_argument("sn_eigenvalue_check: n_max exceeds available S_n");
    const std::size_t nv = spec.size();
    const int q = g.q();
    std::vector<SnEigenvalueRow> rows;
    for (int n = 0; n <= n_max; ++n) {
        SnEigenvalueRow row{n, 0.0, 0.0, 0.0};
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < nv; ++j) {
            std::vector<double> psi(nv);
            for (std::size_t x = 0; x < nv; ++x) psi[x] = spec.eigenvectors(x, j);
            std::vector<double> spsi = matvec(sphere[n], psi);
            double mu = dot(spsi, psi);  // Rayleigh quotient, psi unit norm
            double pred_bare = std::pow((double)q, 0.5 * n) * spherical_function(q, spec.thetas[j], n);
            double pred_corr = (n == 0) ? pred_bare : pred_bare * (q + 1) / q;
            double r_bare = 0.0, r_corr = 0.0;
            for (std::size_t x = 0; x < nv; ++x) {
                r_bare = std::max(r_bare, std::abs(spsi[x] - pred_bare * psi[x]));
                r_corr = std::max(r_corr, std::abs(spsi[x] - pred_corr * psi[x]));
            }
            row.dev_bare = std::max(row.dev_bare, r_bare);
            row.dev_corrected = std::max(row.dev_corrected, r_corr);
            num += mu * pred_bare;
            den += pred_bare * pred_bare;
        }
        row.measured_factor = (den > 0.0) ? num / den : 1.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace specnorm

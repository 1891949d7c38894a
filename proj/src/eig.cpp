#include "specnorm/eig.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <numeric>

namespace specnorm {

namespace {

double hypot2(double a, double b) { return std::hypot(a, b); }

// Householder reduction to tridiagonal form, transformations accumulated
// in z.  Derived from the Algol tred2 (Bowdler, Martin, Reinsch, Wilkinson)
// via its EISPACK translation.
void tred2(Matrix& z, std::vector<double>& d, std::vector<double>& e) {
    const int n = (int)z.rows();
    d.assign(n, 0.0);
    e.assign(n, 0.0);

    for (int i = n - 1; i > 0; --i) {
        int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(z(i, k));
            if (scale == 0.0) {
                e[i] = z(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    z(i, k) /= scale;
                    h += z(i, k) * z(i, k);
                }
                double f = z(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                z(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    z(j, i) = z(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
                    for (int k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
                    e[j] = g / h;
                    f += e[j] * z(i, j);
                }
                double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = z(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) z(j, k) -= (f * e[k] + g * z(i, k));
                }
            }
        } else {
            e[i] = z(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        int l = i - 1;
        if (d[i] != 0.0) {
            for (int j = 0; j <= l; ++j) {
                double g = 0.0;
                for (int k = 0; k <= l; ++k) g += z(i, k) * z(k, j);
                for (int k = 0; k <= l; ++k) z(k, j) -= g * z(k, i);
            }
        }
        d[i] = z(i, i);
        z(i, i) = 1.0;
        for (int j = 0; j <= l; ++j) z(j, i) = z(i, j) = 0.0;
    }
}

void sort_and_fix_signs(std::vector<double>& d, Matrix& z) {
    const int n = (int)d.size();
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });

    std::vector<double> ds(n);
    Matrix zs(n, n);
    for (int j = 0; j < n; ++j) {
        int src = idx[j];
        ds[j] = d[src];
        double sign = 1.0;
        for (int i = 0; i < n; ++i) {
            if (std::abs(z(i, src)) > 1e-10) {
                sign = (z(i, src) > 0.0) ? 1.0 : -1.0;
                break;
            }
        }
        for (int i = 0; i < n; ++i) zs(i, j) = sign * z(i, src);
    }
    d = std::move(ds);
    z = std::move(zs);
}

}  // namespace

void tql2(std::vector<double>& d, std::vector<double>& e, Matrix& z) {
    const int n = (int)d.size();
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 || std::abs(e[m]) <= 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 50) throw ConvergenceFailure("tql2: no convergence in 50 iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = hypot2(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = hypot2(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    // accumulate rotation in eigenvector matrix
                    for (int k = 0; k < n; ++k) {
                        f = z(k, i + 1);
                        z(k, i + 1) = s * z(k, i) + c * f;
                        z(k, i) = c * z(k, i) - s * f;
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    sort_and_fix_signs(d, z);
}

SymmetricEigen eig_sym_dense(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("eig_sym_dense: matrix not square");
    SymmetricEigen out;
    out.vectors = a;
    std::vector<double> e;
    tred2(out.vectors, out.values, e);
    tql2(out.values, e, out.vectors);
    return out;
}

}  // namespace specnorm

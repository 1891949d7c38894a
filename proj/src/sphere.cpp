#include "specnorm/sphere.hpp"
#include "specnorm/eig.hpp"
#include "specnorm/rng.hpp"

#include <fftw3.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <numeric>

namespace specnorm {

// ---------------------------------------------------------------- CMatrix

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix a(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) a(j, i) = std::conj((*this)(i, j));
    return a;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double CMatrix::max_abs_diff(const CMatrix& o) const {
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - o.data_[i]));
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx z) {
    for (cplx& x : data_) x *= z;
    return *this;
}

CMatrix cmatmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("cmatmul shape mismatch");
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    CMatrix c(n, m);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long ii = 0; ii < (long long)n; ++ii) {
        const std::size_t i = (std::size_t)ii;
        cplx* ci = c.row(i);
        const cplx* ai = a.row(i);
        for (std::size_t l = 0; l < k; ++l) {
            const cplx ail = ai[l];
            if (ail == cplx(0.0)) continue;
            const cplx* bl = b.row(l);
            for (std::size_t j = 0; j < m; ++j) ci[j] += ail * bl[j];
        }
    }
    return c;
}

// ------------------------------------------------------- Legendre / zonal

double legendre(int s, double x) {
    if (s == 0) return 1.0;
    double pm1 = 1.0, p = x;
    for (int l = 2; l <= s; ++l) {
        double next = ((2.0 * l - 1.0) * x * p - (l - 1.0) * pm1) / l;
        pm1 = p;
        p = next;
    }
    return p;
}

double zonal(int s, double t) {
    return (2.0 * s + 1.0) / (4.0 * M_PI) * legendre(s, std::cos(t));
}

double ramp_window(double t, double lo, double hi) {
    if (t <= lo) return 1.0;
    if (t >= hi) return 0.0;
    double u = (t - lo) / (hi - lo);
    return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

ZonalSplit::ZonalSplit(int s_) : s(s_) {
    lo = std::pow((double)s, -0.5);
    hi = std::pow((double)s, -0.25);
}

double ZonalSplit::z1(double t) const { return ramp_window(t, lo, hi) * zonal(s, t); }
double ZonalSplit::z3(double t) const { return ramp_window(M_PI - t, lo, hi) * zonal(s, t); }
double ZonalSplit::z2(double t) const {
    // residual, so the three pieces sum to Z_s exactly
    return zonal(s, t) * (1.0 - ramp_window(t, lo, hi) - ramp_window(M_PI - t, lo, hi));
}

// ------------------------------------------------------------ quadrature

GaussLegendre GaussLegendre::build(int n) {
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev-like initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double pm1 = 1.0, p = x;
            for (int l = 2; l <= n; ++l) {
                double next = ((2.0 * l - 1.0) * x * p - (l - 1.0) * pm1) / l;
                pm1 = p;
                p = next;
            }
            double dp = n * (x * p - pm1) / (x * x - 1.0);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double pm1 = 1.0, p = x;
        for (int l = 2; l <= n; ++l) {
            double next = ((2.0 * l - 1.0) * x * p - (l - 1.0) * pm1) / l;
            pm1 = p;
            p = next;
        }
        double dp = n * (x * p - pm1) / (x * x - 1.0);
        gl.nodes[i] = x;
        gl.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    // ascending nodes
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return gl.nodes[a] < gl.nodes[b]; });
    GaussLegendre out;
    out.nodes.resize(n);
    out.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        out.nodes[i] = gl.nodes[idx[i]];
        out.weights[i] = gl.weights[idx[i]];
    }
    return out;
}

SphereGrid SphereGrid::build(int n_theta, int n_phi) {
    SphereGrid g;
    g.n_theta = n_theta;
    g.n_phi = n_phi;
    GaussLegendre gl = GaussLegendre::build(n_theta);
    g.cos_theta = gl.nodes;
    g.theta_weight = gl.weights;
    g.theta.resize(n_theta);
    g.sin_theta.resize(n_theta);
    for (int i = 0; i < n_theta; ++i) {
        g.theta[i] = std::acos(std::clamp(gl.nodes[i], -1.0, 1.0));
        g.sin_theta[i] = std::sqrt(std::max(0.0, 1.0 - gl.nodes[i] * gl.nodes[i]));
    }
    return g;
}

// --------------------------------------------------- associated Legendre

void assoc_legendre_row(int s, double x, std::vector<double>& out) {
    out.assign(s + 1, 0.0);
    const double sx = std::sqrt(std::max(0.0, 1.0 - x * x));
    double pmm = 1.0 / std::sqrt(4.0 * M_PI);  // normalized P_0^0
    for (int m = 0; m <= s; ++m) {
        // upward in l at fixed m, seeded by the sectoral value
        double pl = pmm;  // P~_m^m
        if (m == s) {
            out[m] = pl;
        } else {
            double plm1 = pl;
            pl = x * std::sqrt(2.0 * m + 3.0) * plm1;  // P~_{m+1}^m
            for (int l = m + 2; l <= s; ++l) {
                double a = std::sqrt((4.0 * l * l - 1.0) / ((double)l * l - (double)m * m));
                double b = std::sqrt((((double)(l - 1) * (l - 1) - (double)m * m)) /
                                     (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
                double next = a * (x * pl - b * plm1);
                plm1 = pl;
                pl = next;
            }
            out[m] = (s == m + 1) ? pl : pl;
        }
        // next sectoral (Condon-Shortley sign)
        pmm *= -std::sqrt((2.0 * m + 3.0) / (2.0 * m + 2.0)) * sx;
    }
}

cplx eval_harmonic(int s, const std::vector<cplx>& coeffs, double theta, double phi) {
    std::vector<double> pl;
    assoc_legendre_row(s, std::cos(theta), pl);
    cplx val = coeffs[s] * pl[0];  // m = 0 at index s
    for (int m = 1; m <= s; ++m) {
        cplx e(std::cos(m * phi), std::sin(m * phi));
        double parity = (m % 2 == 0) ? 1.0 : -1.0;
        val += coeffs[s + m] * pl[m] * e;                    // +m
        val += coeffs[s - m] * parity * pl[m] * std::conj(e);  // -m: (-1)^m conj phase part
    }
    return val;
}

// ---------------------------------------------------------------- Wigner

WignerEngine::WignerEngine(int s) : s_(s) {
    const int n = 2 * s + 1;
    // J_y conjugated by diag(i^m) is real symmetric tridiagonal with
    // off-diagonal -c_m/2, c_m = sqrt(s(s+1) - m(m+1)).
    std::vector<double> d(n, 0.0), e(n, 0.0);
    for (int i = 1; i < n; ++i) {
        double m = (double)(i - 1 - s);
        e[i] = -0.5 * std::sqrt((double)s * (s + 1) - m * (m + 1));
    }
    v_ = Matrix::identity(n);
    lam_ = d;
    tql2(lam_, e, v_);
}

CMatrix WignerEngine::d_matrix(double beta) const {
    const int n = 2 * s_ + 1;
    // d = diag(i^{m'}) V diag(e^{-i beta lam}) V^T diag(i^{-m})
    CMatrix mid(n, n);
    std::vector<cplx> ph(n);
    for (int k = 0; k < n; ++k) ph[k] = std::polar(1.0, -beta * lam_[k]);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx sum = 0.0;
            for (int k = 0; k < n; ++k) sum += v_(i, k) * ph[k] * v_(j, k);
            mid(i, j) = sum;
        }
    static const cplx ipow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    CMatrix d(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int diff = ((i - j) % 4 + 4) % 4;  // i^{m'-m}, m' - m = i - j
            d(i, j) = ipow[diff] * mid(i, j);
        }
    return d;
}

std::array<double, 3> euler_zyz(const std::array<double, 9>& r) {
    // r is row-major: r[3*row + col]
    double r02 = r[2], r12 = r[5], r22 = r[8];
    double sb = std::hypot(r02, r12);
    double beta = std::atan2(sb, r22);
    if (sb > 1e-12) {
        double alpha = std::atan2(r12, r02);
        double gamma = std::atan2(r[7], -r[6]);
        return {alpha, beta, gamma};
    }
    if (r22 > 0.0) {
        // beta ~ 0: pure z-rotation by alpha+gamma
        return {std::atan2(r[3], r[0]), 0.0, 0.0};
    }
    // beta ~ pi: Rz(alpha) Ry(pi), alpha - gamma determined
    return {std::atan2(-r[3], -r[0]), M_PI, 0.0};
}

CMatrix WignerEngine::D(const std::array<double, 9>& rot) const {
    auto [alpha, beta, gamma] = euler_zyz(rot);
    CMatrix d = d_matrix(beta);
    const int n = 2 * s_ + 1;
    for (int i = 0; i < n; ++i) {
        cplx ra = std::polar(1.0, -(double)(i - s_) * alpha);
        for (int j = 0; j < n; ++j) {
            cplx rg = std::polar(1.0, -(double)(j - s_) * gamma);
            d(i, j) = ra * d(i, j) * rg;
        }
    }
    return d;
}

// ------------------------------------------------------- averaging / eig

CMatrix build_averaging(const WignerEngine& engine, const RotationSet& rot) {
    const int n = 2 * engine.degree() + 1;
    CMatrix h(n, n);
    const double w = 1.0 / std::sqrt((double)rot.q());
    for (const auto& g : rot.rotations) {
        CMatrix d = engine.D(g.to_double());
        CMatrix dt = d.adjoint();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) h(i, j) += w * (d(i, j) + dt(i, j));
    }
    return h;
}

CMatrix real_basis_unitary(int s) {
    const int n = 2 * s + 1;
    CMatrix u(n, n);
    const double r2 = 1.0 / std::sqrt(2.0);
    u(s, s) = 1.0;  // r_0 = Y_0
    for (int m = 1; m <= s; ++m) {
        double parity = (m % 2 == 0) ? 1.0 : -1.0;
        // column s+m: r_m = (Y_{-m} + (-1)^m Y_m)/sqrt(2)
        u(s - m, s + m) = r2;
        u(s + m, s + m) = parity * r2;
        // column s-m: r_{-m} = i(Y_{-m} - (-1)^m Y_m)/sqrt(2)
        u(s - m, s - m) = cplx(0.0, r2);
        u(s + m, s - m) = cplx(0.0, -parity * r2);
    }
    return u;
}

HarmonicSpace joint_eigenbasis(const WignerEngine& engine, const RotationSet& rot) {
    const int s = engine.degree();
    const int n = 2 * s + 1;
    HarmonicSpace space;
    space.s = s;
    space.dim = n;
    space.averaging = build_averaging(engine, rot);

    CMatrix u = real_basis_unitary(s);
    CMatrix hu = cmatmul(space.averaging, u);
    CMatrix a = cmatmul(u.adjoint(), hu);
    Matrix areal(n, n);
    double max_imag = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            max_imag = std::max(max_imag, std::abs(a(i, j).imag()));
            areal(i, j) = 0.5 * (a(i, j).real() + a(j, i).real());
        }
    if (max_imag > 1e-8)
        throw std::runtime_error("joint_eigenbasis: averaging matrix not real in the real harmonic basis");

    SymmetricEigen eig = eig_sym_dense(areal);
    space.lambdas = eig.values;
    space.alphas.resize(n);
    for (int j = 0; j < n; ++j) space.alphas[j] = std::acos(std::clamp(eig.values[j] / 2.0, -1.0, 1.0));
    // back to the complex basis
    CMatrix w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = eig.vectors(i, j);
    space.eigvecs = cmatmul(u, w);
    return space;
}

HarmonicSpace joint_eigenbasis(int s, const RotationSet& rot) {
    WignerEngine engine(s);
    return joint_eigenbasis(engine, rot);
}

// ----------------------------------------------------------- Lp synthesis

namespace {

int next_fft_size(int n) {
    for (int k = n;; ++k) {
        int m = k;
        for (int f : {2, 3, 5})
            while (m % f == 0) m /= f;
        if (m == 1) return k;
    }
}

double pow_half_integer(double x2, double p) {
    // x2 = |v|^2, returns |v|^p for even integer p, pow otherwise
    int half = (int)p / 2;
    if (p == 2.0 * half) {
        double r = 1.0;
        double base = x2;
        int e = half;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }
    return std::pow(x2, p / 2.0);
}

struct GridSynthesis {
    // per-column quadrature sums of |psi|^p (finite p), or grid sup + argmax
    std::vector<double> accum;
    std::vector<double> sup;
    std::vector<std::pair<int, int>> argmax;  // (theta index, phi index)
};

GridSynthesis synthesize(int s, const CMatrix& coeffs, const SphereGrid& grid, double p) {
    const int n = 2 * s + 1;
    const int ncol = (int)coeffs.cols();
    const int nphi = grid.n_phi;
    if ((int)coeffs.rows() != n) throw std::invalid_argument("synthesize: coefficient size mismatch");
    if (nphi <= 2 * s) throw ResolutionTooLow("synthesize: n_phi <= 2s");

    const bool inf_p = std::isinf(p);
    GridSynthesis out;
    out.accum.assign(ncol, 0.0);
    out.sup.assign(ncol, 0.0);
    out.argmax.assign(ncol, {0, 0});

    fftw_plan plan;
    std::vector<cplx> proto(nphi);
    plan = fftw_plan_dft_1d(nphi, reinterpret_cast<fftw_complex*>(proto.data()),
                            reinterpret_cast<fftw_complex*>(proto.data()), FFTW_BACKWARD, FFTW_ESTIMATE);

    std::vector<double> pl;
    std::vector<cplx> buf(nphi);
    const double wphi = grid.phi_weight();

    for (int it = 0; it < grid.n_theta; ++it) {
        assoc_legendre_row(s, grid.cos_theta[it], pl);
        const double wt = grid.theta_weight[it] * wphi;
        for (int j = 0; j < ncol; ++j) {
            std::fill(buf.begin(), buf.end(), cplx(0.0));
            buf[0] = coeffs(s, j) * pl[0];
            for (int m = 1; m <= s; ++m) {
                double parity = (m % 2 == 0) ? 1.0 : -1.0;
                buf[m] += coeffs(s + m, j) * pl[m];
                buf[nphi - m] += coeffs(s - m, j) * (parity * pl[m]);
            }
            fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(buf.data()),
                             reinterpret_cast<fftw_complex*>(buf.data()));
            if (inf_p) {
                for (int k = 0; k < nphi; ++k) {
                    double a = std::abs(buf[k]);
                    if (a > out.sup[j]) {
                        out.sup[j] = a;
                        out.argmax[j] = {it, k};
                    }
                }
            } else {
                double local = 0.0;
                for (int k = 0; k < nphi; ++k)
                    local += pow_half_integer(std::norm(buf[k]), p);
                out.accum[j] += wt * local;
            }
        }
    }
    fftw_destroy_plan(plan);
    return out;
}

}  // namespace

std::vector<double> sphere_lp_norms(int s, const CMatrix& coeffs, double p, int n_theta_override) {
    const int ncol = (int)coeffs.cols();
    if (std::isinf(p)) {
        int n_theta = (n_theta_override > 0) ? n_theta_override : 2 * s + 2;
        if (n_theta < s + 1) throw ResolutionTooLow("sphere_lp_norms: n_theta too small for degree");
        SphereGrid grid = SphereGrid::build(n_theta, next_fft_size(2 * n_theta + 1));
        GridSynthesis syn = synthesize(s, coeffs, grid, p);
        // one refinement pass around each column's argmax
        std::vector<double> out(ncol);
        const double dth = M_PI / n_theta, dph = 2.0 * M_PI / grid.n_phi;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int j = 0; j < ncol; ++j) {
            std::vector<cplx> c(coeffs.rows());
            for (std::size_t i = 0; i < coeffs.rows(); ++i) c[i] = coeffs(i, j);
            auto [it, ip] = syn.argmax[j];
            double th0 = grid.theta[it], ph0 = ip * dph;
            double best = syn.sup[j];
            double half_th = dth, half_ph = dph;
            std::vector<double> pl;
            for (int pass = 0; pass < 4; ++pass) {
                double bth = th0, bph = ph0;
                for (int a = -5; a <= 5; ++a) {
                    double th = th0 + a * half_th / 5.0;
                    if (th < 0.0 || th > M_PI) continue;
                    assoc_legendre_row(s, std::cos(th), pl);
                    for (int b = -5; b <= 5; ++b) {
                        double ph = ph0 + b * half_ph / 5.0;
                        cplx val = c[s] * pl[0];
                        for (int m = 1; m <= s; ++m) {
                            cplx e(std::cos(m * ph), std::sin(m * ph));
                            double parity = (m % 2 == 0) ? 1.0 : -1.0;
                            val += c[s + m] * pl[m] * e + c[s - m] * (parity * pl[m]) * std::conj(e);
                        }
                        double v = std::abs(val);
                        if (v > best) {
                            best = v;
                            bth = th;
                            bph = ph;
                        }
                    }
                }
                th0 = bth;
                ph0 = bph;
                half_th /= 5.0;
                half_ph /= 5.0;
            }
            out[j] = best;
        }
        return out;
    }

    int need = s * std::max(2, (int)std::ceil(p / 2.0)) + 2;
    int n_theta = (n_theta_override > 0) ? n_theta_override : need;
    if (n_theta < need) throw ResolutionTooLow("sphere_lp_norms: n_theta below the |psi|^p quadrature bound");
    SphereGrid grid = SphereGrid::build(n_theta, next_fft_size(2 * n_theta + 1));
    GridSynthesis syn = synthesize(s, coeffs, grid, p);
    std::vector<double> out(ncol);
    for (int j = 0; j < ncol; ++j) out[j] = std::pow(syn.accum[j], 1.0 / p);
    return out;
}

double lp_norm_sphere(int s, const std::vector<cplx>& coeffs, double p, int n_theta_override) {
    CMatrix c(coeffs.size(), 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) c(i, 0) = coeffs[i];
    return sphere_lp_norms(s, c, p, n_theta_override)[0];
}

// ------------------------------------------------------ reproducing check

namespace {

// harmonic values Y_{deg,m}(x_i) for all grid points and m = -deg..deg
CMatrix harmonic_values(int deg, const SphereGrid& grid) {
    const int n = 2 * deg + 1;
    CMatrix vals((std::size_t)grid.n_theta * grid.n_phi, n);
    std::vector<double> pl;
    for (int it = 0; it < grid.n_theta; ++it) {
        assoc_legendre_row(deg, grid.cos_theta[it], pl);
        for (int ip = 0; ip < grid.n_phi; ++ip) {
            double phi = 2.0 * M_PI * ip / grid.n_phi;
            cplx* row = vals.row((std::size_t)it * grid.n_phi + ip);
            row[deg] = pl[0];
            for (int m = 1; m <= deg; ++m) {
                double parity = (m % 2 == 0) ? 1.0 : -1.0;
                cplx e = std::polar(1.0, m * phi);
                row[deg + m] = pl[m] * e;
                row[deg - m] = parity * pl[m] * std::conj(e);
            }
        }
    }
    return vals;
}

double convolution_deviation(int s, int deg, const SphereGrid& grid) {
    // quadrature convolution of Z_s against every Y_{deg,m}; compare to the
    // reproducing identity (deg == s) or to zero (deg != s)
    const int nsrc = grid.n_theta * grid.n_phi;
    CMatrix vals = harmonic_values(deg, grid);
    const int n = 2 * deg + 1;

    // output points: all rings, subsampled azimuth
    int stride = std::max(1, grid.n_phi / 8);
    double dev = 0.0;
    std::vector<double> zrow(nsrc);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(max : dev)
#endif
    for (int it = 0; it < grid.n_theta; ++it) {
        std::vector<double> z(nsrc);
        for (int ip = 0; ip < grid.n_phi; ip += stride) {
            double ct = grid.cos_theta[it], st = grid.sin_theta[it];
            double phi = 2.0 * M_PI * ip / grid.n_phi;
            double x0 = st * std::cos(phi), x1 = st * std::sin(phi), x2 = ct;
            // weighted zonal kernel row
            for (int jt = 0; jt < grid.n_theta; ++jt) {
                double w = grid.theta_weight[jt] * grid.phi_weight();
                double ct2 = grid.cos_theta[jt], st2 = grid.sin_theta[jt];
                for (int jp = 0; jp < grid.n_phi; ++jp) {
                    double phi2 = 2.0 * M_PI * jp / grid.n_phi;
                    double dot = x0 * st2 * std::cos(phi2) + x1 * st2 * std::sin(phi2) + x2 * ct2;
                    double ang = std::acos(std::clamp(dot, -1.0, 1.0));
                    z[(std::size_t)jt * grid.n_phi + jp] = w * zonal(s, ang);
                }
            }
            const cplx* target = vals.row((std::size_t)it * grid.n_phi + ip);
            for (int m = 0; m < n; ++m) {
                cplx acc = 0.0;
                for (int jsrc = 0; jsrc < nsrc; ++jsrc) acc += z[jsrc] * vals(jsrc, m);
                cplx expect = (deg == s) ? target[m] : cplx(0.0);
                dev = std::max(dev, std::abs(acc - expect));
            }
        }
    }
    (void)zrow;
    return dev;
}

}  // namespace

double reproduce_check(int s) {
    int n_theta = s + 2;
    SphereGrid grid = SphereGrid::build(n_theta, 2 * s + 3);
    return convolution_deviation(s, s, grid);
}

double cross_degree_check(int s, int s_other) {
    int deg = std::max(s, s_other);
    SphereGrid grid = SphereGrid::build(deg + 2, 2 * deg + 3);
    return convolution_deviation(s, s_other, grid);
}

// -------------------------------------------------------- kernel splitting

namespace {

template <typename F>
double adaptive_simpson(F f, double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0) throw QuadratureFailure("adaptive_simpson: max depth reached");
    if (std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

template <typename F>
double integrate_interval(F f, double lo, double hi, int panels, double rel_tol) {
    // coarse pass to scale the absolute tolerance
    double coarse = 0.0;
    double h = (hi - lo) / panels;
    for (int i = 0; i < panels; ++i) {
        double a = lo + i * h, b = a + h, m = a + 0.5 * h;
        coarse += h / 6.0 * (f(a) + 4.0 * f(m) + f(b));
    }
    double tol = std::max(rel_tol * std::abs(coarse), 1e-300) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        double a = lo + i * h, b = a + h, m = a + 0.5 * h;
        double fa = f(a), fm = f(m), fb = f(b);
        double whole = h / 6.0 * (fa + 4.0 * fm + fb);
        total += adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 28);
    }
    return total;
}

}  // namespace

KernelSplitNorms kernel_split_norms(int s, double p) {
    if (p <= 4.0) throw std::invalid_argument("kernel_split_norms: p > 4 required");
    ZonalSplit split(s);
    const double half_p = p / 2.0;
    const int panels = std::max(64, 4 * s);
    auto norm_over = [&](auto piece, double a, double b) {
        auto f = [&](double t) {
            return std::pow(std::abs(piece(t)), half_p) * std::sin(t) * 2.0 * M_PI;
        };
        return std::pow(integrate_interval(f, a, b, panels, 1e-6), 1.0 / half_p);
    };
    KernelSplitNorms out;
    out.z1 = norm_over([&](double t) { return split.z1(t); }, 0.0, M_PI);
    out.z2 = norm_over([&](double t) { return split.z2(t); }, 0.0, M_PI);
    out.z3 = norm_over([&](double t) { return split.z3(t); }, 0.0, M_PI);
    out.total = norm_over([&](double t) { return split.total(t); }, 0.0, M_PI);
    out.tail = norm_over([&](double t) { return split.total(t); }, split.lo, M_PI - split.lo);
    return out;
}

// ------------------------------------------------- averaged kernel probe

AveragedKernelReport averaged_kernel_probe(const RotationSet& rot, int s, int n, double p,
                                           int samples, std::uint64_t seed) {
    AveragedKernelReport rep;
    rep.s = s;
    rep.n = n;
    rep.p = p;
    const double q = (double)rot.q();
    const double qn2 = std::pow(q, -0.5 * n);

    std::vector<std::array<double, 9>> words;
    if (n == 0) {
        words.push_back({1, 0, 0, 0, 1, 0, 0, 0, 1});
    } else {
        for (const auto& w : enumerate_words(rot, n)) words.push_back(w.matrix.to_double());
    }

    // tabulated split pieces, linear interpolation in t
    ZonalSplit split(s);
    const int tab_n = std::max(4000, 40 * s);
    std::vector<std::array<double, 3>> tab(tab_n + 1);
    for (int i = 0; i <= tab_n; ++i) {
        double t = M_PI * i / tab_n;
        tab[i] = {split.z1(t), split.z2(t), split.z3(t)};
    }
    auto lookup = [&](double t, int piece) {
        double u = t / M_PI * tab_n;
        int i = std::min((int)u, tab_n - 1);
        double frac = u - i;
        return tab[i][piece] * (1.0 - frac) + tab[i + 1][piece] * frac;
    };

    KernelSplitNorms base = kernel_split_norms(s, p);
    // |Z|^{p/2} has kinks at the ~s sign changes of each piece; resolve them
    const int rings = std::min(s * std::max(2, (int)std::ceil(p / 2.0)) + 2, 1600);
    SphereGrid grid = SphereGrid::build(rings, next_fft_size(std::min(2 * rings + 1, 3200)));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double half_p = p / 2.0;

    for (int trial = 0; trial < samples; ++trial) {
        std::array<double, 3> y;
        double nn = 0.0;
        do {
            for (double& c : y) c = gauss(rng);
            nn = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
        } while (nn < 1e-6);
        for (double& c : y) c /= nn;

        double acc[4] = {0.0, 0.0, 0.0, 0.0};
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : acc[:4])
#endif
        for (int it = 0; it < grid.n_theta; ++it) {
            double w = grid.theta_weight[it] * grid.phi_weight();
            double ct = grid.cos_theta[it], st = grid.sin_theta[it];
            for (int ip = 0; ip < grid.n_phi; ++ip) {
                double phi = 2.0 * M_PI * ip / grid.n_phi;
                double x[3] = {st * std::cos(phi), st * std::sin(phi), ct};
                double v[3] = {0.0, 0.0, 0.0};
                for (const auto& g : words) {
                    double gx0 = g[0] * x[0] + g[1] * x[1] + g[2] * x[2];
                    double gx1 = g[3] * x[0] + g[4] * x[1] + g[5] * x[2];
                    double gx2 = g[6] * x[0] + g[7] * x[1] + g[8] * x[2];
                    double dot = std::clamp(gx0 * y[0] + gx1 * y[1] + gx2 * y[2], -1.0, 1.0);
                    double t = std::acos(dot);
                    v[0] += lookup(t, 0);
                    v[1] += lookup(t, 1);
                    v[2] += lookup(t, 2);
                }
                acc[0] += w * std::pow(std::abs(qn2 * v[0]), half_p);
                acc[1] += w * std::pow(std::abs(qn2 * v[1]), half_p);
                acc[2] += w * std::pow(std::abs(qn2 * v[2]), half_p);
                acc[3] += w * std::pow(std::abs(qn2 * (v[0] + v[1] + v[2])), half_p);
            }
        }
        AveragedKernelSample sample;
        sample.y = y;
        sample.piece1 = std::pow(acc[0], 1.0 / half_p);
        sample.piece2 = std::pow(acc[1], 1.0 / half_p);
        sample.piece3 = std::pow(acc[2], 1.0 / half_p);
        sample.total = std::pow(acc[3], 1.0 / half_p);
        sample.piece1_prediction = 2.0 * qn2 * std::pow(q, 2.0 * n / p) * base.z1;
        sample.piece2_prediction = std::pow(q, 0.5 * n) * base.z2;
        rep.samples.push_back(sample);
    }
    return rep;
}

// ------------------------------------------------------- theorem report

std::vector<SphereTheoremRow> verify_sphere_theorem(const RotationSet& rot,
                                                    const std::vector<int>& s_list,
                                                    const std::vector<double>& p_list) {
    std::vector<SphereTheoremRow> rows;
    for (int s : s_list) {
        HarmonicSpace space = joint_eigenbasis(s, rot);
        for (double p : p_list) {
            auto norms = sphere_lp_norms(s, space.eigvecs, p);
            double max_norm = 0.0;
            for (double v : norms) max_norm = std::max(max_norm, v);

            std::vector<cplx> zc(2 * s + 1, cplx(0.0));
            zc[s] = 1.0;  // normalized zonal harmonic = Y_{s,0}
            double zn = lp_norm_sphere(s, zc, p);

            double expo = 0.5 - (std::isinf(p) ? 0.0 : 2.0 / p);
            double sogge = std::pow((double)s, expo);
            SphereTheoremRow row;
            row.s = s;
            row.p = p;
            row.max_joint_norm = max_norm;
            row.ratio_sogge = max_norm / sogge;
            row.ratio_log = max_norm / (sogge / std::sqrt(std::log((double)s)));
            row.zonal_norm = zn;
            row.zonal_ratio_sogge = zn / sogge;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace specnorm

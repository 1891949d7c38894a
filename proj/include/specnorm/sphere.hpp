#ifndef SPECNORM_SPHERE_HPP
#define SPECNORM_SPHERE_HPP

#include "specnorm/matrix.hpp"
#include "specnorm/rotation.hpp"

#include <array>
#include <complex>
#include <vector>

namespace specnorm {

using cplx = std::complex<double>;

struct ResolutionTooLow : std::runtime_error {
    explicit ResolutionTooLow(const std::string& what) : std::runtime_error(what) {}
};
struct QuadratureFailure : std::runtime_error {
    explicit QuadratureFailure(const std::string& what) : std::runtime_error(what) {}
};

// Dense complex matrix, row-major.
class CMatrix {
public:
    CMatrix() : rows_(0), cols_(0) {}
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    cplx* row(std::size_t i) { return data_.data() + i * cols_; }
    const cplx* row(std::size_t i) const { return data_.data() + i * cols_; }

    CMatrix adjoint() const;
    double max_abs() const;
    double max_abs_diff(const CMatrix& o) const;

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator*=(cplx z);

private:
    std::size_t rows_, cols_;
    std::vector<cplx> data_;
};

CMatrix cmatmul(const CMatrix& a, const CMatrix& b);

// Legendre polynomial P_s(x), |x| <= 1, upward three-term recursion.
double legendre(int s, double x);

// Z_s(t) = ((2s+1)/(4pi)) P_s(cos t); reproducing kernel for convolution
// against the surface measure.
double zonal(int s, double t);

// C^1 quintic ramp: 1 on [0,lo], 0 on [hi,pi], smoothstep between.
double ramp_window(double t, double lo, double hi);

// Z^(1) = eta(t) Z, Z^(3) = eta(pi-t) Z with eta ramping between s^(-1/2)
// and s^(-1/4); Z^(2) is the residual so the partition is exact.
struct ZonalSplit {
    int s;
    double lo, hi;
    explicit ZonalSplit(int s);
    double z1(double t) const;
    double z2(double t) const;
    double z3(double t) const;
    double total(double t) const { return zonal(s, t); }
};

struct GaussLegendre {
    std::vector<double> nodes;    // ascending in (-1,1)
    std::vector<double> weights;  // sum to 2
    static GaussLegendre build(int n);
};

// Product quadrature grid on S^2: Gauss-Legendre in cos(theta), equispaced
// azimuth.  Total weight is the surface area 4pi.
struct SphereGrid {
    int n_theta = 0, n_phi = 0;
    std::vector<double> cos_theta, sin_theta, theta;
    std::vector<double> theta_weight;  // Gauss-Legendre weight per ring
    double phi_weight() const { return 2.0 * M_PI / n_phi; }
    static SphereGrid build(int n_theta, int n_phi);
};

// Fully normalized associated Legendre values at fixed degree s:
// out[m] for m = 0..s, with Condon-Shortley phase, so that
// Y_{s,m}(theta,phi) = out[m] e^{i m phi} is L^2(S^2)-normalized.
void assoc_legendre_row(int s, double x, std::vector<double>& out);

cplx eval_harmonic(int s, const std::vector<cplx>& coeffs, double theta, double phi);

// Wigner rotation matrices on the coefficient space of H_s, complex basis
// m = -s..s with Condon-Shortley phase.  Built from the eigendecomposition
// of the (real symmetric tridiagonal conjugate of the) y-generator, so
// every d(beta) is unitary to machine precision.
class WignerEngine {
public:
    explicit WignerEngine(int s);
    int degree() const { return s_; }
    CMatrix d_matrix(double beta) const;
    CMatrix D(const std::array<double, 9>& rot) const;  // row-major 3x3, det 1

private:
    int s_;
    Matrix v_;                 // eigenvectors of the tridiagonalized generator
    std::vector<double> lam_;  // its eigenvalues, ideally -s..s
};

// ZYZ Euler angles with R = Rz(alpha) Ry(beta) Rz(gamma); the beta ~ 0/pi
// gimbal branch folds the degenerate angle into alpha.
std::array<double, 3> euler_zyz(const std::array<double, 9>& rot);

// Unitary change of basis: columns are the real spherical harmonics
// expressed in the complex basis.  Column order m' = -s..s with
// r_{-|m|} ~ sin, r_{|m|} ~ cos components.
CMatrix real_basis_unitary(int s);

struct HarmonicSpace {
    int s = 0;
    int dim = 0;
    CMatrix averaging;             // Hermitian (2s+1)x(2s+1)
    std::vector<double> lambdas;   // ascending
    std::vector<double> alphas;    // acos(clamp(lambda/2, -1, 1))
    CMatrix eigvecs;               // orthonormal columns, complex basis
};

CMatrix build_averaging(const WignerEngine& engine, const RotationSet& rot);

// Diagonalizes the averaging matrix through the real harmonic basis, where
// it is real symmetric.
HarmonicSpace joint_eigenbasis(int s, const RotationSet& rot);
HarmonicSpace joint_eigenbasis(const WignerEngine& engine, const RotationSet& rot);

// (integral |psi|^p dsigma)^(1/p) over the surface measure; p = inf is a
// dense grid max with one refinement pass around the argmax.  Columns of
// `coeffs` are independent functions; one norm per column.
std::vector<double> sphere_lp_norms(int s, const CMatrix& coeffs, double p, int n_theta_override = 0);
double lp_norm_sphere(int s, const std::vector<cplx>& coeffs, double p, int n_theta_override = 0);

// Max deviation of the quadrature convolution Z_s * Y from Y over the
// degree-s basis harmonics; `cross_degree` instead convolves harmonics of
// a different degree, where the result must vanish.
double reproduce_check(int s);
double cross_degree_check(int s, int s_other);

struct KernelSplitNorms {
    double z1, z2, z3, total;  // L^{p/2}(S^2) norms of the pieces
    double tail;               // Z_s restricted to s^(-1/2) <= t <= pi - s^(-1/2)
};
KernelSplitNorms kernel_split_norms(int s, double p);

struct AveragedKernelSample {
    std::array<double, 3> y;
    double piece1, piece2, piece3, total;   // L^{p/2} norms in x
    double piece1_prediction;               // 2 q^{-n/2} q^{2n/p} ||Z1||_{p/2}
    double piece2_prediction;               // q^{n/2} ||Z2||_{p/2}
};
struct AveragedKernelReport {
    int s, n;
    double p;
    std::vector<AveragedKernelSample> samples;
};

// L^{p/2}-in-x norms of the split pieces of the word-averaged kernel
// q^{-n/2} sum_{|g|=n} Z_s(d(gx,y)) at sampled base points y.
AveragedKernelReport averaged_kernel_probe(const RotationSet& rot, int s, int n, double p,
                                           int samples, std::uint64_t seed);

struct SphereTheoremRow {
    int s;
    double p;
    double max_joint_norm;        // max_j ||psi_j||_p, L^2-normalized psi
    double ratio_sogge;           // / s^{1/2-2/p}
    double ratio_log;             // / (s^{1/2-2/p}/sqrt(log s))
    double zonal_norm;            // ||Y_{s,0}||_p
    double zonal_ratio_sogge;
};

std::vector<SphereTheoremRow> verify_sphere_theorem(const RotationSet& rot,
                                                    const std::vector<int>& s_list,
                                                    const std::vector<double>& p_list);

}  // namespace specnorm

#endif

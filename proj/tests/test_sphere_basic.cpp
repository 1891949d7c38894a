#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specnorm/rotation.hpp"
#include "specnorm/sphere.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace specnorm;

TEST_CASE("gauss-legendre quadrature is exact on polynomials") {
    GaussLegendre gl = GaussLegendre::build(12);
    double wsum = 0.0;
    for (double w : gl.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    // degree up to 2n-1 = 23 integrates exactly
    for (int k = 0; k <= 23; ++k) {
        double got = 0.0;
        for (int i = 0; i < 12; ++i) got += gl.weights[i] * std::pow(gl.nodes[i], k);
        double want = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
        CHECK(got == doctest::Approx(want).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("legendre polynomial against the standard library") {
    for (int s : {0, 1, 2, 5, 17, 40})
        for (double x : {-0.99, -0.3, 0.0, 0.44, 1.0})
            CHECK(legendre(s, x) == doctest::Approx(std::legendre(s, x)).epsilon(1e-12));
}

TEST_CASE("normalized associated legendre against the standard library") {
    // fully normalized P~_l^m = (-1)^m sqrt((2l+1)/(4pi) (l-m)!/(l+m)!) P_l^m
    // (std::assoc_legendre carries no Condon-Shortley phase)
    for (int l : {1, 3, 8, 12}) {
        for (double x : {-0.7, 0.1, 0.6}) {
            std::vector<double> row;
            assoc_legendre_row(l, x, row);
            for (int m = 0; m <= l; ++m) {
                double lognorm = 0.5 * (std::log((2 * l + 1) / (4.0 * M_PI)) +
                                        std::lgamma(l - m + 1.0) - std::lgamma(l + m + 1.0));
                double want = ((m % 2) ? -1.0 : 1.0) * std::exp(lognorm) *
                              std::assoc_legendre(l, m, x);
                CHECK(row[m] == doctest::Approx(want).epsilon(1e-11).scale(1e-3));
            }
        }
    }
}

TEST_CASE("spherical harmonic addition theorem") {
    // sum_m |Y_{s,m}(x)|^2 = (2s+1)/(4pi) at any point
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int s : {4, 21, 60}) {
        double x = u(rng);
        std::vector<double> row;
        assoc_legendre_row(s, x, row);
        double total = row[0] * row[0];
        for (int m = 1; m <= s; ++m) total += 2.0 * row[m] * row[m];
        CHECK(total == doctest::Approx((2 * s + 1) / (4.0 * M_PI)).epsilon(1e-12));
    }
}

TEST_CASE("zonal kernel L2 norm") {
    // ||Z_s||_2^2 = (2s+1)/(4pi): quadrature over the sphere
    int s = 15;
    GaussLegendre gl = GaussLegendre::build(s + 1);
    double total = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        double t = std::acos(gl.nodes[i]);
        total += gl.weights[i] * 2.0 * M_PI * zonal(s, t) * zonal(s, t);
    }
    CHECK(total == doctest::Approx((2 * s + 1) / (4.0 * M_PI)).epsilon(1e-12));
}

TEST_CASE("zonal split partitions the kernel") {
    ZonalSplit split(30);
    CHECK(split.lo == doctest::Approx(std::pow(30.0, -0.5)));
    CHECK(split.hi == doctest::Approx(std::pow(30.0, -0.25)));
    for (double t = 0.0; t <= M_PI; t += 0.003) {
        double sum = split.z1(t) + split.z2(t) + split.z3(t);
        CHECK(std::abs(sum - split.total(t)) <= 1e-12);
    }
    // window really is 1 below lo and 0 above hi
    CHECK(split.z1(split.lo * 0.5) == doctest::Approx(zonal(30, split.lo * 0.5)));
    CHECK(split.z1(split.hi * 1.01) == 0.0);
}

TEST_CASE("wigner D at s=1 equals the conjugated rotation") {
    // oracle: H_1 = span{x,y,z} up to normalization; in the basis
    // (Y_{-1}, Y_0, Y_1) the coordinate functions are
    //   x -> sqrt(2pi/3) (1, 0, -1),  y -> i sqrt(2pi/3) (1, 0, 1),
    //   z -> sqrt(4pi/3) (0, 1, 0)
    // and Lambda(g) f = f(g^{-1} .), so D(g) Q = Q g with Q the column map.
    WignerEngine w(1);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    auto rotz = [](double a) {
        return std::array<double, 9>{std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0,
                                     0, 0, 1};
    };
    auto roty = [](double a) {
        return std::array<double, 9>{std::cos(a), 0, std::sin(a), 0, 1, 0,
                                     -std::sin(a), 0, std::cos(a)};
    };
    auto mul = [](const std::array<double, 9>& a, const std::array<double, 9>& b) {
        std::array<double, 9> c{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) c[3 * i + j] += a[3 * i + k] * b[3 * k + j];
        return c;
    };
    const double c1 = std::sqrt(2.0 * M_PI / 3.0), c0 = std::sqrt(4.0 * M_PI / 3.0);
    const cplx Q[3][3] = {{c1, cplx(0, c1), 0}, {0, 0, c0}, {-c1, cplx(0, c1), 0}};
    for (int trial = 0; trial < 20; ++trial) {
        auto g = mul(rotz(u(rng)), mul(roty(u(rng)), rotz(u(rng))));
        CMatrix d = w.D(g);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                cplx lhs = 0, rhs = 0;
                for (int k = 0; k < 3; ++k) {
                    lhs += d(i, k) * Q[k][j];
                    rhs += Q[i][k] * g[3 * k + j];
                }
                CHECK(std::abs(lhs - rhs) <= 1e-12);
            }
    }
}

TEST_CASE("euler angle extraction round trip") {
    auto rotz = [](double a) {
        return std::array<double, 9>{std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0,
                                     0, 0, 1};
    };
    auto roty = [](double a) {
        return std::array<double, 9>{std::cos(a), 0, std::sin(a), 0, 1, 0,
                                     -std::sin(a), 0, std::cos(a)};
    };
    auto mul = [](const std::array<double, 9>& a, const std::array<double, 9>& b) {
        std::array<double, 9> c{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) c[3 * i + j] += a[3 * i + k] * b[3 * k + j];
        return c;
    };
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    auto check_roundtrip = [&](std::array<double, 9> g) {
        auto [a, b, c] = euler_zyz(g);
        auto back = mul(rotz(a), mul(roty(b), rotz(c)));
        for (int i = 0; i < 9; ++i) CHECK(std::abs(back[i] - g[i]) <= 1e-12);
    };
    for (int trial = 0; trial < 30; ++trial)
        check_roundtrip(mul(rotz(u(rng)), mul(roty(std::abs(u(rng))), rotz(u(rng)))));
    // gimbal branches
    check_roundtrip(rotz(0.8));
    check_roundtrip(mul(rotz(0.8), roty(M_PI)));
    check_roundtrip(roty(M_PI));
}

TEST_CASE("wigner homomorphism and unitarity at moderate degree") {
    RotationSet rot = default_rotation_set();
    WignerEngine w(25);
    const int n = 51;
    CMatrix da = w.D(rot.rotations[0].to_double());
    CMatrix db = w.D(rot.rotations[1].to_double());
    CHECK(cmatmul(da, da.adjoint()).max_abs_diff(CMatrix::identity(n)) <= 1e-12);
    CMatrix dab = w.D((rot.rotations[0] * rot.rotations[1]).to_double());
    CHECK(cmatmul(da, db).max_abs_diff(dab) <= 1e-10);
    // inverse maps to adjoint
    CMatrix dainv = w.D(rot.rotations[0].transposed().to_double());
    CHECK(dainv.max_abs_diff(da.adjoint()) <= 1e-10);
}

TEST_CASE("real basis conjugation is unitary and realifies the averaging") {
    int s = 6;
    CMatrix u = real_basis_unitary(s);
    CHECK(cmatmul(u, u.adjoint()).max_abs_diff(CMatrix::identity(2 * s + 1)) <= 1e-14);

    RotationSet rot = default_rotation_set();
    WignerEngine w(s);
    CMatrix h = build_averaging(w, rot);
    CHECK(h.max_abs_diff(h.adjoint()) <= 1e-13);  // Hermitian
    CMatrix a = cmatmul(u.adjoint(), cmatmul(h, u));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) CHECK(std::abs(a(i, j).imag()) <= 1e-12);
}

TEST_CASE("joint eigenbasis residual and re-diagonalization oracle") {
    RotationSet rot = default_rotation_set();
    int s = 10;
    HarmonicSpace space = joint_eigenbasis(s, rot);
    const int n = space.dim;
    REQUIRE(n == 2 * s + 1);
    // columns orthonormal
    CMatrix gram = cmatmul(space.eigvecs.adjoint(), space.eigvecs);
    CHECK(gram.max_abs_diff(CMatrix::identity(n)) <= 1e-12);
    // residual H v = lambda v
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            cplx acc = 0;
            for (int k = 0; k < n; ++k) acc += space.averaging(i, k) * space.eigvecs(k, j);
            CHECK(std::abs(acc - space.lambdas[j] * space.eigvecs(i, j)) <= 1e-12);
        }
    // eigenvalues within the tree spectral bound 2 cosh(log q / 2)
    double bound = 2.0 * std::cosh(0.5 * std::log(3.0));
    for (double lam : space.lambdas) CHECK(std::abs(lam) <= bound + 1e-9);
    for (int j = 0; j < n; ++j)
        CHECK(space.alphas[j] ==
              doctest::Approx(std::acos(std::clamp(space.lambdas[j] / 2.0, -1.0, 1.0))));
}

TEST_CASE("parseval: grid L2 norm equals coefficient norm") {
    int s = 18;
    std::mt19937_64 rng(8);
    std::normal_distribution<double> gauss;
    CMatrix coeffs(2 * s + 1, 2);
    double c2[2] = {0, 0};
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i <= 2 * s; ++i) {
            coeffs(i, j) = cplx(gauss(rng), gauss(rng));
            c2[j] += std::norm(coeffs(i, j));
        }
    auto norms = sphere_lp_norms(s, coeffs, 2.0);
    CHECK(norms[0] == doctest::Approx(std::sqrt(c2[0])).epsilon(1e-10));
    CHECK(norms[1] == doctest::Approx(std::sqrt(c2[1])).epsilon(1e-10));
}

TEST_CASE("zonal sup norm closed form") {
    // |Y_{s,0}| peaks at the poles with value sqrt((2s+1)/(4pi))
    for (int s : {9, 33}) {
        std::vector<cplx> zc(2 * s + 1, cplx(0.0));
        zc[s] = 1.0;
        double got = lp_norm_sphere(s, zc, std::numeric_limits<double>::infinity());
        CHECK(got == doctest::Approx(std::sqrt((2 * s + 1) / (4.0 * M_PI))).epsilon(1e-5));
    }
}

TEST_CASE("finite-p norm against a 1-D quadrature oracle") {
    // zonal functions reduce to a theta integral; compare the 2-D grid path
    // against dense Simpson integration of |Y_{s,0}|^p
    int s = 12;
    double p = 10.0;
    std::vector<cplx> zc(2 * s + 1, cplx(0.0));
    zc[s] = 1.0;
    double got = lp_norm_sphere(s, zc, p);
    // composite Simpson with alternating 4/2 weights
    const int panels = 20000;
    double acc = 0.0;
    std::vector<double> row;
    for (int i = 0; i <= panels; ++i) {
        double t = M_PI * i / panels;
        assoc_legendre_row(s, std::cos(t), row);
        double f = std::pow(std::abs(row[0]), p) * std::sin(t) * 2.0 * M_PI;
        double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * f;
    }
    acc *= (M_PI / panels) / 3.0;
    CHECK(got == doctest::Approx(std::pow(acc, 1.0 / p)).epsilon(1e-8));
}

TEST_CASE("resolution guard") {
    int s = 10;
    CMatrix coeffs(2 * s + 1, 1);
    coeffs(s, 0) = 1.0;
    CHECK_THROWS_AS(sphere_lp_norms(s, coeffs, 4.0, 5), ResolutionTooLow);
}

TEST_CASE("reproducing property at moderate degree") {
    CHECK(reproduce_check(16) <= 1e-10);
    CHECK(cross_degree_check(16, 11) <= 1e-10);
    CHECK(cross_degree_check(7, 20) <= 1e-10);
}

TEST_CASE("kernel split norms against a flat grid oracle") {
    int s = 40;
    double p = 10.0;
    KernelSplitNorms kn = kernel_split_norms(s, p);
    ZonalSplit split(s);
    const int panels = 400000;  // fine trapezoid over [0, pi]
    double acc[4] = {0, 0, 0, 0};
    for (int i = 0; i <= panels; ++i) {
        double t = M_PI * i / panels;
        double w = (i == 0 || i == panels) ? 0.5 : 1.0;
        double base = w * std::sin(t) * 2.0 * M_PI * (M_PI / panels);
        acc[0] += base * std::pow(std::abs(split.z1(t)), p / 2);
        acc[1] += base * std::pow(std::abs(split.z2(t)), p / 2);
        acc[2] += base * std::pow(std::abs(split.z3(t)), p / 2);
        acc[3] += base * std::pow(std::abs(split.total(t)), p / 2);
    }
    CHECK(kn.z1 == doctest::Approx(std::pow(acc[0], 2 / p)).epsilon(1e-6));
    CHECK(kn.z2 == doctest::Approx(std::pow(acc[1], 2 / p)).epsilon(1e-6));
    CHECK(kn.z3 == doctest::Approx(std::pow(acc[2], 2 / p)).epsilon(1e-6));
    CHECK(kn.total == doctest::Approx(std::pow(acc[3], 2 / p)).epsilon(1e-6));
    CHECK_THROWS_AS(kernel_split_norms(20, 4.0), std::invalid_argument);
}

TEST_CASE("averaged kernel probe degenerates to the split norms at n=0") {
    RotationSet rot = default_rotation_set();
    int s = 30;
    double p = 10.0;
    auto rep = averaged_kernel_probe(rot, s, 0, p, 2, 77);
    KernelSplitNorms kn = kernel_split_norms(s, p);
    REQUIRE(rep.samples.size() == 2);
    for (const auto& smp : rep.samples) {
        // rotation invariance: independent of the sampled base point; the
        // 2-D grid quadrature agrees with the 1-D adaptive integral
        CHECK(smp.piece1 == doctest::Approx(kn.z1).epsilon(2e-3));
        CHECK(smp.piece2 == doctest::Approx(kn.z2).epsilon(2e-3));
        CHECK(smp.piece3 == doctest::Approx(kn.z3).epsilon(2e-3));
        CHECK(smp.total == doctest::Approx(kn.total).epsilon(2e-3));
    }
}

TEST_CASE("averaged kernel total L1 mass counts every word once") {
    // sum over words of the L1 norm in x of Z_s(d(gx, y)) is (number of
    // words) * ||Z_s||_1 by the change of variables x -> g^{-1} x; with the
    // q^{-n/2} prefactor that is (q+1) q^{n/2 - 1} * ||Z_s||_1, not
    // q^{n/2} ||Z_s||_1 (the count is (q+1) q^{n-1}, not q^n).
    RotationSet rot = default_rotation_set();
    const int s = 8, n = 2;
    const double q = 3.0;
    auto words = enumerate_words(rot, n);
    CHECK(words.size() == 12);  // 4 * 3

    // ||Z_s||_1 by quadrature
    GaussLegendre gl = GaussLegendre::build(200);
    double z1norm = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i)
        z1norm += gl.weights[i] * 2.0 * M_PI * std::abs(zonal(s, std::acos(gl.nodes[i])));

    std::array<double, 3> y = {0.267261241912424, 0.534522483824849, 0.801783725737273};
    double total = 0.0;
    GaussLegendre glt = GaussLegendre::build(120);
    const int nphi = 240;
    for (std::size_t it = 0; it < glt.nodes.size(); ++it) {
        double ct = glt.nodes[it], st = std::sqrt(1.0 - ct * ct);
        for (int ip = 0; ip < nphi; ++ip) {
            double phi = 2.0 * M_PI * ip / nphi;
            double x[3] = {st * std::cos(phi), st * std::sin(phi), ct};
            double w = glt.weights[it] * 2.0 * M_PI / nphi;
            for (const auto& word : words) {
                auto g = word.matrix.to_double();
                double gx[3] = {g[0] * x[0] + g[1] * x[1] + g[2] * x[2],
                                g[3] * x[0] + g[4] * x[1] + g[5] * x[2],
                                g[6] * x[0] + g[7] * x[1] + g[8] * x[2]};
                double d = std::acos(std::clamp(
                    gx[0] * y[0] + gx[1] * y[1] + gx[2] * y[2], -1.0, 1.0));
                total += w * std::pow(q, -n / 2.0) * std::abs(zonal(s, d));
            }
        }
    }
    double expect = (q + 1.0) * std::pow(q, n / 2.0 - 1.0) * z1norm;
    CHECK(total == doctest::Approx(expect).epsilon(1e-3));
}

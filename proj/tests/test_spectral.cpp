#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specnorm/graphs.hpp"
#include "specnorm/spectral.hpp"
#include "specnorm/treeops.hpp"

#include <cmath>

using namespace specnorm;

TEST_CASE("theta parametrization round trip") {
    for (double lam : {-1.99, -1.0, 0.0, 0.5, 1.3, 2.0}) {
        Theta t = Theta::from_lambda(lam);
        CHECK(t.tempered);
        CHECK(t.lambda() == doctest::Approx(lam).epsilon(1e-14));
        CHECK(2.0 * std::cos(t.value) == doctest::Approx(lam).epsilon(1e-12));
    }
    for (double lam : {2.2, 3.0, -2.5}) {
        Theta t = Theta::from_lambda(lam);
        CHECK_FALSE(t.tempered);
        CHECK(t.lambda() == doctest::Approx(lam).epsilon(1e-14));
    }
}

TEST_CASE("spherical function solves the radial eigenvalue equation") {
    // independent oracle: on the q+1-regular tree a radial lambda-eigenfunction
    // f(n) of T_q satisfies
    //   q^{-1/2} (q+1) f(1)            = lambda f(0)
    //   q^{-1/2} (f(n-1) + q f(n+1))   = lambda f(n),  n >= 1
    for (int q : {2, 3, 5}) {
        for (double lam : {-1.7, -0.4, 0.9, 1.999, 2.0, 2.4, -2.8}) {
            Theta t = Theta::from_lambda(lam);
            std::vector<double> f(12);
            for (int n = 0; n < 12; ++n) f[n] = spherical_function(q, t, n);
            CHECK(f[0] == doctest::Approx(1.0));
            const double sq = std::sqrt((double)q);
            CHECK((q + 1) / sq * f[1] == doctest::Approx(lam * f[0]).epsilon(1e-10));
            for (int n = 1; n < 11; ++n)
                CHECK((f[n - 1] + q * f[n + 1]) / sq ==
                      doctest::Approx(lam * f[n]).epsilon(1e-9));
        }
    }
}

TEST_CASE("eigendecomposition of K4") {
    RegularGraph g = graph_from_arg("complete:n=4");
    SpectralData spec = eig_sym(adjacency_op(g));
    REQUIRE(spec.size() == 4);
    const double r2 = std::sqrt(2.0);
    CHECK(spec.eigenvalues[0] == doctest::Approx(-1.0 / r2));
    CHECK(spec.eigenvalues[1] == doctest::Approx(-1.0 / r2));
    CHECK(spec.eigenvalues[2] == doctest::Approx(-1.0 / r2));
    CHECK(spec.eigenvalues[3] == doctest::Approx(3.0 / r2));
    CHECK(spec.tempered[0]);
    CHECK_FALSE(spec.tempered[3]);

    // eigenvector residual and orthonormality
    Matrix a = adjacency_op(g);
    for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < 4; ++i) {
            double acc = 0;
            for (int k = 0; k < 4; ++k) acc += a(i, k) * spec.eigenvectors(k, j);
            CHECK(acc == doctest::Approx(spec.eigenvalues[j] * spec.eigenvectors(i, j))
                             .epsilon(1e-12));
        }
    }
}

TEST_CASE("projector onto the tempered subspace") {
    GraphBuildSpec bs;
    bs.kind = GraphKind::random_regular;
    bs.n = 80;
    bs.degree = 4;
    bs.seed = 31;
    RegularGraph g = build_graph(bs);
    SpectralData spec = eig_sym(adjacency_op(g));
    SpectralProjector pi = projector(spec, 0.05);

    CHECK(pi.matrix.symmetric(1e-12));
    Matrix sq = matmul(pi.matrix, pi.matrix);
    CHECK(sq.max_abs_diff(pi.matrix) <= 1e-10);

    // trace equals the number of included eigenvalues
    double tr = 0.0;
    for (int i = 0; i < g.num_vertices; ++i) tr += pi.matrix(i, i);
    CHECK(tr == doctest::Approx((double)pi.included.size()).epsilon(1e-10));
    for (int j : pi.included) CHECK(std::abs(spec.eigenvalues[j]) <= 2.05 + 1e-12);
}

TEST_CASE("sphere operator eigenvalue law") {
    GraphBuildSpec bs;
    bs.kind = GraphKind::random_regular;
    bs.n = 150;
    bs.degree = 4;
    bs.seed = 17;
    bs.min_girth = 6;
    RegularGraph g = build_graph(bs);
    SpectralData spec = eig_sym(adjacency_op(g));
    auto sphere = sphere_ops(g, 5);
    auto rows = sn_eigenvalue_check(g, spec, sphere, 5);
    REQUIRE((int)rows.size() == 6);  // n = 0..5
    CHECK(rows[0].measured_factor == doctest::Approx(1.0));
    for (const auto& r : rows) {
        if (r.n == 0) continue;
        // the recursion-defined S_n matches the ((q+1)/q)-corrected law, not
        // the bare q^{n/2} phi(n) one
        CHECK(r.dev_corrected <= 1e-9);
        CHECK(r.dev_bare > 1e-3);
        CHECK(r.measured_factor == doctest::Approx(4.0 / 3.0).epsilon(1e-8));
    }
}

TEST_CASE("sn_eigenvalue consistency with spherical_function") {
    for (int q : {2, 3})
        for (double lam : {1.2, 2.3, -2.6}) {
            Theta t = Theta::from_lambda(lam);
            CHECK(sn_eigenvalue(q, t, 0) == doctest::Approx(1.0));
            for (int n = 1; n <= 6; ++n) {
                double expect = (q + 1.0) / q * std::pow((double)q, n / 2.0) *
                                spherical_function(q, t, n);
                CHECK(sn_eigenvalue(q, t, n) == doctest::Approx(expect).epsilon(1e-12));
            }
        }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specnorm/graphs.hpp"
#include "specnorm/matrix.hpp"
#include "specnorm/treeops.hpp"

#include <cmath>

using namespace specnorm;

namespace {

RegularGraph test_graph(int n, std::uint64_t seed, int min_girth = 0) {
    GraphBuildSpec spec;
    spec.kind = GraphKind::random_regular;
    spec.n = n;
    spec.degree = 4;
    spec.seed = seed;
    spec.min_girth = min_girth;
    return build_graph(spec);
}

}  // namespace

TEST_CASE("recursion and walk-count sphere operators agree") {
    RegularGraph g = test_graph(60, 21);
    auto rec = sphere_ops(g, 8);
    auto cnt = sphere_ops_walkcount(g, 8);
    REQUIRE(rec.size() == cnt.size());
    for (std::size_t n = 0; n < rec.size(); ++n)
        CHECK(rec[n].max_abs_diff(cnt[n]) <= 1e-11);
}

TEST_CASE("walk counts from a single source match the dense operator") {
    RegularGraph g = test_graph(40, 5);
    auto ops = sphere_ops_walkcount(g, 6);
    const double sq = std::sqrt((double)g.q());
    for (int src : {0, 7, 39}) {
        auto counts = nbw_counts_from(g, src, 6);
        for (int n = 0; n <= 6; ++n)
            for (int y = 0; y < g.num_vertices; ++y) {
                double from_op = ops[n](src, y) * std::pow(sq, n);
                CHECK(std::abs(counts[n][y] - from_op) <= 1e-9 * (1.0 + from_op));
            }
    }
}

TEST_CASE("first sphere operators by hand on K4") {
    // on K4 (q=2) every pair of distinct vertices is adjacent and every
    // non-backtracking 2-step walk x->z->y with y != x exists for the two
    // choices of z not in {x,y}; also x->z->x is backtracking-free only
    // through... no: z->x reverses nothing, so K_2(x,x) counts walks
    // x->z->x which ARE backtracking (edge reversal), hence 0.
    RegularGraph g = graph_from_arg("complete:n=4");
    auto ops = sphere_ops_walkcount(g, 2);
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
            if (x == y) {
                CHECK(ops[1](x, y) == doctest::Approx(0.0));
                CHECK(ops[2](x, y) == doctest::Approx(0.0));
            } else {
                CHECK(ops[1](x, y) == doctest::Approx(1.0 / std::sqrt(2.0)));
                CHECK(ops[2](x, y) == doctest::Approx(2.0 / 2.0));  // 2 walks, q^{-1}
            }
        }
}

TEST_CASE("chebyshev recursion satisfies the defining relation") {
    RegularGraph g = test_graph(50, 9);
    Matrix tq = adjacency_op(g);
    auto p = chebyshev_props(g, 10);
    CHECK(p[0].max_abs_diff(Matrix::identity(g.num_vertices)) == 0.0);
    Matrix half = tq;
    half *= 0.5;
    CHECK(p[1].max_abs_diff(half) <= 1e-15);
    for (int n = 1; n < 10; ++n) {
        Matrix lhs = matmul(tq, p[n]);
        Matrix rhs = p[n + 1] + p[n - 1];
        CHECK(lhs.max_abs_diff(rhs) <= 1e-12);
    }
}

TEST_CASE("chebyshev product identity") {
    RegularGraph g = test_graph(50, 13);
    auto p = chebyshev_props(g, 16);
    for (int n : {2, 5, 8})
        for (int k : {1, 4, 8}) {
            Matrix lhs = matmul(p[n], p[k]);
            Matrix rhs = p[n + k] + p[std::abs(n - k)];
            rhs *= 0.5;
            CHECK(lhs.max_abs_diff(rhs) <= 1e-12);
        }
}

TEST_CASE("chebyshev-sphere decomposition on a graph") {
    RegularGraph g = test_graph(60, 2);
    for (int n : {2, 4, 6, 8}) CHECK(chebyshev_sphere_decomposition_check(g, n) <= 1e-12);
    CHECK_THROWS_AS(chebyshev_sphere_decomposition_check(g, 3), OddIndex);
}

TEST_CASE("tree ball layout") {
    TreeBall ball = TreeBall::build(2, 4);
    // 1 + 3*(2^4 - 1) vertices for q = 2
    CHECK(ball.size() == 1 + 3 * (16 - 1));
    CHECK(ball.distance(0) == 0);
    CHECK(ball.distance(1) == 1);
    CHECK(ball.distance(ball.size() - 1) == 4);
    // sphere sizes: 1, q+1, (q+1)q, ...
    for (int r = 1; r <= 4; ++r) {
        std::int64_t size = ball.sphere_start[r + 1] - ball.sphere_start[r];
        CHECK(size == 3 * (std::int64_t)std::llround(std::pow(2.0, r - 1)));
    }
}

TEST_CASE("tree ball adjacency operator vs explicit matrix") {
    const int q = 3, radius = 3;
    TreeBall ball = TreeBall::build(q, radius);
    const int n = (int)ball.size();
    Matrix a(n, n);
    for (int v = 1; v < n; ++v) {
        a(v, ball.parent[v]) = 1.0 / std::sqrt((double)q);
        a(ball.parent[v], v) = 1.0 / std::sqrt((double)q);
    }
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = std::sin(0.37 * i + 1.0);
    std::vector<double> got = ball.apply_tq(x);
    std::vector<double> want = matvec(a, x);
    for (int i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

TEST_CASE("tree kernel closed form at small n") {
    CHECK(tree_kernel_check(2, 2) <= 1e-13);
    CHECK(tree_kernel_check(2, 6) <= 1e-13);
    CHECK(tree_kernel_check(3, 4) <= 1e-13);
}

TEST_CASE("chebyshev kernel on the tree by direct expansion") {
    // independent oracle for the closed form at q=2, n=4: expand
    // P_4(T/2) = T^4/2 - 2 T^2 + I - I/2 ... use the explicit coefficients
    // 2 cos(4t) = 16 c^4 - 16 c^2 + 2 with c = cos t, so
    // P_4 = (T^4 - 4 T^2 + I) - ... easier: P_4 = T P_3 - P_2 computed by
    // repeated apply_tq, which is exactly what tree_kernel_check does -- so
    // instead verify one closed-form entry against a hand count.
    const int q = 2, n = 4;
    TreeBall ball = TreeBall::build(q, n + 2);
    std::vector<double> p0(ball.size()), p1;
    p0[0] = 1.0;
    std::vector<double> tq0 = ball.apply_tq(p0);
    p1 = tq0;
    for (auto& v : p1) v *= 0.5;
    std::vector<double> pm1 = p0, cur = p1;
    for (int k = 2; k <= n; ++k) {
        std::vector<double> t = ball.apply_tq(cur);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] -= pm1[i];
        pm1 = cur;
        cur = t;
    }
    CHECK(cur[0] == doctest::Approx((1.0 - q) / (2.0 * std::pow((double)q, n / 2.0))));
    // boundary sphere |x| = n
    std::int64_t b = ball.sphere_start[n];
    CHECK(cur[b] == doctest::Approx(1.0 / (2.0 * std::pow((double)q, n / 2.0))));
    // odd sphere vanishes
    CHECK(cur[ball.sphere_start[n - 1]] == doctest::Approx(0.0));
}

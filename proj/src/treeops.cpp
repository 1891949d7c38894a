#include "specnorm/treeops.hpp"

#include <algorithm>
#include <cmath>

namespace specnorm {

Matrix adjacency_op(const RegularGraph& g) {
    const int n = g.num_vertices;
    const double w = 1.0 / std::sqrt((double)g.q());
    Matrix t(n, n);
    for (int u = 0; u < n; ++u)
        for (int v : g.adjacency[u]) t(u, v) += w;
    return t;
}

std::vector<Matrix> sphere_ops(const RegularGraph& g, int n_max) {
    const int q = g.q();
    std::vector<Matrix> s;
    s.reserve(n_max + 1);
    s.push_back(Matrix::identity(g.num_vertices));
    if (n_max == 0) return s;
    Matrix tq = adjacency_op(g);
    s.push_back(tq);
    for (int n = 1; n < n_max; ++n) {
        Matrix next = matmul(tq, s[n]);
        if (n == 1)
            next -= s[0] * ((double)(q + 1) / q);
        else
            next -= s[n - 1];
        s.push_back(std::move(next));
    }
    return s;
}

std::vector<std::vector<double>> nbw_counts_from(const RegularGraph& g, int source, int n_max) {
    const int n = g.num_vertices;
    const int d = g.degree;
    // state: walk count per directed edge (u -> v), stored as adj slot index
    std::vector<std::vector<double>> out(n_max + 1, std::vector<double>(n, 0.0));
    out[0][source] = 1.0;
    if (n_max == 0) return out;

    // slot of the reverse edge for each directed edge
    std::vector<std::int32_t> rev((std::size_t)n * d);
    for (int u = 0; u < n; ++u)
        for (int k = 0; k < d; ++k) {
            int v = g.adjacency[u][k];
            int slot = -1;
            for (int l = 0; l < d; ++l)
                if (g.adjacency[v][l] == u) {
                    slot = l;
                    break;
                }
            rev[(std::size_t)u * d + k] = (std::int32_t)((std::size_t)v * d + slot);
        }

    std::vector<double> cur((std::size_t)n * d, 0.0), next;
    for (int k = 0; k < d; ++k) cur[(std::size_t)source * d + k] = 1.0;
    for (int v : g.adjacency[source]) out[1][v] += 1.0;

    for (int len = 2; len <= n_max; ++len) {
        next.assign((std::size_t)n * d, 0.0);
        for (int u = 0; u < n; ++u)
            for (int k = 0; k < d; ++k) {
                double c = cur[(std::size_t)u * d + k];
                if (c == 0.0) continue;
                int v = g.adjacency[u][k];
                std::int32_t back = rev[(std::size_t)u * d + k];
                for (int l = 0; l < d; ++l) {
                    std::size_t e = (std::size_t)v * d + l;
                    if ((std::int32_t)e == back) continue;
                    next[e] += c;
                }
            }
        std::swap(cur, next);
        for (int u = 0; u < n; ++u)
            for (int k = 0; k < d; ++k) {
                double c = cur[(std::size_t)u * d + k];
                if (c != 0.0) out[len][g.adjacency[u][k]] += c;
            }
    }
    return out;
}

std::vector<Matrix> sphere_ops_walkcount(const RegularGraph& g, int n_max) {
    const int n = g.num_vertices;
    const double q = (double)g.q();
    std::vector<Matrix> s(n_max + 1, Matrix(n, n));
    for (int x = 0; x < n; ++x) {
        auto counts = nbw_counts_from(g, x, n_max);
        for (int len = 0; len <= n_max; ++len) {
            double scale = std::pow(q, -0.5 * len);
            for (int y = 0; y < n; ++y) s[len](x, y) = scale * counts[len][y];
        }
    }
    return s;
}

std::vector<Matrix> chebyshev_props(const Matrix& tq, int n_max) {
    std::vector<Matrix> p;
    p.reserve(n_max + 1);
    p.push_back(Matrix::identity(tq.rows()));
    if (n_max == 0) return p;
    p.push_back(tq * 0.5);
    for (int n = 1; n < n_max; ++n) {
        Matrix next = matmul(tq, p[n]);
        next -= p[n - 1];
        p.push_back(std::move(next));
    }
    return p;
}

std::vector<Matrix> chebyshev_props(const RegularGraph& g, int n_max) {
    return chebyshev_props(adjacency_op(g), n_max);
}

double chebyshev_sphere_decomposition_check(const RegularGraph& g, int n) {
    if (n % 2 != 0 || n < 2) throw OddIndex("chebyshev_sphere_decomposition_check: n must be even and >= 2");
    auto cheb = chebyshev_props(g, n);
    auto s = sphere_ops(g, n);
    const double q = (double)g.q();
    // the expansion coefficients act on the raw spherical sums q^{k} S_{2k};
    // with the normalized operators the S_{2k} weight is (1-q)/(2 q^{(n-2k)/2})
    Matrix rhs(g.num_vertices, g.num_vertices);
    for (int k = 0; k < n / 2; ++k)
        rhs += s[2 * k] * ((1.0 - q) / (2.0 * std::pow(q, 0.5 * (n - 2 * k))));
    rhs += s[n] * 0.5;
    return cheb[n].max_abs_diff(rhs);
}

int TreeBall::distance(std::int64_t v) const {
    auto it = std::upper_bound(sphere_start.begin(), sphere_start.end(), v);
    return (int)(it - sphere_start.begin()) - 1;
}

TreeBall TreeBall::build(int q, int radius) {
    if (q < 2) throw std::invalid_argument("TreeBall: need q >= 2");
    TreeBall b;
    b.q = q;
    b.radius = radius;
    b.sphere_start.resize(radius + 2);
    std::int64_t total = 1, shell = 0;
    b.sphere_start[0] = 0;
    for (int r = 1; r <= radius; ++r) {
        shell = (r == 1) ? (std::int64_t)(q + 1) : shell * q;
        b.sphere_start[r] = total;
        total += shell;
    }
    b.sphere_start[radius + 1] = total;

    b.parent.resize(total);
    b.parent[0] = -1;
    // children of the shell at distance r occupy consecutive blocks at r+1
    std::int64_t child = 1;
    for (int r = 0; r < radius; ++r) {
        std::int64_t lo = b.sphere_start[r], hi = b.sphere_start[r + 1];
        int fanout = (r == 0) ? q + 1 : q;
        for (std::int64_t v = lo; v < hi; ++v)
            for (int c = 0; c < fanout; ++c) b.parent[child++] = (std::int32_t)v;
    }
    return b;
}

std::vector<double> TreeBall::apply_tq(const std::vector<double>& x) const {
    const double w = 1.0 / std::sqrt((double)q);
    std::vector<double> y(x.size(), 0.0);
    for (std::int64_t v = 1; v < size(); ++v) {
        std::int32_t p = parent[v];
        y[p] += w * x[v];
        y[v] += w * x[p];
    }
    return y;
}

double tree_kernel_check(int q, int n) {
    if (n % 2 != 0 || n < 2) throw OddIndex("tree_kernel_check: n must be even and >= 2");
    TreeBall ball = TreeBall::build(q, n + 2);
    const std::int64_t sz = ball.size();

    // Chebyshev recursion on delta_o with the ball's own adjacency
    std::vector<double> prev(sz, 0.0), cur, next;
    prev[0] = 1.0;                       // P_0 delta_o
    cur = ball.apply_tq(prev);
    for (double& v : cur) v *= 0.5;      // P_1 = T_q/2
    for (int k = 1; k < n; ++k) {
        next = ball.apply_tq(cur);
        for (std::int64_t i = 0; i < sz; ++i) next[i] -= prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }

    const double qn2 = std::pow((double)q, 0.5 * n);
    const double inner = (1.0 - q) / (2.0 * qn2);
    const double edge = 1.0 / (2.0 * qn2);
    double dev = 0.0;
    for (int r = 0; r <= ball.radius; ++r) {
        double expect = 0.0;
        if (r % 2 == 0 && r < n) expect = inner;
        else if (r == n) expect = edge;
        for (std::int64_t v = ball.sphere_start[r]; v < ball.sphere_start[r + 1]; ++v)
            dev = std::max(dev, std::abs(cur[v] - expect));
    }
    return dev;
}

}  // namespace specnorm

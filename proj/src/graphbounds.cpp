#include "specnorm/graphbounds.hpp"
#include "specnorm/rng.hpp"
#include "specnorm/treeops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace specnorm {

double lp_norm(const std::vector<double>& v, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p >= 1 required");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    if (p == 2.0) return norm2(v);
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return std::pow(s, 1.0 / p);
}

double op_norm_1_inf(const Matrix& op) { return op.max_abs(); }

std::vector<double> sn_1_inf_norms(const RegularGraph& g, int n_max) {
    const int nv = g.num_vertices;
    const double q = (double)g.q();
    std::vector<double> max_counts(n_max + 1, 0.0);
    for (int x = 0; x < nv; ++x) {
        auto counts = nbw_counts_from(g, x, n_max);
        for (int n = 0; n <= n_max; ++n)
            for (int y = 0; y < nv; ++y) max_counts[n] = std::max(max_counts[n], counts[n][y]);
    }
    std::vector<double> norms(n_max + 1);
    for (int n = 0; n <= n_max; ++n) norms[n] = std::pow(q, -0.5 * n) * max_counts[n];
    return norms;
}

int check_condition(const RegularGraph& g, int n_max, double delta) {
    auto norms = sn_1_inf_norms(g, n_max);
    const double q = (double)g.q();
    const double c = 1.0 + 1e-9;
    int best = 0;
    for (int n = 1; n <= n_max; ++n) {
        if (norms[n] <= c * std::pow(q, (-0.5 + delta) * n))
            best = n;
        else
            break;
    }
    return best;
}

CosineMass cosine_mass(int N, int alpha_grid_size) {
    if (N < 1) throw std::invalid_argument("cosine_mass: N >= 1 required");
    int grid = (alpha_grid_size > 0) ? alpha_grid_size : 10 * N + 1;
    if (grid < 10 * N) grid = 10 * N + 1;  // resolution floor, integrand frequency <= 2N
    CosineMass out;
    out.grid_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        double alpha = M_PI * i / (grid - 1);
        double s = 0.0;
        for (int n = 1; n <= N; ++n) {
            double cn = std::cos(n * alpha);
            s += cn * cn;
        }
        out.grid_min = std::min(out.grid_min, s);
    }
    out.analytic_bound = (2.0 * N - 1.0) / 4.0 - 1.0 / (4.0 * std::sin(M_PI / (2.0 * N + 1.0)));
    return out;
}

ClusterOperator build_cluster(const std::vector<Matrix>& cheb, const SpectralProjector& pi,
                              int N, double alpha) {
    if (N % 2 != 0 || N < 2) throw OddN("build_cluster: N must be even and >= 2");
    if ((int)cheb.size() <= N) throw std::invalid_argument("build_cluster: need P_0..P_N");
    ClusterOperator w;
    w.N = N;
    w.alpha = alpha;
    w.projector_epsilon = pi.epsilon;
    Matrix sum(cheb[0].rows(), cheb[0].cols());
    for (int n = 1; n <= N / 2; ++n) sum += cheb[2 * n] * std::cos(2.0 * n * alpha);
    w.matrix = matmul(sum, pi.matrix);
    return w;
}

ClusterOperator build_cluster(const RegularGraph& g, const SpectralData& spec,
                              int N, double alpha, double epsilon) {
    auto cheb = chebyshev_props(g, N);
    auto pi = projector(spec, epsilon);
    return build_cluster(cheb, pi, N, alpha);
}

double norm_2_inf(const Matrix& w) {
    double best = 0.0;
    for (std::size_t x = 0; x < w.rows(); ++x) {
        double s = 0.0;
        const double* row = w.row(x);
        for (std::size_t y = 0; y < w.cols(); ++y) s += row[y] * row[y];
        best = std::max(best, s);
    }
    return std::sqrt(best);
}

double norm_2_p_lower(const Matrix& w, double p, int probes, std::uint64_t seed, int iterations) {
    const std::size_t n = w.cols();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double best = 0.0;
    for (int trial = 0; trial < probes; ++trial) {
        std::vector<double> v(n);
        for (double& x : v) x = gauss(rng);
        double nv = norm2(v);
        for (double& x : v) x /= nv;
        double step = 0.5;
        double cur = lp_norm(matvec(w, v), p);
        for (int it = 0; it < iterations; ++it) {
            // ascent direction: gradient of ||Wv||_p is W^T (d|Wv|^p terms)
            std::vector<double> wv = matvec(w, v);
            double np = lp_norm(wv, p);
            if (np == 0.0) break;
            std::vector<double> gvec(n, 0.0);
            if (std::isinf(p)) {
                // subgradient: row of max |(Wv)_x|
                std::size_t arg = 0;
                for (std::size_t x = 1; x < n; ++x)
                    if (std::abs(wv[x]) > std::abs(wv[arg])) arg = x;
                double s = (wv[arg] >= 0.0) ? 1.0 : -1.0;
                for (std::size_t y = 0; y < n; ++y) gvec[y] = s * w(arg, y);
            } else {
                std::vector<double> u(n);
                for (std::size_t x = 0; x < n; ++x)
                    u[x] = std::pow(std::abs(wv[x]), p - 1.0) * ((wv[x] >= 0.0) ? 1.0 : -1.0);
                for (std::size_t x = 0; x < n; ++x) {
                    if (u[x] == 0.0) continue;
                    const double* row = w.row(x);
                    for (std::size_t y = 0; y < n; ++y) gvec[y] += u[x] * row[y];
                }
            }
            std::vector<double> cand(n);
            double gn = norm2(gvec);
            if (gn == 0.0) break;
            for (std::size_t y = 0; y < n; ++y) cand[y] = v[y] + step * gvec[y] / gn;
            double cn = norm2(cand);
            for (double& x : cand) x /= cn;
            double val = lp_norm(matvec(w, cand), p);
            if (val > cur) {
                cur = val;
                v = std::move(cand);
            } else {
                step *= 0.5;
                if (step < 1e-8) break;
            }
        }
        best = std::max(best, cur);
    }
    return best;
}

UntemperedProbeReport untempered_decay_probe(const RegularGraph& g, const SpectralData& spec,
                                             const std::vector<Matrix>& sphere, double epsilon,
                                             int trials, std::uint64_t seed) {
    const std::size_t nv = spec.size();
    std::vector<int> untempered_idx;
    for (std::size_t j = 0; j < nv; ++j)
        if (std::abs(spec.eigenvalues[j]) > 2.0 + epsilon) untempered_idx.push_back((int)j);
    if (untempered_idx.empty())
        throw NoUntemperedSpectrum("untempered_decay_probe: no eigenvalue beyond 2+epsilon");

    const int q = g.q();
    const int n_max = (int)sphere.size() - 1;
    Theta theta_eps = Theta::from_lambda(2.0 + epsilon);

    UntemperedProbeReport report;
    report.epsilon = epsilon;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    for (int trial = 0; trial < trials; ++trial) {
        // nonnegative combination of untempered eigenfunctions
        std::vector<double> coef(untempered_idx.size());
        for (double& c : coef) c = unif(rng);
        std::vector<double> f(nv, 0.0);
        for (std::size_t a = 0; a < untempered_idx.size(); ++a)
            for (std::size_t x = 0; x < nv; ++x) f[x] += coef[a] * spec.eigenvectors(x, untempered_idx[a]);

        std::size_t xmax = 0;
        for (std::size_t x = 1; x < nv; ++x)
            if (std::abs(f[x]) > std::abs(f[xmax])) xmax = x;
        if (f[xmax] < 0.0)
            for (double& x : f) x = -x;

        // drop eigencomponents negative at the max point, as in the chain
        std::vector<double> fpos(nv, 0.0);
        for (std::size_t a = 0; a < untempered_idx.size(); ++a) {
            int j = untempered_idx[a];
            double contrib = coef[a] * spec.eigenvectors(xmax, j);
            double s = (f[xmax] >= 0.0) ? 1.0 : -1.0;
            if (s * contrib < 0.0) continue;
            for (std::size_t x = 0; x < nv; ++x) fpos[x] += coef[a] * spec.eigenvectors(x, j);
        }
        if (std::abs(fpos[xmax]) < 1e-14) continue;
        if (fpos[xmax] < 0.0)
            for (double& x : fpos) x = -x;

        double f2 = norm2(fpos);
        report.max_sup_over_l2 = std::max(report.max_sup_over_l2, std::abs(fpos[xmax]) / f2);

        for (int k = 2; k <= n_max; k += 2) {
            std::vector<double> skf = matvec(sphere[k], fpos);
            double kk2 = 0.0;
            const double* row = sphere[k].row(xmax);
            for (std::size_t y = 0; y < nv; ++y) kk2 += row[y] * row[y];
            kk2 = std::sqrt(kk2);

            UntemperedProbeRow r;
            r.k = k;
            r.lambda_eps_k = sn_eigenvalue(q, theta_eps, k);
            r.skf_at_max = skf[xmax];
            r.cauchy_schwarz_rhs = kk2 * f2;
            r.lower_ok = skf[xmax] >= r.lambda_eps_k * fpos[xmax] - 1e-9 * std::abs(r.lambda_eps_k);
            r.upper_ok = std::abs(skf[xmax]) <= r.cauchy_schwarz_rhs + 1e-9 * (1.0 + r.cauchy_schwarz_rhs);
            if (!r.lower_ok || !r.upper_ok) ++report.violations;
            if ((int)report.rows.size() < 512) report.rows.push_back(r);
        }
    }
    return report;
}

DelocalizationReport verify_graph_theorem(const RegularGraph& g, const SpectralData& spec,
                                          const std::vector<double>& p_list, double delta,
                                          int n_max) {
    DelocalizationReport rep;
    rep.graph_label = g.label;
    rep.q = g.q();
    rep.girth = girth(g);
    rep.inj_rad = inj_rad(rep.girth);
    rep.delta = delta;
    rep.p_list = p_list;

    if (n_max < 0) {
        // CLI cap: stored operator depth <= 2 log_q |G|
        n_max = std::max(2, (int)(2.0 * std::log((double)g.num_vertices) / std::log((double)g.q())));
    }
    auto norms = sn_1_inf_norms(g, n_max);
    const double q = (double)rep.q;
    for (int n = 1; n <= n_max; ++n) {
        DelocalizationReport::SnRow row;
        row.n = n;
        row.norm_1_inf = norms[n];
        row.implied_delta = 0.5 + std::log(norms[n]) / std::log(q) / n;
        rep.sn_table.push_back(row);
    }
    {
        const double c = 1.0 + 1e-9;
        int best = 0;
        for (int n = 1; n <= n_max; ++n) {
            if (norms[n] <= c * std::pow(q, (-0.5 + delta) * n))
                best = n;
            else
                break;
        }
        rep.admissible_n = std::max(best, 1);
    }
    rep.epsilon_schedule = 0.0;
    if (!p_list.empty()) {
        double pmax = 0.0;
        for (double p : p_list) pmax = std::max(pmax, std::isinf(p) ? 1e6 : p);
        rep.epsilon_schedule = std::min(0.1, (0.5 - delta) * (1.0 - 2.0 / pmax) / 4.0);
    }

    const std::size_t nv = spec.size();
    rep.max_tempered_ratio.assign(p_list.size(), 0.0);
    rep.max_untempered_ratio.assign(p_list.size(), 0.0);
    const double sqrt_n = std::sqrt((double)rep.admissible_n);
    for (std::size_t j = 0; j < nv; ++j) {
        DelocalizationReport::EigRow row;
        row.index = (int)j;
        row.lambda = spec.eigenvalues[j];
        row.tempered = spec.tempered[j];
        std::vector<double> psi(nv);
        for (std::size_t x = 0; x < nv; ++x) psi[x] = spec.eigenvectors(x, j);
        double l2 = norm2(psi);
        for (std::size_t pi = 0; pi < p_list.size(); ++pi) {
            double np = lp_norm(psi, p_list[pi]);
            double ratio = np * sqrt_n / l2;
            row.p_norms.push_back(np);
            row.ratios.push_back(ratio);
            auto& slot = row.tempered ? rep.max_tempered_ratio[pi] : rep.max_untempered_ratio[pi];
            slot = std::max(slot, ratio);  // ties broken by smallest index via strict max
        }
        rep.eig_table.push_back(std::move(row));
    }
    return rep;
}

}  // namespace specnorm

#ifndef SPECNORM_GRAPHBOUNDS_HPP
#define SPECNORM_GRAPHBOUNDS_HPP

#include "specnorm/graphs.hpp"
#include "specnorm/matrix.hpp"
#include "specnorm/spectral.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace specnorm {

struct OddN : std::runtime_error {
    explicit OddN(const std::string& what) : std::runtime_error(what) {}
};
struct NoUntemperedSpectrum : std::runtime_error {
    explicit NoUntemperedSpectrum(const std::string& what) : std::runtime_error(what) {}
};

// Counting-measure lp norm; p = infinity() gives max-abs.
double lp_norm(const std::vector<double>& v, double p);

// L1 -> Linf operator norm = sup |K(x,y)| under counting measure.
double op_norm_1_inf(const Matrix& op);

// sup_y |K_n(x,y)| for all n <= n_max without forming dense operators.
std::vector<double> sn_1_inf_norms(const RegularGraph& g, int n_max);

// Largest N <= n_max with ||S_n||_{1->inf} <= (1+1e-9) q^{(-1/2+delta)n}
// for all n <= N.
int check_condition(const RegularGraph& g, int n_max, double delta);

struct CosineMass {
    double grid_min;       // min over the alpha grid of sum_{n<=N} cos^2(n alpha)
    double analytic_bound; // (2N-1)/4 - 1/(4 sin(pi/(2N+1)))
};

// Grid has 10N+1 equispaced points on [0,pi] unless overridden.
CosineMass cosine_mass(int N, int alpha_grid_size = 0);

struct ClusterOperator {
    int N = 0;
    double alpha = 0.0;
    double projector_epsilon = 0.0;
    Matrix matrix;
};

// W_{N,alpha} = sum_{n=1}^{N/2} cos(2n alpha) P_{2n}(T_q/2) Pi_eps
ClusterOperator build_cluster(const std::vector<Matrix>& cheb, const SpectralProjector& pi,
                              int N, double alpha);
ClusterOperator build_cluster(const RegularGraph& g, const SpectralData& spec,
                              int N, double alpha, double epsilon);

// max_x ||W(x,.)||_2; equals sqrt(||W W*||_{1->inf}) for symmetric W.
double norm_2_inf(const Matrix& w);

// Certified lower bound on ||W||_{2->p}: random unit probes plus
// projected-gradient ascent on ||Wv||_p / ||v||_2.
double norm_2_p_lower(const Matrix& w, double p, int probes, std::uint64_t seed, int iterations = 200);

struct UntemperedProbeRow {
    int k;
    double lambda_eps_k;       // S_k eigenvalue formula at T_q-eigenvalue 2+eps
    double skf_at_max;         // S_k f evaluated at the max point of f
    double cauchy_schwarz_rhs; // ||K_k(x,.)||_2 ||f||_2
    bool lower_ok;             // S_k f(x) >= lambda_eps_k f(x)
    bool upper_ok;             // |S_k f(x)| <= ||K_k(x,.)||_2 ||f||_2
};

struct UntemperedProbeReport {
    double epsilon;
    int violations = 0;
    double max_sup_over_l2 = 0.0;
    std::vector<UntemperedProbeRow> rows;
};

// Random nonnegative combinations of untempered eigenfunctions, checked
// against the Cauchy-Schwarz chain for even k up to the admissible N.
UntemperedProbeReport untempered_decay_probe(const RegularGraph& g, const SpectralData& spec,
                                             const std::vector<Matrix>& sphere, double epsilon,
                                             int trials, std::uint64_t seed);

struct DelocalizationReport {
    std::string graph_label;
    int q = 0;
    int girth = 0;
    int inj_rad = 0;
    double delta = 0.0;
    int admissible_n = 0;
    struct SnRow {
        int n;
        double norm_1_inf;
        double implied_delta;  // 1/2 + log_q ||S_n|| / n
    };
    std::vector<SnRow> sn_table;
    struct EigRow {
        int index;
        double lambda;
        bool tempered;
        std::vector<double> p_norms;   // ||psi||_p per requested p
        std::vector<double> ratios;    // ||psi||_p sqrt(N) / ||psi||_2
    };
    std::vector<double> p_list;
    std::vector<EigRow> eig_table;
    std::vector<double> max_tempered_ratio;   // per p
    std::vector<double> max_untempered_ratio; // per p
    // interpolated p'->p bound coefficients (Riesz-Thorin of 1->inf and 2->2)
    double epsilon_schedule = 0.0;
};

DelocalizationReport verify_graph_theorem(const RegularGraph& g, const SpectralData& spec,
                                          const std::vector<double>& p_list, double delta,
                                          int n_max = -1);

}  // namespace specnorm

#endif

#ifndef SPECNORM_TREEOPS_HPP
#define SPECNORM_TREEOPS_HPP

#include "specnorm/graphs.hpp"
#include "specnorm/matrix.hpp"

#include <cstdint>
#include <vector>

namespace specnorm {

struct OddIndex : std::runtime_error {
    explicit OddIndex(const std::string& what) : std::runtime_error(what) {}
};

// T_q f(x) = q^{-1/2} sum_{d(x,y)=1} f(y)
Matrix adjacency_op(const RegularGraph& g);

// Sphere averages S_0..S_n_max by the three-term recursion
//   S_1 = T_q,  T S_1 = S_2 + ((q+1)/q) S_0,  T S_n = S_{n+1} + S_{n-1}.
std::vector<Matrix> sphere_ops(const RegularGraph& g, int n_max);

// Same operators from the kernel definition: K_n(x,y) = q^{-n/2} x
// (number of non-backtracking walks of length n from x to y).
std::vector<Matrix> sphere_ops_walkcount(const RegularGraph& g, int n_max);

// Row of non-backtracking walk counts from a single source vertex,
// without forming dense operators.  counts[n][y], n = 0..n_max.
std::vector<std::vector<double>> nbw_counts_from(const RegularGraph& g, int source, int n_max);

// Chebyshev propagators P_0..P_n_max of T_q/2:
//   P_0 = I, P_1 = T_q/2, P_{n+1} = T_q P_n - P_{n-1}.
std::vector<Matrix> chebyshev_props(const RegularGraph& g, int n_max);
std::vector<Matrix> chebyshev_props(const Matrix& tq, int n_max);

// Entrywise deviation of P_n(T_q/2) from its sphere-operator expansion
//   sum_{k<n/2} (1-q)/(2 q^{n/2}) S_{2k} + (1/(2 q^{n/2})) S_n,  n even.
double chebyshev_sphere_decomposition_check(const RegularGraph& g, int n);

// Finite ball of the q+1-regular tree, vertices in BFS order from the root.
struct TreeBall {
    int q = 0;
    int radius = 0;
    std::vector<std::int64_t> sphere_start;  // index of first vertex at each distance; size radius+2
    std::vector<std::int32_t> parent;        // parent[0] = -1

    std::int64_t size() const { return (std::int64_t)parent.size(); }
    int distance(std::int64_t v) const;

    static TreeBall build(int q, int radius);

    // y = T_q x restricted to the ball (outside vertices count as zero).
    std::vector<double> apply_tq(const std::vector<double>& x) const;
};

// Max deviation of the recursion-computed P_n(T_q/2) delta_o on a tree ball
// of radius n+2 from the closed form
//   0 at odd |x| or |x|>n,  (1-q)/(2q^{n/2}) at even |x|<n,  1/(2q^{n/2}) at |x|=n.
double tree_kernel_check(int q, int n);

}  // namespace specnorm

#endif

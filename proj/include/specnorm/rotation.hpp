#ifndef SPECNORM_ROTATION_HPP
#define SPECNORM_ROTATION_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace specnorm {

using Rational = boost::multiprecision::cpp_rational;

// Exact rational 3x3 matrix, row-major.
struct Rot3 {
    std::array<Rational, 9> m;

    static Rot3 identity();
    Rot3 operator*(const Rot3& o) const;
    Rot3 transposed() const;  // = inverse for orthogonal matrices
    bool operator==(const Rot3& o) const { return m == o.m; }
    bool operator<(const Rot3& o) const;

    bool is_special_orthogonal() const;  // exact check
    Rational trace() const { return m[0] + m[4] + m[8]; }
    double rotation_angle() const;  // acos((trace-1)/2)
    std::array<double, 9> to_double() const;
    std::string key() const;  // canonical text form, for hashing/dedup
};

// M rotations with exact rational entries; the walk operator T_q uses the
// symmetric set {g_j, g_j^{-1}} of size 2M, q = 2M-1.
struct RotationSet {
    int M = 0;
    std::vector<Rot3> rotations;

    int q() const { return 2 * M - 1; }
    void validate() const;  // orthogonality, det 1, 2M distinct elements

    // generator with index in 0..2M-1; j < M is g_j, j >= M is g_{j-M}^{-1}
    Rot3 generator(int idx) const;
    static int inverse_index(int idx, int M) { return (idx < M) ? idx + M : idx - M; }
};

// Rotations by angle arccos(3/5) about the z- and x-axes; M = 2, q = 3.
RotationSet default_rotation_set();

// Config format: one rotation per 3 lines, each line 3 "num/den" tokens;
// '#' comments and blank lines between rotations allowed.
RotationSet load_rotation_set(const std::string& path);

struct Word {
    Rot3 matrix;
    std::string label;        // e.g. "aB" for g_1 g_2^{-1}
    int last_generator = -1;  // index into the symmetric set
};

// All reduced words of length exactly n; count = 2M (2M-1)^(n-1).
std::vector<Word> enumerate_words(const RotationSet& rot, int n);

// true iff all reduced words of length <= n are pairwise distinct matrices
// (exact arithmetic), the identity included.
bool words_distinct(const RotationSet& rot, int n);

struct SeparationPointStats {
    std::array<double, 3> point;
    std::vector<int> close_words_per_length;  // words with d(x,gx) <= threshold, per n
    double min_displacement = 0.0;
};

struct SeparationReport {
    int n_max;
    double threshold;
    std::vector<SeparationPointStats> points;
    std::vector<double> min_angle_per_length;  // min rotation angle over words of length n
    double fitted_c = 0.0;                     // angle >= C^-n fit
    int max_close_words = 0;                   // over generic sample points
};

// Sorted displacement statistics d(x, g.x) over words of each length
// <= n_max, at `generic_points` random points plus the generator poles.
SeparationReport separation_stats(const RotationSet& rot, int n_max, int generic_points,
                                  double threshold, std::uint64_t seed);

}  // namespace specnorm

#endif

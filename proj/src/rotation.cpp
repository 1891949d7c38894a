#include "specnorm/rotation.hpp"
#include "specnorm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace specnorm {

Rot3 Rot3::identity() {
    Rot3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = (i % 4 == 0) ? 1 : 0;
    return r;
}

Rot3 Rot3::operator*(const Rot3& o) const {
    Rot3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rational s = 0;
            for (int k = 0; k < 3; ++k) s += m[i * 3 + k] * o.m[k * 3 + j];
            r.m[i * 3 + j] = s;
        }
    return r;
}

Rot3 Rot3::transposed() const {
    Rot3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i * 3 + j] = m[j * 3 + i];
    return r;
}

bool Rot3::operator<(const Rot3& o) const {
    for (int i = 0; i < 9; ++i) {
        if (m[i] < o.m[i]) return true;
        if (o.m[i] < m[i]) return false;
    }
    return false;
}

bool Rot3::is_special_orthogonal() const {
    Rot3 prod = *this * transposed();
    if (!(prod == identity())) return false;
    // det = 1
    Rational det = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
                   m[2] * (m[3] * m[7] - m[4] * m[6]);
    return det == 1;
}

double Rot3::rotation_angle() const {
    double c = ((double)trace() - 1.0) / 2.0;
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

std::array<double, 9> Rot3::to_double() const {
    std::array<double, 9> d;
    for (int i = 0; i < 9; ++i) d[i] = (double)m[i];
    return d;
}

std::string Rot3::key() const {
    std::ostringstream out;
    for (const auto& x : m) out << x << ';';
    return out.str();
}

void RotationSet::validate() const {
    if (M < 2) throw std::invalid_argument("RotationSet: need M >= 2");
    if ((int)rotations.size() != M) throw std::invalid_argument("RotationSet: M rotations required");
    std::set<std::string> keys;
    for (const auto& g : rotations) {
        if (!g.is_special_orthogonal())
            throw std::invalid_argument("RotationSet: matrix is not an exact rotation");
        keys.insert(g.key());
        keys.insert(g.transposed().key());
    }
    if ((int)keys.size() != 2 * M)
        throw std::invalid_argument("RotationSet: symmetric generating set must have 2M distinct elements");
}

Rot3 RotationSet::generator(int idx) const {
    if (idx < M) return rotations[idx];
    return rotations[idx - M].transposed();
}

RotationSet default_rotation_set() {
    Rational c(3, 5), s(4, 5);
    Rot3 rz, rx;
    rz.m = {c, -s, 0, s, c, 0, 0, 0, 1};
    rx.m = {1, 0, 0, 0, c, -s, 0, s, c};
    RotationSet rot;
    rot.M = 2;
    rot.rotations = {rz, rx};
    rot.validate();
    return rot;
}

RotationSet load_rotation_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open rotation set: " + path);
    std::vector<Rational> entries;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            auto slash = tok.find('/');
            if (slash == std::string::npos)
                entries.emplace_back(boost::multiprecision::cpp_int(tok));
            else
                entries.emplace_back(boost::multiprecision::cpp_int(tok.substr(0, slash)),
                                     boost::multiprecision::cpp_int(tok.substr(slash + 1)));
        }
    }
    if (entries.empty() || entries.size() % 9 != 0)
        throw std::runtime_error("rotation set: entry count must be a multiple of 9");
    RotationSet rot;
    rot.M = (int)(entries.size() / 9);
    for (int g = 0; g < rot.M; ++g) {
        Rot3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = entries[g * 9 + i];
        rot.rotations.push_back(r);
    }
    rot.validate();
    return rot;
}

namespace {

char label_char(int idx, int M) {
    return (idx < M) ? (char)('a' + idx) : (char)('A' + idx - M);
}

}  // namespace

std::vector<Word> enumerate_words(const RotationSet& rot, int n) {
    if (n < 1) throw std::invalid_argument("enumerate_words: n >= 1 required");
    const int k = 2 * rot.M;
    std::vector<Word> cur;
    for (int j = 0; j < k; ++j)
        cur.push_back({rot.generator(j), std::string(1, label_char(j, rot.M)), j});
    for (int len = 2; len <= n; ++len) {
        std::vector<Word> next;
        next.reserve(cur.size() * (k - 1));
        for (const auto& w : cur) {
            int banned = RotationSet::inverse_index(w.last_generator, rot.M);
            for (int j = 0; j < k; ++j) {
                if (j == banned) continue;
                next.push_back({w.matrix * rot.generator(j), w.label + label_char(j, rot.M), j});
            }
        }
        cur = std::move(next);
    }
    return cur;
}

bool words_distinct(const RotationSet& rot, int n) {
    std::set<std::string> keys;
    keys.insert(Rot3::identity().key());
    std::size_t expected = 1;
    for (int len = 1; len <= n; ++len) {
        auto words = enumerate_words(rot, len);
        expected += words.size();
        for (const auto& w : words) keys.insert(w.matrix.key());
    }
    return keys.size() == expected;
}

SeparationReport separation_stats(const RotationSet& rot, int n_max, int generic_points,
                                  double threshold, std::uint64_t seed) {
    SeparationReport rep;
    rep.n_max = n_max;
    rep.threshold = threshold;
    rep.min_angle_per_length.assign(n_max + 1, M_PI);

    std::vector<std::vector<std::array<double, 9>>> words_by_len(n_max + 1);
    for (int len = 1; len <= n_max; ++len) {
        auto words = enumerate_words(rot, len);
        for (const auto& w : words) {
            words_by_len[len].push_back(w.matrix.to_double());
            rep.min_angle_per_length[len] =
                std::min(rep.min_angle_per_length[len], w.matrix.rotation_angle());
        }
    }

    // fit angle >= C^-n, i.e. C = max_n exp(-log(min angle)/n)
    rep.fitted_c = 1.0;
    for (int len = 1; len <= n_max; ++len)
        if (rep.min_angle_per_length[len] > 0.0)
            rep.fitted_c = std::max(rep.fitted_c, std::exp(-std::log(rep.min_angle_per_length[len]) / len));

    auto run_point = [&](const std::array<double, 3>& x, bool generic) {
        SeparationPointStats st;
        st.point = x;
        st.min_displacement = M_PI;
        for (int len = 1; len <= n_max; ++len) {
            int close = 0;
            for (const auto& g : words_by_len[len]) {
                std::array<double, 3> gx = {g[0] * x[0] + g[1] * x[1] + g[2] * x[2],
                                            g[3] * x[0] + g[4] * x[1] + g[5] * x[2],
                                            g[6] * x[0] + g[7] * x[1] + g[8] * x[2]};
                double c = std::clamp(gx[0] * x[0] + gx[1] * x[1] + gx[2] * x[2], -1.0, 1.0);
                double d = std::acos(c);
                st.min_displacement = std::min(st.min_displacement, d);
                if (d <= threshold) ++close;
            }
            st.close_words_per_length.push_back(close);
            if (generic) rep.max_close_words = std::max(rep.max_close_words, close);
        }
        rep.points.push_back(std::move(st));
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < generic_points; ++i) {
        std::array<double, 3> x;
        double n2 = 0.0;
        do {
            for (double& c : x) c = gauss(rng);
            n2 = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        } while (n2 < 1e-6);
        for (double& c : x) c /= n2;
        run_point(x, true);
    }
    // generator fixed points (poles): rotation axes of the generators
    for (const auto& g : rot.rotations) {
        auto d = g.to_double();
        std::array<double, 3> axis = {d[7] - d[5], d[2] - d[6], d[3] - d[1]};
        double n2 = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
        if (n2 < 1e-12) continue;  // angle-pi rotation, axis from antisymmetric part degenerates
        for (double& c : axis) c /= n2;
        run_point(axis, false);
    }
    return rep;
}

}  // namespace specnorm

#ifndef ARRHOM_TESTS_SUPPORT_HPP
#define ARRHOM_TESTS_SUPPORT_HPP

// Fixtures and brute-force oracles shared by the test binaries. Nothing here
// calls into the routines it is used to check.

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "arrhom/exact_field.hpp"
#include "arrhom/geometry.hpp"

namespace support {

using namespace arrhom;

// Complete quadrilateral labelled as in the reference picture: l1..l6 are ids 0..5.
inline std::vector<Line> a3_lines() {
    return {make_line(0, 3, 1, 3), make_line(1, 1, 2, 6),  make_line(2, 0, 1, 3),
            make_line(3, 1, -1, 0), make_line(4, 3, -2, 3), make_line(5, 2, -1, 2)};
}

// Angle (from, to) with 1-based labels, coefficient omega^power.
struct PaperEntry {
    int from, to, power;
};

// Columns of the printed 14 x 12 matrix.
inline std::vector<std::pair<int, int>> paper_a3_columns() {
    return {{1, 5}, {5, 6}, {6, 1}, {3, 4}, {4, 5}, {5, 3}, {1, 2}, {2, 3}, {3, 1}, {2, 4}, {4, 6}, {6, 2}};
}

// Rows of the printed matrix as (column index, power of omega).
inline std::vector<std::vector<std::pair<int, int>>> paper_a3_row_entries() {
    return {
        {{0, 0}, {1, 0}, {2, 0}},   {{0, 1}, {1, 2}, {2, 0}},
        {{3, 0}, {4, 0}, {5, 0}},   {{3, 1}, {4, 2}, {5, 0}},
        {{6, 0}, {7, 0}, {8, 0}},   {{6, 1}, {7, 2}, {8, 0}},
        {{9, 0}, {10, 0}, {11, 0}}, {{9, 1}, {10, 2}, {11, 0}},
        {{1, 2}, {11, 0}},          {{2, 0}, {10, 0}},
        {{6, 1}, {9, 0}},           {{7, 2}, {11, 0}},
        {{3, 0}, {10, 2}},          {{4, 0}, {9, 1}},
    };
}

inline std::vector<std::vector<PaperEntry>> paper_a3_rows() {
    const auto cols = paper_a3_columns();
    std::vector<std::vector<PaperEntry>> out;
    for (const auto& r : paper_a3_row_entries()) {
        std::vector<PaperEntry> row;
        for (auto [c, p] : r) row.push_back({cols[static_cast<std::size_t>(c)].first, cols[static_cast<std::size_t>(c)].second, p});
        std::sort(row.begin(), row.end(), [](auto a, auto b) { return std::pair(a.from, a.to) < std::pair(b.from, b.to); });
        out.push_back(row);
    }
    return out;
}

inline Matrix paper_a3_matrix() {
    const FieldScalar zero(CycloNumber::zero(3));
    Matrix m(0, 12, zero);
    for (const auto& r : paper_a3_row_entries()) {
        std::vector<FieldScalar> row(12, zero);
        for (auto [c, p] : r) row[static_cast<std::size_t>(c)] = FieldScalar(CycloNumber::zeta_power(3, p));
        m.append_row(row);
    }
    return m;
}

// Affine intersection of two non-parallel lines by Cramer's rule.
inline std::pair<Rational, Rational> meet_affine(const Line& l, const Line& m) {
    const Rational det = l.a * m.b - l.b * m.a;
    return {(l.b * m.c - l.c * m.b) / det, (l.c * m.a - l.a * m.c) / det};
}

// Point -> sorted set of incident line ids, from all pairwise meets (projective).
inline std::vector<std::vector<int>> brute_incidences(const std::vector<Line>& lines) {
    std::map<std::array<Rational, 3>, std::set<int>> pts;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const Line &l = lines[i], &m = lines[j];
            // Cross product, then scale so the last nonzero coordinate is 1.
            std::array<Rational, 3> p{l.b * m.c - l.c * m.b, l.c * m.a - l.a * m.c, l.a * m.b - l.b * m.a};
            for (int k = 2; k >= 0; --k)
                if (sgn(p[static_cast<std::size_t>(k)]) != 0) {
                    const Rational s = p[static_cast<std::size_t>(k)];
                    for (auto& x : p) x /= s;
                    break;
                }
            pts[p].insert(l.id);
            pts[p].insert(m.id);
        }
    std::vector<std::vector<int>> out;
    for (const auto& [p, s] : pts) out.emplace_back(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
}

// Bounded and total chamber counts of an affine arrangement with no
// parallel lines, from the incidence census.
inline std::pair<long, long> chamber_counts(const std::vector<std::vector<int>>& inc, long n) {
    long s = 0;
    for (const auto& p : inc) s += static_cast<long>(p.size()) - 1;
    return {1 - n + s, 1 + n + s};
}

// chi(P^2) - chi(union of lines): 3 - (2n - sum over points of (mult - 1)).
inline long brute_euler(const std::vector<std::vector<int>>& inc, long n) {
    long s = 0;
    for (const auto& p : inc) s += static_cast<long>(p.size()) - 1;
    return 3 - 2 * n + s;
}

// Sharp test by walking: two points off l u l' lie in the same component of
// RP^2 minus the two lines iff the affine segment between them crosses the
// two lines an even number of times. Needs all points affine.
inline bool brute_sharp(const std::vector<Line>& lines, int a, int b) {
    const auto inc = brute_incidences(lines);
    std::vector<std::pair<Rational, Rational>> off;
    for (const auto& p : inc) {
        if (std::find(p.begin(), p.end(), a) != p.end() || std::find(p.begin(), p.end(), b) != p.end()) continue;
        off.push_back(meet_affine(lines[static_cast<std::size_t>(p[0])], lines[static_cast<std::size_t>(p[1])]));
    }
    auto side = [&](const Line& l, const std::pair<Rational, Rational>& q) { return sgn(l.a * q.first + l.b * q.second + l.c); };
    const Line &la = lines[static_cast<std::size_t>(a)], &lb = lines[static_cast<std::size_t>(b)];
    for (std::size_t i = 1; i < off.size(); ++i) {
        int crossings = 0;
        crossings += side(la, off[0]) != side(la, off[i]);
        crossings += side(lb, off[0]) != side(lb, off[i]);
        if (crossings % 2 == 1) return false;
    }
    return true;
}

}  // namespace support

#endif

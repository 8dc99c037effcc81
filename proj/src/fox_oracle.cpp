#include "arrhom/fox_oracle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace arrhom {

namespace {

constexpr int kDeconeAttempts = 64;

struct AffineMeet {
    Rational x, y;
    std::set<int> lines;
};

// Affine intersection points of non-vertical lines; parallel pairs skipped.
std::vector<AffineMeet> affine_meets(const std::vector<Line>& lines) {
    std::map<std::pair<Rational, Rational>, std::set<int>> pts;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const Line& p = lines[i];
            const Line& q = lines[j];
            Rational z = p.a * q.b - p.b * q.a;
            if (sgn(z) == 0) continue;
            Rational x = (p.b * q.c - p.c * q.b) / z;
            Rational y = (p.c * q.a - p.a * q.c) / z;
            auto& s = pts[{x, y}];
            s.insert(static_cast<int>(i));
            s.insert(static_cast<int>(j));
        }
    std::vector<AffineMeet> out;
    for (auto& [xy, s] : pts) out.push_back({xy.first, xy.second, s});
    return out;
}

}  // namespace

DeconedArrangement decone(const Arrangement& arr, const LocalSystem& ls, int line,
                          std::uint64_t seed) {
    if (line < 0 || static_cast<std::size_t>(line) >= arr.size())
        throw Error(ErrorCode::InvalidArgument, "no line " + std::to_string(line));
    const Line& removed = arr.line(line);
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < kDeconeAttempts; ++attempt) {
        std::uniform_int_distribution<int> dist(-3 - attempt / 8, 3 + attempt / 8);
        Mat3 t;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 3; ++c) t[r][c] = dist(rng);
        t[2] = {removed.a, removed.b, removed.c};
        if (sgn(det3(t)) == 0) continue;
        const Mat3 inv = inverse3(t);

        DeconedArrangement dec;
        dec.removed = line;
        dec.transform = t;
        bool ok = true;
        for (const auto& l : arr.lines()) {
            if (l.id == line) continue;
            Line img = transform_line(l, inv);
            if (!img.non_vertical()) {
                ok = false;
                break;
            }
            img.id = static_cast<int>(dec.lines.size());
            dec.lines.push_back(img);
            dec.original_ids.push_back(l.id);
        }
        if (!ok) continue;
        std::set<Rational> xs;
        const auto meets = affine_meets(dec.lines);
        for (const auto& m : meets) xs.insert(m.x);
        if (xs.size() != meets.size()) continue;
        dec.local_system = ls.without(line);
        return dec;
    }
    throw Error(ErrorCode::NormalizationFailed,
                "no deconing frame for line " + std::to_string(line) + " (seed " + std::to_string(seed) + ")");
}

std::vector<std::vector<int>> affine_incidences(const DeconedArrangement& dec) {
    std::vector<std::vector<int>> out;
    for (const auto& m : affine_meets(dec.lines)) {
        std::vector<int> ids;
        for (int i : m.lines) ids.push_back(dec.original_ids[static_cast<std::size_t>(i)]);
        std::sort(ids.begin(), ids.end());
        out.push_back(std::move(ids));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Word free_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (int x : w) {
        if (!out.empty() && out.back() == -x) out.pop_back();
        else out.push_back(x);
    }
    return out;
}

Word inverse(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (int& x : out) x = -x;
    return out;
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return free_reduce(out);
}

WiringDiagram wiring_diagram(const DeconedArrangement& dec) {
    WiringDiagram wd;
    const auto& lines = dec.lines;
    std::vector<int> order(lines.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Rational sa = lines[a].slope(), sb = lines[b].slope();
        if (sa != sb) return sa > sb;
        return lines[a].intercept() < lines[b].intercept();
    });
    wd.initial_order = order;

    auto meets = affine_meets(lines);
    std::sort(meets.begin(), meets.end(), [](const AffineMeet& a, const AffineMeet& b) { return a.x < b.x; });
    std::vector<int> pos(lines.size());
    for (const auto& m : meets) {
        for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
        int lo = static_cast<int>(order.size()), hi = -1;
        for (int l : m.lines) {
            lo = std::min(lo, pos[static_cast<std::size_t>(l)]);
            hi = std::max(hi, pos[static_cast<std::size_t>(l)]);
        }
        if (hi - lo + 1 != static_cast<int>(m.lines.size()))
            throw Error(ErrorCode::ConsistencyFailure, "wires through a crossing are not adjacent");
        Crossing c;
        c.x = m.x;
        c.first = lo;
        c.last = hi;
        c.wires.assign(order.begin() + lo, order.begin() + hi + 1);
        std::reverse(order.begin() + lo, order.begin() + hi + 1);
        wd.crossings.push_back(std::move(c));
    }
    return wd;
}

GroupPresentation randell_presentation(const WiringDiagram& wd, int wires) {
    GroupPresentation gp;
    gp.generators = wires;
    std::vector<Word> w(static_cast<std::size_t>(wires));
    for (int i = 0; i < wires; ++i) w[static_cast<std::size_t>(i)] = {wd.initial_order[static_cast<std::size_t>(i)] + 1};

    for (const auto& c : wd.crossings) {
        Word p;
        for (int i = c.last; i >= c.first; --i) p = concat(p, w[static_cast<std::size_t>(i)]);
        const Word p_inv = inverse(p);
        for (int j = c.first; j < c.last; ++j) {
            const Word& wj = w[static_cast<std::size_t>(j)];
            Word r = concat(concat(concat(wj, p), inverse(wj)), p_inv);
            gp.max_word_length = std::max(gp.max_word_length, r.size());
            gp.relators.push_back(std::move(r));
        }
        const int k = c.last - c.first + 1;
        for (int t = 0; t < k - 1; ++t)
            for (int i = c.first; i < c.last - t; ++i) {
                Word u = w[static_cast<std::size_t>(i)];
                Word v = w[static_cast<std::size_t>(i + 1)];
                w[static_cast<std::size_t>(i)] = v;
                w[static_cast<std::size_t>(i + 1)] = concat(concat(v, u), inverse(v));
            }
        for (const auto& x : w) gp.max_word_length = std::max(gp.max_word_length, x.size());
    }
    return gp;
}

TwistedComplex twisted_complex(const GroupPresentation& gp, const LocalSystem& ls) {
    const std::size_t g = static_cast<std::size_t>(gp.generators);
    const FieldScalar one = ls.one();
    const FieldScalar zero = FieldScalar::zero_like(one);
    TwistedComplex tc;
    tc.d2 = Matrix(0, g, zero);
    tc.d1 = Matrix(g, 1, zero);
    for (std::size_t j = 0; j < g; ++j) tc.d1.at(j, 0) = ls.monodromy(static_cast<int>(j)) - one;

    for (const auto& r : gp.relators) {
        std::vector<FieldScalar> row(g, zero);
        if (ls.is_exact()) {
            // Prefix images are powers of zeta: collect integer counts per power.
            const long d = ls.order();
            std::vector<std::vector<long>> counts(g, std::vector<long>(static_cast<std::size_t>(d), 0));
            long s = 0;
            for (int letter : r) {
                const std::size_t j = static_cast<std::size_t>(std::abs(letter) - 1);
                const long k = ls.exponents()[j];
                if (letter > 0) {
                    ++counts[j][static_cast<std::size_t>(s)];
                    s = (s + k) % d;
                } else {
                    s = ((s - k) % d + d) % d;
                    --counts[j][static_cast<std::size_t>(s)];
                }
            }
            for (std::size_t j = 0; j < g; ++j) {
                CycloNumber acc = CycloNumber::zero(static_cast<int>(d));
                for (long e = 0; e < d; ++e)
                    if (counts[j][static_cast<std::size_t>(e)] != 0)
                        acc += CycloNumber::zeta_power(static_cast<int>(d), e)
                                   .scaled(Rational(counts[j][static_cast<std::size_t>(e)]));
                row[j] = acc;
            }
        } else {
            std::vector<std::complex<double>> acc(g, 0.0);
            std::complex<double> prefix = 1.0;
            for (int letter : r) {
                const std::size_t j = static_cast<std::size_t>(std::abs(letter) - 1);
                const std::complex<double> m = ls.monodromy(static_cast<int>(j)).as_complex();
                if (letter > 0) {
                    acc[j] += prefix;
                    prefix *= m;
                } else {
                    prefix /= m;
                    acc[j] -= prefix;
                }
            }
            for (std::size_t j = 0; j < g; ++j) row[j] = FieldScalar(acc[j]);
        }
        tc.d2.append_row(row);
    }

    tc.boundary_squared_zero = true;
    for (std::size_t r = 0; r < tc.d2.rows(); ++r) {
        FieldScalar s = zero;
        for (std::size_t j = 0; j < g; ++j) s = s + tc.d2.at(r, j) * tc.d1.at(j, 0);
        const bool zero_entry = s.is_exact() ? s.is_zero() : std::abs(s.as_complex()) < 1e-9;
        if (!zero_entry) tc.boundary_squared_zero = false;
    }
    return tc;
}

std::size_t oracle_h1(const Arrangement& arr, const LocalSystem& ls, int line, std::uint64_t seed) {
    validate(ls, arr);
    const auto dec = decone(arr, ls, line, seed);
    const int g = static_cast<int>(dec.lines.size());
    if (g == 0) return 0;
    const auto wd = wiring_diagram(dec);
    const auto gp = randell_presentation(wd, g);
    const auto tc = twisted_complex(gp, dec.local_system);
    if (!tc.boundary_squared_zero)
        throw Error(ErrorCode::ConsistencyFailure, "Fox boundary maps do not compose to zero");
    return static_cast<std::size_t>(g - 1) - rank(tc.d2);
}

}  // namespace arrhom

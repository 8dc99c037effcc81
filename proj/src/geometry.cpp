#include "arrhom/geometry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace arrhom {

// ---------------------------------------------------------------------------
// 3x3 rational matrices

Mat3 identity3() {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = (i == j) ? 1 : 0;
    return m;
}

Mat3 mul3(const Mat3& a, const Mat3& b) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rational s = 0;
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            m[i][j] = s;
        }
    return m;
}

Rational det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 inverse3(const Mat3& m) {
    Rational d = det3(m);
    if (sgn(d) == 0) throw Error(ErrorCode::InvalidArgument, "singular 3x3 matrix");
    Mat3 inv;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            inv[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / d;
        }
    return inv;
}

// ---------------------------------------------------------------------------
// Points and lines

ProjPoint canonical_point(Rational x, Rational y, Rational z) {
    if (sgn(z) != 0) return {x / z, y / z, Rational(1)};
    if (sgn(y) != 0) return {x / y, Rational(1), Rational(0)};
    if (sgn(x) != 0) return {Rational(1), Rational(0), Rational(0)};
    throw Error(ErrorCode::InvalidArgument, "zero homogeneous vector");
}

ProjPoint apply(const Mat3& t, const ProjPoint& p) {
    return canonical_point(t[0][0] * p.x + t[0][1] * p.y + t[0][2] * p.z,
                           t[1][0] * p.x + t[1][1] * p.y + t[1][2] * p.z,
                           t[2][0] * p.x + t[2][1] * p.y + t[2][2] * p.z);
}

Rational Line::slope() const { return -a / b; }
Rational Line::intercept() const { return -c / b; }
Rational Line::q_value(const Rational& x, const Rational& y) const {
    return (a * x + b * y + c) / b;
}

std::array<Rational, 3> canonical_coefficients(const Line& l) {
    Rational pivot = sgn(l.c) != 0 ? l.c : (sgn(l.b) != 0 ? l.b : l.a);
    return {l.a / pivot, l.b / pivot, l.c / pivot};
}

Line transform_line(const Line& l, const Mat3& t_inverse) {
    const std::array<Rational, 3> row{l.a, l.b, l.c};
    std::array<Rational, 3> out;
    for (int j = 0; j < 3; ++j) out[j] = row[0] * t_inverse[0][j] + row[1] * t_inverse[1][j] + row[2] * t_inverse[2][j];
    // Rescale to primitive integer coefficients so repeated transforms stay small.
    Integer den = 1, num = 0;
    for (const auto& q : out) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), q.get_num_mpz_t());
    }
    if (num == 0) return Line{l.id, out[0], out[1], out[2]};
    Rational scale = Rational(den) / Rational(num);
    return Line{l.id, out[0] * scale, out[1] * scale, out[2] * scale};
}

Line make_line(int id, long a, long b, long c) {
    return Line{id, Rational(a), Rational(b), Rational(c)};
}

Line make_affine_line(int id, const Rational& slope, const Rational& intercept) {
    // y = s x + b0  <=>  s x - y + b0 = 0
    return Line{id, slope, Rational(-1), intercept};
}

bool IntersectionPoint::on_line(int line) const {
    return std::find(lines.begin(), lines.end(), line) != lines.end();
}

namespace {

ProjPoint meet_lines(const Line& p, const Line& q) {
    return canonical_point(p.b * q.c - p.c * q.b, p.c * q.a - p.a * q.c, p.a * q.b - p.b * q.a);
}

bool slopes_sortable(const std::vector<Line>& lines, const std::vector<int>& ids) {
    return std::all_of(ids.begin(), ids.end(), [&](int i) { return lines[i].non_vertical(); });
}

}  // namespace

std::vector<IntersectionPoint> intersections(const std::vector<Line>& lines) {
    std::map<ProjPoint, std::set<int>> merged;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            if (canonical_coefficients(lines[i]) == canonical_coefficients(lines[j]))
                throw Error(ErrorCode::DuplicateLine, "lines " + std::to_string(i) + " and " +
                                                          std::to_string(j) + " coincide");
            auto& s = merged[meet_lines(lines[i], lines[j])];
            s.insert(static_cast<int>(i));
            s.insert(static_cast<int>(j));
        }
    }
    std::vector<IntersectionPoint> pts;
    pts.reserve(merged.size());
    for (auto& [coords, ids] : merged) {
        IntersectionPoint p;
        p.coords = coords;
        p.lines.assign(ids.begin(), ids.end());
        pts.push_back(std::move(p));
    }
    // Ids ordered by incident-line sets, so they are stable under change of frame.
    std::sort(pts.begin(), pts.end(),
              [](const IntersectionPoint& a, const IntersectionPoint& b) { return a.lines < b.lines; });
    for (std::size_t k = 0; k < pts.size(); ++k) {
        pts[k].id = static_cast<int>(k);
        if (slopes_sortable(lines, pts[k].lines)) {
            std::stable_sort(pts[k].lines.begin(), pts[k].lines.end(), [&](int a, int b) {
                return lines[a].slope() < lines[b].slope();
            });
        }
    }
    return pts;
}

Arrangement::Arrangement(std::vector<Line> lines) : lines_(std::move(lines)) {
    for (std::size_t i = 0; i < lines_.size(); ++i) {
        lines_[i].id = static_cast<int>(i);
        if (sgn(lines_[i].a) == 0 && sgn(lines_[i].b) == 0 && sgn(lines_[i].c) == 0)
            throw Error(ErrorCode::DegenerateLine, "line " + std::to_string(i) + " is (0,0,0)");
    }
    points_ = intersections(lines_);

    const std::size_t n = lines_.size();
    meet_.assign(n * n, -1);
    points_on_line_.assign(n, {});
    for (const auto& p : points_) {
        for (int a : p.lines) {
            points_on_line_[a].push_back(p.id);
            for (int b : p.lines)
                if (a != b) meet_[a * n + b] = p.id;
        }
    }
    for (std::size_t l = 0; l < n; ++l) {
        auto& on = points_on_line_[l];
        if (!lines_[l].non_vertical()) continue;
        std::sort(on.begin(), on.end(), [&](int p, int q) {
            const auto& a = points_[p].coords;
            const auto& b = points_[q].coords;
            if (a.affine() != b.affine()) return a.affine();
            return a.x < b.x;
        });
    }

    normalized_ = std::all_of(lines_.begin(), lines_.end(), [](const Line& l) { return l.non_vertical(); });
    if (normalized_) {
        std::set<Rational> slopes;
        for (const auto& l : lines_) slopes.insert(l.slope());
        normalized_ = slopes.size() == lines_.size();
    }
}

int Arrangement::meet(int l1, int l2) const {
    if (l1 == l2) throw Error(ErrorCode::InvalidArgument, "meet of a line with itself");
    return meet_.at(static_cast<std::size_t>(l1) * lines_.size() + static_cast<std::size_t>(l2));
}

Arrangement Arrangement::transformed(const Mat3& t) const {
    Mat3 inv = inverse3(t);
    std::vector<Line> out;
    out.reserve(lines_.size());
    for (const auto& l : lines_) out.push_back(transform_line(l, inv));
    return Arrangement(std::move(out));
}

std::vector<std::vector<int>> incidence_poset(const Arrangement& arr) {
    std::vector<std::vector<int>> out;
    for (const auto& p : arr.points()) {
        auto ids = p.lines;
        std::sort(ids.begin(), ids.end());
        out.push_back(std::move(ids));
    }
    std::sort(out.begin(), out.end());
    return out;
}

int euler_characteristic(const Arrangement& arr) {
    int e = 3 - 2 * static_cast<int>(arr.size());
    for (const auto& p : arr.points()) e += p.multiplicity() - 1;
    return e;
}

// ---------------------------------------------------------------------------
// Normalization

std::string NormalizationProfile::name() const {
    switch (kind) {
        case Kind::Basic: return "basic";
        case Kind::LineAdapted: return "line-adapted";
        case Kind::SharpPairAdapted: return "sharp-pair-adapted";
    }
    return "unknown";
}

Mat3 random_projective_transform(std::uint64_t seed, int magnitude) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-magnitude, magnitude);
    while (true) {
        Mat3 m;
        for (auto& row : m)
            for (auto& x : row) x = dist(rng);
        if (sgn(det3(m)) != 0) return m;
    }
}

namespace {

bool is_horizontal_axis(const Line& l) {  // y = 0
    return sgn(l.a) == 0 && sgn(l.c) == 0 && sgn(l.b) != 0;
}

bool is_diagonal(const Line& l) {  // y = x
    return sgn(l.c) == 0 && sgn(l.a) != 0 && l.a == -l.b;
}

Mat3 rows(Rational a, Rational b, Rational c, Rational d, Rational e, Rational f, Rational g,
          Rational h, Rational i) {
    return Mat3{{{a, b, c}, {d, e, f}, {g, h, i}}};
}

NormalizationRecord make_record(const Mat3& t, const NormalizationProfile& profile,
                                std::uint64_t seed, int attempts) {
    NormalizationRecord rec;
    rec.transform = t;
    rec.inverse = inverse3(t);
    rec.line_at_infinity = {t[2][0], t[2][1], t[2][2]};
    rec.profile = profile;
    rec.seed = seed;
    rec.attempts = attempts;
    return rec;
}

// Affine map sending l0 (non-vertical, in a normalized frame) to y = 0.
Mat3 flatten_line(const Line& l0) {
    return rows(1, 0, 0, -l0.slope(), 1, -l0.intercept(), 0, 0, 1);
}

// In a frame where l0 = {y = 0}, the projective map keeping x and y but
// sending the line y = eps*(x - u) to infinity, with eps small enough that
// every point off l0 keeps the sign of its y-coordinate.
Mat3 thin_wedge_map(const Arrangement& flat, const Rational& u) {
    Rational eps(1, 2);
    for (const auto& p : flat.points()) {
        if (sgn(p.coords.y) == 0) continue;
        Rational bound = abs(p.coords.y) / (2 * (abs(p.coords.x - u) + 1));
        if (bound < eps) eps = bound;
    }
    return rows(1, 0, 0, 0, 1, 0, -eps, 1, eps * u);
}

}  // namespace

bool satisfies_profile(const Arrangement& arr, const NormalizationProfile& profile) {
    if (!arr.normalized()) return false;
    for (const auto& p : arr.points())
        if (!p.coords.affine()) return false;
    switch (profile.kind) {
        case NormalizationProfile::Kind::Basic:
            return true;
        case NormalizationProfile::Kind::LineAdapted: {
            if (!is_horizontal_axis(arr.line(profile.l0))) return false;
            for (const auto& l : arr.lines())
                if (l.id != profile.l0 && sgn(l.slope()) <= 0) return false;
            for (const auto& p : arr.points())
                if (sgn(p.coords.y) < 0) return false;
            return true;
        }
        case NormalizationProfile::Kind::SharpPairAdapted: {
            if (!is_horizontal_axis(arr.line(profile.l0))) return false;
            if (!is_diagonal(arr.line(profile.l0_prime))) return false;
            for (const auto& l : arr.lines())
                if (sgn(l.slope()) < 0 || l.slope() > 1) return false;
            for (const auto& p : arr.points()) {
                const auto& c = p.coords;
                bool on_axis = sgn(c.y) == 0 && sgn(c.x) <= 0;
                bool in_wedge = c.x >= c.y && sgn(c.y) > 0;
                if (!on_axis && !in_wedge) return false;
            }
            return true;
        }
    }
    return false;
}

std::pair<Arrangement, NormalizationRecord> normalize(const Arrangement& arr,
                                                      const NormalizationProfile& profile,
                                                      std::uint64_t seed, int max_retries) {
    const auto basic = NormalizationProfile::basic();
    if (profile.kind != NormalizationProfile::Kind::Basic) {
        const int n = static_cast<int>(arr.size());
        auto valid = [n](int l) { return l >= 0 && l < n; };
        if (!valid(profile.l0) ||
            (profile.kind == NormalizationProfile::Kind::SharpPairAdapted &&
             (!valid(profile.l0_prime) || profile.l0_prime == profile.l0)))
            throw Error(ErrorCode::InvalidArgument, "normalization profile names unknown lines");
    }

    // Step 1: distinct finite slopes.
    Mat3 t = identity3();
    Arrangement cur = arr;
    int attempts = 0;
    if (!satisfies_profile(cur, basic)) {
        std::mt19937_64 rng(seed);
        bool found = false;
        for (attempts = 1; attempts <= max_retries; ++attempts) {
            int magnitude = 2 + attempts / 8;
            Mat3 cand = random_projective_transform(rng(), magnitude);
            Arrangement img = arr.transformed(cand);
            if (satisfies_profile(img, basic)) {
                t = cand;
                cur = std::move(img);
                found = true;
                break;
            }
        }
        if (!found)
            throw Error(ErrorCode::NormalizationFailed,
                        "no generic frame found after " + std::to_string(max_retries) +
                            " attempts (seed " + std::to_string(seed) + ")");
    }
    if (profile.kind == NormalizationProfile::Kind::Basic)
        return {cur, make_record(t, profile, seed, attempts)};

    auto fail = [&](const std::string& why) -> std::pair<Arrangement, NormalizationRecord> {
        throw Error(ErrorCode::NormalizationFailed,
                    profile.name() + ": " + why + " (seed " + std::to_string(seed) + ")");
    };
    auto step = [&](const Mat3& m) {
        t = mul3(m, t);
        cur = arr.transformed(t);
    };

    // Step 2: l0 -> {y = 0}.
    step(flatten_line(cur.line(profile.l0)));

    if (profile.kind == NormalizationProfile::Kind::LineAdapted) {
        // Push a line through a point of l0 right of every intersection point,
        // at a small enough angle to l0 that the wedge between them is empty.
        Rational u = 0;
        for (const auto& p : cur.points())
            if (p.coords.x > u) u = p.coords.x;
        u += 1;
        step(thin_wedge_map(cur, u));
        // Shear x -> x + k y until every line other than l0 has positive slope.
        Rational k = 0;
        for (const auto& l : cur.lines()) {
            if (sgn(l.a) == 0) continue;
            Rational r = l.b / l.a;
            if (r >= k) k = r;
        }
        Integer kk = k.get_num() / k.get_den() + 1;
        step(rows(1, Rational(kk), 0, 0, 1, 0, 0, 0, 1));
        if (!satisfies_profile(cur, profile)) return fail("constructed frame failed verification");
        return {cur, make_record(t, profile, seed, attempts)};
    }

    // SharpPairAdapted: p0 = l0 cap l0' to the origin, l0' to {y = x}.
    const ProjPoint p0 = cur.point(cur.meet(profile.l0, profile.l0_prime)).coords;
    step(rows(1, 0, -p0.x, 0, 1, 0, 0, 0, 1));
    Rational c = cur.line(profile.l0_prime).slope();
    if (sgn(c) < 0) {
        step(rows(-1, 0, 0, 0, 1, 0, 0, 0, 1));
        c = -c;
    }
    step(rows(1, 0, 0, 0, 1 / c, 0, 0, 0, 1));

    int sign = 0;
    for (const auto& p : cur.points()) {
        const auto& q = p.coords;
        if (sgn(q.y) == 0 || q.x == q.y) continue;
        int s = sgn(q.y * (q.y - q.x));
        if (sign == 0) sign = s;
        if (s != sign) return fail("lines do not form a sharp pair");
    }
    // Empty double wedge must be y (y - x) > 0.
    if (sign > 0) step(rows(-1, 2, 0, 0, 1, 0, 0, 0, 1));

    Rational u = 0;
    for (const auto& p : cur.points())
        if (sgn(p.coords.y) == 0 && sgn(p.coords.x) > 0 && (sgn(u) == 0 || p.coords.x < u)) u = p.coords.x;
    u = sgn(u) == 0 ? Rational(1) : u / 2;
    step(thin_wedge_map(cur, u));

    if (!satisfies_profile(cur, profile)) return fail("constructed frame failed verification");
    return {cur, make_record(t, profile, seed, attempts)};
}

// ---------------------------------------------------------------------------
// Chambers: half-edge walk of the planar subdivision closed off by a circle
// at infinity. Faces lie to the left of their half-edges.

namespace {

struct Dir {
    Rational dx, dy;
};

struct HalfEdge {
    int from = -1;
    int to = -1;
    int line = -1;        // -1 for arcs at infinity
    bool forward_arc = false;
    bool backward_arc = false;
    int twin = -1;
    int next = -1;
    Dir dir;              // direction of travel (lines only)
};

Rational cross(const Dir& d, const Rational& x, const Rational& y) { return d.dx * y - d.dy * x; }

}  // namespace

bool Chamber::has_vertex(int point) const {
    return std::find(vertices.begin(), vertices.end(), point) != vertices.end();
}

std::vector<int> sign_vector(const Arrangement& arr, const Rational& x, const Rational& y) {
    std::vector<int> s;
    s.reserve(arr.size());
    for (const auto& l : arr.lines()) s.push_back(sgn(l.q_value(x, y)));
    return s;
}

bool strictly_inside(const Arrangement& arr, const Chamber& ch, const Rational& x,
                     const Rational& y) {
    return sign_vector(arr, x, y) == ch.signs;
}

std::vector<Chamber> chambers(const Arrangement& arr) {
    if (!arr.normalized()) throw Error(ErrorCode::NotNormalized, "chambers need distinct finite slopes");
    const int n = static_cast<int>(arr.size());
    const int np = static_cast<int>(arr.points().size());
    if (n == 0) return {};

    // Ends at infinity in counterclockwise order: right ends by increasing
    // slope, then left ends by increasing slope.
    std::vector<int> by_slope(n);
    std::iota(by_slope.begin(), by_slope.end(), 0);
    std::sort(by_slope.begin(), by_slope.end(),
              [&](int a, int b) { return arr.line(a).slope() < arr.line(b).slope(); });
    std::vector<int> rank_of(n);
    for (int r = 0; r < n; ++r) rank_of[by_slope[r]] = r;
    const int num_ends = 2 * n;
    auto right_end = [&](int l) { return np + rank_of[l]; };
    auto left_end = [&](int l) { return np + n + rank_of[l]; };
    auto end_dir = [&](int e) {
        int k = e - np;
        const Line& l = arr.line(by_slope[k % n]);
        return k < n ? Dir{Rational(1), l.slope()} : Dir{Rational(-1), -l.slope()};
    };
    auto vertex_pos = [&](int v, Rational& x, Rational& y) {
        const auto& c = arr.point(v).coords;
        x = c.x;
        y = c.y;
    };

    std::vector<HalfEdge> he;
    auto add_edge = [&](int u, int v, int line, Dir d) {
        HalfEdge a{u, v, line, false, false, static_cast<int>(he.size()) + 1, -1, d};
        HalfEdge b{v, u, line, false, false, static_cast<int>(he.size()), -1,
                   Dir{-d.dx, -d.dy}};
        he.push_back(a);
        he.push_back(b);
    };
    for (int l = 0; l < n; ++l) {
        const Line& line = arr.line(l);
        std::vector<int> seq;
        seq.push_back(left_end(l));
        for (int p : arr.points_on(l)) seq.push_back(p);
        seq.push_back(right_end(l));
        for (std::size_t i = 0; i + 1 < seq.size(); ++i)
            add_edge(seq[i], seq[i + 1], l, Dir{Rational(1), line.slope()});
    }
    for (int e = 0; e < num_ends; ++e) {
        int from = np + e;
        int to = np + (e + 1) % num_ends;
        HalfEdge a{from, to, -1, true, false, static_cast<int>(he.size()) + 1, -1, {}};
        HalfEdge b{to, from, -1, false, true, static_cast<int>(he.size()), -1, {}};
        he.push_back(a);
        he.push_back(b);
    }

    // Counterclockwise order of outgoing half-edges at each vertex.
    std::vector<std::vector<int>> out(static_cast<std::size_t>(np + num_ends));
    for (int h = 0; h < static_cast<int>(he.size()); ++h) out[he[h].from].push_back(h);
    for (int v = 0; v < np; ++v) {
        // Rightward directions (dx > 0) by increasing slope, then leftward ones.
        std::sort(out[v].begin(), out[v].end(), [&](int a, int b) {
            bool ra = sgn(he[a].dir.dx) > 0, rb = sgn(he[b].dir.dx) > 0;
            if (ra != rb) return ra;
            return arr.line(he[a].line).slope() < arr.line(he[b].line).slope();
        });
    }
    for (int e = 0; e < num_ends; ++e) {
        int v = np + e;
        auto key = [&](int h) {
            if (he[h].forward_arc) return 0;
            if (he[h].line >= 0) return 1;
            return 2;
        };
        std::sort(out[v].begin(), out[v].end(), [&](int a, int b) { return key(a) < key(b); });
    }
    std::vector<int> pos_in_out(he.size());
    for (const auto& list : out)
        for (std::size_t i = 0; i < list.size(); ++i) pos_in_out[list[i]] = static_cast<int>(i);
    for (int h = 0; h < static_cast<int>(he.size()); ++h) {
        int tw = he[h].twin;
        const auto& list = out[he[h].to];
        int i = pos_in_out[tw];
        he[h].next = list[(i + static_cast<int>(list.size()) - 1) % list.size()];
    }

    std::vector<Chamber> result;
    std::vector<char> seen(he.size(), 0);
    for (int start = 0; start < static_cast<int>(he.size()); ++start) {
        if (seen[start]) continue;
        std::vector<int> cycle;
        for (int h = start; !seen[h]; h = he[h].next) {
            seen[h] = 1;
            cycle.push_back(h);
        }
        bool outer = false, unbounded = false;
        for (int h : cycle) {
            outer |= he[h].backward_arc;
            unbounded |= he[h].forward_arc;
        }
        if (outer) continue;

        Chamber ch;
        ch.bounded = !unbounded;
        for (int h : cycle) {
            BoundaryStep s;
            if (he[h].from < np) s.point = he[h].from;
            else s.end = he[h].from - np;
            s.line = he[h].line;
            ch.boundary.push_back(s);
            if (he[h].from < np) ch.vertices.push_back(he[h].from);
        }

        // Half-planes bounding the chamber: left of every line half-edge.
        auto inside = [&](const Rational& x, const Rational& y) {
            for (int h : cycle) {
                if (he[h].line < 0) continue;
                const Line& l = arr.line(he[h].line);
                Rational bx = 0, by = l.intercept();
                if (cross(he[h].dir, x - bx, y - by) <= 0) return false;
            }
            return true;
        };

        Rational cx = 0, cy = 0;
        for (int v : ch.vertices) {
            Rational x, y;
            vertex_pos(v, x, y);
            cx += x;
            cy += y;
        }
        bool ok = false;
        if (!ch.vertices.empty()) {
            cx /= static_cast<long>(ch.vertices.size());
            cy /= static_cast<long>(ch.vertices.size());
        }
        if (ch.bounded) {
            ok = inside(cx, cy);
        } else if (!ch.vertices.empty()) {
            Dir r{0, 0};
            for (int h : cycle) {
                if (he[h].line < 0) continue;
                if (he[h].to >= np) {
                    Dir d = end_dir(he[h].to);
                    r.dx += d.dx;
                    r.dy += d.dy;
                }
                if (he[h].from >= np) {
                    Dir d = end_dir(he[h].from);
                    r.dx += d.dx;
                    r.dy += d.dy;
                }
            }
            for (int k = 0; k < 64 && !ok; ++k) {
                Rational x = cx + r.dx, y = cy + r.dy;
                if (inside(x, y)) {
                    cx = x;
                    cy = y;
                    ok = true;
                }
                r.dx *= 2;
                r.dy *= 2;
            }
        } else {
            // A single line: the half-plane on the left of its only edge.
            for (int h : cycle) {
                if (he[h].line < 0) continue;
                const Line& l = arr.line(he[h].line);
                cx = 0;
                cy = l.intercept();
                cx += -he[h].dir.dy;
                cy += he[h].dir.dx;
                ok = inside(cx, cy);
                break;
            }
        }
        if (!ok)
            throw Error(ErrorCode::ConsistencyFailure, "could not place a sample point in a chamber");
        ch.sample_x = cx;
        ch.sample_y = cy;
        ch.signs = sign_vector(arr, cx, cy);
        result.push_back(std::move(ch));
    }

    // Bounded chambers first, each group ordered by sample point, so ids do
    // not depend on half-edge numbering.
    std::stable_sort(result.begin(), result.end(), [](const Chamber& a, const Chamber& b) {
        if (a.bounded != b.bounded) return a.bounded;
        if (a.sample_x != b.sample_x) return a.sample_x < b.sample_x;
        return a.sample_y < b.sample_y;
    });
    for (std::size_t i = 0; i < result.size(); ++i) result[i].id = static_cast<int>(i);
    return result;
}

std::size_t zaslavsky_bounded_count(const Arrangement& arr) {
    long count = 1 - static_cast<long>(arr.size());
    for (const auto& p : arr.points()) count += p.multiplicity() - 1;
    return count < 0 ? 0 : static_cast<std::size_t>(count);
}

// ---------------------------------------------------------------------------
// Sharp pairs

bool is_sharp_pair(const Arrangement& arr, int l, int l_prime) {
    const Line& a = arr.line(l);
    const Line& b = arr.line(l_prime);
    int sign = 0;
    for (const auto& p : arr.points()) {
        // Product of two linear forms has a well-defined sign on RP^2.
        int s = sgn(a.eval(p.coords) * b.eval(p.coords));
        if (s == 0) continue;
        if (sign == 0) sign = s;
        else if (s != sign) return false;
    }
    return true;
}

std::vector<std::pair<int, int>> sharp_pairs(const Arrangement& arr) {
    std::vector<std::pair<int, int>> out;
    const int n = static_cast<int>(arr.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (is_sharp_pair(arr, i, j)) out.emplace_back(i, j);
    return out;
}

}  // namespace arrhom

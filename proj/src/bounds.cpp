#include "arrhom/bounds.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace arrhom {

namespace {

std::vector<int> resonant_on(const Arrangement& arr, const LocalSystem& ls, int l0) {
    if (l0 < 0 || static_cast<std::size_t>(l0) >= arr.size())
        throw Error(ErrorCode::InvalidArgument, "no line " + std::to_string(l0));
    return resonant_points(arr, ls).on_line[static_cast<std::size_t>(l0)];
}

void require_not_pencil(const Arrangement& arr) {
    if (arr.points().size() <= 1)
        throw Error(ErrorCode::PencilNotCovered, "bound needs at least two intersection points");
}

bool rank_stable(const Matrix& base, std::size_t base_rank, const RelationRow& row,
                 const FieldScalar& zero) {
    Matrix m = base;
    m.append_row(row.dense(base.cols(), zero));
    return rank(m) == base_rank;
}

RelationRow combine(const std::vector<std::pair<FieldScalar, const RelationRow*>>& terms) {
    std::map<std::size_t, FieldScalar> acc;
    for (const auto& [c, row] : terms) {
        for (const auto& [col, v] : row->entries) {
            auto it = acc.find(col);
            if (it == acc.end()) acc.emplace(col, c * v);
            else it->second = it->second + c * v;
        }
    }
    RelationRow out{RowKind::Chamber, -1, {}};
    for (auto& [col, v] : acc)
        if (!v.is_zero()) out.entries.emplace_back(col, v);
    return out;
}

}  // namespace

std::size_t cdo_bound(const Arrangement& arr, const LocalSystem& ls, int l0) {
    std::size_t s = 0;
    for (int p : resonant_on(arr, ls, l0)) s += static_cast<std::size_t>(arr.point(p).multiplicity() - 2);
    return s;
}

std::size_t r0_bound(const Arrangement& arr, const LocalSystem& ls, int l0) {
    require_not_pencil(arr);
    const auto r = resonant_on(arr, ls, l0).size();
    return r == 0 ? 0 : r - 1;
}

std::vector<LineBounds> line_bounds(const Arrangement& arr, const LocalSystem& ls) {
    const auto res = resonant_points(arr, ls);
    std::vector<LineBounds> out;
    for (std::size_t l = 0; l < arr.size(); ++l) {
        LineBounds b;
        b.line = static_cast<int>(l);
        b.resonant_on_line = res.on_line[l].size();
        for (int p : res.on_line[l]) b.cdo += static_cast<std::size_t>(arr.point(p).multiplicity() - 2);
        if (arr.points().size() > 1) b.r0 = b.resonant_on_line == 0 ? 0 : b.resonant_on_line - 1;
        out.push_back(b);
    }
    return out;
}

bool BetaCertificate::all_in_k() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const BetaEntry& e) { return e.in_k && e.differences_in_k; });
}

bool BetaCertificate::count_ok() const {
    if (resonant_on_l0 == 0) return a_prime == 0 && neighbors == 0;
    return neighbors + resonant_on_l0 >= a_prime + 1;
}

BetaCertificate beta_certificate(const Arrangement& arr, const LocalSystem& ls, int l0,
                                 std::uint64_t seed) {
    validate(ls, arr);
    require_not_pencil(arr);
    BetaCertificate cert;
    cert.l0 = l0;
    auto [frame, record] = normalize(arr, NormalizationProfile::line_adapted(l0), seed);
    cert.frame = std::move(frame);
    cert.normalization = record;
    const Arrangement& a = cert.frame;

    const auto res = resonant_points(a, ls);
    const auto chs = chambers(a);
    const auto rm = relation_matrix(a, ls, res, chs);
    const FieldScalar zero = FieldScalar::zero_like(ls.one());
    cert.rank_k = rank(rm.matrix);
    cert.h1 = rm.basis.dim() - cert.rank_k;

    // alpha(l) for each line through a resonant point of l0: the sum of the
    // first i angles there, l0 being the lowest-slope line at that point.
    const auto& r0 = res.on_line[static_cast<std::size_t>(l0)];
    cert.resonant_on_l0 = r0.size();
    std::map<int, RelationRow> alpha;
    for (int p : r0) {
        const auto& lines = a.point(p).lines;
        if (lines.front() != l0)
            throw Error(ErrorCode::ConsistencyFailure, "l0 is not the lowest slope at its resonant point");
        RelationRow acc{RowKind::Chamber, -1, {}};
        for (std::size_t i = 1; i < lines.size(); ++i) {
            acc.entries.emplace_back(rm.basis.column(p, static_cast<int>(i - 1)), ls.one());
            alpha[lines[i]] = acc;
        }
    }
    cert.a_prime = alpha.size();
    const RelationRow empty{RowKind::Chamber, -1, {}};
    auto alpha_of = [&](int l) -> const RelationRow& {
        auto it = alpha.find(l);
        return it == alpha.end() ? empty : it->second;
    };

    // Lowest intersection point off l0 on each line of A'.
    std::set<int> neighbors;
    for (const auto& [l, row] : alpha) {
        (void)row;
        for (int q : a.points_on(l))
            if (!a.point(q).on_line(l0)) {
                neighbors.insert(q);
                break;
            }
    }
    cert.neighbors = neighbors.size();

    Matrix family(0, rm.basis.dim(), zero);
    for (int q : neighbors) {
        BetaEntry e;
        e.neighbor = q;
        e.lines = a.point(q).lines;
        e.resonant = res.contains(q);
        std::vector<std::pair<FieldScalar, const RelationRow*>> terms;
        if (e.resonant) {
            std::vector<int> prefix;
            for (int l : e.lines) {
                prefix.push_back(l);
                FieldScalar c = (ls.monodromy(l) - ls.one()) * ls.product(prefix).inverse();
                terms.emplace_back(c, &alpha_of(l));
            }
        } else {
            const long size = static_cast<long>(e.lines.size());
            const FieldScalar k = ls.is_exact()
                                      ? FieldScalar(CycloNumber::rational(ls.order(), Rational(size)))
                                      : FieldScalar(std::complex<double>(static_cast<double>(size), 0.0));
            terms.emplace_back(k, &alpha_of(e.lines.front()));
            for (int l : e.lines) terms.emplace_back(-ls.one(), &alpha_of(l));
            for (std::size_t i = 0; i < e.lines.size() && e.differences_in_k; ++i)
                for (std::size_t j = i + 1; j < e.lines.size() && e.differences_in_k; ++j) {
                    RelationRow d = combine({{ls.one(), &alpha_of(e.lines[i])},
                                             {-ls.one(), &alpha_of(e.lines[j])}});
                    e.differences_in_k = rank_stable(rm.matrix, cert.rank_k, d, zero);
                }
        }
        e.beta = combine(terms);
        e.in_k = rank_stable(rm.matrix, cert.rank_k, e.beta, zero);
        family.append_row(e.beta.dense(rm.basis.dim(), zero));
        cert.entries.push_back(std::move(e));
    }
    cert.family_rank = rank(family);
    return cert;
}

std::optional<int> constant_effective_order(const LocalSystem& ls) {
    auto k = ls.constant_exponent();
    if (!k) return std::nullopt;
    const int d = ls.order();
    return d / static_cast<int>(std::gcd(*k, static_cast<long>(d)));
}

SharpPairReport sharp_pair_report(const Arrangement& arr, const LocalSystem& ls,
                                  std::size_t h1_value, std::uint64_t seed) {
    SharpPairReport rep;
    rep.pairs = sharp_pairs(arr);
    rep.h1 = h1_value;
    rep.pencil = arr.points().size() <= 1;
    if (rep.pairs.empty() || rep.pencil) return rep;

    rep.bound_applicable = true;
    rep.bound_ok = h1_value <= 1;
    if (auto d = constant_effective_order(ls); d && *d >= 2 && arr.size() % static_cast<std::size_t>(*d) == 0 && *d % 2 == 0) {
        rep.vanishing_applicable = true;
        rep.vanishing_ok = h1_value == 0;
    }

    const auto [l0, l0p] = rep.pairs.front();
    try {
        auto [frame, record] = normalize(arr, NormalizationProfile::sharp_pair_adapted(l0, l0p), seed);
        (void)record;
        rep.adapted_frame_found = true;
        const int p0 = frame.meet(l0, l0p);
        for (const auto& l : frame.lines()) {
            if (frame.point(p0).on_line(l.id)) continue;
            int lowest = -1;
            for (int q : frame.points_on(l.id))
                if (!frame.point(q).on_line(l0)) {
                    lowest = q;
                    break;
                }
            if (lowest != frame.meet(l.id, l0p)) rep.neighbor_property_ok = false;
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NormalizationFailed) throw;
        rep.adapted_frame_error = e.what();
    }
    return rep;
}

}  // namespace arrhom

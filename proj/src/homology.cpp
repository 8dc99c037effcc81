#include "arrhom/homology.hpp"

#include <algorithm>

namespace arrhom {

AngleBasis::AngleBasis(const Arrangement& arr, const ResonantSet& resonant) {
    offset_.assign(arr.points().size(), -1);
    for (int p : resonant.points) {
        const auto& lines = arr.point(p).lines;
        const int k = static_cast<int>(lines.size());
        offset_[static_cast<std::size_t>(p)] = static_cast<long>(angles_.size());
        for (int i = 0; i < k; ++i)
            angles_.push_back(Angle{p, i, lines[static_cast<std::size_t>(i)],
                                    lines[static_cast<std::size_t>((i + 1) % k)]});
    }
}

bool AngleBasis::has_point(int point) const {
    return point >= 0 && static_cast<std::size_t>(point) < offset_.size() &&
           offset_[static_cast<std::size_t>(point)] >= 0;
}

std::size_t AngleBasis::column(int point, int index) const {
    if (!has_point(point))
        throw Error(ErrorCode::NotResonant, "point " + std::to_string(point) + " is not resonant");
    return static_cast<std::size_t>(offset_[static_cast<std::size_t>(point)] + index);
}

AngleBasis angle_basis(const Arrangement& arr, const ResonantSet& resonant) {
    return AngleBasis(arr, resonant);
}

std::string_view to_string(RowKind kind) {
    switch (kind) {
        case RowKind::PointPlus: return "point+";
        case RowKind::PointMinus: return "point-";
        case RowKind::Chamber: return "chamber";
    }
    return "?";
}

std::vector<FieldScalar> RelationRow::dense(std::size_t dim, const FieldScalar& zero) const {
    std::vector<FieldScalar> out(dim, zero);
    for (const auto& [c, v] : entries) out[c] = out[c] + v;
    return out;
}

bool same_coefficients(const RelationRow& a, const RelationRow& b) {
    if (a.entries.size() != b.entries.size()) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (a.entries[i].first != b.entries[i].first) return false;
        const FieldScalar diff = a.entries[i].second - b.entries[i].second;
        if (diff.is_exact() ? !diff.is_zero() : std::abs(diff.as_complex()) > 1e-9) return false;
    }
    return true;
}

namespace {

void require_resonant(const RelationContext& ctx, int point) {
    if (!ctx.resonant.contains(point) || !ctx.basis.has_point(point))
        throw Error(ErrorCode::NotResonant, "point " + std::to_string(point) + " is not resonant");
}

void add_entry(RelationRow& row, std::size_t col, const FieldScalar& v) {
    auto it = std::lower_bound(row.entries.begin(), row.entries.end(), col,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != row.entries.end() && it->first == col) {
        it->second = it->second + v;
        if (it->second.is_zero()) row.entries.erase(it);
    } else if (!v.is_zero()) {
        row.entries.insert(it, {col, v});
    }
}

}  // namespace

RelationRow row_alpha_plus(const RelationContext& ctx, int point) {
    require_resonant(ctx, point);
    RelationRow row{RowKind::PointPlus, point, {}};
    const int k = ctx.arr.point(point).multiplicity();
    for (int i = 0; i < k; ++i) add_entry(row, ctx.basis.column(point, i), ctx.ls.one());
    return row;
}

RelationRow row_alpha_minus(const RelationContext& ctx, int point) {
    require_resonant(ctx, point);
    RelationRow row{RowKind::PointMinus, point, {}};
    const auto& lines = ctx.arr.point(point).lines;
    std::vector<int> prefix;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        prefix.push_back(lines[i]);
        add_entry(row, ctx.basis.column(point, static_cast<int>(i)), ctx.ls.product(prefix));
    }
    return row;
}

int angle_index_of_direction(const Arrangement& arr, int point, const Rational& dx,
                             const Rational& dy) {
    const auto& lines = arr.point(point).lines;
    const int k = static_cast<int>(lines.size());
    if (sgn(dx) == 0) return k - 1;
    const Rational sigma = dy / dx;
    for (int i = 0; i + 1 < k; ++i) {
        if (arr.line(lines[static_cast<std::size_t>(i)]).slope() < sigma &&
            sigma < arr.line(lines[static_cast<std::size_t>(i + 1)]).slope())
            return i;
    }
    return k - 1;
}

std::pair<Rational, Rational> sample_off_vertical(const Arrangement& arr, const Chamber& ch,
                                                  int point) {
    const auto& c = arr.point(point).coords;
    if (ch.sample_x != c.x) return {ch.sample_x, ch.sample_y};
    Rational delta(1);
    for (int k = 0; k < 200; ++k, delta /= 2) {
        for (int s : {1, -1}) {
            Rational x = ch.sample_x + s * delta;
            if (strictly_inside(arr, ch, x, ch.sample_y)) return {x, ch.sample_y};
        }
    }
    throw Error(ErrorCode::ConsistencyFailure, "no sample point off the vertical through a vertex");
}

namespace {

void require_adjacent(const Chamber& ch, int point) {
    if (!ch.has_vertex(point))
        throw Error(ErrorCode::NotAdjacent, "chamber " + std::to_string(ch.id) +
                                                " has no vertex " + std::to_string(point));
}

}  // namespace

FieldScalar lambda(const Arrangement& arr, const LocalSystem& ls, int point, const Chamber& ch) {
    require_adjacent(ch, point);
    const auto [sx, sy] = sample_off_vertical(arr, ch, point);
    const auto& c = arr.point(point).coords;
    const Rational x0 = sx - c.x, y0 = sy - c.y;
    if (sgn(x0) > 0) return ls.one();
    std::vector<int> below;
    for (int l : arr.point(point).lines)
        if (arr.line(l).slope() * x0 > y0) below.push_back(l);
    return ls.product(below);
}

int chamber_angle(const Arrangement& arr, int point, const Chamber& ch) {
    require_adjacent(ch, point);
    const auto& c = arr.point(point).coords;
    return angle_index_of_direction(arr, point, ch.sample_x - c.x, ch.sample_y - c.y);
}

RelationRow row_alpha_chamber(const RelationContext& ctx, const Chamber& ch) {
    if (!ch.bounded)
        throw Error(ErrorCode::UnboundedChamber, "chamber " + std::to_string(ch.id) + " is unbounded");
    RelationRow row{RowKind::Chamber, ch.id, {}};
    for (int v : ch.vertices) {
        if (!ctx.basis.has_point(v)) continue;
        add_entry(row, ctx.basis.column(v, chamber_angle(ctx.arr, v, ch)),
                  lambda(ctx.arr, ctx.ls, v, ch));
    }
    return row;
}

RelationRow sector_sum(const RelationContext& ctx, const std::vector<Chamber>& chambers,
                       int point, int side) {
    require_resonant(ctx, point);
    const int l1 = ctx.arr.point(point).lines.front();
    RelationRow row{side > 0 ? RowKind::PointPlus : RowKind::PointMinus, point, {}};
    for (const auto& ch : chambers) {
        if (!ch.has_vertex(point)) continue;
        if (ch.signs[static_cast<std::size_t>(l1)] != (side > 0 ? 1 : -1)) continue;
        add_entry(row, ctx.basis.column(point, chamber_angle(ctx.arr, point, ch)),
                  lambda(ctx.arr, ctx.ls, point, ch));
    }
    return row;
}

RelationMatrix relation_matrix(const Arrangement& arr, const LocalSystem& ls,
                               const ResonantSet& resonant, const std::vector<Chamber>& chambers) {
    RelationMatrix out;
    out.basis = AngleBasis(arr, resonant);
    const RelationContext ctx{arr, ls, resonant, out.basis};
    for (int p : resonant.points) {
        out.rows.push_back(row_alpha_plus(ctx, p));
        out.rows.push_back(row_alpha_minus(ctx, p));
    }
    for (const auto& ch : chambers)
        if (ch.bounded) out.rows.push_back(row_alpha_chamber(ctx, ch));

    const FieldScalar zero = FieldScalar::zero_like(ls.one());
    out.matrix = Matrix(0, out.basis.dim(), zero);
    for (const auto& r : out.rows) {
        if (r.is_zero()) ++out.zero_rows;
        out.matrix.append_row(r.dense(out.basis.dim(), zero));
    }
    return out;
}

RelationMatrix relation_matrix(const Arrangement& arr, const LocalSystem& ls) {
    if (!arr.normalized()) throw Error(ErrorCode::NotNormalized, "relation matrix needs a normalized arrangement");
    validate(ls, arr);
    return relation_matrix(arr, ls, resonant_points(arr, ls), chambers(arr));
}

std::size_t h1_normalized(const Arrangement& arr, const LocalSystem& ls) {
    const auto rm = relation_matrix(arr, ls);
    return rm.basis.dim() - rank(rm.matrix);
}

HomologyReport h1(const Arrangement& arr, const LocalSystem& ls, const HomologyOptions& options) {
    validate(ls, arr);
    HomologyReport rep;
    auto [normalized, record] = normalize(arr, NormalizationProfile::basic(), options.seed);
    rep.normalized = std::move(normalized);
    rep.normalization = record;
    const Arrangement& a = rep.normalized;

    rep.resonant = resonant_points(a, ls);
    const auto chs = chambers(a);
    rep.bounded_chambers = static_cast<std::size_t>(
        std::count_if(chs.begin(), chs.end(), [](const Chamber& c) { return c.bounded; }));
    rep.zaslavsky_ok = rep.bounded_chambers == zaslavsky_bounded_count(a);

    const auto rm = relation_matrix(a, ls, rep.resonant, chs);
    rep.dim_a = rm.basis.dim();
    rep.num_rows = rm.rows.size();
    rep.zero_rows = rm.zero_rows;
    rep.rank = rank(rm.matrix, options.tolerance);
    rep.h1 = rep.dim_a - rep.rank;
    if (options.check_float && ls.is_exact()) {
        rep.float_rank = rank(rm.matrix.embedded(), options.tolerance);
        rep.float_agrees = *rep.float_rank == rep.rank;
    }
    rep.euler_characteristic = euler_characteristic(a);
    rep.h2 = static_cast<long>(rep.euler_characteristic) + static_cast<long>(rep.h1);
    return rep;
}

}  // namespace arrhom

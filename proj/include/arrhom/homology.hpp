#ifndef ARRHOM_HOMOLOGY_HPP
#define ARRHOM_HOMOLOGY_HPP

// Twisted H_1 of a line arrangement complement from angles at resonant
// points and relations coming from points and bounded chambers.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arrhom/exact_field.hpp"
#include "arrhom/geometry.hpp"
#include "arrhom/local_system.hpp"

namespace arrhom {

/// Angle (l_i, l_{i+1}) at a resonant point, where l_1, ..., l_k are the
/// point's lines by increasing slope. Index k-1 (0-based) is the angle
/// (l_k, l_1) that crosses the vertical direction.
struct Angle {
    int point = -1;
    int index = 0;
    int from_line = -1;
    int to_line = -1;
};

class AngleBasis {
  public:
    AngleBasis() = default;
    AngleBasis(const Arrangement& arr, const ResonantSet& resonant);

    const std::vector<Angle>& angles() const { return angles_; }
    std::size_t dim() const { return angles_.size(); }
    /// Column of angle `index` at `point`; throws NotResonant.
    std::size_t column(int point, int index) const;
    bool has_point(int point) const;

  private:
    std::vector<Angle> angles_;
    std::vector<long> offset_;  // per point id, -1 when not resonant
};

AngleBasis angle_basis(const Arrangement& arr, const ResonantSet& resonant);

enum class RowKind { PointPlus, PointMinus, Chamber };
std::string_view to_string(RowKind kind);

struct RelationRow {
    RowKind kind = RowKind::PointPlus;
    int source = -1;  // point id or chamber id
    std::vector<std::pair<std::size_t, FieldScalar>> entries;  // sorted by column

    bool is_zero() const { return entries.empty(); }
    std::vector<FieldScalar> dense(std::size_t dim, const FieldScalar& zero) const;
};

/// Same support and entries (exact comparison; float entries within 1e-9).
bool same_coefficients(const RelationRow& a, const RelationRow& b);

/// Everything the relation matrix is built from, for a normalized arrangement.
struct RelationContext {
    const Arrangement& arr;
    const LocalSystem& ls;
    const ResonantSet& resonant;
    const AngleBasis& basis;
};

RelationRow row_alpha_plus(const RelationContext& ctx, int point);
RelationRow row_alpha_minus(const RelationContext& ctx, int point);

/// Index of the angle at `point` that contains the direction (dx, dy).
int angle_index_of_direction(const Arrangement& arr, int point, const Rational& dx,
                             const Rational& dy);

/// Interior point of `ch` whose x-coordinate differs from that of `point`.
std::pair<Rational, Rational> sample_off_vertical(const Arrangement& arr, const Chamber& ch,
                                                  int point);

/// Monodromy correction of `ch` at its vertex `point`. Throws NotAdjacent.
FieldScalar lambda(const Arrangement& arr, const LocalSystem& ls, int point, const Chamber& ch);
/// Angle subtended by `ch` at its vertex `point`. Throws NotAdjacent.
int chamber_angle(const Arrangement& arr, int point, const Chamber& ch);

/// Sum of lambda * angle over resonant vertices. Throws UnboundedChamber.
RelationRow row_alpha_chamber(const RelationContext& ctx, const Chamber& ch);

/// Sum of lambda * angle over every chamber (bounded or not) at `point` on one
/// side of its lowest-slope line: side > 0 means Q_{l_1} > 0.
RelationRow sector_sum(const RelationContext& ctx, const std::vector<Chamber>& chambers,
                       int point, int side);

struct RelationMatrix {
    AngleBasis basis;
    std::vector<RelationRow> rows;
    Matrix matrix;
    std::size_t zero_rows = 0;
};

/// Rows alpha(p)+, alpha(p)- for resonant p by point id, then one row per
/// bounded chamber in chamber order. Throws NotNormalized.
RelationMatrix relation_matrix(const Arrangement& arr, const LocalSystem& ls);
RelationMatrix relation_matrix(const Arrangement& arr, const LocalSystem& ls,
                               const ResonantSet& resonant, const std::vector<Chamber>& chambers);

struct HomologyOptions {
    std::uint64_t seed = 1;
    bool check_float = true;
    double tolerance = kDefaultRankTolerance;
};

struct HomologyReport {
    Arrangement normalized;
    NormalizationRecord normalization;
    ResonantSet resonant;
    std::size_t bounded_chambers = 0;
    bool zaslavsky_ok = false;
    std::size_t dim_a = 0;
    std::size_t num_rows = 0;
    std::size_t zero_rows = 0;
    std::size_t rank = 0;
    std::size_t h1 = 0;
    std::optional<std::size_t> float_rank;
    bool float_agrees = true;
    int euler_characteristic = 0;
    long h2 = 0;
};

/// Normalizes (Basic profile), validates and computes h_1 = dim A - rank.
/// Throws NotALocalSystem / TrivialOnLine for inadmissible systems.
HomologyReport h1(const Arrangement& arr, const LocalSystem& ls, const HomologyOptions& options = {});

/// h_1 for an arrangement that already satisfies the Basic profile.
std::size_t h1_normalized(const Arrangement& arr, const LocalSystem& ls);

}  // namespace arrhom

#endif

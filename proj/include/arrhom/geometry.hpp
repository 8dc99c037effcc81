#ifndef ARRHOM_GEOMETRY_HPP
#define ARRHOM_GEOMETRY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arrhom/exact_field.hpp"

namespace arrhom {

using Mat3 = std::array<std::array<Rational, 3>, 3>;

Mat3 identity3();
Mat3 mul3(const Mat3& a, const Mat3& b);
Rational det3(const Mat3& m);
/// Throws InvalidArgument for singular input.
Mat3 inverse3(const Mat3& m);

/// Homogeneous rational point, scaled so that its last nonzero coordinate is 1.
struct ProjPoint {
    Rational x, y, z;

    bool affine() const { return sgn(z) != 0; }
    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    }
};

ProjPoint canonical_point(Rational x, Rational y, Rational z);
ProjPoint apply(const Mat3& t, const ProjPoint& p);

/// The real line a*x + b*y + c*z = 0. In the affine chart z = 1 a line with
/// b != 0 reads y = slope*x + intercept.
struct Line {
    int id = 0;
    Rational a, b, c;

    bool non_vertical() const { return sgn(b) != 0; }
    Rational slope() const;      // requires non_vertical()
    Rational intercept() const;  // requires non_vertical()
    Rational eval(const ProjPoint& p) const { return a * p.x + b * p.y + c * p.z; }
    /// Q_l(x, y) = y - slope*x - intercept at an affine point.
    Rational q_value(const Rational& x, const Rational& y) const;
    bool contains(const ProjPoint& p) const { return sgn(eval(p)) == 0; }
};

/// Coefficients divided by the last nonzero one, for proportionality tests.
std::array<Rational, 3> canonical_coefficients(const Line& l);
/// Line image under the point map p -> t p, i.e. coefficients L t^{-1}.
Line transform_line(const Line& l, const Mat3& t_inverse);

struct IntersectionPoint {
    int id = 0;
    ProjPoint coords;
    /// Slope-sorted when every incident line is non-vertical, id-sorted otherwise.
    std::vector<int> lines;

    int multiplicity() const { return static_cast<int>(lines.size()); }
    bool on_line(int line) const;
};

/// Line ids refer to positions in `lines`; every line keeps its id through
/// normalization so incidence data can be compared across frames.
class Arrangement {
  public:
    Arrangement() = default;
    /// Throws DegenerateLine for (0,0,0) and DuplicateLine for proportional lines.
    explicit Arrangement(std::vector<Line> lines);

    const std::vector<Line>& lines() const { return lines_; }
    const std::vector<IntersectionPoint>& points() const { return points_; }
    const Line& line(int id) const { return lines_.at(static_cast<std::size_t>(id)); }
    const IntersectionPoint& point(int id) const { return points_.at(static_cast<std::size_t>(id)); }
    std::size_t size() const { return lines_.size(); }

    /// Every line non-vertical with pairwise distinct slopes; then every
    /// intersection point is affine.
    bool normalized() const { return normalized_; }

    /// Points on a line, ordered by increasing x when the line is non-vertical.
    const std::vector<int>& points_on(int line) const {
        return points_on_line_.at(static_cast<std::size_t>(line));
    }
    /// Point where two distinct lines meet.
    int meet(int l1, int l2) const;

    Arrangement transformed(const Mat3& t) const;

  private:
    std::vector<Line> lines_;
    std::vector<IntersectionPoint> points_;
    std::vector<std::vector<int>> points_on_line_;
    std::vector<int> meet_;  // n*n table
    bool normalized_ = false;
};

/// Line with integer coefficients.
Line make_line(int id, long a, long b, long c);
/// Non-vertical affine line y = slope*x + intercept.
Line make_affine_line(int id, const Rational& slope, const Rational& intercept);

std::vector<IntersectionPoint> intersections(const std::vector<Line>& lines);

/// Point-line incidence structure in a frame-independent canonical form:
/// sorted list of sorted line-id sets, one per intersection point.
std::vector<std::vector<int>> incidence_poset(const Arrangement& arr);

int euler_characteristic(const Arrangement& arr);

// ---------------------------------------------------------------------------
// Normalization

struct NormalizationProfile {
    enum class Kind { Basic, LineAdapted, SharpPairAdapted };
    Kind kind = Kind::Basic;
    int l0 = -1;
    int l0_prime = -1;

    static NormalizationProfile basic() { return {}; }
    static NormalizationProfile line_adapted(int l0) { return {Kind::LineAdapted, l0, -1}; }
    static NormalizationProfile sharp_pair_adapted(int l0, int l0p) {
        return {Kind::SharpPairAdapted, l0, l0p};
    }
    std::string name() const;
};

struct NormalizationRecord {
    Mat3 transform;  // maps input homogeneous point coordinates to output ones
    Mat3 inverse;
    /// The line sent to infinity, in input coordinates (third row of `transform`).
    std::array<Rational, 3> line_at_infinity;
    NormalizationProfile profile;
    std::uint64_t seed = 0;
    int attempts = 0;
};

constexpr int kDefaultNormalizationRetries = 64;

/// Moves the arrangement into a frame satisfying `profile`:
///  Basic: distinct finite slopes (so no intersection point at infinity).
///  LineAdapted(l0): additionally l0 = {y = 0}, all other slopes positive and
///    every intersection point has y >= 0.
///  SharpPairAdapted(l0, l0'): l0 = {y = 0}, l0' = {y = x}, slopes in [0, 1],
///    and each intersection point has either y = 0, x <= 0 or x >= y > 0.
/// Already-normalized input is returned unchanged for Basic. The randomized
/// part is deterministic in `seed`. Throws NormalizationFailed.
std::pair<Arrangement, NormalizationRecord> normalize(
    const Arrangement& arr, const NormalizationProfile& profile, std::uint64_t seed,
    int max_retries = kDefaultNormalizationRetries);

bool satisfies_profile(const Arrangement& arr, const NormalizationProfile& profile);

/// Seeded random invertible integer projective transformation.
Mat3 random_projective_transform(std::uint64_t seed, int magnitude = 3);

// ---------------------------------------------------------------------------
// Chambers

/// One step of a chamber boundary walked counterclockwise: a vertex (an
/// intersection point, or -1 for an end at infinity) followed by the edge
/// leaving it (a line id, or -1 for an arc at infinity).
struct BoundaryStep {
    int point = -1;
    int end = -1;   // index of the infinite end when point == -1
    int line = -1;
};

struct Chamber {
    int id = 0;
    bool bounded = false;
    std::vector<BoundaryStep> boundary;
    /// Intersection points on the boundary, in counterclockwise order.
    std::vector<int> vertices;
    Rational sample_x, sample_y;
    /// sign(Q_l) at the sample point, per line id; never zero.
    std::vector<int> signs;

    bool has_vertex(int point) const;
};

/// All chambers of the affine real figure. Throws NotNormalized.
std::vector<Chamber> chambers(const Arrangement& arr);

/// Sign vector sign(Q_l(x, y)) over all lines.
std::vector<int> sign_vector(const Arrangement& arr, const Rational& x, const Rational& y);
bool strictly_inside(const Arrangement& arr, const Chamber& ch, const Rational& x,
                     const Rational& y);

std::size_t zaslavsky_bounded_count(const Arrangement& arr);

// ---------------------------------------------------------------------------
// Sharp pairs

/// Whether one of the two components of RP^2 minus (l u l') contains no
/// intersection point. Points on l or l' lie in neither component.
bool is_sharp_pair(const Arrangement& arr, int l, int l_prime);
std::vector<std::pair<int, int>> sharp_pairs(const Arrangement& arr);

}  // namespace arrhom

#endif

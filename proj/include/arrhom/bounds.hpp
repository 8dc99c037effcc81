#ifndef ARRHOM_BOUNDS_HPP
#define ARRHOM_BOUNDS_HPP

// Combinatorial upper bounds on h_1 and the certificates behind them.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arrhom/geometry.hpp"
#include "arrhom/homology.hpp"
#include "arrhom/local_system.hpp"

namespace arrhom {

/// Sum of (mult(p) - 2) over resonant points p on l0.
std::size_t cdo_bound(const Arrangement& arr, const LocalSystem& ls, int l0);

/// max(0, #R_0 - 1) for the resonant points R_0 on l0. Throws
/// PencilNotCovered when the arrangement has a single intersection point.
std::size_t r0_bound(const Arrangement& arr, const LocalSystem& ls, int l0);

struct LineBounds {
    int line = -1;
    std::size_t resonant_on_line = 0;
    std::size_t cdo = 0;
    std::optional<std::size_t> r0;  // empty for a pencil
};

std::vector<LineBounds> line_bounds(const Arrangement& arr, const LocalSystem& ls);

struct BetaEntry {
    int neighbor = -1;              // point id in the certificate frame
    bool resonant = false;
    std::vector<int> lines;         // lines of the neighbor by increasing slope
    RelationRow beta;
    bool in_k = false;
    /// Non-resonant neighbors: every pairwise difference alpha(l_i) - alpha(l_j) lies in K.
    bool differences_in_k = true;
};

struct BetaCertificate {
    int l0 = -1;
    NormalizationRecord normalization;
    Arrangement frame;
    std::size_t resonant_on_l0 = 0;   // #R_0
    std::size_t a_prime = 0;          // #A'
    std::size_t neighbors = 0;        // #N
    std::size_t rank_k = 0;
    std::size_t family_rank = 0;
    std::size_t h1 = 0;               // recomputed in the certificate frame
    std::vector<BetaEntry> entries;

    bool all_in_k() const;
    bool independent() const { return family_rank == neighbors; }
    /// #N >= #A' - #R_0 + 1 (vacuous when R_0 is empty).
    bool count_ok() const;
    /// h_1 <= #A' - #N.
    bool bound_ok() const { return h1 + neighbors <= a_prime; }
    bool ok() const { return all_in_k() && independent() && count_ok() && bound_ok(); }
};

/// Builds the neighbor certificate for l0 in a frame where l0 = {y = 0},
/// every other slope is positive and no intersection point has y < 0.
/// Throws PencilNotCovered or NormalizationFailed.
BetaCertificate beta_certificate(const Arrangement& arr, const LocalSystem& ls, int l0,
                                 std::uint64_t seed = 1);

struct SharpPairReport {
    std::vector<std::pair<int, int>> pairs;
    std::size_t h1 = 0;
    bool pencil = false;
    /// h_1 <= 1 whenever a sharp pair exists (not applicable to pencils).
    bool bound_applicable = false;
    bool bound_ok = true;
    /// h_1 = 0 for constant monodromy of even effective order.
    bool vanishing_applicable = false;
    bool vanishing_ok = true;
    /// Adapted frame for the first pair: whether it was found, and whether in
    /// it every line off l0 cap l0' has its lowest neighbor on l0'.
    bool adapted_frame_found = false;
    bool neighbor_property_ok = true;
    std::string adapted_frame_error;

    bool ok() const { return bound_ok && vanishing_ok && neighbor_property_ok; }
};

/// `h1_value` is the already-computed h_1 of (arr, ls).
SharpPairReport sharp_pair_report(const Arrangement& arr, const LocalSystem& ls,
                                  std::size_t h1_value, std::uint64_t seed = 1);

/// Effective order d / gcd(k, d) of a constant system zeta_d^k, if constant.
std::optional<int> constant_effective_order(const LocalSystem& ls);

}  // namespace arrhom

#endif

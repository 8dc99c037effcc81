#ifndef ARRHOM_LOCAL_SYSTEM_HPP
#define ARRHOM_LOCAL_SYSTEM_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "arrhom/exact_field.hpp"
#include "arrhom/geometry.hpp"

namespace arrhom {

/// Rank-one local system on the complement: m(l) = zeta_d^{k_l} in exact
/// mode, or an arbitrary unit complex number per line in float mode.
class LocalSystem {
  public:
    /// Exact mode. Exponents are reduced into [0, d).
    static LocalSystem exact(int order, std::vector<long> exponents);
    static LocalSystem constant(int order, std::size_t lines, long exponent = 1);
    static LocalSystem floating(std::vector<std::complex<double>> values);

    ScalarMode mode() const noexcept { return mode_; }
    bool is_exact() const noexcept { return mode_ == ScalarMode::Exact; }
    int order() const noexcept { return order_; }
    std::size_t size() const noexcept { return is_exact() ? exponents_.size() : values_.size(); }
    const std::vector<long>& exponents() const noexcept { return exponents_; }

    /// m(l) as a matrix scalar of the system's mode.
    FieldScalar monodromy(int line) const;
    /// Product of m(l) over the given lines.
    FieldScalar product(const std::vector<int>& lines) const;
    FieldScalar one() const;
    /// Whether the product of m(l) over `lines` is 1 (exactly, or within 1e-9).
    bool product_is_one(const std::vector<int>& lines) const;

    /// Same monodromy embedded through zeta_d -> exp(2 pi i / d).
    LocalSystem as_float() const;
    /// Constant exponent if every line carries the same one.
    std::optional<long> constant_exponent() const;

    /// Same system with lines reindexed: result[i] = this[perm[i]].
    LocalSystem permuted(const std::vector<int>& perm) const;
    /// Lines other than `dropped`, in order.
    LocalSystem without(int dropped) const;

  private:
    ScalarMode mode_ = ScalarMode::Exact;
    int order_ = 1;
    std::vector<long> exponents_;
    std::vector<std::complex<double>> values_;
};

struct AdmissibilityReport {
    bool size_matches = false;
    bool product_one = false;
    std::vector<int> trivial_lines;  // lines with m(l) = 1

    bool admissible() const { return size_matches && product_one && trivial_lines.empty(); }
    std::string message() const;
};

AdmissibilityReport check_admissibility(const LocalSystem& ls, const Arrangement& arr);
/// Throws InvalidArgument (size mismatch), NotALocalSystem or TrivialOnLine.
void validate(const LocalSystem& ls, const Arrangement& arr);

struct ResonantSet {
    std::vector<int> points;               // increasing point id
    std::vector<std::vector<int>> on_line; // per line, resonant points on it

    bool contains(int point) const;
};

/// Points of multiplicity >= 3 whose lines' monodromies multiply to 1.
ResonantSet resonant_points(const Arrangement& arr, const LocalSystem& ls);

}  // namespace arrhom

#endif

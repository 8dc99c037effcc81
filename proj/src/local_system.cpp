#include "arrhom/local_system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace arrhom {

namespace {
constexpr double kUnitTolerance = 1e-12;
constexpr double kProductTolerance = 1e-9;

long reduce(long k, int d) {
    long r = k % d;
    return r < 0 ? r + d : r;
}
}  // namespace

LocalSystem LocalSystem::exact(int order, std::vector<long> exponents) {
    if (order < 1) throw Error(ErrorCode::InvalidArgument, "order must be positive");
    LocalSystem ls;
    ls.mode_ = ScalarMode::Exact;
    ls.order_ = order;
    for (auto& k : exponents) k = reduce(k, order);
    ls.exponents_ = std::move(exponents);
    return ls;
}

LocalSystem LocalSystem::constant(int order, std::size_t lines, long exponent) {
    return exact(order, std::vector<long>(lines, exponent));
}

LocalSystem LocalSystem::floating(std::vector<std::complex<double>> values) {
    for (const auto& v : values)
        if (std::abs(std::abs(v) - 1.0) > kUnitTolerance)
            throw Error(ErrorCode::InvalidArgument, "monodromy values must have modulus 1");
    LocalSystem ls;
    ls.mode_ = ScalarMode::Float;
    ls.values_ = std::move(values);
    return ls;
}

FieldScalar LocalSystem::monodromy(int line) const {
    if (is_exact()) return CycloNumber::zeta_power(order_, exponents_.at(static_cast<std::size_t>(line)));
    return FieldScalar(values_.at(static_cast<std::size_t>(line)));
}

FieldScalar LocalSystem::one() const {
    if (is_exact()) return CycloNumber::one(order_);
    return FieldScalar(std::complex<double>(1.0, 0.0));
}

FieldScalar LocalSystem::product(const std::vector<int>& lines) const {
    if (is_exact()) {
        long k = 0;
        for (int l : lines) k += exponents_.at(static_cast<std::size_t>(l));
        return CycloNumber::zeta_power(order_, k);
    }
    std::complex<double> p(1.0, 0.0);
    for (int l : lines) p *= values_.at(static_cast<std::size_t>(l));
    return FieldScalar(p);
}

bool LocalSystem::product_is_one(const std::vector<int>& lines) const {
    if (is_exact()) {
        long k = 0;
        for (int l : lines) k += exponents_.at(static_cast<std::size_t>(l));
        return reduce(k, order_) == 0;
    }
    return std::abs(product(lines).as_complex() - 1.0) <= kProductTolerance;
}

LocalSystem LocalSystem::as_float() const {
    if (!is_exact()) return *this;
    std::vector<std::complex<double>> v;
    v.reserve(exponents_.size());
    for (long k : exponents_)
        v.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / order_));
    return floating(std::move(v));
}

std::optional<long> LocalSystem::constant_exponent() const {
    if (!is_exact() || exponents_.empty()) return std::nullopt;
    if (std::all_of(exponents_.begin(), exponents_.end(), [&](long k) { return k == exponents_[0]; }))
        return exponents_[0];
    return std::nullopt;
}

LocalSystem LocalSystem::permuted(const std::vector<int>& perm) const {
    LocalSystem out = *this;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        auto src = static_cast<std::size_t>(perm[i]);
        if (is_exact()) out.exponents_[i] = exponents_.at(src);
        else out.values_[i] = values_.at(src);
    }
    return out;
}

LocalSystem LocalSystem::without(int dropped) const {
    LocalSystem out = *this;
    auto idx = static_cast<std::ptrdiff_t>(dropped);
    if (is_exact()) out.exponents_.erase(out.exponents_.begin() + idx);
    else out.values_.erase(out.values_.begin() + idx);
    return out;
}

std::string AdmissibilityReport::message() const {
    if (!size_matches) return "number of monodromy values differs from number of lines";
    if (!product_one) return "product of monodromies is not 1";
    if (!trivial_lines.empty()) return "monodromy is trivial on line " + std::to_string(trivial_lines.front());
    return "admissible";
}

AdmissibilityReport check_admissibility(const LocalSystem& ls, const Arrangement& arr) {
    AdmissibilityReport r;
    r.size_matches = ls.size() == arr.size();
    if (!r.size_matches) return r;
    std::vector<int> all(arr.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    r.product_one = ls.product_is_one(all);
    for (int l : all)
        if (ls.product_is_one({l})) r.trivial_lines.push_back(l);
    return r;
}

void validate(const LocalSystem& ls, const Arrangement& arr) {
    auto r = check_admissibility(ls, arr);
    if (!r.size_matches) throw Error(ErrorCode::InvalidArgument, r.message());
    if (!r.product_one) throw Error(ErrorCode::NotALocalSystem, r.message());
    if (!r.trivial_lines.empty()) throw Error(ErrorCode::TrivialOnLine, r.message());
}

bool ResonantSet::contains(int point) const {
    return std::binary_search(points.begin(), points.end(), point);
}

ResonantSet resonant_points(const Arrangement& arr, const LocalSystem& ls) {
    ResonantSet r;
    r.on_line.assign(arr.size(), {});
    for (const auto& p : arr.points()) {
        if (p.multiplicity() < 3 || !ls.product_is_one(p.lines)) continue;
        r.points.push_back(p.id);
        for (int l : p.lines) r.on_line[static_cast<std::size_t>(l)].push_back(p.id);
    }
    return r;
}

}  // namespace arrhom

#ifndef ARRHOM_REPORT_HPP
#define ARRHOM_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "arrhom/geometry.hpp"
#include "arrhom/local_system.hpp"

namespace arrhom {

using Json = nlohmann::ordered_json;

struct ReportOptions {
    std::uint64_t seed = 1;
    bool use_float = false;
    bool run_oracle = true;
};

struct ReportResult {
    Json json;
    /// Messages for every failed internal cross-check; empty when consistent.
    std::vector<std::string> failures;

    bool consistent() const { return failures.empty(); }
};

Json rational_json(const Rational& q);
Json transform_json(const Mat3& m);

/// Full h_1 report: normalization, census, matrix, bounds, sharp pairs, oracle.
ReportResult h1_report(const Arrangement& arr, const LocalSystem& ls, const ReportOptions& opt);
/// Per-line bounds and neighbor certificates.
ReportResult bounds_report(const Arrangement& arr, const LocalSystem& ls, const ReportOptions& opt);
ReportResult sharp_pairs_report(const Arrangement& arr, const LocalSystem& ls, const ReportOptions& opt);
/// Oracle value for every choice of line sent to infinity.
ReportResult oracle_report(const Arrangement& arr, const LocalSystem& ls, const ReportOptions& opt);
/// Admissibility and resonance only; never throws on inadmissible systems.
Json validate_report(const Arrangement& arr, const LocalSystem& ls);

}  // namespace arrhom

#endif

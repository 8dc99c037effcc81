#ifndef ARRHOM_FUZZ_HPP
#define ARRHOM_FUZZ_HPP

// Random instances and the property checks run on each of them.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "arrhom/geometry.hpp"
#include "arrhom/local_system.hpp"
#include "arrhom/report.hpp"

namespace arrhom {

/// Lines through pairs of points of a grid x grid lattice; such
/// arrangements have many points of multiplicity >= 3.
std::vector<Line> random_grid_lines(std::mt19937_64& rng, int n, int grid = 5);

/// n lines, the last two placed so that they form a sharp pair. Returns the
/// lines and the ids of the planted pair.
std::pair<std::vector<Line>, std::pair<int, int>> random_sharp_pair_lines(std::mt19937_64& rng, int n,
                                                                          int grid = 5);

/// Admissible exponents of order d, preferring many resonant points; with
/// probability `constant_bias` a constant system when one is admissible.
/// Empty when no admissible system exists (e.g. d = 2 and n odd).
std::optional<LocalSystem> random_local_system(std::mt19937_64& rng, const Arrangement& arr, int d,
                                               double constant_bias = 0.25);

/// Pencils and complete quadrilaterals (plus extra lines) carrying local
/// systems chosen to make their multiple points resonant, moved by a random
/// projective map. These are the instances where h_1 tends to be nonzero.
struct StructuredInstance {
    std::vector<Line> lines;
    std::optional<LocalSystem> ls;
};
StructuredInstance random_structured_instance(std::mt19937_64& rng, int n, int d);

enum class Family { General, SharpPair, Structured };
std::string_view family_name(Family f);

struct Instance {
    std::vector<Line> lines;
    LocalSystem ls;
    Family family = Family::General;
    bool sharp_family = false;
};

enum class Check {
    Oracle,
    OracleComplex,
    CdoBound,
    R0Bound,
    SharpBound,
    SharpVanishing,
    SharpFrame,
    Beta,
    SectorSum,
    Zaslavsky,
    AngleCount,
    SeedInvariance,
    PermutationInvariance,
    FloatAgreement,
    EulerH2,
    Count
};
constexpr std::size_t kCheckCount = static_cast<std::size_t>(Check::Count);
std::string_view check_name(Check c);

struct CheckTally {
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
};

struct TrialOptions {
    std::uint64_t seed = 1;
    /// Every decone line is tried when n <= this, else only line 0.
    std::size_t oracle_all_lines_up_to = 6;
    int invariance_seeds = 3;
    bool run_beta = true;
};

struct TrialResult {
    std::size_t lines = 0;
    int order = 0;
    std::size_t h1 = 0;
    bool sharp_family = false;
    std::array<CheckTally, kCheckCount> tally{};
    std::vector<std::string> violations;

    void record(Check c, bool ok, const std::string& what);
    void skip(Check c) { ++tally[static_cast<std::size_t>(c)].skipped; }
};

/// Runs every property check on one instance; never throws for violations.
TrialResult run_trial(const Instance& inst, const TrialOptions& opt);

struct FuzzConfig {
    int lines = 6;          // 0: random in [min_lines, max_lines]
    int min_lines = 3;
    int max_lines = 8;
    int order = 3;          // 0: random in [2, 6]
    int trials = 100;
    std::uint64_t seed = 1;
    bool sharp_only = false;
    bool structured = true;  // include the structured family
    int threads = 0;        // 0: hardware concurrency
    TrialOptions trial;
    std::string dump_dir;   // counterexamples written here when non-empty
};

constexpr int kMaxFuzzLines = 10;

/// Deterministic in (config, trial index); empty if no admissible system exists.
std::optional<Instance> generate_instance(const FuzzConfig& cfg, int index);

struct FuzzSummary {
    int trials = 0;
    int generated = 0;
    int nontrivial_h1 = 0;
    std::array<CheckTally, kCheckCount> tally{};
    std::vector<std::pair<int, std::string>> violations;
    std::vector<std::string> dumps;

    bool ok() const { return violations.empty(); }
};

/// Runs trials on a worker pool; aggregation is in trial order.
FuzzSummary run_fuzz(const FuzzConfig& cfg);
Json summary_json(const FuzzSummary& s, const FuzzConfig& cfg);

/// Seed for trial `index` derived from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace arrhom

#endif

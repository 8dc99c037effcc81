#include "arrhom/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "arrhom/bounds.hpp"
#include "arrhom/fox_oracle.hpp"
#include "arrhom/homology.hpp"
#include "arrhom/io.hpp"

namespace arrhom {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64 step over the combined value
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Line line_through(int id, const Rational& x1, const Rational& y1, const Rational& x2, const Rational& y2) {
    return Line{id, y2 - y1, x1 - x2, x2 * y1 - x1 * y2};
}

bool add_distinct(std::vector<Line>& lines, std::set<std::array<Rational, 3>>& seen, Line l) {
    if (sgn(l.a) == 0 && sgn(l.b) == 0) return false;
    auto key = canonical_coefficients(l);
    if (!seen.insert(key).second) return false;
    l.id = static_cast<int>(lines.size());
    lines.push_back(l);
    return true;
}

}  // namespace

std::vector<Line> random_grid_lines(std::mt19937_64& rng, int n, int grid) {
    std::vector<Line> lines;
    std::set<std::array<Rational, 3>> seen;
    while (static_cast<int>(lines.size()) < n) {
        const int x1 = uniform(rng, 0, grid - 1), y1 = uniform(rng, 0, grid - 1);
        const int x2 = uniform(rng, 0, grid - 1), y2 = uniform(rng, 0, grid - 1);
        if (x1 == x2 && y1 == y2) continue;
        add_distinct(lines, seen, line_through(0, x1, y1, x2, y2));
    }
    return lines;
}

std::pair<std::vector<Line>, std::pair<int, int>> random_sharp_pair_lines(std::mt19937_64& rng, int n,
                                                                          int grid) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "a sharp pair needs two lines");
    while (true) {
        std::vector<Line> base = random_grid_lines(rng, n - 2, grid);
        const auto pts = intersections(base);
        if (std::any_of(pts.begin(), pts.end(), [](const IntersectionPoint& p) { return !p.coords.affine(); }))
            continue;
        // Apex strictly below and left of every point: all directions to the
        // points lie in the open first quadrant, so two extreme rays enclose them.
        Rational px = -1 - uniform(rng, 0, 3), py = -1 - uniform(rng, 0, 3);
        for (const auto& p : pts) {
            px = std::min(px, Rational(p.coords.x - 1 - uniform(rng, 0, 2)));
            py = std::min(py, Rational(p.coords.y - 1 - uniform(rng, 0, 2)));
        }
        std::optional<Rational> lo, hi;
        ProjPoint lo_pt, hi_pt;
        for (const auto& p : pts) {
            Rational s = (p.coords.y - py) / (p.coords.x - px);
            if (!lo || s < *lo) {
                lo = s;
                lo_pt = p.coords;
            }
            if (!hi || s > *hi) {
                hi = s;
                hi_pt = p.coords;
            }
        }
        Line l0, l1;
        if (!lo) {
            l0 = line_through(0, px, py, px + 1, py + uniform(rng, 0, 2));
            l1 = line_through(0, px, py, px + 1, py + uniform(rng, 3, 5));
        } else {
            l0 = line_through(0, px, py, lo_pt.x, lo_pt.y);
            if (*lo == *hi) l1 = line_through(0, px, py, px + 1, py + *hi + 1);
            else l1 = line_through(0, px, py, hi_pt.x, hi_pt.y);
        }
        std::vector<Line> lines;
        std::set<std::array<Rational, 3>> seen;
        for (const auto& l : base) add_distinct(lines, seen, l);
        if (!add_distinct(lines, seen, l0) || !add_distinct(lines, seen, l1)) continue;

        // Random line order; track where the planted pair ends up.
        std::vector<int> perm(lines.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Line> shuffled(lines.size());
        int a = -1, b = -1;
        for (std::size_t i = 0; i < perm.size(); ++i) {
            shuffled[i] = lines[static_cast<std::size_t>(perm[i])];
            shuffled[i].id = static_cast<int>(i);
            if (perm[i] == n - 2) a = static_cast<int>(i);
            if (perm[i] == n - 1) b = static_cast<int>(i);
        }
        Arrangement arr(shuffled);
        if (!is_sharp_pair(arr, a, b))
            throw Error(ErrorCode::ConsistencyFailure, "planted pair is not sharp");
        return {shuffled, {std::min(a, b), std::max(a, b)}};
    }
}

std::optional<LocalSystem> random_local_system(std::mt19937_64& rng, const Arrangement& arr, int d,
                                               double constant_bias) {
    const std::size_t n = arr.size();
    if (d < 2 || n < 2) return std::nullopt;
    std::vector<long> constants;
    for (long k = 1; k < d; ++k)
        if ((k * static_cast<long>(n)) % d == 0) constants.push_back(k);
    if (!constants.empty() && std::uniform_real_distribution<double>(0, 1)(rng) < constant_bias)
        return LocalSystem::constant(d, n, constants[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(constants.size()) - 1))]);

    std::optional<LocalSystem> best;
    std::size_t best_score = 0;
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<long> ks(n);
        long sum = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            ks[i] = uniform(rng, 1, d - 1);
            sum += ks[i];
        }
        ks[n - 1] = ((-sum) % d + d) % d;
        if (ks[n - 1] == 0) continue;
        LocalSystem ls = LocalSystem::exact(d, ks);
        const std::size_t score = resonant_points(arr, ls).points.size();
        if (!best || score > best_score) {
            best = ls;
            best_score = score;
        }
    }
    if (!best && !constants.empty()) return LocalSystem::constant(d, n, constants.front());
    return best;
}

std::string_view family_name(Family f) {
    switch (f) {
        case Family::General: return "general";
        case Family::SharpPair: return "sharp_pair";
        case Family::Structured: return "structured";
    }
    return "?";
}

StructuredInstance random_structured_instance(std::mt19937_64& rng, int n, int d) {
    StructuredInstance out;
    std::vector<Line> lines;
    std::set<std::array<Rational, 3>> seen;
    std::vector<long> ks;
    if (n < 6 || uniform(rng, 0, 3) == 0) {
        // Pencil through a grid point.
        const int cx = uniform(rng, 0, 3), cy = uniform(rng, 0, 3);
        while (static_cast<int>(lines.size()) < n)
            add_distinct(lines, seen, line_through(0, cx, cy, cx + uniform(rng, -3, 3), cy + uniform(rng, -3, 3)));
    } else {
        // Complete quadrilateral on four points, no three collinear.
        std::array<std::pair<int, int>, 4> p;
        auto collinear = [](auto a, auto b, auto c) {
            return (b.first - a.first) * (c.second - a.second) == (b.second - a.second) * (c.first - a.first);
        };
        while (true) {
            for (auto& q : p) q = {uniform(rng, 0, 4), uniform(rng, 0, 4)};
            bool ok = true;
            for (int i = 0; i < 4 && ok; ++i)
                for (int j = i + 1; j < 4 && ok; ++j)
                    for (int k = j + 1; k < 4 && ok; ++k) ok = !collinear(p[i], p[j], p[k]);
            if (ok) break;
        }
        const int pairs[6][2] = {{0, 1}, {2, 3}, {0, 2}, {1, 3}, {0, 3}, {1, 2}};
        for (const auto& pr : pairs)
            add_distinct(lines, seen, line_through(0, p[pr[0]].first, p[pr[0]].second, p[pr[1]].first, p[pr[1]].second));
        // Opposite sides share an exponent: every triple point is resonant.
        if (d >= 3) {
            const long a = uniform(rng, 1, d - 1);
            long b = uniform(rng, 1, d - 1);
            for (int t = 0; t < 2 * d && ((a + b) % d == 0); ++t) b = uniform(rng, 1, d - 1);
            const long c = ((-(a + b)) % d + d) % d;
            if (c != 0) ks = {a, a, b, b, c, c};
        }
        while (static_cast<int>(lines.size()) < n)
            add_distinct(lines, seen, line_through(0, uniform(rng, 0, 4), uniform(rng, 0, 4), uniform(rng, 0, 4), uniform(rng, 0, 4)));
        if (!ks.empty()) {
            // Extra lines in +k / -k pairs keep the total at zero.
            const int extra = n - 6;
            if (extra % 2 == 1) {
                ks.clear();
            } else {
                for (int i = 0; i < extra; i += 2) {
                    const long k = uniform(rng, 1, d - 1);
                    ks.push_back(k);
                    ks.push_back(d - k);
                }
            }
        }
    }
    const Mat3 t = random_projective_transform(rng(), 2);
    const Mat3 inv = inverse3(t);
    for (auto& l : lines) l = transform_line(l, inv);
    out.lines = lines;
    if (!ks.empty()) out.ls = LocalSystem::exact(d, ks);
    else {
        std::mt19937_64 sub(rng());
        out.ls = random_local_system(sub, Arrangement(lines), d, 0.5);
    }
    return out;
}

std::string_view check_name(Check c) {
    switch (c) {
        case Check::Oracle: return "oracle_agreement";
        case Check::OracleComplex: return "fox_boundary_squared_zero";
        case Check::CdoBound: return "cdo_bound";
        case Check::R0Bound: return "resonant_count_bound";
        case Check::SharpBound: return "sharp_pair_h1_at_most_one";
        case Check::SharpVanishing: return "sharp_pair_even_constant_vanishing";
        case Check::SharpFrame: return "sharp_pair_frame_neighbors";
        case Check::Beta: return "neighbor_certificate";
        case Check::SectorSum: return "sector_sum_identity";
        case Check::Zaslavsky: return "zaslavsky_count";
        case Check::AngleCount: return "angles_per_point";
        case Check::SeedInvariance: return "seed_invariance";
        case Check::PermutationInvariance: return "permutation_invariance";
        case Check::FloatAgreement: return "float_exact_rank_agreement";
        case Check::EulerH2: return "h2_nonnegative";
        case Check::Count: break;
    }
    return "?";
}

void TrialResult::record(Check c, bool ok, const std::string& what) {
    auto& t = tally[static_cast<std::size_t>(c)];
    ++t.checked;
    if (!ok) {
        ++t.failed;
        violations.push_back(std::string(check_name(c)) + ": " + what);
    }
}

TrialResult run_trial(const Instance& inst, const TrialOptions& opt) {
    TrialResult tr;
    const Arrangement arr(inst.lines);
    const LocalSystem& ls = inst.ls;
    tr.lines = arr.size();
    tr.order = ls.order();
    tr.sharp_family = inst.sharp_family;

    HomologyOptions hopt;
    hopt.seed = opt.seed;
    const HomologyReport rep = h1(arr, ls, hopt);
    tr.h1 = rep.h1;
    const std::string h1s = std::to_string(rep.h1);

    tr.record(Check::Zaslavsky, rep.zaslavsky_ok,
              std::to_string(rep.bounded_chambers) + " bounded chambers, expected " +
                  std::to_string(zaslavsky_bounded_count(rep.normalized)));
    tr.record(Check::FloatAgreement, rep.float_agrees,
              "exact rank " + std::to_string(rep.rank) + ", float rank " + std::to_string(rep.float_rank.value_or(0)));
    tr.record(Check::EulerH2, rep.h2 >= 0, "h2 = " + std::to_string(rep.h2));

    // Angles and the sector-sum identity, in the normalized frame.
    {
        const Arrangement& a = rep.normalized;
        const auto chs = chambers(a);
        const AngleBasis basis(a, rep.resonant);
        const RelationContext ctx{a, ls, rep.resonant, basis};
        for (int p : rep.resonant.points) {
            const auto count = std::count_if(basis.angles().begin(), basis.angles().end(),
                                             [&](const Angle& an) { return an.point == p; });
            tr.record(Check::AngleCount, count == a.point(p).multiplicity(),
                      "point " + std::to_string(p) + " has " + std::to_string(count) + " angles");
            tr.record(Check::SectorSum, same_coefficients(sector_sum(ctx, chs, p, 1), row_alpha_plus(ctx, p)),
                      "upper side at point " + std::to_string(p));
            tr.record(Check::SectorSum, same_coefficients(sector_sum(ctx, chs, p, -1), row_alpha_minus(ctx, p)),
                      "lower side at point " + std::to_string(p));
        }
    }

    // Fox-calculus oracle.
    const std::size_t oracle_lines = arr.size() <= opt.oracle_all_lines_up_to ? arr.size() : 1;
    for (std::size_t l = 0; l < oracle_lines; ++l) {
        const auto dec = decone(arr, ls, static_cast<int>(l), opt.seed);
        const auto gp = randell_presentation(wiring_diagram(dec), static_cast<int>(dec.lines.size()));
        const auto tc = twisted_complex(gp, dec.local_system);
        tr.record(Check::OracleComplex, tc.boundary_squared_zero, "decone line " + std::to_string(l));
        const std::size_t g = dec.lines.size();
        const std::size_t o = g == 0 ? 0 : g - 1 - rank(tc.d2);
        tr.record(Check::Oracle, o == rep.h1,
                  "h1 " + h1s + " but oracle " + std::to_string(o) + " deconing line " + std::to_string(l));
    }

    // Bounds.
    const bool pencil = arr.points().size() <= 1;
    for (const auto& b : line_bounds(arr, ls)) {
        tr.record(Check::CdoBound, rep.h1 <= b.cdo,
                  "h1 " + h1s + " > " + std::to_string(b.cdo) + " on line " + std::to_string(b.line));
        if (b.r0)
            tr.record(Check::R0Bound, rep.h1 <= *b.r0,
                      "h1 " + h1s + " > " + std::to_string(*b.r0) + " on line " + std::to_string(b.line));
        else
            tr.skip(Check::R0Bound);
    }

    const auto sp = sharp_pair_report(arr, ls, rep.h1, opt.seed);
    if (sp.bound_applicable) tr.record(Check::SharpBound, sp.bound_ok, "h1 = " + h1s);
    else tr.skip(Check::SharpBound);
    if (sp.vanishing_applicable) tr.record(Check::SharpVanishing, sp.vanishing_ok, "h1 = " + h1s);
    else tr.skip(Check::SharpVanishing);
    if (sp.adapted_frame_found) tr.record(Check::SharpFrame, sp.neighbor_property_ok, "first sharp pair");
    else if (sp.bound_applicable) tr.skip(Check::SharpFrame);

    if (opt.run_beta && !pencil) {
        for (std::size_t l = 0; l < arr.size(); ++l) {
            try {
                const auto cert = beta_certificate(arr, ls, static_cast<int>(l), opt.seed);
                std::string what = "line " + std::to_string(l) + ": #A'=" + std::to_string(cert.a_prime) +
                                   " #N=" + std::to_string(cert.neighbors) + " #R0=" + std::to_string(cert.resonant_on_l0) +
                                   " rank=" + std::to_string(cert.family_rank) + " in K=" + (cert.all_in_k() ? "yes" : "no");
                tr.record(Check::Beta, cert.ok() && cert.h1 == rep.h1, what);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NormalizationFailed) throw;
                tr.skip(Check::Beta);
            }
        }
    }

    // Invariance under projective changes of frame and line order.
    for (int s = 1; s <= opt.invariance_seeds; ++s) {
        const std::uint64_t sub = derive_seed(opt.seed, static_cast<std::uint64_t>(s));
        const Arrangement moved = arr.transformed(random_projective_transform(sub));
        HomologyOptions o2;
        o2.seed = sub;
        o2.check_float = false;
        const std::size_t other = h1(moved, ls, o2).h1;
        tr.record(Check::SeedInvariance, other == rep.h1,
                  "h1 " + h1s + " but " + std::to_string(other) + " under frame seed " + std::to_string(sub));
    }
    {
        std::mt19937_64 rng(derive_seed(opt.seed, 1000));
        std::vector<int> perm(arr.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Line> lines;
        for (int i : perm) lines.push_back(arr.line(i));
        HomologyOptions o2;
        o2.seed = opt.seed;
        o2.check_float = false;
        const std::size_t other = h1(Arrangement(lines), ls.permuted(perm), o2).h1;
        tr.record(Check::PermutationInvariance, other == rep.h1,
                  "h1 " + h1s + " but " + std::to_string(other) + " after permuting lines");
    }
    return tr;
}

std::optional<Instance> generate_instance(const FuzzConfig& cfg, int index) {
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(index)));
    const int n = cfg.lines > 0 ? cfg.lines : uniform(rng, cfg.min_lines, cfg.max_lines);
    const int d = cfg.order > 0 ? cfg.order : uniform(rng, 2, 6);
    if (n < 2 || n > kMaxFuzzLines) throw Error(ErrorCode::InvalidArgument, "line count out of range");
    const int roll = uniform(rng, 0, 3);
    if (!cfg.sharp_only && cfg.structured && roll == 3) {
        auto s = random_structured_instance(rng, n, d);
        if (!s.ls) return std::nullopt;
        return Instance{s.lines, *s.ls, Family::Structured, false};
    }
    const bool sharp = cfg.sharp_only || roll == 0;
    Instance inst;
    inst.family = sharp ? Family::SharpPair : Family::General;
    inst.sharp_family = sharp;
    // Small grids are dense in triple points; large ones need more lines to fill.
    const int grid = n <= 6 ? uniform(rng, 3, 5) : uniform(rng, 4, 5);
    inst.lines = sharp ? random_sharp_pair_lines(rng, n, grid).first : random_grid_lines(rng, n, grid);
    const Arrangement arr(inst.lines);
    auto ls = random_local_system(rng, arr, d, sharp && cfg.sharp_only ? 0.5 : 0.25);
    if (!ls) return std::nullopt;
    inst.ls = *ls;
    return inst;
}

FuzzSummary run_fuzz(const FuzzConfig& cfg) {
    const int trials = std::max(cfg.trials, 0);
    std::vector<std::optional<TrialResult>> results(static_cast<std::size_t>(trials));
    std::vector<std::optional<Instance>> instances(static_cast<std::size_t>(trials));
    std::vector<std::string> errors(static_cast<std::size_t>(trials));

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int i = next++; i < trials; i = next++) {
            const auto idx = static_cast<std::size_t>(i);
            try {
                instances[idx] = generate_instance(cfg, i);
                if (!instances[idx]) continue;
                TrialOptions topt = cfg.trial;
                topt.seed = derive_seed(cfg.seed ^ 0x5eedULL, static_cast<std::uint64_t>(i));
                results[idx] = run_trial(*instances[idx], topt);
            } catch (const std::exception& e) {
                errors[idx] = e.what();
            }
        }
    };
    int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, std::max(trials, 1));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    FuzzSummary s;
    s.trials = trials;
    for (int i = 0; i < trials; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        std::vector<std::string> bad;
        if (!errors[idx].empty()) bad.push_back("exception: " + errors[idx]);
        if (results[idx]) {
            ++s.generated;
            if (results[idx]->h1 > 0) ++s.nontrivial_h1;
            for (std::size_t c = 0; c < kCheckCount; ++c) {
                s.tally[c].checked += results[idx]->tally[c].checked;
                s.tally[c].failed += results[idx]->tally[c].failed;
                s.tally[c].skipped += results[idx]->tally[c].skipped;
            }
            bad.insert(bad.end(), results[idx]->violations.begin(), results[idx]->violations.end());
        }
        for (auto& b : bad) s.violations.emplace_back(i, b);
        if (!bad.empty() && !cfg.dump_dir.empty() && instances[idx]) {
            std::filesystem::create_directories(cfg.dump_dir);
            const std::string path = cfg.dump_dir + "/counterexample_" + std::to_string(i) + ".json";
            std::ofstream(path) << write_arrangement_file(instances[idx]->lines, instances[idx]->ls);
            s.dumps.push_back(path);
        }
    }
    return s;
}

Json summary_json(const FuzzSummary& s, const FuzzConfig& cfg) {
    Json j;
    j["command"] = "fuzz";
    j["config"] = {{"lines", cfg.lines},
                   {"order", cfg.order},
                   {"trials", cfg.trials},
                   {"seed", cfg.seed},
                   {"sharp_only", cfg.sharp_only},
                   {"structured", cfg.structured}};
    j["generated"] = s.generated;
    j["nontrivial_h1"] = s.nontrivial_h1;
    Json checks;
    for (std::size_t c = 0; c < kCheckCount; ++c) {
        const auto& t = s.tally[c];
        checks[std::string(check_name(static_cast<Check>(c)))] = {
            {"checked", t.checked}, {"failed", t.failed}, {"skipped", t.skipped}};
    }
    j["checks"] = checks;
    Json v = Json::array();
    for (const auto& [i, msg] : s.violations) v.push_back({{"trial", i}, {"message", msg}});
    j["violations"] = v;
    j["dumps"] = s.dumps;
    j["status"] = s.ok() ? "ok" : "violations";
    return j;
}

}  // namespace arrhom

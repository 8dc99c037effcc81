#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "arrhom/bounds.hpp"
#include "support.hpp"

using namespace arrhom;

namespace {

Arrangement a3() { return Arrangement(support::a3_lines()); }

std::vector<Line> lattice_lines(std::mt19937_64& rng, int n, int grid) {
    std::uniform_int_distribution<int> u(0, grid - 1);
    std::vector<Line> out;
    std::set<std::array<Rational, 3>> seen;
    while (static_cast<int>(out.size()) < n) {
        const int x1 = u(rng), y1 = u(rng), x2 = u(rng), y2 = u(rng);
        if (x1 == x2 && y1 == y2) continue;
        Line l = make_line(static_cast<int>(out.size()), y2 - y1, x1 - x2, static_cast<long>(x2) * y1 - static_cast<long>(x1) * y2);
        if (seen.insert(canonical_coefficients(l)).second) out.push_back(l);
    }
    return out;
}

// Admissible system on a non-pencil lattice arrangement, resonance preferred.
std::optional<std::pair<Arrangement, LocalSystem>> instance(std::mt19937_64& rng, int n, int d) {
    Arrangement arr(lattice_lines(rng, n, 4));
    if (arr.points().size() <= 1) return std::nullopt;
    std::uniform_int_distribution<long> e(1, d - 1);
    std::optional<LocalSystem> best;
    std::size_t best_res = 0;
    for (int t = 0; t < 300; ++t) {
        std::vector<long> k(static_cast<std::size_t>(n));
        for (auto& x : k) x = e(rng);
        auto ls = LocalSystem::exact(d, k);
        if (!check_admissibility(ls, arr).admissible()) continue;
        const auto r = resonant_points(arr, ls).points.size();
        if (!best || r > best_res) {
            best = ls;
            best_res = r;
        }
    }
    if (!best) return std::nullopt;
    return std::pair(arr, *best);
}

// alpha(l) for lines through resonant points on l0, from the angle columns.
std::map<int, std::vector<std::size_t>> alpha_columns(const Arrangement& frame, const LocalSystem& ls, int l0,
                                                      const AngleBasis& basis) {
    std::map<int, std::vector<std::size_t>> out;
    auto res = resonant_points(frame, ls);
    for (int p : res.on_line[static_cast<std::size_t>(l0)]) {
        const auto& lines = frame.point(p).lines;
        std::vector<std::size_t> cols;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            cols.push_back(basis.column(p, static_cast<int>(i) - 1));
            out[lines[i]] = cols;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("CDO and R0 bounds") {
    auto arr = a3();
    auto ls = LocalSystem::constant(3, 6);
    for (int l = 0; l < 6; ++l) {
        CHECK(cdo_bound(arr, ls, l) == 2);
        CHECK(r0_bound(arr, ls, l) == 1);
        CHECK(cdo_bound(arr, LocalSystem::constant(2, 6), l) == 0);
        CHECK(r0_bound(arr, LocalSystem::constant(2, 6), l) == 0);
    }
    auto lb = line_bounds(arr, ls);
    REQUIRE(lb.size() == 6);
    CHECK(lb[3].resonant_on_line == 2);
    CHECK(lb[3].r0 == 1);

    // A resonant quadruple point and two extra lines.
    Arrangement quad({make_affine_line(0, 0, 0), make_affine_line(1, 1, 0), make_affine_line(2, 2, 0),
                      make_affine_line(3, -1, 0), make_affine_line(4, 5, 1), make_affine_line(5, -3, 2)});
    auto qls = LocalSystem::exact(4, {1, 1, 1, 1, 1, 3});
    CHECK(cdo_bound(quad, qls, 0) == 2);
    CHECK(r0_bound(quad, qls, 0) == 0);

    // Pencil.
    Arrangement pencil({make_affine_line(0, 0, 0), make_affine_line(1, 1, 0), make_affine_line(2, 2, 0)});
    try {
        (void)r0_bound(pencil, LocalSystem::constant(3, 3), 0);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PencilNotCovered);
    }
    CHECK_FALSE(line_bounds(pencil, LocalSystem::constant(3, 3))[0].r0.has_value());
}

TEST_CASE("a line with three resonant points") {
    std::mt19937_64 rng(41);
    bool found = false;
    for (int t = 0; t < 400 && !found; ++t) {
        auto inst = instance(rng, 7 + t % 2, 2 + t % 5);
        if (!inst) continue;
        const auto& [arr, ls] = *inst;
        auto res = resonant_points(arr, ls);
        for (std::size_t l = 0; l < arr.size(); ++l)
            if (res.on_line[l].size() == 3) {
                CHECK(r0_bound(arr, ls, static_cast<int>(l)) == 2);
                found = true;
            }
    }
    CHECK(found);
}

TEST_CASE("beta certificate on A3") {
    auto arr = a3();
    auto ls = LocalSystem::constant(3, 6);
    for (int l0 = 0; l0 < 6; ++l0) {
        auto cert = beta_certificate(arr, ls, l0, 3);
        CHECK(cert.resonant_on_l0 == 2);
        CHECK(cert.a_prime == 4);
        CHECK(cert.neighbors == 3);
        CHECK(cert.family_rank == 3);
        CHECK(cert.h1 == 1);
        CHECK(cert.ok());
        CHECK(satisfies_profile(cert.frame, NormalizationProfile::line_adapted(l0)));
    }
}

TEST_CASE("beta vectors follow their formulas") {
    std::mt19937_64 rng(5);
    int resonant_seen = 0, double_seen = 0;
    std::vector<std::pair<Arrangement, LocalSystem>> cases{{a3(), LocalSystem::constant(3, 6)}};
    for (int t = 0; t < 200 && cases.size() < 40; ++t) {
        // Constant systems make the resonant formula a pure power sum.
        const int n = 4 + t % 5;
        for (int d = 2; d <= 6; ++d)
            if (n % d == 0) {
                Arrangement arr(lattice_lines(rng, n, 3));
                if (arr.points().size() > 1) cases.emplace_back(arr, LocalSystem::constant(d, static_cast<std::size_t>(n)));
                break;
            }
    }
    for (const auto& [arr, ls] : cases) {
        const int d = ls.order();
        for (int l0 = 0; l0 < static_cast<int>(arr.size()); ++l0) {
            auto cert = beta_certificate(arr, ls, l0, 7);
            auto rm = relation_matrix(cert.frame, ls);
            auto alpha = alpha_columns(cert.frame, ls, l0, rm.basis);
            for (const auto& e : cert.entries) {
                std::map<std::size_t, CycloNumber> expect;
                auto add = [&](int line, const CycloNumber& c) {
                    auto it = alpha.find(line);
                    if (it == alpha.end()) return;
                    for (auto col : it->second) {
                        auto [pos, fresh] = expect.emplace(col, CycloNumber::zero(d));
                        pos->second += c;
                    }
                };
                if (e.resonant) {
                    // (zeta - 1) / zeta^i on the i-th line.
                    const auto z = CycloNumber::zeta_power(d, 1);
                    for (std::size_t i = 0; i < e.lines.size(); ++i)
                        add(e.lines[i], (z - CycloNumber::one(d)) * CycloNumber::zeta_power(d, -static_cast<long>(i) - 1));
                    ++resonant_seen;
                } else if (e.lines.size() == 2) {
                    add(e.lines[0], CycloNumber::one(d));
                    add(e.lines[1], -CycloNumber::one(d));
                    ++double_seen;
                } else {
                    continue;
                }
                std::map<std::size_t, CycloNumber> got;
                for (auto& [c, v] : e.beta.entries) got.emplace(c, v.exact());
                for (auto it = expect.begin(); it != expect.end();) it = it->second.is_zero() ? expect.erase(it) : std::next(it);
                CHECK(got == expect);
            }
            CHECK(cert.ok());
        }
    }
    CHECK(resonant_seen > 0);
    CHECK(double_seen > 0);
}

TEST_CASE("bounds on random instances") {
    std::mt19937_64 rng(77);
    int checked = 0;
    for (int t = 0; t < 120; ++t) {
        auto inst = instance(rng, 3 + t % 6, 2 + t % 5);
        if (!inst) continue;
        const auto& [arr, ls] = *inst;
        const auto h = h1(arr, ls).h1;
        for (int l0 = 0; l0 < static_cast<int>(arr.size()); ++l0) {
            CHECK(h <= cdo_bound(arr, ls, l0));
            CHECK(h <= r0_bound(arr, ls, l0));
            auto cert = beta_certificate(arr, ls, l0, rng());
            CHECK(cert.h1 == h);
            CHECK(cert.ok());
        }
        ++checked;
    }
    CHECK(checked > 60);
}

TEST_CASE("sharp pair report") {
    Arrangement tri({make_line(0, 1, -1, 0), make_line(1, 1, 1, -2), make_line(2, 0, 1, 1)});
    auto rep = sharp_pair_report(tri, LocalSystem::constant(3, 3), 0);
    CHECK(rep.pairs.size() == 3);
    CHECK(rep.bound_applicable);
    CHECK(rep.ok());
    CHECK(rep.adapted_frame_found);
    CHECK_FALSE(rep.vanishing_applicable);

    auto bad = sharp_pair_report(tri, LocalSystem::constant(3, 3), 2);
    CHECK_FALSE(bad.bound_ok);

    // Pencils have only sharp pairs, yet h1 = n - 2; no claim is made there.
    std::vector<Line> lines;
    for (int i = 0; i < 5; ++i) lines.push_back(make_affine_line(i, Rational(i), 0));
    Arrangement pencil(lines);
    auto pr = sharp_pair_report(pencil, LocalSystem::constant(5, 5), 3);
    CHECK(pr.pencil);
    CHECK(pr.pairs.size() == 10);
    CHECK_FALSE(pr.bound_applicable);
    CHECK(pr.ok());

    Arrangement sq({make_line(0, 1, 0, 0), make_line(1, 1, 0, -1), make_line(2, 0, 1, 0), make_line(3, 0, 1, -1)});
    auto v = sharp_pair_report(sq, LocalSystem::constant(2, 4), 0);
    CHECK(v.vanishing_applicable);
    CHECK(v.vanishing_ok);
}

TEST_CASE("effective order") {
    CHECK(constant_effective_order(LocalSystem::constant(6, 6, 1)) == 6);
    CHECK(constant_effective_order(LocalSystem::constant(6, 6, 2)) == 3);
    CHECK(constant_effective_order(LocalSystem::constant(4, 4, 2)) == 2);
    CHECK_FALSE(constant_effective_order(LocalSystem::exact(3, {1, 2})).has_value());
}

#include "arrhom/report.hpp"

#include <algorithm>

#include "arrhom/bounds.hpp"
#include "arrhom/fox_oracle.hpp"
#include "arrhom/homology.hpp"

namespace arrhom {

namespace {

constexpr const char* kNotApplicable = "not applicable";

LocalSystem working_system(const LocalSystem& ls, const ReportOptions& opt) {
    return opt.use_float ? ls.as_float() : ls;
}

Json line_json(const Line& l) {
    return Json::array({rational_json(l.a), rational_json(l.b), rational_json(l.c)});
}

Json system_json(const LocalSystem& ls) {
    Json j;
    j["mode"] = ls.is_exact() ? "exact" : "float";
    if (ls.is_exact()) {
        j["order"] = ls.order();
        j["exponents"] = ls.exponents();
    }
    return j;
}

Json normalization_json(const Arrangement& normalized, const NormalizationRecord& rec) {
    Json j;
    j["profile"] = rec.profile.name();
    j["seed"] = rec.seed;
    j["attempts"] = rec.attempts;
    j["transform"] = transform_json(rec.transform);
    j["line_at_infinity"] = Json::array({rational_json(rec.line_at_infinity[0]),
                                         rational_json(rec.line_at_infinity[1]),
                                         rational_json(rec.line_at_infinity[2])});
    Json lines = Json::array();
    for (const auto& l : normalized.lines()) lines.push_back(line_json(l));
    j["lines"] = lines;
    return j;
}

Json census_json(const Arrangement& a, const ResonantSet& res) {
    Json pts = Json::array();
    for (const auto& p : a.points()) {
        Json q;
        q["id"] = p.id;
        q["x"] = rational_json(p.coords.x);
        q["y"] = rational_json(p.coords.y);
        q["lines"] = p.lines;
        q["multiplicity"] = p.multiplicity();
        q["resonant"] = res.contains(p.id);
        pts.push_back(q);
    }
    Json j;
    j["points"] = pts;
    j["resonant"] = res.points;
    return j;
}

Json bounds_json(const Arrangement& a, const LocalSystem& ls, std::size_t h1,
                 std::vector<std::string>& failures) {
    Json lines = Json::array();
    std::optional<std::size_t> min_cdo, min_r0;
    for (const auto& b : line_bounds(a, ls)) {
        Json e;
        e["line"] = b.line;
        e["resonant_points"] = b.resonant_on_line;
        e["cdo"] = b.cdo;
        if (b.r0) e["r0"] = *b.r0;
        else e["r0"] = kNotApplicable;
        lines.push_back(e);
        min_cdo = std::min(min_cdo.value_or(b.cdo), b.cdo);
        if (b.r0) min_r0 = std::min(min_r0.value_or(*b.r0), *b.r0);
        if (h1 > b.cdo) failures.push_back("h1 exceeds the CDO bound on line " + std::to_string(b.line));
        if (b.r0 && h1 > *b.r0)
            failures.push_back("h1 exceeds the resonant-count bound on line " + std::to_string(b.line));
    }
    Json j;
    j["lines"] = lines;
    j["min_cdo"] = min_cdo.value_or(0);
    if (min_r0) j["min_r0"] = *min_r0;
    else j["min_r0"] = kNotApplicable;
    return j;
}

Json sharp_json(const SharpPairReport& sp, std::vector<std::string>& failures) {
    Json pairs = Json::array();
    for (const auto& [a, b] : sp.pairs) pairs.push_back(Json::array({a, b}));
    Json j;
    j["pairs"] = pairs;
    j["pencil"] = sp.pencil;
    j["h1_at_most_one"] = {{"applicable", sp.bound_applicable}, {"satisfied", sp.bound_ok}};
    j["h1_vanishes"] = {{"applicable", sp.vanishing_applicable}, {"satisfied", sp.vanishing_ok}};
    if (!sp.pairs.empty() && !sp.pencil) {
        Json f;
        f["found"] = sp.adapted_frame_found;
        if (sp.adapted_frame_found) f["neighbors_on_second_line"] = sp.neighbor_property_ok;
        else f["error"] = sp.adapted_frame_error;
        j["adapted_frame"] = f;
    }
    if (!sp.bound_ok) failures.push_back("sharp pair present but h1 > 1");
    if (!sp.vanishing_ok) failures.push_back("sharp pair with even constant monodromy but h1 != 0");
    if (!sp.neighbor_property_ok) failures.push_back("sharp-pair frame neighbor property fails");
    return j;
}

}  // namespace

Json rational_json(const Rational& q) { return to_string(q); }

Json transform_json(const Mat3& m) {
    Json rows = Json::array();
    for (const auto& r : m) rows.push_back(Json::array({rational_json(r[0]), rational_json(r[1]), rational_json(r[2])}));
    return rows;
}

ReportResult h1_report(const Arrangement& arr, const LocalSystem& input_ls, const ReportOptions& opt) {
    const LocalSystem ls = working_system(input_ls, opt);
    ReportResult out;
    HomologyOptions hopt;
    hopt.seed = opt.seed;
    hopt.check_float = ls.is_exact();
    const auto rep = h1(arr, ls, hopt);
    const Arrangement& a = rep.normalized;

    Json& j = out.json;
    j["command"] = "h1";
    j["input"] = {{"lines", arr.size()}, {"local_system", system_json(ls)}};
    j["normalization"] = normalization_json(a, rep.normalization);
    Json census = census_json(a, rep.resonant);
    census["bounded_chambers"] = rep.bounded_chambers;
    census["zaslavsky_bounded"] = zaslavsky_bounded_count(a);
    census["zaslavsky_ok"] = rep.zaslavsky_ok;
    j["census"] = census;
    j["matrix"] = {{"rows", rep.num_rows}, {"cols", rep.dim_a}, {"zero_rows", rep.zero_rows}, {"rank", rep.rank}};
    j["dim_a"] = rep.dim_a;
    j["rank"] = rep.rank;
    j["h1"] = rep.h1;
    if (rep.float_rank) j["float_rank"] = *rep.float_rank;
    j["float_agrees"] = rep.float_agrees;
    j["euler_characteristic"] = rep.euler_characteristic;
    j["h2"] = rep.h2;
    if (!rep.zaslavsky_ok) out.failures.push_back("bounded chamber count differs from Zaslavsky's formula");
    if (!rep.float_agrees) out.failures.push_back("float rank differs from exact rank");
    if (rep.h2 < 0) out.failures.push_back("h2 = chi + h1 is negative");

    j["bounds"] = bounds_json(a, ls, rep.h1, out.failures);
    j["sharp_pairs"] = sharp_json(sharp_pair_report(arr, ls, rep.h1, opt.seed), out.failures);

    if (opt.run_oracle) {
        const std::size_t o = oracle_h1(arr, ls, 0, opt.seed);
        j["oracle"] = {{"decone_line", 0}, {"h1", o}, {"agrees", o == rep.h1}};
        if (o != rep.h1) out.failures.push_back("Fox-calculus oracle disagrees");
    } else {
        j["oracle"] = "skipped";
    }
    j["status"] = out.consistent() ? "ok" : "consistency_failure";
    j["failures"] = out.failures;
    return out;
}

ReportResult bounds_report(const Arrangement& arr, const LocalSystem& input_ls, const ReportOptions& opt) {
    const LocalSystem ls = working_system(input_ls, opt);
    ReportResult out;
    HomologyOptions hopt;
    hopt.seed = opt.seed;
    hopt.check_float = false;
    const auto rep = h1(arr, ls, hopt);
    Json& j = out.json;
    j["command"] = "bounds";
    j["h1"] = rep.h1;
    j["bounds"] = bounds_json(rep.normalized, ls, rep.h1, out.failures);

    Json certs = Json::array();
    if (arr.points().size() > 1) {
        for (std::size_t l = 0; l < arr.size(); ++l) {
            Json c;
            c["line"] = l;
            try {
                const auto cert = beta_certificate(arr, ls, static_cast<int>(l), opt.seed);
                c["resonant_on_line"] = cert.resonant_on_l0;
                c["a_prime"] = cert.a_prime;
                c["neighbors"] = cert.neighbors;
                c["family_rank"] = cert.family_rank;
                c["all_in_k"] = cert.all_in_k();
                c["independent"] = cert.independent();
                c["count_ok"] = cert.count_ok();
                c["dimension_bound"] = cert.a_prime - cert.neighbors;
                c["ok"] = cert.ok();
                if (!cert.ok()) out.failures.push_back("neighbor certificate fails on line " + std::to_string(l));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NormalizationFailed) throw;
                c["error"] = e.what();
            }
            certs.push_back(c);
        }
        j["certificates"] = certs;
    } else {
        j["certificates"] = kNotApplicable;
    }
    j["status"] = out.consistent() ? "ok" : "consistency_failure";
    j["failures"] = out.failures;
    return out;
}

ReportResult sharp_pairs_report(const Arrangement& arr, const LocalSystem& input_ls, const ReportOptions& opt) {
    const LocalSystem ls = working_system(input_ls, opt);
    ReportResult out;
    HomologyOptions hopt;
    hopt.seed = opt.seed;
    hopt.check_float = false;
    const auto rep = h1(arr, ls, hopt);
    out.json["command"] = "sharp-pairs";
    out.json["h1"] = rep.h1;
    out.json["sharp_pairs"] = sharp_json(sharp_pair_report(arr, ls, rep.h1, opt.seed), out.failures);
    out.json["status"] = out.consistent() ? "ok" : "consistency_failure";
    out.json["failures"] = out.failures;
    return out;
}

ReportResult oracle_report(const Arrangement& arr, const LocalSystem& input_ls, const ReportOptions& opt) {
    const LocalSystem ls = working_system(input_ls, opt);
    ReportResult out;
    HomologyOptions hopt;
    hopt.seed = opt.seed;
    hopt.check_float = false;
    const auto rep = h1(arr, ls, hopt);
    Json values = Json::array();
    for (std::size_t l = 0; l < arr.size(); ++l) {
        const auto dec = decone(arr, ls, static_cast<int>(l), opt.seed);
        const auto wd = wiring_diagram(dec);
        const auto gp = randell_presentation(wd, static_cast<int>(dec.lines.size()));
        const std::size_t o = oracle_h1(arr, ls, static_cast<int>(l), opt.seed);
        values.push_back({{"decone_line", l},
                          {"generators", gp.generators},
                          {"relators", gp.relators.size()},
                          {"h1", o}});
        if (o != rep.h1) out.failures.push_back("oracle disagrees when deconing line " + std::to_string(l));
    }
    out.json["command"] = "oracle";
    out.json["h1"] = rep.h1;
    out.json["oracle"] = values;
    out.json["status"] = out.consistent() ? "ok" : "consistency_failure";
    out.json["failures"] = out.failures;
    return out;
}

Json validate_report(const Arrangement& arr, const LocalSystem& ls) {
    const auto adm = check_admissibility(ls, arr);
    Json j;
    j["command"] = "validate";
    j["lines"] = arr.size();
    j["points"] = arr.points().size();
    j["local_system"] = system_json(ls);
    j["admissible"] = adm.admissible();
    j["product_one"] = adm.product_one;
    j["trivial_lines"] = adm.trivial_lines;
    j["message"] = adm.message();
    if (adm.admissible()) j["resonant"] = resonant_points(arr, ls).points;
    return j;
}

}  // namespace arrhom

#include "arrhom/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace arrhom {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::ParseError, where + ": " + what);
}

Rational read_rational(const json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const Error& e) {
            fail(where, e.what());
        }
    }
    if (v.is_number_integer()) return Rational(v.dump());
    if (v.is_number_float()) {
        const double x = v.get<double>();
        if (!std::isfinite(x)) fail(where, "non-finite number");
        try {
            return parse_rational(v.dump());
        } catch (const Error& e) {
            fail(where, e.what());
        }
    }
    fail(where, "expected a rational number");
}

long read_integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<long>();
}

}  // namespace

ArrangementFile parse_arrangement_file(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail("byte " + std::to_string(e.byte), e.what());
    }
    if (!doc.is_object()) fail("document", "expected an object");
    if (!doc.contains("lines") || !doc["lines"].is_array()) fail("lines", "missing array");

    ArrangementFile out;
    const auto& lines = doc["lines"];
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string where = "lines[" + std::to_string(i) + "]";
        if (!lines[i].is_array() || lines[i].size() != 3) fail(where, "expected [a, b, c]");
        out.lines.push_back(Line{static_cast<int>(i), read_rational(lines[i][0], where + "[0]"),
                                 read_rational(lines[i][1], where + "[1]"),
                                 read_rational(lines[i][2], where + "[2]")});
    }

    if (!doc.contains("local_system") || !doc["local_system"].is_object())
        fail("local_system", "missing object");
    const auto& ls = doc["local_system"];
    if (ls.contains("exponents")) {
        if (!ls.contains("order")) fail("local_system.order", "missing");
        const long d = read_integer(ls["order"], "local_system.order");
        if (d < 1) fail("local_system.order", "must be positive");
        if (!ls["exponents"].is_array()) fail("local_system.exponents", "expected an array");
        std::vector<long> ks;
        for (std::size_t i = 0; i < ls["exponents"].size(); ++i)
            ks.push_back(read_integer(ls["exponents"][i], "local_system.exponents[" + std::to_string(i) + "]"));
        out.local_system = LocalSystem::exact(static_cast<int>(d), std::move(ks));
    } else if (ls.contains("values")) {
        if (!ls["values"].is_array()) fail("local_system.values", "expected an array");
        std::vector<std::complex<double>> vs;
        for (std::size_t i = 0; i < ls["values"].size(); ++i) {
            const auto& v = ls["values"][i];
            const std::string where = "local_system.values[" + std::to_string(i) + "]";
            if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
                fail(where, "expected [re, im]");
            vs.emplace_back(v[0].get<double>(), v[1].get<double>());
        }
        try {
            out.local_system = LocalSystem::floating(std::move(vs));
        } catch (const Error& e) {
            fail("local_system.values", e.what());
        }
    } else {
        fail("local_system", "needs \"exponents\" or \"values\"");
    }
    return out;
}

ArrangementFile load_arrangement_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_arrangement_file(ss.str());
}

std::string write_arrangement_file(const std::vector<Line>& lines, const LocalSystem& ls) {
    nlohmann::ordered_json doc;
    doc["lines"] = nlohmann::ordered_json::array();
    for (const auto& l : lines)
        doc["lines"].push_back({to_string(l.a), to_string(l.b), to_string(l.c)});
    nlohmann::ordered_json sys;
    if (ls.is_exact()) {
        sys["order"] = ls.order();
        sys["exponents"] = ls.exponents();
    } else {
        sys["values"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < ls.size(); ++i) {
            auto v = ls.monodromy(static_cast<int>(i)).as_complex();
            sys["values"].push_back({v.real(), v.imag()});
        }
    }
    doc["local_system"] = sys;
    return doc.dump(2) + "\n";
}

}  // namespace arrhom

#ifndef ARRHOM_IO_HPP
#define ARRHOM_IO_HPP

#include <string>
#include <vector>

#include "arrhom/geometry.hpp"
#include "arrhom/local_system.hpp"

namespace arrhom {

/// Input document:
///   { "lines": [[a, b, c], ...],
///     "local_system": {"order": d, "exponents": [k1, ...]} | {"values": [[re, im], ...]} }
/// Coefficients are integers or strings "p", "p/q", "1.25". JSON floats are
/// read through their shortest decimal form.
struct ArrangementFile {
    std::vector<Line> lines;
    LocalSystem local_system;
};

/// Throws ParseError naming the offending position or field.
ArrangementFile parse_arrangement_file(const std::string& text);
/// Throws ParseError (including for unreadable files).
ArrangementFile load_arrangement_file(const std::string& path);

std::string write_arrangement_file(const std::vector<Line>& lines, const LocalSystem& ls);

}  // namespace arrhom

#endif

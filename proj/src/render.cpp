#include "arrhom/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace arrhom {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

std::string render_svg(const Arrangement& input, const LocalSystem& ls, std::uint64_t seed) {
    const auto [arr, record] = normalize(input, NormalizationProfile::basic(), seed);
    (void)record;
    const bool admissible = check_admissibility(ls, arr).admissible();
    const ResonantSet res = admissible ? resonant_points(arr, ls) : ResonantSet{};

    double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
    bool first = true;
    for (const auto& p : arr.points()) {
        const double x = p.coords.x.get_d(), y = p.coords.y.get_d();
        if (first) {
            xmin = xmax = x;
            ymin = ymax = y;
            first = false;
        }
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    const double pad = 0.25 * std::max({xmax - xmin, ymax - ymin, 1.0});
    xmin -= pad;
    xmax += pad;
    ymin -= pad;
    ymax += pad;

    const double size = 600.0;
    const double scale = size / std::max(xmax - xmin, ymax - ymin);
    auto sx = [&](double x) { return (x - xmin) * scale; };
    auto sy = [&](double y) { return size - (y - ymin) * scale; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size + 40
       << "\" viewBox=\"0 0 " << size << ' ' << size + 40 << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    os << "<g class=\"chambers\" fill=\"#dde8f4\" stroke=\"none\">\n";
    for (const auto& ch : chambers(arr)) {
        if (!ch.bounded) continue;
        os << "<polygon points=\"";
        for (std::size_t i = 0; i < ch.vertices.size(); ++i) {
            const auto& c = arr.point(ch.vertices[i]).coords;
            os << (i ? " " : "") << fmt(sx(c.x.get_d())) << ',' << fmt(sy(c.y.get_d()));
        }
        os << "\"/>\n";
    }
    os << "</g>\n";

    os << "<g class=\"lines\" stroke=\"black\" stroke-width=\"1.5\">\n";
    for (const auto& l : arr.lines()) {
        const double s = l.slope().get_d(), b = l.intercept().get_d();
        // Clip y = s x + b to the box.
        double x0 = xmin, x1 = xmax;
        if (s != 0) {
            double xa = (ymin - b) / s, xb = (ymax - b) / s;
            if (xa > xb) std::swap(xa, xb);
            x0 = std::max(x0, xa);
            x1 = std::min(x1, xb);
        }
        os << "<line data-line=\"" << l.id << "\" x1=\"" << fmt(sx(x0)) << "\" y1=\"" << fmt(sy(s * x0 + b))
           << "\" x2=\"" << fmt(sx(x1)) << "\" y2=\"" << fmt(sy(s * x1 + b)) << "\"/>\n";
    }
    os << "</g>\n";

    os << "<g class=\"points\">\n";
    for (const auto& p : arr.points()) {
        const bool r = res.contains(p.id);
        os << "<circle data-point=\"" << p.id << "\"" << (r ? " class=\"resonant\" fill=\"#c0392b\"" : " fill=\"black\"")
           << " cx=\"" << fmt(sx(p.coords.x.get_d())) << "\" cy=\"" << fmt(sy(p.coords.y.get_d()))
           << "\" r=\"" << (r ? 6 : 3.5) << "\"/>\n";
    }
    os << "</g>\n";

    os << "<text x=\"8\" y=\"" << size + 26 << "\" font-family=\"monospace\" font-size=\"13\">sharp pairs:";
    const auto pairs = sharp_pairs(arr);
    if (pairs.empty()) os << " none";
    for (const auto& [a, b] : pairs) os << " (" << a << ',' << b << ')';
    os << "</text>\n</svg>\n";
    return os.str();
}

}  // namespace arrhom

#include "robinfem/errors.hpp"
#include "robinfem/study.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <system_error>

namespace robinfem {

namespace {

std::string csv_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    return fmt::format("{:.10g}", v);
}

std::string csv_optional(const std::optional<double>& v) {
    return v ? csv_number(*v) : std::string{};
}

/// Maps log10 data coordinates onto the plot area.
struct Frame {
    double x0, x1, y0, y1; // decades
    double left = 80.0, right = 600.0, top = 50.0, bottom = 420.0;

    double px(double h) const { return left + (std::log10(h) - x0) / (x1 - x0) * (right - left); }
    double py(double e) const { return bottom - (std::log10(e) - y0) / (y1 - y0) * (bottom - top); }
};

double plottable(double e) { return std::max(e, 1e-16); }

std::string polyline(const Frame& f, std::span<const double> h, std::span<const double> e, const char* colour,
                     const char* dash) {
    std::string pts;
    for (std::size_t i = 0; i < h.size(); ++i) {
        pts += fmt::format("{}{:.3f},{:.3f}", i ? " " : "", f.px(h[i]), f.py(plottable(e[i])));
    }
    return fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="2"{} points="{}"/>)"
                       "\n",
                       colour, dash, pts);
}

} // namespace

std::string format_csv(std::span<const ErrorReport> reports) {
    std::string out = "level,h_max,dofs,err_energy,err_L2,eoc_energy,eoc_L2\n";
    for (const ErrorReport& r : reports) {
        out += fmt::format("{},{},{},{},{},{},{}\n", r.level, csv_number(r.h_max), r.dof_count,
                           csv_number(r.err_energy), csv_number(r.err_l2), csv_optional(r.eoc_energy),
                           csv_optional(r.eoc_l2));
    }
    return out;
}

std::string render_svg(std::span<const ErrorReport> reports, const std::string& title) {
    if (reports.empty()) {
        throw InvalidParameter("nothing to plot");
    }
    std::vector<double> h, ee, el;
    for (const ErrorReport& r : reports) {
        h.push_back(r.h_max);
        ee.push_back(r.err_energy);
        el.push_back(r.err_l2);
    }
    // Reference slopes start half a step below the first data point of each curve.
    const double h0 = h.front();
    const double h1 = h.back();
    const double r1a = 0.5 * plottable(ee.front());
    const double r1b = r1a * (h1 / h0);
    const double r2a = 0.5 * plottable(el.front());
    const double r2b = r2a * (h1 / h0) * (h1 / h0);

    double lo = std::log10(std::min({r1b, r2b, plottable(*std::min_element(ee.begin(), ee.end())),
                                     plottable(*std::min_element(el.begin(), el.end()))}));
    double hi = std::log10(std::max({r1a, r2a, plottable(*std::max_element(ee.begin(), ee.end())),
                                     plottable(*std::max_element(el.begin(), el.end()))}));
    Frame f{std::floor(std::log10(h1)), std::ceil(std::log10(h0)), std::floor(lo), std::ceil(hi)};
    if (f.x1 <= f.x0) {
        f.x1 = f.x0 + 1.0;
    }
    if (f.y1 <= f.y0) {
        f.y1 = f.y0 + 1.0;
    }

    std::string s;
    s += R"(<svg xmlns="http://www.w3.org/2000/svg" width="680" height="480" viewBox="0 0 680 480">)"
         "\n";
    s += R"(<rect x="0" y="0" width="680" height="480" fill="white"/>)"
         "\n";
    s += fmt::format(R"(<text x="340" y="28" text-anchor="middle" font-family="sans-serif" font-size="15">{}</text>)"
                     "\n",
                     title);
    s += fmt::format(R"(<path d="M{0:.3f},{2:.3f} H{1:.3f} M{0:.3f},{2:.3f} V{3:.3f}" stroke="black" fill="none"/>)"
                     "\n",
                     f.left, f.right, f.bottom, f.top);
    for (int d = static_cast<int>(f.x0); d <= static_cast<int>(f.x1); ++d) {
        const double x = f.px(std::pow(10.0, d));
        s += fmt::format(R"(<text x="{:.3f}" y="{:.3f}" text-anchor="middle" font-family="sans-serif" font-size="12">1e{}</text>)"
                         "\n",
                         x, f.bottom + 18.0, d);
    }
    for (int d = static_cast<int>(f.y0); d <= static_cast<int>(f.y1); ++d) {
        const double y = f.py(std::pow(10.0, d));
        s += fmt::format(R"(<text x="{:.3f}" y="{:.3f}" text-anchor="end" font-family="sans-serif" font-size="12">1e{}</text>)"
                         "\n",
                         f.left - 6.0, y + 4.0, d);
    }
    s += fmt::format(R"(<text x="{:.3f}" y="465" text-anchor="middle" font-family="sans-serif" font-size="13">h_max</text>)"
                     "\n",
                     0.5 * (f.left + f.right));

    s += polyline(f, h, ee, "#1f77b4", "");
    s += polyline(f, h, el, "#d62728", "");
    s += fmt::format(R"(<line x1="{:.3f}" y1="{:.3f}" x2="{:.3f}" y2="{:.3f}" stroke="gray" stroke-dasharray="6 4"/>)"
                     "\n",
                     f.px(h0), f.py(r1a), f.px(h1), f.py(r1b));
    s += fmt::format(R"(<line x1="{:.3f}" y1="{:.3f}" x2="{:.3f}" y2="{:.3f}" stroke="gray" stroke-dasharray="2 3"/>)"
                     "\n",
                     f.px(h0), f.py(r2a), f.px(h1), f.py(r2b));

    const char* labels[] = {"energy error", "L2 error", "slope 1", "slope 2"};
    const char* colours[] = {"#1f77b4", "#d62728", "gray", "gray"};
    for (int i = 0; i < 4; ++i) {
        s += fmt::format(R"(<text x="{}" y="{}" font-family="sans-serif" font-size="12" fill="{}">{}</text>)"
                         "\n",
                         f.right - 100.0, f.bottom - 70.0 + 16.0 * i, colours[i], labels[i]);
    }
    s += "</svg>\n";
    return s;
}

std::string format_solution(std::span<const double> x) {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out += fmt::format("{} {:.17g}\n", i, x[i]);
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) {
            throw IoError(fmt::format("cannot open '{}' for writing", tmp.string()));
        }
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        os.flush();
        if (!os) {
            os.close();
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError(fmt::format("failed writing '{}'", tmp.string()));
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw IoError(fmt::format("cannot move '{}' into place: {}", path.string(), ec.message()));
    }
}

} // namespace robinfem

#include "robinfem/errors.hpp"
#include "robinfem/mesh.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <string>
#include <string_view>

namespace robinfem {

namespace {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    /// Next non-comment line; false at end of input.
    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++number_;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (!line.empty() && line.front() == '#') {
                continue;
            }
            return true;
        }
        return false;
    }

    std::string require(std::string_view what) {
        std::string line;
        if (!next(line)) {
            throw FormatError(number_ + 1, fmt::format("unexpected end of file, expected {}", what));
        }
        return line;
    }

    std::size_t number() const { return number_; }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

/// Splits on whitespace and parses every token as T; token count must equal n.
template <typename T, std::size_t N>
std::array<T, N> parse_fields(std::string_view line, std::size_t lineno) {
    std::array<T, N> out{};
    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) {
            ++pos;
        }
        if (pos == line.size()) {
            break;
        }
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t') {
            ++end;
        }
        if (count == N) {
            throw FormatError(lineno, fmt::format("expected {} fields", N));
        }
        const char* first = line.data() + pos;
        const char* last = line.data() + end;
        auto [ptr, ec] = std::from_chars(first, last, out[count]);
        if (ec != std::errc() || ptr != last) {
            throw FormatError(lineno, fmt::format("cannot parse '{}'", std::string_view(first, last - first)));
        }
        ++count;
        pos = end;
    }
    if (count != N) {
        throw FormatError(lineno, fmt::format("expected {} fields, found {}", N, count));
    }
    return out;
}

std::size_t parse_count(const std::string& line, std::string_view keyword, std::size_t lineno) {
    const std::string_view view(line);
    if (view.substr(0, keyword.size()) != keyword || view.size() == keyword.size() ||
        view[keyword.size()] != ' ') {
        throw FormatError(lineno, fmt::format("expected '{} <count>'", keyword));
    }
    const auto [n] = parse_fields<long long, 1>(view.substr(keyword.size() + 1), lineno);
    if (n < 0) {
        throw FormatError(lineno, "negative count");
    }
    return static_cast<std::size_t>(n);
}

} // namespace

void write_mesh(const Mesh& mesh, const std::filesystem::path& path) {
    std::string text;
    text += "meshfmt 1\n";
    text += fmt::format("vertices {}\n", mesh.vertices.size());
    for (const Vec2& v : mesh.vertices) {
        text += fmt::format("{:.17g} {:.17g}\n", v.x, v.y);
    }
    text += fmt::format("triangles {}\n", mesh.triangles.size());
    for (const Triangle& t : mesh.triangles) {
        text += fmt::format("{} {} {}\n", t[0], t[1], t[2]);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

Mesh read_mesh(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    LineReader reader(in);

    std::string line = reader.require("'meshfmt 1'");
    if (line != "meshfmt 1") {
        throw FormatError(reader.number(), "expected 'meshfmt 1'");
    }
    const std::size_t nv = parse_count(reader.require("vertex count"), "vertices", reader.number());
    std::vector<Vec2> vertices;
    vertices.reserve(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        const auto [x, y] = parse_fields<double, 2>(reader.require("vertex"), reader.number());
        vertices.push_back({x, y});
    }
    const std::size_t nt = parse_count(reader.require("triangle count"), "triangles", reader.number());
    std::vector<Triangle> triangles;
    triangles.reserve(nt);
    for (std::size_t k = 0; k < nt; ++k) {
        const auto tri = parse_fields<int, 3>(reader.require("triangle"), reader.number());
        for (int idx : tri) {
            if (idx < 0 || static_cast<std::size_t>(idx) >= nv) {
                throw FormatError(reader.number(), fmt::format("vertex index {} out of range", idx));
            }
        }
        triangles.push_back(tri);
    }
    while (reader.next(line)) {
        if (!line.empty()) {
            throw FormatError(reader.number(), "trailing content after triangle list");
        }
    }
    if (triangles.empty()) {
        throw FormatError(reader.number(), "mesh has no triangles");
    }
    try {
        return make_mesh(std::move(vertices), std::move(triangles));
    } catch (const InvalidParameter& e) {
        throw FormatError(reader.number(), e.what());
    }
}

} // namespace robinfem

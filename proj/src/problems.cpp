#include "robinfem/problems.hpp"

#include "robinfem/errors.hpp"

#include <fmt/format.h>

#include <array>

namespace robinfem {

namespace {

template <class F>
ProblemPreset make_preset(std::string name, Domain domain, std::string regularity) {
    ProblemPreset p;
    p.name = std::move(name);
    p.domain = domain;
    p.regularity = std::move(regularity);
    p.u = [](const Vec2& x) { return F::u(x.x, x.y); };
    p.grad = [](const Vec2& x) { return F::grad(x); };
    p.laplacian = [](const Vec2& x) { return F::laplacian(x); };
    return p;
}

std::array<ProblemPreset, 6> build_registry() {
    const Domain disk = Domain::unit_disk();
    const Domain square = Domain::unit_square();

    auto sinsin_flux = make_preset<formulas::SinSin>("sinsin_flux", disk, "smooth; g = x + y");
    sinsin_flux.g = [](const Vec2& x, double) { return x.x + x.y; };

    auto linear = make_preset<formulas::Linear>("linear_patch", square, "linear; g = du/dnu / 2");
    linear.g = [](const Vec2&, double dudn) { return 0.5 * dudn; };

    auto quadratic = make_preset<formulas::Quadratic>("quadratic_patch", square, "harmonic quadratic; g = 0");

    return {
        make_preset<formulas::SinSin>("sinsin", disk, "smooth (H^4)"),
        make_preset<formulas::SqrtSingular>("sqrt_singular", disk, "H^2, not H^4; singular at (-1,0)"),
        make_preset<formulas::RadialExp>("radial_exp", disk, "smooth, radially symmetric"),
        std::move(sinsin_flux),
        std::move(linear),
        std::move(quadratic),
    };
}

} // namespace

std::span<const ProblemPreset> problem_registry() {
    static const std::array<ProblemPreset, 6> registry = build_registry();
    return registry;
}

const ProblemPreset& find_problem(std::string_view name) {
    for (const ProblemPreset& p : problem_registry()) {
        if (p.name == name) {
            return p;
        }
    }
    throw InvalidParameter(fmt::format("unknown problem '{}'", name));
}

std::string list_problems() {
    std::string out = fmt::format("{:<16} {:<12} {}\n", "name", "domain", "regularity");
    for (const ProblemPreset& p : problem_registry()) {
        out += fmt::format("{:<16} {:<12} {}\n", p.name, p.domain.name(), p.regularity);
    }
    return out;
}

ProblemData make_problem_data(const ProblemPreset& preset, double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InvalidParameter("epsilon must be positive and finite");
    }
    const Domain domain = preset.domain;
    auto dudn = [domain, grad = preset.grad](const Vec2& x) {
        return dot(grad(x), domain.normal(domain.project(x)));
    };
    auto g = [dudn, gfun = preset.g](const Vec2& x) { return gfun ? gfun(x, dudn(x)) : 0.0; };

    ProblemData data;
    data.f = [lap = preset.laplacian](const Vec2& x) { return -lap(x); };
    data.g = g;
    data.u0 = [u = preset.u, dudn, g, epsilon](const Vec2& x) { return u(x) + epsilon * (dudn(x) - g(x)); };
    data.exact = ExactSolution{preset.u, preset.grad};
    return data;
}

} // namespace robinfem

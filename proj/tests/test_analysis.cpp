#include "robinfem/analysis.hpp"
#include "robinfem/errors.hpp"
#include "robinfem/problems.hpp"
#include "robinfem/study.hpp"

#include "support.hpp"

#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>
#include <numeric>

using namespace robinfem;

namespace {

ProblemData with_exact(ScalarField u, std::function<Vec2(const Vec2&)> grad) {
    ProblemData d;
    d.f = [](const Vec2&) { return 0.0; };
    d.u0 = d.f;
    d.g = d.f;
    d.exact = ExactSolution{std::move(u), std::move(grad)};
    return d;
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

} // namespace

TEST(EnergyError, InterpolantOfPolynomialIsExact) {
    const Mesh m = generate_square_mesh(3);
    const ProblemPreset& lin = find_problem("linear_patch");
    const ProblemPreset& quad = find_problem("quadratic_patch");
    for (Method method : {Method::Nitsche, Method::SIPDG}) {
        for (int deg : {1, 2}) {
            const ProblemPreset& p = deg == 1 ? lin : quad;
            const Scheme s{method, deg};
            const DofMap dm = make_dofmap(m, s.space(), deg);
            const ProblemData d = make_problem_data(p, 1.0);
            const auto c = interpolate(m, dm, p.u);
            EXPECT_LE(energy_error(m, dm, s, d, c).energy, 1e-9);
            EXPECT_LE(l2_error(m, dm, d, c), 1e-9);
        }
    }
}

TEST(EnergyError, ZeroFunctionHasZeroNorm) {
    const Mesh m = generate_disk_mesh(3);
    const ProblemData d = with_exact([](const Vec2&) { return 0.0; }, [](const Vec2&) { return Vec2{}; });
    const DofMap dm = make_dofmap(m, SpaceKind::Discontinuous, 1);
    const std::vector<double> zero(static_cast<std::size_t>(dm.num_dofs), 0.0);
    EXPECT_EQ(energy_error(m, dm, Scheme{Method::SIPDG}, d, zero).energy, 0.0);
    EXPECT_EQ(l2_error(m, dm, d, zero), 0.0);
}

TEST(EnergyError, GradientTermOfXOnSingleElementIsArea) {
    const Mesh m = make_mesh({{0.2, 0.1}, {1.4, 0.3}, {0.5, 1.3}}, {{0, 1, 2}});
    const ProblemData d = with_exact([](const Vec2& x) { return x.x; }, [](const Vec2&) { return Vec2{1.0, 0.0}; });
    const DofMap dm = make_dofmap(m, SpaceKind::Continuous, 1);
    const std::vector<double> zero(3, 0.0);
    const double eps = 1.0;
    const EnergyError e = energy_error(m, dm, Scheme{Method::Nitsche, 1, eps}, d, zero);
    EXPECT_NEAR(e.components.grad, m.area(0), 1e-14);
    // Boundary terms by hand: sum_E 1/(eps + h) int_E x^2 + h int_E (n_x)^2.
    double trace = 0.0, flux = 0.0;
    for (const Edge& edge : m.boundary_edges) {
        const Vec2 p = m.vertices[edge.vertices[0]], q = m.vertices[edge.vertices[1]];
        trace += oracle::segment_integral([](const Vec2& x) { return x.x * x.x; }, p, q) / (eps + edge.h);
        flux += edge.h * edge.h * edge.normal.x * edge.normal.x;
    }
    EXPECT_NEAR(e.components.trace, trace, 1e-14);
    EXPECT_NEAR(e.components.flux, flux, 1e-14);
    EXPECT_NEAR(e.energy, std::sqrt(m.area(0) + trace + flux), 1e-14);
}

TEST(L2Error, ConstantErrorIsScaledRootArea) {
    const Mesh m = generate_disk_mesh(4);
    const ProblemData d = with_exact([](const Vec2&) { return 1.0; }, [](const Vec2&) { return Vec2{}; });
    const DofMap dm = make_dofmap(m, SpaceKind::Continuous, 1);
    const std::vector<double> zero(static_cast<std::size_t>(dm.num_dofs), 0.0);
    const double sides = 6.0 * 4.0;
    const double polygon = 0.5 * sides * std::sin(2.0 * M_PI / sides);
    EXPECT_NEAR(l2_error(m, dm, d, zero), std::sqrt(polygon), 1e-13);
    const std::vector<double> shifted(zero.size(), -2.0);
    EXPECT_NEAR(l2_error(m, dm, d, shifted), 3.0 * std::sqrt(polygon), 1e-13);
}

TEST(EnergyError, MissingExactSolution) {
    const Mesh m = generate_square_mesh(1);
    ProblemData d;
    const DofMap dm = make_dofmap(m, SpaceKind::Continuous, 1);
    const std::vector<double> zero(4, 0.0);
    EXPECT_THROW(energy_error(m, dm, Scheme{}, d, zero), MissingExactSolution);
    EXPECT_THROW(l2_error(m, dm, d, zero), MissingExactSolution);
}

TEST(EnergyError, ContributionsSumToTotalAndNormsAreOrdered) {
    const ProblemPreset& p = find_problem("sinsin");
    const Mesh m = generate_disk_mesh(6);
    for (Method method : {Method::Nitsche, Method::SIPDG}) {
        const Scheme s{method, 1};
        const LevelResult r = solve_level(p, m, s);
        const ProblemData d = make_problem_data(p, 1.0);
        const DofMap dm = make_dofmap(m, s.space(), 1);
        const EnergyError e = energy_error(m, dm, s, d, r.solution);
        const double total = sum(e.element_sq) + sum(e.boundary_edge_sq) + sum(e.interior_edge_sq);
        EXPECT_NEAR(total, e.energy * e.energy, 1e-12 * e.energy * e.energy);
        EXPECT_GE(r.report.err_energy, r.report.err_n);
        EXPECT_GE(r.report.err_n, 0.0);
        if (method == Method::Nitsche) {
            EXPECT_EQ(r.report.jump_seminorm, 0.0);
            EXPECT_TRUE(e.interior_edge_sq.empty());
        } else {
            EXPECT_GT(r.report.jump_seminorm, 0.0);
        }
    }
}

TEST(EnergyError, DgSolutionInNitscheNormEqualsNComponent) {
    const ProblemPreset& p = find_problem("sinsin");
    const Mesh m = generate_disk_mesh(6);
    const Scheme dg{Method::SIPDG, 1};
    const LevelResult r = solve_level(p, m, dg);
    const DofMap dm = make_dofmap(m, SpaceKind::Discontinuous, 1);
    const EnergyError as_dg = energy_error(m, dm, dg, make_problem_data(p, 1.0), r.solution);
    Scheme as_n = dg;
    as_n.method = Method::Nitsche;
    const EnergyError n = energy_error(m, dm, as_n, make_problem_data(p, 1.0), r.solution);
    EXPECT_NEAR(n.components.norm_n(), as_dg.components.norm_n(), 1e-15);
    EXPECT_NEAR(n.components.norm_n(), r.report.err_n, 1e-15);
}

TEST(EnergyError, SerialAndParallelAgree) {
    const ProblemPreset& p = find_problem("radial_exp");
    const Mesh m = generate_disk_mesh(10);
    const Scheme s{Method::SIPDG, 2};
    const LevelResult r = solve_level(p, m, s);
    const DofMap dm = make_dofmap(m, s.space(), 2);
    const ProblemData d = make_problem_data(p, 1.0);
    omp_set_num_threads(4);
    const EnergyError a = energy_error(m, dm, s, d, r.solution, {}, Execution::Serial);
    const EnergyError b = energy_error(m, dm, s, d, r.solution, {}, Execution::Parallel);
    EXPECT_EQ(a.energy, b.energy);
    EXPECT_EQ(l2_error(m, dm, d, r.solution, {}, Execution::Serial),
              l2_error(m, dm, d, r.solution, {}, Execution::Parallel));
}

TEST(NormEquivalence, RatioStaysBoundedAcrossLevels) {
    std::vector<double> ratios;
    for (int level = 0; level < 4; ++level) {
        const Mesh m = generate_disk_mesh(refinement_size(level), level);
        const DofMap dm = make_dofmap(m, SpaceKind::Continuous, 1);
        const auto c = interpolate(m, dm, [](const Vec2& x) { return std::sin(3.0 * x.x) + x.y * x.y; });
        const EnergyError e = fe_norm(m, dm, Scheme{}, c);
        ratios.push_back(e.components.norm_nh() / e.components.norm_n());
    }
    for (double r : ratios) {
        EXPECT_GE(r, 1.0);
        EXPECT_LE(r, 2.0);
    }
}

TEST(Eoc, Examples) {
    const std::vector<double> h{0.4, 0.2, 0.1};
    const auto a = eoc(h, std::vector<double>{0.4, 0.2, 0.1});
    ASSERT_EQ(a.size(), 2u);
    EXPECT_NEAR(a[0], 1.0, 1e-14);
    EXPECT_NEAR(a[1], 1.0, 1e-14);
    const auto b = eoc(std::vector<double>{0.4, 0.2}, std::vector<double>{0.16, 0.04});
    EXPECT_NEAR(b[0], 2.0, 1e-14);
    const auto c = eoc(std::vector<double>{0.4, 0.2}, std::vector<double>{1e-16, 1e-16});
    EXPECT_TRUE(std::isnan(c[0]));
}

TEST(Eoc, DegenerateSequences) {
    EXPECT_THROW(eoc(std::vector<double>{0.4}, std::vector<double>{0.1}), DegenerateSequence);
    EXPECT_THROW(eoc(std::vector<double>{0.2, 0.4}, std::vector<double>{0.1, 0.05}), DegenerateSequence);
    EXPECT_THROW(eoc(std::vector<double>{0.4, 0.4}, std::vector<double>{0.1, 0.05}), DegenerateSequence);
    EXPECT_THROW(eoc(std::vector<double>{0.4, 0.2}, std::vector<double>{-0.1, 0.05}), DegenerateSequence);
    EXPECT_THROW(eoc(std::vector<double>{0.4, 0.2}, std::vector<double>{0.1, NAN}), DegenerateSequence);
    EXPECT_THROW(eoc(std::vector<double>{0.4, 0.2, 0.1}, std::vector<double>{0.1, 0.05}), DegenerateSequence);
}

TEST(Eoc, AttachLeavesFirstLevelEmpty) {
    std::vector<ErrorReport> r(3);
    r[0].h_max = 0.4;
    r[1].h_max = 0.2;
    r[2].h_max = 0.1;
    r[0].err_energy = 0.4;
    r[1].err_energy = 0.2;
    r[2].err_energy = 0.1;
    r[0].err_l2 = 0.16;
    r[1].err_l2 = 0.04;
    r[2].err_l2 = 0.01;
    attach_eoc(r);
    EXPECT_FALSE(r[0].eoc_energy);
    EXPECT_NEAR(*r[2].eoc_energy, 1.0, 1e-14);
    EXPECT_NEAR(*r[1].eoc_l2, 2.0, 1e-14);
}

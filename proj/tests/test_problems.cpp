#include "robinfem/errors.hpp"
#include "robinfem/problems.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace robinfem;

namespace {

template <class F>
void check_against_autodiff(const Domain& domain, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const Vec2 p = domain == Domain::unit_disk() ? oracle::random_in_disk(rng) : Vec2{unit(rng), unit(rng)};
        const oracle::Derivatives ad = oracle::differentiate<F>(p);
        const Vec2 g = F::grad(p);
        const double lap = F::laplacian(p);
        const double gs = std::max(1.0, norm(ad.grad));
        EXPECT_LE(norm(g - ad.grad), 1e-10 * gs);
        EXPECT_LE(std::abs(lap - ad.laplacian), 1e-10 * std::max(1.0, std::abs(ad.laplacian)));
    }
}

} // namespace

TEST(Formulas, SinSinMatchesAutodiff) { check_against_autodiff<formulas::SinSin>(Domain::unit_disk(), 1); }
TEST(Formulas, SqrtSingularMatchesAutodiff) { check_against_autodiff<formulas::SqrtSingular>(Domain::unit_disk(), 2); }
TEST(Formulas, RadialExpMatchesAutodiff) { check_against_autodiff<formulas::RadialExp>(Domain::unit_disk(), 3); }
TEST(Formulas, LinearMatchesAutodiff) { check_against_autodiff<formulas::Linear>(Domain::unit_square(), 4); }
TEST(Formulas, QuadraticMatchesAutodiff) { check_against_autodiff<formulas::Quadratic>(Domain::unit_square(), 5); }

TEST(Registry, ContainsStandardPresetsWithUniqueNames) {
    std::set<std::string> names;
    for (const ProblemPreset& p : problem_registry()) {
        EXPECT_TRUE(names.insert(p.name).second) << p.name;
    }
    for (const char* n : {"sinsin", "sqrt_singular", "radial_exp", "linear_patch"}) {
        EXPECT_TRUE(names.count(n)) << n;
    }
    EXPECT_EQ(list_problems(), list_problems());
    EXPECT_NE(list_problems().find("sqrt_singular"), std::string::npos);
    EXPECT_THROW(find_problem("nope"), InvalidParameter);
}

TEST(ProblemData, SourceIsMinusLaplacian) {
    std::mt19937 rng(11);
    for (const ProblemPreset& p : problem_registry()) {
        const ProblemData d = make_problem_data(p, 1.0);
        for (int i = 0; i < 1000; ++i) {
            const Vec2 x = oracle::random_in_disk(rng);
            const double f = -p.laplacian(x);
            EXPECT_LE(std::abs(d.f(x) - f), 1e-10 * std::max(1.0, std::abs(f)));
        }
    }
}

TEST(ProblemData, RobinRelationHoldsOnTheBoundary) {
    for (const ProblemPreset& p : problem_registry()) {
        for (double eps : {1e-3, 1.0, 1e3}) {
            const ProblemData d = make_problem_data(p, eps);
            for (int i = 1; i < 40; ++i) {
                const double t = i / 40.0;
                const Vec2 x = p.domain == Domain::unit_disk()
                                   ? Vec2{std::cos(2 * M_PI * t), std::sin(2 * M_PI * t)}
                                   : Vec2{t, 0.0};
                const Vec2 n = p.domain.normal(x);
                const double lhs = dot(p.grad(x), n) + p.u(x) / eps;
                const double rhs = d.u0(x) / eps + d.g(x);
                EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(lhs))) << p.name;
            }
        }
    }
}

TEST(ProblemData, NonzeroFluxPresets) {
    const ProblemData d = make_problem_data(find_problem("sinsin_flux"), 1.0);
    EXPECT_DOUBLE_EQ(d.g({0.6, 0.8}), 1.4);
    const ProblemData l = make_problem_data(find_problem("linear_patch"), 1.0);
    // Bottom side: du/dnu = -(-3) = 3.
    EXPECT_DOUBLE_EQ(l.g({0.5, 0.0}), 1.5);
    EXPECT_THROW(make_problem_data(find_problem("sinsin"), 0.0), InvalidParameter);
}

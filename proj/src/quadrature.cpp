#include "robinfem/errors.hpp"
#include "robinfem/felib.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace robinfem {

namespace {

// Orbit constants of the symmetric (Dunavant) rules, weights normalised to sum 1.
// Refined to 25 digits by Newton iteration on the moment equations.
struct S21 {
    double a;
    double w;
};
struct S111 {
    double a;
    double b;
    double w;
};

void add_s3(QuadratureRule& r, double w) {
    r.points.push_back({1.0 / 3.0, 1.0 / 3.0});
    r.weights.push_back(0.5 * w);
}

// Barycentric (a, a, 1-2a) and permutations; reference coords are the last two.
void add_s21(QuadratureRule& r, S21 o) {
    const double b = 1.0 - 2.0 * o.a;
    for (const Vec2 p : {Vec2{o.a, o.a}, Vec2{o.a, b}, Vec2{b, o.a}}) {
        r.points.push_back(p);
        r.weights.push_back(0.5 * o.w);
    }
}

void add_s111(QuadratureRule& r, S111 o) {
    const double c = 1.0 - o.a - o.b;
    for (const Vec2 p : {Vec2{o.a, o.b}, Vec2{o.b, o.a}, Vec2{o.a, c}, Vec2{c, o.a}, Vec2{o.b, c},
                         Vec2{c, o.b}}) {
        r.points.push_back(p);
        r.weights.push_back(0.5 * o.w);
    }
}

QuadratureRule make_triangle_rule(int degree) {
    QuadratureRule r;
    r.degree = degree;
    switch (degree) {
    case 1:
        add_s3(r, 1.0);
        break;
    case 2:
        add_s21(r, {1.0 / 6.0, 1.0 / 3.0});
        break;
    case 4:
        add_s21(r, {0.4459484909159648863183293, 0.223381589678011465695007});
        add_s21(r, {0.09157621350977074345957146, 0.1099517436553218676383263});
        break;
    case 6:
        add_s21(r, {0.2492867451709104212916386, 0.1167862757263793660252896});
        add_s21(r, {0.0630890144915022283403316, 0.05084490637020681692093681});
        add_s111(r, {0.05314504984481694735324967, 0.3103524510337844054166077, 0.08285107561837357519355346});
        break;
    case 8:
        add_s3(r, 0.1443156076777871682510911);
        add_s21(r, {0.4592925882927231560288155, 0.0950916342672846247938961});
        add_s21(r, {0.1705693077517602066222935, 0.1032173705347182502817916});
        add_s21(r, {0.05054722831703097545842355, 0.03245849762319808031092593});
        add_s111(r, {0.008394777409957605337213835, 0.2631128296346381134217858, 0.02723031417443499426484469});
        break;
    default:
        throw UnsupportedOrder("no triangle rule of order " + std::to_string(degree));
    }
    return r;
}

LineRule make_gauss_rule(int n) {
    LineRule r;
    r.degree = 2 * n - 1;
    r.points.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Newton iteration for the i-th root of P_n on [-1, 1].
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // Ascending order on [0, 1].
        const std::size_t slot = static_cast<std::size_t>(n - 1 - i);
        r.points[slot] = 0.5 * (1.0 + x);
        r.weights[slot] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

} // namespace

const QuadratureRule& triangle_rule(int order) {
    static const std::array<QuadratureRule, 5> rules{make_triangle_rule(1), make_triangle_rule(2),
                                                     make_triangle_rule(4), make_triangle_rule(6),
                                                     make_triangle_rule(8)};
    switch (order) {
    case 1: return rules[0];
    case 2: return rules[1];
    case 4: return rules[2];
    case 6: return rules[3];
    case 8: return rules[4];
    default:
        throw UnsupportedOrder("no triangle rule of order " + std::to_string(order));
    }
}

const LineRule& edge_rule(int order) {
    constexpr int kMaxPoints = 10;
    static const auto rules = [] {
        std::array<LineRule, kMaxPoints> r;
        for (int n = 1; n <= kMaxPoints; ++n) {
            r[static_cast<std::size_t>(n - 1)] = make_gauss_rule(n);
        }
        return r;
    }();
    if (order < 0 || order > 2 * kMaxPoints - 1) {
        throw UnsupportedOrder("no edge rule of order " + std::to_string(order));
    }
    return rules[static_cast<std::size_t>(order / 2)];
}

} // namespace robinfem

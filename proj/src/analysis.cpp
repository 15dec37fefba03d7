#include "robinfem/analysis.hpp"

#include "robinfem/errors.hpp"

#include <cmath>
#include <limits>

namespace robinfem {

namespace {

/// Local FE function on one element.
class LocalFunction {
public:
    LocalFunction(const Mesh& mesh, const DofMap& dofmap, const ReferenceBasis& basis, std::span<const double> coeffs,
                  int element)
        : map_(mesh, element), basis_(basis) {
        const auto dofs = dofmap.dofs(element);
        for (int i = 0; i < basis.size(); ++i) {
            c_[i] = coeffs[dofs[i]];
        }
    }

    const ElementMap& map() const { return map_; }

    double value_ref(const Vec2& ref) const {
        const auto phi = basis_.eval(ref);
        double v = 0.0;
        for (int i = 0; i < basis_.size(); ++i) {
            v += c_[i] * phi[i];
        }
        return v;
    }

    Vec2 grad_ref(const Vec2& ref) const {
        const auto g = basis_.eval_grad(ref);
        Vec2 s;
        for (int i = 0; i < basis_.size(); ++i) {
            s += c_[i] * g[i];
        }
        return map_.gradient(s);
    }

private:
    ElementMap map_;
    const ReferenceBasis& basis_;
    std::array<double, kMaxLocalDofs> c_{};
};

struct ExactEval {
    const ExactSolution* u = nullptr;
    double value(const Vec2& x) const { return u ? u->value(x) : 0.0; }
    Vec2 grad(const Vec2& x) const { return u ? u->gradient(x) : Vec2{}; }
};

struct EdgeSample {
    Vec2 x;
    double w;
};

std::vector<EdgeSample> edge_samples(const Mesh& mesh, const Edge& e, int order) {
    const LineRule& rule = edge_rule(order);
    const Vec2 a = mesh.vertices[e.vertices[0]];
    const Vec2 b = mesh.vertices[e.vertices[1]];
    std::vector<EdgeSample> s(rule.points.size());
    for (std::size_t q = 0; q < s.size(); ++q) {
        s[q] = {a + rule.points[q] * (b - a), rule.weights[q] * e.h};
    }
    return s;
}

EnergyError energy_impl(const Mesh& mesh, const DofMap& dofmap, const Scheme& scheme, const ExactEval& exact,
                        std::span<const double> coeffs, ErrorQuadrature quad, Execution exec) {
    const ReferenceBasis basis(dofmap.degree);
    const QuadratureRule& rule = triangle_rule(quad.triangle);
    const bool broken = dofmap.kind == SpaceKind::Discontinuous;
    const auto nt = static_cast<int>(mesh.triangles.size());
    const auto nb = static_cast<int>(mesh.boundary_edges.size());
    const auto ni = broken ? static_cast<int>(mesh.interior_edges.size()) : 0;

    std::vector<double> grad_k(static_cast<std::size_t>(nt));
    std::vector<double> trace_e(static_cast<std::size_t>(nb)), flux_e(static_cast<std::size_t>(nb));
    std::vector<double> jump_e(static_cast<std::size_t>(ni)), mean_e(static_cast<std::size_t>(ni));

#pragma omp parallel if (exec == Execution::Parallel)
    {
#pragma omp for schedule(static) nowait
        for (int k = 0; k < nt; ++k) {
            const LocalFunction uh(mesh, dofmap, basis, coeffs, k);
            const double det = std::abs(uh.map().det());
            double s = 0.0;
            for (std::size_t q = 0; q < rule.points.size(); ++q) {
                const Vec2 x = uh.map().to_physical(rule.points[q]);
                const Vec2 d = exact.grad(x) - uh.grad_ref(rule.points[q]);
                s += rule.weights[q] * det * dot(d, d);
            }
            grad_k[static_cast<std::size_t>(k)] = s;
        }
#pragma omp for schedule(static) nowait
        for (int e = 0; e < nb; ++e) {
            const Edge& edge = mesh.boundary_edges[static_cast<std::size_t>(e)];
            const LocalFunction uh(mesh, dofmap, basis, coeffs, edge.elements[0]);
            double tr = 0.0;
            double fl = 0.0;
            for (const EdgeSample& p : edge_samples(mesh, edge, quad.edge)) {
                const Vec2 ref = uh.map().to_reference(p.x);
                const double v = exact.value(p.x) - uh.value_ref(ref);
                const Vec2 g = exact.grad(p.x) - uh.grad_ref(ref);
                const EdgeTraces t = jump_average(edge, std::span(&v, 1), std::span(&g, 1));
                tr += p.w * t.mean_v * t.mean_v;
                fl += p.w * t.jump_grad * t.jump_grad;
            }
            trace_e[static_cast<std::size_t>(e)] = tr / (scheme.epsilon + edge.h);
            flux_e[static_cast<std::size_t>(e)] = edge.h * fl;
        }
#pragma omp for schedule(static)
        for (int e = 0; e < ni; ++e) {
            const Edge& edge = mesh.interior_edges[static_cast<std::size_t>(e)];
            const LocalFunction u0(mesh, dofmap, basis, coeffs, edge.elements[0]);
            const LocalFunction u1(mesh, dofmap, basis, coeffs, edge.elements[1]);
            double jp = 0.0;
            double mg = 0.0;
            for (const EdgeSample& p : edge_samples(mesh, edge, quad.edge)) {
                const double ue = exact.value(p.x);
                const Vec2 ge = exact.grad(p.x);
                const Vec2 r0 = u0.map().to_reference(p.x);
                const Vec2 r1 = u1.map().to_reference(p.x);
                const std::array<double, 2> v{ue - u0.value_ref(r0), ue - u1.value_ref(r1)};
                const std::array<Vec2, 2> g{ge - u0.grad_ref(r0), ge - u1.grad_ref(r1)};
                const EdgeTraces t = jump_average(edge, v, g);
                jp += p.w * dot(t.jump_v, t.jump_v);
                mg += p.w * dot(t.mean_grad, t.mean_grad);
            }
            jump_e[static_cast<std::size_t>(e)] = jp / edge.h;
            mean_e[static_cast<std::size_t>(e)] = edge.h * mg;
        }
    }

    EnergyError out;
    NormComponents& c = out.components;
    out.element_sq = grad_k;
    out.boundary_edge_sq.resize(static_cast<std::size_t>(nb));
    for (int k = 0; k < nt; ++k) {
        c.grad += grad_k[static_cast<std::size_t>(k)];
    }
    for (int e = 0; e < nb; ++e) {
        c.trace += trace_e[static_cast<std::size_t>(e)];
        c.flux += flux_e[static_cast<std::size_t>(e)];
        out.boundary_edge_sq[static_cast<std::size_t>(e)] = trace_e[static_cast<std::size_t>(e)] + flux_e[static_cast<std::size_t>(e)];
    }
    if (broken) {
        out.interior_edge_sq.resize(static_cast<std::size_t>(ni));
        for (int e = 0; e < ni; ++e) {
            c.jump += jump_e[static_cast<std::size_t>(e)];
            c.interior_mean_grad += mean_e[static_cast<std::size_t>(e)];
            out.interior_edge_sq[static_cast<std::size_t>(e)] = jump_e[static_cast<std::size_t>(e)] + mean_e[static_cast<std::size_t>(e)];
        }
    }
    out.energy = scheme.method == Method::SIPDG ? c.norm_dgh() : c.norm_nh();
    return out;
}

} // namespace

double NormComponents::norm_n() const { return std::sqrt(grad + trace); }
double NormComponents::norm_nh() const { return std::sqrt(grad + trace + flux); }
double NormComponents::norm_dg() const { return std::sqrt(grad + trace + jump); }
double NormComponents::norm_dgh() const { return std::sqrt(grad + trace + jump + flux + interior_mean_grad); }

EnergyError energy_error(const Mesh& mesh, const DofMap& dofmap, const Scheme& scheme, const ProblemData& data,
                         std::span<const double> solution, ErrorQuadrature quad, Execution exec) {
    if (!data.exact) {
        throw MissingExactSolution("energy error needs the exact solution");
    }
    return energy_impl(mesh, dofmap, scheme, ExactEval{&*data.exact}, solution, quad, exec);
}

EnergyError fe_norm(const Mesh& mesh, const DofMap& dofmap, const Scheme& scheme, std::span<const double> coeffs,
                    ErrorQuadrature quad, Execution exec) {
    return energy_impl(mesh, dofmap, scheme, ExactEval{}, coeffs, quad, exec);
}

double l2_error(const Mesh& mesh, const DofMap& dofmap, const ProblemData& data, std::span<const double> solution,
                ErrorQuadrature quad, Execution exec) {
    if (!data.exact) {
        throw MissingExactSolution("L2 error needs the exact solution");
    }
    const ReferenceBasis basis(dofmap.degree);
    const QuadratureRule& rule = triangle_rule(quad.triangle);
    const auto nt = static_cast<int>(mesh.triangles.size());
    std::vector<double> contrib(static_cast<std::size_t>(nt));
#pragma omp parallel for schedule(static) if (exec == Execution::Parallel)
    for (int k = 0; k < nt; ++k) {
        const LocalFunction uh(mesh, dofmap, basis, solution, k);
        const double det = std::abs(uh.map().det());
        double s = 0.0;
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const double d = data.exact->value(uh.map().to_physical(rule.points[q])) - uh.value_ref(rule.points[q]);
            s += rule.weights[q] * det * d * d;
        }
        contrib[static_cast<std::size_t>(k)] = s;
    }
    double sum = 0.0;
    for (double c : contrib) {
        sum += c;
    }
    return std::sqrt(sum);
}

std::vector<double> eoc(std::span<const double> h, std::span<const double> errors) {
    if (h.size() != errors.size() || h.size() < 2) {
        throw DegenerateSequence("EOC needs at least two (h, error) pairs");
    }
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!std::isfinite(errors[i]) || errors[i] < 0.0) {
            throw DegenerateSequence("errors must be finite and nonnegative");
        }
        if (!(h[i] > 0.0) || (i > 0 && !(h[i] < h[i - 1]))) {
            throw DegenerateSequence("mesh sizes must be positive and strictly decreasing");
        }
    }
    std::vector<double> rates(h.size() - 1);
    for (std::size_t i = 0; i + 1 < h.size(); ++i) {
        if (errors[i] <= kRoundoffFloor || errors[i + 1] <= kRoundoffFloor) {
            rates[i] = std::numeric_limits<double>::quiet_NaN();
        } else {
            rates[i] = std::log(errors[i] / errors[i + 1]) / std::log(h[i] / h[i + 1]);
        }
    }
    return rates;
}

void attach_eoc(std::vector<ErrorReport>& reports) {
    if (reports.size() < 2) {
        return;
    }
    std::vector<double> h, ee, el;
    for (const ErrorReport& r : reports) {
        h.push_back(r.h_max);
        ee.push_back(r.err_energy);
        el.push_back(r.err_l2);
    }
    const auto re = eoc(h, ee);
    const auto rl = eoc(h, el);
    for (std::size_t i = 0; i < re.size(); ++i) {
        reports[i + 1].eoc_energy = re[i];
        reports[i + 1].eoc_l2 = rl[i];
    }
}

} // namespace robinfem

#include "robinfem/errors.hpp"
#include "robinfem/felib.hpp"

namespace robinfem {

EdgeTraces jump_average(const Edge& edge, std::span<const double> values, std::span<const Vec2> gradients) {
    const std::size_t sides = edge.on_boundary() ? 1 : 2;
    if (values.size() != sides || gradients.size() != sides) {
        throw ArityMismatch(edge.on_boundary() ? "boundary edge takes exactly one trace"
                                               : "interior edge takes exactly two traces");
    }
    const Vec2 n1 = edge.normal;
    if (sides == 1) {
        return {values[0] * n1, values[0], dot(gradients[0], n1), gradients[0]};
    }
    // n2 = -n1.
    return {(values[0] - values[1]) * n1, 0.5 * (values[0] + values[1]),
            dot(gradients[0] - gradients[1], n1), 0.5 * (gradients[0] + gradients[1])};
}

} // namespace robinfem

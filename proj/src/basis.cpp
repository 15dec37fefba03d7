#include "robinfem/errors.hpp"
#include "robinfem/felib.hpp"

namespace robinfem {

namespace {

constexpr std::array<Vec2, 3> kBaryGrad{{{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}}};
constexpr std::array<std::array<int, 2>, 3> kMidpointPairs{{{0, 1}, {1, 2}, {2, 0}}};

std::array<double, 3> barycentric(const Vec2& ref) {
    return {1.0 - ref.x - ref.y, ref.x, ref.y};
}

} // namespace

ReferenceBasis::ReferenceBasis(int degree) : degree_(degree) {
    if (degree != 1 && degree != 2) {
        throw InvalidParameter("only P1 and P2 Lagrange elements are available");
    }
}

std::array<double, kMaxLocalDofs> ReferenceBasis::eval(const Vec2& ref) const {
    const auto lam = barycentric(ref);
    std::array<double, kMaxLocalDofs> out{};
    if (degree_ == 1) {
        out[0] = lam[0];
        out[1] = lam[1];
        out[2] = lam[2];
        return out;
    }
    for (int i = 0; i < 3; ++i) {
        out[i] = lam[i] * (2.0 * lam[i] - 1.0);
    }
    for (int m = 0; m < 3; ++m) {
        const auto [a, b] = kMidpointPairs[m];
        out[3 + m] = 4.0 * lam[a] * lam[b];
    }
    return out;
}

std::array<Vec2, kMaxLocalDofs> ReferenceBasis::eval_grad(const Vec2& ref) const {
    std::array<Vec2, kMaxLocalDofs> out{};
    if (degree_ == 1) {
        out[0] = kBaryGrad[0];
        out[1] = kBaryGrad[1];
        out[2] = kBaryGrad[2];
        return out;
    }
    const auto lam = barycentric(ref);
    for (int i = 0; i < 3; ++i) {
        out[i] = (4.0 * lam[i] - 1.0) * kBaryGrad[i];
    }
    for (int m = 0; m < 3; ++m) {
        const auto [a, b] = kMidpointPairs[m];
        out[3 + m] = 4.0 * (lam[a] * kBaryGrad[b] + lam[b] * kBaryGrad[a]);
    }
    return out;
}

Vec2 ReferenceBasis::node(int i) const {
    static constexpr std::array<Vec2, kMaxLocalDofs> kNodes{
        {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {0.5, 0.0}, {0.5, 0.5}, {0.0, 0.5}}};
    return kNodes.at(static_cast<std::size_t>(i));
}

} // namespace robinfem

#include "truncent/pipeline.hpp"

#include <cmath>
#include <string>

#include "truncent/errors.hpp"

namespace truncent {

CoefficientMatrix evolve(const CoefficientMatrix &state, const LocalUnitary &uA, const LocalUnitary &uB) {
    if (uA.dim() != state.dim() || uB.dim() != state.dim()) {
        throw DimensionError("evolve: state is " + std::to_string(state.dim()) + "-dimensional but unitaries are " +
                             std::to_string(uA.dim()) + " and " + std::to_string(uB.dim()));
    }
    // (uA x uB) sum beta_kl |k>|l>  ->  beta' = uA beta uB^T
    Eigen::MatrixXcd out = uA.matrix() * state.entries() * uB.matrix().transpose();
    return CoefficientMatrix(std::move(out));
}

TruncatedState TruncatedState::from_block(Eigen::MatrixXcd block) {
    if (block.rows() != block.cols() || block.rows() % 2 == 0) {
        throw DimensionError("truncated block must be square with odd dimension");
    }
    const double weight = block.squaredNorm();
    if (!(weight >= kMinCapturedWeight)) {
        throw DegenerateTruncationError("truncation window of size " + std::to_string(block.rows()) +
                                        " captures weight " + std::to_string(weight) + " < 1e-12");
    }
    block /= std::sqrt(weight);
    return TruncatedState(std::move(block), weight);
}

TruncatedState truncate(const CoefficientMatrix &state, int s) {
    require_odd(s, 3, "s");
    if (s > state.dim()) {
        throw DimensionError("s=" + std::to_string(s) + " exceeds state dimension " + std::to_string(state.dim()));
    }
    const int first = state.half_width() - (s - 1) / 2;
    return TruncatedState::from_block(state.entries().block(first, first, s, s));
}

ReducedState reduced_density(const TruncatedState &state) {
    const Eigen::MatrixXcd &beta = state.entries();
    return ReducedState(beta * beta.adjoint());
}

double reduced_purity(const TruncatedState &state) {
    // rho_A is Hermitian, so Tr rho_A^2 = sum_ij |rho_ij|^2.
    return reduced_density(state).matrix().squaredNorm();
}

double schmidt_number(double purity) {
    if (!(purity > 0.0)) throw DomainError("purity must be positive, got " + std::to_string(purity));
    return 1.0 / purity;
}

} // namespace truncent

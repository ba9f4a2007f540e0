#pragma once

#include <Eigen/Dense>

#include "truncent/statespace.hpp"
#include "truncent/unitaries.hpp"

namespace truncent {

// beta' = uA * beta * uB^T
[[nodiscard]] CoefficientMatrix evolve(const CoefficientMatrix &state, const LocalUnitary &uA,
                                       const LocalUnitary &uB);

/// Renormalised s x s central block of a state, labels in [-S, S].
class TruncatedState {
public:
    // Normalises `block` and remembers its squared norm as the captured weight.
    // Throws DegenerateTruncationError if that weight is below kMinCapturedWeight.
    static TruncatedState from_block(Eigen::MatrixXcd block);

    static constexpr double kMinCapturedWeight = 1e-12;

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    [[nodiscard]] int half_width() const noexcept { return (dim() - 1) / 2; }
    [[nodiscard]] cplx operator()(int q, int r) const {
        return entries_(label_offset(q, half_width()), label_offset(r, half_width()));
    }
    [[nodiscard]] const Eigen::MatrixXcd &entries() const noexcept { return entries_; }
    // Squared norm of the block before renormalisation.
    [[nodiscard]] double captured_weight() const noexcept { return captured_weight_; }

private:
    TruncatedState(Eigen::MatrixXcd entries, double weight) : entries_(std::move(entries)), captured_weight_(weight) {}

    Eigen::MatrixXcd entries_;
    double captured_weight_;
};

[[nodiscard]] TruncatedState truncate(const CoefficientMatrix &state, int s);

// rho_A = Tr_B |psi><psi|, Hermitian with unit trace.
class ReducedState {
public:
    explicit ReducedState(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {}
    [[nodiscard]] const Eigen::MatrixXcd &matrix() const noexcept { return rho_; }
    [[nodiscard]] int dim() const noexcept { return static_cast<int>(rho_.rows()); }

private:
    Eigen::MatrixXcd rho_;
};

[[nodiscard]] ReducedState reduced_density(const TruncatedState &state);

// Tr rho_A^2, evaluated through the Gram matrix in O(s^3).
[[nodiscard]] double reduced_purity(const TruncatedState &state);

// K = 1/P. Throws DomainError for P <= 0.
[[nodiscard]] double schmidt_number(double purity);

} // namespace truncent

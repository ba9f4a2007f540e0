#pragma once

namespace truncent {

// Closed forms for uniform spreading and the random-unitary conjecture.
namespace analytics {

// Unnormalised sinc, sin(x)/x with sinc(0) = 1.
[[nodiscard]] double sinc(double x);

// beta(q, r) for the maximally entangled m-state spread by the uniform spreading unitary on both sides.
[[nodiscard]] double beta_uniform(int n, int m, int q, int r);

// Exact reduced purity for m = 2 under uniform spreading, truncated to s.
[[nodiscard]] double purity_m2(int n, int s);

// P ~ 2/s + 1/m - 2/n for Haar-random local unitaries. Accepts any 1 <= m, s <= n.
[[nodiscard]] double conjectured_purity(int n, int m, int s);

// Delta = m - K at s = m, using the conjectured purity: 2m(m-n)/(2m-3n).
[[nodiscard]] double entanglement_loss(int n, int m);

// K ~ m s / n for uniform spreading; exact when m = n.
[[nodiscard]] double linear_approx_schmidt(int n, int m, int s);

} // namespace analytics
} // namespace truncent

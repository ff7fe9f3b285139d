/**
 * Copyright 2026 The ngsvs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef NGSVS_GENERATING_FUNCTION_HPP
#define NGSVS_GENERATING_FUNCTION_HPP

#include <complex>

#include <Eigen/Dense>

namespace ngsvs::generating_function {

/**
 * Closed generating form of the heralded circuit: a squeezed vacuum signal
 * (lambda = tanh r) mixed with an m-photon ancilla on a beam splitter of
 * transmissivity T, heralded on detecting n ancilla photons.
 *
 * The unnormalized output characteristic function is
 *
 *   chi(L) = a0 * D exp(L^T g1 L + u^T g2 L + u^T g3 u),
 *
 * with L = (tau, sigma), u = (u1, v1, u2, v2), and D the derivative operator
 * 2^-(m+n)/(m!n!) d^m_u1 d^m_v1 d^n_u2 d^n_v2 at u = 0. The (u1, v1) pair
 * generates the m-photon ancilla input, (u2, v2) the n-photon detection.
 * a0 multiplies the whole expression as a prefactor; the exponent blocks are
 * scale-free. With this normalization the value at L = 0 is the physical
 * heralding probability (it sums to one over n and is validated against the
 * truncated-Fock simulation in fock_oracle).
 */
struct QuadraticGenerator {
    double a0;  // sqrt((1 - lambda^2)/(1 - lambda^2 T^2))
    Eigen::Matrix2d g1;
    Eigen::Matrix<std::complex<double>, 4, 2> g2;  // column 0 real, column 1 imaginary
    Eigen::Matrix4d g3;
    double lambda;
    double transmissivity;
};

/// Derivative orders: ancilla input m, detection n, quadrature powers s (q)
/// and t (p).
struct MomentIndex {
    int m = 0;
    int n = 0;
    int s = 0;
    int t = 0;
};

/// Supported ranges. raw_moment enforces both; probability() accepts herald
/// orders up to kMaxProbabilityOrder since the s = t = 0 path stays cheap.
inline constexpr int kMaxHeraldOrder = 12;       // m + n for moment extraction
inline constexpr int kMaxQuadratureOrder = 4;    // s + t
inline constexpr int kMaxProbabilityOrder = 48;  // m + n for probability()

/// Heralding probabilities below this are treated as vanishing; the moment
/// ratio would be meaningless noise past it.
inline constexpr double kMinProbability = 1e-300;

/// Populates the generator for 0 <= lambda < 1, 0 <= T <= 1.
QuadraticGenerator assemble(double lambda, double transmissivity);

/// Full 6x6 symmetric matrix A = Q + Q^T of the exponent written as w^T Q w
/// over w = (u1, v1, u2, v2, tau, sigma). Mixed partials of exp(w^T Q w) at 0
/// are sums over perfect pairings of products of A entries.
Eigen::Matrix<std::complex<double>, 6, 6> exponent_matrix(const QuadraticGenerator& gen);

/**
 * Unnormalized symmetric moment P * <q^s p^t> (symmetric ordering):
 *
 *   a0 * 2^-(m+n)/(m!n!) * (1/i)^s (1/-i)^t *
 *     d^m_u1 d^m_v1 d^n_u2 d^n_v2 d^s_sigma d^t_tau exp(exponent) at 0.
 *
 * The exponent is a pure quadratic, so the mixed partial of total order d
 * vanishes for odd d and otherwise equals the degree-d/2 series coefficient,
 * computed exactly by iterated polynomial multiplication truncated to the
 * target exponents.
 */
std::complex<double> raw_moment(const QuadraticGenerator& gen, const MomentIndex& idx);

/// Reference evaluation by explicit enumeration of perfect pairings of the
/// derivative index multiset (hafnian with repeated indices). Exact but
/// factorial in the total order; restricted to 2m + 2n + s + t <= 8.
std::complex<double> raw_moment_pairing_sum(const QuadraticGenerator& gen,
                                            const MomentIndex& idx);

/// Heralding probability: raw_moment with s = t = 0. Strictly positive for
/// lambda > 0, 0 < T < 1, and for the m = n catalysis case at every T.
double probability(int m, int n, double lambda, double transmissivity);

/// Normalized quadrature statistics of the heralded state.
struct MomentResult {
    double probability;
    double mean_q;
    double mean_p;
    double var_q;
    double var_p;
};

/// Throws if the heralding probability falls below kMinProbability (the
/// T -> 1 subtraction/addition limit must be handled by the closed forms in
/// squeezing) or if a residual imaginary part exceeds 1e-10 relative.
MomentResult symmetric_moments(int m, int n, double lambda, double transmissivity);

}  // namespace ngsvs::generating_function

#endif  // NGSVS_GENERATING_FUNCTION_HPP

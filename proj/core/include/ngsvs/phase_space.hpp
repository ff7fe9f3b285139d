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

#ifndef NGSVS_PHASE_SPACE_HPP
#define NGSVS_PHASE_SPACE_HPP

#include <complex>

#include <Eigen/Dense>

namespace ngsvs::phase_space {

/// Vacuum quadrature variance. Convention: hbar = 1, q = (a + a^dag)/sqrt(2).
inline constexpr double kVacuumVariance = 0.5;

/// Quadrature ordering is (q1, p1, q2, p2, ...) throughout.
///
/// An n-mode Gaussian state: mean vector of length 2n and a real symmetric
/// 2n x 2n covariance matrix (vacuum = diag(1/2, 1/2, ...)).
struct GaussianState {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;

    int modes() const { return static_cast<int>(mean.size()) / 2; }
};

/// Linear canonical transform S acting as xi -> S xi on the quadrature
/// vector; preserves the symplectic form, S^T Omega S = Omega.
struct SymplecticTransform {
    Eigen::MatrixXd matrix;

    int modes() const { return static_cast<int>(matrix.rows()) / 2; }
};

/// Argument of a characteristic function: (tau_1, sigma_1, ..., tau_n, sigma_n).
struct PhasePoint {
    Eigen::VectorXd values;

    static PhasePoint single(double tau, double sigma);
    int modes() const { return static_cast<int>(values.size()) / 2; }
};

/// Block-diagonal symplectic form, one [[0,1],[-1,0]] block per mode.
Eigen::MatrixXd symplectic_form(int n_modes);

/// n-mode vacuum: zero mean, covariance (1/2) I.
GaussianState vacuum_state(int n_modes);

/// Applies diag(e^-r, e^r) on the chosen mode. Throws on a bad mode index.
GaussianState squeeze(const GaussianState& state, double r, int mode);

/// Two-mode beam splitter with power transmissivity T in [0, 1]:
/// [[sqrt(T) I2, sqrt(1-T) I2], [-sqrt(1-T) I2, sqrt(T) I2]].
SymplecticTransform beam_splitter(double transmissivity);

/// xi -> S xi: mean -> S mean, cov -> S cov S^T.
GaussianState apply(const SymplecticTransform& s, const GaussianState& state);

/// Checks S^T Omega S = Omega entrywise against `tol`.
bool is_symplectic(const Eigen::MatrixXd& s, double tol = 1e-10);

/// Physicality: eigenvalues of cov + (i/2) Omega are >= -tol.
bool is_physical(const GaussianState& state, double tol = 1e-10);

/// Characteristic function of a Gaussian state,
/// chi(L) = exp(-1/2 L^T (Omega V Omega^T) L - i (Omega mean)^T L).
std::complex<double> gaussian_chi(const GaussianState& state, const PhasePoint& point);

/// Laguerre polynomial L_m(x), three-term recurrence.
double laguerre(int m, double x);

/// Characteristic function of the Fock state |m>, single mode:
/// exp(-(tau^2 + sigma^2)/4) * L_m((tau^2 + sigma^2)/2).
double fock_chi(int m, const PhasePoint& point);

}  // namespace ngsvs::phase_space

#endif  // NGSVS_PHASE_SPACE_HPP

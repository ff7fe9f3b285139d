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

#include "ngsvs/phase_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ngsvs::phase_space {

PhasePoint PhasePoint::single(double tau, double sigma) {
    PhasePoint p;
    p.values.resize(2);
    p.values << tau, sigma;
    return p;
}

Eigen::MatrixXd symplectic_form(int n_modes) {
    if (n_modes < 1) {
        throw std::invalid_argument("symplectic_form: n_modes must be >= 1, got " +
                                    std::to_string(n_modes));
    }
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

GaussianState vacuum_state(int n_modes) {
    if (n_modes < 1) {
        throw std::invalid_argument("vacuum_state: n_modes must be >= 1, got " +
                                    std::to_string(n_modes));
    }
    GaussianState s;
    s.mean = Eigen::VectorXd::Zero(2 * n_modes);
    s.cov = kVacuumVariance * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    return s;
}

GaussianState squeeze(const GaussianState& state, double r, int mode) {
    const int n = state.modes();
    if (mode < 0 || mode >= n) {
        throw std::invalid_argument("squeeze: mode index " + std::to_string(mode) +
                                    " out of range for " + std::to_string(n) + " mode(s)");
    }
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    s(2 * mode, 2 * mode) = std::exp(-r);
    s(2 * mode + 1, 2 * mode + 1) = std::exp(r);
    SymplecticTransform t{std::move(s)};
    return apply(t, state);
}

SymplecticTransform beam_splitter(double transmissivity) {
    if (!(transmissivity >= 0.0 && transmissivity <= 1.0)) {
        throw std::invalid_argument("beam_splitter: transmissivity must lie in [0, 1], got " +
                                    std::to_string(transmissivity));
    }
    const double t = std::sqrt(transmissivity);
    const double r = std::sqrt(1.0 - transmissivity);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(4, 4);
    b.block<2, 2>(0, 0) = t * Eigen::Matrix2d::Identity();
    b.block<2, 2>(0, 2) = r * Eigen::Matrix2d::Identity();
    b.block<2, 2>(2, 0) = -r * Eigen::Matrix2d::Identity();
    b.block<2, 2>(2, 2) = t * Eigen::Matrix2d::Identity();
    return SymplecticTransform{std::move(b)};
}

GaussianState apply(const SymplecticTransform& s, const GaussianState& state) {
    if (s.matrix.rows() != state.mean.size()) {
        throw std::invalid_argument("apply: transform acts on " +
                                    std::to_string(s.matrix.rows() / 2) + " mode(s), state has " +
                                    std::to_string(state.modes()));
    }
    GaussianState out;
    out.mean = s.matrix * state.mean;
    out.cov = s.matrix * state.cov * s.matrix.transpose();
    return out;
}

bool is_symplectic(const Eigen::MatrixXd& s, double tol) {
    if (s.rows() != s.cols() || s.rows() % 2 != 0) return false;
    const Eigen::MatrixXd omega = symplectic_form(static_cast<int>(s.rows()) / 2);
    return ((s.transpose() * omega * s - omega).cwiseAbs().maxCoeff() < tol);
}

bool is_physical(const GaussianState& state, double tol) {
    const int n = state.modes();
    if ((state.cov - state.cov.transpose()).cwiseAbs().maxCoeff() > 1e-12) return false;
    Eigen::MatrixXcd m = state.cov.cast<std::complex<double>>();
    m += std::complex<double>(0.0, 0.5) * symplectic_form(n).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    return solver.eigenvalues().minCoeff() >= -tol;
}

std::complex<double> gaussian_chi(const GaussianState& state, const PhasePoint& point) {
    if (point.values.size() != state.mean.size()) {
        throw std::invalid_argument("gaussian_chi: phase point has " +
                                    std::to_string(point.values.size()) +
                                    " components, state needs " +
                                    std::to_string(state.mean.size()));
    }
    const Eigen::MatrixXd omega = symplectic_form(state.modes());
    const Eigen::VectorXd& l = point.values;
    const double quad = l.dot(omega * state.cov * omega.transpose() * l);
    const double lin = (omega * state.mean).dot(l);
    return std::exp(std::complex<double>(-0.5 * quad, -lin));
}

double laguerre(int m, double x) {
    if (m < 0) {
        throw std::invalid_argument("laguerre: order must be >= 0, got " + std::to_string(m));
    }
    if (m == 0) return 1.0;
    double lkm1 = 1.0;
    double lk = 1.0 - x;
    for (int k = 1; k < m; ++k) {
        const double lkp1 = ((2.0 * k + 1.0 - x) * lk - k * lkm1) / (k + 1.0);
        lkm1 = lk;
        lk = lkp1;
    }
    return lk;
}

double fock_chi(int m, const PhasePoint& point) {
    if (m < 0) {
        throw std::invalid_argument("fock_chi: photon number must be >= 0, got " +
                                    std::to_string(m));
    }
    if (point.values.size() != 2) {
        throw std::invalid_argument("fock_chi: expects a single-mode phase point");
    }
    const double rho = 0.5 * point.values.squaredNorm();
    return std::exp(-0.5 * rho) * laguerre(m, rho);
}

}  // namespace ngsvs::phase_space

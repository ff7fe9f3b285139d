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

#ifndef NGSVS_FOCK_ORACLE_HPP
#define NGSVS_FOCK_ORACLE_HPP

#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace ngsvs::fock_oracle {

/// Single-mode state over the truncated Fock basis |0..cutoff>. tail_bound is
/// an analytic upper bound on the probability mass truncated away.
struct FockVector {
    std::vector<std::complex<double>> amplitudes;
    double tail_bound = 0.0;

    int cutoff() const { return static_cast<int>(amplitudes.size()) - 1; }
    double norm2() const;
};

/// Two-mode state; amplitudes(k, l) multiplies |k> (signal) |l> (ancilla).
struct TwoModeFock {
    Eigen::MatrixXcd amplitudes;
    double tail_bound = 0.0;

    int cutoff() const { return static_cast<int>(amplitudes.rows()) - 1; }
};

/// Squeezed vacuum in the Fock basis, c_{2k} = (1-l^2)^(1/4) sqrt((2k)!)/(2^k k!) (-l)^k
/// (q-squeezed for positive lambda), zeros at odd photon numbers. Throws if
/// the analytic tail bound exceeds `tail_tolerance`.
FockVector svs_amplitudes(double lambda, int cutoff,
                          double tail_tolerance = std::numeric_limits<double>::infinity());

/// signal (x) |m>, sized so every populated photon-number block fits.
TwoModeFock tensor_with_fock(const FockVector& signal, int m);

/// Number-conserving beam-splitter action, blockwise over total photon
/// number. Matrix elements follow the quadrature convention of
/// phase_space::beam_splitter: |1,0> -> sqrt(T)|1,0> - sqrt(1-T)|0,1>.
/// Throws if a populated block does not fit inside the cutoff.
TwoModeFock apply_beam_splitter(const TwoModeFock& state, double transmissivity);

struct HeraldResult {
    FockVector state;       // normalized signal-mode state
    double probability;     // sum_k |<k, n|state>|^2
};

/// Projects the ancilla onto |n>. Throws on a zero-probability outcome.
HeraldResult herald(const TwoModeFock& state, int n);

struct QuadratureStats {
    double mean_q;
    double var_q;
    double mean_p;
    double var_p;
};

/// Mean and variance of q and p from the tridiagonal quadrature matrix
/// elements, q_{k,k+1} = sqrt(k+1)/sqrt(2).
QuadratureStats quadrature_stats(const FockVector& state);

/// End-to-end heralded simulation: SVS(lambda) (x) |m> -> beam splitter(T) ->
/// detect n. With cutoff_override = 0 the cutoff starts at 32 and doubles
/// (cap 256) until the tail bound and the probability change drop below 1e-10.
struct OracleResult {
    double probability;
    QuadratureStats stats;
    int cutoff_used;
    double tail_bound;
    bool converged;
};

OracleResult simulate_heralded(int m, int n, double lambda, double transmissivity,
                               int cutoff_override = 0);

}  // namespace ngsvs::fock_oracle

#endif  // NGSVS_FOCK_ORACLE_HPP

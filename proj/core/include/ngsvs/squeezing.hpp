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

#ifndef NGSVS_SQUEEZING_HPP
#define NGSVS_SQUEEZING_HPP

#include <string>
#include <utility>

namespace ngsvs::squeezing {

/// The three heralded operations. Subtraction detects n > 0 photons behind a
/// vacuum ancilla, addition inputs m photons and detects none, catalysis
/// inputs and detects the same number.
enum class OpKind { kSubtraction, kAddition, kCatalysis };

struct Operation {
    OpKind kind;
    int order;
};

/// (ancilla input photons m, detected photons n) for an operation.
std::pair<int, int> ancilla_photons(const Operation& op);

/// Short label such as "2-PS" / "1-PC".
std::string op_label(const Operation& op);

/// q-variance of the squeezed vacuum itself: (1 - lambda)/(2 (1 + lambda)).
double var_svs(double lambda);

/// q-variance after two-photon subtraction:
/// -5/2 + 5/(lambda T + 1) + 2 (lambda T - 1)/(2 lambda^2 T^2 + 1).
double var_2ps(double lambda, double transmissivity);

/// T -> 1 limit of var_2ps (ideal two-photon subtraction).
double var_2ps_unit_transmissivity(double lambda);

/// q-variance after one-photon subtraction: -3/2 + 3/(1 + lambda T).
/// Never drops below var_svs.
double var_1ps(double lambda, double transmissivity);

/// q-variance after two-photon addition:
/// -1/2 + 5/(lambda T + 1) - 2 (2 + lambda T)/(2 + lambda^2 T^2).
double var_2pa(double lambda, double transmissivity);

/// q-variance after single-photon catalysis; equals var_svs at T = 1.
double var_1pc(double lambda, double transmissivity);

/// Success probability of two-photon subtraction:
/// lambda^2 (1-T)^2 sqrt(1-lambda^2) (1 + 2 lambda^2 T^2) / (2 (1 - lambda^2 T^2)^(5/2)).
double prob_2ps(double lambda, double transmissivity);

/// lambda range where the 2-PS variance has its minimum at an interior
/// transmissivity rather than at T = 1. Recomputed from the closed forms;
/// approximately (0.325, 0.606).
struct Interval {
    double lo;
    double hi;
};
Interval interior_optimum_region_2ps();

/// Transmissivity minimizing var_2ps. Inside the interior-optimum region this
/// is the radical constant [-1 - (25/(7+3 sqrt 6))^(1/3) + (35+15 sqrt 6)^(1/3)]/(6 lambda),
/// clamped to (0, 1]; outside it returns 1 (the boundary optimum).
double t_opt_2ps(double lambda);

/// Minimum of var_2ps over T for lambda in the interior-optimum region. The
/// variance depends on lambda*T only, so the minimum is a constant there.
/// Throws std::domain_error outside the region.
double var_2ps_at_topt(double lambda);

/// True iff some (lambda, T) in (0,1)^2 improves the q-variance over the
/// input squeezed vacuum by more than `epsilon`, decided by a grid-plus-refine
/// search over the moment engine. Orders 1..4 are supported.
bool classify_distillable(const Operation& op, double epsilon = 1e-6);

/// Best variance improvement found by the classification search, with the
/// location of the maximum (optional out-parameters).
double max_enhancement(const Operation& op, double* lambda_at = nullptr,
                       double* transmissivity_at = nullptr);

}  // namespace ngsvs::squeezing

#endif  // NGSVS_SQUEEZING_HPP

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

#ifndef NGSVS_DISTILL_OPT_HPP
#define NGSVS_DISTILL_OPT_HPP

#include <vector>

#include "ngsvs/squeezing.hpp"

namespace ngsvs::distill_opt {

using squeezing::Operation;

/// One evaluated parameter point: variance improvement over the input SVS,
/// heralding probability, and their product.
struct DistillationPoint {
    Operation op;
    double lambda;
    double transmissivity;
    double var;          // heralded q-variance
    double d_ng;         // var_svs(lambda) - var
    double probability;  // physical heralding probability
    double r_product;    // d_ng * probability
};

DistillationPoint enhancement(const Operation& op, double lambda, double transmissivity);

enum class Objective { kMinVariance, kMaxRProduct };

struct OptimizeTResult {
    double t_star;
    double value;
};

/// 1-D optimum over transmissivity at fixed lambda: coarse grid (step 1e-3
/// over (1e-6, 1-1e-6)), ties toward larger T, then golden-section refinement
/// to |dT| < 1e-8. A boundary optimum at the top of the range is reported as
/// T = 1.
OptimizeTResult optimize_T(const Operation& op, double lambda, Objective objective);

struct OptimumRecord {
    Operation op;
    double r_max;
    double lambda_opt;
    double t_opt;
    double var_svs_at_opt;
    double d_at_opt;
    double p_at_opt;
};

/// 2-D maximization of r_product over (lambda, T): deterministic grid of step
/// 0.005 followed by coordinate-wise golden-section refinement to 1e-6.
/// Throws for operations that cannot distill.
OptimumRecord optimize_R(const Operation& op);

enum class SweepKind {
    kVarVsLambdaAtTopt,
    kToptVsLambda,
    kDContour,
    kRContour,
    kDAndPVsT,
};

/// Dense tabulation for plotting. Line sweeps emit `resolution` rows; contour
/// sweeps emit resolution^2 rows in row-major (lambda outer, T inner) order.
/// kDAndPVsT sweeps T at `fixed_lambda`.
std::vector<DistillationPoint> curve(const Operation& op, SweepKind kind, int resolution,
                                     double fixed_lambda = 0.5);

/// -10 log10(var / 0.5): squeezing in dB relative to vacuum.
double to_db(double variance);

}  // namespace ngsvs::distill_opt

#endif  // NGSVS_DISTILL_OPT_HPP

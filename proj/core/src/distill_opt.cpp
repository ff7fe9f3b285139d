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

#include "ngsvs/distill_opt.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

#include "ngsvs/generating_function.hpp"

namespace ngsvs::distill_opt {

namespace {

namespace gf = ngsvs::generating_function;

constexpr double kTEdge = 1e-6;          // open-interval margin for T scans
constexpr double kCoarseTStep = 1e-3;
constexpr double kGridStep2D = 0.005;

/// Golden-section maximization on [a, b] to the requested width.
double golden_max(const std::function<double(double)>& f, double a, double b, double width) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > width) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        }
    }
    return 0.5 * (a + b);
}

std::optional<DistillationPoint> try_enhancement(const Operation& op, double lambda, double t) {
    const auto [m, n] = squeezing::ancilla_photons(op);
    const double p = gf::probability(m, n, lambda, t);
    if (p < gf::kMinProbability) return std::nullopt;
    const gf::MomentResult moments = gf::symmetric_moments(m, n, lambda, t);
    DistillationPoint point;
    point.op = op;
    point.lambda = lambda;
    point.transmissivity = t;
    point.var = moments.var_q;
    point.d_ng = squeezing::var_svs(lambda) - moments.var_q;
    point.probability = moments.probability;
    point.r_product = point.d_ng * point.probability;
    return point;
}

double objective_value(const Operation& op, double lambda, double t, Objective objective) {
    const auto point = try_enhancement(op, lambda, t);
    if (!point) {
        // Out of support: worst possible value for either objective.
        return objective == Objective::kMinVariance ? std::numeric_limits<double>::infinity()
                                                    : -std::numeric_limits<double>::infinity();
    }
    return objective == Objective::kMinVariance ? point->var : point->r_product;
}

}  // namespace

DistillationPoint enhancement(const Operation& op, double lambda, double transmissivity) {
    const auto point = try_enhancement(op, lambda, transmissivity);
    if (!point) {
        throw std::runtime_error("enhancement: vanishing heralding probability for " +
                                 squeezing::op_label(op) + " at lambda = " +
                                 std::to_string(lambda) + ", T = " +
                                 std::to_string(transmissivity));
    }
    return *point;
}

OptimizeTResult optimize_T(const Operation& op, double lambda, Objective objective) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("optimize_T: lambda must lie in (0, 1), got " +
                                    std::to_string(lambda));
    }
    const double sign = objective == Objective::kMinVariance ? -1.0 : 1.0;
    auto score = [&](double t) { return sign * objective_value(op, lambda, t, objective); };

    double best_t = kTEdge;
    double best = -std::numeric_limits<double>::infinity();
    for (double t = kTEdge; t <= 1.0 - kTEdge + 1e-12; t += kCoarseTStep) {
        const double s = score(t);
        if (s >= best) {  // >= breaks ties toward larger T
            best = s;
            best_t = t;
        }
    }
    if (!std::isfinite(best)) {
        throw std::runtime_error("optimize_T: objective undefined across the whole range for " +
                                 squeezing::op_label(op));
    }
    const double lo = std::max(kTEdge, best_t - kCoarseTStep);
    const double hi = std::min(1.0 - kTEdge, best_t + kCoarseTStep);
    double t_star = golden_max(score, lo, hi, 1e-8);

    OptimizeTResult result;
    result.value = objective_value(op, lambda, t_star, objective);
    if (t_star >= 1.0 - kTEdge - 1e-8) t_star = 1.0;  // boundary optimum reported as 1
    result.t_star = t_star;
    return result;
}

OptimumRecord optimize_R(const Operation& op) {
    if (!squeezing::classify_distillable(op)) {
        throw std::invalid_argument("optimize_R: " + squeezing::op_label(op) +
                                    " cannot distill squeezing");
    }
    double best = -std::numeric_limits<double>::infinity();
    double best_l = 0.0, best_t = 0.0;
    for (double lam = kGridStep2D; lam < 1.0; lam += kGridStep2D) {
        for (double t = kGridStep2D; t < 1.0; t += kGridStep2D) {
            const auto point = try_enhancement(op, lam, t);
            if (point && point->r_product > best) {
                best = point->r_product;
                best_l = lam;
                best_t = t;
            }
        }
    }

    auto r_of = [&](double lam, double t) {
        const auto point = try_enhancement(op, lam, t);
        return point ? point->r_product : -std::numeric_limits<double>::infinity();
    };
    // Coordinate-wise golden refinement, one grid cell around the incumbent.
    for (int round = 0; round < 8; ++round) {
        const double l0 = best_l, t0 = best_t;
        best_l = golden_max([&](double l) { return r_of(l, best_t); },
                            std::max(best_l - kGridStep2D, 1e-6),
                            std::min(best_l + kGridStep2D, 1.0 - 1e-6), 1e-7);
        best_t = golden_max([&](double t) { return r_of(best_l, t); },
                            std::max(best_t - kGridStep2D, 1e-6),
                            std::min(best_t + kGridStep2D, 1.0 - 1e-6), 1e-7);
        if (std::abs(best_l - l0) < 1e-6 && std::abs(best_t - t0) < 1e-6) break;
    }

    const DistillationPoint point = enhancement(op, best_l, best_t);
    OptimumRecord record;
    record.op = op;
    record.r_max = point.r_product;
    record.lambda_opt = best_l;
    record.t_opt = best_t;
    record.var_svs_at_opt = squeezing::var_svs(best_l);
    record.d_at_opt = point.d_ng;
    record.p_at_opt = point.probability;
    return record;
}

std::vector<DistillationPoint> curve(const Operation& op, SweepKind kind, int resolution,
                                     double fixed_lambda) {
    if (resolution < 2) {
        throw std::invalid_argument("curve: resolution must be >= 2");
    }
    std::vector<DistillationPoint> rows;

    auto lambda_at = [&](int i) {
        return 0.01 + (0.98 - 0.01) * static_cast<double>(i) / (resolution - 1);
    };
    auto t_at = [&](int i) {
        return kTEdge + (1.0 - 2.0 * kTEdge) * static_cast<double>(i) / (resolution - 1);
    };

    switch (kind) {
        case SweepKind::kVarVsLambdaAtTopt:
        case SweepKind::kToptVsLambda: {
            rows.reserve(resolution);
            for (int i = 0; i < resolution; ++i) {
                const double lam = lambda_at(i);
                const OptimizeTResult opt = optimize_T(op, lam, Objective::kMinVariance);
                const double t_eval = std::min(opt.t_star, 1.0 - kTEdge);
                DistillationPoint point = enhancement(op, lam, t_eval);
                point.transmissivity = opt.t_star;
                rows.push_back(point);
            }
            break;
        }
        case SweepKind::kDContour:
        case SweepKind::kRContour: {
            rows.reserve(static_cast<size_t>(resolution) * resolution);
            for (int i = 0; i < resolution; ++i) {
                for (int j = 0; j < resolution; ++j) {
                    rows.push_back(enhancement(op, lambda_at(i), t_at(j)));
                }
            }
            break;
        }
        case SweepKind::kDAndPVsT: {
            if (!(fixed_lambda > 0.0 && fixed_lambda < 1.0)) {
                throw std::invalid_argument("curve: fixed lambda must lie in (0, 1)");
            }
            rows.reserve(resolution);
            for (int i = 0; i < resolution; ++i) {
                rows.push_back(enhancement(op, fixed_lambda, t_at(i)));
            }
            break;
        }
    }
    return rows;
}

double to_db(double variance) {
    if (!(variance > 0.0)) {
        throw std::invalid_argument("to_db: variance must be positive");
    }
    return -10.0 * std::log10(variance / 0.5);
}

}  // namespace ngsvs::distill_opt

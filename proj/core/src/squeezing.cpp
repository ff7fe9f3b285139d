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

#include "ngsvs/squeezing.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ngsvs/generating_function.hpp"

namespace ngsvs::squeezing {

namespace {

void check_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("lambda must lie in [0, 1), got " + std::to_string(lambda));
    }
}

void check_transmissivity(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("transmissivity must lie in [0, 1], got " +
                                    std::to_string(t));
    }
}

void check_order(const Operation& op) {
    if (op.order < 1 || op.order > 4) {
        throw std::invalid_argument("operation order must lie in 1..4, got " +
                                    std::to_string(op.order));
    }
}

/// var_2ps as a function of x = lambda * T alone.
double var_2ps_of_x(double x) {
    return -2.5 + 5.0 / (x + 1.0) + 2.0 * (x - 1.0) / (2.0 * x * x + 1.0);
}

/// Stationary point of var_2ps_of_x in (0, 1): the radical constant of the
/// optimal-transmissivity formula, root of 4x^3 + 2x^2 + 2x - 1.
double interior_stationary_x() {
    static const double x1 = [] {
        const double s6 = std::sqrt(6.0);
        return (-1.0 - std::cbrt(25.0 / (7.0 + 3.0 * s6)) + std::cbrt(35.0 + 15.0 * s6)) / 6.0;
    }();
    return x1;
}

/// Upper end of the interior-optimum region: where the T = 1 boundary value
/// drops back to the interior minimum level.
double interior_region_hi() {
    static const double hi = [] {
        const double floor_value = var_2ps_of_x(interior_stationary_x());
        double lo = 0.5, up = 0.95;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + up);
            if (var_2ps_of_x(mid) > floor_value) {
                lo = mid;
            } else {
                up = mid;
            }
        }
        return 0.5 * (lo + up);
    }();
    return hi;
}

}  // namespace

std::pair<int, int> ancilla_photons(const Operation& op) {
    check_order(op);
    switch (op.kind) {
        case OpKind::kSubtraction: return {0, op.order};
        case OpKind::kAddition: return {op.order, 0};
        case OpKind::kCatalysis: return {op.order, op.order};
    }
    throw std::invalid_argument("unknown operation kind");
}

std::string op_label(const Operation& op) {
    const char* kind = op.kind == OpKind::kSubtraction ? "PS"
                       : op.kind == OpKind::kAddition  ? "PA"
                                                       : "PC";
    return std::to_string(op.order) + "-" + kind;
}

double var_svs(double lambda) {
    check_lambda(lambda);
    return (1.0 - lambda) / (2.0 * (1.0 + lambda));
}

double var_2ps(double lambda, double transmissivity) {
    check_lambda(lambda);
    check_transmissivity(transmissivity);
    return var_2ps_of_x(lambda * transmissivity);
}

double var_2ps_unit_transmissivity(double lambda) {
    check_lambda(lambda);
    return var_2ps_of_x(lambda);
}

double var_1ps(double lambda, double transmissivity) {
    check_lambda(lambda);
    check_transmissivity(transmissivity);
    return -1.5 + 3.0 / (1.0 + lambda * transmissivity);
}

double var_2pa(double lambda, double transmissivity) {
    check_lambda(lambda);
    check_transmissivity(transmissivity);
    const double x = lambda * transmissivity;
    return -0.5 + 5.0 / (x + 1.0) - 2.0 * (2.0 + x) / (2.0 + x * x);
}

double var_1pc(double lambda, double transmissivity) {
    check_lambda(lambda);
    check_transmissivity(transmissivity);
    const double l = lambda, T = transmissivity;
    const double l2 = l * l, l3 = l2 * l, l4 = l2 * l2, T2 = T * T;
    const double num = (1.0 - l * T) *
                       (1.0 + 4.0 * l + 10.0 * l2 - 4.0 * l * T - 22.0 * l2 * T - 4.0 * l3 * T +
                        10.0 * l2 * T2 + 4.0 * l3 * T2 + l4 * T2);
    const double den = 2.0 * (1.0 + l * T) *
                       (1.0 + 2.0 * l2 - 6.0 * l2 * T + 2.0 * l2 * T2 + l4 * T2);
    return num / den;
}

double prob_2ps(double lambda, double transmissivity) {
    check_lambda(lambda);
    check_transmissivity(transmissivity);
    const double l2 = lambda * lambda;
    const double d = 1.0 - l2 * transmissivity * transmissivity;
    const double r = 1.0 - transmissivity;
    return l2 * r * r * std::sqrt(1.0 - l2) *
           (1.0 + 2.0 * l2 * transmissivity * transmissivity) / (2.0 * std::pow(d, 2.5));
}

Interval interior_optimum_region_2ps() {
    return {interior_stationary_x(), interior_region_hi()};
}

double t_opt_2ps(double lambda) {
    check_lambda(lambda);
    const Interval region = interior_optimum_region_2ps();
    if (lambda <= region.lo || lambda >= region.hi) return 1.0;
    const double t = interior_stationary_x() / lambda;
    return std::min(t, 1.0);
}

double var_2ps_at_topt(double lambda) {
    check_lambda(lambda);
    const Interval region = interior_optimum_region_2ps();
    if (lambda <= region.lo || lambda >= region.hi) {
        throw std::domain_error("var_2ps_at_topt: lambda " + std::to_string(lambda) +
                                " outside the interior-optimum region (" +
                                std::to_string(region.lo) + ", " + std::to_string(region.hi) +
                                ")");
    }
    // The variance depends on lambda*T only, so the interior minimum sits at
    // the stationary x for every lambda in the region.
    return var_2ps_of_x(interior_stationary_x());
}

double max_enhancement(const Operation& op, double* lambda_at, double* transmissivity_at) {
    check_order(op);
    const std::pair<int, int> photons = ancilla_photons(op);
    const int m = photons.first, n = photons.second;

    auto improvement = [&](double lam, double t) {
        namespace gf = ngsvs::generating_function;
        const double p = gf::probability(m, n, lam, t);
        if (p < 1e-250) return -1.0;
        return var_svs(lam) - gf::symmetric_moments(m, n, lam, t).var_q;
    };

    // Coarse scan, then golden-section polish along each axis. The
    // enhancement surfaces are smooth with a single relevant basin, so a
    // moderate grid plus refinement is reliable.
    std::vector<double> t_grid;
    for (int i = 1; i <= 49; ++i) t_grid.push_back(i / 50.0);
    t_grid.push_back(0.999);
    t_grid.push_back(0.999999);

    double best = -1.0, best_l = 0.0, best_t = 0.0;
    for (int i = 1; i <= 49; ++i) {
        const double lam = i / 50.0;
        for (double t : t_grid) {
            const double d = improvement(lam, t);
            if (d > best) {
                best = d;
                best_l = lam;
                best_t = t;
            }
        }
    }

    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int round = 0; round < 2; ++round) {
        double a = std::max(best_l - 0.02, 1e-6), b = std::min(best_l + 0.02, 1.0 - 1e-9);
        for (int it = 0; it < 60; ++it) {
            const double c = b - gr * (b - a), d = a + gr * (b - a);
            if (improvement(c, best_t) > improvement(d, best_t)) {
                b = d;
            } else {
                a = c;
            }
        }
        best_l = 0.5 * (a + b);
        a = std::max(best_t - 0.03, 1e-6), b = std::min(best_t + 0.03, 1.0 - 1e-9);
        for (int it = 0; it < 60; ++it) {
            const double c = b - gr * (b - a), d = a + gr * (b - a);
            if (improvement(best_l, c) > improvement(best_l, d)) {
                b = d;
            } else {
                a = c;
            }
        }
        best_t = 0.5 * (a + b);
        best = improvement(best_l, best_t);
    }

    if (lambda_at) *lambda_at = best_l;
    if (transmissivity_at) *transmissivity_at = best_t;
    return best;
}

bool classify_distillable(const Operation& op, double epsilon) {
    return max_enhancement(op) > epsilon;
}

}  // namespace ngsvs::squeezing

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

#include "ngsvs/generating_function.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ngsvs::generating_function {

namespace {

using Complex = std::complex<double>;

void check_parameters(double lambda, double transmissivity) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("lambda must lie in [0, 1), got " + std::to_string(lambda));
    }
    if (!(transmissivity >= 0.0 && transmissivity <= 1.0)) {
        throw std::invalid_argument("transmissivity must lie in [0, 1], got " +
                                    std::to_string(transmissivity));
    }
    // lambda < 1 and T <= 1 already force lambda*T < 1; keep the guard for
    // NaN propagation.
    if (!(lambda * transmissivity < 1.0)) {
        throw std::invalid_argument("lambda * T must be < 1");
    }
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

/// One quadratic monomial c * w_a * w_b (a <= b) of the exponent.
struct QuadTerm {
    int a;
    int b;
    Complex c;
};

std::vector<QuadTerm> quadratic_terms(const QuadraticGenerator& gen) {
    std::vector<QuadTerm> terms;
    terms.reserve(21);
    // u^T g3 u: diagonal entries once, off-diagonal pairs combined.
    for (int i = 0; i < 4; ++i) {
        if (gen.g3(i, i) != 0.0) terms.push_back({i, i, gen.g3(i, i)});
        for (int j = i + 1; j < 4; ++j) {
            const double c = 2.0 * gen.g3(i, j);
            if (c != 0.0) terms.push_back({i, j, c});
        }
    }
    // u^T g2 L with L = (tau, sigma) at indices (4, 5).
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (gen.g2(i, j) != 0.0) terms.push_back({i, 4 + j, gen.g2(i, j)});
        }
    }
    // L^T g1 L (g1 is diagonal).
    if (gen.g1(0, 0) != 0.0) terms.push_back({4, 4, gen.g1(0, 0)});
    if (gen.g1(1, 1) != 0.0) terms.push_back({5, 5, gen.g1(1, 1)});
    return terms;
}

/// Coefficient of w1^e1 ... w6^e6 in exp(sum of quadratic terms), times
/// (d/2)! ... i.e. the coefficient in Phi^(d/2), divided by (d/2)! at the end.
Complex series_coefficient(const std::vector<QuadTerm>& terms, const std::array<int, 6>& target) {
    int degree = 0;
    for (int e : target) degree += e;
    if (degree % 2 != 0) return 0.0;
    const int steps = degree / 2;
    if (steps == 0) return 1.0;

    std::array<int, 6> dims{};
    std::array<int, 6> strides{};
    int total = 1;
    for (int i = 0; i < 6; ++i) {
        dims[i] = target[i] + 1;
        strides[i] = total;
        total *= dims[i];
    }

    std::vector<Complex> poly(total, Complex(0.0));
    std::vector<Complex> next(total);
    poly[0] = 1.0;

    std::array<int, 6> expo{};
    for (int step = 0; step < steps; ++step) {
        std::fill(next.begin(), next.end(), Complex(0.0));
        expo.fill(0);
        for (int flat = 0; flat < total; ++flat) {
            const Complex value = poly[flat];
            if (value != 0.0) {
                for (const QuadTerm& t : terms) {
                    if (t.a == t.b) {
                        if (expo[t.a] + 2 <= target[t.a]) {
                            next[flat + 2 * strides[t.a]] += t.c * value;
                        }
                    } else if (expo[t.a] < target[t.a] && expo[t.b] < target[t.b]) {
                        next[flat + strides[t.a] + strides[t.b]] += t.c * value;
                    }
                }
            }
            // odometer increment of the exponent vector
            for (int i = 0; i < 6; ++i) {
                if (++expo[i] < dims[i]) break;
                expo[i] = 0;
            }
        }
        poly.swap(next);
    }
    return poly[total - 1] / factorial(steps);
}

Complex moment_prefactor(const QuadraticGenerator& gen, const MomentIndex& idx) {
    // The mixed partial of the target monomial is m!^2 n!^2 s! t! times its
    // series coefficient; the operator normalization divides by 2^(m+n) m! n!,
    // leaving the net factor below. Each q (p) derivative contributes 1/i (1/-i).
    const double deriv = factorial(idx.m) * factorial(idx.n) * factorial(idx.s) *
                         factorial(idx.t);
    const double norm = gen.a0 * std::pow(2.0, -(idx.m + idx.n)) * deriv;
    // (1/i)^s (1/-i)^t = i^(t-s), computed exactly
    static const Complex quarter_turns[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex phase = quarter_turns[((idx.t - idx.s) % 4 + 4) % 4];
    return norm * phase;
}

void check_index(const MomentIndex& idx, int herald_cap) {
    if (idx.m < 0 || idx.n < 0 || idx.s < 0 || idx.t < 0) {
        throw std::invalid_argument("moment index orders must be non-negative");
    }
    if (idx.m + idx.n > herald_cap) {
        throw std::invalid_argument("herald order m + n = " + std::to_string(idx.m + idx.n) +
                                    " exceeds the supported maximum " +
                                    std::to_string(herald_cap));
    }
    if (idx.s + idx.t > kMaxQuadratureOrder) {
        throw std::invalid_argument("quadrature order s + t = " + std::to_string(idx.s + idx.t) +
                                    " exceeds the supported maximum " +
                                    std::to_string(kMaxQuadratureOrder));
    }
}

Complex raw_moment_impl(const QuadraticGenerator& gen, const MomentIndex& idx) {
    const int degree = 2 * idx.m + 2 * idx.n + idx.s + idx.t;
    if (degree % 2 != 0) return 0.0;  // odd derivative of an even function
    const std::array<int, 6> target = {idx.m, idx.m, idx.n, idx.n, idx.t, idx.s};
    const Complex coeff = series_coefficient(quadratic_terms(gen), target);
    return moment_prefactor(gen, idx) * coeff;
}

double real_checked(const Complex& value, const char* what) {
    const double scale = std::max(std::abs(value), 1.0);
    if (std::abs(value.imag()) > 1e-10 * scale) {
        throw std::runtime_error(std::string(what) +
                                 ": residual imaginary part exceeds tolerance, |imag| = " +
                                 std::to_string(std::abs(value.imag())));
    }
    return value.real();
}

}  // namespace

QuadraticGenerator assemble(double lambda, double transmissivity) {
    check_parameters(lambda, transmissivity);
    const double l = lambda;
    const double T = transmissivity;
    const double d = 1.0 - l * l * T * T;
    const double st = std::sqrt(T);
    const double rt = std::sqrt(1.0 - T);

    QuadraticGenerator gen;
    gen.lambda = l;
    gen.transmissivity = T;
    gen.a0 = std::sqrt((1.0 - l * l) / d);

    gen.g1 << -(1.0 + l * T) * (1.0 + l * T), 0.0,
              0.0, -(1.0 - l * T) * (1.0 - l * T);
    gen.g1 /= 4.0 * d;

    const Complex i(0.0, 1.0);
    gen.g2(0, 0) = (1.0 + l * T);
    gen.g2(0, 1) = -i * (l * T - 1.0);
    gen.g2(1, 0) = -(1.0 + l * T);
    gen.g2(1, 1) = -i * (l * T - 1.0);
    gen.g2(2, 0) = -l * st * (1.0 + l * T);
    gen.g2(2, 1) = -i * l * st * (l * T - 1.0);
    gen.g2(3, 0) = l * st * (1.0 + l * T);
    gen.g2(3, 1) = -i * l * st * (l * T - 1.0);
    gen.g2 *= rt / d;

    gen.g3 << l * T * (T - 1.0), 1.0 - T, l * st * (1.0 - T), st * (1.0 - l * l * T),
              1.0 - T, l * T * (T - 1.0), st * (1.0 - l * l * T), l * st * (1.0 - T),
              l * st * (1.0 - T), st * (1.0 - l * l * T), l * (T - 1.0), l * l * T * (1.0 - T),
              st * (1.0 - l * l * T), l * st * (1.0 - T), l * l * T * (1.0 - T), l * (T - 1.0);
    gen.g3 /= d;
    return gen;
}

Eigen::Matrix<std::complex<double>, 6, 6> exponent_matrix(const QuadraticGenerator& gen) {
    Eigen::Matrix<Complex, 6, 6> q = Eigen::Matrix<Complex, 6, 6>::Zero();
    q.block<4, 4>(0, 0) = gen.g3.cast<Complex>();
    q.block<4, 2>(0, 4) = gen.g2;
    q.block<2, 2>(4, 4) = gen.g1.cast<Complex>();
    return q + q.transpose();
}

std::complex<double> raw_moment(const QuadraticGenerator& gen, const MomentIndex& idx) {
    check_index(idx, kMaxHeraldOrder);
    return raw_moment_impl(gen, idx);
}

std::complex<double> raw_moment_pairing_sum(const QuadraticGenerator& gen,
                                            const MomentIndex& idx) {
    check_index(idx, kMaxHeraldOrder);
    const int degree = 2 * idx.m + 2 * idx.n + idx.s + idx.t;
    if (degree % 2 != 0) return 0.0;
    if (degree > 8) {
        throw std::invalid_argument("raw_moment_pairing_sum: total order " +
                                    std::to_string(degree) + " exceeds the enumeration cap 8");
    }
    const Eigen::Matrix<Complex, 6, 6> a = exponent_matrix(gen);

    std::vector<int> indices;
    indices.reserve(degree);
    const std::array<int, 6> counts = {idx.m, idx.m, idx.n, idx.n, idx.t, idx.s};
    for (int var = 0; var < 6; ++var) {
        for (int k = 0; k < counts[var]; ++k) indices.push_back(var);
    }

    // Sum over perfect pairings: fix the first unused index, pair it with each
    // later unused one, recurse.
    std::vector<bool> used(indices.size(), false);
    auto pairings = [&](auto&& self, int remaining) -> Complex {
        if (remaining == 0) return 1.0;
        size_t first = 0;
        while (used[first]) ++first;
        used[first] = true;
        Complex total = 0.0;
        for (size_t j = first + 1; j < indices.size(); ++j) {
            if (used[j]) continue;
            used[j] = true;
            total += a(indices[first], indices[j]) * self(self, remaining - 2);
            used[j] = false;
        }
        used[first] = false;
        return total;
    };
    const Complex sum = pairings(pairings, static_cast<int>(indices.size()));
    // The pairing sum already is the full mixed partial; only the operator
    // normalization and the quadrature phases apply on top.
    const double norm = gen.a0 * std::pow(2.0, -(idx.m + idx.n)) /
                        (factorial(idx.m) * factorial(idx.n));
    static const Complex quarter_turns[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex phase = quarter_turns[((idx.t - idx.s) % 4 + 4) % 4];
    return norm * phase * sum;
}

double probability(int m, int n, double lambda, double transmissivity) {
    const MomentIndex idx{m, n, 0, 0};
    check_index(idx, kMaxProbabilityOrder);
    const QuadraticGenerator gen = assemble(lambda, transmissivity);
    return real_checked(raw_moment_impl(gen, idx), "probability");
}

MomentResult symmetric_moments(int m, int n, double lambda, double transmissivity) {
    check_index(MomentIndex{m, n, 0, 0}, kMaxHeraldOrder);
    const QuadraticGenerator gen = assemble(lambda, transmissivity);
    const double p = real_checked(raw_moment_impl(gen, {m, n, 0, 0}), "probability");
    if (p < kMinProbability) {
        throw std::runtime_error(
            "symmetric_moments: heralding probability " + std::to_string(p) +
            " vanishes (below 1e-300); use the closed-form limits instead");
    }
    const double q1 = real_checked(raw_moment_impl(gen, {m, n, 1, 0}), "moment q");
    const double q2 = real_checked(raw_moment_impl(gen, {m, n, 2, 0}), "moment q^2");
    const double p1 = real_checked(raw_moment_impl(gen, {m, n, 0, 1}), "moment p");
    const double p2 = real_checked(raw_moment_impl(gen, {m, n, 0, 2}), "moment p^2");

    MomentResult out;
    out.probability = p;
    out.mean_q = q1 / p;
    out.mean_p = p1 / p;
    out.var_q = q2 / p - out.mean_q * out.mean_q;
    out.var_p = p2 / p - out.mean_p * out.mean_p;
    return out;
}

}  // namespace ngsvs::generating_function

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
#include <stdexcept>

#include <doctest.h>

#include "ngsvs/squeezing.hpp"

using namespace ngsvs::distill_opt;
using ngsvs::squeezing::OpKind;

namespace {
const Operation k2PS{OpKind::kSubtraction, 2};
const Operation k2PC{OpKind::kCatalysis, 2};
const Operation k1PC{OpKind::kCatalysis, 1};
}  // namespace

TEST_CASE("enhancement points") {
    SUBCASE("reference comparison point") {
        const DistillationPoint p = enhancement(k2PS, 0.27, 0.9);
        CHECK(p.d_ng == doctest::Approx(0.11896066956956958).epsilon(1e-12));
        CHECK(p.probability == doctest::Approx(0.00045690212032064047).epsilon(1e-12));
        CHECK(p.r_product == doctest::Approx(p.d_ng * p.probability).epsilon(1e-15));
    }
    SUBCASE("frozen r_product near the optimum") {
        const DistillationPoint p = enhancement(k2PS, 0.38, 0.55);
        CHECK(p.r_product == doctest::Approx(0.0007215847271983447).epsilon(1e-12));
    }
    SUBCASE("nothing to distill from vacuum") {
        CHECK(enhancement({OpKind::kAddition, 2}, 0.0, 0.5).d_ng <= 1e-10);
        CHECK(enhancement(k1PC, 0.0, 0.5).d_ng <= 1e-10);
        // subtraction cannot herald on a vacuum signal at all
        CHECK_THROWS_AS(enhancement(k2PS, 0.0, 0.5), std::runtime_error);
    }
    SUBCASE("product invariant") {
        for (double lambda : {0.2, 0.4, 0.6}) {
            for (double t : {0.2, 0.5, 0.8}) {
                const DistillationPoint p = enhancement(k2PC, lambda, t);
                CHECK(std::abs(p.r_product - p.d_ng * p.probability) < 1e-14);
            }
        }
    }
}

TEST_CASE("transmissivity optimization") {
    SUBCASE("boundary optimum below the interior region") {
        const OptimizeTResult r = optimize_T(k2PS, 0.2, Objective::kMinVariance);
        CHECK(r.t_star == 1.0);
    }
    SUBCASE("interior optimum matches the radical formula") {
        const OptimizeTResult r = optimize_T(k2PS, 0.5, Objective::kMinVariance);
        CHECK(std::abs(r.t_star - 0.6506291914393881) < 1e-4);
        CHECK(r.value == doctest::Approx(0.15903372997052556).epsilon(1e-7));
    }
    SUBCASE("addition is always optimal at unit transmissivity") {
        for (int order = 1; order <= 3; ++order) {
            const OptimizeTResult r =
                optimize_T({OpKind::kAddition, order}, 0.45, Objective::kMinVariance);
            CHECK(r.t_star == 1.0);
        }
    }
    SUBCASE("probability-weighted objective moves the optimum inward") {
        const OptimizeTResult r = optimize_T(k2PS, 0.38, Objective::kMaxRProduct);
        CHECK(r.t_star < 0.9);
        CHECK(r.t_star > 0.1);
        CHECK(r.value > 0.0);
    }
}

TEST_CASE("r_product optimization") {
    SUBCASE("two-photon subtraction") {
        const OptimumRecord rec = optimize_R(k2PS);
        // frozen against an independent high-precision optimizer run
        CHECK(std::abs(rec.lambda_opt - 0.3763135802916835) < 1e-3);
        CHECK(std::abs(rec.t_opt - 0.5554539731099445) < 1e-3);
        CHECK(rec.r_max == doctest::Approx(0.0007225349134221893).epsilon(1e-6));
        CHECK(rec.p_at_opt == doctest::Approx(0.01576276481403908).epsilon(1e-4));
        CHECK(rec.d_at_opt == doctest::Approx(0.045838082464991464).epsilon(1e-4));
        CHECK(rec.var_svs_at_opt == doctest::Approx(0.2265786041201955).epsilon(1e-4));

        // self-consistency and interior stationarity
        const DistillationPoint at = enhancement(k2PS, rec.lambda_opt, rec.t_opt);
        CHECK(std::abs(at.r_product - rec.r_max) < 1e-12);
        for (double dl : {-1e-3, 1e-3}) {
            CHECK(enhancement(k2PS, rec.lambda_opt + dl, rec.t_opt).r_product <=
                  rec.r_max + 1e-12);
            CHECK(enhancement(k2PS, rec.lambda_opt, rec.t_opt + dl).r_product <=
                  rec.r_max + 1e-12);
        }
    }
    SUBCASE("two-photon catalysis") {
        const OptimumRecord rec = optimize_R(k2PC);
        CHECK(std::abs(rec.lambda_opt - 0.2225549714440334) < 1e-3);
        CHECK(std::abs(rec.t_opt - 0.13402138419805087) < 1e-3);
        CHECK(rec.r_max == doctest::Approx(0.0023494725271456136).epsilon(1e-6));
        CHECK(rec.p_at_opt == doctest::Approx(0.019945997750891207).epsilon(1e-4));
        CHECK(rec.d_at_opt == doctest::Approx(0.11779167713185151).epsilon(1e-4));
    }
    SUBCASE("reruns are bit-identical") {
        const OptimumRecord a = optimize_R(k2PS);
        const OptimumRecord b = optimize_R(k2PS);
        CHECK(a.r_max == b.r_max);
        CHECK(a.lambda_opt == b.lambda_opt);
        CHECK(a.t_opt == b.t_opt);
    }
    SUBCASE("non-distillable operations are rejected") {
        CHECK_THROWS_AS(optimize_R({OpKind::kAddition, 2}), std::invalid_argument);
        CHECK_THROWS_AS(optimize_R(k1PC), std::invalid_argument);
    }
}

TEST_CASE("curves") {
    SUBCASE("row counts follow the resolution") {
        CHECK(curve(k2PS, SweepKind::kVarVsLambdaAtTopt, 25).size() == 25);
        CHECK(curve(k2PS, SweepKind::kDAndPVsT, 100, 0.38).size() == 100);
        CHECK(curve(k2PC, SweepKind::kRContour, 12).size() == 144);
    }
    SUBCASE("enhancement grows toward unit transmissivity while probability dies") {
        const auto rows = curve(k2PS, SweepKind::kDAndPVsT, 60, 0.38);
        CHECK(rows.back().d_ng > rows.front().d_ng);
        CHECK(rows.back().d_ng > 0.9 * 0.065);
        CHECK(rows.back().probability < 1e-6);
        CHECK(rows.front().probability > rows.back().probability);
    }
    SUBCASE("catalysis beats subtraction at small squeezing") {
        const auto ps = curve(k2PS, SweepKind::kVarVsLambdaAtTopt, 10);
        const auto pc = curve(k2PC, SweepKind::kVarVsLambdaAtTopt, 10);
        // first row sits at lambda = 0.01, second at ~0.118
        CHECK(pc[1].var < ps[1].var);
        CHECK(pc[1].lambda == ps[1].lambda);
    }
    SUBCASE("contour of r_product peaks near the table optimum") {
        const auto rows = curve(k2PS, SweepKind::kRContour, 40);
        double best = -1.0, best_l = 0, best_t = 0;
        for (const auto& p : rows) {
            if (p.r_product > best) {
                best = p.r_product;
                best_l = p.lambda;
                best_t = p.transmissivity;
            }
        }
        CHECK(std::abs(best_l - 0.3763) < 0.03);
        CHECK(std::abs(best_t - 0.5555) < 0.03);
    }
    SUBCASE("identity boundary for catalysis") {
        // d_ng -> 0 as T -> 1 for catalysis
        const auto rows = curve(k2PC, SweepKind::kDAndPVsT, 50, 0.22);
        CHECK(std::abs(rows.back().d_ng) < 1e-3);
    }
}

TEST_CASE("decibel helper") {
    CHECK(to_db(0.5) == doctest::Approx(0.0));
    // 2.4 dB of squeezing at lambda = 0.27
    CHECK(to_db(ngsvs::squeezing::var_svs(0.27)) == doctest::Approx(2.4).epsilon(0.01));
    CHECK_THROWS_AS(to_db(0.0), std::invalid_argument);
}

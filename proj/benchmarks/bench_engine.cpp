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

#include <benchmark/benchmark.h>

#include "ngsvs/distill_opt.hpp"
#include "ngsvs/fock_oracle.hpp"
#include "ngsvs/generating_function.hpp"
#include "ngsvs/squeezing.hpp"

namespace gf = ngsvs::generating_function;
namespace fo = ngsvs::fock_oracle;
namespace sq = ngsvs::squeezing;
namespace dopt = ngsvs::distill_opt;

static void BM_Probability2PS(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(gf::probability(0, 2, 0.38, 0.55));
    }
}
BENCHMARK(BM_Probability2PS);

static void BM_MomentsCatalysis(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gf::symmetric_moments(order, order, 0.3, 0.4));
    }
}
BENCHMARK(BM_MomentsCatalysis)->Arg(1)->Arg(2)->Arg(4)->Arg(6);

static void BM_FockHerald(benchmark::State& state) {
    const int cutoff = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fo::simulate_heralded(0, 2, 0.5, 0.5, cutoff));
    }
}
BENCHMARK(BM_FockHerald)->Arg(32)->Arg(64)->Arg(128);

static void BM_OptimizeT(benchmark::State& state) {
    const sq::Operation op{sq::OpKind::kSubtraction, 2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(dopt::optimize_T(op, 0.5, dopt::Objective::kMinVariance));
    }
}
BENCHMARK(BM_OptimizeT);

static void BM_Enhancement2PC(benchmark::State& state) {
    const sq::Operation op{sq::OpKind::kCatalysis, 2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(dopt::enhancement(op, 0.22, 0.13));
    }
}
BENCHMARK(BM_Enhancement2PC);

BENCHMARK_MAIN();

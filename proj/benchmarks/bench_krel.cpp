// Copyright 2026 The krel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "krel/experiments.hpp"
#include "krel/harness.hpp"
#include "krel/transpile.hpp"

namespace krel {
namespace {

KRelation dense(SemiringKind k, std::size_t arity, std::size_t width, std::uint64_t seed) {
  Rng rng(seed);
  KRelation r(k, arity);
  std::vector<Tuple> ts{Tuple{}};
  for (std::size_t i = 0; i < arity; ++i) {
    std::vector<Tuple> next;
    for (const auto& t : ts) {
      for (std::size_t d = 0; d < width; ++d) {
        Tuple u = t;
        u.emplace_back("e" + std::to_string(d));
        next.push_back(std::move(u));
      }
    }
    ts = std::move(next);
  }
  for (const auto& t : ts) r.set(t, gen_value(rng, k));
  return r;
}

void BM_Divide(benchmark::State& state) {
  auto width = static_cast<std::size_t>(state.range(0));
  KRelation r1 = dense(SemiringKind::Bag, 2, width, 1);
  KRelation r2 = dense(SemiringKind::Bag, 1, width, 2);
  for (auto _ : state) benchmark::DoNotOptimize(divide(r1, r2));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Divide)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_Product(benchmark::State& state) {
  auto width = static_cast<std::size_t>(state.range(0));
  KRelation r1 = dense(SemiringKind::Provenance, 1, width, 1);
  KRelation r2 = dense(SemiringKind::Provenance, 1, width, 2);
  for (auto _ : state) benchmark::DoNotOptimize(product(r1, r2));
}
BENCHMARK(BM_Product)->Arg(16)->Arg(64);

void BM_BagDivisionWitness(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bag_division_witness(n));
}
BENCHMARK(BM_BagDivisionWitness)->Arg(10)->Arg(30)->Arg(100);

void BM_EvalAlgebra(benchmark::State& state) {
  GenConfig cfg;
  cfg.seed = 5;
  cfg.allow_div = true;
  Schema s = default_schema();
  KDatabase db = gen_database(cfg, s);
  std::vector<ExprPtr> es;
  Rng rng(6);
  for (int i = 0; i < 64; ++i) es.push_back(gen_algebra_expr(rng, cfg, s));
  for (auto _ : state) {
    for (const auto& e : es) benchmark::DoNotOptimize(eval(*e, db));
  }
}
BENCHMARK(BM_EvalAlgebra);

void BM_RelationOf(benchmark::State& state) {
  GenConfig cfg;
  cfg.seed = 5;
  cfg.semiring = SemiringKind::Fuzzy;
  cfg.adom_size = static_cast<std::size_t>(state.range(0));
  cfg.max_supp_rows = 12;
  cfg.allow_forall = true;
  Schema s = default_schema();
  KDatabase db = gen_database(cfg, s);
  KStructure st = KStructure::active(db);
  std::vector<FormulaPtr> fs;
  Rng rng(7);
  for (int i = 0; i < 32; ++i) fs.push_back(gen_formula(rng, cfg, s));
  for (auto _ : state) {
    for (const auto& f : fs) benchmark::DoNotOptimize(relation_of(*f, st));
  }
}
BENCHMARK(BM_RelationOf)->Arg(4)->Arg(8);

void BM_Translate(benchmark::State& state) {
  GenConfig cfg;
  cfg.allow_div = true;
  cfg.allow_forall = true;
  Schema s = default_schema();
  std::vector<ExprPtr> es;
  std::vector<FormulaPtr> fs;
  Rng rng(8);
  for (int i = 0; i < 64; ++i) {
    es.push_back(gen_algebra_expr(rng, cfg, s));
    fs.push_back(gen_formula(rng, cfg, s));
  }
  for (auto _ : state) {
    for (const auto& e : es) benchmark::DoNotOptimize(algebra_to_calculus(*e, s));
    for (const auto& f : fs) benchmark::DoNotOptimize(calculus_to_algebra(*f, s));
  }
}
BENCHMARK(BM_Translate);

void BM_Parse(benchmark::State& state) {
  GenConfig cfg;
  cfg.allow_div = true;
  Schema s = default_schema();
  std::vector<std::string> texts;
  Rng rng(9);
  for (int i = 0; i < 64; ++i) texts.push_back(to_string(*gen_algebra_expr(rng, cfg, s)));
  for (auto _ : state) {
    for (const auto& t : texts) benchmark::DoNotOptimize(parse_algebra(t));
  }
}
BENCHMARK(BM_Parse);

void BM_MonusAxioms(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(monus_axiom_suite(SemiringKind::Fuzzy, 1000, 1));
}
BENCHMARK(BM_MonusAxioms);

}  // namespace
}  // namespace krel

BENCHMARK_MAIN();

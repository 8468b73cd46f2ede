#include <benchmark/benchmark.h>

#include <random>

#include "macdecay/catalog.hpp"
#include "macdecay/decay.hpp"

using namespace macdecay;

namespace {

const CodeSpec& c22() {
  static const CodeSpec s =
      CodeSpec::create(make_period_tower(PeriodSpec::for_degree(17, 4), RingTag::Eisenstein, 2, 2), QuadElem(BigRat(1), BigRat(1), RingTag::Eisenstein), 2);
  return s;
}

const CodeSpec& c21() {
  static const CodeSpec s =
      CodeSpec::create(make_period_tower(PeriodSpec::for_degree(5, 2), RingTag::Gaussian, 2, 1), QuadElem(BigRat(1), BigRat(1), RingTag::Gaussian), 1);
  return s;
}

CoeffBox random_box(const CodeSpec& s, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-2, 2);
  CoeffBox box(static_cast<std::size_t>(s.users()), std::vector<long>(static_cast<std::size_t>(s.rank())));
  for (auto& v : box) {
    for (auto& x : v) x = d(rng);
    v[0] = 1;
  }
  return box;
}

void BM_ExactDetC22(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto box = random_box(c22(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(codeword_det(c22(), box));
}
BENCHMARK(BM_ExactDetC22);

void BM_FastDetC22(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto box = random_box(c22(), rng);
  const auto k = FastKernel::create(c22());
  const auto b1 = k->block(1, box[0]), b2 = k->block(2, box[1]);
  const FastKernel::Block* blocks[] = {&b1, &b2};
  for (auto _ : state) benchmark::DoNotOptimize(k->det(blocks));
}
BENCHMARK(BM_FastDetC22);

void BM_AbsDetBall(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const ExactDet d = codeword_det(c22(), random_box(c22(), rng));
  for (auto _ : state) benchmark::DoNotOptimize(abs_det_ball(d, c22().p()));
}
BENCHMARK(BM_AbsDetBall);

void BM_MinAbsDetC21(benchmark::State& state) {
  SearchOptions o;
  o.workers = 1;
  const std::vector<int> bounds{static_cast<int>(state.range(0)), 1};
  for (auto _ : state) benchmark::DoNotOptimize(min_abs_det(c21(), bounds, o));
}
BENCHMARK(BM_MinAbsDetC21)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

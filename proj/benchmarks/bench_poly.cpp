#include <benchmark/benchmark.h>

#include <random>

#include "contact_focus/closure.hpp"
#include "contact_focus/poly.hpp"

using namespace contact_focus;

namespace {

Poly random_poly(std::mt19937_64& rng, int m, int terms, int degree) {
  Poly p(m);
  std::uniform_int_distribution<int> slot(0, 2 * m), deg(0, degree), num(-9, 9), den(1, 5);
  for (int k = 0; k < terms; ++k) {
    Poly::Exponents e(static_cast<std::size_t>(1 + 2 * m), 0);
    for (int i = deg(rng); i > 0; --i) e[static_cast<std::size_t>(slot(rng))] += 1;
    p.add_term(e, Rational(num(rng), den(rng)));
  }
  return p;
}

void BM_Poisson(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const auto terms = static_cast<int>(state.range(0));
  const Poly f = random_poly(rng, 2, terms, 4), g = random_poly(rng, 2, terms, 4);
  for (auto _ : state) {
    auto br = poisson(f, g);
    benchmark::DoNotOptimize(br.term_count());
  }
}
BENCHMARK(BM_Poisson)->Arg(4)->Arg(16)->Arg(64);

void BM_VerifyHarmonic(benchmark::State& state) {
  const auto data = harmonic_case();
  for (auto _ : state) {
    auto report = verify_closure(data);
    benchmark::DoNotOptimize(report.structural_ok);
  }
}
BENCHMARK(BM_VerifyHarmonic);

}  // namespace

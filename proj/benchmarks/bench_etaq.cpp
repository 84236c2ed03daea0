#include <benchmark/benchmark.h>

#include "etaq/asd.hpp"
#include "etaq/catalog.hpp"
#include "etaq/ligozat.hpp"
#include "etaq/qseries.hpp"
#include "etaq/search.hpp"

using namespace etaq;

namespace {

FracSeries dense_series(long long terms, unsigned seed) {
    std::vector<FracSeries::Term> v;
    for (long long i = 0; i < terms; ++i)
        v.emplace_back(i, rat((seed + 17 * i) % 23 - 11, 1 + (i % 3)));
    return FracSeries::from_terms(1, std::move(v), terms);
}

const EtaQuotient& worked_quotient() {
    static EtaQuotient q = block("H1").object;
    return q;
}

CoefficientTable worked_table(const char* name, long long rows) {
    const EtaQuotient& q = block(name).object;
    Rat lead = q.leading_exponent();
    long long mu = lead.get_den().get_si();
    mpz_class c;
    Rat top = lead + rat(rows + 2, mu);
    mpz_cdiv_q(c.get_mpz_t(), top.get_num().get_mpz_t(), top.get_den().get_mpz_t());
    return CoefficientTable::from_series(q.expand(c.get_si()), name);
}

void BM_SeriesMultiply(benchmark::State& state) {
    FracSeries a = dense_series(state.range(0), 3);
    FracSeries b = dense_series(state.range(0), 7);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SeriesMultiply)->Arg(64)->Arg(128)->Arg(256);

void BM_EulerFunction(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(euler_function(state.range(0)));
}
BENCHMARK(BM_EulerFunction)->Arg(200)->Arg(500);

// Dominant cost of the search: integer eta expansion plus the cube root.
void BM_ExpandCubeRoot(benchmark::State& state) {
    const EtaQuotient& q = worked_quotient();
    for (auto _ : state) benchmark::DoNotOptimize(q.expand(state.range(0)));
}
BENCHMARK(BM_ExpandCubeRoot)->Arg(64)->Arg(160)->Arg(512);

void BM_Case1Scan(benchmark::State& state) {
    CoefficientTable h1 = worked_table("H1", 500);
    for (auto _ : state) benchmark::DoNotOptimize(case1_scan(h1, 13, 38));
}
BENCHMARK(BM_Case1Scan);

void BM_Case2Scan(benchmark::State& state) {
    CoefficientTable h1 = worked_table("H1", 500);
    CoefficientTable h2 = worked_table("H2", 500);
    for (auto _ : state) benchmark::DoNotOptimize(case2_scan(h1, h2, 5, 100));
}
BENCHMARK(BM_Case2Scan);

void BM_ClassifyPrime(benchmark::State& state) {
    CoefficientTable h1 = worked_table("H1", 500);
    CoefficientTable h2 = worked_table("H2", 500);
    for (auto _ : state) benchmark::DoNotOptimize(classify_prime(h1, h2, 13, 38));
}
BENCHMARK(BM_ClassifyPrime);

void BM_CheckLigozat(benchmark::State& state) {
    EtaQuotient cube = worked_quotient().scaled(rat(3));
    for (auto _ : state) benchmark::DoNotOptimize(check_ligozat(cube, 16));
}
BENCHMARK(BM_CheckLigozat);

void BM_Kronecker(benchmark::State& state) {
    for (auto _ : state) {
        long long acc = 0;
        for (long long a = -300; a <= 300; ++a) acc += kronecker(a, 4095);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_Kronecker);

} // namespace

BENCHMARK_MAIN();

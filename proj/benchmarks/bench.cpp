#include <benchmark/benchmark.h>

#include "bncert/audit.hpp"

namespace {

void BM_ComputeBounds(benchmark::State& state) {
  bncert::Int d = 0;
  for (auto _ : state) {
    bncert::Bounds b = bncert::compute_bounds(100 + (d++ % 50), 80, 7);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_ComputeBounds);

void BM_DecideGood(benchmark::State& state) {
  const bncert::Instance inst{85, 65, 5, 3};
  for (auto _ : state) {
    bncert::Prover prover;
    bncert::Decision dec = prover.decide_good(inst);
    benchmark::DoNotOptimize(dec);
  }
}
BENCHMARK(BM_DecideGood);

void BM_VerifyCertificate(benchmark::State& state) {
  bncert::Prover prover;
  bncert::Decision dec = prover.decide_good({85, 65, 5, 3});
  for (auto _ : state) {
    bncert::VerifyResult vr = bncert::verify_certificate(*dec.certificate);
    benchmark::DoNotOptimize(vr);
  }
}
BENCHMARK(BM_VerifyCertificate);

void BM_CertificateRoundTrip(benchmark::State& state) {
  bncert::Prover prover;
  bncert::Decision dec = prover.decide_good({85, 65, 5, 3});
  std::string text = bncert::certificate_to_json(*dec.certificate);
  for (auto _ : state) {
    bncert::Certificate cert = bncert::certificate_from_json(text);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(BM_CertificateRoundTrip);

void BM_AuditAppendixSingleRank(benchmark::State& state) {
  bncert::SweepRange range;
  range.r_min = 5;
  range.r_max = 5;
  for (auto _ : state) {
    bncert::SweepReport report = bncert::audit_appendix(range, 1);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_AuditAppendixSingleRank);

}  // namespace

BENCHMARK_MAIN();

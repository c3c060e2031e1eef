#include <benchmark/benchmark.h>

#include "cholex/engine.h"
#include "cholex/extraction.h"
#include "cholex/hf.h"
#include "cholex/soundness.h"
#include "corpus.h"
#include "gen.h"

using namespace cholex;

namespace {

std::vector<cholex::testing::TheoremInstance> random_theorems(int n, int depth) {
  cholex::testing::Gen g(7);
  std::vector<cholex::testing::TheoremInstance> out;
  for (int i = 0; i < n; ++i) out.push_back(g.theorem(depth));
  return out;
}

const proof_file::Statement& succ_statement() {
  static auto f = cholex::testing::load_corpus("chol-succ.cholex");
  return f.statements.front();
}

}  // namespace

static void BM_KernelCheck(benchmark::State& st) {
  auto ths = random_theorems(64, static_cast<int>(st.range(0)));
  for (auto _ : st)
    for (const auto& t : ths) benchmark::DoNotOptimize(hol::check_proof(hol::LogicMode::CHOL, t.proof, t.sequent));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(ths.size()));
}
BENCHMARK(BM_KernelCheck)->Arg(2)->Arg(4);

static void BM_TranslateProof(benchmark::State& st) {
  auto ths = random_theorems(16, 3);
  for (auto _ : st)
    for (const auto& t : ths) benchmark::DoNotOptimize(soundness::translate_proof(t.proof, t.sequent));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(ths.size()));
}
BENCHMARK(BM_TranslateProof);

static void BM_CertificateCheck(benchmark::State& st) {
  auto ths = random_theorems(16, 3);
  std::vector<soundness::Certificate> certs;
  for (const auto& t : ths) certs.push_back(soundness::translate_proof(t.proof, t.sequent));
  for (auto _ : st)
    for (const auto& c : certs) benchmark::DoNotOptimize(izf::izf_check(izf::Context{}, c.closed_proof()));
}
BENCHMARK(BM_CertificateCheck);

static void BM_ExtractSuccessor(benchmark::State& st) {
  const auto& s = succ_statement();
  for (auto _ : st) benchmark::DoNotOptimize(extraction::extract_hol(s.proof, s.sequent.goal));
}
BENCHMARK(BM_ExtractSuccessor)->Unit(benchmark::kMillisecond);

static void BM_RunSuccessor(benchmark::State& st) {
  const auto& s = succ_statement();
  auto x = extraction::extract_hol(s.proof, s.sequent.goal);
  unsigned long n = static_cast<unsigned long>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(tt0::apply_value(x.program, extraction::inject_nat(n)));
}
BENCHMARK(BM_RunSuccessor)->Arg(0)->Arg(10)->Arg(50);

static void BM_OracleCertificate(benchmark::State& st) {
  auto ths = random_theorems(16, 3);
  std::vector<izf::Formula> goals;
  for (const auto& t : ths) goals.push_back(soundness::translate_proof(t.proof, t.sequent).closed_goal());
  unsigned cutoff = static_cast<unsigned>(st.range(0));
  for (auto _ : st)
    for (const auto& g : goals) benchmark::DoNotOptimize(hf::hf_eval_formula(g, cutoff));
}
BENCHMARK(BM_OracleCertificate)->Arg(4)->Arg(8);
BENCHMARK_MAIN();

// Times the OpenMP kernels against their serial reference paths and checks
// that both produce the same result.
//
//   dla_bench [--instances N] [--queries N] [--dims N] [--sentences N] [--repeat N]

#include <chrono>
#include <cstdio>
#include <random>

#include <CLI11.hpp>

#include "dla/knn.hpp"
#include "dla/parallel.hpp"
#include "dla/syntax.hpp"

using namespace dla;

namespace {

template <typename F>
double best_of(int repeat, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeat; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

SparseVector random_vector(std::mt19937_64& rng, const std::string& lex, std::uint32_t n_features) {
  SparseVector v{lex, {}, 10};
  for (std::uint32_t f = 0; f < n_features; ++f)
    if (rng() % 3 == 0) {
      std::uint64_t raw = 1 + rng() % 10;
      v.values[f] = {raw, raw / 10.0};
    }
  return v;
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-18s serial %9.4fs  parallel %9.4fs  speedup %5.2fx  %s\n", name, serial, parallel,
              serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs parallel kernel timings"};
  std::size_t instances = 2000, queries = 2000, sentences = 50000;
  std::uint32_t dims = 50;
  int repeat = 3;
  app.add_option("--instances", instances, "Stored instances in the k-NN base");
  app.add_option("--queries", queries, "Queries to classify");
  app.add_option("--dims", dims, "Feature instances (each gives two value dimensions)");
  app.add_option("--sentences", sentences, "Sentences in the synthetic tagged corpus");
  app.add_option("--repeat", repeat, "Timing repetitions (best is reported)");
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d\n", max_threads());
  std::mt19937_64 rng(42);
  bool all_same = true;

  // k-NN classification
  std::vector<SparseVector> stored, asked;
  std::vector<bool> labels;
  for (std::size_t i = 0; i < instances; ++i) {
    stored.push_back(random_vector(rng, "s" + std::to_string(i), dims));
    labels.push_back(rng() % 2);
  }
  for (std::size_t i = 0; i < queries; ++i) asked.push_back(random_vector(rng, "q" + std::to_string(i), dims));
  std::vector<const SparseVector*> sp, qp;
  for (const auto& v : stored) sp.push_back(&v);
  for (const auto& v : asked) qp.push_back(&v);
  std::vector<DimId> d;
  std::vector<double> w;
  for (DimId i = 0; i < 2 * dims; ++i) {
    d.push_back(i);
    w.push_back(1.0 / (1 + i % 7));
  }
  auto base = build_instance_base(sp, labels, d, w);
  std::vector<Verdict> vs, vp;
  double ts = best_of(repeat, [&] { vs = classify_batch_serial(base, qp, 9); });
  double tp = best_of(repeat, [&] { vp = classify_batch(base, qp, 9); });
  report("classify_batch", ts, tp, vs == vp);
  all_same &= vs == vp;

  // syntax feature extraction
  Corpus corpus;
  corpus.level = CorpusLevel::Tagged;
  const char* lemmas[] = {"dog", "cat", "run", "the", "a", "big", "eat", "quickly", "see", "tree"};
  const char* tags[] = {"NN", "VB", "DT", "JJ", "RB", "IN"};
  for (std::size_t s = 0; s < sentences; ++s) {
    Sentence sent;
    for (std::size_t i = 0, len = 5 + rng() % 20; i < len; ++i)
      sent.tokens.push_back({"w", lemmas[rng() % 10], tags[rng() % 6], std::nullopt});
    corpus.sentences.push_back(std::move(sent));
  }
  std::set<std::string> targets = {"dog", "cat", "run", "big", "tree"};
  EventCounts es, ep;
  ts = best_of(repeat, [&] { es = extract_features_serial(corpus, targets); });
  tp = best_of(repeat, [&] { ep = extract_features(corpus, targets); });
  report("extract_features", ts, tp, es == ep);
  all_same &= es == ep;

  return all_same ? 0 : 1;
}

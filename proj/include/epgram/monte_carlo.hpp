#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "epgram/sim.hpp"

namespace epgram {

struct McConfig {
  std::size_t replicates = 1;
  int n = 200;
  std::uint64_t seed = 0;
  int burn_in = kDefaultBurnIn;
  unsigned threads = 1;
};

/// Ensemble summary: elementwise mean of the per-replicate metric vectors,
/// plus the raw traces when requested. Detection rates are means of 0/1
/// metrics.
struct McSummary {
  std::size_t replicates = 0;
  std::vector<double> mean;
  std::vector<std::vector<double>> traces;
};

/// Runs `metric(series, replicate_index)` over independently seeded
/// replicates. Replicate i draws from the stream Rng::for_replicate(seed, i),
/// results are aggregated in index order, and failures surface as
/// ReplicateFailure carrying the lowest failing index — so serial and
/// multi-threaded runs of the same seed produce bit-identical summaries.
template <typename Metric>
McSummary monte_carlo(const SimModel& model, const McConfig& cfg,
                      Metric&& metric, bool keep_traces = false) {
  if (cfg.replicates < 1) throw ConfigError("replicates must be >= 1");
  const std::size_t r = cfg.replicates;

  std::vector<std::vector<double>> results(r);
  std::vector<std::optional<std::string>> errors(r);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        Rng rng = Rng::for_replicate(cfg.seed, i);
        TimeSeries series = generate(model, cfg.n, rng, cfg.burn_in);
        results[i] = metric(series, i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };

  unsigned workers = std::max(1u, cfg.threads);
  if (workers == 1 || r < 2) {
    run_range(0, r);
  } else {
    workers = std::min<unsigned>(workers, static_cast<unsigned>(r));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (r + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      std::size_t begin = static_cast<std::size_t>(w) * chunk;
      std::size_t end = std::min(r, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < r; ++i) {
    if (errors[i]) throw ReplicateFailure(i, *errors[i]);
  }

  McSummary summary;
  summary.replicates = r;
  summary.mean.assign(results[0].size(), 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    if (results[i].size() != summary.mean.size()) {
      throw NumericError("metric vectors disagree in length across replicates");
    }
    for (std::size_t j = 0; j < summary.mean.size(); ++j) {
      summary.mean[j] += results[i][j];
    }
  }
  for (double& v : summary.mean) v /= static_cast<double>(r);
  if (keep_traces) summary.traces = std::move(results);
  return summary;
}

}  // namespace epgram

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "smp/evaluate.hpp"

namespace smp {

namespace {

constexpr std::uint64_t kStreamAdap = 1;
constexpr std::uint64_t kStreamAlg = 2;
constexpr std::uint64_t kStreamGreedy = 3;

// Runs the strategy with types drawn lazily in probe order.
ProbePath walk(const ProbeStrategy& strategy, const Universe& universe, const TypeDistribution& dist,
               std::mt19937_64& engine) {
  ProbePath path;
  if (const auto* tree = dynamic_cast<const DecisionTree*>(&strategy)) {
    DecisionTree::NodeId n = tree->root();
    while (!tree->is_leaf(n)) {
      const ElementId e = tree->element(n);
      const TypeId t = sample_type(universe, dist, e, engine);
      path.push_back(Observation{e, t});
      n = tree->child(n, t);
    }
    return path;
  }
  while (auto e = strategy.next(path)) {
    path.push_back(Observation{*e, sample_type(universe, dist, *e, engine)});
  }
  return path;
}

std::vector<TypeId> redraw(const ProbePath& path, const Universe& universe, const TypeDistribution& dist,
                           std::mt19937_64& engine) {
  std::vector<TypeId> fresh;
  fresh.reserve(path.size());
  for (const auto& o : path) fresh.push_back(sample_type(universe, dist, o.element, engine));
  return fresh;
}

struct BlockSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

using Trial = std::function<double(std::mt19937_64&)>;

EvalReport run_trials(const char* quantity, std::uint64_t stream_id, const Trial& trial, const McOptions& options) {
  if (options.trials == 0) throw ValidationError("Monte Carlo needs at least one trial");
  if (options.block_size == 0) throw ValidationError("Monte Carlo block size must be positive");
  const RandomStream stream(options.seed, stream_id);
  const std::uint64_t blocks = (options.trials + options.block_size - 1) / options.block_size;

  // Centering on the first sample keeps constant estimators exact.
  auto first_engine = stream.engine(0);
  const double shift = trial(first_engine);

  std::vector<BlockSums> sums(blocks);
  auto run_block = [&](std::uint64_t b) {
    auto engine = stream.engine(b);
    const std::uint64_t begin = b * options.block_size;
    const std::uint64_t end = std::min(options.trials, begin + options.block_size);
    BlockSums s;
    for (std::uint64_t i = begin; i < end; ++i) {
      const double d = trial(engine) - shift;
      s.sum += d;
      s.sum_sq += d * d;
    }
    sums[b] = s;
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, options.threads), blocks));
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::uint64_t b = next++; b < blocks; b = next++) run_block(b);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = blocks;
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& s : sums) {
    sum += s.sum;
    sum_sq += s.sum_sq;
  }
  const double n = static_cast<double>(options.trials);
  EvalReport report;
  report.quantity = quantity;
  report.mode = EvalMode::monte_carlo;
  report.value = shift + sum / n;
  report.trials = options.trials;
  report.seed = options.seed;
  double variance = 0.0;
  if (options.trials > 1) variance = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
  report.std_error = std::sqrt(variance / n);
  return report;
}

}  // namespace

EvalReport adap_mc(const ProbeStrategy& strategy, const Universe& universe, const Valuation& f,
                   const TypeDistribution& dist, const McOptions& options) {
  Trial trial = [&](std::mt19937_64& engine) {
    const auto path = walk(strategy, universe, dist, engine);
    std::vector<TypeId> types;
    types.reserve(path.size());
    for (const auto& o : path) types.push_back(o.type);
    return f->eval(TypeSet(std::move(types)));
  };
  return run_trials("adap", kStreamAdap, trial, options);
}

EvalReport alg_mc(const ProbeStrategy& strategy, const Universe& universe, const Valuation& f,
                  const TypeDistribution& dist, const McOptions& options) {
  Trial trial = [&](std::mt19937_64& engine) {
    const auto path = walk(strategy, universe, dist, engine);
    return f->eval(TypeSet(redraw(path, universe, dist, engine)));
  };
  return run_trials("alg", kStreamAlg, trial, options);
}

EvalReport greedy_mc(const ProbeStrategy& strategy, const Universe& universe, const Family& family,
                     const TypeDistribution& dist, const McOptions& options) {
  if (!family) throw ValidationError("greedy_mc: null family");
  Trial trial = [&](std::mt19937_64& engine) {
    const auto path = walk(strategy, universe, dist, engine);
    const auto fresh = redraw(path, universe, dist, engine);
    ContractionState state(family);
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (!state.is_loop(fresh[i])) state = state.contract(fresh[i]);
      if (!state.is_loop(path[i].type)) state = state.contract(path[i].type);
    }
    return static_cast<double>(state.contracted().size());
  };
  return run_trials("greedy", kStreamGreedy, trial, options);
}

}  // namespace smp

#include "ccur/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <ostream>
#include <thread>

#include "ccur/ccur.hpp"
#include "ccur/cpca.hpp"
#include "ccur/csv.hpp"
#include "ccur/random.hpp"
#include "ccur/scoring.hpp"

namespace ccur {

namespace {

// Benchmark-wide constants of the comparison study.
constexpr double kEpsilon = 1e-6;
constexpr double kCpcaAlpha = 1.0;

Eigen::MatrixXd gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd out(rows, cols);
  double* data = out.data();
  const Eigen::Index size = rows * cols;
  for (Eigen::Index i = 0; i < size; ++i) {
    data[i] = rng.normal();
  }
  return out;
}

void threshold_in_place(Eigen::MatrixXd& m, double threshold) {
  m = (m.array().abs() < threshold).select(0.0, m);
}

std::vector<bool> nonzero_row_mask(const Eigen::MatrixXd& m) {
  std::vector<bool> mask(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    mask[static_cast<std::size_t>(i)] = (m.row(i).array() != 0.0).any();
  }
  return mask;
}

void check_config(const SimConfig& config) {
  if (config.n < 1 || config.m < 1 || config.p < 1 || config.latent_dim < 1) {
    throw dimension_error("sim: all dimensions must be positive");
  }
  if (!(config.threshold >= 0)) {
    throw dimension_error("sim: threshold must be nonnegative");
  }
  if (config.replicates < 1) {
    throw dimension_error("sim: replicates must be positive");
  }
  if (config.method_k < 1 ||
      config.method_k > std::min({config.n, config.m, config.p})) {
    throw dimension_error("sim: method_k out of range for the configured dimensions");
  }
  if (config.ccur_c < 1 || config.ccur_c > config.p) {
    throw dimension_error("sim: ccur_c out of range [1, p]");
  }
}

std::vector<int> recovery_counts(const std::vector<Eigen::Index>& ranking,
                                 const std::vector<bool>& mask) {
  const std::size_t len = mask.size();
  if (ranking.size() != len) {
    throw dimension_error("recovery: ranking length " + std::to_string(ranking.size()) +
                          " does not match mask length " + std::to_string(len));
  }
  std::vector<bool> seen(len, false);
  std::vector<int> counts(len, 0);
  int hits = 0;
  for (std::size_t j = 0; j < len; ++j) {
    const Eigen::Index idx = ranking[j];
    if (idx < 0 || static_cast<std::size_t>(idx) >= len ||
        seen[static_cast<std::size_t>(idx)]) {
      throw dimension_error("recovery: ranking is not a permutation of 0.." +
                            std::to_string(len - 1));
    }
    seen[static_cast<std::size_t>(idx)] = true;
    if (mask[static_cast<std::size_t>(idx)]) ++hits;
    counts[j] = hits;
  }
  return counts;
}

// The four Fig-style metrics, in their fixed output order.
constexpr const char* kMetricNames[4] = {"W_columns", "V_columns", "Z_unique_rows",
                                         "Z_shared_rows"};

struct ReplicateCounts {
  // Indexed [method][metric]; row metrics stay empty for CPCA.
  std::vector<std::array<std::vector<int>, 4>> per_method;
};

ReplicateCounts score_replicate(const SimConfig& config, const std::vector<Method>& methods,
                                std::uint64_t replicate_index) {
  const SimInstance inst = generate(config, replicate_index);
  const Eigen::Index p = config.p;
  const Eigen::Index n = config.n;
  const Eigen::Index k = config.method_k;

  // Leverage pieces shared between methods.
  const auto fg_col_lev = column_leverage(inst.x_fg, k);
  const auto bg_col_lev = column_leverage(inst.y_bg, k);
  const auto fg_row_ranking = rank_top(row_leverage(inst.x_fg, k), n);

  ReplicateCounts out;
  out.per_method.resize(methods.size());
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    std::vector<Eigen::Index> col_ranking;
    std::vector<Eigen::Index> row_ranking;
    switch (methods[mi]) {
      case Method::ccur: {
        col_ranking = rank_top(contrastive_scores(fg_col_lev, bg_col_lev, kEpsilon), p);
        std::vector<Eigen::Index> top_c(col_ranking.begin(),
                                        col_ranking.begin() + config.ccur_c);
        const Eigen::Index row_k = std::min(k, std::min(config.ccur_c, n));
        row_ranking = select_rows(inst.x_fg, top_c, row_k, n).first;
        break;
      }
      case Method::cur_fg:
        col_ranking = rank_top(fg_col_lev, p);
        row_ranking = fg_row_ranking;
        break;
      case Method::cur_union: {
        Eigen::MatrixXd stacked(config.n + config.m, p);
        stacked << inst.x_fg, inst.y_bg;
        col_ranking = rank_top(column_leverage(stacked, k), p);
        row_ranking = fg_row_ranking;
        break;
      }
      case Method::cpca: {
        CpcaConfig cpca_config;
        cpca_config.alpha = kCpcaAlpha;
        cpca_config.num_features = p;
        col_ranking = cpca_rank_features(inst.x_fg, inst.y_bg, cpca_config).ranked;
        break;
      }
    }
    auto& slots = out.per_method[mi];
    slots[0] = column_recovery(col_ranking, inst.w_mask);
    slots[1] = column_recovery(col_ranking, inst.v_mask);
    if (!row_ranking.empty()) {
      slots[2] = row_recovery(row_ranking, inst.zu_mask);
      slots[3] = row_recovery(row_ranking, inst.zs_mask);
    }
  }
  return out;
}

RecoveryCurve aggregate(const std::string& method, const std::string& metric,
                        const std::vector<const std::vector<int>*>& replicate_counts) {
  const auto replicates = static_cast<Eigen::Index>(replicate_counts.size());
  const auto len = static_cast<Eigen::Index>(replicate_counts.front()->size());
  RecoveryCurve curve;
  curve.method = method;
  curve.metric = metric;
  curve.mean = Eigen::VectorXd::Zero(len);
  curve.se = Eigen::VectorXd::Zero(len);
  for (Eigen::Index j = 0; j < len; ++j) {
    double sum = 0;
    for (const auto* counts : replicate_counts) {
      sum += (*counts)[static_cast<std::size_t>(j)];
    }
    const double mean = sum / static_cast<double>(replicates);
    curve.mean(j) = mean;
    if (replicates > 1) {
      double ss = 0;
      for (const auto* counts : replicate_counts) {
        const double d = (*counts)[static_cast<std::size_t>(j)] - mean;
        ss += d * d;
      }
      const double sd = std::sqrt(ss / static_cast<double>(replicates - 1));
      curve.se(j) = sd / std::sqrt(static_cast<double>(replicates));
    }
  }
  return curve;
}

} // namespace

SimInstance generate(const SimConfig& config, std::uint64_t replicate_index) {
  check_config(config);
  Rng rng(config.seed, replicate_index);

  // Draw order is part of the reproducibility contract; do not reorder.
  SimInstance inst;
  inst.v = gaussian(rng, config.p, config.latent_dim);
  inst.w = gaussian(rng, config.p, config.latent_dim);
  inst.z_shared = gaussian(rng, config.n, config.latent_dim);
  inst.z_unique = gaussian(rng, config.n, config.latent_dim);
  Eigen::MatrixXd noise_fg = gaussian(rng, config.n, config.p);
  Eigen::MatrixXd s_bg = gaussian(rng, config.m, config.latent_dim);
  Eigen::MatrixXd noise_bg = gaussian(rng, config.m, config.p);

  // Sparsity applies to the loadings and the foreground latents only; the
  // background latents and the noise stay dense.
  threshold_in_place(inst.v, config.threshold);
  threshold_in_place(inst.w, config.threshold);
  threshold_in_place(inst.z_shared, config.threshold);
  threshold_in_place(inst.z_unique, config.threshold);

  inst.x_fg = inst.z_shared * inst.v.transpose() + inst.z_unique * inst.w.transpose() +
              noise_fg;
  inst.y_bg = s_bg * inst.v.transpose() + noise_bg;

  inst.w_mask = nonzero_row_mask(inst.w);
  inst.v_mask = nonzero_row_mask(inst.v);
  inst.zu_mask = nonzero_row_mask(inst.z_unique);
  inst.zs_mask = nonzero_row_mask(inst.z_shared);
  return inst;
}

std::vector<int> column_recovery(const std::vector<Eigen::Index>& ranking,
                                 const std::vector<bool>& mask) {
  return recovery_counts(ranking, mask);
}

std::vector<int> row_recovery(const std::vector<Eigen::Index>& ranking,
                              const std::vector<bool>& mask) {
  return recovery_counts(ranking, mask);
}

Method parse_method(const std::string& label) {
  if (label == "CCUR") return Method::ccur;
  if (label == "CUR-fg") return Method::cur_fg;
  if (label == "CUR-union") return Method::cur_union;
  if (label == "CPCA") return Method::cpca;
  if (label == "CFS") {
    throw dimension_error("method 'CFS' is not provided by this tool");
  }
  throw dimension_error("unknown method '" + label +
                        "' (expected CCUR, CUR-fg, CUR-union, or CPCA)");
}

std::string method_label(Method method) {
  switch (method) {
    case Method::ccur: return "CCUR";
    case Method::cur_fg: return "CUR-fg";
    case Method::cur_union: return "CUR-union";
    case Method::cpca: return "CPCA";
  }
  return "?";
}

BenchmarkResult run_benchmark(const SimConfig& config, const std::vector<Method>& methods,
                              int threads) {
  check_config(config);
  if (methods.empty()) {
    throw dimension_error("run_benchmark: at least one method is required");
  }
  std::vector<Method> unique_methods;
  for (const Method m : methods) {
    if (std::find(unique_methods.begin(), unique_methods.end(), m) == unique_methods.end()) {
      unique_methods.push_back(m);
    }
  }

  const int replicates = config.replicates;
  std::vector<ReplicateCounts> results(static_cast<std::size_t>(replicates));

  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, replicates));

  if (workers == 1) {
    for (int r = 0; r < replicates; ++r) {
      results[static_cast<std::size_t>(r)] =
          score_replicate(config, unique_methods, static_cast<std::uint64_t>(r));
    }
  } else {
    std::vector<std::future<void>> futures;
    futures.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      futures.push_back(std::async(std::launch::async, [&, w] {
        for (int r = w; r < replicates; r += workers) {
          results[static_cast<std::size_t>(r)] =
              score_replicate(config, unique_methods, static_cast<std::uint64_t>(r));
        }
      }));
    }
    for (auto& f : futures) f.get();
  }

  // Aggregation walks replicates in index order, so the outcome does not
  // depend on scheduling.
  BenchmarkResult out;
  for (std::size_t mi = 0; mi < unique_methods.size(); ++mi) {
    for (int metric = 0; metric < 4; ++metric) {
      std::vector<const std::vector<int>*> slices;
      slices.reserve(results.size());
      for (const auto& rep : results) {
        if (!rep.per_method[mi][static_cast<std::size_t>(metric)].empty()) {
          slices.push_back(&rep.per_method[mi][static_cast<std::size_t>(metric)]);
        }
      }
      if (slices.empty()) continue; // method defines no ranking for this metric
      out.curves.push_back(aggregate(method_label(unique_methods[mi]),
                                     kMetricNames[metric], slices));
    }
  }
  return out;
}

void write_benchmark_csv(const BenchmarkResult& result, std::ostream& os) {
  os << "method,metric,rank_j,mean,stderr\n";
  for (const auto& curve : result.curves) {
    for (Eigen::Index j = 0; j < curve.mean.size(); ++j) {
      os << curve.method << ',' << curve.metric << ',' << (j + 1) << ','
         << format_double(curve.mean(j)) << ',' << format_double(curve.se(j)) << '\n';
    }
  }
}

} // namespace ccur

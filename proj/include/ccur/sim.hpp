#ifndef CCUR_SIM_HPP
#define CCUR_SIM_HPP

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ccur {

/// Synthetic benchmark configuration. Defaults reproduce the standard
/// recovery study: 500 + 500 samples, 100 features, latent dimension 5,
/// sparsity threshold 1.8, 100 replicates, selection methods run with
/// k = 10, and 10 columns picked before the CCUR row stage.
struct SimConfig {
  Eigen::Index n = 500;
  Eigen::Index m = 500;
  Eigen::Index p = 100;
  Eigen::Index latent_dim = 5;
  double threshold = 1.8;
  std::uint64_t seed = 0;
  int replicates = 100;
  Eigen::Index method_k = 10;
  Eigen::Index ccur_c = 10;
};

/// One generated foreground/background pair with its ground truth.
///
/// x_fg = z_shared * v^T + z_unique * w^T + noise;
/// y_bg = s * v^T + noise, with fresh background latents s.
/// v, w, z_shared, z_unique are elementwise thresholded (|entry| <
/// threshold becomes 0); the noise and the background latents are not.
/// Masks flag rows of the respective matrix with at least one nonzero.
struct SimInstance {
  Eigen::MatrixXd x_fg;
  Eigen::MatrixXd y_bg;
  Eigen::MatrixXd v;
  Eigen::MatrixXd w;
  Eigen::MatrixXd z_shared;
  Eigen::MatrixXd z_unique;
  std::vector<bool> w_mask;
  std::vector<bool> v_mask;
  std::vector<bool> zu_mask;
  std::vector<bool> zs_mask;
};

/// Draw one instance. Deterministic per (config.seed, replicate_index);
/// distinct replicate indices use independent streams.
SimInstance generate(const SimConfig& config, std::uint64_t replicate_index);

/// Cumulative recovery counts: count[j-1] = |top-j of ranking with a true
/// mask bit|, for j = 1..len. ranking must be a permutation of 0..len-1.
std::vector<int> column_recovery(const std::vector<Eigen::Index>& ranking,
                                 const std::vector<bool>& mask);
std::vector<int> row_recovery(const std::vector<Eigen::Index>& ranking,
                              const std::vector<bool>& mask);

enum class Method { ccur, cur_fg, cur_union, cpca };

/// Parse a method label ("CCUR", "CUR-fg", "CUR-union", "CPCA").
/// Unknown labels are an error; so is "CFS", which is not provided.
Method parse_method(const std::string& label);
std::string method_label(Method method);

/// Recovery curve of one method on one metric, aggregated over replicates:
/// mean and standard error of the cumulative count at each rank j.
struct RecoveryCurve {
  std::string method;
  std::string metric;
  Eigen::VectorXd mean;
  Eigen::VectorXd se;
};

struct BenchmarkResult {
  std::vector<RecoveryCurve> curves;
};

/// Run the full recovery study: per replicate, generate an instance, rank
/// all p columns with every requested method (and all n rows where the
/// method defines a row ranking; CPCA does not), score the four recovery
/// metrics, and aggregate mean and standard error across replicates.
///
/// Replicates run in parallel on up to `threads` workers (0 = automatic);
/// results are aggregated by replicate index and identical to a serial run.
BenchmarkResult run_benchmark(const SimConfig& config, const std::vector<Method>& methods,
                              int threads = 0);

/// Tidy CSV with columns {method, metric, rank_j, mean, stderr}.
void write_benchmark_csv(const BenchmarkResult& result, std::ostream& os);

} // namespace ccur

#endif

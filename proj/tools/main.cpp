// ccur: command-line front end for contrastive CUR feature/sample selection,
// classical CUR, a CPCA baseline, a synthetic recovery benchmark, and a
// 2-component PCA projection for plotting.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ccur/ccur.hpp"
#include "ccur/cpca.hpp"
#include "ccur/csv.hpp"
#include "ccur/cur.hpp"
#include "ccur/data_matrix.hpp"
#include "ccur/manifest.hpp"
#include "ccur/sim.hpp"

namespace {

using nlohmann::json;

struct InputFormat {
  bool tsv = false;
  bool header = false;
  bool row_labels = false;
  bool transpose = false;
};

void add_format_flags(CLI::App* cmd, InputFormat& fmt) {
  cmd->add_flag("--tsv", fmt.tsv, "Inputs are tab-separated instead of comma-separated");
  cmd->add_flag("--header", fmt.header, "First record holds column labels");
  cmd->add_flag("--row-labels", fmt.row_labels, "First field of each record holds the row label");
  cmd->add_flag("--transpose", fmt.transpose, "Transpose the matrix after loading");
}

ccur::LoadOptions to_load_options(const InputFormat& fmt) {
  ccur::LoadOptions options;
  options.delimiter = fmt.tsv ? '\t' : ',';
  options.has_header = fmt.header;
  options.has_row_labels = fmt.row_labels;
  options.transpose = fmt.transpose;
  return options;
}

void center_columns(ccur::DataMatrix& m) {
  m.values.rowwise() -= m.values.colwise().mean().eval();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ccur::parse_error("cannot open '" + path + "' for writing");
  }
  return out;
}

json index_array(const std::vector<Eigen::Index>& indices) {
  json arr = json::array();
  for (const auto idx : indices) arr.push_back(idx);
  return arr;
}

json score_array(const Eigen::VectorXd& scores) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < scores.size(); ++i) arr.push_back(scores(i));
  return arr;
}

// Labels of the selected indices, when the axis is labeled at all.
std::optional<json> picked_labels(const std::vector<std::string>& labels,
                                  const std::vector<Eigen::Index>& indices) {
  if (labels.empty()) return std::nullopt;
  json arr = json::array();
  for (const auto idx : indices) arr.push_back(labels[static_cast<std::size_t>(idx)]);
  return arr;
}

std::string label_or_empty(const std::vector<std::string>& labels, Eigen::Index i) {
  return labels.empty() ? std::string() : labels[static_cast<std::size_t>(i)];
}

std::uint64_t parse_seed_env() {
  const char* env = std::getenv("CCUR_SEED");
  if (env == nullptr) return 0;
  std::uint64_t value = 0;
  const std::string text(env);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw CLI::ValidationError("CCUR_SEED", "cannot parse CCUR_SEED value '" + text + "'");
  }
  return value;
}

// ---- ccur ------------------------------------------------------------

struct CcurArgs {
  std::string fg_path;
  std::string bg_path;
  InputFormat fmt;
  ccur::CcurConfig config;
  bool r_given = false;
  bool center = false;
  std::string out = "ccur_out";
};

void run_ccur(const CcurArgs& args) {
  auto fg = ccur::load_matrix(args.fg_path, to_load_options(args.fmt));
  auto bg = ccur::load_matrix(args.bg_path, to_load_options(args.fmt));
  if (args.center) {
    center_columns(fg);
    center_columns(bg);
  }

  ccur::CcurConfig config = args.config;
  if (!args.r_given) config.r = config.c;
  const auto selection = ccur::ccur(fg.values, bg.values, config);

  json result;
  result["config"] = {{"k", config.k},
                      {"c", config.c},
                      {"r", config.r},
                      {"epsilon", config.epsilon},
                      {"center", args.center},
                      {"row_stage_k", selection.row_scores.k_used}};
  result["col_indices"] = index_array(selection.col_indices);
  result["row_indices"] = index_array(selection.row_indices);
  if (auto labels = picked_labels(fg.col_labels, selection.col_indices)) {
    result["col_labels"] = *labels;
  }
  if (auto labels = picked_labels(fg.row_labels, selection.row_indices)) {
    result["row_labels"] = *labels;
  }
  result["col_scores"] = score_array(selection.col_scores.scores);
  result["row_scores"] = score_array(selection.row_scores.scores);

  const std::string json_path = args.out + ".selection.json";
  const std::string csv_path = args.out + ".scores.csv";
  {
    auto out = open_output(json_path);
    out << result.dump(2) << '\n';
  }
  {
    auto out = open_output(csv_path);
    out << "axis,index,label,score,selected\n";
    std::vector<bool> col_sel(static_cast<std::size_t>(fg.cols()), false);
    for (const auto idx : selection.col_indices) col_sel[static_cast<std::size_t>(idx)] = true;
    for (Eigen::Index d = 0; d < fg.cols(); ++d) {
      out << "column," << d << ',' << ccur::csv_escape(label_or_empty(fg.col_labels, d))
          << ',' << ccur::format_double(selection.col_scores.scores(d)) << ','
          << (col_sel[static_cast<std::size_t>(d)] ? 1 : 0) << '\n';
    }
    std::vector<bool> row_sel(static_cast<std::size_t>(fg.rows()), false);
    for (const auto idx : selection.row_indices) row_sel[static_cast<std::size_t>(idx)] = true;
    for (Eigen::Index i = 0; i < fg.rows(); ++i) {
      out << "row," << i << ',' << ccur::csv_escape(label_or_empty(fg.row_labels, i)) << ','
          << ccur::format_double(selection.row_scores.scores(i)) << ','
          << (row_sel[static_cast<std::size_t>(i)] ? 1 : 0) << '\n';
    }
  }

  ccur::RunManifest manifest;
  manifest.subcommand = "ccur";
  manifest.config = result["config"];
  manifest.config["fg"] = args.fg_path;
  manifest.config["bg"] = args.bg_path;
  ccur::add_input(manifest, args.fg_path);
  ccur::add_input(manifest, args.bg_path);
  manifest.outputs = {json_path, csv_path};
  ccur::write_manifest(args.out + ".manifest.json", manifest);
}

// ---- cur -------------------------------------------------------------

struct CurArgs {
  std::string path;
  InputFormat fmt;
  Eigen::Index k = 0;
  Eigen::Index c = 0;
  Eigen::Index r = 0;
  bool r_given = false;
  bool sampled = false;
  std::uint64_t seed = 0;
  std::string out = "cur_out";
};

void run_cur(const CurArgs& args) {
  const auto input = ccur::load_matrix(args.path, to_load_options(args.fmt));
  const Eigen::Index r = args.r_given ? args.r : args.c;
  const auto factors = args.sampled
                           ? ccur::cur_sample(input.values, args.k, args.c, r, args.seed)
                           : ccur::cur_decompose(input.values, args.k, args.c, r);

  json result;
  result["config"] = {{"k", args.k}, {"c", args.c}, {"r", r}, {"sampled", args.sampled}};
  if (args.sampled) result["config"]["seed"] = args.seed;
  result["col_indices"] = index_array(factors.col_indices);
  result["row_indices"] = index_array(factors.row_indices);
  if (auto labels = picked_labels(input.col_labels, factors.col_indices)) {
    result["col_labels"] = *labels;
  }
  if (auto labels = picked_labels(input.row_labels, factors.row_indices)) {
    result["row_labels"] = *labels;
  }
  result["recon_error"] = factors.recon_error;

  const std::string json_path = args.out + ".factors.json";
  {
    auto out = open_output(json_path);
    out << result.dump(2) << '\n';
  }

  ccur::DataMatrix c_mat;
  c_mat.values = factors.C;
  c_mat.row_labels = input.row_labels;
  if (!input.col_labels.empty()) {
    for (const auto idx : factors.col_indices) {
      c_mat.col_labels.push_back(input.col_labels[static_cast<std::size_t>(idx)]);
    }
  }
  ccur::DataMatrix u_mat;
  u_mat.values = factors.U_mid;
  ccur::DataMatrix r_mat;
  r_mat.values = factors.R;
  r_mat.col_labels = input.col_labels;
  if (!input.row_labels.empty()) {
    for (const auto idx : factors.row_indices) {
      r_mat.row_labels.push_back(input.row_labels[static_cast<std::size_t>(idx)]);
    }
  }
  const std::string c_path = args.out + ".C.csv";
  const std::string u_path = args.out + ".U.csv";
  const std::string r_path = args.out + ".R.csv";
  ccur::write_matrix(c_path, c_mat);
  ccur::write_matrix(u_path, u_mat);
  ccur::write_matrix(r_path, r_mat);

  ccur::RunManifest manifest;
  manifest.subcommand = "cur";
  manifest.config = result["config"];
  manifest.config["input"] = args.path;
  ccur::add_input(manifest, args.path);
  manifest.outputs = {json_path, c_path, u_path, r_path};
  if (args.sampled) manifest.seed = args.seed;
  ccur::write_manifest(args.out + ".manifest.json", manifest);
}

// ---- cpca ------------------------------------------------------------

struct CpcaArgs {
  std::string fg_path;
  std::string bg_path;
  InputFormat fmt;
  double alpha = 1.0;
  Eigen::Index top = 10;
  std::string out = "cpca_out";
};

void run_cpca(const CpcaArgs& args) {
  const auto fg = ccur::load_matrix(args.fg_path, to_load_options(args.fmt));
  const auto bg = ccur::load_matrix(args.bg_path, to_load_options(args.fmt));
  ccur::CpcaConfig config;
  config.alpha = args.alpha;
  config.num_features = std::min<Eigen::Index>(args.top, fg.cols());
  const auto result = ccur::cpca_rank_features(fg.values, bg.values, config);

  json doc;
  doc["config"] = {{"alpha", args.alpha}, {"top", config.num_features}};
  doc["ranked_indices"] = index_array(result.ranked);
  if (auto labels = picked_labels(fg.col_labels, result.ranked)) {
    doc["ranked_labels"] = *labels;
  }
  doc["leading_eigenvalue"] = result.leading_eigenvalue;
  doc["leading_nonpositive"] = result.leading_nonpositive;

  const std::string json_path = args.out + ".features.json";
  const std::string csv_path = args.out + ".loadings.csv";
  {
    auto out = open_output(json_path);
    out << doc.dump(2) << '\n';
  }
  {
    auto out = open_output(csv_path);
    out << "index,label,loading\n";
    for (Eigen::Index d = 0; d < fg.cols(); ++d) {
      out << d << ',' << ccur::csv_escape(label_or_empty(fg.col_labels, d)) << ','
          << ccur::format_double(result.loadings(d)) << '\n';
    }
  }

  ccur::RunManifest manifest;
  manifest.subcommand = "cpca";
  manifest.config = doc["config"];
  manifest.config["fg"] = args.fg_path;
  manifest.config["bg"] = args.bg_path;
  ccur::add_input(manifest, args.fg_path);
  ccur::add_input(manifest, args.bg_path);
  manifest.outputs = {json_path, csv_path};
  ccur::write_manifest(args.out + ".manifest.json", manifest);
}

// ---- simulate ----------------------------------------------------------

struct SimulateArgs {
  ccur::SimConfig config;
  std::string methods = "CCUR,CUR-fg,CUR-union,CPCA";
  int threads = 0;
  std::string out = "sim_out";
};

std::vector<ccur::Method> parse_method_list(const std::string& list) {
  std::vector<ccur::Method> methods;
  std::stringstream stream(list);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (!token.empty()) methods.push_back(ccur::parse_method(token));
  }
  if (methods.empty()) {
    throw ccur::dimension_error("no methods given");
  }
  return methods;
}

void run_simulate(const SimulateArgs& args) {
  const auto methods = parse_method_list(args.methods);
  const auto result = ccur::run_benchmark(args.config, methods, args.threads);

  const std::string csv_path = args.out + ".curves.csv";
  {
    auto out = open_output(csv_path);
    ccur::write_benchmark_csv(result, out);
  }

  json methods_json = json::array();
  for (const auto m : methods) methods_json.push_back(ccur::method_label(m));

  ccur::RunManifest manifest;
  manifest.subcommand = "simulate";
  manifest.config = {{"n", args.config.n},
                     {"m", args.config.m},
                     {"p", args.config.p},
                     {"latent_dim", args.config.latent_dim},
                     {"threshold", args.config.threshold},
                     {"seed", args.config.seed},
                     {"replicates", args.config.replicates},
                     {"method_k", args.config.method_k},
                     {"ccur_c", args.config.ccur_c},
                     {"methods", methods_json}};
  manifest.outputs = {csv_path};
  manifest.seed = args.config.seed;
  ccur::write_manifest(args.out + ".manifest.json", manifest);
}

// ---- project -----------------------------------------------------------

struct ProjectArgs {
  std::string path;
  InputFormat fmt;
  std::string selected_rows_path;
  std::string out = "proj_out";
};

std::vector<Eigen::Index> load_selected_rows(const std::string& path, Eigen::Index n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ccur::parse_error("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::vector<Eigen::Index> indices;
  const auto take = [&](const json& arr) {
    for (const auto& v : arr) {
      if (!v.is_number_integer()) {
        throw ccur::parse_error("'" + path + "': row indices must be integers");
      }
      indices.push_back(v.get<Eigen::Index>());
    }
  };
  const json parsed = json::parse(text, nullptr, false);
  if (parsed.is_array()) {
    take(parsed);
  } else if (parsed.is_object() && parsed.contains("row_indices")) {
    take(parsed["row_indices"]);
  } else if (parsed.is_number_integer()) {
    indices.push_back(parsed.get<Eigen::Index>());
  } else if (parsed.is_discarded()) {
    // Plain text: whitespace-separated integers.
    std::istringstream stream(text);
    std::string token;
    while (stream >> token) {
      Eigen::Index value = 0;
      const auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ccur::parse_error("'" + path + "': cannot parse row index '" + token + "'");
      }
      indices.push_back(value);
    }
  } else {
    throw ccur::parse_error("'" + path + "': expected a JSON array, a JSON object with "
                            "row_indices, or whitespace-separated integers");
  }
  for (const auto idx : indices) {
    if (idx < 0 || idx >= n) {
      throw ccur::dimension_error("selected row " + std::to_string(idx) +
                                  " out of range [0, " + std::to_string(n - 1) + "]");
    }
  }
  return indices;
}

void run_project(const ProjectArgs& args) {
  const auto input = ccur::load_matrix(args.path, to_load_options(args.fmt));
  Eigen::MatrixXd centered = input.values;
  centered.rowwise() -= input.values.colwise().mean();

  const auto svd = ccur::truncated_svd(centered, 2);
  const Eigen::MatrixXd coords = centered * svd.right_vectors;

  std::vector<bool> selected(static_cast<std::size_t>(input.rows()), false);
  if (!args.selected_rows_path.empty()) {
    for (const auto idx : load_selected_rows(args.selected_rows_path, input.rows())) {
      selected[static_cast<std::size_t>(idx)] = true;
    }
  }

  const std::string csv_path = args.out + ".projection.csv";
  {
    auto out = open_output(csv_path);
    out << "index,label,pc1,pc2,selected\n";
    for (Eigen::Index i = 0; i < input.rows(); ++i) {
      out << i << ',' << ccur::csv_escape(label_or_empty(input.row_labels, i)) << ','
          << ccur::format_double(coords(i, 0)) << ',' << ccur::format_double(coords(i, 1))
          << ',' << (selected[static_cast<std::size_t>(i)] ? 1 : 0) << '\n';
    }
  }

  ccur::RunManifest manifest;
  manifest.subcommand = "project";
  manifest.config = {{"input", args.path},
                     {"selected_rows", args.selected_rows_path.empty()
                                           ? json(nullptr)
                                           : json(args.selected_rows_path)}};
  ccur::add_input(manifest, args.path);
  if (!args.selected_rows_path.empty()) {
    ccur::add_input(manifest, args.selected_rows_path);
  }
  manifest.outputs = {csv_path};
  ccur::write_manifest(args.out + ".manifest.json", manifest);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contrastive CUR: leverage-score feature and sample selection "
               "for case-control data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ccur::kToolVersion);

  std::uint64_t default_seed = 0;
  try {
    default_seed = parse_seed_env();
  } catch (const CLI::Error& e) {
    std::cerr << "ccur: " << e.what() << '\n';
    return 1;
  }

  CcurArgs ccur_args;
  auto* ccur_cmd = app.add_subcommand(
      "ccur", "Select columns salient in the foreground relative to the background, "
              "then rows of the restricted foreground");
  ccur_cmd->add_option("foreground", ccur_args.fg_path, "Foreground matrix file")->required();
  ccur_cmd->add_option("background", ccur_args.bg_path, "Background matrix file")->required();
  ccur_cmd->add_option("--k", ccur_args.config.k, "Singular vectors per group")
      ->default_val(7)->check(CLI::PositiveNumber);
  ccur_cmd->add_option("--c", ccur_args.config.c, "Columns to select")
      ->default_val(10)->check(CLI::PositiveNumber);
  auto* ccur_r = ccur_cmd->add_option("--r", ccur_args.config.r, "Rows to select (default: c)")
      ->check(CLI::PositiveNumber);
  ccur_cmd->add_option("--epsilon", ccur_args.config.epsilon,
                       "Stabilizer added to background leverage")
      ->default_val(1e-6)->check(CLI::PositiveNumber);
  ccur_cmd->add_flag("--center", ccur_args.center,
                     "Column mean-center both groups before any SVD");
  ccur_cmd->add_option("--out", ccur_args.out, "Output path prefix")->capture_default_str();
  add_format_flags(ccur_cmd, ccur_args.fmt);

  CurArgs cur_args;
  auto* cur_cmd = app.add_subcommand("cur", "Classical CUR decomposition of one matrix");
  cur_cmd->add_option("input", cur_args.path, "Matrix file")->required();
  cur_cmd->add_option("--k", cur_args.k, "Singular vectors for leverage scores")
      ->required()->check(CLI::PositiveNumber);
  cur_cmd->add_option("--c", cur_args.c, "Columns to select")
      ->required()->check(CLI::PositiveNumber);
  auto* cur_r = cur_cmd->add_option("--r", cur_args.r, "Rows to select (default: c)")
      ->check(CLI::PositiveNumber);
  cur_cmd->add_flag("--sampled", cur_args.sampled,
                    "Sample indices with probability proportional to leverage "
                    "instead of taking the top scores");
  cur_cmd->add_option("--seed", cur_args.seed,
                      "Random seed for --sampled (default: $CCUR_SEED or 0)")
      ->default_val(default_seed)->needs("--sampled");
  cur_cmd->add_option("--out", cur_args.out, "Output path prefix")->capture_default_str();
  add_format_flags(cur_cmd, cur_args.fmt);

  CpcaArgs cpca_args;
  auto* cpca_cmd = app.add_subcommand(
      "cpca", "Rank features by the leading component of Cov_fg - alpha * Cov_bg");
  cpca_cmd->add_option("foreground", cpca_args.fg_path, "Foreground matrix file")->required();
  cpca_cmd->add_option("background", cpca_args.bg_path, "Background matrix file")->required();
  cpca_cmd->add_option("--alpha", cpca_args.alpha, "Background contrast strength")
      ->default_val(1.0)->check(CLI::NonNegativeNumber);
  cpca_cmd->add_option("--top", cpca_args.top,
                       "Features to keep in the ranking (clamped to the column count)")
      ->default_val(10)->check(CLI::PositiveNumber);
  cpca_cmd->add_option("--out", cpca_args.out, "Output path prefix")->capture_default_str();
  add_format_flags(cpca_cmd, cpca_args.fmt);

  SimulateArgs sim_args;
  sim_args.config.seed = default_seed;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Generate synthetic foreground/background data and score recovery "
                  "of the planted structure per method");
  sim_cmd->add_option("--n", sim_args.config.n, "Foreground rows")
      ->capture_default_str()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--m", sim_args.config.m, "Background rows")
      ->capture_default_str()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--p", sim_args.config.p, "Features")
      ->capture_default_str()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--latent-dim", sim_args.config.latent_dim, "Latent dimension")
      ->capture_default_str()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--threshold", sim_args.config.threshold,
                      "Sparsity cutoff applied to loadings and foreground latents")
      ->capture_default_str()->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--seed", sim_args.config.seed, "Base seed (default: $CCUR_SEED or 0)")
      ->capture_default_str();
  sim_cmd->add_option("--replicates", sim_args.config.replicates, "Independent replicates")
      ->capture_default_str()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--method-k", sim_args.config.method_k,
                      "Singular vectors used by the selection methods")
      ->capture_default_str()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--ccur-c", sim_args.config.ccur_c,
                      "Columns selected before the CCUR row stage")
      ->capture_default_str()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--methods", sim_args.methods,
                      "Comma-separated subset of CCUR,CUR-fg,CUR-union,CPCA")
      ->capture_default_str();
  sim_cmd->add_option("--threads", sim_args.threads, "Worker threads (0 = automatic)")
      ->capture_default_str()->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--out", sim_args.out, "Output path prefix")->capture_default_str();

  ProjectArgs project_args;
  auto* project_cmd = app.add_subcommand(
      "project", "Project rows onto the first two principal components for plotting");
  project_cmd->add_option("input", project_args.path, "Matrix file")->required();
  project_cmd->add_option("--selected-rows", project_args.selected_rows_path,
                          "File with row indices to flag (JSON array, ccur selection "
                          "JSON, or whitespace-separated integers)");
  project_cmd->add_option("--out", project_args.out, "Output path prefix")
      ->capture_default_str();
  add_format_flags(project_cmd, project_args.fmt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (ccur_cmd->parsed()) {
      ccur_args.r_given = ccur_r->count() > 0;
      run_ccur(ccur_args);
    } else if (cur_cmd->parsed()) {
      cur_args.r_given = cur_r->count() > 0;
      run_cur(cur_args);
    } else if (cpca_cmd->parsed()) {
      run_cpca(cpca_args);
    } else if (sim_cmd->parsed()) {
      run_simulate(sim_args);
    } else if (project_cmd->parsed()) {
      run_project(project_args);
    }
  } catch (const ccur::numeric_error& e) {
    std::cerr << "ccur: numeric error: " << e.what() << '\n';
    return 3;
  } catch (const ccur::parse_error& e) {
    std::cerr << "ccur: input error: " << e.what() << '\n';
    return 2;
  } catch (const ccur::dimension_error& e) {
    std::cerr << "ccur: input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ccur: error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

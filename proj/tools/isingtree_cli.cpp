// Command-line front end: validate | convert | pmf-sum | allocations |
// sample | poisson-compare | reproduce-tables.
//
// Exit codes: 0 ok, 1 input error, 2 constraint violation, 3 numerical
// tolerance failure.

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isingtree/errors.hpp"
#include "isingtree/model.hpp"
#include "isingtree/model_io.hpp"
#include "isingtree/param_maps.hpp"
#include "isingtree/pmf.hpp"
#include "isingtree/poisson.hpp"
#include "isingtree/sampler.hpp"
#include "isingtree/sum_distribution.hpp"

namespace {

using namespace isingtree;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitConstraint = 2;
constexpr int kExitTolerance = 3;

// Stable formatting for golden files: nine significant digits.
std::string fmt9(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_table(const std::filesystem::path& csv_path, const Table& table) {
  std::ofstream csv(csv_path);
  if (!csv) throw ParseError("cannot open output file " + csv_path.string());
  for (std::size_t c = 0; c < table.header.size(); ++c)
    csv << (c ? "," : "") << table.header[c];
  csv << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) csv << (c ? "," : "") << row[c];
    csv << "\n";
  }

  // JSON mirror alongside the CSV.
  json mirror = json::array();
  for (const auto& row : table.rows) {
    json obj;
    for (std::size_t c = 0; c < row.size() && c < table.header.size(); ++c)
      obj[table.header[c]] = row[c];
    mirror.push_back(obj);
  }
  std::filesystem::path json_path = csv_path;
  json_path.replace_extension(".json");
  std::ofstream js(json_path);
  js << mirror.dump(2) << "\n";
}

struct Options {
  std::string model_path;
  std::string output = "out.csv";
  std::size_t n_fft = 0;
  std::uint64_t seed = 1;
  std::size_t n = 1000;
  std::size_t reps = 1;
  double level = 0.9;
  std::string vertex;
  std::string to = "mean";
  std::string method = "direct";
};

ModelFile load(const Options& opt) {
  if (opt.model_path.empty()) throw ParseError("--model is required");
  return load_model_file(opt.model_path);
}

int cmd_validate(const Options& opt) {
  ModelFile file = load(opt);
  if (file.parameterization != Parameterization::mean) {
    // Exponential parameterizations are unconstrained; materializing them
    // through to_mean_model checks everything that can go wrong.
    to_mean_model(file);
    std::cout << "ok\n";
    return kExitOk;
  }
  RootedTree rt(file.tree, file.root);
  const ValidationReport report = validate(rt, file.vertex_params, file.edge_params);
  std::cout << report.to_string(file.tree) << "\n";
  return report.ok() ? kExitOk : kExitConstraint;
}

NaturalParamIsing to_natural(const ModelFile& file) {
  switch (file.parameterization) {
    case Parameterization::mean:
      return mean_to_natural(to_mean_model(file));
    case Parameterization::natural:
      return NaturalParamIsing{file.tree, file.vertex_params, file.edge_params, 0.0};
    case Parameterization::canonical:
      return canonical_to_natural(
          CanonicalParamIsing{file.tree, file.vertex_params, file.edge_params, 0.0});
    case Parameterization::centered:
      return centered_to_natural(
          CenteredParamIsing{file.tree, file.vertex_params, file.edge_params, 0.0});
  }
  throw ParseError("unreachable parameterization");
}

int cmd_convert(const Options& opt) {
  ModelFile file = load(opt);
  const Parameterization target = parameterization_from_string(opt.to);

  ModelFile out;
  out.parameterization = target;
  out.tree = file.tree;
  out.root = file.root;
  std::string constant;
  switch (target) {
    case Parameterization::mean: {
      MeanParamIsing mean = to_mean_model(file);
      out.vertex_params = mean.q();
      out.edge_params = mean.alpha();
      constant = "none (mean parameterization)";
      break;
    }
    case Parameterization::natural: {
      NaturalParamIsing natural = to_natural(file);
      exponential_to_table(natural);  // recompute A
      out.vertex_params = natural.eta_vertex;
      out.edge_params = natural.eta_edge;
      constant = "A = " + fmt9(natural.log_norm) + " (log scale)";
      break;
    }
    case Parameterization::canonical: {
      CanonicalParamIsing canonical = natural_to_canonical(to_natural(file));
      exponential_to_table(canonical);
      out.vertex_params = canonical.theta_vertex;
      out.edge_params = canonical.theta_edge;
      constant = "Z = " + fmt9(canonical.log_norm) + " (log scale)";
      break;
    }
    case Parameterization::centered: {
      CenteredParamIsing centered = natural_to_centered(to_natural(file));
      exponential_to_table(centered);
      out.vertex_params = centered.kappa;
      out.edge_params = centered.eta_edge;
      constant = "B = " + fmt9(centered.log_norm) + " (log scale)";
      break;
    }
  }
  std::ofstream os(opt.output);
  if (!os) throw ParseError("cannot open output file " + opt.output);
  os << write_model_file(out);
  std::cout << "normalizing constant: " << constant << "\n";
  return kExitOk;
}

int cmd_pmf_sum(const Options& opt) {
  MeanParamIsing model = to_mean_model(load(opt));
  const Pmf p = sum_pmf(model, opt.n_fft);
  Table table{{"k", "probability"}, {}};
  for (std::size_t k = 0; k <= model.vertex_count(); ++k)
    table.rows.push_back({std::to_string(k), fmt9(p[k])});
  write_table(opt.output, table);
  return kExitOk;
}

int cmd_allocations(const Options& opt) {
  ModelFile file = load(opt);
  MeanParamIsing model = to_mean_model(file);
  std::vector<Vertex> vertices;
  if (opt.vertex.empty()) {
    for (Vertex v = 0; v < model.vertex_count(); ++v) vertices.push_back(v);
  } else {
    const auto v = file.tree.find_label(opt.vertex);
    if (!v) throw ParseError("--vertex: unknown vertex label '" + opt.vertex + "'");
    vertices.push_back(*v);
  }

  Table table;
  table.header.push_back("k");
  for (Vertex v : vertices) table.header.push_back(file.tree.label(v));
  std::vector<AllocationVector> allocations;
  for (Vertex v : vertices)
    allocations.push_back(expected_allocations(model, v, opt.n_fft));
  for (std::size_t k = 0; k <= model.vertex_count(); ++k) {
    std::vector<std::string> row{std::to_string(k)};
    for (const auto& alloc : allocations) row.push_back(fmt9(alloc.values[k]));
    table.rows.push_back(row);
  }
  write_table(opt.output, table);
  return kExitOk;
}

int cmd_sample(const Options& opt) {
  ModelFile file = load(opt);
  MeanParamIsing model = to_mean_model(file);
  const SampleMethod method = opt.method == "symmetric-flip"
                                  ? SampleMethod::symmetric_flip
                                  : SampleMethod::direct;
  if (opt.reps <= 1) {
    // Raw realizations, one row per draw, columns in topological order.
    const SampleBatch batch = sample_batch(model, opt.n, opt.seed, 0, method);
    Table table;
    for (Vertex v : model.rooted_tree().order())
      table.header.push_back(file.tree.label(v));
    for (std::size_t r = 0; r < batch.rows; ++r) {
      std::vector<std::string> row;
      for (std::size_t c = 0; c < batch.cols; ++c)
        row.push_back(std::to_string(int(batch.at(r, c))));
      table.rows.push_back(row);
    }
    write_table(opt.output, table);
    return kExitOk;
  }

  if (method == SampleMethod::symmetric_flip)
    throw ParseError("--reps intervals are computed with the direct sampler");
  const RngStream base(opt.seed, 0);
  const auto intervals = mc_confidence_intervals(model, opt.n, opt.reps, opt.level, base);
  const Pmf exact = sum_pmf(model);
  Table table{{"k", "exact", "lo", "hi"}, {}};
  for (std::size_t k = 0; k < intervals.size(); ++k)
    table.rows.push_back({std::to_string(k), fmt9(exact[k]), fmt9(intervals[k].lo),
                          fmt9(intervals[k].hi)});
  write_table(opt.output, table);
  return kExitOk;
}

int cmd_poisson_compare(const Options& opt) {
  MeanParamIsing model = to_mean_model(load(opt));
  const std::size_t d = model.vertex_count();
  const Pmf p_k = sum_pmf(model, opt.n_fft);
  const TruncatedPmf approx = mpmrf_sum_pmf(build_approx(model));
  const Pmf& p_m = approx.pmf;

  Table table{{"kind", "z", "exact", "poisson", "diff"}, {}};
  for (std::size_t k = 0; k <= d; ++k) {
    const double pk = p_k[k];
    const double pm = k < p_m.size() ? p_m[k] : 0.0;
    table.rows.push_back(
        {"pmf", std::to_string(k), fmt9(pk), fmt9(pm), fmt9(std::abs(pk - pm))});
  }
  table.rows.push_back({"pmf_tail", std::to_string(d + 1), fmt9(p_k.tail_mass(d + 1)),
                        fmt9(p_m.tail_mass(d + 1)),
                        fmt9(std::abs(p_k.tail_mass(d + 1) - p_m.tail_mass(d + 1)))});
  for (std::size_t z = 0; z <= d; ++z) {
    const double pik = stop_loss(p_k, static_cast<double>(z));
    const double pim = stop_loss(p_m, static_cast<double>(z));
    table.rows.push_back(
        {"stop_loss", std::to_string(z), fmt9(pik), fmt9(pim), fmt9(pim - pik)});
  }
  const double tv = tv_distance(p_k, p_m);
  const double bound = tv_bound(d, model.q(0));
  const ConvexOrderReport order = check_convex_order(p_k, p_m);
  table.rows.push_back({"tv_distance", "", fmt9(tv), "", ""});
  table.rows.push_back({"tv_bound", "", fmt9(bound), "", ""});
  table.rows.push_back({"tv_within_bound", "", tv <= bound ? "true" : "false", "", ""});
  table.rows.push_back({"convex_order", "", order.ordered ? "true" : "false", "", ""});
  write_table(opt.output, table);
  return kExitOk;
}

// Per-bucket Monte-Carlo envelope for the numerical study's tables: the
// bucket estimates (K=0, K=1, K=2, K>=3) are aggregated per replication,
// then the level-0.9 quantiles are taken across replications.
struct BucketIntervals {
  std::array<double, 4> lo;
  std::array<double, 4> hi;
};

BucketIntervals bucket_intervals(const MeanParamIsing& model, std::size_t n,
                                 std::size_t reps, double level,
                                 std::uint64_t seed, std::uint64_t stream0) {
  std::array<std::vector<double>, 4> estimates;
  for (auto& e : estimates) e.resize(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    RngStream rng(seed, stream0 + r);
    const Pmf pmf = monte_carlo_sum_pmf(model, n, rng);
    estimates[0][r] = pmf[0];
    estimates[1][r] = pmf[1];
    estimates[2][r] = pmf[2];
    estimates[3][r] = pmf.tail_mass(3);
  }
  BucketIntervals out{};
  const double tail = (1.0 - level) / 2.0;
  for (int b = 0; b < 4; ++b) {
    std::sort(estimates[b].begin(), estimates[b].end());
    auto quantile = [&](double p) {
      std::size_t rank = static_cast<std::size_t>(std::ceil(p * reps));
      rank = std::clamp<std::size_t>(rank, 1, reps);
      return estimates[b][rank - 1];
    };
    out.lo[b] = quantile(tail);
    out.hi[b] = quantile(1.0 - tail);
  }
  return out;
}

int cmd_reproduce_tables(const Options& opt) {
  const std::filesystem::path dir(opt.output.empty() ? "." : opt.output);
  std::filesystem::create_directories(dir);

  int table_index = 1;
  for (double q : {0.01, 0.001}) {
    TreeTopology tree(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
    MeanParamIsing model(RootedTree(std::move(tree), 0), std::vector<double>(7, q),
                         std::vector<double>(6, 0.7));
    const Pmf p_k = sum_pmf(model);
    const Pmf p_m = mpmrf_sum_pmf(build_approx(model)).pmf;

    const BucketIntervals small = bucket_intervals(model, 1000, 1000, 0.9, opt.seed, 0);
    const BucketIntervals large =
        bucket_intervals(model, 10000, 1000, 0.9, opt.seed, 1000);

    Table pmf_table{{"event", "exact", "poisson", "mc90_lo_n1000", "mc90_hi_n1000",
                     "mc90_lo_n10000", "mc90_hi_n10000"},
                    {}};
    const std::array<double, 4> exact{p_k[0], p_k[1], p_k[2], p_k.tail_mass(3)};
    const std::array<double, 4> poisson{p_m[0], p_m[1], p_m[2], p_m.tail_mass(3)};
    const std::array<std::string, 4> names{"K=0", "K=1", "K=2", "K>=3"};
    for (int b = 0; b < 4; ++b) {
      pmf_table.rows.push_back({names[b], fmt9(exact[b]), fmt9(poisson[b]),
                                fmt9(small.lo[b]), fmt9(small.hi[b]),
                                fmt9(large.lo[b]), fmt9(large.hi[b])});
    }
    write_table(dir / ("table" + std::to_string(table_index) + ".csv"), pmf_table);

    Table stop_table{{"z", "exact", "poisson"}, {}};
    for (int z = 0; z <= 7; ++z)
      stop_table.rows.push_back({std::to_string(z), fmt9(stop_loss(p_k, z)),
                                 fmt9(stop_loss(p_m, z))});
    write_table(dir / ("table" + std::to_string(table_index + 1) + ".csv"), stop_table);
    table_index += 2;
  }
  std::cout << "wrote table1..table4 under " << dir.string() << "\n";
  return kExitOk;
}

int classify(const Error& err) {
  if (dynamic_cast<const ToleranceExceeded*>(&err) ||
      dynamic_cast<const TruncationTooSevere*>(&err) ||
      dynamic_cast<const ConvergenceFailure*>(&err))
    return kExitTolerance;
  if (dynamic_cast<const DomainError*>(&err) ||
      dynamic_cast<const NotCommonQ*>(&err) ||
      dynamic_cast<const AlphaOutOfRange*>(&err) ||
      dynamic_cast<const NotSymmetricModel*>(&err) ||
      dynamic_cast<const NotAnIsingModel*>(&err))
    return kExitConstraint;
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree-structured Ising models under mean parameterization"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub, bool needs_model) {
    if (needs_model)
      sub->add_option("--model", opt.model_path, "model file (JSON)")->required();
    sub->add_option("--output", opt.output, "output path");
    return sub;
  };

  auto* validate_cmd = app.add_subcommand("validate", "check model admissibility");
  validate_cmd->add_option("--model", opt.model_path, "model file (JSON)")->required();

  auto* convert_cmd = add_common(app.add_subcommand("convert", "convert between parameterizations"), true);
  convert_cmd->add_option("--to", opt.to, "target parameterization")
      ->check(CLI::IsMember({"mean", "natural", "canonical", "centered"}));

  auto* pmf_cmd = add_common(app.add_subcommand("pmf-sum", "distribution of the sum"), true);
  pmf_cmd->add_option("--n-fft", opt.n_fft, "transform length (power of two)");

  auto* alloc_cmd = add_common(app.add_subcommand("allocations", "expected allocations"), true);
  alloc_cmd->add_option("--n-fft", opt.n_fft, "transform length (power of two)");
  alloc_cmd->add_option("--vertex", opt.vertex, "restrict to one vertex label");

  auto* sample_cmd = add_common(app.add_subcommand("sample", "draw realizations"), true);
  sample_cmd->add_option("--n", opt.n, "draws per replication");
  sample_cmd->add_option("--seed", opt.seed, "random seed");
  sample_cmd->add_option("--reps", opt.reps, "replications (>= 2 emits intervals)");
  sample_cmd->add_option("--level", opt.level, "interval level");
  sample_cmd->add_option("--method", opt.method, "direct | symmetric-flip")
      ->check(CLI::IsMember({"direct", "symmetric-flip"}));

  auto* compare_cmd = add_common(
      app.add_subcommand("poisson-compare", "exact sum law against its Poisson approximation"), true);
  compare_cmd->add_option("--n-fft", opt.n_fft, "transform length (power of two)");

  auto* tables_cmd = app.add_subcommand("reproduce-tables", "regenerate the numerical study");
  tables_cmd->add_option("--output", opt.output, "output directory");
  tables_cmd->add_option("--seed", opt.seed, "random seed for the Monte-Carlo columns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(opt);
    if (convert_cmd->parsed()) return cmd_convert(opt);
    if (pmf_cmd->parsed()) return cmd_pmf_sum(opt);
    if (alloc_cmd->parsed()) return cmd_allocations(opt);
    if (sample_cmd->parsed()) return cmd_sample(opt);
    if (compare_cmd->parsed()) return cmd_poisson_compare(opt);
    if (tables_cmd->parsed()) return cmd_reproduce_tables(opt);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return classify(err);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

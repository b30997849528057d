#include "isingtree/param_maps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "isingtree/errors.hpp"

namespace isingtree {

namespace {

constexpr std::size_t kTableMaxDim = 20;
constexpr double kHigherOrderTolerance = 1e-8;  // NotAnIsingModel threshold
// Exhaustive subset scan costs 3^d; beyond this the reconstruction check
// below covers the same property at 2^d cost.
constexpr std::size_t kExhaustiveEtaMaxDim = 12;

void check_dimension(std::size_t d) {
  if (d > kTableMaxDim)
    throw DimensionTooLarge("explicit tables are guarded at d <= " +
                            std::to_string(kTableMaxDim) + ", got d = " +
                            std::to_string(d));
}

double logit(double p) { return std::log(p / (1.0 - p)); }
double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_lengths(const TreeTopology& tree, std::size_t vertex_params,
                   std::size_t edge_params) {
  if (vertex_params != tree.vertex_count())
    throw LengthMismatch("got " + std::to_string(vertex_params) +
                         " vertex parameters for " +
                         std::to_string(tree.vertex_count()) + " vertices");
  if (edge_params != tree.edges().size())
    throw LengthMismatch("got " + std::to_string(edge_params) +
                         " edge parameters for " +
                         std::to_string(tree.edges().size()) + " edges");
}

// Normalizes exp(exponent(x)) over {0,1}^d in log scale and returns the
// table; log_norm receives the log-sum-exp constant.
JointTable normalize_exponent(const TreeTopology& tree,
                              const std::function<double(std::size_t)>& exponent,
                              double& log_norm) {
  const std::size_t d = tree.vertex_count();
  check_dimension(d);
  const std::size_t states = std::size_t{1} << d;
  std::vector<double> raw(states);
  double max_exponent = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < states; ++x) {
    raw[x] = exponent(x);
    max_exponent = std::max(max_exponent, raw[x]);
  }
  double total = 0.0;
  for (std::size_t x = 0; x < states; ++x) total += std::exp(raw[x] - max_exponent);
  log_norm = max_exponent + std::log(total);
  std::vector<double> p(states);
  for (std::size_t x = 0; x < states; ++x) p[x] = std::exp(raw[x] - log_norm);
  return JointTable(d, std::move(p));
}

}  // namespace

JointTable::JointTable(std::size_t d, std::vector<double> probabilities)
    : d_(d), probabilities_(std::move(probabilities)) {
  check_dimension(d_);
  if (probabilities_.size() != (std::size_t{1} << d_))
    throw LengthMismatch("table has " + std::to_string(probabilities_.size()) +
                         " entries; expected 2^" + std::to_string(d_));
  double total = 0.0;
  for (std::size_t x = 0; x < probabilities_.size(); ++x) {
    if (!(probabilities_[x] > 0.0))
      throw DomainError("table entry " + std::to_string(x) +
                        " is not strictly positive");
    total += probabilities_[x];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ToleranceExceeded("table mass " + std::to_string(total) +
                            " deviates from 1 beyond 1e-12");
}

double JointTable::marginal(Vertex v) const {
  double s = 0.0;
  const std::size_t bit = std::size_t{1} << v;
  for (std::size_t x = 0; x < probabilities_.size(); ++x)
    if (x & bit) s += probabilities_[x];
  return s;
}

double JointTable::pair_zero_zero(Vertex u, Vertex v) const {
  double s = 0.0;
  const std::size_t mask = (std::size_t{1} << u) | (std::size_t{1} << v);
  for (std::size_t x = 0; x < probabilities_.size(); ++x)
    if ((x & mask) == 0) s += probabilities_[x];
  return s;
}

JointTable exponential_to_table(NaturalParamIsing& model) {
  check_lengths(model.tree, model.eta_vertex.size(), model.eta_edge.size());
  const auto& edges = model.tree.edges();
  auto exponent = [&](std::size_t x) {
    double e = 0.0;
    for (Vertex v = 0; v < model.tree.vertex_count(); ++v)
      if (x & (std::size_t{1} << v)) e += model.eta_vertex[v];
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::size_t mask =
          (std::size_t{1} << edges[i].first) | (std::size_t{1} << edges[i].second);
      if ((x & mask) == mask) e += model.eta_edge[i];
    }
    return e;
  };
  return normalize_exponent(model.tree, exponent, model.log_norm);
}

JointTable exponential_to_table(CanonicalParamIsing& model) {
  check_lengths(model.tree, model.theta_vertex.size(), model.theta_edge.size());
  const auto& edges = model.tree.edges();
  auto spin = [](std::size_t x, Vertex v) {
    return (x & (std::size_t{1} << v)) ? 1.0 : -1.0;
  };
  auto exponent = [&](std::size_t x) {
    double e = 0.0;
    for (Vertex v = 0; v < model.tree.vertex_count(); ++v)
      e += model.theta_vertex[v] * spin(x, v);
    for (std::size_t i = 0; i < edges.size(); ++i)
      e += model.theta_edge[i] * spin(x, edges[i].first) * spin(x, edges[i].second);
    return e;
  };
  return normalize_exponent(model.tree, exponent, model.log_norm);
}

JointTable exponential_to_table(CenteredParamIsing& model) {
  check_lengths(model.tree, model.kappa.size(), model.eta_edge.size());
  for (Vertex v = 0; v < model.tree.vertex_count(); ++v)
    if (!(model.kappa[v] > 0.0 && model.kappa[v] < 1.0))
      throw DomainError("kappa at vertex " + model.tree.label(v) +
                        " must lie strictly inside (0,1)");
  const auto& edges = model.tree.edges();
  auto exponent = [&](std::size_t x) {
    double e = 0.0;
    for (Vertex v = 0; v < model.tree.vertex_count(); ++v)
      if (x & (std::size_t{1} << v)) e += logit(model.kappa[v]);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Vertex u = edges[i].first;
      const Vertex v = edges[i].second;
      const double xu = (x & (std::size_t{1} << u)) ? 1.0 : 0.0;
      const double xv = (x & (std::size_t{1} << v)) ? 1.0 : 0.0;
      e += model.eta_edge[i] * (xu - model.kappa[u]) * (xv - model.kappa[v]);
    }
    return e;
  };
  return normalize_exponent(model.tree, exponent, model.log_norm);
}

namespace {

// eta_W by Moebius inversion of log-probabilities at the configurations with
// ones exactly on subsets of W: eta_W = sum_{Z subset of W} (-1)^{|W\Z|} ln p(1_Z).
double eta_of_subset(const JointTable& table, std::size_t w) {
  double eta = 0.0;
  const int size_w = std::popcount(w);
  std::size_t z = w;
  while (true) {
    const int sign = ((size_w - std::popcount(z)) % 2 == 0) ? 1 : -1;
    eta += sign * std::log(table[z]);
    if (z == 0) break;
    z = (z - 1) & w;
  }
  return eta;
}

std::string subset_str(std::size_t w, const TreeTopology& tree) {
  std::string s = "{";
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    if (w & (std::size_t{1} << v)) {
      if (s.size() > 1) s += ',';
      s += tree.label(v);
    }
  }
  return s + "}";
}

}  // namespace

NaturalParamIsing table_to_natural(const JointTable& table, const TreeTopology& tree) {
  const std::size_t d = tree.vertex_count();
  if (table.dimension() != d)
    throw LengthMismatch("table dimension " + std::to_string(table.dimension()) +
                         " does not match the tree's " + std::to_string(d));
  NaturalParamIsing out{tree, std::vector<double>(d), std::vector<double>(tree.edges().size()), 0.0};
  for (Vertex v = 0; v < d; ++v)
    out.eta_vertex[v] = eta_of_subset(table, std::size_t{1} << v);
  for (std::size_t i = 0; i < tree.edges().size(); ++i) {
    const std::size_t w = (std::size_t{1} << tree.edges()[i].first) |
                          (std::size_t{1} << tree.edges()[i].second);
    out.eta_edge[i] = eta_of_subset(table, w);
  }
  out.log_norm = -std::log(table[0]);

  if (d <= kExhaustiveEtaMaxDim) {
    // Every remaining interaction must vanish: non-edge pairs and all
    // subsets of three or more vertices.
    const std::size_t states = std::size_t{1} << d;
    for (std::size_t w = 1; w < states; ++w) {
      const int size_w = std::popcount(w);
      if (size_w < 2) continue;
      if (size_w == 2) {
        const int lo = std::countr_zero(w);
        const int hi = 63 - std::countl_zero(static_cast<std::uint64_t>(w));
        if (tree.has_edge(static_cast<Vertex>(lo), static_cast<Vertex>(hi))) continue;
      }
      const double eta = eta_of_subset(table, w);
      if (std::abs(eta) > kHigherOrderTolerance)
        throw NotAnIsingModel("interaction " + subset_str(w, tree) + " has eta = " +
                              std::to_string(eta) +
                              "; the table is not Gibbs on this tree");
    }
  } else {
    // Equivalent check at 2^d cost: a table is Gibbs on the tree iff it is
    // reproduced exactly by the extracted vertex and edge parameters.
    NaturalParamIsing rebuilt = out;
    const JointTable check = exponential_to_table(rebuilt);
    for (std::size_t x = 0; x < table.size(); ++x) {
      if (std::abs(std::log(check[x]) - std::log(table[x])) > kHigherOrderTolerance)
        throw NotAnIsingModel("configuration " + std::to_string(x) +
                              " deviates from the tree-Gibbs reconstruction; the "
                              "table carries interactions outside the tree");
    }
  }
  return out;
}

MeanParamIsing table_to_mean(const JointTable& table, const RootedTree& rt) {
  const std::size_t d = rt.vertex_count();
  if (table.dimension() != d)
    throw LengthMismatch("table dimension " + std::to_string(table.dimension()) +
                         " does not match the tree's " + std::to_string(d));
  std::vector<double> q(d);
  for (Vertex v = 0; v < d; ++v) q[v] = table.marginal(v);
  const auto& edges = rt.topology().edges();
  std::vector<double> alpha(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Vertex u = edges[i].first;
    const Vertex v = edges[i].second;
    const double p00 = table.pair_zero_zero(u, v);
    alpha[i] = (p00 - (1.0 - q[u]) * (1.0 - q[v])) / sigma(q[u], q[v]);
  }
  return MeanParamIsing(rt, std::move(q), std::move(alpha));
}

JointTable mean_to_table(const MeanParamIsing& model) {
  const std::size_t d = model.vertex_count();
  check_dimension(d);
  const std::size_t states = std::size_t{1} << d;
  std::vector<double> p(states);
  std::vector<std::uint8_t> x(d);
  for (std::size_t s = 0; s < states; ++s) {
    for (Vertex v = 0; v < d; ++v)
      x[v] = static_cast<std::uint8_t>((s >> v) & 1u);
    p[s] = model.joint_pmf(x);
  }
  return JointTable(d, std::move(p));
}

MeanParamIsing natural_to_mean(NaturalParamIsing& model, Vertex root) {
  const JointTable table = exponential_to_table(model);
  return table_to_mean(table, RootedTree(model.tree, root));
}

MeanParamIsing canonical_to_mean(CanonicalParamIsing& model, Vertex root) {
  const JointTable table = exponential_to_table(model);
  return table_to_mean(table, RootedTree(model.tree, root));
}

NaturalParamIsing mean_to_natural(const MeanParamIsing& model) {
  const JointTable table = mean_to_table(model);
  return table_to_natural(table, model.topology());
}

NaturalParamIsing centered_to_natural(const CenteredParamIsing& model) {
  check_lengths(model.tree, model.kappa.size(), model.eta_edge.size());
  const std::size_t d = model.tree.vertex_count();
  NaturalParamIsing out{model.tree, std::vector<double>(d), model.eta_edge, 0.0};
  for (Vertex v = 0; v < d; ++v) {
    if (!(model.kappa[v] > 0.0 && model.kappa[v] < 1.0))
      throw DomainError("kappa at vertex " + model.tree.label(v) +
                        " must lie strictly inside (0,1)");
    double coupling = 0.0;
    for (Vertex j : model.tree.neighbors(v))
      coupling += model.kappa[j] * model.eta_edge[model.tree.edge_index(v, j)];
    out.eta_vertex[v] = logit(model.kappa[v]) - coupling;
  }
  return out;
}

CenteredParamIsing natural_to_centered(const NaturalParamIsing& model) {
  check_lengths(model.tree, model.eta_vertex.size(), model.eta_edge.size());
  const std::size_t d = model.tree.vertex_count();
  std::vector<double> kappa(d);
  for (Vertex v = 0; v < d; ++v) kappa[v] = logistic(model.eta_vertex[v]);
  const double damping = 0.5;
  bool converged = false;
  for (int iter = 0; iter < 10000 && !converged; ++iter) {
    converged = true;
    for (Vertex v = 0; v < d; ++v) {
      double coupling = 0.0;
      for (Vertex j : model.tree.neighbors(v))
        coupling += model.eta_edge[model.tree.edge_index(v, j)] * kappa[j];
      const double next =
          (1.0 - damping) * kappa[v] + damping * logistic(model.eta_vertex[v] + coupling);
      if (std::abs(next - kappa[v]) > 1e-14) converged = false;
      kappa[v] = next;
    }
  }
  if (!converged)
    throw ConvergenceFailure(
        "centered reparameterization did not settle; couplings too strong");
  return {model.tree, std::move(kappa), model.eta_edge, 0.0};
}

CanonicalParamIsing natural_to_canonical(const NaturalParamIsing& model) {
  check_lengths(model.tree, model.eta_vertex.size(), model.eta_edge.size());
  const std::size_t d = model.tree.vertex_count();
  CanonicalParamIsing out{model.tree, std::vector<double>(d),
                          std::vector<double>(model.eta_edge.size()), 0.0};
  for (std::size_t i = 0; i < model.eta_edge.size(); ++i)
    out.theta_edge[i] = model.eta_edge[i] / 4.0;
  for (Vertex v = 0; v < d; ++v) {
    double incident = 0.0;
    for (Vertex j : model.tree.neighbors(v))
      incident += model.eta_edge[model.tree.edge_index(v, j)];
    out.theta_vertex[v] = model.eta_vertex[v] / 2.0 + incident / 4.0;
  }
  return out;
}

NaturalParamIsing canonical_to_natural(const CanonicalParamIsing& model) {
  check_lengths(model.tree, model.theta_vertex.size(), model.theta_edge.size());
  const std::size_t d = model.tree.vertex_count();
  NaturalParamIsing out{model.tree, std::vector<double>(d),
                        std::vector<double>(model.theta_edge.size()), 0.0};
  for (std::size_t i = 0; i < model.theta_edge.size(); ++i)
    out.eta_edge[i] = 4.0 * model.theta_edge[i];
  for (Vertex v = 0; v < d; ++v) {
    double incident = 0.0;
    for (Vertex j : model.tree.neighbors(v))
      incident += model.theta_edge[model.tree.edge_index(v, j)];
    out.eta_vertex[v] = 2.0 * model.theta_vertex[v] - 2.0 * incident;
  }
  return out;
}

}  // namespace isingtree

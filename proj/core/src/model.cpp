#include "isingtree/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "isingtree/errors.hpp"

namespace isingtree {

namespace {

constexpr std::size_t kBruteForceMaxDim = 20;

void check_prob(double p, const char* name) {
  if (!(p > 0.0 && p < 1.0))
    throw DomainError(std::string(name) + " = " + std::to_string(p) +
                      " must lie strictly inside (0,1)");
}

void check_bit(int x) {
  if (x != 0 && x != 1) throw DomainError("state must be 0 or 1");
}

}  // namespace

double sigma(double q_u, double q_v) {
  check_prob(q_u, "q_u");
  check_prob(q_v, "q_v");
  return std::sqrt(q_u * q_v * (1.0 - q_u) * (1.0 - q_v));
}

AlphaBounds alpha_bounds(double q_u, double q_v) {
  check_prob(q_u, "q_u");
  check_prob(q_v, "q_v");
  const double on = q_u * q_v;
  const double off = (1.0 - q_u) * (1.0 - q_v);
  const double mixed_uv = (1.0 - q_u) * q_v;
  const double mixed_vu = q_u * (1.0 - q_v);
  return {-std::min(std::sqrt(on / off), std::sqrt(off / on)),
          std::min(std::sqrt(mixed_uv / mixed_vu), std::sqrt(mixed_vu / mixed_uv))};
}

std::string ValidationIssue::to_string(const TreeTopology& t) const {
  std::ostringstream os;
  if (kind == Kind::vertex_mean) {
    os << "vertex " << t.label(static_cast<Vertex>(index)) << ": mean " << value
       << " outside the open interval (0,1)";
  } else {
    const Edge& e = t.edges()[index];
    os << "edge (" << t.label(e.first) << "," << t.label(e.second) << "): correlation "
       << value << " outside the open interval (" << lo << "," << hi << ")";
  }
  return os.str();
}

std::string ValidationReport::to_string(const TreeTopology& t) const {
  if (ok()) return "ok";
  std::string s;
  for (const auto& issue : issues) {
    if (!s.empty()) s += '\n';
    s += issue.to_string(t);
  }
  return s;
}

ValidationReport validate(const RootedTree& rt, std::span<const double> q,
                          std::span<const double> alpha, double margin) {
  const auto& topo = rt.topology();
  const Vertex d = topo.vertex_count();
  if (q.size() != d)
    throw LengthMismatch("got " + std::to_string(q.size()) + " means for " +
                         std::to_string(d) + " vertices");
  if (alpha.size() != topo.edges().size())
    throw LengthMismatch("got " + std::to_string(alpha.size()) + " correlations for " +
                         std::to_string(topo.edges().size()) + " edges");

  ValidationReport report;
  for (Vertex v = 0; v < d; ++v) {
    if (!(q[v] > margin && q[v] < 1.0 - margin))
      report.issues.push_back({ValidationIssue::Kind::vertex_mean, v, q[v], 0.0, 1.0});
  }
  if (!report.ok()) return report;  // bounds below need valid means
  for (std::size_t e = 0; e < alpha.size(); ++e) {
    const Edge& edge = topo.edges()[e];
    const AlphaBounds b = alpha_bounds(q[edge.first], q[edge.second]);
    if (!b.contains(alpha[e], margin))
      report.issues.push_back(
          {ValidationIssue::Kind::edge_correlation, e, alpha[e], b.lo, b.hi});
  }
  return report;
}

MeanParamIsing::MeanParamIsing(RootedTree rt, std::vector<double> q,
                               std::vector<double> alpha)
    : rt_(std::move(rt)), q_(std::move(q)), alpha_(std::move(alpha)) {
  const ValidationReport report = validate(rt_, q_, alpha_);
  if (!report.ok())
    throw DomainError("inadmissible model:\n" + report.to_string(rt_.topology()));

  const Vertex d = rt_.vertex_count();
  cond_.assign(d, {});
  for (Vertex v = 0; v < d; ++v) {
    if (rt_.is_root(v)) {
      cond_[v] = {1.0 - q_[v], q_[v], 1.0 - q_[v], q_[v]};
      continue;
    }
    const Vertex pa = rt_.parent(v);
    const double a = alpha_[rt_.parent_edge(v)];
    const double s = sigma(q_[pa], q_[v]);
    const double given0 = a * s / (1.0 - q_[pa]);
    const double given1 = a * s / q_[pa];
    cond_[v] = {1.0 - q_[v] + given0, q_[v] - given0,
                1.0 - q_[v] - given1, q_[v] + given1};
  }
}

double MeanParamIsing::q(Vertex v) const {
  rt_.topology().check_vertex(v);
  return q_[v];
}

double MeanParamIsing::alpha(std::size_t edge_index) const {
  if (edge_index >= alpha_.size())
    throw IndexOutOfRange("edge index " + std::to_string(edge_index) + " outside [0," +
                          std::to_string(alpha_.size()) + ")");
  return alpha_[edge_index];
}

double MeanParamIsing::alpha_of(Vertex u, Vertex v) const {
  return alpha_[rt_.topology().edge_index(u, v)];
}

MeanParamIsing MeanParamIsing::rerooted(Vertex new_root) const {
  return MeanParamIsing(RootedTree(rt_.topology(), new_root), q_, alpha_);
}

double MeanParamIsing::conditional_pmf(Vertex v, int x_v, int x_pa) const {
  rt_.topology().check_vertex(v);
  if (rt_.is_root(v))
    throw RootHasNoParent("vertex " + std::to_string(v) + " is the root");
  check_bit(x_v);
  check_bit(x_pa);
  return cond_[v][2 * x_pa + x_v];
}

double MeanParamIsing::pair_pmf(Vertex u, Vertex v, int x_u, int x_v) const {
  check_bit(x_u);
  check_bit(x_v);
  const double a = alpha_[rt_.topology().edge_index(u, v)];
  const double mu = x_u == 1 ? q_[u] : 1.0 - q_[u];
  const double mv = x_v == 1 ? q_[v] : 1.0 - q_[v];
  const double sign = (x_u + x_v) % 2 == 0 ? 1.0 : -1.0;
  return mu * mv + sign * a * sigma(q_[u], q_[v]);
}

double MeanParamIsing::joint_pmf(std::span<const std::uint8_t> x) const {
  const Vertex d = rt_.vertex_count();
  if (x.size() != d)
    throw LengthMismatch("configuration has " + std::to_string(x.size()) +
                         " entries for " + std::to_string(d) + " vertices");
  const Vertex r = rt_.root();
  double p = x[r] ? q_[r] : 1.0 - q_[r];
  for (Vertex v : rt_.order()) {
    if (v == r) continue;
    p *= cond_[v][2 * x[rt_.parent(v)] + x[v]];
  }
  return p;
}

double MeanParamIsing::correlation(Vertex u, Vertex v) const {
  double prod = 1.0;
  for (const Edge& e : rt_.topology().path(u, v))
    prod *= alpha_[rt_.topology().edge_index(e.first, e.second)];
  return prod;
}

void MeanParamIsing::enumerate_check() const {
  if (rt_.vertex_count() > kBruteForceMaxDim)
    throw DimensionTooLarge("brute-force enumeration guarded at d <= " +
                            std::to_string(kBruteForceMaxDim) + ", got d = " +
                            std::to_string(rt_.vertex_count()));
}

Pmf MeanParamIsing::brute_force_sum_pmf() const {
  enumerate_check();
  const Vertex d = rt_.vertex_count();
  std::vector<double> pk(d + 1, 0.0);
  std::vector<std::uint8_t> x(d, 0);
  const std::uint64_t states = std::uint64_t{1} << d;
  for (std::uint64_t s = 0; s < states; ++s) {
    int k = 0;
    for (Vertex v = 0; v < d; ++v) {
      x[v] = static_cast<std::uint8_t>((s >> v) & 1u);
      k += x[v];
    }
    pk[k] += joint_pmf(x);
  }
  return Pmf::from_exact(std::move(pk));
}

std::vector<double> MeanParamIsing::brute_force_allocations(Vertex v) const {
  enumerate_check();
  rt_.topology().check_vertex(v);
  const Vertex d = rt_.vertex_count();
  std::vector<double> alloc(d + 1, 0.0);
  std::vector<std::uint8_t> x(d, 0);
  const std::uint64_t states = std::uint64_t{1} << d;
  for (std::uint64_t s = 0; s < states; ++s) {
    if (((s >> v) & 1u) == 0) continue;  // J_v = 1 contributes only
    int k = 0;
    for (Vertex u = 0; u < d; ++u) {
      x[u] = static_cast<std::uint8_t>((s >> u) & 1u);
      k += x[u];
    }
    alloc[k] += joint_pmf(x);
  }
  return alloc;
}

}  // namespace isingtree

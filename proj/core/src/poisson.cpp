#include "isingtree/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isingtree/errors.hpp"
#include "isingtree/sum_distribution.hpp"

namespace isingtree {

namespace {

constexpr double kAlphaMargin = 1e-12;
constexpr double kTruncationTolerance = 1e-9;

double poisson_pmf(double lambda, std::uint32_t k) {
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
}

std::uint32_t sample_poisson(double lambda, RngStream& rng) {
  // Knuth's product method; split large means so the loop stays short.
  std::uint32_t total = 0;
  while (lambda > 30.0) {
    double half = lambda / 2.0;
    std::uint32_t part = sample_poisson(half, rng);
    total += part;
    lambda -= half;
  }
  const double limit = std::exp(-lambda);
  double prod = rng.next_uniform();
  std::uint32_t k = 0;
  while (prod > limit) {
    prod *= rng.next_uniform();
    ++k;
  }
  return total + k;
}

std::uint32_t sample_binomial(std::uint32_t n, double p, RngStream& rng) {
  std::uint32_t k = 0;
  for (std::uint32_t i = 0; i < n; ++i)
    if (rng.bernoulli(p)) ++k;
  return k;
}

}  // namespace

MpmrfModel::MpmrfModel(RootedTree rt, double lambda, std::vector<double> alpha)
    : rt_(std::move(rt)), lambda_(lambda), alpha_(std::move(alpha)) {
  if (!(lambda_ > 0.0))
    throw DomainError("lambda = " + std::to_string(lambda_) + " must be positive");
  if (alpha_.size() != rt_.topology().edges().size())
    throw LengthMismatch("got " + std::to_string(alpha_.size()) +
                         " thinning probabilities for " +
                         std::to_string(rt_.topology().edges().size()) + " edges");
  for (std::size_t e = 0; e < alpha_.size(); ++e) {
    if (!(alpha_[e] > kAlphaMargin && alpha_[e] < 1.0 - kAlphaMargin))
      throw AlphaOutOfRange("edge " + std::to_string(e) + ": thinning probability " +
                            std::to_string(alpha_[e]) +
                            " must lie strictly inside (0,1)");
  }
}

MpmrfModel build_approx(const MeanParamIsing& model) {
  const double q = model.q(0);
  for (Vertex v = 1; v < model.vertex_count(); ++v) {
    if (std::abs(model.q(v) - q) > 1e-12)
      throw NotCommonQ("vertex " + model.topology().label(v) + " has mean " +
                       std::to_string(model.q(v)) + " but vertex " +
                       model.topology().label(0) + " has " + std::to_string(q) +
                       "; the approximation requires a common mean");
  }
  for (std::size_t e = 0; e < model.alpha().size(); ++e) {
    if (!(model.alpha(e) > kAlphaMargin && model.alpha(e) < 1.0 - kAlphaMargin))
      throw AlphaOutOfRange("edge " + std::to_string(e) + ": correlation " +
                            std::to_string(model.alpha(e)) +
                            " outside (0,1); the approximation bound does not "
                            "cover it");
  }
  return MpmrfModel(model.rooted_tree(), q, model.alpha());
}

std::vector<std::uint32_t> sample_mpmrf(const MpmrfModel& model, RngStream& rng) {
  const RootedTree& rt = model.rooted_tree();
  std::vector<std::uint32_t> x(model.vertex_count(), 0);
  for (Vertex v : rt.order()) {
    if (rt.is_root(v)) {
      x[v] = sample_poisson(model.lambda(), rng);
      continue;
    }
    const double a = model.alpha(rt.parent_edge(v));
    x[v] = sample_binomial(x[rt.parent(v)], a, rng) +
           sample_poisson(model.lambda() * (1.0 - a), rng);
  }
  return x;
}

double mpmrf_conditional_pmf(std::uint32_t n_pa, double alpha, double lambda,
                             std::uint32_t k) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("thinning probability must lie strictly inside (0,1)");
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  const double innovation_mean = lambda * (1.0 - alpha);
  double binom = std::pow(1.0 - alpha, n_pa);  // Binomial(n_pa, alpha) at 0
  double total = 0.0;
  const std::uint32_t j_max = std::min(n_pa, k);
  for (std::uint32_t j = 0; j <= j_max; ++j) {
    total += binom * poisson_pmf(innovation_mean, k - j);
    binom *= (alpha / (1.0 - alpha)) * (static_cast<double>(n_pa - j) / (j + 1.0));
  }
  return total;
}

Cx mpmrf_sum_pgf(const MpmrfModel& model, Cx t) {
  const RootedTree& rt = model.rooted_tree();
  const std::size_t d = model.vertex_count();
  const Cx one{1.0, 0.0};
  // prod_a and prod_b accumulate the children's a and b values per position;
  // reverse topological order sees children before parents, no recursion.
  std::vector<Cx> prod_a(d, one);
  std::vector<Cx> prod_b(d, one);
  for (std::size_t pos = d - 1; pos > 0; --pos) {
    const Vertex v = rt.order()[pos];
    const double a = model.alpha(rt.parent_edge(v));
    const Cx z = t * prod_b[pos];
    const Cx b_v = Cx{1.0 - a, 0.0} + a * z;
    const Cx a_v = prod_a[pos] * cexp(model.lambda() * (1.0 - a) * (z - one));
    const std::size_t pa = rt.position(rt.parent(v));
    prod_a[pa] *= a_v;
    prod_b[pa] *= b_v;
  }
  const Cx z_root = t * prod_b[0];
  return prod_a[0] * cexp(model.lambda() * (z_root - one));
}

namespace {

double chernoff_tail_bound(const MpmrfModel& model, std::size_t n) {
  // Pr(M >= n) <= P_M(u) / u^n for any u > 1; the pgf is entire. Deep trees
  // blow the pgf up quickly at large u, so overflowed candidates are skipped.
  double best = 1.0;
  for (double u : {2.0, 4.0, 8.0, 16.0}) {
    const double value = mpmrf_sum_pgf(model, Cx{u, 0.0}).re;
    if (!std::isfinite(value)) continue;
    const double log_bound = std::log(value) - static_cast<double>(n) * std::log(u);
    best = std::min(best, std::exp(log_bound));
  }
  return best;
}

}  // namespace

TruncatedPmf mpmrf_sum_pmf(const MpmrfModel& model, std::size_t n_fft) {
  const std::size_t d = model.vertex_count();
  if (n_fft == 0) {
    const double cap =
        std::max(4.0 * static_cast<double>(d) * model.lambda(), static_cast<double>(d)) +
        64.0;
    n_fft = 1;
    while (n_fft < cap) n_fft <<= 1;
  } else if ((n_fft & (n_fft - 1)) != 0) {
    throw LengthNotPowerOfTwo("transform length " + std::to_string(n_fft) +
                              " is not a power of two");
  }
  const double tail = chernoff_tail_bound(model, n_fft);
  if (tail > kTruncationTolerance)
    throw TruncationTooSevere("tail mass bound " + std::to_string(tail) +
                              " beyond length " + std::to_string(n_fft) +
                              " exceeds 1e-9; increase the transform length");
  auto make_eval = [&model]() -> NodeEvaluator {
    return [&model](Cx t) { return mpmrf_sum_pgf(model, t); };
  };
  std::vector<double> raw = pmf_from_pgf(n_fft, make_eval, d);
  return {Pmf(std::move(raw), kPmfClipTolerance), tail};
}

double mpmrf_joint_pmf(const MpmrfModel& model, std::span<const std::uint32_t> x) {
  const std::size_t d = model.vertex_count();
  if (d > 6)
    throw DimensionTooLarge("joint verification is guarded at d <= 6, got d = " +
                            std::to_string(d));
  if (x.size() != d)
    throw LengthMismatch("configuration has " + std::to_string(x.size()) +
                         " entries for " + std::to_string(d) + " vertices");
  const RootedTree& rt = model.rooted_tree();
  double p = poisson_pmf(model.lambda(), x[rt.root()]);
  for (Vertex v : rt.order()) {
    if (rt.is_root(v)) continue;
    p *= mpmrf_conditional_pmf(x[rt.parent(v)], model.alpha(rt.parent_edge(v)),
                               model.lambda(), x[v]);
  }
  return p;
}

double tv_bound(std::size_t d, double q) {
  if (!(q > 0.0 && q < 1.0))
    throw DomainError("q must lie strictly inside (0,1)");
  return 1.2 * static_cast<double>(d) * q * q;
}

ConvexOrderReport check_convex_order(const Pmf& lhs, const Pmf& rhs,
                                     double tolerance) {
  ConvexOrderReport report;
  report.tolerance = tolerance;
  report.mean_lhs = lhs.mean();
  report.mean_rhs = rhs.mean();
  const std::size_t n = std::max(lhs.size(), rhs.size());
  report.margins.resize(n);
  bool dominated = true;
  for (std::size_t z = 0; z < n; ++z) {
    report.margins[z] = stop_loss(rhs, static_cast<double>(z)) -
                        stop_loss(lhs, static_cast<double>(z));
    if (report.margins[z] < -tolerance) dominated = false;
  }
  report.ordered =
      dominated && std::abs(report.mean_lhs - report.mean_rhs) <= tolerance;
  return report;
}

}  // namespace isingtree

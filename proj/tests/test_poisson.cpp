#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "isingtree/errors.hpp"
#include "isingtree/poisson.hpp"
#include "isingtree/sum_distribution.hpp"

using namespace isingtree;
using isingtree::testing::binary_tree_7;
using isingtree::testing::random_model;
using isingtree::testing::study_model;

namespace {

TreeTopology chain(Vertex d) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < d; ++v) edges.push_back({v, v + 1});
  return TreeTopology(d, std::move(edges));
}

double poisson_pmf_ref(double lambda, unsigned k) {
  return std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
}

}  // namespace

TEST_CASE("build approx") {
  MpmrfModel approx = build_approx(study_model(0.01));
  CHECK(approx.lambda() == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(approx.vertex_count() == 7);
  for (std::size_t e = 0; e < 6; ++e)
    CHECK(approx.alpha(e) == doctest::Approx(0.7).epsilon(1e-15));

  std::vector<double> q(7, 0.01);
  q[4] = 0.02;
  MeanParamIsing hetero(RootedTree(binary_tree_7(), 0), q, std::vector<double>(6, 0.7));
  CHECK_THROWS_AS(build_approx(hetero), NotCommonQ);

  MeanParamIsing negative(RootedTree(binary_tree_7(), 0), std::vector<double>(7, 0.3),
                          std::vector<double>(6, -0.2));
  CHECK_THROWS_AS(build_approx(negative), AlphaOutOfRange);

  CHECK_THROWS_AS(MpmrfModel(RootedTree(chain(3), 0), 0.0, {0.5, 0.5}), DomainError);
  CHECK_THROWS_AS(MpmrfModel(RootedTree(chain(3), 0), 1.0, {0.5, 1.0}), AlphaOutOfRange);
}

TEST_CASE("conditional pmf") {
  // No parent counts: pure Poisson innovation.
  for (unsigned k = 0; k < 10; ++k)
    CHECK(mpmrf_conditional_pmf(0, 0.3, 1.0, k) ==
          doctest::Approx(poisson_pmf_ref(0.7, k)).epsilon(1e-13));

  // Thinning probability near one with vanishing innovation: copy the parent.
  CHECK(mpmrf_conditional_pmf(3, 1.0 - 1e-9, 1.0, 3) ==
        doctest::Approx(1.0).epsilon(1e-7));
  CHECK(mpmrf_conditional_pmf(3, 1.0 - 1e-9, 1.0, 2) < 1e-7);

  // Rows sum to one over a generous truncation.
  for (unsigned n_pa : {0u, 1u, 2u, 5u, 11u}) {
    double total = 0.0;
    const unsigned cap = 10 * 2 + n_pa + 50;
    for (unsigned k = 0; k <= cap; ++k)
      total += mpmrf_conditional_pmf(n_pa, 0.37, 2.0, k);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(mpmrf_conditional_pmf(1, 1.5, 1.0, 0), DomainError);
}

TEST_CASE("sum pgf") {
  MpmrfModel m = build_approx(study_model(0.01));
  CHECK(mpmrf_sum_pgf(m, Cx{1.0, 0.0}).re == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(mpmrf_sum_pgf(m, Cx{1.0, 0.0}).im) < 1e-14);

  // Single vertex: exp(lambda (t - 1)).
  MpmrfModel single(RootedTree(TreeTopology(1, {}), 0), 0.8, {});
  RngStream rng(3, 0);
  for (int i = 0; i < 20; ++i) {
    const double t = 2.0 * rng.next_uniform() - 1.0;
    CHECK(mpmrf_sum_pgf(single, Cx{t, 0.0}).re ==
          doctest::Approx(std::exp(0.8 * (t - 1.0))).epsilon(1e-13));
  }
}

TEST_CASE("sum pmf reproduces the study's approximation column") {
  MpmrfModel m = build_approx(study_model(0.01));
  TruncatedPmf result = mpmrf_sum_pmf(m);
  CHECK(result.truncation_error < 1e-9);
  const Pmf& p = result.pmf;
  CHECK(std::abs(p[0] - 0.97239) < 5e-6);
  CHECK(std::abs(p[1] - 0.01307) < 5e-6);
  CHECK(std::abs(p[2] - 0.00291) < 5e-6);
  CHECK(std::abs(p.tail_mass(3) - 0.01164) < 5e-6);
  CHECK(p.mean() == doctest::Approx(0.07).epsilon(1e-9));

  // Stop-loss column of the q = 0.01 study table.
  CHECK(std::abs(stop_loss(p, 0.0) - 0.07000) < 5e-6);
  CHECK(std::abs(stop_loss(p, 1.0) - 0.04239) < 5e-6);
  CHECK(std::abs(stop_loss(p, 2.0) - 0.02785) < 5e-6);
  CHECK(std::abs(stop_loss(p, 7.0) - 0.00016) < 5e-6);

  MpmrfModel tiny = build_approx(study_model(0.001));
  const Pmf& pt = mpmrf_sum_pmf(tiny).pmf;
  CHECK(std::abs(pt[0] - 0.9972039) < 5e-8);
  CHECK(std::abs(stop_loss(pt, 1.0) - 0.004204) < 5e-7);
  CHECK(std::abs(stop_loss(pt, 7.0) - 0.000002) < 5e-7);
}

TEST_CASE("sum pmf truncation accounting") {
  MpmrfModel m(RootedTree(binary_tree_7(), 0), 2.0, std::vector<double>(6, 0.5));
  CHECK_THROWS_AS(mpmrf_sum_pmf(m, 16), TruncationTooSevere);
  TruncatedPmf ample = mpmrf_sum_pmf(m, 256);
  CHECK(ample.truncation_error < 1e-9);
  CHECK(ample.pmf.mean() == doctest::Approx(14.0).epsilon(1e-9));
  CHECK_THROWS_AS(mpmrf_sum_pmf(m, 100), LengthNotPowerOfTwo);
}

TEST_CASE("joint pmf") {
  MpmrfModel single(RootedTree(TreeTopology(1, {}), 0), 0.8, {});
  for (unsigned k = 0; k < 8; ++k) {
    const std::uint32_t x[1] = {k};
    CHECK(mpmrf_joint_pmf(single, x) ==
          doctest::Approx(poisson_pmf_ref(0.8, k)).epsilon(1e-13));
  }

  // Nearly independent: close to a product of Poissons.
  MpmrfModel indep(RootedTree(chain(3), 0), 0.9, std::vector<double>(2, 1e-8));
  for (std::uint32_t a = 0; a < 4; ++a) {
    for (std::uint32_t b = 0; b < 4; ++b) {
      for (std::uint32_t c = 0; c < 4; ++c) {
        const std::uint32_t x[3] = {a, b, c};
        const double product = poisson_pmf_ref(0.9, a) * poisson_pmf_ref(0.9, b) *
                               poisson_pmf_ref(0.9, c);
        CHECK(mpmrf_joint_pmf(indep, x) == doctest::Approx(product).epsilon(1e-5));
      }
    }
  }

  // Mass of a three-vertex chain over a generous lattice.
  MpmrfModel m(RootedTree(chain(3), 0), 0.7, {0.4, 0.6});
  double total = 0.0;
  for (std::uint32_t a = 0; a <= 30; ++a)
    for (std::uint32_t b = 0; b <= 30; ++b)
      for (std::uint32_t c = 0; c <= 30; ++c) {
        const std::uint32_t x[3] = {a, b, c};
        total += mpmrf_joint_pmf(m, x);
      }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

  MpmrfModel big(RootedTree(binary_tree_7(), 0), 0.5, std::vector<double>(6, 0.5));
  const std::uint32_t x7[7] = {};
  CHECK_THROWS_AS(mpmrf_joint_pmf(big, x7), DimensionTooLarge);
}

TEST_CASE("oracle: pgf-based pmf equals truncated tree convolution at small d") {
  MpmrfModel m(RootedTree(TreeTopology(4, {{0, 1}, {1, 2}, {1, 3}}), 0), 0.6,
               {0.5, 0.3, 0.8});
  const unsigned cap = 24;
  std::vector<double> convolution(4 * cap + 1, 0.0);
  for (std::uint32_t a = 0; a <= cap; ++a)
    for (std::uint32_t b = 0; b <= cap; ++b)
      for (std::uint32_t c = 0; c <= cap; ++c)
        for (std::uint32_t d = 0; d <= cap; ++d) {
          const std::uint32_t x[4] = {a, b, c, d};
          convolution[a + b + c + d] += mpmrf_joint_pmf(m, x);
        }
  const Pmf fast = mpmrf_sum_pmf(m, 128).pmf;
  for (std::size_t k = 0; k < 40; ++k)
    CHECK(std::abs(fast[k] - convolution[k]) < 1e-9);
}

TEST_CASE("oracle: pgf-based pmf within sampling error of simulation") {
  MpmrfModel m = build_approx(study_model(0.01));
  const Pmf exact = mpmrf_sum_pmf(m).pmf;
  const std::size_t n = 1000000;
  RngStream rng(404, 0);
  std::vector<double> counts(exact.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = sample_mpmrf(m, rng);
    std::size_t total = 0;
    for (auto v : x) total += v;
    if (total < counts.size()) counts[total] += 1.0;
  }
  for (std::size_t k = 0; k < 12; ++k) {
    const double se = std::sqrt(std::max(exact[k] * (1.0 - exact[k]), 1e-12) / n);
    CHECK(std::abs(counts[k] / n - exact[k]) <= 4 * se + 1e-9);
  }
}

TEST_CASE("sampler moments") {
  // Marginal means converge to lambda at every vertex; correlations follow
  // the path product.
  MpmrfModel m(RootedTree(chain(3), 0), 0.5, {0.6, 0.6});
  const std::size_t n = 1000000;
  RngStream rng(405, 0);
  std::vector<double> mean(3, 0.0);
  std::vector<double> sq(3, 0.0);
  double cross01 = 0.0, cross02 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = sample_mpmrf(m, rng);
    for (int v = 0; v < 3; ++v) {
      mean[v] += x[v];
      sq[v] += static_cast<double>(x[v]) * x[v];
    }
    cross01 += static_cast<double>(x[0]) * x[1];
    cross02 += static_cast<double>(x[0]) * x[2];
  }
  const double se = std::sqrt(0.5 / n);  // Poisson variance = lambda
  for (int v = 0; v < 3; ++v) {
    mean[v] /= n;
    sq[v] /= n;
    CHECK(std::abs(mean[v] - 0.5) < 4 * se);
  }
  auto corr = [&](double cross, int u, int v) {
    const double cov = cross / n - mean[u] * mean[v];
    return cov / std::sqrt((sq[u] - mean[u] * mean[u]) * (sq[v] - mean[v] * mean[v]));
  };
  CHECK(std::abs(corr(cross01, 0, 1) - 0.6) < 0.01);
  CHECK(std::abs(corr(cross02, 0, 2) - 0.36) < 0.01);

  // Thinning probability near one: children shadow the root.
  MpmrfModel copy(RootedTree(chain(3), 0), 1.0, std::vector<double>(2, 1.0 - 1e-9));
  RngStream rng2(405, 1);
  for (int i = 0; i < 2000; ++i) {
    const auto x = sample_mpmrf(copy, rng2);
    CHECK(x[1] == x[0]);
    CHECK(x[2] == x[0]);
  }
}

TEST_CASE("tv bound values") {
  CHECK(tv_bound(7, 0.01) == doctest::Approx(0.00084).epsilon(1e-12));
  CHECK(tv_bound(7, 0.001) == doctest::Approx(0.0000084).epsilon(1e-12));
  CHECK(tv_bound(7, 1e-8) < 1e-14);
  CHECK_THROWS_AS(tv_bound(7, 0.0), DomainError);
}

TEST_CASE("sum distributions meet the tv bound") {
  for (double q : {0.01, 0.001}) {
    MeanParamIsing ising = study_model(q);
    const Pmf p_k = sum_pmf(ising);
    const Pmf p_m = mpmrf_sum_pmf(build_approx(ising)).pmf;
    CHECK(tv_distance(p_k, p_m) <= tv_bound(7, q));
  }
}

TEST_CASE("joint tv distance on small chains meets the bound") {
  for (double q : {0.01, 0.001}) {
    MeanParamIsing ising(RootedTree(chain(3), 0), std::vector<double>(3, q),
                         std::vector<double>(2, 0.7));
    MpmrfModel approx = build_approx(ising);
    double l1 = 0.0;
    std::vector<std::uint8_t> bits(3);
    for (std::uint32_t a = 0; a <= 20; ++a)
      for (std::uint32_t b = 0; b <= 20; ++b)
        for (std::uint32_t c = 0; c <= 20; ++c) {
          const std::uint32_t x[3] = {a, b, c};
          double p_j = 0.0;
          if (a <= 1 && b <= 1 && c <= 1) {
            bits = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                    static_cast<std::uint8_t>(c)};
            p_j = ising.joint_pmf(bits);
          }
          l1 += std::abs(p_j - mpmrf_joint_pmf(approx, x));
        }
    CHECK(l1 / 2.0 <= tv_bound(3, q));
  }
}

TEST_CASE("convex order") {
  MeanParamIsing ising = study_model(0.01);
  const Pmf p_k = sum_pmf(ising);
  const Pmf p_m = mpmrf_sum_pmf(build_approx(ising)).pmf;

  // A distribution against itself: ordered with zero margins.
  ConvexOrderReport self = check_convex_order(p_k, p_k);
  CHECK(self.ordered);
  for (double margin : self.margins) CHECK(margin == 0.0);

  // The study pair: ordered, margins matching the printed table differences.
  ConvexOrderReport study = check_convex_order(p_k, p_m);
  CHECK(study.ordered);
  CHECK(study.mean_lhs == doctest::Approx(study.mean_rhs).epsilon(1e-9));
  const std::vector<double> printed{0.00000, 0.00008, 0.00013, 0.00019,
                                    0.00021, 0.00020, 0.00020, 0.00016};
  for (std::size_t z = 0; z < printed.size(); ++z)
    CHECK(std::abs(study.margins[z] - printed[z]) < 1e-5);

  // Binomial(2, 1/2) is strictly riskier than a point mass at the same mean,
  // so with the binomial on the left the order fails.
  Pmf binomial = Pmf::from_exact({0.25, 0.5, 0.25});
  Pmf point = Pmf::from_exact({0.0, 1.0, 0.0});
  CHECK(!check_convex_order(binomial, point).ordered);
  CHECK(check_convex_order(point, binomial).ordered);
}

TEST_CASE("random common-q models: bound and order hold") {
  RngStream rng(406, 0);
  for (int i = 0; i < 10; ++i) {
    const Vertex d = static_cast<Vertex>(2 + rng.next_u64() % 11);
    MeanParamIsing m = random_model(d, rng, 0.005, 0.05, /*common_q=*/true,
                                    /*positive_alpha=*/true);
    const Pmf p_k = sum_pmf(m);
    const Pmf p_m = mpmrf_sum_pmf(build_approx(m)).pmf;
    CHECK(tv_distance(p_k, p_m) <= tv_bound(d, m.q(0)));
    CHECK(check_convex_order(p_k, p_m).ordered);
  }
}

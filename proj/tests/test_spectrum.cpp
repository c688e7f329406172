#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "potts_forge/error.hpp"
#include "potts_forge/spectrum.hpp"

using namespace potts_forge;

namespace {

PottsModel two_node() { return ising(path(2)); }
const Params kFerro{{0.0, 0.0}, {-1.0}};

Params random_params(const PottsModel& m, std::mt19937_64& rng, bool integral = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> k(-1, 1);
  Params p = Params::zeros(m);
  for (double& h : p.H) h = integral ? k(rng) : u(rng);
  for (double& j : p.J) j = integral ? k(rng) : u(rng);
  return p;
}

std::vector<double> beta_grid_0_10() {
  std::vector<double> g;
  for (int i = 0; i <= 40; ++i) g.push_back(0.25 * i);
  return g;
}

}  // namespace

TEST(Spectrum, TwoNodeFerromagnet) {
  const Spectrum s = compute_spectrum(two_node(), kFerro);
  EXPECT_DOUBLE_EQ(s.E0, -1.0);
  EXPECT_DOUBLE_EQ(s.E1, 1.0);
  EXPECT_DOUBLE_EQ(s.delta_E, 2.0);
  EXPECT_EQ(s.ground, (std::vector<StateIndex>{0, 3}));
  EXPECT_EQ(s.n_excited, 2u);
  EXPECT_FALSE(s.fully_degenerate);
}

TEST(Spectrum, ZeroParamsDegenerate) {
  const PottsModel m = ising(complete(3));
  const Spectrum s = compute_spectrum(m, Params::zeros(m));
  EXPECT_EQ(s.delta_E, 0.0);
  EXPECT_EQ(s.n_ground(), 8u);
  EXPECT_TRUE(s.fully_degenerate);
}

TEST(Spectrum, K3Ground) {
  const PottsModel m = ising(complete(3));
  const Spectrum s = compute_spectrum(m, Params{{1, 1, 1}, {-1, -1, -1}});
  EXPECT_DOUBLE_EQ(s.E0, -6.0);
  EXPECT_EQ(s.ground, (std::vector<StateIndex>{7}));
}

TEST(Spectrum, MatchesBruteForce) {
  std::mt19937_64 rng(5);
  const PottsModel q(cycle(5), 3, {1, 0, -1}, {{1, -1, 0}, {-1, 1, 0.5}, {0, 0.5, 2}});
  for (int t = 0; t < 20; ++t) {
    const bool integral = t % 2 == 0;
    const PottsModel& m = t < 10 ? q : ising(petersen());
    const Params p = random_params(m, rng, integral);
    const auto e = oracle::energies(m, p);
    const auto lv = oracle::levels(e);
    const Spectrum s = compute_spectrum(m, p);
    ASSERT_EQ(s.n_states(), e.size());
    for (std::size_t i = 0; i < e.size(); ++i) EXPECT_NEAR(s.energies[i], e[i], 1e-12);
    EXPECT_NEAR(s.E0, lv.E0, 1e-12);
    EXPECT_NEAR(s.E1, lv.E1, 1e-12);
    EXPECT_EQ(s.ground, lv.ground);
    EXPECT_EQ(s.n_excited + s.n_ground(), s.n_states());
  }
}

TEST(Spectrum, ThreadCountDoesNotChangeResults) {
  std::mt19937_64 rng(9);
  const PottsModel m = ising(petersen());
  const Params p = random_params(m, rng);
  SpectrumOptions one, four;
  four.threads = 4;
  const Spectrum a = compute_spectrum(m, p, one);
  const Spectrum b = compute_spectrum(m, p, four);
  EXPECT_EQ(a.energies, b.energies);
  EXPECT_EQ(a.ground, b.ground);
  const std::vector<StateIndex> data{a.ground.front()};
  EXPECT_EQ(nll(a, data, 0.7), nll(b, data, 0.7));
  EXPECT_EQ(log_partition_function(a, 3.0), log_partition_function(b, 3.0));
  EXPECT_EQ(nll_gradient(m, p, data, 0.7, one), nll_gradient(m, p, data, 0.7, four));
}

TEST(Spectrum, TooLarge) {
  SpectrumOptions o;
  o.max_states = 512;
  try {
    compute_spectrum(ising(petersen()), Params::zeros(ising(petersen())), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(Spectrum, PartitionFunction) {
  const Spectrum s = compute_spectrum(two_node(), kFerro);
  EXPECT_DOUBLE_EQ(partition_function(s, 0.0), 4.0);
  const double z = 2 * std::exp(1.0) + 2 * std::exp(-1.0);
  EXPECT_NEAR(partition_function(s, 1.0), z, 1e-12);
  EXPECT_NEAR(probability(s, 0, 1.0), std::exp(1.0) / z, 1e-12);
  EXPECT_NEAR(partition_function(s, 40.0) * std::exp(40.0 * s.E0), 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(probability(s, 1, 0.0), 0.25);
}

TEST(Spectrum, ProbabilityNormalised) {
  std::mt19937_64 rng(2);
  const PottsModel m = ising(complete(4));
  const Spectrum s = compute_spectrum(m, random_params(m, rng));
  for (double beta : {0.0, 0.5, 1.0, 5.0}) {
    double total = 0.0, best = 0.0;
    for (StateIndex i = 0; i < s.n_states(); ++i) {
      total += probability(s, i, beta);
      best = std::max(best, probability(s, i, beta));
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    if (beta > 0) EXPECT_DOUBLE_EQ(probability(s, s.ground.front(), beta), best);
  }
}

TEST(Spectrum, LogPartitionMatchesNaive) {
  std::mt19937_64 rng(4);
  const PottsModel m = ising(cycle(6));
  for (int t = 0; t < 10; ++t) {
    const Spectrum s = compute_spectrum(m, random_params(m, rng));
    for (double beta : {0.0, 0.3, 2.0, 10.0}) {
      double naive = 0.0;
      for (double e : s.energies) naive += std::exp(-beta * e);
      EXPECT_NEAR(partition_function(s, beta), naive, 1e-10 * naive);
    }
  }
  // Large beta stays finite in log form.
  const Spectrum s = compute_spectrum(m, Params{std::vector<double>(6, 1.0), std::vector<double>(6, -1.0)});
  EXPECT_TRUE(std::isfinite(log_partition_function(s, 1e4)));
}

TEST(Spectrum, NllValues) {
  const Spectrum s = compute_spectrum(two_node(), kFerro);
  const std::vector<StateIndex> data{0, 3};
  EXPECT_NEAR(nll(s, data, 0.0), 2 * std::log(4.0), 1e-12);
  const double z = 2 * std::exp(1.0) + 2 * std::exp(-1.0);
  EXPECT_NEAR(nll(s, data, 1.0), -2 * std::log(std::exp(1.0) / z), 1e-12);
  EXPECT_NEAR(nll(s, data, 1.0), 1.6401503832, 1e-9);
  EXPECT_NEAR(nll(s, data, 200.0), 2 * std::log(2.0), 1e-12);
  EXPECT_THROW(nll(s, {}, 1.0), Error);
  const std::vector<StateIndex> bad{4};
  EXPECT_THROW(nll(s, bad, 1.0), Error);
}

TEST(Spectrum, NllMatchesNaive) {
  std::mt19937_64 rng(8);
  const PottsModel m = ising(complete(4));
  for (int t = 0; t < 10; ++t) {
    const Params p = random_params(m, rng);
    const Spectrum s = compute_spectrum(m, p);
    const auto e = oracle::energies(m, p);
    const std::vector<std::uint64_t> data{1, 5, 12};
    const std::vector<StateIndex> d(data.begin(), data.end());
    for (double beta : {0.0, 0.5, 3.0}) EXPECT_NEAR(nll(s, d, beta), oracle::naive_nll(e, data, beta), 1e-10);
  }
}

TEST(Spectrum, UpperBound) {
  EXPECT_NEAR(nll_upper_bound(2, 2, 2.0, 1.0), 2 * std::log(2 + 2 * std::exp(-2.0)), 1e-14);
  EXPECT_NEAR(nll_upper_bound(3, 5, 1.0, 0.0), 3 * std::log(8.0), 1e-14);
  EXPECT_NEAR(nll_upper_bound(3, 5, 1.0, 1e3), 3 * std::log(3.0), 1e-14);
  try {
    nll_upper_bound(2, 2, 0.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateGap);
  }
}

TEST(Spectrum, BetaStar) {
  const double expect = (std::log(1014.0 / 10.0) - std::log(std::exp(0.1) - 1.0)) / 4.0;
  EXPECT_NEAR(beta_star(10, 1014, 4, 1), expect, 1e-12);
  EXPECT_NEAR(beta_star(10, 1014, 4, 1), 1.7178, 1e-4);
  EXPECT_NEAR(beta_star(10, 1014, 8, 1), 0.5 * beta_star(10, 1014, 4, 1), 1e-12);
  EXPECT_THROW(beta_star(10, 1014, 0, 1), Error);
  EXPECT_THROW(beta_star(10, 1014, 4, 0), Error);
}

TEST(Spectrum, LikelihoodBoundsAlongBeta) {
  std::mt19937_64 rng(21);
  const PottsModel m = ising(cycle(5));
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    const Spectrum s = compute_spectrum(m, random_params(m, rng, t % 2 == 0));
    if (s.fully_degenerate) continue;
    ++checked;
    const auto& data = s.ground;
    const double ngs = static_cast<double>(s.n_ground());
    const double nes = static_cast<double>(s.n_excited);
    const double floor = ngs * std::log(ngs);
    // eta itself rounds onto its floor at large beta; the excess in log
    // form keeps the ordering visible.
    double prev = std::numeric_limits<double>::infinity();
    for (double beta : beta_grid_0_10()) {
      const double eta = nll(s, data, beta);
      const double log_excess = log_nll_excess(s, data, beta);
      EXPECT_LT(log_excess, prev);
      EXPECT_GT(nll_excess(s, data, beta), 0.0);
      EXPECT_LE(eta, nll_upper_bound(ngs, nes, s.delta_E, beta) + 1e-10);
      prev = log_excess;
    }
    for (double eps : {0.1, 1.0}) {
      const double bs = beta_star(ngs, nes, s.delta_E, eps);
      for (double beta : {bs * 1.0001 + 1e-9, bs + 0.5, bs + 5.0}) EXPECT_LT(nll(s, data, beta) - floor, eps);
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(Spectrum, LogExcess) {
  const Spectrum s = compute_spectrum(two_node(), kFerro);
  const std::vector<StateIndex> data{0, 3};
  for (double beta : {0.1, 1.0, 5.0}) {
    EXPECT_NEAR(std::exp(log_nll_excess(s, data, beta)), nll(s, data, beta) - 2 * std::log(2.0), 1e-12);
  }
  // Deep in the tail: 2 log(1 + e^{-2 beta}) ~ 2 e^{-2 beta}.
  EXPECT_NEAR(log_nll_excess(s, data, 300.0), std::log(2.0) - 600.0, 1e-9);
  const std::vector<StateIndex> off{1};
  EXPECT_THROW(log_nll_excess(s, off, 1.0), Error);
}

TEST(Spectrum, BetaDerivative) {
  std::mt19937_64 rng(13);
  const PottsModel m = ising(complete(4));
  for (int t = 0; t < 5; ++t) {
    const Spectrum s = compute_spectrum(m, random_params(m, rng, true));
    if (s.fully_degenerate) continue;
    for (double beta : {0.2, 1.0, 2.5}) {
      const double h = 1e-5;
      const double fd = (nll(s, s.ground, beta + h) - nll(s, s.ground, beta - h)) / (2 * h);
      const double identity = static_cast<double>(s.n_ground()) * (s.E0 - expected_energy(s, beta));
      EXPECT_NEAR(fd, identity, 1e-5);
      EXPECT_NEAR(nll_beta_derivative(s, s.ground, beta), identity, 1e-10);
    }
  }
}

TEST(Spectrum, GradientExamples) {
  const PottsModel m = two_node();
  const std::vector<StateIndex> data{0};
  const auto g = nll_gradient(m, Params::zeros(m), data, 1.0);
  ASSERT_EQ(g.size(), 3u);
  for (double v : g) EXPECT_NEAR(v, 1.0, 1e-12);
  for (double v : nll_gradient(m, kFerro, data, 0.0)) EXPECT_EQ(v, 0.0);
}

TEST(Spectrum, GradientFiniteDifferences) {
  std::mt19937_64 rng(17);
  const PottsModel m(complete(3), 3, {1, 0, -1}, {{1, -1, 0}, {-1, 1, 0.5}, {0, 0.5, 2}});
  std::uniform_int_distribution<StateIndex> pick(0, m.n_states() - 1);
  std::uniform_real_distribution<double> beta_d(0.1, 3.0);
  for (int t = 0; t < 10; ++t) {
    const Params p = random_params(m, rng);
    const std::vector<StateIndex> data{pick(rng), pick(rng), pick(rng)};
    const double beta = beta_d(rng);
    const auto g = nll_gradient(m, p, data, beta);
    auto theta = p.theta();
    for (std::size_t j = 0; j < theta.size(); ++j) {
      const double h = 1e-5;
      auto plus = theta, minus = theta;
      plus[j] += h;
      minus[j] -= h;
      const double fp = nll(compute_spectrum(m, Params::from_theta(m, plus)), data, beta);
      const double fm = nll(compute_spectrum(m, Params::from_theta(m, minus)), data, beta);
      const double fd = (fp - fm) / (2 * h);
      EXPECT_NEAR(g[j], fd, 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(Spectrum, TrainingDescends) {
  const PottsModel m = ising(complete(3));
  const ParamBounds b = ParamBounds::symmetric(m.graph(), 1, 1);
  const std::vector<StateIndex> data{0, 1, 2, 4};
  const Params p = train_nll(m, b, data, 1.0);
  const double trained = nll(compute_spectrum(m, p), data, 1.0);
  const double start = nll(compute_spectrum(m, Params::zeros(m)), data, 1.0);
  EXPECT_LT(trained, start);
  EXPECT_EQ(p, b.clamp(p));
  EXPECT_LT(projected_gradient_norm(b, p, nll_gradient(m, p, data, 1.0)), 1e-6);
  EXPECT_EQ(p, train_nll(m, b, data, 1.0));
}

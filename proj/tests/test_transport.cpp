#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "honeytext/errors.hpp"
#include "honeytext/rng.hpp"
#include "honeytext/transport.hpp"

#include "test_util.hpp"

using namespace honeytext;

namespace {

// Random symmetric cost table over disjoint item names.
struct RandomCosts {
  std::map<std::pair<std::string, std::string>, double> table;

  Metric metric() const {
    return [this](const std::string& a, const std::string& b) {
      if (a == b) return 0.0;
      auto it = table.find({a, b});
      if (it == table.end()) it = table.find({b, a});
      REQUIRE(it != table.end());
      return it->second;
    };
  }
};

struct Instance {
  WeightedBag x, y;
  RandomCosts costs;
};

Instance random_instance(std::size_t n, Rng& rng) {
  Instance inst;
  std::vector<std::string> xs, ys;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back("x" + std::to_string(i));
    ys.push_back("y" + std::to_string(i));
  }
  for (const auto& a : xs) {
    for (const auto& b : ys) {
      inst.costs.table[{a, b}] = rng.uniform_real();
    }
  }
  inst.x = WeightedBag::uniform(xs);
  inst.y = WeightedBag::uniform(ys);
  return inst;
}

// Minimum assignment cost over all permutations, divided by n.
double permutation_minimum(const Instance& inst) {
  std::size_t n = inst.x.items.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  auto metric = inst.costs.metric();
  double best = std::numeric_limits<double>::infinity();
  do {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += metric(inst.x.items[i], inst.y.items[perm[i]]);
    }
    best = std::min(best, sum);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(n);
}

void check_marginals(const TransportPlan& plan, const WeightedBag& x,
                     const WeightedBag& y) {
  REQUIRE(plan.flow.size() == x.items.size());
  for (std::size_t i = 0; i < plan.flow.size(); ++i) {
    REQUIRE(plan.flow[i].size() == y.items.size());
    double row = 0.0;
    for (double f : plan.flow[i]) {
      CHECK(f >= -1e-12);
      row += f;
    }
    CHECK(row == doctest::Approx(x.weights[i]).epsilon(1e-9));
  }
  for (std::size_t j = 0; j < y.items.size(); ++j) {
    double column = 0.0;
    for (std::size_t i = 0; i < plan.flow.size(); ++i) {
      column += plan.flow[i][j];
    }
    CHECK(column == doctest::Approx(y.weights[j]).epsilon(1e-9));
  }
}

// Points on the unit sphere give a genuine metric for triangle checks.
struct PointMetric {
  std::map<std::string, std::array<double, 3>> points;

  void add(const std::string& name, Rng& rng) {
    std::array<double, 3> p{rng.normal(), rng.normal(), rng.normal()};
    points[name] = p;
  }
  Metric metric() const {
    return [this](const std::string& a, const std::string& b) {
      const auto& pa = points.at(a);
      const auto& pb = points.at(b);
      double s = 0.0;
      for (int i = 0; i < 3; ++i) s += (pa[i] - pb[i]) * (pa[i] - pb[i]);
      return std::sqrt(s);
    };
  }
};

}  // namespace

TEST_CASE("identical bags transport for free") {
  auto bag = WeightedBag::uniform({"sun", "rain", "wind"});
  auto plan = emd(bag, bag, [](const std::string& a, const std::string& b) {
    return a == b ? 0.0 : 1.0;
  });
  CHECK(plan.cost == doctest::Approx(0.0));
  check_marginals(plan, bag, bag);
}

TEST_CASE("singleton bags pay the single route") {
  auto plan = emd(WeightedBag::uniform({"a"}), WeightedBag::uniform({"b"}),
                  [](const std::string&, const std::string&) { return 0.4; });
  CHECK(plan.cost == doctest::Approx(0.4));
  REQUIRE(plan.flow.size() == 1);
  REQUIRE(plan.flow[0].size() == 1);
  CHECK(plan.flow[0][0] == doctest::Approx(1.0));
}

TEST_CASE("uniform instances match the permutation oracle") {
  Rng rng(1001);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 2 + rng.uniform_index(3);
    Instance inst = random_instance(n, rng);
    auto plan = emd(inst.x, inst.y, inst.costs.metric());
    CHECK(plan.cost ==
          doctest::Approx(permutation_minimum(inst)).epsilon(1e-9));
    check_marginals(plan, inst.x, inst.y);
    for (const auto& row : plan.flow) {
      for (double f : row) {
        bool vertex = std::abs(f) <= 1e-9 ||
                      std::abs(f - 1.0 / static_cast<double>(n)) <= 1e-9;
        CHECK(vertex);
      }
    }
  }
}

TEST_CASE("unequal bags go through the general solver") {
  auto metric = [](const std::string& a, const std::string& b) {
    return a == b ? 0.0 : (a < b ? 0.25 : 0.75);
  };
  WeightedBag x{{"a", "b"}, {0.5, 0.5}};
  WeightedBag y{{"c"}, {1.0}};
  auto plan = emd(x, y, metric);
  CHECK(plan.cost == doctest::Approx(0.5 * 0.25 + 0.5 * 0.25));
  check_marginals(plan, x, y);
}

TEST_CASE("two-by-two weighted instances match the endpoint oracle") {
  // With fixed marginals the feasible set is one-dimensional, so the
  // optimum sits at an endpoint of the flow interval.
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    double d00 = rng.uniform_real(), d01 = rng.uniform_real();
    double d10 = rng.uniform_real(), d11 = rng.uniform_real();
    WeightedBag x{{"a0", "a1"}, {0.3, 0.7}};
    WeightedBag y{{"b0", "b1"}, {0.6, 0.4}};
    auto metric = [&](const std::string& a, const std::string& b) {
      if (a == "a0") return b == "b0" ? d00 : d01;
      return b == "b0" ? d10 : d11;
    };
    auto cost_at = [&](double t) {
      return t * d00 + (0.3 - t) * d01 + (0.6 - t) * d10 + (0.1 + t) * d11;
    };
    double best = std::min(cost_at(0.0), cost_at(0.3));
    auto plan = emd(x, y, metric);
    CHECK(plan.cost == doctest::Approx(best).epsilon(1e-9));
    check_marginals(plan, x, y);
  }
}

TEST_CASE("bag validation rejects malformed inputs") {
  Metric zero = [](const std::string&, const std::string&) { return 0.0; };
  CHECK_THROWS_AS(emd(WeightedBag{{"a"}, {0.5}}, WeightedBag{{"b"}, {1.0}},
                      zero),
                  InputError);
  CHECK_THROWS_AS(emd(WeightedBag{{"a"}, {1.0, 2.0}},
                      WeightedBag{{"b"}, {1.0}}, zero),
                  InputError);
  CHECK_THROWS_AS(emd(WeightedBag{{"a"}, {-1.0}}, WeightedBag{{"b"}, {1.0}},
                      zero),
                  InputError);
  CHECK_THROWS_AS(emd(WeightedBag{}, WeightedBag{{"b"}, {1.0}}, zero),
                  InputError);
  CHECK_THROWS_AS(WeightedBag::uniform({}), InputError);
}

TEST_CASE("uniform bags behave as a pseudo-metric") {
  Rng rng(314);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + rng.uniform_index(3);
    PointMetric points;
    std::vector<std::string> xs, ys, zs;
    for (std::size_t i = 0; i < n; ++i) {
      xs.push_back("x" + std::to_string(i));
      ys.push_back("y" + std::to_string(i));
      zs.push_back("z" + std::to_string(i));
      points.add(xs.back(), rng);
      points.add(ys.back(), rng);
      points.add(zs.back(), rng);
    }
    auto metric = points.metric();
    WeightedBag x = WeightedBag::uniform(xs);
    WeightedBag y = WeightedBag::uniform(ys);
    WeightedBag z = WeightedBag::uniform(zs);

    double xy = emd(x, y, metric).cost;
    double yx = emd(y, x, metric).cost;
    double yz = emd(y, z, metric).cost;
    double xz = emd(x, z, metric).cost;
    CHECK(xy == doctest::Approx(yx).epsilon(1e-9));
    CHECK(emd(x, x, metric).cost == doctest::Approx(0.0));
    CHECK(xz <= xy + yz + 1e-9);
  }
}

TEST_CASE("flatten distance cross-checks the solver on uniform bags") {
  Rng rng(2718);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng.uniform_index(4);
    Instance inst = random_instance(n, rng);
    double flat =
        flatten_distance(inst.x.items, inst.y.items, inst.costs.metric());
    double solved = emd(inst.x, inst.y, inst.costs.metric()).cost;
    CHECK(flat == doctest::Approx(solved).epsilon(1e-9));
  }
}

TEST_CASE("flatten distance basics") {
  Metric table = [](const std::string& a, const std::string& b) {
    return a == b ? 0.0 : 0.7;
  };
  CHECK(flatten_distance({"a", "b"}, {"a", "b"}, table) ==
        doctest::Approx(0.0));
  CHECK(flatten_distance({"a"}, {"b"}, table) == doctest::Approx(0.7));
  CHECK_THROWS_AS(flatten_distance({"a"}, {"a", "b"}, table), InputError);

  std::vector<std::string> eleven(11, "w");
  CHECK_THROWS_AS(flatten_distance(eleven, eleven, table), ResourceError);
}

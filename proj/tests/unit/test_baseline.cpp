#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "gpcr/baseline.hpp"
#include "gpcr/error.hpp"

using namespace gpcr;

namespace {
Dataset one_dim(std::vector<double> pos, std::vector<double> neg) {
  Dataset d;
  for (double x : pos)
    d.vectors.push_back({{x}, Label::Positive, ""});
  for (double x : neg)
    d.vectors.push_back({{x}, Label::Negative, ""});
  return d;
}
} // namespace

TEST_CASE("nb_train computes priors, means and population variances") {
  NbModel m = nb_train(one_dim({0, 2}, {10, 12}));
  CHECK(m.prior[0] == 0.5);
  CHECK(m.prior[1] == 0.5);
  CHECK(m.mean[0][0] == 1);
  CHECK(m.mean[1][0] == 11);
  CHECK(m.variance[0][0] == 1);
  CHECK(m.variance[1][0] == 1);

  NbModel flat = nb_train(one_dim({3, 3}, {1, 2, 3}));
  CHECK(flat.variance[0][0] == kVarianceFloor);
  CHECK(flat.prior[0] == doctest::Approx(0.4));
  CHECK(flat.prior[0] + flat.prior[1] == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(nb_train(Dataset{}), DataError);
  CHECK_THROWS_AS(nb_train(one_dim({1, 2}, {})), DataError);
}

TEST_CASE("nb_predict") {
  NbModel m = nb_train(one_dim({0, 2}, {10, 12}));
  std::vector<double> a{1.0}, b{11.0};
  CHECK(nb_predict(m, a) == Label::Positive);
  CHECK(nb_predict(m, b) == Label::Negative);

  // identical class models: tie goes to the positive class
  NbModel sym = nb_train(one_dim({0, 2}, {0, 2}));
  std::vector<double> x{7.0};
  CHECK(nb_predict(sym, x) == Label::Positive);

  std::vector<double> wrong{1.0, 2.0};
  CHECK_THROWS_AS(nb_predict(m, wrong), ContractError);
}

TEST_CASE("a feature distributed identically in both classes leaves predictions unchanged") {
  Rng rng(3);
  Dataset base = fixtures::gaussian_clusters(30, 3, 1.5, 8);
  Dataset extended = base;
  // same multiset of values in each class
  std::vector<double> pool;
  for (int i = 0; i < 30; ++i)
    pool.push_back(rng.normal() * 5);
  std::size_t pi = 0, ni = 0;
  for (auto& v : extended.vectors)
    v.values.push_back(pool[v.label == Label::Positive ? pi++ : ni++]);

  NbModel m0 = nb_train(base), m1 = nb_train(extended);
  for (int k = 0; k < 200; ++k) {
    std::vector<double> x{rng.normal() * 3, rng.normal() * 3, rng.normal() * 3};
    std::vector<double> xe = x;
    xe.push_back(rng.normal() * 10);
    double d0 = m0.log_score(0, x) - m0.log_score(1, x);
    double d1 = m1.log_score(0, xe) - m1.log_score(1, xe);
    CHECK(d1 == doctest::Approx(d0).epsilon(1e-9));
    CHECK(nb_predict(m0, x) == nb_predict(m1, xe));
  }
}

TEST_CASE("well separated classes are fit perfectly") {
  Dataset d = fixtures::gaussian_clusters(50, 4, 10.0, 21);
  NbModel m = nb_train(d);
  for (const auto& v : d.vectors)
    CHECK(nb_predict(m, v.values) == v.label);
}

TEST_CASE("naive Bayes persistence") {
  Dataset d = fixtures::gaussian_clusters(10, 24, 2.0, 4);
  NbModel m = nb_train(d);
  std::ostringstream out;
  save_nb_model(m, out);
  std::istringstream in(out.str());
  NbModel back = load_nb_model(in);
  CHECK(back.prior == m.prior);
  CHECK(back.mean == m.mean);
  CHECK(back.variance == m.variance);

  std::string bad = out.str();
  bad.replace(bad.find("gpcr-nb/1"), 9, "gpcr-nb/2");
  std::istringstream bin(bad);
  CHECK_THROWS_AS(load_nb_model(bin), ModelError);
}

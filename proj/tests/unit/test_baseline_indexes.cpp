#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "treeindex/baseline_indexes.hpp"

using namespace treeindex;
using testsupport::make_dataset;

namespace {

Dataset with_classes(const std::vector<std::vector<double>>& rows,
                     const std::vector<std::string>& classes) {
  return make_dataset(rows, classes);
}

// Arbitrary 1-D positions; the external indexes ignore the values.
std::vector<std::vector<double>> positions(std::size_t n) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back({static_cast<double>(i)});
  return rows;
}

}  // namespace

TEST_CASE("f_measure") {
  SUBCASE("perfect clustering") {
    const auto ds = with_classes(positions(4), {"A", "A", "B", "B"});
    const auto ca = ClusterAssignment({0, 0, 1, 1});
    CHECK(f_measure(ContingencyTable::from(ds, ca)) == 1.0);
  }
  SUBCASE("everything in one cluster, two balanced classes") {
    const auto ds = with_classes(positions(4), {"A", "B", "A", "B"});
    const auto ca = ClusterAssignment({0, 0, 0, 0});
    CHECK(f_measure(ContingencyTable::from(ds, ca)) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("clusters {A,A,B},{B}") {
    const auto ds = with_classes(positions(4), {"A", "A", "B", "B"});
    const auto ca = ClusterAssignment({0, 0, 0, 1});
    const double value = f_measure(ContingencyTable::from(ds, ca));
    // Class A: best F1 = 2*(2/3)/(2/3+1) = 0.8; class B: best F1 = 2/3.
    CHECK(value == doctest::Approx(11.0 / 15.0).epsilon(1e-12));
    CHECK(value == doctest::Approx(oracles::o_f_measure({0, 0, 0, 1},
                                                        {"A", "A", "B", "B"}))
                       .epsilon(1e-12));
  }
  SUBCASE("missing classes rejected") {
    const auto ds = make_dataset(positions(3));
    CHECK_THROWS_AS(ContingencyTable::from(ds, ClusterAssignment({0, 0, 1})),
                    std::invalid_argument);
  }
}

TEST_CASE("purity") {
  const auto ds = with_classes(positions(4), {"A", "B", "A", "B"});
  CHECK(purity(ContingencyTable::from(ds, ClusterAssignment({0, 1, 0, 1}))) == 1.0);
  CHECK(purity(ContingencyTable::from(ds, ClusterAssignment({0, 0, 1, 1}))) == 0.5);
  CHECK(purity(ContingencyTable::from(ds, ClusterAssignment({0, 1, 2, 3}))) == 1.0);
}

TEST_CASE("external entropy") {
  const auto ds = with_classes(positions(4), {"A", "A", "B", "B"});
  CHECK(external_entropy(ContingencyTable::from(ds, ClusterAssignment({0, 0, 1, 1}))) ==
        0.0);
  CHECK(external_entropy(ContingencyTable::from(ds, ClusterAssignment({0, 0, 0, 0}))) ==
        1.0);
  CHECK(external_entropy(ContingencyTable::from(ds, ClusterAssignment({0, 0, 0, 1}))) ==
        doctest::Approx(0.688722).epsilon(1e-6));
}

TEST_CASE("sse") {
  SUBCASE("singleton clusters") {
    const auto ds = make_dataset({{0}, {2}, {5}});
    CHECK(sse(ds, ClusterAssignment({0, 1, 2})) == 0.0);
  }
  SUBCASE("two records in one cluster") {
    const auto ds = make_dataset({{0}, {2}});
    CHECK(sse(ds, ClusterAssignment({0, 0})) == 2.0);
  }
  SUBCASE("splitting reduces SSE") {
    const auto ds = make_dataset({{0}, {0}, {4}, {4}});
    CHECK(sse(ds, ClusterAssignment({0, 0, 0, 0})) == 16.0);
    CHECK(sse(ds, ClusterAssignment({0, 0, 1, 1})) == 0.0);
  }
}

TEST_CASE("silhouette") {
  SUBCASE("tight far-apart pairs approach 1") {
    const auto ds = make_dataset({{0}, {1}, {100}, {101}});
    CHECK(silhouette(ds, ClusterAssignment({0, 0, 1, 1})) ==
          doctest::Approx(0.99).epsilon(0.01));
  }
  SUBCASE("identical records split arbitrarily score 0") {
    const auto ds = make_dataset({{3}, {3}, {3}, {3}});
    CHECK(silhouette(ds, ClusterAssignment({0, 1, 0, 1})) == 0.0);
  }
  SUBCASE("k=1 rejected") {
    const auto ds = make_dataset({{1}, {2}});
    CHECK_THROWS_AS(silhouette(ds, ClusterAssignment({0, 0})), std::invalid_argument);
  }
}

TEST_CASE("db index") {
  SUBCASE("two singleton clusters") {
    const auto ds = make_dataset({{0}, {1}});
    CHECK(db_index(ds, ClusterAssignment({0, 1})) == 0.0);
  }
  SUBCASE("two 1-D pairs") {
    const auto ds = make_dataset({{0}, {2}, {10}, {12}});
    CHECK(db_index(ds, ClusterAssignment({0, 0, 1, 1})) ==
          doctest::Approx(0.2).epsilon(1e-12));
  }
  SUBCASE("shrinking spread with fixed centers decreases DB") {
    double prev = std::numeric_limits<double>::infinity();
    for (double spread : {1.0, 0.5, 0.25, 0.1}) {
      const auto ds = make_dataset(
          {{-spread}, {spread}, {10 - spread}, {10 + spread}});
      const double value = db_index(ds, ClusterAssignment({0, 0, 1, 1}));
      CHECK(value < prev);
      prev = value;
    }
  }
  SUBCASE("coincident centroids degenerate to infinity") {
    const auto ds = make_dataset({{0}, {2}, {1}, {1}});
    CHECK(std::isinf(db_index(ds, ClusterAssignment({0, 0, 1, 1}))));
  }
}

TEST_CASE("xb index") {
  SUBCASE("two singleton clusters") {
    const auto ds = make_dataset({{0}, {7}});
    CHECK(xb_index(ds, ClusterAssignment({0, 1})) == 0.0);
  }
  SUBCASE("two 1-D pairs") {
    const auto ds = make_dataset({{0}, {2}, {10}, {12}});
    CHECK(xb_index(ds, ClusterAssignment({0, 0, 1, 1})) ==
          doctest::Approx(0.01).epsilon(1e-12));
  }
  SUBCASE("scale invariance") {
    const auto ds = make_dataset({{0, 1}, {2, 0}, {10, 3}, {12, 2}});
    std::vector<std::vector<double>> scaled;
    for (std::size_t i = 0; i < 4; ++i)
      scaled.push_back({3.0 * ds.at(i, 0), 3.0 * ds.at(i, 1)});
    const auto ca = ClusterAssignment({0, 0, 1, 1});
    CHECK(xb_index(make_dataset(scaled), ca) ==
          doctest::Approx(xb_index(ds, ca)).epsilon(1e-9));
  }
}

TEST_CASE("invariances across the board") {
  std::mt19937_64 rng(64);
  const auto ds = testsupport::make_uniform(24, 2, 123);
  std::vector<std::string> classes;
  for (std::size_t i = 0; i < 24; ++i) classes.push_back(i % 3 == 0 ? "u" : "v");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < 24; ++i) rows.push_back({ds.at(i, 0), ds.at(i, 1)});
  const auto labeled_ds = make_dataset(rows, classes);
  const auto labels = testsupport::uniform_labels(24, 3, 5);
  const auto ca = ClusterAssignment::from_labels(labels);

  SUBCASE("ranges hold") {
    const auto ct = ContingencyTable::from(labeled_ds, ca);
    CHECK(purity(ct) > 0.0);
    CHECK(purity(ct) <= 1.0);
    CHECK(f_measure(ct) >= 0.0);
    CHECK(f_measure(ct) <= 1.0);
    CHECK(external_entropy(ct) >= 0.0);
    CHECK(external_entropy(ct) <= 1.0);  // log2(2 classes)
    CHECK(sse(labeled_ds, ca) >= 0.0);
    CHECK(silhouette(labeled_ds, ca) >= -1.0);
    CHECK(silhouette(labeled_ds, ca) <= 1.0);
    CHECK(db_index(labeled_ds, ca) >= 0.0);
    CHECK(xb_index(labeled_ds, ca) >= 0.0);
  }

  SUBCASE("cluster-ID permutation leaves every index unchanged") {
    std::vector<std::size_t> renamed(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
      renamed[i] = (labels[i] + 1) % ca.declared_k();
    const auto cb = ClusterAssignment::from_labels(renamed);
    const auto ct_a = ContingencyTable::from(labeled_ds, ca);
    const auto ct_b = ContingencyTable::from(labeled_ds, cb);
    CHECK(f_measure(ct_a) == doctest::Approx(f_measure(ct_b)).epsilon(1e-12));
    CHECK(purity(ct_a) == doctest::Approx(purity(ct_b)).epsilon(1e-12));
    CHECK(external_entropy(ct_a) ==
          doctest::Approx(external_entropy(ct_b)).epsilon(1e-12));
    CHECK(sse(labeled_ds, ca) == doctest::Approx(sse(labeled_ds, cb)).epsilon(1e-12));
    CHECK(silhouette(labeled_ds, ca) ==
          doctest::Approx(silhouette(labeled_ds, cb)).epsilon(1e-12));
    CHECK(db_index(labeled_ds, ca) ==
          doctest::Approx(db_index(labeled_ds, cb)).epsilon(1e-12));
    CHECK(xb_index(labeled_ds, ca) ==
          doctest::Approx(xb_index(labeled_ds, cb)).epsilon(1e-12));
  }

  SUBCASE("translation invariance of the geometric indexes") {
    std::vector<std::vector<double>> shifted;
    for (const auto& r : rows) shifted.push_back({r[0] + 13.5, r[1] + 13.5});
    const auto ds2 = make_dataset(shifted);
    const auto ds1 = make_dataset(rows);
    CHECK(sse(ds2, ca) == doctest::Approx(sse(ds1, ca)).epsilon(1e-9));
    CHECK(silhouette(ds2, ca) == doctest::Approx(silhouette(ds1, ca)).epsilon(1e-9));
    CHECK(db_index(ds2, ca) == doctest::Approx(db_index(ds1, ca)).epsilon(1e-9));
    CHECK(xb_index(ds2, ca) == doctest::Approx(xb_index(ds1, ca)).epsilon(1e-9));
  }
}

TEST_CASE("naive-loop oracle agreement on random small instances") {
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 4 + rng() % 3;  // 4..6
    const std::size_t d = 1 + rng() % 2;
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    for (auto& r : rows)
      for (auto& v : r) v = static_cast<double>(rng() % 3);
    std::vector<std::size_t> cluster(n);
    for (std::size_t i = 0; i < n; ++i) cluster[i] = rng() % 2;
    cluster[0] = 0;
    cluster[1] = 1;  // keep k = 2
    std::vector<std::string> classes;
    for (std::size_t i = 0; i < n; ++i) classes.push_back(rng() % 2 ? "A" : "B");

    const auto ds = make_dataset(rows, classes);
    const auto ca = ClusterAssignment(cluster);
    const auto ct = ContingencyTable::from(ds, ca);

    CHECK(f_measure(ct) == doctest::Approx(oracles::o_f_measure(cluster, classes)).epsilon(1e-9));
    CHECK(purity(ct) == doctest::Approx(oracles::o_purity(cluster, classes)).epsilon(1e-9));
    CHECK(external_entropy(ct) ==
          doctest::Approx(oracles::o_entropy_ext(cluster, classes)).epsilon(1e-9));
    CHECK(sse(ds, ca) == doctest::Approx(oracles::o_sse(rows, cluster)).epsilon(1e-9));
    CHECK(silhouette(ds, ca) ==
          doctest::Approx(oracles::o_silhouette(rows, cluster)).epsilon(1e-9));
    const double db_lib = db_index(ds, ca), db_oracle = oracles::o_db(rows, cluster);
    if (std::isinf(db_oracle))
      CHECK(std::isinf(db_lib));
    else
      CHECK(db_lib == doctest::Approx(db_oracle).epsilon(1e-9));
    const double xb_lib = xb_index(ds, ca), xb_oracle = oracles::o_xb(rows, cluster);
    if (std::isinf(xb_oracle))
      CHECK(std::isinf(xb_lib));
    else
      CHECK(xb_lib == doctest::Approx(xb_oracle).epsilon(1e-9));
  }
}

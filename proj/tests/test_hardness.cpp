#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "permreg/errors.hpp"
#include "permreg/hardness.hpp"

using namespace permreg;

TEST_CASE("reduction construction") {
  SUBCASE("b = (1,1,2)") {
    const auto out = reduce_partition({{1, 1, 2}});
    REQUIRE(out.y.size() == 7);
    REQUIRE(out.A.rows() == 7);
    REQUIRE(out.A.cols() == 6);
    CHECK(out.y(0) == 1);
    CHECK(out.y(1) == 1);
    CHECK(out.y(2) == 2);
    for (int i = 3; i < 7; ++i) CHECK(out.y(i) == 0);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) CHECK(out.A(i, j) == (i == j ? 1 : 0));
    for (int j = 0; j < 3; ++j) {
      CHECK(out.A(6, j) == 1);
      CHECK(out.A(6, 3 + j) == -1);
    }
  }
  SUBCASE("b = (2)") {
    const auto out = reduce_partition({{2}});
    REQUIRE(out.y.size() == 3);
    CHECK(out.y(0) == 2);
    CHECK(out.y(1) == 0);
    CHECK(out.y(2) == 0);
    REQUIRE(out.A.rows() == 3);
    REQUIRE(out.A.cols() == 2);
    CHECK(out.A(0, 0) == 1);
    CHECK(out.A(0, 1) == 0);
    CHECK(out.A(1, 0) == 0);
    CHECK(out.A(1, 1) == 1);
    CHECK(out.A(2, 0) == 1);
    CHECK(out.A(2, 1) == -1);
  }
  SUBCASE("shape contract") {
    for (int d = 1; d <= 6; ++d) {
      std::vector<std::int64_t> b(static_cast<std::size_t>(d), 1);
      const auto out = reduce_partition({b});
      CHECK(out.y.size() == 2 * d + 1);
      CHECK(out.A.rows() == 2 * d + 1);
      CHECK(out.A.cols() == 2 * d);
    }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(reduce_partition({{}}), std::invalid_argument);
    CHECK_THROWS_AS(reduce_partition({{0}}), std::invalid_argument);
    CHECK_THROWS_AS(reduce_partition({{3, -1}}), std::invalid_argument);
  }
}

TEST_CASE("feasibility by enumeration") {
  SUBCASE("b = (1,1,2) is feasible with a valid witness") {
    const auto out = reduce_partition({{1, 1, 2}});
    const auto result = feasibility_check(out);
    CHECK(result.feasible);
    REQUIRE(result.witness.has_value());
    const Eigen::VectorXd y = out.y.cast<double>();
    const Eigen::MatrixXd A = out.A.cast<double>();
    const Eigen::VectorXd y_pi = result.witness->pi.apply(y);
    CHECK((y_pi - A * result.witness->x).cwiseAbs().maxCoeff() < 1e-9);
  }
  SUBCASE("odd total sum is infeasible") {
    CHECK_FALSE(feasibility_check(reduce_partition({{1, 1, 3}})).feasible);
  }
  SUBCASE("single element is infeasible") {
    CHECK_FALSE(feasibility_check(reduce_partition({{2}})).feasible);
  }
  SUBCASE("enumeration cap") {
    const auto out = reduce_partition({{1, 1, 1, 1}});
    CHECK_THROWS_AS(feasibility_check(out), EnumerationLimitError);
    CHECK_NOTHROW(feasibility_check(out, 4));
  }
}

TEST_CASE("partition subset search") {
  SUBCASE("witness subsets") {
    const auto yes = partition_brute_force({{1, 1, 2}});
    REQUIRE(yes.exists);
    REQUIRE(yes.subset.has_value());
    std::int64_t sum = 0;
    for (std::size_t i : *yes.subset) sum += std::vector<std::int64_t>{1, 1, 2}[i];
    CHECK(sum == 2);

    CHECK_FALSE(partition_brute_force({{1, 1, 3}}).exists);
    CHECK(partition_brute_force({{3, 1, 1, 2, 2, 1}}).exists);
  }
  SUBCASE("size cap") {
    std::vector<std::int64_t> big(21, 1);
    CHECK_THROWS_AS(partition_brute_force({big}), EnumerationLimitError);
  }
}

TEST_CASE("reduction equivalence for d <= 2, entries in 1..5") {
  // The d = 3 slice runs in the acceptance suite; this keeps the unit suite
  // quick while still exercising the iff in both directions.
  for (std::int64_t b1 = 1; b1 <= 5; ++b1) {
    {
      const PartitionInstance inst{{b1}};
      CHECK(feasibility_check(reduce_partition(inst)).feasible ==
            partition_brute_force(inst).exists);
    }
    for (std::int64_t b2 = 1; b2 <= 5; ++b2) {
      const PartitionInstance inst{{b1, b2}};
      CHECK(feasibility_check(reduce_partition(inst)).feasible ==
            partition_brute_force(inst).exists);
    }
  }
}

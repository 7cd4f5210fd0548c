#include "doctest.h"

#include <numeric>

#include "normbundle/errors.hpp"
#include "normbundle/strata.hpp"

using namespace nb;

namespace {

// Generic splitting of a rank-A bundle of degree D on P^1 with all summands
// >= lo: as balanced as possible, found by spreading D - A*lo evenly.
std::vector<int> balanced(int count, int total) {
  std::vector<int> out(static_cast<std::size_t>(count), total / count);
  for (int i = 0; i < total % count; ++i) ++out[static_cast<std::size_t>(count - 1 - i)];
  return out;
}

// The generic splitting of the residual bundle, computed without the A/B formula:
// rho copies of the minimal degree, and the remaining degree split evenly.
SplittingType oracle_generic(const StratumSpec& s) {
  const auto base = ladder_base(s.kind, s.n);
  const int rank = s.kind == BundleKind::normal ? s.n - s.k - 1 : s.n - s.k;
  const int degree = s.kind == BundleKind::normal ? s.n * s.n - (s.k - 1) * s.n - 2 : (s.n - s.k) * (s.n + 1) + s.k;
  std::vector<int> out(static_cast<std::size_t>(s.value), base);
  // The residual summands exceed base, so shift by base + 1 before balancing.
  const int rest = rank - s.value;
  auto tail = balanced(rest, degree - s.value * base - rest * (base + 1));
  for (int x : tail) out.push_back(base + 1 + x);
  return make_splitting(s.kind, s.n, s.k, out);
}

}  // namespace

TEST_CASE("rho and delta values") {
  CHECK(rho_value(5, 2, 1) == 1);
  CHECK(rho_value(10, 2, 1) == 4);
  CHECK(rho_value(10, 2, 0) == 3);
  CHECK_THROWS_AS(rho_value(5, 2, 0), ValidationError);
  CHECK_THROWS_AS(rho_value(10, 2, 4), ValidationError);
  CHECK(delta_value(10, 5, 2) == 2);
  CHECK_THROWS_AS(delta_value(5, 2, 1), ValidationError);
  // With 2k > n the second branch n-3k+r-1 is negative for every admissible r.
  for (int n = 4; n <= 14; ++n)
    for (int k = n / 2 + 1; k < n - 2; ++k)
      for (int r = -2; r <= n - k - 1; ++r) CHECK_THROWS_AS(delta_value(n, k, r), ValidationError);
  // At the generic rho the codimension vanishes.
  for (int n = 5; n <= 14; ++n)
    for (int k = 1; 3 * k < n - 1 && k < n - 2; ++k) {
      const int rho = rho_value(n, k, 0);
      CHECK(rho == n - 1 - 3 * k);
      CHECK(stratum_codim({n, k, BundleKind::normal, rho}) == 0);
    }
}

TEST_CASE("spec validation and construction bounds") {
  CHECK_NOTHROW(validate({5, 2, BundleKind::normal, 1}));
  CHECK_THROWS_AS(validate({5, 2, BundleKind::normal, 2}), ValidationError);
  CHECK_THROWS_AS(validate({6, 1, BundleKind::normal, 1}), ValidationError);
  CHECK_THROWS_AS(validate({5, 3, BundleKind::normal, 0}), ValidationError);
  CHECK_NOTHROW(validate({5, 2, BundleKind::tangent, 2}));
  CHECK_THROWS_AS(validate({5, 2, BundleKind::tangent, 0}), ValidationError);
  CHECK(construction_bounds_hold({9, 2, BundleKind::normal, 2}));
  CHECK_FALSE(construction_bounds_hold({8, 2, BundleKind::normal, 3}));
  CHECK(construction_bounds_hold({5, 2, BundleKind::tangent, 2}));
}

TEST_CASE("generic splitting examples") {
  CHECK(generic_splitting({5, 2, BundleKind::normal, 1}).label() == "(7,11)");
  CHECK(generic_splitting({5, 2, BundleKind::tangent, 2}).label() == "(6,6,8)");
  CHECK(generic_splitting({6, 1, BundleKind::normal, 2}).label() == "(8,8,9,9)");
  CHECK(generic_splitting({5, 2, BundleKind::normal, 0}).label() == "(9,9)");
  CHECK(generic_splitting({5, 2, BundleKind::tangent, 1}).label() == "(6,7,7)");
}

TEST_CASE("generic splitting over the grid") {
  int checked = 0;
  for (const auto kind : {BundleKind::normal, BundleKind::tangent})
    for (int n = 4; n <= 14; ++n)
      for (int k = 1; k < n - 2; ++k)
        for (int v = 0; v <= n; ++v) {
          const StratumSpec s{n, k, kind, v};
          try {
            validate(s);
          } catch (const ValidationError&) {
            continue;
          }
          const auto g = generic_splitting(s);
          CHECK(g.satisfies_invariants());
          CHECK(g == oracle_generic(s));
          const int a = kind == BundleKind::normal ? n - 1 - v - k : n - v - k;
          const int twice = kind == BundleKind::normal ? 2 * k : k;
          const int b = twice / a;
          CHECK(a - twice + b * a >= 0);
          CHECK(twice - b * a >= 0);
          ++checked;
        }
  CHECK(checked > 100);
}

TEST_CASE("codimension formulas") {
  CHECK(stratum_codim({5, 2, BundleKind::normal, 1}) == 3);
  CHECK(stratum_codim({5, 2, BundleKind::tangent, 2}) == 2);
  CHECK(stratum_codim({5, 2, BundleKind::normal, 1}) == kQuinticStratumCodim);
  CHECK(kQuinticStratumBidegree[0] == 1);
  CHECK(kQuinticStratumBidegree[1] == 6);
}

TEST_CASE("expected dimension of secant grassmannians") {
  for (int n = 2; n <= 10; ++n)
    for (int r = 0; r <= n; ++r) {
      CHECK(expected_dim_secant_grassmannian(n, 0, r) == std::min(n, 2 * r + 1));
      CHECK(expected_dim_secant_grassmannian(n, r, r) == std::min((r + 1) * (n - r), r + 1));
    }
  CHECK(expected_dim_secant_grassmannian(5, 1, 2) == 5);
  CHECK(grassmannian_dim(5, 2) - expected_dim_secant_grassmannian(5, 1, 2) == 3);
  CHECK_THROWS_AS(expected_dim_secant_grassmannian(5, 3, 2), ValidationError);
}

TEST_CASE("parameter count identity") {
  for (const auto kind : {BundleKind::normal, BundleKind::tangent})
    for (int n = 4; n <= 14; ++n)
      for (int k = 1; k < n - 2; ++k)
        for (int v = 0; v <= n; ++v) {
          const StratumSpec s{n, k, kind, v};
          try {
            validate(s);
          } catch (const ValidationError&) {
            continue;
          }
          CHECK(grassmannian_dim(n, k) - stratum_family_dim(s) == stratum_codim(s));
        }
}

TEST_CASE("special centers lie in the base locus") {
  for (const StratumSpec s : {StratumSpec{5, 2, BundleKind::normal, 1}, StratumSpec{9, 2, BundleKind::normal, 2},
                              StratumSpec{5, 2, BundleKind::tangent, 2}}) {
    const auto sc = construct_special_center(s, 42);
    CHECK(static_cast<int>(sc.generators.size()) == s.value);
    for (const auto& g : sc.generators) {
      CHECK(g.degree() == (s.kind == BundleKind::normal ? s.n - 2 : s.n - 1));
      CHECK(is_squarefree(g.as_poly()));
      for (const auto& p : sc.center.points()) CHECK(contract(g, p).is_zero());
    }
    CHECK(ordinary_singularities(sc.center));
  }
  const auto quintic = construct_special_center({5, 2, BundleKind::normal, 1}, 7);
  CHECK(rank(normal_matrix(quintic.center)) == 3);
  const auto pencil = construct_special_center({5, 2, BundleKind::tangent, 2}, 7);
  CHECK(rank(tangent_matrix(pencil.center)) == 3);
  const auto nine = construct_special_center({9, 2, BundleKind::normal, 2}, 7);
  CHECK(rank(normal_matrix(nine.center)) == 6);
  const auto split = splitting_type(nine.center, BundleKind::normal);
  CHECK(split.summands[0] == 11);
  CHECK(split.summands[1] == 11);
  CHECK(split.summands[2] > 11);
  CHECK(std::accumulate(split.summands.begin(), split.summands.end(), 0) == 81 - 9 - 2);
}

TEST_CASE("construction is reproducible and rejects infeasible specs") {
  const StratumSpec s{6, 2, BundleKind::normal, 1};
  const auto a = construct_special_center(s, 99);
  const auto b = construct_special_center(s, 99);
  CHECK(a.center.point_matrix() == b.center.point_matrix());
  CHECK(a.seed == b.seed);
  CHECK_THROWS_AS(construct_special_center({8, 2, BundleKind::normal, 3}, 1), ValidationError);
  CHECK_THROWS_AS(construct_special_center({5, 2, BundleKind::normal, 2}, 1), ValidationError);
}

TEST_CASE("construction over F_p") {
  const auto sc = construct_special_center({7, 2, BundleKind::normal, 2}, 3, Field::prime(kDefaultPrime));
  CHECK(splitting_type(sc.center, BundleKind::normal).label() == "(9,9,11,11)");
}

TEST_CASE("verify equivalence on the quintic strata") {
  const auto normal = verify_equivalence({5, 2, BundleKind::normal, 1}, 20, 2024);
  CHECK(normal.agreements == 20);
  CHECK(normal.histogram.at("(7,11)") == 20);
  CHECK(normal.codim == 3);
  CHECK(normal.quarantined_seeds.empty());
  const auto tangent = verify_equivalence({5, 2, BundleKind::tangent, 2}, 20, 2024);
  CHECK(tangent.agreements == 20);
  CHECK(tangent.histogram.at("(6,6,8)") == 20);
  const auto eight = verify_equivalence({8, 2, BundleKind::normal, 2}, 10, 5);
  CHECK(eight.agreements == 10);
  for (const auto& o : eight.outcomes) CHECK(o.matrix_rank == 5);
}

TEST_CASE("survey of generic centers") {
  const auto r = survey_generic(5, 2, 200, 11);
  CHECK(r.accepted + r.dependent + r.non_ordinary + r.invariant_violations == 200);
  CHECK(r.invariant_violations == 0);
  CHECK(modal_type(r.normal_histogram) == "(9,9)");
  CHECK(modal_type(r.tangent_histogram) == "(6,7,7)");
  CHECK(r.expected_normal.label() == "(9,9)");
  const auto r6 = survey_generic(6, 1, 100, 11);
  CHECK(modal_type(r6.normal_histogram) == "(8,8,9,9)");
  const auto again = survey_generic(5, 2, 200, 11);
  CHECK(again.normal_histogram == r.normal_histogram);
}

TEST_CASE("non-generic fraction shrinks with the field size") {
  // Over F_p special centers show up with probability about codim / p.
  auto special = [](const SurveyReport& r) {
    int c = r.dependent + r.non_ordinary;
    for (const auto& [k, v] : r.normal_histogram)
      if (k != r.expected_normal.label()) c += v;
    return c;
  };
  const auto small = survey_generic(5, 2, 3000, 3, Field::prime(31));
  const auto large = survey_generic(5, 2, 3000, 3, Field::prime(kSurveyPrime));
  CHECK(special(small) > special(large));
  CHECK(special(large) == 0);
}

TEST_CASE("modal type tie-break") {
  CHECK(modal_type({{"(9,9)", 3}, {"(7,11)", 3}}) == "(7,11)");
  CHECK(modal_type({}) == "");
}

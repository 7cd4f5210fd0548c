#include "doctest.h"

#include <algorithm>
#include <vector>

#include "normbundle/bundle.hpp"
#include "normbundle/errors.hpp"
#include "normbundle/random.hpp"

using namespace nb;

namespace {

const Field kQ = Field::rationals();
const Field kP = Field::prime(kDefaultPrime);

ProjectionCenter center_from_ints(Field field, const std::vector<std::vector<long>>& pts) {
  std::vector<BinaryForm> forms;
  for (const auto& p : pts) forms.push_back(BinaryForm::from_ints(field, p));
  return ProjectionCenter(forms);
}

// A line in the plane spanned by the fifth powers of x0, x1 and x0 + x1.
ProjectionCenter three_secant_line() { return center_from_ints(kQ, {{2, 1, 1, 1, 1, 2}, {3, 2, 2, 2, 2, 1}}); }

ProjectionCenter random_center(Rng& rng, Field field, int n, int k) {
  for (;;) {
    std::vector<BinaryForm> pts;
    for (int i = 0; i < k; ++i) {
      Vector a;
      for (int d = 0; d <= n; ++d) a.push_back(rng.scalar(field, 20));
      pts.emplace_back(n, a);
    }
    try {
      return ProjectionCenter(pts);
    } catch (const ValidationError&) {
    }
  }
}

// h(j) from products of BinaryPolys: column (i, m) is q_{c,i} * s^m t^{j-m}
// written out coefficient by coefficient for every point c.
std::size_t oracle_h(const ProjectionCenter& center, BundleKind kind, int j) {
  const int n = center.n();
  const Field field = center.field();
  const int ncols = kind == BundleKind::normal ? n - 1 : n;
  const int qdeg = kind == BundleKind::normal ? 2 : 1;
  const std::size_t rows = static_cast<std::size_t>(center.k() * (j + qdeg + 1));
  DenseMatrix m(field, rows, static_cast<std::size_t>(ncols * (j + 1)));
  std::size_t col = 0;
  for (int i = 0; i < ncols; ++i)
    for (int mm = 0; mm <= j; ++mm, ++col) {
      const auto mono = BinaryPoly::monomial(Scalar(field, 1), mm, j - mm);
      std::size_t row = 0;
      for (const auto& p : center.points()) {
        // Coefficient index = power of t; the entry is a_i t^2 - 2 a_{i+1} s t + a_{i+2} s^2.
        Vector q;
        if (kind == BundleKind::normal)
          q = {p.coord(i + 2), Scalar(field, -2) * p.coord(i + 1), p.coord(i)};
        else
          q = {-p.coord(i + 1), p.coord(i)};
        const auto prod = BinaryPoly(qdeg, q) * mono;
        for (int w = 0; w <= prod.degree(); ++w) m(row++, col) = prod.coeff(w);
      }
    }
  return m.cols() - rank(m);
}

std::vector<DenseMatrix> stacked_cat(const ProjectionCenter& center, int e) {
  std::vector<DenseMatrix> blocks;
  for (const auto& p : center.points()) blocks.push_back(catalecticant(p, e));
  return blocks;
}

}  // namespace

TEST_CASE("center validation") {
  CHECK_THROWS_AS(center_from_ints(kQ, {{1, 2, 3, 4, 5, 6}, {2, 4, 6, 8, 10, 12}}), ValidationError);
  CHECK_THROWS_AS(center_from_ints(kQ, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}}), ValidationError);
  CHECK_THROWS_AS(center_from_ints(Field::prime(7), {{1, 0, 0, 0, 0}}), ValidationError);
  CHECK_NOTHROW(center_from_ints(kQ, {{1, 0, 0, 0, 1}}));
}

TEST_CASE("normal and tangent matrices follow the displayed layout") {
  const auto c = three_secant_line();
  const auto nm = normal_matrix(c);
  CHECK(nm == DenseMatrix::from_ints(kQ, {{2, 1, 1, 1},
                                          {-2, -2, -2, -2},
                                          {1, 1, 1, 2},
                                          {3, 2, 2, 2},
                                          {-4, -4, -4, -4},
                                          {2, 2, 2, 1}}));
  CHECK(rank(nm) == 3);
  const auto tm = tangent_matrix(c);
  CHECK(tm == DenseMatrix::from_ints(kQ, {{2, 1, 1, 1, 1}, {-1, -1, -1, -1, -2}, {3, 2, 2, 2, 2}, {-2, -2, -2, -2, -1}}));

  const auto x0n = center_from_ints(kQ, {{1, 0, 0, 0, 0, 0, 0}});
  CHECK(rank(normal_matrix(x0n)) == 1);
  const auto x1n = center_from_ints(kQ, {{0, 0, 0, 0, 0, 0, 1}});
  CHECK(rank(tangent_matrix(x1n)) == 1);
}

TEST_CASE("generic ranks over F_p") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_center(rng, kP, 8, 2);
    CHECK(rank(normal_matrix(c)) == 6);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_center(rng, kP, 5, 2);
    CHECK(rank(tangent_matrix(c)) == 4);
  }
}

TEST_CASE("matrix ranks equal stacked catalecticant ranks") {
  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(4, 10));
    const int k = static_cast<int>(rng.uniform_int(1, std::min(3, n - 3)));
    const auto c = random_center(rng, trial % 2 ? kQ : kP, n, k);
    CHECK(rank(normal_matrix(c)) == rank(vstack(stacked_cat(c, 2))));
    CHECK(rank(tangent_matrix(c)) == rank(vstack(stacked_cat(c, 1))));
  }
  const auto c = three_secant_line();
  CHECK(rank(normal_matrix(c)) == rank(vstack(stacked_cat(c, 2))));
}

TEST_CASE("twist matrices agree with polynomial products") {
  Rng rng(21);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(4, 8));
    const int k = static_cast<int>(rng.uniform_int(1, std::min(2, n - 3)));
    const auto c = random_center(rng, kP, n, k);
    for (const auto kind : {BundleKind::normal, BundleKind::tangent}) {
      const auto ladder = twist_ladder(c, kind);
      for (std::size_t j = 0; j < ladder.h.size(); ++j) CHECK(ladder.h[j] == oracle_h(c, kind, static_cast<int>(j)));
    }
  }
  const auto c = three_secant_line();
  const auto ladder = twist_ladder(c, BundleKind::normal);
  for (std::size_t j = 0; j < ladder.h.size(); ++j)
    CHECK(ladder.h[j] == oracle_h(c, BundleKind::normal, static_cast<int>(j)));
  CHECK(twist_matrix(c, BundleKind::normal, 0) == normal_matrix(c));
  CHECK(twist_matrix(c, BundleKind::tangent, 0) == tangent_matrix(c));
  CHECK(twist_matrix(c, BundleKind::normal, 3).rows() == 12);
  CHECK(twist_matrix(c, BundleKind::normal, 3).cols() == 16);
}

TEST_CASE("ladder and splitting conversions") {
  const auto s = make_splitting(BundleKind::normal, 5, 2, {11, 7});
  CHECK(s.label() == "(7,11)");
  CHECK(s.satisfies_invariants());
  CHECK(ladder_from_splitting(s, 5) == std::vector<std::size_t>{1, 2, 3, 4, 6});
  CHECK(splitting_from_ladder(TwistLadder{BundleKind::normal, {1, 2, 3, 4, 6, 8}}, 5, 2) == s);
  CHECK(splitting_from_ladder(TwistLadder{BundleKind::normal, {0, 0, 2, 4, 6, 8}}, 5, 2).label() == "(9,9)");
  CHECK(ladder_violations(TwistLadder{BundleKind::normal, {1, 2, 3, 4, 6, 8}}, 5, 2).empty());
  CHECK_FALSE(ladder_violations(TwistLadder{BundleKind::normal, {1, 3, 4, 5, 7, 9}}, 5, 2).empty());
  CHECK_FALSE(ladder_violations(TwistLadder{BundleKind::normal, {1, 2, 3, 4}}, 5, 2).empty());
  CHECK_FALSE(make_splitting(BundleKind::normal, 5, 2, {8, 9}).satisfies_invariants());
  CHECK_FALSE(make_splitting(BundleKind::normal, 5, 2, {6, 12}).satisfies_invariants());
  CHECK(make_splitting(BundleKind::tangent, 5, 2, {6, 7, 7}).satisfies_invariants());
  CHECK(make_splitting(BundleKind::tangent, 5, 2, {6, 6, 8}).satisfies_invariants());
}

TEST_CASE("three-secant line: normal (7,11)") {
  const auto c = three_secant_line();
  CHECK(ordinary_singularities(c));
  const auto report = analyze_bundle(c, BundleKind::normal);
  CHECK(report.splitting.label() == "(7,11)");
  CHECK(report.matrix_rank == 3);
  CHECK(report.ladder.h == std::vector<std::size_t>{1, 2, 3, 4, 6, 8});
  CHECK(report.ladder.h[0] == 4 - rank(normal_matrix(c)));
  const auto t = splitting_type(c, BundleKind::tangent);
  CHECK(t.satisfies_invariants());
}

TEST_CASE("pencil of 4-secant spaces: tangent (6,6,8)") {
  // Two squarefree quartic operators; L is their common apolar line in P^5.
  const auto phi1 = DualForm::from_poly(BinaryPoly::from_ints(kQ, {0, 1, 0, -1, 0}));   // s t (s - t)(s + t)
  auto root = [](long s, long t) { return BinaryPoly::vanishing_at(ProjectivePoint{Scalar(kQ, s), Scalar(kQ, t)}); };
  const auto phi2 = DualForm::from_poly(root(2, 1) * root(3, 1) * root(1, 2) * root(-2, 1));
  REQUIRE(is_squarefree(phi1.as_poly()));
  REQUIRE(is_squarefree(phi2.as_poly()));
  std::vector<Vector> rows;
  for (const auto& phi : {phi1, phi2})
    for (int i = 0; i <= 1; ++i) {
      Vector r(6, Scalar(kQ));
      for (int j = 0; j <= 4; ++j) r[static_cast<std::size_t>(i + j)] = phi.coeff(j);
      rows.push_back(r);
    }
  const auto kernel = kernel_basis(DenseMatrix::from_rows(kQ, rows, 6));
  REQUIRE(kernel.size() == 2);
  const ProjectionCenter c({BinaryForm(5, kernel[0]), BinaryForm(5, kernel[1])});
  for (const auto& p : c.points()) {
    CHECK(contract(phi1, p).is_zero());
    CHECK(contract(phi2, p).is_zero());
  }
  REQUIRE(ordinary_singularities(c));
  CHECK(rank(tangent_matrix(c)) == 3);
  CHECK(splitting_type(c, BundleKind::tangent).label() == "(6,6,8)");
}

TEST_CASE("generic splittings over F_p") {
  Rng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_center(rng, kP, 6, 1);
    REQUIRE(ordinary_singularities(c));
    CHECK(splitting_type(c, BundleKind::normal).label() == "(8,8,9,9)");
  }
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_center(rng, kP, 5, 2);
    REQUIRE(ordinary_singularities(c));
    const auto normal = analyze_bundle(c, BundleKind::normal);
    CHECK(normal.splitting.label() == "(9,9)");
    CHECK(normal.ladder.h == std::vector<std::size_t>{0, 0, 2, 4, 6, 8});
    CHECK(splitting_type(c, BundleKind::tangent).label() == "(6,7,7)");
  }
}

TEST_CASE("rank bounds on ordinary centers") {
  Rng rng(90);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(4, 9));
    const int k = static_cast<int>(rng.uniform_int(1, std::min(3, n - 3)));
    const auto c = random_center(rng, kQ, n, k);
    if (!ordinary_singularities(c)) continue;
    const auto rn = static_cast<int>(rank(normal_matrix(c)));
    const auto rt = static_cast<int>(rank(tangent_matrix(c)));
    CHECK(rn >= k + 1);
    CHECK(rn <= std::min(n - 1, 3 * k));
    CHECK(rt >= k + 1);
    CHECK(rt <= std::min(n, 2 * k));
    const auto normal = analyze_bundle(c, BundleKind::normal);
    const auto minimal = std::count(normal.splitting.summands.begin(), normal.splitting.summands.end(), n + 2);
    CHECK(static_cast<std::size_t>(minimal) == normal.ladder.h[0]);
  }
}

TEST_CASE("tangent line at (1:0) is a cusp") {
  const auto c = center_from_ints(kQ, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}});
  const auto report = immersion_report(c);
  CHECK_FALSE(report.immersive);
  REQUIRE(report.cusps.size() == 1);
  CHECK(report.cusps[0].at_infinity());
  CHECK(report.cusps[0].to_string() == "(1:0)");
  CHECK_THROWS_AS(splitting_type(c, BundleKind::normal), ComputationError);
  try {
    splitting_type(c, BundleKind::normal);
  } catch (const ComputationError& e) {
    CHECK(std::string(e.what()).find("(1:0)") != std::string::npos);
  }
}

TEST_CASE("immersion is independent of the quotient basis") {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(5, 8));
    const auto c = random_center(rng, kQ, n, 2);
    const auto q = quotient_matrix(c);
    DenseMatrix g(kQ, q.rows(), q.rows());
    do {
      for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = rng.scalar(kQ, 3);
    } while (rank(g) != g.rows());
    DenseMatrix q2(kQ, q.rows(), q.cols());
    for (std::size_t i = 0; i < q.rows(); ++i)
      for (std::size_t j = 0; j < q.cols(); ++j)
        for (std::size_t l = 0; l < q.rows(); ++l) q2(i, j) += g(i, l) * q(l, j);
    const auto a = immersion_report(q);
    const auto b = immersion_report(q2);
    CHECK(a.immersive == b.immersive);
    CHECK(a.minor_gcd == b.minor_gcd);
  }
  // The tangent line again, with a shuffled quotient basis.
  const auto t = center_from_ints(kQ, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}});
  const auto q = quotient_matrix(t);
  DenseMatrix q2(kQ, q.rows(), q.cols());
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) q2(i, j) = i + 1 < q.rows() ? q(i, j) + q(i + 1, j) : q(i, j);
  CHECK(immersion_report(q2).minor_gcd == immersion_report(q).minor_gcd);
}

TEST_CASE("generic centers are immersive") {
  Rng rng(606);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(5, 8));
    const int k = static_cast<int>(rng.uniform_int(1, 2));
    CHECK(ordinary_singularities(random_center(rng, kP, n, k)));
  }
  CHECK(ordinary_singularities(center_from_ints(kQ, {{1, 0, 0, 0, 0, 1}})));
}

TEST_CASE("splitting is invariant under GL_k and PGL_2") {
  Rng rng(17);
  int tested = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(5, 8));
    const int k = static_cast<int>(rng.uniform_int(1, 2));
    const auto c = random_center(rng, kQ, n, k);
    if (!ordinary_singularities(c)) continue;
    ++tested;
    DenseMatrix g(kQ, static_cast<std::size_t>(k), static_cast<std::size_t>(k));
    do {
      for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = rng.scalar(kQ, 3);
    } while (rank(g) != g.rows());
    Scalar al(kQ), be(kQ), ga(kQ), de(kQ);
    do {
      al = rng.scalar(kQ, 3), be = rng.scalar(kQ, 3), ga = rng.scalar(kQ, 3), de = rng.scalar(kQ, 3);
    } while ((al * de - be * ga).is_zero());
    for (const auto kind : {BundleKind::normal, BundleKind::tangent}) {
      const auto base = splitting_type(c, kind);
      CHECK(splitting_type(change_basis(c, g), kind) == base);
      CHECK(splitting_type(reparametrize(c, al, be, ga, de), kind) == base);
    }
  }
  CHECK(tested > 5);
  // The special line keeps its type under both actions too.
  const auto c = three_secant_line();
  CHECK(splitting_type(reparametrize(c, Scalar(kQ, 1), Scalar(kQ, 2), Scalar(kQ, -1), Scalar(kQ, 3)),
                       BundleKind::normal)
            .label() == "(7,11)");
  CHECK(splitting_type(change_basis(c, DenseMatrix::from_ints(kQ, {{1, 1}, {2, -1}})), BundleKind::normal).label() ==
        "(7,11)");
}

TEST_CASE("smooth image") {
  // Points of a secant line and of a tangent line have catalecticant rank 2.
  CHECK(smooth_image(center_from_ints(kQ, {{2, 1, 1, 1, 1, 1, 1}})) == std::optional<bool>(false));
  Vector mono(7, Scalar(kQ));
  mono[1] = Scalar(kQ, 1);
  CHECK(smooth_image(ProjectionCenter({BinaryForm::from_monomial(6, mono)})) == std::optional<bool>(false));
  // Adding x1^6 raises the rank to 3.
  mono[6] = Scalar(kQ, 1);
  const ProjectionCenter off_secant({BinaryForm::from_monomial(6, mono)});
  CHECK(rank(catalecticant(off_secant.points()[0], 2)) == 3);
  CHECK(smooth_image(off_secant) == std::optional<bool>(true));
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) CHECK(smooth_image(random_center(rng, kP, 7, 1)) == std::optional<bool>(true));
  for (int trial = 0; trial < 10; ++trial) CHECK(smooth_image(random_center(rng, kP, 7, 2)) == std::optional<bool>(true));
  CHECK_FALSE(smooth_image(random_center(rng, kP, 8, 3)).has_value());
  // The line meets the three secant lines of its plane, so the image has a triple point.
  CHECK(smooth_image(three_secant_line()) == std::optional<bool>(false));
}

TEST_CASE("ladder audit counts checks") {
  reset_ladder_audit();
  Rng rng(1);
  splitting_type(random_center(rng, kP, 6, 1), BundleKind::normal);
  CHECK(ladder_audit().checks == 1);
  CHECK(ladder_audit().violations == 0);
}

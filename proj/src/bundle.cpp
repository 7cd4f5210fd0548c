#include "normbundle/bundle.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>

#include "normbundle/errors.hpp"

namespace nb {

namespace {

std::atomic<std::uint64_t> g_ladder_checks{0};
std::atomic<std::uint64_t> g_ladder_violations{0};

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

}  // namespace

const char* to_string(BundleKind kind) noexcept { return kind == BundleKind::normal ? "normal" : "tangent"; }

BundleKind parse_bundle_kind(std::string_view text) {
  if (text == "normal") return BundleKind::normal;
  if (text == "tangent") return BundleKind::tangent;
  throw UsageError("unknown bundle kind '" + std::string(text) + "' (expected normal or tangent)");
}

ProjectionCenter::ProjectionCenter(std::vector<BinaryForm> points)
    : field_(points.empty() ? Field::rationals() : points.front().field()),
      n_(points.empty() ? 0 : points.front().degree()),
      points_(std::move(points)) {
  if (points_.empty()) throw ValidationError("a projection center needs at least one point");
  for (const auto& p : points_) {
    if (p.degree() != n_) throw ValidationError("center points have different degrees");
    if (!(p.field() == field_)) throw ValidationError("center points live in different fields");
  }
  field_.require_admissible(n_);
  if (k() >= n_ - 2) {
    throw ValidationError("k = " + std::to_string(k()) + " must be less than n - 2 = " + std::to_string(n_ - 2));
  }
  if (rank(point_matrix()) != points_.size()) {
    throw ValidationError("center points are linearly dependent (rank of the point matrix is below k = " +
                          std::to_string(k()) + ")");
  }
}

DenseMatrix ProjectionCenter::point_matrix() const {
  std::vector<Vector> rows;
  for (const auto& p : points_) rows.push_back(p.coords());
  return DenseMatrix::from_rows(field_, rows, idx(n_ + 1));
}

ProjectionCenter change_basis(const ProjectionCenter& center, const DenseMatrix& g) {
  const auto k = idx(center.k());
  if (g.rows() != k || g.cols() != k) throw ValidationError("change of basis must be k x k");
  std::vector<BinaryForm> pts;
  for (std::size_t i = 0; i < k; ++i) {
    BinaryForm acc = BinaryForm::zero(center.field(), center.n());
    for (std::size_t j = 0; j < k; ++j) acc = acc + center.points()[j].scaled(g(i, j));
    pts.push_back(std::move(acc));
  }
  return ProjectionCenter(std::move(pts));
}

ProjectionCenter reparametrize(const ProjectionCenter& center, const Scalar& alpha, const Scalar& beta,
                               const Scalar& gamma, const Scalar& delta) {
  if ((alpha * delta - beta * gamma).is_zero()) throw ValidationError("reparametrization is singular");
  std::vector<BinaryForm> pts;
  for (const auto& p : center.points()) pts.push_back(p.substitute(alpha, beta, gamma, delta));
  return ProjectionCenter(std::move(pts));
}

int SplittingType::expected_rank() const noexcept { return kind == BundleKind::normal ? n - k - 1 : n - k; }

int SplittingType::expected_degree() const noexcept {
  return kind == BundleKind::normal ? n * n - (k - 1) * n - 2 : (n - k) * (n + 1) + k;
}

int SplittingType::min_summand() const noexcept { return ladder_base(kind, n); }

int SplittingType::max_summand() const noexcept { return ladder_base(kind, n) + saturation_level(kind, k); }

std::vector<std::string> SplittingType::invariant_violations() const {
  std::vector<std::string> out;
  if (static_cast<int>(summands.size()) != expected_rank()) {
    out.push_back("rank " + std::to_string(summands.size()) + " != " + std::to_string(expected_rank()));
  }
  const int sum = std::accumulate(summands.begin(), summands.end(), 0);
  if (sum != expected_degree()) {
    out.push_back("degree " + std::to_string(sum) + " != " + std::to_string(expected_degree()));
  }
  for (int d : summands) {
    if (d < min_summand() || d > max_summand()) {
      out.push_back("summand " + std::to_string(d) + " outside [" + std::to_string(min_summand()) + ", " +
                    std::to_string(max_summand()) + "]");
    }
  }
  return out;
}

std::string SplittingType::label() const {
  std::string s = "(";
  for (std::size_t i = 0; i < summands.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(summands[i]);
  }
  return s + ")";
}

SplittingType make_splitting(BundleKind kind, int n, int k, std::vector<int> summands) {
  std::sort(summands.begin(), summands.end());
  return SplittingType{kind, n, k, std::move(summands)};
}

int saturation_level(BundleKind kind, int k) noexcept { return kind == BundleKind::normal ? 2 * k : k; }

int ladder_base(BundleKind kind, int n) noexcept { return kind == BundleKind::normal ? n + 2 : n + 1; }

DenseMatrix normal_matrix(const ProjectionCenter& center) { return twist_matrix(center, BundleKind::normal, 0); }

DenseMatrix tangent_matrix(const ProjectionCenter& center) { return twist_matrix(center, BundleKind::tangent, 0); }

DenseMatrix twist_matrix(const ProjectionCenter& center, BundleKind kind, int j) {
  if (j < 0) throw ValidationError("twist level must be non-negative");
  const int n = center.n();
  const int k = center.k();
  const Field& field = center.field();
  // Entry polynomial of column i, listed by power of s.
  const int width = kind == BundleKind::normal ? 3 : 2;
  const int ncols_base = kind == BundleKind::normal ? n - 1 : n;
  const int rows_per_point = j + width;
  DenseMatrix m(field, idx(rows_per_point * k), idx((j + 1) * ncols_base));
  const Scalar minus_two(field, -2);
  for (int c = 0; c < k; ++c) {
    const BinaryForm& p = center.points()[idx(c)];
    for (int i = 0; i < ncols_base; ++i) {
      Scalar q[3] = {Scalar(field), Scalar(field), Scalar(field)};
      if (kind == BundleKind::normal) {
        q[0] = p.coord(i);
        q[1] = minus_two * p.coord(i + 1);
        q[2] = p.coord(i + 2);
      } else {
        q[0] = p.coord(i);
        q[1] = -p.coord(i + 1);
      }
      for (int mm = 0; mm <= j; ++mm)
        for (int w = 0; w < width; ++w) {
          if (q[w].is_zero()) continue;
          m(idx(c * rows_per_point + mm + w), idx(i * (j + 1) + mm)) = q[w];
        }
    }
  }
  return m;
}

TwistLadder twist_ladder(const ProjectionCenter& center, BundleKind kind, int extra_levels) {
  TwistLadder ladder{kind, {}};
  const int top = saturation_level(kind, center.k()) + std::max(0, extra_levels);
  for (int j = 0; j <= top; ++j) {
    const DenseMatrix m = twist_matrix(center, kind, j);
    ladder.h.push_back(m.cols() - rank(m));
  }
  return ladder;
}

std::vector<std::string> ladder_violations(const TwistLadder& ladder, int n, int k) {
  std::vector<std::string> out;
  const auto& h = ladder.h;
  std::vector<long> d;
  long prev = 0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    d.push_back(static_cast<long>(h[j]) - prev);
    prev = static_cast<long>(h[j]);
  }
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (d[j] < 0) out.push_back("h decreases at level " + std::to_string(j));
    if (j > 0 && d[j] < d[j - 1]) out.push_back("h is not convex at level " + std::to_string(j));
  }
  const long rank = ladder.kind == BundleKind::normal ? n - k - 1 : n - k;
  const auto sat = static_cast<std::size_t>(saturation_level(ladder.kind, k));
  if (h.size() <= sat) {
    out.push_back("ladder stops before the saturation level " + std::to_string(sat));
  } else {
    for (std::size_t j = sat; j < d.size(); ++j)
      if (d[j] != rank) {
        out.push_back("first difference " + std::to_string(d[j]) + " at level " + std::to_string(j) +
                      " differs from the rank " + std::to_string(rank));
      }
  }
  return out;
}

SplittingType splitting_from_ladder(const TwistLadder& ladder, int n, int k) {
  const int base = ladder_base(ladder.kind, n);
  std::vector<int> summands;
  long prev_h = 0;
  long prev_d = 0;
  for (std::size_t j = 0; j < ladder.h.size(); ++j) {
    const long d = static_cast<long>(ladder.h[j]) - prev_h;
    const long count = d - prev_d;
    for (long c = 0; c < count; ++c) summands.push_back(base + static_cast<int>(j));
    prev_h = static_cast<long>(ladder.h[j]);
    prev_d = d;
  }
  return make_splitting(ladder.kind, n, k, std::move(summands));
}

std::vector<std::size_t> ladder_from_splitting(const SplittingType& splitting, int levels) {
  const int base = ladder_base(splitting.kind, splitting.n);
  std::vector<std::size_t> h;
  for (int j = 0; j < levels; ++j) {
    std::size_t total = 0;
    for (int d : splitting.summands) total += static_cast<std::size_t>(std::max(0, base + j - d + 1));
    h.push_back(total);
  }
  return h;
}

LadderAudit ladder_audit() noexcept { return LadderAudit{g_ladder_checks.load(), g_ladder_violations.load()}; }

void reset_ladder_audit() noexcept {
  g_ladder_checks = 0;
  g_ladder_violations = 0;
}

DenseMatrix quotient_matrix(const ProjectionCenter& center) {
  const auto kernel = kernel_basis(center.point_matrix());
  return DenseMatrix::from_rows(center.field(), kernel, idx(center.n() + 1));
}

std::vector<BinaryPoly> projected_parametrization(const DenseMatrix& q) {
  std::vector<BinaryPoly> psi;
  const int n = static_cast<int>(q.cols()) - 1;
  for (std::size_t m = 0; m < q.rows(); ++m) psi.emplace_back(n, q.row(m));
  return psi;
}

ImmersionReport immersion_report(const DenseMatrix& q) {
  const auto psi = projected_parametrization(q);
  std::vector<BinaryPoly> ds, dt;
  for (const auto& p : psi) {
    ds.push_back(p.derivative_s());
    dt.push_back(p.derivative_t());
  }
  std::optional<BinaryPoly> g;
  for (std::size_t a = 0; a < psi.size(); ++a)
    for (std::size_t b = a + 1; b < psi.size(); ++b) {
      const BinaryPoly minor = ds[a] * dt[b] - ds[b] * dt[a];
      if (minor.is_zero()) continue;
      g = g ? poly_gcd(*g, minor) : minor.monic();
      if (g->degree() == 0) return ImmersionReport{true, *g, {}};
    }
  if (!g) {
    // Every minor vanishes: the image is a point or the map is constant.
    return ImmersionReport{false, BinaryPoly(q.field(), 0), {}};
  }
  std::vector<ProjectivePoint> cusps;
  try {
    cusps = roots_in_field(*g);
  } catch (const ComputationError&) {
  }
  return ImmersionReport{false, *g, std::move(cusps)};
}

ImmersionReport immersion_report(const ProjectionCenter& center) { return immersion_report(quotient_matrix(center)); }

bool ordinary_singularities(const ProjectionCenter& center) { return immersion_report(center).immersive; }

namespace {

BinaryPoly det3(const std::vector<std::vector<BinaryPoly>>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

std::optional<bool> smooth_image(const ProjectionCenter& center) {
  const int n = center.n();
  if (center.k() == 1) return rank(catalecticant(center.points()[0], 2)) >= 3;
  if (center.k() != 2) return std::nullopt;
  const auto& f1 = center.points()[0];
  const auto& f2 = center.points()[1];
  // Entry (i, j) of Cat_{lambda f1 + mu f2}(2, n-2) as a linear form in (lambda, mu).
  std::vector<BinaryPoly> entry;
  for (int d = 0; d <= n; ++d) entry.emplace_back(1, Vector{f1.coord(d), f2.coord(d)});
  std::optional<BinaryPoly> g;
  const int cols = n - 1;
  for (int c0 = 0; c0 < cols; ++c0)
    for (int c1 = c0 + 1; c1 < cols; ++c1)
      for (int c2 = c1 + 1; c2 < cols; ++c2) {
        const int cs[3] = {c0, c1, c2};
        std::vector<std::vector<BinaryPoly>> m(3);
        for (int r = 0; r < 3; ++r)
          for (int c : cs) m[idx(r)].push_back(entry[idx(r + c)]);
        const BinaryPoly minor = det3(m);
        if (minor.is_zero()) continue;
        g = g ? poly_gcd(*g, minor) : minor.monic();
      }
  if (!g || g->degree() > 0) return false;
  return ordinary_singularities(center);
}

SplittingReport analyze_bundle(const ProjectionCenter& center, BundleKind kind) {
  const ImmersionReport imm = immersion_report(center);
  if (!imm.immersive) {
    std::string where;
    for (const auto& c : imm.cusps) where += (where.empty() ? "" : ", ") + c.to_string();
    if (where.empty()) where = "a point outside the field, minor gcd " + imm.minor_gcd.to_string();
    throw ComputationError("center is not ordinary: the projection has a cusp at " + where);
  }
  TwistLadder ladder = twist_ladder(center, kind);
  const int n = center.n();
  const int k = center.k();
  auto problems = ladder_violations(ladder, n, k);
  SplittingType splitting = splitting_from_ladder(ladder, n, k);
  for (auto& v : splitting.invariant_violations()) problems.push_back(std::move(v));
  if (ladder_from_splitting(splitting, static_cast<int>(ladder.h.size())) != ladder.h) {
    problems.push_back("ladder is not reproduced by the recovered splitting");
  }
  ++g_ladder_checks;
  if (!problems.empty()) {
    ++g_ladder_violations;
    std::string msg = std::string(to_string(kind)) + " ladder invariant violated:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw ComputationError(msg);
  }
  const auto cols = static_cast<std::size_t>(kind == BundleKind::normal ? n - 1 : n);
  const std::size_t r = cols - ladder.h[0];
  return SplittingReport{std::move(splitting), std::move(ladder), r};
}

SplittingType splitting_type(const ProjectionCenter& center, BundleKind kind) {
  return analyze_bundle(center, kind).splitting;
}

}  // namespace nb

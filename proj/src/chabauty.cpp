#include "latlab/chabauty.hpp"

#include "latlab/euc_geom.hpp"
#include "latlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace latlab::chab {

namespace {

void canonical_signs_and_order(Eigen::MatrixXd& b) {
  for (Eigen::Index j = 0; j < b.cols(); ++j)
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      if (std::abs(b(i, j)) > 1e-12) {
        if (b(i, j) < 0) b.col(j) *= -1.0;
        break;
      }
  std::vector<Eigen::VectorXd> cols;
  for (Eigen::Index j = 0; j < b.cols(); ++j) cols.emplace_back(b.col(j));
  std::stable_sort(cols.begin(), cols.end(), [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const double nx = x.norm(), ny = y.norm();
    if (std::abs(nx - ny) > 1e-9 * std::max(1.0, nx)) return nx < ny;
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (std::abs(x(i) - y(i)) > 1e-12) return x(i) < y(i);
    return false;
  });
  for (Eigen::Index j = 0; j < b.cols(); ++j) b.col(j) = cols[static_cast<std::size_t>(j)];
}

Eigen::MatrixXd gram_schmidt(const Eigen::MatrixXd& b, Eigen::MatrixXd& mu) {
  const Eigen::Index m = b.cols();
  Eigen::MatrixXd star = b;
  mu = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < i; ++j) {
      mu(i, j) = b.col(i).dot(star.col(j)) / star.col(j).squaredNorm();
      star.col(i) -= mu(i, j) * star.col(j);
    }
  return star;
}

}  // namespace

Eigen::MatrixXd reduce_basis(const Eigen::MatrixXd& basis) {
  const Eigen::Index m = basis.cols();
  if (m == 0) return basis;
  if (euc::numerical_rank(basis, 1e-12) != m) throw PreconditionError("reduce_basis: dependent basis vectors");
  Eigen::MatrixXd b = basis;
  if (m == 2) {
    Eigen::VectorXd u = b.col(0), v = b.col(1);
    if (u.squaredNorm() > v.squaredNorm()) std::swap(u, v);
    for (;;) {
      v -= std::round(u.dot(v) / u.squaredNorm()) * u;
      if (v.squaredNorm() >= u.squaredNorm()) break;
      std::swap(u, v);
    }
    b.col(0) = u;
    b.col(1) = v;
  } else {
    constexpr double delta = 0.75;
    Eigen::MatrixXd mu;
    Eigen::MatrixXd star = gram_schmidt(b, mu);
    Eigen::Index k = 1;
    for (int guard = 0; k < m; ++guard) {
      if (guard > 100000) throw std::logic_error("reduce_basis: LLL did not terminate");
      for (Eigen::Index j = k - 1; j >= 0; --j) {
        const double q = std::round(mu(k, j));
        if (q != 0.0) {
          b.col(k) -= q * b.col(j);
          star = gram_schmidt(b, mu);
        }
      }
      if (star.col(k).squaredNorm() >= (delta - mu(k, k - 1) * mu(k, k - 1)) * star.col(k - 1).squaredNorm()) {
        ++k;
      } else {
        b.col(k).swap(b.col(k - 1));
        star = gram_schmidt(b, mu);
        k = std::max<Eigen::Index>(k - 1, 1);
      }
    }
  }
  canonical_signs_and_order(b);
  return b;
}

std::vector<Eigen::VectorXd> lattice_points_in_ball(const Eigen::MatrixXd& basis, double R, std::size_t cap) {
  const Eigen::Index n = basis.rows(), m = basis.cols();
  if (m == 0) return {Eigen::VectorXd::Zero(n)};
  const Eigen::MatrixXd pinv = (basis.transpose() * basis).inverse() * basis.transpose();
  std::vector<long> bound(static_cast<std::size_t>(m));
  double total = 1.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    bound[static_cast<std::size_t>(i)] = static_cast<long>(std::floor(pinv.row(i).norm() * R + 1e-9));
    total *= 2.0 * static_cast<double>(bound[static_cast<std::size_t>(i)]) + 1.0;
  }
  if (total > static_cast<double>(cap) * 8.0) throw CapExceeded("lattice_points_in_ball: enumeration too large");
  std::vector<Eigen::VectorXd> out;
  std::vector<long> c(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) c[static_cast<std::size_t>(i)] = -bound[static_cast<std::size_t>(i)];
  const double r2 = R * R * (1.0 + 1e-12) + 1e-24;
  for (;;) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < m; ++i) x += static_cast<double>(c[static_cast<std::size_t>(i)]) * basis.col(i);
    if (x.squaredNorm() <= r2) {
      if (out.size() >= cap) throw CapExceeded("lattice_points_in_ball: point cap exceeded");
      out.push_back(std::move(x));
    }
    Eigen::Index i = m - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == bound[static_cast<std::size_t>(i)]) {
      c[static_cast<std::size_t>(i)] = -bound[static_cast<std::size_t>(i)];
      --i;
    }
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
  }
  return out;
}

ShortestVectors shortest_vectors(const Eigen::MatrixXd& basis) {
  if (basis.cols() == 0) throw PreconditionError("shortest_vectors: empty basis");
  const Eigen::MatrixXd b = reduce_basis(basis);
  double radius = b.col(0).norm();
  for (Eigen::Index j = 1; j < b.cols(); ++j) radius = std::min(radius, b.col(j).norm());
  ShortestVectors s;
  s.length = std::numeric_limits<double>::infinity();
  const auto points = lattice_points_in_ball(b, radius * (1.0 + 1e-9));
  for (const auto& p : points) {
    const double l = p.norm();
    if (l > 1e-12 * std::max(1.0, radius) && l < s.length) {
      s.length = l;
      s.vector = p;
    }
  }
  for (const auto& p : points) {
    const double l = p.norm();
    if (l > 1e-12 * std::max(1.0, radius) && l <= s.length * (1.0 + 1e-9)) s.minimal.push_back(p);
  }
  return s;
}

double covolume(const Eigen::MatrixXd& basis) {
  if (basis.rows() != basis.cols() || basis.rows() == 0) throw PreconditionError("covolume: basis must be square");
  const double d = std::abs(basis.determinant());
  if (d <= 1e-12 * std::pow(std::max(1.0, basis.norm()), static_cast<double>(basis.rows())))
    throw PreconditionError("covolume: basis is rank deficient");
  return d;
}

Rational covolume(const RationalMatrix& basis) {
  const Rational d = basis.determinant();
  if (d == 0) throw PreconditionError("covolume: basis is rank deficient");
  return d < 0 ? Rational(-d) : d;
}

// ---------------------------------------------------------------------------

ClosedSubgroup::ClosedSubgroup(int n, Eigen::MatrixXd connected, Eigen::MatrixXd lattice) : n_(n) {
  if (n < 1) throw PreconditionError("ClosedSubgroup: dimension must be >= 1");
  if (connected.cols() > 0 && connected.rows() != n) throw PreconditionError("ClosedSubgroup: V has wrong dimension");
  if (lattice.cols() > 0 && lattice.rows() != n) throw PreconditionError("ClosedSubgroup: lattice has wrong dimension");
  v_ = connected.cols() > 0 ? euc::column_space(connected) : Eigen::MatrixXd(n, 0);
  Eigen::MatrixXd l = lattice.cols() > 0 ? Eigen::MatrixXd(lattice - v_ * (v_.transpose() * lattice))
                                         : Eigen::MatrixXd(n, 0);
  if (l.cols() > 0 && euc::numerical_rank(l, 1e-12) != l.cols())
    throw PreconditionError("ClosedSubgroup: lattice generators are dependent modulo V");
  if (v_.cols() + l.cols() > n) throw PreconditionError("ClosedSubgroup: too many generators");
  l_ = reduce_basis(l);
}

ClosedSubgroup ClosedSubgroup::lattice(Eigen::MatrixXd basis) {
  const int n = static_cast<int>(basis.rows());
  return ClosedSubgroup(n, Eigen::MatrixXd(n, 0), std::move(basis));
}

ClosedSubgroup ClosedSubgroup::whole(int n) {
  return ClosedSubgroup(n, Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd(n, 0));
}

ClosedSubgroup ClosedSubgroup::trivial(int n) { return ClosedSubgroup(n, Eigen::MatrixXd(n, 0), Eigen::MatrixXd(n, 0)); }

// ---------------------------------------------------------------------------
// candidates

double Candidate::volume() const {
  if (kind == Kind::Box) {
    double v = 1.0;
    for (Eigen::Index i = 0; i < half_widths.size(); ++i) v *= 2.0 * half_widths(i);
    return v;
  }
  const double n = static_cast<double>(half_widths.size());
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0) * std::pow(radius, n);
}

std::string Candidate::describe() const {
  std::ostringstream out;
  if (kind == Kind::Disk) {
    out << "disk r=" << radius;
  } else {
    out << "box";
    for (Eigen::Index i = 0; i < half_widths.size(); ++i) out << (i ? "x" : " ") << 2.0 * half_widths(i);
  }
  return out.str();
}

bool admissible(const Eigen::MatrixXd& basis, const Candidate& k) {
  const Eigen::Index n = basis.rows();
  if (k.half_widths.size() != n) throw PreconditionError("admissible: candidate has wrong dimension");
  const double reach = k.kind == Candidate::Kind::Box ? 2.0 * k.half_widths.norm() : 2.0 * k.radius;
  for (const auto& p : lattice_points_in_ball(basis, reach)) {
    if (p.norm() < 1e-12) continue;
    bool inside = true;
    if (k.kind == Candidate::Kind::Box) {
      for (Eigen::Index i = 0; i < n; ++i) inside = inside && std::abs(p(i)) < 2.0 * k.half_widths(i) * (1.0 - 1e-12);
    } else {
      inside = p.norm() < 2.0 * k.radius * (1.0 - 1e-12);
    }
    if (inside) return false;
  }
  return true;
}

SupFormulaReport sup_formula_check(const Eigen::MatrixXd& basis, const std::vector<Candidate>& candidates) {
  SupFormulaReport r;
  r.covolume = covolume(basis);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const bool ok = admissible(basis, candidates[i]);
    r.admissible.push_back(ok);
    if (ok && candidates[i].volume() > r.best_volume) {
      r.best_volume = candidates[i].volume();
      r.best = i;
    }
  }
  r.gap = r.covolume - r.best_volume;
  return r;
}

std::vector<Candidate> box_sweep(const Eigen::MatrixXd& basis, int steps) {
  if (basis.rows() != 2) throw PreconditionError("box_sweep: planar lattices only");
  if (steps < 1) throw PreconditionError("box_sweep: steps must be >= 1");
  const double cov = covolume(basis);
  std::vector<Candidate> out;
  for (int s = 0; s < steps; ++s) {
    const double t = steps == 1 ? 0.0 : -2.0 + 4.0 * s / (steps - 1);
    const double a = std::exp(t / 2.0);
    Candidate c;
    // a box of area above the covolume always meets the lattice (Minkowski)
    double lo = 0.0, hi = std::sqrt(cov);
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      c.half_widths = Eigen::Vector2d(mid * a, mid / a);
      (admissible(basis, c) ? lo : hi) = mid;
    }
    c.half_widths = Eigen::Vector2d(lo * a, lo / a);
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// truncated Hausdorff distance

namespace {

struct Piece {
  Eigen::VectorXd center;
  double radius;
};

struct Truncation {
  Eigen::MatrixXd v;
  std::vector<Piece> pieces;
};

Truncation truncate(const ClosedSubgroup& h, double R) {
  Truncation t;
  t.v = h.connected();
  for (auto& p : lattice_points_in_ball(h.discrete(), R)) {
    const double rho = std::sqrt(std::max(0.0, R * R - p.squaredNorm()));
    t.pieces.push_back({std::move(p), rho});
  }
  return t;
}

double distance_to(const Eigen::VectorXd& x, const Truncation& t) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : t.pieces) {
    Eigen::VectorXd closest = p.center;
    if (t.v.cols() > 0) {
      Eigen::VectorXd u = t.v.transpose() * (x - p.center);
      const double un = u.norm();
      if (un > p.radius) u *= p.radius / un;
      closest += t.v * u;
    }
    best = std::min(best, (x - closest).norm());
  }
  return best;
}

// sup over t in [-rho, rho] of the distance from c + t e to a discrete set:
// the squared distance is t^2 plus the lower envelope of the lines
// |c - q|^2 + 2 t e.(c - q), so the sup sits at an envelope breakpoint or an end.
double segment_sup(const Eigen::VectorXd& c, const Eigen::VectorXd& e, double rho, const Truncation& b) {
  if (b.pieces.empty()) return std::numeric_limits<double>::infinity();
  struct Line {
    double slope, intercept;
    std::size_t piece;
  };
  std::vector<Line> lines;
  lines.reserve(b.pieces.size());
  for (std::size_t j = 0; j < b.pieces.size(); ++j) {
    const Eigen::VectorXd d = c - b.pieces[j].center;
    lines.push_back({2.0 * e.dot(d), d.squaredNorm(), j});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) {
    return x.slope != y.slope ? x.slope > y.slope : x.intercept < y.intercept;
  });
  auto cross = [](const Line& x, const Line& y) { return (y.intercept - x.intercept) / (x.slope - y.slope); };
  std::vector<Line> hull;
  for (const auto& l : lines) {
    if (!hull.empty() && hull.back().slope == l.slope) continue;
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], l) <= cross(hull[hull.size() - 2], hull.back()))
      hull.pop_back();
    hull.push_back(l);
  }
  // distances are evaluated directly to avoid cancellation in t^2 + a + b t
  auto at = [&](double t, std::size_t piece) { return (c + t * e - b.pieces[piece].center).norm(); };
  auto nearest = [&](double t) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < hull.size(); ++i)
      if (hull[i].intercept + hull[i].slope * t < hull[k].intercept + hull[k].slope * t) k = i;
    return at(t, hull[k].piece);
  };
  double best = std::max(nearest(-rho), nearest(rho));
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const double t = cross(hull[i - 1], hull[i]);
    if (t > -rho && t < rho) best = std::max(best, at(t, hull[i].piece));
  }
  return best;
}

// sup over the truncation `a` of the distance to `b`
double directed(const Truncation& a, const Truncation& b) {
  double best = 0.0;
  const Eigen::Index k = a.v.cols();
  for (const auto& p : a.pieces) {
    if (k == 0 || p.radius == 0.0) {
      best = std::max(best, distance_to(p.center, b));
      continue;
    }
    if (k == 1 && b.v.cols() == 0) {
      best = std::max(best, segment_sup(p.center, a.v.col(0), p.radius, b));
      continue;
    }
    if (k == 1) {
      // the distance along the segment is a minimum of convex functions;
      // scan finely, then refine each local maximum by golden-section search
      const Eigen::VectorXd e = a.v.col(0);
      auto f = [&](double t) { return distance_to(p.center + t * e, b); };
      const std::size_t m = 16 * (b.pieces.size() + 1) + 64;
      std::vector<double> ts(m + 1), fs(m + 1);
      for (std::size_t i = 0; i <= m; ++i) {
        ts[i] = -p.radius + 2.0 * p.radius * static_cast<double>(i) / static_cast<double>(m);
        fs[i] = f(ts[i]);
        best = std::max(best, fs[i]);
      }
      const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
      for (std::size_t i = 1; i < m; ++i) {
        if (fs[i] < fs[i - 1] || fs[i] < fs[i + 1]) continue;
        double lo = ts[i - 1], hi = ts[i + 1];
        double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
        double f1 = f(x1), f2 = f(x2);
        for (int it = 0; it < 60; ++it) {
          if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
          } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
          }
        }
        best = std::max(best, std::max(f1, f2));
      }
      continue;
    }
    // higher-dimensional pieces: deterministic sampling of the k-ball
    const int per_axis = k == 2 ? 80 : 16;
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    for (;;) {
      Eigen::VectorXd u(k);
      for (Eigen::Index i = 0; i < k; ++i)
        u(i) = -1.0 + 2.0 * idx[static_cast<std::size_t>(i)] / static_cast<double>(per_axis);
      if (u.norm() <= 1.0) best = std::max(best, distance_to(p.center + a.v * (p.radius * u), b));
      Eigen::Index i = k - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == per_axis) idx[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
    }
  }
  return best;
}

}  // namespace

double chabauty_distance(const ClosedSubgroup& a, const ClosedSubgroup& b, double R) {
  if (!(R > 0.0)) throw PreconditionError("chabauty_distance: R must be positive");
  if (a.dim() != b.dim()) throw PreconditionError("chabauty_distance: dimension mismatch");
  const auto ta = truncate(a, R), tb = truncate(b, R);
  if (ta.pieces.empty() && tb.pieces.empty()) return 0.0;
  if (ta.pieces.empty() || tb.pieces.empty()) return R;
  return std::max(directed(ta, tb), directed(tb, ta));
}

// ---------------------------------------------------------------------------
// limits

LimitReport chabauty_limit(const SubgroupSequence& seq, const std::vector<long>& indices,
                           const std::vector<double>& radii, double tol, long probe, Exec exec) {
  if (indices.empty() || radii.empty()) throw PreconditionError("chabauty_limit: need indices and radii");
  if (!(tol > 0.0)) throw PreconditionError("chabauty_limit: tol must be positive");
  LimitReport r;
  r.indices = indices;
  r.radii = radii;
  const double escape = 1.0 / tol;
  const double agree = std::sqrt(tol);

  struct Data {
    Eigen::MatrixXd v, bounded, tiny;
  };
  std::vector<Data> data;
  int n = 0;
  for (long t = probe; t < probe + 3; ++t) {
    const ClosedSubgroup h = seq(t);
    n = h.dim();
    Data d{h.connected(), Eigen::MatrixXd(n, 0), Eigen::MatrixXd(n, 0)};
    for (Eigen::Index j = 0; j < h.discrete().cols(); ++j) {
      const Eigen::VectorXd c = h.discrete().col(j);
      if (c.norm() > escape) continue;  // escapes every compact set
      Eigen::MatrixXd& target = c.norm() < tol ? d.tiny : d.bounded;
      target.conservativeResize(n, target.cols() + 1);
      target.col(target.cols() - 1) = c;
    }
    data.push_back(std::move(d));
  }
  for (std::size_t i = 1; i < data.size(); ++i) {
    const auto& a = data[i - 1];
    const auto& b = data[i];
    const long ia = probe + static_cast<long>(i) - 1, ib = probe + static_cast<long>(i);
    std::ostringstream w;
    if (a.v.cols() != b.v.cols() || a.bounded.cols() != b.bounded.cols() || a.tiny.cols() != b.tiny.cols()) {
      w << "no limit at tolerance: canonical shapes differ at indices " << ia << " and " << ib;
      r.witness = w.str();
      return r;
    }
    if (a.bounded.cols() > 0 && (a.bounded - b.bounded).cwiseAbs().maxCoeff() > agree) {
      w << "no limit at tolerance: reduced bases differ by " << (a.bounded - b.bounded).cwiseAbs().maxCoeff()
        << " at indices " << ia << " and " << ib;
      r.witness = w.str();
      return r;
    }
  }
  const Data& last = data.back();
  Eigen::MatrixXd v(n, last.v.cols() + last.tiny.cols());
  v << last.v, last.tiny;
  r.limit = ClosedSubgroup(n, v, last.bounded);
  r.found = true;

  const std::size_t ni = indices.size();
  const auto flat = kernels::map(exec, radii.size() * ni, [&](std::size_t k) {
    return chabauty_distance(seq(indices[k % ni]), *r.limit, radii[k / ni]);
  });
  r.verified = true;
  const std::size_t half = ni / 2;
  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    std::vector<double> d(flat.begin() + static_cast<long>(ri * ni), flat.begin() + static_cast<long>((ri + 1) * ni));
    const double head = *std::max_element(d.begin(), d.begin() + static_cast<long>(std::max<std::size_t>(half, 1)));
    const double tail = *std::max_element(d.begin() + static_cast<long>(half), d.end());
    if (!(tail <= std::max(0.5 * head, tol))) r.verified = false;
    r.distances.push_back(std::move(d));
  }
  if (!r.verified) r.witness = "truncation distances to the proposed limit do not shrink along the sequence";
  return r;
}

MahlerReport mahler_subsequence(const std::vector<Eigen::MatrixXd>& seq, double v, double r, double target,
                                double tol) {
  if (seq.empty()) throw PreconditionError("mahler_subsequence: empty sequence");
  if (!(v > 0.0) || !(r > 0.0)) throw PreconditionError("mahler_subsequence: v and r must be positive");
  const Eigen::Index n = seq.front().rows();
  std::vector<Eigen::VectorXd> points;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].rows() != n || seq[i].cols() != n)
      throw PreconditionError("mahler_subsequence: lattice " + std::to_string(i) + " is not full rank in R^n");
    const double cov = covolume(seq[i]);
    if (cov > v * (1.0 + 1e-12))
      throw PreconditionError("mahler_subsequence: lattice " + std::to_string(i) + " has covolume " +
                              std::to_string(cov) + " above v");
    const double sv = shortest_vectors(seq[i]).length;
    if (sv < r * (1.0 - 1e-12))
      throw PreconditionError("mahler_subsequence: lattice " + std::to_string(i) + " has a vector of length " +
                              std::to_string(sv) + " below r");
    const Eigen::MatrixXd b = reduce_basis(seq[i]);
    points.emplace_back(Eigen::Map<const Eigen::VectorXd>(b.data(), b.size()));
  }
  MahlerReport m;
  // An LLL-reduced basis has prod |b_i| <= 2^{n(n-1)/4} covol, and every
  // |b_j| >= r, so each |b_i| <= 2^{n(n-1)/4} v / r^{n-1}.
  const double nd = static_cast<double>(n);
  m.basis_bound = std::pow(2.0, nd * (nd - 1.0) / 4.0) * v / std::pow(r, nd - 1.0);
  for (const auto& p : points)
    if (p.cwiseAbs().maxCoeff() > m.basis_bound * (1.0 + 1e-9))
      throw std::logic_error("mahler_subsequence: reduced basis exceeds the proven bound");

  Eigen::VectorXd lo = Eigen::VectorXd::Constant(n * n, -m.basis_bound);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(n * n, m.basis_bound);
  std::vector<std::size_t> members(points.size());
  for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
  // pigeonhole: halve the longest side, keep the fuller half
  for (;;) {
    Eigen::Index axis = 0;
    const double side = (hi - lo).maxCoeff(&axis);
    if (side <= target) break;
    const double mid = 0.5 * (lo(axis) + hi(axis));
    std::vector<std::size_t> low, high;
    for (auto i : members) (points[i](axis) <= mid ? low : high).push_back(i);
    auto& keep = low.size() >= high.size() ? low : high;
    if (keep.size() < 2) break;
    if (&keep == &low) hi(axis) = mid; else lo(axis) = mid;
    members = keep;
  }
  m.subsequence = members;
  m.box_diameter = (hi - lo).norm();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n * n);
  for (auto i : members) mean += points[i];
  mean /= static_cast<double>(members.size());
  m.limit = Eigen::Map<const Eigen::MatrixXd>(mean.data(), n, n);
  m.limit_covolume = covolume(m.limit);
  m.limit_shortest = shortest_vectors(m.limit).length;
  m.verified = m.limit_covolume <= v + tol && m.limit_shortest >= r - tol;
  return m;
}

}  // namespace latlab::chab

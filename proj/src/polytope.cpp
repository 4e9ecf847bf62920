#include "otscuts/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>

#include "otscuts/error.hpp"

namespace otscuts {

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows) {
  RatMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r].at(c);
  return m;
}

std::size_t rank(RatMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pivot, k), m(r, k));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(i, k) -= f * m(r, k);
    }
    ++r;
  }
  return r;
}

std::optional<RatVector> solve(RatMatrix a, RatVector b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve: dimension mismatch");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a(pivot, c) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(pivot, k), a(c, k));
      std::swap(b[pivot], b[c]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(i, k) -= f * a(c, k);
      b[i] -= f * b[c];
    }
  }
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a(i, i);
  return x;
}

std::size_t affine_rank(const std::vector<RatVector>& points) {
  if (points.empty()) throw std::invalid_argument("affine_rank of an empty point list");
  if (points.size() == 1) return 0;
  std::vector<RatVector> diffs;
  for (std::size_t k = 1; k < points.size(); ++k) {
    RatVector d(points[k].size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = points[k][i] - points[0][i];
    diffs.push_back(std::move(d));
  }
  return rank(RatMatrix::from_rows(diffs));
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += a[i] * b[i];
  return s;
}

void HPolytope::add(RatVector a, Rational b, std::string label) {
  if (a.size() != dimension) throw std::invalid_argument("HPolytope::add: row has wrong dimension");
  rows.push_back({std::move(a), std::move(b), std::move(label)});
}

void HPolytope::add_box(std::size_t var, const Rational& lower, const Rational& upper, const std::string& label) {
  RatVector up(dimension, Rational(0));
  up[var] = 1;
  RatVector lo(dimension, Rational(0));
  lo[var] = -1;
  add(std::move(up), upper, label.empty() ? std::string{} : label + "_hi");
  add(std::move(lo), -lower, label.empty() ? std::string{} : label + "_lo");
}

std::optional<std::size_t> HPolytope::first_violated(const RatVector& x) const {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (dot(rows[i].a, x) > rows[i].b) return i;
  return std::nullopt;
}

bool HPolytope::contains(const RatVector& x) const { return !first_violated(x); }

// ---------------------------------------------------------------------------
// Double description

namespace {

struct Ray {
  RatVector z;
  std::uint64_t tight = 0;
};

void normalize(RatVector& z) {
  const Rational& t = z.back();
  Rational scale;
  if (t != 0) {
    scale = abs(t);
  } else {
    for (const Rational& v : z)
      if (v != 0) {
        scale = abs(v);
        break;
      }
  }
  if (scale == 0 || scale == 1) return;
  for (Rational& v : z) v /= scale;
}

}  // namespace

std::vector<RatVector> enumerate_vertices(const HPolytope& p, VertexCaps caps) {
  const std::size_t d = p.dimension;
  if (d == 0) throw std::invalid_argument("enumerate_vertices: zero-dimensional space");
  if (d > caps.max_dimension || p.rows.size() > caps.max_rows)
    throw CapExceeded("vertex enumeration limited to dimension " + std::to_string(caps.max_dimension) + " and " +
                      std::to_string(caps.max_rows) + " rows (got " + std::to_string(d) + ", " + std::to_string(p.rows.size()) + ")");

  // Homogenize: K = { (x, t) : a.x - b t <= 0, -t <= 0 }.
  const std::size_t dim = d + 1;
  std::vector<RatVector> cone;
  cone.reserve(p.rows.size() + 1);
  {
    RatVector t_row(dim, Rational(0));
    t_row[d] = -1;
    cone.push_back(std::move(t_row));
  }
  for (const HalfSpace& h : p.rows) {
    RatVector row(h.a);
    row.push_back(-h.b);
    cone.push_back(std::move(row));
  }

  // Greedily pick `dim` independent rows for the initial simplicial cone.
  std::vector<std::size_t> basis;
  std::vector<RatVector> echelon;
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < cone.size() && basis.size() < dim; ++i) {
    RatVector v = cone[i];
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      if (v[pivots[e]] == 0) continue;
      Rational f = v[pivots[e]] / echelon[e][pivots[e]];
      for (std::size_t k = 0; k < dim; ++k) v[k] -= f * echelon[e][k];
    }
    auto nz = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (nz == v.end()) continue;
    pivots.push_back(static_cast<std::size_t>(nz - v.begin()));
    echelon.push_back(std::move(v));
    basis.push_back(i);
  }
  if (basis.size() < dim) {
    RatVector zero(d, Rational(0));
    if (rational_simplex(p, zero, Sense::Minimize).status == LpStatus::Infeasible) return {};
    throw UnboundedError("polyhedron contains a line");
  }

  RatMatrix rb(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) rb(r, c) = cone[basis[r]][c];

  std::uint64_t processed = 0;
  for (std::size_t i : basis) processed |= std::uint64_t{1} << i;

  std::vector<Ray> rays;
  for (std::size_t j = 0; j < dim; ++j) {
    RatVector rhs(dim, Rational(0));
    rhs[j] = -1;
    Ray ray;
    ray.z = *solve(rb, rhs);
    normalize(ray.z);
    for (std::size_t r = 0; r < dim; ++r)
      if (r != j) ray.tight |= std::uint64_t{1} << basis[r];
    rays.push_back(std::move(ray));
  }

  for (std::size_t h = 0; h < cone.size(); ++h) {
    if (processed >> h & 1) continue;
    const std::uint64_t bit = std::uint64_t{1} << h;
    std::vector<Rational> slack(rays.size());
    std::vector<std::size_t> plus, minus;
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      slack[r] = dot(cone[h], rays[r].z);
      if (slack[r] > 0) {
        plus.push_back(r);
      } else if (slack[r] < 0) {
        minus.push_back(r);
      } else {
        Ray kept = rays[r];
        kept.tight |= bit;
        next.push_back(std::move(kept));
      }
    }
    for (std::size_t r : minus) next.push_back(rays[r]);

    for (std::size_t ip : plus) {
      for (std::size_t in : minus) {
        const std::uint64_t common = rays[ip].tight & rays[in].tight;
        if (static_cast<std::size_t>(std::popcount(common)) + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == ip || r == in) continue;
          if ((rays[r].tight & common) == common) adjacent = false;
        }
        if (!adjacent) continue;
        Ray combined;
        combined.z.resize(dim);
        for (std::size_t k = 0; k < dim; ++k) combined.z[k] = slack[ip] * rays[in].z[k] - slack[in] * rays[ip].z[k];
        normalize(combined.z);
        combined.tight = common | bit;
        next.push_back(std::move(combined));
      }
    }
    rays = std::move(next);
    processed |= bit;
  }

  std::vector<RatVector> vertices;
  for (const Ray& ray : rays) {
    if (ray.z[d] == 0) throw UnboundedError("polyhedron is unbounded");
    RatVector v(ray.z.begin(), ray.z.begin() + static_cast<std::ptrdiff_t>(d));
    for (Rational& x : v) x /= ray.z[d];
    vertices.push_back(std::move(v));
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

// ---------------------------------------------------------------------------
// Simplex

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), t_(rows, RatVector(cols + 1, Rational(0))), basis_(rows) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  Rational& rhs(std::size_t r) { return t_[r][cols_]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    Rational inv = 1 / t_[pr][pc];
    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k <= cols_; ++k) {
      if (t_[pr][k] == 0) continue;
      t_[pr][k] *= inv;
      nz.push_back(k);
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr || t_[r][pc] == 0) continue;
      Rational f = t_[r][pc];
      for (std::size_t k : nz) t_[r][k] -= f * t_[pr][k];
    }
    if (!cost_.empty() && cost_[pc] != 0) {
      Rational f = cost_[pc];
      for (std::size_t k : nz) cost_[k] -= f * t_[pr][k];
    }
    basis_[pr] = pc;
  }

  void erase_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

  // Reduced costs for maximizing c.x over the current basis.
  void set_objective(const RatVector& c) {
    cost_.assign(cols_ + 1, Rational(0));
    for (std::size_t k = 0; k < cols_; ++k) cost_[k] = c[k];
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& cb = c[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t k = 0; k <= cols_; ++k)
        if (t_[r][k] != 0) cost_[k] -= cb * t_[r][k];
    }
  }

  // Bland's rule. Returns false when unbounded.
  bool maximize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t k = 0; k < cols_; ++k)
        if (allowed[k] && cost_[k] > 0) {
          enter = k;
          break;
        }
      if (enter == cols_) return true;
      std::size_t leave = rows_;
      Rational best;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (t_[r][enter] <= 0) continue;
        Rational ratio = t_[r][cols_] / t_[r][enter];
        if (leave == rows_ || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
  }

  RatVector solution() const {
    RatVector x(cols_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r) x[basis_[r]] = t_[r][cols_];
    return x;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<RatVector> t_;
  std::vector<std::size_t> basis_;
  RatVector cost_;
};

}  // namespace

LpResult rational_simplex(const HPolytope& p, const RatVector& objective, Sense sense) {
  const std::size_t n = p.dimension;
  const std::size_t m = p.rows.size();
  if (objective.size() != n) throw std::invalid_argument("rational_simplex: objective has wrong dimension");

  // Columns: u (n), v (n), slacks (m), artificials (one per negative rhs).
  std::vector<std::size_t> negative_rows;
  for (std::size_t i = 0; i < m; ++i)
    if (p.rows[i].b < 0) negative_rows.push_back(i);
  const std::size_t first_slack = 2 * n;
  const std::size_t first_art = first_slack + m;
  const std::size_t cols = first_art + negative_rows.size();

  Tableau tab(m, cols);
  std::size_t art = first_art;
  for (std::size_t i = 0; i < m; ++i) {
    const HalfSpace& h = p.rows[i];
    const bool flip = h.b < 0;
    const Rational sign = flip ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (h.a[j] == 0) continue;
      tab.at(i, j) = sign * h.a[j];
      tab.at(i, n + j) = -sign * h.a[j];
    }
    tab.at(i, first_slack + i) = sign;
    tab.rhs(i) = sign * h.b;
    if (flip) {
      tab.at(i, art) = 1;
      tab.basis()[i] = art++;
    } else {
      tab.basis()[i] = first_slack + i;
    }
  }

  std::vector<bool> allowed(cols, true);
  if (!negative_rows.empty()) {
    RatVector phase1(cols, Rational(0));
    for (std::size_t k = first_art; k < cols; ++k) phase1[k] = -1;
    tab.set_objective(phase1);
    tab.maximize(allowed);
    RatVector x = tab.solution();
    for (std::size_t k = first_art; k < cols; ++k)
      if (x[k] != 0) return {LpStatus::Infeasible, 0, {}};
    // Drive zero-valued artificials out of the basis.
    for (std::size_t r = 0; r < tab.rows();) {
      if (tab.basis()[r] < first_art) {
        ++r;
        continue;
      }
      std::size_t col = first_art;
      for (std::size_t k = 0; k < first_art; ++k)
        if (tab.at(r, k) != 0) {
          col = k;
          break;
        }
      if (col == first_art) {
        tab.erase_row(r);
      } else {
        tab.pivot(r, col);
        ++r;
      }
    }
    for (std::size_t k = first_art; k < cols; ++k) allowed[k] = false;
  }

  RatVector cost(cols, Rational(0));
  const Rational sign = sense == Sense::Maximize ? 1 : -1;
  for (std::size_t j = 0; j < n; ++j) {
    cost[j] = sign * objective[j];
    cost[n + j] = -sign * objective[j];
  }
  tab.set_objective(cost);
  if (!tab.maximize(allowed)) return {LpStatus::Unbounded, 0, {}};

  RatVector x = tab.solution();
  LpResult result;
  result.status = LpStatus::Optimal;
  result.point.resize(n);
  for (std::size_t j = 0; j < n; ++j) result.point[j] = x[j] - x[n + j];
  result.value = dot(objective, result.point);
  return result;
}

namespace {

HalfSpace normalized(HalfSpace h) {
  for (const Rational& v : h.a) {
    if (v == 0) continue;
    const Rational scale = abs(v);
    for (Rational& c : h.a) c /= scale;
    h.b /= scale;
    break;
  }
  return h;
}

bool is_zero(const RatVector& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& v) { return v == 0; });
}

}  // namespace

HPolytope fourier_motzkin(const HPolytope& p, std::size_t var) {
  if (var >= p.dimension) throw std::invalid_argument("fourier_motzkin: variable out of range");
  std::vector<const HalfSpace*> upper, lower;
  HPolytope out(p.dimension);
  std::set<std::pair<RatVector, Rational>> seen;
  auto keep = [&](HalfSpace h) {
    h = normalized(std::move(h));
    if (is_zero(h.a) && h.b >= 0) return;
    if (seen.insert({h.a, h.b}).second) out.rows.push_back(std::move(h));
  };
  for (const HalfSpace& h : p.rows) {
    if (h.a[var] > 0)
      upper.push_back(&h);
    else if (h.a[var] < 0)
      lower.push_back(&h);
    else
      keep(h);
  }
  for (const HalfSpace* u : upper) {
    for (const HalfSpace* l : lower) {
      const Rational cu = -l->a[var];
      const Rational cl = u->a[var];
      HalfSpace h;
      h.a.resize(p.dimension);
      for (std::size_t k = 0; k < p.dimension; ++k) h.a[k] = cu * u->a[k] + cl * l->a[k];
      h.a[var] = 0;
      h.b = cu * u->b + cl * l->b;
      h.label = u->label + "+" + l->label;
      keep(std::move(h));
    }
  }
  return out;
}

HPolytope drop_redundant(const HPolytope& p) {
  HPolytope out(p.dimension);
  for (const HalfSpace& h : p.rows)
    if (!(is_zero(h.a) && h.b >= 0)) out.rows.push_back(h);
  for (std::size_t i = 0; i < out.rows.size();) {
    HPolytope rest(out.dimension);
    for (std::size_t j = 0; j < out.rows.size(); ++j)
      if (j != i) rest.rows.push_back(out.rows[j]);
    LpResult r = rational_simplex(rest, out.rows[i].a, Sense::Maximize);
    const bool implied = r.status == LpStatus::Infeasible || (r.status == LpStatus::Optimal && r.value <= out.rows[i].b);
    if (implied)
      out.rows.erase(out.rows.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return out;
}

HPolytope restrict_to(const HPolytope& p, const std::vector<std::size_t>& vars) {
  std::vector<bool> kept(p.dimension, false);
  for (std::size_t v : vars) kept.at(v) = true;
  HPolytope out(vars.size());
  for (const HalfSpace& h : p.rows) {
    for (std::size_t k = 0; k < p.dimension; ++k)
      if (!kept[k] && h.a[k] != 0) throw std::invalid_argument("restrict_to: row '" + h.label + "' uses a dropped variable");
    RatVector a(vars.size());
    for (std::size_t k = 0; k < vars.size(); ++k) a[k] = h.a[vars[k]];
    out.add(std::move(a), h.b, h.label);
  }
  return out;
}

}  // namespace otscuts

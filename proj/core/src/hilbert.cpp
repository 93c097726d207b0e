#include "zsm/hilbert.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>

namespace zsm {

namespace {

std::size_t width_of(const Matrix& a) {
  if (a.empty()) throw InvalidInput("relation matrix has no rows");
  const std::size_t n = a.front().size();
  if (n == 0) throw InvalidInput("relation matrix has no columns");
  for (const auto& row : a)
    if (row.size() != n) throw InvalidInput("relation matrix rows differ in width");
  return n;
}

Count degree(const Vector& x) { return std::accumulate(x.begin(), x.end(), Count{0}); }

using Mask = std::uint64_t;

Mask support_mask(const Vector& v) {
  Mask m = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) m |= Mask{1} << (i % 64);
  return m;
}

// Basis elements with support masks for a cheap subset pre-check.
class Antichain {
 public:
  void add(const Vector& v) {
    items_.push_back(v);
    masks_.push_back(support_mask(v));
  }
  bool dominates_some(const Vector& q) const {
    const Mask mq = support_mask(q);
    for (std::size_t i = 0; i < items_.size(); ++i)
      if ((masks_[i] & ~mq) == 0 && dominated(items_[i], q)) return true;
    return false;
  }
  std::vector<Vector> take() { return std::move(items_); }

 private:
  std::vector<Vector> items_;
  std::vector<Mask> masks_;
};

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](Count c) { return c == 0; });
}

}  // namespace

Vector multiply(const Matrix& a, const Vector& x) {
  Vector out(a.size(), 0);
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < x.size(); ++c)
      if (x[c]) out[r] = checked_add(out[r], checked_mul(a[r][c], x[c]));
  return out;
}

bool dominated(const Vector& small, const Vector& big) {
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small[i] > big[i]) return false;
  return true;
}

std::vector<Vector> bounded_minimal_solutions(const Matrix& a, Count max_degree, const Budget& budget) {
  const std::size_t n = width_of(a);
  Meter meter(budget);
  std::vector<Vector> found;
  Vector x(n, 0);
  // by increasing degree, so any smaller solution is already known
  for (Count deg = 1; deg <= max_degree; ++deg) {
    std::vector<Vector> level;
    auto rec = [&](auto&& self, std::size_t i, Count left) -> void {
      meter.node_or_throw("bounded_minimal_solutions");
      if (i + 1 == n) {
        x[i] = left;
        if (is_zero(multiply(a, x)) &&
            std::none_of(found.begin(), found.end(), [&](const Vector& b) { return dominated(b, x); }))
          level.push_back(x);
        x[i] = 0;
        return;
      }
      for (Count c = 0; c <= left; ++c) {
        x[i] = c;
        self(self, i + 1, left - c);
      }
      x[i] = 0;
    };
    rec(rec, 0, deg);
    found.insert(found.end(), level.begin(), level.end());
  }
  std::sort(found.begin(), found.end());
  return found;
}

HilbertBasis kernel_hilbert_basis(const Matrix& a, const Budget& budget, HilbertOptions opt) {
  const std::size_t n = width_of(a);
  Meter meter(budget);
  std::vector<Vector> images(n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(n, 0);
    e[j] = 1;
    images[j] = multiply(a, e);
  }
  HilbertBasis out;
  out.method = "completion";
  std::set<Vector> frontier;
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(n, 0);
    e[j] = 1;
    frontier.insert(e);
  }
  Antichain found;
  Count deg = 1;
  while (!frontier.empty()) {
    if (opt.degree_cap > 0 && deg > opt.degree_cap) {
      out.basis = bounded_minimal_solutions(a, opt.degree_cap, budget);
      out.complete = false;
      out.method = "bounded";
      out.degree_used = opt.degree_cap;
      return out;
    }
    out.degree_used = deg;
    std::vector<std::pair<Vector, Vector>> open;
    for (const auto& p : frontier) {
      Vector img = multiply(a, p);
      if (is_zero(img)) found.add(p);
      else open.emplace_back(p, std::move(img));
    }
    std::set<Vector> next;
    for (const auto& [p, img] : open) {
      for (std::size_t j = 0; j < n; ++j) {
        Int dot = 0;
        for (std::size_t r = 0; r < img.size(); ++r) dot = checked_add(dot, checked_mul(img[r], images[j][r]));
        if (dot >= 0) continue;
        meter.node_or_throw("hilbert_basis");
        Vector q = p;
        ++q[j];
        if (found.dominates_some(q)) continue;
        next.insert(std::move(q));
      }
    }
    frontier.swap(next);
    ++deg;
  }
  out.basis = found.take();
  std::sort(out.basis.begin(), out.basis.end());
  return out;
}

Count PairAtom::left_size() const { return degree(left); }
Count PairAtom::right_size() const { return degree(right); }

PairBasis hilbert_basis(const Matrix& m, const Budget& budget, HilbertOptions opt) {
  const std::size_t s = width_of(m);
  Matrix joined(m.size(), std::vector<Int>(2 * s, 0));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < s; ++c) {
      joined[r][c] = m[r][c];
      joined[r][s + c] = -m[r][c];
    }
  HilbertBasis hb = kernel_hilbert_basis(joined, budget, opt);
  PairBasis out;
  out.complete = hb.complete;
  out.method = hb.method;
  for (const auto& v : hb.basis)
    out.atoms.push_back({Vector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(s)),
                         Vector(v.begin() + static_cast<std::ptrdiff_t>(s), v.end())});
  std::sort(out.atoms.begin(), out.atoms.end());
  return out;
}

}  // namespace zsm

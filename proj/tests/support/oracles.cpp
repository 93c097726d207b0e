#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>
#include <map>
#include <numeric>
#include <queue>

namespace oracle {

namespace {

std::vector<std::pair<Int, Count>> flat(const Sequence& s) {
  std::vector<std::pair<Int, Count>> out;
  for (const auto& t : s.terms()) out.emplace_back(t.value, t.count);
  return out;
}

// Visits every count vector c with 0 <= c[i] <= top[i].
template <class F>
void odometer(const Counts& top, F&& visit) {
  Counts c(top.size(), 0);
  for (;;) {
    visit(c);
    std::size_t i = 0;
    while (i < c.size() && c[i] == top[i]) c[i++] = 0;
    if (i == c.size()) return;
    ++c[i];
  }
}

}  // namespace

bool is_minimal_zero_sum(const Sequence& s) {
  if (s.empty()) return false;
  auto terms = flat(s);
  const Int modulus = s.ambient().modulus();
  auto reduce = [&](Int v) { return modulus ? ((v % modulus) + modulus) % modulus : v; };
  Int total = 0;
  for (auto [v, c] : terms) total = reduce(total + v * c);
  if (total != 0) return false;
  Counts top;
  for (auto [v, c] : terms) top.push_back(c);
  bool proper = false;
  odometer(top, [&](const Counts& c) {
    if (proper) return;
    Count n = 0;
    Int sum = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      n += c[i];
      sum = reduce(sum + terms[i].first * c[i]);
    }
    if (n > 0 && n < s.length() && sum == 0) proper = true;
  });
  return !proper;
}

std::vector<Sequence> atoms(const std::vector<Int>& ground, Count max_length) {
  std::vector<Int> g(ground);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  std::vector<Sequence> out;
  Sequence cur;
  // nondecreasing index choice builds each multiset once
  auto rec = [&](auto&& self, std::size_t from, Int sum) -> void {
    if (!cur.empty() && sum == 0) {
      if (is_minimal_zero_sum(cur)) out.push_back(cur);
      return;
    }
    if (cur.length() == max_length) return;
    for (std::size_t i = from; i < g.size(); ++i) {
      Sequence saved = cur;
      cur.add(g[i]);
      self(self, i, sum + g[i]);
      cur = saved;
    }
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Sequence> cyclic_atoms(Int n, const std::vector<Int>& residues) {
  auto amb = zsm::Ambient::cyclic(n);
  std::set<Int> r;
  for (Int x : residues) r.insert(((x % n) + n) % n);
  std::vector<Int> g(r.begin(), r.end());
  std::vector<Sequence> out;
  Sequence cur(amb);
  auto rec = [&](auto&& self, std::size_t from, Int sum) -> void {
    if (!cur.empty() && sum == 0) {
      if (is_minimal_zero_sum(cur)) out.push_back(cur);
      return;
    }
    if (cur.length() == n) return;
    for (std::size_t i = from; i < g.size(); ++i) {
      Sequence saved = cur;
      cur.add(g[i]);
      self(self, i, (sum + g[i]) % n);
      cur = saved;
    }
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Counts> factorizations(const Sequence& b, const std::vector<Sequence>& atoms) {
  std::vector<Counts> out;
  Counts c(atoms.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, const Sequence& rest) -> void {
    if (rest.empty()) {
      out.push_back(c);
      return;
    }
    if (i == atoms.size()) return;
    Sequence r = rest;
    Count k = 0;
    for (;;) {
      self(self, i + 1, r);
      if (!atoms[i].divides(r)) break;
      r = r.quotient(atoms[i]);
      c[i] = ++k;
    }
    c[i] = 0;
  };
  rec(rec, 0, b);
  std::sort(out.begin(), out.end());
  return out;
}

std::set<Count> lengths(const Sequence& b, const std::vector<Sequence>& atoms) {
  std::set<Count> out;
  for (const auto& z : factorizations(b, atoms)) out.insert(length(z));
  return out;
}

Count length(const Counts& x) { return std::accumulate(x.begin(), x.end(), Count{0}); }

Count distance(const Counts& x, const Counts& y) {
  Count a = 0, b = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Count common = std::min(x[i], y[i]);
    a += x[i] - common;
    b += y[i] - common;
  }
  return std::max(a, b);
}

namespace {

// Is t reachable from s using steps of distance <= n that never decrease the length?
bool reach(const std::vector<Counts>& z, std::size_t s, std::size_t t, Count n, bool monotone) {
  std::vector<char> seen(z.size(), 0);
  std::queue<std::size_t> q;
  q.push(s);
  seen[s] = 1;
  while (!q.empty()) {
    auto u = q.front();
    q.pop();
    if (u == t) return true;
    for (std::size_t v = 0; v < z.size(); ++v) {
      if (seen[v] || distance(z[u], z[v]) > n) continue;
      if (monotone && (length(z[v]) < length(z[u]) || length(z[v]) > length(z[t]))) continue;
      seen[v] = 1;
      q.push(v);
    }
  }
  return false;
}

Count worst_pair(const std::vector<Counts>& z, bool monotone) {
  Count worst = 0;
  for (std::size_t s = 0; s < z.size(); ++s)
    for (std::size_t t = 0; t < z.size(); ++t) {
      if (s == t || length(z[s]) > length(z[t])) continue;
      Count n = 0;
      while (!reach(z, s, t, n, monotone)) ++n;
      worst = std::max(worst, n);
    }
  return worst;
}

}  // namespace

Count catenary(const std::vector<Counts>& z) { return worst_pair(z, false); }
Count monotone_catenary(const std::vector<Counts>& z) { return worst_pair(z, true); }

Count adjacent_distance(const std::vector<Counts>& z, Count k, Count l) {
  Count best = -1;
  for (const auto& x : z)
    for (const auto& y : z)
      if (length(x) == k && length(y) == l) {
        Count d = distance(x, y);
        if (best < 0 || d < best) best = d;
      }
  return best;
}

std::vector<zsm::Vector> minimal_kernel_solutions(const zsm::Matrix& a, Count max_sum) {
  const std::size_t n = a.empty() ? 0 : a.front().size();
  std::vector<zsm::Vector> sols;
  zsm::Vector x(n, 0);
  auto rec = [&](auto&& self, std::size_t i, Count left) -> void {
    if (i == n) {
      if (std::all_of(x.begin(), x.end(), [](Count c) { return c == 0; })) return;
      for (const auto& row : a) {
        Int s = 0;
        for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
        if (s != 0) return;
      }
      sols.push_back(x);
      return;
    }
    for (Count c = 0; c <= left; ++c) {
      x[i] = c;
      self(self, i + 1, left - c);
    }
    x[i] = 0;
  };
  rec(rec, 0, max_sum);
  std::vector<zsm::Vector> out;
  for (const auto& s : sols) {
    bool minimal = true;
    for (const auto& t : sols) {
      if (t == s) continue;
      bool below = true;
      for (std::size_t j = 0; j < n; ++j) below = below && t[j] <= s[j];
      if (below) minimal = false;
    }
    if (minimal) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool refines(const std::vector<Sequence>& zpos, const std::vector<Sequence>& ypos) {
  std::vector<Sequence> rem(zpos);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == ypos.size())
      return std::all_of(rem.begin(), rem.end(), [](const Sequence& s) { return s.empty(); });
    for (std::size_t j = 0; j < rem.size(); ++j) {
      if (!ypos[i].divides(rem[j])) continue;
      Sequence saved = rem[j];
      rem[j] = saved.quotient(ypos[i]);
      if (self(self, i + 1)) return true;
      rem[j] = saved;
    }
    return false;
  };
  return rec(rec, 0);
}

Sequence random_zero_sum(const std::vector<Int>& ground, Count max_length, std::mt19937_64& rng) {
  std::uniform_int_distribution<Count> len(1, max_length);
  std::uniform_int_distribution<std::size_t> pick(0, ground.size() - 1);
  for (int attempt = 0; attempt < 10'000'000; ++attempt) {
    Sequence s;
    Int sum = 0;
    Count n = len(rng);
    for (Count i = 0; i < n; ++i) {
      Int g = ground[pick(rng)];
      s.add(g);
      sum += g;
    }
    if (sum == 0) return s;
  }
  throw std::runtime_error("random_zero_sum: no zero-sum sequence drawn");
}

}  // namespace oracle

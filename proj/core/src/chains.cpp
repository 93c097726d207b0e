#include "zsm/chains.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "zsm/hilbert.hpp"

namespace zsm {

std::strong_ordering operator<=>(const PairSequence& a, const PairSequence& b) {
  if (auto c = a.left <=> b.left; c != 0) return c;
  return a.right <=> b.right;
}

std::string PairSequence::to_string() const { return "(" + left.to_string() + ", " + right.to_string() + ")"; }

namespace {

std::vector<Int> sorted_negatives(const std::vector<Int>& negatives) {
  std::vector<Int> g(negatives);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  if (g.empty()) throw InvalidInput("need at least one negative");
  if (g.back() >= 0) throw InvalidInput("pair monoids live over negative integers");
  return g;
}

AtomSet symmetric_atoms(const std::vector<Int>& neg, const Budget& budget) {
  std::vector<Int> ground(neg);
  for (Int a : neg) ground.push_back(-a);
  return enumerate_atoms(ground, budget);
}

PairSequence as_pair(const Sequence& u) { return {u.negative_part(), u.positive_part().negated()}; }

// factors (x, y) in E into atoms of E
std::vector<PairSequence> factor_pair(const BlockMonoid& e, const Sequence& x, const Sequence& y) {
  std::vector<PairSequence> out;
  if (x.empty() && y.empty()) return out;
  for (const auto& u : e.any_factorization(x * y.negated()).expanded()) out.push_back(as_pair(u));
  return out;
}

// assignment[i] = index into zparts of the block receiving yparts[i]
std::optional<std::vector<std::size_t>> refinement(const std::vector<Sequence>& zparts,
                                                   const std::vector<Sequence>& yparts) {
  if (yparts.size() < zparts.size()) return std::nullopt;
  std::vector<std::size_t> order(yparts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return yparts[a].length() > yparts[b].length(); });
  std::vector<Sequence> rem(zparts);
  std::vector<std::size_t> assign(yparts.size(), 0);
  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == order.size()) return std::all_of(rem.begin(), rem.end(), [](const Sequence& s) { return s.empty(); });
    const Sequence& p = yparts[order[k]];
    for (std::size_t j = 0; j < rem.size(); ++j) {
      if (!p.divides(rem[j])) continue;
      bool seen = false;
      for (std::size_t i = 0; i < j && !seen; ++i) seen = rem[i] == rem[j];
      if (seen) continue;
      Sequence saved = rem[j];
      rem[j] = saved.quotient(p);
      assign[order[k]] = j;
      if (self(self, k + 1)) return true;
      rem[j] = saved;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return assign;
}

std::vector<Sequence> positives_of(const std::vector<Sequence>& parts) {
  std::vector<Sequence> out;
  for (const auto& u : parts) out.push_back(u.positive_part());
  std::sort(out.begin(), out.end());
  return out;
}

// Smallest set of indices whose vectors sum to zero, at most cap of them.
std::optional<std::vector<std::size_t>> zero_sum_subset(const std::vector<std::vector<Count>>& v, Count cap) {
  if (v.empty()) return std::nullopt;
  const std::size_t dim = v.front().size();
  std::vector<std::size_t> pick;
  std::vector<Count> acc(dim, 0);
  auto rec = [&](auto&& self, std::size_t from, Count left) -> bool {
    if (left == 0) return std::all_of(acc.begin(), acc.end(), [](Count c) { return c == 0; });
    for (std::size_t i = from; i < v.size(); ++i) {
      pick.push_back(i);
      for (std::size_t d = 0; d < dim; ++d) acc[d] += v[i][d];
      if (self(self, i + 1, left - 1)) return true;
      for (std::size_t d = 0; d < dim; ++d) acc[d] -= v[i][d];
      pick.pop_back();
    }
    return false;
  };
  for (Count size = 1; size <= std::min<Count>(cap, static_cast<Count>(v.size())); ++size)
    if (rec(rec, 0, size)) return pick;
  return std::nullopt;
}

Count min_support_magnitude(const Sequence& b) {
  auto s = b.support();
  if (s.empty()) throw InvalidInput("empty element");
  return s.front() < 0 ? -s.front() : s.front();
}

void require_plain(const Sequence& b) {
  if (b.ambient().is_cyclic()) throw UnsupportedAmbient("pair-monoid chains need the integers");
  if (b.count(0) > 0) throw InvalidInput("element must not contain 0");
  if (b.sum() != 0) throw InvalidInput("element " + b.to_string() + " does not have sum zero");
}

// Greedy climb in the refinement order starting at z.
Factorization dominating(const Factorization& z, const FactorizationSet& all) {
  Factorization cur = z;
  for (bool moved = true; moved;) {
    moved = false;
    auto key = positive_pattern(cur);
    for (const auto& w : all.all) {
      if (w.length() <= cur.length()) continue;
      if (positive_pattern(w) != key && refines_to(cur, w)) {
        cur = w;
        moved = true;
        break;
      }
    }
  }
  return cur;
}

struct SwapRun {
  const BlockMonoid& monoid;
  const BlockMonoid& e;
  std::vector<Int> neg;
  Count davenport;
  Count bound;
  std::vector<Factorization> steps;

  // Walks from the last step towards y; returns false when a refinement forces a new target.
  bool towards(const Factorization& y, bool allow_refine) {
    const Factorization z = steps.back();
    std::vector<Sequence> parts = z.expanded();
    std::vector<Sequence> yparts = y.expanded();
    auto assign = refinement(positives_of_unsorted(parts), positives_of_unsorted(yparts));
    if (!assign) throw DataError("target " + y.to_string() + " does not dominate " + z.to_string());
    std::vector<std::vector<PairSequence>> t(parts.size());
    for (std::size_t j = 0; j < parts.size(); ++j) {
      Sequence rhs;
      for (std::size_t i = 0; i < yparts.size(); ++i)
        if ((*assign)[i] == j) rhs *= yparts[i].negative_part();
      t[j] = factor_pair(e, parts[j].negative_part(), rhs);
    }
    for (;;) {
      std::vector<std::pair<std::size_t, std::size_t>> where;
      std::vector<std::vector<Count>> vecs;
      for (std::size_t j = 0; j < t.size(); ++j)
        for (std::size_t k = 0; k < t[j].size(); ++k)
          if (!t[j][k].symmetric()) {
            where.emplace_back(j, k);
            vecs.push_back(difference_vector(t[j][k], neg));
          }
      if (where.empty()) {
        if (steps.back() != y) throw DataError("swap procedure stalled before reaching " + y.to_string());
        return true;
      }
      auto w = zero_sum_subset(vecs, davenport);
      if (!w) throw DataError("no symmetric subproduct within the relative Davenport constant");
      std::map<std::size_t, std::pair<Sequence, Sequence>> moved;
      std::map<std::size_t, std::vector<std::size_t>> drop;
      for (std::size_t idx : *w) {
        auto [j, k] = where[idx];
        moved[j].first *= t[j][k].left;
        moved[j].second *= t[j][k].right;
        drop[j].push_back(k);
      }
      Factorization next;
      bool same_shape = true;
      std::vector<Sequence> new_parts;
      for (std::size_t j = 0; j < parts.size(); ++j) {
        auto it = moved.find(j);
        if (it == moved.end()) {
          next.add(parts[j]);
          new_parts.push_back(parts[j]);
          continue;
        }
        Sequence c = parts[j].quotient(it->second.first) * it->second.second;
        Factorization f = monoid.any_factorization(c);
        if (f.length() != 1) same_shape = false;
        next = next * f;
        new_parts.push_back(c);
      }
      if (distance(steps.back(), next) > bound) throw DataError("swap step exceeds its bound");
      if (next.length() < steps.back().length()) throw DataError("swap step shortened the factorization");
      steps.push_back(next);
      if (!same_shape) {
        if (!allow_refine) throw DataError("factorization is not maximal in the refinement order");
        return false;
      }
      parts = std::move(new_parts);
      for (auto& [j, ks] : drop) {
        std::sort(ks.rbegin(), ks.rend());
        for (std::size_t k : ks) t[j].erase(t[j].begin() + static_cast<std::ptrdiff_t>(k));
        for (const auto& term : moved[j].second.terms())
          for (Count c = 0; c < term.count; ++c) t[j].push_back({Sequence{{term.value, 1}}, Sequence{{term.value, 1}}});
      }
    }
  }

  static std::vector<Sequence> positives_of_unsorted(const std::vector<Sequence>& parts) {
    std::vector<Sequence> out;
    for (const auto& u : parts) out.push_back(u.positive_part());
    return out;
  }
};

std::vector<Int> negatives_of(const AtomSet& atoms) {
  std::vector<Int> neg;
  for (Int g : atoms.ground)
    if (g < 0) neg.push_back(g);
  return neg;
}

}  // namespace

std::vector<PairSequence> e_atoms(const std::vector<Int>& negatives, const Budget& budget) {
  auto neg = sorted_negatives(negatives);
  std::vector<PairSequence> out;
  for (const auto& u : symmetric_atoms(neg, budget).atoms) out.push_back(as_pair(u));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Count> difference_vector(const PairSequence& p, const std::vector<Int>& negatives) {
  auto neg = sorted_negatives(negatives);
  std::vector<Count> v(neg.size(), 0);
  for (std::size_t i = 0; i < neg.size(); ++i) v[i] = p.left.count(neg[i]) - p.right.count(neg[i]);
  for (const auto* s : {&p.left, &p.right})
    for (const auto& t : s->terms())
      if (!std::binary_search(neg.begin(), neg.end(), t.value))
        throw InvalidInput("pair uses " + std::to_string(t.value) + " outside the negatives");
  return v;
}

Count relative_davenport(const std::vector<Int>& negatives, const Budget& budget) {
  auto neg = sorted_negatives(negatives);
  std::vector<std::vector<Count>> cols;
  for (const auto& p : e_atoms(neg, budget)) cols.push_back(difference_vector(p, neg));
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  Matrix m(neg.size(), std::vector<Int>(cols.size(), 0));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < neg.size(); ++r) m[r][c] = cols[c][r];
  auto hb = kernel_hilbert_basis(m, budget);
  if (!hb.complete) throw BudgetExceeded("relative_davenport: Hilbert basis incomplete", 0, hb.basis.size());
  Count d = 0;
  for (const auto& x : hb.basis) d = std::max(d, std::accumulate(x.begin(), x.end(), Count{0}));
  return d;
}

std::vector<Sequence> positive_pattern(const Factorization& z) { return positives_of(z.expanded()); }

bool refines_to(const Factorization& z, const Factorization& y) {
  return refinement(positive_pattern(z), positive_pattern(y)).has_value();
}

FactorizationSet upsilon(const Sequence& b, const AtomSet& atoms, const Budget& budget) {
  require_plain(b);
  BlockMonoid m(atoms);
  FactorizationSet all = complete_factorizations(b, m, budget);
  std::map<std::vector<Sequence>, Count> patterns;  // pattern -> number of parts
  for (const auto& z : all.all) patterns.emplace(positive_pattern(z), z.length());
  Meter meter(budget);
  std::set<std::vector<Sequence>> maximal;
  for (const auto& [p, n] : patterns) {
    bool below = false;
    for (const auto& [q, k] : patterns) {
      if (k <= n) continue;
      meter.node_or_throw("upsilon");
      if (refinement(p, q)) {
        below = true;
        break;
      }
    }
    if (!below) maximal.insert(p);
  }
  FactorizationSet out;
  out.element = b;
  for (const auto& z : all.all)
    if (maximal.count(positive_pattern(z))) out.all.push_back(z);
  return out;
}

Chain chain_to_upsilon(const Sequence& b, const Factorization& z, const AtomSet& atoms, const Budget& budget) {
  require_plain(b);
  if (z.product() != b) throw InvalidInput("factorization does not multiply to the element");
  BlockMonoid m(atoms);
  auto neg = negatives_of(atoms);
  AtomSet e_set = symmetric_atoms(sorted_negatives(neg), budget);
  BlockMonoid e(e_set);
  const Count dav = relative_davenport(neg, budget);
  const Count bound = std::max<Count>(min_support_magnitude(b) * dav, 2);
  FactorizationSet all = complete_factorizations(b, m, budget);
  const Count top = all.lengths().max();

  SwapRun run{m, e, sorted_negatives(neg), dav, bound, {z}};
  Factorization target;
  bool have = false;
  for (int guard = 0;; ++guard) {
    if (guard > static_cast<int>(b.length()) + 1) throw DataError("chain_to_upsilon did not settle");
    const Factorization& cur = run.steps.back();
    if (!have || !refines_to(cur, target)) {
      if (top == b.positive_part().length()) {
        target = *std::find_if(all.all.begin(), all.all.end(), [&](const Factorization& w) { return w.length() == top; });
      } else {
        target = dominating(cur, all);
      }
      have = true;
    }
    if (run.towards(target, true)) break;
  }
  Chain c = Chain::from_steps(run.steps);
  c.declared_bound = bound;
  c.note = "target " + target.to_string();
  return c;
}

Chain equal_plus_chain(const Sequence& b, const Factorization& z, const Factorization& y, const AtomSet& atoms,
                       const Budget& budget) {
  require_plain(b);
  if (z.product() != b || y.product() != b) throw InvalidInput("factorizations do not multiply to the element");
  if (positive_pattern(z) != positive_pattern(y)) throw InvalidInput("z and y have different positive patterns");
  BlockMonoid m(atoms);
  auto neg = sorted_negatives(negatives_of(atoms));
  BlockMonoid e(symmetric_atoms(neg, budget));
  const Count dav = relative_davenport(neg, budget);
  const Count bound = std::max<Count>(dav, 2);
  SwapRun run{m, e, neg, dav, bound, {z}};
  run.towards(y, false);
  Chain c = Chain::from_steps(run.steps);
  c.declared_bound = bound;
  return c;
}

M2Result m2_chain(const Sequence& b, const Factorization& z, const AtomSet& atoms, const Budget& budget) {
  require_plain(b);
  if (z.product() != b) throw InvalidInput("factorization does not multiply to the element");
  const Count m = min_support_magnitude(b);
  auto supp = b.support();
  if (supp.front() > 0) throw InvalidInput("element has no negative terms");
  if (m < 2) throw InvalidInput("m2_chain needs |min supp(B)| >= 2");
  Sequence pos = b.positive_part();
  auto psupp = pos.support();
  if (psupp.empty() || psupp.front() < checked_mul(m, m * m - 1))
    throw InvalidInput("m2_chain needs min supp(B+) >= " + std::to_string(m * (m * m - 1)));
  BlockMonoid monoid(atoms);
  Meter meter(budget);
  const Count bound = m * m;
  std::vector<Factorization> steps{z};
  Int pgcd = 0;
  for (Int p : psupp) pgcd = gcd(pgcd, p);

  while (steps.back().length() < pos.length()) {
    meter.node_or_throw("m2_chain");
    const Factorization& cur = steps.back();
    auto parts = cur.expanded();
    std::vector<Int> heavy;
    for (Int a : supp) {
      if (a > 0) break;
      for (const auto& u : parts)
        if (u.count(a) >= 2 * m - 1) {
          heavy.push_back(a);
          break;
        }
    }
    Int agcd = 0;
    for (Int a : heavy) agcd = gcd(agcd, -a);
    if (heavy.empty() || pgcd % agcd != 0) return M2Result{std::nullopt, CaseAWitness{heavy, cur}};

    std::size_t u0 = 0;
    while (parts[u0].positive_part().length() < 2) ++u0;
    std::vector<Int> small;
    Sequence pool = parts[u0].negative_part();
    for (Int a : heavy) {
      if (parts[u0].count(a) <= m - 2) small.push_back(a);
      else pool = pool.quotient(Sequence{{a, m - 1}});
    }
    std::map<std::size_t, Sequence> edited{{u0, parts[u0]}};
    for (Int a : small) {
      std::size_t ui = 0;
      while (ui < parts.size() && (ui == u0 || parts[ui].count(a) < 2 * m - 1)) ++ui;
      if (ui == parts.size()) throw DataError("no atom carries enough copies of " + std::to_string(a));
      edited.emplace(ui, parts[ui]);
      const Count k = -a;
      Count got = 0;
      while (got < m - 1) {
        Int pick = 0;
        auto ps = pool.support();
        for (auto it = ps.rbegin(); it != ps.rend(); ++it)
          if (std::find(small.begin(), small.end(), *it) == small.end() && pool.count(*it) >= k) {
            pick = *it;
            break;
          }
        if (pick == 0) throw DataError("swap pool ran dry while lengthening " + cur.to_string());
        pool = pool.quotient(Sequence{{pick, k}});
        Count c = -pick;
        edited[u0] = edited[u0].quotient(Sequence{{pick, k}});
        edited[u0].add(a, c);
        edited[ui] = edited[ui].quotient(Sequence{{a, c}});
        edited[ui].add(pick, k);
        got += c;
      }
    }
    Factorization next;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      auto it = edited.find(j);
      if (it == edited.end()) next.add(parts[j]);
      else next = next * monoid.any_factorization(it->second);
    }
    if (next.length() <= cur.length()) throw DataError("swap did not lengthen " + cur.to_string());
    if (distance(cur, next) > bound) throw DataError("lengthening step exceeds m^2");
    steps.push_back(next);
  }
  Chain c = Chain::from_steps(steps);
  c.declared_bound = bound;
  return M2Result{c, std::nullopt};
}

BreakapartReport breakapart_analysis(const Sequence& u, Int l, Count m) {
  if (u.ambient().is_cyclic()) throw UnsupportedAmbient("breakapart_analysis needs the integers");
  if (!is_atom(u)) throw InvalidInput(u.to_string() + " is not an atom");
  if (u.count(0) > 0) throw InvalidInput("atom must not be (0)");
  if (m == 0) m = min_support_magnitude(u);
  if (m < 2) throw InvalidInput("breakapart hypotheses cannot hold for m < 2");
  Sequence pos = u.positive_part(), neg = u.negative_part();
  if (pos.length() < 2) throw InvalidInput("need |U+| >= 2");
  const Int total = sigma(pos);
  const Int sq = (m - 1) * (m - 1);
  auto sums = subsequence_sums(pos);
  if (!sums.count(l) || l == total) throw InvalidInput(std::to_string(l) + " is not a proper subsum of U+");
  if (l < sq) throw InvalidInput("need L >= (m-1)^2");
  if (total < l + sq) throw InvalidInput("need sigma(U+) >= L + (m-1)^2");

  BreakapartReport r;
  r.m = m;
  for (const auto& t : neg.terms())
    if (t.count >= m - 1) r.heavy.add(t.value, t.count);
  if (r.heavy.empty()) return r;
  auto nsums = subsequence_sums(neg);
  r.residues_avoided = true;
  for (Int a : r.heavy.support())
    for (Int s : nsums)
      if ((s + l) % a == 0) r.residues_avoided = false;

  Int g = 0;
  for (Int a : r.heavy.support()) g = gcd(g, -a);
  for (Int n = 2; n <= g; ++n) {
    if (g % n != 0) continue;
    Sequence ext;
    for (const auto& t : neg.terms())
      if (t.value % n == 0) ext.add(t.value, t.count);
    Int n2 = 0;
    for (Int a : ext.support()) n2 = gcd(n2, -a);
    if (l % n2 != 0 && neg.length() - ext.length() <= n2 - 2) {
      r.extended = ext;
      r.modulus = n2;
      break;
    }
  }
  return r;
}

}  // namespace zsm

#include "zsm/atoms.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace zsm {

Count AtomSet::davenport() const {
  Count d = 0;
  for (const auto& u : atoms) d = std::max(d, u.length());
  return d;
}

bool AtomSet::contains(const Sequence& u) const { return std::binary_search(atoms.begin(), atoms.end(), u); }

bool is_atom(const Sequence& u) {
  if (u.empty() || u.sum() != 0) return false;
  if (u.count(0) > 0) return u.length() == 1;

  const Ambient& amb = u.ambient();
  Int lo = 0, hi = 0;
  if (amb.is_cyclic()) {
    hi = amb.modulus() - 1;
  } else {
    for (const auto& t : u.terms()) {
      Int part = checked_mul(t.value, t.count);
      if (part < 0) lo = checked_add(lo, part);
      else hi = checked_add(hi, part);
    }
  }
  const auto width = static_cast<std::size_t>(hi - lo + 1);
  const Count inf = std::numeric_limits<Count>::max();
  const Count len = u.length();
  const auto zero = static_cast<std::size_t>(-lo);
  // best[i]: fewest terms of a nonempty subsequence with sum lo + i
  std::vector<Count> best(width, inf), next;
  for (const auto& t : u.terms()) {
    for (Count c = 0; c < t.count; ++c) {
      next = best;
      for (std::size_t i = 0; i < width; ++i) {
        if (best[i] == inf) continue;
        Int v = lo + static_cast<Int>(i) + t.value;
        if (amb.is_cyclic()) v %= amb.modulus();
        if (v < lo || v > hi) continue;
        auto j = static_cast<std::size_t>(v - lo);
        next[j] = std::min(next[j], best[i] + 1);
      }
      auto j = static_cast<std::size_t>(t.value - lo);
      next[j] = std::min<Count>(next[j], 1);
      best.swap(next);
      if (best[zero] < len) return false;
    }
  }
  return best[zero] == len;
}

namespace {

std::vector<Int> normalized_ground(const std::vector<Int>& ground) {
  std::vector<Int> g(ground);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

class AtomSearch {
 public:
  AtomSearch(const std::vector<Int>& pos, const std::vector<Int>& neg, Count max_pos, Count max_neg, Meter& meter,
             std::vector<Sequence>& out)
      : pos_(pos), neg_(neg), max_pos_(max_pos), max_neg_(max_neg), meter_(meter), out_(out) {}

  void run() {
    for (Count size = 1; size <= max_pos_; ++size) {
      Sequence f;
      positives(f, 0, size, 0);
    }
  }

 private:
  void positives(Sequence& f, std::size_t from, Count left, Int sum) {
    if (left == 0) {
      Sequence r;
      negatives(f, r, 0, sum, 0);
      return;
    }
    for (std::size_t i = from; i < pos_.size(); ++i) {
      Sequence g = f;
      g.add(pos_[i]);
      positives(g, i, left - 1, checked_add(sum, pos_[i]));
    }
  }

  // distribute `need` over negatives neg_[j..] with at most max_neg_ terms in total
  void negatives(const Sequence& f, Sequence& r, std::size_t j, Int need, Count used) {
    if (need == 0) {
      check(f * r);
      return;
    }
    if (j >= neg_.size()) return;
    const Int largest = -neg_.front();
    if (need > checked_mul(max_neg_ - used, largest)) return;
    const Int step = -neg_[j];
    Count most = std::min<Count>(need / step, max_neg_ - used);
    for (Count c = most; c >= 0; --c) {
      Sequence s = r;
      s.add(neg_[j], c);
      negatives(f, s, j + 1, need - c * step, used + c);
    }
  }

  void check(const Sequence& u) {
    if (!meter_.node())
      throw BudgetExceeded("enumerate_atoms: node budget exhausted after " + std::to_string(out_.size()) + " atoms",
                           meter_.nodes(), out_.size());
    if (is_atom(u)) {
      if (!meter_.result())
        throw BudgetExceeded("enumerate_atoms: result budget exhausted", meter_.nodes(), out_.size());
      out_.push_back(u);
    }
  }

  const std::vector<Int>& pos_;
  const std::vector<Int>& neg_;
  Count max_pos_;
  Count max_neg_;
  Meter& meter_;
  std::vector<Sequence>& out_;
};

}  // namespace

AtomSet enumerate_atoms(const std::vector<Int>& ground, const Budget& budget) {
  AtomSet out;
  out.ground = normalized_ground(ground);
  std::vector<Int> pos, neg;
  bool zero = false;
  for (Int g : out.ground) {
    if (g > 0) pos.push_back(g);
    else if (g < 0) neg.push_back(g);
    else zero = true;
  }
  if (pos.empty() != neg.empty()) throw InvalidInput("ground set is not condensed");
  Meter meter(budget);
  if (zero) out.atoms.push_back(Sequence{{0, 1}});
  if (!pos.empty()) {
    AtomSearch search(pos, neg, -neg.front(), pos.back(), meter, out.atoms);
    search.run();
  }
  std::sort(out.atoms.begin(), out.atoms.end());
  return out;
}

AtomSet enumerate_atoms_cyclic(Int modulus, const std::vector<Int>& residues, const Budget& budget) {
  Ambient amb = Ambient::cyclic(modulus);
  AtomSet out;
  out.ambient = amb;
  std::set<Int> uniq;
  for (Int r : residues) uniq.insert(amb.normalize(r));
  out.ground.assign(uniq.begin(), uniq.end());
  Meter meter(budget);
  std::vector<Int> nonzero;
  for (Int g : out.ground) {
    if (g == 0) out.atoms.push_back(Sequence({{0, 1}}, amb));
    else nonzero.push_back(g);
  }
  // every minimal zero-sum sequence over Z/nZ has at most n terms
  Sequence cur(amb);
  auto rec = [&](auto&& self, std::size_t from, Int sum) -> void {
    if (!cur.empty() && sum == 0) {
      if (!meter.node()) throw BudgetExceeded("enumerate_atoms: node budget exhausted", meter.nodes(), out.atoms.size());
      if (is_atom(cur)) out.atoms.push_back(cur);
      return;
    }
    if (cur.length() >= modulus) return;
    for (std::size_t i = from; i < nonzero.size(); ++i) {
      Sequence saved = cur;
      cur.add(nonzero[i]);
      self(self, i, (sum + nonzero[i]) % modulus);
      cur = saved;
    }
  };
  rec(rec, 0, 0);
  std::sort(out.atoms.begin(), out.atoms.end());
  return out;
}

Count davenport(const std::vector<Int>& ground, const Budget& budget) {
  return enumerate_atoms(ground, budget).davenport();
}

Count davenport_cyclic(Int modulus, const std::vector<Int>& residues, const Budget& budget) {
  return enumerate_atoms_cyclic(modulus, residues, budget).davenport();
}

Sequence two_support_atom(Int a, Int b) {
  if (!(a < 0 && b > 0)) throw InvalidInput("two_support_atom needs a < 0 < b");
  Int l = lcm(-a, b);
  Sequence s;
  s.add(a, l / -a);
  s.add(b, l / b);
  return s;
}

namespace {

// Largest value not representable as a nonnegative combination of gens (all >= 1, gcd 1).
Int frobenius(const std::vector<Int>& gens) {
  Int smallest = *std::min_element(gens.begin(), gens.end());
  if (smallest == 1) return -1;
  std::vector<char> reach{1};
  Int run = 0, last_gap = -1;
  for (Int v = 1; run < smallest; ++v) {
    bool ok = false;
    for (Int g : gens)
      if (g <= v && reach[static_cast<std::size_t>(v - g)]) ok = true;
    reach.push_back(ok);
    if (ok) {
      ++run;
    } else {
      run = 0;
      last_gap = v;
    }
  }
  return last_gap;
}

// A sequence over the negatives with sum -target, or empty optional.
Sequence negative_representation(const std::vector<Int>& neg, Int target) {
  std::vector<Int> parent(static_cast<std::size_t>(target + 1), 0);
  std::vector<char> reach(static_cast<std::size_t>(target + 1), 0);
  reach[0] = 1;
  for (Int v = 1; v <= target; ++v)
    for (Int a : neg) {  // most negative first
      Int s = -a;
      if (s <= v && reach[static_cast<std::size_t>(v - s)]) {
        reach[static_cast<std::size_t>(v)] = 1;
        parent[static_cast<std::size_t>(v)] = a;
        break;
      }
    }
  if (!reach[static_cast<std::size_t>(target)]) throw DataError("no negative representation of " + std::to_string(target));
  Sequence r;
  for (Int v = target; v > 0;) {
    Int a = parent[static_cast<std::size_t>(v)];
    r.add(a);
    v += a;
  }
  return r;
}

}  // namespace

Sequence extend_to_atom(const Sequence& s, const GroundSpec& spec) {
  if (!spec.condensed()) throw InvalidInput("extend_to_atom: spec is not condensed");
  if (s.ambient().is_cyclic()) throw UnsupportedAmbient("extend_to_atom needs the integers");
  std::vector<Int> neg = spec.negatives();
  for (const auto& t : s.terms())
    if (t.value >= 0 || !spec.contains(t.value))
      throw InvalidInput("extend_to_atom: support must lie in the negative part of the spec");
  if (s.empty()) {
    Int b = spec_members(spec, 1, spec.max_member_bound() + 1).front();
    return two_support_atom(neg.back(), b);
  }
  if (spec.is_finite()) throw Inapplicable("extend_to_atom: the positive part must be infinite");

  Int d = 0;
  for (Int a : neg) d = gcd(d, -a);
  std::vector<Int> gens;
  for (Int a : neg) gens.push_back(-a / d);
  // smallest g >= 1 with every multiple of d beyond g*d representable
  Int g = std::max<Int>(1, frobenius(gens));
  Int need = checked_add(-s.sum(), checked_mul(g, d));
  Int b = 0;
  for (Int hi = need + 1;; hi = checked_mul(hi, 2)) {
    auto m = spec_members(spec, need + 1, hi);
    if (!m.empty()) {
      b = m.front();
      break;
    }
  }
  Int beta = 1;
  while ((beta * b) % d != 0) ++beta;
  Int rest = checked_add(checked_mul(beta, b), s.sum());
  Sequence u = s * negative_representation(neg, rest);
  u.add(b, beta);
  if (!is_atom(u)) throw DataError("extend_to_atom: constructed sequence " + u.to_string() + " is not an atom");
  return u;
}

}  // namespace zsm

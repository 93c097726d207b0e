#include "zsm/invariants.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace zsm {

std::string to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::nondecreasing: return "nondecreasing";
    case Monotonicity::nonincreasing: return "nonincreasing";
    case Monotonicity::none: return "none";
  }
  return "none";
}

Chain Chain::from_steps(std::vector<Factorization> steps) {
  if (steps.empty()) throw InvalidInput("a chain needs at least one factorization");
  Chain c;
  c.steps = std::move(steps);
  bool up = true, down = true;
  for (std::size_t i = 1; i < c.steps.size(); ++i) {
    c.max_step = std::max(c.max_step, distance(c.steps[i - 1], c.steps[i]));
    if (c.steps[i].length() < c.steps[i - 1].length()) up = false;
    if (c.steps[i].length() > c.steps[i - 1].length()) down = false;
  }
  c.monotone = up ? Monotonicity::nondecreasing : down ? Monotonicity::nonincreasing : Monotonicity::none;
  return c;
}

void validate_chain(const Chain& c) {
  if (c.steps.empty()) throw DataError("empty chain");
  Count worst = 0;
  for (std::size_t i = 1; i < c.steps.size(); ++i) {
    if (c.steps[i].product() != c.steps[0].product()) throw DataError("chain members have different products");
    worst = std::max(worst, distance(c.steps[i - 1], c.steps[i]));
    Count a = c.steps[i - 1].length(), b = c.steps[i].length();
    if (c.monotone == Monotonicity::nondecreasing && b < a) throw DataError("chain flagged nondecreasing is not");
    if (c.monotone == Monotonicity::nonincreasing && b > a) throw DataError("chain flagged nonincreasing is not");
  }
  if (worst != c.max_step) throw DataError("chain max_step disagrees with recomputed distances");
  if (c.declared_bound >= 0 && c.max_step > c.declared_bound) throw DataError("chain exceeds its declared bound");
  for (const auto& z : c.steps)
    for (const auto& [u, k] : z.atoms())
      if (!is_atom(u)) throw DataError("chain member uses a non-atom " + u.to_string());
}

FactorizationSet complete_factorizations(const Sequence& b, const BlockMonoid& m, const Budget& budget) {
  FactorizationSet z = m.factorizations(b, budget);
  if (!z.complete) throw BudgetExceeded("factorization enumeration of " + b.to_string() + " hit the budget", 0, z.size());
  return z;
}

namespace {

void require_complete(const FactorizationSet& z, const char* what) {
  if (!z.complete) throw InvalidInput(std::string(what) + " needs a complete factorization set");
}

std::vector<Count> distance_matrix(const std::vector<Factorization>& zs) {
  const std::size_t n = zs.size();
  std::vector<Count> d(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = distance(zs[i], zs[j]);
  return d;
}

std::size_t index_of(const FactorizationSet& z, const Factorization& f) {
  auto it = std::lower_bound(z.all.begin(), z.all.end(), f);
  if (it == z.all.end() || *it != f) throw InvalidInput("factorization " + f.to_string() + " is not in Z(B)");
  return static_cast<std::size_t>(it - z.all.begin());
}

// reach[j] == true when j is reachable from src along monotone edges of weight <= bound
std::vector<char> monotone_reach(const std::vector<Factorization>& zs, const std::vector<Count>& d, std::size_t src,
                                 Count bound, std::vector<std::size_t>* parent = nullptr) {
  const std::size_t n = zs.size();
  std::vector<char> seen(n, 0);
  if (parent) parent->assign(n, n);
  std::deque<std::size_t> q{src};
  seen[src] = 1;
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop_front();
    for (std::size_t v = 0; v < n; ++v) {
      if (seen[v] || d[u * n + v] > bound || zs[v].length() < zs[u].length()) continue;
      seen[v] = 1;
      if (parent) (*parent)[v] = u;
      q.push_back(v);
    }
  }
  return seen;
}

std::vector<Count> realized_distances(const std::vector<Count>& d) {
  std::set<Count> s(d.begin(), d.end());
  return {s.begin(), s.end()};
}

}  // namespace

Count catenary(const FactorizationSet& z) {
  require_complete(z, "catenary");
  const std::size_t n = z.all.size();
  if (n <= 1) return 0;
  auto d = distance_matrix(z.all);
  std::vector<std::tuple<Count, std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(d[i * n + j], i, j);
  std::sort(edges.begin(), edges.end());
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t parts = n;
  for (const auto& [w, i, j] : edges) {
    auto a = find(i), b = find(j);
    if (a == b) continue;
    parent[a] = b;
    if (--parts == 1) return w;
  }
  return 0;
}

Count catenary(const Sequence& b, const AtomSet& atoms, const Budget& budget) {
  return catenary(complete_factorizations(b, BlockMonoid(atoms), budget));
}

Count monotone_catenary(const FactorizationSet& z) {
  require_complete(z, "monotone catenary");
  const std::size_t n = z.all.size();
  if (n <= 1) return 0;
  auto d = distance_matrix(z.all);
  auto values = realized_distances(d);
  auto ok = [&](Count bound) {
    for (std::size_t i = 0; i < n; ++i) {
      auto seen = monotone_reach(z.all, d, i, bound);
      for (std::size_t j = 0; j < n; ++j)
        if (z.all[j].length() >= z.all[i].length() && !seen[j]) return false;
    }
    return true;
  };
  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (ok(values[mid])) hi = mid;
    else lo = mid + 1;
  }
  return values[lo];
}

Count monotone_catenary(const Sequence& b, const AtomSet& atoms, const Budget& budget) {
  return monotone_catenary(complete_factorizations(b, BlockMonoid(atoms), budget));
}

Chain optimal_monotone_chain(const FactorizationSet& z, const Factorization& from, const Factorization& to) {
  require_complete(z, "optimal monotone chain");
  if (from.length() > to.length()) {
    Chain c = optimal_monotone_chain(z, to, from);
    std::reverse(c.steps.begin(), c.steps.end());
    Chain r = Chain::from_steps(c.steps);
    if (r.monotone == Monotonicity::nondecreasing && from.length() != to.length()) r.monotone = Monotonicity::nonincreasing;
    return r;
  }
  const std::size_t s = index_of(z, from), t = index_of(z, to);
  if (s == t) return Chain::from_steps({from});
  auto d = distance_matrix(z.all);
  auto values = realized_distances(d);
  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (monotone_reach(z.all, d, s, values[mid])[t]) hi = mid;
    else lo = mid + 1;
  }
  std::vector<std::size_t> parent;
  monotone_reach(z.all, d, s, values[lo], &parent);
  std::vector<Factorization> path;
  for (std::size_t v = t; v != s; v = parent[v]) path.push_back(z.all[v]);
  path.push_back(z.all[s]);
  std::reverse(path.begin(), path.end());
  return Chain::from_steps(std::move(path));
}

Count successive_distance(const Factorization& z, const FactorizationSet& all) {
  require_complete(all, "successive distance");
  LengthSet l = all.lengths();
  auto it = std::lower_bound(l.lengths.begin(), l.lengths.end(), z.length());
  if (it == l.lengths.end() || *it != z.length()) throw InvalidInput("factorization length not in L(B)");
  std::vector<Count> adjacent;
  if (it != l.lengths.begin()) adjacent.push_back(*(it - 1));
  if (it + 1 != l.lengths.end()) adjacent.push_back(*(it + 1));
  Count best = 0;
  for (Count k : adjacent) {
    Count nearest = -1;
    for (const auto& w : all.all)
      if (w.length() == k) {
        Count dd = distance(z, w);
        if (nearest < 0 || dd < nearest) nearest = dd;
      }
    best = std::max(best, nearest);
  }
  return best;
}

Count successive_distance(const Factorization& z, const AtomSet& atoms, const Budget& budget) {
  return successive_distance(z, complete_factorizations(z.product(), BlockMonoid(atoms), budget));
}

Count delta_of(const FactorizationSet& all) {
  Count best = 0;
  for (const auto& z : all.all) best = std::max(best, successive_distance(z, all));
  return best;
}

Count delta_of(const Sequence& b, const AtomSet& atoms, const Budget& budget) {
  return delta_of(complete_factorizations(b, BlockMonoid(atoms), budget));
}

Count adjacent_length_distance(const FactorizationSet& all, Count k, Count l) {
  require_complete(all, "adjacent length distance");
  LengthSet ls = all.lengths();
  if (!ls.contains(k) || !ls.contains(l)) throw InvalidInput("requested lengths are not in L(B)");
  Count best = -1;
  for (const auto& a : all.all) {
    if (a.length() != k) continue;
    for (const auto& b : all.all) {
      if (b.length() != l) continue;
      Count dd = distance(a, b);
      if (best < 0 || dd < best) best = dd;
    }
  }
  return best;
}

Count adjacent_length_distance(const Sequence& b, const AtomSet& atoms, Count k, Count l, const Budget& budget) {
  return adjacent_length_distance(complete_factorizations(b, BlockMonoid(atoms), budget), k, l);
}

Count tame_degree(const FactorizationSet& all, const Sequence& u) {
  require_complete(all, "tame degree");
  if (!is_atom(u)) throw InvalidInput(u.to_string() + " is not an atom");
  std::vector<const Factorization*> through;
  for (const auto& z : all.all)
    if (z.contains(u)) through.push_back(&z);
  if (through.empty()) return 0;
  Count worst = 0;
  for (const auto& z : all.all) {
    Count nearest = -1;
    for (const auto* w : through) {
      Count dd = distance(z, *w);
      if (nearest < 0 || dd < nearest) nearest = dd;
    }
    worst = std::max(worst, nearest);
  }
  return worst;
}

Count tame_degree(const Sequence& b, const Sequence& u, const AtomSet& atoms, const Budget& budget) {
  return tame_degree(complete_factorizations(b, BlockMonoid(atoms), budget), u);
}

namespace {

// Indices of a smallest sub-collection of parts whose product is divisible by u.
std::vector<std::size_t> minimal_cover(const Sequence& u, const std::vector<Sequence>& parts) {
  Sequence all(u.ambient());
  for (const auto& p : parts) all *= p;
  if (!u.divides(all)) throw InvalidInput(u.to_string() + " does not divide the product of the parts");
  if (u.empty()) return {};
  std::vector<std::size_t> useful;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    bool shares = false;
    for (const auto& t : parts[i].terms())
      if (u.count(t.value) > 0) shares = true;
    if (shares) useful.push_back(i);
  }
  std::vector<std::size_t> pick;
  std::vector<std::size_t> found;
  auto rec = [&](auto&& self, std::size_t from, std::size_t left, const Sequence& prod) -> bool {
    if (left == 0) {
      if (u.divides(prod)) {
        found = pick;
        return true;
      }
      return false;
    }
    for (std::size_t i = from; i + left <= useful.size(); ++i) {
      // skip a part identical to the previous choice at this depth
      if (i > from && parts[useful[i]] == parts[useful[i - 1]]) continue;
      pick.push_back(useful[i]);
      if (self(self, i + 1, left - 1, prod * parts[useful[i]])) return true;
      pick.pop_back();
    }
    return false;
  };
  for (std::size_t size = 1; size <= useful.size(); ++size)
    if (rec(rec, 0, size, Sequence(u.ambient()))) return found;
  throw DataError("minimal cover search failed");
}

struct Refactor {
  Sequence u;
  Factorization zhat;
};

// One refactoring step: an atom u of zbar and a factorization of the same element
// that contains u and stays close to z.
Refactor refactor_towards(const BlockMonoid& m, const Factorization& z, const Factorization& zbar) {
  const Sequence& a = z.product();
  const Ambient amb = a.ambient();
  if (a.count(0) > 0) return {Sequence({{0, 1}}, amb), z};
  Count kneg = 0;
  for (Int g : m.catalogue().ground)
    if (g < 0) ++kneg;
  const Count mm = zbar.length();
  std::optional<Sequence> chosen;
  for (const auto& [u, c] : zbar.atoms()) {
    bool ok = true;
    for (const auto& t : u.terms()) {
      if (t.value >= 0) continue;
      Count va = a.count(t.value);
      if (checked_mul(mm, t.count) > checked_mul(kneg, va)) ok = false;
    }
    if (ok) {
      chosen = u;
      break;
    }
  }
  if (!chosen) throw DataError("no atom of the target factorization satisfies the averaging condition");
  const Sequence& u = *chosen;
  std::vector<Sequence> parts = z.expanded();
  auto cover = minimal_cover(u, parts);
  std::vector<char> used(parts.size(), 0);
  Sequence prod(amb);
  for (std::size_t i : cover) {
    used[i] = 1;
    prod *= parts[i];
  }
  Factorization zhat(amb);
  zhat.add(u);
  Sequence rest = prod.quotient(u);
  if (!rest.empty()) zhat = zhat * m.any_factorization(rest);
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (!used[i]) zhat.add(parts[i]);
  return {u, zhat};
}

Factorization times(const Factorization& z, const Sequence& u) {
  Factorization r = z;
  r.add(u);
  return r;
}

std::vector<Factorization> catenary_walk(const BlockMonoid& m, const Factorization& z, const Factorization& zbar,
                                         Meter& meter) {
  meter.node_or_throw("build_catenary_chain");
  if (z == zbar) return {z};
  if (z.length() > zbar.length()) {
    auto r = catenary_walk(m, zbar, z, meter);
    std::reverse(r.begin(), r.end());
    return r;
  }
  Refactor step = refactor_towards(m, z, zbar);
  auto sub = catenary_walk(m, step.zhat.without(step.u), zbar.without(step.u), meter);
  std::vector<Factorization> out{z};
  for (const auto& s : sub) {
    Factorization w = times(s, step.u);
    if (w != out.back()) out.push_back(std::move(w));
  }
  return out;
}

struct MonotoneStats {
  Count delta_hat = 0;
  Count gap_hat = 0;
};

std::vector<Factorization> monotone_walk(const BlockMonoid& m, const Factorization& z, const Factorization& zbar,
                                         const Budget& budget, Meter& meter, MonotoneStats& stats) {
  meter.node_or_throw("build_monotone_chain_delta");
  if (z == zbar) return {z};
  Refactor step = refactor_towards(m, z, zbar);
  FactorizationSet all = complete_factorizations(z.product(), m, budget);
  const Factorization* best = nullptr;
  Count best_d = 0;
  for (const auto& w : all.all) {
    if (!w.contains(step.u) || w.length() < z.length() || w.length() > zbar.length()) continue;
    Count dd = distance(z, w);
    if (!best || dd < best_d) {
      best = &w;
      best_d = dd;
    }
  }
  if (!best) throw DataError("no monotone re-targeting candidate");
  Sequence rest = z.product().quotient(step.u);
  FactorizationSet sub_all = complete_factorizations(rest, m, budget);
  stats.delta_hat = std::max(stats.delta_hat, delta_of(sub_all));
  auto gaps = delta_set(sub_all.lengths());
  if (!gaps.empty()) stats.gap_hat = std::max(stats.gap_hat, gaps.back());
  auto sub = monotone_walk(m, best->without(step.u), zbar.without(step.u), budget, meter, stats);
  std::vector<Factorization> out{z};
  for (const auto& s : sub) {
    Factorization w = times(s, step.u);
    if (w != out.back()) out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

Count omega_instance(const Sequence& u, const std::vector<Sequence>& parts) {
  return static_cast<Count>(minimal_cover(u, parts).size());
}

Count refactoring_bound(const std::vector<Int>& ground) {
  if (ground.empty()) return 0;
  Int lowest = *std::min_element(ground.begin(), ground.end());
  if (lowest >= 0) return 0;
  Count k = std::count_if(ground.begin(), ground.end(), [](Int g) { return g < 0; });
  return checked_mul(checked_add(-lowest, checked_mul(k, k)), -lowest);
}

Chain build_catenary_chain(const Sequence& b, const Factorization& z, const Factorization& zbar, const AtomSet& atoms,
                           const Budget& budget) {
  if (z.product() != b || zbar.product() != b) throw InvalidInput("both factorizations must factor the element");
  if (b.ambient().is_cyclic()) throw UnsupportedAmbient("chain builders need the integers");
  BlockMonoid m(atoms);
  Meter meter(budget);
  Chain c = Chain::from_steps(catenary_walk(m, z, zbar, meter));
  c.declared_bound = refactoring_bound(atoms.ground);
  return c;
}

Chain build_monotone_chain_delta(const Sequence& b, const Factorization& z, const Factorization& zbar,
                                 const AtomSet& atoms, const Budget& budget) {
  if (z.product() != b || zbar.product() != b) throw InvalidInput("both factorizations must factor the element");
  if (z.length() > zbar.length()) throw InvalidInput("monotone chain builder needs |z| <= |zbar|");
  if (b.ambient().is_cyclic()) throw UnsupportedAmbient("chain builders need the integers");
  BlockMonoid m(atoms);
  Meter meter(budget);
  MonotoneStats stats;
  Chain c = Chain::from_steps(monotone_walk(m, z, zbar, budget, meter, stats));
  const Count bound = refactoring_bound(atoms.ground);
  c.declared_bound = checked_add(bound, checked_mul(checked_add(bound, stats.gap_hat), stats.delta_hat));
  c.note = "delta_hat=" + std::to_string(stats.delta_hat) + " max_gap=" + std::to_string(stats.gap_hat);
  return c;
}

GapWindow lem_gap_t(const Factorization& z, Int a, Int b, Int a2, Int b1, Count v) {
  if (!(a < 0 && b > 0 && a2 < 0 && b1 > 0) || a2 == a || b1 == b || v < 1)
    throw InvalidInput("lem_gap_t: need a, a2 < 0 < b, b1 with a != a2, b != b1, v >= 1");
  if (b1 < checked_mul(b, -a)) throw InvalidInput("lem_gap_t: need b1 >= b|a|");
  if (-a2 < checked_mul(checked_add(checked_mul(v, b1), b), -a)) throw InvalidInput("lem_gap_t: need |a2| >= (v b1 + b)|a|");
  Sequence base = (two_support_atom(a, b1) * two_support_atom(a2, b)).power(v);
  if (z.product() != base) throw InvalidInput("lem_gap_t: factorization does not factor (V_{a,b1} V_{a2,b})^v");

  GapWindow w;
  w.covering = Factorization(z.product().ambient());
  for (const auto& [u, c] : z.atoms())
    if (u.count(a2) > 0) w.covering.add(u, c);
  w.t = w.covering.product().count(b1);
  const Count gap = checked_mul(checked_mul(v, checked_add(b, -a)), gcd(-a, b));
  Rational center(BigInt(checked_mul(b1, w.t)), BigInt(lcm(-a, b)));
  w.lo = static_cast<Count>((center - Rational(gap)).ceil());
  w.hi = static_cast<Count>((center + Rational(gap)).floor());
  if (z.length() < w.lo || z.length() > w.hi)
    throw DataError("lem_gap_t: |z| = " + std::to_string(z.length()) + " outside the predicted window");
  if (w.t == 0) {
    Factorization expect(z.product().ambient());
    expect.add(two_support_atom(a, b1), v);
    expect.add(two_support_atom(a2, b), v);
    if (!(z == expect)) throw DataError("lem_gap_t: t(z) = 0 but z is not the two-support factorization");
  }
  return w;
}

TwoSidedSpec TwoSidedSpec::nonzero_integers() {
  return {GroundSpec({}, {Progression{1, 1}}), GroundSpec({}, {Progression{1, 1}})};
}

namespace {

Int first_member_at_least(const GroundSpec& spec, Int lo) {
  if (spec.is_finite()) {
    auto it = spec.finite_part().lower_bound(lo);
    if (it == spec.finite_part().end()) throw Inapplicable("spec has no member >= " + std::to_string(lo));
    return *it;
  }
  for (Int width = 16;; width = checked_mul(width, 2)) {
    auto m = spec_members(spec, lo, checked_add(lo, width));
    if (!m.empty()) return m.front();
  }
}

}  // namespace

TameGrowthWitness tame_growth_witness(const TwoSidedSpec& spec, Count n, const Budget& budget) {
  if (n < 2) throw InvalidInput("tame_growth_witness needs N >= 2");
  if (spec.negative_magnitudes.is_finite())
    throw Inapplicable("the negative part is finite, so the tame degree is bounded and no witness exists");
  TameGrowthWitness w;
  w.a = -first_member_at_least(spec.negative_magnitudes, 1);
  w.b = first_member_at_least(spec.positive, 1);
  const Int abs_a = -w.a;
  w.gap_constant = checked_mul(checked_mul(abs_a, checked_add(w.b, abs_a)), gcd(abs_a, w.b));
  const Int l = lcm(abs_a, w.b);
  Int want_b1 = std::max(checked_mul(checked_add(n, w.gap_constant), l), checked_mul(w.b, abs_a));
  w.b1 = first_member_at_least(spec.positive, want_b1);
  if (w.b1 == w.b) w.b1 = first_member_at_least(spec.positive, w.b + 1);
  Int want_a2 = checked_mul(checked_add(w.b1, w.b), abs_a);
  w.a2 = -first_member_at_least(spec.negative_magnitudes, want_a2);
  if (w.a2 == w.a) w.a2 = -first_member_at_least(spec.negative_magnitudes, abs_a + 1);

  w.u = two_support_atom(w.a, w.b);
  Sequence v1 = two_support_atom(w.a, w.b1);
  Sequence v2 = two_support_atom(w.a2, w.b);
  w.element = v1 * v2;
  w.split = Factorization::of({v1, v2});
  w.certificate = "structural";
  try {
    AtomSet atoms = atoms_for_element(w.element, budget);
    BlockMonoid m(atoms);
    w.through_u = times(m.any_factorization(w.element.quotient(w.u)), w.u);
    FactorizationSet all = m.factorizations(w.element, budget);
    if (all.complete) {
      w.lengths = all.lengths();
      w.tame = tame_degree(all, w.u);
      w.enumerated = true;
      w.certificate = "enumerated";
    }
  } catch (const BudgetExceeded&) {
  }
  if (w.enumerated) {
    auto gaps = delta_set(*w.lengths);
    Count max_gap = gaps.empty() ? 0 : gaps.back();
    w.holds = max_gap >= n - 2 && w.lengths->max() >= n && *w.tame >= n;
  } else {
    w.holds = w.through_u && w.through_u->length() >= n;
  }
  return w;
}

}  // namespace zsm

#include "zsm/factorize.hpp"

#include <algorithm>
#include <set>

namespace zsm {

LengthSet::LengthSet(std::vector<Count> values, bool is_complete) : lengths(std::move(values)), complete(is_complete) {
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
}

Count LengthSet::min() const {
  if (lengths.empty()) throw InvalidInput("empty set of lengths");
  return lengths.front();
}

Count LengthSet::max() const {
  if (lengths.empty()) throw InvalidInput("empty set of lengths");
  return lengths.back();
}

bool LengthSet::contains(Count k) const { return std::binary_search(lengths.begin(), lengths.end(), k); }

std::string LengthSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < lengths.size(); ++i) s += (i ? "," : "") + std::to_string(lengths[i]);
  return s + "}";
}

std::vector<Count> delta_set(const LengthSet& l) {
  std::set<Count> d;
  for (std::size_t i = 1; i < l.lengths.size(); ++i) d.insert(l.lengths[i] - l.lengths[i - 1]);
  return {d.begin(), d.end()};
}

Rational elasticity_of(const LengthSet& l) {
  if (l.empty()) throw InvalidInput("elasticity of an empty set of lengths");
  if (l.min() == 0) {
    if (l.max() == 0) return Rational(1);
    throw InvalidInput("elasticity undefined for a set of lengths containing 0 and a positive length");
  }
  return Rational(BigInt(l.max()), BigInt(l.min()));
}

LengthSet FactorizationSet::lengths() const {
  std::vector<Count> v;
  for (const auto& z : all) v.push_back(z.length());
  return LengthSet(std::move(v), complete);
}

BlockMonoid::BlockMonoid(AtomSet atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.ground.begin(), atoms_.ground.end());
  std::sort(atoms_.atoms.begin(), atoms_.atoms.end());
  by_pivot_.resize(atoms_.ground.size());
  for (std::size_t a = 0; a < atoms_.atoms.size(); ++a) {
    const auto& u = atoms_.atoms[a];
    if (u.ambient() != atoms_.ambient) throw InvalidInput("atom over a different ambient group");
    SparseAtom s;
    for (const auto& t : u.terms()) {
      auto it = std::lower_bound(atoms_.ground.begin(), atoms_.ground.end(), t.value);
      if (it == atoms_.ground.end() || *it != t.value)
        throw InvalidInput("atom " + u.to_string() + " leaves the ground set");
      s.entries.emplace_back(static_cast<std::size_t>(it - atoms_.ground.begin()), t.count);
    }
    s.length = u.length();
    by_pivot_[s.entries.front().first].push_back(a);
    sparse_.push_back(std::move(s));
  }
}

std::optional<std::size_t> BlockMonoid::atom_index(const Sequence& u) const {
  auto it = std::lower_bound(atoms_.atoms.begin(), atoms_.atoms.end(), u);
  if (it == atoms_.atoms.end() || *it != u) return std::nullopt;
  return static_cast<std::size_t>(it - atoms_.atoms.begin());
}

bool BlockMonoid::covers(const Sequence& b) const {
  if (b.ambient() != atoms_.ambient) return false;
  for (const auto& t : b.terms())
    if (!std::binary_search(atoms_.ground.begin(), atoms_.ground.end(), t.value)) return false;
  return true;
}

BlockMonoid::Vec BlockMonoid::encode(const Sequence& b) const {
  if (b.ambient() != atoms_.ambient) throw InvalidInput("element over a different ambient group");
  Vec v(atoms_.ground.size(), 0);
  for (const auto& t : b.terms()) {
    auto it = std::lower_bound(atoms_.ground.begin(), atoms_.ground.end(), t.value);
    if (it == atoms_.ground.end() || *it != t.value)
      throw InvalidInput("term " + std::to_string(t.value) + " is outside the ground set");
    v[static_cast<std::size_t>(it - atoms_.ground.begin())] = t.count;
  }
  return v;
}

Sequence BlockMonoid::decode(const Vec& v) const {
  Sequence s(atoms_.ambient);
  for (std::size_t i = 0; i < v.size(); ++i) s.add(atoms_.ground[i], v[i]);
  return s;
}

bool BlockMonoid::divides(const SparseAtom& a, const Vec& v) {
  for (const auto& [i, c] : a.entries)
    if (v[i] < c) return false;
  return true;
}

bool BlockMonoid::enumerate(const Vec& element, Meter& meter, const std::function<bool(const Vec&)>& visit) const {
  Vec rem = element;
  Vec counts(atoms_.atoms.size(), 0);
  bool ok = true;
  auto rec = [&](auto&& self, std::size_t last_pivot, std::size_t last_atom) -> void {
    if (!ok) return;
    if (!meter.node()) {
      ok = false;
      return;
    }
    std::size_t p = 0;
    while (p < rem.size() && rem[p] == 0) ++p;
    if (p == rem.size()) {
      if (!meter.result() || !visit(counts)) ok = false;
      return;
    }
    for (std::size_t a : by_pivot_[p]) {
      if (p == last_pivot && a < last_atom) continue;
      const auto& sa = sparse_[a];
      if (!divides(sa, rem)) continue;
      for (const auto& [i, c] : sa.entries) rem[i] -= c;
      ++counts[a];
      self(self, p, a);
      --counts[a];
      for (const auto& [i, c] : sa.entries) rem[i] += c;
      if (!ok) return;
    }
  };
  rec(rec, rem.size(), 0);
  return ok;
}

Factorization BlockMonoid::factorization_of(const Vec& atom_counts) const {
  Factorization z(atoms_.ambient);
  for (std::size_t a = 0; a < atom_counts.size(); ++a) z.add(atoms_.atoms[a], atom_counts[a]);
  return z;
}

BlockMonoid::Vec BlockMonoid::atom_counts(const Factorization& z) const {
  Vec v(atoms_.atoms.size(), 0);
  for (const auto& [u, c] : z.atoms()) {
    auto idx = atom_index(u);
    if (!idx) throw InvalidInput("factorization uses " + u.to_string() + ", which is not in the atom catalogue");
    v[*idx] = c;
  }
  return v;
}

void BlockMonoid::check_element(const Sequence& b) const {
  if (b.sum() != 0) throw InvalidInput("element " + b.to_string() + " does not have sum zero");
}

FactorizationSet BlockMonoid::factorizations(const Sequence& b, const Budget& budget) const {
  check_element(b);
  FactorizationSet out;
  out.element = b;
  Meter meter(budget);
  out.complete = enumerate(encode(b), meter, [&](const Vec& c) {
    out.all.push_back(factorization_of(c));
    return true;
  });
  std::sort(out.all.begin(), out.all.end());
  return out;
}

Factorization BlockMonoid::any_factorization(const Sequence& b) const {
  check_element(b);
  std::optional<Factorization> found;
  Meter meter(Budget::unlimited());
  enumerate(encode(b), meter, [&](const Vec& c) {
    found = factorization_of(c);
    return false;
  });
  if (!found) throw DataError("no factorization of " + b.to_string() + " over the catalogue");
  return *found;
}

std::size_t LengthOracle::VecHash::operator()(const BlockMonoid::Vec& v) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (Count c : v) {
    h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

const std::vector<Count>& LengthOracle::lengths(const BlockMonoid::Vec& element, Meter& meter) {
  auto it = memo_.find(element);
  if (it != memo_.end()) return it->second;
  meter.node_or_throw("length_set");
  std::size_t p = 0;
  while (p < element.size() && element[p] == 0) ++p;
  std::vector<Count> out;
  if (p == element.size()) {
    out.push_back(0);
  } else {
    BlockMonoid::Vec rem = element;
    std::set<Count> acc;
    for (std::size_t a : monoid_.atoms_with_pivot(p)) {
      const auto& sa = monoid_.sparse_atom(a);
      if (!BlockMonoid::divides(sa, rem)) continue;
      for (const auto& [i, c] : sa.entries) rem[i] -= c;
      for (Count l : lengths(rem, meter)) acc.insert(l + 1);
      for (const auto& [i, c] : sa.entries) rem[i] += c;
    }
    out.assign(acc.begin(), acc.end());
  }
  return memo_.emplace(element, std::move(out)).first->second;
}

LengthSet LengthOracle::length_set(const Sequence& b, const Budget& budget) {
  if (b.sum() != 0) throw InvalidInput("element " + b.to_string() + " does not have sum zero");
  Meter meter(budget);
  try {
    return LengthSet(lengths(monoid_.encode(b), meter));
  } catch (const BudgetExceeded&) {
    Meter partial(budget);
    std::vector<Count> seen;
    monoid_.enumerate(monoid_.encode(b), partial, [&](const BlockMonoid::Vec& c) {
      Count n = 0;
      for (Count x : c) n += x;
      seen.push_back(n);
      return true;
    });
    return LengthSet(std::move(seen), false);
  }
}

AtomSet atoms_for_element(const Sequence& b, const Budget& budget) {
  std::vector<Int> supp = b.support();
  if (b.ambient().is_cyclic()) return enumerate_atoms_cyclic(b.ambient().modulus(), supp, budget);
  if (supp.empty()) return AtomSet{};
  return enumerate_atoms(supp, budget);
}

FactorizationSet factorizations(const Sequence& b, const AtomSet& atoms, const Budget& budget) {
  return BlockMonoid(atoms).factorizations(b, budget);
}

LengthSet length_set(const Sequence& b, const AtomSet& atoms, const Budget& budget) {
  BlockMonoid m(atoms);
  LengthOracle oracle(m);
  return oracle.length_set(b, budget);
}

FactorizationSet z_k(const Sequence& b, const AtomSet& atoms, Count k, const Budget& budget) {
  FactorizationSet all = factorizations(b, atoms, budget);
  FactorizationSet out;
  out.element = b;
  out.complete = all.complete;
  for (auto& z : all.all)
    if (z.length() == k) out.all.push_back(std::move(z));
  return out;
}

std::optional<Count> pattern_contains(const LengthSet& l, const std::vector<Count>& pattern) {
  if (pattern.empty()) throw InvalidInput("pattern must be nonempty");
  Count lo = *std::min_element(pattern.begin(), pattern.end());
  for (Count x : l.lengths) {
    Count y = x - lo;
    bool all = std::all_of(pattern.begin(), pattern.end(), [&](Count a) { return l.contains(y + a); });
    if (all) return y;
  }
  return std::nullopt;
}

void for_each_zero_sum(const std::vector<Int>& ground, Count max_length,
                       const std::function<void(const std::vector<Count>&)>& visit) {
  std::vector<Int> g(ground);
  std::sort(g.begin(), g.end());
  if (std::adjacent_find(g.begin(), g.end()) != g.end()) throw InvalidInput("ground has repeated elements");
  std::vector<Count> counts(g.size(), 0);
  const Int top = g.empty() ? 0 : g.back();
  auto rec = [&](auto&& self, std::size_t i, Int sum, Count used) -> void {
    if (i == g.size()) {
      if (sum == 0 && used > 0) visit(counts);
      return;
    }
    const Count room = max_length - used;
    // the remaining terms are all >= g[i]
    Int need = -sum;
    if (need > 0 && (top <= 0 || need > checked_mul(room, top))) return;
    if (need < 0 && (g[i] >= 0 || need < checked_mul(room, g[i]))) return;
    for (Count c = 0; c <= room; ++c) {
      counts[i] = c;
      self(self, i + 1, checked_add(sum, checked_mul(c, g[i])), used + c);
    }
    counts[i] = 0;
  };
  rec(rec, 0, 0, 0);
}

}  // namespace zsm

#include "zsm/transfer.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "zsm/invariants.hpp"

namespace zsm {

Sequence transfer_to_cyclic(const Sequence& b, Int n) {
  if (n < 1) throw InvalidInput("transfer_to_cyclic needs n >= 1");
  if (b.ambient().is_cyclic()) throw UnsupportedAmbient("transfer_to_cyclic maps from the integers");
  if (b.sum() != 0) throw InvalidInput(b.to_string() + " does not have sum zero");
  Ambient amb = Ambient::cyclic(n);
  Sequence out(amb);
  for (const auto& t : b.terms()) {
    if (t.value < 0 && t.value != -n)
      throw InvalidInput("transfer_to_cyclic needs every negative term to equal " + std::to_string(-n));
    if (t.value != -n) out.add(amb.normalize(t.value), t.count);
  }
  return out;
}

CyclicClassGroup cyclic_class_group(const std::vector<Int>& positives, Int n) {
  if (n < 1) throw InvalidInput("modulus must be positive");
  CyclicClassGroup g;
  g.modulus = n;
  g.generator = n;
  for (Int p : positives) g.generator = gcd(g.generator, ((p % n) + n) % n);
  g.order = n / g.generator;
  g.full = g.generator == 1;
  return g;
}

Sequence psi_collapse(const Sequence& b, Int d) {
  if (d < 2) throw InvalidInput("psi needs d >= 2");
  Sequence out(b.ambient());
  for (const auto& t : b.terms()) {
    if (t.value > 0 && t.value % d == 0) out.add(d, checked_mul(t.value / d, t.count));
    else out.add(t.value, t.count);
  }
  return out;
}

Count psi_shift(const Sequence& b, Int d) {
  Count sum = 0, len = 0;
  for (const auto& t : b.terms())
    if (t.value > 0 && t.value % d == 0) {
      sum = checked_add(sum, checked_mul(t.value / d, t.count));
      len = checked_add(len, t.count);
    }
  return sum - len;
}

Factorization psi_bar(const Factorization& z, Int d) {
  Sequence down = Sequence{{-1, d}, {d, 1}};
  Sequence flat = Sequence{{-d, 1}, {d, 1}};
  Factorization out(z.product().ambient());
  for (const auto& [a, c] : z.atoms()) {
    bool hit = false;
    for (const auto& t : a.terms())
      if (t.value > 0 && t.value % d == 0) hit = true;
    if (!hit) {
      out.add(a, c);
      continue;
    }
    Sequence pos = a.positive_part();
    if (pos.length() != 1) throw DataError("atom " + a.to_string() + " has a multiple of d and another positive");
    for (const auto& t : a.terms())
      if (t.value < 0 && t.value != -1 && t.value != -d)
        throw DataError("atom " + a.to_string() + " leaves the {-d,-1} negative shape");
    const Count k = pos.terms().front().value / d;
    const Count ones = a.count(-1);
    if (ones % d != 0) throw DataError("atom " + a.to_string() + " has a count of -1 not divisible by d");
    const Count l = ones / d;
    if (a.count(-d) != k - l) throw DataError("atom " + a.to_string() + " does not match kd(-1)^{dl}(-d)^{k-l}");
    if (l > 0) out.add(down, checked_mul(l, c));
    if (k - l > 0) out.add(flat, checked_mul(k - l, c));
  }
  return out;
}

namespace {

// d(Z_k, Z_l) for every pair of lengths k < l
std::map<std::pair<Count, Count>, Count> length_distances(const FactorizationSet& z) {
  std::map<Count, std::vector<const Factorization*>> by_len;
  for (const auto& f : z.all) by_len[f.length()].push_back(&f);
  std::map<std::pair<Count, Count>, Count> out;
  for (auto i = by_len.begin(); i != by_len.end(); ++i)
    for (auto j = std::next(i); j != by_len.end(); ++j) {
      Count best = -1;
      for (const auto* a : i->second)
        for (const auto* b : j->second) {
          Count dd = distance(*a, *b);
          if (best < 0 || dd < best) best = dd;
        }
      out[{i->first, j->first}] = best;
    }
  return out;
}

}  // namespace

FidelityReport verify_transfer_fidelity(const Sequence& source, const Sequence& target, const AtomSet& source_atoms,
                                        const AtomSet& target_atoms, Count shift, DistanceCheck mode,
                                        const Budget& budget) {
  FidelityReport r;
  r.source = source;
  r.target = target;
  r.shift = shift;
  FactorizationSet zs = complete_factorizations(source, BlockMonoid(source_atoms), budget);
  FactorizationSet zt = complete_factorizations(target, BlockMonoid(target_atoms), budget);
  r.source_lengths = zs.lengths();
  r.target_lengths = zt.lengths();
  std::vector<Count> moved;
  for (Count l : r.source_lengths.lengths) moved.push_back(l + shift);
  if (LengthSet(moved) != r.target_lengths) {
    r.lengths_ok = false;
    r.mismatches.push_back("L(" + source.to_string() + ") = " + r.source_lengths.to_string() + " but L(" +
                           target.to_string() + ") = " + r.target_lengths.to_string() + " with shift " +
                           std::to_string(shift));
    return r;
  }
  auto ds = length_distances(zs);
  auto dt = length_distances(zt);
  const auto& ls = r.source_lengths.lengths;
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = i + 1; j < ls.size(); ++j) {
      if (mode == DistanceCheck::at_most && j != i + 1) continue;
      Count a = ds.at({ls[i], ls[j]});
      Count b = dt.at({ls[i] + shift, ls[j] + shift});
      bool ok = mode == DistanceCheck::equal ? a == b : a <= b;
      if (!ok) {
        r.distances_ok = false;
        r.mismatches.push_back("d(Z_" + std::to_string(ls[i]) + ", Z_" + std::to_string(ls[j]) + ") = " +
                               std::to_string(a) + " vs " + std::to_string(b) + " on the target");
      }
    }
  return r;
}

FidelityReport verify_cyclic_fidelity(const Sequence& b, Int n, const Budget& budget) {
  Sequence image = transfer_to_cyclic(b, n);
  AtomSet src = atoms_for_element(b, budget);
  AtomSet dst = atoms_for_element(image, budget);
  return verify_transfer_fidelity(b, image, src, dst, 0, DistanceCheck::equal, budget);
}

FidelityReport verify_psi_fidelity(const Sequence& b, Int d, const Budget& budget) {
  for (const auto& t : b.terms())
    if (t.value < 0 && t.value != -1 && t.value != -d)
      throw InvalidInput("psi needs the negative part inside {-d, -1}");
  Sequence image = psi_collapse(b, d);
  AtomSet src = atoms_for_element(b, budget);
  AtomSet dst = atoms_for_element(image, budget);
  FidelityReport r =
      verify_transfer_fidelity(b, image, src, dst, psi_shift(b, d), DistanceCheck::at_most, budget);
  FactorizationSet zs = complete_factorizations(b, BlockMonoid(src), budget);
  FactorizationSet zt = complete_factorizations(image, BlockMonoid(dst), budget);
  std::set<Factorization> mapped;
  for (const auto& z : zs.all) {
    Factorization w = psi_bar(z, d);
    if (w.length() != z.length() + r.shift) {
      r.lengths_ok = false;
      r.mismatches.push_back("|psi_bar(" + z.to_string() + ")| breaks the length shift");
    }
    mapped.insert(std::move(w));
  }
  if (mapped != std::set<Factorization>(zt.all.begin(), zt.all.end())) {
    r.image_ok = false;
    r.mismatches.push_back("psi_bar(Z(B)) differs from Z(psi(B))");
  }
  return r;
}

}  // namespace zsm

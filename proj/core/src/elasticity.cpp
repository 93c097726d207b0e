#include "zsm/elasticity.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "zsm/structure.hpp"

namespace zsm {

namespace {

GroundSpec without_zero(const GroundSpec& spec) {
  std::set<Int> finite = spec.finite_part();
  finite.erase(0);
  std::vector<Progression> aps;
  for (const auto& p : spec.progressions()) {
    if (p.start <= 0 && (-p.start) % p.step == 0) {
      for (Int v = p.start; v < 0; v += p.step) finite.insert(v);
      aps.push_back({p.step, p.step});
    } else {
      aps.push_back(p);
    }
  }
  return GroundSpec(std::move(finite), std::move(aps));
}

Rational best_ratio(const PairBasis& pb) {
  Rational best(1);
  for (const auto& p : pb.atoms) {
    Count x = p.left_size(), y = p.right_size();
    if (y == 0) throw DataError("pair atom with empty right side");
    best = std::max(best, Rational(BigInt(x), BigInt(y)));
  }
  return best;
}

}  // namespace

std::size_t KappaSystem::class_of(Int g) const {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    if (g < bound ? (c.singleton && c.representative == g) : (!c.singleton && c.residue == g % modulus)) return i;
  }
  throw InvalidInput(std::to_string(g) + " is not a positive member of the ground");
}

KappaSystem kappa_classes(const GroundSpec& raw) {
  if (!raw.condensed()) throw InvalidInput("kappa classes need a condensed ground");
  GroundSpec spec = without_zero(raw);
  KappaSystem ks;
  ks.negatives = spec.negatives();
  if (ks.negatives.empty()) throw InvalidInput("kappa classes need a nonempty negative part");
  for (Int a : ks.negatives) ks.modulus = lcm(ks.modulus, -a);
  ks.bound = checked_mul(checked_mul(static_cast<Int>(ks.negatives.size()), -ks.negatives.front()), ks.modulus);
  if (ks.bound > 1)
    for (Int g : spec_members(spec, 1, ks.bound - 1)) ks.classes.push_back({true, g, g % ks.modulus});
  Int period = 1;
  for (const auto& p : spec.progressions()) period = lcm(period, p.step);
  Int hi = checked_add(std::max(ks.bound, spec.max_member_bound()), checked_mul(ks.modulus, period));
  std::set<Int> seen;
  for (Int g : spec_members(spec, ks.bound, hi))
    if (seen.insert(g % ks.modulus).second) ks.classes.push_back({false, g, g % ks.modulus});
  return ks;
}

Sequence negative_completion(const Sequence& lift, const std::vector<Int>& negatives, Meter& meter) {
  if (lift.empty()) return Sequence();
  const Int target = lift.sum();
  const Count cap = lift.terms().back().value;  // |U^-| <= max U^+ for atoms
  std::vector<Int> neg(negatives);
  std::sort(neg.begin(), neg.end());
  Sequence r;
  std::optional<Sequence> found;
  auto rec = [&](auto&& self, std::size_t j, Int need, Count used) -> void {
    if (found) return;
    if (need == 0) {
      meter.node_or_throw("negative_completion");
      if (is_atom(lift * r)) found = r;
      return;
    }
    if (j >= neg.size() || used >= cap) return;
    const Int step = -neg[j];
    for (Count c = std::min<Count>(need / step, cap - used); c >= 0; --c) {
      if (c) r.add(neg[j], c);
      self(self, j + 1, need - c * step, used + c);
      if (c) r = r.quotient(Sequence({{neg[j], c}}));
      if (found) return;
    }
  };
  rec(rec, 0, target, 0);
  return found ? *found : Sequence();
}

std::vector<KappaGenerator> kappa_generators(const KappaSystem& ks, const GroundSpec&, const Budget& budget) {
  Meter meter(budget);
  const Count cap = -ks.negatives.front();
  const std::size_t n = ks.classes.size();
  std::vector<KappaGenerator> out;
  std::vector<Count> pick(n, 0);
  auto rec = [&](auto&& self, std::size_t from, Count left, Sequence& lift) -> void {
    if (left == 0) {
      Sequence r = negative_completion(lift, ks.negatives, meter);
      if (!r.empty()) out.push_back({pick, lift, lift * r});
      return;
    }
    for (std::size_t i = from; i < n; ++i) {
      ++pick[i];
      Sequence next = lift;
      next.add(ks.classes[i].representative);
      self(self, i, left - 1, next);
      --pick[i];
    }
  };
  for (Count size = 1; size <= cap; ++size) {
    Sequence lift;
    rec(rec, 0, size, lift);
  }
  return out;
}

std::vector<KappaGenerator> kappa_generators(const GroundSpec& spec, const Budget& budget) {
  return kappa_generators(kappa_classes(spec), spec, budget);
}

ElasticityReport exact_elasticity(const GroundSpec& raw, const Budget& budget) {
  if (!raw.condensed()) throw InvalidInput("elasticity needs a condensed ground");
  GroundSpec spec = without_zero(raw);
  ElasticityReport rep;
  if (spec.is_finite()) {
    AtomSet atoms = enumerate_atoms(spec.members(), budget);
    Matrix m(atoms.ground.size(), std::vector<Int>(atoms.atoms.size(), 0));
    for (std::size_t c = 0; c < atoms.atoms.size(); ++c)
      for (const auto& t : atoms.atoms[c].terms()) {
        auto r = std::lower_bound(atoms.ground.begin(), atoms.ground.end(), t.value) - atoms.ground.begin();
        m[static_cast<std::size_t>(r)][c] = t.count;
      }
    PairBasis pb = hilbert_basis(m, budget);
    rep.rho = best_ratio(pb);
    rep.route = "finite";
    rep.accepted = "true";
    rep.generators = atoms.atoms.size();
    rep.pair_atoms = pb.atoms.size();
    rep.complete = pb.complete;
    return rep;
  }
  KappaSystem ks = kappa_classes(spec);
  auto gens = kappa_generators(ks, spec, budget);
  if (gens.empty()) throw DataError("no kappa generators found");
  Matrix m(ks.classes.size(), std::vector<Int>(gens.size(), 0));
  for (std::size_t c = 0; c < gens.size(); ++c)
    for (std::size_t r = 0; r < ks.classes.size(); ++r) m[r][c] = gens[c].classes[r];
  PairBasis pb = hilbert_basis(m, budget);
  rep.rho = best_ratio(pb);
  rep.route = "kappa";
  rep.kappa_classes = ks.classes.size();
  rep.generators = gens.size();
  rep.pair_atoms = pb.atoms.size();
  rep.complete = pb.complete;
  rep.accepted = "unknown";
  if (rep.rho == Rational(1)) {
    rep.accepted = "true";
  } else if (ks.negatives.size() == 2 && ks.negatives.back() == -1 && spec.contains(1)) {
    const Int d = -ks.negatives.front();
    if (structure_condition(spec) && rep.rho == Rational(d)) rep.accepted = "false";
  }
  return rep;
}

RhoK rho_k_report(const std::vector<Int>& ground, Count k, const Budget& budget) {
  if (k < 1) throw InvalidInput("rho_k needs k >= 1");
  AtomSet atoms = enumerate_atoms(ground, budget);
  BlockMonoid monoid(atoms);
  Meter meter(budget);
  std::set<Sequence> products;
  auto rec = [&](auto&& self, std::size_t from, Count left, const Sequence& acc) -> void {
    if (left == 0) {
      if (!meter.result()) throw BudgetExceeded("rho_k: too many products", meter.nodes(), meter.results());
      products.insert(acc);
      return;
    }
    for (std::size_t i = from; i < atoms.atoms.size(); ++i) {
      meter.node_or_throw("rho_k");
      self(self, i, left - 1, acc * atoms.atoms[i]);
    }
  };
  rec(rec, 0, k, Sequence());
  LengthOracle oracle(monoid);
  std::set<Count> all;
  for (const auto& b : products)
    for (Count l : oracle.lengths(monoid.encode(b), meter)) all.insert(l);
  RhoK r;
  r.k = k;
  r.union_of_lengths = LengthSet({all.begin(), all.end()});
  r.rho = r.union_of_lengths.max();
  r.lambda = r.union_of_lengths.min();
  r.elements = products.size();
  return r;
}

Count rho_k(const std::vector<Int>& ground, Count k, const Budget& budget) { return rho_k_report(ground, k, budget).rho; }
Count lambda_k(const std::vector<Int>& ground, Count k, const Budget& budget) {
  return rho_k_report(ground, k, budget).lambda;
}
LengthSet v_k(const std::vector<Int>& ground, Count k, const Budget& budget) {
  return rho_k_report(ground, k, budget).union_of_lengths;
}

}  // namespace zsm

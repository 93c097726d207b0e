#include "zsm/structure.hpp"

#include <algorithm>
#include <set>

#include "zsm/invariants.hpp"

namespace zsm {

namespace {

Count mod(Count x, Count d) { return ((x % d) + d) % d; }

Sequence make(std::initializer_list<std::pair<Int, Count>> parts) {
  Sequence s;
  for (const auto& [v, c] : parts)
    if (c > 0) s.add(v, c);
  return s;
}

Factorization power_product(std::initializer_list<std::pair<const Sequence*, Count>> parts) {
  Factorization z;
  for (const auto& [u, c] : parts) {
    if (c < 0) throw DataError("negative exponent in a distinguished factorization");
    if (c > 0) z.add(*u, c);
  }
  return z;
}

void claim(FamilyInstance& f, std::string formula, const std::string& expected, const std::string& observed) {
  f.claims.push_back({std::move(formula), expected, observed, expected == observed});
}

void claim(FamilyInstance& f, std::string formula, Count expected, Count observed) {
  claim(f, std::move(formula), std::to_string(expected), std::to_string(observed));
}

void claim_true(FamilyInstance& f, std::string formula, bool observed) {
  claim(f, std::move(formula), "true", observed ? "true" : "false");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput(what);
}

std::optional<LengthSet> try_lengths(const Sequence& b, const Budget& budget) {
  try {
    LengthSet l = length_set(b, atoms_for_element(b, budget), budget);
    if (l.complete) return l;
  } catch (const BudgetExceeded&) {
  }
  return std::nullopt;
}

}  // namespace

std::optional<AampWitness> recognize_aamp(const LengthSet& l, const std::vector<Count>& deltas, Count bound) {
  if (l.empty()) throw InvalidInput("recognize_aamp needs a nonempty set");
  if (bound < 0) throw InvalidInput("bound must be nonnegative");
  const Count lo = l.min();
  for (Count d : deltas) {
    if (d < 1) throw InvalidInput("differences must be positive");
    for (Count y : l.lengths) {
      if (y > lo + bound) break;
      std::vector<Count> shifted;
      for (Count x : l.lengths) shifted.push_back(x - y);
      std::vector<Count> tops;
      for (Count x : shifted)
        if (x >= 0) tops.push_back(x);
      for (auto it = tops.rbegin(); it != tops.rend(); ++it) {
        const Count m = *it;
        std::set<Count> period{0, d};
        for (Count x : shifted)
          if (x >= 0 && x <= m) period.insert(mod(x, d));
        for (Count x : shifted)
          if ((x < 0 || x > m) && mod(x, d) > m) period.insert(mod(x, d));
        AampWitness w;
        w.y = y;
        w.d = d;
        w.bound = bound;
        w.period.assign(period.begin(), period.end());
        for (Count x : shifted) {
          if (x < 0) w.initial.push_back(x);
          else if (x <= m) w.core.push_back(x);
          else w.tail.push_back(x);
        }
        if (replay_aamp(w, l)) return w;
      }
    }
  }
  return std::nullopt;
}

bool replay_aamp(const AampWitness& w, const LengthSet& l) {
  if (w.d < 1 || w.bound < 0 || w.core.empty()) return false;
  std::set<Count> period(w.period.begin(), w.period.end());
  if (!period.count(0) || !period.count(w.d)) return false;
  if (*period.begin() < 0 || *period.rbegin() > w.d) return false;
  std::set<Count> residues;
  for (Count p : period) residues.insert(mod(p, w.d));
  auto in_period = [&](Count x) { return residues.count(mod(x, w.d)) > 0; };
  std::set<Count> core(w.core.begin(), w.core.end());
  if (*core.begin() != 0) return false;
  const Count top = *core.rbegin();
  for (Count x = 0; x <= top; ++x)
    if (in_period(x) != (core.count(x) > 0)) return false;
  for (Count x : w.initial)
    if (x < -w.bound || x > -1 || !in_period(x)) return false;
  for (Count x : w.tail)
    if (x < top + 1 || x > top + w.bound || !in_period(x)) return false;
  std::vector<Count> all;
  for (Count x : w.initial) all.push_back(w.y + x);
  for (Count x : w.core) all.push_back(w.y + x);
  for (Count x : w.tail) all.push_back(w.y + x);
  return LengthSet(all) == LengthSet(l.lengths);
}

bool structure_condition(const GroundSpec& spec) {
  auto neg = spec.negatives();
  if (neg.size() != 2 || neg.back() != -1 || neg.front() >= -1 || !spec.contains(1))
    throw InvalidInput("structure_condition needs 1 in the ground and negative part {-d, -1}");
  const Int d = -neg.front();
  bool ones = false;
  for (const auto& p : spec.progressions()) {
    for (Int i = 0; i < d; ++i) {
      Int r = mod(checked_add(p.start, checked_mul(i, p.step)), d);
      if (r != 0 && r != 1) return false;
      if (r == 1) ones = true;
    }
  }
  if (!ones) return true;
  for (Int g : spec.finite_part())
    if (g > 0 && mod(g, d) != 0 && mod(g, d) != 1) return false;
  return true;
}

bool lemt_check(const LengthSet& l, Count e, Count n) {
  if (e < 1) throw InvalidInput("lemt_check needs e >= 1");
  if (l.empty()) return false;
  const Count lo = l.min();
  bool off = false;
  for (Count x : l.lengths) {
    bool aligned = (x - lo) % e == 0;
    if (x <= lo + n && !aligned) return false;
    if (!aligned) off = true;
  }
  return off;
}

Int FamilyInstance::parameter(const std::string& key) const {
  for (const auto& [k, v] : parameters)
    if (k == key) return v;
  throw InvalidInput("family has no parameter " + key);
}

const Factorization& FamilyInstance::factorization(const std::string& key) const {
  for (const auto& [k, z] : factorizations)
    if (k == key) return z;
  throw InvalidInput("family has no factorization " + key);
}

void validate_family(const FamilyInstance& f) {
  for (const auto& [name, u] : f.atoms)
    if (!is_atom(u)) throw DataError(f.name + ": " + name + " = " + u.to_string() + " is not an atom");
  for (const auto& [name, z] : f.factorizations) {
    if (z.product() != f.element) throw DataError(f.name + ": " + name + " does not multiply to B");
    for (const auto& [u, c] : z.atoms())
      if (!is_atom(u)) throw DataError(f.name + ": " + name + " uses the non-atom " + u.to_string());
  }
  for (const auto& c : f.claims)
    if (!c.holds)
      throw DataError(f.name + ": claim " + c.formula + " expected " + c.expected + ", observed " + c.observed);
}

FamilyInstance family_lem1(Int d, Int e, Int k) {
  require(d >= 4, "lem1 needs d >= 4");
  require(e >= 2 && e <= d - 1, "lem1 needs e in [2, d-1]");
  require(gcd(e, d) > 1, "lem1 needs gcd(e, d) > 1");
  require(k >= 1, "lem1 needs k >= 1");
  FamilyInstance f;
  f.name = "lem1";
  f.unguaranteed = k < 10;
  const Int mult = d / gcd(e, d);
  const Int u = e * mult / d;
  const Int big = checked_add(e, checked_mul(d, k));
  const Int n = checked_add(u, checked_mul(mult, k));
  const Int dn = checked_mul(d, n);
  f.parameters = {{"d", d}, {"e", e}, {"k", k}, {"f", mult}, {"u", u}, {"lemt_threshold", (d - 1) * k / 6}};
  f.element = make({{big, mult}, {-d, n}, {-1, dn}, {1, dn}});
  Sequence a = make({{big, mult}, {-d, n}});
  Sequence v = make({{-1, 1}, {1, 1}});
  Sequence c = make({{big, 1}, {-1, big}});
  Sequence w = make({{-d, 1}, {1, d}});
  f.atoms = {{"A", a}, {"(-1)1", v}, {"C", c}, {"(-d)1^d", w}};
  Factorization z1 = power_product({{&a, 1}, {&v, dn}});
  Factorization z2 = power_product({{&c, mult}, {&w, n}});
  f.factorizations = {{"z1", z1}, {"z2", z2}};
  claim(f, "|z1| = 1+d(u+fk)", 1 + dn, z1.length());
  claim(f, "|z2| = f+u+fk", mult + n, z2.length());
  claim_true(f, "|z1|-|z2| not in (d-1)Z", (z1.length() - z2.length()) % (d - 1) != 0);
  validate_family(f);
  return f;
}

FamilyInstance family_lem2(Int d, Int e, Int fv, Int l, Int k) {
  require(d >= 3, "lem2 needs d >= 3");
  require(e >= 1 && e <= d - 1 && gcd(e, d) == 1, "lem2 needs e in [1, d-1] coprime to d");
  require(fv >= 1 && fv <= d - 1 && fv != e, "lem2 needs f in [1, d-1] with f != e");
  require(l >= 0 && k >= 1, "lem2 needs l >= 0 and k >= 1");
  const Int small = checked_add(fv, checked_mul(d, l));
  const Int big = checked_add(e, checked_mul(d, k));
  require(big >= small, "lem2 needs e+dk >= f+dl");
  Int x = 1;
  while ((fv + x * e) % d != 0) ++x;
  const Int u = (fv + x * e) / d;
  const Int n = checked_add(checked_add(u, checked_mul(x, k)), l);
  const Int dn = checked_mul(d, n);
  FamilyInstance f;
  f.name = "lem2";
  f.unguaranteed = k < 3 * d;
  f.parameters = {{"d", d}, {"e", e}, {"f", fv}, {"l", l}, {"k", k}, {"x", x}, {"u", u}};
  Sequence b = make({{small, 1}, {big, x}, {-d, n}, {-1, dn}, {1, dn}});
  f.element = b;
  Sequence a = make({{small, 1}, {big, x}, {-d, n}});
  Sequence v = make({{-1, 1}, {1, 1}});
  Sequence cs = make({{small, 1}, {-1, small}});
  Sequence cb = make({{big, 1}, {-1, big}});
  Sequence w = make({{-d, 1}, {1, d}});
  f.atoms = {{"A", a}, {"(-1)1", v}, {"C_small", cs}, {"C_big", cb}, {"(-d)1^d", w}};
  Factorization z1 = power_product({{&a, 1}, {&v, dn}});
  Factorization z2 = power_product({{&cs, 1}, {&cb, x}, {&w, n}});
  f.factorizations = {{"z1", z1}, {"z2", z2}};
  claim(f, "|z1| = 1+d(u+xk+l)", 1 + dn, z1.length());
  claim(f, "|z2| = 1+x+(u+xk+l)", 1 + x + n, z2.length());
  claim_true(f, "|z1|-|z2| not in (d-1)Z", (z1.length() - z2.length()) % (d - 1) != 0);
  validate_family(f);
  return f;
}

FamilyInstance family_prop2(Int d, Int k, const Budget& budget) {
  require(d >= 2 && k >= 1, "prop2 needs d >= 2 and k >= 1");
  const Int p = checked_add(1, checked_mul(k, d));
  FamilyInstance f;
  f.name = "prop2";
  f.parameters = {{"d", d}, {"k", k}};
  f.element = make({{p, d}, {d, p}, {-d, p}, {-1, checked_mul(d, p)}});
  Sequence a = make({{p, d}, {-d, p}});
  Sequence u1 = make({{d, 1}, {-1, d}});
  Sequence c = make({{p, 1}, {-1, p}});
  Sequence ud = make({{d, 1}, {-d, 1}});
  f.atoms = {{"A", a}, {"d(-1)^d", u1}, {"C", c}, {"d(-d)", ud}};
  Factorization z = power_product({{&a, 1}, {&u1, p}});
  Factorization zp = power_product({{&c, d}, {&ud, p}});
  f.factorizations = {{"z", z}, {"z'", zp}};
  claim(f, "|z| = 2+kd", 2 + k * d, z.length());
  claim(f, "|z'| = 1+d+kd", 1 + d + k * d, zp.length());
  claim(f, "d(z,z') = 1+d+kd", 1 + d + k * d, distance(z, zp));
  if (auto l = try_lengths(f.element, budget)) {
    f.validation = "enumerated";
    claim(f, "L(B) = {2+kd, 1+d+kd}", LengthSet({2 + k * d, 1 + d + k * d}).to_string(), l->to_string());
  }
  validate_family(f);
  return f;
}

LengthSet example6_lengths(Int d, Int e, Int k, Int l) {
  std::vector<Count> out{1 + k + l + (k + l) * (d - 1)};
  for (Int i = k; i <= k + l - 1; ++i) out.push_back(1 + e + k + l + i * (d - 1));
  for (Int i = l; i <= l + k; ++i) out.push_back(2 - e + k + l + i * (d - 1));
  for (Int i = 0; i <= k + l - 1; ++i) out.push_back(2 + k + l + i * (d - 1));
  return LengthSet(out);
}

FamilyInstance family_example6(Int d, Int e, Int k, Int l, const Budget& budget) {
  require(d >= 2 && e >= 1 && e <= d - 1 && k >= 1 && l >= 1, "example6 needs d >= 2, e in [1, d-1], k, l >= 1");
  const Int p = e + k * d, q = -e + l * d, n = k + l;
  FamilyInstance f;
  f.name = "example6";
  f.parameters = {{"d", d}, {"e", e}, {"k", k}, {"l", l}};
  Sequence b = make({{p, 1}, {q, 1}, {1, n * d}, {-1, n * d}, {-d, n}});
  f.element = b;
  Sequence cp = make({{p, 1}, {-1, p}});
  Sequence cq = make({{q, 1}, {-1, q}});
  Sequence w = make({{-d, 1}, {1, d}});
  f.atoms = {{"C_p", cp}, {"C_q", cq}, {"(-d)1^d", w}};
  Factorization z = power_product({{&cp, 1}, {&cq, 1}, {&w, n}});
  f.factorizations = {{"z", z}};
  LengthSet closed = example6_lengths(d, e, k, l);
  claim_true(f, "|z| in closed form", closed.contains(z.length()));
  if (auto got = try_lengths(b, budget)) {
    f.validation = "enumerated";
    claim(f, "L(B) = closed form", closed.to_string(), got->to_string());
  }
  validate_family(f);
  return f;
}

bool is_half_factorial_three(Int a1, Int a2, Int b) {
  if (!(a1 < 0 && a2 < 0 && b > 0)) throw InvalidInput("need a1, a2 < 0 < b");
  const Int g = gcd(gcd(-a1, -a2), b);
  const Int lhs = a1 * (gcd(-a2, b) / g);
  const Int rhs = a2 * (gcd(-a1, b) / g);
  return mod(lhs - rhs, b) == 0;
}

FamilyInstance family_prop46(Int a1, Int a2, Int b, Int n) {
  require(a1 < 0 && a2 < 0 && b > 0, "prop46 needs a1, a2 < 0 < b");
  require(n > 0 && n != b, "prop46 needs a positive N different from b");
  const Int g = gcd(gcd(-a1, -a2), b);
  if (!is_half_factorial_three(a1, a2, b) || a1 * (gcd(-a2, b) / g) == a2 * (gcd(-a1, b) / g))
    throw Inapplicable("half-factoriality criterion not met");
  bool swapped = false;
  auto alpha = [&](Int a) { return b / gcd(-a, b); };
  auto beta = [&](Int a) { return -a / gcd(-a, b); };
  if (a1 * alpha(a1) - a2 * alpha(a2) < 0) {
    std::swap(a1, a2);
    swapped = true;
  }
  const Int al1 = alpha(a1), be1 = beta(a1), al2 = alpha(a2), be2 = beta(a2);
  const Int d = a1 * al1 - a2 * al2;
  Sequence u1 = make({{a1, al1}, {b, be1}});
  Sequence u2 = make({{a2, al2}, {b, be2}});

  std::optional<Sequence> un;
  Int gamma = 0, bet = 0, m1 = 0, m2 = 0;
  const Int pos_cap = std::max(-a1, -a2);
  for (Int gm = 1; gm <= -a1 && !un; ++gm)
    for (Int bt = 0; bt + gm <= pos_cap && !un; ++bt)
      for (Int mm2 = 0; mm2 < -a1 && !un; ++mm2) {
        Int num = checked_add(checked_add(checked_mul(gm, n), checked_mul(bt, b)), checked_mul(a2, mm2));
        if (num < 0 || num % -a1 != 0) continue;
        Sequence cand = make({{n, gm}, {b, bt}, {a1, num / -a1}, {a2, mm2}});
        if (is_atom(cand)) {
          un = cand;
          gamma = gm, bet = bt, m1 = num / -a1, m2 = mm2;
        }
      }
  if (!un) throw DataError("prop46: no atom containing N found");

  FamilyInstance f;
  f.name = "prop46";
  const Int rung = -a2 * al1 * al2;
  const Int kmax = m1 / rung;
  f.unguaranteed = m1 < rung;
  f.parameters = {{"a1", a1}, {"a2", a2}, {"b", b}, {"N", n}, {"d", d}, {"gamma", gamma}, {"beta", bet},
                  {"M1", m1}, {"M2", m2}, {"k_max", kmax}, {"swapped", swapped ? 1 : 0}};
  f.element = *un * u2.power(m1);
  f.atoms = {{"U1", u1}, {"U2", u2}, {"U_N", *un}};
  claim_true(f, "B({a1,a2,b}) half-factorial", is_half_factorial_three(a1, a2, b));
  for (Int k = 0; k <= kmax; ++k) {
    Sequence unk = make({{n, gamma}, {b, bet}, {a1, m1 - rung * k}, {a2, m2 - a1 * al1 * al2 * k}});
    f.atoms.emplace_back("U_N," + std::to_string(k), unk);
    Factorization z = power_product({{&unk, 1}, {&u1, -a2 * al2 * k}, {&u2, m1 + a1 * al1 * k}});
    f.factorizations.emplace_back("z_N," + std::to_string(k), z);
    claim(f, "|z_N," + std::to_string(k) + "| = M1+1+dk", m1 + 1 + d * k, z.length());
  }
  validate_family(f);
  return f;
}

FamilyInstance family_prop71(Int d1, Int d2, Int n, Int m) {
  require(d1 >= 3 && d1 < d2, "prop71 needs 3 <= d1 < d2");
  require(gcd(d1, d2) == 1, "prop71 needs gcd(d1, d2) = 1");
  require((d2 - 1) % (d1 - 1) != 0, "prop71 needs d1-1 not dividing d2-1");
  require(n >= d2 - 1 && m >= d1, "prop71 needs N >= d2-1 and M >= d1");
  const Int d = gcd(d1 - 1, d2 - 1);
  Int big = checked_mul(d2, m) + 1;
  while (big % d2 != d1 % d2 || big % d1 != d2 % d1) ++big;
  Int l = 1;
  while (mod(l * (d2 - d1) + d, d2 - 1) != 0) ++l;
  const Int lp = (l * (d2 - d1) + d) / (d2 - 1);
  const Int top = d1 * d2;
  const Int ln = checked_mul(big, n);

  FamilyInstance f;
  f.name = "prop71";
  f.parameters = {{"d1", d1}, {"d2", d2}, {"N", n}, {"M", m}, {"L", big}, {"d", d}, {"l", l}, {"l'", lp}};
  f.element = make({{big, 2 * top * n}, {-d2, 2 * d1 * ln}, {-d1, 2 * d2 * ln}, {top, 2 * ln}});
  Sequence a1 = make({{big, d1}, {-d1, big}});
  Sequence a2 = make({{big, d2}, {-d2, big}});
  Sequence b1 = make({{top, 1}, {-d1, d2}});
  Sequence b2 = make({{top, 1}, {-d2, d1}});
  Sequence a0 = make({{big, 1}, {-d2, (big - d1) / d2}, {-d1, 1}});
  f.atoms = {{"A1", a1}, {"A2", a2}, {"B1", b1}, {"B2", b2}, {"A0", a0}};
  Factorization z = power_product({{&a1, d2 * n}, {&a2, d1 * n}, {&b1, ln}, {&b2, ln}});
  Factorization zp = power_product({{&a1, d2 * n - l * d2},
                                    {&a2, d1 * n + l * d1 - lp},
                                    {&a0, lp * d2},
                                    {&b1, ln + l * big - lp},
                                    {&b2, ln - l * big + lp}});
  Factorization low = power_product({{&a2, 2 * d1 * n}, {&b1, 2 * ln}});
  Factorization high = power_product({{&a1, 2 * d2 * n}, {&b2, 2 * ln}});
  f.factorizations = {{"z", z}, {"z'", zp}, {"z_low", low}, {"z_high", high}};
  claim(f, "|z'| - |z| = gcd(d1-1, d2-1)", d, zp.length() - z.length());
  claim_true(f, "d <= d1-2", d <= d1 - 2);
  claim(f, "|z| - |z_low| = (d2-d1)N", (d2 - d1) * n, z.length() - low.length());
  claim(f, "|z_high| - |z| = (d2-d1)N", (d2 - d1) * n, high.length() - z.length());
  claim_true(f, "L > d2 M", big > d2 * m);
  validate_family(f);
  return f;
}

}  // namespace zsm

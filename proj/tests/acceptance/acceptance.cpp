#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "generators.hpp"
#include "oracles.hpp"
#include "zsm/chains.hpp"
#include "zsm/elasticity.hpp"
#include "zsm/structure.hpp"
#include "zsm/transfer.hpp"

using namespace zsm;

namespace {

// Pinned limits.
constexpr double kAtomsSeconds = 60.0;
constexpr Int kAtomsWindow = 6;
constexpr Count kStructureMaxLength = 16;
constexpr Count kElasticityMaxLength = 16;
constexpr int kChainSamples = 200;
constexpr Count kChainMaxLength = 14;
constexpr Count kCatenaryChainBound = 12;
constexpr Count kCyclicMaxLength = 14;
constexpr Count kPsiMaxLength = 9;
constexpr int kHilbertSamples = 50;
constexpr Count kHilbertDegree = 12;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

using Criterion = std::function<void(Verdict&, std::mt19937_64&)>;

std::vector<Count> as_vector(const std::set<Count>& s) { return {s.begin(), s.end()}; }

oracle::Counts counts_over(const Factorization& z, const std::vector<Sequence>& atoms) {
  oracle::Counts c(atoms.size(), 0);
  Count seen = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    c[i] = z.multiplicity(atoms[i]);
    seen += c[i];
  }
  if (seen != z.length()) throw std::runtime_error("factorization uses an atom outside the oracle catalogue");
  return c;
}

// Steps recomputed with the oracle distance.
Count oracle_max_step(const Chain& c, const std::vector<Sequence>& atoms) {
  Count m = 0;
  for (std::size_t i = 1; i < c.steps.size(); ++i)
    m = std::max(m, oracle::distance(counts_over(c.steps[i - 1], atoms), counts_over(c.steps[i], atoms)));
  return m;
}

bool oracle_nondecreasing(const Chain& c) {
  for (std::size_t i = 1; i < c.steps.size(); ++i)
    if (c.steps[i].length() < c.steps[i - 1].length()) return false;
  return true;
}

bool products_agree(const Chain& c, const Sequence& b) {
  return std::all_of(c.steps.begin(), c.steps.end(), [&](const Factorization& z) { return z.product() == b; });
}

void criterion_atoms(Verdict& v, std::mt19937_64&) {
  auto start = std::chrono::steady_clock::now();
  std::vector<Int> window;
  for (Int g = -kAtomsWindow; g <= kAtomsWindow; ++g) window.push_back(g);
  std::vector<Int> nonzero;
  for (Int g : window)
    if (g != 0) nonzero.push_back(g);
  // every atom over a subset of the window appears among these
  const auto universe = oracle::atoms(nonzero, 2 * kAtomsWindow);
  std::size_t grounds = 0;
  for (std::uint32_t mask = 1; mask < (1u << window.size()); ++mask) {
    std::vector<Int> g;
    for (std::size_t i = 0; i < window.size(); ++i)
      if (mask & (1u << i)) g.push_back(window[i]);
    bool pos = g.back() > 0, neg = g.front() < 0;
    bool only_zero = g.size() == 1 && g.front() == 0;
    if (!(pos && neg) && !only_zero) continue;
    ++grounds;
    std::set<Int> members(g.begin(), g.end());
    std::vector<Sequence> expect;
    if (members.count(0)) expect.push_back(Sequence::parse("0"));
    for (const auto& u : universe) {
      auto s = u.support();
      if (std::all_of(s.begin(), s.end(), [&](Int x) { return members.count(x) > 0; })) expect.push_back(u);
    }
    std::sort(expect.begin(), expect.end());
    AtomSet got = enumerate_atoms(g, Budget::unlimited());
    std::ostringstream where;
    where << "ground " << GroundSpec::from_list(g).to_string();
    v.require(got.atoms == expect, where.str() + " atoms differ from the oracle");
    const Int min_neg = neg ? -g.front() : 0;
    Count longest = 0;
    for (const auto& u : got.atoms) {
      v.require(u.positive_part().length() <= min_neg, where.str() + " |U+| above |min G0|");
      longest = std::max(longest, u.length());
    }
    v.require(davenport(g, Budget::unlimited()) == longest, where.str() + " davenport is not the longest atom");
    if (!only_zero) v.require(longest <= g.back() - g.front(), where.str() + " davenport above max + |min|");
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(secs < kAtomsSeconds, "runtime " + std::to_string(secs) + "s");
  v.detail << grounds << " condensed grounds, " << universe.size() << " oracle atoms, " << secs << "s";
}

void criterion_prop2(Verdict& v, std::mt19937_64&) {
  for (Int d : {2, 3})
    for (Int k : {1, 2}) {
      auto f = family_prop2(d, k, Budget::unlimited());
      const Sequence& b = f.element;
      auto atoms = atoms_for_element(b, Budget::unlimited());
      auto z = factorizations(b, atoms, Budget::unlimited());
      std::string tag = "d=" + std::to_string(d) + ",k=" + std::to_string(k);
      v.require(z.complete, tag + " enumeration incomplete");
      const Count lo = 2 + k * d, hi = 1 + d + k * d;
      v.require(z.lengths().lengths == std::vector<Count>{lo, hi}, tag + " L(B) = " + z.lengths().to_string());
      v.require(as_vector(oracle::lengths(b, atoms.atoms)) == std::vector<Count>{lo, hi}, tag + " oracle L(B)");
      v.require(adjacent_length_distance(z, lo, hi) == d + 1, tag + " d(Z_k, Z_l)");
      std::vector<oracle::Counts> zc;
      for (const auto& x : z.all) zc.push_back(counts_over(x, atoms.atoms));
      v.require(oracle::adjacent_distance(zc, lo, hi) == d + 1, tag + " oracle d(Z_k, Z_l)");
      v.require(delta_of(z) >= hi, tag + " delta(B)");
      v.detail << tag << ": L=" << z.lengths().to_string() << " delta=" << delta_of(z) << "; ";
    }
}

void criterion_structure(Verdict& v, std::mt19937_64&) {
  for (Int d : {2, 3}) {
    std::set<Int> g{-d, -1};
    for (Int x = 0; x <= 3 * d + 1; x += d) g.insert(x);
    for (Int x = 1; x <= 3 * d + 1; x += d) g.insert(x);
    std::vector<Int> ground(g.begin(), g.end());
    AtomSet atoms = enumerate_atoms(ground, Budget::unlimited());
    BlockMonoid monoid(atoms);
    LengthOracle lengths(monoid);
    Meter meter(Budget::unlimited());
    std::size_t seen = 0, progressions = 0;
    for_each_zero_sum(ground, kStructureMaxLength, [&](const std::vector<Count>& c) {
      ++seen;
      LengthSet l(lengths.lengths(c, meter));
      auto w = recognize_aamp(l, {d - 1}, 0);
      auto deltas = delta_set(l);
      bool ok = w.has_value() && replay_aamp(*w, l) && (deltas.empty() || deltas == std::vector<Count>{d - 1});
      if (ok) ++progressions;
      else v.require(false, "d=" + std::to_string(d) + " " + monoid.decode(c).to_string() + " L=" + l.to_string());
    });
    v.detail << "d=" << d << ": " << progressions << "/" << seen << " progressions; ";
  }
}

void criterion_elasticity(Verdict& v, std::mt19937_64&) {
  auto a = exact_elasticity(GroundSpec::from_list({-4, 2}));
  v.require(a.rho == Rational(1), "rho({-4,2}) = " + a.rho.to_string());
  auto b = exact_elasticity(GroundSpec({-1}, {Progression{1, 1}}));
  v.require(b.rho == Rational(1), "rho({-1} u N) = " + b.rho.to_string());
  GroundSpec odd({-2, -1}, {Progression{1, 2}});
  auto c = exact_elasticity(odd);
  v.require(c.rho == Rational(2), "rho({-2,-1} u odd) = " + c.rho.to_string());
  v.require(c.accepted == "false", "rho({-2,-1} u odd) accepted = " + c.accepted);
  v.detail << "exact: 1, 1, " << c.rho.to_string() << " (accepted " << c.accepted << "); brute sup:";

  std::optional<Rational> previous;
  for (Int top : {5, 7, 9}) {
    std::vector<Int> ground{-2, -1};
    for (Int x = 1; x <= top; x += 2) ground.push_back(x);
    AtomSet atoms = enumerate_atoms(ground, Budget::unlimited());
    BlockMonoid monoid(atoms);
    LengthOracle lengths(monoid);
    Meter meter(Budget::unlimited());
    Rational best(1);
    std::vector<Count> arg;
    for_each_zero_sum(ground, kElasticityMaxLength, [&](const std::vector<Count>& cnt) {
      const auto& l = lengths.lengths(cnt, meter);
      Rational r(BigInt(l.back()), BigInt(l.front()));
      if (best < r) best = r, arg = cnt;
    });
    if (!arg.empty()) {
      Sequence witness = monoid.decode(arg);
      auto ol = oracle::lengths(witness, atoms.atoms);
      v.require(Rational(BigInt(*ol.rbegin()), BigInt(*ol.begin())) == best, "oracle disagrees at " + witness.to_string());
    }
    v.require(best < Rational(2), "sup rho at odd <= " + std::to_string(top) + " reaches " + best.to_string());
    if (previous) v.require(!(best < *previous), "sup rho decreased at odd <= " + std::to_string(top));
    previous = best;
    v.detail << " " << best.to_string();
  }
}

void criterion_rhok(Verdict& v, std::mt19937_64&) {
  for (const std::vector<Int>& g : {std::vector<Int>{-2, -1, 1, 2}, {-2, -1, 1, 3}, {-3, -1, 1, 2}}) {
    std::vector<Count> rho, lambda;
    const auto atoms = oracle::atoms(g, g.back() - g.front());
    for (Count k = 1; k <= 4; ++k) {
      auto rep = rho_k_report(g, k, Budget::unlimited());
      // all products of k atoms
      Count orho = 0, olambda = std::numeric_limits<Count>::max();
      std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
      for (;;) {
        Sequence b;
        for (std::size_t i : pick) b *= atoms[i];
        auto l = oracle::lengths(b, atoms);
        orho = std::max(orho, *l.rbegin());
        olambda = std::min(olambda, *l.begin());
        std::size_t pos = pick.size();
        while (pos > 0 && pick[pos - 1] + 1 == atoms.size()) --pos;
        if (pos == 0) break;
        ++pick[pos - 1];
        for (std::size_t j = pos; j < pick.size(); ++j) pick[j] = pick[pos - 1];
      }
      std::string tag = GroundSpec::from_list(g).to_string() + " k=" + std::to_string(k);
      v.require(rep.rho == orho, tag + " rho_k " + std::to_string(rep.rho) + " vs oracle " + std::to_string(orho));
      v.require(rep.lambda == olambda, tag + " lambda_k");
      rho.push_back(orho);
      lambda.push_back(olambda);
    }
    const Count dav = davenport(g);
    const Count bound = refactoring_bound(g);
    for (std::size_t k = 0; k + 1 < rho.size(); ++k) {
      std::string tag = GroundSpec::from_list(g).to_string() + " k=" + std::to_string(k + 1);
      Count step = rho[k + 1] - rho[k];
      v.require(step >= 1 && step <= dav - 1, tag + " rho gap " + std::to_string(step));
      Count drop = lambda[k] - lambda[k + 1];
      v.require(drop >= -1 && drop < bound, tag + " lambda gap " + std::to_string(drop));
    }
    v.detail << GroundSpec::from_list(g).to_string() << " rho:";
    for (Count r : rho) v.detail << ' ' << r;
    v.detail << " lambda:";
    for (Count l : lambda) v.detail << ' ' << l;
    v.detail << "; ";
  }
}

void criterion_relative_davenport(Verdict& v, std::mt19937_64&) {
  for (Int d : {2, 3, 4}) {
    Sequence md = Sequence({{-d, 1}}), m1 = Sequence({{-1, 1}}), m1d = Sequence({{-1, d}});
    std::vector<PairSequence> expect{{md, md}, {m1, m1}, {m1d, md}, {md, m1d}};
    std::sort(expect.begin(), expect.end());
    v.require(e_atoms({-d, -1}) == expect, "E-atoms over {-" + std::to_string(d) + ",-1}");
    v.require(relative_davenport({-d, -1}) == 2, "relative davenport over {-" + std::to_string(d) + ",-1}");
  }
  for (Int n : {1, 2, 3}) v.require(relative_davenport({-n}) == 1, "relative davenport over {-" + std::to_string(n) + "}");
  v.detail << "four-element lists and constants checked";
}

void criterion_chains(Verdict& v, std::mt19937_64& rng) {
  const std::vector<Int> ground{-2, -1, 1, 2};
  const auto catalogue = enumerate_atoms(ground);
  Count worst_catenary = 0, worst_upsilon = 0, worst_equal = 0;
  std::size_t equal_pairs = 0;
  for (int sample = 0; sample < kChainSamples; ++sample) {
    Sequence b = oracle::random_zero_sum(ground, kChainMaxLength, rng);
    auto atoms = atoms_for_element(b);
    auto z = factorizations(b, atoms, Budget::unlimited());
    std::string tag = "B=" + b.to_string();
    std::vector<oracle::Counts> zc;
    for (const auto& x : z.all) zc.push_back(counts_over(x, atoms.atoms));
    v.require(as_vector(oracle::lengths(b, atoms.atoms)) == z.lengths().lengths, tag + " lengths");

    std::uniform_int_distribution<std::size_t> pick(0, z.size() - 1);
    for (int t = 0; t < 3; ++t) {
      const auto& from = z.all[pick(rng)];
      const auto& to = z.all[pick(rng)];
      Chain c = build_catenary_chain(b, from, to, atoms);
      validate_chain(c);
      Count step = oracle_max_step(c, atoms.atoms);
      v.require(products_agree(c, b) && c.front() == from && c.back() == to, tag + " catenary chain endpoints");
      v.require(step == c.max_step && step <= kCatenaryChainBound, tag + " catenary step " + std::to_string(step));
      worst_catenary = std::max(worst_catenary, step);
    }

    // maxima of the refinement order, brute force
    std::vector<Factorization> ups;
    for (const auto& x : z.all) {
      auto px = positive_pattern(x);
      bool maximal = true;
      for (const auto& y : z.all) {
        auto py = positive_pattern(y);
        if (py != px && oracle::refines(px, py)) maximal = false;
      }
      if (maximal) ups.push_back(x);
    }
    std::sort(ups.begin(), ups.end());
    v.require(upsilon(b, atoms).all == ups, tag + " upsilon");

    const Count m = -b.terms().front().value;
    const Count bound = std::max<Count>(m * relative_davenport({-2, -1}), 2);
    for (const auto& start : z.all) {
      Chain c = chain_to_upsilon(b, start, atoms);
      validate_chain(c);
      Count step = oracle_max_step(c, atoms.atoms);
      v.require(products_agree(c, b) && c.front() == start, tag + " upsilon chain start");
      v.require(oracle_nondecreasing(c), tag + " upsilon chain not nondecreasing");
      v.require(step <= bound, tag + " upsilon chain step " + std::to_string(step));
      v.require(std::binary_search(ups.begin(), ups.end(), c.back()), tag + " upsilon chain end outside Upsilon");
      worst_upsilon = std::max(worst_upsilon, step);
    }
    for (const auto& x : ups)
      for (const auto& y : ups) {
        if (positive_pattern(x) != positive_pattern(y)) continue;
        ++equal_pairs;
        Chain c = equal_plus_chain(b, x, y, atoms);
        validate_chain(c);
        Count step = oracle_max_step(c, atoms.atoms);
        v.require(c.front() == x && c.back() == y && products_agree(c, b), tag + " equal-plus endpoints");
        v.require(step <= 2, tag + " equal-plus step " + std::to_string(step));
        worst_equal = std::max(worst_equal, step);
      }
  }
  v.detail << kChainSamples << " elements over " << catalogue.atoms.size() << " atoms; worst steps: catenary "
           << worst_catenary << ", to-upsilon " << worst_upsilon << ", equal-plus " << worst_equal << " over "
           << equal_pairs << " pairs";
}

void criterion_growth(Verdict& v, std::mt19937_64&) {
  auto w = tame_growth_witness(TwoSidedSpec::nonzero_integers(), 3);
  const Sequence expect = Sequence::parse("5 -1^5") * Sequence::parse("-6 1^6");
  v.require(w.element == expect, "B = " + w.element.to_string());
  v.require(w.holds, "certificate does not hold");
  auto atoms = atoms_for_element(w.element);
  auto l = as_vector(oracle::lengths(w.element, atoms.atoms));
  v.require(l == std::vector<Count>{2, 6}, "oracle L(B)");
  v.require(w.lengths && w.lengths->lengths == l, "reported L(B)");
  Count max_gap = 0;
  for (std::size_t i = 1; i < l.size(); ++i) max_gap = std::max(max_gap, l[i] - l[i - 1]);
  v.require(max_gap >= 3 - 2, "max delta");
  v.require(Rational(BigInt(l.back()), BigInt(l.front())) == Rational(3), "rho(B)");
  auto z = factorizations(w.element, atoms, Budget::unlimited());
  std::size_t windows = 0;
  for (const auto& x : z.all) {
    try {
      auto g = lem_gap_t(x, -1, 1, -6, 5, 1);
      v.require(x.length() >= g.lo && x.length() <= g.hi, "window for " + x.to_string());
      ++windows;
    } catch (const Error& e) {
      v.require(false, std::string("lem_gap_t: ") + e.what());
    }
  }
  v.detail << "B=" << w.element.to_string() << " L={2,6} certificate " << w.certificate << ", " << windows
           << " windows hold";
}

void structural_check(Verdict& v, const FamilyInstance& f) {
  validate_family(f);
  for (const auto& [name, u] : f.atoms) {
    v.require(is_atom(u), f.name + " atom " + name);
    double subsets = 1;
    for (const auto& t : u.terms()) subsets *= static_cast<double>(t.count + 1);
    if (subsets <= 2e6) v.require(oracle::is_minimal_zero_sum(u), f.name + " oracle rejects atom " + name);
  }
  for (const auto& [name, z] : f.factorizations) {
    Sequence product;
    for (const auto& [u, c] : z.atoms()) product *= u.power(c);
    v.require(product == f.element, f.name + " factorization " + name + " product");
    for (const auto& [u, c] : z.atoms()) v.require(is_atom(u), f.name + " factorization " + name + " uses a non-atom");
  }
  for (const auto& c : f.claims) v.require(c.holds, f.name + " claim " + c.formula);
  v.detail << f.name << ": " << f.atoms.size() << " atoms, " << f.factorizations.size() << " factorizations, "
           << f.claims.size() << " claims; ";
}

void criterion_families(Verdict& v, std::mt19937_64&) {
  structural_check(v, family_lem1(4, 2, 10));
  structural_check(v, family_lem2(3, 1, 2, 0, 2));
  auto p46 = family_prop46(-1, -3, 2, 15);
  structural_check(v, p46);
  auto l = length_set(p46.element, atoms_for_element(p46.element), Budget::unlimited());
  v.require(pattern_contains(l, {0, p46.parameter("d")}).has_value(), "prop46 L(A_N) misses {0,d}");
  structural_check(v, family_prop71(4, 5, 4, 4));
}

void criterion_transfer(Verdict& v, std::mt19937_64&) {
  const std::vector<Int> ground{-4, 1, 2, 3};
  const auto src = oracle::atoms(ground, 8);
  std::map<std::vector<Int>, std::vector<Sequence>> dst;
  std::size_t cyclic = 0;
  for_each_zero_sum(ground, kCyclicMaxLength, [&](const std::vector<Count>& c) {
    Sequence b;
    for (std::size_t i = 0; i < ground.size(); ++i) b.add(ground[i], c[i]);
    Sequence image = transfer_to_cyclic(b, 4);
    auto supp = image.support();
    auto it = dst.find(supp);
    if (it == dst.end()) it = dst.emplace(supp, oracle::cyclic_atoms(4, supp)).first;
    auto want = oracle::lengths(b, src);
    auto got = image.empty() ? std::set<Count>{0} : oracle::lengths(image, it->second);
    v.require(want == got, "cyclic lengths at " + b.to_string());
    v.require(verify_cyclic_fidelity(b, 4).passed(), "cyclic fidelity report at " + b.to_string());
    ++cyclic;
  });

  const std::vector<Int> psi_ground{-2, -1, 1, 2, 3, 4, 6};
  const auto psi_atoms = enumerate_atoms(psi_ground);
  std::size_t psi = 0, images = 0;
  for_each_zero_sum(psi_ground, kPsiMaxLength, [&](const std::vector<Count>& c) {
    Sequence b;
    for (std::size_t i = 0; i < psi_ground.size(); ++i) b.add(psi_ground[i], c[i]);
    Sequence target = psi_collapse(b, 2);
    const Count shift = psi_shift(b, 2);
    auto zb = factorizations(b, psi_atoms, Budget::unlimited());
    auto zt = factorizations(target, atoms_for_element(target), Budget::unlimited());
    std::set<Factorization> mapped;
    for (const auto& z : zb.all) {
      Factorization y = psi_bar(z, 2);
      v.require(y.product() == target, "psi-bar product at " + b.to_string());
      v.require(y.length() == z.length() + shift, "length shift at " + z.to_string());
      mapped.insert(y);
    }
    v.require(std::equal(mapped.begin(), mapped.end(), zt.all.begin(), zt.all.end()), "psi-bar image at " + b.to_string());
    images += mapped.size();
    ++psi;
  });
  v.detail << cyclic << " elements mod 4, " << psi << " psi elements (" << images << " factorizations)";
}

zsm::Matrix random_matrix(std::mt19937_64& rng, Int lo) {
  std::size_t rows = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
  std::size_t cols = static_cast<std::size_t>(gen::uniform(rng, 2, 5));
  zsm::Matrix a(rows, std::vector<Int>(cols));
  for (auto& row : a)
    for (auto& x : row) x = gen::uniform(rng, lo, 4);
  return a;
}

std::vector<Vector> truncated(const std::vector<Vector>& basis) {
  std::vector<Vector> out;
  for (const auto& x : basis) {
    Count s = 0;
    for (Count c : x) s += c;
    if (s <= kHilbertDegree) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void criterion_hilbert(Verdict& v, std::mt19937_64& rng) {
  std::size_t kernel_complete = 0, pair_complete = 0;
  for (int sample = 0; sample < kHilbertSamples; ++sample) {
    zsm::Matrix a = random_matrix(rng, -4);
    auto hb = kernel_hilbert_basis(a, Budget::unlimited());
    auto want = oracle::minimal_kernel_solutions(a, kHilbertDegree);
    v.require(truncated(hb.basis) == want, "kernel basis sample " + std::to_string(sample));
    if (hb.complete) ++kernel_complete;

    zsm::Matrix m = random_matrix(rng, 0);
    auto pb = hilbert_basis(m, Budget::unlimited());
    zsm::Matrix doubled = m;
    for (auto& row : doubled) {
      std::size_t n = row.size();
      for (std::size_t j = 0; j < n; ++j) row.push_back(-row[j]);
    }
    std::vector<Vector> flat;
    for (const auto& p : pb.atoms) {
      Vector x = p.left;
      x.insert(x.end(), p.right.begin(), p.right.end());
      flat.push_back(x);
    }
    v.require(truncated(flat) == oracle::minimal_kernel_solutions(doubled, kHilbertDegree),
              "pair basis sample " + std::to_string(sample));
    if (pb.complete) ++pair_complete;
  }
  v.detail << kHilbertSamples << " kernel (" << kernel_complete << " complete) and " << kHilbertSamples
           << " pair bases (" << pair_complete << " complete) match to degree " << kHilbertDegree;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  std::uint64_t seed = gen::base_seed();
  app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 11));
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, Criterion>> criteria{
      {"atoms and Davenport constants match the oracle on [-6,6]", criterion_atoms},
      {"two-length family lengths, distances and successive distance", criterion_prop2},
      {"lengths are progressions with difference d-1", criterion_structure},
      {"exact elasticity and brute-force suprema", criterion_elasticity},
      {"rho_k and lambda_k gaps", criterion_rhok},
      {"pair atoms and relative Davenport constants", criterion_relative_davenport},
      {"chain builders", criterion_chains},
      {"tame growth witness and gap windows", criterion_growth},
      {"counterexample families", criterion_families},
      {"transfer fidelity", criterion_transfer},
      {"Hilbert bases match bounded brute force", criterion_hilbert},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only && only != id) continue;
    Verdict v;
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(id));
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v, rng);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << criteria[i].first << " ["
              << v.detail.str() << "] (" << secs << "s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}

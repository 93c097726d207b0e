#pragma once

#include <string>
#include <vector>

#include "zsm/factorize.hpp"
#include "zsm/hilbert.hpp"

namespace zsm {

struct KappaClass {
  bool singleton = true;
  Int representative = 0;
  Int residue = 0;  // modulo KappaSystem::modulus, meaningful for residue classes
  friend bool operator==(const KappaClass&, const KappaClass&) = default;
};

struct KappaSystem {
  std::vector<Int> negatives;  // sorted
  Int modulus = 1;             // lcm of the negative magnitudes
  Int bound = 0;               // positives below bound are singletons
  std::vector<KappaClass> classes;

  // index of the class containing the positive member g
  std::size_t class_of(Int g) const;
};

KappaSystem kappa_classes(const GroundSpec& spec);

struct KappaGenerator {
  std::vector<Count> classes;  // exponent vector over KappaSystem::classes
  Sequence lift;               // positive part built from representatives
  Sequence atom;               // lift times a negative completion
};

// Negatives R with lift * R an atom, or an empty sequence when none exists.
Sequence negative_completion(const Sequence& lift, const std::vector<Int>& negatives, Meter& meter);

std::vector<KappaGenerator> kappa_generators(const GroundSpec& spec, const Budget& budget = Budget());
std::vector<KappaGenerator> kappa_generators(const KappaSystem& system, const GroundSpec& spec,
                                             const Budget& budget = Budget());

struct ElasticityReport {
  Rational rho;
  std::string accepted;  // "true", "false" or "unknown"
  std::string route;     // "finite" or "kappa"
  std::size_t kappa_classes = 0;
  std::size_t generators = 0;
  std::size_t pair_atoms = 0;
  bool complete = true;
};

ElasticityReport exact_elasticity(const GroundSpec& spec, const Budget& budget = Budget());

struct RhoK {
  Count k = 0;
  LengthSet union_of_lengths;  // V_k
  Count rho = 0;
  Count lambda = 0;
  std::size_t elements = 0;    // distinct products of k atoms
};

RhoK rho_k_report(const std::vector<Int>& ground, Count k, const Budget& budget = Budget());
Count rho_k(const std::vector<Int>& ground, Count k, const Budget& budget = Budget());
Count lambda_k(const std::vector<Int>& ground, Count k, const Budget& budget = Budget());
LengthSet v_k(const std::vector<Int>& ground, Count k, const Budget& budget = Budget());

}  // namespace zsm

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zsm/error.hpp"

namespace zsm {

using Int = std::int64_t;
using Count = std::int64_t;

Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
Int gcd(Int a, Int b);
Int lcm(Int a, Int b);

// Z when modulus == 0, otherwise Z/nZ.
class Ambient {
 public:
  Ambient() = default;
  static Ambient integers() { return Ambient(); }
  static Ambient cyclic(Int n);

  bool is_cyclic() const { return modulus_ != 0; }
  Int modulus() const { return modulus_; }
  Int normalize(Int g) const;
  Int add(Int a, Int b) const;
  std::string to_string() const;

  friend bool operator==(const Ambient&, const Ambient&) = default;
  friend auto operator<=>(const Ambient&, const Ambient&) = default;

 private:
  Int modulus_ = 0;
};

struct Term {
  Int value;
  Count count;
  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

// Finite multiset of ambient elements; terms kept sorted by value.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(Ambient a) : ambient_(a) {}
  Sequence(std::initializer_list<Term> terms, Ambient a = Ambient());

  static Sequence parse(std::string_view text, Ambient a = Ambient());
  std::string to_string() const;

  const Ambient& ambient() const { return ambient_; }
  const std::vector<Term>& terms() const { return terms_; }

  void add(Int g, Count c = 1);
  Count count(Int g) const;
  Count length() const { return length_; }
  bool empty() const { return terms_.empty(); }
  std::vector<Int> support() const;
  Int sum() const;

  bool divides(const Sequence& other) const;
  Sequence operator*(const Sequence& other) const;
  Sequence& operator*=(const Sequence& other);
  // this / other; throws InvalidInput when other does not divide this
  Sequence quotient(const Sequence& other) const;
  Sequence power(Count k) const;
  Sequence negated() const;

  Sequence positive_part() const;
  Sequence negative_part() const;

  friend bool operator==(const Sequence&, const Sequence&) = default;
  friend std::strong_ordering operator<=>(const Sequence& a, const Sequence& b);

 private:
  Ambient ambient_;
  std::vector<Term> terms_;
  Count length_ = 0;
};

Int sigma(const Sequence& s);

struct SignSplit {
  Sequence positive;
  Sequence negative;
  Count zeros = 0;
};
SignSplit split_signs(const Sequence& s);

// Sums of nonempty subsequences, or of size-k subsequences when k is given.
std::set<Int> subsequence_sums(const Sequence& s, std::optional<Count> k = std::nullopt);

// No nonempty zero-sum subsequence (the usual notion).
bool is_zero_sum_free(const Sequence& s);

struct Progression {
  Int start;
  Int step;
  friend bool operator==(const Progression&, const Progression&) = default;
};

// Finite set together with finitely many upward progressions {start + step*k : k >= 0}.
class GroundSpec {
 public:
  GroundSpec() = default;
  GroundSpec(std::set<Int> finite, std::vector<Progression> aps);
  static GroundSpec from_list(const std::vector<Int>& values);

  const std::set<Int>& finite_part() const { return finite_; }
  const std::vector<Progression>& progressions() const { return aps_; }

  bool contains(Int g) const;
  bool is_finite() const { return aps_.empty(); }
  bool has_positive() const;
  bool has_negative() const;
  bool condensed() const;
  Int max_member_bound() const;  // max of finite part and progression starts
  std::vector<Int> negatives() const;
  std::vector<Int> members() const;  // requires is_finite()
  std::string to_string() const;

 private:
  std::set<Int> finite_;
  std::vector<Progression> aps_;
};

std::vector<Int> spec_members(const GroundSpec& spec, Int lo, Int hi);

class Factorization {
 public:
  Factorization() = default;
  explicit Factorization(Ambient a) : product_(a) {}
  static Factorization of(const std::vector<Sequence>& atoms, Ambient a = Ambient());

  void add(const Sequence& atom, Count c = 1);
  const std::vector<std::pair<Sequence, Count>>& atoms() const { return atoms_; }
  const Sequence& product() const { return product_; }
  Count length() const { return length_; }
  Count multiplicity(const Sequence& atom) const;
  bool contains(const Sequence& atom) const { return multiplicity(atom) > 0; }
  // removes one copy; throws when absent
  Factorization without(const Sequence& atom) const;
  Factorization operator*(const Factorization& other) const;
  std::vector<Sequence> expanded() const;
  std::string to_string() const;

  friend bool operator==(const Factorization& a, const Factorization& b) { return a.atoms_ == b.atoms_ && a.product_.ambient() == b.product_.ambient(); }
  friend std::strong_ordering operator<=>(const Factorization& a, const Factorization& b);

 private:
  std::vector<std::pair<Sequence, Count>> atoms_;
  Sequence product_;
  Count length_ = 0;
};

Factorization factorization_gcd(const Factorization& a, const Factorization& b);
Count distance(const Factorization& a, const Factorization& b);

}  // namespace zsm

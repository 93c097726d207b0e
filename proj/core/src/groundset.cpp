#include "zsm/groundset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace zsm {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

Int gcd(Int a, Int b) { return std::gcd(a, b); }

Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  Int g = std::gcd(a, b);
  return checked_mul(std::abs(a) / g, std::abs(b));
}

Ambient Ambient::cyclic(Int n) {
  if (n < 1) throw InvalidInput("cyclic modulus must be at least 1");
  Ambient a;
  a.modulus_ = n;
  return a;
}

Int Ambient::normalize(Int g) const {
  if (modulus_ == 0) return g;
  Int r = g % modulus_;
  return r < 0 ? r + modulus_ : r;
}

Int Ambient::add(Int a, Int b) const {
  if (modulus_ == 0) return checked_add(a, b);
  return normalize(normalize(a) + normalize(b));
}

std::string Ambient::to_string() const {
  return modulus_ == 0 ? std::string("Z") : "Z/" + std::to_string(modulus_) + "Z";
}

Sequence::Sequence(std::initializer_list<Term> terms, Ambient a) : ambient_(a) {
  for (const auto& t : terms) add(t.value, t.count);
}

void Sequence::add(Int g, Count c) {
  if (c < 0) throw InvalidInput("negative multiplicity");
  if (c == 0) return;
  g = ambient_.normalize(g);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), g,
                             [](const Term& t, Int v) { return t.value < v; });
  if (it != terms_.end() && it->value == g) {
    it->count = checked_add(it->count, c);
  } else {
    terms_.insert(it, Term{g, c});
  }
  length_ = checked_add(length_, c);
}

Count Sequence::count(Int g) const {
  g = ambient_.normalize(g);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), g,
                             [](const Term& t, Int v) { return t.value < v; });
  return (it != terms_.end() && it->value == g) ? it->count : 0;
}

std::vector<Int> Sequence::support() const {
  std::vector<Int> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.value);
  return out;
}

Int Sequence::sum() const {
  Int s = 0;
  if (ambient_.is_cyclic()) {
    Int n = ambient_.modulus();
    for (const auto& t : terms_) s = (s + (t.value % n) * (t.count % n)) % n;
    return s;
  }
  for (const auto& t : terms_) s = checked_add(s, checked_mul(t.value, t.count));
  return s;
}

bool Sequence::divides(const Sequence& other) const {
  if (ambient_ != other.ambient_) return false;
  auto it = other.terms_.begin();
  for (const auto& t : terms_) {
    while (it != other.terms_.end() && it->value < t.value) ++it;
    if (it == other.terms_.end() || it->value != t.value || it->count < t.count) return false;
  }
  return true;
}

Sequence Sequence::operator*(const Sequence& other) const {
  Sequence r = *this;
  r *= other;
  return r;
}

Sequence& Sequence::operator*=(const Sequence& other) {
  if (ambient_ != other.ambient_) throw InvalidInput("sequences over different ambient groups");
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->value < b->value)) {
      merged.push_back(*a++);
    } else if (a == terms_.end() || b->value < a->value) {
      merged.push_back(*b++);
    } else {
      merged.push_back(Term{a->value, checked_add(a->count, b->count)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  length_ = checked_add(length_, other.length_);
  return *this;
}

Sequence Sequence::quotient(const Sequence& other) const {
  if (!other.divides(*this)) throw InvalidInput("quotient: " + other.to_string() + " does not divide " + to_string());
  Sequence r(ambient_);
  auto b = other.terms_.begin();
  for (const auto& t : terms_) {
    Count c = t.count;
    if (b != other.terms_.end() && b->value == t.value) c -= (b++)->count;
    if (c > 0) r.terms_.push_back(Term{t.value, c});
  }
  r.length_ = length_ - other.length_;
  return r;
}

Sequence Sequence::power(Count k) const {
  if (k < 0) throw InvalidInput("negative power");
  Sequence r(ambient_);
  if (k == 0) return r;
  for (const auto& t : terms_) r.terms_.push_back(Term{t.value, checked_mul(t.count, k)});
  r.length_ = checked_mul(length_, k);
  return r;
}

Sequence Sequence::negated() const {
  Sequence r(ambient_);
  for (const auto& t : terms_) r.add(-t.value, t.count);
  return r;
}

Sequence Sequence::positive_part() const {
  if (ambient_.is_cyclic()) throw UnsupportedAmbient("positive part needs the integers");
  Sequence r(ambient_);
  for (const auto& t : terms_)
    if (t.value > 0) r.add(t.value, t.count);
  return r;
}

Sequence Sequence::negative_part() const {
  if (ambient_.is_cyclic()) throw UnsupportedAmbient("negative part needs the integers");
  Sequence r(ambient_);
  for (const auto& t : terms_)
    if (t.value < 0) r.add(t.value, t.count);
  return r;
}

std::strong_ordering operator<=>(const Sequence& a, const Sequence& b) {
  if (auto c = a.ambient_ <=> b.ambient_; c != 0) return c;
  return a.terms_ <=> b.terms_;
}

namespace {

Int parse_int(std::string_view s, const char* what) {
  Int v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last || first == last)
    throw InvalidInput(std::string("cannot parse ") + what + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

Sequence Sequence::parse(std::string_view text, Ambient a) {
  Sequence s(a);
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view tok = text.substr(i, j - i);
    auto caret = tok.find('^');
    std::string_view head = tok.substr(0, caret);
    if (head.size() >= 2 && head.front() == '(' && head.back() == ')') head = head.substr(1, head.size() - 2);
    Int g = parse_int(head, "term");
    Count c = 1;
    if (caret != std::string_view::npos) {
      c = parse_int(tok.substr(caret + 1), "exponent");
      if (c < 1) throw InvalidInput("exponent must be at least 1");
    }
    s.add(g, c);
    i = j;
  }
  return s;
}

std::string Sequence::to_string() const {
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += ' ';
    out += std::to_string(t.value);
    if (t.count != 1) out += '^' + std::to_string(t.count);
  }
  return out;
}

Int sigma(const Sequence& s) { return s.sum(); }

SignSplit split_signs(const Sequence& s) {
  if (s.ambient().is_cyclic()) throw UnsupportedAmbient("split_signs needs the integers");
  SignSplit out{s.positive_part(), s.negative_part(), s.count(0)};
  return out;
}

namespace {

// reach[i] marks sums lo + i attained by nonempty subsequences
std::set<Int> nonempty_sums_dense(const Sequence& s, Int lo, Int hi) {
  const auto width = static_cast<std::size_t>(hi - lo + 1);
  std::vector<char> reach(width, 0), next;
  for (const auto& t : s.terms()) {
    for (Count c = 0; c < t.count; ++c) {
      next = reach;
      const Int g = t.value;
      for (std::size_t i = 0; i < width; ++i) {
        if (!reach[i]) continue;
        Int v = lo + static_cast<Int>(i) + g;
        if (v >= lo && v <= hi) next[static_cast<std::size_t>(v - lo)] = 1;
      }
      next[static_cast<std::size_t>(g - lo)] = 1;
      if (next == reach) break;
      reach.swap(next);
    }
  }
  std::set<Int> out;
  for (std::size_t i = 0; i < width; ++i)
    if (reach[i]) out.insert(lo + static_cast<Int>(i));
  return out;
}

std::set<Int> nonempty_sums_cyclic(const Sequence& s) {
  const Int n = s.ambient().modulus();
  std::vector<char> reach(static_cast<std::size_t>(n), 0), next;
  for (const auto& t : s.terms()) {
    for (Count c = 0; c < t.count && c < n; ++c) {
      next = reach;
      for (Int i = 0; i < n; ++i)
        if (reach[static_cast<std::size_t>(i)]) next[static_cast<std::size_t>((i + t.value) % n)] = 1;
      next[static_cast<std::size_t>(t.value)] = 1;
      if (next == reach) break;
      reach.swap(next);
    }
  }
  std::set<Int> out;
  for (Int i = 0; i < n; ++i)
    if (reach[static_cast<std::size_t>(i)]) out.insert(i);
  return out;
}

std::set<Int> sized_sums(const Sequence& s, Count k) {
  const Ambient& amb = s.ambient();
  if (k < 0 || k > s.length()) return {};
  // by_size[j] = sums of subsequences with exactly j terms
  std::vector<std::set<Int>> by_size(static_cast<std::size_t>(k + 1));
  by_size[0].insert(0);
  for (const auto& t : s.terms()) {
    std::vector<std::set<Int>> next(by_size.size());
    for (std::size_t j = 0; j < by_size.size(); ++j) {
      for (Int v : by_size[j]) {
        for (Count c = 0; c <= t.count && static_cast<Count>(j) + c <= k; ++c) {
          Int w = amb.is_cyclic() ? amb.normalize(v + amb.normalize(c) * t.value) : checked_add(v, checked_mul(c, t.value));
          next[j + static_cast<std::size_t>(c)].insert(w);
        }
      }
    }
    by_size.swap(next);
  }
  return by_size[static_cast<std::size_t>(k)];
}

}  // namespace

std::set<Int> subsequence_sums(const Sequence& s, std::optional<Count> k) {
  if (k) return sized_sums(s, *k);
  if (s.empty()) return {};
  if (s.ambient().is_cyclic()) return nonempty_sums_cyclic(s);
  Int lo = 0, hi = 0;
  for (const auto& t : s.terms()) {
    Int part = checked_mul(t.value, t.count);
    if (part < 0) lo = checked_add(lo, part);
    else hi = checked_add(hi, part);
  }
  if (hi - lo <= (Int{1} << 24)) return nonempty_sums_dense(s, lo, hi);
  std::set<Int> reach;
  for (const auto& t : s.terms()) {
    for (Count c = 0; c < t.count; ++c) {
      std::set<Int> next = reach;
      for (Int v : reach) next.insert(checked_add(v, t.value));
      next.insert(t.value);
      if (next == reach) break;
      reach.swap(next);
    }
  }
  return reach;
}

bool is_zero_sum_free(const Sequence& s) { return subsequence_sums(s).count(0) == 0; }

GroundSpec::GroundSpec(std::set<Int> finite, std::vector<Progression> aps)
    : finite_(std::move(finite)), aps_(std::move(aps)) {
  for (const auto& p : aps_)
    if (p.step <= 0)
      throw InvalidInput("progression step must be positive; downward-infinite ground sets are not supported");
  std::sort(aps_.begin(), aps_.end(), [](const Progression& a, const Progression& b) {
    return std::pair(a.start, a.step) < std::pair(b.start, b.step);
  });
  aps_.erase(std::unique(aps_.begin(), aps_.end()), aps_.end());
}

GroundSpec GroundSpec::from_list(const std::vector<Int>& values) {
  return GroundSpec(std::set<Int>(values.begin(), values.end()), {});
}

bool GroundSpec::contains(Int g) const {
  if (finite_.count(g)) return true;
  for (const auto& p : aps_)
    if (g >= p.start && (g - p.start) % p.step == 0) return true;
  return false;
}

bool GroundSpec::has_positive() const {
  if (!aps_.empty()) return true;
  return !finite_.empty() && *finite_.rbegin() > 0;
}

bool GroundSpec::has_negative() const {
  if (!finite_.empty() && *finite_.begin() < 0) return true;
  for (const auto& p : aps_)
    if (p.start < 0) return true;
  return false;
}

bool GroundSpec::condensed() const {
  if (has_positive() && has_negative()) return true;
  if (!aps_.empty()) return false;
  return std::all_of(finite_.begin(), finite_.end(), [](Int g) { return g == 0; });
}

Int GroundSpec::max_member_bound() const {
  Int m = finite_.empty() ? 0 : *finite_.rbegin();
  for (const auto& p : aps_) m = std::max(m, p.start);
  return m;
}

std::vector<Int> GroundSpec::negatives() const {
  Int lo = 0;
  if (!finite_.empty()) lo = std::min(lo, *finite_.begin());
  for (const auto& p : aps_) lo = std::min(lo, p.start);
  if (lo >= 0) return {};
  return spec_members(*this, lo, -1);
}

std::vector<Int> GroundSpec::members() const {
  if (!is_finite()) throw InvalidInput("ground set is infinite");
  return {finite_.begin(), finite_.end()};
}

std::string GroundSpec::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (Int g : finite_) {
    if (!first) os << ',';
    os << g;
    first = false;
  }
  os << '}';
  for (const auto& p : aps_) os << " u {" << p.start << '+' << p.step << "k}";
  return os.str();
}

std::vector<Int> spec_members(const GroundSpec& spec, Int lo, Int hi) {
  if (lo > hi) throw InvalidInput("spec_members: lo > hi");
  std::set<Int> out;
  for (auto it = spec.finite_part().lower_bound(lo); it != spec.finite_part().end() && *it <= hi; ++it) out.insert(*it);
  for (const auto& p : spec.progressions()) {
    Int k0 = 0;
    if (lo > p.start) k0 = (lo - p.start + p.step - 1) / p.step;
    for (Int v = checked_add(p.start, checked_mul(k0, p.step)); v <= hi; v = checked_add(v, p.step)) out.insert(v);
  }
  return {out.begin(), out.end()};
}

Factorization Factorization::of(const std::vector<Sequence>& atoms, Ambient a) {
  Factorization z(a);
  for (const auto& u : atoms) z.add(u);
  return z;
}

void Factorization::add(const Sequence& atom, Count c) {
  if (c <= 0) return;
  if (atom.ambient() != product_.ambient()) throw InvalidInput("atom over a different ambient group");
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom,
                             [](const auto& p, const Sequence& s) { return p.first < s; });
  if (it != atoms_.end() && it->first == atom) {
    it->second = checked_add(it->second, c);
  } else {
    atoms_.insert(it, {atom, c});
  }
  product_ *= atom.power(c);
  length_ = checked_add(length_, c);
}

Count Factorization::multiplicity(const Sequence& atom) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom,
                             [](const auto& p, const Sequence& s) { return p.first < s; });
  return (it != atoms_.end() && it->first == atom) ? it->second : 0;
}

Factorization Factorization::without(const Sequence& atom) const {
  Factorization r(product_.ambient());
  bool removed = false;
  for (const auto& [u, c] : atoms_) {
    Count k = c;
    if (!removed && u == atom) {
      --k;
      removed = true;
    }
    r.add(u, k);
  }
  if (!removed) throw InvalidInput("factorization does not contain " + atom.to_string());
  return r;
}

Factorization Factorization::operator*(const Factorization& other) const {
  Factorization r = *this;
  for (const auto& [u, c] : other.atoms_) r.add(u, c);
  return r;
}

std::vector<Sequence> Factorization::expanded() const {
  std::vector<Sequence> out;
  for (const auto& [u, c] : atoms_)
    for (Count i = 0; i < c; ++i) out.push_back(u);
  return out;
}

std::string Factorization::to_string() const {
  std::string out;
  for (const auto& [u, c] : atoms_) {
    if (!out.empty()) out += ' ';
    out += '[' + u.to_string() + ']';
    if (c != 1) out += '^' + std::to_string(c);
  }
  return out.empty() ? std::string("[]") : out;
}

std::strong_ordering operator<=>(const Factorization& a, const Factorization& b) {
  if (auto c = a.length_ <=> b.length_; c != 0) return c;
  return a.atoms_ <=> b.atoms_;
}

Factorization factorization_gcd(const Factorization& a, const Factorization& b) {
  Factorization g(a.product().ambient());
  auto i = a.atoms().begin();
  auto j = b.atoms().begin();
  while (i != a.atoms().end() && j != b.atoms().end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      g.add(i->first, std::min(i->second, j->second));
      ++i;
      ++j;
    }
  }
  return g;
}

Count distance(const Factorization& a, const Factorization& b) {
  Count common = 0;
  auto i = a.atoms().begin();
  auto j = b.atoms().begin();
  while (i != a.atoms().end() && j != b.atoms().end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      common += std::min(i->second, j->second);
      ++i;
      ++j;
    }
  }
  return std::max(a.length() - common, b.length() - common);
}

}  // namespace zsm

#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace robsub {

using ElementId = int;

// Error taxonomy. Everything thrown by the library derives from Error so
// callers can catch one type; the subtypes map to distinct failure classes
// (and to distinct process exit codes in the command line tool).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Malformed input: bad dimensions, negative weights, inconsistent universes.
struct ValidationError : Error {
  using Error::Error;
};
// An element id outside the ground set.
struct OutOfRangeError : Error {
  using Error::Error;
};
// A numeric argument outside the function's domain (e.g. x not in [0,1]^n).
struct DomainError : Error {
  using Error::Error;
};
// A function without the structure an operation needs (e.g. identically zero
// where curvature is requested).
struct DegenerateFunctionError : Error {
  using Error::Error;
};
// Empty feasible region, or a target no set can meet.
struct InfeasibleError : Error {
  using Error::Error;
};
// A combination the library deliberately does not implement.
struct UnsupportedError : Error {
  using Error::Error;
};
// Continuous relaxation produced a point no prefix of which is feasible.
struct RoundingError : Error {
  using Error::Error;
};
// A cover target exceeds what the ground set can provide.
struct CoverageError : Error {
  using Error::Error;
};
// Exhaustive enumeration would exceed the configured budget.
struct OracleBudgetError : Error {
  using Error::Error;
};

// A subset of {0, ..., n-1}. Stores a membership byte per element; the
// universe size is fixed at construction and checked on every access.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(int universe_size) : member_(check_universe(universe_size), 0) {}

  static ElementSet of(int universe_size, std::initializer_list<ElementId> ids) {
    ElementSet s(universe_size);
    for (ElementId j : ids) s.add(j);
    return s;
  }
  static ElementSet from_ids(int universe_size, const std::vector<ElementId>& ids) {
    ElementSet s(universe_size);
    for (ElementId j : ids) s.add(j);
    return s;
  }
  static ElementSet from_mask(int universe_size, std::uint64_t mask) {
    ElementSet s(universe_size);
    for (int j = 0; j < universe_size; ++j)
      if (mask >> j & 1u) s.add(j);
    return s;
  }
  static ElementSet full(int universe_size) {
    ElementSet s(universe_size);
    for (int j = 0; j < universe_size; ++j) s.member_[j] = 1;
    s.count_ = universe_size;
    return s;
  }

  int universe_size() const { return static_cast<int>(member_.size()); }
  int size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(ElementId j) const {
    check_id(j);
    return member_[static_cast<std::size_t>(j)] != 0;
  }
  void add(ElementId j) {
    check_id(j);
    auto& m = member_[static_cast<std::size_t>(j)];
    if (!m) {
      m = 1;
      ++count_;
    }
  }
  void remove(ElementId j) {
    check_id(j);
    auto& m = member_[static_cast<std::size_t>(j)];
    if (m) {
      m = 0;
      --count_;
    }
  }
  void toggle(ElementId j) {
    check_id(j);
    if (member_[static_cast<std::size_t>(j)])
      remove(j);
    else
      add(j);
  }
  ElementSet with(ElementId j) const {
    ElementSet s = *this;
    s.add(j);
    return s;
  }
  ElementSet without(ElementId j) const {
    ElementSet s = *this;
    s.remove(j);
    return s;
  }
  ElementSet complement() const {
    ElementSet s(universe_size());
    for (int j = 0; j < universe_size(); ++j)
      if (!member_[static_cast<std::size_t>(j)]) s.add(j);
    return s;
  }

  // Member ids in ascending order.
  std::vector<ElementId> ids() const {
    std::vector<ElementId> out;
    out.reserve(static_cast<std::size_t>(count_));
    for (int j = 0; j < universe_size(); ++j)
      if (member_[static_cast<std::size_t>(j)]) out.push_back(j);
    return out;
  }

  bool is_subset_of(const ElementSet& o) const {
    require_same_universe(o);
    for (int j = 0; j < universe_size(); ++j)
      if (member_[static_cast<std::size_t>(j)] && !o.member_[static_cast<std::size_t>(j)]) return false;
    return true;
  }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.member_ == b.member_;
  }
  friend bool operator!=(const ElementSet& a, const ElementSet& b) { return !(a == b); }

  // Total order used for deterministic tie-breaking: compares the sorted id
  // sequences lexicographically.
  static bool lex_less(const ElementSet& a, const ElementSet& b) {
    return a.ids() < b.ids();
  }

  std::string str() const {
    std::string out = "{";
    bool first = true;
    for (int j = 0; j < universe_size(); ++j) {
      if (!member_[static_cast<std::size_t>(j)]) continue;
      if (!first) out += ",";
      out += std::to_string(j);
      first = false;
    }
    out += "}";
    return out;
  }

 private:
  static int check_universe(int n) {
    if (n < 0) throw ValidationError("universe size must be nonnegative");
    return n;
  }
  void check_id(ElementId j) const {
    if (j < 0 || j >= universe_size())
      throw OutOfRangeError("element id " + std::to_string(j) + " outside universe of size " +
                            std::to_string(universe_size()));
  }
  void require_same_universe(const ElementSet& o) const {
    if (universe_size() != o.universe_size())
      throw ValidationError("sets live in different universes");
  }

  std::vector<std::uint8_t> member_;
  int count_ = 0;
};

// A finite ground set with optional element labels.
struct GroundSet {
  int n = 0;
  std::vector<std::string> labels;  // empty, or exactly n entries

  GroundSet() = default;
  explicit GroundSet(int size) : n(size) { validate(); }
  GroundSet(int size, std::vector<std::string> names) : n(size), labels(std::move(names)) {
    validate();
  }

  void validate() const {
    if (n < 0) throw ValidationError("ground set size must be nonnegative");
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
      throw ValidationError("label count must match ground set size");
  }
};

}  // namespace robsub

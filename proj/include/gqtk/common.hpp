#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gqtk {

/// Subset of a carrier of at most 64 items (points of a space or arrows of a groupoid).
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxCarrier = 64;

inline constexpr Mask bit(std::size_t i) { return Mask{1} << i; }

inline constexpr Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

inline constexpr bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }

inline int popcount(Mask m) { return std::popcount(m); }

template <typename Fn>
void for_each_bit(Mask m, Fn&& fn) {
  while (m != 0) {
    fn(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
}

inline std::vector<std::size_t> bits_of(Mask m) {
  std::vector<std::size_t> out;
  for_each_bit(m, [&](std::size_t i) { out.push_back(i); });
  return out;
}

/// Canonical order on subsets: by cardinality, then by numeric value.
/// It is a linear extension of inclusion, so sorted families list smaller sets first.
inline bool canonical_less(Mask a, Mask b) {
  const int pa = popcount(a), pb = popcount(b);
  return pa != pb ? pa < pb : a < b;
}

/// A failed check: the axiom or condition name plus a human-readable witness.
struct Violation {
  std::string code;
  std::string witness;
};

/// Outcome of a single predicate with the first counterexample found.
struct Verdict {
  bool holds = true;
  std::string witness;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string w) { return {false, std::move(w)}; }
  explicit operator bool() const { return holds; }
};

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Raised when a structure fails its validator; carries every violation found.
class ValidationError : public Error {
 public:
  ValidationError(std::string code, std::vector<Violation> violations)
      : Error(std::move(code), summarize(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& vs) {
    std::string s;
    for (const auto& v : vs) {
      if (!s.empty()) s += "; ";
      s += v.code + " (" + v.witness + ")";
    }
    return s;
  }

  std::vector<Violation> violations_;
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& message) : Error("BudgetExceeded", message) {}
};

/// Malformed input: unknown names, out-of-range indices, bad JSON shape.
class InputError : public Error {
 public:
  InputError(std::string code, const std::string& message) : Error(std::move(code), message) {}
};

}  // namespace gqtk

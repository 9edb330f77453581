#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace selmer {

// Normalized Hecke eigenvalues lambda(p) of a holomorphic eigenform, so that
// the Deligne bound reads |lambda(p)| <= 2. Immutable after construction.
class CoefficientTable {
 public:
  struct Entry {
    std::uint64_t p;
    double lambda;
  };

  // Validates every invariant; throws FormatError / DeligneBoundError /
  // GapError. `coverage` defaults to the last listed prime.
  CoefficientTable(int weight, std::vector<Entry> entries,
                   std::optional<std::uint64_t> coverage = std::nullopt);

  int weight() const noexcept { return weight_; }
  // Every prime <= coverage() has an entry.
  std::uint64_t coverage() const noexcept { return coverage_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  // nullopt when p is not a listed prime.
  std::optional<double> lambda(std::uint64_t p) const noexcept;

  friend bool operator==(const CoefficientTable& a, const CoefficientTable& b) {
    if (a.weight_ != b.weight_ || a.coverage_ != b.coverage_ ||
        a.entries_.size() != b.entries_.size()) {
      return false;
    }
    for (std::size_t i = 0; i < a.entries_.size(); ++i) {
      if (a.entries_[i].p != b.entries_[i].p ||
          a.entries_[i].lambda != b.entries_[i].lambda) {
        return false;
      }
    }
    return true;
  }

 private:
  int weight_;
  std::uint64_t coverage_;
  std::vector<Entry> entries_;
};

// Text format:
//   # comment lines anywhere; "# coverage: N" declares the gap-free bound
//   p,lambda        (normalized)   or   p,a_raw   (integer coefficients a(p))
//   2,-0.53033008588991
//   3,0.59873743975227
//   ...
// a_raw rows are normalized by p^((weight-1)/2).
CoefficientTable load_coefficients(const std::filesystem::path& path, int weight);
CoefficientTable parse_coefficients(std::istream& in, int weight);

// Writes the normalized form with 17 significant digits.
void write_coefficients(std::ostream& out, const CoefficientTable& table);

}  // namespace selmer

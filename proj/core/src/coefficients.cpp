#include "selmer/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "selmer/error.hpp"
#include "selmer/primes.hpp"

namespace selmer {

namespace {

constexpr double kDeligneSlack = 1e-12;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_prime_sorted(const std::vector<std::uint64_t>& primes, std::uint64_t n) {
  return std::binary_search(primes.begin(), primes.end(), n);
}

}  // namespace

CoefficientTable::CoefficientTable(int weight, std::vector<Entry> entries,
                                   std::optional<std::uint64_t> coverage)
    : weight_(weight), entries_(std::move(entries)) {
  if (weight <= 0 || weight % 2 != 0) {
    throw ValidationError("weight must be a positive even integer");
  }
  std::uint64_t max_p = entries_.empty() ? 0 : entries_.back().p;
  coverage_ = coverage.value_or(max_p);
  const std::uint64_t sieve_to = std::max(max_p, coverage_);
  const auto primes = primes_in_range(0, sieve_to).primes;

  std::size_t next_prime = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (!is_prime_sorted(primes, e.p)) {
      throw FormatError("index " + std::to_string(e.p) + " is not prime", i + 1);
    }
    if (i > 0 && e.p <= entries_[i - 1].p) {
      throw FormatError("primes not strictly ascending", i + 1);
    }
    if (!(std::fabs(e.lambda) <= 2.0 + kDeligneSlack)) {
      throw DeligneBoundError(e.p, e.lambda);
    }
    while (next_prime < primes.size() && primes[next_prime] < e.p) {
      if (primes[next_prime] <= coverage_) {
        throw GapError(primes[next_prime], coverage_);
      }
      ++next_prime;
    }
    ++next_prime;
  }
  if (next_prime < primes.size() && primes[next_prime] <= coverage_) {
    throw GapError(primes[next_prime], coverage_);
  }
}

std::optional<double> CoefficientTable::lambda(std::uint64_t p) const noexcept {
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), p,
      [](const Entry& e, std::uint64_t v) { return e.p < v; });
  if (it == entries_.end() || it->p != p) return std::nullopt;
  return it->lambda;
}

CoefficientTable parse_coefficients(std::istream& in, int weight) {
  std::vector<CoefficientTable::Entry> entries;
  std::optional<std::uint64_t> coverage;
  std::optional<bool> raw;
  std::vector<std::size_t> line_of_entry;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      std::string body = trim(t.substr(1));
      if (body.rfind("coverage", 0) == 0) {
        body = trim(body.substr(8));
        if (!body.empty() && (body[0] == ':' || body[0] == '=')) {
          body = trim(body.substr(1));
        }
        try {
          coverage = std::stoull(body);
        } catch (const std::exception&) {
          throw FormatError("bad coverage declaration", line_no);
        }
      }
      continue;
    }
    if (!raw) {
      if (t == "p,lambda") {
        raw = false;
      } else if (t == "p,a_raw") {
        raw = true;
      } else {
        throw FormatError("expected header 'p,lambda' or 'p,a_raw'", line_no);
      }
      continue;
    }
    const auto comma = t.find(',');
    if (comma == std::string::npos) throw FormatError("expected 'prime,value'", line_no);
    std::uint64_t p = 0;
    double value = 0.0;
    try {
      std::size_t used = 0;
      const std::string ps = trim(t.substr(0, comma));
      p = std::stoull(ps, &used);
      if (used != ps.size() || ps[0] == '-') throw std::invalid_argument("p");
      const std::string vs = trim(t.substr(comma + 1));
      value = std::stod(vs, &used);
      if (used != vs.size()) throw std::invalid_argument("value");
    } catch (const std::exception&) {
      throw FormatError("unparseable row '" + t + "'", line_no);
    }
    if (*raw) value /= std::pow(static_cast<double>(p), (weight - 1) / 2.0);
    entries.push_back({p, value});
    line_of_entry.push_back(line_no);
  }
  if (!raw) throw FormatError("missing header", line_no);

  try {
    return CoefficientTable(weight, std::move(entries), coverage);
  } catch (const FormatError& e) {
    // Re-anchor the entry index onto the file line number.
    const std::size_t idx = e.line() - 1;
    const std::string msg = e.what();
    const auto colon = msg.find(": ");
    throw FormatError(colon == std::string::npos ? msg : msg.substr(colon + 2),
                      idx < line_of_entry.size() ? line_of_entry[idx] : e.line());
  }
}

CoefficientTable load_coefficients(const std::filesystem::path& path, int weight) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open coefficient file " + path.string());
  return parse_coefficients(in, weight);
}

void write_coefficients(std::ostream& out, const CoefficientTable& table) {
  out << "# weight: " << table.weight() << "\n";
  out << "# coverage: " << table.coverage() << "\n";
  out << "p,lambda\n";
  char buf[64];
  for (const auto& e : table.entries()) {
    std::snprintf(buf, sizeof buf, "%.17g", e.lambda);
    out << e.p << ',' << buf << '\n';
  }
}

}  // namespace selmer

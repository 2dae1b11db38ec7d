#include "classsieve/local_conditions.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>

#include "classsieve/arithmetic.hpp"

namespace classsieve {

LocalConditions LocalConditions::normalized() const {
  LocalConditions out = *this;
  std::sort(out.ramified.begin(), out.ramified.end());
  std::sort(out.split.begin(), out.split.end());
  std::sort(out.inert.begin(), out.inert.end());
  return out;
}

std::vector<std::int64_t> LocalConditions::all_primes() const {
  std::vector<std::int64_t> all;
  all.insert(all.end(), ramified.begin(), ramified.end());
  all.insert(all.end(), split.begin(), split.end());
  all.insert(all.end(), inert.begin(), inert.end());
  std::sort(all.begin(), all.end());
  return all;
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::ell_not_prime: return "ell_not_prime";
    case Violation::Kind::ell_below_five: return "ell_below_five";
    case Violation::Kind::not_odd_prime: return "not_odd_prime";
    case Violation::Kind::duplicate: return "duplicate";
    case Violation::Kind::overlap: return "overlap";
    case Violation::Kind::contains_ell: return "contains_ell";
    case Violation::Kind::ramified_one_mod_ell: return "ramified_one_mod_ell";
    case Violation::Kind::split_minus_one_mod_ell: return "split_minus_one_mod_ell";
    case Violation::Kind::inert_one_mod_ell_three_mod_four: return "inert_one_mod_ell_three_mod_four";
  }
  return "unknown";
}

std::vector<Violation> validate(const LocalConditions& sigma) {
  std::vector<Violation> out;
  auto report = [&](Violation::Kind kind, std::int64_t p, std::string msg) {
    out.push_back({kind, p, std::move(msg)});
  };
  const std::int64_t ell = sigma.ell;
  const bool ell_prime = ell > 1 && is_prime(static_cast<std::uint64_t>(ell));
  if (!ell_prime || ell == 2) {
    report(Violation::Kind::ell_not_prime, ell, "ell must be an odd prime");
  } else if (ell < 5) {
    report(Violation::Kind::ell_below_five, ell, "ell must be >= 5");
  }

  std::set<std::int64_t> seen;
  auto check_set = [&](const std::vector<std::int64_t>& primes, const char* name) {
    std::set<std::int64_t> local;
    for (std::int64_t q : primes) {
      const std::string tag = std::string(name) + " prime " + std::to_string(q);
      if (q < 3 || !is_prime(static_cast<std::uint64_t>(q))) {
        report(Violation::Kind::not_odd_prime, q, tag + " is not an odd prime");
        continue;
      }
      if (!local.insert(q).second) {
        report(Violation::Kind::duplicate, q, tag + " listed twice");
        continue;
      }
      if (!seen.insert(q).second) report(Violation::Kind::overlap, q, tag + " appears in two sets");
      if (q == ell) report(Violation::Kind::contains_ell, q, tag + " equals ell");
    }
  };
  check_set(sigma.ramified, "ramified");
  check_set(sigma.split, "split");
  check_set(sigma.inert, "inert");

  if (ell_prime && ell > 2) {
    for (std::int64_t q : sigma.ramified) {
      if (q > 0 && q % ell == 1) {
        report(Violation::Kind::ramified_one_mod_ell, q,
               "ramified prime " + std::to_string(q) + " is 1 mod ell (hypothesis 1)");
      }
    }
    for (std::int64_t q : sigma.split) {
      if (q > 0 && q % ell == ell - 1) {
        report(Violation::Kind::split_minus_one_mod_ell, q,
               "split prime " + std::to_string(q) + " is -1 mod ell (hypothesis 2)");
      }
    }
    for (std::int64_t q : sigma.inert) {
      if (q > 0 && q % ell == 1 && q % 4 == 3) {
        report(Violation::Kind::inert_one_mod_ell_three_mod_four, q,
               "inert prime " + std::to_string(q) + " is 1 mod ell and 3 mod 4 (hypothesis 3)");
      }
    }
  }
  return out;
}

void require_valid(const LocalConditions& sigma, bool allow_ell_three) {
  std::string message;
  for (const auto& v : validate(sigma)) {
    if (allow_ell_three && v.kind == Violation::Kind::ell_below_five && v.prime == 3) continue;
    if (!message.empty()) message += "; ";
    message += v.message;
  }
  if (!message.empty()) throw std::invalid_argument("invalid local conditions: " + message);
}

std::vector<std::int64_t> parse_prime_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string token = text.substr(pos, comma - pos);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw std::invalid_argument("malformed prime list entry '" + token + "'");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

}  // namespace classsieve

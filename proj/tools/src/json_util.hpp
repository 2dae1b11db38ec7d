#pragma once

#include <cstdint>
#include <optional>
#include <type_traits>
#include <vector>

#include "classsieve/elliptic.hpp"
#include "classsieve/levels.hpp"
#include "classsieve/local_conditions.hpp"
#include "classsieve/rational.hpp"
#include "json.hpp"

namespace classsieve::cli {

using Json = nlohmann::ordered_json;

/// Integers stay numbers; proper fractions become "a/b" strings.
inline Json to_json(const Rational& r) {
  if (r.is_integer()) return r.num();
  return r.to_string();
}

template <typename T>
Json optional_json(const std::optional<T>& value) {
  if (!value) return nullptr;
  if constexpr (std::is_same_v<T, Rational>) {
    return to_json(*value);
  } else {
    return *value;
  }
}

inline Json sigma_json(const LocalConditions& sigma) {
  return Json{{"ell", sigma.ell},
              {"ramified", sigma.ramified},
              {"split", sigma.split},
              {"inert", sigma.inert}};
}

inline Json bounds_json(const BoundReport& b) {
  return Json{{"q_sigma", b.q_sigma},
              {"n_sigma", optional_json(b.n_sigma)},
              {"index", optional_json(b.index)},
              {"m_sigma", optional_json(b.m_sigma)},
              {"r_sigma", optional_json(b.r_sigma)},
              {"astronomical", b.astronomical},
              {"log10_n_sigma", b.log10_n_sigma},
              {"log10_index", b.log10_index},
              {"log10_m_sigma", b.log10_m_sigma}};
}

inline Json frey_check_json(const FreyCheck& check) {
  Json symbols = Json::array();
  for (const auto& s : check.symbols) {
    symbols.push_back(Json{{"p", s.p}, {"required", s.required}, {"actual", s.actual}});
  }
  return Json{{"evaluated_at", check.d},
              {"parity_applies", check.parity_applies},
              {"parity_ok", check.parity_ok},
              {"ell_applies", check.ell_applies},
              {"ell_symbol", check.ell_symbol},
              {"ell_ok", check.ell_ok},
              {"symbols", symbols},
              {"failing_prime", check.failing_prime == 0 ? Json(nullptr) : Json(check.failing_prime)},
              {"holds", check.holds()}};
}

inline Json hypotheses_json(const CurveHypotheses& h) {
  return Json{{"odd_conductor", h.odd_conductor},
              {"conductor_issues", h.conductor_issues},
              {"s_tilde", h.sets.s_tilde},
              {"t_plus", h.sets.t_plus},
              {"t_minus", h.sets.t_minus},
              {"s_tilde_empty", h.sets.s_tilde.empty()},
              {"t_primes_one_mod_ell", h.t_primes_one_mod_ell},
              {"ord_ell_j", h.ord_ell_j == kInfiniteValuation ? Json("inf") : Json(h.ord_ell_j)},
              {"ord_ell_j_nonnegative", h.ord_ell_j_nonnegative()},
              {"torsion_hypothesis_asserted", h.torsion_asserted},
              {"all_hold", h.all_hold()},
              {"failures", h.failures()}};
}

inline Json valuation_json(int v) {
  return v == kInfiniteValuation ? Json("inf") : Json(v);
}

inline Json reduction_json(const ReductionInfo& info) {
  return Json{{"p", info.p},
              {"kind", to_string(info.kind)},
              {"ord_delta", info.ord_delta},
              {"ord_c4", valuation_json(info.ord_c4)},
              {"ord_j", valuation_json(info.ord_j)},
              {"tate", info.is_tate()}};
}

}  // namespace classsieve::cli

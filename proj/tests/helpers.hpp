#pragma once

#include <string>
#include <vector>

#include "selberg/poly.hpp"
#include "selberg/signed_set.hpp"

namespace testing {

inline std::vector<selberg::VarId> xs(std::uint32_t n) {
  std::vector<selberg::VarId> v;
  for (std::uint32_t i = 1; i <= n; ++i) v.push_back(selberg::VarId::x(i));
  return v;
}

inline selberg::IntPolynomial X(std::uint32_t i) { return selberg::IntPolynomial::var(selberg::VarId::x(i)); }
inline selberg::IntPolynomial Y(std::uint32_t i) { return selberg::IntPolynomial::var(selberg::VarId::y(i)); }

inline selberg::SignedElement elem(const std::string& payload, selberg::Monomial w) {
  return {selberg::Payload::parse(payload), std::move(w)};
}

// Keys of the cross pairs as "left=right".
inline std::vector<std::string> pair_keys(const selberg::Sijection& s) {
  std::vector<std::string> out;
  for (std::uint32_t i = 0; i < s.left().size(); ++i) {
    selberg::ElementRef p = s.partner({selberg::Side::kLeft, i});
    if (p.side == selberg::Side::kRight)
      out.push_back(s.left()[i].payload.key() + "=" + s.right()[p.index].payload.key());
  }
  return out;
}

}  // namespace testing

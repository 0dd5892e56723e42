#pragma once

// Canonical element payloads: small trees of integers, variables, symbols and
// tuples, stored as a flat prefix token stream. Comparing the streams
// lexicographically gives a structural total order, so sorted containers of
// payloads are canonical.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "selberg/poly.hpp"

namespace selberg {

class Payload {
 public:
  enum class Kind : std::int32_t { kClose = 0, kInt = 1, kVar = 2, kTag = 3, kSymbol = 4, kTuple = 5 };

  // The empty tuple.
  Payload() : tokens_{static_cast<std::int32_t>(Kind::kTuple), static_cast<std::int32_t>(Kind::kClose)} {}

  static Payload integer(std::int32_t v);
  static Payload var(VarId v);
  // Side marker of a disjoint sum; prints as @k.
  static Payload tag(std::int32_t k);
  static Payload symbol(std::string_view s);
  static Payload tuple(std::span<const Payload> items);
  static Payload tuple(std::initializer_list<Payload> items) {
    return tuple(std::span<const Payload>(items.begin(), items.size()));
  }
  static Payload ints(std::span<const int> values);
  static Payload ints(std::initializer_list<int> values) {
    return ints(std::span<const int>(values.begin(), values.size()));
  }

  Kind kind() const { return static_cast<Kind>(tokens_.front()); }
  bool is_tuple() const { return kind() == Kind::kTuple; }

  std::int32_t as_int() const;
  VarId as_var() const;
  std::int32_t as_tag() const;
  std::string as_symbol() const;

  // Tuple accessors.
  std::size_t arity() const;
  std::vector<Payload> items() const;
  Payload item(std::size_t i) const;
  std::vector<int> as_ints() const;

  // Text key: (1,(2,0,0)), x2, @0, 'sym'.
  std::string key() const;
  static Payload parse(std::string_view text);

  const std::vector<std::int32_t>& tokens() const { return tokens_; }
  std::size_t hash() const;

  auto operator<=>(const Payload&) const = default;
  bool operator==(const Payload&) const = default;

 private:
  explicit Payload(std::vector<std::int32_t> t) : tokens_(std::move(t)) {}
  std::vector<std::int32_t> tokens_;
};

struct PayloadHash {
  std::size_t operator()(const Payload& p) const { return p.hash(); }
};

}  // namespace selberg

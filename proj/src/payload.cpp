#include "selberg/payload.hpp"

#include <cctype>

#include "selberg/errors.hpp"

namespace selberg {

namespace {

using K = Payload::Kind;

constexpr std::int32_t tok(K k) { return static_cast<std::int32_t>(k); }

// Index one past the subtree starting at pos.
std::size_t skip(const std::vector<std::int32_t>& t, std::size_t pos) {
  switch (static_cast<K>(t[pos])) {
    case K::kInt:
    case K::kVar:
    case K::kTag:
      return pos + 2;
    case K::kSymbol:
      return pos + 2 + static_cast<std::size_t>(t[pos + 1]);
    case K::kTuple: {
      std::size_t p = pos + 1;
      while (static_cast<K>(t[p]) != K::kClose) p = skip(t, p);
      return p + 1;
    }
    case K::kClose:
      break;
  }
  throw InternalError("malformed payload stream");
}

void write_key(const std::vector<std::int32_t>& t, std::size_t& pos, std::string& out) {
  switch (static_cast<K>(t[pos])) {
    case K::kInt:
      out += std::to_string(t[pos + 1]);
      pos += 2;
      return;
    case K::kVar:
      out += VarId::from_code(t[pos + 1]).name();
      pos += 2;
      return;
    case K::kTag:
      out += '@';
      out += std::to_string(t[pos + 1]);
      pos += 2;
      return;
    case K::kSymbol: {
      auto n = static_cast<std::size_t>(t[pos + 1]);
      out += '\'';
      for (std::size_t i = 0; i < n; ++i) out += static_cast<char>(t[pos + 2 + i]);
      out += '\'';
      pos += 2 + n;
      return;
    }
    case K::kTuple: {
      out += '(';
      ++pos;
      bool first = true;
      while (static_cast<K>(t[pos]) != K::kClose) {
        if (!first) out += ',';
        first = false;
        write_key(t, pos, out);
      }
      out += ')';
      ++pos;
      return;
    }
    case K::kClose:
      break;
  }
  throw InternalError("malformed payload stream");
}

struct Parser {
  std::string_view s;
  std::size_t i = 0;

  [[noreturn]] void fail() const {
    throw PreconditionError("cannot parse payload key: " + std::string(s));
  }

  void parse(std::vector<std::int32_t>& out) {
    if (i >= s.size()) fail();
    char c = s[i];
    if (c == '(') {
      out.push_back(tok(K::kTuple));
      ++i;
      if (i < s.size() && s[i] == ')') {
        ++i;
      } else {
        while (true) {
          parse(out);
          if (i >= s.size()) fail();
          if (s[i] == ',') {
            ++i;
            continue;
          }
          if (s[i] == ')') {
            ++i;
            break;
          }
          fail();
        }
      }
      out.push_back(tok(K::kClose));
    } else if (c == '@') {
      ++i;
      out.push_back(tok(K::kTag));
      out.push_back(number());
    } else if (c == '\'') {
      auto end = s.find('\'', i + 1);
      if (end == std::string_view::npos) fail();
      out.push_back(tok(K::kSymbol));
      out.push_back(static_cast<std::int32_t>(end - i - 1));
      for (std::size_t k = i + 1; k < end; ++k) out.push_back(static_cast<unsigned char>(s[k]));
      i = end + 1;
    } else if (c == 'x' || c == 'y' || c == 't') {
      std::size_t start = i++;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back(tok(K::kVar));
      out.push_back(VarId::parse(std::string(s.substr(start, i - start))).code());
    } else {
      out.push_back(tok(K::kInt));
      out.push_back(number());
    }
  }

  std::int32_t number() {
    std::size_t start = i;
    if (i < s.size() && s[i] == '-') ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start || (i == start + 1 && s[start] == '-')) fail();
    return static_cast<std::int32_t>(std::stol(std::string(s.substr(start, i - start))));
  }
};

}  // namespace

Payload Payload::integer(std::int32_t v) { return Payload({tok(K::kInt), v}); }
Payload Payload::var(VarId v) { return Payload({tok(K::kVar), v.code()}); }
Payload Payload::tag(std::int32_t k) { return Payload({tok(K::kTag), k}); }

Payload Payload::symbol(std::string_view s) {
  std::vector<std::int32_t> t{tok(K::kSymbol), static_cast<std::int32_t>(s.size())};
  for (char c : s) t.push_back(static_cast<unsigned char>(c));
  return Payload(std::move(t));
}

Payload Payload::tuple(std::span<const Payload> items) {
  std::size_t n = 2;
  for (const auto& p : items) n += p.tokens_.size();
  std::vector<std::int32_t> t;
  t.reserve(n);
  t.push_back(tok(K::kTuple));
  for (const auto& p : items) t.insert(t.end(), p.tokens_.begin(), p.tokens_.end());
  t.push_back(tok(K::kClose));
  return Payload(std::move(t));
}

Payload Payload::ints(std::span<const int> values) {
  std::vector<std::int32_t> t;
  t.reserve(2 * values.size() + 2);
  t.push_back(tok(K::kTuple));
  for (int v : values) {
    t.push_back(tok(K::kInt));
    t.push_back(v);
  }
  t.push_back(tok(K::kClose));
  return Payload(std::move(t));
}

std::int32_t Payload::as_int() const {
  if (kind() != K::kInt) throw InternalError("payload is not an integer: " + key());
  return tokens_[1];
}

VarId Payload::as_var() const {
  if (kind() != K::kVar) throw InternalError("payload is not a variable: " + key());
  return VarId::from_code(tokens_[1]);
}

std::int32_t Payload::as_tag() const {
  if (kind() != K::kTag) throw InternalError("payload is not a tag: " + key());
  return tokens_[1];
}

std::string Payload::as_symbol() const {
  if (kind() != K::kSymbol) throw InternalError("payload is not a symbol: " + key());
  std::string s;
  for (std::size_t i = 0; i < static_cast<std::size_t>(tokens_[1]); ++i)
    s += static_cast<char>(tokens_[2 + i]);
  return s;
}

std::size_t Payload::arity() const {
  if (!is_tuple()) throw InternalError("payload is not a tuple: " + key());
  std::size_t n = 0;
  for (std::size_t p = 1; static_cast<K>(tokens_[p]) != K::kClose; p = skip(tokens_, p)) ++n;
  return n;
}

std::vector<Payload> Payload::items() const {
  if (!is_tuple()) throw InternalError("payload is not a tuple: " + key());
  std::vector<Payload> out;
  std::size_t p = 1;
  while (static_cast<K>(tokens_[p]) != K::kClose) {
    std::size_t q = skip(tokens_, p);
    out.push_back(Payload(std::vector<std::int32_t>(tokens_.begin() + static_cast<std::ptrdiff_t>(p),
                                                    tokens_.begin() + static_cast<std::ptrdiff_t>(q))));
    p = q;
  }
  return out;
}

Payload Payload::item(std::size_t i) const {
  if (!is_tuple()) throw InternalError("payload is not a tuple: " + key());
  std::size_t p = 1;
  for (std::size_t k = 0; k < i; ++k) {
    if (static_cast<K>(tokens_[p]) == K::kClose) throw InternalError("tuple index out of range");
    p = skip(tokens_, p);
  }
  if (static_cast<K>(tokens_[p]) == K::kClose) throw InternalError("tuple index out of range");
  std::size_t q = skip(tokens_, p);
  return Payload(std::vector<std::int32_t>(tokens_.begin() + static_cast<std::ptrdiff_t>(p),
                                           tokens_.begin() + static_cast<std::ptrdiff_t>(q)));
}

std::vector<int> Payload::as_ints() const {
  if (!is_tuple()) throw InternalError("payload is not a tuple: " + key());
  std::vector<int> out;
  std::size_t p = 1;
  while (static_cast<K>(tokens_[p]) != K::kClose) {
    if (static_cast<K>(tokens_[p]) != K::kInt) throw InternalError("tuple holds a non-integer: " + key());
    out.push_back(tokens_[p + 1]);
    p += 2;
  }
  return out;
}

std::string Payload::key() const {
  std::string out;
  std::size_t pos = 0;
  write_key(tokens_, pos, out);
  return out;
}

Payload Payload::parse(std::string_view text) {
  Parser ps{text};
  std::vector<std::int32_t> t;
  ps.parse(t);
  if (ps.i != text.size()) ps.fail();
  return Payload(std::move(t));
}

std::size_t Payload::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int32_t v : tokens_) {
    h ^= static_cast<std::uint32_t>(v);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace selberg

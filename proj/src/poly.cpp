#include "selberg/poly.hpp"

#include <algorithm>
#include <sstream>

#include "selberg/errors.hpp"

namespace selberg {

VarId VarId::from_code(std::int32_t c) {
  auto u = static_cast<std::uint32_t>(c);
  auto fam = u >> 20;
  if (fam > 2) throw PreconditionError("bad variable code");
  return {static_cast<VarFamily>(fam), u & 0xFFFFFu};
}

std::string VarId::name() const {
  switch (family) {
    case VarFamily::kT:
      return "t";
    case VarFamily::kY:
      return "y" + std::to_string(index);
    case VarFamily::kX:
      return "x" + std::to_string(index);
  }
  return "?";
}

VarId VarId::parse(const std::string& text) {
  if (text == "t") return t();
  if (text.size() < 2 || (text[0] != 'x' && text[0] != 'y'))
    throw PreconditionError("bad variable name: " + text);
  std::uint32_t idx = 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') throw PreconditionError("bad variable name: " + text);
    idx = idx * 10 + static_cast<std::uint32_t>(text[i] - '0');
  }
  return text[0] == 'x' ? x(idx) : y(idx);
}

Exponents exponents_mul(const Exponents& a, const Exponents& b) {
  Exponents out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

int exponent_of(const Exponents& e, VarId v) {
  auto it = std::lower_bound(e.begin(), e.end(), v,
                             [](const auto& p, VarId w) { return p.first < w; });
  return it != e.end() && it->first == v ? it->second : 0;
}

int total_degree(const Exponents& e) {
  int d = 0;
  for (const auto& [v, k] : e) d += k;
  return d;
}

std::string exponents_text(const Exponents& e) {
  std::string s;
  for (const auto& [v, k] : e) {
    if (!s.empty()) s += '*';
    s += v.name();
    if (k != 1) s += "^" + std::to_string(k);
  }
  return s;
}

Monomial Monomial::var(VarId v, int power, int sign) {
  if (power < 0) throw PreconditionError("negative exponent");
  Monomial m;
  m.sign = sign;
  if (power > 0) m.exps.emplace_back(v, power);
  return m;
}

std::string Monomial::text() const {
  std::string body = exps.empty() ? "1" : exponents_text(exps);
  return sign < 0 ? "-" + body : body;
}

IntPolynomial::IntPolynomial(long c) {
  if (c != 0) terms_.emplace(Exponents{}, mpz_class(c));
}

IntPolynomial::IntPolynomial(const mpz_class& c) {
  if (c != 0) terms_.emplace(Exponents{}, c);
}

IntPolynomial::IntPolynomial(const Monomial& m) { terms_.emplace(m.exps, mpz_class(m.sign)); }

mpz_class IntPolynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void IntPolynomial::add_term(const Exponents& e, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  IntPolynomial r = *this;
  r += o;
  return r;
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
  IntPolynomial r = *this;
  r -= o;
  return r;
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  IntPolynomial r;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add_term(exponents_mul(e1, e2), c1 * c2);
  return r;
}

IntPolynomial IntPolynomial::operator-() const {
  IntPolynomial r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

IntPolynomial IntPolynomial::pow(unsigned e) const {
  IntPolynomial result(1L), base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::string IntPolynomial::text() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e.empty()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << exponents_text(e);
    }
  }
  return os.str();
}

nlohmann::json IntPolynomial::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& [e, c] : terms_) {
    auto exps = nlohmann::json::object();
    for (const auto& [v, k] : e) exps[v.name()] = k;
    arr.push_back({{"coeff", c.get_str()}, {"exps", exps}});
  }
  return arr;
}

IntPolynomial poly_arith(PolyOp op, const IntPolynomial& p, const IntPolynomial* q) {
  if (op == PolyOp::kNeg) return -p;
  if (!q) throw PreconditionError("poly_arith: second operand required");
  switch (op) {
    case PolyOp::kAdd:
      return p + *q;
    case PolyOp::kSub:
      return p - *q;
    case PolyOp::kMul:
      return p * *q;
    case PolyOp::kNeg:
      break;
  }
  return -p;
}

IntPolynomial expand_signed_product(std::span<const int> alpha, std::span<const VarId> vars) {
  if (alpha.size() != vars.size()) throw PreconditionError("alpha and variable list differ in length");
  IntPolynomial r(1L);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < 0) throw PreconditionError("negative alpha entry");
    for (std::size_t j = i + 1; j < alpha.size(); ++j) {
      int e = alpha[i] * alpha[j];
      if (e == 0) continue;
      IntPolynomial diff = IntPolynomial::var(vars[j]) - IntPolynomial::var(vars[i]);
      r = r * diff.pow(static_cast<unsigned>(e));
    }
  }
  return r;
}

SeriesTrunc::SeriesTrunc(std::vector<IntPolynomial> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw PreconditionError("series needs at least the constant term");
}

SeriesTrunc SeriesTrunc::one(int order) {
  if (order < 0) throw PreconditionError("negative series order");
  std::vector<IntPolynomial> c(static_cast<std::size_t>(order) + 1);
  c[0] = IntPolynomial(1L);
  return SeriesTrunc(std::move(c));
}

SeriesTrunc SeriesTrunc::inverse_linear_product(std::span<const VarId> ys, int order) {
  SeriesTrunc acc = one(order);
  for (VarId y : ys) {
    std::vector<IntPolynomial> c(static_cast<std::size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) c[static_cast<std::size_t>(k)] = IntPolynomial(Monomial::var(y, k));
    acc = acc * SeriesTrunc(std::move(c));
  }
  return acc;
}

SeriesTrunc SeriesTrunc::inverse_one_minus_t(int count, int order) {
  if (order < 0 || count < 0) throw PreconditionError("negative series parameter");
  std::vector<IntPolynomial> c(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k)
    c[static_cast<std::size_t>(k)] = IntPolynomial(count == 0 ? mpz_class(k == 0 ? 1 : 0)
                                                              : binomial(count - 1 + k, k));
  return SeriesTrunc(std::move(c));
}

SeriesTrunc SeriesTrunc::from_integers(std::span<const long> coeffs, int order) {
  if (order < 0) throw PreconditionError("negative series order");
  if (static_cast<int>(coeffs.size()) > order + 1)
    throw TruncationError("series coefficients beyond the requested order");
  std::vector<IntPolynomial> c(static_cast<std::size_t>(order) + 1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) c[k] = IntPolynomial(coeffs[k]);
  return SeriesTrunc(std::move(c));
}

SeriesTrunc SeriesTrunc::operator*(const SeriesTrunc& o) const {
  int ord = std::min(order(), o.order());
  std::vector<IntPolynomial> c(static_cast<std::size_t>(ord) + 1);
  for (int i = 0; i <= ord; ++i) {
    if (coeff(i).is_zero()) continue;
    for (int j = 0; i + j <= ord; ++j) c[static_cast<std::size_t>(i + j)] += coeff(i) * o.coeff(j);
  }
  return SeriesTrunc(std::move(c));
}

IntPolynomial series_entry(const SeriesTrunc& f, VarId x, int i, int j) {
  if (i < 1) throw PreconditionError("series_entry needs i >= 1");
  if (j < i) return {};
  int d = j - i;
  if (d > f.order()) throw TruncationError("series order too small for requested coefficient");
  // [t^d] f(t) * sum_k C(i-1+k, k) x^k t^k
  IntPolynomial r;
  for (int k = 0; k <= d; ++k) {
    const IntPolynomial& fk = f.coeff(d - k);
    if (fk.is_zero()) continue;
    IntPolynomial term(Monomial::var(x, k));
    r += fk * (term * IntPolynomial(binomial(i - 1 + k, k)));
  }
  return r;
}

mpz_class binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

mpz_class factorial(long n) {
  if (n < 0) throw PreconditionError("factorial of a negative number");
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

}  // namespace selberg

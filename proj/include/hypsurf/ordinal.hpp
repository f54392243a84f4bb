#pragma once

// Ordinals below epsilon_0 in Cantor normal form.
//
// An ordinal is a sum  w^e1*c1 + w^e2*c2 + ... + w^ek*ck  with the
// exponents e1 > e2 > ... > ek themselves ordinals of the same shape and
// the coefficients ci positive integers.  The empty sum is 0.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypsurf {

class OrdinalDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class OrdinalParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Ordinal {
  struct Term;
  std::vector<Term> terms;  // strictly decreasing exponents, empty = 0

  bool is_zero() const { return terms.empty(); }
  bool operator==(const Ordinal&) const = default;
};

struct Ordinal::Term {
  Ordinal exponent;
  std::uint64_t coefficient = 1;

  bool operator==(const Term&) const = default;
};

inline Ordinal ordinal_zero() { return Ordinal{}; }

inline Ordinal ordinal_nat(std::uint64_t n) {
  Ordinal o;
  if (n > 0) o.terms.push_back({Ordinal{}, n});
  return o;
}

inline Ordinal omega_pow(Ordinal exponent, std::uint64_t coefficient = 1) {
  if (coefficient == 0) throw OrdinalDomainError("coefficient must be >= 1");
  Ordinal o;
  o.terms.push_back({std::move(exponent), coefficient});
  return o;
}

inline Ordinal ordinal_omega() { return omega_pow(ordinal_nat(1)); }

inline std::strong_ordering compare(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms.size(), b.terms.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto e = compare(a.terms[i].exponent, b.terms[i].exponent);
    if (e != std::strong_ordering::equal) return e;
    auto c = a.terms[i].coefficient <=> b.terms[i].coefficient;
    if (c != std::strong_ordering::equal) return c;
  }
  return a.terms.size() <=> b.terms.size();
}

inline bool operator<(const Ordinal& a, const Ordinal& b) {
  return compare(a, b) == std::strong_ordering::less;
}

// Ordinal sum in CNF: terms of `a` strictly below the leading exponent of
// `b` are absorbed.
inline Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const Ordinal& lead = b.terms.front().exponent;
  Ordinal out;
  std::size_t kept = 0;
  while (kept < a.terms.size() &&
         compare(a.terms[kept].exponent, lead) == std::strong_ordering::greater) {
    out.terms.push_back(a.terms[kept]);
    ++kept;
  }
  out.terms.push_back(b.terms.front());
  if (kept < a.terms.size() && a.terms[kept].exponent == lead) {
    out.terms.back().coefficient += a.terms[kept].coefficient;
  }
  for (std::size_t i = 1; i < b.terms.size(); ++i) out.terms.push_back(b.terms[i]);
  return out;
}

inline Ordinal add_nat(const Ordinal& a, std::uint64_t n) {
  return add(a, ordinal_nat(n));
}

// Right multiplication by a positive integer: (w^e*c + rest) * k = w^e*(c*k) + rest.
inline Ordinal mul_nat(const Ordinal& a, std::uint64_t k) {
  if (k == 0) throw OrdinalDomainError("mul_nat requires k >= 1");
  if (a.is_zero()) return a;
  Ordinal out = a;
  out.terms.front().coefficient *= k;
  return out;
}

inline bool is_successor(const Ordinal& a) {
  return !a.terms.empty() && a.terms.back().exponent.is_zero();
}

inline bool is_limit(const Ordinal& a) {
  return !a.is_zero() && !is_successor(a);
}

inline Ordinal pred(const Ordinal& a) {
  if (!is_successor(a)) throw OrdinalDomainError("pred: not a successor ordinal");
  Ordinal out = a;
  if (out.terms.back().coefficient > 1) {
    out.terms.back().coefficient -= 1;
  } else {
    out.terms.pop_back();
  }
  return out;
}

inline bool is_finite(const Ordinal& a) {
  return a.is_zero() || (a.terms.size() == 1 && a.terms[0].exponent.is_zero());
}

// Finite value; domain error if a >= w.
inline std::uint64_t to_nat(const Ordinal& a) {
  if (a.is_zero()) return 0;
  if (!is_finite(a)) throw OrdinalDomainError("to_nat: ordinal is infinite");
  return a.terms[0].coefficient;
}

// ---------------------------------------------------------------------------
// Text syntax.  `w^{<ordinal>}*<nat> + ...`; finite exponents drop the
// braces, exponent 1 is left implicit, coefficient 1 is left implicit,
// and a pure w^0 term prints as a bare natural.  Examples:
//   0, 1, 7, w, w*2, w+1, w^2*3 + w + 1, w^{w}, w^{w+1}*2 + 5

inline std::string to_string(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    const auto& t = a.terms[i];
    if (i > 0) out += " + ";
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += "w";
    if (!(is_finite(t.exponent) && to_nat(t.exponent) == 1)) {
      if (is_finite(t.exponent)) {
        out += "^" + std::to_string(to_nat(t.exponent));
      } else {
        out += "^{" + to_string(t.exponent) + "}";
      }
    }
    if (t.coefficient != 1) out += "*" + std::to_string(t.coefficient);
  }
  return out;
}

namespace detail {

struct OrdinalParser {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw OrdinalParseError("ordinal parse error at position " + std::to_string(pos) +
                            ": " + msg);
  }

  std::uint64_t parse_nat() {
    skip_ws();
    if (pos >= s.size() || s[pos] < '0' || s[pos] > '9') fail("expected a natural number");
    std::uint64_t v = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
      ++pos;
    }
    return v;
  }

  // term := nat | 'w' ('^' exponent)? ('*' nat)?
  Ordinal parse_term() {
    skip_ws();
    if (pos >= s.size()) fail("expected a term");
    if (s[pos] == 'w') {
      ++pos;
      Ordinal exponent = ordinal_nat(1);
      if (eat('^')) {
        if (eat('{')) {
          exponent = parse_sum();
          if (!eat('}')) fail("expected '}'");
        } else {
          exponent = ordinal_nat(parse_nat());
        }
      }
      std::uint64_t coeff = 1;
      if (eat('*')) {
        coeff = parse_nat();
        if (coeff == 0) fail("coefficient must be >= 1");
      }
      if (exponent.is_zero()) return ordinal_nat(coeff);
      return omega_pow(std::move(exponent), coeff);
    }
    return ordinal_nat(parse_nat());
  }

  // Terms are combined by ordinal addition, so non-normal input such as
  // "1 + w" normalizes to "w".
  Ordinal parse_sum() {
    Ordinal acc = parse_term();
    while (eat('+')) acc = add(acc, parse_term());
    return acc;
  }
};

}  // namespace detail

inline Ordinal parse_ordinal(std::string_view text) {
  detail::OrdinalParser p{text};
  Ordinal o = p.parse_sum();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return o;
}

}  // namespace hypsurf

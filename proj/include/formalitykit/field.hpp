#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "formalitykit/errors.hpp"

namespace fkit {

using Rational = mpq_class;

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw input_error("empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/')) {
      throw input_error("malformed rational literal '" + std::string(text) + "'");
    }
  }
  Rational r;
  if (r.set_str(s, 10) != 0) {
    throw input_error("malformed rational literal '" + std::string(text) + "'");
  }
  if (r.get_den() == 0) throw input_error("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

inline std::string format_rational(const Rational& r) { return r.get_str(10); }

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

/// Exact arithmetic over the rationals.
struct RationalField {
  using value_type = Rational;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_rational(const Rational& r) const { return r; }
  value_type from_int(long v) const { return v; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) throw std::domain_error("division by zero");
    return 1 / a;
  }
  // a -= b * c
  void sub_mul(value_type& a, const value_type& b, const value_type& c) const { a -= b * c; }
  std::string to_string(const value_type& a) const { return format_rational(a); }
  std::string name() const { return "rationals"; }
};

/// Arithmetic modulo a prime p < 2^31.
struct PrimeField {
  using value_type = std::uint64_t;

  std::uint64_t p = 2;

  explicit PrimeField(std::uint64_t prime) : p(prime) {
    if (prime >= (std::uint64_t{1} << 31) || !is_prime(prime)) {
      throw input_error("field characteristic " + std::to_string(prime) +
                        " is not a prime below 2^31");
    }
  }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long v) const {
    long r = v % static_cast<long>(p);
    return static_cast<value_type>(r < 0 ? r + static_cast<long>(p) : r);
  }
  value_type from_rational(const Rational& r) const {
    mpz_class num = r.get_num() % static_cast<unsigned long>(p);
    mpz_class den = r.get_den() % static_cast<unsigned long>(p);
    if (den == 0) {
      throw input_error("coefficient " + format_rational(r) + " has a denominator divisible by " +
                        std::to_string(p));
    }
    if (num < 0) num += static_cast<unsigned long>(p);
    return mul(static_cast<value_type>(num.get_ui()), inv(static_cast<value_type>(den.get_ui())));
  }
  bool is_zero(const value_type& a) const { return a == 0; }
  value_type add(value_type a, value_type b) const { return (a + b) % p; }
  value_type sub(value_type a, value_type b) const { return (a + p - b) % p; }
  value_type mul(value_type a, value_type b) const { return (a * b) % p; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("division by zero");
    value_type result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
  void sub_mul(value_type& a, value_type b, value_type c) const { a = sub(a, mul(b, c)); }
  std::string to_string(value_type a) const { return std::to_string(a); }
  std::string name() const { return "fp:" + std::to_string(p); }
};

/// Runtime choice of ground field.
using FieldSpec = std::variant<RationalField, PrimeField>;

inline FieldSpec parse_field(std::string_view text) {
  if (text == "rationals" || text == "Q" || text == "q") return RationalField{};
  if (text.substr(0, 3) == "fp:") {
    std::string digits(text.substr(3));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw input_error("malformed field '" + std::string(text) + "'");
    }
    return PrimeField(std::stoull(digits));
  }
  throw input_error("unknown field '" + std::string(text) + "' (expected rationals or fp:P)");
}

inline std::string field_name(const FieldSpec& f) {
  return std::visit([](const auto& field) { return field.name(); }, f);
}

// Characteristic of the field; 0 for the rationals.
inline std::uint64_t characteristic(const FieldSpec& f) {
  if (const auto* pf = std::get_if<PrimeField>(&f)) return pf->p;
  return 0;
}

}  // namespace fkit

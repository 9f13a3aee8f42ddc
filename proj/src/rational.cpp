#include "pooling/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace pooling {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class pow10(unsigned long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return p;
}

}  // namespace

Rational::Rational(long long num, long long den) {
  if (den == 0) throw std::domain_error("Rational with zero denominator");
  mpz_class n(static_cast<long>(num)), d(static_cast<long>(den));
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::from_decimal(std::string_view text) {
  const std::string original(text);
  auto fail = [&original]() -> Rational {
    throw ParseError("malformed rational literal: '" + original + "'");
  };

  if (text.empty()) return fail();

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return fail();

  // Fraction form "p/q".
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return fail();
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + original + "'");
    mpq_class q(n, d);
    q.canonicalize();
    if (negative) q = -q;
    return Rational(std::move(q));
  }

  // Decimal form: digits [ '.' digits ] [ (e|E) [sign] digits ].
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view es = text.substr(e + 1);
    bool eneg = false;
    if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
      eneg = es.front() == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 5) return fail();
    exponent = std::strtol(std::string(es).c_str(), nullptr, 10);
    if (eneg) exponent = -exponent;
  }

  std::string_view int_part = mantissa;
  std::string_view frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
    if (frac_part.empty()) return fail();
  }
  if (!all_digits(int_part)) return fail();
  if (!frac_part.empty() && !all_digits(frac_part)) return fail();

  mpz_class digits(std::string(int_part) + std::string(frac_part), 10);
  long scale = exponent - static_cast<long>(frac_part.size());

  mpq_class q;
  if (scale >= 0) {
    q = mpq_class(digits * pow10(static_cast<unsigned long>(scale)), 1);
  } else {
    q = mpq_class(digits, pow10(static_cast<unsigned long>(-scale)));
  }
  q.canonicalize();
  if (negative) q = -q;
  return Rational(std::move(q));
}

}  // namespace pooling

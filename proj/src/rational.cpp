#include "anomod/rational.hpp"

#include <cctype>

#include "anomod/errors.hpp"

namespace anomod {

Rational makeRational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string toString(const Rational& r) { return r.get_str(); }

Rational parseRational(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational");
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  bool slash = false;
  bool digit = false;
  for (std::size_t k = i; k < text.size(); ++k) {
    char ch = text[k];
    if (ch == '/') {
      if (slash || !digit) throw ParseError("malformed rational: " + std::string(text));
      slash = true;
      digit = false;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digit = true;
    } else {
      throw ParseError("malformed rational: " + std::string(text));
    }
  }
  if (!digit) throw ParseError("malformed rational: " + std::string(text));
  std::string s(text[0] == '+' ? text.substr(1) : text);
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("malformed rational: " + std::string(text));
  if (r.get_den() == 0) throw ParseError("zero denominator: " + std::string(text));
  r.canonicalize();
  return r;
}

Rational factorial(unsigned k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return Rational(f);
}

}  // namespace anomod

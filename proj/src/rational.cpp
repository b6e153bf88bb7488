#include "qpv/rational.hpp"

#include <cctype>

namespace qpv {

namespace {

mpz_class parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(Errc::MalformedInput, "empty integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw Error(Errc::MalformedInput, "bad integer '" + s + "'");
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw Error(Errc::MalformedInput, "bad integer '" + s + "'");
    }
  }
  if (s[0] == '+') s.erase(0, 1);
  return mpz_class(s, 10);
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
  if (den == 0) throw Error(Errc::NotAUnit, "zero denominator");
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

std::string Rational::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw Error(Errc::NotAUnit, "division by zero in Q");
  q_ /= o.q_;
  return *this;
}

Rational inverse(const Rational& x) {
  if (x.sign() == 0) throw Error(Errc::NotAUnit, "0 has no inverse in Q");
  return Rational(mpq_class(1) / x.value());
}

std::optional<Rational> try_sqrt(const Rational& x) {
  if (x.sign() < 0) return std::nullopt;
  const mpz_class n = x.num();
  const mpz_class d = x.den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(rn, rd);
}

}  // namespace qpv

#include "oddclif/scalar.hpp"

#include <boost/multiprecision/integer.hpp>

namespace oddclif {

namespace {

std::string ratStr(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "p" or "p/q" starting at pos; advances pos past the parsed text.
Rational parseRat(const std::string& s, size_t& pos) {
  size_t start = pos;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
    throw ScalarError("bad rational in scalar string: " + s);
  Integer num(s.substr(start, pos - start));
  Integer den = 1;
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    size_t dstart = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == dstart) throw ScalarError("bad denominator in scalar string: " + s);
    den = Integer(s.substr(dstart, pos - dstart));
    if (den == 0) throw ScalarError("zero denominator in scalar string: " + s);
  }
  return Rational(num, den);
}

}  // namespace

std::string Scalar::str() const {
  if (b_ == 0) return ratStr(a_);
  std::string out = ratStr(a_);
  out += (b_ < 0) ? "-" : "+";
  Rational ab = b_ < 0 ? Rational(-b_) : b_;
  out += ratStr(ab) + "*sqrt(" + std::to_string(d_) + ")";
  return out;
}

Scalar Scalar::parse(const std::string& s) {
  size_t pos = 0;
  Rational a = parseRat(s, pos);
  if (pos == s.size()) return Scalar(a);
  if (s[pos] != '+' && s[pos] != '-') throw ScalarError("bad scalar string: " + s);
  bool neg = s[pos] == '-';
  ++pos;
  Rational b = parseRat(s, pos);
  if (neg) b = -b;
  const std::string tail = "*sqrt(";
  if (s.compare(pos, tail.size(), tail) != 0) throw ScalarError("bad scalar string: " + s);
  pos += tail.size();
  size_t dstart = pos;
  if (pos < s.size() && s[pos] == '-') ++pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  long long d = std::stoll(s.substr(dstart, pos - dstart));
  if (pos >= s.size() || s[pos] != ')' || pos + 1 != s.size())
    throw ScalarError("bad scalar string: " + s);
  return Scalar(a, b, d);
}

std::optional<Rational> rationalSqrt(const Rational& v) {
  if (v < 0) return std::nullopt;
  if (v == 0) return Rational(0);
  Integer num = numerator(v), den = denominator(v);
  Integer sn = sqrt(num), sd = sqrt(den);
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rational(sn, sd);
}

std::optional<Scalar> Scalar::sqrtInField(const Scalar& v, long long d) {
  if (!v.isRational()) return std::nullopt;
  if (auto r = rationalSqrt(v.rat())) return Scalar(*r);
  if (d != 0) {
    // v = b^2 * d  =>  sqrt(v) = b * sqrt(d)
    if (auto b = rationalSqrt(v.rat() / Rational(d))) return Scalar(Rational(0), *b, d);
  }
  return std::nullopt;
}

}  // namespace oddclif

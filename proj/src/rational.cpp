#include "rearr/rational.hpp"

#include <ostream>
#include <stdexcept>

#include "rearr/errors.hpp"

namespace rearr {

Rational::Rational(long num, long den) {
  if (den == 0) throw DomainError("Rational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
  mpq_class v;
  if (v.set_str(s, 10) != 0) throw DomainError("Rational: cannot parse '" + s + "'");
  if (v.get_den() == 0) throw DomainError("Rational: zero denominator in '" + s + "'");
  v.canonicalize();
  return Rational(v);
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(v_))); }

Rational Rational::inv() const {
  if (is_zero()) throw DomainError("Rational: inverse of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
  return Rational(r);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw DomainError("Rational: division by zero");
  return Rational(mpq_class(a.v_ / b.v_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::pow2(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  mpq_class r;
  if (e >= 0) {
    r = p;
  } else {
    r = mpq_class(1, 1);
    r /= p;
  }
  return Rational(r);
}

Rational Rational::pow(long k) const {
  if (k == 0) return Rational(1);
  const bool neg = k < 0;
  const unsigned long e = static_cast<unsigned long>(neg ? -k : k);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), e);
  if (neg) {
    if (is_zero()) throw DomainError("Rational: 0^negative");
    std::swap(n, d);
  }
  mpq_class r(n, d);
  r.canonicalize();
  return Rational(r);
}

long Rational::floor_log2() const {
  if (sign() <= 0) throw DomainError("floor_log2: argument must be positive");
  // sizeinbase(x,2) = bit length of x. For x = num/den, compare against 2^e candidates.
  const mpz_class n = num(), d = den();
  long e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
  // e is within 1 of the answer; fix up exactly.
  while (Rational::pow2(e) > *this) --e;
  while (Rational::pow2(e + 1) <= *this) ++e;
  return e;
}

std::string Rational::decimal(int sig) const {
  if (sig < 1) sig = 1;
  if (is_zero()) return "0";
  const bool neg = sign() < 0;
  mpq_class x = ::abs(v_);
  // Find decimal exponent k with 10^k <= x < 10^(k+1).
  long k = 0;
  mpq_class ten(10), one(1);
  if (cmp(x, one) >= 0) {
    mpq_class p(1);
    while (cmp(x, p * ten) >= 0) { p *= ten; ++k; }
  } else {
    mpq_class p(1);
    while (cmp(x, p) < 0) { p /= ten; --k; }
  }
  // digits = round_half_even(x * 10^(sig-1-k)) as an integer with `sig` digits.
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(sig - 1 - k < 0 ? k + 1 - sig : sig - 1 - k));
  mpq_class scaled = x;
  if (sig - 1 - k >= 0) scaled *= pow10; else scaled /= pow10;
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
  // round half to even on remainder r/den
  mpz_class twice_r = r * 2;
  int c = cmp(twice_r, scaled.get_den());
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
  std::string digits = q.get_str();
  if (static_cast<int>(digits.size()) > sig) { ++k; digits.pop_back(); }  // rounding carried over
  std::string out;
  if (neg) out += '-';
  if (k >= 0 && k < sig) {
    out += digits.substr(0, k + 1);
    std::string frac = digits.substr(k + 1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
  } else if (k < 0 && k >= -4) {
    out += "0.";
    out += std::string(-k - 1, '0');
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    out += digits;
  } else {
    out += digits.substr(0, 1);
    std::string frac = digits.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    out += "e" + std::to_string(k);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_.get_str(); }

}  // namespace rearr

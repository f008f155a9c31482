#include "ldo/rational.hpp"

#include <cctype>

#include "ldo/errors.hpp"

namespace ldo {

namespace {

bool valid_integer_text(const std::string& s) {
  size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den[0] == '-')
    fail(ErrorKind::Config, "malformed rational '" + s + "'");
  Integer n(num, 10), d(den, 10);
  if (d == 0) fail(ErrorKind::Config, "zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer common_denominator(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

}  // namespace ldo

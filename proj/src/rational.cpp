#include "bsf/rational.hpp"

#include "bsf/error.hpp"

namespace bsf {

Rational parse_rational(const std::string& text) {
  const auto bad = [&] {
    return validation_error("'" + text + "' is not a rational p/q");
  };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  const auto digits_ok = [](const std::string& s, bool allow_sign) {
    std::size_t i = (allow_sign && !s.empty() && s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  const std::string num = text.substr(0, slash);
  const std::string den =
      slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
  Rational q;
  q.get_num() = mpz_class(num);
  q.get_den() = mpz_class(den);
  if (q.get_den() == 0) throw bad();
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) { return q.get_str(); }

}  // namespace bsf

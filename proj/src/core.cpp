#include "kmh/core.hpp"

#include <cctype>

namespace kmh {

Q parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw ParseError("empty rational");
  if (t[0] == '+') t.erase(0, 1);
  auto slash = t.find('/');
  auto digits_ok = [](const std::string& s) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  Q q;
  if (slash == std::string::npos) {
    if (!digits_ok(t)) throw ParseError("malformed rational '" + text + "'");
    q = Q(mpz_class(t));
  } else {
    std::string n = t.substr(0, slash), d = t.substr(slash + 1);
    if (!digits_ok(n) || !digits_ok(d) || d[0] == '-')
      throw ParseError("malformed rational '" + text + "'");
    mpz_class dz(d);
    if (dz == 0) throw ParseError("zero denominator in '" + text + "'");
    q = Q(mpz_class(n), dz);
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Q& q) { return q.get_str(); }

Q qpow(const Q& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw ZeroDenominator("negative power of zero");
    Q inv = 1 / base;
    return qpow(inv, -exponent);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Q r(n, d);
  r.canonicalize();
  return r;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (int s : w) out += "s" + std::to_string(s + 1);
  return out;
}

Word parse_word(const std::string& text) {
  Word w;
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '[' && c != ']') t.push_back(c);
  if (t.empty() || t == "1" || t == "e") return w;
  std::size_t i = 0;
  while (i < t.size()) {
    if (t[i] == 's' || t[i] == ',') {
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(t[i])))
      throw ParseError("malformed word '" + text + "'");
    std::size_t j = i;
    while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) ++j;
    int letter = std::stoi(t.substr(i, j - i));
    if (letter < 1) throw ParseError("letters are 1-based in '" + text + "'");
    w.push_back(letter - 1);
    i = j;
  }
  return w;
}

}  // namespace kmh

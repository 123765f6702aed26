#include "coverlab/rational.hpp"

#include <stdexcept>

namespace coverlab {

Rat makeRat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat makeRat(long num, long den) { return makeRat(Int(num), Int(den)); }

Rat ratFromString(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = text.find('/');
  const std::string numPart(text.substr(0, slash));
  std::string denPart = slash == std::string_view::npos
                            ? std::string("1")
                            : std::string(text.substr(slash + 1));
  Int num, den;
  if (num.set_str(numPart, 10) != 0)
    throw std::invalid_argument("bad rational numerator: " + numPart);
  if (den.set_str(denPart, 10) != 0)
    throw std::invalid_argument("bad rational denominator: " + denPart);
  return makeRat(num, den);
}

std::string ratToString(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string ratToDecimal(const Rat& value, int digits) {
  Int pow10 = 1;
  for (int i = 0; i < digits; ++i) pow10 *= 10;
  Int num = value.get_num() * pow10;
  const Int& den = value.get_den();
  const bool negative = num < 0;
  if (negative) num = -num;
  Int quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(),
              den.get_mpz_t());
  if (rem * 2 >= den) quot += 1;
  std::string body = quot.get_str();
  if (static_cast<int>(body.size()) <= digits)
    body.insert(0, digits + 1 - body.size(), '0');
  std::string out;
  if (negative && quot != 0) out.push_back('-');
  out.append(body.begin(), body.end() - digits);
  if (digits > 0) {
    out.push_back('.');
    out.append(body.end() - digits, body.end());
  }
  return out;
}

int sign(const Rat& value) { return sgn(value); }

std::size_t hashInt(const Int& value) {
  const std::size_t low =
      mpz_fdiv_ui(value.get_mpz_t(), 0x1fffffffffffffffull);
  const int s = sgn(value);
  return hashCombine(static_cast<std::size_t>(s + 1), low);
}

std::size_t hashCombine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

std::size_t ratBitLength(const Rat& value) {
  return mpz_sizeinbase(value.get_num().get_mpz_t(), 2) +
         mpz_sizeinbase(value.get_den().get_mpz_t(), 2);
}

}  // namespace coverlab

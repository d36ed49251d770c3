#include "conglab/bigint.hpp"

#include <cctype>

#include "conglab/errors.hpp"

namespace conglab {

BigInt floor_mod(const BigInt& a, const BigInt& m) {
  BigInt mm = m < 0 ? BigInt(-m) : m;
  BigInt r = a % mm;
  if (r < 0) r += mm;
  return r;
}

BigInt floor_div(const BigInt& a, const BigInt& m) {
  BigInt q = a / m;
  if ((a % m != 0) && ((a < 0) != (m < 0))) q -= 1;
  return q;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt x = a < 0 ? BigInt(-a) : a;
  BigInt y = b < 0 ? BigInt(-b) : b;
  while (y != 0) {
    BigInt r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  BigInt g = gcd(a, b);
  BigInt r = (a / g) * b;
  return r < 0 ? BigInt(-r) : r;
}

ExtGcd ext_gcd(const BigInt& a, const BigInt& b) {
  BigInt old_r = a, r = b;
  BigInt old_s = 1, s = 0;
  BigInt old_t = 0, t = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

bool crt_pair(const BigInt& r1, const BigInt& m1, const BigInt& r2,
              const BigInt& m2, BigInt& x, BigInt& modulus) {
  ExtGcd e = ext_gcd(m1, m2);
  BigInt diff = r2 - r1;
  if (diff % e.g != 0) return false;
  modulus = (m1 / e.g) * m2;
  BigInt k = floor_mod((diff / e.g) * e.s, m2 / e.g);
  x = floor_mod(r1 + m1 * k, modulus);
  return true;
}

BigInt pow_mod(BigInt base, BigInt exp, const BigInt& m) {
  BigInt result = 1 % m;
  base = floor_mod(base, m);
  while (exp > 0) {
    if ((exp & 1) != 0) result = (result * base) % m;
    base = (base * base) % m;
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    if (n % p == 0) return n == p;
  }
  for (std::uint64_t d = 17; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<BigInt, unsigned>> factor_integer(const BigInt& n,
                                                        const BigInt& cap) {
  BigInt m = n < 0 ? BigInt(-n) : n;
  if (m == 0) throw PreconditionError("cannot factor zero");
  if (m > cap) {
    throw CapExceeded("factoring cap exceeded by " + to_string(m));
  }
  std::vector<std::pair<BigInt, unsigned>> out;
  auto take = [&](const BigInt& p) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  };
  take(2);
  if (m <= std::numeric_limits<std::uint64_t>::max()) {
    std::uint64_t r = m.convert_to<std::uint64_t>();
    for (std::uint64_t d = 3; d <= r / d; d += 2) {
      if (r % d != 0) continue;
      unsigned e = 0;
      while (r % d == 0) {
        r /= d;
        ++e;
      }
      out.emplace_back(BigInt(d), e);
    }
    if (r > 1) out.emplace_back(BigInt(r), 1);
    return out;
  }
  for (BigInt d = 3; d * d <= m; d += 2) take(d);
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

int legendre(const BigInt& a, const BigInt& p) {
  BigInt r = pow_mod(floor_mod(a, p), (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

BigInt sqrt_mod(const BigInt& a_in, const BigInt& p) {
  BigInt a = floor_mod(a_in, p);
  if (a == 0) return 0;
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  BigInt q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  BigInt z = 2;
  while (legendre(z, p) != -1) z += 1;
  BigInt c = pow_mod(z, q, p);
  BigInt x = pow_mod(a, (q + 1) / 2, p);
  BigInt t = pow_mod(a, q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    BigInt tt = t;
    while (tt != 1) {
      tt = (tt * tt) % p;
      ++i;
    }
    BigInt b = c;
    for (unsigned j = 0; j + 1 + i < m; ++j) b = (b * b) % p;
    x = (x * b) % p;
    c = (b * b) % p;
    t = (t * c) % p;
    m = i;
  }
  return x;
}

std::string to_string(const BigInt& x) { return x.str(); }

BigInt parse_bigint(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    neg = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw ParseError("expected integer, got '" + text + "'");
  BigInt v = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError("expected integer, got '" + text + "'");
    }
    v = v * 10 + (text[i] - '0');
  }
  return neg ? BigInt(-v) : v;
}

std::size_t to_size(const BigInt& x) {
  if (x < 0 || x > std::numeric_limits<std::size_t>::max()) {
    throw CapExceeded("value " + to_string(x) + " does not fit a machine word");
  }
  return x.convert_to<std::size_t>();
}

long long to_ll(const BigInt& x) {
  if (x < std::numeric_limits<long long>::min() ||
      x > std::numeric_limits<long long>::max()) {
    throw CapExceeded("value " + to_string(x) + " does not fit a machine word");
  }
  return x.convert_to<long long>();
}

}  // namespace conglab

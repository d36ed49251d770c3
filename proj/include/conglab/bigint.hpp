#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace conglab {

using BigInt = boost::multiprecision::cpp_int;

/// Remainder in [0, |m|).
BigInt floor_mod(const BigInt& a, const BigInt& m);
/// Quotient rounded toward negative infinity.
BigInt floor_div(const BigInt& a, const BigInt& m);

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

/// s*a + t*b = g with g = gcd(a, b) >= 0.
struct ExtGcd {
  BigInt g, s, t;
};
ExtGcd ext_gcd(const BigInt& a, const BigInt& b);

/// x with x = r1 (mod m1), x = r2 (mod m2), m1, m2 > 0, not necessarily
/// coprime. Returns false when the system is inconsistent.
bool crt_pair(const BigInt& r1, const BigInt& m1, const BigInt& r2,
              const BigInt& m2, BigInt& x, BigInt& modulus);

BigInt pow_mod(BigInt base, BigInt exp, const BigInt& m);

/// Trial-division factorization of |n| > 0 into (prime, exponent) pairs in
/// increasing prime order. Throws CapExceeded when |n| > cap.
std::vector<std::pair<BigInt, unsigned>> factor_integer(const BigInt& n,
                                                        const BigInt& cap);

bool is_prime(std::uint64_t n);

/// Legendre symbol (a/p) for an odd prime p.
int legendre(const BigInt& a, const BigInt& p);

/// Square root of a modulo an odd prime p (Tonelli-Shanks); a must be a
/// quadratic residue.
BigInt sqrt_mod(const BigInt& a, const BigInt& p);

std::string to_string(const BigInt& x);
BigInt parse_bigint(const std::string& text);
std::size_t to_size(const BigInt& x);
long long to_ll(const BigInt& x);

}  // namespace conglab

#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace hz {

// Trial-division factorization, n >= 1. Returns prime -> exponent.
std::map<long, int> factorize(long n);

long euler_phi(long n);
std::vector<long> divisors(long n);

// Sieve of Eratosthenes: all primes <= n.
std::vector<long> primes_upto(long n);

long gcd_long(long a, long b);
long lcm_long(long a, long b);

// (a*b) mod m and a^e mod m without overflow (m < 2^62).
long mulmod(long a, long b, long m);
long powmod(long a, long e, long m);

// Inverse of a mod m, gcd(a, m) = 1.
long invmod(long a, long m);

// Smallest primitive root mod an odd prime p.
long primitive_root(long p);

// Moebius function of n >= 1.
int moebius(long n);

// Deterministic primality by trial division (desk-scale n).
bool is_prime(long n);

}  // namespace hz

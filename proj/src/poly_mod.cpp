#include "poly_mod.hpp"

#include <string>

#include "apx/error.hpp"

namespace apx::polymod {

std::int64_t residue(std::int64_t c, std::int64_t p) {
  std::int64_t r = c % p;
  return r < 0 ? r + p : r;
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly reduce(const Poly& f, std::int64_t p) {
  Poly out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = residue(f[i], p);
  trim(out);
  return out;
}

Poly mul(const Poly& a, const Poly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = static_cast<std::int64_t>(
          (static_cast<__int128>(a[i]) * b[j] + out[i + j]) % p);
    }
  }
  trim(out);
  return out;
}

Poly rem_monic(Poly a, const Poly& m, std::int64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    std::int64_t lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::int64_t>(
          ((static_cast<__int128>(a[shift + i]) -
            static_cast<__int128>(lead) * m[i]) %
               p +
           p) %
          p);
    }
    trim(a);
  }
  return a;
}

bool is_irreducible(const Poly& f, std::int64_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg <= 0) return false;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = checked_pow(static_cast<std::uint64_t>(p), d,
                                      std::uint64_t{1} << 32);
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly g = decode(static_cast<std::int64_t>(c), p, d);
      g.resize(d, 0);
      g.push_back(1);
      if (rem_monic(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly decode(std::int64_t code, std::int64_t p, std::size_t min_len) {
  Poly digits;
  while (code > 0) {
    digits.push_back(code % p);
    code /= p;
  }
  if (digits.size() < min_len) digits.resize(min_len, 0);
  return digits;
}

std::int64_t encode(const Poly& digits, std::int64_t p) {
  std::int64_t code = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (__builtin_mul_overflow(code, p, &code) ||
        __builtin_add_overflow(code, digits[i], &code))
      throw Error(ErrorKind::budget_exceeded,
                  "polynomial of degree " + std::to_string(digits.size() - 1) +
                      " exceeds the 63-bit element encoding");
  }
  return code;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp,
                          std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r) || r > limit)
      throw Error(ErrorKind::invalid_descriptor,
                  "ring cardinality exceeds " + std::to_string(limit));
  }
  return r;
}

}  // namespace apx::polymod

#include "ilpdp/convolution.hpp"

#include <algorithm>
#include <stdexcept>

namespace ilpdp {

Wide MaxPlus::value() const {
  if (!finite()) throw std::logic_error("value() on -inf");
  return v_;
}

MaxPlusSeq maxplus_conv(const MaxPlusSeq& r, const MaxPlusSeq& s) {
  if (r.empty() || s.empty()) throw std::invalid_argument("maxplus_conv needs nonempty sequences");
  MaxPlusSeq out(r.size() + s.size() - 1);
  std::vector<std::size_t> finite_s;
  for (std::size_t j = 0; j < s.size(); ++j)
    if (s[j].finite()) finite_s.push_back(j);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!r[i].finite()) continue;
    for (std::size_t j : finite_s) {
      const MaxPlus cand = r[i] + s[j];
      if (cand > out[i + j]) out[i + j] = cand;
    }
  }
  return out;
}

namespace detail {

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1;
  base %= mod;
  while (exp) {
    if (exp & 1) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return result;
}

// All supported primes are c * 2^k + 1 with primitive root 3.
void ntt(std::vector<std::uint32_t>& a, bool inverse, std::uint32_t prime) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = pow_mod(3, (prime - 1) / len, prime);
    if (inverse) w = pow_mod(w, prime - 2, prime);
    const std::size_t half = len / 2;
    std::vector<std::uint32_t> powers(half);
    powers[0] = 1;
    for (std::size_t k = 1; k < half; ++k) powers[k] = static_cast<std::uint32_t>(powers[k - 1] * w % prime);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::uint32_t u = a[i + k];
        const std::uint32_t v = static_cast<std::uint32_t>(std::uint64_t{a[i + k + half]} * powers[k] % prime);
        a[i + k] = u + v >= prime ? u + v - prime : u + v;
        a[i + k + half] = u >= v ? u - v : u + prime - v;
      }
    }
  }
  if (inverse) {
    const std::uint64_t n_inv = pow_mod(n, prime - 2, prime);
    for (auto& x : a) x = static_cast<std::uint32_t>(x * n_inv % prime);
  }
}

}  // namespace

std::vector<std::uint32_t> ntt_multiply(const std::vector<std::uint32_t>& r, const std::vector<std::uint32_t>& s,
                                        std::uint32_t prime) {
  const std::size_t out_len = r.size() + s.size() - 1;
  std::size_t n = 1;
  while (n < out_len) n <<= 1;
  // Every supported prime has 2^23 | p - 1.
  if (n > (std::size_t{1} << 23)) throw CapacityError("NTT length exceeds 2^23");
  std::vector<std::uint32_t> fa(n, 0), fb(n, 0);
  for (std::size_t i = 0; i < r.size(); ++i) fa[i] = r[i] % prime;
  for (std::size_t i = 0; i < s.size(); ++i) fb[i] = s[i] % prime;
  ntt(fa, false, prime);
  ntt(fb, false, prime);
  for (std::size_t i = 0; i < n; ++i) fa[i] = static_cast<std::uint32_t>(std::uint64_t{fa[i]} * fb[i] % prime);
  ntt(fa, true, prime);
  fa.resize(out_len);
  return fa;
}

std::vector<Wide> schoolbook_conv(const std::vector<std::int64_t>& r, const std::vector<std::int64_t>& s) {
  std::vector<Wide> out(r.size() + s.size() - 1, 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) out[i + j] = checked_add(out[i + j], checked_mul(r[i], s[j]));
  return out;
}

}  // namespace detail

std::vector<Wide> exact_integer_conv(const std::vector<std::int64_t>& r, const std::vector<std::int64_t>& s) {
  if (r.empty() || s.empty()) throw std::invalid_argument("exact_integer_conv needs nonempty sequences");
  for (auto v : r)
    if (v < 0) throw std::invalid_argument("exact_integer_conv needs nonnegative entries");
  for (auto v : s)
    if (v < 0) throw std::invalid_argument("exact_integer_conv needs nonnegative entries");
  if (std::min(r.size(), s.size()) <= 32) return detail::schoolbook_conv(r, s);

  using detail::kPrimes;
  const Wide p0 = kPrimes[0], p1 = kPrimes[1], p2 = kPrimes[2];
  const Wide modulus = p0 * p1 * p2;
  const Wide max_r = *std::max_element(r.begin(), r.end());
  const Wide max_s = *std::max_element(s.begin(), s.end());
  const Wide terms = static_cast<Wide>(std::min(r.size(), s.size()));
  if (max_r != 0 && max_s != 0 && (max_r > modulus / max_s || max_r * max_s > (modulus - 1) / terms))
    throw CapacityError("convolution coefficients may exceed the exact CRT range");

  std::vector<std::vector<std::uint32_t>> residues;
  for (std::uint32_t p : kPrimes) {
    std::vector<std::uint32_t> rr(r.size()), ss(s.size());
    for (std::size_t i = 0; i < r.size(); ++i) rr[i] = static_cast<std::uint32_t>(r[i] % p);
    for (std::size_t i = 0; i < s.size(); ++i) ss[i] = static_cast<std::uint32_t>(s[i] % p);
    residues.push_back(detail::ntt_multiply(rr, ss, p));
  }
  // Garner: x = a0 + p0 * (k1 + p1 * k2).
  auto inv = [](Wide a, Wide m) {
    Wide result = 1, base = a % m, e = m - 2;
    while (e) {
      if (e & 1) result = result * base % m;
      base = base * base % m;
      e >>= 1;
    }
    return result;
  };
  const Wide i01 = inv(p0 % p1, p1);
  const Wide i012 = inv(p0 * p1 % p2, p2);
  std::vector<Wide> out(residues[0].size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Wide a0 = residues[0][k], a1 = residues[1][k], a2 = residues[2][k];
    const Wide k1 = ((a1 - a0) % p1 + p1) % p1 * i01 % p1;
    const Wide x01 = a0 + p0 * k1;
    const Wide k2 = ((a2 - x01 % p2) % p2 + p2) % p2 * i012 % p2;
    out[k] = x01 + p0 * p1 * k2;
  }
  return out;
}

BoolSeq boolean_conv(const BoolSeq& r, const BoolSeq& s) {
  if (r.empty() || s.empty()) throw std::invalid_argument("boolean_conv needs nonempty sequences");
  const std::size_t out_len = r.size() + s.size() - 1;
  BoolSeq out(out_len, 0);
  if (std::min(r.size(), s.size()) <= 32) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (!r[i]) continue;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (s[j]) out[i + j] = 1;
    }
    return out;
  }
  // Counts are at most min(|r|, |s|) < 2^23 < p, so thresholding is exact.
  std::vector<std::uint32_t> rr(r.begin(), r.end()), ss(s.begin(), s.end());
  for (auto& v : rr) v = v ? 1 : 0;
  for (auto& v : ss) v = v ? 1 : 0;
  const auto counts = detail::ntt_multiply(rr, ss, detail::kPrimes[0]);
  for (std::size_t k = 0; k < out_len; ++k) out[k] = counts[k] != 0;
  return out;
}

}  // namespace ilpdp

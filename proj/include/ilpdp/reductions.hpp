#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ilpdp/instance.hpp"

namespace ilpdp {

enum class KnapsackMode { Equality, AtMost };

struct KnapsackInstance {
  std::int64_t C = 0;
  std::vector<std::int64_t> w;
  std::vector<std::int64_t> p;
  KnapsackMode mode = KnapsackMode::Equality;
};

struct KSumInstance {
  std::int64_t T = 0;
  std::vector<std::vector<std::int64_t>> sets;
};

/// floor(C^(1/m)), found by binary search with checked powers.
std::int64_t integer_root(std::int64_t C, unsigned m);

/// A = [w], b = [C], c = p. AtMost mode gets a slack column (weight 1,
/// profit 0) appended after the items.
IlpInstance uks_to_ilp1(const KnapsackInstance& k);

/// Writes the single row in base Delta = integer_root(b, m) + 1 over m rows.
/// Columns: the original variables, then carries y_1..y_{m-1}. Row l holds
/// digit l of every coefficient, +1 on y_l (l >= 1) and -Delta on y_{l+1}.
IlpInstance digit_split(const IlpInstance& inst1, unsigned m);

IlpInstance uks_to_ilpm(const KnapsackInstance& k, unsigned m);

/// Bit layout of a packed k-SUM number, least significant field first.
struct KSumLayout {
  unsigned value_bits = 0;   // ceil(log2(T+1)) + 1
  unsigned buffer_bits = 0;  // ceil(log2(k+1)) + 1
  unsigned marker_shift = 0;
  unsigned marker_bits = 0;  // k + 1
  unsigned count_shift = 0;
  unsigned total_bits = 0;
};

struct KSumEncoding {
  IlpInstance ilp;
  KSumLayout layout;
  std::int64_t packed_target = 0;
  std::size_t k = 0;
  /// Column j of the single-row instance encodes element columns[j].second of set columns[j].first.
  std::vector<std::pair<std::size_t, std::int64_t>> columns;
  /// Rows after digit splitting (1 for the plain encoding).
  unsigned rows = 1;
};

KSumLayout ksum_layout(std::int64_t T, std::size_t k);

/// One column per element (elements above T are dropped), b = packed target,
/// no objective. Throws CapacityError if the packed target needs more than 62 bits.
KSumEncoding ksum_to_ilp(const KSumInstance& ks);

/// ksum_to_ilp followed by digit_split over m rows.
KSumEncoding ksum_to_ilpm(const KSumInstance& ks, unsigned m);

/// Maps a witness of the encoded instance back to one element per set.
/// Carry columns past the element columns are ignored. Returns nullopt when
/// the witness does not pick exactly one element from every set.
std::optional<std::vector<std::int64_t>> decode_ksum_witness(const KSumEncoding& enc, std::span<const Wide> x);

}  // namespace ilpdp

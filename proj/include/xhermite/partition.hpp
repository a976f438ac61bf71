#pragma once

/**
 * @file partition.hpp
 * @brief Integer partitions and the degree bookkeeping of exceptional
 *        Hermite families: gap sets K_lambda, allowed degrees I_lambda,
 *        sporadic degrees, truncations lambda^(j) and their lengths.
 */

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "xhermite/errors.hpp"

namespace xhermite {

/// Non-increasing sequence of positive parts; trailing zeros are never stored.
class Partition {
 public:
  Partition() = default;

  /// Parts must be non-increasing and non-negative; zeros are stripped.
  explicit Partition(std::span<const int> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] < 0) throw ValidationError("negative part in partition");
      if (i + 1 < values.size() && values[i] < values[i + 1])
        throw ValidationError("partition parts must be non-increasing");
    }
    for (int v : values)
      if (v > 0) parts_.push_back(v);
    size_ = std::accumulate(parts_.begin(), parts_.end(), 0);
  }

  Partition(std::initializer_list<int> values)
      : Partition(std::span<const int>(values.begin(), values.size())) {}

  explicit Partition(const std::vector<int>& values)
      : Partition(std::span<const int>(values)) {}

  std::span<const int> parts() const noexcept { return parts_; }

  /// N, the partitioned integer.
  int size() const noexcept { return size_; }

  /// ell, the number of non-zero parts.
  int length() const noexcept { return static_cast<int>(parts_.size()); }

  bool empty() const noexcept { return parts_.empty(); }

  /// lambda_i with 1-based i; zero past the length.
  int operator[](int i) const {
    return i >= 1 && i <= length() ? parts_[static_cast<std::size_t>(i - 1)] : 0;
  }

  int largest() const noexcept { return parts_.empty() ? 0 : parts_.front(); }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

inline Partition make_partition(std::span<const int> values) { return Partition(values); }

inline std::string to_string(const Partition& p) {
  std::ostringstream os;
  os << "(";
  for (int i = 1; i <= p.length(); ++i) os << (i > 1 ? "," : "") << p[i];
  os << ")";
  return os.str();
}

/// Comma-separated integers; the empty string gives the empty list.
inline std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream is(text);
  bool any = false;
  while (std::getline(is, item, ',')) {
    any = true;
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ValidationError("empty entry in list '" + text + "'");
    item = item.substr(b, e - b + 1);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ValidationError("not an integer: '" + item + "'");
    }
    if (used != item.size()) throw ValidationError("not an integer: '" + item + "'");
    out.push_back(v);
  }
  if (any && !text.empty() && text.back() == ',')
    throw ValidationError("trailing comma in '" + text + "'");
  return out;
}

/// Partition text format: "3,3,1,1"; "" is the empty partition.
inline Partition parse_partition(const std::string& text) {
  return Partition(parse_int_list(text));
}

/// lambda_{2i-1} = lambda_{2i} for every i.
inline bool is_even(const Partition& p) {
  if (p.length() % 2 != 0) return false;
  for (int i = 1; i <= p.length(); i += 2)
    if (p[i] != p[i + 1]) return false;
  return true;
}

/// Dual partition: part j counts {i : lambda_i >= j}.
inline Partition conjugate(const Partition& p) {
  std::vector<int> dual(static_cast<std::size_t>(p.largest()), 0);
  for (int part : p.parts())
    for (int j = 0; j < part; ++j) ++dual[static_cast<std::size_t>(j)];
  return Partition(dual);
}

/// lambda^(j)_i = max(lambda_i - j, 0).
inline Partition truncate(const Partition& p, int j) {
  if (j < 0) throw ArgumentError("negative truncation index");
  std::vector<int> out;
  for (int part : p.parts()) out.push_back(std::max(part - j, 0));
  return Partition(out);
}

/// Exceptional (gap) degrees K_lambda and the sporadic allowed degrees.
struct DegreeSets {
  std::vector<int> exceptional;  ///< sorted ascending, size N
  std::vector<int> sporadic;     ///< the lambda_1 smallest allowed degrees

  bool is_exceptional(int n) const {
    return std::binary_search(exceptional.begin(), exceptional.end(), n);
  }
  bool is_allowed(int n) const { return n >= 0 && !is_exceptional(n); }

  /// Allowed degrees n <= cutoff.
  std::vector<int> allowed(int cutoff) const {
    std::vector<int> out;
    for (int n = 0; n <= cutoff; ++n)
      if (!is_exceptional(n)) out.push_back(n);
    return out;
  }

  /// The k-th smallest allowed degree, 1-based.
  int nth_allowed(int k) const {
    for (int n = 0;; ++n)
      if (!is_exceptional(n) && --k == 0) return n;
  }
};

/// Default enumeration cutoff for I_lambda: every degree >= lambda_1 + N is allowed.
inline int default_cutoff(const Partition& p) { return p.largest() + p.size() + 16; }

inline DegreeSets degree_sets(const Partition& p) {
  const int n_total = p.size();
  const int ell = p.length();
  DegreeSets d;
  for (int i = 1; i <= n_total; ++i) d.exceptional.push_back(p[i] + n_total - i);
  std::sort(d.exceptional.begin(), d.exceptional.end());

  // Union form: {0..N-ell-1} together with {m_i + N - ell}, m_i = lambda_i + ell - i.
  std::vector<int> union_form;
  for (int k = 0; k < n_total - ell; ++k) union_form.push_back(k);
  for (int i = 1; i <= ell; ++i) union_form.push_back(p[i] + ell - i + n_total - ell);
  std::sort(union_form.begin(), union_form.end());
  if (union_form != d.exceptional)
    throw InconsistencyError("gap set union form", "K_lambda mismatch");

  for (int n = 0; static_cast<int>(d.sporadic.size()) < p.largest(); ++n)
    if (!d.is_exceptional(n)) d.sporadic.push_back(n);
  return d;
}

/// Inverse of degree_sets: lambda_i = k_i + i - N with k_1 > ... > k_N.
inline Partition partition_from_gapset(std::span<const int> gaps) {
  using Reason = InfeasibleGapsetError::Reason;
  std::vector<long> k(gaps.begin(), gaps.end());
  for (long v : k)
    if (v < 0) throw InfeasibleGapsetError(Reason::negative_entry, "gap set has a negative entry");
  std::sort(k.begin(), k.end(), std::greater<>());
  if (std::adjacent_find(k.begin(), k.end()) != k.end())
    throw InfeasibleGapsetError(Reason::not_distinct, "gap set entries are not distinct");
  const long n_total = static_cast<long>(k.size());
  const long sum = std::accumulate(k.begin(), k.end(), 0L);
  const long expected = n_total * (n_total + 1) / 2;
  if (sum != expected) {
    throw InfeasibleGapsetError(Reason::wrong_sum, "sum " + std::to_string(sum) +
                                                       " != " + std::to_string(expected));
  }
  std::vector<int> parts;
  for (long i = 1; i <= n_total; ++i) {
    const long part = k[static_cast<std::size_t>(i - 1)] + i - n_total;
    if (part < 0 || (!parts.empty() && part > parts.back())) {
      throw InfeasibleGapsetError(Reason::not_partition,
                                  "k_i + i - N is not a non-increasing non-negative sequence");
    }
    parts.push_back(static_cast<int>(part));
  }
  Partition lambda(parts);
  std::vector<int> sorted(gaps.begin(), gaps.end());
  std::sort(sorted.begin(), sorted.end());
  if (degree_sets(lambda).exceptional != sorted)
    throw InconsistencyError("gap set roundtrip", "K_lambda differs from input");
  return lambda;
}

struct ChainLength {
  int j;            ///< truncation index
  int length;       ///< ell_j, length of lambda^(j)
  int next_degree;  ///< n_{j+1}, the (j+1)-th smallest allowed degree
};

/// (j, ell_j, n_{j+1}) for j = 0..lambda_1-1, with ell_j = N - n_{j+1} + j checked.
inline std::vector<ChainLength> chain_lengths(const Partition& p) {
  const DegreeSets d = degree_sets(p);
  std::vector<ChainLength> out;
  for (int j = 0; j < p.largest(); ++j) {
    const int ell_j = truncate(p, j).length();
    const int n_next = d.nth_allowed(j + 1);
    if (ell_j != p.size() - n_next + j) {
      throw InconsistencyError("ell_j = N - n_{j+1} + j",
                               "j=" + std::to_string(j) + " ell_j=" + std::to_string(ell_j) +
                                   " n=" + std::to_string(n_next));
    }
    out.push_back({j, ell_j, n_next});
  }
  return out;
}

/// All partitions of n, in reverse lexicographic order.
inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      cur.push_back(part);
      rec(remaining - part, part);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

}  // namespace xhermite

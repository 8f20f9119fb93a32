#pragma once

#include <string>
#include <string_view>

#include "seqmc/types.hpp"

namespace seqmc {

enum class SpendingKind { default_rate, truncated, power };

/// Risk budget n -> eps_n for SIMCTEST.
///
///   default:   eps * n / (n + k)
///   truncated: 0 for n <= L, eps * n / (n + k) for L < n < U, eps for n >= U
///   power:     eps * n^gamma / (n^gamma + k)
struct SpendingSequence {
  SpendingKind kind = SpendingKind::default_rate;
  double epsilon = 1e-3;
  double k = 1000.0;
  double gamma = 1.0;     // power only
  Step lower_cut = 0;     // truncated only (L)
  Step upper_cut = 0;     // truncated only (U)

  static SpendingSequence default_rate(double epsilon, double k = 1000.0);
  static SpendingSequence truncated(double epsilon, Step lower_cut, Step upper_cut, double k = 1000.0);
  static SpendingSequence power(double epsilon, double gamma, double k);

  void validate() const;

  /// True for kinds whose boundaries are non-decreasing in n.
  bool monotone_boundaries() const noexcept { return kind != SpendingKind::truncated; }

  friend bool operator==(const SpendingSequence&, const SpendingSequence&) = default;
};

/// eps_n for n >= 1. Throws PreconditionError for n < 1.
double spending_at(const SpendingSequence& seq, Step n);

/// Descriptor text, e.g. "default(k=1000)", "truncated(L=100,U=10000,k=1000)",
/// "power(gamma=0.5,k=3)". Epsilon is not part of the descriptor.
std::string describe(const SpendingSequence& seq);

/// Inverse of describe(). Also accepts the bare names "default", "truncated"
/// (L=100,U=10000) and "power" (gamma=0.5,k=3) with their documented defaults,
/// and ':' in place of the parentheses ("power:gamma=0.5,k=3").
SpendingSequence parse_spending(std::string_view text, double epsilon);

}  // namespace seqmc

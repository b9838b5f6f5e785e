#pragma once

// Coherent-state reference values and the q -> 1 convergence harness.

#include <string_view>
#include <vector>

#include "qstates/complex.hpp"
#include "qstates/moments.hpp"

namespace qstates {

/// <x> = (alpha + conj alpha)/sqrt2, <x^2> = 1/2 + (alpha + conj alpha)^2/2,
/// <p> = (alpha - conj alpha)/(i sqrt2), <p^2> = 1/2 - (alpha - conj alpha)^2/2,
/// product 1/2.
MomentReport coherent_reference_moments(cplx alpha);

/// pi^{-1/2} e^{-(k - p0)^2} with p0 = sqrt2 Im alpha.
double coherent_pd(cplx alpha, double k);

/// Default bound on |q - 1| for the second-order expansion.
inline constexpr double kExpansionRegime = 0.1;

/// (1 + (q-1)/8 Q^2) e^{-Q/2}, Q = x^2 - 2 sqrt2 alpha x + alpha^2 + |alpha|^2,
/// normalized by quadrature once at construction. Errc::regime_warning when
/// |q - 1| exceeds the regime bound.
class QExpansionState {
public:
  QExpansionState(double q, cplx alpha, double regime = kExpansionRegime, double tol = 1e-10);

  cplx operator()(double x) const;
  double norm_constant() const noexcept { return norm_; }

  /// The bracket before normalization.
  static cplx raw(double q, cplx alpha, double x);

private:
  double q_;
  cplx alpha_;
  double norm_;
};

/// One-shot evaluation; prefer QExpansionState for repeated points.
cplx q_expansion_state(double q, cplx alpha, double x, double regime = kExpansionRegime);

enum class Verdict { converged, not_converged };

std::string_view to_string(Verdict v) noexcept;

struct QuantityTrack {
  std::string_view name;
  std::vector<double> gaps;
  Verdict verdict = Verdict::not_converged;
  // max over the sequence of gap / (q - 1), and whether it stays within 10x
  // of its first value.
  double max_ratio = 0.0;
  bool ratio_bounded = false;
};

struct LimitReport {
  cplx alpha{};
  std::vector<double> q_sequence;
  QuantityTrack mean_x, mean_x2, mean_p, mean_p2, product, pd_distance;

  std::vector<const QuantityTrack*> tracks() const {
    return {&mean_x, &mean_x2, &mean_p, &mean_p2, &product, &pd_distance};
  }
  bool all_converged() const;
};

struct LimitOptions {
  double tol = 1e-10;
  double pd_tol = 1e-9;
  double final_gap = 1e-2;
  // Gaps below this count as exactly zero (quantities fixed by parity).
  double zero_floor = 1e-9;
  // pd distance is the max over this many points on [-6, 6].
  int pd_points = 121;
};

/// Runs moments_oracle and momentum_pd along a strictly decreasing sequence
/// in (1, 7/3) and compares with the coherent-state values. A quantity has
/// converged when its gaps strictly decrease and the last one is below
/// final_gap, or when every gap is below zero_floor.
LimitReport limit_convergence_check(cplx alpha, const std::vector<double>& q_sequence,
                                    const LimitOptions& opts = {});

/// Convergence verdict for one sequence of gaps.
Verdict judge(const std::vector<double>& gaps, double final_gap, double zero_floor);

} // namespace qstates

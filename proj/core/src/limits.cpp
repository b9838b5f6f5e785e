#include "qstates/limits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qstates/errors.hpp"
#include "qstates/momentum.hpp"

namespace qstates {

MomentReport coherent_reference_moments(cplx alpha) {
  const cplx sum = alpha + std::conj(alpha);
  const cplx diff = alpha - std::conj(alpha);
  MomentReport r;
  r.q = 1.0;
  r.alpha = alpha;
  r.method = Method::closed_form;
  r.mean_x = sum / sqrt2;
  r.mean_x2 = 0.5 + 0.5 * sum * sum;
  r.mean_p = diff / (cplx(0.0, 1.0) * sqrt2);
  r.mean_p2 = 0.5 - 0.5 * diff * diff;
  r.var_x = 0.5;
  r.var_p = 0.5;
  r.product = 0.5;
  return r;
}

double coherent_pd(cplx alpha, double k) {
  const double p0 = sqrt2 * alpha.imag();
  return std::exp(-(k - p0) * (k - p0)) / std::sqrt(pi);
}

QExpansionState::QExpansionState(double q, cplx alpha, double regime, double tol) : q_(q), alpha_(alpha) {
  if (std::abs(q - 1.0) > regime * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "|q - 1| = " << std::abs(q - 1.0) << " exceeds the expansion regime " << regime;
    throw Error(Errc::regime_warning, os.str());
  }
  norm_ = oracle_normalization([q, alpha](double x) { return raw(q, alpha, x); }, tol, state_scale(alpha));
}

cplx QExpansionState::raw(double q, cplx alpha, double x) {
  const cplx Q = x * x - 2.0 * sqrt2 * alpha * x + alpha * alpha + std::norm(alpha);
  return (1.0 + 0.125 * (q - 1.0) * Q * Q) * std::exp(-0.5 * Q);
}

cplx QExpansionState::operator()(double x) const { return norm_ * raw(q_, alpha_, x); }

cplx q_expansion_state(double q, cplx alpha, double x, double regime) {
  return QExpansionState(q, alpha, regime)(x);
}

std::string_view to_string(Verdict v) noexcept { return v == Verdict::converged ? "converged" : "not-converged"; }

Verdict judge(const std::vector<double>& gaps, double final_gap, double zero_floor) {
  if (gaps.empty()) return Verdict::not_converged;
  if (std::all_of(gaps.begin(), gaps.end(), [zero_floor](double g) { return g < zero_floor; }))
    return Verdict::converged;
  for (std::size_t i = 1; i < gaps.size(); ++i)
    if (!(gaps[i] < gaps[i - 1])) return Verdict::not_converged;
  return gaps.back() < final_gap ? Verdict::converged : Verdict::not_converged;
}

bool LimitReport::all_converged() const {
  const auto t = tracks();
  return std::all_of(t.begin(), t.end(), [](const QuantityTrack* q) { return q->verdict == Verdict::converged; });
}

LimitReport limit_convergence_check(cplx alpha, const std::vector<double>& q_sequence, const LimitOptions& opts) {
  if (q_sequence.empty()) throw Error(Errc::invalid_argument, "empty q sequence");
  for (std::size_t i = 0; i < q_sequence.size(); ++i) {
    if (!(q_sequence[i] > 1.0)) throw Error(Errc::out_of_validity_window, "limit sequence needs q > 1");
    require_window(Quantity::second_moments, q_sequence[i]);
    if (i > 0 && !(q_sequence[i] < q_sequence[i - 1]))
      throw Error(Errc::invalid_argument, "q sequence must strictly decrease");
  }

  LimitReport rep;
  rep.alpha = alpha;
  rep.q_sequence = q_sequence;
  rep.mean_x.name = "mean_x";
  rep.mean_x2.name = "mean_x2";
  rep.mean_p.name = "mean_p";
  rep.mean_p2.name = "mean_p2";
  rep.product.name = "product";
  rep.pd_distance.name = "pd_distance";

  const MomentReport ref = coherent_reference_moments(alpha);
  std::vector<double> k_grid(opts.pd_points);
  for (int i = 0; i < opts.pd_points; ++i) k_grid[i] = -6.0 + 12.0 * i / (opts.pd_points - 1);

  for (double q : q_sequence) {
    const MomentReport m = moments_oracle(q, alpha, opts.tol);
    rep.mean_x.gaps.push_back(std::abs(m.mean_x - ref.mean_x));
    rep.mean_x2.gaps.push_back(std::abs(m.mean_x2 - ref.mean_x2));
    rep.mean_p.gaps.push_back(std::abs(m.mean_p - ref.mean_p));
    rep.mean_p2.gaps.push_back(std::abs(m.mean_p2 - ref.mean_p2));
    rep.product.gaps.push_back(m.product - ref.product);

    const MomentumPd pd = momentum_pd(q, alpha, k_grid, Method::oracle, opts.pd_tol);
    double dist = 0.0;
    for (const auto& s : pd.samples) dist = std::max(dist, std::abs(s.pd - coherent_pd(alpha, s.k)));
    rep.pd_distance.gaps.push_back(dist);
  }

  for (QuantityTrack* t : {&rep.mean_x, &rep.mean_x2, &rep.mean_p, &rep.mean_p2, &rep.product, &rep.pd_distance}) {
    std::vector<double> abs_gaps(t->gaps.size());
    std::transform(t->gaps.begin(), t->gaps.end(), abs_gaps.begin(), [](double g) { return std::abs(g); });
    t->verdict = judge(abs_gaps, opts.final_gap, opts.zero_floor);
    double first = 0.0;
    t->ratio_bounded = true;
    for (std::size_t i = 0; i < q_sequence.size(); ++i) {
      const double ratio = abs_gaps[i] < opts.zero_floor ? 0.0 : abs_gaps[i] / (q_sequence[i] - 1.0);
      if (i == 0) first = ratio;
      t->max_ratio = std::max(t->max_ratio, ratio);
    }
    t->ratio_bounded = t->max_ratio <= 10.0 * std::max(first, opts.zero_floor);
  }
  return rep;
}

} // namespace qstates

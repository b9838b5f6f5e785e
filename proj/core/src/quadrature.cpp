#include "qstates/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "qstates/errors.hpp"

namespace qstates {
namespace {

// Gauss-Kronrod 10/21 abscissae and weights (QUADPACK dqk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

using Integrand = std::function<cplx(double)>;

struct Piece {
  Integrand g;
  // Graded pieces map onto a singular hint; a non-finite value there is the
  // hint itself after rounding and contributes nothing.
  bool tolerate_nonfinite = false;
};

struct Segment {
  double a, b;
  cplx value;
  double error;
  std::size_t piece;
  // 50 eps * integral of |f|; refining cannot push the error below this.
  double floor = 0.0;
};

struct ByError {
  bool operator()(const Segment& l, const Segment& r) const { return l.error < r.error; }
};

cplx eval_checked(const Piece& p, double x) {
  const cplx v = p.g(x);
  if (std::isfinite(v.real()) && std::isfinite(v.imag())) return v;
  if (p.tolerate_nonfinite) return 0.0;
  std::ostringstream os;
  os << "integrand is not finite at t=" << x;
  throw Error(Errc::invalid_argument, os.str());
}

Segment gk21(const Piece& p, std::size_t index, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double dhalf = std::abs(half);

  const cplx fc = eval_checked(p, center);
  cplx resg = 0.0;
  cplx resk = kWgk[10] * fc;
  double resabs = kWgk[10] * std::abs(fc);
  std::array<cplx, 10> fv1{}, fv2{};
  for (int j = 0; j < 10; ++j) {
    const double absc = half * kXgk[j];
    fv1[j] = eval_checked(p, center - absc);
    fv2[j] = eval_checked(p, center + absc);
    const cplx fsum = fv1[j] + fv2[j];
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  const cplx reskh = resk * 0.5;
  double resasc = kWgk[10] * std::abs(fc - reskh);
  for (int j = 0; j < 10; ++j)
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  resabs *= dhalf;
  resasc *= dhalf;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  double floor = 0.0;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    floor = 50.0 * kEps * resabs;
    err = std::max(floor, err);
  }
  return Segment{a, b, resk * half, err, index, floor};
}

struct InitialRange {
  std::size_t piece;
  double a, b;
};

QuadratureResult adaptive(const std::vector<Piece>& pieces, const std::vector<InitialRange>& ranges,
                          double tol, const QuadratureOptions& opts) {
  std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
  std::vector<Segment> frozen;
  long evals = 0;
  cplx total = 0.0;
  double total_err = 0.0;

  for (const auto& r : ranges) {
    if (!(r.b > r.a)) continue;
    Segment s = gk21(pieces[r.piece], r.piece, r.a, r.b);
    evals += 21;
    total += s.value;
    total_err += s.error;
    heap.push(s);
  }

  auto resum = [&] {
    total = 0.0;
    total_err = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      total += copy.top().value;
      total_err += copy.top().error;
      copy.pop();
    }
    for (const auto& s : frozen) {
      total += s.value;
      total_err += s.error;
    }
  };

  long iteration = 0;
  bool width_limited = false;
  for (;;) {
    if (total_err <= tol * std::max(opts.abs_floor, std::abs(total))) {
      resum();
      if (total_err <= tol * std::max(opts.abs_floor, std::abs(total))) break;
    }
    if (heap.empty()) {
      // Every segment sits at its rounding floor: the estimate is as good as
      // doubles allow, so report it with the honest error.
      if (!width_limited) {
        resum();
        break;
      }
      std::ostringstream os;
      os << "roundoff limits accuracy: estimate " << total << " +- " << total_err;
      throw Error(Errc::not_converged, os.str());
    }
    if (evals + 42 > opts.max_evaluations) {
      std::ostringstream os;
      os << "evaluation budget " << opts.max_evaluations << " exhausted: estimate " << total << " +- "
         << total_err;
      throw Error(Errc::not_converged, os.str());
    }
    const Segment worst = heap.top();
    heap.pop();
    if (worst.floor > 0.0 && worst.error <= worst.floor) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    const double width = worst.b - worst.a;
    if (width <= 8.0 * kEps * std::max({std::abs(worst.a), std::abs(worst.b), 1e-300}) ||
        mid <= worst.a || mid >= worst.b) {
      width_limited = true;
      frozen.push_back(worst);
      continue;
    }
    const Segment left = gk21(pieces[worst.piece], worst.piece, worst.a, mid);
    const Segment right = gk21(pieces[worst.piece], worst.piece, mid, worst.b);
    evals += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (++iteration % 256 == 0) resum();
  }
  return QuadratureResult{total, total_err, evals};
}

bool is_hint(const std::vector<double>& hints, double x) {
  return std::any_of(hints.begin(), hints.end(), [x](double h) { return h == x; });
}

// Adds pieces for [l, r], grading quadratically toward ends that are singular
// hints.
void add_segment(const Integrand& f, double l, double r, bool sing_l, bool sing_r,
                 std::vector<Piece>& pieces, std::vector<InitialRange>& ranges) {
  if (sing_l && sing_r) {
    const double m = 0.5 * (l + r);
    add_segment(f, l, m, true, false, pieces, ranges);
    add_segment(f, m, r, false, true, pieces, ranges);
    return;
  }
  const double w = r - l;
  if (sing_l) {
    pieces.push_back({[f, l, w](double u) { return f(l + w * u * u) * (2.0 * w * u); }, true});
  } else if (sing_r) {
    pieces.push_back({[f, r, w](double u) { return f(r - w * u * u) * (2.0 * w * u); }, true});
  } else {
    pieces.push_back({f, false});
    ranges.push_back({pieces.size() - 1, l, r});
    return;
  }
  ranges.push_back({pieces.size() - 1, 0.0, 1.0});
}

void add_panels(const Integrand& f, std::vector<double> breaks, const std::vector<double>& hints,
                std::vector<Piece>& pieces, std::vector<InitialRange>& ranges) {
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    add_segment(f, breaks[i], breaks[i + 1], is_hint(hints, breaks[i]), is_hint(hints, breaks[i + 1]),
                pieces, ranges);
}

double max_abs_hint(const IntegrandSpec& f) {
  double m = 0.0;
  for (double h : f.hints) m = std::max(m, std::abs(h));
  return m;
}

double core_half_width(const IntegrandSpec& f) { return 8.0 * f.scale + max_abs_hint(f); }

void validate_tol(double tol) {
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
}

} // namespace

QuadratureResult integrate_interval(const IntegrandSpec& f, double a, double b, double tol,
                                    const QuadratureOptions& opts) {
  validate_tol(tol);
  if (!(a < b)) throw Error(Errc::invalid_argument, "integrate_interval requires a < b");
  std::vector<double> breaks{a, b};
  for (double h : f.hints)
    if (h > a && h < b) breaks.push_back(h);
  std::vector<Piece> pieces;
  std::vector<InitialRange> ranges;
  add_panels(f.evaluator, breaks, f.hints, pieces, ranges);
  return adaptive(pieces, ranges, tol, opts);
}

double estimate_decay_exponent(const IntegrandSpec& f, double core) {
  const double r1 = 1e3 * (core + 1.0);
  const double r2 = 10.0 * r1;
  double p = std::numeric_limits<double>::infinity();
  for (double side : {-1.0, 1.0}) {
    const double f1 = std::abs(f.evaluator(side * r1));
    const double f2 = std::abs(f.evaluator(side * r2));
    if (!(f1 > 1e-300) || !(f2 > 1e-300)) continue;
    p = std::min(p, std::log10(f1 / f2));
  }
  return p;
}

LineResult integrate_line(const IntegrandSpec& f, double tol, const QuadratureOptions& opts) {
  validate_tol(tol);
  const double L = core_half_width(f);
  const double p = estimate_decay_exponent(f, L);
  if (p <= 1.05) {
    std::ostringstream os;
    os << "tail samples decay like |x|^-" << p << ", not integrable";
    throw Error(Errc::slow_decay, os.str());
  }
  int m = 1;
  if (std::isfinite(p) && p < 4.0) m = std::clamp(static_cast<int>(std::ceil(3.0 / (p - 1.0))), 1, 40);

  std::vector<Piece> pieces;
  std::vector<InitialRange> ranges;
  std::vector<double> breaks{-L, L};
  for (double h : f.hints)
    if (h > -L && h < L) breaks.push_back(h);
  add_panels(f.evaluator, breaks, f.hints, pieces, ranges);

  const Integrand& g = f.evaluator;
  for (double side : {-1.0, 1.0}) {
    pieces.push_back({[g, L, m, side](double v) -> cplx {
                        const double x = L * std::pow(v, -m);
                        if (!std::isfinite(x)) return 0.0;
                        const double jac = m * x / v;
                        if (!std::isfinite(jac)) return 0.0;
                        const cplx val = g(side * x);
                        if (val == cplx(0.0, 0.0)) return 0.0;
                        return val * jac;
                      },
                      true});
    ranges.push_back({pieces.size() - 1, 0.0, 1.0});
  }

  LineResult out;
  static_cast<QuadratureResult&>(out) = adaptive(pieces, ranges, tol, opts);
  out.evaluations += 4;
  out.decay_exponent = p;
  out.tail_grading = m;
  return out;
}

std::pair<cplx, double> wynn_epsilon(const std::vector<cplx>& sums) {
  const std::size_t n = sums.size();
  if (n == 0) return {0.0, std::numeric_limits<double>::infinity()};
  if (n < 3) return {sums.back(), n == 2 ? std::abs(sums[1] - sums[0]) : std::numeric_limits<double>::infinity()};

  cplx best = sums.back();
  double best_err = std::abs(sums[n - 1] - sums[n - 2]);
  std::vector<cplx> prev(n + 1, 0.0);
  std::vector<cplx> cur = sums;
  for (int k = 1; cur.size() > 1; ++k) {
    std::vector<cplx> next(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const cplx d = cur[i + 1] - cur[i];
      if (d == cplx(0.0, 0.0)) {
        if (k % 2 == 1) return {cur[i + 1], 0.0};
        next[i] = std::numeric_limits<double>::max();
        continue;
      }
      next[i] = prev[i + 1] + 1.0 / d;
    }
    if (k % 2 == 0 && next.size() >= 2) {
      const double err = std::abs(next.back() - next[next.size() - 2]);
      if (std::isfinite(err) && err < best_err) {
        best_err = err;
        best = next.back();
      }
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {best, best_err};
}

QuadratureResult fourier_transform_line(const IntegrandSpec& f, double k, double tol,
                                        const QuadratureOptions& opts) {
  validate_tol(tol);
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * pi);
  if (k == 0.0) {
    LineResult r = integrate_line(f, tol, opts);
    return QuadratureResult{r.value * inv_sqrt_2pi, r.err_estimate * inv_sqrt_2pi, r.evaluations};
  }

  const Integrand g = [fe = f.evaluator, k](double x) { return fe(x) * std::polar(1.0, -k * x); };
  const double half_period = pi / std::abs(k);
  const double L0 = core_half_width(f);
  const auto n_half = static_cast<long>(std::ceil(L0 / half_period));
  const double L = n_half * half_period;

  // Core: one panel per half period (capped at 4000 panels).
  const long panels = std::min<long>(2 * n_half, 4000);
  std::vector<double> breaks;
  breaks.reserve(panels + 1 + f.hints.size());
  for (long j = 0; j <= panels; ++j) breaks.push_back(-L + (2.0 * L) * j / panels);
  for (double h : f.hints)
    if (h > -L && h < L) breaks.push_back(h);
  std::vector<Piece> pieces;
  std::vector<InitialRange> ranges;
  add_panels(g, breaks, f.hints, pieces, ranges);
  QuadratureResult core = adaptive(pieces, ranges, 0.5 * tol, opts);

  long evals = core.evaluations;
  cplx total = core.value;
  double total_err = core.err_estimate;
  const double scale = std::max(1.0, std::abs(core.value));

  // Tails: half-period cycles alternate in sign, which is the regime where
  // epsilon extrapolation of the partial sums is effective.
  for (double side : {-1.0, 1.0}) {
    std::vector<cplx> partial;
    cplx running = 0.0;
    int quiet = 0;
    cplx estimate = 0.0;
    double estimate_err = std::numeric_limits<double>::infinity();
    cplx last_estimate = std::numeric_limits<double>::max();
    bool done = false;
    QuadratureOptions cycle_opts = opts;
    cycle_opts.abs_floor = scale;
    for (long j = 0; j < 20000 && !done; ++j) {
      const double x0 = side * (L + j * half_period);
      const double x1 = side * (L + (j + 1) * half_period);
      std::vector<Piece> cp{{g, false}};
      std::vector<InitialRange> cr{{0, std::min(x0, x1), std::max(x0, x1)}};
      cycle_opts.max_evaluations = std::max<long>(1000, opts.max_evaluations - evals);
      QuadratureResult c = adaptive(cp, cr, 1e-3 * tol, cycle_opts);
      evals += c.evaluations;
      running += c.value;
      partial.push_back(running);
      if (partial.size() > 60) partial.erase(partial.begin());

      if (std::abs(c.value) <= 1e-3 * tol * scale) {
        if (++quiet >= 3) {
          estimate = running;
          estimate_err = 3.0 * std::abs(c.value) + c.err_estimate;
          done = true;
        }
        continue;
      }
      quiet = 0;
      if (partial.size() >= 6) {
        auto [est, err] = wynn_epsilon(partial);
        const double change = std::abs(est - last_estimate);
        last_estimate = est;
        if (std::max(err, change) <= 0.1 * tol * scale) {
          estimate = est;
          estimate_err = std::max(err, change);
          done = true;
        }
      }
      if (evals > opts.max_evaluations) break;
    }
    if (!done) {
      std::ostringstream os;
      os << "Fourier tail did not converge at k=" << k;
      throw Error(Errc::not_converged, os.str());
    }
    total += estimate;
    total_err += estimate_err;
  }
  return QuadratureResult{total * inv_sqrt_2pi, total_err * inv_sqrt_2pi, evals};
}

} // namespace qstates

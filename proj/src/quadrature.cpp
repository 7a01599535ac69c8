#include "fermi/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace fermi::quad {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

struct Segment {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

struct ByError {
  bool operator()(const Segment& lhs, const Segment& rhs) const { return lhs.error < rhs.error; }
};

// Neumaier-compensated running sum.
class Accumulator {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

std::string format_abscissa(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

class Engine {
 public:
  explicit Engine(const Integrand& f) : f_(f) {}

  double eval(double x) {
    ++evaluations_;
    const double v = f_.eval(x);
    if (!std::isfinite(v)) {
      throw QuadratureError(QuadratureError::Kind::kNonFinite,
                            "integrand returned a non-finite value at x = " + format_abscissa(x),
                            {partial_, 0.0, evaluations_}, x);
    }
    return v;
  }

  Segment rule(double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const auto& xk = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();

    // Gauss order 10 is even: the center is a Kronrod-only node and the Gauss
    // nodes sit at the odd Kronrod indices.
    const double fc = eval(center);
    double kronrod = fc * wk[0];
    double gauss = 0.0;
    double l1 = std::abs(fc) * wk[0];
    for (std::size_t i = 1; i < xk.size(); ++i) {
      const double dx = half * xk[i];
      const double fp = eval(center + dx);
      const double fm = eval(center - dx);
      kronrod += (fp + fm) * wk[i];
      l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
      if (i % 2 == 1) gauss += (fp + fm) * wg[i / 2];
    }
    Segment s{a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
    // Nothing below the rounding level of the rule itself is resolvable.
    s.error = std::max(s.error, 50.0 * kEps * l1 * std::abs(half));
    return s;
  }

  std::size_t evaluations() const { return evaluations_; }
  void set_partial(double v) { partial_ = v; }

 private:
  const Integrand& f_;
  std::size_t evaluations_ = 0;
  double partial_ = 0.0;
};

bool is_declared(const Integrand& f, double x) {
  return std::any_of(f.singular_points.begin(), f.singular_points.end(), [x](double s) {
    return std::abs(s - x) <= 4.0 * kEps * std::max(1.0, std::abs(s));
  });
}

void add_graded_cuts(std::vector<double>& cuts, double p, double q, bool toward_p,
                     const Options& options) {
  double w = q - p;
  for (int k = 0; k < options.grading_levels; ++k) {
    w *= options.grading_ratio;
    const double c = toward_p ? p + w : q - w;
    if (!(c > p && c < q)) break;
    cuts.push_back(c);
  }
}

// Breakpoints for [a, b]: declared singular points inside the interval plus
// geometric cuts toward every singular end of each resulting piece.
std::vector<double> initial_breakpoints(const Integrand& f, double a, double b,
                                        const Options& options) {
  std::vector<double> nodes{a};
  std::vector<double> inner;
  for (double s : f.singular_points) {
    if (s > a && s < b) inner.push_back(s);
  }
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  nodes.insert(nodes.end(), inner.begin(), inner.end());
  nodes.push_back(b);

  std::vector<double> cuts;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double p = nodes[i];
    const double q = nodes[i + 1];
    const bool left = (i > 0) || is_declared(f, p);
    const bool right = (i + 2 < nodes.size()) || is_declared(f, q);
    if (left && right) {
      const double m = 0.5 * (p + q);
      cuts.push_back(m);
      add_graded_cuts(cuts, p, m, true, options);
      add_graded_cuts(cuts, m, q, false, options);
    } else if (left) {
      add_graded_cuts(cuts, p, q, true, options);
    } else if (right) {
      add_graded_cuts(cuts, p, q, false, options);
    }
  }
  nodes.insert(nodes.end(), cuts.begin(), cuts.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

void check_finite_interval(double a, double b, double tol) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw QuadratureError(QuadratureError::Kind::kInvalidArgument,
                          "integrate_finite requires finite a < b");
  }
  if (!(tol > 0.0)) {
    throw QuadratureError(QuadratureError::Kind::kInvalidArgument, "tolerance must be positive");
  }
}

QuadratureResult summarize(std::vector<Segment>& segments, std::size_t evaluations) {
  std::sort(segments.begin(), segments.end(),
            [](const Segment& l, const Segment& r) { return l.a < r.a; });
  Accumulator value;
  double error = 0.0;
  for (const auto& s : segments) {
    value.add(s.value);
    error += s.error;
  }
  return {value.value(), error, evaluations};
}

}  // namespace

QuadratureResult integrate_finite(const Integrand& f, double a, double b, const Options& options) {
  check_finite_interval(a, b, options.tol);
  Engine engine(f);

  const auto nodes = initial_breakpoints(f, a, b, options);
  std::priority_queue<Segment, std::vector<Segment>, ByError> open;
  std::vector<Segment> closed;
  double total_error = 0.0;
  double running_value = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    Segment s = engine.rule(nodes[i], nodes[i + 1]);
    total_error += s.error;
    running_value += s.value;
    engine.set_partial(running_value);
    open.push(s);
  }

  auto best_so_far = [&]() {
    std::vector<Segment> all = closed;
    auto copy = open;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    return summarize(all, engine.evaluations());
  };

  std::size_t intervals = open.size();
  while (total_error > options.tol) {
    if (open.empty() || intervals >= options.max_intervals) {
      auto best = best_so_far();
      std::ostringstream os;
      os << "quadrature did not reach tol " << options.tol << " on [" << a << ", " << b
         << "]: error estimate " << best.error_estimate << " after " << intervals << " intervals";
      throw QuadratureError(QuadratureError::Kind::kNonConvergence, os.str(), best);
    }
    Segment worst = open.top();
    open.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const double scale = std::max({std::abs(worst.a), std::abs(worst.b), 1e-300});
    if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 128.0 * kEps * scale) {
      closed.push_back(worst);
      continue;
    }
    Segment left = engine.rule(worst.a, mid);
    Segment right = engine.rule(mid, worst.b);
    total_error += left.error + right.error - worst.error;
    running_value += left.value + right.value - worst.value;
    engine.set_partial(running_value);
    open.push(left);
    open.push(right);
    ++intervals;
    if (total_error <= options.tol) {
      // Re-sum to shed incremental drift before accepting.
      total_error = 0.0;
      for (const auto& s : closed) total_error += s.error;
      auto copy = open;
      while (!copy.empty()) {
        total_error += copy.top().error;
        copy.pop();
      }
    }
  }
  return best_so_far();
}

QuadratureResult integrate_finite(const Integrand& f, double a, double b, double tol) {
  Options options;
  options.tol = tol;
  return integrate_finite(f, a, b, options);
}

namespace {

// Decay exponent p with |f| ~ x^{-p}, from the hint or estimated by sampling.
double resolve_tail_exponent(const Integrand& f, double a, std::size_t& evaluations) {
  if (f.tail_exponent && *f.tail_exponent > 1.0) return *f.tail_exponent;

  double g[4];
  double xs[4];
  for (int k = 0; k < 4; ++k) {
    xs[k] = (a + 1.0) * std::pow(10.0, k + 2);
    const double v = f.eval(xs[k]);
    ++evaluations;
    if (!std::isfinite(v)) {
      throw QuadratureError(QuadratureError::Kind::kNonFinite,
                            "integrand returned a non-finite value at x = " + format_abscissa(xs[k]),
                            {}, xs[k]);
    }
    g[k] = std::abs(v) * xs[k];
  }
  if (g[3] == 0.0 && g[2] == 0.0) return std::numeric_limits<double>::infinity();
  const bool decaying = g[1] < g[0] && g[2] < g[1] && g[3] < g[2];
  if (!decaying || g[2] == 0.0) {
    throw QuadratureError(QuadratureError::Kind::kBadTail,
                          "no valid tail exponent hint and the integrand does not decay");
  }
  const double p = 1.0 + std::log10(g[2] / g[3]);
  if (!(p > 1.05)) {
    throw QuadratureError(QuadratureError::Kind::kBadTail,
                          "integrand decays too slowly for a convergent tail (estimated p <= 1)");
  }
  return p;
}

}  // namespace

QuadratureResult integrate_semiinfinite(const Integrand& f, double a, const Options& options) {
  if (!std::isfinite(a) || a < 0.0) {
    throw QuadratureError(QuadratureError::Kind::kInvalidArgument,
                          "integrate_semiinfinite requires finite a >= 0");
  }
  if (!(options.tol > 0.0)) {
    throw QuadratureError(QuadratureError::Kind::kInvalidArgument, "tolerance must be positive");
  }

  QuadratureResult total;
  const double p = resolve_tail_exponent(f, a, total.evaluations);
  double last_singular = a;
  for (double s : f.singular_points) last_singular = std::max(last_singular, s);

  Accumulator value;
  double lo = a;
  double hi = std::max(2.0 * a, a + 1.0);
  int quiet_panels = 0;
  for (int k = 0;; ++k) {
    if (hi > options.max_extent) {
      total.value = value.value();
      throw QuadratureError(QuadratureError::Kind::kNonConvergence,
                            "tail did not decay below tolerance before max_extent", total);
    }
    Options panel = options;
    panel.tol = options.tol / (4.0 * (k + 1.0) * (k + 1.0));
    QuadratureResult r;
    try {
      r = integrate_finite(f, lo, hi, panel);
    } catch (const QuadratureError& e) {
      QuadratureResult best = total;
      best.value = value.value() + e.best_estimate().value;
      best.evaluations += e.best_estimate().evaluations;
      throw QuadratureError(e.kind(), e.what(), best, e.abscissa());
    }
    value.add(r.value);
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;

    const double fx = f.eval(hi);
    ++total.evaluations;
    if (!std::isfinite(fx)) {
      throw QuadratureError(QuadratureError::Kind::kNonFinite,
                            "integrand returned a non-finite value at x = " + format_abscissa(hi),
                            total, hi);
    }
    const double remainder = std::isinf(p) ? 0.0 : fx * hi / (p - 1.0);
    const double bound = std::isinf(p) ? std::abs(fx) * hi : std::abs(remainder);
    if (hi >= last_singular && bound < options.tol / 10.0) {
      if (++quiet_panels >= 2) {
        value.add(remainder);
        total.error_estimate += std::abs(remainder);
        total.value = value.value();
        return total;
      }
    } else {
      quiet_panels = 0;
    }
    lo = hi;
    hi *= 2.0;
  }
}

QuadratureResult integrate_semiinfinite(const Integrand& f, double a, double tol) {
  Options options;
  options.tol = tol;
  return integrate_semiinfinite(f, a, options);
}

}  // namespace fermi::quad

#include "starorlicz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "starorlicz/errors.hpp"

namespace starorlicz {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kParallelThreshold = 256;

// Neumaier's compensated sum.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

unsigned thread_cap() {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("STAR_ORLICZ_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) cap = std::min<unsigned>(cap, static_cast<unsigned>(v));
  }
  return cap;
}

void check_values(std::span<const double> values, std::span<const Direction> nodes) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "integrand is " << values[i] << " at quadrature node " << i << " (";
      const auto u = nodes[i].components();
      for (std::size_t k = 0; k < u.size(); ++k) msg << (k ? ", " : "") << u[k];
      msg << ")";
      throw EvaluationError(msg.str());
    }
  }
}

double weighted_sum(std::span<const double> w, std::span<const double> f, double* abs_sum) {
  Accumulator s, a;
  for (std::size_t i = 0; i < f.size(); ++i) {
    s.add(w[i] * f[i]);
    a.add(std::abs(w[i] * f[i]));
  }
  if (abs_sum) *abs_sum = a.value();
  return s.value();
}

}  // namespace

const char* to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::CircleTrapezoid:
      return "circle_trapezoid";
    case RuleKind::SphereProductGauss:
      return "sphere_product_gauss";
    case RuleKind::MonteCarlo:
      return "monte_carlo";
  }
  return "unknown";
}

const char* QuadratureRule::error_model() const {
  switch (descriptor.kind) {
    case RuleKind::CircleTrapezoid:
      return "spectral";
    case RuleKind::SphereProductGauss:
      return "algebraic";
    case RuleKind::MonteCarlo:
      return "1/sqrt(N)";
  }
  return "unknown";
}

double unit_ball_volume(int n) {
  if (n < 0) throw InvalidArgument("dimension must be nonnegative");
  double w = (n % 2 == 0) ? 1.0 : 2.0;
  for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2) w *= 2.0 * kPi / k;
  return w;
}

void gauss_legendre(std::size_t count, std::vector<double>& nodes, std::vector<double>& weights) {
  if (count < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
  nodes.assign(count, 0.0);
  weights.assign(count, 0.0);
  const double m = static_cast<double>(count);
  // P_count(x) and its derivative by the three-term recurrence.
  auto legendre = [count, m](double x, double& dp) {
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= count; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    if (count == 1) p0 = 1.0;
    dp = m * (x * p1 - p0) / (x * x - 1.0);
    return p1;
  };
  for (std::size_t i = 0; i < count / 2; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double dx = legendre(x, dp) / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    legendre(x, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[count - 1 - i] = x;
    weights[i] = weights[count - 1 - i] = w;
  }
  if (count % 2 == 1) {
    double dp = 0.0;
    legendre(0.0, dp);
    weights[count / 2] = 2.0 / (dp * dp);
  }
}

QuadratureRule circle_trapezoid(std::size_t N) {
  if (N < 4) throw InvalidArgument("circle rule needs N >= 4");
  QuadratureRule rule;
  rule.dimension = 2;
  rule.descriptor = {RuleKind::CircleTrapezoid, N, 0, 0, 0};
  rule.nodes = direction_grid(2, N);
  rule.weights.assign(N, 2.0 * kPi / static_cast<double>(N));
  return rule;
}

QuadratureRule sphere_product_gauss(std::size_t n_theta, std::size_t n_phi) {
  if (n_theta < 4 || n_phi < 4) throw InvalidArgument("product rule sizes must be >= 4");
  std::vector<double> x, w;
  gauss_legendre(n_theta, x, w);
  QuadratureRule rule;
  rule.dimension = 3;
  rule.descriptor = {RuleKind::SphereProductGauss, n_theta * n_phi, n_theta, n_phi, 0};
  rule.nodes.reserve(n_theta * n_phi);
  rule.weights.reserve(n_theta * n_phi);
  const double dphi = 2.0 * kPi / static_cast<double>(n_phi);
  for (std::size_t i = 0; i < n_theta; ++i) {
    const double s = std::sqrt(std::max(0.0, 1.0 - x[i] * x[i]));
    for (std::size_t j = 0; j < n_phi; ++j) {
      const double phi = dphi * static_cast<double>(j);
      rule.nodes.push_back(Direction::normalized({s * std::cos(phi), s * std::sin(phi), x[i]}));
      rule.weights.push_back(w[i] * dphi);
    }
  }
  return rule;
}

QuadratureRule monte_carlo(int n, std::size_t N, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("dimension must be at least 2");
  if (N < 4) throw InvalidArgument("Monte Carlo rule needs N >= 4");
  QuadratureRule rule;
  rule.dimension = n;
  rule.descriptor = {RuleKind::MonteCarlo, N, 0, 0, seed};
  rule.nodes = random_directions(n, N, seed);
  rule.weights.assign(N, n * unit_ball_volume(n) / static_cast<double>(N));
  return rule;
}

QuadratureRule make_rule(int n, std::size_t size1, std::size_t size2, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("dimension must be at least 2");
  if (n == 2) return circle_trapezoid(size1 ? size1 : 2048);
  if (n == 3) {
    const std::size_t nt = size1 ? size1 : 64;
    return sphere_product_gauss(nt, size2 ? size2 : 2 * nt);
  }
  return monte_carlo(n, size1 ? size1 : 200000, seed);
}

std::vector<double> evaluate_on(const BatchIntegrand& f, std::span<const Direction> nodes) {
  const unsigned threads =
      nodes.size() < kParallelThreshold
          ? 1u
          : std::min<unsigned>(thread_cap(), static_cast<unsigned>(nodes.size() / 64));
  if (threads <= 1) {
    auto values = f(nodes);
    if (values.size() != nodes.size()) throw EvaluationError("integrand returned wrong count");
    return values;
  }
  std::vector<double> values(nodes.size());
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  const std::size_t chunk = (nodes.size() + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = std::min(nodes.size(), t * chunk);
    const std::size_t hi = std::min(nodes.size(), lo + chunk);
    pool.emplace_back([&, t, lo, hi] {
      try {
        auto part = f(nodes.subspan(lo, hi - lo));
        if (part.size() != hi - lo) throw EvaluationError("integrand returned wrong count");
        std::copy(part.begin(), part.end(), values.begin() + static_cast<std::ptrdiff_t>(lo));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return values;
}

FunctionalValue integrate(const BatchIntegrand& f, const QuadratureRule& rule) {
  const auto values = evaluate_on(f, rule.nodes);
  check_values(values, rule.nodes);
  double abs_sum = 0.0;
  const double q = weighted_sum(rule.weights, values, &abs_sum);
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * abs_sum;

  double error = rounding;
  switch (rule.descriptor.kind) {
    case RuleKind::CircleTrapezoid: {
      const std::size_t N = rule.nodes.size();
      if (N >= 8 && N % 2 == 0) {
        Accumulator coarse;
        for (std::size_t i = 0; i < N; i += 2) coarse.add(2.0 * rule.weights[i] * values[i]);
        error = std::max(error, std::abs(q - coarse.value()));
      }
      break;
    }
    case RuleKind::SphereProductGauss: {
      const auto nt = rule.descriptor.n_theta / 2;
      const auto np = rule.descriptor.n_phi / 2;
      if (nt >= 4 && np >= 4) {
        const QuadratureRule coarse = sphere_product_gauss(nt, np);
        const auto cv = evaluate_on(f, coarse.nodes);
        check_values(cv, coarse.nodes);
        error = std::max(error, std::abs(q - weighted_sum(coarse.weights, cv, nullptr)));
      }
      break;
    }
    case RuleKind::MonteCarlo: {
      const double N = static_cast<double>(values.size());
      const double total = rule.weights.front() * N;
      Accumulator mean;
      for (double v : values) mean.add(v);
      const double mu = mean.value() / N;
      Accumulator var;
      for (double v : values) var.add((v - mu) * (v - mu));
      const double sd = std::sqrt(var.value() / (N - 1.0));
      error = std::max(error, total * sd / std::sqrt(N));
      break;
    }
  }
  return {q, error, rule.descriptor};
}

FunctionalValue integrate(const std::function<double(const Direction&)>& f,
                          const QuadratureRule& rule) {
  return integrate(
      BatchIntegrand([&f](std::span<const Direction> dirs) {
        std::vector<double> out;
        out.reserve(dirs.size());
        for (const auto& u : dirs) out.push_back(f(u));
        return out;
      }),
      rule);
}

FunctionalValue volume(const StarBody& K, const QuadratureRule& rule) {
  if (K.dimension() != rule.dimension) {
    throw InvalidArgument("body dimension " + std::to_string(K.dimension()) +
                          " does not match rule dimension " + std::to_string(rule.dimension));
  }
  const int n = K.dimension();
  auto fv = integrate(BatchIntegrand([&K, n](std::span<const Direction> dirs) {
                        auto r = K.radii(dirs);
                        for (double& v : r) v = std::pow(v, n);
                        return r;
                      }),
                      rule);
  fv.value /= n;
  fv.error_estimate /= n;
  return fv;
}

StarBody ball_equivalent(const StarBody& K, const QuadratureRule& rule) {
  const int n = K.dimension();
  const double vol = volume(K, rule).value;
  return ball(n, std::pow(vol / unit_ball_volume(n), 1.0 / n));
}

}  // namespace starorlicz

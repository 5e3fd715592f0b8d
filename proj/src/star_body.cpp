#include "starorlicz/star_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "starorlicz/errors.hpp"
#include "starorlicz/radial_addition.hpp"
#include "starorlicz/random.hpp"

namespace starorlicz {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string describe(std::span<const double> u) {
  std::ostringstream out;
  out.precision(17);
  out << "(";
  for (std::size_t i = 0; i < u.size(); ++i) out << (i ? ", " : "") << u[i];
  out << ")";
  return out.str();
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string(what) + " must be finite and positive");
  }
}

int common_dimension(const std::vector<StarBody>& bodies) {
  if (bodies.empty()) throw InvalidArgument("at least one body is required");
  const int n = bodies.front().dimension();
  for (const auto& b : bodies) {
    if (b.dimension() != n) {
      throw InvalidArgument("dimension mismatch: " + std::to_string(n) + " vs " +
                            std::to_string(b.dimension()));
    }
  }
  return n;
}

// A body written as factor · base, with chains of Dilate nodes removed.
// Balls reduce to factor · (unit ball), signalled by base == nullptr.
struct Stripped {
  double factor;
  const StarBody* base;
};

Stripped strip(const StarBody& body) {
  double k = 1.0;
  const StarBody* cur = &body;
  while (const auto* d = cur->as<node::Dilate>()) {
    k *= d->lambda;
    cur = &d->child;
  }
  if (const auto* b = cur->as<node::Ball>()) return {k * b->r, nullptr};
  return {k, cur};
}

// Same base for every body, or std::nullopt.
std::optional<std::vector<Stripped>> common_base(const std::vector<const StarBody*>& bodies) {
  std::vector<Stripped> out;
  for (const auto* b : bodies) out.push_back(strip(*b));
  for (const auto& s : out) {
    const bool same = s.base == nullptr
                          ? out.front().base == nullptr
                          : (out.front().base != nullptr &&
                             s.base->node_ptr() == out.front().base->node_ptr());
    if (!same) return std::nullopt;
  }
  return out;
}

class Evaluator {
 public:
  explicit Evaluator(std::span<const Direction> dirs) : dirs_(dirs) {}

  const std::vector<double>& eval(const StarBody& body) {
    const auto* key = body.node_ptr().get();
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::vector<double> values = compute(body);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i]) || !(values[i] > 0.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "radius " << values[i] << " at node '" << body.kind() << "' in direction "
            << describe(dirs_[i].components()) << " is not finite and positive";
        throw EvaluationError(msg.str());
      }
    }
    return cache_.emplace(key, std::move(values)).first->second;
  }

 private:
  std::vector<double> compute(const StarBody& body) {
    const std::size_t count = dirs_.size();
    std::vector<double> out(count);
    std::visit(
        Overloaded{
            [&](const node::Ball& b) { std::fill(out.begin(), out.end(), b.r); },
            [&](const node::Ellipsoid& e) {
              const int n = static_cast<int>(e.shape.rows());
              for (std::size_t i = 0; i < count; ++i) {
                const Eigen::Map<const Eigen::VectorXd> u(dirs_[i].components().data(), n);
                out[i] = 1.0 / std::sqrt(u.dot(e.shape * u));
              }
            },
            [&](const node::LpBall& b) {
              for (std::size_t i = 0; i < count; ++i) {
                double s = 0.0;
                for (double c : dirs_[i].components()) s += std::pow(std::abs(c), b.q);
                out[i] = b.scale * std::pow(s, -1.0 / b.q);
              }
            },
            [&](const node::CustomRadial& c) {
              for (std::size_t i = 0; i < count; ++i) out[i] = c.rho(dirs_[i].components());
            },
            [&](const node::Dilate& d) {
              const auto& child = eval(d.child);
              for (std::size_t i = 0; i < count; ++i) out[i] = d.lambda * child[i];
            },
            [&](const node::LinearImage& li) {
              // ρ_{TK}(u) = ρ_K(v) / ‖T⁻¹u‖ with v = T⁻¹u / ‖T⁻¹u‖.
              const int n = li.map.dimension();
              std::vector<Direction> pulled;
              std::vector<double> norms(count);
              pulled.reserve(count);
              for (std::size_t i = 0; i < count; ++i) {
                const Eigen::Map<const Eigen::VectorXd> u(dirs_[i].components().data(), n);
                const Eigen::VectorXd w = li.map.inverse() * u;
                norms[i] = w.norm();
                pulled.push_back(Direction::normalized(std::vector<double>(w.data(), w.data() + n)));
              }
              Evaluator inner(pulled);
              const auto& child = inner.eval(li.child);
              for (std::size_t i = 0; i < count; ++i) out[i] = child[i] / norms[i];
            },
            [&](const node::Intersect& s) {
              std::fill(out.begin(), out.end(), std::numeric_limits<double>::infinity());
              for (const auto& c : s.children) {
                const auto& r = eval(c);
                for (std::size_t i = 0; i < count; ++i) out[i] = std::min(out[i], r[i]);
              }
            },
            [&](const node::Union& s) {
              std::fill(out.begin(), out.end(), 0.0);
              for (const auto& c : s.children) {
                const auto& r = eval(c);
                for (std::size_t i = 0; i < count; ++i) out[i] = std::max(out[i], r[i]);
              }
            },
            [&](const node::OrliczSum& s) { orlicz_sum(s, out); },
            [&](const node::LinearOrliczSum& s) { linear_sum(s, out); },
        },
        body.node().value);
    return out;
  }

  void orlicz_sum(const node::OrliczSum& s, std::vector<double>& out) {
    std::vector<const StarBody*> bodies;
    for (const auto& c : s.children) bodies.push_back(&c);
    if (auto dil = common_base(bodies)) {
      std::vector<double> factors;
      for (const auto& st : *dil) factors.push_back(st.factor);
      const double c = solve_radial(s.phi, s.tau, factors);
      fill_scaled(c, dil->front().base, out);
      return;
    }
    std::vector<const std::vector<double>*> child_radii;
    for (const auto& c : s.children) child_radii.push_back(&eval(c));
    std::vector<double> a(s.children.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = 0; j < a.size(); ++j) a[j] = (*child_radii[j])[i];
      out[i] = solve_radial(s.phi, s.tau, a);
    }
  }

  void linear_sum(const node::LinearOrliczSum& s, std::vector<double>& out) {
    if (auto dil = common_base({&s.K, &s.L})) {
      const double c = solve_linear_radial(s.alpha, s.beta, s.phi1, s.phi2, s.tau,
                                           (*dil)[0].factor, (*dil)[1].factor);
      fill_scaled(c, dil->front().base, out);
      return;
    }
    const auto& rk = eval(s.K);
    const auto& rl = eval(s.L);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = solve_linear_radial(s.alpha, s.beta, s.phi1, s.phi2, s.tau, rk[i], rl[i]);
    }
  }

  void fill_scaled(double c, const StarBody* base, std::vector<double>& out) {
    if (base == nullptr) {
      std::fill(out.begin(), out.end(), c);
      return;
    }
    const auto& r = eval(*base);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * r[i];
  }

  std::span<const Direction> dirs_;
  std::unordered_map<const StarBody::Node*, std::vector<double>> cache_;
};

}  // namespace

// ---- Direction ----------------------------------------------------------------

Direction Direction::normalized(std::vector<double> v) {
  double norm2 = 0.0;
  for (double c : v) norm2 += c * c;
  const double norm = std::sqrt(norm2);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidArgument("direction must be a finite nonzero vector");
  }
  for (double& c : v) c /= norm;
  return Direction(std::move(v));
}

Direction Direction::unit(std::vector<double> u) {
  double norm2 = 0.0;
  for (double c : u) norm2 += c * c;
  if (!(std::abs(std::sqrt(norm2) - 1.0) <= 1e-14)) {
    throw InvalidArgument("direction " + describe(u) + " is not a unit vector");
  }
  return Direction(std::move(u));
}

Direction Direction::negated() const {
  std::vector<double> v = c_;
  for (double& c : v) c = -c;
  return Direction(std::move(v));
}

// ---- LinearMap ----------------------------------------------------------------

LinearMap::LinearMap(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  const auto n = matrix_.rows();
  if (n < 1 || matrix_.cols() != n) throw InvalidArgument("linear map must be square");
  if (!matrix_.allFinite()) throw InvalidArgument("linear map has non-finite entries");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(matrix_);
  if (!lu.isInvertible()) throw InvalidArgument("linear map is singular");
  inverse_ = lu.inverse();
  det_ = lu.determinant();
  const double residual =
      (matrix_ * inverse_ - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().rowwise().sum().maxCoeff();
  if (!(residual <= 1e-10) || det_ == 0.0) {
    std::ostringstream msg;
    msg << "linear map is numerically singular (|T T^-1 - I| = " << residual << ")";
    throw InvalidArgument(msg.str());
  }
}

LinearMap LinearMap::from_rows(const std::vector<std::vector<double>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n) {
      throw InvalidArgument("matrix must be square");
    }
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return LinearMap(std::move(m));
}

LinearMap LinearMap::identity(int n) { return LinearMap(Eigen::MatrixXd::Identity(n, n)); }

// ---- StarBody -----------------------------------------------------------------

int StarBody::dimension() const { return node_->dimension; }

std::string StarBody::kind() const {
  return std::visit(Overloaded{
                        [](const node::Ball&) { return "ball"; },
                        [](const node::Ellipsoid&) { return "ellipsoid"; },
                        [](const node::LpBall&) { return "lp_ball"; },
                        [](const node::CustomRadial&) { return "custom"; },
                        [](const node::Dilate&) { return "dilate"; },
                        [](const node::LinearImage&) { return "linear_image"; },
                        [](const node::Intersect&) { return "intersect"; },
                        [](const node::Union&) { return "union"; },
                        [](const node::OrliczSum&) { return "orlicz_sum"; },
                        [](const node::LinearOrliczSum&) { return "linear_orlicz_sum"; },
                    },
                    node_->value);
}

double StarBody::radius(const Direction& u) const {
  if (u.dimension() != dimension()) {
    throw InvalidArgument("direction dimension " + std::to_string(u.dimension()) +
                          " does not match body dimension " + std::to_string(dimension()));
  }
  return radii(std::span<const Direction>(&u, 1)).front();
}

std::vector<double> StarBody::radii(std::span<const Direction> directions) const {
  for (const auto& u : directions) {
    if (u.dimension() != dimension()) {
      throw InvalidArgument("direction dimension does not match body dimension");
    }
  }
  Evaluator evaluator(directions);
  return evaluator.eval(*this);
}

#define STARORLICZ_MAKE(T)                                                    \
  StarBody StarBody::make(int dimension, node::T v) {                         \
    if (dimension < 2) throw InvalidArgument("dimension must be at least 2"); \
    return StarBody(std::make_shared<const Node>(Node{dimension, std::move(v)})); \
  }
STARORLICZ_MAKE(Ball)
STARORLICZ_MAKE(Ellipsoid)
STARORLICZ_MAKE(LpBall)
STARORLICZ_MAKE(CustomRadial)
STARORLICZ_MAKE(Dilate)
STARORLICZ_MAKE(LinearImage)
STARORLICZ_MAKE(Intersect)
STARORLICZ_MAKE(Union)
STARORLICZ_MAKE(OrliczSum)
STARORLICZ_MAKE(LinearOrliczSum)
#undef STARORLICZ_MAKE

// ---- constructors -------------------------------------------------------------

StarBody ball(int n, double r) {
  require_positive(r, "ball radius");
  return StarBody::make(n, node::Ball{r});
}

StarBody ellipsoid_axes(std::vector<double> axes) {
  const auto n = static_cast<Eigen::Index>(axes.size());
  Eigen::MatrixXd shape = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    require_positive(axes[i], "ellipsoid semi-axis");
    shape(i, i) = 1.0 / (axes[i] * axes[i]);
  }
  return ellipsoid_matrix(std::move(shape));
}

StarBody ellipsoid_matrix(Eigen::MatrixXd shape) {
  const auto n = shape.rows();
  if (shape.cols() != n) throw InvalidArgument("ellipsoid shape matrix must be square");
  if (!shape.allFinite()) throw InvalidArgument("ellipsoid shape matrix has non-finite entries");
  if ((shape - shape.transpose()).cwiseAbs().maxCoeff() > 1e-12 * shape.cwiseAbs().maxCoeff()) {
    throw InvalidArgument("ellipsoid shape matrix must be symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(shape);
  if (llt.info() != Eigen::Success) {
    throw InvalidArgument("ellipsoid shape matrix must be positive definite");
  }
  return StarBody::make(static_cast<int>(n), node::Ellipsoid{std::move(shape)});
}

StarBody lp_ball(int n, double q, double scale) {
  require_positive(q, "l_q exponent");
  require_positive(scale, "l_q ball scale");
  return StarBody::make(n, node::LpBall{q, scale});
}

StarBody custom_radial(int n, std::string name,
                       std::function<double(std::span<const double>)> rho) {
  if (!rho) throw InvalidArgument("custom radial function needs a callable");
  for (const auto& u : direction_grid(n, 512)) {
    const double v = rho(u.components());
    if (!std::isfinite(v) || !(v > 1e-300)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "custom radial function '" << name << "' returns " << v << " at "
          << describe(u.components());
      throw InvalidArgument(msg.str());
    }
  }
  return StarBody::make(n, node::CustomRadial{std::move(name), std::move(rho)});
}

StarBody dilate(double lambda, const StarBody& K) {
  require_positive(lambda, "dilation factor");
  return StarBody::make(K.dimension(), node::Dilate{lambda, K});
}

StarBody apply_linear(const LinearMap& T, const StarBody& K) {
  if (T.dimension() != K.dimension()) {
    throw InvalidArgument("linear map dimension does not match body dimension");
  }
  return StarBody::make(K.dimension(), node::LinearImage{T, K});
}

StarBody intersect(std::vector<StarBody> children) {
  const int n = common_dimension(children);
  return StarBody::make(n, node::Intersect{std::move(children)});
}

StarBody unite(std::vector<StarBody> children) {
  const int n = common_dimension(children);
  return StarBody::make(n, node::Union{std::move(children)});
}

// ---- grids --------------------------------------------------------------------

std::vector<Direction> direction_grid(int n, std::size_t count, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("dimension must be at least 2");
  if (count == 0) throw InvalidArgument("direction grid must be nonempty");
  std::vector<Direction> out;
  out.reserve(count);
  if (n == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      out.push_back(Direction::normalized({std::cos(t), std::sin(t)}));
    }
    return out;
  }
  if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < count; ++k) {
      const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(count);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double t = golden * static_cast<double>(k);
      out.push_back(Direction::normalized({r * std::cos(t), r * std::sin(t), z}));
    }
    return out;
  }
  return random_directions(n, count, seed);
}

std::vector<Direction> random_directions(int n, std::size_t count, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("dimension must be at least 2");
  Rng rng(seed);
  std::vector<Direction> out;
  out.reserve(count);
  while (out.size() < count) {
    std::vector<double> v(n);
    double norm2 = 0.0;
    for (double& c : v) {
      c = rng.normal();
      norm2 += c * c;
    }
    if (norm2 < 1e-20) continue;
    out.push_back(Direction::normalized(std::move(v)));
  }
  return out;
}

RadialDistance radial_distance(const StarBody& K, const StarBody& L,
                               std::span<const Direction> grid) {
  if (K.dimension() != L.dimension()) throw InvalidArgument("dimension mismatch");
  if (grid.empty()) throw InvalidArgument("grid must be nonempty");
  const auto rk = K.radii(grid);
  const auto rl = L.radii(grid);
  double d = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) d = std::max(d, std::abs(rk[i] - rl[i]));
  return {d, grid.size()};
}

}  // namespace starorlicz

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "starorlicz/orlicz_functions.hpp"

namespace starorlicz {

/// A point of S^{n-1}.
class Direction {
 public:
  // Normalizes; rejects zero or non-finite vectors.
  static Direction normalized(std::vector<double> v);
  // Requires ‖u‖ = 1 within 1e-14.
  static Direction unit(std::vector<double> u);

  int dimension() const noexcept { return static_cast<int>(c_.size()); }
  double operator[](std::size_t i) const { return c_[i]; }
  std::span<const double> components() const noexcept { return c_; }
  Direction negated() const;

 private:
  explicit Direction(std::vector<double> c) : c_(std::move(c)) {}
  std::vector<double> c_;
};

/// An invertible n×n matrix with its inverse and |det| cached.
class LinearMap {
 public:
  explicit LinearMap(Eigen::MatrixXd matrix);
  static LinearMap from_rows(const std::vector<std::vector<double>>& rows);
  static LinearMap identity(int n);

  int dimension() const noexcept { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  const Eigen::MatrixXd& inverse() const noexcept { return inverse_; }
  double determinant() const noexcept { return det_; }
  double determinant_abs() const noexcept { return std::abs(det_); }

 private:
  Eigen::MatrixXd matrix_;
  Eigen::MatrixXd inverse_;
  double det_;
};

class StarBody;

namespace node {

struct Ball {
  double r;
};
// ρ(u) = (uᵀ A u)^{-1/2} for a symmetric positive definite A.
struct Ellipsoid {
  Eigen::MatrixXd shape;
};
// ρ(u) = scale · (Σ|u_i|^q)^{-1/q}
struct LpBall {
  double q;
  double scale;
};
struct CustomRadial {
  std::string name;
  std::function<double(std::span<const double>)> rho;
};
struct Dilate;
struct LinearImage;
struct Intersect;
struct Union;
struct OrliczSum;
struct LinearOrliczSum;

}  // namespace node

/// Immutable expression tree of a radial function. Copies share nodes.
class StarBody {
 public:
  struct Node;

  int dimension() const;
  const Node& node() const noexcept { return *node_; }
  const std::shared_ptr<const Node>& node_ptr() const noexcept { return node_; }
  std::string kind() const;

  double radius(const Direction& u) const;
  // Radii over a batch of directions. Every node of the tree is evaluated
  // once per batch, and shared subtrees are evaluated once.
  std::vector<double> radii(std::span<const Direction> directions) const;

  template <class N>
  const N* as() const;

  static StarBody make(int dimension, node::Ball v);
  static StarBody make(int dimension, node::Ellipsoid v);
  static StarBody make(int dimension, node::LpBall v);
  static StarBody make(int dimension, node::CustomRadial v);
  static StarBody make(int dimension, node::Dilate v);
  static StarBody make(int dimension, node::LinearImage v);
  static StarBody make(int dimension, node::Intersect v);
  static StarBody make(int dimension, node::Union v);
  static StarBody make(int dimension, node::OrliczSum v);
  static StarBody make(int dimension, node::LinearOrliczSum v);

 private:
  explicit StarBody(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

namespace node {

struct Dilate {
  double lambda;
  StarBody child;
};
struct LinearImage {
  LinearMap map;
  StarBody child;
};
struct Intersect {
  std::vector<StarBody> children;
};
struct Union {
  std::vector<StarBody> children;
};
// ρ solves φ(ρ/ρ_{K_1}, …, ρ/ρ_{K_m}) = 1.
struct OrliczSum {
  OrliczBivariate phi;
  double tau;
  std::vector<StarBody> children;
};
// ρ solves α·φ₁(ρ/ρ_K) + β·φ₂(ρ/ρ_L) = 1.
struct LinearOrliczSum {
  double alpha;
  double beta;
  OrliczUnivariate phi1;
  OrliczUnivariate phi2;
  double tau;  // root of α·φ₁(t) + β·φ₂(t) = 1
  StarBody K;
  StarBody L;
};

}  // namespace node

using NodeVariant =
    std::variant<node::Ball, node::Ellipsoid, node::LpBall, node::CustomRadial, node::Dilate,
                 node::LinearImage, node::Intersect, node::Union, node::OrliczSum,
                 node::LinearOrliczSum>;

struct StarBody::Node {
  int dimension;
  NodeVariant value;
};

template <class N>
const N* StarBody::as() const {
  return std::get_if<N>(&node_->value);
}

// ---- primitives and transforms -------------------------------------------

StarBody ball(int n, double r = 1.0);
StarBody ellipsoid_axes(std::vector<double> axes);
StarBody ellipsoid_matrix(Eigen::MatrixXd shape);
StarBody lp_ball(int n, double q, double scale = 1.0);
// Rejects functions returning non-finite values or values ≤ 1e-300 on a
// 512-direction probe grid.
StarBody custom_radial(int n, std::string name,
                       std::function<double(std::span<const double>)> rho);
StarBody dilate(double lambda, const StarBody& K);
StarBody apply_linear(const LinearMap& T, const StarBody& K);
StarBody intersect(std::vector<StarBody> children);
StarBody unite(std::vector<StarBody> children);

// ---- direction grids and the radial metric --------------------------------

// n = 2: equally spaced angles; n = 3: Fibonacci lattice; n ≥ 4: normalized
// Gaussian samples from `seed`.
std::vector<Direction> direction_grid(int n, std::size_t count, std::uint64_t seed = 42);
// Uniformly distributed random directions.
std::vector<Direction> random_directions(int n, std::size_t count, std::uint64_t seed);

struct RadialDistance {
  double value;
  std::size_t grid_size;
};

// max over the grid of |ρ_K − ρ_L|, a lower bound on d_ρ(K, L).
RadialDistance radial_distance(const StarBody& K, const StarBody& L,
                               std::span<const Direction> grid);

}  // namespace starorlicz

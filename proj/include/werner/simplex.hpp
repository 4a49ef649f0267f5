#pragma once

// Nelder-Mead downhill simplex for smooth low-dimensional objectives.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace werner {

struct SimplexSettings {
  double initial_step = 0.19634954084936207;  // pi/16
  double diameter_tolerance = 1e-8;
  int max_evaluations = 2000;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
};

template <typename Scalar>
struct SimplexResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar value{0};
  int evaluations = 0;
  bool converged = false;  // diameter fell below tolerance within the budget
};

template <typename Scalar>
Scalar simplex_diameter(const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& vertices) {
  Scalar d{0};
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      d = std::max(d, (vertices[i] - vertices[j]).norm());
  return d;
}

/// Minimizes f starting from an axis-aligned simplex around x0.
template <typename Scalar, typename Objective>
SimplexResult<Scalar> nelder_mead_minimize(Objective&& f,
                                           const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x0,
                                           const SimplexSettings& settings = {}) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index dim = x0.size();
  const std::size_t count = static_cast<std::size_t>(dim) + 1;

  std::vector<Vector> x(count, x0);
  std::vector<Scalar> fx(count);
  int evaluations = 0;
  auto eval = [&](const Vector& v) {
    ++evaluations;
    return static_cast<Scalar>(f(v));
  };

  for (Eigen::Index i = 0; i < dim; ++i) x[static_cast<std::size_t>(i) + 1](i) += settings.initial_step;
  for (std::size_t i = 0; i < count; ++i) fx[i] = eval(x[i]);

  std::vector<std::size_t> order(count);
  bool converged = false;
  while (true) {
    // Stable ordering keeps ties in vertex order, so runs are reproducible.
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    {
      std::vector<Vector> xs(count);
      std::vector<Scalar> fs(count);
      for (std::size_t k = 0; k < count; ++k) {
        xs[k] = x[order[k]];
        fs[k] = fx[order[k]];
      }
      x.swap(xs);
      fx.swap(fs);
    }

    if (simplex_diameter(x) < Scalar(settings.diameter_tolerance)) {
      converged = true;
      break;
    }
    if (evaluations >= settings.max_evaluations) break;

    const std::size_t worst = count - 1;
    Vector centroid = Vector::Zero(dim);
    for (std::size_t k = 0; k < worst; ++k) centroid += x[k];
    centroid /= Scalar(dim);

    const Vector reflected = centroid + Scalar(settings.reflection) * (centroid - x[worst]);
    const Scalar f_reflected = eval(reflected);

    if (f_reflected < fx[0]) {
      const Vector expanded = centroid + Scalar(settings.expansion) * (reflected - centroid);
      const Scalar f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        x[worst] = expanded;
        fx[worst] = f_expanded;
      } else {
        x[worst] = reflected;
        fx[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < fx[worst - 1]) {
      x[worst] = reflected;
      fx[worst] = f_reflected;
      continue;
    }

    // Contract toward the better of the worst vertex and its reflection.
    const bool outside = f_reflected < fx[worst];
    const Vector& anchor = outside ? reflected : x[worst];
    const Scalar f_anchor = outside ? f_reflected : fx[worst];
    const Vector contracted = centroid + Scalar(settings.contraction) * (anchor - centroid);
    const Scalar f_contracted = eval(contracted);
    // Outside contraction may tie with the reflection; inside contraction must
    // strictly beat the worst vertex, otherwise flat regions never shrink.
    if (outside ? f_contracted <= f_anchor : f_contracted < f_anchor) {
      x[worst] = contracted;
      fx[worst] = f_contracted;
      continue;
    }

    for (std::size_t k = 1; k < count; ++k) {
      x[k] = x[0] + Scalar(settings.shrink) * (x[k] - x[0]);
      fx[k] = eval(x[k]);
    }
  }

  SimplexResult<Scalar> out;
  out.x = x[0];
  out.value = fx[0];
  out.evaluations = evaluations;
  out.converged = converged;
  return out;
}

}  // namespace werner

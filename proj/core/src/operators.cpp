// SPDX-License-Identifier: Apache-2.0

#include "opcalc/operators.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace opcalc {

double spectral_norm(const ComplexMatrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double smallest_singular_value(const ComplexMatrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

ComplexMatrix resolvent(const ComplexMatrix& a, Complex lambda) {
  const Eigen::Index n = a.rows();
  ComplexMatrix shifted = -a;
  shifted.diagonal().array() += lambda;
  Eigen::PartialPivLU<ComplexMatrix> lu(shifted);
  if (!(lu.rcond() > 1e-14)) {
    throw SingularResolvent("resolvent: lambda is on the spectrum (rcond below 1e-14)");
  }
  return lu.solve(ComplexMatrix::Identity(n, n));
}

bool is_normal(const ComplexMatrix& a) {
  const double scale = a.squaredNorm();  // |a|_F^2
  if (scale == 0.0) return true;
  const ComplexMatrix comm = a * a.adjoint() - a.adjoint() * a;
  return comm.norm() <= 1e-12 * scale;
}

ComplexMatrix matrix_exp(const ComplexMatrix& a, double t) {
  if (!a.allFinite()) throw InvalidParameters("matrix_exp: entries must be finite");
  const ComplexMatrix ta = t * a;
  if (ta.norm() > 700.0) {
    throw Overflow("matrix_exp: |t A| exceeds the safe exponential range");
  }
  if (is_normal(a)) {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(a);
    if (es.info() == Eigen::Success) {
      const ComplexVector lam = es.eigenvalues();
      ComplexVector exptl(lam.size());
      for (Eigen::Index i = 0; i < lam.size(); ++i) exptl(i) = std::exp(t * lam(i));
      const ComplexMatrix& v = es.eigenvectors();
      return v * exptl.asDiagonal() * v.inverse();
    }
  }
  return ta.exp();
}

ComplexVector eigenvalues(const ComplexMatrix& a) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw Error("eigenvalues: eigensolver failed to converge");
  }
  return es.eigenvalues();
}

double eigenvector_condition(const ComplexMatrix& a) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(a);
  if (es.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<ComplexMatrix> svd(es.eigenvectors());
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

ComplexMatrix apply_function_eigen(const ComplexMatrix& a, const ScalarFunction& f,
                                   double cond_limit) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(a);
  if (es.info() != Eigen::Success) {
    throw InvalidParameters("apply_function_eigen: eigensolver failed");
  }
  const ComplexMatrix& v = es.eigenvectors();
  Eigen::JacobiSVD<ComplexMatrix> svd(v);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0) || sv(0) / smin > cond_limit) {
    throw InvalidParameters("apply_function_eigen: eigenvector condition too large");
  }
  const ComplexVector lam = es.eigenvalues();
  ComplexVector flam(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) flam(i) = f(lam(i));
  return v * flam.asDiagonal() * v.inverse();
}

GrowthFit growth_bound_fit(const ComplexMatrix& a, const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw InvalidParameters("growth_bound_fit: empty time grid");
  std::vector<double> logn(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0)) throw InvalidParameters("growth_bound_fit: grid must be positive");
    logn[i] = std::log(spectral_norm(matrix_exp(a, -t_grid[i])));
  }
  // omega: steepest pairwise slope of the log-norm data, so that
  // log|T(t)| - omega t is maximized at a grid point and the clamped
  // prefactor makes the bound hold everywhere on the grid.
  double omega = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    for (std::size_t j = i + 1; j < t_grid.size(); ++j) {
      if (t_grid[j] > t_grid[i]) {
        omega = std::max(omega, (logn[j] - logn[i]) / (t_grid[j] - t_grid[i]));
      }
    }
  }
  if (!std::isfinite(omega)) omega = 0.0;
  double m = 1.0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    m = std::max(m, std::exp(logn[i] - omega * t_grid[i]));
  }
  return {m, omega};
}

SemigroupModel make_semigroup_model(const ComplexMatrix& a, const std::vector<double>& t_grid) {
  return {a, growth_bound_fit(a, t_grid)};
}

double sectoriality_constant(const ComplexMatrix& a, double sigma,
                             const SectorialitySampleSpec& spec) {
  if (!(sigma > 0.0 && sigma < std::numbers::pi)) {
    throw InvalidParameters("sectoriality_constant: sigma must lie in (0, pi)");
  }
  const ComplexVector lam = eigenvalues(a);
  const double scale = 1.0 + a.norm();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (std::abs(lam(i)) <= 1e-14 * scale) continue;  // 0 lies in every closed sector
    if (std::abs(std::arg(lam(i))) >= sigma * (1.0 - 1e-12)) {
      throw SpectrumOutsideSector("sectoriality_constant: eigenvalue outside the sector");
    }
  }
  const Eigen::Index n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  double best = 0.0;
  std::vector<double> angles;
  for (int k = 1; k <= spec.ray_count; ++k) {
    const double phi = sigma + (std::numbers::pi - sigma) * k / (spec.ray_count + 1);
    angles.push_back(phi);
    angles.push_back(-phi);
  }
  angles.push_back(std::numbers::pi);
  for (double phi : angles) {
    const Complex dir = std::polar(1.0, phi);
    for (double r = spec.r_min; r <= spec.r_max; r *= spec.ratio) {
      const Complex lambda = r * dir;
      ComplexMatrix shifted = -a;
      shifted.diagonal().array() += lambda;
      Eigen::PartialPivLU<ComplexMatrix> lu(shifted);
      const ComplexMatrix res = lu.solve(id);
      best = std::max(best, std::abs(lambda) * spectral_norm(res));
    }
  }
  return best;
}

}  // namespace opcalc

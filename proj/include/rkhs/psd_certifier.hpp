#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rkhs/kernel_spec.hpp"
#include "rkhs/types.hpp"

namespace rkhs {

struct SamplerConfig {
  int n_points = 40;
  int n_trials = 200;
  double box_radius = 5.0;
  std::uint64_t rng_seed = 0;
  double tolerance = 1e-9;  // relative to the largest diagonal entry of lambda G[x]

  void validate() const;
};

struct PsdCertificate {
  PointSet points;
  double lambda_tested = 0.0;
  double min_eigenvalue = 0.0;
  double tolerance = 0.0;
  double scale = 0.0;  // max diagonal of lambda G[x]
  bool pass = false;
  double condition_number = 0.0;  // of lambda G[x]
  int resamples = 0;              // point sets redrawn for coincident points
};

struct ViolationWitness {
  PointSet points;
  Eigen::VectorXd y;  // unit vector with y^T (lambda G[x] - K[x]) y = value
  double value = 0.0;
  double scale = 0.0;
};

Eigen::MatrixXd gram(const KernelSpec& k, const PointSet& points);

// Sampling box per axis. Periodic Hilbert-Schmidt kernels use [0, 2pi];
// power series kernels shrink the box to stay inside the convergence region.
std::pair<double, double> sample_interval(const KernelSpec& k, const KernelSpec& g,
                                          const SamplerConfig& cfg);

PsdCertificate certify_points(const KernelSpec& k, const KernelSpec& g, double lambda,
                              const PointSet& points, double tolerance = 1e-9);

std::vector<PsdCertificate> certify(const KernelSpec& k, const KernelSpec& g, double lambda,
                                    const SamplerConfig& cfg = {});

double pass_fraction(const std::vector<PsdCertificate>& certs);

std::optional<ViolationWitness> falsify(const KernelSpec& k, const KernelSpec& g, double lambda_max,
                                        const SamplerConfig& cfg = {});

}  // namespace rkhs

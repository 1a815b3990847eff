#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lcd/density.hpp"

namespace lcd {

// Output of the 1-D log-concave maximum likelihood estimator.  The stored
// density keeps only the kink knots of the fitted log-density (a subset of
// the distinct sorted sample points); loglik is the attained value of
// L(phi) = (1/n) sum phi(X_i) - int e^phi + 1.
struct MleResult1D {
    PiecewiseLogLinear1D density;
    double loglik = 0.0;
    int iterations = 0;
    bool converged = false;
    double tolerance = 0.0;
    double sample_mean = 0.0;
    double sample_variance = 0.0;  // divisor n
    double fitted_variance = 0.0;  // reported, not asserted, vs sample_variance
};

// Active-set maximization of L over concave piecewise-linear log-densities
// with knots at the distinct sample points.  Duplicates collapse into
// multiplicity weights.  Throws on fewer than two distinct values.
MleResult1D mle_1d(std::vector<double> samples, double tol = 1e-10);

// Evaluate L(phi) = (1/n) sum phi(X_i) - int e^phi + 1 for a piecewise-linear
// phi given by (knots, logvals); used by the knot-perturbation optimality
// certificate.  Renormalizes phi first when renormalize is set.
double mle_objective(const std::vector<double>& knots, const std::vector<double>& logvals,
                     const std::vector<double>& sample_points,
                     const std::vector<double>& sample_weights, bool renormalize);

struct Standardization {
    Eigen::VectorXd mean;
    Eigen::MatrixXd sqrt_cov;
    Eigen::MatrixXd inv_sqrt_cov;
    std::vector<Eigen::VectorXd> transformed;
};

// Whitens with the sample mean and sample covariance (divisor n).  Throws on
// a singular covariance.
Standardization standardize(const std::vector<Eigen::VectorXd>& samples);
Standardization standardize_1d(const std::vector<double>& samples);

struct MembershipReport {
    bool ok = false;
    double mean_norm = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double xi = 0.0;
    double eta = 0.0;
};

// ||mu_f|| <= xi and all covariance eigenvalues within [1-eta, 1+eta].
MembershipReport check_class_membership(const PiecewiseLogLinear1D& f, double xi, double eta);

}  // namespace lcd

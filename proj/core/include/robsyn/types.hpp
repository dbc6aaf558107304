#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace robsyn {

using Matrix        = Eigen::MatrixXd;
using Vector        = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex       = std::complex<double>;

/// Raised when synthesis cannot meet the requested bound anywhere in the
/// admissible gamma range.  Carries the best bound probed, if any.
class InfeasibleError : public std::runtime_error {
   public:
    explicit InfeasibleError(const std::string& what, double best_gamma = -1.0)
        : std::runtime_error(what), best_gamma_(best_gamma) {}
    double best_gamma() const { return best_gamma_; }

   private:
    double best_gamma_;
};

}  // namespace robsyn
